//! Acceptance gate: one test per criterion, each printing a single
//! `acceptance N (<name>): PASS|FAIL` line. Thresholds and tolerances are
//! pinned here; every comparison is exact.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use barq_core::barcode::Endpoint as E;
use barq_core::bottleneck::{bottleneck, bottleneck_distance, quotient_distance};
use barq_core::complex::Generator;
use barq_core::demo::{
    distinguish_powers, octahedron, stability_check, twist_complex, TwistComplexSpec, Verdict,
    VerdictMethod,
};
use barq_core::gf2::Mat;
use barq_core::interleave::{
    interleaving_from_matching, verify_interleaving, DegreeMaps, InterleavingCertificate,
};
use barq_core::module::{alive_bars, realize};
use barq_core::{rational, Barcode, Rational};
use common::*;
use rand::Rng;

fn report(n: u32, name: &str, failures: &[String]) {
    let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("acceptance {n} ({name}): {verdict}");
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

fn within(elapsed: Duration, limit_secs: u64, what: &str, failures: &mut Vec<String>) {
    if elapsed > Duration::from_secs(limit_secs) {
        failures.push(format!("{what} took {elapsed:?}, limit {limit_secs} s"));
    }
}

#[test]
fn acceptance_1_twist_rank_law() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in [2, 4] {
        for m in 0..=8u32 {
            let spec = TwistComplexSpec::<Rational>::with_defaults(m, n);
            let total = twist_complex(&spec)
                .unwrap()
                .persistence_barcode()
                .unwrap()
                .sigma_infinity_total();
            let expect = if m == 0 { 2 } else { 2 * m as usize };
            if total != expect {
                failures.push(format!("m={m}, n={n}: total {total}, expected {expect}"));
            }
        }
    }
    within(start.elapsed(), 1, "twist rank law sweep", &mut failures);
    report(1, "twist rank law", &failures);
}

#[test]
fn acceptance_2_separation_verdicts() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for k1 in -5i64..=5 {
        for k2 in -5i64..=5 {
            if k1.abs() >= k2.abs() {
                continue;
            }
            match distinguish_powers::<Rational>(k1, k2, 2) {
                Ok(Verdict::Different { method, .. }) => {
                    let want_squaring = k1 == 0 && k2.abs() == 1;
                    let got_squaring = method == VerdictMethod::Squaring;
                    if want_squaring != got_squaring {
                        failures.push(format!("({k1},{k2}): unexpected method {method:?}"));
                    }
                }
                other => failures.push(format!("({k1},{k2}): expected Different, got {other:?}")),
            }
        }
    }
    within(start.elapsed(), 1, "verdict sweep", &mut failures);
    report(2, "separation verdicts", &failures);
}

#[test]
fn acceptance_3_bottleneck_oracle() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut r = rng(0x0303);
    for case in 0..200 {
        let left = rand_barcode(&mut r, 6);
        let right = if case % 2 == 0 {
            rand_barcode_same_sigma(&mut r, &left, 4)
        } else {
            rand_barcode(&mut r, 6)
        };
        let got = bottleneck_distance(&left, &right);
        let want = brute_bottleneck(&left, &right);
        if got != want {
            failures.push(format!("case {case}: got {got:?}, oracle {want:?}"));
        }
    }
    within(start.elapsed(), 10, "200 oracle comparisons", &mut failures);
    report(3, "bottleneck oracle equivalence", &failures);
}

/// The canonical interleaving construction from a bar pairing, at an arbitrary
/// delta — used to probe the verifier strictly below the bottleneck distance.
fn canonical_at(
    left: &Barcode,
    right: &Barcode,
    pairs: &[(usize, usize)],
    delta: Rational,
) -> InterleavingCertificate<Rational> {
    let v = realize(left);
    let w = realize(right);
    let mut grid: Vec<Rational> = Vec::new();
    grid.extend(v.spectrum.iter().cloned());
    grid.extend(w.spectrum.iter().cloned());
    grid.extend(v.spectrum.iter().map(|s| s - &delta));
    grid.extend(w.spectrum.iter().map(|s| s - &delta));
    grid.sort();
    grid.dedup();
    let mut reps = grid.clone();
    match grid.last() {
        Some(last) => reps.push(last + rational(1, 1)),
        None => reps.push(rational(0, 1)),
    }
    let mut degrees = left.degrees();
    degrees.extend(right.degrees());
    degrees.sort();
    degrees.dedup();
    let mut maps = BTreeMap::new();
    for &deg in &degrees {
        let mut fs = Vec::new();
        let mut gs = Vec::new();
        for t in &reps {
            let td = t + &delta;
            let basis_v = alive_bars(left, &v.spectrum, deg, v.region_of(t));
            let basis_w_shifted = alive_bars(right, &w.spectrum, deg, w.region_of(&td));
            let mut f = Mat::zero(basis_w_shifted.len(), basis_v.len());
            for (col, &i) in basis_v.iter().enumerate() {
                if let Some(&(_, j)) = pairs.iter().find(|p| p.0 == i) {
                    if let Some(row) = basis_w_shifted.iter().position(|&jj| jj == j) {
                        f.set(row, col, true);
                    }
                }
            }
            fs.push(f);
            let basis_w = alive_bars(right, &w.spectrum, deg, w.region_of(t));
            let basis_v_shifted = alive_bars(left, &v.spectrum, deg, v.region_of(&td));
            let mut g = Mat::zero(basis_v_shifted.len(), basis_w.len());
            for (col, &j) in basis_w.iter().enumerate() {
                if let Some(&(i, _)) = pairs.iter().find(|p| p.1 == j) {
                    if let Some(row) = basis_v_shifted.iter().position(|&ii| ii == i) {
                        g.set(row, col, true);
                    }
                }
            }
            gs.push(g);
        }
        maps.insert(deg, DegreeMaps { f: fs, g: gs });
    }
    InterleavingCertificate {
        delta: delta.clone(),
        epsilon: delta,
        grid,
        maps,
    }
}

#[test]
fn acceptance_4_isometry() {
    let mut failures = Vec::new();
    let mut r = rng(0x0404);
    let mut positive = 0usize;
    for case in 0..100 {
        let left = rand_barcode(&mut r, 5);
        let right = rand_barcode_same_sigma(&mut r, &left, 4);
        let res = bottleneck(&left, &right);
        let d = match &res.distance {
            E::Finite(d) => d.clone(),
            E::Infinity => {
                failures.push(format!("case {case}: unexpected infinite distance"));
                continue;
            }
        };
        let cert = res
            .certificate
            .expect("finite distance carries certificate");
        let inter = match interleaving_from_matching(&left, &right, &cert) {
            Ok(i) => i,
            Err(e) => {
                failures.push(format!("case {case}: canonical construction failed: {e}"));
                continue;
            }
        };
        let v = realize(&left);
        let w = realize(&right);
        if !verify_interleaving(&v, &w, &inter).unwrap_or(false) {
            failures.push(format!("case {case}: certificate at d rejected"));
        }
        if d > rational(0, 1) {
            positive += 1;
            let short = canonical_at(&left, &right, &cert.pairs, d - rational(1, 100));
            match verify_interleaving(&v, &w, &short) {
                Ok(false) => {}
                other => failures.push(format!(
                    "case {case}: construction below d not rejected: {other:?}"
                )),
            }
        }
    }
    if positive < 30 {
        failures.push(format!("only {positive} cases with positive distance"));
    }
    report(4, "isometry theorem", &failures);
}

#[test]
fn acceptance_5_kunneth() {
    let mut failures = Vec::new();
    let mut r = rng(0x0505);
    for case in 0..100 {
        let (na, nb) = (r.gen_range(1..=7), r.gen_range(1..=7));
        let mut a = rand_complex(&mut r, na);
        let mut b = rand_complex(&mut r, nb);
        // guarantee at least one semi-infinite bar on each side so gamma_diam
        // is defined
        a.generators.push(Generator {
            label: "anchor_a".to_string(),
            degree: 0,
            action: rand_rational(&mut r, -2, 2, 3),
        });
        a.differential.push(vec![]);
        b.generators.push(Generator {
            label: "anchor_b".to_string(),
            degree: 0,
            action: rand_rational(&mut r, -2, 2, 3),
        });
        b.differential.push(vec![]);

        let t = a.tensor(&b);
        let sel_a = a.selectors().unwrap();
        let sel_b = b.selectors().unwrap();
        let sel_t = t.selectors().unwrap();
        let mut expected: Vec<(i64, Rational)> = Vec::new();
        for (da, va) in &sel_a {
            for (db, vb) in &sel_b {
                for x in va {
                    for y in vb {
                        expected.push((da + db, x + y));
                    }
                }
            }
        }
        expected.sort();
        let mut got: Vec<(i64, Rational)> = sel_t
            .iter()
            .flat_map(|(d, vs)| vs.iter().map(move |v| (*d, v.clone())))
            .collect();
        got.sort();
        if got != expected {
            failures.push(format!("case {case}: selector multiset mismatch"));
        }
        let sum = a.gamma_diam().unwrap() + b.gamma_diam().unwrap();
        if t.gamma_diam().unwrap() != sum {
            failures.push(format!("case {case}: gamma_diam not additive"));
        }
    }
    report(5, "Kunneth splitting", &failures);
}

#[test]
fn acceptance_6_stability() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut r = rng(0x0606);
    for case in 0..500 {
        let f: Vec<Rational> = (0..6).map(|_| rand_rational(&mut r, -4, 4, 3)).collect();
        let g: Vec<Rational> = (0..6).map(|_| rand_rational(&mut r, -4, 4, 3)).collect();
        let k = octahedron(f.clone());
        let rep = stability_check(&k, &f, &g).unwrap();
        if !rep.pass {
            failures.push(format!(
                "case {case}: distance {:?} exceeds bound {:?}",
                rep.distance, rep.bound
            ));
        }
    }
    within(start.elapsed(), 30, "500 stability checks", &mut failures);
    report(6, "stability", &failures);
}

#[test]
fn acceptance_7_roundtrip_and_reduction_oracle() {
    let mut failures = Vec::new();
    let mut r = rng(0x0707);
    for case in 0..200 {
        let b = rand_barcode(&mut r, 8);
        let back = realize(&b).decompose().unwrap();
        if back != b {
            failures.push(format!(
                "round-trip case {case}: decompose(realize(B)) != B"
            ));
        }
    }
    for case in 0..100 {
        let gens = r.gen_range(1..=10);
        let c = rand_complex(&mut r, gens);
        let got = c.persistence_barcode().unwrap();
        let want = sublevel_oracle(&c);
        if got != want {
            failures.push(format!(
                "reduction case {case}: reduction {got:?} vs oracle {want:?}"
            ));
        }
    }
    report(7, "structure round-trip and reduction oracle", &failures);
}

#[test]
fn acceptance_8_quotient_metric() {
    let mut failures = Vec::new();
    let mut r = rng(0x0808);
    for case in 0..100 {
        let b = rand_barcode(&mut r, 5);
        let c = rand_rational(&mut r, -3, 3, 4);
        if quotient_distance(&b, &b.shift(&c)) != E::Finite(rational(0, 1)) {
            failures.push(format!("shifted copy case {case}: nonzero distance"));
        }
    }
    for case in 0..100 {
        let a = rand_barcode(&mut r, 4);
        let b = rand_barcode_same_sigma(&mut r, &a, 3);
        let c = rand_barcode_same_sigma(&mut r, &a, 3);
        let (dab, dbc, dac) = (
            quotient_distance(&a, &b),
            quotient_distance(&b, &c),
            quotient_distance(&a, &c),
        );
        match (dab, dbc, dac) {
            (E::Finite(x), E::Finite(y), E::Finite(z)) => {
                if z > x.clone() + y.clone() {
                    failures.push(format!("triangle case {case}: {z} > {x} + {y}"));
                }
            }
            other => failures.push(format!("triangle case {case}: infinite leg {other:?}")),
        }
    }
    // oracle agreement: dyadic endpoints keep the optimum on the search grid
    for case in 0..50 {
        let small = |r: &mut _| {
            let n = rand::Rng::gen_range(r, 0..=4);
            Barcode::new(
                (0..n)
                    .map(|_| {
                        let left = rand_rational(r, -1, 1, 3);
                        let len = rand_rational(r, 0, 1, 3) + rational(1, 8);
                        barq_core::barcode::Bar::finite(0, left.clone(), left + len)
                    })
                    .collect(),
            )
        };
        let a = small(&mut r);
        let b = small(&mut r);
        let got = quotient_distance(&a, &b);
        let want = grid_quotient(&a, &b);
        if got != want {
            failures.push(format!("oracle case {case}: got {got:?}, oracle {want:?}"));
        }
    }
    report(8, "quotient metric", &failures);
}

#[test]
fn acceptance_9_component_path_laws() {
    let mut failures = Vec::new();
    let mut r = rng(0x0909);
    for case in 0..100 {
        let a = rand_barcode(&mut r, 5);
        let b = if case % 2 == 0 {
            rand_barcode_same_sigma(&mut r, &a, 4)
        } else {
            rand_barcode(&mut r, 5)
        };
        let finite = bottleneck_distance(&a, &b).is_finite();
        if a.same_component(&b) != finite {
            failures.push(format!(
                "case {case}: same_component disagrees with finiteness"
            ));
        }
        let sigma = a.sigma_infinity();
        for t in [
            rational(0, 1),
            rational(1, 4),
            rational(1, 2),
            rational(3, 4),
            rational(1, 1),
        ] {
            let along = a.contract_path(&t).unwrap();
            if along.sigma_infinity() != sigma {
                failures.push(format!("case {case}: sigma changed at t = {t}"));
            }
        }
    }
    report(9, "component and path laws", &failures);
}
