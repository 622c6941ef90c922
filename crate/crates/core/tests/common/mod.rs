//! Shared generators and independent oracles for the integration suites.
//!
//! The oracles here deliberately avoid the library's algorithms: the
//! bottleneck oracle enumerates every partial matching, the quotient oracle
//! grid-searches the shift, and the sublevel oracle recomputes cohomology of
//! every action-sublevel subcomplex from scratch.
#![allow(dead_code)]

use barq_core::barcode::Endpoint as E;
use barq_core::complex::{FilteredComplex, Generator};
use barq_core::gf2::Mat;
use barq_core::{rational, Bar, Barcode, Complex, Endpoint, Rational};
use num_traits::Signed;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random rational in `[lo, hi]` with denominator a small power of two.
pub fn rand_rational(r: &mut ChaCha8Rng, lo: i64, hi: i64, max_denom_pow: u32) -> Rational {
    let denom = 1i64 << r.gen_range(0..=max_denom_pow);
    let numer = r.gen_range(lo * denom..=hi * denom);
    rational(numer, denom)
}

pub fn rand_bar(r: &mut ChaCha8Rng, degrees: &[i64], p_infinite: f64) -> Bar {
    let degree = degrees[r.gen_range(0..degrees.len())];
    let left = rand_rational(r, -2, 2, 4);
    if r.gen_bool(p_infinite) {
        Bar::infinite(degree, left)
    } else {
        let mut len = rand_rational(r, 0, 2, 4);
        if len == rational(0, 1) {
            len = rational(1, 16);
        }
        Bar::finite(degree, left.clone(), left + len)
    }
}

pub fn rand_barcode(r: &mut ChaCha8Rng, max_bars: usize) -> Barcode {
    let n = r.gen_range(0..=max_bars);
    Barcode::new((0..n).map(|_| rand_bar(r, &[0, 1, 2], 0.3)).collect())
}

/// Random barcode with the same semi-infinite signature as `template`.
pub fn rand_barcode_same_sigma(
    r: &mut ChaCha8Rng,
    template: &Barcode,
    max_extra: usize,
) -> Barcode {
    let mut bars = Vec::new();
    for (&deg, &count) in &template.sigma_infinity() {
        for _ in 0..count {
            bars.push(Bar::infinite(deg, rand_rational(r, -2, 2, 4)));
        }
    }
    for _ in 0..r.gen_range(0..=max_extra) {
        let mut bar = rand_bar(r, &[0, 1, 2], 0.0);
        while bar.is_infinite() {
            bar = rand_bar(r, &[0, 1, 2], 0.0);
        }
        bars.push(bar);
    }
    Barcode::new(bars)
}

/// Cost of pairing two bars at the matching level, if allowed.
fn pair_cost(a: &Bar, b: &Bar) -> Option<Rational> {
    if a.degree != b.degree {
        return None;
    }
    let left = (a.left.clone() - b.left.clone()).abs();
    match (&a.right, &b.right) {
        (E::Infinity, E::Infinity) => Some(left),
        (E::Finite(ra), E::Finite(rb)) => Some(left.max((ra.clone() - rb.clone()).abs())),
        _ => None,
    }
}

fn delete_cost(bar: &Bar) -> Option<Rational> {
    match bar.length() {
        E::Infinity => None,
        E::Finite(l) => Some(l / rational(2, 1)),
    }
}

fn brute_class(
    left: &[&Bar],
    right: &[&Bar],
    idx: usize,
    used: &mut Vec<bool>,
    current: Rational,
    best: &mut Option<Rational>,
) {
    if let Some(b) = best {
        if current >= *b {
            return;
        }
    }
    if idx == left.len() {
        let mut total = current;
        for (j, bar) in right.iter().enumerate() {
            if !used[j] {
                match delete_cost(bar) {
                    Some(c) => total = total.max(c),
                    None => return,
                }
            }
        }
        match best {
            Some(b) if *b <= total => {}
            _ => *best = Some(total),
        }
        return;
    }
    // delete the current left bar
    if let Some(c) = delete_cost(left[idx]) {
        brute_class(left, right, idx + 1, used, current.clone().max(c), best);
    }
    // or match it to any unused right bar
    for j in 0..right.len() {
        if used[j] {
            continue;
        }
        if let Some(c) = pair_cost(left[idx], right[j]) {
            used[j] = true;
            brute_class(left, right, idx + 1, used, current.clone().max(c), best);
            used[j] = false;
        }
    }
}

/// Exhaustive bottleneck oracle: minimizes the certificate cost over every
/// partial matching and deletion set, degree by degree.
pub fn brute_bottleneck(left: &Barcode, right: &Barcode) -> Endpoint {
    if left.sigma_infinity() != right.sigma_infinity() {
        return E::Infinity;
    }
    let mut degrees = left.degrees();
    degrees.extend(right.degrees());
    degrees.sort();
    degrees.dedup();
    let mut overall = rational(0, 1);
    for deg in degrees {
        let l: Vec<&Bar> = left.bars.iter().filter(|b| b.degree == deg).collect();
        let rt: Vec<&Bar> = right.bars.iter().filter(|b| b.degree == deg).collect();
        let mut best = None;
        let mut used = vec![false; rt.len()];
        brute_class(&l, &rt, 0, &mut used, rational(0, 1), &mut best);
        match best {
            Some(b) => overall = overall.max(b),
            None => return E::Infinity,
        }
    }
    E::Finite(overall)
}

/// Grid-search oracle for the quotient distance: shifts on `[-5, 5]` with
/// step 1/64, followed by local halving refinement around the best point.
pub fn grid_quotient(left: &Barcode, right: &Barcode) -> Endpoint {
    if left.sigma_infinity() != right.sigma_infinity() {
        return E::Infinity;
    }
    let step = rational(1, 64);
    let mut best_c = rational(0, 1);
    let mut best: Option<Rational> = None;
    let mut c = rational(-5, 1);
    while c <= rational(5, 1) {
        if let E::Finite(d) = barq_core::bottleneck::bottleneck_distance(left, &right.shift(&c)) {
            if best.as_ref().is_none_or(|b| d < *b) {
                best = Some(d);
                best_c = c.clone();
            }
        }
        c += step.clone();
    }
    let mut window = step;
    for _ in 0..6 {
        window /= rational(2, 1);
        for cand in [
            best_c.clone() - window.clone(),
            best_c.clone() + window.clone(),
        ] {
            if let E::Finite(d) =
                barq_core::bottleneck::bottleneck_distance(left, &right.shift(&cand))
            {
                if best.as_ref().is_none_or(|b| d < *b) {
                    best = Some(d);
                    best_c = cand;
                }
            }
        }
    }
    match best {
        Some(d) => E::Finite(d),
        None => E::Infinity,
    }
}

/// Sublevel-homology oracle: computes the rank of every inclusion-induced map
/// on cohomology directly and reads off multiplicities via the four-term rank
/// formula. Independent of the column-reduction path.
pub fn sublevel_oracle(c: &Complex) -> Barcode {
    let mut spectrum = c.spectrum();
    spectrum.dedup();
    let m = spectrum.len();
    let n = c.len();

    let mut degrees: Vec<i64> = c.generators.iter().map(|g| g.degree).collect();
    degrees.sort();
    degrees.dedup();

    // generators of sublevel complex i (1-indexed; action <= spectrum[i-1])
    let sub = |i: usize| -> Vec<usize> {
        (0..n)
            .filter(|&g| c.generators[g].action <= spectrum[i - 1])
            .collect()
    };

    let mut bars = Vec::new();
    for &deg in &degrees {
        // cocycles Z_i and coboundaries B_i in degree deg, as column spans in
        // the ambient generator space
        let mut cocycles: Vec<Mat> = Vec::new();
        let mut coboundaries: Vec<Mat> = Vec::new();
        for i in 1..=m {
            let gens = sub(i);
            let deg_gens: Vec<usize> = gens
                .iter()
                .copied()
                .filter(|&g| c.generators[g].degree == deg)
                .collect();
            let mut d = Mat::zero(n, deg_gens.len());
            for (col, &g) in deg_gens.iter().enumerate() {
                for &h in &c.differential[g] {
                    d.set(h, col, true);
                }
            }
            let kernel_coords = d.kernel_basis();
            let mut z = Mat::zero(n, kernel_coords.cols());
            for k in 0..kernel_coords.cols() {
                for (row, &g) in deg_gens.iter().enumerate() {
                    if kernel_coords.get(row, k) {
                        z.set(g, k, true);
                    }
                }
            }
            cocycles.push(z);

            let sources: Vec<usize> = gens
                .iter()
                .copied()
                .filter(|&g| {
                    c.differential[g]
                        .iter()
                        .any(|&h| c.generators[h].degree == deg)
                })
                .collect();
            let mut b = Mat::zero(n, sources.len());
            for (col, &g) in sources.iter().enumerate() {
                for &h in &c.differential[g] {
                    b.set(h, col, true);
                }
            }
            coboundaries.push(b);
        }
        // rank of H(C_i) -> H(C_j): dim(Z_i + B_j) - dim(B_j)
        let rank = |i: usize, j: usize| -> usize {
            if i == 0 || j > m {
                return 0;
            }
            let z = &cocycles[i - 1];
            let b = &coboundaries[j - 1];
            z.joint_column_rank(b) - b.rank()
        };
        for i in 1..=m {
            for k in i..=m {
                let mult = (rank(i, k) + rank(i - 1, k + 1)) as isize
                    - (rank(i - 1, k) + rank(i, k + 1)) as isize;
                for _ in 0..mult.max(0) {
                    let left = spectrum[i - 1].clone();
                    bars.push(if k < m {
                        Bar::finite(deg, left, spectrum[k].clone())
                    } else {
                        Bar::infinite(deg, left)
                    });
                }
            }
        }
    }
    Barcode::new(bars)
}

/// Random valid filtered complex: a direct sum of lone generators and random
/// two-layer blocks (degree `k` generators mapping into strictly lower-action
/// degree `k+1` generators), which keeps `d^2 = 0` by construction.
pub fn rand_complex(r: &mut ChaCha8Rng, max_gens: usize) -> Complex {
    let mut generators: Vec<Generator<Rational>> = Vec::new();
    let mut differential: Vec<Vec<usize>> = Vec::new();
    let mut counter = 0usize;
    while generators.len() < max_gens {
        let remaining = max_gens - generators.len();
        if remaining < 3 || r.gen_bool(0.4) {
            let deg = r.gen_range(-1..=3);
            generators.push(Generator {
                label: format!("l{counter}"),
                degree: deg,
                action: rand_rational(r, -4, 4, 3),
            });
            differential.push(vec![]);
            counter += 1;
        } else {
            // two-layer block
            let k = r.gen_range(-1..=2);
            let sources = r.gen_range(1..=remaining.min(3) - 1);
            let targets = r.gen_range(1..=(remaining - sources).min(3));
            let base = generators.len();
            for t in 0..targets {
                generators.push(Generator {
                    label: format!("t{counter}_{t}"),
                    degree: k + 1,
                    action: rand_rational(r, -4, 0, 3),
                });
                differential.push(vec![]);
            }
            for s in 0..sources {
                generators.push(Generator {
                    label: format!("s{counter}_{s}"),
                    degree: k,
                    action: rand_rational(r, 1, 4, 3),
                });
                let col: Vec<usize> = (0..targets)
                    .filter(|_| r.gen_bool(0.6))
                    .map(|t| base + t)
                    .collect();
                let _ = s;
                differential.push(col);
            }
            counter += 1;
        }
    }
    let c = FilteredComplex {
        generators,
        differential,
        relaxed: false,
    };
    debug_assert!(c.validate().is_empty(), "{:?}", c.validate());
    c
}
