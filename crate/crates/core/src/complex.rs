//! Action-filtered Z/2 complexes and their persistence.
//!
//! Generators carry an exact rational action; the differential is homogeneous
//! of degree one and strictly decreases action, so the spans
//! `CF^{<kappa} = span{action < kappa}` form a filtration by subcomplexes and
//! `kappa -> H(CF^{<kappa})` is a persistence module. [`persistence_barcode`]
//! computes its barcode by column reduction in action order.
//!
//! The `relaxed` flag admits the discrete lower-star construction, where the
//! differential only weakly decreases action and is graded by simplex
//! dimension (so it is homogeneous of degree minus one); the reduction treats
//! both conventions uniformly.

use std::collections::BTreeMap;

use crate::barcode::{Bar, GradedBarcode};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Generator<S> {
    pub label: String,
    pub degree: i64,
    pub action: S,
}

/// A filtered cochain complex over Z/2.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FilteredComplex<S> {
    pub generators: Vec<Generator<S>>,
    /// Column per generator: indices of the generators in its differential.
    pub differential: Vec<Vec<usize>>,
    /// Permits non-strict action decrease and degree-lowering grading
    /// (lower-star complexes).
    pub relaxed: bool,
}

impl<S: Scalar> FilteredComplex<S> {
    pub fn empty() -> Self {
        FilteredComplex {
            generators: Vec::new(),
            differential: Vec::new(),
            relaxed: false,
        }
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Invariant diagnostics; empty iff the complex is well formed.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.differential.len() != self.generators.len() {
            out.push(format!(
                "differential has {} columns for {} generators",
                self.differential.len(),
                self.generators.len()
            ));
            return out;
        }
        let mut labels: Vec<&str> = self.generators.iter().map(|g| g.label.as_str()).collect();
        labels.sort();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            out.push("generator labels not unique".to_string());
        }

        // grading: homogeneous of degree +1, or uniformly -1 when relaxed
        let mut shifts: Vec<i64> = Vec::new();
        for (i, col) in self.differential.iter().enumerate() {
            for &j in col {
                if j >= self.generators.len() {
                    out.push(format!("column {i} references generator {j} out of range"));
                    return out;
                }
                shifts.push(self.generators[j].degree - self.generators[i].degree);
            }
        }
        shifts.sort();
        shifts.dedup();
        let grading_ok = match shifts.as_slice() {
            [] => true,
            [1] => true,
            [-1] => self.relaxed,
            _ => false,
        };
        if !grading_ok {
            out.push(format!(
                "differential not homogeneous of degree +1 (observed shifts {shifts:?})"
            ));
        }

        for (i, col) in self.differential.iter().enumerate() {
            for &j in col {
                let src = &self.generators[i].action;
                let dst = &self.generators[j].action;
                let ok = if self.relaxed { dst <= src } else { dst < src };
                if !ok {
                    out.push(format!(
                        "action increase: d({}) contains {} with action {:?} >= {:?}",
                        self.generators[i].label, self.generators[j].label, dst, src
                    ));
                }
            }
        }

        // d . d = 0 over Z/2
        for (i, col) in self.differential.iter().enumerate() {
            let mut square: Vec<usize> = Vec::new();
            for &j in col {
                square.extend(self.differential[j].iter().copied());
            }
            square.sort();
            let mut odd = Vec::new();
            let mut k = 0;
            while k < square.len() {
                let mut run = 1;
                while k + run < square.len() && square[k + run] == square[k] {
                    run += 1;
                }
                if run % 2 == 1 {
                    odd.push(square[k]);
                }
                k += run;
            }
            if !odd.is_empty() {
                out.push(format!(
                    "d^2 != 0 on generator {}",
                    self.generators[i].label
                ));
            }
        }
        out
    }

    fn checked(&self) -> Result<()> {
        let diags = self.validate();
        if diags.is_empty() {
            Ok(())
        } else {
            Err(Error::Structural(format!(
                "invalid filtered complex: {}",
                diags.join("; ")
            )))
        }
    }

    /// Action of a formal sum of generators: the maximum of the member
    /// actions, or `None` for the empty chain.
    pub fn chain_action(&self, chain: &[usize]) -> Option<S> {
        chain
            .iter()
            .map(|&i| self.generators[i].action.clone())
            .max()
    }

    /// Multiset of generator actions, ascending.
    pub fn spectrum(&self) -> Vec<S> {
        let mut out: Vec<S> = self.generators.iter().map(|g| g.action.clone()).collect();
        out.sort();
        out
    }

    /// Barcode of the persistence module `kappa -> H(CF^{<kappa})`.
    ///
    /// Generators are processed in increasing `(action, degree, label)` order;
    /// a reduction pairing emits the bar `(a_low, a_high]` in the degree of
    /// the lower-action generator, unpaired generators emit semi-infinite
    /// bars. Pairs with equal actions are invisible to the filtration and are
    /// dropped.
    pub fn persistence_barcode(&self) -> Result<GradedBarcode<S>> {
        self.checked()?;
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| {
            let ga = &self.generators[a];
            let gb = &self.generators[b];
            (&ga.action, ga.degree, &ga.label).cmp(&(&gb.action, gb.degree, &gb.label))
        });
        let mut pos = vec![0usize; n];
        for (p, &i) in order.iter().enumerate() {
            pos[i] = p;
        }

        // columns in filtration positions, entries must point strictly earlier
        let mut cols: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, col) in self.differential.iter().enumerate() {
            let mut c: Vec<usize> = col.iter().map(|&j| pos[j]).collect();
            c.sort();
            if c.last().is_some_and(|&last| last >= pos[i]) {
                return Err(Error::Structural(format!(
                    "differential of {} not supported on earlier generators",
                    self.generators[i].label
                )));
            }
            cols[pos[i]] = c;
        }

        fn add_into(target: &mut Vec<usize>, other: &[usize]) {
            let mut merged = Vec::with_capacity(target.len() + other.len());
            let (mut a, mut b) = (0, 0);
            while a < target.len() || b < other.len() {
                match (target.get(a), other.get(b)) {
                    (Some(&x), Some(&y)) if x == y => {
                        a += 1;
                        b += 1;
                    }
                    (Some(&x), Some(&y)) if x < y => {
                        merged.push(x);
                        a += 1;
                    }
                    (Some(_), Some(&y)) => {
                        merged.push(y);
                        b += 1;
                    }
                    (Some(&x), None) => {
                        merged.push(x);
                        a += 1;
                    }
                    (None, Some(&y)) => {
                        merged.push(y);
                        b += 1;
                    }
                    (None, None) => unreachable!(),
                }
            }
            *target = merged;
        }

        let mut low_owner: Vec<Option<usize>> = vec![None; n];
        for p in 0..n {
            while let Some(&low) = cols[p].last() {
                match low_owner[low] {
                    None => {
                        low_owner[low] = Some(p);
                        break;
                    }
                    Some(owner) => {
                        let other = cols[owner].clone();
                        add_into(&mut cols[p], &other);
                    }
                }
            }
        }

        let mut paired = vec![false; n];
        let mut bars = Vec::new();
        for p in 0..n {
            if let Some(&low) = cols[p].last() {
                paired[low] = true;
                paired[p] = true;
                let birth = &self.generators[order[low]];
                let death = &self.generators[order[p]];
                if birth.action < death.action {
                    bars.push(Bar::finite(
                        birth.degree,
                        birth.action.clone(),
                        death.action.clone(),
                    ));
                }
            }
        }
        for p in 0..n {
            if !paired[p] {
                let g = &self.generators[order[p]];
                bars.push(Bar::infinite(g.degree, g.action.clone()));
            }
        }
        Ok(GradedBarcode::new(bars))
    }

    /// Per degree, the multiset of left endpoints of semi-infinite bars:
    /// the action selectors of the surviving cohomology classes.
    pub fn selectors(&self) -> Result<BTreeMap<i64, Vec<S>>> {
        let barcode = self.persistence_barcode()?;
        let mut out: BTreeMap<i64, Vec<S>> = BTreeMap::new();
        for bar in &barcode.bars {
            if bar.is_infinite() {
                out.entry(bar.degree).or_default().push(bar.left.clone());
            }
        }
        Ok(out)
    }

    /// Diameter of the selector spectrum across all degrees.
    pub fn gamma_diam(&self) -> Result<S> {
        let sel = self.selectors()?;
        let values: Vec<&S> = sel.values().flatten().collect();
        match (values.iter().min(), values.iter().max()) {
            (Some(min), Some(max)) => Ok((**max).clone() - (**min).clone()),
            _ => Err(Error::Undefined(
                "gamma undefined: complex has no semi-infinite bars".to_string(),
            )),
        }
    }

    /// `selector(deg 0) - selector(deg_top)`, requiring exactly one
    /// semi-infinite bar in each of the two degrees.
    pub fn gamma_fund(&self, deg_top: i64) -> Result<S> {
        let sel = self.selectors()?;
        let pick = |deg: i64| -> Result<S> {
            match sel.get(&deg).map(|v| v.as_slice()) {
                Some([s]) => Ok(s.clone()),
                Some(v) => Err(Error::Rank {
                    degree: deg,
                    msg: format!("expected exactly one semi-infinite bar, found {}", v.len()),
                }),
                None => Err(Error::Rank {
                    degree: deg,
                    msg: "no semi-infinite bar in this degree".to_string(),
                }),
            }
        };
        let bottom = pick(0)?;
        let top = pick(deg_top)?;
        Ok(bottom - top)
    }

    /// Tensor product: generators are pairs with added degrees and actions,
    /// `d(p (x) q) = dp (x) q + p (x) dq` over Z/2.
    pub fn tensor(&self, other: &Self) -> Self {
        let n2 = other.len();
        let idx = |i: usize, j: usize| i * n2 + j;
        let mut generators = Vec::with_capacity(self.len() * n2);
        let mut differential = Vec::with_capacity(self.len() * n2);
        for (i, gi) in self.generators.iter().enumerate() {
            for (j, gj) in other.generators.iter().enumerate() {
                generators.push(Generator {
                    label: format!("({},{})", gi.label, gj.label),
                    degree: gi.degree + gj.degree,
                    action: gi.action.clone() + gj.action.clone(),
                });
                let mut col: Vec<usize> = self.differential[i]
                    .iter()
                    .map(|&k| idx(k, j))
                    .chain(other.differential[j].iter().map(|&k| idx(i, k)))
                    .collect();
                col.sort();
                differential.push(col);
            }
        }
        FilteredComplex {
            generators,
            differential,
            relaxed: self.relaxed || other.relaxed,
        }
    }

    /// Dual complex: actions negated, degrees negated, differential
    /// transposed. An involution.
    pub fn dual(&self) -> Self {
        let mut differential: Vec<Vec<usize>> = vec![Vec::new(); self.len()];
        for (i, col) in self.differential.iter().enumerate() {
            for &j in col {
                differential[j].push(i);
            }
        }
        for col in &mut differential {
            col.sort();
        }
        FilteredComplex {
            generators: self
                .generators
                .iter()
                .map(|g| Generator {
                    label: g.label.clone(),
                    degree: -g.degree,
                    action: -g.action.clone(),
                })
                .collect(),
            differential,
            relaxed: self.relaxed,
        }
    }

    /// Graded rank of the total (unfiltered) cohomology, via the plain
    /// dimension count dim ker - dim im per degree.
    pub fn total_cohomology_ranks(&self) -> BTreeMap<i64, usize> {
        use crate::gf2::Mat;
        let n = self.len();
        let mut out: BTreeMap<i64, usize> = BTreeMap::new();
        let mut degrees: Vec<i64> = self.generators.iter().map(|g| g.degree).collect();
        degrees.sort();
        degrees.dedup();
        for deg in degrees {
            let src: Vec<usize> = (0..n)
                .filter(|&i| self.generators[i].degree == deg)
                .collect();
            // kernel of d restricted to degree-deg generators
            let mut d_deg = Mat::zero(n, src.len());
            for (c, &i) in src.iter().enumerate() {
                for &j in &self.differential[i] {
                    d_deg.set(j, c, true);
                }
            }
            let ker = src.len() - d_deg.rank();
            // image landing in degree deg
            let pre: Vec<usize> = (0..n)
                .filter(|&i| {
                    self.differential[i]
                        .iter()
                        .any(|&j| self.generators[j].degree == deg)
                })
                .collect();
            let mut d_into = Mat::zero(n, pre.len());
            for (c, &i) in pre.iter().enumerate() {
                for &j in &self.differential[i] {
                    d_into.set(j, c, true);
                }
            }
            let im = d_into.rank();
            if ker > im {
                out.insert(deg, ker - im);
            }
        }
        out
    }
}

/// A candidate filtered chain map with a claimed degree and action shift.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FilteredMap<S> {
    pub source: FilteredComplex<S>,
    pub target: FilteredComplex<S>,
    /// Column per source generator: target support of its image.
    pub matrix: Vec<Vec<usize>>,
    pub degree_shift: i64,
    pub action_shift: S,
}

/// Certifies that `map` is a chain map respecting the filtration up to its
/// claimed action shift. Dimension or index mismatches are structural errors;
/// a well-formed map that fails either condition yields `Ok(false)`.
pub fn verify_filtered_map<S: Scalar>(map: &FilteredMap<S>) -> Result<bool> {
    map.source.checked()?;
    map.target.checked()?;
    if map.matrix.len() != map.source.len() {
        return Err(Error::Structural(format!(
            "map has {} columns for {} source generators",
            map.matrix.len(),
            map.source.len()
        )));
    }
    for col in &map.matrix {
        for &j in col {
            if j >= map.target.len() {
                return Err(Error::Structural(format!(
                    "map references target generator {j} out of range"
                )));
            }
        }
    }

    let mod2 = |mut v: Vec<usize>| -> Vec<usize> {
        v.sort();
        let mut out = Vec::new();
        let mut k = 0;
        while k < v.len() {
            let mut run = 1;
            while k + run < v.len() && v[k + run] == v[k] {
                run += 1;
            }
            if run % 2 == 1 {
                out.push(v[k]);
            }
            k += run;
        }
        out
    };

    for (i, gen) in map.source.generators.iter().enumerate() {
        for &j in &map.matrix[i] {
            let tgt = &map.target.generators[j];
            if tgt.degree != gen.degree + map.degree_shift {
                return Ok(false);
            }
            if tgt.action > gen.action.clone() + map.action_shift.clone() {
                return Ok(false);
            }
        }
        // chain-map condition: map(dx) = d(map(x))
        let lhs: Vec<usize> = map.source.differential[i]
            .iter()
            .flat_map(|&k| map.matrix[k].iter().copied())
            .collect();
        let rhs: Vec<usize> = map.matrix[i]
            .iter()
            .flat_map(|&j| map.target.differential[j].iter().copied())
            .collect();
        if mod2(lhs) != mod2(rhs) {
            return Ok(false);
        }
    }
    Ok(true)
}
