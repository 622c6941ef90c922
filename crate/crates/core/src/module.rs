//! Finite persistence modules over Z/2 as explicit linear-algebra data.
//!
//! A module is presented by its spectrum `s_1 < ... < s_m` and, per degree,
//! the dimensions of the constant regions
//! `(-inf, s_1], (s_1, s_2], ..., (s_{m-1}, s_m], (s_m, +inf)`
//! together with the structure matrices between consecutive regions. The
//! persistence axioms make the module constant on each region, so this finite
//! presentation is lossless.

use std::collections::BTreeMap;

use crate::barcode::{Bar, Endpoint, GradedBarcode};
use crate::error::{Error, Result};
use crate::gf2::Mat;
use crate::scalar::Scalar;

/// The data of one degree: region dimensions and step maps.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DegreeData {
    /// `dims[j]` is the dimension on region `j`, `0 <= j <= m`.
    pub dims: Vec<usize>,
    /// `steps[j]` maps region `j` to region `j + 1`; a `dims[j+1] x dims[j]`
    /// matrix.
    pub steps: Vec<Mat>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PersistenceModule<S> {
    /// Strictly increasing spectrum points.
    pub spectrum: Vec<S>,
    pub degrees: BTreeMap<i64, DegreeData>,
}

impl<S: Scalar> PersistenceModule<S> {
    pub fn zero() -> Self {
        PersistenceModule {
            spectrum: Vec::new(),
            degrees: BTreeMap::new(),
        }
    }

    fn region_count(&self) -> usize {
        self.spectrum.len() + 1
    }

    /// Invariant diagnostics; empty iff the module is well formed.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        for w in self.spectrum.windows(2) {
            if w[0] >= w[1] {
                out.push("spectrum not strictly increasing".to_string());
                break;
            }
        }
        let m = self.region_count();
        for (deg, data) in &self.degrees {
            if data.dims.len() != m {
                out.push(format!(
                    "degree {deg}: expected {m} region dimensions, got {}",
                    data.dims.len()
                ));
                continue;
            }
            if data.dims[0] != 0 {
                out.push(format!(
                    "degree {deg}: violates axiom 1, V^t must vanish for t << 0 (d_0 = {})",
                    data.dims[0]
                ));
            }
            if data.steps.len() != m - 1 {
                out.push(format!(
                    "degree {deg}: expected {} step matrices, got {}",
                    m - 1,
                    data.steps.len()
                ));
                continue;
            }
            for (j, step) in data.steps.iter().enumerate() {
                if step.rows() != data.dims[j + 1] || step.cols() != data.dims[j] {
                    out.push(format!(
                        "degree {deg}: step {j} is {}x{}, expected {}x{}",
                        step.rows(),
                        step.cols(),
                        data.dims[j + 1],
                        data.dims[j]
                    ));
                }
            }
        }
        out
    }

    /// Region index containing parameter `t`: the number of spectrum points
    /// strictly below `t`.
    pub fn region_of(&self, t: &S) -> usize {
        self.spectrum.iter().filter(|s| **s < *t).count()
    }

    pub fn dim_at(&self, degree: i64, t: &S) -> usize {
        match self.degrees.get(&degree) {
            Some(data) => data.dims[self.region_of(t)],
            None => 0,
        }
    }

    /// Composite structure map from region `a` to region `b` in one degree.
    pub fn composite(&self, degree: i64, a: usize, b: usize) -> Mat {
        let data = match self.degrees.get(&degree) {
            Some(d) => d,
            None => return Mat::zero(0, 0),
        };
        assert!(a <= b && b < self.region_count());
        let mut acc = Mat::identity(data.dims[a]);
        for j in a..b {
            acc = data.steps[j].mul(&acc);
        }
        acc
    }

    /// Structure map `V^{t1} -> V^{t2}` in one degree.
    pub fn structure_map(&self, degree: i64, t1: &S, t2: &S) -> Mat {
        assert!(*t1 <= *t2);
        self.composite(degree, self.region_of(t1), self.region_of(t2))
    }

    /// The unique barcode with `V` isomorphic to the direct sum of interval
    /// modules, by the rank formula on composite structure maps.
    pub fn decompose(&self) -> Result<GradedBarcode<S>> {
        let diags = self.validate();
        if !diags.is_empty() {
            return Err(Error::Structural(format!(
                "invalid persistence module: {}",
                diags.join("; ")
            )));
        }
        let m = self.spectrum.len();
        let mut bars = Vec::new();
        for &deg in self.degrees.keys() {
            // rank[i][j] = rank of composite from region i to region j
            let mut rank = vec![vec![0usize; m + 1]; m + 1];
            for (i, row) in rank.iter_mut().enumerate() {
                for (j, entry) in row.iter_mut().enumerate().skip(i) {
                    *entry = self.composite(deg, i, j).rank();
                }
            }
            let r = |i: isize, j: usize| -> usize {
                if i < 0 || j > m {
                    0
                } else {
                    rank[i as usize][j]
                }
            };
            // birth region i (1..=m), last alive region k (i..=m)
            for i in 1..=m {
                for k in i..=m {
                    let mult = (r(i as isize, k) + r(i as isize - 1, k + 1)) as isize
                        - (r(i as isize - 1, k) + r(i as isize, k + 1)) as isize;
                    for _ in 0..mult.max(0) {
                        let left = self.spectrum[i - 1].clone();
                        let bar = if k < m {
                            Bar::finite(deg, left, self.spectrum[k].clone())
                        } else {
                            Bar::infinite(deg, left)
                        };
                        bars.push(bar);
                    }
                }
            }
        }
        Ok(GradedBarcode::new(bars))
    }
}

/// Bars of `barcode` in degree `degree` alive on region `region` of
/// `spectrum`, in canonical order. This fixes the basis convention shared by
/// [`realize`] and the interleaving certificates.
pub fn alive_bars<S: Scalar>(
    barcode: &GradedBarcode<S>,
    spectrum: &[S],
    degree: i64,
    region: usize,
) -> Vec<usize> {
    let m = spectrum.len();
    (0..barcode.len())
        .filter(|&idx| {
            let bar = &barcode.bars[idx];
            if bar.degree != degree || region == 0 {
                return false;
            }
            // region j (1 <= j <= m-1) is (s_j, s_{j+1}]; region m is (s_m, inf)
            if bar.left > spectrum[region - 1] {
                return false;
            }
            match &bar.right {
                Endpoint::Infinity => true,
                Endpoint::Finite(r) => region < m && *r >= spectrum[region],
            }
        })
        .collect()
}

/// Direct sum of interval modules realizing `barcode`.
pub fn realize<S: Scalar>(barcode: &GradedBarcode<S>) -> PersistenceModule<S> {
    let mut spectrum: Vec<S> = Vec::new();
    for bar in &barcode.bars {
        spectrum.push(bar.left.clone());
        if let Endpoint::Finite(r) = &bar.right {
            spectrum.push(r.clone());
        }
    }
    spectrum.sort();
    spectrum.dedup();
    let m = spectrum.len();

    let mut degrees = BTreeMap::new();
    for deg in barcode.degrees() {
        let alive: Vec<Vec<usize>> = (0..=m)
            .map(|region| alive_bars(barcode, &spectrum, deg, region))
            .collect();
        let dims: Vec<usize> = alive.iter().map(|a| a.len()).collect();
        let mut steps = Vec::new();
        for j in 0..m {
            let mut step = Mat::zero(dims[j + 1], dims[j]);
            for (col, bar_idx) in alive[j].iter().enumerate() {
                if let Some(row) = alive[j + 1].iter().position(|b| b == bar_idx) {
                    step.set(row, col, true);
                }
            }
            steps.push(step);
        }
        degrees.insert(deg, DegreeData { dims, steps });
    }
    PersistenceModule { spectrum, degrees }
}
