//! Graded barcodes: finite multisets of intervals `(a, b]` or `(a, +inf)`
//! carrying an integer degree.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Right endpoint of a bar: a finite value or `+inf`.
///
/// `Finite` sorts below `Infinity`, so the derived order is the extended-line
/// order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Endpoint<S> {
    Finite(S),
    Infinity,
}

impl<S: Scalar> Endpoint<S> {
    pub fn is_finite(&self) -> bool {
        matches!(self, Endpoint::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&S> {
        match self {
            Endpoint::Finite(s) => Some(s),
            Endpoint::Infinity => None,
        }
    }

    pub fn map<T: Scalar>(self, f: impl FnOnce(S) -> T) -> Endpoint<T> {
        match self {
            Endpoint::Finite(s) => Endpoint::Finite(f(s)),
            Endpoint::Infinity => Endpoint::Infinity,
        }
    }
}

/// A single bar `(left, right]` (or `(left, +inf)`) in a fixed degree.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Bar<S> {
    pub degree: i64,
    pub left: S,
    pub right: Endpoint<S>,
}

impl<S: Scalar> Bar<S> {
    pub fn finite(degree: i64, left: S, right: S) -> Self {
        Bar {
            degree,
            left,
            right: Endpoint::Finite(right),
        }
    }

    pub fn infinite(degree: i64, left: S) -> Self {
        Bar {
            degree,
            left,
            right: Endpoint::Infinity,
        }
    }

    pub fn is_infinite(&self) -> bool {
        !self.right.is_finite()
    }

    /// `right - left`, or `Infinity` for a semi-infinite bar.
    pub fn length(&self) -> Endpoint<S> {
        match &self.right {
            Endpoint::Finite(r) => Endpoint::Finite(r.clone() - self.left.clone()),
            Endpoint::Infinity => Endpoint::Infinity,
        }
    }

    /// Bars must be genuine intervals: `left < right` strictly.
    pub fn is_valid(&self) -> bool {
        match &self.right {
            Endpoint::Finite(r) => self.left < *r,
            Endpoint::Infinity => true,
        }
    }

    /// Membership test `t in (left, right]`.
    pub fn contains(&self, t: &S) -> bool {
        *t > self.left
            && match &self.right {
                Endpoint::Finite(r) => *t <= *r,
                Endpoint::Infinity => true,
            }
    }
}

/// A finite multiset of bars, kept in canonical order
/// (sorted by `(degree, left, right)`; multiplicity by repetition).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GradedBarcode<S> {
    pub bars: Vec<Bar<S>>,
}

/// Count of semi-infinite bars per degree; absent keys mean zero.
pub type SigmaInfinity = BTreeMap<i64, usize>;

impl<S: Scalar> GradedBarcode<S> {
    pub fn empty() -> Self {
        GradedBarcode { bars: Vec::new() }
    }

    /// Builds a barcode in canonical form from an arbitrary bar list.
    pub fn new(mut bars: Vec<Bar<S>>) -> Self {
        bars.sort();
        GradedBarcode { bars }
    }

    pub fn canonicalize(&mut self) {
        self.bars.sort();
    }

    pub fn len(&self) -> usize {
        self.bars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    /// Invariant diagnostics; empty iff the barcode is valid and canonical.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (i, bar) in self.bars.iter().enumerate() {
            if !bar.is_valid() {
                out.push(format!(
                    "bar {i} violates left < right: ({:?}, {:?}] deg {}",
                    bar.left, bar.right, bar.degree
                ));
            }
        }
        for w in self.bars.windows(2) {
            if w[0] > w[1] {
                out.push("bars not in canonical (degree, left, right) order".to_string());
                break;
            }
        }
        out
    }

    /// The barcode of the shifted module `V[delta]`: since
    /// `V[delta]^t = V^{t+delta}`, every endpoint moves down by `delta`.
    pub fn shift(&self, delta: &S) -> Self {
        let bars = self
            .bars
            .iter()
            .map(|b| Bar {
                degree: b.degree,
                left: b.left.clone() - delta.clone(),
                right: b.right.clone().map(|r| r - delta.clone()),
            })
            .collect();
        GradedBarcode::new(bars)
    }

    /// Degree-indexed count of semi-infinite bars.
    pub fn sigma_infinity(&self) -> SigmaInfinity {
        let mut out = SigmaInfinity::new();
        for bar in &self.bars {
            if bar.is_infinite() {
                *out.entry(bar.degree).or_insert(0) += 1;
            }
        }
        out
    }

    pub fn sigma_infinity_total(&self) -> usize {
        self.bars.iter().filter(|b| b.is_infinite()).count()
    }

    /// Two barcodes lie in the same component of barcode space iff their
    /// semi-infinite signatures agree.
    pub fn same_component(&self, other: &Self) -> bool {
        self.sigma_infinity() == other.sigma_infinity()
    }

    /// Point at parameter `t` on the straight-line contraction onto the
    /// left-endpoints-at-zero barcode: every finite endpoint `e` becomes
    /// `(1-t) * e`. At `t = 1` finite bars degenerate and are dropped.
    pub fn contract_path(&self, t: &S) -> Result<Self> {
        if *t < S::zero() || *t > S::one() {
            return Err(Error::Range(format!(
                "contraction parameter {t:?} outside [0, 1]"
            )));
        }
        let scale = S::one() - t.clone();
        let mut bars = Vec::new();
        for bar in &self.bars {
            let left = scale.clone() * bar.left.clone();
            let right = bar.right.clone().map(|r| scale.clone() * r);
            let candidate = Bar {
                degree: bar.degree,
                left,
                right,
            };
            if candidate.is_valid() {
                bars.push(candidate);
            }
        }
        Ok(GradedBarcode::new(bars))
    }

    /// Keeps exactly the bars of length >= `eps`; semi-infinite bars always
    /// survive.
    pub fn truncate(&self, eps: &S) -> Result<Self> {
        if *eps <= S::zero() {
            return Err(Error::Range(format!(
                "truncation threshold {eps:?} must be positive"
            )));
        }
        let bars = self
            .bars
            .iter()
            .filter(|b| match b.length() {
                Endpoint::Infinity => true,
                Endpoint::Finite(l) => l >= *eps,
            })
            .cloned()
            .collect();
        Ok(GradedBarcode::new(bars))
    }

    /// Degrees carrying at least one bar, ascending.
    pub fn degrees(&self) -> Vec<i64> {
        let mut ds: Vec<i64> = self.bars.iter().map(|b| b.degree).collect();
        ds.sort();
        ds.dedup();
        ds
    }
}
