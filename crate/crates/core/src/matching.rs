//! Delta-matchings between graded barcodes, as checkable certificates.

use crate::barcode::{Endpoint, GradedBarcode};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Witness that two barcodes admit a `delta`-matching: a partial bijection of
/// bars together with the deleted remainder on each side.
///
/// Under the strict rule every deleted bar has length `< 2*delta`. With
/// `closed_relaxation` set, deletions of length exactly `2*delta` are also
/// accepted; the relaxed minimum coincides with the strict infimum, which is
/// what [`crate::bottleneck::bottleneck_distance`] returns.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatchingCertificate<S> {
    pub delta: S,
    /// Pairs of indices `(i, j)` into the canonical bar lists of `B` and `B'`.
    pub pairs: Vec<(usize, usize)>,
    pub deleted_left: Vec<usize>,
    pub deleted_right: Vec<usize>,
    pub closed_relaxation: bool,
}

impl<S: Scalar> MatchingCertificate<S> {
    pub fn identity(n: usize, delta: S) -> Self {
        MatchingCertificate {
            delta,
            pairs: (0..n).map(|i| (i, i)).collect(),
            deleted_left: Vec::new(),
            deleted_right: Vec::new(),
            closed_relaxation: false,
        }
    }
}

fn check_partition(n: usize, matched: &[usize], deleted: &[usize], side: &str) -> Result<()> {
    let mut seen = vec![false; n];
    for &i in matched.iter().chain(deleted.iter()) {
        if i >= n {
            return Err(Error::Structural(format!(
                "certificate index {i} out of range on side {side} (size {n})"
            )));
        }
        if seen[i] {
            return Err(Error::Structural(format!(
                "certificate index {i} used twice on side {side}"
            )));
        }
        seen[i] = true;
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::Structural(format!(
            "certificate does not cover every bar on side {side}"
        )));
    }
    Ok(())
}

/// Checks a candidate delta-matching against two barcodes.
///
/// Malformed certificates (bad indices, non-partitions) are structural errors;
/// a well-formed certificate that fails the metric conditions yields
/// `Ok(false)`.
pub fn verify_delta_matching<S: Scalar>(
    left: &GradedBarcode<S>,
    right: &GradedBarcode<S>,
    cert: &MatchingCertificate<S>,
) -> Result<bool> {
    let matched_left: Vec<usize> = cert.pairs.iter().map(|p| p.0).collect();
    let matched_right: Vec<usize> = cert.pairs.iter().map(|p| p.1).collect();
    check_partition(left.len(), &matched_left, &cert.deleted_left, "B")?;
    check_partition(right.len(), &matched_right, &cert.deleted_right, "B'")?;

    if cert.delta < S::zero() {
        return Ok(false);
    }
    let two_delta = cert.delta.clone() + cert.delta.clone();

    let deletable = |length: Endpoint<S>| match length {
        Endpoint::Infinity => false,
        Endpoint::Finite(l) => {
            if cert.closed_relaxation {
                l <= two_delta
            } else {
                l < two_delta
            }
        }
    };
    for &i in &cert.deleted_left {
        if !deletable(left.bars[i].length()) {
            return Ok(false);
        }
    }
    for &j in &cert.deleted_right {
        if !deletable(right.bars[j].length()) {
            return Ok(false);
        }
    }

    for &(i, j) in &cert.pairs {
        let a = &left.bars[i];
        let b = &right.bars[j];
        if a.degree != b.degree {
            return Ok(false);
        }
        if a.left.abs_diff(&b.left) > cert.delta {
            return Ok(false);
        }
        match (&a.right, &b.right) {
            (Endpoint::Infinity, Endpoint::Infinity) => {}
            (Endpoint::Finite(ra), Endpoint::Finite(rb)) => {
                if ra.abs_diff(rb) > cert.delta {
                    return Ok(false);
                }
            }
            _ => return Ok(false),
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::barcode::Bar;
    use num_rational::BigRational;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn identity_matching_at_zero() {
        let b = GradedBarcode::new(vec![
            Bar::finite(0, q(0, 1), q(1, 1)),
            Bar::infinite(1, q(2, 1)),
        ]);
        let cert = MatchingCertificate::identity(b.len(), q(0, 1));
        assert!(verify_delta_matching(&b, &b, &cert).unwrap());
    }

    #[test]
    fn shifted_pair_at_half() {
        let b = GradedBarcode::new(vec![Bar::finite(0, q(0, 1), q(1, 1))]);
        let b2 = GradedBarcode::new(vec![Bar::finite(0, q(1, 2), q(3, 2))]);
        let cert = MatchingCertificate::identity(1, q(1, 2));
        assert!(verify_delta_matching(&b, &b2, &cert).unwrap());
        let tight = MatchingCertificate::identity(1, q(1, 4));
        assert!(!verify_delta_matching(&b, &b2, &tight).unwrap());
    }

    #[test]
    fn deletion_rule_is_strict() {
        let b = GradedBarcode::new(vec![Bar::finite(0, q(0, 1), q(2, 1))]);
        let empty = GradedBarcode::empty();
        let cert = MatchingCertificate {
            delta: q(9, 10),
            pairs: vec![],
            deleted_left: vec![0],
            deleted_right: vec![],
            closed_relaxation: false,
        };
        assert!(!verify_delta_matching(&b, &empty, &cert).unwrap());
        let at_one = MatchingCertificate {
            delta: q(1, 1),
            closed_relaxation: true,
            ..cert.clone()
        };
        assert!(verify_delta_matching(&b, &empty, &at_one).unwrap());
        let at_one_strict = MatchingCertificate {
            delta: q(1, 1),
            closed_relaxation: false,
            ..cert
        };
        assert!(!verify_delta_matching(&b, &empty, &at_one_strict).unwrap());
    }

    #[test]
    fn bad_indices_are_structural() {
        let b = GradedBarcode::new(vec![Bar::infinite(0, q(0, 1))]);
        let cert = MatchingCertificate {
            delta: q(0, 1),
            pairs: vec![(0, 3)],
            deleted_left: vec![],
            deleted_right: vec![],
            closed_relaxation: false,
        };
        assert!(verify_delta_matching(&b, &b, &cert).is_err());
    }
}
