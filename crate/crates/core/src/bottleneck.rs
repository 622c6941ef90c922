//! Exact bottleneck distance between graded barcodes, and the quotient
//! distance modulo overall shift.
//!
//! The distance is computed per degree by a binary search over the finite
//! candidate set of endpoint differences and half-lengths, with feasibility at
//! a given `delta` decided by maximum bipartite matching. The candidate set
//! provably contains the optimum, so the returned value is the exact infimum;
//! it is realized by a certificate under the closed relaxation.

use std::collections::VecDeque;

use crate::barcode::{Bar, Endpoint, GradedBarcode};
use crate::matching::MatchingCertificate;
use crate::scalar::Scalar;

/// Hopcroft-Karp maximum matching on a bipartite graph given by adjacency
/// lists of the left side. Returns `pair_left[u] = Some(v)` for matched edges.
pub fn hopcroft_karp(adj: &[Vec<usize>], n_right: usize) -> Vec<Option<usize>> {
    let n_left = adj.len();
    let mut pair_left: Vec<Option<usize>> = vec![None; n_left];
    let mut pair_right: Vec<Option<usize>> = vec![None; n_right];
    let mut dist: Vec<usize> = vec![0; n_left];

    loop {
        // BFS layering from free left vertices
        let mut queue = VecDeque::new();
        let mut found_augmenting = false;
        for u in 0..n_left {
            if pair_left[u].is_none() {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                match pair_right[v] {
                    None => found_augmenting = true,
                    Some(w) => {
                        if dist[w] == usize::MAX {
                            dist[w] = dist[u] + 1;
                            queue.push_back(w);
                        }
                    }
                }
            }
        }
        if !found_augmenting {
            break;
        }

        fn try_augment(
            u: usize,
            adj: &[Vec<usize>],
            dist: &mut [usize],
            pair_left: &mut [Option<usize>],
            pair_right: &mut [Option<usize>],
        ) -> bool {
            for idx in 0..adj[u].len() {
                let v = adj[u][idx];
                let ok = match pair_right[v] {
                    None => true,
                    Some(w) => {
                        dist[w] == dist[u].wrapping_add(1)
                            && try_augment(w, adj, dist, pair_left, pair_right)
                    }
                };
                if ok {
                    pair_left[u] = Some(v);
                    pair_right[v] = Some(u);
                    return true;
                }
            }
            dist[u] = usize::MAX;
            false
        }

        for u in 0..n_left {
            if pair_left[u].is_none() {
                try_augment(u, adj, &mut dist, &mut pair_left, &mut pair_right);
            }
        }
    }
    pair_left
}

fn pairable<S: Scalar>(a: &Bar<S>, b: &Bar<S>, delta: &S) -> bool {
    if a.degree != b.degree {
        return false;
    }
    if a.left.abs_diff(&b.left) > *delta {
        return false;
    }
    match (&a.right, &b.right) {
        (Endpoint::Infinity, Endpoint::Infinity) => true,
        (Endpoint::Finite(ra), Endpoint::Finite(rb)) => ra.abs_diff(rb) <= *delta,
        _ => false,
    }
}

fn deletable<S: Scalar>(bar: &Bar<S>, delta: &S) -> bool {
    match bar.length() {
        Endpoint::Infinity => false,
        Endpoint::Finite(l) => l <= delta.clone() + delta.clone(),
    }
}

/// Outcome of a per-degree feasibility check: the matched pairs and deletions,
/// in local (within-class) indices.
struct ClassMatching {
    pairs: Vec<(usize, usize)>,
    deleted_left: Vec<usize>,
    deleted_right: Vec<usize>,
}

/// Decides whether a `delta`-matching exists between the two bar classes, via
/// a perfect matching in the dummy-augmented bipartite graph (one deletion
/// dummy per bar, dummy-dummy edges always allowed).
fn class_feasible<S: Scalar>(
    left: &[&Bar<S>],
    right: &[&Bar<S>],
    delta: &S,
) -> Option<ClassMatching> {
    let n = left.len();
    let m = right.len();
    // left nodes: 0..n real, n..n+m dummies for right bars
    // right nodes: 0..m real, m..m+n dummies for left bars
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n + m];
    for (i, a) in left.iter().enumerate() {
        for (j, b) in right.iter().enumerate() {
            if pairable(a, b, delta) {
                adj[i].push(j);
            }
        }
        if deletable(a, delta) {
            adj[i].push(m + i);
        }
    }
    for (j, b) in right.iter().enumerate() {
        if deletable(b, delta) {
            adj[n + j].push(j);
        }
        for i in 0..n {
            adj[n + j].push(m + i);
        }
    }
    let pair_left = hopcroft_karp(&adj, m + n);
    if pair_left.iter().any(|p| p.is_none()) {
        return None;
    }
    let mut out = ClassMatching {
        pairs: Vec::new(),
        deleted_left: Vec::new(),
        deleted_right: Vec::new(),
    };
    for (i, p) in pair_left.iter().take(n).enumerate() {
        match p.unwrap() {
            j if j < m => out.pairs.push((i, j)),
            _ => out.deleted_left.push(i),
        }
    }
    for j in 0..m {
        let u = pair_left.iter().position(|p| *p == Some(j))?;
        if u >= n {
            out.deleted_right.push(j);
        }
    }
    Some(out)
}

/// Candidate optimal values for one degree class: endpoint differences and
/// half-lengths. The optimum of the relaxed problem is the binding constraint
/// of some matching, hence lies in this set.
fn class_candidates<S: Scalar>(left: &[&Bar<S>], right: &[&Bar<S>]) -> Vec<S> {
    let mut cands = vec![S::zero()];
    for a in left {
        for b in right.iter() {
            cands.push(a.left.abs_diff(&b.left));
            if let (Endpoint::Finite(ra), Endpoint::Finite(rb)) = (&a.right, &b.right) {
                cands.push(ra.abs_diff(rb));
            }
        }
    }
    for bar in left.iter().chain(right.iter()) {
        if let Endpoint::Finite(l) = bar.length() {
            cands.push(l.half());
        }
    }
    cands.sort();
    cands.dedup();
    cands
}

fn class_optimum<S: Scalar>(left: &[&Bar<S>], right: &[&Bar<S>]) -> (S, ClassMatching) {
    let cands = class_candidates(left, right);
    // feasibility is monotone in delta; binary search the smallest feasible
    let mut lo = 0usize;
    let mut hi = cands.len() - 1;
    debug_assert!(class_feasible(left, right, &cands[hi]).is_some());
    while lo < hi {
        let mid = (lo + hi) / 2;
        if class_feasible(left, right, &cands[mid]).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let delta = cands[lo].clone();
    let matching = class_feasible(left, right, &delta).expect("binary search invariant");
    (delta, matching)
}

/// Result of a bottleneck computation: the exact distance and, when finite, a
/// realizing certificate under the closed relaxation.
pub struct BottleneckResult<S> {
    pub distance: Endpoint<S>,
    pub certificate: Option<MatchingCertificate<S>>,
}

/// Exact bottleneck distance, degree-wise maximum. Infinite exactly when the
/// semi-infinite signatures differ.
pub fn bottleneck<S: Scalar>(
    left: &GradedBarcode<S>,
    right: &GradedBarcode<S>,
) -> BottleneckResult<S> {
    if left.sigma_infinity() != right.sigma_infinity() {
        return BottleneckResult {
            distance: Endpoint::Infinity,
            certificate: None,
        };
    }
    let mut degrees = left.degrees();
    degrees.extend(right.degrees());
    degrees.sort();
    degrees.dedup();

    let mut best = S::zero();
    let mut pairs = Vec::new();
    let mut deleted_left = Vec::new();
    let mut deleted_right = Vec::new();
    for deg in degrees {
        let li: Vec<usize> = (0..left.len())
            .filter(|&i| left.bars[i].degree == deg)
            .collect();
        let ri: Vec<usize> = (0..right.len())
            .filter(|&j| right.bars[j].degree == deg)
            .collect();
        let lbars: Vec<&Bar<S>> = li.iter().map(|&i| &left.bars[i]).collect();
        let rbars: Vec<&Bar<S>> = ri.iter().map(|&j| &right.bars[j]).collect();
        let (delta, matching) = class_optimum(&lbars, &rbars);
        if delta > best {
            best = delta;
        }
        pairs.extend(matching.pairs.iter().map(|&(i, j)| (li[i], ri[j])));
        deleted_left.extend(matching.deleted_left.iter().map(|&i| li[i]));
        deleted_right.extend(matching.deleted_right.iter().map(|&j| ri[j]));
    }
    pairs.sort();
    deleted_left.sort();
    deleted_right.sort();
    BottleneckResult {
        distance: Endpoint::Finite(best.clone()),
        certificate: Some(MatchingCertificate {
            delta: best,
            pairs,
            deleted_left,
            deleted_right,
            closed_relaxation: true,
        }),
    }
}

/// Convenience wrapper returning only the distance.
pub fn bottleneck_distance<S: Scalar>(
    left: &GradedBarcode<S>,
    right: &GradedBarcode<S>,
) -> Endpoint<S> {
    bottleneck(left, right).distance
}

/// Result of a quotient-distance computation: the distance, the optimal shift
/// applied to the second argument, and the realizing certificate.
pub struct QuotientResult<S> {
    pub distance: Endpoint<S>,
    pub shift: S,
    pub certificate: Option<MatchingCertificate<S>>,
}

/// Candidate shifts for the quotient distance. `d_bottle(B, B'[c])` is
/// piecewise linear in `c` with kinks generated by endpoint alignments, and
/// every matching's minimum sits at the midpoint of two endpoint differences
/// (or on a plateau containing such a midpoint), so midpoints of pairs of
/// degree-matched differences, the differences themselves and zero suffice.
fn shift_candidates<S: Scalar>(left: &GradedBarcode<S>, right: &GradedBarcode<S>) -> Vec<S> {
    let mut diffs: Vec<S> = Vec::new();
    for a in &left.bars {
        for b in &right.bars {
            if a.degree != b.degree {
                continue;
            }
            diffs.push(b.left.clone() - a.left.clone());
            if let (Endpoint::Finite(ra), Endpoint::Finite(rb)) = (&a.right, &b.right) {
                diffs.push(rb.clone() - ra.clone());
            }
        }
    }
    diffs.sort();
    diffs.dedup();
    let mut cands = vec![S::zero()];
    for (i, d1) in diffs.iter().enumerate() {
        for d2 in diffs.iter().skip(i) {
            cands.push((d1.clone() + d2.clone()).half());
        }
    }
    cands.sort();
    cands.dedup();
    cands
}

/// Distance in the shift-quotient space: the minimum of
/// `bottleneck(B, shift(B', c))` over the finite candidate shift set.
pub fn quotient<S: Scalar>(left: &GradedBarcode<S>, right: &GradedBarcode<S>) -> QuotientResult<S> {
    if left.sigma_infinity() != right.sigma_infinity() {
        return QuotientResult {
            distance: Endpoint::Infinity,
            shift: S::zero(),
            certificate: None,
        };
    }
    let mut best: Option<QuotientResult<S>> = None;
    for c in shift_candidates(left, right) {
        let shifted = right.shift(&c);
        let res = bottleneck(left, &shifted);
        let better = match &best {
            None => true,
            Some(b) => res.distance < b.distance,
        };
        if better {
            best = Some(QuotientResult {
                distance: res.distance,
                shift: c,
                certificate: res.certificate,
            });
        }
    }
    best.expect("candidate set always contains zero")
}

pub fn quotient_distance<S: Scalar>(
    left: &GradedBarcode<S>,
    right: &GradedBarcode<S>,
) -> Endpoint<S> {
    quotient(left, right).distance
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::verify_delta_matching;
    use num_rational::BigRational;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    fn fin(deg: i64, l: (i64, i64), r: (i64, i64)) -> Bar<BigRational> {
        Bar::finite(deg, q(l.0, l.1), q(r.0, r.1))
    }

    #[test]
    fn distance_to_self_is_zero() {
        let b = GradedBarcode::new(vec![fin(0, (0, 1), (1, 1)), Bar::infinite(2, q(-1, 1))]);
        assert_eq!(bottleneck_distance(&b, &b), Endpoint::Finite(q(0, 1)));
    }

    #[test]
    fn lone_bar_deleted_at_half_length() {
        let b = GradedBarcode::new(vec![fin(0, (0, 1), (2, 1))]);
        let res = bottleneck(&b, &GradedBarcode::empty());
        assert_eq!(res.distance, Endpoint::Finite(q(1, 1)));
        let cert = res.certificate.unwrap();
        assert!(verify_delta_matching(&b, &GradedBarcode::empty(), &cert).unwrap());
    }

    #[test]
    fn two_bar_example() {
        let b = GradedBarcode::new(vec![fin(0, (0, 1), (1, 1)), Bar::infinite(0, q(0, 1))]);
        let b2 = GradedBarcode::new(vec![fin(0, (1, 2), (3, 2)), Bar::infinite(0, q(1, 5))]);
        let res = bottleneck(&b, &b2);
        assert_eq!(res.distance, Endpoint::Finite(q(1, 2)));
        let cert = res.certificate.unwrap();
        assert_eq!(cert.delta, q(1, 2));
        assert!(verify_delta_matching(&b, &b2, &cert).unwrap());
    }

    #[test]
    fn infinite_when_sigma_differs() {
        let b = GradedBarcode::new(vec![Bar::infinite(0, q(0, 1))]);
        let b2 = GradedBarcode::new(vec![Bar::infinite(1, q(0, 1))]);
        let res = bottleneck(&b, &b2);
        assert_eq!(res.distance, Endpoint::Infinity);
        assert!(res.certificate.is_none());
    }

    #[test]
    fn quotient_of_shifted_copy_is_zero() {
        let b = GradedBarcode::new(vec![fin(1, (0, 1), (3, 1)), Bar::infinite(0, q(1, 2))]);
        let shifted = b.shift(&q(7, 3));
        assert_eq!(quotient_distance(&b, &shifted), Endpoint::Finite(q(0, 1)));
        let two_inf = GradedBarcode::new(vec![Bar::infinite(0, q(0, 1))]);
        let two_inf_far = GradedBarcode::new(vec![Bar::infinite(0, q(5, 1))]);
        assert_eq!(
            quotient_distance(&two_inf, &two_inf_far),
            Endpoint::Finite(q(0, 1))
        );
    }

    #[test]
    fn quotient_two_bar_example() {
        let b = GradedBarcode::new(vec![fin(0, (0, 1), (1, 1)), Bar::infinite(0, q(0, 1))]);
        let b2 = GradedBarcode::new(vec![fin(0, (0, 1), (2, 1)), Bar::infinite(0, q(0, 1))]);
        let res = quotient(&b, &b2);
        assert_eq!(res.distance, Endpoint::Finite(q(1, 2)));
    }
}
