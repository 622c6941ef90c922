//! Interleaving certificates between persistence modules and the certificate
//! side of the isometry theorem.

use std::collections::BTreeMap;

use crate::barcode::{Endpoint, GradedBarcode};
use crate::bottleneck::bottleneck_distance;
use crate::error::{Error, Result};
use crate::gf2::Mat;
use crate::matching::{verify_delta_matching, MatchingCertificate};
use crate::module::{alive_bars, realize, PersistenceModule};
use crate::scalar::Scalar;

/// The two shifted morphism families of one degree, stored per region of the
/// certificate grid.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DegreeMaps {
    /// `f[r]: V^t -> V'^{t+delta}` for `t` in grid region `r`.
    pub f: Vec<Mat>,
    /// `g[r]: V'^t -> V^{t+epsilon}` for `t` in grid region `r`.
    pub g: Vec<Mat>,
}

/// A `(delta, epsilon)`-interleaving witness.
///
/// Both map families are piecewise constant; `grid` lists their breakpoints
/// and must refine the spectra of both modules (suitably shifted), so that
/// each stored matrix is well defined on its whole region.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InterleavingCertificate<S> {
    pub delta: S,
    pub epsilon: S,
    pub grid: Vec<S>,
    pub maps: BTreeMap<i64, DegreeMaps>,
}

fn region_of<S: Scalar>(grid: &[S], t: &S) -> usize {
    grid.iter().filter(|s| **s < *t).count()
}

impl<S: Scalar> InterleavingCertificate<S> {
    fn f_at(&self, degree: i64, t: &S, rows: usize, cols: usize) -> Mat {
        match self.maps.get(&degree) {
            Some(m) => m.f[region_of(&self.grid, t)].clone(),
            None => Mat::zero(rows, cols),
        }
    }

    fn g_at(&self, degree: i64, t: &S, rows: usize, cols: usize) -> Mat {
        match self.maps.get(&degree) {
            Some(m) => m.g[region_of(&self.grid, t)].clone(),
            None => Mat::zero(rows, cols),
        }
    }
}

/// Checks a candidate `(delta, epsilon)`-interleaving between `v` and `w`.
///
/// Returns `Ok(false)` when a morphism or composite condition fails; malformed
/// certificates (grid not refining the spectra, matrix dimension mismatches)
/// are structural errors.
pub fn verify_interleaving<S: Scalar>(
    v: &PersistenceModule<S>,
    w: &PersistenceModule<S>,
    cert: &InterleavingCertificate<S>,
) -> Result<bool> {
    if cert.delta < S::zero() || cert.epsilon < S::zero() {
        return Ok(false);
    }
    for win in cert.grid.windows(2) {
        if win[0] >= win[1] {
            return Err(Error::Structural(
                "certificate grid not strictly increasing".to_string(),
            ));
        }
    }
    for (deg, maps) in &cert.maps {
        if maps.f.len() != cert.grid.len() + 1 || maps.g.len() != cert.grid.len() + 1 {
            return Err(Error::Structural(format!(
                "degree {deg}: expected {} matrices per family",
                cert.grid.len() + 1
            )));
        }
    }
    // the grid must make both families constant on its regions
    let mut required: Vec<S> = Vec::new();
    required.extend(v.spectrum.iter().cloned());
    required.extend(w.spectrum.iter().cloned());
    required.extend(w.spectrum.iter().map(|s| s.clone() - cert.delta.clone()));
    required.extend(v.spectrum.iter().map(|s| s.clone() - cert.epsilon.clone()));
    for s in &required {
        if !cert.grid.contains(s) {
            return Err(Error::Structural(format!(
                "certificate grid misses breakpoint {s:?}"
            )));
        }
    }

    // representative points: one per region of the common refinement
    let mut points: Vec<S> = cert.grid.clone();
    let shift_total = cert.delta.clone() + cert.epsilon.clone();
    points.extend(cert.grid.iter().map(|s| s.clone() - cert.delta.clone()));
    points.extend(cert.grid.iter().map(|s| s.clone() - cert.epsilon.clone()));
    points.extend(v.spectrum.iter().map(|s| s.clone() - shift_total.clone()));
    points.extend(w.spectrum.iter().map(|s| s.clone() - shift_total.clone()));
    points.sort();
    points.dedup();
    let reps: Vec<S> = match points.last() {
        Some(last) => {
            let mut r = points.clone();
            r.push(last.clone() + S::one());
            r
        }
        None => vec![S::zero()],
    };

    let mut degrees: Vec<i64> = v.degrees.keys().chain(w.degrees.keys()).copied().collect();
    degrees.extend(cert.maps.keys().copied());
    degrees.sort();
    degrees.dedup();

    for &deg in &degrees {
        for t in &reps {
            let td = t.clone() + cert.delta.clone();
            let te = t.clone() + cert.epsilon.clone();
            let tde = t.clone() + shift_total.clone();
            let f = cert.f_at(deg, t, w.dim_at(deg, &td), v.dim_at(deg, t));
            let g = cert.g_at(deg, t, v.dim_at(deg, &te), w.dim_at(deg, t));
            if f.rows() != w.dim_at(deg, &td) || f.cols() != v.dim_at(deg, t) {
                return Err(Error::Structural(format!(
                    "degree {deg}: f at {t:?} is {}x{}, expected {}x{}",
                    f.rows(),
                    f.cols(),
                    w.dim_at(deg, &td),
                    v.dim_at(deg, t)
                )));
            }
            if g.rows() != v.dim_at(deg, &te) || g.cols() != w.dim_at(deg, t) {
                return Err(Error::Structural(format!(
                    "degree {deg}: g at {t:?} has mismatched dimensions"
                )));
            }
            // composite identities g[delta] . f = sh(delta+epsilon) and
            // f[epsilon] . g = sh(delta+epsilon)
            let g_shifted = cert.g_at(deg, &td, v.dim_at(deg, &tde), w.dim_at(deg, &td));
            if g_shifted.rows() != v.dim_at(deg, &tde) || g_shifted.cols() != w.dim_at(deg, &td) {
                return Err(Error::Structural(format!(
                    "degree {deg}: g at {td:?} has mismatched dimensions"
                )));
            }
            if g_shifted.mul(&f) != v.structure_map(deg, t, &tde) {
                return Ok(false);
            }
            let f_shifted = cert.f_at(deg, &te, w.dim_at(deg, &tde), v.dim_at(deg, &te));
            if f_shifted.rows() != w.dim_at(deg, &tde) || f_shifted.cols() != v.dim_at(deg, &te) {
                return Err(Error::Structural(format!(
                    "degree {deg}: f at {te:?} has mismatched dimensions"
                )));
            }
            if f_shifted.mul(&g) != w.structure_map(deg, t, &tde) {
                return Ok(false);
            }
        }
        // morphism conditions along consecutive representatives
        for pair in reps.windows(2) {
            let (t1, t2) = (&pair[0], &pair[1]);
            let t1d = t1.clone() + cert.delta.clone();
            let t2d = t2.clone() + cert.delta.clone();
            let t1e = t1.clone() + cert.epsilon.clone();
            let t2e = t2.clone() + cert.epsilon.clone();
            let f1 = cert.f_at(deg, t1, w.dim_at(deg, &t1d), v.dim_at(deg, t1));
            let f2 = cert.f_at(deg, t2, w.dim_at(deg, &t2d), v.dim_at(deg, t2));
            if f2.mul(&v.structure_map(deg, t1, t2)) != w.structure_map(deg, &t1d, &t2d).mul(&f1) {
                return Ok(false);
            }
            let g1 = cert.g_at(deg, t1, v.dim_at(deg, &t1e), w.dim_at(deg, t1));
            let g2 = cert.g_at(deg, t2, v.dim_at(deg, &t2e), w.dim_at(deg, t2));
            if g2.mul(&w.structure_map(deg, t1, t2)) != v.structure_map(deg, &t1e, &t2e).mul(&g1) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Turns a verified `delta`-matching into the canonical
/// `(delta, delta)`-interleaving between `realize(left)` and `realize(right)`:
/// matched bars get the map that is the identity wherever both are alive,
/// deleted bars get zero maps.
pub fn interleaving_from_matching<S: Scalar>(
    left: &GradedBarcode<S>,
    right: &GradedBarcode<S>,
    cert: &MatchingCertificate<S>,
) -> Result<InterleavingCertificate<S>> {
    if !verify_delta_matching(left, right, cert)? {
        return Err(Error::Precondition(
            "certificate is not a valid delta-matching".to_string(),
        ));
    }
    let delta = cert.delta.clone();
    let v = realize(left);
    let w = realize(right);

    let mut grid: Vec<S> = Vec::new();
    grid.extend(v.spectrum.iter().cloned());
    grid.extend(w.spectrum.iter().cloned());
    grid.extend(v.spectrum.iter().map(|s| s.clone() - delta.clone()));
    grid.extend(w.spectrum.iter().map(|s| s.clone() - delta.clone()));
    grid.sort();
    grid.dedup();

    let reps: Vec<S> = {
        let mut r = grid.clone();
        match grid.last() {
            Some(last) => r.push(last.clone() + S::one()),
            None => r.push(S::zero()),
        }
        r
    };

    let mut degrees = left.degrees();
    degrees.extend(right.degrees());
    degrees.sort();
    degrees.dedup();

    let matched_right: Vec<Option<usize>> = {
        let mut mr = vec![None; left.len()];
        for &(i, j) in &cert.pairs {
            mr[i] = Some(j);
        }
        mr
    };

    let mut maps = BTreeMap::new();
    for &deg in &degrees {
        let mut fs = Vec::new();
        let mut gs = Vec::new();
        for t in &reps {
            let td = t.clone() + delta.clone();
            let basis_v = alive_bars(left, &v.spectrum, deg, v.region_of(t));
            let basis_w_shifted = alive_bars(right, &w.spectrum, deg, w.region_of(&td));
            let mut f = Mat::zero(basis_w_shifted.len(), basis_v.len());
            for (col, &i) in basis_v.iter().enumerate() {
                if let Some(j) = matched_right[i] {
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
                if let Some(i) = cert.pairs.iter().find(|p| p.1 == j).map(|p| p.0) {
                    if let Some(row) = basis_v_shifted.iter().position(|&ii| ii == i) {
                        g.set(row, col, true);
                    }
                }
            }
            gs.push(g);
        }
        maps.insert(deg, DegreeMaps { f: fs, g: gs });
    }
    Ok(InterleavingCertificate {
        delta: delta.clone(),
        epsilon: delta,
        grid,
        maps,
    })
}

/// Graded interleaving distance, computed through the isometry theorem as the
/// bottleneck distance of the decompositions.
pub fn interleaving_distance<S: Scalar>(
    v: &PersistenceModule<S>,
    w: &PersistenceModule<S>,
) -> Result<Endpoint<S>> {
    Ok(bottleneck_distance(&v.decompose()?, &w.decompose()?))
}
