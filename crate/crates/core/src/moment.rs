//! Moment maps, compactified and weighted compactified amoebas, and the
//! Hadamard-power sequence approximating the skeleton `S(f)`.

use std::collections::VecDeque;
use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::amoeba::{self, check_bivariate, fiber_intervals, lopsided_at, FiberBuilder, LogWindow};
use crate::error::{Error, Result};
use crate::lattice::IntegerPolytope;
use crate::poly::{ComplexPolynomial, Exponent};
use crate::roots::univariate_roots;

/// `(exponent, log weight)` pairs of the (weighted) moment map.
fn log_weights(p: &ComplexPolynomial, weighted: bool) -> Vec<(Exponent, f64)> {
    p.terms()
        .map(|(e, c)| (e.clone(), if weighted { c.norm().ln() } else { 0.0 }))
        .collect()
}

/// Moment map at the log-modulus point `xi`: the convex combination of the
/// support with weights `w_s e^{<s, xi>}` (`w_s = |a_s|` when weighted,
/// 1 otherwise), evaluated with a log-sum-exp.
pub fn moment_map_log(p: &ComplexPolynomial, xi: &[f64], weighted: bool) -> Result<Vec<f64>> {
    if xi.len() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: xi.len(),
        });
    }
    if p.is_zero() {
        return Err(Error::EmptySupport);
    }
    Ok(moment_from_weights(&log_weights(p, weighted), xi))
}

fn moment_from_weights(w: &[(Exponent, f64)], xi: &[f64]) -> Vec<f64> {
    let n = xi.len();
    let logs: Vec<f64> = w
        .iter()
        .map(|(s, lw)| lw + s.iter().zip(xi).map(|(&a, b)| a as f64 * b).sum::<f64>())
        .collect();
    let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut total = 0.0;
    let mut acc = vec![0.0; n];
    for ((s, _), l) in w.iter().zip(&logs) {
        let e = (l - top).exp();
        total += e;
        for k in 0..n {
            acc[k] += s[k] as f64 * e;
        }
    }
    acc.iter().map(|a| a / total).collect()
}

/// Moment map at a torus point.
pub fn moment_map(p: &ComplexPolynomial, x: &[Complex64], weighted: bool) -> Result<Vec<f64>> {
    if x.iter().any(|z| z.norm() == 0.0 || !z.norm().is_finite()) {
        return Err(Error::Domain("moment map needs nonzero finite coordinates".into()));
    }
    let xi: Vec<f64> = x.iter().map(|z| z.norm().ln()).collect();
    moment_map_log(p, &xi, weighted)
}

/// Images of sampled zeros under the moment map.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentImagePointCloud {
    pub source: String,
    /// Hadamard order the cloud was computed for.
    pub r: f64,
    pub weighted: bool,
    pub points: Vec<[f64; 2]>,
}

/// Samples the zero locus on the same fibers as the amoeba raster and maps
/// every root through the moment map.
pub fn wca_cloud(p: &ComplexPolynomial, w: &LogWindow, weighted: bool) -> Result<MomentImagePointCloud> {
    w.validate()?;
    check_bivariate(p)?;
    let q = p.without_monomial_factor();
    let weights = log_weights(p, weighted);
    let res = w.resolution;
    let mut points = Vec::new();
    for free in [1usize, 0] {
        let fixed = 1 - free;
        let builder = FiberBuilder::new(&q, free);
        let lines: Vec<Vec<[f64; 2]>> = (0..res)
            .into_par_iter()
            .map(|i| {
                let log_mod = w.min[fixed] + (i as f64 + 0.5) * w.pixel_size(fixed);
                let mut out = Vec::new();
                for a in 0..w.angular_samples {
                    let angle = TAU * a as f64 / w.angular_samples as f64;
                    let Ok(roots) = univariate_roots(&builder.coefficients(log_mod, angle)) else {
                        continue;
                    };
                    for z in roots {
                        let lz = z.norm().ln();
                        if !lz.is_finite() {
                            continue;
                        }
                        let mut xi = [0.0; 2];
                        xi[fixed] = log_mod;
                        xi[free] = lz;
                        let m = moment_from_weights(&weights, &xi);
                        out.push([m[0], m[1]]);
                    }
                }
                out
            })
            .collect();
        points.extend(lines.into_iter().flatten());
    }
    Ok(MomentImagePointCloud {
        source: String::new(),
        r: 1.0,
        weighted,
        points,
    })
}

/// Whether `u` satisfies every facet inequality of `np` up to `tol`.
pub fn in_polytope(np: &IntegerPolytope, u: &[f64], tol: f64) -> bool {
    np.facets().iter().all(|f| {
        let v: f64 = f.normal.iter().zip(u).map(|(&b, x)| b as f64 * x).sum::<f64>() + f.offset as f64;
        v <= tol
    })
}

/// Solves `mu(xi) = u` for `u` in the interior of the Newton polygon by
/// damped Newton on the convex function `log sum w_s e^{<s,xi>} - <u, xi>`.
/// Returns the solution and the inverse Hessian (the Jacobian of the
/// inverse map).
pub fn invert_moment_map(
    p: &ComplexPolynomial,
    u: [f64; 2],
    weighted: bool,
) -> Result<([f64; 2], [[f64; 2]; 2])> {
    check_bivariate(p)?;
    invert_with_weights(&log_weights(p, weighted), u)
}

fn objective(w: &[(Exponent, f64)], u: [f64; 2], xi: [f64; 2]) -> f64 {
    let logs: Vec<f64> = w
        .iter()
        .map(|(s, lw)| lw + s[0] as f64 * xi[0] + s[1] as f64 * xi[1])
        .collect();
    let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    top + logs.iter().map(|l| (l - top).exp()).sum::<f64>().ln() - u[0] * xi[0] - u[1] * xi[1]
}

fn gradient_hessian(w: &[(Exponent, f64)], u: [f64; 2], xi: [f64; 2]) -> ([f64; 2], [[f64; 2]; 2]) {
    let logs: Vec<f64> = w
        .iter()
        .map(|(s, lw)| lw + s[0] as f64 * xi[0] + s[1] as f64 * xi[1])
        .collect();
    let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let probs: Vec<f64> = logs.iter().map(|l| (l - top).exp()).collect();
    let total: f64 = probs.iter().sum();
    let mut m = [0.0; 2];
    for ((s, _), e) in w.iter().zip(&probs) {
        m[0] += e * s[0] as f64;
        m[1] += e * s[1] as f64;
    }
    m = [m[0] / total, m[1] / total];
    // centered second moments avoid cancellation where the map is flat
    let mut h = [[0.0; 2]; 2];
    for ((s, _), e) in w.iter().zip(&probs) {
        let d = [s[0] as f64 - m[0], s[1] as f64 - m[1]];
        for a in 0..2 {
            for b in 0..2 {
                h[a][b] += e * d[a] * d[b] / total;
            }
        }
    }
    ([m[0] - u[0], m[1] - u[1]], h)
}

/// Longest Newton step; beyond it the map is too flat for the local model.
const MAX_STEP: f64 = 4.0;

fn invert_with_weights(w: &[(Exponent, f64)], u: [f64; 2]) -> Result<([f64; 2], [[f64; 2]; 2])> {
    let mut xi = [0.0; 2];
    let mut best = f64::INFINITY;
    for _ in 0..500 {
        let (g, h) = gradient_hessian(w, u, xi);
        let gnorm = g[0].abs() + g[1].abs();
        let det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
        let inv = [[h[1][1] / det, -h[0][1] / det], [-h[1][0] / det, h[0][0] / det]];
        // rounding floors the residual near 1e-16 times the spread of the support
        let stalled = gnorm >= best && gnorm < 1e-9;
        best = best.min(gnorm);
        if det > 0.0 && (gnorm < 1e-12 || stalled) {
            return Ok((xi, inv));
        }
        let mut step = if det > 1e-300 {
            [inv[0][0] * g[0] + inv[0][1] * g[1], inv[1][0] * g[0] + inv[1][1] * g[1]]
        } else {
            g
        };
        let len = step[0].hypot(step[1]);
        if len > MAX_STEP {
            step = [step[0] * MAX_STEP / len, step[1] * MAX_STEP / len];
        }
        let f0 = objective(w, u, xi);
        let slope = g[0] * step[0] + g[1] * step[1];
        let mut t = 1.0;
        loop {
            let cand = [xi[0] - t * step[0], xi[1] - t * step[1]];
            // the objective loses resolution near the optimum; the
            // gradient norm is the fallback merit there
            let (gc, _) = gradient_hessian(w, u, cand);
            let decreased = objective(w, u, cand) <= f0 - 1e-4 * t * slope
                || gc[0].abs() + gc[1].abs() < 0.9 * gnorm;
            if decreased || t < 1e-12 {
                xi = cand;
                break;
            }
            t *= 0.5;
        }
    }
    Err(Error::Domain(format!("moment map inversion at {u:?} did not converge")))
}

/// Pixel classes of a WCA raster.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WcaCell {
    /// Outside the open Newton polygon.
    Outside,
    /// Image of the amoeba.
    Amoeba,
    /// Image of the amoeba complement.
    Gap,
}

/// A connected region of `Gap` pixels.
#[derive(Clone, Debug, PartialEq)]
pub struct WcaComponent {
    pub pixels: Vec<usize>,
    /// Whether the region avoids the polygon boundary.
    pub bounded: bool,
    pub representative: [f64; 2],
    pub order: Option<Vec<i64>>,
}

/// Grid over the bounding box of the Newton polygon.
#[derive(Clone, Debug, PartialEq)]
pub struct WcaRaster {
    pub origin: [f64; 2],
    pub pixel: [f64; 2],
    pub resolution: usize,
    pub cells: Vec<WcaCell>,
    pub polytope: IntegerPolytope,
}

impl WcaRaster {
    pub fn center(&self, col: usize, row: usize) -> [f64; 2] {
        [
            self.origin[0] + (col as f64 + 0.5) * self.pixel[0],
            self.origin[1] + (row as f64 + 0.5) * self.pixel[1],
        ]
    }

    pub fn cell(&self, col: usize, row: usize) -> WcaCell {
        self.cells[row * self.resolution + col]
    }

    pub fn pixel_of(&self, u: [f64; 2]) -> Option<(usize, usize)> {
        let c = (u[0] - self.origin[0]) / self.pixel[0];
        let r = (u[1] - self.origin[1]) / self.pixel[1];
        let n = self.resolution as f64;
        ((0.0..n).contains(&c) && (0.0..n).contains(&r)).then_some((c as usize, r as usize))
    }
}

/// Whether `target` lies within `delta` of the amoeba slice at `log_mod`.
fn slice_hits(builder: &FiberBuilder, log_mod: f64, target: f64, delta: f64, samples: usize) -> bool {
    fiber_intervals(builder, log_mod, samples)
        .iter()
        .any(|&(a, b)| a - delta <= target && target <= b + delta)
}

/// Dominant exponent at the preimage of `u` when that point is lopsided.
/// The outer `None` marks points on or outside the polygon boundary.
fn lopsided_label(
    p: &ComplexPolynomial,
    w: &[(Exponent, f64)],
    np: &IntegerPolytope,
    u: [f64; 2],
) -> Option<Option<Exponent>> {
    if !in_polytope(np, &u, -1e-9) {
        return None;
    }
    let Ok((xi, _)) = invert_with_weights(w, u) else {
        return Some(None);
    };
    Some(lopsided_at(p, &xi).ok().flatten())
}

/// Rasterizes the (weighted) compactified amoeba by pulling pixels back
/// through the moment map. A pixel is a gap when its center and corners
/// are lopsided for one common exponent; two different dominant exponents
/// among them put the amoeba inside the pixel. Otherwise the center's
/// preimage is tested against the amoeba slices through it, with a
/// tolerance equal to the pixel's footprint in log space.
pub fn wca_raster(p: &ComplexPolynomial, resolution: usize, angular_samples: usize, weighted: bool) -> Result<WcaRaster> {
    let np = check_bivariate(p)?;
    if resolution < 16 || angular_samples < 64 {
        return Err(Error::Domain("WCA raster needs resolution >= 16 and angles >= 64".into()));
    }
    let q = p.without_monomial_factor();
    let col_builder = FiberBuilder::new(&q, 1);
    let row_builder = FiberBuilder::new(&q, 0);
    let weights = log_weights(p, weighted);
    let (lo, hi) = np.bounding_box();
    let origin = [lo[0] as f64, lo[1] as f64];
    let pixel = [
        (hi[0] - lo[0]) as f64 / resolution as f64,
        (hi[1] - lo[1]) as f64 / resolution as f64,
    ];
    let side = resolution + 1;
    let corners: Vec<Option<Option<Exponent>>> = (0..side * side)
        .into_par_iter()
        .map(|i| {
            let u = [
                origin[0] + (i % side) as f64 * pixel[0],
                origin[1] + (i / side) as f64 * pixel[1],
            ];
            lopsided_label(p, &weights, &np, u)
        })
        .collect();
    let cells: Vec<WcaCell> = (0..resolution * resolution)
        .into_par_iter()
        .map(|i| {
            let (col, row) = (i % resolution, i / resolution);
            let u = [
                origin[0] + (col as f64 + 0.5) * pixel[0],
                origin[1] + (row as f64 + 0.5) * pixel[1],
            ];
            let margin = 1e-6 * pixel[0].min(pixel[1]);
            if !in_polytope(&np, &u, -margin) {
                return WcaCell::Outside;
            }
            let Ok((xi, inv)) = invert_with_weights(&weights, u) else {
                return WcaCell::Amoeba;
            };
            let center = lopsided_at(p, &xi).ok().flatten();
            let corner_labels = [
                &corners[row * side + col],
                &corners[row * side + col + 1],
                &corners[(row + 1) * side + col],
                &corners[(row + 1) * side + col + 1],
            ];
            let inside: Vec<&Option<Exponent>> = corner_labels.iter().filter_map(|l| l.as_ref()).collect();
            let labels: Vec<&Exponent> = inside.iter().filter_map(|l| l.as_ref()).chain(center.as_ref()).collect();
            if labels.windows(2).any(|pair| pair[0] != pair[1]) {
                return WcaCell::Amoeba;
            }
            if center.is_some() && inside.iter().all(|l| l.is_some()) {
                return WcaCell::Gap;
            }
            let delta = [
                0.5 * (inv[0][0].abs() * pixel[0] + inv[0][1].abs() * pixel[1]),
                0.5 * (inv[1][0].abs() * pixel[0] + inv[1][1].abs() * pixel[1]),
            ];
            if slice_hits(&col_builder, xi[0], xi[1], delta[1], angular_samples)
                || slice_hits(&row_builder, xi[1], xi[0], delta[0], angular_samples)
            {
                WcaCell::Amoeba
            } else {
                WcaCell::Gap
            }
        })
        .collect();
    Ok(WcaRaster {
        origin,
        pixel,
        resolution,
        cells,
        polytope: np,
    })
}

/// 4-connected regions of gap pixels, with orders computed at the preimage
/// of each region's most interior pixel.
pub fn wca_components(p: &ComplexPolynomial, raster: &WcaRaster, weighted: bool) -> Vec<WcaComponent> {
    let res = raster.resolution;
    let weights = log_weights(p, weighted);
    let mut seen = vec![false; res * res];
    let mut out = Vec::new();
    for start in 0..res * res {
        if seen[start] || raster.cells[start] != WcaCell::Gap {
            continue;
        }
        let mut pixels = Vec::new();
        let mut bounded = true;
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(i) = queue.pop_front() {
            pixels.push(i);
            let (c, r) = ((i % res) as i64, (i / res) as i64);
            for (dc, dr) in [(-1i64, 0i64), (1, 0), (0, -1), (0, 1)] {
                let (nc, nr) = (c + dc, r + dr);
                if nc < 0 || nr < 0 || nc >= res as i64 || nr >= res as i64 {
                    bounded = false;
                    continue;
                }
                let j = nr as usize * res + nc as usize;
                match raster.cells[j] {
                    WcaCell::Outside => bounded = false,
                    WcaCell::Gap if !seen[j] => {
                        seen[j] = true;
                        queue.push_back(j);
                    }
                    _ => {}
                }
            }
        }
        pixels.sort_unstable();
        // the pixel closest to the region's centroid among its members
        let centroid = pixels.iter().fold([0.0, 0.0], |acc, &i| {
            let c = raster.center(i % res, i / res);
            [acc[0] + c[0], acc[1] + c[1]]
        });
        let centroid = [centroid[0] / pixels.len() as f64, centroid[1] / pixels.len() as f64];
        let best = *pixels
            .iter()
            .min_by(|&&a, &&b| {
                let ca = raster.center(a % res, a / res);
                let cb = raster.center(b % res, b / res);
                let da = (ca[0] - centroid[0]).powi(2) + (ca[1] - centroid[1]).powi(2);
                let db = (cb[0] - centroid[0]).powi(2) + (cb[1] - centroid[1]).powi(2);
                da.total_cmp(&db)
            })
            .unwrap();
        let representative = raster.center(best % res, best / res);
        let order = invert_with_weights(&weights, representative)
            .ok()
            .and_then(|(xi, _)| amoeba::component_order(p, &xi).ok());
        out.push(WcaComponent {
            pixels,
            bounded,
            representative,
            order,
        });
    }
    out
}

/// WCA clouds of the Hadamard powers `p^[r]` for each `r` in `r_list`.
/// Only the sequence is produced; the limit is not computed.
pub fn skeleton_approximation(
    p: &ComplexPolynomial,
    r_list: &[f64],
    w: &LogWindow,
) -> Result<Vec<MomentImagePointCloud>> {
    if r_list.is_empty() {
        return Err(Error::Domain("r list must be nonempty".into()));
    }
    if r_list.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
        return Err(Error::Domain("Hadamard orders must be positive".into()));
    }
    if p.terms().any(|(_, c)| c.im != 0.0 || c.re <= 0.0) {
        return Err(Error::Domain("skeleton approximation needs positive coefficients".into()));
    }
    let mut out = Vec::with_capacity(r_list.len());
    for &r in r_list {
        let pr = hadamard_power_complex(p, r)?;
        // a single monomial has no zeros; its image is its exponent
        let mut cloud = if pr.len() == 1 {
            let e = pr.support()[0].clone();
            MomentImagePointCloud {
                source: String::new(),
                r,
                weighted: true,
                points: vec![[e[0] as f64, e[1] as f64]],
            }
        } else {
            wca_cloud(&pr, w, true)?
        };
        cloud.r = r;
        out.push(cloud);
    }
    Ok(out)
}

/// Coefficientwise `a_s^r` for positive real coefficients.
pub fn hadamard_power_complex(p: &ComplexPolynomial, r: f64) -> Result<ComplexPolynomial> {
    if p.terms().any(|(_, c)| c.im != 0.0 || c.re <= 0.0) {
        return Err(Error::Domain("Hadamard power needs positive coefficients".into()));
    }
    ComplexPolynomial::from_terms(
        p.dim(),
        p.terms().map(|(e, c)| (e.clone(), Complex64::new(c.re.powf(r), 0.0))),
    )
}

/// Area of one gap region for each deformation `a_term -> a_term - eps`.
#[derive(Clone, Debug, PartialEq)]
pub struct DeformationStep {
    pub eps: f64,
    /// Pixels of the gap region with order `term`, 0 once it has vanished.
    pub area_pixels: usize,
    /// The same area as a fraction of the Newton polygon's pixels.
    pub area_fraction: f64,
    /// Centre pixel of the region while it exists.
    pub representative: Option<[f64; 2]>,
}

/// Subtracts each `eps` from the coefficient of `term`, takes the `r`-th
/// Hadamard power and measures the weighted-WCA gap of order `term`.
pub fn deformation_sweep(
    p: &ComplexPolynomial,
    term: &[i64],
    eps_list: &[f64],
    r: f64,
    resolution: usize,
    angular_samples: usize,
) -> Result<Vec<DeformationStep>> {
    if p.coefficient(term) == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain(format!("{term:?} is not in the support")));
    }
    let mut out = Vec::with_capacity(eps_list.len());
    for &eps in eps_list {
        let deformed = ComplexPolynomial::from_terms(
            p.dim(),
            p.terms().map(|(e, c)| {
                let c = if e.as_slice() == term { c - eps } else { *c };
                (e.clone(), c)
            }),
        )?;
        let pr = hadamard_power_complex(&deformed, r)?;
        let raster = wca_raster(&pr, resolution, angular_samples, true)?;
        let inside = raster.cells.iter().filter(|c| **c != WcaCell::Outside).count();
        let comps = wca_components(&pr, &raster, true);
        let region: Vec<&WcaComponent> = comps
            .iter()
            .filter(|c| c.bounded && c.order.as_deref() == Some(term))
            .collect();
        let area = region.iter().map(|c| c.pixels.len()).sum::<usize>();
        out.push(DeformationStep {
            eps,
            area_pixels: area,
            area_fraction: area as f64 / inside.max(1) as f64,
            representative: region.iter().max_by_key(|c| c.pixels.len()).map(|c| c.representative),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::LaurentPolynomial;

    fn poly(terms: &[(&[i64], i64)]) -> ComplexPolynomial {
        LaurentPolynomial::from_int_terms(2, terms.iter().map(|(e, c)| (e.to_vec(), *c)))
            .unwrap()
            .to_complex()
    }

    fn one() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    #[test]
    fn single_monomial_maps_to_its_exponent() {
        let p = poly(&[(&[2, 1], 7)]);
        let m = moment_map(&p, &[Complex64::new(3.0, 1.0), Complex64::new(-0.2, 0.5)], true).unwrap();
        assert_eq!(m, vec![2.0, 1.0]);
    }

    #[test]
    fn barycenters_at_the_unit_torus() {
        let line = poly(&[(&[0, 0], 1), (&[1, 0], 1), (&[0, 1], 1)]);
        let m = moment_map(&line, &[one(), one()], false).unwrap();
        assert!((m[0] - 1.0 / 3.0).abs() < 1e-15 && (m[1] - 1.0 / 3.0).abs() < 1e-15);

        let p = poly(&[(&[1, 0], 1), (&[0, 1], 1), (&[1, 1], 6), (&[2, 2], 1)]);
        let m = moment_map(&p, &[one(), one()], true).unwrap();
        assert!((m[0] - 1.0).abs() < 1e-15 && (m[1] - 1.0).abs() < 1e-15);
        assert!(moment_map(&p, &[one(), Complex64::new(0.0, 0.0)], true).is_err());
    }

    #[test]
    fn weighted_barycenter_closed_form() {
        let p = poly(&[(&[1, 0], 3), (&[1, 1], 12), (&[2, 1], 2), (&[0, 2], 2), (&[1, 2], 3)]);
        // sum s |a_s| / sum |a_s| = (3+12+4+0+3, 0+12+2+4+6) / 22
        let m = moment_map(&p, &[Complex64::new(0.0, 1.0), Complex64::new(-1.0, 0.0)], true).unwrap();
        assert!((m[0] - 22.0 / 22.0).abs() < 1e-15);
        assert!((m[1] - 24.0 / 22.0).abs() < 1e-15);
    }

    #[test]
    fn inversion_round_trip() {
        let p = poly(&[(&[1, 0], 3), (&[1, 1], 12), (&[2, 1], 2), (&[0, 2], 2), (&[1, 2], 3)]);
        for u in [[1.0, 1.0], [0.6, 1.5], [1.5, 1.2], [1.0, 0.2]] {
            let (xi, _) = invert_moment_map(&p, u, true).unwrap();
            let back = moment_map_log(&p, &xi, true).unwrap();
            assert!((back[0] - u[0]).abs() < 1e-9 && (back[1] - u[1]).abs() < 1e-9, "{u:?}");
        }
    }

    #[test]
    fn cloud_lies_in_the_triangle() {
        let line = poly(&[(&[0, 0], 1), (&[1, 0], 1), (&[0, 1], 1)]);
        let w = LogWindow::square(5.0).with_resolution(40).with_angles(64);
        let cloud = wca_cloud(&line, &w, false).unwrap();
        assert!(!cloud.points.is_empty());
        let np = line.newton_polytope().unwrap();
        assert!(cloud.points.iter().all(|u| in_polytope(&np, u, 1e-9)));
    }

    #[test]
    fn hirzebruch_gap_around_interior_point() {
        let p = poly(&[(&[1, 0], 3), (&[1, 1], 12), (&[2, 1], 2), (&[0, 2], 2), (&[1, 2], 3)]);
        let raster = wca_raster(&p, 64, 128, true).unwrap();
        let comps = wca_components(&p, &raster, true);
        let bounded: Vec<_> = comps.iter().filter(|c| c.bounded).collect();
        assert_eq!(bounded.len(), 1);
        assert_eq!(bounded[0].order, Some(vec![1, 1]));
    }

    #[test]
    fn skeleton_rejects_nonpositive_and_handles_monomials() {
        let w = LogWindow::square(4.0).with_resolution(32).with_angles(64);
        let bad = poly(&[(&[0, 0], 1), (&[1, 0], -1), (&[0, 1], 1)]);
        assert!(skeleton_approximation(&bad, &[1.0], &w).is_err());
        let mono = ComplexPolynomial::from_terms(2, [(vec![3, 1], Complex64::new(2.0, 0.0))]).unwrap();
        let clouds = skeleton_approximation(&mono, &[1.0, 2.0], &w).unwrap();
        assert!(clouds.iter().all(|c| c.points == vec![[3.0, 1.0]]));
    }

    fn p3() -> ComplexPolynomial {
        poly(&[(&[2, 0], 240), (&[0, 1], 3), (&[1, 1], 240), (&[2, 1], 1080),
            (&[1, 2], 30), (&[2, 2], 180), (&[3, 2], 36), (&[2, 3], 2)])
    }

    #[test]
    fn sixth_hadamard_power_keeps_the_centre_gap() {
        let p = hadamard_power_complex(&p3(), 6.0).unwrap();
        let raster = wca_raster(&p, 48, 128, true).unwrap();
        let comps = wca_components(&p, &raster, true);
        let mut orders: Vec<_> = comps.iter().filter(|c| c.bounded).filter_map(|c| c.order.clone()).collect();
        orders.sort();
        assert_eq!(orders, vec![vec![1, 1], vec![2, 1], vec![2, 2]]);
        let (col, row) = raster.pixel_of([2.0, 2.0]).unwrap();
        assert_eq!(raster.cell(col, row), WcaCell::Gap);
    }

    #[test]
    fn deformation_shrinks_the_gap() {
        let steps = deformation_sweep(&p3(), &[2, 2], &[0.0, 120.0, 179.0], 1.0, 40, 128).unwrap();
        assert!(steps[0].area_pixels > steps[1].area_pixels, "{steps:?}");
        assert!(steps[1].area_pixels >= steps[2].area_pixels, "{steps:?}");
        assert!(steps.iter().all(|s| (0.0..=1.0).contains(&s.area_fraction)));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn moment_image_inside_newton_polygon(
                xi in prop::collection::vec(-30.0f64..30.0, 2),
                weighted in any::<bool>(),
            ) {
                let p = poly(&[(&[2, 0], 240), (&[0, 1], 3), (&[1, 1], 240), (&[2, 1], 1080),
                    (&[1, 2], 30), (&[2, 2], 180), (&[3, 2], 36), (&[2, 3], 2)]);
                let m = moment_map_log(&p, &xi, weighted).unwrap();
                prop_assert!(in_polytope(&p.newton_polytope().unwrap(), &m, 1e-9));
            }
        }
    }
}
