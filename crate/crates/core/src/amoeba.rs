//! Amoebas of bivariate polynomials: rasterization, complement components,
//! component orders, lopsidedness and optimality.

use std::collections::{BTreeMap, VecDeque};
use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::{self, IntegerPolytope};
use crate::poly::{ComplexPolynomial, Exponent};
use crate::roots::univariate_roots;

pub const DEFAULT_RESOLUTION: usize = 400;
pub const DEFAULT_ANGLES: usize = 512;
pub const DEFAULT_DILATION: usize = 1;
/// Angle at which the coordinates not being wound are held.
pub const GENERIC_ANGLE: f64 = 0.4136;

/// Rectangle in `(log|x|, log|y|)` space with its sampling parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct LogWindow {
    pub min: [f64; 2],
    pub max: [f64; 2],
    pub resolution: usize,
    pub angular_samples: usize,
}

impl LogWindow {
    pub fn new(min: [f64; 2], max: [f64; 2], resolution: usize, angular_samples: usize) -> Result<Self> {
        let w = Self {
            min,
            max,
            resolution,
            angular_samples,
        };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        for k in 0..2 {
            if !(self.min[k].is_finite() && self.max[k].is_finite() && self.min[k] < self.max[k]) {
                return Err(Error::Domain(format!(
                    "window axis {k} needs finite min < max, got [{}, {}]",
                    self.min[k], self.max[k]
                )));
            }
        }
        if self.resolution < 16 {
            return Err(Error::Domain(format!("resolution {} below 16", self.resolution)));
        }
        if self.angular_samples < 64 {
            return Err(Error::Domain(format!("angular samples {} below 64", self.angular_samples)));
        }
        Ok(())
    }

    pub fn square(half_width: f64) -> Self {
        Self {
            min: [-half_width; 2],
            max: [half_width; 2],
            resolution: DEFAULT_RESOLUTION,
            angular_samples: DEFAULT_ANGLES,
        }
    }

    pub fn with_resolution(mut self, resolution: usize) -> Self {
        self.resolution = resolution;
        self
    }

    pub fn with_angles(mut self, angular_samples: usize) -> Self {
        self.angular_samples = angular_samples;
        self
    }

    pub fn pixel_size(&self, axis: usize) -> f64 {
        (self.max[axis] - self.min[axis]) / self.resolution as f64
    }

    /// Log-space center of pixel `(col, row)`; `col` indexes the first axis.
    pub fn center(&self, col: usize, row: usize) -> [f64; 2] {
        [
            self.min[0] + (col as f64 + 0.5) * self.pixel_size(0),
            self.min[1] + (row as f64 + 0.5) * self.pixel_size(1),
        ]
    }

    pub fn pixel_of(&self, xi: [f64; 2]) -> Option<(usize, usize)> {
        let mut idx = [0usize; 2];
        for k in 0..2 {
            let t = (xi[k] - self.min[k]) / self.pixel_size(k);
            if !(0.0..self.resolution as f64).contains(&t) {
                return None;
            }
            idx[k] = t as usize;
        }
        Some((idx[0], idx[1]))
    }
}

/// Boolean raster of the amoeba, row-major with the second log coordinate
/// as the row index.
#[derive(Clone, Debug, PartialEq)]
pub struct AmoebaRaster {
    pub window: LogWindow,
    pub dilation_radius: usize,
    grid: Vec<bool>,
}

impl AmoebaRaster {
    pub fn is_amoeba(&self, col: usize, row: usize) -> bool {
        self.grid[row * self.window.resolution + col]
    }

    pub fn grid(&self) -> &[bool] {
        &self.grid
    }

    pub fn amoeba_pixels(&self) -> usize {
        self.grid.iter().filter(|&&b| b).count()
    }
}

pub(crate) fn check_bivariate(p: &ComplexPolynomial) -> Result<IntegerPolytope> {
    if p.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: p.dim(),
        });
    }
    p.newton_polytope().map_err(|e| match e {
        Error::DegeneratePolytope(msg) => Error::DegeneratePolytope(format!(
            "{msg}; reduce the number of variables with a monomial substitution first"
        )),
        other => other,
    })
}

/// Coefficients of `p(x, y)` as a polynomial in the coordinate `free`, with
/// the other coordinate at `exp(log_mod + i angle)`. Computed in the log
/// domain and rescaled so the largest coefficient has modulus about 1.
pub(crate) struct FiberBuilder {
    /// per power of the free variable: (fixed-variable exponent, log|a|, phase)
    groups: Vec<Vec<(f64, f64, Complex64)>>,
}

impl FiberBuilder {
    pub(crate) fn new(p: &ComplexPolynomial, free: usize) -> Self {
        let fixed = 1 - free;
        let degree = p.support().iter().map(|e| e[free]).max().unwrap_or(0) as usize;
        let mut groups = vec![Vec::new(); degree + 1];
        for (e, c) in p.terms() {
            groups[e[free] as usize].push((e[fixed] as f64, c.norm().ln(), c / c.norm()));
        }
        Self { groups }
    }

    pub(crate) fn coefficients(&self, log_mod: f64, angle: f64) -> Vec<Complex64> {
        let mut top = f64::NEG_INFINITY;
        for g in &self.groups {
            for &(k, la, _) in g {
                top = top.max(la + k * log_mod);
            }
        }
        self.groups
            .iter()
            .map(|g| {
                g.iter()
                    .map(|&(k, la, phase)| phase * Complex64::from_polar((la + k * log_mod - top).exp(), k * angle))
                    .sum()
            })
            .collect()
    }
}

/// For each line of the raster, the union over `k` of the range swept by the
/// `k`-th smallest root modulus as the angle turns once.
pub(crate) fn fiber_intervals(builder: &FiberBuilder, log_mod: f64, samples: usize) -> Vec<(f64, f64)> {
    let mut lo: Vec<f64> = Vec::new();
    let mut hi: Vec<f64> = Vec::new();
    let mut count: Option<usize> = None;
    let mut logs = Vec::new();
    for a in 0..samples {
        let angle = TAU * a as f64 / samples as f64;
        let coeffs = builder.coefficients(log_mod, angle);
        let Ok(roots) = univariate_roots(&coeffs) else {
            continue;
        };
        logs.clear();
        logs.extend(roots.iter().map(|z| z.norm().ln()));
        logs.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
        match count {
            None => {
                count = Some(logs.len());
                lo = logs.clone();
                hi = logs.clone();
            }
            Some(c) if c == logs.len() => {
                for k in 0..c {
                    lo[k] = lo[k].min(logs[k]);
                    hi[k] = hi[k].max(logs[k]);
                }
            }
            // the leading coefficient vanished at this angle: a root escaped
            // to infinity, which the neighbouring samples already reflect
            Some(_) => {}
        }
    }
    lo.into_iter().zip(hi).collect()
}

fn mark_intervals(intervals: &[(f64, f64)], min: f64, size: f64, res: usize, mut mark: impl FnMut(usize)) {
    for &(a, b) in intervals {
        if b.is_nan() || a.is_nan() {
            continue;
        }
        let first = ((a - min) / size).floor();
        let last = ((b - min) / size).floor();
        if last < 0.0 || first >= res as f64 {
            continue;
        }
        let first = first.max(0.0) as usize;
        let last = (last as usize).min(res - 1);
        for i in first..=last {
            mark(i);
        }
    }
}

/// Rasterizes the amoeba of a bivariate polynomial over `w`.
///
/// Every column (and, with the axes swapped, every row) is sampled at
/// `angular_samples` angles; the fiber roots' moduli, sorted, are continuous
/// in the angle, so each order statistic sweeps an interval that is marked
/// completely. The union of both passes is dilated by `dilation_radius`.
pub fn rasterize_amoeba(p: &ComplexPolynomial, w: &LogWindow, dilation_radius: usize) -> Result<AmoebaRaster> {
    w.validate()?;
    check_bivariate(p)?;
    let q = p.without_monomial_factor();
    let res = w.resolution;
    let mut grid = vec![false; res * res];

    for free in [1usize, 0] {
        let fixed = 1 - free;
        let builder = FiberBuilder::new(&q, free);
        let lines: Vec<Vec<(f64, f64)>> = (0..res)
            .into_par_iter()
            .map(|i| {
                let log_mod = w.min[fixed] + (i as f64 + 0.5) * w.pixel_size(fixed);
                fiber_intervals(&builder, log_mod, w.angular_samples)
            })
            .collect();
        for (i, intervals) in lines.iter().enumerate() {
            mark_intervals(intervals, w.min[free], w.pixel_size(free), res, |j| {
                let (col, row) = if free == 1 { (i, j) } else { (j, i) };
                grid[row * res + col] = true;
            });
        }
    }

    let grid = dilate(&grid, res, dilation_radius);
    Ok(AmoebaRaster {
        window: w.clone(),
        dilation_radius,
        grid,
    })
}

fn dilate(grid: &[bool], res: usize, radius: usize) -> Vec<bool> {
    if radius == 0 {
        return grid.to_vec();
    }
    let r = radius as i64;
    let offsets: Vec<(i64, i64)> = (-r..=r)
        .flat_map(|dy| (-r..=r).map(move |dx| (dx, dy)))
        .filter(|(dx, dy)| dx * dx + dy * dy <= r * r)
        .collect();
    let mut out = grid.to_vec();
    for row in 0..res as i64 {
        for col in 0..res as i64 {
            if !grid[(row * res as i64 + col) as usize] {
                continue;
            }
            for &(dx, dy) in &offsets {
                let (c, rr) = (col + dx, row + dy);
                if (0..res as i64).contains(&c) && (0..res as i64).contains(&rr) {
                    out[(rr * res as i64 + c) as usize] = true;
                }
            }
        }
    }
    out
}

/// Chamfer (3-4) distance from each pixel to the nearest amoeba pixel.
fn distance_transform(grid: &[bool], res: usize) -> Vec<u32> {
    const INF: u32 = u32::MAX / 2;
    let mut d: Vec<u32> = grid.iter().map(|&a| if a { 0 } else { INF }).collect();
    let idx = |c: usize, r: usize| r * res + c;
    for r in 0..res {
        for c in 0..res {
            let mut v = d[idx(c, r)];
            if c > 0 {
                v = v.min(d[idx(c - 1, r)] + 3);
            }
            if r > 0 {
                v = v.min(d[idx(c, r - 1)] + 3);
                if c > 0 {
                    v = v.min(d[idx(c - 1, r - 1)] + 4);
                }
                if c + 1 < res {
                    v = v.min(d[idx(c + 1, r - 1)] + 4);
                }
            }
            d[idx(c, r)] = v;
        }
    }
    for r in (0..res).rev() {
        for c in (0..res).rev() {
            let mut v = d[idx(c, r)];
            if c + 1 < res {
                v = v.min(d[idx(c + 1, r)] + 3);
            }
            if r + 1 < res {
                v = v.min(d[idx(c, r + 1)] + 3);
                if c + 1 < res {
                    v = v.min(d[idx(c + 1, r + 1)] + 4);
                }
                if c > 0 {
                    v = v.min(d[idx(c - 1, r + 1)] + 4);
                }
            }
            d[idx(c, r)] = v;
        }
    }
    d
}

/// A connected component of the raster complement.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplementComponent {
    /// Pixel indices `row * resolution + col`, ascending.
    pub pixels: Vec<usize>,
    /// Center of the deepest pixel.
    pub representative: [f64; 2],
    /// Chamfer depth of the representative (3 per pixel step).
    pub depth: u32,
    /// Whether the component avoids the window boundary.
    pub bounded: bool,
    /// Filled in by [`assign_orders`].
    pub order: Option<Vec<i64>>,
    /// Further interior points, deepest first, for order retries.
    pub candidates: Vec<[f64; 2]>,
}

impl ComplementComponent {
    pub fn area(&self) -> usize {
        self.pixels.len()
    }
}

/// 4-connected components of the non-amoeba pixels, in scan order of their
/// first pixel.
pub fn complement_components(r: &AmoebaRaster) -> Vec<ComplementComponent> {
    let res = r.window.resolution;
    let dist = distance_transform(&r.grid, res);
    let mut label = vec![usize::MAX; res * res];
    let mut out = Vec::new();
    for start in 0..res * res {
        if r.grid[start] || label[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut pixels = Vec::new();
        let mut bounded = true;
        let mut queue = VecDeque::from([start]);
        label[start] = id;
        while let Some(i) = queue.pop_front() {
            pixels.push(i);
            let (c, row) = (i % res, i / res);
            if c == 0 || row == 0 || c + 1 == res || row + 1 == res {
                bounded = false;
            }
            let mut visit = |j: usize| {
                if !r.grid[j] && label[j] == usize::MAX {
                    label[j] = id;
                    queue.push_back(j);
                }
            };
            if c > 0 {
                visit(i - 1);
            }
            if c + 1 < res {
                visit(i + 1);
            }
            if row > 0 {
                visit(i - res);
            }
            if row + 1 < res {
                visit(i + res);
            }
        }
        pixels.sort_unstable();
        let mut ranked: Vec<usize> = pixels.clone();
        ranked.sort_by(|a, b| dist[*b].cmp(&dist[*a]).then(a.cmp(b)));
        let center = |i: usize| r.window.center(i % res, i / res);
        let best = ranked[0];
        let candidates = ranked.iter().skip(1).step_by((ranked.len() / 16).max(1)).take(8).map(|&i| center(i)).collect();
        out.push(ComplementComponent {
            representative: center(best),
            depth: dist[best],
            bounded,
            order: None,
            candidates,
            pixels,
        });
    }
    out
}

/// Winding number of `t -> p(x(t))` around 0 with `x_j = exp(xi_j + i t)` and
/// the other coordinate held at `exp(xi_k + i GENERIC_ANGLE)`.
///
/// The component of the amoeba complement containing `xi` has this vector as
/// its order. Fails with a needs-deeper-point error when every trial fiber
/// passes too close to a zero of `p`.
pub fn component_order(p: &ComplexPolynomial, xi: &[f64]) -> Result<Vec<i64>> {
    if xi.len() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: xi.len(),
        });
    }
    if p.is_zero() {
        return Err(Error::EmptySupport);
    }
    let gap = fiber_gap(p, xi)?;
    if gap < MIN_FIBER_GAP {
        return Err(Error::NeedsDeeperPoint(format!(
            "{xi:?} lies within {gap:.1e} of the amoeba"
        )));
    }
    (0..p.dim()).map(|j| winding_number(p, xi, j)).collect()
}

const MIN_FIBER_GAP: f64 = 1e-7;
const GAP_SAMPLES: usize = 512;

/// Smallest `|log|y| - xi_last|` over the roots `y` of the fibers of `p` in
/// the last coordinate, the others having moduli `e^{xi_k}` and sampled
/// arguments. Zero, up to sampling, exactly when `xi` lies on the amoeba.
pub fn fiber_gap(p: &ComplexPolynomial, xi: &[f64]) -> Result<f64> {
    let n = p.dim();
    let j = n - 1;
    let low = p.support().iter().map(|e| e[j]).min().unwrap_or(0);
    let high = p.support().iter().map(|e| e[j]).max().unwrap_or(0);
    let gap_at = |angles: &[f64]| -> f64 {
        let mut top = f64::NEG_INFINITY;
        let mut items = Vec::with_capacity(p.len());
        for (e, c) in p.terms() {
            let mut lm = c.norm().ln();
            let mut arg = c.arg();
            for k in 0..j {
                lm += e[k] as f64 * xi[k];
                arg += e[k] as f64 * angles[k];
            }
            top = top.max(lm);
            items.push(((e[j] - low) as usize, lm, arg));
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); (high - low + 1) as usize];
        for (k, lm, arg) in items {
            coeffs[k] += Complex64::from_polar((lm - top).exp(), arg);
        }
        match univariate_roots(&coeffs) {
            Ok(roots) => roots
                .iter()
                .map(|z| (z.norm().ln() - xi[j]).abs())
                .fold(f64::INFINITY, f64::min),
            Err(_) => 0.0,
        }
    };
    if n == 1 {
        return Ok(gap_at(&[]));
    }
    if n == 2 {
        let step = TAU / GAP_SAMPLES as f64;
        let mut samples: Vec<(f64, f64)> = (0..GAP_SAMPLES)
            .map(|a| {
                let t = a as f64 * step;
                (gap_at(&[t]), t)
            })
            .collect();
        samples.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut best = samples[0].0;
        // golden-section refinement around the three smallest samples
        for &(_, t0) in samples.iter().take(3) {
            let (mut a, mut b) = (t0 - step, t0 + step);
            let g = 0.5 * (5f64.sqrt() - 1.0);
            let mut c = b - g * (b - a);
            let mut d = a + g * (b - a);
            let (mut fc, mut fd) = (gap_at(&[c]), gap_at(&[d]));
            for _ in 0..48 {
                if fc < fd {
                    b = d;
                    d = c;
                    fd = fc;
                    c = b - g * (b - a);
                    fc = gap_at(&[c]);
                } else {
                    a = c;
                    c = d;
                    fc = fd;
                    d = a + g * (b - a);
                    fd = gap_at(&[d]);
                }
            }
            best = best.min(fc).min(fd);
        }
        return Ok(best);
    }
    // quasi-random angles (Weyl sequence) for the remaining coordinates
    let mut best = f64::INFINITY;
    for a in 0..GAP_SAMPLES * 4 {
        let angles: Vec<f64> = (0..j)
            .map(|k| TAU * ((a as f64 + 1.0) * (2.0f64 + k as f64).sqrt()).fract())
            .collect();
        best = best.min(gap_at(&angles));
    }
    Ok(best)
}

fn winding_number(p: &ComplexPolynomial, xi: &[f64], j: usize) -> Result<i64> {
    let mut last = None;
    for attempt in 0..6 {
        let theta = GENERIC_ANGLE + 0.7318 * attempt as f64;
        match winding_at_angle(p, xi, j, theta) {
            Ok(w) => return Ok(w),
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap_or_else(|| Error::Internal("no winding attempt made".into())))
}

/// Terms of `p` restricted to the circle in direction `j`, as
/// `(power of x_j, complex weight)` with weights scaled so the largest
/// modulus is 1.
fn circle_terms(p: &ComplexPolynomial, xi: &[f64], j: usize, theta: f64) -> Vec<(i64, Complex64)> {
    let mut by_power: BTreeMap<i64, Vec<(f64, Complex64)>> = BTreeMap::new();
    let mut top = f64::NEG_INFINITY;
    for (e, c) in p.terms() {
        let mut log_mod = c.norm().ln();
        let mut angle = c.arg();
        for k in 0..xi.len() {
            log_mod += e[k] as f64 * xi[k];
            if k != j {
                angle += e[k] as f64 * theta;
            }
        }
        top = top.max(log_mod);
        by_power.entry(e[j]).or_default().push((log_mod, Complex64::from_polar(1.0, angle)));
    }
    by_power
        .into_iter()
        .map(|(k, items)| {
            let w: Complex64 = items.iter().map(|(lm, ph)| ph * (lm - top).exp()).sum();
            (k, w)
        })
        .collect()
}

fn winding_at_angle(p: &ComplexPolynomial, xi: &[f64], j: usize, theta: f64) -> Result<i64> {
    const THRESHOLD: f64 = 1e-8;
    let terms = circle_terms(p, xi, j, theta);
    let scale: f64 = terms.iter().map(|(_, w)| w.norm()).sum();
    let eval = |t: f64| -> Complex64 { terms.iter().map(|&(k, w)| w * Complex64::from_polar(1.0, k as f64 * t)).sum() };
    let span = terms.last().map(|t| t.0).unwrap_or(0) - terms.first().map(|t| t.0).unwrap_or(0);
    let n0 = (16 * span.max(1) as usize).clamp(64, 4096);

    let too_close = |v: Complex64| v.norm() < THRESHOLD * scale;
    let mut total = 0.0;
    let mut stack: Vec<(f64, f64, Complex64, Complex64, u32)> = Vec::new();
    let mut prev_t = 0.0;
    let mut prev_v = eval(0.0);
    if too_close(prev_v) {
        return Err(Error::NeedsDeeperPoint(format!("fiber through {xi:?} meets a zero")));
    }
    for k in 1..=n0 {
        let t = TAU * k as f64 / n0 as f64;
        let v = if k == n0 { eval(0.0) } else { eval(t) };
        stack.push((prev_t, t, prev_v, v, 0));
        while let Some((a, b, va, vb, depth)) = stack.pop() {
            let step = (vb / va).arg();
            if step.abs() < PI / 2.0 {
                total += step;
                continue;
            }
            if depth > 40 {
                return Err(Error::NeedsDeeperPoint(format!(
                    "winding around {xi:?} in direction {j} did not resolve"
                )));
            }
            let m = 0.5 * (a + b);
            let vm = eval(m);
            if too_close(vm) {
                return Err(Error::NeedsDeeperPoint(format!("fiber through {xi:?} meets a zero")));
            }
            // push the right half first so the left half is processed first
            stack.push((m, b, vm, vb, depth + 1));
            stack.push((a, m, va, vm, depth + 1));
        }
        if too_close(v) {
            return Err(Error::NeedsDeeperPoint(format!("fiber through {xi:?} meets a zero")));
        }
        prev_t = t;
        prev_v = v;
    }
    let w = total / TAU;
    let rounded = w.round();
    if (w - rounded).abs() > 1e-6 {
        return Err(Error::NeedsDeeperPoint(format!("non-integral winding {w}")));
    }
    Ok(rounded as i64)
}

/// Computes each component's order, retrying at other interior points when
/// the deepest one is ill-conditioned.
pub fn assign_orders(p: &ComplexPolynomial, comps: &mut [ComplementComponent]) {
    for comp in comps {
        let mut points = vec![comp.representative];
        points.extend(comp.candidates.iter().copied());
        comp.order = points.iter().find_map(|xi| component_order(p, xi).ok());
    }
}

/// The exponent whose weighted monomial `|a_s| e^{<s, xi>}` exceeds the sum of
/// all others, if any. Such a point lies outside the amoeba, in the
/// complement component of that order.
pub fn lopsided_at(p: &ComplexPolynomial, xi: &[f64]) -> Result<Option<Exponent>> {
    if xi.len() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: xi.len(),
        });
    }
    let logs: Vec<(&Exponent, f64)> = p
        .terms()
        .map(|(e, c)| (e, c.norm().ln() + e.iter().zip(xi).map(|(&s, x)| s as f64 * x).sum::<f64>()))
        .collect();
    let Some(&(best, top)) = logs.iter().max_by(|a, b| a.1.total_cmp(&b.1)) else {
        return Ok(None);
    };
    let rest: f64 = logs
        .iter()
        .filter(|(e, _)| *e != best)
        .map(|(_, l)| (l - top).exp())
        .sum();
    Ok((rest < 1.0 - 1e-12).then(|| best.clone()))
}

/// Points where three weighted monomials tie for the maximum of
/// `log|a_s| + <s, xi>` (the vertices of the tropical curve).
pub fn tropical_vertices(p: &ComplexPolynomial) -> Vec<[f64; 2]> {
    let data: Vec<([f64; 2], f64)> = p
        .terms()
        .map(|(e, c)| ([e[0] as f64, e[1] as f64], c.norm().ln()))
        .collect();
    let value = |xi: [f64; 2], (s, l): &([f64; 2], f64)| l + s[0] * xi[0] + s[1] * xi[1];
    let mut out = Vec::new();
    let m = data.len();
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                let (sa, la) = data[a];
                let (sb, lb) = data[b];
                let (sc, lc) = data[c];
                let m11 = sa[0] - sb[0];
                let m12 = sa[1] - sb[1];
                let m21 = sa[0] - sc[0];
                let m22 = sa[1] - sc[1];
                let det = m11 * m22 - m12 * m21;
                if det == 0.0 {
                    continue;
                }
                let r1 = lb - la;
                let r2 = lc - la;
                let xi = [(r1 * m22 - m12 * r2) / det, (m11 * r2 - m21 * r1) / det];
                let tie = value(xi, &data[a]);
                let tol = 1e-9 * tie.abs().max(1.0);
                if data.iter().all(|d| value(xi, d) <= tie + tol) {
                    out.push(xi);
                }
            }
        }
    }
    out
}

/// Window `[-(L + 4), L + 4]^2` for the longest Newton-polygon edge `L`,
/// enlarged to contain every tropical vertex with a margin of 4.
pub fn default_window(p: &ComplexPolynomial) -> Result<LogWindow> {
    let np = check_bivariate(p)?;
    let longest = np
        .edges()
        .iter()
        .map(|(a, b)| (((a[0] - b[0]).pow(2) + (a[1] - b[1]).pow(2)) as f64).sqrt())
        .fold(0.0, f64::max);
    let half = longest + 4.0;
    let mut min = [-half; 2];
    let mut max = [half; 2];
    for v in tropical_vertices(p) {
        for k in 0..2 {
            min[k] = min[k].min(v[k] - 4.0);
            max[k] = max[k].max(v[k] + 4.0);
        }
    }
    LogWindow::new(min, max, DEFAULT_RESOLUTION, DEFAULT_ANGLES)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Optimal,
    NotOptimal,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Optimal => "optimal",
            Verdict::NotOptimal => "not optimal",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComponentSummary {
    pub order: Option<Vec<i64>>,
    pub bounded: bool,
    pub representative: [f64; 2],
    pub area: usize,
    /// Raster regions merged into this component because they share its
    /// order; 1 unless the raster split a thin part of the complement.
    pub fragments: usize,
    /// For unbounded components of vertex order: whether a far point in the
    /// vertex's normal cone is lopsided with the same dominant exponent.
    pub certified: Option<bool>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OptimalityReport {
    pub lattice_points: usize,
    pub vertices: Vec<Exponent>,
    pub components: Vec<ComponentSummary>,
    /// Raster regions that were merged into a component of the same order.
    pub merged_fragments: usize,
    pub missing_vertices: Vec<Exponent>,
    pub verdict: Verdict,
    pub diagnostics: Vec<String>,
}

impl OptimalityReport {
    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn is_optimal(&self) -> bool {
        self.verdict == Verdict::Optimal
    }

    pub fn has_order(&self, order: &[i64]) -> bool {
        self.components.iter().any(|c| c.order.as_deref() == Some(order))
    }
}

/// Direction into the normal cone of vertex `v`: the sum of the unit outer
/// normals of its two facets.
fn normal_cone_direction(np: &IntegerPolytope, v: &[i64]) -> [f64; 2] {
    let mut d = [0.0; 2];
    for f in np.tight_facets(v) {
        let norm = ((f.normal[0] * f.normal[0] + f.normal[1] * f.normal[1]) as f64).sqrt();
        d[0] += f.normal[0] as f64 / norm;
        d[1] += f.normal[1] as f64 / norm;
    }
    d
}

fn certify_vertex(p: &ComplexPolynomial, np: &IntegerPolytope, v: &[i64], from: [f64; 2]) -> bool {
    let d = normal_cone_direction(np, v);
    let mut t = 1.0;
    while t < 1e4 {
        let xi = [from[0] + t * d[0], from[1] + t * d[1]];
        if let Ok(Some(s)) = lopsided_at(p, &xi) {
            return s.as_slice() == v;
        }
        t *= 2.0;
    }
    false
}

/// Rasterizes, labels the complement, computes orders and compares the
/// component count with the number of lattice points of the Newton polygon.
pub fn optimality_report(p: &ComplexPolynomial, w: &LogWindow) -> Result<OptimalityReport> {
    let np = check_bivariate(p)?;
    let raster = rasterize_amoeba(p, w, DEFAULT_DILATION)?;
    let mut comps = complement_components(&raster);
    assign_orders(p, &mut comps);
    Ok(report_from_components(p, &np, &comps))
}

pub fn report_from_components(
    p: &ComplexPolynomial,
    np: &IntegerPolytope,
    comps: &[ComplementComponent],
) -> OptimalityReport {
    let lattice_points = lattice::lattice_points(np).len();
    let mut diagnostics = Vec::new();
    // Orders are injective on components, so regions sharing an order are
    // pieces of one component that the dilated raster cut apart. The
    // largest piece represents the component.
    let mut sorted: Vec<&ComplementComponent> = comps.iter().collect();
    sorted.sort_by(|a, b| a.order.cmp(&b.order).then(b.pixels.len().cmp(&a.pixels.len())));
    let mut components: Vec<ComponentSummary> = Vec::with_capacity(comps.len());
    let mut merged_fragments = 0;
    for c in sorted {
        if let Some(last) = components.last_mut() {
            if c.order.is_some() && last.order == c.order {
                last.area += c.pixels.len();
                last.bounded &= c.bounded;
                last.fragments += 1;
                merged_fragments += 1;
                continue;
            }
        }
        components.push(ComponentSummary {
            order: c.order.clone(),
            bounded: c.bounded,
            representative: c.representative,
            area: c.pixels.len(),
            fragments: 1,
            certified: None,
        });
    }
    for c in &mut components {
        if let Some(o) = c.order.as_ref().filter(|o| !c.bounded && np.is_vertex(o)) {
            let ok = certify_vertex(p, np, o, c.representative);
            if !ok {
                diagnostics.push(format!(
                    "unbounded component near {:?} with vertex order {o:?} is not confirmed by lopsidedness",
                    c.representative
                ));
            }
            c.certified = Some(ok);
        }
    }
    if merged_fragments > 0 {
        diagnostics.push(format!("merged {merged_fragments} raster fragment(s) into components of equal order"));
    }

    let unknown = components.iter().filter(|c| c.order.is_none()).count();
    if unknown > 0 {
        diagnostics.push(format!("{unknown} component(s) too thin to compute an order"));
    }
    let known: Vec<&Vec<i64>> = components.iter().filter_map(|c| c.order.as_ref()).collect();
    let outside: Vec<_> = known.iter().filter(|o| !np.contains(o)).collect();
    if !outside.is_empty() {
        diagnostics.push(format!("orders outside the Newton polygon: {outside:?}"));
    }
    let vertices = np.vertices().to_vec();
    let missing_vertices: Vec<Exponent> = vertices
        .iter()
        .filter(|v| !known.iter().any(|o| o == v))
        .cloned()
        .collect();
    if !missing_vertices.is_empty() {
        diagnostics.push(format!(
            "no component found for vertices {missing_vertices:?}; enlarge the window"
        ));
    }
    diagnostics.push("boundedness is relative to the window".into());

    let consistent = unknown == 0
        && outside.is_empty()
        && missing_vertices.is_empty()
        && components.iter().all(|c| c.certified != Some(false));
    let verdict = if !consistent {
        Verdict::Inconclusive
    } else if components.len() == lattice_points {
        Verdict::Optimal
    } else {
        Verdict::NotOptimal
    };
    OptimalityReport {
        lattice_points,
        vertices,
        components,
        merged_fragments,
        missing_vertices,
        verdict,
        diagnostics,
    }
}

/// `sum_j sqrt(a_j b_j) < c / 2`: the optimality criterion for
/// `c + sum_j (a_j x_j + b_j / x_j)` (strict).
pub fn cross_polytope_optimal(a: &[f64], b: &[f64], c: f64) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    if a.iter().chain(b).chain([&c]).any(|v| !(v.is_finite() && *v > 0.0)) {
        return Err(Error::Domain("cross-polytope coefficients must be positive".into()));
    }
    let s: f64 = a.iter().zip(b).map(|(x, y)| (x * y).sqrt()).sum();
    Ok(s < c / 2.0)
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

    fn line() -> ComplexPolynomial {
        poly(&[(&[0, 0], 1), (&[1, 0], 1), (&[0, 1], 1)])
    }

    /// Oracle: roots of the restriction to `x_j` inside the disc of radius
    /// `e^{xi_j}`, minus the pole order at 0.
    fn order_by_root_count(p: &ComplexPolynomial, xi: &[f64], j: usize) -> i64 {
        let k = 1 - j;
        let fixed = Complex64::from_polar(xi[k].exp(), GENERIC_ANGLE);
        let low = p.support().iter().map(|e| e[j]).min().unwrap();
        let high = p.support().iter().map(|e| e[j]).max().unwrap();
        let mut coeffs = vec![Complex64::new(0.0, 0.0); (high - low + 1) as usize];
        for (e, c) in p.terms() {
            coeffs[(e[j] - low) as usize] += c * fixed.powi(e[k] as i32);
        }
        let roots = univariate_roots(&coeffs).unwrap();
        roots.iter().filter(|z| z.norm() < xi[j].exp()).count() as i64 + low
    }

    #[test]
    fn window_validation() {
        assert!(LogWindow::new([0.0, 0.0], [1.0, 1.0], 8, 64).is_err());
        assert!(LogWindow::new([0.0, 0.0], [1.0, 1.0], 16, 32).is_err());
        assert!(LogWindow::new([1.0, 0.0], [1.0, 1.0], 16, 64).is_err());
        let w = LogWindow::new([-1.0, -2.0], [1.0, 2.0], 16, 64).unwrap();
        assert_eq!(w.pixel_of(w.center(3, 7)), Some((3, 7)));
    }

    #[test]
    fn orders_of_the_line() {
        let p = line();
        assert_eq!(component_order(&p, &[-10.0, -10.0]).unwrap(), vec![0, 0]);
        assert_eq!(component_order(&p, &[10.0, -10.0]).unwrap(), vec![1, 0]);
        assert_eq!(component_order(&p, &[-10.0, 10.0]).unwrap(), vec![0, 1]);
        for xi in [[10.0, -10.0], [3.0, 0.5], [-2.0, -4.0], [-1.0, 3.0]] {
            let got = component_order(&p, &xi).unwrap();
            for j in 0..2 {
                assert_eq!(got[j], order_by_root_count(&p, &xi, j), "xi = {xi:?}");
            }
        }
    }

    #[test]
    fn order_on_the_amoeba_needs_deeper_point() {
        // |1| = |x| = |y| at the origin and the fiber x = -1 - y meets zeros
        let p = line();
        let xi = [2.0f64.ln(), 0.0];
        assert!(matches!(component_order(&p, &xi), Err(Error::NeedsDeeperPoint(_))));
    }

    #[test]
    fn lopsidedness() {
        let p = line();
        assert_eq!(lopsided_at(&p, &[-10.0, -10.0]).unwrap(), Some(vec![0, 0]));
        assert_eq!(lopsided_at(&p, &[0.0, 0.0]).unwrap(), None);
        let p3 = poly(&[
            (&[2, 0], 240),
            (&[0, 1], 3),
            (&[1, 1], 240),
            (&[2, 1], 1080),
            (&[1, 2], 30),
            (&[2, 2], 180),
            (&[3, 2], 36),
            (&[2, 3], 2),
        ]);
        // oracle: largest log|a_s| + <s, xi> by direct comparison
        let xi = [15.0, 0.0];
        let best = p3
            .terms()
            .max_by(|a, b| {
                let la = a.1.norm().ln() + a.0[0] as f64 * xi[0];
                let lb = b.1.norm().ln() + b.0[0] as f64 * xi[0];
                la.total_cmp(&lb)
            })
            .unwrap()
            .0
            .clone();
        assert_eq!(best, vec![3, 2]);
        assert_eq!(lopsided_at(&p3, &xi).unwrap(), Some(vec![3, 2]));
    }

    #[test]
    fn line_raster_has_three_unbounded_components() {
        let w = LogWindow::square(5.0).with_resolution(100).with_angles(128);
        let r = rasterize_amoeba(&line(), &w, 1).unwrap();
        let mut comps = complement_components(&r);
        assert_eq!(comps.len(), 3);
        assert!(comps.iter().all(|c| !c.bounded));
        assign_orders(&line(), &mut comps);
        let mut orders: Vec<_> = comps.iter().map(|c| c.order.clone().unwrap()).collect();
        orders.sort();
        assert_eq!(orders, vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn product_of_lines_gives_quadrants() {
        let p = poly(&[(&[0, 0], 1), (&[1, 0], 1), (&[0, 1], 1), (&[1, 1], 1)]);
        let w = LogWindow::square(5.0).with_resolution(64).with_angles(64);
        let r = rasterize_amoeba(&p, &w, 1).unwrap();
        // the amoeba is the two coordinate axes
        assert!(r.is_amoeba(32, 5) && r.is_amoeba(5, 32));
        assert!(!r.is_amoeba(10, 10));
        assert_eq!(complement_components(&r).len(), 4);
    }

    #[test]
    fn degenerate_support_rejected() {
        let p = poly(&[(&[0, 0], 1), (&[1, 1], 1)]);
        let w = LogWindow::square(5.0).with_resolution(32).with_angles(64);
        assert!(matches!(rasterize_amoeba(&p, &w, 1), Err(Error::DegeneratePolytope(_))));
    }

    #[test]
    fn lopsided_points_are_not_marked() {
        let p = poly(&[(&[1, 0], 3), (&[1, 1], 12), (&[2, 1], 2), (&[0, 2], 2), (&[1, 2], 3)]);
        let w = LogWindow::square(6.0).with_resolution(120).with_angles(128);
        let r = rasterize_amoeba(&p, &w, 1).unwrap();
        let mut checked = 0;
        for row in 0..120 {
            for col in 0..120 {
                let xi = w.center(col, row);
                if let Some(s) = lopsided_at(&p, &xi).unwrap() {
                    // the lopsided set of a fixed exponent is convex, so a
                    // square of half-width 2 pixels whose corners and edge
                    // midpoints share the dominant exponent lies off the amoeba
                    let h = w.pixel_size(0) * 2.0;
                    let deep = (-1..=1)
                        .flat_map(|a| (-1..=1).map(move |b| [a as f64 * h, b as f64 * h]))
                        .all(|d| lopsided_at(&p, &[xi[0] + d[0], xi[1] + d[1]]).unwrap() == Some(s.clone()));
                    if deep {
                        assert!(!r.is_amoeba(col, row), "pixel {col},{row}");
                        checked += 1;
                    }
                }
            }
        }
        assert!(checked > 1000);
    }

    #[test]
    fn winding_stable_inside_component() {
        let p = poly(&[(&[1, 0], 3), (&[1, 1], 12), (&[2, 1], 2), (&[0, 2], 2), (&[1, 2], 3)]);
        let w = LogWindow::square(6.0).with_resolution(120).with_angles(128);
        let r = rasterize_amoeba(&p, &w, 1).unwrap();
        let comps = complement_components(&r);
        for c in comps.iter().filter(|c| c.pixels.len() > 20) {
            let first = component_order(&p, &c.representative).unwrap();
            for xi in c.candidates.iter().take(5) {
                assert_eq!(component_order(&p, xi).unwrap(), first);
            }
        }
    }

    #[test]
    fn cross_polytope_criterion() {
        assert!(!cross_polytope_optimal(&[1.0, 1.0], &[1.0, 1.0], 4.0).unwrap());
        assert!(cross_polytope_optimal(&[1.0, 1.0], &[1.0, 1.0], 5.0).unwrap());
        assert!(cross_polytope_optimal(&[1.0 / 16.0; 3], &[1.0 / 16.0; 3], 1.0).unwrap());
        assert!(cross_polytope_optimal(&[1.0], &[-1.0], 1.0).is_err());
    }

    #[test]
    fn tropical_vertices_of_the_line() {
        let v = tropical_vertices(&line());
        assert_eq!(v.len(), 1);
        assert!(v[0][0].abs() < 1e-12 && v[0][1].abs() < 1e-12);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn unimodular() -> impl Strategy<Value = Vec<Vec<i64>>> {
            // products of elementary shears and a sign flip
            (prop::collection::vec((0usize..2, -2i64..3), 1..4), any::<bool>()).prop_map(|(ops, flip)| {
                let mut m = vec![vec![1, 0], vec![0, 1]];
                for (row, k) in ops {
                    let other = 1 - row;
                    for c in 0..2 {
                        m[row][c] += k * m[other][c];
                    }
                }
                if flip {
                    m.swap(0, 1);
                }
                m
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(32))]

            #[test]
            fn orders_transform_linearly(v in unimodular(), eta in prop::collection::vec(-6.0f64..6.0, 2)) {
                let p = poly(&[(&[1, 0], 3), (&[1, 1], 12), (&[2, 1], 2), (&[0, 2], 2), (&[1, 2], 3)]);
                let q = p.monomial_substitution(&v, &[Complex64::new(1.0, 0.0); 2], &[0, 0], 1).unwrap();
                // x_i = prod_k y_k^{v_ik}, so log|x| = v log|y|
                let xi: Vec<f64> = (0..2).map(|i| v[i][0] as f64 * eta[0] + v[i][1] as f64 * eta[1]).collect();
                let (Ok(nu), Ok(mu)) = (component_order(&p, &xi), component_order(&q, &eta)) else {
                    return Ok(());
                };
                let want: Vec<i64> = (0..2).map(|k| nu[0] * v[0][k] + nu[1] * v[1][k]).collect();
                prop_assert_eq!(mu, want);
            }

            #[test]
            fn orders_match_root_counts(xi in prop::collection::vec(-8.0f64..8.0, 2)) {
                let p = poly(&[(&[1, 0], 3), (&[1, 1], 12), (&[2, 1], 2), (&[0, 2], 2), (&[1, 2], 3)]);
                let Ok(nu) = component_order(&p, &xi) else { return Ok(()); };
                for j in 0..2 {
                    prop_assert_eq!(nu[j], order_by_root_count(&p, &xi, j));
                }
            }
        }
    }
}
