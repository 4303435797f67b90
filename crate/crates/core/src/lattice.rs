//! Integer polytopes, their facet descriptions, lattice-point enumeration and
//! the combinatorics of finite subsets of `Z^n`.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::Exponent;

/// A facet hyperplane `<normal, s> + offset = 0` with `P` on the side where
/// the left-hand side is `<= 0`. The normal is primitive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl Facet {
    pub fn value(&self, s: &[i64]) -> i64 {
        dot(&self.normal, s) + self.offset
    }
}

/// Full-dimensional convex lattice polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerPolytope {
    n: usize,
    vertices: Vec<Exponent>,
    facets: Vec<Facet>,
}

impl IntegerPolytope {
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Counterclockwise from the lexicographically smallest vertex when
    /// `n = 2`, lexicographic otherwise.
    pub fn vertices(&self) -> &[Exponent] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn contains(&self, s: &[i64]) -> bool {
        s.len() == self.n && self.facets.iter().all(|f| f.value(s) <= 0)
    }

    pub fn is_vertex(&self, s: &[i64]) -> bool {
        self.vertices.iter().any(|v| v.as_slice() == s)
    }

    pub fn is_interior(&self, s: &[i64]) -> bool {
        s.len() == self.n && self.facets.iter().all(|f| f.value(s) < 0)
    }

    pub fn bounding_box(&self) -> (Exponent, Exponent) {
        let mut lo = self.vertices[0].clone();
        let mut hi = self.vertices[0].clone();
        for v in &self.vertices {
            for k in 0..self.n {
                lo[k] = lo[k].min(v[k]);
                hi[k] = hi[k].max(v[k]);
            }
        }
        (lo, hi)
    }

    pub fn translate(&self, a: &[i64]) -> Self {
        Self {
            n: self.n,
            vertices: self
                .vertices
                .iter()
                .map(|v| v.iter().zip(a).map(|(x, y)| x + y).collect())
                .collect(),
            facets: self
                .facets
                .iter()
                .map(|f| Facet {
                    normal: f.normal.clone(),
                    offset: f.offset - dot(&f.normal, a),
                })
                .collect(),
        }
    }

    /// The translate whose bounding box has its lower corner at the origin.
    pub fn canonical_translate(&self) -> Self {
        let (lo, _) = self.bounding_box();
        self.translate(&lo.iter().map(|x| -x).collect::<Vec<_>>())
    }

    /// Boundary edges as consecutive vertex pairs (`n = 2` only).
    pub fn edges(&self) -> Vec<(Exponent, Exponent)> {
        if self.n != 2 {
            return Vec::new();
        }
        let m = self.vertices.len();
        (0..m)
            .map(|i| (self.vertices[i].clone(), self.vertices[(i + 1) % m].clone()))
            .collect()
    }

    /// Facets whose hyperplane passes through `s`.
    pub fn tight_facets(&self, s: &[i64]) -> Vec<&Facet> {
        self.facets.iter().filter(|f| f.value(s) == 0).collect()
    }
}

/// A finite nonempty set of lattice points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeSupport {
    n: usize,
    points: BTreeSet<Exponent>,
}

impl LatticeSupport {
    pub fn new<I>(n: usize, points: I) -> Result<Self>
    where
        I: IntoIterator<Item = Exponent>,
    {
        let mut set = BTreeSet::new();
        for p in points {
            if p.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: p.len(),
                });
            }
            set.insert(p);
        }
        if set.is_empty() {
            return Err(Error::EmptySupport);
        }
        Ok(Self { n, points: set })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, s: &[i64]) -> bool {
        self.points.contains(s)
    }

    pub fn points(&self) -> impl Iterator<Item = &Exponent> {
        self.points.iter()
    }

    pub fn to_vec(&self) -> Vec<Exponent> {
        self.points.iter().cloned().collect()
    }
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn gcd_of(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |acc, &x| acc.gcd(&x))
}

fn primitive(v: Vec<i64>) -> Vec<i64> {
    let g = gcd_of(&v);
    if g <= 1 {
        v
    } else {
        v.into_iter().map(|x| x / g).collect()
    }
}

/// Exact determinant of a square integer matrix (fraction-free Bareiss).
pub fn integer_determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[r][c];
                for j in c..cols {
                    let d = &f * &a[r][j];
                    a[i][j] -= d;
                }
            }
        }
        r += 1;
    }
    r
}

/// Solves `sum_i m_i v_i = target` for an integer vector `m` (rows `v_i`).
pub fn solve_integer_combination(v: &[Vec<i64>], target: &[i64]) -> Option<Vec<i64>> {
    let n = v.len();
    // augmented system with columns = rows of v
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|k| {
            let mut row: Vec<BigRational> = (0..n)
                .map(|i| BigRational::from_integer(v[i][k].into()))
                .collect();
            row.push(BigRational::from_integer(target[k].into()));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let pivot = a[c][c].clone();
        for j in c..=n {
            a[c][j] = &a[c][j] / &pivot;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..=n {
                    let d = &f * &a[c][j];
                    a[i][j] -= d;
                }
            }
        }
    }
    a.iter()
        .map(|row| {
            let x = &row[n];
            if x.is_integer() {
                x.to_integer().to_i64()
            } else {
                None
            }
        })
        .collect()
}

fn convex_hull_2d(points: &[Exponent]) -> Vec<Exponent> {
    let mut pts: Vec<Exponent> = points.to_vec();
    pts.sort();
    pts.dedup();
    let cross = |o: &Exponent, a: &Exponent, b: &Exponent| -> i128 {
        (a[0] - o[0]) as i128 * (b[1] - o[1]) as i128 - (a[1] - o[1]) as i128 * (b[0] - o[0]) as i128
    };
    let mut lower: Vec<Exponent> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Exponent> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Outer normal of the hyperplane through `base` and `others` (generalized
/// cross product of the difference vectors), or `None` if they are affinely
/// dependent.
fn hyperplane_normal(base: &[i64], others: &[&Exponent]) -> Option<Vec<i64>> {
    let n = base.len();
    let diffs: Vec<Vec<i64>> = others
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    let mut normal = Vec::with_capacity(n);
    for k in 0..n {
        let minor: Vec<Vec<i64>> = diffs
            .iter()
            .map(|row| row.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, &x)| x).collect())
            .collect();
        let d = integer_determinant(&minor);
        let d = if k % 2 == 0 { d } else { -d };
        normal.push(d.to_i64()?);
    }
    if normal.iter().all(|&x| x == 0) {
        None
    } else {
        Some(primitive(normal))
    }
}

fn combinations(m: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > m {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + m - k {
                break;
            }
            if i == 0 && idx[0] == m - k {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Facet description of the convex hull of `points`.
///
/// Every returned facet normal is primitive and outward; the vertex list
/// contains exactly the extreme points. Fails with a degenerate-polytope
/// error unless the hull is full-dimensional.
pub fn facet_description(points: &[Exponent]) -> Result<IntegerPolytope> {
    let first = points.first().ok_or(Error::EmptySupport)?;
    let n = first.len();
    if n == 0 {
        return Err(Error::DegeneratePolytope("zero-dimensional ambient space".into()));
    }
    if let Some(bad) = points.iter().find(|p| p.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: bad.len(),
        });
    }
    let mut pts: Vec<Exponent> = points.to_vec();
    pts.sort();
    pts.dedup();
    let diffs: Vec<Vec<i64>> = pts[1..]
        .iter()
        .map(|p| p.iter().zip(&pts[0]).map(|(a, b)| a - b).collect())
        .collect();
    if rank(&diffs) < n {
        return Err(Error::DegeneratePolytope(format!(
            "convex hull of {} point(s) is not {n}-dimensional",
            pts.len()
        )));
    }

    match n {
        1 => {
            let lo = pts[0][0];
            let hi = pts[pts.len() - 1][0];
            Ok(IntegerPolytope {
                n,
                vertices: vec![vec![lo], vec![hi]],
                facets: vec![
                    Facet { normal: vec![-1], offset: lo },
                    Facet { normal: vec![1], offset: -hi },
                ],
            })
        }
        2 => {
            let hull = convex_hull_2d(&pts);
            let m = hull.len();
            let facets = (0..m)
                .map(|i| {
                    let p = &hull[i];
                    let q = &hull[(i + 1) % m];
                    let normal = primitive(vec![q[1] - p[1], p[0] - q[0]]);
                    let offset = -dot(&normal, p);
                    Facet { normal, offset }
                })
                .collect();
            Ok(IntegerPolytope { n, vertices: hull, facets })
        }
        _ => {
            let mut facets: BTreeSet<Facet> = BTreeSet::new();
            combinations(pts.len(), n, |idx| {
                let base = &pts[idx[0]];
                let others: Vec<&Exponent> = idx[1..].iter().map(|&i| &pts[i]).collect();
                let Some(normal) = hyperplane_normal(base, &others) else {
                    return;
                };
                let h = dot(&normal, base);
                let (mut below, mut above) = (false, false);
                for p in &pts {
                    let v = dot(&normal, p);
                    below |= v < h;
                    above |= v > h;
                    if below && above {
                        return;
                    }
                }
                if above {
                    let neg: Vec<i64> = normal.iter().map(|x| -x).collect();
                    facets.insert(Facet { normal: neg, offset: h });
                } else {
                    facets.insert(Facet { normal, offset: -h });
                }
            });
            let facets: Vec<Facet> = facets.into_iter().collect();
            let vertices = pts
                .iter()
                .filter(|p| {
                    let tight: Vec<Vec<i64>> = facets
                        .iter()
                        .filter(|f| f.value(p) == 0)
                        .map(|f| f.normal.clone())
                        .collect();
                    rank(&tight) == n
                })
                .cloned()
                .collect();
            Ok(IntegerPolytope { n, vertices, facets })
        }
    }
}

/// Every integer point of `p`, by bounding-box scan.
pub fn lattice_points(p: &IntegerPolytope) -> LatticeSupport {
    let (lo, hi) = p.bounding_box();
    let mut points = BTreeSet::new();
    let mut cur = lo.clone();
    'scan: loop {
        if p.contains(&cur) {
            points.insert(cur.clone());
        }
        let mut k = 0;
        loop {
            if k == p.n {
                break 'scan;
            }
            if cur[k] < hi[k] {
                cur[k] += 1;
                break;
            }
            cur[k] = lo[k];
            k += 1;
        }
    }
    LatticeSupport { n: p.n, points }
}

/// Whether every lattice point on every segment between two members of `s`
/// belongs to `s`.
pub fn is_zn_convex(s: &LatticeSupport) -> bool {
    let pts: Vec<&Exponent> = s.points.iter().collect();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let d: Vec<i64> = pts[j].iter().zip(pts[i]).map(|(a, b)| a - b).collect();
            let g = gcd_of(&d).abs();
            for k in 1..g {
                let q: Vec<i64> = pts[i].iter().zip(&d).map(|(a, dd)| a + dd / g * k).collect();
                if !s.contains(&q) {
                    return false;
                }
            }
        }
    }
    true
}

/// Partition of `s` into classes joined by unit lattice steps, ordered by
/// lexicographic minimum.
pub fn zn_connected_components(s: &LatticeSupport) -> Vec<LatticeSupport> {
    let mut seen: HashSet<&Exponent> = HashSet::new();
    let mut out = Vec::new();
    for start in &s.points {
        if seen.contains(start) {
            continue;
        }
        let mut comp = BTreeSet::new();
        let mut queue = VecDeque::from([start.clone()]);
        seen.insert(start);
        while let Some(p) = queue.pop_front() {
            for k in 0..s.n {
                for step in [-1, 1] {
                    let mut q = p.clone();
                    q[k] += step;
                    if let Some(member) = s.points.get(&q) {
                        if seen.insert(member) {
                            queue.push_back(q);
                        }
                    }
                }
            }
            comp.insert(p);
        }
        out.push(LatticeSupport { n: s.n, points: comp });
    }
    out
}

/// Whether `s` is a single unit-step connected class.
pub fn is_zn_connected(s: &LatticeSupport) -> bool {
    zn_connected_components(s).len() == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[&[i64]]) -> Vec<Exponent> {
        v.iter().map(|p| p.to_vec()).collect()
    }

    fn facet(normal: &[i64], offset: i64) -> Facet {
        Facet {
            normal: normal.to_vec(),
            offset,
        }
    }

    fn facet_set(p: &IntegerPolytope) -> BTreeSet<Facet> {
        p.facets().iter().cloned().collect()
    }

    #[test]
    fn unit_square_facets() {
        let p = facet_description(&pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])).unwrap();
        let want: BTreeSet<Facet> = [
            facet(&[-1, 0], 0),
            facet(&[0, -1], 0),
            facet(&[1, 0], -1),
            facet(&[0, 1], -1),
        ]
        .into_iter()
        .collect();
        assert_eq!(facet_set(&p), want);
        assert_eq!(p.vertices(), pts(&[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]).as_slice());
    }

    #[test]
    fn cross_polytope_facets() {
        let p = facet_description(&pts(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]])).unwrap();
        let want: BTreeSet<Facet> = [
            facet(&[1, 1], -1),
            facet(&[1, -1], -1),
            facet(&[-1, 1], -1),
            facet(&[-1, -1], -1),
        ]
        .into_iter()
        .collect();
        assert_eq!(facet_set(&p), want);
    }

    #[test]
    fn quadrilateral_facets_by_edge_cross_products() {
        let verts = pts(&[&[2, 0], &[3, 2], &[2, 3], &[0, 1]]);
        let p = facet_description(&verts).unwrap();
        // oracle: each edge's endpoints satisfy equality, the other vertices strict
        let want: BTreeSet<Facet> = [
            facet(&[2, -1], -4),
            facet(&[1, 1], -5),
            facet(&[-1, 1], -1),
            facet(&[-1, -2], 2),
        ]
        .into_iter()
        .collect();
        assert_eq!(facet_set(&p), want);
        for f in p.facets() {
            let on: Vec<_> = verts.iter().filter(|v| f.value(v) == 0).collect();
            assert_eq!(on.len(), 2);
            assert!(verts.iter().all(|v| f.value(v) <= 0));
        }
    }

    #[test]
    fn interior_and_collinear_points_are_not_vertices() {
        let p = facet_description(&pts(&[&[0, 0], &[2, 0], &[1, 0], &[0, 2], &[1, 1], &[0, 1]])).unwrap();
        assert_eq!(p.vertices().len(), 3);
        assert_eq!(p.facets().len(), 3);
    }

    #[test]
    fn degenerate_hull_rejected() {
        let err = facet_description(&pts(&[&[0, 0], &[1, 1], &[2, 2]])).unwrap_err();
        assert!(matches!(err, Error::DegeneratePolytope(_)));
        assert!(matches!(facet_description(&[]), Err(Error::EmptySupport)));
    }

    #[test]
    fn lattice_points_of_square_and_triangle() {
        let sq = facet_description(&pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])).unwrap();
        assert_eq!(
            lattice_points(&sq).to_vec(),
            pts(&[&[0, 0], &[0, 1], &[1, 0], &[1, 1]])
        );
        let tri = facet_description(&pts(&[&[0, 0], &[2, 0], &[0, 2]])).unwrap();
        assert_eq!(lattice_points(&tri).len(), 6);
    }

    #[test]
    fn octagon_lattice_count_matches_row_scan() {
        let verts = pts(&[
            &[2, 0],
            &[4, 0],
            &[6, 2],
            &[6, 4],
            &[4, 6],
            &[2, 6],
            &[0, 4],
            &[0, 2],
        ]);
        let p = facet_description(&verts).unwrap();
        let support = lattice_points(&p);
        // brute-force oracle: rows of the octagon are 3,5,7,7,7,5,3
        let mut rows = [0usize; 7];
        for s in support.points() {
            rows[s[1] as usize] += 1;
        }
        assert_eq!(rows, [3, 5, 7, 7, 7, 5, 3]);
        assert_eq!(support.len(), 37);
    }

    #[test]
    fn three_dimensional_cube_and_simplex() {
        let cube: Vec<Exponent> = (0..8).map(|i| vec![i & 1, (i >> 1) & 1, (i >> 2) & 1]).collect();
        let p = facet_description(&cube).unwrap();
        assert_eq!(p.facets().len(), 6);
        assert_eq!(p.vertices().len(), 8);
        assert_eq!(lattice_points(&p).len(), 8);

        let simplex = pts(&[&[0, 0, 0], &[3, 0, 0], &[0, 3, 0], &[0, 0, 3], &[1, 1, 1]]);
        let p = facet_description(&simplex).unwrap();
        assert_eq!(p.vertices().len(), 4);
        assert!(p.facets().contains(&facet(&[1, 1, 1], -3)));
        // C(3 + 3, 3)
        assert_eq!(lattice_points(&p).len(), 20);
    }

    #[test]
    fn zn_convexity() {
        let s = LatticeSupport::new(2, pts(&[&[0, 0], &[2, 0]])).unwrap();
        assert!(!is_zn_convex(&s));
        let s = LatticeSupport::new(2, pts(&[&[1, 0], &[0, 1], &[1, 1], &[2, 2]])).unwrap();
        assert!(is_zn_convex(&s));
        let s = LatticeSupport::new(2, pts(&[&[7, -3]])).unwrap();
        assert!(is_zn_convex(&s));
    }

    #[test]
    fn zn_components() {
        let s = LatticeSupport::new(2, pts(&[&[1, 0], &[0, 1], &[1, 1], &[2, 2]])).unwrap();
        let comps = zn_connected_components(&s);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].to_vec(), pts(&[&[0, 1], &[1, 0], &[1, 1]]));
        assert_eq!(comps[1].to_vec(), pts(&[&[2, 2]]));

        let s = LatticeSupport::new(2, pts(&[&[0, 0], &[5, 5]])).unwrap();
        assert_eq!(zn_connected_components(&s).len(), 2);

        let quad = facet_description(&pts(&[&[2, 0], &[3, 2], &[2, 3], &[0, 1]])).unwrap();
        assert!(is_zn_connected(&lattice_points(&quad)));
    }

    #[test]
    fn canonical_translate_puts_box_corner_at_origin() {
        let p = facet_description(&pts(&[&[1, 0], &[0, 1], &[-1, 1], &[0, -1]])).unwrap();
        let t = p.canonical_translate();
        let (lo, hi) = t.bounding_box();
        assert_eq!(lo, vec![0, 0]);
        assert_eq!(hi, vec![2, 2]);
        assert!(t.contains(&[1, 1]));
        assert!(t.is_vertex(&[0, 2]));
    }

    #[test]
    fn determinant_and_integer_solve() {
        assert_eq!(integer_determinant(&[vec![1, 1], vec![-1, 2]]), BigInt::from(3));
        assert_eq!(integer_determinant(&[vec![2, 4], vec![1, 2]]), BigInt::zero());
        let v = vec![vec![1, 1], vec![-1, 2]];
        assert_eq!(solve_integer_combination(&v, &[2, -1]), Some(vec![1, -1]));
        assert_eq!(solve_integer_combination(&v, &[1, 0]), None);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn point_set() -> impl Strategy<Value = Vec<Exponent>> {
            prop::collection::vec(prop::collection::vec(-6i64..7, 2), 3..12)
        }

        proptest! {
            #[test]
            fn lattice_points_contain_inputs_and_respect_facets(points in point_set()) {
                let Ok(p) = facet_description(&points) else { return Ok(()); };
                let support = lattice_points(&p);
                for v in &points {
                    prop_assert!(support.contains(v));
                }
                for f in p.facets() {
                    prop_assert!(support.points().all(|s| f.value(s) <= 0));
                    let tight = p.vertices().iter().filter(|v| f.value(v) == 0).count();
                    prop_assert!(tight >= 2);
                    prop_assert_eq!(gcd_of(&f.normal).abs(), 1);
                }
                prop_assert!(is_zn_convex(&support));
            }

            #[test]
            fn components_partition_the_set(points in prop::collection::vec(prop::collection::vec(-4i64..5, 2), 1..15)) {
                let s = LatticeSupport::new(2, points).unwrap();
                let comps = zn_connected_components(&s);
                let total: usize = comps.iter().map(LatticeSupport::len).sum();
                prop_assert_eq!(total, s.len());
                let mut union = BTreeSet::new();
                for c in &comps {
                    for p in c.points() {
                        prop_assert!(union.insert(p.clone()));
                    }
                }
                prop_assert_eq!(union.len(), s.len());
            }
        }
    }
}
