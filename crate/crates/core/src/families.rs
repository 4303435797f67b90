//! Named polynomial families: Appell `F1` and Gauss `2F1` polynomials, the
//! bivariate Chebyshev Toeplitz minor and the ball-biorthogonal basis.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::{rational_from_i64, rational_to_f64, Exponent, LaurentPolynomial, Rational};
use crate::roots::univariate_roots;

/// Rising factorial `(q)_k = q (q + 1) ... (q + k - 1)`.
pub fn pochhammer(q: &Rational, k: u64) -> Rational {
    let mut acc = Rational::one();
    let mut x = q.clone();
    for _ in 0..k {
        acc *= &x;
        x += Rational::one();
    }
    acc
}

fn factorial(k: u64) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * i)
}

/// `Some(m)` when `q = -m` for a nonnegative integer `m`.
fn nonpositive_integer(q: &Rational) -> Option<u64> {
    if q.is_integer() && !q.is_positive() {
        (-q.to_integer()).to_u64()
    } else {
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F1Parameters {
    pub a: Rational,
    pub b1: Rational,
    pub b2: Rational,
    pub c: Rational,
}

impl F1Parameters {
    pub fn from_ints(a: i64, b1: i64, b2: i64, c: i64) -> Self {
        Self {
            a: rational_from_i64(a),
            b1: rational_from_i64(b1),
            b2: rational_from_i64(b2),
            c: rational_from_i64(c),
        }
    }
}

/// Appell `F1(a, b1, b2; c; x, y) = sum (a)_{m+n} (b1)_m (b2)_n /
/// ((c)_{m+n} m! n!) x^m y^n`, which must terminate.
pub fn appell_f1(params: &F1Parameters) -> Result<LaurentPolynomial> {
    let total = nonpositive_integer(&params.a);
    let bound_m = nonpositive_integer(&params.b1).into_iter().chain(total).min();
    let bound_n = nonpositive_integer(&params.b2).into_iter().chain(total).min();
    let (Some(bm), Some(bn)) = (bound_m, bound_n) else {
        return Err(Error::Domain(
            "F1 series does not terminate: each of m, n needs a nonpositive integer bound".into(),
        ));
    };
    let bt = total.unwrap_or(bm + bn).min(bm + bn);
    let mut terms = Vec::new();
    for m in 0..=bm {
        for n in 0..=bn.min(bt - m.min(bt)) {
            if m + n > bt {
                continue;
            }
            let num = pochhammer(&params.a, m + n) * pochhammer(&params.b1, m) * pochhammer(&params.b2, n);
            if num.is_zero() {
                continue;
            }
            let den = pochhammer(&params.c, m + n) * Rational::from_integer(factorial(m) * factorial(n));
            if den.is_zero() {
                return Err(Error::Pole(format!("(c)_{} vanishes inside the support", m + n)));
            }
            terms.push((vec![m as i64, n as i64], num / den));
        }
    }
    LaurentPolynomial::from_terms(2, terms)
}

/// Ascending coefficients `(a)_k (b)_k / ((c)_k k!)` of `2F1(a, b; c; x)`
/// for a negative integer `a`.
pub fn gauss_2f1_polynomial(a: i64, b: &Rational, c: &Rational) -> Result<Vec<Rational>> {
    if a >= 0 {
        return Err(Error::Domain(format!("2F1 polynomial needs a negative integer a, got {a}")));
    }
    let degree = (-a) as u64;
    let a = rational_from_i64(a);
    let mut coeffs = Vec::with_capacity(degree as usize + 1);
    let mut term = Rational::one();
    coeffs.push(term.clone());
    for k in 0..degree {
        let ck = c + rational_from_i64(k as i64);
        if ck.is_zero() {
            return Err(Error::Pole(format!("(c)_{} vanishes", k + 1)));
        }
        let ak = &a + rational_from_i64(k as i64);
        let bk = b + rational_from_i64(k as i64);
        term = term * ak * bk / (ck * rational_from_i64(k as i64 + 1));
        coeffs.push(term.clone());
    }
    Ok(coeffs)
}

/// Finite arithmetic progression `start, start + step, ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Progression {
    pub start: Rational,
    pub step: Rational,
    pub count: usize,
}

impl Progression {
    pub fn values(&self) -> Vec<Rational> {
        (0..self.count)
            .map(|i| &self.start + &self.step * rational_from_i64(i as i64))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AsterPoint {
    pub b: Rational,
    pub c: Rational,
    pub root: Complex64,
}

/// Roots of `2F1(a, b; c; x)` over the grid `b_range x c_range`. Instances
/// that fail are logged and skipped.
pub fn aster_scatter(a: i64, b_range: &Progression, c_range: &Progression) -> Vec<AsterPoint> {
    let bs = b_range.values();
    let cs = c_range.values();
    let cells: Vec<(&Rational, &Rational)> = bs.iter().flat_map(|b| cs.iter().map(move |c| (b, c))).collect();
    cells
        .par_iter()
        .map(|(b, c)| {
            let roots = gauss_2f1_polynomial(a, b, c).and_then(|coeffs| {
                let z: Vec<Complex64> = coeffs.iter().map(|q| Complex64::new(rational_to_f64(q), 0.0)).collect();
                univariate_roots(&z)
            });
            match roots {
                Ok(roots) => roots
                    .into_iter()
                    .map(|root| AsterPoint {
                        b: (*b).clone(),
                        c: (*c).clone(),
                        root,
                    })
                    .collect(),
                Err(e) => {
                    log::warn!("skipping 2F1({a}, {b}; {c}): {e}");
                    Vec::new()
                }
            }
        })
        .flatten()
        .collect()
}

/// Which `k` columns of the `k x (k+1)` Toeplitz matrix form the minor.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MinorConvention {
    /// Columns `1..=k`.
    #[default]
    First,
    /// Columns `2..=k+1`.
    Last,
}

/// Determinant of `k` columns of the `k x (k+1)` banded Toeplitz matrix
/// whose row `i` has `1, x, y, 1` in columns `i-1, i, i+1, i+2`.
pub fn toeplitz_chebyshev(k: usize, convention: MinorConvention) -> Result<LaurentPolynomial> {
    if k == 0 {
        return Err(Error::Domain("Toeplitz minor needs k >= 1".into()));
    }
    if k > 60 {
        return Err(Error::Domain(format!("Toeplitz minor size {k} too large")));
    }
    let offset = match convention {
        MinorConvention::First => 0,
        MinorConvention::Last => 1,
    };
    let x = LaurentPolynomial::variable(2, 0);
    let y = LaurentPolynomial::variable(2, 1);
    let one = LaurentPolynomial::constant(2, Rational::one());
    let entry = |row: usize, col: usize| -> Option<&LaurentPolynomial> {
        let d = col as i64 - row as i64;
        match d {
            -1 | 2 => Some(&one),
            0 => Some(&x),
            1 => Some(&y),
            _ => None,
        }
    };
    // Row-by-row expansion memoized on the set of columns already used.
    let mut states: HashMap<u64, LaurentPolynomial> = HashMap::from([(0u64, one.clone())]);
    for row in 0..k {
        let mut next: HashMap<u64, LaurentPolynomial> = HashMap::new();
        for (mask, acc) in &states {
            for local in 0..k {
                if mask & (1 << local) != 0 {
                    continue;
                }
                let Some(e) = entry(row, local + offset) else {
                    continue;
                };
                let inversions = (mask >> (local + 1)).count_ones();
                let mut term = acc * e;
                if inversions % 2 == 1 {
                    term = -&term;
                }
                let slot = next.entry(mask | (1 << local)).or_insert_with(|| LaurentPolynomial::zero(2));
                *slot = &*slot + &term;
            }
        }
        states = next;
    }
    Ok(states.remove(&((1u64 << k) - 1)).unwrap_or_else(|| LaurentPolynomial::zero(2)))
}

/// Monomial map of the Chebyshev coordinates `xi = x y`, `eta = y^2 / x`.
pub const CHEBYSHEV_COORDINATES: [[i64; 2]; 2] = [[1, 1], [-1, 2]];

fn multinomial(parts: &[i64]) -> BigInt {
    let total: i64 = parts.iter().sum();
    let mut acc = factorial(total as u64);
    for &p in parts {
        acc /= factorial(p as u64);
    }
    acc
}

fn binomial_rational(lambda: &Rational, k: u64) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc = acc * (lambda - rational_from_i64(i as i64)) / rational_from_i64(i as i64 + 1);
    }
    acc
}

/// `V_alpha(x)`: the `a^alpha` coefficient of
/// `(1 - 2<a, x> + |a|^2)^{(1-n)/2}`.
pub fn biorthogonal_v(alpha: &[i64]) -> Result<LaurentPolynomial> {
    let n = alpha.len();
    if n < 2 {
        return Err(Error::Domain("biorthogonal family needs n >= 2".into()));
    }
    if alpha.iter().any(|&a| a < 0) {
        return Err(Error::Domain("alpha must be nonnegative".into()));
    }
    let lambda = Rational::new(BigInt::from(1 - n as i64), BigInt::from(2));
    let mut terms = Vec::new();
    let mut beta: Exponent = alpha.iter().map(|a| a % 2).collect();
    // enumerate beta <= alpha with beta = alpha (mod 2)
    loop {
        let gamma: Vec<i64> = alpha.iter().zip(&beta).map(|(a, b)| (a - b) / 2).collect();
        let i: i64 = beta.iter().sum();
        let g: i64 = gamma.iter().sum();
        let k = (i + g) as u64;
        let coeff = binomial_rational(&lambda, k)
            * Rational::from_integer(
                multinomial(&[i, g]) * BigInt::from(-2).pow(i as u32) * multinomial(&beta) * multinomial(&gamma),
            );
        terms.push((beta.clone(), coeff));
        let mut j = 0;
        loop {
            if j == n {
                return LaurentPolynomial::from_terms(n, terms);
            }
            if beta[j] + 2 <= alpha[j] {
                beta[j] += 2;
                break;
            }
            beta[j] = alpha[j] % 2;
            j += 1;
        }
    }
}

/// `V_alpha` with the monomial factor `x^(alpha mod 2)` removed and
/// `xi_j = x_j^2` substituted.
pub fn biorthogonal_vtilde(alpha: &[i64]) -> Result<LaurentPolynomial> {
    let v = biorthogonal_v(alpha)?;
    let n = alpha.len();
    let terms = v.terms().map(|(e, c)| {
        let reduced: Exponent = e.iter().zip(alpha).map(|(b, a)| (b - a % 2) / 2).collect();
        (reduced, c.clone())
    });
    LaurentPolynomial::from_terms(n, terms.collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{facet_description, lattice_points};

    fn r(v: i64) -> Rational {
        rational_from_i64(v)
    }

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    fn poly(terms: &[(&[i64], i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_int_terms(2, terms.iter().map(|(e, c)| (e.to_vec(), *c))).unwrap()
    }

    fn is_dense(p: &LaurentPolynomial) -> bool {
        let np = p.newton_polytope().unwrap();
        lattice_points(&np).points().all(|s| !p.coefficient(s).is_zero())
    }

    #[test]
    fn f1_linear_instance() {
        let p = appell_f1(&F1Parameters::from_ints(-1, -1, -1, 1)).unwrap();
        assert_eq!(p, poly(&[(&[0, 0], 1), (&[1, 0], 1), (&[0, 1], 1)]));
    }

    #[test]
    fn f1_pentagon_and_triangle() {
        let p = appell_f1(&F1Parameters::from_ints(-5, -4, -4, 3)).unwrap();
        assert_eq!(p.len(), 19);
        let np = p.newton_polytope().unwrap();
        assert_eq!(np.vertices().len(), 5);
        assert!(np.is_vertex(&[4, 1]) && np.is_vertex(&[1, 4]));

        let t = appell_f1(&F1Parameters::from_ints(-4, 5, -7, 9)).unwrap();
        let nt = t.newton_polytope().unwrap();
        assert_eq!(nt.vertices(), &[vec![0, 0], vec![4, 0], vec![0, 4]]);
        assert_eq!(t.len(), 15);
    }

    #[test]
    fn f1_errors() {
        assert!(appell_f1(&F1Parameters::from_ints(2, 3, -1, 1)).is_err());
        assert!(matches!(
            appell_f1(&F1Parameters::from_ints(-3, -3, -3, -1)),
            Err(Error::Pole(_))
        ));
    }

    #[test]
    fn f1_pentagon_cardinality() {
        // oracle: count {m,n >= 0, m <= |b1|, n <= |b2|, m+n <= |a|} directly
        let mut checked = 0;
        for a in -9..=-1i64 {
            for b1 in -6..=-1i64 {
                for b2 in -6..=-1i64 {
                    if a <= b1 + b2 || checked >= 20 || (a + b1 + b2) % 3 != 0 {
                        continue;
                    }
                    let p = appell_f1(&F1Parameters::from_ints(a, b1, b2, 3)).unwrap();
                    let mut count = 0;
                    for m in 0..=-b1 {
                        for n in 0..=-b2 {
                            if m + n <= -a {
                                count += 1;
                            }
                        }
                    }
                    assert_eq!(p.len(), count, "F1({a},{b1},{b2},3)");
                    checked += 1;
                }
            }
        }
        assert_eq!(checked, 20);
    }

    #[test]
    fn gauss_small_cases() {
        let b = q(3, 7);
        let c = q(-5, 2);
        assert_eq!(gauss_2f1_polynomial(-1, &b, &c).unwrap(), vec![r(1), -(&b / &c)]);
        assert_eq!(gauss_2f1_polynomial(-2, &r(1), &r(1)).unwrap(), vec![r(1), r(-2), r(1)]);
        assert!(gauss_2f1_polynomial(-3, &r(1), &r(-1)).is_err());
        assert!(gauss_2f1_polynomial(2, &r(1), &r(1)).is_err());
    }

    #[test]
    fn gauss_b_equals_c_is_binomial() {
        for (num, den) in [(1, 10), (7, 3), (-13, 4), (1001, 1000)] {
            let b = q(num, den);
            let coeffs = gauss_2f1_polynomial(-12, &b, &b).unwrap();
            let want = LaurentPolynomial::from_int_terms(1, [(vec![0], 1), (vec![1], -1)]).unwrap().pow(12);
            for (k, c) in coeffs.iter().enumerate() {
                assert_eq!(c, &want.coefficient(&[k as i64]));
            }
        }
    }

    #[test]
    fn aster_counts_and_linear_roots() {
        let b = Progression { start: q(1, 10), step: q(1, 2), count: 3 };
        let c = Progression { start: q(3, 10), step: q(7, 10), count: 4 };
        let pts = aster_scatter(-12, &b, &c);
        assert_eq!(pts.len(), 12 * 12);
        assert!(pts.iter().all(|p| p.root.re.is_finite() && p.root.im.is_finite()));

        for p in aster_scatter(-1, &b, &c) {
            let want = rational_to_f64(&(&p.c / &p.b));
            assert!((p.root - Complex64::new(want, 0.0)).norm() <= 1e-12 * want.abs().max(1.0));
        }
        let empty = Progression { start: r(1), step: r(1), count: 0 };
        assert!(aster_scatter(-12, &empty, &c).is_empty());
    }

    #[test]
    fn toeplitz_small_minors() {
        assert_eq!(toeplitz_chebyshev(1, MinorConvention::First).unwrap(), poly(&[(&[1, 0], 1)]));
        assert_eq!(
            toeplitz_chebyshev(2, MinorConvention::First).unwrap(),
            poly(&[(&[2, 0], 1), (&[0, 1], -1)])
        );
        assert_eq!(
            toeplitz_chebyshev(3, MinorConvention::First).unwrap(),
            poly(&[(&[3, 0], 1), (&[1, 1], -2), (&[0, 0], 1)])
        );
        // k = 2, columns 2..3: [[y, 1], [x, y]]
        assert_eq!(
            toeplitz_chebyshev(2, MinorConvention::Last).unwrap(),
            poly(&[(&[0, 2], 1), (&[1, 0], -1)])
        );
    }

    /// Plain permutation expansion as an oracle.
    fn naive_det(k: usize, offset: usize) -> LaurentPolynomial {
        let entry = |row: usize, col: usize| -> LaurentPolynomial {
            match col as i64 - row as i64 {
                -1 | 2 => poly(&[(&[0, 0], 1)]),
                0 => poly(&[(&[1, 0], 1)]),
                1 => poly(&[(&[0, 1], 1)]),
                _ => LaurentPolynomial::zero(2),
            }
        };
        let mut perm: Vec<usize> = (0..k).collect();
        let mut total = LaurentPolynomial::zero(2);
        fn heap(
            n: usize,
            perm: &mut Vec<usize>,
            f: &mut dyn FnMut(&[usize]),
        ) {
            if n == 1 {
                f(perm);
                return;
            }
            for i in 0..n {
                heap(n - 1, perm, f);
                if n.is_multiple_of(2) {
                    perm.swap(i, n - 1);
                } else {
                    perm.swap(0, n - 1);
                }
            }
        }
        heap(k, &mut perm, &mut |p| {
            let inv = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            let mut term = poly(&[(&[0, 0], if inv % 2 == 0 { 1 } else { -1 })]);
            for (row, &col) in p.iter().enumerate() {
                term = &term * &entry(row, col + offset);
            }
            total = &total + &term;
        });
        total
    }

    #[test]
    fn toeplitz_matches_permutation_expansion() {
        for k in 1..=7 {
            assert_eq!(toeplitz_chebyshev(k, MinorConvention::First).unwrap(), naive_det(k, 0));
            assert_eq!(toeplitz_chebyshev(k, MinorConvention::Last).unwrap(), naive_det(k, 1));
        }
    }

    #[test]
    fn toeplitz_dense_in_chebyshev_coordinates() {
        let v: Vec<Vec<i64>> = CHEBYSHEV_COORDINATES.iter().map(|r| r.to_vec()).collect();
        for k in 3..=6 {
            for conv in [MinorConvention::First, MinorConvention::Last] {
                let p = toeplitz_chebyshev(k, conv).unwrap();
                let rewritten = p.rewrite_in_monomial_coordinates(&v).unwrap();
                assert!(is_dense(&rewritten), "k = {k}, {conv:?}: {rewritten}");
            }
        }
    }

    #[test]
    fn vtilde_low_orders() {
        assert_eq!(biorthogonal_v(&[1, 0]).unwrap(), poly(&[(&[1, 0], 1)]));
        assert_eq!(biorthogonal_vtilde(&[1, 0]).unwrap(), poly(&[(&[0, 0], 1)]));
        assert_eq!(biorthogonal_vtilde(&[0, 0]).unwrap(), poly(&[(&[0, 0], 1)]));
        assert_eq!(biorthogonal_vtilde(&[0, 0, 0]).unwrap().dim(), 3);
    }

    /// Series oracle: expand `(1 + u)^lambda` by repeated multiplication of
    /// truncated polynomials in (a1, a2, x1, x2) and read off `a^alpha`.
    fn vtilde_series_oracle(alpha: [i64; 2]) -> LaurentPolynomial {
        let deg = alpha[0] + alpha[1];
        let lambda = q(-1, 2);
        // variables (a1, a2, x1, x2)
        let mono = |e: [i64; 4], c: Rational| LaurentPolynomial::monomial(e.to_vec(), c);
        let u = &(&mono([1, 0, 1, 0], r(-2)) + &mono([0, 1, 0, 1], r(-2)))
            + &(&mono([2, 0, 0, 0], r(1)) + &mono([0, 2, 0, 0], r(1)));
        let truncate = |p: &LaurentPolynomial| {
            LaurentPolynomial::from_terms(
                4,
                p.terms().filter(|(e, _)| e[0] <= alpha[0] && e[1] <= alpha[1]).map(|(e, c)| (e.clone(), c.clone())).collect::<Vec<_>>(),
            )
            .unwrap()
        };
        let mut sum = LaurentPolynomial::constant(4, r(1));
        let mut power = LaurentPolynomial::constant(4, r(1));
        let mut binom = r(1);
        for k in 1..=deg {
            power = truncate(&(&power * &u));
            binom = binom * (&lambda - r(k - 1)) / r(k);
            sum = &sum + &power.scale(&binom);
        }
        let v = LaurentPolynomial::from_terms(
            2,
            sum.terms()
                .filter(|(e, _)| e[0] == alpha[0] && e[1] == alpha[1])
                .map(|(e, c)| (vec![(e[2] - alpha[0] % 2) / 2, (e[3] - alpha[1] % 2) / 2], c.clone()))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        v
    }

    #[test]
    fn vtilde_matches_series_expansion() {
        for alpha in [[2, 2], [3, 1], [4, 2], [2, 5]] {
            assert_eq!(biorthogonal_vtilde(&alpha).unwrap(), vtilde_series_oracle(alpha), "{alpha:?}");
        }
    }

    #[test]
    fn vtilde_6_10_is_dense_rectangle() {
        let p = biorthogonal_vtilde(&[6, 10]).unwrap();
        let np = p.newton_polytope().unwrap();
        let (lo, hi) = np.bounding_box();
        assert_eq!((lo, hi), (vec![0, 0], vec![3, 5]));
        assert_eq!(np.vertices().len(), 4);
        assert_eq!(p.len(), 24);
        assert!(is_dense(&p));
    }

    #[test]
    fn vtilde_three_variables_dense() {
        let p = biorthogonal_vtilde(&[2, 4, 2]).unwrap();
        assert_eq!(p.len(), 2 * 3 * 2);
        let np = facet_description(&p.support()).unwrap();
        assert_eq!(lattice_points(&np).len(), p.len());
    }
}
