//! Exact multivariate Laurent polynomials over the rationals, plus a floating
//! complex-coefficient twin used by the numerical amoeba code.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vector, so iteration (and
//! therefore floating-point summation in [`LaurentPolynomial::evaluate`]) runs
//! in lexicographic exponent order.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{self, IntegerPolytope};

pub type Rational = BigRational;
pub type Exponent = Vec<i64>;

/// Lossy conversion used wherever exact coefficients feed the numerics.
pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn rational_from_i64(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub(crate) fn rational_pow(base: &Rational, exp: i64) -> Result<Rational> {
    if exp >= 0 {
        Ok(num_traits::pow(base.clone(), exp as usize))
    } else if base.is_zero() {
        Err(Error::Domain("zero raised to a negative power".into()))
    } else {
        Ok(num_traits::pow(base.recip(), exp.unsigned_abs() as usize))
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

fn complex_monomial(exp: &[i64], x: &[Complex64]) -> Result<Complex64> {
    let mut acc = Complex64::new(1.0, 0.0);
    for (&e, &xi) in exp.iter().zip(x) {
        if e < 0 && xi == Complex64::zero() {
            return Err(Error::Domain(
                "zero coordinate under a negative exponent".into(),
            ));
        }
        if e != 0 {
            acc *= xi.powi(e as i32);
        }
    }
    Ok(acc)
}

/// Laurent polynomial in `n` variables with exact rational coefficients.
///
/// No zero coefficient is ever stored, so two polynomials are equal exactly
/// when their term maps are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    n: usize,
    terms: BTreeMap<Exponent, Rational>,
}

impl LaurentPolynomial {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        let mut p = Self::zero(n);
        p.add_term(vec![0; n], c);
        p
    }

    pub fn monomial(exp: Exponent, c: Rational) -> Self {
        let mut p = Self::zero(exp.len());
        p.add_term(exp, c);
        p
    }

    /// The variable `x_j` (zero-based) in `n` variables.
    pub fn variable(n: usize, j: usize) -> Self {
        let mut exp = vec![0; n];
        exp[j] = 1;
        Self::monomial(exp, Rational::one())
    }

    /// Builds a polynomial from terms, summing repeated exponents.
    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, Rational)>,
    {
        let mut p = Self::zero(n);
        for (exp, c) in terms {
            check_dim(n, exp.len())?;
            p.add_term(exp, c);
        }
        Ok(p)
    }

    /// Convenience constructor for integer coefficients.
    pub fn from_int_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, i64)>,
    {
        Self::from_terms(n, terms.into_iter().map(|(e, c)| (e, rational_from_i64(c))))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exp: &[i64]) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> Vec<Exponent> {
        self.terms.keys().cloned().collect()
    }

    pub fn add_term(&mut self, exp: Exponent, c: Rational) {
        debug_assert_eq!(exp.len(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero(self.n);
        }
        Self {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    /// Multiplication by the monomial `x^a`.
    pub fn shift(&self, a: &[i64]) -> Self {
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(a).map(|(x, y)| x + y).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.n, Rational::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Componentwise minimum of the exponents. `None` for the zero polynomial.
    pub fn min_exponents(&self) -> Option<Exponent> {
        fold_exponents(self.terms.keys(), i64::min)
    }

    pub fn max_exponents(&self) -> Option<Exponent> {
        fold_exponents(self.terms.keys(), i64::max)
    }

    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// `sum a_s x^s`, accumulated in lexicographic exponent order.
    pub fn evaluate(&self, x: &[Complex64]) -> Result<Complex64> {
        check_dim(self.n, x.len())?;
        let mut acc = Complex64::zero();
        for (e, c) in &self.terms {
            acc += complex_monomial(e, x)? * rational_to_f64(c);
        }
        Ok(acc)
    }

    /// Exact evaluation at a rational point.
    pub fn eval_rational(&self, s: &[Rational]) -> Result<Rational> {
        check_dim(self.n, s.len())?;
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (&k, v) in e.iter().zip(s) {
                m *= rational_pow(v, k)?;
            }
            acc += m;
        }
        Ok(acc)
    }

    pub fn to_complex(&self) -> ComplexPolynomial {
        ComplexPolynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), Complex64::new(rational_to_f64(c), 0.0)))
                .collect(),
        }
    }

    /// `x^a * p(t_1 x^{v_1}, ..., t_n x^{v_n})^ell` for rational `t`.
    ///
    /// `v` is given by rows; row `i` is the exponent vector substituted for
    /// variable `i`. Substituting by `v` and then by `w` equals substituting
    /// once by the matrix product `v * w`.
    pub fn monomial_substitution(
        &self,
        v: &[Vec<i64>],
        t: &[Rational],
        a: &[i64],
        ell: u32,
    ) -> Result<Self> {
        validate_transform(self.n, v, t.len(), a, ell)?;
        if t.iter().any(Zero::is_zero) {
            return Err(Error::InvalidTransform("t must lie in the torus".into()));
        }
        let mut out = Self::zero(self.n);
        for (s, c) in &self.terms {
            let mut coeff = c.clone();
            for (ti, &si) in t.iter().zip(s) {
                coeff *= rational_pow(ti, si)?;
            }
            out.add_term(apply_exponent_map(v, s), coeff);
        }
        Ok(out.pow(ell).shift(a))
    }

    /// Same transformation with complex `t`; the result is inexact.
    pub fn monomial_substitution_complex(
        &self,
        v: &[Vec<i64>],
        t: &[Complex64],
        a: &[i64],
        ell: u32,
    ) -> Result<ComplexPolynomial> {
        self.to_complex().monomial_substitution(v, t, a, ell)
    }

    /// Rewrites the polynomial in the monomial coordinates `xi_i = x^{v_i}`.
    ///
    /// The lexicographically smallest exponent is divided out first, so the
    /// result is `P~` with `p = x^{s0} * P~(x^{v_1}, ..., x^{v_n})`, translated
    /// to have nonnegative exponents. Fails if some exponent difference is not
    /// an integer combination of the rows of `v`.
    pub fn rewrite_in_monomial_coordinates(&self, v: &[Vec<i64>]) -> Result<Self> {
        validate_transform(self.n, v, self.n, &vec![0; self.n], 1)?;
        let base = self.terms.keys().next().ok_or(Error::EmptySupport)?.clone();
        let mut out = Self::zero(self.n);
        for (s, c) in &self.terms {
            let diff: Vec<i64> = s.iter().zip(&base).map(|(x, y)| x - y).collect();
            let m = lattice::solve_integer_combination(v, &diff).ok_or_else(|| {
                Error::InvalidTransform(format!(
                    "exponent difference {diff:?} is outside the lattice spanned by v"
                ))
            })?;
            out.add_term(m, c.clone());
        }
        let low = out.min_exponents().unwrap_or_default();
        Ok(out.shift(&low.iter().map(|x| -x).collect::<Vec<_>>()))
    }

    /// Coefficientwise `r`-th power.
    pub fn hadamard_power(&self, r: f64) -> Result<HadamardPower> {
        if !r.is_finite() {
            return Err(Error::Domain(format!("non-finite Hadamard order {r}")));
        }
        if r >= 0.0 && r.fract() == 0.0 && r <= u32::MAX as f64 {
            return Ok(HadamardPower::Exact(self.hadamard_power_exact(r as u32)));
        }
        let integral = r.fract() == 0.0;
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let v = rational_to_f64(c);
            let powered = if integral {
                v.powi(r as i32)
            } else if c.is_positive() {
                v.powf(r)
            } else {
                return Err(Error::Domain(format!(
                    "coefficient {c} is not positive; fractional Hadamard order {r} is undefined"
                )));
            };
            terms.insert(e.clone(), Complex64::new(powered, 0.0));
        }
        Ok(HadamardPower::Float(ComplexPolynomial { n: self.n, terms }))
    }

    pub fn hadamard_power_exact(&self, k: u32) -> Self {
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), num_traits::pow(c.clone(), k as usize)))
                .collect(),
        }
    }

    pub fn newton_polytope(&self) -> Result<IntegerPolytope> {
        if self.is_zero() {
            return Err(Error::EmptySupport);
        }
        lattice::facet_description(&self.support())
    }

    /// The positive rational multiple with coprime integer coefficients:
    /// multiply by the LCM of the denominators, divide by the GCD of the
    /// numerators.
    pub fn primitive_integer_multiple(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lcm = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let gcd = self
            .terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(&(c.numer() * &lcm / c.denom())));
        self.scale(&Rational::new(lcm, gcd))
    }

    /// Scales so the coefficient at the lexicographically smallest exponent is 1.
    pub fn normalized(&self) -> Self {
        match self.terms.values().next() {
            Some(c) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Whether `self = lambda * other` for some nonzero rational `lambda`.
    pub fn equals_up_to_scalar(&self, other: &Self) -> bool {
        if self.n != other.n || self.len() != other.len() {
            return false;
        }
        if self.is_zero() {
            return true;
        }
        self.normalized() == other.normalized()
    }

    /// Leading coefficient in graded-lexicographic order (highest total
    /// degree, ties broken lexicographically from the top).
    pub fn grlex_leading(&self) -> Option<(&Exponent, &Rational)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| grlex_cmp(a, b))
    }

    /// Terms listed from the grlex-largest monomial down.
    pub fn grlex_terms(&self) -> Vec<(&Exponent, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| grlex_cmp(b, a));
        v
    }
}

pub(crate) fn grlex_cmp(a: &[i64], b: &[i64]) -> std::cmp::Ordering {
    let da: i64 = a.iter().sum();
    let db: i64 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

fn fold_exponents<'a, I>(mut it: I, f: fn(i64, i64) -> i64) -> Option<Exponent>
where
    I: Iterator<Item = &'a Exponent>,
{
    let first = it.next()?.clone();
    Some(it.fold(first, |acc, e| acc.iter().zip(e).map(|(&x, &y)| f(x, y)).collect()))
}

fn validate_transform(n: usize, v: &[Vec<i64>], t_len: usize, a: &[i64], ell: u32) -> Result<()> {
    check_dim(n, v.len())?;
    check_dim(n, t_len)?;
    check_dim(n, a.len())?;
    for row in v {
        check_dim(n, row.len())?;
    }
    if ell == 0 {
        return Err(Error::InvalidTransform("ell must be positive".into()));
    }
    if lattice::integer_determinant(v).is_zero() {
        return Err(Error::InvalidTransform("singular exponent matrix".into()));
    }
    Ok(())
}

fn apply_exponent_map(v: &[Vec<i64>], s: &[i64]) -> Exponent {
    let n = s.len();
    (0..n)
        .map(|k| s.iter().zip(v).map(|(si, row)| si * row[k]).sum())
        .collect()
}

impl<'a> Add<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        assert_eq!(self.n, rhs.n, "dimension mismatch in addition");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl<'a> Mul<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        assert_eq!(self.n, rhs.n, "dimension mismatch in multiplication");
        let mut out = LaurentPolynomial::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

fn variable_name(n: usize, j: usize) -> String {
    if n <= 3 {
        ["x", "y", "z"][j].to_string()
    } else {
        format!("x{}", j + 1)
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, n: usize, e: &[i64]) -> fmt::Result {
    let mut first = true;
    for (j, &k) in e.iter().enumerate() {
        if k == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "{}", variable_name(n, j))?;
        if k != 1 {
            write!(f, "^{k}")?;
        }
    }
    Ok(())
}

/// Terms in grlex-ascending order, e.g. `3*x + 12*x*y + 2*y^2`.
impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| grlex_cmp(a, b));
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let is_const = e.iter().all(|&k| k == 0);
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if is_const {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, self.n, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPolynomial[n={}]({})", self.n, self)
    }
}

/// Result of [`LaurentPolynomial::hadamard_power`].
#[derive(Clone, Debug)]
pub enum HadamardPower {
    Exact(LaurentPolynomial),
    Float(ComplexPolynomial),
}

impl HadamardPower {
    pub fn to_complex(&self) -> ComplexPolynomial {
        match self {
            HadamardPower::Exact(p) => p.to_complex(),
            HadamardPower::Float(p) => p.clone(),
        }
    }

    pub fn exact(&self) -> Option<&LaurentPolynomial> {
        match self {
            HadamardPower::Exact(p) => Some(p),
            HadamardPower::Float(_) => None,
        }
    }
}

/// Inexact Laurent polynomial with `f64` complex coefficients.
///
/// Produced by transformations with non-rational data and consumed by the
/// amoeba numerics. Exact verification routines only accept
/// [`LaurentPolynomial`].
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexPolynomial {
    n: usize,
    terms: BTreeMap<Exponent, Complex64>,
}

impl ComplexPolynomial {
    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, Complex64)>,
    {
        let mut map: BTreeMap<Exponent, Complex64> = BTreeMap::new();
        for (e, c) in terms {
            check_dim(n, e.len())?;
            *map.entry(e).or_insert_with(Complex64::zero) += c;
        }
        map.retain(|_, c| *c != Complex64::zero());
        Ok(Self { n, terms: map })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Complex64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exp: &[i64]) -> Complex64 {
        self.terms.get(exp).copied().unwrap_or_else(Complex64::zero)
    }

    pub fn support(&self) -> Vec<Exponent> {
        self.terms.keys().cloned().collect()
    }

    pub fn min_exponents(&self) -> Option<Exponent> {
        fold_exponents(self.terms.keys(), i64::min)
    }

    pub fn max_exponents(&self) -> Option<Exponent> {
        fold_exponents(self.terms.keys(), i64::max)
    }

    pub fn shift(&self, a: &[i64]) -> Self {
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(a).map(|(x, y)| x + y).collect(), *c))
                .collect(),
        }
    }

    /// Divides out the largest monomial factor, leaving nonnegative
    /// exponents with every coordinate minimum equal to zero.
    pub fn without_monomial_factor(&self) -> Self {
        match self.min_exponents() {
            Some(low) => self.shift(&low.iter().map(|x| -x).collect::<Vec<_>>()),
            None => self.clone(),
        }
    }

    pub fn evaluate(&self, x: &[Complex64]) -> Result<Complex64> {
        check_dim(self.n, x.len())?;
        let mut acc = Complex64::zero();
        for (e, c) in &self.terms {
            acc += complex_monomial(e, x)? * c;
        }
        Ok(acc)
    }

    pub fn monomial_substitution(
        &self,
        v: &[Vec<i64>],
        t: &[Complex64],
        a: &[i64],
        ell: u32,
    ) -> Result<Self> {
        validate_transform(self.n, v, t.len(), a, ell)?;
        if t.iter().any(|z| *z == Complex64::zero()) {
            return Err(Error::InvalidTransform("t must lie in the torus".into()));
        }
        let mut base = BTreeMap::new();
        for (s, c) in &self.terms {
            let coeff = complex_monomial(s, t)? * c;
            *base
                .entry(apply_exponent_map(v, s))
                .or_insert_with(Complex64::zero) += coeff;
        }
        let base = Self { n: self.n, terms: base };
        let mut acc = Self::from_terms(self.n, [(vec![0; self.n], Complex64::new(1.0, 0.0))])?;
        for _ in 0..ell {
            acc = acc.mul(&base);
        }
        Ok(acc.shift(a))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut map: BTreeMap<Exponent, Complex64> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *map.entry(e).or_insert_with(Complex64::zero) += c1 * c2;
            }
        }
        map.retain(|_, c| *c != Complex64::zero());
        Self { n: self.n, terms: map }
    }

    pub fn newton_polytope(&self) -> Result<IntegerPolytope> {
        if self.is_zero() {
            return Err(Error::EmptySupport);
        }
        lattice::facet_description(&self.support())
    }
}
