//! Ore–Sato coefficients, Horn systems and the canonical hypergeometric
//! polynomial of a lattice polytope.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{self, IntegerPolytope, LatticeSupport};
use crate::poly::{rational_from_i64, rational_pow, Exponent, LaurentPolynomial, Rational};

/// `Gamma(<A, s> + c)` in the numerator (`reciprocal == false`) or
/// `1 / Gamma(<A, s> + c)` in the denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaFactor {
    pub a: Vec<i64>,
    pub c: Rational,
    pub reciprocal: bool,
}

impl GammaFactor {
    pub fn numerator(a: Vec<i64>, c: Rational) -> Self {
        Self { a, c, reciprocal: false }
    }

    pub fn reciprocal(a: Vec<i64>, c: Rational) -> Self {
        Self { a, c, reciprocal: true }
    }

    pub fn sign(&self) -> i8 {
        if self.reciprocal {
            -1
        } else {
            1
        }
    }

    fn argument(&self, s: &[i64]) -> Rational {
        let dot: i64 = self.a.iter().zip(s).map(|(a, b)| a * b).sum();
        rational_from_i64(dot) + &self.c
    }
}

/// Affine form `<A, s> + c` raised to a positive multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    pub a: Vec<i64>,
    pub c: Rational,
    pub multiplicity: u32,
}

impl LinearForm {
    fn value(&self, s: &[i64]) -> Rational {
        let dot: i64 = self.a.iter().zip(s).map(|(a, b)| a * b).sum();
        rational_from_i64(dot) + &self.c
    }
}

/// `phi(s) = t^s U(s) prod Gamma(<A_i, s> + c_i)^{+-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OreSatoCoefficient {
    n: usize,
    factors: Vec<GammaFactor>,
    exponential: Vec<Rational>,
    rational_num: Vec<LinearForm>,
    rational_den: Vec<LinearForm>,
}

impl OreSatoCoefficient {
    /// Pure Gamma coefficient with `t = (1, ..., 1)` and `U = 1`. Factors
    /// with `A = 0` are constants and are dropped.
    pub fn new(n: usize, factors: Vec<GammaFactor>) -> Result<Self> {
        Self::with_parts(n, factors, vec![Rational::one(); n], Vec::new(), Vec::new())
    }

    pub fn with_parts(
        n: usize,
        factors: Vec<GammaFactor>,
        exponential: Vec<Rational>,
        rational_num: Vec<LinearForm>,
        rational_den: Vec<LinearForm>,
    ) -> Result<Self> {
        for f in &factors {
            check_len(n, f.a.len())?;
        }
        for l in rational_num.iter().chain(&rational_den) {
            check_len(n, l.a.len())?;
            if l.multiplicity == 0 {
                return Err(Error::InvalidOreSato("linear form with multiplicity 0".into()));
            }
        }
        check_len(n, exponential.len())?;
        if exponential.iter().any(Zero::is_zero) {
            return Err(Error::InvalidOreSato("exponential part must be nonzero".into()));
        }
        let factors = factors.into_iter().filter(|f| f.a.iter().any(|&x| x != 0)).collect();
        Ok(Self {
            n,
            factors,
            exponential,
            rational_num,
            rational_den,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn factors(&self) -> &[GammaFactor] {
        &self.factors
    }

    pub fn exponential(&self) -> &[Rational] {
        &self.exponential
    }

    pub fn rational_num(&self) -> &[LinearForm] {
        &self.rational_num
    }

    pub fn rational_den(&self) -> &[LinearForm] {
        &self.rational_den
    }

    pub fn is_reciprocal_only(&self) -> bool {
        self.factors.iter().all(|f| f.reciprocal)
    }

    /// Exact value at an integer point.
    ///
    /// Reciprocal Gammas at nonpositive integers contribute 0; numerator
    /// Gammas there are poles. Non-integer Gamma arguments are outside the
    /// exact domain.
    pub fn evaluate(&self, s: &[i64]) -> Result<Rational> {
        check_len(self.n, s.len())?;
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        let mut vanishes = false;
        for f in &self.factors {
            let arg = f.argument(s);
            if !arg.is_integer() {
                return Err(Error::Domain(format!("non-integer Gamma argument {arg}")));
            }
            let k = arg.to_integer();
            if k <= BigInt::zero() {
                if f.reciprocal {
                    vanishes = true;
                    continue;
                }
                return Err(Error::Pole(format!("Gamma({k}) at s = {s:?}")));
            }
            let fact = factorial(&(k - 1u32))?;
            if f.reciprocal {
                den *= fact;
            } else {
                num *= fact;
            }
        }
        let mut u = Rational::one();
        for l in &self.rational_num {
            u *= rational_pow(&l.value(s), l.multiplicity as i64)?;
        }
        for l in &self.rational_den {
            let v = l.value(s);
            if v.is_zero() {
                return Err(Error::Pole(format!("rational part vanishes in the denominator at {s:?}")));
            }
            u /= rational_pow(&v, l.multiplicity as i64)?;
        }
        if vanishes || u.is_zero() {
            return Ok(Rational::zero());
        }
        let mut value = Rational::new(num, den) * u;
        for (t, &k) in self.exponential.iter().zip(s) {
            value *= rational_pow(t, k)?;
        }
        Ok(value)
    }
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

fn factorial(k: &BigInt) -> Result<BigInt> {
    let k = k
        .to_u64()
        .filter(|&k| k <= 100_000)
        .ok_or_else(|| Error::Domain(format!("factorial argument {k} out of range")))?;
    Ok((1..=k).fold(BigInt::one(), |acc, i| acc * i))
}

/// The pair `(P_j, Q_j)` of one Horn operator `x_j P_j(theta) - Q_j(theta)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HornPair {
    pub p: LaurentPolynomial,
    pub q: LaurentPolynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HornSystem {
    n: usize,
    pairs: Vec<HornPair>,
}

impl HornSystem {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[HornPair] {
        &self.pairs
    }

    pub fn pair(&self, j: usize) -> &HornPair {
        &self.pairs[j]
    }
}

fn linear_poly(a: &[i64], c: &Rational) -> LaurentPolynomial {
    let n = a.len();
    let mut p = LaurentPolynomial::constant(n, c.clone());
    for (k, &ak) in a.iter().enumerate() {
        if ak != 0 {
            p = &p + &LaurentPolynomial::variable(n, k).scale(&rational_from_i64(ak));
        }
    }
    p
}

/// Horn system of `phi`: for each `j`, polynomials with
/// `P_j(s) / Q_j(s + e_j) = phi(s + e_j) / phi(s)`.
///
/// Each pair is scaled by `-1` if needed so that the graded-lex leading
/// coefficient of `P_j` is positive.
pub fn horn_system(phi: &OreSatoCoefficient) -> Result<HornSystem> {
    let n = phi.n;
    let one = LaurentPolynomial::constant(n, Rational::one());
    let mut pairs = Vec::with_capacity(n);
    for j in 0..n {
        let mut p = LaurentPolynomial::constant(n, phi.exponential[j].clone());
        let mut q = one.clone();
        for f in &phi.factors {
            let aj = f.a[j];
            if aj == 0 {
                continue;
            }
            let base = linear_poly(&f.a, &f.c);
            let shifted = |d: i64| &base + &LaurentPolynomial::constant(n, rational_from_i64(d));
            let m = aj.abs();
            match (f.reciprocal, aj > 0) {
                (false, true) => (0..m).for_each(|l| p = &p * &shifted(l)),
                (false, false) => (0..m).for_each(|l| q = &q * &shifted(l)),
                (true, false) => (1..=m).for_each(|k| p = &p * &shifted(-k)),
                (true, true) => (1..=m).for_each(|k| q = &q * &shifted(-k)),
            }
        }
        for l in &phi.rational_num {
            let aj = l.a[j];
            if aj == 0 {
                continue;
            }
            let fwd = linear_poly(&l.a, &(&l.c + rational_from_i64(aj)));
            let back = linear_poly(&l.a, &(&l.c - rational_from_i64(aj)));
            for _ in 0..l.multiplicity {
                p = &p * &fwd;
                q = &q * &back;
            }
        }
        for l in &phi.rational_den {
            if l.a[j] == 0 {
                continue;
            }
            let base = linear_poly(&l.a, &l.c);
            for _ in 0..l.multiplicity {
                p = &p * &base;
                q = &q * &base;
            }
        }
        if p.is_zero() || q.is_zero() {
            return Err(Error::InvalidOreSato(format!("degenerate Horn pair in direction {j}")));
        }
        if p.grlex_leading().is_some_and(|(_, c)| c.is_negative()) {
            p = -&p;
            q = -&q;
        }
        pairs.push(HornPair { p, q });
    }
    Ok(HornSystem { n, pairs })
}

fn eval_at_integer(p: &LaurentPolynomial, s: &[i64]) -> Rational {
    let s: Vec<Rational> = s.iter().map(|&x| rational_from_i64(x)).collect();
    p.eval_rational(&s)
        .expect("Horn polynomials have nonnegative exponents and matching dimension")
}

/// `(x_j P_j(theta) - Q_j(theta)) p` with `theta_k x^s = s_k x^s`.
pub fn apply_horn_operator(p: &LaurentPolynomial, j: usize, h: &HornSystem) -> Result<LaurentPolynomial> {
    check_len(h.n, p.dim())?;
    if j >= h.n {
        return Err(Error::Domain(format!("direction {j} out of range for n = {}", h.n)));
    }
    let pair = &h.pairs[j];
    let mut out = LaurentPolynomial::zero(h.n);
    for (s, c) in p.terms() {
        let mut up = s.clone();
        up[j] += 1;
        out.add_term(up, c * eval_at_integer(&pair.p, s));
        out.add_term(s.clone(), -(c * eval_at_integer(&pair.q, s)));
    }
    Ok(out)
}

/// Whether every Horn operator of `phi` annihilates `p` exactly.
pub fn is_horn_solution(p: &LaurentPolynomial, phi: &OreSatoCoefficient) -> Result<bool> {
    let h = horn_system(phi)?;
    for j in 0..h.n {
        if !apply_horn_operator(p, j, &h)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the table satisfies
/// `phi(s + e_j) Q_j(s + e_j) = phi(s) P_j(s)` for every `s` and `j`,
/// with absent entries read as zero.
pub fn coefficient_recurrence_check(
    table: &BTreeMap<Exponent, Rational>,
    phi: &OreSatoCoefficient,
) -> Result<bool> {
    let h = horn_system(phi)?;
    let zero = Rational::zero();
    for j in 0..h.n {
        let pair = &h.pairs[j];
        let mut candidates: BTreeSet<Exponent> = BTreeSet::new();
        for s in table.keys() {
            check_len(h.n, s.len())?;
            candidates.insert(s.clone());
            let mut down = s.clone();
            down[j] -= 1;
            candidates.insert(down);
        }
        for s in candidates {
            let mut up = s.clone();
            up[j] += 1;
            let here = table.get(&s).unwrap_or(&zero);
            let next = table.get(&up).unwrap_or(&zero);
            if next * eval_at_integer(&pair.q, &up) != here * eval_at_integer(&pair.p, &s) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `1 / prod_j (-<B_j, s> - c_j)!`, or 0 when some facet inequality is
/// violated.
pub fn psi_coefficient(p: &IntegerPolytope, s: &[i64]) -> Result<Rational> {
    check_len(p.dim(), s.len())?;
    let mut den = BigInt::one();
    for f in p.facets() {
        let k = -f.value(s);
        if k < 0 {
            return Ok(Rational::zero());
        }
        den *= factorial(&BigInt::from(k))?;
    }
    Ok(Rational::new(BigInt::one(), den))
}

/// `psi_P` as a reciprocal-only Ore–Sato coefficient:
/// `prod_j 1 / Gamma(1 - <B_j, s> - c_j)`.
pub fn psi_ore_sato(p: &IntegerPolytope) -> OreSatoCoefficient {
    let factors = p
        .facets()
        .iter()
        .map(|f| {
            GammaFactor::reciprocal(
                f.normal.iter().map(|x| -x).collect(),
                rational_from_i64(1 - f.offset),
            )
        })
        .collect();
    OreSatoCoefficient::new(p.dim(), factors).expect("facet normals match the polytope dimension")
}

/// Output of [`construct_hypergeometric_polynomial`].
#[derive(Clone, Debug)]
pub struct Construction {
    pub polynomial: LaurentPolynomial,
    /// Set when `P ∩ Z^n` is not connected by unit lattice steps.
    pub warning: Option<String>,
}

/// `sum_{s in P ∩ Z^n} psi_P(s) x^s`, scaled to coprime integer coefficients.
pub fn construct_hypergeometric_polynomial(p: &IntegerPolytope) -> Result<Construction> {
    let support = lattice::lattice_points(p);
    let mut terms = Vec::with_capacity(support.len());
    for s in support.points() {
        terms.push((s.clone(), psi_coefficient(p, s)?));
    }
    let polynomial = LaurentPolynomial::from_terms(p.dim(), terms)?.primitive_integer_multiple();
    let components = lattice::zn_connected_components(&support);
    let warning = (components.len() > 1).then(|| {
        let mins: Vec<String> = components
            .iter()
            .map(|c| format!("{:?} ({} points)", c.points().next().unwrap(), c.len()))
            .collect();
        format!(
            "lattice points split into {} unit-step components: {}",
            components.len(),
            mins.join(", ")
        )
    });
    Ok(Construction { polynomial, warning })
}

/// The canonical hypergeometric polynomial of `p`; logs a warning for
/// reducible supports.
pub fn hypergeometric_polynomial(p: &IntegerPolytope) -> Result<LaurentPolynomial> {
    let c = construct_hypergeometric_polynomial(p)?;
    if let Some(w) = &c.warning {
        log::warn!("{w}");
    }
    Ok(c.polynomial)
}

/// `sum phi(s) x^s` over the integer box `lo..=hi`.
pub fn series_polynomial_over_box(
    phi: &OreSatoCoefficient,
    lo: &[i64],
    hi: &[i64],
) -> Result<LaurentPolynomial> {
    check_len(phi.n, lo.len())?;
    check_len(phi.n, hi.len())?;
    let mut out = LaurentPolynomial::zero(phi.n);
    if lo.iter().zip(hi).any(|(a, b)| a > b) {
        return Ok(out);
    }
    let mut cur = lo.to_vec();
    loop {
        let v = phi.evaluate(&cur)?;
        out.add_term(cur.clone(), v);
        let mut k = 0;
        loop {
            if k == phi.n {
                return Ok(out);
            }
            if cur[k] < hi[k] {
                cur[k] += 1;
                break;
            }
            cur[k] = lo[k];
            k += 1;
        }
    }
}

/// Replaces every numerator `Gamma(l(s))` by `1 / Gamma(1 - l(s))` and resets
/// the exponential part to all ones.
///
/// By `Gamma(z) Gamma(1 - z) = pi / sin(pi z)` each ratio
/// `phi(s + e_j) / phi(s)` changes only by a constant factor, so the Horn
/// polynomials agree with the original ones up to a scalar per direction.
pub fn reflect_to_reciprocal(phi: &OreSatoCoefficient) -> OreSatoCoefficient {
    let factors = phi
        .factors
        .iter()
        .map(|f| {
            if f.reciprocal {
                f.clone()
            } else {
                GammaFactor::reciprocal(f.a.iter().map(|x| -x).collect(), Rational::one() - &f.c)
            }
        })
        .collect();
    OreSatoCoefficient {
        n: phi.n,
        factors,
        exponential: vec![Rational::one(); phi.n],
        rational_num: phi.rational_num.clone(),
        rational_den: phi.rational_den.clone(),
    }
}

/// A coefficient whose Horn system annihilates every polynomial supported
/// in `s`: `P_j = prod_{alpha} (s_1 + ... + s_n - |alpha|)` and
/// `Q_j = prod_{alpha} (s_j - alpha_j)`.
///
/// Written with Gamma factors `Gamma(s_1 + ... + s_n - |alpha|)` and
/// `1 / Gamma(s_j - alpha_j + 1)`, which produce exactly these products.
pub fn annihilator_for_support(s: &LatticeSupport) -> OreSatoCoefficient {
    let n = s.dim();
    let mut factors = Vec::new();
    for alpha in s.points() {
        let total: i64 = alpha.iter().sum();
        factors.push(GammaFactor::numerator(vec![1; n], rational_from_i64(-total)));
        for (j, &aj) in alpha.iter().enumerate() {
            let mut e = vec![0; n];
            e[j] = 1;
            factors.push(GammaFactor::reciprocal(e, rational_from_i64(1 - aj)));
        }
    }
    OreSatoCoefficient::new(n, factors).expect("support points share one dimension")
}
