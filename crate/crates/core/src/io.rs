//! File formats: JSON for polynomials, polytopes, Ore-Sato data, Horn
//! systems and reports; CSV for point data; binary PPM rasters. Writers
//! are atomic (temporary file plus rename).

use std::collections::BTreeSet;
use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::amoeba::{AmoebaRaster, ComplementComponent, OptimalityReport};
use crate::error::{Error, Result};
use crate::families::AsterPoint;
use crate::hypergeometric::{GammaFactor, HornSystem, LinearForm, OreSatoCoefficient};
use crate::lattice::{facet_description, IntegerPolytope};
use crate::moment::{MomentImagePointCloud, WcaCell, WcaComponent, WcaRaster};
use crate::poly::{ComplexPolynomial, Exponent, LaurentPolynomial, Rational};

fn parse_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

fn parse_rational(s: &str) -> Result<Rational> {
    let r: Rational = s
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("not a rational number: {s:?}")))?;
    Ok(r)
}

fn rational_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermJson {
    exp: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    num: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    den: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    re: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    im: Option<f64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolynomialJson {
    n: usize,
    terms: Vec<TermJson>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    inexact: bool,
}

fn exact_terms_json(n: usize, terms: Vec<(&Exponent, &Rational)>) -> PolynomialJson {
    PolynomialJson {
        n,
        terms: terms
            .into_iter()
            .map(|(e, c)| TermJson {
                exp: e.clone(),
                num: Some(c.numer().to_string()),
                den: Some(c.denom().to_string()),
                re: None,
                im: None,
            })
            .collect(),
        inexact: false,
    }
}

pub fn polynomial_to_json(p: &LaurentPolynomial) -> Value {
    serde_json::to_value(exact_terms_json(p.dim(), p.terms().collect())).expect("serializable")
}

/// Floating polynomials carry `re`/`im` per term and `"inexact": true`.
pub fn complex_polynomial_to_json(p: &ComplexPolynomial) -> Value {
    let doc = PolynomialJson {
        n: p.dim(),
        terms: p
            .terms()
            .map(|(e, c)| TermJson {
                exp: e.clone(),
                num: None,
                den: None,
                re: Some(c.re),
                im: Some(c.im),
            })
            .collect(),
        inexact: true,
    };
    serde_json::to_value(doc).expect("serializable")
}

/// Either an exact or an inexact polynomial document.
#[derive(Clone, Debug)]
pub enum AnyPolynomial {
    Exact(LaurentPolynomial),
    Inexact(ComplexPolynomial),
}

impl AnyPolynomial {
    pub fn to_complex(&self) -> ComplexPolynomial {
        match self {
            AnyPolynomial::Exact(p) => p.to_complex(),
            AnyPolynomial::Inexact(p) => p.clone(),
        }
    }

    pub fn exact(self) -> Result<LaurentPolynomial> {
        match self {
            AnyPolynomial::Exact(p) => Ok(p),
            AnyPolynomial::Inexact(_) => Err(Error::Domain("exact polynomial required, got inexact coefficients".into())),
        }
    }
}

fn check_term_dims(n: usize, terms: &[TermJson]) -> Result<()> {
    if n == 0 {
        return Err(Error::Parse("polynomial dimension must be positive".into()));
    }
    let mut seen = BTreeSet::new();
    for t in terms {
        if t.exp.len() != n {
            return Err(Error::Parse(format!("exponent {:?} does not have length {n}", t.exp)));
        }
        if !seen.insert(t.exp.clone()) {
            return Err(Error::Parse(format!("duplicate exponent {:?}", t.exp)));
        }
    }
    Ok(())
}

pub fn any_polynomial_from_value(v: &Value) -> Result<AnyPolynomial> {
    let doc: PolynomialJson = serde_json::from_value(v.clone()).map_err(parse_err)?;
    check_term_dims(doc.n, &doc.terms)?;
    let exact = doc.terms.iter().all(|t| t.num.is_some() && t.re.is_none() && t.im.is_none());
    if exact && !doc.inexact {
        let mut terms = Vec::with_capacity(doc.terms.len());
        for t in doc.terms {
            let num = parse_rational(t.num.as_deref().unwrap_or("0"))?;
            let den = parse_rational(t.den.as_deref().unwrap_or("1"))?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator at {:?}", t.exp)));
            }
            terms.push((t.exp, num / den));
        }
        return Ok(AnyPolynomial::Exact(LaurentPolynomial::from_terms(doc.n, terms)?));
    }
    let mut terms = Vec::with_capacity(doc.terms.len());
    for t in doc.terms {
        if t.num.is_some() || t.den.is_some() {
            return Err(Error::Parse("mixed exact and inexact terms".into()));
        }
        let c = Complex64::new(t.re.unwrap_or(0.0), t.im.unwrap_or(0.0));
        if !c.re.is_finite() || !c.im.is_finite() {
            return Err(Error::Parse(format!("non-finite coefficient at {:?}", t.exp)));
        }
        terms.push((t.exp, c));
    }
    Ok(AnyPolynomial::Inexact(ComplexPolynomial::from_terms(doc.n, terms)?))
}

pub fn any_polynomial_from_str(s: &str) -> Result<AnyPolynomial> {
    any_polynomial_from_value(&serde_json::from_str(s).map_err(parse_err)?)
}

pub fn polynomial_from_str(s: &str) -> Result<LaurentPolynomial> {
    match any_polynomial_from_str(s)? {
        AnyPolynomial::Exact(p) => Ok(p),
        AnyPolynomial::Inexact(_) => Err(Error::Parse("expected exact num/den coefficients".into())),
    }
}

/// Parses a sum of monomials such as `3x + 12xy - 2/3 x^2y^{-1}`.
///
/// Variables are `x`, `y`, `z` or indexed `x1`, `x2`, ... (1-based); `*`
/// and LaTeX braces around exponents are accepted. The dimension is the
/// larger of `min_dim` and the highest variable used.
pub fn parse_polynomial_expr(src: &str, min_dim: usize) -> Result<LaurentPolynomial> {
    let chars: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
    let err = |msg: &str, at: usize| Error::Parse(format!("{msg} at position {at} in {src:?}"));
    let mut i = 0;
    let mut terms: Vec<(Vec<(usize, i64)>, Rational)> = Vec::new();
    let read_int = |i: &mut usize| -> Option<i64> {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        chars[start..*i].iter().collect::<String>().parse().ok()
    };
    if chars.is_empty() {
        return Err(err("empty expression", 0));
    }
    while i < chars.len() {
        let mut sign = Rational::one();
        if chars[i] == '+' || chars[i] == '-' {
            if chars[i] == '-' {
                sign = -sign;
            }
            i += 1;
        } else if !terms.is_empty() {
            return Err(err("expected + or -", i));
        }
        let mut coef = sign;
        let mut explicit = false;
        if i < chars.len() && chars[i].is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let num: String = chars[start..i].iter().collect();
            let mut value = parse_rational(&num)?;
            if i < chars.len() && chars[i] == '/' {
                i += 1;
                let den = read_int(&mut i).ok_or_else(|| err("expected denominator", i))?;
                if den == 0 {
                    return Err(err("zero denominator", i));
                }
                value /= Rational::from_integer(den.into());
            }
            coef *= value;
            explicit = true;
        }
        let mut vars = Vec::new();
        loop {
            if i < chars.len() && chars[i] == '*' {
                i += 1;
            }
            if i >= chars.len() || !matches!(chars[i], 'x' | 'y' | 'z') {
                break;
            }
            let letter = chars[i];
            i += 1;
            let index = if letter == 'x' && i < chars.len() && chars[i].is_ascii_digit() {
                let k = read_int(&mut i).ok_or_else(|| err("bad variable index", i))?;
                if k == 0 {
                    return Err(err("variable indices start at 1", i));
                }
                k as usize - 1
            } else {
                match letter {
                    'x' => 0,
                    'y' => 1,
                    _ => 2,
                }
            };
            let mut e = 1i64;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                let braced = i < chars.len() && chars[i] == '{';
                if braced {
                    i += 1;
                }
                let neg = i < chars.len() && chars[i] == '-';
                if neg {
                    i += 1;
                }
                e = read_int(&mut i).ok_or_else(|| err("expected exponent", i))?;
                if neg {
                    e = -e;
                }
                if braced {
                    if i >= chars.len() || chars[i] != '}' {
                        return Err(err("expected }", i));
                    }
                    i += 1;
                }
            }
            vars.push((index, e));
        }
        if !explicit && vars.is_empty() {
            return Err(err("expected a coefficient or variable", i));
        }
        terms.push((vars, coef));
    }
    let n = terms
        .iter()
        .flat_map(|(v, _)| v.iter().map(|(k, _)| k + 1))
        .max()
        .unwrap_or(1)
        .max(min_dim);
    let mut p = LaurentPolynomial::zero(n);
    for (vars, c) in terms {
        let mut e = vec![0; n];
        for (k, x) in vars {
            e[k] += x;
        }
        p.add_term(e, c);
    }
    Ok(p)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolytopeJson {
    n: usize,
    vertices: Vec<Vec<i64>>,
}

pub fn polytope_to_json(p: &IntegerPolytope) -> Value {
    json!({ "n": p.dim(), "vertices": p.vertices() })
}

/// Parses `{"n", "vertices"}`; facets are always recomputed.
pub fn polytope_from_str(s: &str) -> Result<IntegerPolytope> {
    let doc: PolytopeJson = serde_json::from_str(s).map_err(parse_err)?;
    if doc.vertices.iter().any(|v| v.len() != doc.n) {
        return Err(Error::Parse(format!("every vertex must have length {}", doc.n)));
    }
    if doc.vertices.is_empty() {
        return Err(Error::Parse("no vertices".into()));
    }
    facet_description(&doc.vertices)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FactorJson {
    #[serde(rename = "A")]
    a: Vec<i64>,
    c: String,
    sign: i8,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FormJson {
    #[serde(rename = "A")]
    a: Vec<i64>,
    c: String,
    #[serde(default = "one_u32")]
    mult: u32,
}

fn one_u32() -> u32 {
    1
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OreSatoJson {
    n: usize,
    factors: Vec<FactorJson>,
    #[serde(default)]
    rational_num: Vec<FormJson>,
    #[serde(default)]
    rational_den: Vec<FormJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    exponential: Option<Vec<String>>,
}

fn form_json(l: &LinearForm) -> FormJson {
    FormJson {
        a: l.a.clone(),
        c: rational_string(&l.c),
        mult: l.multiplicity,
    }
}

fn form_from_json(f: FormJson) -> Result<LinearForm> {
    Ok(LinearForm {
        a: f.a,
        c: parse_rational(&f.c)?,
        multiplicity: f.mult,
    })
}

pub fn ore_sato_to_json(phi: &OreSatoCoefficient) -> Value {
    let exponential = phi.exponential();
    let doc = OreSatoJson {
        n: phi.dim(),
        factors: phi
            .factors()
            .iter()
            .map(|f| FactorJson {
                a: f.a.clone(),
                c: rational_string(&f.c),
                sign: f.sign(),
            })
            .collect(),
        rational_num: phi.rational_num().iter().map(form_json).collect(),
        rational_den: phi.rational_den().iter().map(form_json).collect(),
        exponential: (!exponential.iter().all(One::is_one)).then(|| exponential.iter().map(rational_string).collect()),
    };
    serde_json::to_value(doc).expect("serializable")
}

/// Parses Ore-Sato data. Malformed documents are [`Error::InvalidOreSato`]
/// or [`Error::Parse`]; both map to the parse exit code.
pub fn ore_sato_from_str(s: &str) -> Result<OreSatoCoefficient> {
    let doc: OreSatoJson = serde_json::from_str(s).map_err(|e| Error::InvalidOreSato(e.to_string()))?;
    if doc.n == 0 {
        return Err(Error::InvalidOreSato("dimension must be positive".into()));
    }
    let mut factors = Vec::with_capacity(doc.factors.len());
    for f in doc.factors {
        let c = parse_rational(&f.c).map_err(|e| Error::InvalidOreSato(e.to_string()))?;
        factors.push(match f.sign {
            1 => GammaFactor::numerator(f.a, c),
            -1 => GammaFactor::reciprocal(f.a, c),
            s => return Err(Error::InvalidOreSato(format!("sign must be 1 or -1, got {s}"))),
        });
    }
    let convert = |forms: Vec<FormJson>| -> Result<Vec<LinearForm>> {
        forms
            .into_iter()
            .map(|f| form_from_json(f).map_err(|e| Error::InvalidOreSato(e.to_string())))
            .collect()
    };
    let num = convert(doc.rational_num)?;
    let den = convert(doc.rational_den)?;
    let exponential = match doc.exponential {
        Some(t) => t
            .iter()
            .map(|x| parse_rational(x).map_err(|e| Error::InvalidOreSato(e.to_string())))
            .collect::<Result<Vec<_>>>()?,
        None => vec![Rational::one(); doc.n],
    };
    OreSatoCoefficient::with_parts(doc.n, factors, exponential, num, den).map_err(|e| match e {
        Error::DimensionMismatch { expected, found } => {
            Error::InvalidOreSato(format!("vector of length {found}, expected {expected}"))
        }
        other => other,
    })
}

/// `{"n", "pairs": [{"P": terms, "Q": terms}]}` with terms listed in
/// graded-lex order, highest first.
pub fn horn_system_to_json(h: &HornSystem) -> Value {
    let pairs: Vec<Value> = h
        .pairs()
        .iter()
        .map(|pair| {
            let p = exact_terms_json(h.dim(), pair.p.grlex_terms());
            let q = exact_terms_json(h.dim(), pair.q.grlex_terms());
            json!({ "P": p.terms, "Q": q.terms })
        })
        .collect();
    json!({ "n": h.dim(), "pairs": pairs })
}

pub fn report_to_json(r: &OptimalityReport) -> Value {
    let comps: Vec<Value> = r
        .components
        .iter()
        .map(|c| {
            json!({
                "order": c.order,
                "bounded": c.bounded,
                "representative": c.representative,
                "area": c.area,
                "fragments": c.fragments,
                "certified": c.certified,
            })
        })
        .collect();
    json!({
        "lattice_points": r.lattice_points,
        "vertices": r.vertices,
        "components": comps,
        "merged_fragments": r.merged_fragments,
        "missing_vertices": r.missing_vertices,
        "optimal": r.is_optimal(),
        "verdict": r.verdict.as_str(),
        "diagnostics": r.diagnostics,
    })
}

pub fn components_to_json(comps: &[ComplementComponent]) -> Value {
    Value::Array(
        comps
            .iter()
            .map(|c| {
                json!({
                    "order": c.order,
                    "bounded": c.bounded,
                    "representative": c.representative,
                    "area": c.area(),
                })
            })
            .collect(),
    )
}

pub fn wca_components_to_json(comps: &[WcaComponent]) -> Value {
    Value::Array(
        comps
            .iter()
            .map(|c| {
                json!({
                    "order": c.order,
                    "bounded": c.bounded,
                    "representative": c.representative,
                    "area": c.pixels.len(),
                })
            })
            .collect(),
    )
}

pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// `b,c,re,im` rows with exact `b`, `c`.
pub fn aster_csv(points: &[AsterPoint]) -> String {
    let mut s = String::from("b,c,re,im\n");
    for p in points {
        s.push_str(&format!(
            "{},{},{:e},{:e}\n",
            rational_string(&p.b),
            rational_string(&p.c),
            p.root.re,
            p.root.im
        ));
    }
    s
}

/// `r,u,v` rows for a sequence of clouds.
pub fn clouds_csv(clouds: &[MomentImagePointCloud]) -> String {
    let mut s = String::from("r,u,v\n");
    for c in clouds {
        for pt in &c.points {
            s.push_str(&format!("{},{:e},{:e}\n", c.r, pt[0], pt[1]));
        }
    }
    s
}

/// Deterministic color for an order vector; unknown orders are grey.
pub fn order_color(order: Option<&[i64]>) -> [u8; 3] {
    let Some(o) = order else {
        return [160, 160, 160];
    };
    // FNV-1a over the coordinates, then keep the channels away from black
    let mut h: u64 = 0xcbf29ce484222325;
    for &x in o {
        for b in x.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    }
    [64 + (h & 0xbf) as u8, 64 + ((h >> 8) & 0xbf) as u8, 64 + ((h >> 16) & 0xbf) as u8]
}

fn ppm(width: usize, height: usize, rgb: &[[u8; 3]]) -> Vec<u8> {
    let mut out = format!("P6\n{width} {height}\n255\n").into_bytes();
    for px in rgb {
        out.extend_from_slice(px);
    }
    out
}

/// Amoeba pixels black, complement components colored by order. The top
/// image row is the largest second coordinate.
pub fn amoeba_ppm(r: &AmoebaRaster, comps: &[ComplementComponent]) -> Vec<u8> {
    let res = r.window.resolution;
    let mut colors = vec![[255u8; 3]; res * res];
    for c in comps {
        let color = order_color(c.order.as_deref());
        for &i in &c.pixels {
            colors[i] = color;
        }
    }
    for (i, &a) in r.grid().iter().enumerate() {
        if a {
            colors[i] = [0, 0, 0];
        }
    }
    ppm(res, res, &flip_rows(&colors, res))
}

fn flip_rows(colors: &[[u8; 3]], res: usize) -> Vec<[u8; 3]> {
    colors.chunks(res).rev().flatten().copied().collect()
}

/// WCA raster with the Newton polygon outline in red.
pub fn wca_ppm(r: &WcaRaster, comps: &[WcaComponent]) -> Vec<u8> {
    let res = r.resolution;
    let mut colors: Vec<[u8; 3]> = r
        .cells
        .iter()
        .map(|c| match c {
            WcaCell::Outside => [255, 255, 255],
            WcaCell::Amoeba => [0, 0, 0],
            WcaCell::Gap => [160, 160, 160],
        })
        .collect();
    for c in comps {
        let color = order_color(c.order.as_deref());
        for &i in &c.pixels {
            colors[i] = color;
        }
    }
    let steps = 4 * res;
    for (a, b) in r.polytope.edges() {
        for k in 0..=steps {
            let t = k as f64 / steps as f64;
            let u = [
                a[0] as f64 + t * (b[0] - a[0]) as f64,
                a[1] as f64 + t * (b[1] - a[1]) as f64,
            ];
            // clamp so that edges on the far sides of the box stay visible
            let c = ((u[0] - r.origin[0]) / r.pixel[0]).floor().clamp(0.0, res as f64 - 1.0) as usize;
            let w = ((u[1] - r.origin[1]) / r.pixel[1]).floor().clamp(0.0, res as f64 - 1.0) as usize;
            colors[w * res + c] = [220, 0, 0];
        }
    }
    ppm(res, res, &flip_rows(&colors, res))
}

/// Scatter plot of planar points, black on white, in a square frame
/// around their bounding box.
pub fn scatter_ppm(points: &[[f64; 2]], resolution: usize) -> Vec<u8> {
    let mut colors = vec![[255u8; 3]; resolution * resolution];
    let finite: Vec<&[f64; 2]> = points.iter().filter(|p| p[0].is_finite() && p[1].is_finite()).collect();
    if !finite.is_empty() {
        let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
        for p in &finite {
            for k in 0..2 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-12) * 1.05;
        let mid = [(lo[0] + hi[0]) / 2.0, (lo[1] + hi[1]) / 2.0];
        let n = resolution as f64;
        for p in finite {
            let c = (((p[0] - mid[0]) / span + 0.5) * n).clamp(0.0, n - 1.0) as usize;
            let r = (((p[1] - mid[1]) / span + 0.5) * n).clamp(0.0, n - 1.0) as usize;
            colors[(resolution - 1 - r) * resolution + c] = [0, 0, 0];
        }
    }
    ppm(resolution, resolution, &colors)
}

/// Writes through a temporary file in the target directory and renames it
/// into place, so a failed run never leaves a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergeometric::horn_system;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn polynomial_round_trip_with_negative_exponents() {
        let p = LaurentPolynomial::from_terms(2, [(vec![-1, 3], q(-7, 3)), (vec![0, 0], q(5, 1))]).unwrap();
        let text = to_pretty(&polynomial_to_json(&p));
        assert_eq!(polynomial_from_str(&text).unwrap(), p);
    }

    #[test]
    fn duplicate_exponents_rejected() {
        let s = r#"{"n":1,"terms":[{"exp":[1],"num":"1","den":"1"},{"exp":[1],"num":"2","den":"1"}]}"#;
        assert!(matches!(polynomial_from_str(s), Err(Error::Parse(_))));
        let s = r#"{"n":2,"terms":[{"exp":[1],"num":"1","den":"1"}]}"#;
        assert!(matches!(polynomial_from_str(s), Err(Error::Parse(_))));
        let s = r#"{"n":1,"terms":[{"exp":[1],"num":"1","den":"0"}]}"#;
        assert!(matches!(polynomial_from_str(s), Err(Error::Parse(_))));
    }

    #[test]
    fn inexact_polynomials_parse_separately() {
        let p = ComplexPolynomial::from_terms(2, [(vec![1, 0], Complex64::new(0.5, -2.0))]).unwrap();
        let v = complex_polynomial_to_json(&p);
        assert!(matches!(any_polynomial_from_value(&v).unwrap(), AnyPolynomial::Inexact(ref c) if *c == p));
        assert!(polynomial_from_str(&v.to_string()).is_err());
    }

    #[test]
    fn ore_sato_round_trip_and_errors() {
        let s = r#"{"n":2,"factors":[{"A":[-1,-1],"c":"1/2","sign":1},{"A":[2,-1],"c":"0","sign":-1}],
            "rational_num":[{"A":[1,0],"c":"3","mult":2}],"rational_den":[],"exponential":["2","1"]}"#;
        let phi = ore_sato_from_str(s).unwrap();
        assert_eq!(phi.factors().len(), 2);
        let back = ore_sato_from_str(&ore_sato_to_json(&phi).to_string()).unwrap();
        assert_eq!(back, phi);
        let bad_sign = r#"{"n":1,"factors":[{"A":[1],"c":"0","sign":2}]}"#;
        assert!(ore_sato_from_str(bad_sign).unwrap_err().is_parse());
        let bad_len = r#"{"n":2,"factors":[{"A":[1],"c":"0","sign":1}]}"#;
        assert!(ore_sato_from_str(bad_len).unwrap_err().is_parse());
        let bad_c = r#"{"n":1,"factors":[{"A":[1],"c":"x","sign":1}]}"#;
        assert!(ore_sato_from_str(bad_c).unwrap_err().is_parse());
    }

    #[test]
    fn horn_json_lists_grlex_terms() {
        let phi = OreSatoCoefficient::new(1, vec![GammaFactor::reciprocal(vec![1], q(1, 1)), GammaFactor::reciprocal(vec![-1], q(3, 1))]).unwrap();
        let v = horn_system_to_json(&horn_system(&phi).unwrap());
        let p = &v["pairs"][0]["P"];
        assert_eq!(p[0]["exp"], json!([1]));
        assert_eq!(p[1]["exp"], json!([0]));
    }

    #[test]
    fn expressions() {
        let p = parse_polynomial_expr("3x + 12xy+2x^2y +2y^{2}+3x*y^2", 2).unwrap();
        let want = LaurentPolynomial::from_int_terms(
            2,
            [(vec![1, 0], 3), (vec![1, 1], 12), (vec![2, 1], 2), (vec![0, 2], 2), (vec![1, 2], 3)],
        )
        .unwrap();
        assert_eq!(p, want);
        let e = parse_polynomial_expr("-1/2 + x3^{-2} - x1", 0).unwrap();
        assert_eq!(e.dim(), 3);
        assert_eq!(e.coefficient(&[0, 0, -2]), q(1, 1));
        assert_eq!(e.coefficient(&[0, 0, 0]), q(-1, 2));
        assert_eq!(e.coefficient(&[1, 0, 0]), q(-1, 1));
        assert_eq!(parse_polynomial_expr("1+x+y", 3).unwrap().dim(), 3);
        for bad in ["", "x^", "2)", "1/0", "x+", "x^{2", "x0"] {
            assert!(parse_polynomial_expr(bad, 2).is_err(), "{bad}");
        }
    }

    #[test]
    fn polytope_facets_are_recomputed() {
        let p = polytope_from_str(r#"{"n":2,"vertices":[[0,0],[2,0],[0,2],[1,1]]}"#).unwrap();
        assert_eq!(p.vertices().len(), 3);
        assert!(polytope_from_str(r#"{"n":2,"vertices":[[0,0],[1,1]]}"#).is_err());
    }

    #[test]
    fn colors_are_deterministic_and_distinct() {
        assert_eq!(order_color(Some(&[1, 2])), order_color(Some(&[1, 2])));
        assert_ne!(order_color(Some(&[1, 2])), order_color(Some(&[2, 1])));
        assert_ne!(order_color(Some(&[0, 0])), [0, 0, 0]);
    }

    #[test]
    fn atomic_write_replaces_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.json");
        write_atomic(&path, b"first").unwrap();
        write_atomic(&path, b"second").unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), b"second");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
