//! Slope geometry on cusp tori and symmetry-breaking tests.
//!
//! Cusp shapes, lengths and thresholds are generic over any
//! `num_traits::Float`. Slopes are integer pairs up to sign.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use num_integer::Integer;
use num_traits::Float;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::rational::ExtRatio;
use crate::scalar::Int;

/// Normalized length above which every filling is hyperbolic with geodesic cores.
pub const HK_CONSTANT: f64 = 7.5832;

/// Translations of the meridian and longitude on a cusp cross-section.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CuspShape<F> {
    mu: Complex<F>,
    lambda: Complex<F>,
}

impl<F: Float> CuspShape<F> {
    pub fn new(mu: Complex<F>, lambda: Complex<F>) -> Result<Self> {
        let c = Self { mu, lambda };
        let area = c.signed_area();
        if !area.is_finite() || area == F::zero() {
            return Err(Error::InvalidCusp(format!(
                "translations are degenerate (area {})",
                area.to_f64().unwrap_or(f64::NAN)
            )));
        }
        Ok(c)
    }

    pub fn mu(&self) -> Complex<F> {
        self.mu
    }

    pub fn lambda(&self) -> Complex<F> {
        self.lambda
    }

    /// `Im(conj(mu) * lambda)`.
    pub fn signed_area(&self) -> F {
        (self.mu.conj() * self.lambda).im
    }

    pub fn area(&self) -> F {
        self.signed_area().abs()
    }

    /// Same torus with both translations multiplied by `z`.
    pub fn scaled(&self, z: Complex<F>) -> Result<Self> {
        Self::new(self.mu * z, self.lambda * z)
    }
}

/// A slope on one cusp, or `Empty` for an unfilled cusp.
///
/// Primitive slopes are stored with `q > 0`, or as `(1, 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slope {
    Empty,
    Primitive { p: i64, q: i64 },
}

impl Slope {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p.gcd(&q) != 1 {
            return Err(Error::InvalidMultislope(format!("({p},{q}) is not primitive")));
        }
        Ok(if q < 0 || (q == 0 && p < 0) {
            Self::Primitive { p: -p, q: -q }
        } else {
            Self::Primitive { p, q }
        })
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Self::Empty)
    }

    pub fn pair(&self) -> Option<(i64, i64)> {
        match *self {
            Self::Empty => None,
            Self::Primitive { p, q } => Some((p, q)),
        }
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Empty => f.write_str("*"),
            Self::Primitive { p, q } => write!(f, "{p}/{q}"),
        }
    }
}

impl FromStr for Slope {
    type Err = Error;

    /// `*` for the empty slope, otherwise `p/q`, `p` or `inf`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "*" {
            return Ok(Self::Empty);
        }
        if t.eq_ignore_ascii_case("inf") {
            return Ok(Self::Primitive { p: 1, q: 0 });
        }
        let bad = || Error::Parse(format!("not a slope: `{s}`"));
        let (p, q) = match t.split_once('/') {
            Some((p, q)) => (
                p.trim().parse().map_err(|_| bad())?,
                q.trim().parse().map_err(|_| bad())?,
            ),
            None => (t.parse().map_err(|_| bad())?, 1),
        };
        Self::new(p, q)
    }
}

/// One slope per cusp.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multislope(pub Vec<Slope>);

impl Multislope {
    pub fn slopes(&self) -> &[Slope] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Multislope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl FromStr for Multislope {
    type Err = Error;

    /// Comma separated slopes, optionally in parentheses: `(*, 1/1, -2, 2, 1/2)`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(t);
        t.split(',').map(str::parse).collect::<Result<Vec<_>>>().map(Self)
    }
}

/// Length of a slope's geodesic on the cusp torus rescaled to area one.
/// The empty slope has infinite length.
pub fn normalized_length<F: Float>(s: &Slope, c: &CuspShape<F>) -> F {
    match s.pair() {
        None => F::infinity(),
        Some((p, q)) => {
            let (p, q) = (F::from(p).unwrap(), F::from(q).unwrap());
            (c.mu * p + c.lambda * q).norm() / c.area().sqrt()
        }
    }
}

fn check_len<F>(ms: &Multislope, cusps: &[CuspShape<F>]) -> Result<()> {
    if ms.len() != cusps.len() {
        return Err(Error::InvalidMultislope(format!(
            "{} slopes for {} cusps",
            ms.len(),
            cusps.len()
        )));
    }
    Ok(())
}

/// Combined length with `1/L² = Σ 1/Lⱼ²`.
pub fn multislope_length<F: Float>(ms: &Multislope, cusps: &[CuspShape<F>]) -> Result<F> {
    check_len(ms, cusps)?;
    let inv: F =
        ms.0.iter()
            .zip(cusps)
            .filter(|(s, _)| !s.is_empty())
            .map(|(s, c)| normalized_length(s, c).powi(-2))
            .fold(F::zero(), |a, b| a + b);
    Ok(if inv == F::zero() {
        F::infinity()
    } else {
        inv.sqrt().recip()
    })
}

/// Every slope with normalized length at most `n`, in slope order.
pub fn enumerate_short_slopes<F: Float>(c: &CuspShape<F>, n: F) -> Vec<Slope> {
    if n < F::zero() {
        return Vec::new();
    }
    let scale = n / c.area().sqrt();
    // |p| <= N |lambda| / sqrt(area) and |q| <= N |mu| / sqrt(area)
    let pmax = (scale * c.lambda.norm()).floor().to_i64().unwrap_or(0);
    let qmax = (scale * c.mu.norm()).floor().to_i64().unwrap_or(0);
    let mut out = Vec::new();
    for q in 0..=qmax {
        let lo = if q == 0 { 1 } else { -pmax };
        for p in lo..=pmax {
            if p.gcd(&q) != 1 {
                continue;
            }
            let s = Slope::Primitive { p, q };
            if normalized_length(&s, c) <= n {
                out.push(s);
            }
        }
    }
    out.sort();
    out
}

/// True when every filled cusp is longer than the universal constant.
pub fn hk_certify<F: Float>(ms: &Multislope, cusps: &[CuspShape<F>]) -> Result<bool> {
    check_len(ms, cusps)?;
    let c = F::from(HK_CONSTANT).unwrap();
    Ok(ms
        .0
        .iter()
        .zip(cusps)
        .filter(|(s, _)| !s.is_empty())
        .all(|(s, cusp)| normalized_length(s, cusp) > c))
}

/// An isometry of the cusped manifold, described by where it sends each cusp
/// and the induced map on that cusp's homology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsometryAction {
    pub perm: Vec<usize>,
    pub maps: Vec<[[i64; 2]; 2]>,
    pub orientation: i8,
}

impl IsometryAction {
    /// Fixes every cusp and every unoriented slope.
    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &j)| i == j)
            && self
                .maps
                .iter()
                .all(|m| m[0][1] == 0 && m[1][0] == 0 && m[0][0] == m[1][1] && m[0][0].abs() == 1)
    }

    /// Image of a slope on cusp `j`.
    pub fn map_slope(&self, j: usize, s: &Slope) -> Slope {
        match s.pair() {
            None => Slope::Empty,
            Some((p, q)) => {
                let m = self.maps[j];
                Slope::new(m[0][0] * p + m[0][1] * q, m[1][0] * p + m[1][1] * q)
                    .expect("unimodular maps preserve primitivity")
            }
        }
    }

    /// Slopes on a fixed cusp `j` that the action sends to themselves.
    /// `None` when every slope is preserved; empty when `j` is not fixed.
    pub fn preserved_slopes(&self, j: usize) -> Option<Vec<Slope>> {
        if self.perm[j] != j {
            return Some(Vec::new());
        }
        let [[a, b], [c, d]] = self.maps[j];
        let mut out = Vec::new();
        for e in [1, -1] {
            let rows = [[a - e, b], [c, d - e]];
            if rows == [[0, 0], [0, 0]] {
                return None;
            }
            for r in rows.iter().filter(|r| **r != [0, 0]) {
                // (r1, -r0) spans the kernel of a nonzero row
                let g = r[0].gcd(&r[1]);
                let (p, q) = (r[1] / g, -r[0] / g);
                if rows.iter().all(|row| row[0] * p + row[1] * q == 0) {
                    let s = Slope::new(p, q).expect("reduced pair");
                    if !out.contains(&s) {
                        out.push(s);
                    }
                }
            }
        }
        out.sort();
        Some(out)
    }
}

/// Apply an isometry to a multislope: the slope on cusp `j` moves to cusp `perm[j]`.
pub fn apply_isometry(g: &IsometryAction, ms: &Multislope) -> Result<Multislope> {
    if ms.len() != g.perm.len() {
        return Err(Error::InvalidMultislope(format!(
            "{} slopes for an action on {} cusps",
            ms.len(),
            g.perm.len()
        )));
    }
    let mut out = vec![Slope::Empty; ms.len()];
    for (j, s) in ms.0.iter().enumerate() {
        out[g.perm[j]] = g.map_slope(j, s);
    }
    Ok(Multislope(out))
}

/// Declared geometric data of a cusped hyperbolic manifold.
#[derive(Clone, Debug, PartialEq)]
pub struct CuspedManifoldData<F> {
    pub name: String,
    pub cusps: Vec<CuspShape<F>>,
    pub isometries: Vec<IsometryAction>,
}

/// True when no declared non-trivial isometry fixes `ms`.
pub fn is_symmetry_breaking<F: Float>(ms: &Multislope, data: &CuspedManifoldData<F>) -> Result<bool> {
    check_len(ms, &data.cusps)?;
    for g in data.isometries.iter().filter(|g| !g.is_identity()) {
        if apply_isometry(g, ms)? == *ms {
            return Ok(false);
        }
    }
    Ok(true)
}

fn slope_of<T: Int>(x: &ExtRatio<T>) -> Result<Slope> {
    let conv = |v: &T| {
        v.to_i64()
            .ok_or_else(|| Error::UnsupportedParameters(format!("{x} exceeds the slope range")))
    };
    Slope::new(conv(x.numer())?, conv(x.denom())?)
}

/// The multislope `(*, r-k, 1+s, 1+1/b, -1/k)` on the five-cusped chain link exterior.
pub fn family_multislope<T: Int>(r: &ExtRatio<T>, s: &ExtRatio<T>, b: &ExtRatio<T>, k: T) -> Result<Multislope> {
    let undefined = |e: Error| Error::UnsupportedParameters(e.to_string());
    let k = ExtRatio::from_integer(k);
    let parts = [
        r.checked_sub(&k).map_err(undefined)?,
        s.add_int(&T::one()),
        b.recip().add_int(&T::one()),
        -k.recip(),
    ];
    let mut slopes = vec![Slope::Empty];
    for x in &parts {
        slopes.push(slope_of(x)?);
    }
    Ok(Multislope(slopes))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCusp {
    mu: [f64; 2],
    lambda: [f64; 2],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawIsometry {
    perm: Vec<usize>,
    maps: Vec<[[i64; 2]; 2]>,
    orientation: i8,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawData {
    name: String,
    cusps: Vec<RawCusp>,
    #[serde(default)]
    isometries: Vec<RawIsometry>,
}

/// Parse and validate a JSON manifold description.
pub fn load_manifold_data<F: Float>(document: &str) -> Result<CuspedManifoldData<F>> {
    let raw: RawData = serde_json::from_str(document).map_err(|e| Error::InvalidData(e.to_string()))?;
    let f = |v: f64| F::from(v).unwrap();
    let cusps = raw
        .cusps
        .iter()
        .enumerate()
        .map(|(i, c)| {
            CuspShape::new(
                Complex::new(f(c.mu[0]), f(c.mu[1])),
                Complex::new(f(c.lambda[0]), f(c.lambda[1])),
            )
            .map_err(|e| Error::InvalidData(format!("cusp {i}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let n = cusps.len();
    let mut isometries = Vec::new();
    for (i, g) in raw.isometries.into_iter().enumerate() {
        let fail = |msg: String| Error::InvalidData(format!("isometry {i}: {msg}"));
        if g.perm.len() != n || g.maps.len() != n {
            return Err(fail(format!(
                "perm has {} entries and maps {} for {n} cusps",
                g.perm.len(),
                g.maps.len()
            )));
        }
        let mut seen = vec![false; n];
        for &j in &g.perm {
            if j >= n || std::mem::replace(&mut seen[j], true) {
                return Err(fail(format!("{:?} is not a permutation", g.perm)));
            }
        }
        for (j, m) in g.maps.iter().enumerate() {
            let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
            if det.abs() != 1 {
                return Err(fail(format!("map on cusp {j} has determinant {det}")));
            }
        }
        if g.orientation.abs() != 1 {
            return Err(fail(format!("orientation must be 1 or -1, got {}", g.orientation)));
        }
        isometries.push(IsometryAction {
            perm: g.perm,
            maps: g.maps,
            orientation: g.orientation,
        });
    }
    Ok(CuspedManifoldData {
        name: raw.name,
        cusps,
        isometries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cusp(mu: (f64, f64), lambda: (f64, f64)) -> CuspShape<f64> {
        CuspShape::new(Complex::new(mu.0, mu.1), Complex::new(lambda.0, lambda.1)).unwrap()
    }

    fn sq() -> CuspShape<f64> {
        cusp((1.0, 0.0), (0.0, 1.0))
    }

    fn sl(p: i64, q: i64) -> Slope {
        Slope::new(p, q).unwrap()
    }

    /// A cusp on which slope `(1,0)` has normalized length `len`.
    fn stretched(len: f64) -> CuspShape<f64> {
        cusp((len, 0.0), (0.0, 1.0 / len))
    }

    #[test]
    fn length_examples() {
        assert!((normalized_length(&sl(3, 4), &sq()) - 5.0).abs() < 1e-12);
        assert!((normalized_length(&sl(1, 0), &cusp((2.0, 0.0), (0.0, 2.0))) - 1.0).abs() < 1e-12);
        assert!(normalized_length(&Slope::Empty, &sq()).is_infinite());
        assert!(CuspShape::new(Complex::new(1.0, 0.0), Complex::new(2.0, 0.0)).is_err());
    }

    #[test]
    fn multislope_examples() {
        let cs = [stretched(10.0), stretched(10.0)];
        let both = Multislope(vec![sl(1, 0), sl(1, 0)]);
        assert!((multislope_length(&both, &cs).unwrap() - 10.0 / 2f64.sqrt()).abs() < 1e-10);
        let one = Multislope(vec![Slope::Empty, sl(1, 0)]);
        assert!((multislope_length(&one, &cs).unwrap() - 10.0).abs() < 1e-10);
        let none = Multislope(vec![Slope::Empty, Slope::Empty]);
        assert!(multislope_length(&none, &cs).unwrap().is_infinite());
        assert!(multislope_length(&none, &cs[..1]).is_err());
    }

    #[test]
    fn enumeration_examples() {
        let got = enumerate_short_slopes(&sq(), 2.5);
        let mut want = vec![
            sl(1, 0),
            sl(0, 1),
            sl(1, 1),
            sl(-1, 1),
            sl(2, 1),
            sl(-2, 1),
            sl(1, 2),
            sl(-1, 2),
        ];
        want.sort();
        assert_eq!(got, want);
        assert!(enumerate_short_slopes(&sq(), 0.5).is_empty());
        let skew = cusp((1.0, 0.0), (1.0, 1.0));
        let mut want = vec![sl(1, 0), sl(-1, 1)];
        want.sort();
        assert_eq!(enumerate_short_slopes(&skew, 1.2), want);
    }

    #[test]
    fn certification_examples() {
        let cs = [stretched(8.0), stretched(8.0)];
        let ms = Multislope(vec![sl(1, 0), sl(1, 0)]);
        assert!(hk_certify(&ms, &cs).unwrap());
        let cs = [stretched(8.0), stretched(7.0)];
        assert!(!hk_certify(&ms, &cs).unwrap());
        assert!(hk_certify(&Multislope(vec![Slope::Empty, Slope::Empty]), &cs).unwrap());
        let exact = [stretched(HK_CONSTANT)];
        let single = Multislope(vec![sl(1, 0)]);
        assert_eq!(normalized_length(&single.0[0], &exact[0]), HK_CONSTANT);
        assert!(!hk_certify(&single, &exact).unwrap());
    }

    #[test]
    fn slope_canonical_form() {
        assert_eq!(sl(-3, -4), sl(3, 4));
        assert_eq!(sl(-1, 0), sl(1, 0));
        assert!(Slope::new(2, 4).is_err());
        assert!(Slope::new(0, 0).is_err());
        assert_eq!("-2/1".parse::<Slope>().unwrap(), sl(-2, 1));
        assert_eq!("*".parse::<Slope>().unwrap(), Slope::Empty);
        let ms: Multislope = "(*, 1/1, -2, 2/1, 1/2)".parse().unwrap();
        assert_eq!(ms.to_string(), "(*, 1/1, -2/1, 2/1, 1/2)");
    }

    #[test]
    fn isometry_examples() {
        let ms = Multislope(vec![sl(1, 2), sl(3, 1)]);
        let id = IsometryAction {
            perm: vec![0, 1],
            maps: vec![[[1, 0], [0, 1]]; 2],
            orientation: 1,
        };
        assert!(id.is_identity());
        assert_eq!(apply_isometry(&id, &ms).unwrap(), ms);
        let swap = IsometryAction {
            perm: vec![1, 0],
            maps: vec![[[1, 0], [0, 1]]; 2],
            orientation: 1,
        };
        assert_eq!(
            apply_isometry(&swap, &ms).unwrap(),
            Multislope(vec![sl(3, 1), sl(1, 2)])
        );
        let refl = IsometryAction {
            perm: vec![0],
            maps: vec![[[1, 0], [0, -1]]],
            orientation: -1,
        };
        assert_eq!(
            apply_isometry(&refl, &Multislope(vec![sl(1, 0)])).unwrap().0,
            vec![sl(1, 0)]
        );
        let mut fixed = vec![sl(1, 0), sl(0, 1)];
        fixed.sort();
        assert_eq!(refl.preserved_slopes(0), Some(fixed));
        assert_eq!(id.preserved_slopes(1), None);
        assert_eq!(swap.preserved_slopes(0), Some(vec![]));
        assert!(apply_isometry(&refl, &ms).is_err());
    }

    #[test]
    fn symmetry_breaking_examples() {
        let cs = vec![sq(), sq()];
        let none = CuspedManifoldData {
            name: "a".into(),
            cusps: cs.clone(),
            isometries: vec![],
        };
        assert!(is_symmetry_breaking(&Multislope(vec![sl(1, 0), sl(1, 0)]), &none).unwrap());
        let swap = IsometryAction {
            perm: vec![1, 0],
            maps: vec![[[1, 0], [0, 1]]; 2],
            orientation: 1,
        };
        let data = CuspedManifoldData {
            name: "b".into(),
            cusps: cs,
            isometries: vec![swap],
        };
        assert!(!is_symmetry_breaking(&Multislope(vec![sl(2, 3), sl(2, 3)]), &data).unwrap());
        assert!(is_symmetry_breaking(&Multislope(vec![sl(-5, 2), sl(6, 5)]), &data).unwrap());
    }

    #[test]
    fn family_multislope_examples() {
        let q = |s: &str| s.parse::<crate::ExtRational>().unwrap();
        let ms = family_multislope(&q("-1"), &q("-3"), &q("1"), -2).unwrap();
        assert_eq!(
            ms,
            Multislope(vec![Slope::Empty, sl(1, 1), sl(-2, 1), sl(2, 1), sl(1, 2)])
        );
        let ms = family_multislope(&q("3"), &q("-3"), &q("1"), 3).unwrap();
        assert_eq!(ms.0[1], sl(0, 1));
        for n in [-4i128, -1, 2, 7] {
            let s = q("-4").checked_add(&crate::ExtRational::new(1, n).unwrap()).unwrap();
            let ms = family_multislope(&q("-1"), &s, &q("2"), 1).unwrap();
            assert_eq!(ms.0[2], Slope::new((1 - 3 * n) as i64, n as i64).unwrap());
        }
        let ms = family_multislope(&q("-1"), &q("-3"), &q("0"), 0).unwrap();
        assert_eq!((ms.0[3], ms.0[4]), (sl(1, 0), sl(1, 0)));
    }

    #[test]
    fn loading_rejects_bad_data() {
        let ok = r#"{"name":"x","cusps":[{"mu":[1,0],"lambda":[0,1]}],
                     "isometries":[{"perm":[0],"maps":[[[1,0],[0,-1]]],"orientation":-1}]}"#;
        let d = load_manifold_data::<f64>(ok).unwrap();
        assert_eq!((d.cusps.len(), d.isometries.len()), (1, 1));
        let det2 = ok.replace("[[1,0],[0,-1]]", "[[2,0],[0,1]]");
        assert!(matches!(load_manifold_data::<f64>(&det2), Err(Error::InvalidData(_))));
        let flat = ok.replace("\"lambda\":[0,1]", "\"lambda\":[3,0]");
        assert!(load_manifold_data::<f64>(&flat).is_err());
        let short = ok.replace("\"perm\":[0]", "\"perm\":[0,1]");
        assert!(load_manifold_data::<f64>(&short).is_err());
        assert!(load_manifold_data::<f64>("{\"name\":1}").is_err());
    }
}
