//! Closed-form evaluators for the knot family `K_k(m, r, s, b)`.
//!
//! `Y` is the ambient manifold containing the knot and `Y*` the result of the
//! surgery. `Y` is computed from fillings of the magic manifold when
//! `m = -1`, or from fillings of the Whitehead link exterior when `r = 0`;
//! `Y*` comes from explicit chain-link descriptions.

use std::fmt;

use crate::error::{Error, Result};
use crate::lens::{canonicalize, chain_eval, lens_from_surgery, ChainDescription, ClosedManifold, Orientation};
use crate::rational::{fold_entries, ExtRatio};
use crate::scalar::{int, Int};

/// Three slopes and the lens space `L(p,q)` they produce.
type SporadicFilling<T> = ([ExtRatio<T>; 3], (i64, i64));
/// First slope `m`, second slope `offset + 1/n`, and `(p, q)` as a function of `n`.
type WhiteheadRow<T> = (i64, i64, fn(T) -> (T, T));

/// Which hypotheses on `(m, r)` the parameters satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// `m = -1`, `r` arbitrary.
    MagicChain,
    /// `m` and `r` both integers (and `m != -1`).
    Integral,
    /// Neither; most evaluators refuse these.
    Unsupported,
}

/// The parameters `(m, r, s, b, k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FamilyParams<T> {
    pub m: ExtRatio<T>,
    pub r: ExtRatio<T>,
    pub s: ExtRatio<T>,
    pub b: ExtRatio<T>,
    pub k: T,
}

impl<T: Int> FamilyParams<T> {
    pub fn new(m: ExtRatio<T>, r: ExtRatio<T>, s: ExtRatio<T>, b: ExtRatio<T>, k: T) -> Self {
        Self { m, r, s, b, k }
    }

    /// Parse each coefficient from `p/q` or `inf` text.
    pub fn parse(m: &str, r: &str, s: &str, b: &str, k: &str) -> Result<Self> {
        let k = k
            .parse::<ExtRatio<T>>()?
            .to_integer()
            .ok_or_else(|| Error::Parse(format!("k must be an integer, got `{k}`")))?;
        Ok(Self::new(m.parse()?, r.parse()?, s.parse()?, b.parse()?, k))
    }

    pub fn regime(&self) -> Regime {
        if self.m == minus_one() {
            Regime::MagicChain
        } else if self.m.is_integer() && self.r.is_integer() {
            Regime::Integral
        } else {
            Regime::Unsupported
        }
    }
}

impl<T: Int> fmt::Display for FamilyParams<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{},{})", self.m, self.r, self.s, self.b, self.k)
    }
}

fn q<T: Int>(v: i64) -> ExtRatio<T> {
    ExtRatio::from_integer(int(v))
}

fn minus_one<T: Int>() -> ExtRatio<T> {
    q(-1)
}

/// If `x - base = 1/n` for a nonzero integer `n`, return `n`.
fn unit_offset<T: Int>(x: &ExtRatio<T>, base: &ExtRatio<T>) -> Option<T> {
    if x.is_infinite() || base.is_infinite() {
        return None;
    }
    let d = x.checked_sub(base).ok()?;
    (d.numer().abs().is_one()).then(|| d.denom().clone() * d.numer().clone())
}

/// The parametrized rows of the table of exceptional magic fillings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MagicPattern {
    /// `N(-3, -1, t/u) = L(2,1) # L(t+3u, u)`
    A,
    /// `N(-3, -2, t/u) = L(5t+7u, 2t+3u)`
    B,
    /// `N(-3, -1+1/n, -1+1/m) = L((2n+1)(2m+1)-4, (2n+1)m-2)`
    C,
    /// `N(-2, -2, t/u) = L(3,1) # L(t+2u, u)`
    D,
    /// `N(-2, -2+1/n, t/u) = L(3n(t+2u)-2t-u, n(t+2u)-t-u)`
    E,
    /// `N(-1, -3+1/n, t/u) = L(2n(t+3u)-t-u, n(t+3u)-t-2u)`
    F,
    /// `N(0, n, -4-n) = L(2,1) # L(3,1)`
    G,
    /// `N(0, n, -4-n+1/m) = L(6m-1, 2m-1)`
    H,
    /// One of the four sporadic triples.
    Sporadic,
}

/// A successful match of one ordering of the arguments against one pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MagicMatch<T> {
    pub pattern: MagicPattern,
    pub args: [ExtRatio<T>; 3],
    pub result: ClosedManifold<T>,
}

fn lens_sum<T: Int>(parts: &[(T, T)]) -> Result<ClosedManifold<T>> {
    parts.iter().try_fold(ClosedManifold::sphere(), |acc, (p, q)| {
        Ok(acc.connected_sum(&canonicalize(p.clone(), q.clone())?))
    })
}

fn match_ordered<T: Int>(
    a: &ExtRatio<T>,
    b: &ExtRatio<T>,
    c: &ExtRatio<T>,
) -> Result<Vec<(MagicPattern, ClosedManifold<T>)>> {
    use MagicPattern::*;
    let i = int::<T>;
    let mut out = Vec::new();
    let tu = (!c.is_infinite()).then(|| (c.numer().clone(), c.denom().clone()));

    if let Some((t, u)) = tu.clone() {
        if *a == q(-3) && *b == q(-1) {
            out.push((A, lens_sum(&[(i(2), i(1)), (t.clone() + i(3) * u.clone(), u.clone())])?));
        }
        if *a == q(-3) && *b == q(-2) {
            out.push((
                B,
                lens_sum(&[(i(5) * t.clone() + i(7) * u.clone(), i(2) * t.clone() + i(3) * u.clone())])?,
            ));
        }
        if *a == q(-2) && *b == q(-2) {
            out.push((D, lens_sum(&[(i(3), i(1)), (t.clone() + i(2) * u.clone(), u.clone())])?));
        }
        if *a == q(-2) {
            if let Some(n) = unit_offset(b, &q(-2)) {
                let w = t.clone() + i(2) * u.clone();
                out.push((
                    E,
                    lens_sum(&[(
                        i(3) * n.clone() * w.clone() - i(2) * t.clone() - u.clone(),
                        n * w - t.clone() - u.clone(),
                    )])?,
                ));
            }
        }
        if *a == q(-1) {
            if let Some(n) = unit_offset(b, &q(-3)) {
                let w = t.clone() + i(3) * u.clone();
                out.push((
                    F,
                    lens_sum(&[(
                        i(2) * n.clone() * w.clone() - t.clone() - u.clone(),
                        n * w - t.clone() - i(2) * u.clone(),
                    )])?,
                ));
            }
        }
    }
    if *a == q(-3) {
        if let (Some(n), Some(m)) = (unit_offset(b, &q(-1)), unit_offset(c, &q(-1))) {
            let a2 = i(2) * n + i(1);
            out.push((
                C,
                lens_sum(&[(a2.clone() * (i(2) * m.clone() + i(1)) - i(4), a2 * m - i(2))])?,
            ));
        }
    }
    if a.is_zero() {
        if let Some(n) = b.to_integer() {
            let base = q::<T>(-4).add_int(&-n);
            if *c == base {
                out.push((G, lens_sum(&[(i(2), i(1)), (i(3), i(1))])?));
            }
            if let Some(m) = unit_offset(c, &base) {
                out.push((H, lens_sum(&[(i(6) * m.clone() - i(1), i(2) * m - i(1))])?));
            }
        }
    }
    let half = |n: i64| ExtRatio::new(int::<T>(n), int(2)).expect("nonzero denominator");
    let sporadic: [SporadicFilling<T>; 4] = [
        ([half(-3), half(-5), q(-2)], (2, 1)),
        ([half(-3), half(-5), q(-1)], (13, 5)),
        ([q(-4), half(-1), q(-1)], (11, 3)),
        ([q(-4), half(-1), q(0)], (13, 5)),
    ];
    for (key, (p, qq)) in sporadic {
        if [a, b, c] == [&key[0], &key[1], &key[2]] {
            out.push((Sporadic, lens_sum(&[(i(p), i(qq))])?));
        }
    }
    Ok(out)
}

const ORDERINGS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Every (ordering, pattern) pair that matches the triple.
pub fn magic_matches<T: Int>(
    alpha: &ExtRatio<T>,
    beta: &ExtRatio<T>,
    gamma: &ExtRatio<T>,
) -> Result<Vec<MagicMatch<T>>> {
    let xs = [alpha, beta, gamma];
    let mut out: Vec<MagicMatch<T>> = Vec::new();
    for o in ORDERINGS {
        let args = [xs[o[0]].clone(), xs[o[1]].clone(), xs[o[2]].clone()];
        for (pattern, result) in match_ordered(&args[0], &args[1], &args[2])? {
            let m = MagicMatch {
                pattern,
                args: args.clone(),
                result,
            };
            if !out.contains(&m) {
                out.push(m);
            }
        }
    }
    Ok(out)
}

/// Filling of the magic manifold, when some ordering of the slopes matches a
/// tabulated pattern. Disagreeing matches are reported as an error.
pub fn magic_filling<T: Int>(
    alpha: &ExtRatio<T>,
    beta: &ExtRatio<T>,
    gamma: &ExtRatio<T>,
) -> Result<Option<ClosedManifold<T>>> {
    let matches = magic_matches(alpha, beta, gamma)?;
    let Some(first) = matches.first() else {
        return Ok(None);
    };
    if let Some(bad) = matches
        .iter()
        .find(|m| !m.result.is_homeomorphic(&first.result, Orientation::Unoriented))
    {
        return Err(Error::MagicInconsistency {
            args: format!("{alpha},{beta},{gamma}"),
            left: first.result.to_string(),
            right: bad.result.to_string(),
        });
    }
    Ok(Some(first.result.clone()))
}

/// Lens-space fillings of the Whitehead link exterior. Symmetric in its
/// arguments; `None` when neither ordering matches.
pub fn whitehead_filling<T: Int>(alpha: &ExtRatio<T>, beta: &ExtRatio<T>) -> Option<ClosedManifold<T>> {
    for (x, y) in [(alpha, beta), (beta, alpha)] {
        if y.is_infinite() {
            return Some(lens_from_surgery(x));
        }
    }
    let rows: [WhiteheadRow<T>; 3] = [
        (-1, -6, |n| (int::<T>(6) * n.clone() - int(1), int::<T>(2) * n - int(1))),
        (-2, -4, |n| (int::<T>(8) * n.clone() - int(2), int::<T>(2) * n - int(1))),
        (-3, -3, |n| (int::<T>(9) * n.clone() - int(3), int::<T>(3) * n - int(2))),
    ];
    for (x, y) in [(alpha, beta), (beta, alpha)] {
        for (m, offset, f) in rows {
            if *x == q(m) {
                if let Some(n) = unit_offset(y, &q(offset)) {
                    let (p, qq) = f(n);
                    return canonicalize(p, qq).ok();
                }
            }
        }
    }
    None
}

/// The manifold `Y(m, r, s, b)` in which the knot lives, when a closed form
/// is known: magic fillings for `m = -1`, Whitehead fillings for `r = 0`
/// with integral `s`.
pub fn compute_y<T: Int>(p: &FamilyParams<T>) -> Result<Option<ClosedManifold<T>>> {
    let one = q::<T>(1);
    if p.m == minus_one() {
        return magic_filling(&p.r, &p.s.checked_add(&one)?, &p.b.recip().checked_add(&one)?);
    }
    if p.r.is_zero() && p.s.is_integer() {
        return Ok(whitehead_filling(&p.m, &p.s.checked_add(&p.b.recip())?));
    }
    Ok(None)
}

/// The chain description of `Y*_k(m, r, s, b)`.
pub fn ystar_chain<T: Int>(p: &FamilyParams<T>) -> Result<ChainDescription<T>> {
    let k = ExtRatio::from_integer(p.k.clone());
    let nb = (-p.b.clone()).add_int(&int(-1));
    if p.m == minus_one() {
        let one_minus_k = (-k.clone()).add_int(&int(1));
        return Ok(ChainDescription::new(vec![
            p.s.clone(),
            nb,
            k,
            one_minus_k,
            q(0),
            p.r.clone(),
        ]));
    }
    if p.r.is_zero() && p.m.is_integer() && p.s.is_integer() {
        let k_minus_1 = k.add_int(&int(-1));
        return Ok(ChainDescription::new(vec![-k, p.m.clone(), k_minus_1, nb, p.s.clone()]));
    }
    Err(Error::UnsupportedParameters(format!(
        "no chain description for {p}: need m = -1, or r = 0 with integral m and s"
    )))
}

/// The result `Y*_k(m, r, s, b)` of the surgery.
pub fn compute_ystar<T: Int>(p: &FamilyParams<T>) -> Result<ClosedManifold<T>> {
    chain_eval(&ystar_chain(p)?)
}

/// Slope of the cable space for integral `m` and `r`, from the five-term word.
pub fn cable_slope_integral<T: Int>(m: &T, r: &T, k: &T) -> ExtRatio<T> {
    let one = T::one();
    let entries = [
        one.clone(),
        k.clone() + one.clone(),
        r.clone() + one.clone(),
        m.clone() + one,
        -k.clone(),
    ];
    fold_entries(&entries.map(ExtRatio::from_integer)).expect("finite entries always fold")
}

/// Slope of the cable space for `m = -1`, from the three-term word.
pub fn cable_slope_magic<T: Int>(r: &ExtRatio<T>, k: &T) -> Result<ExtRatio<T>> {
    let entries = [
        q(1),
        ExtRatio::from_integer(k.clone() + T::one()),
        r.add_int(&(T::one() - k.clone())),
    ];
    fold_entries(&entries)
}

/// Slope `x` such that the relevant piece of the knot exterior is the cable space `A(x)`.
pub fn cable_slope<T: Int>(m: &ExtRatio<T>, r: &ExtRatio<T>, k: &T) -> Result<ExtRatio<T>> {
    if *m == minus_one() {
        return cable_slope_magic(r, k);
    }
    match (m.to_integer(), r.to_integer()) {
        (Some(m), Some(r)) => Ok(cable_slope_integral(&m, &r, k)),
        _ => Err(Error::UnsupportedParameters(format!(
            "cable slope needs m = -1 or integral m and r, got m = {m}, r = {r}"
        ))),
    }
}

/// What kind of manifold the cable space `A(p/q)` is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CableSpaceKind<T> {
    /// Exterior of a `(p, q')` torus knot in a solid torus, `q q' ≡ -1 mod p`.
    TorusKnotExterior {
        p: T,
        qprime: T,
    },
    ThickenedTorus,
    TwoSolidTori,
}

impl<T: Int> fmt::Display for CableSpaceKind<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::TorusKnotExterior { p, qprime } => write!(f, "TorusKnotExterior({p},{qprime})"),
            Self::ThickenedTorus => f.write_str("ThickenedTorus"),
            Self::TwoSolidTori => f.write_str("TwoSolidTori"),
        }
    }
}

pub fn classify_cable<T: Int>(x: &ExtRatio<T>) -> CableSpaceKind<T> {
    let (p, qq) = if x.numer().is_negative() {
        (-x.numer().clone(), -x.denom().clone())
    } else {
        (x.numer().clone(), x.denom().clone())
    };
    if p.is_zero() {
        return CableSpaceKind::TwoSolidTori;
    }
    if p.is_one() {
        return CableSpaceKind::ThickenedTorus;
    }
    let inv = qq.extended_gcd(&p);
    let qprime = (-(inv.x * inv.gcd)).mod_floor(&p);
    CableSpaceKind::TorusKnotExterior { p, qprime }
}

/// Longitudinal or meridional jointly primitive presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PresentationKind {
    Ljp,
    Mjp,
}

pub fn presentation_kind<T: Int>(p: &FamilyParams<T>) -> Result<PresentationKind> {
    if p.regime() == Regime::Unsupported {
        return Err(Error::UnsupportedParameters(format!(
            "{p} is not jointly primitive: need m = -1 or integral m and r"
        )));
    }
    if p.b.is_infinite() {
        Ok(PresentationKind::Mjp)
    } else if p.b.is_integer() {
        Ok(PresentationKind::Ljp)
    } else {
        Err(Error::UnsupportedParameters(format!(
            "b = {} is neither integral nor ∞",
            p.b
        )))
    }
}

/// Sufficient condition for strong invertibility. `false` means only that
/// the criterion does not apply.
pub fn strongly_invertible_guaranteed<T: Int>(p: &FamilyParams<T>) -> bool {
    let s_set = [q(0), q(-1), q(-2), ExtRatio::infinity()];
    let half = ExtRatio::new(int::<T>(-1), int(2)).expect("nonzero denominator");
    let b_set = [ExtRatio::infinity(), q(-1), half, q(0)];
    s_set.contains(&p.s) || b_set.contains(&p.b)
}

/// Two-parameter lens space families `L[3,x,3,y]` and `L[2,x,4,y]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LensFamily {
    F33,
    F24,
}

impl LensFamily {
    fn coefficients(self) -> (i64, i64) {
        match self {
            Self::F33 => (3, 3),
            Self::F24 => (2, 4),
        }
    }

    /// `(P, Q)` with `L[a,x,c,y] = L(P, Q)`.
    pub fn closed_form<T: Int>(self, x: &T, y: &T) -> (T, T) {
        let (a, c) = self.coefficients();
        let w = int::<T>(1) - int::<T>(c) * y.clone();
        (
            int::<T>(a) * x.clone() * w.clone() + int::<T>(6) * y.clone() - int(1),
            x.clone() * w + y.clone(),
        )
    }

    /// The chain `[a, x, c, y]`.
    pub fn chain<T: Int>(self, x: &T, y: &T) -> ChainDescription<T> {
        let (a, c) = self.coefficients();
        ChainDescription::from_integers([int(a), x.clone(), int(c), y.clone()])
    }

    /// Orders the closed form can never reach: those divisible by `a`.
    fn obstructed<T: Int>(self, order: &T) -> bool {
        order.is_multiple_of(&int(self.coefficients().0))
    }
}

fn single_lens<T: Int>(target: &ClosedManifold<T>) -> Result<T> {
    target
        .as_lens()
        .map(|(p, _)| p.clone())
        .ok_or_else(|| Error::UnsupportedParameters(format!("{target} is not a single lens space")))
}

/// Every `(x, y)` with `L[a,x,c,y]` homeomorphic to `target`, in order of increasing `y`.
pub fn realizations<T: Int>(target: &ClosedManifold<T>, family: LensFamily) -> Result<Vec<(T, T)>> {
    let p = single_lens(target)?;
    if family.obstructed(&p) {
        return Ok(Vec::new());
    }
    let (a, c) = family.coefficients();
    let bound = p.clone() + int(2);
    let mut out = Vec::new();
    let mut y = -bound.clone();
    while y <= bound {
        let denom = int::<T>(a) * (int::<T>(1) - int::<T>(c) * y.clone());
        for order in [p.clone(), -p.clone()] {
            let num = order - int::<T>(6) * y.clone() + int(1);
            if num.is_multiple_of(&denom) {
                let x = num / denom.clone();
                let (pp, qq) = family.closed_form(&x, &y);
                if canonicalize(pp, qq).is_ok_and(|m| m.is_homeomorphic(target, Orientation::Unoriented)) {
                    out.push((x, y.clone()));
                }
            }
        }
        y = y + T::one();
    }
    Ok(out)
}

/// First witness from [`realizations`], or `None` when the target is not in the family.
pub fn realizable_as<T: Int>(target: &ClosedManifold<T>, family: LensFamily) -> Result<Option<(T, T)>> {
    Ok(realizations(target, family)?.into_iter().next())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lens::Orientation::*;

    type Q = ExtRatio<i64>;
    type M = ClosedManifold<i64>;

    fn x(s: &str) -> Q {
        s.parse().unwrap()
    }

    fn l(p: i64, q: i64) -> M {
        canonicalize(p, q).unwrap()
    }

    fn params(m: &str, r: &str, s: &str, b: &str, k: i64) -> FamilyParams<i64> {
        FamilyParams::parse(m, r, s, b, &k.to_string()).unwrap()
    }

    fn magic(a: &str, b: &str, c: &str) -> Option<M> {
        magic_filling(&x(a), &x(b), &x(c)).unwrap()
    }

    #[test]
    fn magic_examples() {
        assert_eq!(magic("-3", "-2", "1"), Some(l(12, 5)));
        assert_eq!(magic("-1", "-2", "2"), Some(l(7, 1)));
        assert_eq!(magic("0", "5", "-9"), Some(l(2, 1).connected_sum(&l(3, 1))));
        assert_eq!(magic("-5/2", "-2", "-3/2"), Some(l(2, 1)));
        assert_eq!(magic("-1/2", "-4", "0"), Some(l(13, 5)));
        assert_eq!(magic("7", "8", "9"), None);
        assert_eq!(magic("-3", "-2", "inf"), None);
    }

    #[test]
    fn magic_patterns_report_orderings() {
        let m = magic_matches(&x("2"), &x("-2"), &x("-1")).unwrap();
        assert!(m.iter().any(|m| m.pattern == MagicPattern::E));
        assert!(m.iter().all(|m| m.result.is_homeomorphic(&l(7, 1), Unoriented)));
    }

    #[test]
    fn whitehead_examples() {
        assert_eq!(whitehead_filling(&x("-1"), &x("-11/2")), Some(l(11, 3)));
        assert_eq!(whitehead_filling(&x("-3"), &x("-2")), Some(l(6, 1)));
        assert_eq!(whitehead_filling(&x("-2"), &x("-3")), Some(l(6, 1)));
        assert_eq!(
            whitehead_filling(&x("7/3"), &Q::infinity()),
            Some(lens_from_surgery(&x("7/3")))
        );
        assert_eq!(whitehead_filling(&Q::infinity(), &x("-5")), Some(l(5, 1)));
        assert_eq!(whitehead_filling(&x("-1"), &x("-6")), None);
        // negative order normalised: n = -1 gives L(-7,-3) = L(7,3)
        assert_eq!(whitehead_filling(&x("-1"), &x("-7")), Some(l(7, 3)));
    }

    #[test]
    fn y_examples() {
        assert_eq!(compute_y(&params("-1", "-1", "-3", "1", 0)).unwrap(), Some(l(7, 1)));
        assert_eq!(compute_y(&params("-2", "0", "-4", "1", 0)).unwrap(), Some(l(6, 1)));
        assert_eq!(compute_y(&params("-1", "-2", "-5/2", "-2", 0)).unwrap(), Some(l(26, 7)));
        assert_eq!(compute_y(&params("-2", "1", "-4", "1", 0)).unwrap(), None);
    }

    #[test]
    fn ystar_examples() {
        let v = compute_ystar(&params("-1", "-1", "-3", "1", -2)).unwrap();
        assert_eq!(v, l(19, 8));
        assert!(v.is_homeomorphic(&l(19, 7), Unoriented));
        assert_eq!(compute_ystar(&params("-1", "-2", "-5/2", "-2", 1)).unwrap(), l(11, 2));
        let y = compute_ystar(&params("-1", "-1", "-4", "inf", 2)).unwrap();
        assert_eq!(y.summands().len(), 2);
        assert!(matches!(
            compute_ystar(&params("-2", "1", "-4", "1", 0)),
            Err(Error::UnsupportedParameters(_))
        ));
        assert!(matches!(
            compute_ystar(&params("-1", "-1", "-4", "1/2", 0)),
            Err(Error::InvalidChain(_))
        ));
    }

    #[test]
    fn cable_examples() {
        assert_eq!(cable_slope(&x("-1"), &x("-2"), &-2).unwrap(), x("3/2"));
        assert_eq!(cable_slope(&x("-1"), &x("-1"), &1).unwrap(), x("2/3"));
        assert_eq!(cable_slope_integral(&-1, &-2, &-2), x("3/2"));
        assert_eq!(cable_slope(&x("-1"), &Q::infinity(), &3).unwrap(), x("3/4"));
        assert!(cable_slope(&x("-1/2"), &x("1"), &1).is_err());
        assert!(cable_slope(&x("2"), &x("1/2"), &1).is_err());
    }

    #[test]
    fn cable_kinds() {
        assert_eq!(
            classify_cable(&x("3/2")),
            CableSpaceKind::TorusKnotExterior { p: 3, qprime: 1 }
        );
        assert_eq!(
            classify_cable(&x("-3/2")),
            CableSpaceKind::TorusKnotExterior { p: 3, qprime: 2 }
        );
        assert_eq!(classify_cable(&x("1/5")), CableSpaceKind::ThickenedTorus);
        assert_eq!(classify_cable(&Q::infinity()), CableSpaceKind::ThickenedTorus);
        assert_eq!(classify_cable(&x("0")), CableSpaceKind::TwoSolidTori);
    }

    #[test]
    fn presentation_examples() {
        assert_eq!(
            presentation_kind(&params("-1", "-1", "-3", "5", 0)).unwrap(),
            PresentationKind::Ljp
        );
        assert_eq!(
            presentation_kind(&params("-2", "0", "-3", "inf", 0)).unwrap(),
            PresentationKind::Mjp
        );
        assert!(presentation_kind(&params("-1/2", "1", "-3", "5", 0)).is_err());
        assert!(presentation_kind(&params("-1", "1", "-3", "5/2", 0)).is_err());
    }

    #[test]
    fn strong_inversion_examples() {
        assert!(strongly_invertible_guaranteed(&params("-1", "-1", "-2", "5", 0)));
        assert!(strongly_invertible_guaranteed(&params("-1", "-1", "-3", "inf", 0)));
        assert!(strongly_invertible_guaranteed(&params("-1", "-1", "-3", "-1/2", 0)));
        assert!(!strongly_invertible_guaranteed(&params("-1", "-1", "-11/3", "5", 0)));
    }

    #[test]
    fn realizability_examples() {
        let target = l(111, 68);
        assert_eq!(realizable_as(&target, LensFamily::F24).unwrap(), None);
        assert_eq!(realizable_as(&target, LensFamily::F33).unwrap(), None);
        let small = l(5, 3);
        let (p, qq) = LensFamily::F33.closed_form(&1, &-1);
        assert_eq!(canonicalize(p, qq).unwrap(), small);
        assert!(realizations(&small, LensFamily::F33).unwrap().contains(&(1, -1)));
        assert!(realizable_as(&small, LensFamily::F33).unwrap().is_some());
        assert!(realizable_as(&M::sphere(), LensFamily::F33).is_err());
        assert!(realizable_as(&l(2, 1).connected_sum(&l(3, 1)), LensFamily::F24).is_err());
    }

    #[test]
    fn closed_forms_match_chains() {
        for fam in [LensFamily::F33, LensFamily::F24] {
            for xx in -6..=6 {
                for yy in -6..=6 {
                    let (p, qq) = fam.closed_form(&xx, &yy);
                    let chain = chain_eval(&fam.chain(&xx, &yy)).unwrap();
                    assert!(canonicalize(p, qq).unwrap().is_homeomorphic(&chain, Unoriented));
                }
            }
        }
    }
}
