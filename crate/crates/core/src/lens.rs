//! Lens spaces, their connected sums, and surgery on linear chain links.
//!
//! `L(p,q)` is the result of `-p/q` surgery on the unknot. A chain
//! `[a1, ..., an]` produces the lens space whose fraction is the negative
//! continued fraction of its coefficients; `∞` entries delete a component
//! and split the chain into a connected sum.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rational::{cf_expand, fold_entries, ExtRatio};
use crate::scalar::{parse_int, Int};

/// A prime summand. `Lens { p, q }` always has `p > 1` and `q` the smaller
/// representative of its oriented class `{q, q⁻¹} mod p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Prime<T> {
    Lens { p: T, q: T },
    S1xS2,
}

/// Whether homeomorphisms must preserve orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Oriented,
    Unoriented,
}

/// A connected sum of primes in normal form; no summands means `S³`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClosedManifold<T> {
    summands: Vec<Prime<T>>,
}

/// Canonical oriented form of `L(p,q)`.
///
/// Returns a manifold rather than a bare prime because `p = ±1` gives `S³`.
pub fn canonicalize<T: Int>(p: T, q: T) -> Result<ClosedManifold<T>> {
    let not_coprime = |p: &T, q: &T| Error::NotCoprime {
        p: p.to_string(),
        q: q.to_string(),
    };
    let (p, q) = if p.is_negative() { (-p, -q) } else { (p, q) };
    if p.is_zero() {
        return if q.abs().is_one() {
            Ok(ClosedManifold::s1xs2())
        } else {
            Err(not_coprime(&p, &q))
        };
    }
    if p.is_one() {
        return Ok(ClosedManifold::sphere());
    }
    let ext = q.extended_gcd(&p);
    if !ext.gcd.abs().is_one() {
        return Err(not_coprime(&p, &q));
    }
    let q1 = q.mod_floor(&p);
    let q2 = (ext.x * ext.gcd).mod_floor(&p);
    let q = if q1 <= q2 { q1 } else { q2 };
    Ok(ClosedManifold {
        summands: vec![Prime::Lens { p, q }],
    })
}

/// `x`-surgery on the unknot, with `x = -p/q`.
pub fn lens_from_surgery<T: Int>(x: &ExtRatio<T>) -> ClosedManifold<T> {
    canonicalize(-x.numer().clone(), x.denom().clone()).expect("a reduced fraction always has coprime terms")
}

impl<T: Int> ClosedManifold<T> {
    pub fn sphere() -> Self {
        Self { summands: Vec::new() }
    }

    pub fn s1xs2() -> Self {
        Self {
            summands: vec![Prime::S1xS2],
        }
    }

    /// Same as [`canonicalize`].
    pub fn lens(p: T, q: T) -> Result<Self> {
        canonicalize(p, q)
    }

    pub fn summands(&self) -> &[Prime<T>] {
        &self.summands
    }

    pub fn is_sphere(&self) -> bool {
        self.summands.is_empty()
    }

    /// `(p, q)` when this is a single lens space.
    pub fn as_lens(&self) -> Option<(&T, &T)> {
        match self.summands.as_slice() {
            [Prime::Lens { p, q }] => Some((p, q)),
            _ => None,
        }
    }

    pub fn connected_sum(&self, other: &Self) -> Self {
        let mut summands = self.summands.clone();
        summands.extend(other.summands.iter().cloned());
        summands.sort();
        Self { summands }
    }

    /// Reverse the orientation of every summand.
    pub fn mirror(&self) -> Self {
        self.summands.iter().fold(Self::sphere(), |acc, s| {
            let m = match s {
                Prime::Lens { p, q } => canonicalize(p.clone(), -q.clone()).expect("canonical summands are coprime"),
                Prime::S1xS2 => Self::s1xs2(),
            };
            acc.connected_sum(&m)
        })
    }

    /// Order of first homology; zero when an `S¹×S²` summand is present.
    pub fn h1_order(&self) -> T {
        self.summands.iter().fold(T::one(), |acc, s| match s {
            Prime::Lens { p, .. } => acc * p.clone(),
            Prime::S1xS2 => T::zero(),
        })
    }

    /// Homeomorphism test. Unoriented mode allows one global mirror.
    pub fn is_homeomorphic(&self, other: &Self, mode: Orientation) -> bool {
        self == other || (mode == Orientation::Unoriented && self.mirror() == *other)
    }
}

pub fn is_homeomorphic<T: Int>(a: &ClosedManifold<T>, b: &ClosedManifold<T>, mode: Orientation) -> bool {
    a.is_homeomorphic(b, mode)
}

pub fn mirror<T: Int>(a: &ClosedManifold<T>) -> ClosedManifold<T> {
    a.mirror()
}

pub fn h1_order<T: Int>(a: &ClosedManifold<T>) -> T {
    a.h1_order()
}

impl<T: Int> fmt::Display for ClosedManifold<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return f.write_str("S3");
        }
        for (i, s) in self.summands.iter().enumerate() {
            if i > 0 {
                f.write_str("#")?;
            }
            match s {
                Prime::Lens { p, q } => write!(f, "L({p},{q})")?,
                Prime::S1xS2 => f.write_str("S1xS2")?,
            }
        }
        Ok(())
    }
}

impl<T: Int> FromStr for ClosedManifold<T> {
    type Err = Error;

    /// Parses `S3`, `S1xS2`, `L(p,q)` and `#`-joined sums of these.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a manifold: `{s}`"));
        s.split('#').try_fold(Self::sphere(), |acc, part| {
            let part: String = part.chars().filter(|c| !c.is_whitespace()).collect();
            let m = match part.as_str() {
                "S3" => Self::sphere(),
                "S1xS2" => Self::s1xs2(),
                _ => {
                    let inner = part
                        .strip_prefix("L(")
                        .and_then(|t| t.strip_suffix(')'))
                        .ok_or_else(bad)?;
                    let (p, q) = inner.split_once(',').ok_or_else(bad)?;
                    let p = parse_int::<T>(p).ok_or_else(bad)?;
                    let q = parse_int::<T>(q).ok_or_else(bad)?;
                    canonicalize(p, q)?
                }
            };
            Ok(acc.connected_sum(&m))
        })
    }
}

/// Surgery coefficients on a linear chain link, `∞` entries allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainDescription<T> {
    coefficients: Vec<ExtRatio<T>>,
}

impl<T: Int> ChainDescription<T> {
    pub fn new(coefficients: Vec<ExtRatio<T>>) -> Self {
        Self { coefficients }
    }

    pub fn from_integers<I: IntoIterator<Item = T>>(entries: I) -> Self {
        Self::new(entries.into_iter().map(ExtRatio::from_integer).collect())
    }

    pub fn coefficients(&self) -> &[ExtRatio<T>] {
        &self.coefficients
    }

    pub fn reversed(&self) -> Self {
        Self::new(self.coefficients.iter().rev().cloned().collect())
    }

    /// Maximal runs between `∞` entries (possibly empty).
    pub fn segments(&self) -> impl Iterator<Item = &[ExtRatio<T>]> {
        self.coefficients.split(ExtRatio::is_infinite)
    }

    pub fn eval(&self) -> Result<ClosedManifold<T>> {
        chain_eval(self)
    }
}

impl<T: Int> fmt::Display for ChainDescription<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coefficients.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl<T: Int> FromStr for ChainDescription<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t.strip_prefix('[').and_then(|t| t.strip_suffix(']')).unwrap_or(t);
        if t.trim().is_empty() {
            return Ok(Self::new(Vec::new()));
        }
        t.split(',').map(str::parse).collect::<Result<Vec<_>>>().map(Self::new)
    }
}

fn eval_segment<T: Int>(seg: &[ExtRatio<T>]) -> Result<ClosedManifold<T>> {
    let Some(head) = seg.first() else {
        return Ok(ClosedManifold::sphere());
    };
    let mut entries: Vec<ExtRatio<T>> = Vec::with_capacity(seg.len() + 4);
    if head.is_integer() {
        entries.push(head.clone());
    } else {
        entries.extend(cf_expand(head)?.into_iter().rev().map(ExtRatio::from_integer));
    }
    entries.extend_from_slice(&seg[1..]);
    if let Some(bad) = entries[..entries.len() - 1].iter().find(|e| !e.is_integer()) {
        return Err(Error::InvalidChain(format!(
            "non-integral interior coefficient {bad} in segment"
        )));
    }
    Ok(lens_from_surgery(&fold_entries(&entries)?))
}

/// Evaluate surgery on a chain link.
///
/// A rational first entry of a segment is replaced by its reversed
/// expansion before folding, since only integer-framed components may
/// survive a slam dunk. A rational last entry folds directly.
pub fn chain_eval<T: Int>(c: &ChainDescription<T>) -> Result<ClosedManifold<T>> {
    c.segments().try_fold(ClosedManifold::sphere(), |acc, seg| {
        Ok(acc.connected_sum(&eval_segment(seg)?))
    })
}

/// `|H₁|` from the linking matrix: diagonal `pᵢ`, off-diagonals `qᵢ`
/// for coefficients `pᵢ/qᵢ`. Computed by fraction-free elimination, so it
/// shares no code with [`chain_eval`].
pub fn chain_h1_oracle<T: Int>(c: &ChainDescription<T>) -> T {
    let n = c.coefficients.len();
    let mut m = vec![vec![T::zero(); n]; n];
    for (i, x) in c.coefficients.iter().enumerate() {
        m[i][i] = x.numer().clone();
        if i > 0 {
            m[i][i - 1] = x.denom().clone();
        }
        if i + 1 < n {
            m[i][i + 1] = x.denom().clone();
        }
    }
    bareiss_det(m).abs()
}

fn bareiss_det<T: Int>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].clone() * m[k][k].clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = v / prev.clone();
            }
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        T::one()
    } else {
        sign * m[n - 1][n - 1].clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Orientation::*;

    type M = ClosedManifold<i64>;

    fn l(p: i64, q: i64) -> M {
        canonicalize(p, q).unwrap()
    }

    fn chain(s: &str) -> ChainDescription<i64> {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(l(19, -8).to_string(), "L(19,7)");
        assert_eq!(l(7, 1).to_string(), "L(7,1)");
        assert_eq!(l(12, 5).to_string(), "L(12,5)");
        assert_eq!(l(-5, 2), l(5, -2));
        assert_eq!(l(1, 17), M::sphere());
        assert_eq!(l(0, -1), M::s1xs2());
        assert!(matches!(canonicalize(6i64, 4), Err(Error::NotCoprime { .. })));
        assert!(matches!(canonicalize(0i64, 2), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn surgery_on_unknot() {
        assert_eq!(lens_from_surgery(&ExtRatio::<i64>::infinity()), M::sphere());
        assert_eq!(lens_from_surgery(&ExtRatio::<i64>::zero()), M::s1xs2());
        let x: ExtRatio<i64> = "-19/8".parse().unwrap();
        let y = lens_from_surgery(&x);
        assert_eq!(y, l(19, 8));
        assert!(y.is_homeomorphic(&l(19, 7), Unoriented));
    }

    #[test]
    fn homeomorphism_examples() {
        assert!(l(19, 11).is_homeomorphic(&l(19, 7), Oriented));
        assert!(!l(5, 1).is_homeomorphic(&l(5, 2), Unoriented));
        assert!(l(13, 4).is_homeomorphic(&l(13, 17), Oriented));
        assert!(!l(7, 1).is_homeomorphic(&l(7, 6), Oriented));
        assert!(l(7, 1).is_homeomorphic(&l(7, 6), Unoriented));
        // one global mirror, not one per summand
        let a = l(5, 1).connected_sum(&l(7, 2));
        let b = l(5, 1).connected_sum(&l(7, 2).mirror());
        assert!(!a.is_homeomorphic(&b, Unoriented));
    }

    #[test]
    fn mirror_and_order() {
        assert_eq!(M::sphere().mirror(), M::sphere());
        assert_eq!(l(7, 1).mirror().to_string(), "L(7,6)");
        assert_eq!(M::sphere().h1_order(), 1);
        assert_eq!(l(2, 1).connected_sum(&l(3, 1)).h1_order(), 6);
        assert_eq!(l(19, 7).h1_order(), 19);
        assert_eq!(l(3, 1).connected_sum(&M::s1xs2()).h1_order(), 0);
    }

    #[test]
    fn summand_order_and_text() {
        let m = M::s1xs2().connected_sum(&l(5, 2)).connected_sum(&l(3, 1));
        assert_eq!(m.to_string(), "L(3,1)#L(5,2)#S1xS2");
        assert_eq!(m.to_string().parse::<M>().unwrap(), m);
        assert_eq!("S3".parse::<M>().unwrap(), M::sphere());
        assert!("L(4,2)".parse::<M>().is_err());
    }

    #[test]
    fn chain_examples() {
        let split = chain("2,3,inf,4,5,6").eval().unwrap();
        let joined = chain("2,3")
            .eval()
            .unwrap()
            .connected_sum(&chain("4,5,6").eval().unwrap());
        assert_eq!(split, joined);
        // -19/8 surgery: L(19,8) under the -p/q convention, the mirror of L(19,7)
        let v = chain("-3,-2,-2,3,0,-1").eval().unwrap();
        assert_eq!(v, l(19, 8));
        assert!(v.is_homeomorphic(&l(19, 7), Unoriented));
        for x in -6..=6 {
            assert_eq!(ChainDescription::from_integers([x, 0]).eval().unwrap(), M::sphere());
        }
        assert_eq!(chain("").eval().unwrap(), M::sphere());
        assert_eq!(chain("inf").eval().unwrap(), M::sphere());
        assert!(matches!(chain("2,5/2,3").eval(), Err(Error::InvalidChain(_))));
    }

    #[test]
    fn rational_head_is_expanded() {
        let c = chain("5/2,4");
        assert_eq!(c.eval().unwrap().h1_order(), 18);
        let naive = lens_from_surgery(&"9/4".parse().unwrap());
        assert_eq!(naive.h1_order(), 9);
        assert!(!c.eval().unwrap().is_homeomorphic(&naive, Unoriented));
        // a lone rational entry is plain unknot surgery
        let x: ExtRatio<i64> = "-18/11".parse().unwrap();
        assert_eq!(chain("-18/11").eval().unwrap(), lens_from_surgery(&x));
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(chain_h1_oracle(&chain("2,3,4")), 18);
        assert_eq!(chain_h1_oracle(&chain("5/2,4")), 18);
        assert_eq!(chain_h1_oracle(&chain("7,0")), 1);
        assert_eq!(chain_h1_oracle(&chain("2,inf,3")), 6);
        assert_eq!(chain_h1_oracle(&chain("")), 1);
    }
}
