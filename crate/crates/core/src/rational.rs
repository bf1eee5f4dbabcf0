//! Exact arithmetic on the extended rationals `Q ∪ {1/0}` and the negative
//! continued-fraction calculus used for surgery coefficients.
//!
//! A word `[a1, a2, ..., an]` stands for `a1 - 1/(a2 - 1/(... - 1/an))`.
//! Evaluation folds from the right with the projective conventions
//! `1/∞ = 0`, `1/0 = ∞` and `a - ∞ = ∞`, so words whose partial values pass
//! through zero still evaluate exactly.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::scalar::{parse_int, Int};

/// An element of `Q ∪ {∞}` in lowest terms.
///
/// The denominator is never negative. `∞` is stored as `1/0` and zero as `0/1`,
/// so structural equality is value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtRatio<T> {
    num: T,
    den: T,
}

impl<T: Int> ExtRatio<T> {
    /// Build `num/den`, reducing to lowest terms. `x/0` with `x != 0` is `∞`.
    pub fn new(num: T, den: T) -> Result<Self> {
        if num.is_zero() && den.is_zero() {
            return Err(Error::InvalidCoefficient("0/0 is undefined".into()));
        }
        if den.is_zero() {
            return Ok(Self::infinity());
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / g.clone(), den / g);
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        Ok(Self { num: n, den: d })
    }

    pub fn from_integer(n: T) -> Self {
        Self { num: n, den: T::one() }
    }

    pub fn infinity() -> Self {
        Self {
            num: T::one(),
            den: T::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::from_integer(T::zero())
    }

    pub fn numer(&self) -> &T {
        &self.num
    }

    pub fn denom(&self) -> &T {
        &self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    /// The integer value, if this is a finite integer.
    pub fn to_integer(&self) -> Option<T> {
        self.is_integer().then(|| self.num.clone())
    }

    /// `1/x`, total on the projective line.
    pub fn recip(&self) -> Self {
        if self.num.is_zero() {
            return Self::infinity();
        }
        if self.is_infinite() {
            return Self::zero();
        }
        let (n, d) = if self.num.is_negative() {
            (-self.den.clone(), -self.num.clone())
        } else {
            (self.den.clone(), self.num.clone())
        };
        Self { num: n, den: d }
    }

    /// Sum. A finite shift of `∞` stays `∞`; `∞ + ∞` is undefined.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Err(Error::Arithmetic("∞ + ∞".into())),
            (true, false) | (false, true) => Ok(Self::infinity()),
            (false, false) => Self::new(
                self.num.clone() * other.den.clone() + other.num.clone() * self.den.clone(),
                self.den.clone() * other.den.clone(),
            ),
        }
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other.clone())
    }

    /// Product of finite values; any `∞` operand is an error.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.is_infinite() || other.is_infinite() {
            return Err(Error::Arithmetic(format!("{self} * {other}")));
        }
        Self::new(
            self.num.clone() * other.num.clone(),
            self.den.clone() * other.den.clone(),
        )
    }

    /// Quotient of finite values by a finite nonzero value.
    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::Arithmetic(format!("{self} / 0")));
        }
        self.checked_mul(&other.recip())
    }

    /// `self + n` for an integer `n`; total.
    pub fn add_int(&self, n: &T) -> Self {
        self.checked_add(&Self::from_integer(n.clone()))
            .expect("integer shift is total")
    }

    /// Smallest integer `>= self`, for finite values.
    pub fn ceil(&self) -> Option<T> {
        (!self.is_infinite()).then(|| Integer::div_ceil(&self.num, &self.den))
    }
}

impl<T: Int> std::ops::Neg for ExtRatio<T> {
    type Output = Self;
    fn neg(self) -> Self {
        if self.is_infinite() {
            self
        } else {
            Self {
                num: -self.num,
                den: self.den,
            }
        }
    }
}

impl<T: Int> From<T> for ExtRatio<T> {
    fn from(n: T) -> Self {
        Self::from_integer(n)
    }
}

impl<T: Int> fmt::Display for ExtRatio<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("inf")
        } else if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl<T: Int> FromStr for ExtRatio<T> {
    type Err = Error;

    /// Accepts `p`, `p/q`, `inf` or `∞`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t == "∞" || t == "1/0" {
            return Ok(Self::infinity());
        }
        let bad = || Error::Parse(format!("not an extended rational: `{s}`"));
        match t.split_once('/') {
            Some((n, d)) => {
                let n = parse_int::<T>(n).ok_or_else(bad)?;
                let d = parse_int::<T>(d).ok_or_else(bad)?;
                Self::new(n, d)
            }
            None => parse_int::<T>(t).map(Self::from_integer).ok_or_else(bad),
        }
    }
}

/// One step of the recursion: `a - 1/v`.
///
/// `a` must be finite; `v` may be anything.
pub fn ext_sub_inv<T: Int>(a: &ExtRatio<T>, v: &ExtRatio<T>) -> Result<ExtRatio<T>> {
    if a.is_infinite() {
        return Err(Error::InvalidCoefficient("∞ cannot be a surviving coefficient".into()));
    }
    a.checked_add(&-v.recip())
}

/// Fold `[e1, ..., en]` from the right. Only the last entry may be `∞`.
pub(crate) fn fold_entries<T: Int>(entries: &[ExtRatio<T>]) -> Result<ExtRatio<T>> {
    let (last, rest) = entries
        .split_last()
        .ok_or_else(|| Error::InvalidCoefficient("empty word".into()))?;
    rest.iter().rev().try_fold(last.clone(), |acc, a| ext_sub_inv(a, &acc))
}

/// A non-empty word of finite coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CfWord<T> {
    entries: Vec<ExtRatio<T>>,
}

impl<T: Int> CfWord<T> {
    pub fn new(entries: Vec<ExtRatio<T>>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidCoefficient("a word needs at least one entry".into()));
        }
        if entries.iter().any(ExtRatio::is_infinite) {
            return Err(Error::InvalidCoefficient("words cannot contain ∞".into()));
        }
        Ok(Self { entries })
    }

    pub fn from_integers<I: IntoIterator<Item = T>>(entries: I) -> Result<Self> {
        Self::new(entries.into_iter().map(ExtRatio::from_integer).collect())
    }

    pub fn entries(&self) -> &[ExtRatio<T>] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Interior entries (all but the first and last) are integers.
    pub fn is_chain_valid(&self) -> bool {
        let n = self.entries.len();
        n <= 2 || self.entries[1..n - 1].iter().all(ExtRatio::is_integer)
    }

    pub fn negated(&self) -> Self {
        Self {
            entries: self.entries.iter().cloned().map(|e| -e).collect(),
        }
    }

    pub fn eval(&self) -> ExtRatio<T> {
        cf_eval(self)
    }
}

impl<T: Int> fmt::Display for CfWord<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("]")
    }
}

impl<T: Int> FromStr for CfWord<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t.strip_prefix('[').and_then(|t| t.strip_suffix(']')).unwrap_or(t);
        let entries = t.split(',').map(str::parse).collect::<Result<Vec<ExtRatio<T>>>>()?;
        Self::new(entries)
    }
}

/// Value of a word. Never fails because every entry is finite.
pub fn cf_eval<T: Int>(w: &CfWord<T>) -> ExtRatio<T> {
    fold_entries(&w.entries).expect("finite entries always fold")
}

/// Ceiling expansion of a finite value: `e1 = ⌈x⌉`, then continue with
/// `1/(e1 - x)`. Every entry after the first is at least 2.
pub fn cf_expand<T: Int>(x: &ExtRatio<T>) -> Result<Vec<T>> {
    if x.is_infinite() {
        return Err(Error::InvalidCoefficient("∞ has no expansion".into()));
    }
    let mut out = Vec::new();
    let (mut num, mut den) = (x.num.clone(), x.den.clone());
    loop {
        let e = Integer::div_ceil(&num, &den);
        let rem = e.clone() * den.clone() - num;
        out.push(e);
        if rem.is_zero() {
            return Ok(out);
        }
        num = den;
        den = rem;
    }
}

/// Remove the first interior zero that sits between two integer entries,
/// merging its neighbours: `[.., a, 0, b, ..]` becomes `[.., a + b, ..]`.
pub fn cf_zero_absorb<T: Int>(w: &CfWord<T>) -> Result<CfWord<T>> {
    let e = &w.entries;
    let pos = (1..e.len().saturating_sub(1))
        .find(|&i| e[i].is_zero() && e[i - 1].is_integer() && e[i + 1].is_integer())
        .ok_or_else(|| Error::NoRewriteApplies(w.to_string()))?;
    let merged = e[pos - 1].checked_add(&e[pos + 1])?;
    let mut entries = e[..pos - 1].to_vec();
    entries.push(merged);
    entries.extend_from_slice(&e[pos + 2..]);
    CfWord::new(entries)
}
