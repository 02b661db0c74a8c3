//! Exact arithmetic in real quadratic fields.
//!
//! A value is stored as `(a + b√d)/c` in lowest terms. Rationals use `d = 0`
//! and adopt the field of whatever irrational they are combined with.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExt {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

/// Splits `n >= 0` as `f² · e` with `e` squarefree.
///
/// Trial division only runs up to the cube root of the cofactor; what is left
/// then has at most two prime factors, so it is either a square or squarefree.
pub fn squarefree_split(n: &BigInt) -> (BigInt, BigInt) {
    if n.is_zero() {
        return (BigInt::one(), BigInt::zero());
    }
    let mut m = n.abs();
    let mut f = BigInt::one();
    let mut e = BigInt::one();
    let mut p = BigInt::from(2u32);
    while &p * &p * &p <= m {
        let mut k = 0u32;
        while (&m % &p).is_zero() {
            m /= &p;
            k += 1;
        }
        if k > 0 {
            f *= p.pow(k / 2);
            if k % 2 == 1 {
                e *= &p;
            }
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    let r = m.sqrt();
    if &r * &r == m {
        f *= r;
    } else {
        e *= m;
    }
    (f, e)
}

impl QuadExt {
    /// Builds `(a + b√d)/c`, reducing `d` to its squarefree part.
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self> {
        let (a, mut b, c, d) = (a.into(), b.into(), c.into(), d.into());
        if c.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if d.is_negative() {
            return Err(Error::Parse(format!("negative radicand {d}")));
        }
        let (f, e) = squarefree_split(&d);
        b *= f;
        if e.is_one() {
            return Ok(Self::reduced(a + b, BigInt::zero(), c, BigInt::zero()));
        }
        Ok(Self::reduced(a, b, c, e))
    }

    // `d` must already be squarefree (or 0).
    fn reduced(mut a: BigInt, mut b: BigInt, mut c: BigInt, mut d: BigInt) -> Self {
        if c.is_negative() {
            a = -a;
            b = -b;
            c = -c;
        }
        if b.is_zero() || d.is_zero() {
            b = BigInt::zero();
            d = BigInt::zero();
        }
        let g = a.gcd(&b).gcd(&c);
        if !g.is_one() {
            a /= &g;
            b /= &g;
            c /= &g;
        }
        QuadExt { a, b, c, d }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Self::reduced(n.into(), BigInt::zero(), BigInt::one(), BigInt::zero())
    }

    pub fn rational(n: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(n.into(), BigInt::zero(), den, BigInt::zero()))
    }

    /// `√n` (rational when `n` is a perfect square).
    pub fn sqrt(n: impl Into<BigInt>) -> Result<Self> {
        Self::new(0, 1, 1, n)
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_quadratic_irrational(&self) -> bool {
        !self.b.is_zero() && self.d > BigInt::one()
    }

    /// Re-normalizes from the stored fields; a no-op on any value built by this module.
    pub fn normalize(&self) -> Self {
        Self::new(
            self.a.clone(),
            self.b.clone(),
            self.c.clone(),
            self.d.clone(),
        )
        .expect("stored fields are always valid")
    }

    fn field(&self, other: &Self) -> Result<BigInt> {
        if self.d.is_zero() {
            Ok(other.d.clone())
        } else if other.d.is_zero() || self.d == other.d {
            Ok(self.d.clone())
        } else {
            Err(Error::FieldMismatch(
                self.d.to_string(),
                other.d.to_string(),
            ))
        }
    }

    pub fn checked_add(&self, y: &Self) -> Result<Self> {
        let d = self.field(y)?;
        Ok(Self::reduced(
            &self.a * &y.c + &y.a * &self.c,
            &self.b * &y.c + &y.b * &self.c,
            &self.c * &y.c,
            d,
        ))
    }

    pub fn checked_sub(&self, y: &Self) -> Result<Self> {
        self.checked_add(&-y)
    }

    pub fn checked_mul(&self, y: &Self) -> Result<Self> {
        let d = self.field(y)?;
        Ok(Self::reduced(
            &self.a * &y.a + &self.b * &y.b * &d,
            &self.a * &y.b + &y.a * &self.b,
            &self.c * &y.c,
            d,
        ))
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // c / (a + b√d) = c(a - b√d) / (a² - b²d)
        let n = &self.a * &self.a - &self.b * &self.b * &self.d;
        Ok(Self::reduced(
            &self.c * &self.a,
            -(&self.c * &self.b),
            n,
            self.d.clone(),
        ))
    }

    pub fn checked_div(&self, y: &Self) -> Result<Self> {
        self.field(y)?;
        self.checked_mul(&y.inverse()?)
    }

    pub fn conjugate(&self) -> Self {
        Self::reduced(self.a.clone(), -&self.b, self.c.clone(), self.d.clone())
    }

    /// Sign of the value, decided on integers only.
    pub fn signum(&self) -> Sign {
        let sa = self.a.sign();
        let sb = self.b.sign();
        match (sa, sb) {
            (_, Sign::NoSign) => sa,
            (Sign::NoSign, _) => sb,
            _ if sa == sb => sa,
            _ => {
                let a2 = &self.a * &self.a;
                let b2d = &self.b * &self.b * &self.d;
                if a2 > b2d {
                    sa
                } else {
                    sb
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Sign::Plus
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Sign::Minus {
            -self
        } else {
            self.clone()
        }
    }

    pub fn try_cmp(&self, y: &Self) -> Result<Ordering> {
        Ok(match self.checked_sub(y)?.signum() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        })
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        Self::reduced(&self.a * k, &self.b * k, self.c.clone(), self.d.clone())
    }

    /// Integer coefficients `[c2, c1, c0]` of the primitive minimal polynomial
    /// `c2·t² + c1·t + c0` (degree one for rationals, with `c2 = 0`).
    pub fn minimal_polynomial(&self) -> [BigInt; 3] {
        if self.is_rational() {
            return [BigInt::zero(), self.c.clone(), -&self.a];
        }
        let c2 = &self.c * &self.c;
        let c1 = -(BigInt::from(2) * &self.a * &self.c);
        let c0 = &self.a * &self.a - &self.b * &self.b * &self.d;
        let g = c2.gcd(&c1).gcd(&c0);
        [c2 / &g, c1 / &g, c0 / &g]
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        let c = self.c.to_f64().unwrap_or(f64::NAN);
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        if self.a.sign() != self.b.sign() && !self.a.is_zero() && !self.b.is_zero() {
            // a + b√d = (a² - b²d)/(a - b√d) avoids cancellation
            let n = (&self.a * &self.a - &self.b * &self.b * &self.d)
                .to_f64()
                .unwrap_or(f64::NAN);
            return n / (a - b * d.sqrt()) / c;
        }
        (a + b * d.sqrt()) / c
    }

    /// Decimal expansion rounded to `digits` places (for display only).
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = BigInt::from(10u32).pow(digits as u32);
        let two = BigInt::from(2u32);
        // round(v·10^k) = floor((2a·10^k + c + 2b·10^k·√d) / 2c)
        let n = floor_surd(
            &(&two * &self.a * &scale + &self.c),
            &(&two * &self.b * &scale),
            &self.d,
            &(&two * &self.c),
        );
        let sign = if n.is_negative() { "-" } else { "" };
        let s = format!("{:0>width$}", n.abs().to_str_radix(10), width = digits + 1);
        let (int, frac) = s.split_at(s.len() - digits);
        if digits == 0 {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    }
}

/// `floor((a + b√d)/c)` for `c > 0`.
fn floor_surd(a: &BigInt, b: &BigInt, d: &BigInt, c: &BigInt) -> BigInt {
    let sq = b * b * d;
    let r = sq.sqrt();
    // floor(b√d)
    let fb = if b.is_negative() {
        if &r * &r == sq {
            -r
        } else {
            -r - 1
        }
    } else {
        r
    };
    (a + fb).div_floor(c)
}

impl PartialOrd for QuadExt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.try_cmp(other).ok()
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt::reduced(-&self.a, -&self.b, self.c.clone(), self.d.clone())
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -&self
    }
}

// Operators panic on a field mismatch, like integer division panics on zero.
// Use the `checked_*` methods when operands may come from different fields.
macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&QuadExt> for &QuadExt {
            type Output = QuadExt;
            fn $m(self, rhs: &QuadExt) -> QuadExt {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $m(self, rhs: QuadExt) -> QuadExt {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $m(self, rhs: &QuadExt) -> QuadExt {
                (&self).$m(rhs)
            }
        }
        impl $tr<QuadExt> for &QuadExt {
            type Output = QuadExt;
            fn $m(self, rhs: QuadExt) -> QuadExt {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl From<i64> for QuadExt {
    fn from(n: i64) -> Self {
        QuadExt::from_int(n)
    }
}

impl From<BigInt> for QuadExt {
    fn from(n: BigInt) -> Self {
        QuadExt::from_int(n)
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return if self.c.is_one() {
                write!(f, "{}", self.a)
            } else {
                write!(f, "{}/{}", self.a, self.c)
            };
        }
        let coef = |b: &BigInt| {
            if b.abs().is_one() {
                String::new()
            } else {
                b.abs().to_string()
            }
        };
        let num = if self.a.is_zero() {
            let sign = if self.b.is_negative() { "-" } else { "" };
            format!("{sign}{}√{}", coef(&self.b), self.d)
        } else {
            let sign = if self.b.is_negative() { '-' } else { '+' };
            format!("{}{sign}{}√{}", self.a, coef(&self.b), self.d)
        };
        match (self.c.is_one(), self.a.is_zero()) {
            (true, _) => write!(f, "{num}"),
            (false, true) => write!(f, "{num}/{}", self.c),
            (false, false) => write!(f, "({num})/{}", self.c),
        }
    }
}

fn parse_int(s: &str) -> Result<BigInt> {
    BigInt::from_str(s).map_err(|_| Error::Parse(format!("bad integer {s:?}")))
}

impl FromStr for QuadExt {
    type Err = Error;

    /// Accepts the `Display` form, e.g. `(-1+√5)/2`, `2+√3`, `3/4`; also `sqrt` for `√`
    /// and the Unicode minus sign.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s
            .replace('−', "-")
            .replace("sqrt", "√")
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect();
        if t.is_empty() {
            return Err(Error::Parse("empty number".into()));
        }
        let (num, den) = match t.rfind('/') {
            Some(i) => (&t[..i], parse_int(&t[i + 1..])?),
            None => (t.as_str(), BigInt::one()),
        };
        let num = num
            .strip_prefix('(')
            .and_then(|n| n.strip_suffix(')'))
            .unwrap_or(num);
        let mut a = BigInt::zero();
        let mut b = BigInt::zero();
        let mut d: Option<BigInt> = None;
        let mut start = 0;
        let bytes: Vec<(usize, char)> = num.char_indices().collect();
        let mut terms = Vec::new();
        for (k, &(i, ch)) in bytes.iter().enumerate() {
            if k > 0 && (ch == '+' || ch == '-') {
                terms.push(&num[start..i]);
                start = i;
            }
        }
        terms.push(&num[start..]);
        for term in terms {
            let term = term.strip_prefix('+').unwrap_or(term);
            match term.split_once('√') {
                None => a += parse_int(term)?,
                Some((coef, rad)) => {
                    let coef = match coef {
                        "" => BigInt::one(),
                        "-" => -BigInt::one(),
                        c => parse_int(c)?,
                    };
                    let rad = rad
                        .strip_prefix('(')
                        .and_then(|r| r.strip_suffix(')'))
                        .unwrap_or(rad);
                    let rad = parse_int(rad)?;
                    if let Some(d0) = &d {
                        if *d0 != rad {
                            return Err(Error::FieldMismatch(d0.to_string(), rad.to_string()));
                        }
                    }
                    d = Some(rad);
                    b += coef;
                }
            }
        }
        QuadExt::new(a, b, den, d.unwrap_or_default())
    }
}

/// JSON integer that falls back to a decimal string beyond `i64`.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
pub(crate) enum IntRepr {
    Num(i64),
    Str(String),
}

impl IntRepr {
    pub(crate) fn of(n: &BigInt) -> Self {
        match n.to_i64() {
            Some(v) => IntRepr::Num(v),
            None => IntRepr::Str(n.to_string()),
        }
    }

    pub(crate) fn value(self) -> Result<BigInt> {
        match self {
            IntRepr::Num(v) => Ok(BigInt::from(v)),
            IntRepr::Str(s) => parse_int(&s),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Raw {
    a: IntRepr,
    b: IntRepr,
    c: IntRepr,
    d: IntRepr,
}

impl Serialize for QuadExt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Raw {
            a: IntRepr::of(&self.a),
            b: IntRepr::of(&self.b),
            c: IntRepr::of(&self.c),
            d: IntRepr::of(&self.d),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadExt {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = Raw::deserialize(de)?;
        let conv = |r: IntRepr| r.value().map_err(serde::de::Error::custom);
        QuadExt::new(conv(raw.a)?, conv(raw.b)?, conv(raw.c)?, conv(raw.d)?)
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> QuadExt {
        s.parse().unwrap()
    }

    #[test]
    fn conjugate_sum_and_unit_norm() {
        assert_eq!(q("(1+√3)/2") + q("(1-√3)/2"), QuadExt::one());
        assert_eq!(q("2-√3") * q("2+√3"), QuadExt::one());
        let phi = q("(-1+√5)/2");
        assert_eq!(&phi + &phi, q("-1+√5"));
        assert!(((&phi + &phi).to_f64() - 2.0 * 0.6180339887498949).abs() < 1e-12);
        assert_eq!(&phi + QuadExt::zero(), phi);
        assert_eq!(&phi * QuadExt::one(), phi);
    }

    #[test]
    fn division() {
        let r = QuadExt::one() / q("2-√3");
        assert_eq!(r, q("2+√3"));
        assert_eq!(&r * q("2-√3"), QuadExt::one());
        assert_eq!(
            q("1").checked_div(&QuadExt::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn field_mismatch() {
        let e = q("√2").checked_add(&q("√3"));
        assert!(matches!(e, Err(Error::FieldMismatch(_, _))));
        assert!(q("√2").partial_cmp(&q("√3")).is_none());
        // rationals adopt the other field
        assert_eq!(q("1/2") + q("√3"), q("(1+2√3)/2"));
    }

    #[test]
    fn comparisons() {
        assert_eq!(
            q("(-1+√5)/2").try_cmp(&q("1/2")).unwrap(),
            Ordering::Greater
        );
        assert_eq!(
            q("2-√3").try_cmp(&QuadExt::zero()).unwrap(),
            Ordering::Greater
        );
        let x = q("(7+3√5)/2");
        assert_eq!(x.try_cmp(&x).unwrap(), Ordering::Equal);
        assert_eq!(q("1-√2").signum(), Sign::Minus);
    }

    #[test]
    fn quadratic_irrationality() {
        assert!(q("(7+3√5)/2").is_quadratic_irrational());
        assert!(!q("1/3").is_quadratic_irrational());
        let u = q("2+√3");
        assert!(u.is_quadratic_irrational());
        // root of t² - 4t + 1
        assert_eq!(
            &u * &u - u.mul_int(&4.into()) + QuadExt::one(),
            QuadExt::zero()
        );
        assert_eq!(u.minimal_polynomial(), [1.into(), (-4).into(), 1.into()]);
    }

    #[test]
    fn normalization() {
        assert_eq!(q("√8"), QuadExt::new(0, 2, 1, 2).unwrap());
        assert_eq!(q("(2+2√12)/4"), q("(1+2√3)/2"));
        assert_eq!(q("3+√9"), QuadExt::from_int(6));
        assert_eq!(q("5+0√7").d(), &BigInt::zero());
        assert_eq!(QuadExt::new(1, 1, -2, 5).unwrap(), q("(-1-√5)/2"));
        assert_eq!(
            squarefree_split(&BigInt::from(2 * 2 * 3 * 7 * 7 * 11)),
            (14.into(), 33.into())
        );
        assert_eq!(
            squarefree_split(&BigInt::from(1_000_003u64 * 1_000_003u64 * 5)),
            (1_000_003.into(), 5.into())
        );
    }

    #[test]
    fn text_round_trip() {
        for s in [
            "(7+3√5)/2",
            "2+√3",
            "(-1+√5)/2",
            "1/3",
            "-4",
            "√21/6",
            "-√2",
            "(3-2√7)/5",
            "0",
        ] {
            assert_eq!(q(s).to_string(), s);
        }
        assert_eq!(q("(−1+sqrt(5))/2"), q("(-1+√5)/2"));
        assert!("1+".parse::<QuadExt>().is_err());
    }

    #[test]
    fn json_round_trip() {
        let x = q("(7+3√5)/2");
        let j = serde_json::to_string(&x).unwrap();
        assert_eq!(j, r#"{"a":7,"b":3,"c":2,"d":5}"#);
        assert_eq!(serde_json::from_str::<QuadExt>(&j).unwrap(), x);
        let big = QuadExt::new(BigInt::from(10u32).pow(30), 1, 1, 2).unwrap();
        let j = serde_json::to_string(&big).unwrap();
        assert_eq!(serde_json::from_str::<QuadExt>(&j).unwrap(), big);
    }

    #[test]
    fn decimals() {
        assert_eq!(q("(7+3√5)/2").to_decimal(12), "6.854101966250");
        assert_eq!(q("2-√3").to_decimal(6), "0.267949");
        assert_eq!(q("-1/3").to_decimal(4), "-0.3333");
        assert_eq!(q("1-√2").to_decimal(5), "-0.41421");
        assert_eq!(q("5/2").to_decimal(0), "3");
        assert_eq!(q("-1/300").to_decimal(2), "0.00");
    }

    const FIELDS: [i64; 8] = [2, 3, 5, 6, 7, 10, 13, 21];

    fn elem(d: i64) -> impl Strategy<Value = QuadExt> {
        (-20i64..20, -20i64..20, 1i64..12)
            .prop_map(move |(a, b, c)| QuadExt::new(a, b, c, d).unwrap())
    }

    fn triple() -> impl Strategy<Value = (QuadExt, QuadExt, QuadExt)> {
        (0..FIELDS.len()).prop_flat_map(|i| (elem(FIELDS[i]), elem(FIELDS[i]), elem(FIELDS[i])))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn field_axioms((x, y, z) in triple()) {
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!((&x + &y) + &z, &x + (&y + &z));
            prop_assert_eq!((&x * &y) * &z, &x * (&y * &z));
            prop_assert_eq!(&x * (&y + &z), &x * &y + &x * &z);
            prop_assert_eq!(&x - &x, QuadExt::zero());
            if !x.is_zero() {
                prop_assert_eq!(&x * x.inverse().unwrap(), QuadExt::one());
            }
        }

        #[test]
        fn order_matches_reals((x, y, _z) in triple()) {
            let gap = x.to_f64() - y.to_f64();
            let ord = x.try_cmp(&y).unwrap();
            if gap > 1e-9 {
                prop_assert_eq!(ord, Ordering::Greater);
            } else if gap < -1e-9 {
                prop_assert_eq!(ord, Ordering::Less);
            }
            prop_assert_eq!(ord.reverse(), y.try_cmp(&x).unwrap());
        }

        #[test]
        fn normalize_idempotent((x, _y, _z) in triple()) {
            prop_assert_eq!(x.normalize(), x.clone());
            prop_assert_eq!(x.normalize().normalize(), x.normalize());
            prop_assert_eq!(x.to_string().parse::<QuadExt>().unwrap(), x);
        }
    }
}
