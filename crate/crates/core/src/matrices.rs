//! Transition matrices `M_1, M_2, M_3`, word products and their spectra.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::cfrac;
use crate::error::{Error, Result};
use crate::quad::{IntRepr, QuadExt};
use crate::words::ParamWord;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat3(pub [[BigInt; 3]; 3]);

impl Mat3 {
    pub fn from_i64(rows: [[i64; 3]; 3]) -> Self {
        Mat3(rows.map(|r| r.map(BigInt::from)))
    }

    pub fn identity() -> Self {
        Self::from_i64([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.0[i][j]
    }

    pub fn mul(&self, o: &Mat3) -> Mat3 {
        let mut out = Mat3::from_i64([[0; 3]; 3]);
        for i in 0..3 {
            for j in 0..3 {
                out.0[i][j] = (0..3).map(|k| &self.0[i][k] * &o.0[k][j]).sum();
            }
        }
        out
    }

    pub fn apply(&self, v: &[QuadExt; 3]) -> [QuadExt; 3] {
        std::array::from_fn(|i| {
            (0..3).fold(QuadExt::zero(), |acc, k| acc + v[k].mul_int(&self.0[i][k]))
        })
    }

    pub fn trace(&self) -> BigInt {
        &self.0[0][0] + &self.0[1][1] + &self.0[2][2]
    }

    /// Sum of the principal 2×2 minors.
    pub fn minor_sum(&self) -> BigInt {
        let m = &self.0;
        let minor = |i: usize, j: usize| &m[i][i] * &m[j][j] - &m[i][j] * &m[j][i];
        minor(0, 1) + minor(0, 2) + minor(1, 2)
    }

    pub fn det(&self) -> BigInt {
        let m = &self.0;
        &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
            - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
            + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_positive())
    }

    /// Entrywise `self >= o`.
    pub fn dominates(&self, o: &Mat3) -> bool {
        self.0
            .iter()
            .flatten()
            .zip(o.0.iter().flatten())
            .all(|(a, b)| a >= b)
    }
}

impl Serialize for Mat3 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<IntRepr>> = self
            .0
            .iter()
            .map(|r| r.iter().map(IntRepr::of).collect())
            .collect();
        rows.serialize(s)
    }
}

impl fmt::Display for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .0
            .iter()
            .map(|r| format!("{} {} {}", r[0], r[1], r[2]))
            .collect();
        write!(f, "({})", rows.join("; "))
    }
}

pub fn generator(i: u8) -> Result<Mat3> {
    generator_power(i, 1)
}

/// `M_i^k`; each generator is a transvection, so its powers are `I + k·(M_i - I)`.
pub fn generator_power(i: u8, k: u64) -> Result<Mat3> {
    let k = BigInt::from(k);
    let mut m = Mat3::identity();
    match i {
        1 => m.0[0][1] = k,
        2 => {
            m.0[1][0] = k.clone();
            m.0[1][2] = k;
        }
        3 => m.0[2][1] = k,
        _ => return Err(Error::BadIndex(i)),
    }
    Ok(m)
}

/// `M_1^{p_n} M_3^{p_n'} M_2^{q_n} ⋯ M_1^{p_1} M_3^{p_1'} M_2^{q_1}`.
pub fn word_matrix(p: &ParamWord) -> Mat3 {
    p.blocks().iter().fold(Mat3::identity(), |acc, b| {
        acc.mul(&block_matrix(b.p, b.pp, b.q))
    })
}

pub fn block_matrix(p: u64, pp: u64, q: u64) -> Mat3 {
    let g = |i, k| generator_power(i, k).expect("valid generator");
    g(1, p).mul(&g(3, pp)).mul(&g(2, q))
}

/// Monic `t³ + c2·t² + c1·t + c0`, stored as `[c2, c1, c0]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPoly(pub [BigInt; 3]);

pub fn char_poly(m: &Mat3) -> CharPoly {
    CharPoly([-m.trace(), m.minor_sum(), -m.det()])
}

impl CharPoly {
    pub fn eval(&self, t: &QuadExt) -> QuadExt {
        let [c2, c1, c0] = &self.0;
        // Horner
        let mut acc = t + QuadExt::from_int(c2.clone());
        acc = &acc * t + QuadExt::from_int(c1.clone());
        &acc * t + QuadExt::from_int(c0.clone())
    }

    fn eval_int(&self, t: &BigInt) -> BigInt {
        let [c2, c1, c0] = &self.0;
        ((t + c2) * t + c1) * t + c0
    }

    /// An integer root `r` and the monic quadratic cofactor `[u, v]` (`t² + u·t + v`).
    pub fn split_integer_root(&self) -> Option<(BigInt, [BigInt; 2])> {
        let c0 = &self.0[2];
        let candidates: Vec<BigInt> = if c0.is_zero() {
            vec![BigInt::zero()]
        } else {
            divisors(&c0.abs())
                .into_iter()
                .flat_map(|d| [d.clone(), -d])
                .collect()
        };
        let r = candidates
            .into_iter()
            .find(|r| self.eval_int(r).is_zero())?;
        // synthetic division by (t - r)
        let u = &self.0[0] + &r;
        let v = &self.0[1] + &r * &u;
        Some((r, [u, v]))
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "λ^3")?;
        for (c, pow) in self.0.iter().zip(["λ^2", "λ", ""]) {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { '-' } else { '+' };
            let mag = c.abs();
            if mag.is_one() && !pow.is_empty() {
                write!(f, " {sign} {pow}")?;
            } else {
                write!(f, " {sign} {mag}{pow}")?;
            }
        }
        Ok(())
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if n.is_multiple_of(&d) {
            out.push(d.clone());
            let e = n / &d;
            if e != d {
                out.push(e);
            }
        }
        d += 1u32;
    }
    out
}

/// `M_p v = λ v` for the normalized eigenvector, and `χ(λ) = 0`, both exactly.
pub fn verify_eigenpair(p: &ParamWord) -> bool {
    let r = cfrac::rectangle_data(p);
    let v = cfrac::eigenvector_of(&r);
    let m = word_matrix(p);
    let mv = m.apply(&v);
    let lv = v.clone().map(|x| &x * &r.dilatation);
    mv == lv && char_poly(&m).eval(&r.dilatation).is_zero()
}

/// The dilatation strictly exceeds the modulus of the other two roots of the characteristic polynomial.
pub fn pf_dominant(p: &ParamWord) -> bool {
    let lambda = cfrac::dilatation(p);
    let cp = char_poly(&word_matrix(p));
    let Some((r, [u, v])) = cp.split_integer_root() else {
        return false;
    };
    let on_quadratic = (&lambda * &lambda + lambda.mul_int(&u) + QuadExt::from_int(v)).is_zero();
    // the other root of t² + u·t + v is -u - λ
    let mu = -(&lambda + QuadExt::from_int(u));
    on_quadratic && mu.abs() < lambda && QuadExt::from_int(r.abs()) < lambda
}

/// Order of coordinates 1 and 3 of `M_1^p M_3^{p'} M_2^q x`.
pub fn compare_13(p: u64, pp: u64, q: u64, x: &[QuadExt; 3]) -> Ordering {
    let y = block_matrix(p, pp, q).apply(x);
    y[0].try_cmp(&y[2]).expect("vector entries share a field")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> ParamWord {
        s.parse().unwrap()
    }

    fn q(s: &str) -> QuadExt {
        s.parse().unwrap()
    }

    #[test]
    fn generators() {
        let (m1, m2, m3) = (
            generator(1).unwrap(),
            generator(2).unwrap(),
            generator(3).unwrap(),
        );
        assert_eq!(m1, Mat3::from_i64([[1, 1, 0], [0, 1, 0], [0, 0, 1]]));
        assert_eq!(m3, Mat3::from_i64([[1, 0, 0], [0, 1, 0], [0, 1, 1]]));
        assert_eq!(m2, Mat3::from_i64([[1, 0, 0], [1, 1, 1], [0, 0, 1]]));
        assert_eq!(m1.mul(&m3), m3.mul(&m1));
        for m in [&m1, &m2, &m3] {
            assert!(m.det().is_one());
        }
        let v = [q("2"), q("3"), q("5")];
        assert_eq!(m2.apply(&v), [q("2"), q("10"), q("5")]);
        assert_eq!(generator(4), Err(Error::BadIndex(4)));
        for i in 1..=3 {
            let g = generator(i).unwrap();
            let cube = g.mul(&g).mul(&g);
            assert_eq!(generator_power(i, 3).unwrap(), cube);
            assert_eq!(generator_power(i, 0).unwrap(), Mat3::identity());
        }
    }

    #[test]
    fn word_matrices() {
        let m = word_matrix(&w("1,1,1"));
        assert_eq!(m, Mat3::from_i64([[2, 1, 1], [1, 1, 1], [1, 1, 2]]));
        let base = word_matrix(&w("1,1,1"));
        let m = word_matrix(&w("2,0,1;0,3,2"));
        assert!(m.dominates(&base) && m.is_positive());
        let (p, t) = (w("1,1,1"), w("1,2,1"));
        assert_eq!(
            word_matrix(&p.concatenate(&t)),
            word_matrix(&p).mul(&word_matrix(&t))
        );
        assert_eq!(
            serde_json::to_string(&base).unwrap(),
            "[[2,1,1],[1,1,1],[1,1,2]]"
        );
    }

    #[test]
    fn characteristic_polynomials() {
        let cp = char_poly(&word_matrix(&w("1,1,1")));
        assert_eq!(cp, CharPoly([(-5).into(), 5.into(), (-1).into()]));
        assert_eq!(cp.to_string(), "λ^3 - 5λ^2 + 5λ - 1");
        assert_eq!(
            char_poly(&Mat3::identity()),
            CharPoly([(-3).into(), 3.into(), (-1).into()])
        );
        let (r, [u, v]) = cp.split_integer_root().unwrap();
        assert_eq!((r, u, v), (1.into(), (-4).into(), 1.into()));
    }

    #[test]
    fn eigenpairs() {
        for s in ["1,0,1;0,1,1", "1,1,1", "1,2,1"] {
            assert!(verify_eigenpair(&w(s)), "{s}");
            assert!(pf_dominant(&w(s)), "{s}");
        }
        // explicit multiplication for (1,1,1): M v = (2+√3) v
        let v = [q("1/2"), q("(-1+√3)/2"), q("1/2")];
        let lv = v.clone().map(|x| x * q("2+√3"));
        assert_eq!(word_matrix(&w("1,1,1")).apply(&v), lv);
    }

    #[test]
    fn coordinate_comparisons() {
        let one = [q("1"), q("1"), q("1")];
        assert_eq!(compare_13(1, 1, 1, &one), Ordering::Equal);
        assert_eq!(compare_13(2, 1, 1, &one), Ordering::Greater);
        assert_eq!(compare_13(0, 2, 1, &one), Ordering::Less);
    }

    fn positive() -> impl Strategy<Value = QuadExt> {
        (1i64..30, -5i64..5, 1i64..8).prop_map(|(a, b, c)| {
            // a + b√2 > 0 whenever a > 1.5|b|; fall back to the rational part otherwise
            let x = QuadExt::new(a, b, c, 2).unwrap();
            if x.is_positive() {
                x
            } else {
                QuadExt::rational(a, c).unwrap()
            }
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn lemma_predicates(p in 0u64..5, pp in 0u64..5, qq in 1u64..5, x in positive(), y in positive(), z in positive()) {
            let v = [x.clone(), y, z.clone()];
            let got = compare_13(p, pp, qq, &v);
            let want = match p.cmp(&pp) {
                Ordering::Equal => x.try_cmp(&z).unwrap(),
                o => o,
            };
            prop_assert_eq!(got, want);
            if x != z {
                prop_assert_ne!(got, Ordering::Equal);
            }
        }
    }
}
