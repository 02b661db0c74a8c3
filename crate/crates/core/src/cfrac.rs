//! Periodic continued fractions and the partitioned rectangle of a word.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quad::QuadExt;
use crate::words::ParamWord;

/// `[a_0; a_1, …, a_{k-1}, overline(b_0, …, b_{t-1})]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicCF {
    pub preperiod: Vec<BigInt>,
    pub period: Vec<BigInt>,
}

impl PeriodicCF {
    pub fn new(preperiod: Vec<BigInt>, period: Vec<BigInt>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidCF("empty period".into()));
        }
        if let Some(b) = period.iter().find(|b| !b.is_positive()) {
            return Err(Error::InvalidCF(format!(
                "period entry {b} is not positive"
            )));
        }
        if let Some(a) = preperiod.iter().skip(1).find(|a| !a.is_positive()) {
            return Err(Error::InvalidCF(format!(
                "partial quotient {a} is not positive"
            )));
        }
        Ok(PeriodicCF { preperiod, period })
    }

    pub fn from_u64(preperiod: &[i64], period: &[u64]) -> Result<Self> {
        Self::new(
            preperiod.iter().map(|&a| BigInt::from(a)).collect(),
            period.iter().map(|&b| BigInt::from(b)).collect(),
        )
    }

    /// Exact value.
    ///
    /// With `[[P, P'], [Q, Q']]` the product of `[[b_i, 1], [1, 0]]` over one period,
    /// the tail satisfies `x = (Px + P')/(Qx + Q')`, i.e. `Qx² + (Q' - P)x - P' = 0`.
    pub fn eval(&self) -> Result<QuadExt> {
        let (mut p, mut pp, mut q, mut qq) =
            (BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one());
        for b in &self.period {
            // [[p, pp], [q, qq]] · [[b, 1], [1, 0]]
            let np = &p * b + &pp;
            let nq = &q * b + &qq;
            pp = std::mem::replace(&mut p, np);
            qq = std::mem::replace(&mut q, nq);
        }
        let disc = (&p - &qq) * (&p - &qq) + BigInt::from(4) * &q * &pp;
        let two_q = BigInt::from(2) * &q;
        let root = QuadExt::new(&p - &qq, 1, two_q.clone(), disc.clone())?;
        let other = QuadExt::new(&p - &qq, -1, two_q, disc)?;
        let lo = QuadExt::from_int(self.period[0].clone());
        let hi = QuadExt::from_int(&self.period[0] + 1);
        let inside = |x: &QuadExt| x > &lo && x < &hi;
        if !inside(&root) || inside(&other) {
            return Err(Error::InvalidCF(format!(
                "no unique fixed point in ({lo}, {hi}) for period {:?}",
                self.period
            )));
        }
        let mut y = root;
        for a in self.preperiod.iter().rev() {
            y = QuadExt::from_int(a.clone()) + y.inverse()?;
        }
        Ok(y)
    }
}

pub fn eval_periodic_cf(cf: &PeriodicCF) -> Result<QuadExt> {
    cf.eval()
}

/// `[0; overline(p_n+p_n', q_n, …, p_1+p_1', q_1)]`.
pub fn height_expansion(p: &ParamWord) -> PeriodicCF {
    let period = p
        .blocks()
        .iter()
        .flat_map(|b| [BigInt::from(b.width()), BigInt::from(b.q)])
        .collect();
    PeriodicCF::new(vec![BigInt::zero()], period).expect("words in I_n give positive entries")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RectangleData {
    pub heights: Vec<QuadExt>,
    pub widths: Vec<QuadExt>,
    pub split_ratio: QuadExt,
    pub dilatation: QuadExt,
}

/// Heights and widths `h_j, w_j` for `j = 0..=steps`, consuming blocks `n, n-1, …` cyclically.
pub fn rectangle_steps(p: &ParamWord, steps: usize) -> (Vec<QuadExt>, Vec<QuadExt>) {
    let h0 = height_expansion(p)
        .eval()
        .expect("periodic expansion of a word");
    let mut h = vec![h0];
    let mut w = vec![QuadExt::one()];
    let blocks = p.blocks();
    for j in 1..=steps {
        let b = blocks[(j - 1) % blocks.len()];
        let wj = &w[j - 1] - h[j - 1].mul_int(&b.width().into());
        let hj = &h[j - 1] - wj.mul_int(&b.q.into());
        w.push(wj);
        h.push(hj);
    }
    (h, w)
}

pub fn rectangle_data(p: &ParamWord) -> RectangleData {
    let (heights, widths) = rectangle_steps(p, p.n());
    let dilatation = widths[p.n()].inverse().expect("w_n > 0");
    let split_ratio = ratio_from_heights(p, &heights);
    RectangleData {
        heights,
        widths,
        split_ratio,
        dilatation,
    }
}

fn ratio_from_heights(p: &ParamWord, h: &[QuadExt]) -> QuadExt {
    let mut num = QuadExt::zero();
    let mut den = QuadExt::zero();
    for (j, b) in p.blocks().iter().enumerate() {
        num = num + h[j].mul_int(&b.p.into());
        den = den + h[j].mul_int(&b.width().into());
    }
    num / den
}

pub fn split_ratio(p: &ParamWord) -> QuadExt {
    rectangle_data(p).split_ratio
}

pub fn dilatation(p: &ParamWord) -> QuadExt {
    rectangle_data(p).dilatation
}

/// `(s_p, h_{p,0}, 1 - s_p)`.
pub fn normalized_eigenvector(p: &ParamWord) -> [QuadExt; 3] {
    let r = rectangle_data(p);
    eigenvector_of(&r)
}

pub fn eigenvector_of(r: &RectangleData) -> [QuadExt; 3] {
    [
        r.split_ratio.clone(),
        r.heights[0].clone(),
        QuadExt::one() - &r.split_ratio,
    ]
}

/// Floating-point partial sum of `Σ p_{-i} h_i` over `terms` terms.
pub fn split_ratio_series(p: &ParamWord, terms: usize) -> f64 {
    let (h, _) = rectangle_steps(p, terms);
    let blocks = p.blocks();
    (0..terms)
        .map(|i| blocks[i % blocks.len()].p as f64 * h[i].to_f64())
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> QuadExt {
        s.parse().unwrap()
    }

    fn w(s: &str) -> ParamWord {
        s.parse().unwrap()
    }

    #[test]
    fn periodic_values() {
        let golden = PeriodicCF::from_u64(&[0], &[1]).unwrap().eval().unwrap();
        assert_eq!(golden, q("(-1+√5)/2"));
        // x = 1/(2 + 1/(1 + x))  ⇒  2x² + 2x - 1 = 0
        let x = PeriodicCF::from_u64(&[0], &[2, 1]).unwrap().eval().unwrap();
        assert_eq!(x, q("(-1+√3)/2"));
        assert_eq!(
            x.mul_int(&2.into()) * &x + x.mul_int(&2.into()) - QuadExt::one(),
            QuadExt::zero()
        );
        let x = PeriodicCF::from_u64(&[0], &[3, 1]).unwrap().eval().unwrap();
        assert_eq!(x, q("(-3+√21)/6"));
        assert_eq!(
            x.mul_int(&3.into()) * &x + x.mul_int(&3.into()) - QuadExt::one(),
            QuadExt::zero()
        );
        // purely periodic and with a longer preperiod
        assert_eq!(
            PeriodicCF::from_u64(&[], &[2]).unwrap().eval().unwrap(),
            q("1+√2")
        );
        assert_eq!(
            PeriodicCF::from_u64(&[1], &[2]).unwrap().eval().unwrap(),
            q("√2")
        );
        let x = PeriodicCF::from_u64(&[-1, 2], &[2])
            .unwrap()
            .eval()
            .unwrap();
        assert!((x.to_f64() - (-1.0 + 1.0 / (2.0 + 1.0 / (1.0 + 2f64.sqrt())))).abs() < 1e-12);
    }

    #[test]
    fn invalid_expansions() {
        assert!(matches!(
            PeriodicCF::from_u64(&[0], &[]),
            Err(Error::InvalidCF(_))
        ));
        assert!(matches!(
            PeriodicCF::from_u64(&[0], &[1, 0]),
            Err(Error::InvalidCF(_))
        ));
        assert!(matches!(
            PeriodicCF::from_u64(&[0, 0], &[1]),
            Err(Error::InvalidCF(_))
        ));
    }

    #[test]
    fn dilatations() {
        let r = rectangle_data(&w("1,0,1;0,1,1"));
        assert_eq!(r.heights[0], q("(-1+√5)/2"));
        assert_eq!(r.dilatation, q("(7+3√5)/2"));
        assert_eq!(dilatation(&w("1,1,1")), q("2+√3"));
        let r = rectangle_data(&w("1,2,1"));
        assert_eq!(r.widths[1], q("(5-√21)/2"));
        assert_eq!(r.dilatation, q("(5+√21)/2"));
    }

    #[test]
    fn split_ratios() {
        for (p, pp, q) in [(1u64, 2u64, 1u64), (3, 1, 2), (2, 2, 1), (1, 5, 3)] {
            let word = ParamWord::validate(&[p, pp, q]).unwrap();
            assert_eq!(split_ratio(&word), QuadExt::rational(p, p + pp).unwrap());
        }
        let p = w("1,0,1;0,1,1");
        let h0 = q("(-1+√5)/2");
        assert_eq!(
            split_ratio(&p),
            &h0 / (h0.mul_int(&3.into()) - QuadExt::one())
        );
        assert_eq!(split_ratio(&w("2,2,1;1,1,3")), q("1/2"));
        let v = normalized_eigenvector(&w("1,1,1"));
        assert_eq!(v, [q("1/2"), q("(-1+√3)/2"), q("1/2")]);
    }

    #[test]
    fn self_similarity() {
        let p = w("1,0,1;0,1,1");
        let (h, wd) = rectangle_steps(&p, 2 * p.n());
        let lambda = dilatation(&p);
        for j in 0..p.n() {
            assert_eq!(&h[j + p.n()] * &lambda, h[j]);
            assert_eq!(&wd[j + p.n()] * &lambda, wd[j]);
        }
    }

    fn word() -> impl Strategy<Value = ParamWord> {
        proptest::collection::vec((0u64..4, 0u64..4, 1u64..4), 1..4).prop_filter_map(
            "not in I_n",
            |v| {
                ParamWord::from_blocks(
                    v.into_iter()
                        .map(|(a, b, c)| crate::words::Block::new(a, b, c))
                        .collect(),
                )
                .ok()
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn rectangle_invariants(p in word()) {
            let r = rectangle_data(&p);
            let zero = QuadExt::zero();
            for j in 0..=p.n() {
                prop_assert!(r.heights[j] > zero && r.widths[j] > zero);
                if j < p.n() {
                    prop_assert!(r.widths[j + 1] < r.heights[j]);
                }
            }
            prop_assert!(r.split_ratio > zero && r.split_ratio < QuadExt::one());
            prop_assert!(r.dilatation.is_quadratic_irrational());
            prop_assert!(r.dilatation > QuadExt::one());
            let series = split_ratio_series(&p, 50 * p.n());
            prop_assert!((series - r.split_ratio.to_f64()).abs() < 1e-9);
        }

        #[test]
        fn flip_and_profile(p in word()) {
            let s = split_ratio(&p);
            prop_assert_eq!(&s + split_ratio(&p.flip()), QuadExt::one());
            prop_assert_eq!(dilatation(&p), dilatation(&p.flip()));
            prop_assert_eq!(s == QuadExt::rational(1, 2).unwrap(), p.is_symmetric());
        }
    }
}
