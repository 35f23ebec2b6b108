//! Continued fraction of `√D` over `F_q[T]`.
//!
//! The complete quotients are `α_i = (P_i + √D)/Q_i` with
//!
//! ```text
//! a_i     = (P_i + s) div Q_i            s = poly_part(√D)
//! P_{i+1} = a_i·Q_i − P_i
//! Q_{i+1} = (D − P_{i+1}²) / Q_i          (exact)
//! ```
//!
//! starting from `P_0 = 0, Q_0 = 1`. The expansion stops at the first
//! `i ≥ 1` with `Q_i` constant; that index is the (quasi-)period `l` and
//! `ε = p_{l−1} + q_{l−1}√D` is the fundamental unit.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ff::FieldElement;
use crate::laurent::{self, LaurentSeries};
use crate::poly::Poly;

pub const DEFAULT_MAX_STEPS: usize = 4096;

/// `(P + √D)/Q` with `Q | D − P²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadIrr {
    pub p: Poly,
    pub q: Poly,
    pub d: Poly,
}

impl QuadIrr {
    pub fn new(p: Poly, q: Poly, d: Poly) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !q.divides(&(&d - &(&p * &p))) {
            return Err(Error::InvalidArgument(format!("{q} does not divide D − P²")));
        }
        Ok(QuadIrr { p, q, d })
    }

    /// Partial quotient `(P + s) div Q`, where `s = poly_part(√D)`.
    pub fn floor(&self, s: &Poly) -> Poly {
        (&self.p + s).divmod(&self.q).expect("Q is nonzero").0
    }

    /// The same quantity evaluated in `F_q((1/T))` given a series for `√D`.
    pub fn to_laurent(&self, sqrt_d: &LaurentSeries) -> Result<LaurentSeries> {
        let err = sqrt_d.err();
        let num = LaurentSeries::from_poly(&self.p, err).add(sqrt_d);
        num.div(&LaurentSeries::from_poly(&self.q, err))
    }
}

/// One row of the expansion: `a_i` and the complete quotient `(P_i, Q_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CfStep {
    pub i: usize,
    pub a: Poly,
    pub p: Poly,
    pub q: Poly,
}

/// Convergent `p_i / q_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convergent {
    pub num: Poly,
    pub den: Poly,
}

/// Unbounded iterator over `(step_i, convergent_i)`, `i = 0, 1, …`.
#[derive(Clone, Debug)]
pub struct CfIter {
    d: Poly,
    s: Poly,
    i: usize,
    p: Poly,
    q: Poly,
    // (p_{i-1}, p_{i-2}) and (q_{i-1}, q_{i-2})
    num: (Poly, Poly),
    den: (Poly, Poly),
}

impl CfIter {
    /// Starts at `α_0 = √D`. `D` must be real, of degree ≥ 2 and not a square.
    pub fn new(d: &Poly) -> Result<Self> {
        let (half_deg, _) = laurent::real_data(d)?;
        if half_deg == 0 {
            return Err(Error::Precondition(format!("deg D must be at least 2, D = {d}")));
        }
        if d.sqrt_exact()?.is_some() {
            return Err(Error::Precondition(format!("D = {d} is a perfect square")));
        }
        let s = laurent::floor_sqrt(d)?;
        let f = d.field();
        Ok(CfIter {
            d: d.clone(),
            s,
            i: 0,
            p: Poly::zero(f),
            q: Poly::one(f),
            num: (Poly::one(f), Poly::zero(f)),
            den: (Poly::zero(f), Poly::one(f)),
        })
    }

    pub fn floor_sqrt(&self) -> &Poly {
        &self.s
    }
}

impl Iterator for CfIter {
    type Item = Result<(CfStep, Convergent)>;

    fn next(&mut self) -> Option<Self::Item> {
        let a = (&self.p + &self.s).divmod(&self.q).expect("Q_i is nonzero").0;
        let num = &(&a * &self.num.0) + &self.num.1;
        let den = &(&a * &self.den.0) + &self.den.1;
        let step = CfStep {
            i: self.i,
            a: a.clone(),
            p: self.p.clone(),
            q: self.q.clone(),
        };
        let next_p = &(&a * &self.q) - &self.p;
        let rest = &self.d - &(&next_p * &next_p);
        let next_q = match rest.div_exact(&self.q) {
            Ok(Some(v)) if !v.is_zero() => v,
            _ => {
                return Some(Err(Error::Internal(format!(
                    "Q_{} = {} does not divide D − P_{}² exactly",
                    self.i,
                    self.q,
                    self.i + 1
                ))))
            }
        };
        self.p = next_p;
        self.q = next_q;
        self.num = (num.clone(), std::mem::replace(&mut self.num.0, Poly::zero(self.d.field())));
        self.den = (den.clone(), std::mem::replace(&mut self.den.0, Poly::zero(self.d.field())));
        self.i += 1;
        Some(Ok((step, Convergent { num, den })))
    }
}

/// One (quasi-)period of the expansion of `√D`.
#[derive(Clone, Debug)]
pub struct CfExpansion {
    pub d: Poly,
    /// `⌊√D⌋ = a_0`.
    pub s: Poly,
    /// Steps `0..=l`; the last one carries the constant `Q_l`.
    pub steps: Vec<CfStep>,
    /// Convergents `0..=l`.
    pub convergents: Vec<Convergent>,
    pub period: usize,
    /// `(p_{l−1}, q_{l−1})`.
    pub unit: (Poly, Poly),
    pub regulator: u64,
    /// False when `D` failed the square-free test; theorem checks refuse such expansions.
    pub squarefree: bool,
}

pub fn cf_expand(d: &Poly, max_steps: usize) -> Result<CfExpansion> {
    if max_steps == 0 {
        return Err(Error::InvalidArgument("max_steps must be >= 1".into()));
    }
    let iter = CfIter::new(d)?;
    let s = iter.floor_sqrt().clone();
    let squarefree = d.is_squarefree()?;
    let mut steps = Vec::new();
    let mut convergents = Vec::new();
    for item in iter {
        let (step, conv) = item?;
        let done = step.i >= 1 && step.q.deg() == Some(0);
        let i = step.i;
        steps.push(step);
        convergents.push(conv);
        if done {
            break;
        }
        if i >= max_steps {
            return Err(Error::PeriodOverflow(max_steps));
        }
    }
    let period = steps.len() - 1;
    let unit = &convergents[period - 1];
    let cf = CfExpansion {
        d: d.clone(),
        s,
        unit: (unit.num.clone(), unit.den.clone()),
        regulator: unit.num.deg().expect("nonzero convergent") as u64,
        steps,
        convergents,
        period,
        squarefree,
    };
    cf.check_regulator()?;
    Ok(cf)
}

impl CfExpansion {
    pub fn new(d: &Poly) -> Result<Self> {
        cf_expand(d, DEFAULT_MAX_STEPS)
    }

    /// `R = deg p_{l−1}`, cross-checked against `Σ_{i=1}^{l} deg a_i`.
    pub fn regulator(&self) -> u64 {
        self.regulator
    }

    fn check_regulator(&self) -> Result<()> {
        let sum: usize = self.steps[1..=self.period]
            .iter()
            .map(|s| s.a.deg().unwrap_or(0))
            .sum();
        if sum as u64 != self.regulator {
            return Err(Error::Internal(format!(
                "regulator {} differs from Σ deg a_i = {sum}",
                self.regulator
            )));
        }
        Ok(())
    }

    /// `N(ε) = p_{l−1}² − D q_{l−1}² = (−1)^l Q_l`.
    pub fn unit_norm(&self) -> FieldElement {
        let q_l = self.steps[self.period].q.lc();
        if self.period.is_multiple_of(2) {
            q_l
        } else {
            -q_l
        }
    }

    /// `deg D / 2`, the bound in the convergent correspondence.
    pub fn half_deg(&self) -> usize {
        self.d.deg().unwrap_or(0) / 2
    }

    /// Convergent solutions `(p_{i−1}, q_{i−1}, (−1)^i Q_i)` for `i = 1..=l`.
    pub fn period_solutions(&self) -> impl Iterator<Item = (usize, &Convergent, Poly)> {
        (1..=self.period).map(move |i| {
            let q = &self.steps[i].q;
            let c = if i % 2 == 0 { q.clone() } else { -q };
            (i, &self.convergents[i - 1], c)
        })
    }

    pub fn record(&self) -> CfRecord {
        CfRecord {
            d: self.d.to_string(),
            q: self.d.field().order(),
            steps: self
                .steps
                .iter()
                .map(|s| StepRecord {
                    i: s.i,
                    a: s.a.to_string(),
                    p: s.p.to_string(),
                    q: s.q.to_string(),
                })
                .collect(),
            period: self.period,
            unit: [self.unit.0.to_string(), self.unit.1.to_string()],
            regulator: self.regulator,
            unit_norm: self.unit_norm().to_string(),
            squarefree: self.squarefree,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StepRecord {
    pub i: usize,
    pub a: String,
    #[serde(rename = "P")]
    pub p: String,
    #[serde(rename = "Q")]
    pub q: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CfRecord {
    #[serde(rename = "D")]
    pub d: String,
    pub q: u64,
    pub steps: Vec<StepRecord>,
    pub period: usize,
    pub unit: [String; 2],
    pub regulator: u64,
    pub unit_norm: String,
    pub squarefree: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::prime_field;

    fn poly(p: u64, c: &[i64]) -> Poly {
        Poly::from_ints(prime_field(p).unwrap(), c)
    }

    #[test]
    fn t4_plus_1_over_f5() {
        let d = poly(5, &[1, 0, 0, 0, 1]);
        let cf = CfExpansion::new(&d).unwrap();
        assert_eq!(cf.s, poly(5, &[0, 0, 1]));
        assert_eq!(cf.steps[0].a, poly(5, &[0, 0, 1]));
        assert_eq!(cf.steps[1].p, poly(5, &[0, 0, 1]));
        assert_eq!(cf.steps[1].q, poly(5, &[1]));
        assert_eq!(cf.steps[1].a, poly(5, &[0, 0, 2]));
        assert_eq!(cf.period, 1);
        assert_eq!(cf.unit, (poly(5, &[0, 0, 1]), poly(5, &[1])));
        assert_eq!(cf.regulator(), 2);
        assert_eq!(cf.unit_norm(), d.field().from_int(4));
    }

    #[test]
    fn t4_plus_1_over_f3() {
        let d = poly(3, &[1, 0, 0, 0, 1]);
        let cf = CfExpansion::new(&d).unwrap();
        assert_eq!(cf.steps[0].a, poly(3, &[0, 0, 1]));
        assert!(cf.steps[1].q.is_one());
        assert_eq!(cf.period, 1);
        assert_eq!(cf.regulator(), 2);
        assert_eq!(cf.unit_norm(), d.field().from_int(2));
        // one-term period: R = deg a_1 = deg 2s = deg D / 2
        assert_eq!(cf.steps[1].a.deg(), Some(2));
    }

    #[test]
    fn odd_degree_is_not_real() {
        assert!(matches!(
            CfExpansion::new(&poly(5, &[1, 0, 0, 1])),
            Err(Error::NotReal(_))
        ));
    }

    #[test]
    fn squares_and_small_degree_rejected() {
        assert!(CfExpansion::new(&poly(5, &[1, 2, 1])).is_err());
        assert!(CfExpansion::new(&poly(5, &[1])).is_err());
    }

    #[test]
    fn non_squarefree_expands_with_flag() {
        // (T+1)^2 (T^2+2), not a square
        let d = &poly(5, &[1, 1]).pow(2) * &poly(5, &[2, 0, 1]);
        let cf = CfExpansion::new(&d).unwrap();
        assert!(!cf.squarefree);
    }

    #[test]
    fn overflow_is_reported() {
        let d = poly(7, &[3, 1, 4, 1, 5, 2, 1]);
        let full = CfExpansion::new(&d).unwrap();
        if full.period > 1 {
            assert_eq!(cf_expand(&d, 1).unwrap_err(), Error::PeriodOverflow(1));
        }
        assert!(cf_expand(&d, 0).is_err());
    }

    #[test]
    fn convergent_identity_one_period() {
        let d = poly(7, &[3, 1, 4, 1, 5, 2, 1]);
        let cf = CfExpansion::new(&d).unwrap();
        for (i, conv, c) in cf.period_solutions() {
            let n = &(&conv.num * &conv.num) - &(&d * &(&conv.den * &conv.den));
            assert_eq!(n, c, "i = {i}");
        }
    }

    #[test]
    fn floor_matches_laurent_floor() {
        let d = poly(5, &[2, 3, 0, 1, 1, 4, 1]);
        let sqrt = laurent::sqrt_of_poly(&d, 40).unwrap();
        let iter = CfIter::new(&d).unwrap();
        let s = iter.floor_sqrt().clone();
        for item in iter.take(12) {
            let (step, _) = item.unwrap();
            let alpha = QuadIrr::new(step.p.clone(), step.q.clone(), d.clone()).unwrap();
            assert_eq!(alpha.to_laurent(&sqrt).unwrap().poly_part().unwrap(), step.a);
            assert_eq!(alpha.floor(&s), step.a);
        }
    }

    #[test]
    fn record_shape() {
        let cf = CfExpansion::new(&poly(5, &[1, 0, 0, 0, 1])).unwrap();
        let json = serde_json::to_value(cf.record()).unwrap();
        assert_eq!(json["D"], "T^4+1");
        assert_eq!(json["q"], 5);
        assert_eq!(json["period"], 1);
        assert_eq!(json["regulator"], 2);
        assert_eq!(json["unit"][0], "T^2");
        assert_eq!(json["steps"][1]["a"], "2*T^2");
    }
}
