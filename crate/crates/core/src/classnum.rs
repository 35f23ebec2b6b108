//! Class numbers of `F_p[T][√D]` by naive point counting on `y² = D(x)`.
//!
//! `N_1..N_g` determine the L-polynomial `L(t) = Σ b_i t^i` through Newton's
//! identities and the functional equation; `L(1)` is the order of the
//! Jacobian, and `h(O) = L(1)/R` with `R` the regulator from the continued
//! fraction.

use rayon::prelude::*;
use serde::Serialize;

use crate::contfrac::CfExpansion;
use crate::error::{Error, Result};
use crate::families::FamilyInstance;
use crate::ff::{self, Field, FieldElement};
use crate::laurent;
use crate::limits::{self, COUNTING_WORK};
use crate::poly::Poly;

/// Points on the smooth model of `y² = D(x)` over `F_{p^m}`.
///
/// `D` must have prime base field, even degree `≥ 4` and square leading
/// coefficient, so both points at infinity are rational.
pub fn count_points(d: &Poly, m: u32) -> Result<i64> {
    check_curve(d)?;
    if m == 0 {
        return Err(Error::InvalidArgument("extension degree must be >= 1".into()));
    }
    let p = d.field().characteristic();
    limits::check("point count", limits::saturating_pow(p, m as u64), COUNTING_WORK)?;
    let ext = ff::ff_build(p, m as usize, 0)?;
    Ok(count_in(d, ext))
}

fn check_curve(d: &Poly) -> Result<()> {
    if !d.field().is_prime_field() {
        return Err(Error::Precondition(format!(
            "prime base field required for class numbers, got q = {}",
            d.field().order()
        )));
    }
    let (half, _) = laurent::real_data(d)?;
    if half < 2 {
        return Err(Error::Precondition(format!("deg D = {} below 4 (genus 0)", 2 * half)));
    }
    if !d.is_squarefree()? {
        return Err(Error::NotSquarefree(d.to_string()));
    }
    Ok(())
}

fn count_in(d: &Poly, ext: Field) -> i64 {
    let q = ext.order();
    let coeffs: Vec<FieldElement> = d
        .coeffs()
        .iter()
        .map(|c| ext.from_int(c.as_prime().expect("prime base") as i64))
        .collect();
    let mut is_square = vec![false; q as usize];
    for x in ext.elements() {
        is_square[(x * x).index() as usize] = true;
    }
    let affine: i64 = (0..q)
        .into_par_iter()
        .map(|i| {
            let x = ext.from_index(i);
            let y2 = coeffs.iter().rev().fold(ext.zero(), |acc, &c| acc * x + c);
            if y2.is_zero() {
                1
            } else if is_square[y2.index() as usize] {
                2
            } else {
                0
            }
        })
        .sum();
    affine + 2
}

/// `b_0..b_{2g}` from `N_1..N_g` (extra counts are ignored).
pub fn lpoly_from_counts(q: u64, genus: usize, counts: &[i64]) -> Result<Vec<i64>> {
    if counts.len() < genus {
        return Err(Error::InvalidArgument(format!(
            "need {genus} point counts, got {}",
            counts.len()
        )));
    }
    let q = q as i128;
    let sums: Vec<i128> = (1..=genus)
        .map(|m| q.pow(m as u32) + 1 - counts[m - 1] as i128)
        .collect();
    for (m, &s) in sums.iter().enumerate() {
        let m = m as u32 + 1;
        let bound = 4 * (genus as i128).pow(2) * q.pow(m);
        if s * s > bound {
            return Err(Error::Internal(format!(
                "power sum {s} at m = {m} violates the Weil bound for genus {genus}"
            )));
        }
    }
    // e_k from k·e_k = Σ_{i=1}^{k} (−1)^{i−1} e_{k−i} s_i
    let mut e: Vec<i128> = vec![1];
    for k in 1..=genus {
        let acc: i128 = (1..=k)
            .map(|i| if i % 2 == 1 { e[k - i] * sums[i - 1] } else { -e[k - i] * sums[i - 1] })
            .sum();
        if acc % k as i128 != 0 {
            return Err(Error::Internal(format!("non-integral e_{k} = {acc}/{k}")));
        }
        e.push(acc / k as i128);
    }
    let mut b = vec![0i128; 2 * genus + 1];
    for i in 0..=genus {
        b[i] = if i % 2 == 0 { e[i] } else { -e[i] };
        b[2 * genus - i] = q.pow((genus - i) as u32) * b[i];
    }
    b.into_iter()
        .map(|v| i64::try_from(v).map_err(|_| Error::Internal(format!("coefficient {v} overflows"))))
        .collect()
}

/// `N_m` implied by an L-polynomial, for any `m ≥ 1`.
pub fn implied_count(q: u64, lpoly: &[i64], m: usize) -> i128 {
    let q = q as i128;
    let e: Vec<i128> = lpoly
        .iter()
        .enumerate()
        .map(|(i, &b)| if i % 2 == 0 { b as i128 } else { -(b as i128) })
        .collect();
    let e_at = |k: usize| e.get(k).copied().unwrap_or(0);
    let mut sums: Vec<i128> = Vec::with_capacity(m);
    for k in 1..=m {
        let partial: i128 = (1..k)
            .map(|i| if i % 2 == 1 { e_at(k - i) * sums[i - 1] } else { -e_at(k - i) * sums[i - 1] })
            .sum();
        let ke = k as i128 * e_at(k) - partial;
        sums.push(if k % 2 == 1 { ke } else { -ke });
    }
    q.pow(m as u32) + 1 - sums[m - 1]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassData {
    #[serde(rename = "D")]
    pub d: String,
    pub q: u64,
    pub genus: usize,
    /// `N_1..N_g`.
    pub counts: Vec<i64>,
    pub lpoly: Vec<i64>,
    pub h_jac: i64,
    pub regulator: u64,
    #[serde(rename = "h_O")]
    pub h_o: i64,
}

impl ClassData {
    pub fn implied_count(&self, m: usize) -> i128 {
        implied_count(self.q, &self.lpoly, m)
    }

    /// `b_{2g−i} = q^{g−i} b_i` for all `i ≤ g`.
    pub fn functional_equation_holds(&self) -> bool {
        let g = self.genus;
        (0..=g).all(|i| {
            self.lpoly[2 * g - i] as i128 == (self.q as i128).pow((g - i) as u32) * self.lpoly[i] as i128
        })
    }

    /// `(√q − 1)^{2g} ≤ L(1) ≤ (√q + 1)^{2g}`.
    pub fn l1_within_weil_range(&self) -> bool {
        let r = (self.q as f64).sqrt();
        let g2 = 2 * self.genus as i32;
        let h = self.h_jac as f64;
        (r - 1.0).powi(g2) - 1e-6 <= h && h <= (r + 1.0).powi(g2) + 1e-6
    }
}

/// Counts, L-polynomial, regulator and `h(O)` for a real square-free `D`.
pub fn class_data(d: &Poly) -> Result<ClassData> {
    check_curve(d)?;
    let genus = d.deg().expect("nonzero") / 2 - 1;
    let q = d.field().order();
    limits::check("class number", limits::saturating_pow(q, genus as u64), COUNTING_WORK)?;
    let counts = (1..=genus as u32)
        .map(|m| count_points(d, m))
        .collect::<Result<Vec<_>>>()?;
    let lpoly = lpoly_from_counts(q, genus, &counts)?;
    let h_jac: i64 = lpoly.iter().sum();
    let regulator = CfExpansion::new(d)?.regulator();
    if h_jac <= 0 || h_jac % regulator as i64 != 0 {
        return Err(Error::RegulatorDivisibility {
            d: d.to_string(),
            regulator,
            h_jac,
        });
    }
    Ok(ClassData {
        d: d.to_string(),
        q,
        genus,
        counts,
        lpoly,
        h_jac,
        regulator,
        h_o: h_jac / regulator as i64,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorollaryVerdict {
    pub n: u32,
    pub n_divides_h_o: bool,
    pub h_o_at_least_n: bool,
    pub class: ClassData,
}

impl CorollaryVerdict {
    pub fn holds(&self) -> bool {
        self.n_divides_h_o && self.h_o_at_least_n
    }
}

pub fn verify_corollary(inst: &FamilyInstance) -> Result<CorollaryVerdict> {
    if !inst.flags.squarefree {
        return Err(Error::NotSquarefree(inst.d.to_string()));
    }
    if !inst.flags.monic {
        return Err(Error::Precondition(format!("D = {} is not monic", inst.d)));
    }
    let class = class_data(&inst.d)?;
    let n = inst.spec.n;
    Ok(CorollaryVerdict {
        n,
        n_divides_h_o: class.h_o % n as i64 == 0,
        h_o_at_least_n: class.h_o >= n as i64,
        class,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::ff::{field_of_order, prime_field};

    fn poly(p: u64, c: &[i64]) -> Poly {
        Poly::from_ints(prime_field(p).unwrap(), c)
    }

    /// Exhaustive count straight from the definition over the prime field.
    fn naive_count(d: &Poly) -> i64 {
        let f = d.field();
        let mut n = 2;
        for x in f.elements() {
            for y in f.elements() {
                if y * y == d.eval(x) {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn t4_plus_1_counts() {
        assert_eq!(count_points(&poly(5, &[1, 0, 0, 0, 1]), 1).unwrap(), 4);
        assert_eq!(count_points(&poly(3, &[1, 0, 0, 0, 1]), 1).unwrap(), 4);
    }

    #[test]
    fn counts_match_exhaustive() {
        for d in [poly(7, &[3, 1, 0, 2, 1]), poly(5, &[2, 0, 1, 4, 0, 1, 1]), poly(3, &[1, 1, 0, 0, 1])] {
            if d.is_squarefree().unwrap() {
                assert_eq!(count_points(&d, 1).unwrap(), naive_count(&d), "{d}");
            }
        }
    }

    #[test]
    fn class_data_examples() {
        let c = class_data(&poly(5, &[1, 0, 0, 0, 1])).unwrap();
        assert_eq!((c.genus, c.lpoly.clone(), c.h_jac, c.regulator, c.h_o), (1, vec![1, -2, 5], 4, 2, 2));
        let c = class_data(&poly(3, &[1, 0, 0, 0, 1])).unwrap();
        assert_eq!((c.lpoly.clone(), c.h_jac, c.regulator, c.h_o), (vec![1, 0, 3], 4, 2, 2));
        let json = serde_json::to_value(&c).unwrap();
        assert_eq!(json["h_O"], 2);
    }

    #[test]
    fn first_series_variant_two_is_even() {
        let inst = families::t2_variant(2, &Poly::t(prime_field(5).unwrap()), 2, &poly(5, &[1, 1])).unwrap();
        assert!(inst.admissible());
        let v = verify_corollary(&inst).unwrap();
        assert!(v.holds(), "{v:?}");
    }

    #[test]
    fn preconditions() {
        let f9 = field_of_order(9, 0).unwrap();
        let d9 = Poly::from_ints(f9, &[1, 0, 0, 0, 1]);
        assert!(matches!(class_data(&d9), Err(Error::Precondition(_))));
        assert!(matches!(class_data(&poly(5, &[1, 0, 0, 1])), Err(Error::NotReal(_))));
        assert!(matches!(class_data(&poly(5, &[1, 0, 1])), Err(Error::Precondition(_))));
        // (T²+1)²
        assert!(matches!(class_data(&poly(5, &[1, 0, 2, 0, 1])), Err(Error::NotSquarefree(_))));
    }

    #[test]
    fn genus_two_prediction() {
        let d = poly(5, &[2, 0, 1, 4, 0, 1, 1]);
        let c = class_data(&d).unwrap();
        assert!(c.functional_equation_holds());
        assert!(c.l1_within_weil_range());
        assert_eq!(c.implied_count(1), c.counts[0] as i128);
        assert_eq!(c.implied_count(3), count_points(&d, 3).unwrap() as i128);
    }

    #[test]
    fn weil_violation_detected() {
        assert!(lpoly_from_counts(5, 1, &[20]).is_err());
        assert_eq!(lpoly_from_counts(5, 1, &[4]).unwrap(), vec![1, -2, 5]);
    }

    #[test]
    fn h_o_invariant_under_square_scaling() {
        let f = prime_field(7).unwrap();
        let d = poly(7, &[3, 1, 0, 2, 1]);
        let scaled = d.scale(f.from_int(4));
        assert_eq!(class_data(&d).unwrap().h_o, class_data(&scaled).unwrap().h_o);
    }
}
