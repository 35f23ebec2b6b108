//! Truncated Laurent series in `1/T`, i.e. elements of `F_q((1/T))` known to
//! finite precision. This is the completion at the infinite place where `√D`
//! lives when `D` is real (even degree, square leading coefficient).

use std::fmt;

use crate::error::{Error, Result};
use crate::ff::{Field, FieldElement};
use crate::poly::Poly;

/// `Σ coeffs[k]·T^(top−k) + O(T^err)` with `err = top − coeffs.len()`.
///
/// The error term covers degree `err` and below. A series that is zero to
/// the known precision has no coefficients and `top == err`.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    field: Field,
    top: i64,
    coeffs: Vec<FieldElement>,
}

impl LaurentSeries {
    pub fn new(field: Field, top: i64, coeffs: Vec<FieldElement>) -> Self {
        let mut s = LaurentSeries { field, top, coeffs };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.top -= lead as i64;
        }
    }

    /// The exact polynomial `p`, with every coefficient of degree `> err` known.
    pub fn from_poly(p: &Poly, err: i64) -> Self {
        let field = p.field();
        let Some(d) = p.deg() else {
            return LaurentSeries::new(field, err, Vec::new());
        };
        let top = d as i64;
        let coeffs = ((err + 1)..=top)
            .rev()
            .map(|e| if e >= 0 { p.coeff(e as usize) } else { field.zero() })
            .collect();
        LaurentSeries::new(field, top.max(err), coeffs)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Degree of the leading known term (equals `err` when zero to precision).
    pub fn top(&self) -> i64 {
        self.top
    }

    pub fn err(&self) -> i64 {
        self.top - self.coeffs.len() as i64
    }

    /// Number of known coefficients (relative precision).
    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<FieldElement> {
        self.coeffs.first().copied()
    }

    /// Coefficient of `T^e`; `None` when `e` lies inside the error term.
    pub fn coeff(&self, e: i64) -> Option<FieldElement> {
        if e <= self.err() {
            None
        } else if e > self.top {
            Some(self.field.zero())
        } else {
            Some(self.coeffs[(self.top - e) as usize])
        }
    }

    fn known(&self, e: i64) -> FieldElement {
        self.coeff(e).expect("coefficient within precision")
    }

    /// Truncates or zero-extends the window to `len` terms. Extending claims
    /// knowledge of the new terms, which only Newton iteration may do.
    pub(crate) fn with_len(&self, len: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(len, self.field.zero());
        LaurentSeries {
            field: self.field,
            top: self.top,
            coeffs,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.field.same(other.field), "series over different fields");
        let err = self.err().max(other.err());
        let top = self.top.max(other.top).max(err);
        let coeffs = ((err + 1)..=top)
            .rev()
            .map(|e| self.known(e) + other.known(e))
            .collect();
        LaurentSeries::new(self.field, top, coeffs)
    }

    pub fn neg(&self) -> Self {
        LaurentSeries {
            field: self.field,
            top: self.top,
            coeffs: self.coeffs.iter().map(|&c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: FieldElement) -> Self {
        if c.is_zero() {
            return LaurentSeries::new(self.field, self.err(), Vec::new());
        }
        LaurentSeries {
            field: self.field,
            top: self.top,
            coeffs: self.coeffs.iter().map(|&x| x * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert!(self.field.same(other.field), "series over different fields");
        let err = (self.top + other.err()).max(other.top + self.err());
        let top = self.top + other.top;
        let n = self.coeffs.len().min(other.coeffs.len());
        if self.is_zero() || other.is_zero() {
            return LaurentSeries::new(self.field, err, Vec::new());
        }
        let coeffs = (0..n)
            .map(|k| {
                (0..=k).fold(self.field.zero(), |acc, i| acc + self.coeffs[i] * other.coeffs[k - i])
            })
            .collect();
        LaurentSeries::new(self.field, top, coeffs)
    }

    /// Reciprocal by long division; keeps the relative precision.
    pub fn inv(&self) -> Result<Self> {
        let lead = self.leading().ok_or(Error::DivisionByZero)?;
        let lead_inv = lead.inv().expect("leading coefficient is nonzero");
        let n = self.coeffs.len();
        let mut out: Vec<FieldElement> = Vec::with_capacity(n);
        out.push(lead_inv);
        for k in 1..n {
            let acc = (1..=k).fold(self.field.zero(), |acc, i| acc + self.coeffs[i] * out[k - i]);
            out.push(-acc * lead_inv);
        }
        Ok(LaurentSeries::new(self.field, -self.top, out))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// Terms of degree `≥ 0` as a polynomial.
    pub fn poly_part(&self) -> Result<Poly> {
        if self.err() >= 0 {
            return Err(Error::Precision(format!(
                "polynomial part of {self} is not determined"
            )));
        }
        if self.top < 0 {
            return Ok(Poly::zero(self.field));
        }
        let coeffs = (0..=self.top).map(|e| self.known(e)).collect();
        Ok(Poly::from_coeffs(self.field, coeffs))
    }
}

/// Checks the real condition and returns `(deg D / 2, √sgn(D))`.
pub fn real_data(d: &Poly) -> Result<(usize, FieldElement)> {
    let n = d
        .deg()
        .ok_or_else(|| Error::NotReal("D = 0".into()))?;
    if n % 2 == 1 {
        return Err(Error::NotReal(format!("deg D = {n} is odd")));
    }
    let lead = d
        .lc()
        .sqrt()
        .ok_or_else(|| Error::NotReal(format!("leading coefficient {} is not a square", d.lc())))?;
    Ok((n / 2, lead))
}

/// Default working precision for `√D`.
pub fn default_prec(d: &Poly) -> usize {
    d.deg().unwrap_or(0) + 4
}

/// `√D` to `prec` terms by Newton iteration `S ← (S + D/S)/2`, starting from
/// the exact leading term `√sgn(D)·T^{deg D/2}`.
pub fn sqrt_of_poly(d: &Poly, prec: usize) -> Result<LaurentSeries> {
    let (half_deg, lead) = real_data(d)?;
    if prec < half_deg + 2 {
        return Err(Error::InvalidArgument(format!(
            "precision {prec} below deg D/2 + 2 = {}",
            half_deg + 2
        )));
    }
    let field = d.field();
    let half = field.from_int(2).inv().expect("odd characteristic");
    let top_d = (2 * half_deg) as i64;
    let iterations = prec.next_power_of_two().trailing_zeros() as usize + 1;
    let mut s = LaurentSeries::new(field, half_deg as i64, vec![lead]);
    let mut w = 1;
    for _ in 0..iterations {
        w = (2 * w).min(prec);
        let s_ext = s.with_len(w);
        let d_w = LaurentSeries::from_poly(d, top_d - w as i64);
        s = s_ext.add(&d_w.div(&s_ext)?).scale(half);
    }
    Ok(s)
}

/// `poly_part(√D)`, the polynomial `s` driving the continued fraction.
pub fn floor_sqrt(d: &Poly) -> Result<Poly> {
    sqrt_of_poly(d, default_prec(d))?.poly_part()
}

fn render_monomial(c: FieldElement, e: i64) -> String {
    let cs = c.to_string();
    let cs = if cs.contains('+') && e != 0 {
        format!("({cs})")
    } else {
        cs
    };
    let var = match e {
        1 => "T".to_string(),
        e => format!("T^{e}"),
    };
    match (e, c.is_one()) {
        (0, _) => cs,
        (_, true) => var,
        _ => format!("{cs}*{var}"),
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, &c)| render_monomial(c, self.top - k as i64))
            .collect();
        let err = self.err();
        terms.push(if err == 1 {
            "O(T)".to_string()
        } else {
            format!("O(T^{err})")
        });
        write!(f, "{}", terms.join("+"))
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::prime_field;

    fn p5(c: &[i64]) -> Poly {
        Poly::from_ints(prime_field(5).unwrap(), c)
    }

    #[test]
    fn sqrt_of_t4_plus_1() {
        let s = sqrt_of_poly(&p5(&[1, 0, 0, 0, 1]), 5).unwrap();
        assert_eq!(s.to_string(), "T^2+3*T^-2+O(T^-3)");
        assert_eq!(s.poly_part().unwrap(), p5(&[0, 0, 1]));
    }

    #[test]
    fn sqrt_of_exact_square() {
        let s = sqrt_of_poly(&p5(&[0, 0, 1]), 4).unwrap();
        assert_eq!(s.poly_part().unwrap(), p5(&[0, 1]));
        assert!((-1..=0).all(|e| s.coeff(e).unwrap().is_zero()));
    }

    #[test]
    fn imaginary_inputs_rejected() {
        assert!(matches!(sqrt_of_poly(&p5(&[1, 0, 0, 1]), 6), Err(Error::NotReal(_))));
        // 2 is not a square mod 5
        assert!(matches!(sqrt_of_poly(&p5(&[1, 0, 2]), 6), Err(Error::NotReal(_))));
        assert!(matches!(sqrt_of_poly(&p5(&[1, 0, 0, 0, 1]), 3), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn poly_part_examples() {
        let f = prime_field(5).unwrap();
        let s = LaurentSeries::new(f, -1, vec![f.from_int(3), f.zero()]);
        assert!(s.poly_part().unwrap().is_zero());
        let s = LaurentSeries::from_poly(&p5(&[1, 2]), -3);
        assert_eq!(s.poly_part().unwrap(), p5(&[1, 2]));
        let coarse = LaurentSeries::new(f, 2, vec![f.one()]);
        assert!(coarse.poly_part().is_err());
    }

    #[test]
    fn square_agrees_with_d() {
        let d = p5(&[3, 1, 4, 2, 1, 0, 1]);
        let s = sqrt_of_poly(&d, 12).unwrap();
        let sq = s.mul(&s);
        for e in sq.err() + 1..=6 {
            let want = if e >= 0 { d.coeff(e as usize) } else { d.field().zero() };
            assert_eq!(sq.coeff(e).unwrap(), want, "degree {e}");
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let s = LaurentSeries::from_poly(&p5(&[1, 2, 3]), -8);
        let one = s.mul(&s.inv().unwrap());
        assert_eq!(one.top(), 0);
        assert!(one.leading().unwrap().is_one());
        assert!((one.err() + 1..0).all(|e| one.coeff(e).unwrap().is_zero()));
    }
}
