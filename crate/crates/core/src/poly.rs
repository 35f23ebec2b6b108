//! The polynomial ring `R = F_q[T]`.
//!
//! Dense coefficient vectors in ascending degree with no trailing zeros.
//! Besides ring arithmetic this module carries what the family generators
//! and the norm-equation code need: GCDs, square-freeness, full
//! factorization (square-free split, distinct-degree, Cantor–Zassenhaus),
//! divisor enumeration and perfect-power detection.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ff::{Field, FieldElement};

#[derive(Clone)]
pub struct Poly {
    field: Field,
    coeffs: Vec<FieldElement>,
}

/// `unit · ∏ factor^multiplicity`, factors monic irreducible and sorted
/// canonically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElement,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn reconstruct(&self) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(self.unit), |acc, (f, e)| &acc * &f.pow(*e))
    }

    /// Number of monic divisors, `∏ (e_i + 1)`.
    pub fn divisor_count(&self) -> usize {
        self.factors.iter().map(|(_, e)| *e as usize + 1).product()
    }
}

impl Poly {
    pub fn zero(field: Field) -> Poly {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: Field) -> Poly {
        Poly::constant(field.one())
    }

    pub fn constant(c: FieldElement) -> Poly {
        Poly::from_coeffs(c.field(), vec![c])
    }

    /// The indeterminate `T`.
    pub fn t(field: Field) -> Poly {
        Poly::monomial(field.one(), 1)
    }

    pub fn monomial(c: FieldElement, k: usize) -> Poly {
        let field = c.field();
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = c;
        Poly::from_coeffs(field, coeffs)
    }

    pub fn from_coeffs(field: Field, coeffs: Vec<FieldElement>) -> Poly {
        let mut p = Poly { field, coeffs };
        p.normalize();
        p
    }

    pub fn from_ints(field: Field, coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn from_u32(field: Field, coeffs: &[u32]) -> Poly {
        Poly::from_coeffs(field, coeffs.iter().map(|&c| field.from_int(c as i64)).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Ascending coefficients; empty for the zero polynomial.
    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Degree, `None` standing for `-∞` (so `None < Some(_)` as it should).
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Zero or a nonzero constant.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Nonzero constant, i.e. a unit of `R`.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lc(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or_else(|| self.field.zero())
    }

    pub fn coeff(&self, k: usize) -> FieldElement {
        self.coeffs.get(k).copied().unwrap_or_else(|| self.field.zero())
    }

    pub fn monic(&self) -> Poly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(lc.inv().expect("leading coefficient is nonzero")),
        }
    }

    pub fn scale(&self, c: FieldElement) -> Poly {
        Poly::from_coeffs(self.field, self.coeffs.iter().map(|&x| x * c).collect())
    }

    /// Multiplication by `T^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly {
            field: self.field,
            coeffs,
        }
    }

    fn check_field(&self, other: &Poly) {
        assert!(
            self.field.same(other.field),
            "polynomials over different fields: {} vs {}",
            self.field,
            other.field
        );
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        if !self.field.same(other.field) {
            return Err(Error::FieldMismatch);
        }
        Ok(self + other)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        if !self.field.same(other.field) {
            return Err(Error::FieldMismatch);
        }
        Ok(self * other)
    }

    fn add_impl(&self, other: &Poly) -> Poly {
        self.check_field(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Poly::from_coeffs(self.field, coeffs)
    }

    fn mul_impl(&self, other: &Poly) -> Poly {
        self.check_field(other);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let n = self.coeffs.len() + other.coeffs.len() - 1;
        if self.field.is_prime_field() {
            // products are < 10^8, so u64 sums never overflow at these sizes
            let p = self.field.characteristic();
            let mut acc = vec![0u64; n];
            for (i, a) in self.coeffs.iter().enumerate() {
                let a = a.coeffs()[0] as u64;
                if a == 0 {
                    continue;
                }
                for (j, b) in other.coeffs.iter().enumerate() {
                    acc[i + j] += a * b.coeffs()[0] as u64;
                }
            }
            let coeffs = acc.into_iter().map(|v| self.field.from_int((v % p) as i64)).collect();
            return Poly::from_coeffs(self.field, coeffs);
        }
        let mut coeffs = vec![self.field.zero(); n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j] + a * b;
            }
        }
        Poly::from_coeffs(self.field, coeffs)
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division: `self = q·divisor + r` with `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        if !self.field.same(divisor.field) {
            return Err(Error::FieldMismatch);
        }
        let db = divisor.deg().ok_or(Error::DivisionByZero)?;
        let Some(da) = self.deg() else {
            return Ok((Poly::zero(self.field), Poly::zero(self.field)));
        };
        if da < db {
            return Ok((Poly::zero(self.field), self.clone()));
        }
        let inv_lc = divisor.lc().inv().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.field.zero(); da - db + 1];
        for k in (0..=da - db).rev() {
            let c = rem[k + db] * inv_lc;
            if c.is_zero() {
                continue;
            }
            quot[k] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j] - c * d;
            }
        }
        rem.truncate(db);
        Ok((
            Poly::from_coeffs(self.field, quot),
            Poly::from_coeffs(self.field, rem),
        ))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Quotient when `divisor` divides `self`, `None` otherwise.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Option<Poly>> {
        let (q, r) = self.divmod(divisor)?;
        Ok(r.is_zero().then_some(q))
    }

    pub fn divides(&self, other: &Poly) -> bool {
        !self.is_zero() && other.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// `self^e mod modulus`.
    pub fn powmod(&self, mut e: u64, modulus: &Poly) -> Result<Poly> {
        let mut base = self.rem(modulus)?;
        let mut acc = Poly::one(self.field).rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(modulus)?;
            }
            e >>= 1;
            if e > 0 {
                base = (&base * &base).rem(modulus)?;
            }
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * self.field.from_int(k as i64))
            .collect();
        Poly::from_coeffs(self.field, coeffs)
    }

    /// Monic gcd. `gcd(0, 0)` is the zero polynomial.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s·self + t·other = g`, `g` monic.
    pub fn xgcd(&self, other: &Poly) -> Result<(Poly, Poly, Poly)> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroPolynomial("xgcd of two zeros"));
        }
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1)?;
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
            (t0, t1) = (t1, t);
        }
        let inv = r0.lc().inv().expect("nonzero gcd");
        Ok((r0.scale(inv), s0.scale(inv), t0.scale(inv)))
    }

    /// `gcd(self, other)` is a nonzero constant.
    pub fn coprime(&self, other: &Poly) -> bool {
        self.gcd(other).is_unit()
    }

    pub fn eval(&self, x: FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(x.field().zero(), |acc, &c| acc * x + c)
    }

    /// Evaluates a polynomial over `F_p` at a point of `F_{p^m}` through the
    /// constant embedding `F_p ↪ F_{p^m}`.
    pub fn eval_in_extension(&self, x: FieldElement) -> Result<FieldElement> {
        let target = x.field();
        if self.field.same(target) {
            return Ok(self.eval(x));
        }
        if !self.field.is_prime_field() || self.field.characteristic() != target.characteristic() {
            return Err(Error::FieldMismatch);
        }
        Ok(self.coeffs.iter().rev().fold(target.zero(), |acc, c| {
            acc * x + target.from_int(c.coeffs()[0] as i64)
        }))
    }

    /// True iff `gcd(D, D')` is constant and `D' ≠ 0`. A vanishing derivative
    /// means `D` is a `p`-th power and is reported as not square-free.
    pub fn is_squarefree(&self) -> Result<bool> {
        if self.is_constant() {
            return Err(Error::ConstantPolynomial("is_squarefree"));
        }
        let d = self.derivative();
        if d.is_zero() {
            return Ok(false);
        }
        Ok(self.gcd(&d).is_unit())
    }

    /// `c(T)` with `c = Σ c_{kp} T^{kp}` mapped to `Σ c_{kp}^{1/p} T^k`.
    fn pth_root(&self) -> Poly {
        let p = self.field.characteristic() as usize;
        // x^(1/p) = x^(p^(m-1)) in F_{p^m}
        let e = self.field.order() / self.field.characteristic();
        let coeffs = self.coeffs.iter().step_by(p).map(|c| c.pow(e)).collect();
        Poly::from_coeffs(self.field, coeffs)
    }

    /// Square-free decomposition of a monic polynomial: pairs `(g, i)` with
    /// `self = ∏ g^i`, each `g` square-free (not necessarily irreducible).
    fn squarefree_parts(&self) -> Vec<(Poly, u32)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let d = self.derivative();
        if d.is_zero() {
            let p = self.field.characteristic() as u32;
            for (g, e) in self.pth_root().squarefree_parts() {
                out.push((g, e * p));
            }
            return out;
        }
        let mut c = self.gcd(&d);
        let mut w = self.div_exact(&c).unwrap().expect("gcd divides");
        let mut i = 1;
        while !w.is_one() {
            let y = w.gcd(&c);
            let fac = w.div_exact(&y).unwrap().expect("gcd divides");
            if !fac.is_one() {
                out.push((fac, i));
            }
            c = c.div_exact(&y).unwrap().expect("gcd divides");
            w = y;
            i += 1;
        }
        if !c.is_one() {
            let p = self.field.characteristic() as u32;
            for (g, e) in c.pth_root().squarefree_parts() {
                out.push((g, e * p));
            }
        }
        out
    }

    /// Distinct-degree split of a monic square-free polynomial.
    fn distinct_degree(&self) -> Vec<(Poly, usize)> {
        let q = self.field.order();
        let x = Poly::t(self.field);
        let mut rest = self.clone();
        let mut h = x.clone();
        let mut out = Vec::new();
        let mut d = 1;
        while rest.deg().unwrap_or(0) >= 2 * d {
            h = h.powmod(q, &rest).unwrap();
            let g = (&h - &x).gcd(&rest);
            if !g.is_one() {
                rest = rest.div_exact(&g).unwrap().expect("gcd divides");
                h = h.rem(&rest).unwrap();
                out.push((g, d));
            }
            d += 1;
        }
        if let Some(k) = rest.deg().filter(|&k| k > 0) {
            out.push((rest, k));
        }
        out
    }

    /// Cantor–Zassenhaus equal-degree splitting (odd `q`).
    fn equal_degree(&self, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) {
        let n = self.deg().unwrap_or(0);
        if n == d {
            out.push(self.clone());
            return;
        }
        let q = self.field.order();
        loop {
            let a = Poly::from_coeffs(
                self.field,
                (0..n).map(|_| self.field.from_index(rng.random_range(0..q))).collect(),
            );
            if a.is_constant() {
                continue;
            }
            let mut g = a.gcd(self);
            if g.is_one() {
                // a^((q^d - 1)/2) = (a^(1 + q + … + q^(d-1)))^((q - 1)/2)
                let mut cur = a.clone();
                let mut norm = a.clone();
                for _ in 1..d {
                    cur = cur.powmod(q, self).unwrap();
                    norm = (&norm * &cur).rem(self).unwrap();
                }
                let b = norm.powmod((q - 1) / 2, self).unwrap();
                g = (&b - &Poly::one(self.field)).gcd(self);
            }
            let k = g.deg().unwrap_or(0);
            if k > 0 && k < n {
                let other = self.div_exact(&g).unwrap().expect("gcd divides");
                g.equal_degree(d, rng, out);
                other.equal_degree(d, rng, out);
                return;
            }
        }
    }

    /// Complete factorization into monic irreducibles. The random splitting
    /// choices are driven by `seed`; the result itself is unique.
    pub fn factor(&self, seed: u64) -> Result<Factorization> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("factor"));
        }
        let unit = self.lc();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut factors: Vec<(Poly, u32)> = Vec::new();
        for (part, e) in self.monic().squarefree_parts() {
            for (block, d) in part.distinct_degree() {
                let mut pieces = Vec::new();
                block.equal_degree(d, &mut rng, &mut pieces);
                for f in pieces {
                    match factors.iter_mut().find(|(g, _)| *g == f) {
                        Some((_, m)) => *m += e,
                        None => factors.push((f, e)),
                    }
                }
            }
        }
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(Factorization { unit, factors })
    }

    /// Rabin's test: `T^{q^n} ≡ T (mod A)` and `gcd(T^{q^{n/ℓ}} − T, A) = 1`
    /// for every prime `ℓ | n`.
    pub fn is_irreducible(&self) -> Result<bool> {
        let n = match self.deg() {
            None | Some(0) => return Err(Error::ConstantPolynomial("is_irreducible")),
            Some(n) => n,
        };
        if n == 1 {
            return Ok(true);
        }
        let a = self.monic();
        let q = self.field.order();
        let x = Poly::t(self.field);
        let mut frob = vec![x.rem(&a)?];
        for _ in 0..n {
            let next = frob.last().unwrap().powmod(q, &a)?;
            frob.push(next);
        }
        if frob[n] != x.rem(&a)? {
            return Ok(false);
        }
        for l in prime_divisors(n) {
            if !(&frob[n / l] - &x).gcd(&a).is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All monic divisors in canonical order (degree, then coefficients from
    /// the top down).
    pub fn monic_divisors(&self) -> Result<Vec<Poly>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("monic_divisors"));
        }
        let fac = self.factor(0)?;
        let mut divs = vec![Poly::one(self.field)];
        for (f, e) in &fac.factors {
            let mut next = Vec::with_capacity(divs.len() * (*e as usize + 1));
            for d in &divs {
                let mut cur = d.clone();
                next.push(cur.clone());
                for _ in 0..*e {
                    cur = &cur * f;
                    next.push(cur.clone());
                }
            }
            divs = next;
        }
        divs.sort();
        Ok(divs)
    }

    /// Writes `self = c · W^j` with `W` monic when possible.
    pub fn nth_power_form(&self, j: u32) -> Result<Option<(FieldElement, Poly)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("nth_power_form"));
        }
        if j == 0 {
            return Err(Error::InvalidArgument("exponent j must be >= 1".into()));
        }
        let fac = self.factor(0)?;
        if fac.factors.iter().any(|(_, e)| e % j != 0) {
            return Ok(None);
        }
        let w = fac
            .factors
            .iter()
            .fold(Poly::one(self.field), |acc, (f, e)| &acc * &f.pow(e / j));
        Ok(Some((fac.unit, w)))
    }

    /// Exact square root, solving for coefficients from the top down. Of
    /// the two roots the one whose leading coefficient is `sqrt(lc)` is
    /// returned.
    pub fn sqrt_exact(&self) -> Result<Option<Poly>> {
        let Some(root) = self.sqrt_top()? else {
            return Ok(None);
        };
        Ok((&root * &root == *self).then_some(root))
    }

    /// The unique `W` with leading coefficient `sqrt(lc)` such that `W²`
    /// agrees with `self` in every degree `≥ deg W`; `None` for odd degree or
    /// non-square leading coefficient.
    pub fn sqrt_top(&self) -> Result<Option<Poly>> {
        let Some(n) = self.deg() else {
            return Err(Error::ZeroPolynomial("sqrt_top"));
        };
        if n % 2 == 1 {
            return Ok(None);
        }
        let Some(lead) = self.lc().sqrt() else {
            return Ok(None);
        };
        let k = n / 2;
        let inv_two_lead = (lead + lead).inv().expect("odd characteristic");
        // w[i] holds the coefficient of T^(k - i)
        let mut w = vec![lead];
        for i in 1..=k {
            let mut acc = self.coeff(n - i);
            for j in 1..i {
                acc = acc - w[j] * w[i - j];
            }
            w.push(acc * inv_two_lead);
        }
        w.reverse();
        Ok(Some(Poly::from_coeffs(self.field, w)))
    }

    /// Canonical rendering in a named variable, e.g. `T^4+2*T+3`.
    pub fn render_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let cs = if cs.contains('+') && k > 0 {
                format!("({cs})")
            } else {
                cs
            };
            terms.push(match k {
                0 => cs,
                1 if c.is_one() => var.to_string(),
                1 => format!("{cs}*{var}"),
                _ if c.is_one() => format!("{var}^{k}"),
                _ => format!("{cs}*{var}^{k}"),
            });
        }
        terms.join("+")
    }

    /// All monic polynomials of degree `d` in canonical order.
    pub fn monic_of_degree(field: Field, d: usize) -> impl Iterator<Item = Poly> {
        let q = field.order();
        let count = q.checked_pow(d as u32).expect("enumeration size fits u64");
        (0..count).map(move |mut idx| {
            let mut coeffs = Vec::with_capacity(d + 1);
            for _ in 0..d {
                coeffs.push(field.from_index(idx % q));
                idx /= q;
            }
            coeffs.push(field.one());
            Poly::from_coeffs(field, coeffs)
        })
    }
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.field.same(other.field) && self.coeffs == other.coeffs
    }
}

impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl Ord for Poly {
    /// Canonical order: field, degree, then coefficient indices from the top.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.field.characteristic(), self.field.degree())
            .cmp(&(other.field.characteristic(), other.field.degree()))
            .then(self.deg().cmp(&other.deg()))
            .then_with(|| {
                self.coeffs
                    .iter()
                    .rev()
                    .map(|c| c.index())
                    .cmp(other.coeffs.iter().rev().map(|c| c.index()))
            })
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render_in("T"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                $body(self, rhs)
            }
        }
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                $body(&self, &rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                $body(&self, rhs)
            }
        }
        impl $trait<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &Poly, b: &Poly| a.add_impl(b));
forward_binop!(Sub, sub, |a: &Poly, b: &Poly| a.add_impl(&-b));
forward_binop!(Mul, mul, |a: &Poly, b: &Poly| a.mul_impl(b));

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            field: self.field,
            coeffs: self.coeffs.iter().map(|&c| -c).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::{ff_build, prime_field};

    fn f5() -> Field {
        prime_field(5).unwrap()
    }

    fn p5(c: &[i64]) -> Poly {
        Poly::from_ints(f5(), c)
    }

    #[test]
    fn ring_examples() {
        let f3 = prime_field(3).unwrap();
        assert_eq!(&p5(&[1, 1]) * &p5(&[-1, 1]), p5(&[4, 0, 1]));
        assert_eq!(&p5(&[1, 2, 3]) + &Poly::zero(f5()), p5(&[1, 2, 3]));
        let s = &Poly::from_ints(f3, &[2, 1]) + &Poly::from_ints(f3, &[1, 1]);
        assert_eq!(s, Poly::from_ints(f3, &[0, 2]));
        assert_eq!(s.to_string(), "2*T");
    }

    #[test]
    fn divmod_examples() {
        let t = Poly::t(f5());
        let (q, r) = p5(&[1, 0, 1]).divmod(&t).unwrap();
        assert_eq!((q, r), (t.clone(), Poly::one(f5())));
        let (q, r) = t.divmod(&p5(&[1, 0, 1])).unwrap();
        assert_eq!((q, r), (Poly::zero(f5()), t.clone()));
        let (q, r) = p5(&[1, 0, 0, 0, 1]).divmod(&p5(&[2, 0, 1])).unwrap();
        assert_eq!((q, r), (p5(&[3, 0, 1]), Poly::zero(f5())));
        assert_eq!(t.divmod(&Poly::zero(f5())), Err(Error::DivisionByZero));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(p5(&[4, 0, 1]).gcd(&p5(&[1, 1])), p5(&[1, 1]));
        assert_eq!(p5(&[2, 4]).gcd(&Poly::zero(f5())), p5(&[3, 1]));
        assert!(p5(&[1, 0, 0, 0, 1]).gcd(&p5(&[0, 0, 0, 4])).is_one());
        let (g, s, t) = p5(&[4, 0, 1]).xgcd(&p5(&[2, 1, 3])).unwrap();
        assert_eq!(&(&s * &p5(&[4, 0, 1])) + &(&t * &p5(&[2, 1, 3])), g);
        assert!(Poly::zero(f5()).xgcd(&Poly::zero(f5())).is_err());
    }

    #[test]
    fn squarefree_examples() {
        assert!(p5(&[1, 0, 0, 0, 1]).is_squarefree().unwrap());
        assert!(!p5(&[0, 0, 1, 1]).is_squarefree().unwrap());
        // (T+1)^5 in characteristic 5: derivative vanishes
        assert!(!p5(&[1, 0, 0, 0, 0, 1]).is_squarefree().unwrap());
        assert!(p5(&[3]).is_squarefree().is_err());
    }

    #[test]
    fn factor_examples() {
        let fac = p5(&[4, 0, 1]).factor(0).unwrap();
        assert!(fac.unit.is_one());
        assert_eq!(fac.factors, vec![(p5(&[1, 1]), 1), (p5(&[4, 1]), 1)]);
        let fac = p5(&[1, 0, 0, 0, 1]).factor(3).unwrap();
        assert_eq!(fac.factors, vec![(p5(&[2, 0, 1]), 1), (p5(&[3, 0, 1]), 1)]);
        let fac = p5(&[3]).factor(0).unwrap();
        assert_eq!(fac.unit, f5().from_int(3));
        assert!(fac.factors.is_empty());
        assert!(Poly::zero(f5()).factor(0).is_err());
    }

    #[test]
    fn factor_handles_pth_powers_and_extensions() {
        // (T+1)^5 (T^2+2)^2 over F_5
        let a = &p5(&[1, 1]).pow(5) * &p5(&[2, 0, 1]).pow(2);
        let fac = a.factor(1).unwrap();
        assert_eq!(fac.factors, vec![(p5(&[1, 1]), 5), (p5(&[2, 0, 1]), 2)]);
        let f9 = ff_build(3, 2, 0).unwrap();
        // T^9 - T splits into all linear factors over F_9
        let mut c = vec![f9.zero(); 10];
        c[9] = f9.one();
        c[1] = -f9.one();
        let fac = Poly::from_coeffs(f9, c).factor(7).unwrap();
        assert_eq!(fac.factors.len(), 9);
        assert!(fac.factors.iter().all(|(f, e)| f.deg() == Some(1) && *e == 1));
    }

    #[test]
    fn irreducibility_examples() {
        let f3 = prime_field(3).unwrap();
        assert!(p5(&[2, 0, 1]).is_irreducible().unwrap());
        assert!(!p5(&[4, 0, 1]).is_irreducible().unwrap());
        assert!(Poly::t(f3).is_irreducible().unwrap());
        assert!(p5(&[2]).is_irreducible().is_err());
        // product of two quadratics has no roots but is reducible
        assert!(!p5(&[1, 0, 0, 0, 1]).is_irreducible().unwrap());
    }

    #[test]
    fn divisor_examples() {
        let divs = p5(&[4, 0, 1]).monic_divisors().unwrap();
        assert_eq!(divs, vec![p5(&[1]), p5(&[1, 1]), p5(&[4, 1]), p5(&[4, 0, 1])]);
        assert_eq!(p5(&[1]).monic_divisors().unwrap(), vec![p5(&[1])]);
        assert_eq!(
            p5(&[0, 0, 1]).monic_divisors().unwrap(),
            vec![p5(&[1]), p5(&[0, 1]), p5(&[0, 0, 1])]
        );
    }

    #[test]
    fn nth_power_examples() {
        assert_eq!(
            p5(&[0, 0, 2]).nth_power_form(2).unwrap(),
            Some((f5().from_int(2), Poly::t(f5())))
        );
        assert_eq!(p5(&[0, 0, 0, 1]).nth_power_form(2).unwrap(), None);
        assert_eq!(
            p5(&[3]).nth_power_form(4).unwrap(),
            Some((f5().from_int(3), Poly::one(f5())))
        );
        assert!(Poly::zero(f5()).nth_power_form(2).is_err());
    }

    #[test]
    fn sqrt_exact_examples() {
        assert_eq!(p5(&[1, 2, 1]).sqrt_exact().unwrap(), Some(p5(&[1, 1])));
        assert_eq!(p5(&[1, 0, 1]).sqrt_exact().unwrap(), None);
        assert_eq!(p5(&[4]).sqrt_exact().unwrap(), Some(p5(&[2])));
        assert!(Poly::zero(f5()).sqrt_exact().is_err());
    }

    #[test]
    fn eval_examples() {
        let d = p5(&[1, 0, 0, 0, 1]);
        assert_eq!(d.eval(f5().from_int(2)), f5().from_int(2));
        assert_eq!(d.eval(f5().zero()), f5().one());
        let f9 = ff_build(3, 2, 0).unwrap();
        let u = f9.generator().unwrap();
        let t2 = Poly::from_ints(prime_field(3).unwrap(), &[0, 0, 1]);
        assert_eq!(t2.eval_in_extension(u).unwrap(), u * u);
        assert_eq!(d.eval_in_extension(u), Err(Error::FieldMismatch));
    }

    #[test]
    fn rendering() {
        assert_eq!(p5(&[3, 2, 0, 0, 1]).to_string(), "T^4+2*T+3");
        assert_eq!(Poly::zero(f5()).to_string(), "0");
        assert_eq!(p5(&[0, 1]).to_string(), "T");
    }

    #[test]
    fn monic_enumeration_order() {
        let all: Vec<Poly> = Poly::monic_of_degree(f5(), 1).collect();
        assert_eq!(all.len(), 5);
        assert_eq!(all[0], Poly::t(f5()));
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }
}
