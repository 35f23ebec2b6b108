//! Finite fields `F_q`, `q = p^m`, of odd characteristic.
//!
//! Fields are interned: [`ff_build`] hands out a `&'static FieldSpec` so that
//! elements stay `Copy` and carry their field along for free. Elements of an
//! extension are residue vectors modulo a monic irreducible `modulus` in the
//! generator `u`; prime-field elements use the same layout with `m = 1`.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poly::Poly;

/// Largest supported extension degree.
pub const MAX_EXT_DEGREE: usize = 8;
/// Largest supported characteristic.
pub const MAX_CHARACTERISTIC: u64 = 10_000;

#[derive(Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u32,
    m: usize,
    /// Ascending coefficients of the monic modulus, length `m + 1`; `None` for prime fields.
    modulus: Option<Vec<u32>>,
    q: u64,
}

/// Handle to an interned field.
pub type Field = &'static FieldSpec;

type Registry = Mutex<HashMap<(u32, usize, u64), Field>>;

fn registry() -> &'static Registry {
    static REGISTRY: OnceLock<Registry> = OnceLock::new();
    REGISTRY.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` into `(p, m)` with `q = p^m`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

/// Builds (or fetches) `F_{p^m}`. For `m > 1` the modulus is the first monic
/// irreducible hit by a candidate scan driven by `seed`, so the same
/// `(p, m, seed)` always names the same field.
pub fn ff_build(p: u64, m: usize, seed: u64) -> Result<Field> {
    if p.is_multiple_of(2) || p > MAX_CHARACTERISTIC || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if m == 0 || m > MAX_EXT_DEGREE {
        return Err(Error::FieldTooLarge(format!(
            "extension degree {m} outside 1..={MAX_EXT_DEGREE}"
        )));
    }
    let q = p
        .checked_pow(m as u32)
        .filter(|q| *q < (1 << 62))
        .ok_or_else(|| Error::FieldTooLarge(format!("{p}^{m} does not fit the element index")))?;
    let key = (p as u32, m, if m == 1 { 0 } else { seed });
    if let Some(f) = registry().lock().unwrap().get(&key) {
        return Ok(f);
    }
    let modulus = if m == 1 {
        None
    } else {
        let base = ff_build(p, 1, 0)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let mut coeffs: Vec<u32> = (0..m).map(|_| rng.random_range(0..p as u32)).collect();
            coeffs.push(1);
            let cand = Poly::from_u32(base, &coeffs);
            if cand.is_irreducible()? {
                break Some(coeffs);
            }
        }
    };
    let spec = FieldSpec {
        p: p as u32,
        m,
        modulus,
        q,
    };
    let mut reg = registry().lock().unwrap();
    // Another thread may have raced us; keep the first one.
    let field = *reg.entry(key).or_insert_with(|| Box::leak(Box::new(spec)));
    Ok(field)
}

/// Prime field shorthand.
pub fn prime_field(p: u64) -> Result<Field> {
    ff_build(p, 1, 0)
}

/// Field of order `q` (prime or prime power).
pub fn field_of_order(q: u64, seed: u64) -> Result<Field> {
    let (p, m) = prime_power(q).ok_or(Error::NotOddPrime(q))?;
    ff_build(p, m, seed)
}

impl FieldSpec {
    pub fn characteristic(&self) -> u64 {
        self.p as u64
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn is_prime_field(&self) -> bool {
        self.m == 1
    }

    pub fn modulus(&self) -> Option<&[u32]> {
        self.modulus.as_deref()
    }

    pub fn same(&'static self, other: Field) -> bool {
        std::ptr::eq(self, other) || self == other
    }

    pub fn zero(&'static self) -> FieldElement {
        FieldElement {
            field: self,
            c: [0; MAX_EXT_DEGREE],
        }
    }

    pub fn one(&'static self) -> FieldElement {
        self.from_int(1)
    }

    pub fn from_int(&'static self, v: i64) -> FieldElement {
        let mut c = [0; MAX_EXT_DEGREE];
        c[0] = v.rem_euclid(self.p as i64) as u32;
        FieldElement { field: self, c }
    }

    /// Element from ascending residues in the generator `u`; extra
    /// residues beyond degree `m - 1` are rejected.
    pub fn from_coeffs(&'static self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() > self.m {
            return Err(Error::InvalidArgument(format!(
                "{} residues for an extension of degree {}",
                coeffs.len(),
                self.m
            )));
        }
        let mut c = [0; MAX_EXT_DEGREE];
        for (dst, src) in c.iter_mut().zip(coeffs) {
            *dst = src % self.p;
        }
        Ok(FieldElement { field: self, c })
    }

    /// The generator `u` of an extension (the class of the modulus variable).
    pub fn generator(&'static self) -> Option<FieldElement> {
        if self.m == 1 {
            return None;
        }
        let mut c = [0; MAX_EXT_DEGREE];
        c[1] = 1;
        Some(FieldElement { field: self, c })
    }

    /// Element with base-`p` digit expansion `index` (digit `i` = residue of `u^i`).
    pub fn from_index(&'static self, mut index: u64) -> FieldElement {
        let mut c = [0; MAX_EXT_DEGREE];
        for slot in c.iter_mut().take(self.m) {
            *slot = (index % self.p as u64) as u32;
            index /= self.p as u64;
        }
        FieldElement { field: self, c }
    }

    /// All `q` elements in index order.
    pub fn elements(&'static self) -> impl Iterator<Item = FieldElement> + Clone {
        (0..self.q).map(move |i| self.from_index(i))
    }

    pub fn nonzero_elements(&'static self) -> impl Iterator<Item = FieldElement> + Clone {
        (1..self.q).map(move |i| self.from_index(i))
    }

    fn mul_raw(&self, a: &[u32; MAX_EXT_DEGREE], b: &[u32; MAX_EXT_DEGREE]) -> [u32; MAX_EXT_DEGREE] {
        let p = self.p as u64;
        let mut out = [0u32; MAX_EXT_DEGREE];
        if self.m == 1 {
            out[0] = ((a[0] as u64 * b[0] as u64) % p) as u32;
            return out;
        }
        let m = self.m;
        let mut prod = [0u64; 2 * MAX_EXT_DEGREE];
        for i in 0..m {
            if a[i] == 0 {
                continue;
            }
            for j in 0..m {
                prod[i + j] = (prod[i + j] + a[i] as u64 * b[j] as u64) % p;
            }
        }
        let modulus = self.modulus.as_ref().expect("extension has a modulus");
        for k in (m..2 * m - 1).rev() {
            let t = prod[k];
            if t == 0 {
                continue;
            }
            prod[k] = 0;
            for j in 0..m {
                // u^m = -(modulus lower terms)
                prod[k - m + j] = (prod[k - m + j] + t * (p - modulus[j] as u64)) % p;
            }
        }
        for i in 0..m {
            out[i] = prod[i] as u32;
        }
        out
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.modulus {
            None => write!(f, "F_{}", self.p),
            Some(m) => {
                let base = prime_field(self.p as u64).map_err(|_| fmt::Error)?;
                let poly = Poly::from_u32(base, m);
                write!(f, "F_{}^{} (mod {})", self.p, self.m, poly.render_in("u"))
            }
        }
    }
}

#[derive(Clone, Copy)]
pub struct FieldElement {
    field: Field,
    c: [u32; MAX_EXT_DEGREE],
}

impl FieldElement {
    pub fn field(&self) -> Field {
        self.field
    }

    /// Residues of `1, u, …, u^{m-1}`.
    pub fn coeffs(&self) -> &[u32] {
        &self.c[..self.field.m]
    }

    pub fn index(&self) -> u64 {
        let p = self.field.p as u64;
        self.coeffs().iter().rev().fold(0, |acc, &d| acc * p + d as u64)
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&d| d == 0)
    }

    pub fn is_one(&self) -> bool {
        self.c[0] == 1 && self.c[1..].iter().all(|&d| d == 0)
    }

    /// `Some(v)` when the element lies in the prime field.
    pub fn as_prime(&self) -> Option<u32> {
        self.c[1..].iter().all(|&d| d == 0).then_some(self.c[0])
    }

    fn check_field(&self, other: &FieldElement) {
        assert!(
            self.field.same(other.field),
            "field mismatch: {} vs {}",
            self.field,
            other.field
        );
    }

    pub fn try_add(self, rhs: Self) -> Result<Self> {
        if !self.field.same(rhs.field) {
            return Err(Error::FieldMismatch);
        }
        Ok(self + rhs)
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via `x^(q-2)`.
    pub fn inv(self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.field.m == 1 {
            return Some(self.field.from_int(inv_mod(self.c[0] as i64, self.field.p as i64)));
        }
        Some(self.pow(self.field.q - 2))
    }

    pub fn checked_div(self, rhs: Self) -> Result<Self> {
        if !self.field.same(rhs.field) {
            return Err(Error::FieldMismatch);
        }
        Ok(self * rhs.inv().ok_or(Error::DivisionByZero)?)
    }

    /// Euler's criterion; zero counts as a square.
    pub fn is_square(self) -> bool {
        self.is_zero() || self.pow((self.field.q - 1) / 2).is_one()
    }

    /// Quadratic character: 0, 1 or -1.
    pub fn legendre(self) -> i8 {
        if self.is_zero() {
            0
        } else if self.pow((self.field.q - 1) / 2).is_one() {
            1
        } else {
            -1
        }
    }

    /// Square root via Tonelli–Shanks; of the two roots `±y` the one with the
    /// lexicographically smaller residue vector is returned.
    pub fn sqrt(self) -> Option<Self> {
        if self.is_zero() {
            return Some(self);
        }
        if !self.is_square() {
            return None;
        }
        let field = self.field;
        let mut t = field.q - 1;
        let mut s = 0;
        while t.is_multiple_of(2) {
            t /= 2;
            s += 1;
        }
        let z = field
            .nonzero_elements()
            .find(|e| !e.is_square())
            .expect("odd field has a non-residue");
        let mut m = s;
        let mut c = z.pow(t);
        let mut tt = self.pow(t);
        let mut r = self.pow(t.div_ceil(2));
        while !tt.is_one() {
            let mut i = 0;
            let mut probe = tt;
            while !probe.is_one() {
                probe = probe * probe;
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = b * b;
            }
            m = i;
            c = b * b;
            tt = tt * c;
            r = r * b;
        }
        let neg = -r;
        Some(if neg.coeffs() < r.coeffs() { neg } else { r })
    }
}

pub(crate) fn inv_mod(a: i64, p: i64) -> i64 {
    let (mut old_r, mut r) = (a.rem_euclid(p), p);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    old_s.rem_euclid(p)
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c && self.field.same(other.field)
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: Self) -> Self {
        self.check_field(&rhs);
        let p = self.field.p;
        let mut c = self.c;
        for (x, y) in c.iter_mut().zip(rhs.c.iter()).take(self.field.m) {
            let s = *x + *y;
            *x = if s >= p { s - p } else { s };
        }
        FieldElement { field: self.field, c }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> Self {
        let p = self.field.p;
        let mut c = self.c;
        for x in c.iter_mut().take(self.field.m) {
            if *x != 0 {
                *x = p - *x;
            }
        }
        FieldElement { field: self.field, c }
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: Self) -> Self {
        self.check_field(&rhs);
        FieldElement {
            field: self.field,
            c: self.field.mul_raw(&self.c, &rhs.c),
        }
    }
}

impl Div for FieldElement {
    type Output = FieldElement;
    /// Panics on a zero divisor; see [`FieldElement::checked_div`].
    fn div(self, rhs: Self) -> Self {
        self.checked_div(rhs).expect("division by zero in F_q")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.m == 1 {
            return write!(f, "{}", self.c[0]);
        }
        let mut terms = Vec::new();
        for (k, &d) in self.coeffs().iter().enumerate().rev() {
            if d == 0 {
                continue;
            }
            terms.push(match (k, d) {
                (0, d) => d.to_string(),
                (1, 1) => "u".to_string(),
                (1, d) => format!("{d}*u"),
                (k, 1) => format!("u^{k}"),
                (k, d) => format!("{d}*u^{k}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
