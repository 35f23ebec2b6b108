//! The eight discriminant series with an order-`n` subgroup, plus the
//! general two-parameter form of the first four.
//!
//! Every instance carries an explicit witness `X² − D·Y² = c·Zⁿ` that is
//! re-checked by expansion when the instance is built.
//!
//! First four series (leading unit `u` folds item (4) into the general form):
//!
//! ```text
//! D = (uZⁿ + aF − b)² + 4abF,  F | uZⁿ − b,   X = uZⁿ + aF + b,  c = 4bu
//! ```
//!
//! Last four, with `A = Zⁿ = 2a + 1`:
//!
//! ```text
//! (1) (A^d + a)² + A      (2) (A^d − a)² + A
//! (3) (A^d + a + 1)² − A  (4) (A^d − a − 1)² − A
//! ```

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::{self, Field, FieldElement};
use crate::laurent;
use crate::pell::{norm, Witness, WitnessRecord};
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Series {
    /// `variant` is `None` for the general form.
    Two {
        variant: Option<u8>,
        u: FieldElement,
        a: FieldElement,
        b: FieldElement,
        f: Poly,
    },
    Three { variant: u8, d: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub z: Poly,
    pub n: u32,
    pub series: Series,
}

impl FamilySpec {
    pub fn field(&self) -> Field {
        self.z.field()
    }

    pub fn theorem(&self) -> u8 {
        match self.series {
            Series::Two { .. } => 2,
            Series::Three { .. } => 3,
        }
    }

    pub fn variant_label(&self) -> String {
        match &self.series {
            Series::Two { variant: None, .. } => "general".into(),
            Series::Two { variant: Some(v), .. } | Series::Three { variant: v, .. } => v.to_string(),
        }
    }

    /// Stable identity used for resumable sweeps.
    pub fn key(&self) -> String {
        let head = format!(
            "t{}:v{}:q{}:Z={}:n{}",
            self.theorem(),
            self.variant_label(),
            self.field().order(),
            self.z,
            self.n
        );
        match &self.series {
            Series::Two { u, a, b, f, .. } => format!("{head}:u{u}:a{a}:b{b}:F={f}"),
            Series::Three { d, .. } => format!("{head}:d{d}"),
        }
    }

    pub fn build(&self) -> Result<FamilyInstance> {
        match &self.series {
            Series::Two { u, a, b, f, .. } => {
                let mut inst = t2_general(&self.z, self.n, *u, *a, *b, f)?;
                inst.spec = self.clone();
                Ok(inst)
            }
            Series::Three { variant, d } => t3(*variant, &self.z, self.n, *d),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.key())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub squarefree: bool,
    pub monic: bool,
    /// Even degree ≥ 2 with square leading coefficient.
    pub real: bool,
    pub erd_type: bool,
    pub genus: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyInstance {
    pub spec: FamilySpec,
    pub d: Poly,
    pub witness: Witness,
    pub flags: Flags,
    /// `u₀` with `sgn(D) = u₀²` when `D` is real but not monic; `D/u₀²` is
    /// the monic model of the same field.
    pub normalization: Option<FieldElement>,
}

impl FamilyInstance {
    fn assemble(spec: FamilySpec, d: Poly, witness: Witness) -> Result<Self> {
        let zn = spec.z.pow(spec.n);
        if norm(&d, &witness.x, &witness.y) != zn.scale(witness.c) {
            return Err(Error::Internal(format!(
                "witness identity fails for {spec}: D = {d}"
            )));
        }
        let deg = d.deg().unwrap_or(0);
        let real = deg >= 2 && laurent::real_data(&d).is_ok();
        let squarefree = !d.is_constant() && d.is_squarefree()?;
        let erd_type = real && is_erd_type(&d)?;
        let normalization = (real && !d.is_monic()).then(|| d.lc().sqrt().expect("real"));
        let flags = Flags {
            squarefree,
            monic: d.is_monic(),
            real,
            erd_type,
            genus: real.then(|| deg / 2 - 1),
        };
        Ok(FamilyInstance {
            spec,
            d,
            witness,
            flags,
            normalization,
        })
    }

    /// Usable by the class-number pipeline.
    pub fn admissible(&self) -> bool {
        self.flags.squarefree && self.flags.monic && self.flags.real
    }

    pub fn record(&self) -> InstanceRecord {
        let mut params = BTreeMap::new();
        match &self.spec.series {
            Series::Two { u, a, b, f, .. } => {
                params.insert("u", u.to_string());
                params.insert("a", a.to_string());
                params.insert("b", b.to_string());
                params.insert("F", f.to_string());
            }
            Series::Three { d, .. } => {
                let (big_a, small_a) = t3_parts(&self.spec.z, self.spec.n);
                params.insert("d", d.to_string());
                params.insert("A", big_a.to_string());
                params.insert("a", small_a.to_string());
            }
        }
        InstanceRecord {
            key: self.spec.key(),
            theorem: self.spec.theorem(),
            variant: self.spec.variant_label(),
            q: self.d.field().order(),
            z: self.spec.z.to_string(),
            n: self.spec.n,
            params,
            d: self.d.to_string(),
            witness: self.witness.record(),
            flags: self.flags.clone(),
            normalization: self.normalization.map(|u| u.to_string()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceRecord {
    pub key: String,
    pub theorem: u8,
    pub variant: String,
    pub q: u64,
    #[serde(rename = "Z")]
    pub z: String,
    pub n: u32,
    pub params: BTreeMap<&'static str, String>,
    #[serde(rename = "D")]
    pub d: String,
    pub witness: WitnessRecord,
    pub flags: Flags,
    pub normalization: Option<String>,
}

fn check_z(z: &Poly, n: u32) -> Result<()> {
    if !z.is_monic() || z.is_constant() {
        return Err(Error::InvalidArgument(format!("Z = {z} must be monic and nonconstant")));
    }
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n = {n} must be at least 2")));
    }
    Ok(())
}

/// `D = (uZⁿ + aF − b)² + 4abF` with `F | uZⁿ − b`.
pub fn t2_general(
    z: &Poly,
    n: u32,
    u: FieldElement,
    a: FieldElement,
    b: FieldElement,
    f: &Poly,
) -> Result<FamilyInstance> {
    check_z(z, n)?;
    if u.is_zero() || a.is_zero() || b.is_zero() {
        return Err(Error::InvalidArgument("u, a, b must be nonzero".into()));
    }
    let field = z.field();
    let uzn = z.pow(n).scale(u);
    let bb = Poly::constant(b);
    if f.is_zero() || !f.divides(&(&uzn - &bb)) {
        return Err(Error::InvalidArgument(format!("F = {f} does not divide {}", &uzn - &bb)));
    }
    let af = f.scale(a);
    let inner = &(&uzn + &af) - &bb;
    let four = field.from_int(4);
    let d = &(&inner * &inner) + &f.scale(four * a * b);
    let witness = Witness {
        x: &(&uzn + &af) + &bb,
        y: Poly::one(field),
        c: four * b * u,
    };
    let spec = FamilySpec {
        z: z.clone(),
        n,
        series: Series::Two {
            variant: None,
            u,
            a,
            b,
            f: f.clone(),
        },
    };
    FamilyInstance::assemble(spec, d, witness)
}

/// `(u, a, b)` for items (1)–(4).
pub fn t2_parameters(field: Field, variant: u8) -> Result<(FieldElement, FieldElement, FieldElement)> {
    let one = field.one();
    let half = field.from_int(2).inv().expect("odd characteristic");
    match variant {
        1 => Ok((one, half, half)),
        2 => Ok((one, one, one)),
        3 => Ok((one, -one, -one)),
        4 => Ok((field.from_int(4), one, one)),
        v => Err(Error::InvalidArgument(format!("variant {v} outside 1..=4"))),
    }
}

/// Item `variant` of the first series; item (1) ignores `f` and uses `F = 1`.
pub fn t2_variant(variant: u8, z: &Poly, n: u32, f: &Poly) -> Result<FamilyInstance> {
    let (u, a, b) = t2_parameters(z.field(), variant)?;
    let f = if variant == 1 { Poly::one(z.field()) } else { f.clone() };
    let mut inst = t2_general(z, n, u, a, b, &f)?;
    if let Series::Two { variant: v, .. } = &mut inst.spec.series {
        *v = Some(variant);
    }
    Ok(inst)
}

/// `(A, a)` with `A = Zⁿ` and `a = (A − 1)/2`.
pub fn t3_parts(z: &Poly, n: u32) -> (Poly, Poly) {
    let big_a = z.pow(n);
    let half = z.field().from_int(2).inv().expect("odd characteristic");
    let small_a = (&big_a - &Poly::one(z.field())).scale(half);
    (big_a, small_a)
}

pub fn t3(variant: u8, z: &Poly, n: u32, d: u32) -> Result<FamilyInstance> {
    check_z(z, n)?;
    if d == 0 {
        return Err(Error::InvalidArgument("d must be at least 1".into()));
    }
    let field = z.field();
    let one = Poly::one(field);
    let (big_a, small_a) = t3_parts(z, n);
    let ad = big_a.pow(d);
    let (x, sign) = match variant {
        1 => (&ad + &small_a, 1),
        2 => (&ad - &small_a, 1),
        3 => (&(&ad + &small_a) + &one, -1),
        4 => (&(&ad - &small_a) - &one, -1),
        v => return Err(Error::InvalidArgument(format!("variant {v} outside 1..=4"))),
    };
    let disc = if sign > 0 {
        &(&x * &x) + &big_a
    } else {
        &(&x * &x) - &big_a
    };
    let witness = Witness {
        x,
        y: one,
        c: field.from_int(-sign),
    };
    let spec = FamilySpec {
        z: z.clone(),
        n,
        series: Series::Three { variant, d },
    };
    FamilyInstance::assemble(spec, disc, witness)
}

/// `D = f² + r` with `f = ⌊√D⌋` and `0 ≠ r | f`.
pub fn is_erd_type(d: &Poly) -> Result<bool> {
    let f = laurent::floor_sqrt(d)?;
    let r = d - &(&f * &f);
    Ok(!r.is_zero() && r.divides(&f))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
#[derive(Default)]
pub enum FPolicy {
    #[default]
    AllDivisors,
    FirstK(usize),
}


/// Parameter ranges for [`enumerate_instances`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilyRanges {
    pub q: Vec<u64>,
    #[serde(default = "default_theorems")]
    pub theorems: Vec<u8>,
    #[serde(default = "default_variants")]
    pub variants: Vec<u8>,
    pub n: Vec<u32>,
    pub z_degrees: Vec<usize>,
    #[serde(default)]
    pub d: Vec<u32>,
    #[serde(default)]
    pub f_policy: FPolicy,
    /// Seed for extension-field moduli when some `q` is a prime power.
    #[serde(default)]
    pub seed: u64,
}

fn default_theorems() -> Vec<u8> {
    vec![2, 3]
}

fn default_variants() -> Vec<u8> {
    vec![1, 2, 3, 4]
}

/// All specs in canonical order: `q`, theorem, variant, `n`, `Z`, then `F`
/// (divisor order) or `d` (ascending).
pub fn enumerate_specs(ranges: &FamilyRanges) -> Result<Vec<FamilySpec>> {
    let mut out = Vec::new();
    for &q in &ranges.q {
        let field = ff::field_of_order(q, ranges.seed)?;
        for &theorem in &ranges.theorems {
            if theorem != 2 && theorem != 3 {
                return Err(Error::InvalidArgument(format!("theorem {theorem} is not 2 or 3")));
            }
            for &variant in &ranges.variants {
                for &n in &ranges.n {
                    for &zdeg in &ranges.z_degrees {
                        if zdeg == 0 {
                            return Err(Error::InvalidArgument("deg Z must be >= 1".into()));
                        }
                        for z in Poly::monic_of_degree(field, zdeg) {
                            specs_for(&mut out, ranges, theorem, variant, &z, n)?;
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

fn specs_for(
    out: &mut Vec<FamilySpec>,
    ranges: &FamilyRanges,
    theorem: u8,
    variant: u8,
    z: &Poly,
    n: u32,
) -> Result<()> {
    let field = z.field();
    if theorem == 3 {
        if !(1..=4).contains(&variant) {
            return Err(Error::InvalidArgument(format!("variant {variant} outside 1..=4")));
        }
        let mut ds = ranges.d.clone();
        ds.sort_unstable();
        ds.dedup();
        for d in ds {
            out.push(FamilySpec {
                z: z.clone(),
                n,
                series: Series::Three { variant, d },
            });
        }
        return Ok(());
    }
    let (u, a, b) = t2_parameters(field, variant)?;
    let fs = if variant == 1 {
        vec![Poly::one(field)]
    } else {
        let target = &z.pow(n).scale(u) - &Poly::constant(b);
        let divs = target.monic_divisors()?;
        match ranges.f_policy {
            FPolicy::AllDivisors => divs,
            FPolicy::FirstK(k) => divs.into_iter().take(k).collect(),
        }
    };
    for f in fs {
        out.push(FamilySpec {
            z: z.clone(),
            n,
            series: Series::Two {
                variant: Some(variant),
                u,
                a,
                b,
                f,
            },
        });
    }
    Ok(())
}

/// Lazily builds every instance of [`enumerate_specs`].
pub fn enumerate_instances(
    ranges: &FamilyRanges,
) -> Result<impl Iterator<Item = Result<FamilyInstance>>> {
    Ok(enumerate_specs(ranges)?.into_iter().map(|s| s.build()))
}
