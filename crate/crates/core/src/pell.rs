//! Solutions of `X² − D·Y² = C` and the order-`n` subgroup criterion.
//!
//! For `deg C < deg D / 2` the primary solutions are exactly the convergent
//! pairs `(p_{i−1}, q_{i−1})` with `(−1)^i Q_i = C`, up to associates and
//! conjugates. [`solutions_small_c`] reads them off one period,
//! [`brute_force`] enumerates them independently, and
//! [`reduce_to_convergent`] maps any hit back onto a period entry.
//!
//! [`theorem1_check`] combines an existence witness for `c·Zⁿ` with a period
//! scan ruling out `c'·Z^j` for every proper divisor `j` of `n`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::contfrac::CfExpansion;
use crate::error::{Error, Result};
use crate::ff::FieldElement;
use crate::limits;
use crate::poly::Poly;

/// `α = X + Y√D` with its norm `C = X² − D·Y²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PellSolution {
    pub x: Poly,
    pub y: Poly,
    pub c: Poly,
    /// `gcd(X, Y)` is a nonzero constant.
    pub primary: bool,
    /// Period index `i` when the solution came from a convergent.
    pub source: Option<usize>,
}

/// `(x1 + y1√D)(x2 + y2√D)`.
fn quad_mul(d: &Poly, a: (&Poly, &Poly), b: (&Poly, &Poly)) -> (Poly, Poly) {
    let x = &(a.0 * b.0) + &(d * &(a.1 * b.1));
    let y = &(a.0 * b.1) + &(a.1 * b.0);
    (x, y)
}

pub fn norm(d: &Poly, x: &Poly, y: &Poly) -> Poly {
    &(x * x) - &(d * &(y * y))
}

impl PellSolution {
    pub fn new(d: &Poly, x: Poly, y: Poly, source: Option<usize>) -> Self {
        let c = norm(d, &x, &y);
        let primary = x.coprime(&y);
        PellSolution {
            x,
            y,
            c,
            primary,
            source,
        }
    }

    /// `X − Y√D`; same norm.
    pub fn conjugate(&self) -> Self {
        PellSolution {
            x: self.x.clone(),
            y: -&self.y,
            c: self.c.clone(),
            primary: self.primary,
            source: None,
        }
    }

    /// `u · ε^k · α`; the norm picks up the constant `u²·N(ε)^k`.
    pub fn associate(&self, u: FieldElement, k: i64, cf: &CfExpansion) -> Result<Self> {
        if u.is_zero() {
            return Err(Error::InvalidArgument("associate by u = 0".into()));
        }
        let d = &cf.d;
        let eps = if k >= 0 {
            cf.unit.clone()
        } else {
            let inv = cf.unit_norm().inv().expect("unit norm is nonzero");
            (cf.unit.0.scale(inv), cf.unit.1.scale(-inv))
        };
        let (mut x, mut y) = (self.x.scale(u), self.y.scale(u));
        for _ in 0..k.unsigned_abs() {
            (x, y) = quad_mul(d, (&x, &y), (&eps.0, &eps.1));
        }
        Ok(PellSolution::new(d, x, y, None))
    }

    fn big_degree(&self, half_deg: usize) -> i64 {
        let dx = self.x.deg().map_or(-1, |v| v as i64);
        let dy = self.y.deg().map_or(-1, |v| (v + half_deg) as i64);
        dx.max(dy)
    }

    pub fn record(&self) -> SolutionRecord {
        SolutionRecord {
            x: self.x.to_string(),
            y: self.y.to_string(),
            c: self.c.to_string(),
            primary: self.primary,
            source: self.source,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SolutionRecord {
    #[serde(rename = "X")]
    pub x: String,
    #[serde(rename = "Y")]
    pub y: String,
    #[serde(rename = "C")]
    pub c: String,
    pub primary: bool,
    pub source: Option<usize>,
}

fn require_theory_input(cf: &CfExpansion) -> Result<()> {
    if !cf.squarefree {
        return Err(Error::NotSquarefree(format!("D = {}", cf.d)));
    }
    Ok(())
}

/// Period solutions keyed by `monic(C)`.
pub fn solutions_small_c(cf: &CfExpansion) -> Result<BTreeMap<Poly, Vec<PellSolution>>> {
    require_theory_input(cf)?;
    let mut map: BTreeMap<Poly, Vec<PellSolution>> = BTreeMap::new();
    for (i, conv, c) in cf.period_solutions() {
        let sol = PellSolution {
            x: conv.num.clone(),
            y: conv.den.clone(),
            c: c.clone(),
            primary: true,
            source: Some(i),
        };
        map.entry(c.monic()).or_default().push(sol);
    }
    Ok(map)
}

/// Exhaustive primary solutions with `deg Y ≤ deg_y_max` and
/// `deg C ≤ deg_c_max`, sorted canonically by `(X, Y)`.
///
/// Only monic `Y` are searched; each hit is then spread over `±X` and all
/// scalings by `F_q^×`. For `Y ≠ 0` the bound `deg C < deg D / 2 ≤ deg X`
/// pins `X` down (up to sign) from the top half of `D·Y²`.
pub fn brute_force(d: &Poly, deg_y_max: i64, deg_c_max: i64) -> Result<Vec<PellSolution>> {
    let half = d.deg().unwrap_or(0) as i64 / 2;
    if deg_c_max >= half {
        return Err(Error::Precondition(format!(
            "deg C ≤ {deg_c_max} is outside the range deg C < {half}"
        )));
    }
    if deg_y_max < 0 {
        return Ok(Vec::new());
    }
    let field = d.field();
    let q = field.order();
    limits::check(
        "brute-force search",
        limits::saturating_pow(q, deg_y_max as u64 + 1),
        limits::BRUTE_FORCE_WORK,
    )?;
    let mut found: BTreeSet<(Poly, Poly)> = BTreeSet::new();
    let mut add = |x: &Poly, y: &Poly| {
        for u in field.nonzero_elements() {
            found.insert((x.scale(u), y.scale(u)));
            found.insert((x.scale(-u), y.scale(u)));
        }
    };
    if deg_c_max >= 0 {
        // Y = 0: X² = C forces a constant X
        add(&Poly::one(field), &Poly::zero(field));
    }
    for k in 0..=deg_y_max as usize {
        for y in Poly::monic_of_degree(field, k) {
            let dy2 = d * &(&y * &y);
            let Some(x) = dy2.sqrt_top()? else {
                continue;
            };
            let c = &(&x * &x) - &dy2;
            if c.is_zero() || c.deg().expect("nonzero") as i64 > deg_c_max || !x.coprime(&y) {
                continue;
            }
            add(&x, &y);
        }
    }
    Ok(found
        .into_iter()
        .map(|(x, y)| PellSolution::new(d, x, y, None))
        .collect())
}

/// Certificate that `s = conj?(scale · ε^unit_power · (p_{i−1} + q_{i−1}√D))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub unit_power: i64,
    pub conjugated: bool,
    pub scale: FieldElement,
    pub index: usize,
    pub base: PellSolution,
}

impl Reduction {
    /// Rebuilds the solution from the certificate.
    pub fn rebuild(&self, cf: &CfExpansion) -> Result<PellSolution> {
        let sol = self.base.associate(self.scale, self.unit_power, cf)?;
        Ok(if self.conjugated { sol.conjugate() } else { sol })
    }
}

fn match_convergent(sol: &PellSolution, cf: &CfExpansion) -> Option<(usize, FieldElement)> {
    let lead = sol.x.lc();
    if lead.is_zero() {
        return None;
    }
    (1..=cf.period).find_map(|i| {
        let conv = &cf.convergents[i - 1];
        let c = lead * conv.num.lc().inv()?;
        (sol.x == conv.num.scale(c) && sol.y == conv.den.scale(c)).then_some((i, c))
    })
}

/// Walks a small-norm solution down by powers of `ε^{-1}` until it lands on a
/// period convergent (up to a constant), trying both orientations.
pub fn reduce_to_convergent(s: &PellSolution, cf: &CfExpansion) -> Option<Reduction> {
    let half = cf.half_deg();
    let certificate = |k: i64, conjugated: bool, (index, scale): (usize, FieldElement)| {
        let conv = &cf.convergents[index - 1];
        Reduction {
            unit_power: k,
            conjugated,
            scale,
            index,
            base: PellSolution::new(&cf.d, conv.num.clone(), conv.den.clone(), Some(index)),
        }
    };
    for conjugated in [false, true] {
        let start = if conjugated { s.conjugate() } else { s.clone() };
        let mut cur = start.clone();
        let mut k = 0i64;
        // big degree strictly drops on the way down, so this is bounded
        loop {
            if let Some(hit) = match_convergent(&cur, cf) {
                return Some(certificate(k, conjugated, hit));
            }
            let next = cur.associate(cf.d.field().one(), -1, cf).ok()?;
            if next.big_degree(half) >= cur.big_degree(half) {
                break;
            }
            cur = next;
            k += 1;
        }
        let up = start.associate(cf.d.field().one(), 1, cf).ok()?;
        if let Some(hit) = match_convergent(&up, cf) {
            return Some(certificate(-1, conjugated, hit));
        }
    }
    None
}

/// Existence half of the criterion: `X² − D·Y² = c·Zⁿ`, `gcd(X, Y) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub x: Poly,
    pub y: Poly,
    pub c: FieldElement,
}

impl Witness {
    pub fn record(&self) -> WitnessRecord {
        WitnessRecord {
            x: self.x.to_string(),
            y: self.y.to_string(),
            c: self.c.to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessRecord {
    #[serde(rename = "X")]
    pub x: String,
    #[serde(rename = "Y")]
    pub y: String,
    pub c: String,
}

/// Scan result for one proper divisor `j` of `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonexistenceEntry {
    pub j: u32,
    /// `deg Z^j < deg D / 2`, so the period scan is a proof.
    pub lemma_applicable: bool,
    /// `(i, Q_i)` for `i = 1..=l`.
    pub scanned: Vec<(usize, Poly)>,
    pub matched: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Holds,
    Fails,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem1Verdict {
    pub holds: bool,
    pub inconclusive: bool,
    pub n: u32,
    pub z: Poly,
    pub witness: Option<Witness>,
    /// A supplied witness failed verification.
    pub witness_rejected: bool,
    /// `deg Y` bound of the fallback search when no witness was supplied.
    pub search_deg_y: Option<usize>,
    pub nonexistence: Vec<NonexistenceEntry>,
}

impl Theorem1Verdict {
    pub fn status(&self) -> Status {
        if self.holds {
            Status::Holds
        } else if self.inconclusive {
            Status::Inconclusive
        } else {
            Status::Fails
        }
    }

    pub fn record(&self) -> VerdictRecord {
        VerdictRecord {
            holds: self.holds,
            inconclusive: self.inconclusive,
            n: self.n,
            z: self.z.to_string(),
            witness: self.witness.as_ref().map(Witness::record),
            witness_rejected: self.witness_rejected,
            search_deg_y: self.search_deg_y,
            nonexistence: self
                .nonexistence
                .iter()
                .map(|e| NonexistenceRecord {
                    j: e.j,
                    applicable: e.lemma_applicable,
                    matched: e.matched,
                    scanned: e
                        .scanned
                        .iter()
                        .map(|(i, q)| ScanRecord {
                            i: *i,
                            q: q.to_string(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanRecord {
    pub i: usize,
    #[serde(rename = "Q")]
    pub q: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct NonexistenceRecord {
    pub j: u32,
    pub applicable: bool,
    pub matched: bool,
    pub scanned: Vec<ScanRecord>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerdictRecord {
    pub holds: bool,
    pub inconclusive: bool,
    pub n: u32,
    #[serde(rename = "Z")]
    pub z: String,
    pub witness: Option<WitnessRecord>,
    pub witness_rejected: bool,
    pub search_deg_y: Option<usize>,
    pub nonexistence: Vec<NonexistenceRecord>,
}

/// `C = c·Zⁿ` with `c` a nonzero constant?
fn as_multiple_of(c: &Poly, zn: &Poly) -> Option<FieldElement> {
    let quot = c.div_exact(zn).ok()??;
    quot.is_unit().then(|| quot.lc())
}

fn verify_witness(d: &Poly, zn: &Poly, x: &Poly, y: &Poly) -> Option<Witness> {
    let c = as_multiple_of(&norm(d, x, y), zn)?;
    x.coprime(y).then(|| Witness {
        x: x.clone(),
        y: y.clone(),
        c,
    })
}

/// Bounded search for a primary solution of `X² − D·Y² = c·Zⁿ`.
fn search_witness(cf: &CfExpansion, zn: &Poly, deg_y_max: usize) -> Result<Option<Witness>> {
    let d = &cf.d;
    let field = d.field();
    let ys = std::iter::once(Poly::zero(field))
        .chain((0..=deg_y_max).flat_map(|k| Poly::monic_of_degree(field, k)));
    for y in ys {
        let dy2 = d * &(&y * &y);
        for c in field.nonzero_elements() {
            let target = &dy2 + &zn.scale(c);
            if target.is_zero() {
                continue;
            }
            if let Some(x) = target.sqrt_exact()? {
                if let Some(w) = verify_witness(d, zn, &x, &y) {
                    return Ok(Some(w));
                }
            }
        }
    }
    Ok(None)
}

/// Checks both halves of the order-`n` criterion for a fixed `Z`.
///
/// The verdict holds iff the existence witness verifies and no proper
/// divisor `j` of `n` has `monic(Q_i) = Z^j` anywhere in the period, with
/// every such scan inside the range where the period enumerates all
/// small-norm solutions. Scans outside that range make the verdict
/// inconclusive rather than passing silently.
pub fn theorem1_check(
    cf: &CfExpansion,
    z: &Poly,
    n: u32,
    witness: Option<(&Poly, &Poly)>,
) -> Result<Theorem1Verdict> {
    require_theory_input(cf)?;
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n = {n} must be at least 2")));
    }
    if !z.is_monic() || z.is_constant() {
        return Err(Error::InvalidArgument(format!("Z = {z} must be monic and nonconstant")));
    }
    let d = &cf.d;
    let half = cf.half_deg();
    let zn = z.pow(n);

    let mut witness_rejected = false;
    let mut search_deg_y = None;
    let found = match witness {
        Some((x, y)) => {
            let w = verify_witness(d, &zn, x, y);
            witness_rejected = w.is_none();
            w
        }
        None if zn.deg() < Some(half) => solutions_small_c(cf)?.get(&zn).and_then(|sols| {
            sols.first().map(|s| Witness {
                x: s.x.clone(),
                y: s.y.clone(),
                c: s.c.lc(),
            })
        }),
        None => {
            // largest deg Y the work guard admits, capped at 2R
            let q = d.field().order();
            let cap = 2 * cf.regulator() as usize;
            let budget = limits::limit(limits::BRUTE_FORCE_WORK);
            let mut bound = 0;
            while bound < cap && limits::saturating_pow(q, bound as u64 + 2) <= budget {
                bound += 1;
            }
            search_deg_y = Some(bound);
            search_witness(cf, &zn, bound)?
        }
    };

    let scanned: Vec<(usize, Poly)> = (1..=cf.period).map(|i| (i, cf.steps[i].q.clone())).collect();
    let nonexistence: Vec<NonexistenceEntry> = (1..n)
        .filter(|j| n.is_multiple_of(*j))
        .map(|j| {
            let zj = z.pow(j);
            NonexistenceEntry {
                j,
                lemma_applicable: zj.deg() < Some(half),
                matched: scanned.iter().any(|(_, q)| q.monic() == zj),
                scanned: scanned.clone(),
            }
        })
        .collect();

    let any_match = nonexistence.iter().any(|e| e.matched);
    let all_applicable = nonexistence.iter().all(|e| e.lemma_applicable);
    let holds = found.is_some() && !any_match && all_applicable;
    let inconclusive = !holds
        && !witness_rejected
        && !any_match
        && (!all_applicable || (found.is_none() && search_deg_y.is_some()));
    Ok(Theorem1Verdict {
        holds,
        inconclusive,
        n,
        z: z.clone(),
        witness: found,
        witness_rejected,
        search_deg_y,
        nonexistence,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::prime_field;

    fn p(q: u64, c: &[i64]) -> Poly {
        Poly::from_ints(prime_field(q).unwrap(), c)
    }

    fn t4p1() -> CfExpansion {
        CfExpansion::new(&p(5, &[1, 0, 0, 0, 1])).unwrap()
    }

    /// Every `(Y, C)` pair, with `X` from an exact square root.
    fn naive_search(d: &Poly, deg_y_max: usize, deg_c_max: usize) -> Vec<(Poly, Poly)> {
        let field = d.field();
        let cs: Vec<Poly> = (0..=deg_c_max)
            .flat_map(|k| Poly::monic_of_degree(field, k))
            .flat_map(|c| field.nonzero_elements().map(move |u| c.scale(u)))
            .collect();
        let mut out = BTreeSet::new();
        let ys = std::iter::once(Poly::zero(field))
            .chain((0..=deg_y_max).flat_map(|k| Poly::monic_of_degree(field, k)));
        for y in ys {
            for c in &cs {
                let target = &(d * &(&y * &y)) + c;
                if let Some(x) = target.sqrt_exact().unwrap() {
                    if x.coprime(&y) {
                        for u in field.nonzero_elements() {
                            out.insert((x.scale(u), y.scale(u)));
                            out.insert((x.scale(-u), y.scale(u)));
                        }
                    }
                }
            }
        }
        out.into_iter().collect()
    }

    #[test]
    fn brute_force_matches_naive_search() {
        for d in [p(5, &[1, 0, 0, 0, 1]), p(3, &[2, 1, 0, 1, 1]), p(3, &[1, 0, 2, 1, 0, 0, 1])] {
            let fast: Vec<(Poly, Poly)> = brute_force(&d, 3, d.deg().unwrap() as i64 / 2 - 1)
                .unwrap()
                .into_iter()
                .map(|s| (s.x, s.y))
                .collect();
            assert_eq!(fast, naive_search(&d, 3, d.deg().unwrap() / 2 - 1), "{d}");
        }
    }

    #[test]
    fn conjugate_keeps_norm() {
        let cf = t4p1();
        let s = PellSolution::new(&cf.d, p(5, &[1, 0, 1]), p(5, &[1]), None);
        assert_eq!(s.c, p(5, &[0, 0, 2]));
        let c = s.conjugate();
        assert_eq!(c.y, p(5, &[4]));
        assert_eq!(c.c, s.c);
        assert_eq!(norm(&cf.d, &c.x, &c.y), s.c);
    }

    #[test]
    fn associate_examples() {
        let cf = t4p1();
        let f = cf.d.field();
        let base = PellSolution::new(&cf.d, p(5, &[0, 0, 1]), p(5, &[1]), Some(1));
        assert_eq!(base.c, p(5, &[4]));
        assert_eq!(base.associate(f.one(), 0, &cf).unwrap().x, base.x);
        let up = base.associate(f.one(), 1, &cf).unwrap();
        // (T² + √D)² = 2T⁴ + 1 + 2T²√D
        assert_eq!(up.x, p(5, &[1, 0, 0, 0, 2]));
        assert_eq!(up.y, p(5, &[0, 0, 2]));
        assert_eq!(up.c, p(5, &[1]));
        let back = up.associate(f.one(), -1, &cf).unwrap();
        assert_eq!((back.x, back.y), (base.x.clone(), base.y.clone()));
        assert!(base.associate(f.zero(), 1, &cf).is_err());
    }

    #[test]
    fn small_c_map_for_t4_plus_1() {
        let cf = t4p1();
        let map = solutions_small_c(&cf).unwrap();
        assert_eq!(map.len(), 1);
        let sols = &map[&p(5, &[1])];
        assert_eq!(sols[0].x, p(5, &[0, 0, 1]));
        assert_eq!(sols[0].c, p(5, &[4]));
    }

    #[test]
    fn small_c_map_for_family_instance() {
        // (T²+T)² + 4T + 4, F = T + 1
        let cf = CfExpansion::new(&p(5, &[4, 4, 1, 2, 1])).unwrap();
        let map = solutions_small_c(&cf).unwrap();
        assert!(map.contains_key(&p(5, &[1, 1])));
        assert!(map.contains_key(&p(5, &[1])));
    }

    #[test]
    fn brute_force_t4_plus_1() {
        let d = p(5, &[1, 0, 0, 0, 1]);
        let hits = brute_force(&d, 0, 1).unwrap();
        // (±uT², u): 4 units × 2 signs; plus constants (u, 0)
        assert!(hits.iter().all(|s| s.c.deg() == Some(0)));
        assert!(hits.iter().any(|s| s.x == p(5, &[0, 0, 1]) && s.y.is_one()));
        assert_eq!(hits.iter().filter(|s| !s.y.is_zero()).count(), 8);
        assert!(brute_force(&d, -1, 1).unwrap().is_empty());
        assert!(brute_force(&d, 0, 2).is_err());
    }

    #[test]
    fn reductions() {
        let cf = t4p1();
        let f = cf.d.field();
        let base = PellSolution::new(&cf.d, p(5, &[0, 0, 1]), p(5, &[1]), None);
        let r = reduce_to_convergent(&base, &cf).unwrap();
        assert_eq!((r.unit_power, r.conjugated, r.index), (0, false, 1));
        let up = base.associate(f.one(), 1, &cf).unwrap();
        let r = reduce_to_convergent(&up, &cf).unwrap();
        assert_eq!(r.unit_power, 1);
        assert_eq!(r.rebuild(&cf).unwrap().x, up.x);
        let r = reduce_to_convergent(&base.conjugate(), &cf).unwrap();
        assert_eq!(r.rebuild(&cf).unwrap().y, base.conjugate().y);
        let trivial = PellSolution::new(&cf.d, p(5, &[3]), Poly::zero(f), None);
        let r = reduce_to_convergent(&trivial, &cf).unwrap();
        assert_eq!(r.unit_power, -1);
        assert_eq!(r.rebuild(&cf).unwrap().x, trivial.x);
    }

    #[test]
    fn theorem1_worked_example() {
        let cf = t4p1();
        let t = p(5, &[0, 1]);
        let v = theorem1_check(&cf, &t, 2, Some((&p(5, &[1, 0, 1]), &p(5, &[1])))).unwrap();
        assert!(v.holds);
        assert_eq!(v.witness.as_ref().unwrap().c, cf.d.field().from_int(2));
        assert_eq!(v.nonexistence.len(), 1);
        assert_eq!(v.nonexistence[0].j, 1);
        assert!(v.nonexistence[0].lemma_applicable);
        assert!(!v.nonexistence[0].matched);
        assert_eq!(v.nonexistence[0].scanned, vec![(1, p(5, &[1]))]);
    }

    #[test]
    fn theorem1_rejects_bad_witness() {
        let cf = t4p1();
        let t = p(5, &[0, 1]);
        let v = theorem1_check(&cf, &t, 2, Some((&p(5, &[0, 0, 1]), &p(5, &[1])))).unwrap();
        assert!(!v.holds);
        assert!(v.witness_rejected);
        assert_eq!(v.status(), Status::Fails);
    }

    #[test]
    fn theorem1_without_witness_searches() {
        let cf = t4p1();
        let v = theorem1_check(&cf, &p(5, &[0, 1]), 2, None).unwrap();
        assert!(v.holds, "{v:?}");
        assert!(v.search_deg_y.is_some());
    }

    #[test]
    fn theorem1_family_three_instance() {
        // A = T², a = 3T² + 2, D = (A² + a)² + A, witness (A² + a, 1), c = −1
        let a_pow = p(5, &[2, 0, 3, 0, 1]);
        let d = &(&a_pow * &a_pow) + &p(5, &[0, 0, 1]);
        let cf = CfExpansion::new(&d).unwrap();
        let v = theorem1_check(&cf, &p(5, &[0, 1]), 2, Some((&a_pow, &p(5, &[1])))).unwrap();
        assert!(v.holds, "{v:?}");
        assert_eq!(v.witness.unwrap().c, d.field().from_int(-1));
    }

    #[test]
    fn theorem1_argument_errors() {
        let cf = t4p1();
        assert!(theorem1_check(&cf, &p(5, &[0, 1]), 1, None).is_err());
        assert!(theorem1_check(&cf, &p(5, &[0, 2]), 2, None).is_err());
        assert!(theorem1_check(&cf, &p(5, &[1]), 2, None).is_err());
    }
}
