//! Exact solution counting for the three equation kinds over GAPs mod p,
//! the divisor-enumeration oracle over the rationals, and pigeonhole
//! witness discovery.

use crate::error::{Error, Result};
use crate::exact::field::{PrimeField, Rationals};
use crate::exact::primes::{inv_mod_checked, mul_mod};
use crate::exact::residue::sqrt_of_minus_one;
use crate::gap::{digit_gap_mod_p, AnyGap, ElementSet, Gap, DEFAULT_ENUM_CAP};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet};

/// Enumeration and reporting caps.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Caps {
    pub enum_cap: u128,
    pub witness_cap: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { enum_cap: DEFAULT_ENUM_CAP, witness_cap: 10_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EqKind {
    Product,
    Kloosterman,
    Squares,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algo {
    Naive,
    Lookup,
}

/// One counting problem: pairs (a,b) in A x B with the chosen equation mod p.
#[derive(Debug, Clone)]
pub struct ModInstance {
    pub a: Gap<PrimeField>,
    pub b: Gap<PrimeField>,
    pub lambda: u64,
    pub kind: EqKind,
}

impl ModInstance {
    pub fn new(a: Gap<PrimeField>, b: Gap<PrimeField>, lambda: u64, kind: EqKind) -> Result<Self> {
        if a.field.p() != b.field.p() {
            return Err(Error::Domain(format!(
                "mismatched primes {} and {}",
                a.field.p(),
                b.field.p()
            )));
        }
        let lambda = lambda % a.field.p();
        if lambda == 0 {
            return Err(Error::Domain("lambda must be nonzero".into()));
        }
        Ok(ModInstance { a, b, lambda, kind })
    }

    pub fn p(&self) -> u64 {
        self.a.field.p()
    }
}

/// On-disk instance format.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceFile {
    pub p: u64,
    pub lambda: i64,
    pub kind: EqKind,
    #[serde(rename = "A")]
    pub a: String,
    #[serde(rename = "B")]
    pub b: String,
}

impl InstanceFile {
    pub fn to_instance(&self) -> Result<ModInstance> {
        let a: AnyGap = self.a.parse()?;
        let b: AnyGap = self.b.parse()?;
        let a = a.as_modular()?.clone();
        let b = b.as_modular()?.clone();
        if a.field.p() != self.p {
            return Err(Error::Parse(format!(
                "gap A has modulus {}, file says p={}",
                a.field.p(),
                self.p
            )));
        }
        let lambda = a.field.reduce_i64(self.lambda);
        ModInstance::new(a, b, lambda, self.kind)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CountReport {
    pub count: u64,
    /// Witness pairs, truncated at the cap; full when count <= cap.
    pub witnesses: Vec<(u64, u64)>,
    pub algo: Algo,
    pub elapsed_ms: f64,
}

fn solves(kind: EqKind, p: u64, lambda: u64, a: u64, a_inv: u64, a_sq: u64, b: u64) -> bool {
    match kind {
        EqKind::Product => mul_mod(a, b, p) == lambda,
        EqKind::Kloosterman => {
            if a == 0 || b == 0 {
                return false;
            }
            (a_inv + inv_mod_checked(b, p)) % p == lambda
        }
        EqKind::Squares => (a_sq + mul_mod(b, b, p)) % p == lambda,
    }
}

/// Exact count of solution pairs over the element sets of the two gaps.
/// `Naive` is the O(|A||B|) double loop; `Lookup` probes a table keyed on A.
/// Both return identical counts.
pub fn count_modp(inst: &ModInstance, algo: Algo, caps: &Caps) -> Result<CountReport> {
    let start = std::time::Instant::now();
    let sa = inst.a.enumerate(caps.enum_cap)?;
    let sb = inst.b.enumerate(caps.enum_cap)?;
    let p = inst.p();
    let lambda = inst.lambda;
    let mut count = 0u64;
    let mut witnesses = Vec::new();
    match algo {
        Algo::Naive => {
            let a_inv: Vec<u64> = sa
                .members()
                .iter()
                .map(|&a| if a == 0 { 0 } else { inv_mod_checked(a, p) })
                .collect();
            let a_sq: Vec<u64> = sa.members().iter().map(|&a| mul_mod(a, a, p)).collect();
            for (i, &a) in sa.members().iter().enumerate() {
                for &b in sb.members() {
                    if solves(inst.kind, p, lambda, a, a_inv[i], a_sq[i], b) {
                        count += 1;
                        if witnesses.len() < caps.witness_cap {
                            witnesses.push((a, b));
                        }
                    }
                }
            }
        }
        Algo::Lookup => match inst.kind {
            EqKind::Product => {
                let table: HashSet<u64> = sa.members().iter().copied().collect();
                for &b in sb.members() {
                    if b == 0 {
                        continue;
                    }
                    let need = mul_mod(lambda, inv_mod_checked(b, p), p);
                    if table.contains(&need) {
                        count += 1;
                        if witnesses.len() < caps.witness_cap {
                            witnesses.push((need, b));
                        }
                    }
                }
            }
            EqKind::Kloosterman => {
                let table: HashSet<u64> = sa.members().iter().copied().collect();
                for &b in sb.members() {
                    if b == 0 {
                        continue;
                    }
                    let t = (lambda + p - inv_mod_checked(b, p)) % p;
                    if t == 0 {
                        continue;
                    }
                    let need = inv_mod_checked(t, p);
                    if need != 0 && table.contains(&need) {
                        count += 1;
                        if witnesses.len() < caps.witness_cap {
                            witnesses.push((need, b));
                        }
                    }
                }
            }
            EqKind::Squares => {
                let mut squares: HashMap<u64, Vec<u64>> = HashMap::new();
                for &a in sa.members() {
                    squares.entry(mul_mod(a, a, p)).or_default().push(a);
                }
                for &b in sb.members() {
                    let need = (lambda + p - mul_mod(b, b, p)) % p;
                    if let Some(roots) = squares.get(&need) {
                        count += roots.len() as u64;
                        for &a in roots {
                            if witnesses.len() < caps.witness_cap {
                                witnesses.push((a, b));
                            }
                        }
                    }
                }
            }
        },
    }
    Ok(CountReport {
        count,
        witnesses,
        algo,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// Result of rewriting an instance as a product instance.
#[derive(Debug, Clone)]
pub struct ReducedInstance {
    pub inst: ModInstance,
    /// 1 exactly when (0,0) in A x B maps onto a spurious product solution.
    pub zero_pair_correction: u64,
    /// Present for the squares rewrite: the built rank-(d+e) gaps must be
    /// evaluated on the shared parameter box.
    pub coupled: Option<CoupledData>,
}

#[derive(Debug, Clone)]
pub struct CoupledData {
    pub i_root: u64,
    pub original: ModInstance,
}

impl ReducedInstance {
    /// The exact count matching the original instance.
    pub fn equivalent_count(&self, caps: &Caps) -> Result<u64> {
        match &self.coupled {
            None => {
                let c = count_modp(&self.inst, Algo::Lookup, caps)?.count;
                Ok(c - self.zero_pair_correction)
            }
            Some(data) => coupled_product_count(data, self.inst.lambda, caps),
        }
    }
}

/// Count pairs (x,y) in A x B with (x + iy)(x - iy) = lambda: the two
/// transformed gaps range over the same parameters, so the product is
/// evaluated pairwise over the original sets.
fn coupled_product_count(data: &CoupledData, lambda: u64, caps: &Caps) -> Result<u64> {
    let p = data.original.p();
    let i = data.i_root;
    let sa = data.original.a.enumerate(caps.enum_cap)?;
    let sb = data.original.b.enumerate(caps.enum_cap)?;
    let mut count = 0u64;
    for &x in sa.members() {
        for &y in sb.members() {
            let iy = mul_mod(i, y, p);
            let u = (x + iy) % p;
            let v = (x + p - iy) % p;
            if mul_mod(u, v, p) == lambda {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Rewrite a Kloosterman-fraction instance as a product instance:
/// a^-1 + b^-1 = lambda becomes (a - lambda^-1)(b - lambda^-1) = lambda^-2.
/// The pair (0,0), when both gaps contain zero, produces one spurious product
/// solution; the correction records it so counts match exactly.
pub fn reduce_kloosterman(inst: &ModInstance, caps: &Caps) -> Result<ReducedInstance> {
    if inst.kind != EqKind::Kloosterman {
        return Err(Error::Domain("expected a kloosterman instance".into()));
    }
    let p = inst.p();
    let lam_inv = inv_mod_checked(inst.lambda, p);
    let shift = p - lam_inv; // -lambda^-1
    let a = inst.a.shifted(&shift);
    let b = inst.b.shifted(&shift);
    let new_lambda = mul_mod(lam_inv, lam_inv, p);
    let sa = inst.a.enumerate(caps.enum_cap)?;
    let sb = inst.b.enumerate(caps.enum_cap)?;
    let correction = u64::from(sa.contains(&0) && sb.contains(&0));
    Ok(ReducedInstance {
        inst: ModInstance::new(a, b, new_lambda, EqKind::Product)?,
        zero_pair_correction: correction,
        coupled: None,
    })
}

/// Rewrite a sum-of-squares instance as a product instance via u = a + ib,
/// v = a - ib with i^2 = -1, available only for p = 1 (mod 4). The two
/// rank-(d+e) gaps share their parameter box, and the pairing (a,b) -> (u,v)
/// is a bijection, so counts match exactly.
pub fn reduce_squares(inst: &ModInstance) -> Result<ReducedInstance> {
    if inst.kind != EqKind::Squares {
        return Err(Error::Domain("expected a squares instance".into()));
    }
    let p = inst.p();
    let Some(i) = sqrt_of_minus_one(p) else {
        return Err(Error::Unsupported(format!(
            "squares rewrite needs a square root of -1; p = {p} is 3 mod 4"
        )));
    };
    let field = inst.a.field;
    let mul_i = |x: u64| mul_mod(i, x, p);
    let mut u_gens: Vec<u64> = inst.a.gens.clone();
    u_gens.extend(inst.b.gens.iter().map(|&g| mul_i(g)));
    let mut v_gens: Vec<u64> = inst.a.gens.clone();
    v_gens.extend(inst.b.gens.iter().map(|&g| (p - mul_i(g)) % p));
    let mut ranges = inst.a.ranges.clone();
    ranges.extend(inst.b.ranges.iter().copied());
    let u_gap = Gap::new(field, (inst.a.base + mul_i(inst.b.base)) % p, u_gens, ranges.clone())?;
    let v_gap = Gap::new(
        field,
        (inst.a.base + p - mul_i(inst.b.base)) % p,
        v_gens,
        ranges,
    )?;
    Ok(ReducedInstance {
        inst: ModInstance::new(u_gap, v_gap, inst.lambda, EqKind::Product)?,
        zero_pair_correction: 0,
        coupled: Some(CoupledData { i_root: i, original: inst.clone() }),
    })
}

/// All ordered pairs (x, y) in A x B with x * y = target, exact over Q.
pub fn product_pairs_rational(
    a: &ElementSet<Rationals>,
    b: &ElementSet<Rationals>,
    target: &BigRational,
) -> Vec<(BigRational, BigRational)> {
    let mut out = Vec::new();
    for x in a.members() {
        if x.is_zero() {
            if target.is_zero() {
                for y in b.members() {
                    out.push((x.clone(), y.clone()));
                }
            }
            continue;
        }
        let y = target / x;
        if b.contains(&y) {
            out.push((x.clone(), y));
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct ChangReport {
    pub count: u64,
    pub divisor_route_count: u64,
    pub brute_route_count: u64,
    /// The integer divisor target after clearing denominators, when it fit.
    pub integer_target: Option<i128>,
}

/// Exact count of ordered pairs (a1, a2) in A x A with a1 * a2 = lambda,
/// computed by divisor enumeration and checked against brute force.
pub fn chang_count_rational(
    a: &ElementSet<Rationals>,
    lambda: &BigRational,
    caps: &Caps,
) -> Result<ChangReport> {
    if lambda.is_zero() {
        return Err(Error::Domain("lambda must be nonzero".into()));
    }
    if (a.len() as u128).pow(2) > caps.enum_cap {
        return Err(Error::CapExceeded(format!(
            "|A|^2 = {} exceeds cap",
            (a.len() as u128).pow(2)
        )));
    }

    // route (ii): brute force
    let brute = product_pairs_rational(a, a, lambda).len() as u64;

    // route (i): clear denominators, enumerate divisors of the integer target
    let mut denom_lcm = BigInt::from(1);
    for m in a.members() {
        denom_lcm = denom_lcm.lcm(m.denom());
    }
    let scaled: HashSet<BigInt> = a
        .members()
        .iter()
        .map(|m| (m * BigRational::from_integer(denom_lcm.clone())).to_integer())
        .collect();
    // a1 a2 = lambda  <=>  n1 n2 = lambda * D^2
    let target_rat = lambda * BigRational::from_integer(&denom_lcm * &denom_lcm);
    let divisor = if !target_rat.is_integer() {
        0
    } else {
        let target = target_rat.to_integer();
        let abs = target.abs();
        let Some(abs64) = abs.to_u64() else {
            return Err(Error::CapExceeded(format!(
                "divisor target {abs} exceeds 64 bits"
            )));
        };
        let negative = target.is_negative();
        let mut found = 0u64;
        for d in crate::exact::divisors_u64(abs64) {
            let q = abs64 / d;
            // ordered pairs with n1 = +-d
            for (n1, n2) in [
                (BigInt::from(d), if negative { -BigInt::from(q) } else { BigInt::from(q) }),
                (-BigInt::from(d), if negative { BigInt::from(q) } else { -BigInt::from(q) }),
            ] {
                if scaled.contains(&n1) && scaled.contains(&n2) {
                    found += 1;
                }
            }
        }
        found
    };

    if divisor != brute {
        return Err(Error::Invariant(format!(
            "divisor route {divisor} != brute force {brute}"
        )));
    }
    Ok(ChangReport {
        count: brute,
        divisor_route_count: divisor,
        brute_route_count: brute,
        integer_target: target_rat
            .is_integer()
            .then(|| target_rat.to_integer().to_i128())
            .flatten(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct PigeonholeReport {
    pub p: u64,
    pub h: i64,
    pub d: usize,
    pub e: usize,
    pub lambda0: u64,
    pub count: u64,
    pub nonzero_pairs: u64,
    pub pigeonhole_floor: u64,
    pub a_proper: bool,
    pub b_proper: bool,
}

/// Build the explicit base-(2H+1) progressions of ranks d and e, histogram
/// all products over the element sets, and return the heaviest nonzero class.
/// The returned count is at least ceil(nonzero_pairs / (p-1)).
pub fn pigeonhole_witness(
    h: i64,
    d: usize,
    e: usize,
    p: u64,
    caps: &Caps,
) -> Result<PigeonholeReport> {
    if h < 1 {
        return Err(Error::Domain("H must be positive".into()));
    }
    let hd = (h as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if (p as u128) <= hd {
        return Err(Error::Domain(format!("need p > H^d = {hd}, got p = {p}")));
    }
    let a = digit_gap_mod_p(h, d, p)?.enumerate(caps.enum_cap)?;
    let b = digit_gap_mod_p(h, e, p)?.enumerate(caps.enum_cap)?;
    let histogram = product_histogram(&a, &b, p);
    let nonzero_pairs: u64 = histogram
        .iter()
        .filter(|(&lam, _)| lam != 0)
        .map(|(_, &c)| c)
        .sum();
    let (lambda0, count) = histogram
        .iter()
        .filter(|(&lam, _)| lam != 0)
        .map(|(&lam, &c)| (lam, c))
        .max_by(|(l1, c1), (l2, c2)| c1.cmp(c2).then(l2.cmp(l1)))
        .ok_or_else(|| Error::Domain("no nonzero products".into()))?;
    let floor = nonzero_pairs.div_ceil(p - 1);
    if count < floor {
        return Err(Error::Invariant(format!(
            "pigeonhole violated: max class {count} < ceil({nonzero_pairs}/{})",
            p - 1
        )));
    }
    Ok(PigeonholeReport {
        p,
        h,
        d,
        e,
        lambda0,
        count,
        nonzero_pairs,
        pigeonhole_floor: floor,
        a_proper: a.is_proper(),
        b_proper: b.is_proper(),
    })
}

/// r(lambda) histogram of products over A x B, sharded across workers and
/// merged by summation.
pub fn product_histogram(
    a: &ElementSet<PrimeField>,
    b: &ElementSet<PrimeField>,
    p: u64,
) -> HashMap<u64, u64> {
    a.members()
        .par_iter()
        .fold(HashMap::new, |mut acc: HashMap<u64, u64>, &x| {
            for &y in b.members() {
                *acc.entry(mul_mod(x, y, p)).or_insert(0) += 1;
            }
            acc
        })
        .reduce(HashMap::new, |mut acc, partial| {
            for (k, v) in partial {
                *acc.entry(k).or_insert(0) += v;
            }
            acc
        })
}
