//! Generalized arithmetic progressions over the rationals and over F_p:
//! enumeration with canonical preimages, set algebra, and the text grammar
//! `ring:base|c1,...,cd|lo1..hi1,...` with ring `Z` or `F<p>`.

use crate::error::{Error, Result};
use crate::exact::field::{Field, PrimeField, Rationals};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

/// Default cap on the parameter-box size for enumeration.
pub const DEFAULT_ENUM_CAP: u128 = 10_000_000;

/// A rank-d progression { base + c1*h1 + ... + cd*hd : lo_i <= h_i <= hi_i }.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gap<F: Field> {
    pub field: F,
    pub base: F::Elem,
    pub gens: Vec<F::Elem>,
    pub ranges: Vec<(i64, i64)>,
}

impl<F: Field> Gap<F> {
    pub fn new(field: F, base: F::Elem, gens: Vec<F::Elem>, ranges: Vec<(i64, i64)>) -> Result<Self> {
        if gens.len() != ranges.len() {
            return Err(Error::Dimension(format!(
                "{} generators vs {} ranges",
                gens.len(),
                ranges.len()
            )));
        }
        for &(lo, hi) in &ranges {
            if lo > hi {
                return Err(Error::Domain(format!("empty range {lo}..{hi}")));
            }
        }
        Ok(Gap { field, base, gens, ranges })
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn box_cardinality(&self) -> u128 {
        self.ranges
            .iter()
            .map(|&(lo, hi)| (hi - lo + 1) as u128)
            .product()
    }

    pub fn eval(&self, params: &[i64]) -> F::Elem {
        assert_eq!(params.len(), self.gens.len());
        let f = &self.field;
        let mut acc = self.base.clone();
        for (g, &h) in self.gens.iter().zip(params) {
            let term = f.mul(g, &f.from_i64(h));
            acc = f.add(&acc, &term);
        }
        acc
    }

    /// Gap with every coefficient multiplied by c.
    pub fn scaled(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        Gap {
            field: f.clone(),
            base: f.mul(&self.base, c),
            gens: self.gens.iter().map(|g| f.mul(g, c)).collect(),
            ranges: self.ranges.clone(),
        }
    }

    /// Gap translated by delta (only the base moves).
    pub fn shifted(&self, delta: &F::Elem) -> Self {
        let mut out = self.clone();
        out.base = self.field.add(&self.base, delta);
        out
    }

    /// Enumerate distinct elements in deterministic order. The canonical
    /// preimage of each element is its lexicographically smallest parameter
    /// vector, which is the first one met when iterating the box in
    /// lexicographic order.
    pub fn enumerate(&self, cap: u128) -> Result<ElementSet<F>> {
        let card = self.box_cardinality();
        if card > cap {
            return Err(Error::CapExceeded(format!(
                "box cardinality {card} exceeds enumeration cap {cap}"
            )));
        }
        let f = &self.field;
        let d = self.rank();
        let mut members: Vec<F::Elem> = Vec::new();
        let mut preimages: Vec<Vec<i64>> = Vec::new();
        let mut seen: HashMap<F::Elem, usize> = HashMap::new();
        let mut params: Vec<i64> = self.ranges.iter().map(|&(lo, _)| lo).collect();
        let mut value = self.eval(&params);
        loop {
            if !seen.contains_key(&value) {
                seen.insert(value.clone(), members.len());
                members.push(value.clone());
                preimages.push(params.clone());
            }
            // odometer step: last coordinate fastest keeps lexicographic order
            let mut i = d;
            loop {
                if i == 0 {
                    let proper = members.len() as u128 == card;
                    return Ok(ElementSet {
                        field: f.clone(),
                        members,
                        preimages: Some(preimages),
                        index: seen,
                        box_cardinality: card,
                        proper,
                    });
                }
                i -= 1;
                if params[i] < self.ranges[i].1 {
                    params[i] += 1;
                    value = f.add(&value, &self.gens[i]);
                    break;
                }
                // roll over: subtract gen * (hi - lo)
                let span = self.ranges[i].1 - self.ranges[i].0;
                let back = f.mul(&self.gens[i], &f.from_i64(span));
                value = f.sub(&value, &back);
                params[i] = self.ranges[i].0;
            }
        }
    }
}

/// A deduplicated element set, optionally with canonical preimages
/// (present when it came straight from a Gap enumeration).
#[derive(Debug, Clone)]
pub struct ElementSet<F: Field> {
    pub field: F,
    members: Vec<F::Elem>,
    preimages: Option<Vec<Vec<i64>>>,
    index: HashMap<F::Elem, usize>,
    box_cardinality: u128,
    proper: bool,
}

impl<F: Field> ElementSet<F> {
    pub fn from_members(field: F, mut members: Vec<F::Elem>) -> Self {
        members.sort();
        members.dedup();
        let index = members
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let card = members.len() as u128;
        ElementSet {
            field,
            members,
            preimages: None,
            index,
            box_cardinality: card,
            proper: true,
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[F::Elem] {
        &self.members
    }

    pub fn contains(&self, e: &F::Elem) -> bool {
        self.index.contains_key(e)
    }

    pub fn preimage(&self, i: usize) -> Option<&[i64]> {
        self.preimages.as_ref().map(|p| p[i].as_slice())
    }

    pub fn preimages(&self) -> Option<&[Vec<i64>]> {
        self.preimages.as_deref()
    }

    pub fn is_proper(&self) -> bool {
        self.proper
    }

    pub fn box_cardinality(&self) -> u128 {
        self.box_cardinality
    }

    fn check_ring(&self, other: &Self) -> Result<()>
    where
        F: PartialEq,
    {
        if self.field != other.field {
            return Err(Error::Domain("ring mismatch".into()));
        }
        Ok(())
    }
}

impl<F: Field + PartialEq> ElementSet<F> {
    pub fn sumset(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let f = &self.field;
        let mut out = Vec::with_capacity(self.len() * other.len());
        for a in &self.members {
            for b in &other.members {
                out.push(f.add(a, b));
            }
        }
        Ok(Self::from_members(f.clone(), out))
    }

    pub fn productset(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let f = &self.field;
        let mut out = Vec::with_capacity(self.len() * other.len());
        for a in &self.members {
            for b in &other.members {
                out.push(f.mul(a, b));
            }
        }
        Ok(Self::from_members(f.clone(), out))
    }

    /// Inverses of the nonzero elements; returns the set plus how many zeros
    /// were skipped.
    pub fn inverse_set(&self) -> (Self, usize) {
        let f = &self.field;
        let mut out = Vec::with_capacity(self.len());
        let mut skipped = 0usize;
        for a in &self.members {
            if f.is_zero(a) {
                skipped += 1;
            } else {
                out.push(f.inv(a));
            }
        }
        (Self::from_members(f.clone(), out), skipped)
    }

    pub fn square_set(&self) -> Self {
        let f = &self.field;
        let out = self.members.iter().map(|a| f.mul(a, a)).collect();
        Self::from_members(f.clone(), out)
    }

    /// |A + A| / |A| as an exact rational.
    pub fn doubling_constant(&self) -> Result<BigRational> {
        if self.is_empty() {
            return Err(Error::Domain("doubling constant of empty set".into()));
        }
        let aa = self.sumset(self)?;
        Ok(BigRational::new(
            BigInt::from(aa.len()),
            BigInt::from(self.len()),
        ))
    }
}

/// A Gap over either supported ring, as written in the text grammar.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyGap {
    Rational(Gap<Rationals>),
    Modular(Gap<PrimeField>),
}

impl AnyGap {
    pub fn rank(&self) -> usize {
        match self {
            AnyGap::Rational(g) => g.rank(),
            AnyGap::Modular(g) => g.rank(),
        }
    }

    pub fn as_modular(&self) -> Result<&Gap<PrimeField>> {
        match self {
            AnyGap::Modular(g) => Ok(g),
            AnyGap::Rational(_) => Err(Error::Domain("expected a mod-p gap".into())),
        }
    }

    pub fn as_rational(&self) -> Result<&Gap<Rationals>> {
        match self {
            AnyGap::Rational(g) => Ok(g),
            AnyGap::Modular(_) => Err(Error::Domain("expected a gap over Z".into())),
        }
    }
}

fn parse_ranges(s: &str) -> Result<Vec<(i64, i64)>> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|part| {
            let (lo, hi) = part
                .split_once("..")
                .ok_or_else(|| Error::Parse(format!("bad range `{part}`")))?;
            let lo: i64 = lo
                .parse()
                .map_err(|_| Error::Parse(format!("bad range bound `{lo}`")))?;
            let hi: i64 = hi
                .parse()
                .map_err(|_| Error::Parse(format!("bad range bound `{hi}`")))?;
            Ok((lo, hi))
        })
        .collect()
}

fn parse_rational(s: &str) -> Result<BigRational> {
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| Error::Parse(format!("bad integer `{n}`")))?;
        let d = BigInt::from_str(d.trim()).map_err(|_| Error::Parse(format!("bad integer `{d}`")))?;
        if d.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(BigRational::new(n, d))
    } else {
        let n =
            BigInt::from_str(s.trim()).map_err(|_| Error::Parse(format!("bad integer `{s}`")))?;
        Ok(BigRational::from_integer(n))
    }
}

impl FromStr for AnyGap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (ring, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("missing ring tag in `{s}`")))?;
        let mut parts = rest.split('|');
        let base = parts
            .next()
            .ok_or_else(|| Error::Parse("missing base".into()))?;
        let gens = parts.next().unwrap_or("");
        let ranges = parts.next().unwrap_or("");
        if parts.next().is_some() {
            return Err(Error::Parse(format!("too many `|` segments in `{s}`")));
        }
        let ranges = parse_ranges(ranges)?;
        if ring == "Z" {
            let base = parse_rational(base)?;
            let gens: Vec<BigRational> = if gens.is_empty() {
                Vec::new()
            } else {
                gens.split(',').map(parse_rational).collect::<Result<_>>()?
            };
            Ok(AnyGap::Rational(Gap::new(Rationals, base, gens, ranges)?))
        } else if let Some(p) = ring.strip_prefix('F') {
            let p: u64 = p
                .parse()
                .map_err(|_| Error::Parse(format!("bad prime `{p}`")))?;
            let field = PrimeField::new(p)?;
            let parse_elem = |t: &str| -> Result<u64> {
                let v: i64 = t
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad integer `{t}`")))?;
                Ok(field.reduce_i64(v))
            };
            let base = parse_elem(base)?;
            let gens: Vec<u64> = if gens.is_empty() {
                Vec::new()
            } else {
                gens.split(',').map(parse_elem).collect::<Result<_>>()?
            };
            Ok(AnyGap::Modular(Gap::new(field, base, gens, ranges)?))
        } else {
            Err(Error::Parse(format!("unknown ring `{ring}`")))
        }
    }
}

impl fmt::Display for AnyGap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn ranges_str(ranges: &[(i64, i64)]) -> String {
            ranges
                .iter()
                .map(|(lo, hi)| format!("{lo}..{hi}"))
                .collect::<Vec<_>>()
                .join(",")
        }
        match self {
            AnyGap::Rational(g) => {
                let gens = g
                    .gens
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                write!(f, "Z:{}|{}|{}", g.base, gens, ranges_str(&g.ranges))
            }
            AnyGap::Modular(g) => {
                let gens = g
                    .gens
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                write!(
                    f,
                    "F{}:{}|{}|{}",
                    g.field.p(),
                    g.base,
                    gens,
                    ranges_str(&g.ranges)
                )
            }
        }
    }
}

/// The explicit proper progression used in the pigeonhole argument:
/// base 0 and generators (2H+1)^(i-1), ranges -H..H.
pub fn digit_gap_rational(h: i64, rank: usize) -> Gap<Rationals> {
    let radix = BigRational::from_integer(BigInt::from(2 * h + 1));
    let mut gens = Vec::with_capacity(rank);
    let mut g = BigRational::one();
    for _ in 0..rank {
        gens.push(g.clone());
        g *= &radix;
    }
    Gap::new(
        Rationals,
        BigRational::zero(),
        gens,
        vec![(-h, h); rank],
    )
    .expect("valid digit gap")
}

/// Same progression reduced mod p.
pub fn digit_gap_mod_p(h: i64, rank: usize, p: u64) -> Result<Gap<PrimeField>> {
    let field = PrimeField::new(p)?;
    let radix = field.reduce_i64(2 * h + 1);
    let mut gens = Vec::with_capacity(rank);
    let mut g = 1u64 % p;
    for _ in 0..rank {
        gens.push(g);
        g = crate::exact::primes::mul_mod(g, radix, p);
    }
    Gap::new(field, 0, gens, vec![(-h, h); rank])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn enumerate_interval() {
        let g = Gap::new(Rationals, q(0), vec![q(1)], vec![(1, 4)]).unwrap();
        let s = g.enumerate(DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(s.members(), &[q(1), q(2), q(3), q(4)]);
        assert!(s.is_proper());
    }

    #[test]
    fn enumerate_mod_p_rank2() {
        let f5 = PrimeField::new(5).unwrap();
        let g = Gap::new(f5, 0, vec![1, 2], vec![(1, 2), (1, 2)]).unwrap();
        let s = g.enumerate(DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(s.members(), &[3, 0, 4, 1]);
        assert!(s.is_proper());
        // canonical preimages are lexicographically smallest
        assert_eq!(s.preimage(0).unwrap(), &[1, 1]);
    }

    #[test]
    fn improper_gap_detected() {
        let g = Gap::new(Rationals, q(0), vec![q(1), q(1)], vec![(1, 2), (1, 2)]).unwrap();
        let s = g.enumerate(DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(s.members(), &[q(2), q(3), q(4)]);
        assert!(!s.is_proper());
        assert_eq!(s.box_cardinality(), 4);
        // canonical preimage of 3 is (1,2), not (2,1)
        let idx = s.members().iter().position(|m| *m == q(3)).unwrap();
        assert_eq!(s.preimage(idx).unwrap(), &[1, 2]);
    }

    #[test]
    fn enumeration_deterministic() {
        let f101 = PrimeField::new(101).unwrap();
        let g = Gap::new(f101, 7, vec![3, 10], vec![(-2, 2), (0, 3)]).unwrap();
        let a = g.enumerate(DEFAULT_ENUM_CAP).unwrap();
        let b = g.enumerate(DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(a.members(), b.members());
        assert_eq!(a.preimages(), b.preimages());
    }

    #[test]
    fn cap_enforced() {
        let g = Gap::new(Rationals, q(0), vec![q(1)], vec![(1, 100)]).unwrap();
        assert!(matches!(g.enumerate(10), Err(Error::CapExceeded(_))));
    }

    #[test]
    fn interval_sumset_size() {
        for n in 1..12i64 {
            let g = Gap::new(Rationals, q(0), vec![q(1)], vec![(1, n)]).unwrap();
            let s = g.enumerate(DEFAULT_ENUM_CAP).unwrap();
            let ss = s.sumset(&s).unwrap();
            assert_eq!(ss.len() as i64, 2 * n - 1);
        }
    }

    #[test]
    fn product_and_inverse_mod7() {
        let f7 = PrimeField::new(7).unwrap();
        let s = ElementSet::from_members(f7, vec![1, 2, 4]);
        let prod = s.productset(&s).unwrap();
        assert_eq!(prod.members(), &[1, 2, 4]);

        let t = ElementSet::from_members(f7, vec![1, 2, 3]);
        let (inv, skipped) = t.inverse_set();
        assert_eq!(inv.members(), &[1, 4, 5]);
        assert_eq!(skipped, 0);

        let u = ElementSet::from_members(f7, vec![0, 1, 2]);
        let (inv, skipped) = u.inverse_set();
        assert_eq!(inv.members(), &[1, 4]);
        assert_eq!(skipped, 1);
    }

    #[test]
    fn doubling_examples() {
        let g = Gap::new(Rationals, q(0), vec![q(1)], vec![(1, 10)]).unwrap();
        let s = g.enumerate(DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(s.doubling_constant().unwrap(), BigRational::new(19.into(), 10.into()));

        let one = ElementSet::from_members(Rationals, vec![q(42)]);
        assert_eq!(one.doubling_constant().unwrap(), BigRational::one());

        let pows = ElementSet::from_members(Rationals, vec![q(1), q(2), q(4), q(8)]);
        assert_eq!(
            pows.doubling_constant().unwrap(),
            BigRational::new(10.into(), 4.into())
        );
    }

    #[test]
    fn digit_gap_is_proper() {
        for h in 1..4i64 {
            for rank in 1..4usize {
                let s = digit_gap_rational(h, rank).enumerate(DEFAULT_ENUM_CAP).unwrap();
                assert!(s.is_proper(), "h={h} rank={rank}");
            }
        }
    }

    #[test]
    fn grammar_round_trip() {
        for text in ["F101:0|1|1..4", "Z:0|1,2|-3..3,1..5", "Z:5||", "F7:3|2,4|0..1,0..1"] {
            let g: AnyGap = text.parse().unwrap();
            assert_eq!(g.to_string(), text);
        }
        assert!("Q:0|1|1..4".parse::<AnyGap>().is_err());
        assert!("F10:0|1|1..4".parse::<AnyGap>().is_err()); // composite modulus
        assert!("F7:0|1|4..1".parse::<AnyGap>().is_err()); // empty range
    }

    #[test]
    fn ring_mismatch_rejected() {
        let f5 = PrimeField::new(5).unwrap();
        let f7 = PrimeField::new(7).unwrap();
        let a = ElementSet::from_members(f5, vec![1]);
        let b = ElementSet::from_members(f7, vec![1]);
        assert!(a.sumset(&b).is_err());
    }
}
