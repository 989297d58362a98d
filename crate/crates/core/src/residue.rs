//! Residue arithmetic and weight sets over Z/nZ.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::Error;

/// A modulus n >= 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Modulus(u32);

impl Modulus {
    pub fn new(n: u32) -> crate::Result<Self> {
        if n < 2 {
            return Err(Error::ModulusTooSmall(n as i64));
        }
        Ok(Modulus(n))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    /// Reduces an arbitrary integer into [0, n).
    #[inline]
    pub fn reduce(self, value: i64) -> u32 {
        let n = self.0 as i64;
        (((value % n) + n) % n) as u32
    }

    pub fn residue(self, value: i64) -> Residue {
        Residue {
            value: self.reduce(value),
            modulus: self,
        }
    }

    /// All residues classified as units, in increasing order.
    pub fn units(self) -> Vec<u32> {
        (1..self.0).filter(|&v| gcd(v, self.0) == 1).collect()
    }

    /// All nonzero residues, in increasing order.
    pub fn nonzero(self) -> Vec<u32> {
        (1..self.0).collect()
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A residue class, stored reduced into [0, n).
///
/// Arithmetic between residues of different moduli is a programming error
/// and panics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Residue {
    value: u32,
    modulus: Modulus,
}

impl Residue {
    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> Modulus {
        self.modulus
    }

    pub fn classify(self) -> Classification {
        classify(self.value, self.modulus)
    }

    pub fn inverse(self) -> Option<Residue> {
        let n = self.modulus.get();
        (1..n)
            .find(|&v| mul_mod(self.value, v, n) == 1)
            .map(|v| Residue {
                value: v,
                modulus: self.modulus,
            })
    }

    #[inline]
    fn check_same(self, other: Residue) {
        assert_eq!(
            self.modulus, other.modulus,
            "mixed-modulus arithmetic: {} vs {}",
            self.modulus, other.modulus
        );
    }
}

impl Add for Residue {
    type Output = Residue;
    fn add(self, rhs: Residue) -> Residue {
        self.check_same(rhs);
        let n = self.modulus.get();
        Residue {
            value: (self.value + rhs.value) % n,
            modulus: self.modulus,
        }
    }
}

impl Sub for Residue {
    type Output = Residue;
    fn sub(self, rhs: Residue) -> Residue {
        self.check_same(rhs);
        let n = self.modulus.get();
        Residue {
            value: (self.value + n - rhs.value) % n,
            modulus: self.modulus,
        }
    }
}

impl Mul for Residue {
    type Output = Residue;
    fn mul(self, rhs: Residue) -> Residue {
        self.check_same(rhs);
        Residue {
            value: mul_mod(self.value, rhs.value, self.modulus.get()),
            modulus: self.modulus,
        }
    }
}

impl Neg for Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        let n = self.modulus.get();
        Residue {
            value: (n - self.value) % n,
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Classification {
    Zero,
    Unit,
    ZeroDivisor,
}

/// Classifies a residue as 0, a unit, or a nonzero zero divisor.
pub fn classify(value: u32, modulus: Modulus) -> Classification {
    let v = value % modulus.get();
    if v == 0 {
        Classification::Zero
    } else if gcd(v, modulus.get()) == 1 {
        Classification::Unit
    } else {
        Classification::ZeroDivisor
    }
}

#[inline]
pub fn gcd(a: u32, b: u32) -> u32 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[inline]
pub fn mul_mod(a: u32, b: u32, n: u32) -> u32 {
    ((a as u64 * b as u64) % n as u64) as u32
}

/// A parsed, modulus-independent weight-set description.
///
/// Syntax: `one | zero | all-nonzero | units | minus-one | {c1,c2,...}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WeightSetSpec {
    One,
    Zero,
    AllNonzero,
    Units,
    MinusOne,
    Explicit(Vec<i64>),
}

impl WeightSetSpec {
    pub fn parse(input: &str) -> crate::Result<Self> {
        let s = input.trim();
        match s {
            "one" => return Ok(WeightSetSpec::One),
            "zero" => return Ok(WeightSetSpec::Zero),
            "all-nonzero" => return Ok(WeightSetSpec::AllNonzero),
            "units" => return Ok(WeightSetSpec::Units),
            "minus-one" => return Ok(WeightSetSpec::MinusOne),
            _ => {}
        }
        let inner = s
            .strip_prefix('{')
            .and_then(|rest| rest.strip_suffix('}'))
            .ok_or_else(|| Error::InvalidSpec {
                spec: input.to_string(),
                reason: "expected a preset name or {c1,c2,...}".to_string(),
            })?;
        if inner.trim().is_empty() {
            return Err(Error::EmptyWeightSet);
        }
        let mut values = Vec::new();
        for part in inner.split(',') {
            let v: i64 = part.trim().parse().map_err(|_| Error::InvalidSpec {
                spec: input.to_string(),
                reason: format!("`{}` is not an integer", part.trim()),
            })?;
            values.push(v);
        }
        Ok(WeightSetSpec::Explicit(values))
    }

    pub fn resolve(&self, modulus: Modulus) -> crate::Result<WeightSet> {
        WeightSet::resolve(self.clone(), modulus)
    }

    /// Canonical textual form, used as a cache key component.
    pub fn canonical_string(&self, modulus: Modulus) -> String {
        match self {
            WeightSetSpec::One => "one".to_string(),
            WeightSetSpec::Zero => "zero".to_string(),
            WeightSetSpec::AllNonzero => "all-nonzero".to_string(),
            WeightSetSpec::Units => "units".to_string(),
            WeightSetSpec::MinusOne => "minus-one".to_string(),
            WeightSetSpec::Explicit(values) => {
                let mut members: Vec<u32> = values.iter().map(|&v| modulus.reduce(v)).collect();
                members.sort_unstable();
                members.dedup();
                let parts: Vec<String> = members.iter().map(|v| v.to_string()).collect();
                format!("{{{}}}", parts.join(","))
            }
        }
    }
}

impl fmt::Display for WeightSetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightSetSpec::One => write!(f, "one"),
            WeightSetSpec::Zero => write!(f, "zero"),
            WeightSetSpec::AllNonzero => write!(f, "all-nonzero"),
            WeightSetSpec::Units => write!(f, "units"),
            WeightSetSpec::MinusOne => write!(f, "minus-one"),
            WeightSetSpec::Explicit(values) => {
                let parts: Vec<String> = values.iter().map(|v| v.to_string()).collect();
                write!(f, "{{{}}}", parts.join(","))
            }
        }
    }
}

/// A non-empty set of coefficient weights over a fixed modulus.
///
/// Members are stored reduced, sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightSet {
    modulus: Modulus,
    members: Vec<u32>,
    spec: WeightSetSpec,
}

impl WeightSet {
    pub fn resolve(spec: WeightSetSpec, modulus: Modulus) -> crate::Result<Self> {
        let n = modulus.get();
        let members: Vec<u32> = match &spec {
            WeightSetSpec::One => vec![1],
            WeightSetSpec::Zero => vec![0],
            WeightSetSpec::AllNonzero => modulus.nonzero(),
            WeightSetSpec::Units => modulus.units(),
            WeightSetSpec::MinusOne => vec![n - 1],
            WeightSetSpec::Explicit(values) => {
                if values.is_empty() {
                    return Err(Error::EmptyWeightSet);
                }
                let mut reduced: Vec<u32> = values.iter().map(|&v| modulus.reduce(v)).collect();
                reduced.sort_unstable();
                reduced.dedup();
                reduced
            }
        };
        if members.is_empty() {
            return Err(Error::EmptyWeightSet);
        }
        Ok(WeightSet {
            modulus,
            members,
            spec,
        })
    }

    pub fn parse(input: &str, modulus: Modulus) -> crate::Result<Self> {
        WeightSetSpec::parse(input)?.resolve(modulus)
    }

    pub fn one(modulus: Modulus) -> Self {
        WeightSet::resolve(WeightSetSpec::One, modulus).expect("preset is non-empty")
    }

    pub fn zero(modulus: Modulus) -> Self {
        WeightSet::resolve(WeightSetSpec::Zero, modulus).expect("preset is non-empty")
    }

    pub fn all_nonzero(modulus: Modulus) -> Self {
        WeightSet::resolve(WeightSetSpec::AllNonzero, modulus).expect("preset is non-empty")
    }

    pub fn units(modulus: Modulus) -> Self {
        WeightSet::resolve(WeightSetSpec::Units, modulus).expect("preset is non-empty")
    }

    pub fn minus_one(modulus: Modulus) -> Self {
        WeightSet::resolve(WeightSetSpec::MinusOne, modulus).expect("preset is non-empty")
    }

    pub fn explicit(values: &[i64], modulus: Modulus) -> crate::Result<Self> {
        WeightSet::resolve(WeightSetSpec::Explicit(values.to_vec()), modulus)
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    #[inline]
    pub fn members(&self) -> &[u32] {
        &self.members
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spec(&self) -> &WeightSetSpec {
        &self.spec
    }

    #[inline]
    pub fn contains(&self, value: u32) -> bool {
        self.members.binary_search(&(value % self.modulus.get())).is_ok()
    }

    /// True when every member is a unit.
    pub fn subset_of_units(&self) -> bool {
        self.members
            .iter()
            .all(|&v| classify(v, self.modulus) == Classification::Unit)
    }

    /// True when the member set is exactly {1}.
    pub fn is_exactly_one(&self) -> bool {
        self.members == [1]
    }

    pub fn canonical_string(&self) -> String {
        self.spec.canonical_string(self.modulus)
    }
}

impl fmt::Display for WeightSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(n: u32) -> Modulus {
        Modulus::new(n).unwrap()
    }

    #[test]
    fn modulus_rejects_small() {
        assert_eq!(Modulus::new(0).unwrap_err(), Error::ModulusTooSmall(0));
        assert_eq!(Modulus::new(1).unwrap_err(), Error::ModulusTooSmall(1));
        assert!(Modulus::new(2).is_ok());
    }

    #[test]
    fn reduce_handles_negatives() {
        assert_eq!(m(5).reduce(-1), 4);
        assert_eq!(m(5).reduce(-10), 0);
        assert_eq!(m(5).reduce(12), 2);
    }

    #[test]
    fn arithmetic_wraps() {
        let n = m(7);
        assert_eq!((n.residue(5) + n.residue(4)).value(), 2);
        assert_eq!((n.residue(2) - n.residue(5)).value(), 4);
        assert_eq!((n.residue(3) * n.residue(5)).value(), 1);
        assert_eq!((-n.residue(0)).value(), 0);
        assert_eq!((-n.residue(3)).value(), 4);
    }

    #[test]
    #[should_panic(expected = "mixed-modulus")]
    fn mixed_modulus_panics() {
        let _ = m(5).residue(1) + m(7).residue(1);
    }

    #[test]
    fn classification_partitions() {
        // 12 = 2^2 * 3: units are residues coprime to 12.
        let n = m(12);
        let mut zeros = 0;
        let mut units = 0;
        let mut divisors = 0;
        for v in 0..12 {
            match classify(v, n) {
                Classification::Zero => zeros += 1,
                Classification::Unit => units += 1,
                Classification::ZeroDivisor => divisors += 1,
            }
        }
        assert_eq!((zeros, units, divisors), (1, 4, 7));
    }

    fn phi_by_factoring(n: u32) -> u32 {
        let mut result = n;
        let mut m = n;
        let mut p = 2;
        while p * p <= m {
            if m % p == 0 {
                while m % p == 0 {
                    m /= p;
                }
                result -= result / p;
            }
            p += 1;
        }
        if m > 1 {
            result -= result / m;
        }
        result
    }

    #[test]
    fn unit_count_is_euler_phi() {
        for n in 2..=12 {
            assert_eq!(
                m(n).units().len() as u32,
                phi_by_factoring(n),
                "unit count at n={n}"
            );
        }
    }

    #[test]
    fn prime_modulus_units_equal_nonzero() {
        for n in [2u32, 3, 5, 7, 11] {
            assert_eq!(m(n).units(), m(n).nonzero());
        }
        assert_ne!(m(6).units(), m(6).nonzero());
    }

    #[test]
    fn presets_resolve() {
        let n = m(6);
        assert_eq!(WeightSet::one(n).members(), &[1]);
        assert_eq!(WeightSet::zero(n).members(), &[0]);
        assert_eq!(WeightSet::all_nonzero(n).members(), &[1, 2, 3, 4, 5]);
        assert_eq!(WeightSet::units(n).members(), &[1, 5]);
        assert_eq!(WeightSet::minus_one(n).members(), &[5]);
    }

    #[test]
    fn explicit_reduces_and_dedups() {
        let n = m(5);
        let ws = WeightSet::explicit(&[-1, 4, 9, 1], n).unwrap();
        assert_eq!(ws.members(), &[1, 4]);
        assert_eq!(ws.canonical_string(), "{1,4}");
    }

    #[test]
    fn empty_explicit_rejected() {
        assert_eq!(
            WeightSet::explicit(&[], m(5)).unwrap_err(),
            Error::EmptyWeightSet
        );
        assert_eq!(
            WeightSet::parse("{}", m(5)).unwrap_err(),
            Error::EmptyWeightSet
        );
    }

    #[test]
    fn spec_parsing_round_trips() {
        for text in ["one", "zero", "all-nonzero", "units", "minus-one"] {
            let spec = WeightSetSpec::parse(text).unwrap();
            assert_eq!(spec.canonical_string(m(7)), text);
        }
        let spec = WeightSetSpec::parse("{3, -1, 3}").unwrap();
        assert_eq!(spec.canonical_string(m(7)), "{3,6}");
        assert!(WeightSetSpec::parse("bogus").is_err());
        assert!(WeightSetSpec::parse("{1,x}").is_err());
    }

    #[test]
    fn subset_of_units_detection() {
        let n = m(6);
        assert!(WeightSet::one(n).subset_of_units());
        assert!(WeightSet::units(n).subset_of_units());
        assert!(WeightSet::minus_one(n).subset_of_units());
        assert!(!WeightSet::all_nonzero(n).subset_of_units());
        assert!(!WeightSet::explicit(&[2], n).unwrap().subset_of_units());
        assert!(WeightSet::one(n).is_exactly_one());
        assert!(!WeightSet::units(n).is_exactly_one());
    }

    #[test]
    fn inverse_exists_exactly_for_units() {
        for n in 2u32..=10 {
            let nn = m(n);
            for v in 0..n {
                let inv = nn.residue(v as i64).inverse();
                match classify(v, nn) {
                    Classification::Unit => {
                        let got = inv.expect("unit must have an inverse");
                        assert_eq!(mul_mod(v, got.value(), n), 1);
                    }
                    _ => assert!(inv.is_none()),
                }
            }
        }
    }
}
