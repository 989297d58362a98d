//! Finite sequences over Z/nZ and the basic operations on them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::residue::{Modulus, Residue};
use crate::Error;

/// A finite sequence of residues with a fixed modulus.
///
/// Terms are stored reduced into [0, n).  The empty sequence is a valid
/// value (it appears as the extremal witness when a constant equals 1),
/// but asking for its weighted zero-sum status is an error.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Sequence {
    modulus: Modulus,
    terms: Vec<u32>,
}

impl Sequence {
    pub fn new(modulus: Modulus, terms: impl IntoIterator<Item = i64>) -> Self {
        let terms = terms.into_iter().map(|v| modulus.reduce(v)).collect();
        Sequence { modulus, terms }
    }

    pub(crate) fn from_reduced(modulus: Modulus, terms: Vec<u32>) -> Self {
        debug_assert!(terms.iter().all(|&t| t < modulus.get()));
        Sequence { modulus, terms }
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    #[inline]
    pub fn terms(&self) -> &[u32] {
        &self.terms
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn residue(&self, index: usize) -> Option<Residue> {
        self.terms
            .get(index)
            .map(|&v| self.modulus.residue(v as i64))
    }

    /// The translate S + x: adds x to every term.
    pub fn translate(&self, x: i64) -> Sequence {
        let shift = self.modulus.reduce(x);
        let n = self.modulus.get();
        Sequence {
            modulus: self.modulus,
            terms: self.terms.iter().map(|&t| (t + shift) % n).collect(),
        }
    }

    /// Term-by-term scaling u * S.
    pub fn scale(&self, u: i64) -> Sequence {
        let factor = self.modulus.reduce(u) as u64;
        let n = self.modulus.get() as u64;
        Sequence {
            modulus: self.modulus,
            terms: self
                .terms
                .iter()
                .map(|&t| ((t as u64 * factor) % n) as u32)
                .collect(),
        }
    }

    /// Concatenation S + T of two sequences over the same modulus.
    pub fn concat(&self, other: &Sequence) -> crate::Result<Sequence> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(
                self.modulus.get(),
                other.modulus.get(),
            ));
        }
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        Ok(Sequence {
            modulus: self.modulus,
            terms,
        })
    }

    /// Removal S - T of the terms at the given positions (0-based, strictly
    /// increasing).
    pub fn remove(&self, indices: &[usize]) -> crate::Result<Sequence> {
        for window in indices.windows(2) {
            if window[0] >= window[1] {
                return Err(Error::MalformedWitness(format!(
                    "removal indices must be strictly increasing, got {} then {}",
                    window[0], window[1]
                )));
            }
        }
        if let Some(&last) = indices.last() {
            if last >= self.terms.len() {
                return Err(Error::IndexOutOfRange {
                    index: last,
                    len: self.terms.len(),
                });
            }
        }
        let mut keep = vec![true; self.terms.len()];
        for &i in indices {
            keep[i] = false;
        }
        Ok(Sequence {
            modulus: self.modulus,
            terms: self
                .terms
                .iter()
                .zip(keep)
                .filter(|(_, k)| *k)
                .map(|(&t, _)| t)
                .collect(),
        })
    }

    /// The subsequence at the given positions (0-based, strictly increasing).
    pub fn subsequence(&self, indices: &[usize]) -> crate::Result<Sequence> {
        let mut terms = Vec::with_capacity(indices.len());
        let mut prev: Option<usize> = None;
        for &i in indices {
            if let Some(p) = prev {
                if i <= p {
                    return Err(Error::MalformedWitness(format!(
                        "indices must be strictly increasing, got {p} then {i}"
                    )));
                }
            }
            let &t = self
                .terms
                .get(i)
                .ok_or(Error::IndexOutOfRange {
                    index: i,
                    len: self.terms.len(),
                })?;
            terms.push(t);
            prev = Some(i);
        }
        Ok(Sequence {
            modulus: self.modulus,
            terms,
        })
    }

    /// A copy with terms sorted ascending (the underlying multiset).
    pub fn sorted(&self) -> Sequence {
        let mut terms = self.terms.clone();
        terms.sort_unstable();
        Sequence {
            modulus: self.modulus,
            terms,
        }
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|t| t.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}
