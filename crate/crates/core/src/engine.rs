//! Decision procedures for weighted zero-sum sequences.
//!
//! The predicate: S = (x_1,...,x_k) is an (A,B)-weighted zero-sum sequence
//! when there are a_i in A and b_i in B with sum(a_i x_i) = 0 (mod n) and
//! sum(b_i a_i) = 0 (mod n).  The dynamic program below walks the terms in
//! order and tracks the pair of partial sums (sum a_i x_i, sum b_i a_i);
//! state (0,0) after the last term is equivalent to the predicate because
//! each term's coefficient pair contributes independently to both sums.

use serde::{Deserialize, Serialize};

use crate::residue::{mul_mod, WeightSet};
use crate::sequence::Sequence;
use crate::Error;

/// Default cap on coefficient tuples the brute-force oracle may examine.
pub const DEFAULT_ORACLE_BUDGET: u64 = 100_000_000;

/// Positional constraint on a qualifying subsequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SubsequenceConstraint {
    /// Any non-empty subsequence.
    Any,
    /// A non-empty block of consecutive terms.
    Consecutive,
    /// A subsequence of exactly the given length (>= 1).
    ExactLength(usize),
}

impl SubsequenceConstraint {
    pub fn validate(self) -> crate::Result<Self> {
        if let SubsequenceConstraint::ExactLength(0) = self {
            return Err(Error::ZeroExactLength);
        }
        Ok(self)
    }
}

/// Evidence that a subsequence qualifies: positions (0-based, strictly
/// increasing) with their A- and B-coefficients.
///
/// `b_coeffs` may be empty as shorthand for the all-zero B-assignment; that
/// is the form returned when only the A-side condition is requested.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub indices: Vec<usize>,
    pub a_coeffs: Vec<u32>,
    pub b_coeffs: Vec<u32>,
}

/// Per-modulus transition data for a weight-set pair.
///
/// `pairs` lists (a, b, b*a) in ascending (a, b) order; `deltas_for(x)`
/// gives the deduplicated state increments for appending a term x.
pub(crate) struct PairDeltas {
    n: u32,
    pairs: Vec<(u32, u32, u32)>,
}

impl PairDeltas {
    pub(crate) fn new(a: &WeightSet, b: &WeightSet) -> Self {
        let n = a.modulus().get();
        let mut pairs = Vec::with_capacity(a.len() * b.len());
        for &av in a.members() {
            for &bv in b.members() {
                pairs.push((av, bv, mul_mod(bv, av, n)));
            }
        }
        PairDeltas { n, pairs }
    }

    #[inline]
    pub(crate) fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub(crate) fn pairs(&self) -> &[(u32, u32, u32)] {
        &self.pairs
    }

    /// Deduplicated (d_a, d_b) increments for a term x: d_a = a*x, d_b = b*a.
    pub(crate) fn deltas_for(&self, x: u32) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = self
            .pairs
            .iter()
            .map(|&(av, _, ba)| (mul_mod(av, x, self.n), ba))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

fn check_engine_inputs(s: &Sequence, a: &WeightSet, b: &WeightSet) -> crate::Result<()> {
    if a.modulus() != s.modulus() {
        return Err(Error::ModulusMismatch(s.modulus().get(), a.modulus().get()));
    }
    if b.modulus() != s.modulus() {
        return Err(Error::ModulusMismatch(s.modulus().get(), b.modulus().get()));
    }
    Ok(())
}

/// Brute-force oracle: enumerates every coefficient tuple in A^k x B^k.
///
/// Independent of the dynamic program on purpose; used to cross-check it.
/// Errors when |A|^k * |B|^k exceeds `budget`.
pub fn brute_force_is_pair_wzs(
    s: &Sequence,
    a: &WeightSet,
    b: &WeightSet,
    budget: u64,
) -> crate::Result<bool> {
    check_engine_inputs(s, a, b)?;
    if s.is_empty() {
        return Err(Error::EmptySequence);
    }
    let k = s.len() as u32;
    let needed = checked_pow(a.len() as u128, k).and_then(|x| {
        checked_pow(b.len() as u128, k).and_then(|y| x.checked_mul(y))
    });
    match needed {
        Some(total) if total <= budget as u128 => {}
        other => {
            return Err(Error::OracleBudget {
                needed: other.unwrap_or(u128::MAX),
                budget,
            })
        }
    }

    let n = s.modulus().get();
    let terms = s.terms();
    let a_members = a.members();
    let b_members = b.members();
    let k = terms.len();

    let mut a_idx = vec![0usize; k];
    loop {
        let a_sum: u32 = a_idx
            .iter()
            .zip(terms)
            .map(|(&ai, &x)| mul_mod(a_members[ai], x, n))
            .fold(0, |acc, v| (acc + v) % n);
        if a_sum == 0 {
            let mut b_idx = vec![0usize; k];
            loop {
                let b_sum: u32 = b_idx
                    .iter()
                    .zip(&a_idx)
                    .map(|(&bi, &ai)| mul_mod(b_members[bi], a_members[ai], n))
                    .fold(0, |acc, v| (acc + v) % n);
                if b_sum == 0 {
                    return Ok(true);
                }
                if !odometer_step(&mut b_idx, b_members.len()) {
                    break;
                }
            }
        }
        if !odometer_step(&mut a_idx, a_members.len()) {
            return Ok(false);
        }
    }
}

fn odometer_step(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

fn checked_pow(base: u128, exp: u32) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// Decides whether the whole sequence is an (A,B)-weighted zero-sum sequence
/// and, if so, returns a witness covering every position.
///
/// When several witnesses exist the returned one has the lexicographically
/// smallest coefficient assignment: positions are scanned left to right and
/// each takes the smallest feasible (a, b) pair, compared a first then b.
pub fn is_pair_wzs(
    s: &Sequence,
    a: &WeightSet,
    b: &WeightSet,
) -> crate::Result<Option<Witness>> {
    check_engine_inputs(s, a, b)?;
    if s.is_empty() {
        return Err(Error::EmptySequence);
    }
    let deltas = PairDeltas::new(a, b);
    Ok(full_cover_witness(s.terms(), &deltas))
}

/// A-side only variant: is S an A-weighted zero-sum sequence?
///
/// Equivalent to `is_pair_wzs` with B = {0}; the witness carries an empty
/// `b_coeffs` (shorthand for the all-zero B-assignment).
pub fn is_a_wzs(s: &Sequence, a: &WeightSet) -> crate::Result<Option<Witness>> {
    let b = WeightSet::zero(s.modulus());
    let mut witness = is_pair_wzs(s, a, &b)?;
    if let Some(w) = witness.as_mut() {
        w.b_coeffs.clear();
    }
    Ok(witness)
}

fn full_cover_witness(terms: &[u32], deltas: &PairDeltas) -> Option<Witness> {
    let n = deltas.n() as usize;
    let states = n * n;
    let k = terms.len();

    // feas[i][st]: the suffix starting at term i can move state st to (0,0).
    let mut feas = vec![vec![false; states]; k + 1];
    feas[k][0] = true;
    for i in (0..k).rev() {
        let moves = deltas.deltas_for(terms[i]);
        let (head, tail) = feas.split_at_mut(i + 1);
        let cur = &mut head[i];
        let next = &tail[0];
        for st in 0..states {
            let (sa, sb) = (st / n, st % n);
            for &(da, db) in &moves {
                let st2 = ((sa + da as usize) % n) * n + (sb + db as usize) % n;
                if next[st2] {
                    cur[st] = true;
                    break;
                }
            }
        }
    }
    if !feas[0][0] {
        return None;
    }

    let mut a_coeffs = Vec::with_capacity(k);
    let mut b_coeffs = Vec::with_capacity(k);
    let mut st = 0usize;
    for i in 0..k {
        let x = terms[i];
        let (sa, sb) = (st / n, st % n);
        let mut chosen = None;
        for &(av, bv, ba) in deltas.pairs() {
            let da = mul_mod(av, x, deltas.n()) as usize;
            let st2 = ((sa + da) % n) * n + (sb + ba as usize) % n;
            if feas[i + 1][st2] {
                chosen = Some((av, bv, st2));
                break;
            }
        }
        let (av, bv, st2) = chosen.expect("feasible state must have a move");
        a_coeffs.push(av);
        b_coeffs.push(bv);
        st = st2;
    }
    debug_assert_eq!(st, 0);
    Some(Witness {
        indices: (0..k).collect(),
        a_coeffs,
        b_coeffs,
    })
}

/// Searches for a qualifying subsequence under the given constraint.
///
/// Determinism: CONSECUTIVE scans blocks by increasing start then
/// increasing length and returns the first hit.  ANY returns a witness of
/// minimum length, breaking ties by smallest index list then smallest
/// coefficients.  EXACT_LENGTH(L) returns the smallest index list of that
/// length, then smallest coefficients.
pub fn find_wzs_subsequence(
    s: &Sequence,
    a: &WeightSet,
    b: &WeightSet,
    constraint: SubsequenceConstraint,
) -> crate::Result<Option<Witness>> {
    check_engine_inputs(s, a, b)?;
    constraint.validate()?;
    let deltas = PairDeltas::new(a, b);
    let terms = s.terms();
    match constraint {
        SubsequenceConstraint::Consecutive => {
            let k = terms.len();
            for start in 0..k {
                for len in 1..=(k - start) {
                    let block = &terms[start..start + len];
                    if let Some(mut w) = full_cover_witness(block, &deltas) {
                        for idx in w.indices.iter_mut() {
                            *idx += start;
                        }
                        return Ok(Some(w));
                    }
                }
            }
            Ok(None)
        }
        SubsequenceConstraint::ExactLength(len) => Ok(exact_length_witness(terms, &deltas, len)),
        SubsequenceConstraint::Any => {
            for len in 1..=terms.len() {
                if let Some(w) = exact_length_witness(terms, &deltas, len) {
                    return Ok(Some(w));
                }
            }
            Ok(None)
        }
    }
}

/// Witness with exactly `want` positions selected, or None.
fn exact_length_witness(terms: &[u32], deltas: &PairDeltas, want: usize) -> Option<Witness> {
    let k = terms.len();
    if want > k || want == 0 {
        return None;
    }
    let n = deltas.n() as usize;
    let states = n * n;

    // feas[i][c][st]: suffix i..k can select exactly c more terms and move
    // state st to (0,0).
    let mut feas = vec![vec![vec![false; states]; want + 1]; k + 1];
    feas[k][0][0] = true;
    for i in (0..k).rev() {
        let moves = deltas.deltas_for(terms[i]);
        let (head, tail) = feas.split_at_mut(i + 1);
        let cur = &mut head[i];
        let next = &tail[0];
        for c in 0..=want {
            for st in 0..states {
                // Skip term i.
                if next[c][st] {
                    cur[c][st] = true;
                    continue;
                }
                // Select term i with some coefficient pair.
                if c == 0 {
                    continue;
                }
                let (sa, sb) = (st / n, st % n);
                for &(da, db) in &moves {
                    let st2 = ((sa + da as usize) % n) * n + (sb + db as usize) % n;
                    if next[c - 1][st2] {
                        cur[c][st] = true;
                        break;
                    }
                }
            }
        }
    }
    if !feas[0][want][0] {
        return None;
    }

    let mut indices = Vec::with_capacity(want);
    let mut a_coeffs = Vec::with_capacity(want);
    let mut b_coeffs = Vec::with_capacity(want);
    let mut st = 0usize;
    let mut remaining = want;
    for i in 0..k {
        if remaining == 0 {
            break;
        }
        let x = terms[i];
        let (sa, sb) = (st / n, st % n);
        // Prefer selecting this position (earliest indices win), with the
        // smallest feasible coefficient pair.
        let mut chosen = None;
        for &(av, bv, ba) in deltas.pairs() {
            let da = mul_mod(av, x, deltas.n()) as usize;
            let st2 = ((sa + da) % n) * n + (sb + ba as usize) % n;
            if feas[i + 1][remaining - 1][st2] {
                chosen = Some((av, bv, st2));
                break;
            }
        }
        if let Some((av, bv, st2)) = chosen {
            indices.push(i);
            a_coeffs.push(av);
            b_coeffs.push(bv);
            st = st2;
            remaining -= 1;
        } else {
            debug_assert!(feas[i + 1][remaining][st], "skip must stay feasible");
        }
    }
    debug_assert_eq!(remaining, 0);
    debug_assert_eq!(st, 0);
    Some(Witness {
        indices,
        a_coeffs,
        b_coeffs,
    })
}

/// Checks a witness against a sequence and weight-set pair.
///
/// Returns Ok(true) when the two congruences hold, Ok(false) when they do
/// not, and an error for structural problems: indices not strictly
/// increasing or out of range, coefficient lists of the wrong length, or a
/// coefficient outside its weight set (INVALID_MEMBER).
pub fn verify_witness(
    s: &Sequence,
    a: &WeightSet,
    b: &WeightSet,
    witness: &Witness,
) -> crate::Result<bool> {
    check_engine_inputs(s, a, b)?;
    let idx = &witness.indices;
    if idx.is_empty() {
        return Err(Error::MalformedWitness(
            "witness must select at least one position".to_string(),
        ));
    }
    for window in idx.windows(2) {
        if window[0] >= window[1] {
            return Err(Error::MalformedWitness(format!(
                "indices must be strictly increasing, got {} then {}",
                window[0], window[1]
            )));
        }
    }
    if let Some(&last) = idx.last() {
        if last >= s.len() {
            return Err(Error::IndexOutOfRange {
                index: last,
                len: s.len(),
            });
        }
    }
    if witness.a_coeffs.len() != idx.len() {
        return Err(Error::MalformedWitness(format!(
            "expected {} A-coefficients, got {}",
            idx.len(),
            witness.a_coeffs.len()
        )));
    }
    let implied_zero_b = witness.b_coeffs.is_empty();
    if !implied_zero_b && witness.b_coeffs.len() != idx.len() {
        return Err(Error::MalformedWitness(format!(
            "expected {} B-coefficients (or none), got {}",
            idx.len(),
            witness.b_coeffs.len()
        )));
    }

    let n = s.modulus().get();
    for (pos, &av) in witness.a_coeffs.iter().enumerate() {
        if !a.contains(av) {
            return Err(Error::InvalidMember {
                position: pos,
                value: av,
            });
        }
    }
    if implied_zero_b {
        // Empty b_coeffs stands for the all-zero assignment, so 0 must be
        // an admissible B-weight.
        if !b.contains(0) {
            return Err(Error::InvalidMember {
                position: 0,
                value: 0,
            });
        }
    } else {
        for (pos, &bv) in witness.b_coeffs.iter().enumerate() {
            if !b.contains(bv) {
                return Err(Error::InvalidMember {
                    position: pos,
                    value: bv,
                });
            }
        }
    }

    let terms = s.terms();
    let mut a_sum = 0u32;
    let mut b_sum = 0u32;
    for (slot, &i) in idx.iter().enumerate() {
        let av = witness.a_coeffs[slot];
        a_sum = (a_sum + mul_mod(av, terms[i], n)) % n;
        if !implied_zero_b {
            b_sum = (b_sum + mul_mod(witness.b_coeffs[slot], av, n)) % n;
        }
    }
    Ok(a_sum == 0 && b_sum == 0)
}

/// Fast decision for the whole-sequence predicate (no witness).
pub(crate) fn decide_full(terms: &[u32], deltas: &PairDeltas) -> bool {
    let n = deltas.n() as usize;
    let states = n * n;
    let mut cur = vec![false; states];
    let mut next = vec![false; states];
    cur[0] = true;
    for &x in terms {
        let moves = deltas.deltas_for(x);
        next.iter_mut().for_each(|v| *v = false);
        for st in 0..states {
            if !cur[st] {
                continue;
            }
            let (sa, sb) = (st / n, st % n);
            for &(da, db) in &moves {
                next[((sa + da as usize) % n) * n + (sb + db as usize) % n] = true;
            }
        }
        std::mem::swap(&mut cur, &mut next);
    }
    cur[0]
}
