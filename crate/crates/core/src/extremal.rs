//! Extremal sequences grouped into symmetry classes.
//!
//! A sequence of length value-1 with no qualifying subsequence certifies
//! the lower bound of a constant.  The full set of such sequences carries a
//! lot of redundancy: scaling every term by a unit never changes
//! qualification, translating every term does not change it when B = {1},
//! and for the D and E constants neither does permuting the terms.  This
//! module enumerates the survivors and buckets them by canonical form
//! under a chosen relation.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::constants::{
    collect_avoidant_multisets, collect_avoidant_ordered, compute_constant, ConstantKind,
    ConstantOutcome, QualifyMode, SearchOptions,
};
use crate::residue::WeightSet;
use crate::sequence::Sequence;
use crate::Error;

/// How two sequences may be identified.
///
/// Scaling is always by a unit; translation adds a fixed residue to every
/// term.  The composed forms apply the translation first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SymmetryRelation {
    /// Permutation plus unit scale.
    Equivalence,
    /// Unit scale only, order preserved.
    OrderEquivalence,
    TranslateOfEquivalent,
    TranslateOfOrderEquivalent,
    TranslationOnly,
}

impl SymmetryRelation {
    pub const ALL: [SymmetryRelation; 5] = [
        SymmetryRelation::Equivalence,
        SymmetryRelation::OrderEquivalence,
        SymmetryRelation::TranslateOfEquivalent,
        SymmetryRelation::TranslateOfOrderEquivalent,
        SymmetryRelation::TranslationOnly,
    ];

    pub fn code(self) -> &'static str {
        match self {
            SymmetryRelation::Equivalence => "equivalence",
            SymmetryRelation::OrderEquivalence => "order-equivalence",
            SymmetryRelation::TranslateOfEquivalent => "translate-of-equivalent",
            SymmetryRelation::TranslateOfOrderEquivalent => "translate-of-order-equivalent",
            SymmetryRelation::TranslationOnly => "translation-only",
        }
    }

    pub fn parse(text: &str) -> crate::Result<Self> {
        SymmetryRelation::ALL
            .into_iter()
            .find(|rel| rel.code() == text)
            .ok_or_else(|| Error::InvalidSpec {
                spec: text.to_string(),
                reason: format!(
                    "symmetry relation must be one of {}",
                    SymmetryRelation::ALL
                        .map(|r| r.code())
                        .join(", ")
                ),
            })
    }

    /// Does the relation identify sequences that differ by a unit scale?
    pub fn uses_units(self) -> bool {
        !matches!(self, SymmetryRelation::TranslationOnly)
    }

    /// Does the relation identify sequences that differ by a translation?
    pub fn uses_translations(self) -> bool {
        matches!(
            self,
            SymmetryRelation::TranslateOfEquivalent
                | SymmetryRelation::TranslateOfOrderEquivalent
                | SymmetryRelation::TranslationOnly
        )
    }

    /// Does the relation identify sequences that differ by a permutation?
    pub fn uses_permutations(self) -> bool {
        matches!(
            self,
            SymmetryRelation::Equivalence | SymmetryRelation::TranslateOfEquivalent
        )
    }
}

impl std::fmt::Display for SymmetryRelation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.code())
    }
}

/// The lexicographically least sequence obtainable from `s` by the
/// relation's transforms.  Two sequences are related exactly when their
/// canonical forms coincide.
pub fn canonicalize(s: &Sequence, relation: SymmetryRelation) -> Sequence {
    let n = s.modulus();
    let units: Vec<u32> = if relation.uses_units() {
        n.units()
    } else {
        vec![1]
    };
    let shifts: u32 = if relation.uses_translations() {
        n.get()
    } else {
        1
    };
    let mut best: Option<Sequence> = None;
    for c in 0..shifts {
        let shifted = s.translate(c as i64);
        for &u in &units {
            let mut candidate = shifted.scale(u as i64);
            if relation.uses_permutations() {
                candidate = candidate.sorted();
            }
            match &best {
                Some(current) if *current <= candidate => {}
                _ => best = Some(candidate),
            }
        }
    }
    best.expect("orbit is non-empty")
}

/// True when some transform of the relation carries `s` onto `t`.
pub fn are_related(
    s: &Sequence,
    t: &Sequence,
    relation: SymmetryRelation,
) -> crate::Result<bool> {
    if s.modulus() != t.modulus() {
        return Err(Error::ModulusMismatch(
            s.modulus().get(),
            t.modulus().get(),
        ));
    }
    if s.len() != t.len() {
        return Err(Error::LengthMismatch(s.len(), t.len()));
    }
    Ok(canonicalize(s, relation) == canonicalize(t, relation))
}

/// All distinct sequences related to `s`, in lexicographic order.
pub fn orbit(s: &Sequence, relation: SymmetryRelation) -> Vec<Sequence> {
    let n = s.modulus();
    let units: Vec<u32> = if relation.uses_units() {
        n.units()
    } else {
        vec![1]
    };
    let shifts: u32 = if relation.uses_translations() {
        n.get()
    } else {
        1
    };
    let mut transforms: BTreeSet<Vec<u32>> = BTreeSet::new();
    for c in 0..shifts {
        let shifted = s.translate(c as i64);
        for &u in &units {
            let mut candidate = shifted.scale(u as i64);
            if relation.uses_permutations() {
                candidate = candidate.sorted();
            }
            transforms.insert(candidate.terms().to_vec());
        }
    }
    let mut members: BTreeSet<Vec<u32>> = BTreeSet::new();
    for base in transforms {
        if relation.uses_permutations() {
            for p in distinct_permutations(base) {
                members.insert(p);
            }
        } else {
            members.insert(base);
        }
    }
    members
        .into_iter()
        .map(|terms| Sequence::from_reduced(n, terms))
        .collect()
}

/// Every distinct reordering of `v`, starting from sorted order.
fn distinct_permutations(mut v: Vec<u32>) -> Vec<Vec<u32>> {
    v.sort_unstable();
    let mut out = vec![v.clone()];
    while next_permutation(&mut v) {
        out.push(v.clone());
    }
    out
}

fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalClass {
    pub canonical: Sequence,
    pub relation: SymmetryRelation,
    /// Number of distinct sequences in the full orbit of the canonical
    /// form under the relation.
    pub orbit_size: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalEnumeration {
    pub kind: ConstantKind,
    pub n: u32,
    pub a: String,
    pub b: String,
    pub relation: SymmetryRelation,
    /// The constant whose lower bound these sequences certify; extremal
    /// length is value - 1.
    pub value: u32,
    pub classes: Vec<ExtremalClass>,
    pub warning: Option<String>,
}

/// Enumerates every extremal sequence (length value-1, no qualifying
/// subsequence) and buckets them into classes under `relation`.
///
/// `expected_value` skips the constant computation when the value is
/// already known; pass None to compute it here.  For D and E the
/// permutation-closed relations enumerate multisets; other relations fall
/// back to ordered enumeration and set a warning, since distinguishing
/// orderings of a permutation-invariant property is usually unintended.
pub fn enumerate_extremal(
    kind: ConstantKind,
    a: &WeightSet,
    b: &WeightSet,
    relation: SymmetryRelation,
    expected_value: Option<u32>,
    options: &SearchOptions,
) -> crate::Result<ExtremalEnumeration> {
    if a.modulus() != b.modulus() {
        return Err(Error::ModulusMismatch(
            a.modulus().get(),
            b.modulus().get(),
        ));
    }
    let n = a.modulus();
    let value = match expected_value {
        Some(v) => v,
        None => match compute_constant(kind, a, b, options)? {
            ConstantOutcome::Complete(result) => result.value,
            ConstantOutcome::BudgetExhausted(partial) => {
                return Err(Error::SearchBudget {
                    what: format!(
                        "constant computation for {}-extremal enumeration at n={}",
                        kind.code(),
                        n
                    ),
                    needed: u128::MAX,
                    budget: options.budget,
                    feasible_k: partial.lower_bound.saturating_sub(1),
                });
            }
        },
    };
    let target_len = value - 1;
    let mode = QualifyMode::for_kind(kind, n);

    let multiset_path = matches!(kind, ConstantKind::D | ConstantKind::E)
        && relation.uses_permutations();
    let mut warning = None;
    let survivors: Vec<Vec<u32>> = if multiset_path {
        collect_avoidant_multisets(a, b, mode, target_len, options.budget)?
    } else {
        if matches!(kind, ConstantKind::D | ConstantKind::E) {
            warning = Some(format!(
                "{} ignores term order but relation {} distinguishes it; \
                 enumerating ordered sequences",
                kind.code(),
                relation.code()
            ));
        }
        collect_avoidant_ordered(
            a,
            b,
            mode,
            target_len,
            relation.uses_units(),
            relation.uses_translations(),
            options.budget,
        )?
    };

    let mut canonicals: BTreeSet<Vec<u32>> = BTreeSet::new();
    for terms in survivors {
        let s = Sequence::from_reduced(n, terms);
        canonicals.insert(canonicalize(&s, relation).terms().to_vec());
    }
    let classes = canonicals
        .into_iter()
        .map(|terms| {
            let canonical = Sequence::from_reduced(n, terms);
            let orbit_size = orbit(&canonical, relation).len() as u64;
            ExtremalClass {
                canonical,
                relation,
                orbit_size,
            }
        })
        .collect();
    Ok(ExtremalEnumeration {
        kind,
        n: n.get(),
        a: a.canonical_string(),
        b: b.canonical_string(),
        relation,
        value,
        classes,
        warning,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::residue::Modulus;

    fn m(n: u32) -> Modulus {
        Modulus::new(n).unwrap()
    }

    fn seq(n: u32, terms: &[i64]) -> Sequence {
        Sequence::new(m(n), terms.iter().copied())
    }

    fn sets(n: u32, a: &str, b: &str) -> (WeightSet, WeightSet) {
        (
            WeightSet::parse(a, m(n)).unwrap(),
            WeightSet::parse(b, m(n)).unwrap(),
        )
    }

    #[test]
    fn canonical_forms_match_worked_examples() {
        assert_eq!(
            canonicalize(&seq(4, &[0, 3]), SymmetryRelation::Equivalence).terms(),
            &[0, 1]
        );
        assert_eq!(
            canonicalize(&seq(5, &[2, 1, 2]), SymmetryRelation::TranslateOfOrderEquivalent)
                .terms(),
            &[0, 1, 0]
        );
        assert_eq!(
            canonicalize(&seq(7, &[4, 4, 4]), SymmetryRelation::TranslationOnly).terms(),
            &[0, 0, 0]
        );
    }

    #[test]
    fn relation_checks_match_worked_examples() {
        let a = seq(5, &[0, 1]);
        let b = seq(5, &[2, 3]);
        assert!(are_related(&a, &b, SymmetryRelation::TranslateOfEquivalent).unwrap());
        assert!(!are_related(
            &seq(3, &[0, 1, 0]),
            &seq(3, &[0, 0, 1]),
            SymmetryRelation::OrderEquivalence
        )
        .unwrap());
        assert!(are_related(
            &seq(3, &[1, 1, 0, 0]),
            &seq(3, &[2, 2, 0, 0]),
            SymmetryRelation::Equivalence
        )
        .unwrap());
    }

    #[test]
    fn related_rejects_shape_mismatch() {
        let err = are_related(
            &seq(5, &[0, 1]),
            &seq(5, &[0, 1, 2]),
            SymmetryRelation::Equivalence,
        )
        .unwrap_err();
        assert!(matches!(err, Error::LengthMismatch(2, 3)));
        let err = are_related(
            &seq(5, &[0, 1]),
            &seq(7, &[0, 1]),
            SymmetryRelation::Equivalence,
        )
        .unwrap_err();
        assert!(matches!(err, Error::ModulusMismatch(5, 7)));
    }

    #[test]
    fn canonicalize_is_idempotent_and_orbit_constant() {
        // Exhaustive over short sequences: every orbit member canonicalizes
        // to the same form, and canonical forms are fixed points.
        for len in 1..=3usize {
            let n = 4u32;
            let mut terms = vec![0u32; len];
            loop {
                let s = Sequence::from_reduced(m(n), terms.clone());
                for rel in SymmetryRelation::ALL {
                    let canon = canonicalize(&s, rel);
                    assert_eq!(canonicalize(&canon, rel), canon, "idempotence at {s}");
                    for member in orbit(&s, rel) {
                        assert_eq!(canonicalize(&member, rel), canon, "orbit constancy at {s}");
                    }
                    assert!(orbit(&s, rel).contains(&s), "orbit contains {s}");
                }
                let mut i = 0;
                loop {
                    if i == len {
                        break;
                    }
                    terms[i] += 1;
                    if terms[i] < n {
                        break;
                    }
                    terms[i] = 0;
                    i += 1;
                }
                if i == len {
                    break;
                }
            }
        }
    }

    #[test]
    fn distinct_permutations_counts() {
        assert_eq!(distinct_permutations(vec![0, 1, 2]).len(), 6);
        assert_eq!(distinct_permutations(vec![0, 0, 1, 1]).len(), 6);
        assert_eq!(distinct_permutations(vec![2, 2, 2]).len(), 1);
    }

    #[test]
    fn nonzero_weight_extremal_pairs_form_one_class() {
        let (a, b) = sets(5, "all-nonzero", "one");
        let result = enumerate_extremal(
            ConstantKind::D,
            &a,
            &b,
            SymmetryRelation::TranslateOfEquivalent,
            None,
            &SearchOptions::default(),
        )
        .unwrap();
        assert_eq!(result.value, 3);
        assert_eq!(result.classes.len(), 1);
        assert_eq!(result.classes[0].canonical.terms(), &[0, 1]);
        // All ordered pairs with distinct entries avoid; 5 * 4 of them.
        assert_eq!(result.classes[0].orbit_size, 20);
        assert!(result.warning.is_none());
    }

    #[test]
    fn exact_length_extremal_class_mod3() {
        let (a, b) = sets(3, "all-nonzero", "one");
        let result = enumerate_extremal(
            ConstantKind::E,
            &a,
            &b,
            SymmetryRelation::TranslateOfEquivalent,
            None,
            &SearchOptions::default(),
        )
        .unwrap();
        assert_eq!(result.value, 5);
        assert_eq!(result.classes.len(), 1);
        assert_eq!(result.classes[0].canonical.terms(), &[0, 0, 1, 1]);
    }

    #[test]
    fn consecutive_extremal_translation_classes_mod2() {
        let (a, b) = sets(2, "one", "one");
        let result = enumerate_extremal(
            ConstantKind::C,
            &a,
            &b,
            SymmetryRelation::TranslationOnly,
            None,
            &SearchOptions::default(),
        )
        .unwrap();
        assert_eq!(result.value, 4);
        assert_eq!(result.classes.len(), 1);
        let class = &result.classes[0];
        assert_eq!(class.canonical.terms(), &[0, 1, 0]);
        let members = orbit(&class.canonical, SymmetryRelation::TranslationOnly);
        let term_lists: Vec<&[u32]> = members.iter().map(|s| s.terms()).collect();
        assert_eq!(term_lists, vec![&[0, 1, 0][..], &[1, 0, 1][..]]);
    }

    #[test]
    fn consecutive_extremal_mod3_contains_known_sequences() {
        let (a, b) = sets(3, "one", "one");
        let result = enumerate_extremal(
            ConstantKind::C,
            &a,
            &b,
            SymmetryRelation::TranslateOfOrderEquivalent,
            Some(9),
            &SearchOptions::default(),
        )
        .unwrap();
        let canonicals: Vec<&[u32]> = result
            .classes
            .iter()
            .map(|c| c.canonical.terms())
            .collect();
        for known in [
            &[0, 1, 0, 0, 2, 2, 0, 0][..],
            &[0, 1, 0, 0, 1, 0, 0, 1][..],
        ] {
            let s = Sequence::from_reduced(m(3), known.to_vec());
            let canon = canonicalize(&s, SymmetryRelation::TranslateOfOrderEquivalent);
            assert!(
                canonicals.contains(&canon.terms()),
                "{s} missing from classes"
            );
        }
    }

    #[test]
    fn ordered_enumeration_for_any_kind_warns() {
        let (a, b) = sets(4, "all-nonzero", "one");
        let result = enumerate_extremal(
            ConstantKind::D,
            &a,
            &b,
            SymmetryRelation::TranslationOnly,
            None,
            &SearchOptions::default(),
        )
        .unwrap();
        assert!(result.warning.is_some());
        // Avoidant pairs mod 4 are exactly those with odd difference: the
        // zero-divisor weight 2 makes even-difference pairs qualify via
        // coefficients (2,2).  Translation classes are keyed by the
        // difference, so there are two classes of four translates each.
        assert_eq!(result.classes.len(), 2);
        let total: u64 = result.classes.iter().map(|c| c.orbit_size).sum();
        assert_eq!(total, 8);
    }

    #[test]
    fn orbit_sizes_sum_to_survivor_count() {
        // Cross-check the class decomposition against a direct scan of all
        // ordered pairs.
        let (a, b) = sets(5, "all-nonzero", "one");
        let mut avoidant = 0u64;
        for x in 0..5i64 {
            for y in 0..5i64 {
                let s = seq(5, &[x, y]);
                if crate::constants::constant_lower_bound_check(ConstantKind::D, &a, &b, &s)
                    .unwrap()
                {
                    avoidant += 1;
                }
            }
        }
        let result = enumerate_extremal(
            ConstantKind::D,
            &a,
            &b,
            SymmetryRelation::TranslateOfEquivalent,
            Some(3),
            &SearchOptions::default(),
        )
        .unwrap();
        let total: u64 = result.classes.iter().map(|c| c.orbit_size).sum();
        assert_eq!(total, avoidant);
    }
}
