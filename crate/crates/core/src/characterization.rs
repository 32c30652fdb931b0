//! Existence and uniqueness of idempotent nullnorms when exactly two
//! elements are incomparable with the zero element, plus the exhaustive
//! enumeration oracle that everything here is checked against.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::axioms::{passes_all, OpTable};
use crate::constructions::{build_skeleton, ConstructionError, IaPair, PairTerms, PartialOpTable};
use crate::lattice::{ElementId, Lattice, ZeroPoint};

/// Largest `|I_a|` the lemma-restricted oracle accepts.
pub const LEMMA_SEARCH_MAX_IA: usize = 4;
/// Largest `|I_a|` the unrestricted oracle accepts.
pub const FULL_SEARCH_MAX_IA: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharacterizationError {
    #[error("expected exactly two elements incomparable with the zero element, found {0}")]
    WrongIaSize(usize),
    #[error("search space too large: |I_a| = {ia} exceeds {limit} for {mode} search ({bound} candidate tables)")]
    SearchSpaceTooLarge {
        ia: usize,
        limit: usize,
        mode: SearchSpace,
        bound: u128,
    },
    #[error("not applicable: {0}")]
    NotApplicable(String),
}

impl From<ConstructionError> for CharacterizationError {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::WrongIaSize(k) => CharacterizationError::WrongIaSize(k),
            other => CharacterizationError::NotApplicable(other.to_string()),
        }
    }
}

/// One of the four existence conditions, evaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub holds: bool,
    /// The condition with every term evaluated, e.g. `(p∧a)∨(q∧a) = z ≠ a`.
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExistenceVerdict {
    pub exists: bool,
    /// Conditions (i) through (iv), in order.
    pub conditions: [Condition; 4],
    pub p_label: String,
    pub q_label: String,
}

impl ExistenceVerdict {
    /// Roman numerals of the conditions that hold.
    pub fn holding(&self) -> Vec<&'static str> {
        const NAMES: [&str; 4] = ["i", "ii", "iii", "iv"];
        self.conditions
            .iter()
            .zip(NAMES)
            .filter(|(c, _)| c.holds)
            .map(|(_, n)| n)
            .collect()
    }
}

/// Decides whether an idempotent nullnorm with zero element `a` exists when
/// `I_a = {p, q}`: it does iff one of
///
/// 1. `(p∧a)∨(q∧a) = a`
/// 2. `(p∨a)∧(q∨a) = a`
/// 3. `p∨a ≤ q∨a` and `q∧a ≤ p∧a`
/// 4. `p∧a ≤ q∧a` and `q∨a ≤ p∨a`
///
/// holds. Conditions 3 and 4 are mirror images under swapping `p` and `q`,
/// so evaluating both on the canonical roles covers both labelings.
pub fn decide_existence(lattice: &Lattice, a: ZeroPoint) -> Result<ExistenceVerdict, CharacterizationError> {
    let pair = IaPair::of(lattice, a)?;
    let t = PairTerms::new(lattice, a, pair);
    let s = |e: ElementId| lattice.label(e);
    let (p, q, av) = (s(pair.p), s(pair.q), s(a.id()));

    let eq_a = |lhs: String, v: ElementId| Condition {
        holds: v == a.id(),
        detail: format!("{lhs} = {} {} {av}", s(v), if v == a.id() { "=" } else { "≠" }),
    };
    let leq = |lname: String, l: ElementId, rname: String, r: ElementId| {
        let holds = lattice.leq(l, r);
        (
            holds,
            format!("{lname} = {} {} {} = {rname}", s(l), if holds { "≤" } else { "≰" }, s(r)),
        )
    };
    let both = |(h1, d1): (bool, String), (h2, d2): (bool, String)| Condition {
        holds: h1 && h2,
        detail: format!("{d1} and {d2}"),
    };

    let conditions = [
        eq_a(format!("({p}∧{av})∨({q}∧{av})"), t.lower_join(lattice)),
        eq_a(format!("({p}∨{av})∧({q}∨{av})"), t.upper_meet(lattice)),
        both(
            leq(format!("{p}∨{av}"), t.p_join_a, format!("{q}∨{av}"), t.q_join_a),
            leq(format!("{q}∧{av}"), t.q_meet_a, format!("{p}∧{av}"), t.p_meet_a),
        ),
        both(
            leq(format!("{p}∧{av}"), t.p_meet_a, format!("{q}∧{av}"), t.q_meet_a),
            leq(format!("{q}∨{av}"), t.q_join_a, format!("{p}∨{av}"), t.p_join_a),
        ),
    ];
    Ok(ExistenceVerdict {
        exists: conditions.iter().any(|c| c.holds),
        conditions,
        p_label: p.to_string(),
        q_label: q.to_string(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UniquenessKind {
    /// Exactly one idempotent nullnorm, the one filling `(p, q)` with `p`.
    UniqueV3,
    /// Exactly one idempotent nullnorm, the one filling `(p, q)` with `q`.
    UniqueV4,
    /// Exactly two: `V3` and `V4`.
    ExactlyTwo,
    /// No count is certified.
    Other,
}

impl fmt::Display for UniquenessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UniquenessKind::UniqueV3 => "unique_v3",
            UniquenessKind::UniqueV4 => "unique_v4",
            UniquenessKind::ExactlyTwo => "exactly_two",
            UniquenessKind::Other => "other",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UniquenessClass {
    pub kind: UniquenessKind,
    /// Set only when the classification itself certifies a count; never
    /// taken from the enumeration oracle.
    pub certified_count: Option<usize>,
}

/// `(p∨a < q∨a and q∧a ≤ p∧a) or (p∨a ≤ q∨a and q∧a < p∧a)`: the pattern
/// under which the `p`-filled table is the only idempotent nullnorm.
fn p_dominates(lattice: &Lattice, t: &PairTerms) -> bool {
    (lattice.lt(t.p_join_a, t.q_join_a) && lattice.leq(t.q_meet_a, t.p_meet_a))
        || (lattice.leq(t.p_join_a, t.q_join_a) && lattice.lt(t.q_meet_a, t.p_meet_a))
}

/// Classifies how many idempotent nullnorms exist, from the order data of
/// `p` and `q` alone. Both labelings of `{p, q}` are considered; the result
/// is reported in canonical roles.
pub fn classify_uniqueness(lattice: &Lattice, a: ZeroPoint) -> Result<UniquenessClass, CharacterizationError> {
    let pair = IaPair::of(lattice, a)?;
    let t = PairTerms::new(lattice, a, pair);
    let swapped = PairTerms::new(lattice, a, pair.swapped());
    let kind = if p_dominates(lattice, &t) {
        UniquenessKind::UniqueV3
    } else if p_dominates(lattice, &swapped) {
        UniquenessKind::UniqueV4
    } else if t.p_join_a == t.q_join_a && t.p_meet_a == t.q_meet_a {
        UniquenessKind::ExactlyTwo
    } else {
        UniquenessKind::Other
    };
    let certified_count = match kind {
        UniquenessKind::UniqueV3 | UniquenessKind::UniqueV4 => Some(1),
        UniquenessKind::ExactlyTwo => Some(2),
        UniquenessKind::Other => None,
    };
    Ok(UniquenessClass { kind, certified_count })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum SearchSpace {
    /// Each open cell ranges over `{(x∧a)∨(y∧a), (x∨a)∧(y∨a)} ∪ I_a`.
    #[default]
    LemmaRestricted,
    /// Each open cell ranges over the whole lattice.
    Full,
}

impl fmt::Display for SearchSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchSpace::LemmaRestricted => "lemma",
            SearchSpace::Full => "full",
        })
    }
}

impl FromStr for SearchSpace {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lemma" | "lemma_restricted" => Ok(SearchSpace::LemmaRestricted),
            "full" => Ok(SearchSpace::Full),
            _ => Err(format!("unknown search space `{s}` (expected lemma or full)")),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    #[default]
    Serial,
    Parallel,
}

/// Skeleton plus candidate values for each unordered pair of open cells.
struct CandidateSpace<'l> {
    skeleton: PartialOpTable<'l>,
    pairs: Vec<(ElementId, ElementId)>,
    values: Vec<Vec<ElementId>>,
}

impl<'l> CandidateSpace<'l> {
    fn new(lattice: &'l Lattice, a: ZeroPoint, space: SearchSpace) -> Result<Self, CharacterizationError> {
        let ia = lattice.incomparables(a);
        let skeleton = build_skeleton(lattice, a);
        let pairs: Vec<_> = skeleton
            .undetermined()
            .into_iter()
            .filter(|(x, y)| x < y)
            .collect();
        let values: Vec<Vec<ElementId>> = pairs
            .iter()
            .map(|&(x, y)| match space {
                SearchSpace::Full => lattice.elements().collect(),
                SearchSpace::LemmaRestricted => {
                    let av = a.id();
                    let lower = lattice.join(lattice.meet(x, av), lattice.meet(y, av));
                    let upper = lattice.meet(lattice.join(x, av), lattice.join(y, av));
                    let mut v = vec![lower, upper];
                    v.extend(&ia);
                    v.sort_unstable();
                    v.dedup();
                    v
                }
            })
            .collect();
        let limit = match space {
            SearchSpace::LemmaRestricted => LEMMA_SEARCH_MAX_IA,
            SearchSpace::Full => FULL_SEARCH_MAX_IA,
        };
        let cs = CandidateSpace { skeleton, pairs, values };
        if ia.len() > limit {
            return Err(CharacterizationError::SearchSpaceTooLarge {
                ia: ia.len(),
                limit,
                mode: space,
                bound: cs.size(),
            });
        }
        Ok(cs)
    }

    fn size(&self) -> u128 {
        self.values
            .iter()
            .map(|v| v.len() as u128)
            .try_fold(1u128, |acc, k| acc.checked_mul(k))
            .unwrap_or(u128::MAX)
    }

    fn table(&self, choice: &[usize]) -> OpTable<'l> {
        let mut t = self.skeleton.complete_with(|_, _| ElementId::new(0));
        for (i, &(x, y)) in self.pairs.iter().enumerate() {
            let v = self.values[i][choice[i]];
            t.set(x, y, v);
            t.set(y, x, v);
        }
        t
    }

    /// Visits every completion whose first pair takes candidate `first`
    /// (or every completion when `first` is `None`), last pair fastest.
    fn for_each(&self, first: Option<usize>, mut f: impl FnMut(OpTable<'l>)) {
        let m = self.pairs.len();
        let mut choice = vec![0; m];
        let fixed = match first {
            Some(c) if m > 0 => {
                choice[0] = c;
                1
            }
            _ => 0,
        };
        loop {
            f(self.table(&choice));
            let mut pos = m;
            loop {
                if pos == fixed {
                    return;
                }
                pos -= 1;
                choice[pos] += 1;
                if choice[pos] < self.values[pos].len() {
                    break;
                }
                choice[pos] = 0;
            }
        }
    }
}

fn sort_tables(tables: &mut [OpTable<'_>]) {
    tables.sort_by(|x, y| x.cells().cmp(y.cells()));
}

/// Every symmetric completion of the skeleton in the given search space,
/// whether or not it is a nullnorm.
pub fn candidate_completions(
    lattice: &Lattice,
    a: ZeroPoint,
    space: SearchSpace,
) -> Result<Vec<OpTable<'_>>, CharacterizationError> {
    let cs = CandidateSpace::new(lattice, a, space)?;
    let mut out = Vec::new();
    cs.for_each(None, |t| out.push(t));
    Ok(out)
}

/// All idempotent nullnorms with zero element `a`, found by exhaustive search
/// over symmetric completions of the skeleton and sorted by their flattened
/// cells.
pub fn enumerate_idempotent_nullnorms(
    lattice: &Lattice,
    a: ZeroPoint,
    space: SearchSpace,
) -> Result<Vec<OpTable<'_>>, CharacterizationError> {
    enumerate_idempotent_nullnorms_with(lattice, a, space, Execution::Serial)
}

/// [`enumerate_idempotent_nullnorms`] with a choice of execution. Parallel
/// runs split on the first open pair and merge before sorting, so both modes
/// return identical lists.
pub fn enumerate_idempotent_nullnorms_with(
    lattice: &Lattice,
    a: ZeroPoint,
    space: SearchSpace,
    execution: Execution,
) -> Result<Vec<OpTable<'_>>, CharacterizationError> {
    let cs = CandidateSpace::new(lattice, a, space)?;
    let mut found = match execution {
        Execution::Parallel if !cs.pairs.is_empty() => (0..cs.values[0].len())
            .into_par_iter()
            .map(|first| {
                let mut local = Vec::new();
                cs.for_each(Some(first), |t| {
                    if passes_all(&t, a) {
                        local.push(t);
                    }
                });
                local
            })
            .reduce(Vec::new, |mut acc, mut part| {
                acc.append(&mut part);
                acc
            }),
        _ => {
            let mut local = Vec::new();
            cs.for_each(None, |t| {
                if passes_all(&t, a) {
                    local.push(t);
                }
            });
            local
        }
    };
    sort_tables(&mut found);
    Ok(found)
}

/// For every enumerated idempotent nullnorm and every `x, y ∈ I_a` with
/// `(x∧a)∨(y∧a) < a` and `(x∨a)∧(y∨a) > a`, checks that `V(x, y) ∈ I_a`.
pub fn check_ia_lemma(lattice: &Lattice, a: ZeroPoint) -> Result<bool, CharacterizationError> {
    let ia = lattice.incomparables(a);
    if ia.len() < 2 {
        return Err(CharacterizationError::NotApplicable(format!(
            "|I_a| = {} is below 2",
            ia.len()
        )));
    }
    let av = a.id();
    let hypothesis_pairs: Vec<_> = ia
        .iter()
        .flat_map(|&x| ia.iter().map(move |&y| (x, y)))
        .filter(|&(x, y)| {
            let lower = lattice.join(lattice.meet(x, av), lattice.meet(y, av));
            let upper = lattice.meet(lattice.join(x, av), lattice.join(y, av));
            lattice.lt(lower, av) && lattice.lt(av, upper)
        })
        .collect();
    let tables = enumerate_idempotent_nullnorms(lattice, a, SearchSpace::LemmaRestricted)?;
    Ok(tables.iter().all(|t| {
        hypothesis_pairs
            .iter()
            .all(|&(x, y)| ia.contains(&t.get(x, y)))
    }))
}

/// For comparable `p, q` spanning `I_a`: `p∧a = q∧a` or `p∨a = q∨a`.
pub fn check_comparable_corollary(lattice: &Lattice, a: ZeroPoint) -> Result<bool, CharacterizationError> {
    let pair = IaPair::of(lattice, a)?;
    if !lattice.comparable(pair.p, pair.q) {
        return Err(CharacterizationError::NotApplicable(format!(
            "{} ∥ {}",
            lattice.label(pair.p),
            lattice.label(pair.q)
        )));
    }
    let t = PairTerms::new(lattice, a, pair);
    Ok(t.p_meet_a == t.q_meet_a || t.p_join_a == t.q_join_a)
}

/// For comparable `p, q ∈ I_a` with `p∧a = q∧a` and `p∨a = q∨a`, checks
/// `(p∧a)∨(q∧a)∨(p∧q) = p∧q` and `(p∨a)∧(q∨a)∧(p∨q) = p∨q`.
pub fn check_pro_special(
    lattice: &Lattice,
    a: ZeroPoint,
    p: ElementId,
    q: ElementId,
) -> Result<bool, CharacterizationError> {
    let s = |e: ElementId| lattice.label(e);
    let av = a.id();
    for x in [p, q] {
        if lattice.comparable(x, av) {
            return Err(CharacterizationError::NotApplicable(format!(
                "{} is comparable with {}",
                s(x),
                s(av)
            )));
        }
    }
    if !lattice.comparable(p, q) {
        return Err(CharacterizationError::NotApplicable(format!("{} ∥ {}", s(p), s(q))));
    }
    let t = PairTerms::new(lattice, a, IaPair { p, q });
    if t.p_meet_a != t.q_meet_a {
        return Err(CharacterizationError::NotApplicable(format!(
            "{p}∧{a} = {} ≠ {} = {q}∧{a}",
            s(t.p_meet_a),
            s(t.q_meet_a),
            p = s(p),
            q = s(q),
            a = s(av)
        )));
    }
    if t.p_join_a != t.q_join_a {
        return Err(CharacterizationError::NotApplicable(format!(
            "{p}∨{a} = {} ≠ {} = {q}∨{a}",
            s(t.p_join_a),
            s(t.q_join_a),
            p = s(p),
            q = s(q),
            a = s(av)
        )));
    }
    let pq_meet = lattice.meet(p, q);
    let pq_join = lattice.join(p, q);
    let lower = lattice.join(t.lower_join(lattice), pq_meet);
    let upper = lattice.meet(t.upper_meet(lattice), pq_join);
    Ok(lower == pq_meet && upper == pq_join)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::CoverSpec;

    fn m3() -> Lattice {
        let names = ["0", "p", "a", "q", "1"];
        let covers = [("0", "p"), ("0", "a"), ("0", "q"), ("p", "1"), ("a", "1"), ("q", "1")];
        Lattice::from_covers(&CoverSpec {
            names: names.iter().map(|s| s.to_string()).collect(),
            covers: covers
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
            bottom: "0".into(),
            top: "1".into(),
        })
        .unwrap()
    }

    #[test]
    fn m3_verdict_details() {
        let l = m3();
        let a = ZeroPoint::from_label(&l, "a").unwrap();
        let v = decide_existence(&l, a).unwrap();
        assert!(v.exists);
        assert_eq!(v.holding(), vec!["iii", "iv"]);
        assert_eq!(v.conditions[0].detail, "(p∧a)∨(q∧a) = 0 ≠ a");
        assert_eq!(v.conditions[1].detail, "(p∨a)∧(q∨a) = 1 ≠ a");
        assert_eq!(v.p_label, "p");
    }

    #[test]
    fn parallel_matches_serial() {
        let l = m3();
        let a = ZeroPoint::from_label(&l, "a").unwrap();
        for space in [SearchSpace::LemmaRestricted, SearchSpace::Full] {
            let s = enumerate_idempotent_nullnorms_with(&l, a, space, Execution::Serial).unwrap();
            let p = enumerate_idempotent_nullnorms_with(&l, a, space, Execution::Parallel).unwrap();
            assert_eq!(s, p);
            assert_eq!(s.len(), 2);
        }
    }

    #[test]
    fn candidate_counts() {
        let l = m3();
        let a = ZeroPoint::from_label(&l, "a").unwrap();
        // lemma candidates for (p, q): {0, 1, p, q}
        assert_eq!(candidate_completions(&l, a, SearchSpace::LemmaRestricted).unwrap().len(), 4);
        assert_eq!(candidate_completions(&l, a, SearchSpace::Full).unwrap().len(), 5);
    }

    #[test]
    fn search_space_names() {
        assert_eq!("lemma".parse::<SearchSpace>().unwrap(), SearchSpace::LemmaRestricted);
        assert_eq!("full".parse::<SearchSpace>().unwrap(), SearchSpace::Full);
        assert!("fast".parse::<SearchSpace>().is_err());
    }

    #[test]
    fn comparable_corollary_needs_comparable_pair() {
        let l = m3();
        let a = ZeroPoint::from_label(&l, "a").unwrap();
        assert!(matches!(
            check_comparable_corollary(&l, a),
            Err(CharacterizationError::NotApplicable(_))
        ));
        let (p, q) = (l.id("p").unwrap(), l.id("q").unwrap());
        assert!(matches!(
            check_pro_special(&l, a, p, q),
            Err(CharacterizationError::NotApplicable(_))
        ));
    }
}
