//! The table skeleton shared by every idempotent nullnorm, and the six
//! explicit completions `V1`..`V6` for the case of exactly two elements
//! incomparable with the zero element.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::axioms::OpTable;
use crate::lattice::{ElementId, Lattice, ZeroPoint};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("expected exactly two elements incomparable with the zero element, found {0}")]
    WrongIaSize(usize),
    #[error("{variant} precondition fails: {condition}")]
    PreconditionFailed { variant: Variant, condition: String },
}

/// The two elements incomparable with `a`, in canonical roles: `p` has the
/// smaller element id.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IaPair {
    pub p: ElementId,
    pub q: ElementId,
}

impl IaPair {
    pub fn of(lattice: &Lattice, a: ZeroPoint) -> Result<Self, ConstructionError> {
        match lattice.incomparables(a)[..] {
            [p, q] => Ok(IaPair { p, q }),
            ref other => Err(ConstructionError::WrongIaSize(other.len())),
        }
    }

    pub fn swapped(self) -> Self {
        IaPair { p: self.q, q: self.p }
    }
}

/// Meets and joins of `p` and `q` with `a`; every condition on the pair is
/// phrased in these four terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairTerms {
    pub p_meet_a: ElementId,
    pub q_meet_a: ElementId,
    pub p_join_a: ElementId,
    pub q_join_a: ElementId,
}

impl PairTerms {
    pub fn new(lattice: &Lattice, a: ZeroPoint, pair: IaPair) -> Self {
        let a = a.id();
        PairTerms {
            p_meet_a: lattice.meet(pair.p, a),
            q_meet_a: lattice.meet(pair.q, a),
            p_join_a: lattice.join(pair.p, a),
            q_join_a: lattice.join(pair.q, a),
        }
    }

    /// `(p∧a) ∨ (q∧a)`.
    pub fn lower_join(&self, lattice: &Lattice) -> ElementId {
        lattice.join(self.p_meet_a, self.q_meet_a)
    }

    /// `(p∨a) ∧ (q∨a)`.
    pub fn upper_meet(&self, lattice: &Lattice) -> ElementId {
        lattice.meet(self.p_join_a, self.q_join_a)
    }
}

/// A table whose off-diagonal cells on `I_a × I_a` are left open.
#[derive(Clone, PartialEq, Eq)]
pub struct PartialOpTable<'l> {
    lattice: &'l Lattice,
    a: ZeroPoint,
    cells: Vec<Option<ElementId>>,
}

impl fmt::Debug for PartialOpTable<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = self.lattice;
        let rows: Vec<Vec<&str>> = l
            .elements()
            .map(|x| {
                l.elements()
                    .map(|y| self.get(x, y).map_or("?", |v| l.label(v)))
                    .collect()
            })
            .collect();
        f.debug_struct("PartialOpTable").field("rows", &rows).finish()
    }
}

impl<'l> PartialOpTable<'l> {
    pub fn lattice(&self) -> &'l Lattice {
        self.lattice
    }

    pub fn zero(&self) -> ZeroPoint {
        self.a
    }

    #[inline]
    pub fn get(&self, x: ElementId, y: ElementId) -> Option<ElementId> {
        self.cells[x.index() * self.lattice.len() + y.index()]
    }

    /// Open cells in row-major order.
    pub fn undetermined(&self) -> Vec<(ElementId, ElementId)> {
        let l = self.lattice;
        l.elements()
            .flat_map(|x| l.elements().map(move |y| (x, y)))
            .filter(|&(x, y)| self.get(x, y).is_none())
            .collect()
    }

    pub fn is_complete(&self) -> bool {
        self.cells.iter().all(Option::is_some)
    }

    /// Completes the table with `fill` on the open cells.
    pub fn complete_with(&self, mut fill: impl FnMut(ElementId, ElementId) -> ElementId) -> OpTable<'l> {
        OpTable::from_fn(self.lattice, |x, y| self.get(x, y).unwrap_or_else(|| fill(x, y)))
    }

    /// True iff every determined cell agrees with `table`.
    pub fn agrees_with(&self, table: &OpTable<'_>) -> bool {
        let l = self.lattice;
        l.elements().all(|x| {
            l.elements()
                .all(|y| self.get(x, y).is_none_or(|v| v == table.get(x, y)))
        })
    }
}

/// The value forced on cell `(x, y)` of any idempotent nullnorm with zero
/// element `a`, or `None` for two distinct elements of `I_a`.
fn forced_cell(l: &Lattice, a: ElementId, x: ElementId, y: ElementId) -> Option<ElementId> {
    let below = |e| l.leq(e, a);
    let above = |e| l.leq(a, e);
    let v = if below(x) && below(y) {
        l.join(x, y)
    } else if above(x) && above(y) {
        l.meet(x, y)
    } else if (below(x) && above(y)) || (above(x) && below(y)) {
        a
    } else if below(x) {
        l.join(x, l.meet(y, a))
    } else if below(y) {
        l.join(y, l.meet(x, a))
    } else if above(x) {
        l.meet(x, l.join(y, a))
    } else if above(y) {
        l.meet(y, l.join(x, a))
    } else if x == y {
        x
    } else {
        return None;
    };
    Some(v)
}

/// Everything an idempotent nullnorm with zero element `a` is forced to be:
/// join on `[0,a]²`, meet on `[a,1]²`, `a` on the mixed blocks,
/// `x∨(y∧a)` / `x∧(y∨a)` against `I_a`, and the identity on the diagonal
/// of `I_a`.
pub fn build_skeleton(lattice: &Lattice, a: ZeroPoint) -> PartialOpTable<'_> {
    let mut cells = Vec::with_capacity(lattice.len() * lattice.len());
    for x in lattice.elements() {
        for y in lattice.elements() {
            cells.push(forced_cell(lattice, a.id(), x, y));
        }
    }
    PartialOpTable { lattice, a, cells }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    V1,
    V2,
    V3,
    V4,
    V5,
    V6,
}

impl Variant {
    pub const ALL: [Variant; 6] = [
        Variant::V1,
        Variant::V2,
        Variant::V3,
        Variant::V4,
        Variant::V5,
        Variant::V6,
    ];

    /// Value of the `(p, q)` and `(q, p)` cells.
    pub fn fill(self, lattice: &Lattice, a: ZeroPoint, pair: IaPair) -> ElementId {
        let t = PairTerms::new(lattice, a, pair);
        match self {
            Variant::V1 => t.upper_meet(lattice),
            Variant::V2 => t.lower_join(lattice),
            Variant::V3 => pair.p,
            Variant::V4 => pair.q,
            Variant::V5 => lattice.join(pair.p, pair.q),
            Variant::V6 => lattice.meet(pair.p, pair.q),
        }
    }

    /// `Ok` when the variant's precondition holds, otherwise the failing
    /// condition with every term evaluated.
    pub fn precondition(self, lattice: &Lattice, a: ZeroPoint, pair: IaPair) -> Result<(), String> {
        let t = PairTerms::new(lattice, a, pair);
        let s = |e: ElementId| lattice.label(e);
        let (p, q, av) = (s(pair.p), s(pair.q), s(a.id()));
        let leq_term = |lhs_name: String, lhs: ElementId, rhs_name: String, rhs: ElementId| {
            (!lattice.leq(lhs, rhs))
                .then(|| format!("{lhs_name} = {} ≰ {} = {rhs_name}", s(lhs), s(rhs)))
        };
        let eq_term = |lhs_name: String, lhs: ElementId, rhs_name: String, rhs: ElementId| {
            (lhs != rhs).then(|| format!("{lhs_name} = {} ≠ {} = {rhs_name}", s(lhs), s(rhs)))
        };
        let incomparable = || {
            (!lattice.comparable(pair.p, pair.q)).then(|| format!("{p} ∥ {q}"))
        };
        let failures: Vec<String> = match self {
            Variant::V1 => {
                let v = t.lower_join(lattice);
                (v != a.id())
                    .then(|| format!("({p}∧{av})∨({q}∧{av}) = {} ≠ {av}", s(v)))
                    .into_iter()
                    .collect()
            }
            Variant::V2 => {
                let v = t.upper_meet(lattice);
                (v != a.id())
                    .then(|| format!("({p}∨{av})∧({q}∨{av}) = {} ≠ {av}", s(v)))
                    .into_iter()
                    .collect()
            }
            Variant::V3 => [
                leq_term(format!("{p}∨{av}"), t.p_join_a, format!("{q}∨{av}"), t.q_join_a),
                leq_term(format!("{q}∧{av}"), t.q_meet_a, format!("{p}∧{av}"), t.p_meet_a),
            ]
            .into_iter()
            .flatten()
            .collect(),
            Variant::V4 => [
                leq_term(format!("{p}∧{av}"), t.p_meet_a, format!("{q}∧{av}"), t.q_meet_a),
                leq_term(format!("{q}∨{av}"), t.q_join_a, format!("{p}∨{av}"), t.p_join_a),
            ]
            .into_iter()
            .flatten()
            .collect(),
            Variant::V5 => incomparable()
                .or_else(|| eq_term(format!("{p}∨{av}"), t.p_join_a, format!("{q}∨{av}"), t.q_join_a))
                .into_iter()
                .collect(),
            Variant::V6 => incomparable()
                .or_else(|| eq_term(format!("{p}∧{av}"), t.p_meet_a, format!("{q}∧{av}"), t.q_meet_a))
                .into_iter()
                .collect(),
        };
        if failures.is_empty() {
            Ok(())
        } else {
            Err(failures.join("; "))
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = Variant::ALL.iter().position(|v| v == self).unwrap() + 1;
        write!(f, "V{i}")
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Variant::ALL
            .into_iter()
            .find(|v| v.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown variant `{s}` (expected v1..v6)"))
    }
}

/// The skeleton completed with the variant's fill, without checking the
/// precondition. The diagonal of `I_a` stays the identity for every variant.
pub fn fill_variant(lattice: &Lattice, a: ZeroPoint, variant: Variant) -> Result<OpTable<'_>, ConstructionError> {
    let pair = IaPair::of(lattice, a)?;
    let value = variant.fill(lattice, a, pair);
    Ok(build_skeleton(lattice, a).complete_with(|_, _| value))
}

/// Materializes `variant` after checking its precondition.
pub fn construct_variant(lattice: &Lattice, a: ZeroPoint, variant: Variant) -> Result<OpTable<'_>, ConstructionError> {
    let pair = IaPair::of(lattice, a)?;
    variant
        .precondition(lattice, a, pair)
        .map_err(|condition| ConstructionError::PreconditionFailed { variant, condition })?;
    fill_variant(lattice, a, variant)
}

/// Variants whose preconditions hold, in tag order.
pub fn applicable_variants(lattice: &Lattice, a: ZeroPoint) -> Result<Vec<Variant>, ConstructionError> {
    let pair = IaPair::of(lattice, a)?;
    Ok(Variant::ALL
        .into_iter()
        .filter(|v| v.precondition(lattice, a, pair).is_ok())
        .collect())
}
