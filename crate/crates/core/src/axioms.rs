//! Operation tables and exhaustive nullnorm axiom checks.
//!
//! Every checker computes its own report independently and, on failure,
//! returns the first violation found in its search order together with the
//! offending elements, so a report can always be re-evaluated against the
//! table.

use std::fmt;

use crate::lattice::{ElementId, Lattice, ZeroPoint};

/// A total binary operation on the elements of one lattice.
#[derive(Clone, PartialEq, Eq)]
pub struct OpTable<'l> {
    lattice: &'l Lattice,
    cells: Vec<ElementId>,
}

impl fmt::Debug for OpTable<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<&str>> = self
            .lattice
            .elements()
            .map(|x| {
                self.lattice
                    .elements()
                    .map(|y| self.lattice.label(self.get(x, y)))
                    .collect()
            })
            .collect();
        f.debug_struct("OpTable").field("rows", &rows).finish()
    }
}

impl<'l> OpTable<'l> {
    /// Table built cell by cell from `f(x, y)`.
    pub fn from_fn(lattice: &'l Lattice, mut f: impl FnMut(ElementId, ElementId) -> ElementId) -> Self {
        let n = lattice.len();
        let mut cells = Vec::with_capacity(n * n);
        for x in lattice.elements() {
            for y in lattice.elements() {
                let v = f(x, y);
                assert!(v.index() < n, "cell value out of range");
                cells.push(v);
            }
        }
        OpTable { lattice, cells }
    }

    /// Row-major cells; `None` if the length or any id is out of range.
    pub fn from_cells(lattice: &'l Lattice, cells: Vec<ElementId>) -> Option<Self> {
        let n = lattice.len();
        (cells.len() == n * n && cells.iter().all(|c| c.index() < n))
            .then_some(OpTable { lattice, cells })
    }

    pub fn meet_table(lattice: &'l Lattice) -> Self {
        Self::from_fn(lattice, |x, y| lattice.meet(x, y))
    }

    pub fn join_table(lattice: &'l Lattice) -> Self {
        Self::from_fn(lattice, |x, y| lattice.join(x, y))
    }

    pub fn lattice(&self) -> &'l Lattice {
        self.lattice
    }

    #[inline]
    pub fn get(&self, x: ElementId, y: ElementId) -> ElementId {
        self.cells[x.index() * self.lattice.len() + y.index()]
    }

    pub fn set(&mut self, x: ElementId, y: ElementId, v: ElementId) {
        assert!(v.index() < self.lattice.len(), "cell value out of range");
        let n = self.lattice.len();
        self.cells[x.index() * n + y.index()] = v;
    }

    pub fn cells(&self) -> &[ElementId] {
        &self.cells
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    Commutative,
    Associative,
    Monotone,
    ZeroElement,
    Idempotent,
}

impl Axiom {
    pub const ALL: [Axiom; 5] = [
        Axiom::Commutative,
        Axiom::Associative,
        Axiom::Monotone,
        Axiom::ZeroElement,
        Axiom::Idempotent,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Commutative => "commutative",
            Axiom::Associative => "associative",
            Axiom::Monotone => "monotone",
            Axiom::ZeroElement => "zero_element",
            Axiom::Idempotent => "idempotent",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Elements demonstrating an axiom violation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Witness {
    /// `V(x, y) != V(y, x)`.
    Commutative { x: ElementId, y: ElementId },
    /// `V(x, V(y, z)) != V(V(x, y), z)`.
    Associative { x: ElementId, y: ElementId, z: ElementId },
    /// `lower <= upper` but the result with `other` decreases. `left` is true
    /// when the varying argument is the first one.
    Monotone {
        lower: ElementId,
        upper: ElementId,
        other: ElementId,
        left: bool,
    },
    /// `V(x, y)` should equal `expected`.
    ZeroElement {
        x: ElementId,
        y: ElementId,
        expected: ElementId,
    },
    /// `V(x, x) != x`.
    Idempotent { x: ElementId },
}

impl Witness {
    /// Elements of the witness tuple, in reporting order.
    pub fn elements(&self) -> Vec<ElementId> {
        match *self {
            Witness::Commutative { x, y } => vec![x, y],
            Witness::Associative { x, y, z } => vec![x, y, z],
            Witness::Monotone { lower, upper, other, .. } => vec![lower, upper, other],
            Witness::ZeroElement { x, y, .. } => vec![x, y],
            Witness::Idempotent { x } => vec![x],
        }
    }

    /// Re-evaluates the witness against `table`: true iff it still violates.
    pub fn violated_by(&self, table: &OpTable<'_>) -> bool {
        let l = table.lattice();
        match *self {
            Witness::Commutative { x, y } => table.get(x, y) != table.get(y, x),
            Witness::Associative { x, y, z } => {
                table.get(x, table.get(y, z)) != table.get(table.get(x, y), z)
            }
            Witness::Monotone { lower, upper, other, left } => {
                let (lo, hi) = if left {
                    (table.get(lower, other), table.get(upper, other))
                } else {
                    (table.get(other, lower), table.get(other, upper))
                };
                l.leq(lower, upper) && !l.leq(lo, hi)
            }
            Witness::ZeroElement { x, y, expected } => table.get(x, y) != expected,
            Witness::Idempotent { x } => table.get(x, x) != x,
        }
    }

    /// Human-readable account of the violation with evaluated cells.
    pub fn describe(&self, table: &OpTable<'_>) -> String {
        let l = table.lattice();
        let s = |e: ElementId| l.label(e);
        match *self {
            Witness::Commutative { x, y } => format!(
                "V({},{}) = {} but V({},{}) = {}",
                s(x),
                s(y),
                s(table.get(x, y)),
                s(y),
                s(x),
                s(table.get(y, x))
            ),
            Witness::Associative { x, y, z } => format!(
                "V({x},V({y},{z})) = {} but V(V({x},{y}),{z}) = {}",
                s(table.get(x, table.get(y, z))),
                s(table.get(table.get(x, y), z)),
                x = s(x),
                y = s(y),
                z = s(z)
            ),
            Witness::Monotone { lower, upper, other, left } => {
                let (a, b) = if left {
                    (
                        format!("V({},{})", s(lower), s(other)),
                        format!("V({},{})", s(upper), s(other)),
                    )
                } else {
                    (
                        format!("V({},{})", s(other), s(lower)),
                        format!("V({},{})", s(other), s(upper)),
                    )
                };
                let (va, vb) = if left {
                    (table.get(lower, other), table.get(upper, other))
                } else {
                    (table.get(other, lower), table.get(other, upper))
                };
                format!(
                    "{} <= {} but {a} = {} is not below {b} = {}",
                    s(lower),
                    s(upper),
                    s(va),
                    s(vb)
                )
            }
            Witness::ZeroElement { x, y, expected } => format!(
                "V({},{}) = {} but must be {}",
                s(x),
                s(y),
                s(table.get(x, y)),
                s(expected)
            ),
            Witness::Idempotent { x } => {
                format!("V({x},{x}) = {}", s(table.get(x, x)), x = s(x))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub passed: bool,
    pub witness: Option<Witness>,
}

impl AxiomReport {
    fn from_witness(axiom: Axiom, witness: Option<Witness>) -> Self {
        AxiomReport {
            axiom,
            passed: witness.is_none(),
            witness,
        }
    }

    /// Witness elements rendered as labels.
    pub fn witness_labels(&self, lattice: &Lattice) -> Option<Vec<String>> {
        self.witness.map(|w| {
            w.elements()
                .into_iter()
                .map(|e| lattice.label(e).to_string())
                .collect()
        })
    }
}

/// First `(x, y)` in id order with `V(x, y) != V(y, x)`.
pub fn check_commutative(table: &OpTable<'_>) -> AxiomReport {
    let l = table.lattice();
    let witness = l
        .elements()
        .flat_map(|x| l.elements().map(move |y| (x, y)))
        .find(|&(x, y)| table.get(x, y) != table.get(y, x))
        .map(|(x, y)| Witness::Commutative { x, y });
    AxiomReport::from_witness(Axiom::Commutative, witness)
}

/// Brute-force O(n³) associativity check.
///
/// The outer element is tried bottom first, then top, then the remaining
/// elements in id order; inner elements run in id order. Probing the bounds
/// first surfaces the `V(0, ·)` / `V(1, ·)` contradictions that decide
/// whether a nullnorm exists.
pub fn check_associative(table: &OpTable<'_>) -> AxiomReport {
    let l = table.lattice();
    let outer = [l.bottom(), l.top()]
        .into_iter()
        .chain(l.elements().filter(|&x| x != l.bottom() && x != l.top()));
    let mut witness = None;
    'search: for x in outer {
        for y in l.elements() {
            let xy = table.get(x, y);
            for z in l.elements() {
                if table.get(x, table.get(y, z)) != table.get(xy, z) {
                    witness = Some(Witness::Associative { x, y, z });
                    break 'search;
                }
            }
        }
    }
    AxiomReport::from_witness(Axiom::Associative, witness)
}

/// Non-decreasing in each argument; first violating `(x, y, z)` with
/// `x <= y`, left argument tested before right.
pub fn check_monotone(table: &OpTable<'_>) -> AxiomReport {
    let l = table.lattice();
    let mut witness = None;
    'search: for lower in l.elements() {
        for upper in l.elements().filter(|&u| l.leq(lower, u)) {
            for other in l.elements() {
                for left in [true, false] {
                    let w = Witness::Monotone {
                        lower,
                        upper,
                        other,
                        left,
                    };
                    if w.violated_by(table) {
                        witness = Some(w);
                        break 'search;
                    }
                }
            }
        }
    }
    AxiomReport::from_witness(Axiom::Monotone, witness)
}

/// `V(x, 0) = x` for `x <= a` and `V(x, 1) = x` for `x >= a`; once both
/// identities hold, also the consequence `V(x, a) = a` for every `x`.
pub fn check_zero_element(table: &OpTable<'_>, a: ZeroPoint) -> AxiomReport {
    let l = table.lattice();
    let a = a.id();
    let boundary = l.elements().find_map(|x| {
        if l.leq(x, a) && table.get(x, l.bottom()) != x {
            return Some(Witness::ZeroElement {
                x,
                y: l.bottom(),
                expected: x,
            });
        }
        if l.leq(a, x) && table.get(x, l.top()) != x {
            return Some(Witness::ZeroElement {
                x,
                y: l.top(),
                expected: x,
            });
        }
        None
    });
    let witness = boundary.or_else(|| {
        l.elements()
            .find(|&x| table.get(x, a) != a)
            .map(|x| Witness::ZeroElement { x, y: a, expected: a })
    });
    AxiomReport::from_witness(Axiom::ZeroElement, witness)
}

pub fn check_idempotent(table: &OpTable<'_>) -> AxiomReport {
    let l = table.lattice();
    let witness = l
        .elements()
        .find(|&x| table.get(x, x) != x)
        .map(|x| Witness::Idempotent { x });
    AxiomReport::from_witness(Axiom::Idempotent, witness)
}

/// All five reports, in [`Axiom::ALL`] order.
pub fn axiom_reports(table: &OpTable<'_>, a: ZeroPoint) -> Vec<AxiomReport> {
    vec![
        check_commutative(table),
        check_associative(table),
        check_monotone(table),
        check_zero_element(table, a),
        check_idempotent(table),
    ]
}

/// True iff `table` is an idempotent nullnorm with zero element `a`.
pub fn is_idempotent_nullnorm(table: &OpTable<'_>, a: ZeroPoint) -> (bool, Vec<AxiomReport>) {
    let reports = axiom_reports(table, a);
    (reports.iter().all(|r| r.passed), reports)
}

/// Short-circuiting variant of [`is_idempotent_nullnorm`] for search loops.
pub(crate) fn passes_all(table: &OpTable<'_>, a: ZeroPoint) -> bool {
    check_idempotent(table).passed
        && check_commutative(table).passed
        && check_zero_element(table, a).passed
        && check_monotone(table).passed
        && check_associative(table).passed
}
