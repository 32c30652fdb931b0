#![allow(dead_code)]

use latnull_core::{
    load_document, random_bounded_lattice, ElementId, Lattice, LatticeDocument, OpTable,
    ZeroPoint,
};

pub fn fixture(text: &str) -> (LatticeDocument, Lattice) {
    load_document(text).expect("fixture must load")
}

pub fn zero_of(doc: &LatticeDocument, lattice: &Lattice) -> ZeroPoint {
    ZeroPoint::from_label(lattice, doc.zero.as_deref().expect("fixture has a zero")).unwrap()
}

pub fn id(lattice: &Lattice, label: &str) -> ElementId {
    lattice.id(label).unwrap_or_else(|| panic!("no element {label}"))
}

pub fn labels(lattice: &Lattice, ids: &[ElementId]) -> Vec<String> {
    ids.iter().map(|&e| lattice.label(e).to_string()).collect()
}

/// Greatest lower bound found by scanning the order relation only.
pub fn scan_meet(l: &Lattice, x: ElementId, y: ElementId) -> Option<ElementId> {
    let lower: Vec<_> = l.elements().filter(|&z| l.leq(z, x) && l.leq(z, y)).collect();
    let greatest: Vec<_> = lower
        .iter()
        .copied()
        .filter(|&g| lower.iter().all(|&z| l.leq(z, g)))
        .collect();
    (greatest.len() == 1).then(|| greatest[0])
}

pub fn scan_join(l: &Lattice, x: ElementId, y: ElementId) -> Option<ElementId> {
    let upper: Vec<_> = l.elements().filter(|&z| l.leq(x, z) && l.leq(y, z)).collect();
    let least: Vec<_> = upper
        .iter()
        .copied()
        .filter(|&g| upper.iter().all(|&z| l.leq(g, z)))
        .collect();
    (least.len() == 1).then(|| least[0])
}

/// One instance of the fuzz corpus: a random lattice and a zero element with
/// exactly two incomparable elements.
pub struct Instance {
    pub seed: u64,
    pub lattice: Lattice,
    pub zero: ElementId,
}

impl Instance {
    pub fn a(&self) -> ZeroPoint {
        ZeroPoint::new(&self.lattice, self.zero).unwrap()
    }
}

/// Deterministic corpus: seeds `0..`, sizes cycling through `3..=max_size`,
/// every zero element with `|I_a| = 2`, until `min_instances` are collected.
pub fn fuzz_corpus(min_instances: usize, max_size: usize) -> Vec<Instance> {
    let mut out = Vec::new();
    let mut seed = 0u64;
    while out.len() < min_instances {
        let n = 3 + (seed as usize % (max_size - 2));
        let lattice = random_bounded_lattice(seed, n).expect("generator succeeds");
        for a in lattice.elements() {
            let Ok(zero) = ZeroPoint::new(&lattice, a) else {
                continue;
            };
            if lattice.incomparables(zero).len() == 2 {
                out.push(Instance {
                    seed,
                    lattice: lattice.clone(),
                    zero: a,
                });
            }
        }
        seed += 1;
    }
    out
}

/// All idempotent nullnorms with zero element `a`, found by backtracking over
/// commutative idempotent tables using only the defining axioms. Nothing of
/// the skeleton is assumed. Feasible for roughly `n <= 7`.
pub fn definitional_search(l: &Lattice, a: ZeroPoint) -> Vec<Vec<ElementId>> {
    let n = l.len();
    let av = a.id();
    let mut fixed: Vec<Option<ElementId>> = vec![None; n * n];
    let set = |fixed: &mut Vec<Option<ElementId>>, x: ElementId, y: ElementId, v: ElementId| -> bool {
        for (i, j) in [(x, y), (y, x)] {
            let cell = &mut fixed[i.index() * n + j.index()];
            match cell {
                Some(old) if *old != v => return false,
                _ => *cell = Some(v),
            }
        }
        true
    };
    for x in l.elements() {
        if !set(&mut fixed, x, x, x) {
            return Vec::new();
        }
        if l.leq(x, av) && !set(&mut fixed, x, l.bottom(), x) {
            return Vec::new();
        }
        if l.leq(av, x) && !set(&mut fixed, x, l.top(), x) {
            return Vec::new();
        }
    }
    let free: Vec<(ElementId, ElementId)> = l
        .elements()
        .flat_map(|x| l.elements().map(move |y| (x, y)))
        .filter(|&(x, y)| x < y && fixed[x.index() * n + y.index()].is_none())
        .collect();

    let mut cells = fixed.clone();
    let mut out = Vec::new();
    backtrack(l, &free, 0, &mut cells, &mut out);
    out.sort();
    out
}

fn monotone_so_far(l: &Lattice, cells: &[Option<ElementId>], x: ElementId, y: ElementId) -> bool {
    let n = l.len();
    let v = cells[x.index() * n + y.index()].unwrap();
    for u in l.elements() {
        for w in l.elements() {
            let Some(o) = cells[u.index() * n + w.index()] else {
                continue;
            };
            if l.leq(x, u) && l.leq(y, w) && !l.leq(v, o) {
                return false;
            }
            if l.leq(u, x) && l.leq(w, y) && !l.leq(o, v) {
                return false;
            }
        }
    }
    true
}

fn backtrack(
    l: &Lattice,
    free: &[(ElementId, ElementId)],
    k: usize,
    cells: &mut Vec<Option<ElementId>>,
    out: &mut Vec<Vec<ElementId>>,
) {
    let n = l.len();
    if k == free.len() {
        let flat: Vec<ElementId> = cells.iter().map(|c| c.unwrap()).collect();
        let table = OpTable::from_cells(l, flat.clone()).unwrap();
        let assoc = l.elements().all(|x| {
            l.elements().all(|y| {
                l.elements()
                    .all(|z| table.get(x, table.get(y, z)) == table.get(table.get(x, y), z))
            })
        });
        if assoc {
            out.push(flat);
        }
        return;
    }
    let (x, y) = free[k];
    for v in l.elements() {
        cells[x.index() * n + y.index()] = Some(v);
        cells[y.index() * n + x.index()] = Some(v);
        if monotone_so_far(l, cells, x, y) {
            backtrack(l, free, k + 1, cells, out);
        }
    }
    cells[x.index() * n + y.index()] = None;
    cells[y.index() * n + x.index()] = None;
}
