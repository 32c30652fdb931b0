//! Finite bounded lattices.
//!
//! A [`Lattice`] is built once from a Hasse diagram ([`CoverSpec`]) and is
//! immutable afterwards. The order relation is kept as a dense bit matrix and
//! the meet and join tables are fully materialized, so every query after
//! construction is a table lookup.

use std::collections::HashMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Rejection-sampling budget of [`random_bounded_lattice`].
pub const GENERATION_ATTEMPTS: usize = 10_000;

/// Dense index of an element inside one [`Lattice`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(usize);

impl ElementId {
    pub const fn new(index: usize) -> Self {
        ElementId(index)
    }

    pub const fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("duplicate element label `{0}`")]
    DuplicateElement(String),
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("cover relation has a cycle through `{0}`")]
    Cycle(String),
    #[error("cover {lower} < {upper} is implied by transitivity (via {via})")]
    RedundantCover {
        lower: String,
        upper: String,
        via: String,
    },
    #[error("declared {role} `{declared}` is not {role}: `{witness}` is not comparable to it that way")]
    BadBounds {
        role: &'static str,
        declared: String,
        witness: String,
    },
    #[error("not a lattice: {x} and {y} have no unique {operation}")]
    NotALattice {
        x: String,
        y: String,
        operation: &'static str,
    },
    #[error("{lo} is not below {hi}")]
    NotComparable { lo: String, hi: String },
    #[error("zero element `{0}` must differ from bottom and top")]
    BadZero(String),
    #[error("a bounded lattice needs at least two elements, got {0}")]
    TooSmall(usize),
    #[error("no lattice found after {0} attempts")]
    GenerationExhausted(usize),
}

/// Square bit matrix, one `u64`-packed row per element.
#[derive(Clone, PartialEq, Eq)]
struct BitMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitMatrix {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    #[inline]
    fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    /// Warshall's algorithm, one row OR per (k, i) pair.
    fn close_transitively(&mut self) {
        let w = self.words;
        for k in 0..self.n {
            for i in 0..self.n {
                if i != k && self.get(i, k) {
                    for word in 0..w {
                        let src = self.bits[k * w + word];
                        self.bits[i * w + word] |= src;
                    }
                }
            }
        }
    }

    fn transpose(&self) -> Self {
        let mut t = BitMatrix::new(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                if self.get(i, j) {
                    t.set(j, i);
                }
            }
        }
        t
    }
}

fn is_subset(small: &[u64], big: &[u64]) -> bool {
    small.iter().zip(big).all(|(s, b)| s & !b == 0)
}

fn intersect(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn members(set: &[u64]) -> impl Iterator<Item = usize> + '_ {
    set.iter().enumerate().flat_map(|(w, &bits)| {
        (0..64).filter(move |b| bits >> b & 1 == 1).map(move |b| w * 64 + b)
    })
}

/// Hasse-diagram description of a bounded lattice, in terms of labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverSpec {
    pub names: Vec<String>,
    /// `(lower, upper)` pairs: `lower` is covered by `upper`.
    pub covers: Vec<(String, String)>,
    pub bottom: String,
    pub top: String,
}

/// A validated finite bounded lattice.
#[derive(Clone, PartialEq, Eq)]
pub struct Lattice {
    names: Vec<String>,
    index: HashMap<String, ElementId>,
    /// `up.get(x, y)` iff `x <= y`.
    up: BitMatrix,
    /// `down.get(x, y)` iff `y <= x`.
    down: BitMatrix,
    meet: Vec<ElementId>,
    join: Vec<ElementId>,
    bottom: ElementId,
    top: ElementId,
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Lattice")
            .field("names", &self.names)
            .field("covers", &self.cover_labels())
            .field("bottom", &self.label(self.bottom))
            .field("top", &self.label(self.top))
            .finish()
    }
}

impl Lattice {
    /// Validates a Hasse diagram and materializes its order, meet and join.
    ///
    /// The cover list must be transitively reduced. Checks run in this order:
    /// labels, cycles, redundant covers, bounds, then existence of every
    /// meet and join (first failing pair in id order is reported).
    pub fn from_covers(spec: &CoverSpec) -> Result<Self, LatticeError> {
        let n = spec.names.len();
        if n < 2 {
            return Err(LatticeError::TooSmall(n));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, name) in spec.names.iter().enumerate() {
            if index.insert(name.clone(), ElementId(i)).is_some() {
                return Err(LatticeError::DuplicateElement(name.clone()));
            }
        }
        let lookup = |label: &str| {
            index
                .get(label)
                .copied()
                .ok_or_else(|| LatticeError::UnknownLabel(label.to_string()))
        };
        let bottom = lookup(&spec.bottom)?;
        let top = lookup(&spec.top)?;

        let mut covers = Vec::with_capacity(spec.covers.len());
        let mut direct = BitMatrix::new(n);
        for (lo, hi) in &spec.covers {
            let (lo_id, hi_id) = (lookup(lo)?, lookup(hi)?);
            if lo_id == hi_id {
                return Err(LatticeError::Cycle(lo.clone()));
            }
            if direct.get(lo_id.0, hi_id.0) {
                return Err(LatticeError::RedundantCover {
                    lower: lo.clone(),
                    upper: hi.clone(),
                    via: "a duplicate cover line".to_string(),
                });
            }
            direct.set(lo_id.0, hi_id.0);
            covers.push((lo_id.0, hi_id.0));
        }

        let mut up = direct;
        for i in 0..n {
            up.set(i, i);
        }
        up.close_transitively();

        for i in 0..n {
            for j in i + 1..n {
                if up.get(i, j) && up.get(j, i) {
                    return Err(LatticeError::Cycle(spec.names[i].clone()));
                }
            }
        }

        for &(lo, hi) in &covers {
            if let Some(z) = (0..n).find(|&z| z != lo && z != hi && up.get(lo, z) && up.get(z, hi)) {
                return Err(LatticeError::RedundantCover {
                    lower: spec.names[lo].clone(),
                    upper: spec.names[hi].clone(),
                    via: spec.names[z].clone(),
                });
            }
        }

        if let Some(x) = (0..n).find(|&x| !up.get(bottom.0, x)) {
            return Err(LatticeError::BadBounds {
                role: "bottom",
                declared: spec.bottom.clone(),
                witness: spec.names[x].clone(),
            });
        }
        if let Some(x) = (0..n).find(|&x| !up.get(x, top.0)) {
            return Err(LatticeError::BadBounds {
                role: "top",
                declared: spec.top.clone(),
                witness: spec.names[x].clone(),
            });
        }

        let down = up.transpose();
        let mut meet = vec![ElementId(0); n * n];
        let mut join = vec![ElementId(0); n * n];
        for x in 0..n {
            for y in x..n {
                let lower = intersect(down.row(x), down.row(y));
                let glb = members(&lower).find(|&g| is_subset(&lower, down.row(g)));
                let upper = intersect(up.row(x), up.row(y));
                let lub = members(&upper).find(|&l| is_subset(&upper, up.row(l)));
                let (glb, lub) = match (glb, lub) {
                    (Some(g), Some(l)) => (g, l),
                    (None, _) | (_, None) => {
                        return Err(LatticeError::NotALattice {
                            x: spec.names[x].clone(),
                            y: spec.names[y].clone(),
                            operation: if glb.is_none() { "meet" } else { "join" },
                        })
                    }
                };
                meet[x * n + y] = ElementId(glb);
                meet[y * n + x] = ElementId(glb);
                join[x * n + y] = ElementId(lub);
                join[y * n + x] = ElementId(lub);
            }
        }

        Ok(Lattice {
            names: spec.names.clone(),
            index,
            up,
            down,
            meet,
            join,
            bottom,
            top,
        })
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    /// Always false: a bounded lattice has at least two elements.
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> impl DoubleEndedIterator<Item = ElementId> + ExactSizeIterator {
        (0..self.len()).map(ElementId)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn label(&self, x: ElementId) -> &str {
        &self.names[x.0]
    }

    pub fn id(&self, label: &str) -> Option<ElementId> {
        self.index.get(label).copied()
    }

    /// Like [`Lattice::id`] but with a typed error.
    pub fn require(&self, label: &str) -> Result<ElementId, LatticeError> {
        self.id(label)
            .ok_or_else(|| LatticeError::UnknownLabel(label.to_string()))
    }

    pub fn bottom(&self) -> ElementId {
        self.bottom
    }

    pub fn top(&self) -> ElementId {
        self.top
    }

    #[inline]
    pub fn leq(&self, x: ElementId, y: ElementId) -> bool {
        self.up.get(x.0, y.0)
    }

    #[inline]
    pub fn lt(&self, x: ElementId, y: ElementId) -> bool {
        x != y && self.leq(x, y)
    }

    #[inline]
    pub fn comparable(&self, x: ElementId, y: ElementId) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    #[inline]
    pub fn meet(&self, x: ElementId, y: ElementId) -> ElementId {
        self.meet[x.0 * self.len() + y.0]
    }

    #[inline]
    pub fn join(&self, x: ElementId, y: ElementId) -> ElementId {
        self.join[x.0 * self.len() + y.0]
    }

    /// Elements incomparable with `a`, in id order.
    pub fn incomparables(&self, a: ZeroPoint) -> Vec<ElementId> {
        self.elements()
            .filter(|&x| !self.comparable(x, a.id()))
            .collect()
    }

    /// The closed interval `[lo, hi]`, in id order.
    pub fn interval(&self, lo: ElementId, hi: ElementId) -> Result<Vec<ElementId>, LatticeError> {
        if !self.leq(lo, hi) {
            return Err(LatticeError::NotComparable {
                lo: self.label(lo).to_string(),
                hi: self.label(hi).to_string(),
            });
        }
        Ok(self
            .elements()
            .filter(|&x| self.leq(lo, x) && self.leq(x, hi))
            .collect())
    }

    /// Exhaustive check of `x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)`.
    pub fn is_distributive(&self) -> bool {
        self.elements().all(|x| {
            self.elements().all(|y| {
                self.elements().all(|z| {
                    self.meet(x, self.join(y, z)) == self.join(self.meet(x, y), self.meet(x, z))
                })
            })
        })
    }

    /// Transitive reduction of the order, as `(lower, upper)` pairs in id order.
    pub fn covers(&self) -> Vec<(ElementId, ElementId)> {
        let mut out = Vec::new();
        for x in self.elements() {
            for y in self.elements() {
                if self.lt(x, y) && !self.elements().any(|z| self.lt(x, z) && self.lt(z, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn cover_labels(&self) -> Vec<(String, String)> {
        self.covers()
            .into_iter()
            .map(|(x, y)| (self.label(x).to_string(), self.label(y).to_string()))
            .collect()
    }

    /// The cover description this lattice would be rebuilt from.
    pub fn to_cover_spec(&self) -> CoverSpec {
        CoverSpec {
            names: self.names.clone(),
            covers: self.cover_labels(),
            bottom: self.label(self.bottom).to_string(),
            top: self.label(self.top).to_string(),
        }
    }

    /// The order dual: same labels, reversed order, meet and join swapped.
    pub fn dual(&self) -> Lattice {
        Lattice {
            names: self.names.clone(),
            index: self.index.clone(),
            up: self.down.clone(),
            down: self.up.clone(),
            meet: self.join.clone(),
            join: self.meet.clone(),
            bottom: self.top,
            top: self.bottom,
        }
    }
}

/// The designated zero element `a`, checked to be neither bottom nor top.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ZeroPoint(ElementId);

impl ZeroPoint {
    pub fn new(lattice: &Lattice, a: ElementId) -> Result<Self, LatticeError> {
        if a == lattice.bottom() || a == lattice.top() {
            return Err(LatticeError::BadZero(lattice.label(a).to_string()));
        }
        Ok(ZeroPoint(a))
    }

    pub fn from_label(lattice: &Lattice, label: &str) -> Result<Self, LatticeError> {
        ZeroPoint::new(lattice, lattice.require(label)?)
    }

    pub fn id(self) -> ElementId {
        self.0
    }
}

/// Seeded random bounded lattice with exactly `n` elements.
///
/// Samples a ranked DAG between a global bottom and top (each inner element
/// gets one to three random lower covers from strictly lower ranks), closes
/// it transitively and rejects the sample unless it is a lattice.
pub fn random_bounded_lattice(seed: u64, n: usize) -> Result<Lattice, LatticeError> {
    if n < 2 {
        return Err(LatticeError::TooSmall(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inner = n - 2;
    let mut names = Vec::with_capacity(n);
    names.push("0".to_string());
    names.extend((1..=inner).map(|i| format!("e{i}")));
    names.push("1".to_string());
    let (bottom, top) = (0, n - 1);

    for _ in 0..GENERATION_ATTEMPTS {
        let mut ranks: Vec<usize> = if inner == 0 {
            Vec::new()
        } else {
            let max_rank = rng.gen_range(1..=inner);
            (0..inner).map(|_| rng.gen_range(1..=max_rank)).collect()
        };
        ranks.sort_unstable();

        let mut rel = BitMatrix::new(n);
        let mut has_upper = vec![false; n];
        for (k, &rank) in ranks.iter().enumerate() {
            let me = k + 1;
            let mut candidates = vec![bottom];
            candidates.extend((0..k).filter(|&j| ranks[j] < rank).map(|j| j + 1));
            let want = rng.gen_range(1..=3).min(candidates.len());
            for &lo in candidates.choose_multiple(&mut rng, want) {
                rel.set(lo, me);
                has_upper[lo] = true;
            }
        }
        for (x, _) in has_upper.iter().enumerate().take(top).filter(|(_, up)| !**up) {
            rel.set(x, top);
        }
        for i in 0..n {
            rel.set(i, i);
        }
        rel.close_transitively();

        let mut covers = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if x != y
                    && rel.get(x, y)
                    && !(0..n).any(|z| z != x && z != y && rel.get(x, z) && rel.get(z, y))
                {
                    covers.push((names[x].clone(), names[y].clone()));
                }
            }
        }
        let spec = CoverSpec {
            names: names.clone(),
            covers,
            bottom: names[bottom].clone(),
            top: names[top].clone(),
        };
        match Lattice::from_covers(&spec) {
            Ok(lattice) => return Ok(lattice),
            Err(LatticeError::NotALattice { .. }) => continue,
            Err(other) => unreachable!("generator produced malformed covers: {other}"),
        }
    }
    Err(LatticeError::GenerationExhausted(GENERATION_ATTEMPTS))
}
