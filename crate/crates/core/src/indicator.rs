//! Dominance, ideal/nadir normalization and the exact bi-objective
//! hypervolume, plus a non-dominated archive that keeps its normalized
//! hypervolume up to date on every insert.
//!
//! The reference point of the normalized hypervolume is the normalized
//! nadir `(1, 1)`. A single extreme optimum maps to `(0, 1)` or `(1, 0)`
//! and therefore contributes zero volume.

use std::cmp::Ordering;

use crate::error::{Error, Result};

/// A point in objective space: `a` is the first objective, `b` the second.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObjectivePair {
    pub a: f64,
    pub b: f64,
}

impl ObjectivePair {
    pub const fn new(a: f64, b: f64) -> Self {
        ObjectivePair { a, b }
    }

    pub fn is_finite(&self) -> bool {
        self.a.is_finite() && self.b.is_finite()
    }

    pub fn distance(&self, other: &ObjectivePair) -> f64 {
        (self.a - other.a).hypot(self.b - other.b)
    }
}

impl From<(f64, f64)> for ObjectivePair {
    fn from((a, b): (f64, f64)) -> Self {
        ObjectivePair { a, b }
    }
}

/// Pareto dominance for minimization.
pub fn dominates(u: &ObjectivePair, v: &ObjectivePair) -> bool {
    u.a <= v.a && u.b <= v.b && (u.a < v.a || u.b < v.b)
}

/// Affine map of objective space sending `ideal` to (0, 0) and `nadir` to (1, 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Normalization {
    ideal: ObjectivePair,
    nadir: ObjectivePair,
}

impl Normalization {
    pub fn new(ideal: ObjectivePair, nadir: ObjectivePair) -> Result<Self> {
        if !(ideal.is_finite() && nadir.is_finite() && ideal.a < nadir.a && ideal.b < nadir.b) {
            return Err(Error::DegenerateNormalization { ideal: (ideal.a, ideal.b), nadir: (nadir.a, nadir.b) });
        }
        Ok(Normalization { ideal, nadir })
    }

    pub fn ideal(&self) -> ObjectivePair {
        self.ideal
    }

    pub fn nadir(&self) -> ObjectivePair {
        self.nadir
    }

    #[inline]
    pub fn apply(&self, y: &ObjectivePair) -> ObjectivePair {
        ObjectivePair {
            a: (y.a - self.ideal.a) / (self.nadir.a - self.ideal.a),
            b: (y.b - self.ideal.b) / (self.nadir.b - self.ideal.b),
        }
    }
}

pub fn normalize(y: &ObjectivePair, ideal: &ObjectivePair, nadir: &ObjectivePair) -> Result<ObjectivePair> {
    Ok(Normalization::new(*ideal, *nadir)?.apply(y))
}

/// Exact area dominated by `points` inside the box bounded by `reference`.
///
/// Points not strictly below the reference in both objectives contribute
/// nothing. The input order does not matter.
pub fn hypervolume(points: &[ObjectivePair], reference: &ObjectivePair) -> f64 {
    let mut inside: Vec<ObjectivePair> = points
        .iter()
        .filter(|p| p.a < reference.a && p.b < reference.b)
        .copied()
        .collect();
    inside.sort_by(|p, q| p.a.partial_cmp(&q.a).unwrap_or(Ordering::Equal).then(p.b.partial_cmp(&q.b).unwrap_or(Ordering::Equal)));

    // Keep the staircase: scanning by ascending a, a point survives only if
    // it improves on the best b seen so far.
    let mut front: Vec<ObjectivePair> = Vec::with_capacity(inside.len());
    for p in inside {
        if front.last().is_none_or(|last| p.b < last.b) {
            front.push(p);
        }
    }

    let mut volume = 0.0;
    for (i, p) in front.iter().enumerate() {
        let next_a = front.get(i + 1).map_or(reference.a, |q| q.a);
        volume += (next_a - p.a) * (reference.b - p.b);
    }
    volume
}

/// One archived solution.
#[derive(Debug, Clone, PartialEq)]
pub struct ArchiveEntry {
    pub x: Vec<f64>,
    pub y: ObjectivePair,
}

/// Mutually non-dominated set kept sorted by ascending first objective
/// (hence strictly descending second objective).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Front {
    entries: Vec<ArchiveEntry>,
}

/// Outcome of a successful front insertion.
#[derive(Debug, Clone, PartialEq)]
pub struct Insertion {
    /// Index at which the new entry now sits.
    pub index: usize,
    pub removed: Vec<ArchiveEntry>,
}

impl Front {
    pub fn new() -> Self {
        Front::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[ArchiveEntry] {
        &self.entries
    }

    /// Whether `y` is dominated by, or equal to, some member.
    pub fn is_covered(&self, y: &ObjectivePair) -> bool {
        // Among members with a <= y.a, the last one has the smallest b.
        let upto = self.entries.partition_point(|e| e.y.a <= y.a);
        upto > 0 && self.entries[upto - 1].y.b <= y.b
    }

    /// Inserts `(x, y)` unless covered; members dominated by `y` are removed.
    pub fn insert(&mut self, x: Vec<f64>, y: ObjectivePair) -> Option<Insertion> {
        if self.is_covered(&y) {
            return None;
        }
        let start = self.entries.partition_point(|e| e.y.a < y.a);
        let end = start + self.entries[start..].iter().take_while(|e| e.y.b >= y.b).count();
        let removed: Vec<ArchiveEntry> = self.entries.splice(start..end, [ArchiveEntry { x, y }]).collect();
        Some(Insertion { index: start, removed })
    }

    fn remove(&mut self, index: usize) -> ArchiveEntry {
        self.entries.remove(index)
    }
}

/// Non-dominated archive bound to a problem's ideal and nadir point, with a
/// cached normalized hypervolume (reference point (1, 1)).
#[derive(Debug, Clone, PartialEq)]
pub struct Archive {
    front: Front,
    normalization: Normalization,
    hv: f64,
    capacity: Option<usize>,
}

impl Archive {
    pub fn new(ideal: ObjectivePair, nadir: ObjectivePair) -> Result<Self> {
        Ok(Archive { front: Front::new(), normalization: Normalization::new(ideal, nadir)?, hv: 0.0, capacity: None })
    }

    /// Bounds the archive size. When the bound is exceeded the entry with
    /// the smallest hypervolume contribution is dropped (zero-contribution
    /// entries outside the reference box go first). A capped archive no
    /// longer guarantees a non-decreasing hypervolume.
    pub fn with_capacity_limit(mut self, capacity: usize) -> Self {
        self.capacity = Some(capacity.max(1));
        self
    }

    pub fn len(&self) -> usize {
        self.front.len()
    }

    pub fn is_empty(&self) -> bool {
        self.front.is_empty()
    }

    pub fn entries(&self) -> &[ArchiveEntry] {
        self.front.entries()
    }

    pub fn normalization(&self) -> &Normalization {
        &self.normalization
    }

    pub fn ideal(&self) -> ObjectivePair {
        self.normalization.ideal
    }

    pub fn nadir(&self) -> ObjectivePair {
        self.normalization.nadir
    }

    /// Cached normalized hypervolume.
    pub fn hv(&self) -> f64 {
        self.hv
    }

    pub fn normalized_points(&self) -> Vec<ObjectivePair> {
        self.entries().iter().map(|e| self.normalization.apply(&e.y)).collect()
    }

    /// Hypervolume recomputed from scratch.
    pub fn recompute_hv(&self) -> f64 {
        hypervolume(&self.normalized_points(), &ObjectivePair::new(1.0, 1.0))
    }

    /// Returns whether the archive changed.
    pub fn insert(&mut self, x: Vec<f64>, y: ObjectivePair) -> bool {
        let Some(ins) = self.front.insert(x, y) else {
            return false;
        };
        self.hv += self.added_volume(&ins);
        if let Some(cap) = self.capacity {
            if self.front.len() > cap {
                self.evict_smallest();
            }
        }
        true
    }

    /// Volume gained by the insertion. The new point owns the strip
    /// `[a, R) x [b, U)` bounded by its neighbours (or the reference point);
    /// inside that strip only the removed entries were dominating before.
    fn added_volume(&self, ins: &Insertion) -> f64 {
        let (right, upper) = self.neighbour_bounds(ins.index);
        let p = self.normalization.apply(&self.front.entries()[ins.index].y);
        if p.a >= right || p.b >= upper {
            return 0.0;
        }
        let removed: Vec<ObjectivePair> = ins.removed.iter().map(|e| self.normalization.apply(&e.y)).collect();
        let covered = hypervolume(&removed, &ObjectivePair::new(right, upper));
        ((right - p.a) * (upper - p.b) - covered).max(0.0)
    }

    /// `(R, U)`: first objective of the right neighbour and second objective
    /// of the left neighbour, both clipped at the reference point.
    fn neighbour_bounds(&self, index: usize) -> (f64, f64) {
        let entries = self.front.entries();
        let right = entries
            .get(index + 1)
            .map_or(1.0, |e| self.normalization.apply(&e.y).a.min(1.0));
        let upper = match index {
            0 => 1.0,
            _ => self.normalization.apply(&entries[index - 1].y).b.min(1.0),
        };
        (right, upper)
    }

    /// Exclusive normalized area of the entry at `index`.
    fn contribution(&self, index: usize) -> f64 {
        let (right, upper) = self.neighbour_bounds(index);
        let p = self.normalization.apply(&self.front.entries()[index].y);
        if p.a >= right || p.b >= upper {
            return 0.0;
        }
        (right - p.a) * (upper - p.b)
    }

    fn evict_smallest(&mut self) {
        let (index, _) = (0..self.front.len())
            .map(|i| (i, self.contribution(i)))
            .min_by(|x, y| x.1.partial_cmp(&y.1).unwrap_or(Ordering::Equal))
            .expect("non-empty");
        self.front.remove(index);
        self.hv = self.recompute_hv();
    }

    /// Dump with one entry per line:
    /// `norm_a norm_b raw_a raw_b x_1 ... x_D`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for e in self.entries() {
            let n = self.normalization.apply(&e.y);
            out.push_str(&format!("{} {} {} {}", n.a, n.b, e.y.a, e.y.b));
            for v in &e.x {
                out.push_str(&format!(" {v}"));
            }
            out.push('\n');
        }
        out
    }
}
