//! Queen functions: piecewise maps `[1, n] -> [0, n]` that are linear modulo
//! `n + 1` separately on the odd and even rows of each segment.

use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, MAX_N};
use crate::error::{invalid, Error, Result};

/// `i -> a*i + b (mod n + 1)` with `a` in `[1, n]` and `b` in `[0, n]`.
///
/// Negative offsets are stored as their canonical residue, e.g. `2i - 2` on an
/// `n = 8` board is `a = 2, b = 7`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "(usize, usize)", into = "(usize, usize)")]
pub struct LinearMap {
    pub a: usize,
    pub b: usize,
}

impl From<(usize, usize)> for LinearMap {
    fn from((a, b): (usize, usize)) -> Self {
        LinearMap { a, b }
    }
}

impl From<LinearMap> for (usize, usize) {
    fn from(m: LinearMap) -> Self {
        (m.a, m.b)
    }
}

impl LinearMap {
    pub const fn new(a: usize, b: usize) -> Self {
        LinearMap { a, b }
    }

    /// Canonical residue of `a*i + b` modulo `modulus`, in `[0, modulus)`.
    #[inline]
    pub fn apply(self, i: usize, modulus: usize) -> usize {
        ((self.a as u64 * i as u64 + self.b as u64) % modulus as u64) as usize
    }

    fn in_bounds(self, n: usize) -> bool {
        (1..=n).contains(&self.a) && self.b <= n
    }
}

/// Inclusive row range `[lo, hi]` with one map per row parity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Segment {
    pub lo: usize,
    pub hi: usize,
    pub odd: LinearMap,
    pub even: LinearMap,
}

impl Segment {
    pub const fn new(lo: usize, hi: usize, odd: LinearMap, even: LinearMap) -> Self {
        Segment { lo, hi, odd, even }
    }

    /// A segment using the same map on both parities.
    pub const fn uniform(lo: usize, hi: usize, map: LinearMap) -> Self {
        Segment {
            lo,
            hi,
            odd: map,
            even: map,
        }
    }

    pub fn map_for(&self, row: usize) -> LinearMap {
        if row % 2 == 1 {
            self.odd
        } else {
            self.even
        }
    }

    /// Number of rows covered (always at least 1).
    pub fn rows(&self) -> usize {
        self.hi + 1 - self.lo
    }
}

/// A segment partition of `[1, n]` with per-parity linear maps.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "QueenFunctionRecord", into = "QueenFunctionRecord")]
pub struct QueenFunction {
    n: usize,
    segments: Vec<Segment>,
}

#[derive(Serialize, Deserialize)]
struct QueenFunctionRecord {
    n: usize,
    segments: Vec<Segment>,
}

impl TryFrom<QueenFunctionRecord> for QueenFunction {
    type Error = Error;

    fn try_from(r: QueenFunctionRecord) -> Result<Self> {
        QueenFunction::new(r.n, r.segments)
    }
}

impl From<QueenFunction> for QueenFunctionRecord {
    fn from(f: QueenFunction) -> Self {
        QueenFunctionRecord {
            n: f.n,
            segments: f.segments,
        }
    }
}

impl QueenFunction {
    /// Checks that the segments tile `[1, n]` in order and that every map is
    /// within `a in [1, n]`, `b in [0, n]`.
    pub fn new(n: usize, segments: Vec<Segment>) -> Result<Self> {
        if n == 0 {
            return Err(invalid("board size must be positive"));
        }
        if n > MAX_N {
            return Err(Error::LimitExceeded { n, max: MAX_N });
        }
        let mut next = 1;
        for (k, s) in segments.iter().enumerate() {
            if s.lo != next || s.hi < s.lo {
                return Err(invalid(format!(
                    "segment {} is [{}, {}], expected to start at {}",
                    k, s.lo, s.hi, next
                )));
            }
            for m in [s.odd, s.even] {
                if !m.in_bounds(n) {
                    return Err(invalid(format!(
                        "segment {}: map ({}, {}) outside a in [1, {n}], b in [0, {n}]",
                        k, m.a, m.b
                    )));
                }
            }
            next = s.hi + 1;
        }
        if next != n + 1 {
            return Err(invalid(format!(
                "segments cover [1, {}] instead of [1, {}]",
                next - 1,
                n
            )));
        }
        Ok(QueenFunction { n, segments })
    }

    pub(crate) fn from_parts_unchecked(n: usize, segments: Vec<Segment>) -> Self {
        debug_assert!(QueenFunction::new(n, segments.clone()).is_ok());
        QueenFunction { n, segments }
    }

    /// A single segment applying `map` to every row.
    pub fn single(n: usize, map: LinearMap) -> Result<Self> {
        QueenFunction::new(n, vec![Segment::uniform(1, n.max(1), map)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Number of segments in the partition.
    pub fn width(&self) -> usize {
        self.segments.len()
    }

    fn segment_of(&self, row: usize) -> &Segment {
        let k = self.segments.partition_point(|s| s.hi < row);
        &self.segments[k]
    }

    /// Raw value at `row`, in `[0, n]`. Zero is returned as-is.
    pub fn eval(&self, row: usize) -> Result<usize> {
        if row == 0 || row > self.n {
            return Err(invalid(format!("row {} outside [1, {}]", row, self.n)));
        }
        Ok(self.segment_of(row).map_for(row).apply(row, self.n + 1))
    }

    /// Values for every row, in order (zeros included).
    pub fn values(&self) -> Vec<usize> {
        let m = self.n + 1;
        let mut out = Vec::with_capacity(self.n);
        for s in &self.segments {
            for row in s.lo..=s.hi {
                out.push(s.map_for(row).apply(row, m));
            }
        }
        out
    }

    /// The arrangement this function describes, if it is one.
    pub fn materialize(&self) -> Result<Arrangement> {
        let values = self.values();
        let mut seen = vec![false; self.n + 1];
        for (i, &v) in values.iter().enumerate() {
            if v == 0 {
                return Err(Error::ValueOutOfRange { row: i + 1 });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::NotAPermutation { column: v });
            }
        }
        Ok(Arrangement::from_vec_unchecked(values))
    }
}

/// Free-function form of [`QueenFunction::eval`].
pub fn eval_queen_function(f: &QueenFunction, row: usize) -> Result<usize> {
    f.eval(row)
}

/// Free-function form of [`QueenFunction::materialize`].
pub fn materialize(f: &QueenFunction) -> Result<Arrangement> {
    f.materialize()
}
