//! Minimum-width Queen-function decomposition of arbitrary permutations.
//!
//! A row range can be one segment when, for each parity, its points
//! `(i, perm[i])` lie on a single line `a*i + b (mod n + 1)`. That property is
//! inherited by sub-ranges, so cutting greedily at the longest feasible prefix
//! gives a minimum partition.

use crate::arrangement::Arrangement;
use crate::error::{invalid, Result};
use crate::queen_fn::{LinearMap, QueenFunction, Segment};
use crate::symmetry::orbit;

/// Fits one parity class by scanning every multiplier `a` in `[1, n]`, taking
/// `b` from the first point. No modular inverse is used: `n + 1` can share
/// factors with the row gaps.
fn fit_class(points: &[(usize, usize)], n: usize) -> Option<LinearMap> {
    let m = n + 1;
    let Some(&(i0, v0)) = points.first() else {
        return Some(LinearMap::new(1, 0));
    };
    (1..=n).find_map(|a| {
        let map = LinearMap::new(a, offset_for(a, i0, v0, m));
        points
            .iter()
            .all(|&(i, v)| map.apply(i, m) == v)
            .then_some(map)
    })
}

fn offset_for(a: usize, i0: usize, v0: usize, m: usize) -> usize {
    let ai = (a as u64 * i0 as u64 % m as u64) as usize;
    (v0 + m - ai) % m
}

/// Maps `(odd, even)` reproducing `a` on rows `lo..=hi`, if they exist.
///
/// An empty parity class gets `(1, 0)`; a single point gets `a = 1`. Otherwise
/// the smallest fitting `a` is returned.
pub fn fit_segment(
    a: &Arrangement,
    lo: usize,
    hi: usize,
) -> Result<Option<(LinearMap, LinearMap)>> {
    let n = a.n();
    if lo == 0 || lo > hi || hi > n {
        return Err(invalid(format!("range [{lo}, {hi}] not inside [1, {n}]")));
    }
    let pts = |parity: usize| -> Vec<(usize, usize)> {
        (lo..=hi)
            .filter(|i| i % 2 == parity)
            .map(|i| (i, a.col(i)))
            .collect()
    };
    Ok(fit_class(&pts(1), n).zip(fit_class(&pts(0), n)))
}

/// Incremental fit of one parity class: the set of multipliers `a` still
/// consistent with every point added so far (with `b` pinned by the first).
#[derive(Clone)]
struct ClassFit {
    first: (usize, usize),
    count: usize,
    cands: Vec<u64>,
    scratch: Vec<u64>,
}

impl ClassFit {
    fn new(n: usize) -> Self {
        let words = (n + 1).div_ceil(64);
        ClassFit {
            first: (0, 0),
            count: 0,
            cands: vec![0; words],
            scratch: vec![0; words],
        }
    }

    fn reset(&mut self) {
        self.count = 0;
    }

    /// Adds a point if the class stays linear; leaves the state untouched and
    /// returns false otherwise.
    fn try_add(&mut self, i: usize, v: usize, n: usize) -> bool {
        let m = n + 1;
        match self.count {
            0 => {
                self.first = (i, v);
                self.count = 1;
                true
            }
            1 => {
                let (i0, v0) = self.first;
                let gap = (i - i0) as u64;
                let want = ((v + m - v0) % m) as u64;
                self.scratch.fill(0);
                let mut any = false;
                for a in 1..=n {
                    if (a as u64 * gap) % m as u64 == want {
                        self.scratch[a / 64] |= 1 << (a % 64);
                        any = true;
                    }
                }
                self.commit(any)
            }
            _ => {
                let (i0, v0) = self.first;
                let gap = (i - i0) as u64;
                let want = ((v + m - v0) % m) as u64;
                let mut any = false;
                for (w, (&src, dst)) in self.cands.iter().zip(self.scratch.iter_mut()).enumerate() {
                    let mut bits = src;
                    let mut keep = 0u64;
                    while bits != 0 {
                        let t = bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        let a = (w * 64 + t) as u64;
                        if a * gap % m as u64 == want {
                            keep |= 1 << t;
                        }
                    }
                    any |= keep != 0;
                    *dst = keep;
                }
                self.commit(any)
            }
        }
    }

    fn commit(&mut self, ok: bool) -> bool {
        if ok {
            std::mem::swap(&mut self.cands, &mut self.scratch);
            self.count += 1;
        }
        ok
    }

    fn map(&self, n: usize) -> LinearMap {
        let m = n + 1;
        let (i0, v0) = self.first;
        match self.count {
            0 => LinearMap::new(1, 0),
            1 => LinearMap::new(1, offset_for(1, i0, v0, m)),
            _ => {
                let (w, word) = self
                    .cands
                    .iter()
                    .enumerate()
                    .find(|(_, &x)| x != 0)
                    .expect("committed class has a candidate");
                let a = w * 64 + word.trailing_zeros() as usize;
                LinearMap::new(a, offset_for(a, i0, v0, m))
            }
        }
    }
}

/// Reusable buffers for greedy width computation. One per thread when
/// scanning many permutations of the same size.
#[derive(Clone)]
pub struct WidthScanner {
    n: usize,
    odd: ClassFit,
    even: ClassFit,
}

impl WidthScanner {
    pub fn new(n: usize) -> Self {
        WidthScanner {
            n,
            odd: ClassFit::new(n),
            even: ClassFit::new(n),
        }
    }

    /// Minimum width of `perm`, which must be a permutation of `1..=n`.
    pub fn width(&mut self, perm: &[usize]) -> usize {
        self.run(perm, None)
    }

    fn run(&mut self, perm: &[usize], mut segments: Option<&mut Vec<Segment>>) -> usize {
        let n = self.n;
        assert_eq!(perm.len(), n, "scanner built for a different size");
        if n == 0 {
            return 0;
        }
        let mut width = 1;
        let mut lo = 1;
        self.odd.reset();
        self.even.reset();
        for row in 1..=n {
            let v = perm[row - 1];
            let class = if row % 2 == 1 {
                &mut self.odd
            } else {
                &mut self.even
            };
            if class.try_add(row, v, n) {
                continue;
            }
            if let Some(out) = segments.as_deref_mut() {
                out.push(Segment::new(lo, row - 1, self.odd.map(n), self.even.map(n)));
            }
            width += 1;
            lo = row;
            self.odd.reset();
            self.even.reset();
            let class = if row % 2 == 1 {
                &mut self.odd
            } else {
                &mut self.even
            };
            class.try_add(row, v, n);
        }
        if let Some(out) = segments {
            out.push(Segment::new(lo, n, self.odd.map(n), self.even.map(n)));
        }
        width
    }
}

/// Minimum width over all Queen functions describing `a`, with one such
/// function. Defined for any permutation, solution or not.
pub fn min_width(a: &Arrangement) -> (usize, QueenFunction) {
    let n = a.n();
    let mut segments = Vec::new();
    let w = WidthScanner::new(n).run(a.perm(), Some(&mut segments));
    (w, QueenFunction::from_parts_unchecked(n, segments))
}

/// Smallest [`min_width`] among the eight board symmetries of `a`.
pub fn orbit_min_width(a: &Arrangement) -> usize {
    let mut scanner = WidthScanner::new(a.n());
    orbit(a)
        .iter()
        .map(|img| scanner.width(img.perm()))
        .min()
        .expect("orbit is non-empty")
}
