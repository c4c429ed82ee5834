//! Composition of arrangements and the residue criterion deciding when a
//! composition of solutions is itself a solution.
//!
//! `(A_1, ..., A_|B|) ⊗ B` places, in row `|B|(i-1) + j`, the queen at column
//! `|B|(A_j(i) - 1) + B(j)`. For solutions `A_j` with `|A_j| >= 2` the result is
//! a solution exactly when the residues `B(i) - i` and `B(i) + i` modulo `|B|`
//! each cover `Z_|B|`. Boards of size 1 are the degenerate exception:
//! `[1] ⊗ B = B`.

use serde::Serialize;

use crate::arrangement::{Arrangement, MAX_N};
use crate::error::{Error, Result};

/// Residues of `B(i) - i` and `B(i) + i` modulo `|B|`, in row order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub n: usize,
    pub diff_residues: Vec<usize>,
    pub sum_residues: Vec<usize>,
    pub diff_complete: bool,
    pub sum_complete: bool,
    pub passes: bool,
}

fn covers_all_residues(residues: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    residues
        .iter()
        .all(|&r| !std::mem::replace(&mut seen[r], true))
}

/// Evaluates both residue conditions on `b`. O(n).
pub fn criterion(b: &Arrangement) -> CriterionReport {
    let n = b.n();
    let mut diff = Vec::with_capacity(n);
    let mut sum = Vec::with_capacity(n);
    for (k, &c) in b.perm().iter().enumerate() {
        let row = k + 1;
        diff.push((c + n - row) % n);
        sum.push((c + row) % n);
    }
    let diff_complete = covers_all_residues(&diff, n);
    let sum_complete = covers_all_residues(&sum, n);
    CriterionReport {
        n,
        diff_residues: diff,
        sum_residues: sum,
        diff_complete,
        sum_complete,
        passes: diff_complete && sum_complete,
    }
}

fn product_size(inner: usize, outer: usize) -> Result<usize> {
    match inner.checked_mul(outer) {
        Some(n) if n <= MAX_N => Ok(n),
        _ => Err(Error::LimitExceeded {
            n: inner.saturating_mul(outer),
            max: MAX_N,
        }),
    }
}

/// `A ⊗ B`: every `A_j` equal to `a`.
pub fn compose(a: &Arrangement, b: &Arrangement) -> Result<Arrangement> {
    let nb = b.n();
    let size = product_size(a.n(), nb)?;
    let mut perm = Vec::with_capacity(size);
    for &ai in a.perm() {
        for &bj in b.perm() {
            perm.push(nb * (ai - 1) + bj);
        }
    }
    Ok(Arrangement::from_vec_unchecked(perm))
}

/// `(A_1, ..., A_|B|) ⊗ B`. All `A_j` must share one size and there must be
/// exactly `|B|` of them.
pub fn generalized_compose(parts: &[Arrangement], b: &Arrangement) -> Result<Arrangement> {
    let nb = b.n();
    if parts.len() != nb {
        return Err(Error::SizeMismatch(format!(
            "{} inner arrangements for an outer board of size {}",
            parts.len(),
            nb
        )));
    }
    let na = parts.first().map_or(0, Arrangement::n);
    if let Some(p) = parts.iter().find(|p| p.n() != na) {
        return Err(Error::SizeMismatch(format!(
            "inner arrangements have sizes {} and {}",
            na,
            p.n()
        )));
    }
    let size = product_size(na, nb)?;
    let mut perm = Vec::with_capacity(size);
    for i in 1..=na {
        for (j, part) in parts.iter().enumerate() {
            perm.push(nb * (part.col(i) - 1) + b.perm()[j]);
        }
    }
    Ok(Arrangement::from_vec_unchecked(perm))
}

pub(crate) fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Whether some permutation of size `n` satisfies the residue criterion:
/// exactly when `gcd(n, 6) = 1`.
pub fn hedayat_exists(n: usize) -> bool {
    gcd(n, 6) == 1
}

/// A criterion-satisfying permutation for `gcd(n, 6) = 1`:
/// `B(i) = 2i mod n`, with residue 0 written as `n`.
///
/// `B(i) - i = i` and `B(i) + i = 3i` modulo `n`, both bijections because 1 and
/// 3 are units mod `n`.
pub fn witness(n: usize) -> Result<Arrangement> {
    if n == 0 {
        return Err(Error::InvalidInput("board size must be positive".into()));
    }
    if !hedayat_exists(n) {
        return Err(Error::NoWitness(n));
    }
    if n > MAX_N {
        return Err(Error::LimitExceeded { n, max: MAX_N });
    }
    let perm = (1..=n)
        .map(|i| match (2 * i) % n {
            0 => n,
            r => r,
        })
        .collect();
    let b = Arrangement::from_vec_unchecked(perm);
    debug_assert!(criterion(&b).passes);
    Ok(b)
}

/// Largest `n` accepted by [`find_criterion_permutation`].
pub const MODULAR_SEARCH_MAX_N: usize = 64;

/// Pruning used by [`find_criterion_permutation`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TorusPruning {
    /// Column, diff-residue and sum-residue occupancy only.
    Plain,
    /// Additionally requires, at every node, that the open rows and columns
    /// can still produce the unused residues: with `U_c`, `U_r` the open
    /// columns and rows and `U_d`, `U_s` the unused residues,
    /// `sum(U_c) - sum(U_r) = sum(U_d)`, `sum(U_c) + sum(U_r) = sum(U_s)` and
    /// `2 sum(U_c^2) + 2 sum(U_r^2) = sum(U_d^2) + sum(U_s^2)`, all mod `n`.
    /// The left-hand sides do not depend on how the open rows are matched to
    /// columns, so these hold for every extension.
    ResidueSums,
}

/// Exhaustive backtracking for a permutation satisfying the residue criterion
/// (a solution of the queens problem on the torus). Returns `None` only after
/// the whole search space has been ruled out.
///
/// Column translations preserve the criterion, so row 1 is pinned to column 1.
/// Rows are branched most-constrained first.
pub fn find_criterion_permutation(n: usize, pruning: TorusPruning) -> Result<Option<Arrangement>> {
    if n == 0 {
        return Err(Error::InvalidInput("board size must be positive".into()));
    }
    if n > MODULAR_SEARCH_MAX_N {
        return Err(Error::LimitExceeded {
            n,
            max: MODULAR_SEARCH_MAX_N,
        });
    }
    let all_lin = (n * (n - 1) / 2) as u64;
    let all_sq = (0..n as u64).map(|k| k * k).sum::<u64>();
    let mut search = TorusSearch {
        n,
        full: if n == 64 { u64::MAX } else { (1u64 << n) - 1 },
        cols: 0,
        diffs: 0,
        sums: 0,
        placed: vec![usize::MAX; n],
        sums_check: pruning == TorusPruning::ResidueSums,
        open: OpenSums {
            cols: all_lin,
            rows: all_lin,
            cols_sq: all_sq,
            rows_sq: all_sq,
            diffs: all_lin,
            sums: all_lin,
            diffs_sq: all_sq,
            sums_sq: all_sq,
        },
    };
    search.place(0, 0);
    if !search.run(n - 1) {
        return Ok(None);
    }
    let perm = search.placed.iter().map(|&c| c + 1).collect();
    let b = Arrangement::from_vec_unchecked(perm);
    debug_assert!(criterion(&b).passes);
    Ok(Some(b))
}

/// Plain sums over the open rows/columns and unused residues (0-based values).
#[derive(Clone, Copy)]
struct OpenSums {
    cols: u64,
    rows: u64,
    cols_sq: u64,
    rows_sq: u64,
    diffs: u64,
    sums: u64,
    diffs_sq: u64,
    sums_sq: u64,
}

impl OpenSums {
    fn consistent(&self, n: u64) -> bool {
        let m = |x: u64| x % n;
        m(self.cols + n * n - m(self.rows)) == m(self.diffs)
            && m(self.cols + self.rows) == m(self.sums)
            && m(2 * self.cols_sq + 2 * self.rows_sq) == m(self.diffs_sq + self.sums_sq)
    }
}

/// 0-based rows and columns. Bit `d` of `diffs` marks residue `(c - r) mod n`,
/// bit `s` of `sums` marks `(c + r) mod n`.
struct TorusSearch {
    n: usize,
    full: u64,
    cols: u64,
    diffs: u64,
    sums: u64,
    placed: Vec<usize>,
    sums_check: bool,
    open: OpenSums,
}

impl TorusSearch {
    fn rotl(&self, x: u64, k: usize) -> u64 {
        let k = k % self.n;
        if k == 0 {
            x
        } else {
            ((x << k) | (x >> (self.n - k))) & self.full
        }
    }

    /// Columns still open for `row`.
    fn free(&self, row: usize) -> u64 {
        // c is blocked if (c - row) mod n is a used diff, i.e. c = d + row
        let by_diff = self.rotl(self.diffs, row);
        // or (c + row) mod n is a used sum, i.e. c = s - row
        let by_sum = self.rotl(self.sums, self.n - row % self.n);
        !(self.cols | by_diff | by_sum) & self.full
    }

    fn residues(&self, row: usize, col: usize) -> (usize, usize) {
        let n = self.n;
        ((col + n - row) % n, (col + row) % n)
    }

    fn place(&mut self, row: usize, col: usize) {
        let (d, s) = self.residues(row, col);
        self.cols |= 1 << col;
        self.diffs |= 1 << d;
        self.sums |= 1 << s;
        self.placed[row] = col;
        self.adjust(row, col, d, s, false);
    }

    fn unplace(&mut self, row: usize, col: usize) {
        let (d, s) = self.residues(row, col);
        self.cols &= !(1 << col);
        self.diffs &= !(1 << d);
        self.sums &= !(1 << s);
        self.placed[row] = usize::MAX;
        self.adjust(row, col, d, s, true);
    }

    fn adjust(&mut self, row: usize, col: usize, d: usize, s: usize, restore: bool) {
        let o = &mut self.open;
        let [r, c, d, s] = [row, col, d, s].map(|x| x as u64);
        let deltas = [
            (&mut o.rows, r),
            (&mut o.cols, c),
            (&mut o.diffs, d),
            (&mut o.sums, s),
            (&mut o.rows_sq, r * r),
            (&mut o.cols_sq, c * c),
            (&mut o.diffs_sq, d * d),
            (&mut o.sums_sq, s * s),
        ];
        for (field, v) in deltas {
            if restore {
                *field += v;
            } else {
                *field -= v;
            }
        }
    }

    fn run(&mut self, remaining: usize) -> bool {
        if self.sums_check && !self.open.consistent(self.n as u64) {
            return false;
        }
        if remaining == 0 {
            return true;
        }
        let mut best: Option<(usize, u64)> = None;
        for row in 0..self.n {
            if self.placed[row] != usize::MAX {
                continue;
            }
            let free = self.free(row);
            if free == 0 {
                return false;
            }
            if best.is_none_or(|(_, f)| free.count_ones() < f.count_ones()) {
                best = Some((row, free));
            }
        }
        let (row, mut free) = best.expect("an unplaced row exists");
        while free != 0 {
            let col = free.trailing_zeros() as usize;
            free &= free - 1;
            self.place(row, col);
            if self.run(remaining - 1) {
                return true;
            }
            self.unplace(row, col);
        }
        false
    }
}
