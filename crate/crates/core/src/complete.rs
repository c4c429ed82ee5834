//! Extending a partial placement of queens to a full solution.

use serde::Serialize;

use crate::arrangement::Arrangement;
use crate::error::{invalid, Error, Result};
use crate::queen_fn::LinearMap;

/// Largest board accepted by the completion solvers (diagonal masks are
/// 128 bits wide).
pub const COMPLETE_MAX_N: usize = 64;

/// Queens already on an `n x n` board, as 1-based `(row, col)` pairs.
///
/// Queens may attack each other; such placements simply have no completion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartialPlacement {
    n: usize,
    queens: Vec<(usize, usize)>,
}

impl PartialPlacement {
    pub fn new(n: usize, mut queens: Vec<(usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(invalid("board size must be positive"));
        }
        if let Some(&(r, c)) = queens
            .iter()
            .find(|&&(r, c)| !(1..=n).contains(&r) || !(1..=n).contains(&c))
        {
            return Err(invalid(format!(
                "queen ({r}, {c}) outside the {n}x{n} board"
            )));
        }
        queens.sort_unstable();
        queens.dedup();
        Ok(PartialPlacement { n, queens })
    }

    pub fn empty(n: usize) -> Result<Self> {
        PartialPlacement::new(n, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Distinct queens, sorted by row then column.
    pub fn queens(&self) -> &[(usize, usize)] {
        &self.queens
    }

    /// True when `a` has a queen on every placed square.
    pub fn is_contained_in(&self, a: &Arrangement) -> bool {
        a.n() == self.n && self.queens.iter().all(|&(r, c)| a.col(r) == c)
    }
}

/// Occupancy of columns and both diagonal families, for rows filled in any
/// order. 0-based: ascending diagonal `c - r + n - 1`, descending `c + r`.
#[derive(Clone)]
struct Board {
    n: usize,
    full: u128,
    cols: u128,
    up: u128,
    down: u128,
    rows: Vec<usize>,
}

impl Board {
    fn new(n: usize) -> Self {
        Board {
            n,
            full: if n == 128 {
                u128::MAX
            } else {
                (1u128 << n) - 1
            },
            cols: 0,
            up: 0,
            down: 0,
            rows: vec![0; n],
        }
    }

    /// Columns (bit c = column c + 1) open in 0-based `row`.
    fn free(&self, row: usize) -> u128 {
        let up = self.up >> (self.n - 1 - row);
        let down = self.down >> row;
        !(self.cols | up | down) & self.full
    }

    fn place(&mut self, row: usize, col: usize) {
        self.cols |= 1 << col;
        self.up |= 1 << (col + self.n - 1 - row);
        self.down |= 1 << (col + row);
        self.rows[row] = col + 1;
    }

    fn remove(&mut self, row: usize, col: usize) {
        self.cols &= !(1 << col);
        self.up &= !(1 << (col + self.n - 1 - row));
        self.down &= !(1 << (col + row));
        self.rows[row] = 0;
    }

    /// Places every queen of `p`, or returns `None` if two of them attack.
    fn seeded(p: &PartialPlacement) -> Option<Board> {
        let mut b = Board::new(p.n);
        for &(r, c) in &p.queens {
            if b.rows[r - 1] != 0 || b.free(r - 1) & (1 << (c - 1)) == 0 {
                return None;
            }
            b.place(r - 1, c - 1);
        }
        Some(b)
    }

    fn into_arrangement(self) -> Arrangement {
        Arrangement::from_vec_unchecked(self.rows)
    }
}

fn check_size(n: usize) -> Result<()> {
    if n > COMPLETE_MAX_N {
        return Err(Error::LimitExceeded {
            n,
            max: COMPLETE_MAX_N,
        });
    }
    Ok(())
}

/// Exhaustive completion: a solution containing every queen of `p`, or
/// `None` when no completion exists.
///
/// Branches on the open row with the fewest free columns (lowest row on
/// ties), trying columns in ascending order.
pub fn complete(p: &PartialPlacement) -> Result<Option<Arrangement>> {
    check_size(p.n)?;
    let Some(mut board) = Board::seeded(p) else {
        return Ok(None);
    };
    let open = p.n - p.queens.len();
    Ok(backtrack(&mut board, open).then(|| board.into_arrangement()))
}

fn backtrack(b: &mut Board, open: usize) -> bool {
    if open == 0 {
        return true;
    }
    let mut best: Option<(usize, u128)> = None;
    for row in 0..b.n {
        if b.rows[row] != 0 {
            continue;
        }
        let free = b.free(row);
        if free == 0 {
            return false;
        }
        if best.is_none_or(|(_, f)| free.count_ones() < f.count_ones()) {
            best = Some((row, free));
        }
    }
    let (row, mut free) = best.expect("an open row exists");
    while free != 0 {
        let col = free.trailing_zeros() as usize;
        free &= free - 1;
        b.place(row, col);
        if backtrack(b, open - 1) {
            return true;
        }
        b.remove(row, col);
    }
    false
}

/// Searches Queen functions of width at most `max_width` that agree with `p`
/// and materialize to a solution.
///
/// Segments are chosen left to right, longest first; within a segment the odd
/// rows' map is chosen before the even rows'. A placed queen in a parity class
/// pins `b` for each `a`. Returning `None` only means no such function exists
/// under the width bound, not that `p` cannot be completed.
pub fn complete_via_queen_functions(
    p: &PartialPlacement,
    max_width: usize,
) -> Result<Option<Arrangement>> {
    check_size(p.n)?;
    if max_width == 0 {
        return Err(invalid("max_width must be at least 1"));
    }
    let Some(seed) = Board::seeded(p) else {
        return Ok(None);
    };
    let mut pinned = vec![0usize; p.n + 1];
    for &(r, c) in &p.queens {
        pinned[r] = c;
    }
    let mut search = QfSearch {
        n: p.n,
        pinned,
        board: Board::new(p.n),
        seed,
    };
    Ok(search
        .segment(1, max_width)
        .then(|| search.board.into_arrangement()))
}

struct QfSearch {
    n: usize,
    /// pinned[row] = required column, 0 if free
    pinned: Vec<usize>,
    /// Rows assigned by the Queen function so far.
    board: Board,
    /// The placed queens alone, for forward checks.
    seed: Board,
}

impl QfSearch {
    fn segment(&mut self, lo: usize, budget: usize) -> bool {
        let n = self.n;
        if lo > n {
            return true;
        }
        if budget == 0 {
            return false;
        }
        let min_hi = if budget == 1 { n } else { lo };
        (min_hi..=n).rev().any(|hi| self.class(lo, hi, 1, budget))
    }

    /// Chooses the map for rows of `parity` in `[lo, hi]`, then continues.
    fn class(&mut self, lo: usize, hi: usize, parity: usize, budget: usize) -> bool {
        if parity == 2 {
            return self.forward_ok(hi) && self.segment(hi + 1, budget - 1);
        }
        let next = if parity == 1 { 0 } else { 2 };
        let rows: Vec<usize> = (lo..=hi).filter(|r| r % 2 == parity % 2).collect();
        let Some(&first) = rows.first() else {
            return self.class(lo, hi, next, budget);
        };
        let n = self.n;
        let m = n + 1;
        let anchor = rows.iter().copied().find(|&r| self.pinned[r] != 0);
        let offset = |a: usize, r: usize, v: usize| (v + m - (a * r) % m) % m;
        let candidates: Vec<LinearMap> = match (anchor, rows.len()) {
            (Some(r), _) => (1..=n)
                .map(|a| LinearMap::new(a, offset(a, r, self.pinned[r])))
                .collect(),
            (None, 1) => (1..=n)
                .map(|v| LinearMap::new(1, offset(1, first, v)))
                .collect(),
            (None, _) => (1..=n)
                .flat_map(|a| (1..=n).map(move |v| LinearMap::new(a, offset(a, first, v))))
                .collect(),
        };
        for map in candidates {
            if self.apply(&rows, map) {
                if self.class(lo, hi, next, budget) {
                    return true;
                }
                self.undo(&rows);
            }
        }
        false
    }

    /// Places `map` on `rows`; all-or-nothing.
    fn apply(&mut self, rows: &[usize], map: LinearMap) -> bool {
        let m = self.n + 1;
        for (k, &r) in rows.iter().enumerate() {
            let v = map.apply(r, m);
            let ok = v != 0
                && (self.pinned[r] == 0 || self.pinned[r] == v)
                && self.board.free(r - 1) & (1 << (v - 1)) != 0;
            if !ok {
                self.undo(&rows[..k]);
                return false;
            }
            self.board.place(r - 1, v - 1);
        }
        true
    }

    fn undo(&mut self, rows: &[usize]) {
        for &r in rows {
            let v = self.board.rows[r - 1];
            self.board.remove(r - 1, v - 1);
        }
    }

    /// Every row after `hi` still has a usable column, and pinned queens
    /// there are unattacked.
    fn forward_ok(&self, hi: usize) -> bool {
        (hi + 1..=self.n).all(|r| {
            let free = self.board.free(r - 1);
            match self.pinned[r] {
                0 => free & self.seed_free_mask(r) != 0,
                c => free & (1 << (c - 1)) != 0,
            }
        })
    }

    /// Columns not attacked by any placed queen, for an unpinned `row`.
    fn seed_free_mask(&self, row: usize) -> u128 {
        self.seed.free(row - 1)
    }
}
