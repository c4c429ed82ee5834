//! Queen arrangements and the solution test.
//!
//! An arrangement of `n` queens is stored as a permutation: `perm[i - 1]` is
//! the column (1-based) of the queen in row `i`. Diagonals are identified by
//! `col - row` (ascending) and `col + row` (descending), so a permutation is a
//! solution exactly when both families are hit at most once.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Largest supported board size. Modular products `a * i + b` with
/// `a, i, b <= n` are computed in `u64`, which needs `n < 2^32`.
pub const MAX_N: usize = u32::MAX as usize - 1;

/// A placement of `n` queens, one per row and one per column.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "ArrangementRecord", into = "ArrangementRecord")]
pub struct Arrangement {
    perm: Vec<usize>,
}

/// Wire form of an arrangement: `{"n": 8, "perm": [3, 1, 7, 5, 8, 2, 4, 6]}`.
///
/// Unlike [`Arrangement`] this carries no invariant, so it can hold input that
/// still has to be checked (see [`validate`]).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrangementRecord {
    pub n: usize,
    pub perm: Vec<usize>,
}

impl TryFrom<ArrangementRecord> for Arrangement {
    type Error = Error;

    fn try_from(rec: ArrangementRecord) -> Result<Self> {
        if rec.perm.len() != rec.n {
            return Err(invalid(format!(
                "n = {} but perm has {} entries",
                rec.n,
                rec.perm.len()
            )));
        }
        Arrangement::new(rec.perm)
    }
}

impl From<Arrangement> for ArrangementRecord {
    fn from(a: Arrangement) -> Self {
        ArrangementRecord {
            n: a.n(),
            perm: a.perm,
        }
    }
}

impl Arrangement {
    /// Builds an arrangement from 1-based column indices, checking that they
    /// form a permutation of `1..=perm.len()`.
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        if n > MAX_N {
            return Err(Error::LimitExceeded { n, max: MAX_N });
        }
        let mut seen = vec![false; n + 1];
        for (row, &col) in perm.iter().enumerate() {
            if col == 0 || col > n {
                return Err(invalid(format!(
                    "row {} has column {} outside [1, {}]",
                    row + 1,
                    col,
                    n
                )));
            }
            if std::mem::replace(&mut seen[col], true) {
                return Err(Error::NotAPermutation { column: col });
            }
        }
        Ok(Arrangement { perm })
    }

    /// Caller guarantees `perm` is a permutation of `1..=perm.len()`.
    pub(crate) fn from_vec_unchecked(perm: Vec<usize>) -> Self {
        debug_assert!(Arrangement::new(perm.clone()).is_ok());
        Arrangement { perm }
    }

    /// The identity arrangement `[1, 2, ..., n]`.
    pub fn identity(n: usize) -> Self {
        Arrangement {
            perm: (1..=n).collect(),
        }
    }

    /// Board size `|A|`.
    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.perm
    }

    /// Column of the queen in row `row` (1-based).
    pub fn col(&self, row: usize) -> usize {
        self.perm[row - 1]
    }

    /// The inverse permutation: `inverse()[c - 1]` is the row holding column `c`.
    pub fn inverse(&self) -> Vec<usize> {
        let mut inv = vec![0; self.n()];
        for (i, &c) in self.perm.iter().enumerate() {
            inv[c - 1] = i + 1;
        }
        inv
    }

    /// True when no two queens share a diagonal.
    pub fn is_solution(&self) -> bool {
        diagonals_distinct(&self.perm)
    }
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for c in &self.perm {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
            first = false;
        }
        Ok(())
    }
}

/// Checks whether `perm` (1-based columns, one per row) is a solution of the
/// `n`-queens problem.
///
/// Runs in O(n). Entries outside `[1, n]` and a length other than `n` are input
/// errors; a repeated column or a shared diagonal yields `Ok(false)`.
pub fn validate(n: usize, perm: &[usize]) -> Result<bool> {
    if perm.len() != n {
        return Err(invalid(format!(
            "expected {} entries, found {}",
            n,
            perm.len()
        )));
    }
    if let Some((row, &col)) = perm.iter().enumerate().find(|(_, &c)| c == 0 || c > n) {
        return Err(invalid(format!(
            "row {} has column {} outside [1, {}]",
            row + 1,
            col,
            n
        )));
    }
    let mut cols = vec![false; n + 1];
    for &c in perm {
        if std::mem::replace(&mut cols[c], true) {
            return Ok(false);
        }
    }
    Ok(diagonals_distinct(perm))
}

/// Entries are assumed to lie in `[1, perm.len()]`.
fn diagonals_distinct(perm: &[usize]) -> bool {
    let n = perm.len();
    if n == 0 {
        return true;
    }
    // col - row + (n - 1) and col + row - 2 both land in [0, 2n - 2].
    let mut diff = vec![false; 2 * n - 1];
    let mut sum = vec![false; 2 * n - 1];
    for (i, &c) in perm.iter().enumerate() {
        let row = i + 1;
        let d = c + n - 1 - row;
        let s = c + row - 2;
        if std::mem::replace(&mut diff[d], true) || std::mem::replace(&mut sum[s], true) {
            return false;
        }
    }
    true
}
