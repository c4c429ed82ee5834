//! Explicit width-at-most-3 solutions for every `n >= 4`.
//!
//! Each residue class of `n` gets its own family of doubling maps modulo
//! `n + 1`:
//!
//! | n            | family            | width |
//! |--------------|-------------------|-------|
//! | 0, 4 mod 6   | `2i`              | 1     |
//! | 1, 5 mod 6   | `2i`, `2i+1`      | 2     |
//! | 8 mod 12     | `2i`, `2i±2`      | 2     |
//! | 2 mod 12     | `2i+4`/`2i`, `2i+2`, `2i+4` | 3 |
//! | 3 mod 6      | `2i+2`, `2i+4`, `2i+5` | 3 |
//!
//! All comparisons against `n/2` are done on doubled integers.

use std::fmt;

use crate::arrangement::{Arrangement, MAX_N};
use crate::error::{Error, Result};
use crate::queen_fn::{LinearMap, QueenFunction, Segment};

/// The formula family used for a given board size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LemmaFamily {
    /// `n = 12k - 4`: `2i` up to `n/2`, then `2i+2` on odd and `2i-2` on even rows.
    L1TwelveKMinus4,
    /// `n = 6k` or `6k + 4`: `2i` everywhere.
    L2SixKOrSixKPlus4,
    /// `n = 6k + 1` or `6k + 5`: `2i` below `n/2`, `2i+1` above.
    L3SixKPlus1OrPlus5,
    /// `n = 12k + 2`: `2i+4`/`2i` below `n/2`, `2i+2` up to `n-1`, `2i+4` at `n`.
    L4TwelveKPlus2,
    /// `n = 6k + 3`: `2i+2`, then `2i+4` at `(n-1)/2`, then `2i+5`.
    L5SixKPlus3,
}

impl LemmaFamily {
    /// Number of segments the family's Queen function uses.
    pub fn claimed_width(self) -> usize {
        match self {
            LemmaFamily::L2SixKOrSixKPlus4 => 1,
            LemmaFamily::L1TwelveKMinus4 | LemmaFamily::L3SixKPlus1OrPlus5 => 2,
            LemmaFamily::L4TwelveKPlus2 | LemmaFamily::L5SixKPlus3 => 3,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            LemmaFamily::L1TwelveKMinus4 => "L1_12k_minus_4",
            LemmaFamily::L2SixKOrSixKPlus4 => "L2_6k_or_6k4",
            LemmaFamily::L3SixKPlus1OrPlus5 => "L3_6k1_or_6k5",
            LemmaFamily::L4TwelveKPlus2 => "L4_12k_plus_2",
            LemmaFamily::L5SixKPlus3 => "L5_6k3",
        }
    }
}

impl fmt::Display for LemmaFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Picks the formula family for `n >= 4`.
pub fn dispatch(n: usize) -> Result<LemmaFamily> {
    if n <= 3 {
        return Err(Error::NoSolutionExists(n));
    }
    Ok(match n % 6 {
        0 | 4 => LemmaFamily::L2SixKOrSixKPlus4,
        1 | 5 => LemmaFamily::L3SixKPlus1OrPlus5,
        3 => LemmaFamily::L5SixKPlus3,
        _ if n % 12 == 2 => LemmaFamily::L4TwelveKPlus2,
        _ => LemmaFamily::L1TwelveKMinus4,
    })
}

/// The explicit Queen function for `n >= 4`, with exactly
/// `dispatch(n).claimed_width()` segments.
pub fn build_queen_function(n: usize) -> Result<QueenFunction> {
    let family = dispatch(n)?;
    if n > MAX_N {
        return Err(Error::LimitExceeded { n, max: MAX_N });
    }
    let m = |a, b| LinearMap::new(a, b);
    let segments = match family {
        LemmaFamily::L2SixKOrSixKPlus4 => vec![Segment::uniform(1, n, m(2, 0))],
        LemmaFamily::L3SixKPlus1OrPlus5 => {
            // n is odd, so no row sits exactly at n/2
            vec![
                Segment::uniform(1, n / 2, m(2, 0)),
                Segment::uniform(n / 2 + 1, n, m(2, 1)),
            ]
        }
        LemmaFamily::L1TwelveKMinus4 => vec![
            Segment::uniform(1, n / 2, m(2, 0)),
            // 2i - 2 is stored as 2i + (n - 1)
            Segment::new(n / 2 + 1, n, m(2, 2), m(2, n - 1)),
        ],
        LemmaFamily::L4TwelveKPlus2 => vec![
            Segment::new(1, n / 2 - 1, m(2, 4), m(2, 0)),
            Segment::uniform(n / 2, n - 1, m(2, 2)),
            Segment::uniform(n, n, m(2, 4)),
        ],
        LemmaFamily::L5SixKPlus3 => {
            let mid = (n - 1) / 2;
            vec![
                Segment::uniform(1, mid - 1, m(2, 2)),
                Segment::uniform(mid, mid, m(2, 4)),
                Segment::uniform(mid + 1, n, m(2, 5)),
            ]
        }
    };
    Ok(QueenFunction::from_parts_unchecked(n, segments))
}

/// A solution of the `n`-queens problem in O(n) time and memory.
///
/// `n = 1` gives `[1]`; `n = 2, 3` have no solution.
pub fn solve(n: usize) -> Result<Arrangement> {
    match n {
        0 => Err(Error::InvalidInput("board size must be positive".into())),
        1 => Ok(Arrangement::identity(1)),
        2 | 3 => Err(Error::NoSolutionExists(n)),
        _ => build_queen_function(n)?.materialize(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dispatch_examples() {
        assert_eq!(dispatch(8), Ok(LemmaFamily::L1TwelveKMinus4));
        assert_eq!(dispatch(14), Ok(LemmaFamily::L4TwelveKPlus2));
        assert_eq!(dispatch(9), Ok(LemmaFamily::L5SixKPlus3));
        assert_eq!(dispatch(4), Ok(LemmaFamily::L2SixKOrSixKPlus4));
        assert_eq!(dispatch(6), Ok(LemmaFamily::L2SixKOrSixKPlus4));
        assert_eq!(dispatch(5), Ok(LemmaFamily::L3SixKPlus1OrPlus5));
        assert_eq!(dispatch(7), Ok(LemmaFamily::L3SixKPlus1OrPlus5));
        assert_eq!(dispatch(3), Err(Error::NoSolutionExists(3)));
        assert_eq!(dispatch(2), Err(Error::NoSolutionExists(2)));
    }

    #[test]
    fn dispatch_depends_only_on_n_mod_12() {
        for n in 4..200 {
            assert_eq!(dispatch(n), dispatch(n % 12 + 12), "n = {n}");
        }
    }

    #[test]
    fn frozen_constructions() {
        let cases: [(usize, &[usize]); 5] = [
            (5, &[2, 4, 1, 3, 5]),
            (6, &[2, 4, 6, 1, 3, 5]),
            (8, &[2, 4, 6, 8, 3, 1, 7, 5]),
            (9, &[4, 6, 8, 2, 5, 7, 9, 1, 3]),
            (14, &[6, 4, 10, 8, 14, 12, 1, 3, 5, 7, 9, 11, 13, 2]),
        ];
        for (n, want) in cases {
            let a = solve(n).unwrap();
            assert_eq!(a.perm(), want, "n = {n}");
            assert!(a.is_solution());
        }
    }

    #[test]
    fn small_boards() {
        assert_eq!(solve(1).unwrap().perm(), &[1]);
        assert_eq!(solve(2), Err(Error::NoSolutionExists(2)));
        assert_eq!(solve(3), Err(Error::NoSolutionExists(3)));
        assert!(solve(0).is_err());
    }

    #[test]
    fn widths_match_family_and_solutions_validate() {
        for n in 4..=600 {
            let f = build_queen_function(n).unwrap();
            assert_eq!(f.width(), dispatch(n).unwrap().claimed_width(), "n = {n}");
            assert!(f.width() <= 3);
            let a = f.materialize().unwrap();
            assert!(a.is_solution(), "n = {n}");
        }
    }

    #[test]
    fn doubling_identity_for_n_0_or_4_mod_6() {
        for n in (4..500).filter(|n| n % 6 == 0 || n % 6 == 4) {
            let a = solve(n).unwrap();
            for (i, &c) in a.perm().iter().enumerate() {
                assert_eq!(c, 2 * (i + 1) % (n + 1));
            }
        }
    }

    #[test]
    fn deterministic() {
        assert_eq!(solve(1234).unwrap(), solve(1234).unwrap());
    }
}
