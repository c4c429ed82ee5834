//! Plain-text formats: permutations, placements and ASCII boards.

use crate::arrangement::Arrangement;
use crate::error::{invalid, Result};

/// Parses whitespace-separated integers, e.g. `"3 1 7 5 8 2 4 6"`. The
/// values are not checked against any board size.
pub fn parse_perm(s: &str) -> Result<Vec<usize>> {
    s.split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| invalid(format!("'{t}' is not a non-negative integer")))
        })
        .collect()
}

/// Parses `"r,c;r,c;..."`. Whitespace around tokens is ignored and an empty
/// string is the empty placement.
pub fn parse_placement(s: &str) -> Result<Vec<(usize, usize)>> {
    s.split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|pair| {
            let (r, c) = pair
                .split_once(',')
                .ok_or_else(|| invalid(format!("'{pair}' is not of the form r,c")))?;
            let num = |x: &str| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| invalid(format!("'{}' is not an integer", x.trim())))
            };
            Ok((num(r)?, num(c)?))
        })
        .collect()
}

pub fn format_placement(queens: &[(usize, usize)]) -> String {
    queens
        .iter()
        .map(|(r, c)| format!("{r},{c}"))
        .collect::<Vec<_>>()
        .join(";")
}

/// `n` lines of `n` characters: `Q` for a queen, `.` otherwise.
pub fn render_board(a: &Arrangement) -> String {
    let n = a.n();
    let mut out = String::with_capacity(n * (n + 1));
    for &c in a.perm() {
        for col in 1..=n {
            out.push(if col == c { 'Q' } else { '.' });
        }
        out.push('\n');
    }
    out
}
