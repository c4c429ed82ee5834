//! Which board sizes admit a solution built by composing smaller boards.
//!
//! A composition `A ⊗ B` of solutions is a solution only when `gcd(|B|, 6) = 1`
//! (so `|B| >= 5`), and `|A|` must itself admit a solution (`|A| >= 4`). A size
//! `n` is therefore Q-irreducible exactly when it is `p`, `2p`, `3p` or
//! `2^k 3^l` for a prime `p`.

use std::fmt;

use serde::Serialize;

use crate::compose::gcd;
use crate::error::{invalid, Result};

/// The closed form matched by a Q-irreducible size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum IrreducibleForm {
    /// `2^k 3^l`, including 1, 2, 3, 4, 6.
    SmoothTwoThree {
        k: u32,
        l: u32,
    },
    Prime {
        p: u64,
    },
    DoublePrime {
        p: u64,
    },
    TriplePrime {
        p: u64,
    },
}

impl fmt::Display for IrreducibleForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            IrreducibleForm::SmoothTwoThree { k, l } => write!(f, "2^{k}*3^{l}"),
            IrreducibleForm::Prime { p } => write!(f, "p (p = {p})"),
            IrreducibleForm::DoublePrime { p } => write!(f, "2p (p = {p})"),
            IrreducibleForm::TriplePrime { p } => write!(f, "3p (p = {p})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    QIrreducible {
        form: IrreducibleForm,
    },
    /// `n = inner * outer`: composing any solution of size `inner` with a
    /// criterion-satisfying board of size `outer` gives an `n`-solution.
    Reducible {
        inner: u64,
        outer: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IrreducibilityClass {
    pub n: u64,
    #[serde(flatten)]
    pub verdict: Verdict,
}

impl IrreducibilityClass {
    pub fn is_irreducible(&self) -> bool {
        matches!(self.verdict, Verdict::QIrreducible { .. })
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn strip(mut n: u64, p: u64) -> (u64, u32) {
    let mut e = 0;
    while n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    (n, e)
}

/// Smallest `outer >= 5` dividing `n` with `gcd(outer, 6) = 1` and
/// `n / outer >= 4`.
fn composition_split(n: u64) -> Option<(u64, u64)> {
    let mut b = 5;
    while b * 4 <= n {
        if n.is_multiple_of(b) && gcd(b as usize, 6) == 1 {
            return Some((n / b, b));
        }
        b += 1;
    }
    None
}

/// Classifies `n >= 1` by trial division.
pub fn classify(n: u64) -> Result<IrreducibilityClass> {
    if n == 0 {
        return Err(invalid("board size must be positive"));
    }
    let (rest, k) = strip(n, 2);
    let (rest, l) = strip(rest, 3);
    let form = if rest == 1 {
        Some(IrreducibleForm::SmoothTwoThree { k, l })
    } else if is_prime(n) {
        Some(IrreducibleForm::Prime { p: n })
    } else if n.is_multiple_of(2) && is_prime(n / 2) {
        Some(IrreducibleForm::DoublePrime { p: n / 2 })
    } else if n.is_multiple_of(3) && is_prime(n / 3) {
        Some(IrreducibleForm::TriplePrime { p: n / 3 })
    } else {
        None
    };
    let verdict = match form {
        Some(form) => Verdict::QIrreducible { form },
        None => {
            // rest has a prime factor q >= 5 and n / q >= 4 here
            let (inner, outer) =
                composition_split(n).expect("sizes outside the closed forms split");
            Verdict::Reducible { inner, outer }
        }
    };
    Ok(IrreducibilityClass { n, verdict })
}

/// Whether both `n - 1` and `n` are Q-irreducible. False for `n < 2`.
pub fn conjecture_applicable(n: u64) -> bool {
    n >= 2
        && classify(n).is_ok_and(|c| c.is_irreducible())
        && classify(n - 1).is_ok_and(|c| c.is_irreducible())
}
