//! The dihedral group of the square acting on arrangements.

use std::fmt;
use std::str::FromStr;

use crate::arrangement::Arrangement;
use crate::error::{invalid, Error};

/// One of the eight symmetries of the board.
///
/// `ReflectRotK` means: rotate by K degrees first, then reflect.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymmetryOp {
    Identity,
    Rot90,
    Rot180,
    Rot270,
    Reflect,
    ReflectRot90,
    ReflectRot180,
    ReflectRot270,
}

impl SymmetryOp {
    pub const ALL: [SymmetryOp; 8] = [
        SymmetryOp::Identity,
        SymmetryOp::Rot90,
        SymmetryOp::Rot180,
        SymmetryOp::Rot270,
        SymmetryOp::Reflect,
        SymmetryOp::ReflectRot90,
        SymmetryOp::ReflectRot180,
        SymmetryOp::ReflectRot270,
    ];

    fn from_parts(quarter_turns: u8, reflect: bool) -> Self {
        Self::ALL[(quarter_turns % 4) as usize + if reflect { 4 } else { 0 }]
    }

    /// Number of quarter turns applied before the optional reflection.
    pub fn quarter_turns(self) -> u8 {
        (self as u8) % 4
    }

    pub fn reflects(self) -> bool {
        (self as u8) >= 4
    }

    /// The op equal to applying `self` and then `next`.
    ///
    /// With R the quarter turn and F the reflection, F R F = R^-1, so a
    /// reflection in `self` reverses the direction of `next`'s turns.
    pub fn then(self, next: SymmetryOp) -> SymmetryOp {
        let k1 = self.quarter_turns();
        let k2 = next.quarter_turns();
        let k = if self.reflects() {
            k1 + 4 - k2
        } else {
            k1 + k2
        };
        SymmetryOp::from_parts(k, self.reflects() ^ next.reflects())
    }

    pub fn inverse(self) -> SymmetryOp {
        if self.reflects() {
            self
        } else {
            SymmetryOp::from_parts(4 - self.quarter_turns(), false)
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SymmetryOp::Identity => "identity",
            SymmetryOp::Rot90 => "rot90",
            SymmetryOp::Rot180 => "rot180",
            SymmetryOp::Rot270 => "rot270",
            SymmetryOp::Reflect => "reflect",
            SymmetryOp::ReflectRot90 => "reflect-rot90",
            SymmetryOp::ReflectRot180 => "reflect-rot180",
            SymmetryOp::ReflectRot270 => "reflect-rot270",
        }
    }
}

impl fmt::Display for SymmetryOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SymmetryOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        SymmetryOp::ALL
            .into_iter()
            .find(|op| op.name() == s)
            .ok_or_else(|| invalid(format!("unknown symmetry '{s}'")))
    }
}

/// Quarter turn: the queen at (row r, column c) moves to (row c, column n+1-r).
fn rot90(perm: &[usize]) -> Vec<usize> {
    let n = perm.len();
    let mut out = vec![0; n];
    for (i, &c) in perm.iter().enumerate() {
        out[c - 1] = n - i;
    }
    out
}

fn reflect_in_place(perm: &mut [usize]) {
    let n = perm.len();
    for c in perm.iter_mut() {
        *c = n + 1 - *c;
    }
}

/// Applies a board symmetry. Solutions map to solutions.
pub fn apply_symmetry(a: &Arrangement, op: SymmetryOp) -> Arrangement {
    let mut perm = a.perm().to_vec();
    for _ in 0..op.quarter_turns() {
        perm = rot90(&perm);
    }
    if op.reflects() {
        reflect_in_place(&mut perm);
    }
    Arrangement::from_vec_unchecked(perm)
}

/// All eight images of `a`, indexed like [`SymmetryOp::ALL`].
pub fn orbit(a: &Arrangement) -> [Arrangement; 8] {
    let r0 = a.perm().to_vec();
    let r1 = rot90(&r0);
    let r2 = rot90(&r1);
    let r3 = rot90(&r2);
    let flip = |p: &Vec<usize>| {
        let mut q = p.clone();
        reflect_in_place(&mut q);
        Arrangement::from_vec_unchecked(q)
    };
    [
        Arrangement::from_vec_unchecked(r0.clone()),
        Arrangement::from_vec_unchecked(r1.clone()),
        Arrangement::from_vec_unchecked(r2.clone()),
        Arrangement::from_vec_unchecked(r3.clone()),
        flip(&r0),
        flip(&r1),
        flip(&r2),
        flip(&r3),
    ]
}

/// Lexicographically least image of `a` under the eight symmetries.
pub fn canonical_form(a: &Arrangement) -> Arrangement {
    orbit(a).into_iter().min().expect("orbit is non-empty")
}

/// Canonical form together with the number of distinct images of `a`.
pub fn canonical_with_orbit_size(a: &Arrangement) -> (Arrangement, usize) {
    let mut images = orbit(a).to_vec();
    images.sort();
    images.dedup();
    let size = images.len();
    (images.swap_remove(0), size)
}
