//! Exhaustive enumeration of solutions with column and diagonal bitmasks.
//!
//! Rows are filled top to bottom, columns tried in ascending order, so a
//! serial walk visits solutions in lexicographic order. Parallel runs split
//! the tree into work units (all non-attacking placements of the first few
//! rows) and merge per-unit results at the end.

use rayon::prelude::*;
use serde::Serialize;

use crate::arrangement::Arrangement;
use crate::error::{invalid, Error, Result};
use crate::symmetry::canonical_with_orbit_size;

/// Largest board size accepted by the enumerators.
pub const ENUM_MAX_N: usize = 17;

/// Partial placement of the first `row` rows.
///
/// Bit `c` of `cols` is column `c + 1`. The diagonal masks are kept relative
/// to the next row: `diag_up` holds the ascending diagonals (shifted left each
/// row), `diag_down` the descending ones (shifted right).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchState {
    pub n: usize,
    pub row: usize,
    pub cols: u32,
    pub diag_up: u32,
    pub diag_down: u32,
}

impl SearchState {
    pub fn root(n: usize) -> Result<Self> {
        check_ceiling(n)?;
        Ok(SearchState {
            n,
            row: 0,
            cols: 0,
            diag_up: 0,
            diag_down: 0,
        })
    }

    fn full(&self) -> u32 {
        ((1u64 << self.n) - 1) as u32
    }

    /// Columns (as a bitmask) where the next row's queen is not attacked.
    pub fn free(&self) -> u32 {
        !(self.cols | self.diag_up | self.diag_down) & self.full()
    }

    pub fn is_complete(&self) -> bool {
        self.row == self.n
    }

    /// Places the next row's queen at column `col` (1-based), if unattacked.
    pub fn place(&self, col: usize) -> Option<SearchState> {
        if col == 0 || col > self.n || self.is_complete() {
            return None;
        }
        let bit = 1u32 << (col - 1);
        (self.free() & bit != 0).then(|| self.push(bit))
    }

    #[inline]
    fn push(&self, bit: u32) -> SearchState {
        SearchState {
            n: self.n,
            row: self.row + 1,
            cols: self.cols | bit,
            diag_up: ((self.diag_up | bit) << 1) & self.full(),
            diag_down: (self.diag_down | bit) >> 1,
        }
    }
}

fn check_ceiling(n: usize) -> Result<()> {
    if n == 0 {
        return Err(invalid("board size must be positive"));
    }
    if n > ENUM_MAX_N {
        return Err(Error::LimitExceeded { n, max: ENUM_MAX_N });
    }
    Ok(())
}

fn count_from(s: SearchState) -> u64 {
    if s.is_complete() {
        return 1;
    }
    let mut free = s.free();
    let mut total = 0;
    while free != 0 {
        let bit = free & free.wrapping_neg();
        free ^= bit;
        total += count_from(s.push(bit));
    }
    total
}

fn walk_from(s: SearchState, path: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if s.is_complete() {
        visit(path);
        return;
    }
    let mut free = s.free();
    while free != 0 {
        let bit = free & free.wrapping_neg();
        free ^= bit;
        path.push(bit.trailing_zeros() as usize + 1);
        walk_from(s.push(bit), path, visit);
        path.pop();
    }
}

/// Replays `prefix` from the root, rejecting attacking or malformed prefixes.
fn state_after(n: usize, prefix: &[usize]) -> Result<SearchState> {
    let mut s = SearchState::root(n)?;
    if prefix.len() > n {
        return Err(invalid(format!("prefix longer than n = {n}")));
    }
    for (k, &col) in prefix.iter().enumerate() {
        if col == 0 || col > n {
            return Err(invalid(format!("prefix column {col} outside [1, {n}]")));
        }
        s = s.place(col).ok_or(Error::AttackingPrefix { row: k + 1 })?;
    }
    Ok(s)
}

/// Visits every solution of size `n` once, in lexicographic order, and
/// returns how many there were.
pub fn enumerate_solutions<F: FnMut(&[usize])>(n: usize, visit: F) -> Result<u64> {
    enumerate_with_prefix(n, &[], visit)
}

/// Like [`enumerate_solutions`], restricted to solutions whose first rows
/// are `prefix`.
pub fn enumerate_with_prefix<F: FnMut(&[usize])>(
    n: usize,
    prefix: &[usize],
    mut visit: F,
) -> Result<u64> {
    let start = state_after(n, prefix)?;
    let mut path = Vec::with_capacity(n);
    path.extend_from_slice(prefix);
    let mut count = 0u64;
    walk_from(start, &mut path, &mut |p| {
        count += 1;
        visit(p)
    });
    Ok(count)
}

/// All solutions of size `n` in lexicographic order.
pub fn all_solutions(n: usize) -> Result<Vec<Arrangement>> {
    let mut out = Vec::new();
    enumerate_solutions(n, |p| out.push(Arrangement::from_vec_unchecked(p.to_vec())))?;
    Ok(out)
}

/// Number of solutions extending `prefix`, the columns of the first
/// `prefix.len()` rows.
pub fn count_with_prefix(n: usize, prefix: &[usize]) -> Result<u64> {
    Ok(count_from(state_after(n, prefix)?))
}

/// All non-attacking placements of the first `depth` rows, in lexicographic
/// order, with their search states.
pub fn work_units(n: usize, depth: usize) -> Result<Vec<(Vec<usize>, SearchState)>> {
    let root = SearchState::root(n)?;
    let depth = depth.min(n);
    let mut out = Vec::new();
    fn rec(
        s: SearchState,
        depth: usize,
        path: &mut Vec<usize>,
        out: &mut Vec<(Vec<usize>, SearchState)>,
    ) {
        if s.row == depth {
            out.push((path.clone(), s));
            return;
        }
        let mut free = s.free();
        while free != 0 {
            let bit = free & free.wrapping_neg();
            free ^= bit;
            path.push(bit.trailing_zeros() as usize + 1);
            rec(s.push(bit), depth, path, out);
            path.pop();
        }
    }
    rec(root, depth, &mut Vec::new(), &mut out);
    Ok(out)
}

fn default_depth(n: usize) -> usize {
    if n >= 11 {
        3
    } else {
        2.min(n)
    }
}

fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    if jobs == 0 {
        return f();
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool")
        .install(f)
}

/// Parallel map-reduce over all solutions.
///
/// Each work unit folds its solutions (in lexicographic order) into a fresh
/// accumulator from `init`; unit results are merged left to right in prefix
/// order, so an associative `merge` gives a result independent of scheduling.
/// `jobs = 0` uses rayon's default pool.
pub fn fold_solutions<T, I, F, M>(n: usize, jobs: usize, init: I, fold: F, merge: M) -> Result<T>
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    F: Fn(&mut T, &[usize]) + Sync + Send,
    M: Fn(T, T) -> T + Sync + Send,
{
    let units = work_units(n, default_depth(n))?;
    Ok(with_jobs(jobs, || {
        units
            .into_par_iter()
            .map(|(prefix, state)| {
                let mut acc = init();
                let mut path = prefix;
                walk_from(state, &mut path, &mut |p| fold(&mut acc, p));
                acc
            })
            .reduce(&init, &merge)
    }))
}

/// Number of solutions, counted in parallel without materializing them.
pub fn count_solutions(n: usize, jobs: usize) -> Result<u64> {
    let units = work_units(n, default_depth(n))?;
    Ok(with_jobs(jobs, || {
        units.into_par_iter().map(|(_, s)| count_from(s)).sum()
    }))
}

/// One dihedral orbit of solutions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FundamentalClass {
    /// Lexicographically least member of the orbit.
    #[serde(rename = "rep", serialize_with = "ser_perm")]
    pub representative: Arrangement,
    /// Number of distinct solutions in the orbit (1, 2, 4 or 8).
    #[serde(rename = "orbit")]
    pub orbit_size: usize,
}

fn ser_perm<S: serde::Serializer>(a: &Arrangement, s: S) -> std::result::Result<S::Ok, S::Error> {
    a.perm().serialize(s)
}

/// One class per dihedral orbit, sorted by representative.
pub fn fundamental_classes(n: usize) -> Result<Vec<FundamentalClass>> {
    fundamental_classes_par(n, 0)
}

pub fn fundamental_classes_par(n: usize, jobs: usize) -> Result<Vec<FundamentalClass>> {
    let mut classes = fold_solutions(
        n,
        jobs,
        Vec::new,
        |acc: &mut Vec<FundamentalClass>, p| {
            let a = Arrangement::from_vec_unchecked(p.to_vec());
            let (rep, orbit_size) = canonical_with_orbit_size(&a);
            if rep == a {
                acc.push(FundamentalClass {
                    representative: rep,
                    orbit_size,
                });
            }
        },
        |mut a, mut b| {
            a.append(&mut b);
            a
        },
    )?;
    classes.sort_by(|x, y| x.representative.cmp(&y.representative));
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let expected = [1u64, 0, 0, 2, 10, 4, 40, 92, 352, 724];
        for (k, &q) in expected.iter().enumerate() {
            let n = k + 1;
            assert_eq!(enumerate_solutions(n, |_| {}).unwrap(), q, "n = {n}");
            assert_eq!(count_solutions(n, 2).unwrap(), q, "n = {n}");
            assert_eq!(count_with_prefix(n, &[]).unwrap(), q);
        }
    }

    #[test]
    fn prefix_streams_are_the_matching_slice() {
        let all: Vec<Vec<usize>> = all_solutions(8)
            .unwrap()
            .into_iter()
            .map(|a| a.into_vec())
            .collect();
        for prefix in [&[][..], &[1], &[2, 4], &[4, 1, 5]] {
            let mut seen = Vec::new();
            let count = enumerate_with_prefix(8, prefix, |p| seen.push(p.to_vec())).unwrap();
            let expected: Vec<_> = all
                .iter()
                .filter(|p| p.starts_with(prefix))
                .cloned()
                .collect();
            assert_eq!(seen, expected);
            assert_eq!(count, count_with_prefix(8, prefix).unwrap());
        }
        assert_eq!(
            enumerate_with_prefix(8, &[1, 2], |_| {}),
            Err(Error::AttackingPrefix { row: 2 })
        );
    }

    #[test]
    fn n4_solutions_in_order() {
        let sols: Vec<Vec<usize>> = all_solutions(4)
            .unwrap()
            .into_iter()
            .map(Arrangement::into_vec)
            .collect();
        assert_eq!(sols, vec![vec![2, 4, 1, 3], vec![3, 1, 4, 2]]);
    }

    #[test]
    fn lexicographic_and_valid() {
        let sols = all_solutions(8).unwrap();
        assert!(sols.windows(2).all(|w| w[0] < w[1]));
        assert!(sols.iter().all(Arrangement::is_solution));
    }

    #[test]
    fn prefix_examples() {
        assert_eq!(count_with_prefix(4, &[2]), Ok(1));
        assert_eq!(count_with_prefix(4, &[1]), Ok(0));
        assert_eq!(count_with_prefix(8, &[2, 4, 6, 8, 3, 1, 7, 5]), Ok(1));
        assert_eq!(
            count_with_prefix(4, &[1, 2]),
            Err(Error::AttackingPrefix { row: 2 })
        );
        assert_eq!(
            count_with_prefix(4, &[1, 1]),
            Err(Error::AttackingPrefix { row: 2 })
        );
        assert!(matches!(
            count_with_prefix(4, &[5]),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn ceiling() {
        assert_eq!(
            enumerate_solutions(18, |_| {}),
            Err(Error::LimitExceeded { n: 18, max: 17 })
        );
        assert!(count_solutions(0, 1).is_err());
    }

    #[test]
    fn partition_identity() {
        for n in 1..=12 {
            let q = count_solutions(n, 0).unwrap();
            for depth in 1..=2 {
                let sum: u64 = work_units(n, depth)
                    .unwrap()
                    .iter()
                    .map(|(p, _)| count_with_prefix(n, p).unwrap())
                    .sum();
                assert_eq!(sum, q, "n = {n}, depth = {depth}");
            }
        }
    }

    #[test]
    fn fundamental_class_examples() {
        let c4 = fundamental_classes(4).unwrap();
        assert_eq!(c4.len(), 1);
        assert_eq!(c4[0].orbit_size, 2);
        assert_eq!(c4[0].representative.perm(), &[2, 4, 1, 3]);
        let c1 = fundamental_classes(1).unwrap();
        assert_eq!((c1.len(), c1[0].orbit_size), (1, 1));
        let c8 = fundamental_classes(8).unwrap();
        assert_eq!(c8.len(), 12);
        assert_eq!(c8.iter().map(|c| c.orbit_size).sum::<usize>(), 92);
        assert!(fundamental_classes(3).unwrap().is_empty());
    }

    #[test]
    fn orbit_sizes_divide_eight() {
        for n in 1..=9 {
            let classes = fundamental_classes_par(n, 3).unwrap();
            let total: usize = classes.iter().map(|c| c.orbit_size).sum();
            assert_eq!(total as u64, count_solutions(n, 1).unwrap());
            assert!(classes.iter().all(|c| 8 % c.orbit_size == 0));
        }
    }

    #[test]
    fn class_json() {
        let s = serde_json::to_string(&fundamental_classes(4).unwrap()).unwrap();
        assert_eq!(s, r#"[{"rep":[2,4,1,3],"orbit":2}]"#);
    }
}
