//! Exhaustive width checks over full solution sets.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::enumerate::{count_with_prefix, fold_solutions, fundamental_classes_par, work_units};
use crate::error::{Error, Result};
use crate::irreducible::conjecture_applicable;
use crate::width::{orbit_min_width, WidthScanner};

/// Default ceiling for [`check_conjecture`].
pub const CONJECTURE_MAX_N: usize = 14;

/// Distribution of per-permutation minimum widths over all solutions of one
/// size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WidthCensus {
    pub n: usize,
    pub solutions: u64,
    /// width -> number of solutions with that minimum width
    pub histogram: BTreeMap<usize, u64>,
    pub min_width: Option<usize>,
    pub max_width: Option<usize>,
}

pub fn width_census(n: usize, jobs: usize) -> Result<WidthCensus> {
    let histogram = fold_solutions(
        n,
        jobs,
        || (WidthScanner::new(n), BTreeMap::<usize, u64>::new()),
        |(scanner, hist), p| *hist.entry(scanner.width(p)).or_default() += 1,
        |(s, mut a), (_, b)| {
            for (w, c) in b {
                *a.entry(w).or_default() += c;
            }
            (s, a)
        },
    )?
    .1;
    Ok(WidthCensus {
        n,
        solutions: histogram.values().sum(),
        min_width: histogram.keys().next().copied(),
        max_width: histogram.keys().next_back().copied(),
        histogram,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RemarkReport {
    pub census: WidthCensus,
    /// Sum of solution counts over all first-row placements.
    pub prefix_partition_total: u64,
    pub passes: bool,
}

/// Widths of every 15-queens solution: passes when none has width 1 or 2,
/// some has width 3, and the visit count matches the first-row partition.
pub fn check_remark_15(jobs: usize) -> Result<RemarkReport> {
    const N: usize = 15;
    let census = width_census(N, jobs)?;
    let prefix_partition_total = work_units(N, 1)?
        .iter()
        .map(|(p, _)| count_with_prefix(N, p))
        .sum::<Result<u64>>()?;
    let passes = census.min_width == Some(3) && census.solutions == prefix_partition_total;
    Ok(RemarkReport {
        census,
        prefix_partition_total,
        passes,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub n: usize,
    /// Both `n - 1` and `n` Q-irreducible.
    pub applicable: bool,
    pub classes: usize,
    /// orbit-minimum width -> number of classes
    pub histogram: BTreeMap<usize, u64>,
    pub worst_width: Option<usize>,
    /// First class (in representative order) attaining `worst_width`.
    pub worst_class: Option<Vec<usize>>,
    /// Every class has a member of width at most 4.
    pub passes: bool,
}

/// For every fundamental class of size `n`, the smallest width among its
/// members; passes when all are at most 4. The check is run even when the
/// size does not satisfy the irreducibility precondition, which is reported
/// in `applicable`.
pub fn check_conjecture(n: usize, jobs: usize) -> Result<ConjectureReport> {
    if n > CONJECTURE_MAX_N {
        return Err(Error::LimitExceeded {
            n,
            max: CONJECTURE_MAX_N,
        });
    }
    let classes = fundamental_classes_par(n, jobs)?;
    let widths: Vec<usize> = {
        use rayon::prelude::*;
        classes
            .par_iter()
            .map(|c| orbit_min_width(&c.representative))
            .collect()
    };
    let mut histogram = BTreeMap::new();
    for &w in &widths {
        *histogram.entry(w).or_default() += 1;
    }
    let worst_width = widths.iter().copied().max();
    let worst_class = worst_width.map(|w| {
        let k = widths.iter().position(|&x| x == w).unwrap();
        classes[k].representative.perm().to_vec()
    });
    Ok(ConjectureReport {
        n,
        applicable: conjecture_applicable(n as u64),
        classes: classes.len(),
        histogram,
        passes: worst_width.is_none_or(|w| w <= 4),
        worst_width,
        worst_class,
    })
}
