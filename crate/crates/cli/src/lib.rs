//! The `nqueens` command line.
//!
//! [`run`] takes the argument list and the three standard streams, so the
//! whole surface is testable in-process. Exit codes: `0` for success or a
//! true verdict, `1` for a false verdict (invalid board, failed criterion,
//! no completion, no solution), `2` for usage and input errors.

use std::ffi::OsString;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use nqueens_core::text::{parse_perm, parse_placement, render_board};
use nqueens_core::{
    check_conjecture, check_remark_15, classify, complete, complete_via_queen_functions, compose,
    conjecture_applicable, count_solutions, count_with_prefix, criterion, enumerate_with_prefix,
    fundamental_classes_par, generalized_compose, min_width, solve, symmetry, validate, witness,
    Arrangement, Error, LinearMap, PartialPlacement, QueenFunction, Verdict,
};

#[derive(Debug, Parser)]
#[command(
    name = "nqueens",
    version,
    about = "N-Queens constructions, composition and width analysis"
)]
struct Cli {
    /// Output format for commands that print boards or reports.
    #[arg(long, value_enum, global = true, default_value_t = Format::Perm)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Space-separated columns, or plain text for reports.
    Perm,
    /// `Q`/`.` grid, or plain text for reports.
    Board,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Backtrack,
    Qf,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Construct a solution from the closed-form queen functions.
    Solve { n: usize },
    /// Check that a permutation is a solution.
    Validate {
        #[arg(long, conflicts_with = "file", required_unless_present = "file")]
        perm: Option<String>,
        /// JSON `{"n", "perm"}` or a permutation line; `-` reads stdin.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Compose A with B, or A1..Ak with B when `--generalized` is given.
    Compose {
        /// `A B`, or only `B` with `--generalized`.
        #[arg(num_args = 1..=2, required = true)]
        files: Vec<PathBuf>,
        /// Comma-separated list of inner arrangements, one per row of B.
        #[arg(long, value_delimiter = ',')]
        generalized: Option<Vec<PathBuf>>,
    },
    /// Residues of B(i) - i and B(i) + i modulo n.
    Criterion {
        #[arg(long)]
        perm: String,
    },
    /// The doubling permutation 2i mod n, for gcd(n, 6) = 1.
    Witness { n: usize },
    /// Q-irreducibility of n.
    Classify { n: u64 },
    /// Minimum queen-function width of a permutation.
    Width {
        #[arg(long)]
        perm: String,
        /// Minimize over the eight rotations and reflections.
        #[arg(long)]
        orbit: bool,
    },
    /// List or count all solutions of size n.
    Enumerate {
        n: usize,
        #[arg(long)]
        count_only: bool,
        /// One representative per symmetry class.
        #[arg(long, conflicts_with = "prefix")]
        fundamental: bool,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Fixed columns of the first rows.
        #[arg(long)]
        prefix: Option<String>,
    },
    /// Width census of all 15-queens solutions.
    #[command(name = "check-remark15")]
    CheckRemark15 {
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Orbit-minimum width of every symmetry class of size n.
    CheckConjecture {
        n: usize,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Extend a partial placement to a solution.
    Complete {
        n: usize,
        /// `r,c;r,c;...`
        #[arg(long, default_value = "")]
        queens: String,
        #[arg(long, value_enum, default_value_t = Method::Backtrack)]
        method: Method,
        #[arg(long, default_value_t = 4)]
        max_width: usize,
    },
}

/// Exit status of a finished command.
const OK: i32 = 0;
const FALSE: i32 = 1;
const USAGE: i32 = 2;

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let mut ctx = Ctx {
        format: cli.format,
        stdin,
        out,
        err,
    };
    match ctx.dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            if e.downcast_ref::<io::Error>()
                .is_some_and(|io| io.kind() == io::ErrorKind::BrokenPipe)
            {
                return OK;
            }
            let code = match e.downcast_ref::<Error>() {
                Some(Error::NoSolutionExists(_) | Error::NoWitness(_)) => FALSE,
                _ => USAGE,
            };
            let _ = writeln!(ctx.err, "error: {e:#}");
            code
        }
    }
}

struct Ctx<'a> {
    format: Format,
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

/// Input record for `--file`: unlike [`Arrangement`], any vector is accepted
/// so that `validate` can report duplicates as a verdict.
#[derive(Deserialize)]
struct RawRecord {
    n: usize,
    perm: Vec<usize>,
}

#[derive(Serialize)]
struct ValidateJson {
    n: usize,
    valid: bool,
}

#[derive(Serialize)]
struct WidthJson<'a> {
    width: usize,
    perm: &'a [usize],
    function: &'a QueenFunction,
}

type CmdResult = anyhow::Result<i32>;

impl Ctx<'_> {
    fn dispatch(&mut self, command: Command) -> CmdResult {
        match command {
            Command::Solve { n } => self.arrangement(&solve(n)?),
            Command::Validate { perm, file } => {
                let perm = match (perm, file) {
                    (Some(text), _) => parse_perm(&text)?,
                    (None, Some(path)) => self.load_raw(&path)?,
                    (None, None) => bail!("one of --perm or --file is required"),
                };
                self.validate(&perm)
            }
            Command::Compose { files, generalized } => self.compose(&files, generalized.as_deref()),
            Command::Criterion { perm } => self.criterion(&perm),
            Command::Witness { n } => self.arrangement(&witness(n)?),
            Command::Classify { n } => self.classify(n),
            Command::Width { perm, orbit } => self.width(&perm, orbit),
            Command::Enumerate {
                n,
                count_only,
                fundamental,
                jobs,
                prefix,
            } => {
                let prefix = prefix
                    .as_deref()
                    .map(parse_perm)
                    .transpose()?
                    .unwrap_or_default();
                self.enumerate(n, count_only, fundamental, jobs, &prefix)
            }
            Command::CheckRemark15 { jobs } => self.check_remark15(jobs),
            Command::CheckConjecture { n, jobs } => self.check_conjecture(n, jobs),
            Command::Complete {
                n,
                queens,
                method,
                max_width,
            } => self.complete(n, &queens, method, max_width),
        }
    }

    fn read_source(&mut self, path: &Path) -> anyhow::Result<String> {
        if path == Path::new("-") {
            let mut s = String::new();
            self.stdin
                .read_to_string(&mut s)
                .context("reading standard input")?;
            Ok(s)
        } else {
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
        }
    }

    /// JSON record, JSON array or a permutation line.
    fn load_raw(&mut self, path: &Path) -> anyhow::Result<Vec<usize>> {
        let text = self.read_source(path)?;
        let trimmed = text.trim_start();
        if trimmed.starts_with('{') {
            let rec: RawRecord = serde_json::from_str(trimmed)
                .with_context(|| format!("parsing {}", path.display()))?;
            if rec.n != rec.perm.len() {
                bail!(
                    "{}: n = {} but perm has {} entries",
                    path.display(),
                    rec.n,
                    rec.perm.len()
                );
            }
            Ok(rec.perm)
        } else if trimmed.starts_with('[') {
            serde_json::from_str(trimmed).with_context(|| format!("parsing {}", path.display()))
        } else {
            Ok(parse_perm(&text)?)
        }
    }

    fn load_arrangement(&mut self, path: &Path) -> anyhow::Result<Arrangement> {
        let perm = self.load_raw(path)?;
        Arrangement::new(perm).with_context(|| format!("{}", path.display()))
    }

    fn arrangement(&mut self, a: &Arrangement) -> CmdResult {
        self.write_arrangement(a)?;
        Ok(OK)
    }

    fn write_arrangement(&mut self, a: &Arrangement) -> io::Result<()> {
        match self.format {
            Format::Perm => writeln!(self.out, "{a}"),
            Format::Board => write!(self.out, "{}", render_board(a)),
            Format::Json => writeln!(self.out, "{}", serde_json::to_string(a)?),
        }
    }

    fn json<T: Serialize>(&mut self, value: &T) -> io::Result<()> {
        writeln!(self.out, "{}", serde_json::to_string(value)?)
    }

    fn validate(&mut self, perm: &[usize]) -> CmdResult {
        let valid = validate(perm.len(), perm)?;
        if self.format == Format::Json {
            self.json(&ValidateJson {
                n: perm.len(),
                valid,
            })?;
        } else {
            writeln!(self.out, "{}", if valid { "valid" } else { "invalid" })?;
        }
        Ok(if valid { OK } else { FALSE })
    }

    fn compose(&mut self, files: &[PathBuf], generalized: Option<&[PathBuf]>) -> CmdResult {
        let result = match generalized {
            Some(parts) => {
                let [b] = files else {
                    bail!("with --generalized give only the outer arrangement B");
                };
                let parts = parts
                    .iter()
                    .map(|p| self.load_arrangement(p))
                    .collect::<anyhow::Result<Vec<_>>>()?;
                let b = self.load_arrangement(b)?;
                generalized_compose(&parts, &b)?
            }
            None => {
                let [a, b] = files else {
                    bail!("compose needs two arrangements, A and B");
                };
                let a = self.load_arrangement(a)?;
                let b = self.load_arrangement(b)?;
                compose(&a, &b)?
            }
        };
        self.write_arrangement(&result)?;
        if result.is_solution() {
            Ok(OK)
        } else {
            writeln!(
                self.err,
                "composition of size {} is not a solution",
                result.n()
            )?;
            Ok(FALSE)
        }
    }

    fn criterion(&mut self, perm: &str) -> CmdResult {
        let b = Arrangement::new(parse_perm(perm)?)?;
        let r = criterion(&b);
        if self.format == Format::Json {
            self.json(&r)?;
        } else {
            let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
            let yes_no = |b: bool| if b { "yes" } else { "no" };
            writeln!(self.out, "B(i) - i mod {}: {}", r.n, join(&r.diff_residues))?;
            writeln!(self.out, "B(i) + i mod {}: {}", r.n, join(&r.sum_residues))?;
            writeln!(
                self.out,
                "differences complete: {}",
                yes_no(r.diff_complete)
            )?;
            writeln!(self.out, "sums complete: {}", yes_no(r.sum_complete))?;
            writeln!(
                self.out,
                "criterion: {}",
                if r.passes { "passes" } else { "fails" }
            )?;
        }
        Ok(if r.passes { OK } else { FALSE })
    }

    fn classify(&mut self, n: u64) -> CmdResult {
        let c = classify(n)?;
        if self.format == Format::Json {
            self.json(&c)?;
        } else {
            match c.verdict {
                Verdict::QIrreducible { form } => writeln!(self.out, "{n}: Q-irreducible, {form}")?,
                Verdict::Reducible { inner, outer } => {
                    writeln!(self.out, "{n}: reducible, {inner} x {outer}")?
                }
            }
            let applies = conjecture_applicable(n);
            writeln!(
                self.out,
                "conjecture applies: {}",
                if applies { "yes" } else { "no" }
            )?;
        }
        Ok(OK)
    }

    fn width(&mut self, perm: &str, orbit: bool) -> CmdResult {
        let a = Arrangement::new(parse_perm(perm)?)?;
        let (member, op, width, f) = if orbit {
            symmetry::SymmetryOp::ALL
                .iter()
                .map(|&op| {
                    let image = symmetry::apply_symmetry(&a, op);
                    let (w, f) = min_width(&image);
                    (image, Some(op), w, f)
                })
                .min_by_key(|(_, _, w, _)| *w)
                .expect("eight images")
        } else {
            let (w, f) = min_width(&a);
            (a, None, w, f)
        };
        if self.format == Format::Json {
            self.json(&WidthJson {
                width,
                perm: member.perm(),
                function: &f,
            })?;
            return Ok(OK);
        }
        match op {
            Some(op) => writeln!(
                self.out,
                "orbit width {width}, attained by {} = {member}",
                op.name()
            )?,
            None => writeln!(self.out, "width {width}")?,
        }
        let m = f.n() + 1;
        for s in f.segments() {
            let rows = if s.lo == s.hi {
                format!("row {}", s.lo)
            } else {
                format!("rows {}-{}", s.lo, s.hi)
            };
            // a one-row segment has no row of the other parity
            let class = |parity: usize, map: LinearMap| {
                if (s.lo..=s.hi).any(|i| i % 2 == parity) {
                    show_map(map)
                } else {
                    "-".to_string()
                }
            };
            writeln!(
                self.out,
                "{rows}: odd {}, even {} (mod {m})",
                class(1, s.odd),
                class(0, s.even)
            )?;
        }
        Ok(OK)
    }

    fn enumerate(
        &mut self,
        n: usize,
        count_only: bool,
        fundamental: bool,
        jobs: usize,
        prefix: &[usize],
    ) -> CmdResult {
        if fundamental {
            let classes = fundamental_classes_par(n, jobs)?;
            if count_only {
                writeln!(self.out, "{}", classes.len())?;
            } else if self.format == Format::Json {
                self.json(&classes)?;
            } else {
                for c in &classes {
                    match self.format {
                        Format::Board => write!(
                            self.out,
                            "{}orbit {}\n\n",
                            render_board(&c.representative),
                            c.orbit_size
                        )?,
                        _ => writeln!(self.out, "{}\t{}", c.representative, c.orbit_size)?,
                    }
                }
            }
            return Ok(OK);
        }
        if count_only {
            let total = if prefix.is_empty() {
                count_solutions(n, jobs)?
            } else {
                count_with_prefix(n, prefix)?
            };
            writeln!(self.out, "{total}")?;
            return Ok(OK);
        }
        let format = self.format;
        let out = &mut *self.out;
        let mut failure = None;
        enumerate_with_prefix(n, prefix, |p| {
            if failure.is_some() {
                return;
            }
            let a = Arrangement::new(p.to_vec()).expect("enumerated solutions are permutations");
            let written = match format {
                Format::Perm => writeln!(out, "{a}"),
                Format::Board => writeln!(out, "{}", render_board(&a)),
                Format::Json => serde_json::to_string(&a)
                    .map_err(io::Error::from)
                    .and_then(|s| writeln!(out, "{s}")),
            };
            failure = written.err();
        })?;
        match failure {
            Some(e) => Err(e.into()),
            None => Ok(OK),
        }
    }

    fn check_remark15(&mut self, jobs: usize) -> CmdResult {
        let r = check_remark_15(jobs)?;
        if self.format == Format::Json {
            self.json(&r)?;
        } else {
            let c = &r.census;
            writeln!(
                self.out,
                "solutions visited: {} (first-row partition total {})",
                c.solutions, r.prefix_partition_total
            )?;
            writeln!(self.out, "width histogram:")?;
            for (w, k) in &c.histogram {
                writeln!(self.out, "  {w}: {k}")?;
            }
            writeln!(self.out, "minimum width: {}", opt(c.min_width))?;
            writeln!(
                self.out,
                "no solution of width 1 or 2: {}",
                if r.passes { "holds" } else { "fails" }
            )?;
        }
        Ok(if r.passes { OK } else { FALSE })
    }

    fn check_conjecture(&mut self, n: usize, jobs: usize) -> CmdResult {
        let r = check_conjecture(n, jobs)?;
        if self.format == Format::Json {
            self.json(&r)?;
        } else {
            writeln!(
                self.out,
                "n = {n}, n - 1 and n Q-irreducible: {}",
                if r.applicable { "yes" } else { "no" }
            )?;
            writeln!(self.out, "fundamental classes: {}", r.classes)?;
            writeln!(self.out, "orbit-minimum width histogram:")?;
            for (w, k) in &r.histogram {
                writeln!(self.out, "  {w}: {k}")?;
            }
            if let (Some(w), Some(rep)) = (r.worst_width, &r.worst_class) {
                let rep = rep
                    .iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(" ");
                writeln!(self.out, "worst width: {w}, first class {rep}")?;
            }
            writeln!(
                self.out,
                "width <= 4 in every class: {}",
                if r.passes { "holds" } else { "fails" }
            )?;
        }
        Ok(if r.passes { OK } else { FALSE })
    }

    fn complete(&mut self, n: usize, queens: &str, method: Method, max_width: usize) -> CmdResult {
        let p = PartialPlacement::new(n, parse_placement(queens)?)?;
        let found = match method {
            Method::Backtrack => complete(&p)?,
            Method::Qf => complete_via_queen_functions(&p, max_width)?,
        };
        match found {
            Some(a) => self.arrangement(&a),
            None => {
                match method {
                    Method::Backtrack => writeln!(self.err, "no completion exists")?,
                    Method::Qf => {
                        writeln!(self.err, "no completion of width <= {max_width} found")?
                    }
                }
                Ok(FALSE)
            }
        }
    }
}

fn opt(v: Option<usize>) -> String {
    v.map_or_else(|| "-".into(), |w| w.to_string())
}

/// `a*i + b` as text, e.g. `2i+1`, `i`, `3i`.
fn show_map(m: LinearMap) -> String {
    let lin = if m.a == 1 {
        "i".to_string()
    } else {
        format!("{}i", m.a)
    };
    if m.b == 0 {
        lin
    } else {
        format!("{lin}+{}", m.b)
    }
}
