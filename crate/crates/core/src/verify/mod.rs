//! The invariant grid: every property the library claims, checked exactly
//! against independent computations, with a serializable report.

mod checks;
pub mod random;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

pub use checks::CHECKS;

/// Size of the verification grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GridSize {
    Small,
    Full,
}

impl GridSize {
    pub(crate) fn pick<T>(self, small: T, full: T) -> T {
        match self {
            GridSize::Small => small,
            GridSize::Full => full,
        }
    }
}

impl FromStr for GridSize {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "small" => Ok(GridSize::Small),
            "full" => Ok(GridSize::Full),
            other => Err(format!("unknown grid `{other}` (expected small or full)")),
        }
    }
}

impl fmt::Display for GridSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.pick("small", "full"))
    }
}

/// Outcome of one property over its grid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub module: &'static str,
    pub criterion: Option<u8>,
    pub cases: usize,
    pub failures: usize,
    pub passed: bool,
    /// The first failing case in grid order, as a reproducible description.
    pub first_failure: Option<String>,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {}::{} ({} cases, {} failures)",
            self.module, self.name, self.cases, self.failures
        )?;
        if let Some(first) = &self.first_failure {
            write!(f, "\n     first failure: {first}")?;
        }
        Ok(())
    }
}

/// A property, the module it belongs to and the acceptance criterion it
/// feeds, if any.
pub struct Check {
    pub name: &'static str,
    pub module: &'static str,
    pub criterion: Option<u8>,
    pub(crate) run: fn(GridSize) -> Tally,
}

impl Check {
    pub fn run(&self, grid: GridSize) -> CheckResult {
        let t = (self.run)(grid);
        CheckResult {
            name: self.name,
            module: self.module,
            criterion: self.criterion,
            cases: t.cases,
            failures: t.failures,
            passed: t.failures == 0 && t.cases > 0,
            first_failure: t.first,
        }
    }
}

/// Counts cases and keeps the first failure.
#[derive(Debug, Default)]
pub(crate) struct Tally {
    cases: usize,
    failures: usize,
    first: Option<String>,
}

impl Tally {
    pub(crate) fn record(&mut self, outcome: Option<String>) {
        self.cases += 1;
        if let Some(msg) = outcome {
            self.failures += 1;
            self.first.get_or_insert(msg);
        }
    }

    pub(crate) fn absorb(&mut self, other: Tally) {
        self.cases += other.cases;
        self.failures += other.failures;
        if self.first.is_none() {
            self.first = other.first;
        }
    }

    /// Runs `case` on every item in parallel and records outcomes in item order.
    pub(crate) fn par<T: Sync>(items: &[T], case: impl Fn(&T) -> Option<String> + Sync + Send) -> Tally {
        let outcomes: Vec<Option<String>> = items.par_iter().map(case).collect();
        let mut t = Tally::default();
        for o in outcomes {
            t.record(o);
        }
        t
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub grid: GridSize,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        write!(
            f,
            "{}: {} checks, {} failed (grid {})",
            if self.passed { "PASS" } else { "FAIL" },
            self.checks.len(),
            failed,
            self.grid
        )
    }
}

/// Runs the given checks, in parallel, keeping their order in the report.
pub fn run_checks(checks: &[&Check], grid: GridSize) -> Report {
    let results: Vec<CheckResult> = checks.par_iter().map(|c| c.run(grid)).collect();
    Report {
        grid,
        passed: results.iter().all(|c| c.passed),
        checks: results,
    }
}

/// Runs every check.
pub fn run(grid: GridSize) -> Report {
    let all: Vec<&Check> = CHECKS.iter().collect();
    run_checks(&all, grid)
}

/// The checks feeding one acceptance criterion.
pub fn criterion(n: u8) -> Vec<&'static Check> {
    CHECKS.iter().filter(|c| c.criterion == Some(n)).collect()
}
