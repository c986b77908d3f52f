//! Acceptance suite: one line per criterion, exact arithmetic throughout
//! (tolerance 0). Runs the full verification grid and the golden corpus.

mod corpus;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use supercontact::verify::{self, CheckResult, GridSize};

const CRITERIA: [&str; 9] = [
    "structure table of T_r on (1,0),(1,1),(2,1),(1,3),(2,3)",
    "<alpha, X_f> = f for monomials of degree <= 4 at (2,2)",
    "Lie-algebra morphisms on densities and operators of bi-order <= (3,2)",
    "phi intertwines the actions, div(X_f) = (2l+2-n)/2 f', (0,2) rejected",
    "normal form round trip and functional equality, 500 operators at (1,2)",
    "ord, h_ord and bi_order preserved under spo on the operator corpus",
    "P^d is the disjoint union of the Sigma^{k,d} for d <= 2 at (1,1),(2,1)",
    "explicit actions equal lift-act-project on the full spo grid",
    "spo basis closed under the Lagrange bracket",
];

fn status(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn grid_criterion(n: u8) -> bool {
    let checks = verify::criterion(n);
    let report = verify::run_checks(&checks, GridSize::Full);
    let cases: usize = report.checks.iter().map(|c| c.cases).sum();
    let failures: usize = report.checks.iter().map(|c| c.failures).sum();
    println!(
        "criterion {n:>2} {}  {}: {cases} cases, {failures} failures, tolerance 0",
        status(report.passed),
        CRITERIA[n as usize - 1]
    );
    for c in &report.checks {
        print_check(c);
    }
    report.passed
}

fn print_check(c: &CheckResult) {
    println!(
        "               {} {}::{} ({} cases, {} failures)",
        status(c.passed),
        c.module,
        c.name,
        c.cases,
        c.failures
    );
    if let Some(first) = &c.first_failure {
        println!("                   first failure: {first}");
    }
}

fn golden_criterion() -> bool {
    let cases = corpus::load();
    let mut failures = Vec::new();
    let mut roundtrips = 0;
    for case in &cases {
        if let Some(msg) = corpus::check(case) {
            failures.push(msg);
        }
        for e in case.expressions() {
            roundtrips += 1;
            if let Err(msg) = corpus::parse_print_parse(e) {
                failures.push(format!("{}: {msg}", case.name));
            }
        }
        for e in corpus::printed_expressions(case) {
            roundtrips += 1;
            if let Err(msg) = corpus::print_is_identity(&e) {
                failures.push(format!("{}: {msg}", case.name));
            }
        }
        if let Err(msg) = corpus::normal_form_reparses(case) {
            failures.push(msg);
        }
    }
    let commands: BTreeSet<&str> = cases.iter().map(|c| c.subcommand()).collect();
    let required = ["act", "bracket", "lagrange", "normal-form", "symbol", "verify"];
    let missing: Vec<&str> = required.iter().copied().filter(|c| !commands.contains(c)).collect();
    let ok = failures.is_empty() && cases.len() >= 30 && missing.is_empty();
    println!(
        "criterion 10 {}  golden corpus: {} cases over {} subcommands, bit-exact, {roundtrips} parse/print round trips, {} failures",
        status(ok),
        cases.len(),
        commands.len(),
        failures.len()
    );
    if !missing.is_empty() {
        println!("                   subcommands without a case: {}", missing.join(", "));
    }
    for f in failures.iter().take(5) {
        println!("                   {}", f.replace('\n', "\n                   "));
    }
    ok
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut failed = Vec::new();
    for n in 1..=9 {
        if !grid_criterion(n) {
            failed.push(n);
        }
    }
    if !golden_criterion() {
        failed.push(10);
    }
    eprintln!("acceptance finished in {:.1?}", start.elapsed());
    if failed.is_empty() {
        println!("acceptance: all 10 criteria pass");
        ExitCode::SUCCESS
    } else {
        let list: Vec<String> = failed.iter().map(u8::to_string).collect();
        println!("acceptance: {} of 10 criteria fail ({})", failed.len(), list.join(", "));
        ExitCode::FAILURE
    }
}
