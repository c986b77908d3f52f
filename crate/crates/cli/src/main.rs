//! Command-line front end for the `supercontact` library.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value as Json};
use supercontact::diffops::HalfInt;
use supercontact::symbols::{self, Grade, SymbolKind};
use supercontact::text::{self, Value};
use supercontact::verify::{self, GridSize};
use supercontact::{spo_action, ContactSpace, DiffOperator, NormalForm, Rational, SymbolPoly};

#[derive(Parser)]
#[command(
    name = "supercontact",
    version,
    about = "Exact computations on the contact superspace R^(2l+1|n)"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Input {
    /// Space as `l,n`.
    #[arg(long, value_parser = parse_space)]
    space: ContactSpace,

    /// Read one more expression from a UTF-8 file, after the positional ones.
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,

    exprs: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Super bracket of two vector fields.
    Bracket(#[command(flatten)] Input),
    /// Lagrange bracket of two superfunctions.
    Lagrange(#[command(flatten)] Input),
    /// Normal form of an operator in the `Dz^c*A^I*B^J*Dbar^T` basis, with orders.
    NormalForm(#[command(flatten)] Input),
    /// Principal, Heisenberg or fine symbol of an operator.
    Symbol {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = SymbolKind::from_str)]
        kind: SymbolKind,
        /// Canonical order; defaults to the operator's.
        #[arg(long)]
        k: Option<u32>,
        /// Heisenberg order (`3/2` or `1.5`); defaults to the operator's.
        #[arg(long)]
        d: Option<HalfInt>,
        /// Weight shift of the operator.
        #[arg(long, default_value = "0", value_parser = parse_rational, allow_hyphen_values = true)]
        delta: Rational,
    },
    /// Explicit action of `X_f` (f in spo) on a symbol.
    Act {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        formula: Formula,
        /// Weight of the symbol.
        #[arg(long, default_value = "0", value_parser = parse_rational, allow_hyphen_values = true)]
        delta: Rational,
        /// Also run the lift-act-project computation and print it.
        #[arg(long)]
        oracle: bool,
    },
    /// Run every invariant check; exit status 0 iff all pass.
    Verify {
        #[arg(long, default_value = "small", value_parser = GridSize::from_str)]
        grid: GridSize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Formula {
    Sigma,
    Principal,
    Heisenberg,
}

impl Formula {
    fn kind(self) -> SymbolKind {
        match self {
            Formula::Sigma => SymbolKind::Fine,
            Formula::Principal => SymbolKind::Principal,
            Formula::Heisenberg => SymbolKind::Heisenberg,
        }
    }
}

fn parse_space(s: &str) -> Result<ContactSpace, String> {
    let (l, n) = s.split_once(',').ok_or_else(|| format!("expected `l,n`, got `{s}`"))?;
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("expected `l,n`, got `{s}`"))
    };
    ContactSpace::new(num(l)?, num(n)?).map_err(|e| e.to_string())
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    Rational::from_str(s.trim()).map_err(|_| format!("expected a rational like `-1/2`, got `{s}`"))
}

/// A failure to report on stderr with exit status 2.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Out = Result<(String, Json), Failure>;

fn inputs(input: &Input, want: usize) -> Result<Vec<Value<Rational>>, Failure> {
    let mut exprs = input.exprs.clone();
    if let Some(path) = &input.file {
        let body = fs::read_to_string(path).map_err(|e| Failure(format!("cannot read {}: {e}", path.display())))?;
        exprs.push(body.trim().to_string());
    }
    if exprs.len() != want {
        return Err(Failure(format!("expected {want} expression(s), got {}", exprs.len())));
    }
    exprs
        .iter()
        .map(|e| {
            let ast =
                text::parse(e).map_err(|err| Failure(format!("{err}\n  {}", err.render(e).replace('\n', "\n  "))))?;
            text::eval(&ast, input.space).map_err(|err| Failure(format!("in `{e}`: {err}")))
        })
        .collect()
}

fn space_json(s: ContactSpace) -> Json {
    json!([s.l(), s.n()])
}

fn order_text<T: ToString>(o: Option<T>) -> String {
    o.map_or_else(|| "-inf".to_string(), |v| v.to_string())
}

fn half_json(o: Option<HalfInt>) -> Json {
    o.map_or(Json::Null, |v| Json::String(v.to_string()))
}

fn orders(nf: &NormalForm) -> String {
    format!(
        "(k={}, d={})",
        order_text(nf.order()),
        order_text(nf.heisenberg_order())
    )
}

fn bracket(input: &Input) -> Out {
    let v = inputs(input, 2)?;
    let (x, y) = (v[0].clone().into_vector_field()?, v[1].clone().into_vector_field()?);
    let b = x.bracket(&y)?;
    Ok((b.to_string(), json!({ "bracket": b.to_string() })))
}

fn lagrange(input: &Input) -> Out {
    let v = inputs(input, 2)?;
    let (f, g) = (v[0].clone().into_poly()?, v[1].clone().into_poly()?);
    let b = supercontact::geometry::lagrange_bracket(&f, &g)?;
    Ok((b.to_string(), json!({ "bracket": b.to_string() })))
}

fn normal_form(input: &Input) -> Out {
    let op: DiffOperator = inputs(input, 1)?.remove(0).into_operator()?;
    let nf = op.normal_form();
    let mut lines = vec![format!("{nf} {}", orders(&nf))];
    let mut terms = Vec::new();
    for (w, _) in nf.terms().rev() {
        let part = nf.filter(|u| u == w);
        lines.push(format!("  {part} {}", orders(&part)));
        terms.push(json!({
            "term": part.to_string(),
            "word": w.operator_name(&nf.space()),
            "k": part.order(),
            "d": half_json(part.heisenberg_order()),
        }));
    }
    let j = json!({
        "normal_form": nf.to_string(),
        "k": nf.order(),
        "d": half_json(nf.heisenberg_order()),
        "terms": terms,
    });
    Ok((lines.join("\n"), j))
}

fn symbol(input: &Input, kind: SymbolKind, k: Option<u32>, d: Option<HalfInt>, delta: &Rational) -> Out {
    let op: DiffOperator = inputs(input, 1)?.remove(0).into_operator()?;
    let op = op.with_weights(Rational::from_integer(0), *delta);
    let nf = op.normal_form();
    let k = k.or(nf.order()).unwrap_or(0);
    let d = d.or(nf.heisenberg_order()).unwrap_or(HalfInt::ZERO);
    let grade = match kind {
        SymbolKind::Principal => Grade::Principal(k),
        SymbolKind::Heisenberg => Grade::Heisenberg(d),
        SymbolKind::Fine => Grade::Fine(k, d),
    };
    let s = symbols::symbol_of_normal_form(&nf, grade)?;
    let (jk, jd) = match grade {
        Grade::Principal(k) => (json!(k), Json::Null),
        Grade::Heisenberg(d) => (Json::Null, json!(d.to_string())),
        Grade::Fine(k, d) => (json!(k), json!(d.to_string())),
    };
    let j = json!({
        "symbol": s.to_string(),
        "kind": kind.name(),
        "k": jk,
        "d": jd,
        "delta": delta.to_string(),
    });
    Ok((s.to_string(), j))
}

fn act(input: &Input, formula: Formula, delta: &Rational, oracle: bool) -> Out {
    let mut v = inputs(input, 2)?;
    let sym: SymbolPoly = v.pop().expect("two inputs").into_symbol()?.with_weight(*delta);
    let f = v.pop().expect("two inputs").into_poly()?;
    let kind = formula.kind();
    let out = spo_action::act(&f, &sym, kind)?;
    let mut j = json!({ "result": out.to_string(), "delta": delta.to_string() });
    let mut text = out.to_string();
    if oracle {
        let o = spo_action::oracle_action(&f, &sym, kind)?;
        text.push_str(&format!(
            "\noracle: {o}\nagree: {}",
            if o == out { "yes" } else { "no" }
        ));
        j["oracle"] = json!(o.to_string());
        j["agree"] = json!(o == out);
    }
    Ok((text, j))
}

fn wrap(command: &str, input: &Input, out: Out) -> Out {
    let (text, mut j) = out?;
    let mut exprs = input.exprs.clone();
    if let Some(p) = &input.file {
        exprs.push(format!("@{}", p.display()));
    }
    j["command"] = json!(command);
    j["space"] = space_json(input.space);
    j["inputs"] = json!(exprs);
    Ok((text, j))
}

/// Prints a line, tolerating a closed pipe.
fn print_out(s: &str) {
    let _ = writeln!(io::stdout().lock(), "{s}");
}

fn emit(format: Format, text: &str, j: &Json) {
    match format {
        Format::Text => print_out(text),
        Format::Json => print_out(&serde_json::to_string_pretty(j).expect("json")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match &cli.command {
        Command::Verify { grid } => {
            let report = verify::run(*grid);
            match cli.format {
                Format::Text => print_out(&report.to_string()),
                Format::Json => print_out(&serde_json::to_string_pretty(&report).expect("json")),
            }
            if !report.passed {
                for c in report.checks.iter().filter(|c| !c.passed) {
                    eprintln!("failed invariant {}::{}", c.module, c.name);
                }
                return ExitCode::from(1);
            }
            return ExitCode::SUCCESS;
        }
        Command::Bracket(i) => wrap("bracket", i, bracket(i)),
        Command::Lagrange(i) => wrap("lagrange", i, lagrange(i)),
        Command::NormalForm(i) => wrap("normal-form", i, normal_form(i)),
        Command::Symbol {
            input,
            kind,
            k,
            d,
            delta,
        } => wrap("symbol", input, symbol(input, *kind, *k, *d, delta)),
        Command::Act {
            input,
            formula,
            delta,
            oracle,
        } => wrap("act", input, act(input, *formula, delta, *oracle)),
    };
    match out {
        Ok((text, j)) => {
            emit(cli.format, &text, &j);
            ExitCode::SUCCESS
        }
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
