//! Golden-file corpus for the binary.
//!
//! Each `tests/golden/*.golden` file holds one invocation:
//!
//! ```text
//! $ <arguments, shell-quoted>
//! ? <exit status, omitted when 0>
//! <stdout lines>
//! ! <stderr lines>
//! ```
//!
//! Set `GOLDEN_BLESS=1` to rewrite the files from the current binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use supercontact::text;
use supercontact::{ContactSpace, Rational};

pub struct Case {
    pub name: String,
    pub path: PathBuf,
    header: String,
    pub args: Vec<String>,
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Case {
    fn parse(path: &Path) -> Case {
        let body = fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let mut lines = body.lines();
        let header = lines.next().and_then(|l| l.strip_prefix("$ ")).expect("`$ ` header");
        let args = shlex::split(header).expect("shell-quoted arguments");
        let mut code = 0;
        let (mut stdout, mut stderr) = (String::new(), String::new());
        for line in lines {
            if let Some(c) = line.strip_prefix("? ") {
                code = c.parse().expect("exit status");
            } else if let Some(e) = line.strip_prefix("! ") {
                stderr.push_str(e);
                stderr.push('\n');
            } else {
                stdout.push_str(line);
                stdout.push('\n');
            }
        }
        Case {
            name: path.file_stem().unwrap().to_string_lossy().into_owned(),
            path: path.to_path_buf(),
            header: header.to_string(),
            args,
            code,
            stdout,
            stderr,
        }
    }

    pub fn subcommand(&self) -> &str {
        let mut it = self.args.iter();
        while let Some(a) = it.next() {
            match a.as_str() {
                "--format" => {
                    it.next();
                }
                s => return s,
            }
        }
        ""
    }

    pub fn space(&self) -> Option<ContactSpace> {
        let i = self.args.iter().position(|a| a == "--space")?;
        let (l, n) = self.args[i + 1].split_once(',')?;
        ContactSpace::new(l.parse().ok()?, n.parse().ok()?).ok()
    }

    pub fn is_text(&self) -> bool {
        !self.args.iter().any(|a| a == "json")
    }

    /// Positional expressions, skipping options and their values.
    pub fn expressions(&self) -> Vec<&str> {
        let flags = [
            "--format",
            "--space",
            "--file",
            "--kind",
            "--k",
            "--d",
            "--delta",
            "--formula",
            "--grid",
        ];
        let mut out = Vec::new();
        let mut it = self.args.iter().skip(1);
        while let Some(a) = it.next() {
            if flags.contains(&a.as_str()) {
                it.next();
            } else if !a.starts_with("--") && a != self.subcommand() {
                out.push(a.as_str());
            }
        }
        out
    }
}

pub fn dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn load() -> Vec<Case> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir())
        .expect("golden directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "golden"))
        .collect();
    paths.sort();
    paths.iter().map(|p| Case::parse(p)).collect()
}

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run(case: &Case) -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_supercontact"))
        .args(&case.args)
        .current_dir(dir())
        .output()
        .expect("spawn binary");
    Outcome {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

fn render(case: &Case, o: &Outcome) -> String {
    let mut s = format!("$ {}\n", case.header);
    if o.code != 0 {
        s.push_str(&format!("? {}\n", o.code));
    }
    s.push_str(&o.stdout);
    for line in o.stderr.lines() {
        s.push_str(&format!("! {line}\n"));
    }
    s
}

/// Runs a case and describes the first mismatch; rewrites the file instead
/// when blessing.
pub fn check(case: &Case) -> Option<String> {
    let o = run(case);
    if std::env::var_os("GOLDEN_BLESS").is_some() {
        fs::write(&case.path, render(case, &o)).expect("write golden");
        return None;
    }
    if o.code != case.code {
        return Some(format!(
            "{}: exit status {} (expected {})",
            case.name, o.code, case.code
        ));
    }
    if o.stdout != case.stdout {
        return Some(format!(
            "{}: stdout\n{}\nexpected\n{}",
            case.name, o.stdout, case.stdout
        ));
    }
    if o.stderr != case.stderr {
        return Some(format!(
            "{}: stderr\n{}\nexpected\n{}",
            case.name, o.stderr, case.stderr
        ));
    }
    None
}

/// The canonical expressions a text-mode output contains.
pub fn printed_expressions(case: &Case) -> Vec<String> {
    let algebraic = ["bracket", "lagrange", "normal-form", "symbol", "act"];
    if case.code != 0 || !case.is_text() || !algebraic.contains(&case.subcommand()) {
        return Vec::new();
    }
    case.stdout
        .lines()
        .filter(|l| !l.starts_with("agree: "))
        .map(|l| {
            let l = l.trim_start().trim_start_matches("oracle: ");
            l.split(" (k=").next().unwrap().to_string()
        })
        .collect()
}

/// `print(parse(s)) == s` for a canonical string.
pub fn print_is_identity(s: &str) -> Result<(), String> {
    let ast = text::parse(s).map_err(|e| format!("`{s}`: {e}"))?;
    let back = ast.to_string();
    if back == s {
        Ok(())
    } else {
        Err(format!("`{s}` reprints as `{back}`"))
    }
}

/// `parse(print(parse(s))) == parse(s)` for any input.
pub fn parse_print_parse(s: &str) -> Result<(), String> {
    let Ok(ast) = text::parse(s) else {
        return Ok(());
    };
    let again = text::parse(&ast.to_string()).map_err(|e| format!("`{ast}`: {e}"))?;
    if again == ast {
        Ok(())
    } else {
        Err(format!("`{s}` does not survive a print/parse round trip"))
    }
}

/// The printed normal form evaluates back to the input operator.
pub fn normal_form_reparses(case: &Case) -> Result<(), String> {
    if case.subcommand() != "normal-form" || case.code != 0 || !case.is_text() {
        return Ok(());
    }
    let space = case.space().ok_or("no --space")?;
    let Some(input) = case.expressions().first().map(|s| s.to_string()).or_else(|| {
        let i = case.args.iter().position(|a| a == "--file")?;
        fs::read_to_string(dir().join(&case.args[i + 1]))
            .ok()
            .map(|s| s.trim().to_string())
    }) else {
        return Err("no input".into());
    };
    let printed = &printed_expressions(case)[0];
    let lower = |s: &str| -> Result<_, String> {
        text::eval::<Rational>(&text::parse(s).map_err(|e| e.to_string())?, space)
            .and_then(|v| v.into_operator())
            .map_err(|e| format!("`{s}`: {e}"))
    };
    if lower(&input)? == lower(printed)? {
        Ok(())
    } else {
        Err(format!("{}: `{printed}` does not evaluate to `{input}`", case.name))
    }
}
