use std::fmt;

use num_rational::Rational64;

/// Built-in function forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    /// `Xf(f)`: the contact field of `f`.
    ContactField,
    /// `lb(f, g)`: the Lagrange bracket.
    Lagrange,
    /// `div(X)`: divergence of a vector field.
    Divergence,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::ContactField => "Xf",
            Func::Lagrange => "lb",
            Func::Divergence => "div",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Func::Lagrange => 2,
            _ => 1,
        }
    }

    fn from_name(name: &str) -> Option<Func> {
        match name {
            "Xf" => Some(Func::ContactField),
            "lb" => Some(Func::Lagrange),
            "div" => Some(Func::Divergence),
            _ => None,
        }
    }
}

/// Which family of coordinates a name refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Letter {
    Z,
    X(u32),
    Y(u32),
    Theta(u32),
}

impl Letter {
    /// The coordinate index `A` of `q^A` in a space with `l` even pairs.
    pub fn coordinate(self, l: usize) -> usize {
        match self {
            Letter::Z => 0,
            Letter::X(i) => i as usize,
            Letter::Y(i) => l + i as usize,
            Letter::Theta(j) => 2 * l + j as usize,
        }
    }

    pub fn index(self) -> u32 {
        match self {
            Letter::Z => 0,
            Letter::X(i) | Letter::Y(i) | Letter::Theta(i) => i,
        }
    }
}

/// A symbol of the grammar.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Name {
    /// `z`, `x1`, `y1`, `th1`.
    Coordinate(Letter),
    /// `Dz`, `Dx1`, `Dy1`, `Dth1`.
    Derivative(Letter),
    /// `A1`, `B1`, `Dbar1` (`Z` is never used here).
    Generator(Letter),
    /// `zeta`, `a1`, `b1`, `g1`.
    Moment(Letter),
}

type MakeName = fn(u32) -> Name;

const PREFIXES: &[(&str, MakeName)] = &[
    ("Dbar", |i| Name::Generator(Letter::Theta(i))),
    ("Dth", |i| Name::Derivative(Letter::Theta(i))),
    ("Dx", |i| Name::Derivative(Letter::X(i))),
    ("Dy", |i| Name::Derivative(Letter::Y(i))),
    ("th", |i| Name::Coordinate(Letter::Theta(i))),
    ("x", |i| Name::Coordinate(Letter::X(i))),
    ("y", |i| Name::Coordinate(Letter::Y(i))),
    ("A", |i| Name::Generator(Letter::X(i))),
    ("B", |i| Name::Generator(Letter::Y(i))),
    ("a", |i| Name::Moment(Letter::X(i))),
    ("b", |i| Name::Moment(Letter::Y(i))),
    ("g", |i| Name::Moment(Letter::Theta(i))),
];

impl Name {
    /// Recognizes an identifier; `Err` carries the reason.
    pub fn parse(ident: &str) -> Result<Name, String> {
        match ident {
            "z" => return Ok(Name::Coordinate(Letter::Z)),
            "Dz" => return Ok(Name::Derivative(Letter::Z)),
            "zeta" => return Ok(Name::Moment(Letter::Z)),
            _ => {}
        }
        for (prefix, make) in PREFIXES {
            if let Some(digits) = ident.strip_prefix(prefix) {
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    continue;
                }
                return match digits.parse::<u32>() {
                    Ok(i) if i >= 1 && !digits.starts_with('0') => Ok(make(i)),
                    _ => Err(format!("bad index in `{ident}` (indices start at 1)")),
                };
            }
        }
        Err(format!("unknown name `{ident}`"))
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (prefix, letter) = match *self {
            Name::Coordinate(l) => (["z", "x", "y", "th"], l),
            Name::Derivative(l) => (["Dz", "Dx", "Dy", "Dth"], l),
            Name::Generator(l) => (["", "A", "B", "Dbar"], l),
            Name::Moment(l) => (["zeta", "a", "b", "g"], l),
        };
        match letter {
            Letter::Z => f.write_str(prefix[0]),
            Letter::X(i) => write!(f, "{}{i}", prefix[1]),
            Letter::Y(i) => write!(f, "{}{i}", prefix[2]),
            Letter::Theta(i) => write!(f, "{}{i}", prefix[3]),
        }
    }
}

/// Syntax tree. The parser keeps operand order; parentheses only survive
/// as nesting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ast {
    /// Nonnegative rational literal.
    Number(Rational64),
    Name(Name),
    Call(Func, Vec<Ast>),
    Pow(Box<Ast>, u32),
    /// At least two factors.
    Product(Vec<Ast>),
    /// Signed terms; `true` marks subtraction. Either several terms or a
    /// single negated one.
    Sum(Vec<(bool, Ast)>),
}

impl Ast {
    fn write_factor(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ast::Sum(_) | Ast::Product(_) => write!(f, "({self})"),
            _ => write!(f, "{self}"),
        }
    }

    fn write_term(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ast::Sum(_) => write!(f, "({self})"),
            _ => write!(f, "{self}"),
        }
    }
}

impl fmt::Display for Ast {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ast::Number(r) => write!(f, "{r}"),
            Ast::Name(n) => write!(f, "{n}"),
            Ast::Call(func, args) => {
                write!(f, "{}(", func.name())?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
            Ast::Pow(base, e) => {
                match **base {
                    Ast::Number(r) if r.is_integer() => write!(f, "{base}")?,
                    Ast::Name(_) | Ast::Call(..) => write!(f, "{base}")?,
                    _ => write!(f, "({base})")?,
                }
                write!(f, "^{e}")
            }
            Ast::Product(factors) => {
                for (i, x) in factors.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    x.write_factor(f)?;
                }
                Ok(())
            }
            Ast::Sum(terms) => {
                for (i, (neg, t)) in terms.iter().enumerate() {
                    match (i, neg) {
                        (0, true) => f.write_str("-")?,
                        (0, false) => {}
                        (_, true) => f.write_str(" - ")?,
                        (_, false) => f.write_str(" + ")?,
                    }
                    t.write_term(f)?;
                }
                Ok(())
            }
        }
    }
}

pub(super) fn func_from_name(name: &str) -> Option<Func> {
    Func::from_name(name)
}
