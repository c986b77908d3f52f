use std::fmt;

use num_rational::Rational64;

use super::ast::{func_from_name, Ast, Name};

/// A syntax error at a 1-based column of the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

impl ParseError {
    /// The input line with a caret under the offending column.
    pub fn render(&self, input: &str) -> String {
        let line = input.lines().next().unwrap_or("");
        format!("{line}\n{}^", " ".repeat(self.column.saturating_sub(1)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    Comma,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn lex(input: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '/' => Some(Tok::Slash),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, col));
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let n = text.parse::<i64>().map_err(|_| ParseError {
                column: col,
                message: format!("integer `{text}` is too large"),
            })?;
            out.push((Tok::Int(n), col));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else {
            return Err(ParseError {
                column: col,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn column(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            column: self.column(),
            message: message.into(),
        })
    }

    fn expect(&mut self, t: Tok) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {t}, found {}", self.peek()))
        }
    }

    // expr := ['-'] term (('+' | '-') term)*
    fn expr(&mut self) -> Result<Ast, ParseError> {
        let mut terms = Vec::new();
        let first_neg = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        terms.push((first_neg, self.term()?));
        loop {
            let neg = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            self.bump();
            terms.push((neg, self.term()?));
        }
        if terms.len() == 1 && !terms[0].0 {
            return Ok(terms.pop().expect("one term").1);
        }
        Ok(Ast::Sum(terms))
    }

    // term := factor ('*' factor)*
    fn term(&mut self) -> Result<Ast, ParseError> {
        let mut factors = vec![self.factor()?];
        while *self.peek() == Tok::Star {
            self.bump();
            factors.push(self.factor()?);
        }
        if factors.len() == 1 {
            return Ok(factors.pop().expect("one factor"));
        }
        Ok(Ast::Product(factors))
    }

    // factor := atom ('^' int)?
    fn factor(&mut self) -> Result<Ast, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        match self.bump() {
            Tok::Int(e) => match u32::try_from(e) {
                Ok(e) => Ok(Ast::Pow(Box::new(base), e)),
                Err(_) => {
                    self.pos -= 1;
                    self.error("exponent is too large")
                }
            },
            other => {
                if other != Tok::End {
                    self.pos -= 1;
                }
                self.error(format!("expected a nonnegative integer exponent, found {other}"))
            }
        }
    }

    fn atom(&mut self) -> Result<Ast, ParseError> {
        let col = self.column();
        match self.bump() {
            Tok::Int(p) => {
                if *self.peek() != Tok::Slash {
                    return Ok(Ast::Number(Rational64::from_integer(p)));
                }
                self.bump();
                match self.bump() {
                    Tok::Int(0) => Err(ParseError {
                        column: col,
                        message: "zero denominator".into(),
                    }),
                    Tok::Int(q) => Ok(Ast::Number(Rational64::new(p, q))),
                    other => {
                        if other != Tok::End {
                            self.pos -= 1;
                        }
                        self.error(format!("expected a denominator, found {other}"))
                    }
                }
            }
            Tok::Ident(name) => {
                if let Some(func) = func_from_name(&name) {
                    if *self.peek() == Tok::LParen {
                        return self.call(func);
                    }
                }
                Name::parse(&name)
                    .map(Ast::Name)
                    .map_err(|message| ParseError { column: col, message })
            }
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            other => {
                if other != Tok::End {
                    self.pos -= 1;
                }
                self.error(format!("expected a number, name or `(`, found {other}"))
            }
        }
    }

    fn call(&mut self, func: super::ast::Func) -> Result<Ast, ParseError> {
        let open = self.column();
        self.expect(Tok::LParen)?;
        let mut args = vec![self.expr()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            args.push(self.expr()?);
        }
        self.expect(Tok::RParen)?;
        if args.len() != func.arity() {
            return Err(ParseError {
                column: open,
                message: format!(
                    "`{}` takes {} argument(s), got {}",
                    func.name(),
                    func.arity(),
                    args.len()
                ),
            });
        }
        Ok(Ast::Call(func, args))
    }
}

/// Parses one expression.
pub fn parse(input: &str) -> Result<Ast, ParseError> {
    let toks = lex(input)?;
    let mut p = Parser { toks, pos: 0 };
    let ast = p.expr()?;
    if *p.peek() != Tok::End {
        return p.error(format!("unexpected {} after the expression", p.peek()));
    }
    Ok(ast)
}
