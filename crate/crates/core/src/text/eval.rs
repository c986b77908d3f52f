use std::fmt;

use super::ast::{Ast, Func, Letter, Name};
use crate::diffops::{DiffOperator, Word};
use crate::error::{Error, Result};
use crate::geometry::{contact_field, lagrange_bracket, VectorField};
use crate::scalar::Scalar;
use crate::superalgebra::{ContactSpace, SuperPolynomial};
use crate::symbols::SymbolPoly;

/// The semantic value of an expression. Operators act between densities of
/// weight 0 and symbols carry weight 0; callers re-weight as needed.
#[derive(Clone, Debug, PartialEq)]
pub enum Value<S> {
    Poly(SuperPolynomial<S>),
    Operator(DiffOperator<S>),
    Symbol(SymbolPoly<S>),
}

impl<S: Scalar> Value<S> {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Poly(_) => "function",
            Value::Operator(_) => "operator",
            Value::Symbol(_) => "symbol",
        }
    }

    /// Functions are promoted to multiplication operators.
    pub fn into_operator(self) -> Result<DiffOperator<S>> {
        match self {
            Value::Poly(p) => Ok(DiffOperator::multiplication(p, S::zero(), S::zero())),
            Value::Operator(d) => Ok(d),
            Value::Symbol(s) => Err(Error::Expression(format!("expected an operator, found the symbol {s}"))),
        }
    }

    pub fn into_poly(self) -> Result<SuperPolynomial<S>> {
        match self {
            Value::Poly(p) => Ok(p),
            other => Err(Error::Expression(format!(
                "expected a function, found an {}",
                other.kind()
            ))),
        }
    }

    /// Functions are promoted to symbols without moments.
    pub fn into_symbol(self) -> Result<SymbolPoly<S>> {
        match self {
            Value::Poly(p) => Ok(SymbolPoly::function(p, S::zero())),
            Value::Symbol(s) => Ok(s),
            Value::Operator(d) => Err(Error::Expression(format!("expected a symbol, found the operator {d}"))),
        }
    }

    pub fn into_vector_field(self) -> Result<VectorField<S>> {
        self.into_operator()?.to_vector_field()
    }

    fn add(self, other: Self, negate: bool) -> Result<Self> {
        let other = if negate { other.neg() } else { other };
        Ok(match (self, other) {
            (Value::Poly(a), Value::Poly(b)) => Value::Poly(a.checked_add(&b)?),
            (a @ Value::Symbol(_), b) | (a, b @ Value::Symbol(_)) => {
                Value::Symbol(a.into_symbol()?.checked_add(&b.into_symbol()?)?)
            }
            (a, b) => Value::Operator(a.into_operator()?.checked_add(&b.into_operator()?)?),
        })
    }

    fn neg(self) -> Self {
        let m = -S::one();
        match self {
            Value::Poly(p) => Value::Poly(p.scale(&m)),
            Value::Operator(d) => Value::Operator(d.scale(&m)),
            Value::Symbol(s) => Value::Symbol(s.scale(&m)),
        }
    }

    fn mul(self, other: Self) -> Result<Self> {
        Ok(match (self, other) {
            (Value::Poly(a), Value::Poly(b)) => Value::Poly(a.checked_mul(&b)?),
            (Value::Poly(a), Value::Operator(d)) => {
                a.space().check_same(&d.space())?;
                Value::Operator(d.left_mul(&a))
            }
            (a @ Value::Operator(_), b @ (Value::Operator(_) | Value::Poly(_))) => {
                Value::Operator(a.into_operator()?.compose(&b.into_operator()?)?)
            }
            (a @ Value::Symbol(_), b) | (a, b @ Value::Symbol(_)) => {
                Value::Symbol(a.into_symbol()?.checked_mul(&b.into_symbol()?)?)
            }
        })
    }
}

impl<S: Scalar> fmt::Display for Value<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Poly(p) => write!(f, "{p}"),
            Value::Operator(d) => write!(f, "{d}"),
            Value::Symbol(s) => write!(f, "{s}"),
        }
    }
}

fn check_letter(space: &ContactSpace, letter: Letter, name: &Name) -> Result<usize> {
    let bound = match letter {
        Letter::Z => return Ok(0),
        Letter::X(_) | Letter::Y(_) => space.l(),
        Letter::Theta(_) => space.n(),
    };
    if letter.index() as usize > bound {
        return Err(Error::Expression(format!("`{name}` does not exist in {space}")));
    }
    Ok(letter.coordinate(space.l()))
}

fn eval_name<S: Scalar>(space: ContactSpace, name: Name) -> Result<Value<S>> {
    Ok(match name {
        Name::Coordinate(l) => Value::Poly(SuperPolynomial::coordinate(space, check_letter(&space, l, &name)?)?),
        Name::Derivative(l) => Value::Operator(DiffOperator::derivative(
            space,
            check_letter(&space, l, &name)?,
            S::zero(),
        )?),
        Name::Generator(l) => {
            let r = check_letter(&space, l, &name)?;
            let t = DiffOperator::from_vector_field(&VectorField::tangent(space, r)?, S::zero());
            Value::Operator(if matches!(l, Letter::Y(_)) {
                t.scale(&-S::one())
            } else {
                t
            })
        }
        Name::Moment(l) => {
            let r = check_letter(&space, l, &name)?;
            let w = if r == 0 {
                Word::dz_power(&space, 1)
            } else {
                Word::generator(&space, r)
            };
            Value::Symbol(SymbolPoly::moment(space, w, S::zero()))
        }
    })
}

/// Lowers an expression to its value on `space`.
pub fn eval<S: Scalar>(ast: &Ast, space: ContactSpace) -> Result<Value<S>> {
    match ast {
        Ast::Number(r) => Ok(Value::Poly(SuperPolynomial::constant(
            space,
            S::from_ratio(*r.numer(), *r.denom()),
        ))),
        Ast::Name(name) => eval_name(space, *name),
        Ast::Call(func, args) => {
            let arg = |i: usize| eval::<S>(&args[i], space);
            Ok(match func {
                Func::ContactField => {
                    let f = arg(0)?.into_poly()?;
                    Value::Operator(DiffOperator::from_vector_field(&contact_field(&f), S::zero()))
                }
                Func::Lagrange => Value::Poly(lagrange_bracket(&arg(0)?.into_poly()?, &arg(1)?.into_poly()?)?),
                Func::Divergence => Value::Poly(arg(0)?.into_vector_field()?.divergence()),
            })
        }
        Ast::Pow(base, e) => {
            let b = eval::<S>(base, space)?;
            let mut acc = Value::Poly(SuperPolynomial::one(space));
            for _ in 0..*e {
                acc = acc.mul(b.clone())?;
            }
            Ok(acc)
        }
        Ast::Product(factors) => {
            let mut acc = eval::<S>(&factors[0], space)?;
            for x in &factors[1..] {
                acc = acc.mul(eval(x, space)?)?;
            }
            Ok(acc)
        }
        Ast::Sum(terms) => {
            let mut acc = Value::Poly(SuperPolynomial::zero(space));
            for (neg, t) in terms {
                acc = acc.add(eval(t, space)?, *neg)?;
            }
            Ok(acc)
        }
    }
}
