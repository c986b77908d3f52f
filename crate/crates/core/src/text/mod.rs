//! Expression grammar, parser and canonical printers.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' int]
//! atom   := int ['/' int] | name | func '(' expr (',' expr)* ')' | '(' expr ')'
//! ```

mod ast;
mod eval;
mod parse;

pub use ast::{Ast, Func, Letter, Name};
pub use eval::{eval, Value};
pub use parse::{parse, ParseError};

use crate::scalar::Scalar;

/// Writes `c1*m1 + c2*m2 - …` with unit coefficients elided; `m == "1"`
/// marks a bare constant. Writes `0` for an empty sum.
pub(crate) fn write_sum<S: Scalar>(out: &mut String, terms: impl IntoIterator<Item = (S, String)>) {
    let start = out.len();
    for (c, body) in terms {
        let first = out.len() == start;
        let negative = c.is_negative();
        match (first, negative) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        let mag = c.abs();
        if body == "1" {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&body);
        } else {
            out.push_str(&mag.to_string());
            out.push('*');
            out.push_str(&body);
        }
    }
    if out.len() == start {
        out.push('0');
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalgebra::ContactSpace;
    use crate::Rational;

    fn space(l: usize, n: usize) -> ContactSpace {
        ContactSpace::new(l, n).unwrap()
    }

    fn show(input: &str, s: ContactSpace) -> String {
        eval::<Rational>(&parse(input).unwrap(), s).unwrap().to_string()
    }

    #[test]
    fn sum_of_two_products() {
        let ast = parse("x1*y1 + th1*th2").unwrap();
        let Ast::Sum(terms) = &ast else { panic!("{ast:?}") };
        assert_eq!(terms.len(), 2);
        assert!(terms
            .iter()
            .all(|(neg, t)| !neg && matches!(t, Ast::Product(f) if f.len() == 2)));
    }

    #[test]
    fn power_binds_tighter_than_product() {
        let ast = parse("Dx1^2 * Dth1").unwrap();
        let Ast::Product(f) = &ast else { panic!("{ast:?}") };
        assert!(matches!(&f[0], Ast::Pow(_, 2)));
        assert_eq!(f[1], Ast::Name(Name::Derivative(Letter::Theta(1))));
    }

    #[test]
    fn contact_field_call() {
        let ast = parse("Xf(z^2)").unwrap();
        assert!(matches!(&ast, Ast::Call(Func::ContactField, a) if matches!(a[0], Ast::Pow(_, 2))));
    }

    #[test]
    fn printing_round_trips() {
        for input in [
            "x1*y1 + th1*th2",
            "-(x1 - 2)*(3/4 + y1)^2",
            "(x1^2)^3 - (-z)",
            "Xf(z*x1) + lb(x1, y1 - 1)",
            "(1/2)^2*zeta*a1 - (-(b1 + g1))",
            "2^3",
        ] {
            let ast = parse(input).unwrap();
            assert_eq!(parse(&ast.to_string()).unwrap(), ast, "{input} -> {ast}");
        }
    }

    #[test]
    fn errors_carry_columns() {
        let e = parse("x1 + * y1").unwrap_err();
        assert_eq!(e.column, 6);
        assert_eq!(parse("x1 y1").unwrap_err().column, 4);
        assert_eq!(parse("x0").unwrap_err().column, 1);
        assert_eq!(parse("(x1").unwrap_err().column, 4);
        assert_eq!(parse("1/0").unwrap_err().column, 1);
        assert_eq!(parse("lb(x1)").unwrap_err().column, 3);
        assert_eq!(parse("x1 % 2").unwrap_err().column, 4);
    }

    #[test]
    fn evaluation() {
        let s = space(1, 2);
        assert_eq!(show("th2*th1 + th1*th2", s), "0");
        assert_eq!(show("Dx1*x1", s), "x1*Dx1 + 1");
        assert_eq!(show("Dth1*th1", s), "-th1*Dth1 + 1");
        assert_eq!(show("lb(1, z)", s), "1");
        assert_eq!(show("div(th1*Dth1)", s), "-1");
        assert_eq!(show("g1*g1", s), "0");
        assert_eq!(show("B1", s), "x1*Dz - Dy1");
    }

    #[test]
    fn evaluation_errors() {
        let s = space(1, 0);
        for bad in ["th1", "Dx2", "Xf(Dx1)", "Dx1*zeta", "div(Dx1^2)"] {
            assert!(eval::<Rational>(&parse(bad).unwrap(), s).is_err(), "{bad}");
        }
    }
}
