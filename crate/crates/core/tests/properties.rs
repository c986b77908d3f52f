use num_rational::Rational64;
use proptest::prelude::*;
use supercontact::diffops::{MultiIndex, NormalForm};
use supercontact::geometry::{contact_field, lagrange_bracket, ContactForm};
use supercontact::symbols::{symbol_of_normal_form, Grade};
use supercontact::text::{eval, parse, Ast, Func, Letter, Name, Value};
use supercontact::{ContactSpace, DiffOperator, Monomial, Rational, SuperPoly};

fn r(n: i64) -> Rational {
    Rational::from_integer(n)
}

fn space() -> impl Strategy<Value = ContactSpace> {
    prop::sample::select(vec![(1, 0), (0, 2), (1, 1), (1, 2), (2, 1)])
        .prop_map(|(l, n)| ContactSpace::new(l, n).unwrap())
}

fn monomial(s: ContactSpace, max_exp: u32) -> impl Strategy<Value = Monomial> {
    (prop::collection::vec(0..=max_exp, s.num_even()), 0..(1u32 << s.n()))
        .prop_map(|(even, odd)| Monomial::from_parts(even, odd))
}

fn poly(s: ContactSpace) -> impl Strategy<Value = SuperPoly> {
    let coeff = (-4i64..=4, 1i64..=3).prop_map(|(p, q)| Rational::new(p, q));
    prop::collection::vec((monomial(s, 2), coeff), 0..4).prop_map(move |terms| SuperPoly::from_terms(s, terms))
}

/// A polynomial keeping only the terms of the given parity.
fn homogeneous(s: ContactSpace, odd: bool) -> impl Strategy<Value = SuperPoly> {
    poly(s).prop_map(move |p| {
        let (even, odd_part) = p.split_parity();
        if odd {
            odd_part
        } else {
            even
        }
    })
}

fn operator(s: ContactSpace) -> impl Strategy<Value = DiffOperator> {
    let index = (prop::collection::vec(0..=2u32, s.num_even()), 0..(1u32 << s.n())).prop_map(move |(mut e, odd)| {
        e.extend((0..s.n()).map(|j| (odd >> j) & 1));
        MultiIndex::new(&s, e).unwrap()
    });
    prop::collection::vec((index, poly(s)), 0..4)
        .prop_map(move |terms| DiffOperator::from_terms(s, r(0), r(0), terms).unwrap())
}

fn lower(input: &str, s: ContactSpace) -> Value<Rational> {
    eval(&parse(input).unwrap_or_else(|e| panic!("{input}: {e}")), s).unwrap_or_else(|e| panic!("{input}: {e}"))
}

fn name() -> impl Strategy<Value = Name> {
    let idx = 1u32..=3;
    prop_oneof![
        Just(Name::Coordinate(Letter::Z)),
        idx.clone().prop_map(|i| Name::Coordinate(Letter::X(i))),
        idx.clone().prop_map(|i| Name::Coordinate(Letter::Theta(i))),
        Just(Name::Derivative(Letter::Z)),
        idx.clone().prop_map(|i| Name::Derivative(Letter::Y(i))),
        idx.clone().prop_map(|i| Name::Generator(Letter::X(i))),
        idx.clone().prop_map(|i| Name::Generator(Letter::Theta(i))),
        Just(Name::Moment(Letter::Z)),
        idx.prop_map(|i| Name::Moment(Letter::Y(i))),
    ]
}

/// Trees of the shapes the parser produces: no one-factor products and no
/// single unnegated sums.
fn ast() -> impl Strategy<Value = Ast> {
    let leaf = prop_oneof![
        (0i64..20, 1i64..5).prop_map(|(p, q)| Ast::Number(Rational64::new(p, q))),
        name().prop_map(Ast::Name),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            (inner.clone(), 0u32..4).prop_map(|(b, e)| Ast::Pow(Box::new(b), e)),
            prop::collection::vec(inner.clone(), 2..4).prop_map(Ast::Product),
            prop::collection::vec((any::<bool>(), inner.clone()), 1..4).prop_map(|mut terms| {
                if terms.len() == 1 {
                    terms[0].0 = true;
                }
                Ast::Sum(terms)
            }),
            inner.clone().prop_map(|a| Ast::Call(Func::ContactField, vec![a])),
            (inner.clone(), inner).prop_map(|(a, b)| Ast::Call(Func::Lagrange, vec![a, b])),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn printed_tree_parses_back(a in ast()) {
        let printed = a.to_string();
        prop_assert_eq!(parse(&printed).unwrap(), a, "{}", printed);
    }

    #[test]
    fn printing_a_parse_is_a_fixed_point(a in ast()) {
        let once = parse(&a.to_string()).unwrap().to_string();
        prop_assert_eq!(parse(&once).unwrap().to_string(), once);
    }

    #[test]
    fn printed_polynomials_evaluate_back((s, p) in space().prop_flat_map(|s| (Just(s), poly(s)))) {
        prop_assert_eq!(lower(&p.to_string(), s), Value::Poly(p));
    }

    #[test]
    fn printed_operators_evaluate_back((s, d) in space().prop_flat_map(|s| (Just(s), operator(s)))) {
        prop_assert_eq!(lower(&d.to_string(), s).into_operator().unwrap(), d);
    }

    #[test]
    fn normal_form_round_trips((s, d) in space().prop_flat_map(|s| (Just(s), operator(s)))) {
        let nf = d.normal_form();
        prop_assert_eq!(&nf.expand(), &d);
        prop_assert_eq!(NormalForm::from_operator(&nf.expand()), nf.clone());
        prop_assert_eq!(lower(&nf.to_string(), s).into_operator().unwrap(), d);
    }

    #[test]
    fn normal_form_acts_like_the_operator(
        (d, g) in space().prop_flat_map(|s| (operator(s), poly(s)))
    ) {
        prop_assert_eq!(d.normal_form().apply_poly(&g).unwrap(), d.apply_poly(&g).unwrap());
    }

    #[test]
    fn printed_symbols_evaluate_back((s, d) in space().prop_flat_map(|s| (Just(s), operator(s)))) {
        let nf = d.normal_form();
        let k = nf.order().unwrap_or(0);
        let sym = symbol_of_normal_form(&nf, Grade::Principal(k)).unwrap();
        prop_assert_eq!(lower(&sym.to_string(), s).into_symbol().unwrap(), sym);
    }

    #[test]
    fn product_is_supercommutative(
        (a, b, sign) in space().prop_flat_map(|s| {
            (any::<bool>(), any::<bool>()).prop_flat_map(move |(pa, pb)| {
                (homogeneous(s, pa), homogeneous(s, pb), Just(if pa && pb { -1 } else { 1 }))
            })
        })
    ) {
        prop_assert_eq!(&a * &b, (&b * &a).scale(&r(sign)));
    }

    #[test]
    fn lagrange_bracket_is_antisymmetric(
        (f, g, sign) in space().prop_flat_map(|s| {
            (any::<bool>(), any::<bool>()).prop_flat_map(move |(pf, pg)| {
                (homogeneous(s, pf), homogeneous(s, pg), Just(if pf && pg { 1 } else { -1 }))
            })
        })
    ) {
        let fg = lagrange_bracket(&f, &g).unwrap();
        let gf = lagrange_bracket(&g, &f).unwrap();
        prop_assert_eq!(fg, gf.scale(&r(sign)));
    }

    #[test]
    fn contact_field_contracts_to_its_generator(f in space().prop_flat_map(poly)) {
        let alpha = ContactForm::new(f.space());
        prop_assert_eq!(alpha.contract(&contact_field(&f)).unwrap(), f);
    }
}
