use std::sync::OnceLock;

use super::random::{self, Rng};
use super::{Check, GridSize, Tally};
use crate::densities::{contact_action, phi_iso, vect_action, Density};
use crate::diffops::{lie_derivative, DiffOperator, HalfInt, NormalForm, Word};
use crate::geometry::{contact_field, lagrange_bracket, tangent_apply, ContactForm, VectorField};
use crate::scalar::{sign, Scalar};
use crate::spo_action::{
    act, act_heisenberg, act_principal, act_sigma, expected_dimension, grade_of, weyl_oracle_action, SpoBasis,
};
use crate::superalgebra::{ContactSpace, Monomial, Parity, SuperPolynomial};
use crate::symbols::{
    fine_decomposition, fine_words, heisenberg_words, moment_words, symbol_of_normal_form, Grade, SymbolKind,
    SymbolPoly,
};
use crate::{Error, Rational};

type R = Rational;
type P = SuperPolynomial<R>;
type V = VectorField<R>;
type D = DiffOperator<R>;
type N = NormalForm<R>;
type Sym = SymbolPoly<R>;

fn sp(l: usize, n: usize) -> ContactSpace {
    ContactSpace::new(l, n).expect("small space")
}

fn r(n: i64) -> R {
    R::from_i64(n)
}

fn minus_half() -> R {
    R::new(-1, 2)
}

fn q(s: ContactSpace, a: usize) -> P {
    P::coordinate(s, a).expect("in range")
}

fn mono(s: ContactSpace, m: &Monomial) -> P {
    P::monomial(s, m.clone(), r(1))
}

fn spo(s: ContactSpace) -> Vec<P> {
    SpoBasis::<R>::new(s).map(|b| b.elements().to_vec()).unwrap_or_default()
}

fn parity_of(p: &P) -> Parity {
    p.parity().homogeneous().unwrap_or(Parity::Even)
}

fn failed(e: Error) -> Option<String> {
    Some(format!("error: {e}"))
}

fn expect_eq<T: PartialEq + std::fmt::Display>(
    left: &T,
    right: &T,
    context: impl FnOnce() -> String,
) -> Option<String> {
    (left != right).then(|| format!("{}: got {left}, expected {right}", context()))
}

fn seeded(tag: u64, i: usize) -> Rng {
    random::rng(tag.wrapping_mul(1_000_003).wrapping_add(i as u64))
}

// ---------------------------------------------------------------- superalgebra

fn algebra_spaces(grid: GridSize) -> Vec<ContactSpace> {
    match grid {
        GridSize::Small => vec![sp(1, 1), sp(1, 2)],
        GridSize::Full => (0..=2).flat_map(|l| (0..=3).map(move |n| sp(l, n))).collect(),
    }
}

fn supercommutativity(grid: GridSize) -> Tally {
    let cases: Vec<(ContactSpace, usize)> = algebra_spaces(grid)
        .into_iter()
        .flat_map(|s| (0..grid.pick(5, 20)).map(move |i| (s, i)))
        .collect();
    Tally::par(&cases, |&(s, i)| {
        let mut rng = seeded(1, i + 100 * s.num_coords());
        let (pp, pq) = (random::parity(&s, &mut rng), random::parity(&s, &mut rng));
        let p: P = random::homogeneous_poly(s, 4, pp, 3, &mut rng);
        let qq: P = random::homogeneous_poly(s, 4, pq, 3, &mut rng);
        let lhs = &p * &qq;
        let rhs = (&qq * &p).scale(&sign(pp.koszul(pq)));
        expect_eq(&lhs, &rhs, || format!("{s}: p = {p}, q = {qq}"))
    })
}

fn product_laws(grid: GridSize) -> Tally {
    let cases: Vec<(ContactSpace, usize)> = algebra_spaces(grid)
        .into_iter()
        .flat_map(|s| (0..grid.pick(5, 20)).map(move |i| (s, i)))
        .collect();
    Tally::par(&cases, |&(s, i)| {
        let mut rng = seeded(2, i + 100 * s.num_coords());
        let a: P = random::poly(s, 3, 3, &mut rng);
        let b: P = random::poly(s, 3, 3, &mut rng);
        let c: P = random::poly(s, 3, 3, &mut rng);
        let ctx = || format!("{s}: a = {a}, b = {b}, c = {c}");
        expect_eq(&(&(&a * &b) * &c), &(&a * &(&b * &c)), || {
            format!("associativity, {}", ctx())
        })
        .or_else(|| {
            expect_eq(&(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c)), || {
                format!("distributivity, {}", ctx())
            })
        })
        .or_else(|| (!(&a + &(-&a)).is_zero()).then(|| format!("a + (-a) != 0, {}", ctx())))
    })
}

fn derivatives_commute(grid: GridSize) -> Tally {
    let cases: Vec<(ContactSpace, usize)> = algebra_spaces(grid)
        .into_iter()
        .flat_map(|s| (0..grid.pick(3, 10)).map(move |i| (s, i)))
        .collect();
    Tally::par(&cases, |&(s, i)| {
        let mut rng = seeded(3, i + 100 * s.num_coords());
        let p: P = random::poly(s, 4, 5, &mut rng);
        for a in 0..s.num_coords() {
            for b in 0..s.num_coords() {
                let ab = p.partial(b).and_then(|x| x.partial(a));
                let ba = p.partial(a).and_then(|x| x.partial(b));
                match (ab, ba) {
                    (Ok(ab), Ok(ba)) => {
                        let ba = ba.scale(&sign(s.parity(a).koszul(s.parity(b))));
                        if let Some(msg) = expect_eq(&ab, &ba, || format!("{s}: d{a} d{b} on {p}")) {
                            return Some(msg);
                        }
                    }
                    (Err(e), _) | (_, Err(e)) => return failed(e),
                }
            }
        }
        None
    })
}

// ---------------------------------------------------------------- geometry

/// `Σ_k -ω_{kr} q^k`, the value of `T_r(z)`.
fn t_of_z(s: ContactSpace, t: usize) -> P {
    let mut out = P::zero(s);
    for k in 1..=s.rank() {
        let w = s.omega_lower(k, t);
        if w != 0 {
            out.add_term(Monomial::coordinate(&s, k), r(-w));
        }
    }
    out
}

fn structure_table(_grid: GridSize) -> Tally {
    let spaces = [sp(1, 0), sp(1, 1), sp(2, 1), sp(1, 3), sp(2, 3)];
    let cases: Vec<(ContactSpace, usize)> = spaces
        .iter()
        .flat_map(|&s| (1..=s.rank()).map(move |r| (s, r)))
        .collect();
    Tally::par(&cases, |&(s, rr)| {
        let t = V::tangent(s, rr).expect("in range");
        for k in 1..=s.rank() {
            let got = t.apply(&q(s, k)).expect("same space");
            let want = if k == rr { P::one(s) } else { P::zero(s) };
            if let Some(m) = expect_eq(&got, &want, || format!("{s}: T_{rr}(q^{k})")) {
                return Some(m);
            }
            let bracket = t.bracket(&V::tangent(s, k).expect("in range")).expect("same space");
            let want = V::reeb(s).scale(&r(-2 * s.omega_lower(rr, k)));
            if let Some(m) = expect_eq(&bracket, &want, || format!("{s}: [T_{rr}, T_{k}]")) {
                return Some(m);
            }
        }
        let z = q(s, 0);
        let tz = t_of_z(s, rr);
        expect_eq(&t.apply(&z).expect("same space"), &tz, || format!("{s}: T_{rr}(z)")).or_else(|| {
            expect_eq(
                &t.apply(&(&z * &z)).expect("same space"),
                &(&z * &tz).scale(&r(2)),
                || format!("{s}: T_{rr}(z^2)"),
            )
        })
    })
}

fn field_cases(grid: GridSize) -> Vec<(ContactSpace, usize)> {
    let spaces = grid.pick(
        vec![sp(1, 1)],
        vec![sp(1, 0), sp(0, 2), sp(1, 1), sp(1, 2), sp(2, 1), sp(2, 2)],
    );
    spaces
        .into_iter()
        .flat_map(|s| (0..grid.pick(5, 15)).map(move |i| (s, i)))
        .collect()
}

fn bracket_antisymmetry(grid: GridSize) -> Tally {
    Tally::par(&field_cases(grid), |&(s, i)| {
        let mut rng = seeded(4, i + 100 * s.num_coords());
        let (px, py) = (random::parity(&s, &mut rng), random::parity(&s, &mut rng));
        let x: V = random::homogeneous_field(s, 2, px, &mut rng);
        let y: V = random::homogeneous_field(s, 2, py, &mut rng);
        let xy = x.bracket(&y).expect("same space");
        let yx = y.bracket(&x).expect("same space").scale(&-sign::<R>(px.koszul(py)));
        expect_eq(&xy, &yx, || format!("{s}: X = {x}, Y = {y}"))
    })
}

fn super_jacobi(grid: GridSize) -> Tally {
    Tally::par(&field_cases(grid), |&(s, i)| {
        let mut rng = seeded(5, i + 100 * s.num_coords());
        let (px, py, pz) = (
            random::parity(&s, &mut rng),
            random::parity(&s, &mut rng),
            random::parity(&s, &mut rng),
        );
        let x: V = random::homogeneous_field(s, 2, px, &mut rng);
        let y: V = random::homogeneous_field(s, 2, py, &mut rng);
        let z: V = random::homogeneous_field(s, 2, pz, &mut rng);
        let br = |a: &V, b: &V| a.bracket(b).expect("same space");
        let lhs = br(&x, &br(&y, &z));
        let rhs = &br(&br(&x, &y), &z) + &br(&y, &br(&x, &z)).scale(&sign(px.koszul(py)));
        expect_eq(&lhs, &rhs, || format!("{s}: X = {x}, Y = {y}, Z = {z}"))
    })
}

fn contact_field_morphism(grid: GridSize) -> Tally {
    let spaces = grid.pick(vec![sp(1, 1)], vec![sp(1, 0), sp(0, 2), sp(1, 1), sp(1, 2), sp(2, 1)]);
    let cases: Vec<(ContactSpace, Monomial, Monomial)> = spaces
        .into_iter()
        .flat_map(|s| {
            let monos = Monomial::all_up_to_degree(&s, 2);
            let mut v = Vec::new();
            for a in &monos {
                for b in &monos {
                    v.push((s, a.clone(), b.clone()));
                }
            }
            v
        })
        .collect();
    Tally::par(&cases, |(s, a, b)| {
        let (f, g) = (mono(*s, a), mono(*s, b));
        let h = match lagrange_bracket(&f, &g) {
            Ok(h) => h,
            Err(e) => return failed(e),
        };
        let lhs = contact_field(&h);
        let rhs = contact_field(&f).bracket(&contact_field(&g)).expect("same space");
        expect_eq(&lhs, &rhs, || format!("{s}: f = {f}, g = {g}"))
    })
}

fn contact_section(grid: GridSize) -> Tally {
    let (s, deg) = grid.pick((sp(1, 1), 3), (sp(2, 2), 4));
    let monos = Monomial::all_up_to_degree(&s, deg);
    let alpha = ContactForm::new(s);
    Tally::par(&monos, |m| {
        let f = mono(s, m);
        match alpha.contract(&contact_field(&f)) {
            Ok(c) => expect_eq(&c, &f, || format!("{s}: f = {f}")),
            Err(e) => failed(e),
        }
    })
}

fn tangent_decomposition(grid: GridSize) -> Tally {
    Tally::par(&field_cases(grid), |&(s, i)| {
        let mut rng = seeded(6, i + 100 * s.num_coords());
        let x: V = random::field(s, 3, &mut rng);
        let f = match ContactForm::new(s).contract(&x) {
            Ok(f) => f,
            Err(e) => return failed(e),
        };
        let y = &x - &contact_field(&f);
        let mut rebuilt = V::zero(s);
        for rr in 1..=s.rank() {
            let t = V::tangent(s, rr).expect("in range");
            rebuilt.add_assign_ref(&t.left_mul(y.component(rr)).expect("same space"));
        }
        expect_eq(&rebuilt, &y, || format!("{s}: X = {x}"))
    })
}

// ---------------------------------------------------------------- densities

fn weights() -> [R; 3] {
    [r(0), r(1), minus_half()]
}

fn tensor_action_morphism(grid: GridSize) -> Tally {
    Tally::par(&field_cases(grid), |&(s, i)| {
        let mut rng = seeded(7, i + 100 * s.num_coords());
        let (px, py) = (random::parity(&s, &mut rng), random::parity(&s, &mut rng));
        let x: V = random::homogeneous_field(s, 2, px, &mut rng);
        let y: V = random::homogeneous_field(s, 2, py, &mut rng);
        let g: P = random::poly(s, 3, 3, &mut rng);
        for lam in weights() {
            let d = Density::tensor(g.clone(), lam);
            let act = |x: &V, d: &Density<R>| vect_action(x, d).expect("tensor kind");
            let lhs =
                act(&x, &act(&y, &d)).into_value() - act(&y, &act(&x, &d)).into_value().scale(&sign(px.koszul(py)));
            let rhs = act(&x.bracket(&y).expect("same space"), &d).into_value();
            if let Some(m) = expect_eq(&lhs, &rhs, || format!("{s}: X = {x}, Y = {y}, g = {g}, lambda = {lam}")) {
                return Some(m);
            }
        }
        None
    })
}

fn spo_pairs(spaces: &[ContactSpace]) -> Vec<(ContactSpace, P, P)> {
    let mut out = Vec::new();
    for &s in spaces {
        let basis = spo(s);
        for (i, f) in basis.iter().enumerate() {
            for g in &basis[i..] {
                out.push((s, f.clone(), g.clone()));
            }
        }
    }
    out
}

fn contact_action_morphism(grid: GridSize) -> Tally {
    let spaces = grid.pick(vec![sp(1, 0)], vec![sp(1, 0), sp(1, 1)]);
    let pairs = spo_pairs(&spaces);
    let indexed: Vec<(usize, &(ContactSpace, P, P))> = pairs.iter().enumerate().collect();
    Tally::par(&indexed, |&(i, (s, f, g))| {
        let s = *s;
        let mut rng = seeded(8, i);
        let sign_fg = sign::<R>(parity_of(f).koszul(parity_of(g)));
        let h = lagrange_bracket(f, g).expect("same space");
        let (xf, xg, xh) = (contact_field(f), contact_field(g), contact_field(&h));
        for _ in 0..2 {
            let psi: P = random::poly(s, 3, 3, &mut rng);
            for lam in weights() {
                let ctx = || format!("{s}: f = {f}, g = {g}, psi = {psi}, lambda = {lam}");
                let c = Density::contact(psi.clone(), lam);
                let ca = |f: &P, d: &Density<R>| contact_action(f, d).expect("contact kind");
                let lhs = ca(f, &ca(g, &c)).into_value() - ca(g, &ca(f, &c)).into_value().scale(&sign_fg);
                let rhs = ca(&h, &c).into_value();
                if let Some(m) = expect_eq(&lhs, &rhs, || format!("contact densities, {}", ctx())) {
                    return Some(m);
                }
                let t = Density::tensor(psi.clone(), lam);
                let va = |x: &V, d: &Density<R>| vect_action(x, d).expect("tensor kind");
                let lhs = va(&xf, &va(&xg, &t)).into_value() - va(&xg, &va(&xf, &t)).into_value().scale(&sign_fg);
                let rhs = va(&xh, &t).into_value();
                if let Some(m) = expect_eq(&lhs, &rhs, || format!("tensor densities, {}", ctx())) {
                    return Some(m);
                }
            }
        }
        None
    })
}

fn coucou_spaces(grid: GridSize) -> Vec<ContactSpace> {
    grid.pick(vec![sp(1, 1)], vec![sp(1, 0), sp(1, 1), sp(1, 2)])
}

fn phi_intertwines(grid: GridSize) -> Tally {
    let mut cases = Vec::new();
    for s in coucou_spaces(grid) {
        let gs = Monomial::all_up_to_degree(&s, 3);
        for f in spo(s) {
            for lam in weights() {
                cases.push((s, f.clone(), lam, gs.clone()));
            }
        }
    }
    let mut t = Tally::par(&cases, |(s, f, lam, gs)| {
        let xf = contact_field(f);
        for m in gs {
            let d = Density::contact(mono(*s, m), *lam);
            let left = contact_action(f, &d).and_then(|x| phi_iso(&x));
            let right = phi_iso(&d).and_then(|p| vect_action(&xf, &p));
            match (left, right) {
                (Ok(a), Ok(b)) => {
                    if a != b {
                        return Some(format!(
                            "{s}: f = {f}, g = {}, lambda = {lam}: {a} vs {b}",
                            m.display(s)
                        ));
                    }
                }
                (Err(e), _) | (_, Err(e)) => return failed(e),
            }
        }
        None
    });
    let s = sp(0, 2);
    let outcome = match phi_iso(&Density::contact(P::one(s), r(1))) {
        Err(Error::UnsupportedSuperdimension(_)) => None,
        other => Some(format!("{s}: expected the superdimension -1 error, got {other:?}")),
    };
    t.record(outcome);
    t
}

fn contact_divergence(grid: GridSize) -> Tally {
    let cases: Vec<(ContactSpace, Monomial)> = coucou_spaces(grid)
        .into_iter()
        .flat_map(|s| Monomial::all_up_to_degree(&s, 3).into_iter().map(move |m| (s, m)))
        .collect();
    Tally::par(&cases, |(s, m)| {
        let f = mono(*s, m);
        let factor = R::new(2 * s.l() as i64 + 2 - s.n() as i64, 2);
        expect_eq(&contact_field(&f).divergence(), &f.dz().scale(&factor), || {
            format!("{s}: f = {f}")
        })
    })
}

// ---------------------------------------------------------------- diffops

struct CorpusEntry {
    nf: N,
    op: D,
}

fn corpus(grid: GridSize) -> &'static [CorpusEntry] {
    static SMALL: OnceLock<Vec<CorpusEntry>> = OnceLock::new();
    static FULL: OnceLock<Vec<CorpusEntry>> = OnceLock::new();
    let cell = grid.pick(&SMALL, &FULL);
    cell.get_or_init(|| {
        let s = sp(1, 2);
        let words = random::words_within(&s, 4, HalfInt::from_int(3));
        (0..grid.pick(50, 500))
            .map(|i| {
                let mut rng = seeded(9, i);
                let nf = random::normal_form(s, &words, 5, 2, (r(0), R::new(1, 2)), &mut rng);
                let op = nf.expand();
                CorpusEntry { nf, op }
            })
            .collect()
    })
}

fn normal_form_round_trip(grid: GridSize) -> Tally {
    let indexed: Vec<(usize, &CorpusEntry)> = corpus(grid).iter().enumerate().collect();
    Tally::par(&indexed, |&(i, e)| {
        let back = e.op.normal_form();
        expect_eq(&back, &e.nf, || format!("operator #{i} = {}", e.op)).or_else(|| {
            expect_eq(&back.expand(), &e.op, || {
                format!("operator #{i}, expand(normal_form(D))")
            })
        })
    })
}

fn normal_form_functional(grid: GridSize) -> Tally {
    let s = sp(1, 2);
    let monos = Monomial::all_up_to_degree(&s, 4);
    let indexed: Vec<(usize, &CorpusEntry)> = corpus(grid).iter().enumerate().collect();
    Tally::par(&indexed, |&(i, e)| {
        let round = e.op.normal_form().expand();
        for m in &monos {
            let g = mono(s, m);
            let direct = e.op.apply_poly(&g).expect("same space");
            let by_fields = e.nf.apply_poly(&g).expect("same space");
            let by_round = round.apply_poly(&g).expect("same space");
            let ctx = || format!("operator #{i} = {} on {g}", e.op);
            if let Some(msg) = expect_eq(&by_fields, &direct, ctx).or_else(|| expect_eq(&by_round, &direct, ctx)) {
                return Some(msg);
            }
        }
        None
    })
}

fn filtration_preserved(grid: GridSize) -> Tally {
    let s = sp(1, 2);
    let basis = spo(s);
    let items: Vec<(usize, &CorpusEntry)> = corpus(grid).iter().enumerate().collect();
    let mut t = Tally::default();
    for f in &basis {
        t.absorb(Tally::par(&items, |&(i, e)| {
            let moved = match lie_derivative(f, &e.op) {
                Ok(m) => m.normal_form(),
                Err(err) => return failed(err),
            };
            let (k0, d0) = e.nf.bi_order().expect("nonzero corpus");
            match moved.bi_order() {
                None => None,
                Some((k, d)) => (k > k0
                    || d > d0
                    || moved.order() > e.nf.order()
                    || moved.heisenberg_order() > e.nf.heisenberg_order())
                .then(|| {
                    format!(
                        "f = {f}, operator #{i} = {}: bi-order ({k0}, {d0}) became ({k}, {d})",
                        e.op
                    )
                }),
            }
        }));
    }
    t
}

fn module_law_cases(grid: GridSize) -> Vec<(ContactSpace, P, P, D)> {
    let spaces = grid.pick(vec![sp(1, 0)], vec![sp(1, 0), sp(1, 1)]);
    let mut out = Vec::new();
    for &s in &spaces {
        let ops: Vec<D> = (0..grid.pick(1, 2))
            .map(|i| {
                let mut rng = seeded(10, i + 10 * s.n());
                random::operator(s, 3, HalfInt::from_int(2), 4, 1, (minus_half(), r(1)), &mut rng)
            })
            .collect();
        for (_, f, g) in spo_pairs(&[s]) {
            for d in &ops {
                out.push((s, f.clone(), g.clone(), d.clone()));
            }
        }
    }
    out
}

fn operator_module_law(grid: GridSize) -> Tally {
    Tally::par(&module_law_cases(grid), |(s, f, g, d)| {
        let run = || -> crate::Result<Option<String>> {
            let lf = |x: &D| lie_derivative(f, x);
            let lg = |x: &D| lie_derivative(g, x);
            let h = lagrange_bracket(f, g)?;
            let sign_fg = sign::<R>(parity_of(f).koszul(parity_of(g)));
            let fg = lf(&lg(d)?)?;
            let gf = lg(&lf(d)?)?.scale(&sign_fg);
            let lhs = fg.checked_sub(&gf)?;
            let rhs = lie_derivative(&h, d)?;
            Ok(expect_eq(&lhs, &rhs, || format!("{s}: f = {f}, g = {g}, D = {d}")))
        };
        run().unwrap_or_else(failed)
    })
}

fn operator_action_consistency(grid: GridSize) -> Tally {
    let spaces = grid.pick(vec![sp(1, 1)], vec![sp(1, 1), sp(0, 2), sp(1, 2)]);
    let mut cases = Vec::new();
    for &s in &spaces {
        for (j, f) in spo(s).into_iter().enumerate() {
            cases.push((s, f, j));
        }
    }
    Tally::par(&cases, |(s, f, j)| {
        let s = *s;
        let mut rng = seeded(11, j + 100 * s.num_coords());
        let (lam, mu) = (minus_half(), r(1));
        let d = random::operator(s, 3, HalfInt::from_int(2), 4, 1, (lam, mu), &mut rng);
        let psi: P = random::poly(s, 3, 3, &mut rng);
        let moved = match lie_derivative(f, &d) {
            Ok(m) => m,
            Err(e) => return failed(e),
        };
        let lhs = moved.apply_poly(&psi).expect("same space");
        let mut rhs = P::zero(s);
        let pf = parity_of(f);
        for (pd, part) in d.homogeneous_parts() {
            let outer = contact_action(f, &Density::contact(part.apply_poly(&psi).expect("same space"), mu))
                .expect("contact kind")
                .into_value();
            let inner = contact_action(f, &Density::contact(psi.clone(), lam)).expect("contact kind");
            let inner = part.apply_poly(inner.value()).expect("same space");
            rhs.add_assign_ref(&outer);
            rhs.add_scaled(&inner, &-sign::<R>(pf.koszul(pd)));
        }
        expect_eq(&lhs, &rhs, || format!("{s}: f = {f}, D = {d}, psi = {psi}"))
    })
}

fn composition_orders(grid: GridSize) -> Tally {
    let s = sp(1, 1);
    let idx: Vec<usize> = (0..grid.pick(20, 100)).collect();
    Tally::par(&idx, |&i| {
        let mut rng = seeded(12, i);
        let a = random::operator(s, 2, HalfInt::from_twice(3), 3, 2, (r(1), r(2)), &mut rng);
        let b = random::operator(s, 2, HalfInt::from_int(2), 3, 2, (r(0), r(1)), &mut rng);
        let c = match a.compose(&b) {
            Ok(c) => c,
            Err(e) => return failed(e),
        };
        let (na, nb, nc) = (a.normal_form(), b.normal_form(), c.normal_form());
        let ok_k = match (na.order(), nb.order(), nc.order()) {
            (Some(x), Some(y), Some(z)) => z <= x + y,
            (_, _, None) => true,
            _ => false,
        };
        let ok_d = match (na.heisenberg_order(), nb.heisenberg_order(), nc.heisenberg_order()) {
            (Some(x), Some(y), Some(z)) => z.twice() <= x.twice() + y.twice(),
            (_, _, None) => true,
            _ => false,
        };
        let ok_w = *c.source() == r(0) && *c.target() == r(2);
        (!(ok_k && ok_d && ok_w)).then(|| format!("{s}: A = {a}, B = {b}"))
    })
}

fn order_bounds(grid: GridSize) -> Tally {
    let items: Vec<(usize, &CorpusEntry)> = corpus(grid).iter().enumerate().collect();
    Tally::par(&items, |&(i, e)| {
        for (w, _) in e.nf.terms() {
            let (k, d) = (w.canonical_degree(), w.heisenberg_degree());
            if k < d.ceil() || k > d.twice() {
                return Some(format!("operator #{i}: term with (k, d) = ({k}, {d})"));
            }
        }
        let (k, d) = e.nf.bi_order().expect("nonzero corpus");
        let nested = e.nf.filter(|w| w.heisenberg_degree() <= d.succ()).num_terms() == e.nf.num_terms()
            && e.nf.filter(|w| w.canonical_degree() <= k + 1).num_terms() == e.nf.num_terms()
            && e.op.order() == Some(k);
        (!nested).then(|| format!("operator #{i}: filtration membership at ({k}, {d})"))
    })
}

// ---------------------------------------------------------------- symbols

fn decomposition(_grid: GridSize) -> Tally {
    let cases: Vec<(ContactSpace, u32)> = [sp(1, 1), sp(2, 1)]
        .into_iter()
        .flat_map(|s| (0..=4).map(move |t| (s, t)))
        .collect();
    Tally::par(&cases, |&(s, twice)| {
        let d = HalfInt::from_twice(twice);
        let whole = heisenberg_words(&s, d);
        let parts = fine_decomposition(&s, d, 0);
        let ks: Vec<u32> = parts.iter().map(|p| p.k).collect();
        let expected_ks: Vec<u32> = (d.ceil()..=d.twice()).collect();
        if ks != expected_ks {
            return Some(format!("{s}, d = {d}: k range {ks:?}"));
        }
        if parts.iter().any(|p| p.basis.is_empty()) {
            return Some(format!("{s}, d = {d}: empty fine component"));
        }
        for k in 0..=d.twice() + 2 {
            if !(d.ceil()..=d.twice()).contains(&k) && !fine_words(&s, k, d).is_empty() {
                return Some(format!("{s}, d = {d}: words at k = {k}"));
            }
        }
        let mut union: Vec<Word> = parts
            .iter()
            .flat_map(|p| p.basis.iter().map(|(_, w)| w.clone()))
            .collect();
        let total = union.len();
        union.sort();
        union.dedup();
        if union.len() != total {
            return Some(format!("{s}, d = {d}: fine components overlap"));
        }
        (union != whole).then(|| format!("{s}, d = {d}: union {} words, P^d has {}", union.len(), whole.len()))
    })
}

fn symbol_kernels(_grid: GridSize) -> Tally {
    let s = sp(1, 1);
    let words = random::words_within(&s, 3, HalfInt::from_int(2));
    let mut grades = Vec::new();
    for k in 0..=3 {
        for twice in 0..=4 {
            grades.push((k, HalfInt::from_twice(twice)));
        }
    }
    Tally::par(&grades, |&(k, d)| {
        for w in words
            .iter()
            .filter(|w| w.canonical_degree() <= k && w.heisenberg_degree() <= d)
        {
            let nf = N::from_terms(s, r(0), r(1), [(w.clone(), P::one(s))]).expect("valid word");
            let sym = match symbol_of_normal_form(&nf, Grade::Fine(k, d)) {
                Ok(x) => x,
                Err(e) => return failed(e),
            };
            let lower = w.canonical_degree() < k || w.heisenberg_degree() < d;
            if sym.is_zero() != lower {
                return Some(format!("fine symbol ({k}, {d}) of {}", w.operator_name(&s)));
            }
            if !lower && sym != Sym::moment(s, w.clone(), r(1)) {
                return Some(format!("fine symbol ({k}, {d}) of {} is {sym}", w.operator_name(&s)));
            }
        }
        None
    })
}

fn grading_consistency(grid: GridSize) -> Tally {
    let cases: Vec<(ContactSpace, usize)> = [sp(1, 1), sp(1, 2)]
        .into_iter()
        .flat_map(|s| (0..grid.pick(10, 50)).map(move |i| (s, i)))
        .collect();
    Tally::par(&cases, |&(s, i)| {
        let mut rng = seeded(13, i + 100 * s.n());
        let nf = random::normal_form(
            s,
            &random::words_within(&s, 3, HalfInt::from_int(2)),
            4,
            1,
            (r(0), r(1)),
            &mut rng,
        );
        let (k, d) = nf.bi_order().expect("nonzero");
        let run = || -> crate::Result<Option<String>> {
            let h = symbol_of_normal_form(&nf, Grade::Heisenberg(d))?;
            let p = symbol_of_normal_form(&nf, Grade::Principal(k))?;
            let f = symbol_of_normal_form(&nf, Grade::Fine(k, d))?;
            let mut sum = Sym::zero(s, r(1));
            for kk in d.ceil()..=d.twice() {
                sum = sum.checked_add(&h.fine_component(kk))?;
            }
            let ctx = || format!("{s}: N = {nf}");
            Ok(expect_eq(&sum, &h, ctx)
                .or_else(|| expect_eq(&h.fine_component(k), &f, ctx))
                .or_else(|| expect_eq(&p.filter(|w| w.heisenberg_degree() == d), &f, ctx)))
        };
        run().unwrap_or_else(failed)
    })
}

// ---------------------------------------------------------------- spo_action

fn spo_closure(_grid: GridSize) -> Tally {
    let spaces = [sp(1, 0), sp(1, 1), sp(1, 2), sp(2, 1)];
    let mut t = Tally::default();
    for s in spaces {
        match SpoBasis::<R>::new(s) {
            Err(e) => t.record(failed(e)),
            Ok(b) => {
                t.record(expect_eq(&b.dimension(), &expected_dimension(&s), || {
                    format!("{s}: dimension")
                }));
                t.absorb(Tally::par(&spo_pairs(&[s]), |(s, f, g)| match lagrange_bracket(f, g) {
                    Ok(h) => (!b.contains(&h)).then(|| format!("{s}: {{{f}, {g}}} = {h} leaves the span")),
                    Err(e) => failed(e),
                }));
            }
        }
    }
    t
}

struct TheoremCase {
    space: ContactSpace,
    f: P,
    symbol: Sym,
    /// Oracle projections in the order fine, principal, Heisenberg.
    oracle: [crate::Result<Sym>; 3],
    formula: [crate::Result<Sym>; 3],
}

const KINDS: [SymbolKind; 3] = [SymbolKind::Fine, SymbolKind::Principal, SymbolKind::Heisenberg];

fn theorem_inputs(grid: GridSize) -> Vec<(ContactSpace, P, Sym)> {
    let spaces = grid.pick(vec![sp(1, 0), sp(1, 1)], vec![sp(1, 0), sp(1, 1), sp(1, 2), sp(2, 1)]);
    let deltas = grid.pick(vec![r(0), minus_half()], weights().to_vec());
    let max_k = grid.pick(2, 3);
    let mut out = Vec::new();
    for s in spaces {
        let basis = spo(s);
        for w in moment_words(&s, max_k) {
            for delta in &deltas {
                let sym = Sym::moment(s, w.clone(), *delta);
                for f in &basis {
                    out.push((s, f.clone(), sym.clone()));
                }
            }
        }
    }
    out
}

/// Lie derivative of the lift from `λ`, projected by all three symbol maps.
fn oracle_projections(f: &P, symbol: &Sym, source: R, lower: Option<&N>) -> [crate::Result<Sym>; 3] {
    let mut lift = symbol.lift(source).expand();
    if let Some(extra) = lower {
        lift = lift.checked_add(&extra.expand()).expect("same weights");
    }
    let moved = lie_derivative(f, &lift).map(|m| m.normal_form());
    KINDS.map(|kind| {
        let moved = moved.clone()?;
        symbol_of_normal_form(&moved, grade_of(symbol, kind)?)
    })
}

fn theorem_grid(grid: GridSize) -> &'static [TheoremCase] {
    static SMALL: OnceLock<Vec<TheoremCase>> = OnceLock::new();
    static FULL: OnceLock<Vec<TheoremCase>> = OnceLock::new();
    let cell = grid.pick(&SMALL, &FULL);
    cell.get_or_init(|| {
        use rayon::prelude::*;
        theorem_inputs(grid)
            .into_par_iter()
            .map(|(space, f, symbol)| TheoremCase {
                oracle: oracle_projections(&f, &symbol, r(0), None),
                formula: KINDS.map(|kind| act(&f, &symbol, kind)),
                space,
                f,
                symbol,
            })
            .collect()
    })
}

fn compare(case: &TheoremCase, slot: usize) -> Option<String> {
    let ctx = format!(
        "{} {}: f = {}, S = {}, delta = {}",
        KINDS[slot],
        case.space,
        case.f,
        case.symbol,
        case.symbol.weight()
    );
    match (&case.formula[slot], &case.oracle[slot]) {
        (Ok(a), Ok(o)) => (a != o).then(|| format!("{ctx}: formula {a}, oracle {o}")),
        (Err(e), _) | (_, Err(e)) => Some(format!("{ctx}: {e}")),
    }
}

fn theorem_fine(grid: GridSize) -> Tally {
    Tally::par(theorem_grid(grid), |c| compare(c, 0))
}

fn theorem_principal(grid: GridSize) -> Tally {
    Tally::par(theorem_grid(grid), |c| compare(c, 1))
}

fn theorem_heisenberg(grid: GridSize) -> Tally {
    Tally::par(theorem_grid(grid), |c| compare(c, 2))
}

fn theorem_heisenberg_weyl(grid: GridSize) -> Tally {
    Tally::par(theorem_grid(grid), |c| {
        let ctx = || {
            format!(
                "{}: f = {}, S = {}, delta = {}",
                c.space,
                c.f,
                c.symbol,
                c.symbol.weight()
            )
        };
        match (&c.formula[2], weyl_oracle_action(&c.f, &c.symbol)) {
            (Ok(a), Ok(o)) => (a != &o).then(|| format!("{}: formula {a}, Weyl-ordered oracle {o}", ctx())),
            (Err(e), _) => Some(format!("{}: {e}", ctx())),
            (_, Err(e)) => Some(format!("{}: {e}", ctx())),
        }
    })
}

fn weight_split(grid: GridSize) -> Tally {
    Tally::par(theorem_grid(grid), |c| {
        let shifted = oracle_projections(&c.f, &c.symbol, r(1), None);
        for (slot, kind) in KINDS.iter().enumerate() {
            let same = match (&shifted[slot], &c.oracle[slot]) {
                (Ok(a), Ok(b)) => a == b,
                (Err(_), Err(_)) => true,
                _ => false,
            };
            if !same {
                return Some(format!(
                    "{kind} {}: f = {}, S = {}: lambda = 1 differs from lambda = 0",
                    c.space, c.f, c.symbol
                ));
            }
        }
        None
    })
}

/// A random operator strictly below the grade of `symbol` in `kind`'s filtration.
fn lower_term(symbol: &Sym, kind: SymbolKind, rng: &mut Rng) -> Option<N> {
    use rand::seq::SliceRandom;
    let s = symbol.space();
    let (k, d) = symbol.bidegree()?;
    let words: Vec<Word> = random::words_within(&s, k + 1, d.succ())
        .into_iter()
        .filter(|w| {
            let (kw, dw) = (w.canonical_degree(), w.heisenberg_degree());
            match kind {
                SymbolKind::Principal => kw < k,
                SymbolKind::Heisenberg => dw < d,
                SymbolKind::Fine => (kw < k && dw <= d) || (kw <= k && dw < d),
            }
        })
        .collect();
    if words.is_empty() {
        return None;
    }
    let terms: Vec<(Word, P)> = (0..2)
        .map(|_| (words.choose(rng).expect("nonempty").clone(), random::poly(s, 2, 2, rng)))
        .collect();
    Some(N::from_terms(s, r(0), *symbol.weight(), terms).expect("valid words"))
}

fn representative_independence(grid: GridSize) -> Tally {
    let cases: Vec<(usize, &TheoremCase)> = theorem_grid(grid).iter().enumerate().collect();
    Tally::par(&cases, |&(i, c)| {
        let mut rng = seeded(14, i);
        for (slot, kind) in KINDS.iter().enumerate() {
            let Some(lower) = lower_term(&c.symbol, *kind, &mut rng) else {
                continue;
            };
            let perturbed = oracle_projections(&c.f, &c.symbol, r(0), Some(&lower));
            let same = match (&perturbed[slot], &c.oracle[slot]) {
                (Ok(a), Ok(b)) => a == b,
                _ => false,
            };
            if !same {
                return Some(format!(
                    "{kind} {}: f = {}, S = {}, lower = {lower}",
                    c.space, c.f, c.symbol
                ));
            }
        }
        None
    })
}

/// The moment `ξ_r` of `T_r` in terms of the stored moments.
fn xi(s: ContactSpace, rr: usize, weight: R) -> Sym {
    let m = Sym::moment(s, Word::generator(&s, rr), weight);
    if rr > s.l() && rr <= 2 * s.l() {
        m.scale(&r(-1))
    } else {
        m
    }
}

fn generator_identities(grid: GridSize) -> Tally {
    let spaces = grid.pick(vec![sp(1, 0), sp(1, 1)], vec![sp(1, 0), sp(1, 1), sp(1, 2), sp(2, 1)]);
    let mut cases = Vec::new();
    for s in spaces {
        for f in spo(s) {
            for delta in weights() {
                cases.push((s, f.clone(), delta));
            }
        }
    }
    Tally::par(&cases, |(s, f, delta)| {
        let (s, delta) = (*s, *delta);
        let pf = parity_of(f);
        let fp = f.dz();
        let oracle = |sym: &Sym| oracle_projections(f, sym, r(0), None)[0].clone();
        let ctx = |what: &str| format!("{what} {s}: f = {f}, delta = {delta}");
        // ζ ↦ (δ - 1) f' ζ
        let zeta = Sym::moment(s, Word::dz_power(&s, 1), delta);
        let want = zeta.map_coefficients(|g| (&fp * g).scale(&(delta - r(1))));
        match oracle(&zeta) {
            Ok(got) if got == want => {}
            other => return Some(format!("{}: {other:?}", ctx("zeta"))),
        }
        // ξ_i ↦ δ f' ξ_i + ½(-1)^{f̃(r̃+ĩ)} ω^{rs} T_i T_r(f) ξ_s
        for i in 1..=s.rank() {
            let xi_i = xi(s, i, delta);
            let mut want = xi_i.map_coefficients(|g| (&fp * g).scale(&delta));
            for rr in 1..=s.rank() {
                let ss = s.omega_partner(rr);
                let c = sign::<R>(pf.koszul(s.parity(rr).plus(s.parity(i)))) * r(s.omega_upper(rr, ss)) * R::new(1, 2);
                let coeff = tangent_apply(i, &tangent_apply(rr, f)).scale(&c);
                let term = Sym::function(coeff, r(0))
                    .checked_mul(&xi(s, ss, delta))
                    .expect("same space");
                want = want.checked_add(&term).expect("same weight");
            }
            match oracle(&xi_i) {
                Ok(got) if got == want => {}
                other => return Some(format!("{} xi_{i}: {other:?} vs {want}", ctx("xi"))),
            }
        }
        // g α^δ ↦ (f ∂_z + δ f' - ½(-1)^{f̃ r̃} ω^{rs} T_r(f) T_s)(g)
        for m in Monomial::all_up_to_degree(&s, 2) {
            let g = mono(s, &m);
            let mut want = &(f * &g.dz()) + &(&fp * &g).scale(&delta);
            for rr in 1..=s.rank() {
                let ss = s.omega_partner(rr);
                let c = -sign::<R>(pf.koszul(s.parity(rr))) * r(s.omega_upper(rr, ss)) * R::new(1, 2);
                want.add_scaled(&(&tangent_apply(rr, f) * &tangent_apply(ss, &g)), &c);
            }
            let want = Sym::function(want, delta);
            match oracle(&Sym::function(g.clone(), delta)) {
                Ok(got) if got == want => {}
                other => return Some(format!("{} g = {g}: {other:?} vs {want}", ctx("function"))),
            }
        }
        None
    })
}

fn action_degrees(grid: GridSize) -> Tally {
    Tally::par(theorem_grid(grid), |c| {
        let (k, d) = c.symbol.bidegree().expect("monomial");
        let ok = |res: &crate::Result<Sym>, good: &dyn Fn(&Word) -> bool| match res {
            Ok(x) => x.terms().all(|(w, _)| good(w)),
            Err(_) => false,
        };
        let fine = ok(&c.formula[0], &|w| {
            w.canonical_degree() == k && w.heisenberg_degree() == d
        });
        let principal = ok(&c.formula[1], &|w| w.canonical_degree() == k);
        let heisenberg = ok(&c.formula[2], &|w| w.heisenberg_degree() == d);
        (!(fine && principal && heisenberg)).then(|| format!("{}: f = {}, S = {}", c.space, c.f, c.symbol))
    })
}

fn representation_law(grid: GridSize) -> Tally {
    let spaces = grid.pick(vec![sp(1, 0)], vec![sp(1, 0), sp(1, 1)]);
    let mut cases = Vec::new();
    for (s, f, g) in spo_pairs(&spaces) {
        cases.push((s, f, g));
    }
    Tally::par(&cases, |(s, f, g)| {
        let h = lagrange_bracket(f, g).expect("same space");
        let sign_fg = sign::<R>(parity_of(f).koszul(parity_of(g)));
        for w in moment_words(s, 2) {
            let sym = Sym::moment(*s, w, minus_half());
            for (name, law) in [
                ("fine", act_sigma as fn(&P, &Sym) -> crate::Result<Sym>),
                ("principal", act_principal),
                ("heisenberg", act_heisenberg),
            ] {
                let run = || -> crate::Result<bool> {
                    let lhs = law(f, &law(g, &sym)?)?.checked_sub(&law(g, &law(f, &sym)?)?.scale(&sign_fg))?;
                    Ok(lhs == law(&h, &sym)?)
                };
                if !run().unwrap_or(false) {
                    return Some(format!("{name} {s}: f = {f}, g = {g}, S = {sym}"));
                }
            }
        }
        None
    })
}

fn derivation_property(grid: GridSize) -> Tally {
    let spaces = grid.pick(vec![sp(1, 1)], vec![sp(1, 1), sp(1, 2)]);
    let mut cases = Vec::new();
    for s in spaces {
        for (j, f) in spo(s).into_iter().enumerate() {
            cases.push((s, f, j));
        }
    }
    Tally::par(&cases, |(s, f, j)| {
        let s = *s;
        let mut rng = seeded(15, *j + 100 * s.n());
        let pf = parity_of(f);
        for _ in 0..3 {
            let (p1, p2) = (random::parity(&s, &mut rng), random::parity(&s, &mut rng));
            let w1 = fine_words(&s, 2, HalfInt::from_twice(3));
            let w2 = fine_words(&s, 1, HalfInt::HALF);
            let a = random::homogeneous_symbol(s, &w1, p1, minus_half(), &mut rng);
            let b = random::homogeneous_symbol(s, &w2, p2, r(1), &mut rng);
            for (name, law) in [
                ("fine", act_sigma as fn(&P, &Sym) -> crate::Result<Sym>),
                ("principal", act_principal),
            ] {
                let run = || -> crate::Result<bool> {
                    let lhs = law(f, &a.checked_mul(&b)?)?;
                    let rhs = law(f, &a)?
                        .checked_mul(&b)?
                        .checked_add(&a.checked_mul(&law(f, &b)?)?.scale(&sign(pf.koszul(p1))))?;
                    Ok(lhs == rhs)
                };
                if !run().unwrap_or(false) {
                    return Some(format!("{name} {s}: f = {f}, S = {a}, S' = {b}"));
                }
            }
        }
        None
    })
}

macro_rules! check {
    ($module:literal, $name:literal, $criterion:expr, $run:ident) => {
        Check {
            name: $name,
            module: $module,
            criterion: $criterion,
            run: $run,
        }
    };
}

/// Every property, grouped by module.
pub static CHECKS: &[Check] = &[
    check!("superalgebra", "supercommutativity", None, supercommutativity),
    check!("superalgebra", "product_laws", None, product_laws),
    check!("superalgebra", "derivatives_graded_commute", None, derivatives_commute),
    check!("geometry", "structure_table", Some(1), structure_table),
    check!("geometry", "bracket_antisymmetry", None, bracket_antisymmetry),
    check!("geometry", "super_jacobi", None, super_jacobi),
    check!("geometry", "contact_field_morphism", None, contact_field_morphism),
    check!("geometry", "contact_section", Some(2), contact_section),
    check!("geometry", "tangent_decomposition", None, tangent_decomposition),
    check!("densities", "tensor_action_morphism", None, tensor_action_morphism),
    check!("densities", "contact_action_morphism", Some(3), contact_action_morphism),
    check!("densities", "phi_intertwines", Some(4), phi_intertwines),
    check!("densities", "contact_divergence", Some(4), contact_divergence),
    check!("diffops", "operator_module_law", Some(3), operator_module_law),
    check!("diffops", "normal_form_round_trip", Some(5), normal_form_round_trip),
    check!("diffops", "normal_form_functional", Some(5), normal_form_functional),
    check!("diffops", "filtration_preserved", Some(6), filtration_preserved),
    check!(
        "diffops",
        "operator_action_consistency",
        None,
        operator_action_consistency
    ),
    check!("diffops", "composition_orders", None, composition_orders),
    check!("diffops", "order_bounds", None, order_bounds),
    check!("symbols", "fine_decomposition", Some(7), decomposition),
    check!("symbols", "symbol_kernels", None, symbol_kernels),
    check!("symbols", "grading_consistency", None, grading_consistency),
    check!("spo_action", "theorem_fine", Some(8), theorem_fine),
    check!("spo_action", "theorem_principal", Some(8), theorem_principal),
    check!("spo_action", "theorem_heisenberg", Some(8), theorem_heisenberg),
    check!("spo_action", "theorem_heisenberg_weyl", None, theorem_heisenberg_weyl),
    check!("spo_action", "weight_split_independence", Some(8), weight_split),
    check!(
        "spo_action",
        "representative_independence",
        Some(8),
        representative_independence
    ),
    check!("spo_action", "generator_identities", Some(8), generator_identities),
    check!("spo_action", "action_degrees", None, action_degrees),
    check!("spo_action", "representation_law", None, representation_law),
    check!("spo_action", "derivation_property", None, derivation_property),
    check!("spo_action", "spo_closure", Some(9), spo_closure),
];
