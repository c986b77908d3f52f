//! Seeded generators for the randomized parts of the invariant grid.

use rand::seq::SliceRandom;
use rand::Rng as _;
use rand_chacha::ChaCha8Rng;

use crate::diffops::{DiffOperator, HalfInt, NormalForm, Word};
use crate::geometry::VectorField;
use crate::scalar::Scalar;
use crate::superalgebra::{ContactSpace, Monomial, Parity, SuperPolynomial};
use crate::symbols::{moment_words, SymbolPoly};

pub type Rng = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

fn coefficient<S: Scalar>(rng: &mut Rng) -> S {
    let num = loop {
        let v = rng.gen_range(-3i64..=3);
        if v != 0 {
            break v;
        }
    };
    let den = if rng.gen_bool(0.2) { 2 } else { 1 };
    S::from_ratio(num, den)
}

pub fn poly<S: Scalar>(space: ContactSpace, max_degree: u32, terms: usize, rng: &mut Rng) -> SuperPolynomial<S> {
    let monos = Monomial::all_up_to_degree(&space, max_degree);
    let mut out = SuperPolynomial::zero(space);
    for _ in 0..terms {
        let m = monos.choose(rng).expect("nonempty").clone();
        out.add_term(m, coefficient(rng));
    }
    out
}

pub fn homogeneous_poly<S: Scalar>(
    space: ContactSpace,
    max_degree: u32,
    parity: Parity,
    terms: usize,
    rng: &mut Rng,
) -> SuperPolynomial<S> {
    let monos: Vec<Monomial> = Monomial::all_up_to_degree(&space, max_degree)
        .into_iter()
        .filter(|m| m.parity() == parity)
        .collect();
    let mut out = SuperPolynomial::zero(space);
    if monos.is_empty() {
        return out;
    }
    for _ in 0..terms {
        let m = monos.choose(rng).expect("nonempty").clone();
        out.add_term(m, coefficient(rng));
    }
    out
}

pub fn parity(space: &ContactSpace, rng: &mut Rng) -> Parity {
    if space.n() > 0 && rng.gen_bool(0.5) {
        Parity::Odd
    } else {
        Parity::Even
    }
}

/// A field whose components make it homogeneous of the given parity.
pub fn homogeneous_field<S: Scalar>(
    space: ContactSpace,
    max_degree: u32,
    parity: Parity,
    rng: &mut Rng,
) -> VectorField<S> {
    let coeffs = (0..space.num_coords())
        .map(|a| {
            if rng.gen_bool(0.5) {
                homogeneous_poly(space, max_degree, parity.plus(space.parity(a)), 2, rng)
            } else {
                SuperPolynomial::zero(space)
            }
        })
        .collect();
    VectorField::from_components(space, coeffs).expect("sizes match")
}

pub fn field<S: Scalar>(space: ContactSpace, max_degree: u32, rng: &mut Rng) -> VectorField<S> {
    let p = parity(&space, rng);
    let mut x = homogeneous_field(space, max_degree, p, rng);
    x.add_assign_ref(&homogeneous_field(space, max_degree, p.plus(Parity::Odd), rng));
    x
}

/// Words with bi-order at most `(k, d)`.
pub fn words_within(space: &ContactSpace, k: u32, d: HalfInt) -> Vec<Word> {
    moment_words(space, k)
        .into_iter()
        .filter(|w| w.heisenberg_degree() <= d)
        .collect()
}

/// A random normal form with words from `words` and coefficients of degree
/// at most `coeff_degree`.
pub fn normal_form<S: Scalar>(
    space: ContactSpace,
    words: &[Word],
    terms: usize,
    coeff_degree: u32,
    weights: (S, S),
    rng: &mut Rng,
) -> NormalForm<S> {
    let picked = (0..terms).map(|_| {
        let w = words.choose(rng).expect("nonempty").clone();
        (w, poly(space, coeff_degree, 2, rng))
    });
    NormalForm::from_terms(space, weights.0, weights.1, picked.collect::<Vec<_>>()).expect("valid words")
}

pub fn operator<S: Scalar>(
    space: ContactSpace,
    k: u32,
    d: HalfInt,
    terms: usize,
    coeff_degree: u32,
    weights: (S, S),
    rng: &mut Rng,
) -> DiffOperator<S> {
    normal_form(space, &words_within(&space, k, d), terms, coeff_degree, weights, rng).expand()
}

/// A symbol whose terms all lie in the given words, with homogeneous total parity.
pub fn homogeneous_symbol<S: Scalar>(
    space: ContactSpace,
    words: &[Word],
    parity: Parity,
    weight: S,
    rng: &mut Rng,
) -> SymbolPoly<S> {
    let mut out = SymbolPoly::zero(space, weight);
    for _ in 0..2 {
        let w = words.choose(rng).expect("nonempty").clone();
        let g = homogeneous_poly(space, 2, parity.plus(w.parity(&space)), 2, rng);
        out.add_term(w, g);
    }
    out
}
