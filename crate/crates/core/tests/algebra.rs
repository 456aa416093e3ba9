//! Operator-algebra properties, checked against an independent word-rewriting
//! normal orderer and with randomized polynomials.

use std::collections::BTreeMap;

use nclandau_core::nc::{bopp_phase, bopp_space, constraint_value, theta_bar_from, verify_algebra, NcParams};
use nclandau_core::weyl::{Monomial, OperatorPoly, PhaseSpaceFn, Substitution, Symbol};
use num_complex::Complex64;
use proptest::prelude::*;

type Word = Vec<Symbol>;

/// Normal-orders a word by repeated adjacent swaps, applying `p_i x_i = x_i p_i − iħ`.
fn brute_normal_order(word: Word, coef: Complex64, hbar: f64, out: &mut BTreeMap<Monomial, Complex64>) {
    for i in 0..word.len().saturating_sub(1) {
        let (l, r) = (word[i], word[i + 1]);
        if l.is_momentum() && !r.is_momentum() {
            let mut swapped = word.clone();
            swapped.swap(i, i + 1);
            brute_normal_order(swapped, coef, hbar, out);
            if l.axis() == r.axis() {
                let mut contracted = word.clone();
                contracted.drain(i..i + 2);
                brute_normal_order(contracted, coef * Complex64::new(0.0, -hbar), hbar, out);
            }
            return;
        }
    }
    let mut exps = [0u32; 6];
    for s in &word {
        exps[s.index()] += 1;
    }
    *out.entry(Monomial::new(exps)).or_default() += coef;
}

fn word_of(m: &Monomial) -> Word {
    Symbol::ALL
        .iter()
        .flat_map(|&s| std::iter::repeat_n(s, m.exponent(s) as usize))
        .collect()
}

fn brute_multiply(a: &OperatorPoly, b: &OperatorPoly) -> BTreeMap<Monomial, Complex64> {
    let mut out = BTreeMap::new();
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            let mut w = word_of(ma);
            w.extend(word_of(mb));
            brute_normal_order(w, ca * cb, a.hbar(), &mut out);
        }
    }
    out
}

fn max_diff(p: &OperatorPoly, q: &OperatorPoly) -> f64 {
    p.sub(q).unwrap().max_abs_coefficient()
}

const HBAR: f64 = 0.85;

fn arb_coef() -> impl Strategy<Value = Complex64> {
    (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(r, i)| Complex64::new(r, i))
}

fn arb_monomial(max_deg: u32) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0usize..6, 0..=max_deg as usize).prop_map(|idx| {
        let mut exps = [0u32; 6];
        for i in idx {
            exps[i] += 1;
        }
        Monomial::new(exps)
    })
}

fn arb_poly(max_deg: u32) -> impl Strategy<Value = OperatorPoly> {
    prop::collection::vec((arb_monomial(max_deg), arb_coef()), 1..5)
        .prop_map(|terms| OperatorPoly::from_terms(terms, HBAR))
}

fn arb_linear() -> impl Strategy<Value = OperatorPoly> {
    prop::collection::vec((arb_monomial(1), arb_coef()), 1..4)
        .prop_map(|terms| OperatorPoly::from_terms(terms, HBAR))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiply_matches_word_rewriting(a in arb_poly(3), b in arb_poly(3)) {
        let fast = a.multiply(&b).unwrap();
        let slow = OperatorPoly::from_terms(brute_multiply(&a, &b), HBAR);
        prop_assert!(max_diff(&fast, &slow) <= 1e-12, "{fast} vs {slow}");
        prop_assert!(fast.degree() <= a.degree() + b.degree());
    }

    #[test]
    fn multiply_is_associative_and_bilinear(a in arb_poly(3), b in arb_poly(3), c in arb_poly(3), s in arb_coef()) {
        let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert!(max_diff(&left, &right) <= 1e-9 * (1.0 + left.max_abs_coefficient()));

        let lhs = a.add(&b).unwrap().multiply(&c).unwrap();
        let rhs = a.multiply(&c).unwrap().add(&b.multiply(&c).unwrap()).unwrap();
        prop_assert!(max_diff(&lhs, &rhs) <= 1e-11);

        let scaled = a.scale(s).multiply(&b).unwrap();
        let after = a.multiply(&b).unwrap().scale(s);
        prop_assert!(max_diff(&scaled, &after) <= 1e-11);
    }

    #[test]
    fn commutator_antisymmetry_and_jacobi(a in arb_poly(2), b in arb_poly(2), c in arb_poly(2)) {
        let ab = a.commutator(&b).unwrap();
        let ba = b.commutator(&a).unwrap();
        prop_assert!(ab.add(&ba).unwrap().max_abs_coefficient() <= 1e-12);

        let j = a.commutator(&b.commutator(&c).unwrap()).unwrap()
            .add(&b.commutator(&c.commutator(&a).unwrap()).unwrap()).unwrap()
            .add(&c.commutator(&a.commutator(&b).unwrap()).unwrap()).unwrap();
        prop_assert!(j.max_abs_coefficient() <= 1e-10);
    }

    #[test]
    fn canonicalization_is_idempotent(a in arb_poly(4)) {
        let again = OperatorPoly::from_terms(a.terms().map(|(m, c)| (*m, *c)), HBAR);
        prop_assert_eq!(&again, &a);
        let via_one = a.multiply(&OperatorPoly::one(HBAR)).unwrap();
        prop_assert_eq!(&via_one, &a);
    }

    #[test]
    fn substitute_is_linear(a in arb_poly(3), b in arb_poly(3), s in arb_coef(), ix in arb_linear(), ipy in arb_linear()) {
        let subst = Substitution::new().with(Symbol::X, ix).with(Symbol::Py, ipy);
        let sum = a.add(&b).unwrap().substitute(&subst).unwrap();
        let parts = a.substitute(&subst).unwrap().add(&b.substitute(&subst).unwrap()).unwrap();
        prop_assert!(max_diff(&sum, &parts) <= 1e-10 * (1.0 + sum.max_abs_coefficient()));
        let scaled = a.scale(s).substitute(&subst).unwrap();
        let after = a.substitute(&subst).unwrap().scale(s);
        prop_assert!(max_diff(&scaled, &after) <= 1e-10 * (1.0 + scaled.max_abs_coefficient()));
    }

    #[test]
    fn phase_maps_satisfy_algebra(hbar in 0.3f64..3.0, theta in prop_oneof![-5.0f64..-0.01, 0.01f64..5.0], alpha in 0.3f64..=1.0) {
        let p = NcParams::phase(hbar, theta, alpha).unwrap();
        let r = verify_algebra(&bopp_phase(&p), &p);
        prop_assert!(r.passed, "max deviation {}", r.max_deviation);
        let tb = theta_bar_from(theta, alpha, hbar).unwrap();
        prop_assert!((constraint_value(theta, tb, alpha, hbar) - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn star_commutators_of_generators(theta in -3.0f64..3.0, alpha in 0.4f64..=1.0) {
        prop_assume!(theta.abs() > 1e-3);
        let p = NcParams::phase(1.0, theta, alpha).unwrap();
        let a2 = alpha * alpha;
        let gens = [Symbol::X, Symbol::Y, Symbol::Px, Symbol::Py];
        for (i, &l) in gens.iter().enumerate() {
            for &r in &gens[i + 1..] {
                let got = PhaseSpaceFn::symbol(l).star_commutator(&PhaseSpaceFn::symbol(r), &p);
                let want = match (l, r) {
                    (Symbol::X, Symbol::Y) => theta / a2,
                    (Symbol::Px, Symbol::Py) => p.theta_bar() / a2,
                    _ => 0.0,
                };
                let c = got.coefficient(&Monomial::UNIT);
                prop_assert!((c - Complex64::new(0.0, want)).norm() <= 1e-12);
                prop_assert!(got.terms().all(|(m, _)| m.is_unit()));
            }
        }
    }
}

#[test]
fn star_generators_match_space_algebra_exactly() {
    let p = NcParams::space(1.0, 0.37).unwrap();
    let x = PhaseSpaceFn::symbol(Symbol::X);
    let y = PhaseSpaceFn::symbol(Symbol::Y);
    assert_eq!(x.star_commutator(&y, &p), PhaseSpaceFn::constant(Complex64::new(0.0, 0.37)));
}

#[test]
fn star_product_is_associative_on_polynomials() {
    let p = NcParams::phase(1.0, 0.7, 0.9).unwrap();
    let m = |f: &[(Symbol, u32)], c: f64| (Monomial::from_factors(f), Complex64::new(c, 0.0));
    let f = PhaseSpaceFn::from_terms([m(&[(Symbol::X, 2)], 1.0), m(&[(Symbol::Py, 1)], 0.5)]);
    let g = PhaseSpaceFn::from_terms([m(&[(Symbol::Y, 2), (Symbol::Px, 1)], 1.0)]);
    let h = PhaseSpaceFn::from_terms([m(&[(Symbol::X, 1), (Symbol::Py, 2)], -2.0), m(&[], 1.0)]);
    let l = f.moyal_star(&g, &p).moyal_star(&h, &p);
    let r = f.moyal_star(&g.moyal_star(&h, &p), &p);
    assert!(l.sub(&r).max_abs_coefficient() < 1e-12);
}

#[test]
fn space_and_phase_maps_agree_at_alpha_one() {
    for theta in [0.0, 0.3, 2.0, -1.5] {
        let p = NcParams::space(1.2, theta).unwrap();
        assert_eq!(bopp_phase(&p), bopp_space(&p).unwrap());
    }
}

#[test]
fn phase_map_converges_to_space_map() {
    let theta = 0.9;
    let space = bopp_space(&NcParams::space(1.0, theta).unwrap()).unwrap();
    let mut prev = f64::INFINITY;
    for k in 1..=6 {
        let alpha = 1.0 - 10f64.powi(-k);
        let phase = bopp_phase(&NcParams::phase(1.0, theta, alpha).unwrap());
        let gap = Symbol::ALL
            .iter()
            .map(|&s| phase.image(s).sub(space.image(s)).unwrap().max_abs_coefficient())
            .fold(0.0, f64::max);
        assert!(gap < prev);
        prev = gap;
    }
    assert!(prev < 1e-5);
}
