//! Randomized invariants checked against independent oracles.

use std::sync::Arc;

use fiberideals::groebner::{eliminate, is_groebner_basis, reduced_groebner_basis};
use fiberideals::linalg::{kernel, rank};
use fiberideals::monomial::monomials_of_degree;
use fiberideals::syzygy::{minimal_presentation, syzygy_matrix};
use fiberideals::{Codim, Field, Ideal, Monomial, PolyRing, Polynomial, PrimeField, Rationals};
use proptest::prelude::*;
use proptest::test_runner::Config;

fn fp() -> PrimeField {
    PrimeField::new(32003).unwrap()
}

fn ring3<F: Field>(field: F) -> Arc<PolyRing<F>> {
    Arc::new(PolyRing::new(field, &["x", "y", "z"]).unwrap())
}

fn poly_from<F: Field>(r: &PolyRing<F>, terms: &[(i64, [u16; 3])]) -> Polynomial<F> {
    r.from_terms(
        terms
            .iter()
            .map(|(c, e)| (r.field().from_i64(*c), Monomial::from_exponents(e))),
    )
}

fn terms() -> impl Strategy<Value = Vec<(i64, [u16; 3])>> {
    prop::collection::vec((-9i64..10, prop::array::uniform3(0u16..3)), 0..5)
}

/// Exponent vectors of total degree 1..=4.
fn monomial_gens(max_gens: usize) -> impl Strategy<Value = Vec<[u16; 3]>> {
    prop::collection::vec(prop::array::uniform3(0u16..5), 1..=max_gens).prop_map(|v| {
        let kept: Vec<[u16; 3]> = v
            .into_iter()
            .filter(|e| (1..=4).contains(&e.iter().sum::<u16>()))
            .collect();
        if kept.is_empty() {
            vec![[1, 0, 0]]
        } else {
            kept
        }
    })
}

fn mono_ideal(r: &Arc<PolyRing<PrimeField>>, gens: &[[u16; 3]]) -> Ideal<PrimeField> {
    let polys = gens
        .iter()
        .map(|e| r.monomial(Monomial::from_exponents(e)))
        .collect();
    Ideal::new(r.clone(), polys).unwrap()
}

fn in_monomial_ideal(gens: &[[u16; 3]], m: &[u16]) -> bool {
    gens.iter().any(|g| g.iter().zip(m).all(|(a, b)| a <= b))
}

fn shifted(m: &[u16], g: &[u16; 3], k: u16) -> Vec<u16> {
    m.iter().zip(g).map(|(a, b)| a + k * b).collect()
}

fn all_monomials_up_to(deg: u32) -> Vec<Vec<u16>> {
    (0..=deg)
        .flat_map(|d| monomials_of_degree(3, d))
        .map(|m| m.exponents().to_vec())
        .collect()
}

fn binomial_ideal() -> impl Strategy<Value = Vec<Vec<(i64, [u16; 3])>>> {
    prop::collection::vec(
        prop::collection::vec((-3i64..4, prop::array::uniform3(0u16..3)), 1..3),
        1..4,
    )
}

proptest! {
    #![proptest_config(Config::with_cases(100))]

    #[test]
    fn ring_axioms_mod_p(a in terms(), b in terms(), c in terms()) {
        let r = ring3(fp());
        let (f, g, h) = (poly_from(&r, &a), poly_from(&r, &b), poly_from(&r, &c));
        prop_assert_eq!(r.mul(&r.mul(&f, &g), &h), r.mul(&f, &r.mul(&g, &h)));
        prop_assert_eq!(r.mul(&f, &r.add(&g, &h)), r.add(&r.mul(&f, &g), &r.mul(&f, &h)));
        prop_assert_eq!(r.mul(&f, &g), r.mul(&g, &f));
        prop_assert_eq!(r.add(&f, &g), r.add(&g, &f));
        prop_assert!(r.sub(&f, &f).is_zero());
    }

    #[test]
    fn ring_axioms_over_rationals(a in terms(), b in terms(), c in terms()) {
        let r = ring3(Rationals);
        let (f, g, h) = (poly_from(&r, &a), poly_from(&r, &b), poly_from(&r, &c));
        prop_assert_eq!(r.mul(&r.mul(&f, &g), &h), r.mul(&f, &r.mul(&g, &h)));
        prop_assert_eq!(r.mul(&f, &r.add(&g, &h)), r.add(&r.mul(&f, &g), &r.mul(&f, &h)));
        prop_assert_eq!(r.mul(&f, &g), r.mul(&g, &f));
        prop_assert_eq!(r.parse(&r.format(&f)).unwrap(), f);
    }

    #[test]
    fn evaluation_is_a_ring_map(a in terms(), b in terms(), p in prop::array::uniform3(-50i64..50)) {
        let r = ring3(fp());
        let field = *r.field();
        let pt: Vec<_> = p.iter().map(|&v| field.from_i64(v)).collect();
        let (f, g) = (poly_from(&r, &a), poly_from(&r, &b));
        let fg = r.evaluate(&r.mul(&f, &g), &pt).unwrap();
        let prod = field.mul(&r.evaluate(&f, &pt).unwrap(), &r.evaluate(&g, &pt).unwrap());
        prop_assert_eq!(fg, prod);
        let sum = r.evaluate(&r.add(&f, &g), &pt).unwrap();
        prop_assert_eq!(sum, field.add(&r.evaluate(&f, &pt).unwrap(), &r.evaluate(&g, &pt).unwrap()));
    }

    #[test]
    fn colon_and_saturation_match_monomial_oracle(i in monomial_gens(4), j in monomial_gens(2)) {
        let r = ring3(fp());
        let (ii, jj) = (mono_ideal(&r, &i), mono_ideal(&r, &j));
        let colon = ii.colon(&jj).unwrap();
        let sat = ii.saturate(&jj).unwrap();
        prop_assert!(colon.contains_ideal(&ii));
        prop_assert!(sat.contains_ideal(&colon));
        for m in all_monomials_up_to(8) {
            let mono = r.monomial(Monomial::from_exponents(&m));
            let in_colon = j.iter().all(|g| in_monomial_ideal(&i, &shifted(&m, g, 1)));
            prop_assert_eq!(colon.contains(&mono), in_colon, "colon at {:?}", m);
            let in_sat = j.iter().all(|g| (0..=8).any(|k| in_monomial_ideal(&i, &shifted(&m, g, k))));
            prop_assert_eq!(sat.contains(&mono), in_sat, "saturation at {:?}", m);
        }
    }

    #[test]
    fn intersection_matches_monomial_oracle(i in monomial_gens(3), j in monomial_gens(3)) {
        let r = ring3(fp());
        let meet = mono_ideal(&r, &i).intersect(&mono_ideal(&r, &j)).unwrap();
        for m in all_monomials_up_to(6) {
            let mono = r.monomial(Monomial::from_exponents(&m));
            prop_assert_eq!(meet.contains(&mono), in_monomial_ideal(&i, &m) && in_monomial_ideal(&j, &m));
        }
    }

    #[test]
    fn reduced_bases_are_canonical(gens in binomial_ideal(), seed in any::<u64>()) {
        let r = ring3(fp());
        let polys: Vec<_> = gens.iter().map(|t| poly_from(&r, t)).collect();
        let gb = reduced_groebner_basis(&r, &polys);
        prop_assert!(is_groebner_basis(&r, gb.elements()));
        for g in &polys {
            prop_assert!(gb.contains(&r, g));
        }
        let field = *r.field();
        let mut state = seed;
        for _ in 0..10 {
            let mut shuffled = polys.clone();
            for k in (1..shuffled.len()).rev() {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                shuffled.swap(k, (state >> 33) as usize % (k + 1));
            }
            let scaled: Vec<_> = shuffled
                .iter()
                .enumerate()
                .map(|(k, p)| r.scale(p, &field.from_i64(k as i64 + 2)))
                .collect();
            prop_assert_eq!(&reduced_groebner_basis(&r, &scaled), &gb);
        }
    }

    #[test]
    fn equality_is_mutual_containment(a in binomial_ideal(), b in binomial_ideal()) {
        let r = ring3(fp());
        let ia = Ideal::new(r.clone(), a.iter().map(|t| poly_from(&r, t)).collect()).unwrap();
        let ib = Ideal::new(r.clone(), b.iter().map(|t| poly_from(&r, t)).collect()).unwrap();
        prop_assert_eq!(ia.equals(&ib), ia.contains_ideal(&ib) && ib.contains_ideal(&ia));
        prop_assert!(ia.equals(&ia));
        let sum = ia.sum(&ib).unwrap();
        prop_assert!(sum.contains_ideal(&ia) && sum.contains_ideal(&ib));
        let prod = ia.product(&ib).unwrap();
        let meet = ia.intersect(&ib).unwrap();
        prop_assert!(meet.contains_ideal(&prod));
        prop_assert!(ia.contains_ideal(&meet) && ib.contains_ideal(&meet));
    }

    #[test]
    fn minimal_generators_are_minimal(i in monomial_gens(5), extra in terms()) {
        let r = ring3(fp());
        let base = mono_ideal(&r, &i);
        // add a homogeneous combination that is redundant
        let mut gens = base.generators().to_vec();
        let h = poly_from(&r, &extra);
        if let Some(g) = gens.first().cloned() {
            let d = g.degree().unwrap();
            let hom: Vec<_> = h.terms().iter().filter(|(_, m)| m.degree() == 1).cloned().collect();
            let hom = r.from_terms(hom);
            if d >= 1 {
                gens.push(r.mul(&g, &hom));
            }
        }
        let ideal = Ideal::new(r.clone(), gens).unwrap();
        let mins = ideal.minimal_generators().unwrap();
        prop_assert!(Ideal::new(r.clone(), mins.clone()).unwrap().equals(&ideal));
        for k in 0..mins.len() {
            let others: Vec<_> = mins.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, g)| g.clone()).collect();
            prop_assert!(!Ideal::new(r.clone(), others).unwrap().contains(&mins[k]));
        }
    }

    #[test]
    fn syzygies_are_complete_in_low_degree(i in monomial_gens(4)) {
        let r = ring3(fp());
        let ideal = mono_ideal(&r, &i);
        let gens = ideal.minimal_generators().unwrap();
        let a = syzygy_matrix(&r, &gens).unwrap();
        let field = *r.field();
        for col in a.columns() {
            let total = col.iter().zip(&gens).fold(r.zero(), |acc, (c, g)| r.add(&acc, &r.mul(c, g)));
            prop_assert!(total.is_zero());
        }
        let degs: Vec<u32> = gens.iter().map(|g| g.degree().unwrap()).collect();
        let top = degs.iter().max().unwrap() + 2;
        for big in 1..=top {
            // dense oracle: kernel of (c_i) -> sum c_i g_i on degree `big` pieces
            let mut slots: Vec<(usize, Monomial)> = Vec::new();
            for (k, &d) in degs.iter().enumerate() {
                if d <= big {
                    for m in monomials_of_degree(3, big - d) {
                        slots.push((k, m));
                    }
                }
            }
            if slots.is_empty() {
                continue;
            }
            let targets = monomials_of_degree(3, big);
            let matrix: Vec<Vec<u64>> = targets
                .iter()
                .map(|t| {
                    slots
                        .iter()
                        .map(|(k, m)| {
                            let prod = r.mul_term(&gens[*k], &field.one(), m);
                            prod.terms().iter().find(|(_, mm)| mm == t).map_or(0, |(c, _)| *c)
                        })
                        .collect()
                })
                .collect();
            let ker = kernel(&field, &matrix, slots.len());
            // span of monomial multiples of the columns in this degree
            let key = |k: usize, m: &Monomial| slots.iter().position(|(kk, mm)| *kk == k && mm == m);
            let mut span_rows: Vec<Vec<u64>> = Vec::new();
            for (col, &cd) in a.columns().iter().zip(a.column_degrees()) {
                if cd > big {
                    continue;
                }
                for m in monomials_of_degree(3, big - cd) {
                    let mut v = vec![0u64; slots.len()];
                    for (k, e) in col.iter().enumerate() {
                        for (c, mm) in e.terms() {
                            let idx = key(k, &mm.mul(&m)).expect("slot exists");
                            v[idx] = field.add(&v[idx], c);
                        }
                    }
                    span_rows.push(v);
                }
            }
            let base_rank = rank(&field, &span_rows);
            prop_assert_eq!(base_rank, ker.len(), "degree {}", big);
        }
    }

    #[test]
    fn elimination_is_sound(gens in binomial_ideal()) {
        let r = ring3(fp());
        let polys: Vec<_> = gens.iter().map(|t| poly_from(&r, t)).collect();
        let ideal = Ideal::new(r.clone(), polys.clone()).unwrap();
        let (small, kept) = eliminate(&r, &polys, 1).unwrap();
        for g in &kept {
            let back = r.map_from(g, |m| {
                let mut e = vec![0u16];
                e.extend_from_slice(m.exponents());
                Monomial::from_exponents(&e)
            });
            prop_assert!(ideal.contains(&back));
        }
        prop_assert_eq!(small.nvars(), 2);
    }
}

#[test]
fn complete_intersections_of_linear_forms() {
    let r = Arc::new(PolyRing::new(fp(), &["a", "b", "c", "d", "e"]).unwrap());
    let forms = ["a+2*b-c", "b+3*d", "c-e+a", "d+e"];
    for k in 0..=forms.len() {
        let i = Ideal::parse(r.clone(), &forms[..k]).unwrap();
        assert_eq!(i.codimension(), Codim::Height(k));
    }
}

#[test]
fn minimal_presentation_stays_homogeneous() {
    let r = ring3(fp());
    let i = Ideal::parse(r.clone(), &["x^2", "x*y", "y^2", "x*z", "x^2+x*y"]).unwrap();
    let a = minimal_presentation(&i).unwrap();
    assert_eq!(a.row_count(), 4);
    for (j, col) in a.columns().iter().enumerate() {
        for (k, e) in col.iter().enumerate() {
            if !e.is_zero() {
                assert_eq!(
                    e.degree().unwrap() + a.generator_degrees()[k],
                    a.column_degrees()[j]
                );
                assert!(e.is_homogeneous());
            }
        }
    }
}
