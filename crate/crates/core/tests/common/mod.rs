//! Random maps shared by the integration suites.
#![allow(dead_code)]

use std::sync::Arc;

use fiberideals::monomial::monomials_of_degree;
use fiberideals::{Field, Ideal, MapContext, PolyRing, Polynomial, PrimeField};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fp() -> PrimeField {
    PrimeField::new(32003).unwrap()
}

/// Sparse forms of one degree in the first `support` variables, with small coefficients.
pub fn random_forms(
    ring: &PolyRing<PrimeField>,
    degree: u32,
    count: usize,
    support: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<Polynomial<PrimeField>> {
    let monos: Vec<_> = monomials_of_degree(ring.nvars(), degree)
        .into_iter()
        .filter(|m| m.exponents()[support..].iter().all(|&e| e == 0))
        .collect();
    let field = *ring.field();
    (0..count)
        .map(|_| {
            let k = rng.gen_range(1..=3);
            let terms = monos.choose_multiple(rng, k).map(|m| {
                let mut c = 0;
                while c == 0 {
                    c = rng.gen_range(-3i64..=3);
                }
                (field.from_i64(c), m.clone())
            });
            ring.from_terms(terms)
        })
        .collect()
}

/// A validated map drawn from `seed`: forms on `P^2` or `P^3`, sometimes
/// involving fewer variables than the ring has, so that the image can be
/// small. Retries until the forms define a map.
pub fn random_context(seed: u64) -> MapContext<PrimeField> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let three = Arc::new(PolyRing::new(fp(), &["x", "y", "z"]).unwrap());
    let four = Arc::new(PolyRing::new(fp(), &["x", "y", "z", "w"]).unwrap());
    loop {
        let (ring, degree, count) = match rng.gen_range(0..4) {
            0 => (&four, 2, rng.gen_range(3..=5)),
            _ => (&three, rng.gen_range(2..=3), rng.gen_range(3..=4)),
        };
        let n = ring.nvars();
        let support = if rng.gen_bool(0.25) { n - 1 } else { n };
        let forms = random_forms(ring, degree, count, support, &mut rng);
        let Ok(ideal) = Ideal::new(ring.clone(), forms) else {
            continue;
        };
        if let Ok(ctx) = MapContext::new(&ideal, seed) {
            if ctx.basis().len() >= 3 {
                return ctx;
            }
        }
    }
}

/// `∂f/∂x_k`.
pub fn derivative<F: Field>(ring: &PolyRing<F>, f: &Polynomial<F>, k: usize) -> Polynomial<F> {
    let field = ring.field();
    ring.from_terms(f.terms().iter().filter_map(|(c, m)| {
        let e = m.exponents()[k];
        if e == 0 {
            return None;
        }
        let mut exps = m.exponents().to_vec();
        exps[k] -= 1;
        Some((
            field.mul(c, &field.from_i64(e as i64)),
            fiberideals::Monomial::from_exponents(&exps),
        ))
    }))
}

/// Rank of the Jacobian of the basis at a random point: `1 + dim` of the image.
pub fn jacobian_rank(ctx: &MapContext<PrimeField>, rng: &mut ChaCha8Rng) -> usize {
    let ring = ctx.ring();
    let field = *ctx.field();
    let (p, _) = ctx.sample_point(rng).unwrap();
    let rows: Vec<Vec<u64>> = ctx
        .basis()
        .iter()
        .map(|g| {
            (0..ring.nvars())
                .map(|k| ring.evaluate(&derivative(ring, g, k), p.coords()).unwrap())
                .collect()
        })
        .collect();
    fiberideals::linalg::rank(&field, &rows)
}
