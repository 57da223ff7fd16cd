//! Buchberger's algorithm with the Gebauer–Möller pair criteria, normal
//! forms, and elimination.
//!
//! Pairs are selected by the sugar strategy, which coincides with the normal
//! strategy (smallest lcm degree first) on homogeneous input. Ties are broken
//! by basis indices so that every run produces the same basis.

use std::cmp::Ordering;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{PolyRing, Polynomial};

#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerBasis<F: Field> {
    elements: Vec<Polynomial<F>>,
    order: MonomialOrder,
    reduced: bool,
}

impl<F: Field> GroebnerBasis<F> {
    /// Sorted by leading monomial, largest first.
    pub fn elements(&self) -> &[Polynomial<F>] {
        &self.elements
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn is_unit(&self) -> bool {
        self.elements
            .iter()
            .any(|g| g.is_constant() && !g.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .filter_map(|g| g.leading_monomial().cloned())
            .collect()
    }

    pub fn normal_form(&self, ring: &PolyRing<F>, f: &Polynomial<F>) -> Polynomial<F> {
        debug_assert_eq!(ring.order(), self.order);
        normal_form(ring, f, &self.elements)
    }

    pub fn contains(&self, ring: &PolyRing<F>, f: &Polynomial<F>) -> bool {
        self.normal_form(ring, f).is_zero()
    }

    pub fn into_elements(self) -> Vec<Polynomial<F>> {
        self.elements
    }
}

fn first_divisor<'a, F: Field>(
    basis: impl Iterator<Item = (usize, &'a Polynomial<F>)>,
    m: &Monomial,
) -> Option<usize> {
    basis
        .filter_map(|(k, g)| g.leading_monomial().map(|lm| (k, lm)))
        .find(|(_, lm)| lm.divides(m))
        .map(|(k, _)| k)
}

/// Full reduction of `f` by `basis`, always dividing by the first element
/// (in sequence order) whose leading monomial divides the current term.
pub fn normal_form<F: Field>(
    ring: &PolyRing<F>,
    f: &Polynomial<F>,
    basis: &[Polynomial<F>],
) -> Polynomial<F> {
    divide(ring, f, basis).1
}

/// Division with quotients: `f = sum(q_k * basis_k) + r`.
pub fn divide<F: Field>(
    ring: &PolyRing<F>,
    f: &Polynomial<F>,
    basis: &[Polynomial<F>],
) -> (Vec<Polynomial<F>>, Polynomial<F>) {
    let field = ring.field();
    let inverses: Vec<Option<F::Elem>> = basis
        .iter()
        .map(|g| g.leading_coefficient().and_then(|c| field.inv(c)))
        .collect();
    let mut quotients: Vec<Vec<(F::Elem, Monomial)>> = vec![Vec::new(); basis.len()];
    let mut rest = f.clone();
    let mut remainder = Vec::new();
    while let Some((c, m)) = rest.leading_term() {
        match first_divisor(basis.iter().enumerate(), m) {
            Some(k) => {
                let lm = basis[k].leading_monomial().expect("nonzero divisor");
                let q = lm.quotient_of(m).expect("divides");
                let qc = field.mul(c, inverses[k].as_ref().expect("nonzero divisor"));
                rest = ring.sub_mul_term(&rest, &qc, &q, &basis[k]);
                quotients[k].push((qc, q));
            }
            None => {
                remainder.push(rest.pop_leading().expect("nonzero"));
            }
        }
    }
    let quotients = quotients.into_iter().map(|t| ring.from_terms(t)).collect();
    (quotients, Polynomial::from_sorted_terms(remainder))
}

/// `lcm/lm(f) * f / lc(f) - lcm/lm(g) * g / lc(g)`
pub fn s_polynomial<F: Field>(
    ring: &PolyRing<F>,
    f: &Polynomial<F>,
    g: &Polynomial<F>,
) -> Polynomial<F> {
    let field = ring.field();
    let ((cf, mf), (cg, mg)) = match (f.leading_term(), g.leading_term()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Polynomial::zero(),
    };
    let lcm = mf.lcm(mg);
    let uf = mf.quotient_of(&lcm).expect("lcm");
    let ug = mg.quotient_of(&lcm).expect("lcm");
    let a = ring.mul_term(f, &field.inv(cf).expect("nonzero"), &uf);
    ring.sub_mul_term(&a, &field.inv(cg).expect("nonzero"), &ug, g)
}

struct Entry<F: Field> {
    poly: Polynomial<F>,
    sugar: u32,
    /// Coefficients expressing `poly` in the input generators.
    cofactors: Option<Vec<Polynomial<F>>>,
}

impl<F: Field> Entry<F> {
    fn lm(&self) -> &Monomial {
        self.poly
            .leading_monomial()
            .expect("basis entries are nonzero")
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

impl Pair {
    fn key(&self) -> (u32, u32, usize, usize) {
        (self.sugar, self.lcm.degree(), self.i, self.j)
    }
}

struct Engine<'a, F: Field> {
    ring: &'a PolyRing<F>,
    entries: Vec<Entry<F>>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    ngens: usize,
    track: bool,
}

impl<'a, F: Field> Engine<'a, F> {
    fn new(ring: &'a PolyRing<F>, ngens: usize, track: bool) -> Self {
        Self {
            ring,
            entries: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
            ngens,
            track,
        }
    }

    fn unit_vector(&self, index: usize, c: F::Elem) -> Vec<Polynomial<F>> {
        let mut v = vec![Polynomial::zero(); self.ngens];
        v[index] = self.ring.constant(c);
        v
    }

    /// Fully reduces `p` by the active entries, carrying cofactors along.
    fn reduce(
        &self,
        mut p: Polynomial<F>,
        mut cof: Option<Vec<Polynomial<F>>>,
    ) -> (Polynomial<F>, Option<Vec<Polynomial<F>>>) {
        let ring = self.ring;
        let mut remainder = Vec::new();
        while let Some((c, m)) = p.leading_term() {
            let divisor = self
                .entries
                .iter()
                .enumerate()
                .filter(|(k, _)| self.active[*k])
                .find(|(_, e)| e.lm().divides(m))
                .map(|(k, _)| k);
            match divisor {
                Some(k) => {
                    let e = &self.entries[k];
                    let q = e.lm().quotient_of(m).expect("divides");
                    let c = c.clone();
                    p = ring.sub_mul_term(&p, &c, &q, &e.poly);
                    if let (Some(cof), Some(ecof)) = (cof.as_mut(), e.cofactors.as_ref()) {
                        for (a, b) in cof.iter_mut().zip(ecof) {
                            *a = ring.sub_mul_term(a, &c, &q, b);
                        }
                    }
                }
                None => remainder.push(p.pop_leading().expect("nonzero")),
            }
        }
        (Polynomial::from_sorted_terms(remainder), cof)
    }

    fn make_monic(
        &self,
        p: Polynomial<F>,
        cof: Option<Vec<Polynomial<F>>>,
    ) -> (Polynomial<F>, Option<Vec<Polynomial<F>>>) {
        let field = self.ring.field();
        let lc = p.leading_coefficient().expect("nonzero");
        if field.is_one(lc) {
            return (p, cof);
        }
        let inv = field.inv(lc).expect("nonzero");
        let cof = cof.map(|v| v.iter().map(|a| self.ring.scale(a, &inv)).collect());
        (self.ring.scale(&p, &inv), cof)
    }

    /// Gebauer–Möller installation of a new monic basis element.
    fn insert(&mut self, poly: Polynomial<F>, sugar: u32, cofactors: Option<Vec<Polynomial<F>>>) {
        let h = self.entries.len();
        self.entries.push(Entry {
            poly,
            sugar,
            cofactors,
        });
        self.active.push(true);
        let lm_h = self.entries[h].lm().clone();

        let candidates: Vec<Pair> = (0..h)
            .filter(|&g| self.active[g])
            .map(|g| self.make_pair(g, h))
            .collect();

        // chain criterion among the new pairs; coprime pairs survive this step
        let mut kept: Vec<Pair> = Vec::new();
        for (idx, p) in candidates.iter().enumerate() {
            let coprime = self.entries[p.i].lm().is_coprime(&lm_h);
            let dominated = candidates[idx + 1..]
                .iter()
                .chain(kept.iter())
                .any(|q| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                kept.push(p.clone());
            }
        }
        kept.retain(|p| !self.entries[p.i].lm().is_coprime(&lm_h));

        // old pairs whose lcm is divisible by lm(h) with both sides strictly smaller
        let entries = &self.entries;
        self.pairs.retain(|p| {
            if !lm_h.divides(&p.lcm) {
                return true;
            }
            let li = entries[p.i].lm().lcm(&lm_h);
            let lj = entries[p.j].lm().lcm(&lm_h);
            li == p.lcm || lj == p.lcm
        });
        self.pairs.extend(kept);

        for g in 0..h {
            if self.active[g] && lm_h.divides(self.entries[g].lm()) {
                self.active[g] = false;
            }
        }
    }

    fn make_pair(&self, i: usize, j: usize) -> Pair {
        let (a, b) = (&self.entries[i], &self.entries[j]);
        let lcm = a.lm().lcm(b.lm());
        let sugar = (a.sugar + lcm.degree() - a.lm().degree())
            .max(b.sugar + lcm.degree() - b.lm().degree());
        Pair { i, j, lcm, sugar }
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| a.key().cmp(&b.key()))
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }

    fn spoly_with_cofactors(&self, pair: &Pair) -> (Polynomial<F>, Option<Vec<Polynomial<F>>>) {
        let ring = self.ring;
        let field = ring.field();
        let (a, b) = (&self.entries[pair.i], &self.entries[pair.j]);
        let ua = a.lm().quotient_of(&pair.lcm).expect("lcm");
        let ub = b.lm().quotient_of(&pair.lcm).expect("lcm");
        let one = field.one();
        let s = ring.sub_mul_term(&ring.mul_term(&a.poly, &one, &ua), &one, &ub, &b.poly);
        let cof = match (&a.cofactors, &b.cofactors) {
            (Some(ca), Some(cb)) => Some(
                ca.iter()
                    .zip(cb)
                    .map(|(x, y)| ring.sub_mul_term(&ring.mul_term(x, &one, &ua), &one, &ub, y))
                    .collect(),
            ),
            _ => None,
        };
        (s, cof)
    }

    /// Returns `false` if the unit ideal was detected (untracked mode only).
    fn run(&mut self, gens: &[Polynomial<F>]) -> bool {
        for (idx, g) in gens.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            let cof = self
                .track
                .then(|| self.unit_vector(idx, self.ring.field().one()));
            let sugar = g.degree().unwrap_or(0);
            let (r, cof) = self.reduce(g.clone(), cof);
            if r.is_zero() {
                continue;
            }
            if r.is_constant() && !self.track {
                return false;
            }
            let (r, cof) = self.make_monic(r, cof);
            self.insert(r, sugar, cof);
        }
        while let Some(pair) = self.next_pair() {
            let (s, cof) = self.spoly_with_cofactors(&pair);
            let (r, cof) = self.reduce(s, cof);
            if r.is_zero() {
                continue;
            }
            if r.is_constant() && !self.track {
                return false;
            }
            let (r, cof) = self.make_monic(r, cof);
            self.insert(r, pair.sugar, cof);
        }
        true
    }

    /// Active entries with a minimal set of leading monomials, in entry order.
    fn minimal_entries(&self) -> Vec<usize> {
        let idx: Vec<usize> = (0..self.entries.len())
            .filter(|&k| self.active[k])
            .collect();
        idx.iter()
            .copied()
            .filter(|&k| {
                let lm = self.entries[k].lm();
                !idx.iter().any(|&j| {
                    j != k && {
                        let other = self.entries[j].lm();
                        other.divides(lm) && (other != lm || j < k)
                    }
                })
            })
            .collect()
    }
}

/// The reduced Gröbner basis of the ideal generated by `gens` under the
/// ring's order. Elements are normalized by the field's canonical scaling and
/// sorted by leading monomial, largest first; the zero ideal gives an empty basis.
pub fn reduced_groebner_basis<F: Field>(
    ring: &PolyRing<F>,
    gens: &[Polynomial<F>],
) -> GroebnerBasis<F> {
    let order = ring.order();
    let mut engine = Engine::new(ring, gens.len(), false);
    if !engine.run(gens) {
        return GroebnerBasis {
            elements: vec![ring.one()],
            order,
            reduced: true,
        };
    }
    let minimal: Vec<Polynomial<F>> = engine
        .minimal_entries()
        .into_iter()
        .map(|k| engine.entries[k].poly.clone())
        .collect();
    let mut elements: Vec<Polynomial<F>> = (0..minimal.len())
        .map(|k| {
            let others: Vec<Polynomial<F>> = minimal
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, g)| g.clone())
                .collect();
            ring.normalize(&normal_form(ring, &minimal[k], &others))
        })
        .collect();
    elements.sort_by(|a, b| ring.cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
    GroebnerBasis {
        elements,
        order,
        reduced: true,
    }
}

/// A (non-reduced) Gröbner basis together with its expression in the input:
/// `elements[k] = sum_i transform[k][i] * gens[i]`.
#[derive(Clone, Debug)]
pub struct LiftedBasis<F: Field> {
    pub elements: Vec<Polynomial<F>>,
    pub transform: Vec<Vec<Polynomial<F>>>,
}

/// Buchberger's algorithm with cofactor tracking.
pub fn lifted_groebner_basis<F: Field>(
    ring: &PolyRing<F>,
    gens: &[Polynomial<F>],
) -> LiftedBasis<F> {
    let mut engine = Engine::new(ring, gens.len(), true);
    engine.run(gens);
    let keep = engine.minimal_entries();
    let mut elements = Vec::with_capacity(keep.len());
    let mut transform = Vec::with_capacity(keep.len());
    for k in keep {
        let e = &mut engine.entries[k];
        elements.push(std::mem::replace(&mut e.poly, Polynomial::zero()));
        transform.push(e.cofactors.take().expect("tracked"));
    }
    LiftedBasis {
        elements,
        transform,
    }
}

/// `I ∩ k[x_drop, ..., x_n]`: eliminates the first `drop_count` variables with
/// a block order and returns the smaller ring together with generators of the
/// elimination ideal (its reduced Gröbner basis).
pub fn eliminate<F: Field>(
    ring: &PolyRing<F>,
    gens: &[Polynomial<F>],
    drop_count: usize,
) -> Result<(PolyRing<F>, Vec<Polynomial<F>>)> {
    if drop_count == 0 || drop_count > ring.nvars() {
        return Err(AlgebraError::InvalidArgument(format!(
            "cannot eliminate {drop_count} of {} variables",
            ring.nvars()
        )));
    }
    let elim_ring = ring.reordered(MonomialOrder::Elimination { block: drop_count })?;
    let converted: Vec<Polynomial<F>> = gens.iter().map(|g| elim_ring.convert(g)).collect();
    let gb = reduced_groebner_basis(&elim_ring, &converted);
    let small_names = ring.names()[drop_count..].to_vec();
    if small_names.is_empty() {
        // everything eliminated: the answer is (0) or (1) in the field itself
        return Err(AlgebraError::InvalidArgument(
            "eliminating every variable leaves no ring".into(),
        ));
    }
    let small = PolyRing::with_order(ring.field().clone(), small_names, MonomialOrder::GrevLex)?;
    let kept = gb
        .elements()
        .iter()
        .filter(|g| {
            g.terms()
                .iter()
                .all(|(_, m)| m.exponents()[..drop_count].iter().all(|&e| e == 0))
        })
        .map(|g| {
            small.map_from(g, |m| {
                Monomial::from_exponents(&m.exponents()[drop_count..])
            })
        })
        .collect();
    Ok((small, kept))
}

/// Verifies that every S-polynomial of `basis` reduces to zero.
pub fn is_groebner_basis<F: Field>(ring: &PolyRing<F>, basis: &[Polynomial<F>]) -> bool {
    (0..basis.len()).all(|i| {
        (i + 1..basis.len()).all(|j| {
            let s = s_polynomial(ring, &basis[i], &basis[j]);
            normal_form(ring, &s, basis).is_zero()
        })
    })
}

/// Descending comparison of leading monomials, for sorting bases.
pub fn by_leading_monomial<F: Field>(
    ring: &PolyRing<F>,
) -> impl Fn(&Polynomial<F>, &Polynomial<F>) -> Ordering + '_ {
    move |a, b| match (a.leading_monomial(), b.leading_monomial()) {
        (Some(x), Some(y)) => ring.cmp(y, x),
        (None, None) => Ordering::Equal,
        (None, _) => Ordering::Greater,
        (_, None) => Ordering::Less,
    }
}
