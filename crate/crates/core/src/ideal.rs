//! Ideals of a polynomial ring: arithmetic, quotients, saturation,
//! codimension, and minimal generators.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::groebner::{self, GroebnerBasis};
use crate::linalg::SparseEchelon;
use crate::monomial::{monomials_of_degree, Monomial, MonomialOrder};
use crate::poly::{Homogeneity, PolyRing, Polynomial};

/// Height of an ideal, with the unit ideal kept apart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Codim {
    Unit,
    Height(usize),
}

impl Codim {
    pub fn height(self) -> Option<usize> {
        match self {
            Codim::Unit => None,
            Codim::Height(h) => Some(h),
        }
    }
}

impl fmt::Display for Codim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Codim::Unit => write!(f, "unit"),
            Codim::Height(h) => write!(f, "{h}"),
        }
    }
}

pub struct Ideal<F: Field> {
    ring: Arc<PolyRing<F>>,
    gens: Vec<Polynomial<F>>,
    cache: RwLock<HashMap<MonomialOrder, Arc<GroebnerBasis<F>>>>,
}

impl<F: Field> Clone for Ideal<F> {
    fn clone(&self) -> Self {
        Self {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            cache: RwLock::new(self.cache.read().expect("cache lock").clone()),
        }
    }
}

impl<F: Field> fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| self.ring.format(g)).collect();
        write!(f, "Ideal({})", gens.join(", "))
    }
}

impl<F: Field> fmt::Display for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| self.ring.format(g)).collect();
        write!(f, "({})", gens.join(", "))
    }
}

impl<F: Field> Ideal<F> {
    /// Zero generators are dropped.
    pub fn new(ring: Arc<PolyRing<F>>, gens: Vec<Polynomial<F>>) -> Result<Self> {
        for g in &gens {
            ring.check(g)?;
        }
        Ok(Self::new_unchecked(ring, gens))
    }

    pub(crate) fn new_unchecked(ring: Arc<PolyRing<F>>, gens: Vec<Polynomial<F>>) -> Self {
        Self {
            ring,
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn parse(ring: Arc<PolyRing<F>>, gens: &[&str]) -> Result<Self> {
        let polys = gens
            .iter()
            .map(|s| ring.parse(s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, polys)
    }

    /// The ideal generated by its own reduced Gröbner basis, with the cache pre-filled.
    fn from_basis(ring: Arc<PolyRing<F>>, gb: GroebnerBasis<F>) -> Self {
        let order = gb.order();
        let ideal = Self::new_unchecked(ring, gb.elements().to_vec());
        ideal
            .cache
            .write()
            .expect("cache lock")
            .insert(order, Arc::new(gb));
        ideal
    }

    pub fn zero(ring: Arc<PolyRing<F>>) -> Self {
        Self::new_unchecked(ring, Vec::new())
    }

    pub fn unit(ring: Arc<PolyRing<F>>) -> Self {
        let one = ring.one();
        Self::new_unchecked(ring, vec![one])
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    /// Reduced Gröbner basis under the ring's order.
    pub fn groebner_basis(&self) -> Arc<GroebnerBasis<F>> {
        self.groebner_basis_in(self.ring.order())
    }

    pub fn groebner_basis_in(&self, order: MonomialOrder) -> Arc<GroebnerBasis<F>> {
        if let Some(gb) = self.cache.read().expect("cache lock").get(&order) {
            return gb.clone();
        }
        let gb = if order == self.ring.order() {
            groebner::reduced_groebner_basis(&self.ring, &self.gens)
        } else {
            let other = self.ring.reordered(order).expect("order valid for ring");
            let gens: Vec<_> = self.gens.iter().map(|g| other.convert(g)).collect();
            groebner::reduced_groebner_basis(&other, &gens)
        };
        let gb = Arc::new(gb);
        // a concurrent writer may have won; both values are identical
        self.cache
            .write()
            .expect("cache lock")
            .entry(order)
            .or_insert(gb)
            .clone()
    }

    /// Reduced Gröbner basis elements under the ring's order.
    pub fn reduced_generators(&self) -> Vec<Polynomial<F>> {
        self.groebner_basis().elements().to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.groebner_basis().is_unit()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    /// Degrees of the generators, if all are homogeneous.
    pub fn generator_degrees(&self) -> Option<Vec<u32>> {
        self.gens
            .iter()
            .map(|g| match g.homogeneity() {
                Homogeneity::Homogeneous(d) => Some(d),
                _ => None,
            })
            .collect()
    }

    fn same_ring(&self, other: &Ideal<F>) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch)
        }
    }

    pub fn contains(&self, f: &Polynomial<F>) -> bool {
        f.is_zero() || self.groebner_basis().contains(&self.ring, f)
    }

    /// `other ⊆ self`
    pub fn contains_ideal(&self, other: &Ideal<F>) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn equals(&self, other: &Ideal<F>) -> bool {
        self.same_ring(other).is_ok()
            && self.groebner_basis().elements() == other.groebner_basis().elements()
    }

    pub fn sum(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        self.same_ring(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Self::new_unchecked(self.ring.clone(), gens))
    }

    pub fn product(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        self.same_ring(other)?;
        let ring = &self.ring;
        let gens = self
            .gens
            .iter()
            .flat_map(|f| other.gens.iter().map(move |g| ring.mul(f, g)))
            .collect();
        Ok(Self::new_unchecked(self.ring.clone(), gens))
    }

    /// `I^d` for `d >= 1`. Generators are the products of `d` generators
    /// with nondecreasing indices.
    pub fn power(&self, d: u32) -> Result<Ideal<F>> {
        if d < 1 {
            return Err(AlgebraError::InvalidArgument(
                "power must be at least 1".into(),
            ));
        }
        let ring = &self.ring;
        // pairs (product, largest index used)
        let mut layer: Vec<(Polynomial<F>, usize)> = self
            .gens
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, g)| (g, i))
            .collect();
        for _ in 1..d {
            let mut next = Vec::new();
            for (p, last) in &layer {
                for (j, g) in self.gens.iter().enumerate().skip(*last) {
                    next.push((ring.mul(p, g), j));
                }
            }
            layer = next;
        }
        Ok(Self::new_unchecked(
            self.ring.clone(),
            layer.into_iter().map(|(p, _)| p).collect(),
        ))
    }

    /// `I ∩ J` by eliminating `t` from `t I + (1 - t) J`.
    pub fn intersect(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        self.same_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ring.clone()));
        }
        if self.is_unit() {
            return Ok(other.clone());
        }
        if other.is_unit() {
            return Ok(self.clone());
        }
        let ring = &self.ring;
        let n = ring.nvars();
        let mut t_name = "_t".to_string();
        while ring.var_index(&t_name).is_some() {
            t_name.push('_');
        }
        let mut names = vec![t_name];
        names.extend(ring.names().iter().cloned());
        let big = PolyRing::with_order(ring.field().clone(), names, MonomialOrder::GrevLex)?;
        let lift = |f: &Polynomial<F>| {
            big.map_from(f, |m| {
                let mut e = vec![0u16];
                e.extend_from_slice(m.exponents());
                Monomial::from_exponents(&e)
            })
        };
        let t = big.var(0);
        let one_minus_t = big.sub(&big.one(), &t);
        let mut gens = Vec::new();
        for f in &self.groebner_basis().elements().to_vec() {
            gens.push(big.mul(&t, &lift(f)));
        }
        for g in &other.groebner_basis().elements().to_vec() {
            gens.push(big.mul(&one_minus_t, &lift(g)));
        }
        let (_, kept) = groebner::eliminate(&big, &gens, 1)?;
        debug_assert!(kept
            .iter()
            .all(|g| g.terms().iter().all(|(_, m)| m.nvars() == n)));
        let gens = kept.iter().map(|g| ring.convert(g)).collect();
        let ideal = Self::new_unchecked(ring.clone(), gens);
        Ok(Self::from_basis(
            ring.clone(),
            (*ideal.groebner_basis()).clone(),
        ))
    }

    /// `I : (f)`. By convention `I : (0) = S`.
    pub fn colon_poly(&self, f: &Polynomial<F>) -> Result<Ideal<F>> {
        self.ring.check(f)?;
        if f.is_zero() || self.contains(f) {
            return Ok(Self::unit(self.ring.clone()));
        }
        if self.is_zero() {
            return Ok(Self::zero(self.ring.clone()));
        }
        if f.is_constant() {
            return Ok(self.clone());
        }
        let principal = Self::new_unchecked(self.ring.clone(), vec![f.clone()]);
        let meet = self.intersect(&principal)?;
        let gens = meet
            .gens
            .iter()
            .map(|g| {
                self.ring.divide_exact(g, f).ok_or_else(|| {
                    AlgebraError::Inconsistent("intersection with (f) not divisible by f".into())
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let ideal = Self::new_unchecked(self.ring.clone(), gens);
        Ok(Self::from_basis(
            self.ring.clone(),
            (*ideal.groebner_basis()).clone(),
        ))
    }

    /// `I : J = ⋂_j (I : g_j)` over the generators of `J`; `I : (0) = S`.
    pub fn colon(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        self.same_ring(other)?;
        let mut acc = Self::unit(self.ring.clone());
        for g in &other.gens {
            if self.contains(g) {
                continue;
            }
            let q = self.colon_poly(g)?;
            acc = if acc.is_unit() { q } else { acc.intersect(&q)? };
            if acc.equals(self) {
                // cannot shrink below I
                break;
            }
        }
        Ok(acc)
    }

    /// `I : J^∞`, iterating `K <- K : J` until the first repeat.
    pub fn saturate(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        self.same_ring(other)?;
        if other.gens.len() == 1 {
            return self.saturate_poly(&other.gens[0]);
        }
        let mut k = self.clone();
        loop {
            let next = k.colon(other)?;
            if next.equals(&k) {
                return Ok(k);
            }
            k = next;
        }
    }

    pub fn saturate_poly(&self, f: &Polynomial<F>) -> Result<Ideal<F>> {
        let mut k = self.clone();
        loop {
            let next = k.colon_poly(f)?;
            if next.equals(&k) {
                return Ok(k);
            }
            k = next;
        }
    }

    /// Height of `I`: number of variables minus the largest set of variables
    /// containing the support of no leading monomial.
    pub fn codimension(&self) -> Codim {
        let gb = self.groebner_basis();
        if gb.is_unit() {
            return Codim::Unit;
        }
        let supports: Vec<Vec<usize>> = gb
            .leading_monomials()
            .iter()
            .map(|m| m.support().collect())
            .collect();
        Codim::Height(min_hitting_set(self.ring.nvars(), &supports))
    }

    /// Krull dimension of `S/I`; `None` for the unit ideal.
    pub fn dimension(&self) -> Option<usize> {
        self.codimension().height().map(|h| self.ring.nvars() - h)
    }

    /// True iff the reduced basis consists of linear forms. The zero ideal
    /// is linear; the unit ideal is not.
    pub fn is_linear(&self) -> bool {
        let gb = self.groebner_basis();
        !gb.is_unit() && gb.elements().iter().all(|g| g.degree() == Some(1))
    }

    /// Graded minimalization: generators in increasing degree (ties by
    /// position), each kept iff it is not in the ideal of those kept before.
    pub fn minimal_generators(&self) -> Result<Vec<Polynomial<F>>> {
        let degrees = self
            .generator_degrees()
            .ok_or_else(|| AlgebraError::NotHomogeneous(format!("{self}")))?;
        let mut idx: Vec<usize> = (0..self.gens.len()).collect();
        idx.sort_by_key(|&i| (degrees[i], i));
        let n = self.ring.nvars();
        let mut kept: Vec<usize> = Vec::new();
        let mut current: Option<(u32, SparseEchelon<F, Vec<u16>>)> = None;
        for i in idx {
            let e = degrees[i];
            if current.as_ref().map(|(d, _)| *d) != Some(e) {
                let mut span = SparseEchelon::new(self.ring.field().clone());
                for &k in &kept {
                    for m in monomials_of_degree(n, e - degrees[k]) {
                        span.insert(coordinates(
                            &self.ring,
                            &self
                                .ring
                                .mul_term(&self.gens[k], &self.ring.field().one(), &m),
                        ));
                    }
                }
                current = Some((e, span));
            }
            let (_, span) = current.as_mut().expect("set above");
            if span.insert(coordinates(&self.ring, &self.gens[i])) {
                kept.push(i);
            }
        }
        Ok(kept.into_iter().map(|i| self.gens[i].clone()).collect())
    }

    /// `I ∩ k[x_drop, ...]` as an ideal of the smaller ring.
    pub fn eliminate(&self, drop_count: usize) -> Result<Ideal<F>> {
        let (small, gens) = groebner::eliminate(&self.ring, &self.gens, drop_count)?;
        Ok(Self::new_unchecked(Arc::new(small), gens))
    }

    /// Reduced basis rendered as strings, in basis order.
    pub fn to_strings(&self) -> Vec<String> {
        self.groebner_basis()
            .elements()
            .iter()
            .map(|g| self.ring.format(g))
            .collect()
    }
}

/// Coefficient vector of a polynomial keyed by exponent vectors.
pub(crate) fn coordinates<F: Field>(
    _ring: &PolyRing<F>,
    f: &Polynomial<F>,
) -> Vec<(Vec<u16>, F::Elem)> {
    f.terms()
        .iter()
        .map(|(c, m)| (m.exponents().to_vec(), c.clone()))
        .collect()
}

/// Size of the smallest variable set meeting every support.
fn min_hitting_set(nvars: usize, supports: &[Vec<usize>]) -> usize {
    let masks: Vec<u64> = supports
        .iter()
        .map(|s| s.iter().fold(0u64, |m, &v| m | (1 << v)))
        .collect();
    if masks.is_empty() {
        return 0;
    }
    fn search(masks: &[u64], chosen: u64, budget: usize) -> bool {
        match masks.iter().find(|&&m| m & chosen == 0) {
            None => true,
            Some(_) if budget == 0 => false,
            Some(&m) => {
                let mut rest = m;
                while rest != 0 {
                    let bit = rest & rest.wrapping_neg();
                    if search(masks, chosen | bit, budget - 1) {
                        return true;
                    }
                    rest &= rest - 1;
                }
                false
            }
        }
    }
    assert!(nvars <= 64, "codimension supports at most 64 variables");
    (0..=nvars)
        .find(|&k| search(&masks, 0, k))
        .expect("all variables hit every nonconstant support")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn ring(names: &[&str]) -> Arc<PolyRing<PrimeField>> {
        Arc::new(PolyRing::new(PrimeField::new(32003).unwrap(), names).unwrap())
    }

    fn ideal(r: &Arc<PolyRing<PrimeField>>, gens: &[&str]) -> Ideal<PrimeField> {
        Ideal::parse(r.clone(), gens).unwrap()
    }

    #[test]
    fn membership() {
        let r = ring(&["x", "y"]);
        let i = ideal(&r, &["x^2+y^2", "x*y"]);
        assert!(i.contains(&r.parse("y^3").unwrap()));
        assert!(!i.contains(&r.parse("y^2").unwrap()));
        assert!(i.contains(&r.zero()));
    }

    #[test]
    fn combine() {
        let r = ring(&["x", "y"]);
        let m = ideal(&r, &["x", "y"]);
        assert!(m
            .power(2)
            .unwrap()
            .equals(&ideal(&r, &["x^2", "x*y", "y^2"])));
        let p = ideal(&r, &["x"]).product(&ideal(&r, &["y"])).unwrap();
        assert!(p.equals(&ideal(&r, &["x*y"])));
        assert!(m.power(1).unwrap().equals(&m));
        assert!(m.power(0).is_err());
    }

    #[test]
    fn intersections() {
        let r = ring(&["x", "y"]);
        let a = ideal(&r, &["x"]).intersect(&ideal(&r, &["y"])).unwrap();
        assert!(a.equals(&ideal(&r, &["x*y"])));
        let b = ideal(&r, &["x^2", "x*y"])
            .intersect(&ideal(&r, &["y"]))
            .unwrap();
        assert!(b.equals(&ideal(&r, &["x*y"])));
        let i = ideal(&r, &["x^2+y", "x*y"]);
        assert!(i.intersect(&i).unwrap().equals(&i));
    }

    #[test]
    fn colons() {
        let r = ring(&["x", "y"]);
        let i = ideal(&r, &["x^2", "x*y"]);
        assert!(i
            .colon(&ideal(&r, &["x"]))
            .unwrap()
            .equals(&ideal(&r, &["x", "y"])));
        assert!(i.colon(&i).unwrap().is_unit());
        assert!(i.colon(&Ideal::zero(r.clone())).unwrap().is_unit());
        assert!(Ideal::zero(r.clone()).colon(&i).unwrap().is_zero());
    }

    #[test]
    fn example_row_ideal_and_saturation() {
        let r = ring(&["a", "b", "c", "d"]);
        let j = ideal(&r, &["a*b^2", "a*c^2", "b^2*c", "b*c^2"]);
        let i = ideal(&r, &["a*b^2", "a*c^2", "b^2*c", "b*c^2", "b*c*d"]);
        assert!(j.colon(&i).unwrap().equals(&ideal(&r, &["b", "c"])));
        assert!(j.saturate(&i).unwrap().is_unit());
    }

    #[test]
    fn saturations() {
        let r = ring(&["x", "y"]);
        let i = ideal(&r, &["x^2", "x*y"]);
        assert!(i
            .saturate(&ideal(&r, &["y"]))
            .unwrap()
            .equals(&ideal(&r, &["x"])));
        assert!(i.saturate(&ideal(&r, &["x"])).unwrap().is_unit());
    }

    #[test]
    fn equality() {
        let r = ring(&["x", "y"]);
        assert!(ideal(&r, &["x", "x+y"]).equals(&ideal(&r, &["x", "y"])));
        assert!(!ideal(&r, &["x^2"]).equals(&ideal(&r, &["x"])));
        let ri = Arc::new(
            PolyRing::new(PrimeField::with_sqrt_minus_one(32029).unwrap(), &["s", "t"]).unwrap(),
        );
        let a = Ideal::parse(ri.clone(), &["s-i*t"]).unwrap();
        let b = Ideal::parse(ri, &["-s+i*t", "-i*s-t"]).unwrap();
        assert!(a.equals(&b));
    }

    #[test]
    fn codimensions() {
        let r = ring(&["x", "y", "z"]);
        assert_eq!(ideal(&r, &["x", "y"]).codimension(), Codim::Height(2));
        assert_eq!(ideal(&r, &["x", "x+1"]).codimension(), Codim::Unit);
        assert_eq!(Ideal::zero(r.clone()).codimension(), Codim::Height(0));
        let st = ring(&["s", "t"]);
        assert_eq!(
            ideal(&st, &["s^4", "s^3*t", "s*t^3", "t^4"]).codimension(),
            Codim::Height(2)
        );
        let abcd = ring(&["a", "b", "c", "d"]);
        assert_eq!(ideal(&abcd, &["b", "c"]).codimension(), Codim::Height(2));
    }

    #[test]
    fn linearity() {
        let r = ring(&["a", "b", "c", "d"]);
        assert!(ideal(&r, &["b", "c"]).is_linear());
        assert!(!ideal(&r, &["a^2", "b", "c"]).is_linear());
        let st = ring(&["s", "t"]);
        assert!(ideal(&st, &["s-t", "s^2-t^2"]).is_linear());
        assert!(Ideal::zero(st.clone()).is_linear());
        assert!(!Ideal::unit(st).is_linear());
    }

    #[test]
    fn minimal_generator_sets() {
        let r = ring(&["x", "y"]);
        let g = ideal(&r, &["x^2", "x*y", "x^2+x*y"])
            .minimal_generators()
            .unwrap();
        assert_eq!(g, vec![r.parse("x^2").unwrap(), r.parse("x*y").unwrap()]);
        let g = ideal(&r, &["x", "x^2", "y"]).minimal_generators().unwrap();
        assert_eq!(g, vec![r.parse("x").unwrap(), r.parse("y").unwrap()]);
        assert!(ideal(&r, &["x^2+x"]).minimal_generators().is_err());
        let st = ring(&["s", "t"]);
        let sq = ideal(&st, &["s^4", "s^3*t", "s*t^3", "t^4"])
            .power(2)
            .unwrap();
        let mins = sq.minimal_generators().unwrap();
        assert_eq!(mins.len(), 9);
        let all: std::collections::HashSet<_> = mins
            .iter()
            .map(|g| g.leading_monomial().unwrap().clone())
            .collect();
        assert_eq!(all.len(), 9);
    }

    #[test]
    fn rational_colon() {
        let r = Arc::new(PolyRing::new(Rationals, &["x", "y", "z"]).unwrap());
        let i = Ideal::parse(r.clone(), &["x*z-y^2", "x^3-y*z"]).unwrap();
        let k = i.saturate_poly(&r.parse("x").unwrap()).unwrap();
        assert!(k.contains_ideal(&i));
        let x = r.parse("x").unwrap();
        for g in k.generators() {
            assert!((0..8).any(|n| i.contains(&r.mul(g, &r.pow(&x, n)))));
        }
    }

    #[test]
    fn elimination_to_ideal() {
        let r = ring(&["x", "y"]);
        let e = ideal(&r, &["x", "y"]).eliminate(1).unwrap();
        assert_eq!(e.ring().names(), &["y"]);
        assert_eq!(e.to_strings(), vec!["y"]);
    }
}
