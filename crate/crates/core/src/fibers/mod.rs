//! Fibers of the rational map `P^n --> P^r` defined by a space `W` of forms
//! of one degree.
//!
//! For a point `q` of `P^r = P(W)`, `I_q` is the ideal of the hyperplane
//! `W_q` of `W` cut out by `q`, and the chain
//!
//! ```text
//! I_q ⊆ I_q : I ⊆ ⋃_i (I_q I^(i-1) : I^i) ⊆ I_q : I^∞
//! ```
//!
//! runs from the subspace ideal through the row ideal and the correspondence
//! fiber ideal to the morphism fiber ideal.

mod powers;
mod spread;

use std::fmt;
use std::sync::Arc;

use rand::RngCore;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::ideal::{Codim, Ideal};
use crate::poly::{PolyRing, Polynomial};

pub use powers::{LinearRowsReport, PointPresentation, RowSampling};
pub use spread::{BirationalityReport, BirationalityTrial, HksOutcome, SpreadReport};

/// Bound on resampling when a random point is degenerate.
pub const RETRY_BOUND: usize = 100;
/// Default cap on the power index of the correspondence chain.
pub const DEFAULT_MAX_POWER: u32 = 6;
/// Consecutive equal terms required before the correspondence chain counts as stable.
pub const CONFIRMATION_WINDOW: u32 = 2;

/// A point of projective space, scaled so its first nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjectivePoint<F: Field> {
    coords: Vec<F::Elem>,
}

impl<F: Field> ProjectivePoint<F> {
    pub fn new(field: &F, coords: Vec<F::Elem>) -> Result<Self> {
        let lead = coords
            .iter()
            .find(|c| !field.is_zero(c))
            .ok_or(AlgebraError::ZeroPoint)?;
        let inv = field.inv(lead).expect("nonzero");
        Ok(Self {
            coords: coords.iter().map(|c| field.mul(c, &inv)).collect(),
        })
    }

    pub fn from_i64(field: &F, coords: &[i64]) -> Result<Self> {
        Self::new(field, coords.iter().map(|&c| field.from_i64(c)).collect())
    }

    /// The `i`-th coordinate point of `P^(len-1)`.
    pub fn standard(field: &F, len: usize, i: usize) -> Self {
        let coords = (0..len)
            .map(|k| if k == i { field.one() } else { field.zero() })
            .collect();
        Self { coords }
    }

    pub fn random(field: &F, len: usize, rng: &mut dyn RngCore) -> Result<Self> {
        for _ in 0..RETRY_BOUND {
            let coords: Vec<_> = (0..len).map(|_| field.random(rng)).collect();
            if let Ok(p) = Self::new(field, coords) {
                return Ok(p);
            }
        }
        Err(AlgebraError::SamplingExhausted(RETRY_BOUND))
    }

    pub fn coords(&self) -> &[F::Elem] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Index of the first nonzero coordinate.
    pub fn pivot(&self, field: &F) -> usize {
        self.coords
            .iter()
            .position(|c| !field.is_zero(c))
            .expect("points are nonzero")
    }

    pub fn format(&self, field: &F) -> String {
        let parts: Vec<String> = self
            .coords
            .iter()
            .map(|c| {
                let (neg, mag) = field.signed_repr(c);
                if neg {
                    format!("-{mag}")
                } else {
                    mag
                }
            })
            .collect();
        format!("({})", parts.join(":"))
    }
}

impl<F: Field> fmt::Debug for ProjectivePoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords)
    }
}

/// A validated rational map: a minimal basis `g_0..g_r` of `W`, all of
/// degree `d`, generating an ideal of codimension at least 2.
#[derive(Clone, Debug)]
pub struct MapContext<F: Field> {
    ideal: Ideal<F>,
    basis: Vec<Polynomial<F>>,
    degree: u32,
    seed: u64,
}

impl<F: Field> MapContext<F> {
    pub fn new(ideal: &Ideal<F>, seed: u64) -> Result<Self> {
        if ideal.is_zero() {
            return Err(AlgebraError::ZeroIdeal);
        }
        let basis = ideal.minimal_generators()?;
        let mut degrees: Vec<u32> = basis.iter().map(|g| g.degree().expect("nonzero")).collect();
        degrees.sort_unstable();
        degrees.dedup();
        if degrees.len() > 1 {
            return Err(AlgebraError::MixedDegrees(degrees));
        }
        let degree = degrees[0];
        if degree == 0 {
            return Err(AlgebraError::InvalidArgument(
                "the unit ideal does not define a rational map".into(),
            ));
        }
        let ideal = Ideal::new_unchecked(ideal.ring().clone(), basis.clone());
        match ideal.codimension() {
            Codim::Height(h) if h < 2 => return Err(AlgebraError::CodimensionTooSmall(h)),
            _ => {}
        }
        Ok(Self {
            ideal,
            basis,
            degree,
            seed,
        })
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        self.ideal.ring()
    }

    pub fn field(&self) -> &F {
        self.ring().field()
    }

    /// The ideal generated by the basis.
    pub fn ideal(&self) -> &Ideal<F> {
        &self.ideal
    }

    pub fn basis(&self) -> &[Polynomial<F>] {
        &self.basis
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// `n` for the source `P^n`.
    pub fn source_dim(&self) -> usize {
        self.ring().nvars() - 1
    }

    /// `r` for the target `P^r`.
    pub fn target_dim(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn source_point(&self, coords: Vec<F::Elem>) -> Result<ProjectivePoint<F>> {
        self.check_len(coords.len(), self.ring().nvars())?;
        ProjectivePoint::new(self.field(), coords)
    }

    pub fn target_point(&self, coords: Vec<F::Elem>) -> Result<ProjectivePoint<F>> {
        self.check_len(coords.len(), self.basis.len())?;
        ProjectivePoint::new(self.field(), coords)
    }

    fn check_len(&self, found: usize, expected: usize) -> Result<()> {
        if found == expected {
            Ok(())
        } else {
            Err(AlgebraError::LengthMismatch { expected, found })
        }
    }

    /// `(g_0(p) : ... : g_r(p))`.
    pub fn evaluate_map(&self, p: &ProjectivePoint<F>) -> Result<ProjectivePoint<F>> {
        self.check_len(p.len(), self.ring().nvars())?;
        let values = self
            .basis
            .iter()
            .map(|g| self.ring().evaluate(g, p.coords()))
            .collect::<Result<Vec<_>>>()?;
        ProjectivePoint::new(self.field(), values).map_err(|_| AlgebraError::BasePoint)
    }

    /// A random point of `P^n` outside `V(I)`, with its image.
    pub fn sample_point(
        &self,
        rng: &mut dyn RngCore,
    ) -> Result<(ProjectivePoint<F>, ProjectivePoint<F>)> {
        for _ in 0..RETRY_BOUND {
            let p = ProjectivePoint::random(self.field(), self.ring().nvars(), rng)?;
            if let Ok(q) = self.evaluate_map(&p) {
                return Ok((p, q));
            }
        }
        Err(AlgebraError::SamplingExhausted(RETRY_BOUND))
    }

    /// Generators `q_j g_i - q_i g_j` (`i != j`) of `I_q`, with `j` the first
    /// nonzero coordinate of `q`.
    pub fn subspace_generators(&self, q: &ProjectivePoint<F>) -> Result<Vec<Polynomial<F>>> {
        self.check_len(q.len(), self.basis.len())?;
        let ring = self.ring();
        let j = q.pivot(self.field());
        let qj = &q.coords()[j];
        Ok((0..self.basis.len())
            .filter(|&i| i != j)
            .map(|i| {
                ring.sub(
                    &ring.scale(&self.basis[i], qj),
                    &ring.scale(&self.basis[j], &q.coords()[i]),
                )
            })
            .collect())
    }

    pub fn subspace_ideal(&self, q: &ProjectivePoint<F>) -> Result<Ideal<F>> {
        Ok(Ideal::new_unchecked(
            self.ring().clone(),
            self.subspace_generators(q)?,
        ))
    }

    /// The basis element at the pivot of `q`; together with `I_q` it generates `I`.
    fn pivot_generator(&self, q: &ProjectivePoint<F>) -> &Polynomial<F> {
        &self.basis[q.pivot(self.field())]
    }

    /// `I_q : I`. Since `I = I_q + (g_j)`, this is `I_q : g_j`.
    pub fn row_ideal(&self, q: &ProjectivePoint<F>) -> Result<Ideal<F>> {
        self.subspace_ideal(q)?.colon_poly(self.pivot_generator(q))
    }

    /// `I_q : I^∞`, computed as `I_q : g_j^∞` because `I^k ⊆ I_q + (g_j^k)`.
    pub fn morphism_fiber_ideal(&self, q: &ProjectivePoint<F>) -> Result<Ideal<F>> {
        self.subspace_ideal(q)?
            .saturate_poly(self.pivot_generator(q))
    }

    /// `⋃_i (I_q I^(i-1) : I^i)`, stopping once three consecutive terms agree
    /// or at `max_power`.
    pub fn correspondence_fiber_ideal(
        &self,
        q: &ProjectivePoint<F>,
        max_power: u32,
    ) -> Result<CorrespondenceFiber<F>> {
        if max_power < 2 {
            return Err(AlgebraError::InvalidArgument(
                "max power must be at least 2".into(),
            ));
        }
        let iq = self.subspace_ideal(q)?;
        let gj = self.pivot_generator(q).clone();
        let ring = self.ring().clone();
        let mut chain: Vec<Ideal<F>> = Vec::new();
        let mut prev_power = Ideal::unit(ring.clone());
        let mut run = 0;
        for i in 1..=max_power {
            // I^i = I_q I^(i-1) + g_j I^(i-1)
            let lhs = iq.product(&prev_power)?;
            let rhs_gens: Vec<_> = prev_power
                .generators()
                .iter()
                .map(|h| ring.mul(&gj, h))
                .collect();
            let ji = lhs.colon(&Ideal::new_unchecked(ring.clone(), rhs_gens))?;
            if let Some(last) = chain.last() {
                if !ji.contains_ideal(last) {
                    return Err(AlgebraError::Inconsistent(format!(
                        "correspondence chain decreased at power {i}"
                    )));
                }
                if ji.equals(last) {
                    run += 1;
                } else {
                    run = 0;
                }
            }
            chain.push(ji);
            if run == CONFIRMATION_WINDOW {
                let stabilized_at = i - CONFIRMATION_WINDOW;
                return Ok(CorrespondenceFiber {
                    ideal: chain.pop().expect("nonempty"),
                    stabilized_at: Some(stabilized_at),
                    powers_computed: i,
                    confirmed: true,
                });
            }
            if i < max_power {
                let next = prev_power.product(self.ideal())?.minimal_generators()?;
                prev_power = Ideal::new_unchecked(ring.clone(), next);
            }
        }
        let last = chain.pop().expect("max_power >= 2");
        Ok(CorrespondenceFiber {
            ideal: last,
            stabilized_at: None,
            powers_computed: max_power,
            confirmed: false,
        })
    }

    /// All four ideals of the chain at `q`, with each inclusion checked.
    pub fn fiber_report(&self, q: &ProjectivePoint<F>, max_power: u32) -> Result<FiberReport<F>> {
        let subspace = self.subspace_ideal(q)?;
        let row = self.row_ideal(q)?;
        let correspondence = self.correspondence_fiber_ideal(q, max_power)?;
        let morphism = self.morphism_fiber_ideal(q)?;
        let chain_verified = row.contains_ideal(&subspace)
            && correspondence.ideal.contains_ideal(&row)
            && morphism.contains_ideal(&correspondence.ideal);
        Ok(FiberReport {
            q: q.clone(),
            subspace,
            row,
            correspondence,
            morphism,
            chain_verified,
        })
    }
}

/// The correspondence fiber ideal with its stabilization record.
#[derive(Clone, Debug)]
pub struct CorrespondenceFiber<F: Field> {
    pub ideal: Ideal<F>,
    /// First power index of the confirming window.
    pub stabilized_at: Option<u32>,
    pub powers_computed: u32,
    pub confirmed: bool,
}

#[derive(Clone, Debug)]
pub struct FiberReport<F: Field> {
    pub q: ProjectivePoint<F>,
    pub subspace: Ideal<F>,
    pub row: Ideal<F>,
    pub correspondence: CorrespondenceFiber<F>,
    pub morphism: Ideal<F>,
    pub chain_verified: bool,
}

impl<F: Field> FiberReport<F> {
    pub fn ideals(&self) -> [&Ideal<F>; 4] {
        [
            &self.subspace,
            &self.row,
            &self.correspondence.ideal,
            &self.morphism,
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn monomial_map<F: Field>(field: F) -> MapContext<F> {
        let r = Arc::new(PolyRing::new(field, &["a", "b", "c", "d"]).unwrap());
        let i = Ideal::parse(r, &["a*b^2", "a*c^2", "b^2*c", "b*c^2", "b*c*d"]).unwrap();
        MapContext::new(&i, 0).unwrap()
    }

    fn xy_ctx() -> MapContext<PrimeField> {
        // (x, y) in three variables passes the codimension gate
        let r = Arc::new(PolyRing::new(PrimeField::new(32003).unwrap(), &["x", "y", "z"]).unwrap());
        MapContext::new(&Ideal::parse(r, &["x", "y"]).unwrap(), 0).unwrap()
    }

    #[test]
    fn context_validation() {
        let ctx = monomial_map(PrimeField::new(32003).unwrap());
        assert_eq!(
            (ctx.target_dim(), ctx.degree(), ctx.source_dim()),
            (4, 3, 3)
        );
        let r = Arc::new(PolyRing::new(Rationals, &["x", "y"]).unwrap());
        let principal = Ideal::parse(r.clone(), &["x*y"]).unwrap();
        assert_eq!(
            MapContext::new(&principal, 0).unwrap_err(),
            AlgebraError::CodimensionTooSmall(1)
        );
        let mixed = Ideal::parse(r.clone(), &["x", "y^2"]).unwrap();
        assert!(matches!(
            MapContext::new(&mixed, 0),
            Err(AlgebraError::MixedDegrees(_))
        ));
        assert_eq!(
            MapContext::new(&Ideal::zero(r), 0).unwrap_err(),
            AlgebraError::ZeroIdeal
        );
    }

    #[test]
    fn map_evaluation() {
        let ctx = monomial_map(PrimeField::new(32003).unwrap());
        let f = *ctx.field();
        let p = ProjectivePoint::from_i64(&f, &[0, 0, 0, 1]).unwrap();
        assert_eq!(ctx.evaluate_map(&p).unwrap_err(), AlgebraError::BasePoint);
        let p = ProjectivePoint::from_i64(&f, &[1, 2, 3, 4]).unwrap();
        let scaled = ProjectivePoint::from_i64(&f, &[5, 10, 15, 20]).unwrap();
        assert_eq!(p, scaled);
        assert_eq!(
            ctx.evaluate_map(&p).unwrap(),
            ctx.evaluate_map(&scaled).unwrap()
        );
    }

    #[test]
    fn subspace_ideals() {
        let ctx = xy_ctx();
        let f = *ctx.field();
        let r = ctx.ring().clone();
        let iq = ctx
            .subspace_ideal(&ProjectivePoint::from_i64(&f, &[0, 1]).unwrap())
            .unwrap();
        assert!(iq.equals(&Ideal::parse(r.clone(), &["x"]).unwrap()));
        let iq = ctx
            .subspace_ideal(&ProjectivePoint::from_i64(&f, &[1, 1]).unwrap())
            .unwrap();
        assert!(iq.equals(&Ideal::parse(r.clone(), &["x-y"]).unwrap()));
        let row = ctx
            .row_ideal(&ProjectivePoint::from_i64(&f, &[0, 1]).unwrap())
            .unwrap();
        assert!(row.equals(&Ideal::parse(r, &["x"]).unwrap()));
    }

    #[test]
    fn monomial_chain_is_strict() {
        let ctx = monomial_map(PrimeField::new(32003).unwrap());
        let f = *ctx.field();
        let r = ctx.ring().clone();
        let q = ProjectivePoint::from_i64(&f, &[0, 0, 0, 0, 1]).unwrap();
        let j = Ideal::parse(r.clone(), &["a*b^2", "a*c^2", "b^2*c", "b*c^2"]).unwrap();
        assert!(ctx.subspace_ideal(&q).unwrap().equals(&j));
        let report = ctx.fiber_report(&q, DEFAULT_MAX_POWER).unwrap();
        assert!(report
            .row
            .equals(&Ideal::parse(r.clone(), &["b", "c"]).unwrap()));
        assert!(report
            .correspondence
            .ideal
            .equals(&Ideal::parse(r, &["a^2", "b", "c"]).unwrap()));
        assert!(report.correspondence.confirmed);
        assert!(report.morphism.is_unit());
        assert!(report.chain_verified);
        // the pivot shortcut agrees with the colon by all of I
        assert!(report.row.equals(&j.colon(ctx.ideal()).unwrap()));
    }

    #[test]
    fn max_power_must_allow_a_chain() {
        let ctx = xy_ctx();
        let q = ProjectivePoint::standard(ctx.field(), 2, 0);
        assert!(ctx.correspondence_fiber_ideal(&q, 1).is_err());
        let c = ctx.correspondence_fiber_ideal(&q, 2).unwrap();
        assert!(!c.confirmed);
    }
}
