//! Analytic spread, its lower bounds, and birationality.

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::groebner;
use crate::ideal::{Codim, Ideal};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::PolyRing;
use crate::rng::op_rng;
use crate::syzygy::PresentationMatrix;

use super::{MapContext, ProjectivePoint};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpreadReport {
    pub value: usize,
    /// `codim(I_φ(p) : I^∞)` for each sampled `p`.
    pub trial_codims: Vec<usize>,
    /// Dimension of the special fiber ring, when it was computed.
    pub oracle: Option<usize>,
}

#[derive(Clone, Debug)]
pub enum HksOutcome {
    Bound {
        bound: usize,
        rank: usize,
        codim: usize,
    },
    NotApplicable {
        rank: Option<usize>,
        reason: String,
    },
}

#[derive(Clone, Debug)]
pub struct BirationalityTrial<F: Field> {
    pub point: ProjectivePoint<F>,
    pub image: ProjectivePoint<F>,
    pub fiber: Ideal<F>,
    pub linear: bool,
    pub codim: Codim,
    pub birational: bool,
}

#[derive(Clone, Debug)]
pub struct BirationalityReport<F: Field> {
    pub birational: bool,
    pub trials: Vec<BirationalityTrial<F>>,
}

impl<F: Field> MapContext<F> {
    /// Kernel of `k[T_0..T_r] -> S`, `T_i -> g_i`, by elimination.
    pub fn special_fiber_ideal(&self) -> Result<Ideal<F>> {
        let ring = self.ring();
        let n = ring.nvars();
        let r1 = self.basis().len();
        let mut t_names = Vec::with_capacity(r1);
        for i in 0..r1 {
            let mut name = format!("T{i}");
            while ring.var_index(&name).is_some() {
                name.insert(0, '_');
            }
            t_names.push(name);
        }
        let mut names = ring.names().to_vec();
        names.extend(t_names);
        let big = PolyRing::with_order(ring.field().clone(), names, MonomialOrder::GrevLex)?;
        let gens: Vec<_> = self
            .basis()
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let lifted = big.map_from(g, |m| {
                    let mut e = m.exponents().to_vec();
                    e.resize(n + r1, 0);
                    Monomial::from_exponents(&e)
                });
                big.sub(&big.var(n + i), &lifted)
            })
            .collect();
        let (small, kernel) = groebner::eliminate(&big, &gens, n)?;
        Ideal::new(std::sync::Arc::new(small), kernel)
    }

    /// `ℓ(I)` as the Krull dimension of the special fiber ring.
    pub fn special_fiber_dimension(&self) -> Result<usize> {
        let kernel = self.special_fiber_ideal()?;
        kernel.dimension().ok_or_else(|| {
            AlgebraError::Inconsistent("special fiber ideal is the unit ideal".into())
        })
    }

    /// `max over trials of 1 + codim(I_φ(p) : I^∞)` for random `p`.
    pub fn analytic_spread_sampled(&self, trials: usize) -> Result<SpreadReport> {
        if trials == 0 {
            return Err(AlgebraError::InvalidArgument(
                "need at least one trial".into(),
            ));
        }
        let mut rng = op_rng(self.seed(), "spread");
        let mut trial_codims = Vec::with_capacity(trials);
        for _ in 0..trials {
            let (_, q) = self.sample_point(&mut rng)?;
            let fiber = self.morphism_fiber_ideal(&q)?;
            match fiber.codimension() {
                Codim::Height(h) => trial_codims.push(h),
                Codim::Unit => {
                    return Err(AlgebraError::Inconsistent(
                        "fiber through a sampled point is empty".into(),
                    ))
                }
            }
        }
        let value = 1 + trial_codims.iter().copied().max().expect("trials >= 1");
        Ok(SpreadReport {
            value,
            trial_codims,
            oracle: None,
        })
    }

    /// Sampled analytic spread, confirmed against the special fiber dimension.
    pub fn analytic_spread(&self, trials: usize) -> Result<SpreadReport> {
        let mut report = self.analytic_spread_sampled(trials)?;
        let oracle = self.special_fiber_dimension()?;
        if oracle != report.value {
            return Err(AlgebraError::Inconsistent(format!(
                "sampled analytic spread {} but special fiber dimension {oracle}",
                report.value
            )));
        }
        report.oracle = Some(oracle);
        Ok(report)
    }

    /// `1 + codim(I_q : I^∞)` when that ideal is proper.
    pub fn spread_lower_bound(&self, q: &ProjectivePoint<F>) -> Result<Option<usize>> {
        Ok(self
            .morphism_fiber_ideal(q)?
            .codimension()
            .height()
            .map(|h| h + 1))
    }

    /// Lower bound from a matrix of syzygies on a basis of `W` and a point
    /// `q` in the coordinates of that basis.
    pub fn hks_lower_bound(
        &self,
        a: &PresentationMatrix<F>,
        q: &ProjectivePoint<F>,
    ) -> Result<HksOutcome> {
        let r = self.target_dim();
        if a.row_count() != r + 1 {
            return Err(AlgebraError::LengthMismatch {
                expected: r + 1,
                found: a.row_count(),
            });
        }
        let theirs = Ideal::new(self.ring().clone(), a.generators().to_vec())?;
        if a.generator_degrees().iter().any(|&d| d != self.degree()) || !theirs.equals(self.ideal())
        {
            return Err(AlgebraError::InvalidArgument(
                "matrix rows are not indexed by a basis of the map's forms".into(),
            ));
        }
        let aq = a.generalized_row_ideal(q.coords())?;
        if aq.is_zero() {
            return Ok(HksOutcome::NotApplicable {
                rank: None,
                reason: "generalized row is zero".into(),
            });
        }
        if aq.is_unit() {
            return Ok(HksOutcome::NotApplicable {
                rank: None,
                reason: "generalized row generates the unit ideal".into(),
            });
        }
        if !aq.is_linear() {
            return Err(AlgebraError::Unsupported(
                "generalized row ideal is not linear, so no prime is exhibited".into(),
            ));
        }
        let rank = a.rank_modulo_linear_ideal(&aq)?;
        let codim = aq.codimension().height().expect("proper");
        if rank == r {
            Ok(HksOutcome::Bound {
                bound: 1 + codim,
                rank,
                codim,
            })
        } else {
            Ok(HksOutcome::NotApplicable {
                rank: Some(rank),
                reason: format!("rank {rank} modulo the generalized row ideal, need {r}"),
            })
        }
    }

    /// General-point test: `φ` is birational onto its image iff the fiber
    /// through a general point is a linear ideal of codimension `n`. Every
    /// trial must agree.
    pub fn birationality_test(&self, trials: usize) -> Result<BirationalityReport<F>> {
        if trials == 0 {
            return Err(AlgebraError::InvalidArgument(
                "need at least one trial".into(),
            ));
        }
        let n = self.source_dim();
        let mut rng = op_rng(self.seed(), "birational");
        let mut records = Vec::with_capacity(trials);
        for _ in 0..trials {
            let (point, image) = self.sample_point(&mut rng)?;
            let fiber = self.morphism_fiber_ideal(&image)?;
            let linear = fiber.is_linear();
            let codim = fiber.codimension();
            records.push(BirationalityTrial {
                point,
                image,
                fiber,
                linear,
                codim,
                birational: linear && codim == Codim::Height(n),
            });
        }
        let verdict = records[0].birational;
        if records.iter().any(|t| t.birational != verdict) {
            let yes = records.iter().filter(|t| t.birational).count();
            return Err(AlgebraError::TrialDisagreement(format!(
                "{yes} of {trials} trials found a linear fiber of codimension {n}"
            )));
        }
        Ok(BirationalityReport {
            birational: verdict,
            trials: records,
        })
    }

    /// Certificate from one explicit point: a row ideal that is linear of
    /// codimension `n` and does not contain `I` proves birationality.
    /// `false` means the certificate does not apply, not that `φ` fails to be birational.
    pub fn certify_birational(&self, q: &ProjectivePoint<F>) -> Result<bool> {
        let row = self.row_ideal(q)?;
        Ok(row.is_linear()
            && row.codimension() == Codim::Height(self.source_dim())
            && !row.contains_ideal(self.ideal()))
    }
}
