//! Powers of `I`, presentations whose rows belong to points, and the
//! linearity of generalized rows.

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::ideal::Ideal;
use crate::linalg::inverse;
use crate::rng::op_rng;
use crate::syzygy::{minimal_presentation, minimalize, syzygy_matrix, PresentationMatrix};

use super::{MapContext, ProjectivePoint, RETRY_BOUND};

/// A presentation of `I^d` in a basis `h_0..h_N` of `W^d` with
/// `h_k(p_i) = δ_ik`, so that row `i` belongs to the point `p_i`.
#[derive(Clone, Debug)]
pub struct PointPresentation<F: Field> {
    pub context: MapContext<F>,
    pub matrix: PresentationMatrix<F>,
    pub points: Vec<ProjectivePoint<F>>,
}

impl<F: Field> PointPresentation<F> {
    pub fn row_ideals(&self) -> Vec<Ideal<F>> {
        (0..self.matrix.row_count())
            .map(|i| self.matrix.row_ideal(i))
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct LinearRowsReport<F: Field> {
    pub passed: bool,
    pub tested: usize,
    /// Points whose generalized row ideal is not linear.
    pub counterexamples: Vec<ProjectivePoint<F>>,
}

/// Which generalized rows to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RowSampling {
    pub basis_rows: bool,
    pub random_targets: usize,
    pub image_points: usize,
}

impl RowSampling {
    pub fn with_samples(samples: usize) -> Self {
        Self {
            basis_rows: true,
            random_targets: samples,
            image_points: samples,
        }
    }

    pub fn basis_only() -> Self {
        Self {
            basis_rows: true,
            random_targets: 0,
            image_points: 0,
        }
    }
}

impl<F: Field> MapContext<F> {
    /// The map given by `W^d`, with a basis chosen among the `d`-fold products.
    pub fn power_context(&self, d: u32) -> Result<MapContext<F>> {
        if d == 1 {
            return Ok(self.clone());
        }
        MapContext::new(&self.ideal().power(d)?, self.seed())
    }

    /// `I_φ(p) I^(d-1) : I^d`, the row ideal of `φ_d(p)`.
    pub fn power_row_ideal(&self, d: u32, p: &ProjectivePoint<F>) -> Result<Ideal<F>> {
        if d < 1 {
            return Err(AlgebraError::InvalidArgument(
                "power must be at least 1".into(),
            ));
        }
        let q = self.evaluate_map(p)?;
        let iq = self.subspace_ideal(&q)?;
        if d == 1 {
            return self.row_ideal(&q);
        }
        let ring = self.ring();
        let lower = self.power_context(d - 1)?;
        let lhs = iq.product(lower.ideal())?;
        // I^d = I_q I^(d-1) + g_j I^(d-1)
        let gj = &self.basis()[q.pivot(self.field())];
        let rhs: Vec<_> = lower.basis().iter().map(|h| ring.mul(gj, h)).collect();
        lhs.colon(&Ideal::new_unchecked(ring.clone(), rhs))
    }

    /// Presentation of `I^d` whose rows are attributed to points `p_0..p_N`.
    /// Points are sampled when not given; a singular evaluation matrix
    /// triggers resampling, or an error for given points.
    pub fn point_presentation(
        &self,
        d: u32,
        points: Option<Vec<ProjectivePoint<F>>>,
    ) -> Result<PointPresentation<F>> {
        let context = self.power_context(d)?;
        let field = self.field();
        let size = context.basis().len();
        let ring = self.ring();
        let evaluate = |pts: &[ProjectivePoint<F>]| -> Result<Vec<Vec<F::Elem>>> {
            pts.iter()
                .map(|p| {
                    context
                        .basis()
                        .iter()
                        .map(|f| ring.evaluate(f, p.coords()))
                        .collect()
                })
                .collect()
        };
        let (points, e_inv_t) = match points {
            Some(pts) => {
                if pts.len() != size {
                    return Err(AlgebraError::LengthMismatch {
                        expected: size,
                        found: pts.len(),
                    });
                }
                for p in &pts {
                    self.evaluate_map(p)?;
                }
                let e = evaluate(&pts)?;
                let x = inverse(field, &transpose(&e)).ok_or_else(|| {
                    AlgebraError::InvalidArgument(
                        "points impose dependent conditions on W^d".into(),
                    )
                })?;
                (pts, x)
            }
            None => {
                let mut rng = op_rng(self.seed(), &format!("point-presentation:{d}"));
                let mut found = None;
                for _ in 0..RETRY_BOUND {
                    let pts = (0..size)
                        .map(|_| self.sample_point(&mut rng).map(|(p, _)| p))
                        .collect::<Result<Vec<_>>>()?;
                    if let Some(x) = inverse(field, &transpose(&evaluate(&pts)?)) {
                        found = Some((pts, x));
                        break;
                    }
                }
                found.ok_or(AlgebraError::SamplingExhausted(RETRY_BOUND))?
            }
        };
        let base = minimalize(&syzygy_matrix(ring, context.basis())?)?;
        let matrix = base.change_basis(&e_inv_t)?;
        Ok(PointPresentation {
            context,
            matrix,
            points,
        })
    }

    /// Tests whether generalized rows of the minimal presentation of `I^d`
    /// generate linear ideals. A pass is probabilistic; a failure is exact.
    pub fn linear_generalized_rows_check(
        &self,
        d: u32,
        sampling: RowSampling,
    ) -> Result<LinearRowsReport<F>> {
        let ctx = self.power_context(d)?;
        let a = minimal_presentation(ctx.ideal())?;
        ctx.check_matrix_rows(&a, sampling)
    }

    /// The same test on an explicit matrix whose rows are indexed by its generators.
    pub fn check_matrix_rows(
        &self,
        a: &PresentationMatrix<F>,
        sampling: RowSampling,
    ) -> Result<LinearRowsReport<F>> {
        let field = self.field();
        let len = a.row_count();
        let mut targets: Vec<ProjectivePoint<F>> = Vec::new();
        if sampling.basis_rows {
            targets.extend((0..len).map(|i| ProjectivePoint::standard(field, len, i)));
        }
        let mut rng = op_rng(self.seed(), "linear-rows");
        for _ in 0..sampling.random_targets {
            targets.push(ProjectivePoint::random(field, len, &mut rng)?);
        }
        for _ in 0..sampling.image_points {
            let (p, _) = self.sample_point(&mut rng)?;
            let values = a
                .generators()
                .iter()
                .map(|g| self.ring().evaluate(g, p.coords()))
                .collect::<Result<Vec<_>>>()?;
            targets.push(ProjectivePoint::new(field, values).map_err(|_| AlgebraError::BasePoint)?);
        }
        let mut counterexamples = Vec::new();
        for q in &targets {
            if !a.generalized_row_ideal(q.coords())?.is_linear() {
                counterexamples.push(q.clone());
            }
        }
        Ok(LinearRowsReport {
            passed: counterexamples.is_empty(),
            tested: targets.len(),
            counterexamples,
        })
    }
}

fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols)
        .map(|j| m.iter().map(|r| r[j].clone()).collect())
        .collect()
}
