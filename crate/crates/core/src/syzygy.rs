//! Syzygies and presentation matrices.
//!
//! A presentation matrix has one row per generator `g_i` and one column per
//! syzygy `c` with `sum_i g_i c_i = 0`. Syzygies come from a lifted Gröbner
//! basis by Schreyer's construction and are pulled back to the input
//! generators.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::groebner::{divide, lifted_groebner_basis};
use crate::ideal::Ideal;
use crate::linalg::{inverse, SparseEchelon};
use crate::monomial::monomials_of_degree;
use crate::poly::{Homogeneity, PolyRing, Polynomial};

#[derive(Clone, Debug)]
pub struct PresentationMatrix<F: Field> {
    ring: Arc<PolyRing<F>>,
    generators: Vec<Polynomial<F>>,
    generator_degrees: Vec<u32>,
    columns: Vec<Vec<Polynomial<F>>>,
    column_degrees: Vec<u32>,
}

fn homogeneous_degrees<F: Field>(gens: &[Polynomial<F>], ring: &PolyRing<F>) -> Result<Vec<u32>> {
    gens.iter()
        .map(|g| match g.homogeneity() {
            Homogeneity::Homogeneous(d) => Ok(d),
            Homogeneity::Zero => Err(AlgebraError::InvalidArgument(
                "generators must be nonzero".into(),
            )),
            Homogeneity::Inhomogeneous => Err(AlgebraError::NotHomogeneous(ring.format(g))),
        })
        .collect()
}

impl<F: Field> PresentationMatrix<F> {
    /// Checks that every column is a homogeneous syzygy of `generators`.
    /// Zero columns are dropped.
    pub fn from_columns(
        ring: Arc<PolyRing<F>>,
        generators: Vec<Polynomial<F>>,
        columns: Vec<Vec<Polynomial<F>>>,
    ) -> Result<Self> {
        let generator_degrees = homogeneous_degrees(&generators, &ring)?;
        let rows = generators.len();
        let mut kept = Vec::new();
        let mut column_degrees = Vec::new();
        for (j, col) in columns.into_iter().enumerate() {
            if col.len() != rows {
                return Err(AlgebraError::LengthMismatch {
                    expected: rows,
                    found: col.len(),
                });
            }
            for e in &col {
                ring.check(e)?;
            }
            let mut degree = None;
            for (i, e) in col.iter().enumerate() {
                let d = match e.homogeneity() {
                    Homogeneity::Zero => continue,
                    Homogeneity::Homogeneous(d) => d + generator_degrees[i],
                    Homogeneity::Inhomogeneous => {
                        return Err(AlgebraError::InhomogeneousEntry { row: i, column: j })
                    }
                };
                match degree {
                    None => degree = Some(d),
                    Some(prev) if prev != d => {
                        return Err(AlgebraError::InhomogeneousEntry { row: i, column: j })
                    }
                    _ => {}
                }
            }
            let Some(degree) = degree else { continue };
            let mut acc = ring.zero();
            for (g, e) in generators.iter().zip(&col) {
                acc = ring.add(&acc, &ring.mul(g, e));
            }
            if !acc.is_zero() {
                return Err(AlgebraError::NotSyzygy(j));
            }
            kept.push(col);
            column_degrees.push(degree);
        }
        Ok(Self {
            ring,
            generators,
            generator_degrees,
            columns: kept,
            column_degrees,
        })
    }

    /// Same as [`from_columns`](Self::from_columns) with the matrix given row by row.
    pub fn from_rows(
        ring: Arc<PolyRing<F>>,
        generators: Vec<Polynomial<F>>,
        rows: Vec<Vec<Polynomial<F>>>,
    ) -> Result<Self> {
        if rows.len() != generators.len() {
            return Err(AlgebraError::LengthMismatch {
                expected: generators.len(),
                found: rows.len(),
            });
        }
        let width = rows.first().map_or(0, |r| r.len());
        if let Some(bad) = rows.iter().find(|r| r.len() != width) {
            return Err(AlgebraError::LengthMismatch {
                expected: width,
                found: bad.len(),
            });
        }
        let columns = (0..width)
            .map(|j| rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        Self::from_columns(ring, generators, columns)
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }

    pub fn generator_degrees(&self) -> &[u32] {
        &self.generator_degrees
    }

    pub fn columns(&self) -> &[Vec<Polynomial<F>>] {
        &self.columns
    }

    pub fn column_degrees(&self) -> &[u32] {
        &self.column_degrees
    }

    pub fn row_count(&self) -> usize {
        self.generators.len()
    }

    pub fn column_count(&self) -> usize {
        self.columns.len()
    }

    pub fn entry(&self, row: usize, column: usize) -> &Polynomial<F> {
        &self.columns[column][row]
    }

    pub fn row(&self, i: usize) -> Vec<Polynomial<F>> {
        self.columns.iter().map(|c| c[i].clone()).collect()
    }

    pub fn row_ideal(&self, i: usize) -> Ideal<F> {
        Ideal::new_unchecked(self.ring.clone(), self.row(i))
    }

    /// `(sum_i q_i A[i][j])_j`.
    pub fn generalized_row(&self, q: &[F::Elem]) -> Result<Vec<Polynomial<F>>> {
        if q.len() != self.row_count() {
            return Err(AlgebraError::LengthMismatch {
                expected: self.row_count(),
                found: q.len(),
            });
        }
        let field = self.ring.field();
        if q.iter().all(|c| field.is_zero(c)) {
            return Err(AlgebraError::ZeroPoint);
        }
        Ok(self
            .columns
            .iter()
            .map(|col| {
                col.iter().zip(q).fold(self.ring.zero(), |acc, (e, c)| {
                    self.ring.add(&acc, &self.ring.scale(e, c))
                })
            })
            .collect())
    }

    pub fn generalized_row_ideal(&self, q: &[F::Elem]) -> Result<Ideal<F>> {
        Ok(Ideal::new_unchecked(
            self.ring.clone(),
            self.generalized_row(q)?,
        ))
    }

    /// True iff every nonzero entry is a linear form.
    pub fn has_linear_entries(&self) -> bool {
        self.columns
            .iter()
            .flatten()
            .all(|e| e.is_zero() || e.homogeneity() == Homogeneity::Homogeneous(1))
    }

    /// Re-expresses the presentation in the generators `h = X g`, for an
    /// invertible scalar matrix `X`. Column `c` becomes `(X^-1)^T c`.
    pub fn change_basis(&self, x: &[Vec<F::Elem>]) -> Result<Self> {
        let n = self.row_count();
        if x.len() != n || x.iter().any(|r| r.len() != n) {
            return Err(AlgebraError::LengthMismatch {
                expected: n,
                found: x.len(),
            });
        }
        let field = self.ring.field();
        let y = inverse(field, x)
            .ok_or_else(|| AlgebraError::InvalidArgument("change of basis is singular".into()))?;
        let ring = &self.ring;
        let combine = |coeffs: &mut dyn Iterator<Item = (&F::Elem, &Polynomial<F>)>| {
            coeffs.fold(ring.zero(), |acc, (c, p)| ring.add(&acc, &ring.scale(p, c)))
        };
        let generators: Vec<Polynomial<F>> = (0..n)
            .map(|k| combine(&mut x[k].iter().zip(&self.generators)))
            .collect();
        let columns = self
            .columns
            .iter()
            .map(|col| {
                (0..n)
                    .map(|k| combine(&mut (0..n).map(|j| (&y[j][k], &col[j]))))
                    .collect()
            })
            .collect();
        Self::from_columns(self.ring.clone(), generators, columns)
    }

    /// Rank over the function field of `V(L)` for a proper linear ideal `L`:
    /// the pivot variables of `L`'s reduced basis are solved for and
    /// substituted, then fraction-free elimination runs on the result.
    pub fn rank_modulo_linear_ideal(&self, l: &Ideal<F>) -> Result<usize> {
        if !l.is_linear() {
            return Err(AlgebraError::NotLinear);
        }
        let ring = &self.ring;
        let mut images: Vec<Polynomial<F>> = (0..ring.nvars()).map(|i| ring.var(i)).collect();
        for g in l.groebner_basis().elements() {
            let g = ring.make_monic(g);
            let lm = g.leading_monomial().expect("nonzero");
            let pivot = lm.support().next().expect("linear");
            images[pivot] = ring.sub(&ring.var(pivot), &g);
        }
        let m: Vec<Vec<Polynomial<F>>> = (0..self.row_count())
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|e| ring.substitute(e, &images))
                    .collect()
            })
            .collect();
        bareiss_rank(ring, m)
    }

    /// One row per line, entries separated by commas.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for i in 0..self.row_count() {
            let row: Vec<String> = self.row(i).iter().map(|e| self.ring.format(e)).collect();
            out.push_str(&row.join(", "));
            out.push('\n');
        }
        out
    }
}

/// Parses the matrix text format; blank lines and `#` comments are skipped.
pub fn parse_matrix<F: Field>(ring: &PolyRing<F>, text: &str) -> Result<Vec<Vec<Polynomial<F>>>> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut row = Vec::new();
        let mut offset = 0;
        for cell in line.split(',') {
            let p = ring.parse(cell.trim()).map_err(|e| match e {
                AlgebraError::Parse { column, message } => AlgebraError::Parse {
                    column: offset + column + (cell.len() - cell.trim_start().len()),
                    message: format!("matrix line {}: {message}", lineno + 1),
                },
                other => other,
            })?;
            row.push(p);
            offset += cell.chars().count() + 1;
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Rank of a polynomial matrix over the fraction field, by Bareiss elimination.
fn bareiss_rank<F: Field>(ring: &PolyRing<F>, mut m: Vec<Vec<Polynomial<F>>>) -> Result<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut prev = ring.one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in rank + 1..rows {
            for j in c + 1..cols {
                let num = ring.sub(
                    &ring.mul(&m[rank][c], &m[i][j]),
                    &ring.mul(&m[i][c], &m[rank][j]),
                );
                m[i][j] = ring.divide_exact(&num, &prev).ok_or_else(|| {
                    AlgebraError::Inconsistent("fraction-free elimination lost exactness".into())
                })?;
            }
            m[i][c] = ring.zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
    }
    Ok(rank)
}

/// Columns generating all syzygies of `gens`, which must be nonzero and homogeneous.
pub fn syzygy_matrix<F: Field>(
    ring: &Arc<PolyRing<F>>,
    gens: &[Polynomial<F>],
) -> Result<PresentationMatrix<F>> {
    homogeneous_degrees(gens, ring)?;
    let m = gens.len();
    let lifted = lifted_groebner_basis(ring, gens);
    let basis = &lifted.elements;
    let t = &lifted.transform;
    let s = basis.len();
    let lms: Vec<_> = basis
        .iter()
        .map(|g| g.leading_monomial().expect("nonzero").clone())
        .collect();
    let field = ring.field();

    // pull a syzygy of the basis back to the generators
    let pull_back = |coeffs: &[Polynomial<F>]| -> Vec<Polynomial<F>> {
        (0..m)
            .map(|i| {
                coeffs.iter().zip(t).fold(ring.zero(), |acc, (a, row)| {
                    ring.add(&acc, &ring.mul(a, &row[i]))
                })
            })
            .collect()
    };

    let mut columns: Vec<Vec<Polynomial<F>>> = Vec::new();
    for i in 0..s {
        for j in i + 1..s {
            let lcm = lms[i].lcm(&lms[j]);
            // pair (i, j) follows from (i, k) and (k, j) when both have strictly smaller lcm
            let redundant = (0..s).any(|k| {
                k != i
                    && k != j
                    && lms[k].divides(&lcm)
                    && lms[i].lcm(&lms[k]) != lcm
                    && lms[j].lcm(&lms[k]) != lcm
            });
            if redundant {
                continue;
            }
            let ui = lms[i].quotient_of(&lcm).expect("lcm");
            let uj = lms[j].quotient_of(&lcm).expect("lcm");
            let ci = field
                .inv(basis[i].leading_coefficient().expect("nonzero"))
                .expect("nonzero");
            let cj = field
                .inv(basis[j].leading_coefficient().expect("nonzero"))
                .expect("nonzero");
            let sp = ring.sub(
                &ring.mul_term(&basis[i], &ci, &ui),
                &ring.mul_term(&basis[j], &cj, &uj),
            );
            let (q, r) = divide(ring, &sp, basis);
            if !r.is_zero() {
                return Err(AlgebraError::Inconsistent(
                    "S-polynomial did not reduce to zero".into(),
                ));
            }
            let mut coeffs: Vec<Polynomial<F>> = q.iter().map(|p| ring.neg(p)).collect();
            coeffs[i] = ring.add(&coeffs[i], &ring.term(ci, ui));
            coeffs[j] = ring.sub(&coeffs[j], &ring.term(cj, uj));
            columns.push(pull_back(&coeffs));
        }
    }
    // e_i - (expression of g_i through the basis, pulled back)
    for (i, g) in gens.iter().enumerate() {
        let (q, r) = divide(ring, g, basis);
        if !r.is_zero() {
            return Err(AlgebraError::Inconsistent(
                "generator not reduced by its basis".into(),
            ));
        }
        let mut col = pull_back(&q);
        for (k, e) in col.iter_mut().enumerate() {
            *e = ring.neg(e);
            if k == i {
                *e = ring.add(e, &ring.one());
            }
        }
        columns.push(col);
    }
    let mut seen = HashSet::new();
    columns.retain(|c| c.iter().any(|e| !e.is_zero()) && seen.insert(format!("{c:?}")));
    PresentationMatrix::from_columns(ring.clone(), gens.to_vec(), columns)
}

/// Removes redundant generators and syzygies: constant entries are pivoted
/// away (smallest row, then column), then every column lying in the
/// submodule spanned by earlier columns of no larger degree is dropped.
pub fn minimalize<F: Field>(a: &PresentationMatrix<F>) -> Result<PresentationMatrix<F>> {
    let ring = a.ring.clone();
    let field = ring.field().clone();
    let mut gens = a.generators.clone();
    let mut cols = a.columns.clone();
    loop {
        let pivot = (0..gens.len()).find_map(|i| {
            cols.iter()
                .position(|c| c[i].is_constant() && !c[i].is_zero())
                .map(|j| (i, j))
        });
        let Some((i, j)) = pivot else { break };
        let pc = cols.remove(j);
        let inv = field
            .inv(pc[i].leading_coefficient().expect("nonzero"))
            .expect("nonzero");
        for c in cols.iter_mut() {
            if c[i].is_zero() {
                continue;
            }
            let factor = ring.scale(&c[i], &inv);
            for (e, p) in c.iter_mut().zip(&pc) {
                *e = ring.sub(e, &ring.mul(&factor, p));
            }
        }
        for c in cols.iter_mut() {
            c.remove(i);
        }
        gens.remove(i);
    }
    let pruned = PresentationMatrix::from_columns(ring.clone(), gens, cols)?;

    let n = ring.nvars();
    let mut order: Vec<usize> = (0..pruned.column_count()).collect();
    order.sort_by_key(|&j| (pruned.column_degrees[j], j));
    let mut kept: Vec<usize> = Vec::new();
    let mut current: Option<(u32, SparseEchelon<F, (usize, Vec<u16>)>)> = None;
    let vector = |col: &[Polynomial<F>]| -> Vec<((usize, Vec<u16>), F::Elem)> {
        col.iter()
            .enumerate()
            .flat_map(|(i, e)| {
                e.terms()
                    .iter()
                    .map(move |(c, m)| ((i, m.exponents().to_vec()), c.clone()))
            })
            .collect()
    };
    for j in order {
        let d = pruned.column_degrees[j];
        if current.as_ref().map(|(cd, _)| *cd) != Some(d) {
            let mut span = SparseEchelon::new(field.clone());
            for &k in &kept {
                for mono in monomials_of_degree(n, d - pruned.column_degrees[k]) {
                    let shifted: Vec<Polynomial<F>> = pruned.columns[k]
                        .iter()
                        .map(|e| ring.mul_term(e, &field.one(), &mono))
                        .collect();
                    span.insert(vector(&shifted));
                }
            }
            current = Some((d, span));
        }
        let (_, span) = current.as_mut().expect("set above");
        if span.insert(vector(&pruned.columns[j])) {
            kept.push(j);
        }
    }
    kept.sort_unstable();
    Ok(PresentationMatrix {
        columns: kept.iter().map(|&j| pruned.columns[j].clone()).collect(),
        column_degrees: kept.iter().map(|&j| pruned.column_degrees[j]).collect(),
        ..pruned
    })
}

/// Minimal generators of a homogeneous ideal with a minimal presentation.
pub fn minimal_presentation<F: Field>(ideal: &Ideal<F>) -> Result<PresentationMatrix<F>> {
    let gens = ideal.minimal_generators()?;
    if gens.is_empty() {
        return Err(AlgebraError::ZeroIdeal);
    }
    minimalize(&syzygy_matrix(ideal.ring(), &gens)?)
}

/// True iff the minimal presentation of an equigenerated ideal has only linear entries.
pub fn is_linear_presentation<F: Field>(ideal: &Ideal<F>) -> Result<bool> {
    let degrees = ideal
        .generator_degrees()
        .ok_or_else(|| AlgebraError::NotHomogeneous(format!("{ideal}")))?;
    let mut distinct = degrees.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() > 1 {
        return Err(AlgebraError::MixedDegrees(distinct));
    }
    Ok(minimal_presentation(ideal)?.has_linear_entries())
}
