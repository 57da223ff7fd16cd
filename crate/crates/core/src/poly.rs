//! Multivariate polynomials over a graded ring `k[x_0, ..., x_n]`.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::monomial::{Monomial, MonomialOrder};

/// A polynomial as a list of terms, strictly decreasing under the order of
/// the ring it was built in. Zero is the empty list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial<F: Field> {
    terms: Vec<(F::Elem, Monomial)>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(F::Elem, Monomial)] {
        &self.terms
    }

    /// Wraps terms that are already sorted, combined, and nonzero.
    pub(crate) fn from_sorted_terms(terms: Vec<(F::Elem, Monomial)>) -> Self {
        Self { terms }
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(F::Elem, Monomial)> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&(F::Elem, Monomial)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(_, m)| m)
    }

    pub fn leading_coefficient(&self) -> Option<&F::Elem> {
        self.terms.first().map(|(c, _)| c)
    }

    /// Largest total degree of a term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(_, m)| m.degree()).max()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(_, m)| m.is_one())
    }

    pub fn homogeneity(&self) -> Homogeneity {
        match self.terms.first() {
            None => Homogeneity::Zero,
            Some((_, lead)) => {
                let d = lead.degree();
                if self.terms.iter().all(|(_, m)| m.degree() == d) {
                    Homogeneity::Homogeneous(d)
                } else {
                    Homogeneity::Inhomogeneous
                }
            }
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        !matches!(self.homogeneity(), Homogeneity::Inhomogeneous)
    }

    /// Variables appearing in some term.
    pub fn variables(&self) -> Vec<usize> {
        let mut seen: Vec<usize> = self
            .terms
            .iter()
            .flat_map(|(_, m)| m.support().collect::<Vec<_>>())
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        seen.sort_unstable();
        seen
    }
}

/// Result of a homogeneity query. The zero polynomial is homogeneous of
/// every degree and is reported separately.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Homogeneous(u32),
    Inhomogeneous,
}

impl Homogeneity {
    pub fn is_homogeneous(&self) -> bool {
        !matches!(self, Homogeneity::Inhomogeneous)
    }

    pub fn degree(&self) -> Option<u32> {
        match self {
            Homogeneity::Homogeneous(d) => Some(*d),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Subtract,
    Multiply,
}

/// Polynomial ring over `field` with named variables and a default monomial order.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyRing<F: Field> {
    field: F,
    names: Vec<String>,
    order: MonomialOrder,
}

impl<F: Field> PolyRing<F> {
    pub fn new(field: F, names: &[&str]) -> Result<Self> {
        Self::with_order(
            field,
            names.iter().map(|s| s.to_string()).collect(),
            MonomialOrder::GrevLex,
        )
    }

    pub fn with_order(field: F, names: Vec<String>, order: MonomialOrder) -> Result<Self> {
        if names.is_empty() {
            return Err(AlgebraError::InvalidRing(
                "need at least one variable".into(),
            ));
        }
        let mut seen = HashSet::new();
        for name in &names {
            let valid = name
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(AlgebraError::InvalidRing(format!(
                    "bad variable name `{name}`"
                )));
            }
            if !seen.insert(name.as_str()) {
                return Err(AlgebraError::InvalidRing(format!(
                    "duplicate variable `{name}`"
                )));
            }
        }
        if let MonomialOrder::Elimination { block } = order {
            if block > names.len() {
                return Err(AlgebraError::InvalidRing(format!(
                    "elimination block {block} exceeds {} variables",
                    names.len()
                )));
            }
        }
        Ok(Self {
            field,
            names,
            order,
        })
    }

    /// Same field and variables under another order.
    pub fn reordered(&self, order: MonomialOrder) -> Result<Self> {
        Self::with_order(self.field.clone(), self.names.clone(), order)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.compare(a, b)
    }

    pub fn zero(&self) -> Polynomial<F> {
        Polynomial::zero()
    }

    pub fn one(&self) -> Polynomial<F> {
        self.constant(self.field.one())
    }

    pub fn constant(&self, c: F::Elem) -> Polynomial<F> {
        self.term(c, Monomial::one(self.nvars()))
    }

    pub fn var(&self, index: usize) -> Polynomial<F> {
        self.term(self.field.one(), Monomial::var(self.nvars(), index))
    }

    pub fn monomial(&self, m: Monomial) -> Polynomial<F> {
        self.term(self.field.one(), m)
    }

    pub fn term(&self, c: F::Elem, m: Monomial) -> Polynomial<F> {
        if self.field.is_zero(&c) {
            Polynomial::zero()
        } else {
            Polynomial {
                terms: vec![(c, m)],
            }
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(
        &self,
        terms: impl IntoIterator<Item = (F::Elem, Monomial)>,
    ) -> Polynomial<F> {
        let mut terms: Vec<_> = terms.into_iter().collect();
        terms.sort_by(|a, b| self.cmp(&b.1, &a.1));
        let mut out: Vec<(F::Elem, Monomial)> = Vec::with_capacity(terms.len());
        for (c, m) in terms {
            match out.last_mut() {
                Some((acc, last)) if *last == m => *acc = self.field.add(acc, &c),
                _ => out.push((c, m)),
            }
        }
        out.retain(|(c, _)| !self.field.is_zero(c));
        Polynomial { terms: out }
    }

    /// Checks that every monomial has this ring's variable count.
    pub fn check(&self, f: &Polynomial<F>) -> Result<()> {
        match f.terms.iter().find(|(_, m)| m.nvars() != self.nvars()) {
            Some((_, m)) => Err(AlgebraError::LengthMismatch {
                expected: self.nvars(),
                found: m.nvars(),
            }),
            None => Ok(()),
        }
    }

    pub fn add(&self, f: &Polynomial<F>, g: &Polynomial<F>) -> Polynomial<F> {
        self.merge(f, g, |c| c.clone())
    }

    pub fn sub(&self, f: &Polynomial<F>, g: &Polynomial<F>) -> Polynomial<F> {
        self.merge(f, g, |c| self.field.neg(c))
    }

    fn merge(
        &self,
        f: &Polynomial<F>,
        g: &Polynomial<F>,
        map_g: impl Fn(&F::Elem) -> F::Elem,
    ) -> Polynomial<F> {
        let mut out = Vec::with_capacity(f.terms.len() + g.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < f.terms.len() && j < g.terms.len() {
            let (cf, mf) = &f.terms[i];
            let (cg, mg) = &g.terms[j];
            match self.cmp(mf, mg) {
                Ordering::Greater => {
                    out.push((cf.clone(), mf.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((map_g(cg), mg.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = self.field.add(cf, &map_g(cg));
                    if !self.field.is_zero(&c) {
                        out.push((c, mf.clone()));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(f.terms[i..].iter().cloned());
        out.extend(g.terms[j..].iter().map(|(c, m)| (map_g(c), m.clone())));
        Polynomial { terms: out }
    }

    pub fn neg(&self, f: &Polynomial<F>) -> Polynomial<F> {
        Polynomial {
            terms: f
                .terms
                .iter()
                .map(|(c, m)| (self.field.neg(c), m.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, f: &Polynomial<F>, c: &F::Elem) -> Polynomial<F> {
        if self.field.is_zero(c) {
            return Polynomial::zero();
        }
        Polynomial {
            terms: f
                .terms
                .iter()
                .map(|(a, m)| (self.field.mul(a, c), m.clone()))
                .collect(),
        }
    }

    /// `c * m * f`; the order is multiplicative so the result stays sorted.
    pub fn mul_term(&self, f: &Polynomial<F>, c: &F::Elem, m: &Monomial) -> Polynomial<F> {
        if self.field.is_zero(c) {
            return Polynomial::zero();
        }
        Polynomial {
            terms: f
                .terms
                .iter()
                .map(|(a, n)| (self.field.mul(a, c), n.mul(m)))
                .collect(),
        }
    }

    /// `f - c * m * g`
    pub fn sub_mul_term(
        &self,
        f: &Polynomial<F>,
        c: &F::Elem,
        m: &Monomial,
        g: &Polynomial<F>,
    ) -> Polynomial<F> {
        let mut out = Vec::with_capacity(f.terms.len() + g.terms.len());
        let mut i = 0;
        let mut gi = g.terms.iter().map(|(a, n)| (a, n.mul(m))).peekable();
        while i < f.terms.len() {
            let Some((cg, mg)) = gi.peek() else { break };
            let (cf, mf) = &f.terms[i];
            match self.cmp(mf, mg) {
                Ordering::Greater => {
                    out.push((cf.clone(), mf.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((self.field.neg(&self.field.mul(cg, c)), mg.clone()));
                    gi.next();
                }
                Ordering::Equal => {
                    let v = self.field.sub(cf, &self.field.mul(cg, c));
                    if !self.field.is_zero(&v) {
                        out.push((v, mf.clone()));
                    }
                    i += 1;
                    gi.next();
                }
            }
        }
        out.extend(f.terms[i..].iter().cloned());
        out.extend(gi.map(|(a, n)| (self.field.neg(&self.field.mul(a, c)), n)));
        Polynomial { terms: out }
    }

    pub fn mul(&self, f: &Polynomial<F>, g: &Polynomial<F>) -> Polynomial<F> {
        let (small, large) = if f.len() <= g.len() { (f, g) } else { (g, f) };
        let mut acc = Polynomial::zero();
        for (c, m) in &small.terms {
            acc = self.add(&acc, &self.mul_term(large, c, m));
        }
        acc
    }

    pub fn pow(&self, f: &Polynomial<F>, e: u32) -> Polynomial<F> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, f);
        }
        acc
    }

    /// Ring operation with operand validation.
    pub fn arith(
        &self,
        op: ArithOp,
        f: &Polynomial<F>,
        g: &Polynomial<F>,
    ) -> Result<Polynomial<F>> {
        self.check(f)?;
        self.check(g)?;
        Ok(match op {
            ArithOp::Add => self.add(f, g),
            ArithOp::Subtract => self.sub(f, g),
            ArithOp::Multiply => self.mul(f, g),
        })
    }

    pub fn evaluate(&self, f: &Polynomial<F>, point: &[F::Elem]) -> Result<F::Elem> {
        if point.len() != self.nvars() {
            return Err(AlgebraError::LengthMismatch {
                expected: self.nvars(),
                found: point.len(),
            });
        }
        let field = &self.field;
        let mut acc = field.zero();
        for (c, m) in &f.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    v = field.mul(&v, &field.pow(x, e as u64));
                }
            }
            acc = field.add(&acc, &v);
        }
        Ok(acc)
    }

    /// Replaces `x_i` by `images[i]`.
    pub fn substitute(&self, f: &Polynomial<F>, images: &[Polynomial<F>]) -> Polynomial<F> {
        debug_assert_eq!(images.len(), self.nvars());
        let mut acc = Polynomial::zero();
        for (c, m) in &f.terms {
            let mut v = self.constant(c.clone());
            for (img, &e) in images.iter().zip(m.exponents()) {
                if e > 0 {
                    v = self.mul(&v, &self.pow(img, e as u32));
                }
            }
            acc = self.add(&acc, &v);
        }
        acc
    }

    /// Scales `f` into the field's canonical form: monic over `F_p`,
    /// content-free with positive leading coefficient over `QQ`.
    pub fn normalize(&self, f: &Polynomial<F>) -> Polynomial<F> {
        if f.is_zero() {
            return f.clone();
        }
        let coeffs: Vec<&F::Elem> = f.terms.iter().map(|(c, _)| c).collect();
        let s = self.field.normalizer(&coeffs);
        self.scale(f, &s)
    }

    pub fn make_monic(&self, f: &Polynomial<F>) -> Polynomial<F> {
        match f.leading_coefficient() {
            Some(c) if !self.field.is_one(c) => {
                self.scale(f, &self.field.inv(c).expect("nonzero leading coefficient"))
            }
            _ => f.clone(),
        }
    }

    /// Multivariate division by a single polynomial; `Some(q)` iff `f = q * g`.
    pub fn divide_exact(&self, f: &Polynomial<F>, g: &Polynomial<F>) -> Option<Polynomial<F>> {
        let (lc, lm) = g.leading_term()?;
        let lc_inv = self.field.inv(lc)?;
        let mut rest = f.clone();
        let mut quotient = Vec::new();
        while let Some((c, m)) = rest.leading_term() {
            let qm = lm.quotient_of(m)?;
            let qc = self.field.mul(c, &lc_inv);
            rest = self.sub_mul_term(&rest, &qc, &qm, g);
            quotient.push((qc, qm));
        }
        Some(Polynomial { terms: quotient })
    }

    /// Re-expresses a polynomial of another ring through a monomial map.
    pub fn map_from(
        &self,
        f: &Polynomial<F>,
        map: impl Fn(&Monomial) -> Monomial,
    ) -> Polynomial<F> {
        self.from_terms(f.terms.iter().map(|(c, m)| (c.clone(), map(m))))
    }

    /// Re-sorts a polynomial from a ring with the same variables.
    pub fn convert(&self, f: &Polynomial<F>) -> Polynomial<F> {
        self.map_from(f, |m| m.clone())
    }

    pub fn format(&self, f: &Polynomial<F>) -> String {
        crate::parse::format_polynomial(self, f)
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial<F>> {
        crate::parse::parse_polynomial(self, text)
    }
}
