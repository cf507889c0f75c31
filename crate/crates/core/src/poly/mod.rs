//! Multivariate polynomials over a coefficient field: rings, term-sorted
//! polynomials, and the `x^2*y - 3*z + 1` text form.

pub mod monomial;
pub mod order;
pub mod parse;

use std::cmp::Ordering;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::Arc;

pub use monomial::{monomials_of_degree, Monomial};
pub use order::{OrderKind, TermOrder};

use crate::arith::Field;
use crate::error::{Error, Result};

static NEXT_RING_ID: AtomicU64 = AtomicU64::new(1);

/// A polynomial ring: coefficient field, named variables, and the term
/// order its polynomials are sorted under. Rings are handed around as
/// `Arc`s; every polynomial knows its ring.
#[derive(Debug)]
pub struct PolyRing<F: Field> {
    field: F,
    vars: Vec<String>,
    order: TermOrder,
    id: u64,
}

impl<F: Field> PolyRing<F> {
    pub fn new(field: F, vars: &[&str], order: TermOrder) -> Arc<Self> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        {
            let mut sorted = vars.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), vars.len(), "variable names must be distinct");
        }
        Arc::new(PolyRing {
            field,
            vars,
            order,
            id: NEXT_RING_ID.fetch_add(1, AtomicOrdering::Relaxed),
        })
    }

    /// Same field and variables under a different order. Polynomials move
    /// between the two rings via [`Polynomial::map_to_ring`].
    pub fn with_order(self: &Arc<Self>, order: TermOrder) -> Arc<Self> {
        if order == self.order {
            return Arc::clone(self);
        }
        Arc::new(PolyRing {
            field: self.field.clone(),
            vars: self.vars.clone(),
            order,
            id: NEXT_RING_ID.fetch_add(1, AtomicOrdering::Relaxed),
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn zero(self: &Arc<Self>) -> Polynomial<F> {
        Polynomial { ring: Arc::clone(self), terms: Vec::new() }
    }

    pub fn one(self: &Arc<Self>) -> Polynomial<F> {
        self.constant(self.field.one())
    }

    pub fn constant(self: &Arc<Self>, c: F::Elem) -> Polynomial<F> {
        if self.field.is_zero(&c) {
            return self.zero();
        }
        Polynomial {
            ring: Arc::clone(self),
            terms: vec![(Monomial::one(self.nvars()), c)],
        }
    }

    pub fn var(self: &Arc<Self>, index: usize) -> Polynomial<F> {
        Polynomial {
            ring: Arc::clone(self),
            terms: vec![(Monomial::var(index, self.nvars()), self.field.one())],
        }
    }

    pub fn monomial_poly(self: &Arc<Self>, m: Monomial) -> Polynomial<F> {
        Polynomial { ring: Arc::clone(self), terms: vec![(m, self.field.one())] }
    }

    /// Normalize an arbitrary term list: sort descending, merge duplicates,
    /// drop zeros.
    pub fn from_terms(self: &Arc<Self>, mut terms: Vec<(Monomial, F::Elem)>) -> Polynomial<F> {
        terms.sort_by(|a, b| self.order.compare(&b.0, &a.0));
        let mut out: Vec<(Monomial, F::Elem)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((pm, pc)) if *pm == m => {
                    *pc = self.field.add(pc, &c);
                    if self.field.is_zero(pc) {
                        out.pop();
                    }
                }
                _ => {
                    if !self.field.is_zero(&c) {
                        out.push((m, c));
                    }
                }
            }
        }
        Polynomial { ring: Arc::clone(self), terms: out }
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.vars[i].clone()),
                _ => parts.push(format!("{}^{}", self.vars[i], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl<F: Field> PartialEq for PolyRing<F> {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}
impl<F: Field> Eq for PolyRing<F> {}

/// A polynomial: a term list strictly sorted descending under its ring's
/// order, no zero coefficients, no duplicate monomials.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: Arc<PolyRing<F>>,
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ring.id == other.ring.id && self.terms == other.terms
    }
}
impl<F: Field> Eq for Polynomial<F> {}

impl<F: Field> Polynomial<F> {
    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Coefficient of the monomial 1.
    pub fn constant_term(&self) -> F::Elem {
        self.terms
            .iter()
            .find(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.ring.field.zero())
    }

    fn check_same_ring(&self, other: &Polynomial<F>) -> Result<()> {
        if self.ring.id == other.ring.id {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial<F>) -> Result<Polynomial<F>> {
        self.check_same_ring(other)?;
        let f = &self.ring.field;
        let ord = &self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ord.compare(ma, mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), cb.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = f.add(ca, cb);
                    if !f.is_zero(&c) {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend(other.terms[j..].iter().cloned());
        Ok(Polynomial { ring: Arc::clone(&self.ring), terms: out })
    }

    pub fn add(&self, other: &Polynomial<F>) -> Polynomial<F> {
        self.checked_add(other).expect("ring mismatch")
    }

    pub fn neg(&self) -> Polynomial<F> {
        let f = &self.ring.field;
        Polynomial {
            ring: Arc::clone(&self.ring),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(c))).collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial<F>) -> Polynomial<F> {
        self.add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Polynomial<F>) -> Result<Polynomial<F>> {
        self.check_same_ring(other)?;
        let mut products = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                products.push((ma.mul(mb), self.ring.field.mul(ca, cb)));
            }
        }
        Ok(self.ring.from_terms(products))
    }

    pub fn mul(&self, other: &Polynomial<F>) -> Polynomial<F> {
        self.checked_mul(other).expect("ring mismatch")
    }

    pub fn scalar_mul(&self, c: &F::Elem) -> Polynomial<F> {
        let f = &self.ring.field;
        if f.is_zero(c) {
            return self.ring.zero();
        }
        Polynomial {
            ring: Arc::clone(&self.ring),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), f.mul(a, c))).collect(),
        }
    }

    /// Multiply by a single term. Keeps sortedness: all four orders are
    /// multiplicative.
    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Polynomial<F> {
        let f = &self.ring.field;
        if f.is_zero(c) {
            return self.ring.zero();
        }
        Polynomial {
            ring: Arc::clone(&self.ring),
            terms: self.terms.iter().map(|(tm, tc)| (tm.mul(m), f.mul(tc, c))).collect(),
        }
    }

    /// The maximal term under the ring's order.
    pub fn leading_term(&self) -> Result<(&Monomial, &F::Elem)> {
        self.terms.first().map(|(m, c)| (m, c)).ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_monomial(&self) -> Result<&Monomial> {
        Ok(self.leading_term()?.0)
    }

    /// Scale so the leading coefficient is 1.
    pub fn monic(&self) -> Result<Polynomial<F>> {
        let (_, lc) = self.leading_term()?;
        let inv = self.ring.field.inv(lc)?;
        Ok(self.scalar_mul(&inv))
    }

    /// Maximum total degree of any term; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Minimum total degree of any term (the order of vanishing at the
    /// origin); `None` for the zero polynomial.
    pub fn val_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).min()
    }

    /// The homogeneous component of lowest total degree.
    pub fn initial_form(&self) -> Result<Polynomial<F>> {
        let v = self.val_degree().ok_or(Error::ZeroPolynomial)?;
        Ok(Polynomial {
            ring: Arc::clone(&self.ring),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == v)
                .cloned()
                .collect(),
        })
    }

    /// Ecart: degree spread between the polynomial and its leading term.
    pub fn ecart(&self) -> Result<u32> {
        let lt_deg = self.leading_monomial()?.degree();
        Ok(self.degree().unwrap() - lt_deg)
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => {
                let d = m0.degree();
                self.terms.iter().all(|(m, _)| m.degree() == d)
            }
        }
    }

    /// Re-sort into a ring with the same field and variables but possibly a
    /// different order.
    pub fn map_to_ring(&self, target: &Arc<PolyRing<F>>) -> Polynomial<F> {
        assert_eq!(self.ring.vars, target.vars, "rings have different variables");
        assert_eq!(self.ring.field, target.field, "rings have different fields");
        if self.ring.id == target.id {
            return self.clone();
        }
        target.from_terms(self.terms.clone())
    }

    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let f = &self.ring.field;
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let s = f.format(c);
            let (neg, abs) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&abs);
            } else if abs == "1" {
                out.push_str(&self.ring.format_monomial(m));
            } else {
                out.push_str(&abs);
                out.push('*');
                out.push_str(&self.ring.format_monomial(m));
            }
        }
        out
    }
}

impl<F: Field> std::fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl<F: Field> std::fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_text())
    }
}
