//! Brute-force Macaulay-matrix oracles: truncated linear-algebra spans of
//! an ideal used to cross-check Groebner/standard-basis computations. These
//! deliberately share nothing with the division-based code paths.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::arith::Field;
use crate::poly::{monomials_of_degree, Monomial, PolyRing, Polynomial};

/// Row-echelon span of all monomial multiples m*g with deg(m*g) <= max_deg.
/// Columns are monomials ordered by ascending total degree, so each row's
/// pivot sits at its lowest-degree monomial and pivot histograms count
/// initial-form dimensions.
pub struct MacaulaySpan<F: Field> {
    ring: Arc<PolyRing<F>>,
    max_deg: u32,
    columns: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    rows: Vec<Vec<F::Elem>>,
    pivot_of_row: Vec<usize>,
}

impl<F: Field> MacaulaySpan<F> {
    pub fn new(gens: &[Polynomial<F>], max_deg: u32) -> Self {
        let ring = Arc::clone(gens.first().expect("at least one generator").ring());
        let mut columns = Vec::new();
        for d in 0..=max_deg {
            columns.extend(monomials_of_degree(ring.nvars(), d));
        }
        let index: HashMap<Monomial, usize> = columns
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let mut span = MacaulaySpan {
            ring,
            max_deg,
            columns,
            index,
            rows: Vec::new(),
            pivot_of_row: Vec::new(),
        };
        for g in gens {
            if g.is_zero() {
                continue;
            }
            let gdeg = g.degree().unwrap();
            for d in 0..=(max_deg.saturating_sub(gdeg)) {
                for m in monomials_of_degree(span.ring.nvars(), d) {
                    let prod = g.mul_term(&m, &span.ring.field().one());
                    let vec = span.vector_of(&prod);
                    span.insert(vec);
                }
            }
        }
        span
    }

    fn vector_of(&self, f: &Polynomial<F>) -> Vec<F::Elem> {
        let field = self.ring.field();
        let mut v = vec![field.zero(); self.columns.len()];
        for (m, c) in f.terms() {
            let idx = *self
                .index
                .get(m)
                .expect("polynomial degree exceeds the span bound");
            v[idx] = c.clone();
        }
        v
    }

    /// Reduce against the echelon rows; returns the residual vector.
    fn reduce(&self, mut v: Vec<F::Elem>) -> Vec<F::Elem> {
        let field = self.ring.field();
        for (row, &piv) in self.rows.iter().zip(&self.pivot_of_row) {
            if field.is_zero(&v[piv]) {
                continue;
            }
            let factor = v[piv].clone();
            for (slot, r) in v.iter_mut().zip(row) {
                *slot = field.sub(slot, &field.mul(&factor, r));
            }
        }
        v
    }

    fn insert(&mut self, v: Vec<F::Elem>) {
        let field = self.ring.field().clone();
        let v = self.reduce(v);
        let Some(piv) = v.iter().position(|c| !field.is_zero(c)) else {
            return;
        };
        let inv = field.inv(&v[piv]).unwrap();
        let row: Vec<F::Elem> = v.iter().map(|c| field.mul(c, &inv)).collect();
        self.rows.push(row);
        self.pivot_of_row.push(piv);
    }

    /// Membership of f in the truncated span - a certificate that f lies in
    /// the ideal (the converse direction can need a larger bound).
    pub fn contains(&self, f: &Polynomial<F>) -> bool {
        if f.is_zero() {
            return true;
        }
        let field = self.ring.field();
        self.reduce(self.vector_of(f)).iter().all(|c| field.is_zero(c))
    }

    /// Local membership up to a unit: does some u = 1 + (higher terms) make
    /// u*f land in the span? Equivalently f lies in span + f*m*(monomials),
    /// which is one more echelon pass.
    pub fn contains_unit_multiple(&self, f: &Polynomial<F>) -> bool {
        if f.is_zero() {
            return true;
        }
        let field = self.ring.field().clone();
        let mut extended = MacaulaySpan {
            ring: Arc::clone(&self.ring),
            max_deg: self.max_deg,
            columns: self.columns.clone(),
            index: self.index.clone(),
            rows: self.rows.clone(),
            pivot_of_row: self.pivot_of_row.clone(),
        };
        let fdeg = f.degree().unwrap();
        for d in 1..=(self.max_deg.saturating_sub(fdeg)) {
            for m in monomials_of_degree(self.ring.nvars(), d) {
                let prod = f.mul_term(&m, &field.one());
                let vec = extended.vector_of(&prod);
                extended.insert(vec);
            }
        }
        extended.contains(f)
    }

    /// Histogram of pivot degrees: for each total degree d, the dimension of
    /// the space of degree-d initial forms of span elements.
    pub fn initial_form_dims(&self, max_d: u32) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for &piv in &self.pivot_of_row {
            let d = self.columns[piv].degree();
            if d <= max_d {
                *out.entry(d).or_insert(0) += 1;
            }
        }
        out
    }
}

/// Initial-form dimension table of the ideal generated by `gens`, with the
/// truncation bound raised until the table stabilizes twice in a row.
pub fn initial_form_dims_stabilized<F: Field>(
    gens: &[Polynomial<F>],
    max_d: u32,
) -> BTreeMap<u32, usize> {
    let start = max_d
        + gens
            .iter()
            .filter_map(|g| g.degree())
            .max()
            .unwrap_or(0);
    let mut prev: Option<BTreeMap<u32, usize>> = None;
    let mut n = start;
    loop {
        let table = MacaulaySpan::new(gens, n).initial_form_dims(max_d);
        if prev.as_ref() == Some(&table) {
            return table;
        }
        prev = Some(table);
        n += 1;
        assert!(n < start + 40, "initial-form table failed to stabilize");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::PrimeField;
    use crate::poly::parse::parse_polynomial;
    use crate::poly::TermOrder;

    #[test]
    fn span_membership() {
        let r = PolyRing::new(
            PrimeField::new(32003).unwrap(),
            &["x", "y"],
            TermOrder::grevlex(),
        );
        let p = |s: &str| parse_polynomial(&r, s).unwrap();
        let span = MacaulaySpan::new(&[p("x^2"), p("x*y")], 6);
        assert!(span.contains(&p("x^3 + x^2*y")));
        assert!(!span.contains(&p("x + y")));
        assert!(!span.contains(&p("y^4")));
        assert!(span.contains(&p("0")));
    }

    #[test]
    fn pivot_histogram_of_monomial_ideal() {
        let r = PolyRing::new(
            PrimeField::new(32003).unwrap(),
            &["x", "y"],
            TermOrder::grevlex(),
        );
        let p = |s: &str| parse_polynomial(&r, s).unwrap();
        // in degrees 0..4, (x^2, xy) contains 0,0,2,3,4 monomials
        let dims = initial_form_dims_stabilized(&[p("x^2"), p("x*y")], 4);
        let got: Vec<usize> = (0..=4).map(|d| dims.get(&d).copied().unwrap_or(0)).collect();
        assert_eq!(got, vec![0, 0, 2, 3, 4]);
    }
}
