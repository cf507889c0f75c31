//! Monomial ideals: minimal generators, membership, colon by a monomial,
//! and combinatorial (Krull) dimension via independent variable sets.

use crate::poly::{monomials_of_degree, Monomial};

/// A monomial ideal given by its minimal generators, kept sorted in a
/// canonical (degree, exponent) order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(nvars: usize, gens: Vec<Monomial>) -> Self {
        let mut ideal = MonomialIdeal { nvars, gens };
        ideal.minimalize();
        ideal
    }

    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal { nvars, gens: Vec::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.is_one())
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    fn minimalize(&mut self) {
        let mut kept: Vec<Monomial> = Vec::with_capacity(self.gens.len());
        let mut gens = std::mem::take(&mut self.gens);
        gens.sort_by_key(|m| (m.degree(), m.exponents().to_vec()));
        gens.dedup();
        for g in gens {
            if !kept.iter().any(|k| k.divides(&g)) {
                kept.push(g);
            }
        }
        self.gens = kept;
    }

    /// The colon ideal (J : m), again monomial.
    pub fn colon_monomial(&self, m: &Monomial) -> MonomialIdeal {
        let quotients = self
            .gens
            .iter()
            .map(|g| {
                let exps: Vec<u32> = g
                    .exponents()
                    .iter()
                    .zip(m.exponents())
                    .map(|(a, b)| a.saturating_sub(*b))
                    .collect();
                Monomial::from_exponents(&exps)
            })
            .collect();
        MonomialIdeal::new(self.nvars, quotients)
    }

    /// Sum with extra generators.
    pub fn plus(&self, extra: &[Monomial]) -> MonomialIdeal {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        MonomialIdeal::new(self.nvars, gens)
    }

    /// Standard monomials of total degree `deg`: monomials outside the ideal.
    pub fn standard_monomials(&self, deg: u32) -> Vec<Monomial> {
        monomials_of_degree(self.nvars, deg)
            .into_iter()
            .filter(|m| !self.contains(m))
            .collect()
    }

    /// Krull dimension of S/J: the largest cardinality of a set U of
    /// variables such that no generator is supported inside U. Errors on the
    /// unit ideal.
    pub fn quotient_dimension(&self) -> crate::error::Result<usize> {
        if self.is_unit() {
            return Err(crate::error::Error::UnitIdeal);
        }
        let n = self.nvars;
        assert!(n <= 63, "dimension search uses bitmasks");
        let supports: Vec<u64> = self
            .gens
            .iter()
            .map(|g| g.support().fold(0u64, |acc, i| acc | (1 << i)))
            .collect();
        let mut best = 0usize;
        for mask in 0u64..(1 << n) {
            let size = mask.count_ones() as usize;
            if size <= best {
                continue;
            }
            // U independent iff no generator's support is a subset of U
            if supports.iter().all(|s| s & !mask != 0) {
                best = size;
            }
        }
        Ok(best)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn minimal_generators() {
        let j = MonomialIdeal::new(2, vec![m(&[2, 0]), m(&[2, 1]), m(&[1, 1])]);
        assert_eq!(j.gens(), &[m(&[1, 1]), m(&[2, 0])]);
        assert!(j.contains(&m(&[3, 4])));
        assert!(!j.contains(&m(&[1, 0])));
        assert!(!j.contains(&m(&[0, 7])));
    }

    #[test]
    fn colon_by_monomial() {
        // ((x^2, xy) : y) = (x)
        let j = MonomialIdeal::new(2, vec![m(&[2, 0]), m(&[1, 1])]);
        assert_eq!(j.colon_monomial(&m(&[0, 1])).gens(), &[m(&[1, 0])]);
        // ((x^2, xy) : x) = (x, y)
        assert_eq!(
            j.colon_monomial(&m(&[1, 0])).gens(),
            &[m(&[0, 1]), m(&[1, 0])]
        );
    }

    #[test]
    fn quotient_dimensions() {
        // (x^2, xy) in k[x,y]: dimension 1 (the y-axis survives)
        let j = MonomialIdeal::new(2, vec![m(&[2, 0]), m(&[1, 1])]);
        assert_eq!(j.quotient_dimension().unwrap(), 1);
        // zero ideal: dimension n
        assert_eq!(MonomialIdeal::zero(3).quotient_dimension().unwrap(), 3);
        // (x, y): dimension 0
        let max = MonomialIdeal::new(2, vec![m(&[1, 0]), m(&[0, 1])]);
        assert_eq!(max.quotient_dimension().unwrap(), 0);
        // unit ideal: error
        let unit = MonomialIdeal::new(2, vec![m(&[0, 0])]);
        assert!(unit.quotient_dimension().is_err());
    }

    #[test]
    fn standard_monomial_counts() {
        let j = MonomialIdeal::new(2, vec![m(&[2, 0]), m(&[1, 1])]);
        let counts: Vec<usize> = (0..6).map(|d| j.standard_monomials(d).len()).collect();
        assert_eq!(counts, vec![1, 2, 1, 1, 1, 1]);
    }
}
