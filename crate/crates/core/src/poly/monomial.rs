//! Exponent vectors with cached total degree.

use crate::error::{Error, Result};

/// A monomial in a fixed number of variables. The exponent vector length is
/// fixed per ring; the total degree is cached.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Box<[u32]>,
    deg: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars].into_boxed_slice(), deg: 0 }
    }

    pub fn var(index: usize, nvars: usize) -> Self {
        let mut exps = vec![0u32; nvars];
        exps[index] = 1;
        Monomial { exps: exps.into_boxed_slice(), deg: 1 }
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        let deg = exps.iter().fold(0u32, |a, e| {
            a.checked_add(*e).expect("total degree overflows u32")
        });
        Monomial { exps: exps.to_vec().into_boxed_slice(), deg }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn try_mul(&self, other: &Monomial) -> Result<Monomial> {
        debug_assert_eq!(self.nvars(), other.nvars());
        let mut exps = vec![0u32; self.nvars()];
        for (i, e) in exps.iter_mut().enumerate() {
            *e = self.exps[i]
                .checked_add(other.exps[i])
                .ok_or(Error::ExponentOverflow)?;
        }
        let deg = self.deg.checked_add(other.deg).ok_or(Error::ExponentOverflow)?;
        Ok(Monomial { exps: exps.into_boxed_slice(), deg })
    }

    /// Product, panicking on exponent overflow. Desk-scale computations stay
    /// far below u32 degrees; the check is against bugs, not usage.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.try_mul(other).expect("exponent overflow")
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg
            && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn divide_into(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let exps: Vec<u32> = other
            .exps
            .iter()
            .zip(self.exps.iter())
            .map(|(b, a)| b - a)
            .collect();
        let deg = other.deg - self.deg;
        Some(Monomial { exps: exps.into_boxed_slice(), deg })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Vec<u32> = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| *a.max(b))
            .collect();
        Monomial::from_exponents(&exps)
    }

    pub fn gcd_is_one(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| i)
    }
}

impl std::fmt::Debug for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "m{:?}", self.exps)
    }
}

/// Enumerate all monomials of total degree `deg` in `nvars` variables, in a
/// fixed deterministic order. Brute-force oracles and graded-piece counts
/// both rely on this.
pub fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    fill(&mut out, &mut current, 0, deg);
    out
}

fn fill(out: &mut Vec<Monomial>, current: &mut Vec<u32>, pos: usize, remaining: u32) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(Monomial::from_exponents(current));
        return;
    }
    for e in (0..=remaining).rev() {
        current[pos] = e;
        fill(out, current, pos + 1, remaining - e);
        current[pos] = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_div_lcm() {
        let a = Monomial::from_exponents(&[2, 1, 0]);
        let b = Monomial::from_exponents(&[1, 0, 3]);
        assert_eq!(a.mul(&b).exponents(), &[3, 1, 3]);
        assert_eq!(a.mul(&b).degree(), 7);
        assert_eq!(a.lcm(&b).exponents(), &[2, 1, 3]);
        assert!(!a.divides(&b));
        assert!(a.divides(&a.mul(&b)));
        assert_eq!(b.divide_into(&a.mul(&b)).unwrap(), a);
        assert!(a.gcd_is_one(&Monomial::from_exponents(&[0, 0, 5])));
    }

    #[test]
    fn degree_enumeration_counts() {
        // C(deg + nvars - 1, nvars - 1) monomials of each degree
        assert_eq!(monomials_of_degree(2, 3).len(), 4);
        assert_eq!(monomials_of_degree(3, 4).len(), 15);
        assert_eq!(monomials_of_degree(1, 9).len(), 1);
    }
}
