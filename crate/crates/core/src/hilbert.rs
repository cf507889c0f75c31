//! Integer Hilbert-series arithmetic: Laurent numerators over `BigInt`,
//! the pivot recursion for monomial ideals, series reduction to
//! Q(t)/(1-t)^d, and exact Hilbert function / polynomial evaluation.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::binomial;
use crate::monomial_ideal::MonomialIdeal;

/// A Laurent polynomial over the integers: `sum coeffs[k] * t^(lo+k)`.
/// Degree shifts in graded modules make negative exponents routine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntLaurent {
    lo: i64,
    coeffs: Vec<BigInt>,
}

impl IntLaurent {
    pub fn zero() -> Self {
        IntLaurent { lo: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntLaurent { lo: 0, coeffs: vec![BigInt::one()] }
    }

    pub fn monomial(deg: i64) -> Self {
        IntLaurent { lo: deg, coeffs: vec![BigInt::one()] }
    }

    pub fn from_coeffs(lo: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = IntLaurent { lo, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
        let leading_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if leading_zeros > 0 {
            self.coeffs.drain(..leading_zeros);
            self.lo += leading_zeros as i64;
        }
        if self.coeffs.is_empty() {
            self.lo = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lo_degree(&self) -> i64 {
        self.lo
    }

    pub fn hi_degree(&self) -> i64 {
        self.lo + self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, deg: i64) -> BigInt {
        if deg < self.lo {
            return BigInt::zero();
        }
        self.coeffs
            .get((deg - self.lo) as usize)
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, other: &IntLaurent) -> IntLaurent {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi_degree().max(other.hi_degree());
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.lo - lo) as usize + k] += c;
        }
        for (k, c) in other.coeffs.iter().enumerate() {
            coeffs[(other.lo - lo) as usize + k] += c;
        }
        IntLaurent::from_coeffs(lo, coeffs)
    }

    pub fn neg(&self) -> IntLaurent {
        IntLaurent {
            lo: self.lo,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &IntLaurent) -> IntLaurent {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &IntLaurent) -> IntLaurent {
        if self.is_zero() || other.is_zero() {
            return IntLaurent::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntLaurent::from_coeffs(self.lo + other.lo, coeffs)
    }

    pub fn shifted(&self, by: i64) -> IntLaurent {
        if self.is_zero() {
            return IntLaurent::zero();
        }
        IntLaurent { lo: self.lo + by, coeffs: self.coeffs.clone() }
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Exact quotient by (1 - t), or `None` when 1 is not a root.
    pub fn divide_by_one_minus_t(&self) -> Option<IntLaurent> {
        if self.is_zero() {
            return Some(IntLaurent::zero());
        }
        if !self.eval_at_one().is_zero() {
            return None;
        }
        // long division: (sum c_k t^k) = (1 - t) * (sum q_k t^k) with
        // q_k = c_k + q_{k-1}
        let mut q = Vec::with_capacity(self.coeffs.len());
        let mut carry = BigInt::zero();
        for c in &self.coeffs {
            carry += c;
            q.push(carry.clone());
        }
        debug_assert!(q.last().map(|c| c.is_zero()).unwrap_or(true));
        q.pop();
        Some(IntLaurent::from_coeffs(self.lo, q))
    }

    /// Coefficients as (degree, value) pairs, low to high.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.lo + k as i64, c))
    }
}

/// Numerator N(t) with `sum_j dim_k (S/J)_j t^j = N(t)/(1-t)^n`, computed by
/// the colon-pivot recursion on the minimal generators.
pub fn monomial_quotient_numerator(j: &MonomialIdeal) -> IntLaurent {
    let gens = j.gens();
    match gens.len() {
        0 => IntLaurent::one(),
        _ => {
            let pivot = gens.last().unwrap().clone();
            let rest = MonomialIdeal::new(j.nvars(), gens[..gens.len() - 1].to_vec());
            let colon = rest.colon_monomial(&pivot);
            // N(J) = N(rest) - t^{deg pivot} * N(rest : pivot)
            let n_rest = monomial_quotient_numerator(&rest);
            let n_colon = monomial_quotient_numerator(&colon);
            n_rest.sub(&n_colon.shifted(pivot.degree() as i64))
        }
    }
}

/// The Hilbert series N(t)/(1-t)^nvars of a graded ring or module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    nvars: usize,
    numerator: IntLaurent,
}

impl HilbertSeries {
    pub fn new(nvars: usize, numerator: IntLaurent) -> Self {
        HilbertSeries { nvars, numerator }
    }

    pub fn of_monomial_quotient(j: &MonomialIdeal) -> Self {
        HilbertSeries { nvars: j.nvars(), numerator: monomial_quotient_numerator(j) }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn numerator(&self) -> &IntLaurent {
        &self.numerator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Reduce to Q(t)/(1-t)^d with Q(1) != 0. Returns (Q, d). The zero
    /// series reduces to (0, None).
    pub fn reduced(&self) -> (IntLaurent, Option<usize>) {
        if self.numerator.is_zero() {
            return (IntLaurent::zero(), None);
        }
        let mut q = self.numerator.clone();
        let mut d = self.nvars;
        while d > 0 {
            match q.divide_by_one_minus_t() {
                Some(next) => {
                    q = next;
                    d -= 1;
                }
                None => break,
            }
        }
        debug_assert!(d == 0 || !q.eval_at_one().is_zero());
        (q, Some(d))
    }

    /// Krull dimension read off the series; `None` for the zero module.
    pub fn dimension(&self) -> Option<usize> {
        self.reduced().1
    }

    /// Hilbert function value at degree `j`, exact. Numerator terms above
    /// degree `j` contribute nothing: dim S_m = 0 for m < 0, which is the
    /// combinatorial convention, not the falling-factorial one.
    pub fn hf(&self, j: i64) -> BigInt {
        let n = self.nvars as i64;
        let mut acc = BigInt::zero();
        for (deg, c) in self.numerator.terms() {
            if deg <= j {
                acc += c * binomial(&BigInt::from(j - deg + n - 1), &BigInt::from(n - 1));
            }
        }
        acc
    }

    /// Hilbert polynomial value at `j`: p(j) = sum Q_k C(j - k + d - 1, d - 1)
    /// with the binomial's polynomial convention, so the value is exact for
    /// every integer argument.
    pub fn hp(&self, j: i64) -> BigInt {
        let (q, d) = self.reduced();
        let Some(d) = d else { return BigInt::zero() };
        let d = d as i64;
        let mut acc = BigInt::zero();
        for (deg, c) in q.terms() {
            acc += c * binomial(&BigInt::from(j - deg + d - 1), &BigInt::from(d - 1));
        }
        acc
    }

    /// Multiplicity-style normalized leading coefficient: Q(1) of the
    /// reduced numerator.
    pub fn multiplicity(&self) -> crate::error::Result<BigInt> {
        if self.numerator.is_zero() {
            return Err(crate::error::Error::ZeroModule);
        }
        let (q, _) = self.reduced();
        Ok(q.eval_at_one())
    }

    /// Total k-dimension, finite exactly when the dimension is zero.
    pub fn total_length(&self) -> crate::error::Result<BigInt> {
        match self.dimension() {
            None => Ok(BigInt::zero()),
            Some(0) => {
                let (q, _) = self.reduced();
                Ok(q.eval_at_one())
            }
            Some(_) => Err(crate::error::Error::InfiniteLength),
        }
    }

    /// Hilbert-Samuel coefficients e_0..e_d with the alternating-sign
    /// convention P(X) = sum (-1)^i e_i C(X + d - i, d - i):
    /// e_i = Q^(i)(1)/i!.
    pub fn hs_coefficients(&self) -> crate::error::Result<Vec<BigInt>> {
        if self.numerator.is_zero() {
            return Err(crate::error::Error::ZeroModule);
        }
        let (q, d) = self.reduced();
        let d = d.unwrap();
        let mut out = Vec::with_capacity(d + 1);
        for i in 0..=d {
            let mut acc = BigInt::zero();
            for (deg, c) in q.terms() {
                acc += c * binomial(&BigInt::from(deg), &BigInt::from(i as i64));
            }
            out.push(acc);
        }
        Ok(out)
    }
}

/// dim_k(J/I) for nested ideals I inside J, read off the initial-ideal
/// Hilbert series: the difference of numerators must be divisible by
/// (1-t)^n, and the quotient polynomial evaluated at 1 is the colength.
pub fn finite_colength(
    inner: &HilbertSeries,
    outer: &HilbertSeries,
) -> crate::error::Result<BigInt> {
    assert_eq!(inner.nvars(), outer.nvars());
    let mut diff = inner.numerator().sub(outer.numerator());
    for _ in 0..inner.nvars() {
        diff = diff
            .divide_by_one_minus_t()
            .ok_or_else(|| crate::error::Error::Internal("colength is not finite".into()))?;
    }
    Ok(diff.eval_at_one())
}

/// Exact Hilbert-Samuel polynomial evaluation
/// P(X) = sum (-1)^i e_i C(X + d - i, d - i) at X = n.
pub fn hs_polynomial_value(coeffs: &[BigInt], n: i64) -> BigInt {
    let d = coeffs.len() as i64 - 1;
    let mut acc = BigInt::zero();
    for (i, e) in coeffs.iter().enumerate() {
        let i = i as i64;
        let term = e * binomial(&BigInt::from(n + d - i), &BigInt::from(d - i));
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Render the polynomial sum Q_k C(X - k + d - 1, d - 1) in the monomial
/// basis with rational coefficients, e.g. `X + 1` or `1/2*X^2 + 3/2*X + 1`.
pub fn hilbert_polynomial_text(q: &IntLaurent, d: usize) -> String {
    use num_rational::BigRational;
    if d == 0 || q.is_zero() {
        return "0".to_string();
    }
    let deg = d - 1;
    // accumulate rational coefficients of X^0..X^deg
    let mut coeffs = vec![BigRational::zero(); deg + 1];
    for (k, c) in q.terms() {
        // C(X - k + d - 1, d - 1) = prod_{t=0}^{d-2} (X - k + d - 1 - t) / (d-1)!
        let mut poly = vec![BigRational::one()];
        for t in 0..deg {
            let shift = BigRational::from_integer(BigInt::from(d as i64 - 1 - k - t as i64));
            // multiply poly by (X + shift)
            let mut next = vec![BigRational::zero(); poly.len() + 1];
            for (idx, a) in poly.iter().enumerate() {
                next[idx + 1] += a;
                next[idx] += a * &shift;
            }
            poly = next;
        }
        let fact = BigRational::from_integer(crate::arith::factorial(deg as u64));
        for (idx, a) in poly.iter().enumerate() {
            coeffs[idx] += BigRational::from_integer(c.clone()) * a / &fact;
        }
    }
    let mut parts: Vec<String> = Vec::new();
    for idx in (0..=deg).rev() {
        let c = &coeffs[idx];
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let mag_str = if mag.denom().is_one() {
            mag.numer().to_string()
        } else {
            format!("{}/{}", mag.numer(), mag.denom())
        };
        let var = match idx {
            0 => String::new(),
            1 => "X".to_string(),
            _ => format!("X^{idx}"),
        };
        let body = match (mag_str.as_str(), var.as_str()) {
            (m, "") => m.to_string(),
            ("1", v) => v.to_string(),
            (m, v) => format!("{m}*{v}"),
        };
        if parts.is_empty() {
            parts.push(if c.is_negative() { format!("-{body}") } else { body });
        } else {
            parts.push(format!("{} {body}", if c.is_negative() { "-" } else { "+" }));
        }
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn numerator_examples() {
        // zero ideal in n vars: numerator 1
        assert_eq!(
            monomial_quotient_numerator(&MonomialIdeal::zero(3)),
            IntLaurent::one()
        );
        // (x) in k[x,y]: 1 - t
        let jx = MonomialIdeal::new(2, vec![m(&[1, 0])]);
        assert_eq!(
            monomial_quotient_numerator(&jx),
            IntLaurent::from_coeffs(0, vec![big(1), big(-1)])
        );
        // (x^2, xy) in k[x,y]: 1 - 2t^2 + t^3
        let j = MonomialIdeal::new(2, vec![m(&[2, 0]), m(&[1, 1])]);
        assert_eq!(
            monomial_quotient_numerator(&j),
            IntLaurent::from_coeffs(0, vec![big(1), big(0), big(-2), big(1)])
        );
    }

    #[test]
    fn hilbert_function_matches_standard_monomial_count() {
        let j = MonomialIdeal::new(3, vec![m(&[2, 0, 0]), m(&[1, 1, 0]), m(&[0, 3, 1])]);
        let hs = HilbertSeries::of_monomial_quotient(&j);
        for d in 0..10u32 {
            assert_eq!(
                hs.hf(d as i64),
                big(j.standard_monomials(d).len() as i64),
                "degree {d}"
            );
        }
        // series dimension agrees with combinatorial dimension
        assert_eq!(hs.dimension().unwrap(), j.quotient_dimension().unwrap());
    }

    #[test]
    fn reduction_and_coefficients() {
        // (x^2, xy): Q = 1 + t - t^2, d = 1, e0 = 1, e1 = -1
        let j = MonomialIdeal::new(2, vec![m(&[2, 0]), m(&[1, 1])]);
        let hs = HilbertSeries::of_monomial_quotient(&j);
        let (q, d) = hs.reduced();
        assert_eq!(d, Some(1));
        assert_eq!(q, IntLaurent::from_coeffs(0, vec![big(1), big(1), big(-1)]));
        assert_eq!(hs.multiplicity().unwrap(), big(1));
        assert_eq!(hs.hs_coefficients().unwrap(), vec![big(1), big(-1)]);
        // hilbert polynomial: p(X) = 1
        for n in 2..8 {
            assert_eq!(hs.hp(n), big(1));
        }
        assert_eq!(hilbert_polynomial_text(&q, 1), "1");
    }

    #[test]
    fn hilbert_samuel_polynomial_of_family() {
        // Q = 1 + t - t^(r+1) for (x^2, x*y^r): e0 = 1, e1 = -r;
        // P(X) = C(X+1,1) + r = X + r + 1
        for r in 1..6i64 {
            let mut coeffs = vec![big(0); r as usize + 2];
            coeffs[0] = big(1);
            coeffs[1] = big(1);
            coeffs[r as usize + 1] = big(-1);
            let q = IntLaurent::from_coeffs(0, coeffs);
            let hs = HilbertSeries::new(2, q.mul(&IntLaurent::from_coeffs(0, vec![big(1), big(-1)])));
            assert_eq!(hs.hs_coefficients().unwrap(), vec![big(1), big(-r)]);
            let e = hs.hs_coefficients().unwrap();
            for n in 0..6 {
                assert_eq!(hs_polynomial_value(&e, n), big(n + r + 1));
            }
        }
    }

    #[test]
    fn polynomial_ring_series() {
        let hs = HilbertSeries::of_monomial_quotient(&MonomialIdeal::zero(2));
        assert_eq!(hs.hf(3), big(4));
        assert_eq!(hs.hp(3), big(4));
        let (q, d) = hs.reduced();
        assert_eq!(d, Some(2));
        assert_eq!(hilbert_polynomial_text(&q, 2), "X + 1");
    }

    #[test]
    fn artinian_total_length() {
        let j = MonomialIdeal::new(2, vec![m(&[2, 0]), m(&[0, 2]), m(&[1, 1])]);
        let hs = HilbertSeries::of_monomial_quotient(&j);
        assert_eq!(hs.dimension(), Some(0));
        assert_eq!(hs.total_length().unwrap(), big(3)); // 1, x, y
        assert_eq!(hs.multiplicity().unwrap(), big(3));
        let full = HilbertSeries::of_monomial_quotient(&MonomialIdeal::zero(2));
        assert!(full.total_length().is_err());
    }
}
