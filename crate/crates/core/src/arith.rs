//! Exact coefficient arithmetic: prime fields F_p for a machine-size prime p
//! and arbitrary-precision rationals, behind one `Field` interface.
//!
//! Integer plumbing (binomial coefficients, bound formulas) uses `BigInt`;
//! nothing in the crate silently overflows.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A coefficient field. Implementations carry whatever runtime data the
/// field needs (the modulus for F_p), so elements stay plain values.
pub trait Field: Clone + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + std::hash::Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Errors on zero.
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Build an element from a decimal numerator/denominator pair, as they
    /// appear in polynomial text.
    fn from_decimal(&self, num: &BigInt, den: &BigInt) -> Result<Self::Elem>;
    /// Canonical text form, accepted back by the polynomial parser.
    fn format(&self, a: &Self::Elem) -> String;
    /// Field descriptor in instance-file syntax (`F32003` or `Q`).
    fn descriptor(&self) -> String;
}

/// The prime field F_p for a machine-size prime, elements stored as
/// canonical residues in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Standard default modulus for desk-scale Groebner computations.
    pub const DEFAULT_PRIME: u64 = 32003;

    pub fn new(p: u64) -> Result<Self> {
        if is_prime_u64(p) {
            Ok(PrimeField { p })
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_bigint(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let mut r = n % &p;
        if r.is_negative() {
            r += &p;
        }
        r.to_u64().expect("residue fits in u64")
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn is_one(&self, a: &u64) -> bool {
        *a == 1 % self.p
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.p - (b - a)
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Result<u64> {
        if *a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(pow_mod(*a, self.p - 2, self.p))
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn from_decimal(&self, num: &BigInt, den: &BigInt) -> Result<u64> {
        let n = self.reduce_bigint(num);
        let d = self.reduce_bigint(den);
        self.div(&n, &d)
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn descriptor(&self) -> String {
        format!("F{}", self.p)
    }
}

/// The field of rationals with arbitrary-precision reduced fractions.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(a.recip())
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_decimal(&self, num: &BigInt, den: &BigInt) -> Result<BigRational> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(BigRational::new(num.clone(), den.clone()))
    }
    fn format(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn descriptor(&self) -> String {
        "Q".to_string()
    }
}

fn pow_mod(base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut b = base as u128 % p as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p as u128;
        }
        b = b * b % p as u128;
        exp >>= 1;
    }
    acc as u64
}

/// Deterministic Miller-Rabin, exact for all u64 inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Binomial coefficient with the falling-factorial polynomial convention:
/// C(n, k) = n(n-1)...(n-k+1)/k! for any integer n, and 0 for k < 0.
/// Negative upper indices are what make Hilbert polynomials evaluate
/// correctly at small arguments.
pub fn binomial(n: &BigInt, k: &BigInt) -> BigInt {
    if k.is_negative() {
        return BigInt::zero();
    }
    let k: u64 = k
        .to_u64()
        .expect("binomial lower index does not fit in a machine word");
    let mut acc = BigInt::one();
    let mut num = n.clone();
    for j in 1..=k {
        acc *= &num;
        acc /= BigInt::from(j); // exact: acc equals C(n, j) after this step
        num -= 1;
    }
    acc
}

/// Binomial on machine integers, still exact via `BigInt`.
pub fn binomial_i64(n: i64, k: i64) -> BigInt {
    binomial(&BigInt::from(n), &BigInt::from(k))
}

/// Exact factorial as `BigInt`.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for j in 2..=n {
        acc *= BigInt::from(j);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn prime_field_basics() {
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(f5.mul(&3, &4), 2);
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(f7.inv(&3).unwrap(), 5);
        assert_eq!(f7.mul(&3, &f7.inv(&3).unwrap()), 1);
        assert_eq!(f7.inv(&0), Err(Error::DivisionByZero));
    }

    #[test]
    fn rationals_basics() {
        let q = Rationals;
        let half = q.from_decimal(&BigInt::from(1), &BigInt::from(2)).unwrap();
        let third = q.from_decimal(&BigInt::from(1), &BigInt::from(3)).unwrap();
        assert_eq!(q.format(&q.add(&half, &third)), "5/6");
        assert_eq!(q.div(&half, &q.zero()), Err(Error::DivisionByZero));
        assert_eq!(
            q.from_decimal(&BigInt::from(-4), &BigInt::from(-6)).unwrap(),
            q.from_decimal(&BigInt::from(2), &BigInt::from(3)).unwrap()
        );
    }

    #[test]
    fn rejects_composite_modulus() {
        assert_eq!(PrimeField::new(4).unwrap_err(), Error::NotPrime(4));
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(32003).is_ok());
    }

    #[test]
    fn primality_spot_checks() {
        assert!(!is_prime_u64(0));
        assert!(!is_prime_u64(1));
        assert!(is_prime_u64(18446744073709551557)); // largest u64 prime
        assert!(!is_prime_u64(18446744073709551555));
        assert!(!is_prime_u64(3215031751)); // strong pseudoprime to bases 2,3,5,7
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial_i64(5, 2), BigInt::from(10));
        assert_eq!(binomial_i64(7, 0), BigInt::from(1));
        assert_eq!(binomial_i64(-3, 0), BigInt::from(1));
        assert_eq!(binomial_i64(-1, 2), BigInt::from(1));
        assert_eq!(binomial_i64(3, 5), BigInt::from(0));
        assert_eq!(binomial_i64(2, -1), BigInt::from(0));
    }

    proptest! {
        #[test]
        fn field_axioms_f32003(a in 0u64..32003, b in 0u64..32003, c in 0u64..32003) {
            let f = PrimeField::new(32003).unwrap();
            prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            if a != 0 {
                prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
            }
        }

        #[test]
        fn pascal_identity(n in -30i64..60, k in 1i64..20) {
            prop_assert_eq!(
                binomial_i64(n, k),
                binomial_i64(n - 1, k) + binomial_i64(n - 1, k - 1)
            );
        }
    }
}
