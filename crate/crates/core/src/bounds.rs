//! Exact evaluation of the regularity, Hilbert-Samuel, and coefficient
//! bounds for local rings in terms of dimension, multiplicity, and
//! Cohen-Macaulay deviation, plus per-instance verdicts and the finiteness
//! envelope for bounded dimension and extended degree.
//!
//! Everything is `BigInt`: the factorial exponents overflow machine words
//! already at small multiplicities.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{binomial_i64, factorial};
use crate::error::{Error, Result};

fn check_d(d: u64) -> Result<()> {
    if d == 0 {
        return Err(Error::DimensionZero);
    }
    Ok(())
}

fn pow(base: &BigInt, exp: u64) -> BigInt {
    if exp == 0 {
        return BigInt::one();
    }
    let exp = u32::try_from(exp).map_err(|_| ()).expect("exponent fits in u32");
    base.pow(exp)
}

fn factorial_u64(n: u64) -> Result<u64> {
    factorial(n)
        .to_u64()
        .ok_or_else(|| Error::Internal(format!("{n}! exceeds exact evaluation range")))
}

/// Uniform Hilbert-Samuel bound for d >= 1 and n >= 0:
/// ell(A/m^(n+1)) <= e C(n+d-1, d) + I C(n+d-2, d-1) + C(n+d-1, d-1).
pub fn hs_upper_bound(n: i64, d: u64, e: &BigInt, i_dev: &BigInt) -> Result<BigInt> {
    check_d(d)?;
    let d = d as i64;
    Ok(e * binomial_i64(n + d - 1, d)
        + i_dev * binomial_i64(n + d - 2, d - 1)
        + binomial_i64(n + d - 1, d - 1))
}

/// Weaker bound derived from earlier work:
/// ell(A/m^(n+1)) <= D C(n+d-1, d) + C(n+d-1, d-1).
pub fn hs_upper_bound_weak(n: i64, d: u64, big_d: &BigInt) -> Result<BigInt> {
    check_d(d)?;
    let d = d as i64;
    Ok(big_d * binomial_i64(n + d - 1, d) + binomial_i64(n + d - 1, d - 1))
}

/// Regularity bound for the associated graded ring:
/// d = 1: e + I - 1; d >= 2:
/// e^((d-1)!-1) [e^2 + eI + 2I - e]^((d-1)!) - I.
pub fn reg_upper_bound(d: u64, e: &BigInt, i_dev: &BigInt) -> Result<BigInt> {
    check_d(d)?;
    if d == 1 {
        return Ok(e + i_dev - 1);
    }
    let f = factorial_u64(d - 1)?;
    let base = e * e + e * i_dev + BigInt::from(2) * i_dev - e;
    Ok(pow(e, f - 1) * pow(&base, f) - i_dev)
}

/// Cohen-Macaulay specialization of the regularity bound:
/// d = 1: e - 1; d >= 2: e^(2(d-1)!-1) (e-1)^((d-1)!).
pub fn reg_upper_bound_cm(d: u64, e: &BigInt) -> Result<BigInt> {
    check_d(d)?;
    if d == 1 {
        return Ok(e - 1);
    }
    let f = factorial_u64(d - 1)?;
    Ok(pow(e, 2 * f - 1) * pow(&(e - 1), f))
}

/// Which coefficient bound to evaluate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoeffVariant {
    /// The sharp bound in terms of e and I.
    Main,
    /// Cohen-Macaulay specialization (I = 0).
    CohenMacaulay,
    /// The earlier (9 e^5)^(i!) bound for Cohen-Macaulay rings.
    SrinivasTrivedi,
    /// The earlier [(3+c)^2 e^5]^(i!) bound for generalized Cohen-Macaulay
    /// rings, with an explicit invariant c >= 2I.
    Trivedi { c: BigInt },
}

/// |e_i| bound for i >= 1:
/// main: i = 1: e(e-1)/2 + I; i >= 2: e^(i!-i) [e^2 + eI + 2I]^(i!) - 1.
pub fn coeff_upper_bound(
    i: u64,
    e: &BigInt,
    i_dev: &BigInt,
    variant: &CoeffVariant,
) -> Result<BigInt> {
    if i == 0 {
        return Err(Error::CoefficientIndexZero);
    }
    match variant {
        CoeffVariant::Main => {
            if i == 1 {
                Ok(e * (e - 1) / BigInt::from(2) + i_dev)
            } else {
                let f = factorial_u64(i)?;
                let base = e * e + e * i_dev + BigInt::from(2) * i_dev;
                Ok(pow(e, f - i) * pow(&base, f) - 1)
            }
        }
        CoeffVariant::CohenMacaulay => {
            if i == 1 {
                Ok(e * (e - 1) / BigInt::from(2))
            } else {
                let f = factorial_u64(i)?;
                Ok(pow(e, 3 * f - i) - 1)
            }
        }
        CoeffVariant::SrinivasTrivedi => {
            let f = factorial_u64(i)?;
            Ok(pow(&(BigInt::from(9) * pow(e, 5)), f))
        }
        CoeffVariant::Trivedi { c } => {
            if c < &(BigInt::from(2) * i_dev) {
                return Err(Error::TrivediInvariantTooSmall);
            }
            let f = factorial_u64(i)?;
            let base = pow(&(BigInt::from(3) + c), 2) * pow(e, 5);
            Ok(pow(&base, f))
        }
    }
}

// ---------------------------------------------------------------------------
// verdicts

/// Outcome of checking one bound or identity on one instance. `holds` means
/// slack >= 0 for inequalities (actual = |value| for absolute-value claims)
/// and slack = 0 for equalities.
#[derive(Clone, Debug, Serialize)]
pub struct BoundVerdict {
    pub thm: String,
    pub inputs: String,
    #[serde(with = "crate::report::bigint_json")]
    pub bound: BigInt,
    #[serde(with = "crate::report::bigint_json")]
    pub actual: BigInt,
    pub holds: bool,
    #[serde(with = "crate::report::bigint_json")]
    pub slack: BigInt,
}

impl BoundVerdict {
    pub fn le(thm: impl Into<String>, inputs: String, bound: BigInt, actual: BigInt) -> Self {
        let slack = &bound - &actual;
        BoundVerdict {
            thm: thm.into(),
            inputs,
            holds: !slack.is_negative(),
            bound,
            actual,
            slack,
        }
    }

    pub fn eq(thm: impl Into<String>, inputs: String, expected: BigInt, actual: BigInt) -> Self {
        let slack = &expected - &actual;
        BoundVerdict {
            thm: thm.into(),
            inputs,
            holds: slack.is_zero(),
            bound: expected,
            actual,
            slack,
        }
    }
}

/// A check that could not run on this instance, with the reason.
#[derive(Clone, Debug, Serialize)]
pub struct SkippedCheck {
    pub check: String,
    pub reason: String,
}

/// Numeric facts of one analyzed instance, field- and
/// representation-independent, ready for bound verification.
#[derive(Clone, Debug)]
pub struct InstanceFacts {
    pub dim: usize,
    pub e: BigInt,
    /// hdeg or an externally supplied extended degree; `None` when the
    /// defining ideal is non-homogeneous and no external value was given.
    pub extended_degree: Option<BigInt>,
    pub length_l: BigInt,
    pub reg_g: i64,
    pub greg: Option<i64>,
    /// None exactly when A has finite length (A/L is the zero ring).
    pub reg_gprime: Option<i64>,
    /// ell(A/m^(n+1)) for n = 0..=horizon.
    pub hs_values: Vec<BigInt>,
    /// e_0..e_d.
    pub e_coeffs: Vec<BigInt>,
    /// max |h(n) - p(n)| over reg < n <= reg+10.
    pub postulation_defect: BigInt,
    /// max |(h(n) - p(n)) - alternating cohomology sum| over 0 <= n <= reg+5.
    pub serre_defect: BigInt,
}

/// Run every applicable bound and identity on one instance. Any verdict
/// with holds = false on valid input is a counterexample candidate: it
/// would contradict a proved statement, so it signals a bug first.
pub fn verify_instance(facts: &InstanceFacts) -> (Vec<BoundVerdict>, Vec<SkippedCheck>) {
    let mut verdicts = Vec::new();
    let mut skipped = Vec::new();
    let d = facts.dim as u64;

    let deviation = facts
        .extended_degree
        .as_ref()
        .map(|bd| bd - &facts.e);

    if d == 0 {
        skipped.push(SkippedCheck {
            check: "hs_uniform, hs_weak, reg_bound, coeff_bound".into(),
            reason: "theorem hypotheses require dim >= 1".into(),
        });
    } else {
        match &deviation {
            Some(i_dev) => {
                let big_d = facts.extended_degree.as_ref().unwrap();
                for (n, actual) in facts.hs_values.iter().enumerate() {
                    let n = n as i64;
                    let bound = hs_upper_bound(n, d, &facts.e, i_dev).expect("d >= 1");
                    verdicts.push(BoundVerdict::le(
                        "hs_uniform",
                        format!("n={n}, d={d}, e={}, I={}", facts.e, i_dev),
                        bound,
                        actual.clone(),
                    ));
                    let weak = hs_upper_bound_weak(n, d, big_d).expect("d >= 1");
                    verdicts.push(BoundVerdict::le(
                        "hs_weak",
                        format!("n={n}, d={d}, D={big_d}"),
                        weak,
                        actual.clone(),
                    ));
                }
                verdicts.push(BoundVerdict::le(
                    "reg_bound",
                    format!("d={d}, e={}, I={}", facts.e, i_dev),
                    reg_upper_bound(d, &facts.e, i_dev).expect("d >= 1"),
                    BigInt::from(facts.reg_g),
                ));
                for (i, ei) in facts.e_coeffs.iter().enumerate().skip(1) {
                    let bound = coeff_upper_bound(i as u64, &facts.e, i_dev, &CoeffVariant::Main)
                        .expect("i >= 1");
                    verdicts.push(BoundVerdict::le(
                        format!("coeff_bound_{i}"),
                        format!("i={i}, e={}, I={}", facts.e, i_dev),
                        bound,
                        ei.abs(),
                    ));
                }
            }
            None => {
                skipped.push(SkippedCheck {
                    check: "hs_uniform, hs_weak, reg_bound, coeff_bound".into(),
                    reason: "skipped: no extended degree".into(),
                });
            }
        }
    }

    match facts.reg_gprime {
        Some(rgp) => {
            verdicts.push(BoundVerdict::le(
                "reg_mod_finite_part",
                format!("reg(G')={rgp}, lengthL={}", facts.length_l),
                BigInt::from(rgp) + &facts.length_l,
                BigInt::from(facts.reg_g),
            ));
        }
        None => {
            skipped.push(SkippedCheck {
                check: "reg_mod_finite_part".into(),
                reason: "A has finite length: L = A and G' is the zero ring".into(),
            });
        }
    }

    // depth A > 0 is exactly lengthL = 0
    if facts.length_l.is_zero() {
        let greg = facts.greg.expect("positive depth forces nonvanishing higher cohomology");
        verdicts.push(BoundVerdict::eq(
            "reg_eq_greg_pos_depth",
            format!("depth > 0, greg={greg}"),
            BigInt::from(facts.reg_g),
            BigInt::from(greg),
        ));
    }

    verdicts.push(BoundVerdict::le(
        "serre_postulation",
        format!("window reg+1..=reg+10, reg={}", facts.reg_g),
        BigInt::zero(),
        facts.postulation_defect.clone(),
    ));
    verdicts.push(BoundVerdict::le(
        "serre_alternating_sum",
        format!("window 0..=reg+5, reg={}", facts.reg_g),
        BigInt::zero(),
        facts.serre_defect.clone(),
    ));

    (verdicts, skipped)
}

// ---------------------------------------------------------------------------
// finiteness envelope

/// One split D = e + I of the extended-degree budget.
#[derive(Clone, Debug, Serialize)]
pub struct EnvelopeSplit {
    #[serde(with = "crate::report::bigint_json")]
    pub e: BigInt,
    #[serde(with = "crate::report::bigint_json")]
    pub i_dev: BigInt,
    /// Postulation horizon: values beyond it are forced by the polynomial.
    #[serde(with = "crate::report::bigint_json")]
    pub horizon: BigInt,
    /// For each n = 0..=horizon, the upper end of the value range
    /// [1, hs_upper_bound(n)].
    #[serde(with = "crate::report::bigint_vec_json")]
    pub value_bounds: Vec<BigInt>,
    /// For i = 1..=d, the symmetric coefficient ranges [-b_i, b_i].
    #[serde(with = "crate::report::bigint_vec_json")]
    pub coeff_bounds: Vec<BigInt>,
    /// Size of the enumerated candidate space of this split.
    #[serde(with = "crate::report::bigint_json")]
    pub count: BigInt,
}

/// The finiteness envelope for dimension d and extended degree at most q:
/// a finite candidate space provably containing every Hilbert-Samuel
/// function that can occur. The count witnesses finiteness; it is an upper
/// bound on the candidate space, not a count of realizable functions.
#[derive(Clone, Debug, Serialize)]
pub struct Envelope {
    pub d: u64,
    pub q: u64,
    pub splits: Vec<EnvelopeSplit>,
    #[serde(with = "crate::report::bigint_json")]
    pub total_count: BigInt,
}

pub fn finiteness_envelope(d: u64, q: u64) -> Result<Envelope> {
    check_d(d)?;
    if q == 0 {
        return Err(Error::Internal("extended degree bound must be >= 1".into()));
    }
    let mut splits = Vec::new();
    let mut total = BigInt::zero();
    for e in 1..=q {
        let e = BigInt::from(e);
        let i_dev = BigInt::from(q) - &e;
        let horizon = reg_upper_bound(d, &e, &i_dev)?;
        let horizon_i64 = horizon
            .to_i64()
            .filter(|h| *h <= 1_000_000)
            .ok_or_else(|| Error::Internal("envelope horizon too large to enumerate".into()))?;
        let mut count = BigInt::one();
        let mut value_bounds = Vec::new();
        for n in 0..=horizon_i64.max(0) {
            let vb = hs_upper_bound(n, d, &e, &i_dev)?;
            count *= &vb; // values range over [1, vb]
            value_bounds.push(vb);
        }
        let mut coeff_bounds = Vec::new();
        for i in 1..=d {
            let cb = coeff_upper_bound(i, &e, &i_dev, &CoeffVariant::Main)?;
            count *= BigInt::from(2) * &cb + 1;
            coeff_bounds.push(cb);
        }
        total += &count;
        splits.push(EnvelopeSplit { e, i_dev, horizon, value_bounds, coeff_bounds, count });
    }
    Ok(Envelope { d, q, splits, total_count: total })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn hs_bound_examples() {
        // n=2, d=1, e=1, I=3: 1*2 + 3*1 + 1 = 6
        assert_eq!(hs_upper_bound(2, 1, &big(1), &big(3)).unwrap(), big(6));
        // n=0: C(d-1, d) = 0 and C(d-1, d-1) = 1, plus I when d = 1
        for d in 1..=4u64 {
            for (e, i) in [(1i64, 0i64), (2, 1), (3, 3)] {
                let expect = if d == 1 { 1 + i } else { 1 };
                assert_eq!(
                    hs_upper_bound(0, d, &big(e), &big(i)).unwrap(),
                    big(expect),
                    "d={d} e={e} I={i}"
                );
            }
        }
        assert_eq!(hs_upper_bound(3, 0, &big(1), &big(0)).unwrap_err(), Error::DimensionZero);
    }

    #[test]
    fn weak_vs_strong_bound_on_grid() {
        // strong <= weak for n >= 1; at n = 0 they differ by I when d = 1
        for d in 1..=3u64 {
            for e in 1..=4i64 {
                for i in 0..=3i64 {
                    let big_d = big(e + i);
                    for n in 1..=10i64 {
                        let strong = hs_upper_bound(n, d, &big(e), &big(i)).unwrap();
                        let weak = hs_upper_bound_weak(n, d, &big_d).unwrap();
                        assert!(strong <= weak, "n={n} d={d} e={e} I={i}");
                    }
                    let s0 = hs_upper_bound(0, d, &big(e), &big(i)).unwrap();
                    let w0 = hs_upper_bound_weak(0, d, &big_d).unwrap();
                    let gap = if d == 1 { big(i) } else { big(0) };
                    assert_eq!(s0 - w0, gap);
                }
            }
        }
    }

    #[test]
    fn reg_bound_examples() {
        assert_eq!(reg_upper_bound(1, &big(1), &big(4)).unwrap(), big(4));
        assert_eq!(reg_upper_bound(2, &big(2), &big(0)).unwrap(), big(2));
        assert_eq!(reg_upper_bound(1, &big(3), &big(0)).unwrap(), big(2));
        assert_eq!(reg_upper_bound_cm(1, &big(3)).unwrap(), big(2));
    }

    #[test]
    fn cm_identities_on_grid() {
        for d in 1..=4u64 {
            for e in 1..=5i64 {
                assert_eq!(
                    reg_upper_bound(d, &big(e), &big(0)).unwrap(),
                    reg_upper_bound_cm(d, &big(e)).unwrap(),
                    "d={d} e={e}"
                );
            }
        }
        for i in 1..=3u64 {
            for e in 1..=5i64 {
                assert_eq!(
                    coeff_upper_bound(i, &big(e), &big(0), &CoeffVariant::Main).unwrap(),
                    coeff_upper_bound(i, &big(e), &big(0), &CoeffVariant::CohenMacaulay).unwrap(),
                    "i={i} e={e}"
                );
            }
        }
    }

    #[test]
    fn coeff_bound_examples() {
        assert_eq!(
            coeff_upper_bound(1, &big(1), &big(4), &CoeffVariant::Main).unwrap(),
            big(4)
        );
        assert_eq!(
            coeff_upper_bound(2, &big(1), &big(0), &CoeffVariant::Main).unwrap(),
            big(0)
        );
        assert_eq!(
            coeff_upper_bound(2, &big(2), &big(0), &CoeffVariant::Main).unwrap(),
            big(15)
        );
        assert_eq!(
            coeff_upper_bound(2, &big(2), &big(0), &CoeffVariant::SrinivasTrivedi).unwrap(),
            big(82944)
        );
        assert_eq!(
            coeff_upper_bound(0, &big(2), &big(0), &CoeffVariant::Main).unwrap_err(),
            Error::CoefficientIndexZero
        );
        assert_eq!(
            coeff_upper_bound(1, &big(2), &big(2), &CoeffVariant::Trivedi { c: big(3) })
                .unwrap_err(),
            Error::TrivediInvariantTooSmall
        );
    }

    #[test]
    fn earlier_bounds_are_weaker_on_grid() {
        for e in 1..=5i64 {
            for i in 1..=3u64 {
                let main =
                    coeff_upper_bound(i, &big(e), &big(0), &CoeffVariant::Main).unwrap();
                let st =
                    coeff_upper_bound(i, &big(e), &big(0), &CoeffVariant::SrinivasTrivedi)
                        .unwrap();
                assert!(main <= st, "e={e} i={i}");
                for i_dev in 0..=3i64 {
                    let c = big(2 * i_dev);
                    let main_dev =
                        coeff_upper_bound(i, &big(e), &big(i_dev), &CoeffVariant::Main).unwrap();
                    let tr = coeff_upper_bound(
                        i,
                        &big(e),
                        &big(i_dev),
                        &CoeffVariant::Trivedi { c },
                    )
                    .unwrap();
                    assert!(main_dev <= tr, "e={e} i={i} I={i_dev}");
                }
            }
        }
    }

    #[test]
    fn bounds_monotone_in_e_and_i() {
        for d in 1..=4u64 {
            for e in 1..=5i64 {
                for i_dev in 0..=3i64 {
                    for (de, di) in [(1, 0), (0, 1)] {
                        let a = reg_upper_bound(d, &big(e), &big(i_dev)).unwrap();
                        let b = reg_upper_bound(d, &big(e + de), &big(i_dev + di)).unwrap();
                        assert!(a <= b, "reg d={d} e={e} I={i_dev} +({de},{di})");
                        for n in 0..=6 {
                            let a = hs_upper_bound(n, d, &big(e), &big(i_dev)).unwrap();
                            let b =
                                hs_upper_bound(n, d, &big(e + de), &big(i_dev + di)).unwrap();
                            assert!(a <= b, "hs n={n} d={d}");
                        }
                        for i in 1..=3u64 {
                            let a = coeff_upper_bound(i, &big(e), &big(i_dev), &CoeffVariant::Main)
                                .unwrap();
                            let b = coeff_upper_bound(
                                i,
                                &big(e + de),
                                &big(i_dev + di),
                                &CoeffVariant::Main,
                            )
                            .unwrap();
                            assert!(a <= b, "coeff i={i}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn envelope_d1_q1_is_the_regular_ring() {
        let env = finiteness_envelope(1, 1).unwrap();
        assert_eq!(env.splits.len(), 1);
        let s = &env.splits[0];
        assert_eq!(s.horizon, big(0));
        assert_eq!(s.value_bounds, vec![big(1)]);
        assert_eq!(s.coeff_bounds, vec![big(0)]);
        assert_eq!(s.count, big(1));
        assert_eq!(env.total_count, big(1));
    }

    #[test]
    fn envelope_d1_q2_contains_both_splits() {
        let env = finiteness_envelope(1, 2).unwrap();
        assert_eq!(env.splits.len(), 2);
        for s in &env.splits {
            assert!(s.horizon <= big(1));
            assert!(s.count >= big(1));
        }
        assert!(env.total_count > big(1));
    }

    #[test]
    fn envelope_counts_are_finite_for_small_grid() {
        for d in 1..=3u64 {
            for q in 1..=4u64 {
                let env = finiteness_envelope(d, q).unwrap();
                assert!(env.total_count.is_positive(), "d={d} q={q}");
            }
        }
    }
}
