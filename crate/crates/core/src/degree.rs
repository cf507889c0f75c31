//! Extended degrees: multiplicity, module dimension and graded length, the
//! recursive homological degree hdeg built from graded Ext modules, its
//! closed form on generalized Cohen-Macaulay modules, and the
//! Cohen-Macaulay deviation I(M) = hdeg(M) - e(M).

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{binomial_i64, Field};
use crate::error::{Error, Result};
use crate::resolution::{
    analyze_cokernel, ext_module, free_resolution, minimalize_presentation, CokernelData,
    GradedPresentation,
};

/// Krull dimension of a presented module; `None` encodes the zero module
/// (dimension -1 convention).
pub fn module_dimension(data: &CokernelData) -> Option<usize> {
    data.dimension()
}

/// Multiplicity e(M) of a nonzero graded module: Q(1) of its Hilbert
/// series reduced to the module's dimension. For zero-dimensional modules
/// this is the total length.
pub fn multiplicity(data: &CokernelData) -> Result<BigInt> {
    data.series.multiplicity()
}

/// Total k-dimension; errors unless dim(M) <= 0.
pub fn graded_length(data: &CokernelData) -> Result<BigInt> {
    data.series.total_length()
}

/// One level of the hdeg recursion: the contribution of
/// Ext^(n-i)(M, S) for 0 <= i < dim M.
#[derive(Clone, Debug)]
pub struct ExtContribution {
    /// Level index i in the recursion (weight C(r-1, i)).
    pub i: usize,
    /// Which Ext module: n - i over the ambient ring with n variables.
    pub ext_index: usize,
    /// Dimension of the Ext module; `None` when it vanishes.
    pub dim: Option<usize>,
    pub hdeg: BigInt,
    pub weight: BigInt,
}

/// The full degree report of a module.
#[derive(Clone, Debug)]
pub struct DegreeReport {
    pub dim: usize,
    pub multiplicity: BigInt,
    pub hdeg: BigInt,
    pub deviation: BigInt,
    /// Per-level Ext contributions of the top recursion layer.
    pub levels: Vec<ExtContribution>,
    /// Whether all lower local cohomology modules have finite length.
    pub generalized_cm: bool,
    /// ell(H^i_m(M)) for i = 0..dim-1 when all are finite.
    pub cohomology_lengths: Option<Vec<BigInt>>,
}

/// Computes hdeg with memoization on canonicalized minimal presentations:
/// the binomial-weighted recursion revisits isomorphic Ext modules.
pub struct HdegEngine<F: Field> {
    memo: HashMap<String, BigInt>,
    _marker: std::marker::PhantomData<F>,
}

impl<F: Field> Default for HdegEngine<F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<F: Field> HdegEngine<F> {
    pub fn new() -> Self {
        HdegEngine { memo: HashMap::new(), _marker: std::marker::PhantomData }
    }

    /// hdeg(M) = e(M) + sum_{i=0}^{r-1} C(r-1, i) hdeg(Ext^(n-i)(M, S)),
    /// with hdeg(0) = 0 and hdeg = length in dimension zero. The recursion
    /// is well-founded because dim Ext^(n-i)(M, S) < r at every level;
    /// a violation is a hard internal error.
    pub fn hdeg(&mut self, pres: &GradedPresentation<F>) -> Result<BigInt> {
        let minimal = minimalize_presentation(pres)?;
        let key = presentation_key(&minimal);
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }
        let data = analyze_cokernel(&minimal);
        let value = self.hdeg_inner(&minimal, &data, None)?;
        self.memo.insert(key, value.clone());
        Ok(value)
    }

    fn hdeg_inner(
        &mut self,
        minimal: &GradedPresentation<F>,
        data: &CokernelData,
        mut levels: Option<&mut Vec<ExtContribution>>,
    ) -> Result<BigInt> {
        let Some(r) = data.dimension() else {
            return Ok(BigInt::zero()); // zero module
        };
        if r == 0 {
            return graded_length(data);
        }
        let e = multiplicity(data)?;
        let nv = minimal.ring().nvars();
        let resolution = free_resolution(minimal, true)?;
        let mut acc = e;
        for i in 0..r {
            let ext = ext_module(&resolution, nv - i)?;
            let ext_data = analyze_cokernel(&ext);
            if let Some(ext_dim) = ext_data.dimension() {
                if ext_dim >= r {
                    return Err(Error::Internal(format!(
                        "Ext^{} has dimension {ext_dim} >= {r}; hdeg recursion is not well-founded",
                        nv - i
                    )));
                }
            }
            let weight = binomial_i64(r as i64 - 1, i as i64);
            let sub = self.hdeg(&ext)?;
            if let Some(levels) = levels.as_deref_mut() {
                levels.push(ExtContribution {
                    i,
                    ext_index: nv - i,
                    dim: ext_data.dimension(),
                    hdeg: sub.clone(),
                    weight: weight.clone(),
                });
            }
            acc += weight * sub;
        }
        Ok(acc)
    }

    /// Full report: hdeg, deviation, the per-level table, and the
    /// generalized Cohen-Macaulay data when available.
    pub fn report(&mut self, pres: &GradedPresentation<F>) -> Result<DegreeReport> {
        let minimal = minimalize_presentation(pres)?;
        let data = analyze_cokernel(&minimal);
        let Some(r) = data.dimension() else {
            return Err(Error::ZeroModule);
        };
        let e = multiplicity(&data)?;
        let mut levels = Vec::new();
        let hdeg = self.hdeg_inner(&minimal, &data, Some(&mut levels))?;
        let deviation = &hdeg - &e;
        let cohomology_lengths = local_cohomology_lengths(&minimal, r)?;
        Ok(DegreeReport {
            dim: r,
            multiplicity: e,
            hdeg,
            deviation,
            levels,
            generalized_cm: cohomology_lengths.is_some(),
            cohomology_lengths,
        })
    }
}

/// ell(H^i_m(M)) for i = 0..r-1 via duality with Ext^(n-i)(M, S); `None`
/// when some lower local cohomology module has infinite length.
fn local_cohomology_lengths<F: Field>(
    minimal: &GradedPresentation<F>,
    r: usize,
) -> Result<Option<Vec<BigInt>>> {
    let nv = minimal.ring().nvars();
    let resolution = free_resolution(minimal, true)?;
    let mut out = Vec::with_capacity(r);
    for i in 0..r {
        let ext = ext_module(&resolution, nv - i)?;
        let data = analyze_cokernel(&ext);
        match graded_length(&data) {
            Ok(len) => out.push(len),
            Err(Error::InfiniteLength) => return Ok(None),
            Err(e) => return Err(e),
        }
    }
    Ok(Some(out))
}

/// Closed form on generalized Cohen-Macaulay modules:
/// hdeg(M) = e(M) + sum_{i=0}^{r-1} C(r-1, i) ell(H^i_m(M)).
/// Errors when some lower local cohomology module has infinite length.
pub fn hdeg_gcm<F: Field>(pres: &GradedPresentation<F>) -> Result<BigInt> {
    let minimal = minimalize_presentation(pres)?;
    let data = analyze_cokernel(&minimal);
    let Some(r) = data.dimension() else {
        return Ok(BigInt::zero());
    };
    if r == 0 {
        return graded_length(&data);
    }
    let lengths = local_cohomology_lengths(&minimal, r)?
        .ok_or(Error::NotGeneralizedCohenMacaulay)?;
    let mut acc = multiplicity(&data)?;
    for (i, len) in lengths.iter().enumerate() {
        acc += binomial_i64(r as i64 - 1, i as i64) * len;
    }
    Ok(acc)
}

/// Cohen-Macaulay deviation I(M) = hdeg(M) - e(M); zero exactly on
/// Cohen-Macaulay modules.
pub fn cm_deviation<F: Field>(pres: &GradedPresentation<F>) -> Result<BigInt> {
    let mut engine = HdegEngine::new();
    let report = engine.report(pres)?;
    Ok(report.deviation)
}

/// Canonical text key of a minimal presentation, for memoization.
fn presentation_key<F: Field>(pres: &GradedPresentation<F>) -> String {
    let mut cols: Vec<String> = pres
        .cols()
        .iter()
        .zip(pres.col_degrees())
        .map(|(col, deg)| {
            let body: Vec<String> = col.iter().map(|p| p.to_text()).collect();
            format!("{deg}:[{}]", body.join(";"))
        })
        .collect();
    cols.sort();
    format!("shifts{:?}|{}", pres.target_shifts(), cols.join("|"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::PrimeField;
    use crate::basis::Ideal;
    use crate::poly::parse::parse_polynomial;
    use crate::poly::{PolyRing, Polynomial, TermOrder};
    use std::sync::Arc;

    type F = PrimeField;

    fn ring2() -> Arc<PolyRing<F>> {
        PolyRing::new(PrimeField::new(32003).unwrap(), &["x", "y"], TermOrder::grevlex())
    }

    fn p(r: &Arc<PolyRing<F>>, s: &str) -> Polynomial<F> {
        parse_polynomial(r, s).unwrap()
    }

    fn quotient(r: &Arc<PolyRing<F>>, gens: &[&str]) -> GradedPresentation<F> {
        let ideal = Ideal::new(r, gens.iter().map(|s| p(r, s)).collect());
        ideal.quotient_presentation().unwrap()
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn dimensions_multiplicities_lengths() {
        let r = ring2();
        // k = S/(x, y): dim 0, length 1
        let k = analyze_cokernel(&quotient(&r, &["x", "y"]));
        assert_eq!(module_dimension(&k), Some(0));
        assert_eq!(graded_length(&k).unwrap(), big(1));
        // S/(x^2, xy): dim 1, e = 1
        let m = analyze_cokernel(&quotient(&r, &["x^2", "x*y"]));
        assert_eq!(module_dimension(&m), Some(1));
        assert_eq!(multiplicity(&m).unwrap(), big(1));
        assert!(graded_length(&m).is_err());
        // S/(x^2): dim 1, e = 2
        let h = analyze_cokernel(&quotient(&r, &["x^2"]));
        assert_eq!(module_dimension(&h), Some(1));
        assert_eq!(multiplicity(&h).unwrap(), big(2));
        // zero module: dimension None, multiplicity is an error
        let z = analyze_cokernel(&quotient(&r, &["1"]));
        assert_eq!(module_dimension(&z), None);
        assert!(multiplicity(&z).is_err());
    }

    #[test]
    fn hdeg_of_depth_zero_example() {
        let r = ring2();
        let mut engine = HdegEngine::new();
        let report = engine.report(&quotient(&r, &["x^2", "x*y"])).unwrap();
        assert_eq!(report.dim, 1);
        assert_eq!(report.multiplicity, big(1));
        assert_eq!(report.hdeg, big(2));
        assert_eq!(report.deviation, big(1));
        assert_eq!(report.levels.len(), 1);
        assert_eq!(report.levels[0].ext_index, 2);
        assert_eq!(report.levels[0].hdeg, big(1));
        assert!(report.generalized_cm);
        assert_eq!(report.cohomology_lengths, Some(vec![big(1)]));
    }

    #[test]
    fn hdeg_of_family() {
        let r = ring2();
        let mut engine = HdegEngine::new();
        for rr in 1..=6 {
            let pres = quotient(&r, &["x^2", &format!("x*y^{rr}")]);
            let report = engine.report(&pres).unwrap();
            assert_eq!(report.multiplicity, big(1), "r = {rr}");
            assert_eq!(report.hdeg, big(rr + 1), "r = {rr}");
            assert_eq!(report.deviation, big(rr), "r = {rr}");
            // closed form agrees
            assert_eq!(hdeg_gcm(&pres).unwrap(), big(rr + 1));
        }
    }

    #[test]
    fn hdeg_of_cohen_macaulay_modules_is_multiplicity() {
        let r = ring2();
        let mut engine = HdegEngine::new();
        for gens in [vec!["x^2"], vec!["x"], vec![]] {
            let pres = quotient(&r, &gens.iter().map(|s| *s).collect::<Vec<_>>());
            let report = engine.report(&pres).unwrap();
            assert_eq!(report.hdeg, report.multiplicity);
            assert_eq!(report.deviation, big(0));
            assert_eq!(hdeg_gcm(&pres).unwrap(), report.multiplicity);
        }
    }

    #[test]
    fn hdeg_of_finite_length_module_is_length() {
        let r = ring2();
        let mut engine = HdegEngine::new();
        let pres = quotient(&r, &["x^2", "x*y", "y^3"]);
        let data = analyze_cokernel(&pres);
        let report = engine.report(&pres).unwrap();
        assert_eq!(report.hdeg, graded_length(&data).unwrap());
        assert_eq!(report.deviation, big(0));
    }

    #[test]
    fn additivity_over_finite_length_part() {
        // hdeg(S/I) = hdeg(S/I^sat) + ell(L) on the family
        let r = ring2();
        let mut engine = HdegEngine::new();
        for rr in 1..=4 {
            let ideal = Ideal::new(&r, vec![p(&r, "x^2"), p(&r, &format!("x*y^{rr}"))]);
            let sat = crate::basis::saturate_maximal(&ideal).unwrap();
            let whole = engine.hdeg(&ideal.quotient_presentation().unwrap()).unwrap();
            let modl = engine
                .hdeg(&sat.saturation.quotient_presentation().unwrap())
                .unwrap();
            assert_eq!(whole, modl + sat.length, "r = {rr}");
        }
    }

    #[test]
    fn three_variable_cone_over_points() {
        // S/(x^2, xy, xz) in k[x,y,z]: saturation (x), e = 1, dim 2
        let r3 = PolyRing::new(
            PrimeField::new(32003).unwrap(),
            &["x", "y", "z"],
            TermOrder::grevlex(),
        );
        let pres = {
            let ideal = Ideal::new(
                &r3,
                vec![p(&r3, "x^2"), p(&r3, "x*y"), p(&r3, "x*z")],
            );
            ideal.quotient_presentation().unwrap()
        };
        let mut engine = HdegEngine::new();
        let report = engine.report(&pres).unwrap();
        assert_eq!(report.dim, 2);
        assert_eq!(report.multiplicity, big(1));
        // L = (x)/I has length 1; hdeg = e + C(1,0) ell(H^0) = 1 + 1
        assert_eq!(report.hdeg, big(2));
        assert_eq!(hdeg_gcm(&pres).unwrap(), big(2));
    }
}
