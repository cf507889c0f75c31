//! Invariants of a standard graded ring R = S/J and of the local rings it
//! models: Hilbert series and functions, Hilbert-Samuel data with the
//! alternating-sign coefficient convention, Castelnuovo-Mumford regularity
//! by two independent routes (Betti table, and graded Ext via local
//! duality), geometric regularity, and the regularity of the quotient by
//! the finite-length part.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith::Field;
use crate::basis::{saturate_maximal, tangent_cone, Ideal};
use crate::error::{Error, Result};
use crate::hilbert::{hilbert_polynomial_text, hs_polynomial_value, HilbertSeries, IntLaurent};
use crate::resolution::{
    analyze_cokernel, betti_table, ext_module, free_resolution, BettiTable, CokernelData,
    FreeResolution, GradedPresentation,
};

/// Nonvanishing data of one local cohomology module H^i_{R+}(R), obtained
/// from Ext^(n-i)(R, S) through local duality.
#[derive(Clone, Debug)]
pub struct CohomologyRow {
    pub i: usize,
    /// Largest degree with a nonzero piece; `None` when H^i vanishes.
    pub a: Option<i64>,
    /// Whether H^i has finite length (the Ext module is zero-dimensional).
    pub finite_length: bool,
    /// Nonzero graded pieces `(degree, dim)`. Complete for finite-length
    /// rows; rows of infinite length are truncated below at a display floor.
    pub entries: Vec<(i64, u64)>,
}

/// Nonvanishing degrees of all local cohomology modules of R.
#[derive(Clone, Debug)]
pub struct CohomologyTable {
    pub rows: Vec<CohomologyRow>,
}

/// Everything the pipeline needs about the graded ring R = S/J for a
/// homogeneous ideal J: resolution data and both regularity routes.
pub struct GradedRingData<F: Field> {
    pub ideal: Ideal<F>,
    pub resolution: FreeResolution<F>,
    pub betti: BettiTable,
    pub depth: usize,
    pub dim: usize,
    pub series: HilbertSeries,
    /// Minimal presentations of Ext^k(R, S) with their initial data,
    /// indexed by k = 0..=nvars.
    pub ext: Vec<(GradedPresentation<F>, CokernelData)>,
    pub reg: i64,
    pub greg: Option<i64>,
    pub cohomology: CohomologyTable,
}

impl<F: Field> GradedRingData<F> {
    pub fn nvars(&self) -> usize {
        self.ideal.ring().nvars()
    }

    /// dim_k H^i_{R+}(R)_n via local duality:
    /// H^i(R)_n = Ext^(n_vars - i)(R, S)_(-n - n_vars).
    pub fn cohomology_dim(&self, i: usize, n: i64) -> BigInt {
        let nv = self.nvars();
        if i > nv {
            return BigInt::zero();
        }
        let (_, data) = &self.ext[nv - i];
        data.dim_at(-n - nv as i64)
    }

    pub fn hilbert_function(&self, n: i64) -> BigInt {
        self.series.hf(n)
    }

    pub fn hilbert_polynomial(&self, n: i64) -> BigInt {
        self.series.hp(n)
    }

    /// Serre's alternating-sum formula at degree n:
    /// h(n) - p(n) = sum_i (-1)^i dim H^i(R)_n. Returns both sides.
    pub fn serre_formula_sides(&self, n: i64) -> (BigInt, BigInt) {
        let lhs = self.hilbert_function(n) - self.hilbert_polynomial(n);
        let mut rhs = BigInt::zero();
        for i in 0..=self.dim {
            let d = self.cohomology_dim(i, n);
            if i % 2 == 0 {
                rhs += d;
            } else {
                rhs -= d;
            }
        }
        (lhs, rhs)
    }

    /// Is R weakly m-regular: H^i(R)_(m-i+1) = 0 for all i >= 0.
    pub fn is_weakly_regular(&self, m: i64) -> bool {
        (0..=self.dim).all(|i| self.cohomology_dim(i, m - i as i64 + 1).is_zero())
    }
}

/// Analyze the graded ring R = S/J for homogeneous J. Fails with an
/// internal-inconsistency error when the two regularity routes disagree.
pub fn graded_ring_data<F: Field>(ideal: &Ideal<F>) -> Result<GradedRingData<F>> {
    if !ideal.is_homogeneous() {
        return Err(Error::NonHomogeneousIdeal);
    }
    if ideal.is_unit()? {
        return Err(Error::UnitIdeal);
    }
    let nv = ideal.ring().nvars();
    let initial = ideal.initial_monomial_ideal(&crate::poly::TermOrder::grevlex())?;
    let series = HilbertSeries::of_monomial_quotient(&initial);
    let dim = initial.quotient_dimension()?;
    debug_assert_eq!(series.dimension(), Some(dim));

    let pres = ideal.quotient_presentation()?;
    let resolution = free_resolution(&pres, true)?;
    let betti = betti_table(&resolution)?;
    let depth = betti.depth();
    let reg_betti = betti.regularity();

    let mut ext = Vec::with_capacity(nv + 1);
    for k in 0..=nv {
        let e = ext_module(&resolution, k)?;
        let data = analyze_cokernel(&e);
        ext.push((e, data));
    }

    // a_i = -nvars - (least nonvanishing degree of Ext^(nvars-i)), read off
    // the minimal presentation
    let mut a: Vec<Option<i64>> = Vec::with_capacity(dim + 1);
    for i in 0..=dim {
        let (_, data) = &ext[nv - i];
        let ai = if data.is_zero_module() {
            None
        } else {
            Some(-(nv as i64) - data.min_nonvanishing_degree_of_minimal().unwrap())
        };
        a.push(ai);
    }
    let reg_cohomology = a
        .iter()
        .enumerate()
        .filter_map(|(i, ai)| ai.map(|v| v + i as i64))
        .max()
        .ok_or_else(|| Error::Internal("no nonvanishing local cohomology".into()))?;
    if reg_cohomology != reg_betti {
        return Err(Error::Internal(format!(
            "regularity routes disagree: Betti {reg_betti}, duality {reg_cohomology}"
        )));
    }
    let greg = a
        .iter()
        .enumerate()
        .skip(1)
        .filter_map(|(i, ai)| ai.map(|v| v + i as i64))
        .max();

    // cohomology table rows, complete for finite-length H^i
    let display_floor = -(nv as i64)
        - ext
            .iter()
            .flat_map(|(p, _)| p.target_shifts().iter().copied())
            .max()
            .unwrap_or(0)
        - 2;
    let mut rows = Vec::with_capacity(dim + 1);
    for i in 0..=dim {
        let (_, data) = &ext[nv - i];
        let finite_length = data.is_zero_module() || data.dimension() == Some(0);
        let mut entries = Vec::new();
        if let Some(ai) = a[i] {
            let lo = if finite_length {
                // complete support from the series: lowest Ext degree
                // corresponds to the highest cohomology degree and dually
                -(nv as i64) - ext_support_hi(&ext[nv - i].1)
            } else {
                display_floor.min(ai)
            };
            for n in (lo..=ai).rev() {
                let d = data.dim_at(-n - nv as i64);
                if !d.is_zero() {
                    entries.push((n, u64::try_from(&d).unwrap_or(u64::MAX)));
                }
            }
        }
        rows.push(CohomologyRow { i, a: a[i], finite_length, entries });
    }

    Ok(GradedRingData {
        ideal: ideal.clone(),
        resolution,
        betti,
        depth,
        dim,
        series,
        ext,
        reg: reg_betti,
        greg,
        cohomology: CohomologyTable { rows },
    })
}

/// Highest degree with a nonzero piece of a finite-length module.
fn ext_support_hi(data: &CokernelData) -> i64 {
    let (q, _) = data.series.reduced();
    q.hi_degree()
}

/// Hilbert data of a local ring A through its associated graded ring G:
/// h_G, the Hilbert-Samuel values ell(A/m^(n+1)) as partial sums, the
/// coefficients e_0..e_d, and text forms of both polynomials.
#[derive(Clone, Debug)]
pub struct HilbertData {
    pub numerator: IntLaurent,
    pub q: IntLaurent,
    pub dim: usize,
    pub n0: i64,
    pub h: Vec<BigInt>,
    pub hs: Vec<BigInt>,
    pub e: Vec<BigInt>,
    pub hilbert_polynomial_text: String,
    pub hs_polynomial_text: String,
}

/// Build Hilbert-Samuel data from the graded data of G, tabulated to
/// n0 = reg(G) + d + 10 (or further when a longer horizon is requested).
/// The sign convention of the e_i is validated against the computed
/// Hilbert-Samuel values at five points beyond reg(G); a mismatch is an
/// internal error, never a silent sign flip.
pub fn hilbert_samuel_data<F: Field>(
    graded: &GradedRingData<F>,
    min_horizon: Option<i64>,
) -> Result<HilbertData> {
    let series = &graded.series;
    let reg = graded.reg;
    let d = graded.dim;
    let mut n0 = reg + d as i64 + 10;
    if let Some(h) = min_horizon {
        n0 = n0.max(h);
    }
    let (q, _) = series.reduced();
    let e = series.hs_coefficients()?;
    let mut h = Vec::with_capacity(n0 as usize + 1);
    let mut hs = Vec::with_capacity(n0 as usize + 1);
    let mut acc = BigInt::zero();
    for n in 0..=n0 {
        let hn = series.hf(n);
        acc += &hn;
        h.push(hn);
        hs.push(acc.clone());
    }
    for n in (reg + 1)..=(reg + 5) {
        let claimed = hs_polynomial_value(&e, n);
        let actual = &hs[n as usize];
        if &claimed != actual {
            return Err(Error::Internal(format!(
                "Hilbert-Samuel coefficient convention mismatch at n = {n}: \
                 polynomial gives {claimed}, partial sums give {actual}"
            )));
        }
    }
    let hs_poly_text = render_hs_polynomial(&e);
    Ok(HilbertData {
        numerator: series.numerator().clone(),
        q: q.clone(),
        dim: d,
        n0,
        h,
        hs,
        e,
        hilbert_polynomial_text: hilbert_polynomial_text(&q, d),
        hs_polynomial_text: hs_poly_text,
    })
}

fn render_hs_polynomial(e: &[BigInt]) -> String {
    let d = e.len() - 1;
    let mut parts = Vec::new();
    for (i, ei) in e.iter().enumerate() {
        if ei.is_zero() {
            continue;
        }
        let signed = if i % 2 == 0 { ei.clone() } else { -ei };
        let body = format!("C(X+{}, {})", d - i, d - i);
        if parts.is_empty() {
            parts.push(if signed.is_negative() {
                format!("-{}*{}", signed.magnitude(), body)
            } else {
                format!("{signed}*{body}")
            });
        } else {
            let sign = if signed.is_negative() { "-" } else { "+" };
            parts.push(format!("{sign} {}*{}", signed.magnitude(), body));
        }
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" ")
    }
}

/// Regularity of G' = associated graded ring of A/L, where L is the
/// finite-length part cut out by saturation, together with ell(L).
/// `reg_gprime` is `None` exactly when A itself has finite length (L = A).
pub struct QuotientModLData<F: Field> {
    pub saturation: Ideal<F>,
    pub length: BigInt,
    pub reg_gprime: Option<i64>,
}

pub fn reg_of_quotient_mod_l<F: Field>(ideal: &Ideal<F>) -> Result<QuotientModLData<F>> {
    let sat = saturate_maximal(ideal)?;
    if sat.saturation.is_unit()? {
        return Ok(QuotientModLData {
            saturation: sat.saturation,
            length: sat.length,
            reg_gprime: None,
        });
    }
    let cone = tangent_cone(&sat.saturation)?;
    let pres = cone.initial_ideal.quotient_presentation()?;
    let res = free_resolution(&pres, true)?;
    let reg = betti_table(&res)?.regularity();
    Ok(QuotientModLData {
        saturation: sat.saturation,
        length: sat.length,
        reg_gprime: Some(reg),
    })
}

/// Betti-route regularity packaged for callers that do not need the full
/// graded analysis.
pub fn regularity_of_graded_quotient<F: Field>(ideal: &Ideal<F>) -> Result<i64> {
    let pres = ideal.quotient_presentation()?;
    let res = free_resolution(&pres, true)?;
    Ok(betti_table(&res)?.regularity())
}

/// Least m such that R is weakly m-regular, scanned over a finite window
/// below the known regularity. Together with weak regularity implying
/// regularity for cyclic quotients, this must land exactly on reg(R).
pub fn least_weakly_regular_in_window<F: Field>(
    graded: &GradedRingData<F>,
    window: i64,
) -> i64 {
    let mut least = graded.reg;
    for m in (graded.reg - window..graded.reg).rev() {
        if graded.is_weakly_regular(m) {
            least = m;
        } else {
            break;
        }
    }
    least
}

/// Betti table rendered as sorted (i, j, rank) triples.
pub fn betti_triples(betti: &BettiTable) -> Vec<(usize, i64, u64)> {
    let mut out: Vec<(usize, i64, u64)> = betti
        .entries
        .iter()
        .map(|(&(i, j), &b)| (i, j, b))
        .collect();
    out.sort();
    out
}

/// Dimensions of all graded pieces of the cohomology table in a degree
/// window, for rendering.
pub fn cohomology_window(table: &CohomologyTable) -> BTreeMap<usize, Vec<(i64, u64)>> {
    table
        .rows
        .iter()
        .map(|row| (row.i, row.entries.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::PrimeField;
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

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn depth_zero_example_regularity_both_routes() {
        let r = ring2();
        let ideal = Ideal::new(&r, vec![p(&r, "x^2"), p(&r, "x*y")]);
        let g = graded_ring_data(&ideal).unwrap();
        assert_eq!(g.reg, 1);
        assert_eq!(g.depth, 0);
        assert_eq!(g.dim, 1);
        // depth 0: g-reg <= reg; here H^1 tops out at degree -1, so greg = 0
        assert_eq!(g.greg, Some(0));
        // a_0 = 1 (H^0 is k in degree 1), a_1 = -1
        assert_eq!(g.cohomology.rows[0].a, Some(1));
        assert_eq!(g.cohomology.rows[1].a, Some(-1));
        assert!(g.cohomology.rows[0].finite_length);
        assert!(!g.cohomology.rows[1].finite_length);
        assert_eq!(g.cohomology.rows[0].entries, vec![(1, 1)]);
    }

    #[test]
    fn polynomial_ring_data() {
        let r = ring2();
        let ideal = Ideal::new(&r, vec![]);
        let g = graded_ring_data(&ideal).unwrap();
        assert_eq!(g.reg, 0);
        assert_eq!(g.greg, Some(0));
        assert_eq!(g.depth, 2);
        assert_eq!(g.dim, 2);
    }

    #[test]
    fn family_regularity_equals_r() {
        let r = ring2();
        for rr in 1..=6 {
            let ideal = Ideal::new(&r, vec![p(&r, "x^2"), p(&r, &format!("x*y^{rr}"))]);
            let g = graded_ring_data(&ideal).unwrap();
            assert_eq!(g.reg, rr as i64, "r = {rr}");
        }
    }

    #[test]
    fn cm_quotient_greg_equals_reg() {
        let r = ring2();
        // S/(x^2): Cohen-Macaulay of positive depth
        let ideal = Ideal::new(&r, vec![p(&r, "x^2")]);
        let g = graded_ring_data(&ideal).unwrap();
        assert_eq!(g.depth, 1);
        assert_eq!(g.reg, 1);
        assert_eq!(g.greg, Some(1));
    }

    #[test]
    fn serre_formula_on_examples() {
        let r = ring2();
        for gens in [
            vec![p(&r, "x^2"), p(&r, "x*y")],
            vec![p(&r, "x^2"), p(&r, "x*y^3")],
            vec![p(&r, "x^2")],
            vec![],
        ] {
            let ideal = Ideal::new(&r, gens);
            let g = graded_ring_data(&ideal).unwrap();
            for n in 0..=(g.reg + 5) {
                let (lhs, rhs) = g.serre_formula_sides(n);
                assert_eq!(lhs, rhs, "degree {n}");
            }
            // postulation: h(n) = p(n) beyond the regularity
            for n in (g.reg + 1)..=(g.reg + 10) {
                assert_eq!(g.hilbert_function(n), g.hilbert_polynomial(n));
            }
        }
    }

    #[test]
    fn weak_regularity_pins_the_regularity() {
        let r = ring2();
        for gens in [
            vec![p(&r, "x^2"), p(&r, "x*y")],
            vec![p(&r, "x^2"), p(&r, "x*y^4")],
            vec![p(&r, "x^3")],
        ] {
            let ideal = Ideal::new(&r, gens);
            let g = graded_ring_data(&ideal).unwrap();
            assert_eq!(least_weakly_regular_in_window(&g, 6 + g.nvars() as i64), g.reg);
        }
    }

    #[test]
    fn hilbert_samuel_of_family() {
        let r = ring2();
        for rr in 1i64..=5 {
            let ideal = Ideal::new(&r, vec![p(&r, "x^2"), p(&r, &format!("x*y^{rr}"))]);
            let g = graded_ring_data(&ideal).unwrap();
            let hd = hilbert_samuel_data(&g, Some(rr + 10)).unwrap();
            assert_eq!(hd.dim, 1);
            assert_eq!(hd.e, vec![big(1), big(-rr)]);
            for n in 0..=(rr + 10) {
                let expect = if n <= rr { 2 * n + 1 } else { n + rr + 1 };
                assert_eq!(hd.hs[n as usize], big(expect), "r={rr} n={n}");
            }
            // differencing the Hilbert-Samuel values recovers h_G
            for n in 1..hd.hs.len() {
                assert_eq!(&hd.hs[n] - &hd.hs[n - 1], hd.h[n]);
            }
        }
    }

    #[test]
    fn regular_ring_hilbert_samuel() {
        let r = ring2();
        let ideal = Ideal::new(&r, vec![]);
        let g = graded_ring_data(&ideal).unwrap();
        let hd = hilbert_samuel_data(&g, None).unwrap();
        assert_eq!(hd.e, vec![big(1), big(0), big(0)]);
        for (n, v) in hd.hs.iter().enumerate() {
            assert_eq!(v, &crate::arith::binomial_i64(n as i64 + 2, 2));
        }
        assert_eq!(hd.hilbert_polynomial_text, "X + 1");
    }

    #[test]
    fn quotient_mod_finite_length_part() {
        let r = ring2();
        // (x^2, xy): G' = k[y], reg 0, ell(L) = 1; bound 1 <= 0 + 1
        let ideal = Ideal::new(&r, vec![p(&r, "x^2"), p(&r, "x*y")]);
        let q = reg_of_quotient_mod_l(&ideal).unwrap();
        assert_eq!(q.reg_gprime, Some(0));
        assert_eq!(q.length, big(1));
        // family: reg(G') = 0, ell(L) = r, reg(G) = r <= 0 + r
        for rr in 1..=4i64 {
            let ideal = Ideal::new(&r, vec![p(&r, "x^2"), p(&r, &format!("x*y^{rr}"))]);
            let q = reg_of_quotient_mod_l(&ideal).unwrap();
            assert_eq!(q.reg_gprime, Some(0));
            assert_eq!(q.length, big(rr));
        }
        // CM: L = 0
        let cm = Ideal::new(&r, vec![p(&r, "x^2")]);
        let q = reg_of_quotient_mod_l(&cm).unwrap();
        assert_eq!(q.length, big(0));
        assert_eq!(q.reg_gprime, Some(1));
        // Artinian: L = A, no G'
        let art = Ideal::new(&r, vec![p(&r, "x"), p(&r, "y^2")]);
        let q = reg_of_quotient_mod_l(&art).unwrap();
        assert_eq!(q.reg_gprime, None);
        assert_eq!(q.length, big(2));
    }
}
