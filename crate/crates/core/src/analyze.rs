//! End-to-end analysis of one instance: tangent cone, saturation, graded
//! invariants, Hilbert-Samuel data, extended degree, and bound verdicts,
//! assembled into the structured report plus a human-readable rendering.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith::{Field, PrimeField, Rationals};
use crate::basis::{tangent_cone, Ideal};
use crate::bounds::{verify_instance, InstanceFacts};
use crate::degree::HdegEngine;
use crate::error::{Error, Result};
use crate::instance::{FieldDesc, InstanceSpec};
use crate::invariants::{
    betti_triples, graded_ring_data, hilbert_samuel_data, reg_of_quotient_mod_l,
};
use crate::poly::{PolyRing, TermOrder};
use crate::report::{AnalysisReport, InstanceEcho};

#[derive(Clone, Debug, Default)]
pub struct AnalyzeOptions {
    /// Tabulate and verify the Hilbert-Samuel function out to at least this
    /// n (default 20).
    pub horizon: Option<i64>,
}

/// Structured report plus the rendered text view.
pub struct AnalysisBundle {
    pub report: AnalysisReport,
    pub text: String,
}

pub fn analyze_instance(spec: &InstanceSpec, opts: &AnalyzeOptions) -> Result<AnalysisBundle> {
    match &spec.field {
        FieldDesc::Prime(p) => run(PrimeField::new(*p)?, spec, opts),
        FieldDesc::Rationals => run(Rationals, spec, opts),
    }
}

fn run<F: Field>(field: F, spec: &InstanceSpec, opts: &AnalyzeOptions) -> Result<AnalysisBundle> {
    let verdict_horizon = opts.horizon.unwrap_or(20).max(0);
    let mut timings: Vec<(&'static str, f64)> = Vec::new();
    let mut stamp = Instant::now();
    let lap = |timings: &mut Vec<(&'static str, f64)>, stage: &'static str, s: &mut Instant| {
        timings.push((stage, s.elapsed().as_secs_f64() * 1e3));
        *s = Instant::now();
    };

    let var_refs: Vec<&str> = spec.vars.iter().map(|s| s.as_str()).collect();
    let ring = PolyRing::new(field, &var_refs, TermOrder::grevlex());
    let gens = spec.generators(&ring)?;
    let ideal = Ideal::new(&ring, gens);
    lap(&mut timings, "parse", &mut stamp);

    let cone = tangent_cone(&ideal).map_err(|e| e.at_stage("tangent-cone"))?;
    lap(&mut timings, "tangent-cone", &mut stamp);

    let quotient_mod_l =
        reg_of_quotient_mod_l(&ideal).map_err(|e| e.at_stage("saturation"))?;
    lap(&mut timings, "saturation", &mut stamp);

    let graded =
        graded_ring_data(&cone.initial_ideal).map_err(|e| e.at_stage("graded-ring"))?;
    lap(&mut timings, "graded-ring", &mut stamp);

    let hilbert = hilbert_samuel_data(&graded, Some(verdict_horizon))
        .map_err(|e| e.at_stage("hilbert"))?;
    lap(&mut timings, "hilbert", &mut stamp);

    let e0 = hilbert.e[0].clone();
    let degree_report = if ideal.is_homogeneous() {
        let pres = ideal.quotient_presentation().map_err(|e| e.at_stage("degree"))?;
        let mut engine = HdegEngine::new();
        let rep = engine.report(&pres).map_err(|e| e.at_stage("degree"))?;
        if rep.multiplicity != e0 {
            return Err(Error::Internal(format!(
                "multiplicity mismatch: Hilbert series gives {e0}, degree engine gives {}",
                rep.multiplicity
            )));
        }
        if rep.dim != graded.dim {
            return Err(Error::Internal(format!(
                "dimension mismatch: graded ring {} vs module {}",
                graded.dim, rep.dim
            )));
        }
        Some(rep)
    } else {
        None
    };
    lap(&mut timings, "degree", &mut stamp);

    let extended_degree = match &degree_report {
        Some(rep) => Some(rep.hdeg.clone()),
        None => spec.extdeg.clone(),
    };

    let postulation_defect = ((graded.reg + 1)..=(graded.reg + 10))
        .map(|n| (graded.hilbert_function(n) - graded.hilbert_polynomial(n)).abs())
        .max()
        .unwrap_or_else(BigInt::zero);
    let serre_defect = (0..=(graded.reg + 5))
        .map(|n| {
            let (lhs, rhs) = graded.serre_formula_sides(n);
            (lhs - rhs).abs()
        })
        .max()
        .unwrap_or_else(BigInt::zero);

    let facts = InstanceFacts {
        dim: graded.dim,
        e: e0.clone(),
        extended_degree: extended_degree.clone(),
        length_l: quotient_mod_l.length.clone(),
        reg_g: graded.reg,
        greg: graded.greg,
        reg_gprime: quotient_mod_l.reg_gprime,
        hs_values: hilbert.hs[..=(verdict_horizon as usize).min(hilbert.hs.len() - 1)].to_vec(),
        e_coeffs: hilbert.e.clone(),
        postulation_defect,
        serre_defect,
    };
    let (verdicts, skipped) = verify_instance(&facts);
    lap(&mut timings, "verdicts", &mut stamp);

    let deviation = extended_degree.as_ref().map(|d| d - &e0);
    let report = AnalysisReport {
        instance: InstanceEcho {
            label: spec.label.clone(),
            field: spec.field.as_text(),
            vars: spec.vars.clone(),
            ideal: spec.ideal.clone(),
            extdeg: spec.extdeg.clone(),
        },
        dim: graded.dim,
        depth: graded.depth,
        e: e0,
        hdeg: extended_degree,
        deviation,
        length_l: quotient_mod_l.length.clone(),
        reg: graded.reg,
        greg: graded.greg,
        betti: betti_triples(&graded.betti),
        hs: hilbert.hs.clone(),
        e_coeffs: hilbert.e.clone(),
        verdicts,
        skipped,
    };

    let text = render_text(spec, &cone, &graded, &hilbert, &quotient_mod_l, &degree_report, &report, &timings);
    Ok(AnalysisBundle { report, text })
}

#[allow(clippy::too_many_arguments)]
fn render_text<F: Field>(
    spec: &InstanceSpec,
    cone: &crate::basis::TangentCone<F>,
    graded: &crate::invariants::GradedRingData<F>,
    hilbert: &crate::invariants::HilbertData,
    quotient_mod_l: &crate::invariants::QuotientModLData<F>,
    degree_report: &Option<crate::degree::DegreeReport>,
    report: &AnalysisReport,
    timings: &[(&'static str, f64)],
) -> String {
    let mut out = String::new();
    let push = |out: &mut String, s: String| {
        out.push_str(&s);
        out.push('\n');
    };

    push(&mut out, format!("== instance: {}", spec.label.as_deref().unwrap_or("(unlabeled)")));
    push(&mut out, format!("   field {}   vars {}", spec.field.as_text(), spec.vars.join(",")));
    push(&mut out, format!("   ideal: {}", spec.ideal.join(", ")));

    push(&mut out, "-- tangent cone".to_string());
    let sb: Vec<String> = cone.standard_basis.iter().map(|p| p.to_text()).collect();
    push(&mut out, format!("   standard basis: {}", join_or_zero(&sb)));
    let init: Vec<String> = graded
        .ideal
        .gens()
        .iter()
        .map(|p| p.to_text())
        .collect();
    push(&mut out, format!("   in*(I): ({})", join_or_zero(&init)));

    push(&mut out, "-- associated graded ring G".to_string());
    push(
        &mut out,
        format!(
            "   dim {}   depth {}   reg {}   g-reg {}",
            graded.dim,
            graded.depth,
            graded.reg,
            graded.greg.map(|v| v.to_string()).unwrap_or_else(|| "-inf".into())
        ),
    );
    let betti: Vec<String> = report
        .betti
        .iter()
        .map(|(i, j, b)| format!("b[{i},{j}]={b}"))
        .collect();
    push(&mut out, format!("   betti: {}", betti.join(" ")));
    for row in &graded.cohomology.rows {
        let a = row.a.map(|v| v.to_string()).unwrap_or_else(|| "-inf".into());
        let entries: Vec<String> = row
            .entries
            .iter()
            .map(|(n, d)| format!("{n}:{d}"))
            .collect();
        let tail = if row.finite_length { "" } else { " (infinite length; truncated below)" };
        push(
            &mut out,
            format!("   H^{}: a = {a}; dims {{{}}}{tail}", row.i, entries.join(", ")),
        );
    }

    push(&mut out, "-- Hilbert data".to_string());
    push(&mut out, format!("   h_G:  {}", join_bigints(&hilbert.h)));
    push(&mut out, format!("   ell(A/m^(n+1)): {}", join_bigints(&hilbert.hs)));
    push(&mut out, format!("   e_i: {}", join_bigints(&hilbert.e)));
    push(&mut out, format!("   p_G(X) = {}", hilbert.hilbert_polynomial_text));
    push(&mut out, format!("   P_A(X) = {}", hilbert.hs_polynomial_text));

    push(&mut out, "-- finite-length part".to_string());
    let satgens: Vec<String> = quotient_mod_l
        .saturation
        .gens()
        .iter()
        .map(|p| p.to_text())
        .collect();
    push(&mut out, format!("   (I : m^inf) = ({})", join_or_zero(&satgens)));
    push(
        &mut out,
        format!(
            "   ell(L) = {}   reg(G') = {}",
            quotient_mod_l.length,
            quotient_mod_l
                .reg_gprime
                .map(|v| v.to_string())
                .unwrap_or_else(|| "-inf (A/L = 0)".into())
        ),
    );

    push(&mut out, "-- extended degree".to_string());
    match degree_report {
        Some(rep) => {
            push(
                &mut out,
                format!(
                    "   e = {}   hdeg = {}   I(A) = {}   gCM: {}",
                    rep.multiplicity, rep.hdeg, rep.deviation, rep.generalized_cm
                ),
            );
            if let Some(lengths) = &rep.cohomology_lengths {
                push(&mut out, format!("   ell(H^i): {}", join_bigints(lengths)));
            }
            for lvl in &rep.levels {
                push(
                    &mut out,
                    format!(
                        "   level i={} Ext^{}: dim {}, hdeg {}, weight {}",
                        lvl.i,
                        lvl.ext_index,
                        lvl.dim.map(|v| v.to_string()).unwrap_or_else(|| "-1".into()),
                        lvl.hdeg,
                        lvl.weight
                    ),
                );
            }
        }
        None => match &spec.extdeg {
            Some(d) => push(&mut out, format!("   external D(A) = {d} (ideal not homogeneous)")),
            None => push(
                &mut out,
                "   unavailable: ideal not homogeneous and no external D(A)".to_string(),
            ),
        },
    }

    let ok = report.verdicts.iter().filter(|v| v.holds).count();
    push(
        &mut out,
        format!("-- verdicts ({} checked, {} hold)", report.verdicts.len(), ok),
    );
    for v in &report.verdicts {
        push(
            &mut out,
            format!(
                "   [{}] {} ({}): bound {} actual {} slack {}",
                if v.holds { "ok" } else { "FAIL" },
                v.thm,
                v.inputs,
                v.bound,
                v.actual,
                v.slack
            ),
        );
    }
    for s in &report.skipped {
        push(&mut out, format!("   [skip] {}: {}", s.check, s.reason));
    }

    let total: f64 = timings.iter().map(|(_, ms)| ms).sum();
    let stages: Vec<String> = timings.iter().map(|(n, ms)| format!("{n} {ms:.1}ms")).collect();
    push(&mut out, format!("-- timing: {} (total {total:.1}ms)", stages.join(", ")));
    out
}

fn join_or_zero(items: &[String]) -> String {
    if items.is_empty() {
        "0".to_string()
    } else {
        items.join(", ")
    }
}

fn join_bigints(v: &[BigInt]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn analyze_text(text: &str) -> AnalysisBundle {
        let spec = InstanceSpec::parse(text).unwrap();
        analyze_instance(&spec, &AnalyzeOptions::default()).unwrap()
    }

    #[test]
    fn family_r2_report() {
        let spec = InstanceSpec::family(2);
        let bundle = analyze_instance(&spec, &AnalyzeOptions::default()).unwrap();
        let r = &bundle.report;
        assert_eq!(r.dim, 1);
        assert_eq!(r.e, BigInt::from(1));
        assert_eq!(r.hdeg, Some(BigInt::from(3)));
        assert_eq!(r.deviation, Some(BigInt::from(2)));
        assert_eq!(r.length_l, BigInt::from(2));
        assert_eq!(r.reg, 2);
        assert_eq!(r.e_coeffs, vec![BigInt::from(1), BigInt::from(-2)]);
        assert!(!r.any_verdict_failed());
        assert!(r.skipped.is_empty());
        // deterministic modulo timing: identical runs give identical JSON
        let again = analyze_instance(&spec, &AnalyzeOptions::default()).unwrap();
        assert_eq!(bundle.report.to_json(), again.report.to_json());
    }

    #[test]
    fn zero_ideal_regular_ring() {
        let bundle = analyze_text("field: F32003\nvars: x,y\nideal: 0\n");
        let r = &bundle.report;
        assert_eq!(r.dim, 2);
        assert_eq!(r.depth, 2);
        assert_eq!(r.reg, 0);
        assert_eq!(r.greg, Some(0));
        assert_eq!(r.e, BigInt::from(1));
        assert_eq!(r.hdeg, Some(BigInt::from(1)));
        assert!(!r.any_verdict_failed());
    }

    #[test]
    fn acceptance_tangent_cone_instance() {
        let bundle = analyze_text("field: F32003\nvars: x,y\nideal: x^2 - y^5, x*y^2\n");
        let r = &bundle.report;
        // in*(I) = (x^2, x*y^2, y^7), finite length: dim 0
        assert_eq!(r.dim, 0);
        assert!(bundle.text.contains("x^2, x*y^2, y^7")
            || bundle.text.contains("x*y^2, x^2, y^7"));
        // non-homogeneous without extdeg: bound checks are skipped, not dropped
        assert!(r.hdeg.is_none());
        assert!(!r.skipped.is_empty());
        assert!(!r.any_verdict_failed());
    }

    #[test]
    fn non_homogeneous_with_external_degree() {
        let bundle =
            analyze_text("field: Q\nvars: x,y\nideal: x^2 - y^5, x*y^2\nextdeg: 9\n");
        let r = &bundle.report;
        assert_eq!(r.hdeg, Some(BigInt::from(9)));
        assert!(!r.any_verdict_failed());
    }

    #[test]
    fn rational_field_analysis() {
        let bundle = analyze_text("field: Q\nvars: x,y\nideal: x^2, x*y\n");
        let r = &bundle.report;
        assert_eq!(r.reg, 1);
        assert_eq!(r.hdeg, Some(BigInt::from(2)));
        assert!(!r.any_verdict_failed());
    }

    #[test]
    fn stage_errors_carry_the_stage() {
        let spec = InstanceSpec::parse("field: F32003\nvars: x\nideal: x + 1\n").unwrap();
        let Err(err) = analyze_instance(&spec, &AnalyzeOptions::default()) else {
            panic!("expected a stage error");
        };
        match err {
            Error::Stage { stage, source } => {
                assert_eq!(stage, "tangent-cone");
                assert_eq!(*source, Error::UnitIdealLocally);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
