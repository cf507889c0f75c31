//! Randomized instance corpora: seeded generators for monomial and
//! homogeneous binomial ideals, a directory loader, and the batch runner
//! that aggregates verdicts across instances.

use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analyze::{analyze_instance, AnalyzeOptions};
use crate::arith::PrimeField;
use crate::error::{Error, Result};
use crate::instance::{FieldDesc, InstanceSpec};

/// Where corpus instances come from.
pub enum CorpusSource {
    Generated { seed: u64, monomial: usize, binomial: usize },
    Dir(PathBuf),
}

/// One verdict failure, with enough data to reproduce.
#[derive(Clone, Debug, Serialize)]
pub struct FailureRecord {
    pub label: String,
    pub thm: String,
    pub inputs: String,
    pub bound: String,
    pub actual: String,
}

/// Aggregate outcome of a corpus run.
#[derive(Clone, Debug, Serialize)]
pub struct CorpusSummary {
    pub instances: usize,
    pub verdicts_checked: usize,
    pub verdicts_failed: usize,
    pub skipped_checks: usize,
    pub errors: Vec<String>,
    pub failures: Vec<FailureRecord>,
}

impl CorpusSummary {
    pub fn clean(&self) -> bool {
        self.failures.is_empty() && self.errors.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }

    pub fn render_text(&self) -> String {
        let mut out = format!(
            "corpus: {} instances, {} verdicts checked, {} failed, {} checks skipped\n",
            self.instances, self.verdicts_checked, self.verdicts_failed, self.skipped_checks
        );
        for e in &self.errors {
            out.push_str(&format!("  error: {e}\n"));
        }
        for f in &self.failures {
            out.push_str(&format!(
                "  FAIL {} {} ({}): bound {} actual {}\n",
                f.label, f.thm, f.inputs, f.bound, f.actual
            ));
        }
        out
    }
}

fn random_monomial_text(rng: &mut ChaCha8Rng, vars: &[String], degree: u32) -> String {
    let mut exps = vec![0u32; vars.len()];
    for _ in 0..degree {
        exps[rng.gen_range(0..vars.len())] += 1;
    }
    let mut parts = Vec::new();
    for (v, e) in vars.iter().zip(&exps) {
        match e {
            0 => {}
            1 => parts.push(v.clone()),
            _ => parts.push(format!("{v}^{e}")),
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Random monomial-ideal instances: up to 4 variables, up to 5 generators
/// of degree up to 5.
pub fn random_monomial_instance(seed: u64, index: usize) -> InstanceSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(0x4d4f * index as u64 + 1));
    let nvars = rng.gen_range(2..=4usize);
    let vars: Vec<String> = ["x", "y", "z", "w"][..nvars]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let count = rng.gen_range(1..=5usize);
    let mut gens: Vec<String> = Vec::new();
    for _ in 0..count {
        let degree = rng.gen_range(1..=5u32);
        let g = random_monomial_text(&mut rng, &vars, degree);
        if !gens.contains(&g) {
            gens.push(g);
        }
    }
    let spec = InstanceSpec {
        field: FieldDesc::Prime(PrimeField::DEFAULT_PRIME),
        vars,
        ideal: gens,
        extdeg: None,
        label: Some(format!("monomial-{seed}-{index}")),
    };
    // canonicalize generator texts (coefficients, term order)
    InstanceSpec::parse(&spec.emit()).expect("generated instance parses")
}

/// Random homogeneous binomial-ideal instances: 2 or 3 variables, up to 3
/// generators m1 - c*m2 with both monomials of the same degree.
pub fn random_binomial_instance(seed: u64, index: usize) -> InstanceSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(0xb1_f0 * index as u64 + 2));
    let nvars = rng.gen_range(2..=3usize);
    let vars: Vec<String> = ["x", "y", "z"][..nvars].iter().map(|s| s.to_string()).collect();
    let count = rng.gen_range(1..=3usize);
    let mut gens: Vec<String> = Vec::new();
    for _ in 0..count {
        let degree = rng.gen_range(1..=4u32);
        let m1 = random_monomial_text(&mut rng, &vars, degree);
        let mut m2 = random_monomial_text(&mut rng, &vars, degree);
        for _ in 0..8 {
            if m2 != m1 {
                break;
            }
            m2 = random_monomial_text(&mut rng, &vars, degree);
        }
        let gen = if m1 == m2 {
            m1.clone() // degenerate draw: keep the monomial generator
        } else {
            let c = rng.gen_range(1..PrimeField::DEFAULT_PRIME);
            if c == 1 {
                format!("{m1} - {m2}")
            } else {
                format!("{m1} - {c}*{m2}")
            }
        };
        if !gens.contains(&gen) {
            gens.push(gen);
        }
    }
    let spec = InstanceSpec {
        field: FieldDesc::Prime(PrimeField::DEFAULT_PRIME),
        vars,
        ideal: gens,
        extdeg: None,
        label: Some(format!("binomial-{seed}-{index}")),
    };
    InstanceSpec::parse(&spec.emit()).expect("generated instance parses")
}

pub fn generate_corpus(seed: u64, monomial: usize, binomial: usize) -> Vec<InstanceSpec> {
    let mut out = Vec::with_capacity(monomial + binomial);
    for i in 0..monomial {
        out.push(random_monomial_instance(seed, i));
    }
    for i in 0..binomial {
        out.push(random_binomial_instance(seed, i));
    }
    out
}

fn load_dir(dir: &Path) -> Result<Vec<InstanceSpec>> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| Error::Internal(format!("cannot read {}: {e}", dir.display())))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    paths.sort();
    let mut out = Vec::new();
    for path in paths {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| Error::Internal(format!("cannot read {}: {e}", path.display())))?;
        let mut spec = InstanceSpec::parse(&text)?;
        if spec.label.is_none() {
            spec.label = Some(path.display().to_string());
        }
        out.push(spec);
    }
    Ok(out)
}

/// Analyze every instance and aggregate verdicts. Instance-level
/// computational errors are collected, not fatal.
pub fn corpus_run(source: &CorpusSource, opts: &AnalyzeOptions) -> Result<CorpusSummary> {
    let instances = match source {
        CorpusSource::Generated { seed, monomial, binomial } => {
            generate_corpus(*seed, *monomial, *binomial)
        }
        CorpusSource::Dir(path) => load_dir(path)?,
    };
    let mut summary = CorpusSummary {
        instances: instances.len(),
        verdicts_checked: 0,
        verdicts_failed: 0,
        skipped_checks: 0,
        errors: Vec::new(),
        failures: Vec::new(),
    };
    for spec in &instances {
        let label = spec.label.clone().unwrap_or_else(|| "(unlabeled)".into());
        match analyze_instance(spec, opts) {
            Ok(bundle) => {
                summary.verdicts_checked += bundle.report.verdicts.len();
                summary.skipped_checks += bundle.report.skipped.len();
                for v in &bundle.report.verdicts {
                    if !v.holds {
                        summary.verdicts_failed += 1;
                        summary.failures.push(FailureRecord {
                            label: label.clone(),
                            thm: v.thm.clone(),
                            inputs: v.inputs.clone(),
                            bound: v.bound.to_string(),
                            actual: v.actual.to_string(),
                        });
                    }
                }
            }
            Err(e) => summary.errors.push(format!("{label}: {e}")),
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_deterministic() {
        let a = generate_corpus(7, 5, 5);
        let b = generate_corpus(7, 5, 5);
        assert_eq!(a, b);
        let c = generate_corpus(8, 5, 5);
        assert_ne!(a, c);
    }

    #[test]
    fn generated_instances_parse_and_analyze() {
        for spec in generate_corpus(0, 4, 3) {
            let again = InstanceSpec::parse(&spec.emit()).unwrap();
            assert_eq!(spec, again);
            let bundle = analyze_instance(&spec, &AnalyzeOptions::default()).unwrap();
            assert!(!bundle.report.any_verdict_failed(), "{:?}", spec.label);
        }
    }

    #[test]
    fn small_corpus_run_is_clean() {
        let summary = corpus_run(
            &CorpusSource::Generated { seed: 1, monomial: 6, binomial: 4 },
            &AnalyzeOptions::default(),
        )
        .unwrap();
        assert_eq!(summary.instances, 10);
        assert!(summary.clean(), "{}", summary.render_text());
        assert!(summary.verdicts_checked > 0);
    }

    #[test]
    fn directory_corpus() {
        let dir = tempfile_dir();
        std::fs::write(dir.join("a.ins"), InstanceSpec::family(2).emit()).unwrap();
        std::fs::write(
            dir.join("b.ins"),
            "field: F32003\nvars: x,y\nideal: x^2, x*y\n",
        )
        .unwrap();
        let summary = corpus_run(
            &CorpusSource::Dir(dir.clone()),
            &AnalyzeOptions::default(),
        )
        .unwrap();
        assert_eq!(summary.instances, 2);
        assert!(summary.clean());
        std::fs::remove_dir_all(dir).ok();
    }

    fn tempfile_dir() -> PathBuf {
        let dir = std::env::temp_dir().join(format!("conelab-corpus-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        dir
    }
}
