//! Corpus-wide structural invariants beyond the acceptance criteria:
//! weak regularity pins the regularity, the finite-length part detects
//! positive depth, reduced bases ignore generator order, minimal Betti
//! numbers ignore the internal term order, and division-based membership
//! agrees with the truncated Macaulay span.

use std::sync::Arc;

use num_traits::Zero;

use conelab::arith::{Field, PrimeField};
use conelab::basis::{buchberger, saturate_maximal, Ideal};
use conelab::corpus::generate_corpus;
use conelab::instance::InstanceSpec;
use conelab::invariants::{graded_ring_data, least_weakly_regular_in_window};
use conelab::oracle::MacaulaySpan;
use conelab::poly::{PolyRing, Polynomial, TermOrder};
use conelab::resolution::{betti_table, free_resolution, GradedPresentation};

type F = PrimeField;

fn corpus_ideal(spec: &InstanceSpec, order: TermOrder) -> (Arc<PolyRing<F>>, Ideal<F>) {
    let vars: Vec<&str> = spec.vars.iter().map(|s| s.as_str()).collect();
    let ring = PolyRing::new(PrimeField::new(32003).unwrap(), &vars, order);
    let gens = spec.generators(&ring).unwrap();
    let ideal = Ideal::new(&ring, gens);
    (ring, ideal)
}

#[test]
fn weak_regularity_equals_regularity_on_corpus() {
    for spec in generate_corpus(0, 40, 20) {
        let (_, ideal) = corpus_ideal(&spec, TermOrder::grevlex());
        let g = graded_ring_data(&ideal).unwrap();
        let window = g.nvars() as i64 + 6;
        assert_eq!(
            least_weakly_regular_in_window(&g, window),
            g.reg,
            "{:?}",
            spec.label
        );
    }
}

#[test]
fn finite_length_part_detects_depth_on_corpus() {
    for spec in generate_corpus(0, 40, 20) {
        let (_, ideal) = corpus_ideal(&spec, TermOrder::grevlex());
        let g = graded_ring_data(&ideal).unwrap();
        let sat = saturate_maximal(&ideal).unwrap();
        assert_eq!(
            sat.length.is_zero(),
            g.depth > 0,
            "{:?}: lengthL = {}, depth = {}",
            spec.label,
            sat.length,
            g.depth
        );
    }
}

#[test]
fn reduced_basis_ignores_generator_order_on_corpus() {
    for spec in generate_corpus(0, 25, 15) {
        let (ring, ideal) = corpus_ideal(&spec, TermOrder::grevlex());
        let forward = ideal.groebner_basis(&TermOrder::grevlex()).unwrap();
        let mut reversed: Vec<Polynomial<F>> = spec.generators(&ring).unwrap();
        reversed.reverse();
        let backward = buchberger(&reversed).unwrap();
        assert_eq!(forward.len(), backward.len(), "{:?}", spec.label);
        for (a, b) in forward.iter().zip(&backward) {
            assert_eq!(a.terms(), b.terms(), "{:?}", spec.label);
        }
    }
}

#[test]
fn minimal_betti_numbers_ignore_internal_order() {
    for spec in generate_corpus(0, 40, 20) {
        if spec.vars.len() > 3 {
            continue;
        }
        let (_, grev) = corpus_ideal(&spec, TermOrder::grevlex());
        let bt_grev = {
            let pres = grev.quotient_presentation().unwrap();
            betti_table(&free_resolution(&pres, true).unwrap()).unwrap()
        };
        let (ring_lex, lex) = corpus_ideal(&spec, TermOrder::lex());
        let bt_lex = {
            let gb = lex.groebner_basis(&TermOrder::lex()).unwrap();
            let target = ring_lex.with_order(TermOrder::lex());
            let gens: Vec<Polynomial<F>> =
                gb.iter().map(|g| g.map_to_ring(&target)).collect();
            let pres = GradedPresentation::cyclic(&target, &gens).unwrap();
            betti_table(&free_resolution(&pres, true).unwrap()).unwrap()
        };
        assert_eq!(bt_grev.entries, bt_lex.entries, "{:?}", spec.label);
    }
}

#[test]
fn membership_agrees_with_macaulay_span_on_corpus() {
    // homogeneous ideals: the degree-bounded span is exact for membership
    // up to its bound, so agreement is two-sided
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
    for spec in generate_corpus(0, 12, 8) {
        let (ring, ideal) = corpus_ideal(&spec, TermOrder::grevlex());
        let gens = spec.generators(&ring).unwrap();
        let max_gen_deg = gens.iter().filter_map(|g| g.degree()).max().unwrap_or(1);
        let span = MacaulaySpan::new(&gens, 8 + max_gen_deg);
        // members built inside the bound
        for _ in 0..3 {
            let mut f = ring.zero();
            for g in &gens {
                let budget = 8u32.saturating_sub(g.degree().unwrap_or(0));
                let mut exps = vec![0u32; ring.nvars()];
                for _ in 0..rng.gen_range(0..=budget) {
                    exps[rng.gen_range(0..ring.nvars())] += 1;
                }
                let mono = conelab::poly::Monomial::from_exponents(&exps);
                let coeff = ring.field().from_i64(rng.gen_range(0..32003));
                f = f.add(&g.mul_term(&mono, &coeff));
            }
            assert_eq!(
                ideal.contains(&f).unwrap(),
                span.contains(&f),
                "member probe, {:?}",
                spec.label
            );
        }
        // random probes of degree <= 8, mostly non-members
        for _ in 0..3 {
            let mut exps = vec![0u32; ring.nvars()];
            for _ in 0..rng.gen_range(0..=8u32) {
                exps[rng.gen_range(0..ring.nvars())] += 1;
            }
            let mono = conelab::poly::Monomial::from_exponents(&exps);
            let f = ring.monomial_poly(mono);
            assert_eq!(
                ideal.contains(&f).unwrap(),
                span.contains(&f),
                "monomial probe, {:?}",
                spec.label
            );
        }
    }
}
