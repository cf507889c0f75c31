//! Graded free modules and their homological machinery: module Groebner
//! bases under Schreyer orders, syzygies, free resolutions with
//! minimalization, Betti tables, graded Ext modules, and graded-piece
//! dimensions.
//!
//! All resolutions here are over the polynomial ring itself with global
//! orders; local structure enters elsewhere through initial ideals.

use std::collections::BinaryHeap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::Field;
use crate::error::{Error, Result};
use crate::hilbert::{HilbertSeries, IntLaurent};
use crate::monomial_ideal::MonomialIdeal;
use crate::poly::{Monomial, PolyRing, Polynomial, TermOrder};

// ---------------------------------------------------------------------------
// module orders

/// Per-row comparison data for a free module: an accumulated monomial weight
/// and a position tiebreak chain. Fresh modules use weight 1 and the row
/// index; Schreyer orders push the leading term of the previous level's
/// generator on top.
#[derive(Clone, Debug)]
struct RowKey {
    weight: Monomial,
    tie: Vec<usize>,
}

/// Order on module terms `m * e_row`: compare `m * weight[row]` in the base
/// ring order, then the tiebreak chains (lexicographically smaller chain =
/// greater term, so lower positions win).
#[derive(Clone, Debug)]
pub struct ModOrder {
    base: TermOrder,
    keys: Arc<Vec<RowKey>>,
}

impl ModOrder {
    pub fn trivial(base: TermOrder, nrows: usize, nvars: usize) -> Self {
        assert!(base.is_global(), "module orders require a global base order");
        let keys = (0..nrows)
            .map(|r| RowKey { weight: Monomial::one(nvars), tie: vec![r] })
            .collect();
        ModOrder { base, keys: Arc::new(keys) }
    }

    /// The Schreyer order induced by leading terms of the previous level's
    /// Groebner basis.
    fn schreyer(&self, leads: &[(Monomial, usize)]) -> Self {
        let keys = leads
            .iter()
            .enumerate()
            .map(|(i, (mono, row))| {
                let prev = &self.keys[*row];
                let mut tie = prev.tie.clone();
                tie.push(i);
                RowKey { weight: mono.mul(&prev.weight), tie }
            })
            .collect();
        ModOrder { base: self.base.clone(), keys: Arc::new(keys) }
    }

    pub fn nrows(&self) -> usize {
        self.keys.len()
    }

    fn compare(&self, a: (&Monomial, usize), b: (&Monomial, usize)) -> std::cmp::Ordering {
        let ka = &self.keys[a.1];
        let kb = &self.keys[b.1];
        self.base
            .compare(&a.0.mul(&ka.weight), &b.0.mul(&kb.weight))
            .then_with(|| kb.tie.cmp(&ka.tie))
    }
}

// ---------------------------------------------------------------------------
// module vectors

/// An element of a free module: terms `(monomial, row, coefficient)` sorted
/// strictly descending under a `ModOrder`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModVec<F: Field> {
    terms: Vec<(Monomial, usize, F::Elem)>,
}

impl<F: Field> ModVec<F> {
    pub fn zero() -> Self {
        ModVec { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, usize, F::Elem)] {
        &self.terms
    }

    fn leading(&self) -> Option<(&Monomial, usize, &F::Elem)> {
        self.terms.first().map(|(m, r, c)| (m, *r, c))
    }

    /// Degree of a homogeneous element given ambient shifts.
    pub fn degree(&self, shifts: &[i64]) -> Option<i64> {
        self.terms
            .first()
            .map(|(m, r, _)| m.degree() as i64 + shifts[*r])
    }

    pub fn is_homogeneous(&self, shifts: &[i64]) -> bool {
        match self.degree(shifts) {
            None => true,
            Some(d) => self
                .terms
                .iter()
                .all(|(m, r, _)| m.degree() as i64 + shifts[*r] == d),
        }
    }
}

/// Context for module arithmetic: the ring plus the active module order.
pub struct ModCtx<F: Field> {
    pub ring: Arc<PolyRing<F>>,
    pub order: ModOrder,
}

impl<F: Field> ModCtx<F> {
    /// Module context over the ring's own (global) order.
    pub fn new(ring: Arc<PolyRing<F>>, nrows: usize) -> Self {
        let base = if ring.order().is_global() {
            ring.order().clone()
        } else {
            TermOrder::grevlex()
        };
        let order = ModOrder::trivial(base, nrows, ring.nvars());
        ModCtx { ring, order }
    }

    fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn normalize(&self, mut terms: Vec<(Monomial, usize, F::Elem)>) -> ModVec<F> {
        terms.sort_by(|a, b| self.order.compare((&b.0, b.1), (&a.0, a.1)));
        let mut out: Vec<(Monomial, usize, F::Elem)> = Vec::with_capacity(terms.len());
        for (m, r, c) in terms {
            match out.last_mut() {
                Some((pm, pr, pc)) if *pm == m && *pr == r => {
                    *pc = self.field().add(pc, &c);
                    if self.field().is_zero(pc) {
                        out.pop();
                    }
                }
                _ => {
                    if !self.field().is_zero(&c) {
                        out.push((m, r, c));
                    }
                }
            }
        }
        ModVec { terms: out }
    }

    pub fn from_polys(&self, column: &[Polynomial<F>]) -> ModVec<F> {
        let mut terms = Vec::new();
        for (row, p) in column.iter().enumerate() {
            for (m, c) in p.terms() {
                terms.push((m.clone(), row, c.clone()));
            }
        }
        self.normalize(terms)
    }

    pub fn to_polys(&self, v: &ModVec<F>, nrows: usize) -> Vec<Polynomial<F>> {
        let mut buckets: Vec<Vec<(Monomial, F::Elem)>> = vec![Vec::new(); nrows];
        for (m, r, c) in &v.terms {
            buckets[*r].push((m.clone(), c.clone()));
        }
        buckets.into_iter().map(|b| self.ring.from_terms(b)).collect()
    }

    fn unit(&self, row: usize, nvars: usize) -> ModVec<F> {
        ModVec { terms: vec![(Monomial::one(nvars), row, self.field().one())] }
    }

    /// `a - (mono * coeff) * b`, merging sorted term lists.
    fn sub_scaled(&self, a: &ModVec<F>, mono: &Monomial, coeff: &F::Elem, b: &ModVec<F>) -> ModVec<F> {
        let f = self.field();
        let scaled: Vec<(Monomial, usize, F::Elem)> = b
            .terms
            .iter()
            .map(|(m, r, c)| (m.mul(mono), *r, f.neg(&f.mul(c, coeff))))
            .collect();
        // scaled stays sorted: the order is multiplicative in the monomial
        let mut out = Vec::with_capacity(a.terms.len() + scaled.len());
        let (mut i, mut j) = (0, 0);
        while i < a.terms.len() && j < scaled.len() {
            let ta = &a.terms[i];
            let tb = &scaled[j];
            match self.order.compare((&ta.0, ta.1), (&tb.0, tb.1)) {
                std::cmp::Ordering::Greater => {
                    out.push(ta.clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(tb.clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = f.add(&ta.2, &tb.2);
                    if !f.is_zero(&c) {
                        out.push((ta.0.clone(), ta.1, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a.terms[i..]);
        out.extend_from_slice(&scaled[j..]);
        ModVec { terms: out }
    }

    fn scale(&self, v: &ModVec<F>, c: &F::Elem) -> ModVec<F> {
        let f = self.field();
        ModVec {
            terms: v.terms.iter().map(|(m, r, a)| (m.clone(), *r, f.mul(a, c))).collect(),
        }
    }

    pub fn monic(&self, v: &ModVec<F>) -> Result<ModVec<F>> {
        let (_, _, lc) = v.leading().ok_or(Error::ZeroPolynomial)?;
        let inv = self.field().inv(lc)?;
        Ok(self.scale(v, &inv))
    }
}

// ---------------------------------------------------------------------------
// module Groebner bases

/// Full normal form of `v` against `basis`, returning the remainder and the
/// quotient polynomials (one per basis element) with
/// `v = sum q_k * basis_k + remainder`.
fn reduce_full<F: Field>(
    ctx: &ModCtx<F>,
    v: &ModVec<F>,
    basis: &[ModVec<F>],
) -> (ModVec<F>, Vec<Polynomial<F>>) {
    let f = ctx.field().clone();
    let mut quotients: Vec<Vec<(Monomial, F::Elem)>> = vec![Vec::new(); basis.len()];
    let mut tail: Vec<(Monomial, usize, F::Elem)> = Vec::new();
    let mut work = v.clone();
    'outer: while let Some((m, r, c)) = work.leading().map(|(m, r, c)| (m.clone(), r, c.clone())) {
        for (k, g) in basis.iter().enumerate() {
            let Some((gm, gr, gc)) = g.leading() else { continue };
            if gr == r && gm.divides(&m) {
                let qm = gm.divide_into(&m).unwrap();
                let qc = f.div(&c, gc).expect("leading coefficients invertible");
                work = ctx.sub_scaled(&work, &qm, &qc, g);
                quotients[k].push((qm, qc));
                continue 'outer;
            }
        }
        // irreducible leading term: move it to the tail
        tail.push((m, r, c));
        work.terms.remove(0);
    }
    let remainder = ModVec { terms: tail };
    let qs = quotients.into_iter().map(|q| ctx.ring.from_terms(q)).collect();
    (remainder, qs)
}

struct SPair {
    lcm_deg: u32,
    i: usize,
    j: usize,
    lcm: Monomial,
}

impl PartialEq for SPair {
    fn eq(&self, other: &Self) -> bool {
        self.lcm_deg == other.lcm_deg && self.i == other.i && self.j == other.j
    }
}
impl Eq for SPair {}
impl PartialOrd for SPair {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for SPair {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // BinaryHeap is a max-heap; reverse for smallest-lcm-degree-first
        other
            .lcm_deg
            .cmp(&self.lcm_deg)
            .then_with(|| other.i.cmp(&self.i))
            .then_with(|| other.j.cmp(&self.j))
    }
}

pub struct GBOptions {
    /// Buchberger's coprimality criterion; valid for rank-1 modules
    /// (ideals) under global orders only.
    pub product_criterion: bool,
    /// Track representations of basis elements over the input columns.
    pub track: bool,
}

pub struct GBResult<F: Field> {
    /// Monic Groebner basis; inputs are kept, nothing is removed.
    pub basis: Vec<ModVec<F>>,
    /// For each basis element, its coordinates over the input columns
    /// (present when tracking).
    pub reps: Option<Vec<Vec<Polynomial<F>>>>,
    /// Indices of zero input columns (each is a trivial syzygy).
    pub zero_inputs: Vec<usize>,
}

fn spair_of<F: Field>(basis: &[ModVec<F>], i: usize, j: usize) -> Option<SPair> {
    let (mi, ri, _) = basis[i].leading()?;
    let (mj, rj, _) = basis[j].leading()?;
    if ri != rj {
        return None;
    }
    let lcm = mi.lcm(mj);
    Some(SPair { lcm_deg: lcm.degree(), i, j, lcm })
}

/// Buchberger for submodules of a free module. Inputs are normalized to
/// monic; every nonzero reduced S-polynomial joins the basis.
pub fn module_groebner<F: Field>(
    ctx: &ModCtx<F>,
    inputs: &[ModVec<F>],
    opts: &GBOptions,
) -> GBResult<F> {
    let f = ctx.field().clone();
    let mut basis: Vec<ModVec<F>> = Vec::new();
    let mut reps: Vec<Vec<Polynomial<F>>> = Vec::new();
    let mut zero_inputs = Vec::new();
    for (l, v) in inputs.iter().enumerate() {
        if v.is_zero() {
            zero_inputs.push(l);
            continue;
        }
        let lc = v.leading().unwrap().2.clone();
        basis.push(ctx.monic(v).unwrap());
        if opts.track {
            let inv = f.inv(&lc).unwrap();
            let mut rep = vec![ctx.ring.zero(); inputs.len()];
            rep[l] = ctx.ring.constant(inv);
            reps.push(rep);
        }
    }

    let mut heap: BinaryHeap<SPair> = BinaryHeap::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            if let Some(p) = spair_of(&basis, i, j) {
                heap.push(p);
            }
        }
    }

    while let Some(pair) = heap.pop() {
        let (i, j) = (pair.i, pair.j);
        let (mi, ri, _) = basis[i].leading().unwrap();
        let (mj, _, _) = basis[j].leading().unwrap();
        if opts.product_criterion && ctx.order.nrows() == 1 && mi.gcd_is_one(mj) {
            continue;
        }
        // chain criterion: a third element dividing the lcm with strictly
        // smaller pair-lcms on both sides makes this pair redundant
        let chain = basis.iter().enumerate().any(|(k, g)| {
            if k == i || k == j {
                return false;
            }
            match g.leading() {
                Some((gm, gr, _)) if gr == ri && gm.divides(&pair.lcm) => {
                    let lik = gm.lcm(mi);
                    let ljk = gm.lcm(mj);
                    lik != pair.lcm && ljk != pair.lcm
                }
                _ => false,
            }
        });
        if chain {
            continue;
        }
        let qi = mi.divide_into(&pair.lcm).unwrap();
        let qj = mj.divide_into(&pair.lcm).unwrap();
        let one = f.one();
        let spoly = {
            let shifted_i = ctx.sub_scaled(&ModVec::zero(), &qi, &f.neg(&one), &basis[i]);
            ctx.sub_scaled(&shifted_i, &qj, &one, &basis[j])
        };
        let (rem, quotients) = reduce_full(ctx, &spoly, &basis);
        if rem.is_zero() {
            continue;
        }
        let lc = rem.leading().unwrap().2.clone();
        let lc_inv = f.inv(&lc).unwrap();
        if opts.track {
            // rep(rem) = qi*rep_i - qj*rep_j - sum q_k rep_k, then scaled monic
            let mut rep = vec![ctx.ring.zero(); inputs.len()];
            let add_scaled =
                |rep: &mut Vec<Polynomial<F>>, poly: &Polynomial<F>, src: &Vec<Polynomial<F>>| {
                    if poly.is_zero() {
                        return;
                    }
                    for (slot, r) in rep.iter_mut().enumerate() {
                        *r = r.add(&poly.mul(&src[slot]));
                    }
                };
            add_scaled(&mut rep, &ctx.ring.monomial_poly(qi.clone()), &reps[i]);
            add_scaled(&mut rep, &ctx.ring.monomial_poly(qj).neg(), &reps[j]);
            for (k, q) in quotients.iter().enumerate() {
                add_scaled(&mut rep, &q.neg(), &reps[k]);
            }
            let scale = ctx.ring.constant(lc_inv.clone());
            for r in rep.iter_mut() {
                *r = r.mul(&scale);
            }
            reps.push(rep);
        }
        let new_idx = basis.len();
        basis.push(ctx.scale(&rem, &lc_inv));
        for k in 0..new_idx {
            if let Some(p) = spair_of(&basis, k, new_idx) {
                heap.push(p);
            }
        }
    }

    GBResult { basis, reps: opts.track.then_some(reps), zero_inputs }
}

/// Interreduce a module Groebner basis: drop elements whose leading term is
/// divisible by another's, then tail-reduce each against the rest. Keeps
/// the Groebner property and the leading-term set minimal.
pub fn interreduce<F: Field>(ctx: &ModCtx<F>, basis: &[ModVec<F>]) -> Vec<ModVec<F>> {
    let mut kept: Vec<ModVec<F>> = Vec::new();
    'cand: for (i, v) in basis.iter().enumerate() {
        let Some((m, r, _)) = v.leading() else { continue };
        for (j, w) in basis.iter().enumerate() {
            if i == j {
                continue;
            }
            if let Some((wm, wr, _)) = w.leading() {
                if wr == r && wm.divides(m) && (wm != m || j < i) {
                    continue 'cand;
                }
            }
        }
        kept.push(v.clone());
    }
    // tail-reduce each against the others
    let mut out = Vec::with_capacity(kept.len());
    for i in 0..kept.len() {
        let others: Vec<ModVec<F>> = kept
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, w)| w.clone())
            .collect();
        let lead: ModVec<F> = ModVec { terms: kept[i].terms[..1].to_vec() };
        let tail = ModVec { terms: kept[i].terms[1..].to_vec() };
        let (tail_red, _) = reduce_full(ctx, &tail, &others);
        let mut terms = lead.terms;
        terms.extend(tail_red.terms);
        out.push(ModVec { terms });
    }
    out
}

/// Sort basis elements by leading monomial, descending lexicographically.
/// This ordering is what makes the Schreyer construction drop one variable
/// per level, bounding resolution length.
fn sort_for_schreyer<F: Field>(basis: &mut [ModVec<F>]) {
    let lex = TermOrder::lex();
    basis.sort_by(|a, b| {
        let (ma, ra, _) = a.leading().expect("nonzero");
        let (mb, rb, _) = b.leading().expect("nonzero");
        lex.compare(mb, ma).then_with(|| ra.cmp(&rb))
    });
}

/// Schreyer syzygies of a monic Groebner basis: one generator per S-pair
/// with a shared leading row, each reduced to zero against the basis.
/// The output lives in the free module indexed by `basis` and is returned
/// together with the induced module order.
fn schreyer_syzygies<F: Field>(
    ctx: &ModCtx<F>,
    basis: &[ModVec<F>],
) -> (Vec<ModVec<F>>, ModOrder) {
    let f = ctx.field().clone();
    let leads: Vec<(Monomial, usize)> = basis
        .iter()
        .map(|g| {
            let (m, r, _) = g.leading().expect("basis elements are nonzero");
            (m.clone(), r)
        })
        .collect();
    let syz_order = ctx.order.schreyer(&leads);
    let syz_ctx = ModCtx { ring: Arc::clone(&ctx.ring), order: syz_order.clone() };
    let mut taus = Vec::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            let Some(pair) = spair_of(basis, i, j) else { continue };
            let qi = leads[i].0.divide_into(&pair.lcm).unwrap();
            let qj = leads[j].0.divide_into(&pair.lcm).unwrap();
            let one = f.one();
            let spoly = {
                let si = ctx.sub_scaled(&ModVec::zero(), &qi, &f.neg(&one), &basis[i]);
                ctx.sub_scaled(&si, &qj, &one, &basis[j])
            };
            let (rem, quotients) = reduce_full(ctx, &spoly, basis);
            assert!(rem.is_zero(), "S-polynomial of a Groebner basis must reduce to zero");
            let mut terms: Vec<(Monomial, usize, F::Elem)> = vec![
                (qi, i, f.one()),
                (qj, j, f.neg(&f.one())),
            ];
            for (k, q) in quotients.iter().enumerate() {
                for (m, c) in q.terms() {
                    terms.push((m.clone(), k, f.neg(c)));
                }
            }
            taus.push(syz_ctx.normalize(terms));
        }
    }
    // prune to a minimal Groebner basis of the syzygy module
    let pruned = prune_by_leading_terms(&syz_ctx, taus);
    (pruned, syz_order)
}

fn prune_by_leading_terms<F: Field>(ctx: &ModCtx<F>, mut elems: Vec<ModVec<F>>) -> Vec<ModVec<F>> {
    elems.retain(|v| !v.is_zero());
    let mut kept: Vec<ModVec<F>> = Vec::new();
    elems.sort_by(|a, b| {
        let (ma, ra, _) = a.leading().unwrap();
        let (mb, rb, _) = b.leading().unwrap();
        ctx.order.compare((&ma.clone(), ra), (&mb.clone(), rb))
    });
    for v in elems {
        let (m, r, _) = v.leading().unwrap();
        if !kept.iter().any(|w| {
            let (wm, wr, _) = w.leading().unwrap();
            wr == r && wm.divides(m)
        }) {
            kept.push(v);
        }
    }
    kept
}

// ---------------------------------------------------------------------------
// graded presentations

/// A graded matrix between free modules: `target_shifts` are the degrees of
/// the target's generators, columns are homogeneous with recorded degrees.
/// Used both as a plain map and as a presentation of its cokernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPresentation<F: Field> {
    ring: Arc<PolyRing<F>>,
    target_shifts: Vec<i64>,
    col_degrees: Vec<i64>,
    cols: Vec<Vec<Polynomial<F>>>,
}

impl<F: Field> GradedPresentation<F> {
    /// Build from columns, inferring each column's degree from its entries.
    /// Zero columns are rejected here; use `with_degrees` when they matter.
    pub fn from_cols(
        ring: &Arc<PolyRing<F>>,
        target_shifts: Vec<i64>,
        cols: Vec<Vec<Polynomial<F>>>,
    ) -> Result<Self> {
        let mut col_degrees = Vec::with_capacity(cols.len());
        for col in &cols {
            let mut deg = None;
            for (row, entry) in col.iter().enumerate() {
                if entry.is_zero() {
                    continue;
                }
                let d = entry.degree().unwrap() as i64 + target_shifts[row];
                if !entry.is_homogeneous() || deg.map(|e| e != d).unwrap_or(false) {
                    return Err(Error::NotHomogeneous);
                }
                deg = Some(d);
            }
            col_degrees.push(deg.ok_or(Error::NotHomogeneous)?);
        }
        Ok(GradedPresentation { ring: Arc::clone(ring), target_shifts, col_degrees, cols })
    }

    /// Build with explicit column degrees, validating homogeneity.
    pub fn with_degrees(
        ring: &Arc<PolyRing<F>>,
        target_shifts: Vec<i64>,
        cols: Vec<Vec<Polynomial<F>>>,
        col_degrees: Vec<i64>,
    ) -> Result<Self> {
        assert_eq!(cols.len(), col_degrees.len());
        for (col, cdeg) in cols.iter().zip(&col_degrees) {
            assert_eq!(col.len(), target_shifts.len());
            for (row, entry) in col.iter().enumerate() {
                if entry.is_zero() {
                    continue;
                }
                if !entry.is_homogeneous()
                    || entry.degree().unwrap() as i64 != cdeg - target_shifts[row]
                {
                    return Err(Error::NotHomogeneous);
                }
            }
        }
        Ok(GradedPresentation { ring: Arc::clone(ring), target_shifts, col_degrees, cols })
    }

    /// Presentation of a cyclic quotient S/I with generators of the ideal
    /// as relation columns.
    pub fn cyclic(ring: &Arc<PolyRing<F>>, gens: &[Polynomial<F>]) -> Result<Self> {
        let cols: Vec<Vec<Polynomial<F>>> = gens
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| vec![g.clone()])
            .collect();
        Self::from_cols(ring, vec![0], cols)
    }

    /// A free module: no relations.
    pub fn free(ring: &Arc<PolyRing<F>>, shifts: Vec<i64>) -> Self {
        GradedPresentation {
            ring: Arc::clone(ring),
            target_shifts: shifts,
            col_degrees: Vec::new(),
            cols: Vec::new(),
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn target_shifts(&self) -> &[i64] {
        &self.target_shifts
    }

    pub fn col_degrees(&self) -> &[i64] {
        &self.col_degrees
    }

    pub fn cols(&self) -> &[Vec<Polynomial<F>>] {
        &self.cols
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn nrows(&self) -> usize {
        self.target_shifts.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> &Polynomial<F> {
        &self.cols[col][row]
    }

    /// The transposed map between dualized free modules (all shifts negate).
    pub fn transpose(&self) -> Result<GradedPresentation<F>> {
        let new_shifts: Vec<i64> = self.col_degrees.iter().map(|d| -d).collect();
        let new_degrees: Vec<i64> = self.target_shifts.iter().map(|s| -s).collect();
        let mut cols = Vec::with_capacity(self.nrows());
        for row in 0..self.nrows() {
            let col: Vec<Polynomial<F>> =
                (0..self.ncols()).map(|c| self.cols[c][row].clone()).collect();
            cols.push(col);
        }
        GradedPresentation::with_degrees(&self.ring, new_shifts, cols, new_degrees)
    }

    fn to_modvecs(&self, ctx: &ModCtx<F>) -> Vec<ModVec<F>> {
        self.cols.iter().map(|col| ctx.from_polys(col)).collect()
    }

    /// Matrix product check `self . other == 0` (columns of `other` live in
    /// the free module presented by `self`'s columns' source).
    pub fn composes_to_zero(&self, other: &GradedPresentation<F>) -> bool {
        for ocol in &other.cols {
            for row in 0..self.nrows() {
                let mut acc = self.ring.zero();
                for (k, entry) in ocol.iter().enumerate() {
                    acc = acc.add(&self.cols[k][row].mul(entry));
                }
                if !acc.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn has_constant_entry(&self) -> bool {
        self.cols.iter().any(|col| {
            col.iter().any(|e| !e.is_zero() && e.degree() == Some(0))
        })
    }
}

// ---------------------------------------------------------------------------
// syzygies and resolutions

/// Generators of the full first syzygy module of the input matrix's columns,
/// with correct degree shifts: the target of the output is the free module
/// on the input's columns.
pub fn syzygies<F: Field>(pres: &GradedPresentation<F>) -> Result<GradedPresentation<F>> {
    let ctx = ModCtx::new(Arc::clone(&pres.ring), pres.nrows().max(1));
    let inputs = pres.to_modvecs(&ctx);
    let syz = tracked_syzygies(&ctx, &inputs);
    let ncols = pres.ncols();
    let syz_ctx = ModCtx::new(Arc::clone(&pres.ring), ncols.max(1));
    let mut out_cols = Vec::new();
    for s in syz {
        let col = syz_ctx.to_polys(&s, ncols);
        if col.iter().all(|p| p.is_zero()) {
            continue;
        }
        out_cols.push(col);
    }
    GradedPresentation::from_cols(&pres.ring, pres.col_degrees.clone(), out_cols)
}

/// Syzygies of arbitrary module elements (not necessarily a Groebner
/// basis), as vectors over the input indices.
pub fn tracked_syzygies<F: Field>(ctx: &ModCtx<F>, inputs: &[ModVec<F>]) -> Vec<ModVec<F>> {
    let f = ctx.field().clone();
    let run = module_groebner(ctx, inputs, &GBOptions { product_criterion: false, track: true });
    let reps = run.reps.as_ref().unwrap();
    let nvars = ctx.ring.nvars();
    let syz_ctx = ModCtx::new(Arc::clone(&ctx.ring), inputs.len().max(1));
    let mut out: Vec<ModVec<F>> = Vec::new();
    for l in run.zero_inputs {
        out.push(syz_ctx.unit(l, nvars));
    }
    // tau syzygies among Groebner basis elements, rewritten over the inputs
    for i in 0..run.basis.len() {
        for j in (i + 1)..run.basis.len() {
            let Some(pair) = spair_of(&run.basis, i, j) else { continue };
            let (mi, _, _) = run.basis[i].leading().unwrap();
            let (mj, _, _) = run.basis[j].leading().unwrap();
            let qi = mi.divide_into(&pair.lcm).unwrap();
            let qj = mj.divide_into(&pair.lcm).unwrap();
            let one = f.one();
            let spoly = {
                let si = ctx.sub_scaled(&ModVec::zero(), &qi, &f.neg(&one), &run.basis[i]);
                ctx.sub_scaled(&si, &qj, &one, &run.basis[j])
            };
            let (rem, quotients) = reduce_full(ctx, &spoly, &run.basis);
            assert!(rem.is_zero(), "S-polynomial of a Groebner basis must reduce to zero");
            // tau = qi e_i - qj e_j - sum q_k e_k over the basis, then
            // substitute each basis element's input representation
            let mut coeffs: Vec<Polynomial<F>> = vec![ctx.ring.zero(); inputs.len()];
            let mut add_multiple = |poly: &Polynomial<F>, basis_idx: usize| {
                if poly.is_zero() {
                    return;
                }
                for (slot, c) in coeffs.iter_mut().enumerate() {
                    *c = c.add(&poly.mul(&reps[basis_idx][slot]));
                }
            };
            add_multiple(&ctx.ring.monomial_poly(qi), i);
            add_multiple(&ctx.ring.monomial_poly(qj).neg(), j);
            for (k, q) in quotients.iter().enumerate() {
                add_multiple(&q.neg(), k);
            }
            let v = syz_ctx.from_polys(&coeffs);
            if !v.is_zero() {
                out.push(v);
            }
        }
    }
    prune_redundant_generators(&syz_ctx, out)
}

/// Drop duplicate and zero generators (cheap cleanup; no completeness
/// requirements beyond generating the same module).
fn prune_redundant_generators<F: Field>(
    _ctx: &ModCtx<F>,
    mut gens: Vec<ModVec<F>>,
) -> Vec<ModVec<F>> {
    gens.retain(|v| !v.is_zero());
    let mut seen: Vec<ModVec<F>> = Vec::new();
    for g in gens {
        if !seen.contains(&g) {
            seen.push(g);
        }
    }
    seen
}

/// A graded free resolution: `steps[0]` presents the module over F_0,
/// `steps[k]` maps F_{k+1} -> F_k, consecutive steps compose to zero.
#[derive(Clone, Debug)]
pub struct FreeResolution<F: Field> {
    pub steps: Vec<GradedPresentation<F>>,
}

impl<F: Field> FreeResolution<F> {
    /// Shifts of F_i.
    pub fn shifts_at(&self, i: usize) -> &[i64] {
        if i == 0 {
            self.steps[0].target_shifts()
        } else {
            self.steps[i - 1].col_degrees()
        }
    }

    /// Projective dimension: the largest i with F_i nonzero.
    pub fn pd(&self) -> usize {
        let mut pd = 0;
        for (k, step) in self.steps.iter().enumerate() {
            if step.ncols() > 0 {
                pd = k + 1;
            }
        }
        pd
    }

    pub fn nvars(&self) -> usize {
        self.steps[0].ring().nvars()
    }
}

/// Compute a graded free resolution of the cokernel of `pres` by iterated
/// Schreyer syzygies, optionally minimalized.
pub fn free_resolution<F: Field>(
    pres: &GradedPresentation<F>,
    minimal: bool,
) -> Result<FreeResolution<F>> {
    let ring = Arc::clone(&pres.ring);
    let nvars = ring.nvars();
    let mut steps: Vec<GradedPresentation<F>> = Vec::new();

    let ctx0 = ModCtx::new(Arc::clone(&ring), pres.nrows().max(1));
    let inputs = pres.to_modvecs(&ctx0);
    let nonzero: Vec<ModVec<F>> = inputs.into_iter().filter(|v| !v.is_zero()).collect();

    if nonzero.is_empty() {
        steps.push(GradedPresentation::free(&ring, pres.target_shifts().to_vec()).into_step());
        return Ok(FreeResolution { steps });
    }

    let run = module_groebner(
        &ctx0,
        &nonzero,
        &GBOptions { product_criterion: ctx0.order.nrows() == 1, track: false },
    );
    let mut basis = interreduce(&ctx0, &run.basis);
    sort_for_schreyer(&mut basis);

    let mut ctx = ctx0;
    let mut shifts = pres.target_shifts().to_vec();
    for level in 0..=(nvars + 2) {
        if level > nvars + 1 {
            return Err(Error::Internal(
                "Schreyer resolution exceeded the variable-count bound".into(),
            ));
        }
        // record the current level's matrix
        let cols: Vec<Vec<Polynomial<F>>> =
            basis.iter().map(|v| ctx.to_polys(v, shifts.len())).collect();
        let step = GradedPresentation::from_cols(&ring, shifts.clone(), cols)?;
        let next_shifts = step.col_degrees().to_vec();
        steps.push(step);

        let (taus, syz_order) = schreyer_syzygies(&ctx, &basis);
        if taus.is_empty() {
            break;
        }
        let syz_ctx = ModCtx { ring: Arc::clone(&ring), order: syz_order };
        let mut next_basis = interreduce(&syz_ctx, &taus);
        sort_for_schreyer(&mut next_basis);
        basis = next_basis;
        ctx = syz_ctx;
        shifts = next_shifts;
    }

    let mut res = FreeResolution { steps };
    if minimal {
        minimalize_resolution(&mut res)?;
    }
    Ok(res)
}

impl<F: Field> GradedPresentation<F> {
    fn into_step(self) -> GradedPresentation<F> {
        self
    }
}

/// Cancel unit entries across the whole complex. A degree-0 entry at
/// (row r, col c) of step k lets F_{k+1}'s basis element c cancel against
/// F_k's element r; the neighboring matrices only lose a column / row.
fn minimalize_resolution<F: Field>(res: &mut FreeResolution<F>) -> Result<()> {
    let ring = Arc::clone(res.steps[0].ring());
    let field = ring.field().clone();
    // mutable copies of shifts and matrices
    let mut shifts: Vec<Vec<i64>> = Vec::with_capacity(res.steps.len() + 1);
    shifts.push(res.steps[0].target_shifts().to_vec());
    for s in &res.steps {
        shifts.push(s.col_degrees().to_vec());
    }
    let mut mats: Vec<Vec<Vec<Polynomial<F>>>> =
        res.steps.iter().map(|s| s.cols.clone()).collect();

    loop {
        let mut cancelled = false;
        for k in 0..mats.len() {
            // find a unit entry in step k
            let mut unit: Option<(usize, usize)> = None;
            'search: for (c, col) in mats[k].iter().enumerate() {
                for (r, e) in col.iter().enumerate() {
                    if !e.is_zero() && e.degree() == Some(0) {
                        unit = Some((r, c));
                        break 'search;
                    }
                }
            }
            let Some((r, c)) = unit else { continue };
            cancelled = true;
            let pivot = mats[k][c][r].constant_term();
            let pivot_inv = field.inv(&pivot).expect("unit entry invertible");

            // adjust step k: a'_{ij} = a_{ij} - a_{ic} * pivot^-1 * a_{rj}
            let pivot_col: Vec<Polynomial<F>> = mats[k][c].clone();
            let pivot_row: Vec<Polynomial<F>> =
                mats[k].iter().map(|col| col[r].clone()).collect();
            let scale = ring.constant(pivot_inv);
            for (j, col) in mats[k].iter_mut().enumerate() {
                if j == c {
                    continue;
                }
                let factor = pivot_row[j].mul(&scale);
                if factor.is_zero() {
                    continue;
                }
                for (i, e) in col.iter_mut().enumerate() {
                    if i == r {
                        continue;
                    }
                    *e = e.sub(&pivot_col[i].mul(&factor));
                }
            }
            // remove column c and row r from step k
            mats[k].remove(c);
            for col in mats[k].iter_mut() {
                col.remove(r);
            }
            shifts[k + 1].remove(c);
            shifts[k].remove(r);
            // step k+1 loses row c
            if k + 1 < mats.len() {
                for col in mats[k + 1].iter_mut() {
                    col.remove(c);
                }
            }
            // step k-1 loses column r
            if k > 0 {
                mats[k - 1].remove(r);
            }
        }
        if !cancelled {
            break;
        }
    }

    // drop zero columns (trivial relations) and trailing empty steps
    for k in 0..mats.len() {
        let ncols = mats[k].len();
        let keep: Vec<usize> = (0..ncols)
            .filter(|&c| mats[k][c].iter().any(|e| !e.is_zero()))
            .collect();
        if keep.len() == ncols {
            continue;
        }
        let mut new_mat = Vec::with_capacity(keep.len());
        let mut new_shifts = Vec::with_capacity(keep.len());
        for &c in &keep {
            new_mat.push(mats[k][c].clone());
            new_shifts.push(shifts[k + 1][c]);
        }
        mats[k] = new_mat;
        shifts[k + 1] = new_shifts;
        // removing a zero column removes a generator of F_{k+1}; its row
        // in step k+1 is zero as well because the complex composes to zero
        if k + 1 < mats.len() {
            let nrows_next = mats[k + 1].first().map(|c| c.len()).unwrap_or(0);
            let removed: Vec<usize> = (0..nrows_next).filter(|r| !keep.contains(r)).collect();
            for col in mats[k + 1].iter_mut() {
                for &r in removed.iter().rev() {
                    assert!(col[r].is_zero(), "nonzero entry under a dropped generator");
                    col.remove(r);
                }
            }
        }
    }
    while mats.len() > 1 && mats.last().map(|m| m.is_empty()).unwrap_or(false) {
        mats.pop();
        shifts.pop();
    }

    let mut steps = Vec::with_capacity(mats.len());
    for (k, mat) in mats.into_iter().enumerate() {
        steps.push(GradedPresentation::with_degrees(
            &ring,
            shifts[k].clone(),
            mat,
            shifts[k + 1].clone(),
        )?);
    }
    res.steps = steps;
    Ok(())
}

// ---------------------------------------------------------------------------
// Betti tables

/// Graded Betti numbers of a minimal resolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub entries: std::collections::BTreeMap<(usize, i64), u64>,
    pub pd: usize,
    pub nvars: usize,
}

impl BettiTable {
    pub fn rank(&self, i: usize, j: i64) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Castelnuovo-Mumford regularity: max over nonzero b_{i,j} of j - i.
    pub fn regularity(&self) -> i64 {
        self.entries
            .keys()
            .map(|(i, j)| j - *i as i64)
            .max()
            .expect("nonzero module has Betti numbers")
    }

    /// Depth via Auslander-Buchsbaum: depth = nvars - pd.
    pub fn depth(&self) -> usize {
        self.nvars - self.pd
    }
}

pub fn betti_table<F: Field>(res: &FreeResolution<F>) -> Result<BettiTable> {
    for step in &res.steps {
        if step.has_constant_entry() {
            return Err(Error::NotMinimal);
        }
    }
    let mut entries = std::collections::BTreeMap::new();
    for (i, shift_list) in std::iter::once(res.shifts_at(0))
        .chain(res.steps.iter().map(|s| s.col_degrees()))
        .enumerate()
    {
        for &j in shift_list {
            *entries.entry((i, j)).or_insert(0) += 1;
        }
    }
    let pd = res.pd();
    let nvars = res.nvars();
    if pd > nvars {
        return Err(Error::Internal(format!(
            "projective dimension {pd} exceeds variable count {nvars}"
        )));
    }
    Ok(BettiTable { entries, pd, nvars })
}

// ---------------------------------------------------------------------------
// cokernel data: graded pieces, Hilbert series

/// Initial data of a presented module M = coker(pres): a module Groebner
/// basis's leading terms per row, the shifts, and the Hilbert series.
#[derive(Clone, Debug)]
pub struct CokernelData {
    pub shifts: Vec<i64>,
    pub row_ideals: Vec<MonomialIdeal>,
    pub series: HilbertSeries,
    row_series: Vec<HilbertSeries>,
}

pub fn analyze_cokernel<F: Field>(pres: &GradedPresentation<F>) -> CokernelData {
    let nvars = pres.ring().nvars();
    let nrows = pres.nrows();
    let ctx = ModCtx::new(Arc::clone(pres.ring()), nrows.max(1));
    let inputs: Vec<ModVec<F>> = pres
        .to_modvecs(&ctx)
        .into_iter()
        .filter(|v| !v.is_zero())
        .collect();
    let run = module_groebner(
        &ctx,
        &inputs,
        &GBOptions { product_criterion: nrows == 1, track: false },
    );
    let mut per_row: Vec<Vec<Monomial>> = vec![Vec::new(); nrows];
    for g in &run.basis {
        if let Some((m, r, _)) = g.leading() {
            per_row[r].push(m.clone());
        }
    }
    let row_ideals: Vec<MonomialIdeal> = per_row
        .into_iter()
        .map(|gens| MonomialIdeal::new(nvars, gens))
        .collect();
    let row_series: Vec<HilbertSeries> = row_ideals
        .iter()
        .map(HilbertSeries::of_monomial_quotient)
        .collect();
    let mut numerator = IntLaurent::zero();
    for (r, hs) in row_series.iter().enumerate() {
        numerator = numerator.add(&hs.numerator().shifted(pres.target_shifts()[r]));
    }
    CokernelData {
        shifts: pres.target_shifts().to_vec(),
        row_ideals,
        series: HilbertSeries::new(nvars, numerator),
        row_series,
    }
}

impl CokernelData {
    /// k-dimension of the degree-j piece.
    pub fn dim_at(&self, j: i64) -> BigInt {
        let mut acc = BigInt::zero();
        for (r, hs) in self.row_series.iter().enumerate() {
            acc += hs.hf(j - self.shifts[r]);
        }
        acc
    }

    pub fn is_zero_module(&self) -> bool {
        self.series.is_zero()
    }

    /// Krull dimension; -1 convention is represented as `None`.
    pub fn dimension(&self) -> Option<usize> {
        self.series.dimension()
    }

    /// Smallest degree with a nonzero piece, requiring a minimal
    /// presentation (relations in the maximal ideal): the least shift.
    pub fn min_nonvanishing_degree_of_minimal(&self) -> Option<i64> {
        self.shifts.iter().min().copied()
    }
}

/// Graded piece dimension of the cokernel of a presentation.
pub fn graded_piece_dim<F: Field>(pres: &GradedPresentation<F>, j: i64) -> BigInt {
    analyze_cokernel(pres).dim_at(j)
}

// ---------------------------------------------------------------------------
// minimal presentations and Ext modules

/// Cancel unit entries of a single presentation matrix and drop zero
/// columns: the result presents the same module with all relation entries
/// in the maximal ideal.
pub fn minimalize_presentation<F: Field>(
    pres: &GradedPresentation<F>,
) -> Result<GradedPresentation<F>> {
    // a presentation is a one-step complex
    let mut res = FreeResolution { steps: vec![pres.clone()] };
    minimalize_resolution(&mut res)?;
    Ok(res.steps.swap_remove(0))
}

/// Presentation of Ext^i(M, S) for M = coker(pres), computed from a minimal
/// free resolution: kernel generators of the transposed (i+1)-st map via
/// syzygies, the image of the transposed i-th map rewritten in those
/// generators by division, and the whole homology presented as a cokernel
/// with dualized (negated) shifts. The result is minimalized.
pub fn ext_module<F: Field>(res: &FreeResolution<F>, i: usize) -> Result<GradedPresentation<F>> {
    let ring = Arc::clone(res.steps[0].ring());
    let pd = res.pd();
    if i > pd {
        return Ok(GradedPresentation::free(&ring, Vec::new()));
    }
    let fi_shifts: Vec<i64> = res.shifts_at(i).to_vec();
    let dual_shifts: Vec<i64> = fi_shifts.iter().map(|s| -s).collect();

    // kernel of d_{i+1}^T : F_i^* -> F_{i+1}^*
    let (kernel_gens, kernel_degrees): (Vec<ModVec<F>>, Vec<i64>) = if i == pd {
        // the transposed next map is zero: the kernel is everything
        let ctx = ModCtx::new(Arc::clone(&ring), dual_shifts.len().max(1));
        let gens: Vec<ModVec<F>> = (0..dual_shifts.len())
            .map(|r| ctx.unit(r, ring.nvars()))
            .collect();
        (gens, dual_shifts.clone())
    } else {
        let dt = res.steps[i].transpose()?;
        let ctx = ModCtx::new(Arc::clone(&ring), dt.nrows().max(1));
        let cols = dt.to_modvecs(&ctx);
        let syz = tracked_syzygies(&ctx, &cols);
        // syzygy vectors live over the dual basis of F_i, with shifts -F_i
        let sctx = ModCtx::new(Arc::clone(&ring), dual_shifts.len().max(1));
        let degrees: Vec<i64> = syz
            .iter()
            .map(|v| v.degree(&dual_shifts).expect("kernel generators are nonzero"))
            .collect();
        let _ = sctx;
        (syz, degrees)
    };

    if kernel_gens.is_empty() {
        return Ok(GradedPresentation::free(&ring, Vec::new()));
    }

    let kctx = ModCtx::new(Arc::clone(&ring), dual_shifts.len().max(1));
    for g in &kernel_gens {
        if !g.is_homogeneous(&dual_shifts) {
            return Err(Error::Internal("kernel generator not homogeneous".into()));
        }
    }

    // relations: syzygies among the kernel generators ...
    let mut relation_vectors: Vec<ModVec<F>> = tracked_syzygies(&kctx, &kernel_gens);

    // ... plus the image of d_i^T expressed in the kernel generators
    if i > 0 {
        let dt_prev = res.steps[i - 1].transpose()?;
        let image_cols = dt_prev.to_modvecs(&kctx);
        let run = module_groebner(
            &kctx,
            &kernel_gens,
            &GBOptions { product_criterion: false, track: true },
        );
        let reps = run.reps.as_ref().unwrap();
        let ext_ctx = ModCtx::new(Arc::clone(&ring), kernel_gens.len().max(1));
        for col in image_cols {
            if col.is_zero() {
                continue;
            }
            let (rem, quotients) = reduce_full(&kctx, &col, &run.basis);
            if !rem.is_zero() {
                return Err(Error::Internal(
                    "image of the transposed differential escapes the kernel".into(),
                ));
            }
            // coordinates over kernel generators: sum q_k * rep_k
            let mut coords: Vec<Polynomial<F>> = vec![ring.zero(); kernel_gens.len()];
            for (k, q) in quotients.iter().enumerate() {
                if q.is_zero() {
                    continue;
                }
                for (slot, c) in coords.iter_mut().enumerate() {
                    *c = c.add(&q.mul(&reps[k][slot]));
                }
            }
            let v = ext_ctx.from_polys(&coords);
            if !v.is_zero() {
                relation_vectors.push(v);
            }
        }
    }

    let ext_ctx = ModCtx::new(Arc::clone(&ring), kernel_gens.len().max(1));
    let relation_cols: Vec<Vec<Polynomial<F>>> = relation_vectors
        .iter()
        .map(|v| ext_ctx.to_polys(v, kernel_gens.len()))
        .filter(|col| col.iter().any(|p| !p.is_zero()))
        .collect();
    let pres = GradedPresentation::from_cols(&ring, kernel_degrees, relation_cols)?;
    minimalize_presentation(&pres)
}
