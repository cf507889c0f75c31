//! Groebner bases (global orders, Buchberger), standard bases (local
//! orders, Mora's tangent-cone algorithm with ecart bookkeeping), and the
//! ideal operations built on them: initial ideals, tangent cones, Krull
//! dimension, colon by the maximal ideal, and saturation.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;

use crate::arith::Field;
use crate::error::{Error, Result};
use crate::hilbert::{finite_colength, HilbertSeries};
use crate::monomial_ideal::MonomialIdeal;
use crate::poly::{Monomial, PolyRing, Polynomial, TermOrder};
use crate::resolution::{
    betti_table, free_resolution, tracked_syzygies, GradedPresentation, ModCtx,
};

// ---------------------------------------------------------------------------
// division

/// Full normal form against a list of reducers under a global order: every
/// term of the result is divisible by no reducer's leading term.
pub fn normal_form<F: Field>(f: &Polynomial<F>, basis: &[Polynomial<F>]) -> Polynomial<F> {
    let ring = Arc::clone(f.ring());
    assert!(ring.order().is_global(), "normal_form requires a global order");
    let field = ring.field().clone();
    let mut work = f.clone();
    let mut tail: Vec<(Monomial, F::Elem)> = Vec::new();
    'outer: while let Some((m, c)) = work.terms().first().cloned() {
        for g in basis {
            let Ok((gm, gc)) = g.leading_term() else { continue };
            if gm.divides(&m) {
                let qm = gm.divide_into(&m).unwrap();
                let qc = field.div(&c, gc).expect("nonzero leading coefficient");
                work = work.sub(&g.mul_term(&qm, &qc));
                continue 'outer;
            }
        }
        tail.push((m, c));
        work = work.sub(&ring.monomial_poly(tail.last().unwrap().0.clone())
            .scalar_mul(&tail.last().unwrap().1));
    }
    ring.from_terms(tail)
}

fn spoly<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>) -> Polynomial<F> {
    let field = f.ring().field().clone();
    let (fm, fc) = f.leading_term().unwrap();
    let (gm, gc) = g.leading_term().unwrap();
    let lcm = fm.lcm(gm);
    let qf = fm.divide_into(&lcm).unwrap();
    let qg = gm.divide_into(&lcm).unwrap();
    let inv_fc = field.inv(fc).unwrap();
    let inv_gc = field.inv(gc).unwrap();
    f.mul_term(&qf, &inv_fc).sub(&g.mul_term(&qg, &inv_gc))
}

// ---------------------------------------------------------------------------
// Buchberger

struct PairQueue {
    heap: std::collections::BinaryHeap<std::cmp::Reverse<(u32, usize, usize)>>,
}

impl PairQueue {
    fn new() -> Self {
        PairQueue { heap: std::collections::BinaryHeap::new() }
    }
    fn push(&mut self, lcm_deg: u32, i: usize, j: usize) {
        self.heap.push(std::cmp::Reverse((lcm_deg, i, j)));
    }
    fn pop(&mut self) -> Option<(usize, usize)> {
        self.heap.pop().map(|std::cmp::Reverse((_, i, j))| (i, j))
    }
}

/// Reduced Groebner basis under the (global) order of the generators'
/// ring: monic, pairwise irreducible, sorted by leading monomial, hence
/// unique for the ideal.
pub fn buchberger<F: Field>(gens: &[Polynomial<F>]) -> Result<Vec<Polynomial<F>>> {
    let Some(first) = gens.first() else { return Ok(Vec::new()) };
    let ring = Arc::clone(first.ring());
    if !ring.order().is_global() {
        return Err(Error::OrderNotGlobal);
    }
    let mut basis: Vec<Polynomial<F>> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.monic().unwrap())
        .collect();
    let mut pairs = PairQueue::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            let lcm = basis[i]
                .leading_monomial()
                .unwrap()
                .lcm(basis[j].leading_monomial().unwrap());
            pairs.push(lcm.degree(), i, j);
        }
    }
    while let Some((i, j)) = pairs.pop() {
        let mi = basis[i].leading_monomial().unwrap();
        let mj = basis[j].leading_monomial().unwrap();
        if mi.gcd_is_one(mj) {
            continue; // product criterion (valid: global order, rank one)
        }
        let lcm = mi.lcm(mj);
        let chain = basis.iter().enumerate().any(|(k, g)| {
            if k == i || k == j {
                return false;
            }
            let gm = g.leading_monomial().unwrap();
            gm.divides(&lcm) && gm.lcm(mi) != lcm && gm.lcm(mj) != lcm
        });
        if chain {
            continue;
        }
        let rem = normal_form(&spoly(&basis[i], &basis[j]), &basis);
        if rem.is_zero() {
            continue;
        }
        let rem = rem.monic().unwrap();
        let new_idx = basis.len();
        for (k, g) in basis.iter().enumerate() {
            let lcm = g
                .leading_monomial()
                .unwrap()
                .lcm(rem.leading_monomial().unwrap());
            pairs.push(lcm.degree(), k, new_idx);
        }
        basis.push(rem);
    }
    Ok(autoreduce(basis))
}

/// Interreduce a Groebner basis into the reduced Groebner basis.
fn autoreduce<F: Field>(mut basis: Vec<Polynomial<F>>) -> Vec<Polynomial<F>> {
    // minimalize leading terms
    let mut keep: Vec<Polynomial<F>> = Vec::new();
    basis.sort_by(|a, b| {
        let r = a.ring().order().compare(
            a.leading_monomial().unwrap(),
            b.leading_monomial().unwrap(),
        );
        r
    });
    for (i, g) in basis.iter().enumerate() {
        let gm = g.leading_monomial().unwrap();
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            if k == i {
                return false;
            }
            let hm = h.leading_monomial().unwrap();
            hm.divides(gm) && (hm != gm || k < i)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    // tail-reduce each against the rest
    let mut out = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<Polynomial<F>> = keep
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, h)| h.clone())
            .collect();
        out.push(normal_form(&keep[i], &others).monic().unwrap());
    }
    out.sort_by(|a, b| {
        a.ring().order().compare(
            a.leading_monomial().unwrap(),
            b.leading_monomial().unwrap(),
        )
    });
    out
}

// ---------------------------------------------------------------------------
// Mora normal form and standard bases

/// Mora's weak normal form under a local order. The result h satisfies
/// u*f = sum q_i b_i + h for a unit u of the local ring, and the leading
/// term of h is divisible by no basis leading term. Termination comes from
/// the ecart strategy, with reducers drawn from the partial remainders.
pub fn mora_normal_form<F: Field>(
    f: &Polynomial<F>,
    basis: &[Polynomial<F>],
) -> Result<Polynomial<F>> {
    let ring = Arc::clone(f.ring());
    if ring.order().is_global() {
        return Err(Error::OrderNotLocal);
    }
    let field = ring.field().clone();
    let mut pool: Vec<Polynomial<F>> = basis.iter().filter(|g| !g.is_zero()).cloned().collect();
    let mut h = f.clone();
    loop {
        if h.is_zero() {
            return Ok(h);
        }
        let (hm, hc) = {
            let (m, c) = h.leading_term().unwrap();
            (m.clone(), c.clone())
        };
        let mut best: Option<(usize, u32)> = None;
        for (k, g) in pool.iter().enumerate() {
            let gm = g.leading_monomial().unwrap();
            if gm.divides(&hm) {
                let e = g.ecart().unwrap();
                if best.map(|(_, be)| e < be).unwrap_or(true) {
                    best = Some((k, e));
                }
            }
        }
        let Some((k, e)) = best else { return Ok(h) };
        if e > h.ecart().unwrap() {
            pool.push(h.clone());
        }
        let g = &pool[k];
        let (gm, gc) = g.leading_term().unwrap();
        let qm = gm.divide_into(&hm).unwrap();
        let qc = field.div(&hc, gc).unwrap();
        h = h.sub(&g.mul_term(&qm, &qc));
    }
}

/// Standard basis under the local order: every S-polynomial has Mora
/// normal form zero; the initial forms of the basis generate the ideal of
/// initial forms. Generators must lie in the maximal ideal.
pub fn standard_basis_raw<F: Field>(gens: &[Polynomial<F>]) -> Result<Vec<Polynomial<F>>> {
    let Some(first) = gens.first() else { return Ok(Vec::new()) };
    let ring = Arc::clone(first.ring());
    if ring.order().is_global() {
        return Err(Error::OrderNotLocal);
    }
    for g in gens {
        if !g.is_zero() && !ring.field().is_zero(&g.constant_term()) {
            return Err(Error::UnitIdealLocally);
        }
    }
    let mut basis: Vec<Polynomial<F>> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.monic().unwrap())
        .collect();
    let mut pairs = PairQueue::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            let lcm = basis[i]
                .leading_monomial()
                .unwrap()
                .lcm(basis[j].leading_monomial().unwrap());
            pairs.push(lcm.degree(), i, j);
        }
    }
    // no pair criteria here: the product criterion is unsound for local
    // orders, and desk-scale inputs do not need the chain criterion
    while let Some((i, j)) = pairs.pop() {
        let rem = mora_normal_form(&spoly(&basis[i], &basis[j]), &basis)?;
        if rem.is_zero() {
            continue;
        }
        let rem = rem.monic().unwrap();
        let new_idx = basis.len();
        for (k, g) in basis.iter().enumerate() {
            let lcm = g
                .leading_monomial()
                .unwrap()
                .lcm(rem.leading_monomial().unwrap());
            pairs.push(lcm.degree(), k, new_idx);
        }
        basis.push(rem);
    }
    // minimalize leading terms; tails stay as computed (tail reduction can
    // fail to terminate under a local order)
    let mut keep: Vec<Polynomial<F>> = Vec::new();
    basis.sort_by(|a, b| {
        ring.order().compare(b.leading_monomial().unwrap(), a.leading_monomial().unwrap())
    });
    for (i, g) in basis.iter().enumerate() {
        let gm = g.leading_monomial().unwrap();
        let redundant = keep
            .iter()
            .any(|h| h.leading_monomial().unwrap().divides(gm))
            || basis[..i].iter().any(|h| {
                let hm = h.leading_monomial().unwrap();
                hm == gm
            });
        if !redundant {
            keep.push(g.clone());
        }
    }
    keep.sort_by(|a, b| {
        ring.order().compare(b.leading_monomial().unwrap(), a.leading_monomial().unwrap())
    });
    Ok(keep)
}

// ---------------------------------------------------------------------------
// ideals

/// A finitely generated ideal with cached reduced bases per term order.
#[derive(Debug)]
pub struct Ideal<F: Field> {
    ring: Arc<PolyRing<F>>,
    gens: Vec<Polynomial<F>>,
    homogeneous: bool,
    cache: Mutex<HashMap<TermOrder, Arc<Vec<Polynomial<F>>>>>,
}

impl<F: Field> Clone for Ideal<F> {
    fn clone(&self) -> Self {
        Ideal {
            ring: Arc::clone(&self.ring),
            gens: self.gens.clone(),
            homogeneous: self.homogeneous,
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
        }
    }
}

impl<F: Field> Ideal<F> {
    pub fn new(ring: &Arc<PolyRing<F>>, gens: Vec<Polynomial<F>>) -> Self {
        let gens: Vec<Polynomial<F>> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        let homogeneous = gens.iter().all(|g| g.is_homogeneous());
        Ideal {
            ring: Arc::clone(ring),
            gens,
            homogeneous,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// True when every generator is homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    /// Reduced Groebner basis under a global order. The returned
    /// polynomials live in a ring carrying that order.
    pub fn groebner_basis(&self, order: &TermOrder) -> Result<Arc<Vec<Polynomial<F>>>> {
        if !order.is_global() {
            return Err(Error::OrderNotGlobal);
        }
        if let Some(hit) = self.cache.lock().unwrap().get(order) {
            return Ok(Arc::clone(hit));
        }
        let target = self.ring.with_order(order.clone());
        let gens: Vec<Polynomial<F>> = self.gens.iter().map(|g| g.map_to_ring(&target)).collect();
        let gb = Arc::new(buchberger(&gens)?);
        self.cache.lock().unwrap().insert(order.clone(), Arc::clone(&gb));
        Ok(gb)
    }

    /// Standard basis under the local tangent-cone order.
    pub fn standard_basis(&self) -> Result<Arc<Vec<Polynomial<F>>>> {
        let order = TermOrder::local();
        if let Some(hit) = self.cache.lock().unwrap().get(&order) {
            return Ok(Arc::clone(hit));
        }
        let target = self.ring.with_order(order.clone());
        let gens: Vec<Polynomial<F>> = self.gens.iter().map(|g| g.map_to_ring(&target)).collect();
        let sb = Arc::new(standard_basis_raw(&gens)?);
        self.cache.lock().unwrap().insert(order, Arc::clone(&sb));
        Ok(sb)
    }

    /// Normal form against the grevlex Groebner basis, mapped back into the
    /// ideal's own ring.
    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        let gb = self.groebner_basis(&TermOrder::grevlex())?;
        let target = match gb.first() {
            Some(g) => Arc::clone(g.ring()),
            None => return Ok(f.clone()),
        };
        let nf = normal_form(&f.map_to_ring(&target), &gb);
        Ok(nf.map_to_ring(&self.ring))
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn is_unit(&self) -> Result<bool> {
        let gb = self.groebner_basis(&TermOrder::grevlex())?;
        Ok(gb.len() == 1 && gb[0].is_constant())
    }

    /// Ideal of leading monomials of the reduced Groebner basis.
    pub fn initial_monomial_ideal(&self, order: &TermOrder) -> Result<MonomialIdeal> {
        let gb = self.groebner_basis(order)?;
        let gens = gb
            .iter()
            .map(|g| g.leading_monomial().map(|m| m.clone()))
            .collect::<Result<Vec<_>>>()?;
        Ok(MonomialIdeal::new(self.ring.nvars(), gens))
    }

    /// Krull dimension of S/I via the initial monomial ideal's independent
    /// variable sets.
    pub fn dimension(&self) -> Result<usize> {
        self.initial_monomial_ideal(&TermOrder::grevlex())?.quotient_dimension()
    }

    /// Same ideal questioned under another generating set or ring copy:
    /// equality of reduced grevlex bases, term by term.
    pub fn equals(&self, other: &Ideal<F>) -> Result<bool> {
        let a = self.groebner_basis(&TermOrder::grevlex())?;
        let b = other.groebner_basis(&TermOrder::grevlex())?;
        if a.len() != b.len() {
            return Ok(false);
        }
        Ok(a.iter().zip(b.iter()).all(|(f, g)| f.terms() == g.terms()))
    }

    /// Presentation of the cyclic module S/I.
    pub fn quotient_presentation(&self) -> Result<GradedPresentation<F>> {
        let order = TermOrder::grevlex();
        let gb = self.groebner_basis(&order)?;
        let target = self.ring.with_order(order);
        let gens: Vec<Polynomial<F>> = gb.iter().map(|g| g.map_to_ring(&target)).collect();
        GradedPresentation::cyclic(&target, &gens)
    }
}

// ---------------------------------------------------------------------------
// tangent cones

/// The tangent-cone package of an ideal: its standard basis under the local
/// order, the homogeneous ideal of initial forms in*(I), and hence the
/// associated graded ring G = S/in*(I).
#[derive(Clone, Debug)]
pub struct TangentCone<F: Field> {
    pub standard_basis: Vec<Polynomial<F>>,
    pub initial_ideal: Ideal<F>,
}

pub fn tangent_cone<F: Field>(ideal: &Ideal<F>) -> Result<TangentCone<F>> {
    let sb = ideal.standard_basis()?;
    let grevlex = ideal.ring().with_order(TermOrder::grevlex());
    let initial_gens: Vec<Polynomial<F>> = sb
        .iter()
        .map(|g| g.initial_form().map(|f| f.map_to_ring(&grevlex)))
        .collect::<Result<Vec<_>>>()?;
    let initial_ideal = Ideal::new(&grevlex, initial_gens);
    debug_assert!(initial_ideal.is_homogeneous());
    Ok(TangentCone { standard_basis: sb.as_ref().clone(), initial_ideal })
}

// ---------------------------------------------------------------------------
// colon and saturation

/// The colon ideal (I : m) with m = (x_1, ..., x_n), by the elimination-free
/// syzygy method: syzygies of the module columns [x | g e_i] have their
/// first coordinate exactly in (I : m).
pub fn colon_by_maximal<F: Field>(ideal: &Ideal<F>) -> Result<Ideal<F>> {
    let order = TermOrder::grevlex();
    let gb = ideal.groebner_basis(&order)?;
    if gb.is_empty() {
        return Ok(Ideal::new(ideal.ring(), Vec::new()));
    }
    let ring = Arc::clone(gb[0].ring());
    let n = ring.nvars();
    let ctx = ModCtx::new(Arc::clone(&ring), n);
    let mut cols = Vec::with_capacity(1 + n * gb.len());
    let variables_column: Vec<Polynomial<F>> = (0..n).map(|i| ring.var(i)).collect();
    cols.push(ctx.from_polys(&variables_column));
    for g in gb.iter() {
        for row in 0..n {
            let mut col = vec![ring.zero(); n];
            col[row] = g.clone();
            cols.push(ctx.from_polys(&col));
        }
    }
    let syz = tracked_syzygies(&ctx, &cols);
    let out_ctx = ModCtx::new(Arc::clone(&ring), cols.len());
    let mut gens: Vec<Polynomial<F>> = gb.iter().map(|g| g.map_to_ring(ideal.ring())).collect();
    for v in syz {
        let coord0 = out_ctx.to_polys(&v, cols.len()).swap_remove(0);
        if !coord0.is_zero() {
            gens.push(coord0.map_to_ring(ideal.ring()));
        }
    }
    Ok(Ideal::new(ideal.ring(), gens))
}

/// Saturation (I : m^infinity) with the finite length of the quotient
/// (I : m^inf)/I and the number of colon iterations used.
#[derive(Clone, Debug)]
pub struct Saturation<F: Field> {
    pub saturation: Ideal<F>,
    pub length: BigInt,
    pub iterations: usize,
}

pub fn saturate_maximal<F: Field>(ideal: &Ideal<F>) -> Result<Saturation<F>> {
    let order = TermOrder::grevlex();
    if ideal.is_unit()? {
        return Err(Error::UnitIdeal);
    }
    let initial = ideal.initial_monomial_ideal(&order)?;
    // iteration cap: each colon strictly grows the ideal until stable, and
    // the saturation index is bounded by regularity-scale data of in(I)
    let cap = {
        let reg = if initial.is_zero() {
            0
        } else {
            let grevlex = ideal.ring().with_order(order.clone());
            let gens: Vec<Polynomial<F>> = initial
                .gens()
                .iter()
                .map(|m| grevlex.monomial_poly(m.clone()))
                .collect();
            let pres = GradedPresentation::cyclic(&grevlex, &gens)?;
            let res = free_resolution(&pres, true)?;
            betti_table(&res)?.regularity().max(0) as usize
        };
        let max_deg = ideal
            .gens()
            .iter()
            .filter_map(|g| g.degree())
            .max()
            .unwrap_or(0) as usize;
        2 * reg + max_deg + ideal.ring().nvars() + 10
    };
    let mut current = ideal.clone();
    let mut iterations = 0;
    loop {
        if iterations > cap {
            return Err(Error::SaturationCap(cap));
        }
        let next = colon_by_maximal(&current)?;
        iterations += 1;
        if next.equals(&current)? {
            break;
        }
        current = next;
    }
    let sat_initial = current.initial_monomial_ideal(&order)?;
    let length = finite_colength(
        &HilbertSeries::of_monomial_quotient(&initial),
        &HilbertSeries::of_monomial_quotient(&sat_initial),
    )?;
    // re-present by the reduced basis
    let gens = current
        .groebner_basis(&order)?
        .iter()
        .map(|g| g.map_to_ring(ideal.ring()))
        .collect();
    let saturation = Ideal::new(ideal.ring(), gens);
    Ok(Saturation { saturation, length, iterations })
}
