//! Term orders: three global well-orders and the local tangent-cone order.

use std::cmp::Ordering;
use std::sync::Arc;

use super::monomial::Monomial;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub enum OrderKind {
    /// Graded reverse lexicographic (global). The workhorse order.
    #[default]
    GrevLex,
    /// Lexicographic (global).
    Lex,
    /// Graded lexicographic (global).
    GrLex,
    /// Negative-graded reverse lexicographic (local): lower total degree is
    /// larger, ties broken revlex. 1 is the largest monomial, as initial-form
    /// computations require.
    NegGrevLex,
}

impl OrderKind {
    pub fn name(&self) -> &'static str {
        match self {
            OrderKind::GrevLex => "grevlex",
            OrderKind::Lex => "lex",
            OrderKind::GrLex => "grlex",
            OrderKind::NegGrevLex => "neg-grevlex",
        }
    }
}

/// A term order: a comparison kind plus an optional variable permutation.
/// `perm[slot]` is the variable index compared at position `slot`, so the
/// permutation decides which variable is "first".
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TermOrder {
    kind: OrderKind,
    perm: Option<Arc<[usize]>>,
}

impl TermOrder {
    pub fn new(kind: OrderKind) -> Self {
        TermOrder { kind, perm: None }
    }

    pub fn grevlex() -> Self {
        Self::new(OrderKind::GrevLex)
    }

    pub fn lex() -> Self {
        Self::new(OrderKind::Lex)
    }

    pub fn local() -> Self {
        Self::new(OrderKind::NegGrevLex)
    }

    pub fn with_permutation(kind: OrderKind, perm: Vec<usize>) -> Self {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &v in &perm {
            assert!(v < n && !seen[v], "not a permutation");
            seen[v] = true;
        }
        TermOrder { kind, perm: Some(perm.into()) }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn is_global(&self) -> bool {
        !matches!(self.kind, OrderKind::NegGrevLex)
    }

    #[inline]
    fn exp_at(&self, m: &Monomial, slot: usize) -> u32 {
        match &self.perm {
            Some(p) => m.exponents()[p[slot]],
            None => m.exponents()[slot],
        }
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), b.nvars());
        let n = a.nvars();
        match self.kind {
            OrderKind::Lex => self.cmp_lex(a, b, n),
            OrderKind::GrLex => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| self.cmp_lex(a, b, n)),
            OrderKind::GrevLex => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| self.cmp_revlex_tie(a, b, n)),
            OrderKind::NegGrevLex => b
                .degree()
                .cmp(&a.degree())
                .then_with(|| self.cmp_revlex_tie(a, b, n)),
        }
    }

    fn cmp_lex(&self, a: &Monomial, b: &Monomial, n: usize) -> Ordering {
        for slot in 0..n {
            match self.exp_at(a, slot).cmp(&self.exp_at(b, slot)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    /// Revlex tiebreak: the last slot where the exponents differ decides,
    /// with the smaller exponent winning.
    fn cmp_revlex_tie(&self, a: &Monomial, b: &Monomial, n: usize) -> Ordering {
        for slot in (0..n).rev() {
            let (ea, eb) = (self.exp_at(a, slot), self.exp_at(b, slot));
            if ea != eb {
                return eb.cmp(&ea);
            }
        }
        Ordering::Equal
    }
}

impl std::fmt::Display for TermOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.kind.name())
    }
}
