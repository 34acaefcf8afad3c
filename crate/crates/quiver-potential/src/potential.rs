use crate::{Cyc, Quiver};
use std::collections::BTreeMap;
use thiserror::Error;

/// `coeff * cycle^power`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: Cyc,
    /// Index into the quiver's cycles.
    pub cycle: usize,
    pub power: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Potential {
    /// Order of the root of unity the coefficients are written in.
    pub order: usize,
    pub terms: Vec<Term>,
}

/// A linear combination of paths, keyed by arrow sequence.
pub type PathSum = BTreeMap<Vec<usize>, Cyc>;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum DerivativeError {
    #[error("arrow {0} lies on fewer than two fundamental cycles")]
    FrozenArrow(usize),
}

impl Potential {
    /// The word of a term with the cycle repeated `power` times.
    pub fn word(&self, q: &Quiver, t: &Term) -> Vec<usize> {
        q.cycles[t.cycle].arrows.repeat(t.power)
    }
}

/// Sum over occurrences of `alpha` in each term of the path completing it.
pub fn cyclic_derivative(q: &Quiver, w: &Potential, alpha: usize) -> Result<PathSum, DerivativeError> {
    if !q.is_internal(alpha) {
        return Err(DerivativeError::FrozenArrow(alpha));
    }
    Ok(derivative_any(q, w, alpha))
}

pub(crate) fn derivative_any(q: &Quiver, w: &Potential, alpha: usize) -> PathSum {
    let mut out = PathSum::new();
    for t in &w.terms {
        let word = w.word(q, t);
        for i in (0..word.len()).filter(|&i| word[i] == alpha) {
            let rest: Vec<usize> = word[i + 1..].iter().chain(&word[..i]).copied().collect();
            let e = out.entry(rest).or_insert_with(|| Cyc::zero(w.order));
            *e += &t.coeff;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Cyclic derivatives with respect to every internal arrow.
pub fn jacobian_relations(q: &Quiver, w: &Potential) -> Vec<(usize, PathSum)> {
    q.internal_arrows().into_iter().map(|a| (a, derivative_any(q, w, a))).collect()
}
