use std::collections::BTreeMap;
use std::sync::Arc;

use crate::dgcore::{opposite, DgCategory};
use crate::pretr::{PretrError, Term, TwistedComplex};

/// `-(-1)^{s(s-1)/2}`, the sign carried by an entry between terms whose shifts differ by `s`.
fn sign(s: i64) -> i64 {
    if (s * (s - 1) / 2).rem_euclid(2) == 0 {
        -1
    } else {
        1
    }
}

/// The dual of `x` over a supplied opposite category: terms reversed with negated shifts and
/// the twist transposed.
pub fn dualize_over(x: &TwistedComplex, op: Arc<DgCategory>) -> Result<TwistedComplex, PretrError> {
    let n = x.len();
    let terms: Vec<Term> = x.terms().iter().rev().map(|t| Term { obj: t.obj, shift: -t.shift }).collect();
    let field = op.field();
    let mut q = BTreeMap::new();
    for (&(a, b), v) in x.twist() {
        let s = field.from_i64(sign(x.terms()[a].shift - x.terms()[b].shift));
        q.insert((n - 1 - b, n - 1 - a), v.iter().map(|c| c * &s).collect());
    }
    TwistedComplex::new(op, terms, q)
}

pub fn dualize(x: &TwistedComplex) -> Result<TwistedComplex, PretrError> {
    dualize_over(x, Arc::new(opposite(x.base())))
}
