use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exactlin::{smith_normal_form, IntMatrix};

use super::{ClassExpr, Ledger, Monomial, RingError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EqOutcome {
    /// Equal in the degree-bounded quotient; lists the relations and facts used with their tags.
    Equal { used: Vec<String> },
    /// Not equal in the degree-bounded quotient spanned by the available rewrites.
    UnequalWithinBound,
    Unknown(String),
}

impl fmt::Display for EqOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EqOutcome::Equal { .. } => write!(f, "equal"),
            EqOutcome::UnequalWithinBound => write!(f, "unequal_within_bound"),
            EqOutcome::Unknown(why) => write!(f, "unknown ({why})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupInvariants {
    /// Counts the unit monomial whenever the ledger has a generator.
    pub free_rank: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<BigInt>,
}

impl fmt::Display for GroupInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z^{}", self.free_rank)?;
        for t in &self.torsion {
            write!(f, " + Z/{t}")?;
        }
        Ok(())
    }
}

struct Saturation {
    rows: Vec<ClassExpr>,
    sources: Vec<String>,
}

impl Ledger {
    fn free_labels(&self) -> Vec<String> {
        self.generators.keys().filter(|l| !self.aliases.contains(*l)).cloned().collect()
    }

    fn monomials(&self) -> Vec<Monomial> {
        let labels = self.free_labels();
        let mut out: Vec<Monomial> = vec![Vec::new()];
        let mut layer: Vec<Monomial> = vec![Vec::new()];
        for _ in 0..self.degree_bound {
            let mut next = Vec::new();
            for m in &layer {
                let start = m.last().map_or(0, |l| labels.iter().position(|x| x == l).expect("label"));
                for l in &labels[start..] {
                    let mut n = m.clone();
                    n.push(l.clone());
                    next.push(n);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    /// A monomial is backed when it has degree at most one or the product facts rewrite it into
    /// backed monomials.
    fn backed(&self, m: &Monomial, memo: &mut BTreeMap<Monomial, bool>) -> bool {
        if m.len() <= 1 {
            return true;
        }
        if let Some(&b) = memo.get(m) {
            return b;
        }
        memo.insert(m.clone(), false);
        let mut ok = false;
        'pairs: for i in 0..m.len() {
            for j in i + 1..m.len() {
                let Some(fact) = self.fact(&m[i], &m[j]) else { continue };
                let Ok(v) = self.normalize(&fact.value) else { continue };
                let rest: Monomial = m.iter().enumerate().filter(|(k, _)| *k != i && *k != j).map(|(_, l)| l.clone()).collect();
                let image = &v * &ClassExpr::monomial(rest, BigInt::one());
                if image.terms().keys().all(|t| t.len() < m.len() && self.backed(t, memo)) {
                    ok = true;
                    break 'pairs;
                }
            }
        }
        memo.insert(m.clone(), ok);
        ok
    }

    /// The facts behind [`Ledger::backed`] for `m`, as `fact: ...` source lines.
    fn backing(&self, m: &Monomial, memo: &mut BTreeMap<Monomial, bool>, out: &mut Vec<String>) {
        if m.len() <= 1 {
            return;
        }
        for i in 0..m.len() {
            for j in i + 1..m.len() {
                let Some(fact) = self.fact(&m[i], &m[j]) else { continue };
                let Ok(v) = self.normalize(&fact.value) else { continue };
                let rest: Monomial = m.iter().enumerate().filter(|(k, _)| *k != i && *k != j).map(|(_, l)| l.clone()).collect();
                let image = &v * &ClassExpr::monomial(rest, BigInt::one());
                if image.terms().keys().all(|t| t.len() < m.len() && self.backed(t, memo)) {
                    let line = fact_source(fact);
                    if !out.contains(&line) {
                        out.push(line);
                    }
                    for t in image.terms().keys() {
                        self.backing(t, memo, out);
                    }
                    return;
                }
            }
        }
    }

    fn saturate(&self, memo: &mut BTreeMap<Monomial, bool>) -> Result<Saturation, RingError> {
        let mut base: Vec<(ClassExpr, String)> = Vec::new();
        for (k, r) in self.relations.iter().enumerate() {
            base.push((self.normalize(&r.expr)?, format!("relation {}: {} = 0 [{}]", k + 1, r.expr, r.provenance.tag())));
        }
        for f in self.facts.values() {
            let lhs = &ClassExpr::generator(&f.left) * &ClassExpr::generator(&f.right);
            let e = self.normalize(&(lhs - f.value.clone()))?;
            base.push((e, fact_source(f)));
        }
        let monomials = self.monomials();
        let mut rows = Vec::new();
        let mut sources = Vec::new();
        let mut seen = BTreeSet::new();
        for (e, src) in &base {
            if e.is_zero() {
                continue;
            }
            for m in &monomials {
                if m.len() + e.degree() > self.degree_bound {
                    continue;
                }
                let r = e * &ClassExpr::monomial(m.clone(), BigInt::one());
                if r.terms().keys().all(|t| self.backed(t, memo)) && seen.insert(r.clone()) {
                    rows.push(r);
                    let by = if m.is_empty() { String::new() } else { format!(" times {}", ClassExpr::monomial(m.clone(), BigInt::one())) };
                    sources.push(format!("{src}{by}"));
                }
            }
        }
        Ok(Saturation { rows, sources })
    }

    /// Decides `lhs = rhs` in the quotient by the saturated relations up to the degree bound.
    pub fn eq(&self, lhs: &ClassExpr, rhs: &ClassExpr) -> Result<EqOutcome, RingError> {
        let diff = self.normalize(&(lhs.clone() - rhs.clone()))?;
        if diff.is_zero() {
            return Ok(EqOutcome::Equal { used: Vec::new() });
        }
        if diff.degree() > self.degree_bound {
            return Ok(EqOutcome::Unknown(format!("degree {} exceeds the bound {}", diff.degree(), self.degree_bound)));
        }
        let mut memo = BTreeMap::new();
        if let Some(m) = diff.terms().keys().find(|m| !self.backed(m, &mut memo)) {
            let m = ClassExpr::monomial(m.clone(), BigInt::one());
            return Ok(EqOutcome::Unknown(format!("no product facts reduce {m}")));
        }
        let sat = self.saturate(&mut memo)?;
        let mut coords: BTreeSet<Monomial> = diff.terms().keys().cloned().collect();
        for r in &sat.rows {
            coords.extend(r.terms().keys().cloned());
        }
        let coords: Vec<Monomial> = coords.into_iter().collect();
        let index: BTreeMap<&Monomial, usize> = coords.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut a = IntMatrix::zero(coords.len(), sat.rows.len());
        for (j, r) in sat.rows.iter().enumerate() {
            for (m, c) in r.terms() {
                a.entries[index[m]][j] = c.clone();
            }
        }
        let mut v = vec![BigInt::zero(); coords.len()];
        for (m, c) in diff.terms() {
            v[index[m]] = c.clone();
        }
        match solve_integer(&a, &v) {
            Some(c) => {
                let rows: Vec<usize> = c.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(j, _)| j).collect();
                let mut used: Vec<String> = rows.iter().map(|&j| sat.sources[j].clone()).collect();
                let mut backing = Vec::new();
                for m in rows.iter().flat_map(|&j| sat.rows[j].terms().keys()).chain(diff.terms().keys()) {
                    self.backing(m, &mut memo, &mut backing);
                }
                used.extend(backing.into_iter().map(|b| format!("{b} (backs a product)")));
                Ok(EqOutcome::Equal { used })
            }
            None => Ok(EqOutcome::UnequalWithinBound),
        }
    }

    /// Free rank and torsion of the additive group on monomials up to the degree bound modulo
    /// the saturated relations.
    pub fn group_invariants(&self) -> Result<GroupInvariants, RingError> {
        if self.generators.is_empty() {
            return Ok(GroupInvariants { free_rank: 0, torsion: Vec::new() });
        }
        let mut memo = BTreeMap::new();
        let sat = self.saturate(&mut memo)?;
        let coords = self.monomials();
        let index: BTreeMap<&Monomial, usize> = coords.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut a = IntMatrix::zero(coords.len(), sat.rows.len());
        for (j, r) in sat.rows.iter().enumerate() {
            for (m, c) in r.terms() {
                a.entries[index[m]][j] = c.clone();
            }
        }
        let snf = smith_normal_form(&a);
        let torsion = snf.invariant_factors().into_iter().filter(|d| !d.is_one()).collect();
        Ok(GroupInvariants { free_rank: coords.len() - snf.rank(), torsion })
    }

    /// With `L = [P1] - [pt]`, checks `L·x = x` for every registered generator `x`.
    pub fn measure_check(&self, p1: &str) -> Result<MeasureReport, RingError> {
        if !self.generators.contains_key(p1) {
            return Err(RingError::Incomplete(format!("[{p1}] is not registered")));
        }
        if self.relations.is_empty() {
            return Err(RingError::Incomplete("no relations registered".into()));
        }
        let l = ClassExpr::generator(p1) - ClassExpr::one();
        let mut lines = Vec::new();
        for label in self.generators.keys() {
            let x = ClassExpr::generator(label);
            lines.push((label.clone(), self.eq(&(&l * &x), &x)?));
        }
        Ok(MeasureReport { l, lines })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasureReport {
    pub l: ClassExpr,
    pub lines: Vec<(String, EqOutcome)>,
}

impl MeasureReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|(_, o)| matches!(o, EqOutcome::Equal { .. }))
    }
}

impl fmt::Display for MeasureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "L = {}", self.l)?;
        for (x, o) in &self.lines {
            writeln!(f, "L*[{x}] = [{x}]: {o}")?;
        }
        if self.passed() {
            write!(f, "pass: μ(L)=1")
        } else {
            write!(f, "fail")
        }
    }
}

fn fact_source(f: &super::ProductFact) -> String {
    format!("fact: [{}]*[{}] = {} [{}]", f.left, f.right, f.value, f.provenance.tag())
}

/// An integer solution of `a c = v`, through the Smith form `u a w = d`.
fn solve_integer(a: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    if a.cols == 0 {
        return v.iter().all(Zero::is_zero).then(Vec::new);
    }
    let snf = smith_normal_form(a);
    let col = IntMatrix { rows: v.len(), cols: 1, entries: v.iter().map(|x| vec![x.clone()]).collect() };
    let w = snf.u.mul(&col);
    let mut y = vec![BigInt::zero(); a.cols];
    for i in 0..a.rows {
        let wi = &w.entries[i][0];
        let d = snf.diagonal.get(i).cloned().unwrap_or_default();
        if d.is_zero() {
            if !wi.is_zero() {
                return None;
            }
        } else {
            let (q, r) = wi.div_rem(&d);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    let yc = IntMatrix { rows: y.len(), cols: 1, entries: y.into_iter().map(|x| vec![x]).collect() };
    Some(snf.v.mul(&yc).entries.into_iter().map(|r| r[0].clone()).collect())
}
