//! Residue-constraint subgroups of (Z/3)^n and the hypothesis checklist.
//!
//! Constraints only ever identify two coordinates, so H and H' come out of
//! a union-find over component indices; the subgroup type keeps an explicit
//! row-reduced basis anyway.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::coeff::Field;
use crate::ideal::{Dim, Ideal, IdealError};
use crate::poly::Polynomial;

pub type Z3Vector = Vec<u8>;

/// Subgroup of (Z/3)^n by a row-reduced basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupF3 {
    n: usize,
    basis: Vec<Z3Vector>,
}

impl SubgroupF3 {
    /// Span of arbitrary vectors, reduced to echelon form.
    pub fn span(n: usize, gens: &[Z3Vector]) -> Self {
        let mut rows: Vec<Z3Vector> = gens.iter().map(|v| v.iter().map(|x| x % 3).collect()).collect();
        let mut basis: Vec<Z3Vector> = Vec::new();
        let mut col = 0;
        while col < n && !rows.is_empty() {
            if let Some(p) = rows.iter().position(|r| r[col] != 0) {
                let mut piv = rows.swap_remove(p);
                let inv = if piv[col] == 1 { 1 } else { 2 };
                for x in piv.iter_mut() {
                    *x = (*x * inv) % 3;
                }
                for r in rows.iter_mut().chain(basis.iter_mut()) {
                    let c = r[col];
                    if c != 0 {
                        for (x, y) in r.iter_mut().zip(&piv) {
                            *x = (*x + 3 * 3 - c * y) % 3;
                        }
                    }
                }
                basis.push(piv);
            }
            col += 1;
        }
        basis.sort_by(|a, b| b.cmp(a));
        SubgroupF3 { n, basis }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &[Z3Vector] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn order(&self) -> u64 {
        3u64.pow(self.rank() as u32)
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        let before = self.rank();
        let mut gens = self.basis.clone();
        gens.push(v.to_vec());
        SubgroupF3::span(self.n, &gens).rank() == before
    }

    pub fn is_subgroup_of(&self, o: &SubgroupF3) -> bool {
        self.basis.iter().all(|v| o.contains(v))
    }

    pub fn elements(&self) -> Vec<Z3Vector> {
        let mut out = vec![vec![0u8; self.n]];
        for b in &self.basis {
            let mut next = Vec::with_capacity(out.len() * 3);
            for v in &out {
                for c in 0..3u8 {
                    next.push(v.iter().zip(b).map(|(x, y)| (x + c * y) % 3).collect());
                }
            }
            out = next;
        }
        out
    }
}

impl fmt::Display for SubgroupF3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, b) in self.basis.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "(")?;
            for (j, x) in b.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        write!(f, "> of order {}", self.order())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RestrictionStatus {
    TrivialByWitness,
    NontrivialByEvidence,
    Unknown,
}

/// Verified data of an intersection curve, reduced to what the group
/// computation needs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveConstraint {
    pub name: String,
    pub pair: (usize, usize),
    pub residues: (u8, u8),
    pub restrictions: (RestrictionStatus, RestrictionStatus),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ObstructionError {
    UnresolvedRestriction(String),
    AllOnesMissing,
    BadIndex(String),
}

impl fmt::Display for ObstructionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObstructionError::UnresolvedRestriction(c) => write!(f, "restriction status unknown on curve {c}"),
            ObstructionError::AllOnesMissing => f.write_str("the all-ones vector is not in H'"),
            ObstructionError::BadIndex(c) => write!(f, "curve {c} refers to a missing component"),
        }
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, i: usize) -> usize {
        let p = self.0[i];
        if p == i {
            return i;
        }
        let r = self.find(p);
        self.0[i] = r;
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
    /// Subgroup of vectors constant on every class: one indicator per class.
    fn subgroup(mut self) -> SubgroupF3 {
        let n = self.0.len();
        let mut gens = Vec::new();
        for root in 0..n {
            if self.find(root) == root {
                gens.push((0..n).map(|i| u8::from(self.find(i) == root)).collect());
            }
        }
        SubgroupF3::span(n, &gens)
    }
}

pub fn build_gamma(n: usize) -> SubgroupF3 {
    let gens: Vec<Z3Vector> = (0..n).map(|i| (0..n).map(|j| u8::from(i == j)).collect()).collect();
    SubgroupF3::span(n, &gens)
}

fn check_indices(n: usize, curves: &[CurveConstraint]) -> Result<(), ObstructionError> {
    match curves.iter().find(|c| c.pair.0 >= n || c.pair.1 >= n) {
        Some(c) => Err(ObstructionError::BadIndex(c.name.clone())),
        None => Ok(()),
    }
}

fn h_constrains(c: &CurveConstraint) -> bool {
    matches!(c.residues, (1, 2) | (2, 1))
}

pub fn compute_h(n: usize, curves: &[CurveConstraint]) -> Result<SubgroupF3, ObstructionError> {
    check_indices(n, curves)?;
    let mut uf = UnionFind::new(n);
    for c in curves.iter().filter(|c| h_constrains(c)) {
        uf.union(c.pair.0, c.pair.1);
    }
    Ok(uf.subgroup())
}

/// H' inside H: (0,0)-curves whose restrictions are not both trivial add an
/// equality. Unknown statuses on (0,0)-curves refuse the computation.
pub fn compute_hprime(n: usize, curves: &[CurveConstraint]) -> Result<SubgroupF3, ObstructionError> {
    check_indices(n, curves)?;
    let mut uf = UnionFind::new(n);
    for c in curves {
        if h_constrains(c) {
            uf.union(c.pair.0, c.pair.1);
        } else if c.residues == (0, 0) {
            use RestrictionStatus::*;
            match &c.restrictions {
                (Unknown, _) | (_, Unknown) => return Err(ObstructionError::UnresolvedRestriction(c.name.clone())),
                (TrivialByWitness, TrivialByWitness) => {}
                _ => uf.union(c.pair.0, c.pair.1),
            }
        }
    }
    Ok(uf.subgroup())
}

/// Order of H' / <(1,...,1)> and whether it is nontrivial.
pub fn quotient_report(hprime: &SubgroupF3) -> Result<(u64, bool), ObstructionError> {
    if !hprime.contains(&vec![1u8; hprime.n()]) {
        return Err(ObstructionError::AllOnesMissing);
    }
    let q = hprime.order() / 3;
    Ok((q, q > 1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionSummary {
    pub gamma_order: u64,
    pub h_order: u64,
    pub hprime_order: u64,
    pub quotient_order: u64,
    pub nontrivial: bool,
    pub h: SubgroupF3,
    pub hprime: SubgroupF3,
}

pub fn summarize(n: usize, curves: &[CurveConstraint]) -> Result<ObstructionSummary, ObstructionError> {
    let gamma = build_gamma(n);
    let h = compute_h(n, curves)?;
    let hprime = compute_hprime(n, curves)?;
    debug_assert!(hprime.is_subgroup_of(&h) && h.is_subgroup_of(&gamma));
    let (quotient_order, nontrivial) = quotient_report(&hprime)?;
    Ok(ObstructionSummary {
        gamma_order: gamma.order(),
        h_order: h.order(),
        hprime_order: hprime.order(),
        quotient_order,
        nontrivial,
        h,
        hprime,
    })
}

// ---------------------------------------------------------------- checklist

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Witnessed,
    Asserted,
}

impl CheckStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Witnessed => "witnessed",
            CheckStatus::Asserted => "asserted",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChecklistItem {
    pub id: String,
    pub status: CheckStatus,
    pub details: String,
}

fn item(id: &str, status: CheckStatus, details: String) -> ChecklistItem {
    ChecklistItem { id: id.into(), status, details }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize == k {
            out.push((0..n).filter(|i| mask & (1 << i) != 0).collect());
        }
    }
    out
}

fn intersection_dim<F: Field>(polys: &[Polynomial<F>], idx: &[usize]) -> Result<Dim, IdealError> {
    let ring = polys[idx[0]].ring();
    Ideal::new(ring, idx.iter().map(|&i| polys[i].clone()).collect())?.dimension_projective()
}

/// Incidence bounds: no curve on three surfaces (triple intersections of
/// dimension at most 0) and no point on four (quadruple intersections
/// empty).
pub fn incidence_checks<F: Field>(surfaces: &[Polynomial<F>]) -> Result<Vec<ChecklistItem>, IdealError> {
    let n = surfaces.len();
    let mut out = Vec::new();
    let mut bad = Vec::new();
    for t in subsets(n, 3) {
        let d = intersection_dim(surfaces, &t)?;
        if d.as_i64() >= 1 {
            bad.push(format!("{t:?} has dimension {d}"));
        }
    }
    out.push(if bad.is_empty() {
        item("incidence-curves", CheckStatus::Pass, format!("{} triple intersections checked", subsets(n, 3).len()))
    } else {
        item("incidence-curves", CheckStatus::Fail, bad.join("; "))
    });
    let mut bad = Vec::new();
    for q in subsets(n, 4) {
        let d = intersection_dim(surfaces, &q)?;
        if d != Dim::Empty {
            bad.push(format!("{q:?} has dimension {d}"));
        }
    }
    out.push(if bad.is_empty() {
        item("incidence-points", CheckStatus::Pass, format!("{} quadruple intersections checked", subsets(n, 4).len()))
    } else {
        item("incidence-points", CheckStatus::Fail, bad.join("; "))
    });
    Ok(out)
}

/// Per-surface inputs for the good-locus items.
pub struct SurfaceFacts {
    pub name: String,
    /// Projective dimension of the singular locus (reducedness needs < 2).
    pub singular_dim: i64,
    /// gamma_i shown nontrivial, so the triple cover is irreducible.
    pub gamma_nontrivial: bool,
}

/// The full checklist. `cartier` lists (curve, witness verified) for the
/// factoriality item.
pub fn hypothesis_checklist<F: Field>(
    surfaces: &[Polynomial<F>],
    facts: &[SurfaceFacts],
    cartier: &[(String, bool)],
) -> Result<Vec<ChecklistItem>, IdealError> {
    let mut out = incidence_checks(surfaces)?;
    out.push(if cartier.iter().all(|c| c.1) {
        let names: Vec<&str> = cartier.iter().map(|c| c.0.as_str()).collect();
        item("factoriality", CheckStatus::Witnessed, format!("Cartier witnesses on curves [{}]", names.join(", ")))
    } else {
        let names: Vec<&str> = cartier.iter().filter(|c| !c.1).map(|c| c.0.as_str()).collect();
        item("factoriality", CheckStatus::Fail, format!("missing or rejected Cartier witness: {}", names.join(", ")))
    });
    let nonreduced: Vec<&str> = facts.iter().filter(|f| f.singular_dim >= 2).map(|f| f.name.as_str()).collect();
    out.push(if nonreduced.is_empty() {
        item("good-locus-reduced", CheckStatus::Pass, "singular loci have dimension at most 1".into())
    } else {
        item("good-locus-reduced", CheckStatus::Fail, format!("non-reduced: {}", nonreduced.join(", ")))
    });
    out.push(item("good-locus-fibers", CheckStatus::Asserted, "general fiber type over each component, by citation".into()));
    let trivial: Vec<&str> = facts.iter().filter(|f| !f.gamma_nontrivial).map(|f| f.name.as_str()).collect();
    out.push(if trivial.is_empty() {
        item("good-locus-cover", CheckStatus::Pass, "each residue class has nontriviality evidence".into())
    } else {
        item("good-locus-cover", CheckStatus::Fail, format!("no nontriviality evidence: {}", trivial.join(", ")))
    });
    out.push(item("good-locus-kernel", CheckStatus::Asserted, "kernel generation condition, proof-level".into()));
    Ok(out)
}
