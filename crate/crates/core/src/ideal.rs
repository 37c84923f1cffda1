//! Gröbner bases (Buchberger, normal selection strategy, Gebauer–Möller
//! criteria) and the ideal-theoretic predicates built on them.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use spin::Once;

use crate::coeff::Field;
use crate::poly::{Monomial, MonomialOrder, PolyError, Polynomial, Ring, RingRef, MAX_VARS};

type Terms<F> = Vec<(Monomial, <F as Field>::Elem)>;

/// Reduced Gröbner basis: monic, no leading monomial divides another,
/// sorted by leading monomial ascending.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    ring: RingRef<F>,
    polys: Vec<Polynomial<F>>,
}

/// Dimension of a vanishing set; `Empty` is the empty set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Dim {
    Empty,
    D(usize),
}

impl Dim {
    /// -1 for empty.
    pub fn as_i64(self) -> i64 {
        match self {
            Dim::Empty => -1,
            Dim::D(d) => d as i64,
        }
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::Empty => f.write_str("empty"),
            Dim::D(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealError {
    NotHomogeneous,
    EmptyScheme,
    ContextMismatch,
    Poly(PolyError),
}

impl From<PolyError> for IdealError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::ContextMismatch => IdealError::ContextMismatch,
            other => IdealError::Poly(other),
        }
    }
}

impl fmt::Display for IdealError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealError::NotHomogeneous => f.write_str("projective computation needs homogeneous generators"),
            IdealError::EmptyScheme => f.write_str("scheme is empty"),
            IdealError::ContextMismatch => f.write_str("ideals live in different rings"),
            IdealError::Poly(e) => write!(f, "{e}"),
        }
    }
}

// ---------------------------------------------------------------- reduction

/// Support bitmask, used as a cheap divisibility filter.
#[inline]
fn sup(m: &Monomial) -> u32 {
    m.support()
}

struct Reducer<'a, F: Field> {
    field: &'a F,
    order: MonomialOrder,
    /// (leading monomial, support mask, inverse leading coeff, terms)
    polys: Vec<(Monomial, u32, F::Elem, &'a [(Monomial, F::Elem)])>,
}

impl<'a, F: Field> Reducer<'a, F> {
    fn new(field: &'a F, order: MonomialOrder) -> Self {
        Reducer { field, order, polys: Vec::new() }
    }

    fn push(&mut self, terms: &'a [(Monomial, F::Elem)]) {
        let (m, c) = &terms[0];
        self.polys.push((*m, sup(m), self.field.inv(c).expect("nonzero"), terms));
    }

    #[inline]
    fn find(&self, m: &Monomial) -> Option<usize> {
        let s = sup(m);
        self.polys.iter().position(|(lm, ls, _, _)| ls & !s == 0 && lm.divides(m))
    }

    /// Full reduction. `asc` holds the working polynomial in ascending order
    /// so the leading term is popped from the end.
    fn reduce(&self, terms: Terms<F>, full: bool) -> Terms<F> {
        let field = self.field;
        let order = self.order;
        let mut work: Terms<F> = terms;
        work.reverse();
        let mut out: Terms<F> = Vec::new();
        let mut scratch: Terms<F> = Vec::new();
        while let Some((m, c)) = work.last().cloned() {
            match self.find(&m) {
                Some(i) => {
                    let (lm, _, inv, g) = &self.polys[i];
                    let q = m.div(lm);
                    let qc = field.neg(&field.mul(&c, inv));
                    work.pop();
                    // work += qc * q * g[1..], merging in ascending order
                    scratch.clear();
                    scratch.reserve(work.len() + g.len());
                    let mut a = 0usize;
                    let mut b = g.len();
                    while a < work.len() && b > 1 {
                        let gm = g[b - 1].0.mul(&q);
                        match order.cmp(&work[a].0, &gm) {
                            Ordering::Less => {
                                scratch.push(work[a].clone());
                                a += 1;
                            }
                            Ordering::Greater => {
                                scratch.push((gm, field.mul(&g[b - 1].1, &qc)));
                                b -= 1;
                            }
                            Ordering::Equal => {
                                let v = field.add(&work[a].1, &field.mul(&g[b - 1].1, &qc));
                                if !field.is_zero(&v) {
                                    scratch.push((gm, v));
                                }
                                a += 1;
                                b -= 1;
                            }
                        }
                    }
                    scratch.extend_from_slice(&work[a..]);
                    while b > 1 {
                        scratch.push((g[b - 1].0.mul(&q), field.mul(&g[b - 1].1, &qc)));
                        b -= 1;
                    }
                    core::mem::swap(&mut work, &mut scratch);
                }
                None => {
                    if !full {
                        out.push(work.pop().unwrap());
                        out.extend(work.drain(..).rev());
                        return out;
                    }
                    out.push(work.pop().unwrap());
                }
            }
        }
        out
    }
}

// ---------------------------------------------------------------- Buchberger

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Buchberger's algorithm with the normal strategy (smallest lcm degree,
/// then smallest (i, j)) and the Gebauer–Möller pair criteria.
pub fn buchberger<F: Field>(gens: &[Polynomial<F>]) -> Result<GroebnerBasis<F>, IdealError> {
    let ring = match gens.first() {
        Some(g) => g.ring().clone(),
        None => return Err(IdealError::Poly(PolyError::ZeroInput)),
    };
    if gens.iter().any(|g| !Ring::same(g.ring(), &ring)) {
        return Err(IdealError::ContextMismatch);
    }
    Ok(buchberger_in(&ring, gens))
}

fn buchberger_in<F: Field>(ring: &RingRef<F>, gens: &[Polynomial<F>]) -> GroebnerBasis<F> {
    let field = &ring.field;
    let order = ring.order;
    let mut basis: Vec<Terms<F>> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    // inter-reduce the input a little: sort by leading monomial ascending
    let mut input: Vec<Terms<F>> =
        gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic().into_terms()).collect();
    input.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));

    let unit = |ring: &RingRef<F>| GroebnerBasis { ring: ring.clone(), polys: vec![Polynomial::one(ring)] };

    let mut queue: Vec<Terms<F>> = input;
    queue.reverse();
    loop {
        let h = if let Some(t) = queue.pop() {
            Some(t)
        } else if !pairs.is_empty() {
            // normal strategy
            let mut best = 0;
            for k in 1..pairs.len() {
                let (p, q) = (&pairs[k], &pairs[best]);
                if (p.lcm.degree(), p.i, p.j) < (q.lcm.degree(), q.i, q.j) {
                    best = k;
                }
            }
            let p = pairs.swap_remove(best);
            Some(spoly::<F>(field, &basis[p.i], &basis[p.j], &p.lcm, order))
        } else {
            None
        };
        let h = match h {
            None => break,
            Some(h) => h,
        };
        if h.is_empty() {
            continue;
        }
        let mut red = Reducer::new(field, order);
        for (k, g) in basis.iter().enumerate() {
            if active[k] {
                red.push(g);
            }
        }
        let r = red.reduce(h, true);
        if r.is_empty() {
            continue;
        }
        if r[0].0.is_one() {
            return unit(ring);
        }
        let inv = field.inv(&r[0].1).expect("nonzero");
        let r: Terms<F> = r.into_iter().map(|(m, c)| (m, field.mul(&c, &inv))).collect();
        let t = basis.len();
        let lt = r[0].0;
        gm_update::<F>(&basis, &active, &mut pairs, t, &lt);
        for k in 0..t {
            if active[k] && lt.divides(&basis[k][0].0) {
                active[k] = false;
            }
        }
        basis.push(r);
        active.push(true);
    }

    // minimal basis, then inter-reduce
    let mut keep: Vec<Terms<F>> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        if !active[k] {
            continue;
        }
        let lm = g[0].0;
        let dominated = basis.iter().enumerate().any(|(l, o)| {
            l != k && active[l] && o[0].0.divides(&lm) && (o[0].0 != lm || l < k)
        });
        if !dominated {
            keep.push(g.clone());
        }
    }
    keep.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    let mut reduced: Vec<Terms<F>> = Vec::with_capacity(keep.len());
    for k in 0..keep.len() {
        let mut red = Reducer::new(field, order);
        for (l, o) in keep.iter().enumerate() {
            if l != k {
                red.push(o);
            }
        }
        let lead = keep[k][0].clone();
        let tail = red.reduce(keep[k][1..].to_vec(), true);
        let mut p = vec![lead];
        p.extend(tail);
        reduced.push(p);
    }
    GroebnerBasis { ring: ring.clone(), polys: reduced.into_iter().map(|t| Polynomial::from_sorted(ring, t)).collect() }
}

fn spoly<F: Field>(field: &F, f: &Terms<F>, g: &Terms<F>, lcm: &Monomial, order: MonomialOrder) -> Terms<F> {
    // both monic
    let mf = lcm.div(&f[0].0);
    let mg = lcm.div(&g[0].0);
    let a: Terms<F> = f[1..].iter().map(|(m, c)| (m.mul(&mf), c.clone())).collect();
    let b: Terms<F> = g[1..].iter().map(|(m, c)| (m.mul(&mg), c.clone())).collect();
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match order.cmp(&a[i].0, &b[j].0) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((b[j].0, field.neg(&b[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let v = field.sub(&a[i].1, &b[j].1);
                if !field.is_zero(&v) {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend(b[j..].iter().map(|(m, c)| (*m, field.neg(c))));
    out
}

/// Gebauer–Möller update for a new basis element with leading monomial `lt`
/// at index `t`.
fn gm_update<F: Field>(basis: &[Terms<F>], active: &[bool], pairs: &mut Vec<Pair>, t: usize, lt: &Monomial) {
    // new candidate pairs
    let mut cand: Vec<(Pair, bool)> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        if active[k] {
            let lm = g[0].0;
            cand.push((Pair { i: k, j: t, lcm: lm.lcm(lt) }, lm.gcd_is_one(lt)));
        }
    }
    // criterion M / F: keep a pair unless another candidate's lcm properly
    // divides it, or an equal lcm was already kept
    let mut kept: Vec<(Pair, bool)> = Vec::new();
    for idx in 0..cand.len() {
        let (p, coprime) = &cand[idx];
        let dominated = cand.iter().enumerate().any(|(o, (q, _))| {
            o != idx && q.lcm.divides(&p.lcm) && q.lcm != p.lcm
        }) || kept.iter().any(|(q, _)| q.lcm == p.lcm);
        if !dominated {
            kept.push((p.clone(), *coprime));
        }
    }
    // criterion B on old pairs
    pairs.retain(|p| {
        let li = basis[p.i][0].0.lcm(lt);
        let lj = basis[p.j][0].0.lcm(lt);
        !(lt.divides(&p.lcm) && li != p.lcm && lj != p.lcm)
    });
    // product criterion: drop coprime pairs, but also drop every pair
    // sharing an lcm with a coprime one
    let coprime_lcms: Vec<Monomial> = kept.iter().filter(|(_, c)| *c).map(|(p, _)| p.lcm).collect();
    for (p, c) in kept {
        if !c && !coprime_lcms.contains(&p.lcm) {
            pairs.push(p);
        }
    }
}

impl<F: Field> GroebnerBasis<F> {
    pub fn ring(&self) -> &RingRef<F> {
        &self.ring
    }

    pub fn polys(&self) -> &[Polynomial<F>] {
        &self.polys
    }

    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_one()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys.iter().map(|p| *p.leading_monomial().unwrap()).collect()
    }

    pub fn normal_form(&self, f: &Polynomial<F>) -> Polynomial<F> {
        assert!(Ring::same(f.ring(), &self.ring), "normal form across rings");
        let mut red = Reducer::new(&self.ring.field, self.ring.order);
        for p in &self.polys {
            red.push(p.terms());
        }
        Polynomial::from_sorted(&self.ring, red.reduce(f.terms().to_vec(), true))
    }

    pub fn contains(&self, f: &Polynomial<F>) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Buchberger criterion: every S-polynomial reduces to zero.
    pub fn verify(&self) -> bool {
        let field = &self.ring.field;
        let order = self.ring.order;
        let mut red = Reducer::new(field, order);
        for p in &self.polys {
            red.push(p.terms());
        }
        for i in 0..self.polys.len() {
            for j in (i + 1)..self.polys.len() {
                let (a, b) = (self.polys[i].terms(), self.polys[j].terms());
                let lcm = a[0].0.lcm(&b[0].0);
                if a[0].0.gcd_is_one(&b[0].0) {
                    continue;
                }
                let s = spoly::<F>(field, &a.to_vec(), &b.to_vec(), &lcm, order);
                if !red.reduce(s, false).is_empty() {
                    return false;
                }
            }
        }
        // monic and auto-reduced
        self.polys.iter().enumerate().all(|(i, p)| {
            field.is_one(p.leading_coeff().unwrap())
                && self.polys.iter().enumerate().all(|(j, q)| {
                    i == j || !p.terms().iter().any(|(m, _)| q.leading_monomial().unwrap().divides(m))
                })
        })
    }

    /// Krull dimension of R/I: the largest set of variables that contains
    /// the support of no leading monomial.
    pub fn affine_dimension(&self) -> Dim {
        if self.is_unit() {
            return Dim::Empty;
        }
        let n = self.ring.nvars();
        let sups: Vec<u32> = self.polys.iter().map(|p| p.leading_monomial().unwrap().support()).collect();
        let mut best = 0usize;
        for s in 0u32..(1u32 << n) {
            let size = s.count_ones() as usize;
            if size > best && sups.iter().all(|&m| m & !s != 0) {
                best = size;
            }
        }
        Dim::D(best)
    }

    pub fn projective_dimension(&self) -> Dim {
        match self.affine_dimension() {
            Dim::Empty | Dim::D(0) => Dim::Empty,
            Dim::D(d) => Dim::D(d - 1),
        }
    }

    /// Exponents k_i with x_i^{k_i} in I, when R/I is finite dimensional
    /// above some degree (homogeneous I with empty projective zero set).
    /// Found from the standard monomials and confirmed by normal forms.
    pub fn pure_power_exponents(&self) -> Option<Vec<u32>> {
        let n = self.ring.nvars();
        let lms = self.leading_monomials();
        // every variable needs a pure power among leading monomials
        for i in 0..n {
            if !lms.iter().any(|m| m.support() == 1 << i) {
                return None;
            }
        }
        // the Hilbert series is a polynomial here; its degree is the largest
        // degree of a standard monomial
        let mut hs = self.hilbert_numerator();
        for _ in 0..n {
            hs = div_one_minus_t(&hs);
        }
        let k0 = hs.iter().rposition(|&c| c != 0).unwrap_or(0) as u32 + 1;
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let p = Polynomial::term(&self.ring, Monomial::var(i, k0), self.ring.field.one());
            if !self.contains(&p) {
                return None;
            }
            out.push(k0);
        }
        Some(out)
    }

    /// Hilbert series numerator of R/LT(I) over (1-t)^n.
    pub fn hilbert_numerator(&self) -> Vec<i128> {
        let n = self.ring.nvars();
        let lms = minimalize(self.leading_monomials());
        hilbert_num(&lms, n)
    }

    /// Degree from the Hilbert series of the leading-term ideal.
    pub fn degree(&self) -> Result<u64, IdealError> {
        let d = match self.affine_dimension() {
            Dim::Empty => return Err(IdealError::EmptyScheme),
            Dim::D(d) => d,
        };
        let n = self.ring.nvars();
        let mut num = self.hilbert_numerator();
        for _ in 0..(n - d) {
            num = div_one_minus_t(&num);
        }
        let v: i128 = num.iter().sum();
        Ok(v as u64)
    }
}

fn minimalize(mut ms: Vec<Monomial>) -> Vec<Monomial> {
    ms.sort_by_key(|m| m.degree());
    let mut out: Vec<Monomial> = Vec::new();
    for m in ms {
        if !out.iter().any(|o| o.divides(&m)) {
            out.push(m);
        }
    }
    out
}

fn poly_sub(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, v) in a.iter().enumerate() {
        out[i] += v;
    }
    for (i, v) in b.iter().enumerate() {
        out[i] -= v;
    }
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    out
}

fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn div_one_minus_t(a: &[i128]) -> Vec<i128> {
    // a(t) = (1-t) q(t): q_k = sum_{i<=k} a_i
    let mut q = Vec::with_capacity(a.len());
    let mut acc = 0;
    for v in &a[..a.len().saturating_sub(1)] {
        acc += v;
        q.push(acc);
    }
    debug_assert_eq!(acc + a.last().copied().unwrap_or(0), 0, "not divisible by 1-t");
    if q.is_empty() {
        q.push(0);
    }
    q
}

/// Numerator N(t) of the Hilbert series of k[x]/M, M given by minimal
/// generators. Pivot recursion: N(M) = N(M + p) + t^deg p N(M : p).
fn hilbert_num(gens: &[Monomial], n: usize) -> Vec<i128> {
    if gens.is_empty() {
        return vec![1];
    }
    // base case: pairwise coprime generators
    let coprime = gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.gcd_is_one(b)));
    if coprime {
        let mut acc = vec![1i128];
        for m in gens {
            let mut f = vec![0i128; m.degree() as usize + 1];
            f[0] = 1;
            f[m.degree() as usize] -= 1;
            acc = poly_mul(&acc, &f);
        }
        return acc;
    }
    // pivot: the variable occurring in most non-linear generators, median exponent
    let mut count = [0usize; MAX_VARS];
    for m in gens {
        if m.support().count_ones() > 1 {
            for (i, c) in count.iter_mut().enumerate().take(n) {
                if m.exp(i) > 0 {
                    *c += 1;
                }
            }
        }
    }
    let var = (0..n).max_by_key(|&i| (count[i], core::cmp::Reverse(i))).unwrap();
    // exponents from mixed generators only, so x^e is not already in M
    let mut exps: Vec<u32> =
        gens.iter().filter(|m| m.support().count_ones() > 1).map(|m| m.exp(var)).filter(|&e| e > 0).collect();
    exps.sort_unstable();
    let e = exps[exps.len() / 2].max(1);
    let p = Monomial::var(var, e);
    let mut plus = gens.to_vec();
    plus.push(p);
    let plus = minimalize(plus);
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|m| {
            let mut q = *m;
            let k = m.exp(var).saturating_sub(e);
            q = q.with_exp(var, k);
            q
        })
        .collect();
    let colon = minimalize(colon);
    let a = hilbert_num(&plus, n);
    let b = hilbert_num(&colon, n);
    let mut shifted = vec![0i128; e as usize];
    shifted.extend(b);
    let neg: Vec<i128> = shifted.iter().map(|v| -v).collect();
    poly_sub(&a, &neg)
}

// ---------------------------------------------------------------- ideal handles

/// Generators plus a lazily computed, compute-once Gröbner basis.
pub struct Ideal<F: Field> {
    ring: RingRef<F>,
    gens: Vec<Polynomial<F>>,
    basis: Once<GroebnerBasis<F>>,
}

impl<F: Field> Clone for Ideal<F> {
    fn clone(&self) -> Self {
        let basis = match self.basis.get() {
            Some(b) => Once::initialized(b.clone()),
            None => Once::new(),
        };
        Ideal { ring: self.ring.clone(), gens: self.gens.clone(), basis }
    }
}

impl<F: Field> fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.gens.iter()).finish()
    }
}

impl<F: Field> Ideal<F> {
    pub fn new(ring: &RingRef<F>, gens: Vec<Polynomial<F>>) -> Result<Self, IdealError> {
        if gens.iter().any(|g| !Ring::same(g.ring(), ring)) {
            return Err(IdealError::ContextMismatch);
        }
        Ok(Ideal { ring: ring.clone(), gens, basis: Once::new() })
    }

    /// Ideal of the given generators; they must share a ring.
    pub fn from_gens(gens: Vec<Polynomial<F>>) -> Result<Self, IdealError> {
        let ring = gens.first().ok_or(IdealError::Poly(PolyError::ZeroInput))?.ring().clone();
        Self::new(&ring, gens)
    }

    pub fn ring(&self) -> &RingRef<F> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    pub fn basis(&self) -> &GroebnerBasis<F> {
        self.basis.call_once(|| {
            let b = buchberger_in(&self.ring, &self.gens);
            debug_assert!(b.polys.len() > 40 || b.verify(), "Buchberger criterion violated");
            b
        })
    }

    pub fn basis_if_computed(&self) -> Option<&GroebnerBasis<F>> {
        self.basis.get()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool, IdealError> {
        self.check(f)?;
        Ok(self.basis().contains(f))
    }

    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>, IdealError> {
        self.check(f)?;
        Ok(self.basis().normal_form(f))
    }

    fn check(&self, f: &Polynomial<F>) -> Result<(), IdealError> {
        if Ring::same(f.ring(), &self.ring) {
            Ok(())
        } else {
            Err(IdealError::ContextMismatch)
        }
    }

    pub fn is_unit(&self) -> bool {
        self.basis().is_unit()
    }

    pub fn with(&self, extra: &[Polynomial<F>]) -> Result<Self, IdealError> {
        let mut g = self.gens.clone();
        g.extend_from_slice(extra);
        Self::new(&self.ring, g)
    }

    pub fn sum(&self, o: &Ideal<F>) -> Result<Self, IdealError> {
        self.with(&o.gens)
    }

    pub fn dimension_affine(&self) -> Dim {
        self.basis().affine_dimension()
    }

    pub fn dimension_projective(&self) -> Result<Dim, IdealError> {
        if !self.is_homogeneous() {
            return Err(IdealError::NotHomogeneous);
        }
        Ok(self.basis().projective_dimension())
    }

    /// Projective emptiness by the second route: a power of every variable
    /// lies in the ideal.
    pub fn projective_empty_by_powers(&self) -> Result<bool, IdealError> {
        if !self.is_homogeneous() {
            return Err(IdealError::NotHomogeneous);
        }
        Ok(self.basis().is_unit() || self.basis().pure_power_exponents().is_some())
    }

    pub fn degree(&self) -> Result<u64, IdealError> {
        if !self.is_homogeneous() {
            return Err(IdealError::NotHomogeneous);
        }
        if self.basis().projective_dimension() == Dim::Empty {
            return Err(IdealError::EmptyScheme);
        }
        self.basis().degree()
    }

    /// f in rad(I): first look for f^k in I for small k, then fall back to
    /// the Rabinowitsch test 1 in I + (1 - y f).
    pub fn radical_contains(&self, f: &Polynomial<F>) -> Result<bool, IdealError> {
        self.radical_contains_with(f, 24)
    }

    pub fn radical_contains_with(&self, f: &Polynomial<F>, max_power: u32) -> Result<bool, IdealError> {
        self.check(f)?;
        let b = self.basis();
        if b.is_unit() {
            return Ok(true);
        }
        let mut p = b.normal_form(f);
        for _ in 1..=max_power {
            if p.is_zero() {
                return Ok(true);
            }
            p = b.normal_form(&(&p * f));
        }
        Ok(self.rabinowitsch(f))
    }

    /// 1 in I + (1 - y f) over R[y].
    pub fn rabinowitsch(&self, f: &Polynomial<F>) -> bool {
        let ext = self.ring.extend(&["_y"], false, MonomialOrder::Degrevlex);
        let n = self.ring.nvars();
        let map: Vec<usize> = (0..n).collect();
        let mut gens: Vec<Polynomial<F>> = self.gens.iter().map(|g| g.map_vars(&ext, &map)).collect();
        let y = Polynomial::var(&ext, n);
        gens.push(&Polynomial::one(&ext) - &(&y * &f.map_vars(&ext, &map)));
        buchberger_in(&ext, &gens).is_unit()
    }

    /// Sufficient test for f not in rad(I): adding f drops the dimension.
    pub fn dimension_drops(&self, f: &Polynomial<F>) -> Result<bool, IdealError> {
        let d0 = self.dimension_affine();
        let d1 = self.with(core::slice::from_ref(f))?.dimension_affine();
        Ok(d1 < d0)
    }

    /// Saturation I : g^inf = (I + (1 - y g)) ∩ R via an elimination order.
    pub fn saturate(&self, g: &Polynomial<F>) -> Result<Ideal<F>, IdealError> {
        self.check(g)?;
        let n = self.ring.nvars();
        let ext = self.ring.extend(&["_y"], true, MonomialOrder::Elim(1));
        let map: Vec<usize> = (1..=n).collect();
        let mut gens: Vec<Polynomial<F>> = self.gens.iter().map(|p| p.map_vars(&ext, &map)).collect();
        let y = Polynomial::var(&ext, 0);
        gens.push(&Polynomial::one(&ext) - &(&y * &g.map_vars(&ext, &map)));
        let b = buchberger_in(&ext, &gens);
        let back: Vec<Polynomial<F>> = b
            .polys
            .iter()
            .filter(|p| !p.involves(0))
            .map(|p| p.dehomogenize(0, &self.ring.field.zero()).to_ring(&self.ring))
            .collect();
        let gens = if back.is_empty() { vec![Polynomial::zero(&self.ring)] } else { back };
        Ideal::new(&self.ring, gens)
    }

    /// Every generator of self lies in rad(other) and vice versa.
    pub fn radical_equal(&self, other: &Ideal<F>) -> Result<bool, IdealError> {
        for g in &self.gens {
            if !other.radical_contains(g)? {
                return Ok(false);
            }
        }
        for g in &other.gens {
            if !self.radical_contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Same ideal (mutual membership).
    pub fn equal(&self, other: &Ideal<F>) -> Result<bool, IdealError> {
        for g in &self.gens {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// (F, dF/dx_0, ..., dF/dx_n).
pub fn singular_locus_ideal<F: Field>(f: &Polynomial<F>) -> Result<Ideal<F>, IdealError> {
    let mut gens = vec![f.clone()];
    gens.extend(f.gradient().into_iter().filter(|d| !d.is_zero()));
    Ideal::new(f.ring(), gens)
}

/// (F, G, all 2x2 minors of the Jacobian of (F, G)).
pub fn jacobian_transversality_ideal<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>) -> Result<Ideal<F>, IdealError> {
    if !Ring::same(f.ring(), g.ring()) {
        return Err(IdealError::ContextMismatch);
    }
    let (df, dg) = (f.gradient(), g.gradient());
    let mut gens = vec![f.clone(), g.clone()];
    for i in 0..df.len() {
        for j in (i + 1)..df.len() {
            let m = &(&df[i] * &dg[j]) - &(&df[j] * &dg[i]);
            if !m.is_zero() {
                gens.push(m);
            }
        }
    }
    Ideal::new(f.ring(), gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{PrimeField, Rationals, DEFAULT_PRIME};
    use crate::expr::poly;
    use crate::poly::tests::{fs1, fs2, ring4};
    use proptest::prelude::*;

    fn fp() -> PrimeField {
        PrimeField::new(DEFAULT_PRIME).unwrap()
    }

    fn ideal<F: Field>(r: &RingRef<F>, gens: &[&str]) -> Ideal<F> {
        Ideal::new(r, gens.iter().map(|s| poly(r, s).unwrap()).collect()).unwrap()
    }

    #[test]
    fn trivial_bases() {
        let r = ring4(Rationals);
        let i = ideal(&r, &["x0", "x1"]);
        assert_eq!(i.basis().polys().len(), 2);
        assert!(ideal(&r, &["x0^2 + x1", "1"]).is_unit());
        assert!(ideal(&r, &["0"]).basis().is_zero_ideal());
    }

    #[test]
    fn twisted_cubic_style() {
        let r = Ring::new(Rationals, &["x0", "x1", "x2"]);
        let i = ideal(&r, &["x0^2 - x1", "x0^3 - x2"]);
        let b = i.basis();
        assert!(b.verify());
        assert!(b.polys().contains(&poly(&r, "x0*x1 - x2").unwrap()));
        // hand-derived reduced basis in degrevlex with x0 > x1 > x2
        let expect = ["x0^2 - x1", "x0*x1 - x2", "x1^2 - x0*x2"];
        assert_eq!(b.polys().len(), 3);
        for e in expect {
            assert!(b.polys().contains(&poly(&r, e).unwrap()), "{e}");
        }
    }

    #[test]
    fn membership_examples() {
        let r = ring4(Rationals);
        let i = Ideal::new(&r, vec![fs1(&r)]).unwrap();
        let p6 = poly(&r, "x1^6*x2^6*x3^6").unwrap();
        assert!(i.contains(&(&fs2(&r) - &p6)).unwrap());
        assert!(!ideal(&r, &["x0^2"]).contains(&poly(&r, "x0").unwrap()).unwrap());
        let j = ideal(&r, &["x0^3 + x1", "x2*x3"]);
        assert!(j.contains(&poly(&r, "x0^3 + x1").unwrap()).unwrap());
    }

    #[test]
    fn radical_examples() {
        let r = ring4(Rationals);
        assert!(ideal(&r, &["x0^3"]).radical_contains(&poly(&r, "x0").unwrap()).unwrap());
        assert!(!ideal(&r, &["x0", "x1"]).radical_contains(&poly(&r, "x2").unwrap()).unwrap());
        // Rabinowitsch route alone
        assert!(ideal(&r, &["x0^30"]).rabinowitsch(&poly(&r, "x0").unwrap()));
        assert!(ideal(&r, &["x0^2"]).radical_equal(&ideal(&r, &["x0"])).unwrap());
        assert!(!ideal(&r, &["x0"]).radical_equal(&ideal(&r, &["x1"])).unwrap());
    }

    #[test]
    fn dimensions_and_degrees() {
        let r = ring4(Rationals);
        assert_eq!(ideal(&r, &["x0", "x1"]).dimension_projective().unwrap(), Dim::D(1));
        assert_eq!(ideal(&r, &["x0", "x1", "x2"]).degree().unwrap(), 1);
        assert_eq!(Ideal::new(&r, vec![fs1(&r)]).unwrap().degree().unwrap(), 9);
        let d1 = ideal(&r, &["x1", "x0^9 - x2^6*x3^3 + x2^3*x3^6"]);
        assert_eq!(d1.dimension_projective().unwrap(), Dim::D(1));
        assert_eq!(d1.degree().unwrap(), 9);
        assert_eq!(ideal(&r, &["x0", "x1", "x2", "x3"]).dimension_projective().unwrap(), Dim::Empty);
        assert_eq!(ideal(&r, &["x0^2 + x1"]).dimension_projective(), Err(IdealError::NotHomogeneous));
        assert_eq!(ideal(&r, &["x0", "x1", "x2", "x3"]).degree(), Err(IdealError::EmptyScheme));
    }

    #[test]
    fn complete_intersection_degrees() {
        let r = ring4(fp());
        let cases: &[(&[&str], u64)] = &[
            (&["x0^2 + x1*x2", "x3^3 - x0*x1*x2"], 6),
            (&["x0^9 - x1^9 + x2^8*x3 + x3^8*x2", "x0^21 + x1^21 + x2^21 - x3^21"], 189),
            (&["x1", "x0^9 - x2^6*x3^3 + x2^3*x3^6"], 9),
        ];
        for (g, d) in cases {
            assert_eq!(ideal(&r, g).degree().unwrap(), *d);
        }
    }

    #[test]
    fn sing_s1_is_zero_dimensional() {
        let r = ring4(fp());
        let s = singular_locus_ideal(&fs1(&r)).unwrap();
        assert_eq!(s.dimension_projective().unwrap(), Dim::D(0));
    }

    #[test]
    fn transversality_small() {
        let r = ring4(Rationals);
        let (a, b) = (poly(&r, "x0").unwrap(), poly(&r, "x0 + x1").unwrap());
        let t = jacobian_transversality_ideal(&a, &b).unwrap();
        assert_eq!(t.dimension_projective().unwrap(), Dim::Empty);
        assert!(t.projective_empty_by_powers().unwrap());
        let c = poly(&r, "x0 + x1^2").unwrap();
        // not homogeneous: the tangency along x0 = x1 = 0 is seen affinely
        let t2 = jacobian_transversality_ideal(&a, &c).unwrap();
        assert_eq!(t2.dimension_affine(), Dim::D(2));
        assert!(t2.equal(&ideal(&r, &["x0", "x1"])).unwrap());
        let s = singular_locus_ideal(&poly(&r, "x0^2").unwrap()).unwrap();
        assert!(s.radical_equal(&ideal(&r, &["x0"])).unwrap());
    }

    #[test]
    fn g2_smooth() {
        let r = ring4(fp());
        let g2 = poly(&r, "x0^21 + x1^21 + x2^21 - x3^21").unwrap();
        let s = singular_locus_ideal(&g2).unwrap();
        assert_eq!(s.dimension_projective().unwrap(), Dim::Empty);
        assert!(s.projective_empty_by_powers().unwrap());
    }

    #[test]
    fn saturation() {
        let r = Ring::new(Rationals, &["x", "y"]);
        let i = ideal(&r, &["x*y", "x^2"]);
        let s = i.saturate(&poly(&r, "x").unwrap()).unwrap();
        assert!(s.is_unit());
        let j = ideal(&r, &["x*y^2"]).saturate(&poly(&r, "y").unwrap()).unwrap();
        assert!(j.equal(&ideal(&r, &["x"])).unwrap());
    }

    #[test]
    fn hilbert_numerator_matches_brute_force() {
        // count standard monomials degree by degree for a zero-dim ideal
        let r = Ring::new(Rationals, &["a", "b", "c"]);
        let i = ideal(&r, &["a^2 - b*c", "b^3", "c^2 - a*b", "a*c^2"]);
        let b = i.basis();
        let lms = b.leading_monomials();
        let mut counts = vec![0i128; 12];
        for e0 in 0..12u32 {
            for e1 in 0..12u32 {
                for e2 in 0..12u32 {
                    let m = Monomial::from_exps(&[e0, e1, e2]);
                    if (m.degree() as usize) < 12 && !lms.iter().any(|l| l.divides(&m)) {
                        counts[m.degree() as usize] += 1;
                    }
                }
            }
        }
        // N(t) = HS(t) (1-t)^3
        let mut series: Vec<i128> = counts.clone();
        for _ in 0..3 {
            let mut next = series.clone();
            for k in 1..series.len() {
                next[k] = series[k] - series[k - 1];
            }
            series = next;
        }
        let num = b.hilbert_numerator();
        for k in 0..num.len().min(10) {
            assert_eq!(num[k], series[k], "coefficient {k}");
        }
        let total: i128 = counts.iter().sum();
        assert_eq!(b.degree().unwrap() as i128, total);
    }

    fn arb_gens() -> impl Strategy<Value = Vec<Vec<(u8, u8, u8, i64)>>> {
        proptest::collection::vec(proptest::collection::vec((0u8..3, 0u8..3, 0u8..3, -5i64..5), 1..4), 1..4)
    }

    fn build(r: &RingRef<PrimeField>, g: &[Vec<(u8, u8, u8, i64)>]) -> Vec<Polynomial<PrimeField>> {
        g.iter()
            .map(|t| {
                Polynomial::from_terms(
                    r,
                    t.iter()
                        .map(|&(a, b, c, v)| (Monomial::from_exps(&[a as u32, b as u32, c as u32]), r.field.elem(v)))
                        .collect(),
                )
            })
            .collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn buchberger_criterion_and_nf(g in arb_gens(), f in proptest::collection::vec((0u8..4, 0u8..4, 0u8..4, -5i64..5), 1..5)) {
            let r = Ring::new(fp(), &["a", "b", "c"]);
            let gens = build(&r, &g);
            let i = Ideal::new(&r, gens.clone()).unwrap();
            let b = i.basis();
            prop_assert!(b.verify());
            for g in &gens {
                prop_assert!(b.contains(g));
            }
            let f = build(&r, &[f])[0].clone();
            let nf = b.normal_form(&f);
            prop_assert_eq!(b.normal_form(&nf), nf.clone());
            prop_assert_eq!(nf.is_zero(), i.contains(&f).unwrap());
            prop_assert!(b.contains(&(&f - &nf)));
        }

        #[test]
        fn emptiness_routes_agree(g in arb_gens()) {
            let r = Ring::new(fp(), &["a", "b", "c"]);
            // homogenize generators by keeping top-degree parts
            let gens: Vec<_> = build(&r, &g).into_iter().filter(|p| !p.is_zero()).map(|p| {
                let d = p.total_degree().unwrap();
                Polynomial::from_terms(&r, p.terms().iter().filter(|t| t.0.degree() == d).cloned().collect())
            }).collect();
            prop_assume!(!gens.is_empty());
            let i = Ideal::new(&r, gens).unwrap();
            let empty = i.dimension_projective().unwrap() == Dim::Empty;
            prop_assert_eq!(empty, i.projective_empty_by_powers().unwrap());
            // independent route: every variable in the radical
            let all = (0..3).all(|k| i.rabinowitsch(&Polynomial::var(&r, k)));
            prop_assert_eq!(empty, all);
        }

        #[test]
        fn hypersurface_dim_and_degree(t in proptest::collection::vec((0u8..4, 0u8..4, -5i64..5), 1..5), d in 1u32..5) {
            let r = ring4(fp());
            let terms: Vec<_> = t.iter().filter(|(a, b, _)| (*a as u32 + *b as u32) <= d).map(|&(a, b, v)| {
                (Monomial::from_exps(&[a as u32, b as u32, 0, d - a as u32 - b as u32]), r.field.elem(v))
            }).collect();
            let f = Polynomial::from_terms(&r, terms);
            prop_assume!(!f.is_zero());
            let i = Ideal::new(&r, vec![f]).unwrap();
            prop_assert_eq!(i.dimension_projective().unwrap(), Dim::D(2));
            prop_assert_eq!(i.degree().unwrap(), d as u64);
        }
    }
}
