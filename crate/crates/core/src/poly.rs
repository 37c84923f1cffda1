//! Sparse multivariate polynomials over a [`Field`], with the calculus,
//! divisibility and Eisenstein machinery used by the irreducibility
//! certificates.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::coeff::{CoeffError, Field};

/// Hard cap on ring size; monomials are fixed-size arrays.
pub const MAX_VARS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    ContextMismatch,
    NotHomogeneous,
    ZeroInput,
    LengthMismatch { expected: usize, got: usize },
    UncertifiedPrime,
    TooManyVariables(usize),
    UnknownVariable(String),
    Coeff(CoeffError),
}

impl From<CoeffError> for PolyError {
    fn from(e: CoeffError) -> Self {
        PolyError::Coeff(e)
    }
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::ContextMismatch => f.write_str("polynomials live in different rings"),
            PolyError::NotHomogeneous => f.write_str("polynomial is not homogeneous"),
            PolyError::ZeroInput => f.write_str("zero input"),
            PolyError::LengthMismatch { expected, got } => {
                write!(f, "point has {got} coordinates, ring has {expected} variables")
            }
            PolyError::UncertifiedPrime => f.write_str("prime lacks a checkable irreducibility certificate"),
            PolyError::TooManyVariables(n) => write!(f, "{n} variables exceeds the limit of {MAX_VARS}"),
            PolyError::UnknownVariable(v) => write!(f, "unknown variable `{v}`"),
            PolyError::Coeff(e) => write!(f, "{e}"),
        }
    }
}

// ---------------------------------------------------------------- monomials

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    deg: u32,
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e != 0).map_or(0, |i| i + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}

impl Default for Monomial {
    fn default() -> Self {
        Self::one()
    }
}

impl Monomial {
    pub const fn one() -> Self {
        Monomial { exps: [0; MAX_VARS], deg: 0 }
    }

    pub fn from_exps(e: &[u32]) -> Self {
        assert!(e.len() <= MAX_VARS);
        let mut m = Self::one();
        for (i, &x) in e.iter().enumerate() {
            m.exps[i] = u16::try_from(x).expect("exponent overflow");
            m.deg += x;
        }
        m
    }

    pub fn var(i: usize, e: u32) -> Self {
        let mut m = Self::one();
        m.exps[i] = u16::try_from(e).expect("exponent overflow");
        m.deg = e;
        m
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn exps(&self) -> &[u16; MAX_VARS] {
        &self.exps
    }

    #[inline]
    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut r = *self;
        for i in 0..MAX_VARS {
            r.exps[i] += o.exps[i];
        }
        r.deg += o.deg;
        r
    }

    #[inline]
    pub fn divides(&self, o: &Monomial) -> bool {
        self.deg <= o.deg && (0..MAX_VARS).all(|i| self.exps[i] <= o.exps[i])
    }

    /// self / o, assuming o divides self.
    #[inline]
    pub fn div(&self, o: &Monomial) -> Monomial {
        let mut r = *self;
        for i in 0..MAX_VARS {
            r.exps[i] -= o.exps[i];
        }
        r.deg -= o.deg;
        r
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        let mut r = Self::one();
        for i in 0..MAX_VARS {
            r.exps[i] = self.exps[i].max(o.exps[i]);
            r.deg += r.exps[i] as u32;
        }
        r
    }

    pub fn gcd_is_one(&self, o: &Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.exps[i] == 0 || o.exps[i] == 0)
    }

    pub fn with_exp(&self, i: usize, e: u32) -> Monomial {
        let mut r = *self;
        r.deg = r.deg - r.exps[i] as u32 + e;
        r.exps[i] = u16::try_from(e).expect("exponent overflow");
        r
    }

    /// Support as a bitmask over variable indices.
    pub fn support(&self) -> u32 {
        let mut s = 0;
        for i in 0..MAX_VARS {
            if self.exps[i] != 0 {
                s |= 1 << i;
            }
        }
        s
    }
}

/// Global monomial orders.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Degrevlex,
    Lex,
    /// Block order eliminating the first `k` variables: degrevlex on the
    /// first block, ties broken by degrevlex on the rest.
    Elim(u8),
}

fn revlex(a: &Monomial, b: &Monomial, lo: usize, hi: usize) -> Ordering {
    for i in (lo..hi).rev() {
        if a.exps[i] != b.exps[i] {
            return b.exps[i].cmp(&a.exps[i]);
        }
    }
    Ordering::Equal
}

fn block_deg(a: &Monomial, lo: usize, hi: usize) -> u32 {
    a.exps[lo..hi].iter().map(|&e| e as u32).sum()
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Degrevlex => a.deg.cmp(&b.deg).then_with(|| revlex(a, b, 0, MAX_VARS)),
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::Elim(k) => {
                let k = *k as usize;
                block_deg(a, 0, k)
                    .cmp(&block_deg(b, 0, k))
                    .then_with(|| revlex(a, b, 0, k))
                    .then_with(|| block_deg(a, k, MAX_VARS).cmp(&block_deg(b, k, MAX_VARS)))
                    .then_with(|| revlex(a, b, k, MAX_VARS))
            }
        }
    }
}

// ---------------------------------------------------------------- rings

/// Coefficient field, ordered variable names and the term order.
#[derive(Debug, Clone, PartialEq)]
pub struct Ring<F: Field> {
    pub field: F,
    pub names: Vec<String>,
    pub order: MonomialOrder,
}

pub type RingRef<F> = Arc<Ring<F>>;

impl<F: Field> Ring<F> {
    pub fn new(field: F, names: &[&str]) -> RingRef<F> {
        Self::with_order(field, names.iter().map(|s| s.to_string()).collect(), MonomialOrder::Degrevlex)
    }

    pub fn with_order(field: F, names: Vec<String>, order: MonomialOrder) -> RingRef<F> {
        assert!(names.len() <= MAX_VARS, "at most {MAX_VARS} variables");
        Arc::new(Ring { field, names, order })
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn same(a: &RingRef<F>, b: &RingRef<F>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }

    /// The same variables under another order.
    pub fn reorder(self: &RingRef<F>, order: MonomialOrder) -> RingRef<F> {
        if self.order == order {
            return self.clone();
        }
        Ring::with_order(self.field.clone(), self.names.clone(), order)
    }

    /// Ring with extra variables appended (or prepended when `front`).
    pub fn extend(self: &RingRef<F>, extra: &[&str], front: bool, order: MonomialOrder) -> RingRef<F> {
        let mut names: Vec<String> = extra.iter().map(|s| s.to_string()).collect();
        if front {
            names.extend(self.names.iter().cloned());
        } else {
            let mut n = self.names.clone();
            n.extend(names);
            names = n;
        }
        Ring::with_order(self.field.clone(), names, order)
    }

    /// Ring with variable `i` removed.
    pub fn drop_var(self: &RingRef<F>, i: usize) -> RingRef<F> {
        let mut names = self.names.clone();
        names.remove(i);
        Ring::with_order(self.field.clone(), names, self.order)
    }
}

// ---------------------------------------------------------------- polynomials

/// Terms are kept sorted by the ring order, largest first, no zero
/// coefficients.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: RingRef<F>,
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, o: &Self) -> bool {
        Ring::same(&self.ring, &o.ring) && self.terms == o.terms
    }
}

impl<F: Field> Eq for Polynomial<F> {}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn merge_add<F: Field>(
    field: &F,
    order: MonomialOrder,
    a: &[(Monomial, F::Elem)],
    b: &[(Monomial, F::Elem)],
    negate_b: bool,
) -> Vec<(Monomial, F::Elem)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match order.cmp(&a[i].0, &b[j].0) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let c = if negate_b { field.neg(&b[j].1) } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_b { field.sub(&a[i].1, &b[j].1) } else { field.add(&a[i].1, &b[j].1) };
                if !field.is_zero(&c) {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for t in &b[j..] {
        let c = if negate_b { field.neg(&t.1) } else { t.1.clone() };
        out.push((t.0, c));
    }
    out
}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &RingRef<F>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &RingRef<F>, c: F::Elem) -> Self {
        Self::term(ring, Monomial::one(), c)
    }

    pub fn one(ring: &RingRef<F>) -> Self {
        Self::constant(ring, ring.field.one())
    }

    pub fn from_i64(ring: &RingRef<F>, c: i64) -> Self {
        Self::constant(ring, ring.field.from_i64(c))
    }

    pub fn term(ring: &RingRef<F>, m: Monomial, c: F::Elem) -> Self {
        let terms = if ring.field.is_zero(&c) { Vec::new() } else { vec![(m, c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn var(ring: &RingRef<F>, i: usize) -> Self {
        assert!(i < ring.nvars(), "variable index out of range");
        Self::term(ring, Monomial::var(i, 1), ring.field.one())
    }

    pub fn var_named(ring: &RingRef<F>, name: &str) -> Result<Self, PolyError> {
        let i = ring.index_of(name).ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(Self::var(ring, i))
    }

    /// Build from unsorted terms; duplicates are combined, zeros dropped.
    pub fn from_terms(ring: &RingRef<F>, mut terms: Vec<(Monomial, F::Elem)>) -> Self {
        let field = &ring.field;
        let order = ring.order;
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, F::Elem)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = field.add(&last.1, &c),
                _ => {
                    if let Some(last) = out.last() {
                        if field.is_zero(&last.1) {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if let Some(last) = out.last() {
            if field.is_zero(&last.1) {
                out.pop();
            }
        }
        Polynomial { ring: ring.clone(), terms: out }
    }

    /// Terms already sorted descending and free of zeros.
    pub(crate) fn from_sorted(ring: &RingRef<F>, terms: Vec<(Monomial, F::Elem)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.order.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &RingRef<F> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        &self.ring.field
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F::Elem)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn constant_value(&self) -> Option<F::Elem> {
        match self.terms.as_slice() {
            [] => Some(self.field().zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self.terms.as_slice(), [(m, c)] if m.is_one() && self.field().is_one(c))
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&F::Elem> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.iter().map(|t| t.0.exp(var)).max()
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|t| t.0.exp(var) > 0)
    }

    /// Indices of variables that occur.
    pub fn variables(&self) -> Vec<usize> {
        let s = self.terms.iter().fold(0u32, |s, t| s | t.0.support());
        (0..self.ring.nvars()).filter(|i| s & (1 << i) != 0).collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|t| t.0.degree() == m.degree()),
        }
    }

    fn check_ring(&self, o: &Self) -> Result<(), PolyError> {
        if Ring::same(&self.ring, &o.ring) {
            Ok(())
        } else {
            Err(PolyError::ContextMismatch)
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self, PolyError> {
        self.check_ring(o)?;
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms: merge_add(self.field(), self.ring.order, &self.terms, &o.terms, false),
        })
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self, PolyError> {
        self.check_ring(o)?;
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms: merge_add(self.field(), self.ring.order, &self.terms, &o.terms, true),
        })
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self, PolyError> {
        self.check_ring(o)?;
        if self.is_zero() || o.is_zero() {
            return Ok(Self::zero(&self.ring));
        }
        let (a, b) = if self.len() <= o.len() { (self, o) } else { (o, self) };
        if a.len() == 1 {
            return Ok(b.mul_term(&a.terms[0].0, &a.terms[0].1));
        }
        let field = self.field();
        let mut prod = Vec::with_capacity(a.len() * b.len());
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                prod.push((ma.mul(mb), field.mul(ca, cb)));
            }
        }
        Ok(Self::from_terms(&self.ring, prod))
    }

    pub fn neg(&self) -> Self {
        let f = self.field();
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (*m, f.neg(c))).collect() }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = self.field();
        if f.is_zero(c) {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (*m, f.mul(a, c))).collect(),
        }
    }

    /// Multiply by c*m; order is preserved so no re-sort is needed.
    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Self {
        let f = self.field();
        if f.is_zero(c) {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(a, x)| (a.mul(m), f.mul(x, c))).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Scale so the leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) if self.field().is_one(c) => self.clone(),
            Some(c) => self.scale(&self.field().inv(c).expect("nonzero leading coefficient")),
        }
    }

    pub fn partial_derivative(&self, var: usize) -> Self {
        let f = self.field();
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e == 0 {
                continue;
            }
            let c2 = f.mul(c, &f.from_i64(e as i64));
            if !f.is_zero(&c2) {
                terms.push((m.with_exp(var, e - 1), c2));
            }
        }
        // lowering one exponent can reorder terms under lex-like orders
        Self::from_terms(&self.ring, terms)
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.ring.nvars()).map(|i| self.partial_derivative(i)).collect()
    }

    /// Euler's identity sum x_i df/dx_i = deg(f) f; returns the degree used.
    pub fn euler_identity_check(&self) -> Result<(bool, u32), PolyError> {
        if !self.is_homogeneous() {
            return Err(PolyError::NotHomogeneous);
        }
        let d = self.total_degree().unwrap_or(0);
        let mut lhs = Self::zero(&self.ring);
        for i in 0..self.ring.nvars() {
            lhs = &lhs + &(&Self::var(&self.ring, i) * &self.partial_derivative(i));
        }
        let rhs = self.scale(&self.field().from_i64(d as i64));
        Ok((lhs == rhs, d))
    }

    pub fn evaluate(&self, point: &[F::Elem]) -> Result<F::Elem, PolyError> {
        let n = self.ring.nvars();
        if point.len() != n {
            return Err(PolyError::LengthMismatch { expected: n, got: point.len() });
        }
        let f = self.field();
        // cache powers per variable
        let mut pows: Vec<Vec<F::Elem>> = vec![vec![f.one()]; n];
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, p) in pows.iter_mut().enumerate() {
                let e = m.exp(i) as usize;
                if e == 0 {
                    continue;
                }
                while p.len() <= e {
                    let next = f.mul(p.last().unwrap(), &point[i]);
                    p.push(next);
                }
                t = f.mul(&t, &p[e]);
            }
            acc = f.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Exact quotient self / g by long division, or None if g does not divide.
    pub fn exact_div(&self, g: &Self) -> Result<Option<Self>, PolyError> {
        self.check_ring(g)?;
        if g.is_zero() {
            return Err(PolyError::ZeroInput);
        }
        let f = self.field();
        let (glm, glc) = (g.terms[0].0, f.inv(&g.terms[0].1)?);
        let mut r = self.clone();
        let mut q = Vec::new();
        while let Some((m, c)) = r.terms.first().cloned() {
            if !glm.divides(&m) {
                return Ok(None);
            }
            let tm = m.div(&glm);
            let tc = f.mul(&c, &glc);
            r = r.checked_sub(&g.mul_term(&tm, &tc))?;
            q.push((tm, tc));
        }
        Ok(Some(Self::from_sorted(&self.ring, q)))
    }

    pub fn divides(&self, g: &Self) -> Result<bool, PolyError> {
        Ok(g.exact_div(self)?.is_some())
    }

    /// Largest k with self^k | g.
    pub fn multiplicity_in(&self, g: &Self) -> Result<u32, PolyError> {
        self.check_ring(g)?;
        if g.is_zero() || self.is_constant() {
            return Err(PolyError::ZeroInput);
        }
        let mut k = 0;
        let mut cur = g.clone();
        while let Some(q) = cur.exact_div(self)? {
            k += 1;
            cur = q;
        }
        Ok(k)
    }

    /// Coefficients with respect to `var`, highest exponent first. The
    /// coefficients stay in the same ring and do not involve `var`.
    pub fn univariate_view(&self, var: usize) -> Vec<(u32, Self)> {
        let mut buckets: Vec<(u32, Vec<(Monomial, F::Elem)>)> = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exp(var);
            let entry = match buckets.iter().position(|b| b.0 == e) {
                Some(i) => i,
                None => {
                    buckets.push((e, Vec::new()));
                    buckets.len() - 1
                }
            };
            buckets[entry].1.push((m.with_exp(var, 0), c.clone()));
        }
        buckets.sort_by(|a, b| b.0.cmp(&a.0));
        buckets.into_iter().map(|(e, t)| (e, Self::from_terms(&self.ring, t))).collect()
    }

    /// Coefficient of var^e.
    pub fn coeff_of(&self, var: usize, e: u32) -> Self {
        let terms =
            self.terms.iter().filter(|(m, _)| m.exp(var) == e).map(|(m, c)| (m.with_exp(var, 0), c.clone())).collect();
        Self::from_terms(&self.ring, terms)
    }

    /// Substitute every variable: variable i becomes images[i], which live in
    /// a common target ring.
    pub fn compose(&self, images: &[Polynomial<F>]) -> Result<Polynomial<F>, PolyError> {
        let n = self.ring.nvars();
        if images.len() != n {
            return Err(PolyError::LengthMismatch { expected: n, got: images.len() });
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => return Ok(self.clone()),
        };
        if images.iter().any(|p| !Ring::same(&p.ring, &target)) {
            return Err(PolyError::ContextMismatch);
        }
        let mut pows: Vec<Vec<Polynomial<F>>> = vec![vec![Polynomial::one(&target)]; n];
        let mut acc = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, c.clone());
            for (i, p) in pows.iter_mut().enumerate() {
                let e = m.exp(i) as usize;
                if e == 0 {
                    continue;
                }
                while p.len() <= e {
                    let next = p.last().unwrap() * &images[i];
                    p.push(next);
                }
                t = &t * &p[e];
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Substitute `var := g` (g in the same ring).
    pub fn substitute(&self, var: usize, g: &Self) -> Result<Self, PolyError> {
        self.check_ring(g)?;
        let images: Vec<_> =
            (0..self.ring.nvars()).map(|i| if i == var { g.clone() } else { Self::var(&self.ring, i) }).collect();
        self.compose(&images)
    }

    /// Set `var := value` and drop it from the ring.
    pub fn dehomogenize(&self, var: usize, value: &F::Elem) -> Self {
        let target = self.ring.drop_var(var);
        let f = self.field();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let e = m.exp(var);
            let c2 = if e == 0 { c.clone() } else { f.mul(c, &f.pow(value, e as u64)) };
            if f.is_zero(&c2) {
                continue;
            }
            let mut m2 = Monomial::one();
            let mut j = 0;
            for i in 0..self.ring.nvars() {
                if i != var {
                    m2.exps[j] = m.exps[i];
                    m2.deg += m.exps[i] as u32;
                    j += 1;
                }
            }
            terms.push((m2, c2));
        }
        Self::from_terms(&target, terms)
    }

    /// Inverse of `dehomogenize` at value 1: insert variable `var` into
    /// `target` (which must have one more variable) so the result is
    /// homogeneous of degree `deg` (at least the total degree).
    pub fn homogenize(&self, target: &RingRef<F>, var: usize, deg: Option<u32>) -> Result<Self, PolyError> {
        if target.nvars() != self.ring.nvars() + 1 {
            return Err(PolyError::ContextMismatch);
        }
        let d = deg.unwrap_or_else(|| self.total_degree().unwrap_or(0));
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            if m.degree() > d {
                return Err(PolyError::NotHomogeneous);
            }
            let mut m2 = Monomial::one();
            let mut j = 0;
            for i in 0..target.nvars() {
                if i == var {
                    m2.exps[i] = (d - m.degree()) as u16;
                } else {
                    m2.exps[i] = m.exps[j];
                    j += 1;
                }
            }
            m2.deg = d;
            terms.push((m2, c.clone()));
        }
        Ok(Self::from_terms(target, terms))
    }

    /// Move into a ring with the same number of variables (or more), mapping
    /// variable i to `map[i]`.
    pub fn map_vars(&self, target: &RingRef<F>, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.ring.nvars());
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut m2 = Monomial::one();
                for (i, &j) in map.iter().enumerate() {
                    m2.exps[j] += m.exps[i];
                }
                m2.deg = m.deg;
                (m2, c.clone())
            })
            .collect();
        Self::from_terms(target, terms)
    }

    /// Same variables, possibly different order.
    pub fn to_ring(&self, target: &RingRef<F>) -> Self {
        if Ring::same(&self.ring, target) {
            return self.clone();
        }
        assert_eq!(target.names, self.ring.names, "to_ring needs identical variables");
        Self::from_terms(target, self.terms.clone())
    }

    /// Map into a ring that contains all variables by name.
    pub fn embed(&self, target: &RingRef<F>) -> Result<Self, PolyError> {
        let map = self
            .ring
            .names
            .iter()
            .map(|n| target.index_of(n).ok_or_else(|| PolyError::UnknownVariable(n.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.map_vars(target, &map))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl<F: Field> core::ops::$tr<&Polynomial<F>> for &Polynomial<F> {
            type Output = Polynomial<F>;
            /// Panics on ring mismatch; use the checked form at boundaries.
            fn $m(self, o: &Polynomial<F>) -> Polynomial<F> {
                self.$checked(o).expect("ring mismatch")
            }
        }
        impl<F: Field> core::ops::$tr<Polynomial<F>> for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $m(self, o: Polynomial<F>) -> Polynomial<F> {
                (&self).$checked(&o).expect("ring mismatch")
            }
        }
    };
}
binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl<F: Field> core::ops::Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial::neg(self)
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let field = self.field();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = field.is_negative(c);
            let c = if neg { field.neg(c) } else { c.clone() };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut first = true;
            if m.is_one() || !field.is_one(&c) {
                field.fmt_elem(&c, f)?;
                first = false;
            }
            for i in 0..self.ring.nvars() {
                let e = m.exp(i);
                if e == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                f.write_str(&self.ring.names[i])?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------- rational functions

/// num/den; never reduced to lowest terms.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunction<F: Field> {
    pub num: Polynomial<F>,
    pub den: Polynomial<F>,
}

impl<F: Field> RationalFunction<F> {
    pub fn new(num: Polynomial<F>, den: Polynomial<F>) -> Result<Self, PolyError> {
        num.check_ring(&den)?;
        if den.is_zero() {
            return Err(PolyError::ZeroInput);
        }
        Ok(RationalFunction { num, den })
    }

    pub fn from_poly(p: Polynomial<F>) -> Self {
        let den = Polynomial::one(p.ring());
        RationalFunction { num: p, den }
    }

    pub fn ring(&self) -> &RingRef<F> {
        self.num.ring()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn mul(&self, o: &Self) -> Self {
        RationalFunction { num: &self.num * &o.num, den: &self.den * &o.den }
    }

    pub fn inv(&self) -> Result<Self, PolyError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i32) -> Self {
        let base = if e < 0 { self.inv().expect("nonzero") } else { self.clone() };
        let k = e.unsigned_abs();
        RationalFunction { num: base.num.pow(k), den: base.den.pow(k) }
    }

    /// Homogeneous of degree zero (well defined on projective space).
    pub fn is_degree_zero(&self) -> bool {
        self.num.is_homogeneous()
            && self.den.is_homogeneous()
            && (self.num.is_zero() || self.num.total_degree() == self.den.total_degree())
    }
}

impl<F: Field> fmt::Display for RationalFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/({})", self.num, self.den)
    }
}

// ---------------------------------------------------------------- irreducibility certificates

/// How a prime element of the coefficient ring R[remaining vars] is given.
#[derive(Clone, Debug, PartialEq)]
pub enum PrimeSpec<F: Field> {
    /// An explicit polynomial with its own certificate.
    Explicit { poly: Polynomial<F>, cert: Box<IrreducibilityCert<F>> },
    /// The irreducible factor of `host` through a regular point of `host`
    /// (host(P) = 0, grad host(P) != 0); it has multiplicity one in host.
    RegularPointFactor { host: Polynomial<F>, point: Vec<F::Elem> },
}

/// Evidence that a polynomial is irreducible.
#[derive(Clone, Debug, PartialEq)]
pub enum IrreducibilityCert<F: Field> {
    /// Degree one.
    Linear,
    /// Eisenstein's criterion in `var` with the given prime; the top
    /// coefficient must be a nonzero constant so the content is trivial.
    Eisenstein { var: usize, prime: PrimeSpec<F> },
    /// For homogeneous f: f|_{var=0} is nonzero and irreducible.
    Restriction { var: usize, inner: Box<IrreducibilityCert<F>> },
    /// Hypersurface in the m variables it involves whose singular locus has
    /// projective dimension <= m-4 (reducible or non-reduced would force more).
    SingularLocusDim,
    UserAsserted(String),
}

impl<F: Field> IrreducibilityCert<F> {
    pub fn kind(&self) -> &'static str {
        match self {
            IrreducibilityCert::Linear => "linear",
            IrreducibilityCert::Eisenstein { .. } => "eisenstein",
            IrreducibilityCert::Restriction { .. } => "restriction",
            IrreducibilityCert::SingularLocusDim => "singular-locus-dim",
            IrreducibilityCert::UserAsserted(_) => "asserted",
        }
    }
}

/// Outcome of verifying a certificate at the polynomial level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertOutcome {
    Verified,
    Rejected(String),
    /// A sub-step needs the ideal engine (singular locus dimension).
    NeedsSingularLocus,
    Asserted,
}

/// Eisenstein's criterion with an explicit prime polynomial p.
pub fn eisenstein_conditions<F: Field>(f: &Polynomial<F>, var: usize, p: &Polynomial<F>) -> Result<bool, PolyError> {
    if p.involves(var) || p.is_constant() {
        return Ok(false);
    }
    let view = f.univariate_view(var);
    let (top, c_top) = match view.first() {
        Some(t) => t,
        None => return Ok(false),
    };
    if *top == 0 || p.divides(c_top)? {
        return Ok(false);
    }
    for (e, c) in &view[1..] {
        if *e > 0 && !p.divides(c)? {
            return Ok(false);
        }
    }
    let c0 = f.coeff_of(var, 0);
    if c0.is_zero() {
        return Ok(false);
    }
    Ok(p.multiplicity_in(&c0)? == 1)
}

/// Eisenstein's criterion with the prime through a regular point of `host`.
pub fn eisenstein_regular_point<F: Field>(
    f: &Polynomial<F>,
    var: usize,
    host: &Polynomial<F>,
    point: &[F::Elem],
) -> Result<bool, PolyError> {
    let field = f.field();
    if host.involves(var) || host.is_constant() {
        return Ok(false);
    }
    if !field.is_zero(&host.evaluate(point)?) {
        return Ok(false);
    }
    let grad_nonzero = host.gradient().iter().try_fold(false, |acc, d| {
        Ok::<_, PolyError>(acc || !field.is_zero(&d.evaluate(point)?))
    })?;
    if !grad_nonzero {
        return Ok(false);
    }
    let view = f.univariate_view(var);
    let (top, c_top) = match view.first() {
        Some(t) => t,
        None => return Ok(false),
    };
    // q | c_top would force c_top(P) = 0
    if *top == 0 || field.is_zero(&c_top.evaluate(point)?) {
        return Ok(false);
    }
    for (e, c) in &view[1..] {
        if *e > 0 && !host.divides(c)? {
            return Ok(false);
        }
    }
    let c0 = f.coeff_of(var, 0);
    let r = match c0.exact_div(host)? {
        Some(r) => r,
        None => return Ok(false),
    };
    // q appears once in host; q must not divide r
    if !field.is_zero(&r.evaluate(point)?) {
        return Ok(true);
    }
    if r.is_monomial() {
        // r = c * prod x_j^e; q | x_j would mean host vanishes on x_j = 0
        let zero = field.zero();
        for j in r.variables() {
            if host.dehomogenize(j, &zero).is_zero() {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    Ok(false)
}

/// Eisenstein's criterion; the prime must carry a certificate checkable
/// without the ideal engine.
pub fn eisenstein_check<F: Field>(f: &Polynomial<F>, var: usize, prime: &PrimeSpec<F>) -> Result<bool, PolyError> {
    match prime {
        PrimeSpec::Explicit { poly, cert } => match verify_cert_poly_level(poly, cert)? {
            CertOutcome::Verified => eisenstein_conditions(f, var, poly),
            CertOutcome::Rejected(_) => Ok(false),
            CertOutcome::NeedsSingularLocus | CertOutcome::Asserted => Err(PolyError::UncertifiedPrime),
        },
        PrimeSpec::RegularPointFactor { host, point } => eisenstein_regular_point(f, var, host, point),
    }
}

/// Verify everything that does not need Gröbner bases.
pub fn verify_cert_poly_level<F: Field>(
    f: &Polynomial<F>,
    cert: &IrreducibilityCert<F>,
) -> Result<CertOutcome, PolyError> {
    use CertOutcome::*;
    if f.is_constant() {
        return Ok(Rejected("constant polynomial".into()));
    }
    Ok(match cert {
        IrreducibilityCert::Linear => {
            if f.total_degree() == Some(1) {
                Verified
            } else {
                Rejected("not of degree one".into())
            }
        }
        IrreducibilityCert::Eisenstein { var, prime } => {
            let view = f.univariate_view(*var);
            if !view.first().is_some_and(|(e, c)| *e > 0 && c.is_constant()) {
                Rejected("leading coefficient is not a nonzero constant".into())
            } else if eisenstein_check(f, *var, prime)? {
                Verified
            } else {
                Rejected("Eisenstein conditions fail".into())
            }
        }
        IrreducibilityCert::Restriction { var, inner } => {
            if !f.is_homogeneous() {
                return Ok(Rejected("restriction route needs a homogeneous polynomial".into()));
            }
            let r = f.substitute(*var, &Polynomial::zero(f.ring()))?;
            if r.is_zero() {
                return Ok(Rejected("restriction vanishes".into()));
            }
            verify_cert_poly_level(&r, inner)?
        }
        IrreducibilityCert::SingularLocusDim => NeedsSingularLocus,
        IrreducibilityCert::UserAsserted(_) => Asserted,
    })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::coeff::{PrimeField, Rationals, DEFAULT_PRIME};
    use proptest::prelude::*;

    pub fn ring4<F: Field>(f: F) -> RingRef<F> {
        Ring::new(f, &["x0", "x1", "x2", "x3"])
    }

    pub fn x<F: Field>(r: &RingRef<F>, i: usize) -> Polynomial<F> {
        Polynomial::var(r, i)
    }

    pub fn c<F: Field>(r: &RingRef<F>, v: i64) -> Polynomial<F> {
        Polynomial::from_i64(r, v)
    }

    /// P1 = (x1^3-x2^3)(x2^3-x3^3)(x3^3-x1^3), P2 = x1^3 x2^3 x3^3.
    pub fn p1p2<F: Field>(r: &RingRef<F>) -> (Polynomial<F>, Polynomial<F>) {
        let cube = |i| x(r, i).pow(3);
        let p1 = &(&(&cube(1) - &cube(2)) * &(&cube(2) - &cube(3))) * &(&cube(3) - &cube(1));
        let p2 = &(&cube(1) * &cube(2)) * &cube(3);
        (p1, p2)
    }

    pub fn fs1<F: Field>(r: &RingRef<F>) -> Polynomial<F> {
        &x(r, 0).pow(9) + &p1p2(r).0
    }

    pub fn fs2<F: Field>(r: &RingRef<F>) -> Polynomial<F> {
        let (p1, p2) = p1p2(r);
        let p = &p1 - &p2;
        &(&x(r, 0).pow(18) + &(&p * &x(r, 0).pow(9))) - &(&p2 * &p)
    }

    #[test]
    fn basic_arith() {
        let r = ring4(Rationals);
        let a = &x(&r, 2).pow(3) - &x(&r, 3).pow(3);
        let b = &x(&r, 2).pow(3) + &x(&r, 3).pow(3);
        assert_eq!(&a * &b, &x(&r, 2).pow(6) - &x(&r, 3).pow(6));
        assert_eq!(&a + &Polynomial::zero(&r), a);
    }

    #[test]
    fn fs2_product_form() {
        let r = ring4(Rationals);
        let (_, p2) = p1p2(&r);
        let lhs = &(&fs1(&r) * &(&x(&r, 0).pow(9) - &p2)) + &p2.pow(2);
        assert_eq!(lhs, fs2(&r));
    }

    #[test]
    fn derivatives() {
        let r = ring4(Rationals);
        let g2 = &(&(&x(&r, 0).pow(21) + &x(&r, 1).pow(21)) + &x(&r, 2).pow(21)) - &x(&r, 3).pow(21);
        assert_eq!(g2.partial_derivative(0), &c(&r, 21) * &x(&r, 0).pow(20));
        let g1 = &(&(&x(&r, 0).pow(9) - &x(&r, 1).pow(9)) + &(&x(&r, 2).pow(8) * &x(&r, 3)))
            + &(&x(&r, 3).pow(8) * &x(&r, 2));
        assert_eq!(g1.partial_derivative(0), &c(&r, 9) * &x(&r, 0).pow(8));
        assert!(c(&r, 7).partial_derivative(2).is_zero());
    }

    #[test]
    fn euler() {
        let r = ring4(Rationals);
        let (p1, _) = p1p2(&r);
        assert_eq!(p1.euler_identity_check().unwrap(), (true, 9));
        assert_eq!(x(&r, 0).euler_identity_check().unwrap(), (true, 1));
        let bad = &x(&r, 0).pow(2) + &x(&r, 1);
        assert_eq!(bad.euler_identity_check(), Err(PolyError::NotHomogeneous));
    }

    #[test]
    fn regular_point_of_p() {
        let r = ring4(Rationals);
        let (p1, p2) = p1p2(&r);
        let p = &p1 - &p2;
        let pt = [0, 1, 1, 0].map(|v| Rationals.from_i64(v));
        assert!(p.evaluate(&pt).unwrap() == Rationals.zero());
        assert!(p.gradient().iter().any(|d| d.evaluate(&pt).unwrap() != Rationals.zero()));
        let z = [0, 0, 0, 0].map(|v| Rationals.from_i64(v));
        assert_eq!((&p + &c(&r, 5)).evaluate(&z).unwrap(), Rationals.from_i64(5));
    }

    #[test]
    fn multiplicities() {
        let r = ring4(Rationals);
        let (x1, x2, x3) = (x(&r, 1), x(&r, 2), x(&r, 3));
        let cof = &(&(&(&x1.pow(3) * &x2.pow(3)) - &x2.pow(6)) - &x1.pow(3)) + &c(&r, 1);
        assert_eq!(x1.multiplicity_in(&(&x1.pow(3) * &cof)).unwrap(), 3);
        let d = &x2 - &x3;
        assert_eq!(d.multiplicity_in(&(&x2.pow(3) - &x3.pow(3))).unwrap(), 1);
        assert_eq!(fs1(&r).multiplicity_in(&fs2(&r)).unwrap(), 0);
        assert_eq!(d.multiplicity_in(&Polynomial::zero(&r)), Err(PolyError::ZeroInput));
    }

    #[test]
    fn fs1_does_not_divide_fs2_mod_p() {
        // independent check: a point on F_S1 = 0 where F_S2 does not vanish
        let k = PrimeField::new(DEFAULT_PRIME).unwrap();
        let r = ring4(k);
        let f1 = fs1(&r);
        let f2 = fs2(&r);
        // pick x1,x2,x3 and solve x0^9 = -P1 by brute force over F_p
        let mut found = false;
        'outer: for a in 1..50u64 {
            let mut pt = vec![0, a, a + 1, a + 3];
            for x0 in 0..DEFAULT_PRIME {
                pt[0] = x0;
                if f1.evaluate(&pt).unwrap() == 0 {
                    assert_ne!(f2.evaluate(&pt).unwrap(), 0);
                    found = true;
                    break 'outer;
                }
            }
        }
        assert!(found);
    }

    #[test]
    fn univariate_views() {
        let r = ring4(Rationals);
        let (p1, p2) = p1p2(&r);
        let p = &p1 - &p2;
        let v = fs2(&r).univariate_view(0);
        assert_eq!(v.len(), 3);
        assert_eq!((v[0].0, v[1].0, v[2].0), (18, 9, 0));
        assert!(v[0].1.is_one());
        assert_eq!(v[1].1, p);
        assert_eq!(v[2].1, (&p2 * &p).neg());
        let d = &x(&r, 2).pow(3) - &x(&r, 3).pow(3);
        assert_eq!(d.univariate_view(0), vec![(0, d.clone())]);
        let v1 = fs1(&r).univariate_view(0);
        assert_eq!(v1, vec![(9, c(&r, 1)), (0, p1)]);
    }

    #[test]
    fn dehomogenize_chart() {
        let r = ring4(Rationals);
        let d = fs1(&r).dehomogenize(3, &Rationals.one());
        let r3 = Ring::new(Rationals, &["x0", "x1", "x2"]);
        let (x0, x1, x2) = (x(&r3, 0), x(&r3, 1), x(&r3, 2));
        let one = c(&r3, 1);
        let expect = &x0.pow(9) + &(&(&(&x1.pow(3) - &x2.pow(3)) * &(&x2.pow(3) - &one)) * &(&one - &x1.pow(3)));
        assert_eq!(d, expect);
        assert!(x(&r, 0).dehomogenize(0, &Rationals.zero()).is_zero());
        let back = d.homogenize(&r, 3, Some(9)).unwrap();
        assert_eq!(back, fs1(&r));
    }

    #[test]
    fn eisenstein_examples() {
        let r = ring4(Rationals);
        let (x0, x2, x3) = (x(&r, 0), x(&r, 2), x(&r, 3));
        let d1 = &(&x0.pow(9) - &(&x2.pow(6) * &x3.pow(3))) + &(&x2.pow(3) * &x3.pow(6));
        let prime = PrimeSpec::Explicit { poly: &x2 - &x3, cert: Box::new(IrreducibilityCert::Linear) };
        assert!(eisenstein_check(&d1, 0, &prime).unwrap());
        let p1 = PrimeSpec::Explicit { poly: x(&r, 1), cert: Box::new(IrreducibilityCert::Linear) };
        assert!(!eisenstein_check(&x0.pow(2), 0, &p1).unwrap());
        let asserted =
            PrimeSpec::Explicit { poly: x(&r, 1), cert: Box::new(IrreducibilityCert::UserAsserted("n".into())) };
        assert_eq!(eisenstein_check(&d1, 0, &asserted), Err(PolyError::UncertifiedPrime));
    }

    fn small_poly(r: &RingRef<PrimeField>, coeffs: &[(u8, u8, u8, i64)]) -> Polynomial<PrimeField> {
        let terms = coeffs
            .iter()
            .map(|&(a, b, cc, v)| (Monomial::from_exps(&[a as u32, b as u32, cc as u32]), r.field.elem(v)))
            .collect();
        Polynomial::from_terms(r, terms)
    }

    fn arb_terms() -> impl Strategy<Value = Vec<(u8, u8, u8, i64)>> {
        proptest::collection::vec((0u8..4, 0u8..4, 0u8..4, -20i64..20), 0..6)
    }

    fn arb_homog(deg: u32) -> impl Strategy<Value = Vec<(u8, u8, i64)>> {
        proptest::collection::vec((0u8..=deg as u8, 0u8..=deg as u8, -9i64..9), 1..5)
    }

    fn homog(r: &RingRef<PrimeField>, deg: u32, t: &[(u8, u8, i64)]) -> Polynomial<PrimeField> {
        let terms = t
            .iter()
            .filter(|(a, b, _)| (*a as u32 + *b as u32) <= deg)
            .map(|&(a, b, v)| {
                (Monomial::from_exps(&[a as u32, b as u32, deg - a as u32 - b as u32]), r.field.elem(v))
            })
            .collect();
        Polynomial::from_terms(r, terms)
    }

    proptest! {
        #[test]
        fn eval_is_ring_hom(a in arb_terms(), b in arb_terms(), pt in proptest::collection::vec(0u64..10009, 3)) {
            let k = PrimeField::new(DEFAULT_PRIME).unwrap();
            let r = Ring::new(k, &["a", "b", "c"]);
            let (f, g) = (small_poly(&r, &a), small_poly(&r, &b));
            let ev = |p: &Polynomial<PrimeField>| p.evaluate(&pt).unwrap();
            prop_assert_eq!(ev(&(&f + &g)), k.add(&ev(&f), &ev(&g)));
            prop_assert_eq!(ev(&(&f * &g)), k.mul(&ev(&f), &ev(&g)));
        }

        #[test]
        fn univariate_reassembly(a in arb_terms(), var in 0usize..3) {
            let k = PrimeField::new(DEFAULT_PRIME).unwrap();
            let r = Ring::new(k, &["a", "b", "c"]);
            let f = small_poly(&r, &a);
            let mut back = Polynomial::zero(&r);
            for (e, c) in f.univariate_view(var) {
                back = &back + &(&c * &Polynomial::var(&r, var).pow(e));
            }
            prop_assert_eq!(back, f);
        }

        #[test]
        fn multiplicity_additive(a in arb_terms(), k in 0u32..4) {
            let kf = PrimeField::new(DEFAULT_PRIME).unwrap();
            let r = Ring::new(kf, &["a", "b", "c"]);
            let big = &Polynomial::var(&r, 0) + &Polynomial::var(&r, 1);
            let g = small_poly(&r, &a);
            prop_assume!(!g.is_zero() && !big.divides(&g).unwrap());
            let base = big.multiplicity_in(&g).unwrap();
            prop_assert_eq!(big.multiplicity_in(&(&big.pow(k) * &g)).unwrap(), k + base);
        }

        #[test]
        fn euler_on_products(d1 in 1u32..5, d2 in 1u32..5, a in arb_homog(4), b in arb_homog(4)) {
            let k = PrimeField::new(DEFAULT_PRIME).unwrap();
            let r = Ring::new(k, &["a", "b", "c"]);
            let (f, g) = (homog(&r, d1, &a), homog(&r, d2, &b));
            prop_assume!(!f.is_zero() && !g.is_zero());
            let h = &f * &g;
            prop_assert_eq!(h.total_degree(), Some(d1 + d2));
            prop_assert_eq!(h.euler_identity_check().unwrap(), (true, d1 + d2));
        }

        #[test]
        fn exact_div_roundtrip(a in arb_terms(), b in arb_terms()) {
            let k = PrimeField::new(DEFAULT_PRIME).unwrap();
            let r = Ring::new(k, &["a", "b", "c"]);
            let (f, g) = (small_poly(&r, &a), small_poly(&r, &b));
            prop_assume!(!g.is_zero());
            prop_assert_eq!((&f * &g).exact_div(&g).unwrap(), Some(f));
        }
    }
}
