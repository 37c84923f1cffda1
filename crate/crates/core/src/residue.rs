//! Divisorial valuations, the two residue maps of a degree-3 symbol, and the
//! witness checks (curve valuations, cube witnesses, point orders) that
//! certify triviality or nontriviality of classes in k(S)^x / cubes.
//!
//! Functions are kept factored ([`FactoredFunction`]) so that high powers of
//! surface equations are never expanded.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::coeff::Field;
use crate::ideal::{singular_locus_ideal, Ideal, IdealError};
use crate::poly::{
    verify_cert_poly_level, CertOutcome, IrreducibilityCert, Monomial, PolyError, Polynomial, RationalFunction, Ring,
    RingRef,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ResidueError {
    ZeroFunction,
    NotDegreeZero,
    IndeterminateRestriction,
    PoleAlongS(i64),
    VanishesAlongS(i64),
    DenominatorVanishes,
    WitnessRejected(String),
    NotAUnit(String),
    NotOnSurface,
    Unbounded(u32),
    FactorizationIncomplete(String),
    Ideal(IdealError),
    Poly(PolyError),
}

impl From<PolyError> for ResidueError {
    fn from(e: PolyError) -> Self {
        ResidueError::Poly(e)
    }
}

impl From<IdealError> for ResidueError {
    fn from(e: IdealError) -> Self {
        ResidueError::Ideal(e)
    }
}

impl fmt::Display for ResidueError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResidueError::ZeroFunction => f.write_str("zero function"),
            ResidueError::NotDegreeZero => f.write_str("symbol entry is not homogeneous of degree zero"),
            ResidueError::IndeterminateRestriction => f.write_str("restriction is indeterminate"),
            ResidueError::PoleAlongS(v) => write!(f, "pole of order {} along the surface", -v),
            ResidueError::VanishesAlongS(v) => write!(f, "vanishes to order {v} along the surface"),
            ResidueError::DenominatorVanishes => f.write_str("denominator vanishes on the surface"),
            ResidueError::WitnessRejected(s) => write!(f, "witness rejected: {s}"),
            ResidueError::NotAUnit(s) => write!(f, "not a unit along the curve: {s}"),
            ResidueError::NotOnSurface => f.write_str("point is not on the surface"),
            ResidueError::Unbounded(k) => write!(f, "order exceeds the cap {k}"),
            ResidueError::FactorizationIncomplete(s) => write!(f, "factorization incomplete: {s}"),
            ResidueError::Ideal(e) => write!(f, "{e}"),
            ResidueError::Poly(e) => write!(f, "{e}"),
        }
    }
}

// ---------------------------------------------------------------- factored functions

/// unit * prod f_i^{e_i}, exponents of either sign.
#[derive(Clone, Debug, PartialEq)]
pub struct FactoredFunction<F: Field> {
    pub unit: F::Elem,
    pub factors: Vec<(Polynomial<F>, i64)>,
}

impl<F: Field> FactoredFunction<F> {
    pub fn one(ring: &RingRef<F>) -> Self {
        FactoredFunction { unit: ring.field.one(), factors: Vec::new() }
    }

    pub fn from_poly(p: Polynomial<F>) -> Self {
        Self::from_factors(p.field().one(), vec![(p, 1)])
    }

    pub fn from_rational(r: &RationalFunction<F>) -> Self {
        Self::from_factors(r.num.field().one(), vec![(r.num.clone(), 1), (r.den.clone(), -1)])
    }

    /// Constants are folded into the unit; zero exponents dropped; equal
    /// bases merged.
    pub fn from_factors(unit: F::Elem, factors: Vec<(Polynomial<F>, i64)>) -> Self {
        let mut out = FactoredFunction { unit, factors: Vec::new() };
        for (p, e) in factors {
            out.push(p, e);
        }
        out
    }

    fn push(&mut self, p: Polynomial<F>, e: i64) {
        if e == 0 {
            return;
        }
        let field = p.field().clone();
        if let Some(c) = p.constant_value() {
            let c = if e > 0 { field.pow(&c, e as u64) } else { field.pow(&field.inv(&c).expect("nonzero"), (-e) as u64) };
            self.unit = field.mul(&self.unit, &c);
            return;
        }
        match self.factors.iter_mut().find(|(q, _)| *q == p) {
            Some(entry) => entry.1 += e,
            None => self.factors.push((p, e)),
        }
        self.factors.retain(|(_, e)| *e != 0);
    }

    pub fn is_zero(&self, field: &F) -> bool {
        field.is_zero(&self.unit) || self.factors.iter().any(|(p, _)| p.is_zero())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let field = self.factors.first().or(o.factors.first()).map(|(p, _)| p.field().clone());
        let mut out = self.clone();
        if let Some(field) = field {
            out.unit = field.mul(&out.unit, &o.unit);
        }
        for (p, e) in &o.factors {
            out.push(p.clone(), *e);
        }
        out
    }

    pub fn pow(&self, k: i64, field: &F) -> Self {
        let unit = if k >= 0 {
            field.pow(&self.unit, k as u64)
        } else {
            field.pow(&field.inv(&self.unit).expect("nonzero unit"), (-k) as u64)
        };
        FactoredFunction { unit, factors: self.factors.iter().map(|(p, e)| (p.clone(), e * k)).filter(|f| f.1 != 0).collect() }
    }

    pub fn inv(&self, field: &F) -> Self {
        self.pow(-1, field)
    }

    /// Total degree (sum of e_i deg f_i).
    pub fn degree(&self) -> i64 {
        self.factors.iter().map(|(p, e)| e * p.total_degree().unwrap_or(0) as i64).sum()
    }

    pub fn is_degree_zero(&self) -> bool {
        self.factors.iter().all(|(p, _)| p.is_homogeneous()) && self.degree() == 0
    }

    /// Expanded numerator and denominator (only for small inputs).
    pub fn expand(&self, ring: &RingRef<F>) -> RationalFunction<F> {
        let mut num = Polynomial::constant(ring, self.unit.clone());
        let mut den = Polynomial::one(ring);
        for (p, e) in &self.factors {
            if *e > 0 {
                num = &num * &p.pow(*e as u32);
            } else {
                den = &den * &p.pow((-e) as u32);
            }
        }
        RationalFunction { num, den }
    }

    pub fn positive_part(&self) -> Vec<(Polynomial<F>, u32)> {
        self.factors.iter().filter(|f| f.1 > 0).map(|(p, e)| (p.clone(), *e as u32)).collect()
    }

    pub fn negative_part(&self) -> Vec<(Polynomial<F>, u32)> {
        self.factors.iter().filter(|f| f.1 < 0).map(|(p, e)| (p.clone(), (-e) as u32)).collect()
    }
}

impl<F: Field> fmt::Display for FactoredFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = self.factors.first().map(|(p, _)| p.field().clone());
        let mut first = true;
        if let Some(field) = &field {
            if !field.is_one(&self.unit) {
                field.fmt_elem(&self.unit, f)?;
                first = false;
            }
        }
        for (p, e) in &self.factors {
            if !first {
                f.write_str(" * ")?;
            }
            first = false;
            write!(f, "({p})")?;
            if *e != 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------- prime divisors

#[derive(Clone, Debug, PartialEq)]
pub struct PrimeDivisor<F: Field> {
    pub name: String,
    pub poly: Polynomial<F>,
    pub cert: IrreducibilityCert<F>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertStatus {
    Verified,
    Rejected(String),
    Asserted,
}

impl<F: Field> PrimeDivisor<F> {
    pub fn new(name: &str, poly: Polynomial<F>, cert: IrreducibilityCert<F>) -> Result<Self, ResidueError> {
        if poly.is_constant() {
            return Err(ResidueError::Poly(PolyError::ZeroInput));
        }
        if !poly.is_homogeneous() {
            return Err(ResidueError::Poly(PolyError::NotHomogeneous));
        }
        Ok(PrimeDivisor { name: name.into(), poly: poly.monic(), cert })
    }

    pub fn degree(&self) -> u32 {
        self.poly.total_degree().unwrap_or(0)
    }

    pub fn ideal(&self) -> Ideal<F> {
        Ideal::new(self.poly.ring(), vec![self.poly.clone()]).expect("same ring")
    }

    pub fn verify_certificate(&self) -> Result<CertStatus, ResidueError> {
        verify_cert(&self.poly, &self.cert)
    }
}

/// Full certificate verification, using Gröbner bases where needed.
pub fn verify_cert<F: Field>(f: &Polynomial<F>, cert: &IrreducibilityCert<F>) -> Result<CertStatus, ResidueError> {
    match cert {
        IrreducibilityCert::SingularLocusDim => singular_locus_route(f),
        IrreducibilityCert::Restriction { var, inner } => {
            if !f.is_homogeneous() {
                return Ok(CertStatus::Rejected("restriction route needs a homogeneous polynomial".into()));
            }
            let r = f.substitute(*var, &Polynomial::zero(f.ring()))?;
            if r.is_zero() || r.is_constant() {
                return Ok(CertStatus::Rejected("restriction is constant".into()));
            }
            verify_cert(&r, inner)
        }
        other => Ok(match verify_cert_poly_level(f, other)? {
            CertOutcome::Verified => CertStatus::Verified,
            CertOutcome::Rejected(s) => CertStatus::Rejected(s),
            CertOutcome::Asserted => CertStatus::Asserted,
            CertOutcome::NeedsSingularLocus => CertStatus::Rejected("unsupported nested certificate".into()),
        }),
    }
}

/// A hypersurface in the m variables it involves is irreducible and reduced
/// when its projective singular locus has dimension at most m - 4.
fn singular_locus_route<F: Field>(f: &Polynomial<F>) -> Result<CertStatus, ResidueError> {
    if !f.is_homogeneous() {
        return Ok(CertStatus::Rejected("not homogeneous".into()));
    }
    let vars = f.variables();
    let m = vars.len();
    if m <= 2 {
        return Ok(if f.total_degree() == Some(1) {
            CertStatus::Verified
        } else {
            CertStatus::Rejected("too few variables for the singular-locus route".into())
        });
    }
    let names: Vec<&str> = vars.iter().map(|&i| f.ring().names[i].as_str()).collect();
    let sub = Ring::new(f.field().clone(), &names);
    let g = f.embed(&sub).map_err(ResidueError::Poly).or_else(|_| {
        // embed by position when names clash
        Ok::<_, ResidueError>(f.map_vars(&sub, &position_map(f.ring().nvars(), &vars)))
    })?;
    let dim = singular_locus_ideal(&g)?.dimension_projective()?;
    let bound = m as i64 - 4;
    Ok(if dim.as_i64() <= bound {
        CertStatus::Verified
    } else {
        CertStatus::Rejected(format!("singular locus has dimension {dim}, need at most {bound}"))
    })
}

fn position_map(n: usize, vars: &[usize]) -> Vec<usize> {
    (0..n).map(|i| vars.iter().position(|&v| v == i).unwrap_or(0)).collect()
}

// ---------------------------------------------------------------- valuations and residues

pub fn valuation_along_divisor<F: Field>(f: &FactoredFunction<F>, s: &PrimeDivisor<F>) -> Result<i64, ResidueError> {
    if f.is_zero(s.poly.field()) {
        return Err(ResidueError::ZeroFunction);
    }
    let mut v = 0i64;
    for (p, e) in &f.factors {
        v += e * s.poly.multiplicity_in(p)? as i64;
    }
    Ok(v)
}

pub fn valuation_rational<F: Field>(f: &RationalFunction<F>, s: &PrimeDivisor<F>) -> Result<i64, ResidueError> {
    if f.is_zero() {
        return Err(ResidueError::ZeroFunction);
    }
    Ok(s.poly.multiplicity_in(&f.num)? as i64 - s.poly.multiplicity_in(&f.den)? as i64)
}

pub fn residue1_divisor<F: Field>(f: &FactoredFunction<F>, s: &PrimeDivisor<F>) -> Result<u8, ResidueError> {
    Ok(valuation_along_divisor(f, s)?.rem_euclid(3) as u8)
}

/// The cyclic algebra (a, b)_w of degree 3.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolAlgebra<F: Field> {
    pub a: FactoredFunction<F>,
    pub b: FactoredFunction<F>,
}

impl<F: Field> SymbolAlgebra<F> {
    pub fn new(a: FactoredFunction<F>, b: FactoredFunction<F>, field: &F) -> Result<Self, ResidueError> {
        if a.is_zero(field) || b.is_zero(field) {
            return Err(ResidueError::ZeroFunction);
        }
        if !a.is_degree_zero() || !b.is_degree_zero() {
            return Err(ResidueError::NotDegreeZero);
        }
        Ok(SymbolAlgebra { a, b })
    }

    pub fn swapped(&self) -> Self {
        SymbolAlgebra { a: self.b.clone(), b: self.a.clone() }
    }
}

/// An element of k(S)^x / cubes, represented by a function of valuation 0
/// along S.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidueClass<F: Field> {
    pub surface: PrimeDivisor<F>,
    pub repr: FactoredFunction<F>,
}

/// Divide every factor by its S-power; the removed exponent total is
/// returned alongside.
fn extract_s_powers<F: Field>(
    f: &FactoredFunction<F>,
    s: &PrimeDivisor<F>,
) -> Result<(FactoredFunction<F>, i64), ResidueError> {
    let mut out = FactoredFunction { unit: f.unit.clone(), factors: Vec::new() };
    let mut total = 0i64;
    for (p, e) in &f.factors {
        let k = s.poly.multiplicity_in(p)?;
        let mut rest = p.clone();
        for _ in 0..k {
            rest = rest.exact_div(&s.poly)?.expect("multiplicity counted");
        }
        total += e * k as i64;
        out.push(rest, *e);
    }
    Ok((out, total))
}

/// Second residue: (-1)^{ef} a^f / b^e with e = v_S(a), f = v_S(b),
/// S-powers removed.
pub fn residue2_symbol<F: Field>(alg: &SymbolAlgebra<F>, s: &PrimeDivisor<F>) -> Result<ResidueClass<F>, ResidueError> {
    let field = s.poly.field();
    let e = valuation_along_divisor(&alg.a, s)?;
    let f = valuation_along_divisor(&alg.b, s)?;
    let mut r = alg.a.pow(f, field).mul(&alg.b.pow(-e, field));
    if (e * f) % 2 != 0 {
        r.unit = field.neg(&r.unit);
    }
    let (r, removed) = extract_s_powers(&r, s)?;
    // v_S(r) = f e - e f = 0
    if removed != 0 {
        return Err(ResidueError::IndeterminateRestriction);
    }
    Ok(ResidueClass { surface: s.clone(), repr: r })
}

/// Tag f as a class on S; f must have valuation 0 along S.
pub fn restrict_to_hypersurface<F: Field>(
    f: &FactoredFunction<F>,
    s: &PrimeDivisor<F>,
) -> Result<ResidueClass<F>, ResidueError> {
    let v = valuation_along_divisor(f, s)?;
    if v < 0 {
        return Err(ResidueError::PoleAlongS(v));
    }
    if v > 0 {
        return Err(ResidueError::VanishesAlongS(v));
    }
    let (r, _) = extract_s_powers(f, s)?;
    for (p, e) in &r.factors {
        if *e < 0 && s.poly.divides(p)? {
            return Err(ResidueError::DenominatorVanishes);
        }
    }
    Ok(ResidueClass { surface: s.clone(), repr: r })
}

// ---------------------------------------------------------------- witnesses

/// NF of prod base_i^e_i modulo a Gröbner basis, multiplying one factor at
/// a time.
fn nf_product<F: Field>(ideal: &Ideal<F>, parts: &[(Polynomial<F>, u32)]) -> Result<Polynomial<F>, ResidueError> {
    let b = ideal.basis();
    let ring = ideal.ring();
    let mut acc = b.normal_form(&Polynomial::one(ring));
    for (p, e) in parts {
        let base = b.normal_form(p);
        for _ in 0..*e {
            acc = b.normal_form(&(&acc * &base));
            if acc.is_zero() {
                return Ok(acc);
            }
        }
    }
    Ok(acc)
}

/// NF(x) = c * NF(y) for a nonzero constant c, both nonzero.
fn proportional<F: Field>(x: &Polynomial<F>, y: &Polynomial<F>) -> bool {
    if x.is_zero() || y.is_zero() || x.len() != y.len() {
        return false;
    }
    let field = x.field();
    let c = field.div(x.leading_coeff().unwrap(), y.leading_coeff().unwrap()).expect("nonzero");
    x.terms().iter().zip(y.terms()).all(|((m1, a), (m2, b))| m1 == m2 && *a == field.mul(&c, b))
}

/// Checks phi = const modulo the ambient ideal, i.e. prod(pos) and
/// prod(neg) have proportional nonzero normal forms. Constants are cubes
/// over the algebraically closed ground field, so they are ignored.
pub fn is_constant_mod<F: Field>(phi: &FactoredFunction<F>, ambient: &Ideal<F>) -> Result<bool, ResidueError> {
    let pos = nf_product(ambient, &phi.positive_part())?;
    let neg = nf_product(ambient, &phi.negative_part())?;
    Ok(proportional(&pos, &neg))
}

/// g = h^3 in the function field of the ambient (prime) ideal, up to a
/// constant.
pub fn cube_triviality_check<F: Field>(
    g: &FactoredFunction<F>,
    h: &FactoredFunction<F>,
    ambient: &Ideal<F>,
) -> Result<bool, ResidueError> {
    let field = ambient.ring().field.clone();
    let phi = g.mul(&h.pow(-3, &field));
    is_constant_mod(&phi, ambient)
}

/// Same class on S: g1 / g2 = h^3.
pub fn same_class<F: Field>(
    g1: &ResidueClass<F>,
    g2: &FactoredFunction<F>,
    h: &FactoredFunction<F>,
) -> Result<bool, ResidueError> {
    let field = g1.surface.poly.field().clone();
    cube_triviality_check(&g1.repr.mul(&g2.inv(&field)), h, &g1.surface.ideal())
}

/// Local equation data for a curve C on S: g = u t^m with u a unit at the
/// generic point of C. The optional `s` is a unit multiplier used to show
/// that t generates the maximal ideal: s * c in I_S + (t) for every
/// generator c of I_C.
#[derive(Clone, Debug)]
pub struct CurveWitness<F: Field> {
    pub curve: Ideal<F>,
    pub t: Polynomial<F>,
    pub u: FactoredFunction<F>,
    pub m: i64,
    pub s: Option<Polynomial<F>>,
}

/// u is nonzero at the generic point of the (irreducible) curve.
fn is_unit_along<F: Field>(p: &Polynomial<F>, curve: &Ideal<F>) -> Result<bool, ResidueError> {
    if p.is_constant() {
        return Ok(!p.is_zero());
    }
    Ok(curve.dimension_drops(p)?)
}

/// Curve is contained in S.
pub fn curve_on_surface<F: Field>(curve: &Ideal<F>, s: &PrimeDivisor<F>) -> Result<bool, ResidueError> {
    Ok(curve.radical_contains(&s.poly)?)
}

/// t generates the maximal ideal of the local ring of S at the generic
/// point of C (which must be a smooth point of S).
pub fn check_uniformizer<F: Field>(w: &CurveWitness<F>, s: &PrimeDivisor<F>) -> Result<(), ResidueError> {
    if !w.curve.contains(&w.t)? {
        return Err(ResidueError::WitnessRejected("t does not vanish on the curve".into()));
    }
    let mult = match &w.s {
        Some(m) => {
            if !is_unit_along(m, &w.curve)? {
                return Err(ResidueError::NotAUnit(format!("multiplier {m}")));
            }
            m.clone()
        }
        None => Polynomial::one(s.poly.ring()),
    };
    let st = Ideal::new(s.poly.ring(), vec![s.poly.clone(), w.t.clone()])?;
    for c in w.curve.gens() {
        if !st.contains(&(&mult * c))? {
            return Err(ResidueError::WitnessRejected(format!("curve generator {c} not in (S, t)")));
        }
    }
    // generic point of C must be smooth on S
    let sing = singular_locus_ideal(&s.poly)?.sum(&w.curve)?;
    if sing.dimension_affine() >= w.curve.dimension_affine() {
        return Err(ResidueError::WitnessRejected("curve lies in the singular locus of S".into()));
    }
    Ok(())
}

/// Verify g = u t^m mod I_S and the unit conditions; returns m.
pub fn curve_valuation_witnessed<F: Field>(
    g: &FactoredFunction<F>,
    w: &CurveWitness<F>,
    s: &PrimeDivisor<F>,
) -> Result<i64, ResidueError> {
    let field = s.poly.field().clone();
    for (p, _) in &w.u.factors {
        if !is_unit_along(p, &w.curve)? {
            return Err(ResidueError::NotAUnit(format!("{p}")));
        }
    }
    if w.m != 0 {
        check_uniformizer(w, s)?;
    }
    let t = FactoredFunction::from_poly(w.t.clone());
    let phi = g.mul(&w.u.inv(&field)).mul(&t.pow(-w.m, &field));
    if !is_constant_mod(&phi, &s.ideal())? {
        return Err(ResidueError::WitnessRejected(format!("g is not u * t^{} modulo the surface", w.m)));
    }
    Ok(w.m)
}

pub fn curve_residue1<F: Field>(
    g: &FactoredFunction<F>,
    w: &CurveWitness<F>,
    s: &PrimeDivisor<F>,
) -> Result<u8, ResidueError> {
    Ok(curve_valuation_witnessed(g, w, s)?.rem_euclid(3) as u8)
}

/// Degree bookkeeping: sum m_i deg(C_i) = deg(S) deg(g).
pub fn divisor_degree_complete(deg_s: u64, deg_g: u64, parts: &[(i64, u64)]) -> bool {
    parts.iter().map(|(m, d)| *m * *d as i64).sum::<i64>() == (deg_s * deg_g) as i64
}

// ---------------------------------------------------------------- point orders

/// Default cap for the m-adic order search.
pub const ORDER_CAP: u32 = 50;

/// m_P-adic orders (num, den) of g on S at the projective point P: the
/// largest k with the function in m_P^k + I_S, in the affine chart of the
/// last nonzero coordinate.
pub fn ord_at_point<F: Field>(
    g: &FactoredFunction<F>,
    point: &[F::Elem],
    s: &PrimeDivisor<F>,
    cap: u32,
) -> Result<(u32, u32), ResidueError> {
    let ring = s.poly.ring();
    let field = &ring.field;
    if !field.is_zero(&s.poly.evaluate(point)?) {
        return Err(ResidueError::NotOnSurface);
    }
    let RationalFunction { num, den } = g.expand(ring);
    let chart = point.iter().rposition(|c| !field.is_zero(c)).ok_or(ResidueError::NotOnSurface)?;
    let scale = field.inv(&point[chart]).expect("nonzero");
    let p: Vec<F::Elem> = point.iter().map(|c| field.mul(c, &scale)).collect();
    let one = field.one();
    let local = |f: &Polynomial<F>| -> Result<Polynomial<F>, ResidueError> {
        let d = f.dehomogenize(chart, &one);
        let r = d.ring().clone();
        // translate the point to the origin
        let mut images = Vec::new();
        let mut j = 0;
        for (i, c) in p.iter().enumerate() {
            if i == chart {
                continue;
            }
            images.push(&Polynomial::var(&r, j) + &Polynomial::constant(&r, c.clone()));
            j += 1;
        }
        Ok(d.compose(&images)?)
    };
    let (fs, fnum, fden) = (local(&s.poly)?, local(&num)?, local(&den)?);
    let r = fs.ring().clone();
    let n = r.nvars();
    let mut ord_num = None;
    let mut ord_den = None;
    for k in 1..=cap {
        let mut gens = vec![fs.clone()];
        gens.extend(monomials_of_degree(n, k).into_iter().map(|m| Polynomial::term(&r, m, field.one())));
        let ideal = Ideal::new(&r, gens)?;
        if ord_num.is_none() && !ideal.contains(&fnum)? {
            ord_num = Some(k - 1);
        }
        if ord_den.is_none() && !ideal.contains(&fden)? {
            ord_den = Some(k - 1);
        }
        if let (Some(a), Some(b)) = (ord_num, ord_den) {
            return Ok((a, b));
        }
    }
    Err(ResidueError::Unbounded(cap))
}

pub fn point_residue1<F: Field>(
    g: &FactoredFunction<F>,
    point: &[F::Elem],
    s: &PrimeDivisor<F>,
    cap: u32,
) -> Result<u8, ResidueError> {
    let (a, b) = ord_at_point(g, point, s, cap)?;
    Ok((a as i64 - b as i64).rem_euclid(3) as u8)
}

pub fn monomials_of_degree(n: usize, k: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    fn rec(i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == exps.len() {
            exps[i] = left;
            out.push(Monomial::from_exps(exps));
            return;
        }
        for e in 0..=left {
            exps[i] = e;
            rec(i + 1, left - e, exps, out);
        }
    }
    if n == 0 {
        if k == 0 {
            out.push(Monomial::one());
        }
        return out;
    }
    rec(0, k, &mut exps, &mut out);
    out
}

// ---------------------------------------------------------------- residue support

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Triviality {
    TrivialByWitness,
    Nontrivial,
    Unknown,
}

impl Triviality {
    pub fn as_str(&self) -> &'static str {
        match self {
            Triviality::TrivialByWitness => "trivial-by-witness",
            Triviality::Nontrivial => "nontrivial",
            Triviality::Unknown => "unknown",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SupportEntry<F: Field> {
    pub divisor: PrimeDivisor<F>,
    pub valuations: (i64, i64),
    pub class: ResidueClass<F>,
    pub triviality: Triviality,
}

/// Evidence supplied per divisor name.
pub enum ClassEvidence<F: Field> {
    Cube(FactoredFunction<F>),
    /// Point residue at the given projective point.
    Point(Vec<F::Elem>),
    None,
}

/// Residues of the symbol along every divisor in its factorization. The
/// factor lists must multiply out to the symbol entries (checked by
/// cross-multiplication of the expanded forms).
pub fn residue_support<F: Field>(
    alg: &SymbolAlgebra<F>,
    a_expanded: &RationalFunction<F>,
    b_expanded: &RationalFunction<F>,
    divisors: &[PrimeDivisor<F>],
    evidence: &dyn Fn(&str) -> ClassEvidence<F>,
) -> Result<Vec<SupportEntry<F>>, ResidueError> {
    let ring = a_expanded.ring().clone();
    for (name, fact, exp) in [("a", &alg.a, a_expanded), ("b", &alg.b, b_expanded)] {
        let RationalFunction { num, den } = fact.expand(&ring);
        if &num * &exp.den != &exp.num * &den {
            return Err(ResidueError::FactorizationIncomplete(format!("factors of {name} do not multiply out")));
        }
        for (p, _) in &fact.factors {
            if !divisors.iter().any(|d| d.poly == p.monic()) {
                return Err(ResidueError::FactorizationIncomplete(format!("factor {p} of {name} has no divisor")));
            }
        }
    }
    let mut out = Vec::new();
    for d in divisors {
        let e = valuation_along_divisor(&alg.a, d)?;
        let f = valuation_along_divisor(&alg.b, d)?;
        let class = residue2_symbol(alg, d)?;
        let triviality = if e.rem_euclid(3) == 0 && f.rem_euclid(3) == 0 && class.repr.factors.iter().all(|(_, k)| k % 3 == 0) {
            Triviality::TrivialByWitness
        } else {
            match evidence(&d.name) {
                ClassEvidence::Cube(h) => {
                    if cube_triviality_check(&class.repr, &h, &d.ideal())? {
                        Triviality::TrivialByWitness
                    } else {
                        Triviality::Unknown
                    }
                }
                ClassEvidence::Point(p) => {
                    if point_residue1(&class.repr, &p, d, ORDER_CAP)? != 0 {
                        Triviality::Nontrivial
                    } else {
                        Triviality::Unknown
                    }
                }
                ClassEvidence::None => Triviality::Unknown,
            }
        };
        out.push(SupportEntry { divisor: d.clone(), valuations: (e, f), class, triviality });
    }
    Ok(out)
}
