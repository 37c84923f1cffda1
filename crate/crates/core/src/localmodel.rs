//! Local models of the Brauer-Severi scheme: the nine Case-2 relations and
//! their affine charts, the U3 chart of the Case-3 model, reducedness via
//! the Jacobian criterion, and fiber classification by stratum.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::coeff::{CoeffError, Field};
use crate::ideal::{Dim, Ideal, IdealError};
use crate::poly::{MonomialOrder, PolyError, Polynomial, RingRef};
use crate::residue::{valuation_along_divisor, FactoredFunction, PrimeDivisor, ResidueError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalModelError {
    ZeroInput,
    BadChart,
    Precondition(String),
    Ideal(IdealError),
    Poly(PolyError),
}

impl From<IdealError> for LocalModelError {
    fn from(e: IdealError) -> Self {
        LocalModelError::Ideal(e)
    }
}

impl From<PolyError> for LocalModelError {
    fn from(e: PolyError) -> Self {
        LocalModelError::Poly(e)
    }
}

impl fmt::Display for LocalModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalModelError::ZeroInput => f.write_str("g must be nonzero"),
            LocalModelError::BadChart => f.write_str("chart indices must lie in 1..=3"),
            LocalModelError::Precondition(s) => write!(f, "precondition violated: {s}"),
            LocalModelError::Ideal(e) => write!(f, "{e}"),
            LocalModelError::Poly(e) => write!(f, "{e}"),
        }
    }
}

pub const XI_NAMES: [&str; 9] = ["xi11", "xi12", "xi13", "xi21", "xi22", "xi23", "xi31", "xi32", "xi33"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Case2Variant {
    /// The nine relations verbatim, including the eighth with g^2.
    Literal,
    /// Eighth relation replaced by g xi21 xi33 - g xi23 xi31, the form forced
    /// by the rank-one structure of the rows.
    Corrected,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Case2Chart { chart: (usize, usize, usize), variant: Case2Variant, g_inverted: bool },
    Case2Limit { chart: (usize, usize, usize) },
    Case3U3,
    Custom,
}

#[derive(Clone, Debug)]
pub struct ChartIdeal<F: Field> {
    /// Generators after dropping redundant ones.
    pub ideal: Ideal<F>,
    /// Every substituted generator (plus the inverse of g when localized).
    pub full: Ideal<F>,
    pub provenance: Provenance,
    /// Count of kept generators, not counting the localization relation.
    pub generator_count: usize,
    pub equal_to_full: bool,
}

/// Ring of base variables followed by xi11..xi33, and the nine relations
/// (LHS - RHS).
pub fn case2_equations<F: Field>(
    g: &Polynomial<F>,
    variant: Case2Variant,
) -> Result<(RingRef<F>, Vec<Polynomial<F>>), LocalModelError> {
    if g.is_zero() {
        return Err(LocalModelError::ZeroInput);
    }
    let base = g.ring();
    let ring = base.extend(&XI_NAMES, false, MonomialOrder::Degrevlex);
    let off = base.nvars();
    let g = g.embed(&ring)?;
    let xi = |i: usize, j: usize| Polynomial::var(&ring, off + 3 * (i - 1) + (j - 1));
    let g2 = &g * &g;
    let pair = |a: &Polynomial<F>, b: &Polynomial<F>| a * b;
    let eq8 = match variant {
        Case2Variant::Literal => &(&g * &pair(&xi(2, 1), &xi(3, 3))) - &(&g2 * &pair(&xi(2, 3), &xi(3, 1))),
        Case2Variant::Corrected => &(&g * &pair(&xi(2, 1), &xi(3, 3))) - &(&g * &pair(&xi(2, 3), &xi(3, 1))),
    };
    let eqs = vec![
        &(&g * &pair(&xi(1, 1), &xi(2, 2))) - &pair(&xi(1, 2), &xi(2, 1)),
        &(&g * &pair(&xi(1, 1), &xi(2, 3))) - &pair(&xi(1, 3), &xi(2, 1)),
        &(&g * &pair(&xi(1, 1), &xi(3, 2))) - &(&g * &pair(&xi(1, 2), &xi(3, 1))),
        &(&g * &pair(&xi(1, 1), &xi(3, 3))) - &pair(&xi(1, 3), &xi(3, 1)),
        &pair(&xi(1, 2), &xi(2, 3)) - &pair(&xi(1, 3), &xi(2, 2)),
        &(&g * &pair(&xi(1, 2), &xi(3, 3))) - &pair(&xi(1, 3), &xi(3, 2)),
        &(&g * &pair(&xi(2, 1), &xi(3, 2))) - &(&g2 * &pair(&xi(2, 2), &xi(3, 1))),
        eq8,
        &(&g * &pair(&xi(2, 2), &xi(3, 3))) - &pair(&xi(2, 3), &xi(3, 2)),
    ];
    Ok((ring, eqs))
}

/// Keep generators in order, dropping each one that lies in the ideal of
/// the others (plus `extra`).
pub fn greedy_drop<F: Field>(
    ring: &RingRef<F>,
    gens: &[Polynomial<F>],
    extra: &[Polynomial<F>],
) -> Result<Vec<Polynomial<F>>, LocalModelError> {
    let mut kept: Vec<Polynomial<F>> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    kept.dedup();
    let mut i = 0;
    while i < kept.len() {
        let mut others: Vec<Polynomial<F>> =
            kept.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p.clone()).collect();
        others.extend_from_slice(extra);
        if others.is_empty() {
            i += 1;
            continue;
        }
        if Ideal::new(ring, others)?.contains(&kept[i])? {
            kept.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(kept)
}

/// Set xi_{1i} = xi_{2j} = xi_{3k} = 1, drop those variables, optionally
/// invert g (extra variable `_v` with g _v = 1), then reduce the generator
/// set greedily.
pub fn case2_affine_chart<F: Field>(
    ring: &RingRef<F>,
    eqs: &[Polynomial<F>],
    g: &Polynomial<F>,
    chart: (usize, usize, usize),
    variant: Case2Variant,
    invert_g: bool,
) -> Result<ChartIdeal<F>, LocalModelError> {
    let (i, j, k) = chart;
    if ![i, j, k].iter().all(|c| (1..=3).contains(c)) {
        return Err(LocalModelError::BadChart);
    }
    let off = ring.nvars() - 9;
    let mut fixed = [off + i - 1, off + 3 + j - 1, off + 6 + k - 1];
    fixed.sort_unstable();
    let one = ring.field.one();
    let mut subst: Vec<Polynomial<F>> = eqs.to_vec();
    let mut gg = g.embed(ring)?;
    for &v in fixed.iter().rev() {
        subst = subst.iter().map(|p| p.dehomogenize(v, &one)).collect();
        gg = gg.dehomogenize(v, &one);
    }
    let mut cring = subst[0].ring().clone();
    let mut extra = Vec::new();
    if invert_g && !gg.is_constant() {
        cring = cring.extend(&["_v"], false, MonomialOrder::Degrevlex);
        let n = cring.nvars() - 1;
        let map: Vec<usize> = (0..n).collect();
        subst = subst.iter().map(|p| p.map_vars(&cring, &map)).collect();
        gg = gg.map_vars(&cring, &map);
        extra.push(&(&gg * &Polynomial::var(&cring, n)) - &Polynomial::one(&cring));
    }
    let kept = greedy_drop(&cring, &subst, &extra)?;
    let generator_count = kept.len();
    let mut all = subst.clone();
    all.extend(extra.iter().cloned());
    let full = Ideal::new(&cring, all)?;
    let mut reduced_gens = kept;
    reduced_gens.extend(extra);
    if reduced_gens.is_empty() {
        reduced_gens.push(Polynomial::zero(&cring));
    }
    let ideal = Ideal::new(&cring, reduced_gens)?;
    let equal_to_full = ideal.equal(&full)?;
    Ok(ChartIdeal {
        ideal,
        full,
        provenance: Provenance::Case2Chart { chart, variant, g_inverted: invert_g },
        generator_count,
        equal_to_full,
    })
}

pub fn all_charts() -> Vec<(usize, usize, usize)> {
    let mut out = Vec::with_capacity(27);
    for i in 1..=3 {
        for j in 1..=3 {
            for k in 1..=3 {
                out.push((i, j, k));
            }
        }
    }
    out
}

/// Per-chart generator counts for one variant.
pub struct ChartSweep {
    pub variant: Case2Variant,
    pub g_inverted: bool,
    pub counts: Vec<((usize, usize, usize), usize)>,
    pub all_equal: bool,
}

impl ChartSweep {
    pub fn max_generators(&self) -> usize {
        self.counts.iter().map(|c| c.1).max().unwrap_or(0)
    }

    pub fn all_four(&self) -> bool {
        self.counts.iter().all(|c| c.1 == 4)
    }
}

pub fn chart_sweep<F: Field>(
    g: &Polynomial<F>,
    variant: Case2Variant,
    invert_g: bool,
) -> Result<ChartSweep, LocalModelError> {
    let (ring, eqs) = case2_equations(g, variant)?;
    let mut counts = Vec::new();
    let mut all_equal = true;
    for chart in all_charts() {
        let c = case2_affine_chart(&ring, &eqs, g, chart, variant, invert_g)?;
        all_equal &= c.equal_to_full;
        counts.push((chart, c.generator_count));
    }
    Ok(ChartSweep { variant, g_inverted: invert_g, counts, all_equal })
}

/// Flat limit at g = 0 of a chart over a base with g a variable: saturate
/// by g, then set g = 0. The chart must not be localized.
pub fn flat_limit<F: Field>(chart: &ChartIdeal<F>, g_var: usize) -> Result<ChartIdeal<F>, LocalModelError> {
    let ch = match &chart.provenance {
        Provenance::Case2Chart { chart, g_inverted: false, .. } => *chart,
        _ => return Err(LocalModelError::Precondition("flat limit needs an unlocalized Case-2 chart".into())),
    };
    let ring = chart.full.ring();
    let g = Polynomial::var(ring, g_var);
    let sat = chart.full.saturate(&g)?;
    let zero = ring.field.zero();
    let gens: Vec<Polynomial<F>> = sat.basis().polys().iter().map(|p| p.dehomogenize(g_var, &zero)).collect();
    let lring = ring.drop_var(g_var);
    let gens: Vec<Polynomial<F>> = gens.into_iter().filter(|p| !p.is_zero()).collect();
    let gens = if gens.is_empty() { vec![Polynomial::zero(&lring)] } else { gens };
    let full = Ideal::new(gens[0].ring(), gens.clone())?;
    let kept = greedy_drop(gens[0].ring(), &gens, &[])?;
    let generator_count = kept.len();
    let ideal = if kept.is_empty() { full.clone() } else { Ideal::new(gens[0].ring(), kept)? };
    Ok(ChartIdeal { ideal, full, provenance: Provenance::Case2Limit { chart: ch }, generator_count, equal_to_full: true })
}

/// Each component contains the limit and the product of the components has
/// the same radical as the limit.
pub fn triple_component_check<F: Field>(limit: &ChartIdeal<F>, comps: &[Ideal<F>]) -> Result<bool, LocalModelError> {
    if !matches!(limit.provenance, Provenance::Case2Limit { .. } | Provenance::Custom) {
        return Err(LocalModelError::Precondition("components are checked on the g = 0 fiber only".into()));
    }
    if comps.len() != 3 {
        return Err(LocalModelError::Precondition(format!("expected 3 components, got {}", comps.len())));
    }
    for c in comps {
        for g in limit.ideal.gens() {
            if !c.contains(g)? {
                return Ok(false);
            }
        }
    }
    let ring = limit.ideal.ring();
    let mut prod = vec![Polynomial::one(ring)];
    for c in comps {
        prod = prod.iter().flat_map(|p| c.gens().iter().map(move |q| p * q)).collect();
    }
    Ok(Ideal::new(ring, prod)?.radical_equal(&limit.ideal)?)
}

/// (F1, F2) in x, y, z, w over the base ring of f and g.
pub fn case3_chart_u3<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>) -> Result<ChartIdeal<F>, LocalModelError> {
    let base = f.ring();
    let field = &base.field;
    let w = field.omega().ok_or(LocalModelError::Poly(PolyError::Coeff(CoeffError::NoOmega)))?;
    let ring = base.extend(&["x", "y", "z", "w"], false, MonomialOrder::Degrevlex);
    let n = base.nvars();
    let (x, y, z, v) = (
        Polynomial::var(&ring, n),
        Polynomial::var(&ring, n + 1),
        Polynomial::var(&ring, n + 2),
        Polynomial::var(&ring, n + 3),
    );
    let c = |e: F::Elem| Polynomial::constant(&ring, e);
    let one_minus_w = field.sub(&field.one(), &w);
    let w2 = field.mul(&w, &w);
    let xyz = &(&x * &y) * &z;
    let f1 = &(&(&y.pow(3) - &(&c(w.clone()) * &(&x.pow(2) * &v))) + &(&c(one_minus_w.clone()) * &xyz)) - &f.embed(&ring)?;
    let f2 = &(&(&z.pow(3) - &(&c(w2) * &(&x * &v.pow(2)))) - &(&c(one_minus_w) * &xyz)) - &g.embed(&ring)?;
    let ideal = Ideal::new(&ring, vec![f1, f2])?;
    Ok(ChartIdeal { full: ideal.clone(), ideal, provenance: Provenance::Case3U3, generator_count: 2, equal_to_full: true })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducednessReport {
    pub complete_intersection: bool,
    pub codim: usize,
    /// Codimension of the singular locus in the chart space; None when the
    /// singular locus is empty.
    pub singular_codim: Option<usize>,
    pub squarefree_initial: bool,
    pub reduced: bool,
}

fn det<F: Field>(m: &[Vec<Polynomial<F>>]) -> Polynomial<F> {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let ring = m[0][0].ring().clone();
    let mut acc = Polynomial::zero(&ring);
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial<F>>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, p)| p.clone()).collect()).collect();
        let t = &m[0][c] * &det(&minor);
        acc = if c % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    acc
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// Serre-style reducedness: a complete intersection is Cohen-Macaulay, so
/// reduced once generically smooth (singular locus of positive relative
/// codimension). A squarefree initial ideal also proves reducedness.
pub fn chart_reducedness_check<F: Field>(ideal: &Ideal<F>) -> Result<ReducednessReport, LocalModelError> {
    let ring = ideal.ring().clone();
    let n = ring.nvars();
    let basis = ideal.basis();
    let squarefree_initial = basis.leading_monomials().iter().all(|m| (0..n).all(|i| m.exp(i) <= 1));
    let gens: Vec<Polynomial<F>> = ideal.gens().iter().filter(|g| !g.is_zero()).cloned().collect();
    let dim = match ideal.dimension_affine() {
        Dim::Empty => {
            return Ok(ReducednessReport {
                complete_intersection: true,
                codim: n + 1,
                singular_codim: None,
                squarefree_initial: true,
                reduced: true,
            })
        }
        Dim::D(d) => d,
    };
    let codim = n - dim;
    let complete_intersection = codim == gens.len();
    let mut singular_codim = None;
    if complete_intersection && codim > 0 {
        let jac: Vec<Vec<Polynomial<F>>> = gens.iter().map(|g| g.gradient()).collect();
        let mut sing = gens.clone();
        for cols in combinations(n, codim) {
            let sub: Vec<Vec<Polynomial<F>>> = jac.iter().map(|row| cols.iter().map(|&c| row[c].clone()).collect()).collect();
            let d = det(&sub);
            if !d.is_zero() {
                sing.push(d);
            }
        }
        singular_codim = match Ideal::new(&ring, sing)?.dimension_affine() {
            Dim::Empty => None,
            Dim::D(d) => Some(n - d),
        };
    } else if complete_intersection {
        singular_codim = None;
    }
    let generically_smooth = complete_intersection && singular_codim.map_or(true, |s| s > codim);
    Ok(ReducednessReport {
        complete_intersection,
        codim,
        singular_codim,
        squarefree_initial,
        reduced: generically_smooth || squarefree_initial,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiberType {
    SmoothBrauerSeveri,
    TripleHirzebruch,
    ConeOverTwistedCubic,
}

impl FiberType {
    pub fn as_str(&self) -> &'static str {
        match self {
            FiberType::SmoothBrauerSeveri => "smooth",
            FiberType::TripleHirzebruch => "triple-hirzebruch",
            FiberType::ConeOverTwistedCubic => "cone-over-twisted-cubic",
        }
    }
}

/// Stratum of P: smooth off the discriminant (the components with
/// nontrivial residue); a cone where, among the divisors of the symbol
/// entries through P, a degenerates along one and b along another; three
/// Hirzebruch surfaces otherwise.
pub fn classify_fiber<F: Field>(
    a: &FactoredFunction<F>,
    b: &FactoredFunction<F>,
    point: &[F::Elem],
    discriminant: &[PrimeDivisor<F>],
    divisors: &[PrimeDivisor<F>],
) -> Result<FiberType, ResidueError> {
    let on = |d: &PrimeDivisor<F>| -> Result<bool, ResidueError> {
        Ok(d.poly.ring().field.is_zero(&d.poly.evaluate(point)?))
    };
    let mut hit = false;
    for d in discriminant {
        hit |= on(d)?;
    }
    if !hit {
        return Ok(FiberType::SmoothBrauerSeveri);
    }
    let mut through = Vec::new();
    for d in divisors {
        if on(d)? {
            let va = valuation_along_divisor(a, d)?.rem_euclid(3);
            let vb = valuation_along_divisor(b, d)?.rem_euclid(3);
            through.push((va, vb));
        }
    }
    for (i, x) in through.iter().enumerate() {
        for (j, y) in through.iter().enumerate() {
            if i != j && x.0 != 0 && y.1 != 0 {
                return Ok(FiberType::ConeOverTwistedCubic);
            }
        }
    }
    Ok(FiberType::TripleHirzebruch)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{PrimeField, Rationals, DEFAULT_PRIME};
    use crate::expr::poly;
    use crate::poly::tests::{fs1, fs2, ring4};
    use crate::poly::{IrreducibilityCert, Ring};

    fn fp() -> PrimeField {
        PrimeField::new(DEFAULT_PRIME).unwrap()
    }

    fn tring<F: Field>(k: F) -> RingRef<F> {
        Ring::new(k, &["t"])
    }

    #[test]
    fn equations_verbatim() {
        let r = tring(Rationals);
        let t = Polynomial::var(&r, 0);
        let (ring, eqs) = case2_equations(&t, Case2Variant::Literal).unwrap();
        let expect = [
            "t*xi11*xi22 - xi12*xi21",
            "t*xi11*xi23 - xi13*xi21",
            "t*xi11*xi32 - t*xi12*xi31",
            "t*xi11*xi33 - xi13*xi31",
            "xi12*xi23 - xi13*xi22",
            "t*xi12*xi33 - xi13*xi32",
            "t*xi21*xi32 - t^2*xi22*xi31",
            "t*xi21*xi33 - t^2*xi23*xi31",
            "t*xi22*xi33 - xi23*xi32",
        ];
        assert_eq!(eqs.len(), 9);
        for (e, s) in eqs.iter().zip(expect) {
            assert_eq!(*e, poly(&ring, s).unwrap(), "{s}");
        }
        let (_, c) = case2_equations(&t, Case2Variant::Corrected).unwrap();
        assert_eq!(c[7], poly(&ring, "t*xi21*xi33 - t*xi23*xi31").unwrap());
        assert_eq!(case2_equations(&Polynomial::zero(&r), Case2Variant::Literal).unwrap_err(), LocalModelError::ZeroInput);
    }

    /// Points of the rank-one family satisfy the corrected relations.
    #[test]
    fn corrected_relations_vanish_on_rank_one_rows() {
        let k = fp();
        let r = tring(k);
        let t = Polynomial::var(&r, 0);
        let (ring, eqs) = case2_equations(&t, Case2Variant::Corrected).unwrap();
        let (_, lit) = case2_equations(&t, Case2Variant::Literal).unwrap();
        let mut s = 7u64;
        let mut rnd = || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1);
            (s >> 33) % DEFAULT_PRIME
        };
        let mut literal_fails = false;
        for _ in 0..20 {
            let (g, a, b, c, l2, l3) = (rnd(), rnd(), rnd(), rnd(), rnd(), rnd());
            let row1 = [a, b, c];
            let row2 = [k.mul(&l2, &k.mul(&g, &a)), k.mul(&l2, &b), k.mul(&l2, &c)];
            let row3 = [k.mul(&l3, &k.mul(&g, &a)), k.mul(&l3, &k.mul(&g, &b)), k.mul(&l3, &c)];
            let mut pt = vec![g];
            pt.extend(row1.iter().chain(&row2).chain(&row3).cloned());
            assert_eq!(pt.len(), ring.nvars());
            for e in &eqs {
                assert_eq!(e.evaluate(&pt).unwrap(), 0);
            }
            literal_fails |= lit[7].evaluate(&pt).unwrap() != 0;
        }
        assert!(literal_fails);
    }

    #[test]
    fn chart_111() {
        let r = tring(fp());
        let t = Polynomial::var(&r, 0);
        let (ring, eqs) = case2_equations(&t, Case2Variant::Literal).unwrap();
        let c = case2_affine_chart(&ring, &eqs, &t, (1, 1, 1), Case2Variant::Literal, false).unwrap();
        assert!(c.equal_to_full);
        // the four target generators alone
        let cr = c.full.ring().clone();
        let four: Vec<_> = ["t*xi22 - xi12", "t*xi23 - xi13", "t*xi32 - t*xi12", "t*xi33 - xi13"]
            .iter()
            .map(|s| poly(&cr, s).unwrap())
            .collect();
        let four = Ideal::new(&cr, four).unwrap();
        assert!(!four.equal(&c.full).unwrap());
        let (ring2, eqs2) = case2_equations(&t, Case2Variant::Corrected).unwrap();
        let c2 = case2_affine_chart(&ring2, &eqs2, &t, (1, 1, 1), Case2Variant::Corrected, true).unwrap();
        assert_eq!(c2.generator_count, 4);
        assert!(c2.equal_to_full);
    }

    #[test]
    fn sweeps() {
        let r = tring(fp());
        let t = Polynomial::var(&r, 0);
        let lit = chart_sweep(&t, Case2Variant::Literal, false).unwrap();
        assert!(lit.all_equal);
        assert!(lit.max_generators() > 4);
        let cor = chart_sweep(&t, Case2Variant::Corrected, true).unwrap();
        assert!(cor.all_equal && cor.all_four());
    }

    #[test]
    fn g_one_chart_is_a_graph() {
        let r = Ring::new(fp(), &[]);
        let one = Polynomial::one(&r);
        let (ring, eqs) = case2_equations(&one, Case2Variant::Literal).unwrap();
        let c = case2_affine_chart(&ring, &eqs, &one, (1, 1, 1), Case2Variant::Literal, false).unwrap();
        assert_eq!(c.full.dimension_affine(), Dim::D(2));
        assert_eq!(c.generator_count, 4);
    }

    #[test]
    fn limits_and_components() {
        let r = tring(fp());
        let t = Polynomial::var(&r, 0);
        let (ring, eqs) = case2_equations(&t, Case2Variant::Corrected).unwrap();
        let c = case2_affine_chart(&ring, &eqs, &t, (1, 1, 1), Case2Variant::Corrected, false).unwrap();
        let lim = flat_limit(&c, 0).unwrap();
        let lr = lim.ideal.ring().clone();
        let expect: Vec<_> = ["xi12", "xi13", "xi23 - xi33", "xi32"].iter().map(|s| poly(&lr, s).unwrap()).collect();
        assert!(lim.full.equal(&Ideal::new(&lr, expect).unwrap()).unwrap());
        let rep = chart_reducedness_check(&lim.full).unwrap();
        assert!(rep.reduced && rep.squarefree_initial);

        let c = case2_affine_chart(&ring, &eqs, &t, (1, 2, 3), Case2Variant::Corrected, false).unwrap();
        let lim = flat_limit(&c, 0).unwrap();
        let lr = lim.ideal.ring().clone();
        let comp = |v: &[&str]| Ideal::new(&lr, v.iter().map(|s| poly(&lr, s).unwrap()).collect()).unwrap();
        let c1 = comp(&["xi12", "xi13", "xi32", "xi21 - xi23*xi31"]);
        let c2 = comp(&["xi23", "xi13", "xi21", "xi32 - xi12*xi31"]);
        let c3 = comp(&["xi31", "xi32", "xi21", "xi13 - xi12*xi23"]);
        assert!(triple_component_check(&lim, &[c1.clone(), c2.clone(), c3.clone()]).unwrap());
        assert!(!triple_component_check(&lim, &[c1.clone(), c1.clone(), c2]).unwrap());
        assert!(matches!(triple_component_check(&c, &[c1.clone(), c1.clone(), c1]), Err(LocalModelError::Precondition(_))));
        // the literal list degenerates to the unit ideal on this chart
        let (ring, eqs) = case2_equations(&t, Case2Variant::Literal).unwrap();
        let c = case2_affine_chart(&ring, &eqs, &t, (1, 2, 3), Case2Variant::Literal, false).unwrap();
        assert!(flat_limit(&c, 0).unwrap().full.is_unit());
    }

    #[test]
    fn u3_chart() {
        let k = fp();
        let base = Ring::new(k, &[]);
        let z = Polynomial::zero(&base);
        let c = case3_chart_u3(&z, &z).unwrap();
        let rep = chart_reducedness_check(&c.ideal).unwrap();
        assert!(rep.complete_intersection);
        assert!(rep.singular_codim.unwrap() >= 3);
        assert!(rep.reduced);
        let one = Polynomial::one(&base);
        let c = case3_chart_u3(&one, &one).unwrap();
        assert_eq!(c.ideal.dimension_affine(), Dim::D(2));
        let rep = chart_reducedness_check(&c.ideal).unwrap();
        assert_eq!(rep.singular_codim, None);
        let q = Ring::new(Rationals, &[]);
        assert!(case3_chart_u3(&Polynomial::zero(&q), &Polynomial::zero(&q)).is_err());
    }

    #[test]
    fn double_plane_not_reduced() {
        let r = ring4(Rationals);
        let i = Ideal::new(&r, vec![poly(&r, "x0^2").unwrap()]).unwrap();
        let rep = chart_reducedness_check(&i).unwrap();
        assert!(rep.complete_intersection && !rep.reduced);
    }

    fn symbol_data<F: Field>(r: &RingRef<F>) -> (FactoredFunction<F>, FactoredFunction<F>, Vec<PrimeDivisor<F>>) {
        let one = r.field.one();
        let p = |s: &str| poly(r, s).unwrap();
        let a = FactoredFunction::from_factors(one.clone(), vec![(fs2(r), 1), (p("x2^3 - x3^3"), 1), (p("x0"), -21)]);
        let b = FactoredFunction::from_factors(one, vec![(fs1(r), 1), (p("x0"), -9)]);
        let divs = vec![
            PrimeDivisor::new("S1", fs1(r), IrreducibilityCert::SingularLocusDim).unwrap(),
            PrimeDivisor::new("S2", fs2(r), IrreducibilityCert::UserAsserted("test".into())).unwrap(),
            PrimeDivisor::new("X0", p("x0"), IrreducibilityCert::Linear).unwrap(),
            PrimeDivisor::new("L", p("x2^3 - x3^3"), IrreducibilityCert::UserAsserted("test".into())).unwrap(),
        ];
        (a, b, divs)
    }

    #[test]
    fn fiber_types() {
        let r = ring4(Rationals);
        let (a, b, divs) = symbol_data(&r);
        let pt = |v: [i64; 4]| v.iter().map(|&x| Rationals.from_i64(x)).collect::<Vec<_>>();
        assert_eq!(classify_fiber(&a, &b, &pt([1, 0, 0, 0]), &divs[..2], &divs).unwrap(), FiberType::SmoothBrauerSeveri);
        assert_eq!(classify_fiber(&a, &b, &pt([0, 1, 1, 2]), &divs[..2], &divs).unwrap(), FiberType::TripleHirzebruch);
        assert_eq!(classify_fiber(&a, &b, &pt([0, 0, 0, 1]), &divs[..2], &divs).unwrap(), FiberType::ConeOverTwistedCubic);
        // on S1 and x2 = x3 but not on S2: still a cone
        assert_eq!(classify_fiber(&a, &b, &pt([0, 1, 2, 2]), &divs[..2], &divs).unwrap(), FiberType::ConeOverTwistedCubic);
    }

    #[test]
    fn random_points_off_discriminant_are_smooth() {
        let k = fp();
        let r = ring4(k);
        let (a, b, divs) = symbol_data(&r);
        let mut s = 99u64;
        let mut n = 0;
        while n < 100 {
            let pt: Vec<u64> = (0..4)
                .map(|_| {
                    s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    (s >> 33) % DEFAULT_PRIME
                })
                .collect();
            if divs[..2].iter().any(|d| d.poly.evaluate(&pt).unwrap() == 0) {
                continue;
            }
            assert_eq!(classify_fiber(&a, &b, &pt, &divs[..2], &divs).unwrap(), FiberType::SmoothBrauerSeveri);
            n += 1;
        }
    }
}
