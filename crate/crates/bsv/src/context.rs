//! A scenario instantiated over one coefficient field.

use std::collections::BTreeMap;

use bsv_core::coeff::Field;
use bsv_core::expr::{parse_expr, rational_to_poly, Expr};
use bsv_core::ideal::{jacobian_transversality_ideal, singular_locus_ideal, Ideal};
use bsv_core::poly::{IrreducibilityCert, Polynomial, PrimeSpec, RationalFunction, Ring, RingRef};
use bsv_core::residue::FactoredFunction;

use crate::scenario::{call, list, split_top, tuple, CertSpec, PrimeAst, ScenarioDoc};

pub type Res<T> = Result<T, String>;

pub struct Ctx<F: Field> {
    pub ring: RingRef<F>,
    polys: BTreeMap<String, Polynomial<F>>,
}

impl<F: Field> Ctx<F> {
    pub fn new(doc: &ScenarioDoc, field: F) -> Res<Self> {
        let names: Vec<&str> = doc.vars.iter().map(String::as_str).collect();
        let mut ctx = Ctx { ring: Ring::new(field, &names), polys: BTreeMap::new() };
        for (n, e) in &doc.polys {
            let p = ctx.poly(e).map_err(|m| format!("poly {n}: {m}"))?;
            ctx.polys.insert(n.clone(), p);
        }
        Ok(ctx)
    }

    pub fn field(&self) -> &F {
        &self.ring.field
    }

    pub fn named(&self, name: &str) -> Option<&Polynomial<F>> {
        self.polys.get(name)
    }

    pub fn rational(&self, e: &Expr) -> Res<RationalFunction<F>> {
        let env = |s: &str| self.polys.get(s).map(|p| RationalFunction::from_poly(p.clone()));
        e.to_rational(&self.ring, &env).map_err(|e| e.to_string())
    }

    pub fn poly(&self, e: &Expr) -> Res<Polynomial<F>> {
        rational_to_poly(&self.rational(e)?).map_err(|err| format!("{e}: {err}"))
    }

    pub fn poly_str(&self, s: &str) -> Res<Polynomial<F>> {
        self.poly(&parse_expr(s).map_err(|e| format!("`{s}`: {e}"))?)
    }

    pub fn expr(s: &str) -> Res<Expr> {
        parse_expr(s).map_err(|e| format!("`{s}`: {e}"))
    }

    pub fn rational_str(&self, s: &str) -> Res<RationalFunction<F>> {
        self.rational(&Self::expr(s)?)
    }

    /// Keeps the multiplicative structure of the expression: products,
    /// quotients and powers become factor lists, everything else one factor.
    pub fn factored(&self, e: &Expr) -> Res<FactoredFunction<F>> {
        let field = self.field().clone();
        let f = match e {
            Expr::Mul(items) => {
                let mut acc = FactoredFunction::one(&self.ring);
                for it in items {
                    acc = acc.mul(&self.factored(it)?);
                }
                acc
            }
            Expr::Div(a, b) => self.factored(a)?.mul(&self.factored(b)?.inv(&field)),
            Expr::Pow(b, k) => self.factored(b)?.pow(*k as i64, &field),
            Expr::Neg(x) => {
                let mut f = self.factored(x)?;
                f.unit = field.neg(&f.unit);
                f
            }
            _ => {
                let r = self.rational(e)?;
                if r.den.is_constant() {
                    FactoredFunction::from_factors(field.one(), vec![(self.poly(e)?, 1)])
                } else {
                    FactoredFunction::from_rational(&r)
                }
            }
        };
        if f.is_zero(&field) {
            return Err(format!("{e} is zero"));
        }
        Ok(f)
    }

    pub fn factored_str(&self, s: &str) -> Res<FactoredFunction<F>> {
        self.factored(&Self::expr(s)?)
    }

    pub fn factor_list(&self, items: &[(Expr, i64)]) -> Res<FactoredFunction<F>> {
        let field = self.field();
        let mut unit = field.one();
        let mut v = Vec::new();
        for (e, k) in items {
            let p = self.poly(e)?;
            if p.is_zero() {
                return Err(format!("factor {e} is zero"));
            }
            // constants go into the unit
            match p.constant_value() {
                Some(c) => {
                    let c = if *k < 0 { field.inv(&c).map_err(|e| e.to_string())? } else { c };
                    for _ in 0..k.unsigned_abs() {
                        unit = field.mul(&unit, &c);
                    }
                }
                None => v.push((p, *k)),
            }
        }
        Ok(FactoredFunction::from_factors(unit, v))
    }

    pub fn scalar(&self, e: &Expr) -> Res<F::Elem> {
        let p = self.poly(e)?;
        if p.is_zero() {
            return Ok(self.field().zero());
        }
        p.constant_value().ok_or_else(|| format!("{e} is not a constant"))
    }

    pub fn point(&self, coords: &[Expr]) -> Res<Vec<F::Elem>> {
        coords.iter().map(|c| self.scalar(c)).collect()
    }

    /// `(c0,c1,...)` text.
    pub fn point_str(&self, s: &str) -> Res<Vec<F::Elem>> {
        let items = tuple(s).ok_or_else(|| format!("expected a point, got `{s}`"))?;
        items.iter().map(|c| self.scalar(&Self::expr(c)?)).collect()
    }

    pub fn var(&self, name: &str) -> Res<usize> {
        self.ring.index_of(name.trim()).ok_or_else(|| format!("unknown variable `{name}`"))
    }

    pub fn cert(&self, c: &CertSpec) -> Res<IrreducibilityCert<F>> {
        Ok(match c {
            CertSpec::Linear => IrreducibilityCert::Linear,
            CertSpec::Singular => IrreducibilityCert::SingularLocusDim,
            CertSpec::Asserted(s) => IrreducibilityCert::UserAsserted(s.clone()),
            CertSpec::Eisenstein { var, prime } => IrreducibilityCert::Eisenstein {
                var: self.var(var)?,
                prime: match prime {
                    PrimeAst::Explicit { poly, cert } => {
                        PrimeSpec::Explicit { poly: self.poly(poly)?, cert: Box::new(self.cert(cert)?) }
                    }
                    PrimeAst::Regular { host, point } => {
                        PrimeSpec::RegularPointFactor { host: self.poly(host)?, point: self.point(point)? }
                    }
                },
            },
            CertSpec::Restriction { var, inner } => {
                IrreducibilityCert::Restriction { var: self.var(var)?, inner: Box::new(self.cert(inner)?) }
            }
        })
    }

    /// `sing(f)`, `transversal(f,g)` or `[g1, g2, ...]`.
    pub fn ideal(&self, spec: &str) -> Res<Ideal<F>> {
        let spec = spec.trim();
        let r = if let Some(inner) = call(spec, "sing") {
            singular_locus_ideal(&self.poly_str(inner)?)
        } else if let Some(inner) = call(spec, "transversal") {
            let a = split_top(inner, ',');
            if a.len() != 2 {
                return Err("transversal(f, g) takes two arguments".into());
            }
            jacobian_transversality_ideal(&self.poly_str(a[0])?, &self.poly_str(a[1])?)
        } else if let Some(items) = list(spec) {
            let gens = items.iter().map(|s| self.poly_str(s)).collect::<Res<Vec<_>>>()?;
            if gens.is_empty() {
                return Err("empty generator list".into());
            }
            Ideal::new(&self.ring, gens)
        } else {
            return Err(format!("bad ideal `{spec}`"));
        };
        r.map_err(|e| e.to_string())
    }
}

/// Does the certificate need a singular-locus computation somewhere?
pub fn cert_is_heavy(c: &CertSpec) -> bool {
    match c {
        CertSpec::Singular => true,
        CertSpec::Restriction { inner, .. } => cert_is_heavy(inner),
        CertSpec::Eisenstein { prime: PrimeAst::Explicit { cert, .. }, .. } => cert_is_heavy(cert),
        _ => false,
    }
}
