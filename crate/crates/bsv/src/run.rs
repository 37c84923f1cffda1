//! Check orchestration: turns a scenario into a report.
//!
//! Stages run in a fixed order (certificates, ideal checks, residue
//! support, curves, checklist, obstruction group, local models). Nothing
//! aborts a run; every failure becomes a report entry.

use std::time::Instant;

use serde_json::{json, Value};

use bsv_core::coeff::{Eisenstein, Field, FieldMode, PrimeField, Rationals, DEFAULT_PRIME};
use bsv_core::ideal::{singular_locus_ideal, Dim, Ideal};
use bsv_core::localmodel::{
    case2_affine_chart, case2_equations, case3_chart_u3, chart_reducedness_check, chart_sweep, classify_fiber,
    flat_limit, triple_component_check, Case2Variant,
};
use bsv_core::obstruction::{
    hypothesis_checklist, summarize, CheckStatus, CurveConstraint, RestrictionStatus, SurfaceFacts,
};
use bsv_core::poly::{Polynomial, Ring};
use bsv_core::residue::{
    check_uniformizer, cube_triviality_check, curve_on_surface, curve_residue1, curve_valuation_witnessed,
    divisor_degree_complete, ord_at_point, residue_support, same_class, verify_cert, CertStatus, ClassEvidence,
    CurveWitness, FactoredFunction, PrimeDivisor, SymbolAlgebra, Triviality, ORDER_CAP,
};

use crate::context::{cert_is_heavy, Ctx, Res};
use crate::report::{ChecklistEntry, ObstructionData, Record, Report, Status};
use crate::scenario::{list, parse_cert_str, tuple, CheckDecl, CurveDecl, Evidence, ScenarioDoc};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOptions {
    /// Overrides the document's field.
    pub field: Option<FieldMode>,
    /// Prime for modular certificates.
    pub prime: u64,
    /// Run heavy ideal checks in the session field instead of mod p.
    pub exact: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { field: None, prime: env_prime(), exact: false }
    }
}

/// `BSV_PRIME` if set and parseable, else the default prime.
pub fn env_prime() -> u64 {
    std::env::var("BSV_PRIME").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_PRIME)
}

pub fn run_checks(doc: &ScenarioDoc, opts: &RunOptions) -> Report {
    let start = Instant::now();
    let mode = opts.field.unwrap_or(doc.field);
    let mut rep = match mode {
        FieldMode::Q => Runner::new(doc, Rationals, opts).run(),
        FieldMode::Qomega => Runner::new(doc, Eisenstein, opts).run(),
        FieldMode::Fp(p) => match PrimeField::new(p) {
            Ok(k) => Runner::new(doc, k, opts).run(),
            Err(e) => {
                let mut r = empty_report(doc, mode, opts);
                r.checks.push(rec("field", Status::Fail, e.to_string()));
                r
            }
        },
    };
    rep.timing_ms = start.elapsed().as_millis();
    rep
}

fn empty_report(doc: &ScenarioDoc, mode: FieldMode, opts: &RunOptions) -> Report {
    Report {
        scenario: doc.name.clone(),
        field: mode.to_string(),
        prime: match mode {
            FieldMode::Fp(p) => p,
            _ => opts.prime,
        },
        exact: opts.exact,
        checks: Vec::new(),
        obstruction: None,
        checklist: Vec::new(),
        local_models: Vec::new(),
        notes: doc.notes.clone(),
        timing_ms: 0,
    }
}

fn rec(id: &str, status: Status, details: impl Into<String>) -> Record {
    Record { id: id.into(), status, details: details.into(), data: None }
}

fn ok_status(ok: bool, modp: Option<u64>) -> Status {
    match (ok, modp) {
        (false, _) => Status::Fail,
        (true, Some(p)) => Status::CertifiedModP(p),
        (true, None) => Status::Pass,
    }
}

fn stage_of(kind: &str) -> u8 {
    match kind {
        "certificate" | "sing_points" | "radical_equal" | "empty" | "member" | "nonzero" | "euler" => 2,
        "point_residue" | "divisor_of" => 4,
        "obstruction" => 6,
        _ => 7,
    }
}

struct Runner<'a, F: Field> {
    doc: &'a ScenarioDoc,
    opts: &'a RunOptions,
    ctx: Res<Ctx<F>>,
    modular: Option<Res<Ctx<PrimeField>>>,
    out: Vec<(u8, Record)>,
    comps: Vec<Option<PrimeDivisor<F>>>,
    divs: Vec<Option<PrimeDivisor<F>>>,
    gammas: Vec<Option<FactoredFunction<F>>>,
    nontrivial: Vec<bool>,
    constraints: Vec<Option<CurveConstraint>>,
    cartier: Vec<(String, bool)>,
    obstruction: Option<ObstructionData>,
    checklist: Vec<ChecklistEntry>,
    local_models: Vec<Value>,
}

/// Run `$body` with `$c` bound to the context used for heavy ideal work:
/// F_p unless the run is exact or already modular. Yields (result, prime
/// if the computation was modular).
macro_rules! heavy {
    ($self:ident, |$c:ident| $body:expr) => {{
        if let Some(m) = &$self.modular {
            match m {
                Ok($c) => ($body, Some($self.opts.prime)),
                Err(e) => (Err(format!("modular context: {e}")), None),
            }
        } else {
            match &$self.ctx {
                Ok($c) => ($body, $self.session_prime()),
                Err(e) => (Err(e.clone()), None),
            }
        }
    }};
}

impl<'a, F: Field> Runner<'a, F> {
    fn new(doc: &'a ScenarioDoc, field: F, opts: &'a RunOptions) -> Self {
        let session_modular = matches!(field.mode(), FieldMode::Fp(_));
        let modular = (!opts.exact && !session_modular)
            .then(|| PrimeField::new(opts.prime).map_err(|e| e.to_string()).and_then(|k| Ctx::new(doc, k)));
        let n = doc.components.len();
        Runner {
            doc,
            opts,
            ctx: Ctx::new(doc, field),
            modular,
            out: Vec::new(),
            comps: vec![None; n],
            divs: vec![None; doc.divisors.len()],
            gammas: vec![None; n],
            nontrivial: vec![false; n],
            constraints: Vec::new(),
            cartier: Vec::new(),
            obstruction: None,
            checklist: Vec::new(),
            local_models: Vec::new(),
        }
    }

    fn session_prime(&self) -> Option<u64> {
        match &self.ctx {
            Ok(c) => match c.field().mode() {
                FieldMode::Fp(p) => Some(p),
                _ => None,
            },
            Err(_) => None,
        }
    }

    fn push(&mut self, stage: u8, r: Record) {
        self.out.push((stage, r));
    }

    fn result(&mut self, stage: u8, id: &str, r: Res<(bool, String)>, modp: Option<u64>) {
        let r = match r {
            Ok((ok, d)) => rec(id, ok_status(ok, modp), d),
            Err(e) => rec(id, Status::Fail, e),
        };
        self.push(stage, r);
    }

    fn run(mut self) -> Report {
        let mode = self.ctx.as_ref().map(|c| c.field().mode()).unwrap_or(self.doc.field);
        let mut report = empty_report(self.doc, self.opts.field.unwrap_or(mode), self.opts);
        if let Err(e) = &self.ctx {
            report.checks.push(rec("context", Status::Fail, e.clone()));
            return report;
        }
        self.stage_certificates();
        let checks: Vec<&CheckDecl> = self.doc.checks.iter().collect();
        for c in checks.iter().filter(|c| stage_of(&c.kind) == 2) {
            self.user_check(c);
        }
        self.stage_support();
        self.stage_curves();
        for c in checks.iter().filter(|c| stage_of(&c.kind) == 4) {
            self.user_check(c);
        }
        self.stage_checklist();
        self.stage_obstruction();
        for c in checks.iter().filter(|c| stage_of(&c.kind) >= 6) {
            self.user_check(c);
        }
        let mut out = std::mem::take(&mut self.out);
        out.sort_by(|a, b| (a.0, &a.1.id).cmp(&(b.0, &b.1.id)));
        report.checks = out.into_iter().map(|x| x.1).collect();
        report.obstruction = self.obstruction.take();
        report.checklist = std::mem::take(&mut self.checklist);
        report.local_models = std::mem::take(&mut self.local_models);
        report
    }

    fn ctx(&self) -> &Ctx<F> {
        self.ctx.as_ref().expect("checked in run")
    }

    // ------------------------------------------------------------ stage 1

    fn stage_certificates(&mut self) {
        let doc = self.doc;
        for (i, c) in doc.components.iter().enumerate() {
            self.comps[i] = self.divisor(&c.name, &c.poly, &c.cert);
            match self.ctx().factored(&c.gamma) {
                Ok(g) if g.is_degree_zero() => self.gammas[i] = Some(g),
                Ok(_) => self.push(1, rec(&format!("gamma/{}", c.name), Status::Fail, "gamma is not of degree 0")),
                Err(e) => self.push(1, rec(&format!("gamma/{}", c.name), Status::Fail, e)),
            }
        }
        for (i, d) in doc.divisors.iter().enumerate() {
            self.divs[i] = self.divisor(&d.name, &d.poly, &d.cert);
        }
    }

    /// Build the prime divisor in the session field and verify its
    /// certificate (mod p when it needs a singular locus).
    fn divisor(&mut self, name: &str, poly: &bsv_core::expr::Expr, cert: &crate::scenario::CertSpec) -> Option<PrimeDivisor<F>> {
        let id = format!("cert/{name}");
        let built = self
            .ctx()
            .poly(poly)
            .and_then(|p| Ok((p, self.ctx().cert(cert)?)))
            .and_then(|(p, c)| PrimeDivisor::new(name, p, c).map_err(|e| e.to_string()));
        let pd = match built {
            Ok(pd) => pd,
            Err(e) => {
                self.push(1, rec(&id, Status::Fail, e));
                return None;
            }
        };
        let (r, modp) = if cert_is_heavy(cert) {
            heavy!(self, |c| c.poly(poly).and_then(|p| verify_cert(&p, &c.cert(cert)?).map_err(|e| e.to_string())))
        } else {
            (pd.verify_certificate().map_err(|e| e.to_string()), self.session_prime())
        };
        let r = match r {
            Ok(CertStatus::Verified) => rec(&id, ok_status(true, modp), format!("{} certificate verified", cert_kind(cert))),
            Ok(CertStatus::Asserted) => rec(&id, Status::Asserted, "irreducibility asserted"),
            Ok(CertStatus::Rejected(m)) => rec(&id, Status::Fail, format!("certificate rejected: {m}")),
            Err(e) => rec(&id, Status::Fail, e),
        };
        self.push(1, r);
        Some(pd)
    }

    // ------------------------------------------------------------ stage 3

    fn symbol_entries(&self) -> Res<(FactoredFunction<F>, FactoredFunction<F>)> {
        let s = self.doc.symbol.as_ref().ok_or("no symbol")?;
        let ctx = self.ctx();
        let a = match &s.factors_a {
            Some(l) => ctx.factor_list(l)?,
            None => ctx.factored(&s.a)?,
        };
        let b = match &s.factors_b {
            Some(l) => ctx.factor_list(l)?,
            None => ctx.factored(&s.b)?,
        };
        Ok((a, b))
    }

    fn stage_support(&mut self) {
        let doc = self.doc;
        for (i, c) in doc.components.iter().enumerate() {
            let id = format!("component/{}/nontrivial", c.name);
            let r = self.nontriviality(i);
            if let Ok((true, _)) = &r {
                self.nontrivial[i] = true;
            }
            let sp = self.session_prime();
            self.result(3, &id, r, sp);
        }
        let Some(sym) = &doc.symbol else { return };
        let r = self.support(sym);
        if let Err(e) = r {
            self.push(3, rec("support/summary", Status::Fail, e));
        }
    }

    fn nontriviality(&self, i: usize) -> Res<(bool, String)> {
        let c = &self.doc.components[i];
        let s = self.comps[i].as_ref().ok_or("component unavailable")?;
        let g = self.gammas[i].as_ref().ok_or("gamma unavailable")?;
        let ctx = self.ctx();
        match &c.evidence {
            None => Ok((false, "no nontriviality evidence".into())),
            Some(Evidence::Point(p)) => {
                let pt = ctx.point(p)?;
                let (a, b) = ord_at_point(g, &pt, s, ORDER_CAP).map_err(|e| e.to_string())?;
                let r = (a as i64 - b as i64).rem_euclid(3);
                Ok((r != 0, format!("point residue {r} at {} (orders {a}, {b})", crate::scenario::show_point(p))))
            }
            Some(Evidence::Via { rep, e, h, point }) => {
                let field = ctx.field();
                let rf = ctx.factored(rep)?;
                let link = rf.mul(&g.pow(-e, field));
                let hf = ctx.factored(h)?;
                if !cube_triviality_check(&link, &hf, &s.ideal()).map_err(|e| e.to_string())? {
                    return Ok((false, format!("{rep} is not gamma^{e} times a cube")));
                }
                let pt = ctx.point(point)?;
                let (a, b) = ord_at_point(&rf, &pt, s, ORDER_CAP).map_err(|e| e.to_string())?;
                let r = (a as i64 - b as i64).rem_euclid(3);
                Ok((
                    r != 0,
                    format!("{rep} = gamma^{e} * cube; its point residue at {} is {r} (orders {a}, {b})", crate::scenario::show_point(point)),
                ))
            }
            Some(Evidence::Curve(name)) => {
                let curve = self.doc.curve(name).ok_or_else(|| format!("unknown curve {name}"))?;
                let w = self.witness(curve, &c.name)?.ok_or_else(|| format!("curve {name} has no witness on {}", c.name))?;
                let r = curve_residue1(g, &w, s).map_err(|e| e.to_string())?;
                Ok((r != 0, format!("residue {r} along {name}")))
            }
        }
    }

    fn support(&mut self, sym: &crate::scenario::SymbolDecl) -> Res<()> {
        let doc = self.doc;
        let ctx = self.ctx();
        let field = ctx.field().clone();
        let (a, b) = self.symbol_entries()?;
        let alg = SymbolAlgebra::new(a.clone(), b.clone(), &field).map_err(|e| e.to_string())?;
        let ae = ctx.rational(&sym.a)?;
        let be = ctx.rational(&sym.b)?;
        let mut divisors = Vec::new();
        for (n, d) in doc.components.iter().map(|c| &c.name).zip(&self.comps).chain(doc.divisors.iter().map(|d| &d.name).zip(&self.divs)) {
            divisors.push(d.clone().ok_or_else(|| format!("divisor {n} unavailable"))?);
        }
        let cubes: Vec<(String, Res<FactoredFunction<F>>)> =
            doc.divisors.iter().filter_map(|d| d.cube.as_ref().map(|h| (d.name.clone(), ctx.factored(h)))).collect();
        for (n, h) in &cubes {
            if let Err(e) = h {
                return Err(format!("cube witness of {n}: {e}"));
            }
        }
        let evidence = |name: &str| match cubes.iter().find(|c| c.0 == name) {
            Some((_, Ok(h))) => ClassEvidence::Cube(h.clone()),
            _ => ClassEvidence::None,
        };
        let entries = match residue_support(&alg, &ae, &be, &divisors, &evidence) {
            Ok(e) => e,
            Err(e) => {
                self.push(3, rec("support/factorization", Status::Fail, e.to_string()));
                return Ok(());
            }
        };
        let degs = |f: &FactoredFunction<F>| {
            let pos: Vec<i64> = f.factors.iter().filter(|x| x.1 > 0).map(|(p, e)| e * p.total_degree().unwrap_or(0) as i64).collect();
            let neg: i64 = f.factors.iter().filter(|x| x.1 < 0).map(|(p, e)| -e * p.total_degree().unwrap_or(0) as i64).sum();
            let plus: Vec<String> = pos.iter().map(|d| d.to_string()).collect();
            (pos.iter().sum::<i64>() == neg, format!("{} = {} against {neg}", pos.iter().sum::<i64>(), plus.join("+")))
        };
        let (oka, da) = degs(&a);
        let (okb, db) = degs(&b);
        self.push(
            3,
            rec(
                "support/factorization",
                ok_status(oka && okb, self.session_prime()),
                format!("factor lists multiply out; every factor is a listed divisor; degrees a: {da}; b: {db}"),
            ),
        );
        let ncomp = doc.components.len();
        let mut nontriv = Vec::new();
        let mut triv = Vec::new();
        let mut all_ok = true;
        for (k, e) in entries.iter().enumerate() {
            let name = &e.divisor.name;
            let head = format!("valuations ({}, {}), residue {}", e.valuations.0, e.valuations.1, e.class.repr);
            let r = if k < ncomp {
                let c = &doc.components[k];
                let g = self.gammas[k].clone();
                let matched = g.ok_or_else(|| "gamma unavailable".to_string()).and_then(|g| {
                    let h = match &c.class {
                        Some(h) => self.ctx().factored(h)?,
                        None => FactoredFunction::one(&self.ctx().ring),
                    };
                    same_class(&e.class, &g, &h).map_err(|e| e.to_string())
                });
                match matched {
                    Ok(true) => {
                        if self.nontrivial[k] {
                            nontriv.push(name.clone());
                        }
                        (true, format!("{head}; equals gamma up to cubes"))
                    }
                    Ok(false) => (false, format!("{head}; differs from gamma")),
                    Err(err) => (false, format!("{head}; {err}")),
                }
            } else {
                match e.triviality {
                    Triviality::TrivialByWitness => {
                        triv.push(name.clone());
                        (true, format!("{head}; trivial by cube witness"))
                    }
                    _ => (false, format!("{head}; no cube witness")),
                }
            };
            all_ok &= r.0;
            self.push(3, rec(&format!("support/{name}"), ok_status(r.0, self.session_prime()), r.1));
        }
        all_ok &= nontriv.len() == ncomp;
        self.push(
            3,
            rec(
                "support/summary",
                ok_status(all_ok, self.session_prime()),
                format!("nontrivial: [{}]; trivial: [{}]", nontriv.join(", "), triv.join(", ")),
            ),
        );
        Ok(())
    }

    // ------------------------------------------------------------ stage 4

    fn comp_index(&self, name: &str) -> Res<usize> {
        self.doc.components.iter().position(|c| c.name == name).ok_or_else(|| format!("unknown component {name}"))
    }

    fn curve_ideal(&self, c: &CurveDecl) -> Res<Ideal<F>> {
        let gens = c.gens.iter().map(|g| self.ctx().poly(g)).collect::<Res<Vec<_>>>()?;
        Ideal::new(&self.ctx().ring, gens).map_err(|e| e.to_string())
    }

    /// The valuation witness of gamma along the curve on one side.
    fn witness(&self, c: &CurveDecl, side: &str) -> Res<Option<CurveWitness<F>>> {
        let Some((_, v)) = c.vals.iter().find(|v| v.0 == side) else { return Ok(None) };
        let ctx = self.ctx();
        let curve = self.curve_ideal(c)?;
        let t = match &v.t {
            Some(t) => ctx.poly(t)?,
            None if v.m == 0 => curve.gens()[0].clone(),
            None => return Err(format!("{}: t is required when m != 0", c.name)),
        };
        Ok(Some(CurveWitness {
            curve,
            t,
            u: ctx.factored(&v.u)?,
            m: v.m,
            s: v.s.as_ref().map(|s| ctx.poly(s)).transpose()?,
        }))
    }

    fn stage_curves(&mut self) {
        let doc = self.doc;
        for c in &doc.curves {
            let r = self.curve(c);
            match r {
                Ok(k) => self.constraints.push(Some(k)),
                Err(e) => {
                    self.push(4, rec(&format!("curve/{}", c.name), Status::Fail, e));
                    self.constraints.push(None);
                }
            }
            if let Some(side) = &c.cartier {
                let ok = self.cartier_check(c, side);
                let sp = self.session_prime();
                let okb = matches!(ok, Ok((true, _)));
                self.result(4, &format!("curve/{}/cartier", c.name), ok, sp);
                self.cartier.push((c.name.clone(), okb));
            }
        }
    }

    fn cartier_check(&self, c: &CurveDecl, side: &str) -> Res<(bool, String)> {
        let i = self.comp_index(side)?;
        let s = self.comps[i].as_ref().ok_or("component unavailable")?;
        let w = self.witness(c, side)?.ok_or_else(|| format!("no witness on {side}"))?;
        match check_uniformizer(&w, s) {
            Ok(()) => Ok((true, format!("t = {} generates the curve ideal on {side} locally", w.t))),
            Err(e) => Ok((false, e.to_string())),
        }
    }

    fn curve(&mut self, c: &CurveDecl) -> Res<CurveConstraint> {
        let (i, j) = (self.comp_index(&c.pair.0)?, self.comp_index(&c.pair.1)?);
        let curve = self.curve_ideal(c)?;
        let mut on = Vec::new();
        for &k in &[i, j] {
            let s = self.comps[k].as_ref().ok_or("component unavailable")?;
            on.push(curve_on_surface(&curve, s).map_err(|e| e.to_string())?);
        }
        let sp = self.session_prime();
        self.result(
            4,
            &format!("curve/{}/on-surfaces", c.name),
            Ok((on.iter().all(|x| *x), format!("on {}: {}, on {}: {}", c.pair.0, on[0], c.pair.1, on[1]))),
            sp,
        );
        let mut residues = [0u8; 2];
        let mut restr = [RestrictionStatus::Unknown, RestrictionStatus::Unknown];
        for (n, (&k, side)) in [i, j].iter().zip([&c.pair.0, &c.pair.1]).enumerate() {
            let s = self.comps[k].as_ref().ok_or("component unavailable")?;
            let g = self.gammas[k].as_ref().ok_or("gamma unavailable")?;
            let w = self.witness(c, side)?.ok_or_else(|| format!("no valuation witness on {side}"))?;
            residues[n] = curve_residue1(g, &w, s).map_err(|e| format!("{side}: {e}"))?;
            if let Some((_, h)) = c.cubes.iter().find(|x| &x.0 == side) {
                let h = self.ctx().factored(h)?;
                if cube_triviality_check(g, &h, &curve).map_err(|e| e.to_string())? {
                    restr[n] = RestrictionStatus::TrivialByWitness;
                } else {
                    return Err(format!("cube witness on {side} rejected"));
                }
            }
        }
        let show = |r: &RestrictionStatus| match r {
            RestrictionStatus::TrivialByWitness => "trivial",
            RestrictionStatus::NontrivialByEvidence => "nontrivial",
            RestrictionStatus::Unknown => "unknown",
        };
        self.push(
            4,
            rec(
                &format!("curve/{}", c.name),
                ok_status(true, sp),
                format!(
                    "residues ({}, {}) on ({}, {}); restrictions ({}, {})",
                    residues[0], residues[1], c.pair.0, c.pair.1, show(&restr[0]), show(&restr[1])
                ),
            ),
        );
        let [r0, r1] = restr;
        Ok(CurveConstraint { name: c.name.clone(), pair: (i, j), residues: (residues[0], residues[1]), restrictions: (r0, r1) })
    }

    // ------------------------------------------------------------ stages 5, 6

    fn stage_checklist(&mut self) {
        let doc = self.doc;
        if doc.components.is_empty() {
            return;
        }
        let nontriv = self.nontrivial.clone();
        let cartier = self.cartier.clone();
        let (r, modp) = heavy!(self, |c| checklist_in(c, doc, &nontriv, &cartier));
        match r {
            Ok(items) => {
                for it in items {
                    let computed = it.id.starts_with("incidence") || it.id == "good-locus-reduced";
                    let status = match it.status {
                        CheckStatus::Pass => ok_status(true, if computed { modp } else { self.session_prime() }),
                        CheckStatus::Fail => Status::Fail,
                        CheckStatus::Witnessed => Status::Witnessed,
                        CheckStatus::Asserted => Status::Asserted,
                    };
                    self.checklist.push(ChecklistEntry { id: it.id, status, details: it.details });
                }
            }
            Err(e) => self.checklist.push(ChecklistEntry { id: "checklist".into(), status: Status::Fail, details: e }),
        }
    }

    fn stage_obstruction(&mut self) {
        let n = self.doc.components.len();
        if n == 0 {
            return;
        }
        let missing: Vec<&str> = self
            .doc
            .curves
            .iter()
            .zip(&self.constraints)
            .filter(|(_, k)| k.is_none())
            .map(|(c, _)| c.name.as_str())
            .collect();
        if n >= 2 && self.doc.curves.is_empty() {
            self.push(6, rec("obstruction", Status::Fail, "components meet but no intersection curves are declared"));
            return;
        }
        if !missing.is_empty() {
            let d = format!("curve data incomplete: {}", missing.join(", "));
            self.push(6, rec("obstruction", Status::Fail, d));
            return;
        }
        let cons: Vec<CurveConstraint> = self.constraints.iter().flatten().cloned().collect();
        match summarize(n, &cons) {
            Ok(s) => {
                let o = ObstructionData {
                    gamma_order: s.gamma_order,
                    h_order: s.h_order,
                    hprime_order: s.hprime_order,
                    quotient_order: s.quotient_order,
                    nontrivial: s.nontrivial,
                };
                let d = format!(
                    "Gamma order {}, H order {} (basis {}), H' order {} (basis {}), quotient order {}, nontrivial {}",
                    o.gamma_order, o.h_order, s.h, o.hprime_order, s.hprime, o.quotient_order, o.nontrivial
                );
                self.push(6, rec("obstruction", Status::Pass, d));
                self.obstruction = Some(o);
            }
            Err(e) => self.push(6, rec("obstruction", Status::Fail, format!("{e}; supply a cube witness or evidence for that curve"))),
        }
    }

    // ------------------------------------------------------------ user checks

    fn user_check(&mut self, c: &CheckDecl) {
        let stage = stage_of(&c.kind);
        let id = c.id.as_str();
        let (r, modp): (Res<(bool, String)>, Option<u64>) = match c.kind.as_str() {
            "certificate" => self.check_certificate(c),
            "sing_points" => self.check_sing_points(c),
            "radical_equal" => {
                let (i, w, dim) = (arg(c, "ideal"), arg(c, "with"), c.arg("dim").map(str::to_string));
                match (i, w) {
                    (Ok(i), Ok(w)) => heavy!(self, |x| radical_equal_in(x, i, w, dim.as_deref())),
                    (Err(e), _) | (_, Err(e)) => (Err(e), None),
                }
            }
            "empty" => match arg(c, "ideal") {
                Ok(i) => heavy!(self, |x| x.ideal(i).and_then(|id| {
                    let d = id.dimension_projective().map_err(|e| e.to_string())?;
                    Ok((d == Dim::Empty, format!("projective dimension {d}")))
                })),
                Err(e) => (Err(e), None),
            },
            "member" => (self.check_member(c), self.session_prime()),
            "nonzero" => (self.check_nonzero(c), self.session_prime()),
            "euler" => (self.check_euler(c), self.session_prime()),
            "point_residue" => (self.check_point_residue(c), self.session_prime()),
            "divisor_of" => (self.check_divisor_of(c), self.session_prime()),
            "obstruction" => (self.check_obstruction(c), None),
            "case2_equations" => (self.check_case2_equations(c), self.session_prime()),
            "case2_charts" => (self.check_case2_charts(c), self.session_prime()),
            "flat_limit" => (self.check_flat_limit(c), self.session_prime()),
            "u3" => (self.check_u3(c), self.session_prime()),
            "fiber" => (self.check_fiber(c), self.session_prime()),
            other => (Err(format!("unknown check kind `{other}`")), None),
        };
        self.result(stage, id, r, modp);
    }

    fn check_certificate(&self, c: &CheckDecl) -> (Res<(bool, String)>, Option<u64>) {
        let (p, cs) = match (arg(c, "poly"), arg(c, "cert")) {
            (Ok(p), Ok(cs)) => (p, cs),
            (Err(e), _) | (_, Err(e)) => return (Err(e), None),
        };
        let cert = match parse_cert_str(cs) {
            Ok(x) => x,
            Err(e) => return (Err(e.to_string()), None),
        };
        let run = |r: Res<CertStatus>| {
            r.map(|s| match s {
                CertStatus::Verified => (true, format!("{} certificate verified", cert_kind(&cert))),
                CertStatus::Asserted => (true, "asserted".to_string()),
                CertStatus::Rejected(m) => (false, format!("{} certificate rejected: {m}", cert_kind(&cert))),
            })
        };
        if cert_is_heavy(&cert) {
            let (r, m) = heavy!(self, |x| x.poly_str(p).and_then(|f| verify_cert(&f, &x.cert(&cert)?).map_err(|e| e.to_string())));
            (run(r), m)
        } else {
            let ctx = self.ctx();
            let r = ctx.poly_str(p).and_then(|f| verify_cert(&f, &ctx.cert(&cert)?).map_err(|e| e.to_string()));
            (run(r), self.session_prime())
        }
    }

    fn check_sing_points(&self, c: &CheckDecl) -> (Res<(bool, String)>, Option<u64>) {
        let body = || -> Res<(bool, String)> {
            let ctx = self.ctx();
            let f = ctx.poly_str(arg(c, "poly")?)?;
            let pts = list(arg(c, "points")?).ok_or("points must be a list")?;
            let grad = f.gradient();
            let mut good = 0;
            let mut bad = Vec::new();
            for p in &pts {
                let pt = ctx.point_str(p)?;
                let mut ok = ctx.field().is_zero(&f.evaluate(&pt).map_err(|e| e.to_string())?);
                for g in &grad {
                    ok &= ctx.field().is_zero(&g.evaluate(&pt).map_err(|e| e.to_string())?);
                }
                if ok {
                    good += 1;
                } else {
                    bad.push(p.to_string());
                }
            }
            let mut d = format!("{good}/{} points singular", pts.len());
            if !bad.is_empty() {
                d.push_str(&format!(" (not: {})", bad.join(" ")));
            }
            Ok((bad.is_empty(), d))
        };
        let (pts, _) = (body(), ());
        let Some(dim) = c.arg("dim") else { return (pts, self.session_prime()) };
        let (d, modp) = heavy!(self, |x| x.poly_str(c.arg("poly").unwrap_or("0")).and_then(|f| {
            let d = singular_locus_ideal(&f).and_then(|i| i.dimension_projective()).map_err(|e| e.to_string())?;
            Ok((d.to_string() == dim.trim(), format!("projective dimension {d}")))
        }));
        let r = match (pts, d) {
            (Ok((a, da)), Ok((b, db))) => Ok((a && b, format!("{da}; {db}"))),
            (Err(e), _) | (_, Err(e)) => Err(e),
        };
        (r, modp)
    }

    /// Polynomials and ideal generators with the chart variable set to 1.
    fn chart_sub(&self, c: &CheckDecl, f: Polynomial<F>) -> Res<Polynomial<F>> {
        match c.arg("chart") {
            None => Ok(f),
            Some(v) => {
                let ctx = self.ctx();
                let i = ctx.var(v)?;
                f.substitute(i, &Polynomial::one(&ctx.ring)).map_err(|e| e.to_string())
            }
        }
    }

    fn check_member(&self, c: &CheckDecl) -> Res<(bool, String)> {
        let ctx = self.ctx();
        let f = self.chart_sub(c, ctx.poly_str(arg(c, "f")?)?)?;
        let i = ctx.ideal(arg(c, "ideal")?)?;
        let gens = i.gens().iter().map(|g| self.chart_sub(c, g.clone())).collect::<Res<Vec<_>>>()?;
        let j = Ideal::new(&ctx.ring, gens).map_err(|e| e.to_string())?;
        let nf = j.normal_form(&f).map_err(|e| e.to_string())?;
        let chart = c.arg("chart").map(|v| format!(" in the chart {v} = 1")).unwrap_or_default();
        Ok((nf.is_zero(), if nf.is_zero() { format!("member{chart}") } else { format!("normal form {nf}{chart}") }))
    }

    fn check_nonzero(&self, c: &CheckDecl) -> Res<(bool, String)> {
        let ctx = self.ctx();
        let f = ctx.poly_str(arg(c, "f")?)?;
        let mut pt = ctx.point_str(arg(c, "at")?)?;
        if let Some(v) = c.arg("chart") {
            let i = ctx.var(v)?;
            if pt.len() + 1 == ctx.ring.nvars() {
                pt.insert(i, ctx.field().one());
            }
        }
        let v = f.evaluate(&pt).map_err(|e| e.to_string())?;
        Ok((!ctx.field().is_zero(&v), format!("value {}", ctx.field().show(&v))))
    }

    fn check_euler(&self, c: &CheckDecl) -> Res<(bool, String)> {
        let f = self.ctx().poly_str(arg(c, "poly")?)?;
        let (ok, d) = f.euler_identity_check().map_err(|e| e.to_string())?;
        Ok((ok, format!("sum x_i df/dx_i = {d} f: {ok}")))
    }

    fn component(&self, name: &str) -> Res<&PrimeDivisor<F>> {
        let i = self.comp_index(name.trim())?;
        self.comps[i].as_ref().ok_or_else(|| format!("component {name} unavailable"))
    }

    fn check_point_residue(&self, c: &CheckDecl) -> Res<(bool, String)> {
        let ctx = self.ctx();
        let g = ctx.factored_str(arg(c, "fn")?)?;
        let s = self.component(arg(c, "on")?)?;
        let pt = ctx.point_str(arg(c, "at")?)?;
        let (a, b) = ord_at_point(&g, &pt, s, ORDER_CAP).map_err(|e| e.to_string())?;
        let r = (a as i64 - b as i64).rem_euclid(3);
        let d = format!("orders ({a}, {b}), residue {r}");
        match c.arg("expect") {
            Some(e) => Ok((e.trim() == r.to_string(), d)),
            None => Ok((true, d)),
        }
    }

    fn check_divisor_of(&self, c: &CheckDecl) -> Res<(bool, String)> {
        let ctx = self.ctx();
        let fe = arg(c, "fn")?;
        let g = ctx.factored_str(fe)?;
        let on = arg(c, "on")?.trim();
        let s = self.component(on)?;
        let parts = list(arg(c, "parts")?).ok_or("parts must be a list")?;
        let mut bookkeeping = Vec::new();
        let mut terms = Vec::new();
        for p in parts {
            let t = tuple(p).filter(|t| t.len() == 3).ok_or_else(|| format!("part `{p}` must be (curve, m, u)"))?;
            let curve = self.doc.curve(t[0]).ok_or_else(|| format!("unknown curve {}", t[0]))?;
            let m: i64 = t[1].parse().map_err(|_| format!("bad multiplicity {}", t[1]))?;
            let base = self.witness(curve, on)?.ok_or_else(|| format!("{} has no witness on {on}", t[0]))?;
            let w = CurveWitness { u: ctx.factored_str(t[2])?, m, ..base };
            curve_valuation_witnessed(&g, &w, s).map_err(|e| format!("{}: {e}", t[0]))?;
            let d = w.curve.degree().map_err(|e| e.to_string())?;
            bookkeeping.push((m, d));
            terms.push(format!("{m}*{d}"));
        }
        let deg_s = s.degree() as u64;
        let deg_g = ctx.poly_str(fe).ok().and_then(|p| p.total_degree()).ok_or("fn must be a polynomial for the degree identity")? as u64;
        let complete = divisor_degree_complete(deg_s, deg_g, &bookkeeping);
        let sum: i64 = bookkeeping.iter().map(|(m, d)| m * *d as i64).sum();
        Ok((complete, format!("{} = {sum}, deg S * deg f = {deg_s}*{deg_g} = {}", terms.join(" + "), deg_s * deg_g)))
    }

    fn check_obstruction(&self, c: &CheckDecl) -> Res<(bool, String)> {
        let o = self.obstruction.as_ref().ok_or("no obstruction summary")?;
        let mut ok = true;
        let mut d = Vec::new();
        for (key, got) in [
            ("gamma", o.gamma_order.to_string()),
            ("h", o.h_order.to_string()),
            ("hprime", o.hprime_order.to_string()),
            ("quotient", o.quotient_order.to_string()),
            ("nontrivial", o.nontrivial.to_string()),
        ] {
            if let Some(want) = c.arg(key) {
                let hit = want.trim() == got;
                ok &= hit;
                d.push(format!("{key} {got}{}", if hit { "" } else { " (expected different)" }));
            }
        }
        Ok((ok, d.join(", ")))
    }

    fn variant(c: &CheckDecl, default: Case2Variant) -> Res<Case2Variant> {
        match c.arg("variant").map(str::trim) {
            None => Ok(default),
            Some("literal") => Ok(Case2Variant::Literal),
            Some("corrected") => Ok(Case2Variant::Corrected),
            Some(v) => Err(format!("unknown variant `{v}`")),
        }
    }

    fn t_poly(&self) -> Polynomial<F> {
        let r = Ring::new(self.ctx().field().clone(), &["t"]);
        Polynomial::var(&r, 0)
    }

    fn check_case2_equations(&mut self, c: &CheckDecl) -> Res<(bool, String)> {
        let t = self.t_poly();
        let variant = Self::variant(c, Case2Variant::Literal)?;
        let (ring, eqs) = case2_equations(&t, variant).map_err(|e| e.to_string())?;
        let shown: Vec<String> = eqs.iter().map(|e| e.to_string()).collect();
        self.local_models.push(json!({ "id": c.id, "kind": "case2_equations", "equations": shown }));
        let Some(exp) = c.arg("expect") else { return Ok((true, format!("{} relations", eqs.len()))) };
        let exp = list(exp).ok_or("expect must be a list")?;
        let mut hits = 0;
        for (e, s) in eqs.iter().zip(&exp) {
            let p = bsv_core::expr::poly(&ring, s).map_err(|e| e.to_string())?;
            if &p == e {
                hits += 1;
            }
        }
        Ok((hits == eqs.len() && exp.len() == eqs.len(), format!("{hits}/{} relations match", exp.len())))
    }

    fn check_case2_charts(&mut self, c: &CheckDecl) -> Res<(bool, String)> {
        let t = self.t_poly();
        let variant = Self::variant(c, Case2Variant::Literal)?;
        let invert = c.arg("invert").map(|v| v.trim() == "true").unwrap_or(false);
        let sweep = chart_sweep(&t, variant, invert).map_err(|e| e.to_string())?;
        let over: Vec<String> =
            sweep.counts.iter().filter(|x| x.1 != 4).map(|((i, j, k), n)| format!("({i},{j},{k}):{n}")).collect();
        let counts: Vec<Value> = sweep.counts.iter().map(|((i, j, k), n)| json!({ "chart": [i, j, k], "generators": n })).collect();
        self.local_models.push(json!({
            "id": c.id, "kind": "case2_charts", "variant": format!("{variant:?}").to_lowercase(),
            "g_inverted": invert, "charts": counts, "all_equal_to_full": sweep.all_equal,
        }));
        let d = if over.is_empty() {
            format!("all 27 charts reduce to 4 generators; equal to full substitution: {}", sweep.all_equal)
        } else {
            format!(
                "{} charts need other than 4 generators (max {}): {}; equal to full substitution: {}",
                over.len(),
                sweep.max_generators(),
                over.join(" "),
                sweep.all_equal
            )
        };
        Ok((sweep.all_four() && sweep.all_equal, d))
    }

    fn check_flat_limit(&mut self, c: &CheckDecl) -> Res<(bool, String)> {
        let t = self.t_poly();
        let variant = Self::variant(c, Case2Variant::Corrected)?;
        let ch = tuple(arg(c, "chart")?).filter(|v| v.len() == 3).ok_or("chart must be (i,j,k)")?;
        let ch: Vec<usize> = ch.iter().map(|s| s.parse().map_err(|_| format!("bad chart index {s}"))).collect::<Res<_>>()?;
        let (ring, eqs) = case2_equations(&t, variant).map_err(|e| e.to_string())?;
        let chart = case2_affine_chart(&ring, &eqs, &t, (ch[0], ch[1], ch[2]), variant, false).map_err(|e| e.to_string())?;
        let lim = flat_limit(&chart, 0).map_err(|e| e.to_string())?;
        let lr = lim.full.ring().clone();
        let ideal_of = |items: Vec<&str>| -> Res<Ideal<F>> {
            let g = items.iter().map(|s| bsv_core::expr::poly(&lr, s).map_err(|e| e.to_string())).collect::<Res<Vec<_>>>()?;
            Ideal::new(&lr, g).map_err(|e| e.to_string())
        };
        let gens: Vec<String> = lim.ideal.gens().iter().map(|g| g.to_string()).collect();
        let mut ok = true;
        let mut d = vec![format!("limit generators [{}]", gens.join(", "))];
        if let Some(e) = c.arg("expect") {
            let want = ideal_of(list(e).ok_or("expect must be a list")?)?;
            let eq = lim.full.equal(&want).map_err(|e| e.to_string())?;
            ok &= eq;
            d.push(format!("equals expected: {eq}"));
        }
        if let Some(cs) = c.arg("components") {
            let comps = list(cs).ok_or("components must be a list of lists")?;
            let comps = comps.into_iter().map(|x| ideal_of(list(x).ok_or("component must be a list")?)).collect::<Res<Vec<_>>>()?;
            let tc = triple_component_check(&lim, &comps).map_err(|e| e.to_string())?;
            ok &= tc;
            d.push(format!("three-component decomposition: {tc}"));
        }
        if c.arg("reduced").is_some() {
            let rep = chart_reducedness_check(&lim.full).map_err(|e| e.to_string())?;
            ok &= rep.reduced;
            d.push(format!("reduced: {}", rep.reduced));
        }
        self.local_models.push(json!({ "id": c.id, "kind": "flat_limit", "chart": ch, "generators": gens }));
        Ok((ok, d.join("; ")))
    }

    fn check_u3(&mut self, c: &CheckDecl) -> Res<(bool, String)> {
        let base = Ring::new(self.ctx().field().clone(), &[]);
        let val = |k: &str| -> Res<Polynomial<F>> {
            let e = Ctx::<F>::expr(c.arg(k).unwrap_or("0"))?;
            e.to_poly(&base, &|_| None).map_err(|e| e.to_string())
        };
        let chart = case3_chart_u3(&val("f")?, &val("g")?).map_err(|e| e.to_string())?;
        let rep = chart_reducedness_check(&chart.ideal).map_err(|e| e.to_string())?;
        let sc = rep.singular_codim.map(|x| x.to_string()).unwrap_or_else(|| "none (smooth)".into());
        self.local_models.push(json!({
            "id": c.id, "kind": "u3", "complete_intersection": rep.complete_intersection, "codim": rep.codim,
            "singular_codim": rep.singular_codim, "squarefree_initial": rep.squarefree_initial, "reduced": rep.reduced,
        }));
        let ok = rep.complete_intersection && rep.singular_codim.is_none_or(|s| s >= 3) && rep.reduced;
        Ok((ok, format!("complete intersection {}, codim {}, singular codim {sc}, reduced {}", rep.complete_intersection, rep.codim, rep.reduced)))
    }

    fn check_fiber(&mut self, c: &CheckDecl) -> Res<(bool, String)> {
        let (a, b) = self.symbol_entries()?;
        let ctx = self.ctx();
        let pt = ctx.point_str(arg(c, "at")?)?;
        let disc: Vec<PrimeDivisor<F>> = self.comps.iter().flatten().cloned().collect();
        let mut all = disc.clone();
        all.extend(self.divs.iter().flatten().cloned());
        let t = classify_fiber(&a, &b, &pt, &disc, &all).map_err(|e| e.to_string())?;
        let d = format!("fiber type {}", t.as_str());
        self.local_models.push(json!({ "id": c.id, "kind": "fiber", "at": arg(c, "at")?, "type": t.as_str() }));
        match c.arg("expect") {
            Some(e) => Ok((e.trim() == t.as_str(), d)),
            None => Ok((true, d)),
        }
    }
}

fn arg<'c>(c: &'c CheckDecl, k: &str) -> Res<&'c str> {
    c.arg(k).ok_or_else(|| format!("check {} needs `{k}=`", c.id))
}

fn cert_kind(c: &crate::scenario::CertSpec) -> &'static str {
    use crate::scenario::CertSpec::*;
    match c {
        Linear => "linear",
        Singular => "singular-locus",
        Asserted(_) => "asserted",
        Eisenstein { .. } => "eisenstein",
        Restriction { .. } => "restriction",
    }
}

fn radical_equal_in<G: Field>(x: &Ctx<G>, i: &str, w: &str, dim: Option<&str>) -> Res<(bool, String)> {
    let a = x.ideal(i)?;
    let b = x.ideal(w)?;
    let eq = a.radical_equal(&b).map_err(|e| e.to_string())?;
    let mut d = format!("radicals equal: {eq}");
    let mut ok = eq;
    if let Some(dim) = dim {
        let got = a.dimension_projective().map_err(|e| e.to_string())?;
        ok &= got.to_string() == dim.trim();
        d.push_str(&format!("; projective dimension {got}"));
    }
    Ok((ok, d))
}

fn checklist_in<G: Field>(
    x: &Ctx<G>,
    doc: &ScenarioDoc,
    nontrivial: &[bool],
    cartier: &[(String, bool)],
) -> Res<Vec<bsv_core::obstruction::ChecklistItem>> {
    let polys = doc.components.iter().map(|c| x.poly(&c.poly)).collect::<Res<Vec<_>>>()?;
    let mut facts = Vec::new();
    for ((c, p), nt) in doc.components.iter().zip(&polys).zip(nontrivial) {
        let d = singular_locus_ideal(p).and_then(|i| i.dimension_projective()).map_err(|e| e.to_string())?;
        facts.push(SurfaceFacts { name: c.name.clone(), singular_dim: d.as_i64(), gamma_nontrivial: *nt });
    }
    hypothesis_checklist(&polys, &facts, cartier).map_err(|e| e.to_string())
}
