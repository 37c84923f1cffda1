//! The scenario language: a flat, line-oriented description of a
//! Brauer-Severi bundle candidate together with every witness needed to
//! verify it.
//!
//! ```text
//! scenario s1s2
//! field qw
//! vars x0 x1 x2 x3
//! poly FS1 = x0^9 + P1
//! component S1: poly=FS1 cert=singular gamma=(x2^3 - x3^3)/x0^3 evidence=point(0,w,1,1)
//! divisor X0: poly=x0 cert=linear cube=1
//! symbol a=FS2*(x2^3 - x3^3)/x0^21 b=FS1/x0^9
//! factors a: FS2 (x2 - x3) (x2 - w*x3) (x2 - w^2*x3) x0^-21
//! curve D1: gens=[x1, ...] pair=(S1,S2) val_S1=(t=x1, u=..., m=0) cube_S1=...
//! check sing-S1 sing_points poly=FS1 dim=0 points=[(0,1,0,0), ...]
//! ```
//!
//! Values after `key=` run until the next ` key=` at bracket depth 0, so
//! expressions may contain spaces.

use std::fmt;

use bsv_core::coeff::FieldMode;
use bsv_core::expr::{parse_expr, Expr, ExprError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScenarioError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("line {line}: unresolved name `{name}`")]
    UnresolvedName { line: usize, name: String },
    #[error("line {line}: `{name}` is defined twice")]
    DuplicateName { line: usize, name: String },
    #[error("pencil parameters are both zero")]
    BothZero,
    #[error("unknown lemma `{0}`")]
    UnknownLemma(String),
}

/// How irreducibility of a component or divisor is certified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertSpec {
    Linear,
    /// Singular locus small enough in the variables the polynomial uses.
    Singular,
    Asserted(String),
    Eisenstein { var: String, prime: PrimeAst },
    /// Irreducible because its restriction to `var = 0` is.
    Restriction { var: String, inner: Box<CertSpec> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrimeAst {
    Explicit { poly: Expr, cert: Box<CertSpec> },
    /// The factor of `host` through a regular point.
    Regular { host: Expr, point: Vec<Expr> },
}

/// Why the residue class of a component is nontrivial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evidence {
    /// Nonzero point residue of gamma at a point of the component.
    Point(Vec<Expr>),
    /// `rep = gamma^e * h^3` on the component and rep has a nonzero point
    /// residue at the point.
    Via { rep: Expr, e: i64, h: Expr, point: Vec<Expr> },
    /// Nonzero residue along the named curve (uses its valuation witness).
    Curve(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub name: String,
    pub poly: Expr,
    pub cert: CertSpec,
    pub gamma: Expr,
    /// h with (residue of the symbol) = gamma * h^3 on the component.
    pub class: Option<Expr>,
    pub evidence: Option<Evidence>,
}

/// A prime divisor in the support of the symbol entries that is not a
/// component of the discriminant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorDecl {
    pub name: String,
    pub poly: Expr,
    pub cert: CertSpec,
    /// Cube root of the residue class (shows it is trivial).
    pub cube: Option<Expr>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolDecl {
    pub a: Expr,
    pub b: Expr,
    pub factors_a: Option<Vec<(Expr, i64)>>,
    pub factors_b: Option<Vec<(Expr, i64)>>,
}

/// Local equation g = u t^m of gamma along a curve on one surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValWitness {
    pub t: Option<Expr>,
    pub u: Expr,
    pub m: i64,
    pub s: Option<Expr>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveDecl {
    pub name: String,
    pub gens: Vec<Expr>,
    pub pair: (String, String),
    pub vals: Vec<(String, ValWitness)>,
    pub cubes: Vec<(String, Expr)>,
    /// Surface on which t generates the curve ideal locally.
    pub cartier: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckDecl {
    pub id: String,
    pub kind: String,
    pub args: Vec<(String, String)>,
    pub line: usize,
}

impl CheckDecl {
    pub fn arg(&self, key: &str) -> Option<&str> {
        self.args.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioDoc {
    pub name: String,
    pub field: FieldMode,
    pub vars: Vec<String>,
    pub polys: Vec<(String, Expr)>,
    pub components: Vec<Component>,
    pub divisors: Vec<DivisorDecl>,
    pub symbol: Option<SymbolDecl>,
    pub curves: Vec<CurveDecl>,
    pub checks: Vec<CheckDecl>,
    pub notes: Vec<String>,
}

impl ScenarioDoc {
    pub fn component(&self, name: &str) -> Option<&Component> {
        self.components.iter().find(|c| c.name == name)
    }

    pub fn curve(&self, name: &str) -> Option<&CurveDecl> {
        self.curves.iter().find(|c| c.name == name)
    }
}

// ---------------------------------------------------------------- lexing helpers

fn is_ident(s: &str) -> bool {
    let mut ch = s.chars();
    matches!(ch.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && ch.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Split at `sep` outside brackets.
pub(crate) fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// Split on whitespace outside brackets.
fn split_ws_top(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = None;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if c.is_whitespace() && depth == 0 {
            if let Some(st) = start.take() {
                out.push(&s[st..i]);
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(st) = start {
        out.push(&s[st..]);
    }
    out
}

/// `name(inner)` with the closing paren matching the opening one.
pub(crate) fn call<'a>(s: &'a str, name: &str) -> Option<&'a str> {
    let rest = s.trim().strip_prefix(name)?.strip_prefix('(')?;
    let inner = rest.strip_suffix(')')?;
    (balanced(inner)).then_some(inner)
}

fn balanced(s: &str) -> bool {
    let mut d = 0i32;
    for c in s.chars() {
        match c {
            '(' | '[' => d += 1,
            ')' | ']' => d -= 1,
            _ => {}
        }
        if d < 0 {
            return false;
        }
    }
    d == 0
}

/// Contents of `[..]` split at top-level commas; `[]` is empty.
pub(crate) fn list(s: &str) -> Option<Vec<&str>> {
    let inner = s.trim().strip_prefix('[')?.strip_suffix(']')?;
    if !balanced(inner) {
        return None;
    }
    if inner.trim().is_empty() {
        return Some(Vec::new());
    }
    Some(split_top(inner, ',').into_iter().map(str::trim).collect())
}

/// Contents of `(..)` split at top-level commas.
pub(crate) fn tuple(s: &str) -> Option<Vec<&str>> {
    let inner = s.trim().strip_prefix('(')?.strip_suffix(')')?;
    if !balanced(inner) {
        return None;
    }
    Some(split_top(inner, ',').into_iter().map(str::trim).collect())
}

/// `key=value` pairs; a key starts at depth 0 after whitespace (or at the
/// start) and is an identifier possibly containing dots. Returns (key,
/// value, byte offset of value).
pub(crate) fn split_kv(s: &str) -> Result<Vec<(String, String, usize)>, (usize, String)> {
    let bytes = s.as_bytes();
    let mut starts = Vec::new();
    let mut depth = 0i32;
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b'(' | b'[' => depth += 1,
            b')' | b']' => depth -= 1,
            _ => {}
        }
        if depth == 0 && (i == 0 || bytes[i - 1].is_ascii_whitespace()) && (c.is_ascii_alphabetic() || c == b'_') {
            let mut j = i;
            while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_' || bytes[j] == b'.') {
                j += 1;
            }
            if j < bytes.len() && bytes[j] == b'=' {
                starts.push((i, j));
                i = j + 1;
                continue;
            }
        }
        i += 1;
    }
    if starts.is_empty() {
        return if s.trim().is_empty() { Ok(Vec::new()) } else { Err((0, "expected key=value".into())) };
    }
    if !s[..starts[0].0].trim().is_empty() {
        return Err((0, "expected key=value".into()));
    }
    let mut out = Vec::new();
    for (n, &(ks, ke)) in starts.iter().enumerate() {
        let end = starts.get(n + 1).map(|x| x.0).unwrap_or(s.len());
        let v = s[ke + 1..end].trim();
        if v.is_empty() {
            return Err((ke + 1, format!("empty value for `{}`", &s[ks..ke])));
        }
        out.push((s[ks..ke].to_string(), v.to_string(), ke + 1));
    }
    Ok(out)
}

// ---------------------------------------------------------------- parser

struct LineCx {
    line: usize,
    /// byte offset of the current fragment within the line
    base: usize,
}

impl LineCx {
    fn err(&self, off: usize, msg: impl Into<String>) -> ScenarioError {
        ScenarioError::Syntax { line: self.line, col: self.base + off + 1, msg: msg.into() }
    }

    fn expr(&self, s: &str, off: usize) -> Result<Expr, ScenarioError> {
        parse_expr(s).map_err(|e| match e {
            ExprError::Syntax { col, msg } => self.err(off + col - 1, msg),
            other => self.err(off, other.to_string()),
        })
    }

    fn at(&self, base: usize) -> LineCx {
        LineCx { line: self.line, base }
    }
}

fn parse_cert(cx: &LineCx, s: &str) -> Result<CertSpec, ScenarioError> {
    let s = s.trim();
    match s {
        "linear" => return Ok(CertSpec::Linear),
        "singular" => return Ok(CertSpec::Singular),
        _ => {}
    }
    if let Some(inner) = call(s, "asserted") {
        return Ok(CertSpec::Asserted(inner.trim().to_string()));
    }
    if let Some(inner) = call(s, "eisenstein") {
        let parts = split_top(inner, ',');
        if parts.len() != 2 {
            return Err(cx.err(0, "eisenstein(var, prime) takes two arguments"));
        }
        let var = parts[0].trim().to_string();
        let p = parts[1].trim();
        let prime = if let Some(a) = call(p, "prime") {
            let a = split_top(a, ',');
            if a.len() != 2 {
                return Err(cx.err(0, "prime(poly, cert) takes two arguments"));
            }
            PrimeAst::Explicit { poly: cx.expr(a[0].trim(), 0)?, cert: Box::new(parse_cert(cx, a[1])?) }
        } else if let Some(a) = call(p, "regular") {
            let a = split_top(a, ',');
            if a.len() != 2 {
                return Err(cx.err(0, "regular(host, point) takes two arguments"));
            }
            PrimeAst::Regular { host: cx.expr(a[0].trim(), 0)?, point: parse_point(cx, a[1])? }
        } else {
            return Err(cx.err(0, format!("bad prime spec `{p}`")));
        };
        return Ok(CertSpec::Eisenstein { var, prime });
    }
    if let Some(inner) = call(s, "restriction") {
        let parts = split_top(inner, ',');
        if parts.len() < 2 {
            return Err(cx.err(0, "restriction(var, cert) takes two arguments"));
        }
        let rest = inner[parts[0].len() + 1..].trim();
        return Ok(CertSpec::Restriction { var: parts[0].trim().to_string(), inner: Box::new(parse_cert(cx, rest)?) });
    }
    Err(cx.err(0, format!("unknown certificate `{s}`")))
}

/// Certificate syntax outside a scenario line (check arguments).
pub fn parse_cert_str(s: &str) -> Result<CertSpec, ScenarioError> {
    parse_cert(&LineCx { line: 0, base: 0 }, s)
}

fn parse_point(cx: &LineCx, s: &str) -> Result<Vec<Expr>, ScenarioError> {
    let items = tuple(s).ok_or_else(|| cx.err(0, format!("expected a point (c0,...), got `{}`", s.trim())))?;
    items.iter().map(|c| cx.expr(c, 0)).collect()
}

fn parse_evidence(cx: &LineCx, s: &str) -> Result<Evidence, ScenarioError> {
    let s = s.trim();
    if let Some(inner) = call(s, "point") {
        return Ok(Evidence::Point(parse_point(cx, &format!("({inner})"))?));
    }
    if let Some(inner) = call(s, "curve") {
        return Ok(Evidence::Curve(inner.trim().to_string()));
    }
    if let Some(inner) = call(s, "via") {
        let a = split_top(inner, ',');
        if a.len() != 4 {
            return Err(cx.err(0, "via(rep, e, h, point(..)) takes four arguments"));
        }
        let e: i64 = a[1].trim().parse().map_err(|_| cx.err(0, format!("bad exponent `{}`", a[1].trim())))?;
        let pt = call(a[3].trim(), "point").ok_or_else(|| cx.err(0, "via(..) needs point(..) last"))?;
        return Ok(Evidence::Via {
            rep: cx.expr(a[0].trim(), 0)?,
            e,
            h: cx.expr(a[2].trim(), 0)?,
            point: parse_point(cx, &format!("({pt})"))?,
        });
    }
    Err(cx.err(0, format!("unknown evidence `{s}`")))
}

fn parse_factor_list(cx: &LineCx, s: &str) -> Result<Vec<(Expr, i64)>, ScenarioError> {
    let mut out = Vec::new();
    for tok in split_ws_top(s) {
        // trailing ^<int> outside brackets, possibly negative
        let (base, k) = match tok.rfind('^') {
            Some(i) if balanced(&tok[..i]) && tok[i + 1..].parse::<i64>().is_ok() => {
                (&tok[..i], tok[i + 1..].parse::<i64>().unwrap())
            }
            _ => (tok, 1),
        };
        out.push((cx.expr(base, 0)?, k));
    }
    if out.is_empty() {
        return Err(cx.err(0, "empty factor list"));
    }
    Ok(out)
}

fn parse_val(cx: &LineCx, s: &str) -> Result<ValWitness, ScenarioError> {
    let items = tuple(s).ok_or_else(|| cx.err(0, "expected (t=.., u=.., m=..)"))?;
    let (mut t, mut u, mut m, mut sm) = (None, None, None, None);
    for it in items {
        let (k, v) = it.split_once('=').ok_or_else(|| cx.err(0, format!("expected key=value in `{it}`")))?;
        let v = v.trim();
        match k.trim() {
            "t" => t = Some(cx.expr(v, 0)?),
            "u" => u = Some(cx.expr(v, 0)?),
            "s" => sm = Some(cx.expr(v, 0)?),
            "m" => m = Some(v.parse::<i64>().map_err(|_| cx.err(0, format!("bad multiplicity `{v}`")))?),
            other => return Err(cx.err(0, format!("unknown witness key `{other}`"))),
        }
    }
    Ok(ValWitness {
        t,
        u: u.ok_or_else(|| cx.err(0, "valuation witness needs u"))?,
        m: m.ok_or_else(|| cx.err(0, "valuation witness needs m"))?,
        s: sm,
    })
}

/// `NAME: rest` after the keyword.
fn head<'a>(cx: &LineCx, rest: &'a str, off: usize) -> Result<(&'a str, &'a str, usize), ScenarioError> {
    let (name, tail) = rest.split_once(':').ok_or_else(|| cx.err(off, "expected `NAME:`"))?;
    let name = name.trim();
    if !is_ident(name) {
        return Err(cx.err(off, format!("bad name `{name}`")));
    }
    Ok((name, tail, off + name.len() + 1 + (rest.len() - rest.trim_start().len())))
}

fn kv_map<'a>(
    cx: &LineCx,
    s: &str,
    off: usize,
    allowed: &[&str],
    prefixed: &[&str],
) -> Result<Vec<(String, String, usize)>, ScenarioError> {
    let kv = split_kv(s).map_err(|(o, m)| cx.err(off + o, m))?;
    let mut seen: Vec<&str> = Vec::new();
    for (k, _, o) in &kv {
        let ok = allowed.contains(&k.as_str()) || prefixed.iter().any(|p| k.strip_prefix(p).is_some_and(is_ident));
        if !ok {
            return Err(cx.err(off + o - k.len() - 1, format!("unknown key `{k}`")));
        }
        if seen.contains(&k.as_str()) {
            return Err(cx.err(off + o - k.len() - 1, format!("key `{k}` given twice")));
        }
        seen.push(k);
    }
    Ok(kv)
}

fn get<'a>(kv: &'a [(String, String, usize)], key: &str) -> Option<(&'a str, usize)> {
    kv.iter().find(|(k, _, _)| k == key).map(|(_, v, o)| (v.as_str(), *o))
}

fn need<'a>(cx: &LineCx, kv: &'a [(String, String, usize)], key: &str) -> Result<(&'a str, usize), ScenarioError> {
    get(kv, key).ok_or_else(|| cx.err(0, format!("missing `{key}=`")))
}

pub fn parse_scenario(text: &str) -> Result<ScenarioDoc, ScenarioError> {
    let mut doc = ScenarioDoc {
        name: String::new(),
        field: FieldMode::Qomega,
        vars: Vec::new(),
        polys: Vec::new(),
        components: Vec::new(),
        divisors: Vec::new(),
        symbol: None,
        curves: Vec::new(),
        checks: Vec::new(),
        notes: Vec::new(),
    };
    let mut any = false;
    let mut have_vars = false;
    // statement name -> line, for cross-reference errors after the full pass
    let mut lines: Vec<(String, usize)> = Vec::new();
    let mut pending_factors: Vec<(usize, String, Vec<(Expr, i64)>)> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        any = true;
        let lead = body.len() - body.trim_start().len();
        let body = body.trim_start().trim_end();
        let (kw, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        let roff = lead + kw.len() + 1;
        let cx = LineCx { line, base: 0 };
        let before = (doc.components.len(), doc.divisors.len(), doc.curves.len(), doc.symbol.is_some());
        match kw {
            "scenario" => doc.name = rest.trim().to_string(),
            "note" => doc.notes.push(rest.trim().to_string()),
            "field" => doc.field = rest.trim().parse().map_err(|m: String| cx.err(roff, m))?,
            "vars" => {
                for v in rest.split_whitespace() {
                    if !is_ident(v) {
                        return Err(cx.err(roff, format!("bad variable name `{v}`")));
                    }
                    if doc.vars.iter().any(|x| x == v) {
                        return Err(ScenarioError::DuplicateName { line, name: v.into() });
                    }
                    doc.vars.push(v.to_string());
                }
                if doc.vars.len() > bsv_core::poly::MAX_VARS {
                    return Err(cx.err(roff, "too many variables"));
                }
                have_vars = true;
            }
            "poly" => {
                let (name, e) = rest.split_once('=').ok_or_else(|| cx.err(roff, "expected `poly NAME = expr`"))?;
                let name = name.trim();
                if !is_ident(name) {
                    return Err(cx.err(roff, format!("bad name `{name}`")));
                }
                if doc.vars.iter().any(|v| v == name) || doc.polys.iter().any(|(n, _)| n == name) {
                    return Err(ScenarioError::DuplicateName { line, name: name.into() });
                }
                let e = cx.at(roff + rest.find('=').unwrap() + 1).expr(e.trim(), 0)?;
                check_names(&doc, &e, line)?;
                doc.polys.push((name.to_string(), e));
            }
            "component" | "divisor" => {
                let (name, tail, off) = head(&cx, rest, roff)?;
                if doc.components.iter().any(|c| c.name == name) || doc.divisors.iter().any(|c| c.name == name) {
                    return Err(ScenarioError::DuplicateName { line, name: name.into() });
                }
                let allowed: &[&str] =
                    if kw == "component" { &["poly", "cert", "gamma", "class", "evidence"] } else { &["poly", "cert", "cube"] };
                let kv = kv_map(&cx, tail, off, allowed, &[])?;
                let ex = |k: &str| -> Result<Option<Expr>, ScenarioError> {
                    get(&kv, k).map(|(v, o)| cx.at(off + o).expr(v, 0)).transpose()
                };
                let poly = ex("poly")?.ok_or_else(|| cx.err(off, "missing `poly=`"))?;
                let (c, o) = need(&cx, &kv, "cert")?;
                let cert = parse_cert(&cx.at(off + o), c)?;
                if kw == "component" {
                    let gamma = ex("gamma")?.ok_or_else(|| cx.err(off, "missing `gamma=`"))?;
                    let evidence = get(&kv, "evidence").map(|(v, o)| parse_evidence(&cx.at(off + o), v)).transpose()?;
                    let class = ex("class")?;
                    doc.components.push(Component { name: name.into(), poly, cert, gamma, class, evidence });
                } else {
                    let cube = ex("cube")?;
                    doc.divisors.push(DivisorDecl { name: name.into(), poly, cert, cube });
                }
            }
            "symbol" => {
                if doc.symbol.is_some() {
                    return Err(ScenarioError::DuplicateName { line, name: "symbol".into() });
                }
                let kv = kv_map(&cx, rest, roff, &["a", "b"], &[])?;
                let (a, ao) = need(&cx, &kv, "a")?;
                let (b, bo) = need(&cx, &kv, "b")?;
                doc.symbol = Some(SymbolDecl {
                    a: cx.at(roff + ao).expr(a, 0)?,
                    b: cx.at(roff + bo).expr(b, 0)?,
                    factors_a: None,
                    factors_b: None,
                });
            }
            "factors" => {
                let (which, list) = rest.split_once(':').ok_or_else(|| cx.err(roff, "expected `factors a: ...`"))?;
                let which = which.trim();
                if which != "a" && which != "b" {
                    return Err(cx.err(roff, "factors must name entry a or b"));
                }
                let items = parse_factor_list(&cx.at(roff + which.len() + 1), list)?;
                for (e, _) in &items {
                    check_names(&doc, e, line)?;
                }
                pending_factors.push((line, which.to_string(), items));
            }
            "curve" => {
                let (name, tail, off) = head(&cx, rest, roff)?;
                if doc.curves.iter().any(|c| c.name == name) {
                    return Err(ScenarioError::DuplicateName { line, name: name.into() });
                }
                let kv = kv_map(&cx, tail, off, &["gens", "pair", "cartier"], &["val_", "cube_"])?;
                let (g, go) = need(&cx, &kv, "gens")?;
                let gens = list(g)
                    .ok_or_else(|| cx.err(off + go, "gens must be a list [..]"))?
                    .into_iter()
                    .map(|s| cx.at(off + go).expr(s, 0))
                    .collect::<Result<Vec<_>, _>>()?;
                let (p, po) = need(&cx, &kv, "pair")?;
                let pv = tuple(p).filter(|v| v.len() == 2).ok_or_else(|| cx.err(off + po, "pair must be (A,B)"))?;
                let pair = (pv[0].to_string(), pv[1].to_string());
                let mut vals = Vec::new();
                let mut cubes = Vec::new();
                for (k, v, o) in &kv {
                    if let Some(s) = k.strip_prefix("val_") {
                        vals.push((s.to_string(), parse_val(&cx.at(off + o), v)?));
                    } else if let Some(s) = k.strip_prefix("cube_") {
                        cubes.push((s.to_string(), cx.at(off + o).expr(v, 0)?));
                    }
                }
                let cartier = get(&kv, "cartier").map(|(v, _)| v.to_string());
                doc.curves.push(CurveDecl { name: name.into(), gens, pair, vals, cubes, cartier });
            }
            "check" => {
                let mut it = rest.trim_start().splitn(3, char::is_whitespace);
                let id = it.next().unwrap_or("").trim();
                let kind = it.next().unwrap_or("").trim();
                let args = it.next().unwrap_or("");
                if id.is_empty() || kind.is_empty() {
                    return Err(cx.err(roff, "expected `check ID KIND key=value ...`"));
                }
                if doc.checks.iter().any(|c| c.id == id) {
                    return Err(ScenarioError::DuplicateName { line, name: id.into() });
                }
                let aoff = roff + rest.find(kind).unwrap_or(0) + kind.len() + 1;
                let kv = split_kv(args).map_err(|(o, m)| cx.err(aoff + o, m))?;
                doc.checks.push(CheckDecl {
                    id: id.to_string(),
                    kind: kind.to_string(),
                    args: kv.into_iter().map(|(k, v, _)| (k, v)).collect(),
                    line,
                });
            }
            other => return Err(cx.err(lead, format!("unknown statement `{other}`"))),
        }
        if before.0 < doc.components.len() {
            let c = doc.components.last().unwrap();
            lines.push((format!("component {}", c.name), line));
            let mut ex: Vec<&Expr> = vec![&c.poly, &c.gamma];
            ex.extend(c.class.iter());
            match &c.evidence {
                Some(Evidence::Point(p)) => ex.extend(p.iter()),
                Some(Evidence::Via { rep, h, point, .. }) => {
                    ex.extend([rep, h]);
                    ex.extend(point.iter());
                }
                _ => {}
            }
            check_cert_and(&doc, &c.cert, ex, line)?;
        }
        if before.1 < doc.divisors.len() {
            let d = doc.divisors.last().unwrap();
            let mut ex = vec![&d.poly];
            ex.extend(d.cube.iter());
            check_cert_and(&doc, &d.cert, ex, line)?;
        }
        if before.2 < doc.curves.len() {
            let c = doc.curves.last().unwrap();
            lines.push((format!("curve {}", c.name), line));
            let mut ex: Vec<&Expr> = c.gens.iter().collect();
            for (_, v) in &c.vals {
                ex.push(&v.u);
                ex.extend(v.t.iter().chain(v.s.iter()));
            }
            ex.extend(c.cubes.iter().map(|x| &x.1));
            for e in ex {
                check_names(&doc, e, line)?;
            }
        }
        if !before.3 && doc.symbol.is_some() {
            let s = doc.symbol.as_ref().unwrap();
            check_names(&doc, &s.a, line)?;
            check_names(&doc, &s.b, line)?;
        }
    }
    if !any {
        return Err(ScenarioError::Syntax { line: 1, col: 1, msg: "empty scenario".into() });
    }
    if !have_vars {
        return Err(ScenarioError::Syntax { line: 1, col: 1, msg: "missing `vars` line".into() });
    }
    for (line, which, items) in pending_factors {
        let sym = doc.symbol.as_mut().ok_or(ScenarioError::Syntax { line, col: 1, msg: "factors before symbol".into() })?;
        let slot = if which == "a" { &mut sym.factors_a } else { &mut sym.factors_b };
        if slot.is_some() {
            return Err(ScenarioError::DuplicateName { line, name: format!("factors {which}") });
        }
        *slot = Some(items);
    }
    resolve(&doc, &lines)?;
    Ok(doc)
}

fn check_names(doc: &ScenarioDoc, e: &Expr, line: usize) -> Result<(), ScenarioError> {
    let mut free = Vec::new();
    e.free_names(&doc.vars, &mut free);
    match free.into_iter().find(|n| !doc.polys.iter().any(|(p, _)| p == n)) {
        Some(name) => Err(ScenarioError::UnresolvedName { line, name }),
        None => Ok(()),
    }
}

fn cert_exprs<'a>(c: &'a CertSpec, out: &mut Vec<&'a Expr>, vars: &mut Vec<&'a str>) {
    match c {
        CertSpec::Eisenstein { var, prime } => {
            vars.push(var);
            match prime {
                PrimeAst::Explicit { poly, cert } => {
                    out.push(poly);
                    cert_exprs(cert, out, vars);
                }
                PrimeAst::Regular { host, point } => {
                    out.push(host);
                    out.extend(point.iter());
                }
            }
        }
        CertSpec::Restriction { var, inner } => {
            vars.push(var);
            cert_exprs(inner, out, vars);
        }
        _ => {}
    }
}

fn check_cert_and<'a>(doc: &ScenarioDoc, cert: &'a CertSpec, mut ex: Vec<&'a Expr>, line: usize) -> Result<(), ScenarioError> {
    let mut vars = Vec::new();
    cert_exprs(cert, &mut ex, &mut vars);
    if let Some(v) = vars.into_iter().find(|v| !doc.vars.iter().any(|x| x == v)) {
        return Err(ScenarioError::UnresolvedName { line, name: v.into() });
    }
    ex.into_iter().try_for_each(|e| check_names(doc, e, line))
}

/// Cross references between statements, which may appear in any order.
fn resolve(doc: &ScenarioDoc, lines: &[(String, usize)]) -> Result<(), ScenarioError> {
    let line_of = |what: String| lines.iter().find(|l| l.0 == what).map(|l| l.1).unwrap_or(0);
    for c in &doc.components {
        if let Some(Evidence::Curve(n)) = &c.evidence {
            if doc.curve(n).is_none() {
                return Err(ScenarioError::UnresolvedName { line: line_of(format!("component {}", c.name)), name: n.clone() });
            }
        }
    }
    for c in &doc.curves {
        let line = line_of(format!("curve {}", c.name));
        let unres = |name: &str| ScenarioError::UnresolvedName { line, name: name.into() };
        for side in [&c.pair.0, &c.pair.1] {
            if doc.component(side).is_none() {
                return Err(unres(side));
            }
        }
        let in_pair = |s: &str| s == c.pair.0 || s == c.pair.1;
        for s in c.vals.iter().map(|v| &v.0).chain(c.cubes.iter().map(|v| &v.0)).chain(c.cartier.iter()) {
            if !in_pair(s) {
                return Err(unres(s));
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------- serializer

impl fmt::Display for CertSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertSpec::Linear => f.write_str("linear"),
            CertSpec::Singular => f.write_str("singular"),
            CertSpec::Asserted(s) => write!(f, "asserted({s})"),
            CertSpec::Eisenstein { var, prime } => match prime {
                PrimeAst::Explicit { poly, cert } => write!(f, "eisenstein({var},prime({poly},{cert}))"),
                PrimeAst::Regular { host, point } => write!(f, "eisenstein({var},regular({host},{}))", show_point(point)),
            },
            CertSpec::Restriction { var, inner } => write!(f, "restriction({var},{inner})"),
        }
    }
}

pub fn show_point(p: &[Expr]) -> String {
    let v: Vec<String> = p.iter().map(|e| e.to_string()).collect();
    format!("({})", v.join(","))
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Evidence::Point(p) => write!(f, "point{}", show_point(p)),
            Evidence::Via { rep, e, h, point } => write!(f, "via({rep},{e},{h},point{})", show_point(point)),
            Evidence::Curve(c) => write!(f, "curve({c})"),
        }
    }
}

fn factor_item(e: &Expr, k: i64) -> String {
    let s = match e {
        Expr::Name(_) | Expr::Int(_) => e.to_string(),
        _ => format!("({e})"),
    };
    if k == 1 {
        s
    } else {
        format!("{s}^{k}")
    }
}

impl fmt::Display for ScenarioDoc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.name.is_empty() {
            writeln!(f, "scenario {}", self.name)?;
        }
        writeln!(f, "field {}", self.field)?;
        writeln!(f, "vars {}", self.vars.join(" "))?;
        for n in &self.notes {
            writeln!(f, "note {n}")?;
        }
        for (n, e) in &self.polys {
            writeln!(f, "poly {n} = {e}")?;
        }
        for c in &self.components {
            write!(f, "component {}: poly={} cert={} gamma={}", c.name, c.poly, c.cert, c.gamma)?;
            if let Some(h) = &c.class {
                write!(f, " class={h}")?;
            }
            if let Some(e) = &c.evidence {
                write!(f, " evidence={e}")?;
            }
            writeln!(f)?;
        }
        for d in &self.divisors {
            write!(f, "divisor {}: poly={} cert={}", d.name, d.poly, d.cert)?;
            if let Some(h) = &d.cube {
                write!(f, " cube={h}")?;
            }
            writeln!(f)?;
        }
        if let Some(s) = &self.symbol {
            writeln!(f, "symbol a={} b={}", s.a, s.b)?;
            for (w, l) in [("a", &s.factors_a), ("b", &s.factors_b)] {
                if let Some(l) = l {
                    let items: Vec<String> = l.iter().map(|(e, k)| factor_item(e, *k)).collect();
                    writeln!(f, "factors {w}: {}", items.join(" "))?;
                }
            }
        }
        for c in &self.curves {
            let gens: Vec<String> = c.gens.iter().map(|g| g.to_string()).collect();
            write!(f, "curve {}: gens=[{}] pair=({},{})", c.name, gens.join(", "), c.pair.0, c.pair.1)?;
            for (s, v) in &c.vals {
                write!(f, " val_{s}=(")?;
                if let Some(t) = &v.t {
                    write!(f, "t={t}, ")?;
                }
                write!(f, "u={}, m={}", v.u, v.m)?;
                if let Some(m) = &v.s {
                    write!(f, ", s={m}")?;
                }
                write!(f, ")")?;
            }
            for (s, h) in &c.cubes {
                write!(f, " cube_{s}={h}")?;
            }
            if let Some(s) = &c.cartier {
                write!(f, " cartier={s}")?;
            }
            writeln!(f)?;
        }
        for c in &self.checks {
            write!(f, "check {} {}", c.id, c.kind)?;
            for (k, v) in &c.args {
                write!(f, " {k}={v}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Canonical text form; `parse_scenario` of it gives back the same document
/// (check line numbers aside).
pub fn serialize(doc: &ScenarioDoc) -> String {
    doc.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kv_split() {
        let kv = split_kv("poly=FS1 cert=eisenstein(x0,regular(P1 - P2,(0,1,1,0))) gamma=(x2^3 - x3^3)/x0^3").unwrap();
        let keys: Vec<&str> = kv.iter().map(|k| k.0.as_str()).collect();
        assert_eq!(keys, ["poly", "cert", "gamma"]);
        assert_eq!(kv[2].1, "(x2^3 - x3^3)/x0^3");
        assert!(split_kv("junk poly=1").is_err());
    }

    #[test]
    fn empty_is_syntax_error() {
        assert!(matches!(parse_scenario(""), Err(ScenarioError::Syntax { line: 1, .. })));
        assert!(matches!(parse_scenario("# only a comment\n\n"), Err(ScenarioError::Syntax { .. })));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_scenario("vars x0 x1\npoly A = x0 +* x1\n").unwrap_err();
        assert!(matches!(e, ScenarioError::Syntax { line: 2, col, .. } if col > 9), "{e:?}");
        let e = parse_scenario("vars x0\npoly A = x0 + y\n").unwrap_err();
        assert_eq!(e, ScenarioError::UnresolvedName { line: 2, name: "y".into() });
        let e = parse_scenario("vars x0\npoly A = x0\npoly A = 1\n").unwrap_err();
        assert_eq!(e, ScenarioError::DuplicateName { line: 3, name: "A".into() });
        let e = parse_scenario("vars x0\nfrobnicate\n").unwrap_err();
        assert!(matches!(e, ScenarioError::Syntax { line: 2, col: 1, .. }));
    }

    #[test]
    fn component_binds_gamma() {
        let doc = parse_scenario(
            "vars x0 x1 x2 x3\ncomponent S1: poly=x0^9 + x1^9 cert=singular gamma=(x2^3-x3^3)/x0^3 evidence=point(0,w,1,1)\n",
        )
        .unwrap();
        let c = &doc.components[0];
        assert_eq!(c.name, "S1");
        assert_eq!(c.gamma, parse_expr("(x2^3-x3^3)/x0^3").unwrap());
        assert!(matches!(&c.evidence, Some(Evidence::Point(p)) if p.len() == 4));
    }

    #[test]
    fn curve_sides_must_be_components() {
        let e = parse_scenario("vars x0 x1\ncurve C: gens=[x0] pair=(A,B)\n").unwrap_err();
        assert!(matches!(e, ScenarioError::UnresolvedName { name, .. } if name == "A"));
    }

    #[test]
    fn factor_lists() {
        let doc =
            parse_scenario("vars x0 x1\nsymbol a=x1/x0^2 b=x0\nfactors a: x1 x0^-2\nfactors b: (x0)\n").unwrap();
        let s = doc.symbol.unwrap();
        assert_eq!(s.factors_a.unwrap()[1].1, -2);
        assert_eq!(s.factors_b.unwrap().len(), 1);
    }
}
