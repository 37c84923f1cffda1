//! The twelve acceptance criteria, one PASS/FAIL line each.
//!
//! Values that come from the source text are compared directly; computed
//! values are checked against small oracles written here (integer and
//! Z[w] evaluation, brute-force group enumeration).

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use bsv::builtins::{self, CASE2_LITERAL};
use bsv::context::Ctx;
use bsv::report::{Report, Status};
use bsv::run::{run_checks, RunOptions};
use bsv_core::coeff::{Eisenstein, Field, PrimeField, Rationals, DEFAULT_PRIME};
use bsv_core::expr::poly;
use bsv_core::ideal::{singular_locus_ideal, Ideal};
use bsv_core::obstruction::{compute_h, compute_hprime, quotient_report, CurveConstraint, RestrictionStatus};
use bsv_core::poly::{Polynomial, Ring};
use bsv_core::residue::{residue1_divisor, valuation_along_divisor, FactoredFunction, PrimeDivisor};
use bsv_core::poly::IrreducibilityCert;

type Outcome = Result<String, String>;

fn opts() -> RunOptions {
    RunOptions { field: None, prime: DEFAULT_PRIME, exact: false }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn record<'r>(r: &'r Report, id: &str) -> Result<&'r bsv::report::Record, String> {
    r.get(id).ok_or_else(|| format!("record {id} missing"))
}

fn passed(r: &Report, id: &str) -> Result<String, String> {
    let rec = record(r, id)?;
    ensure(!rec.status.is_fail(), format!("{id}: {}", rec.details))?;
    Ok(rec.details.clone())
}

// ---------------------------------------------------------------- Z[w] oracle

/// a + b w with w^2 = -1 - w.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Zw(i128, i128);

impl Zw {
    const W: Zw = Zw(0, 1);
    fn n(a: i128) -> Zw {
        Zw(a, 0)
    }
    fn add(self, o: Zw) -> Zw {
        Zw(self.0 + o.0, self.1 + o.1)
    }
    fn sub(self, o: Zw) -> Zw {
        Zw(self.0 - o.0, self.1 - o.1)
    }
    fn mul(self, o: Zw) -> Zw {
        // (a + bw)(c + dw) = ac + (ad + bc)w + bd w^2
        let bd = self.1 * o.1;
        Zw(self.0 * o.0 - bd, self.0 * o.1 + self.1 * o.0 - bd)
    }
    fn pow(self, k: u32) -> Zw {
        (0..k).fold(Zw::n(1), |acc, _| acc.mul(self))
    }
    fn is_zero(self) -> bool {
        self == Zw(0, 0)
    }
}

/// FS1 and its four partial derivatives, written out by hand.
fn fs1_and_grad(p: [Zw; 4]) -> [Zw; 5] {
    let c = |x: Zw| x.pow(3);
    let (a, b, cc) = (c(p[1]).sub(c(p[2])), c(p[2]).sub(c(p[3])), c(p[3]).sub(c(p[1])));
    let three = |x: Zw| Zw::n(3).mul(x.pow(2));
    [
        p[0].pow(9).add(a.mul(b).mul(cc)),
        Zw::n(9).mul(p[0].pow(8)),
        three(p[1]).mul(b).mul(cc.sub(a)),
        three(p[2]).mul(cc).mul(a.sub(b)),
        three(p[3]).mul(a).mul(b.sub(cc)),
    ]
}

// ---------------------------------------------------------------- criteria

fn c1(s1s2: &Report, secs: f64) -> Outcome {
    let d = passed(s1s2, "s1.sing")?;
    ensure(d.contains("12/12") && d.contains("projective dimension 0"), d.clone())?;
    let w = Zw::W;
    let w2 = w.pow(2);
    let (o, z) = (Zw::n(1), Zw::n(0));
    let pts = [
        [z, o, z, z],
        [z, z, o, z],
        [z, z, z, o],
        [z, w, o, o],
        [z, o, w, o],
        [z, o, o, w],
        [z, w2, o, o],
        [z, o, w2, o],
        [z, o, o, w2],
        [z, w2, w, o],
        [z, w, w2, o],
        [z, o, o, o],
    ];
    let oracle = pts.iter().filter(|p| fs1_and_grad(**p).iter().all(|v| v.is_zero())).count();
    ensure(oracle == 12, format!("oracle finds {oracle}/12"))?;
    ensure(secs < 60.0, format!("{secs:.1}s"))?;
    Ok(format!("12/12 points singular (oracle agrees), dimension 0, {:?}", record(s1s2, "s1.sing")?.status))
}

fn c2() -> Outcome {
    let t = Instant::now();
    let r = run_checks(&builtins::appendix("A2", 1, 1).map_err(|e| e.to_string())?, &opts());
    let d = passed(&r, "s2.sing")?;
    ensure(d.contains("radicals equal: true") && d.contains("projective dimension 1"), d.clone())?;
    let secs = t.elapsed().as_secs_f64();
    ensure(secs < 120.0, format!("{secs:.1}s"))?;
    Ok(format!("{d} in {secs:.2}s"))
}

fn c3(r: &Report) -> Outcome {
    let sum = passed(r, "support/summary")?;
    ensure(sum == "nontrivial: [S1, S2]; trivial: [X0, L0, L1, L2]", sum.clone())?;
    let fac = passed(r, "support/factorization")?;
    ensure(fac.contains("a: 21 = 18+1+1+1 against 21") && fac.contains("b: 9 = 9 against 9"), fac.clone())?;
    for d in ["X0", "L0", "L1", "L2"] {
        ensure(passed(r, &format!("support/{d}"))?.contains("trivial by cube witness"), d)?;
    }
    for c in ["S1", "S2"] {
        passed(r, &format!("component/{c}/nontrivial"))?;
    }
    // the three planes multiply out to x2^3 - x3^3
    for (x2, x3) in [(2, 5), (-3, 7), (11, 1)] {
        let (a, b) = (Zw::n(x2), Zw::n(x3));
        let lhs = a.sub(b).mul(a.sub(Zw::W.mul(b))).mul(a.sub(Zw::W.pow(2).mul(b)));
        ensure(lhs == a.pow(3).sub(b.pow(3)), "plane product oracle")?;
    }
    Ok(format!("{sum}; {fac}"))
}

fn c4(r: &Report) -> Outcome {
    let d = passed(r, "fs2.divisor")?;
    ensure(d.contains("= 162") && d.contains("9*18 = 162"), d.clone())?;
    // each D_i is a complete intersection of degrees 1 and 9
    let oracle = 6 * (1 * 9) * 3;
    ensure(oracle == 9 * 18, "degree oracle")?;
    for c in ["D1", "D2", "D3"] {
        passed(r, &format!("curve/{c}/on-surfaces"))?;
    }
    Ok(d)
}

fn c5(r: &Report) -> Outcome {
    let mut out = Vec::new();
    for id in ["gamma1.point", "fs1.point"] {
        let d = passed(r, id)?;
        ensure(d.ends_with("residue 1"), d.clone())?;
        // orders are (a, b) with b the order of the x0 power, at most 9
        let nums: Vec<u32> = d
            .trim_start_matches("orders (")
            .split(')')
            .next()
            .unwrap_or("")
            .split(", ")
            .filter_map(|x| x.parse().ok())
            .collect();
        ensure(nums.len() == 2 && nums.iter().all(|&k| k <= 9), d.clone())?;
        out.push(format!("{id}: {d}"));
    }
    Ok(out.join("; "))
}

/// H and H' by enumerating (Z/3)^n directly.
fn brute(n: usize, curves: &[CurveConstraint]) -> (usize, usize, usize) {
    let total = 3usize.pow(n as u32);
    let vecs: Vec<Vec<u8>> = (0..total)
        .map(|mut c| {
            (0..n)
                .map(|_| {
                    let d = (c % 3) as u8;
                    c /= 3;
                    d
                })
                .collect()
        })
        .collect();
    let in_h = |v: &Vec<u8>, prime: bool| {
        curves.iter().all(|c| {
            let eq = v[c.pair.0] == v[c.pair.1];
            let ramified = matches!(c.residues, (1, 2) | (2, 1));
            let restricted = prime
                && c.residues == (0, 0)
                && c.restrictions != (RestrictionStatus::TrivialByWitness, RestrictionStatus::TrivialByWitness);
            !(ramified || restricted) || eq
        })
    };
    let h = vecs.iter().filter(|v| in_h(v, false)).count();
    let hp = vecs.iter().filter(|v| in_h(v, true)).count();
    (total, h, hp)
}

fn c6(r: &Report, secs: f64) -> Outcome {
    let o = r.obstruction.as_ref().ok_or("no obstruction summary")?;
    let got = (o.gamma_order, o.h_order, o.hprime_order, o.quotient_order, o.nontrivial);
    ensure(got == (9, 9, 9, 3, true), format!("{got:?}"))?;
    // the three curves have residues (0,0) and cube witnesses on both sides
    let curves: Vec<CurveConstraint> = ["D1", "D2", "D3"]
        .iter()
        .map(|n| CurveConstraint {
            name: n.to_string(),
            pair: (0, 1),
            residues: (0, 0),
            restrictions: (RestrictionStatus::TrivialByWitness, RestrictionStatus::TrivialByWitness),
        })
        .collect();
    for c in ["D1", "D2", "D3"] {
        let d = passed(r, &format!("curve/{c}"))?;
        ensure(d.starts_with("residues (0, 0)") && d.contains("restrictions (trivial, trivial)"), d)?;
    }
    let (g, h, hp) = brute(2, &curves);
    ensure((g, h, hp, hp / 3) == (9, 9, 9, 3), "brute-force oracle")?;
    ensure(secs < 60.0, format!("{secs:.1}s"))?;
    Ok("gamma 9, H 9, H' 9, quotient 3, nontrivial (oracle agrees)".to_string())
}

fn c7() -> Outcome {
    let r = run_checks(&builtins::appendix("Cartier", 1, 1).map_err(|e| e.to_string())?, &opts());
    let m = passed(&r, "d1.generator")?;
    let u = passed(&r, "d1.unit")?;
    // oracle: the difference is exactly FS1 with x3 = 1, checked at integer points
    let f = |x0: i128, x1: i128, x2: i128| {
        x0.pow(9) - x2.pow(6) + x2.pow(3) - x1.pow(3) * (x1.pow(3) * x2.pow(3) - x2.pow(6) - x1.pow(3) + 1)
    };
    let fs1 = |x0: i128, x1: i128, x2: i128| x0.pow(9) + (x1.pow(3) - x2.pow(3)) * (x2.pow(3) - 1) * (1 - x1.pow(3));
    for (a, b, c) in [(0, 0, 0), (1, 2, 3), (-2, 3, -1), (4, -3, 2), (3, 3, 5)] {
        ensure(f(a, b, c) == fs1(a, b, c), format!("identity oracle at {a},{b},{c}"))?;
    }
    Ok(format!("{m}; cofactor {u} at (0,0,0)"))
}

fn c8() -> Outcome {
    let t = Instant::now();
    let r = run_checks(&builtins::appendix("A3", 1, 1).map_err(|e| e.to_string())?, &opts());
    for id in ["g1.smooth", "g2.smooth", "transversal"] {
        let rec = record(&r, id)?;
        ensure(rec.status == Status::CertifiedModP(DEFAULT_PRIME), format!("{id}: {:?} {}", rec.status, rec.details))?;
        ensure(rec.details == "projective dimension empty", rec.details.clone())?;
    }
    Ok(format!("three ideals empty, certified mod {DEFAULT_PRIME}, {:.2}s", t.elapsed().as_secs_f64()))
}

fn c9() -> Outcome {
    let mut lines = Vec::new();
    for (t0, t1) in [(1, 1), (0, 1), (2, 1)] {
        let a5 = run_checks(&builtins::appendix("A5", t0, t1).map_err(|e| e.to_string())?, &opts());
        passed(&a5, "f2.eisenstein")?;
        let a4 = run_checks(&builtins::appendix("A4", t0, t1).map_err(|e| e.to_string())?, &opts());
        let route = record(&a4, "f1.eisenstein")?;
        if t0 == 0 {
            // no x0 term at t0 = 0, so the documented route cannot apply
            ensure(route.status.is_fail(), "A4 route unexpectedly passes at t0 = 0")?;
            passed(&a4, "f1.singular")?;
            println!("    A4 at (0,1): FAIL-as-stated ({}); irreducible by the singular-locus certificate", route.details);
            lines.push("(0,1) A5 ok, A4 via singular locus".to_string());
        } else {
            ensure(!route.status.is_fail(), route.details.clone())?;
            lines.push(format!("({t0},{t1}) A4 and A5 ok"));
        }
    }
    Ok(lines.join("; "))
}

fn c10(s1s2: &Report) -> Outcome {
    let t = Instant::now();
    let r = run_checks(&builtins::appendix("A7", 1, 1).map_err(|e| e.to_string())?, &opts());
    let eq = passed(&r, "case2.equations")?;
    ensure(eq == "9/9 relations match", eq.clone())?;
    ensure(CASE2_LITERAL.len() == 9, "nine relations")?;
    let literal = record(&r, "case2.charts.literal")?;
    ensure(literal.status.is_fail(), "literal relations unexpectedly reduce to 4 generators everywhere")?;
    println!("    4-generator claim with the literal relations: FAIL-as-stated ({})", &literal.details[..literal.details.find(':').unwrap_or(0)]);
    let fixed = passed(&r, "case2.charts.corrected")?;
    ensure(fixed.starts_with("all 27 charts reduce to 4 generators; equal to full substitution: true"), fixed.clone())?;
    passed(&r, "case2.limit.111")?;
    passed(&r, "case2.limit.123")?;
    let u3 = passed(&r, "case3.u3")?;
    ensure(u3.contains("complete intersection true") && u3.contains("reduced true"), u3.clone())?;
    for (id, ty) in [("fiber.smooth", "smooth"), ("fiber.triple", "triple-hirzebruch"), ("fiber.cone", "cone-over-twisted-cubic")] {
        ensure(passed(s1s2, id)? == format!("fiber type {ty}"), id)?;
    }
    let secs = t.elapsed().as_secs_f64();
    ensure(secs < 300.0, format!("{secs:.1}s"))?;
    Ok(format!("relations verbatim; corrected eighth relation gives 4 generators on all 27 charts; U3 {u3}; three fiber types"))
}

fn c11() -> Outcome {
    let t = Instant::now();
    let special = builtins::pencil(1, 0).map_err(|e| e.to_string())?;
    let base = builtins::s1s2();
    let cs = Ctx::new(&special, Eisenstein)?;
    let cb = Ctx::new(&base, Eisenstein)?;
    let (ss, sb) = (special.symbol.as_ref().ok_or("no symbol")?, base.symbol.as_ref().ok_or("no symbol")?);
    ensure(cs.rational(&ss.a)? == cb.rational(&sb.a)?, "a differs")?;
    ensure(cs.rational(&ss.b)? == cb.rational(&sb.b)?, "b differs")?;
    for (x, y) in special.components.iter().zip(&base.components) {
        ensure(cs.poly(&x.poly)? == cb.poly(&y.poly)?, format!("component {} differs", x.name))?;
    }
    let doc = builtins::pencil(1, 1).map_err(|e| e.to_string())?;
    let r = run_checks(&doc, &opts());
    for id in ["t1.smooth", "t2.smooth", "transversal"] {
        ensure(record(&r, id)?.status == Status::CertifiedModP(DEFAULT_PRIME), id)?;
    }
    let sum = passed(&r, "support/summary")?;
    ensure(sum == "nontrivial: [T1, T2]; trivial: [X0]", sum.clone())?;
    let c = Ctx::new(&doc, Eisenstein)?;
    let g1 = c.poly_str("x0^9 - x1^9 + x2^8*x3 + x3^8*x2")?;
    let g2 = c.poly_str("x0^21 + x1^21 + x2^21 - x3^21")?;
    ensure(c.poly(&doc.components[0].poly)? == g1 && c.poly(&doc.components[1].poly)? == g2, "[1:1] members are not G1, G2")?;
    ensure(c.rational(&doc.components[0].gamma)? == c.rational_str("G2/x0^21")?, "gamma1 formula")?;
    ensure(c.rational(&doc.components[1].gamma)? == c.rational_str("x0^9/G1")?, "gamma2 formula")?;
    let secs = t.elapsed().as_secs_f64();
    ensure(secs < 900.0, format!("{secs:.1}s"))?;
    Ok(format!("[1:0] matches the example; [1:1] smooth, transversal, support {{T1, T2}} in {secs:.2}s"))
}

fn c12() -> Outcome {
    let mut notes = Vec::new();
    let cfg = |cases| Config { cases, failure_persistence: None, ..Config::default() };
    let q = Rationals;
    let r = Ring::new(q.clone(), &["x0", "x1", "x2", "x3"]);
    let plane = PrimeDivisor::new("L", poly(&r, "x2 - x3").unwrap(), IrreducibilityCert::Linear).unwrap();

    // valuation additivity
    let mut run = TestRunner::new(cfg(500));
    run.run(&(-4i64..5, -4i64..5, 0u32..3, 0u32..3, 1i64..7), |(e1, e2, k1, k2, c)| {
        let base = poly(&r, "x2 - x3").unwrap();
        let other = poly(&r, &format!("x0 + {c}*x1")).unwrap();
        let f = FactoredFunction::from_factors(q.one(), vec![(&base.pow(k1) * &other, e1)]);
        let g = FactoredFunction::from_factors(q.one(), vec![(&base.pow(k2) * &poly(&r, "x1 + x3").unwrap(), e2)]);
        let v = |h: &FactoredFunction<Rationals>| valuation_along_divisor(h, &plane).unwrap();
        prop_assert_eq!(v(&f.mul(&g)), v(&f) + v(&g));
        prop_assert_eq!(v(&f), e1 * k1 as i64);
        Ok(())
    })
    .map_err(|e| format!("valuation additivity: {e}"))?;
    notes.push("valuation additivity 500");

    // residue1 unchanged by cubes
    let s1 = PrimeDivisor::new("S1", poly(&r, "x0^9 + (x1^3-x2^3)*(x2^3-x3^3)*(x3^3-x1^3)").unwrap(), IrreducibilityCert::SingularLocusDim).unwrap();
    let mut run = TestRunner::new(cfg(500));
    run.run(&(-5i64..6, 0u32..4, -3i64..4, 0u32..3, 1i64..5), |(e, k, he, hk, c)| {
        let f = FactoredFunction::from_factors(
            q.one(),
            vec![(s1.poly.pow(k), e), (poly(&r, &format!("x0 + {c}*x2")).unwrap(), -(e * 9 * k as i64))],
        );
        let h = FactoredFunction::from_factors(q.one(), vec![(&s1.poly.pow(hk) * &poly(&r, "x1 + x2").unwrap(), he)]);
        let fh3 = f.mul(&h.pow(3, &q));
        prop_assert_eq!(residue1_divisor(&fh3, &s1).unwrap(), residue1_divisor(&f, &s1).unwrap());
        prop_assert_eq!(residue1_divisor(&f, &s1).unwrap() as i64, (e * k as i64).rem_euclid(3));
        Ok(())
    })
    .map_err(|e| format!("residue1 cube invariance: {e}"))?;
    notes.push("residue1 cube invariance 500");

    // S-polynomials reduce to zero and NF is idempotent on the bases used above
    let k = PrimeField::new(DEFAULT_PRIME).unwrap();
    let rp = Ring::new(k.clone(), &["x0", "x1", "x2", "x3"]);
    let bases: Vec<Ideal<PrimeField>> = [
        "x0^9 + (x1^3-x2^3)*(x2^3-x3^3)*(x3^3-x1^3)",
        "(x0^9 + (x1^3-x2^3)*(x2^3-x3^3)*(x3^3-x1^3))*(x0^9 - x1^3*x2^3*x3^3) + x1^6*x2^6*x3^6",
        "x0^9 - x1^9 + x2^8*x3 + x3^8*x2",
    ]
    .iter()
    .map(|s| singular_locus_ideal(&poly(&rp, s).unwrap()).unwrap())
    .collect();
    for b in &bases {
        ensure(b.basis().verify(), "S-polynomial does not reduce to zero")?;
    }
    let mut run = TestRunner::new(cfg(200));
    run.run(&proptest::collection::vec((0u32..4, 0u32..4, 0u32..4, 0u32..4, 1u64..100), 1..6), |terms| {
        let f = terms.iter().fold(Polynomial::zero(&rp), |acc, (a, b, c, d, k)| {
            &acc + &poly(&rp, &format!("{k}*x0^{a}*x1^{b}*x2^{c}*x3^{d}")).unwrap()
        });
        for b in &bases {
            let n = b.normal_form(&f).unwrap();
            prop_assert_eq!(b.normal_form(&n).unwrap(), n);
        }
        Ok(())
    })
    .map_err(|e| format!("NF idempotence: {e}"))?;
    notes.push("S-polynomials on 3 bases, NF idempotence 200");

    // Euler identity on products of homogeneous forms
    let mut run = TestRunner::new(cfg(200));
    run.run(&(1u32..5, 1u32..5, proptest::collection::vec(-5i64..6, 4), proptest::collection::vec(-5i64..6, 4)), |(d1, d2, a, b)| {
        let form = |d: u32, c: &[i64]| {
            let l = format!("{}*x0 + {}*x1 + {}*x2 + {}*x3 + x0", c[0], c[1], c[2], c[3]);
            let m = format!("x1^{d}");
            &poly(&r, &l).unwrap().pow(d) + &poly(&r, &m).unwrap()
        };
        let f = &form(d1, &a) * &form(d2, &b);
        let (ok, deg) = f.euler_identity_check().unwrap();
        prop_assert!(ok);
        prop_assert_eq!(deg, d1 + d2);
        Ok(())
    })
    .map_err(|e| format!("Euler identity: {e}"))?;
    notes.push("Euler identity 200");

    // obstruction groups on every constraint pattern with n <= 3
    use RestrictionStatus::*;
    let kinds: [Option<((u8, u8), (RestrictionStatus, RestrictionStatus))>; 6] = [
        None,
        Some(((1, 2), (Unknown, Unknown))),
        Some(((2, 1), (Unknown, Unknown))),
        Some(((0, 0), (NontrivialByEvidence, TrivialByWitness))),
        Some(((0, 0), (TrivialByWitness, TrivialByWitness))),
        Some(((1, 0), (Unknown, Unknown))),
    ];
    let mut patterns = 0;
    for n in 1..=3usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        for code in 0..kinds.len().pow(pairs.len() as u32) {
            let mut c = code;
            let mut curves = Vec::new();
            for &p in &pairs {
                if let Some((res, st)) = kinds[c % kinds.len()].clone() {
                    curves.push(CurveConstraint { name: format!("{p:?}"), pair: p, residues: res, restrictions: st });
                }
                c /= kinds.len();
            }
            let h = compute_h(n, &curves).map_err(|e| e.to_string())?;
            let hp = compute_hprime(n, &curves).map_err(|e| e.to_string())?;
            let (_, bh, bhp) = brute(n, &curves);
            ensure(h.order() as usize == bh && hp.order() as usize == bhp, format!("pattern {curves:?}"))?;
            ensure(hp.is_subgroup_of(&h), "H' not inside H")?;
            let elems = hp.elements();
            for a in &elems {
                for b in &elems {
                    let s: Vec<u8> = a.iter().zip(b).map(|(x, y)| (x + y) % 3).collect();
                    ensure(hp.contains(&s), "H' not closed")?;
                }
            }
            // relabelling the components does not change the orders
            let rev: Vec<CurveConstraint> =
                curves.iter().map(|c| CurveConstraint { pair: (n - 1 - c.pair.0, n - 1 - c.pair.1), ..c.clone() }).collect();
            ensure(compute_hprime(n, &rev).map_err(|e| e.to_string())?.order() == hp.order(), "not equivariant")?;
            let (q, _) = quotient_report(&hp).map_err(|e| e.to_string())?;
            ensure(q * 3 == hp.order(), "quotient order")?;
            patterns += 1;
        }
    }
    ensure(patterns == 1 + 6 + 216, format!("{patterns} patterns"))?;
    notes.push("obstruction: 223 constraint patterns against brute force");
    Ok(notes.join(", "))
}

fn main() {
    let t = Instant::now();
    let s1s2 = run_checks(&builtins::s1s2(), &opts());
    let secs = t.elapsed().as_secs_f64();
    let runs: Vec<(u32, Box<dyn Fn() -> Outcome + '_>)> = vec![
        (1, Box::new(|| c1(&s1s2, secs))),
        (2, Box::new(c2)),
        (3, Box::new(|| c3(&s1s2))),
        (4, Box::new(|| c4(&s1s2))),
        (5, Box::new(|| c5(&s1s2))),
        (6, Box::new(|| c6(&s1s2, secs))),
        (7, Box::new(c7)),
        (8, Box::new(c8)),
        (9, Box::new(c9)),
        (10, Box::new(|| c10(&s1s2))),
        (11, Box::new(c11)),
        (12, Box::new(c12)),
    ];
    let mut failed = Vec::new();
    for (n, f) in runs {
        let r = catch_unwind(AssertUnwindSafe(|| f())).unwrap_or_else(|_| Err("panicked".into()));
        match r {
            Ok(d) => println!("criterion {n:>2}: PASS  {d}"),
            Err(e) => {
                println!("criterion {n:>2}: FAIL  {e}");
                failed.push(n);
            }
        }
    }
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
    println!("all 12 criteria pass");
}
