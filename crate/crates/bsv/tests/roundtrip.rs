use bsv::{builtins, parse_scenario, serialize, ScenarioDoc};
use proptest::prelude::*;

fn strip_lines(mut d: ScenarioDoc) -> ScenarioDoc {
    for c in &mut d.checks {
        c.line = 0;
    }
    d
}

fn expr() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        (0usize..4).prop_map(|i| format!("x{i}")),
        (1i64..20).prop_map(|k| k.to_string()),
        Just("w".to_string()),
    ];
    leaf.prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a} + {b}")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a})*({b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) - ({b})")),
            (inner.clone(), 1u32..5).prop_map(|(a, k)| format!("({a})^{k}")),
            (inner.clone(), inner).prop_map(|(a, b)| format!("({a})/({b})")),
        ]
    })
}

fn scenario() -> impl Strategy<Value = String> {
    (
        proptest::collection::vec(expr(), 1..4),
        proptest::collection::vec((expr(), 0usize..3), 0..3),
        expr(),
        proptest::option::of(expr()),
        proptest::collection::vec((0usize..4, 1u8..3, 1u8..3), 0..3),
    )
        .prop_map(|(polys, comps, a, b, points)| {
            let mut s = String::from("scenario gen\nfield qw\nvars x0 x1 x2 x3\n");
            for (i, p) in polys.iter().enumerate() {
                s += &format!("poly P{i} = {p}\n");
            }
            let certs = ["linear", "singular", "eisenstein(x0,prime(x1 - x2,linear))"];
            for (i, (g, c)) in comps.iter().enumerate() {
                s += &format!("component C{i}: poly=P0 cert={} gamma={g}\n", certs[*c]);
            }
            s += &format!("divisor Z: poly=x0 cert=linear cube={a}\n");
            if let Some(b) = b {
                s += &format!("symbol a={a} b={b}\n");
            }
            for (i, (v, p, q)) in points.iter().enumerate() {
                s += &format!("check k{i} nonzero fn=P0 at=(x{v},{p},{q},1)\n");
            }
            s
        })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn parse_serialize_parse(text in scenario()) {
        let doc = parse_scenario(&text).unwrap();
        let out = serialize(&doc);
        let again = parse_scenario(&out).unwrap();
        prop_assert_eq!(strip_lines(doc), strip_lines(again.clone()));
        prop_assert_eq!(serialize(&again), out);
    }
}

#[test]
fn builtins_round_trip() {
    let docs = [builtins::s1s2(), builtins::pencil(1, 1).unwrap(), builtins::pencil(2, -3).unwrap()];
    for d in docs {
        let again = parse_scenario(&serialize(&d)).unwrap();
        assert_eq!(strip_lines(d), strip_lines(again));
    }
}
