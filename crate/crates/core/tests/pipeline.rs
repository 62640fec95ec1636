use graphfair::checkers::{check, Criterion};
use graphfair::dispatch::{allocate, Goal};
use graphfair::format::{
    parse_allocation, parse_instance, serialize_allocation, serialize_instance,
};
use graphfair::instances::{catalog, CATALOG};
use graphfair::valuation::int;

fn params_for(name: &str) -> Vec<(&'static str, &'static str)> {
    match name {
        "thm3_cut" => vec![("k", "3")],
        "thm9_matching" => vec![("m", "6")],
        "thm12_star" | "thm16_path" => vec![("n", "3"), ("m", "6")],
        "prop9_linked" => vec![("k", "2")],
        "prop20_star" => vec![("m", "5")],
        "fig7_k2b" => vec![("b", "5")],
        _ => vec![],
    }
}

#[test]
fn every_catalog_entry_validates_and_round_trips() {
    for &name in CATALOG {
        let inst = catalog(name, &params_for(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(inst.validate().is_empty(), "{name}: {:?}", inst.validate());
        let text = serialize_instance(&inst);
        assert_eq!(parse_instance(&text).unwrap(), inst, "{name}");
    }
}

#[test]
fn small_catalog_values() {
    let star = catalog("thm12_star", &[("n", "2"), ("m", "4")]).unwrap();
    assert_eq!(star.valuations[0].value_of(&[0]), int(3));
    assert_eq!(star.valuations[0].value_of(&[1, 2, 3]), int(3));
    let k2b = catalog("fig7_k2b", &[("b", "5")]).unwrap();
    let u = &k2b.valuations[0];
    let values: Vec<_> = (0..7).map(|g| u.value_of(&[g])).collect();
    assert_eq!(values, [2, 2, 1, 1, 1, 1, 0].map(int));
}

#[test]
fn dispatched_allocations_pass_their_own_criteria() {
    let cases = [
        (
            "fig2_wheel",
            Goal::Mms,
            Criterion::MmsFraction(graphfair::valuation::ratio(3, 4)),
        ),
        ("thm16_path", Goal::Ips, Criterion::Ips),
        (
            "thm3_cut",
            Goal::Mms,
            Criterion::MmsFraction(graphfair::valuation::ratio(1, 3)),
        ),
        ("thm9_matching", Goal::Efk, Criterion::Efk(1)),
        ("prop20_star", Goal::Efk, Criterion::Efk(3)),
    ];
    for (name, goal, criterion) in cases {
        let inst = catalog(name, &params_for(name)).unwrap();
        let out = allocate(&inst, goal, None).unwrap();
        let text = serialize_allocation(&out.allocation);
        let back = parse_allocation(&text).unwrap();
        for c in [Criterion::Connected, criterion.clone()] {
            let res = check(&inst, &back, &c).unwrap();
            assert!(res.pass, "{name} {c}: {:?}", res.violation);
        }
    }
}
