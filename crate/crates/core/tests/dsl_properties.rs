mod common;

use std::collections::HashMap;

use proptest::prelude::*;
use qdeform_core::dsl::*;
use qdeform_core::exotic::Preset;
use qdeform_core::fock::*;

fn preset_presentations() -> Vec<AlgebraPresentation> {
    let mut out = Vec::new();
    for p in Preset::ALL {
        out.push(parse_presentation(p.shipped_source()).unwrap());
        for lambda in 1..=8 {
            out.push(p.presentation(lambda).unwrap());
        }
    }
    out
}

#[test]
fn presets_round_trip() {
    let fails = common::round_trip_failures(&preset_presentations());
    assert!(fails.is_empty(), "{}", fails.join("\n"));
}

#[test]
fn random_presentations_round_trip() {
    let mut rng = common::rng(7);
    let ps: Vec<_> = (0..300)
        .map(|_| common::random_presentation(&mut rng))
        .collect();
    let fails = common::round_trip_failures(&ps);
    assert!(
        fails.is_empty(),
        "{}",
        fails[..fails.len().min(3)].join("\n")
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_presentation_round_trips(seed in any::<u64>()) {
        let p = common::random_presentation(&mut common::rng(seed));
        let fails = common::round_trip_failures(std::slice::from_ref(&p));
        prop_assert!(fails.is_empty(), "{}", fails.join("\n"));
    }

    #[test]
    fn parser_never_panics(input in ".{0,200}") {
        let _ = parse_presentation(&input);
    }
}

#[test]
fn evaluator_agrees_with_matrix_oracle() {
    let worst = common::evaluator_max_error(11, 200, 4);
    assert!(worst <= 1e-12, "worst gap {worst:e}");
}

#[test]
fn fuzz_inputs_never_crash() {
    assert_eq!(common::fuzz_crashes(3, 10_000), 0);
}

#[test]
fn deep_nesting_is_a_diagnostic() {
    let err = parse_presentation(&common::deep_input(100_000)).unwrap_err();
    assert!(
        matches!(err.kind, ParseErrorKind::NestingTooDeep(_)),
        "{err}"
    );
}

#[test]
fn auto_mask_covers_the_boson_truncation() {
    let src = Preset::Boson.shipped_source();
    let p = parse_presentation(src).unwrap();
    for d in [4, 8, 16, 64] {
        let b = make_fock_space(d, 1).unwrap();
        let (a, _) = ladder_operators(&b, &StructureFunctionSpec::undeformed(1)).unwrap();
        let gens: HashMap<String, OperatorMatrix> = [("a".to_string(), a)].into();
        let bound = bind_representation(&p, &gens, &HashMap::new()).unwrap();
        let rep = check_relations(&bound, 1e-10, MaskPolicy::Auto).unwrap();
        for r in &rep.records {
            assert!(r.mask_levels >= 1);
            assert!(r.masked_norm < 1e-12, "D = {d}: {r:?}");
        }
    }
}

#[test]
fn syntax_errors_carry_positions() {
    let err = parse_presentation("algebra x;\ngen a;\nrel r: a + = a;").unwrap_err();
    assert_eq!(err.line, 3);
    assert!(err.to_string().contains("expected"), "{err}");
}
