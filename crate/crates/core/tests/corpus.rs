mod common;

use common::corpus;

#[test]
fn corpus_files_check_as_expected() {
    corpus::expected_outcomes().unwrap();
}

#[test]
fn print_then_elaborate_is_identity() {
    for (path, _) in corpus::files() {
        corpus::roundtrip(&path).unwrap();
    }
}

#[test]
fn interpretations_are_sound_in_every_model() {
    let runs = corpus::soundness().unwrap();
    assert!(runs > 50, "{runs}");
}

#[test]
fn uhp_relates_parallel_homs() {
    assert!(corpus::uhp_pairs().unwrap() > 10);
}

#[test]
fn one_plus_one_reduces_to_two() {
    let p = corpus::load(&corpus::root().join("expr.dtt")).unwrap();
    let item = p.item("one_plus_one").unwrap();
    assert!(item.outcome.is_ok());
    let cong = p.item("cong_succ").unwrap();
    assert!(matches!(cong.kind, dirtt_core::frontend::ItemKind::Def { .. }));
}
