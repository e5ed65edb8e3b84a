mod common;

use common::gen::{check_normalization, setup, Gen};
use dirtt_core::checker;
use dirtt_core::equality::{normalize_term, normalize_type, type_equal};
use dirtt_core::syntax::{subst_neutral, subst_polar, weaken_neutral, weaken_polar, Context, Modality, Term, Type};
use proptest::prelude::*;

fn bytes() -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(any::<u8>(), 8..200)
}

fn modality() -> impl Strategy<Value = Modality> {
    prop::sample::select(Modality::ALL.to_vec())
}

/// Polar-closed terms of `Expr^b` scoped over `[a :: Expr]`.
fn subst_candidates() -> Vec<Term> {
    let e = || Type::base("Expr");
    vec![
        Term::VarN(0),
        Term::inj_plus(e(), Term::Sym("succ".into(), vec![Term::coe_plus(e(), Term::VarN(0))])),
        Term::inj_minus(e(), Term::coe_minus(e(), Term::VarN(0))),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn normalization_is_idempotent_and_preserves_types(b in bytes()) {
        let (sig, ctx) = setup();
        let t = Gen::new(&b).any();
        prop_assert!(t.node_count() > 0);
        if let Err(e) = check_normalization(&sig, &ctx, &t) {
            prop_assert!(false, "{e}");
        }
    }
}

proptest! {
    #[test]
    fn modality_composition_is_associative(a in modality(), b in modality(), c in modality()) {
        prop_assert_eq!(a.compose(b).compose(c), a.compose(b.compose(c)));
        prop_assert_eq!(a.compose(Modality::ID), a);
        prop_assert_eq!(Modality::ID.compose(a), a);
    }

    #[test]
    fn raw_modalities_normalize_like_composition(ms in prop::collection::vec(modality(), 0..6)) {
        let sig = setup().0;
        let mut t = Type::base("Expr");
        for k in &ms {
            if k.flat { t = t.flat(); }
            if k.neg { t = t.neg(); }
        }
        let want = ms.iter().fold(Modality::ID, |acc, k| k.compose(acc));
        prop_assert_eq!(normalize_type(&sig, &t), Type::Base { name: "Expr".into(), m: want });
    }

    #[test]
    fn weakening_then_substituting_is_identity(b in bytes(), i in 0usize..3) {
        let t = Gen::new(&b).any();
        let e = Term::Sym("zero".into(), vec![]);
        prop_assert_eq!(subst_neutral(&weaken_neutral(&t, 1, i), i, &e), t);
    }

    #[test]
    fn weakenings_compose(b in bytes(), m in 0usize..3, n in 0usize..3, c in 0usize..3) {
        let t = Gen::new(&b).any();
        prop_assert_eq!(weaken_neutral(&weaken_neutral(&t, m, c), n, c), weaken_neutral(&t, m + n, c));
        prop_assert_eq!(weaken_polar(&weaken_polar(&t, m, c), n, c), weaken_polar(&t, m + n, c));
    }

    #[test]
    fn polar_substitution_cancels_weakening(b in bytes()) {
        let t = Gen::new(&b).any();
        let args = vec![Term::VarP(9), Term::VarP(8)];
        prop_assert_eq!(subst_polar(&weaken_polar(&t, 2, 0), &args), t);
    }

    #[test]
    fn typing_survives_weakening(b in bytes()) {
        let (sig, ctx) = setup();
        let t = Gen::new(&b).any();
        let ty = checker::infer(&sig, &ctx, &t).unwrap();
        // a fresh neutral entry on the right of the neutral zone
        let wider = Context::new(
            [ctx.neutral.clone(), vec![Type::base("Expr")]].concat(),
            ctx.polar.iter().map(|p| weaken_neutral(p, 1, 0)).collect(),
        );
        let wty = checker::infer(&sig, &wider, &weaken_neutral(&t, 1, 0)).unwrap();
        prop_assert!(type_equal(&sig, &wty, &weaken_neutral(&ty, 1, 0)));
    }

    #[test]
    fn typing_survives_neutral_substitution(b in bytes(), ei in 0usize..3) {
        // Γ, b ⊢ t : T and e : Expr^b give t[e/b] : T[e/b]
        let (sig, ctx) = setup();
        let t = Gen::new(&b).any();
        let ty = checker::infer(&sig, &ctx, &t).unwrap();
        let e = subst_candidates().swap_remove(ei);
        let smaller = Context::new(vec![Type::base("Expr")], ctx.polar.iter().map(|p| subst_neutral(p, 0, &e)).collect());
        let st = subst_neutral(&t, 0, &e);
        let sty = checker::infer(&sig, &smaller, &st).unwrap();
        prop_assert!(type_equal(&sig, &sty, &subst_neutral(&ty, 0, &e)));
        prop_assert_eq!(normalize_term(&sig, &st), normalize_term(&sig, &subst_neutral(&normalize_term(&sig, &t), 0, &normalize_term(&sig, &e))));
    }
}
