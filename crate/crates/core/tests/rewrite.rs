mod common;

use common::mor::{agrees, gen_mor, mor_pair, mor_sig, mor_type, random_model};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rosetta::kernel::{infer_dom_cod, Mode};
use rosetta::kernel::{parse_mor, parse_signature, MorTerm, Signature};
use rosetta::models::{matrix::Matrix, ConcreteMor, Model, ModelKind};
use rosetta::rewrite::{
    beta_eta_normalize, coherence_axioms, eq_decide, strictify, symmetric_normal_form, EqConfig,
    EqMethod, EqVerdict, Layer, Strategy, Witness,
};

fn sig(src: &str) -> Signature {
    parse_signature(src).unwrap()
}

fn mor(s: &Signature, src: &str) -> MorTerm {
    parse_mor(src, s).unwrap()
}

fn nf_cfg() -> EqConfig {
    EqConfig {
        strategy: Strategy::Nf,
        ..EqConfig::default()
    }
}

#[test]
fn strictify_erases_structure() {
    let s = sig("mode monoidal\nobj X Y Z\n");
    let st = strictify(&mor(&s, "assoc[X,Y,Z]"), &s).unwrap();
    assert_eq!(st.dom.len(), 3);
    assert_eq!(st.dom, st.cod);
    assert!(st
        .layers
        .iter()
        .all(|l| matches!(l, Layer::Perm(p) if p.iter().enumerate().all(|(i, &j)| i == j))));
    let st = strictify(&mor(&s, "left[X]"), &s).unwrap();
    assert_eq!(st.dom.len(), 1);
}

#[test]
fn interchange_two_layers() {
    let s = sig("mode monoidal\nobj X Y\ngen f : X -> X\ngen g : Y -> Y\n");
    let st = strictify(&mor(&s, "(f * id[Y]) ; (id[X] * g)"), &s).unwrap();
    let blocks = st
        .layers
        .iter()
        .filter(|l| matches!(l, Layer::Block { .. }))
        .count();
    assert_eq!(blocks, 2);
    let a = mor(&s, "(f * id[Y]) ; (id[X] * g)");
    let b = mor(&s, "(id[X] * g) ; (f * id[Y])");
    assert_eq!(
        eq_decide(&a, &b, &s, &nf_cfg()).unwrap(),
        EqVerdict::Equal(EqMethod::NormalForm)
    );
}

#[test]
fn braid_then_inverse_is_identity_permutation() {
    let s = sig("mode symmetric\nobj X Y\n");
    let t = mor(&s, "braid[X,Y] ; braidinv[X,Y]");
    let nf = symmetric_normal_form(&strictify(&t, &s).unwrap()).unwrap();
    let id = symmetric_normal_form(&strictify(&mor(&s, "id[X * Y]"), &s).unwrap()).unwrap();
    assert_eq!(nf, id);
    let t2 = mor(&s, "braid[X,Y] ; braid[Y,X]");
    assert_eq!(
        symmetric_normal_form(&strictify(&t2, &s).unwrap()).unwrap(),
        id
    );
}

/// Brute force: apply each adjacent transposition to a wire list.
fn compose_transpositions(n: usize, swaps: &[usize]) -> Vec<usize> {
    let mut wires: Vec<usize> = (0..n).collect();
    for &i in swaps {
        wires.swap(i, i + 1);
    }
    wires
}

#[test]
fn yang_baxter_sides_share_normal_form() {
    let s = sig("mode symmetric\nobj X Y Z\n");
    let ax = coherence_axioms(rosetta::kernel::Mode::Symmetric)
        .into_iter()
        .find(|a| a.name == "yang-baxter")
        .unwrap();
    let nl = symmetric_normal_form(&strictify(&ax.lhs, &s).unwrap()).unwrap();
    let nr = symmetric_normal_form(&strictify(&ax.rhs, &s).unwrap()).unwrap();
    assert_eq!(nl, nr);
    assert_eq!(compose_transpositions(3, &[0, 1, 0]), vec![2, 1, 0]);
    assert_eq!(compose_transpositions(3, &[1, 0, 1]), vec![2, 1, 0]);
    let perms: Vec<_> = nl
        .layers
        .iter()
        .filter_map(|l| {
            if let Layer::Perm(p) = l {
                Some(p.clone())
            } else {
                None
            }
        })
        .collect();
    assert_eq!(perms.last().unwrap(), &vec![2, 1, 0]);
    assert_eq!(
        eq_decide(&ax.lhs, &ax.rhs, &s, &nf_cfg()).unwrap(),
        EqVerdict::Equal(EqMethod::NormalForm)
    );
}

#[test]
fn every_axiom_is_decided_equal_in_its_mode() {
    for mode in rosetta::kernel::Mode::ALL {
        let s = Signature::with_objects(mode, &["W", "X", "Y", "Z"]);
        for ax in coherence_axioms(mode) {
            let v = eq_decide(&ax.lhs, &ax.rhs, &s, &nf_cfg()).unwrap();
            assert!(
                matches!(v, EqVerdict::Equal(_)),
                "{} in {}: {:?}",
                ax.name,
                mode,
                v
            );
        }
    }
}

#[test]
fn zigzag_normalizes_to_identity() {
    let s = sig("mode compact-symmetric\nobj X\n");
    let t = mor(
        &s,
        "unright[X] ; (id[X] * cup[X]) ; unassoc[X, X^, X] ; (cap[X] * id[X]) ; left[X]",
    );
    let n = beta_eta_normalize(&t, &s, 100).unwrap();
    assert!(n.normal);
    assert_eq!(n.term, MorTerm::Id(rosetta::kernel::TypeExpr::basic("X")));
}

#[test]
fn uncurry_curry_and_dup_del() {
    let s = sig("mode closed-symmetric\nobj X Y Z\ngen f : X * Y -> Z\n");
    let n = beta_eta_normalize(&mor(&s, "uncurry(curry(f))"), &s, 100).unwrap();
    assert_eq!(n.term, MorTerm::gen("f"));
    let c = sig("mode cartesian\nobj X\n");
    let n = beta_eta_normalize(&mor(&c, "dup[X] ; (id[X] * del[X]) ; right[X]"), &c, 100).unwrap();
    assert_eq!(n.term, MorTerm::Id(rosetta::kernel::TypeExpr::basic("X")));
}

#[test]
fn braid_on_equal_objects_is_refuted() {
    let s = sig("mode symmetric\nobj X\n");
    let m = Model::new("dim2", ModelKind::Matrix).with_object("X", 2);
    let cfg = EqConfig {
        models: vec![m],
        ..EqConfig::default()
    };
    let v = eq_decide(&mor(&s, "braid[X,X]"), &mor(&s, "id[X * X]"), &s, &cfg).unwrap();
    // e0 (x) e1 has row-major index 1 and is sent to e1 (x) e0
    assert_eq!(
        v,
        EqVerdict::NotEqual(Witness {
            model: "dim2".into(),
            input: 1
        })
    );
}

#[test]
fn reflexive_and_mismatch() {
    let s = sig("mode monoidal\nobj X Y\ngen f : X -> Y\n");
    let f = mor(&s, "f");
    assert!(matches!(
        eq_decide(&f, &f, &s, &EqConfig::default()).unwrap(),
        EqVerdict::Equal(_)
    ));
    assert!(eq_decide(&f, &mor(&s, "id[X]"), &s, &EqConfig::default()).is_err());
    let cfg = EqConfig {
        strategy: Strategy::Model,
        ..EqConfig::default()
    };
    assert!(eq_decide(&f, &f, &s, &cfg).is_err());
}

#[test]
fn braided_crossing_is_not_its_own_inverse() {
    let s = sig("mode braided\nobj X Y\n");
    let v = eq_decide(
        &mor(&s, "braid[X,Y] ; braid[Y,X]"),
        &mor(&s, "id[X * Y]"),
        &s,
        &EqConfig::default(),
    )
    .unwrap();
    assert!(matches!(v, EqVerdict::NotEqual(_)));
    let v = eq_decide(
        &mor(&s, "braid[X,Y] ; braidinv[X,Y]"),
        &mor(&s, "id[X * Y]"),
        &s,
        &EqConfig::default(),
    )
    .unwrap();
    assert!(matches!(v, EqVerdict::Equal(_)));
}

#[test]
fn matrix_binding_roundtrip() {
    let s = sig("mode monoidal\nobj X\ngen f : X -> X\n");
    let mut m = Model::new("m", ModelKind::Matrix).with_object("X", 2);
    m.bind("f", ConcreteMor::Matrix(Matrix::identity(2)), &s)
        .unwrap();
    let v = eq_decide(
        &mor(&s, "f"),
        &mor(&s, "id[X]"),
        &s,
        &EqConfig {
            models: vec![m],
            ..EqConfig::default()
        },
    );
    assert!(v.is_ok());
}

fn random_term(seed: u64) -> (Signature, MorTerm, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sig = mor_sig(Mode::ALL[(seed % 9) as usize]);
    let d = mor_type(&mut rng, sig.mode);
    let t = gen_mor(&mut rng, &sig, &d, 1 + (seed as usize >> 8) % 10);
    (sig, t, rng)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normalization_preserves_type_and_meaning(seed in any::<u64>()) {
        let (sig, t, mut rng) = random_term(seed);
        let n = beta_eta_normalize(&t, &sig, 10_000).unwrap();
        prop_assert_eq!(infer_dom_cod(&n.term, &sig).unwrap(), infer_dom_cod(&t, &sig).unwrap());
        let m = random_model(&mut rng, &sig, "m", 3);
        prop_assert_ne!(agrees(&m, &t, &n.term, &sig), Some(false));
    }

    #[test]
    fn normalization_is_idempotent(seed in any::<u64>()) {
        let (sig, t, _) = random_term(seed);
        let n = beta_eta_normalize(&t, &sig, 10_000).unwrap();
        prop_assume!(n.normal);
        let again = beta_eta_normalize(&n.term, &sig, 10_000).unwrap();
        prop_assert!(again.normal);
        prop_assert_eq!(again.term, n.term);
    }

    #[test]
    fn equal_verdicts_hold_in_attached_models(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sig = mor_sig(Mode::ALL[(seed % 9) as usize]);
        let (t1, t2) = mor_pair(&mut rng, &sig);
        let models = vec![random_model(&mut rng, &sig, "a", 3), random_model(&mut rng, &sig, "b", 2)];
        let cfg = EqConfig { models: models.clone(), seed, ..EqConfig::default() };
        match eq_decide(&t1, &t2, &sig, &cfg).unwrap() {
            EqVerdict::Equal(_) => {
                for m in &models {
                    prop_assert_ne!(agrees(m, &t1, &t2, &sig), Some(false));
                }
            }
            EqVerdict::NotEqual(_) | EqVerdict::Unknown(_) => {}
        }
    }
}
