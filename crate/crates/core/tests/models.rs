mod common;

use common::mor::{cod, gen_mor, mor_sig, mor_type, random_model};
use num_complex::Complex;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rosetta::kernel::TypeExpr;
use rosetta::kernel::{parse_mor, parse_signature, Mode, MorTerm, Signature};
use rosetta::models::{
    check_model_laws, dagger, eval_mor, matrix::Matrix, refute_eq, ConcreteMor, Func, Model,
    ModelError, ModelKind, Refutation, Scalar,
};
use rosetta::models::{compose, tensor};

fn sig(src: &str) -> Signature {
    parse_signature(src).unwrap()
}

fn mor(s: &Signature, src: &str) -> MorTerm {
    parse_mor(src, s).unwrap()
}

fn int(n: i64) -> Scalar {
    Complex::new(
        BigRational::from_integer(n.into()),
        BigRational::from_integer(0.into()),
    )
}

fn mat(m: &ConcreteMor) -> &Matrix {
    match m {
        ConcreteMor::Matrix(m) => m,
        _ => panic!("not a matrix"),
    }
}

#[test]
fn braid_is_index_swap() {
    let s = sig("mode symmetric\nobj X Y\n");
    let m = Model::new("m", ModelKind::Matrix)
        .with_object("X", 2)
        .with_object("Y", 3);
    let b = eval_mor(&m, &mor(&s, "braid[X,Y]"), &s).unwrap();
    let b = mat(&b);
    assert_eq!((b.rows, b.cols), (6, 6));
    // e_i (x) e_j sits at 3i+j in the domain and at 2j+i in the codomain
    for i in 0..2 {
        for j in 0..3 {
            for r in 0..6 {
                let want = if r == 2 * j + i { int(1) } else { int(0) };
                assert_eq!(b.get(r, 3 * i + j), want);
            }
        }
    }
}

#[test]
fn cup_is_sum_of_diagonal_pairs() {
    let s = sig("mode compact-symmetric\nobj X\n");
    let m = Model::new("m", ModelKind::Matrix).with_object("X", 2);
    let c = eval_mor(&m, &mor(&s, "cup[X]"), &s).unwrap();
    let c = mat(&c);
    assert_eq!((c.rows, c.cols), (4, 1));
    let col: Vec<_> = (0..4).map(|r| c.get(r, 0)).collect();
    assert_eq!(col, vec![int(1), int(0), int(0), int(1)]);
    let cap = eval_mor(&m, &mor(&s, "cap[X]"), &s).unwrap();
    assert_eq!(mat(&cap), &c.dagger());
}

#[test]
fn zigzag_is_identity_for_small_dims() {
    let s = sig("mode compact-symmetric\nobj X\n");
    let z1 = mor(
        &s,
        "unright[X] ; (id[X] * cup[X]) ; unassoc[X, X^, X] ; (cap[X] * id[X]) ; left[X]",
    );
    let z2 = mor(
        &s,
        "unleft[X^] ; (cup[X] * id[X^]) ; assoc[X^, X, X^] ; (id[X^] * cap[X]) ; right[X^]",
    );
    for d in 1..=6 {
        let m = Model::new("m", ModelKind::Matrix).with_object("X", d);
        for z in [&z1, &z2] {
            assert_eq!(mat(&eval_mor(&m, z, &s).unwrap()), &Matrix::identity(d));
        }
    }
}

#[test]
fn burn_binding_shape() {
    let s = sig("mode symmetric\nobj H2 O2 H2O\ngen burn : O2 * (H2 * H2) -> H2O * H2O\n");
    let mut m = Model::new("chem", ModelKind::Matrix)
        .with_object("H2", 2)
        .with_object("O2", 2)
        .with_object("H2O", 3);
    // 3*3 rows, 2*(2*2) columns
    let ok = Matrix::zeros(9, 8);
    assert!(m.bind("burn", ConcreteMor::Matrix(ok), &s).is_ok());
    let bad = Matrix::zeros(9, 7);
    let e = m.bind("burn", ConcreteMor::Matrix(bad), &s).unwrap_err();
    assert!(matches!(
        e,
        ModelError::Shape {
            expected: (9, 8),
            actual: (9, 7),
            ..
        }
    ));
}

#[test]
fn structural_terms_without_generators() {
    let s = sig("mode symmetric\nobj X Y\n");
    let m = Model::new("m", ModelKind::Matrix)
        .with_object("X", 2)
        .with_object("Y", 2);
    assert!(m.missing(&s).is_empty());
    assert_eq!(
        mat(&eval_mor(&m, &mor(&s, "assoc[X,Y,X]"), &s).unwrap()),
        &Matrix::identity(8)
    );
}

#[test]
fn dagger_behaviour() {
    let s = sig("mode monoidal\nobj X Y\ngen f : X -> Y\n");
    let mut m = Model::new("m", ModelKind::Matrix)
        .with_object("X", 3)
        .with_object("Y", 2);
    let mut f = Matrix::zeros(2, 3);
    f.set(
        0,
        1,
        Complex::new(
            BigRational::new(1.into(), 2.into()),
            BigRational::from_integer(1.into()),
        ),
    );
    f.set(1, 2, int(-2));
    m.bind("f", ConcreteMor::Matrix(f.clone()), &s).unwrap();
    let fv = eval_mor(&m, &mor(&s, "f"), &s).unwrap();
    let fd = dagger(&m, &fv).unwrap();
    let fdm = mat(&fd);
    assert_eq!((fdm.rows, fdm.cols), (3, 2));
    assert_eq!(
        fdm.get(1, 0),
        Complex::new(
            BigRational::new(1.into(), 2.into()),
            BigRational::from_integer((-1).into())
        )
    );
    assert_eq!(dagger(&m, &fd).unwrap(), fv);
    let fs = Model::new("set", ModelKind::FinSet).with_object("X", 2);
    let v = ConcreteMor::Table(Func {
        dom: 2,
        cod: 2,
        table: vec![1, 0],
    });
    assert!(matches!(dagger(&fs, &v), Err(ModelError::NoDagger(_))));
}

#[test]
fn law_reports() {
    let m = Model::new("m", ModelKind::Matrix);
    let r = check_model_laws(&m, Mode::CompactSymmetric, 10, 7);
    assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
    let p = Model::new("p", ModelKind::Perm);
    let r = check_model_laws(&p, Mode::Symmetric, 10, 7);
    assert!(r.all_pass());
    assert!(r.results.iter().any(|x| x.law == "symmetry"));
    let f = Model::new("f", ModelKind::FinSet);
    let r = check_model_laws(&f, Mode::CartesianClosed, 10, 7);
    assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
    assert!(r.results.iter().any(|x| x.law == "dup-del"));
}

#[test]
fn corrupted_cup_breaks_zigzag() {
    // unit replaced by the swap pattern e0(x)e1 + e1(x)e0
    let mut bad = Matrix::zeros(4, 1);
    bad.set(1, 0, int(1));
    bad.set(2, 0, int(1));
    let mut m = Model::new("bad", ModelKind::Matrix).with_object("X", 2);
    m.cups.insert("X".into(), bad);
    let s = sig("mode compact-symmetric\nobj X\n");
    let z = mor(
        &s,
        "unright[X] ; (id[X] * cup[X]) ; unassoc[X, X^, X] ; (cap[X] * id[X]) ; left[X]",
    );
    assert_ne!(mat(&eval_mor(&m, &z, &s).unwrap()), &Matrix::identity(2));
    let r = check_model_laws(&m, Mode::CompactSymmetric, 3, 1);
    let zz: Vec<_> = r
        .failures()
        .filter(|x| x.law.starts_with("zigzag"))
        .collect();
    assert!(!zz.is_empty());
    assert!(zz.iter().all(|x| x.witness.is_some()));
}

#[test]
fn refutations() {
    let s = sig("mode symmetric\nobj X\n");
    let m = Model::new("m", ModelKind::Matrix).with_object("X", 2);
    assert_eq!(
        refute_eq(&m, &mor(&s, "braid[X,X]"), &mor(&s, "id[X * X]"), &s).unwrap(),
        Refutation::Refuted { input: 1 }
    );
    let c = sig("mode cartesian\nobj X\n");
    let f = Model::new("f", ModelKind::FinSet).with_object("X", 3);
    let r = refute_eq(
        &f,
        &mor(&c, "dup[X] ; (id[X] * del[X]) ; right[X]"),
        &mor(&c, "id[X]"),
        &c,
    )
    .unwrap();
    assert_eq!(r, Refutation::Consistent);
}

#[test]
fn name_then_ev_recovers_morphism() {
    let s = sig("mode closed-symmetric\nobj X Y\ngen f : X -> Y\n");
    let mut m = Model::new("m", ModelKind::Matrix)
        .with_object("X", 2)
        .with_object("Y", 3);
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(3);
    m.randomize(&s, &mut rng, 3).unwrap();
    let t = mor(&s, "unright[X] ; (id[X] * name(f)) ; ev[X,Y]");
    assert_eq!(
        eval_mor(&m, &t, &s).unwrap(),
        eval_mor(&m, &mor(&s, "f"), &s).unwrap()
    );
}

fn eval_or_skip(m: &Model, t: &MorTerm, s: &Signature) -> Option<ConcreteMor> {
    match eval_mor(m, t, s) {
        Ok(v) => Some(v),
        Err(ModelError::TooLarge(_)) => None,
        Err(e) => panic!("{}: {}", t.display_in(s.mode), e),
    }
}

fn identity_value(m: &Model, t: &TypeExpr) -> ConcreteMor {
    let n = m.size(t).unwrap();
    match m.kind {
        ModelKind::Matrix => ConcreteMor::Matrix(Matrix::identity(n)),
        ModelKind::FinSet => ConcreteMor::Table(Func {
            dom: n,
            cod: n,
            table: (0..n).collect(),
        }),
        ModelKind::Perm => ConcreteMor::Perm((0..n).collect()),
    }
}

fn setup(seed: u64) -> (Signature, Model, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = mor_sig(Mode::ALL[(seed % 9) as usize]);
    let m = random_model(&mut rng, &s, "m", 3);
    (s, m, rng)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn evaluation_is_functorial(seed in any::<u64>()) {
        let (s, m, mut rng) = setup(seed);
        let d = mor_type(&mut rng, s.mode);
        let f = gen_mor(&mut rng, &s, &d, 4);
        let g = gen_mor(&mut rng, &s, &cod(&f, &s), 4);
        let (Some(vf), Some(vg), Some(vfg)) =
            (eval_or_skip(&m, &f, &s), eval_or_skip(&m, &g, &s), eval_or_skip(&m, &f.clone().then(g), &s))
        else {
            return Ok(());
        };
        prop_assert_eq!(vfg, compose(&vf, &vg));
        prop_assert_eq!(eval_mor(&m, &MorTerm::Id(d.clone()), &s).unwrap(), identity_value(&m, &d));
    }

    #[test]
    fn evaluation_is_monoidal(seed in any::<u64>()) {
        let (s, m, mut rng) = setup(seed);
        let (x, y) = (mor_type(&mut rng, s.mode), mor_type(&mut rng, s.mode));
        let xy = TypeExpr::tensor(x.clone(), y.clone());
        prop_assert_eq!(m.size(&xy).unwrap(), m.size(&x).unwrap() * m.size(&y).unwrap());
        let f = gen_mor(&mut rng, &s, &x, 4);
        let g = gen_mor(&mut rng, &s, &y, 4);
        let (Some(vf), Some(vg), Some(v)) =
            (eval_or_skip(&m, &f, &s), eval_or_skip(&m, &g, &s), eval_or_skip(&m, &MorTerm::par(f, g), &s))
        else {
            return Ok(());
        };
        prop_assert_eq!(v, tensor(&vf, &vg));
    }

    #[test]
    fn structure_maps_are_identities(seed in any::<u64>()) {
        let (s, m, mut rng) = setup(seed);
        let (x, y, z) = (mor_type(&mut rng, s.mode), mor_type(&mut rng, s.mode), mor_type(&mut rng, s.mode));
        let ts = [
            MorTerm::Assoc(x.clone(), y.clone(), z.clone()),
            MorTerm::Unassoc(x.clone(), y.clone(), z.clone()),
            MorTerm::LeftU(x.clone()),
            MorTerm::UnleftU(x.clone()),
            MorTerm::RightU(y.clone()),
            MorTerm::UnrightU(y.clone()),
        ];
        for t in ts {
            let (d, _) = rosetta::kernel::infer_dom_cod(&t, &s).unwrap();
            if let Some(v) = eval_or_skip(&m, &t, &s) {
                prop_assert_eq!(v, identity_value(&m, &d));
            }
        }
    }

    #[test]
    fn dagger_laws(seed in any::<u64>(), perm in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (s, kind) = if perm {
            (sig("mode symmetric\nobj A\ngen p : A -> A\ngen q : A -> A\ngen r : A * A -> A * A\n"), ModelKind::Perm)
        } else {
            (mor_sig(Mode::CompactSymmetric), ModelKind::Matrix)
        };
        let mut m = Model::new("m", kind);
        m.randomize(&s, &mut rng, 3).unwrap();
        let d = if perm { TypeExpr::tensor(TypeExpr::basic("A"), TypeExpr::basic("A")) } else { mor_type(&mut rng, s.mode) };
        let f = gen_mor(&mut rng, &s, &d, 4);
        let g = gen_mor(&mut rng, &s, &cod(&f, &s), 4);
        let vf = eval_mor(&m, &f, &s).unwrap();
        let vg = eval_mor(&m, &g, &s).unwrap();
        let df = dagger(&m, &vf).unwrap();
        prop_assert_eq!(&dagger(&m, &df).unwrap(), &vf);
        let dfg = dagger(&m, &compose(&vf, &vg)).unwrap();
        prop_assert_eq!(dfg, compose(&dagger(&m, &vg).unwrap(), &df));
    }
}
