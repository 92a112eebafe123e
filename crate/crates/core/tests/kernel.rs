mod common;

use common::mor::{gen_mor, mor_pair, mor_sig, mor_type};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rosetta::kernel::*;

fn b(n: &str) -> TypeExpr {
    TypeExpr::basic(n)
}

fn tn(x: TypeExpr, y: TypeExpr) -> TypeExpr {
    TypeExpr::tensor(x, y)
}

fn hom(x: TypeExpr, y: TypeExpr) -> TypeExpr {
    TypeExpr::hom(x, y)
}

#[test]
fn signature_files() {
    let sig = parse_signature(
        "# chemistry
         mode symmetric
         obj H2 O2 H2O
         alias Fuel = O2 * (H2 * H2)
         gen burn : Fuel -> H2O * H2O
         term twice = burn ; braid[H2O, H2O]",
    )
    .unwrap();
    assert_eq!(sig.mode, Mode::Symmetric);
    assert_eq!(sig.objects, vec!["H2", "O2", "H2O"]);
    let g = sig.generator("burn").unwrap();
    assert_eq!(sig.normalize(&g.dom), tn(b("O2"), tn(b("H2"), b("H2"))));
    let t = sig.term("twice").unwrap();
    assert_eq!(
        infer_dom_cod(t, &sig).unwrap(),
        (tn(b("O2"), tn(b("H2"), b("H2"))), tn(b("H2O"), b("H2O")))
    );
    assert!(validate_signature(&sig).is_empty());

    let undeclared = parse_signature("obj X\ngen f : X -> Y").unwrap();
    assert_eq!(validate_signature(&undeclared).len(), 1);
    let twice = parse_signature("obj X\ngen f : X -> X\ngen f : X -> X").unwrap();
    assert_eq!(validate_signature(&twice).len(), 1);
    assert!(matches!(
        parse_signature("mode monoidal\nobj X\nterm s = braid[X, X]"),
        Err(KernelError::ModeViolation { ctor: "braid", .. })
    ));
    assert!(matches!(
        parse_signature("mode symmetric\nobj X\ngen f : X -> X -o X"),
        Err(KernelError::ModeViolation { .. })
    ));
    assert!(matches!(
        parse_signature("obj X\nfrobnicate"),
        Err(KernelError::Syntax { line: 2, .. })
    ));
}

#[test]
fn type_grammar() {
    let m = Mode::ClosedSymmetric;
    let t = |s: &str| parse_type_free(s, m).unwrap();
    assert_eq!(t("A * B * C"), tn(tn(b("A"), b("B")), b("C")));
    assert_eq!(t("A * B -o C"), hom(tn(b("A"), b("B")), b("C")));
    assert_eq!(t("A -o (B -o C)"), hom(b("A"), hom(b("B"), b("C"))));
    assert_eq!(t("I * A"), tn(TypeExpr::Unit, b("A")));
    assert_eq!(t("1"), TypeExpr::Unit);
    let c = |s: &str| parse_type_free(s, Mode::CompactSymmetric).unwrap();
    assert_eq!(c("A^^"), b("A"));
    assert_eq!(c("A -o B"), tn(TypeExpr::dual(b("A")), b("B")));
    assert!(parse_type_free("A^", Mode::ClosedSymmetric).is_err());
}

/// Every structural constructor at basic types X, Y, Z, in the least mode
/// that has it.
#[test]
fn structural_typing_table() {
    use MorTerm::*;
    let (x, y, z) = (b("X"), b("Y"), b("Z"));
    let i = TypeExpr::Unit;
    let f = || MorTerm::gen("f");
    let g = || MorTerm::gen("g");
    let cases: Vec<(Mode, MorTerm, TypeExpr, TypeExpr)> = vec![
        (Mode::Monoidal, Id(x.clone()), x.clone(), x.clone()),
        (Mode::Monoidal, f().then(g()), x.clone(), z.clone()),
        (
            Mode::Monoidal,
            MorTerm::par(f(), g()),
            tn(x.clone(), y.clone()),
            tn(y.clone(), z.clone()),
        ),
        (
            Mode::Monoidal,
            Assoc(x.clone(), y.clone(), z.clone()),
            tn(tn(x.clone(), y.clone()), z.clone()),
            tn(x.clone(), tn(y.clone(), z.clone())),
        ),
        (
            Mode::Monoidal,
            Unassoc(x.clone(), y.clone(), z.clone()),
            tn(x.clone(), tn(y.clone(), z.clone())),
            tn(tn(x.clone(), y.clone()), z.clone()),
        ),
        (
            Mode::Monoidal,
            LeftU(x.clone()),
            tn(i.clone(), x.clone()),
            x.clone(),
        ),
        (
            Mode::Monoidal,
            UnleftU(x.clone()),
            x.clone(),
            tn(i.clone(), x.clone()),
        ),
        (
            Mode::Monoidal,
            RightU(x.clone()),
            tn(x.clone(), i.clone()),
            x.clone(),
        ),
        (
            Mode::Monoidal,
            UnrightU(x.clone()),
            x.clone(),
            tn(x.clone(), i.clone()),
        ),
        (
            Mode::Braided,
            Braid(x.clone(), y.clone()),
            tn(x.clone(), y.clone()),
            tn(y.clone(), x.clone()),
        ),
        (
            Mode::Braided,
            BraidInv(x.clone(), y.clone()),
            tn(y.clone(), x.clone()),
            tn(x.clone(), y.clone()),
        ),
        (
            Mode::ClosedMonoidal,
            Ev(x.clone(), y.clone()),
            tn(x.clone(), hom(x.clone(), y.clone())),
            y.clone(),
        ),
        (
            Mode::ClosedMonoidal,
            MorTerm::curry(MorTerm::gen("h")),
            y.clone(),
            hom(x.clone(), z.clone()),
        ),
        (
            Mode::ClosedMonoidal,
            MorTerm::uncurry(MorTerm::curry(MorTerm::gen("h"))),
            tn(x.clone(), y.clone()),
            z.clone(),
        ),
        (
            Mode::ClosedMonoidal,
            MorTerm::name_of(f()),
            i.clone(),
            hom(x.clone(), y.clone()),
        ),
        (
            Mode::Cartesian,
            Dup(x.clone()),
            x.clone(),
            tn(x.clone(), x.clone()),
        ),
        (Mode::Cartesian, Del(x.clone()), x.clone(), i.clone()),
        (
            Mode::Cartesian,
            MorTerm::pair(f(), MorTerm::Id(x.clone())),
            x.clone(),
            tn(y.clone(), x.clone()),
        ),
        (
            Mode::Cartesian,
            Proj1(x.clone(), y.clone()),
            tn(x.clone(), y.clone()),
            x.clone(),
        ),
        (
            Mode::Cartesian,
            Proj2(x.clone(), y.clone()),
            tn(x.clone(), y.clone()),
            y.clone(),
        ),
        (
            Mode::CompactSymmetric,
            Cup(x.clone()),
            i.clone(),
            tn(TypeExpr::dual(x.clone()), x.clone()),
        ),
        (
            Mode::CompactSymmetric,
            Cap(x.clone()),
            tn(x.clone(), TypeExpr::dual(x.clone())),
            i.clone(),
        ),
    ];
    let mut seen = std::collections::BTreeSet::new();
    for (mode, t, d, c) in cases {
        let mut sig = Signature::with_objects(mode, &["X", "Y", "Z"]);
        sig.add_generator("f", x.clone(), y.clone());
        sig.add_generator("g", y.clone(), z.clone());
        sig.add_generator("h", tn(x.clone(), y.clone()), z.clone());
        assert_eq!(infer_dom_cod(&t, &sig).unwrap(), (d, c), "{:?}", t);
        let ctor = t.ctor();
        seen.insert(ctor.name());
        assert_eq!(
            ctor.minimal_mode().caps(),
            mode.caps().join(&Caps::default())
        );
        for m in Mode::ALL.iter().filter(|m| !mode_allows(**m, ctor)) {
            assert!(
                infer_dom_cod(&t, &sig.in_mode(*m)).is_err(),
                "{:?} in {}",
                t,
                m
            );
        }
    }
    for c in Ctor::ALL {
        if !matches!(c, Ctor::Gen | Ctor::HomType | Ctor::DualType) {
            assert!(seen.contains(c.name()), "no case for {}", c.name());
        }
    }
}

#[test]
fn compact_curry_is_dual_tensor() {
    let mut sig = Signature::with_objects(Mode::CompactSymmetric, &["X", "Y", "Z"]);
    sig.add_generator("h", tn(b("X"), b("Y")), b("Z"));
    let (d, c) = infer_dom_cod(&MorTerm::curry(MorTerm::gen("h")), &sig).unwrap();
    assert_eq!(d, b("Y"));
    assert_eq!(c, tn(TypeExpr::dual(b("X")), b("Z")));
    assert_eq!(sig.normalize(&hom(b("X"), b("Z"))), c);
}

#[test]
fn mismatches_are_reported() {
    let sig = mor_sig(Mode::Symmetric);
    let bad = MorTerm::gen("f").then(MorTerm::gen("p"));
    assert!(matches!(
        infer_dom_cod(&bad, &sig),
        Err(KernelError::Mismatch { .. })
    ));
    assert!(matches!(
        infer_dom_cod(&MorTerm::gen("zzz"), &sig),
        Err(KernelError::UnknownGenerator(_))
    ));
    let parsed = parse_mor("f ; p", &sig).unwrap();
    assert!(infer_dom_cod(&parsed, &sig).is_err());
    assert!(matches!(
        parse_mor("f ; zzz", &sig),
        Err(KernelError::UnknownGenerator(_))
    ));
    assert!(matches!(
        parse_mor("dup[A]", &sig),
        Err(KernelError::ModeViolation { ctor: "dup", .. })
    ));
}

#[test]
fn reassociation_maps() {
    let (x, y, z) = (b("X"), b("Y"), b("Z"));
    let sig = Signature::with_objects(Mode::Monoidal, &["X", "Y", "Z"]);
    let from = tn(tn(x.clone(), TypeExpr::Unit), tn(y.clone(), z.clone()));
    let to = tn(x.clone(), tn(tn(y.clone(), TypeExpr::Unit), z.clone()));
    let r = reassoc(&from, &to).unwrap();
    assert_eq!(infer_dom_cod(&r, &sig).unwrap(), (from.clone(), to.clone()));
    assert!(r.is_structural());
    let back = inverse(&r).unwrap();
    assert_eq!(infer_dom_cod(&back, &sig).unwrap(), (to, from));
    assert!(reassoc(&x, &y).is_none());
    let xs = vec![x.clone(), y.clone(), z.clone()];
    let p = permutation_term(&xs, &[2, 0, 1]);
    let psig = sig.in_mode(Mode::Symmetric);
    assert_eq!(
        infer_dom_cod(&p, &psig).unwrap(),
        (TypeExpr::tensor_all(&xs), TypeExpr::tensor_all(&[z, x, y]))
    );
}

fn random_term(seed: u64) -> (Signature, MorTerm) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mode = Mode::ALL[(seed % 9) as usize];
    let sig = mor_sig(mode);
    let d = mor_type(&mut rng, mode);
    let t = gen_mor(&mut rng, &sig, &d, 1 + (seed as usize >> 8) % 10);
    (sig, t)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn printed_terms_parse_back(seed in any::<u64>()) {
        let (sig, t) = random_term(seed);
        let src = format!("{}", t.display_in(sig.mode));
        let back = parse_mor(&src, &sig);
        prop_assert_eq!(back.as_ref().ok(), Some(&t), "{}", src);
        let printed_again = format!("{}", back.unwrap().display_in(sig.mode));
        prop_assert_eq!(printed_again, src);
    }

    #[test]
    fn typing_is_monotone_in_the_mode(seed in any::<u64>()) {
        let (sig, t) = random_term(seed);
        let (d, c) = infer_dom_cod(&t, &sig).unwrap();
        for m in Mode::ALL {
            if sig.mode.le(m) {
                let (d2, c2) = infer_dom_cod(&t, &sig.in_mode(m)).unwrap();
                if m.caps().compact && !sig.mode.caps().compact {
                    // homs become dual tensors
                    prop_assert_eq!(d2, d.compact_normal());
                    prop_assert_eq!(c2, c.compact_normal());
                } else {
                    prop_assert_eq!(&d2, &d);
                    prop_assert_eq!(&c2, &c);
                }
            }
        }
    }

    #[test]
    fn generated_pairs_share_endpoints(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mode = Mode::ALL[(seed % 9) as usize];
        let sig = mor_sig(mode);
        let (t1, t2) = mor_pair(&mut rng, &sig);
        prop_assert_eq!(infer_dom_cod(&t1, &sig).unwrap(), infer_dom_cod(&t2, &sig).unwrap());
    }
}
