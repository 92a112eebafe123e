use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{compose, dagger, eval_mor, first_difference, Model, ModelError, ModelKind};
use crate::kernel::{Mode, MorTerm, Signature, TypeExpr};
use crate::rewrite::coherence_axioms;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawResult {
    pub law: String,
    pub sample: usize,
    pub pass: bool,
    /// First basis input where the two sides differ.
    pub witness: Option<usize>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LawReport {
    pub results: Vec<LawResult>,
}

impl LawReport {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawResult> {
        self.results.iter().filter(|r| !r.pass)
    }
}

const METAVARS: [&str; 4] = ["W", "X", "Y", "Z"];

fn max_size(kind: ModelKind) -> usize {
    match kind {
        ModelKind::FinSet => 3,
        _ => 4,
    }
}

fn uses_only_supported(kind: ModelKind, t: &MorTerm) -> bool {
    let mut ok = true;
    t.for_each_node(&mut |n| ok &= kind.supports(n.ctor()));
    t.for_each_type(&mut |x| {
        ok &= (!x.mentions_hom() || kind != ModelKind::Perm)
            && (!x.mentions_dual() || kind == ModelKind::Matrix)
    });
    ok
}

/// Assigns random carriers to the metavariables the model does not fix.
fn sample_model<R: Rng>(m: &Model, rng: &mut R) -> Model {
    let mut s = m.clone();
    let lo = if m.kind == ModelKind::Perm { 0 } else { 1 };
    for v in METAVARS {
        if !m.objects.contains_key(v) {
            s.objects
                .insert(v.to_string(), rng.gen_range(lo..=max_size(m.kind)));
        }
    }
    s
}

fn compare(
    law: &str,
    sample: usize,
    a: Result<super::ConcreteMor, ModelError>,
    b: Result<super::ConcreteMor, ModelError>,
) -> LawResult {
    match (a, b) {
        (Ok(a), Ok(b)) => {
            let witness = first_difference(&a, &b);
            LawResult {
                law: law.to_string(),
                sample,
                pass: witness.is_none(),
                witness,
                error: None,
            }
        }
        (Err(e), _) | (_, Err(e)) => LawResult {
            law: law.to_string(),
            sample,
            pass: false,
            witness: None,
            error: Some(e.to_string()),
        },
    }
}

fn law_signature(mode: Mode, kind: ModelKind) -> Signature {
    let mut sig = Signature::with_objects(mode, &METAVARS);
    let b = TypeExpr::basic;
    if kind == ModelKind::Perm {
        for f in ["f", "g", "h"] {
            sig.add_generator(f, b("X"), b("X"));
        }
        sig.add_generator("k", b("Y"), b("Y"));
    } else {
        sig.add_generator("f", b("X"), b("Y"));
        sig.add_generator("g", b("Y"), b("Z"));
        sig.add_generator("h", b("Z"), b("W"));
        sig.add_generator("k", b("W"), b("X"));
    }
    sig
}

/// Checks every axiom of `mode` the model can express, plus functoriality and
/// (for matrices and permutations) the dagger laws, on `samples` random carrier
/// assignments and generator bindings. Results are ordered by law, then sample.
pub fn check_model_laws(m: &Model, mode: Mode, samples: usize, seed: u64) -> LawReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let axioms: Vec<_> = coherence_axioms(mode)
        .into_iter()
        .filter(|a| uses_only_supported(m.kind, &a.lhs) && uses_only_supported(m.kind, &a.rhs))
        .collect();
    let sig = law_signature(mode, m.kind);
    let mut results = Vec::new();
    for sample in 0..samples {
        let mut sm = sample_model(m, &mut rng);
        for ax in &axioms {
            let (l, r) = ax.instantiate(&|_| None);
            results.push(compare(
                ax.name,
                sample,
                eval_mor(&sm, &l, &sig),
                eval_mor(&sm, &r, &sig),
            ));
        }
        sm.generators.clear();
        if let Err(e) = sm.randomize(&sig, &mut rng, max_size(m.kind)) {
            results.push(LawResult {
                law: "bindings".into(),
                sample,
                pass: false,
                witness: None,
                error: Some(e.to_string()),
            });
            continue;
        }
        let g = MorTerm::gen;
        let (f_, g_, h_, k_) = (g("f"), g("g"), g("h"), g("k"));
        let (x, y) = (TypeExpr::basic("X"), TypeExpr::basic("Y"));
        let ev = |t: &MorTerm| eval_mor(&sm, t, &sig);
        let (two, three, inter_l, inter_r, unit_l, unit_r) = if m.kind == ModelKind::Perm {
            (
                MorTerm::seq(f_.clone(), MorTerm::seq(g_.clone(), h_.clone())),
                MorTerm::seq(MorTerm::seq(f_.clone(), g_.clone()), h_.clone()),
                MorTerm::seq(
                    MorTerm::par(f_.clone(), k_.clone()),
                    MorTerm::par(g_.clone(), MorTerm::Id(y.clone())),
                ),
                MorTerm::par(MorTerm::seq(f_.clone(), g_.clone()), k_.clone()),
                MorTerm::seq(MorTerm::Id(x.clone()), f_.clone()),
                MorTerm::seq(f_.clone(), MorTerm::Id(x.clone())),
            )
        } else {
            (
                MorTerm::seq(f_.clone(), MorTerm::seq(g_.clone(), h_.clone())),
                MorTerm::seq(MorTerm::seq(f_.clone(), g_.clone()), h_.clone()),
                MorTerm::seq(
                    MorTerm::par(f_.clone(), k_.clone()),
                    MorTerm::par(g_.clone(), MorTerm::Id(x.clone())),
                ),
                MorTerm::par(MorTerm::seq(f_.clone(), g_.clone()), k_.clone()),
                MorTerm::seq(MorTerm::Id(x.clone()), f_.clone()),
                MorTerm::seq(f_.clone(), MorTerm::Id(y.clone())),
            )
        };
        results.push(compare("functor-assoc", sample, ev(&two), ev(&three)));
        results.push(compare(
            "functor-interchange",
            sample,
            ev(&inter_l),
            ev(&inter_r),
        ));
        results.push(compare("functor-unit-left", sample, ev(&unit_l), ev(&f_)));
        results.push(compare("functor-unit-right", sample, ev(&unit_r), ev(&f_)));
        if m.kind != ModelKind::FinSet {
            let fv = ev(&f_);
            let twice = fv
                .clone()
                .and_then(|v| dagger(&sm, &v))
                .and_then(|v| dagger(&sm, &v));
            results.push(compare("dagger-involution", sample, twice, fv));
            let fg = MorTerm::seq(f_.clone(), g_.clone());
            let lhs = ev(&fg).and_then(|v| dagger(&sm, &v));
            let rhs = ev(&g_).and_then(|gv| dagger(&sm, &gv)).and_then(|gd| {
                ev(&f_)
                    .and_then(|fv| dagger(&sm, &fv))
                    .map(|fd| compose(&gd, &fd))
            });
            results.push(compare("dagger-contravariant", sample, lhs, rhs));
        }
    }
    results.sort_by(|a, b| (&a.law, a.sample).cmp(&(&b.law, b.sample)));
    LawReport { results }
}
