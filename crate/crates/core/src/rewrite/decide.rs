use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::kernel::{infer_dom_cod, MorTerm, Signature, TypeExpr};
use crate::models::{refute_eq, Model, ModelKind, Refutation};

use super::graph::{Desc, Graph};
use super::planar;
use super::strict::{strictify, StrictTerm};
use super::RewriteError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EqMethod {
    NormalForm,
    AxiomPath,
}

/// A model and the first basis input on which the two sides differ there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub model: String,
    pub input: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EqVerdict {
    Equal(EqMethod),
    NotEqual(Witness),
    Unknown(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Normal forms and rewriting only.
    Nf,
    /// Normal forms, rewriting, then random countermodels.
    Search,
    /// Attached models only.
    Model,
    /// Everything.
    Full,
}

impl Strategy {
    pub fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "nf" => Strategy::Nf,
            "search" => Strategy::Search,
            "model" => Strategy::Model,
            "full" => Strategy::Full,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug)]
pub struct EqConfig {
    pub strategy: Strategy,
    pub fuel: usize,
    pub seed: u64,
    pub models: Vec<Model>,
}

impl Default for EqConfig {
    fn default() -> Self {
        EqConfig {
            strategy: Strategy::Full,
            fuel: 10_000,
            seed: 0,
            models: Vec::new(),
        }
    }
}

/// Canonical description of a free symmetric monoidal morphism: generator boxes in
/// their earliest layers, each brought to the front by one permutation, and a
/// final permutation.
pub fn symmetric_normal_form(s: &StrictTerm) -> Result<StrictTerm, RewriteError> {
    if !s.is_symmetric_fragment() {
        return Err(RewriteError::NotSymmetricFragment(format!("{}", s)));
    }
    let g = Graph::from_strict(s, false)?;
    Ok(g.canonical().0.to_strict())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub term: MorTerm,
    pub steps: usize,
    /// False when fuel ran out before a fixpoint.
    pub normal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Canon {
    Graph(Desc),
    Planar(StrictTerm),
}

struct Engine<'a> {
    sig: &'a Signature,
}

impl Engine<'_> {
    fn sharing(&self) -> bool {
        self.sig.mode.caps().cartesian
    }

    fn run(&self, s: &StrictTerm, fuel: usize) -> Result<(Canon, usize, bool), RewriteError> {
        if self.sig.mode.caps().symmetric {
            let mut g = Graph::from_strict(s, self.sharing())?;
            let (steps, done) = g.normalize(fuel);
            Ok((Canon::Graph(g.canonical().0), steps, done))
        } else {
            let (p, steps, done) = planar::normalize(s, fuel);
            Ok((Canon::Planar(p), steps, done))
        }
    }

    fn readback(&self, c: &Canon, dom: &TypeExpr, cod: &TypeExpr) -> MorTerm {
        match c {
            Canon::Graph(d) => d.to_mor(dom, cod, self.sig, self.sharing()),
            Canon::Planar(p) => planar::to_mor(p, dom, cod, self.sig),
        }
    }
}

/// Rewrites with beta, eta, zig-zag straightening and the cartesian copy laws,
/// modulo interchange and the symmetry, and reads the result back as a term
/// with the same domain and codomain.
pub fn beta_eta_normalize(
    t: &MorTerm,
    sig: &Signature,
    fuel: usize,
) -> Result<Normalized, RewriteError> {
    let (dom, cod) = infer_dom_cod(t, sig)?;
    let s = strictify(t, sig)?;
    let e = Engine { sig };
    let (c, steps, normal) = e.run(&s, fuel)?;
    Ok(Normalized {
        term: e.readback(&c, &dom, &cod),
        steps,
        normal,
    })
}

/// Searches the given models, then (if `auto`) random models of every kind
/// valid for the mode, for an input on which the two terms differ.
fn find_witness(
    t1: &MorTerm,
    t2: &MorTerm,
    sig: &Signature,
    cfg: &EqConfig,
    attached: bool,
    auto: bool,
) -> Option<Witness> {
    let mode = sig.mode;
    if attached {
        for m in cfg.models.iter().filter(|m| m.kind.covers(mode)) {
            if let Ok(Refutation::Refuted { input }) = refute_eq(m, t1, t2, sig) {
                return Some(Witness {
                    model: m.name.clone(),
                    input,
                });
            }
        }
    }
    if auto {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        for kind in [ModelKind::Matrix, ModelKind::Perm, ModelKind::FinSet] {
            if !kind.covers(mode) {
                continue;
            }
            for trial in 0..4 {
                let max = match kind {
                    ModelKind::Matrix => 2 + trial % 2,
                    _ => 3,
                };
                let mut m = Model::new(format!("random-{}-{}", kind.name(), trial), kind);
                if m.randomize(sig, &mut rng, max).is_err() {
                    continue;
                }
                if let Ok(Refutation::Refuted { input }) = refute_eq(&m, t1, t2, sig) {
                    return Some(Witness {
                        model: m.name,
                        input,
                    });
                }
            }
        }
    }
    None
}

/// Decides equality of two parallel terms by the ladder: complete normal forms
/// where available, rewriting to canonical forms, then countermodels.
///
/// `Equal` is only returned when both sides have the same canonical form, so it
/// holds in every model; `NotEqual` always names a model and input.
pub fn eq_decide(
    t1: &MorTerm,
    t2: &MorTerm,
    sig: &Signature,
    cfg: &EqConfig,
) -> Result<EqVerdict, RewriteError> {
    let (d1, c1) = infer_dom_cod(t1, sig)?;
    let (d2, c2) = infer_dom_cod(t2, sig)?;
    if d1 != d2 || c1 != c2 {
        let mode = sig.mode;
        return Err(RewriteError::TypeMismatch {
            lhs: format!("{} -> {}", d1.display_in(mode), c1.display_in(mode)),
            rhs: format!("{} -> {}", d2.display_in(mode), c2.display_in(mode)),
        });
    }
    if cfg.strategy == Strategy::Model {
        if cfg.models.is_empty() {
            return Err(RewriteError::NoStrategy(
                "the model strategy needs at least one model".into(),
            ));
        }
        return Ok(match find_witness(t1, t2, sig, cfg, true, false) {
            Some(w) => EqVerdict::NotEqual(w),
            None => EqVerdict::Unknown("no attached model distinguishes the terms".into()),
        });
    }
    let auto = cfg.strategy != Strategy::Nf;
    let attached = cfg.strategy == Strategy::Full;
    let caps = sig.mode.caps();
    let s1 = strictify(t1, sig)?;
    let s2 = strictify(t2, sig)?;

    // rung 1: complete normal forms
    let mut distinct = false;
    if caps.symmetric && s1.is_symmetric_fragment() && s2.is_symmetric_fragment() {
        let (n1, e1) = Graph::from_strict(&s1, false)?.canonical();
        let (n2, e2) = Graph::from_strict(&s2, false)?.canonical();
        if n1 == n2 {
            return Ok(EqVerdict::Equal(EqMethod::NormalForm));
        }
        // extra equations of cartesian modes can still identify them
        distinct = e1 && e2 && !caps.cartesian;
    } else if !caps.symmetric && planar::generators_only(&s1) && planar::generators_only(&s2) {
        if planar::canonical(&s1) == planar::canonical(&s2) {
            return Ok(EqVerdict::Equal(EqMethod::NormalForm));
        }
        distinct = sig.mode == crate::kernel::Mode::Monoidal;
    } else if caps.braided && !caps.symmetric {
        if let (Some(a1), Some(a2)) = (
            planar::artin_action(&s1, 4096),
            planar::artin_action(&s2, 4096),
        ) {
            return Ok(match (0..a1.len()).find(|&k| a1[k] != a2[k]) {
                None => EqVerdict::Equal(EqMethod::NormalForm),
                Some(k) => EqVerdict::NotEqual(Witness {
                    model: "artin".into(),
                    input: k,
                }),
            });
        }
    }
    if distinct {
        return Ok(match find_witness(t1, t2, sig, cfg, true, true) {
            Some(w) => EqVerdict::NotEqual(w),
            None => {
                EqVerdict::Unknown("normal forms differ but no model separates the terms".into())
            }
        });
    }

    // rung 2: rewriting to canonical forms
    let e = Engine { sig };
    let (k1, _, done1) = e.run(&s1, cfg.fuel)?;
    let (k2, _, done2) = e.run(&s2, cfg.fuel)?;
    if k1 == k2 {
        return Ok(EqVerdict::Equal(EqMethod::AxiomPath));
    }

    // rung 3: countermodels
    if let Some(w) = find_witness(t1, t2, sig, cfg, attached, auto) {
        return Ok(EqVerdict::NotEqual(w));
    }
    let why = if done1 && done2 {
        "canonical forms differ and no model separates the terms".to_string()
    } else {
        format!("rewriting ran out of fuel ({} steps)", cfg.fuel)
    };
    Ok(EqVerdict::Unknown(why))
}
