use alloc::string::String;
use alloc::vec::Vec;

use super::term::MorTerm;
use super::types::{Mode, TypeExpr};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub dom: TypeExpr,
    pub cod: TypeExpr,
}

/// Objects, aliases, generators and named terms over a fixed mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    pub mode: Mode,
    pub objects: Vec<String>,
    pub aliases: Vec<(String, TypeExpr)>,
    pub generators: Vec<Generator>,
    pub terms: Vec<(String, MorTerm)>,
}

impl Signature {
    pub fn new(mode: Mode) -> Self {
        Signature {
            mode,
            objects: Vec::new(),
            aliases: Vec::new(),
            generators: Vec::new(),
            terms: Vec::new(),
        }
    }

    pub fn with_objects<S: AsRef<str>>(mode: Mode, objects: &[S]) -> Self {
        let mut s = Signature::new(mode);
        for o in objects {
            s.add_object(o.as_ref());
        }
        s
    }

    /// Adds the object unless it is already declared.
    pub fn add_object(&mut self, name: &str) {
        if !self.has_object(name) {
            self.objects.push(String::from(name));
        }
    }

    /// Adds a generator, normalizing its types for the mode. Objects it mentions are declared on the fly.
    pub fn add_generator(&mut self, name: &str, dom: TypeExpr, cod: TypeExpr) {
        let mut names = Vec::new();
        dom.basics(&mut names);
        cod.basics(&mut names);
        for n in names {
            self.add_object(&n);
        }
        let (dom, cod) = (self.normalize(&dom), self.normalize(&cod));
        self.generators.push(Generator {
            name: String::from(name),
            dom,
            cod,
        });
    }

    pub fn has_object(&self, name: &str) -> bool {
        self.objects.iter().any(|o| o == name)
    }

    pub fn alias(&self, name: &str) -> Option<&TypeExpr> {
        self.aliases.iter().find(|(n, _)| n == name).map(|(_, t)| t)
    }

    pub fn generator(&self, name: &str) -> Option<&Generator> {
        self.generators.iter().find(|g| g.name == name)
    }

    pub fn term(&self, name: &str) -> Option<&MorTerm> {
        self.terms.iter().find(|(n, _)| n == name).map(|(_, t)| t)
    }

    /// Mode-dependent canonical form of a type (compact modes collapse homs and double duals).
    pub fn normalize(&self, t: &TypeExpr) -> TypeExpr {
        if self.mode.caps().compact {
            t.compact_normal()
        } else {
            t.clone()
        }
    }

    /// Same signature viewed in another mode.
    pub fn in_mode(&self, mode: Mode) -> Signature {
        let mut s = self.clone();
        s.mode = mode;
        if mode.caps().compact {
            for g in &mut s.generators {
                g.dom = g.dom.compact_normal();
                g.cod = g.cod.compact_normal();
            }
        }
        s
    }
}
