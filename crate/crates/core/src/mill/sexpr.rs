use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{MillError, ProofTree, Rule, Sequent};
use crate::kernel::{parse_type_in, KernelError, Mode, Signature};

#[derive(Clone, Debug, PartialEq)]
enum Atom {
    Open,
    Close,
    Word(String),
    Str(String),
}

#[derive(Clone, Debug)]
struct Tok {
    atom: Atom,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Tok>, MillError> {
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut chars = src.chars().peekable();
    while let Some(c) = chars.next() {
        let (l, cl) = (line, col);
        col += 1;
        match c {
            '\n' => {
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {}
            '#' | ';' => {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    chars.next();
                }
            }
            '(' => out.push(Tok {
                atom: Atom::Open,
                line: l,
                col: cl,
            }),
            ')' => out.push(Tok {
                atom: Atom::Close,
                line: l,
                col: cl,
            }),
            '"' => {
                let mut s = String::new();
                loop {
                    match chars.next() {
                        Some('"') => break,
                        Some('\n') | None => {
                            return Err(KernelError::Syntax {
                                line: l,
                                col: cl,
                                msg: "unterminated string".into(),
                            }
                            .into())
                        }
                        Some(ch) => s.push(ch),
                    }
                }
                col += s.chars().count() + 1;
                out.push(Tok {
                    atom: Atom::Str(s),
                    line: l,
                    col: cl,
                });
            }
            _ => {
                let mut w = String::from(c);
                while let Some(&n) = chars.peek() {
                    if n.is_whitespace() || matches!(n, '(' | ')' | '"') {
                        break;
                    }
                    w.push(n);
                    chars.next();
                    col += 1;
                }
                out.push(Tok {
                    atom: Atom::Word(w),
                    line: l,
                    col: cl,
                });
            }
        }
    }
    Ok(out)
}

struct Reader<'a> {
    toks: Vec<Tok>,
    pos: usize,
    sig: &'a Signature,
}

impl Reader<'_> {
    fn err(&self, msg: impl Into<String>) -> MillError {
        let (line, col) = match self.toks.get(self.pos).or(self.toks.last()) {
            Some(t) => (t.line, t.col),
            None => (1, 1),
        };
        KernelError::Syntax {
            line,
            col,
            msg: msg.into(),
        }
        .into()
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, a: Atom, what: &str) -> Result<(), MillError> {
        match self.toks.get(self.pos) {
            Some(t) if t.atom == a => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.err(format!("expected {}", what))),
        }
    }

    fn tree(&mut self) -> Result<ProofTree, MillError> {
        self.expect(Atom::Open, "`(`")?;
        let head = self.next().ok_or_else(|| self.err("expected a rule"))?;
        let tag = match &head.atom {
            Atom::Word(w) => w.clone(),
            _ => {
                return Err(KernelError::Syntax {
                    line: head.line,
                    col: head.col,
                    msg: "expected a rule".into(),
                }
                .into())
            }
        };
        let rule = if tag == "gen" {
            match self.next() {
                Some(Tok {
                    atom: Atom::Word(n),
                    ..
                }) => Rule::Gen(n),
                _ => return Err(self.err("expected a generator name after `gen`")),
            }
        } else {
            Rule::from_tag(&tag).ok_or(MillError::UnknownRule {
                tag: tag.clone(),
                line: head.line,
                col: head.col,
            })?
        };
        let mut premises = Vec::new();
        while matches!(
            self.toks.get(self.pos),
            Some(Tok {
                atom: Atom::Open,
                ..
            })
        ) {
            premises.push(self.tree()?);
        }
        if premises.len() != rule.arity() {
            return Err(MillError::Arity {
                tag: rule.tag().to_string(),
                expected: rule.arity(),
                found: premises.len(),
                line: head.line,
                col: head.col,
            });
        }
        let conclusion = match self.next() {
            Some(Tok {
                atom: Atom::Str(s),
                line,
                col,
            }) => sequent_at(&s, self.sig, line, col)?,
            _ => {
                self.pos -= 1;
                return Err(self.err("expected a quoted sequent"));
            }
        };
        self.expect(Atom::Close, "`)`")?;
        Ok(ProofTree {
            rule,
            premises,
            conclusion,
        })
    }
}

fn sequent_at(src: &str, sig: &Signature, line: usize, col: usize) -> Result<Sequent, MillError> {
    let shift = |e: KernelError| match e {
        KernelError::Syntax {
            line: l,
            col: c,
            msg,
        } => KernelError::Syntax {
            line: line + l - 1,
            col: if l == 1 { col + c } else { c },
            msg,
        },
        e => e,
    };
    let (lhs, rhs) =
        src.split_once("|-")
            .or_else(|| src.split_once('⊢'))
            .ok_or(KernelError::Syntax {
                line,
                col,
                msg: "sequent needs `|-`".into(),
            })?;
    let l = parse_type_in(lhs, sig, true).map_err(shift)?;
    let r = parse_type_in(rhs, sig, true).map_err(shift)?;
    Ok(Sequent::new(l, r))
}

/// Parses `LHS |- RHS` over `sig`'s aliases and mode; undeclared names are basic types.
pub fn parse_sequent(src: &str, sig: &Signature) -> Result<Sequent, MillError> {
    sequent_at(src, sig, 1, 0)
}

/// Parses one proof tree `(RULE premise... "LHS |- RHS")` with types read in
/// closed-symmetric mode.
pub fn parse_proof(src: &str) -> Result<ProofTree, MillError> {
    parse_proof_with(src, &Signature::new(Mode::ClosedSymmetric))
}

/// Parses one proof tree with types read over `sig`.
pub fn parse_proof_with(src: &str, sig: &Signature) -> Result<ProofTree, MillError> {
    let mut r = Reader {
        toks: lex(src)?,
        pos: 0,
        sig,
    };
    let t = r.tree()?;
    if r.pos < r.toks.len() {
        return Err(r.err("unexpected trailing input"));
    }
    Ok(t)
}

/// Parses a file of `proof NAME = (...)` declarations.
pub fn parse_proof_file(src: &str, sig: &Signature) -> Result<Vec<(String, ProofTree)>, MillError> {
    let mut r = Reader {
        toks: lex(src)?,
        pos: 0,
        sig,
    };
    let mut out = Vec::new();
    while r.pos < r.toks.len() {
        r.expect(Atom::Word("proof".into()), "`proof`")?;
        let name = match r.next() {
            Some(Tok {
                atom: Atom::Word(n),
                ..
            }) if n != "=" => n,
            _ => {
                r.pos -= 1;
                return Err(r.err("expected a proof name"));
            }
        };
        if out.iter().any(|(n, _): &(String, ProofTree)| *n == name) {
            r.pos -= 1;
            return Err(KernelError::Duplicate(name).into());
        }
        r.expect(Atom::Word("=".into()), "`=`")?;
        out.push((name, r.tree()?));
    }
    Ok(out)
}
