//! IMLL formulas and sequent proofs, the compiler [[·]] from proofs into
//! free-SMCC morphism terms, and evaluation of those terms in concrete
//! models.
//!
//! Rule inventory: Ax, Cut(pos), Exch(pos, adjacent swap), ⊗R, ⊗L(pos),
//! ⊸R, ⊸L(pos), 1R, 1L(pos). Contexts are interpreted as left-nested
//! tensors with the empty context mapped to the unit. Compiled terms are
//! compared only by evaluation and typing, never symbolically.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{CatError, Result};
use crate::monoidal::{derive_eval, SmccModel};
use crate::report::StructureReport;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    Atom(String),
    One,
    Tensor(Box<Formula>, Box<Formula>),
    Lolli(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn tensor(l: Formula, r: Formula) -> Formula {
        Formula::Tensor(Box::new(l), Box::new(r))
    }

    pub fn lolli(l: Formula, r: Formula) -> Formula {
        Formula::Lolli(Box::new(l), Box::new(r))
    }

    pub fn atom(name: &str) -> Formula {
        Formula::Atom(name.to_string())
    }

    /// The ordered leaf list, splitting tensors and dropping units. Lolli
    /// formulas are opaque leaves.
    fn frontier(&self, out: &mut Vec<Formula>) {
        match self {
            Formula::One => {}
            Formula::Tensor(l, r) => {
                l.frontier(out);
                r.frontier(out);
            }
            _ => out.push(self.clone()),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::One => write!(f, "1"),
            Formula::Tensor(l, r) => write!(f, "({l} * {r})"),
            Formula::Lolli(l, r) => write!(f, "({l} -o {r})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sequent {
    pub context: Vec<Formula>,
    pub conclusion: Formula,
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.context.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        if self.context.is_empty() {
            write!(f, "|- {}", self.conclusion)
        } else {
            write!(f, " |- {}", self.conclusion)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    Ax(Formula),
    OneR,
    OneL(usize),
    Exch(usize),
    TensorR,
    TensorL(usize),
    LolliR,
    LolliL(usize),
    Cut(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofTree {
    pub rule: Rule,
    pub premises: Vec<ProofTree>,
}

// --- lexing and parsing ---------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    LParen,
    RParen,
    Sym(String),
    Nat(usize),
}

struct Lexer {
    tokens: Vec<(Token, usize, usize)>,
    pos: usize,
    end: (usize, usize),
}

impl Lexer {
    fn new(text: &str) -> Result<Lexer> {
        let mut tokens = Vec::new();
        let (mut line, mut col) = (1usize, 1usize);
        let mut chars = text.chars().peekable();
        while let Some(&c) = chars.peek() {
            let (tl, tc) = (line, col);
            let bump = |c: char, line: &mut usize, col: &mut usize| {
                if c == '\n' {
                    *line += 1;
                    *col = 1;
                } else {
                    *col += 1;
                }
            };
            match c {
                c if c.is_whitespace() => {
                    chars.next();
                    bump(c, &mut line, &mut col);
                }
                '(' => {
                    chars.next();
                    bump(c, &mut line, &mut col);
                    tokens.push((Token::LParen, tl, tc));
                }
                ')' => {
                    chars.next();
                    bump(c, &mut line, &mut col);
                    tokens.push((Token::RParen, tl, tc));
                }
                c if c.is_ascii_digit() => {
                    // Digits, unless letters follow: "1l"/"1r" are rule names.
                    let mut s = String::new();
                    let mut symbolic = false;
                    while let Some(&d) = chars.peek() {
                        if d.is_ascii_alphanumeric() || d == '_' {
                            symbolic |= !d.is_ascii_digit();
                            s.push(d);
                            chars.next();
                            bump(d, &mut line, &mut col);
                        } else {
                            break;
                        }
                    }
                    if symbolic {
                        tokens.push((Token::Sym(s), tl, tc));
                    } else {
                        let n = s.parse().map_err(|_| CatError::Parse {
                            line: tl,
                            col: tc,
                            msg: format!("number {s} out of range"),
                        })?;
                        tokens.push((Token::Nat(n), tl, tc));
                    }
                }
                '*' => {
                    chars.next();
                    bump(c, &mut line, &mut col);
                    tokens.push((Token::Sym("*".into()), tl, tc));
                }
                '-' => {
                    chars.next();
                    bump(c, &mut line, &mut col);
                    match chars.peek() {
                        Some(&'o') => {
                            chars.next();
                            bump('o', &mut line, &mut col);
                            tokens.push((Token::Sym("-o".into()), tl, tc));
                        }
                        _ => {
                            return Err(CatError::Parse {
                                line: tl,
                                col: tc,
                                msg: "expected -o".into(),
                            })
                        }
                    }
                }
                c if c.is_ascii_lowercase() => {
                    let mut s = String::new();
                    while let Some(&d) = chars.peek() {
                        if d.is_ascii_alphanumeric() || d == '_' {
                            s.push(d);
                            chars.next();
                            bump(d, &mut line, &mut col);
                        } else {
                            break;
                        }
                    }
                    tokens.push((Token::Sym(s), tl, tc));
                }
                other => {
                    return Err(CatError::Parse {
                        line: tl,
                        col: tc,
                        msg: format!("unexpected character {other:?}"),
                    })
                }
            }
        }
        Ok(Lexer {
            tokens,
            pos: 0,
            end: (line, col),
        })
    }

    fn here(&self) -> (usize, usize) {
        self.tokens
            .get(self.pos)
            .map(|&(_, l, c)| (l, c))
            .unwrap_or(self.end)
    }

    fn next(&mut self, expected: &str) -> Result<Token> {
        let (l, c) = self.here();
        match self.tokens.get(self.pos) {
            Some((t, _, _)) => {
                self.pos += 1;
                Ok(t.clone())
            }
            None => Err(CatError::Parse {
                line: l,
                col: c,
                msg: format!("unexpected end of input, expected {expected}"),
            }),
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (line, col) = self.here();
        Err(CatError::Parse {
            line,
            col,
            msg: msg.into(),
        })
    }

    fn expect_rparen(&mut self) -> Result<()> {
        match self.next(")")? {
            Token::RParen => Ok(()),
            t => self.err(format!("expected ), found {t:?}")),
        }
    }

    fn nat(&mut self) -> Result<usize> {
        match self.next("position")? {
            Token::Nat(n) => Ok(n),
            t => self.err(format!("expected position, found {t:?}")),
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        match self.next("formula")? {
            Token::Nat(1) => Ok(Formula::One),
            Token::Sym(s) if s != "*" && s != "-o" => Ok(Formula::Atom(s)),
            Token::LParen => {
                let l = self.formula()?;
                let op = self.next("operator")?;
                let r = self.formula()?;
                self.expect_rparen()?;
                match op {
                    Token::Sym(s) if s == "*" => Ok(Formula::tensor(l, r)),
                    Token::Sym(s) if s == "-o" => Ok(Formula::lolli(l, r)),
                    t => self.err(format!("expected * or -o, found {t:?}")),
                }
            }
            t => self.err(format!("expected formula, found {t:?}")),
        }
    }

    fn proof(&mut self) -> Result<ProofTree> {
        match self.next("proof")? {
            Token::LParen => {}
            t => return self.err(format!("expected (, found {t:?}")),
        }
        let head = match self.next("rule name")? {
            Token::Sym(s) => s,
            t => return self.err(format!("expected rule name, found {t:?}")),
        };
        let tree = match head.as_str() {
            "ax" => ProofTree {
                rule: Rule::Ax(self.formula()?),
                premises: vec![],
            },
            "1r" => ProofTree {
                rule: Rule::OneR,
                premises: vec![],
            },
            "1l" => {
                let pos = self.nat()?;
                let p = self.proof()?;
                ProofTree {
                    rule: Rule::OneL(pos),
                    premises: vec![p],
                }
            }
            "xchg" => {
                let pos = self.nat()?;
                let p = self.proof()?;
                ProofTree {
                    rule: Rule::Exch(pos),
                    premises: vec![p],
                }
            }
            "tr" => {
                let p1 = self.proof()?;
                let p2 = self.proof()?;
                ProofTree {
                    rule: Rule::TensorR,
                    premises: vec![p1, p2],
                }
            }
            "tl" => {
                let pos = self.nat()?;
                let p = self.proof()?;
                ProofTree {
                    rule: Rule::TensorL(pos),
                    premises: vec![p],
                }
            }
            "lr" => {
                let p = self.proof()?;
                ProofTree {
                    rule: Rule::LolliR,
                    premises: vec![p],
                }
            }
            "ll" => {
                let pos = self.nat()?;
                let p1 = self.proof()?;
                let p2 = self.proof()?;
                ProofTree {
                    rule: Rule::LolliL(pos),
                    premises: vec![p1, p2],
                }
            }
            "cut" => {
                let pos = self.nat()?;
                let p1 = self.proof()?;
                let p2 = self.proof()?;
                ProofTree {
                    rule: Rule::Cut(pos),
                    premises: vec![p1, p2],
                }
            }
            other => return self.err(format!("unknown rule {other}")),
        };
        self.expect_rparen()?;
        Ok(tree)
    }

    fn done(&self) -> Result<()> {
        if self.pos == self.tokens.len() {
            Ok(())
        } else {
            let (line, col) = self.here();
            Err(CatError::Parse {
                line,
                col,
                msg: "trailing input".into(),
            })
        }
    }
}

pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut lx = Lexer::new(text)?;
    let f = lx.formula()?;
    lx.done()?;
    Ok(f)
}

pub fn parse_proof(text: &str) -> Result<ProofTree> {
    let mut lx = Lexer::new(text)?;
    let p = lx.proof()?;
    lx.done()?;
    Ok(p)
}

// --- proof checking -------------------------------------------------------

fn path_str(path: &[usize]) -> String {
    let mut s = "root".to_string();
    for p in path {
        s.push('.');
        s.push_str(&p.to_string());
    }
    s
}

fn rule_err<T>(path: &[usize], msg: impl fmt::Display) -> Result<T> {
    Err(CatError::input(format!("node {}: {msg}", path_str(path))))
}

fn check_node(p: &ProofTree, path: &mut Vec<usize>) -> Result<Sequent> {
    let arity = match p.rule {
        Rule::Ax(_) | Rule::OneR => 0,
        Rule::OneL(_) | Rule::Exch(_) | Rule::TensorL(_) | Rule::LolliR => 1,
        Rule::TensorR | Rule::LolliL(_) | Rule::Cut(_) => 2,
    };
    if p.premises.len() != arity {
        return rule_err(
            path,
            format!("rule expects {arity} premises, found {}", p.premises.len()),
        );
    }
    let mut prem = Vec::new();
    for (i, sub) in p.premises.iter().enumerate() {
        path.push(i);
        prem.push(check_node(sub, path)?);
        path.pop();
    }
    match &p.rule {
        Rule::Ax(f) => Ok(Sequent {
            context: vec![f.clone()],
            conclusion: f.clone(),
        }),
        Rule::OneR => Ok(Sequent {
            context: vec![],
            conclusion: Formula::One,
        }),
        Rule::OneL(pos) => {
            let s = prem.remove(0);
            if *pos > s.context.len() {
                return rule_err(path, format!("1L position {pos} out of range"));
            }
            let mut context = s.context;
            context.insert(*pos, Formula::One);
            Ok(Sequent {
                context,
                conclusion: s.conclusion,
            })
        }
        Rule::Exch(pos) => {
            let s = prem.remove(0);
            if pos + 1 >= s.context.len() {
                return rule_err(path, format!("exchange position {pos} out of range"));
            }
            let mut context = s.context;
            context.swap(*pos, pos + 1);
            Ok(Sequent {
                context,
                conclusion: s.conclusion,
            })
        }
        Rule::TensorR => {
            let s2 = prem.remove(1);
            let s1 = prem.remove(0);
            let mut context = s1.context;
            context.extend(s2.context);
            Ok(Sequent {
                context,
                conclusion: Formula::tensor(s1.conclusion, s2.conclusion),
            })
        }
        Rule::TensorL(pos) => {
            let s = prem.remove(0);
            if pos + 1 >= s.context.len() {
                return rule_err(
                    path,
                    format!("⊗L needs two formulas at positions {pos},{}", pos + 1),
                );
            }
            let mut context = s.context;
            let b = context.remove(pos + 1);
            let a = std::mem::replace(&mut context[*pos], Formula::One);
            context[*pos] = Formula::tensor(a, b);
            Ok(Sequent {
                context,
                conclusion: s.conclusion,
            })
        }
        Rule::LolliR => {
            let s = prem.remove(0);
            if s.context.is_empty() {
                return rule_err(path, "⊸R needs a non-empty context");
            }
            let mut context = s.context;
            let a = context.remove(0);
            Ok(Sequent {
                context,
                conclusion: Formula::lolli(a, s.conclusion),
            })
        }
        Rule::LolliL(pos) => {
            let s2 = prem.remove(1);
            let s1 = prem.remove(0);
            if *pos >= s2.context.len() {
                return rule_err(path, format!("⊸L position {pos} out of range"));
            }
            let a = s1.conclusion;
            let mut context = s2.context;
            let b = std::mem::replace(&mut context[*pos], Formula::lolli(a.clone(), Formula::One));
            context[*pos] = Formula::lolli(a, b);
            // Splice Γ after the principal formula.
            for (k, g) in s1.context.into_iter().enumerate() {
                context.insert(pos + 1 + k, g);
            }
            Ok(Sequent {
                context,
                conclusion: s2.conclusion,
            })
        }
        Rule::Cut(pos) => {
            let s2 = prem.remove(1);
            let s1 = prem.remove(0);
            if *pos >= s2.context.len() {
                return rule_err(path, format!("cut position {pos} out of range"));
            }
            if s2.context[*pos] != s1.conclusion {
                return rule_err(
                    path,
                    format!(
                        "cut formula mismatch: context has {}, premise proves {}",
                        s2.context[*pos], s1.conclusion
                    ),
                );
            }
            let mut context = s2.context;
            context.remove(*pos);
            for (k, g) in s1.context.into_iter().enumerate() {
                context.insert(pos + k, g);
            }
            Ok(Sequent {
                context,
                conclusion: s2.conclusion,
            })
        }
    }
}

/// Recompute every node's conclusion bottom-up and return the root sequent.
pub fn check_proof(p: &ProofTree) -> Result<Sequent> {
    check_node(p, &mut Vec::new())
}

// --- morphism terms -------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismTerm {
    IdOf(Formula),
    Comp(Box<MorphismTerm>, Box<MorphismTerm>),
    TensorT(Box<MorphismTerm>, Box<MorphismTerm>),
    Alpha(Formula, Formula, Formula),
    AlphaInv(Formula, Formula, Formula),
    LambdaT(Formula),
    LambdaInv(Formula),
    RhoT(Formula),
    RhoInv(Formula),
    Gamma(Formula, Formula),
    /// Curry(A, X, t) for t : A⊗X → B yields X → A⊸B.
    Curry(Formula, Formula, Box<MorphismTerm>),
    /// Uncurry(A, C, t) for t : X → A⊸C yields A⊗X → C.
    Uncurry(Formula, Formula, Box<MorphismTerm>),
    /// Eval(A, B) : A⊗(A⊸B) → B.
    Eval(Formula, Formula),
}

use MorphismTerm::*;

impl MorphismTerm {
    pub fn comp(t1: MorphismTerm, t2: MorphismTerm) -> MorphismTerm {
        Comp(Box::new(t1), Box::new(t2))
    }

    pub fn tensor_t(t1: MorphismTerm, t2: MorphismTerm) -> MorphismTerm {
        TensorT(Box::new(t1), Box::new(t2))
    }

    /// Source formula, with structural type checking.
    pub fn source(&self) -> Result<Formula> {
        Ok(match self {
            IdOf(f) => f.clone(),
            Comp(t1, t2) => {
                let mid = t2.target()?;
                if t1.source()? != mid {
                    return Err(CatError::Structure(format!(
                        "composition mismatch: {} then expects {}",
                        mid,
                        t1.source()?
                    )));
                }
                t2.source()?
            }
            TensorT(t1, t2) => Formula::tensor(t1.source()?, t2.source()?),
            Alpha(a, b, c) => {
                Formula::tensor(Formula::tensor(a.clone(), b.clone()), c.clone())
            }
            AlphaInv(a, b, c) => {
                Formula::tensor(a.clone(), Formula::tensor(b.clone(), c.clone()))
            }
            LambdaT(a) => Formula::tensor(Formula::One, a.clone()),
            LambdaInv(a) => a.clone(),
            RhoT(a) => Formula::tensor(a.clone(), Formula::One),
            RhoInv(a) => a.clone(),
            Gamma(a, b) => Formula::tensor(a.clone(), b.clone()),
            Curry(a, x, t) => {
                let src = t.source()?;
                if src != Formula::tensor(a.clone(), x.clone()) {
                    return Err(CatError::Structure(format!(
                        "curry body has source {src}, expected ({a} * {x})"
                    )));
                }
                x.clone()
            }
            Uncurry(a, c, t) => {
                let tgt = t.target()?;
                if tgt != Formula::lolli(a.clone(), c.clone()) {
                    return Err(CatError::Structure(format!(
                        "uncurry body has target {tgt}, expected ({a} -o {c})"
                    )));
                }
                Formula::tensor(a.clone(), t.source()?)
            }
            Eval(a, b) => Formula::tensor(a.clone(), Formula::lolli(a.clone(), b.clone())),
        })
    }

    /// Target formula, with structural type checking.
    pub fn target(&self) -> Result<Formula> {
        Ok(match self {
            IdOf(f) => f.clone(),
            Comp(t1, _) => t1.target()?,
            TensorT(t1, t2) => Formula::tensor(t1.target()?, t2.target()?),
            Alpha(a, b, c) => {
                Formula::tensor(a.clone(), Formula::tensor(b.clone(), c.clone()))
            }
            AlphaInv(a, b, c) => {
                Formula::tensor(Formula::tensor(a.clone(), b.clone()), c.clone())
            }
            LambdaT(a) => a.clone(),
            LambdaInv(a) => Formula::tensor(Formula::One, a.clone()),
            RhoT(a) => a.clone(),
            RhoInv(a) => Formula::tensor(a.clone(), Formula::One),
            Gamma(a, b) => Formula::tensor(b.clone(), a.clone()),
            Curry(a, _, t) => Formula::lolli(a.clone(), t.target()?),
            Uncurry(_, c, _) => c.clone(),
            Eval(_, b) => b.clone(),
        })
    }

    /// Structural inverse of a coherence term (built from the isomorphism
    /// constructors only).
    fn invert(&self) -> Result<MorphismTerm> {
        Ok(match self {
            IdOf(f) => IdOf(f.clone()),
            Comp(t1, t2) => MorphismTerm::comp(t2.invert()?, t1.invert()?),
            TensorT(t1, t2) => MorphismTerm::tensor_t(t1.invert()?, t2.invert()?),
            Alpha(a, b, c) => AlphaInv(a.clone(), b.clone(), c.clone()),
            AlphaInv(a, b, c) => Alpha(a.clone(), b.clone(), c.clone()),
            LambdaT(a) => LambdaInv(a.clone()),
            LambdaInv(a) => LambdaT(a.clone()),
            RhoT(a) => RhoInv(a.clone()),
            RhoInv(a) => RhoT(a.clone()),
            Gamma(a, b) => Gamma(b.clone(), a.clone()),
            _ => {
                return Err(CatError::Structure(
                    "cannot invert a non-coherence term".into(),
                ))
            }
        })
    }

    pub fn count_nodes(&self, pred: &impl Fn(&MorphismTerm) -> bool) -> usize {
        let here = usize::from(pred(self));
        here + match self {
            Comp(t1, t2) | TensorT(t1, t2) => {
                t1.count_nodes(pred) + t2.count_nodes(pred)
            }
            Curry(_, _, t) | Uncurry(_, _, t) => t.count_nodes(pred),
            _ => 0,
        }
    }
}

impl fmt::Display for MorphismTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdOf(a) => write!(f, "(id {a})"),
            Comp(t1, t2) => write!(f, "(comp {t1} {t2})"),
            TensorT(t1, t2) => write!(f, "(tensor {t1} {t2})"),
            Alpha(a, b, c) => write!(f, "(alpha {a} {b} {c})"),
            AlphaInv(a, b, c) => write!(f, "(alpha-inv {a} {b} {c})"),
            LambdaT(a) => write!(f, "(lambda {a})"),
            LambdaInv(a) => write!(f, "(lambda-inv {a})"),
            RhoT(a) => write!(f, "(rho {a})"),
            RhoInv(a) => write!(f, "(rho-inv {a})"),
            Gamma(a, b) => write!(f, "(gamma {a} {b})"),
            Curry(a, x, t) => write!(f, "(curry {a} {x} {t})"),
            Uncurry(a, c, t) => write!(f, "(uncurry {a} {c} {t})"),
            Eval(a, b) => write!(f, "(eval {a} {b})"),
        }
    }
}

// --- coherence ------------------------------------------------------------

/// Left-nested tensor of a context; the empty context is the unit.
pub fn context_formula(ctx: &[Formula]) -> Formula {
    match ctx.split_first() {
        None => Formula::One,
        Some((first, rest)) => rest
            .iter()
            .fold(first.clone(), |acc, f| Formula::tensor(acc, f.clone())),
    }
}

/// Rewrite a tensor tree to its left-nested unit-free normal form, returning
/// the rewriting term f → normal(f) and the normal form.
fn to_normal(f: &Formula) -> (MorphismTerm, Formula) {
    match f {
        Formula::Tensor(l, r) => {
            let (tl, nl) = to_normal(l);
            let (tr, nr) = to_normal(r);
            let (mt, m) = merge(&nl, &nr);
            (
                MorphismTerm::comp(mt, MorphismTerm::tensor_t(tl, tr)),
                m,
            )
        }
        other => (IdOf(other.clone()), other.clone()),
    }
}

/// Merge two normal forms: a term nl⊗nr → normal(nl⊗nr).
fn merge(nl: &Formula, nr: &Formula) -> (MorphismTerm, Formula) {
    if *nl == Formula::One {
        return (LambdaT(nr.clone()), nr.clone());
    }
    if *nr == Formula::One {
        return (RhoT(nl.clone()), nl.clone());
    }
    match nr {
        Formula::Tensor(s, leaf) => {
            // nl⊗(s⊗leaf) → (nl⊗s)⊗leaf → normal(nl⊗s)⊗leaf.
            let (mt, m) = merge(nl, s);
            let term = MorphismTerm::comp(
                MorphismTerm::tensor_t(mt, IdOf((**leaf).clone())),
                AlphaInv(nl.clone(), (**s).clone(), (**leaf).clone()),
            );
            (term, Formula::tensor(m, (**leaf).clone()))
        }
        leaf => (
            IdOf(Formula::tensor(nl.clone(), leaf.clone())),
            Formula::tensor(nl.clone(), leaf.clone()),
        ),
    }
}

/// The canonical structural isomorphism between two tensor trees over the
/// same ordered leaf list (units may differ). Built from α/λ/ρ (+inverses)
/// by normalizing both sides and composing one path with the other inverted.
pub fn coherence_iso(from: &Formula, to: &Formula) -> Result<MorphismTerm> {
    if from == to {
        return Ok(IdOf(from.clone()));
    }
    let mut lf = Vec::new();
    let mut lt = Vec::new();
    from.frontier(&mut lf);
    to.frontier(&mut lt);
    if lf != lt {
        return Err(CatError::input(format!(
            "no structural isomorphism {from} -> {to}: leaf lists differ"
        )));
    }
    let (tf, _) = to_normal(from);
    let (tt, _) = to_normal(to);
    Ok(MorphismTerm::comp(tt.invert()?, tf))
}

// --- compilation ----------------------------------------------------------

/// Tensor-pad a term to act inside a context: if core : F → G, the result is
/// ctx(prefix)⊗F⊗s₁⊗…⊗sₖ → ctx(prefix)⊗G⊗s₁⊗…⊗sₖ along the left-nested
/// spine.
fn pad(prefix: &[Formula], suffix: &[Formula], core: MorphismTerm) -> MorphismTerm {
    let mut t = if prefix.is_empty() {
        core
    } else {
        MorphismTerm::tensor_t(IdOf(context_formula(prefix)), core)
    };
    for s in suffix {
        t = MorphismTerm::tensor_t(t, IdOf(s.clone()));
    }
    t
}

/// The context formula with one block kept opaque:
/// ((ctx(prefix) ⊗ block) ⊗ s₁) ⊗ … ⊗ sₖ.
fn blocked(prefix: &[Formula], block: Formula, suffix: &[Formula]) -> Formula {
    let head = if prefix.is_empty() {
        block
    } else {
        Formula::tensor(context_formula(prefix), block)
    };
    suffix
        .iter()
        .fold(head, |acc, s| Formula::tensor(acc, s.clone()))
}

fn compile_node(p: &ProofTree) -> Result<(Sequent, MorphismTerm)> {
    let mut prem = Vec::new();
    for sub in &p.premises {
        prem.push(compile_node(sub)?);
    }
    let sequent = check_proof(p)?;
    let ctx_f = context_formula(&sequent.context);
    let term = match &p.rule {
        Rule::Ax(f) => IdOf(f.clone()),
        Rule::OneR => IdOf(Formula::One),
        Rule::OneL(_) | Rule::TensorL(_) => {
            // The context changes shape but not frontier: pure coherence.
            let (ps, pt) = prem.remove(0);
            let iso = coherence_iso(&ctx_f, &context_formula(&ps.context))?;
            MorphismTerm::comp(pt, iso)
        }
        Rule::Exch(pos) => {
            let (ps, pt) = prem.remove(0);
            // Premise context: …, x at pos, y at pos+1, …; conclusion swaps
            // them. Map the conclusion context back via γ_{y,x}... the core
            // runs y⊗x → x⊗y, i.e. Gamma(y, x) with (x, y) the premise pair.
            let x = ps.context[*pos].clone();
            let y = ps.context[pos + 1].clone();
            let prefix = &ps.context[..*pos];
            let suffix = &ps.context[pos + 2..];
            let iso1 = coherence_iso(
                &ctx_f,
                &blocked(prefix, Formula::tensor(y.clone(), x.clone()), suffix),
            )?;
            let core = pad(prefix, suffix, Gamma(y, x));
            let iso2 = coherence_iso(
                &blocked(
                    prefix,
                    Formula::tensor(
                        ps.context[*pos].clone(),
                        ps.context[pos + 1].clone(),
                    ),
                    suffix,
                ),
                &context_formula(&ps.context),
            )?;
            MorphismTerm::comp(
                pt,
                MorphismTerm::comp(iso2, MorphismTerm::comp(core, iso1)),
            )
        }
        Rule::TensorR => {
            let (s2, t2) = prem.remove(1);
            let (s1, t1) = prem.remove(0);
            let split = Formula::tensor(
                context_formula(&s1.context),
                context_formula(&s2.context),
            );
            let iso = coherence_iso(&ctx_f, &split)?;
            MorphismTerm::comp(MorphismTerm::tensor_t(t1, t2), iso)
        }
        Rule::LolliR => {
            let (ps, pt) = prem.remove(0);
            let a = ps.context[0].clone();
            let rest = context_formula(&ps.context[1..]);
            let iso = coherence_iso(
                &Formula::tensor(a.clone(), rest.clone()),
                &context_formula(&ps.context),
            )?;
            Curry(a, rest, Box::new(MorphismTerm::comp(pt, iso)))
        }
        Rule::LolliL(pos) => {
            let (s2, t2) = prem.remove(1);
            let (s1, t1) = prem.remove(0);
            let a = s1.conclusion.clone();
            let b = s2.context[*pos].clone();
            let lolli = Formula::lolli(a.clone(), b.clone());
            let gamma_ctx = context_formula(&s1.context);
            // core : (A⊸B)⊗Γ → B.
            let core = MorphismTerm::comp(
                Eval(a.clone(), b.clone()),
                MorphismTerm::comp(
                    Gamma(lolli.clone(), a.clone()),
                    MorphismTerm::tensor_t(IdOf(lolli.clone()), t1),
                ),
            );
            let prefix = &s2.context[..*pos];
            let suffix = &s2.context[pos + 1..];
            let iso1 = coherence_iso(
                &ctx_f,
                &blocked(prefix, Formula::tensor(lolli, gamma_ctx), suffix),
            )?;
            MorphismTerm::comp(t2, MorphismTerm::comp(pad(prefix, suffix, core), iso1))
        }
        Rule::Cut(pos) => {
            let (s2, t2) = prem.remove(1);
            let (s1, t1) = prem.remove(0);
            let prefix = &s2.context[..*pos];
            let suffix = &s2.context[pos + 1..];
            let iso1 = coherence_iso(
                &ctx_f,
                &blocked(prefix, context_formula(&s1.context), suffix),
            )?;
            MorphismTerm::comp(t2, MorphismTerm::comp(pad(prefix, suffix, t1), iso1))
        }
    };
    Ok((sequent, term))
}

/// Compile a checked proof into a morphism term whose structural source is
/// the context interpretation and whose target is the conclusion.
pub fn compile_proof(p: &ProofTree) -> Result<(Sequent, MorphismTerm)> {
    let (sequent, term) = compile_node(p)?;
    // Internal contract: structural typing must match the sequent.
    let src = term.source()?;
    let tgt = term.target()?;
    let expect_src = context_formula(&sequent.context);
    if src != expect_src || tgt != sequent.conclusion {
        return Err(CatError::Structure(format!(
            "compiled term has type {src} -> {tgt}, sequent demands {expect_src} -> {}",
            sequent.conclusion
        )));
    }
    Ok((sequent, term))
}

// --- evaluation -----------------------------------------------------------

/// Atom interpretations in a target model, plus the designated ⊥ atom.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Environment {
    pub atoms: BTreeMap<String, usize>,
    pub bottom: String,
}

impl Environment {
    pub fn validate(&self, s: &SmccModel) -> Result<()> {
        let base = s.base();
        for (name, &v) in &self.atoms {
            if v >= base.size() || !base.is_identity(v) {
                return Err(CatError::Environment(format!(
                    "atom {name} maps to {v}, which is not an identity"
                )));
            }
        }
        if !self.atoms.contains_key(&self.bottom) {
            return Err(CatError::Environment(format!(
                "bottom atom {} is not mapped",
                self.bottom
            )));
        }
        Ok(())
    }

    pub fn bottom_identity(&self) -> Result<usize> {
        self.atoms
            .get(&self.bottom)
            .copied()
            .ok_or_else(|| CatError::Environment(format!("bottom atom {} is not mapped", self.bottom)))
    }
}

pub fn interpret_formula(f: &Formula, env: &Environment, s: &SmccModel) -> Result<usize> {
    let n = s.base().size();
    Ok(match f {
        Formula::Atom(a) => *env
            .atoms
            .get(a)
            .ok_or_else(|| CatError::Environment(format!("atom {a} is not mapped")))?,
        Formula::One => s.monoidal.unit,
        Formula::Tensor(l, r) => s
            .monoidal
            .tensor_of(interpret_formula(l, env, s)?, interpret_formula(r, env, s)?),
        Formula::Lolli(l, r) => s.closed.impl_of(
            n,
            interpret_formula(l, env, s)?,
            interpret_formula(r, env, s)?,
        ),
    })
}

pub fn interpret_context(ctx: &[Formula], env: &Environment, s: &SmccModel) -> Result<usize> {
    interpret_formula(&context_formula(ctx), env, s)
}

/// Structural evaluation of a term into a model element.
pub fn evaluate_term(t: &MorphismTerm, env: &Environment, s: &SmccModel) -> Result<usize> {
    let m = &s.monoidal;
    let base = s.base();
    let interp = |f: &Formula| interpret_formula(f, env, s);
    Ok(match t {
        IdOf(f) => interp(f)?,
        Comp(t1, t2) => base.comp(evaluate_term(t1, env, s)?, evaluate_term(t2, env, s)?),
        TensorT(t1, t2) => {
            m.tensor_of(evaluate_term(t1, env, s)?, evaluate_term(t2, env, s)?)
        }
        Alpha(a, b, c) => lookup3(&m.alpha, "alpha", interp(a)?, interp(b)?, interp(c)?)?,
        AlphaInv(a, b, c) => {
            lookup3(&m.alpha_inv, "alpha_inv", interp(a)?, interp(b)?, interp(c)?)?
        }
        LambdaT(a) => lookup1(&m.lam, "lambda", interp(a)?)?,
        LambdaInv(a) => lookup1(&m.lam_inv, "lambda_inv", interp(a)?)?,
        RhoT(a) => lookup1(&m.rho, "rho", interp(a)?)?,
        RhoInv(a) => lookup1(&m.rho_inv, "rho_inv", interp(a)?)?,
        Gamma(a, b) => {
            let key = (interp(a)?, interp(b)?);
            *s.braiding.gamma.get(&key).ok_or_else(|| {
                CatError::Model(format!("missing gamma entry for {key:?}"))
            })?
        }
        Curry(a, x, t) => {
            let inner = evaluate_term(t, env, s)?;
            lookup3(&s.closed.phi, "phi", interp(a)?, interp(x)?, inner)?
        }
        Uncurry(a, c, t) => {
            let inner = evaluate_term(t, env, s)?;
            lookup3(&s.closed.psi, "psi", interp(a)?, interp(c)?, inner)?
        }
        Eval(a, b) => derive_eval(m, &s.closed, interp(a)?, interp(b)?)?,
    })
}

fn lookup1(table: &BTreeMap<usize, usize>, name: &str, k: usize) -> Result<usize> {
    table
        .get(&k)
        .copied()
        .ok_or_else(|| CatError::Model(format!("missing {name} entry for ({k})")))
}

fn lookup3(
    table: &BTreeMap<(usize, usize, usize), usize>,
    name: &str,
    a: usize,
    b: usize,
    c: usize,
) -> Result<usize> {
    table
        .get(&(a, b, c))
        .copied()
        .ok_or_else(|| CatError::Model(format!("missing {name} entry for ({a},{b},{c})")))
}

/// Evaluate a compiled term and assert existence and the typing contract
/// against its sequent.
pub fn dom_cod_check(
    t: &MorphismTerm,
    sq: &Sequent,
    env: &Environment,
    s: &SmccModel,
) -> Result<StructureReport> {
    let mut report = StructureReport::new();
    let v = evaluate_term(t, env, s)?;
    let base = s.base();
    let c = base.carrier();
    report.tick();
    if !base.ex(v) {
        report.violate("non_existent_composite", &[v]);
        return Ok(report);
    }
    let want_dom = interpret_context(&sq.context, env, s)?;
    let want_cod = interpret_formula(&sq.conclusion, env, s)?;
    if !c.eq_e(base.dom(v), want_dom) {
        report.violate("dom_mismatch", &[v, base.dom(v), want_dom]);
    }
    if !c.eq_e(base.cod(v), want_cod) {
        report.violate("cod_mismatch", &[v, base.cod(v), want_cod]);
    }
    report.note(format!("value {v}: {} -> {}", base.dom(v), base.cod(v)));
    Ok(report)
}
