use std::collections::{BTreeMap, BTreeSet};

use super::lexer::{tokenize, Tok, Token};
use crate::error::{Error, ParseError, Result};
use crate::model::{ABox, Assertion, Comparator, Concept, KnowledgeBase, NameKind, RoleExpr, Signature, TBox};
use crate::views::{Action, Event, Evolver, ViewMode};

/// Words that cannot be used as bare names.
pub const KEYWORDS: &[&str] = &[
    "and", "or", "not", "all", "some", "TOP", "BOTTOM", "primitive", "role", "individual", "view",
    "event", "add", "remove", "switch", "virtual", "actual", "world", "current", "cache", "evolver",
    "initial", "last",
];

pub fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

/// A view declaration as written in a file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViewDecl {
    pub name: String,
    pub body: Concept,
    pub mode: ViewMode,
}

/// A materialized extension recorded in a snapshot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CacheDecl {
    pub view: String,
    pub world: String,
    pub members: BTreeSet<String>,
}

/// Everything a KB or snapshot file can contain.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Document {
    /// Declarations, definitions and the top-level assertions.
    pub kb: KnowledgeBase,
    pub worlds: Vec<(String, ABox)>,
    pub current: Option<String>,
    pub last_event: Option<String>,
    pub views: Vec<ViewDecl>,
    pub caches: Vec<CacheDecl>,
    pub events: Vec<Event>,
    pub evolver: Option<Evolver>,
}

/// Parses a single concept expression.
pub fn parse_concept(text: &str) -> Result<Concept, ParseError> {
    let mut p = Parser::new(text)?;
    let c = p.expr()?;
    p.expect_eof()?;
    Ok(c)
}

/// Parses a concept expression at the start of `text`, returning it with the
/// byte offset where parsing stopped.
pub fn parse_concept_prefix(text: &str) -> Result<(Concept, usize), ParseError> {
    let mut p = Parser::new(text)?;
    let c = p.expr()?;
    Ok((c, p.toks[p.pos].offset))
}

/// Parses an individual name, bare or quoted, at the start of `text`.
pub fn parse_individual_prefix(text: &str) -> Result<(String, usize), ParseError> {
    let mut p = Parser::new(text)?;
    let name = p.individual()?;
    Ok((name, p.toks[p.pos].offset))
}

/// Parses a single assertion such as `paper(Rick, L)` or `(all paper.A)(Rick)`.
pub fn parse_assertion(text: &str) -> Result<Assertion, ParseError> {
    let mut p = Parser::new(text)?;
    let a = p.assertion()?;
    if *p.peek() == Tok::Semi {
        p.bump();
    }
    p.expect_eof()?;
    Ok(a)
}

/// Parses a KB file and returns its knowledge base. View, event and world
/// statements are checked but not returned; see [`parse_document`].
pub fn parse_kb(text: &str) -> Result<KnowledgeBase> {
    Ok(parse_document(text)?.kb)
}

/// Parses and validates a KB or snapshot file.
pub fn parse_document(text: &str) -> Result<Document> {
    let mut p = Parser::new(text)?;
    let mut raw = Vec::new();
    while *p.peek() != Tok::Eof {
        raw.push(p.statement()?);
    }
    build_document(raw)
}

enum Stmt {
    Declare(NameKind, Vec<String>),
    Define(String, Concept),
    Assert(Assertion),
    View(ViewDecl),
    Event(Event),
    World(String, Vec<Assertion>),
    Current(String),
    Last(String),
    Cache(CacheDecl),
    Evolver(Evolver),
}

fn build_document(stmts: Vec<Stmt>) -> Result<Document> {
    let mut sig = Signature::new();
    for s in &stmts {
        if let Stmt::Declare(kind, names) = s {
            for n in names {
                sig.declare(*kind, n.clone())?;
            }
        }
    }
    let mut tbox = TBox::new();
    for s in &stmts {
        if let Stmt::Define(name, body) = s {
            if sig.kind_of(name).is_some() {
                return Err(Error::RedefinedName(name.clone()));
            }
            tbox.define(name.clone(), body.clone())?;
        }
    }
    let mut doc = Document {
        kb: KnowledgeBase { signature: sig, tbox, abox: ABox::new() },
        ..Document::default()
    };
    doc.kb.validate()?;

    let mut world_index: BTreeMap<String, usize> = BTreeMap::new();
    for s in stmts {
        match s {
            Stmt::Declare(..) | Stmt::Define(..) => {}
            Stmt::Assert(a) => {
                doc.kb.check_assertion(&a)?;
                doc.kb.abox.insert(a);
            }
            Stmt::View(v) => {
                doc.kb.check_concept(&v.body)?;
                if doc.views.iter().any(|x| x.name == v.name) {
                    return Err(Error::RedefinedName(v.name));
                }
                doc.views.push(v);
            }
            Stmt::Event(e) => {
                for action in &e.script {
                    match action {
                        Action::Add(a) | Action::Remove(a) => doc.kb.check_assertion(a)?,
                        Action::SwitchWorld(_) => {}
                    }
                }
                if doc.events.iter().any(|x| x.name == e.name) {
                    return Err(Error::RedefinedName(e.name));
                }
                doc.events.push(e);
            }
            Stmt::World(name, assertions) => {
                let idx = *world_index.entry(name.clone()).or_insert_with(|| {
                    doc.worlds.push((name.clone(), ABox::new()));
                    doc.worlds.len() - 1
                });
                for a in assertions {
                    doc.kb.check_assertion(&a)?;
                    doc.worlds[idx].1.insert(a);
                }
            }
            Stmt::Current(w) => set_once(&mut doc.current, w, "current")?,
            Stmt::Last(e) => set_once(&mut doc.last_event, e, "last")?,
            Stmt::Cache(c) => {
                for m in &c.members {
                    doc.kb.check_individual(m)?;
                }
                doc.caches.push(c);
            }
            Stmt::Evolver(ev) => match &mut doc.evolver {
                None => doc.evolver = Some(ev),
                Some(existing) => {
                    existing.initial.extend(ev.initial);
                    for (k, v) in ev.allowed {
                        existing.allowed.entry(k).or_default().extend(v);
                    }
                }
            },
        }
    }
    Ok(doc)
}

fn set_once(slot: &mut Option<String>, value: String, what: &str) -> Result<()> {
    match slot {
        Some(old) if *old != value => Err(Error::Invalid(format!(
            "conflicting `{what}` statements: `{old}` and `{value}`"
        ))),
        _ => {
            *slot = Some(value);
            Ok(())
        }
    }
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Parser { toks: tokenize(text)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<S: Into<String>>(&self, expected: Vec<S>) -> ParseError {
        let t = &self.toks[self.pos];
        ParseError {
            span: t.span,
            expected: expected.into_iter().map(Into::into).collect(),
            found: t.tok.describe(),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(vec![tok.describe()]))
        }
    }

    fn expect_eof(&self) -> Result<(), ParseError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.error(vec!["end of input"]))
        }
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn eat_kw(&mut self, kw: &str) -> bool {
        if self.is_kw(kw) {
            self.bump();
            true
        } else {
            false
        }
    }

    /// A bare, non-keyword identifier.
    fn name(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek() {
            Tok::Ident(s) if !is_keyword(s) => {
                let s = s.clone();
                self.bump();
                Ok(s)
            }
            _ => Err(self.error(vec![what])),
        }
    }

    fn individual(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Tok::Str(s) => {
                let s = s.clone();
                self.bump();
                Ok(s)
            }
            _ => self.name("an individual name"),
        }
    }

    // ---- concept expressions ----

    fn expr(&mut self) -> Result<Concept, ParseError> {
        let first = self.conjunction()?;
        if !self.is_kw("or") {
            return Ok(first);
        }
        let mut items = vec![first];
        while self.eat_kw("or") {
            items.push(self.conjunction()?);
        }
        Ok(Concept::Or(items))
    }

    fn conjunction(&mut self) -> Result<Concept, ParseError> {
        let first = self.unary()?;
        if !self.is_kw("and") {
            return Ok(first);
        }
        let mut items = vec![first];
        while self.eat_kw("and") {
            items.push(self.unary()?);
        }
        Ok(Concept::And(items))
    }

    fn unary(&mut self) -> Result<Concept, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => match s.as_str() {
                "not" => {
                    self.bump();
                    Ok(Concept::not(self.unary()?))
                }
                "all" | "some" => {
                    self.bump();
                    let role = self.role()?;
                    self.expect(Tok::Dot)?;
                    let body = self.unary()?;
                    Ok(if s == "all" {
                        Concept::all(role, body)
                    } else {
                        Concept::some(role, body)
                    })
                }
                "TOP" => {
                    self.bump();
                    Ok(Concept::Top)
                }
                "BOTTOM" => {
                    self.bump();
                    Ok(Concept::Bottom)
                }
                _ if is_keyword(&s) => Err(self.concept_expected()),
                _ => {
                    self.bump();
                    Ok(Concept::Atomic(s))
                }
            },
            Tok::LParen => {
                self.bump();
                if let Tok::Cmp(sym) = *self.peek() {
                    self.bump();
                    let cmp = match sym {
                        "<" => Comparator::Lt,
                        "<=" => Comparator::Le,
                        "=" => Comparator::Eq,
                        ">=" => Comparator::Ge,
                        _ => Comparator::Gt,
                    };
                    let n = match *self.peek() {
                        Tok::Int(n) if n <= u64::from(u32::MAX) => {
                            self.bump();
                            n as u32
                        }
                        _ => return Err(self.error(vec!["a number between 0 and 4294967295"])),
                    };
                    let role = self.role()?;
                    self.expect(Tok::RParen)?;
                    return Ok(Concept::Number(cmp, n, role));
                }
                let c = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(c)
            }
            _ => Err(self.concept_expected()),
        }
    }

    fn concept_expected(&self) -> ParseError {
        self.error(vec!["a concept name", "`TOP`", "`BOTTOM`", "`not`", "`all`", "`some`", "`(`"])
    }

    fn role(&mut self) -> Result<RoleExpr, ParseError> {
        if *self.peek() == Tok::LParen {
            self.bump();
            let mut names = vec![self.name("a role name")?];
            while self.eat_kw("and") {
                names.push(self.name("a role name")?);
            }
            self.expect(Tok::RParen)?;
            Ok(RoleExpr::new(names).expect("at least one role name"))
        } else {
            Ok(RoleExpr::primitive(self.name("a role name or `(`")?))
        }
    }

    // ---- statements ----

    fn assertion(&mut self) -> Result<Assertion, ParseError> {
        if let (Tok::Ident(s), Tok::LParen) = (self.peek(), self.peek_at(1)) {
            if !is_keyword(s) {
                let name = s.clone();
                self.bump();
                self.bump();
                let first = self.individual()?;
                let out = if *self.peek() == Tok::Comma {
                    self.bump();
                    let second = self.individual()?;
                    Assertion::Role(name, first, second)
                } else {
                    Assertion::Concept(Concept::Atomic(name), first)
                };
                self.expect(Tok::RParen)?;
                return Ok(out);
            }
        }
        let c = self.unary()?;
        self.expect(Tok::LParen)?;
        let ind = self.individual()?;
        self.expect(Tok::RParen)?;
        Ok(Assertion::Concept(c, ind))
    }

    fn name_list(&mut self, what: &str, individuals: bool) -> Result<Vec<String>, ParseError> {
        let mut names = Vec::new();
        loop {
            names.push(if individuals { self.individual()? } else { self.name(what)? });
            if *self.peek() != Tok::Comma {
                return Ok(names);
            }
            self.bump();
        }
    }

    fn statement(&mut self) -> Result<Stmt, ParseError> {
        let stmt = match self.peek().clone() {
            Tok::Ident(kw) if kw == "primitive" || kw == "role" || kw == "individual" => {
                self.bump();
                let (kind, what, ind) = match kw.as_str() {
                    "primitive" => (NameKind::Primitive, "a concept name", false),
                    "role" => (NameKind::Role, "a role name", false),
                    _ => (NameKind::Individual, "an individual name", true),
                };
                Stmt::Declare(kind, self.name_list(what, ind)?)
            }
            Tok::Ident(kw) if kw == "view" => {
                self.bump();
                let name = self.name("a view name")?;
                self.expect(Tok::Define)?;
                let body = self.expr()?;
                let mode = if self.eat_kw("actual") {
                    ViewMode::Actual
                } else {
                    self.eat_kw("virtual");
                    ViewMode::Virtual
                };
                Stmt::View(ViewDecl { name, body, mode })
            }
            Tok::Ident(kw) if kw == "event" => {
                self.bump();
                let name = self.name("an event name")?;
                self.expect(Tok::LBrace)?;
                let mut script = Vec::new();
                while *self.peek() != Tok::RBrace {
                    let action = if self.eat_kw("add") {
                        Action::Add(self.assertion()?)
                    } else if self.eat_kw("remove") {
                        Action::Remove(self.assertion()?)
                    } else if self.eat_kw("switch") {
                        Action::SwitchWorld(self.name("a world name")?)
                    } else {
                        return Err(self.error(vec!["`add`", "`remove`", "`switch`", "`}`"]));
                    };
                    self.expect(Tok::Semi)?;
                    script.push(action);
                }
                if script.is_empty() {
                    return Err(self.error(vec!["`add`", "`remove`", "`switch`"]));
                }
                self.bump();
                return Ok(Stmt::Event(Event { name, script }));
            }
            Tok::Ident(kw) if kw == "world" => {
                self.bump();
                let name = self.name("a world name")?;
                self.expect(Tok::LBrace)?;
                let mut assertions = Vec::new();
                while *self.peek() != Tok::RBrace {
                    assertions.push(self.assertion()?);
                    self.expect(Tok::Semi)?;
                }
                self.bump();
                return Ok(Stmt::World(name, assertions));
            }
            Tok::Ident(kw) if kw == "current" => {
                self.bump();
                Stmt::Current(self.name("a world name")?)
            }
            Tok::Ident(kw) if kw == "last" => {
                self.bump();
                Stmt::Last(self.name("an event name")?)
            }
            Tok::Ident(kw) if kw == "cache" => {
                self.bump();
                let view = self.name("a view name")?;
                let world = self.name("a world name")?;
                self.expect(Tok::LBrace)?;
                let mut members = BTreeSet::new();
                if *self.peek() != Tok::RBrace {
                    members.extend(self.name_list("an individual name", true)?);
                }
                self.expect(Tok::RBrace)?;
                Stmt::Cache(CacheDecl { view, world, members })
            }
            Tok::Ident(kw) if kw == "evolver" => {
                self.bump();
                self.expect(Tok::LBrace)?;
                let mut ev = Evolver::default();
                while *self.peek() != Tok::RBrace {
                    if self.eat_kw("initial") {
                        ev.initial.extend(self.name_list("an event name", false)?);
                    } else {
                        let from = self.name("an event name or `initial`")?;
                        self.expect(Tok::Arrow)?;
                        let next = self.name_list("an event name", false)?;
                        ev.allowed.entry(from).or_default().extend(next);
                    }
                    self.expect(Tok::Semi)?;
                }
                self.bump();
                return Ok(Stmt::Evolver(ev));
            }
            Tok::Ident(s) if !is_keyword(&s) && *self.peek_at(1) == Tok::Define => {
                self.bump();
                self.bump();
                Stmt::Define(s, self.expr()?)
            }
            Tok::Ident(_) | Tok::LParen => Stmt::Assert(self.assertion()?),
            _ => {
                return Err(self.error(vec![
                    "`primitive`",
                    "`role`",
                    "`individual`",
                    "a definition",
                    "an assertion",
                    "`view`",
                    "`event`",
                ]))
            }
        };
        self.expect(Tok::Semi)?;
        Ok(stmt)
    }
}
