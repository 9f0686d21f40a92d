//! Reader for problem files.
//!
//! ```text
//! trole R;  tfeature f, h;  arole S;  afeature k;  sfeature g;  cfeature c;
//! primitive A, P temporal;
//! define B temporal eventuality := P or some f . B;
//! check sat B and some (g)(f g).{NTPP};
//! check subsume A and P A;
//! ```
//!
//! Names may be used before their declaration. After an error the reader
//! skips to the next `;` and carries on, so one pass reports every problem.

use std::fmt;

use super::signature::{NameKind, Signature};
use super::syntax::{Chain, Concept, Predicate, Role, RoleKind, Sort};
use super::tbox::{Axiom, TBox};
use crate::algebra::{Calculus, CyctRelation, Rcc8Relation};
use crate::atemporal::AdmissibleDomain;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

/// A `check` line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Directive {
    Sat(Concept),
    /// `check subsume C D`: is `C` subsumed by `D`?
    Subsume(Concept, Concept),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub signature: Signature,
    pub tbox: TBox,
    pub directives: Vec<Directive>,
}

const KEYWORDS: &[&str] = &[
    "top", "bot", "not", "and", "or", "some", "all", "check", "sat", "subsume", "define", "primitive",
    "temporal", "atemporal", "eventuality", "trole", "tfeature", "arole", "afeature", "sfeature", "cfeature",
];

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Sym(&'static str),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (line, col) = (lineno + 1, i + 1);
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c.is_alphanumeric() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                out.push(Token {
                    tok: Tok::Ident(word),
                    line,
                    col,
                });
                continue;
            }
            let sym = match c {
                ':' if chars.get(i + 1) == Some(&'=') => ":=",
                ';' => ";",
                ',' => ",",
                '.' => ".",
                '(' => "(",
                ')' => ")",
                '{' => "{",
                '}' => "}",
                '!' => "!",
                _ => {
                    return Err(ParseError {
                        line,
                        col,
                        message: format!("unexpected character `{c}`"),
                    })
                }
            };
            i += sym.len();
            out.push(Token {
                tok: Tok::Sym(sym),
                line,
                col,
            });
        }
    }
    Ok(out)
}

/// Parses a problem file. `calculus` fixes the arity of spatial predicates
/// and `domain` supplies the aspatial predicates.
pub fn parse(text: &str, calculus: Calculus, domain: &dyn AdmissibleDomain) -> Result<Document, Vec<ParseError>> {
    let tokens = lex(text).map_err(|e| vec![e])?;
    let mut statements: Vec<&[Token]> = Vec::new();
    let mut errors = Vec::new();
    let mut start = 0;
    for (i, t) in tokens.iter().enumerate() {
        if t.tok == Tok::Sym(";") {
            statements.push(&tokens[start..i]);
            start = i + 1;
        }
    }
    if start < tokens.len() {
        let t = &tokens[tokens.len() - 1];
        errors.push(ParseError {
            line: t.line,
            col: t.col,
            message: "missing `;` at end of input".into(),
        });
    }

    let mut sig = Signature::new();
    let mut heads: Vec<(usize, String, Sort, bool)> = Vec::new();
    for (si, stmt) in statements.iter().enumerate() {
        if stmt.is_empty() {
            continue;
        }
        let mut p = Cursor::new(stmt);
        if let Err(e) = declare(&mut p, &mut sig, &mut heads, si) {
            errors.push(e);
        }
    }

    let mut tbox = TBox::new();
    let mut directives = Vec::new();
    let ctx = Context {
        sig: &sig,
        calculus,
        domain,
    };
    for (si, stmt) in statements.iter().enumerate() {
        let Some(first) = stmt.first() else { continue };
        let mut p = Cursor::new(stmt);
        let res = match &first.tok {
            Tok::Ident(w) if w == "define" => {
                let Some((_, name, sort, ev)) = heads.iter().find(|h| h.0 == si).cloned() else {
                    continue;
                };
                p.pos = stmt.iter().position(|t| t.tok == Tok::Sym(":=")).map_or(stmt.len(), |i| i + 1);
                ctx.concept_to_end(&mut p).and_then(|(rhs, rsort)| {
                    if rsort.is_some_and(|s| s != sort) {
                        return Err(p.error_at(first, format!("`{name}` is declared {sort} but its definition is not")));
                    }
                    tbox.add(Axiom {
                        name: name.clone(),
                        sort,
                        eventuality: ev,
                        rhs,
                    })
                    .map_err(|_| p.error_at(first, format!("`{name}` is defined more than once")))
                })
            }
            Tok::Ident(w) if w == "check" => ctx.directive(&mut p).map(|d| directives.push(d)),
            _ => Ok(()),
        };
        if let Err(e) = res {
            errors.push(e);
        }
    }

    if errors.is_empty() {
        Ok(Document {
            signature: sig,
            tbox,
            directives,
        })
    } else {
        errors.sort_by_key(|e| (e.line, e.col));
        Err(errors)
    }
}

/// Parses a single concept against an existing signature.
pub fn parse_concept(
    text: &str,
    sig: &Signature,
    calculus: Calculus,
    domain: &dyn AdmissibleDomain,
) -> Result<Concept, ParseError> {
    let tokens = lex(text)?;
    let mut p = Cursor::new(&tokens);
    let ctx = Context { sig, calculus, domain };
    ctx.concept_to_end(&mut p).map(|(c, _)| c)
}

struct Cursor<'a> {
    toks: &'a [Token],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(toks: &'a [Token]) -> Self {
        Cursor { toks, pos: 0 }
    }

    fn peek(&self) -> Option<&'a Token> {
        self.toks.get(self.pos)
    }

    fn peek_is(&self, s: &str) -> bool {
        match self.peek().map(|t| &t.tok) {
            Some(Tok::Sym(x)) => *x == s,
            Some(Tok::Ident(x)) => x == s,
            None => false,
        }
    }

    fn next(&mut self) -> Option<&'a Token> {
        let t = self.toks.get(self.pos);
        self.pos += 1;
        t
    }

    fn error_at(&self, t: &Token, message: String) -> ParseError {
        ParseError {
            line: t.line,
            col: t.col,
            message,
        }
    }

    fn error_here(&self, message: impl Into<String>) -> ParseError {
        let message = message.into();
        match self.peek().or(self.toks.last()) {
            Some(t) => self.error_at(t, message),
            None => ParseError {
                line: 1,
                col: 1,
                message,
            },
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), ParseError> {
        if self.peek_is(s) {
            self.pos += 1;
            Ok(())
        } else {
            let found = self.describe();
            Err(self.error_here(format!("expected `{s}`, found {found}")))
        }
    }

    fn describe(&self) -> String {
        match self.peek().map(|t| &t.tok) {
            Some(Tok::Ident(w)) => format!("`{w}`"),
            Some(Tok::Sym(s)) => format!("`{s}`"),
            None => "end of statement".into(),
        }
    }

    /// An identifier that is not a keyword.
    fn name(&mut self) -> Result<(&'a Token, &'a str), ParseError> {
        match self.peek() {
            Some(t @ Token { tok: Tok::Ident(w), .. }) if !KEYWORDS.contains(&w.as_str()) => {
                self.pos += 1;
                Ok((t, w.as_str()))
            }
            _ => {
                let found = self.describe();
                Err(self.error_here(format!("expected a name, found {found}")))
            }
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }
}

fn declare(
    p: &mut Cursor<'_>,
    sig: &mut Signature,
    heads: &mut Vec<(usize, String, Sort, bool)>,
    stmt: usize,
) -> Result<(), ParseError> {
    let first = p.next().expect("nonempty statement");
    let Tok::Ident(kw) = &first.tok else {
        return Err(p.error_at(first, "expected a declaration, definition or directive".into()));
    };
    let mut add = |p: &Cursor<'_>, t: &Token, name: &str, kind: NameKind| {
        sig.declare(name, kind)
            .map_err(|_| p.error_at(t, format!("`{name}` is declared more than once")))
    };
    let kind = match kw.as_str() {
        "trole" => Some(NameKind::Role(RoleKind::TemporalRole)),
        "tfeature" => Some(NameKind::Role(RoleKind::TemporalFeature)),
        "arole" => Some(NameKind::Role(RoleKind::AtemporalRole)),
        "afeature" => Some(NameKind::Role(RoleKind::AtemporalFeature)),
        "sfeature" => Some(NameKind::SpatialFeature),
        "cfeature" => Some(NameKind::AspatialFeature),
        _ => None,
    };
    if let Some(kind) = kind {
        loop {
            let (t, n) = p.name()?;
            add(p, t, n, kind)?;
            if p.at_end() {
                return Ok(());
            }
            p.expect(",")?;
        }
    }
    match kw.as_str() {
        "primitive" => {
            let mut names = vec![p.name()?];
            while p.peek_is(",") {
                p.next();
                names.push(p.name()?);
            }
            let sort = sort_keyword(p)?;
            if !p.at_end() {
                return Err(p.error_here("expected `;` after the sort"));
            }
            for (t, n) in names {
                add(p, t, n, NameKind::Concept(sort))?;
            }
            Ok(())
        }
        "define" => {
            let (t, n) = p.name()?;
            let sort = sort_keyword(p)?;
            let ev = if p.peek_is("eventuality") {
                p.next();
                true
            } else {
                false
            };
            if ev && sort == Sort::Atemporal {
                return Err(p.error_at(t, format!("atemporal `{n}` cannot be an eventuality")));
            }
            p.expect(":=")?;
            add(p, t, n, NameKind::Concept(sort))?;
            heads.push((stmt, n.to_string(), sort, ev));
            Ok(())
        }
        "check" => Ok(()),
        _ => Err(p.error_at(first, format!("expected a declaration, definition or directive, found `{kw}`"))),
    }
}

fn sort_keyword(p: &mut Cursor<'_>) -> Result<Sort, ParseError> {
    if p.peek_is("temporal") {
        p.next();
        Ok(Sort::Temporal)
    } else if p.peek_is("atemporal") {
        p.next();
        Ok(Sort::Atemporal)
    } else {
        let found = p.describe();
        Err(p.error_here(format!("expected `temporal` or `atemporal`, found {found}")))
    }
}

struct Context<'s> {
    sig: &'s Signature,
    calculus: Calculus,
    domain: &'s dyn AdmissibleDomain,
}

type Sorted = (Concept, Option<Sort>);

impl Context<'_> {
    fn directive(&self, p: &mut Cursor<'_>) -> Result<Directive, ParseError> {
        p.expect("check")?;
        if p.peek_is("sat") {
            p.next();
            self.concept_to_end(p).map(|(c, _)| Directive::Sat(c))
        } else if p.peek_is("subsume") {
            p.next();
            let start = p.peek();
            let (c, cs) = self.concept(p)?;
            let (d, ds) = self.concept_to_end(p)?;
            if let (Some(a), Some(b)) = (cs, ds) {
                if a != b {
                    let t = start.expect("concept has a first token");
                    return Err(p.error_at(t, format!("cannot compare a {a} concept with a {b} concept")));
                }
            }
            Ok(Directive::Subsume(c, d))
        } else {
            let found = p.describe();
            Err(p.error_here(format!("expected `sat` or `subsume`, found {found}")))
        }
    }

    fn concept_to_end(&self, p: &mut Cursor<'_>) -> Result<Sorted, ParseError> {
        let c = self.concept(p)?;
        if !p.at_end() {
            let found = p.describe();
            return Err(p.error_here(format!("unexpected {found} after concept")));
        }
        Ok(c)
    }

    fn combine(p: &Cursor<'_>, at: Option<&Token>, a: Option<Sort>, b: Option<Sort>) -> Result<Option<Sort>, ParseError> {
        match (a, b) {
            (Some(x), Some(y)) if x != y => {
                let msg = "sort clash: cannot combine temporal and atemporal concepts".to_string();
                Err(match at {
                    Some(t) => p.error_at(t, msg),
                    None => p.error_here(msg),
                })
            }
            (x, y) => Ok(x.or(y)),
        }
    }

    fn concept(&self, p: &mut Cursor<'_>) -> Result<Sorted, ParseError> {
        let (first, mut sort) = self.conjunction(p)?;
        let mut items = vec![first];
        while p.peek_is("or") {
            p.next();
            let at = p.peek();
            let (c, s) = self.conjunction(p)?;
            sort = Self::combine(p, at, sort, s)?;
            items.push(c);
        }
        let c = if items.len() == 1 { items.pop().unwrap() } else { Concept::Or(items) };
        Ok((c, sort))
    }

    fn conjunction(&self, p: &mut Cursor<'_>) -> Result<Sorted, ParseError> {
        let (first, mut sort) = self.unary(p)?;
        let mut items = vec![first];
        while p.peek_is("and") {
            p.next();
            let at = p.peek();
            let (c, s) = self.unary(p)?;
            sort = Self::combine(p, at, sort, s)?;
            items.push(c);
        }
        let c = if items.len() == 1 { items.pop().unwrap() } else { Concept::And(items) };
        Ok((c, sort))
    }

    fn unary(&self, p: &mut Cursor<'_>) -> Result<Sorted, ParseError> {
        let Some(t) = p.peek() else {
            return Err(p.error_here("expected a concept, found end of statement"));
        };
        match &t.tok {
            Tok::Sym("(") => {
                p.next();
                let c = self.concept(p)?;
                p.expect(")")?;
                Ok(c)
            }
            Tok::Ident(w) => match w.as_str() {
                "top" => {
                    p.next();
                    Ok((Concept::Top, None))
                }
                "bot" => {
                    p.next();
                    Ok((Concept::Bot, None))
                }
                "not" => {
                    p.next();
                    let (c, s) = self.unary(p)?;
                    Ok((Concept::not(c), s))
                }
                "some" | "all" => {
                    p.next();
                    if w == "some" && p.peek_is("(") {
                        return self.predicate(p);
                    }
                    let (rt, rname) = p.name()?;
                    let kind = match self.sig.kind(rname) {
                        Some(NameKind::Role(k)) => k,
                        Some(_) => return Err(p.error_at(rt, format!("`{rname}` is not a role"))),
                        None => return Err(p.error_at(rt, format!("unknown role `{rname}`"))),
                    };
                    let role = Role::new(rname, kind);
                    p.expect(".")?;
                    let at = p.peek();
                    let (body, bs) = self.unary(p)?;
                    if !role.is_temporal() && bs == Some(Sort::Temporal) {
                        let t = at.expect("body has a first token");
                        return Err(p.error_at(t, format!("atemporal role `{rname}` cannot reach a temporal concept")));
                    }
                    let sort = if role.is_temporal() { Sort::Temporal } else { Sort::Atemporal };
                    let c = if w == "some" {
                        Concept::exists(role, body)
                    } else {
                        Concept::forall(role, body)
                    };
                    Ok((c, Some(sort)))
                }
                _ => {
                    let (nt, n) = p.name()?;
                    match self.sig.kind(n) {
                        Some(NameKind::Concept(s)) => Ok((Concept::name(n, s), Some(s))),
                        Some(_) => Err(p.error_at(nt, format!("`{n}` is not a concept name"))),
                        None => Err(p.error_at(nt, format!("unknown concept name `{n}`"))),
                    }
                }
            },
            Tok::Sym(s) => Err(p.error_at(t, format!("expected a concept, found `{s}`"))),
        }
    }

    fn chain<'a>(&self, p: &mut Cursor<'a>) -> Result<(Chain, &'a Token), ParseError> {
        let open = p.peek().expect("caller saw `(`");
        p.expect("(")?;
        let mut names = Vec::new();
        while !p.peek_is(")") {
            names.push(p.name()?);
        }
        p.next();
        let Some(&(tip_tok, tip)) = names.last() else {
            return Err(p.error_at(open, "empty feature chain".into()));
        };
        let spatial = match self.sig.kind(tip) {
            Some(NameKind::SpatialFeature) => true,
            Some(NameKind::AspatialFeature) => false,
            Some(_) => return Err(p.error_at(tip_tok, format!("`{tip}` is not a concrete feature"))),
            None => return Err(p.error_at(tip_tok, format!("unknown concrete feature `{tip}`"))),
        };
        let want = if spatial {
            RoleKind::TemporalFeature
        } else {
            RoleKind::AtemporalFeature
        };
        for &(t, n) in &names[..names.len() - 1] {
            if self.sig.kind(n) != Some(NameKind::Role(want)) {
                let what = if spatial { "temporal" } else { "atemporal" };
                return Err(p.error_at(t, format!("`{n}` is not a {what} abstract feature")));
            }
        }
        let features: Vec<&str> = names[..names.len() - 1].iter().map(|(_, n)| *n).collect();
        Ok((Chain::new(&features, tip, spatial), open))
    }

    fn predicate(&self, p: &mut Cursor<'_>) -> Result<Sorted, ParseError> {
        let mut chains = Vec::new();
        let first = p.peek().expect("caller saw `(`");
        while p.peek_is("(") {
            let (ch, t) = self.chain(p)?;
            if let Some(prev) = chains.first() {
                let prev: &Chain = prev;
                if prev.spatial != ch.spatial {
                    return Err(p.error_at(t, "cannot mix spatial and aspatial chains".into()));
                }
            }
            chains.push(ch);
        }
        p.expect(".")?;
        let spatial = chains[0].spatial;
        let n = chains.len();
        if spatial {
            let at = p.peek();
            p.expect("{")?;
            let mut words = Vec::new();
            while !p.peek_is("}") {
                let Some(t) = p.next() else {
                    return Err(p.error_here("unterminated relation"));
                };
                match &t.tok {
                    Tok::Ident(w) => words.push(w.clone()),
                    Tok::Sym(",") => {}
                    Tok::Sym(s) => return Err(p.error_at(t, format!("unexpected `{s}` in relation"))),
                }
            }
            p.next();
            let text = format!("{{{}}}", words.join(","));
            let at = at.expect("saw `{`");
            let pred = match self.calculus {
                Calculus::Rcc8 => Predicate::Rcc8(text.parse::<Rcc8Relation>().map_err(|e| p.error_at(at, e.to_string()))?),
                Calculus::Cyct => Predicate::Cyct(text.parse::<CyctRelation>().map_err(|e| p.error_at(at, e.to_string()))?),
            };
            let arity = self.calculus.arity();
            if n != arity {
                return Err(p.error_at(
                    first,
                    format!("calculus {} takes {arity} feature chains, found {n}", self.calculus),
                ));
            }
            Ok((Concept::Pred(chains, pred), Some(Sort::Temporal)))
        } else {
            let braced = p.peek_is("{");
            if braced {
                p.next();
            }
            let negated = p.peek_is("!");
            if negated {
                p.next();
            }
            let (t, name) = p.name()?;
            if braced {
                p.expect("}")?;
            }
            let Some(arity) = self.domain.arity(name) else {
                return Err(p.error_at(t, format!("unknown predicate `{name}` of domain {}", self.domain.name())));
            };
            if arity != n {
                return Err(p.error_at(t, format!("predicate `{name}` takes {arity} feature chains, found {n}")));
            }
            Ok((
                Concept::Pred(
                    chains,
                    Predicate::Domain {
                        name: name.to_string(),
                        negated,
                    },
                ),
                Some(Sort::Atemporal),
            ))
        }
    }
}
