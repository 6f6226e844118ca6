//! Concrete syntax for both calculi. Every parsed node is mapped, by its
//! kernel child path, to the source span it came from.

use std::collections::BTreeMap;
use std::fmt;

use mumu_core::harness::Sort;
use mumu_core::lm::{LmCommand, LmContext, LmSubject, LmTerm};
use mumu_core::lmm::{LbCommand, LbContext, LbSubject, LbTerm};
use mumu_core::{CoVarName, Position, VarName};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SourceSpan {
    /// Byte offsets into the source.
    pub begin: usize,
    pub end: usize,
    /// 1-based, of `begin`.
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("{span}: {message}")]
    Syntax { message: String, span: SourceSpan },
    #[error("expected a {expected} but found a {found}")]
    WrongSort { expected: &'static str, found: &'static str },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parsed<S> {
    pub subject: S,
    pub spans: BTreeMap<Position, SourceSpan>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    CoIdent(String),
    Mu,
    Mt,
    Backslash,
    Dot,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Hash,
    At,
    Lt,
    Gt,
    Bar,
    Star,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(x) => write!(f, "'{}'", x),
            Tok::CoIdent(a) => write!(f, "''{}'", a),
            Tok::Mu => f.write_str("'mu'"),
            Tok::Mt => f.write_str("'mt'"),
            Tok::Backslash => f.write_str("'\\'"),
            Tok::Dot => f.write_str("'.'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::LBracket => f.write_str("'['"),
            Tok::RBracket => f.write_str("']'"),
            Tok::Hash => f.write_str("'#'"),
            Tok::At => f.write_str("'@'"),
            Tok::Lt => f.write_str("'<'"),
            Tok::Gt => f.write_str("'>'"),
            Tok::Bar => f.write_str("'|'"),
            Tok::Star => f.write_str("'*'"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_lowercase() || c.is_ascii_digit()
}

fn lex(src: &str) -> Result<Vec<(Tok, SourceSpan)>, ParseError> {
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut chars = src.char_indices().peekable();
    let span = |begin: usize, end: usize, line: usize, column: usize| SourceSpan {
        begin,
        end,
        line,
        column,
    };
    while let Some(&(i, c)) = chars.peek() {
        let (l0, c0) = (line, col);
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        let word = |chars: &mut std::iter::Peekable<std::str::CharIndices>, col: &mut usize| {
            let mut w = String::new();
            while let Some(&(_, c)) = chars.peek() {
                if !is_ident_char(c) {
                    break;
                }
                w.push(c);
                chars.next();
                *col += 1;
            }
            w
        };
        let tok = if c.is_ascii_lowercase() {
            let w = word(&mut chars, &mut col);
            match w.as_str() {
                "mu" => Tok::Mu,
                "mt" => Tok::Mt,
                _ => Tok::Ident(w),
            }
        } else if c == '\'' {
            chars.next();
            col += 1;
            let w = word(&mut chars, &mut col);
            if !w.starts_with(|c: char| c.is_ascii_lowercase()) {
                return Err(ParseError::Syntax {
                    message: "expected a covariable name after '''".into(),
                    span: span(i, i + 1, l0, c0),
                });
            }
            Tok::CoIdent(w)
        } else {
            chars.next();
            col += 1;
            match c {
                '\\' | 'λ' => Tok::Backslash,
                '.' => Tok::Dot,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                '#' => Tok::Hash,
                '@' => Tok::At,
                '<' => Tok::Lt,
                '>' => Tok::Gt,
                '|' => Tok::Bar,
                '*' => Tok::Star,
                _ => {
                    return Err(ParseError::Syntax {
                        message: format!("unexpected character {:?}", c),
                        span: span(i, i + c.len_utf8(), l0, c0),
                    })
                }
            }
        };
        let end = chars.peek().map_or(src.len(), |&(j, _)| j);
        out.push((tok, span(i, end, l0, c0)));
    }
    out.push((Tok::Eof, span(src.len(), src.len(), line, col)));
    Ok(out)
}

/// Spans of a node and its children, in kernel child order.
struct SpanTree {
    span: SourceSpan,
    children: Vec<SpanTree>,
}

impl SpanTree {
    fn leaf(span: SourceSpan) -> Self {
        SpanTree { span, children: Vec::new() }
    }

    fn flatten(self, path: &mut Position, out: &mut BTreeMap<Position, SourceSpan>) {
        out.insert(path.clone(), self.span);
        for (i, c) in self.children.into_iter().enumerate() {
            path.push(i);
            c.flatten(path, out);
            path.pop();
        }
    }
}

struct Parser {
    toks: Vec<(Tok, SourceSpan)>,
    pos: usize,
}

type PResult<T> = Result<(T, SpanTree), ParseError>;

impl Parser {
    fn new(src: &str) -> Result<Self, ParseError> {
        Ok(Parser { toks: lex(src)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> SourceSpan {
        self.toks[self.pos].1
    }

    fn prev_end(&self) -> usize {
        self.pos.checked_sub(1).map_or(0, |p| self.toks[p].1.end)
    }

    fn from(&self, start: SourceSpan) -> SourceSpan {
        SourceSpan {
            end: self.prev_end().max(start.begin),
            ..start
        }
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, what: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            message: format!("expected {}, found {}", what, self.peek()),
            span: self.span(),
        })
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(&tok.to_string())
        }
    }

    fn ident(&mut self) -> Result<VarName, ParseError> {
        match self.peek().clone() {
            Tok::Ident(x) => {
                self.bump();
                Ok(VarName::new(x))
            }
            _ => self.error("a variable"),
        }
    }

    fn coident(&mut self) -> Result<CoVarName, ParseError> {
        match self.peek().clone() {
            Tok::CoIdent(a) => {
                self.bump();
                Ok(CoVarName::new(a))
            }
            _ => self.error("a covariable"),
        }
    }

    fn end(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Eof => Ok(()),
            _ => self.error("end of input"),
        }
    }

    // ---- λμ ----

    fn lm_atom_start(&self) -> bool {
        matches!(self.peek(), Tok::Ident(_) | Tok::Backslash | Tok::Mu | Tok::LParen)
    }

    fn lm_term(&mut self) -> PResult<LmTerm> {
        let start = self.span();
        let (mut t, mut tree) = self.lm_atom()?;
        while self.lm_atom_start() {
            let (a, at) = self.lm_atom()?;
            t = LmTerm::App(Box::new(t), Box::new(a));
            tree = SpanTree {
                span: self.from(start),
                children: vec![tree, at],
            };
        }
        Ok((t, tree))
    }

    fn lm_atom(&mut self) -> PResult<LmTerm> {
        let start = self.span();
        match self.peek() {
            Tok::Ident(_) => {
                let x = self.ident()?;
                Ok((LmTerm::Var(x), SpanTree::leaf(start)))
            }
            Tok::Backslash => {
                self.bump();
                let x = self.ident()?;
                self.expect(Tok::Dot)?;
                let (b, bt) = self.lm_term()?;
                Ok((LmTerm::Lam(x, Box::new(b)), SpanTree { span: self.from(start), children: vec![bt] }))
            }
            Tok::Mu => {
                self.bump();
                let a = self.coident()?;
                self.expect(Tok::Dot)?;
                let (c, ct) = self.lm_command()?;
                Ok((LmTerm::Mu(a, Box::new(c)), SpanTree { span: self.from(start), children: vec![ct] }))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.lm_term()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            _ => self.error("a term"),
        }
    }

    fn lm_command(&mut self) -> PResult<LmCommand> {
        let start = self.span();
        self.expect(Tok::LBracket)?;
        let a = self.coident()?;
        self.expect(Tok::RBracket)?;
        let (t, tt) = self.lm_term()?;
        Ok((LmCommand::new(a, t), SpanTree { span: self.from(start), children: vec![tt] }))
    }

    fn lm_context(&mut self) -> PResult<LmContext> {
        let start = self.span();
        self.expect(Tok::LBracket)?;
        let a = self.coident()?;
        self.expect(Tok::RBracket)?;
        let (mut e, mut tree) = match self.peek() {
            Tok::Hash => {
                self.bump();
                (LmContext::CoVar(a), SpanTree::leaf(self.from(start)))
            }
            Tok::LParen => {
                self.bump();
                let (u, ut) = self.lm_term()?;
                self.expect(Tok::Hash)?;
                self.expect(Tok::RParen)?;
                (LmContext::AppTo(Box::new(u), a), SpanTree { span: self.from(start), children: vec![ut] })
            }
            _ => return self.error("'#' or '('"),
        };
        while *self.peek() == Tok::At {
            self.bump();
            let (u, ut) = self.lm_term()?;
            e = LmContext::ArgStack(Box::new(e), Box::new(u));
            tree = SpanTree {
                span: self.from(start),
                children: vec![tree, ut],
            };
        }
        Ok((e, tree))
    }

    // ---- λ̄μμ̃ ----

    fn lb_term(&mut self) -> PResult<LbTerm> {
        let start = self.span();
        match self.peek() {
            Tok::Ident(_) => {
                let x = self.ident()?;
                Ok((LbTerm::Var(x), SpanTree::leaf(start)))
            }
            Tok::Backslash => {
                self.bump();
                let x = self.ident()?;
                self.expect(Tok::Dot)?;
                let (b, bt) = self.lb_term()?;
                Ok((LbTerm::Lam(x, Box::new(b)), SpanTree { span: self.from(start), children: vec![bt] }))
            }
            Tok::Mu => {
                self.bump();
                let a = self.coident()?;
                self.expect(Tok::Dot)?;
                let (c, ct) = self.lb_command()?;
                Ok((LbTerm::Mu(a, Box::new(c)), SpanTree { span: self.from(start), children: vec![ct] }))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.lb_term()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            _ => self.error("a term"),
        }
    }

    fn lb_command(&mut self) -> PResult<LbCommand> {
        let start = self.span();
        self.expect(Tok::Lt)?;
        let (t, tt) = self.lb_term()?;
        self.expect(Tok::Bar)?;
        let (e, et) = self.lb_context()?;
        self.expect(Tok::Gt)?;
        Ok((LbCommand::cut(t, e), SpanTree { span: self.from(start), children: vec![tt, et] }))
    }

    fn lb_context(&mut self) -> PResult<LbContext> {
        let start = self.span();
        match self.peek() {
            Tok::CoIdent(_) => {
                let a = self.coident()?;
                Ok((LbContext::CoVar(a), SpanTree::leaf(start)))
            }
            Tok::Mt => {
                self.bump();
                let x = self.ident()?;
                self.expect(Tok::Dot)?;
                let (c, ct) = self.lb_command()?;
                Ok((LbContext::MuTilde(x, Box::new(c)), SpanTree { span: self.from(start), children: vec![ct] }))
            }
            Tok::LParen => {
                // either a parenthesised term heading a cons, or a
                // parenthesised context
                let saved = self.pos;
                let as_term = self.lb_term().and_then(|t| match self.peek() {
                    Tok::Star => Ok(t),
                    _ => self.error("'*'"),
                });
                match as_term {
                    Ok(head) => self.lb_cons_tail(start, head),
                    Err(term_err) => {
                        let term_pos = self.pos;
                        self.pos = saved + 1;
                        let inner = self.lb_context().and_then(|e| self.expect(Tok::RParen).map(|_| e));
                        match inner {
                            Ok(e) => Ok(e),
                            // report whichever reading got further
                            Err(ctx_err) if self.pos >= term_pos => Err(ctx_err),
                            Err(_) => Err(term_err),
                        }
                    }
                }
            }
            Tok::Ident(_) | Tok::Backslash | Tok::Mu => {
                let head = self.lb_term()?;
                self.lb_cons_tail(start, head)
            }
            _ => self.error("a context"),
        }
    }

    fn lb_cons_tail(&mut self, start: SourceSpan, (t, tt): (LbTerm, SpanTree)) -> PResult<LbContext> {
        self.expect(Tok::Star)?;
        let (e, et) = self.lb_context()?;
        Ok((LbContext::cons(t, e), SpanTree { span: self.from(start), children: vec![tt, et] }))
    }
}

fn finish<S>(p: &mut Parser, r: PResult<S>) -> Result<Parsed<S>, ParseError> {
    let (subject, tree) = r?;
    p.end()?;
    let mut spans = BTreeMap::new();
    tree.flatten(&mut Vec::new(), &mut spans);
    Ok(Parsed { subject, spans })
}

fn parse_lm_as(src: &str, sort: Sort) -> Result<Parsed<LmSubject>, ParseError> {
    let mut p = Parser::new(src)?;
    match sort {
        Sort::Term => {
            let r = p.lm_term().map(|(t, s)| (LmSubject::Term(t), s));
            finish(&mut p, r)
        }
        Sort::Command => {
            let r = p.lm_command().map(|(t, s)| (LmSubject::Command(t), s));
            finish(&mut p, r)
        }
        Sort::Context => {
            let r = p.lm_context().map(|(t, s)| (LmSubject::Context(t), s));
            finish(&mut p, r)
        }
    }
}

fn parse_lmm_as(src: &str, sort: Sort) -> Result<Parsed<LbSubject>, ParseError> {
    let mut p = Parser::new(src)?;
    match sort {
        Sort::Term => {
            let r = p.lb_term().map(|(t, s)| (LbSubject::Term(t), s));
            finish(&mut p, r)
        }
        Sort::Command => {
            let r = p.lb_command().map(|(t, s)| (LbSubject::Command(t), s));
            finish(&mut p, r)
        }
        Sort::Context => {
            let r = p.lb_context().map(|(t, s)| (LbSubject::Context(t), s));
            finish(&mut p, r)
        }
    }
}

const SORTS: [Sort; 3] = [Sort::Term, Sort::Command, Sort::Context];

/// On failure, a subject that parses at another sort is reported as such.
fn with_sort_hint<S>(
    src: &str,
    sort: Sort,
    parse: impl Fn(&str, Sort) -> Result<Parsed<S>, ParseError>,
) -> Result<Parsed<S>, ParseError> {
    parse(src, sort).map_err(|err| {
        SORTS
            .into_iter()
            .filter(|&s| s != sort)
            .find(|&s| parse(src, s).is_ok())
            .map_or(err, |found| ParseError::WrongSort {
                expected: sort.name(),
                found: found.name(),
            })
    })
}

pub fn parse_lm(src: &str, sort: Sort) -> Result<Parsed<LmSubject>, ParseError> {
    with_sort_hint(src, sort, parse_lm_as)
}

pub fn parse_lmm(src: &str, sort: Sort) -> Result<Parsed<LbSubject>, ParseError> {
    with_sort_hint(src, sort, parse_lmm_as)
}

/// The first sort, in term/command/context order, at which `src` parses.
pub fn parse_lm_any(src: &str) -> Result<Parsed<LmSubject>, ParseError> {
    first_sort(src, parse_lm_as)
}

pub fn parse_lmm_any(src: &str) -> Result<Parsed<LbSubject>, ParseError> {
    first_sort(src, parse_lmm_as)
}

fn first_sort<S>(src: &str, parse: impl Fn(&str, Sort) -> Result<Parsed<S>, ParseError>) -> Result<Parsed<S>, ParseError> {
    let mut furthest: Option<ParseError> = None;
    for sort in SORTS {
        match parse(src, sort) {
            Ok(p) => return Ok(p),
            Err(e) => {
                let better = match (&furthest, &e) {
                    (None, _) => true,
                    (Some(ParseError::Syntax { span: a, .. }), ParseError::Syntax { span: b, .. }) => b.begin > a.begin,
                    _ => false,
                };
                if better {
                    furthest = Some(e);
                }
            }
        }
    }
    Err(furthest.expect("three attempts"))
}
