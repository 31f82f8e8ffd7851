//! Recursive-descent parser for spec files, sentences, actions and terms.
//!
//! Precedence, loosest to tightest — sentences: binders (`store`, `forall`,
//! `exists`, scoping to the end of the enclosing group), then `=>`/`~>`, then
//! `\/`/`(+)`, then `/\`, then the prefix operators `!`, `~`, `[a]`, `<a>`,
//! `@ t`; actions: `+` then `;` then postfix `*`. Sentence and action infix
//! operators associate to the right; term arithmetic (`+ - * /`) folds left as
//! usual. Abbreviations are expanded into core forms while parsing.

use super::lexer::{lex, Tok, Token};
use super::ParseError;
use crate::linalg::C64;
use crate::sentence::{is_basic, Action, Sentence};
use crate::signature::{Signature, SymbolKind};
use crate::specfile::{Decl, ExtentExpr, MatExpr, QueryDecl, SpecFile};
use crate::term::{Scalar, Term};

const RESERVED: &[&str] = &[
    "dim", "epsilon", "star_budget", "term_depth", "param", "scalar", "vec", "gate", "meas",
    "prop", "closed", "axiom", "query", "at", "exists", "store", "forall", "until", "ket", "span",
    "all", "empty", "sqrt", "kron", "unit2", "complex",
];

pub fn parse_spec(input: &str) -> Result<SpecFile, ParseError> {
    let tokens = lex(input)?;
    let mut p = Parser::new(tokens, Signature::new());
    p.spec_file()
}

/// Parses a closed sentence against an existing signature (CLI `--sentence`).
pub fn parse_sentence_str(input: &str, sig: &Signature) -> Result<Sentence, ParseError> {
    let tokens = lex(input)?;
    let mut p = Parser::new(tokens, sig.clone());
    let s = p.sentence()?;
    p.expect_eof()?;
    Ok(s)
}

/// Parses a ground vector term against an existing signature (CLI `--at`).
pub fn parse_term_str(input: &str, sig: &Signature) -> Result<Term, ParseError> {
    let tokens = lex(input)?;
    let mut p = Parser::new(tokens, sig.clone());
    let e = p.expr()?;
    let t = p.to_vector(&e)?;
    p.expect_eof()?;
    Ok(t)
}

/// Parses `exists x y . BODY` against an existing signature (CLI `--query`).
pub fn parse_query_str(input: &str, sig: &Signature) -> Result<QueryDecl, ParseError> {
    let tokens = lex(input)?;
    let mut p = Parser::new(tokens, sig.clone());
    let q = p.query_tail(None)?;
    p.expect_eof()?;
    Ok(q)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    sig: Signature,
    scope: Vec<String>,
}

impl Parser {
    fn new(tokens: Vec<Token>, sig: Signature) -> Parser {
        Parser {
            tokens,
            pos: 0,
            sig,
            scope: Vec::new(),
        }
    }

    // -- token plumbing -------------------------------------------------------

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        match self.tokens.get(self.pos) {
            Some(t) => (t.line, t.col),
            None => self
                .tokens
                .last()
                .map(|t| (t.line, t.col + t.tok.to_string().len()))
                .unwrap_or((1, 1)),
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        let (line, col) = self.here();
        Err(ParseError {
            line,
            col,
            message: message.into(),
        })
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if self.eat(&tok) {
            Ok(())
        } else {
            match self.peek() {
                Some(got) => self.err(format!("expected `{tok}`, found `{got}`")),
                None => self.err(format!("expected `{tok}`, found end of input")),
            }
        }
    }

    fn expect_eof(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => self.err(format!("unexpected `{t}` after the end of the phrase")),
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            Some(t) => self.err(format!("expected an identifier, found `{t}`")),
            None => self.err("expected an identifier, found end of input"),
        }
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == kw)
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        if self.at_keyword(kw) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn usize_lit(&mut self) -> Result<usize, ParseError> {
        match self.peek() {
            Some(Tok::Number { value, raw }) if raw.chars().all(|c| c.is_ascii_digit()) => {
                let v = *value as usize;
                self.pos += 1;
                Ok(v)
            }
            _ => self.err("expected a nonnegative integer"),
        }
    }

    fn float_lit(&mut self) -> Result<f64, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Number { value, .. }) => {
                self.pos += 1;
                Ok(value)
            }
            _ => self.err("expected a number"),
        }
    }

    // -- spec files -----------------------------------------------------------

    fn spec_file(&mut self) -> Result<SpecFile, ParseError> {
        let mut dim: Option<usize> = None;
        let mut epsilon = None;
        let mut star_budget = None;
        let mut term_depth = None;
        let mut decls = Vec::new();
        let mut axioms = Vec::new();
        let mut queries = Vec::new();

        while let Some(tok) = self.peek() {
            let Tok::Ident(word) = tok else {
                return self.err(format!("expected a declaration keyword, found `{tok}`"));
            };
            match word.as_str() {
                "dim" => {
                    self.pos += 1;
                    if dim.is_some() {
                        return self.err("duplicate dimension declaration");
                    }
                    let d = self.usize_lit()?;
                    if d == 0 {
                        return self.err("dimension must be positive");
                    }
                    dim = Some(d);
                }
                "epsilon" => {
                    self.pos += 1;
                    let e = self.float_lit()?;
                    if e <= 0.0 {
                        return self.err("epsilon must be positive");
                    }
                    epsilon = Some(e);
                }
                "star_budget" => {
                    self.pos += 1;
                    let b = self.usize_lit()?;
                    if b == 0 {
                        return self.err("star_budget must be at least 1");
                    }
                    star_budget = Some(b);
                }
                "term_depth" => {
                    self.pos += 1;
                    let d = self.usize_lit()?;
                    if d == 0 {
                        return self.err("term_depth must be at least 1");
                    }
                    term_depth = Some(d);
                }
                "param" => {
                    self.pos += 1;
                    let a = self.declared_name()?;
                    self.sig.scalar_consts.insert(a.clone());
                    let b = self.declared_name()?;
                    self.sig.scalar_consts.insert(b.clone());
                    self.expect(Tok::Colon)?;
                    if !self.eat_keyword("unit2") {
                        return self.err("only `unit2` parameters are supported");
                    }
                    decls.push(Decl::Param(a, b));
                }
                "scalar" => {
                    self.pos += 1;
                    let name = self.declared_name()?;
                    self.expect(Tok::Eq)?;
                    let e = self.expr()?;
                    let s = self.to_scalar(&e)?;
                    self.sig.scalar_consts.insert(name.clone());
                    decls.push(Decl::ScalarDef(name, s));
                }
                "vec" => {
                    self.pos += 1;
                    let name = self.declared_name()?;
                    self.expect(Tok::Eq)?;
                    let e = self.expr()?;
                    let t = self.to_vector(&e)?;
                    self.sig.vector_consts.insert(name.clone());
                    decls.push(Decl::VecDef(name, t));
                }
                "gate" => {
                    self.pos += 1;
                    let name = self.declared_name()?;
                    self.expect(Tok::Eq)?;
                    let m = self.mat_expr()?;
                    self.sig.gates.insert(name.clone());
                    decls.push(Decl::GateDef(name, m));
                }
                "meas" => {
                    self.pos += 1;
                    let name = self.declared_name()?;
                    self.expect(Tok::Eq)?;
                    if !self.eat_keyword("span") {
                        return self.err("a measurement is declared as span(...)");
                    }
                    self.expect(Tok::LParen)?;
                    let mut terms = Vec::new();
                    if self.peek() != Some(&Tok::RParen) {
                        loop {
                            let e = self.expr()?;
                            terms.push(self.to_vector(&e)?);
                            if !self.eat(&Tok::Comma) {
                                break;
                            }
                        }
                    }
                    self.expect(Tok::RParen)?;
                    self.sig.measurements.insert(name.clone());
                    decls.push(Decl::MeasDef(name, terms));
                }
                "closed" | "prop" => {
                    let closed = word == "closed";
                    self.pos += 1;
                    if closed && !self.eat_keyword("prop") {
                        return self.err("expected `prop` after `closed`");
                    }
                    let name = self.declared_name()?;
                    let extent = if self.eat(&Tok::Eq) {
                        Some(self.extent_expr()?)
                    } else {
                        None
                    };
                    self.sig.props.insert(name.clone());
                    if closed {
                        self.sig.closed_props.insert(name.clone());
                    }
                    decls.push(Decl::PropDef {
                        name,
                        closed,
                        extent,
                    });
                }
                "axiom" => {
                    self.pos += 1;
                    axioms.push(self.sentence()?);
                }
                "query" => {
                    self.pos += 1;
                    let anchor = if self.eat_keyword("at") {
                        let e = self.expr_atom()?;
                        Some(self.to_vector(&e)?)
                    } else {
                        None
                    };
                    queries.push(self.query_tail(anchor)?);
                }
                other => {
                    return self.err(format!("unknown declaration keyword `{other}`"));
                }
            }
        }

        let Some(dim) = dim else {
            return Err(ParseError {
                line: 1,
                col: 1,
                message: "missing dimension declaration".into(),
            });
        };
        Ok(SpecFile {
            dim,
            epsilon,
            star_budget,
            term_depth,
            decls,
            axioms,
            queries,
            signature: self.sig.clone(),
        })
    }

    fn declared_name(&mut self) -> Result<String, ParseError> {
        let save = self.pos;
        let name = self.ident()?;
        if RESERVED.contains(&name.as_str()) {
            self.pos = save;
            return self.err(format!("`{name}` is a reserved word"));
        }
        if self.sig.kind_of(&name).is_some() {
            self.pos = save;
            return self.err(format!("`{name}` is already declared"));
        }
        Ok(name)
    }

    fn extent_expr(&mut self) -> Result<ExtentExpr, ParseError> {
        if self.eat_keyword("all") {
            return Ok(ExtentExpr::All);
        }
        if self.eat_keyword("empty") {
            return Ok(ExtentExpr::Empty);
        }
        if self.eat_keyword("span") {
            self.expect(Tok::LParen)?;
            let mut terms = Vec::new();
            if self.peek() != Some(&Tok::RParen) {
                loop {
                    let e = self.expr()?;
                    terms.push(self.to_vector(&e)?);
                    if !self.eat(&Tok::Comma) {
                        break;
                    }
                }
            }
            self.expect(Tok::RParen)?;
            return Ok(ExtentExpr::Span(terms));
        }
        if self.eat(&Tok::LBrace) {
            let mut terms = Vec::new();
            if self.peek() != Some(&Tok::RBrace) {
                loop {
                    let e = self.expr()?;
                    terms.push(self.to_vector(&e)?);
                    if !self.eat(&Tok::Comma) {
                        break;
                    }
                }
            }
            self.expect(Tok::RBrace)?;
            return Ok(ExtentExpr::Finite(terms));
        }
        self.err("expected an extent: all, empty, span(...), or {...}")
    }

    fn query_tail(&mut self, anchor: Option<Term>) -> Result<QueryDecl, ParseError> {
        if !self.eat_keyword("exists") {
            return self.err("a query has the form `exists x ... . BODY`");
        }
        let mut vars = Vec::new();
        while let Some(Tok::Ident(name)) = self.peek() {
            if RESERVED.contains(&name.as_str()) {
                break;
            }
            let name = name.clone();
            if self.sig.kind_of(&name).is_some() || vars.contains(&name) {
                return self.err(format!("query variable `{name}` clashes with a declared symbol"));
            }
            self.pos += 1;
            vars.push(name);
        }
        if vars.is_empty() {
            return self.err("expected at least one query variable");
        }
        self.expect(Tok::Dot)?;
        let depth_before = self.scope.len();
        self.scope.extend(vars.iter().cloned());
        let body = self.sentence();
        self.scope.truncate(depth_before);
        let body = body?;
        if !is_basic(&body) {
            return self.err("query bodies must be conjunctions of basic sentences");
        }
        Ok(QueryDecl {
            anchor,
            vars,
            body,
        })
    }

    // -- matrices --------------------------------------------------------------

    fn mat_expr(&mut self) -> Result<MatExpr, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => match name.as_str() {
                "H" => {
                    self.pos += 1;
                    Ok(MatExpr::H)
                }
                "X" => {
                    self.pos += 1;
                    Ok(MatExpr::X)
                }
                "Y" => {
                    self.pos += 1;
                    Ok(MatExpr::Y)
                }
                "Z" => {
                    self.pos += 1;
                    Ok(MatExpr::Z)
                }
                "CNOT" => {
                    self.pos += 1;
                    Ok(MatExpr::Cnot)
                }
                "I" => {
                    self.pos += 1;
                    self.expect(Tok::LParen)?;
                    let n = self.usize_lit()?;
                    if n == 0 {
                        return self.err("identity dimension must be positive");
                    }
                    self.expect(Tok::RParen)?;
                    Ok(MatExpr::I(n))
                }
                "kron" => {
                    self.pos += 1;
                    self.expect(Tok::LParen)?;
                    let a = self.mat_expr()?;
                    self.expect(Tok::Comma)?;
                    let b = self.mat_expr()?;
                    self.expect(Tok::RParen)?;
                    Ok(MatExpr::Kron(Box::new(a), Box::new(b)))
                }
                _ => self.err(format!(
                    "unknown matrix `{name}`; use H, X, Y, Z, CNOT, I(n), kron(...), or a literal"
                )),
            },
            Some(Tok::LBracket) => {
                self.pos += 1;
                let mut rows = Vec::new();
                loop {
                    self.expect(Tok::LBracket)?;
                    let mut row = Vec::new();
                    loop {
                        let e = self.expr()?;
                        row.push(self.const_value(&e)?);
                        if !self.eat(&Tok::Comma) {
                            break;
                        }
                    }
                    self.expect(Tok::RBracket)?;
                    rows.push(row);
                    if !self.eat(&Tok::Comma) {
                        break;
                    }
                }
                self.expect(Tok::RBracket)?;
                let n = rows.len();
                if rows.iter().any(|r| r.len() != n) {
                    return self.err("matrix literal must be square");
                }
                Ok(MatExpr::Lit(rows))
            }
            _ => self.err("expected a matrix expression"),
        }
    }

    // -- sentences ---------------------------------------------------------------

    fn sentence(&mut self) -> Result<Sentence, ParseError> {
        if self.at_keyword("store") || self.at_keyword("forall") || self.at_keyword("exists") {
            return self.binder();
        }
        self.implication()
    }

    fn binder(&mut self) -> Result<Sentence, ParseError> {
        if self.eat_keyword("store") {
            let z = self.binder_var()?;
            self.expect(Tok::Dot)?;
            self.scope.push(z.clone());
            let body = self.sentence();
            self.scope.pop();
            return Ok(Sentence::store(z, body?));
        }
        let existential = if self.eat_keyword("forall") {
            false
        } else if self.eat_keyword("exists") {
            true
        } else {
            return self.err("expected a binder");
        };
        let mut vars = vec![self.binder_var()?];
        while !self.eat(&Tok::Dot) {
            vars.push(self.binder_var()?);
        }
        let depth_before = self.scope.len();
        self.scope.extend(vars.iter().cloned());
        let body = self.sentence();
        self.scope.truncate(depth_before);
        let body = body?;
        Ok(if existential {
            Sentence::exists(vars, body)
        } else {
            Sentence::forall(vars, body)
        })
    }

    fn binder_var(&mut self) -> Result<String, ParseError> {
        let save = self.pos;
        let name = self.ident()?;
        if RESERVED.contains(&name.as_str()) {
            self.pos = save;
            return self.err(format!("`{name}` is a reserved word"));
        }
        if self.sig.kind_of(&name).is_some() {
            self.pos = save;
            return self.err(format!("variable `{name}` clashes with a declared symbol"));
        }
        Ok(name)
    }

    fn implication(&mut self) -> Result<Sentence, ParseError> {
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Implies) {
            let rhs = self.implication()?;
            return Ok(Sentence::implies(lhs, rhs));
        }
        if self.eat(&Tok::Leads) {
            let rhs = self.implication()?;
            return Ok(Sentence::sasaki(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Sentence, ParseError> {
        let lhs = self.conjunction()?;
        if self.eat(&Tok::OrOp) {
            let rhs = self.disjunction()?;
            return Ok(Sentence::or(lhs, rhs));
        }
        if self.eat(&Tok::OPlus) {
            let rhs = self.disjunction()?;
            return Ok(Sentence::oplus(lhs, rhs));
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Sentence, ParseError> {
        let lhs = self.prefix()?;
        if self.eat(&Tok::AndOp) {
            let rhs = self.conjunction()?;
            return Ok(Sentence::and(lhs, rhs));
        }
        Ok(lhs)
    }

    fn prefix(&mut self) -> Result<Sentence, ParseError> {
        match self.peek() {
            Some(Tok::Bang) => {
                self.pos += 1;
                Ok(Sentence::not(self.prefix()?))
            }
            Some(Tok::Tilde) => {
                self.pos += 1;
                Ok(Sentence::qnot(self.prefix()?))
            }
            Some(Tok::LBracket) => {
                self.pos += 1;
                let a = self.action()?;
                self.expect(Tok::RBracket)?;
                Ok(Sentence::nec(a, self.prefix()?))
            }
            Some(Tok::LAngle) => {
                self.pos += 1;
                let a = self.action()?;
                self.expect(Tok::RAngle)?;
                Ok(Sentence::diamond(a, self.prefix()?))
            }
            Some(Tok::At) => {
                self.pos += 1;
                let e = self.expr_atom()?;
                let k = self.to_vector(&e)?;
                Ok(Sentence::at(k, self.prefix()?))
            }
            _ => self.sentence_atom(),
        }
    }

    fn sentence_atom(&mut self) -> Result<Sentence, ParseError> {
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let s = self.sentence()?;
                self.expect(Tok::RParen)?;
                Ok(s)
            }
            Some(Tok::Ident(name)) if name == "until" => {
                self.pos += 1;
                self.expect(Tok::LParen)?;
                let a = self.action()?;
                self.expect(Tok::Comma)?;
                let gamma = self.sentence()?;
                self.expect(Tok::Comma)?;
                let psi = self.sentence()?;
                self.expect(Tok::RParen)?;
                Ok(Sentence::until(a, gamma, psi))
            }
            Some(Tok::Ident(name)) if name == "ket" => {
                let e = self.expr_atom()?;
                Ok(Sentence::StateIs(self.to_vector(&e)?))
            }
            Some(Tok::Ident(name)) => {
                if self.scope.contains(&name) {
                    self.pos += 1;
                    return Ok(Sentence::StateIs(Term::Var(name)));
                }
                match self.sig.kind_of(&name) {
                    Some(SymbolKind::Prop) => {
                        self.pos += 1;
                        Ok(Sentence::Prop(name))
                    }
                    Some(SymbolKind::VectorConst) => {
                        self.pos += 1;
                        Ok(Sentence::StateIs(Term::Const(name)))
                    }
                    Some(other) => self.err(format!(
                        "`{name}` is a {}, not usable as a sentence",
                        kind_name(other)
                    )),
                    None => self.err(format!("unknown symbol `{name}`")),
                }
            }
            Some(t) => self.err(format!("expected a sentence, found `{t}`")),
            None => self.err("expected a sentence, found end of input"),
        }
    }

    // -- actions -------------------------------------------------------------------

    fn action(&mut self) -> Result<Action, ParseError> {
        let lhs = self.action_seq()?;
        if self.eat(&Tok::Plus) {
            let rhs = self.action()?;
            return Ok(Action::union(lhs, rhs));
        }
        Ok(lhs)
    }

    fn action_seq(&mut self) -> Result<Action, ParseError> {
        let lhs = self.action_star()?;
        if self.eat(&Tok::Semi) {
            let rhs = self.action_seq()?;
            return Ok(Action::seq(lhs, rhs));
        }
        Ok(lhs)
    }

    fn action_star(&mut self) -> Result<Action, ParseError> {
        let mut a = self.action_atom()?;
        while self.eat(&Tok::Star) {
            a = Action::star(a);
        }
        Ok(a)
    }

    fn action_atom(&mut self) -> Result<Action, ParseError> {
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let a = self.action()?;
                self.expect(Tok::RParen)?;
                Ok(a)
            }
            Some(Tok::Ident(name)) => match self.sig.kind_of(&name) {
                Some(SymbolKind::Gate) => {
                    self.pos += 1;
                    Ok(Action::Gate(name))
                }
                Some(SymbolKind::Measurement) => {
                    self.pos += 1;
                    Ok(Action::Meas(name))
                }
                Some(other) => self.err(format!(
                    "`{name}` is a {}, not an action",
                    kind_name(other)
                )),
                None => self.err(format!("unknown action symbol `{name}`")),
            },
            Some(t) => self.err(format!("expected an action, found `{t}`")),
            None => self.err("expected an action, found end of input"),
        }
    }

    // -- expressions (terms of either sort) -------------------------------------------

    // term arithmetic folds left, the usual convention for `-` and `/`
    fn expr(&mut self) -> Result<Expr, ParseError> {
        let pos = self.here();
        let mut lhs = self.expr_mul()?;
        loop {
            if self.eat(&Tok::Plus) {
                let rhs = self.expr_mul()?;
                lhs = Expr::new(pos, ExprKind::Add(Box::new(lhs), Box::new(rhs)));
            } else if self.eat(&Tok::Minus) {
                let rhs = self.expr_mul()?;
                lhs = Expr::new(pos, ExprKind::Sub(Box::new(lhs), Box::new(rhs)));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn expr_mul(&mut self) -> Result<Expr, ParseError> {
        let pos = self.here();
        let mut lhs = self.expr_unary()?;
        loop {
            if self.eat(&Tok::Star) {
                let rhs = self.expr_unary()?;
                lhs = Expr::new(pos, ExprKind::Mul(Box::new(lhs), Box::new(rhs)));
            } else if self.eat(&Tok::Slash) {
                let rhs = self.expr_unary()?;
                lhs = Expr::new(pos, ExprKind::Div(Box::new(lhs), Box::new(rhs)));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn expr_unary(&mut self) -> Result<Expr, ParseError> {
        let pos = self.here();
        if self.eat(&Tok::Minus) {
            let inner = self.expr_unary()?;
            return Ok(Expr::new(pos, ExprKind::Neg(Box::new(inner))));
        }
        self.expr_atom()
    }

    fn expr_atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.here();
        match self.peek().cloned() {
            Some(Tok::Number { value, .. }) => {
                self.pos += 1;
                Ok(Expr::new(pos, ExprKind::Num(value)))
            }
            Some(Tok::Imag(value)) => {
                self.pos += 1;
                Ok(Expr::new(pos, ExprKind::Imag(value)))
            }
            Some(Tok::LAngle) => {
                self.pos += 1;
                let a = self.expr()?;
                self.expect(Tok::Comma)?;
                let b = self.expr()?;
                self.expect(Tok::RAngle)?;
                Ok(Expr::new(pos, ExprKind::Inner(Box::new(a), Box::new(b))))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let first = self.expr()?;
                if self.peek() == Some(&Tok::RParen) {
                    self.pos += 1;
                    return Ok(first);
                }
                let mut entries = vec![first];
                while self.eat(&Tok::Comma) {
                    if self.peek() == Some(&Tok::RParen) {
                        break; // trailing comma: one-entry vector literal
                    }
                    entries.push(self.expr()?);
                }
                self.expect(Tok::RParen)?;
                Ok(Expr::new(pos, ExprKind::Tuple(entries)))
            }
            Some(Tok::Ident(name)) if name == "ket" => {
                self.pos += 1;
                self.expect(Tok::LParen)?;
                let bits = match self.peek().cloned() {
                    Some(Tok::Number { raw, .. }) if raw.chars().all(|c| c == '0' || c == '1') => {
                        self.pos += 1;
                        raw
                    }
                    _ => return self.err("ket takes a bit string, e.g. ket(01)"),
                };
                self.expect(Tok::RParen)?;
                Ok(Expr::new(pos, ExprKind::Ket(bits)))
            }
            Some(Tok::Ident(name)) if name == "sqrt" => {
                self.pos += 1;
                self.expect(Tok::LParen)?;
                let a = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(Expr::new(pos, ExprKind::Sqrt(Box::new(a))))
            }
            Some(Tok::Ident(name)) if name == "complex" => {
                self.pos += 1;
                self.expect(Tok::LParen)?;
                let re = self.expr()?;
                self.expect(Tok::Comma)?;
                let im = self.expr()?;
                self.expect(Tok::RParen)?;
                let value = C64::new(
                    self.const_value(&re)?.re,
                    self.const_value(&im)?.re,
                );
                Ok(Expr::new(pos, ExprKind::ComplexLit(value)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if self.peek() == Some(&Tok::LParen)
                    && matches!(
                        self.sig.kind_of(&name),
                        Some(SymbolKind::Gate) | Some(SymbolKind::Measurement)
                    )
                {
                    self.pos += 1;
                    let arg = self.expr()?;
                    self.expect(Tok::RParen)?;
                    return Ok(Expr::new(pos, ExprKind::Apply(name, Box::new(arg))));
                }
                Ok(Expr::new(pos, ExprKind::Name(name)))
            }
            Some(t) => self.err(format!("expected a term, found `{t}`")),
            None => self.err("expected a term, found end of input"),
        }
    }

    // -- sort resolution ---------------------------------------------------------------

    fn to_vector(&self, e: &Expr) -> Result<Term, ParseError> {
        let fail = |msg: String| -> Result<Term, ParseError> {
            Err(ParseError {
                line: e.pos.0,
                col: e.pos.1,
                message: msg,
            })
        };
        match &e.kind {
            ExprKind::Num(x) if *x == 0.0 => Ok(Term::Origin),
            ExprKind::Num(_) | ExprKind::Imag(_) | ExprKind::ComplexLit(_) => {
                fail("expected a vector term, found a scalar literal".into())
            }
            ExprKind::Ket(bits) => Ok(Term::Ket(bits.clone())),
            ExprKind::Name(name) => {
                if self.scope.contains(name) {
                    return Ok(Term::Var(name.clone()));
                }
                match self.sig.kind_of(name) {
                    Some(SymbolKind::VectorConst) => Ok(Term::Const(name.clone())),
                    Some(other) => fail(format!(
                        "`{name}` is a {}, expected a vector",
                        kind_name(other)
                    )),
                    None => fail(format!("unknown symbol `{name}`")),
                }
            }
            ExprKind::Apply(sym, arg) => Ok(Term::apply(sym.clone(), self.to_vector(arg)?)),
            ExprKind::Add(a, b) => Ok(Term::add(self.to_vector(a)?, self.to_vector(b)?)),
            ExprKind::Mul(a, b) => Ok(Term::scale(self.to_scalar(a)?, self.to_vector(b)?)),
            ExprKind::Tuple(entries) => {
                let values = entries
                    .iter()
                    .map(|e| self.const_value(e))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Term::Lit(values))
            }
            ExprKind::Sub(..) => fail(
                "vector terms have no subtraction; write v + -1 * w".into(),
            ),
            ExprKind::Neg(..) | ExprKind::Div(..) | ExprKind::Sqrt(..) | ExprKind::Inner(..) => {
                fail("expected a vector term, found a scalar operation".into())
            }
        }
    }

    fn to_scalar(&self, e: &Expr) -> Result<Scalar, ParseError> {
        let fail = |msg: String| -> Result<Scalar, ParseError> {
            Err(ParseError {
                line: e.pos.0,
                col: e.pos.1,
                message: msg,
            })
        };
        match &e.kind {
            ExprKind::Num(x) => Ok(Scalar::Lit(C64::new(*x, 0.0))),
            ExprKind::Imag(x) => Ok(Scalar::Lit(C64::new(0.0, *x))),
            ExprKind::ComplexLit(c) => Ok(Scalar::Lit(*c)),
            // fold a negated literal so `-2` means the literal -2
            ExprKind::Neg(a) => match &a.kind {
                ExprKind::Num(x) => Ok(Scalar::Lit(C64::new(-x, 0.0))),
                ExprKind::Imag(x) => Ok(Scalar::Lit(C64::new(0.0, -x))),
                _ => Ok(Scalar::Neg(Box::new(self.to_scalar(a)?))),
            },
            ExprKind::Name(name) => match self.sig.kind_of(name) {
                Some(SymbolKind::ScalarConst) => Ok(Scalar::Const(name.clone())),
                Some(other) => fail(format!(
                    "`{name}` is a {}, expected a scalar",
                    kind_name(other)
                )),
                None => fail(format!("unknown symbol `{name}`")),
            },
            ExprKind::Add(a, b) => Ok(Scalar::Add(
                Box::new(self.to_scalar(a)?),
                Box::new(self.to_scalar(b)?),
            )),
            ExprKind::Sub(a, b) => Ok(Scalar::Sub(
                Box::new(self.to_scalar(a)?),
                Box::new(self.to_scalar(b)?),
            )),
            ExprKind::Mul(a, b) => Ok(Scalar::Mul(
                Box::new(self.to_scalar(a)?),
                Box::new(self.to_scalar(b)?),
            )),
            ExprKind::Div(a, b) => Ok(Scalar::Div(
                Box::new(self.to_scalar(a)?),
                Box::new(self.to_scalar(b)?),
            )),
            ExprKind::Sqrt(a) => Ok(Scalar::Sqrt(Box::new(self.to_scalar(a)?))),
            ExprKind::Inner(a, b) => Ok(Scalar::Inner(
                Box::new(self.to_vector(a)?),
                Box::new(self.to_vector(b)?),
            )),
            ExprKind::Ket(_) | ExprKind::Apply(..) | ExprKind::Tuple(_) => {
                fail("expected a scalar, found a vector term".into())
            }
        }
    }

    /// Constant-folds a scalar expression made of literals, for vector and
    /// matrix literal entries.
    fn const_value(&self, e: &Expr) -> Result<C64, ParseError> {
        let fail = |msg: &str| -> Result<C64, ParseError> {
            Err(ParseError {
                line: e.pos.0,
                col: e.pos.1,
                message: msg.into(),
            })
        };
        match &e.kind {
            ExprKind::Num(x) => Ok(C64::new(*x, 0.0)),
            ExprKind::Imag(x) => Ok(C64::new(0.0, *x)),
            ExprKind::ComplexLit(c) => Ok(*c),
            ExprKind::Add(a, b) => Ok(self.const_value(a)? + self.const_value(b)?),
            ExprKind::Sub(a, b) => Ok(self.const_value(a)? - self.const_value(b)?),
            ExprKind::Mul(a, b) => Ok(self.const_value(a)? * self.const_value(b)?),
            ExprKind::Div(a, b) => {
                let d = self.const_value(b)?;
                if d.norm() == 0.0 {
                    return fail("division by zero in a literal");
                }
                Ok(self.const_value(a)? / d)
            }
            ExprKind::Neg(a) => Ok(-self.const_value(a)?),
            ExprKind::Sqrt(a) => Ok(self.const_value(a)?.sqrt()),
            _ => fail("literal entries must be numeric constants"),
        }
    }
}

fn kind_name(k: SymbolKind) -> &'static str {
    match k {
        SymbolKind::Gate => "gate",
        SymbolKind::Measurement => "measurement",
        SymbolKind::VectorConst => "vector constant",
        SymbolKind::ScalarConst => "scalar constant",
        SymbolKind::Prop => "proposition",
    }
}

struct Expr {
    pos: (usize, usize),
    kind: ExprKind,
}

impl Expr {
    fn new(pos: (usize, usize), kind: ExprKind) -> Expr {
        Expr { pos, kind }
    }
}

enum ExprKind {
    Num(f64),
    Imag(f64),
    ComplexLit(C64),
    Name(String),
    Ket(String),
    Apply(String, Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Sqrt(Box<Expr>),
    Inner(Box<Expr>, Box<Expr>),
    Tuple(Vec<Expr>),
}
