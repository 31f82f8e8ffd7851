//! Spec files: declarations, axioms and queries, plus elaboration into a
//! concrete model.
//!
//! A file declares one ambient dimension, optional numeric configuration,
//! gates (builtin matrices, Kronecker products, or raw literals), measurements
//! (spans of vector terms), named vectors and scalars, propositions, axioms
//! and queries. `param a b : unit2` declares a pair of scalar parameters drawn
//! from the unit sphere of ℂ²; commands sample them and re-elaborate the model
//! per sample.

use crate::linalg::{fmt_complex, fmt_f64, C64, CMatrix};
use crate::model::{Model, TermError};
use crate::models;
use crate::sentence::Sentence;
use crate::signature::Signature;
use crate::subspace::Subspace;
use crate::term::{Scalar, Term};
use rand::Rng;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum MatExpr {
    H,
    X,
    Y,
    Z,
    Cnot,
    I(usize),
    Kron(Box<MatExpr>, Box<MatExpr>),
    Lit(Vec<Vec<C64>>),
}

impl MatExpr {
    pub fn eval(&self) -> CMatrix {
        match self {
            MatExpr::H => models::hadamard(),
            MatExpr::X => models::pauli_x(),
            MatExpr::Y => models::pauli_y(),
            MatExpr::Z => models::pauli_z(),
            MatExpr::Cnot => models::cnot(),
            MatExpr::I(n) => CMatrix::identity(*n),
            MatExpr::Kron(a, b) => a.eval().kron(&b.eval()),
            MatExpr::Lit(rows) => CMatrix::from_rows(rows.clone()),
        }
    }
}

impl fmt::Display for MatExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatExpr::H => write!(f, "H"),
            MatExpr::X => write!(f, "X"),
            MatExpr::Y => write!(f, "Y"),
            MatExpr::Z => write!(f, "Z"),
            MatExpr::Cnot => write!(f, "CNOT"),
            MatExpr::I(n) => write!(f, "I({n})"),
            MatExpr::Kron(a, b) => write!(f, "kron({a}, {b})"),
            MatExpr::Lit(rows) => {
                write!(f, "[")?;
                for (i, row) in rows.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "[")?;
                    for (j, e) in row.iter().enumerate() {
                        if j > 0 {
                            write!(f, ", ")?;
                        }
                        write!(f, "{}", fmt_complex(*e))?;
                    }
                    write!(f, "]")?;
                }
                write!(f, "]")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExtentExpr {
    All,
    Empty,
    Span(Vec<Term>),
    Finite(Vec<Term>),
}

impl fmt::Display for ExtentExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, terms: &[Term]| {
            for (i, t) in terms.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{t}")?;
            }
            Ok(())
        };
        match self {
            ExtentExpr::All => write!(f, "all"),
            ExtentExpr::Empty => write!(f, "empty"),
            ExtentExpr::Span(ts) => {
                write!(f, "span(")?;
                list(f, ts)?;
                write!(f, ")")
            }
            ExtentExpr::Finite(ts) => {
                write!(f, "{{")?;
                list(f, ts)?;
                write!(f, "}}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Decl {
    /// `param a b : unit2` — a sampled unit pair of scalars.
    Param(String, String),
    ScalarDef(String, Scalar),
    VecDef(String, Term),
    GateDef(String, MatExpr),
    MeasDef(String, Vec<Term>),
    PropDef {
        name: String,
        closed: bool,
        extent: Option<ExtentExpr>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct QueryDecl {
    /// The anchor state; the origin when omitted.
    pub anchor: Option<Term>,
    pub vars: Vec<String>,
    pub body: Sentence,
}

impl fmt::Display for QueryDecl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "query ")?;
        if let Some(anchor) = &self.anchor {
            match anchor {
                Term::Add(..) | Term::Scale(..) => write!(f, "at ({anchor}) ")?,
                _ => write!(f, "at {anchor} ")?,
            }
        }
        write!(f, "exists")?;
        for v in &self.vars {
            write!(f, " {v}")?;
        }
        write!(f, " . {}", self.body)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpecFile {
    pub dim: usize,
    pub epsilon: Option<f64>,
    pub star_budget: Option<usize>,
    pub term_depth: Option<usize>,
    pub decls: Vec<Decl>,
    pub axioms: Vec<Sentence>,
    pub queries: Vec<QueryDecl>,
    pub signature: Signature,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ElabError {
    #[error("parameter {0} has no value; params are sampled by the caller")]
    MissingParam(String),
    #[error("in the definition of {name}: {source}")]
    Eval {
        name: String,
        #[source]
        source: TermError,
    },
    #[error("{name} has dimension {got}, the model has dimension {expected}")]
    WrongDimension {
        name: String,
        expected: usize,
        got: usize,
    },
}

impl SpecFile {
    pub fn has_params(&self) -> bool {
        self.decls.iter().any(|d| matches!(d, Decl::Param(..)))
    }

    pub fn param_pairs(&self) -> Vec<(String, String)> {
        self.decls
            .iter()
            .filter_map(|d| match d {
                Decl::Param(a, b) => Some((a.clone(), b.clone())),
                _ => None,
            })
            .collect()
    }

    /// Evaluates all declarations, in order, into a concrete model.
    /// `param_values` must bind every declared parameter.
    pub fn build_model(&self, param_values: &BTreeMap<String, C64>) -> Result<Model, ElabError> {
        let eps = self.epsilon.unwrap_or(crate::linalg::DEFAULT_EPSILON);
        let mut m = Model::new(self.dim);
        let no_bindings = BTreeMap::new();
        for decl in &self.decls {
            match decl {
                Decl::Param(a, b) => {
                    for name in [a, b] {
                        let v = param_values
                            .get(name)
                            .ok_or_else(|| ElabError::MissingParam(name.clone()))?;
                        m.scalar_consts.insert(name.clone(), *v);
                    }
                }
                Decl::ScalarDef(name, s) => {
                    let v = m
                        .eval_scalar(s, &no_bindings, eps)
                        .map_err(|source| ElabError::Eval { name: name.clone(), source })?;
                    m.scalar_consts.insert(name.clone(), v);
                }
                Decl::VecDef(name, t) => {
                    let v = m
                        .eval_term(t, &no_bindings, eps)
                        .map_err(|source| ElabError::Eval { name: name.clone(), source })?;
                    m.vector_consts.insert(name.clone(), v);
                }
                Decl::GateDef(name, mexpr) => {
                    let mat = mexpr.eval();
                    if mat.dim() != self.dim {
                        return Err(ElabError::WrongDimension {
                            name: name.clone(),
                            expected: self.dim,
                            got: mat.dim(),
                        });
                    }
                    m.gates.insert(name.clone(), mat);
                }
                Decl::MeasDef(name, terms) => {
                    let vectors = terms
                        .iter()
                        .map(|t| m.eval_term(t, &no_bindings, eps))
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|source| ElabError::Eval { name: name.clone(), source })?;
                    let span = Subspace::span(self.dim, &vectors, eps).map_err(|e| {
                        ElabError::WrongDimension {
                            name: name.clone(),
                            expected: e.expected,
                            got: e.got,
                        }
                    })?;
                    m.measurements.insert(name.clone(), span);
                }
                Decl::PropDef { name, extent, .. } => {
                    if let Some(expr) = extent {
                        let value = self
                            .eval_extent(&m, expr, eps)
                            .map_err(|source| ElabError::Eval { name: name.clone(), source })?;
                        m.valuation.insert(name.clone(), value);
                    }
                }
            }
        }
        m.fill_valuation(&self.signature);
        Ok(m)
    }

    fn eval_extent(
        &self,
        m: &Model,
        expr: &ExtentExpr,
        eps: f64,
    ) -> Result<crate::extent::Extent, TermError> {
        use crate::extent::Extent;
        let no_bindings = BTreeMap::new();
        Ok(match expr {
            ExtentExpr::All => Extent::all(self.dim),
            ExtentExpr::Empty => Extent::empty(self.dim),
            ExtentExpr::Span(terms) => {
                let vs = terms
                    .iter()
                    .map(|t| m.eval_term(t, &no_bindings, eps))
                    .collect::<Result<Vec<_>, _>>()?;
                Extent::subspace(Subspace::span(self.dim, &vs, eps)?)
            }
            ExtentExpr::Finite(terms) => {
                let vs = terms
                    .iter()
                    .map(|t| m.eval_term(t, &no_bindings, eps))
                    .collect::<Result<Vec<_>, _>>()?;
                Extent::finite(self.dim, vs, eps)
            }
        })
    }

    /// Every vector literal written anywhere in the file; each denotes its own
    /// constant and seeds the ground-term universe.
    pub fn harvested_literals(&self) -> Vec<Term> {
        let mut out: Vec<Term> = Vec::new();
        let mut push_all = |terms: Vec<Term>| {
            for t in terms {
                if !out.contains(&t) {
                    out.push(t);
                }
            }
        };
        for decl in &self.decls {
            match decl {
                Decl::VecDef(_, t) => {
                    let mut ls = Vec::new();
                    t.collect_literals(&mut ls);
                    push_all(ls);
                }
                Decl::MeasDef(_, ts) => {
                    for t in ts {
                        let mut ls = Vec::new();
                        t.collect_literals(&mut ls);
                        push_all(ls);
                    }
                }
                Decl::PropDef { extent: Some(e), .. } => {
                    let terms = match e {
                        ExtentExpr::Span(ts) | ExtentExpr::Finite(ts) => ts.clone(),
                        _ => Vec::new(),
                    };
                    for t in terms {
                        let mut ls = Vec::new();
                        t.collect_literals(&mut ls);
                        push_all(ls);
                    }
                }
                _ => {}
            }
        }
        for s in &self.axioms {
            push_all(sentence_literals(s));
        }
        for q in &self.queries {
            if let Some(anchor) = &q.anchor {
                let mut ls = Vec::new();
                anchor.collect_literals(&mut ls);
                push_all(ls);
            }
            push_all(sentence_literals(&q.body));
        }
        out
    }

    /// Scalar expressions usable as multipliers in the ground-term universe:
    /// declared scalar constants plus every scalar literal in the file.
    pub fn harvested_scalars(&self) -> Vec<Scalar> {
        let mut out: Vec<Scalar> = Vec::new();
        let mut push_all = |ss: Vec<Scalar>| {
            for s in ss {
                if !out.contains(&s) {
                    out.push(s);
                }
            }
        };
        for decl in &self.decls {
            match decl {
                Decl::Param(a, b) => {
                    push_all(vec![Scalar::Const(a.clone()), Scalar::Const(b.clone())])
                }
                Decl::ScalarDef(name, _) => push_all(vec![Scalar::Const(name.clone())]),
                Decl::VecDef(_, t) => {
                    let mut ss = Vec::new();
                    t.collect_scalars(&mut ss);
                    push_all(ss);
                }
                _ => {}
            }
        }
        for s in &self.axioms {
            push_all(sentence_scalars(s));
        }
        out
    }
}

fn sentence_literals(s: &Sentence) -> Vec<Term> {
    let mut out = Vec::new();
    walk_terms(s, &mut |t| t.collect_literals(&mut out));
    out
}

fn sentence_scalars(s: &Sentence) -> Vec<Scalar> {
    let mut out = Vec::new();
    walk_terms(s, &mut |t| t.collect_scalars(&mut out));
    out
}

fn walk_terms(s: &Sentence, visit: &mut dyn FnMut(&Term)) {
    match s {
        Sentence::Prop(_) => {}
        Sentence::StateIs(t) => visit(t),
        Sentence::At(k, inner) => {
            visit(k);
            walk_terms(inner, visit);
        }
        Sentence::And(a, b) => {
            walk_terms(a, visit);
            walk_terms(b, visit);
        }
        Sentence::Not(inner) | Sentence::QNot(inner) => walk_terms(inner, visit),
        Sentence::Nec(_, inner) => walk_terms(inner, visit),
        Sentence::Store(_, inner) => walk_terms(inner, visit),
        Sentence::Forall(_, inner) => walk_terms(inner, visit),
    }
}

/// Draws a Haar-random unit pair (α, β) with |α|² + |β|² = 1.
pub fn sample_unit_pair<R: Rng>(rng: &mut R) -> (C64, C64) {
    loop {
        let g: [f64; 4] = [gaussian(rng), gaussian(rng), gaussian(rng), gaussian(rng)];
        let norm = (g.iter().map(|x| x * x).sum::<f64>()).sqrt();
        if norm > 1e-6 {
            return (
                C64::new(g[0] / norm, g[1] / norm),
                C64::new(g[2] / norm, g[3] / norm),
            );
        }
    }
}

fn gaussian<R: Rng>(rng: &mut R) -> f64 {
    // Box–Muller
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

impl fmt::Display for SpecFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dim {}", self.dim)?;
        if let Some(e) = self.epsilon {
            writeln!(f, "epsilon {}", fmt_f64(e))?;
        }
        if let Some(b) = self.star_budget {
            writeln!(f, "star_budget {b}")?;
        }
        if let Some(d) = self.term_depth {
            writeln!(f, "term_depth {d}")?;
        }
        for decl in &self.decls {
            match decl {
                Decl::Param(a, b) => writeln!(f, "param {a} {b} : unit2")?,
                Decl::ScalarDef(name, s) => writeln!(f, "scalar {name} = {s}")?,
                Decl::VecDef(name, t) => writeln!(f, "vec {name} = {t}")?,
                Decl::GateDef(name, m) => writeln!(f, "gate {name} = {m}")?,
                Decl::MeasDef(name, ts) => {
                    write!(f, "meas {name} = span(")?;
                    for (i, t) in ts.iter().enumerate() {
                        if i > 0 {
                            write!(f, ", ")?;
                        }
                        write!(f, "{t}")?;
                    }
                    writeln!(f, ")")?;
                }
                Decl::PropDef { name, closed, extent } => {
                    if *closed {
                        write!(f, "closed ")?;
                    }
                    write!(f, "prop {name}")?;
                    if let Some(e) = extent {
                        write!(f, " = {e}")?;
                    }
                    writeln!(f)?;
                }
            }
        }
        for a in &self.axioms {
            writeln!(f, "axiom {a}")?;
        }
        for q in &self.queries {
            writeln!(f, "{q}")?;
        }
        Ok(())
    }
}
