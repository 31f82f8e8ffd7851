//! Horn programs: initial models by saturation, satisfiability checking,
//! entailment, and query answering by ground-substitution search.
//!
//! Saturation derives facts by structural decomposition: conjunctions split,
//! `@ k` retargets the witness, necessity walks successors, store binds the
//! current state, `forall` instantiates over the ground-term universe, and an
//! implication fires once its basic body holds in the partial model (basic
//! bodies are negation-free, so firing is monotone). Quantum negation and
//! Sasaki hooks derive nothing; they are constraints verified afterwards
//! against the saturated model. Closed propositions close under span as they
//! acquire witnesses.
//!
//! The ground-term universe is the set of terms built from named vector
//! constants, every vector literal written in the program, gate and
//! measurement applications, sums, and scalar multiples with the program's
//! scalar constants, up to a configured depth, ordered by depth and then by
//! canonical printed form. Both `forall` instantiation and query answering
//! range over it, so answers are deterministic and completeness is
//! depth-relative.

use crate::eval::{EvalCtx, EvalError};
use crate::extent::Extent;
use crate::linalg::CVector;
use crate::model::{Bindings, Model};
use crate::sentence::{is_horn, match_implication, Sentence};
use crate::signature::Signature;
use crate::specfile::SpecFile;
use crate::subspace::Subspace;
use crate::term::{Scalar, Term};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EngineConfig {
    pub epsilon: f64,
    pub star_budget: usize,
    pub term_depth: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            epsilon: crate::linalg::DEFAULT_EPSILON,
            star_budget: 64,
            term_depth: 3,
        }
    }
}

impl EngineConfig {
    /// Configuration from a spec file's overrides, defaults elsewhere.
    pub fn from_spec(spec: &SpecFile) -> EngineConfig {
        let d = EngineConfig::default();
        EngineConfig {
            epsilon: spec.epsilon.unwrap_or(d.epsilon),
            star_budget: spec.star_budget.unwrap_or(d.star_budget),
            term_depth: spec.term_depth.unwrap_or(d.term_depth),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HornError {
    #[error("clause is not a Horn clause: {clause}")]
    NotHorn { clause: String },
    #[error("clause has free variables: {clause}")]
    OpenClause { clause: String },
}

/// A Horn program over a fixed base model.
#[derive(Debug, Clone)]
pub struct HornProgram {
    pub signature: Signature,
    pub base: Model,
    pub clauses: Vec<Sentence>,
    pub config: EngineConfig,
    /// Vector literals appearing in the program text; each denotes its own
    /// constant in the ground-term universe.
    pub literals: Vec<Term>,
    /// Scalar constants and literals usable as multipliers in ground terms.
    pub scalars: Vec<Scalar>,
}

impl HornProgram {
    pub fn new(
        signature: Signature,
        base: Model,
        clauses: Vec<Sentence>,
        config: EngineConfig,
    ) -> Result<HornProgram, HornError> {
        let mut literals = Vec::new();
        for c in &clauses {
            if !is_horn(c, &signature) {
                return Err(HornError::NotHorn {
                    clause: c.to_string(),
                });
            }
            if !c.is_ground() {
                return Err(HornError::OpenClause {
                    clause: c.to_string(),
                });
            }
            collect_sentence_literals(c, &mut literals);
        }
        let mut scalars: Vec<Scalar> = signature
            .scalar_consts
            .iter()
            .map(|n| Scalar::Const(n.clone()))
            .collect();
        for c in &clauses {
            collect_sentence_scalars(c, &mut scalars);
        }
        Ok(HornProgram {
            signature,
            base,
            clauses,
            config,
            literals,
            scalars,
        })
    }

    /// Assembles a program from an elaborated spec file.
    pub fn from_spec(spec: &SpecFile, base: Model) -> Result<HornProgram, HornError> {
        let mut p = HornProgram::new(
            spec.signature.clone(),
            base,
            spec.axioms.clone(),
            EngineConfig::from_spec(spec),
        )?;
        for lit in spec.harvested_literals() {
            if !p.literals.contains(&lit) {
                p.literals.push(lit);
            }
        }
        for s in spec.harvested_scalars() {
            if !p.scalars.contains(&s) {
                p.scalars.push(s);
            }
        }
        Ok(p)
    }

    /// The ground-term universe, ordered by depth then canonical print.
    pub fn universe_terms(&self) -> Vec<Term> {
        ground_terms(
            &self.signature,
            &self.literals,
            &self.scalars,
            self.config.term_depth,
        )
    }
}

/// Enumerates ground vector terms up to `depth`, stratified by depth with each
/// stratum sorted by canonical printed form.
pub fn ground_terms(
    sig: &Signature,
    literals: &[Term],
    scalars: &[Scalar],
    depth: usize,
) -> Vec<Term> {
    let mut strata: Vec<Vec<Term>> = Vec::new();
    let mut seen: std::collections::BTreeSet<String> = std::collections::BTreeSet::new();

    let mut level: Vec<Term> = vec![Term::Origin];
    level.extend(sig.vector_consts.iter().map(|n| Term::Const(n.clone())));
    level.extend(literals.iter().cloned());
    level.sort_by_key(|t| t.to_string());
    level.retain(|t| seen.insert(t.to_string()));
    strata.push(level);

    for d in 1..depth {
        let mut next: Vec<Term> = Vec::new();
        let prev = &strata[d - 1];
        for sym in sig.gates.iter().chain(sig.measurements.iter()) {
            for t in prev {
                next.push(Term::apply(sym.clone(), t.clone()));
            }
        }
        let earlier: Vec<&Term> = strata.iter().flatten().collect();
        for a in &earlier {
            for b in prev {
                next.push(Term::add((*a).clone(), b.clone()));
            }
        }
        for a in prev {
            for b in &earlier {
                if b.depth() < d {
                    next.push(Term::add(a.clone(), (*b).clone()));
                }
            }
        }
        for s in scalars {
            for t in prev {
                next.push(Term::scale(s.clone(), t.clone()));
            }
        }
        next.sort_by_key(|t| t.to_string());
        next.retain(|t| seen.insert(t.to_string()));
        strata.push(next);
    }
    strata.into_iter().flatten().collect()
}

/// One derived fact with the clause that produced it.
#[derive(Debug, Clone)]
pub struct FactProvenance {
    pub prop: String,
    pub witness: CVector,
    pub clause: usize,
}

/// The saturated model together with provenance and any soundness caveats
/// (bounded `forall` instantiation, rules fired on subspace bodies).
#[derive(Debug, Clone)]
pub struct InitialModel {
    pub model: Model,
    pub provenance: Vec<FactProvenance>,
    pub warnings: Vec<String>,
    /// Evaluated, deduplicated universe values; used for `forall` and witness
    /// search so all phases see the same candidate states.
    pub universe_values: Vec<CVector>,
}

impl InitialModel {
    pub fn ctx(&self, config: &EngineConfig) -> EvalCtx<'_> {
        EvalCtx::new(&self.model, config.epsilon, config.star_budget)
            .with_universe_ref(&self.universe_values)
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SaturateError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("saturation did not stabilize within {rounds} rounds")]
    Diverged { rounds: usize },
}

/// Computes the least model of the program: every fact the clauses force,
/// and nothing else.
pub fn saturate(program: &HornProgram) -> Result<InitialModel, SaturateError> {
    let eps = program.config.epsilon;
    let mut model = program.base.clone();
    model.fill_valuation(&program.signature);
    // closed propositions always hold on a subspace; normalize their seeds
    for r in &program.signature.closed_props {
        let e = model.valuation.get_mut(r).expect("filled above");
        if !e.is_all() {
            *e = Extent::subspace(e.closed_span(eps));
        }
    }

    // the universe is consulted only by `forall` instantiation and rule
    // fallbacks; building it is the expensive part, so skip it when no clause
    // binds variables
    let needs_universe = program
        .clauses
        .iter()
        .any(|c| contains_binder(c));
    let mut universe_values: Vec<CVector> = Vec::new();
    if needs_universe {
        let universe = program.universe_terms();
        let none = Bindings::new();
        for t in &universe {
            if let Ok(v) = model.eval_term(t, &none, eps) {
                if !universe_values.iter().any(|u| u.approx_eq(&v, eps)) {
                    universe_values.push(v);
                }
            }
        }
    }

    let mut sat = Saturator {
        program,
        model,
        universe_values,
        provenance: Vec::new(),
        warnings: Vec::new(),
        changed: false,
    };

    let max_rounds = program.config.star_budget.max(64);
    let mut rounds = 0;
    loop {
        sat.changed = false;
        for (idx, clause) in program.clauses.iter().enumerate() {
            sat.assert_global(clause, &Bindings::new(), idx)?;
        }
        if !sat.changed {
            break;
        }
        rounds += 1;
        if rounds > max_rounds {
            return Err(SaturateError::Diverged { rounds });
        }
    }

    sat.warnings.sort();
    sat.warnings.dedup();
    Ok(InitialModel {
        model: sat.model,
        provenance: sat.provenance,
        warnings: sat.warnings,
        universe_values: sat.universe_values,
    })
}

struct Saturator<'p> {
    program: &'p HornProgram,
    model: Model,
    universe_values: Vec<CVector>,
    provenance: Vec<FactProvenance>,
    warnings: Vec<String>,
    changed: bool,
}

impl<'p> Saturator<'p> {
    fn eps(&self) -> f64 {
        self.program.config.epsilon
    }

    fn ctx(&self) -> EvalCtx<'_> {
        EvalCtx::new(
            &self.model,
            self.program.config.epsilon,
            self.program.config.star_budget,
        )
        .with_universe_ref(&self.universe_values)
    }

    fn add_fact(&mut self, prop: &str, v: CVector, clause: usize) {
        let eps = self.eps();
        let closed = self.program.signature.is_closed_prop(prop);
        let entry = self
            .model
            .valuation
            .get_mut(prop)
            .expect("valuation is filled");
        if entry.contains(&v, eps) {
            return;
        }
        if closed {
            let mut gens: Vec<CVector> = entry.closed_span(eps).basis().to_vec();
            gens.push(v.clone());
            *entry = Extent::subspace(
                Subspace::span(self.model.dim, &gens, eps).expect("dimension fixed"),
            );
        } else {
            let mut points = entry.points().to_vec();
            points.push(v.clone());
            *entry = Extent::mixed(self.model.dim, points, entry.space().cloned(), eps);
        }
        self.provenance.push(FactProvenance {
            prop: prop.to_string(),
            witness: v,
            clause,
        });
        self.changed = true;
    }

    fn set_all(&mut self, prop: &str, clause: usize) {
        let entry = self
            .model
            .valuation
            .get_mut(prop)
            .expect("valuation is filled");
        if !entry.is_all() {
            *entry = Extent::all(self.model.dim);
            self.provenance.push(FactProvenance {
                prop: prop.to_string(),
                witness: CVector::zero(self.model.dim),
                clause,
            });
            self.changed = true;
        }
    }

    /// Derives the consequences of a clause asserted at every state.
    fn assert_global(
        &mut self,
        clause: &Sentence,
        bindings: &Bindings,
        idx: usize,
    ) -> Result<(), SaturateError> {
        if let Some((phi, gamma)) = match_implication(clause) {
            return self.fire_global_rule(phi, gamma, bindings, idx);
        }
        match clause {
            Sentence::Prop(p) => {
                self.set_all(&p.clone(), idx);
                Ok(())
            }
            Sentence::And(a, b) => {
                self.assert_global(a, bindings, idx)?;
                self.assert_global(b, bindings, idx)
            }
            Sentence::At(k, inner) => {
                let v = self.model.eval_term(k, bindings, self.eps()).map_err(EvalError::from)?;
                self.assert_at(&v, inner, bindings, idx)
            }
            Sentence::Forall(xs, inner) => self.instantiate_forall(
                xs,
                inner,
                bindings,
                idx,
                |sat, inner, bindings, idx| sat.assert_global(inner, bindings, idx),
            ),
            Sentence::Nec(a, inner) if a.is_unitary() => {
                // a composite of bijections reaches every state, so a global
                // necessity over it is exactly a global assertion of the body
                self.assert_global(inner, bindings, idx)
            }
            Sentence::Nec(..) => {
                self.warnings.push(format!(
                    "clause #{idx}: global necessity over a measurement derives no facts; \
                     it is checked as a constraint"
                ));
                Ok(())
            }
            Sentence::Store(_, _) => {
                // ↓z.γ at every state: derive at the term-denotable states
                self.warnings.push(format!(
                    "clause #{idx}: global store instantiated over the bounded term universe"
                ));
                for v in self.universe_values.clone() {
                    self.assert_at(&v, clause, bindings, idx)?;
                }
                Ok(())
            }
            Sentence::QNot(_) => Ok(()),           // constraint, checked afterwards
            Sentence::Not(_) | Sentence::StateIs(_) => Ok(()), // not derivable
        }
    }

    /// Derives the consequences of a clause asserted at one state.
    fn assert_at(
        &mut self,
        w: &CVector,
        clause: &Sentence,
        bindings: &Bindings,
        idx: usize,
    ) -> Result<(), SaturateError> {
        if let Some((phi, gamma)) = match_implication(clause) {
            let holds = self.ctx().sat_local(w, phi, bindings)?;
            if holds {
                self.assert_at(w, gamma, bindings, idx)?;
            }
            return Ok(());
        }
        match clause {
            Sentence::Prop(p) => {
                self.add_fact(&p.clone(), w.clone(), idx);
                Ok(())
            }
            Sentence::And(a, b) => {
                self.assert_at(w, a, bindings, idx)?;
                self.assert_at(w, b, bindings, idx)
            }
            Sentence::At(k, inner) => {
                let v = self.model.eval_term(k, bindings, self.eps()).map_err(EvalError::from)?;
                self.assert_at(&v, inner, bindings, idx)
            }
            Sentence::Nec(a, inner) => {
                let succ = self.ctx().successors(a, w)?;
                for v in succ {
                    self.assert_at(&v, inner, bindings, idx)?;
                }
                Ok(())
            }
            Sentence::Store(z, inner) => {
                let mut extended = bindings.clone();
                extended.insert(z.clone(), w.clone());
                self.assert_at(w, inner, &extended, idx)
            }
            Sentence::Forall(xs, inner) => {
                let w = w.clone();
                self.instantiate_forall(
                    xs,
                    inner,
                    bindings,
                    idx,
                    move |sat, inner, bindings, idx| sat.assert_at(&w, inner, bindings, idx),
                )
            }
            Sentence::QNot(_) => Ok(()), // constraint
            Sentence::Not(_) | Sentence::StateIs(_) => Ok(()),
        }
    }

    /// A global implication fires wherever its body holds: everywhere when the
    /// body's extent is ALL, at each point of a finite extent, and at basis
    /// states of a subspace extent (span closure recovers the rest for closed
    /// heads; otherwise this is a flagged under-approximation).
    fn fire_global_rule(
        &mut self,
        phi: &Sentence,
        gamma: &Sentence,
        bindings: &Bindings,
        idx: usize,
    ) -> Result<(), SaturateError> {
        let body_extent = self.ctx().extent(phi, bindings);
        match body_extent {
            Ok(e) => {
                if e.is_all() {
                    return self.assert_global(gamma, bindings, idx);
                }
                for p in e.points().to_vec() {
                    self.assert_at(&p, gamma, bindings, idx)?;
                }
                if let Some(space) = e.space() {
                    if !space.is_zero() {
                        self.warnings.push(format!(
                            "clause #{idx}: rule body holds on a subspace; fired at its basis \
                             states"
                        ));
                    }
                    for b in space.basis().to_vec() {
                        self.assert_at(&b, gamma, bindings, idx)?;
                    }
                    // a subspace always contains the origin
                    let origin = CVector::zero(self.model.dim);
                    self.assert_at(&origin, gamma, bindings, idx)?;
                }
                Ok(())
            }
            Err(EvalError::NotRepresentable { .. }) => {
                // store-carrying body: probe the candidate states
                self.warnings.push(format!(
                    "clause #{idx}: rule fired over the bounded term universe"
                ));
                for v in self.universe_values.clone() {
                    let holds = self.ctx().sat_local(&v, phi, bindings)?;
                    if holds {
                        self.assert_at(&v, gamma, bindings, idx)?;
                    }
                }
                Ok(())
            }
            Err(other) => Err(other.into()),
        }
    }

    fn instantiate_forall(
        &mut self,
        xs: &[String],
        inner: &Sentence,
        bindings: &Bindings,
        idx: usize,
        mut action: impl FnMut(&mut Self, &Sentence, &Bindings, usize) -> Result<(), SaturateError>,
    ) -> Result<(), SaturateError> {
        self.warnings.push(format!(
            "clause #{idx}: forall instantiated over {} ground states (depth {})",
            self.universe_values.len(),
            self.program.config.term_depth
        ));
        let values = self.universe_values.clone();
        let mut assignment = vec![0usize; xs.len()];
        if values.is_empty() {
            return Ok(());
        }
        loop {
            let mut extended = bindings.clone();
            for (x, &i) in xs.iter().zip(&assignment) {
                extended.insert(x.clone(), values[i].clone());
            }
            action(self, inner, &extended, idx)?;
            if !crate::horn::advance(&mut assignment, values.len()) {
                return Ok(());
            }
        }
    }
}

pub(crate) fn advance(digits: &mut [usize], radix: usize) -> bool {
    if radix == 0 {
        return false;
    }
    for d in digits.iter_mut() {
        *d += 1;
        if *d < radix {
            return true;
        }
        *d = 0;
    }
    false
}

// ---------------------------------------------------------------------------
// satisfiability
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub enum SatVerdict {
    Sat,
    Unsat {
        clause: usize,
        witness: Option<CVector>,
    },
    Unknown {
        clause: usize,
        reason: String,
    },
}

/// Verifies every clause against the saturated model. The initial model of a
/// satisfiable program satisfies all its clauses, so a failure here is a proof
/// of unsatisfiability; non-representable clauses yield UNKNOWN, never SAT.
pub fn check_satisfiable(program: &HornProgram, initial: &InitialModel) -> SatVerdict {
    let ctx = initial.ctx(&program.config);
    let none = Bindings::new();
    for (idx, clause) in program.clauses.iter().enumerate() {
        match ctx.sat_global(clause, &none) {
            Ok(true) => continue,
            Ok(false) => {
                let witness = find_violation(&ctx, clause, initial);
                return SatVerdict::Unsat {
                    clause: idx,
                    witness,
                };
            }
            Err(err) => {
                return SatVerdict::Unknown {
                    clause: idx,
                    reason: err.to_string(),
                }
            }
        }
    }
    SatVerdict::Sat
}

/// Searches candidate states for one that falsifies the clause.
fn find_violation(ctx: &EvalCtx<'_>, clause: &Sentence, initial: &InitialModel) -> Option<CVector> {
    let dim = initial.model.dim;
    let none = Bindings::new();
    let mut candidates: Vec<CVector> = Vec::new();
    for k in 0..dim {
        candidates.push(CVector::basis(dim, k));
    }
    for k in 0..dim {
        for l in (k + 1)..dim {
            candidates.push(
                CVector::basis(dim, k)
                    .add(&CVector::basis(dim, l))
                    .unwrap(),
            );
        }
    }
    for e in initial.model.valuation.values() {
        candidates.extend(e.points().iter().cloned());
        if let Some(s) = e.space() {
            candidates.extend(s.basis().iter().cloned());
        }
    }
    candidates.extend(initial.universe_values.iter().cloned());
    candidates
        .into_iter()
        .find(|w| matches!(ctx.sat_local(w, clause, &none), Ok(false)))
}

// ---------------------------------------------------------------------------
// entailment and queries
// ---------------------------------------------------------------------------

/// Does the program entail the sentence at the state named by the anchor term?
/// Exact for basic sentences; for other Horn clauses this reports truth in the
/// initial model, which the program entailment implies.
pub fn entails(
    program: &HornProgram,
    initial: &InitialModel,
    anchor: &Term,
    s: &Sentence,
) -> Result<bool, EvalError> {
    let ctx = initial.ctx(&program.config);
    let none = Bindings::new();
    let w = initial
        .model
        .eval_term(anchor, &none, program.config.epsilon)?;
    ctx.sat_local(&w, s, &none)
}

/// A ground substitution answering a query.
pub type Substitution = BTreeMap<String, Term>;

#[derive(Debug, Clone)]
pub enum QueryOutcome {
    Answer(Substitution),
    NoAnswerAtDepth(usize),
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum QueryError {
    #[error("program is unsatisfiable (clause #{clause})")]
    ProgramUnsat {
        clause: usize,
        witness: Option<CVector>,
    },
    #[error("satisfiability is unknown: {reason}")]
    Unknown { clause: usize, reason: String },
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Searches the ground-term universe for the first substitution θ, in
/// depth-lexicographic order, such that the program entails θ(body) at the
/// anchor. Exhausting the universe yields `NoAnswerAtDepth`, which is relative
/// to the configured depth, not a proof that no answer exists.
pub fn answer_query(
    program: &HornProgram,
    initial: &InitialModel,
    anchor: Option<&Term>,
    vars: &[String],
    body: &Sentence,
) -> Result<QueryOutcome, QueryError> {
    match check_satisfiable(program, initial) {
        SatVerdict::Sat => {}
        SatVerdict::Unsat { clause, witness } => {
            return Err(QueryError::ProgramUnsat { clause, witness })
        }
        SatVerdict::Unknown { clause, reason } => {
            return Err(QueryError::Unknown { clause, reason })
        }
    }

    let ctx = initial.ctx(&program.config);
    let none = Bindings::new();
    let eps = program.config.epsilon;
    let anchor_value = match anchor {
        Some(t) => initial
            .model
            .eval_term(t, &none, eps)
            .map_err(EvalError::from)?,
        None => CVector::zero(initial.model.dim),
    };

    let universe = program.universe_terms();
    if vars.is_empty() || universe.is_empty() {
        return Ok(QueryOutcome::NoAnswerAtDepth(program.config.term_depth));
    }
    let mut assignment = vec![0usize; vars.len()];
    loop {
        let mut theta = Substitution::new();
        for (x, &i) in vars.iter().zip(&assignment) {
            theta.insert(x.clone(), universe[i].clone());
        }
        let candidate = body.substitute(&theta);
        match ctx.sat_local(&anchor_value, &candidate, &none) {
            Ok(true) => return Ok(QueryOutcome::Answer(theta)),
            Ok(false) => {}
            // a substitution that makes a measurement term undefined simply
            // denotes nothing; skip it
            Err(EvalError::Term(crate::model::TermError::UndefinedMeasurement { .. })) => {}
            Err(other) => return Err(other.into()),
        }
        if !advance_rev(&mut assignment, universe.len()) {
            return Ok(QueryOutcome::NoAnswerAtDepth(program.config.term_depth));
        }
    }
}

/// Odometer with the last variable fastest, so substitutions enumerate in
/// lexicographic order over (var₁, var₂, …).
fn advance_rev(digits: &mut [usize], radix: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < radix {
            return true;
        }
        *d = 0;
    }
    false
}

/// Does the sentence bind state variables anywhere (forall or store)?
fn contains_binder(s: &Sentence) -> bool {
    match s {
        Sentence::Forall(..) | Sentence::Store(..) => true,
        Sentence::Prop(_) | Sentence::StateIs(_) => false,
        Sentence::At(_, inner)
        | Sentence::Not(inner)
        | Sentence::QNot(inner)
        | Sentence::Nec(_, inner) => contains_binder(inner),
        Sentence::And(a, b) => contains_binder(a) || contains_binder(b),
    }
}

fn collect_sentence_literals(s: &Sentence, out: &mut Vec<Term>) {
    let mut push = |ts: Vec<Term>| {
        for t in ts {
            if !out.contains(&t) {
                out.push(t);
            }
        }
    };
    match s {
        Sentence::Prop(_) => {}
        Sentence::StateIs(t) => {
            let mut ls = Vec::new();
            t.collect_literals(&mut ls);
            push(ls);
        }
        Sentence::At(k, inner) => {
            let mut ls = Vec::new();
            k.collect_literals(&mut ls);
            push(ls);
            collect_sentence_literals(inner, out);
        }
        Sentence::And(a, b) => {
            collect_sentence_literals(a, out);
            collect_sentence_literals(b, out);
        }
        Sentence::Not(inner) | Sentence::QNot(inner) => collect_sentence_literals(inner, out),
        Sentence::Nec(_, inner) | Sentence::Store(_, inner) | Sentence::Forall(_, inner) => {
            collect_sentence_literals(inner, out)
        }
    }
}

fn collect_sentence_scalars(s: &Sentence, out: &mut Vec<Scalar>) {
    let mut push = |ss: Vec<Scalar>| {
        for x in ss {
            if !out.contains(&x) {
                out.push(x);
            }
        }
    };
    match s {
        Sentence::Prop(_) => {}
        Sentence::StateIs(t) => {
            let mut xs = Vec::new();
            t.collect_scalars(&mut xs);
            push(xs);
        }
        Sentence::At(k, inner) => {
            let mut xs = Vec::new();
            k.collect_scalars(&mut xs);
            push(xs);
            collect_sentence_scalars(inner, out);
        }
        Sentence::And(a, b) => {
            collect_sentence_scalars(a, out);
            collect_sentence_scalars(b, out);
        }
        Sentence::Not(inner) | Sentence::QNot(inner) => collect_sentence_scalars(inner, out),
        Sentence::Nec(_, inner) | Sentence::Store(_, inner) | Sentence::Forall(_, inner) => {
            collect_sentence_scalars(inner, out)
        }
    }
}
