//! Action semantics and local/global satisfaction.
//!
//! Evaluation runs on two tracks. The *extent* track computes the semantics of
//! a sentence as a representable set (exact; works for the closed fragment and
//! everything built from @-anchored pieces). The *pointwise* track checks a
//! single state by following successors, with a budget on star unfolding.
//! Necessity prefers the extent track — the preimage of a subspace under a
//! measurement is X⊥ ⊕ (X ∩ Y), and star is a greatest fixpoint that
//! stabilizes within dim+1 steps — and falls back to pointwise search when the
//! operand extent is not representable. Wrong answers are never produced:
//! whatever cannot be decided exactly raises an error instead.

use crate::extent::Extent;
use crate::linalg::{CVector, DimensionMismatch};
use crate::model::{Bindings, Model, TermError};
use crate::sentence::{match_implication, Action, Sentence};
use crate::subspace::Subspace;
use std::borrow::Cow;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EvalError {
    #[error("star unfolding of {action} exceeded the budget of {budget}")]
    BudgetExceeded { action: String, budget: usize },
    #[error("extent of {sentence} is not representable: {reason}")]
    NotRepresentable { sentence: String, reason: String },
    #[error("global satisfaction of {sentence} is not decidable")]
    GlobalNotDecidable { sentence: String },
    #[error(transparent)]
    Term(#[from] TermError),
    #[error(transparent)]
    Dimension(#[from] DimensionMismatch),
}

/// Evaluation context: the model plus the numeric configuration.
pub struct EvalCtx<'a> {
    pub model: &'a Model,
    pub epsilon: f64,
    pub star_budget: usize,
    /// Candidate states that `forall` ranges over in pointwise evaluation.
    /// Quantification over all of ℂⁿ is not decidable numerically; this finite
    /// universe makes `forall` sound for refutation and bounded for validity.
    pub forall_universe: Cow<'a, [CVector]>,
}

impl<'a> EvalCtx<'a> {
    pub fn new(model: &'a Model, epsilon: f64, star_budget: usize) -> EvalCtx<'a> {
        let forall_universe: Vec<CVector> = model.vector_consts.values().cloned().collect();
        EvalCtx {
            model,
            epsilon,
            star_budget,
            forall_universe: Cow::Owned(forall_universe),
        }
    }

    pub fn with_universe(mut self, universe: Vec<CVector>) -> EvalCtx<'a> {
        self.forall_universe = Cow::Owned(universe);
        self
    }

    pub fn with_universe_ref(mut self, universe: &'a [CVector]) -> EvalCtx<'a> {
        self.forall_universe = Cow::Borrowed(universe);
        self
    }

    fn eps(&self) -> f64 {
        self.epsilon
    }

    // -- successor computation (pointwise action semantics) -----------------

    /// All 𝔞-successors of a state. Gates contribute one successor, undefined
    /// measurements none; star collects every iterate reachable before the
    /// visited set closes, and reports budget exhaustion rather than
    /// truncating silently.
    pub fn successors(&self, a: &Action, w: &CVector) -> Result<Vec<CVector>, EvalError> {
        match a {
            Action::Gate(u) => {
                let mat = self
                    .model
                    .gates
                    .get(u)
                    .ok_or_else(|| TermError::UnknownSymbol(u.clone()))?;
                Ok(vec![mat.mul_vec(w)?])
            }
            Action::Meas(q) => {
                let x = self
                    .model
                    .measurements
                    .get(q)
                    .ok_or_else(|| TermError::UnknownSymbol(q.clone()))?;
                Ok(match x.measure(w, self.eps())? {
                    Some(v) => vec![v],
                    None => Vec::new(),
                })
            }
            Action::Seq(a1, a2) => {
                let mut out: Vec<CVector> = Vec::new();
                for v in self.successors(a1, w)? {
                    for s in self.successors(a2, &v)? {
                        push_unique(&mut out, s, self.eps());
                    }
                }
                Ok(out)
            }
            Action::Union(a1, a2) => {
                let mut out = self.successors(a1, w)?;
                for s in self.successors(a2, w)? {
                    push_unique(&mut out, s, self.eps());
                }
                Ok(out)
            }
            Action::Star(inner) => {
                let mut visited = vec![w.clone()];
                let mut frontier = vec![w.clone()];
                for _ in 0..self.star_budget {
                    let mut next: Vec<CVector> = Vec::new();
                    for v in &frontier {
                        for s in self.successors(inner, v)? {
                            if !visited.iter().any(|x| x.approx_eq(&s, self.eps()))
                                && !next.iter().any(|x| x.approx_eq(&s, self.eps()))
                            {
                                next.push(s);
                            }
                        }
                    }
                    if next.is_empty() {
                        return Ok(visited);
                    }
                    visited.extend(next.iter().cloned());
                    frontier = next;
                }
                Err(EvalError::BudgetExceeded {
                    action: a.to_string(),
                    budget: self.star_budget,
                })
            }
        }
    }

    // -- preimage computation (extent action semantics) ----------------------

    /// The extent {w | 𝔞(w) ⊆ e}. Exact on the representable fragment; the
    /// preimage of a finite set under a measurement or a star is not
    /// representable and reports an error.
    pub fn preimage_extent(&self, a: &Action, e: &Extent) -> Result<Extent, EvalError> {
        match a {
            Action::Gate(u) => {
                let mat = self
                    .model
                    .gates
                    .get(u)
                    .ok_or_else(|| TermError::UnknownSymbol(u.clone()))?;
                match e {
                    Extent::All(d) => Ok(Extent::all(*d)),
                    Extent::Set { dim, points, space } => {
                        let adj = mat.adjoint();
                        let mut new_points = Vec::with_capacity(points.len());
                        for p in points {
                            new_points.push(adj.mul_vec(p)?);
                        }
                        let new_space = match space {
                            // a unitary image of an orthonormal basis stays orthonormal
                            Some(s) => {
                                let basis = s
                                    .basis()
                                    .iter()
                                    .map(|b| adj.mul_vec(b))
                                    .collect::<Result<Vec<_>, _>>()?;
                                Some(Subspace::from_orthonormal_basis(*dim, basis))
                            }
                            None => None,
                        };
                        Ok(Extent::mixed(*dim, new_points, new_space, self.eps()))
                    }
                }
            }
            Action::Meas(q) => {
                let x = self
                    .model
                    .measurements
                    .get(q)
                    .ok_or_else(|| TermError::UnknownSymbol(q.clone()))?;
                match e {
                    // undefined measurements have no successors, so necessity
                    // is vacuous there: everything maps into ALL
                    Extent::All(d) => Ok(Extent::all(*d)),
                    Extent::Set { dim, points, space } => {
                        if !points.is_empty() {
                            return Err(EvalError::NotRepresentable {
                                sentence: format!("[{q}] _"),
                                reason: "preimage of a finite vector set under a measurement"
                                    .into(),
                            });
                        }
                        // normalization preserves subspace membership, so the
                        // preimage of a subspace Y is X⊥ ⊕ (X ∩ Y); the empty
                        // extent behaves like the zero subspace because the
                        // measurement never outputs the origin
                        let y = match space {
                            Some(s) => s.clone(),
                            None => Subspace::zero(*dim),
                        };
                        Ok(Extent::subspace(x.sasaki_hook(&y, self.eps())?))
                    }
                }
            }
            Action::Seq(a1, a2) => {
                let inner = self.preimage_extent(a2, e)?;
                self.preimage_extent(a1, &inner)
            }
            Action::Union(a1, a2) => {
                let e1 = self.preimage_extent(a1, e)?;
                let e2 = self.preimage_extent(a2, e)?;
                Ok(e1.intersect(&e2, self.eps()))
            }
            Action::Star(_) => Ok(self.star_preimage_counted(a, e)?.0),
        }
    }

    /// Greatest-fixpoint preimage for a starred action, also reporting how
    /// many strict shrink steps the chain took (at most dim+1 in finite
    /// dimension, since each strict step drops the rank).
    pub fn star_preimage_counted(
        &self,
        star: &Action,
        e: &Extent,
    ) -> Result<(Extent, usize), EvalError> {
        let Action::Star(inner) = star else {
            panic!("star_preimage_counted takes a starred action");
        };
        if e.is_all() {
            // already a fixpoint; keep the representation (a full-rank
            // subspace stays a subspace)
            return Ok((e.clone(), 0));
        }
        if !e.points().is_empty() {
            return Err(EvalError::NotRepresentable {
                sentence: format!("[{star}] _"),
                reason: "preimage of a finite vector set under a star".into(),
            });
        }
        let mut z = e.clone();
        let mut changes = 1; // ALL -> e is the first strict step
        loop {
            let step = self.preimage_extent(inner, &z)?;
            let next = e.intersect(&step, self.eps());
            if extent_eq(&next, &z, self.eps()) {
                return Ok((z, changes));
            }
            z = next;
            changes += 1;
            // a descending chain of subspaces of ℂⁿ cannot shrink more than
            // dim+1 times
            if changes > e.dim() + 1 {
                return Err(EvalError::NotRepresentable {
                    sentence: format!("[{star}] _"),
                    reason: "star fixpoint failed to stabilize".into(),
                });
            }
        }
    }

    // -- extent of a sentence -------------------------------------------------

    /// Computes the semantics of a sentence as a representable extent.
    /// Structural cases that are inherently pointwise (store, forall) report
    /// `NotRepresentable`; callers fall back to [`EvalCtx::sat_local`].
    pub fn extent(&self, s: &Sentence, bindings: &Bindings) -> Result<Extent, EvalError> {
        let dim = self.model.dim;
        match s {
            Sentence::Prop(p) => self
                .model
                .valuation
                .get(p)
                .cloned()
                .ok_or_else(|| TermError::UnknownSymbol(p.clone()).into()),
            Sentence::StateIs(k) => {
                let v = self.model.eval_term(k, bindings, self.eps())?;
                Ok(Extent::finite(dim, vec![v], self.eps()))
            }
            Sentence::At(k, inner) => {
                let v = self.model.eval_term(k, bindings, self.eps())?;
                if self.sat_local(&v, inner, bindings)? {
                    Ok(Extent::all(dim))
                } else {
                    Ok(Extent::empty(dim))
                }
            }
            Sentence::And(a, b) => {
                let ea = self.extent(a, bindings)?;
                let eb = self.extent(b, bindings)?;
                Ok(ea.intersect(&eb, self.eps()))
            }
            Sentence::Not(inner) => {
                let e = self.extent(inner, bindings)?;
                if e.is_all() {
                    Ok(Extent::empty(dim))
                } else if e.is_empty() {
                    Ok(Extent::all(dim))
                } else {
                    Err(EvalError::NotRepresentable {
                        sentence: s.to_string(),
                        reason: "classical complement of a proper extent".into(),
                    })
                }
            }
            Sentence::QNot(inner) => {
                let e = self.extent(inner, bindings)?;
                Ok(Extent::subspace(e.ortho(self.eps())))
            }
            Sentence::Nec(a, inner) => {
                let e = self.extent(inner, bindings)?;
                self.preimage_extent(a, &e)
            }
            Sentence::Store(..) | Sentence::Forall(..) => Err(EvalError::NotRepresentable {
                sentence: s.to_string(),
                reason: "binders are evaluated pointwise".into(),
            }),
        }
    }

    // -- local satisfaction ---------------------------------------------------

    /// Does the state `w` satisfy the sentence?
    pub fn sat_local(
        &self,
        w: &CVector,
        s: &Sentence,
        bindings: &Bindings,
    ) -> Result<bool, EvalError> {
        match s {
            Sentence::Prop(p) => {
                let e = self
                    .model
                    .valuation
                    .get(p)
                    .ok_or_else(|| TermError::UnknownSymbol(p.clone()))?;
                Ok(e.contains(w, self.eps()))
            }
            Sentence::StateIs(k) => {
                let v = self.model.eval_term(k, bindings, self.eps())?;
                Ok(v.approx_eq(w, self.eps()))
            }
            Sentence::At(k, inner) => {
                let v = self.model.eval_term(k, bindings, self.eps())?;
                self.sat_local(&v, inner, bindings)
            }
            Sentence::And(a, b) => {
                Ok(self.sat_local(w, a, bindings)? && self.sat_local(w, b, bindings)?)
            }
            Sentence::Not(inner) => Ok(!self.sat_local(w, inner, bindings)?),
            Sentence::QNot(inner) => {
                let e = self.extent(inner, bindings)?;
                Ok(e.ortho(self.eps()).contains(w, self.eps())?)
            }
            Sentence::Nec(a, inner) => {
                // subspace shortcut when the operand extent is representable
                match self.extent(inner, bindings) {
                    Ok(e) => match self.preimage_extent(a, &e) {
                        Ok(pre) => Ok(pre.contains(w, self.eps())),
                        Err(EvalError::NotRepresentable { .. }) => {
                            self.sat_nec_pointwise(w, a, inner, bindings)
                        }
                        Err(other) => Err(other),
                    },
                    Err(EvalError::NotRepresentable { .. }) => {
                        self.sat_nec_pointwise(w, a, inner, bindings)
                    }
                    Err(other) => Err(other),
                }
            }
            Sentence::Store(z, inner) => {
                let mut extended = bindings.clone();
                extended.insert(z.clone(), w.clone());
                self.sat_local(w, inner, &extended)
            }
            Sentence::Forall(xs, inner) => {
                let mut assignment = vec![0usize; xs.len()];
                loop {
                    let mut extended = bindings.clone();
                    for (x, &i) in xs.iter().zip(&assignment) {
                        extended.insert(x.clone(), self.forall_universe[i].clone());
                    }
                    if !self.sat_local(w, inner, &extended)? {
                        return Ok(false);
                    }
                    if !advance(&mut assignment, self.forall_universe.len()) {
                        return Ok(true);
                    }
                }
            }
        }
    }

    fn sat_nec_pointwise(
        &self,
        w: &CVector,
        a: &Action,
        inner: &Sentence,
        bindings: &Bindings,
    ) -> Result<bool, EvalError> {
        for v in self.successors(a, w)? {
            if !self.sat_local(&v, inner, bindings)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    // -- global satisfaction ----------------------------------------------------

    /// Does the sentence hold at every state? Decided exactly through extents,
    /// with structural decompositions for conjunction, retrieve, implication
    /// shapes (A ⇒ B holds globally iff extent(A) ⊆ extent(B)), quantifiers
    /// (over the candidate universe), and necessity over unitary actions
    /// (whose successor relation is surjective). Anything else raises
    /// `GlobalNotDecidable` naming the subsentence.
    pub fn sat_global(&self, s: &Sentence, bindings: &Bindings) -> Result<bool, EvalError> {
        if let Some((phi, gamma)) = match_implication(s) {
            let ep = self.extent(phi, bindings).map_err(global_err)?;
            let eg = self.extent(gamma, bindings).map_err(global_err)?;
            return Ok(ep.subset_of(&eg, self.eps()));
        }
        match s {
            Sentence::And(a, b) => {
                Ok(self.sat_global(a, bindings)? && self.sat_global(b, bindings)?)
            }
            Sentence::At(k, inner) => {
                let v = self.model.eval_term(k, bindings, self.eps())?;
                self.sat_local(&v, inner, bindings)
            }
            Sentence::Forall(xs, inner) => {
                let mut assignment = vec![0usize; xs.len()];
                loop {
                    let mut extended = bindings.clone();
                    for (x, &i) in xs.iter().zip(&assignment) {
                        extended.insert(x.clone(), self.forall_universe[i].clone());
                    }
                    if !self.sat_global(inner, &extended)? {
                        return Ok(false);
                    }
                    if !advance(&mut assignment, self.forall_universe.len()) {
                        return Ok(true);
                    }
                }
            }
            Sentence::Not(inner) => {
                let e = self.extent(inner, bindings).map_err(global_err)?;
                Ok(e.is_empty())
            }
            Sentence::Nec(a, inner) if a.is_unitary() => {
                // every state is reachable through a composite of bijections
                self.sat_global(inner, bindings)
            }
            _ => {
                let e = self.extent(s, bindings).map_err(global_err)?;
                Ok(e.is_all())
            }
        }
    }
}

/// Rewraps a representability failure, keeping the offending subsentence.
fn global_err(err: EvalError) -> EvalError {
    match err {
        EvalError::NotRepresentable { sentence, .. } => EvalError::GlobalNotDecidable { sentence },
        other => other,
    }
}

/// Semantic equality of two representable extents (mutual containment).
pub fn extent_eq(a: &Extent, b: &Extent, eps: f64) -> bool {
    a.subset_of(b, eps) && b.subset_of(a, eps)
}

fn push_unique(out: &mut Vec<CVector>, v: CVector, eps: f64) {
    if !out.iter().any(|x| x.approx_eq(&v, eps)) {
        out.push(v);
    }
}

/// Odometer increment over a fixed radix; false when the space is exhausted.
fn advance(digits: &mut [usize], radix: usize) -> bool {
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
