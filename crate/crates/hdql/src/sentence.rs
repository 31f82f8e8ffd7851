//! Actions, sentences, classification, and substitution.
//!
//! The core sentence forms are exactly the eight of the logic: propositions,
//! retrieve `@`, conjunction, classical and quantum negation, necessity over an
//! action, store, and universal quantification — plus a state-equality atom
//! (a vector term in sentence position) which the `until` macro needs.
//! Everything else (`\/`, `=>`, `~>`, `<a>`, `exists`, `(+)`, `until`) is
//! expanded into core forms when built, and the classifiers recognize the
//! expanded shapes.

use crate::signature::{Morphism, MorphismError, Signature, SymbolKind};
use crate::term::Term;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Action {
    Gate(String),
    Meas(String),
    Seq(Box<Action>, Box<Action>),
    Union(Box<Action>, Box<Action>),
    Star(Box<Action>),
}

impl Action {
    pub fn seq(a: Action, b: Action) -> Action {
        Action::Seq(Box::new(a), Box::new(b))
    }

    pub fn union(a: Action, b: Action) -> Action {
        Action::Union(Box::new(a), Box::new(b))
    }

    pub fn star(a: Action) -> Action {
        Action::Star(Box::new(a))
    }

    /// True iff no measurement symbol occurs in the action.
    pub fn is_unitary(&self) -> bool {
        match self {
            Action::Gate(_) => true,
            Action::Meas(_) => false,
            Action::Seq(a, b) | Action::Union(a, b) => a.is_unitary() && b.is_unitary(),
            Action::Star(a) => a.is_unitary(),
        }
    }

    pub fn translate(&self, m: &Morphism) -> Result<Action, MorphismError> {
        Ok(match self {
            Action::Gate(u) => Action::Gate(m.map_symbol(SymbolKind::Gate, u)?),
            Action::Meas(q) => Action::Meas(m.map_symbol(SymbolKind::Measurement, q)?),
            Action::Seq(a, b) => Action::seq(a.translate(m)?, b.translate(m)?),
            Action::Union(a, b) => Action::union(a.translate(m)?, b.translate(m)?),
            Action::Star(a) => Action::star(a.translate(m)?),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Sentence {
    Prop(String),
    /// Retrieve: evaluate the operand at the state named by the term.
    At(Term, Box<Sentence>),
    And(Box<Sentence>, Box<Sentence>),
    /// Classical negation.
    Not(Box<Sentence>),
    /// Quantum negation (orthocomplement).
    QNot(Box<Sentence>),
    Nec(Action, Box<Sentence>),
    /// Bind the current state to a variable.
    Store(String, Box<Sentence>),
    Forall(Vec<String>, Box<Sentence>),
    /// A vector term in sentence position: true exactly at that state.
    StateIs(Term),
}

/// Grammar memberships reported by [`classify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Class {
    Basic,
    Closed,
    Horn,
    General,
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Class::Basic => write!(f, "BASIC"),
            Class::Closed => write!(f, "CLOSED"),
            Class::Horn => write!(f, "HORN"),
            Class::General => write!(f, "GENERAL"),
        }
    }
}

impl Sentence {
    pub fn prop(name: impl Into<String>) -> Sentence {
        Sentence::Prop(name.into())
    }

    pub fn at(k: Term, s: Sentence) -> Sentence {
        Sentence::At(k, Box::new(s))
    }

    pub fn and(a: Sentence, b: Sentence) -> Sentence {
        Sentence::And(Box::new(a), Box::new(b))
    }

    pub fn not(s: Sentence) -> Sentence {
        Sentence::Not(Box::new(s))
    }

    pub fn qnot(s: Sentence) -> Sentence {
        Sentence::QNot(Box::new(s))
    }

    pub fn nec(a: Action, s: Sentence) -> Sentence {
        Sentence::Nec(a, Box::new(s))
    }

    pub fn store(z: impl Into<String>, s: Sentence) -> Sentence {
        Sentence::Store(z.into(), Box::new(s))
    }

    pub fn forall(xs: Vec<String>, s: Sentence) -> Sentence {
        Sentence::Forall(xs, Box::new(s))
    }

    // -- abbreviations, expanded on construction ---------------------------

    /// φ ∨ ψ ≔ ¬(¬φ ∧ ¬ψ)
    pub fn or(a: Sentence, b: Sentence) -> Sentence {
        Sentence::not(Sentence::and(Sentence::not(a), Sentence::not(b)))
    }

    /// φ ⇒ ψ ≔ ¬(φ ∧ ¬ψ)
    pub fn implies(a: Sentence, b: Sentence) -> Sentence {
        Sentence::not(Sentence::and(a, Sentence::not(b)))
    }

    /// ⟨𝔞⟩φ ≔ ¬[𝔞]¬φ
    pub fn diamond(a: Action, s: Sentence) -> Sentence {
        Sentence::not(Sentence::nec(a, Sentence::not(s)))
    }

    /// ∃X φ ≔ ¬∀X ¬φ
    pub fn exists(xs: Vec<String>, s: Sentence) -> Sentence {
        Sentence::not(Sentence::forall(xs, Sentence::not(s)))
    }

    /// ρ₁ ↝ ρ₂ ≔ ∼(ρ₁ ∧ ∼(ρ₁ ∧ ρ₂))
    pub fn sasaki(a: Sentence, b: Sentence) -> Sentence {
        Sentence::qnot(Sentence::and(
            a.clone(),
            Sentence::qnot(Sentence::and(a, b)),
        ))
    }

    /// ρ₁ ⊕ ρ₂ ≔ ∼(∼ρ₁ ∧ ∼ρ₂)
    pub fn oplus(a: Sentence, b: Sentence) -> Sentence {
        Sentence::qnot(Sentence::and(Sentence::qnot(a), Sentence::qnot(b)))
    }

    /// Until over an action: ↓x.⟨𝔞⟩↓y.(γ ∧ @ₓ[𝔞](⟨𝔞⟩y ⇒ ψ)), with x and y
    /// fresh for γ and ψ.
    pub fn until(a: Action, gamma: Sentence, psi: Sentence) -> Sentence {
        let mut used = gamma.all_vars();
        used.extend(psi.all_vars());
        let x = fresh_var("x", &used);
        used.insert(x.clone());
        let y = fresh_var("y", &used);
        let inner = Sentence::implies(
            Sentence::diamond(a.clone(), Sentence::StateIs(Term::Var(y.clone()))),
            psi,
        );
        let body = Sentence::and(
            gamma,
            Sentence::at(Term::Var(x.clone()), Sentence::nec(a.clone(), inner)),
        );
        Sentence::store(x, Sentence::diamond(a, Sentence::store(y, body)))
    }

    // -- variables ----------------------------------------------------------

    pub fn free_vars(&self) -> BTreeSet<String> {
        match self {
            Sentence::Prop(_) => BTreeSet::new(),
            Sentence::StateIs(t) => t.free_vars(),
            Sentence::At(k, s) => {
                let mut out = k.free_vars();
                out.extend(s.free_vars());
                out
            }
            Sentence::And(a, b) => {
                let mut out = a.free_vars();
                out.extend(b.free_vars());
                out
            }
            Sentence::Not(s) | Sentence::QNot(s) => s.free_vars(),
            Sentence::Nec(_, s) => s.free_vars(),
            Sentence::Store(z, s) => {
                let mut out = s.free_vars();
                out.remove(z);
                out
            }
            Sentence::Forall(xs, s) => {
                let mut out = s.free_vars();
                for x in xs {
                    out.remove(x);
                }
                out
            }
        }
    }

    /// All variable names occurring anywhere, free or bound.
    pub fn all_vars(&self) -> BTreeSet<String> {
        match self {
            Sentence::Prop(_) => BTreeSet::new(),
            Sentence::StateIs(t) => t.free_vars(),
            Sentence::At(k, s) => {
                let mut out = k.free_vars();
                out.extend(s.all_vars());
                out
            }
            Sentence::And(a, b) => {
                let mut out = a.all_vars();
                out.extend(b.all_vars());
                out
            }
            Sentence::Not(s) | Sentence::QNot(s) => s.all_vars(),
            Sentence::Nec(_, s) => s.all_vars(),
            Sentence::Store(z, s) => {
                let mut out = s.all_vars();
                out.insert(z.clone());
                out
            }
            Sentence::Forall(xs, s) => {
                let mut out = s.all_vars();
                out.extend(xs.iter().cloned());
                out
            }
        }
    }

    pub fn is_ground(&self) -> bool {
        self.free_vars().is_empty()
    }

    // -- substitution --------------------------------------------------------

    /// Capture-avoiding substitution of terms for free variables. Bound
    /// variables that would capture a substituted term are renamed with a
    /// deterministic fresh-name scheme (`z`, `z1`, `z2`, …).
    pub fn substitute(&self, theta: &BTreeMap<String, Term>) -> Sentence {
        if theta.is_empty() {
            return self.clone();
        }
        let term_subst = |t: &Term| t.substitute(&|x| theta.get(x).cloned());
        match self {
            Sentence::Prop(_) => self.clone(),
            Sentence::StateIs(t) => Sentence::StateIs(term_subst(t)),
            Sentence::At(k, s) => Sentence::at(term_subst(k), s.substitute(theta)),
            Sentence::And(a, b) => Sentence::and(a.substitute(theta), b.substitute(theta)),
            Sentence::Not(s) => Sentence::not(s.substitute(theta)),
            Sentence::QNot(s) => Sentence::qnot(s.substitute(theta)),
            Sentence::Nec(a, s) => Sentence::nec(a.clone(), s.substitute(theta)),
            Sentence::Store(z, s) => {
                let (renamed, body) = rename_binders(&[z.clone()], s, theta);
                Sentence::store(renamed[0].clone(), body)
            }
            Sentence::Forall(xs, s) => {
                let (renamed, body) = rename_binders(xs, s, theta);
                Sentence::forall(renamed, body)
            }
        }
    }

    // -- translation along a signature morphism ------------------------------

    pub fn translate(&self, m: &Morphism) -> Result<Sentence, MorphismError> {
        Ok(match self {
            Sentence::Prop(p) => Sentence::Prop(m.map_symbol(SymbolKind::Prop, p)?),
            Sentence::StateIs(t) => Sentence::StateIs(translate_term(t, m)?),
            Sentence::At(k, s) => Sentence::at(translate_term(k, m)?, s.translate(m)?),
            Sentence::And(a, b) => Sentence::and(a.translate(m)?, b.translate(m)?),
            Sentence::Not(s) => Sentence::not(s.translate(m)?),
            Sentence::QNot(s) => Sentence::qnot(s.translate(m)?),
            Sentence::Nec(a, s) => Sentence::nec(a.translate(m)?, s.translate(m)?),
            Sentence::Store(z, s) => Sentence::store(z.clone(), s.translate(m)?),
            Sentence::Forall(xs, s) => Sentence::forall(xs.clone(), s.translate(m)?),
        })
    }
}

fn fresh_var(stem: &str, used: &BTreeSet<String>) -> String {
    if !used.contains(stem) {
        return stem.to_string();
    }
    for i in 1.. {
        let candidate = format!("{stem}{i}");
        if !used.contains(&candidate) {
            return candidate;
        }
    }
    unreachable!()
}

fn rename_binders(
    binders: &[String],
    body: &Sentence,
    theta: &BTreeMap<String, Term>,
) -> (Vec<String>, Sentence) {
    // restrict θ to variables not shadowed here
    let mut inner: BTreeMap<String, Term> = theta
        .iter()
        .filter(|(k, _)| !binders.contains(k))
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    // variables free in the images of the remaining substitution
    let mut image_vars: BTreeSet<String> = BTreeSet::new();
    for t in inner.values() {
        image_vars.extend(t.free_vars());
    }
    let mut used: BTreeSet<String> = body.all_vars();
    used.extend(image_vars.iter().cloned());
    used.extend(inner.keys().cloned());

    let mut renamed = Vec::with_capacity(binders.len());
    for z in binders {
        if image_vars.contains(z) {
            let fresh = fresh_var(z, &used);
            used.insert(fresh.clone());
            inner.insert(z.clone(), Term::Var(fresh.clone()));
            renamed.push(fresh);
        } else {
            renamed.push(z.clone());
        }
    }
    (renamed, body.substitute(&inner))
}

fn translate_term(t: &Term, m: &Morphism) -> Result<Term, MorphismError> {
    Ok(match t {
        Term::Const(c) => Term::Const(m.map_symbol(SymbolKind::VectorConst, c)?),
        Term::Lit(_) | Term::Ket(_) | Term::Var(_) | Term::Origin => t.clone(),
        Term::Apply(sym, inner) => {
            let mapped = if m.source.gates.contains(sym) {
                m.map_symbol(SymbolKind::Gate, sym)?
            } else {
                m.map_symbol(SymbolKind::Measurement, sym)?
            };
            Term::apply(mapped, translate_term(inner, m)?)
        }
        Term::Add(a, b) => Term::add(translate_term(a, m)?, translate_term(b, m)?),
        Term::Scale(s, inner) => Term::scale(s.clone(), translate_term(inner, m)?),
    })
}

// ---------------------------------------------------------------------------
// classification
// ---------------------------------------------------------------------------

/// All grammar labels the sentence satisfies; `GENERAL` when no special
/// grammar derives it.
pub fn classify(s: &Sentence, sig: &Signature) -> BTreeSet<Class> {
    let mut out = BTreeSet::new();
    if is_basic(s) {
        out.insert(Class::Basic);
    }
    if is_closed(s, sig) {
        out.insert(Class::Closed);
    }
    if is_horn(s, sig) {
        out.insert(Class::Horn);
    }
    if out.is_empty() {
        out.insert(Class::General);
    }
    out
}

/// Basic sentences: propositions under ∧, @, necessity and store.
pub fn is_basic(s: &Sentence) -> bool {
    match s {
        Sentence::Prop(_) => true,
        Sentence::And(a, b) => is_basic(a) && is_basic(b),
        Sentence::At(_, inner) => is_basic(inner),
        Sentence::Nec(_, inner) => is_basic(inner),
        Sentence::Store(_, inner) => is_basic(inner),
        _ => false,
    }
}

/// Closed sentences: closed propositions under ∼, ∧, necessity over unitary
/// actions, and ∀. Their semantics is always a closed subspace.
pub fn is_closed(s: &Sentence, sig: &Signature) -> bool {
    match s {
        Sentence::Prop(p) => sig.is_closed_prop(p),
        Sentence::QNot(inner) => is_closed(inner, sig),
        Sentence::And(a, b) => is_closed(a, sig) && is_closed(b, sig),
        Sentence::Nec(a, inner) => a.is_unitary() && is_closed(inner, sig),
        Sentence::Forall(_, inner) => is_closed(inner, sig),
        _ => false,
    }
}

/// Horn clauses. Implication and the Sasaki hook are recognized from their
/// expanded shapes: ¬(φ ∧ ¬γ) and ∼(ρ₁ ∧ ∼(ρ₁ ∧ ρ₂)).
pub fn is_horn(s: &Sentence, sig: &Signature) -> bool {
    match s {
        Sentence::Prop(_) => true,
        Sentence::And(a, b) => is_horn(a, sig) && is_horn(b, sig),
        Sentence::At(_, g) => is_horn(g, sig),
        Sentence::Nec(_, g) => is_horn(g, sig),
        Sentence::Store(_, g) => is_horn(g, sig),
        Sentence::Forall(_, g) => is_horn(g, sig),
        Sentence::QNot(x) => {
            if let Some((rho1, rho2)) = match_hook_body(x) {
                if is_basic(rho1)
                    && is_closed(rho1, sig)
                    && is_closed(rho2, sig)
                    && is_horn(rho2, sig)
                {
                    return true;
                }
            }
            is_basic(x)
        }
        Sentence::Not(x) => match x.as_ref() {
            Sentence::And(phi, rest) => match rest.as_ref() {
                Sentence::Not(gamma) => is_basic(phi) && is_horn(gamma, sig),
                _ => false,
            },
            _ => false,
        },
        _ => false,
    }
}

/// Matches ρ₁ ∧ ∼(ρ₁ ∧ ρ₂), the body of an expanded Sasaki hook.
fn match_hook_body(x: &Sentence) -> Option<(&Sentence, &Sentence)> {
    if let Sentence::And(rho1, rest) = x {
        if let Sentence::QNot(inner) = rest.as_ref() {
            if let Sentence::And(rho1b, rho2) = inner.as_ref() {
                if rho1.as_ref() == rho1b.as_ref() {
                    return Some((rho1, rho2));
                }
            }
        }
    }
    None
}

/// Decomposes an expanded implication ¬(φ ∧ ¬γ) back into (φ, γ).
pub fn match_implication(s: &Sentence) -> Option<(&Sentence, &Sentence)> {
    if let Sentence::Not(x) = s {
        if let Sentence::And(phi, rest) = x.as_ref() {
            if let Sentence::Not(gamma) = rest.as_ref() {
                return Some((phi, gamma));
            }
        }
    }
    None
}

/// Decomposes an expanded Sasaki hook ∼(ρ₁ ∧ ∼(ρ₁ ∧ ρ₂)) back into (ρ₁, ρ₂).
pub fn match_sasaki(s: &Sentence) -> Option<(&Sentence, &Sentence)> {
    if let Sentence::QNot(x) = s {
        return match_hook_body(x);
    }
    None
}

// ---------------------------------------------------------------------------
// canonical printing
// ---------------------------------------------------------------------------

impl Action {
    // levels: 0 = union, 1 = seq, 2 = star/atom
    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min_level: u8) -> fmt::Result {
        let level = match self {
            Action::Union(..) => 0,
            Action::Seq(..) => 1,
            _ => 2,
        };
        let parens = level < min_level;
        if parens {
            write!(f, "(")?;
        }
        match self {
            Action::Gate(u) => write!(f, "{u}")?,
            Action::Meas(q) => write!(f, "{q}")?,
            Action::Seq(a, b) => {
                a.fmt_prec(f, 2)?;
                write!(f, " ; ")?;
                b.fmt_prec(f, 1)?;
            }
            Action::Union(a, b) => {
                a.fmt_prec(f, 1)?;
                write!(f, " + ")?;
                b.fmt_prec(f, 0)?;
            }
            Action::Star(a) => {
                a.fmt_prec(f, 2)?;
                write!(f, "*")?;
            }
        }
        if parens {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

impl Sentence {
    // levels: 0 = binder scope, 1 = conjunction, 2 = prefix, 3 = atom
    fn level(&self) -> u8 {
        match self {
            Sentence::Store(..) | Sentence::Forall(..) => 0,
            Sentence::And(..) => 1,
            Sentence::Not(..) | Sentence::QNot(..) | Sentence::Nec(..) | Sentence::At(..) => 2,
            Sentence::Prop(_) | Sentence::StateIs(_) => 3,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min_level: u8) -> fmt::Result {
        let parens = self.level() < min_level;
        if parens {
            write!(f, "(")?;
        }
        match self {
            Sentence::Prop(p) => write!(f, "{p}")?,
            Sentence::StateIs(t) => write!(f, "{t}")?,
            Sentence::At(k, s) => {
                write!(f, "@ ")?;
                // the term is printed at atom precedence so `@ t s` re-parses
                match k {
                    Term::Add(..) | Term::Scale(..) => write!(f, "({k})")?,
                    _ => write!(f, "{k}")?,
                }
                write!(f, " ")?;
                s.fmt_prec(f, 2)?;
            }
            Sentence::And(a, b) => {
                a.fmt_prec(f, 2)?;
                write!(f, " /\\ ")?;
                b.fmt_prec(f, 1)?;
            }
            Sentence::Not(s) => {
                write!(f, "!")?;
                s.fmt_prec(f, 2)?;
            }
            Sentence::QNot(s) => {
                write!(f, "~")?;
                s.fmt_prec(f, 2)?;
            }
            Sentence::Nec(a, s) => {
                write!(f, "[{a}] ")?;
                s.fmt_prec(f, 2)?;
            }
            Sentence::Store(z, s) => {
                write!(f, "store {z} . ")?;
                s.fmt_prec(f, 0)?;
            }
            Sentence::Forall(xs, s) => {
                write!(f, "forall")?;
                for x in xs {
                    write!(f, " {x}")?;
                }
                write!(f, " . ")?;
                s.fmt_prec(f, 0)?;
            }
        }
        if parens {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Signature {
        let mut s = Signature::new();
        s.gates.insert("u".into());
        s.gates.insert("v".into());
        s.measurements.insert("q".into());
        s.props.insert("p".into());
        s.props.insert("r1".into());
        s.props.insert("r2".into());
        s.closed_props.insert("r1".into());
        s.closed_props.insert("r2".into());
        s
    }

    fn classes(s: &Sentence) -> Vec<Class> {
        classify(s, &sig()).into_iter().collect()
    }

    #[test]
    fn anchored_conjunction_is_basic_and_horn() {
        let s = Sentence::at(
            Term::Ket("0".into()),
            Sentence::and(
                Sentence::prop("p"),
                Sentence::nec(Action::Gate("u".into()), Sentence::prop("p")),
            ),
        );
        assert_eq!(classes(&s), vec![Class::Basic, Class::Horn]);
    }

    #[test]
    fn quantum_negated_basic_is_horn_only() {
        let s = Sentence::qnot(Sentence::prop("p"));
        assert_eq!(classes(&s), vec![Class::Horn]);
    }

    #[test]
    fn sasaki_hook_of_closed_props_is_closed_and_horn() {
        let s = Sentence::sasaki(Sentence::prop("r1"), Sentence::prop("r2"));
        assert_eq!(classes(&s), vec![Class::Closed, Class::Horn]);
    }

    #[test]
    fn classical_negation_is_general() {
        let s = Sentence::not(Sentence::prop("p"));
        assert_eq!(classes(&s), vec![Class::General]);
    }

    #[test]
    fn implication_with_basic_body_is_horn() {
        let s = Sentence::implies(
            Sentence::at(Term::Var("x".into()), Sentence::prop("p")),
            Sentence::at(
                Term::apply("u", Term::Var("x".into())),
                Sentence::prop("p"),
            ),
        );
        assert!(is_horn(&s, &sig()));
        let closed = Sentence::forall(vec!["x".into()], s);
        assert!(is_horn(&closed, &sig()));
    }

    #[test]
    fn unitary_actions_reject_measurements() {
        let a = Action::star(Action::seq(Action::Gate("u".into()), Action::Gate("v".into())));
        assert!(a.is_unitary());
        let b = Action::seq(Action::Gate("u".into()), Action::Meas("q".into()));
        assert!(!b.is_unitary());
        let teleport_union = Action::union(
            Action::seq(Action::Gate("u".into()), Action::Meas("q".into())),
            Action::Gate("v".into()),
        );
        assert!(!teleport_union.is_unitary());
    }

    #[test]
    fn closed_grammar_requires_unitary_actions() {
        let closed = Sentence::nec(Action::Gate("u".into()), Sentence::prop("r1"));
        assert!(is_closed(&closed, &sig()));
        let not_closed = Sentence::nec(Action::Meas("q".into()), Sentence::prop("r1"));
        assert!(!is_closed(&not_closed, &sig()));
    }

    #[test]
    fn substitution_respects_binders() {
        let mut theta = BTreeMap::new();
        theta.insert("x".to_string(), Term::Ket("0".into()));
        let s = Sentence::at(Term::Var("x".into()), Sentence::prop("p"));
        assert_eq!(
            s.substitute(&theta),
            Sentence::at(Term::Ket("0".into()), Sentence::prop("p"))
        );
        // bound occurrences stay untouched
        let bound = Sentence::store("x", Sentence::at(Term::Var("x".into()), Sentence::prop("p")));
        assert_eq!(bound.substitute(&theta), bound);
    }

    #[test]
    fn substitution_renames_to_avoid_capture() {
        // θ(x) = u(z); substituting under `store z` must rename the binder
        let mut theta = BTreeMap::new();
        theta.insert("x".to_string(), Term::apply("u", Term::Var("z".into())));
        let s = Sentence::store(
            "z",
            Sentence::and(
                Sentence::at(Term::Var("x".into()), Sentence::prop("p")),
                Sentence::at(Term::Var("z".into()), Sentence::prop("p")),
            ),
        );
        let out = s.substitute(&theta);
        match &out {
            Sentence::Store(z1, body) => {
                assert_ne!(z1, "z");
                let expected = Sentence::and(
                    Sentence::at(Term::apply("u", Term::Var("z".into())), Sentence::prop("p")),
                    Sentence::at(Term::Var(z1.clone()), Sentence::prop("p")),
                );
                assert_eq!(body.as_ref(), &expected);
            }
            other => panic!("expected store, got {other:?}"),
        }
    }

    #[test]
    fn printing_examples() {
        let s = Sentence::nec(
            Action::union(Action::Gate("u".into()), Action::Gate("v".into())),
            Sentence::prop("p"),
        );
        assert_eq!(s.to_string(), "[u + v] p");
        let seq_star = Action::seq(Action::Gate("u".into()), Action::star(Action::Gate("v".into())));
        assert_eq!(seq_star.to_string(), "u ; v*");
        let grouped = Action::star(Action::seq(Action::Gate("u".into()), Action::Gate("v".into())));
        assert_eq!(grouped.to_string(), "(u ; v)*");
    }

    #[test]
    fn until_expands_with_fresh_variables() {
        let gamma = Sentence::at(Term::Var("x".into()), Sentence::prop("p"));
        let psi = Sentence::prop("p");
        let s = Sentence::until(Action::Gate("u".into()), gamma, psi);
        // outer binder must avoid the x already used in gamma
        match &s {
            Sentence::Store(z, _) => assert_eq!(z, "x1"),
            other => panic!("expected store, got {other:?}"),
        }
        assert!(s.free_vars().contains("x"));
    }
}
