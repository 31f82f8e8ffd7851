//! Concrete quantum models and ground-term evaluation.
//!
//! A model fixes the ambient dimension, interprets every gate symbol as a
//! unitary matrix, every measurement symbol as a closed subspace, names some
//! vectors and scalars, and assigns each propositional symbol an extent.

use crate::extent::{Extent, ExtentKind};
use crate::linalg::{C64, CMatrix, CVector, DimensionMismatch};
use crate::signature::Signature;
use crate::subspace::Subspace;
use crate::term::{Scalar, Term};
use std::collections::BTreeMap;

#[derive(Debug, Clone)]
pub struct Model {
    pub dim: usize,
    pub gates: BTreeMap<String, CMatrix>,
    pub measurements: BTreeMap<String, Subspace>,
    pub vector_consts: BTreeMap<String, CVector>,
    pub scalar_consts: BTreeMap<String, C64>,
    pub valuation: BTreeMap<String, Extent>,
}

impl Model {
    pub fn new(dim: usize) -> Model {
        assert!(dim > 0);
        Model {
            dim,
            gates: BTreeMap::new(),
            measurements: BTreeMap::new(),
            vector_consts: BTreeMap::new(),
            scalar_consts: BTreeMap::new(),
            valuation: BTreeMap::new(),
        }
    }

    /// Ensures every proposition of the signature has a valuation entry,
    /// defaulting to the empty extent.
    pub fn fill_valuation(&mut self, sig: &Signature) {
        for p in &sig.props {
            self.valuation
                .entry(p.clone())
                .or_insert_with(|| Extent::empty(self.dim));
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    GateNotUnitary(String),
    MeasurementNotProjector(String),
    ClosedPropNotSubspace(String),
    Uninterpreted { kind: &'static str, name: String },
    WrongDimension { kind: &'static str, name: String },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::GateNotUnitary(u) => write!(f, "gate {u} is not unitary"),
            Violation::MeasurementNotProjector(q) => {
                write!(f, "measurement {q} does not name a valid subspace")
            }
            Violation::ClosedPropNotSubspace(r) => {
                write!(f, "closed proposition {r} has a non-subspace extent")
            }
            Violation::Uninterpreted { kind, name } => {
                write!(f, "{kind} {name} is not interpreted")
            }
            Violation::WrongDimension { kind, name } => {
                write!(f, "{kind} {name} has the wrong dimension")
            }
        }
    }
}

/// Checks a model against a signature. Returns all violations found; an empty
/// list means the model is a valid quantum model for the signature.
pub fn validate_model(sig: &Signature, m: &Model, eps: f64) -> Vec<Violation> {
    let mut out = Vec::new();
    for u in &sig.gates {
        match m.gates.get(u) {
            None => out.push(Violation::Uninterpreted { kind: "gate", name: u.clone() }),
            Some(mat) if mat.dim() != m.dim => {
                out.push(Violation::WrongDimension { kind: "gate", name: u.clone() })
            }
            Some(mat) if !mat.is_unitary(eps.max(1e-9) * 1e3) => {
                out.push(Violation::GateNotUnitary(u.clone()))
            }
            _ => {}
        }
    }
    for q in &sig.measurements {
        match m.measurements.get(q) {
            None => out.push(Violation::Uninterpreted { kind: "measurement", name: q.clone() }),
            Some(s) if s.dim() != m.dim => {
                out.push(Violation::WrongDimension { kind: "measurement", name: q.clone() })
            }
            Some(s) if s.validate(eps.max(1e-9) * 1e3).is_err() => {
                out.push(Violation::MeasurementNotProjector(q.clone()))
            }
            _ => {}
        }
    }
    for c in &sig.vector_consts {
        match m.vector_consts.get(c) {
            None => out.push(Violation::Uninterpreted { kind: "vector constant", name: c.clone() }),
            Some(v) if v.dim() != m.dim => {
                out.push(Violation::WrongDimension { kind: "vector constant", name: c.clone() })
            }
            _ => {}
        }
    }
    for c in &sig.scalar_consts {
        if !m.scalar_consts.contains_key(c) {
            out.push(Violation::Uninterpreted { kind: "scalar constant", name: c.clone() });
        }
    }
    for p in &sig.props {
        match m.valuation.get(p) {
            None => out.push(Violation::Uninterpreted { kind: "proposition", name: p.clone() }),
            Some(e) => {
                if e.dim() != m.dim {
                    out.push(Violation::WrongDimension { kind: "proposition", name: p.clone() });
                } else if sig.is_closed_prop(p)
                    && !matches!(e.kind(), ExtentKind::Subspace | ExtentKind::All)
                {
                    out.push(Violation::ClosedPropNotSubspace(p.clone()));
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TermError {
    #[error("unbound variable {0}")]
    UnboundVariable(String),
    #[error("symbol {0} is not interpreted in the model")]
    UnknownSymbol(String),
    #[error("measurement {symbol} is undefined at its argument (probability 0)")]
    UndefinedMeasurement { symbol: String },
    #[error("division by zero in a scalar term")]
    DivisionByZero,
    #[error(transparent)]
    Dimension(#[from] DimensionMismatch),
}

/// Variable environment for term evaluation: store-bound and query variables
/// map to concrete vectors.
pub type Bindings = BTreeMap<String, CVector>;

impl Model {
    /// Evaluates a vector-sorted term.
    pub fn eval_term(
        &self,
        t: &Term,
        bindings: &Bindings,
        eps: f64,
    ) -> Result<CVector, TermError> {
        match t {
            Term::Const(name) => self
                .vector_consts
                .get(name)
                .cloned()
                .ok_or_else(|| TermError::UnknownSymbol(name.clone())),
            Term::Lit(entries) => {
                let v = CVector::new(entries.clone());
                if v.dim() != self.dim {
                    return Err(DimensionMismatch { expected: self.dim, got: v.dim() }.into());
                }
                Ok(v)
            }
            Term::Ket(bits) => {
                let v = CVector::ket(bits);
                if v.dim() != self.dim {
                    return Err(DimensionMismatch { expected: self.dim, got: v.dim() }.into());
                }
                Ok(v)
            }
            Term::Var(x) => bindings
                .get(x)
                .cloned()
                .ok_or_else(|| TermError::UnboundVariable(x.clone())),
            Term::Origin => Ok(CVector::zero(self.dim)),
            Term::Apply(sym, inner) => {
                let arg = self.eval_term(inner, bindings, eps)?;
                if let Some(u) = self.gates.get(sym) {
                    Ok(u.mul_vec(&arg)?)
                } else if let Some(x) = self.measurements.get(sym) {
                    x.measure(&arg, eps)?
                        .ok_or_else(|| TermError::UndefinedMeasurement { symbol: sym.clone() })
                } else {
                    Err(TermError::UnknownSymbol(sym.clone()))
                }
            }
            Term::Add(a, b) => {
                let va = self.eval_term(a, bindings, eps)?;
                let vb = self.eval_term(b, bindings, eps)?;
                Ok(va.add(&vb)?)
            }
            Term::Scale(s, inner) => {
                let c = self.eval_scalar(s, bindings, eps)?;
                Ok(self.eval_term(inner, bindings, eps)?.scale(c))
            }
        }
    }

    /// Evaluates a scalar-sorted term.
    pub fn eval_scalar(
        &self,
        s: &Scalar,
        bindings: &Bindings,
        eps: f64,
    ) -> Result<C64, TermError> {
        match s {
            Scalar::Lit(c) => Ok(*c),
            Scalar::Const(name) => self
                .scalar_consts
                .get(name)
                .copied()
                .ok_or_else(|| TermError::UnknownSymbol(name.clone())),
            Scalar::Add(a, b) => {
                Ok(self.eval_scalar(a, bindings, eps)? + self.eval_scalar(b, bindings, eps)?)
            }
            Scalar::Sub(a, b) => {
                Ok(self.eval_scalar(a, bindings, eps)? - self.eval_scalar(b, bindings, eps)?)
            }
            Scalar::Mul(a, b) => {
                Ok(self.eval_scalar(a, bindings, eps)? * self.eval_scalar(b, bindings, eps)?)
            }
            Scalar::Div(a, b) => {
                let denom = self.eval_scalar(b, bindings, eps)?;
                if denom.norm() == 0.0 {
                    return Err(TermError::DivisionByZero);
                }
                Ok(self.eval_scalar(a, bindings, eps)? / denom)
            }
            Scalar::Neg(a) => Ok(-self.eval_scalar(a, bindings, eps)?),
            Scalar::Sqrt(a) => Ok(self.eval_scalar(a, bindings, eps)?.sqrt()),
            Scalar::Inner(a, b) => {
                let va = self.eval_term(a, bindings, eps)?;
                let vb = self.eval_term(b, bindings, eps)?;
                Ok(va.inner(&vb)?)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::DEFAULT_EPSILON as EPS;
    use crate::models;

    #[test]
    fn superdense_model_validates() {
        let (sig, m) = models::superdense();
        assert_eq!(validate_model(&sig, &m, EPS), Vec::new());
    }

    #[test]
    fn non_unitary_gate_is_reported() {
        let (sig, mut m) = models::superdense();
        m.gates.insert(
            "u0".into(),
            CMatrix::from_rows_real(&[
                &[1.0, 0.0, 0.0, 0.0],
                &[0.0, 0.0, 0.0, 0.0],
                &[0.0, 0.0, 0.0, 0.0],
                &[0.0, 0.0, 0.0, 0.0],
            ]),
        );
        let violations = validate_model(&sig, &m, EPS);
        assert!(violations.contains(&Violation::GateNotUnitary("u0".into())));
    }

    #[test]
    fn closed_prop_with_finite_extent_is_reported() {
        let (mut sig, mut m) = models::superdense();
        sig.closed_props.insert("p00".into());
        // p00's extent is the finite set {|00⟩}, not a subspace
        let violations = validate_model(&sig, &m, EPS);
        assert!(violations.contains(&Violation::ClosedPropNotSubspace("p00".into())));
        // repair it with the closed span
        let span = m.valuation["p00"].closed_span(EPS);
        m.valuation.insert("p00".into(), Extent::subspace(span));
        assert!(validate_model(&sig, &m, EPS).is_empty());
    }

    #[test]
    fn superdense_decoding_terms_evaluate_to_basis_states() {
        // u1(u0(d_j(s_i(bell00)))) = |ij⟩ for all four bit pairs
        let (_, m) = models::superdense();
        let none = Bindings::new();
        for (i, j) in [(0, 1), (0, 0), (1, 0), (1, 1)] {
            let t = Term::apply(
                "u1",
                Term::apply(
                    "u0",
                    Term::apply(
                        format!("d{j}"),
                        Term::apply(format!("s{i}"), Term::Const("bell00".into())),
                    ),
                ),
            );
            let v = m.eval_term(&t, &none, EPS).unwrap();
            assert!(
                v.approx_eq(&CVector::ket(&format!("{i}{j}")), 1e-9),
                "decoded ({i},{j}) to {v}"
            );
        }
    }

    #[test]
    fn origin_and_inner_products_evaluate() {
        let (_, m) = models::superdense();
        let none = Bindings::new();
        let zero = m.eval_term(&Term::Origin, &none, EPS).unwrap();
        assert!(zero.is_zero(0.0));
        let ip = m
            .eval_scalar(
                &Scalar::Inner(
                    Box::new(Term::Ket("00".into())),
                    Box::new(Term::Ket("01".into())),
                ),
                &none,
                EPS,
            )
            .unwrap();
        assert_eq!(ip, C64::new(0.0, 0.0));
    }

    #[test]
    fn measurement_terms_can_be_undefined() {
        let (_, m) = models::teleport(C64::new(1.0, 0.0), C64::new(0.0, 0.0));
        let none = Bindings::new();
        // q11 applied to |000⟩ has probability 0
        let t = Term::apply("q11", Term::Ket("000".into()));
        match m.eval_term(&t, &none, EPS) {
            Err(TermError::UndefinedMeasurement { symbol }) => assert_eq!(symbol, "q11"),
            other => panic!("expected undefined measurement, got {other:?}"),
        }
    }
}
