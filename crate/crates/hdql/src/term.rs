//! Vector- and scalar-sorted terms.
//!
//! Terms of sort vector are built from named constants, vector literals
//! (every literal denotes its own constant), variables, the origin, gate and
//! measurement application, sums and scalar multiples. Scalar terms cover the
//! arithmetic needed by the surface syntax, including inner products.

use crate::linalg::{fmt_complex, C64};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Term {
    /// Named constant of sort vector.
    Const(String),
    /// A vector literal; it stands for itself as a constant.
    Lit(Vec<C64>),
    /// Basis state written `ket(bits)`.
    Ket(String),
    Var(String),
    /// The origin vector 0.
    Origin,
    /// Gate or measurement symbol applied to a vector term.
    Apply(String, Box<Term>),
    Add(Box<Term>, Box<Term>),
    Scale(Scalar, Box<Term>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Lit(C64),
    Const(String),
    Add(Box<Scalar>, Box<Scalar>),
    Sub(Box<Scalar>, Box<Scalar>),
    Mul(Box<Scalar>, Box<Scalar>),
    Div(Box<Scalar>, Box<Scalar>),
    Neg(Box<Scalar>),
    Sqrt(Box<Scalar>),
    /// Inner product of two vector terms.
    Inner(Box<Term>, Box<Term>),
}

impl Term {
    pub fn apply(sym: impl Into<String>, t: Term) -> Term {
        Term::Apply(sym.into(), Box::new(t))
    }

    pub fn add(a: Term, b: Term) -> Term {
        Term::Add(Box::new(a), Box::new(b))
    }

    pub fn scale(s: Scalar, t: Term) -> Term {
        Term::Scale(s, Box::new(t))
    }

    /// Depth used by the ground-term universe: leaves are 1, each applied
    /// operation adds 1.
    pub fn depth(&self) -> usize {
        match self {
            Term::Const(_) | Term::Lit(_) | Term::Ket(_) | Term::Var(_) | Term::Origin => 1,
            Term::Apply(_, t) | Term::Scale(_, t) => 1 + t.depth(),
            Term::Add(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    pub fn is_ground(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(x) => {
                out.insert(x.clone());
            }
            Term::Apply(_, t) => t.collect_vars(out),
            Term::Add(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Term::Scale(s, t) => {
                s.collect_vars(out);
                t.collect_vars(out);
            }
            _ => {}
        }
    }

    /// Replaces free variables by terms. Terms bind nothing, so no capture is
    /// possible at this level.
    pub fn substitute(&self, subst: &dyn Fn(&str) -> Option<Term>) -> Term {
        match self {
            Term::Var(x) => subst(x).unwrap_or_else(|| self.clone()),
            Term::Apply(sym, t) => Term::apply(sym.clone(), t.substitute(subst)),
            Term::Add(a, b) => Term::add(a.substitute(subst), b.substitute(subst)),
            Term::Scale(s, t) => Term::scale(s.substitute(subst), t.substitute(subst)),
            _ => self.clone(),
        }
    }

    /// Collects every vector literal occurring in the term.
    pub fn collect_literals(&self, out: &mut Vec<Term>) {
        match self {
            Term::Lit(_) | Term::Ket(_) => out.push(self.clone()),
            Term::Apply(_, t) => t.collect_literals(out),
            Term::Add(a, b) => {
                a.collect_literals(out);
                b.collect_literals(out);
            }
            Term::Scale(s, t) => {
                s.collect_vector_literals(out);
                t.collect_literals(out);
            }
            _ => {}
        }
    }

    /// Collects scalar subexpressions used as multipliers.
    pub fn collect_scalars(&self, out: &mut Vec<Scalar>) {
        match self {
            Term::Apply(_, t) => t.collect_scalars(out),
            Term::Add(a, b) => {
                a.collect_scalars(out);
                b.collect_scalars(out);
            }
            Term::Scale(s, t) => {
                out.push(s.clone());
                t.collect_scalars(out);
            }
            _ => {}
        }
    }
}

impl Scalar {
    pub fn real(x: f64) -> Scalar {
        Scalar::Lit(C64::new(x, 0.0))
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Scalar::Add(a, b) | Scalar::Sub(a, b) | Scalar::Mul(a, b) | Scalar::Div(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Scalar::Neg(a) | Scalar::Sqrt(a) => a.collect_vars(out),
            Scalar::Inner(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            _ => {}
        }
    }

    fn substitute(&self, subst: &dyn Fn(&str) -> Option<Term>) -> Scalar {
        match self {
            Scalar::Add(a, b) => Scalar::Add(Box::new(a.substitute(subst)), Box::new(b.substitute(subst))),
            Scalar::Sub(a, b) => Scalar::Sub(Box::new(a.substitute(subst)), Box::new(b.substitute(subst))),
            Scalar::Mul(a, b) => Scalar::Mul(Box::new(a.substitute(subst)), Box::new(b.substitute(subst))),
            Scalar::Div(a, b) => Scalar::Div(Box::new(a.substitute(subst)), Box::new(b.substitute(subst))),
            Scalar::Neg(a) => Scalar::Neg(Box::new(a.substitute(subst))),
            Scalar::Sqrt(a) => Scalar::Sqrt(Box::new(a.substitute(subst))),
            Scalar::Inner(a, b) => {
                Scalar::Inner(Box::new(a.substitute(subst)), Box::new(b.substitute(subst)))
            }
            _ => self.clone(),
        }
    }

    fn collect_vector_literals(&self, out: &mut Vec<Term>) {
        match self {
            Scalar::Add(a, b) | Scalar::Sub(a, b) | Scalar::Mul(a, b) | Scalar::Div(a, b) => {
                a.collect_vector_literals(out);
                b.collect_vector_literals(out);
            }
            Scalar::Neg(a) | Scalar::Sqrt(a) => a.collect_vector_literals(out),
            Scalar::Inner(a, b) => {
                a.collect_literals(out);
                b.collect_literals(out);
            }
            _ => {}
        }
    }
}

// ---------------------------------------------------------------------------
// canonical printing
// ---------------------------------------------------------------------------

impl Term {
    // levels: 0 = sum, 1 = scalar multiple, 2 = atom
    fn level(&self) -> u8 {
        match self {
            Term::Add(..) => 0,
            Term::Scale(..) => 1,
            _ => 2,
        }
    }

    pub(crate) fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min_level: u8) -> fmt::Result {
        let parens = self.level() < min_level;
        if parens {
            write!(f, "(")?;
        }
        match self {
            Term::Const(name) | Term::Var(name) => write!(f, "{name}")?,
            Term::Ket(bits) => write!(f, "ket({bits})")?,
            Term::Origin => write!(f, "0")?,
            Term::Lit(entries) => {
                write!(f, "(")?;
                for (i, e) in entries.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{}", fmt_complex(*e))?;
                }
                if entries.len() == 1 {
                    write!(f, ",")?;
                }
                write!(f, ")")?;
            }
            Term::Apply(sym, t) => {
                write!(f, "{sym}(")?;
                t.fmt_prec(f, 0)?;
                write!(f, ")")?;
            }
            Term::Add(a, b) => {
                a.fmt_prec(f, 0)?;
                write!(f, " + ")?;
                b.fmt_prec(f, 1)?;
            }
            Term::Scale(s, t) => {
                s.fmt_prec(f, 1)?;
                write!(f, " * ")?;
                t.fmt_prec(f, 2)?;
            }
        }
        if parens {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

impl Scalar {
    // levels: 0 = additive, 1 = multiplicative/negation, 2 = atom; arithmetic
    // prints left-associatively, matching the parser's folds
    fn level(&self) -> u8 {
        match self {
            Scalar::Add(..) | Scalar::Sub(..) => 0,
            Scalar::Mul(..) | Scalar::Div(..) => 1,
            Scalar::Neg(..) => 1,
            Scalar::Lit(c) => {
                // a bare negative literal re-lexes as negation
                if (c.re == 0.0) != (c.im == 0.0) && (c.re < 0.0 || c.im < 0.0) {
                    1
                } else {
                    2
                }
            }
            _ => 2,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min_level: u8) -> fmt::Result {
        let parens = self.level() < min_level;
        if parens {
            write!(f, "(")?;
        }
        match self {
            Scalar::Lit(c) => {
                // a literal with both parts needs a self-delimiting spelling,
                // otherwise it would re-lex as an addition
                if c.re != 0.0 && c.im != 0.0 {
                    write!(f, "complex({}, {})", fmt_f64(c.re), fmt_f64(c.im))?;
                } else {
                    write!(f, "{}", fmt_complex(*c))?;
                }
            }
            Scalar::Const(name) => write!(f, "{name}")?,
            Scalar::Add(a, b) => {
                a.fmt_prec(f, 0)?;
                write!(f, " + ")?;
                b.fmt_prec(f, 1)?;
            }
            Scalar::Sub(a, b) => {
                a.fmt_prec(f, 0)?;
                write!(f, " - ")?;
                b.fmt_prec(f, 1)?;
            }
            Scalar::Mul(a, b) => {
                a.fmt_prec(f, 1)?;
                write!(f, " * ")?;
                b.fmt_prec(f, 2)?;
            }
            Scalar::Div(a, b) => {
                a.fmt_prec(f, 1)?;
                write!(f, " / ")?;
                b.fmt_prec(f, 2)?;
            }
            Scalar::Neg(a) => {
                write!(f, "-")?;
                a.fmt_prec(f, 2)?;
            }
            Scalar::Sqrt(a) => {
                write!(f, "sqrt(")?;
                a.fmt_prec(f, 0)?;
                write!(f, ")")?;
            }
            Scalar::Inner(a, b) => {
                write!(f, "<")?;
                a.fmt_prec(f, 0)?;
                write!(f, ", ")?;
                b.fmt_prec(f, 0)?;
                write!(f, ">")?;
            }
        }
        if parens {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

// fmt_f64 is re-exported through linalg; keep a local assertion that the
// shortest representation round-trips, since canonical printing relies on it.
#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f64_shortest_repr_round_trips() {
        use crate::linalg::fmt_f64;
        for x in [1.0 / 3.0, 2.0_f64.sqrt(), 1e-300, 0.1 + 0.2] {
            let s = fmt_f64(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn term_printing_examples() {
        let t = Term::add(
            Term::scale(Scalar::real(2.0), Term::Ket("0".into())),
            Term::apply("u", Term::Var("x".into())),
        );
        assert_eq!(t.to_string(), "2 * ket(0) + u(x)");

        let nested = Term::scale(
            Scalar::Div(Box::new(Scalar::real(1.0)), Box::new(Scalar::Sqrt(Box::new(Scalar::real(2.0))))),
            Term::add(Term::Ket("00".into()), Term::Ket("11".into())),
        );
        assert_eq!(nested.to_string(), "1 / sqrt(2) * (ket(00) + ket(11))");
    }

    #[test]
    fn scalar_printing_examples() {
        let s = Scalar::Mul(
            Box::new(Scalar::Add(Box::new(Scalar::real(1.0)), Box::new(Scalar::real(2.0)))),
            Box::new(Scalar::real(3.0)),
        );
        assert_eq!(s.to_string(), "(1 + 2) * 3");
        assert_eq!(Scalar::Lit(C64::new(0.0, -1.0)).to_string(), "-1i");
        assert_eq!(Scalar::Lit(C64::new(2.0, 1.0)).to_string(), "2 + 1i");
    }

    #[test]
    fn depth_counts_structure() {
        let t = Term::apply("u", Term::apply("u", Term::Ket("0".into())));
        assert_eq!(t.depth(), 3);
        assert_eq!(Term::Origin.depth(), 1);
    }
}
