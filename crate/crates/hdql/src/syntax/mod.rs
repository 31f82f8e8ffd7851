//! Surface syntax: lexer, parser, and parse errors.
//!
//! The printers are the `Display` impls on the AST types; `parse(print(x))`
//! returns a structurally identical AST, and printing is idempotent after one
//! pass.

pub mod lexer;
pub mod parser;

pub use parser::{parse_query_str, parse_sentence_str, parse_spec, parse_term_str};

/// A syntax error with its source position. Renders as `line:col: message`;
/// the CLI prefixes the file name.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sentence::{classify, Action, Class, Sentence};
    use crate::signature::Signature;
    use crate::term::Term;

    fn sig() -> Signature {
        let mut s = Signature::new();
        s.gates.insert("u0".into());
        s.gates.insert("u1".into());
        s.measurements.insert("q00".into());
        s.vector_consts.insert("bell00".into());
        s.scalar_consts.insert("alpha".into());
        s.props.insert("p00".into());
        s.props.insert("p".into());
        s.props.insert("r".into());
        s.closed_props.insert("r".into());
        s
    }

    #[test]
    fn parses_at_sentences() {
        let s = parse_sentence_str("@ ket(00) p00", &sig()).unwrap();
        assert_eq!(
            s,
            Sentence::at(Term::Ket("00".into()), Sentence::prop("p00"))
        );
    }

    #[test]
    fn parses_necessity_with_action_precedence() {
        let s = parse_sentence_str("[u0 ; u1*] p", &sig()).unwrap();
        let expected = Sentence::nec(
            Action::seq(
                Action::Gate("u0".into()),
                Action::star(Action::Gate("u1".into())),
            ),
            Sentence::prop("p"),
        );
        assert_eq!(s, expected);
    }

    #[test]
    fn measurement_symbol_in_prop_position_is_a_sort_error() {
        let err = parse_sentence_str("q00", &sig()).unwrap_err();
        assert!(err.message.contains("measurement"), "{err}");
    }

    #[test]
    fn prefix_binds_tighter_than_infix() {
        let s = parse_sentence_str("[u0] p /\\ r", &sig()).unwrap();
        assert_eq!(
            s,
            Sentence::and(
                Sentence::nec(Action::Gate("u0".into()), Sentence::prop("p")),
                Sentence::prop("r")
            )
        );
    }

    #[test]
    fn infix_is_right_associative() {
        let s = parse_sentence_str("p /\\ r /\\ p00", &sig()).unwrap();
        assert_eq!(
            s,
            Sentence::and(
                Sentence::prop("p"),
                Sentence::and(Sentence::prop("r"), Sentence::prop("p00"))
            )
        );
    }

    #[test]
    fn sugar_expands_to_core_forms() {
        let s = parse_sentence_str("p => r", &sig()).unwrap();
        assert_eq!(s, Sentence::implies(Sentence::prop("p"), Sentence::prop("r")));
        let s = parse_sentence_str("r ~> r", &sig()).unwrap();
        assert_eq!(s, Sentence::sasaki(Sentence::prop("r"), Sentence::prop("r")));
        let s = parse_sentence_str("<u0> p", &sig()).unwrap();
        assert_eq!(s, Sentence::diamond(Action::Gate("u0".into()), Sentence::prop("p")));
        assert_eq!(
            classify(&parse_sentence_str("r ~> r", &sig()).unwrap(), &sig())
                .into_iter()
                .collect::<Vec<_>>(),
            vec![Class::Closed, Class::Horn]
        );
    }

    #[test]
    fn binders_scope_variables() {
        let s = parse_sentence_str("forall x . @ x p => @ u0(x) p", &sig()).unwrap();
        match &s {
            Sentence::Forall(xs, _) => assert_eq!(xs, &vec!["x".to_string()]),
            other => panic!("expected forall, got {other:?}"),
        }
        // unbound variables are rejected
        assert!(parse_sentence_str("@ x p", &sig()).is_err());
    }

    #[test]
    fn terms_parse_with_scalars() {
        let t = parse_term_str("1 / sqrt(2) * (ket(00) + ket(11))", &sig()).unwrap();
        match &t {
            Term::Scale(_, inner) => match inner.as_ref() {
                Term::Add(..) => {}
                other => panic!("expected sum, got {other:?}"),
            },
            other => panic!("expected scale, got {other:?}"),
        }
        let t = parse_term_str("(1, 0, 0, 0)", &sig()).unwrap();
        assert!(matches!(t, Term::Lit(ref es) if es.len() == 4));
        assert_eq!(parse_term_str("0", &sig()).unwrap(), Term::Origin);
        assert_eq!(
            parse_term_str("u1(u0(bell00))", &sig()).unwrap(),
            Term::apply("u1", Term::apply("u0", Term::Const("bell00".into())))
        );
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = parse_sentence_str("p /\\", &sig()).unwrap_err();
        assert_eq!(err.line, 1);
        assert!(err.col >= 4);
        let err = parse_spec("dim 2\nprop p\naxiom nosuch").unwrap_err();
        assert_eq!(err.line, 3);
    }

    #[test]
    fn spec_files_round_trip() {
        let src = "\
dim 4
epsilon 1e-9
vec bell = 1 / sqrt(2) * (ket(00) + ket(11))
gate u0 = CNOT
gate u1 = kron(H, I(2))
meas m = span(ket(00), ket(01))
prop p
closed prop r = span(ket(00))
axiom @ bell [u0 ; u1] p
query at bell exists x . @ x p
";
        let f = crate::syntax::parse_spec(src).unwrap();
        let printed = f.to_string();
        let f2 = crate::syntax::parse_spec(&printed).unwrap();
        assert_eq!(f, f2);
        // printing is idempotent after one pass
        assert_eq!(printed, f2.to_string());
    }

    #[test]
    fn missing_dim_is_reported() {
        let err = parse_spec("").unwrap_err();
        assert!(err.message.contains("missing dimension"), "{err}");
        let err = parse_spec("prop p").unwrap_err();
        assert!(err.message.contains("missing dimension"), "{err}");
    }

    #[test]
    fn until_parses_and_expands() {
        let s = parse_sentence_str("until(u0, p, r)", &sig()).unwrap();
        assert!(matches!(s, Sentence::Store(..)));
        // round-trips through the printer in expanded form
        let printed = s.to_string();
        let back = parse_sentence_str(&printed, &sig()).unwrap();
        assert_eq!(s, back);
    }
}
