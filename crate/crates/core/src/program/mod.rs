//! Weighted rule programs: syntax tree, text parser and grounder.

mod ast;
mod ground;
pub(crate) mod parser;

use thiserror::Error;

use crate::truth::TruthError;

pub use ast::{Atom, BodyItem, Literal, Program, Rule, Term};
pub use ground::{check_safety, ground, universe, GroundProgram};
pub use parser::{parse, parse_truth};

/// A ground rule; shares the representation of [`Rule`].
pub type GroundRule = Rule;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProgramError {
    #[error("syntax error at {line}:{col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("invalid truth value at {line}:{col}: {reason}")]
    Domain {
        line: usize,
        col: usize,
        reason: TruthError,
    },
    #[error("unsafe rule `{rule}`: variable {variable} does not occur in a positive body literal")]
    UnsafeRule { rule: String, variable: String },
    #[error("rule `{rule}` is not ground")]
    NotGround { rule: String },
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::truth::strategies;
    use proptest::prelude::*;

    fn ident() -> impl Strategy<Value = String> {
        prop::sample::select(vec!["a", "b", "p", "q", "cin_on", "x1"]).prop_map(String::from)
    }

    fn term() -> impl Strategy<Value = Term> {
        prop_oneof![
            prop::sample::select(vec!["X", "Y", "Z1"]).prop_map(|v| Term::Var(v.into())),
            ident().prop_map(Term::Const),
            (0u32..50).prop_map(|n| Term::Const(n.to_string())),
            strategies::any_value().prop_map(Term::Truth),
        ]
    }

    fn literal() -> impl Strategy<Value = Literal> {
        (ident(), prop::collection::vec(term(), 0..3), any::<bool>()).prop_map(
            |(p, args, negated)| Literal {
                atom: Atom::new(p, args),
                negated,
            },
        )
    }

    fn rule() -> impl Strategy<Value = Rule> {
        let item = prop_oneof![
            3 => literal().prop_map(BodyItem::Lit),
            1 => strategies::any_value().prop_map(BodyItem::Const),
        ];
        (
            prop::option::of(prop::sample::select(vec!["r1", "r2"])),
            literal(),
            prop::collection::vec(item, 0..3),
            prop::collection::vec(literal(), 0..2),
            strategies::any_value(),
        )
            .prop_map(|(label, head, body, naf, weight)| Rule {
                label: label.map(String::from),
                head,
                body,
                naf,
                weight,
            })
    }

    proptest! {
        #[test]
        fn render_then_parse_is_stable(rules in prop::collection::vec(rule(), 0..5)) {
            let program = Program::new(rules);
            let text = program.to_string();
            let reparsed = parse(&text).unwrap();
            prop_assert_eq!(&reparsed, &program);
            prop_assert_eq!(reparsed.to_string(), text);
        }
    }
}
