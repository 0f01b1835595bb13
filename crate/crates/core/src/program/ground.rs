//! Herbrand grounding.

use std::collections::{BTreeMap, BTreeSet};

use crate::program::ast::{Atom, BodyItem, Literal, Program, Rule, Term};
use crate::program::ProgramError;

/// A variable-free program with an index from head literals to rules.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GroundProgram {
    rules: Vec<Rule>,
    index: BTreeMap<Literal, Vec<usize>>,
}

impl GroundProgram {
    /// Wraps already-ground rules. Fails on the first rule with a variable.
    pub fn new(rules: Vec<Rule>) -> Result<Self, ProgramError> {
        if let Some(rule) = rules.iter().find(|r| !r.is_ground()) {
            return Err(ProgramError::NotGround {
                rule: rule.to_string(),
            });
        }
        let mut index: BTreeMap<Literal, Vec<usize>> = BTreeMap::new();
        for (i, rule) in rules.iter().enumerate() {
            index.entry(rule.head.clone()).or_default().push(i);
        }
        Ok(GroundProgram { rules, index })
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Indices of the rules whose head is `lit`, in program order.
    pub fn rules_for(&self, lit: &Literal) -> &[usize] {
        self.index.get(lit).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Head literals in sorted order.
    pub fn heads(&self) -> impl Iterator<Item = &Literal> {
        self.index.keys()
    }

    pub fn has_rules_for(&self, lit: &Literal) -> bool {
        self.index.contains_key(lit)
    }

    /// Every literal mentioned anywhere in the program.
    pub fn literals(&self) -> BTreeSet<Literal> {
        self.rules
            .iter()
            .flat_map(|r| std::iter::once(&r.head).chain(r.literals()))
            .cloned()
            .collect()
    }

    /// Literals occurring under `not`.
    pub fn naf_literals(&self) -> BTreeSet<Literal> {
        self.rules.iter().flat_map(|r| r.naf.iter()).cloned().collect()
    }

    pub fn has_naf(&self) -> bool {
        self.rules.iter().any(|r| !r.naf.is_empty())
    }

    pub fn into_program(self) -> Program {
        Program::new(self.rules)
    }
}

fn vars_of<'a>(lit: &'a Literal, out: &mut BTreeSet<&'a str>) {
    for t in &lit.atom.args {
        if let Term::Var(v) = t {
            out.insert(v.as_str());
        }
    }
}

/// Every variable of the head or of a naf-literal must occur in a positive
/// body literal.
pub fn check_safety(rule: &Rule) -> Result<(), ProgramError> {
    let mut bound = BTreeSet::new();
    for lit in rule.positive_literals() {
        vars_of(lit, &mut bound);
    }
    let mut needed = BTreeSet::new();
    vars_of(&rule.head, &mut needed);
    for lit in &rule.naf {
        vars_of(lit, &mut needed);
    }
    match needed.difference(&bound).next() {
        Some(var) => Err(ProgramError::UnsafeRule {
            rule: rule.to_string(),
            variable: (*var).to_string(),
        }),
        None => Ok(()),
    }
}

fn substitute_lit(lit: &Literal, binding: &BTreeMap<&str, &Term>) -> Literal {
    let args = lit
        .atom
        .args
        .iter()
        .map(|t| match t {
            Term::Var(v) => (*binding[v.as_str()]).clone(),
            other => other.clone(),
        })
        .collect();
    Literal {
        atom: Atom {
            predicate: lit.atom.predicate.clone(),
            args,
        },
        negated: lit.negated,
    }
}

fn substitute(rule: &Rule, binding: &BTreeMap<&str, &Term>) -> Rule {
    Rule {
        label: rule.label.clone(),
        head: substitute_lit(&rule.head, binding),
        body: rule
            .body
            .iter()
            .map(|b| match b {
                BodyItem::Lit(l) => BodyItem::Lit(substitute_lit(l, binding)),
                c @ BodyItem::Const(_) => c.clone(),
            })
            .collect(),
        naf: rule.naf.iter().map(|l| substitute_lit(l, binding)).collect(),
        weight: rule.weight,
    }
}

/// Constants of the program: the Herbrand universe.
pub fn universe(program: &Program) -> BTreeSet<Term> {
    program
        .rules
        .iter()
        .flat_map(|r| std::iter::once(&r.head).chain(r.literals()))
        .flat_map(|l| l.atom.args.iter())
        .filter(|t| !t.is_var())
        .cloned()
        .collect()
}

/// Instantiates every rule over the program's constants. Rules keep their
/// order; instances of one rule follow the universe's sort order.
pub fn ground(program: &Program) -> Result<GroundProgram, ProgramError> {
    for rule in &program.rules {
        check_safety(rule)?;
    }
    let universe: Vec<Term> = universe(program).into_iter().collect();
    let mut out = Vec::new();
    for rule in &program.rules {
        let mut vars = BTreeSet::new();
        vars_of(&rule.head, &mut vars);
        for lit in rule.literals() {
            vars_of(lit, &mut vars);
        }
        let vars: Vec<&str> = vars.into_iter().collect();
        if vars.is_empty() {
            out.push(rule.clone());
            continue;
        }
        if universe.is_empty() {
            continue;
        }
        // odometer over universe^vars
        let mut digits = vec![0usize; vars.len()];
        'instances: loop {
            let binding: BTreeMap<&str, &Term> = vars
                .iter()
                .zip(digits.iter())
                .map(|(v, &i)| (*v, &universe[i]))
                .collect();
            out.push(substitute(rule, &binding));
            for slot in digits.iter_mut().rev() {
                *slot += 1;
                if *slot < universe.len() {
                    continue 'instances;
                }
                *slot = 0;
            }
            break;
        }
    }
    GroundProgram::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::program::parse;

    #[test]
    fn enumerates_instances() {
        let p = parse("q(a). q(b). p(X) <- q(X).").unwrap();
        let g = ground(&p).unwrap();
        let rendered: Vec<String> = g.rules().iter().map(ToString::to_string).collect();
        assert_eq!(rendered, ["q(a).", "q(b).", "p(a) <- q(a).", "p(b) <- q(b)."]);
    }

    #[test]
    fn two_variables() {
        let p = parse("e(a,b). e(b,c). t(X,Y) <- e(X,Y), not e(Y,X).").unwrap();
        let g = ground(&p).unwrap();
        assert_eq!(g.len(), 2 + 9);
    }

    #[test]
    fn propositional_is_identity() {
        let p = parse("a <- b, not c. [ifn(0.2,0.9)]\nb. -c <- a.").unwrap();
        let g = ground(&p).unwrap();
        assert_eq!(g.rules(), p.rules.as_slice());
    }

    #[test]
    fn unsafe_rules_name_the_variable() {
        let p = parse("p(X) <- not q(X).").unwrap();
        match ground(&p) {
            Err(ProgramError::UnsafeRule { variable, .. }) => assert_eq!(variable, "X"),
            other => panic!("unexpected {other:?}"),
        }
        let p = parse("p(X) <- q(Y).").unwrap();
        assert!(matches!(ground(&p), Err(ProgramError::UnsafeRule { .. })));
    }

    #[test]
    fn index_agrees_with_scan() {
        let p = parse("q(a). q(b). p(X) <- q(X). p(a) <- r. -p(b).").unwrap();
        let g = ground(&p).unwrap();
        for lit in g.literals() {
            let scanned: Vec<usize> = g
                .rules()
                .iter()
                .enumerate()
                .filter(|(_, r)| r.head == lit)
                .map(|(i, _)| i)
                .collect();
            assert_eq!(g.rules_for(&lit), scanned.as_slice());
        }
        for rule in g.rules() {
            assert!(g.has_rules_for(&rule.head));
        }
    }

    #[test]
    fn rejects_non_ground_rules() {
        let p = parse("p(X) <- q(X).").unwrap();
        assert!(matches!(
            GroundProgram::new(p.rules),
            Err(ProgramError::NotGround { .. })
        ));
    }
}
