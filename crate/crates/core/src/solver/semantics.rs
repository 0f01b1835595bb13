//! Consistency, satisfaction, supportedness, reduct and the k-minimal
//! supported model of a positive program.

use std::cmp::Ordering;

use crate::connectives::{conj, disj, kagg_tol, naf, negate};
use crate::measures::Measure;
use crate::program::{Atom, BodyItem, GroundProgram, GroundRule, Literal};
use crate::solver::{FixpointError, Interpretation, SolverConfig, Status};
use crate::truth::FuzzyTruth;

/// First atom `a` whose literals `a` and `-a` are both assigned, equally
/// uncertain, and not complementary in truth.
pub fn is_inconsistent(i: &Interpretation, tol: f64) -> Option<Atom> {
    i.iter()
        .filter(|(lit, _)| !lit.negated)
        .find_map(|(lit, value)| {
            let other = i.assigned(&lit.complement())?;
            let (m, n) = (Measure::of(value), Measure::of(&other));
            let clash = (m.k - n.k).abs() <= tol && (m.t - (1.0 - n.t)).abs() > tol;
            clash.then(|| lit.atom.clone())
        })
}

/// Body value of `rule` under `i`, conjoined with the rule weight. Body
/// elements fold left to right: positive literals and constants in written
/// order, then naf-literals.
pub fn eval_body(i: &Interpretation, rule: &GroundRule) -> FuzzyTruth {
    let positive = rule.body.iter().map(|item| match item {
        BodyItem::Lit(l) => i.get(l),
        BodyItem::Const(x) => *x,
    });
    let failures = rule.naf.iter().map(|l| naf(&i.get(l)));
    positive
        .chain(failures)
        .chain(std::iter::once(rule.weight))
        .fold(FuzzyTruth::TRUE, |acc, v| conj(&acc, &v))
}

/// The head equals the body value, or is strictly above it in the knowledge
/// or the truth preorder.
pub fn satisfies(i: &Interpretation, rule: &GroundRule, tol: f64) -> bool {
    let head = i.get(&rule.head);
    let body = eval_body(i, rule);
    if head.approx_eq(&body, tol) {
        return true;
    }
    let cmp = Measure::of(&head).compare(&Measure::of(&body), tol);
    cmp.knowledge == Ordering::Greater || cmp.truth == Ordering::Greater
}

/// Disjunction of the body values of all rules with head `lit`, or `None`
/// when no rule has that head.
fn combined(i: &Interpretation, p: &GroundProgram, lit: &Literal) -> Option<FuzzyTruth> {
    p.rules_for(lit)
        .iter()
        .map(|&r| eval_body(i, &p.rules()[r]))
        .reduce(|acc, v| disj(&acc, &v))
}

#[derive(Debug, Clone, PartialEq)]
pub enum SupportViolation {
    /// The literal's value differs from what its rules produce.
    Unsupported {
        literal: Literal,
        expected: FuzzyTruth,
        actual: FuzzyTruth,
    },
    /// Evidence for and against the atom is equally certain but disagrees.
    Tie { atom: Atom },
}

/// The value every head literal must take in a supported model: the
/// disjunction over its rules, aggregated by knowledge against the negated
/// evidence for the complement when both sides have rules.
fn supported_value(
    i: &Interpretation,
    p: &GroundProgram,
    lit: &Literal,
    tol: f64,
) -> Result<Option<FuzzyTruth>, Atom> {
    let Some(own) = combined(i, p, lit) else {
        return Ok(None);
    };
    match combined(i, p, &lit.complement()) {
        None => Ok(Some(own)),
        Some(against) => kagg_tol(&own, &negate(&against), tol)
            .map(Some)
            .map_err(|_| lit.atom.clone()),
    }
}

/// First supportedness violation of `i` with respect to `p`, if any.
pub fn is_supported(i: &Interpretation, p: &GroundProgram, tol: f64) -> Option<SupportViolation> {
    for lit in p.heads() {
        match supported_value(i, p, lit, tol) {
            Err(atom) => return Some(SupportViolation::Tie { atom }),
            Ok(Some(expected)) => {
                let actual = i.get(lit);
                if !actual.approx_eq(&expected, tol) {
                    return Some(SupportViolation::Unsupported {
                        literal: lit.clone(),
                        expected,
                        actual,
                    });
                }
            }
            Ok(None) => {}
        }
    }
    None
}

/// Replaces every naf-literal `not b` by the constant `naf(I(b))`.
pub fn reduct(p: &GroundProgram, i: &Interpretation) -> GroundProgram {
    let rules = p
        .rules()
        .iter()
        .map(|r| {
            let mut r = r.clone();
            let frozen = r.naf.drain(..).map(|b| BodyItem::Const(naf(&i.get(&b))));
            r.body.extend(frozen.collect::<Vec<_>>());
            r
        })
        .collect();
    GroundProgram::new(rules).expect("reduct of a ground program is ground")
}

/// Result of [`kmin_supported_model`].
#[derive(Debug, Clone, PartialEq)]
pub struct Fixpoint {
    pub model: Interpretation,
    pub iterations: usize,
    /// Assignment after each pass; empty unless tracing is enabled.
    pub trace: Vec<Interpretation>,
}

/// One pass of the support operator.
fn step(i: &Interpretation, p: &GroundProgram, tol: f64) -> Result<Interpretation, Atom> {
    let mut next = i.clone();
    for lit in p.heads() {
        if let Some(v) = supported_value(i, p, lit, tol)? {
            next.set(lit.clone(), v);
        }
    }
    Ok(next)
}

/// Stopping threshold of the fixpoint iteration relative to the equality
/// tolerance. Loops converge geometrically, so the distance to the limit
/// can be several times the last step; stopping well below the tolerance
/// keeps the result within it.
const CONVERGENCE_FACTOR: f64 = 1e-3;

/// Iterates the support operator of a positive program from complete
/// ignorance until no value moves by more than a small fraction of the
/// tolerance.
pub fn kmin_supported_model(p: &GroundProgram, cfg: &SolverConfig) -> Result<Fixpoint, FixpointError> {
    let fix = iterate_support(p, cfg).0?;
    if let Some(atom) = is_inconsistent(&fix.model, cfg.tol) {
        return Err(FixpointError::Inconsistent { atom });
    }
    Ok(fix)
}

/// The support iteration without the final consistency check, together
/// with the last assignment it reached, so callers can still read where an
/// inconsistent or tied reduct was heading.
pub(crate) fn iterate_support(
    p: &GroundProgram,
    cfg: &SolverConfig,
) -> (Result<Fixpoint, FixpointError>, Interpretation) {
    let mut current = Interpretation::unknown(p);
    if p.has_naf() {
        return (Err(FixpointError::NotPositive), current);
    }
    let mut trace = Vec::new();
    for iteration in 1..=cfg.max_iter {
        let next = match step(&current, p, cfg.tol) {
            Ok(next) => next,
            Err(atom) => return (Err(FixpointError::Inconsistent { atom }), current),
        };
        if cfg.check_monotone {
            for (lit, v) in &next {
                let (before, after) = (Measure::of(&current.get(lit)).k, Measure::of(v).k);
                if after > before + cfg.tol {
                    let err = FixpointError::KnowledgeIncrease {
                        literal: lit.clone(),
                        iteration,
                        before,
                        after,
                    };
                    return (Err(err), current);
                }
            }
        }
        if cfg.trace {
            trace.push(next.clone());
        }
        if next.approx_eq(&current, cfg.tol * CONVERGENCE_FACTOR) {
            let fix = Fixpoint {
                model: next.clone(),
                iterations: iteration,
                trace,
            };
            return (Ok(fix), next);
        }
        current = next;
    }
    let err = FixpointError::NonConvergent {
        iterations: cfg.max_iter,
    };
    (Err(err), current)
}

/// Checks every answer-set condition for `i`: consistency, being a model,
/// supportedness, and equality with the k-minimal supported model of the
/// reduct.
pub fn verify_answer_set(p: &GroundProgram, i: &Interpretation, cfg: &SolverConfig) -> Status {
    if let Some(atom) = is_inconsistent(i, cfg.tol) {
        return Status::Inconsistent { atom };
    }
    if let Some(rule) = p.rules().iter().position(|r| !satisfies(i, r, cfg.tol)) {
        return Status::NotModel { rule };
    }
    match is_supported(i, p, cfg.tol) {
        Some(SupportViolation::Tie { atom }) => return Status::Inconsistent { atom },
        Some(SupportViolation::Unsupported { literal, .. }) => {
            return Status::NotSupported { literal }
        }
        None => {}
    }
    let reduced = reduct(p, i);
    let fix = match kmin_supported_model(&reduced, cfg) {
        Ok(fix) => fix,
        Err(e) => return e.into(),
    };
    let literals = p.literals();
    match literals
        .iter()
        .chain(i.iter().map(|(l, _)| l))
        .find(|l| !fix.model.get(l).approx_eq(&i.get(l), cfg.tol))
    {
        Some(literal) => Status::NotMinimal {
            literal: literal.clone(),
        },
        None => Status::AnswerSet,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::program::{ground, parse, Rule};
    use crate::truth::{ifn, tfn, trfn};

    fn lit(s: &str) -> Literal {
        Literal::parse_prop(s)
    }

    fn gp(src: &str) -> GroundProgram {
        ground(&parse(src).unwrap()).unwrap()
    }

    fn cfg() -> SolverConfig {
        SolverConfig::default()
    }

    #[test]
    fn inconsistency_examples() {
        let i = Interpretation::new()
            .with(lit("a"), FuzzyTruth::TRUE)
            .with(lit("-a"), FuzzyTruth::TRUE);
        assert_eq!(is_inconsistent(&i, 1e-9), Some(Atom::prop("a")));
        let i = Interpretation::new()
            .with(lit("a"), FuzzyTruth::TRUE)
            .with(lit("-a"), FuzzyTruth::FALSE);
        assert_eq!(is_inconsistent(&i, 1e-9), None);
        let i = Interpretation::new()
            .with(lit("a"), ifn(0.6, 1.0))
            .with(lit("-a"), ifn(0.0, 0.4));
        assert_eq!(is_inconsistent(&i, 1e-9), None);
        // different certainty is never inconsistent
        let i = Interpretation::new()
            .with(lit("a"), ifn(0.6, 1.0))
            .with(lit("-a"), FuzzyTruth::TRUE);
        assert_eq!(is_inconsistent(&i, 1e-9), None);
    }

    #[test]
    fn body_evaluation() {
        let p = gp("r1: tumor <- cin_on, tsg_off. [tfn(0.4,0.4,1.5)]\nr3: tsg_off <- cin_on. [ifn(0.6,1)]");
        let i = Interpretation::new().with(lit("cin_on"), FuzzyTruth::TRUE);
        assert_eq!(eval_body(&i, &p.rules()[1]), ifn(0.6, 1.0));

        let i = i.with(lit("tsg_off"), ifn(0.6, 1.0));
        let v = eval_body(&i, &p.rules()[0]);
        // support from the extreme products of [0.6, 1] and [0.4, 1.5]; core from [0.6, 1]·[0.4, 0.4]
        assert!(v.approx_eq(&trfn(0.24, 0.24, 0.4, 1.5), 1e-12), "{v:?}");
        assert_eq!(v, conj(&ifn(0.6, 1.0), &tfn(0.4, 0.4, 1.5)));

        let fact = Rule::fact(lit("a"), tfn(0.1, 0.2, 0.3));
        assert_eq!(eval_body(&Interpretation::new(), &fact), tfn(0.1, 0.2, 0.3));
    }

    #[test]
    fn satisfaction_branches() {
        let rule = Rule::new(lit("h"), vec![BodyItem::Const(ifn(0.3, 0.7))], vec![], FuzzyTruth::TRUE);
        let at = |v| Interpretation::new().with(lit("h"), v);
        assert!(satisfies(&at(ifn(0.3, 0.7)), &rule, 1e-9));
        // k 0 < 0.4: more knowledge than the body
        assert!(satisfies(&at(ifn(0.9, 0.9)), &rule, 1e-9));
        // truer (t 0.75 > 0.5) at equal uncertainty
        assert!(satisfies(&at(ifn(0.55, 0.95)), &rule, 1e-9));

        let rule = Rule::new(lit("h"), vec![BodyItem::Const(ifn(0.6, 1.0))], vec![], FuzzyTruth::TRUE);
        // k 0.2 < 0.4, so the knowledge branch holds although t 0.1 < 0.8
        assert!(satisfies(&at(ifn(0.0, 0.2)), &rule, 1e-9));
        // less knowledge (k 1) and less truth (t 0.5)
        assert!(!satisfies(&at(ifn(0.0, 1.0)), &rule, 1e-9));
        assert!(!satisfies(&at(ifn(0.2, 0.8)), &rule, 1e-9));
    }

    #[test]
    fn supportedness_conditions() {
        let p = gp("a. [ifn(0.7,0.9)]");
        let i = Interpretation::new().with(lit("a"), ifn(0.7, 0.9));
        assert_eq!(is_supported(&i, &p, 1e-9), None);
        let i = Interpretation::new().with(lit("a"), ifn(0.7, 1.0));
        assert!(matches!(
            is_supported(&i, &p, 1e-9),
            Some(SupportViolation::Unsupported { .. })
        ));

        let p = gp("a. [ifn(0.2,0.5)]\na. [tfn(0.1,0.3,0.6)]");
        let v = disj(&ifn(0.2, 0.5), &tfn(0.1, 0.3, 0.6));
        let i = Interpretation::new().with(lit("a"), v);
        assert_eq!(is_supported(&i, &p, 1e-9), None);

        // evidence for a: IFN(0.6,1) (k 0.4); against: IFN(0,0.2) (k 0.2)
        let p = gp("a. [ifn(0.6,1)]\n-a. [ifn(0,0.2)]");
        let winner_a = negate(&ifn(0.0, 0.2));
        let i = Interpretation::new()
            .with(lit("a"), winner_a)
            .with(lit("-a"), ifn(0.0, 0.2));
        assert_eq!(is_supported(&i, &p, 1e-9), None);
        let i = Interpretation::new()
            .with(lit("a"), ifn(0.6, 1.0))
            .with(lit("-a"), ifn(0.0, 0.2));
        assert!(matches!(
            is_supported(&i, &p, 1e-9),
            Some(SupportViolation::Unsupported { .. })
        ));
        // the other orientation: the more certain side argues for a
        let p = gp("a. [ifn(0.8,1)]\n-a. [ifn(0,0.6)]");
        let i = Interpretation::new()
            .with(lit("a"), ifn(0.8, 1.0))
            .with(lit("-a"), negate(&ifn(0.8, 1.0)));
        assert_eq!(is_supported(&i, &p, 1e-9), None);

        let p = gp("a. -a.");
        let i = Interpretation::new()
            .with(lit("a"), FuzzyTruth::TRUE)
            .with(lit("-a"), FuzzyTruth::TRUE);
        assert_eq!(
            is_supported(&i, &p, 1e-9),
            Some(SupportViolation::Tie { atom: Atom::prop("a") })
        );
    }

    #[test]
    fn reduct_examples() {
        let p = gp("a <- b. [ifn(0.5,1)]\nb.");
        assert_eq!(reduct(&p, &Interpretation::new()), p);

        let p = gp("a <- not q.");
        let r = reduct(&p, &Interpretation::new().with(lit("q"), FuzzyTruth::UNKNOWN));
        assert_eq!(r.rules()[0].body, vec![BodyItem::Const(FuzzyTruth::TRUE)]);
        assert!(r.rules()[0].naf.is_empty());
        let r = reduct(&p, &Interpretation::new().with(lit("q"), FuzzyTruth::TRUE));
        assert_eq!(r.rules()[0].body, vec![BodyItem::Const(FuzzyTruth::FALSE)]);
    }

    #[test]
    fn reduct_is_idempotent() {
        let p = gp("a <- b, not c. [ifn(0.5,1)]\nc <- not a.\nb. [tfn(0.2,0.4,0.9)]");
        let i = Interpretation::new()
            .with(lit("a"), ifn(0.3, 0.6))
            .with(lit("c"), tfn(0.1, 0.5, 0.7));
        let once = reduct(&p, &i);
        assert_eq!(reduct(&once, &i), once);
    }

    #[test]
    fn fixpoint_basics() {
        let empty = GroundProgram::default();
        assert!(kmin_supported_model(&empty, &cfg()).unwrap().model.is_empty());

        let p = gp("a. [tfn(0,1/3,1)]");
        let fix = kmin_supported_model(&p, &cfg()).unwrap();
        assert_eq!(fix.model.get(&lit("a")), tfn(0.0, 1.0 / 3.0, 1.0));

        let p = gp("a. -a.");
        assert_eq!(
            kmin_supported_model(&p, &cfg()),
            Err(FixpointError::Inconsistent { atom: Atom::prop("a") })
        );
        assert_eq!(
            kmin_supported_model(&gp("a <- not b."), &cfg()),
            Err(FixpointError::NotPositive)
        );
    }

    #[test]
    fn fixpoint_of_a_loop_converges_geometrically() {
        let p = gp("a <- b. b <- a. a. [ifn(0.5,0.5)]");
        let fix = kmin_supported_model(&p, &cfg()).unwrap();
        assert!(fix.model.get(&lit("a")).approx_eq(&ifn(1.0, 1.0), 1e-8));
        assert!(fix.iterations > 20);
        let tight = SolverConfig {
            max_iter: 5,
            ..cfg()
        };
        assert_eq!(
            kmin_supported_model(&p, &tight),
            Err(FixpointError::NonConvergent { iterations: 5 })
        );
    }

    #[test]
    fn trace_records_each_pass() {
        let p = gp("c. t <- c. [ifn(0.6,1)]");
        let traced = SolverConfig { trace: true, ..cfg() };
        let fix = kmin_supported_model(&p, &traced).unwrap();
        assert_eq!(fix.trace.len(), fix.iterations);
        assert_eq!(fix.trace.last(), Some(&fix.model));
    }

    #[test]
    fn answer_set_verification() {
        let p = gp("a <- not b.");
        let i = Interpretation::new()
            .with(lit("a"), FuzzyTruth::TRUE)
            .with(lit("b"), FuzzyTruth::UNKNOWN);
        assert_eq!(verify_answer_set(&p, &i, &cfg()), Status::AnswerSet);

        let i = i.with(lit("b"), ifn(0.3, 0.4));
        assert!(matches!(
            verify_answer_set(&p, &i, &cfg()),
            Status::NotSupported { .. } | Status::NotMinimal { .. }
        ));

        let positive = gp("a. [ifn(0.2,0.9)]\nb <- a. [tfn(0.1,0.5,0.9)]");
        let fix = kmin_supported_model(&positive, &cfg()).unwrap();
        assert_eq!(verify_answer_set(&positive, &fix.model, &cfg()), Status::AnswerSet);
    }

    #[test]
    fn odd_loop_over_crisp_candidates() {
        let p = gp("a <- not a.");
        for v in [FuzzyTruth::TRUE, FuzzyTruth::FALSE, FuzzyTruth::UNKNOWN] {
            let i = Interpretation::new().with(lit("a"), v);
            assert_ne!(verify_answer_set(&p, &i, &cfg()), Status::AnswerSet, "{v}");
        }
        // the self-dual point a = 1 - a is a genuine answer set
        let half = Interpretation::new().with(lit("a"), ifn(0.5, 0.5));
        assert_eq!(verify_answer_set(&p, &half, &cfg()), Status::AnswerSet);
    }
}
