//! Answer-set semantics: consistency, satisfaction, supportedness, reduct,
//! k-minimal supported models and answer-set search.
//!
//! Candidates are found by guess-and-check over the values of naf-literals.
//! A reduct only depends on the lower core bound `b` of each literal under
//! `not`, so a guess is one `b` per naf-literal. Each guess yields a positive
//! program whose k-minimal supported model either reproduces the guess (a
//! candidate, then fully verified) or proposes new `b` values. Starting from
//! complete ignorance, guesses are saturated with every value the program
//! produces, which contains the plain operator iteration from the
//! knowledge-least interpretation.

mod interp;
mod semantics;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::program::{ground, Atom, GroundProgram, Literal, Program, ProgramError};
use crate::truth::{FuzzyTruth, DEFAULT_TOL};

pub use interp::Interpretation;
pub use semantics::{
    eval_body, is_inconsistent, is_supported, kmin_supported_model, reduct, satisfies,
    verify_answer_set, Fixpoint, SupportViolation,
};

use semantics::iterate_support;

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    /// Per-parameter equality tolerance.
    pub tol: f64,
    /// Pass limit of a single fixpoint iteration.
    pub max_iter: usize,
    /// Keep every pass of every fixpoint iteration.
    pub trace: bool,
    /// Abort a fixpoint iteration when some literal loses knowledge.
    pub check_monotone: bool,
    /// Guess budget. Saturation stops early, leaving the report
    /// unsaturated, once the next round would examine more guesses in total.
    pub max_guesses: usize,
    /// Rounds of guess saturation; each round feeds the values produced by
    /// the previous one back in as guesses.
    pub max_rounds: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            tol: DEFAULT_TOL,
            max_iter: 10_000,
            trace: false,
            check_monotone: true,
            max_guesses: 100_000,
            max_rounds: 8,
        }
    }
}

/// Failure of [`kmin_supported_model`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FixpointError {
    #[error("program contains naf-literals")]
    NotPositive,
    #[error("no fixpoint within {iterations} passes")]
    NonConvergent { iterations: usize },
    #[error("inconsistent evidence for {atom}")]
    Inconsistent { atom: Atom },
    #[error("uncertainty of {literal} grew from {before} to {after} in pass {iteration}")]
    KnowledgeIncrease {
        literal: Literal,
        iteration: usize,
        before: f64,
        after: f64,
    },
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error(transparent)]
    Program(#[from] ProgramError),
}

/// Outcome of checking one candidate interpretation.
#[derive(Debug, Clone, PartialEq)]
pub enum Status {
    AnswerSet,
    /// Index of the first rule the interpretation does not satisfy.
    NotModel { rule: usize },
    NotSupported { literal: Literal },
    Inconsistent { atom: Atom },
    /// Supported model that differs from the k-minimal model of its reduct.
    NotMinimal { literal: Literal },
    NonConvergent { iterations: usize },
    KnowledgeIncrease { literal: Literal, iteration: usize },
}

impl Status {
    pub fn is_answer_set(&self) -> bool {
        matches!(self, Status::AnswerSet)
    }
}

impl From<FixpointError> for Status {
    fn from(e: FixpointError) -> Self {
        match e {
            FixpointError::NonConvergent { iterations } => Status::NonConvergent { iterations },
            FixpointError::Inconsistent { atom } => Status::Inconsistent { atom },
            FixpointError::KnowledgeIncrease {
                literal, iteration, ..
            } => Status::KnowledgeIncrease { literal, iteration },
            // reducts never contain naf-literals
            FixpointError::NotPositive => unreachable!("reduct is positive"),
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::AnswerSet => write!(f, "answer set"),
            Status::NotModel { rule } => write!(f, "not a model: rule {rule} unsatisfied"),
            Status::NotSupported { literal } => write!(f, "not supported: {literal}"),
            Status::Inconsistent { atom } => write!(f, "inconsistent at {atom}"),
            Status::NotMinimal { literal } => write!(f, "not k-minimal: {literal}"),
            Status::NonConvergent { iterations } => {
                write!(f, "no fixpoint within {iterations} passes")
            }
            Status::KnowledgeIncrease { literal, iteration } => {
                write!(f, "knowledge of {literal} decreased in pass {iteration}")
            }
        }
    }
}

/// A candidate examined by [`solve`].
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    /// Guessed `b` per naf-literal.
    pub guess: Vec<(Literal, f64)>,
    /// Fixpoint of the reduct under the guess; `None` if it has none.
    pub interpretation: Option<Interpretation>,
    pub status: Status,
    pub iterations: usize,
    pub trace: Vec<Interpretation>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub answer_sets: Vec<Interpretation>,
    pub candidates: Vec<Candidate>,
    /// Fixpoint passes summed over all guesses.
    pub iterations: usize,
    /// Number of naf guesses examined.
    pub guesses: usize,
    /// Whether guessing stopped because no new values appeared, rather than
    /// at the round limit or the guess budget.
    pub saturated: bool,
}

/// Grounds and solves `program`.
pub fn solve(program: &Program, cfg: &SolverConfig) -> Result<SolveReport, SolveError> {
    solve_ground(&ground(program)?, cfg)
}

/// Interpretation with every naf-literal `l` read as `IFN(b_l, b_l)`;
/// the reduct only looks at `b`.
fn guess_interpretation(naf: &[Literal], guess: &[f64]) -> Interpretation {
    naf.iter()
        .zip(guess)
        .map(|(l, &b)| (l.clone(), FuzzyTruth::point(b).expect("b lies in [0, 1]")))
        .collect()
}

/// Sorted, tolerance-deduplicated insert. Returns whether `v` was new.
fn insert_value(pool: &mut Vec<f64>, v: f64, tol: f64) -> bool {
    if pool.iter().any(|&x| (x - v).abs() <= tol) {
        return false;
    }
    pool.push(v);
    pool.sort_by(f64::total_cmp);
    true
}

struct Outcome {
    result: Result<Fixpoint, FixpointError>,
}

pub fn solve_ground(p: &GroundProgram, cfg: &SolverConfig) -> Result<SolveReport, SolveError> {
    let naf: Vec<Literal> = p.naf_literals().into_iter().collect();
    let mut pools: Vec<Vec<f64>> = vec![vec![0.0]; naf.len()];
    let mut seen: BTreeMap<Vec<u64>, Outcome> = BTreeMap::new();
    let key = |g: &[f64]| g.iter().map(|v| v.to_bits()).collect::<Vec<_>>();

    let mut saturated = false;
    for round in 0..cfg.max_rounds.max(1) {
        let total = pools.iter().try_fold(1usize, |acc, pool| acc.checked_mul(pool.len()));
        if round > 0 && !matches!(total, Some(t) if t <= cfg.max_guesses) {
            break;
        }
        let mut produced: Vec<Vec<f64>> = vec![Vec::new(); naf.len()];
        let mut digits = vec![0usize; naf.len()];
        'odometer: loop {
            let guess: Vec<f64> = digits.iter().zip(&pools).map(|(&i, pool)| pool[i]).collect();
            if let Entry::Vacant(slot) = seen.entry(key(&guess)) {
                let (mut result, last) = iterate_support(&reduct(p, &guess_interpretation(&naf, &guess)), cfg);
                // an inconsistent or tied reduct still suggests guesses
                // through its last iterate; a non-convergent one does not
                if matches!(result, Ok(_) | Err(FixpointError::Inconsistent { .. })) {
                    for (out, l) in produced.iter_mut().zip(&naf) {
                        out.push(last.get(l).b());
                    }
                }
                if let Ok(fix) = &result {
                    if let Some(atom) = is_inconsistent(&fix.model, cfg.tol) {
                        result = Err(FixpointError::Inconsistent { atom });
                    }
                }
                slot.insert(Outcome { result });
            }
            for (slot, pool) in digits.iter_mut().zip(&pools).rev() {
                *slot += 1;
                if *slot < pool.len() {
                    continue 'odometer;
                }
                *slot = 0;
            }
            break;
        }
        let mut grew = false;
        for (pool, values) in pools.iter_mut().zip(produced) {
            for v in values {
                grew |= insert_value(pool, v, cfg.tol);
            }
        }
        if !grew {
            saturated = true;
            break;
        }
    }

    let mut report = SolveReport {
        answer_sets: Vec::new(),
        candidates: Vec::new(),
        iterations: 0,
        guesses: seen.len(),
        saturated,
    };
    let initial = key(&vec![0.0; naf.len()]);
    for (k, outcome) in &seen {
        let guess: Vec<(Literal, f64)> = naf
            .iter()
            .cloned()
            .zip(k.iter().map(|&bits| f64::from_bits(bits)))
            .collect();
        match &outcome.result {
            Ok(fix) => {
                report.iterations += fix.iterations;
                let fixed = guess
                    .iter()
                    .all(|(l, b)| (fix.model.get(l).b() - b).abs() <= cfg.tol);
                if !fixed {
                    continue;
                }
                if report
                    .candidates
                    .iter()
                    .filter_map(|c| c.interpretation.as_ref())
                    .any(|i| i.approx_eq(&fix.model, cfg.tol))
                {
                    continue;
                }
                let status = verify_answer_set(p, &fix.model, cfg);
                if status.is_answer_set() {
                    report.answer_sets.push(fix.model.clone());
                }
                report.candidates.push(Candidate {
                    guess,
                    interpretation: Some(fix.model.clone()),
                    status,
                    iterations: fix.iterations,
                    trace: fix.trace.clone(),
                });
            }
            // failures are reported for the knowledge-least start only
            Err(e) if *k == initial => {
                let iterations = match e {
                    FixpointError::NonConvergent { iterations } => *iterations,
                    _ => 0,
                };
                report.iterations += iterations;
                report.candidates.push(Candidate {
                    guess,
                    interpretation: None,
                    status: e.clone().into(),
                    iterations,
                    trace: Vec::new(),
                });
            }
            Err(_) => {}
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectives::{conj, disj};
    use crate::measures::uncertainty_degree;
    use crate::program::parse;
    use crate::truth::{ifn, tfn, trfn};
    use proptest::prelude::*;

    fn lit(s: &str) -> Literal {
        Literal::parse_prop(s)
    }

    fn run(src: &str) -> SolveReport {
        solve(&parse(src).unwrap(), &SolverConfig::default()).unwrap()
    }

    const TUMOR: &str = "\
r1: tumor <- cin_on, tsg_off. [tfn(0.4,0.4,1.5)]
r2: tumor <- cin_on, tsg_off. [tfn(0.1,0.1,0.5)]
r3: tsg_off <- cin_on. [ifn(0.6,1)]
cin_on.
";

    #[test]
    fn tumor_program() {
        let report = run(TUMOR);
        assert_eq!(report.answer_sets.len(), 1);
        let m = &report.answer_sets[0];
        assert_eq!(m.get(&lit("tsg_off")), ifn(0.6, 1.0));
        assert_eq!(m.get(&lit("cin_on")), FuzzyTruth::TRUE);
        let tumor = m.get(&lit("tumor"));
        // r1: (0.24, 0.24, 0.4, 1.5); r2: (0.06, 0.06, 0.1, 0.5); disj = 1 - (1-x)(1-y) on each bound
        let expected = trfn(0.2856, 0.2856, 0.46, 1.47);
        assert!(tumor.approx_eq(&expected, 1e-12), "{tumor:?}");
        assert!(tumor.is_truncated());
        let via = disj(
            &conj(&ifn(0.6, 1.0), &tfn(0.4, 0.4, 1.5)),
            &conj(&ifn(0.6, 1.0), &tfn(0.1, 0.1, 0.5)),
        );
        assert!(tumor.approx_eq(&via, 1e-12));
    }

    #[test]
    fn tumor_trace_loses_uncertainty() {
        let cfg = SolverConfig {
            trace: true,
            ..SolverConfig::default()
        };
        let report = solve(&parse(TUMOR).unwrap(), &cfg).unwrap();
        let trace = &report.candidates[0].trace;
        assert!(trace.len() >= 3);
        let ks: Vec<f64> = trace
            .iter()
            .map(|i| uncertainty_degree(&i.get(&lit("tumor"))))
            .collect();
        assert!(ks.windows(2).all(|w| w[1] <= w[0] + 1e-12), "{ks:?}");
        assert!((ks[0] - uncertainty_degree(&trfn(0.0, 0.0, 0.46, 1.5))).abs() < 1e-12);
    }

    #[test]
    fn empty_program() {
        let report = run("");
        assert_eq!(report.answer_sets, vec![Interpretation::new()]);
    }

    #[test]
    fn complementary_facts_are_inconsistent() {
        let report = run("a. -a.");
        assert!(report.answer_sets.is_empty());
        assert_eq!(
            report.candidates[0].status,
            Status::Inconsistent { atom: Atom::prop("a") }
        );
    }

    #[test]
    fn even_loop_has_two_answer_sets() {
        let report = run("a <- not b. b <- not a.");
        assert_eq!(report.answer_sets.len(), 2);
        for m in &report.answer_sets {
            let (a, b) = (m.get(&lit("a")), m.get(&lit("b")));
            assert!(
                (a == FuzzyTruth::TRUE && b == FuzzyTruth::FALSE)
                    || (a == FuzzyTruth::FALSE && b == FuzzyTruth::TRUE),
                "{m}"
            );
        }
    }

    #[test]
    fn odd_loop_has_none() {
        let report = run("a <- not a.");
        assert!(report.answer_sets.is_empty());
    }

    #[test]
    fn negation_as_failure_defaults() {
        let report = run("a <- not b.");
        assert_eq!(report.answer_sets.len(), 1);
        assert_eq!(report.answer_sets[0].get(&lit("a")), FuzzyTruth::TRUE);
        assert_eq!(report.answer_sets[0].get(&lit("b")), FuzzyTruth::UNKNOWN);

        let report = run("a <- not b. b. [ifn(0.3,0.8)]");
        assert_eq!(report.answer_sets.len(), 1);
        assert_eq!(report.answer_sets[0].get(&lit("a")), ifn(0.7, 0.7));
    }

    #[test]
    fn stratified_chain() {
        let report = run("c. [ifn(0.2,0.2)]\nb <- not c.\na <- not b.");
        assert_eq!(report.answer_sets.len(), 1);
        let m = &report.answer_sets[0];
        assert!(m.get(&lit("b")).approx_eq(&ifn(0.8, 0.8), 1e-12));
        assert!(m.get(&lit("a")).approx_eq(&ifn(0.2, 0.2), 1e-12));
    }

    #[test]
    fn doubled_self_support_converges_too_slowly() {
        // d' = d - d^2/4 approaches 0 like 4/n
        let report = run("a <- a. [ifn(0,0.5)]\na <- a. [ifn(0,0.5)]");
        assert_eq!(report.candidates[0].status, Status::NonConvergent { iterations: 10_000 });
        assert!(report.answer_sets.is_empty());
        // a single copy contracts geometrically
        let report = run("a <- a. [ifn(0,0.5)]");
        assert!(report.answer_sets[0].get(&lit("a")).d() < 1e-9);
    }

    #[test]
    fn guess_budget_leaves_search_unsaturated() {
        let cfg = SolverConfig {
            max_guesses: 1,
            ..SolverConfig::default()
        };
        let p = parse("a <- not b. b <- not a.").unwrap();
        let report = solve(&p, &cfg).unwrap();
        assert_eq!((report.guesses, report.saturated), (1, false));
        assert!(report.answer_sets.is_empty());
    }

    #[test]
    fn continuous_guess_maps_stop_at_the_budget() {
        // every round yields fresh values; the only answer set is {a: 1, c: 0}
        let src = "a <- c. [ifn(0.25,0.25)]\na <- not c.\nc <- not a.";
        let report = run(src);
        assert!(!report.saturated);
        assert!(report.guesses <= SolverConfig::default().max_guesses);
        assert_eq!(report.answer_sets.len(), 1);
        let m = &report.answer_sets[0];
        assert_eq!(m.get(&Literal::parse_prop("a")), FuzzyTruth::TRUE);
        assert_eq!(m.get(&Literal::parse_prop("c")), FuzzyTruth::FALSE);
    }

    #[test]
    fn grounding_errors_propagate() {
        let p = parse("p(X) <- not q(X).").unwrap();
        assert!(matches!(
            solve(&p, &SolverConfig::default()),
            Err(SolveError::Program(ProgramError::UnsafeRule { .. }))
        ));
    }

    fn weight() -> impl Strategy<Value = FuzzyTruth> {
        (0u8..=4, 0u8..=4).prop_map(|(x, y)| {
            let (lo, hi) = (x.min(y) as f64 / 4.0, x.max(y) as f64 / 4.0);
            ifn(lo, hi)
        })
    }

    fn positive_rules() -> impl Strategy<Value = Vec<(usize, Vec<usize>, FuzzyTruth)>> {
        prop::collection::vec((0usize..3, prop::collection::vec(0usize..3, 0..3), weight()), 0..6)
    }

    fn render(rules: &[(usize, Vec<usize>, FuzzyTruth)]) -> String {
        let names = ["a", "b", "c"];
        rules
            .iter()
            .map(|(h, body, w)| {
                let body: Vec<&str> = body.iter().map(|&i| names[i]).collect();
                let arrow = if body.is_empty() { String::new() } else { format!(" <- {}", body.join(", ")) };
                format!("{}{arrow}. [ifn({},{})]\n", names[*h], w.a(), w.d())
            })
            .collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn positive_programs_have_one_order_independent_answer_set(
            rules in positive_rules(),
            seed in any::<u64>(),
        ) {
            let base = run(&render(&rules));
            prop_assert_eq!(base.candidates.len(), 1);
            // self-reinforcing loops may approach their limit sublinearly
            prop_assume!(!matches!(base.candidates[0].status, Status::NonConvergent { .. }));
            prop_assert_eq!(base.answer_sets.len(), 1);
            let mut shuffled = rules.clone();
            let n = shuffled.len();
            let mut s = seed;
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                shuffled.swap(i, (s >> 33) as usize % (i + 1));
            }
            let other = run(&render(&shuffled));
            prop_assert_eq!(other.answer_sets.len(), 1);
            prop_assert!(other.answer_sets[0].approx_eq(&base.answer_sets[0], 1e-9));
        }

        #[test]
        fn reported_answer_sets_pass_every_check(
            rules in positive_rules(),
            negs in prop::collection::vec((0usize..3, 0usize..3), 0..3),
        ) {
            let mut src = render(&rules);
            let names = ["a", "b", "c"];
            for (h, n) in negs {
                src.push_str(&format!("{} <- not {}.\n", names[h], names[n]));
            }
            let cfg = SolverConfig { max_iter: 2_000, max_guesses: 2_000, ..SolverConfig::default() };
            let p = ground(&parse(&src).unwrap()).unwrap();
            let report = solve_ground(&p, &cfg).unwrap();
            for m in &report.answer_sets {
                prop_assert!(is_inconsistent(m, cfg.tol).is_none());
                prop_assert!(p.rules().iter().all(|r| satisfies(m, r, cfg.tol)));
                prop_assert!(is_supported(m, &p, cfg.tol).is_none());
                let fix = kmin_supported_model(&reduct(&p, m), &cfg).unwrap();
                prop_assert!(fix.model.approx_eq(m, cfg.tol));
            }
        }
    }
}
