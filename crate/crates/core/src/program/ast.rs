use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::truth::FuzzyTruth;

/// Argument of an atom.
///
/// Truth values may appear as arguments; they behave as opaque constants.
#[derive(Debug, Clone)]
pub enum Term {
    Var(String),
    Const(String),
    Truth(FuzzyTruth),
}

impl Term {
    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    fn rank(&self) -> u8 {
        match self {
            Term::Var(_) => 0,
            Term::Const(_) => 1,
            Term::Truth(_) => 2,
        }
    }

    fn truth_bits(x: &FuzzyTruth) -> [u64; 4] {
        x.params().map(f64::to_bits)
    }
}

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Term {}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Term::Var(x), Term::Var(y)) | (Term::Const(x), Term::Const(y)) => x.cmp(y),
            (Term::Truth(x), Term::Truth(y)) => {
                let (px, py) = (x.params(), y.params());
                px.iter()
                    .zip(py.iter())
                    .map(|(p, q)| p.total_cmp(q))
                    .find(|o| o.is_ne())
                    .unwrap_or(Ordering::Equal)
            }
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl Hash for Term {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rank().hash(state);
        match self {
            Term::Var(s) | Term::Const(s) => s.hash(state),
            Term::Truth(x) => Term::truth_bits(x).hash(state),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(s) | Term::Const(s) => f.write_str(s),
            Term::Truth(x) => write!(f, "{x}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub predicate: String,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(predicate: impl Into<String>, args: Vec<Term>) -> Self {
        Atom {
            predicate: predicate.into(),
            args,
        }
    }

    pub fn prop(predicate: impl Into<String>) -> Self {
        Atom::new(predicate, Vec::new())
    }

    pub fn is_ground(&self) -> bool {
        !self.args.iter().any(Term::is_var)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.predicate)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            for (i, arg) in self.args.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{arg}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// An atom or its classical negation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub atom: Atom,
    pub negated: bool,
}

impl Literal {
    pub fn pos(atom: Atom) -> Self {
        Literal {
            atom,
            negated: false,
        }
    }

    pub fn neg(atom: Atom) -> Self {
        Literal {
            atom,
            negated: true,
        }
    }

    /// Propositional literal; a leading `-` marks classical negation.
    pub fn parse_prop(name: &str) -> Self {
        match name.strip_prefix('-') {
            Some(rest) => Literal::parse_prop(rest).complement(),
            None => Literal::pos(Atom::prop(name)),
        }
    }

    pub fn complement(&self) -> Self {
        Literal {
            atom: self.atom.clone(),
            negated: !self.negated,
        }
    }

    pub fn is_ground(&self) -> bool {
        self.atom.is_ground()
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            f.write_str("-")?;
        }
        write!(f, "{}", self.atom)
    }
}

/// Element of a rule's positive body.
#[derive(Debug, Clone, PartialEq)]
pub enum BodyItem {
    Lit(Literal),
    Const(FuzzyTruth),
}

impl fmt::Display for BodyItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BodyItem::Lit(l) => write!(f, "{l}"),
            BodyItem::Const(x) => write!(f, "{x}"),
        }
    }
}

/// A weighted rule `head <- body, not naf. [weight]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub label: Option<String>,
    pub head: Literal,
    pub body: Vec<BodyItem>,
    pub naf: Vec<Literal>,
    pub weight: FuzzyTruth,
}

impl Rule {
    pub fn new(head: Literal, body: Vec<BodyItem>, naf: Vec<Literal>, weight: FuzzyTruth) -> Self {
        Rule {
            label: None,
            head,
            body,
            naf,
            weight,
        }
    }

    pub fn fact(head: Literal, weight: FuzzyTruth) -> Self {
        Rule::new(head, Vec::new(), Vec::new(), weight)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// A rule whose body holds only truth constants.
    pub fn is_fact(&self) -> bool {
        self.naf.is_empty() && self.body.iter().all(|b| matches!(b, BodyItem::Const(_)))
    }

    pub fn is_ground(&self) -> bool {
        self.head.is_ground() && self.literals().all(Literal::is_ground)
    }

    /// Literals of the positive body, in order.
    pub fn positive_literals(&self) -> impl Iterator<Item = &Literal> {
        self.body.iter().filter_map(|b| match b {
            BodyItem::Lit(l) => Some(l),
            BodyItem::Const(_) => None,
        })
    }

    /// All body literals, positive ones first.
    pub fn literals(&self) -> impl Iterator<Item = &Literal> {
        self.positive_literals().chain(self.naf.iter())
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(label) = &self.label {
            write!(f, "{label}: ")?;
        }
        write!(f, "{}", self.head)?;
        let mut items = self
            .body
            .iter()
            .map(ToString::to_string)
            .chain(self.naf.iter().map(|l| format!("not {l}")))
            .peekable();
        if items.peek().is_some() {
            f.write_str(" <- ")?;
            f.write_str(&items.collect::<Vec<_>>().join(", "))?;
        }
        f.write_str(".")?;
        if self.weight != FuzzyTruth::TRUE {
            write!(f, " [{}]", self.weight)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Program {
    pub rules: Vec<Rule>,
}

impl Program {
    pub fn new(rules: Vec<Rule>) -> Self {
        Program { rules }
    }

    pub fn has_naf(&self) -> bool {
        self.rules.iter().any(|r| !r.naf.is_empty())
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for rule in &self.rules {
            writeln!(f, "{rule}")?;
        }
        Ok(())
    }
}
