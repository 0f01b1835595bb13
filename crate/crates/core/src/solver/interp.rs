use std::collections::btree_map;
use std::collections::BTreeMap;
use std::fmt;

use crate::measures::Measure;
use crate::program::{GroundProgram, Literal};
use crate::truth::FuzzyTruth;

/// Assignment of truth values to ground literals. Literals not present are
/// read as complete ignorance, `IFN(0, 1)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Interpretation {
    values: BTreeMap<Literal, FuzzyTruth>,
}

impl Interpretation {
    pub fn new() -> Self {
        Self::default()
    }

    /// Every literal of `program` set to `IFN(0, 1)`.
    pub fn unknown(program: &GroundProgram) -> Self {
        program
            .literals()
            .into_iter()
            .map(|l| (l, FuzzyTruth::UNKNOWN))
            .collect()
    }

    pub fn get(&self, lit: &Literal) -> FuzzyTruth {
        self.values.get(lit).copied().unwrap_or(FuzzyTruth::UNKNOWN)
    }

    /// Value only if explicitly assigned.
    pub fn assigned(&self, lit: &Literal) -> Option<FuzzyTruth> {
        self.values.get(lit).copied()
    }

    pub fn set(&mut self, lit: Literal, value: FuzzyTruth) {
        self.values.insert(lit, value);
    }

    pub fn with(mut self, lit: Literal, value: FuzzyTruth) -> Self {
        self.set(lit, value);
        self
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, Literal, FuzzyTruth> {
        self.values.iter()
    }

    /// Literal-wise comparison over the union of both key sets, with
    /// unassigned literals read as `IFN(0, 1)`.
    pub fn approx_eq(&self, other: &Interpretation, tol: f64) -> bool {
        self.values
            .keys()
            .chain(other.values.keys())
            .all(|l| self.get(l).approx_eq(&other.get(l), tol))
    }
}

impl FromIterator<(Literal, FuzzyTruth)> for Interpretation {
    fn from_iter<I: IntoIterator<Item = (Literal, FuzzyTruth)>>(iter: I) -> Self {
        Interpretation {
            values: iter.into_iter().collect(),
        }
    }
}

impl<'a> IntoIterator for &'a Interpretation {
    type Item = (&'a Literal, &'a FuzzyTruth);
    type IntoIter = btree_map::Iter<'a, Literal, FuzzyTruth>;

    fn into_iter(self) -> Self::IntoIter {
        self.values.iter()
    }
}

impl fmt::Display for Interpretation {
    /// One `literal : trfn(a,b,c,d) (t=…, k=…)` line per literal.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (lit, v) in &self.values {
            let m = Measure::of(v);
            let [a, b, c, d] = v.params();
            writeln!(f, "{lit} : trfn({a},{b},{c},{d}) (t={}, k={})", m.t, m.k)?;
        }
        Ok(())
    }
}
