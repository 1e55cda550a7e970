use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign};

/// Counts of base-scalar operations.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Tally {
    pub mul: u64,
    pub div: u64,
    pub add: u64,
    /// Multiplications by powers of `t`; never part of `mul`.
    pub scaling: u64,
}

impl Tally {
    /// Multiplications plus divisions, the figure compared against cost
    /// recurrences.
    pub fn mul_div(&self) -> u64 {
        self.mul + self.div
    }
}

impl Add for Tally {
    type Output = Tally;

    fn add(self, rhs: Tally) -> Tally {
        Tally {
            mul: self.mul + rhs.mul,
            div: self.div + rhs.div,
            add: self.add + rhs.add,
            scaling: self.scaling + rhs.scaling,
        }
    }
}

impl AddAssign for Tally {
    fn add_assign(&mut self, rhs: Tally) {
        *self = *self + rhs;
    }
}

impl fmt::Display for Tally {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "mul={} div={} add={} scaling={}", self.mul, self.div, self.add, self.scaling)
    }
}

/// Mergeable operation tally, passed explicitly through every algorithm.
///
/// `scope` runs a closure against a child counter and records the child's
/// tally under its label, so one counter can report a per-kernel breakdown.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OpCounter {
    label: String,
    tally: Tally,
    breakdown: BTreeMap<String, Tally>,
}

impl OpCounter {
    pub fn new(label: impl Into<String>) -> Self {
        OpCounter { label: label.into(), ..Default::default() }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn tally(&self) -> Tally {
        self.tally
    }

    pub fn mul_count(&self) -> u64 {
        self.tally.mul
    }

    pub fn div_count(&self) -> u64 {
        self.tally.div
    }

    pub fn add_count(&self) -> u64 {
        self.tally.add
    }

    pub fn scaling_count(&self) -> u64 {
        self.tally.scaling
    }

    pub fn breakdown(&self) -> &BTreeMap<String, Tally> {
        &self.breakdown
    }

    pub fn record_mul(&mut self, n: u64) {
        self.tally.mul += n;
    }

    pub fn record_div(&mut self, n: u64) {
        self.tally.div += n;
    }

    pub fn record_add(&mut self, n: u64) {
        self.tally.add += n;
    }

    pub fn record_scaling(&mut self, n: u64) {
        self.tally.scaling += n;
    }

    /// Componentwise sum, including breakdown entries.
    pub fn merge(&mut self, other: &OpCounter) {
        self.tally += other.tally;
        for (k, v) in &other.breakdown {
            *self.breakdown.entry(k.clone()).or_default() += *v;
        }
    }

    pub fn scope<R>(&mut self, label: &str, f: impl FnOnce(&mut OpCounter) -> R) -> R {
        let mut child = OpCounter::new(label);
        let out = f(&mut child);
        self.tally += child.tally;
        *self.breakdown.entry(label.to_string()).or_default() += child.tally;
        for (k, v) in child.breakdown {
            *self.breakdown.entry(format!("{label}/{k}")).or_default() += v;
        }
        out
    }
}

impl fmt::Display for OpCounter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.label, self.tally)
    }
}
