use std::fmt;

use serde::Serialize;

use super::AssemblyError;
use crate::string::{join, AssemblyString, Symbol};

/// An operand of a join: either a basic symbol or the product of an earlier step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ObjectRef {
    Basic(Symbol),
    Step(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinStep {
    pub left: ObjectRef,
    pub right: ObjectRef,
    pub product: AssemblyString,
}

/// An ordered sequence of joins. Its length is the number of steps.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AssemblyPath {
    steps: Vec<JoinStep>,
}

impl AssemblyPath {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn steps(&self) -> &[JoinStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Appends a join of two references and returns the index of the new step.
    pub fn push(&mut self, left: ObjectRef, right: ObjectRef) -> Result<usize, AssemblyError> {
        let next = self.steps.len();
        let l = self.resolve(left, next)?;
        let r = self.resolve(right, next)?;
        let product = join(&l, &r);
        self.steps.push(JoinStep { left, right, product });
        Ok(next)
    }

    fn resolve(&self, r: ObjectRef, before: usize) -> Result<AssemblyString, AssemblyError> {
        match r {
            ObjectRef::Basic(sym) => Ok(AssemblyString::new(vec![sym]).expect("one symbol")),
            ObjectRef::Step(i) if i < before => Ok(self.steps[i].product.clone()),
            ObjectRef::Step(i) => Err(AssemblyError::InvalidPath(format!(
                "step {before} references step {i} before it exists"
            ))),
        }
    }

    /// The object this path ends at, if any.
    pub fn product(&self) -> Option<&AssemblyString> {
        self.steps.last().map(|s| &s.product)
    }

    /// Checks every structural invariant and that the path ends at `target`.
    /// An empty path is valid only for a single-symbol target.
    pub fn validate(&self, target: &AssemblyString) -> Result<(), AssemblyError> {
        for (i, step) in self.steps.iter().enumerate() {
            let l = self.resolve(step.left, i)?;
            let r = self.resolve(step.right, i)?;
            if join(&l, &r) != step.product {
                return Err(AssemblyError::InvalidPath(format!(
                    "step {i} product {} is not {l} + {r}",
                    step.product
                )));
            }
        }
        match self.product() {
            Some(p) if p == target => Ok(()),
            Some(p) => Err(AssemblyError::InvalidPath(format!("path ends at {p}, expected {target}"))),
            None if target.is_basic() => Ok(()),
            None => Err(AssemblyError::InvalidPath(format!("empty path cannot build {target}"))),
        }
    }

    /// Applies a symbol relabeling to every operand and product.
    pub fn map_symbols(&self, f: impl Fn(Symbol) -> Symbol) -> Self {
        let map_ref = |r: ObjectRef| match r {
            ObjectRef::Basic(s) => ObjectRef::Basic(f(s)),
            step => step,
        };
        let steps = self
            .steps
            .iter()
            .map(|st| JoinStep {
                left: map_ref(st.left),
                right: map_ref(st.right),
                product: st.product.map_symbols(&f),
            })
            .collect();
        Self { steps }
    }

    fn describe(&self, r: ObjectRef) -> String {
        match r {
            ObjectRef::Basic(s) => s.to_string(),
            ObjectRef::Step(i) => self.steps[i].product.to_string(),
        }
    }
}

impl fmt::Display for AssemblyPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, step) in self.steps.iter().enumerate() {
            writeln!(
                f,
                "{:>3}: {} + {} = {}",
                i + 1,
                self.describe(step.left),
                self.describe(step.right),
                step.product
            )?;
        }
        Ok(())
    }
}

/// `2^k` copies of `sym` together with the `k`-step doubling path.
pub fn doubling_string(k: u32, sym: Symbol) -> (AssemblyString, AssemblyPath) {
    let mut path = AssemblyPath::new();
    let mut last = ObjectRef::Basic(sym);
    for _ in 0..k {
        let i = path.push(last, last).expect("refs precede the step");
        last = ObjectRef::Step(i);
    }
    let s = AssemblyString::repeat(sym, 1usize << k).expect("non-empty");
    (s, path)
}
