//! Nonzero multiplicative functions `χ: S → ℂ` with exact values.
//!
//! On a finite semigroup every such value is `0` or a root of unity. If `x`
//! has index `k` and period `p` then `x^{k+p} = x^k`, so
//! `χ(x)^k (χ(x)^p − 1) = 0`: either `χ(x) = 0` or `χ(x)` is a `p`-th root of
//! unity. The candidate set per element is therefore finite and the search is
//! exact.

use crate::error::{Error, Result};
use crate::scalar::{RootValue, ScalarFunction, ToleranceConfig};
use crate::semigroup::{index_period, FiniteSemigroup, InvolutiveMorphism};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    values: Vec<RootValue>,
}

impl Character {
    /// Checks multiplicativity exactly and rejects the zero function.
    pub fn new(s: &FiniteSemigroup, values: Vec<RootValue>) -> Result<Self> {
        if values.len() != s.order() {
            return Err(Error::CharacterLength {
                len: values.len(),
                n: s.order(),
            });
        }
        if values.iter().all(|v| v.is_zero()) {
            return Err(Error::ZeroCharacter);
        }
        for x in s.elements() {
            for y in s.elements() {
                if values[s.mul(x, y)] != values[x] * values[y] {
                    return Err(Error::NotMultiplicative { x, y });
                }
            }
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[RootValue] {
        &self.values
    }

    pub fn value(&self, x: usize) -> RootValue {
        self.values[x]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&v| v == RootValue::ONE)
    }
}

/// Every nonzero multiplicative function on `s`, sorted canonically.
pub fn enumerate_characters(s: &FiniteSemigroup) -> Vec<Character> {
    let candidates: Vec<Vec<RootValue>> = s
        .elements()
        .map(|x| {
            let p = index_period(s, x).period_p as u32;
            let mut c: Vec<RootValue> = std::iter::once(RootValue::Zero)
                .chain((0..p).map(|q| RootValue::root(q, p).expect("period is positive")))
                .collect();
            c.sort();
            c
        })
        .collect();
    let mut search = Search {
        s,
        candidates: &candidates,
        found: Vec::new(),
    };
    search.descend(vec![None; s.order()]);
    let mut found = search.found;
    found.sort();
    found.dedup();
    found
}

struct Search<'a> {
    s: &'a FiniteSemigroup,
    candidates: &'a [Vec<RootValue>],
    found: Vec<Character>,
}

impl Search<'_> {
    fn descend(&mut self, assignment: Vec<Option<RootValue>>) {
        // most constrained unassigned element first, lowest index on ties
        let next = (0..assignment.len())
            .filter(|&x| assignment[x].is_none())
            .min_by_key(|&x| (self.candidates[x].len(), x));
        let Some(x) = next else {
            let values: Vec<RootValue> = assignment.into_iter().map(Option::unwrap).collect();
            if values.iter().any(|v| !v.is_zero()) {
                self.found.push(Character { values });
            }
            return;
        };
        for &value in &self.candidates[x] {
            let mut trial = assignment.clone();
            trial[x] = Some(value);
            if self.propagate(&mut trial) {
                self.descend(trial);
            }
        }
    }

    /// Closes the partial assignment under forced products; `false` on conflict.
    fn propagate(&self, a: &mut [Option<RootValue>]) -> bool {
        let s = self.s;
        loop {
            let mut changed = false;
            for x in s.elements() {
                let Some(vx) = a[x] else { continue };
                for y in s.elements() {
                    let forced = match (vx, a[y]) {
                        (RootValue::Zero, _) => {
                            // a zero absorbs products on both sides
                            for target in [s.mul(x, y), s.mul(y, x)] {
                                match self.force(a, target, RootValue::Zero) {
                                    None => return false,
                                    Some(c) => changed |= c,
                                }
                            }
                            continue;
                        }
                        (_, Some(vy)) => vx * vy,
                        (_, None) => continue,
                    };
                    match self.force(a, s.mul(x, y), forced) {
                        None => return false,
                        Some(c) => changed |= c,
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    /// `Some(true)` if newly assigned, `Some(false)` if already consistent.
    fn force(&self, a: &mut [Option<RootValue>], target: usize, value: RootValue) -> Option<bool> {
        match a[target] {
            Some(existing) if existing == value => Some(false),
            Some(_) => None,
            None if self.candidates[target].contains(&value) => {
                a[target] = Some(value);
                Some(true)
            }
            None => None,
        }
    }
}

/// `|f(x·y) − f(x)f(y)| ≤ eq_tol` on every pair.
pub fn is_multiplicative(f: &ScalarFunction, s: &FiniteSemigroup, tol: &ToleranceConfig) -> bool {
    f.len() == s.order()
        && s.elements().all(|x| {
            s.elements()
                .all(|y| (f[s.mul(x, y)] - f[x] * f[y]).norm() <= tol.eq_tol)
        })
}

/// `χ∘σ`, again a character for either morphism kind since `ℂ` is commutative.
pub fn compose_sigma(chi: &Character, m: &InvolutiveMorphism) -> Character {
    Character {
        values: (0..chi.len()).map(|x| chi.values[m.apply(x)]).collect(),
    }
}

pub fn character_to_scalar(chi: &Character) -> ScalarFunction {
    ScalarFunction::from_fn(chi.len(), |x| chi.values[x].to_complex())
}
