//! Finite semigroups given by Cayley tables, and their involutive morphisms.
//!
//! Elements are the dense indices `0..n`; `table[x][y]` is the product `x·y`.
//! Every structural question (center, powers, morphism laws) is answered from
//! the table alone.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest order for which involutive morphisms are enumerated by brute force.
pub const MAX_MORPHISM_ORDER: usize = 8;

/// Largest order accepted by [`enumerate_all_semigroups`].
pub const MAX_ENUMERATION_ORDER: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSemigroup {
    n: usize,
    table: Vec<usize>,
    name: Option<String>,
    identity: Option<usize>,
}

impl FiniteSemigroup {
    /// Validates a Cayley table; see [`validate_semigroup`].
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        validate_semigroup(table)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn identity(&self) -> Option<usize> {
        self.identity
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.n + y]
    }

    /// `x·y·z`, associated either way.
    #[inline]
    pub fn mul3(&self, x: usize, y: usize, z: usize) -> usize {
        self.mul(self.mul(x, y), z)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    pub fn is_commutative(&self) -> bool {
        self.elements()
            .all(|x| self.elements().all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn is_central(&self, z: usize) -> bool {
        z < self.n && self.elements().all(|x| self.mul(z, x) == self.mul(x, z))
    }

    /// `x^k` for `k ≥ 1`.
    pub fn pow(&self, x: usize, k: usize) -> usize {
        assert!(k >= 1, "semigroup powers start at 1");
        (1..k).fold(x, |acc, _| self.mul(acc, x))
    }
}

/// Checks a square table for range and associativity and detects an identity.
///
/// Triples are scanned in lexicographic order, so a `NotAssociative` error
/// always names the first failing `(x, y, z)`.
pub fn validate_semigroup(table: Vec<Vec<usize>>) -> Result<FiniteSemigroup> {
    let n = table.len();
    if n == 0 {
        return Err(Error::EmptyTable);
    }
    for (row, entries) in table.iter().enumerate() {
        if entries.len() != n {
            return Err(Error::NotSquare {
                row,
                len: entries.len(),
                n,
            });
        }
        for (y, &value) in entries.iter().enumerate() {
            if value >= n {
                return Err(Error::EntryOutOfRange { x: row, y, value, n });
            }
        }
    }
    let flat: Vec<usize> = table.into_iter().flatten().collect();
    check_associative(n, &flat)?;
    Ok(from_flat_unchecked(n, flat))
}

fn check_associative(n: usize, flat: &[usize]) -> Result<()> {
    let mul = |a: usize, b: usize| flat[a * n + b];
    for x in 0..n {
        for y in 0..n {
            let xy = mul(x, y);
            for z in 0..n {
                if mul(xy, z) != mul(x, mul(y, z)) {
                    return Err(Error::NotAssociative { x, y, z });
                }
            }
        }
    }
    Ok(())
}

fn from_flat_unchecked(n: usize, table: Vec<usize>) -> FiniteSemigroup {
    let identity = (0..n).find(|&e| (0..n).all(|x| table[e * n + x] == x && table[x * n + e] == x));
    FiniteSemigroup {
        n,
        table,
        name: None,
        identity,
    }
}

/// Elements commuting with every element, in increasing order.
pub fn center(s: &FiniteSemigroup) -> Vec<usize> {
    s.elements().filter(|&z| s.is_central(z)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MorphismKind {
    #[serde(rename = "auto")]
    Automorphism,
    #[serde(rename = "anti")]
    AntiAutomorphism,
}

impl MorphismKind {
    pub fn label(self) -> &'static str {
        match self {
            MorphismKind::Automorphism => "automorphism",
            MorphismKind::AntiAutomorphism => "anti-automorphism",
        }
    }
}

impl fmt::Display for MorphismKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// An involutive automorphism or anti-automorphism `σ` of a semigroup.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InvolutiveMorphism {
    map: Vec<usize>,
    kind: MorphismKind,
}

impl InvolutiveMorphism {
    /// Validates `map` against `s`: permutation, `σ∘σ = id`, and the structure
    /// law of `kind` on every pair.
    pub fn new(s: &FiniteSemigroup, map: Vec<usize>, kind: MorphismKind) -> Result<Self> {
        let n = s.order();
        if map.len() != n {
            return Err(Error::MapLength { len: map.len(), n });
        }
        let mut seen = vec![false; n];
        for &m in &map {
            if m >= n || seen[m] {
                return Err(Error::NotPermutation(m));
            }
            seen[m] = true;
        }
        if let Some(x) = (0..n).find(|&x| map[map[x]] != x) {
            return Err(Error::NotInvolutive(x));
        }
        if let Some((x, y)) = first_law_failure(s, &map, kind) {
            return Err(Error::NotMorphism {
                kind: kind.label(),
                x,
                y,
            });
        }
        Ok(Self { map, kind })
    }

    pub fn identity(n: usize, kind: MorphismKind) -> Self {
        Self {
            map: (0..n).collect(),
            kind,
        }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn kind(&self) -> MorphismKind {
        self.kind
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &m)| i == m)
    }

    pub fn fixed_points(&self) -> impl Iterator<Item = usize> + '_ {
        self.map.iter().enumerate().filter(|(i, m)| i == *m).map(|(i, _)| i)
    }
}

fn first_law_failure(s: &FiniteSemigroup, map: &[usize], kind: MorphismKind) -> Option<(usize, usize)> {
    for x in s.elements() {
        for y in s.elements() {
            let image = map[s.mul(x, y)];
            let expected = match kind {
                MorphismKind::Automorphism => s.mul(map[x], map[y]),
                MorphismKind::AntiAutomorphism => s.mul(map[y], map[x]),
            };
            if image != expected {
                return Some((x, y));
            }
        }
    }
    None
}

/// All involutive morphisms of the requested kind, maps in lexicographic order.
///
/// Brute force over all `n!` permutations; orders above
/// [`MAX_MORPHISM_ORDER`] are rejected.
pub fn enumerate_involutive_morphisms(
    s: &FiniteSemigroup,
    kind: MorphismKind,
) -> Result<Vec<InvolutiveMorphism>> {
    let n = s.order();
    if n > MAX_MORPHISM_ORDER {
        return Err(Error::TooLarge {
            what: "morphism enumeration",
            n,
            max: MAX_MORPHISM_ORDER,
        });
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    loop {
        let involutive = (0..n).all(|x| perm[perm[x]] == x);
        if involutive && first_law_failure(s, &perm, kind).is_none() {
            out.push(InvolutiveMorphism {
                map: perm.clone(),
                kind,
            });
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(out)
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Eventual cycle of the powers `x, x², x³, …`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ElementOrbit {
    pub element: usize,
    /// Smallest `k ≥ 1` with `x^k` on the cycle.
    pub index_k: usize,
    /// Length of the cycle.
    pub period_p: usize,
}

pub fn index_period(s: &FiniteSemigroup, x: usize) -> ElementOrbit {
    // first_seen[e] = exponent at which power e first appeared
    let mut first_seen = vec![0usize; s.order()];
    let mut power = x;
    let mut k = 1;
    loop {
        if first_seen[power] != 0 {
            let index_k = first_seen[power];
            return ElementOrbit {
                element: x,
                index_k,
                period_p: k - index_k,
            };
        }
        first_seen[power] = k;
        power = s.mul(power, x);
        k += 1;
    }
}

/// Standard fixture families with a fixed element ordering.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// `Z/n` under addition; element `k` is the residue `k`, identity `0`.
    CyclicGroup(usize),
    /// `x·y = 0` for all `x, y`.
    NullSemigroup(usize),
    /// `x·y = x`.
    LeftZero(usize),
    /// `x·y = y`.
    RightZero(usize),
    /// Permutations of `{0,1,2}` in lexicographic order of their one-line
    /// notation (`0 = [0,1,2]`, `1 = [0,2,1]`, `2 = [1,0,2]`, `3 = [1,2,0]`,
    /// `4 = [2,0,1]`, `5 = [2,1,0]`), with `(p·q)(i) = p(q(i))`.
    /// Transpositions are `1, 2, 5`; 3-cycles are `3, 4`.
    SymmetricGroup3,
    /// Pairs `(a, b)` encoded as `a·|B| + b`, componentwise product.
    DirectProduct(Box<FiniteSemigroup>, Box<FiniteSemigroup>),
}

pub fn build_standard(family: Family) -> Result<FiniteSemigroup> {
    let positive = |n: usize| {
        if n == 0 {
            Err(Error::BadParams("order must be at least 1".into()))
        } else {
            Ok(n)
        }
    };
    let (name, n, table): (String, usize, Vec<usize>) = match family {
        Family::CyclicGroup(n) => {
            let n = positive(n)?;
            let t = (0..n * n).map(|i| (i / n + i % n) % n).collect();
            (format!("C{n}"), n, t)
        }
        Family::NullSemigroup(n) => {
            let n = positive(n)?;
            (format!("Null{n}"), n, vec![0; n * n])
        }
        Family::LeftZero(n) => {
            let n = positive(n)?;
            (format!("LeftZero{n}"), n, (0..n * n).map(|i| i / n).collect())
        }
        Family::RightZero(n) => {
            let n = positive(n)?;
            (format!("RightZero{n}"), n, (0..n * n).map(|i| i % n).collect())
        }
        Family::SymmetricGroup3 => {
            let perms: [[usize; 3]; 6] = [
                [0, 1, 2],
                [0, 2, 1],
                [1, 0, 2],
                [1, 2, 0],
                [2, 0, 1],
                [2, 1, 0],
            ];
            let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
            let mut t = Vec::with_capacity(36);
            for p in &perms {
                for q in &perms {
                    t.push(index([p[q[0]], p[q[1]], p[q[2]]]));
                }
            }
            ("S3".to_string(), 6, t)
        }
        Family::DirectProduct(a, b) => {
            let (na, nb) = (a.order(), b.order());
            let n = na * nb;
            let mut t = Vec::with_capacity(n * n);
            for x in 0..n {
                for y in 0..n {
                    t.push(a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb));
                }
            }
            let label = |s: &FiniteSemigroup| s.name().unwrap_or("S").to_string();
            (format!("{}x{}", label(&a), label(&b)), n, t)
        }
    };
    debug_assert!(check_associative(n, &table).is_ok());
    Ok(from_flat_unchecked(n, table).with_name(name))
}

/// Iterator over every associative labeled table of order `n`, in
/// lexicographic order of the row-major table.
#[derive(Debug, Clone)]
pub struct SemigroupEnumerator {
    n: usize,
    digits: Option<Vec<usize>>,
}

impl Iterator for SemigroupEnumerator {
    type Item = FiniteSemigroup;

    fn next(&mut self) -> Option<FiniteSemigroup> {
        let n = self.n;
        loop {
            let digits = self.digits.as_mut()?;
            let candidate = digits.clone();
            // advance the odometer, least significant digit last
            let mut carry = true;
            for d in digits.iter_mut().rev() {
                *d += 1;
                if *d < n {
                    carry = false;
                    break;
                }
                *d = 0;
            }
            if carry {
                self.digits = None;
            }
            if check_associative(n, &candidate).is_ok() {
                return Some(from_flat_unchecked(n, candidate));
            }
        }
    }
}

pub fn enumerate_all_semigroups(n: usize) -> Result<SemigroupEnumerator> {
    if n == 0 {
        return Err(Error::BadParams("order must be at least 1".into()));
    }
    if n > MAX_ENUMERATION_ORDER {
        return Err(Error::TooLarge {
            what: "semigroup enumeration",
            n,
            max: MAX_ENUMERATION_ORDER,
        });
    }
    Ok(SemigroupEnumerator {
        n,
        digits: Some(vec![0; n * n]),
    })
}
