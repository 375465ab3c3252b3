//! Inputs shared by the benchmarks.

use feqlab_core::semigroup::{build_standard, Family};
use feqlab_core::{FiniteSemigroup, InvolutiveMorphism, MorphismKind};

/// `Z/n` with negation, the involution every benchmark uses.
pub fn cyclic_with_negation(n: usize) -> (FiniteSemigroup, InvolutiveMorphism) {
    let s = build_standard(Family::CyclicGroup(n)).expect("n is positive");
    let map = (0..n).map(|k| (n - k) % n).collect();
    let sigma = InvolutiveMorphism::new(&s, map, MorphismKind::Automorphism).expect("negation is involutive");
    (s, sigma)
}
