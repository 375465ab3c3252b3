//! Ready-made inputs: the cyclic group of order 4 with negation, the two
//! measures used throughout, the discrete sine and cosine, and a few small
//! semigroups without the group structure.

use crate::measure::DiracMeasure;
use crate::scalar::{c, ScalarFunction};
use crate::semigroup::{build_standard, Family, FiniteSemigroup, InvolutiveMorphism, MorphismKind};
use crate::wire::{to_json, FunctionJson, MeasureJson, MorphismJson, SemigroupJson};

pub fn c4() -> FiniteSemigroup {
    build_standard(Family::CyclicGroup(4)).expect("order is positive")
}

/// `x ↦ −x` on `C4`.
pub fn c4_negation() -> InvolutiveMorphism {
    InvolutiveMorphism::new(&c4(), vec![0, 3, 2, 1], MorphismKind::Automorphism).expect("negation is an automorphism")
}

/// `δ₁`.
pub fn c4_unit_mass() -> DiracMeasure {
    DiracMeasure::dirac(1)
}

/// `½δ₁ + ½δ₃`, invariant under negation.
pub fn c4_upsilon() -> DiracMeasure {
    DiracMeasure::new([(1, c(0.5, 0.0)), (3, c(0.5, 0.0))]).expect("weights are finite")
}

pub fn sine() -> ScalarFunction {
    ScalarFunction::from_real(&[0.0, 1.0, 0.0, -1.0])
}

pub fn cosine() -> ScalarFunction {
    ScalarFunction::from_real(&[1.0, 0.0, -1.0, 0.0])
}

pub fn s3() -> FiniteSemigroup {
    build_standard(Family::SymmetricGroup3).expect("fixed construction")
}

/// `x ↦ x⁻¹` on `S3`, an involutive anti-automorphism.
pub fn s3_inversion() -> InvolutiveMorphism {
    let s = s3();
    let e = s.identity().expect("S3 has an identity");
    let map = (0..6)
        .map(|x| (0..6).find(|&y| s.mul(x, y) == e).expect("groups have inverses"))
        .collect();
    InvolutiveMorphism::new(&s, map, MorphismKind::AntiAutomorphism).expect("inversion is an anti-automorphism")
}

/// Conjugation by the transposition swapping 1 and 2.
pub fn s3_conjugation() -> InvolutiveMorphism {
    let s = s3();
    let map = (0..6).map(|x| s.mul(s.mul(1, x), 1)).collect();
    InvolutiveMorphism::new(&s, map, MorphismKind::Automorphism).expect("conjugation is an automorphism")
}

pub fn null2() -> FiniteSemigroup {
    build_standard(Family::NullSemigroup(2)).expect("order is positive")
}

pub fn left_zero2() -> FiniteSemigroup {
    build_standard(Family::LeftZero(2)).expect("order is positive")
}

/// Every fixture as `(file name, JSON text)`.
pub fn files() -> Vec<(&'static str, String)> {
    let sg = |s: FiniteSemigroup| to_json(&SemigroupJson::from(&s));
    let morphism = |m: InvolutiveMorphism| to_json(&MorphismJson::from(&m));
    let measure = |m: DiracMeasure| to_json(&MeasureJson::from(&m));
    let function = |f: ScalarFunction| to_json(&FunctionJson::from(&f));
    vec![
        ("c4.json", sg(c4())),
        ("c4_negation.json", morphism(c4_negation())),
        ("c4_identity.json", morphism(InvolutiveMorphism::identity(4, MorphismKind::Automorphism))),
        ("c4_mu.json", measure(c4_unit_mass())),
        ("c4_upsilon.json", measure(c4_upsilon())),
        ("c4_sine.json", function(sine())),
        ("c4_cosine.json", function(cosine())),
        ("s3.json", sg(s3())),
        ("s3_inversion.json", morphism(s3_inversion())),
        ("s3_conjugation.json", morphism(s3_conjugation())),
        ("null2.json", sg(null2())),
        ("leftzero2.json", sg(left_zero2())),
    ]
}
