//! Closed-form solution sets built from the characters of `S`.
//!
//! Every candidate is checked by the residual engine before it is admitted,
//! and candidates that coincide within `dedup_tol` are kept once (the first
//! generating character in canonical order is recorded).

mod oracle;

pub use oracle::{compare_roots, newton_oracle, OracleConfig, OracleRoot, RootComparison};

use serde::Serialize;

use crate::characters::{character_to_scalar, compose_sigma, enumerate_characters, Character};
use crate::engine::{
    residual_corollary_form, residual_dalembert_variant, residual_integral_dalembert,
    residual_spherical, residual_spherical_right, residual_vanvleck, EquationTag, ResidualReport,
};
use crate::error::{Error, Result};
use crate::measure::{first_non_central, integrate, is_sigma_invariant, measure_norm, DiracMeasure};
use crate::scalar::{Complex64, RootValue, ScalarFunction, ToleranceConfig};
use crate::semigroup::{FiniteSemigroup, InvolutiveMorphism, MorphismKind};

pub mod formula {
    pub const VANVLECK: &str = "(chi∘sigma - chi)/2 * ∫chi dmu";
    pub const VANVLECK_POINT: &str = "chi(z0) * (chi∘sigma - chi)/2";
    pub const DALEMBERT: &str = "(chi + chi∘sigma)/2";
    pub const SPHERICAL: &str = "chi * ∫chi dupsilon";
    pub const COROLLARY33: &str = "(chi + chi∘sigma)/2 * ∫chi dupsilon";
}

#[derive(Debug, Clone, PartialEq)]
pub struct Provenance {
    pub chi: Character,
    pub formula: &'static str,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub f: ScalarFunction,
    pub provenance: Provenance,
    /// Engine residual of `f` for the set's equation.
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Warning {
    /// `‖μ‖ = 0`: the equation reduces to `f(x)f(y) = 0`.
    DegenerateMeasure,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolutionSet {
    pub equation: EquationTag,
    pub solutions: Vec<Solution>,
    pub sigma: Option<InvolutiveMorphism>,
    pub measure: Option<DiracMeasure>,
    pub warnings: Vec<Warning>,
}

impl SolutionSet {
    fn empty(equation: EquationTag, sigma: Option<&InvolutiveMorphism>, measure: Option<&DiracMeasure>) -> Self {
        Self {
            equation,
            solutions: Vec::new(),
            sigma: sigma.cloned(),
            measure: measure.cloned(),
            warnings: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.solutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    pub fn functions(&self) -> impl Iterator<Item = &ScalarFunction> {
        self.solutions.iter().map(|s| &s.f)
    }

    pub fn contains(&self, f: &ScalarFunction, tol: f64) -> bool {
        self.functions().any(|g| g.sup_distance(f) <= tol)
    }

    /// Admits `f` unless it is zero or a duplicate; fails if the engine does
    /// not confirm it.
    fn admit(
        &mut self,
        index: usize,
        chi: Character,
        formula: &'static str,
        f: ScalarFunction,
        tol: &ToleranceConfig,
        verify: impl FnOnce(&ScalarFunction) -> Result<f64>,
    ) -> Result<()> {
        if f.is_zero(tol.eq_tol) || self.contains(&f, tol.dedup_tol) {
            return Ok(());
        }
        let residual = verify(&f)?;
        if residual > tol.eq_tol {
            return Err(Error::UnverifiedSolution { index, residual });
        }
        self.solutions.push(Solution {
            f,
            provenance: Provenance { chi, formula },
            residual,
        });
        Ok(())
    }
}

fn check_sigma(s: &FiniteSemigroup, sigma: &InvolutiveMorphism) -> Result<()> {
    if sigma.map().len() == s.order() {
        Ok(())
    } else {
        Err(Error::MapLength {
            len: sigma.map().len(),
            n: s.order(),
        })
    }
}

fn require_central(s: &FiniteSemigroup, mu: &DiracMeasure) -> Result<()> {
    match first_non_central(mu, s) {
        Some(z) => Err(Error::NonCentralSupport(z)),
        None => Ok(()),
    }
}

fn require_automorphism(sigma: &InvolutiveMorphism) -> Result<()> {
    match sigma.kind() {
        MorphismKind::Automorphism => Ok(()),
        MorphismKind::AntiAutomorphism => Err(Error::WrongMorphismKind {
            expected: MorphismKind::Automorphism.label(),
        }),
    }
}

/// Characters with their float values and the values of `χ∘σ`.
fn character_data(
    s: &FiniteSemigroup,
    sigma: Option<&InvolutiveMorphism>,
) -> Vec<(Character, ScalarFunction, ScalarFunction)> {
    enumerate_characters(s)
        .into_iter()
        .map(|chi| {
            let values = character_to_scalar(&chi);
            let composed = sigma.map_or_else(|| values.clone(), |m| values.compose(m));
            (chi, values, composed)
        })
        .collect()
}

/// Nonzero solutions of the Van Vleck type equation with central `μ`:
/// `f = (χ∘σ − χ)/2 · ∫χ dμ` over characters with `∫χ dμ ≠ 0` and
/// `∫χ∘σ dμ = −∫χ dμ`.
pub fn solve_vanvleck(
    s: &FiniteSemigroup,
    sigma: &InvolutiveMorphism,
    mu: &DiracMeasure,
    tol: &ToleranceConfig,
) -> Result<SolutionSet> {
    check_sigma(s, sigma)?;
    mu.check_on(s)?;
    require_central(s, mu)?;
    let mut set = SolutionSet::empty(EquationTag::Vanvleck, Some(sigma), Some(mu));
    if measure_norm(mu) <= tol.eq_tol {
        set.warnings.push(Warning::DegenerateMeasure);
        return Ok(set);
    }
    for (index, (chi, values, composed)) in character_data(s, Some(sigma)).into_iter().enumerate() {
        let int_chi = integrate(&values, mu)?;
        let int_composed = integrate(&composed, mu)?;
        if int_chi.norm() <= tol.eq_tol || (int_composed + int_chi).norm() > tol.eq_tol {
            continue;
        }
        let f = (&composed - &values).scale(int_chi / 2.0);
        set.admit(index, chi, formula::VANVLECK, f, tol, |f| {
            Ok(residual_vanvleck(s, f, sigma, mu)?.max_abs)
        })?;
    }
    Ok(set)
}

/// Point-mass specialization on a monoid, decided in exact arithmetic:
/// `f = χ(z₀)(χ∘σ − χ)/2` with `χ(z₀) ≠ 0` and `χ(σ(z₀)) = −χ(z₀)`.
///
/// The result is cross-checked against [`solve_vanvleck`] with `μ = δ_{z₀}`.
pub fn solve_corollary24(
    s: &FiniteSemigroup,
    sigma: &InvolutiveMorphism,
    z0: usize,
    tol: &ToleranceConfig,
) -> Result<SolutionSet> {
    check_sigma(s, sigma)?;
    if s.identity().is_none() {
        return Err(Error::NotAMonoid);
    }
    require_automorphism(sigma)?;
    if !s.is_central(z0) {
        return Err(Error::NotCentral(z0));
    }
    let mu = DiracMeasure::dirac(z0);
    let minus_one = RootValue::root(1, 2)?;
    let mut set = SolutionSet::empty(EquationTag::Vanvleck, Some(sigma), Some(&mu));
    for (index, chi) in enumerate_characters(s).into_iter().enumerate() {
        let at_z0 = chi.value(z0);
        if at_z0.is_zero() || chi.value(sigma.apply(z0)) != at_z0 * minus_one {
            continue;
        }
        let values = character_to_scalar(&chi);
        let composed = character_to_scalar(&compose_sigma(&chi, sigma));
        let f = (&composed - &values).scale(at_z0.to_complex() / 2.0);
        set.admit(index, chi, formula::VANVLECK_POINT, f, tol, |f| {
            Ok(residual_vanvleck(s, f, sigma, &mu)?.max_abs)
        })?;
    }

    let general = solve_vanvleck(s, sigma, &mu, tol)?;
    let agree = general.len() == set.len()
        && set
            .functions()
            .zip(general.functions())
            .all(|(a, b)| a.sup_distance(b) <= 1e-12);
    if !agree {
        return Err(Error::RouteMismatch(format!(
            "point-mass route found {} solutions, measure route {}",
            set.len(),
            general.len()
        )));
    }
    Ok(set)
}

/// `g = (χ + χ∘σ)/2` over all characters.
pub fn solve_dalembert_variant(
    s: &FiniteSemigroup,
    sigma: &InvolutiveMorphism,
    tol: &ToleranceConfig,
) -> Result<SolutionSet> {
    check_sigma(s, sigma)?;
    let mut set = SolutionSet::empty(EquationTag::DalembertVariant, Some(sigma), None);
    for (index, (chi, values, composed)) in character_data(s, Some(sigma)).into_iter().enumerate() {
        let g = (&values + &composed).scale(Complex64::new(0.5, 0.0));
        set.admit(index, chi, formula::DALEMBERT, g, tol, |g| {
            Ok(residual_dalembert_variant(s, g, sigma)?.max_abs)
        })?;
    }
    Ok(set)
}

/// `f = χ · ∫χ dυ` for characters with `∫χ dυ ≠ 0`; each is checked in both
/// the middle and the right-translated form of the spherical equation.
pub fn solve_spherical(
    s: &FiniteSemigroup,
    upsilon: &DiracMeasure,
    tol: &ToleranceConfig,
) -> Result<SolutionSet> {
    upsilon.check_on(s)?;
    let mut set = SolutionSet::empty(EquationTag::Spherical, None, Some(upsilon));
    if measure_norm(upsilon) <= tol.eq_tol {
        set.warnings.push(Warning::DegenerateMeasure);
        return Ok(set);
    }
    for (index, (chi, values, _)) in character_data(s, None).into_iter().enumerate() {
        let int_chi = integrate(&values, upsilon)?;
        if int_chi.norm() <= tol.eq_tol {
            continue;
        }
        let f = values.scale(int_chi);
        set.admit(index, chi, formula::SPHERICAL, f, tol, |f| {
            let middle = residual_spherical(s, f, upsilon)?.max_abs;
            let right = residual_spherical_right(s, f, upsilon)?.max_abs;
            Ok(middle.max(right))
        })?;
    }
    Ok(set)
}

/// `f = (χ + χ∘σ)/2 · ∫χ dυ` for a central, `σ`-invariant `υ` and an
/// automorphism `σ`.
pub fn solve_corollary33(
    s: &FiniteSemigroup,
    sigma: &InvolutiveMorphism,
    upsilon: &DiracMeasure,
    tol: &ToleranceConfig,
) -> Result<SolutionSet> {
    check_sigma(s, sigma)?;
    upsilon.check_on(s)?;
    require_automorphism(sigma)?;
    if !is_sigma_invariant(upsilon, sigma, tol) {
        return Err(Error::NotSigmaInvariant);
    }
    require_central(s, upsilon)?;
    let mut set = SolutionSet::empty(EquationTag::Corollary33, Some(sigma), Some(upsilon));
    if measure_norm(upsilon) <= tol.eq_tol {
        set.warnings.push(Warning::DegenerateMeasure);
        return Ok(set);
    }
    for (index, (chi, values, composed)) in character_data(s, Some(sigma)).into_iter().enumerate() {
        let int_chi = integrate(&values, upsilon)?;
        let f = (&values + &composed).scale(int_chi / 2.0);
        set.admit(index, chi, formula::COROLLARY33, f, tol, |f| {
            Ok(residual_corollary_form(s, f, sigma, upsilon, tol)?.max_abs)
        })?;
    }
    Ok(set)
}

/// Result of checking a user-supplied `ψ` and its symmetrization.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetrizedCheck {
    /// Residual of `ψ` in the spherical equation.
    pub spherical: ResidualReport,
    /// `(ψ + ψ∘σ)/2`.
    pub f: ScalarFunction,
    /// Residual of `f` in the two-sided integral d'Alembert equation.
    pub integral: ResidualReport,
}

impl SymmetrizedCheck {
    pub fn holds(&self, tol: f64) -> bool {
        self.spherical.max_abs <= tol && self.integral.max_abs <= tol
    }
}

/// Verifies that `ψ` is `υ`-spherical and that `(ψ + ψ∘σ)/2` solves the
/// two-sided integral d'Alembert equation. Works for non-central `υ`.
pub fn verify_symmetrized_spherical(
    s: &FiniteSemigroup,
    psi: &ScalarFunction,
    sigma: &InvolutiveMorphism,
    upsilon: &DiracMeasure,
    tol: &ToleranceConfig,
) -> Result<SymmetrizedCheck> {
    check_sigma(s, sigma)?;
    let spherical = residual_spherical(s, psi, upsilon)?;
    let f = (psi + &psi.compose(sigma)).scale(Complex64::new(0.5, 0.0));
    let integral = residual_integral_dalembert(s, &f, sigma, upsilon, tol)?;
    Ok(SymmetrizedCheck {
        spherical,
        f,
        integral,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;
    use crate::semigroup::{build_standard, Family};

    fn c4() -> FiniteSemigroup {
        build_standard(Family::CyclicGroup(4)).unwrap()
    }
    fn neg(s: &FiniteSemigroup) -> InvolutiveMorphism {
        InvolutiveMorphism::new(s, vec![0, 3, 2, 1], MorphismKind::Automorphism).unwrap()
    }
    fn id(n: usize) -> InvolutiveMorphism {
        InvolutiveMorphism::identity(n, MorphismKind::Automorphism)
    }
    fn half_half() -> DiracMeasure {
        DiracMeasure::new([(1, c(0.5, 0.0)), (3, c(0.5, 0.0))]).unwrap()
    }
    fn f(v: &[f64]) -> ScalarFunction {
        ScalarFunction::from_real(v)
    }
    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn discrete_sine_is_the_only_vanvleck_solution() {
        let s = c4();
        let set = solve_vanvleck(&s, &neg(&s), &DiracMeasure::dirac(1), &tol()).unwrap();
        assert_eq!(set.len(), 1);
        assert_eq!(set.solutions[0].f, f(&[0.0, 1.0, 0.0, -1.0]));
        assert_eq!(set.solutions[0].residual, 0.0);
        assert_eq!(set.solutions[0].provenance.chi.value(1), RootValue::root(1, 4).unwrap());
    }

    #[test]
    fn conjugate_character_yields_the_same_solution() {
        let s = c4();
        let sigma = neg(&s);
        let mu = DiracMeasure::dirac(1);
        for chi in enumerate_characters(&s) {
            let v = character_to_scalar(&chi);
            let vs = v.compose(&sigma);
            let i = integrate(&v, &mu).unwrap();
            let is = integrate(&vs, &mu).unwrap();
            if i.norm() > 1e-9 && (i + is).norm() <= 1e-9 {
                let from_chi = (&vs - &v).scale(i / 2.0);
                let from_composed = (&v - &vs).scale(is / 2.0);
                assert!(from_chi.sup_distance(&from_composed) <= 1e-12);
            }
        }
    }

    #[test]
    fn identity_sigma_gives_nothing() {
        let s = c4();
        assert!(solve_vanvleck(&s, &id(4), &DiracMeasure::dirac(1), &tol()).unwrap().is_empty());
        let null = build_standard(Family::NullSemigroup(2)).unwrap();
        assert!(solve_vanvleck(&null, &id(2), &DiracMeasure::dirac(0), &tol()).unwrap().is_empty());
    }

    #[test]
    fn zero_measure_is_degenerate() {
        let s = c4();
        let zero = DiracMeasure::new([(1, c(0.0, 0.0))]).unwrap();
        let set = solve_vanvleck(&s, &neg(&s), &zero, &tol()).unwrap();
        assert!(set.is_empty());
        assert_eq!(set.warnings, vec![Warning::DegenerateMeasure]);
        assert!(solve_spherical(&s, &DiracMeasure::default(), &tol()).unwrap().is_empty());
    }

    #[test]
    fn non_central_measure_is_rejected() {
        let s3 = build_standard(Family::SymmetricGroup3).unwrap();
        assert_eq!(
            solve_vanvleck(&s3, &id(6), &DiracMeasure::dirac(2), &tol()),
            Err(Error::NonCentralSupport(2))
        );
    }

    #[test]
    fn point_mass_route() {
        let s = c4();
        let set = solve_corollary24(&s, &neg(&s), 1, &tol()).unwrap();
        assert_eq!(set.len(), 1);
        assert_eq!(set.solutions[0].f, f(&[0.0, 1.0, 0.0, -1.0]));
        assert!(solve_corollary24(&s, &neg(&s), 2, &tol()).unwrap().is_empty());
        assert!(solve_corollary24(&s, &id(4), 1, &tol()).unwrap().is_empty());
        let lz = build_standard(Family::LeftZero(2)).unwrap();
        assert_eq!(solve_corollary24(&lz, &id(2), 0, &tol()), Err(Error::NotAMonoid));
        let s3 = build_standard(Family::SymmetricGroup3).unwrap();
        assert_eq!(solve_corollary24(&s3, &id(6), 1, &tol()), Err(Error::NotCentral(1)));
    }

    #[test]
    fn dalembert_variant_on_c4() {
        let s = c4();
        let set = solve_dalembert_variant(&s, &neg(&s), &tol()).unwrap();
        let expected = [f(&[1.0; 4]), f(&[1.0, -1.0, 1.0, -1.0]), f(&[1.0, 0.0, -1.0, 0.0])];
        assert_eq!(set.len(), 3);
        for e in &expected {
            assert!(set.contains(e, 1e-12));
        }
    }

    #[test]
    fn dalembert_variant_on_s3() {
        let s3 = build_standard(Family::SymmetricGroup3).unwrap();
        // conjugation by the transposition 1 = [0,2,1]
        let conj: Vec<usize> = (0..6).map(|x| s3.mul(s3.mul(1, x), 1)).collect();
        let sigma = InvolutiveMorphism::new(&s3, conj, MorphismKind::Automorphism).unwrap();
        let set = solve_dalembert_variant(&s3, &sigma, &tol()).unwrap();
        assert_eq!(set.len(), 2);
        assert!(set.contains(&f(&[1.0; 6]), 1e-12));
        assert!(set.contains(&f(&[1.0, -1.0, -1.0, 1.0, 1.0, -1.0]), 1e-12));
    }

    #[test]
    fn spherical_on_half_half() {
        let s = c4();
        let set = solve_spherical(&s, &half_half(), &tol()).unwrap();
        assert_eq!(set.len(), 2);
        assert!(set.contains(&f(&[1.0; 4]), 1e-12));
        assert!(set.contains(&f(&[-1.0, 1.0, -1.0, 1.0]), 1e-12));
        let at_identity = solve_spherical(&s, &DiracMeasure::dirac(0), &tol()).unwrap();
        assert_eq!(at_identity.len(), 4);
        for sol in &at_identity.solutions {
            assert_eq!(sol.f, character_to_scalar(&sol.provenance.chi));
        }
    }

    #[test]
    fn corollary33_on_half_half() {
        let s = c4();
        let set = solve_corollary33(&s, &neg(&s), &half_half(), &tol()).unwrap();
        assert_eq!(set.len(), 2);
        assert!(set.contains(&f(&[1.0; 4]), 1e-12));
        assert!(set.contains(&f(&[-1.0, 1.0, -1.0, 1.0]), 1e-12));
        let cosine = f(&[1.0, 0.0, -1.0, 0.0]);
        assert!(!set.contains(&cosine, 1e-6));
        let r = residual_corollary_form(&s, &cosine, &neg(&s), &half_half(), &tol()).unwrap();
        assert_eq!(r.max_abs, 2.0);
        for sol in &set.solutions {
            assert!(sol.f.sup_distance(&sol.f.compose(&neg(&s))) <= 1e-12);
        }
        let with_id = solve_corollary33(&s, &id(4), &DiracMeasure::dirac(0), &tol()).unwrap();
        assert_eq!(with_id.len(), 4);
    }

    #[test]
    fn corollary33_preconditions() {
        let s = c4();
        assert_eq!(
            solve_corollary33(&s, &neg(&s), &DiracMeasure::dirac(1), &tol()),
            Err(Error::NotSigmaInvariant)
        );
        let anti = InvolutiveMorphism::identity(4, MorphismKind::AntiAutomorphism);
        assert!(matches!(
            solve_corollary33(&s, &anti, &half_half(), &tol()),
            Err(Error::WrongMorphismKind { .. })
        ));
    }

    #[test]
    fn symmetrized_spherical_functions_solve_the_two_sided_equation() {
        let s = c4();
        for sol in solve_spherical(&s, &half_half(), &tol()).unwrap().solutions {
            let check = verify_symmetrized_spherical(&s, &sol.f, &neg(&s), &half_half(), &tol()).unwrap();
            assert!(check.holds(1e-12));
        }
        // non-central support on S3, with equal weight on the two transpositions swapped by sigma
        let s3 = build_standard(Family::SymmetricGroup3).unwrap();
        let conj: Vec<usize> = (0..6).map(|x| s3.mul(s3.mul(1, x), 1)).collect();
        let sigma = InvolutiveMorphism::new(&s3, conj, MorphismKind::Automorphism).unwrap();
        let upsilon = DiracMeasure::new([(1, c(0.5, 0.0)), (2, c(0.25, 0.0)), (5, c(0.25, 0.0))]).unwrap();
        assert!(is_sigma_invariant(&upsilon, &sigma, &tol()));
        for sol in solve_spherical(&s3, &upsilon, &tol()).unwrap().solutions {
            let check = verify_symmetrized_spherical(&s3, &sol.f, &sigma, &upsilon, &tol()).unwrap();
            assert!(check.holds(1e-12), "{check:?}");
        }
    }
}
