//! Finite linear combinations of Dirac measures and the integral transforms
//! the equations are written in.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::{Complex64, ScalarFunction, ToleranceConfig, ZERO};
use crate::semigroup::{FiniteSemigroup, InvolutiveMorphism};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub point: usize,
    pub weight: Complex64,
}

/// `Σᵢ wᵢ δ_{zᵢ}` with pairwise distinct points, sorted by point.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DiracMeasure {
    atoms: Vec<Atom>,
}

impl DiracMeasure {
    /// Repeated points are merged by adding their weights.
    pub fn new(atoms: impl IntoIterator<Item = (usize, Complex64)>) -> Result<Self> {
        let mut merged: BTreeMap<usize, Complex64> = BTreeMap::new();
        for (point, weight) in atoms {
            if !weight.is_finite() {
                return Err(Error::NonFinite("measure weights"));
            }
            *merged.entry(point).or_insert(ZERO) += weight;
        }
        Ok(Self {
            atoms: merged
                .into_iter()
                .map(|(point, weight)| Atom { point, weight })
                .collect(),
        })
    }

    /// Unit mass at `z`.
    pub fn dirac(z: usize) -> Self {
        Self {
            atoms: vec![Atom {
                point: z,
                weight: Complex64::new(1.0, 0.0),
            }],
        }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn weight_at(&self, point: usize) -> Complex64 {
        self.atoms
            .iter()
            .find(|a| a.point == point)
            .map_or(ZERO, |a| a.weight)
    }

    pub fn total_mass(&self) -> Complex64 {
        self.atoms.iter().map(|a| a.weight).sum()
    }

    pub fn check_on(&self, s: &FiniteSemigroup) -> Result<()> {
        self.check_points(s.order())
    }

    fn check_points(&self, n: usize) -> Result<()> {
        match self.atoms.iter().find(|a| a.point >= n) {
            Some(a) => Err(Error::PointOutOfRange { point: a.point, n }),
            None => Ok(()),
        }
    }
}

/// Total variation `Σᵢ |wᵢ|`.
pub fn measure_norm(mu: &DiracMeasure) -> f64 {
    mu.atoms.iter().map(|a| a.weight.norm()).sum()
}

/// `∫ f dμ = Σᵢ wᵢ f(zᵢ)`.
pub fn integrate(f: &ScalarFunction, mu: &DiracMeasure) -> Result<Complex64> {
    mu.check_points(f.len())?;
    Ok(mu.atoms.iter().map(|a| a.weight * f[a.point]).sum())
}

/// `x ↦ Σᵢ wᵢ f(x·zᵢ)`.
pub fn right_transform(
    s: &FiniteSemigroup,
    f: &ScalarFunction,
    mu: &DiracMeasure,
) -> Result<ScalarFunction> {
    f.check_on(s)?;
    mu.check_on(s)?;
    Ok(ScalarFunction::from_fn(s.order(), |x| {
        mu.atoms.iter().map(|a| a.weight * f[s.mul(x, a.point)]).sum()
    }))
}

/// `Σᵢ wᵢ f(x·zᵢ·y)`.
pub fn middle_transform(
    s: &FiniteSemigroup,
    f: &ScalarFunction,
    upsilon: &DiracMeasure,
    x: usize,
    y: usize,
) -> Result<Complex64> {
    f.check_on(s)?;
    upsilon.check_on(s)?;
    Ok(upsilon
        .atoms
        .iter()
        .map(|a| a.weight * f[s.mul3(x, a.point, y)])
        .sum())
}

/// Image measure: atoms moved to `m(zᵢ)`, merged on collision.
pub fn pushforward(mu: &DiracMeasure, m: &InvolutiveMorphism) -> DiracMeasure {
    DiracMeasure::new(mu.atoms.iter().map(|a| (m.apply(a.point), a.weight)))
        .expect("weights were already finite")
}

pub fn is_sigma_invariant(mu: &DiracMeasure, m: &InvolutiveMorphism, tol: &ToleranceConfig) -> bool {
    let image = pushforward(mu, m);
    let points: std::collections::BTreeSet<usize> = mu
        .atoms
        .iter()
        .chain(&image.atoms)
        .map(|a| a.point)
        .collect();
    points
        .into_iter()
        .all(|p| (image.weight_at(p) - mu.weight_at(p)).norm() <= tol.eq_tol)
}

pub fn support_in_center(mu: &DiracMeasure, s: &FiniteSemigroup) -> bool {
    first_non_central(mu, s).is_none()
}

pub(crate) fn first_non_central(mu: &DiracMeasure, s: &FiniteSemigroup) -> Option<usize> {
    mu.atoms.iter().map(|a| a.point).find(|&z| !s.is_central(z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;
    use crate::semigroup::{build_standard, Family, MorphismKind};

    fn c4() -> FiniteSemigroup {
        build_standard(Family::CyclicGroup(4)).unwrap()
    }

    fn neg(s: &FiniteSemigroup) -> InvolutiveMorphism {
        InvolutiveMorphism::new(s, vec![0, 3, 2, 1], MorphismKind::Automorphism).unwrap()
    }

    fn half_half() -> DiracMeasure {
        DiracMeasure::new([(1, c(0.5, 0.0)), (3, c(0.5, 0.0))]).unwrap()
    }

    fn sine() -> ScalarFunction {
        ScalarFunction::from_real(&[0.0, 1.0, 0.0, -1.0])
    }

    #[test]
    fn norms() {
        assert_eq!(measure_norm(&DiracMeasure::dirac(1)), 1.0);
        assert_eq!(measure_norm(&DiracMeasure::new([(0, c(3.0, -4.0))]).unwrap()), 5.0);
        let m = DiracMeasure::new([(1, c(0.5, 0.0)), (3, c(-0.5, 0.0))]).unwrap();
        assert_eq!(measure_norm(&m), 1.0);
    }

    #[test]
    fn duplicates_merge() {
        let m = DiracMeasure::new([(2, c(1.0, 0.0)), (0, c(1.0, 1.0)), (2, c(0.5, 0.0))]).unwrap();
        assert_eq!(m.atoms().len(), 2);
        assert_eq!(m.weight_at(2), c(1.5, 0.0));
        assert_eq!(m.atoms()[0].point, 0);
    }

    #[test]
    fn integrals() {
        assert_eq!(integrate(&sine(), &DiracMeasure::dirac(1)).unwrap(), c(1.0, 0.0));
        let ones = ScalarFunction::from_real(&[1.0; 4]);
        assert_eq!(integrate(&ones, &half_half()).unwrap(), c(1.0, 0.0));
        assert_eq!(integrate(&sine(), &half_half()).unwrap(), c(0.0, 0.0));
        assert!(matches!(
            integrate(&sine(), &DiracMeasure::dirac(7)),
            Err(Error::PointOutOfRange { point: 7, n: 4 })
        ));
    }

    #[test]
    fn right_translations() {
        let s = c4();
        let shifted = right_transform(&s, &sine(), &DiracMeasure::dirac(1)).unwrap();
        assert_eq!(shifted, ScalarFunction::from_real(&[1.0, 0.0, -1.0, 0.0]));
        let by_two = right_transform(&s, &sine(), &DiracMeasure::dirac(2)).unwrap();
        assert_eq!(by_two, ScalarFunction::from_real(&[0.0, -1.0, 0.0, 1.0]));
        let same = right_transform(&s, &sine(), &DiracMeasure::dirac(0)).unwrap();
        assert_eq!(same, sine());
    }

    #[test]
    fn middle_translations() {
        let s = c4();
        let cosine = ScalarFunction::from_real(&[1.0, 0.0, -1.0, 0.0]);
        assert_eq!(
            middle_transform(&s, &cosine, &DiracMeasure::dirac(0), 1, 1).unwrap(),
            c(-1.0, 0.0)
        );
        assert_eq!(middle_transform(&s, &sine(), &half_half(), 0, 0).unwrap(), c(0.0, 0.0));
        let s3 = build_standard(Family::SymmetricGroup3).unwrap();
        let ones = ScalarFunction::from_real(&[1.0; 6]);
        let mu = DiracMeasure::new([(1, c(0.25, 0.5)), (4, c(0.75, -0.5))]).unwrap();
        for x in 0..6 {
            for y in 0..6 {
                let v = middle_transform(&s3, &ones, &mu, x, y).unwrap();
                assert!((v - c(1.0, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn pushforwards_and_invariance() {
        let s = c4();
        let sigma = neg(&s);
        let tol = ToleranceConfig::default();
        assert_eq!(pushforward(&DiracMeasure::dirac(1), &sigma), DiracMeasure::dirac(3));
        assert_eq!(pushforward(&DiracMeasure::dirac(2), &sigma), DiracMeasure::dirac(2));
        assert_eq!(pushforward(&half_half(), &sigma), half_half());
        assert!(!is_sigma_invariant(&DiracMeasure::dirac(1), &sigma, &tol));
        assert!(is_sigma_invariant(&half_half(), &sigma, &tol));
        let id = InvolutiveMorphism::identity(4, MorphismKind::Automorphism);
        assert!(is_sigma_invariant(&DiracMeasure::dirac(1), &id, &tol));
    }

    #[test]
    fn central_support() {
        let s = c4();
        assert!(support_in_center(&half_half(), &s));
        let s3 = build_standard(Family::SymmetricGroup3).unwrap();
        assert!(support_in_center(&DiracMeasure::dirac(0), &s3));
        assert!(!support_in_center(&DiracMeasure::dirac(1), &s3));
    }
}
