//! Superstability of the Van Vleck type equation: the dichotomy bound,
//! random perturbation campaigns and the inequalities satisfied by
//! approximate solutions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::engine::residual_vanvleck;
use crate::error::{Error, Result};
use crate::measure::{first_non_central, integrate, measure_norm, DiracMeasure};
use crate::scalar::{Complex64, ScalarFunction, ToleranceConfig};
use crate::semigroup::{FiniteSemigroup, InvolutiveMorphism};
use crate::solvers::solve_vanvleck;

/// `(‖μ‖ + √(‖μ‖² + 2δ))/2`, the positive root of `2b² − 2‖μ‖b − δ = 0`.
pub fn superstability_bound(delta: f64, mu_norm: f64) -> f64 {
    (mu_norm + (mu_norm * mu_norm + 2.0 * delta).sqrt()) / 2.0
}

/// Smallest `δ` for which `f` satisfies the approximate equation.
pub fn measured_delta(
    s: &FiniteSemigroup,
    f: &ScalarFunction,
    sigma: &InvolutiveMorphism,
    mu: &DiracMeasure,
) -> Result<f64> {
    Ok(residual_vanvleck(s, f, sigma, mu)?.max_abs)
}

/// `f + η` with each `η(x)` uniform on the disk of the given radius.
pub fn perturb(f: &ScalarFunction, radius: f64, seed: u64) -> ScalarFunction {
    perturb_with(f, radius, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn perturb_with(f: &ScalarFunction, radius: f64, rng: &mut impl Rng) -> ScalarFunction {
    ScalarFunction::from_fn(f.len(), |x| {
        let rho = radius * rng.gen::<f64>().sqrt();
        let theta = std::f64::consts::TAU * rng.gen::<f64>();
        // keep |η| ≤ radius despite rounding in from_polar
        let eta = Complex64::from_polar(rho, theta);
        let eta = if eta.norm() > radius { eta * (radius / eta.norm()) } else { eta };
        f[x] + eta
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    ExactSolution,
    WithinBound,
    Violation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityTrial {
    pub base: ScalarFunction,
    pub radius: f64,
    pub seed: u64,
    pub measured_delta: f64,
    pub sup_f: f64,
    pub bound: f64,
    pub verdict: Verdict,
}

/// Measured `δ`, `sup |f|`, the bound at that `δ`, and the verdict.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dichotomy {
    pub delta: f64,
    pub sup_f: f64,
    pub bound: f64,
    pub verdict: Verdict,
}

pub fn check_dichotomy(
    s: &FiniteSemigroup,
    f: &ScalarFunction,
    sigma: &InvolutiveMorphism,
    mu: &DiracMeasure,
    tol: &ToleranceConfig,
) -> Result<Dichotomy> {
    let delta = measured_delta(s, f, sigma, mu)?;
    let sup_f = f.sup_norm();
    let bound = superstability_bound(delta, measure_norm(mu));
    let verdict = if delta <= tol.eq_tol {
        Verdict::ExactSolution
    } else if sup_f <= bound + tol.eq_tol {
        Verdict::WithinBound
    } else {
        Verdict::Violation
    };
    Ok(Dichotomy {
        delta,
        sup_f,
        bound,
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityItem {
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

pub mod inequality {
    /// `f∘σ = −f`
    pub const ODD_UNDER_SIGMA: &str = "odd_under_sigma";
    /// `|f(σ(x)y) + f(σ(y)x)| ≤ 3δ‖μ‖/|∫f dμ|`
    pub const CROSS_ODD: &str = "cross_odd";
    /// `|∫∫f(xσ(s)t)dμdμ − f(x)∫f dμ| ≤ δ‖μ‖/2`
    pub const DOUBLE_SIGMA_SHIFT: &str = "double_sigma_shift";
    /// `|∫∫f(xst)dμdμ + f(x)∫f dμ| ≤ 3δ‖μ‖/2`
    pub const DOUBLE_SHIFT: &str = "double_shift";
    /// `∫f dμ ≠ 0`
    pub const INTEGRAL_NONZERO: &str = "integral_nonzero";
    /// `∫f(xσ(s))dμ = ∫f(σ(x)σ(s))dμ`
    pub const SIGMA_SIGMA_SHIFT: &str = "sigma_sigma_shift";
    /// `|∫f(xs)dμ − ∫f(σ(x)s)dμ| ≤ 6δ‖μ‖²/|∫f dμ|`
    pub const SIGMA_SHIFT: &str = "sigma_shift";
    /// `|g(xy) + g(σ(y)x) − 2g(x)g(y)| ≤ 3δ‖μ‖²/|∫f dμ|²`
    pub const G_DALEMBERT: &str = "g_dalembert";
}

/// Evaluates the inequalities an approximate solution with defect `delta`
/// would satisfy if it were unbounded. Items are reported, not enforced.
pub fn lemma41_battery(
    s: &FiniteSemigroup,
    f: &ScalarFunction,
    sigma: &InvolutiveMorphism,
    mu: &DiracMeasure,
    delta: f64,
    tol: &ToleranceConfig,
) -> Result<Vec<InequalityItem>> {
    f.check_on(s)?;
    mu.check_on(s)?;
    if let Some(z) = first_non_central(mu, s) {
        return Err(Error::NonCentralSupport(z));
    }
    let int_f = integrate(f, mu)?;
    let a = int_f.norm();
    if a <= tol.eq_tol {
        return Err(Error::DegenerateIntegral(a));
    }
    let n = s.order();
    let norm = measure_norm(mu);
    let sg = |x: usize| sigma.apply(x);
    let atoms = mu.atoms();
    let one = |at: &dyn Fn(usize) -> usize| -> Complex64 {
        atoms.iter().map(|t| t.weight * f[at(t.point)]).sum()
    };
    let two = |at: &dyn Fn(usize, usize) -> usize| -> Complex64 {
        atoms
            .iter()
            .flat_map(|p| atoms.iter().map(move |q| (p, q)))
            .map(|(p, q)| p.weight * q.weight * f[at(p.point, q.point)])
            .sum()
    };
    let sup1 = |term: &dyn Fn(usize) -> Complex64| (0..n).map(|x| term(x).norm()).fold(0.0, f64::max);
    let sup2 = |term: &dyn Fn(usize, usize) -> Complex64| {
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .map(|(x, y)| term(x, y).norm())
            .fold(0.0, f64::max)
    };
    let g: Vec<Complex64> = (0..n).map(|x| one(&|t| s.mul(x, t)) / int_f).collect();

    let bounded = |name, lhs: f64, rhs: f64| InequalityItem {
        name,
        lhs,
        rhs,
        holds: lhs <= rhs + tol.eq_tol,
    };
    Ok(vec![
        bounded(inequality::ODD_UNDER_SIGMA, sup1(&|x| f[sg(x)] + f[x]), 0.0),
        bounded(
            inequality::CROSS_ODD,
            sup2(&|x, y| f[s.mul(sg(x), y)] + f[s.mul(sg(y), x)]),
            3.0 * delta * norm / a,
        ),
        bounded(
            inequality::DOUBLE_SIGMA_SHIFT,
            sup1(&|x| two(&|p, q| s.mul3(x, sg(p), q)) - f[x] * int_f),
            delta * norm / 2.0,
        ),
        bounded(
            inequality::DOUBLE_SHIFT,
            sup1(&|x| two(&|p, q| s.mul3(x, p, q)) + f[x] * int_f),
            3.0 * delta * norm / 2.0,
        ),
        InequalityItem {
            name: inequality::INTEGRAL_NONZERO,
            lhs: a,
            rhs: tol.eq_tol,
            holds: a > tol.eq_tol,
        },
        bounded(
            inequality::SIGMA_SIGMA_SHIFT,
            sup1(&|x| one(&|t| s.mul(x, sg(t))) - one(&|t| s.mul(sg(x), sg(t)))),
            0.0,
        ),
        bounded(
            inequality::SIGMA_SHIFT,
            sup1(&|x| one(&|t| s.mul(x, t)) - one(&|t| s.mul(sg(x), t))),
            6.0 * delta * norm * norm / a,
        ),
        bounded(
            inequality::G_DALEMBERT,
            {
                let g = &g;
                sup2(&|x, y| g[s.mul(x, y)] + g[s.mul(sg(y), x)] - 2.0 * g[x] * g[y])
            },
            3.0 * delta * norm * norm / (a * a),
        ),
    ])
}

/// Radii drawn per trial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RadiusSchedule {
    Fixed(f64),
    /// Uniform on `[lo, hi]`.
    Uniform(f64, f64),
}

impl RadiusSchedule {
    fn sample(self, rng: &mut impl Rng) -> f64 {
        match self {
            Self::Fixed(r) => r,
            Self::Uniform(lo, hi) => lo + (hi - lo) * rng.gen::<f64>(),
        }
    }

    fn validate(self) -> Result<()> {
        let ok = match self {
            Self::Fixed(r) => r.is_finite() && r >= 0.0,
            Self::Uniform(lo, hi) => lo.is_finite() && hi.is_finite() && 0.0 <= lo && lo <= hi,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::BadParams(format!("invalid radius schedule {self:?}")))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CampaignConfig {
    pub trials: usize,
    pub schedule: RadiusSchedule,
    pub seed: u64,
    /// Fail with `EmptySolutionSet` instead of falling back to the zero base.
    pub require_base: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignReport {
    pub trials: usize,
    pub violations: usize,
    pub exact: usize,
    pub within_bound: usize,
    pub max_ratio: f64,
    pub seed: u64,
}

impl CampaignReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Runs `config.trials` perturbation trials on the fixture `(s, σ, μ)`.
///
/// Trial `i` draws from the ChaCha8 stream `i` of `config.seed`: first the
/// base (a closed-form solution or zero), then the radius, then the noise.
pub fn fuzz_campaign(
    s: &FiniteSemigroup,
    sigma: &InvolutiveMorphism,
    mu: &DiracMeasure,
    config: &CampaignConfig,
    tol: &ToleranceConfig,
) -> Result<(CampaignReport, Vec<StabilityTrial>)> {
    if config.trials == 0 {
        return Err(Error::BadParams("a campaign needs at least one trial".into()));
    }
    config.schedule.validate()?;
    let solutions = solve_vanvleck(s, sigma, mu, tol)?;
    if solutions.is_empty() && config.require_base {
        return Err(Error::EmptySolutionSet);
    }
    let mut bases: Vec<ScalarFunction> = solutions.functions().cloned().collect();
    bases.push(ScalarFunction::zeros(s.order()));

    let trials: Vec<StabilityTrial> = (0..config.trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(i as u64);
            let base = bases[rng.gen_range(0..bases.len())].clone();
            let radius = config.schedule.sample(&mut rng);
            let f = perturb_with(&base, radius, &mut rng);
            let d = check_dichotomy(s, &f, sigma, mu, tol)?;
            Ok(StabilityTrial {
                base,
                radius,
                seed: config.seed,
                measured_delta: d.delta,
                sup_f: d.sup_f,
                bound: d.bound,
                verdict: d.verdict,
            })
        })
        .collect::<Result<_>>()?;

    let count = |v: Verdict| trials.iter().filter(|t| t.verdict == v).count();
    let max_ratio = trials
        .iter()
        .map(|t| if t.bound > 0.0 { t.sup_f / t.bound } else { 0.0 })
        .fold(0.0, f64::max);
    let report = CampaignReport {
        trials: trials.len(),
        violations: count(Verdict::Violation),
        exact: count(Verdict::ExactSolution),
        within_bound: count(Verdict::WithinBound),
        max_ratio,
        seed: config.seed,
    };
    Ok((report, trials))
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
    fn sine() -> ScalarFunction {
        ScalarFunction::from_real(&[0.0, 1.0, 0.0, -1.0])
    }
    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn bound_examples() {
        assert_eq!(superstability_bound(0.0, 1.0), 1.0);
        assert!((superstability_bound(2.0, 1.0) - 1.618_033_988_7).abs() < 1e-10);
        for m in [0.0, 0.3, 2.5, 7.0] {
            assert_eq!(superstability_bound(0.0, m), m);
        }
    }

    #[test]
    fn measured_delta_examples() {
        let s = c4();
        let mu = DiracMeasure::dirac(1);
        assert_eq!(measured_delta(&s, &sine(), &neg(&s), &mu).unwrap(), 0.0);
        let d = measured_delta(&s, &ScalarFunction::constant(4, c(0.1, 0.0)), &neg(&s), &mu).unwrap();
        assert!((d - 0.02).abs() < 1e-15);
        assert_eq!(measured_delta(&s, &perturb(&sine(), 0.0, 3), &neg(&s), &mu).unwrap(), 0.0);
        let s3 = build_standard(Family::SymmetricGroup3).unwrap();
        let id = InvolutiveMorphism::identity(6, MorphismKind::Automorphism);
        assert_eq!(
            measured_delta(&s3, &ScalarFunction::zeros(6), &id, &DiracMeasure::dirac(1)),
            Err(Error::NonCentralSupport(1))
        );
    }

    #[test]
    fn perturbation_contract() {
        let f = sine();
        assert_eq!(perturb(&f, 0.0, 11), f);
        assert_eq!(perturb(&f, 0.3, 11), perturb(&f, 0.3, 11));
        assert_ne!(perturb(&f, 0.3, 11), perturb(&f, 0.3, 12));
        for seed in 0..200 {
            assert!(perturb(&f, 0.25, seed).sup_distance(&f) <= 0.25);
        }
    }

    #[test]
    fn dichotomy_examples() {
        let s = c4();
        let mu = DiracMeasure::dirac(1);
        let exact = check_dichotomy(&s, &sine(), &neg(&s), &mu, &tol()).unwrap();
        assert_eq!(exact.verdict, Verdict::ExactSolution);
        let constant = ScalarFunction::constant(4, c(0.1, 0.0));
        let d = check_dichotomy(&s, &constant, &neg(&s), &mu, &tol()).unwrap();
        assert_eq!(d.verdict, Verdict::WithinBound);
        assert!((d.bound - (1.0 + 1.04f64.sqrt()) / 2.0).abs() < 1e-12);
        for seed in 0..50 {
            let f = perturb(&sine(), 0.05, seed);
            let v = check_dichotomy(&s, &f, &neg(&s), &mu, &tol()).unwrap().verdict;
            assert_ne!(v, Verdict::Violation);
        }
    }

    #[test]
    fn battery_on_exact_sine() {
        let s = c4();
        let mu = DiracMeasure::dirac(1);
        for delta in [0.0, 1.0] {
            let items = lemma41_battery(&s, &sine(), &neg(&s), &mu, delta, &tol()).unwrap();
            assert_eq!(items.len(), 8);
            assert!(items.iter().all(|i| i.holds), "{items:?}");
            for i in &items {
                if i.name == inequality::INTEGRAL_NONZERO {
                    assert_eq!(i.lhs, 1.0);
                } else {
                    assert_eq!(i.lhs, 0.0, "{}", i.name);
                }
            }
        }
        let zero = ScalarFunction::zeros(4);
        assert!(matches!(
            lemma41_battery(&s, &zero, &neg(&s), &mu, 0.0, &tol()),
            Err(Error::DegenerateIntegral(_))
        ));
    }

    #[test]
    fn battery_reports_on_perturbed_input() {
        let s = c4();
        let mu = DiracMeasure::dirac(1);
        let f = perturb(&sine(), 0.05, 5);
        let delta = measured_delta(&s, &f, &neg(&s), &mu).unwrap();
        let items = lemma41_battery(&s, &f, &neg(&s), &mu, delta, &tol()).unwrap();
        assert_eq!(items.len(), 8);
        assert!(items.iter().all(|i| i.lhs.is_finite() && i.rhs.is_finite()));
    }

    #[test]
    fn campaigns() {
        let s = c4();
        let mu = DiracMeasure::dirac(1);
        let config = CampaignConfig {
            trials: 200,
            schedule: RadiusSchedule::Uniform(0.0, 1.0),
            seed: 42,
            require_base: true,
        };
        let (report, trials) = fuzz_campaign(&s, &neg(&s), &mu, &config, &tol()).unwrap();
        assert_eq!(report.violations, 0);
        assert!(report.max_ratio <= 1.0);
        assert_eq!(report.exact + report.within_bound, 200);
        assert_eq!(trials.len(), 200);
        assert_eq!(fuzz_campaign(&s, &neg(&s), &mu, &config, &tol()).unwrap().0, report);

        let still = CampaignConfig {
            schedule: RadiusSchedule::Fixed(0.0),
            ..config.clone()
        };
        let (report, _) = fuzz_campaign(&s, &neg(&s), &mu, &still, &tol()).unwrap();
        assert_eq!(report.exact, 200);

        let id = InvolutiveMorphism::identity(4, MorphismKind::Automorphism);
        assert_eq!(
            fuzz_campaign(&s, &id, &mu, &config, &tol()),
            Err(Error::EmptySolutionSet)
        );
        let lenient = CampaignConfig {
            require_base: false,
            ..config
        };
        assert!(fuzz_campaign(&s, &id, &mu, &lenient, &tol()).unwrap().0.passed());
    }
}
