//! Multistart Levenberg-Marquardt root finder for the quadratic systems
//! behind the one-function equations. It knows nothing about characters and
//! serves as an independent completeness check on the closed forms.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::engine::EquationTag;
use crate::error::{Error, Result};
use crate::measure::{measure_norm, DiracMeasure};
use crate::scalar::{Complex64, ScalarFunction, ToleranceConfig};
use crate::semigroup::{FiniteSemigroup, InvolutiveMorphism};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    pub starts: usize,
    pub seed: u64,
    pub max_iterations: usize,
    /// Radius of the start disk; defaults to `‖μ‖ + 1`, or 2 when there is
    /// no measure.
    pub radius: Option<f64>,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            starts: 200,
            seed: 0,
            max_iterations: 400,
            radius: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleRoot {
    pub f: ScalarFunction,
    /// `sup |r|` over all equations at the cluster representative.
    pub residual: f64,
    /// Number of converged starts in the cluster.
    pub hits: usize,
}

/// One equation `Σ c·f[i] + q·f[a]·f[b] = 0`.
struct Row {
    linear: Vec<(usize, Complex64)>,
    a: usize,
    b: usize,
    q: Complex64,
}

struct System {
    n: usize,
    rows: Vec<Row>,
}

impl System {
    fn build(
        s: &FiniteSemigroup,
        sigma: Option<&InvolutiveMorphism>,
        mu: Option<&DiracMeasure>,
        tag: EquationTag,
    ) -> Result<Self> {
        let n = s.order();
        let missing = |what: &str| Error::BadParams(format!("{tag} needs {what}"));
        let sg = |x: usize| -> Result<usize> { Ok(sigma.ok_or_else(|| missing("sigma"))?.apply(x)) };
        let atoms = || -> Result<&[crate::measure::Atom]> { Ok(mu.ok_or_else(|| missing("a measure"))?.atoms()) };
        let mut rows = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let mut linear = Vec::new();
                let q = match tag {
                    EquationTag::Vanvleck => {
                        for a in atoms()? {
                            linear.push((s.mul3(sg(y)?, x, a.point), a.weight));
                            linear.push((s.mul3(x, y, a.point), -a.weight));
                        }
                        -2.0
                    }
                    EquationTag::DalembertVariant => {
                        linear.push((s.mul(x, y), Complex64::new(1.0, 0.0)));
                        linear.push((s.mul(sg(y)?, x), Complex64::new(1.0, 0.0)));
                        -2.0
                    }
                    EquationTag::IntegralDalembert => {
                        for a in atoms()? {
                            linear.push((s.mul3(x, a.point, y), a.weight));
                            linear.push((s.mul3(sg(y)?, a.point, x), a.weight));
                        }
                        -2.0
                    }
                    EquationTag::Corollary33 => {
                        for a in atoms()? {
                            linear.push((s.mul3(x, y, a.point), a.weight));
                            linear.push((s.mul3(sg(y)?, x, a.point), a.weight));
                        }
                        -2.0
                    }
                    EquationTag::Spherical => {
                        for a in atoms()? {
                            linear.push((s.mul3(x, a.point, y), a.weight));
                        }
                        -1.0
                    }
                    EquationTag::SineAddition | EquationTag::WilsonVariant => {
                        return Err(Error::BadParams(format!("the oracle does not handle {tag}")));
                    }
                };
                rows.push(Row {
                    linear,
                    a: x,
                    b: y,
                    q: Complex64::new(q, 0.0),
                });
            }
        }
        Ok(Self { n, rows })
    }

    fn residual(&self, f: &[Complex64]) -> DVector<Complex64> {
        DVector::from_iterator(
            self.rows.len(),
            self.rows.iter().map(|r| {
                r.linear.iter().map(|&(i, c)| c * f[i]).sum::<Complex64>() + r.q * f[r.a] * f[r.b]
            }),
        )
    }

    /// Holomorphic Jacobian `∂rᵢ/∂f_j`.
    fn jacobian(&self, f: &[Complex64]) -> DMatrix<Complex64> {
        let mut j = DMatrix::zeros(self.rows.len(), self.n);
        for (i, r) in self.rows.iter().enumerate() {
            for &(k, c) in &r.linear {
                j[(i, k)] += c;
            }
            j[(i, r.a)] += r.q * f[r.b];
            j[(i, r.b)] += r.q * f[r.a];
        }
        j
    }

    /// Damped Gauss-Newton from `f`; returns the final point and `sup |r|`.
    fn descend(&self, mut f: Vec<Complex64>, max_iterations: usize) -> (Vec<Complex64>, f64) {
        let cost = |r: &DVector<Complex64>| r.iter().map(|v| v.norm_sqr()).sum::<f64>();
        let mut r = self.residual(&f);
        let mut c = cost(&r);
        let mut lambda = 1e-3;
        for _ in 0..max_iterations {
            if c <= 1e-48 {
                break;
            }
            let j = self.jacobian(&f);
            let jh = j.adjoint();
            let normal = &jh * &j;
            let gradient = &jh * &r;
            let mut accepted = false;
            while lambda <= 1e10 {
                let mut damped = normal.clone();
                for k in 0..self.n {
                    damped[(k, k)] += Complex64::new(lambda, 0.0);
                }
                let Some(step) = damped.lu().solve(&(-&gradient)) else {
                    lambda *= 4.0;
                    continue;
                };
                let trial: Vec<Complex64> = f.iter().zip(step.iter()).map(|(a, b)| a + b).collect();
                let r_trial = self.residual(&trial);
                let c_trial = cost(&r_trial);
                if c_trial < c {
                    let moved = step.iter().map(|v| v.norm()).fold(0.0, f64::max);
                    f = trial;
                    r = r_trial;
                    c = c_trial;
                    lambda = (lambda / 3.0).max(1e-15);
                    accepted = moved > 1e-17;
                    break;
                }
                lambda *= 4.0;
            }
            if !accepted {
                break;
            }
        }
        let sup = r.iter().map(|v| v.norm()).fold(0.0, f64::max);
        (f, sup)
    }
}

/// Runs `config.starts` descents from uniform points in a disk (per
/// coordinate) and returns the distinct nonzero roots, sorted canonically.
///
/// A start converges when `sup |r| ≤ oracle_tol`; roots within `dedup_tol`
/// of each other are clustered by single linkage and represented by the
/// member with the smallest residual.
pub fn newton_oracle(
    s: &FiniteSemigroup,
    sigma: Option<&InvolutiveMorphism>,
    mu: Option<&DiracMeasure>,
    tag: EquationTag,
    config: &OracleConfig,
    tol: &ToleranceConfig,
) -> Result<Vec<OracleRoot>> {
    if let Some(m) = sigma {
        if m.map().len() != s.order() {
            return Err(Error::MapLength {
                len: m.map().len(),
                n: s.order(),
            });
        }
    }
    if let Some(mu) = mu {
        mu.check_on(s)?;
    }
    let system = System::build(s, sigma, mu, tag)?;
    let radius = config
        .radius
        .unwrap_or_else(|| mu.map_or(2.0, |m| measure_norm(m) + 1.0));
    let n = s.order();

    let converged: Vec<(Vec<Complex64>, f64)> = (0..config.starts)
        .into_par_iter()
        .map(|start| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(start as u64);
            let f0: Vec<Complex64> = (0..n)
                .map(|_| {
                    let rho = radius * rng.gen::<f64>().sqrt();
                    let theta = std::f64::consts::TAU * rng.gen::<f64>();
                    Complex64::from_polar(rho, theta)
                })
                .collect();
            system.descend(f0, config.max_iterations)
        })
        .filter(|(f, res)| {
            *res <= tol.oracle_tol && f.iter().map(|v| v.norm()).fold(0.0, f64::max) > tol.oracle_tol
        })
        .collect();

    Ok(cluster(converged, tol.dedup_tol))
}

fn sup_dist(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn cluster(points: Vec<(Vec<Complex64>, f64)>, radius: f64) -> Vec<OracleRoot> {
    let mut parent: Vec<usize> = (0..points.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..points.len() {
        for j in 0..i {
            if sup_dist(&points[i].0, &points[j].0) <= radius {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..points.len() {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(i);
    }
    let mut roots: Vec<OracleRoot> = groups
        .into_values()
        .map(|members| {
            let best = *members
                .iter()
                .min_by(|&&a, &&b| points[a].1.total_cmp(&points[b].1))
                .expect("groups are nonempty");
            OracleRoot {
                f: ScalarFunction::new(points[best].0.clone()).expect("descent stays finite"),
                residual: points[best].1,
                hits: members.len(),
            }
        })
        .collect();
    roots.sort_by(|a, b| canonical_cmp(&a.f, &b.f));
    roots
}

fn canonical_cmp(a: &ScalarFunction, b: &ScalarFunction) -> std::cmp::Ordering {
    a.values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)))
        .find(|o| o.is_ne())
        .unwrap_or(std::cmp::Ordering::Equal)
}

/// Two-way matching of closed-form and oracle roots.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RootComparison {
    /// `(oracle index, closed-form index)` of the nearest partner within tolerance.
    pub matched: Vec<(usize, usize)>,
    pub unmatched_oracle: Vec<usize>,
    pub unmatched_closed: Vec<usize>,
}

impl RootComparison {
    pub fn coincide(&self) -> bool {
        self.unmatched_oracle.is_empty() && self.unmatched_closed.is_empty()
    }
}

pub fn compare_roots(closed: &[ScalarFunction], oracle: &[ScalarFunction], tol: f64) -> RootComparison {
    let nearest = |f: &ScalarFunction, pool: &[ScalarFunction]| {
        pool.iter()
            .enumerate()
            .map(|(i, g)| (i, f.sup_distance(g)))
            .filter(|&(_, d)| d <= tol)
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(i, _)| i)
    };
    let mut out = RootComparison::default();
    for (i, f) in oracle.iter().enumerate() {
        match nearest(f, closed) {
            Some(j) => out.matched.push((i, j)),
            None => out.unmatched_oracle.push(i),
        }
    }
    out.unmatched_closed = closed
        .iter()
        .enumerate()
        .filter(|(_, g)| nearest(g, oracle).is_none())
        .map(|(j, _)| j)
        .collect();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{build_standard, Family, MorphismKind};

    fn c4() -> FiniteSemigroup {
        build_standard(Family::CyclicGroup(4)).unwrap()
    }
    fn neg(s: &FiniteSemigroup) -> InvolutiveMorphism {
        InvolutiveMorphism::new(s, vec![0, 3, 2, 1], MorphismKind::Automorphism).unwrap()
    }

    #[test]
    fn finds_the_discrete_sine() {
        let s = c4();
        let tol = ToleranceConfig::default();
        let roots = newton_oracle(
            &s,
            Some(&neg(&s)),
            Some(&DiracMeasure::dirac(1)),
            EquationTag::Vanvleck,
            &OracleConfig::default(),
            &tol,
        )
        .unwrap();
        assert_eq!(roots.len(), 1);
        let sine = ScalarFunction::from_real(&[0.0, 1.0, 0.0, -1.0]);
        assert!(roots[0].f.sup_distance(&sine) <= 1e-9);
    }

    #[test]
    fn identity_sigma_leaves_only_zero() {
        let s = c4();
        let id = InvolutiveMorphism::identity(4, MorphismKind::Automorphism);
        let roots = newton_oracle(
            &s,
            Some(&id),
            Some(&DiracMeasure::dirac(1)),
            EquationTag::Vanvleck,
            &OracleConfig::default(),
            &ToleranceConfig::default(),
        )
        .unwrap();
        assert!(roots.is_empty());
    }

    #[test]
    fn dalembert_variant_has_three_roots() {
        let s = c4();
        let roots = newton_oracle(
            &s,
            Some(&neg(&s)),
            None,
            EquationTag::DalembertVariant,
            &OracleConfig::default(),
            &ToleranceConfig::default(),
        )
        .unwrap();
        assert_eq!(roots.len(), 3);
    }

    #[test]
    fn deterministic_for_a_seed() {
        let s = c4();
        let run = || {
            newton_oracle(
                &s,
                Some(&neg(&s)),
                None,
                EquationTag::DalembertVariant,
                &OracleConfig { starts: 40, seed: 9, ..Default::default() },
                &ToleranceConfig::default(),
            )
            .unwrap()
        };
        assert_eq!(run(), run());
    }

    #[test]
    fn comparison_reports_both_directions() {
        let a = ScalarFunction::from_real(&[1.0, 0.0]);
        let b = ScalarFunction::from_real(&[0.0, 1.0]);
        let cmp = compare_roots(std::slice::from_ref(&a), &[a.clone(), b], 1e-6);
        assert_eq!(cmp.matched, vec![(0, 0)]);
        assert_eq!(cmp.unmatched_oracle, vec![1]);
        assert!(cmp.unmatched_closed.is_empty());
        assert!(!cmp.coincide());
        assert!(compare_roots(std::slice::from_ref(&a), std::slice::from_ref(&a), 1e-6).coincide());
    }

    #[test]
    fn two_function_tags_are_rejected() {
        let s = c4();
        let r = newton_oracle(
            &s,
            Some(&neg(&s)),
            None,
            EquationTag::SineAddition,
            &OracleConfig::default(),
            &ToleranceConfig::default(),
        );
        assert!(matches!(r, Err(Error::BadParams(_))));
    }
}
