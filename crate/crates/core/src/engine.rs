//! Residual evaluation for every equation and identity the solvers rely on.
//!
//! A residual is the sup over all pairs `(x, y)` (or all elements) of
//! `|LHS − RHS|`, reported together with the first point attaining it in
//! lexicographic order.

use std::fmt;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::measure::{first_non_central, integrate, is_sigma_invariant, right_transform, DiracMeasure};
use crate::scalar::{Complex64, ScalarFunction, ToleranceConfig};
use crate::semigroup::{FiniteSemigroup, InvolutiveMorphism, MorphismKind};

/// The functional equations a function can be checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EquationTag {
    /// `∫f(σ(y)xt)dμ(t) − ∫f(xyt)dμ(t) = 2f(x)f(y)`
    Vanvleck,
    /// `g(xy) + g(σ(y)x) = 2g(x)g(y)`
    DalembertVariant,
    /// `∫f(xty)dυ(t) + ∫f(σ(y)tx)dυ(t) = 2f(x)f(y)`
    IntegralDalembert,
    /// `∫f(xyt)dυ(t) + ∫f(σ(y)xt)dυ(t) = 2f(x)f(y)` with central `υ`
    Corollary33,
    /// `∫ψ(xty)dυ(t) = ψ(x)ψ(y)`
    Spherical,
    /// `f(xy) = f(x)g(y) + f(y)g(x)`
    SineAddition,
    /// `f(xy) + f(σ(y)x) = 2f(x)g(y)`
    WilsonVariant,
}

impl EquationTag {
    pub const ALL: [EquationTag; 7] = [
        EquationTag::Vanvleck,
        EquationTag::DalembertVariant,
        EquationTag::IntegralDalembert,
        EquationTag::Corollary33,
        EquationTag::Spherical,
        EquationTag::SineAddition,
        EquationTag::WilsonVariant,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            EquationTag::Vanvleck => "vanvleck",
            EquationTag::DalembertVariant => "dalembert_variant",
            EquationTag::IntegralDalembert => "integral_dalembert",
            EquationTag::Corollary33 => "corollary33",
            EquationTag::Spherical => "spherical",
            EquationTag::SineAddition => "sine_addition",
            EquationTag::WilsonVariant => "wilson_variant",
        }
    }
}

impl fmt::Display for EquationTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for EquationTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EquationTag::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::BadParams(format!("unknown equation tag {s:?}")))
    }
}

/// Where a residual attains its maximum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Argmax {
    Pair(usize, usize),
    Element(usize),
    None,
}

impl Serialize for Argmax {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            Argmax::Pair(x, y) => [x, y].serialize(serializer),
            Argmax::Element(x) => [x].serialize(serializer),
            Argmax::None => serializer.serialize_none(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ItemKind {
    /// Should vanish.
    Residual,
    /// Should stay away from zero.
    Nonvanishing,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportItem {
    pub name: &'static str,
    pub value: f64,
    pub kind: ItemKind,
    #[serde(skip)]
    pub argmax: Argmax,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    pub equation: String,
    pub max_abs: f64,
    pub argmax: Argmax,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_item: Option<Vec<ReportItem>>,
    /// Set when a standing hypothesis was bypassed with `force`.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub out_of_hypothesis: bool,
}

impl ResidualReport {
    fn new(equation: impl Into<String>, (max_abs, argmax): (f64, Argmax)) -> Self {
        Self {
            equation: equation.into(),
            max_abs,
            argmax,
            per_item: None,
            out_of_hypothesis: false,
        }
    }

    fn from_items(equation: &str, items: Vec<ReportItem>) -> Self {
        let mut best = (0.0, Argmax::None);
        for item in items.iter().filter(|i| i.kind == ItemKind::Residual) {
            if item.value > best.0 || best.1 == Argmax::None {
                best = (item.value, item.argmax);
            }
        }
        Self {
            per_item: Some(items),
            ..Self::new(equation, best)
        }
    }

    pub fn item(&self, name: &str) -> Option<&ReportItem> {
        self.per_item.as_ref()?.iter().find(|i| i.name == name)
    }

    /// Residual items at most `tol`, nonvanishing items above it.
    pub fn passes(&self, tol: f64) -> bool {
        self.max_abs <= tol
            && self.per_item.iter().flatten().all(|i| match i.kind {
                ItemKind::Residual => i.value <= tol,
                ItemKind::Nonvanishing => i.value > tol,
            })
    }
}

/// Sup of `|term(x, y)|`; ties keep the lexicographically first pair.
fn sup_pairs(n: usize, mut term: impl FnMut(usize, usize) -> Complex64) -> (f64, Argmax) {
    let mut best = (0.0, Argmax::None);
    for x in 0..n {
        for y in 0..n {
            let v = term(x, y).norm();
            if v > best.0 || best.1 == Argmax::None {
                best = (v, Argmax::Pair(x, y));
            }
        }
    }
    best
}

fn sup_elements(n: usize, mut term: impl FnMut(usize) -> Complex64) -> (f64, Argmax) {
    let mut best = (0.0, Argmax::None);
    for x in 0..n {
        let v = term(x).norm();
        if v > best.0 || best.1 == Argmax::None {
            best = (v, Argmax::Element(x));
        }
    }
    best
}

/// `Σᵢ wᵢ f(at(zᵢ))`.
#[inline]
fn sum1(mu: &DiracMeasure, f: &ScalarFunction, at: impl Fn(usize) -> usize) -> Complex64 {
    mu.atoms().iter().map(|a| a.weight * f[at(a.point)]).sum()
}

/// `Σᵢ Σⱼ wᵢ wⱼ f(at(zᵢ, zⱼ))`.
#[inline]
fn sum2(mu: &DiracMeasure, f: &ScalarFunction, at: impl Fn(usize, usize) -> usize) -> Complex64 {
    let atoms = mu.atoms();
    atoms
        .iter()
        .flat_map(|a| atoms.iter().map(move |b| (a, b)))
        .map(|(a, b)| a.weight * b.weight * f[at(a.point, b.point)])
        .sum()
}

fn check_inputs(s: &FiniteSemigroup, fs: &[&ScalarFunction], mu: Option<&DiracMeasure>) -> Result<()> {
    for f in fs {
        f.check_on(s)?;
    }
    if let Some(mu) = mu {
        mu.check_on(s)?;
    }
    Ok(())
}

fn require_central(s: &FiniteSemigroup, mu: &DiracMeasure) -> Result<()> {
    match first_non_central(mu, s) {
        Some(z) => Err(Error::NonCentralSupport(z)),
        None => Ok(()),
    }
}

fn require_automorphism(sigma: &InvolutiveMorphism) -> Result<()> {
    if sigma.kind() == MorphismKind::Automorphism {
        Ok(())
    } else {
        Err(Error::WrongMorphismKind {
            expected: MorphismKind::Automorphism.label(),
        })
    }
}

/// `∫∫ f(s·t) dμ(s) dμ(t)`.
pub fn double_integral(s: &FiniteSemigroup, f: &ScalarFunction, mu: &DiracMeasure) -> Result<Complex64> {
    check_inputs(s, &[f], Some(mu))?;
    Ok(sum2(mu, f, |a, b| s.mul(a, b)))
}

/// Van Vleck type residual; `μ` must be supported in the center.
pub fn residual_vanvleck(
    s: &FiniteSemigroup,
    f: &ScalarFunction,
    sigma: &InvolutiveMorphism,
    mu: &DiracMeasure,
) -> Result<ResidualReport> {
    check_inputs(s, &[f], Some(mu))?;
    require_central(s, mu)?;
    Ok(vanvleck_unchecked(s, f, sigma, mu))
}

/// Same as [`residual_vanvleck`] but evaluates non-central measures too,
/// flagging the report as out of hypothesis.
pub fn residual_vanvleck_forced(
    s: &FiniteSemigroup,
    f: &ScalarFunction,
    sigma: &InvolutiveMorphism,
    mu: &DiracMeasure,
) -> Result<ResidualReport> {
    check_inputs(s, &[f], Some(mu))?;
    let mut report = vanvleck_unchecked(s, f, sigma, mu);
    report.out_of_hypothesis = first_non_central(mu, s).is_some();
    Ok(report)
}

fn vanvleck_unchecked(
    s: &FiniteSemigroup,
    f: &ScalarFunction,
    sigma: &InvolutiveMorphism,
    mu: &DiracMeasure,
) -> ResidualReport {
    let sup = sup_pairs(s.order(), |x, y| {
        let left = sum1(mu, f, |t| s.mul3(sigma.apply(y), x, t));
        let right = sum1(mu, f, |t| s.mul3(x, y, t));
        left - right - 2.0 * f[x] * f[y]
    });
    ResidualReport::new(EquationTag::Vanvleck.as_str(), sup)
}

pub fn residual_dalembert_variant(
    s: &FiniteSemigroup,
    g: &ScalarFunction,
    sigma: &InvolutiveMorphism,
) -> Result<ResidualReport> {
    check_inputs(s, &[g], None)?;
    let sup = sup_pairs(s.order(), |x, y| {
        g[s.mul(x, y)] + g[s.mul(sigma.apply(y), x)] - 2.0 * g[x] * g[y]
    });
    Ok(ResidualReport::new(EquationTag::DalembertVariant.as_str(), sup))
}

fn integral_dalembert_unchecked(
    s: &FiniteSemigroup,
    f: &ScalarFunction,
    sigma: &InvolutiveMorphism,
    upsilon: &DiracMeasure,
) -> (f64, Argmax) {
    sup_pairs(s.order(), |x, y| {
        let a = sum1(upsilon, f, |t| s.mul3(x, t, y));
        let b = sum1(upsilon, f, |t| s.mul3(sigma.apply(y), t, x));
        a + b - 2.0 * f[x] * f[y]
    })
}

/// Two-sided integral d'Alembert residual; needs an automorphism and a
/// `σ`-invariant measure.
pub fn residual_integral_dalembert(
    s: &FiniteSemigroup,
    f: &ScalarFunction,
    sigma: &InvolutiveMorphism,
    upsilon: &DiracMeasure,
    tol: &ToleranceConfig,
) -> Result<ResidualReport> {
    check_inputs(s, &[f], Some(upsilon))?;
    require_automorphism(sigma)?;
    if !is_sigma_invariant(upsilon, sigma, tol) {
        return Err(Error::NotSigmaInvariant);
    }
    Ok(ResidualReport::new(
        EquationTag::IntegralDalembert.as_str(),
        integral_dalembert_unchecked(s, f, sigma, upsilon),
    ))
}

/// Same sums as [`residual_integral_dalembert`] for any morphism kind and
/// any measure; the report is flagged when a hypothesis does not hold.
pub fn residual_integral_dalembert_forced(
    s: &FiniteSemigroup,
    f: &ScalarFunction,
    sigma: &InvolutiveMorphism,
    upsilon: &DiracMeasure,
    tol: &ToleranceConfig,
) -> Result<ResidualReport> {
    check_inputs(s, &[f], Some(upsilon))?;
    let mut report = ResidualReport::new(
        EquationTag::IntegralDalembert.as_str(),
        integral_dalembert_unchecked(s, f, sigma, upsilon),
    );
    report.out_of_hypothesis =
        sigma.kind() != MorphismKind::Automorphism || !is_sigma_invariant(upsilon, sigma, tol);
    Ok(report)
}

/// Right-translated form of the integral d'Alembert equation, for measures
/// supported in the center. There it coincides with
/// [`residual_integral_dalembert`] term by term.
pub fn residual_corollary_form(
    s: &FiniteSemigroup,
    f: &ScalarFunction,
    sigma: &InvolutiveMorphism,
    upsilon: &DiracMeasure,
    tol: &ToleranceConfig,
) -> Result<ResidualReport> {
    check_inputs(s, &[f], Some(upsilon))?;
    require_central(s, upsilon)?;
    require_automorphism(sigma)?;
    if !is_sigma_invariant(upsilon, sigma, tol) {
        return Err(Error::NotSigmaInvariant);
    }
    let sup = sup_pairs(s.order(), |x, y| {
        let a = sum1(upsilon, f, |t| s.mul3(x, y, t));
        let b = sum1(upsilon, f, |t| s.mul3(sigma.apply(y), x, t));
        a + b - 2.0 * f[x] * f[y]
    });
    debug_assert_eq!(sup.0, integral_dalembert_unchecked(s, f, sigma, upsilon).0);
    Ok(ResidualReport::new(EquationTag::Corollary33.as_str(), sup))
}

/// `∫ψ(xty)dυ(t) − ψ(x)ψ(y)`.
pub fn residual_spherical(
    s: &FiniteSemigroup,
    psi: &ScalarFunction,
    upsilon: &DiracMeasure,
) -> Result<ResidualReport> {
    check_inputs(s, &[psi], Some(upsilon))?;
    let sup = sup_pairs(s.order(), |x, y| {
        sum1(upsilon, psi, |t| s.mul3(x, t, y)) - psi[x] * psi[y]
    });
    Ok(ResidualReport::new(EquationTag::Spherical.as_str(), sup))
}

/// `∫f(xyt)dυ(t) − f(x)f(y)`, the right-translated spherical equation.
pub fn residual_spherical_right(
    s: &FiniteSemigroup,
    f: &ScalarFunction,
    upsilon: &DiracMeasure,
) -> Result<ResidualReport> {
    check_inputs(s, &[f], Some(upsilon))?;
    let sup = sup_pairs(s.order(), |x, y| {
        sum1(upsilon, f, |t| s.mul3(x, y, t)) - f[x] * f[y]
    });
    Ok(ResidualReport::new("spherical_right", sup))
}

pub fn residual_sine_addition(
    s: &FiniteSemigroup,
    f: &ScalarFunction,
    g: &ScalarFunction,
) -> Result<ResidualReport> {
    check_inputs(s, &[f, g], None)?;
    let sup = sup_pairs(s.order(), |x, y| f[s.mul(x, y)] - f[x] * g[y] - f[y] * g[x]);
    Ok(ResidualReport::new(EquationTag::SineAddition.as_str(), sup))
}

pub fn residual_wilson_variant(
    s: &FiniteSemigroup,
    f: &ScalarFunction,
    g: &ScalarFunction,
    sigma: &InvolutiveMorphism,
) -> Result<ResidualReport> {
    check_inputs(s, &[f, g], None)?;
    let sup = sup_pairs(s.order(), |x, y| {
        f[s.mul(x, y)] + f[s.mul(sigma.apply(y), x)] - 2.0 * f[x] * g[y]
    });
    Ok(ResidualReport::new(EquationTag::WilsonVariant.as_str(), sup))
}

/// Names of the items reported by [`lemma21_battery`], in report order.
pub mod battery {
    /// `f∘σ + f`
    pub const ODD_UNDER_SIGMA: &str = "odd_under_sigma";
    /// `|∫f dμ|`, must be nonzero
    pub const INTEGRAL_NONZERO: &str = "integral_nonzero";
    /// `f(σ(y)x) + f(σ(x)y)`
    pub const CROSS_ODD: &str = "cross_odd";
    /// `∫∫f(xσ(t)s)dμ(t)dμ(s) − f(x)∫f dμ`
    pub const DOUBLE_SIGMA_SHIFT: &str = "double_sigma_shift";
    /// `∫∫f(xts)dμ(t)dμ(s) + f(x)∫f dμ`
    pub const DOUBLE_SHIFT: &str = "double_shift";
    /// `∫f(σ(x)t)dμ(t) − ∫f(xt)dμ(t)`
    pub const SIGMA_SHIFT: &str = "sigma_shift";
    /// `∫f(xσ(t))dμ(t) − ∫f(σ(x)σ(t))dμ(t)`
    pub const SIGMA_SIGMA_SHIFT: &str = "sigma_sigma_shift";
    /// `∫∫f(ts)dμdμ` and `∫∫f(tσ(s))dμdμ`, both zero
    pub const DOUBLE_INTEGRALS_VANISH: &str = "double_integrals_vanish";

    pub const ALL: [&str; 8] = [
        ODD_UNDER_SIGMA,
        INTEGRAL_NONZERO,
        CROSS_ODD,
        DOUBLE_SIGMA_SHIFT,
        DOUBLE_SHIFT,
        SIGMA_SHIFT,
        SIGMA_SIGMA_SHIFT,
        DOUBLE_INTEGRALS_VANISH,
    ];
}

/// The identities every nonzero Van Vleck solution satisfies, each reported
/// by name. `integral_nonzero` is a magnitude, not a residual, and does not
/// enter `max_abs`.
pub fn lemma21_battery(
    s: &FiniteSemigroup,
    f: &ScalarFunction,
    sigma: &InvolutiveMorphism,
    mu: &DiracMeasure,
) -> Result<ResidualReport> {
    check_inputs(s, &[f], Some(mu))?;
    require_central(s, mu)?;
    let n = s.order();
    let sg = |x: usize| sigma.apply(x);
    let int_f = sum1(mu, f, |t| t);

    let item = |name, (value, argmax)| ReportItem {
        name,
        value,
        kind: ItemKind::Residual,
        argmax,
    };
    let double_sigma = |x: usize| sum2(mu, f, |t, u| s.mul3(x, sg(t), u));
    // central atoms commute, so the inner order of a double shift is immaterial
    debug_assert!((0..n).all(|x| {
        (double_sigma(x) - sum2(mu, f, |t, u| s.mul3(x, u, sg(t)))).norm() <= 1e-9 * (1.0 + f.sup_norm())
    }));

    let vanish = {
        let a = sum2(mu, f, |t, u| s.mul(t, u)).norm();
        let b = sum2(mu, f, |t, u| s.mul(t, sg(u))).norm();
        (a.max(b), Argmax::None)
    };
    let items = vec![
        item(battery::ODD_UNDER_SIGMA, sup_elements(n, |x| f[sg(x)] + f[x])),
        ReportItem {
            name: battery::INTEGRAL_NONZERO,
            value: int_f.norm(),
            kind: ItemKind::Nonvanishing,
            argmax: Argmax::None,
        },
        item(
            battery::CROSS_ODD,
            sup_pairs(n, |x, y| f[s.mul(sg(y), x)] + f[s.mul(sg(x), y)]),
        ),
        item(
            battery::DOUBLE_SIGMA_SHIFT,
            sup_elements(n, |x| double_sigma(x) - f[x] * int_f),
        ),
        item(
            battery::DOUBLE_SHIFT,
            sup_elements(n, |x| sum2(mu, f, |t, u| s.mul3(x, t, u)) + f[x] * int_f),
        ),
        item(
            battery::SIGMA_SHIFT,
            sup_elements(n, |x| {
                sum1(mu, f, |t| s.mul(sg(x), t)) - sum1(mu, f, |t| s.mul(x, t))
            }),
        ),
        item(
            battery::SIGMA_SIGMA_SHIFT,
            sup_elements(n, |x| {
                sum1(mu, f, |t| s.mul(x, sg(t))) - sum1(mu, f, |t| s.mul(sg(x), sg(t)))
            }),
        ),
        item(battery::DOUBLE_INTEGRALS_VANISH, vanish),
    ];
    Ok(ResidualReport::from_items("lemma21_battery", items))
}

/// `g(x) = ∫f(xt)dμ(t) / ∫f dμ`.
pub fn build_g(
    s: &FiniteSemigroup,
    f: &ScalarFunction,
    mu: &DiracMeasure,
    tol: &ToleranceConfig,
) -> Result<ScalarFunction> {
    check_inputs(s, &[f], Some(mu))?;
    let denom = integrate(f, mu)?;
    if denom.norm() <= tol.eq_tol {
        return Err(Error::DegenerateIntegral(denom.norm()));
    }
    let shifted = right_transform(s, f, mu)?;
    Ok(shifted.scale(1.0 / denom))
}

/// `sup |∫f(xty)dυ(t) − ∫f(ytx)dυ(t)|`.
pub fn remark34_identity(
    s: &FiniteSemigroup,
    f: &ScalarFunction,
    upsilon: &DiracMeasure,
) -> Result<ResidualReport> {
    check_inputs(s, &[f], Some(upsilon))?;
    let sup = sup_pairs(s.order(), |x, y| {
        sum1(upsilon, f, |t| s.mul3(x, t, y)) - sum1(upsilon, f, |t| s.mul3(y, t, x))
    });
    Ok(ResidualReport::new("middle_symmetry", sup))
}

/// Residual of a one-function equation by tag.
///
/// `measure` is required for the integral equations; two-function tags are
/// rejected.
pub fn residual_for(
    tag: EquationTag,
    s: &FiniteSemigroup,
    f: &ScalarFunction,
    sigma: Option<&InvolutiveMorphism>,
    measure: Option<&DiracMeasure>,
    tol: &ToleranceConfig,
) -> Result<ResidualReport> {
    let need_sigma = || sigma.ok_or_else(|| Error::BadParams(format!("{tag} needs sigma")));
    let need_measure = || measure.ok_or_else(|| Error::BadParams(format!("{tag} needs a measure")));
    match tag {
        EquationTag::Vanvleck => residual_vanvleck(s, f, need_sigma()?, need_measure()?),
        EquationTag::DalembertVariant => residual_dalembert_variant(s, f, need_sigma()?),
        EquationTag::IntegralDalembert => {
            residual_integral_dalembert(s, f, need_sigma()?, need_measure()?, tol)
        }
        EquationTag::Corollary33 => residual_corollary_form(s, f, need_sigma()?, need_measure()?, tol),
        EquationTag::Spherical => residual_spherical(s, f, need_measure()?),
        EquationTag::SineAddition | EquationTag::WilsonVariant => Err(Error::BadParams(format!(
            "{tag} relates two functions"
        ))),
    }
}
