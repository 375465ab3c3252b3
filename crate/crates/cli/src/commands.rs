use std::path::{Path, PathBuf};

use feqlab_core::engine::{
    lemma21_battery, remark34_identity, residual_for, residual_integral_dalembert_forced,
    residual_sine_addition, residual_vanvleck_forced, residual_wilson_variant,
};
use feqlab_core::semigroup::{center, enumerate_involutive_morphisms, index_period};
use feqlab_core::solvers::{
    compare_roots, newton_oracle, solve_corollary33, solve_dalembert_variant, solve_spherical,
    solve_vanvleck, OracleConfig,
};
use feqlab_core::stability::{fuzz_campaign, CampaignConfig, RadiusSchedule};
use feqlab_core::wire::{self, CharacterJson, FunctionJson, LoadError, SolutionSetJson};
use feqlab_core::{
    enumerate_characters, DiracMeasure, EquationTag, Error, FiniteSemigroup, InvolutiveMorphism,
    MorphismKind, ScalarFunction, SolutionSet, ToleranceConfig,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::failure::{class_code, Failure, CHECK_FAILED};
use crate::{Cli, Command};

/// Largest order the oracle subcommand accepts.
const ORACLE_MAX_ORDER: usize = 4;

pub struct Outcome {
    pub report: Value,
    pub code: u8,
}

impl Outcome {
    fn ok(report: impl Serialize) -> Self {
        Self::with_code(report, 0)
    }

    fn with_code(report: impl Serialize, code: u8) -> Self {
        Self {
            report: serde_json::to_value(report).expect("reports serialize"),
            code,
        }
    }
}

type Run = Result<Outcome, Failure>;

pub fn run(cli: &Cli) -> Run {
    match cli.command {
        Command::Validate => validate(cli),
        Command::Analyze => analyze(cli),
        Command::Solve => solve(cli),
        Command::Verify => verify(cli),
        Command::Stability => stability(cli),
        Command::Oracle => oracle(cli),
        Command::Fixtures => fixtures(cli),
    }
}

fn required<'a, T>(value: &'a Option<T>, flag: &str) -> Result<&'a T, Failure> {
    value
        .as_ref()
        .ok_or_else(|| Failure::Usage(format!("this command needs --{flag}")))
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|source| Failure::Io {
        path: path.to_owned(),
        source,
    })
}

fn load<T>(path: &Path, parse: impl FnOnce(&str) -> Result<T, LoadError>) -> Result<T, Failure> {
    parse(&read(path)?).map_err(|source| Failure::Load {
        path: path.to_owned(),
        source,
    })
}

fn tolerances(cli: &Cli) -> Result<ToleranceConfig, Failure> {
    let mut tol = ToleranceConfig::default();
    if let Some(t) = cli.tol {
        tol.eq_tol = t;
    }
    tol.validate()?;
    Ok(tol)
}

struct Inputs {
    s: FiniteSemigroup,
    sigma: Option<InvolutiveMorphism>,
    mu: Option<DiracMeasure>,
}

impl Inputs {
    fn load(cli: &Cli) -> Result<Self, Failure> {
        let s = load(required(&cli.sg, "sg")?, wire::parse_semigroup)?;
        let sigma = match &cli.sigma {
            Some(p) => Some(load(p, |t| wire::parse_morphism(t, &s))?),
            None => None,
        };
        let mu = match &cli.mu {
            Some(p) => {
                let mu = load(p, wire::parse_measure)?;
                mu.check_on(&s)?;
                Some(mu)
            }
            None => None,
        };
        Ok(Self { s, sigma, mu })
    }

    fn sigma(&self) -> Result<&InvolutiveMorphism, Failure> {
        required(&self.sigma, "sigma")
    }

    fn mu(&self) -> Result<&DiracMeasure, Failure> {
        required(&self.mu, "mu")
    }

    fn function(&self, path: &Option<PathBuf>, flag: &str) -> Result<ScalarFunction, Failure> {
        let f = load(required(path, flag)?, wire::parse_function)?;
        f.check_on(&self.s)?;
        Ok(f)
    }
}

fn validate(cli: &Cli) -> Run {
    let path = required(&cli.sg, "sg")?;
    match wire::parse_semigroup(&read(path)?) {
        Ok(s) => Ok(Outcome::ok(json!({
            "valid": true,
            "n": s.order(),
            "name": s.name(),
            "identity": s.identity(),
            "commutative": s.is_commutative(),
        }))),
        Err(LoadError::Invalid(e)) => {
            let mut report = json!({ "valid": false, "error": e.to_string() });
            if let Error::NotAssociative { x, y, z } = e {
                report["triple"] = json!([x, y, z]);
            }
            Ok(Outcome::with_code(report, class_code(&e)))
        }
        Err(source) => Err(Failure::Load {
            path: path.clone(),
            source,
        }),
    }
}

fn analyze(cli: &Cli) -> Run {
    let s = load(required(&cli.sg, "sg")?, wire::parse_semigroup)?;
    let maps = |kind| -> Result<Vec<Vec<usize>>, Error> {
        Ok(enumerate_involutive_morphisms(&s, kind)?
            .iter()
            .map(|m| m.map().to_vec())
            .collect())
    };
    let characters = enumerate_characters(&s);
    Ok(Outcome::ok(json!({
        "n": s.order(),
        "name": s.name(),
        "identity": s.identity(),
        "commutative": s.is_commutative(),
        "center": center(&s),
        "orbits": s.elements().map(|x| {
            let o = index_period(&s, x);
            json!({ "element": x, "index": o.index_k, "period": o.period_p })
        }).collect::<Vec<_>>(),
        "morphisms": {
            "auto": maps(MorphismKind::Automorphism)?,
            "anti": maps(MorphismKind::AntiAutomorphism)?,
        },
        "character_count": characters.len(),
        "characters": characters.iter().map(CharacterJson::from).collect::<Vec<_>>(),
    })))
}

fn closed_form(tag: EquationTag, inputs: &Inputs, tol: &ToleranceConfig) -> Result<SolutionSet, Failure> {
    let s = &inputs.s;
    Ok(match tag {
        EquationTag::Vanvleck => solve_vanvleck(s, inputs.sigma()?, inputs.mu()?, tol)?,
        EquationTag::DalembertVariant => solve_dalembert_variant(s, inputs.sigma()?, tol)?,
        EquationTag::Spherical => solve_spherical(s, inputs.mu()?, tol)?,
        EquationTag::Corollary33 => solve_corollary33(s, inputs.sigma()?, inputs.mu()?, tol)?,
        EquationTag::IntegralDalembert => {
            // only the central case has a closed form, where both forms agree
            let upsilon = inputs.mu()?;
            if let Some(z) = upsilon.atoms().iter().map(|a| a.point).find(|&z| !s.is_central(z)) {
                return Err(Error::NonCentralSupport(z).into());
            }
            let mut set = solve_corollary33(s, inputs.sigma()?, upsilon, tol)?;
            set.equation = EquationTag::IntegralDalembert;
            set
        }
        EquationTag::SineAddition | EquationTag::WilsonVariant => {
            return Err(Failure::Usage(format!(
                "{tag} relates two functions and has no solver; use verify"
            )))
        }
    })
}

fn solve(cli: &Cli) -> Run {
    let tag = *required(&cli.eq, "eq")?;
    let tol = tolerances(cli)?;
    let inputs = Inputs::load(cli)?;
    let set = closed_form(tag, &inputs, &tol)?;
    Ok(Outcome::ok(SolutionSetJson::from(&set)))
}

fn verify(cli: &Cli) -> Run {
    let tag = *required(&cli.eq, "eq")?;
    let tol = tolerances(cli)?;
    let inputs = Inputs::load(cli)?;
    let s = &inputs.s;
    let f = inputs.function(&cli.f, "f")?;
    let mut report = match tag {
        EquationTag::SineAddition => residual_sine_addition(s, &f, &inputs.function(&cli.g, "g")?)?,
        EquationTag::WilsonVariant => {
            residual_wilson_variant(s, &f, &inputs.function(&cli.g, "g")?, inputs.sigma()?)?
        }
        EquationTag::Vanvleck if cli.force => residual_vanvleck_forced(s, &f, inputs.sigma()?, inputs.mu()?)?,
        EquationTag::IntegralDalembert if cli.force => {
            residual_integral_dalembert_forced(s, &f, inputs.sigma()?, inputs.mu()?, &tol)?
        }
        _ => residual_for(tag, s, &f, inputs.sigma.as_ref(), inputs.mu.as_ref(), &tol)?,
    };
    let mut passed = report.max_abs <= tol.eq_tol;
    if cli.battery {
        let extra = match tag {
            EquationTag::Vanvleck => lemma21_battery(s, &f, inputs.sigma()?, inputs.mu()?)?,
            EquationTag::IntegralDalembert | EquationTag::Spherical => remark34_identity(s, &f, inputs.mu()?)?,
            _ => {
                return Err(Failure::Usage(format!("no identity battery for {tag}")));
            }
        };
        passed &= extra.passes(tol.eq_tol);
        report.per_item = Some(match extra.per_item {
            Some(items) => items,
            None => vec![feqlab_core::engine::ReportItem {
                name: "middle_symmetry",
                value: extra.max_abs,
                kind: feqlab_core::engine::ItemKind::Residual,
                argmax: extra.argmax,
            }],
        });
    }
    Ok(Outcome::with_code(report, if passed { 0 } else { CHECK_FAILED }))
}

fn stability(cli: &Cli) -> Run {
    let tol = tolerances(cli)?;
    let trials = cli.trials.unwrap_or(1000);
    let radius = cli.radius.unwrap_or(1.0);
    let config = CampaignConfig {
        trials,
        schedule: RadiusSchedule::Uniform(0.0, radius),
        seed: cli.seed.unwrap_or(0),
        require_base: true,
    };
    let inputs = Inputs::load(cli)?;
    let (report, _) = fuzz_campaign(&inputs.s, inputs.sigma()?, inputs.mu()?, &config, &tol)?;
    let code = if report.passed() { 0 } else { CHECK_FAILED };
    Ok(Outcome::with_code(report, code))
}

fn oracle(cli: &Cli) -> Run {
    let tag = *required(&cli.eq, "eq")?;
    let tol = tolerances(cli)?;
    let inputs = Inputs::load(cli)?;
    let n = inputs.s.order();
    if n > ORACLE_MAX_ORDER {
        return Err(Error::TooLarge {
            what: "the oracle",
            n,
            max: ORACLE_MAX_ORDER,
        }
        .into());
    }
    let closed = closed_form(tag, &inputs, &tol)?;
    let config = OracleConfig {
        starts: cli.starts.unwrap_or(200),
        seed: cli.seed.unwrap_or(0),
        ..OracleConfig::default()
    };
    let roots = newton_oracle(&inputs.s, inputs.sigma.as_ref(), inputs.mu.as_ref(), tag, &config, &tol)?;
    let closed_fs: Vec<ScalarFunction> = closed.functions().cloned().collect();
    let oracle_fs: Vec<ScalarFunction> = roots.iter().map(|r| r.f.clone()).collect();
    let cmp = compare_roots(&closed_fs, &oracle_fs, tol.oracle_tol);
    let partner = |i: usize| cmp.matched.iter().find(|m| m.0 == i).map(|m| m.1);
    let report = json!({
        "equation": tag,
        "starts": config.starts,
        "seed": config.seed,
        "roots": roots.iter().enumerate().map(|(i, r)| json!({
            "values": FunctionJson::from(&r.f).values,
            "residual": r.residual,
            "hits": r.hits,
            "matches": partner(i),
        })).collect::<Vec<_>>(),
        "closed_form": closed_fs.iter().map(|f| FunctionJson::from(f).values).collect::<Vec<_>>(),
        "unmatched_oracle": cmp.unmatched_oracle,
        "unmatched_closed": cmp.unmatched_closed,
        "coincide": cmp.coincide(),
    });
    Ok(Outcome::with_code(report, if cmp.coincide() { 0 } else { CHECK_FAILED }))
}

fn fixtures(cli: &Cli) -> Run {
    let dir = required(&cli.out, "out")?;
    let io = |source| Failure::Io {
        path: dir.clone(),
        source,
    };
    std::fs::create_dir_all(dir).map_err(io)?;
    let mut written = Vec::new();
    for (name, text) in feqlab_core::fixtures::files() {
        let path = dir.join(name);
        std::fs::write(&path, text).map_err(io)?;
        written.push(path.display().to_string());
    }
    Ok(Outcome::ok(json!({ "written": written })))
}
