//! Command-line front end: build codes from presets or TOML configs, run the
//! enumerations and closed forms side by side, and report.
//!
//! Exit codes: 0 when every computation agrees, 2 on any mathematical
//! disagreement (including against quoted values), 1 on usage or resource
//! errors.

pub mod config;
pub mod report;
pub mod tasks;

use std::path::PathBuf;

use anyhow::{anyhow, bail, Result};
use clap::{Args, Parser, Subcommand};
use qfcodes::gf::FieldTower;
use qfcodes::literal::Literal;
use qfcodes::{presets, Exec};

use config::{ExperimentConfig, Task};
use report::{Format, Report};
use tasks::{Lemma, RunOptions, Setup};

#[derive(Debug, Parser)]
#[command(
    name = "qfcodes",
    version,
    about = "Codes from quadratic forms over finite fields"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Enumeration budget in evaluation points (default 10^8).
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Worker threads for the parallel enumerations.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Run the sequential code path.
    #[arg(long, global = true)]
    pub sequential: bool,
    /// Re-derive results through a second enumeration route.
    #[arg(long, global = true)]
    pub audit: bool,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct Source {
    /// Named preset, see `preset list`.
    #[arg(long, conflicts_with = "config")]
    pub preset: Option<String>,
    /// TOML experiment config.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Moduli, primitive elements and symbol order of the tower.
    FieldInfo {
        #[command(flatten)]
        source: Source,
        /// Tower given directly as p,m,m1,m2.
        #[arg(long, value_delimiter = ',', conflicts_with_all = ["preset", "config"])]
        tower: Option<Vec<u64>>,
    },
    /// Rank, discriminant and sign of the quadratic form.
    Qf {
        #[command(flatten)]
        source: Source,
    },
    /// Parameters, weight distribution, Griesmer and minimality verdicts.
    Code {
        #[command(flatten)]
        source: Source,
    },
    /// Complete weight enumerator, enumerated against closed form.
    Cwe {
        #[command(flatten)]
        source: Source,
    },
    /// Weight hierarchy by subspace enumeration and closed form.
    Ghw {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        r_max: Option<usize>,
    },
    /// Descend to the prime field through the trace map.
    Descend {
        #[command(flatten)]
        source: Source,
        #[arg(long = "n", alias = "N")]
        n: Option<u64>,
        /// F_q literal for theta, e.g. "g^4" or "(1,2)".
        #[arg(long)]
        theta_override: Option<String>,
        #[arg(long)]
        ghw_r_max: Option<usize>,
        /// Continue when N violates the admissibility conditions.
        #[arg(long)]
        allow_inadmissible: bool,
    },
    /// Check the character-sum lemmas and solution counts.
    Verify {
        #[arg(value_enum)]
        which: Lemma,
        #[command(flatten)]
        source: Source,
    },
    /// Named parameter sets.
    Preset {
        #[command(subcommand)]
        action: PresetAction,
    },
    /// Run the task list of a TOML config.
    Run { config: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum PresetAction {
    List,
    /// Run qf, code, cwe and ghw (and descend, when the preset has N).
    Run {
        name: String,
        #[arg(long)]
        r_max: Option<usize>,
        #[arg(long)]
        allow_inadmissible: bool,
    },
}

/// A finished run: the report, its format, and the process exit code.
pub struct Outcome {
    pub report: Report,
    pub format: Format,
}

impl Outcome {
    pub fn exit_code(&self) -> u8 {
        if self.report.disagreements.is_empty() {
            0
        } else {
            2
        }
    }
}

fn options(g: &Global, config: Option<&ExperimentConfig>) -> RunOptions {
    let mut o = RunOptions::default();
    if let Some(b) = g.budget.or(config.and_then(|c| c.budget)) {
        o.budget = b;
    }
    o.exec = if g.sequential {
        Exec::Sequential
    } else {
        Exec::default()
    };
    o.audit = g.audit || config.is_some_and(|c| c.audit);
    o.r_max = config.and_then(|c| c.ghw_r_max);
    o
}

fn load(source: &Source) -> Result<(Setup, Option<ExperimentConfig>)> {
    match (&source.preset, &source.config) {
        (Some(name), _) => {
            let p = presets::find(name)
                .ok_or_else(|| anyhow!("unknown preset {name:?}; see `preset list`"))?;
            Ok((Setup::from_preset(&p)?, None))
        }
        (None, Some(path)) => {
            let c = ExperimentConfig::load(path)?;
            Ok((
                Setup::from_config(&c, &path.display().to_string())?,
                Some(c),
            ))
        }
        (None, None) => bail!("give --preset NAME or --config FILE"),
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    if let Some(n) = cli.global.threads {
        qfcodes::exec::set_threads(n);
    }
    let mut report = Report::default();
    let mut format = cli.global.format;
    let with_source = |source: &Source| -> Result<(Setup, RunOptions, Option<ExperimentConfig>)> {
        let (setup, config) = load(source)?;
        let opts = options(&cli.global, config.as_ref());
        Ok((setup, opts, config))
    };
    match &cli.command {
        Command::FieldInfo { source, tower } => match tower {
            Some(t) => {
                if t.len() != 4 {
                    bail!("--tower takes p,m,m1,m2");
                }
                let tower = FieldTower::build(t[0], t[1] as usize, t[2] as usize, t[3] as usize)?;
                tasks::field_info(&tower, &mut report);
            }
            None => {
                let (setup, _, _) = with_source(source)?;
                tasks::field_info(setup.code.tower(), &mut report);
            }
        },
        Command::Qf { source } => {
            let (setup, _, _) = with_source(source)?;
            tasks::qf(&setup, &mut report)?;
        }
        Command::Code { source } => {
            let (setup, opts, _) = with_source(source)?;
            tasks::code(&setup, &opts, &mut report)?;
        }
        Command::Cwe { source } => {
            let (setup, opts, _) = with_source(source)?;
            tasks::cwe(&setup, &opts, &mut report)?;
        }
        Command::Ghw { source, r_max } => {
            let (setup, mut opts, _) = with_source(source)?;
            opts.r_max = r_max.or(opts.r_max);
            tasks::ghw(&setup, &opts, &mut report)?;
        }
        Command::Descend {
            source,
            n,
            theta_override,
            ghw_r_max,
            allow_inadmissible,
        } => {
            let (setup, mut opts, _) = with_source(source)?;
            opts.r_max = ghw_r_max.or(opts.r_max);
            opts.allow_inadmissible = *allow_inadmissible;
            let theta = theta_override.as_deref().map(parse_literal).transpose()?;
            tasks::descend(&setup, *n, theta.as_ref(), &opts, &mut report)?;
        }
        Command::Verify { which, source } => {
            let (setup, opts, _) = with_source(source)?;
            tasks::verify(&setup, *which, &opts, &mut report)?;
        }
        Command::Preset {
            action: PresetAction::List,
        } => tasks::preset_list(&presets::all(), &mut report),
        Command::Preset {
            action:
                PresetAction::Run {
                    name,
                    r_max,
                    allow_inadmissible,
                },
        } => {
            let source = Source {
                preset: Some(name.clone()),
                config: None,
            };
            let (setup, mut opts, _) = with_source(&source)?;
            opts.r_max = *r_max;
            opts.allow_inadmissible = *allow_inadmissible;
            tasks::qf(&setup, &mut report)?;
            tasks::code(&setup, &opts, &mut report)?;
            tasks::cwe(&setup, &opts, &mut report)?;
            tasks::ghw(&setup, &opts, &mut report)?;
            if setup.descent_n.is_some() {
                tasks::descend(&setup, None, None, &opts, &mut report)?;
            }
        }
        Command::Run { config } => {
            let source = Source {
                preset: None,
                config: Some(config.clone()),
            };
            let (setup, opts, config) = with_source(&source)?;
            let config = config.expect("loaded from a file");
            format = format.or(config.format);
            for task in &config.tasks {
                match task {
                    Task::FieldInfo => tasks::field_info(setup.code.tower(), &mut report),
                    Task::Qf => tasks::qf(&setup, &mut report)?,
                    Task::Code => tasks::code(&setup, &opts, &mut report)?,
                    Task::Cwe => tasks::cwe(&setup, &opts, &mut report)?,
                    Task::Ghw => tasks::ghw(&setup, &opts, &mut report)?,
                    Task::Descend => tasks::descend(&setup, None, None, &opts, &mut report)?,
                    Task::VerifyLemmas => {
                        for l in [Lemma::LemmaBasic, Lemma::LemmaGauss, Lemma::Counts] {
                            tasks::verify(&setup, l, &opts, &mut report)?;
                        }
                    }
                }
            }
        }
    }
    Ok(Outcome {
        report,
        format: format.unwrap_or_default(),
    })
}

/// Command-line literals: TOML syntax first (`3`, `"g^2"`, `[1, 2]`), then a bare string.
fn parse_literal(s: &str) -> Result<Literal> {
    #[derive(serde::Deserialize)]
    struct Wrap {
        v: Literal,
    }
    let tuple = s
        .trim()
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .map(|t| format!("[{t}]"));
    let text = tuple.unwrap_or_else(|| s.to_string());
    match toml::from_str::<Wrap>(&format!("v = {text}")) {
        Ok(w) => Ok(w.v),
        Err(_) => Ok(Literal::Text(s.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals_from_the_command_line() {
        assert_eq!(parse_literal("3").unwrap(), Literal::Int(3));
        assert_eq!(parse_literal("g^4").unwrap(), Literal::Text("g^4".into()));
        assert_eq!(
            parse_literal("(1,2)").unwrap(),
            Literal::Tuple(vec![Literal::Int(1), Literal::Int(2)])
        );
    }
}
