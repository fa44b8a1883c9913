//! TOML experiment configs.
//!
//! ```toml
//! variant = "homogeneous"          # or "affine"
//! tasks = ["code", "cwe", "ghw"]   # field-info qf code cwe ghw descend verify-lemmas
//!
//! [tower]
//! p = 5
//! m = 1
//! m1 = 3
//! m2 = 2
//!
//! [form]
//! frobenius = [{ coeff = 1, power = 0 }]
//! trace_square = [{ scale = "-1/3", inner = 1 }]
//! ```
//!
//! Element literals follow [`qfcodes::literal::Literal`]: integers, `"a/b"`,
//! `"g^k"`, or coefficient lists over the immediate base field as printed by
//! `field-info`.

use std::path::Path;

use anyhow::{Context, Result};
use qfcodes::code::{QfCode, Variant};
use qfcodes::gf::FieldTower;
use qfcodes::literal::Literal;
use qfcodes::presets::{build_spec, Term};
use qfcodes::quadform::QuadForm;
use serde::Deserialize;

use crate::report::Format;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    FieldInfo,
    Qf,
    Code,
    Cwe,
    Ghw,
    Descend,
    VerifyLemmas,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VariantName {
    #[default]
    Homogeneous,
    Affine,
}

impl From<VariantName> for Variant {
    fn from(v: VariantName) -> Variant {
        match v {
            VariantName::Homogeneous => Variant::Homogeneous,
            VariantName::Affine => Variant::Affine,
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerConfig {
    pub p: u64,
    #[serde(default = "one")]
    pub m: usize,
    pub m1: usize,
    pub m2: usize,
}

fn one() -> usize {
    1
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrobConfig {
    pub coeff: Literal,
    #[serde(default)]
    pub power: usize,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceSquareConfig {
    pub scale: Literal,
    #[serde(default = "unit")]
    pub inner: Literal,
}

fn unit() -> Literal {
    Literal::Int(1)
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormConfig {
    #[serde(default)]
    pub frobenius: Vec<FrobConfig>,
    #[serde(default)]
    pub trace_square: Vec<TraceSquareConfig>,
    /// Symmetric `m1 x m1` matrix over `F_q` in the power basis; adds `x^T A x`.
    pub matrix: Option<Vec<Vec<Literal>>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub tower: TowerConfig,
    pub form: FormConfig,
    #[serde(default)]
    pub variant: VariantName,
    pub descent_n: Option<u64>,
    /// Explicit `theta` of order `(q-1)/N`, an `F_q` literal.
    pub theta: Option<Literal>,
    #[serde(default = "default_tasks")]
    pub tasks: Vec<Task>,
    pub budget: Option<u64>,
    pub format: Option<Format>,
    #[serde(default)]
    pub audit: bool,
    pub ghw_r_max: Option<usize>,
}

fn default_tasks() -> Vec<Task> {
    vec![Task::Qf, Task::Code, Task::Cwe, Task::Ghw]
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<ExperimentConfig> {
        Ok(toml::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<ExperimentConfig> {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        ExperimentConfig::parse(&text).with_context(|| format!("in config {}", path.display()))
    }

    pub fn tower(&self) -> Result<FieldTower> {
        let t = &self.tower;
        Ok(FieldTower::build(t.p, t.m, t.m1, t.m2)?)
    }

    pub fn code(&self) -> Result<QfCode> {
        let tower = self.tower()?;
        let terms: Vec<Term> = self
            .form
            .frobenius
            .iter()
            .map(|f| Term::Frob {
                coeff: f.coeff.clone(),
                power: f.power,
            })
            .chain(self.form.trace_square.iter().map(|t| Term::TraceSquare {
                scale: t.scale.clone(),
                inner: t.inner.clone(),
            }))
            .collect();
        let mut spec = build_spec(&tower, &terms).context("in [form]")?;
        if let Some(rows) = &self.form.matrix {
            let m = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|l| l.resolve(&tower.fq))
                        .collect::<qfcodes::Result<Vec<_>>>()
                })
                .collect::<qfcodes::Result<Vec<_>>>()
                .context("in form.matrix")?;
            spec.matrix = Some(m);
        }
        let form = QuadForm::new(&tower, spec).context("in [form]")?;
        Ok(QfCode::new(form, self.variant.into())?)
    }
}
