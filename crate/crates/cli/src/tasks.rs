//! Report sections for each subcommand.

use std::collections::BTreeSet;

use anyhow::{anyhow, Result};
use qfcodes::code::{
    ab_minimal, cwe_relabeling, griesmer, griesmer_reading_divergence, params_of, CodeParams, Cwe,
    Mode, QfCode, Variant,
};
use qfcodes::cyclotomic::{
    count_solutions, count_solutions_brute, eta_twisted_sum_brute, eta_twisted_sum_closed,
    gauss_sum, pstar, qf_exp_sum_brute, qf_exp_sum_closed, CycFrac, CycInt,
};
use qfcodes::descent::{char_identity_check, orbit_check, DescendedCode, DescentParams};
use qfcodes::gf::{Field, FieldTower};
use qfcodes::ghw::{self, GhwRow, HierarchyOptions};
use qfcodes::literal::Literal;
use qfcodes::presets::{Preset, Reference};
use qfcodes::subspace::gaussian_binomial;
use qfcodes::Exec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::ExperimentConfig;
use crate::report::{Report, Section, Table};

/// A code plus whatever was quoted about it.
pub struct Setup {
    pub label: String,
    pub code: QfCode,
    pub reference: Option<Reference>,
    pub descent_n: Option<u64>,
    pub theta: Option<Literal>,
}

impl Setup {
    pub fn from_preset(p: &Preset) -> Result<Setup> {
        Ok(Setup {
            label: p.name.to_string(),
            code: p.code()?,
            reference: p.reference.clone(),
            descent_n: p.descent_n,
            theta: None,
        })
    }

    pub fn from_config(c: &ExperimentConfig, label: &str) -> Result<Setup> {
        Ok(Setup {
            label: label.into(),
            code: c.code()?,
            reference: None,
            descent_n: c.descent_n,
            theta: c.theta.clone(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub budget: u64,
    pub exec: Exec,
    pub audit: bool,
    pub r_max: Option<usize>,
    pub allow_inadmissible: bool,
    pub seed: u64,
}

impl Default for RunOptions {
    fn default() -> RunOptions {
        RunOptions {
            budget: qfcodes::code::BUDGET,
            exec: Exec::default(),
            audit: false,
            r_max: None,
            allow_inadmissible: false,
            seed: 0x5eed,
        }
    }
}

/// An element as nested coefficient tuples over the chain of base fields.
pub fn fmt_elem(field: &Field, x: u64) -> String {
    match field.base() {
        None => x.to_string(),
        Some(base) => {
            let parts: Vec<String> = field.digits(x).iter().map(|&d| fmt_elem(base, d)).collect();
            format!("({})", parts.join(","))
        }
    }
}

fn fmt_vec(v: &[u64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn fmt_params(p: &CodeParams, q: u64) -> String {
    format!("[{}, {}, {}]_{q}", p.n, p.k, p.d)
}

fn fmt_basis(field: &Field, basis: &[Vec<u64>]) -> String {
    let rows: Vec<String> = basis
        .iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(|&x| fmt_elem(field, x)).collect();
            format!("({})", cells.join(" "))
        })
        .collect();
    rows.join(" ")
}

fn fmt_opt(v: Option<u64>) -> String {
    v.map_or("-".into(), |x| x.to_string())
}

fn header(setup: &Setup) -> String {
    let t = setup.code.tower();
    let v = match setup.code.variant() {
        Variant::Homogeneous => "homogeneous",
        Variant::Affine => "affine",
    };
    format!(
        "{} (p={}, m={}, m1={}, m2={}, {v})",
        setup.label, t.p, t.m, t.m1, t.m2
    )
}

pub fn field_info(tower: &FieldTower, report: &mut Report) {
    let mut s = Section::new(format!(
        "field-info (p={}, m={}, m1={}, m2={})",
        tower.p, tower.m, tower.m1, tower.m2
    ));
    s.kv("q", tower.q());
    s.kv("M = m1 + m2", tower.total_degree());
    let mut t = Table::new(
        "fields",
        &[
            "field",
            "size",
            "base",
            "modulus (low to high)",
            "primitive",
        ],
    );
    let names = [
        ("F_p", &tower.fp),
        ("F_q", &tower.fq),
        ("F_q^m1", &tower.fq1),
        ("F_q^m2", &tower.fq2),
    ];
    for (name, f) in names {
        let (base, modulus) = match f.base() {
            None => ("-".to_string(), "-".to_string()),
            Some(b) => {
                let cs: Vec<String> = f.modulus().iter().map(|&c| fmt_elem(b, c)).collect();
                (b.size().to_string(), cs.join(" "))
            }
        };
        t.row(vec![
            name.into(),
            f.size().to_string(),
            base,
            modulus,
            fmt_elem(f, f.primitive()),
        ]);
    }
    s.tables.push(t);
    let mut order = Table::new("F_q symbol order", &["symbol", "element", "eta"]);
    for (i, x) in tower.fq.ordering().into_iter().enumerate() {
        order.row(vec![
            format!("w{i}"),
            fmt_elem(&tower.fq, x),
            tower.fq.eta(x).to_string(),
        ]);
    }
    s.tables.push(order);
    report.sections.push(s);
}

pub fn qf(setup: &Setup, report: &mut Report) -> Result<()> {
    let code = &setup.code;
    let an = code.analysis();
    let fq = code.fq();
    let mut s = Section::new(format!("quadratic form: {}", header(setup)));
    s.kv("rank r_Q", an.rank);
    s.kv("discriminant Delta", fmt_elem(fq, an.delta));
    s.kv("eps_Q = eta(Delta)", an.eps_q);
    s.kv("eps", an.eps);
    s.kv("radical dimension", an.radical.len());
    let gram_rank = qfcodes::linalg::rank(fq, &an.gram);
    if gram_rank != an.rank {
        report.disagree(format!(
            "r_Q from diagonalization {} but Gram rank {gram_rank}",
            an.rank
        ));
    }
    if let Some(r) = &setup.reference {
        s.kv("quoted (r_Q, eps_Q)", format!("({}, {})", r.rank, r.eps_q));
        if (r.rank, r.eps_q) != (an.rank, an.eps_q) {
            report.disagree(format!(
                "quoted (r_Q, eps_Q) = ({}, {}), computed ({}, {})",
                r.rank, r.eps_q, an.rank, an.eps_q
            ));
        }
    }
    let heads: Vec<String> = (0..an.gram.len()).map(|j| format!("c{j}")).collect();
    let head_refs: Vec<&str> = std::iter::once("row")
        .chain(heads.iter().map(|h| h.as_str()))
        .collect();
    let mut g = Table::new("Gram matrix (power basis)", &head_refs);
    for (i, row) in an.gram.iter().enumerate() {
        g.row(
            std::iter::once(format!("r{i}"))
                .chain(row.iter().map(|&x| fmt_elem(fq, x)))
                .collect(),
        );
    }
    s.tables.push(g);
    s.kv(
        "diagonal",
        an.diagonal
            .iter()
            .map(|&x| fmt_elem(fq, x))
            .collect::<Vec<_>>()
            .join(" "),
    );
    report.sections.push(s);
    Ok(())
}

pub fn code(setup: &Setup, opts: &RunOptions, report: &mut Report) -> Result<()> {
    let code = &setup.code;
    let q = code.q();
    let mut s = Section::new(format!("code: {}", header(setup)));
    let brute = code.weight_distribution_brute(Mode::Factored, opts.exec, opts.budget)?;
    if opts.audit {
        let literal = code.weight_distribution_brute(Mode::Literal, opts.exec, opts.budget)?;
        s.kv(
            "audit (per-point evaluation)",
            if literal == brute {
                "agrees"
            } else {
                "DIFFERS"
            },
        );
        if literal != brute {
            report.disagree("per-point weight distribution differs from the factored one");
        }
    }
    let predicted = code.weight_distribution_predicted()?;
    let params = params_of(&brute, code.length(), q)?;
    let params_closed = code.params_predicted()?;
    s.kv("parameters (enumerated)", fmt_params(&params, q));
    s.kv("parameters (closed form)", fmt_params(&params_closed, q));
    if brute != predicted {
        report.disagree("weight distribution: enumeration and closed form differ");
    }
    if let Some(r) = &setup.reference {
        let quoted = CodeParams {
            n: r.n,
            k: r.k,
            d: r.d,
        };
        s.kv("parameters (quoted)", fmt_params(&quoted, q));
        if quoted != params {
            report.disagree(format!(
                "quoted parameters {} but enumerated {}",
                fmt_params(&quoted, q),
                fmt_params(&params, q)
            ));
        }
    }
    let mut t = Table::new(
        "weight distribution",
        &["weight", "enumerated", "closed form", "agree"],
    );
    let weights: BTreeSet<u64> = brute.keys().chain(predicted.keys()).copied().collect();
    for w in weights {
        let (a, b) = (brute.get(&w).copied(), predicted.get(&w).copied());
        t.row(vec![
            w.to_string(),
            fmt_opt(a),
            fmt_opt(b),
            (a == b).to_string(),
        ]);
    }
    s.tables.push(t);
    let gr = griesmer(&params, q);
    s.kv("Griesmer bound", &gr.bound);
    s.kv(
        "Griesmer",
        if gr.meets {
            "meets".to_string()
        } else {
            format!("slack {}", gr.slack)
        },
    );
    let t = code.tower();
    s.kv(
        "Griesmer matches 'meets iff m1 = r_Q = 1'",
        !griesmer_reading_divergence(&gr, t.m1, code.analysis().rank),
    );
    s.kv("minimal (w_min/w_max > (q-1)/q)", ab_minimal(&brute, q));
    report.sections.push(s);
    Ok(())
}

fn cwe_rows(t: &mut Table, cols: &[&Cwe]) {
    let keys: BTreeSet<&Vec<u64>> = cols.iter().flat_map(|c| c.keys()).collect();
    for k in keys {
        let mut row = vec![fmt_vec(k)];
        row.extend(cols.iter().map(|c| fmt_opt(c.get(k).copied())));
        t.row(row);
    }
}

pub fn cwe(setup: &Setup, opts: &RunOptions, report: &mut Report) -> Result<()> {
    let code = &setup.code;
    let q = code.q() as usize;
    let fq = code.fq();
    let mut s = Section::new(format!("complete weight enumerator: {}", header(setup)));
    let order: Vec<String> = fq
        .ordering()
        .iter()
        .enumerate()
        .map(|(i, &x)| format!("w{i}={}", fmt_elem(fq, x)))
        .collect();
    s.kv("symbol order", order.join(" "));
    let brute = code.cwe_brute(Mode::Factored, opts.exec, opts.budget)?;
    if opts.audit {
        let literal = code.cwe_brute(Mode::Literal, opts.exec, opts.budget)?;
        s.kv(
            "audit (per-point evaluation)",
            if literal == brute {
                "agrees"
            } else {
                "DIFFERS"
            },
        );
        if literal != brute {
            report.disagree("per-point CWE differs from the factored one");
        }
    }
    let predicted = code.cwe_predicted()?;
    if predicted == brute {
        s.kv("closed form", "equal");
    } else if let Some(perm) = cwe_relabeling(&predicted, &brute, q) {
        s.kv(
            "closed form",
            format!("equal after relabeling nonzero symbols {perm:?}"),
        );
    } else {
        report.disagree("CWE: enumeration and closed form differ");
    }
    let quoted = setup.reference.as_ref().map(|r| r.cwe_map());
    if let Some(quoted) = &quoted {
        if quoted == &brute {
            s.kv("quoted", "equal");
        } else if let Some(perm) = cwe_relabeling(&brute, quoted, q) {
            s.kv(
                "quoted",
                format!("equal after relabeling nonzero symbols {perm:?}"),
            );
        } else {
            report.disagree("CWE differs from the quoted one under every relabeling");
        }
    }
    let mut t = match &quoted {
        Some(_) => Table::new(
            "compositions",
            &["composition", "enumerated", "closed form", "quoted"],
        ),
        None => Table::new(
            "compositions",
            &["composition", "enumerated", "closed form"],
        ),
    };
    match &quoted {
        Some(qd) => cwe_rows(&mut t, &[&brute, &predicted, qd]),
        None => cwe_rows(&mut t, &[&brute, &predicted]),
    }
    s.tables.push(t);
    report.sections.push(s);
    Ok(())
}

fn ghw_table(
    rows: &[GhwRow],
    field: &Field,
    quoted: bool,
    report: &mut Report,
    what: &str,
) -> Table {
    let mut heads = vec!["r", "d_brute", "d_closed", "agree"];
    if quoted {
        heads.push("d_quoted");
    }
    heads.push("witness basis");
    let mut t = Table::new("hierarchy", &heads);
    for row in rows {
        let agree = match row.brute_matches_closed() {
            Some(true) if row.witness_attains_closed != Some(false) => "yes",
            Some(_) => "NO",
            None => "-",
        };
        let mut cells = vec![
            row.r.to_string(),
            fmt_opt(row.brute),
            fmt_opt(row.closed),
            agree.into(),
        ];
        if quoted {
            cells.push(fmt_opt(row.reference));
        }
        cells.push(
            row.witness
                .as_ref()
                .map_or("-".into(), |w| fmt_basis(field, w)),
        );
        t.row(cells);
        if agree == "NO" {
            report.disagree(format!(
                "{what} d_{}: brute {} vs closed {}",
                row.r,
                fmt_opt(row.brute),
                fmt_opt(row.closed)
            ));
        }
        if row.reference_matches() == Some(false) {
            report.disagree(format!(
                "{what} d_{}: quoted {}, closed {}, brute {}; brute force arbitrates",
                row.r,
                fmt_opt(row.reference),
                fmt_opt(row.closed),
                fmt_opt(row.brute)
            ));
        }
    }
    t
}

pub fn ghw(setup: &Setup, opts: &RunOptions, report: &mut Report) -> Result<()> {
    let code = &setup.code;
    let k = code.dimension();
    let top = opts.r_max.unwrap_or(k).min(k);
    let mut s = Section::new(format!("generalized Hamming weights: {}", header(setup)));
    for r in 1..=top {
        eprintln!(
            "ghw: r = {r}, {} subspaces of {} points",
            gaussian_binomial(k, r, code.q()),
            code.points()
        );
    }
    let hopts = HierarchyOptions {
        r_max: opts.r_max,
        exec: opts.exec,
        budget: opts.budget,
        audit: opts.audit,
        reference: setup.reference.as_ref().map(|r| r.hierarchy.clone()),
    };
    let rep = ghw::hierarchy(code, &hopts);
    for row in &rep.rows {
        if let Some(e) = &row.brute_error {
            s.kv(&format!("d_{} enumeration skipped", row.r), e);
        }
    }
    if !rep.monotone {
        report.disagree("enumerated hierarchy is not strictly increasing");
    }
    s.tables.push(ghw_table(
        &rep.rows,
        code.fq(),
        hopts.reference.is_some(),
        report,
        "hierarchy",
    ));
    report.sections.push(s);
    Ok(())
}

pub fn descend(
    setup: &Setup,
    n: Option<u64>,
    theta: Option<&Literal>,
    opts: &RunOptions,
    report: &mut Report,
) -> Result<()> {
    let source = &setup.code;
    let tower = source.tower();
    let n = n
        .or(setup.descent_n)
        .ok_or_else(|| anyhow!("descent needs N (--n or descent_n in the config)"))?;
    let theta = theta.or(setup.theta.as_ref());
    let mut s = Section::new(format!("descent N = {n}: {}", header(setup)));
    let params = match theta {
        Some(lit) => DescentParams::with_theta(tower, n, lit.resolve(&tower.fq)?)?,
        None => match DescentParams::new(tower, n) {
            Ok(p) => p,
            Err(e) if opts.allow_inadmissible => {
                s.kv(
                    "admissibility",
                    format!("VIOLATED, continuing on request: {e}"),
                );
                report.disagree(format!("N = {n} is not admissible for this tower"));
                DescentParams::unchecked(tower, n)?
            }
            Err(e) => return Err(e.into()),
        },
    };
    s.kv("theta", fmt_elem(&tower.fq, params.theta));
    s.kv("order L of theta", params.l);
    s.kv(
        "source parameters (closed form)",
        fmt_params(&source.params_predicted()?, source.q()),
    );
    let code = DescendedCode::new(source.clone(), params.clone());
    let p = tower.p;

    let weights: BTreeSet<u64> = code.psi_weights().iter().skip(1).copied().collect();
    s.kv("psi weights (nonzero inputs)", format!("{weights:?}"));
    s.kv("psi weight expected", code.psi_weight_expected());
    let want = code.psi_weight_expected();
    if weights.len() != 1
        || !want.is_integer()
        || weights.iter().next().map(|&w| w as i64) != want.to_integer().try_into().ok()
    {
        report.disagree("psi is not constant weight (p-1)p^(m-1)/N");
    }

    let dim = code.verify_dimension(opts.budget)?;
    s.kv("descended length", code.length());
    s.kv("descended dimension (rank)", dim);
    if dim != code.dimension() {
        report.disagree(format!(
            "descended rank {dim}, expected {}",
            code.dimension()
        ));
    }
    let brute = code.weight_distribution_brute(Mode::Factored, opts.exec, opts.budget)?;
    let predicted = code.weight_distribution_predicted()?;
    s.kv(
        "descended parameters (enumerated)",
        fmt_params(&params_of(&brute, code.length(), p)?, p),
    );
    if brute != predicted {
        report.disagree("descended weight distribution: enumeration and scaled closed form differ");
    }
    let mut t = Table::new(
        "descended weights",
        &["weight", "enumerated", "closed form"],
    );
    let ws: BTreeSet<u64> = brute.keys().chain(predicted.keys()).copied().collect();
    for w in ws {
        t.row(vec![
            w.to_string(),
            fmt_opt(brute.get(&w).copied()),
            fmt_opt(predicted.get(&w).copied()),
        ]);
    }
    s.tables.push(t);

    let orbits = orbit_check(tower, &params);
    s.kv(
        "|F_p^* ∩ <theta>| (expected)",
        format!("{} ({})", orbits.intersection, orbits.expected_intersection),
    );
    s.kv(
        "F_p^* orbits on cosets of <theta>",
        format!("{} of {} cosets", orbits.orbits, orbits.cosets),
    );
    if orbits.intersection != orbits.expected_intersection || !orbits.transitive {
        report.disagree("stabilizer size or orbit transitivity fails");
    }
    let q = tower.q();
    let cost = (q - 1) * (q - 1) * params.l * (p - 1);
    if cost <= opts.budget {
        let (mut first, mut second) = (0u64, 0u64);
        for c in 1..q {
            for a in 1..q {
                let r = char_identity_check(tower, &params, c, a)?;
                first += (!r.first_holds) as u64;
                second += (!r.second_holds) as u64;
            }
        }
        s.kv(
            "orbit character identities",
            format!(
                "{} pairs (a, c); failures {first} and {second}",
                (q - 1) * (q - 1)
            ),
        );
        if first + second > 0 {
            report.disagree("orbit character-sum identities fail");
        }
    } else {
        s.kv(
            "orbit character identities",
            format!("skipped, {cost} terms exceed the budget"),
        );
    }

    let k = code.dimension();
    let top = opts.r_max.unwrap_or(k).min(k);
    for r in 1..=top {
        eprintln!(
            "descend: r = {r}, {} subspaces of {} points",
            gaussian_binomial(k, r, p),
            code.length()
        );
    }
    let rows = code.hierarchy(opts.r_max, opts.exec, opts.budget);
    for row in &rows {
        if let Some(e) = &row.brute_error {
            s.kv(&format!("d_{} enumeration skipped", row.r), e);
        }
    }
    let prime = Field::prime(p)?;
    s.tables.push(ghw_table(
        &rows,
        &prime,
        false,
        report,
        "descended hierarchy",
    ));
    report.sections.push(s);
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Lemma {
    /// eta-twisted character sums and Gauss-sum squares
    LemmaBasic,
    /// exponential sums of the quadratic form
    LemmaGauss,
    /// solution counts against enumeration
    Counts,
}

pub fn verify(setup: &Setup, which: Lemma, opts: &RunOptions, report: &mut Report) -> Result<()> {
    let code = &setup.code;
    let tower = code.tower();
    let fq = &tower.fq;
    let name = clap::ValueEnum::to_possible_value(&which)
        .map_or(String::new(), |v| v.get_name().to_string());
    let mut s = Section::new(format!("verify {name}: {}", header(setup)));
    match which {
        Lemma::LemmaBasic => {
            let mut t = Table::new("eta-twisted sums over F_q", &["k", "cases", "mismatches"]);
            for k in [1, 2] {
                let bad = fq
                    .indices()
                    .filter(|&b| {
                        CycFrac::from_cyc(eta_twisted_sum_brute(fq, k, b))
                            != eta_twisted_sum_closed(fq, k, b)
                    })
                    .count();
                t.row(vec![k.to_string(), fq.size().to_string(), bad.to_string()]);
                if bad > 0 {
                    report.disagree(format!("eta-twisted sum, k = {k}: {bad} mismatches"));
                }
            }
            s.tables.push(t);
            let g = gauss_sum(tower.p);
            let ok = g.mul(&g)? == CycInt::from_int(tower.p, pstar(tower.p));
            s.kv("g_p^2 = p*", ok);
            if !ok {
                report.disagree("Gauss sum square is not p*");
            }
        }
        Lemma::LemmaGauss => {
            let mut t = Table::new("exponential sums of z Q", &["z", "eta(-z)", "agree"]);
            for z in 1..fq.size() {
                let ok = CycFrac::from_cyc(qf_exp_sum_brute(code.form(), z))
                    == qf_exp_sum_closed(tower, code.analysis(), z);
                t.row(vec![
                    fmt_elem(fq, z),
                    fq.eta(fq.neg(z)).to_string(),
                    ok.to_string(),
                ]);
                if !ok {
                    report.disagree(format!("exponential sum at z = {}", fmt_elem(fq, z)));
                }
            }
            s.tables.push(t);
        }
        Lemma::Counts => {
            let (q, q2) = (tower.q(), tower.fq2.size());
            let per = code.points();
            let exhaustive = q * q * q * q2;
            let cases: Vec<(u64, u64, u64, u64)> = if exhaustive.saturating_mul(per) <= opts.budget
            {
                s.kv("mode", "exhaustive over (a, b, beta, c)");
                (0..exhaustive)
                    .map(|i| (i % q, (i / q) % q2, (i / (q * q2)) % q, i / (q * q * q2)))
                    .collect()
            } else {
                s.kv("mode", format!("200 samples, seed {:#x}", opts.seed));
                let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
                (0..200)
                    .map(|_| {
                        (
                            rng.gen_range(0..q),
                            rng.gen_range(0..q2),
                            rng.gen_range(0..q),
                            rng.gen_range(0..q),
                        )
                    })
                    .collect()
            };
            let mut bad = 0;
            for &(a, b, beta, c) in &cases {
                let closed = count_solutions(tower, code.analysis(), a, b, beta, c)?;
                if closed != count_solutions_brute(code.form(), a, b, beta, c, opts.budget)?.into()
                {
                    bad += 1;
                }
            }
            s.kv("cases", cases.len());
            s.kv("mismatches", bad);
            if bad > 0 {
                report.disagree(format!("{bad} solution counts differ from enumeration"));
            }
        }
    }
    report.sections.push(s);
    Ok(())
}

pub fn preset_list(presets: &[Preset], report: &mut Report) {
    let mut s = Section::new("presets");
    let mut t = Table::new(
        "presets",
        &["name", "(p,m,m1,m2)", "variant", "N", "summary"],
    );
    for p in presets {
        t.row(vec![
            p.name.into(),
            format!("({},{},{},{})", p.p, p.m, p.m1, p.m2),
            format!("{:?}", p.variant).to_lowercase(),
            p.descent_n.map_or("-".into(), |n| n.to_string()),
            p.summary.into(),
        ]);
    }
    s.tables.push(t);
    report.sections.push(s);
}
