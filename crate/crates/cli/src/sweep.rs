//! Price-of-fairness sweeps: every applicable mechanism on every grid point,
//! one CSV row per (trial, mechanism).

use fairspan_core::fairness::{is_mean_efficient, is_proportional, proportional_payments};
use fairspan_core::goods::egalitarian_welfare;
use fairspan_core::mechanisms::{
    anti_diagonal_mechanism, cyclic_mechanism, goods_normalized_optimal_mechanism, normalized_optimal_mechanism,
};
use fairspan_core::oracles::{best_proportionable, brute_force_opt};
use fairspan_core::{
    format_rational, makespan, normalization_factor, Error, Instance, Kind, MechanismOutcome, Rational, Scalar,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::args::{Family, KindArg};
use crate::commands::generate;
use crate::io::{parse_list, rational_arg};
use crate::report::ratio;
use crate::CliError;

pub const CHORES_MECHANISMS: [&str; 4] = ["anti-diagonal", "cyclic", "normalized-opt", "best-proportionable"];
pub const GOODS_MECHANISMS: [&str; 2] = ["goods-normalized-opt", "best-proportionable"];

#[derive(Debug, Clone)]
pub struct Grid {
    pub family: Family,
    pub machines: Vec<usize>,
    pub jobs: Vec<usize>,
    pub eps: Vec<Rational>,
    pub trials: u64,
    pub seed: u64,
    pub kind: KindArg,
}

impl Grid {
    pub fn parse(
        family: Family,
        machines: &str,
        jobs: &str,
        eps: &str,
        trials: u64,
        seed: u64,
        kind: KindArg,
    ) -> Result<Self, CliError> {
        let count = |s: &str| s.parse::<usize>().map_err(|_| CliError::Usage(format!("bad size {s:?}")));
        Ok(Grid {
            family,
            machines: parse_list(machines, count)?,
            jobs: parse_list(jobs, count)?,
            eps: parse_list(eps, rational_arg)?,
            trials,
            seed,
            kind,
        })
    }

    fn tasks(&self) -> Vec<Task> {
        let eps: Vec<Option<Rational>> = match self.family {
            Family::Lb32 => self.eps.iter().cloned().map(Some).collect(),
            _ => vec![None],
        };
        let trials = if self.family.is_random() { self.trials } else { 1 };
        let mut tasks = Vec::new();
        for &m in &self.machines {
            for &n in &self.jobs {
                for e in &eps {
                    for t in 0..trials {
                        tasks.push(Task { seed: self.seed + t, m, n, eps: e.clone() });
                    }
                }
            }
        }
        tasks
    }
}

#[derive(Debug, Clone)]
struct Task {
    seed: u64,
    m: usize,
    n: usize,
    eps: Option<Rational>,
}

/// For goods the `makespan` column holds the egalitarian welfare and
/// `ratio` is `opt / welfare`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Row {
    pub seed: u64,
    pub m: usize,
    pub n: usize,
    pub family: String,
    pub eps: String,
    pub mechanism: String,
    pub makespan: String,
    pub opt: String,
    pub ratio: String,
    pub mean_efficient: String,
    pub proportional: String,
    pub status: String,
}

pub fn run(grid: &Grid, cap: u64) -> Result<Vec<Row>, CliError> {
    let per_task: Vec<Vec<Row>> = grid
        .tasks()
        .par_iter()
        .map(|task| rows_for(grid, task, cap))
        .collect::<Result<_, _>>()?;
    Ok(per_task.into_iter().flatten().collect())
}

pub fn to_csv(rows: &[Row]) -> Result<String, CliError> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.serialize(row)?;
    }
    if rows.is_empty() {
        writer.write_record([
            "seed", "m", "n", "family", "eps", "mechanism", "makespan", "opt", "ratio", "mean_efficient",
            "proportional", "status",
        ])?;
    }
    let bytes = writer.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
}

fn rows_for(grid: &Grid, task: &Task, cap: u64) -> Result<Vec<Row>, CliError> {
    let half = Rational::from_ratio(1, 2);
    let inst = generate(
        grid.family,
        task.m,
        task.n,
        task.eps.as_ref().unwrap_or(&half),
        task.seed,
        grid.kind,
        fairspan_core::generators::DEFAULT_DENOMINATOR,
    )?;
    let normalized = normalization_factor(&inst).is_some();
    let names: Vec<&str> = match inst.kind() {
        Kind::Chores => CHORES_MECHANISMS.to_vec(),
        Kind::Goods => GOODS_MECHANISMS.to_vec(),
    }
    .into_iter()
    .filter(|name| normalized || !name.contains("normalized"))
    .collect();
    let blank = |mechanism: &str, status: &str| Row {
        seed: task.seed,
        m: task.m,
        n: task.n,
        family: grid.family.name().to_string(),
        eps: task.eps.as_ref().map(format_rational).unwrap_or_default(),
        mechanism: mechanism.to_string(),
        makespan: String::new(),
        opt: String::new(),
        ratio: String::new(),
        mean_efficient: String::new(),
        proportional: String::new(),
        status: status.to_string(),
    };

    let (opt, witness) = match brute_force_opt(&inst, cap) {
        Ok(found) => found,
        Err(Error::CapExceeded { .. }) => return Ok(names.iter().map(|name| blank(name, "skipped")).collect()),
        Err(e) => return Err(e.into()),
    };

    let mut rows = Vec::with_capacity(names.len());
    for name in names {
        let outcome = match name {
            "anti-diagonal" => anti_diagonal_mechanism(&inst, &witness)?.0,
            "cyclic" => cyclic_mechanism(&inst, &witness, &half)?,
            "normalized-opt" => normalized_optimal_mechanism(&inst, cap)?,
            "goods-normalized-opt" => goods_normalized_optimal_mechanism(&inst, cap)?,
            "best-proportionable" => {
                let (_, a) = best_proportionable(&inst, cap)?.expect("a mean-efficient allocation exists");
                let p = proportional_payments(&inst, &a)?;
                MechanismOutcome::new(a, p, fairspan_core::MechanismSource::External)?
            }
            other => unreachable!("unknown mechanism {other}"),
        };
        let mut row = blank(name, "ok");
        fill(&mut row, &inst, &outcome, &opt)?;
        rows.push(row);
    }
    Ok(rows)
}

fn fill(row: &mut Row, inst: &Instance, outcome: &MechanismOutcome, opt: &Rational) -> Result<(), CliError> {
    let a = &outcome.allocation;
    let (value, r) = match inst.kind() {
        Kind::Chores => {
            let span = makespan(inst, a)?;
            let r = ratio(&span, opt);
            (span, r)
        }
        Kind::Goods => {
            let welfare = egalitarian_welfare(inst, a)?;
            let r = ratio(opt, &welfare);
            (welfare, r)
        }
    };
    row.makespan = format_rational(&value);
    row.opt = format_rational(opt);
    row.ratio = r;
    row.mean_efficient = is_mean_efficient(inst, a)?.to_string();
    row.proportional = is_proportional(inst, a, &outcome.payments)?.to_string();
    Ok(())
}
