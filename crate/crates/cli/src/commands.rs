use std::fs;
use std::path::Path;

use fairspan_core::fairness::{
    heaviest_path_payments, is_alpha_envy_free, is_alpha_locally_efficient, is_cyclic_envy_free,
    is_mean_efficient, is_proportional, proportional_payments, EnvyGraph,
};
use fairspan_core::generators::{
    goods_lb_instance, lb_three_halves_instance, random_instance_with_denominator, RandomFamily,
};
use fairspan_core::goods::egalitarian_welfare;
use fairspan_core::mechanisms::{
    anti_diagonal_mechanism, cyclic_mechanism_traced, goods_normalized_optimal_mechanism,
    normalized_optimal_mechanism,
};
use fairspan_core::oracles::brute_force_opt;
use fairspan_core::{format_rational, makespan, Allocation, Error, Instance, Kind, Rational, Scalar};
use serde_json::json;

use crate::args::{Command, Family, KindArg, Mechanism};
use crate::io::{instance_to_json, parse_allocation, parse_payments, rational_arg, read_instance, to_json};
use crate::report::{ratio, tag, RunReport};
use crate::{enum_cap, sweep, CliError, EXIT_CERTIFICATE, EXIT_OK};

/// Text to emit and the exit code to finish with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub exit_code: u8,
    /// Extra diagnostics for the error stream.
    pub notes: Vec<String>,
}

pub fn execute(command: &Command) -> Result<Output, CliError> {
    match command {
        Command::Gen { family, m, n, eps, seed, kind, denominator, out } => {
            let inst = generate(*family, *m, *n, &rational_arg(eps)?, *seed, *kind, *denominator)?;
            emit(instance_to_json(&inst)?, EXIT_OK, Vec::new(), out.as_deref())
        }
        Command::Run { mechanism, instance, base_allocation, eps, with_opt, out } => {
            let inst = read_instance(instance)?;
            let eps = eps.as_deref().map(rational_arg).transpose()?;
            let report = run(*mechanism, &inst, base_allocation.as_deref(), eps.as_ref(), *with_opt)?;
            let code = if report.all_certified() { EXIT_OK } else { EXIT_CERTIFICATE };
            emit(to_json(&report)?, code, Vec::new(), out.as_deref())
        }
        Command::Check { instance, allocation, payments, alpha, out } => {
            let inst = read_instance(instance)?;
            let a = parse_allocation(allocation, inst.machines())?;
            let p = payments.as_deref().map(parse_payments).transpose()?;
            let report = check(&inst, &a, p.as_ref(), &rational_arg(alpha)?)?;
            let mut notes = Vec::new();
            if let Some(cycle) = &report.witness_cycle {
                let path: Vec<String> = cycle.iter().map(|v| v.to_string()).collect();
                notes.push(format!("witness cycle: {}", path.join("→")));
            }
            let code = if report.all_certified() { EXIT_OK } else { EXIT_CERTIFICATE };
            emit(to_json(&report)?, code, notes, out.as_deref())
        }
        Command::Sweep { family, m, n, eps, trials, seed, kind, out } => {
            let grid = sweep::Grid::parse(*family, m, n, eps, *trials, *seed, *kind)?;
            let rows = sweep::run(&grid, enum_cap()?)?;
            emit(sweep::to_csv(&rows)?, EXIT_OK, Vec::new(), out.as_deref())
        }
    }
}

fn emit(text: String, exit_code: u8, notes: Vec<String>, out: Option<&Path>) -> Result<Output, CliError> {
    match out {
        Some(path) => {
            fs::write(path, &text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            Ok(Output { text: String::new(), exit_code, notes })
        }
        None => Ok(Output { text, exit_code, notes }),
    }
}

pub fn kind_of(arg: KindArg) -> Kind {
    match arg {
        KindArg::Chores => Kind::Chores,
        KindArg::Goods => Kind::Goods,
    }
}

pub fn generate(
    family: Family,
    m: usize,
    n: usize,
    eps: &Rational,
    seed: u64,
    kind: KindArg,
    denominator: u32,
) -> Result<Instance, CliError> {
    let inst = match family {
        Family::Lb32 => lb_three_halves_instance(m, n, eps)?,
        Family::GoodsLb => goods_lb_instance(m, n)?,
        Family::Uniform => {
            random_instance_with_denominator(m, n, kind_of(kind), seed, RandomFamily::UniformUnit, denominator)?
        }
        Family::NormalizedUniform => random_instance_with_denominator(
            m,
            n,
            kind_of(kind),
            seed,
            RandomFamily::NormalizedUniform,
            denominator,
        )?,
    };
    Ok(inst)
}

fn base_allocation(
    inst: &Instance,
    literal: Option<&str>,
    opt: Option<&(Rational, Allocation)>,
) -> Result<Allocation, CliError> {
    match literal {
        Some("opt") | None => match opt {
            Some((_, a)) => Ok(a.clone()),
            None if literal.is_some() => Ok(brute_force_opt(inst, enum_cap()?)?.1),
            None => Err(CliError::Usage("this mechanism needs --base-allocation or --with-opt".into())),
        },
        Some(text) => parse_allocation(text, inst.machines()),
    }
}

pub fn run(
    mechanism: Mechanism,
    inst: &Instance,
    base: Option<&str>,
    eps: Option<&Rational>,
    with_opt: bool,
) -> Result<RunReport, CliError> {
    let exhaustive = matches!(mechanism, Mechanism::NormalizedOpt | Mechanism::GoodsNormalizedOpt);
    let opt = if with_opt || exhaustive { Some(brute_force_opt(inst, enum_cap()?)?) } else { None };

    let mut base_cost = None;
    let (outcome, trace, alpha) = match mechanism {
        Mechanism::AntiDiagonal => {
            let b = base_allocation(inst, base, opt.as_ref())?;
            base_cost = Some(makespan(inst, &b)?);
            let (outcome, t) = anti_diagonal_mechanism(inst, &b)?;
            let pairs = |v: &[(usize, usize)]| v.iter().map(|&(i, j)| [i + 1, j + 1]).collect::<Vec<_>>();
            let trace = json!({
                "chosen_k": t.chosen_k + 1,
                "swaps": pairs(&t.swaps),
                "merges": pairs(&t.merges),
                "initial_makespan": format_rational(&t.initial_makespan),
            });
            (outcome, Some(trace), None)
        }
        Mechanism::Cyclic => {
            let eps = eps.ok_or_else(|| CliError::Usage("cyclic needs --eps".into()))?;
            let b = base_allocation(inst, base, opt.as_ref())?;
            base_cost = Some(makespan(inst, &b)?);
            let (outcome, t) = cyclic_mechanism_traced(inst, &b, eps)?;
            let trace = json!({
                "moves": t.moves.iter().map(|&(k, from, to)| [k + 1, from + 1, to + 1]).collect::<Vec<_>>(),
                "moves_per_token": t.moves_per_token,
            });
            (outcome, Some(trace), Some(Rational::from_ratio(1, 1) - eps))
        }
        Mechanism::NormalizedOpt => (normalized_optimal_mechanism(inst, enum_cap()?)?, None, None),
        Mechanism::GoodsNormalizedOpt => (goods_normalized_optimal_mechanism(inst, enum_cap()?)?, None, None),
    };

    let a = &outcome.allocation;
    let mut report = RunReport::new(mechanism.name(), a.to_one_based(), &outcome.payments);
    report.trace = trace;
    // only what the mechanism guarantees, so a false entry is a real failure
    match &alpha {
        Some(alpha) => {
            let ok = is_cyclic_envy_free(inst, a, &outcome.payments, alpha)?;
            report.certificates.insert(format!("cyclic_ef_{}", tag(alpha)), ok);
        }
        None => {
            report.certificates.insert("mean_efficient".into(), is_mean_efficient(inst, a)?);
            report.certificates.insert("proportional".into(), is_proportional(inst, a, &outcome.payments)?);
        }
    }
    if let Some((value, _)) = &opt {
        report.opt = Some(format_rational(value));
    }
    match inst.kind() {
        Kind::Chores => {
            let span = makespan(inst, a)?;
            if let Some((value, _)) = &opt {
                report.ratios.insert("makespan/opt".into(), ratio(&span, value));
            }
            if let Some(b) = &base_cost {
                report.base_makespan = Some(format_rational(b));
                report.ratios.insert("makespan/base_makespan".into(), ratio(&span, b));
            }
            report.makespan = Some(format_rational(&span));
        }
        Kind::Goods => {
            let welfare = egalitarian_welfare(inst, a)?;
            if let Some((value, _)) = &opt {
                report.ratios.insert("opt/welfare".into(), ratio(value, &welfare));
            }
            report.welfare = Some(format_rational(&welfare));
        }
    }
    Ok(report)
}

/// Certifies `a`. Without explicit payments, proportionality is tested with
/// the proportional payments and envy-freeness with heaviest-path payments.
pub fn check(
    inst: &Instance,
    a: &Allocation,
    payments: Option<&fairspan_core::PaymentVector>,
    alpha: &Rational,
) -> Result<RunReport, CliError> {
    if let Some(p) = payments {
        if p.len() != inst.machines() {
            return Err(CliError::Usage(format!("{} payments for {} machines", p.len(), inst.machines())));
        }
    }
    let prop_payments = match payments {
        Some(p) => p.clone(),
        None => proportional_payments(inst, a)?,
    };
    let mut report = RunReport::new("check", a.to_one_based(), &prop_payments);
    report.certificates.insert("mean_efficient".into(), is_mean_efficient(inst, a)?);
    report.certificates.insert("proportional".into(), is_proportional(inst, a, &prop_payments)?);

    match inst.kind() {
        Kind::Chores => {
            report.makespan = Some(format_rational(&makespan(inst, a)?));
            let local = is_alpha_locally_efficient(inst, a, alpha)?;
            report.certificates.insert("locally_efficient".into(), local);
            if !local {
                let cycle = EnvyGraph::new(inst, a, alpha)?
                    .find_positive_cycle()
                    .expect("not locally efficient implies a positive cycle");
                report.witness_cycle = Some(cycle.iter().map(|v| v + 1).collect());
            }
            let ef_payments = match payments {
                Some(p) => Some(p.clone()),
                None => match heaviest_path_payments(inst, a, alpha) {
                    Ok(p) => Some(p),
                    Err(Error::PositiveCycle { .. }) => None,
                    Err(e) => return Err(e.into()),
                },
            };
            let (ef, cyclic) = match &ef_payments {
                Some(p) => (is_alpha_envy_free(inst, a, p, alpha)?, is_cyclic_envy_free(inst, a, p, alpha)?),
                None => (false, false),
            };
            report.certificates.insert(format!("ef_{}", tag(alpha)), ef);
            report.certificates.insert(format!("cyclic_ef_{}", tag(alpha)), cyclic);
            if payments.is_none() {
                if let Some(p) = &ef_payments {
                    report.trace = Some(json!({
                        "envy_free_payments": p.as_slice().iter().map(format_rational).collect::<Vec<_>>(),
                    }));
                }
            }
        }
        Kind::Goods => {
            report.welfare = Some(format_rational(&egalitarian_welfare(inst, a)?));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn lb32() -> Instance {
        lb_three_halves_instance(2, 2, &q(1, 2)).unwrap()
    }

    #[test]
    fn run_anti_diagonal_with_opt() {
        let r = run(Mechanism::AntiDiagonal, &lb32(), None, None, true).unwrap();
        assert_eq!(r.ratios["makespan/opt"], "3/2");
        assert!(r.certificates["mean_efficient"] && r.certificates["proportional"]);
        assert_eq!(r.allocation, vec![2, 2]);
        assert_eq!(r.payments, vec!["-9/8", "3/4"]);
        assert_eq!(r.trace.as_ref().unwrap()["chosen_k"], 1);
    }

    #[test]
    fn run_requires_base_or_opt() {
        assert!(matches!(run(Mechanism::AntiDiagonal, &lb32(), None, None, false), Err(CliError::Usage(_))));
        let r = run(Mechanism::AntiDiagonal, &lb32(), Some("opt"), None, false).unwrap();
        assert_eq!(r.base_makespan.as_deref(), Some("1"));
        assert!(r.opt.is_none());
        assert!(matches!(run(Mechanism::Cyclic, &lb32(), Some("1,2"), None, false), Err(CliError::Usage(_))));
    }

    #[test]
    fn run_cyclic_example() {
        let inst = Instance::from_ratios(Kind::Chores, &[&[(1, 1), (1, 1)], &[(1, 4), (1, 1)]]).unwrap();
        let r = run(Mechanism::Cyclic, &inst, Some("1,2"), Some(&q(1, 2)), false).unwrap();
        assert_eq!(r.payments, vec!["0", "5/8"]);
        assert!(r.certificates["cyclic_ef_1_2"]);
        assert_eq!(r.ratios["makespan/base_makespan"], "5/4");
    }

    #[test]
    fn run_normalized_opt_reports_unit_ratio() {
        let inst = Instance::from_ratios(Kind::Chores, &[&[(1, 2), (1, 2)], &[(1, 4), (3, 4)]]).unwrap();
        let r = run(Mechanism::NormalizedOpt, &inst, None, None, false).unwrap();
        assert_eq!(r.makespan.as_deref(), Some("1/2"));
        assert_eq!(r.ratios["makespan/opt"], "1");
        let goods = Instance::from_ratios(Kind::Goods, &[&[(1, 2), (1, 2)], &[(1, 4), (3, 4)]]).unwrap();
        let r = run(Mechanism::GoodsNormalizedOpt, &goods, None, None, false).unwrap();
        assert_eq!(r.welfare.as_deref(), Some("1/2"));
        assert_eq!(r.ratios["opt/welfare"], "1");
    }

    #[test]
    fn check_examples() {
        let r = check(&lb32(), &Allocation::from_one_based(2, &[1, 2]).unwrap(), None, &q(1, 1)).unwrap();
        assert!(!r.certificates["mean_efficient"]);
        assert!(!r.all_certified());

        let zero = Instance::from_ratios(Kind::Chores, &[&[(0, 1), (0, 1)], &[(0, 1), (0, 1)]]).unwrap();
        let p = fairspan_core::PaymentVector::zeros(2);
        let r = check(&zero, &Allocation::from_one_based(2, &[2, 2]).unwrap(), Some(&p), &q(1, 1)).unwrap();
        assert!(r.all_certified());
        assert_eq!(r.certificates.len(), 5);

        let swap = Instance::from_ratios(Kind::Chores, &[&[(2, 1), (1, 1)], &[(1, 1), (2, 1)]]).unwrap();
        let r = check(&swap, &Allocation::from_one_based(2, &[1, 2]).unwrap(), None, &q(1, 1)).unwrap();
        assert!(!r.certificates["locally_efficient"]);
        assert!(!r.certificates["ef_1"]);
        assert_eq!(r.witness_cycle, Some(vec![1, 2, 1]));
    }

    #[test]
    fn check_rejects_wrong_payment_count() {
        let p = fairspan_core::PaymentVector::zeros(3);
        let a = Allocation::from_one_based(2, &[1, 2]).unwrap();
        assert!(check(&lb32(), &a, Some(&p), &q(1, 1)).is_err());
    }

    #[test]
    fn generate_validates() {
        assert!(generate(Family::Lb32, 3, 2, &q(1, 2), 0, KindArg::Chores, 1000).is_err());
        let a = generate(Family::Uniform, 2, 2, &q(1, 2), 7, KindArg::Chores, 1000).unwrap();
        let b = generate(Family::Uniform, 2, 2, &q(1, 2), 7, KindArg::Chores, 1000).unwrap();
        assert_eq!(a, b);
    }
}
