//! JSON instance files with exact rational strings.

use std::fs;
use std::path::Path;

use fairspan_core::{format_rational, parse_rational, Allocation, Instance, Kind, PaymentVector, Rational};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub kind: String,
    pub machines: usize,
    pub jobs: usize,
    pub costs: Vec<Vec<String>>,
}

impl InstanceFile {
    pub fn from_instance(instance: &Instance) -> Self {
        InstanceFile {
            kind: instance.kind().as_str().to_string(),
            machines: instance.machines(),
            jobs: instance.jobs(),
            costs: instance
                .rows()
                .iter()
                .map(|row| row.iter().map(format_rational).collect())
                .collect(),
        }
    }

    pub fn to_instance(&self) -> Result<Instance, CliError> {
        let kind: Kind = self.kind.parse()?;
        if self.costs.len() != self.machines || self.costs.iter().any(|row| row.len() != self.jobs) {
            return Err(CliError::Usage(format!(
                "cost matrix does not match declared size {}x{}",
                self.machines, self.jobs
            )));
        }
        let costs = self
            .costs
            .iter()
            .map(|row| row.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Instance::new(kind, costs)?)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

pub fn instance_to_json(instance: &Instance) -> Result<String, CliError> {
    to_json(&InstanceFile::from_instance(instance))
}

pub fn instance_from_json(text: &str) -> Result<Instance, CliError> {
    let file: InstanceFile = serde_json::from_str(text)?;
    file.to_instance()
}

pub fn read_instance(path: &Path) -> Result<Instance, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    instance_from_json(&text)
}

/// Comma-separated 1-based machine labels, e.g. `"1,2,2"`.
pub fn parse_allocation(text: &str, machines: usize) -> Result<Allocation, CliError> {
    let labels = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Usage(format!("bad machine label {s:?} in allocation")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Allocation::from_one_based(machines, &labels)?)
}

pub fn parse_payments(text: &str) -> Result<PaymentVector, CliError> {
    let values = text
        .split(',')
        .map(|s| parse_rational(s.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PaymentVector::new(values))
}

pub fn parse_list<T, F>(text: &str, parse: F) -> Result<Vec<T>, CliError>
where
    F: Fn(&str) -> Result<T, CliError>,
{
    text.split(',').map(|s| parse(s.trim())).collect()
}

pub fn rational_arg(text: &str) -> Result<Rational, CliError> {
    Ok(parse_rational(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use fairspan_core::Scalar;

    #[test]
    fn round_trip() {
        let inst = Instance::from_ratios(Kind::Chores, &[&[(1, 1), (5, 4)], &[(1, 2), (0, 1)]]).unwrap();
        let text = instance_to_json(&inst).unwrap();
        assert!(text.ends_with("}\n"));
        assert!(text.contains("\"5/4\""));
        assert_eq!(instance_from_json(&text).unwrap(), inst);
        assert_eq!(instance_to_json(&instance_from_json(&text).unwrap()).unwrap(), text);
    }

    #[test]
    fn decimals_and_non_canonical_input_are_read_exactly() {
        let text = r#"{"kind":"goods","machines":2,"jobs":2,"costs":[["0.25","2/4"],["1","3/2"]]}"#;
        let inst = instance_from_json(text).unwrap();
        assert_eq!(inst.kind(), Kind::Goods);
        assert_eq!(*inst.cost(0, 0), Rational::from_ratio(1, 4));
        assert_eq!(*inst.cost(0, 1), Rational::from_ratio(1, 2));
        assert!(instance_to_json(&inst).unwrap().contains("\"1/2\""));
    }

    #[test]
    fn rejects_malformed_files() {
        for text in [
            r#"{"kind":"chores","machines":2,"jobs":2,"costs":[["1","1"]]}"#,
            r#"{"kind":"chores","machines":2,"jobs":2,"costs":[["1","1"],["1"]]}"#,
            r#"{"kind":"tasks","machines":2,"jobs":2,"costs":[["1","1"],["1","1"]]}"#,
            r#"{"kind":"chores","machines":2,"jobs":2,"costs":[["1","x"],["1","1"]]}"#,
            r#"{"kind":"chores","machines":2,"jobs":2,"costs":[["1","-1"],["1","1"]]}"#,
            r#"{"kind":"chores","machines":2}"#,
        ] {
            assert!(instance_from_json(text).is_err(), "{text}");
        }
    }

    #[test]
    fn allocation_and_payment_literals() {
        let a = parse_allocation("1, 2,2", 2).unwrap();
        assert_eq!(a.to_one_based(), vec![1, 2, 2]);
        assert!(parse_allocation("1,3", 2).is_err());
        assert!(parse_allocation("0,1", 2).is_err());
        assert!(parse_allocation("1,,2", 2).is_err());
        let p = parse_payments("-9/8, 0.75").unwrap();
        assert_eq!(p[1], Rational::from_ratio(3, 4));
    }
}
