use std::collections::BTreeMap;

use fairspan_core::{format_rational, PaymentVector, Rational};
use num_traits::Zero;
use serde::Serialize;

/// JSON report of `run` and `check`. Rationals are canonical strings;
/// machine and job labels are 1-based.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub mechanism: String,
    pub allocation: Vec<usize>,
    pub payments: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub makespan: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub welfare: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub opt: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base_makespan: Option<String>,
    pub certificates: BTreeMap<String, bool>,
    pub ratios: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_cycle: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<serde_json::Value>,
}

impl RunReport {
    pub fn new(mechanism: &str, allocation: Vec<usize>, payments: &PaymentVector) -> Self {
        RunReport {
            mechanism: mechanism.to_string(),
            allocation,
            payments: payments.as_slice().iter().map(format_rational).collect(),
            makespan: None,
            welfare: None,
            opt: None,
            base_makespan: None,
            certificates: BTreeMap::new(),
            ratios: BTreeMap::new(),
            witness_cycle: None,
            trace: None,
        }
    }

    pub fn all_certified(&self) -> bool {
        self.certificates.values().all(|&ok| ok)
    }
}

/// `num / den` as a canonical string; `"1"` for `0/0`, `"inf"` for `x/0`.
pub fn ratio(num: &Rational, den: &Rational) -> String {
    if den.is_zero() {
        if num.is_zero() { "1".into() } else { "inf".into() }
    } else {
        format_rational(&(num / den))
    }
}

/// Certificate-name suffix for a parameter: `1` -> `"1"`, `1/2` -> `"1_2"`.
pub fn tag(value: &Rational) -> String {
    format_rational(value).replace('/', "_")
}
