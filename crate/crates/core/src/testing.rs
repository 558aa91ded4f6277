use crate::model::{Instance, Kind};
use crate::scalar::Scalar;
use crate::Rational;

pub(crate) fn q(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

pub(crate) fn inst(rows: &[&[(i64, i64)]]) -> Instance {
    Instance::from_ratios(Kind::Chores, rows).unwrap()
}

pub(crate) fn goods(rows: &[&[(i64, i64)]]) -> Instance {
    Instance::from_ratios(Kind::Goods, rows).unwrap()
}

pub(crate) fn qs(values: &[(i64, i64)]) -> Vec<Rational> {
    values.iter().map(|&(n, d)| q(n, d)).collect()
}
