use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance above 1 before a ratio counts as exceeding the unit constant.
pub const UNIT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum InequalityKind {
    #[serde(rename = "HY")]
    HausdorffYoung,
    #[serde(rename = "HY_LORENTZ")]
    HausdorffYoungLorentz,
    #[serde(rename = "PALEY")]
    Paley,
    #[serde(rename = "HYP")]
    HausdorffYoungPaley,
    #[serde(rename = "HL")]
    HardyLittlewood,
    #[serde(rename = "DUAL_HLP")]
    DualHardyLittlewood,
    #[serde(rename = "MULT_51")]
    MultiplierLorentz,
    #[serde(rename = "MULT_56")]
    MultiplierWeighted,
    #[serde(rename = "DYADIC_55")]
    Dyadic,
}

impl InequalityKind {
    pub const ALL: [InequalityKind; 9] = [
        InequalityKind::HausdorffYoung,
        InequalityKind::HausdorffYoungLorentz,
        InequalityKind::Paley,
        InequalityKind::HausdorffYoungPaley,
        InequalityKind::HardyLittlewood,
        InequalityKind::DualHardyLittlewood,
        InequalityKind::MultiplierLorentz,
        InequalityKind::MultiplierWeighted,
        InequalityKind::Dyadic,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            InequalityKind::HausdorffYoung => "HY",
            InequalityKind::HausdorffYoungLorentz => "HY_LORENTZ",
            InequalityKind::Paley => "PALEY",
            InequalityKind::HausdorffYoungPaley => "HYP",
            InequalityKind::HardyLittlewood => "HL",
            InequalityKind::DualHardyLittlewood => "DUAL_HLP",
            InequalityKind::MultiplierLorentz => "MULT_51",
            InequalityKind::MultiplierWeighted => "MULT_56",
            InequalityKind::Dyadic => "DYADIC_55",
        }
    }

    /// Whether the inequality is claimed with constant exactly 1, so that a
    /// ratio above 1 is a provable failure rather than an empirical constant.
    pub fn has_unit_constant(self) -> bool {
        matches!(self, InequalityKind::HausdorffYoung | InequalityKind::Dyadic)
    }
}

impl fmt::Display for InequalityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Conjugate exponent, `1' = ∞`.
pub fn conjugate(p: f64) -> f64 {
    if p == 1.0 {
        f64::INFINITY
    } else if p.is_infinite() {
        1.0
    } else {
        p / (p - 1.0)
    }
}

/// `1/r = 2|1/p − 1/2|`.
pub fn multiplier_r(p: f64) -> f64 {
    1.0 / (2.0 * (1.0 / p - 0.5).abs())
}

/// `1/r = (2 − p)/p`.
pub fn hardy_littlewood_r(p: f64) -> f64 {
    p / (2.0 - p)
}

/// `1/γ = 1 − 1/q − 1/p`.
pub fn weighted_gamma(p: f64, q: f64) -> f64 {
    1.0 / (1.0 - 1.0 / q - 1.0 / p)
}

/// Rejects exponents outside the hypothesis range of `kind` before any
/// computation happens.
pub fn validate_exponents(kind: InequalityKind, p: f64, q: Option<f64>) -> Result<()> {
    let bad = |m: String| Err(Error::InvalidExponent(format!("{kind}: {m}")));
    if p.is_nan() || q.is_some_and(f64::is_nan) {
        return bad("exponents must be numbers".into());
    }
    let pd = conjugate(p);
    match kind {
        InequalityKind::HausdorffYoung if !(1.0..=2.0).contains(&p) => bad(format!("needs 1 ≤ p ≤ 2, got p = {p}")),
        InequalityKind::HausdorffYoungLorentz | InequalityKind::Paley if !(p > 1.0 && p <= 2.0) => {
            bad(format!("needs 1 < p ≤ 2, got p = {p}"))
        }
        InequalityKind::HardyLittlewood | InequalityKind::DualHardyLittlewood if !(p > 1.0 && p < 2.0) => bad(format!(
            "needs 1 < p < 2 (p = 2 makes 1/r = 0 degenerate), got p = {p}"
        )),
        InequalityKind::HausdorffYoungPaley => {
            let q = q.ok_or_else(|| Error::InvalidExponent("HYP needs q".into()))?;
            if !(p > 1.0 && p <= q && q <= pd && pd.is_finite()) {
                return bad(format!("needs 1 < p ≤ q ≤ p' < ∞, got p = {p}, q = {q}, p' = {pd}"));
            }
            Ok(())
        }
        InequalityKind::MultiplierLorentz => {
            let q = q.ok_or_else(|| Error::InvalidExponent("MULT_51 needs q".into()))?;
            if !(p > 1.0 && p.is_finite()) || p == 2.0 {
                return bad(format!("needs 1 < p < ∞ with p ≠ 2 (r = ∞ at p = 2), got p = {p}"));
            }
            if !(q > 0.0) {
                return bad(format!("needs 0 < q ≤ ∞, got q = {q}"));
            }
            Ok(())
        }
        InequalityKind::MultiplierWeighted => {
            let q = q.ok_or_else(|| Error::InvalidExponent("MULT_56 needs q".into()))?;
            if !(p >= 2.0 && p.is_finite() && pd <= q && q <= p) {
                return bad(format!("needs 2 ≤ p < ∞ and p' ≤ q ≤ p, got p = {p}, q = {q}"));
            }
            if !(1.0 - 1.0 / q - 1.0 / p > 0.0) {
                return bad(format!("needs 1/γ = 1/q' − 1/p > 0, got p = {p}, q = {q}"));
            }
            Ok(())
        }
        InequalityKind::Dyadic if !(p > 0.0 && p.is_finite()) => bad(format!("needs smoothness s > 0, got {p}")),
        _ => Ok(()),
    }
}

/// Exponents used by a report; absent entries do not apply to the kind.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Exponents {
    #[serde(with = "real")]
    pub p: f64,
    #[serde(with = "real")]
    pub p_dual: f64,
    #[serde(default, with = "real_opt", skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    #[serde(default, with = "real_opt", skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(default, with = "real_opt", skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(default, with = "real_opt", skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(default, with = "real_opt", skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
    #[serde(default, with = "real_opt", skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
}

impl Exponents {
    pub fn with_p(p: f64) -> Self {
        Exponents { p, p_dual: conjugate(p), ..Default::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub kind: InequalityKind,
    pub params: Exponents,
    #[serde(with = "real")]
    pub lhs: f64,
    #[serde(with = "real")]
    pub rhs: f64,
    #[serde(with = "real")]
    pub ratio: f64,
    /// Upper end of the operator-norm bracket when `lhs` is its lower end.
    #[serde(default, with = "real_opt", skip_serializing_if = "Option::is_none")]
    pub lhs_upper: Option<f64>,
    #[serde(with = "real_map")]
    pub factors: BTreeMap<String, f64>,
    pub instance: String,
    pub seed: Option<u64>,
    pub trial: Option<usize>,
    /// `lhs > rhs · (1 + 1e−9)`.
    pub exceeds_unit: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// `lhs / rhs` with `0/0 = 0`, `x/0 = ∞` and `x/∞ = 0` for finite `x`.
pub fn safe_ratio(lhs: f64, rhs: f64) -> f64 {
    if lhs == 0.0 {
        0.0
    } else if rhs == 0.0 {
        f64::INFINITY
    } else if rhs.is_infinite() && lhs.is_finite() {
        0.0
    } else {
        lhs / rhs
    }
}

impl InequalityReport {
    pub fn new(kind: InequalityKind, params: Exponents, lhs: f64, rhs: f64, instance: String) -> Self {
        let ratio = safe_ratio(lhs, rhs);
        InequalityReport {
            kind,
            params,
            lhs,
            rhs,
            ratio,
            lhs_upper: None,
            factors: BTreeMap::new(),
            instance,
            seed: None,
            trial: None,
            exceeds_unit: ratio > 1.0 + UNIT_TOL,
            notes: Vec::new(),
        }
    }

    pub fn factor(mut self, name: &str, value: f64) -> Self {
        self.factors.insert(name.to_string(), value);
        self
    }

    pub fn note(mut self, text: &str) -> Self {
        self.notes.push(text.to_string());
        self
    }

    pub fn with_seed(mut self, seed: u64, trial: usize) -> Self {
        self.seed = Some(seed);
        self.trial = Some(trial);
        self
    }

    /// A unit-constant inequality that failed.
    pub fn is_hard_violation(&self) -> bool {
        self.kind.has_unit_constant() && self.exceeds_unit
    }

    pub fn to_json_line(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub const CSV_HEADER: &'static str = "kind,p,q,r,gamma,beta,lhs,rhs,ratio,seed";

    pub fn to_csv_row(&self) -> String {
        let opt = |v: Option<f64>| v.map(format_real).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.kind,
            format_real(self.params.p),
            opt(self.params.q),
            opt(self.params.r),
            opt(self.params.gamma),
            opt(self.params.beta),
            format_real(self.lhs),
            format_real(self.rhs),
            format_real(self.ratio),
            self.seed.map(|s| s.to_string()).unwrap_or_default()
        )
    }
}

/// Shortest round-tripping decimal, with `inf`, `-inf` and `nan` spelled out.
pub fn format_real(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{v:?}")
    }
}

fn parse_real(s: &str) -> Option<f64> {
    match s {
        "inf" => Some(f64::INFINITY),
        "-inf" => Some(f64::NEG_INFINITY),
        "nan" => Some(f64::NAN),
        _ => None,
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RealRepr {
    Num(f64),
    Text(String),
}

impl From<f64> for RealRepr {
    fn from(v: f64) -> Self {
        if v.is_finite() {
            RealRepr::Num(v)
        } else {
            RealRepr::Text(format_real(v))
        }
    }
}

impl RealRepr {
    fn value<E: serde::de::Error>(self) -> std::result::Result<f64, E> {
        match self {
            RealRepr::Num(v) => Ok(v),
            RealRepr::Text(s) => parse_real(&s).ok_or_else(|| E::custom(format!("not a number: {s}"))),
        }
    }
}

/// JSON numbers for finite values, strings for the rest.
pub mod real {
    use super::RealRepr;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        RealRepr::from(*v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        RealRepr::deserialize(d)?.value()
    }
}

pub mod real_opt {
    use super::RealRepr;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
        v.map(RealRepr::from).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
        Option::<RealRepr>::deserialize(d)?.map(RealRepr::value).transpose()
    }
}

pub mod real_map {
    use std::collections::BTreeMap;

    use super::RealRepr;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &BTreeMap<String, f64>, s: S) -> Result<S::Ok, S::Error> {
        let out: BTreeMap<&String, RealRepr> = m.iter().map(|(k, v)| (k, RealRepr::from(*v))).collect();
        out.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<String, f64>, D::Error> {
        BTreeMap::<String, RealRepr>::deserialize(d)?
            .into_iter()
            .map(|(k, v)| v.value().map(|v| (k, v)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hypothesis_ranges() {
        use InequalityKind::*;
        assert!(validate_exponents(HausdorffYoung, 1.0, None).is_ok());
        assert!(validate_exponents(HausdorffYoung, 2.5, None).is_err());
        assert!(validate_exponents(Paley, 1.0, None).is_err());
        assert!(validate_exponents(HausdorffYoungPaley, 1.5, Some(3.5)).is_err());
        assert!(validate_exponents(HausdorffYoungPaley, 1.5, Some(2.5)).is_ok());
        assert!(validate_exponents(HardyLittlewood, 2.0, None).is_err());
        assert!(validate_exponents(MultiplierLorentz, 2.0, Some(1.0)).is_err());
        assert!(validate_exponents(MultiplierLorentz, 4.0, Some(f64::INFINITY)).is_ok());
        assert!(validate_exponents(MultiplierWeighted, 3.0, Some(3.0)).is_ok());
        assert!(validate_exponents(MultiplierWeighted, 2.0, Some(2.0)).is_err());
        assert!(validate_exponents(MultiplierWeighted, 3.0, Some(1.4)).is_err());
    }

    #[test]
    fn exponent_relations() {
        assert_eq!(conjugate(1.0), f64::INFINITY);
        assert!((conjugate(4.0 / 3.0) - 4.0).abs() < 1e-12);
        assert!((multiplier_r(4.0) - 2.0).abs() < 1e-12);
        assert!((multiplier_r(4.0 / 3.0) - 2.0).abs() < 1e-12);
        assert!((hardy_littlewood_r(1.5) - 3.0).abs() < 1e-12);
        assert!((weighted_gamma(4.0, 2.0) - 4.0).abs() < 1e-12);
    }

    #[test]
    fn ratio_edge_cases() {
        assert_eq!(safe_ratio(0.0, 0.0), 0.0);
        assert_eq!(safe_ratio(1.0, 0.0), f64::INFINITY);
        assert_eq!(safe_ratio(1.0, f64::INFINITY), 0.0);
        assert_eq!(safe_ratio(3.0, 2.0), 1.5);
    }

    #[test]
    fn non_finite_values_survive_json() {
        let mut params = Exponents::with_p(1.0);
        params.q = Some(f64::INFINITY);
        let r = InequalityReport::new(InequalityKind::HausdorffYoung, params, 1.0, 2.0, "cyclic:4".into())
            .factor("blowup", f64::INFINITY)
            .with_seed(7, 0);
        let line = r.to_json_line().unwrap();
        assert!(line.contains("\"p_dual\":\"inf\""));
        assert!(line.contains("\"kind\":\"HY\""));
        let back: InequalityReport = serde_json::from_str(&line).unwrap();
        assert_eq!(back, r);
        assert_eq!(r.to_csv_row(), "HY,1.0,inf,,,,1.0,2.0,0.5,7");
    }
}
