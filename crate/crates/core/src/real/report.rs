use std::str::FromStr;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

/// Serializes a float with 17 significant digits.
pub(crate) fn ser_f64<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if !x.is_finite() {
        return s.serialize_none();
    }
    // `+ 0.0` folds negative zero into zero
    let n = serde_json::Number::from_str(&format!("{:.16e}", x + 0.0)).map_err(serde::ser::Error::custom)?;
    n.serialize(s)
}

pub(crate) fn ser_opt_f64<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => ser_f64(v, s),
        None => s.serialize_none(),
    }
}

pub(crate) fn ser_complex<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeStruct;
    struct F(f64);
    impl Serialize for F {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            ser_f64(&self.0, s)
        }
    }
    let mut st = s.serialize_struct("Complex", 2)?;
    st.serialize_field("re", &F(z.re))?;
    st.serialize_field("im", &F(z.im))?;
    st.end()
}

pub(crate) fn ser_complex_vec<S: Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    struct C(Complex64);
    impl Serialize for C {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            ser_complex(&self.0, s)
        }
    }
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for z in v {
        seq.serialize_element(&C(*z))?;
    }
    seq.end()
}

/// A real or complex root value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum RootValue {
    Real(#[serde(serialize_with = "ser_f64")] f64),
    Complex(#[serde(serialize_with = "ser_complex")] Complex64),
}

impl RootValue {
    pub fn as_complex(&self) -> Complex64 {
        match *self {
            RootValue::Real(x) => Complex64::new(x, 0.0),
            RootValue::Complex(z) => z,
        }
    }

    pub fn as_real(&self) -> Option<f64> {
        match *self {
            RootValue::Real(x) => Some(x),
            RootValue::Complex(_) => None,
        }
    }
}

/// How a root was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    DiscriminantSeries,
    TrinomialSeries,
    /// `t_k` of the trigonometric solution, `k` in `0..3`.
    Trig(u8),
    Oracle,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Method::DiscriminantSeries => f.write_str("discriminant_series"),
            Method::TrinomialSeries => f.write_str("trinomial_series"),
            Method::Trig(k) => write!(f, "trig_{k}"),
            Method::Oracle => f.write_str("oracle"),
        }
    }
}

impl Serialize for Method {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The position of a root among the three, by absolute value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Longest,
    Shortest,
    Middle,
    UniqueReal,
    NotApplicable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Positive,
    Negative,
    Zero,
}

impl Sign {
    pub fn of(x: f64, zero_tol: f64) -> Sign {
        if x.abs() <= zero_tol {
            Sign::Zero
        } else if x > 0.0 {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
        }
    }
}

/// One evaluated root. A report that did not converge carries no value;
/// `classification` is set only once all three roots have been compared.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootReport {
    pub value: Option<RootValue>,
    pub method: Method,
    pub terms_used: u64,
    pub converged: bool,
    pub classification: Option<Classification>,
    pub sign: Option<Sign>,
    /// `|f(value)|`.
    #[serde(serialize_with = "ser_opt_f64")]
    pub residual: Option<f64>,
}

impl RootReport {
    pub fn real(value: f64, method: Method, terms_used: u64, sign: Sign, residual: f64) -> Self {
        RootReport {
            value: Some(RootValue::Real(value)),
            method,
            terms_used,
            converged: true,
            classification: None,
            sign: Some(sign),
            residual: Some(residual),
        }
    }

    pub fn not_converged(method: Method, terms_used: u64) -> Self {
        RootReport {
            value: None,
            method,
            terms_used,
            converged: false,
            classification: None,
            sign: None,
            residual: None,
        }
    }

    pub fn real_value(&self) -> Option<f64> {
        self.value.and_then(|v| v.as_real())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("root reports serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_has_seventeen_digits() {
        let r = RootReport::real(0.1, Method::Trig(1), 0, Sign::Positive, 0.0);
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains("\"value\":1.0000000000000001e-1"), "{s}");
        assert!(s.contains("\"method\":\"trig_1\""));
        assert!(s.contains("\"sign\":\"positive\""));
        assert!(s.contains("\"classification\":null"));
        let back: f64 = serde_json::from_str::<serde_json::Value>(&s).unwrap()["value"].as_f64().unwrap();
        assert_eq!(back, 0.1);
        let n = serde_json::to_string(&RootReport::not_converged(Method::DiscriminantSeries, 4)).unwrap();
        assert!(n.contains("\"value\":null") && n.contains("\"converged\":false"));
    }

    #[test]
    fn signs() {
        assert_eq!(Sign::of(1e-13, 1e-12), Sign::Zero);
        assert_eq!(Sign::of(-1.0, 1e-12), Sign::Negative);
        assert_eq!(Sign::Positive.flip(), Sign::Negative);
    }
}
