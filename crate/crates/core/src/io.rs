//! File formats. Rationals are always written as exact `"p/d"` strings;
//! the CSV export carries a lossy decimal column meant for plotting only.

use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::TreeFunction;
use crate::operators::{Basis, OperatorExpr};
use crate::poly::RationalPoly;
use crate::tree::TreeBall;
use crate::wave::CauchyData;

/// `p/d` with `d >= 1`, also for integers.
pub fn format_rational(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Accepts `p/d` or a bare integer `p`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    BigRational::from_str(s.trim()).map_err(|e| Error::Parse(format!("bad rational '{s}': {e}")))
}

fn format_all(xs: &[BigRational]) -> Vec<String> {
    xs.iter().map(format_rational).collect()
}

fn parse_all(xs: &[String]) -> Result<Vec<BigRational>> {
    xs.iter().map(|s| parse_rational(s)).collect()
}

fn parse_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FunctionFile {
    pub q: u32,
    #[serde(rename = "R")]
    pub radius: usize,
    pub domain_radius: usize,
    pub values: Vec<String>,
}

impl FunctionFile {
    pub fn from_function(f: &TreeFunction) -> Self {
        FunctionFile {
            q: f.q(),
            radius: f.ball().radius(),
            domain_radius: f.domain_radius(),
            values: format_all(f.values()),
        }
    }

    /// Builds the function on `ball`, or on a fresh ball when `None`.
    pub fn into_function(self, ball: Option<&Arc<TreeBall>>) -> Result<TreeFunction> {
        let ball = match ball {
            Some(b) if b.q() != self.q || b.radius() != self.radius => {
                return Err(Error::BallMismatch {
                    q_a: b.q(),
                    r_a: b.radius(),
                    q_b: self.q,
                    r_b: self.radius,
                })
            }
            Some(b) => b.clone(),
            None => Arc::new(TreeBall::new(self.q, self.radius)?),
        };
        TreeFunction::new(ball, self.domain_radius, parse_all(&self.values)?)
    }
}

pub fn function_to_json(f: &TreeFunction) -> String {
    to_json(&FunctionFile::from_function(f))
}

pub fn function_from_json(text: &str, ball: Option<&Arc<TreeBall>>) -> Result<TreeFunction> {
    parse_json::<FunctionFile>(text)?.into_function(ball)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CauchyFile {
    f0: FunctionFile,
    f1: FunctionFile,
}

pub fn cauchy_to_json(c: &CauchyData) -> String {
    to_json(&CauchyFile {
        f0: FunctionFile::from_function(c.f0()),
        f1: FunctionFile::from_function(c.f1()),
    })
}

pub fn cauchy_from_json(text: &str, ball: Option<&Arc<TreeBall>>) -> Result<CauchyData> {
    let file: CauchyFile = parse_json(text)?;
    let f0 = file.f0.into_function(ball)?;
    let f1 = file.f1.into_function(Some(f0.ball()))?;
    CauchyData::new(f0, f1)
}

pub fn poly_to_json(p: &RationalPoly) -> String {
    to_json(&format_all(p.coeffs()))
}

pub fn poly_from_json(text: &str) -> Result<RationalPoly> {
    let coeffs: Vec<String> = parse_json(text)?;
    Ok(RationalPoly::from_coeffs(parse_all(&coeffs)?))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct OperatorFile {
    basis: String,
    coefficients: Vec<String>,
}

pub fn operator_to_json(op: &OperatorExpr) -> String {
    let basis = match op.basis {
        Basis::Mu1Poly => "mu1_poly",
        Basis::MuCombination => "mu_combination",
    };
    to_json(&OperatorFile {
        basis: basis.into(),
        coefficients: format_all(&op.coefficients),
    })
}

pub fn operator_from_json(text: &str) -> Result<OperatorExpr> {
    let file: OperatorFile = parse_json(text)?;
    let coefficients = parse_all(&file.coefficients)?;
    match file.basis.as_str() {
        "mu1_poly" => Ok(OperatorExpr {
            basis: Basis::Mu1Poly,
            coefficients,
        }),
        "mu_combination" => Ok(OperatorExpr::mu_combination(coefficients)),
        other => Err(Error::Parse(format!("unknown basis '{other}'"))),
    }
}

/// `vertex,layer,value` rows; the value column is a rounded decimal for
/// display and cannot be read back exactly.
pub fn function_to_csv(f: &TreeFunction) -> String {
    let mut out = String::from("vertex,layer,value_display\n");
    let ball = f.ball();
    for m in 0..=f.domain_radius() {
        for v in ball.layer(m) {
            let x = f.values()[v].to_f64().unwrap_or(f64::NAN);
            writeln!(out, "{v},{m},{x:.12e}").expect("writing to a String");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::RandomRationals;

    #[test]
    fn rational_strings() {
        let x = BigRational::new((-6).into(), 4.into());
        assert_eq!(format_rational(&x), "-3/2");
        assert_eq!(format_rational(&BigRational::from_integer(5.into())), "5/1");
        assert_eq!(parse_rational("-3/2").unwrap(), x);
        assert_eq!(parse_rational("7").unwrap(), BigRational::from_integer(7.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
    }

    #[test]
    fn function_round_trip() {
        let ball = Arc::new(TreeBall::new(2, 3).unwrap());
        let f = RandomRationals::new(1).function(&ball, 2).unwrap();
        let text = function_to_json(&f);
        assert!(text.contains("\"R\": 3"));
        assert_eq!(function_from_json(&text, None).unwrap(), f);
        assert_eq!(function_from_json(&text, Some(&ball)).unwrap(), f);
        let other = Arc::new(TreeBall::new(2, 4).unwrap());
        assert_eq!(function_from_json(&text, Some(&other)).unwrap_err().code(), "ball-mismatch");
        assert_eq!(function_from_json("{", None).unwrap_err().code(), "parse-error");
    }

    #[test]
    fn cauchy_poly_operator_round_trip() {
        let ball = Arc::new(TreeBall::new(3, 2).unwrap());
        let mut rng = RandomRationals::new(2);
        let c = CauchyData::new(rng.function(&ball, 2).unwrap(), rng.function(&ball, 2).unwrap()).unwrap();
        assert_eq!(cauchy_from_json(&cauchy_to_json(&c), None).unwrap(), c);

        let p = RationalPoly::from_coeffs(vec![rng.rational(), rng.rational(), rng.nonzero_rational()]);
        assert_eq!(poly_from_json(&poly_to_json(&p)).unwrap(), p);

        let op = OperatorExpr::mu_combination(vec![rng.rational(), rng.nonzero_rational()]);
        let back = operator_from_json(&operator_to_json(&op)).unwrap();
        assert_eq!(back.basis, op.basis);
        assert_eq!(back.coefficients, op.coefficients);
        let op = OperatorExpr::mu1_poly(&p);
        let back = operator_from_json(&operator_to_json(&op)).unwrap();
        assert_eq!(back.basis, Basis::Mu1Poly);
        assert_eq!(back.coefficients, op.coefficients);
        assert!(operator_from_json(r#"{"basis":"x","coefficients":[]}"#).is_err());
    }

    #[test]
    fn csv_rows() {
        let ball = Arc::new(TreeBall::new(2, 2).unwrap());
        let f = TreeFunction::constant(ball, 1, BigRational::new(1.into(), 4.into())).unwrap();
        let csv = function_to_csv(&f);
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines.len(), 1 + 4);
        assert_eq!(lines[1], "0,0,2.500000000000e-1");
        assert!(lines[4].starts_with("3,1,"));
    }
}
