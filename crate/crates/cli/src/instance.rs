//! JSON instance files.

use serde::{Deserialize, Serialize};

use rees_core::field::{Coefficient, FieldSpec};
use rees_core::mubasis::{validate, ParamCurve, SpaceCurve};
use rees_core::poly::BinaryForm;

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum FieldJson {
    Named(String),
    Prime { prime: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum CoeffJson {
    Int(i64),
    Text(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum Body {
    PlaneCurve { f: [Vec<CoeffJson>; 3] },
    SpaceCurve { d: u32, mu1: u32, mu2: u32, alpha: Vec<CoeffJson>, beta: Vec<CoeffJson> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct InstanceJson {
    field: FieldJson,
    #[serde(flatten)]
    body: Body,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Plane(ParamCurve),
    Space(SpaceCurve),
}

fn field_from_json(f: &FieldJson) -> Result<FieldSpec, CliError> {
    Ok(match f {
        FieldJson::Named(s) => s.parse()?,
        FieldJson::Prime { prime } => FieldSpec::prime(*prime)?,
    })
}

fn form_from_json(field: FieldSpec, coeffs: &[CoeffJson], what: &str) -> Result<BinaryForm, CliError> {
    if coeffs.is_empty() {
        return Err(CliError::Input(format!("{what}: empty coefficient list")));
    }
    let cs = coeffs
        .iter()
        .map(|c| match c {
            CoeffJson::Int(n) => Ok(field.from_i64(*n)),
            CoeffJson::Text(s) => field.parse_coefficient(s),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BinaryForm::new(field, cs))
}

fn coeff_to_json(c: &Coefficient) -> CoeffJson {
    let s = c.to_string();
    match s.parse::<i64>() {
        Ok(n) => CoeffJson::Int(n),
        Err(_) => CoeffJson::Text(s),
    }
}

fn form_to_json(f: &BinaryForm) -> Vec<CoeffJson> {
    f.coeffs().iter().map(coeff_to_json).collect()
}

fn field_to_json(f: FieldSpec) -> FieldJson {
    match f {
        FieldSpec::Rationals => FieldJson::Named("rational".into()),
        FieldSpec::Prime(p) => FieldJson::Prime { prime: p },
    }
}

impl Instance {
    pub fn parse(text: &str) -> Result<Instance, CliError> {
        let raw: InstanceJson =
            serde_json::from_str(text).map_err(|e| CliError::Input(format!("instance file: {e}")))?;
        let field = field_from_json(&raw.field)?;
        match &raw.body {
            Body::PlaneCurve { f } => {
                let forms = [
                    form_from_json(field, &f[0], "f0")?,
                    form_from_json(field, &f[1], "f1")?,
                    form_from_json(field, &f[2], "f2")?,
                ];
                let lens: Vec<usize> = f.iter().map(Vec::len).collect();
                if lens.iter().any(|&l| l != lens[0]) {
                    return Err(CliError::Input(format!("f components have different lengths {lens:?}")));
                }
                let curve = ParamCurve::new(forms)?;
                validate(&curve)?;
                Ok(Instance::Plane(curve))
            }
            Body::SpaceCurve { d, mu1, mu2, alpha, beta } => {
                let alpha = form_from_json(field, alpha, "alpha")?;
                let beta = form_from_json(field, beta, "beta")?;
                Ok(Instance::Space(SpaceCurve::new(*d, *mu1, *mu2, alpha, beta)?))
            }
        }
    }

    pub fn to_json(&self) -> String {
        let raw = match self {
            Instance::Plane(c) => InstanceJson {
                field: field_to_json(c.field()),
                body: Body::PlaneCurve { f: c.forms().each_ref().map(form_to_json) },
            },
            Instance::Space(s) => InstanceJson {
                field: field_to_json(s.field),
                body: Body::SpaceCurve {
                    d: s.d,
                    mu1: s.mu1,
                    mu2: s.mu2,
                    alpha: form_to_json(&s.alpha),
                    beta: form_to_json(&s.beta),
                },
            },
        };
        let mut s = serde_json::to_string_pretty(&raw).expect("instance serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plane_round_trip_with_fractions() {
        let text = r#"{"field":"rational","kind":"plane-curve","f":[[1,0,"-3/7"],[0,1,0],[0,0,"2"]]}"#;
        let inst = Instance::parse(text).unwrap();
        let again = Instance::parse(&inst.to_json()).unwrap();
        assert_eq!(inst, again);
        assert!(inst.to_json().contains("\"-3/7\""));
    }

    #[test]
    fn unicode_minus_is_accepted() {
        let text = r#"{"field":"rational","kind":"plane-curve","f":[[1,0,0],[0,1,0],[0,0,"−1/2"]]}"#;
        let Instance::Plane(c) = Instance::parse(text).unwrap() else { panic!() };
        assert_eq!(c.forms()[2].coeff(2).to_string(), "-1/2");
    }

    #[test]
    fn space_round_trip_over_prime() {
        let text =
            r#"{"field":{"prime":101},"kind":"space-curve","d":4,"mu1":1,"mu2":1,"alpha":[1,0,0,0],"beta":[0,0,0,1]}"#;
        let inst = Instance::parse(text).unwrap();
        assert_eq!(Instance::parse(&inst.to_json()).unwrap(), inst);
    }

    #[test]
    fn rejects_ragged_lengths() {
        let text = r#"{"field":"rational","kind":"plane-curve","f":[[1,0,0],[0,1],[0,0,1]]}"#;
        assert!(matches!(Instance::parse(text), Err(CliError::Input(_))));
    }

    #[test]
    fn rejects_unknown_kind() {
        let text = r#"{"field":"rational","kind":"surface","f":[[1]]}"#;
        assert!(Instance::parse(text).is_err());
    }
}
