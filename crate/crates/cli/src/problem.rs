//! Problem files: a JSON description of `σ`, optionally `σ^{-1}`, and `δ`.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;

use ore_nakayama::endo::{Automorphism, PolyEndo, DEFAULT_ORDER_BOUND};
use ore_nakayama::expr::parse_poly;
use ore_nakayama::ore::OreExtension;
use ore_nakayama::poly::Polynomial;
use ore_nakayama::skew::SkewDerivation;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bounds {
    pub max_degree: Option<u32>,
    pub max_xdeg: Option<usize>,
    pub order_bound: Option<u32>,
    pub inverse_degree_bound: Option<u32>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub vars: Vec<String>,
    pub sigma: Vec<String>,
    #[serde(default)]
    pub sigma_inverse: Option<Vec<String>>,
    pub delta: Vec<String>,
    #[serde(default)]
    pub bounds: Bounds,
}

/// A loaded and validated problem.
pub struct Problem {
    pub names: Vec<String>,
    pub sigma: Arc<Automorphism>,
    pub delta: SkewDerivation,
    pub bounds: Bounds,
}

impl Problem {
    pub fn ext(&self) -> OreExtension {
        OreExtension::new(self.delta.clone())
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn order_bound(&self) -> u32 {
        self.bounds.order_bound.unwrap_or(DEFAULT_ORDER_BOUND)
    }
}

fn parse_list(field: &str, items: &[String], names: &[String]) -> Result<Vec<Polynomial>, String> {
    if items.len() != names.len() {
        return Err(format!(
            "`{field}` has {} entries but there are {} variables",
            items.len(),
            names.len()
        ));
    }
    items
        .iter()
        .enumerate()
        .map(|(i, s)| parse_poly(s, names).map_err(|e| format!("{field}[{i}] {s:?}: {e}")))
        .collect()
}

impl ProblemSpec {
    pub fn from_json(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| format!("invalid problem file: {e}"))
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        Self::from_json(&text)
    }

    /// Parse the endomorphism alone, without inverting it.
    pub fn sigma_endo(&self) -> Result<PolyEndo, String> {
        self.check_vars()?;
        PolyEndo::new(parse_list("sigma", &self.sigma, &self.vars)?).map_err(|e| e.to_string())
    }

    fn check_vars(&self) -> Result<(), String> {
        if self.vars.is_empty() {
            return Err("at least one variable is required".into());
        }
        for (i, v) in self.vars.iter().enumerate() {
            let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'');
            if !ok {
                return Err(format!("vars[{i}] {v:?} is not a valid identifier"));
            }
            if v == "x" {
                return Err("`x` is reserved for the Ore variable".into());
            }
            if self.vars[..i].contains(v) {
                return Err(format!("variable {v:?} is declared twice"));
            }
        }
        Ok(())
    }

    pub fn build(&self) -> Result<Problem, String> {
        let forward = self.sigma_endo()?;
        let sigma = if forward.is_identity() {
            Automorphism::identity(forward.nvars())
        } else {
            match &self.sigma_inverse {
                Some(inv) => {
                    let inverse = PolyEndo::new(parse_list("sigma_inverse", inv, &self.vars)?)
                        .map_err(|e| e.to_string())?;
                    Automorphism::with_inverse(forward, inverse)
                }
                None => match self.bounds.inverse_degree_bound {
                    Some(b) => Automorphism::with_bound(forward, b),
                    None => Automorphism::new(forward),
                },
            }
            .map_err(|e| format!("sigma: {e}"))?
        };
        let sigma = Arc::new(sigma);
        let images = parse_list("delta", &self.delta, &self.vars)?;
        let delta = SkewDerivation::new(sigma.clone(), images).map_err(|e| format!("delta: {e}"))?;
        Ok(Problem {
            names: self.vars.clone(),
            sigma,
            delta,
            bounds: self.bounds.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads_a_valid_problem() {
        let input = ProblemSpec::from_json(r#"{"vars": ["z1", "z2"], "sigma": ["2*z1", "z2"], "delta": ["1", "0"]}"#)
            .unwrap();
        let p = input.build().unwrap();
        assert_eq!(p.nvars(), 2);
        assert!(!p.sigma.is_identity());
    }

    #[test]
    fn reports_located_parse_errors() {
        let input = ProblemSpec::from_json(r#"{"vars": ["a"], "sigma": ["a^-1"], "delta": ["0"]}"#).unwrap();
        let err = input.build().err().unwrap();
        assert!(err.contains("sigma[0]") && err.contains("offset 2"), "{err}");
    }

    #[test]
    fn rejects_bad_inputs() {
        for text in [
            r#"{"vars": [], "sigma": [], "delta": []}"#,
            r#"{"vars": ["z1"], "sigma": ["z1^2"], "delta": ["0"]}"#,
            r#"{"vars": ["z1", "z2"], "sigma": ["2*z1", "z2"], "delta": ["0", "1"]}"#,
            r#"{"vars": ["x"], "sigma": ["x"], "delta": ["1"]}"#,
            r#"{"vars": ["z1"], "sigma": ["2*z1"], "sigma_inverse": ["z1"], "delta": ["0"]}"#,
        ] {
            let input = ProblemSpec::from_json(text).unwrap();
            assert!(input.build().is_err(), "{text}");
        }
        assert!(ProblemSpec::from_json(r#"{"vars": ["z1"]}"#).is_err());
    }
}
