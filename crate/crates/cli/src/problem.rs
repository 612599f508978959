//! Problem files: a ring `k[vars]/(ideal)`, a module over it, and caps.

use ainfty_core::gradedring::RingMode;
use ainfty_core::{Fp, GradedFree, Poly, Presentation, RingCtx};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub schema: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub p: u32,
    pub vars: Vec<String>,
    pub ideal: Vec<String>,
    #[serde(default)]
    pub module: ModuleSpec,
    #[serde(default)]
    pub caps: Caps,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModuleSpec {
    #[default]
    ResidueField,
    /// `R/(elements)`.
    Quotient(Vec<String>),
    /// Generators in the given degrees; each relation lists one entry per
    /// generator.
    Presentation {
        degrees: Vec<u32>,
        relations: Vec<Vec<String>>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Caps {
    pub hom_cap: usize,
    pub int_cap: u32,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            hom_cap: 5,
            int_cap: 12,
        }
    }
}

/// Shipped fixtures, addressable by name wherever a problem file is expected.
pub const FIXTURES: [(&str, &str); 5] = [
    ("codim3", include_str!("../fixtures/codim3.json")),
    ("hhs4", include_str!("../fixtures/hhs4.json")),
    ("hyper", include_str!("../fixtures/hyper.json")),
    ("fatpoint", include_str!("../fixtures/fatpoint.json")),
    ("shamash", include_str!("../fixtures/shamash.json")),
];

pub fn fixture_text(name: &str) -> Option<&'static str> {
    let name = if name == "pfaffian" { "codim3" } else { name };
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

impl ProblemSpec {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let spec: ProblemSpec = serde_json::from_str(text)
            .map_err(|e| CliError::Input(format!("problem file: {e}")))?;
        if spec.schema != SCHEMA_VERSION {
            return Err(CliError::Input(format!(
                "unsupported schema version {} (expected {SCHEMA_VERSION})",
                spec.schema
            )));
        }
        Ok(spec)
    }

    /// A path, or the name of a shipped fixture when no such file exists.
    pub fn load(arg: &str) -> Result<Self, CliError> {
        let path = std::path::Path::new(arg);
        if path.exists() {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("{arg}: {e}")))?;
            return Self::parse(&text);
        }
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or(arg);
        match fixture_text(stem) {
            Some(t) => Self::parse(t),
            None => Err(CliError::Input(format!(
                "{arg}: no such file or shipped fixture"
            ))),
        }
    }

    pub fn ring(&self) -> Result<RingCtx, CliError> {
        let field = Fp::try_new(self.p)
            .ok_or_else(|| CliError::Input(format!("{} is not a prime below 2^31", self.p)))?;
        let vars: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        let ideal: Vec<&str> = self.ideal.iter().map(String::as_str).collect();
        Ok(RingCtx::parse(field, &vars, &ideal)?)
    }

    pub fn presentation(&self, ctx: &RingCtx) -> Result<Presentation, CliError> {
        let parse = |s: &String| ctx.parse_poly(s).map_err(ainfty_core::Error::from);
        Ok(match &self.module {
            ModuleSpec::ResidueField => Presentation::residue_field(ctx),
            ModuleSpec::Quotient(elems) => Presentation::quotient_by(
                elems.iter().map(parse).collect::<Result<Vec<Poly>, _>>()?,
            ),
            ModuleSpec::Presentation { degrees, relations } => {
                let rels = relations
                    .iter()
                    .map(|col| {
                        if col.len() != degrees.len() {
                            return Err(CliError::Input(format!(
                                "relation has {} entries for {} generators",
                                col.len(),
                                degrees.len()
                            )));
                        }
                        Ok(col.iter().map(parse).collect::<Result<Vec<Poly>, _>>()?)
                    })
                    .collect::<Result<Vec<_>, CliError>>()?;
                Presentation {
                    gens: GradedFree::new(degrees.clone()),
                    relations: rels,
                    base: RingMode::R,
                }
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_parse() {
        for (name, text) in FIXTURES {
            let spec = ProblemSpec::parse(text).unwrap();
            assert_eq!(spec.name.as_deref(), Some(name));
            let ctx = spec.ring().unwrap();
            spec.presentation(&ctx).unwrap();
        }
    }

    #[test]
    fn module_forms_round_trip() {
        let text = r#"{"schema":1,"p":101,"vars":["x","y"],"ideal":["x^2"],
            "module":{"presentation":{"degrees":[0,1],"relations":[["y","x"]]}}}"#;
        let spec = ProblemSpec::parse(text).unwrap();
        let again = ProblemSpec::parse(&serde_json::to_string(&spec).unwrap()).unwrap();
        assert_eq!(spec, again);
        assert_eq!(spec.caps, Caps::default());
        let q = ProblemSpec::parse(
            r#"{"schema":1,"p":101,"vars":["x"],"ideal":["x^2"],"module":{"quotient":["x"]}}"#,
        );
        assert!(matches!(q.unwrap().module, ModuleSpec::Quotient(_)));
    }

    #[test]
    fn bad_inputs_are_input_errors() {
        assert!(matches!(
            ProblemSpec::parse(r#"{"schema":2,"p":5,"vars":[],"ideal":[]}"#),
            Err(CliError::Input(_))
        ));
        let spec =
            ProblemSpec::parse(r#"{"schema":1,"p":6,"vars":["x"],"ideal":["x^2"]}"#).unwrap();
        assert!(matches!(spec.ring(), Err(CliError::Input(_))));
        let spec =
            ProblemSpec::parse(r#"{"schema":1,"p":7,"vars":["x","y"],"ideal":["x^2+y"]}"#).unwrap();
        assert!(matches!(spec.ring(), Err(CliError::Input(_))));
    }
}
