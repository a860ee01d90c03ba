//! JSON description of a rewriting system.
//!
//! ```json
//! {"n": 3,
//!  "rules": [{"name": "a1", "lhs": "11", "rhs": "1"}],
//!  "order": {"kind": "rule-rank", "ranks": {"a1": 1}, "tie": "length"}}
//! ```
//!
//! `"hecke": {"n": 3, "variant": "rfull"}` may stand in for `n` and `rules`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hecke::{hecke_system, HeckeError, HeckeVariant};
use crate::order::OrderSpec;
use crate::srs::{Rule, SrsError, SrsSystem, Word};

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("the document needs either `n` with `rules`, or `hecke`")]
    Incomplete,
    #[error(transparent)]
    Srs(#[from] SrsError),
    #[error(transparent)]
    Hecke(#[from] HeckeError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleDoc {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeckeDoc {
    pub n: usize,
    #[serde(default = "default_variant")]
    pub variant: HeckeVariant,
}

fn default_variant() -> HeckeVariant {
    HeckeVariant::RFull
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDocument {
    #[serde(default, alias = "generators", skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rules: Vec<RuleDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<OrderSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hecke: Option<HeckeDoc>,
}

impl SystemDocument {
    pub fn from_json(s: &str) -> Result<SystemDocument, DocumentError> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn build(&self) -> Result<SrsSystem, DocumentError> {
        if let Some(h) = &self.hecke {
            let sys = hecke_system(h.n, h.variant)?;
            return Ok(match &self.order {
                Some(o) => sys.with_order(Some(o.clone())),
                None => sys,
            });
        }
        let n = self.n.ok_or(DocumentError::Incomplete)?;
        let rules = self
            .rules
            .iter()
            .map(|r| Rule::new(r.name.clone(), Word::parse(&r.lhs, n)?, Word::parse(&r.rhs, n)?))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SrsSystem::new(n, rules, self.order.clone())?)
    }

    pub fn from_system(sys: &SrsSystem) -> SystemDocument {
        SystemDocument {
            n: Some(sys.n()),
            rules: sys
                .rules()
                .iter()
                .map(|r| RuleDoc {
                    name: r.name.clone(),
                    lhs: r.lhs.render(sys.n()),
                    rhs: r.rhs.render(sys.n()),
                })
                .collect(),
            order: sys.order_spec().cloned(),
            hecke: None,
        }
    }
}
