//! Metric-dimension reports shared by the formula and search paths.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

/// Where a reported dimension came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    /// Exhaustive search.
    #[serde(rename = "oracle")]
    Oracle,
    /// `|V|` minus the number of twin classes (graphs without singleton twins).
    #[serde(rename = "formula-twin")]
    FormulaTwin,
    /// `|V| - |twin classes| + (1 | resolving involutions)` for power graphs.
    #[serde(rename = "formula-power-graph")]
    FormulaPowerGraph,
    /// Closed form over the factorization of `n` for cyclic power graphs.
    #[serde(rename = "formula-cyclic")]
    FormulaCyclic,
    /// Cyclic value plus `n - 2` for dihedral power graphs.
    #[serde(rename = "formula-dihedral")]
    FormulaDihedral,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Oracle => "oracle",
            Method::FormulaTwin => "formula-twin",
            Method::FormulaPowerGraph => "formula-power-graph",
            Method::FormulaCyclic => "formula-cyclic",
            Method::FormulaDihedral => "formula-dihedral",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of comparing a formula value against the exhaustive search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum CrossCheck {
    Agree,
    Disagree {
        formula: usize,
        oracle: usize,
    },
    /// The graph is above the search cap.
    NotAttempted,
}

impl CrossCheck {
    pub fn compare(formula: usize, oracle: usize) -> Self {
        if formula == oracle {
            CrossCheck::Agree
        } else {
            CrossCheck::Disagree { formula, oracle }
        }
    }

    pub fn is_agree(&self) -> bool {
        matches!(self, CrossCheck::Agree)
    }

    pub fn to_json(&self) -> Value {
        match self {
            CrossCheck::Agree => json!("agree"),
            CrossCheck::Disagree { formula, oracle } => {
                json!({"disagree": {"formula": formula, "oracle": oracle}})
            }
            CrossCheck::NotAttempted => json!("not attempted (cap)"),
        }
    }
}

impl fmt::Display for CrossCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CrossCheck::Agree => f.write_str("agree"),
            CrossCheck::Disagree { formula, oracle } => {
                write!(f, "DISAGREE (formula {formula}, oracle {oracle})")
            }
            CrossCheck::NotAttempted => f.write_str("not attempted (cap)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MdReport {
    pub beta: usize,
    /// Sorted; when present it resolves the graph and has `beta` members.
    pub witness_basis: Option<Vec<usize>>,
    pub method: Method,
    pub cross_check: Option<CrossCheck>,
    /// Free-form remark for text output.
    pub note: Option<String>,
}

impl MdReport {
    pub fn oracle(beta: usize, basis: Vec<usize>) -> Self {
        Self {
            beta,
            witness_basis: Some(basis),
            method: Method::Oracle,
            cross_check: None,
            note: None,
        }
    }

    pub fn formula(beta: usize, method: Method) -> Self {
        Self {
            beta,
            witness_basis: None,
            method,
            cross_check: None,
            note: None,
        }
    }

    /// `{"beta","basis","method","cross_check"}` with keys sorted.
    pub fn to_json(&self) -> Value {
        json!({
            "beta": self.beta,
            "basis": self.witness_basis,
            "method": self.method.as_str(),
            "cross_check": self.cross_check.as_ref().map(CrossCheck::to_json),
        })
    }
}
