//! Batch cross-check of every closed form and structural claim against the
//! exhaustive search.

use std::fmt::Write as _;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{
    cyclic_formula_value, exchange_sufficient, md_dihedral, md_formula_power_graph_value,
    singletons_are_identity_or_involutions, sweep_groups, ExchangeSufficiency, PowerGraph,
};
use crate::group::GroupSpec;
use crate::resolve::{exchange_property, metric_dimension_oracle, Caps};
use crate::twins::md_formula_no_singleton;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub n_range: RangeInclusive<usize>,
    pub caps: Caps,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            n_range: 3..=8,
            caps: Caps::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRow {
    pub case: String,
    pub expected: Value,
    pub computed: Value,
    pub pass: bool,
}

impl VerifyRow {
    fn new(case: String, expected: Value, computed: Value) -> Self {
        let pass = expected == computed;
        Self {
            case,
            expected,
            computed,
            pass,
        }
    }

    fn error(case: String, expected: Value, err: impl std::fmt::Display) -> Self {
        Self {
            case,
            expected,
            computed: json!({ "error": err.to_string() }),
            pass: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub rows: Vec<VerifyRow>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &VerifyRow> {
        self.rows.iter().filter(|r| !r.pass)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|r| {
                    json!({
                        "case": r.case,
                        "expected": r.expected,
                        "computed": r.computed,
                        "pass": r.pass,
                    })
                })
                .collect(),
        )
    }

    pub fn render_table(&self) -> String {
        let width = self
            .rows
            .iter()
            .map(|r| r.case.len())
            .max()
            .unwrap_or(4)
            .max(4);
        let mut out = format!(
            "{:<width$}  {:<12}  {:<12}  result\n",
            "case", "expected", "computed"
        );
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:<width$}  {:<12}  {:<12}  {}",
                r.case,
                r.expected.to_string(),
                r.computed.to_string(),
                if r.pass { "PASS" } else { "FAIL" }
            );
        }
        let failed = self.failures().count();
        let _ = writeln!(out, "{} cases, {} failed", self.rows.len(), failed);
        out
    }
}

#[derive(Debug, Clone)]
enum Case {
    Dihedral(usize),
    Cyclic(usize),
    Group(GroupSpec),
}

fn dihedral_rows(n: usize, caps: Caps) -> Vec<VerifyRow> {
    let case = format!("dihedral-dimension/D:{n}");
    let formula = match md_dihedral(n, caps) {
        Ok(r) => r,
        Err(e) => return vec![VerifyRow::error(case, Value::Null, e)],
    };
    let expected = json!(formula.beta);
    let oracle_d = super::make_dihedral(n)
        .map(|g| crate::graph::power_graph(&g))
        .map_err(|e| e.to_string())
        .and_then(|g| metric_dimension_oracle(&g, caps).map_err(|e| e.to_string()));
    let oracle_z = super::cyclic_power_graph(n)
        .map_err(|e| e.to_string())
        .and_then(|pg| metric_dimension_oracle(pg.graph(), caps).map_err(|e| e.to_string()));
    match (oracle_d, oracle_z) {
        (Ok(d), Ok(z)) => vec![
            VerifyRow::new(case, expected, json!(d.beta)),
            VerifyRow::new(
                format!("dihedral-vs-cyclic-search/D:{n}"),
                json!(z.beta + n - 2),
                json!(d.beta),
            ),
        ],
        (Err(e), _) | (_, Err(e)) => vec![VerifyRow::error(case, expected, e)],
    }
}

fn cyclic_rows(n: usize, caps: Caps) -> Vec<VerifyRow> {
    let case = format!("cyclic-dimension/Z:{n}");
    let (beta, _) = match cyclic_formula_value(n) {
        Ok(v) => v,
        Err(e) => return vec![VerifyRow::error(case, Value::Null, e)],
    };
    let computed = super::cyclic_power_graph(n)
        .map_err(|e| e.to_string())
        .and_then(|pg| metric_dimension_oracle(pg.graph(), caps).map_err(|e| e.to_string()));
    vec![match computed {
        Ok(r) => VerifyRow::new(case, json!(beta), json!(r.beta)),
        Err(e) => VerifyRow::error(case, json!(beta), e),
    }]
}

fn group_rows(spec: &GroupSpec, caps: Caps) -> Vec<VerifyRow> {
    let group = match spec.build() {
        Ok(g) => g,
        Err(e) => return vec![VerifyRow::error(format!("build/{spec}"), Value::Null, e)],
    };
    let pg = PowerGraph::new(group);
    let n = pg.group().order();
    let mut rows = Vec::new();

    rows.push(VerifyRow::new(
        format!("singletons-are-identity-or-involutions/{spec}"),
        json!(null),
        match singletons_are_identity_or_involutions(&pg) {
            Ok(()) => json!(null),
            Err(v) => json!(v),
        },
    ));

    if n <= caps.oracle {
        let oracle = metric_dimension_oracle(pg.graph(), caps);
        let (formula, _, _) = md_formula_power_graph_value(&pg);
        let case = format!("power-graph-formula/{spec}");
        rows.push(match &oracle {
            Ok(o) => VerifyRow::new(case, json!(formula), json!(o.beta)),
            Err(e) => VerifyRow::error(case, json!(formula), e),
        });

        if let Ok(twin) = md_formula_no_singleton(pg.graph()) {
            let case = format!("twin-formula/{spec}");
            rows.push(match &oracle {
                Ok(o) => VerifyRow::new(case, json!(twin.beta), json!(o.beta)),
                Err(e) => VerifyRow::error(case, json!(twin.beta), e),
            });
            if n <= caps.enumeration {
                let case = format!("no-singleton-exchange/{spec}");
                rows.push(match exchange_property(pg.graph(), false, caps) {
                    Ok(r) => VerifyRow::new(case, json!(true), json!(r.holds)),
                    Err(e) => VerifyRow::error(case, json!(true), e),
                });
            }
        }
    }

    let sufficiency = exchange_sufficient(pg.group());
    if sufficiency != ExchangeSufficiency::NotCovered && n <= caps.enumeration {
        let case = format!("exchange-sufficient/{spec}");
        rows.push(match exchange_property(pg.graph(), false, caps) {
            Ok(r) => VerifyRow::new(case, json!(true), json!(r.holds)),
            Err(e) => VerifyRow::error(case, json!(true), e),
        });
    }
    rows
}

/// Runs every sweep for the configured range. Cases above the caps are
/// left out; any error inside a case becomes a failing row.
pub fn verify_theorems(config: &VerifyConfig) -> VerificationReport {
    let caps = config.caps;
    let mut cases = Vec::new();
    for n in config.n_range.clone() {
        if n >= 3 && 2 * n <= caps.oracle {
            cases.push(Case::Dihedral(n));
        }
    }
    for n in config.n_range.clone() {
        if n >= 2 && n <= caps.oracle {
            cases.push(Case::Cyclic(n));
        }
    }
    for spec in sweep_groups(config.n_range.clone()) {
        let order = match &spec {
            GroupSpec::Cyclic(n) => *n,
            GroupSpec::Dihedral(n) => 2 * n,
            GroupSpec::DirectProduct(ns) => ns.iter().product(),
            GroupSpec::CayleyTable(_) => continue,
        };
        if order <= caps.oracle {
            cases.push(Case::Group(spec));
        }
    }

    let rows: Vec<Vec<VerifyRow>> = cases
        .par_iter()
        .map(|case| match case {
            Case::Dihedral(n) => dihedral_rows(*n, caps),
            Case::Cyclic(n) => cyclic_rows(*n, caps),
            Case::Group(spec) => group_rows(spec, caps),
        })
        .collect();
    VerificationReport {
        rows: rows.into_iter().flatten().collect(),
    }
}
