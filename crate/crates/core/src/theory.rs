//! Power-graph constructions built on the twin and resolving machinery:
//! separating sets `R{x,y}`, resolving involutions, the Ψ class of groups
//! and the closed-form metric-dimension formulas, each of which can be
//! cross-checked against the exhaustive search.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::graph::{power_graph, DistanceMatrix, SimpleGraph};
use crate::group::{
    make_cyclic, make_dihedral, prime_factorization, FiniteGroup, GroupError, GroupSpec,
};
use crate::report::{CrossCheck, MdReport, Method};
use crate::resolve::{metric_dimension_oracle, Caps, ResolveError};
use crate::twins::{twin_partition, TwinPartition};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TheoryError {
    #[error("the cyclic formula needs n >= 2, got {0}")]
    CyclicTooSmall(usize),
    #[error("the dihedral formula needs n >= 3, got {0}")]
    DihedralTooSmall(usize),
    #[error("R{{x,y}} needs two distinct vertices, got {0} twice")]
    SamePair(usize),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Resolve(#[from] ResolveError),
}

/// A group together with its power graph and twin partition.
#[derive(Debug, Clone)]
pub struct PowerGraph {
    group: FiniteGroup,
    graph: SimpleGraph,
    twins: TwinPartition,
}

impl PowerGraph {
    pub fn new(group: FiniteGroup) -> Self {
        let graph = power_graph(&group);
        let twins = twin_partition(&graph);
        Self {
            group,
            graph,
            twins,
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn twins(&self) -> &TwinPartition {
        &self.twins
    }

    pub fn distances(&self) -> &DistanceMatrix {
        self.graph.distances()
    }

    pub fn r_set(&self, x: usize, y: usize) -> Result<Vec<usize>, TheoryError> {
        self.group.check_element(x)?;
        self.group.check_element(y)?;
        r_set(self.distances(), x, y)
    }
}

/// `R{x,y}`: vertices whose distances to `x` and to `y` differ.
pub fn r_set(dist: &DistanceMatrix, x: usize, y: usize) -> Result<Vec<usize>, TheoryError> {
    if x == y {
        return Err(TheoryError::SamePair(x));
    }
    let (rx, ry) = (dist.row(x), dist.row(y));
    Ok((0..dist.vertex_count())
        .filter(|&z| rx[z] != ry[z])
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvolutionReport {
    pub resolving_involutions: Vec<usize>,
    /// First pair `(x, y)` in lexicographic order with `R{x,y} = {x, y, w}`.
    pub witnesses: BTreeMap<usize, (usize, usize)>,
}

/// Involutions `w` for which some pair `x, y` outside the twin class of `w`
/// has `R{x,y} = {x, y, w}`. Any distinct pair qualifies, including a pair
/// of mutual twins.
pub fn resolving_involutions(pg: &PowerGraph) -> InvolutionReport {
    let group = pg.group();
    let twins = pg.twins();
    let dist = pg.distances();
    let n = group.order();
    let mut witnesses = BTreeMap::new();
    for x in 0..n {
        let rx = dist.row(x);
        for y in x + 1..n {
            let ry = dist.row(y);
            let mut others = (0..n).filter(|&z| z != x && z != y && rx[z] != ry[z]);
            let (Some(w), None) = (others.next(), others.next()) else {
                continue;
            };
            if group.is_involution(w)
                && twins.class_of(x) != twins.class_of(w)
                && twins.class_of(y) != twins.class_of(w)
            {
                witnesses.entry(w).or_insert((x, y));
            }
        }
    }
    InvolutionReport {
        resolving_involutions: witnesses.keys().copied().collect(),
        witnesses,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionCheck {
    pub name: &'static str,
    pub holds: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PsiVerdict {
    pub in_psi: bool,
    pub odd_prime: Option<u64>,
    pub conditions: Vec<ConditionCheck>,
}

impl PsiVerdict {
    pub fn failing(&self) -> Vec<&'static str> {
        self.conditions
            .iter()
            .filter(|c| !c.holds)
            .map(|c| c.name)
            .collect()
    }

    pub fn condition(&self, name: &str) -> Option<&ConditionCheck> {
        self.conditions.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "in_psi": self.in_psi,
            "odd_prime": self.odd_prime,
            "conditions": self.conditions.iter().map(|c| json!({
                "name": c.name,
                "holds": c.holds,
                "witness": c.witness,
            })).collect::<Vec<_>>(),
        })
    }
}

pub const COND_NONCYCLIC: &str = "noncyclic";
pub const COND_PRIMES: &str = "prime_divisors_are_2_and_odd_p";
pub const COND_UNIQUE_P: &str = "unique_subgroup_of_order_p";
pub const COND_NO_ORDER_4: &str = "no_element_of_order_4";
pub const COND_INVOLUTIONS_IN_2P: &str = "involutions_in_cyclic_subgroup_of_order_2p";

/// Membership in Ψ: noncyclic groups whose order has prime divisors exactly
/// 2 and an odd prime `p`, with a unique subgroup of order `p`, no element of
/// order 4, and every involution inside a cyclic subgroup of order `2p`.
pub fn psi_membership(group: &FiniteGroup) -> PsiVerdict {
    let e = group.identity();
    let orders: Vec<usize> = group.elements().map(|x| group.element_order(x)).collect();
    let mut conditions = Vec::with_capacity(5);

    let cyclic_gen = orders.iter().position(|&o| o == group.order());
    conditions.push(ConditionCheck {
        name: COND_NONCYCLIC,
        holds: cyclic_gen.is_none(),
        witness: cyclic_gen.map(|g| format!("element {g} generates the group")),
    });

    let primes: Vec<u64> = prime_factorization(group.order() as u64)
        .into_iter()
        .map(|(p, _)| p)
        .collect();
    let odd_prime = match primes.as_slice() {
        [2, p] => Some(*p),
        _ => None,
    };
    conditions.push(ConditionCheck {
        name: COND_PRIMES,
        holds: odd_prime.is_some(),
        witness: odd_prime
            .is_none()
            .then(|| format!("prime divisors of the order are {primes:?}")),
    });

    match odd_prime {
        Some(p) => {
            let p = p as usize;
            let solutions = group.elements().filter(|&x| group.pow(x, p) == e).count();
            conditions.push(ConditionCheck {
                name: COND_UNIQUE_P,
                holds: solutions == p,
                witness: (solutions != p)
                    .then(|| format!("x^{p} = e has {solutions} solutions, expected {p}")),
            });
            let order4 = orders.iter().position(|&o| o == 4);
            conditions.push(ConditionCheck {
                name: COND_NO_ORDER_4,
                holds: order4.is_none(),
                witness: order4.map(|x| format!("element {x} has order 4")),
            });
            let lifts: Vec<Vec<usize>> = group
                .elements()
                .filter(|&c| orders[c] == 2 * p)
                .map(|c| group.cyclic_subgroup(c))
                .collect();
            let stranded = group
                .involutions()
                .into_iter()
                .find(|w| !lifts.iter().any(|h| h.contains(w)));
            conditions.push(ConditionCheck {
                name: COND_INVOLUTIONS_IN_2P,
                holds: stranded.is_none(),
                witness: stranded.map(|w| {
                    format!(
                        "involution {w} lies in no cyclic subgroup of order {}",
                        2 * p
                    )
                }),
            });
        }
        None => {
            for name in [COND_UNIQUE_P, COND_NO_ORDER_4, COND_INVOLUTIONS_IN_2P] {
                conditions.push(ConditionCheck {
                    name,
                    holds: false,
                    witness: Some("no odd prime p is determined by the order".into()),
                });
            }
        }
    }

    PsiVerdict {
        in_psi: conditions.iter().all(|c| c.holds),
        odd_prime,
        conditions,
    }
}

/// Fills `cross_check` by running the exhaustive search when the graph is
/// within the oracle cap.
pub fn cross_check(
    mut report: MdReport,
    graph: &SimpleGraph,
    caps: Caps,
) -> Result<MdReport, ResolveError> {
    report.cross_check = Some(match metric_dimension_oracle(graph, caps) {
        Ok(oracle) => CrossCheck::compare(report.beta, oracle.beta),
        Err(ResolveError::TooLarge { .. }) => CrossCheck::NotAttempted,
        Err(e) => return Err(e),
    });
    Ok(report)
}

/// `|V| - |twin classes| + 1` for groups in Ψ, and
/// `|V| - |twin classes| + |resolving involutions|` otherwise.
pub fn md_formula_power_graph_value(pg: &PowerGraph) -> (usize, bool, usize) {
    let in_psi = psi_membership(pg.group()).in_psi;
    let involutions = resolving_involutions(pg).resolving_involutions.len();
    let base = pg.group().order() - pg.twins().class_count();
    let beta = if in_psi { base + 1 } else { base + involutions };
    (beta, in_psi, involutions)
}

pub fn md_formula_mdpg(pg: &PowerGraph, caps: Caps) -> Result<MdReport, ResolveError> {
    let (beta, in_psi, involutions) = md_formula_power_graph_value(pg);
    let mut report = MdReport::formula(beta, Method::FormulaPowerGraph);
    report.note = Some(if in_psi {
        format!(
            "group in Psi: {} vertices - {} twin classes + 1",
            pg.group().order(),
            pg.twins().class_count()
        )
    } else {
        format!(
            "group not in Psi: {} vertices - {} twin classes + {} resolving involutions",
            pg.group().order(),
            pg.twins().class_count(),
            involutions
        )
    });
    cross_check(report, pg.graph(), caps)
}

/// Which branch of the cyclic closed form applies to `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CyclicCase {
    /// `n = p^r`: `n - 1`.
    PrimePower,
    /// `n = 2 p^r` with `p` odd: `n - 2r`.
    TwiceOddPrimePower,
    /// `n = 2^r p` with `r >= 2`, `p` odd: `n - 2r`.
    PowerOfTwoTimesPrime,
    /// `n + 1 - ∏(r_i + 1)`.
    General,
}

/// Closed-form metric dimension of the power graph of `Z_n`, `n >= 2`.
///
/// The two middle branches cover `n = 2 p^r` and `n = 2^r p` (odd prime
/// `p`) and both subtract twice the exponent of the non-trivial prime power.
pub fn md_formula_cyclic(n: usize) -> Result<MdReport, TheoryError> {
    let (beta, case) = cyclic_formula_value(n)?;
    let mut report = MdReport::formula(beta, Method::FormulaCyclic);
    report.note = Some(format!("{case:?}"));
    Ok(report)
}

pub fn cyclic_formula_value(n: usize) -> Result<(usize, CyclicCase), TheoryError> {
    if n < 2 {
        return Err(TheoryError::CyclicTooSmall(n));
    }
    let f = prime_factorization(n as u64);
    Ok(match f.as_slice() {
        [_] => (n - 1, CyclicCase::PrimePower),
        [(2, 1), (_, r2)] => (n - 2 * *r2 as usize, CyclicCase::TwiceOddPrimePower),
        [(2, r1), (_, 1)] => (n - 2 * *r1 as usize, CyclicCase::PowerOfTwoTimesPrime),
        _ => {
            let divisors: usize = f.iter().map(|&(_, r)| r as usize + 1).product();
            (n + 1 - divisors, CyclicCase::General)
        }
    })
}

/// Dihedral group of order `2n`: cyclic value for `Z_n` plus `n - 2`,
/// cross-checked against the search on the `2n`-vertex power graph.
pub fn md_dihedral(n: usize, caps: Caps) -> Result<MdReport, TheoryError> {
    if n < 3 {
        return Err(TheoryError::DihedralTooSmall(n));
    }
    let (cyclic, _) = cyclic_formula_value(n)?;
    let mut report = MdReport::formula(cyclic + n - 2, Method::FormulaDihedral);
    report.note = Some(format!("cyclic value {cyclic} + {}", n - 2));
    let graph = power_graph(&make_dihedral(n)?);
    Ok(cross_check(report, &graph, caps)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExchangeSufficiency {
    /// Cyclic of odd order at least 3.
    SufficientOddCyclic,
    /// Abelian of prime-power order.
    SufficientAbelianPrimePower,
    /// Neither condition applies; no claim either way.
    NotCovered,
}

pub fn exchange_sufficient(group: &FiniteGroup) -> ExchangeSufficiency {
    let order = group.order();
    if order >= 3 && order % 2 == 1 && group.is_cyclic() {
        ExchangeSufficiency::SufficientOddCyclic
    } else if prime_factorization(order as u64).len() == 1 && group.is_abelian() {
        ExchangeSufficiency::SufficientAbelianPrimePower
    } else {
        ExchangeSufficiency::NotCovered
    }
}

pub fn singletons_are_identity_or_involutions(pg: &PowerGraph) -> Result<(), usize> {
    let group = pg.group();
    match pg
        .twins()
        .singletons()
        .into_iter()
        .find(|&v| v != group.identity() && !group.is_involution(v))
    {
        Some(v) => Err(v),
        None => Ok(()),
    }
}

mod verify;

pub use verify::{verify_theorems, VerificationReport, VerifyConfig, VerifyRow};

/// Groups exercised by the verification sweep for a given `n` range.
pub fn sweep_groups(n_range: std::ops::RangeInclusive<usize>) -> Vec<GroupSpec> {
    let mut specs = Vec::new();
    let mut push = |s: GroupSpec| {
        if !specs.contains(&s) {
            specs.push(s);
        }
    };
    for n in n_range.clone() {
        if n >= 1 {
            push(GroupSpec::Cyclic(n));
        }
    }
    for n in n_range {
        if n >= 2 {
            push(GroupSpec::Dihedral(n));
        }
    }
    for n in [3, 5, 7, 9] {
        push(GroupSpec::Cyclic(n));
    }
    for n in [4, 8] {
        push(GroupSpec::Cyclic(n));
    }
    for factors in [
        vec![2, 2],
        vec![3, 3],
        vec![2, 4],
        vec![2, 2, 2],
        vec![2, 2, 3],
    ] {
        push(GroupSpec::DirectProduct(factors));
    }
    specs
}

/// Power graph of `Z_n`.
pub fn cyclic_power_graph(n: usize) -> Result<PowerGraph, GroupError> {
    Ok(PowerGraph::new(make_cyclic(n)?))
}
