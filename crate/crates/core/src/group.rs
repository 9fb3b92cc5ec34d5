//! Finite groups stored as explicit multiplication tables over dense
//! element indices `0..order`.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group order must be positive")]
    EmptyOrder,
    #[error("direct product needs at least one factor")]
    NoFactors,
    #[error("cayley table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("cayley table entry ({row},{col}) = {value} is out of range 0..{order}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {element} has no inverse")]
    NoInverse { element: usize },
    #[error("associativity fails: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("element index {index} out of range for group of order {order}")]
    BadElement { index: usize, order: usize },
    #[error("invalid group spec token `{token}`: {reason}")]
    Parse { token: String, reason: String },
    #[error("cannot read cayley table {path}: {reason}")]
    Io { path: PathBuf, reason: String },
}

/// Naming scheme for human-readable element labels.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Notation {
    Indices,
    Cyclic,
    Dihedral { n: usize },
    Product { radices: Vec<usize> },
}

/// A validated finite group.
///
/// All constructors go through [`FiniteGroup::from_table`], so every value
/// of this type satisfies the group axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    identity: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    label: String,
    notation: Notation,
}

impl FiniteGroup {
    /// Validates a row-major table where `table[i][j] = i * j`.
    pub fn from_table(rows: &[Vec<usize>], label: impl Into<String>) -> Result<Self, GroupError> {
        let order = rows.len();
        if order == 0 {
            return Err(GroupError::EmptyOrder);
        }
        let mut table = Vec::with_capacity(order * order);
        for (row, entries) in rows.iter().enumerate() {
            if entries.len() != order {
                return Err(GroupError::NotSquare {
                    row,
                    len: entries.len(),
                    expected: order,
                });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= order {
                    return Err(GroupError::EntryOutOfRange {
                        row,
                        col,
                        value,
                        order,
                    });
                }
                table.push(value);
            }
        }
        Self::validate(order, table, label.into(), Notation::Indices)
    }

    fn validate(
        order: usize,
        table: Vec<usize>,
        label: String,
        notation: Notation,
    ) -> Result<Self, GroupError> {
        let mul = |a: usize, b: usize| table[a * order + b];
        for a in 0..order {
            for b in 0..order {
                let ab = mul(a, b);
                for c in 0..order {
                    if mul(ab, c) != mul(a, mul(b, c)) {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| mul(e, x) == x && mul(x, e) == x))
            .ok_or(GroupError::NoIdentity)?;
        let mut inverse = Vec::with_capacity(order);
        for x in 0..order {
            let inv = (0..order)
                .find(|&y| mul(x, y) == identity && mul(y, x) == identity)
                .ok_or(GroupError::NoInverse { element: x })?;
            inverse.push(inv);
        }
        Ok(Self {
            order,
            identity,
            table,
            inverse,
            label,
            notation,
        })
    }

    fn from_fn(
        order: usize,
        label: String,
        notation: Notation,
        f: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, GroupError> {
        if order == 0 {
            return Err(GroupError::EmptyOrder);
        }
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                table.push(f(a, b));
            }
        }
        Self::validate(order, table, label, notation)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inverse(&self, x: usize) -> usize {
        self.inverse[x]
    }

    /// `x^m` for `m >= 0`.
    pub fn pow(&self, x: usize, m: usize) -> usize {
        let mut acc = self.identity;
        for _ in 0..m {
            acc = self.mul(acc, x);
        }
        acc
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn check_element(&self, x: usize) -> Result<(), GroupError> {
        if x < self.order {
            Ok(())
        } else {
            Err(GroupError::BadElement {
                index: x,
                order: self.order,
            })
        }
    }

    /// Least `m >= 1` with `x^m = e`.
    pub fn element_order(&self, x: usize) -> usize {
        let mut acc = x;
        let mut m = 1;
        while acc != self.identity {
            acc = self.mul(acc, x);
            m += 1;
        }
        m
    }

    /// `<x> = {x^m : m >= 0}`, listed in power order starting from `e`.
    pub fn cyclic_subgroup(&self, x: usize) -> Vec<usize> {
        let mut out = vec![self.identity];
        let mut acc = x;
        while acc != self.identity {
            out.push(acc);
            acc = self.mul(acc, x);
        }
        out
    }

    pub fn involutions(&self) -> Vec<usize> {
        self.elements()
            .filter(|&x| x != self.identity && self.mul(x, x) == self.identity)
            .collect()
    }

    pub fn is_involution(&self, x: usize) -> bool {
        x != self.identity && self.mul(x, x) == self.identity
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        self.elements().any(|x| self.element_order(x) == self.order)
    }

    /// Row-major multiplication table.
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.order)
            .map(<[usize]>::to_vec)
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in self.table.chunks(self.order) {
            let line: Vec<String> = row.iter().map(usize::to_string).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    /// Group notation for element `x` (`e`, `x^2`, `a^2b`, `(x, e)`, ...).
    pub fn element_label(&self, x: usize) -> String {
        match &self.notation {
            Notation::Indices => x.to_string(),
            Notation::Cyclic => power_label("x", x),
            Notation::Dihedral { n } => {
                if x < *n {
                    power_label("a", x)
                } else {
                    match x - n {
                        0 => "b".to_string(),
                        1 => "ab".to_string(),
                        i => format!("a^{i}b"),
                    }
                }
            }
            Notation::Product { radices } => {
                let parts: Vec<String> = mixed_radix_digits(x, radices)
                    .into_iter()
                    .map(|d| power_label("x", d))
                    .collect();
                format!("({})", parts.join(", "))
            }
        }
    }
}

fn power_label(base: &str, k: usize) -> String {
    match k {
        0 => "e".to_string(),
        1 => base.to_string(),
        _ => format!("{base}^{k}"),
    }
}

/// Digits of `index` in the given radices, most significant first.
fn mixed_radix_digits(mut index: usize, radices: &[usize]) -> Vec<usize> {
    let mut digits = vec![0; radices.len()];
    for (slot, &r) in digits.iter_mut().zip(radices).rev() {
        *slot = index % r;
        index /= r;
    }
    digits
}

/// `Z_n` with `i * j = (i + j) mod n`.
pub fn make_cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
    FiniteGroup::from_fn(n, format!("Z{n}"), Notation::Cyclic, |a, b| (a + b) % n)
}

/// `D_{2n}`: indices `0..n` are the rotations `a^i`, `n..2n` the
/// reflections `a^i b`.
pub fn make_dihedral(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::EmptyOrder);
    }
    FiniteGroup::from_fn(
        2 * n,
        format!("D{}", 2 * n),
        Notation::Dihedral { n },
        |x, y| {
            let (i, xr) = (x % n, x >= n);
            let (j, yr) = (y % n, y >= n);
            match (xr, yr) {
                (false, false) => (i + j) % n,
                (false, true) => n + (i + j) % n,
                (true, false) => n + (i + n - j) % n,
                (true, true) => (i + n - j) % n,
            }
        },
    )
}

/// Componentwise product; element index is the mixed-radix encoding of the
/// component indices, most significant factor first.
pub fn make_direct_product(factors: &[FiniteGroup]) -> Result<FiniteGroup, GroupError> {
    if factors.is_empty() {
        return Err(GroupError::NoFactors);
    }
    let radices: Vec<usize> = factors.iter().map(FiniteGroup::order).collect();
    let order = radices.iter().product();
    let label = factors
        .iter()
        .map(FiniteGroup::label)
        .collect::<Vec<_>>()
        .join("x");
    let all_cyclic_notation = factors.iter().all(|f| f.notation == Notation::Cyclic);
    let notation = if all_cyclic_notation {
        Notation::Product {
            radices: radices.clone(),
        }
    } else {
        Notation::Indices
    };
    FiniteGroup::from_fn(order, label, notation, |a, b| {
        let da = mixed_radix_digits(a, &radices);
        let db = mixed_radix_digits(b, &radices);
        factors
            .iter()
            .zip(da.iter().zip(&db))
            .fold(0, |acc, (f, (&x, &y))| acc * f.order() + f.mul(x, y))
    })
}

pub fn make_from_cayley(rows: &[Vec<usize>]) -> Result<FiniteGroup, GroupError> {
    let n = rows.len();
    FiniteGroup::from_table(rows, format!("C{n}"))
}

/// Parses a CSV Cayley table of 0-based indices (row `i`, column `j`
/// holding `i * j`). Blank lines are ignored.
pub fn parse_cayley_csv(text: &str) -> Result<Vec<Vec<usize>>, GroupError> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|line| {
            line.split(',')
                .map(|cell| {
                    let cell = cell.trim();
                    cell.parse::<usize>().map_err(|_| GroupError::Parse {
                        token: cell.to_string(),
                        reason: "cayley table cells must be non-negative integers".into(),
                    })
                })
                .collect()
        })
        .collect()
}

pub fn load_cayley_csv(path: &Path) -> Result<FiniteGroup, GroupError> {
    let text = fs::read_to_string(path).map_err(|e| GroupError::Io {
        path: path.to_path_buf(),
        reason: e.to_string(),
    })?;
    let rows = parse_cayley_csv(&text)?;
    let mut group = make_from_cayley(&rows)?;
    group.label = format!("C:{}", path.display());
    Ok(group)
}

/// Ascending `(prime, exponent)` pairs; empty for `n = 1`.
pub fn prime_factorization(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut r = 0;
            while n.is_multiple_of(p) {
                n /= p;
                r += 1;
            }
            out.push((p, r));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Parsed form of the one-token group grammar used on the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Dihedral(usize),
    DirectProduct(Vec<usize>),
    CayleyTable(PathBuf),
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup, GroupError> {
        match self {
            GroupSpec::Cyclic(n) => make_cyclic(*n),
            GroupSpec::Dihedral(n) => make_dihedral(*n),
            GroupSpec::DirectProduct(ns) => {
                let factors = ns
                    .iter()
                    .map(|&n| make_cyclic(n))
                    .collect::<Result<Vec<_>, _>>()?;
                make_direct_product(&factors)
            }
            GroupSpec::CayleyTable(path) => load_cayley_csv(path),
        }
    }
}

fn parse_positive(token: &str, whole: &str) -> Result<usize, GroupError> {
    match token.parse::<usize>() {
        Ok(0) => Err(GroupError::Parse {
            token: whole.to_string(),
            reason: "parameter must be positive".into(),
        }),
        Ok(n) => Ok(n),
        Err(_) => Err(GroupError::Parse {
            token: whole.to_string(),
            reason: format!("`{token}` is not a positive integer"),
        }),
    }
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (kind, rest) = s.split_once(':').ok_or_else(|| GroupError::Parse {
            token: s.to_string(),
            reason: "expected Z:<n>, D:<n>, P:Z:<n>xZ:<m>... or C:<path>".into(),
        })?;
        match kind {
            "Z" => Ok(GroupSpec::Cyclic(parse_positive(rest, s)?)),
            "D" => Ok(GroupSpec::Dihedral(parse_positive(rest, s)?)),
            "P" => {
                let factors = rest
                    .split('x')
                    .map(|factor| match factor.strip_prefix("Z:") {
                        Some(n) => parse_positive(n, factor),
                        None => Err(GroupError::Parse {
                            token: factor.to_string(),
                            reason: "direct product factors must be Z:<n>".into(),
                        }),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(GroupSpec::DirectProduct(factors))
            }
            "C" if !rest.is_empty() => Ok(GroupSpec::CayleyTable(PathBuf::from(rest))),
            _ => Err(GroupError::Parse {
                token: s.to_string(),
                reason: format!("unknown group kind `{kind}`"),
            }),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "Z:{n}"),
            GroupSpec::Dihedral(n) => write!(f, "D:{n}"),
            GroupSpec::DirectProduct(ns) => {
                let parts: Vec<String> = ns.iter().map(|n| format!("Z:{n}")).collect();
                write!(f, "P:{}", parts.join("x"))
            }
            GroupSpec::CayleyTable(p) => write!(f, "C:{}", p.display()),
        }
    }
}
