//! Graded-dimension (Poincaré-polynomial) arithmetic for motive-level
//! decompositions: Tate twists, direct sums, and the signed (super)
//! symmetric square, plus a degreewise equality checker with a small
//! textual expression syntax (`F(-2) + Y + Y(-3)`).
//!
//! Decompositions are verified at the level of graded dimensions only; the
//! signed symmetric square takes Sym² on even degrees, Λ² on odd degrees,
//! and the full product between distinct degrees, matching the Koszul-sign
//! convention of the rest of the crate.

use std::collections::BTreeMap;
use std::fmt;

use crate::model::VarietyModel;

/// Finitely supported mapping degree → dimension.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedDims {
    dims: BTreeMap<usize, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MotiveError {
    #[error("parse error at offset {0}: {1}")]
    Parse(usize, String),
    #[error("unknown motive name: {0}")]
    Unresolved(String),
}

impl GradedDims {
    pub fn new() -> Self {
        GradedDims::default()
    }

    pub fn from_pairs(pairs: &[(usize, usize)]) -> Self {
        let mut g = GradedDims::new();
        for &(deg, dim) in pairs {
            g.add(deg, dim);
        }
        g
    }

    pub fn from_betti(betti: &[usize]) -> Self {
        let mut g = GradedDims::new();
        for (deg, &dim) in betti.iter().enumerate() {
            g.add(deg, dim);
        }
        g
    }

    pub fn from_model(model: &VarietyModel) -> Self {
        GradedDims::from_betti(&model.betti())
    }

    pub fn add(&mut self, degree: usize, dim: usize) {
        if dim > 0 {
            *self.dims.entry(degree).or_insert(0) += dim;
        }
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    /// Σ (−1)^k · dim_k, the super-dimension.
    pub fn super_dim(&self) -> i64 {
        self.dims
            .iter()
            .map(|(&k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }

    pub fn degrees(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.dims.iter().map(|(&k, &d)| (k, d))
    }

    /// Tate twist by (−j): every degree shifts up by 2j.
    pub fn twist(&self, j: usize) -> GradedDims {
        GradedDims {
            dims: self.dims.iter().map(|(&k, &d)| (k + 2 * j, d)).collect(),
        }
    }

    pub fn sum(&self, other: &GradedDims) -> GradedDims {
        let mut out = self.clone();
        for (deg, dim) in other.degrees() {
            out.add(deg, dim);
        }
        out
    }
}

impl fmt::Display for GradedDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.degrees().map(|(k, d)| format!("d{k}:{d}")).collect();
        write!(f, "{}", if parts.is_empty() { "0".into() } else { parts.join(" ") })
    }
}

/// Graded dimensions of the invariants of the signed swap on a tensor
/// square: Sym² on each even degree, Λ² on each odd degree, one copy of the
/// full product between distinct degrees.
pub fn signed_sym_square(d: &GradedDims) -> GradedDims {
    let entries: Vec<(usize, usize)> = d.degrees().collect();
    let mut out = GradedDims::new();
    for (a, &(p, dp)) in entries.iter().enumerate() {
        // same-degree part
        let diag = if p % 2 == 0 { dp * (dp + 1) / 2 } else { dp * (dp - 1) / 2 };
        out.add(2 * p, diag);
        for &(q, dq) in &entries[a + 1..] {
            out.add(p + q, dp * dq);
        }
    }
    out
}

/// One summand of a motive expression: a named piece with a Tate twist.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MotiveTerm {
    pub name: String,
    /// the j of a twist (−j); degrees shift up by 2j
    pub twist: usize,
}

/// Formal direct sum of twisted named pieces, e.g. `F(-2) + Y + Y(-3)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MotiveExpr {
    pub terms: Vec<MotiveTerm>,
}

impl MotiveExpr {
    /// Grammar: term ('+' term)*, term := name ('(' '-' uint ')')?, with a
    /// name being `1` or an identifier (letters/digits, starting with a
    /// letter). Whitespace insensitive.
    pub fn parse(text: &str) -> Result<MotiveExpr, MotiveError> {
        let chars: Vec<char> = text.chars().collect();
        let mut pos = 0usize;
        let mut terms = Vec::new();
        let skip_ws = |pos: &mut usize| {
            while *pos < chars.len() && chars[*pos].is_whitespace() {
                *pos += 1;
            }
        };
        loop {
            skip_ws(&mut pos);
            if pos >= chars.len() {
                return Err(MotiveError::Parse(pos, "expected a motive name".into()));
            }
            let start = pos;
            if chars[pos] == '1' {
                pos += 1;
            } else if chars[pos].is_ascii_alphabetic() {
                while pos < chars.len() && chars[pos].is_ascii_alphanumeric() {
                    pos += 1;
                }
            } else {
                return Err(MotiveError::Parse(
                    pos,
                    format!("unexpected character '{}'", chars[pos]),
                ));
            }
            let name: String = chars[start..pos].iter().collect();
            let mut twist = 0usize;
            skip_ws(&mut pos);
            if pos < chars.len() && chars[pos] == '(' {
                pos += 1;
                skip_ws(&mut pos);
                if pos >= chars.len() || chars[pos] != '-' {
                    return Err(MotiveError::Parse(pos, "expected '-' in twist".into()));
                }
                pos += 1;
                skip_ws(&mut pos);
                let dstart = pos;
                while pos < chars.len() && chars[pos].is_ascii_digit() {
                    pos += 1;
                }
                if pos == dstart {
                    return Err(MotiveError::Parse(pos, "expected a twist amount".into()));
                }
                twist = chars[dstart..pos]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|e| MotiveError::Parse(dstart, format!("bad twist: {e}")))?;
                skip_ws(&mut pos);
                if pos >= chars.len() || chars[pos] != ')' {
                    return Err(MotiveError::Parse(pos, "expected ')'".into()));
                }
                pos += 1;
            }
            terms.push(MotiveTerm { name, twist });
            skip_ws(&mut pos);
            if pos >= chars.len() {
                break;
            }
            if chars[pos] != '+' {
                return Err(MotiveError::Parse(
                    pos,
                    format!("expected '+' or end of input, got '{}'", chars[pos]),
                ));
            }
            pos += 1;
        }
        Ok(MotiveExpr { terms })
    }
}

impl fmt::Display for MotiveExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                if t.twist == 0 {
                    t.name.clone()
                } else {
                    format!("{}(-{})", t.name, t.twist)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Named graded pieces resolvable in motive expressions.
#[derive(Debug, Clone, Default)]
pub struct Registry {
    pieces: BTreeMap<String, GradedDims>,
}

impl Registry {
    pub fn new() -> Self {
        Registry::default()
    }

    pub fn register(&mut self, name: &str, dims: GradedDims) {
        self.pieces.insert(name.to_string(), dims);
    }

    pub fn resolve(&self, name: &str) -> Result<&GradedDims, MotiveError> {
        self.pieces
            .get(name)
            .ok_or_else(|| MotiveError::Unresolved(name.to_string()))
    }

    /// The standard table: the four reference varieties, the unit, and the
    /// named pieces h1F (degree 1, dim 4), sym2h1F (degree 2, dim 6 — the
    /// signed square of an odd 4-space), and h3Y (degree 3, dim 4).
    pub fn standard() -> Self {
        use crate::model::varieties::*;
        let mut r = Registry::new();
        r.register("Y", GradedDims::from_model(&y18()));
        r.register("Z", GradedDims::from_model(&z4()));
        r.register("C", GradedDims::from_model(&curve2()));
        r.register("F", GradedDims::from_model(&ab2()));
        r.register("1", GradedDims::from_pairs(&[(0, 1)]));
        r.register("h1F", GradedDims::from_pairs(&[(1, 4)]));
        r.register("sym2h1F", GradedDims::from_pairs(&[(2, 6)]));
        r.register("h3Y", GradedDims::from_pairs(&[(3, 4)]));
        r
    }
}

pub fn dims_of(expr: &MotiveExpr, registry: &Registry) -> Result<GradedDims, MotiveError> {
    let mut out = GradedDims::new();
    for term in &expr.terms {
        out = out.sum(&registry.resolve(&term.name)?.twist(term.twist));
    }
    Ok(out)
}

/// One degree of a decomposition check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompRow {
    pub degree: usize,
    pub lhs: usize,
    pub rhs: usize,
}

/// Degreewise comparison of two graded dimension vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompOutcome {
    pub rows: Vec<DecompRow>,
    pub mismatches: Vec<usize>,
    pub lhs_total: usize,
    pub rhs_total: usize,
}

impl DecompOutcome {
    pub fn pass(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn verify_decomposition(
    lhs: &GradedDims,
    rhs: &MotiveExpr,
    registry: &Registry,
) -> Result<DecompOutcome, MotiveError> {
    let rhs_dims = dims_of(rhs, registry)?;
    let mut degrees: Vec<usize> = lhs
        .degrees()
        .map(|(k, _)| k)
        .chain(rhs_dims.degrees().map(|(k, _)| k))
        .collect();
    degrees.sort_unstable();
    degrees.dedup();
    let rows: Vec<DecompRow> = degrees
        .into_iter()
        .map(|degree| DecompRow { degree, lhs: lhs.dim(degree), rhs: rhs_dims.dim(degree) })
        .collect();
    let mismatches = rows.iter().filter(|r| r.lhs != r.rhs).map(|r| r.degree).collect();
    Ok(DecompOutcome {
        rows,
        mismatches,
        lhs_total: lhs.total(),
        rhs_total: rhs_dims.total(),
    })
}
