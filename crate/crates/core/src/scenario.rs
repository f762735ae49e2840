//! Scenario configuration: which variety model to build and which checks to
//! run, parsed from a small line-oriented text format.
//!
//! ```text
//! # comment
//! variety = y18
//!
//! [checks]
//! projectors
//! mck
//! injectivity m=3
//! matching-sum k=6 b=4
//! normalize m=1 expr="h(1)^3 - 18*o(1)"
//! ```

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::model::{varieties, ModelError, VarietyModel};
use crate::rat::rat_int;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VarietySpec {
    Y18,
    Z4,
    Curve2,
    Ab2,
    Custom { n: usize, d: i64, b: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScenarioError {
    #[error("line {0}: {1}")]
    Line(usize, String),
    #[error("invalid variety spec '{0}': expected y18, z4, curve2, ab2, or custom(n,d,b)")]
    BadVariety(String),
    #[error("{0}")]
    Model(#[from] ModelError),
}

impl FromStr for VarietySpec {
    type Err = ScenarioError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s {
            "y18" => return Ok(VarietySpec::Y18),
            "z4" => return Ok(VarietySpec::Z4),
            "curve2" => return Ok(VarietySpec::Curve2),
            "ab2" => return Ok(VarietySpec::Ab2),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("custom(").and_then(|r| r.strip_suffix(')')) {
            let parts: Vec<&str> = rest.split(',').map(str::trim).collect();
            if parts.len() == 3 {
                if let (Ok(n), Ok(d), Ok(b)) =
                    (parts[0].parse(), parts[1].parse(), parts[2].parse())
                {
                    return Ok(VarietySpec::Custom { n, d, b });
                }
            }
        }
        Err(ScenarioError::BadVariety(s.to_string()))
    }
}

impl fmt::Display for VarietySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarietySpec::Y18 => write!(f, "y18"),
            VarietySpec::Z4 => write!(f, "z4"),
            VarietySpec::Curve2 => write!(f, "curve2"),
            VarietySpec::Ab2 => write!(f, "ab2"),
            VarietySpec::Custom { n, d, b } => write!(f, "custom({n},{d},{b})"),
        }
    }
}

impl VarietySpec {
    pub fn model(&self) -> Result<Arc<VarietyModel>, ScenarioError> {
        Ok(match self {
            VarietySpec::Y18 => varieties::y18(),
            VarietySpec::Z4 => varieties::z4(),
            VarietySpec::Curve2 => varieties::curve2(),
            VarietySpec::Ab2 => varieties::ab2(),
            VarietySpec::Custom { n, d, b } => {
                Arc::new(VarietyModel::tate_odd(*n, rat_int(*d), *b)?)
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckSpec {
    Projectors,
    Mck,
    Relations,
    Injectivity { m: usize },
    Yf,
    Zf,
    Andthis,
    MatchingSum { k: usize, b: usize },
    DeltaH,
    PureDegree,
    Normalize { m: usize, expr: String },
}

impl CheckSpec {
    pub fn name(&self) -> String {
        match self {
            CheckSpec::Projectors => "projectors".into(),
            CheckSpec::Mck => "mck".into(),
            CheckSpec::Relations => "relations".into(),
            CheckSpec::Injectivity { m } => format!("injectivity({m})"),
            CheckSpec::Yf => "yf".into(),
            CheckSpec::Zf => "zf".into(),
            CheckSpec::Andthis => "andthis".into(),
            CheckSpec::MatchingSum { k, b } => format!("matching-sum({k},{b})"),
            CheckSpec::DeltaH => "delta-h".into(),
            CheckSpec::PureDegree => "pure-degree".into(),
            CheckSpec::Normalize { m, .. } => format!("normalize({m})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    pub variety: VarietySpec,
    pub checks: Vec<CheckSpec>,
}

/// Splits `k=v` arguments of a check line; a value may be double-quoted.
fn parse_args(line: &str, lineno: usize) -> Result<Vec<(String, String)>, ScenarioError> {
    let mut out = Vec::new();
    let chars: Vec<char> = line.chars().collect();
    let mut i = 0usize;
    while i < chars.len() {
        if chars[i].is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        while i < chars.len() && chars[i] != '=' && !chars[i].is_whitespace() {
            i += 1;
        }
        let key: String = chars[start..i].iter().collect();
        if i >= chars.len() || chars[i] != '=' {
            return Err(ScenarioError::Line(lineno, format!("expected '=' after '{key}'")));
        }
        i += 1;
        let value = if i < chars.len() && chars[i] == '"' {
            i += 1;
            let vstart = i;
            while i < chars.len() && chars[i] != '"' {
                i += 1;
            }
            if i >= chars.len() {
                return Err(ScenarioError::Line(lineno, "unterminated string".into()));
            }
            let v: String = chars[vstart..i].iter().collect();
            i += 1;
            v
        } else {
            let vstart = i;
            while i < chars.len() && !chars[i].is_whitespace() {
                i += 1;
            }
            chars[vstart..i].iter().collect()
        };
        out.push((key, value));
    }
    Ok(out)
}

fn get_usize(
    args: &[(String, String)],
    key: &str,
    lineno: usize,
) -> Result<usize, ScenarioError> {
    let v = args
        .iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v)
        .ok_or_else(|| ScenarioError::Line(lineno, format!("missing argument '{key}'")))?;
    v.parse()
        .map_err(|_| ScenarioError::Line(lineno, format!("'{key}' must be a positive integer")))
}

pub fn parse_check(name: &str, args: &[(String, String)], lineno: usize) -> Result<CheckSpec, ScenarioError> {
    let require_empty = |spec: CheckSpec| {
        if args.is_empty() {
            Ok(spec)
        } else {
            Err(ScenarioError::Line(lineno, format!("'{name}' takes no arguments")))
        }
    };
    match name {
        "projectors" => require_empty(CheckSpec::Projectors),
        "mck" => require_empty(CheckSpec::Mck),
        "relations" => require_empty(CheckSpec::Relations),
        "yf" => require_empty(CheckSpec::Yf),
        "zf" => require_empty(CheckSpec::Zf),
        "andthis" => require_empty(CheckSpec::Andthis),
        "delta-h" => require_empty(CheckSpec::DeltaH),
        "pure-degree" => require_empty(CheckSpec::PureDegree),
        "injectivity" => Ok(CheckSpec::Injectivity { m: get_usize(args, "m", lineno)? }),
        "matching-sum" => Ok(CheckSpec::MatchingSum {
            k: get_usize(args, "k", lineno)?,
            b: get_usize(args, "b", lineno)?,
        }),
        "normalize" => {
            let m = get_usize(args, "m", lineno)?;
            let expr = args
                .iter()
                .find(|(k, _)| k == "expr")
                .map(|(_, v)| v.clone())
                .ok_or_else(|| ScenarioError::Line(lineno, "missing argument 'expr'".into()))?;
            Ok(CheckSpec::Normalize { m, expr })
        }
        other => Err(ScenarioError::Line(lineno, format!("unknown check '{other}'"))),
    }
}

pub fn parse_scenario(text: &str) -> Result<Scenario, ScenarioError> {
    let mut variety: Option<VarietySpec> = None;
    let mut checks = Vec::new();
    let mut in_checks = false;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = match raw.find('#') {
            // '#' inside a quoted value is not a comment
            Some(p) if !raw[..p].contains('"') => &raw[..p],
            _ => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if line == "[checks]" {
            in_checks = true;
            continue;
        }
        if line.starts_with('[') {
            return Err(ScenarioError::Line(lineno, format!("unknown section '{line}'")));
        }
        if in_checks {
            let (name, rest) = match line.find(char::is_whitespace) {
                Some(p) => (&line[..p], &line[p..]),
                None => (line, ""),
            };
            let args = parse_args(rest, lineno)?;
            checks.push(parse_check(name, &args, lineno)?);
        } else {
            let Some((key, value)) = line.split_once('=') else {
                return Err(ScenarioError::Line(lineno, format!("expected 'key = value', got '{line}'")));
            };
            match key.trim() {
                "variety" => variety = Some(value.trim().parse()?),
                other => {
                    return Err(ScenarioError::Line(lineno, format!("unknown key '{other}'")))
                }
            }
        }
    }
    let variety = variety
        .ok_or_else(|| ScenarioError::Line(0, "missing 'variety = ...' line".into()))?;
    if checks.is_empty() {
        return Err(ScenarioError::Line(0, "no checks listed under [checks]".into()));
    }
    Ok(Scenario { variety, checks })
}
