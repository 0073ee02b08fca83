//! The SIS layer: steady states, regime, portrait class and the full report.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::classify::{classify_point, Classification, Kind};
use crate::compactify::{infinite_singular_points, InfinitePoint};
use crate::error::{Error, Result};
use crate::field::{make_sis_field, SisParams};
use crate::invariants::{find_invariant_lines, InvariantCurve};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SteadyStates {
    /// Endemic state `((c+m)/b, (bk-c-m)/b)`.
    #[serde(with = "crate::serde_util::rational_pair")]
    pub p: (Rational, Rational),
    /// Disease-free state `(k, 0)`.
    #[serde(with = "crate::serde_util::rational_pair")]
    pub q: (Rational, Rational),
    pub coincident: bool,
}

pub fn steady_states(params: &SisParams) -> SteadyStates {
    let SisParams { b, c, k, m } = params;
    let excess = params.excess();
    SteadyStates {
        p: ((c + m) / b, &excess / b),
        q: (k.clone(), Rational::zero()),
        coincident: excess.is_zero(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Case {
    /// `p` saddle, `q` node.
    Case1,
    /// `p` node, `q` saddle.
    Case2,
    /// `p = q`, a saddle-node.
    Case3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Regime {
    pub case: Case,
    /// `(sign m, sign(bk - c - m))`.
    pub witness: (i32, i32),
}

pub fn regime(params: &SisParams) -> Regime {
    let sm = rational::sign(&params.m);
    let se = rational::sign(&params.excess());
    let case = match sm * se {
        0 => Case::Case3,
        s if s < 0 => Case::Case1,
        _ => Case::Case2,
    };
    Regime {
        case,
        witness: (sm, se),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PortraitClass {
    /// Two distinct steady states.
    A,
    /// One coalesced saddle-node.
    B,
}

impl std::fmt::Display for PortraitClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PortraitClass::A => "A",
            PortraitClass::B => "B",
        })
    }
}

/// Cases 1 and 2 give equivalent portraits; only coalescence changes the
/// class.
pub fn portrait_class(params: &SisParams) -> PortraitClass {
    if params.excess().is_zero() {
        PortraitClass::B
    } else {
        PortraitClass::A
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FinitePoint {
    /// `"p"`, `"q"`, or `"p=q"`.
    pub label: String,
    #[serde(with = "crate::serde_util::rational_pair")]
    pub at: (Rational, Rational),
    pub classification: Classification,
}

impl FinitePoint {
    pub fn kind(&self) -> Kind {
        self.classification.kind
    }

    pub fn at_f64(&self) -> [f64; 2] {
        [rational::to_f64(&self.at.0), rational::to_f64(&self.at.1)]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Versions {
    pub sisport: String,
    pub schema: u32,
}

impl Default for Versions {
    fn default() -> Self {
        Versions {
            sisport: env!("CARGO_PKG_VERSION").to_string(),
            schema: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PortraitReport {
    pub params: SisParams,
    pub steady_states: SteadyStates,
    pub finite: Vec<FinitePoint>,
    pub infinite: Vec<InfinitePoint>,
    pub invariant_lines: Vec<InvariantCurve>,
    pub class: PortraitClass,
    pub versions: Versions,
}

impl PortraitReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

/// Does `kind` match what the regime predicts for this point?
fn regime_agrees(case: Case, label: &str, kind: Kind) -> bool {
    match (case, label) {
        (Case::Case1, "p") | (Case::Case2, "q") => kind == Kind::Saddle,
        (Case::Case1, "q") | (Case::Case2, "p") => kind.is_node(),
        (Case::Case3, _) => kind == Kind::SaddleNode,
        _ => false,
    }
}

/// Classifies both steady states exactly and checks them against the
/// regime shortcut.
pub fn classify_steady_states(params: &SisParams) -> Result<(Regime, Vec<FinitePoint>)> {
    let field = make_sis_field(params)?;
    let states = steady_states(params);
    let reg = regime(params);
    let labelled: Vec<(&str, &(Rational, Rational))> = if states.coincident {
        vec![("p=q", &states.q)]
    } else {
        vec![("p", &states.p), ("q", &states.q)]
    };
    let mut finite = Vec::new();
    for (label, at) in labelled {
        let classification = classify_point(&field, &at.0, &at.1)?;
        if !regime_agrees(reg.case, label, classification.kind) {
            return Err(Error::Inconsistent(format!(
                "{params}: regime {:?} disagrees with computed {:?} at {label}",
                reg.case, classification.kind
            )));
        }
        finite.push(FinitePoint {
            label: label.to_string(),
            at: at.clone(),
            classification,
        });
    }
    Ok((reg, finite))
}

pub fn full_report(params: &SisParams) -> Result<PortraitReport> {
    let field = make_sis_field(params)?;
    let (_, finite) = classify_steady_states(params)?;
    let infinite = infinite_singular_points(&field)?;
    let invariant_lines = find_invariant_lines(&field)?;
    Ok(PortraitReport {
        params: params.clone(),
        steady_states: steady_states(params),
        finite,
        infinite,
        invariant_lines,
        class: portrait_class(params),
        versions: Versions::default(),
    })
}

/// Multiplies the rate parameters by `lambda`, i.e. rescales time.
pub fn rescale_time(params: &SisParams, lambda: &Rational) -> Result<SisParams> {
    if !lambda.is_positive() {
        return Err(Error::Inconsistent(
            "time rescaling needs lambda > 0".into(),
        ));
    }
    SisParams::new(
        &params.b * lambda,
        &params.c * lambda,
        params.k.clone(),
        &params.m * lambda,
    )
}
