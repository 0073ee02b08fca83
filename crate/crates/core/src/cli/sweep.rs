//! Parameter-grid census.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::SisParams;
use crate::rational::{int, parse_rational, Rational};
use crate::sis::{classify_steady_states, portrait_class, Case, PortraitClass};

/// `"1,3/2,2"` or `"lo:hi:count"` (inclusive, evenly spaced, exact).
pub fn parse_axis(s: &str) -> Result<Vec<Rational>> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [lo, hi, count] => {
            let lo = parse_rational(lo)?;
            let hi = parse_rational(hi)?;
            let n: i64 = count
                .trim()
                .parse()
                .map_err(|_| Error::ParseRational(s.to_string()))?;
            if n < 1 {
                return Err(Error::ParseRational(s.to_string()));
            }
            if n == 1 {
                return Ok(vec![lo]);
            }
            let step = (&hi - &lo) / int(n - 1);
            Ok((0..n).map(|i| &lo + &step * int(i)).collect())
        }
        [list] => list.split(',').map(parse_rational).collect(),
        _ => Err(Error::ParseRational(s.to_string())),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub params: SisParams,
    pub case: Case,
    pub class: PortraitClass,
    pub delta_p: Rational,
    pub tau_p: Rational,
    pub delta_q: Rational,
    pub tau_q: Rational,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SweepSummary {
    pub skipped: usize,
    pub classes: BTreeSet<PortraitClass>,
}

/// Rows in grid order (`b` slowest, `m` fastest); cells with `b = 0` or
/// `m = 0` are skipped and counted.
pub fn sweep(axes: &[Vec<Rational>; 4]) -> Result<(Vec<SweepRow>, SweepSummary)> {
    let mut cells = Vec::new();
    let mut summary = SweepSummary::default();
    for b in &axes[0] {
        for c in &axes[1] {
            for k in &axes[2] {
                for m in &axes[3] {
                    match SisParams::new(b.clone(), c.clone(), k.clone(), m.clone()) {
                        Ok(p) => cells.push(p),
                        Err(_) => summary.skipped += 1,
                    }
                }
            }
        }
    }
    let rows: Vec<Result<SweepRow>> = cells.par_iter().map(row).collect();
    let rows: Vec<SweepRow> = rows.into_iter().collect::<Result<_>>()?;
    summary.classes = rows.iter().map(|r| r.class).collect();
    Ok((rows, summary))
}

fn row(params: &SisParams) -> Result<SweepRow> {
    let (reg, finite) = classify_steady_states(params)?;
    let p = &finite[0].classification;
    let q = &finite[finite.len() - 1].classification;
    Ok(SweepRow {
        params: params.clone(),
        case: reg.case,
        class: portrait_class(params),
        delta_p: p.delta.clone(),
        tau_p: p.tau.clone(),
        delta_q: q.delta.clone(),
        tau_q: q.tau.clone(),
    })
}

pub fn to_csv(rows: &[SweepRow]) -> String {
    let mut s = String::from("b,c,k,m,regime,class,delta_p,tau_p,delta_q,tau_q\n");
    for r in rows {
        let case = match r.case {
            Case::Case1 => "Case1",
            Case::Case2 => "Case2",
            Case::Case3 => "Case3",
        };
        s.push_str(&format!(
            "{},{},{},{},{case},{},{},{},{},{}\n",
            r.params.b,
            r.params.c,
            r.params.k,
            r.params.m,
            r.class,
            r.delta_p,
            r.tau_p,
            r.delta_q,
            r.tau_q
        ));
    }
    s
}
