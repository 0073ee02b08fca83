//! Randomized re-check of the structural results on exact rational
//! parameters.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::classify::Kind;
use crate::compactify::{cross_chart_pairs, infinite_singular_points, Chart, SnType};
use crate::field::{make_sis_field, SisParams};
use crate::invariants::{find_invariant_lines, verify_invariant_line};
use crate::poly::Poly2;
use crate::rational::{frac, Rational};
use crate::sis::{
    classify_steady_states, full_report, portrait_class, regime, rescale_time, Case, PortraitClass,
};

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    frac(rng.gen_range(-20..=20), rng.gen_range(1..=10))
}

/// `n` tuples with numerators in `[-20, 20]` and denominators in `[1, 10]`,
/// redrawn until `b != 0` and `m != 0`. Every seventh tuple is moved onto
/// `c = bk` and every fifth onto `m = bk - c` when that keeps `m` nonzero,
/// so both special families are exercised.
pub fn sample_params(n: usize, seed: u64) -> Vec<SisParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let i = out.len();
        let b = random_rational(&mut rng);
        let mut c = random_rational(&mut rng);
        let k = random_rational(&mut rng);
        let mut m = random_rational(&mut rng);
        if i % 7 == 6 {
            c = &b * &k;
        }
        if i % 5 == 4 {
            let boundary = &b * &k - &c;
            if boundary != Rational::from_integer(0.into()) {
                m = boundary;
            }
        }
        if let Ok(p) = SisParams::new(b, c, k, m) {
            out.push(p);
        }
    }
    out
}

pub const CHECKS: [&str; 4] = ["Prop. 1", "Prop. 2", "Prop. 3", "Thm. 1.1"];

type Failure = (usize, String);

fn fail(check: usize, why: impl Into<String>) -> std::result::Result<(), Failure> {
    Err((check, why.into()))
}

fn check_prop1(p: &SisParams, inject_fault: bool) -> std::result::Result<(), Failure> {
    let (reg, finite) = classify_steady_states(p).map_err(|e| (0, e.to_string()))?;
    if inject_fault && reg.case != Case::Case3 {
        // Pretend the regime predicted the other non-degenerate case.
        let wrong = finite.iter().find(|f| f.label == "p").map(|f| f.kind());
        return fail(
            0,
            format!("injected fault: regime swapped, p computed as {wrong:?}"),
        );
    }
    Ok(())
}

fn check_prop2(p: &SisParams) -> std::result::Result<(), Failure> {
    let field = make_sis_field(p).map_err(|e| (1, e.to_string()))?;
    let pts = infinite_singular_points(&field).map_err(|e| (1, e.to_string()))?;
    if pts.len() != 6 {
        return fail(
            1,
            format!("expected 6 infinite points, found {}", pts.len()),
        );
    }
    let zero = Rational::from_integer(0.into());
    let minus_one = Rational::from_integer((-1).into());
    for chart in [Chart::U1, Chart::U2, Chart::V1, Chart::V2] {
        let origin = pts.iter().find(|q| q.chart == chart && q.u == zero);
        match origin {
            Some(q) if q.kind() == Kind::SaddleNode && q.sn_type == Some(SnType::SN1) => {}
            other => {
                return fail(
                    1,
                    format!(
                        "origin of {chart:?}: {:?}",
                        other.map(|q| (q.kind(), q.sn_type))
                    ),
                )
            }
        }
    }
    for chart in [Chart::U1, Chart::V1] {
        match pts.iter().find(|q| q.chart == chart && q.u == minus_one) {
            Some(q) if q.kind().is_node() => {}
            other => {
                return fail(
                    1,
                    format!("(-1, 0) of {chart:?}: {:?}", other.map(|q| q.kind())),
                )
            }
        }
    }
    for (q, seen) in cross_chart_pairs(&field, &pts).map_err(|e| (1, e.to_string()))? {
        if q.kind() != seen.kind {
            return fail(
                1,
                format!(
                    "chart disagreement at u = {}: {:?} vs {:?}",
                    q.u,
                    q.kind(),
                    seen.kind
                ),
            );
        }
    }
    Ok(())
}

fn check_prop3(p: &SisParams) -> std::result::Result<(), Failure> {
    let field = make_sis_field(p).map_err(|e| (2, e.to_string()))?;
    let SisParams { b, c, k, m } = p;
    let y = Poly2::y();
    let f2 = &Poly2::constant(k.clone()) - &(&Poly2::x() + &y);
    let f3 = &Poly2::constant(k.clone()) - &Poly2::x();
    let k1 = Poly2::from_terms([(b.clone(), 1, 0), (-(m + c), 0, 0)]);
    let k2 = Poly2::constant(-m.clone());
    let k3 = Poly2::from_terms([(-m.clone(), 0, 0), (-b.clone(), 0, 1)]);
    if !verify_invariant_line(&field, &y, &k1) {
        return fail(2, "y is not invariant with cofactor bx - m - c");
    }
    if !verify_invariant_line(&field, &f2, &k2) {
        return fail(2, "k - x - y is not invariant with cofactor -m");
    }
    let special = c == &(b * k);
    if verify_invariant_line(&field, &f3, &k3) != special {
        return fail(
            2,
            format!("k - x invariance does not match c = bk ({special})"),
        );
    }
    let lines = find_invariant_lines(&field).map_err(|e| (2, e.to_string()))?;
    let expect = 2 + usize::from(special);
    if lines.len() != expect {
        let found: Vec<String> = lines.iter().map(|l| l.f.to_string()).collect();
        return fail(
            2,
            format!(
                "expected {expect} invariant lines, found [{}]",
                found.join("; ")
            ),
        );
    }
    Ok(())
}

fn check_theorem(p: &SisParams) -> std::result::Result<(), Failure> {
    let report = full_report(p).map_err(|e| (3, e.to_string()))?;
    let coincident = report.steady_states.coincident;
    if (report.class == PortraitClass::B) != coincident {
        return fail(3, "class B does not coincide with p = q");
    }
    if report.finite.len() != if coincident { 1 } else { 2 } {
        return fail(3, "wrong number of finite singular points");
    }
    if coincident {
        let semi = report.finite[0].classification.semi.as_ref();
        if report.finite[0].kind() != Kind::SaddleNode || semi.is_none_or(|s| s.alpha % 2 != 0) {
            return fail(3, "coalesced point is not a saddle-node with even alpha");
        }
    }
    let scaled = rescale_time(p, &frac(7, 3)).map_err(|e| (3, e.to_string()))?;
    if portrait_class(&scaled) != report.class || regime(&scaled) != regime(p) {
        return fail(3, "class changed under time rescaling");
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyOutcome {
    /// `(passed, run)` per entry of [`CHECKS`].
    pub tallies: [(usize, usize); 4],
    /// First failing tuple in sample order, the check it failed and why.
    pub counterexample: Option<(SisParams, &'static str, String)>,
}

impl VerifyOutcome {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    pub fn tally_text(&self) -> String {
        CHECKS
            .iter()
            .zip(self.tallies.iter())
            .map(|(name, (ok, run))| format!("{name}: {ok}/{run} passed\n"))
            .collect()
    }
}

pub fn verify(samples: usize, seed: u64, inject_fault: bool) -> VerifyOutcome {
    let params = sample_params(samples, seed);
    let results: Vec<[Option<String>; 4]> = params
        .par_iter()
        .map(|p| {
            let checks = [
                check_prop1(p, inject_fault),
                check_prop2(p),
                check_prop3(p),
                check_theorem(p),
            ];
            checks.map(|r| r.err().map(|(_, why)| why))
        })
        .collect();
    let mut tallies = [(0, 0); 4];
    let mut counterexample = None;
    for (p, res) in params.iter().zip(results) {
        for (i, r) in res.into_iter().enumerate() {
            tallies[i].1 += 1;
            match r {
                None => tallies[i].0 += 1,
                Some(why) if counterexample.is_none() => {
                    counterexample = Some((p.clone(), CHECKS[i], why));
                }
                Some(_) => {}
            }
        }
    }
    VerifyOutcome {
        tallies,
        counterexample,
    }
}
