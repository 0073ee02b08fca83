//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//! Runs with `harness = false` so the criteria execute sequentially and
//! their timings are not distorted by each other.

use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sisport::classify::{classify_semi_hyperbolic_auto, to_normal_form, NormalForm};
use sisport::cli::{self, parse_axis, sweep};
use sisport::compactify::{
    chart_u1, chart_u2, classify_chart_point, cross_chart_pairs, infinite_singular_points, Chart,
    ChartPoint, DiscDynamics, SnType,
};
use sisport::field::NumericField;
use sisport::invariants::{cofactor_of, find_invariant_lines, verify_invariant_line};
use sisport::portrait::{
    integrate_from, integrate_orbit, invariant_line_seeds, project_to_disc, singular_stops,
    Controls, Direction, DiscPoint, OriginTag, Seed, Termination,
};
use sisport::rational::{frac, int};
use sisport::sis::{
    classify_steady_states, full_report, regime, steady_states, Case, PortraitClass, PortraitReport,
};
use sisport::{make_sis_field, Kind, Poly2, Rational, SisParams, VectorField};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn rq(rng: &mut ChaCha8Rng) -> Rational {
    frac(rng.gen_range(-20..=20), rng.gen_range(1..=10))
}

fn nonzero(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let r = rq(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

fn random_params(rng: &mut ChaCha8Rng) -> SisParams {
    loop {
        if let Ok(p) = SisParams::new(rq(rng), rq(rng), rq(rng), rq(rng)) {
            return p;
        }
    }
}

fn pp(s: &str) -> Poly2 {
    s.parse().unwrap()
}

// ---------------------------------------------------------------- 1

/// Signs `(re1, re2)` of the eigenvalues' real parts from nalgebra, sorted,
/// or `None` when one of them is within the guard of zero.
fn float_signs(j: [[f64; 2]; 2]) -> Option<(i32, i32, bool)> {
    let m = nalgebra::Matrix2::new(j[0][0], j[0][1], j[1][0], j[1][1]);
    let ev = m.complex_eigenvalues();
    let mut re = [ev[0].re, ev[1].re];
    re.sort_by(f64::total_cmp);
    if re.iter().any(|r| r.abs() <= 1e-9) {
        return None;
    }
    let complex = ev[0].im.abs() > 1e-12;
    Some((re[0].signum() as i32, re[1].signum() as i32, complex))
}

fn kind_agrees_with_floats(kind: Kind, signs: (i32, i32, bool)) -> bool {
    match kind {
        Kind::Saddle => signs.0 == -1 && signs.1 == 1,
        Kind::NodeStable => signs == (-1, -1, false),
        Kind::NodeUnstable => signs == (1, 1, false),
        Kind::FocusStable => signs == (-1, -1, true),
        Kind::FocusUnstable => signs == (1, 1, true),
        _ => false,
    }
}

/// A tuple in the requested sign cell of `(m, bk - c - m)`.
fn params_in_cell(rng: &mut ChaCha8Rng, sm: i32, se: i32) -> SisParams {
    loop {
        let b = nonzero(rng);
        let c = rq(rng);
        let k = rq(rng);
        let m = nonzero(rng).abs() * int(sm as i64);
        let e = &b * &k - &c - &m;
        if e.is_zero() || (e.is_positive() != (se > 0)) {
            continue;
        }
        return SisParams::new(b, c, k, m).unwrap();
    }
}

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut tuples = Vec::new();
    for (sm, se) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        for _ in 0..250 {
            tuples.push(params_in_cell(&mut rng, sm, se));
        }
    }
    let mut boundary = 0;
    while boundary < 50 {
        let b = nonzero(&mut rng);
        let c = rq(&mut rng);
        let k = rq(&mut rng);
        if let Ok(p) = SisParams::new(b.clone(), c.clone(), k.clone(), &b * &k - &c) {
            tuples.push(p);
            boundary += 1;
        }
    }
    let mut oracle_checked = 0;
    for p in &tuples {
        let (reg, finite) = classify_steady_states(p).map_err(|e| format!("{p}: {e}"))?;
        let expect_case3 = p.excess().is_zero();
        if (reg.case == Case::Case3) != expect_case3 {
            return Err(format!("{p}: regime {:?}", reg.case));
        }
        let field = make_sis_field(p).unwrap();
        let nf: NumericField = field.to_numeric();
        for f in &finite {
            let expected_ok = match (reg.case, f.label.as_str()) {
                (Case::Case1, "p") | (Case::Case2, "q") => f.kind() == Kind::Saddle,
                (Case::Case1, "q") | (Case::Case2, "p") => f.kind().is_node(),
                (Case::Case3, _) => f.kind() == Kind::SaddleNode,
                _ => false,
            };
            if !expected_ok {
                return Err(format!(
                    "{p}: {} is {:?} under {:?}",
                    f.label,
                    f.kind(),
                    reg.case
                ));
            }
            if f.classification.delta.is_zero() {
                continue;
            }
            let [x, y] = f.at_f64();
            if let Some(signs) = float_signs(nf.jacobian(x, y)) {
                oracle_checked += 1;
                if !kind_agrees_with_floats(f.kind(), signs) {
                    return Err(format!(
                        "{p}: float oracle {signs:?} vs {:?} at {}",
                        f.kind(),
                        f.label
                    ));
                }
            }
        }
    }
    Ok(format!(
        "{} tuples (1000 in sign cells + 50 on m = bk-c), regime = classifier on all; float eigen oracle agreed on {oracle_checked} points",
        tuples.len()
    ))
}

// ---------------------------------------------------------------- 2

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    for _ in 0..100 {
        let p = random_params(&mut rng);
        let SisParams { b, c, k, m } = &p;
        let km = k * m;
        let field = make_sis_field(&p).unwrap();
        // u(b + bu - cv - cuv - kmv^2), v(bu + mv - cuv - kmv^2)
        let u1 = Poly2::from_terms([
            (b.clone(), 1, 0),
            (b.clone(), 2, 0),
            (-c.clone(), 1, 1),
            (-c.clone(), 2, 1),
            (-km.clone(), 1, 2),
        ]);
        let v1 = Poly2::from_terms([
            (b.clone(), 1, 1),
            (m.clone(), 0, 2),
            (-c.clone(), 1, 2),
            (-km.clone(), 0, 3),
        ]);
        // -bu - bu^2 + cv + cuv + kmv^2, v(-bu + cv + mv)
        let u2 = Poly2::from_terms([
            (-b.clone(), 1, 0),
            (-b.clone(), 2, 0),
            (c.clone(), 0, 1),
            (c.clone(), 1, 1),
            (km.clone(), 0, 2),
        ]);
        let v2 = Poly2::from_terms([(-b.clone(), 1, 1), (c + m, 0, 2)]);
        let s1 = chart_u1(&field);
        let s2 = chart_u2(&field);
        if s1.u != u1 || s1.v != v1 {
            return Err(format!("{p}: U1 gives ({}, {})", s1.u, s1.v));
        }
        if s2.u != u2 || s2.v != v2 {
            return Err(format!("{p}: U2 gives ({}, {})", s2.u, s2.v));
        }
    }
    Ok("100 tuples, both chart systems identical to the closed forms".into())
}

// ---------------------------------------------------------------- 3

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let zero = Rational::zero();
    let minus_one = int(-1);
    for _ in 0..100 {
        let p = random_params(&mut rng);
        let field = make_sis_field(&p).unwrap();
        let pts = infinite_singular_points(&field).map_err(|e| format!("{p}: {e}"))?;
        if pts.len() != 6 {
            return Err(format!("{p}: {} infinite points", pts.len()));
        }
        let find = |chart: Chart, u: &Rational| pts.iter().find(|q| q.chart == chart && &q.u == u);
        for chart in [Chart::U1, Chart::U2] {
            let o = find(chart, &zero).ok_or(format!("{p}: no origin in {chart:?}"))?;
            if o.kind() != Kind::SaddleNode || o.sn_type != Some(SnType::SN1) {
                return Err(format!(
                    "{p}: origin of {chart:?} is {:?}/{:?}",
                    o.kind(),
                    o.sn_type
                ));
            }
            // The V copy of a degree-2 field is the time reversal.
            let v = find(chart.opposite(), &zero).ok_or(format!("{p}: no V copy of {chart:?}"))?;
            if v.classification != o.classification.reversed() || v.sn_type != o.sn_type {
                return Err(format!("{p}: V copy of {chart:?} is not the reversal"));
            }
        }
        let n1 = find(Chart::U1, &minus_one).ok_or(format!("{p}: no (-1,0) in U1"))?;
        if !n1.kind().is_node() {
            return Err(format!("{p}: U1 (-1,0) is {:?}", n1.kind()));
        }
        // (-1, 0) of U2 is computed directly in that chart.
        let (c2, _) =
            classify_chart_point(&chart_u2(&field), &minus_one).map_err(|e| e.to_string())?;
        if !c2.kind.is_node() {
            return Err(format!("{p}: U2 (-1,0) is {:?}", c2.kind));
        }
        let v1 = find(Chart::V1, &minus_one).unwrap();
        if c2.kind != v1.kind() {
            return Err(format!(
                "{p}: U2 (-1,0) {:?} differs from V1 (-1,0) {:?}",
                c2.kind,
                v1.kind()
            ));
        }
        for (q, seen) in cross_chart_pairs(&field, &pts).map_err(|e| e.to_string())? {
            if q.kind() != seen.kind {
                return Err(format!(
                    "{p}: cross-chart {:?} vs {:?}",
                    q.kind(),
                    seen.kind
                ));
            }
        }
    }
    Ok("100 tuples: SN1 at U1/U2/V1/V2 origins, node at (-1,0) in U1 and U2, charts agree".into())
}

// ---------------------------------------------------------------- 4

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let cofactors = |p: &SisParams| {
        let SisParams { b, c, k, m } = p;
        let f1 = Poly2::y();
        let k1 = Poly2::from_terms([(b.clone(), 1, 0), (-(m + c), 0, 0)]);
        let f2 = Poly2::from_terms([(k.clone(), 0, 0), (int(-1), 1, 0), (int(-1), 0, 1)]);
        let k2 = Poly2::constant(-m.clone());
        let f3 = Poly2::from_terms([(k.clone(), 0, 0), (int(-1), 1, 0)]);
        let k3 = Poly2::from_terms([(-m.clone(), 0, 0), (-b.clone(), 0, 1)]);
        (f1, k1, f2, k2, f3, k3)
    };
    for _ in 0..100 {
        let p = random_params(&mut rng);
        let field = make_sis_field(&p).unwrap();
        let (f1, k1, f2, k2, _, _) = cofactors(&p);
        if cofactor_of(&field, &f1).unwrap() != Some(k1.clone())
            || !verify_invariant_line(&field, &f1, &k1)
        {
            return Err(format!("{p}: K1"));
        }
        if cofactor_of(&field, &f2).unwrap() != Some(k2.clone())
            || !verify_invariant_line(&field, &f2, &k2)
        {
            return Err(format!("{p}: K2"));
        }
    }
    let mut special = 0;
    while special < 20 {
        let b = nonzero(&mut rng);
        let k = rq(&mut rng);
        let Ok(p) = SisParams::new(b.clone(), &b * &k, k, nonzero(&mut rng)) else {
            continue;
        };
        special += 1;
        let field = make_sis_field(&p).unwrap();
        let (_, _, _, _, f3, k3) = cofactors(&p);
        if cofactor_of(&field, &f3).unwrap() != Some(k3.clone())
            || !verify_invariant_line(&field, &f3, &k3)
        {
            return Err(format!("{p}: K3"));
        }
    }
    let mut generic = 0;
    while generic < 20 {
        let p = random_params(&mut rng);
        if p.c == &p.b * &p.k {
            continue;
        }
        generic += 1;
        let field = make_sis_field(&p).unwrap();
        let lines = find_invariant_lines(&field).map_err(|e| e.to_string())?;
        let (_, k1, f2, k2, _, _) = cofactors(&p);
        let f2n = f2.scale(&int(-1)); // normalized with the x coefficient 1
        let mut got: Vec<(String, String)> = lines
            .iter()
            .map(|l| (l.f.to_string(), l.cofactor.to_string()))
            .collect();
        got.sort();
        let mut want = vec![
            ("y".to_string(), k1.to_string()),
            (f2n.to_string(), k2.to_string()),
        ];
        want.sort();
        if got != want {
            return Err(format!("{p}: lines {got:?}, expected {want:?}"));
        }
    }
    Ok(
        "K1, K2 on 100 tuples, K3 on 20 tuples with c = bk, exact line set on 20 generic tuples"
            .into(),
    )
}

// ---------------------------------------------------------------- 5

fn criterion_5() -> Outcome {
    let axes = [
        parse_axis("1/2,1,3/2,2,-1").unwrap(),
        parse_axis("0,1,2,1/2,-1").unwrap(),
        parse_axis("1,2,3,5/2,4").unwrap(),
        parse_axis("1,2,1/2,-1,3").unwrap(),
    ];
    let (rows, summary) = sweep(&axes).map_err(|e| e.to_string())?;
    if rows.len() != 625 || summary.skipped != 0 {
        return Err(format!("{} rows, {} skipped", rows.len(), summary.skipped));
    }
    let mut boundary = 0;
    for r in &rows {
        let on = r.params.m == &r.params.b * &r.params.k - &r.params.c;
        boundary += usize::from(on);
        if (r.class == PortraitClass::B) != on {
            return Err(format!(
                "{}: class {} but on-boundary = {on}",
                r.params, r.class
            ));
        }
    }
    if summary.classes.len() != 2 {
        return Err(format!("{} distinct classes", summary.classes.len()));
    }
    Ok(format!(
        "625 cells, {boundary} on m = bk-c, exactly 2 classes, B only on the boundary"
    ))
}

// ---------------------------------------------------------------- 6

/// Characteristic directions (zeros of the angular component) on a circle
/// of radius `r`, with the sign of the radial component there.
fn characteristic_directions(f: &NumericField, center: [f64; 2], r: f64) -> Vec<(f64, i32)> {
    let sample = |deg: f64| {
        let th = deg.to_radians();
        let (dx, dy) = (r * th.cos(), r * th.sin());
        let [p, q] = f.eval(center[0] + dx, center[1] + dy);
        (dx * q - dy * p, dx * p + dy * q)
    };
    let mut out = Vec::new();
    for i in 0..360 {
        let a = i as f64 + 0.5;
        let b = a + 1.0;
        let (ta, _) = sample(a);
        let (tb, _) = sample(b);
        if ta.signum() != tb.signum() {
            let mid = (a + b) / 2.0;
            let (_, radial) = sample(mid);
            out.push((mid % 360.0, radial.signum() as i32));
        }
    }
    out
}

/// `(hyperbolic, parabolic)` sector counts: consecutive characteristic
/// directions of opposite radial sign bound a hyperbolic sector; runs of
/// same-sign neighbours merge into one parabolic sector.
fn sector_counts(dirs: &[(f64, i32)]) -> (usize, usize) {
    let n = dirs.len();
    let kinds: Vec<bool> = (0..n).map(|i| dirs[i].1 != dirs[(i + 1) % n].1).collect();
    let hyperbolic = kinds.iter().filter(|h| **h).count();
    let mut parabolic = 0;
    for i in 0..n {
        if !kinds[i] && kinds[(i + n - 1) % n] {
            parabolic += 1;
        }
    }
    if hyperbolic == 0 && n > 0 {
        parabolic = 1;
    }
    (hyperbolic, parabolic)
}

fn angle_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(360.0);
    d.min(360.0 - d)
}

fn check_sectors(
    name: &str,
    f: &VectorField,
    center: [f64; 2],
    eig: &[[f64; 2]],
) -> Result<String, String> {
    let dirs = characteristic_directions(&f.to_numeric(), center, 1e-2);
    let (h, p) = sector_counts(&dirs);
    if (h, p) != (2, 1) {
        return Err(format!(
            "{name}: sectors {h} hyperbolic + {p} parabolic from {dirs:?}"
        ));
    }
    let rays: Vec<f64> = eig
        .iter()
        .flat_map(|v| {
            let a = v[1].atan2(v[0]).to_degrees();
            [a, a + 180.0]
        })
        .collect();
    let worst = dirs
        .iter()
        .map(|(d, _)| {
            rays.iter()
                .map(|r| angle_gap(*d, *r))
                .fold(f64::MAX, f64::min)
        })
        .fold(0.0, f64::max);
    if worst > 5.0 {
        return Err(format!(
            "{name}: boundary {worst:.2} deg from eigendirections"
        ));
    }
    Ok(format!("{name} 2h+1p (max {worst:.1} deg)"))
}

fn criterion_6() -> Outcome {
    let minus_one = int(-1);
    let mut notes = Vec::new();
    let cases = [
        ("x^2", Kind::SaddleNode),
        ("x^3", Kind::SemiHypNodeUnstable),
        ("-x^3", Kind::SemiHypSaddle),
    ];
    for (a, expect) in cases {
        let nf = NormalForm::new(minus_one.clone(), pp(a), Poly2::zero()).unwrap();
        let c = classify_semi_hyperbolic_auto(&nf);
        if c.kind != expect {
            return Err(format!(
                "lambda=-1, A={a}: {:?}, expected {expect:?}",
                c.kind
            ));
        }
    }
    let saddle_node = VectorField::new(pp("x^2"), pp("-y"));
    notes.push(check_sectors(
        "x'=x^2,y'=-y",
        &saddle_node,
        [0.0, 0.0],
        &[[1.0, 0.0], [0.0, 1.0]],
    )?);

    for (b, m) in [(1, 1), (2, 3), (-1, 2), (3, -1)] {
        // x' = -mx - my - bxy, y' = bxy
        let f = VectorField::new(
            Poly2::from_terms([(int(-m), 1, 0), (int(-m), 0, 1), (int(-b), 1, 1)]),
            Poly2::from_terms([(int(b), 1, 1)]),
        );
        let j = f.jacobian(&int(0), &int(0));
        let nf = to_normal_form(&f, &j).map_err(|e| e.to_string())?;
        let c = classify_semi_hyperbolic_auto(&nf);
        if c.kind != Kind::SaddleNode {
            return Err(format!("coalesced normal form b={b} m={m}: {:?}", c.kind));
        }
        // The same system is the SIS field translated to p = q.
        let k = 3;
        let params = SisParams::from_ints(b, b * k - m, k, m).unwrap();
        let translated = make_sis_field(&params).unwrap().translate(&int(k), &int(0));
        if translated != f {
            return Err(format!("translated SIS field differs for b={b} m={m}"));
        }
        let semi = c.semi.as_ref().unwrap();
        let eig = [semi.center_direction(), semi.strong_direction()];
        notes.push(check_sectors(
            &format!("coalesced b={b} m={m}"),
            &f,
            [0.0, 0.0],
            &eig,
        )?);
    }
    Ok(format!("labels match; {}", notes.join("; ")))
}

// ---------------------------------------------------------------- 7

fn endpoint_check(
    params: SisParams,
    target: (i64, i64),
    rng: &mut ChaCha8Rng,
) -> Result<String, String> {
    let report = full_report(&params).map_err(|e| e.to_string())?;
    let stops = singular_stops(&report);
    let target_disc = project_to_disc(target.0 as f64, target.1 as f64);
    let dynamics = DiscDynamics::new(&make_sis_field(&params).unwrap());
    let controls = Controls::default();
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let x = rng.gen_range(0.05..8.0);
        let y = rng.gen_range(0.05..8.0);
        let o = integrate_orbit(
            &dynamics,
            project_to_disc(x, y),
            Direction::Forward,
            &controls,
            &stops,
        );
        let d = o.end().dist(&target_disc);
        worst = worst.max(d);
        if !matches!(o.termination, Termination::NearSingular(_)) || d >= 1e-3 {
            return Err(format!(
                "{params}: seed ({x:.3}, {y:.3}) ended {:?} at distance {d:.2e}",
                o.termination
            ));
        }
    }
    Ok(format!("{params}: 20/20 seeds within {worst:.3e}"))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    let a = endpoint_check(SisParams::from_ints(1, 1, 2, 1).unwrap(), (2, 0), &mut rng)?;
    let r = SisParams::from_ints(1, 3, 2, 1).unwrap();
    if regime(&r).case != Case::Case1 || steady_states(&r).q != (int(2), int(0)) {
        return Err("(1,3,2,1) is not Case1 with q = (2,0)".into());
    }
    let b = endpoint_check(r, (2, 0), &mut rng)?;
    Ok(format!("{a}; {b}"))
}

// ---------------------------------------------------------------- 8

/// First-order distance from a disc point to the image of
/// `a0 + a1 x + a2 y = 0`, i.e. to `{a0 Z + a1 X + a2 Y = 0}`.
fn distance_to_line_image(d: DiscPoint, a: [f64; 3]) -> f64 {
    let z = (1.0 - d.x * d.x - d.y * d.y).max(0.0).sqrt();
    let g = a[0] * z + a[1] * d.x + a[2] * d.y;
    if z < 1e-12 {
        return g.abs();
    }
    let gx = a[1] - a[0] * d.x / z;
    let gy = a[2] - a[0] * d.y / z;
    g.abs() / gx.hypot(gy).max(1.0)
}

fn criterion_8() -> Outcome {
    let mut out = Vec::new();
    let mut orbits = 0;
    for params in [
        SisParams::from_ints(1, 1, 4, 1).unwrap(),
        SisParams::from_ints(1, 3, 2, 1).unwrap(),
        SisParams::from_ints(1, 1, 2, 1).unwrap(),
    ] {
        let report: PortraitReport = full_report(&params).unwrap();
        let stops = singular_stops(&report);
        let dynamics = DiscDynamics::new(&make_sis_field(&params).unwrap());
        let controls = Controls::default();
        let k = sisport::rational::to_f64(&params.k);
        // (coefficients, name, tolerance); |y| <= 1e-9 is the stricter
        // bound the axis is held to.
        let lines = [
            ([0.0, 0.0, 1.0], "y=0", 1e-9),
            ([-k, 1.0, 1.0], "x+y=k", 1e-6),
        ];
        for (a, name, tol) in lines {
            let id = report
                .invariant_lines
                .iter()
                .position(|l| {
                    let c = [l.f.coeff(0, 0), l.f.coeff(1, 0), l.f.coeff(0, 1)]
                        .map(|r| sisport::rational::to_f64(&r));
                    c == a
                })
                .ok_or(format!("{params}: {name} not in report"))?;
            let mut seeds: Vec<Seed> = invariant_line_seeds(&report)
                .into_iter()
                .filter(|s| s.tag == OriginTag::InvariantLine(id))
                .collect();
            for t in [-6.0, -1.5, 0.3, 1.1, 2.7, 9.0] {
                let (x, y) = if name == "y=0" { (t, 0.0) } else { (t, k - t) };
                if stops.iter().any(|s| s.dist(&project_to_disc(x, y)) < 1e-2) {
                    continue;
                }
                for direction in [Direction::Forward, Direction::Backward] {
                    seeds.push(Seed {
                        point: ChartPoint::Plane { x, y },
                        direction,
                        tag: OriginTag::InvariantLine(id),
                        source: None,
                        on_line: Some(a),
                    });
                }
            }
            let mut worst: f64 = 0.0;
            for seed in &seeds {
                let o = integrate_from(&dynamics, seed, &controls, &stops);
                orbits += 1;
                if o.diagnostic.is_some() {
                    return Err(format!(
                        "{params}: {name} orbit diagnostic {:?}",
                        o.diagnostic
                    ));
                }
                for d in &o.points {
                    worst = worst.max(distance_to_line_image(*d, a));
                }
            }
            if worst > tol {
                return Err(format!(
                    "{params}: orbits on {name} drift {worst:.2e} > {tol:e}"
                ));
            }
            out.push(format!("{name} {worst:.1e}"));
        }
    }
    Ok(format!(
        "{orbits} orbits; max drift per case: {}",
        out.join(", ")
    ))
}

// ---------------------------------------------------------------- 9

fn run_cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(
        std::iter::once("sisport").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn criterion_9() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut sizes = Vec::new();
    for params in [["1", "1", "4", "1"], ["1", "1", "2", "1"]] {
        let a = dir.path().join("a.svg");
        let b = dir.path().join("b.svg");
        for path in [&a, &b] {
            let mut args: Vec<&str> = vec!["portrait"];
            args.extend(params);
            args.extend(["--svg", path.to_str().unwrap()]);
            let (code, _, err) = run_cli(&args);
            if code != 0 {
                return Err(format!("portrait {params:?} exited {code}: {err}"));
            }
        }
        let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
        if x != y {
            return Err(format!("portrait {params:?} differs between runs"));
        }
        sizes.push(x.len());

        let mut args: Vec<&str> = vec!["analyze"];
        args.extend(params);
        let (code, json, _) = run_cli(&args);
        if code != 0 {
            return Err(format!("analyze {params:?} exited {code}"));
        }
        let report = PortraitReport::from_json(&json).map_err(|e| e.to_string())?;
        let direct = full_report(
            &SisParams::new(
                sisport::rational::parse_rational(params[0]).unwrap(),
                sisport::rational::parse_rational(params[1]).unwrap(),
                sisport::rational::parse_rational(params[2]).unwrap(),
                sisport::rational::parse_rational(params[3]).unwrap(),
            )
            .unwrap(),
        )
        .unwrap();
        if report != direct || format!("{}\n", report.to_json()) != json {
            return Err(format!("analyze {params:?} JSON does not round-trip"));
        }
    }
    Ok(format!(
        "SVGs byte-identical ({} and {} bytes), JSON round-trips",
        sizes[0], sizes[1]
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        (
            "1 steady-state census",
            criterion_1,
            Duration::from_secs(10),
        ),
        ("2 chart identities", criterion_2, Duration::from_secs(1)),
        ("3 infinity census", criterion_3, Duration::from_secs(5)),
        ("4 invariant lines", criterion_4, Duration::from_secs(5)),
        ("5 class grid", criterion_5, Duration::from_secs(5)),
        (
            "6 semi-hyperbolic classifier",
            criterion_6,
            Duration::from_secs(10),
        ),
        ("7 endpoints", criterion_7, Duration::from_secs(30)),
        (
            "8 invariant-line confinement",
            criterion_8,
            Duration::from_secs(10),
        ),
        ("9 determinism", criterion_9, Duration::from_secs(60)),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (name, run, budget) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let (ok, detail) = match result {
            Ok(d) if took <= budget => (true, d),
            Ok(d) => (false, format!("{d}; too slow: {took:.2?} > {budget:?}")),
            Err(e) => (false, e),
        };
        failed += usize::from(!ok);
        println!(
            "criterion {name}: {} [{took:.2?}, budget {budget:?}] {detail}",
            if ok { "PASS" } else { "FAIL" }
        );
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
