//! The acceptance criteria for the workspace as plain functions.
//!
//! Each criterion returns a verdict carrying a one line explanation. The
//! `acceptance` test target runs them all and prints one line per verdict.

use std::time::Instant;

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use surgeon_core::audit::{self, Ranges, Status, VerificationReport};
use surgeon_core::cusped::{
    enumerate_short_slopes, family_multislope, hk_certify, is_symmetry_breaking, load_manifold_data, multislope_length,
    normalized_length, CuspShape, Multislope, Slope, HK_CONSTANT,
};
use surgeon_core::families::{
    cable_slope, cable_slope_integral, cable_slope_magic, classify_cable, compute_ystar, realizable_as, CableSpaceKind,
    LensFamily,
};
use surgeon_core::lens::{canonicalize, chain_eval, chain_h1_oracle, lens_from_surgery, ChainDescription, Orientation};
use surgeon_core::rational::{cf_eval, cf_expand, cf_zero_absorb, CfWord};
use surgeon_core::{ExtRational, Manifold, ManifoldData, Params};

/// `Ok` carries a summary of what held, `Err` the first counterexample.
pub type Verdict = Result<String, String>;

/// A criterion's short name and its check.
pub type Criterion = (&'static str, fn() -> Verdict);

fn q(n: i128, d: i128) -> ExtRational {
    ExtRational::new(n, d).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn census_reproduction() -> Verdict {
    let start = Instant::now();
    let report = audit::verify_dhl();
    let elapsed = start.elapsed();
    let good: Vec<_> = report
        .rows
        .iter()
        .filter(|r| {
            ["Y", "Y*"]
                .iter()
                .all(|c| r.check(c).is_some_and(|ch| ch.status.is_pass()))
        })
        .collect();
    let bad: Vec<String> = report
        .rows
        .iter()
        .filter(|r| !good.iter().any(|g| g.row == r.row))
        .map(|r| format!("{} [{} | computed {}]", r.row, r.expected(), r.computed()))
        .collect();
    let oriented = report.rows.iter().filter(|r| r.status == Status::PassOriented).count();
    ensure(report.rows.len() == 26 && bad.is_empty(), || {
        format!("{}/26 rows pass; failing: {}", good.len(), bad.join(", "))
    })?;
    ensure(elapsed.as_secs_f64() < 1.0, || format!("took {elapsed:?}"))?;
    Ok(format!("26/26 rows pass ({oriented} oriented) in {elapsed:?}"))
}

/// The quadratic order family of `Y*(-2, 0, -4, b, k)` for a fixed `b`.
pub fn ystar_order_family(b: i128) -> Result<(), String> {
    for k in -20i128..=20 {
        let p = Params::new(q(-2, 1), q(0, 1), q(-4, 1), q(b, 1), k);
        let m = compute_ystar(&p).map_err(|e| format!("k = {k}: {e}"))?;
        let order = 14 * k * k - 6 * k + 3;
        ensure(m.h1_order() == order, || {
            format!("k = {k}: |H1| = {} but 14k²-6k+3 = {order}", m.h1_order())
        })?;
        let claimed = canonicalize(order, -14 * k - 1).map_err(|e| e.to_string())?;
        ensure(m.is_homeomorphic(&claimed, Orientation::Unoriented), || {
            format!("k = {k}: {m} is not L({order}, {})", -14 * k - 1)
        })?;
    }
    let target: Manifold = "L(111,68)".parse().unwrap();
    let at3 = compute_ystar(&Params::new(q(-2, 1), q(0, 1), q(-4, 1), q(b, 1), 3)).map_err(|e| e.to_string())?;
    ensure(at3.is_homeomorphic(&target, Orientation::Unoriented), || {
        format!("k = 3 gives {at3}")
    })?;
    for fam in [LensFamily::F24, LensFamily::F33] {
        let w = realizable_as(&target, fam).map_err(|e| e.to_string())?;
        ensure(w.is_none(), || format!("L(111,68) realized in {fam:?} by {w:?}"))?;
    }
    Ok(())
}

fn quadratic_family() -> Verdict {
    ystar_order_family(-1)?;
    Ok("b = -1 matches 14k²-6k+3 for k in [-20,20]; L(111,68) not realizable".into())
}

fn cable_identity() -> Verdict {
    let x = cable_slope(&q(-1, 1), &q(-2, 1), &-2).map_err(|e| e.to_string())?;
    ensure(x == q(3, 2), || format!("cable_slope(-1,-2,-2) = {x}"))?;
    let kind = classify_cable(&x);
    ensure(kind == CableSpaceKind::TorusKnotExterior { p: 3, qprime: 1 }, || {
        format!("classify(3/2) = {kind}")
    })?;
    for r in -8i128..=8 {
        for k in -8i128..=8 {
            let a = cable_slope_integral(&-1, &r, &k);
            let b = cable_slope_magic(&q(r, 1), &k).map_err(|e| e.to_string())?;
            ensure(a == b, || format!("(r,k) = ({r},{k}): {a} vs {b}"))?;
        }
    }
    Ok("3/2 is the (3,1) torus knot exterior; both formulas agree on [-8,8]²".into())
}

fn head_expansion_regression() -> Verdict {
    let c = ChainDescription::new(vec![q(5, 2), q(4, 1)]);
    let expanded = chain_eval(&c).map_err(|e| e.to_string())?;
    let word = CfWord::new(vec![q(5, 2), q(4, 1)]).unwrap();
    let naive = lens_from_surgery(&cf_eval(&word));
    ensure(expanded.h1_order() == 18, || format!("chain_eval gives {expanded}"))?;
    ensure(naive.h1_order() == 9, || format!("naive value gives {naive}"))?;
    ensure(!expanded.is_homeomorphic(&naive, Orientation::Unoriented), || {
        "naive and expanded agree".into()
    })?;
    Ok(format!("{expanded} has order 18, the naive 9/4 reading gives {naive}"))
}

fn random_suites() -> Verdict {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..1_000 {
        let len = rng.gen_range(1..=8);
        let entries: Vec<i128> = (0..len).map(|_| rng.gen_range(-9..=9)).collect();
        let c = ChainDescription::from_integers(entries.clone());
        let m = chain_eval(&c).map_err(|e| format!("{entries:?}: {e}"))?;
        let oracle = chain_h1_oracle(&c).abs();
        ensure(m.h1_order() == oracle, || {
            format!("{entries:?}: {} vs oracle {oracle}", m.h1_order())
        })?;
    }
    for _ in 0..10_000 {
        let x = q(rng.gen_range(-1_000_000..=1_000_000), rng.gen_range(1..=1_000_000));
        let w = CfWord::from_integers(cf_expand(&x).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(cf_eval(&w) == x, || format!("round trip of {x}"))?;
    }
    for _ in 0..1_000 {
        let mut entries: Vec<i128> = (0..rng.gen_range(2..=7)).map(|_| rng.gen_range(-9..=9)).collect();
        let at = rng.gen_range(1..entries.len());
        entries.insert(at, 0);
        let w = CfWord::from_integers(entries.clone()).unwrap();
        let absorbed = cf_zero_absorb(&w).map_err(|e| format!("{entries:?}: {e}"))?;
        let before = chain_eval(&ChainDescription::from_integers(entries.clone())).map_err(|e| e.to_string())?;
        let after = chain_eval(&ChainDescription::new(absorbed.entries().to_vec())).map_err(|e| e.to_string())?;
        ensure(before == after, || format!("{entries:?}: {before} vs {after}"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed.as_secs() < 30, || format!("took {elapsed:?}"))?;
    Ok(format!("oracle, round trip and zero absorption suites in {elapsed:?}"))
}

fn brute_force(c: &CuspShape<f64>, n: f64) -> Vec<Slope> {
    let bound = (n * (c.mu().norm() + c.lambda().norm()) / c.area().sqrt()).ceil() as i64 + 1;
    let mut out = Vec::new();
    for p in -bound..=bound {
        for qq in -bound..=bound {
            if num_integer::gcd(p, qq) == 1 {
                let s = Slope::new(p, qq).unwrap();
                if normalized_length(&s, c) <= n && !out.contains(&s) {
                    out.push(s);
                }
            }
        }
    }
    out.sort();
    out
}

fn slope_machinery() -> Verdict {
    let mut rng = StdRng::seed_from_u64(7);
    for i in 0..100 {
        let rot = Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
        let mu = rot * rng.gen_range(0.5..3.0);
        let lambda = rot * Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(0.3..3.0));
        let c = CuspShape::new(mu, lambda).map_err(|e| e.to_string())?;
        for n in [1.0, 2.5, HK_CONSTANT] {
            ensure(enumerate_short_slopes(&c, n) == brute_force(&c, n), || {
                format!("shape {i}, N = {n}")
            })?;
        }
    }
    // a cusp on which the slope 1/0 has normalized length exactly `len`
    let long = |len: f64| CuspShape::new(Complex64::new(len * len, 0.0), Complex64::new(0.0, 1.0)).unwrap();
    let ten = long(10.0);
    let meridian = Slope::new(1, 0).unwrap();
    let both = multislope_length(&Multislope(vec![meridian, meridian]), &[ten, ten]).unwrap();
    let want = 10.0 / 2f64.sqrt();
    ensure((both - want).abs() < 1e-10, || format!("(10,10) combine to {both}"))?;
    let at = long(HK_CONSTANT);
    let exact = normalized_length(&meridian, &at);
    ensure(exact == HK_CONSTANT, || format!("threshold cusp has length {exact}"))?;
    let one = Multislope(vec![meridian]);
    ensure(!hk_certify(&one, &[at]).unwrap(), || {
        "length exactly C certified".into()
    })?;
    let above = long(HK_CONSTANT * (1.0 + 1e-12));
    ensure(hk_certify(&one, &[above]).unwrap(), || {
        "length just above C not certified".into()
    })?;
    let below = long(HK_CONSTANT * (1.0 - 1e-12));
    ensure(!hk_certify(&one, &[below]).unwrap(), || {
        "length just below C certified".into()
    })?;
    Ok("enumeration matches brute force on 100 shapes; (10,10) gives 10/√2; threshold strict at 7.5832".into())
}

fn bulk_fixture() -> ManifoldData {
    load_manifold_data(include_str!("../../core/tests/fixtures/bulk-five-cusp.json")).unwrap()
}

fn s_of(n: i128) -> ExtRational {
    if n == 0 {
        ExtRational::infinity()
    } else {
        q(-4 * n + 1, n)
    }
}

/// Pairs `(n, b)` with `1 + (-4 + 1/n) = 1 + 1/b`, slopes compared on the projective line.
pub fn exclusion_set() -> Vec<(i128, i128)> {
    let one = q(1, 1);
    let mut out = Vec::new();
    for n in -10i128..=10 {
        for b in -10i128..=10 {
            if one.checked_add(&s_of(n)).unwrap() == one.checked_add(&q(b, 1).recip()).unwrap() {
                out.push((n, b));
            }
        }
    }
    out
}

fn symmetry_breaking() -> Verdict {
    let data = bulk_fixture();
    let excluded = exclusion_set();
    let mut checked = 0;
    for n in -10i128..=10 {
        let s = s_of(n);
        for b in -10i128..=10 {
            if excluded.contains(&(n, b)) {
                continue;
            }
            let b = if b == 0 { ExtRational::infinity() } else { q(b, 1) };
            for (r, k) in [(-1i128, 2i128), (-2, -3), (0, 1)] {
                let ms = family_multislope(&q(r, 1), &s, &b, k).map_err(|e| e.to_string())?;
                let breaking = is_symmetry_breaking(&ms, &data).map_err(|e| e.to_string())?;
                ensure(breaking, || {
                    format!("n = {n}, b = {b}, r = {r}, k = {k}: {ms} is fixed")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!(
        "{checked} multislopes are symmetry breaking; excluded (n,b) = {excluded:?}"
    ))
}

fn count<'a>(report: &'a VerificationReport, column: &'a str) -> impl Fn(Status) -> usize + 'a {
    move |s| {
        report
            .checks()
            .filter(|(_, c)| c.column == column && c.status == s)
            .count()
    }
}

fn table_audits() -> Verdict {
    let ranges = Ranges::default();
    let load = |id: &str| audit::audit_table(id, &ranges).map_err(|e| e.to_string());
    let table2 = load("table2")?;
    let mut failures = Vec::new();

    let ystar = count(&table2, "Y*");
    if ystar(Status::Mismatch) > 0 {
        failures.push(format!("table2 Y*: {} mismatches", ystar(Status::Mismatch)));
    }
    for id in ["cabledgofk", "cabledgofk2", "table8-magic"] {
        let report = load(id)?;
        let bad: Vec<String> = report
            .checks()
            .filter(|(_, c)| c.status == Status::Mismatch)
            .map(|(r, c)| format!("{} row {} {}", r.table, r.row, c.column))
            .collect();
        if !bad.is_empty() {
            let mut uniq = bad.clone();
            uniq.dedup();
            failures.push(format!("{id}: {} mismatches ({})", bad.len(), uniq.join(", ")));
        }
    }

    // Instantiations with n = 0 or b = 0 put an ∞ slope on the magic
    // manifold, where no Y evaluator applies; every other one must be flagged.
    let row1: Vec<_> = table2.rows.iter().filter(|r| r.row == "1").collect();
    let y_checks = |r: &&surgeon_core::audit::RowRecord| -> Vec<Status> {
        r.checks.iter().filter(|c| c.column == "Y").map(|c| c.status).collect()
    };
    let evaluable: Vec<_> = row1.iter().filter(|r| y_checks(r) != [Status::Unsupported]).collect();
    let undefined_ok = row1
        .iter()
        .filter(|r| y_checks(r) == [Status::Unsupported])
        .all(|r| r.params.contains("n=0 ") || r.params.contains("b=0 "));
    let flagged = evaluable
        .iter()
        .filter(|r| {
            let ys: Vec<_> = r.checks.iter().filter(|c| c.column == "Y").collect();
            ys.len() == 1
                && ys[0].status == Status::Mismatch
                && ys[0].known.as_deref() == Some("table2-row1-Y-suspected-typo")
        })
        .count();
    if flagged != evaluable.len() || !undefined_ok {
        failures.push(format!(
            "table2 row 1 Y flagged on {flagged} of {} evaluable instantiations",
            evaluable.len()
        ));
    }
    let other_y = table2
        .checks()
        .filter(|(r, c)| r.row != "1" && c.column == "Y" && c.status == Status::Mismatch)
        .count();
    if other_y > 0 {
        failures.push(format!("table2 has {other_y} Y mismatches outside row 1"));
    }

    if failures.is_empty() {
        Ok(format!(
            "table2 Y* {} checks pass; row 1 Y flagged once on each of {} evaluable instantiations",
            ystar(Status::PassOriented) + ystar(Status::PassUnoriented),
            evaluable.len()
        ))
    } else {
        Err(failures.join("; "))
    }
}

/// All eight criteria in order, paired with a short name.
pub fn criteria() -> [Criterion; 8] {
    [
        ("census reproduction", census_reproduction),
        ("quadratic Y* family", quadratic_family),
        ("cable identity", cable_identity),
        ("head expansion regression", head_expansion_regression),
        ("randomized suites", random_suites),
        ("short slope machinery", slope_machinery),
        ("symmetry breaking", symmetry_breaking),
        ("table audits", table_audits),
    ]
}
