//! Acceptance gate for the engine: eight criteria, each printed as one
//! pass/fail line.  Run with `cargo test --test acceptance -- --nocapture`
//! to see the lines on a passing build.

mod common;

use std::time::{Duration, Instant};

use motzeta::elliptic::KodairaType;
use motzeta::gring::{chi_top, poincare, AbelianClassSymbol, GRingElement};
use motzeta::jumps::ReductionProfile;
use motzeta::monodromy::{self, IntPolynomial};
use motzeta::zeta;
use motzeta::Frac;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

type Criterion = fn() -> Result<String, String>;

#[test]
fn acceptance_criteria() {
    let mut failures: Vec<String> = Vec::new();
    let criteria: [(&str, Criterion); 8] = [
        ("criterion 1 (closed form = series)", criterion_oracle),
        ("criterion 2 (unique pole at the conductor)", criterion_pole),
        ("criterion 3 (degree contract)", criterion_degree),
        ("criterion 4 (order function identities)", criterion_ord),
        ("criterion 5 (monodromy polynomial structure)", criterion_monodromy),
        ("criterion 6 (trace-formula identity)", criterion_chi),
        ("criterion 7 (Kodaira table cross-validation)", criterion_table),
        ("criterion 8 (value-ring specialisations)", criterion_gring),
    ];
    for (name, body) in criteria {
        let start = Instant::now();
        match body() {
            Ok(detail) => println!("[PASS] {name}: {detail} ({:.1?})", start.elapsed()),
            Err(reason) => {
                println!("[FAIL] {name}: {reason}");
                failures.push(format!("{name}: {reason}"));
            }
        }
    }
    assert!(
        failures.is_empty(),
        "failed acceptance criteria:\n{}",
        failures.join("\n")
    );
}

fn ensure(cond: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(message())
    }
}

/// All Kodaira types (several multiplicities for the `n`-indexed
/// families) paired with every tame residue characteristic in
/// `{1, 2, 3, 5, 7}`.
fn battery() -> Vec<(KodairaType, u64)> {
    let mut types = vec![
        KodairaType::II,
        KodairaType::III,
        KodairaType::IV,
        KodairaType::IVStar,
        KodairaType::IIIStar,
        KodairaType::IIStar,
    ];
    for n in [0, 1, 2, 5] {
        types.push(KodairaType::I(n));
        types.push(KodairaType::IStar(n));
    }
    let mut out = Vec::new();
    for ty in types {
        for p in [1u64, 2, 3, 5, 7] {
            if ty.tame(p) {
                out.push((ty.clone(), p));
            }
        }
    }
    out
}

/// Battery profiles at a generous series order, plus 200 seeded random
/// profiles; shared by criteria 1–3.
fn oracle_cases() -> Result<Vec<(String, ReductionProfile, u64)>, String> {
    let mut cases = Vec::new();
    for (ty, p) in battery() {
        let profile = ty.profile(p).map_err(|e| format!("{ty}, p = {p}: {e}"))?;
        let e = profile.spectrum().semiabelian_degree();
        let n = 200u64.max(6 * e * p.max(2));
        cases.push((format!("{ty} p={p}"), profile, n));
    }
    let mut rng = common::rng(0xACCE5501);
    for i in 0..200 {
        let profile = common::random_profile(&mut rng, 3);
        cases.push((format!("random #{i}"), profile, 200));
    }
    Ok(cases)
}

fn criterion_oracle() -> Result<String, String> {
    let start = Instant::now();
    let cases = oracle_cases()?;
    let total = cases.len();
    for (label, profile, n) in cases {
        let closed = zeta::closed_form(&profile).map_err(|e| format!("{label}: {e}"))?;
        let direct = zeta::series(&profile, n).map_err(|e| format!("{label}: {e}"))?;
        ensure(direct == closed.expand(n), || {
            format!("{label}: closed form disagrees with the direct series below order {n}")
        })?;
    }
    ensure(start.elapsed() < Duration::from_secs(60), || {
        format!("runtime bound exceeded: {:.1?}", start.elapsed())
    })?;
    Ok(format!("{total} profiles agree to order >= 200"))
}

fn criterion_pole() -> Result<String, String> {
    let cases = oracle_cases()?;
    let total = cases.len();
    for (label, profile, _) in cases {
        let z = zeta::closed_form(&profile).map_err(|e| format!("{label}: {e}"))?;
        let c = profile.spectrum().conductor();
        let t_pot = profile.potential_toric_rank();
        let report = z
            .pole_analysis(c)
            .map_err(|e| format!("{label}: pole analysis failed: {e}"))?;
        let expected_sign: i8 = if (t_pot + 1) % 2 == 0 { 1 } else { -1 };
        ensure(report.order == t_pot + 1, || {
            format!(
                "{label}: pole order {} at c = {c}, expected {}",
                report.order,
                t_pot + 1
            )
        })?;
        ensure(report.unique, || format!("{label}: pole at c = {c} is not unique"))?;
        ensure(report.residue_leading_sign == expected_sign, || {
            format!(
                "{label}: residue leading sign {} differs from (-1)^(t+1) = {expected_sign}",
                report.residue_leading_sign
            )
        })?;
    }
    Ok(format!(
        "unique pole at T = L^-c of order t(e)+1 with residue sign (-1)^(t(e)+1) on {total} profiles"
    ))
}

fn criterion_degree() -> Result<String, String> {
    let cases = oracle_cases()?;
    let total = cases.len();
    for (label, profile, _) in cases {
        let z = zeta::closed_form(&profile).map_err(|e| format!("{label}: {e}"))?;
        let degree = z.degree();
        let p = profile.spectrum().p();
        let expected_zero = p == 1 && profile.potential_toric_rank() == 0;
        ensure(degree <= 0, || format!("{label}: positive degree {degree}"))?;
        ensure((degree == 0) == expected_zero, || {
            format!(
                "{label}: degree {degree} but vanishing expected only when p = 1 and \
                 potentially good (here {expected_zero})"
            )
        })?;
    }
    Ok(format!(
        "degree <= 0 on {total} profiles, vanishing exactly for p = 1 with potential good reduction"
    ))
}

fn criterion_ord() -> Result<String, String> {
    let start = Instant::now();
    let mut rng = common::rng(0xACCE5504);
    let spectra = 500;
    for i in 0..spectra {
        let s = common::random_raw_spectrum(&mut rng, 4);
        let label = format!("spectrum #{i}");
        let e = s.semiabelian_degree();
        let c = s.conductor();
        let ce = c * Frac::from(e as i64);
        ensure(ce.is_integer(), || {
            format!("{label}: conductor {c} not integral on the lattice 1/{e}")
        })?;
        let ce = ce.to_integer() as u64;
        for d in 1..=(2 * e) {
            let ord_d = s.ord(d).map_err(|err| format!("{label}: {err}"))?;
            // periodicity: ord(d + q·e) = ord(d) + q·c·e
            for q in 1..=5u64 {
                let shifted = s.ord(d + q * e).map_err(|err| format!("{label}: {err}"))?;
                ensure(shifted == ord_d + q * ce, || {
                    format!(
                        "{label}: ord({}) = {shifted}, expected ord({d}) + {q}*{ce}",
                        d + q * e
                    )
                })?;
            }
            // bound: ord(d) <= c·d, with equality exactly at multiples of e
            let bound = c * Frac::from(d as i64);
            let ord_frac = Frac::from(ord_d as i64);
            ensure(ord_frac <= bound, || {
                format!("{label}: ord({d}) = {ord_d} exceeds c*d = {bound}")
            })?;
            ensure((ord_frac == bound) == (d % e == 0), || {
                format!("{label}: ord({d}) attains c*d = {bound} off the e-lattice")
            })?;
            // the unipotent rank is e-periodic and vanishes on the lattice
            ensure(s.unipotent_rank(d) == s.unipotent_rank(d + e), || {
                format!("{label}: unipotent rank not {e}-periodic at d = {d}")
            })?;
        }
        ensure(s.unipotent_rank(e) == 0, || {
            format!("{label}: unipotent rank at d = e = {e} is nonzero")
        })?;
    }
    ensure(start.elapsed() < Duration::from_secs(30), || {
        format!("runtime bound exceeded: {:.1?}", start.elapsed())
    })?;
    Ok(format!("staircase identities hold on {spectra} random spectra"))
}

fn criterion_monodromy() -> Result<String, String> {
    let mut spectra = Vec::new();
    for (ty, p) in battery() {
        let profile = ty.profile(p).map_err(|e| format!("{ty}: {e}"))?;
        spectra.push((format!("{ty} p={p}"), profile.spectrum().clone()));
    }
    let mut rng = common::rng(0xACCE5505);
    for i in 0..60 {
        spectra.push((format!("random #{i}"), common::random_stable_spectrum(&mut rng, 4)));
    }
    let total = spectra.len();
    for (label, s) in spectra {
        let g = s.g();
        let e = s.semiabelian_degree();
        let roots = monodromy::eigen_exponents(&s).map_err(|e| format!("{label}: {e}"))?;
        let poly = monodromy::monodromy_char_poly(&s).map_err(|e| format!("{label}: {e}"))?;
        ensure(poly.degree() == Some(2 * g as usize), || {
            format!("{label}: characteristic polynomial degree {:?}", poly.degree())
        })?;
        // the cyclotomic factorisation rebuilds the polynomial, and all
        // eigenvalue orders divide e
        let mut rebuilt = IntPolynomial::one();
        for (order, multiplicity) in roots.orbits() {
            ensure(e % order == 0, || {
                format!("{label}: eigenvalue order {order} does not divide e = {e}")
            })?;
            rebuilt = &rebuilt * &monodromy::cyclotomic(order).pow(multiplicity as u32);
        }
        ensure(rebuilt == poly, || {
            format!("{label}: cyclotomic factorisation does not rebuild the char poly")
        })?;
        for (check, name) in [
            (monodromy::check_jump_divisor(&s), "jump divisor"),
            (monodromy::check_hg_cyclotomic(&s), "H^g cyclotomic"),
            (monodromy::check_multiplicity_bound(&s), "multiplicity bound"),
        ] {
            let ok = check.map_err(|e| format!("{label}: {name}: {e}"))?;
            ensure(ok, || format!("{label}: {name} check failed"))?;
        }
        // exterior powers stay integral with binomial degrees
        for i in 0..=(2 * g) {
            let ext = monodromy::exterior_char_poly(&roots, i)
                .map_err(|e| format!("{label}: exterior power {i}: {e}"))?;
            let expected = binomial(2 * g as u64, i as u64) as usize;
            ensure(ext.degree() == Some(expected), || {
                format!(
                    "{label}: exterior power {i} has degree {:?}, expected {expected}",
                    ext.degree()
                )
            })?;
        }
    }
    Ok(format!("cyclotomic structure verified on {total} spectra"))
}

fn binomial(n: u64, k: u64) -> u64 {
    num_integer::binomial(n, k)
}

fn criterion_chi() -> Result<String, String> {
    for (ty, p) in battery() {
        let profile = ty.profile(p).map_err(|e| format!("{ty}: {e}"))?;
        let report =
            zeta::chi_identity_check(&profile, 100).map_err(|e| format!("{ty} p={p}: {e}"))?;
        ensure(report.passed(), || {
            let first = &report.failures[0];
            format!(
                "{ty} p={p}: chi = {} but trace = {} at d = {}",
                first.chi, first.trace, first.d
            )
        })?;
    }
    // frozen cycle for the jump 1/6: Euler characteristics follow the
    // twist component counts 1, 3, 4, 3, 1 and vanish on the 6-lattice
    let profile = KodairaType::II.profile(1).map_err(|e| e.to_string())?;
    let series = zeta::closed_form(&profile)
        .map_err(|e| e.to_string())?
        .expand(24);
    let cycle: [i64; 6] = [1, 3, 4, 3, 1, 0];
    for d in 1..=24u64 {
        let expected = BigInt::from(cycle[((d - 1) % 6) as usize]);
        let got = chi_top(&series.coefficient(d));
        ensure(got == expected, || {
            format!("frozen cycle: chi at d = {d} is {got}, expected {expected}")
        })?;
    }
    Ok(format!(
        "Euler characteristics equal alternating traces to order 100 on {} profiles",
        battery().len()
    ))
}

fn criterion_table() -> Result<String, String> {
    let battery = battery();
    let total = battery.len();
    for (ty, p) in battery {
        let profile = ty.profile(p).map_err(|e| format!("{ty}: {e}"))?;
        let engine = zeta::closed_form(&profile).map_err(|e| format!("{ty} p={p}: {e}"))?;
        let table = ty
            .zeta_closed_form(p)
            .map_err(|e| format!("{ty} p={p}: {e}"))?;
        ensure(table.equivalent(&engine), || {
            format!("{ty} p={p}: table zeta differs from the generic engine")
        })?;
        let n = 3 * ty.semiabelian_degree() * p.max(2);
        ensure(table.expand(n) == engine.expand(n), || {
            format!("{ty} p={p}: table and engine expansions differ below order {n}")
        })?;
        // table oracles: component group at d = 1, conductor = jump
        let fibre = profile.profile_at(1).map_err(|e| format!("{ty}: {e}"))?;
        ensure(fibre.components == ty.component_group_order(), || {
            format!(
                "{ty}: component count {} at d = 1, table says {}",
                fibre.components,
                ty.component_group_order()
            )
        })?;
        ensure(profile.spectrum().conductor() == ty.jump(), || {
            format!("{ty}: conductor differs from the tabulated jump")
        })?;
        // multiplicative families scale their component count linearly
        if let KodairaType::I(n @ 1..) = ty {
            for d in [1u64, 2, 3, 7] {
                if d % p.max(1) == 0 && p > 1 {
                    continue;
                }
                let fibre = profile.profile_at(d).map_err(|e| format!("I{n}: {e}"))?;
                ensure(fibre.components == n * d, || {
                    format!("I{n}: {} components after base change {d}", fibre.components)
                })?;
            }
        }
    }
    Ok(format!("table and engine agree on {total} type/characteristic pairs"))
}

fn random_element(rng: &mut ChaCha8Rng, symbols: &[AbelianClassSymbol]) -> GRingElement {
    let mut x = GRingElement::zero();
    for _ in 0..rng.random_range(1..=4usize) {
        let mut term = GRingElement::from_int(rng.random_range(-9..=9i64));
        term = term * GRingElement::lefschetz_pow(rng.random_range(-3..=5i64));
        for sym in symbols {
            let power = rng.random_range(0..=2u32);
            if power > 0 {
                term = term * GRingElement::class_of(sym).pow(power);
            }
        }
        x = x + term;
    }
    x
}

fn criterion_gring() -> Result<String, String> {
    let symbols = [
        AbelianClassSymbol::new("A", 1),
        AbelianClassSymbol::new("B", 2),
        AbelianClassSymbol::new("C", 1),
    ];
    let mut rng = common::rng(0xACCE5508);
    let minus_one = BigRational::from_integer(BigInt::from(-1));
    let pairs = 500;
    for i in 0..pairs {
        let x = random_element(&mut rng, &symbols);
        let y = random_element(&mut rng, &symbols);
        let label = format!("pair #{i}");
        // the Poincaré specialisation is a ring homomorphism ...
        let px = poincare(&x, 1);
        let py = poincare(&y, 1);
        ensure(poincare(&(&x * &y), 1) == &px * &py, || {
            format!("{label}: specialisation is not multiplicative")
        })?;
        ensure(poincare(&(&x + &y), 1) == &px + &py, || {
            format!("{label}: specialisation is not additive")
        })?;
        // ... independent of the exponent lattice ...
        ensure(poincare(&x, 3) == px, || {
            format!("{label}: specialisation depends on the lattice")
        })?;
        // ... and interpolates the Euler characteristic at u = -1
        let chi = chi_top(&x);
        let value = px
            .eval_at_u(&minus_one)
            .ok_or_else(|| format!("{label}: specialisation not evaluable at u = -1"))?;
        ensure(value == BigRational::from_integer(chi.clone()), || {
            format!("{label}: P(-1) = {value} but chi = {chi}")
        })?;
        ensure(chi_top(&(&x * &y)) == chi.clone() * chi_top(&y), || {
            format!("{label}: Euler characteristic is not multiplicative")
        })?;
        // sanity: zero maps to zero
        if x.is_zero() {
            ensure(px.is_zero(), || format!("{label}: zero does not specialise to zero"))?;
        }
    }
    Ok(format!(
        "Poincaré and Euler specialisations verified on {} random ring elements",
        2 * pairs
    ))
}
