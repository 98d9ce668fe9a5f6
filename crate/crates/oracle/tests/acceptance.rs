//! End-to-end acceptance checks. Runs without the libtest harness so that
//! one PASS/FAIL line per criterion is always printed; exits non-zero if
//! any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use green_core::coinvariants::{complementary_degree_check, ext_dimension_table, fake_degrees};
use green_core::solver::{CHECK_LAMBDA_SUPPORT, CHECK_P_DIAGONAL, CHECK_P_SUPPORT, CHECK_RESIDUAL};
use green_core::{
    block_structure, build_omega, generate_symmetric_group, generate_type_a, solve, verify, LaurentPoly, OmegaMatrix,
    SolutionPair, SolveError, SpringerDatum, WeylDatum,
};
use green_oracle::{coinvariant_expand, kostka_bridge, uniqueness_harness, BridgeConvention};
use num_traits::{Signed, Zero};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

struct Setup {
    weyl: WeylDatum,
    springer: SpringerDatum,
    omega: OmegaMatrix,
    pair: SolutionPair,
}

fn setup(n: usize) -> Result<Setup, String> {
    let weyl = generate_symmetric_group(n).map_err(|e| e.to_string())?;
    let springer = generate_type_a(n).map_err(|e| e.to_string())?;
    let omega = build_omega(&weyl, &springer).map_err(|e| e.to_string())?;
    let pair = solve(&omega, &block_structure(&springer, None)).map_err(|e| e.to_string())?;
    Ok(Setup {
        weyl,
        springer,
        omega,
        pair,
    })
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn exact_factorization() -> Outcome {
    let mut times = Vec::new();
    for n in 2..=6 {
        let start = Instant::now();
        let s = setup(n)?;
        let report = verify(&s.pair, &s.omega);
        let elapsed = start.elapsed();
        let residual = report.check(CHECK_RESIDUAL).ok_or("no residual check")?;
        ensure(residual.passed, || format!("n = {n}: {}", residual.details.join("; ")))?;
        let zero = report.residual.as_ref().is_some_and(|r| r.is_zero());
        ensure(zero, || format!("n = {n}: residual matrix is not zero"))?;
        ensure(elapsed < Duration::from_secs(10), || format!("n = {n} took {elapsed:?}"))?;
        times.push(format!("n={n} {:.2}s", elapsed.as_secs_f64()));
    }
    Ok(times.join(", "))
}

fn s2_fixture() -> Outcome {
    let s = setup(2)?;
    ensure(s.omega.labels == ["(1,1)", "(2)"], || format!("labels {:?}", s.omega.labels))?;
    let json = |m: &green_core::Matrix<LaurentPoly>| serde_json::to_string(m).unwrap();
    let expected = [
        ("omega", json(&s.omega.entries), r#"[[[[-2,"1","1"]],[[-4,"1","1"]]],[[[-4,"1","1"]],[[-2,"1","1"]]]]"#),
        ("P", json(&s.pair.p), r#"[[[[0,"1","1"]],[]],[[[-2,"1","1"]],[[-2,"1","1"]]]]"#),
        (
            "Lambda",
            json(&s.pair.lambda),
            r#"[[[[-2,"1","1"]],[]],[[],[[-2,"-1","1"],[2,"1","1"]]]]"#,
        ),
    ];
    for (name, got, want) in expected {
        ensure(got == want, || format!("{name}: {got} != {want}"))?;
    }
    let shown: Vec<String> = s.pair.lambda.entries().map(|(_, p)| p.to_string()).collect();
    ensure(shown == ["t^-1", "0", "0", "t - t^-1"], || format!("Lambda renders as {shown:?}"))?;
    Ok("Omega, P and Lambda match byte for byte".into())
}

fn support_and_diagonal() -> Outcome {
    for n in 2..=6 {
        let s = setup(n)?;
        let report = verify(&s.pair, &s.omega);
        for name in [CHECK_P_DIAGONAL, CHECK_P_SUPPORT, CHECK_LAMBDA_SUPPORT] {
            let c = report.check(name).ok_or_else(|| format!("missing {name}"))?;
            ensure(c.passed, || format!("n = {n} {name}: {}", c.details.join("; ")))?;
        }
        // independent restatement against the Springer datum
        let k = s.pair.labels.len();
        for chi in 0..k {
            let o_chi = s.springer.support_of(chi);
            for psi in 0..k {
                let o_psi = s.springer.support_of(psi);
                let p = &s.pair.p[(chi, psi)];
                let l = &s.pair.lambda[(chi, psi)];
                if chi == psi {
                    let expected = LaurentPoly::s_pow(-(s.springer.orbit_dim(o_chi) as i64));
                    ensure(*p == expected, || format!("n = {n}: P[{chi},{chi}] = {p}"))?;
                } else if o_chi == o_psi || !s.springer.leq(o_psi, o_chi) {
                    ensure(p.is_zero(), || format!("n = {n}: P[{chi},{psi}] = {p} outside support"))?;
                }
                if o_chi != o_psi {
                    ensure(l.is_zero(), || format!("n = {n}: Lambda[{chi},{psi}] = {l}"))?;
                }
            }
        }
    }
    Ok("n = 2..6".into())
}

fn positivity() -> Outcome {
    let mut entries = 0;
    for n in 2..=6 {
        let s = setup(n)?;
        for (_, p) in s.pair.p.entries() {
            let ok = p
                .terms()
                .all(|(e, c)| e <= 0 && e % 2 == 0 && c.is_integer() && !c.is_negative());
            ensure(ok, || format!("n = {n}: entry {p} is not in N[t^-1]"))?;
            entries += 1;
        }
    }
    Ok(format!("{entries} entries of P in N[t^-1] for n = 2..6"))
}

fn uniqueness() -> Outcome {
    let s = setup(6)?;
    let seeds = [1, 2, 3, 4, 5];
    let report = uniqueness_harness(&s.omega, &s.springer, &seeds).map_err(|e| e.to_string())?;
    ensure(report.identical(), || format!("mismatches {:?}, errors {:?}", report.mismatches, report.errors))?;
    let distinct = report.distinct_orders();
    ensure(distinct >= 2, || "all seeds chose the same linear extension".into())?;
    let baseline = solve(&s.omega, &block_structure(&s.springer, None)).map_err(|e| e.to_string())?;
    ensure(baseline == s.pair, || "deterministic order disagrees".into())?;
    Ok(format!("{} seeds, {distinct} distinct block orders, identical (P, Lambda)", seeds.len()))
}

fn kostka_foulkes_bridge() -> Outcome {
    for n in 2..=5 {
        let mismatches = kostka_bridge(n, BridgeConvention::Identity).map_err(|e| e.to_string())?;
        ensure(mismatches.is_empty(), || format!("n = {n}: {}", mismatches[0]))?;
    }
    Ok("identity convention, n = 2..5".into())
}

fn molien_vs_brute_force() -> Outcome {
    for n in 2..=5 {
        let weyl = generate_symmetric_group(n).map_err(|e| e.to_string())?;
        let molien = fake_degrees(&weyl).map_err(|e| e.to_string())?;
        let brute = coinvariant_expand(n, usize::MAX).map_err(|e| e.to_string())?;
        for (i, chi) in weyl.irreducibles.iter().enumerate() {
            ensure(*molien[i].poly() == brute.multiplicities[i], || {
                format!("n = {n} {}: {} vs {}", chi.label, molien[i], brute.multiplicities[i])
            })?;
        }
    }
    let weyl = generate_symmetric_group(3).map_err(|e| e.to_string())?;
    let table = fake_degrees(&weyl).map_err(|e| e.to_string())?;
    let by_label = |l: &str| table[weyl.irr_index(l).unwrap()].poly().clone();
    let expected = [
        ("(3)", LaurentPoly::one()),
        ("(2,1)", LaurentPoly::from_t_ints(&[(1, 1), (2, 1)])),
        ("(1,1,1)", LaurentPoly::from_t_ints(&[(3, 1)])),
    ];
    for (label, want) in expected {
        let got = by_label(label);
        ensure(got == want, || format!("S3 fake degree of {label} is {got}"))?;
    }
    Ok("n = 2..5 agree; S3 fake degrees are (1, t + t^2, t^3)".into())
}

fn ext_contracts() -> Outcome {
    let mut pairs = 0;
    for n in 2..=5 {
        let weyl = generate_symmetric_group(n).map_err(|e| e.to_string())?;
        for (i, chi) in weyl.irreducibles.iter().enumerate() {
            for (j, psi) in weyl.irreducibles.iter().enumerate() {
                let ext = ext_dimension_table(&weyl, i, j).map_err(|e| e.to_string())?;
                let delta = i64::from(i == j);
                let at = format!("n = {n} ({}, {})", chi.label, psi.label);
                ensure(ext.coeff_t(0) == delta.into(), || format!("{at}: degree 0 is {}", ext.coeff_t(0)))?;
                ensure(ext.poly().is_integral_in_t(), || format!("{at}: odd degree in {ext}"))?;
                let total = ext.value_at_one();
                ensure(total == (chi.dim * psi.dim).into(), || format!("{at}: total {total}"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs for n = 2..5"))
}

fn complementary_degrees() -> Outcome {
    let mut count = 0;
    for n in 2..=6 {
        let weyl = generate_symmetric_group(n).map_err(|e| e.to_string())?;
        for (i, chi) in weyl.irreducibles.iter().enumerate() {
            let ok = complementary_degree_check(&weyl, i).map_err(|e| e.to_string())?;
            ensure(ok, || format!("n = {n}: {}", chi.label))?;
            count += 1;
        }
    }
    Ok(format!("{count} irreducibles for n = 2..6"))
}

fn fault_injection() -> Outcome {
    let s = setup(4)?;
    let bump = LaurentPoly::t_pow(-1);
    let mut found = Vec::new();

    // one entry perturbed
    let mut one = s.omega.clone();
    one.entries[(3, 1)] = &one.entries[(3, 1)] + &bump;
    match solve(&one, &s.pair.blocks) {
        Err(e @ SolveError::AsymmetricOmega { .. }) => found.push(format!("single entry: {e}")),
        other => return Err(format!("single perturbed entry gave {other:?}")),
    }

    // the same entry perturbed symmetrically: any solution must disagree
    // with the genuine Ω
    let mut sym = one.clone();
    sym.entries[(1, 3)] = sym.entries[(3, 1)].clone();
    match solve(&sym, &s.pair.blocks) {
        Err(e) => found.push(format!("symmetric pair: {e}")),
        Ok(bad) => {
            let report = verify(&bad, &s.omega);
            let residual = report.check(CHECK_RESIDUAL).ok_or("no residual check")?;
            ensure(!residual.passed, || "perturbed Omega solved to a table that verifies".into())?;
            found.push("symmetric pair: residual_zero fails against the genuine Omega".into());
        }
    }

    // a stale solution checked against perturbed data
    let report = verify(&s.pair, &sym);
    ensure(!report.passed(), || "stale solution verified against perturbed Omega".into())?;

    // coarsened closure order
    let coarse = s
        .springer
        .without_cover("(3,1)", "(2,2)", &s.weyl)
        .ok_or("cover (3,1) > (2,2) not found")?;
    let omega = build_omega(&s.weyl, &coarse).map_err(|e| e.to_string())?;
    match solve(&omega, &block_structure(&coarse, None)) {
        Err(e @ SolveError::InconsistentSupport { .. }) => found.push(format!("coarsened order: {e}")),
        other => return Err(format!("coarsened order gave {other:?}")),
    }
    Ok(found.join(" | "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("exact factorization", exact_factorization),
        ("S2 closed-form fixture", s2_fixture),
        ("support and diagonal contracts", support_and_diagonal),
        ("positivity of P", positivity),
        ("uniqueness across linear extensions", uniqueness),
        ("Kostka-Foulkes bridge", kostka_foulkes_bridge),
        ("Molien series vs brute force", molien_vs_brute_force),
        ("Ext contracts", ext_contracts),
        ("complementary degrees", complementary_degrees),
        ("fault injection", fault_injection),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {detail}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
