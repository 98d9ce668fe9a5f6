use std::path::Path;

use anyhow::anyhow;
use green_core::coinvariants::{
    build_omega_unchecked, fake_degrees, fake_degrees_json, ext_json, group_hash, multiplicity_csv, CoinvariantError,
    MolienKernel, OMEGA_SCHEMA,
};
use green_core::files::{read_to_string, write_atomic};
use green_core::springer::load_springer;
use green_core::weyl::{load_datum, WEYL_SCHEMA};
use green_core::{
    block_structure, generate_symmetric_group, generate_type_a, normalize, solve, verify, GradedMultiplicity,
    Normalization, OmegaMatrix, SolutionPair, SpringerDatum, WeylDatum,
};
use green_oracle::{CheckLine, OracleError};
use log::{info, warn};

use crate::args::{Command, Format, Input, Output};
use crate::cache::Cache;
use crate::failure::{Failure, Invalid, Outcome};

pub fn run(command: Command, cache: &Cache) -> Outcome {
    match command {
        Command::GenA { n, out } => gen_a(n, &out, cache),
        Command::Omega { input, output } => omega_cmd(&input, &output, cache),
        Command::Solve {
            input,
            output,
            normalization,
            seed,
        } => solve_cmd(&input, &output, normalization, seed, cache),
        Command::Ext {
            input,
            output,
            chi,
            psi,
        } => ext_cmd(&input, &output, chi.as_deref(), psi.as_deref(), cache),
        Command::FakeDegrees { input, output } => fake_degrees_cmd(&input, &output, cache),
        Command::Verify { solution, omega, input } => verify_cmd(&solution, omega.as_deref(), &input, cache),
        Command::Oracle { n, seeds } => print_checks(green_oracle::oracle_checks(n, &seeds)),
        Command::Check { n } => print_checks(green_oracle::run_check(n)),
    }
}

fn symmetric_group(n: usize, cache: &Cache) -> Outcome<WeylDatum> {
    let key = Cache::key(WEYL_SCHEMA, &["symmetric", &n.to_string()]);
    let valid = |text: &str| WeylDatum::from_json(text).is_ok_and(|w| w.to_json() == text);
    let text = cache.get_or_compute(&key, valid, || generate_symmetric_group(n).map(|w| w.to_json()).invalid())?;
    WeylDatum::from_json(&text).map_err(|e| Failure::Internal(e.into()))
}

fn load_group(input: &Input, cache: &Cache) -> Outcome<WeylDatum> {
    match (input.n, &input.group) {
        (Some(n), _) => symmetric_group(n, cache),
        (None, Some(path)) => load_datum(path).invalid_with(|| format!("group file {}", path.display())),
        (None, None) => Err(Failure::Validation(anyhow!("one of --n or --group is required"))),
    }
}

fn load_springer_for(input: &Input, weyl: &WeylDatum) -> Outcome<SpringerDatum> {
    match (input.n, &input.springer) {
        (Some(n), _) => generate_type_a(n).invalid(),
        (None, Some(path)) => {
            load_springer(path, weyl).invalid_with(|| format!("springer file {}", path.display()))
        }
        (None, None) => Err(Failure::Validation(anyhow!("--springer is required with --group"))),
    }
}

fn check_labels(weyl: &WeylDatum, springer: &SpringerDatum) -> Outcome {
    let labels = weyl.irr_labels();
    if springer.irr_labels() == labels.as_slice() {
        return Ok(());
    }
    Err(CoinvariantError::LabelMismatch {
        weyl: labels,
        springer: springer.irr_labels().to_vec(),
    })
    .invalid()
}

fn cached_omega(weyl: &WeylDatum, cache: &Cache) -> Outcome<OmegaMatrix> {
    let hash = group_hash(weyl);
    let key = Cache::key(OMEGA_SCHEMA, &[&hash]);
    let valid = |text: &str| {
        OmegaMatrix::from_json(text).is_ok_and(|o| o.group_hash == hash && o.to_json() == text)
    };
    let text = cache.get_or_compute(&key, valid, || build_omega_unchecked(weyl).map(|o| o.to_json()).invalid())?;
    OmegaMatrix::from_json(&text).map_err(|e| Failure::Internal(e.into()))
}

fn emit(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(path) => {
            write_atomic(path, text.as_bytes()).invalid()?;
            info!("wrote {}", path.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn unsupported(format: Format, what: &str) -> Failure {
    Failure::Validation(anyhow!("format {format:?} is not available for {what}"))
}

fn gen_a(n: usize, out: &Path, cache: &Cache) -> Outcome {
    let weyl = symmetric_group(n, cache)?;
    let springer = generate_type_a(n).invalid()?;
    let group_path = out.join(format!("s{n}.weyl.json"));
    let springer_path = out.join(format!("s{n}.springer.json"));
    weyl.save(&group_path).invalid()?;
    springer.save(&springer_path).invalid()?;
    println!("{}", group_path.display());
    println!("{}", springer_path.display());
    Ok(())
}

fn omega_cmd(input: &Input, output: &Output, cache: &Cache) -> Outcome {
    let weyl = load_group(input, cache)?;
    if input.n.is_some() || input.springer.is_some() {
        check_labels(&weyl, &load_springer_for(input, &weyl)?)?;
    }
    let omega = cached_omega(&weyl, cache)?;
    let text = match output.format {
        Format::Json => omega.to_json(),
        Format::Csv => omega.entries.labelled_csv("chi", &omega.labels),
        Format::Latex => return Err(unsupported(output.format, "omega")),
    };
    emit(output.out.as_deref(), &text)
}

fn solve_cmd(
    input: &Input,
    output: &Output,
    normalization: Option<Normalization>,
    seed: Option<u64>,
    cache: &Cache,
) -> Outcome {
    let weyl = load_group(input, cache)?;
    let springer = load_springer_for(input, &weyl)?;
    check_labels(&weyl, &springer)?;
    let omega = cached_omega(&weyl, cache)?;
    let pair = solve(&omega, &block_structure(&springer, seed)).invalid()?;
    let report = verify(&pair, &omega);
    if !report.passed() {
        return Err(Failure::Internal(anyhow!("solution does not verify:\n{report}")));
    }
    let target = normalization.unwrap_or(match output.format {
        Format::Json => Normalization::LusztigPlain,
        Format::Csv | Format::Latex => Normalization::DoublePrime,
    });
    let pair = normalize(&pair, target);
    let text = match output.format {
        Format::Json => pair.to_json(),
        Format::Csv => pair.p_csv(),
        Format::Latex => pair.p_latex(),
    };
    emit(output.out.as_deref(), &text)
}

fn label_filter(weyl: &WeylDatum, label: Option<&str>) -> Outcome<Vec<usize>> {
    match label {
        None => Ok((0..weyl.num_irreducibles()).collect()),
        Some(l) => weyl
            .irr_index(l)
            .map(|i| vec![i])
            .ok_or_else(|| Failure::Validation(anyhow!("unknown irreducible {l:?}"))),
    }
}

fn ext_cmd(input: &Input, output: &Output, chi: Option<&str>, psi: Option<&str>, cache: &Cache) -> Outcome {
    let weyl = load_group(input, cache)?;
    let rows_idx = label_filter(&weyl, chi)?;
    let cols_idx = label_filter(&weyl, psi)?;
    let kernel = MolienKernel::new(&weyl).invalid()?;
    let mut rows: Vec<((usize, usize), GradedMultiplicity)> = Vec::new();
    for &i in &rows_idx {
        for &j in &cols_idx {
            let m = kernel.multiplicity(&weyl.product_character(i, j, false)).invalid()?;
            rows.push(((i, j), m));
        }
    }
    let text = match output.format {
        Format::Json => ext_json(&weyl, &rows),
        Format::Csv => {
            let keyed: Vec<(Vec<String>, GradedMultiplicity)> = rows
                .into_iter()
                .map(|((i, j), m)| (vec![weyl.irreducibles[i].label.clone(), weyl.irreducibles[j].label.clone()], m))
                .collect();
            multiplicity_csv(&["chi", "psi"], &keyed, weyl.flag_dim())
        }
        Format::Latex => return Err(unsupported(output.format, "ext")),
    };
    emit(output.out.as_deref(), &text)
}

fn fake_degrees_cmd(input: &Input, output: &Output, cache: &Cache) -> Outcome {
    let weyl = load_group(input, cache)?;
    let table = fake_degrees(&weyl).invalid()?;
    let text = match output.format {
        Format::Json => fake_degrees_json(&weyl, &table),
        Format::Csv => {
            let keyed: Vec<(Vec<String>, GradedMultiplicity)> = weyl
                .irreducibles
                .iter()
                .zip(table)
                .map(|(c, m)| (vec![c.label.clone()], m))
                .collect();
            multiplicity_csv(&["chi"], &keyed, weyl.flag_dim())
        }
        Format::Latex => {
            let mut out = String::from("\\begin{tabular}{l|l}\n$\\chi$ & $F_\\chi(t)$ \\\\\n\\hline\n");
            for (c, m) in weyl.irreducibles.iter().zip(&table) {
                out.push_str(&format!("${}$ & ${}$ \\\\\n", c.label, m.poly().to_latex()));
            }
            out.push_str("\\end{tabular}\n");
            out
        }
    };
    emit(output.out.as_deref(), &text)
}

fn verify_cmd(solution: &Path, omega_path: Option<&Path>, input: &Input, cache: &Cache) -> Outcome {
    let text = read_to_string(solution).invalid()?;
    let pair = SolutionPair::from_json(&text).invalid_with(|| format!("solution file {}", solution.display()))?;
    let omega = match omega_path {
        Some(path) => {
            let text = read_to_string(path).invalid()?;
            OmegaMatrix::from_json(&text).invalid_with(|| format!("omega file {}", path.display()))?
        }
        None => cached_omega(&load_group(input, cache)?, cache)?,
    };
    if pair.omega_hash != omega.content_hash() {
        warn!("solution was computed from a different omega ({})", pair.omega_hash);
    }
    let report = verify(&pair, &omega);
    print!("{report}");
    if report.passed() {
        Ok(())
    } else {
        let failed: Vec<&str> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
        Err(Failure::Validation(anyhow!("failed checks: {}", failed.join(", "))))
    }
}

fn print_checks(lines: Result<Vec<CheckLine>, OracleError>) -> Outcome {
    let lines = lines.map_err(|e| match e {
        OracleError::BoundExceeded { .. } | OracleError::TooFewSeeds(_) | OracleError::Datum(_) => {
            Failure::Validation(e.into())
        }
        other => Failure::Internal(other.into()),
    })?;
    for line in &lines {
        println!("{line}");
    }
    let failed: Vec<&str> = lines.iter().filter(|l| !l.passed).map(|l| l.name.as_str()).collect();
    if failed.is_empty() {
        println!("all {} checks passed", lines.len());
        Ok(())
    } else {
        Err(Failure::Internal(anyhow!("failed checks: {}", failed.join(", "))))
    }
}
