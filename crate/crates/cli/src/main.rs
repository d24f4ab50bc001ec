//! Command-line front end: scheme validation, groupoid enumeration,
//! Duflo posets, coideal censuses and oracle verification as reproducible
//! batch runs.
//!
//! Exit codes: 0 success, 1 domain limit (not i-finite, not finite within
//! bounds), 2 verification failure, 3 input or I/O error.

use clap::{Parser, Subcommand};
use coideal_core::braiding::BraidingError;
use coideal_core::census::{census, kharchenko_count, CensusError};
use coideal_core::duflo::{build_poset, DufloError};
use coideal_core::groupoid::{
    check_coxeter_relations, check_root_system, enumerate_groupoid, is_finite, real_root_sets,
    ComponentVerdict, GroupoidError,
};
use coideal_core::io::{
    census_report, groupoid_report, parse_scheme_json, parse_scheme_toml, scheme_from_document,
    to_canonical_json, InputError, RootSetJson,
};
use coideal_core::oracle::{
    cartan_entry_via_adjoint, commutator_check, verify_coideal, OracleConfig, OracleError,
    GUARD_GENERIC_VALUE,
};
use coideal_core::scheme::{CartanScheme, SchemeError};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "coideal",
    version,
    about = "Weyl groupoids, the Duflo order, and coideal censuses of diagonal Nichols algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads for parallel-capable stages (results are
    /// scheduling-independent)
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Word-length bound for groupoid enumeration
    #[arg(long, global = true, default_value_t = 24)]
    max_length: usize,
    /// Object bound for reflection closure
    #[arg(long, global = true, default_value_t = 10_000)]
    max_objects: usize,
    /// Exponent bound for Cartan entries (i-finiteness detection)
    #[arg(long, global = true, default_value_t = 8)]
    exponent_bound: u64,
    /// Total-degree cap for Hilbert truncations and the oracle
    #[arg(long, global = true, default_value_t = 8)]
    cap: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Scheme-level validation
    Scheme {
        #[command(subcommand)]
        action: SchemeAction,
    },
    /// Real roots of one object
    Roots {
        #[arg(long)]
        input: PathBuf,
        /// Object label; defaults to the first object
        #[arg(long)]
        object: Option<u32>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Enumerate the Weyl groupoid and report finiteness
    Groupoid {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Right Duflo order poset of Homto(X)
    Duflo {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        object: Option<u32>,
        /// Write the Hasse diagram as DOT
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Coideal census indexed by groupoid morphisms
    Census {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        object: Option<u32>,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Brute-force oracle checks
    Oracle {
        #[command(subcommand)]
        action: OracleAction,
    },
}

#[derive(Subcommand)]
enum SchemeAction {
    /// Validate axioms (C1),(C2); with --root-system also (R1)-(R4) and
    /// the Coxeter relations on the real roots
    Check {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        root_system: bool,
    },
}

#[derive(Subcommand)]
enum OracleAction {
    /// Verify every census record against the shuffle realization
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        object: Option<u32>,
        /// Also write the census as JSON
        #[arg(long)]
        census: Option<PathBuf>,
        /// Rational specialization for generic q
        #[arg(long, default_value_t = 2)]
        generic_value: i64,
        /// Re-run at the second rational as a specialization guard
        #[arg(long)]
        guard: bool,
    },
}

enum CliError {
    Domain(String),
    Verification(String),
    Input(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Verification(_) => 2,
            CliError::Input(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Domain(m) | CliError::Verification(m) | CliError::Input(m) => m,
        }
    }
}

impl From<InputError> for CliError {
    fn from(e: InputError) -> Self {
        match e {
            InputError::Scheme(ref s) => match s {
                SchemeError::NotIFinite { .. } | SchemeError::TooManyObjects { .. } => {
                    CliError::Domain(e.to_string())
                }
                SchemeError::AxiomC1Violation { .. } | SchemeError::AxiomC2Violation { .. } => {
                    CliError::Verification(e.to_string())
                }
                _ => CliError::Input(e.to_string()),
            },
            InputError::Braiding(BraidingError::BoundExceeded { .. }) => {
                CliError::Domain(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<GroupoidError> for CliError {
    fn from(e: GroupoidError) -> Self {
        match e {
            GroupoidError::LengthBoundExceeded { .. } | GroupoidError::NotFinite => {
                CliError::Domain(e.to_string())
            }
            GroupoidError::UnknownObject { .. } => CliError::Input(e.to_string()),
        }
    }
}

impl From<DufloError> for CliError {
    fn from(e: DufloError) -> Self {
        match e {
            DufloError::NotFinite => CliError::Domain(e.to_string()),
            DufloError::HasseMismatch | DufloError::NotAPartialOrder => {
                CliError::Verification(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<CensusError> for CliError {
    fn from(e: CensusError) -> Self {
        match e {
            CensusError::NotFinite
            | CensusError::LambdaNotFaithful { .. }
            | CensusError::RecordsNotSeparated { .. } => CliError::Domain(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::CheckFailed { .. } | OracleError::RootVectorConstruction { .. } => {
                CliError::Verification(e.to_string())
            }
            OracleError::DegreeCapExceeded { .. }
            | OracleError::DimCapExceeded { .. }
            | OracleError::NotFiniteDimensional
            | OracleError::NotFinite => CliError::Domain(e.to_string()),
            OracleError::DiagonalDataRequired => CliError::Input(e.to_string()),
        }
    }
}

fn load_scheme(
    path: &Path,
    max_objects: usize,
    exponent_bound: u64,
) -> Result<CartanScheme, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let doc = if path.extension().is_some_and(|x| x == "toml") {
        parse_scheme_toml(&text)?
    } else {
        parse_scheme_json(&text)?
    };
    Ok(scheme_from_document(&doc, max_objects, exponent_bound)?)
}

fn resolve_object(scheme: &CartanScheme, object: Option<u32>) -> Result<usize, CliError> {
    match object {
        None => Ok(0),
        Some(label) => scheme
            .resolve_label(label)
            .ok_or_else(|| CliError::Input(format!("unknown object label {label}"))),
    }
}

fn write_artifact(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents)
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}

fn validate_config(cli: &Cli) -> Result<(), CliError> {
    if cli.threads == 0 || cli.exponent_bound == 0 || cli.cap == 0 {
        return Err(CliError::Input(
            "--threads, --exponent-bound and --cap must be positive".into(),
        ));
    }
    let outputs: Vec<&PathBuf> = match &cli.command {
        Command::Roots { json, .. } => json.iter().collect(),
        Command::Groupoid { json, .. } => json.iter().collect(),
        Command::Duflo { dot, .. } => dot.iter().collect(),
        Command::Census { json, dot, .. } => json.iter().chain(dot.iter()).collect(),
        Command::Oracle {
            action: OracleAction::Verify { census, .. },
        } => census.iter().collect(),
        Command::Scheme { .. } => vec![],
    };
    for (a, pa) in outputs.iter().enumerate() {
        for pb in outputs.iter().skip(a + 1) {
            if pa == pb {
                return Err(CliError::Input(format!(
                    "output paths must be distinct: {}",
                    pa.display()
                )));
            }
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), CliError> {
    validate_config(cli)?;
    match &cli.command {
        Command::Scheme {
            action: SchemeAction::Check { input, root_system },
        } => {
            let scheme = load_scheme(input, cli.max_objects, cli.exponent_bound)?;
            println!(
                "scheme: rank {}, {} object(s), {}, {}",
                scheme.rank(),
                scheme.object_count(),
                if scheme.is_standard() {
                    "standard"
                } else {
                    "non-standard"
                },
                if scheme.is_connected() {
                    "connected"
                } else {
                    "disconnected"
                },
            );
            println!("axioms (C1),(C2): ok");
            if *root_system {
                let sets = real_root_sets(&scheme, cli.max_length)?;
                let report = check_root_system(&scheme, &sets);
                let coxeter = check_coxeter_relations(&scheme, &report.m_table);
                for v in &report.violations {
                    println!("violation: {v}");
                }
                for (x, i, j) in &coxeter.violations {
                    println!(
                        "violation: object {}: Coxeter relation for (s{}, s{}) fails",
                        scheme.object(*x).label,
                        i + 1,
                        j + 1
                    );
                }
                if report.passes() && coxeter.passes() {
                    println!(
                        "root system axioms (R1)-(R4): ok; {} Coxeter relation(s): ok",
                        coxeter.relations_checked
                    );
                } else {
                    return Err(CliError::Verification(format!(
                        "{} root-system and {} Coxeter violation(s)",
                        report.violations.len(),
                        coxeter.violations.len()
                    )));
                }
            }
            Ok(())
        }
        Command::Roots {
            input,
            object,
            json,
        } => {
            let scheme = load_scheme(input, cli.max_objects, cli.exponent_bound)?;
            let x = resolve_object(&scheme, *object)?;
            let roots = coideal_core::groupoid::real_roots(&scheme, x, cli.max_length)?;
            println!(
                "object {}: {} real root(s), {}",
                scheme.object(x).label,
                roots.roots.len(),
                if roots.is_negation_closed() {
                    "negation-closed"
                } else {
                    "not negation-closed"
                }
            );
            for r in &roots.roots {
                let tag = if r.is_positive() {
                    " +"
                } else if r.is_negative() {
                    " -"
                } else {
                    " !"
                };
                println!("{tag} {r}");
            }
            if let Some(path) = json {
                let report = RootSetJson {
                    object: scheme.object(x).label,
                    roots: roots.roots.iter().map(|r| r.to_i64_vec()).collect(),
                    positive_roots: roots
                        .positive_roots()
                        .iter()
                        .map(|r| r.to_i64_vec())
                        .collect(),
                };
                write_artifact(path, &to_canonical_json(&report))?;
            }
            Ok(())
        }
        Command::Groupoid { input, json } => {
            let scheme = load_scheme(input, cli.max_objects, cli.exponent_bound)?;
            let enumeration = enumerate_groupoid(&scheme, cli.max_length);
            let finiteness = is_finite(&scheme, cli.max_length);
            for (objects, verdict) in &finiteness.components {
                let labels: Vec<String> = objects
                    .iter()
                    .map(|&x| scheme.object(x).label.to_string())
                    .collect();
                match verdict {
                    ComponentVerdict::Finite {
                        homto_count,
                        real_root_count,
                        longest_length,
                    } => println!(
                        "component {{{}}}: Finite, #Homto = {homto_count}, #roots = {real_root_count}, longest = {longest_length}",
                        labels.join(", ")
                    ),
                    ComponentVerdict::UnknownWithinBounds { explored_length } => println!(
                        "component {{{}}}: UnknownWithinBounds (explored length {explored_length})",
                        labels.join(", ")
                    ),
                }
            }
            if let Some(path) = json {
                let (sets, rs, cox) = if enumeration.complete {
                    let sets = real_root_sets(&scheme, cli.max_length)?;
                    let report = check_root_system(&scheme, &sets);
                    let coxeter = check_coxeter_relations(&scheme, &report.m_table);
                    (sets, Some(report), Some(coxeter))
                } else {
                    (
                        vec![Default::default(); scheme.object_count()],
                        None,
                        None,
                    )
                };
                let report =
                    groupoid_report(&scheme, &enumeration, &sets, rs.as_ref(), cox.as_ref());
                write_artifact(path, &to_canonical_json(&report))?;
            }
            if !finiteness.all_finite() {
                return Err(CliError::Domain(
                    "groupoid verdict: UnknownWithinBounds".into(),
                ));
            }
            Ok(())
        }
        Command::Duflo { input, object, dot } => {
            let scheme = load_scheme(input, cli.max_objects, cli.exponent_bound)?;
            let x = resolve_object(&scheme, *object)?;
            let poset = build_poset(&scheme, x, cli.max_length)?;
            println!(
                "Duflo poset at object {}: {} node(s), {} covering edge(s), ranks {:?}",
                scheme.object(x).label,
                poset.node_count(),
                poset.hasse.len(),
                poset.rank_sizes()
            );
            if let Some(path) = dot {
                write_artifact(path, &poset.to_dot())?;
            }
            Ok(())
        }
        Command::Census {
            input,
            object,
            json,
            dot,
        } => {
            let scheme = load_scheme(input, cli.max_objects, cli.exponent_bound)?;
            let x = resolve_object(&scheme, *object)?;
            let records = census(&scheme, x, cli.max_length, cli.cap)?;
            let count = kharchenko_count(&scheme, x, cli.max_length)?;
            println!(
                "census at object {}: {} record(s); {}{}",
                scheme.object(x).label,
                records.len(),
                if count.standard {
                    "standard scheme"
                } else {
                    "non-standard scheme"
                },
                match count.weyl_group_order {
                    Some(order) => format!(", Weyl group order {order}"),
                    None => String::new(),
                }
            );
            if let Some(path) = json {
                let report = census_report(&scheme, x, &records, &count);
                write_artifact(path, &to_canonical_json(&report))?;
            }
            if let Some(path) = dot {
                let poset = build_poset(&scheme, x, cli.max_length)?;
                write_artifact(path, &poset.to_dot())?;
            }
            Ok(())
        }
        Command::Oracle {
            action:
                OracleAction::Verify {
                    input,
                    object,
                    census: census_out,
                    generic_value,
                    guard,
                },
        } => {
            let scheme = load_scheme(input, cli.max_objects, cli.exponent_bound)?;
            let x = resolve_object(&scheme, *object)?;
            let Some(braiding) = scheme.object(x).braiding.clone() else {
                return Err(CliError::Input(
                    "oracle verification needs a diagonal (braiding) scheme".into(),
                ));
            };
            let records = census(&scheme, x, cli.max_length, cli.cap)?;
            let mut values = vec![*generic_value];
            if *guard {
                values.push(GUARD_GENERIC_VALUE);
            }
            for value in values {
                let config = OracleConfig {
                    degree_cap: cli.cap,
                    generic_value: value,
                };
                for record in &records {
                    verify_coideal(&scheme, record, &config)?;
                    println!(
                        "verify q={value} record {} (word {:?}): PASS",
                        record.id,
                        record
                            .morphism
                            .word
                            .iter()
                            .map(|i| i + 1)
                            .collect::<Vec<_>>()
                    );
                }
                let longest = records.last().expect("census is nonempty");
                commutator_check(&scheme, longest, &config)?;
                println!("commutator and coproduct containments (q={value}): PASS");
                let bound = u64::from(cli.cap.saturating_sub(2).max(1));
                for i in 0..scheme.rank() {
                    for j in 0..scheme.rank() {
                        if i == j {
                            continue;
                        }
                        let scalar =
                            coideal_core::braiding::diagonal_cartan_entry(&braiding, i, j, bound)
                                .ok();
                        let adjoint = cartan_entry_via_adjoint(&braiding, i, j, &config);
                        if scalar != adjoint {
                            return Err(CliError::Verification(format!(
                                "Cartan entry ({i},{j}) disagrees: scalar {scalar:?} vs adjoint {adjoint:?}"
                            )));
                        }
                    }
                }
                println!("Cartan entries vs adjoint powers (q={value}): PASS");
            }
            if let Some(path) = census_out {
                let count = kharchenko_count(&scheme, x, cli.max_length)?;
                let report = census_report(&scheme, x, &records, &count);
                write_artifact(path, &to_canonical_json(&report))?;
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 1 {
        // results are scheduling-independent; the pool size only affects
        // wall-clock time
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global();
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
