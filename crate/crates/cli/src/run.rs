use std::error::Error;
use std::time::Instant;

use derangement_core::lattice::ingest_group_file;
use derangement_core::numtheory::{DerangementTable, ExactRational, Variant};
use derangement_core::proof::{
    cutoff_report, denominator_vs_power_bound, diophantine_report, half_range_report, imprimitive_report,
    intransitive_report, numerator_floor_check, verify_alternating_characterization, verify_symmetric_characterization,
    DiophantineKind, Status, VerificationReport, ALT_POWER_RANGE, SYM_POWER_RANGE,
};
use derangement_core::valueset::valueset_report;
use serde::Serialize;

use crate::args::{Cli, Command, IngestCheck};
use crate::output::Sink;

type Result<T> = std::result::Result<T, Box<dyn Error>>;

/// Runs the command, writes its reports and returns the combined status.
pub fn execute(cli: &Cli) -> Result<Status> {
    if cli.global.jobs > 0 {
        rayon::ThreadPoolBuilder::new().num_threads(cli.global.jobs).build_global()?;
    }
    let mut sink = Sink::open(cli)?;
    sink.header(cli)?;
    let mut statuses = Vec::new();
    let mut timed = |f: &mut dyn FnMut() -> Result<VerificationReport>| -> Result<VerificationReport> {
        let start = Instant::now();
        let report = f()?;
        statuses.push(report.status);
        Ok(if cli.global.timing { report.with_elapsed(start.elapsed()) } else { report })
    };

    match &cli.command {
        Command::Table { max_n } => {
            let (report, lines) = table(*max_n);
            sink.report_with_text(&timed(&mut || Ok(report.clone()))?, &lines)?;
        }
        Command::VerifySym { n } => {
            let report = timed(&mut || Ok(verify_symmetric_characterization(*n)?))?;
            sink.report(&report)?;
        }
        Command::VerifyAlt { n } => {
            let report = timed(&mut || {
                let (report, found) = verify_alternating_characterization(*n)?;
                let orders: Vec<usize> = found.classes.iter().map(|c| c.order).collect();
                Ok(report.param("exceptional_orders", orders))
            })?;
            sink.report(&report)?;
        }
        Command::Witness { n, variant, all_factorizations, intransitive } => {
            let variant = Variant::from(*variant);
            let mut report = timed(&mut || Ok(imprimitive_report(*n, variant)?))?;
            if !all_factorizations && report.witnesses.len() > 1 {
                report.witnesses.truncate(1);
                report = report.param("shown", 1);
            }
            sink.report(&report)?;
            if *intransitive {
                sink.report(&timed(&mut || Ok(intransitive_report(*n, variant)?))?)?;
            }
        }
        Command::Cutoff { variant } => {
            sink.report(&timed(&mut || Ok(cutoff_report((*variant).into())?))?)?;
        }
        Command::DenBound { variant, upper } => {
            let variant = Variant::from(*variant);
            let default_upper = match variant {
                Variant::Symmetric => *SYM_POWER_RANGE.end(),
                Variant::Alternating => *ALT_POWER_RANGE.end(),
            };
            let upper = upper.unwrap_or(default_upper);
            sink.report(&timed(&mut || Ok(denominator_vs_power_bound(variant, upper)?))?)?;
        }
        Command::NumeratorFloor { variant, cap } => {
            sink.report(&timed(&mut || Ok(numerator_floor_check((*variant).into(), *cap)?))?)?;
        }
        Command::Diophantine { kind, bound } => {
            let kind = DiophantineKind::from_index(*kind).ok_or("kind must be 1 or 2")?;
            sink.report(&timed(&mut || Ok(diophantine_report(kind, *bound)))?)?;
        }
        Command::HalfRange { from, to } => {
            sink.report(&timed(&mut || Ok(half_range_report(*from, *to)))?)?;
        }
        Command::Ingest { file, check } => {
            let report = timed(&mut || {
                let entries = ingest_group_file(file)?;
                let groups: Vec<_> = entries.into_iter().map(|(entry, group)| (entry.label, group)).collect();
                let variant = match check {
                    IngestCheck::Divisibility => Variant::Symmetric,
                    IngestCheck::AltProportion => Variant::Alternating,
                };
                Ok(derangement_core::proof::denominator_divisibility_check(&groups, variant)?
                    .param("file", file.display().to_string()))
            })?;
            sink.report(&report)?;
        }
        Command::Ffield { q, n, trials, band } => {
            let k: ExactRational = band.parse().map_err(|e| format!("--band {band:?}: {e}"))?;
            let seed = cli.global.seed;
            sink.report(&timed(&mut || Ok(valueset_report(*q, *n, *trials, seed, &k)?))?)?;
        }
    }
    sink.finish()?;
    Ok(Status::combine(statuses))
}

#[derive(Serialize)]
struct TableRow {
    n: u64,
    d: String,
    e: Option<String>,
    d_proportion: ExactRational,
    e_proportion: Option<ExactRational>,
    d_denominator: String,
    e_denominator: Option<String>,
}

fn table(max_n: u64) -> (VerificationReport, Vec<String>) {
    let table = DerangementTable::new(max_n);
    let mut report = VerificationReport::new("table").param("max_n", max_n);
    let mut lines = vec![format!("{:>4}  {:>24}  {:>24}  {:>20}  {:>20}", "n", "D_n", "E_n", "d_n", "e_n")];
    for n in 0..=max_n {
        let factorial = derangement_core::numtheory::factorial(n);
        let d_proportion = ExactRational::new(table.d(n).clone(), factorial.clone()).expect("n! > 0");
        let e_proportion = table.e(n).map(|e| ExactRational::new(e.clone(), factorial.clone()).expect("n! > 0"));
        let row = TableRow {
            n,
            d: table.d(n).to_string(),
            e: table.e(n).map(ToString::to_string),
            d_denominator: d_proportion.denominator().to_string(),
            e_denominator: e_proportion.as_ref().map(|p| p.denominator().to_string()),
            d_proportion,
            e_proportion,
        };
        let dash = || "-".to_string();
        lines.push(format!(
            "{:>4}  {:>24}  {:>24}  {:>20}  {:>20}",
            n,
            row.d,
            row.e.clone().unwrap_or_else(dash),
            row.d_denominator,
            row.e_denominator.clone().unwrap_or_else(dash),
        ));
        report.witness(&row);
    }
    (report, lines)
}
