use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lozenge_core::batch;
use lozenge_core::formulas::formula_value;
use lozenge_core::oracle::{count_tilings, enumerate_tilings};
use lozenge_core::properties::{grid, run_suite, Grids, Suite, Tally};
use lozenge_core::regions::{Family, RegionInput, RegionSpec};

mod svg;

#[derive(Parser)]
#[command(name = "lozenge", version, about = "Exact lozenge tiling counts for halved hexagons and shamrock hexagons")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the formula value and/or the oracle count of one region.
    Count {
        #[command(flatten)]
        region: RegionArgs,
        #[arg(long, value_enum, default_value_t = Mode::Both)]
        mode: Mode,
    },
    /// Run an identity suite and print one JSON report per line.
    Verify {
        #[arg(long)]
        suite: Suite,
        /// Grid definitions; defaults to the bundled grids.
        #[arg(long)]
        grid_file: Option<PathBuf>,
        /// Write the reports here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a region (and optionally its first tiling) as SVG.
    Render {
        #[command(flatten)]
        region: RegionArgs,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        with_tiling: bool,
    },
    /// Tabulate a family over parameter ranges as CSV.
    Sweep {
        #[arg(long)]
        family: Family,
        /// `name=lo:hi` (inclusive) or `name=v`, once per parameter.
        #[arg(long = "range", value_name = "NAME=LO:HI")]
        ranges: Vec<String>,
        #[arg(long, value_enum, default_value_t = Mode::Both)]
        outputs: Mode,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Maximum number of parameter tuples.
        #[arg(long, default_value_t = 20_000)]
        cap: usize,
        /// Leave the oracle_ms column empty so the output is reproducible.
        #[arg(long)]
        no_timing: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Formula,
    Oracle,
    Both,
}

#[derive(Args)]
struct RegionArgs {
    #[arg(long)]
    family: Option<Family>,
    /// JSON file holding a family spec or an explicit cell list.
    #[arg(long, conflicts_with = "family")]
    spec_file: Option<PathBuf>,
    #[arg(long)]
    x: Option<i64>,
    #[arg(long)]
    y: Option<i64>,
    #[arg(long)]
    z: Option<i64>,
    #[arg(long)]
    m: Option<i64>,
    #[arg(long)]
    a: Option<i64>,
    #[arg(long)]
    b: Option<i64>,
    #[arg(long)]
    c: Option<i64>,
    #[arg(long)]
    d: Option<i64>,
}

enum Failure {
    /// Exit 1: a mismatch or failed identity.
    Mismatch(String),
    /// Exit 2: bad input.
    Invalid(String),
    /// Exit 3: a tiling was requested for an untileable region.
    Untileable(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Mismatch(_) => 1,
            Failure::Invalid(_) => 2,
            Failure::Untileable(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Mismatch(m) | Failure::Invalid(m) | Failure::Untileable(m) => m,
        }
    }
}

fn invalid(e: impl ToString) -> Failure {
    Failure::Invalid(e.to_string())
}

impl RegionArgs {
    fn flag_values(&self) -> [(&'static str, Option<i64>); 8] {
        [
            ("x", self.x),
            ("y", self.y),
            ("z", self.z),
            ("m", self.m),
            ("a", self.a),
            ("b", self.b),
            ("c", self.c),
            ("d", self.d),
        ]
    }

    fn input(&self) -> Result<RegionInput, Failure> {
        if let Some(path) = &self.spec_file {
            if self.flag_values().iter().any(|(_, v)| v.is_some()) {
                return Err(invalid("parameter flags cannot be combined with --spec-file"));
            }
            let text = fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
            let input: RegionInput =
                serde_json::from_str(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
            if let RegionInput::Spec(s) = &input {
                s.validate().map_err(invalid)?;
            }
            return Ok(input);
        }
        let family = self.family.ok_or_else(|| invalid("either --family or --spec-file is required"))?;
        let names = family.param_names();
        if let Some((n, _)) = self.flag_values().iter().find(|(n, v)| v.is_some() && !names.contains(n)) {
            return Err(invalid(format!("{family} has no parameter {n}")));
        }
        let mut values = Vec::new();
        for n in names {
            let v = self.flag_values().iter().find(|(k, _)| k == n).and_then(|(_, v)| *v);
            values.push(v.ok_or_else(|| invalid(format!("{family} needs --{n}")))?);
        }
        let spec = RegionSpec::new(family, &values).map_err(invalid)?;
        spec.validate().map_err(invalid)?;
        Ok(RegionInput::Spec(spec))
    }
}

fn cmd_count(region: &RegionArgs, mode: Mode) -> Result<(), Failure> {
    let input = region.input()?;
    let formula = || match &input {
        RegionInput::Spec(s) => formula_value(s).map_err(invalid),
        RegionInput::Cells(_) => Err(invalid("explicit cell lists have no formula value")),
    };
    let oracle = || input.build().map(|r| count_tilings(&r)).map_err(invalid);
    match mode {
        Mode::Formula => println!("{}", formula()?),
        Mode::Oracle => println!("{}", oracle()?),
        Mode::Both => {
            let (f, o) = (formula()?, oracle()?);
            let verdict = if f == o { "MATCH" } else { "MISMATCH" };
            println!("{f} {o} {verdict}");
            if f != o {
                return Err(Failure::Mismatch(String::new()));
            }
        }
    }
    Ok(())
}

fn cmd_verify(suite: Suite, grid_file: Option<&PathBuf>, out: Option<&PathBuf>) -> Result<(), Failure> {
    let grids = match grid_file {
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| invalid(format!("{}: {e}", p.display())))?;
            Grids::from_json(&text).map_err(|e| invalid(format!("{}: {e}", p.display())))?
        }
        None => Grids::default(),
    };
    let reports = run_suite(suite, &grids);
    let mut text = String::new();
    for r in &reports {
        text.push_str(&serde_json::to_string(r).expect("reports serialize"));
        text.push('\n');
    }
    write_output(out, &text)?;
    let t = Tally::of(&reports);
    eprintln!("{suite}: {} passed, {} failed, {} skipped", t.passed, t.failed, t.skipped);
    if t.failed > 0 {
        return Err(Failure::Mismatch(format!("{} identities failed", t.failed)));
    }
    Ok(())
}

fn cmd_render(region: &RegionArgs, out: &PathBuf, with_tiling: bool) -> Result<(), Failure> {
    let r = region.input()?.build().map_err(invalid)?;
    let tiling = if with_tiling {
        let t = enumerate_tilings(&r, 1).into_iter().next();
        Some(t.ok_or_else(|| Failure::Untileable("the region has no tiling".into()))?)
    } else {
        None
    };
    fs::write(out, svg::render(&r, tiling.as_ref())).map_err(|e| invalid(format!("{}: {e}", out.display())))
}

fn parse_range(s: &str) -> Result<(String, i64, i64), Failure> {
    let bad = || invalid(format!("bad range {s:?}, expected name=lo:hi"));
    let (name, span) = s.split_once('=').ok_or_else(bad)?;
    let (lo, hi) = match span.split_once(':') {
        Some((lo, hi)) => (lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?),
        None => {
            let v = span.trim().parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    Ok((name.trim().to_string(), lo, hi))
}

struct Row {
    values: Vec<i64>,
    formula: Option<String>,
    oracle: Option<String>,
    matched: Option<bool>,
    oracle_ms: Option<f64>,
}

fn sweep_row(family: Family, values: &[i64], outputs: Mode) -> Option<Row> {
    let spec = RegionSpec::new(family, values).ok()?;
    spec.validate().ok()?;
    let formula = (outputs != Mode::Oracle).then(|| formula_value(&spec));
    let oracle = if outputs != Mode::Formula {
        let region = spec.build().ok()?;
        let t = Instant::now();
        let v = count_tilings(&region);
        Some((v, t.elapsed().as_secs_f64() * 1e3))
    } else {
        None
    };
    let matched = match (&formula, &oracle) {
        (Some(Ok(f)), Some((o, _))) => Some(f == o),
        (Some(Err(_)), Some(_)) => Some(false),
        _ => None,
    };
    Some(Row {
        values: values.to_vec(),
        formula: formula.map(|f| f.map(|v| v.to_string()).unwrap_or_else(|_| "ERR".into())),
        oracle: oracle.as_ref().map(|(v, _)| v.to_string()),
        matched,
        oracle_ms: oracle.map(|(_, ms)| ms),
    })
}

fn cmd_sweep(
    family: Family,
    ranges: &[String],
    outputs: Mode,
    out: Option<&PathBuf>,
    cap: usize,
    no_timing: bool,
) -> Result<(), Failure> {
    let names = family.param_names();
    let mut spans = vec![None; names.len()];
    for s in ranges {
        let (name, lo, hi) = parse_range(s)?;
        let i = names
            .iter()
            .position(|n| *n == name)
            .ok_or_else(|| invalid(format!("{family} has no parameter {name}")))?;
        spans[i] = Some([lo, hi]);
    }
    let spans: Vec<[i64; 2]> = spans
        .into_iter()
        .zip(names)
        .map(|(s, n)| s.ok_or_else(|| invalid(format!("missing --range for {n}"))))
        .collect::<Result<_, _>>()?;
    let total: usize = spans.iter().map(|[lo, hi]| (hi - lo + 1).max(0) as usize).product();
    if total > cap {
        return Err(invalid(format!("{total} parameter tuples exceed the cap of {cap}")));
    }
    let tuples = grid(&spans);
    let rows: Vec<Row> = batch::map(&tuples, |v| sweep_row(family, v, outputs)).into_iter().flatten().collect();

    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["family".to_string()];
    header.extend(names.iter().map(|n| n.to_string()));
    header.extend(["formula", "oracle", "match", "oracle_ms"].map(String::from));
    w.write_record(&header).map_err(invalid)?;
    let mut mismatches = 0;
    for r in &rows {
        let mut rec = vec![family.name().to_string()];
        rec.extend(r.values.iter().map(|v| v.to_string()));
        rec.push(r.formula.clone().unwrap_or_default());
        rec.push(r.oracle.clone().unwrap_or_default());
        rec.push(match r.matched {
            Some(true) => "MATCH".into(),
            Some(false) => {
                mismatches += 1;
                "MISMATCH".into()
            }
            None => String::new(),
        });
        rec.push(match (r.oracle_ms, no_timing) {
            (Some(ms), false) => format!("{ms:.3}"),
            _ => String::new(),
        });
        w.write_record(&rec).map_err(invalid)?;
    }
    let bytes = w.into_inner().map_err(|e| invalid(e.to_string()))?;
    write_output(out, &String::from_utf8(bytes).expect("csv is utf-8"))?;
    if mismatches > 0 {
        return Err(Failure::Mismatch(format!("{mismatches} rows do not match")));
    }
    Ok(())
}

fn write_output(out: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| invalid(format!("{}: {e}", p.display()))),
        None => io::stdout().write_all(text.as_bytes()).map_err(invalid),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Count { region, mode } => cmd_count(region, *mode),
        Command::Verify { suite, grid_file, out } => cmd_verify(*suite, grid_file.as_ref(), out.as_ref()),
        Command::Render { region, out, with_tiling } => cmd_render(region, out, *with_tiling),
        Command::Sweep {
            family,
            ranges,
            outputs,
            out,
            cap,
            no_timing,
        } => cmd_sweep(*family, ranges, *outputs, out.as_ref(), *cap, *no_timing),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message().is_empty() {
                eprintln!("error: {}", f.message());
            }
            ExitCode::from(f.code())
        }
    }
}
