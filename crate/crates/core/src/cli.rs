//! The `sector-pack` command line.
//!
//! Exit status: 0 on success, 1 on domain errors (bad slope, point outside the
//! sector, invalid family parameters), 2 on usage errors, 3 when `verify`
//! finds a counterexample.

use std::fmt::Display;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::layout::SectorArray;
use crate::packing::{standard_families, PackingFamily};
use crate::poly::deserialize;
use crate::sector::{LatticePoint, Sector, Slope};
use crate::transforms::{lambda_map, m_map, phi_map, psi_map, LinearMap2};
use crate::verify::{self, enumerate, verify_packing, EnumerationOrder, Verdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "sector-pack", version, about = "Packing functions on integer sectors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Output {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write the result to FILE instead of standard output.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rank of a point under a packing family.
    Eval {
        #[arg(long)]
        family: String,
        #[arg(long)]
        point: String,
        #[command(flatten)]
        output: Output,
    },
    /// Point with a given rank.
    Unrank {
        #[arg(long)]
        family: String,
        #[arg(long)]
        rank: String,
        #[command(flatten)]
        output: Output,
    },
    /// First points of an enumeration order (the brute-force oracle).
    Enumerate {
        #[arg(long)]
        slope: Option<String>,
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        order: Option<String>,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Check the packing property on a prefix of ranks.
    Verify {
        /// Family to check; all built-in families with parameters up to 10 when omitted.
        #[arg(long)]
        family: Option<String>,
        /// JSON polynomial file to check instead of a family (requires --slope).
        #[arg(long, value_name = "FILE")]
        poly: Option<PathBuf>,
        #[arg(long)]
        slope: Option<String>,
        #[arg(long, default_value_t = 1000)]
        prefix: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Exhaustive coefficient search for packing polynomials.
    Search {
        #[arg(long)]
        slope: String,
        #[arg(long, default_value_t = 4)]
        bound: u64,
        #[arg(long, default_value_t = 2000)]
        prefix: u64,
        #[arg(long, default_value_t = 2)]
        degree: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Free basis of the sector semigroup.
    Basis {
        #[arg(long)]
        slope: String,
        #[command(flatten)]
        output: Output,
    },
    /// Print a named linear map (lambda:S, m:S, phi:S, psi:R) row-major.
    Transform {
        #[arg(long)]
        map: String,
        #[arg(long)]
        point: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Fill a sector array and dump its cells as offset,x,y.
    Layout {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[command(flatten)]
        output: Output,
    },
}

/// Runs the CLI on `argv` (including the program name), writing results to `out`
/// and diagnostics to `err`. Returns the exit status.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let (output, result) = dispatch(cli.command, err);
    match result {
        Ok((text, code)) => {
            let written = match &output.out {
                Some(path) => std::fs::write(path, &text),
                None => out.write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: {e}");
                return EXIT_DOMAIN;
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_DOMAIN
        }
    }
}

fn num(n: &impl Display) -> Value {
    serde_json::from_str(&n.to_string()).expect("integer literal")
}

fn point_json(p: &LatticePoint) -> Value {
    Value::Array(vec![num(&p.x), num(&p.y)])
}

fn xy(p: &LatticePoint) -> String {
    format!("{},{}", p.x, p.y)
}

fn json_line(v: Value) -> String {
    format!("{v}\n")
}

fn parse_rank(text: &str) -> Result<BigUint> {
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::InvalidParameters(format!("rank {text:?} is not a nonnegative integer")));
    }
    Ok(text.parse().expect("digits"))
}

fn parse_map(name: &str) -> Result<LinearMap2> {
    let bad = || Error::InvalidParameters(format!("unknown map {name:?}; expected lambda:S, m:S, phi:S or psi:R"));
    let (kind, arg) = name.split_once(':').ok_or_else(bad)?;
    if arg.is_empty() || !arg.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let k: u64 = arg.parse().map_err(|_| bad())?;
    match kind {
        "lambda" => Ok(lambda_map(k)),
        "m" => Ok(m_map(k)),
        "phi" => Ok(phi_map(k)),
        "psi" => psi_map(k),
        _ => Err(bad()),
    }
}

type Outcome = Result<(String, i32)>;

fn dispatch(command: Command, err: &mut dyn Write) -> (Output, Outcome) {
    match command {
        Command::Eval { family, point, output } => {
            let fmt = output.format.unwrap_or(Format::Text);
            (output, eval(&family, &point, fmt))
        }
        Command::Unrank { family, rank, output } => {
            let fmt = output.format.unwrap_or(Format::Text);
            (output, unrank(&family, &rank, fmt))
        }
        Command::Enumerate { slope, family, order, count, output } => {
            let fmt = output.format.unwrap_or(Format::Text);
            (output, enumerate_cmd(slope.as_deref(), family.as_deref(), order.as_deref(), count, fmt))
        }
        Command::Verify { family, poly, slope, prefix, output } => {
            let fmt = output.format.unwrap_or(Format::Text);
            (output, verify_cmd(family.as_deref(), poly, slope.as_deref(), prefix, fmt))
        }
        Command::Search { slope, bound, prefix, degree, output } => {
            let fmt = output.format.unwrap_or(Format::Json);
            (output, search_cmd(&slope, bound, prefix, degree, fmt, err))
        }
        Command::Basis { slope, output } => {
            let fmt = output.format.unwrap_or(Format::Text);
            (output, basis(&slope, fmt))
        }
        Command::Transform { map, point, output } => {
            let fmt = output.format.unwrap_or(Format::Text);
            (output, transform(&map, point.as_deref(), fmt))
        }
        Command::Layout { family, count, output } => {
            let fmt = output.format.unwrap_or(Format::Csv);
            (output, layout(&family, count, fmt))
        }
    }
}

fn eval(family: &str, point: &str, fmt: Format) -> Outcome {
    let fam = PackingFamily::from_name(family)?;
    let p: LatticePoint = point.parse()?;
    let rank = fam.rank(&p)?;
    let text = match fmt {
        Format::Text => format!("{rank}\n"),
        Format::Csv => format!("rank,x,y\n{rank},{}\n", xy(&p)),
        Format::Json => {
            let mut m = Map::new();
            m.insert("family".into(), Value::String(fam.kind().to_string()));
            m.insert("point".into(), point_json(&p));
            m.insert("rank".into(), num(&rank));
            json_line(Value::Object(m))
        }
    };
    Ok((text, EXIT_OK))
}

fn unrank(family: &str, rank: &str, fmt: Format) -> Outcome {
    let fam = PackingFamily::from_name(family)?;
    let n = parse_rank(rank)?;
    let p = fam.unrank(&n);
    let text = match fmt {
        Format::Text => format!("{}\n", xy(&p)),
        Format::Csv => format!("rank,x,y\n{n},{}\n", xy(&p)),
        Format::Json => {
            let mut m = Map::new();
            m.insert("family".into(), Value::String(fam.kind().to_string()));
            m.insert("rank".into(), num(&n));
            m.insert("point".into(), point_json(&p));
            json_line(Value::Object(m))
        }
    };
    Ok((text, EXIT_OK))
}

fn enumerate_cmd(slope: Option<&str>, family: Option<&str>, order: Option<&str>, count: usize, fmt: Format) -> Outcome {
    let fam = family.map(PackingFamily::from_name).transpose()?;
    let slope: Slope = match (slope, &fam) {
        (Some(s), _) => s.parse()?,
        (None, Some(f)) => f.sector().slope,
        (None, None) => return Err(Error::InvalidParameters("enumerate needs --slope or --family".into())),
    };
    if let Some(f) = &fam {
        if f.sector().slope != slope {
            return Err(Error::InvalidParameters(format!("family {} lives on I({}), not I({slope})", f.kind(), f.sector().slope)));
        }
    }
    let order = match (order, &fam) {
        (Some(o), _) => EnumerationOrder::parse(o, slope)?,
        (None, Some(f)) => f.order(),
        (None, None) => return Err(Error::InvalidParameters("enumerate needs --order or --family".into())),
    };
    let points = enumerate(&Sector::new(slope), order, count)?;
    let text = match fmt {
        Format::Text => points.iter().enumerate().map(|(i, p)| format!("{i} {}\n", xy(p))).collect(),
        Format::Csv => {
            let mut s = String::from("rank,x,y\n");
            for (i, p) in points.iter().enumerate() {
                s.push_str(&format!("{i},{}\n", xy(p)));
            }
            s
        }
        Format::Json => {
            let mut m = Map::new();
            m.insert("slope".into(), Value::String(slope.to_string()));
            m.insert("order".into(), Value::String(order.to_string()));
            m.insert("points".into(), Value::Array(points.iter().map(point_json).collect()));
            json_line(Value::Object(m))
        }
    };
    Ok((text, EXIT_OK))
}

fn verify_cmd(family: Option<&str>, poly: Option<PathBuf>, slope: Option<&str>, prefix: u64, fmt: Format) -> Outcome {
    let mut targets = Vec::new();
    match (family, poly) {
        (Some(_), Some(_)) => return Err(Error::InvalidParameters("give either --family or --poly".into())),
        (Some(name), None) => {
            let fam = PackingFamily::from_name(name)?;
            targets.push((fam.kind().to_string(), fam.form().clone(), fam.sector()));
        }
        (None, Some(path)) => {
            let slope: Slope = slope
                .ok_or_else(|| Error::InvalidParameters("--poly requires --slope".into()))?
                .parse()?;
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Error::InvalidParameters(format!("{}: {e}", path.display())))?;
            targets.push((path.display().to_string(), deserialize(text.trim())?, Sector::new(slope)));
        }
        (None, None) => {
            for fam in standard_families(10) {
                targets.push((fam.kind().to_string(), fam.form().clone(), fam.sector()));
            }
        }
    }
    let mut code = EXIT_OK;
    let mut lines = Vec::new();
    let mut records = Vec::new();
    for (name, form, sector) in &targets {
        let verdict = verify_packing(form, sector, prefix);
        let witness = match &verdict {
            Verdict::Pass => None,
            Verdict::Fail(f) => {
                code = EXIT_VERIFY_FAILED;
                Some(f.to_string())
            }
        };
        match fmt {
            Format::Text => lines.push(match &witness {
                None => format!("pass {name} on {sector} prefix {prefix}"),
                Some(w) => format!("fail {name} on {sector} prefix {prefix}: {w}"),
            }),
            Format::Csv => lines.push(format!(
                "{name},{},{prefix},{},{}",
                sector.slope,
                if witness.is_none() { "pass" } else { "fail" },
                witness.clone().unwrap_or_default()
            )),
            Format::Json => {
                let mut m = Map::new();
                m.insert("target".into(), Value::String(name.clone()));
                m.insert("slope".into(), Value::String(sector.slope.to_string()));
                m.insert("prefix".into(), Value::from(prefix));
                m.insert("pass".into(), Value::Bool(witness.is_none()));
                m.insert("witness".into(), witness.map(Value::String).unwrap_or(Value::Null));
                records.push(Value::Object(m));
            }
        }
    }
    let text = match fmt {
        Format::Json => json_line(Value::Array(records)),
        Format::Csv => format!("target,slope,prefix,verdict,witness\n{}\n", lines.join("\n")),
        Format::Text => format!("{}\n", lines.join("\n")),
    };
    Ok((text, code))
}

fn search_cmd(slope: &str, bound: u64, prefix: u64, degree: u32, fmt: Format, err: &mut dyn Write) -> Outcome {
    let sector = Sector::new(slope.parse()?);
    let _ = writeln!(err, "searching degree-{degree} candidates on {sector}, bound {bound}, prefix {prefix}");
    let last_tenth = std::sync::atomic::AtomicU64::new(0);
    let progress = |done: u64, total: u64| {
        let tenth = done * 10 / total.max(1);
        if last_tenth.fetch_max(tenth, std::sync::atomic::Ordering::Relaxed) < tenth {
            eprintln!("progress {}%", tenth * 10);
        }
    };
    let report = verify::search(&sector, degree, bound, prefix, &progress)?;
    let _ = writeln!(err, "examined {} candidates, {} survivors", report.candidates, report.survivors.len());
    let text = match fmt {
        Format::Json => json_line(report.to_json_value()),
        Format::Text => {
            let mut s = format!(
                "sector {}\ndegree {}\ncoeff_bound {}\nprefix {}\ncandidates {}\nexhausted {}\nsurvivors {}\n",
                report.sector.slope,
                report.degree,
                report.coeff_bound,
                report.prefix,
                report.candidates,
                report.exhausted,
                report.survivors.len()
            );
            for f in &report.survivors {
                s.push_str(&format!("{}\n", f.to_json_value()));
            }
            s
        }
        Format::Csv => return Err(Error::InvalidParameters("search output is text or json".into())),
    };
    Ok((text, EXIT_OK))
}

fn basis(slope: &str, fmt: Format) -> Outcome {
    let slope: Slope = slope.parse()?;
    let found = Sector::new(slope).free_basis();
    let text = match (fmt, &found) {
        (Format::Json, _) => {
            let mut m = Map::new();
            m.insert("slope".into(), Value::String(slope.to_string()));
            m.insert(
                "basis".into(),
                found.as_ref().map(|b| Value::Array(b.iter().map(point_json).collect())).unwrap_or(Value::Null),
            );
            json_line(Value::Object(m))
        }
        (Format::Csv, Some(b)) => format!("x,y\n{}\n{}\n", xy(&b[0]), xy(&b[1])),
        (Format::Csv, None) => "x,y\n".to_string(),
        (Format::Text, Some(b)) => format!("{} {}\n", b[0], b[1]),
        (Format::Text, None) => "none\n".to_string(),
    };
    Ok((text, EXIT_OK))
}

fn transform(name: &str, point: Option<&str>, fmt: Format) -> Outcome {
    let map = parse_map(name)?;
    let image = point.map(str::parse::<LatticePoint>).transpose()?.map(|p| map.apply(&p));
    let text = match fmt {
        Format::Text => {
            let mut s = format!("{map}\n");
            if let Some((x, y)) = &image {
                s.push_str(&format!("{x},{y}\n"));
            }
            s
        }
        Format::Csv => {
            let mut s = format!("a,b,c,d\n{}\n", map.entries().map(|e| e.to_string()).join(","));
            if let Some((x, y)) = &image {
                s.push_str(&format!("x,y\n{x},{y}\n"));
            }
            s
        }
        Format::Json => {
            let mut m = Map::new();
            m.insert("map".into(), Value::String(name.to_string()));
            m.insert("matrix".into(), Value::Array(map.entries().iter().map(|e| num(e)).collect()));
            if let Some((x, y)) = &image {
                m.insert("image".into(), Value::Array(vec![num(x), num(y)]));
            }
            json_line(Value::Object(m))
        }
    };
    Ok((text, EXIT_OK))
}

fn layout(family: &str, count: usize, fmt: Format) -> Outcome {
    let fam = PackingFamily::from_name(family)?;
    let mut arr = SectorArray::new(fam);
    arr.dense_prefix_fill(count, |p| p.clone());
    let text = match fmt {
        Format::Json => json_line(Value::Array(
            arr.iter()
                .map(|(offset, p, _)| {
                    let mut m = Map::new();
                    m.insert("offset".into(), Value::from(offset));
                    m.insert("x".into(), num(&p.x));
                    m.insert("y".into(), num(&p.y));
                    Value::Object(m)
                })
                .collect(),
        )),
        Format::Csv | Format::Text => {
            let mut s = String::from("offset,x,y\n");
            for (offset, p, _) in arr.iter() {
                s.push_str(&format!("{offset},{}\n", xy(&p)));
            }
            s
        }
    };
    Ok((text, EXIT_OK))
}
