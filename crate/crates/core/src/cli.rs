//! Command-line interface.
//!
//! Exit codes: 0 success, 1 verification failure or method disagreement,
//! 2 usage error or unknown id, 3 a b-file was needed but neither the network
//! nor the cache could supply it.

use std::io::Write;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::json;

use crate::catalog::{self, CatalogError, SequenceId, SequenceKind};
use crate::kernel::{self, KernelSet};
use crate::oeis::{self, OeisClient};
use crate::oracle::{LatticeRule, RegionFilter};
use crate::verify::{self, HalfSplitForm, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NETWORK: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "seqlat", version, about = "Exact path counts on Catalan-Schroeder lattices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the first terms of a sequence.
    Terms {
        id: String,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        #[arg(long, value_enum, default_value_t = Method::Gf)]
        method: Method,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Print the first rows of a triangle, one row per line.
    Triangle {
        id: String,
        #[arg(long, default_value_t = 10)]
        rows: u64,
    },
    /// Check every identity and formula against the DP oracle.
    Verify {
        /// Sequences to check; all registered ids when omitted.
        ids: Vec<String>,
        #[arg(long, conflicts_with = "ids")]
        all: bool,
        #[arg(long, default_value_t = 30)]
        max_order: usize,
        /// Also diff against OEIS b-files (network with cache fallback).
        #[arg(long)]
        with_oeis: bool,
        /// Use only cached b-files.
        #[arg(long, requires = "with_oeis")]
        offline: bool,
        /// Generating function used for A026786.
        #[arg(long, value_enum, default_value_t = A026786Form::Dilated)]
        a026786_form: A026786Form,
    },
    /// Emit terms in OEIS b-file format.
    Bfile {
        id: String,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
    },
    /// Time kernel construction, all sequences and an oracle grid.
    Bench {
        #[arg(long, default_value_t = 500, value_parser = clap::value_parser!(u64).range(1..))]
        terms: u64,
    },
    /// Count paths to one point with the DP oracle.
    Oracle {
        #[arg(long, value_enum)]
        lattice: Lattice,
        /// Target point as `X,Y`.
        #[arg(long, value_parser = parse_point)]
        to: (i64, i64),
        /// Count only paths meeting y = x at their endpoints (c and s only).
        #[arg(long)]
        avoid_diagonal: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Gf,
    Oracle,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Csv,
    Bfile,
    JsonLines,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Lattice {
    C,
    S,
    Cs,
    CsStar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum A026786Form {
    /// F(x^2)*(1 + x*S(x^2))
    Dilated,
    /// F(x)*(1 + x*S(x^2))
    Undilated,
}

fn parse_point(s: &str) -> Result<(i64, i64), String> {
    let (x, y) = s.split_once(',').ok_or("expected X,Y")?;
    let parse = |v: &str| v.trim().parse::<i64>().map_err(|e| format!("{v:?}: {e}"));
    Ok((parse(x)?, parse(y)?))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILURE
        }
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> std::io::Result<i32> {
    match command {
        Command::Terms {
            id,
            count,
            method,
            format,
        } => cmd_terms(&id, count as usize, method, format, out, err),
        Command::Triangle { id, rows } => cmd_triangle(&id, rows as usize, out, err),
        Command::Verify {
            ids,
            all: _,
            max_order,
            with_oeis,
            offline,
            a026786_form,
        } => {
            let form = match a026786_form {
                A026786Form::Dilated => HalfSplitForm::Dilated,
                A026786Form::Undilated => HalfSplitForm::Undilated,
            };
            cmd_verify(&ids, max_order, with_oeis, offline, form, out, err)
        }
        Command::Bfile { id, count } => cmd_bfile(&id, count as usize, out, err),
        Command::Bench { terms } => cmd_bench(terms as usize, out),
        Command::Oracle {
            lattice,
            to,
            avoid_diagonal,
        } => cmd_oracle(lattice, to, avoid_diagonal, out, err),
    }
}

fn lookup(id: &str, err: &mut dyn Write) -> std::io::Result<Option<catalog::SequenceDescriptor>> {
    match id.parse::<SequenceId>().and_then(catalog::descriptor) {
        Ok(d) => Ok(Some(d)),
        Err(e) => {
            writeln!(err, "error: {e}")?;
            Ok(None)
        }
    }
}

fn gf_terms(d: &catalog::SequenceDescriptor, count: usize) -> Result<Vec<BigInt>, CatalogError> {
    let kernels = KernelSet::new(d.required_order(count));
    d.terms(&kernels, count)
}

pub fn cmd_terms(
    id: &str,
    count: usize,
    method: Method,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::io::Result<i32> {
    let Some(d) = lookup(id, err)? else {
        return Ok(EXIT_USAGE);
    };
    let gf = match method {
        Method::Gf | Method::Both => match gf_terms(&d, count) {
            Ok(t) => Some(t),
            Err(e) => {
                writeln!(err, "error: {e}")?;
                return Ok(EXIT_FAILURE);
            }
        },
        Method::Oracle => None,
    };
    let oracle = match method {
        Method::Oracle | Method::Both => Some(d.oracle_terms(count)),
        Method::Gf => None,
    };
    let primary = gf.as_ref().or(oracle.as_ref()).expect("at least one method ran");
    let second = if method == Method::Both { oracle.as_ref() } else { None };
    let index = |i: usize| d.lead_offset + i as i64;

    match format {
        Format::Plain => match second {
            None => {
                let line: Vec<String> = primary.iter().map(ToString::to_string).collect();
                writeln!(out, "{}", line.join(" "))?;
            }
            Some(other) => {
                for (a, b) in primary.iter().zip(other) {
                    writeln!(out, "{a} {b}")?;
                }
            }
        },
        Format::Csv => {
            match second {
                None => writeln!(out, "index,value")?,
                Some(_) => writeln!(out, "index,gf,oracle")?,
            }
            for (i, a) in primary.iter().enumerate() {
                match second {
                    None => writeln!(out, "{},{a}", index(i))?,
                    Some(other) => writeln!(out, "{},{a},{}", index(i), other[i])?,
                }
            }
        }
        Format::Bfile => out.write_all(oeis::format_bfile(d.lead_offset, primary).as_bytes())?,
        Format::JsonLines => {
            for (i, a) in primary.iter().enumerate() {
                let mut row = json!({
                    "id": d.id.to_string(),
                    "index": index(i),
                    "value": a.to_string(),
                });
                if let Some(other) = second {
                    row["oracle"] = json!(other[i].to_string());
                }
                writeln!(out, "{row}")?;
            }
        }
    }

    if let Some(other) = second {
        if let Some(i) = primary.iter().zip(other).position(|(a, b)| a != b) {
            writeln!(
                err,
                "{}: generating function and oracle disagree at index {}: {} vs {}",
                d.id,
                index(i),
                primary[i],
                other[i]
            )?;
            return Ok(EXIT_FAILURE);
        }
    }
    Ok(EXIT_OK)
}

pub fn cmd_triangle(id: &str, rows: usize, out: &mut dyn Write, err: &mut dyn Write) -> std::io::Result<i32> {
    let Some(d) = lookup(id, err)? else {
        return Ok(EXIT_USAGE);
    };
    if d.kind != SequenceKind::Triangle {
        writeln!(err, "error: {}", CatalogError::WrongKind(d.id))?;
        return Ok(EXIT_USAGE);
    }
    let kernels = KernelSet::new(rows / 2 + 1);
    for n in 0..rows {
        let row = match d.triangle_row(&kernels, n) {
            Ok(r) => r,
            Err(e) => {
                writeln!(err, "error: {e}")?;
                return Ok(EXIT_FAILURE);
            }
        };
        let row: Vec<String> = row.iter().map(ToString::to_string).collect();
        writeln!(out, "{}", row.join(" "))?;
    }
    Ok(EXIT_OK)
}

pub fn cmd_verify(
    ids: &[String],
    max_order: usize,
    with_oeis: bool,
    offline: bool,
    form: HalfSplitForm,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::io::Result<i32> {
    let ids = if ids.is_empty() {
        catalog::all_ids()
    } else {
        let mut parsed = Vec::with_capacity(ids.len());
        for id in ids {
            match id.parse::<SequenceId>().and_then(|i| catalog::descriptor(i).map(|_| i)) {
                Ok(i) => parsed.push(i),
                Err(e) => {
                    writeln!(err, "error: {e}")?;
                    return Ok(EXIT_USAGE);
                }
            }
        }
        parsed
    };
    let client = OeisClient::from_env().offline(offline);
    let options = VerifyOptions {
        ids,
        max_order,
        with_oeis,
        a026786_form: form,
    };
    let report = verify::run(&options, with_oeis.then_some(&client));
    let width = report.checks.iter().map(|c| c.name.chars().count()).max().unwrap_or(0);
    for check in &report.checks {
        let status = if check.passed { "PASS" } else { "FAIL" };
        let pad = width - check.name.chars().count();
        writeln!(out, "{status}  {}{}  {}", check.name, " ".repeat(pad), check.detail)?;
    }
    let failed = report.checks.iter().filter(|c| !c.passed).count();
    writeln!(out, "{} checks, {} failed", report.checks.len(), failed)?;
    Ok(if report.fetch_failed {
        EXIT_NETWORK
    } else if failed > 0 {
        EXIT_FAILURE
    } else {
        EXIT_OK
    })
}

pub fn cmd_bfile(id: &str, count: usize, out: &mut dyn Write, err: &mut dyn Write) -> std::io::Result<i32> {
    cmd_terms(id, count, Method::Gf, Format::Bfile, out, err)
}

pub fn cmd_bench(terms: usize, out: &mut dyn Write) -> std::io::Result<i32> {
    let ids = catalog::all_ids();
    let order = catalog::shared_order(&ids, terms).expect("registered ids");

    let t0 = Instant::now();
    let kernels = KernelSet::new(order);
    let kernel_time = t0.elapsed();
    let mut peak_bits = [kernels.f(), kernels.f_star(), kernels.schroeder()]
        .iter()
        .flat_map(|s| s.coeffs().iter().map(|c| c.bits()))
        .max()
        .unwrap_or(0);
    writeln!(
        out,
        "kernels   order {order:>6}  {:>10.3} s",
        kernel_time.as_secs_f64()
    )?;

    let t1 = Instant::now();
    let results: Vec<(SequenceId, Result<u64, CatalogError>)> = ids
        .par_iter()
        .map(|&id| {
            let bits = catalog::descriptor(id)
                .and_then(|d| d.terms(&kernels, terms))
                .map(|t| t.iter().map(|c| c.bits()).max().unwrap_or(0));
            (id, bits)
        })
        .collect();
    let seq_time = t1.elapsed();
    for (id, bits) in &results {
        match bits {
            Ok(b) => peak_bits = peak_bits.max(*b),
            Err(e) => writeln!(out, "{id}: {e}")?,
        }
    }
    writeln!(
        out,
        "sequences {:>3} ids × {terms} terms  {:>10.3} s",
        ids.len(),
        seq_time.as_secs_f64()
    )?;

    let side = terms.min(200);
    let t2 = Instant::now();
    let grid = LatticeRule::CS.grid_counts(side, side);
    let grid_time = t2.elapsed();
    writeln!(
        out,
        "oracle    {side}×{side} grid  {:>10.3} s  (corner {} bits)",
        grid_time.as_secs_f64(),
        grid.get(side as i64, side as i64).bits()
    )?;
    writeln!(out, "peak term bit length {peak_bits}")?;
    // a fresh F* at the requested order, the headline number
    let t3 = Instant::now();
    let f_star = kernel::f_star_series(terms);
    writeln!(
        out,
        "F* alone  order {terms:>6}  {:>10.3} s  (last term {} bits)",
        t3.elapsed().as_secs_f64(),
        f_star.coeffs()[terms].bits()
    )?;
    Ok(if results.iter().all(|(_, r)| r.is_ok()) {
        EXIT_OK
    } else {
        EXIT_FAILURE
    })
}

pub fn cmd_oracle(
    lattice: Lattice,
    (x, y): (i64, i64),
    avoid_diagonal: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::io::Result<i32> {
    let rule = match lattice {
        Lattice::C => LatticeRule::CATALAN,
        Lattice::S => LatticeRule::SCHROEDER,
        Lattice::Cs => LatticeRule::CS,
        Lattice::CsStar => LatticeRule::CS_STAR,
    };
    let value = if avoid_diagonal {
        match rule.count_avoiding_diagonal(x, y) {
            Ok(v) => v,
            Err(e) => {
                writeln!(err, "error: {e}")?;
                return Ok(EXIT_USAGE);
            }
        }
    } else {
        rule.with_filter(RegionFilter::None).count(x, y)
    };
    writeln!(out, "{value}")?;
    Ok(EXIT_OK)
}
