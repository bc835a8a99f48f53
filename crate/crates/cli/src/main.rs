mod bench;
mod output;
mod svg;

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use bigraded_pd::oracle::brute_diagram;
use bigraded_pd::parse::{parse, Parsed};
use bigraded_pd::{
    compute, is_nondegenerate, refine_to_nondegenerate, Error, Field, Grade, Interval,
    SignedDiagram, SweepOptions,
};
use clap::{Args, Parser, Subcommand};

use crate::output::{write_diagram, Format};

/// Generalized persistence diagrams of bifiltered simplicial complexes.
#[derive(Parser, Debug)]
#[command(name = "bigraded-pd", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute the diagram with the sweep.
    Compute(Common),
    /// Compute the diagram by brute-force Möbius inversion.
    Oracle {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        cap: Cap,
    },
    /// Compare the sweep against the oracle; exit 1 on the first difference.
    Diff {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        cap: Cap,
        /// Perturb the sweep result before comparing.
        #[arg(long, hide = true)]
        corrupt: bool,
    },
    /// Time the sweep on generated instances and print CSV rows.
    Bench(bench::BenchArgs),
    /// Draw the diagram of one dimension as a standalone SVG.
    Plot {
        #[command(flatten)]
        common: Common,
        /// Overlay the appearance curves of the simplices of that dimension.
        #[arg(long)]
        curves: bool,
    },
    /// Parse and validate the input, then summarize it.
    Validate(Common),
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Homology dimension to report; repeat for more. All by default.
    #[arg(long = "dim", value_name = "D")]
    dims: Vec<usize>,
    /// Prime characteristic of the coefficient field.
    #[arg(long, default_value_t = 2, value_name = "P")]
    field: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Refuse degenerate input instead of refining it.
    #[arg(long)]
    strict: bool,
    /// Bifiltration file, or `-` for standard input.
    input: PathBuf,
}

#[derive(Args, Debug, Clone, Copy)]
struct Cap {
    /// Largest grid side the oracle accepts.
    #[arg(long, default_value_t = 16, value_name = "N")]
    cap: u32,
}

/// A diff that found a difference; reported with exit status 1.
#[derive(Debug)]
struct Mismatch;

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("sweep and oracle differ")
    }
}

impl std::error::Error for Mismatch {}

fn read_input(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading standard input")?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

impl Common {
    fn load(&self) -> Result<(Parsed, Field)> {
        let field = Field::new(self.field)?;
        let parsed = parse(&read_input(&self.input)?)?;
        let b = &parsed.bifiltration;
        if self.strict && !(b.grid.nx == b.grid.ny && is_nondegenerate(b)) {
            return Err(Error::Degenerate.into());
        }
        if let Some(top) = b.complex.max_dim() {
            if let Some(&d) = self.dims.iter().find(|&&d| d > top) {
                bail!("dimension {d} exceeds the complex dimension {top}");
            }
        }
        Ok((parsed, field))
    }

    fn keep(&self, d: &SignedDiagram) -> SignedDiagram {
        if self.dims.is_empty() {
            d.clone()
        } else {
            d.restrict_dims(|k| self.dims.contains(&k))
        }
    }
}

fn sweep_diagram(common: &Common, parsed: &Parsed, field: Field) -> Result<SignedDiagram> {
    let (d, _) = compute(&parsed.bifiltration, &SweepOptions { field, check: false })?;
    Ok(common.keep(&d))
}

fn oracle_diagram(common: &Common, cap: Cap, parsed: &Parsed, field: Field) -> Result<SignedDiagram> {
    let g = parsed.bifiltration.grid;
    let side = g.nx.max(g.ny);
    if side > cap.cap {
        return Err(Error::CapExceeded { side, cap: cap.cap }.into());
    }
    Ok(common.keep(&brute_diagram(&parsed.bifiltration, field)))
}

fn run(cli: Cli, out: &mut impl Write) -> Result<()> {
    match cli.command {
        Command::Compute(common) => {
            let (parsed, field) = common.load()?;
            let d = sweep_diagram(&common, &parsed, field)?;
            write_diagram(out, &parsed, &d, common.format)?;
        }
        Command::Oracle { common, cap } => {
            let (parsed, field) = common.load()?;
            let d = oracle_diagram(&common, cap, &parsed, field)?;
            write_diagram(out, &parsed, &d, common.format)?;
        }
        Command::Diff { common, cap, corrupt } => {
            let (parsed, field) = common.load()?;
            let want = oracle_diagram(&common, cap, &parsed, field)?;
            let mut got = sweep_diagram(&common, &parsed, field)?;
            if corrupt {
                let g = parsed.bifiltration.grid;
                let iv = got.iter().next().map(|(d, iv, _)| (d, iv));
                let (d, iv) = iv.unwrap_or((0, Interval::new(Grade::new(0, 0), g.top())));
                got.add(d, iv, 1);
            }
            match got.first_difference(&want) {
                None => writeln!(out, "identical: {} intervals", want.support_size())?,
                Some((d, iv, a, b)) => {
                    let (lo, hi) = (parsed.label(iv.lo), parsed.label(iv.hi));
                    writeln!(
                        out,
                        "first difference: dim {d} [({}, {}), ({}, {})] sweep {a} oracle {b}",
                        lo.0, lo.1, hi.0, hi.1
                    )?;
                    return Err(Mismatch.into());
                }
            }
        }
        Command::Bench(args) => bench::run(&args, out)?,
        Command::Plot { common, curves } => {
            let (parsed, field) = common.load()?;
            let d = sweep_diagram(&common, &parsed, field)?;
            let dim = common.dims.first().copied().unwrap_or(0);
            out.write_all(svg::render(&parsed, &d, dim, curves).as_bytes())?;
        }
        Command::Validate(common) => {
            let (parsed, _) = common.load()?;
            let b = &parsed.bifiltration;
            let shape = if b.grid.nx == b.grid.ny && is_nondegenerate(b) {
                "non-degenerate".to_string()
            } else {
                let (r, _) = refine_to_nondegenerate(b)?;
                format!("refines to {}x{}", r.grid.nx, r.grid.ny)
            };
            writeln!(
                out,
                "valid: {} simplices, {} lower corners, grid {}x{}, {shape}",
                b.len(),
                b.corner_count(),
                b.grid.nx,
                b.grid.ny
            )?;
        }
    }
    Ok(())
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.is::<Mismatch>() {
        return 1;
    }
    match e.downcast_ref::<Error>() {
        Some(Error::CapExceeded { .. }) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let res = run(cli, &mut out);
    let flushed = out.flush();
    match res.and(flushed.map_err(Into::into)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !e.is::<Mismatch>() {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
