//! Scaling runs on generated instances, one CSV row per grid side.

use std::io::Write;
use std::time::Instant;

use anyhow::Result;
use bigraded_pd::generate::{one_critical, random_bifiltration, totally_nested};
use bigraded_pd::matrix::reduce_filtration;
use bigraded_pd::oracle::brute_diagram;
use bigraded_pd::{refine_to_nondegenerate, restrict_to_path, sweep, Field, Path, SweepOptions};
use clap::{Args, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Generator {
    OneCritical,
    MultiCritical,
    Nested,
}

#[derive(Args, Debug, Clone)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value_t = Generator::OneCritical)]
    generator: Generator,
    /// Number of simplices.
    #[arg(long, default_value_t = 40)]
    m: usize,
    /// Grid side; repeat for a sweep over sides.
    #[arg(long = "n", value_name = "N", default_values_t = [40, 60, 80, 120])]
    sides: Vec<u32>,
    #[arg(long, default_value_t = 2)]
    max_dim: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 2, value_name = "P")]
    field: u32,
    /// Also time the oracle on sides up to the cap.
    #[arg(long)]
    oracle: bool,
    #[arg(long, default_value_t = 16, value_name = "N")]
    cap: u32,
    /// Leave out wall-clock columns, making the output reproducible.
    #[arg(long)]
    no_time: bool,
}

pub fn run(args: &BenchArgs, out: &mut impl Write) -> Result<()> {
    let field = Field::new(args.field)?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut header = "m,n,C,pairs,squares,transpositions,switches,ops".to_string();
    if !args.no_time {
        header.push_str(",sweep_ms");
        if args.oracle {
            header.push_str(",oracle_ms");
        }
    }
    writeln!(out, "{header}")?;
    for &n in &args.sides {
        let b = match args.generator {
            Generator::OneCritical => one_critical(&mut rng, args.m, n.max(args.m as u32), args.max_dim),
            Generator::Nested => totally_nested(&mut rng, args.m, n.max(args.m as u32), args.max_dim),
            Generator::MultiCritical => {
                let raw = random_bifiltration(&mut rng, args.m, args.max_dim, 3, n);
                refine_to_nondegenerate(&raw)?.0
            }
        };
        let side = b.grid.nx;
        let t = Instant::now();
        let (d, s) = sweep(&b, &SweepOptions { field, check: false })?;
        let sweep_ms = t.elapsed().as_secs_f64() * 1e3;
        let f = restrict_to_path(&b, &Path::left_top(side))?;
        let (pairs, essential) = reduce_filtration(&b.complex, &f, &field)?.pairs();
        let mut row = format!(
            "{},{side},{},{},{},{},{},{}",
            b.len(),
            d.support_size(),
            pairs.len() + essential.len(),
            s.squares,
            s.transpositions,
            s.switches,
            s.matrix_ops + s.corner_ops
        );
        if !args.no_time {
            row.push_str(&format!(",{sweep_ms:.3}"));
            if args.oracle {
                if side <= args.cap {
                    let t = Instant::now();
                    brute_diagram(&b, field);
                    row.push_str(&format!(",{:.3}", t.elapsed().as_secs_f64() * 1e3));
                } else {
                    row.push(',');
                }
            }
        }
        writeln!(out, "{row}")?;
    }
    Ok(())
}
