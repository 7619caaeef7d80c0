use std::process::ExitCode;

use clap::{error::ErrorKind, Parser, Subcommand};
use pmcg_torsion::cli::{self, Command, Format, Options, EXIT_OK, EXIT_USAGE};
use pmcg_torsion::surface_kernels::DEFAULT_BUDGET;

/// p-torsion in punctured non-orientable mapping class groups.
#[derive(Parser)]
#[command(name = "pmcg", version)]
struct Args {
    /// Emit the structured JSON document.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV (classes and solutions only).
    #[arg(long, global = true)]
    csv: bool,
    /// Skip the result cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Maximum number of kernels visited by orbit searches.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    #[command(subcommand)]
    command: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Does N_g^k have an element of order p?
    Torsion {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        p: i64,
    },
    /// All (h, t) with g - 2 = p(h - 2) + t(p - 1).
    Solutions {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        p: i64,
    },
    /// Conjugacy classes of order-p elements, one kernel each.
    Classes {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        p: i64,
        #[arg(long)]
        h: Option<u32>,
        #[arg(long)]
        t: Option<u32>,
    },
    /// Check orbits of surface kernels against t-tuple classes.
    Verify {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        h: u32,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        k: u32,
    },
    /// p-primary Farrell cohomology of N_p^k.
    Cohomology {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        k: u32,
    },
    /// Which slide maps of N_2^1 lift to N_p^2.
    Liftability {
        #[arg(long)]
        p: i64,
    },
    /// Quick battery of internal checks.
    Selftest,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::from(EXIT_OK as u8),
                _ => ExitCode::from(EXIT_USAGE as u8),
            };
        }
    };
    let command = match args.command {
        Verb::Torsion { g, k, p } => Command::Torsion { g, k, p },
        Verb::Solutions { g, p } => Command::Solutions { g, p },
        Verb::Classes { g, k, p, h, t } => Command::Classes { g, k, p, h, t },
        Verb::Verify { p, h, t, k } => Command::Verify { p, h, t, k },
        Verb::Cohomology { p, k } => Command::Cohomology { p, k },
        Verb::Liftability { p } => Command::Liftability { p },
        Verb::Selftest => Command::Selftest,
    };
    let format = if args.json {
        Format::Json
    } else if args.csv {
        Format::Csv
    } else {
        Format::Text
    };
    let opts = Options {
        format,
        use_cache: !args.no_cache,
        budget: args.budget,
        cache_dir: None,
    };
    match cli::run(&command, &opts) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(cli::exit_code_for(&e) as u8)
        }
    }
}
