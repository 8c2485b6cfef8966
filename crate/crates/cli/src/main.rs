use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sarith_cli::{exit_code, run, CommandKind, Format, Report, RunConfig};
use sarith_core::slgroups::SamplerCfg;

#[derive(Parser)]
#[command(name = "sarith", version, about = "Cusps and unipotent subgroups of SL_n over function fields")]
struct Cli {
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Output path; the values `json` and `tsv` select the format instead.
    #[arg(long, global = true)]
    out: Option<String>,
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    /// Add elapsed_ms to the report (makes it nondeterministic).
    #[arg(long, global = true)]
    timings: bool,
    /// Re-run the config embedded in a report (or a bare config file).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Option<Cmd>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Tsv,
}

#[derive(Args)]
struct CurveArgs {
    #[arg(long)]
    curve: String,
    /// Places of S separated by `;`, e.g. "inf;t^2+t+1".
    #[arg(long)]
    places: String,
}

#[derive(Args)]
struct SamplerArgs {
    #[arg(long, default_value_t = 8)]
    word_length: usize,
    #[arg(long, default_value_t = 2)]
    height: usize,
    #[arg(long, default_value_t = 2)]
    unit_exponent_bound: u32,
}

#[derive(Subcommand)]
enum Cmd {
    /// Structure of Pic(O_S).
    Picard(CurveArgs),
    /// The S-unit lattice.
    Units(CurveArgs),
    /// Census of cusp classes by Steinitz invariant.
    Cusps {
        #[command(flatten)]
        at: CurveArgs,
        #[arg(short = 'n', default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[command(flatten)]
        sampler: SamplerArgs,
    },
    /// |SL_n(R)/B_n(R)| for R = F_q[t]/(f).
    CongruenceCusps {
        #[arg(short = 'n', default_value_t = 2)]
        n: usize,
        #[arg(long)]
        q: String,
        #[arg(long)]
        modulus: String,
    },
    /// Torsion order and free rank of the standard cusp stabilizer.
    Stabilizer {
        #[command(flatten)]
        at: CurveArgs,
        #[arg(short = 'n', default_value_t = 2)]
        n: usize,
    },
    /// Characteristic polynomials of sampled Gamma_I elements modulo f.
    TorsionCheck {
        #[arg(short = 'n', default_value_t = 2)]
        n: usize,
        #[arg(long)]
        q: String,
        #[arg(long)]
        modulus: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[command(flatten)]
        sampler: SamplerArgs,
    },
    /// The non-unipotent congruence stabilizer over F_q[t, 1/t].
    Counterexample {
        #[arg(long)]
        q: String,
        #[arg(short = 'n', default_value_t = 2)]
        n: usize,
    },
    /// Every acceptance criterion, one row each.
    Acceptance {
        #[arg(long)]
        quick: bool,
    },
}

fn split_places(s: &str) -> Vec<String> {
    s.split(';').map(|p| p.trim().to_string()).filter(|p| !p.is_empty()).collect()
}

fn sampler_cfg(seed: u64, s: Option<&SamplerArgs>) -> SamplerCfg {
    match s {
        Some(s) => SamplerCfg {
            seed,
            word_length: s.word_length,
            height: s.height,
            unit_exponent_bound: s.unit_exponent_bound,
        },
        None => SamplerCfg { seed, ..SamplerCfg::default() },
    }
}

fn config_from(cmd: Cmd, seed: u64) -> RunConfig {
    let at = |c: &mut RunConfig, a: CurveArgs| {
        c.curve = Some(a.curve);
        c.places = split_places(&a.places);
    };
    let mut c;
    match cmd {
        Cmd::Picard(a) => {
            c = RunConfig::new(CommandKind::Picard);
            at(&mut c, a);
        }
        Cmd::Units(a) => {
            c = RunConfig::new(CommandKind::Units);
            at(&mut c, a);
        }
        Cmd::Cusps { at: a, n, samples, sampler } => {
            c = RunConfig::new(CommandKind::Cusps);
            at(&mut c, a);
            c.n = Some(n);
            c.samples = Some(samples);
            c.sampler = sampler_cfg(seed, Some(&sampler));
        }
        Cmd::CongruenceCusps { n, q, modulus } => {
            c = RunConfig::new(CommandKind::CongruenceCusps);
            c.n = Some(n);
            c.q = Some(q);
            c.modulus = Some(modulus);
        }
        Cmd::Stabilizer { at: a, n } => {
            c = RunConfig::new(CommandKind::Stabilizer);
            at(&mut c, a);
            c.n = Some(n);
        }
        Cmd::TorsionCheck { n, q, modulus, samples, sampler } => {
            c = RunConfig::new(CommandKind::TorsionCheck);
            c.n = Some(n);
            c.q = Some(q);
            c.modulus = Some(modulus);
            c.samples = Some(samples);
            c.sampler = sampler_cfg(seed, Some(&sampler));
        }
        Cmd::Counterexample { q, n } => {
            c = RunConfig::new(CommandKind::Counterexample);
            c.q = Some(q);
            c.n = Some(n);
        }
        Cmd::Acceptance { quick } => {
            c = RunConfig::new(CommandKind::Acceptance);
            c.quick = quick;
        }
    }
    c.sampler.seed = seed;
    c
}

fn load_config(path: &PathBuf) -> Result<RunConfig, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let v = v.get("config").cloned().unwrap_or(v);
    serde_json::from_value(v).map_err(|e| format!("{}: {e}", path.display()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut cfg = match (&cli.config, cli.cmd) {
        (Some(path), _) => match load_config(path) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
        },
        (None, Some(cmd)) => config_from(cmd, cli.seed),
        (None, None) => {
            eprintln!("error: a subcommand or --config is required (see --help)");
            return ExitCode::from(1);
        }
    };
    let mut path = None;
    match cli.out.as_deref() {
        Some("json") => cfg.format = Format::Json,
        Some("tsv") => cfg.format = Format::Tsv,
        Some(p) => path = Some(PathBuf::from(p)),
        None => {}
    }
    match cli.format {
        Some(FormatArg::Json) => cfg.format = Format::Json,
        Some(FormatArg::Tsv) => cfg.format = Format::Tsv,
        None => {}
    }
    let start = Instant::now();
    let outcome = match run(&cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e) as u8);
        }
    };
    let elapsed = cli.timings.then(|| start.elapsed().as_millis() as u64);
    let report = Report::new(&cfg, outcome.json, elapsed);
    let text = match cfg.format {
        Format::Json => report.to_json(),
        Format::Tsv => report.to_tsv(&outcome.table),
    };
    match path {
        Some(p) => {
            if let Err(e) = std::fs::write(&p, &text) {
                eprintln!("error: {}: {e}", p.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    if outcome.failed {
        return ExitCode::from(3);
    }
    ExitCode::SUCCESS
}
