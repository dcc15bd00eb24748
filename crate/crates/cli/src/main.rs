use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use scldpc::channels::{bec_transmit, biawgn_transmit, frame_seed};
use scldpc::decoder::{
    latency_report, peeling_decode, DecoderConfig, Stopping, WindowConfig, DEFAULT_CLIP,
};
use scldpc::density_evolution::{de_threshold, saturation_sweep, scalar_de_threshold, sweep_csv};
use scldpc::harness::{
    convolutional_gain_experiment, decode, gain_csv, min_distance_bruteforce, report, simulate,
    Architecture, Code, ExperimentSpec, Format, GainConfig, DEFAULT_DIMENSION_CAP,
};
use scldpc::lifting::{girth, lift, read_alist, write_alist, ChainLayout, LiftSpec};
use scldpc::protograph::{
    couple_and_terminate, degree_profile, design_rate, edge_spread, validate_base_matrix,
    ProtographDoc, SpreadRule,
};
use scldpc::{Error, Result};

#[derive(Parser)]
#[command(
    name = "scldpc",
    version,
    about = "Spatially coupled LDPC code toolkit"
)]
struct Cli {
    /// Master seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for simulations (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Csv)]
    format: OutFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Self {
        match f {
            OutFormat::Csv => Format::Csv,
            OutFormat::Json => Format::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Spread, couple and terminate a base matrix; prints the chain document.
    Construct {
        /// Base matrix document (path or inline JSON).
        #[arg(long)]
        base: String,
        #[arg(long)]
        ms: usize,
        #[arg(long = "L")]
        length: usize,
        /// `uniform`, or `random` to draw components from `--seed`.
        #[arg(long, default_value = "uniform")]
        spreading: String,
    },
    /// Lift a protograph document to a binary matrix in alist format.
    Lift {
        #[command(flatten)]
        source: ProtoArgs,
    },
    /// BEC density-evolution threshold.
    DeThreshold {
        /// Base matrix document (path or inline JSON).
        #[arg(long, required_unless_present = "regular")]
        base: Option<String>,
        /// Evaluate the terminated chain described by the document.
        #[arg(long)]
        coupled: bool,
        /// Termination length, overriding the document.
        #[arg(long = "L")]
        length: Option<usize>,
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
        /// Use the scalar recursion of a (J, K)-regular ensemble instead,
        /// given as `J,K`.
        #[arg(long)]
        regular: Option<String>,
    },
    /// Thresholds and design rates of terminated chains over several lengths.
    Saturate {
        /// Spreading document (path or inline JSON).
        #[arg(long)]
        spreading: String,
        #[arg(long = "L", value_delimiter = ',', required = true)]
        lengths: Vec<usize>,
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
    },
    /// Monte-Carlo BER/FER sweep from an experiment document.
    Simulate {
        #[arg(long)]
        spec: PathBuf,
        /// Record wall-clock time per point.
        #[arg(long)]
        timing: bool,
    },
    /// Block code versus coupled chain over an Eb/N0 grid.
    Gain {
        #[arg(long = "M")]
        lift_size: usize,
        #[arg(long = "L")]
        length: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        snr: Vec<f64>,
        #[arg(long, default_value_t = 100)]
        iters: usize,
        #[arg(long, default_value_t = 10_000)]
        frames: usize,
        #[arg(long, default_value_t = 100)]
        target_errors: usize,
    },
    /// Girth and, for small codes, minimum distance.
    Analyze {
        #[command(flatten)]
        code: CodeArgs,
        /// Also compute the minimum distance by enumeration.
        #[arg(long)]
        dmin: bool,
        #[arg(long, default_value_t = DEFAULT_DIMENSION_CAP)]
        cap: usize,
    },
    /// Latency and memory of pipeline and window decoding.
    Latency {
        #[arg(long)]
        iters: usize,
        #[arg(long)]
        window: Option<usize>,
        #[arg(long = "M")]
        lift_size: usize,
        #[arg(long)]
        c: usize,
        #[arg(long)]
        ms: usize,
    },
    /// Decode random frames and print one JSON result per frame.
    Decode {
        #[command(flatten)]
        code: CodeArgs,
        /// `bec:<eps>` or `awgn:<Eb/N0 dB>`.
        #[arg(long)]
        channel: String,
        #[arg(long, value_enum, default_value_t = Arch::Batch)]
        arch: Arch,
        #[arg(long, default_value_t = 100)]
        iters: usize,
        #[arg(long)]
        window: Option<usize>,
        /// `none`, `syndrome` or `llr:<threshold>`.
        #[arg(long, default_value = "syndrome")]
        stop: String,
        #[arg(long, default_value_t = 1)]
        frames: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Arch {
    Batch,
    Window,
    Pipeline,
    Peeling,
}

#[derive(Args)]
struct ProtoArgs {
    /// Protograph document (path or inline JSON).
    #[arg(long)]
    proto: String,
    #[arg(long = "M")]
    lift_size: usize,
    /// Use circulant permutations.
    #[arg(long)]
    circulant: bool,
}

#[derive(Args)]
struct CodeArgs {
    /// Parity-check matrix in alist format.
    #[arg(long, conflicts_with = "proto")]
    alist: Option<PathBuf>,
    /// Protograph document to lift instead of an alist file.
    #[arg(long)]
    proto: Option<String>,
    #[arg(long = "M")]
    lift_size: Option<usize>,
    #[arg(long)]
    circulant: bool,
    /// Chain length of an alist code, for window and pipeline decoding.
    #[arg(long = "L")]
    length: Option<usize>,
    #[arg(long)]
    ms: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_validation() { 2 } else { 3 })
        }
    }
}

fn run(cli: &Cli) -> Result<()> {
    let text = match &cli.command {
        Command::Construct {
            base,
            ms,
            length,
            spreading,
        } => {
            let base = validate_base_matrix(&read_doc(base)?.base)?;
            let rule = match spreading.as_str() {
                "uniform" => SpreadRule::Uniform,
                "random" => SpreadRule::Random { seed: cli.seed },
                other => {
                    return Err(Error::InvalidConfig(format!(
                        "unknown spreading rule {other:?}"
                    )))
                }
            };
            let spread = edge_spread(&base, *ms, rule)?;
            let t = couple_and_terminate(&spread, *length)?;
            let rendered = t.rendered();
            eprintln!(
                "{}x{} terminated matrix, design rate {}, degrees {}",
                rendered.rows(),
                rendered.cols(),
                design_rate(&t),
                serde_json::to_string(&degree_profile(&t))?
            );
            serde_json::to_string(&ProtographDoc::from_spreading(&spread, Some(*length)))? + "\n"
        }
        Command::Lift { source } => {
            let doc = read_doc(&source.proto)?;
            write_alist(&lift(
                &doc.lift_source()?,
                &lift_spec(source.lift_size, source.circulant, cli.seed),
            )?)
        }
        Command::DeThreshold {
            base,
            coupled,
            length,
            tol,
            regular,
        } => {
            let eps = match regular {
                Some(jk) => {
                    let (j, k) = parse_pair(jk)?;
                    scalar_de_threshold(j, k, *tol)
                }
                None => {
                    let mut doc = read_doc(base.as_deref().unwrap_or_default())?;
                    if *coupled {
                        if length.is_some() {
                            doc.length = *length;
                        }
                        let t = doc.terminated()?.ok_or_else(|| {
                            Error::InvalidConfig(
                                "a coupled threshold needs ms (or components) and L".into(),
                            )
                        })?;
                        de_threshold(t.rendered(), *tol)
                    } else {
                        de_threshold(doc.base_matrix()?.matrix(), *tol)
                    }
                }
            };
            format!("{eps:.6}\n")
        }
        Command::Saturate {
            spreading,
            lengths,
            tol,
        } => {
            let spread = read_doc(spreading)?.spreading()?.ok_or_else(|| {
                Error::InvalidConfig("document has no spreading (ms or components)".into())
            })?;
            let rows = saturation_sweep(&spread, lengths, *tol)?;
            match cli.format {
                OutFormat::Csv => sweep_csv(&rows),
                OutFormat::Json => serde_json::to_string_pretty(&rows)? + "\n",
            }
        }
        Command::Simulate { spec, timing } => {
            let mut spec: ExperimentSpec = serde_json::from_str(&std::fs::read_to_string(spec)?)?;
            if cli.threads.is_some() {
                spec.run.threads = cli.threads;
            }
            spec.run.timing |= *timing;
            report(&simulate(&spec)?, cli.format.into())?
        }
        Command::Gain {
            lift_size,
            length,
            snr,
            iters,
            frames,
            target_errors,
        } => {
            let rows = convolutional_gain_experiment(&GainConfig {
                lift_size: *lift_size,
                length: *length,
                snrs: snr.clone(),
                iterations: *iters,
                max_frames: *frames,
                target_frame_errors: *target_errors,
                seed: cli.seed,
                lift_seed: cli.seed,
                threads: cli.threads,
            })?;
            match cli.format {
                OutFormat::Csv => gain_csv(&rows),
                OutFormat::Json => serde_json::to_string_pretty(&rows)? + "\n",
            }
        }
        Command::Analyze { code, dmin, cap } => {
            let code = build_code(code, cli.seed)?;
            let mut summary = serde_json::json!({
                "n": code.h.n(),
                "m": code.h.m(),
                "girth": girth(&code.graph),
            });
            if *dmin {
                summary["d_min"] = min_distance_bruteforce(&code.h, *cap)?.into();
            }
            serde_json::to_string(&summary)? + "\n"
        }
        Command::Latency {
            iters,
            window,
            lift_size,
            c,
            ms,
        } => {
            serde_json::to_string_pretty(&latency_report(*iters, *window, *lift_size, *c, *ms))?
                + "\n"
        }
        Command::Decode {
            code,
            channel,
            arch,
            iters,
            window,
            stop,
            frames,
        } => decode_frames(cli, code, channel, *arch, *iters, *window, stop, *frames)?,
    };
    emit(cli.out.as_deref(), &text)
}

#[allow(clippy::too_many_arguments)]
fn decode_frames(
    cli: &Cli,
    args: &CodeArgs,
    channel: &str,
    arch: Arch,
    iters: usize,
    window: Option<usize>,
    stop: &str,
    frames: usize,
) -> Result<String> {
    let code = build_code(args, cli.seed)?;
    let stopping: Stopping = stop.parse()?;
    let cfg = DecoderConfig::new(iters, stopping);
    let (kind, value) = channel
        .split_once(':')
        .ok_or_else(|| Error::InvalidConfig(format!("channel {channel:?} is not kind:value")))?;
    let value: f64 = value
        .parse()
        .map_err(|_| Error::InvalidConfig(format!("bad channel parameter {value:?}")))?;
    let architecture = match arch {
        Arch::Batch => Architecture::Batch,
        Arch::Pipeline => Architecture::Pipeline,
        Arch::Peeling => Architecture::Peeling,
        Arch::Window => {
            let w = window
                .ok_or_else(|| Error::InvalidConfig("window decoding needs --window".into()))?;
            Architecture::Window(WindowConfig::new(w, iters, stopping))
        }
    };
    let zeros = vec![0u8; code.n()];
    let mut out = String::new();
    for f in 0..frames {
        let seed = frame_seed(cli.seed, 0, f as u64);
        let result = match kind {
            "bec" => {
                let rx = bec_transmit(&zeros, value, seed)?;
                if arch == Arch::Peeling {
                    peeling_decode(&code.h, &rx, &cfg)?.result
                } else {
                    decode(&code, &architecture, &rx.to_llrs(DEFAULT_CLIP).0, &cfg)?
                }
            }
            "awgn" => decode(
                &code,
                &architecture,
                &biawgn_transmit(&zeros, value, code.rate, seed)?.0,
                &cfg,
            )?,
            other => return Err(Error::InvalidConfig(format!("unknown channel {other:?}"))),
        };
        out.push_str(&serde_json::to_string(&result)?);
        out.push('\n');
    }
    Ok(out)
}

fn build_code(args: &CodeArgs, seed: u64) -> Result<Code> {
    match (&args.alist, &args.proto) {
        (Some(path), None) => {
            let h = read_alist(&std::fs::read_to_string(path)?)?;
            let layout = match (args.length, args.ms) {
                (Some(l), Some(ms)) => Some(ChainLayout::infer(&h, l, ms)?),
                (None, None) => None,
                _ => return Err(Error::InvalidConfig("--L and --ms go together".into())),
            };
            Code::new(h, layout)
        }
        (None, Some(proto)) => {
            let doc = read_doc(proto)?;
            let m = args
                .lift_size
                .ok_or_else(|| Error::InvalidConfig("lifting a protograph needs --M".into()))?;
            let h = lift(&doc.lift_source()?, &lift_spec(m, args.circulant, seed))?;
            let layout = doc
                .terminated()?
                .map(|t| ChainLayout::from_terminated(&t, m));
            Code::new(h, layout)
        }
        _ => Err(Error::InvalidConfig(
            "give exactly one of --alist and --proto".into(),
        )),
    }
}

fn lift_spec(size: usize, circulant: bool, seed: u64) -> LiftSpec {
    if circulant {
        LiftSpec::circulant(size, seed)
    } else {
        LiftSpec::permutation(size, seed)
    }
}

/// Parses inline JSON, or reads it from a file.
fn read_doc(arg: &str) -> Result<ProtographDoc> {
    let trimmed = arg.trim_start();
    let text = if trimmed.starts_with('{') {
        arg.to_owned()
    } else {
        std::fs::read_to_string(arg)?
    };
    Ok(serde_json::from_str(&text)?)
}

fn parse_pair(s: &str) -> Result<(u32, u32)> {
    let bad = || Error::InvalidConfig(format!("expected J,K, got {s:?}"));
    let (j, k) = s.split_once(',').ok_or_else(bad)?;
    let j: u32 = j.trim().parse().map_err(|_| bad())?;
    let k: u32 = k.trim().parse().map_err(|_| bad())?;
    if j < 2 || k <= j {
        return Err(bad());
    }
    Ok((j, k))
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}
