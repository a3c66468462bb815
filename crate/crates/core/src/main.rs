use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use csi_sense::classifier::{classify, ClassifierConfig};
use csi_sense::csi::ActivityLabel;
use csi_sense::gateway::{BackendConfig, ChatTransport, HttpTransport, MockTransport};
use csi_sense::harness::{
    generate_dataset, load_segment, prepare_series, run_experiment, DatasetManifest,
    ExperimentOptions, GenerateOptions, HarnessError, LabelCounts, ManifestEntry, Method, Split,
    StrategySpec, MANIFEST_FILE,
};
use csi_sense::dsp::{mean_amplitude, savgol_smooth};
use csi_sense::prompting::{to_plot, TemplateKind};

#[derive(Parser)]
#[command(
    name = "csi-sense",
    version,
    about = "Wi-Fi CSI activity sensing: simulate, classify, prompt and evaluate"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic labelled dataset with a 70/30 train/test split.
    Generate {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Per-label counts, e.g. "breath=123,walk=90,fall=90,no_event=90".
        #[arg(long, default_value = "breath=123,walk=90,fall=90,no_event=90")]
        counts: String,
        /// Output directory (created if missing).
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1000.0)]
        sample_rate: f64,
        #[arg(long, default_value_t = 5.0)]
        duration: f64,
        /// Override the default I/Q noise level (0 disables noise).
        #[arg(long)]
        noise_sigma: Option<f64>,
    },
    /// Classify one segment file.
    Classify {
        /// Segment CSV file.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Rule)]
        method: MethodArg,
        #[arg(long, value_enum, default_value_t = StrategyArg::Knowledge)]
        strategy: StrategyArg,
        /// Also render the smoothed series to this PNG file.
        #[arg(long)]
        plot: Option<PathBuf>,
        /// Print the rule engine's decision trace.
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        backend: BackendArgs,
    },
    /// Run a method over a dataset's test split and report metrics.
    Evaluate {
        /// Path to manifest.json (or the dataset directory).
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Rule)]
        method: MethodArg,
        #[arg(long, value_enum, default_value_t = StrategyArg::Knowledge)]
        strategy: StrategyArg,
        /// Write the full report as JSON here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Seed for few-shot exemplar selection.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Cap on simultaneous backend calls.
        #[arg(long)]
        concurrency: Option<usize>,
        #[command(flatten)]
        backend: BackendArgs,
    },
    /// Render a segment's amplitude series as a PNG plot.
    Render {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 800)]
        width: u32,
        #[arg(long, default_value_t = 400)]
        height: u32,
        /// Plot the raw mean amplitude instead of the smoothed series.
        #[arg(long)]
        raw: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Rule,
    Llm,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Base,
    Knowledge,
    Cot,
    Icl,
    Multimodal,
}

impl StrategyArg {
    fn spec(self) -> StrategySpec {
        match self {
            StrategyArg::Base => StrategySpec::Text(TemplateKind::Base),
            StrategyArg::Knowledge => StrategySpec::Text(TemplateKind::Knowledge),
            StrategyArg::Cot => StrategySpec::Text(TemplateKind::Cot),
            StrategyArg::Icl => StrategySpec::Icl,
            StrategyArg::Multimodal => StrategySpec::Multimodal(TemplateKind::Knowledge),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BackendArg {
    /// OpenAI-compatible HTTP endpoint.
    Http,
    /// Offline backend that echoes the rule classifier's answers.
    Echo,
}

#[derive(Args)]
struct BackendArgs {
    #[arg(long, value_enum, default_value_t = BackendArg::Http)]
    backend: BackendArg,
    /// Chat-completions base URL (http backend).
    #[arg(long)]
    base_url: Option<String>,
    /// Model name (http backend).
    #[arg(long)]
    model: Option<String>,
}

/// Error carrying the process exit code: 1 for parameter problems, 2 for
/// IO and gateway failures.
struct AppError {
    code: u8,
    message: String,
}

impl AppError {
    fn param(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }

    fn runtime(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<HarnessError> for AppError {
    fn from(e: HarnessError) -> Self {
        let code = match &e {
            HarnessError::Io { .. }
            | HarnessError::Parse { .. }
            | HarnessError::Manifest(_)
            | HarnessError::Gateway(_) => 2,
            _ => 1,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // keep clap help/version on the success path, usage errors on 1
            if e.use_stderr() {
                eprintln!("{e}");
                return ExitCode::from(1);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), AppError> {
    match cli.command {
        Command::Generate {
            seed,
            counts,
            out,
            sample_rate,
            duration,
            noise_sigma,
        } => {
            let counts = parse_counts(&counts)?;
            let options = GenerateOptions {
                seed,
                counts,
                sample_rate,
                duration,
                noise_sigma,
            };
            let manifest = generate_dataset(&options, &out)?;
            let train = manifest.split_entries(Split::Train).count();
            let test = manifest.split_entries(Split::Test).count();
            println!(
                "wrote {} segments to {} ({train} train / {test} test)",
                manifest.entries.len(),
                out.display()
            );
            Ok(())
        }
        Command::Classify {
            input,
            method,
            strategy,
            plot,
            trace,
            backend,
        } => {
            let series = smoothed_series(&input)?;
            if let Some(path) = plot {
                let visual = to_plot(&series, 800, 400).map_err(HarnessError::from)?;
                std::fs::write(&path, &visual.png_bytes)
                    .map_err(|e| AppError::runtime(format!("writing {}: {e}", path.display())))?;
            }
            let decision =
                classify(&series, &ClassifierConfig::default()).map_err(HarnessError::from)?;
            let label = match method {
                MethodArg::Rule => decision.label,
                MethodArg::Llm => classify_via_llm(&series, strategy, &backend, decision.label)?,
            };
            println!("{label}");
            if trace {
                for step in &decision.trace {
                    println!(
                        "  {:28} measured={:<12.4} threshold={:<12.4} {}",
                        step.step,
                        step.measured,
                        step.threshold,
                        if step.passed { "matched" } else { "continue" }
                    );
                }
            }
            Ok(())
        }
        Command::Evaluate {
            manifest,
            method,
            strategy,
            report,
            seed,
            concurrency,
            backend,
        } => {
            let manifest_path = if manifest.is_dir() {
                manifest.join(MANIFEST_FILE)
            } else {
                manifest
            };
            let dataset = DatasetManifest::load(&manifest_path)?;
            let mut options = ExperimentOptions::default();
            options.exemplar_seed = seed;
            options.concurrency = concurrency;

            let eval = match method {
                MethodArg::Rule => run_experiment(&dataset, Method::Rule, &options)?,
                MethodArg::Llm => match backend.backend {
                    BackendArg::Http => {
                        let config = http_config(&backend)?;
                        let transport =
                            HttpTransport::new(&config).map_err(HarnessError::from)?;
                        run_experiment(
                            &dataset,
                            Method::Llm {
                                strategy: strategy.spec(),
                                config: &config,
                                transport: &transport,
                            },
                            &options,
                        )?
                    }
                    BackendArg::Echo => {
                        // Echo backend: answer every prompt with the rule
                        // classifier's decision for that segment, keeping
                        // the whole prompt/gateway/parse path in play.
                        let answers = rule_answers(&dataset, &options)?;
                        let transport = MockTransport::with_responses(answers);
                        let config = BackendConfig::new("http://echo.invalid", "rule-echo");
                        options.concurrency = Some(1);
                        run_experiment(
                            &dataset,
                            Method::Llm {
                                strategy: strategy.spec(),
                                config: &config,
                                transport: &transport,
                            },
                            &options,
                        )?
                    }
                },
            };

            println!("segments    {}", eval.total);
            println!("accuracy    {:.4}", eval.accuracy);
            println!("macro F1    {:.4}", eval.macro_f1);
            println!("unparseable {}", eval.num_unparseable);
            println!("per-class   precision recall f1");
            for label in ActivityLabel::ALL {
                let m = &eval.per_class[label.canonical()];
                println!(
                    "  {:9} {:.4}    {:.4} {:.4}",
                    label.canonical(),
                    m.precision,
                    m.recall,
                    m.f1
                );
            }
            if let Some(path) = report {
                let json = serde_json::to_string_pretty(&eval)
                    .map_err(|e| AppError::runtime(format!("report serialization: {e}")))?;
                std::fs::write(&path, json)
                    .map_err(|e| AppError::runtime(format!("writing {}: {e}", path.display())))?;
                println!("report written to {}", path.display());
            }
            Ok(())
        }
        Command::Render {
            input,
            out,
            width,
            height,
            raw,
        } => {
            let segment = load_segment(&input)?;
            let amplitude = mean_amplitude(&segment).map_err(HarnessError::from)?;
            let series = if raw {
                amplitude
            } else {
                savgol_smooth(
                    &amplitude,
                    csi_sense::dsp::DEFAULT_SAVGOL_WINDOW,
                    csi_sense::dsp::DEFAULT_SAVGOL_POLY_ORDER,
                )
                .map_err(HarnessError::from)?
            };
            let visual = to_plot(&series, width, height).map_err(HarnessError::from)?;
            std::fs::write(&out, &visual.png_bytes)
                .map_err(|e| AppError::runtime(format!("writing {}: {e}", out.display())))?;
            println!("wrote {}", out.display());
            Ok(())
        }
    }
}

fn smoothed_series(input: &std::path::Path) -> Result<csi_sense::dsp::AmplitudeSeries, AppError> {
    let segment = load_segment(input)?;
    let amplitude = mean_amplitude(&segment).map_err(HarnessError::from)?;
    Ok(savgol_smooth(
        &amplitude,
        csi_sense::dsp::DEFAULT_SAVGOL_WINDOW,
        csi_sense::dsp::DEFAULT_SAVGOL_POLY_ORDER,
    )
    .map_err(HarnessError::from)?)
}

/// Single-segment LLM classification; the echo backend answers with the
/// rule decision, the http backend asks the configured endpoint.
fn classify_via_llm(
    series: &csi_sense::dsp::AmplitudeSeries,
    strategy: StrategyArg,
    backend: &BackendArgs,
    rule_label: ActivityLabel,
) -> Result<ActivityLabel, AppError> {
    use csi_sense::prompting::{
        build_prompt, to_text, PromptStrategy, Representation, DEFAULT_TEXT_DECIMALS,
        DEFAULT_TEXT_POINTS,
    };

    if strategy == StrategyArg::Icl {
        return Err(AppError::param(
            "--strategy icl needs a dataset manifest; use the evaluate subcommand",
        ));
    }
    let representation = match strategy {
        StrategyArg::Multimodal => {
            Representation::Visual(to_plot(series, 800, 400).map_err(HarnessError::from)?)
        }
        _ => Representation::Text(
            to_text(series, DEFAULT_TEXT_POINTS, DEFAULT_TEXT_DECIMALS)
                .map_err(HarnessError::from)?,
        ),
    };
    let prompt_strategy = match strategy {
        StrategyArg::Base => PromptStrategy::Base,
        StrategyArg::Knowledge => PromptStrategy::Knowledge,
        StrategyArg::Cot => PromptStrategy::Cot,
        StrategyArg::Multimodal => PromptStrategy::Multimodal(TemplateKind::Knowledge),
        StrategyArg::Icl => unreachable!("rejected above"),
    };
    let bundle =
        build_prompt(&prompt_strategy, &representation).map_err(HarnessError::from)?;

    let (config, transport): (BackendConfig, Box<dyn ChatTransport>) = match backend.backend {
        BackendArg::Http => {
            let config = http_config(backend)?;
            let transport = HttpTransport::new(&config).map_err(HarnessError::from)?;
            (config, Box::new(transport))
        }
        BackendArg::Echo => (
            BackendConfig::new("http://echo.invalid", "rule-echo"),
            Box::new(MockTransport::always(rule_label.canonical())),
        ),
    };
    let (label, _raw) = csi_sense::gateway::llm_classify(&config, transport.as_ref(), &bundle)
        .map_err(HarnessError::from)?;
    Ok(label)
}

fn http_config(backend: &BackendArgs) -> Result<BackendConfig, AppError> {
    let base_url = backend
        .base_url
        .clone()
        .ok_or_else(|| AppError::param("--base-url is required with --backend http"))?;
    let model = backend
        .model
        .clone()
        .ok_or_else(|| AppError::param("--model is required with --backend http"))?;
    let config = BackendConfig::new(base_url, model);
    config.validate().map_err(HarnessError::from)?;
    Ok(config)
}

/// Rule-classifier answers for the test split, in manifest order.
fn rule_answers(
    manifest: &DatasetManifest,
    options: &ExperimentOptions,
) -> Result<Vec<String>, AppError> {
    let entries: Vec<&ManifestEntry> = manifest.split_entries(Split::Test).collect();
    let mut answers = Vec::with_capacity(entries.len());
    for entry in entries {
        let series = prepare_series(manifest, entry, options)?;
        let decision = classify(&series, &options.classifier).map_err(HarnessError::from)?;
        answers.push(decision.label.canonical().to_string());
    }
    Ok(answers)
}

fn parse_counts(spec: &str) -> Result<LabelCounts, AppError> {
    let mut counts = LabelCounts::default();
    for part in spec.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| AppError::param(format!("counts entry {part:?} is not label=count")))?;
        let label: ActivityLabel = name.parse().map_err(|e: String| AppError::param(e))?;
        let count: usize = value
            .trim()
            .parse()
            .map_err(|_| AppError::param(format!("invalid count {value:?} for {name}")))?;
        counts.set(label, count);
    }
    if counts.total() == 0 {
        return Err(AppError::param("counts must name at least one segment"));
    }
    Ok(counts)
}
