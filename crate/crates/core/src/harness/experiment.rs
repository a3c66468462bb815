use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{evaluate, load_segment, DatasetManifest, EvalReport, HarnessError, ManifestEntry, Prediction, Split};
use crate::classifier::{classify, ClassifierConfig};
use crate::csi::ActivityLabel;
use crate::dsp::{mean_amplitude, savgol_smooth, AmplitudeSeries, DEFAULT_SAVGOL_POLY_ORDER, DEFAULT_SAVGOL_WINDOW};
use crate::gateway::{llm_classify, BackendConfig, ChatTransport, GatewayError};
use crate::prompting::{
    build_prompt, to_plot, to_text, Exemplar, PromptStrategy, Representation, TemplateKind,
    DEFAULT_PLOT_HEIGHT, DEFAULT_PLOT_WIDTH, DEFAULT_TEXT_DECIMALS, DEFAULT_TEXT_POINTS,
};
use crate::util::derive_seed;

/// Which prompt strategy an experiment should use; few-shot exemplars are
/// drawn from the manifest's train split at run time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrategySpec {
    Text(TemplateKind),
    Icl,
    Multimodal(TemplateKind),
}

/// How predictions are produced.
pub enum Method<'a> {
    /// The deterministic rule classifier.
    Rule,
    /// Prompt a chat backend and parse its answers.
    Llm {
        strategy: StrategySpec,
        config: &'a BackendConfig,
        transport: &'a dyn ChatTransport,
    },
}

/// Pipeline settings shared by both methods.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentOptions {
    pub classifier: ClassifierConfig,
    pub smoothing_window: usize,
    pub smoothing_poly_order: usize,
    pub text_points: usize,
    pub text_decimals: usize,
    pub plot_width: u32,
    pub plot_height: u32,
    /// Seed for deterministic few-shot exemplar selection.
    pub exemplar_seed: u64,
    /// Overrides the backend's concurrency cap when set.
    pub concurrency: Option<usize>,
}

impl Default for ExperimentOptions {
    fn default() -> Self {
        Self {
            classifier: ClassifierConfig::default(),
            smoothing_window: DEFAULT_SAVGOL_WINDOW,
            smoothing_poly_order: DEFAULT_SAVGOL_POLY_ORDER,
            text_points: DEFAULT_TEXT_POINTS,
            text_decimals: DEFAULT_TEXT_DECIMALS,
            plot_width: DEFAULT_PLOT_WIDTH,
            plot_height: DEFAULT_PLOT_HEIGHT,
            exemplar_seed: 0,
            concurrency: None,
        }
    }
}

/// Loads a segment and produces the smoothed mean-amplitude series the
/// classifier and prompts consume.
pub fn prepare_series(
    manifest: &DatasetManifest,
    entry: &ManifestEntry,
    options: &ExperimentOptions,
) -> Result<AmplitudeSeries, HarnessError> {
    let segment = load_segment(&manifest.segment_path(entry))?;
    let amplitude = mean_amplitude(&segment)?;
    Ok(savgol_smooth(
        &amplitude,
        options.smoothing_window,
        options.smoothing_poly_order,
    )?)
}

/// Runs a method over the manifest's test split and aggregates an
/// [`EvalReport`]. Segments are processed in manifest order; with the LLM
/// method, failed or unparseable calls count as unparseable predictions and
/// the run continues.
pub fn run_experiment(
    manifest: &DatasetManifest,
    method: Method<'_>,
    options: &ExperimentOptions,
) -> Result<EvalReport, HarnessError> {
    let test: Vec<&ManifestEntry> = manifest.split_entries(Split::Test).collect();
    if test.is_empty() {
        return Err(HarnessError::InvalidInput(
            "manifest has no test entries".into(),
        ));
    }

    let predictions: Vec<Prediction> = match method {
        Method::Rule => {
            let mut out = Vec::with_capacity(test.len());
            for entry in &test {
                let series = prepare_series(manifest, entry, options)?;
                let decision = classify(&series, &options.classifier)?;
                out.push((entry.label, Some(decision.label)));
            }
            out
        }
        Method::Llm {
            strategy,
            config,
            transport,
        } => {
            let prompt_strategy = resolve_strategy(strategy, manifest, options)?;
            let workers = options
                .concurrency
                .unwrap_or(config.concurrency)
                .max(1)
                .min(test.len());
            run_llm(manifest, &test, &prompt_strategy, config, transport, options, workers)?
        }
    };

    evaluate(&predictions)
}

/// Few-shot strategies pick one train exemplar per label, chosen
/// deterministically from the exemplar seed.
fn resolve_strategy(
    spec: StrategySpec,
    manifest: &DatasetManifest,
    options: &ExperimentOptions,
) -> Result<PromptStrategy, HarnessError> {
    match spec {
        StrategySpec::Text(TemplateKind::Base) => Ok(PromptStrategy::Base),
        StrategySpec::Text(TemplateKind::Knowledge) => Ok(PromptStrategy::Knowledge),
        StrategySpec::Text(TemplateKind::Cot) => Ok(PromptStrategy::Cot),
        StrategySpec::Multimodal(kind) => Ok(PromptStrategy::Multimodal(kind)),
        StrategySpec::Icl => {
            let mut exemplars = Vec::with_capacity(4);
            for label in ActivityLabel::ALL {
                let candidates: Vec<&ManifestEntry> = manifest
                    .split_entries(Split::Train)
                    .filter(|e| e.label == label)
                    .collect();
                if candidates.is_empty() {
                    return Err(HarnessError::InvalidInput(format!(
                        "few-shot prompts need at least one train segment per label; none for {label}"
                    )));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(
                    options.exemplar_seed,
                    label.index() as u64,
                ));
                let entry = candidates[rng.gen_range(0..candidates.len())];
                let series = prepare_series(manifest, entry, options)?;
                let text = to_text(&series, options.text_points, options.text_decimals)?;
                exemplars.push(Exemplar {
                    representation: Representation::Text(text),
                    label,
                });
            }
            Ok(PromptStrategy::Icl(exemplars))
        }
    }
}

/// One prediction through the prompt/gateway/parse path. IO errors
/// propagate; gateway and parse failures map to an unparseable prediction.
fn llm_predict(
    manifest: &DatasetManifest,
    entry: &ManifestEntry,
    strategy: &PromptStrategy,
    config: &BackendConfig,
    transport: &dyn ChatTransport,
    options: &ExperimentOptions,
) -> Result<Option<ActivityLabel>, HarnessError> {
    let series = prepare_series(manifest, entry, options)?;
    let representation = match strategy {
        PromptStrategy::Multimodal(_) => Representation::Visual(to_plot(
            &series,
            options.plot_width,
            options.plot_height,
        )?),
        _ => Representation::Text(to_text(
            &series,
            options.text_points,
            options.text_decimals,
        )?),
    };
    let bundle = build_prompt(strategy, &representation)?;
    match llm_classify(config, transport, &bundle) {
        Ok((label, _raw)) => Ok(Some(label)),
        Err(GatewayError::InvalidConfig(m)) => Err(HarnessError::Gateway(
            GatewayError::InvalidConfig(m),
        )),
        Err(GatewayError::InvalidRequest(m)) => Err(HarnessError::Gateway(
            GatewayError::InvalidRequest(m),
        )),
        // Per-segment failures (exhausted retries, auth, bad answers)
        // record an unparseable prediction and the run continues.
        Err(_) => Ok(None),
    }
}

fn run_llm(
    manifest: &DatasetManifest,
    test: &[&ManifestEntry],
    strategy: &PromptStrategy,
    config: &BackendConfig,
    transport: &dyn ChatTransport,
    options: &ExperimentOptions,
    workers: usize,
) -> Result<Vec<Prediction>, HarnessError> {
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Result<Option<ActivityLabel>, HarnessError>>>> =
        Mutex::new((0..test.len()).map(|_| None).collect());

    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= test.len() {
                    break;
                }
                let result = llm_predict(manifest, test[i], strategy, config, transport, options);
                slots.lock().expect("result slot lock")[i] = Some(result);
            });
        }
    });

    let slots = slots.into_inner().expect("result slot lock");
    let mut predictions = Vec::with_capacity(test.len());
    for (entry, slot) in test.iter().zip(slots) {
        let predicted = slot.expect("every index visited")?;
        predictions.push((entry.label, predicted));
    }
    Ok(predictions)
}
