//! Signal representations and prompt assembly for chat-completion models.
//!
//! A series becomes either a [`TextRepresentation`] (downsampled,
//! comma-separated decimals) or a [`VisualRepresentation`] (a deterministic
//! PNG line plot). [`build_prompt`] wraps a representation in one of the
//! five strategies and [`parse_answer`] maps a model's reply back onto the
//! label set.

mod builder;
mod font;
mod parse;
mod plot;
mod templates;
mod text;

pub use builder::{
    build_prompt, CoTExemplar, Exemplar, PromptBundle, PromptStrategy, Representation,
};
pub use parse::parse_answer;
pub use plot::{
    to_plot, VisualRepresentation, DEFAULT_PLOT_HEIGHT, DEFAULT_PLOT_WIDTH, MIN_PLOT_EDGE,
};
pub use templates::{
    TemplateKind, BASE_TEMPLATE, COT_TEMPLATE, DATA_PLACEHOLDER, IMAGE_ATTACHED_SENTENCE,
    KNOWLEDGE_TEMPLATE, ONE_WORD_INSTRUCTION,
};
pub use text::{to_text, TextRepresentation, DEFAULT_TEXT_DECIMALS, DEFAULT_TEXT_POINTS};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PromptError {
    #[error("series has {len} samples but {requested} text points were requested")]
    TooFewSamples { len: usize, requested: usize },
    #[error("at least 2 text points are required, got {requested}")]
    TooFewPoints { requested: usize },
    #[error("plot dimensions must be at least 100x100 px, got {width}x{height}")]
    PlotTooSmall { width: u32, height: u32 },
    #[error("{strategy} strategy requires a {expected} representation")]
    RepresentationMismatch {
        strategy: &'static str,
        expected: &'static str,
    },
    #[error("few-shot exemplars must use text representations")]
    NonTextExemplar,
    #[error("png encoding failed: {0}")]
    Encode(String),
    #[error("no activity label found in answer: {raw:?}")]
    UnparseableAnswer { raw: String },
}
