use super::PromptError;
use crate::dsp::AmplitudeSeries;

/// A series rendered as comma-separated decimal values, downsampled to a
/// fixed point count so prompts stay within context budgets.
#[derive(Debug, Clone, PartialEq)]
pub struct TextRepresentation {
    /// The comma-separated values.
    pub rendered: String,
    /// How many samples the string contains.
    pub num_points: usize,
    /// Decimal places per value.
    pub decimals: usize,
}

/// Default number of points in a text representation.
pub const DEFAULT_TEXT_POINTS: usize = 100;
/// Default decimal places per value.
pub const DEFAULT_TEXT_DECIMALS: usize = 2;

/// Uniform index-based downsampling to `num_points` samples (first and last
/// always included), each rounded half-up to `decimals` places and joined
/// by `", "`.
pub fn to_text(
    series: &AmplitudeSeries,
    num_points: usize,
    decimals: usize,
) -> Result<TextRepresentation, PromptError> {
    if num_points < 2 {
        return Err(PromptError::TooFewPoints { requested: num_points });
    }
    let n = series.len();
    if n < num_points {
        return Err(PromptError::TooFewSamples {
            len: n,
            requested: num_points,
        });
    }
    let values = series.values();
    let step = (n - 1) as f64 / (num_points - 1) as f64;
    let rendered = (0..num_points)
        .map(|i| {
            let idx = (i as f64 * step).round() as usize;
            format_half_up(values[idx.min(n - 1)], decimals)
        })
        .collect::<Vec<_>>()
        .join(", ");
    Ok(TextRepresentation {
        rendered,
        num_points,
        decimals,
    })
}

/// Fixed-point formatting with ties rounded away from zero, built from the
/// scaled integer so no second rounding happens during printing.
fn format_half_up(value: f64, decimals: usize) -> String {
    let scale = 10u64.pow(decimals as u32);
    let scaled = (value.abs() * scale as f64).round() as u64;
    let sign = if value < 0.0 && scaled > 0 { "-" } else { "" };
    let int = scaled / scale;
    if decimals == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{:0width$}", scaled % scale, width = decimals)
    }
}
