//! Deterministic line-plot rendering. The same series and size always
//! produce byte-identical PNG output, so plots can be cached, diffed and
//! asserted on in tests.

use image::codecs::png::PngEncoder;
use image::{ExtendedColorType, ImageEncoder, RgbImage};

use super::font::{glyph, GLYPH_HEIGHT, GLYPH_WIDTH};
use super::PromptError;
use crate::dsp::AmplitudeSeries;

/// A rendered signal plot.
#[derive(Debug, Clone, PartialEq)]
pub struct VisualRepresentation {
    /// PNG-encoded image.
    pub png_bytes: Vec<u8>,
    pub width_px: u32,
    pub height_px: u32,
}

/// Minimum plot edge in pixels.
pub const MIN_PLOT_EDGE: u32 = 100;
/// Default plot size.
pub const DEFAULT_PLOT_WIDTH: u32 = 800;
pub const DEFAULT_PLOT_HEIGHT: u32 = 400;

const BG: [u8; 3] = [255, 255, 255];
const FG: [u8; 3] = [0, 0, 0];
const LINE: [u8; 3] = [54, 100, 169];

const MARGIN_LEFT: u32 = 52;
const MARGIN_RIGHT: u32 = 12;
const MARGIN_TOP: u32 = 10;
const MARGIN_BOTTOM: u32 = 32;

/// Renders amplitude against time as a PNG line plot with labelled axes.
/// The y range is padded 5% beyond the data range; a constant series `c`
/// gets the degenerate-range padding `max(0.05 * |c|, 0.5)`.
pub fn to_plot(
    series: &AmplitudeSeries,
    width_px: u32,
    height_px: u32,
) -> Result<VisualRepresentation, PromptError> {
    if width_px < MIN_PLOT_EDGE || height_px < MIN_PLOT_EDGE {
        return Err(PromptError::PlotTooSmall {
            width: width_px,
            height: height_px,
        });
    }

    let values = series.values();
    let (min, max) = (series.min(), series.max());
    let (lo, hi) = if max > min {
        let pad = 0.05 * (max - min);
        (min - pad, max + pad)
    } else {
        let pad = (0.05 * min.abs()).max(0.5);
        (min - pad, min + pad)
    };
    let t_max = values.len() as f64 / series.sample_rate();

    let mut img = RgbImage::from_pixel(width_px, height_px, image::Rgb(BG));

    // plot area
    let px0 = MARGIN_LEFT;
    let px1 = width_px - MARGIN_RIGHT - 1;
    let py0 = MARGIN_TOP;
    let py1 = height_px - MARGIN_BOTTOM - 1;

    let x_of = |t: f64| px0 as f64 + (px1 - px0) as f64 * (t / t_max);
    let y_of = |v: f64| py1 as f64 - (py1 - py0) as f64 * ((v - lo) / (hi - lo));

    // frame
    draw_rect(&mut img, px0, py0, px1, py1);

    // ticks and tick labels
    for tick in nice_ticks(0.0, t_max) {
        let x = x_of(tick).round() as i64;
        draw_vline(&mut img, x, py1 as i64 + 1, py1 as i64 + 3);
        let label = format_tick(tick, 0.0, t_max);
        let w = (label.chars().count() * (GLYPH_WIDTH + 1)) as i64;
        draw_text(&mut img, &label, x - w / 2, py1 as i64 + 6);
    }
    for tick in nice_ticks(lo, hi) {
        let y = y_of(tick).round() as i64;
        draw_hline(&mut img, px0 as i64 - 3, px0 as i64 - 1, y);
        let label = format_tick(tick, lo, hi);
        let w = (label.chars().count() * (GLYPH_WIDTH + 1)) as i64;
        draw_text(&mut img, &label, px0 as i64 - 5 - w, y - (GLYPH_HEIGHT as i64) / 2);
    }

    // axis titles
    let x_title = "Time (s)";
    let tw = (x_title.chars().count() * (GLYPH_WIDTH + 1)) as i64;
    draw_text(
        &mut img,
        x_title,
        ((px0 + px1) / 2) as i64 - tw / 2,
        py1 as i64 + 16,
    );
    let y_title = "CSI Amplitude";
    let th = (y_title.chars().count() * (GLYPH_WIDTH + 1)) as i64;
    draw_text_rotated(
        &mut img,
        y_title,
        2,
        ((py0 + py1) / 2) as i64 + th / 2,
    );

    // the polyline
    let n = values.len();
    let mut prev: Option<(i64, i64)> = None;
    for (i, &v) in values.iter().enumerate() {
        let t = i as f64 / series.sample_rate();
        let _ = n;
        let p = (x_of(t).round() as i64, y_of(v).round() as i64);
        if let Some(q) = prev {
            draw_line(&mut img, q, p);
        }
        prev = Some(p);
    }

    let mut png_bytes = Vec::new();
    PngEncoder::new(&mut png_bytes)
        .write_image(img.as_raw(), width_px, height_px, ExtendedColorType::Rgb8)
        .map_err(|e| PromptError::Encode(e.to_string()))?;
    Ok(VisualRepresentation {
        png_bytes,
        width_px,
        height_px,
    })
}

/// Around five round-valued ticks covering [lo, hi].
fn nice_ticks(lo: f64, hi: f64) -> Vec<f64> {
    let span = hi - lo;
    let raw = span / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let norm = raw / mag;
    let step = if norm < 1.5 {
        mag
    } else if norm < 3.5 {
        2.0 * mag
    } else if norm < 7.5 {
        5.0 * mag
    } else {
        10.0 * mag
    };
    let mut ticks = Vec::new();
    let mut t = (lo / step).ceil() * step;
    while t <= hi + step * 1e-9 {
        // avoid negative zero labels
        ticks.push(if t == 0.0 { 0.0 } else { t });
        t += step;
    }
    ticks
}

fn format_tick(tick: f64, lo: f64, hi: f64) -> String {
    let span = hi - lo;
    let decimals = if span >= 20.0 {
        0
    } else if span >= 2.0 {
        1
    } else if span >= 0.2 {
        2
    } else {
        3
    };
    format!("{tick:.decimals$}")
}

fn put(img: &mut RgbImage, x: i64, y: i64, color: [u8; 3]) {
    if x >= 0 && y >= 0 && (x as u32) < img.width() && (y as u32) < img.height() {
        img.put_pixel(x as u32, y as u32, image::Rgb(color));
    }
}

fn draw_rect(img: &mut RgbImage, x0: u32, y0: u32, x1: u32, y1: u32) {
    for x in x0..=x1 {
        put(img, x as i64, y0 as i64, FG);
        put(img, x as i64, y1 as i64, FG);
    }
    for y in y0..=y1 {
        put(img, x0 as i64, y as i64, FG);
        put(img, x1 as i64, y as i64, FG);
    }
}

fn draw_hline(img: &mut RgbImage, x0: i64, x1: i64, y: i64) {
    for x in x0..=x1 {
        put(img, x, y, FG);
    }
}

fn draw_vline(img: &mut RgbImage, x: i64, y0: i64, y1: i64) {
    for y in y0..=y1 {
        put(img, x, y, FG);
    }
}

/// Bresenham segment in the line colour.
fn draw_line(img: &mut RgbImage, (x0, y0): (i64, i64), (x1, y1): (i64, i64)) {
    let dx = (x1 - x0).abs();
    let dy = -(y1 - y0).abs();
    let sx = if x0 < x1 { 1 } else { -1 };
    let sy = if y0 < y1 { 1 } else { -1 };
    let (mut x, mut y) = (x0, y0);
    let mut err = dx + dy;
    loop {
        put(img, x, y, LINE);
        if x == x1 && y == y1 {
            break;
        }
        let e2 = 2 * err;
        if e2 >= dy {
            err += dy;
            x += sx;
        }
        if e2 <= dx {
            err += dx;
            y += sy;
        }
    }
}

fn draw_text(img: &mut RgbImage, text: &str, x: i64, y: i64) {
    let mut cx = x;
    for c in text.chars() {
        if let Some(rows) = glyph(c) {
            for (r, bits) in rows.iter().enumerate() {
                for col in 0..GLYPH_WIDTH {
                    if bits & (1 << (GLYPH_WIDTH - 1 - col)) != 0 {
                        put(img, cx + col as i64, y + r as i64, FG);
                    }
                }
            }
        }
        cx += (GLYPH_WIDTH + 1) as i64;
    }
}

/// Text reading bottom-to-top for the y-axis title.
fn draw_text_rotated(img: &mut RgbImage, text: &str, x: i64, y: i64) {
    let mut cy = y;
    for c in text.chars() {
        if let Some(rows) = glyph(c) {
            for (r, bits) in rows.iter().enumerate() {
                for col in 0..GLYPH_WIDTH {
                    if bits & (1 << (GLYPH_WIDTH - 1 - col)) != 0 {
                        put(img, x + r as i64, cy - col as i64, FG);
                    }
                }
            }
        }
        cy -= (GLYPH_WIDTH + 1) as i64;
    }
}
