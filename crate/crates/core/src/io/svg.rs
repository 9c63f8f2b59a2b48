use std::fmt::Write as _;

use super::docs::BreaklineDoc;
use super::field::GridField;
use crate::error::{Error, Result};
use crate::geometry::AxisBox;

const WIDTH: f64 = 600.0;
const MARGIN: f64 = 10.0;
const FIRST_STROKE: &str = "#1f5fbf";
const SECOND_STROKE: &str = "#c0392b";
const STROKE_WIDTH: f64 = 1.5;

struct Canvas {
    bx: AxisBox,
    w: f64,
    h: f64,
}

impl Canvas {
    fn new(bx: &AxisBox) -> Result<Self> {
        if bx.dim() != 2 {
            return Err(Error::Unsupported(format!("rendering needs 2D data, got dimension {}", bx.dim())));
        }
        let (dx, dy) = (bx.hi[0] - bx.lo[0], bx.hi[1] - bx.lo[1]);
        Ok(Canvas { bx: bx.clone(), w: WIDTH, h: WIDTH * dy / dx })
    }

    fn px(&self, p: [f64; 2]) -> (f64, f64) {
        let x = MARGIN + (p[0] - self.bx.lo[0]) / (self.bx.hi[0] - self.bx.lo[0]) * self.w;
        let y = MARGIN + (self.bx.hi[1] - p[1]) / (self.bx.hi[1] - self.bx.lo[1]) * self.h;
        (x, y)
    }

    fn open(&self) -> String {
        let (w, h) = (self.w + 2.0 * MARGIN, self.h + 2.0 * MARGIN);
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.3} {h:.3}\">\n<rect x=\"0\" y=\"0\" width=\"{w:.3}\" height=\"{h:.3}\" fill=\"#ffffff\"/>\n"
        )
    }

    fn frame(&self, s: &mut String) {
        writeln!(
            s,
            "<rect x=\"{MARGIN:.3}\" y=\"{MARGIN:.3}\" width=\"{:.3}\" height=\"{:.3}\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1\"/>",
            self.w, self.h
        )
        .unwrap();
    }
}

/// Grayscale heatmap, 0 white and 1 black; values are clamped to `[0, 1]`.
/// Runs of equal gray level in a row are merged into one rectangle.
pub fn render_field(field: &GridField) -> Result<String> {
    let c = Canvas::new(&field.bx)?;
    let (nx, ny) = (field.resolution[0], field.resolution[1]);
    let (cw, ch) = (c.w / nx as f64, c.h / ny as f64);
    let mut s = c.open();
    for j in 0..ny {
        let level = |i: usize| 255 - (field.get(i, j).clamp(0.0, 1.0) * 255.0).round() as u8;
        let y = MARGIN + (ny - 1 - j) as f64 * ch;
        let mut i = 0;
        while i < nx {
            let g = level(i);
            let mut k = i + 1;
            while k < nx && level(k) == g {
                k += 1;
            }
            writeln!(
                s,
                "<rect x=\"{:.3}\" y=\"{y:.3}\" width=\"{:.3}\" height=\"{ch:.3}\" fill=\"#{g:02x}{g:02x}{g:02x}\"/>",
                MARGIN + i as f64 * cw,
                (k - i) as f64 * cw,
            )
            .unwrap();
            i = k;
        }
    }
    c.frame(&mut s);
    s.push_str("</svg>\n");
    Ok(s)
}

/// First-layer lines solid, second-layer pieces dashed in a second colour.
pub fn render_breaklines(doc: &BreaklineDoc) -> Result<String> {
    let c = Canvas::new(&doc.bx)?;
    let mut s = c.open();
    c.frame(&mut s);
    let mut line = |a: [f64; 2], b: [f64; 2], stroke: &str, dash: bool| {
        let ((x1, y1), (x2, y2)) = (c.px(a), c.px(b));
        let extra = if dash { " stroke-dasharray=\"4 3\"" } else { "" };
        writeln!(
            s,
            "<line x1=\"{x1:.3}\" y1=\"{y1:.3}\" x2=\"{x2:.3}\" y2=\"{y2:.3}\" stroke=\"{stroke}\" stroke-width=\"{STROKE_WIDTH}\"{extra}/>"
        )
        .unwrap();
    };
    for seg in &doc.first_layer {
        line(seg.a, seg.b, FIRST_STROKE, false);
    }
    for n in &doc.second_layer {
        for seg in &n.segments {
            line(seg.a, seg.b, SECOND_STROKE, true);
        }
    }
    s.push_str("</svg>\n");
    Ok(s)
}
