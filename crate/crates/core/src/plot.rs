//! Self-contained SVG scatter plot of a sweep: one dot per sample, the
//! binned means as a polyline and the fitted line on top.

use std::fmt::Write as _;

use crate::experiments::SweepSummary;

pub const WIDTH: f64 = 640.0;
pub const HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 20.0;
const MARGIN_BOTTOM: f64 = 60.0;

/// Quantity on the horizontal axis.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum XAxis {
    /// Variance divided by its maximum, always in `[0, 1]`.
    #[default]
    Ratio,
    /// Raw amplitude variance, in `[0, 1/N]`.
    Variance,
}

struct Frame {
    x_max: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        MARGIN_LEFT + x / self.x_max * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - MARGIN_BOTTOM - y.clamp(0.0, 1.0) * (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM)
    }
}

/// Renders `summary` as an SVG document.
///
/// Success is on the vertical axis in `[0, 1]`. With [`XAxis::Variance`] the
/// bin centers and the fit are rescaled by `1/N`.
pub fn scatter_svg(summary: &SweepSummary, axis: XAxis) -> String {
    let n = summary.config.grover.n() as f64;
    let (x_max, x_label, scale) = match axis {
        XAxis::Ratio => (1.0, "variance ratio (variance / max variance)", 1.0),
        XAxis::Variance => (1.0 / n, "amplitude variance", 1.0 / n),
    };
    let frame = Frame { x_max };
    let y_label = format!("success {}", summary.config.metric);

    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    )
    .unwrap();
    writeln!(
        s,
        r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    )
    .unwrap();

    // Axes and ticks.
    let (x0, y0) = (frame.px(0.0), frame.py(0.0));
    let (x1, y1) = (frame.px(x_max), frame.py(1.0));
    writeln!(
        s,
        r#"<path d="M{x0:.2} {y1:.2} L{x0:.2} {y0:.2} L{x1:.2} {y0:.2}" stroke="black" fill="none"/>"#
    )
    .unwrap();
    for i in 0..=5 {
        let t = i as f64 / 5.0;
        let (tx, ty) = (frame.px(t * x_max), frame.py(t));
        writeln!(
            s,
            r#"<line x1="{tx:.2}" y1="{y0:.2}" x2="{tx:.2}" y2="{:.2}" stroke="black"/>"#,
            y0 + 5.0
        )
        .unwrap();
        writeln!(
            s,
            r#"<text x="{tx:.2}" y="{:.2}" font-size="11" text-anchor="middle">{}</text>"#,
            y0 + 18.0,
            tick_label(t * x_max)
        )
        .unwrap();
        writeln!(
            s,
            r#"<line x1="{:.2}" y1="{ty:.2}" x2="{x0:.2}" y2="{ty:.2}" stroke="black"/>"#,
            x0 - 5.0
        )
        .unwrap();
        writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-size="11" text-anchor="end">{}</text>"#,
            x0 - 8.0,
            ty + 4.0,
            tick_label(t)
        )
        .unwrap();
    }
    writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" font-size="13" text-anchor="middle">{x_label}</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 15.0
    )
    .unwrap();
    writeln!(
        s,
        r#"<text x="18" y="{:.2}" font-size="13" text-anchor="middle" transform="rotate(-90 18 {:.2})">{y_label}</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    )
    .unwrap();

    s.push_str("<g fill=\"steelblue\" fill-opacity=\"0.35\">\n");
    for r in &summary.records {
        let x = match axis {
            XAxis::Ratio => r.variance_ratio,
            XAxis::Variance => r.variance,
        };
        writeln!(
            s,
            r#"<circle cx="{:.2}" cy="{:.2}" r="1.5"/>"#,
            frame.px(x),
            frame.py(summary.config.metric.of(r))
        )
        .unwrap();
    }
    s.push_str("</g>\n");

    let points: Vec<String> = summary
        .bin_centers
        .iter()
        .zip(&summary.bin_means)
        .filter_map(|(&c, m)| m.map(|m| format!("{:.2},{:.2}", frame.px(c * scale), frame.py(m))))
        .collect();
    if !points.is_empty() {
        writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="darkorange" stroke-width="2"/>"#,
            points.join(" ")
        )
        .unwrap();
    }

    if let Some(fit) = summary.fit_on_bins.or(summary.fit_on_records) {
        // The fit is in ratio units; endpoints at ratio 0 and 1.
        writeln!(
            s,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="firebrick" stroke-width="1.5" stroke-dasharray="6 4"/>"#,
            frame.px(0.0),
            frame.py(fit.predict(0.0)),
            frame.px(scale),
            frame.py(fit.predict(1.0))
        )
        .unwrap();
    }

    s.push_str("</svg>\n");
    s
}

fn tick_label(v: f64) -> String {
    let s = format!("{v:.4}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s.is_empty() || s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}
