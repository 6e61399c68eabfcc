//! Hand-rolled static SVG line plots: axes with ticks, one path per
//! series, a legend, and dashed vertical markers. Panels stack vertically
//! in one document and the output is standalone XML with no external
//! references.

const WIDTH: f64 = 800.0;
const PANEL_HEIGHT: f64 = 420.0;
const MARGIN_LEFT: f64 = 72.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 44.0;
const MARGIN_BOTTOM: f64 = 52.0;
const TICKS: usize = 5;
const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

#[derive(Debug, Clone)]
pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone)]
pub struct Panel {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
    /// Data-space x positions for dashed vertical markers.
    pub vlines: Vec<f64>,
}

fn xml_escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn tick_label(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let magnitude = v.abs();
    if !(1e-3..1e4).contains(&magnitude) {
        return format!("{v:.2e}");
    }
    let mut text = format!("{v:.4}");
    while text.ends_with('0') {
        text.pop();
    }
    if text.ends_with('.') {
        text.pop();
    }
    text
}

/// Padded data range; a degenerate span widens so every value maps inside.
fn padded_range(lo: f64, hi: f64) -> (f64, f64) {
    if lo == hi {
        let pad = lo.abs().max(1.0) * 0.1;
        return (lo - pad, hi + pad);
    }
    let pad = (hi - lo) * 0.05;
    (lo - pad, hi + pad)
}

struct Frame {
    x0: f64,
    y0: f64,
    width: f64,
    height: f64,
    x_range: (f64, f64),
    y_range: (f64, f64),
}

impl Frame {
    fn map_x(&self, x: f64) -> f64 {
        let (lo, hi) = self.x_range;
        self.x0 + (x - lo) / (hi - lo) * self.width
    }

    fn map_y(&self, y: f64) -> f64 {
        let (lo, hi) = self.y_range;
        self.y0 + (1.0 - (y - lo) / (hi - lo)) * self.height
    }
}

fn render_panel(out: &mut String, panel: &Panel, offset: f64) {
    let mut x_lo = f64::INFINITY;
    let mut x_hi = f64::NEG_INFINITY;
    let mut y_lo = f64::INFINITY;
    let mut y_hi = f64::NEG_INFINITY;
    for series in &panel.series {
        for &(x, y) in &series.points {
            x_lo = x_lo.min(x);
            x_hi = x_hi.max(x);
            y_lo = y_lo.min(y);
            y_hi = y_hi.max(y);
        }
    }
    for &v in &panel.vlines {
        x_lo = x_lo.min(v);
        x_hi = x_hi.max(v);
    }
    let frame = Frame {
        x0: MARGIN_LEFT,
        y0: offset + MARGIN_TOP,
        width: WIDTH - MARGIN_LEFT - MARGIN_RIGHT,
        height: PANEL_HEIGHT - MARGIN_TOP - MARGIN_BOTTOM,
        x_range: padded_range(x_lo, x_hi),
        y_range: padded_range(y_lo, y_hi),
    };

    out.push_str(&format!(
        "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"none\" stroke=\"#333333\"/>\n",
        frame.x0, frame.y0, frame.width, frame.height
    ));
    out.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-size=\"16\">{}</text>\n",
        frame.x0 + frame.width / 2.0,
        frame.y0 - 18.0,
        xml_escape(&panel.title)
    ));

    for i in 0..TICKS {
        let t = i as f64 / (TICKS - 1) as f64;
        let (x_min, x_max) = frame.x_range;
        let (y_min, y_max) = frame.y_range;
        let x_val = x_min + t * (x_max - x_min);
        let y_val = y_min + t * (y_max - y_min);
        let px = frame.map_x(x_val);
        let py = frame.map_y(y_val);
        let bottom = frame.y0 + frame.height;
        out.push_str(&format!(
            "<line x1=\"{px:.2}\" y1=\"{bottom:.2}\" x2=\"{px:.2}\" y2=\"{:.2}\" stroke=\"#333333\"/>\n",
            bottom + 5.0
        ));
        out.push_str(&format!(
            "<text x=\"{px:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-size=\"11\">{}</text>\n",
            bottom + 18.0,
            tick_label(x_val)
        ));
        out.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{py:.2}\" x2=\"{:.2}\" y2=\"{py:.2}\" stroke=\"#333333\"/>\n",
            frame.x0 - 5.0,
            frame.x0
        ));
        out.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\" font-size=\"11\">{}</text>\n",
            frame.x0 - 8.0,
            py + 4.0,
            tick_label(y_val)
        ));
    }

    out.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-size=\"13\">{}</text>\n",
        frame.x0 + frame.width / 2.0,
        frame.y0 + frame.height + 38.0,
        xml_escape(&panel.x_label)
    ));
    out.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 {:.2} {:.2})\">{}</text>\n",
        frame.x0 - 52.0,
        frame.y0 + frame.height / 2.0,
        frame.x0 - 52.0,
        frame.y0 + frame.height / 2.0,
        xml_escape(&panel.y_label)
    ));

    for (idx, series) in panel.series.iter().enumerate() {
        let color = PALETTE[idx % PALETTE.len()];
        let mut d = String::new();
        for (k, &(x, y)) in series.points.iter().enumerate() {
            let verb = if k == 0 { 'M' } else { 'L' };
            d.push_str(&format!("{verb}{:.2} {:.2} ", frame.map_x(x), frame.map_y(y)));
        }
        out.push_str(&format!(
            "<path class=\"series\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" d=\"{}\"/>\n",
            d.trim_end()
        ));
        let legend_y = frame.y0 + 16.0 + 16.0 * idx as f64;
        let legend_x = frame.x0 + frame.width - 150.0;
        out.push_str(&format!(
            "<line x1=\"{legend_x:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"{color}\" stroke-width=\"2\"/>\n",
            legend_y - 4.0,
            legend_x + 24.0,
            legend_y - 4.0
        ));
        out.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{legend_y:.2}\" font-size=\"12\">{}</text>\n",
            legend_x + 30.0,
            xml_escape(&series.name)
        ));
    }

    for &v in &panel.vlines {
        let px = frame.map_x(v);
        out.push_str(&format!(
            "<line class=\"vline\" data-x=\"{v}\" x1=\"{px:.2}\" y1=\"{:.2}\" x2=\"{px:.2}\" y2=\"{:.2}\" stroke=\"#d62728\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>\n",
            frame.y0,
            frame.y0 + frame.height
        ));
    }
}

/// Renders the panels stacked vertically into one standalone SVG document.
/// Every panel must hold at least one series with at least one point.
pub fn render(panels: &[Panel]) -> String {
    assert!(!panels.is_empty(), "render needs at least one panel");
    for panel in panels {
        assert!(
            panel.series.iter().any(|s| !s.points.is_empty()),
            "panel {:?} has no data",
            panel.title
        );
    }
    let height = PANEL_HEIGHT * panels.len() as f64;
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{height}\" viewBox=\"0 0 {WIDTH} {height}\">\n"
    );
    out.push_str(&format!(
        "<rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{height}\" fill=\"#ffffff\"/>\n"
    ));
    for (i, panel) in panels.iter().enumerate() {
        render_panel(&mut out, panel, PANEL_HEIGHT * i as f64);
    }
    out.push_str("</svg>\n");
    out
}
