use crate::commands::view_of;
use crate::{CliError, Input, Report};
use clap::Args;
use sepgraph::geom::{parse_q, Point};
use sepgraph::labeled_graph::{route_reference_curves_seeded, Mode};
use std::fmt::Write;

/// Presentation settings; colors are any SVG color strings.
#[derive(Args, Clone, Debug)]
pub struct RenderOptions {
    /// Image width in pixels.
    #[arg(long, default_value_t = 800.0)]
    pub width: f64,
    #[arg(long, default_value_t = 1.5)]
    pub stroke_width: f64,
    #[arg(long, default_value = "#8d99ae")]
    pub obstacle_color: String,
    #[arg(long, default_value = "#e76f51")]
    pub separator_color: String,
    #[arg(long, default_value = "#457b9d")]
    pub curve_color: String,
    #[arg(long, default_value = "#2a9d8f")]
    pub witness_color: String,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            width: 800.0,
            stroke_width: 1.5,
            obstacle_color: "#8d99ae".into(),
            separator_color: "#e76f51".into(),
            curve_color: "#457b9d".into(),
            witness_color: "#2a9d8f".into(),
        }
    }
}

struct Frame {
    min: (f64, f64),
    max: (f64, f64),
    scale: f64,
}

impl Frame {
    fn new<'a>(pts: impl Iterator<Item = &'a Point>, width: f64) -> Frame {
        let (mut lo, mut hi) = ((f64::INFINITY, f64::INFINITY), (f64::NEG_INFINITY, f64::NEG_INFINITY));
        for p in pts {
            let (x, y) = p.to_f64();
            lo = (lo.0.min(x), lo.1.min(y));
            hi = (hi.0.max(x), hi.1.max(y));
        }
        if !lo.0.is_finite() {
            lo = (0.0, 0.0);
            hi = (1.0, 1.0);
        }
        let pad = 0.05 * (hi.0 - lo.0).max(hi.1 - lo.1).max(1.0);
        let min = (lo.0 - pad, lo.1 - pad);
        let max = (hi.0 + pad, hi.1 + pad);
        Frame { min, max, scale: width / (max.0 - min.0) }
    }

    fn height(&self) -> f64 {
        (self.max.1 - self.min.1) * self.scale
    }

    fn xy(&self, p: &Point) -> (f64, f64) {
        let (x, y) = p.to_f64();
        ((x - self.min.0) * self.scale, (self.max.1 - y) * self.scale)
    }

    fn coords(&self, pts: &[Point]) -> String {
        pts.iter()
            .map(|p| {
                let (x, y) = self.xy(p);
                format!("{x:.3},{y:.3}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Draws obstacles, points, the reference curves of the relevant graph mode
/// (dashed) and, for removal reports, the witness curve (solid). Output
/// depends only on the input and options.
pub fn render_svg(input: &Input, seed: u64, opts: &RenderOptions) -> Result<String, CliError> {
    if !(opts.width > 0.0 && opts.stroke_width >= 0.0) {
        return Err(CliError::invalid("width must be positive and stroke width non-negative"));
    }
    let sc = input.scene();
    let (mode, seed, highlight) = view_of(input, Mode::St, seed);
    let curves = match (input, sc.st_pair()) {
        (Input::Scene(_), None) => None,
        _ => Some(route_reference_curves_seeded(sc, mode, seed)?),
    };
    let (witness, removed) = match input {
        Input::Report(r, _) => match r.as_ref() {
            Report::Remove { result, .. } => {
                let pts: Option<Vec<Point>> = result
                    .witness
                    .iter()
                    .map(|[x, y]| Some(Point::new(parse_q(x)?, parse_q(y)?)))
                    .collect();
                (Some(pts.ok_or_else(|| CliError::invalid("bad witness coordinate"))?), true)
            }
            _ => (None, false),
        },
        Input::Scene(_) => (None, false),
    };

    let mut all: Vec<&Point> = sc.obstacles.iter().flat_map(|o| o.ring.iter()).collect();
    all.extend(sc.points.iter().map(|p| &p.p));
    if let Some(rc) = &curves {
        all.extend(rc.curves.iter().flat_map(|c| c.vertices.iter()));
    }
    let fr = Frame::new(all.into_iter(), opts.width);
    let sw = opts.stroke_width;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.3} {h:.3}">"#,
        w = opts.width,
        h = fr.height()
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for o in &sc.obstacles {
        let picked = highlight.contains(&o.id);
        let style = match (picked, removed) {
            (true, true) => format!(r#"fill="none" stroke="{}" stroke-dasharray="4 3""#, opts.separator_color),
            (true, false) => format!(r#"fill="{0}" fill-opacity="0.7" stroke="{0}""#, opts.separator_color),
            _ => format!(r#"fill="{0}" fill-opacity="0.5" stroke="{0}""#, opts.obstacle_color),
        };
        let _ = writeln!(
            s,
            r#"<polygon id="obstacle-{}" points="{}" {style} stroke-width="{sw}"/>"#,
            o.id,
            fr.coords(&o.ring)
        );
    }
    if let Some(rc) = &curves {
        for (i, c) in rc.curves.iter().enumerate() {
            let _ = writeln!(
                s,
                r#"<polyline id="curve-{i}" points="{}" fill="none" stroke="{}" stroke-width="{sw}" stroke-dasharray="6 4"/>"#,
                fr.coords(&c.vertices),
                opts.curve_color
            );
        }
        if matches!(rc.mode, Mode::Points(_)) {
            let (x, y) = fr.xy(&sc.effective_anchor());
            let _ = writeln!(s, r#"<rect id="anchor" x="{:.3}" y="{:.3}" width="6" height="6" fill="black"/>"#, x - 3.0, y - 3.0);
        }
    }
    if let Some(w) = &witness {
        let _ = writeln!(
            s,
            r#"<polyline id="witness" points="{}" fill="none" stroke="{}" stroke-width="{}"/>"#,
            fr.coords(w),
            opts.witness_color,
            2.0 * sw
        );
    }
    for p in &sc.points {
        let (x, y) = fr.xy(&p.p);
        let _ = writeln!(s, r#"<circle cx="{x:.3}" cy="{y:.3}" r="4" fill="black"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="12">{}</text>"#,
            x + 6.0,
            y - 6.0,
            escape(&p.name)
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
