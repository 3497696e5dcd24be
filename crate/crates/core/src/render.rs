//! Text and SVG drawings of arc diagrams and construction traces.
//!
//! Output is a pure function of the input: no timestamps, no hash-ordered
//! iteration, fixed float formatting.

use std::fmt::Write as _;

use crate::bijection::ConstructionTrace;
use crate::error::{Error, Result};
use crate::partition::{Arc, ArcDiagram};
use crate::registry::{Named, Registry};

#[derive(Debug, Clone, PartialEq)]
pub struct RenderSpec {
    /// Horizontal distance between neighbouring points, in px.
    pub spacing: f64,
    pub margin: f64,
    pub labels: bool,
    pub point_radius: f64,
}

impl Default for RenderSpec {
    fn default() -> Self {
        Self {
            spacing: 30.0,
            margin: 20.0,
            labels: true,
            point_radius: 3.0,
        }
    }
}

impl RenderSpec {
    pub fn validate(&self) -> Result<()> {
        let finite = [self.spacing, self.margin, self.point_radius]
            .iter()
            .all(|v| v.is_finite() && *v >= 0.0);
        if !finite || self.spacing <= 0.0 {
            return Err(Error::InvalidDiagram(format!("bad render spec {self:?}")));
        }
        Ok(())
    }
}

/// Row of every arc above the baseline, 1 = lowest.
///
/// An arc sits one row above everything it contains; of two arcs sharing an
/// endpoint, the longer one sits above the shorter.
fn arc_rows(arcs: &[Arc]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..arcs.len()).collect();
    order.sort_by_key(|&i| (arcs[i].span(), arcs[i].left));
    let mut rows = vec![0usize; arcs.len()];
    for (pos, &i) in order.iter().enumerate() {
        let a = arcs[i];
        let below = order[..pos]
            .iter()
            .filter(|&&j| {
                let b = arcs[j];
                a.contains(&b) || (b.span() < a.span() && (b.right == a.left || b.left == a.right))
            })
            .map(|&j| rows[j])
            .max()
            .unwrap_or(0);
        rows[i] = below + 1;
    }
    rows
}

/// Arcs drawn as brackets over a numbered baseline:
///
/// ```text
/// +-------+
/// | +---+ |
/// 1 2 3 4 5
/// ```
pub fn render_ascii(d: &ArcDiagram) -> String {
    let labels: Vec<String> = (1..=d.point_count()).map(|p| p.to_string()).collect();
    let baseline = labels.join(" ");
    let mut column = Vec::with_capacity(labels.len());
    let mut offset = 0;
    for l in &labels {
        column.push(offset);
        offset += l.len() + 1;
    }
    let col = |p: u32| column[p as usize - 1];
    let arcs = d.arcs();
    let rows = arc_rows(arcs);
    let height = rows.iter().copied().max().unwrap_or(0);
    let width = baseline.len();
    let mut out = String::new();
    for row in (1..=height).rev() {
        let mut line = vec![b' '; width];
        for (a, &r) in arcs.iter().zip(&rows) {
            let (l, rt) = (col(a.left), col(a.right));
            if r == row {
                for cell in &mut line[l + 1..rt] {
                    *cell = b'-';
                }
                line[l] = b'+';
                line[rt] = b'+';
            } else if r > row {
                for c in [l, rt] {
                    if line[c] == b' ' {
                        line[c] = b'|';
                    }
                }
            }
        }
        let text = String::from_utf8(line).expect("ascii");
        out.push_str(text.trim_end());
        out.push('\n');
    }
    out.push_str(&baseline);
    out.push('\n');
    out
}

/// Shortest round-trip decimal form; integral values print without a
/// fractional part.
fn num(v: f64) -> String {
    if v == v.trunc() && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}

struct Panel {
    width: f64,
    height: f64,
    body: String,
}

fn svg_panel(d: &ArcDiagram, spec: &RenderSpec) -> Panel {
    let m = d.point_count() as f64;
    let max_span = d.arcs().iter().map(Arc::span).max().unwrap_or(0) as f64;
    let label_room = if spec.labels { 16.0 } else { 0.0 };
    let width = 2.0 * spec.margin + (m - 1.0) * spec.spacing;
    let base_y = spec.margin + max_span * spec.spacing / 2.0;
    let height = base_y + spec.point_radius + label_room + spec.margin;
    let x = |p: u32| spec.margin + (p as f64 - 1.0) * spec.spacing;

    let mut body = String::new();
    let _ = writeln!(
        body,
        r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black" stroke-width="1"/>"#,
        num(x(1)),
        num(base_y),
        num(x(d.point_count())),
        num(base_y)
    );
    for a in d.arcs() {
        let r = a.span() as f64 * spec.spacing / 2.0;
        let _ = writeln!(
            body,
            r#"<path d="M {} {} A {} {} 0 0 1 {} {}" fill="none" stroke="black" stroke-width="1.5"/>"#,
            num(x(a.left)),
            num(base_y),
            num(r),
            num(r),
            num(x(a.right)),
            num(base_y)
        );
    }
    for p in 1..=d.point_count() {
        let _ = writeln!(
            body,
            r#"<circle cx="{}" cy="{}" r="{}" fill="black"/>"#,
            num(x(p)),
            num(base_y),
            num(spec.point_radius)
        );
        if spec.labels {
            let _ = writeln!(
                body,
                r#"<text x="{}" y="{}" font-family="monospace" font-size="12" text-anchor="middle">{p}</text>"#,
                num(x(p)),
                num(base_y + spec.point_radius + 14.0)
            );
        }
    }
    Panel {
        width,
        height,
        body,
    }
}

fn svg_document(width: f64, height: f64, body: &str) -> String {
    format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n{body}</svg>\n",
        w = num(width),
        h = num(height),
    )
}

/// Points on a horizontal baseline, one semicircle above it per arc.
pub fn render_svg(d: &ArcDiagram, spec: &RenderSpec) -> String {
    let panel = svg_panel(d, spec);
    svg_document(panel.width, panel.height, &panel.body)
}

fn group_caption(first: usize, last: usize) -> String {
    (first..=last)
        .map(|i| format!("D{i}"))
        .collect::<Vec<_>>()
        .join(" = ")
}

/// One panel per distinct diagram of the trace, stacked top to bottom, each
/// captioned with the diagrams it stands for.
pub fn render_trace(t: &ConstructionTrace, spec: &RenderSpec) -> String {
    const CAPTION: f64 = 20.0;
    let mut body = String::new();
    let mut y = 0.0;
    let mut width: f64 = 0.0;
    for g in t.distinct_groups() {
        let panel = svg_panel(g.diagram, spec);
        width = width.max(panel.width);
        let _ = writeln!(
            body,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="14">{}</text>"#,
            num(spec.margin),
            num(y + CAPTION - 4.0),
            group_caption(g.first, g.last)
        );
        let _ = write!(
            body,
            "<svg x=\"0\" y=\"{}\" width=\"{}\" height=\"{}\">\n{}</svg>\n",
            num(y + CAPTION),
            num(panel.width),
            num(panel.height),
            panel.body
        );
        y += CAPTION + panel.height;
    }
    svg_document(width, y, &body)
}

/// Text form of a trace: one captioned ASCII drawing per distinct diagram.
pub fn render_trace_ascii(t: &ConstructionTrace) -> String {
    let mut out = String::new();
    for (i, g) in t.distinct_groups().iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&group_caption(g.first, g.last));
        out.push('\n');
        out.push_str(&render_ascii(g.diagram));
    }
    out
}

/// An output format selectable by name.
pub trait Renderer: Named + Send + Sync {
    /// Conventional file extension.
    fn extension(&self) -> &'static str;
    fn diagram(&self, d: &ArcDiagram, spec: &RenderSpec) -> String;
    fn trace(&self, t: &ConstructionTrace, spec: &RenderSpec) -> String;
}

pub struct Ascii;

impl Named for Ascii {
    fn name(&self) -> &'static str {
        "ascii"
    }
    fn description(&self) -> &'static str {
        "bracket drawing over a numbered baseline"
    }
}

impl Renderer for Ascii {
    fn extension(&self) -> &'static str {
        "txt"
    }
    fn diagram(&self, d: &ArcDiagram, _: &RenderSpec) -> String {
        render_ascii(d)
    }
    fn trace(&self, t: &ConstructionTrace, _: &RenderSpec) -> String {
        render_trace_ascii(t)
    }
}

pub struct Svg;

impl Named for Svg {
    fn name(&self) -> &'static str {
        "svg"
    }
    fn description(&self) -> &'static str {
        "SVG 1.1 with semicircular arcs"
    }
}

impl Renderer for Svg {
    fn extension(&self) -> &'static str {
        "svg"
    }
    fn diagram(&self, d: &ArcDiagram, spec: &RenderSpec) -> String {
        render_svg(d, spec)
    }
    fn trace(&self, t: &ConstructionTrace, spec: &RenderSpec) -> String {
        render_trace(t, spec)
    }
}

pub fn renderers() -> Registry<dyn Renderer> {
    let mut reg: Registry<dyn Renderer> = Registry::new("format");
    reg.register(Box::new(Ascii)).register(Box::new(Svg));
    reg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bijection::{initial_diagram, inverse_trace};
    use crate::partition::Partition;

    const PI13: &str = "1,13|2,4,6,12|3|5|7,11|8,10|9";

    fn diagram(text: &str) -> ArcDiagram {
        text.parse::<Partition>().unwrap().to_arcs().unwrap()
    }

    fn count(hay: &str, needle: &str) -> usize {
        hay.matches(needle).count()
    }

    #[test]
    fn ascii_baseline_only() {
        let d = ArcDiagram::new(3, vec![]).unwrap();
        assert_eq!(render_ascii(&d), "1 2 3\n");
    }

    #[test]
    fn ascii_nested_pair() {
        assert_eq!(
            render_ascii(&diagram("1,5|2,4|3")),
            "+-------+\n| +---+ |\n1 2 3 4 5\n"
        );
    }

    #[test]
    fn ascii_example_depth() {
        let text = render_ascii(&diagram(PI13));
        assert_eq!(text.lines().count(), 5);
        assert_eq!(
            text.lines().last().unwrap(),
            "1 2 3 4 5 6 7 8 9 10 11 12 13"
        );
    }

    #[test]
    fn ascii_chain_shares_row() {
        assert_eq!(
            render_ascii(&diagram("1,3,5|2|4")),
            "+---+---+\n1 2 3 4 5\n"
        );
    }

    #[test]
    fn ascii_longer_shared_arc_goes_higher() {
        // (1,3) and (3,7) share 3; (3,7) contains nothing yet must sit above.
        let text = render_ascii(&diagram("1,3,7|2|4|5|6"));
        assert_eq!(text, "    +-------+\n+---+       |\n1 2 3 4 5 6 7\n");
    }

    #[test]
    fn svg_counts() {
        let spec = RenderSpec::default();
        let one = render_svg(&initial_diagram(0), &spec);
        assert_eq!(count(&one, "<circle"), 1);
        assert_eq!(count(&one, "<path"), 0);
        let six = render_svg(&initial_diagram(6), &spec);
        assert_eq!((count(&six, "<circle"), count(&six, "<path")), (13, 6));
        let pi = render_svg(&diagram(PI13), &spec);
        assert_eq!((count(&pi, "<circle"), count(&pi, "<path")), (13, 6));
        assert_eq!(pi, render_svg(&diagram(PI13), &spec));
        roxmltree::Document::parse(&pi).unwrap();
    }

    #[test]
    fn svg_uses_only_allowed_elements() {
        let t = inverse_trace(&"1 1 1 4 1 2 1 4".parse().unwrap()).unwrap();
        let doc = render_trace(&t, &RenderSpec::default());
        let parsed = roxmltree::Document::parse(&doc).unwrap();
        for node in parsed.descendants().filter(|n| n.is_element()) {
            assert!(
                ["svg", "line", "circle", "path", "text"].contains(&node.tag_name().name()),
                "{}",
                node.tag_name().name()
            );
        }
    }

    #[test]
    fn trace_panels() {
        let spec = RenderSpec::default();
        let panels = |s: &str| {
            let t = inverse_trace(&s.parse().unwrap()).unwrap();
            count(&render_trace(&t, &spec), "<svg") - 1
        };
        assert_eq!(panels("1 1 1 1"), 1);
        assert_eq!(panels("1 1 1 4 1 2 1 4"), 4);
        assert_eq!(panels("1 2"), 2);
        let t = inverse_trace(&"1 1 1 4 1 2 1 4".parse().unwrap()).unwrap();
        assert!(render_trace(&t, &spec).contains(">D6 = D7 = D8 = D9</text>"));
        assert!(render_trace_ascii(&t).starts_with("D1\n"));
    }

    #[test]
    fn half_pixel_spacing_formats_cleanly() {
        let spec = RenderSpec {
            spacing: 15.0,
            ..RenderSpec::default()
        };
        let svg = render_svg(&diagram("1,5|2,4|3"), &spec);
        assert!(svg.contains("A 15 15") && svg.contains("A 30 30"));
        let odd = RenderSpec {
            spacing: 5.0,
            ..RenderSpec::default()
        };
        assert!(render_svg(&diagram("1,3|2"), &odd).contains("A 5 5"));
        assert!(render_svg(&diagram("1,5|2,4|3"), &odd).contains("A 5 5"));
        assert!(render_svg(&diagram("1,4|2|3"), &odd).contains("A 7.5 7.5"));
        assert!(RenderSpec {
            spacing: 0.0,
            ..RenderSpec::default()
        }
        .validate()
        .is_err());
    }

    #[test]
    fn registry_lookup() {
        let reg = renderers();
        assert_eq!(reg.names(), vec!["ascii", "svg"]);
        assert_eq!(reg.get("svg").unwrap().extension(), "svg");
        assert!(reg.get("png").is_err());
    }
}
