use quiver_potential::Qp;
use std::f64::consts::PI;
use std::fmt::Write;
use strand_map::{StrandDiagram, StrandMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Svg,
    Tikz,
}

/// Positions for drawing: marked points on a circle of radius `RADIUS`
/// and crossings on concentric rings by distance to the boundary.
#[derive(Clone, Debug)]
pub struct Layout {
    pub points: Vec<(f64, f64)>,
    pub crossings: Vec<(f64, f64)>,
}

pub const RADIUS: f64 = 200.0;
const SIZE: f64 = 500.0;
const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"];

fn polar(r: f64, angle: f64) -> (f64, f64) {
    (r * angle.cos(), r * angle.sin())
}

fn point_angle(i: usize, n: usize) -> f64 {
    -PI / 2.0 + 2.0 * PI * i as f64 / n.max(1) as f64
}

impl Layout {
    pub fn new(d: &StrandDiagram) -> Layout {
        let n = d.n_points();
        let points = (0..n).map(|i| polar(RADIUS, point_angle(i, n))).collect();
        let depth: Vec<usize> = d
            .crossings()
            .iter()
            .map(|c| {
                [c.a, c.b].iter().map(|v| (v.pos + 1).min(d.strand(v.strand).len() - v.pos)).min().unwrap_or(1)
            })
            .collect();
        let deepest = depth.iter().copied().max().unwrap_or(0);
        let mean_angle = |c: usize| {
            let x = d.crossing(c);
            let (mut sx, mut sy) = (0.0, 0.0);
            for s in [x.a.strand, x.b.strand] {
                for p in [s, d.tau()[s]] {
                    let (px, py) = polar(1.0, point_angle(p, n));
                    sx += px;
                    sy += py;
                }
            }
            if sx.hypot(sy) < 1e-9 {
                point_angle(x.a.strand, n)
            } else {
                sy.atan2(sx)
            }
        };
        let mut crossings = vec![(0.0, 0.0); d.n_crossings()];
        for ring in 1..=deepest {
            let mut on_ring: Vec<(f64, usize)> =
                (0..d.n_crossings()).filter(|&c| depth[c] == ring).map(|c| (mean_angle(c), c)).collect();
            on_ring.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            let r = RADIUS * (1.0 - ring as f64 / (deepest as f64 + 1.0));
            let start = on_ring.first().map(|x| x.0).unwrap_or(0.0);
            let step = 2.0 * PI / on_ring.len().max(1) as f64;
            for (k, &(angle, c)) in on_ring.iter().enumerate() {
                let spread = start + step * k as f64;
                let a = if on_ring.len() <= 2 { angle } else { spread };
                crossings[c] = polar(r, a);
            }
        }
        Layout { points, crossings }
    }

    /// The nodes of strand `s`: start point, crossings in order, end point.
    pub fn strand_nodes(&self, d: &StrandDiagram, s: usize) -> Vec<(f64, f64)> {
        let mut out = vec![self.points[s]];
        out.extend(d.strand(s).iter().map(|&c| self.crossings[c]));
        out.push(self.points[d.tau()[s]]);
        out
    }

    pub fn segment_midpoint(&self, d: &StrandDiagram, s: usize, seg: usize) -> (f64, f64) {
        let nodes = self.strand_nodes(d, s);
        let (a, b) = (nodes[seg.min(nodes.len() - 2)], nodes[(seg + 1).min(nodes.len() - 1)]);
        ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0)
    }

    /// Centroid of the segments bordering each face.
    pub fn face_centres(&self, d: &StrandDiagram, map: &StrandMap) -> Vec<(f64, f64)> {
        map.faces()
            .iter()
            .map(|f| {
                let mids: Vec<(f64, f64)> = map.segments_of_face(f.id).map(|(s, g, _)| self.segment_midpoint(d, s, g)).collect();
                let k = mids.len().max(1) as f64;
                (mids.iter().map(|p| p.0).sum::<f64>() / k, mids.iter().map(|p| p.1).sum::<f64>() / k)
            })
            .collect()
    }
}

/// Extra layers drawn over a diagram.
#[derive(Clone, Debug, Default)]
pub struct Overlay {
    /// Cone order and the cut, as `(strand, segment)` pieces from the cone
    /// point outward.
    pub cone: Option<(usize, Vec<(usize, usize)>)>,
    pub quiver: Option<(Qp, StrandMap)>,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn cut_path(d: &StrandDiagram, layout: &Layout, pieces: &[(usize, usize)]) -> Vec<(f64, f64)> {
    let n = d.n_points();
    let mut path = vec![(0.0, 0.0)];
    path.extend(pieces.iter().map(|&(s, g)| layout.segment_midpoint(d, s, g)));
    path.push(polar(RADIUS, point_angle(n, n) - PI / n.max(1) as f64));
    path
}

pub fn render(d: &StrandDiagram, overlay: &Overlay, format: Format) -> String {
    let layout = Layout::new(d);
    match format {
        Format::Svg => svg(d, &layout, overlay),
        Format::Tikz => tikz(d, &layout, overlay),
    }
}

fn svg(d: &StrandDiagram, layout: &Layout, overlay: &Overlay) -> String {
    let c = SIZE / 2.0;
    let at = |p: (f64, f64)| (p.0 + c, p.1 + c);
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(
        out,
        r#"<defs><marker id="head" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" markerHeight="6" orient="auto"><path d="M0,0 L10,5 L0,10 z"/></marker></defs>"#
    );
    let _ = writeln!(out, r#"<circle cx="{c}" cy="{c}" r="{RADIUS}" fill="none" stroke="black" stroke-width="1.5"/>"#);
    for s in 0..d.n_points() {
        let pts: Vec<String> = layout.strand_nodes(d, s).into_iter().map(at).map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        let _ = writeln!(
            out,
            r#"<polyline class="strand" data-strand="{}" points="{}" fill="none" stroke="{}" stroke-width="2" marker-end="url(#head)"/>"#,
            s + 1,
            pts.join(" "),
            PALETTE[s % PALETTE.len()]
        );
    }
    for (i, &p) in layout.crossings.iter().enumerate() {
        let (x, y) = at(p);
        let _ = writeln!(out, r#"<circle class="crossing" data-label="c{}" cx="{x:.2}" cy="{y:.2}" r="3"/>"#, d.crossing(i).label);
    }
    for (i, &p) in layout.points.iter().enumerate() {
        let (x, y) = at(p);
        let (lx, ly) = at((p.0 * 1.08, p.1 * 1.08));
        let _ = writeln!(out, r#"<circle class="point" cx="{x:.2}" cy="{y:.2}" r="4" fill="black"/>"#);
        let _ = writeln!(out, r#"<text x="{lx:.2}" y="{ly:.2}" font-size="14" text-anchor="middle">{}</text>"#, i + 1);
    }
    if let Some((order, pieces)) = &overlay.cone {
        let pts: Vec<String> = cut_path(d, layout, pieces).into_iter().map(at).map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        let _ = writeln!(out, r#"<polyline class="cut" points="{}" fill="none" stroke="gray" stroke-dasharray="6,4"/>"#, pts.join(" "));
        let _ = writeln!(out, r#"<circle class="cone" cx="{c}" cy="{c}" r="5" fill="white" stroke="black"/>"#);
        let _ = writeln!(out, r#"<text x="{c}" y="{}" font-size="12" text-anchor="middle">{order}</text>"#, c - 9.0);
    }
    if let Some((qp, map)) = &overlay.quiver {
        let centres = layout.face_centres(d, map);
        let pos: Vec<(f64, f64)> = qp.quiver.vertices.iter().map(|v| at(centres[v.face])).collect();
        for a in &qp.quiver.arrows {
            let (x1, y1) = pos[a.source];
            let (x2, y2) = pos[a.target];
            let _ = writeln!(
                out,
                r#"<line class="arrow" x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="black" stroke-width="0.8" marker-end="url(#head)"/>"#
            );
        }
        for (v, &(x, y)) in qp.quiver.vertices.iter().zip(&pos) {
            let fill = if v.frozen { "#dddddd" } else { "white" };
            let _ = writeln!(out, r#"<rect class="vertex" x="{:.2}" y="{:.2}" width="36" height="14" fill="{fill}" stroke="black"/>"#, x - 18.0, y - 7.0);
            let _ = writeln!(out, r#"<text x="{x:.2}" y="{:.2}" font-size="9" text-anchor="middle">{}</text>"#, y + 3.0, escape(&v.label.to_string()));
        }
    }
    out.push_str("</svg>\n");
    out
}

fn tikz(d: &StrandDiagram, layout: &Layout, overlay: &Overlay) -> String {
    let scale = 50.0;
    let at = |p: (f64, f64)| format!("({:.3},{:.3})", p.0 / scale, -p.1 / scale);
    let mut out = String::from("\\begin{tikzpicture}[>=stealth]\n");
    let _ = writeln!(out, "  \\draw[thick] (0,0) circle ({:.3});", RADIUS / scale);
    for s in 0..d.n_points() {
        let pts: Vec<String> = layout.strand_nodes(d, s).into_iter().map(at).collect();
        let _ = writeln!(out, "  \\draw[->, strand{}] {};", s % PALETTE.len(), pts.join(" -- "));
    }
    for (i, &p) in layout.crossings.iter().enumerate() {
        let _ = writeln!(out, "  \\fill {} circle (1.5pt) node[above right, font=\\tiny] {{c{}}};", at(p), d.crossing(i).label);
    }
    for (i, &p) in layout.points.iter().enumerate() {
        let _ = writeln!(out, "  \\fill {} circle (2pt);", at(p));
        let _ = writeln!(out, "  \\node at {} {{{}}};", at((p.0 * 1.1, p.1 * 1.1)), i + 1);
    }
    if let Some((order, pieces)) = &overlay.cone {
        let pts: Vec<String> = cut_path(d, layout, pieces).into_iter().map(at).collect();
        let _ = writeln!(out, "  \\draw[dashed, gray] {};", pts.join(" -- "));
        let _ = writeln!(out, "  \\node[draw, circle, inner sep=1pt, fill=white] at (0,0) {{\\tiny {order}}};");
    }
    if let Some((qp, map)) = &overlay.quiver {
        let centres = layout.face_centres(d, map);
        for (i, v) in qp.quiver.vertices.iter().enumerate() {
            let style = if v.frozen { "draw, fill=gray!20" } else { "draw" };
            let label = v.label.to_string().replace('{', "\\{").replace('}', "\\}");
            let _ = writeln!(out, "  \\node[{style}, font=\\tiny] (v{i}) at {} {{${label}$}};", at(centres[v.face]));
        }
        for a in &qp.quiver.arrows {
            let _ = writeln!(out, "  \\draw[->] (v{}) -- (v{});", a.source, a.target);
        }
    }
    out.push_str("\\end{tikzpicture}\n");
    let mut styles = String::new();
    for (i, colour) in PALETTE.iter().enumerate() {
        let _ = writeln!(
            styles,
            "\\tikzset{{strand{i}/.style={{draw={{rgb,255:red,{};green,{};blue,{}}}}}}}",
            hex(colour, 1),
            hex(colour, 3),
            hex(colour, 5)
        );
    }
    styles.push_str(&out);
    styles
}

fn hex(colour: &str, at: usize) -> u8 {
    u8::from_str_radix(&colour[at..at + 2], 16).unwrap_or(0)
}
