//! SVG rendering of layout files.

use std::fmt::Write;

use crate::instance::Kind;
use crate::layout_file::LayoutFile;

const CANVAS: f64 = 800.0;
const MARGIN: f64 = 20.0;

/// Renders the layout centered on its mass center, scaled so the enveloping
/// circle fills the canvas. The y axis points up.
pub fn render_svg(layout: &LayoutFile) -> String {
    let half = CANVAS / 2.0;
    let radius = layout.envelope_radius;
    let scale = if radius > 0.0 { (half - MARGIN) / radius } else { 1.0 };
    let (mx, my) = (layout.mass_center.x, layout.mass_center.y);
    let tx = |x: f64| half + (x - mx) * scale;
    let ty = |y: f64| half - (y - my) * scale;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS}" height="{CANVAS}" viewBox="0 0 {CANVAS} {CANVAS}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r##"<g class="items" fill="#9ecae1" fill-opacity="0.8" stroke="#08519c" stroke-width="1">"##
    );
    for it in &layout.items {
        match layout.kind {
            Kind::Circles => {
                let r = it.r.unwrap_or(0.0) * scale;
                let _ = writeln!(
                    s,
                    r#"<circle class="item" data-id="{}" cx="{:.3}" cy="{:.3}" r="{:.3}"/>"#,
                    it.id,
                    tx(it.x),
                    ty(it.y),
                    r
                );
            }
            Kind::Rects => {
                let (a, b) = (it.a.unwrap_or(0.0), it.b.unwrap_or(0.0));
                let (w, h) = if it.orientation == Some(90) { (b, a) } else { (a, b) };
                let _ = writeln!(
                    s,
                    r#"<rect class="item" data-id="{}" x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}"/>"#,
                    it.id,
                    tx(it.x - w / 2.0),
                    ty(it.y + h / 2.0),
                    w * scale,
                    h * scale
                );
            }
        }
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(
        s,
        r##"<circle class="envelope" cx="{:.3}" cy="{:.3}" r="{:.3}" fill="none" stroke="#d62728" stroke-width="1.5" stroke-dasharray="6 4"/>"##,
        half,
        half,
        radius * scale
    );
    let m = 6.0;
    let _ = writeln!(
        s,
        r##"<path class="mass-center" d="M {:.3} {half:.3} H {:.3} M {half:.3} {:.3} V {:.3}" stroke="#d62728" stroke-width="2"/>"##,
        half - m,
        half + m,
        half - m,
        half + m
    );
    let _ = writeln!(s, "</svg>");
    s
}
