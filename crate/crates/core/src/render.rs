//! SVG pictures of a tiling. This is the only place floats are used.

use std::f64::consts::FRAC_PI_2;
use std::fmt::Write as _;

use crate::conegeo::{Cone2, Ray};
use crate::fundom::{DomainResult, Tile};

const SCALE: f64 = 300.0;
const MARGIN: f64 = 20.0;

const FILL_FUNDAMENTAL: &str = "#d95f02";
const FILL_PLAIN: &str = "#e6eef7";
const FILL_FLIPPED: &str = "#bcd4e6";

fn angle(r: &Ray) -> f64 {
    r.v().to_f64().atan2(r.u().to_f64())
}

fn num(x: f64) -> String {
    let s = format!("{x:.2}");
    if s == "-0.00" {
        "0.00".to_string()
    } else {
        s
    }
}

/// Frame around the unit disk sector spanned by `c`, origin included.
struct Frame {
    min_x: f64,
    max_y: f64,
    width: f64,
    height: f64,
}

impl Frame {
    fn new(c: &Cone2) -> Frame {
        let (a1, mut a2) = (angle(c.r1()), angle(c.r2()));
        if a2 < a1 {
            a2 += 4.0 * FRAC_PI_2;
        }
        let mut pts = vec![(0.0f64, 0.0f64), (a1.cos(), a1.sin()), (a2.cos(), a2.sin())];
        // axis directions strictly inside the sector also bound it
        for q in -4..8 {
            let t = q as f64 * FRAC_PI_2;
            if t > a1 && t < a2 {
                pts.push((t.cos(), t.sin()));
            }
        }
        let min_x = pts.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
        let max_x = pts.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
        let min_y = pts.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
        let max_y = pts.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
        Frame {
            min_x,
            max_y,
            width: (max_x - min_x) * SCALE + 2.0 * MARGIN,
            height: (max_y - min_y) * SCALE + 2.0 * MARGIN,
        }
    }

    fn point(&self, x: f64, y: f64) -> String {
        format!("{} {}", num(MARGIN + (x - self.min_x) * SCALE), num(MARGIN + (self.max_y - y) * SCALE))
    }

    fn on_circle(&self, r: &Ray) -> String {
        let t = angle(r);
        self.point(t.cos(), t.sin())
    }
}

/// Render `tiles` as wedges clipped to the unit disk, with the fundamental
/// domain shaded and the acted-on cone's boundary drawn.
pub fn svg(dr: &DomainResult, tiles: &[Tile]) -> String {
    let frame = Frame::new(&dr.cone);
    let origin = frame.point(0.0, 0.0);
    let radius = num(SCALE);
    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">",
        w = num(frame.width),
        h = num(frame.height)
    )
    .unwrap();
    writeln!(out, "<title>{} tiling of {}</title>", dr.case, dr.cone).unwrap();
    writeln!(out, "<g stroke=\"#334\" stroke-width=\"0.50\">").unwrap();
    for t in tiles {
        let fill = if t.word.k == 0 && !t.word.flip {
            FILL_FUNDAMENTAL
        } else if t.word.flip {
            FILL_FLIPPED
        } else {
            FILL_PLAIN
        };
        writeln!(
            out,
            "<path class=\"tile\" data-word=\"{}\" fill=\"{fill}\" d=\"M {origin} L {} A {radius} {radius} 0 0 0 {} Z\"/>",
            t.word,
            frame.on_circle(t.cone.r1()),
            frame.on_circle(t.cone.r2()),
        )
        .unwrap();
    }
    writeln!(out, "</g>").unwrap();
    for r in dr.cone.rays() {
        writeln!(
            out,
            "<path class=\"boundary\" data-ray=\"{r}\" stroke=\"#000\" stroke-width=\"1.50\" d=\"M {origin} L {}\"/>",
            frame.on_circle(r)
        )
        .unwrap();
    }
    writeln!(out, "</svg>").unwrap();
    out
}
