//! Deterministic SVG rendering of 2d polytropes: one closed polygon
//! through the angularly ordered pseudovertices, pseudovertices marked,
//! tropical vertices highlighted.

use std::cmp::Ordering;
use std::fmt::Write as _;

use num_traits::{Signed, ToPrimitive, Zero};
use tropvol::{enumerate_pseudovertices, Error, Polytrope, Rat, Result};

/// Pixel width of the output image; height follows the aspect ratio.
const IMAGE_WIDTH: f64 = 512.0;
/// Fraction of each extent added as padding on every side.
const PADDING_FRACTION: f64 = 0.10;

/// Counterclockwise comparison of direction vectors by exact half-plane
/// and cross-product signs, starting from the positive x-axis.
fn ccw_cmp(a: &(Rat, Rat), b: &(Rat, Rat)) -> Ordering {
    fn lower_half(u: &(Rat, Rat)) -> bool {
        u.1.is_negative() || (u.1.is_zero() && !u.0.is_positive())
    }
    match (lower_half(a), lower_half(b)) {
        (false, true) => Ordering::Less,
        (true, false) => Ordering::Greater,
        _ => {
            let cross = &a.0 * &b.1 - &a.1 * &b.0;
            if cross.is_positive() {
                Ordering::Less
            } else if cross.is_negative() {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        }
    }
}

/// Render a 2d polytrope as an SVG 1.1 document. Output bytes are a
/// deterministic function of the polytrope.
pub fn render_svg_2d(p: &Polytrope) -> Result<String> {
    if p.dim() != 2 {
        return Err(Error::UnsupportedDimension { dim: p.dim() });
    }
    let pvs = enumerate_pseudovertices(p)?;
    let mut points: Vec<(Rat, Rat)> = pvs
        .iter()
        .map(|pv| (pv.point[0].clone(), pv.point[1].clone()))
        .collect();
    let m = Rat::from_integer((points.len() as i64).into());
    let cx: Rat = points.iter().map(|p| p.0.clone()).sum::<Rat>() / &m;
    let cy: Rat = points.iter().map(|p| p.1.clone()).sum::<Rat>() / &m;
    points.sort_by(|a, b| {
        ccw_cmp(&(&a.0 - &cx, &a.1 - &cy), &(&b.0 - &cx, &b.1 - &cy))
    });

    let tropical: Vec<Vec<Rat>> = p.vertices();
    let as_f = |r: &Rat| r.to_f64().expect("finite rational");

    let xs: Vec<f64> = points
        .iter()
        .map(|q| as_f(&q.0))
        .chain(tropical.iter().map(|v| as_f(&v[0])))
        .collect();
    let ys: Vec<f64> = points
        .iter()
        .map(|q| as_f(&q.1))
        .chain(tropical.iter().map(|v| as_f(&v[1])))
        .collect();
    let fold_min = |v: &[f64]| v.iter().cloned().fold(f64::INFINITY, f64::min);
    let fold_max = |v: &[f64]| v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let (x0, x1, y0, y1) = (fold_min(&xs), fold_max(&xs), fold_min(&ys), fold_max(&ys));
    let extent = (x1 - x0).max(y1 - y0).max(1.0);
    let pad = PADDING_FRACTION * extent;
    let width = (x1 - x0) + 2.0 * pad;
    let height = (y1 - y0) + 2.0 * pad;
    // SVG y grows downward; flip around the padded top edge
    let sx = |x: f64| x - (x0 - pad);
    let sy = |y: f64| (y1 + pad) - y;
    let marker = 0.02 * extent;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         viewBox=\"0 0 {width:.4} {height:.4}\" width=\"{IMAGE_WIDTH:.4}\" height=\"{:.4}\">",
        IMAGE_WIDTH * height / width
    );
    let _ = writeln!(
        svg,
        "  <!-- polytrope, dim 2, {} pseudovertices -->",
        points.len()
    );
    let polygon: Vec<String> = points
        .iter()
        .map(|q| format!("{:.4},{:.4}", sx(as_f(&q.0)), sy(as_f(&q.1))))
        .collect();
    let _ = writeln!(
        svg,
        "  <polygon points=\"{}\" fill=\"#cfe3ff\" stroke=\"#1f4e9c\" stroke-width=\"{:.4}\"/>",
        polygon.join(" "),
        0.01 * extent
    );
    for q in &points {
        let _ = writeln!(
            svg,
            "  <circle class=\"pseudovertex\" cx=\"{:.4}\" cy=\"{:.4}\" r=\"{:.4}\" fill=\"#1f4e9c\"/>",
            sx(as_f(&q.0)),
            sy(as_f(&q.1)),
            marker
        );
    }
    for v in &tropical {
        let _ = writeln!(
            svg,
            "  <circle class=\"tropical-vertex\" cx=\"{:.4}\" cy=\"{:.4}\" r=\"{:.4}\" \
             fill=\"#d94b27\" stroke=\"#7c1d05\" stroke-width=\"{:.4}\"/>",
            sx(as_f(&v[0])),
            sy(as_f(&v[1])),
            1.4 * marker,
            0.008 * extent
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
