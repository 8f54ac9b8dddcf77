//! SVG 1.1 plots of planar partitions.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::metric::{Instance, Point2D, Radius};
use crate::verify::Partition;

const PALETTE: [&str; 10] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
    "#bcbd22", "#7f7f7f",
];
const UNASSIGNED: &str = "#b0b0b0";
const SHAPES: [Shape; 5] = [
    Shape::Circle,
    Shape::Square,
    Shape::Triangle,
    Shape::Diamond,
    Shape::Cross,
];
const CANVAS: f64 = 480.0;
const MARKER: f64 = 5.0;

#[derive(Clone, Copy)]
enum Shape {
    Circle,
    Square,
    Triangle,
    Diamond,
    Cross,
}

/// Colour of subset `s`; pairs of colour and shape repeat only after 50 subsets.
fn style(s: usize) -> (&'static str, Shape) {
    (
        PALETTE[s % PALETTE.len()],
        SHAPES[(s / PALETTE.len()) % SHAPES.len()],
    )
}

fn fmt(x: f64) -> String {
    let s = format!("{x:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

fn marker(out: &mut String, shape: Shape, x: f64, y: f64, class: &str, color: &str) {
    let h = MARKER;
    let body = match shape {
        Shape::Circle => format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\"",
            fmt(x),
            fmt(y),
            fmt(h)
        ),
        Shape::Square => format!(
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\"",
            fmt(x - h),
            fmt(y - h),
            fmt(2.0 * h),
            fmt(2.0 * h)
        ),
        Shape::Triangle => format!(
            "<polygon points=\"{},{} {},{} {},{}\"",
            fmt(x),
            fmt(y - h),
            fmt(x + h),
            fmt(y + h),
            fmt(x - h),
            fmt(y + h)
        ),
        Shape::Diamond => format!(
            "<polygon points=\"{},{} {},{} {},{} {},{}\"",
            fmt(x),
            fmt(y - h),
            fmt(x + h),
            fmt(y),
            fmt(x),
            fmt(y + h),
            fmt(x - h),
            fmt(y)
        ),
        Shape::Cross => format!(
            "<path d=\"M{} {}L{} {}M{} {}L{} {}\" stroke-width=\"2.5\" stroke=\"{color}\"",
            fmt(x - h),
            fmt(y - h),
            fmt(x + h),
            fmt(y + h),
            fmt(x - h),
            fmt(y + h),
            fmt(x + h),
            fmt(y - h)
        ),
    };
    writeln!(out, "    {body} class=\"{class}\" fill=\"{color}\"/>").unwrap();
}

/// Plots each point with its subset's marker. With `radius`, every assigned
/// point also gets a radius circle in its subset colour.
pub fn render_svg(inst: &Instance, p: &Partition, radius: Option<Radius>) -> Result<String> {
    let pts = inst
        .as_points()
        .ok_or_else(|| Error::InvalidInstance("only points2d instances can be rendered".into()))?;
    if p.len() != pts.len() {
        return Err(Error::InvalidPartition(format!(
            "partition has {} entries but the instance has {} points",
            p.len(),
            pts.len()
        )));
    }
    let pad = radius.map_or(0.0, Radius::value);
    let (mut lo, mut hi) = (
        Point2D::new(f64::MAX, f64::MAX),
        Point2D::new(f64::MIN, f64::MIN),
    );
    for q in pts {
        lo = Point2D::new(lo.x.min(q.x - pad), lo.y.min(q.y - pad));
        hi = Point2D::new(hi.x.max(q.x + pad), hi.y.max(q.y + pad));
    }
    let span = (hi.x - lo.x).max(hi.y - lo.y);
    let scale = if span > 0.0 { CANVAS / span } else { 1.0 };
    let margin = 2.0 * MARKER;
    let width = (hi.x - lo.x) * scale + 2.0 * margin;
    let height = (hi.y - lo.y) * scale + 2.0 * margin;
    let to_canvas = |q: &Point2D| (margin + (q.x - lo.x) * scale, margin + (hi.y - q.y) * scale);

    let mut out = String::new();
    writeln!(out, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>").unwrap();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        fmt(width),
        fmt(height),
        fmt(width),
        fmt(height)
    )
    .unwrap();
    writeln!(
        out,
        "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>"
    )
    .unwrap();

    if let Some(r) = radius {
        writeln!(
            out,
            "  <g class=\"radii\" fill=\"none\" stroke-opacity=\"0.35\">"
        )
        .unwrap();
        for (i, q) in pts.iter().enumerate() {
            if let Some(s) = p.subset_of(i) {
                let (x, y) = to_canvas(q);
                writeln!(
                    out,
                    "    <circle cx=\"{}\" cy=\"{}\" r=\"{}\" class=\"radius subset-{s}\" stroke=\"{}\"/>",
                    fmt(x),
                    fmt(y),
                    fmt(r.value() * scale),
                    style(s).0
                )
                .unwrap();
            }
        }
        writeln!(out, "  </g>").unwrap();
    }

    writeln!(out, "  <g class=\"points\">").unwrap();
    for (i, q) in pts.iter().enumerate() {
        let (x, y) = to_canvas(q);
        match p.subset_of(i) {
            Some(s) => {
                let (color, shape) = style(s);
                marker(&mut out, shape, x, y, &format!("subset-{s}"), color);
            }
            None => marker(&mut out, Shape::Circle, x, y, "unassigned", UNASSIGNED),
        }
    }
    writeln!(out, "  </g>").unwrap();
    writeln!(out, "</svg>").unwrap();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reductions::planar::fixtures;
    use crate::reductions::{coloring_gadget, cover_from_coloring};
    use std::collections::BTreeSet;

    fn classes(svg: &str) -> BTreeSet<String> {
        svg.split("class=\"")
            .skip(1)
            .map(|s| s[..s.find('"').unwrap()].to_string())
            .collect()
    }

    fn unit_square() -> Instance {
        Instance::from_xy(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0)]).unwrap()
    }

    #[test]
    fn two_subsets_two_marker_classes() {
        let p = Partition::from_subsets(4, &[vec![0, 3], vec![1, 2]]).unwrap();
        let svg = render_svg(&unit_square(), &p, None).unwrap();
        assert!(svg.contains("version=\"1.1\""));
        let c = classes(&svg);
        assert!(c.contains("subset-0") && c.contains("subset-1"));
        assert!(!c.contains("unassigned"));
        assert_eq!(svg.matches("class=\"subset-0\"").count(), 2);
        assert_eq!(svg, render_svg(&unit_square(), &p, None).unwrap());
    }

    #[test]
    fn unassigned_points_are_grey() {
        let p = Partition::empty(2, 4).unwrap();
        let svg = render_svg(&unit_square(), &p, Some(Radius::new(1.0).unwrap())).unwrap();
        assert_eq!(svg.matches("class=\"unassigned\"").count(), 4);
        assert_eq!(svg.matches(UNASSIGNED).count(), 4);
        assert!(!svg.contains("subset-"));
    }

    #[test]
    fn radius_circles_and_errors() {
        let p = Partition::from_subsets(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        let svg = render_svg(&unit_square(), &p, Some(Radius::new(1.0).unwrap())).unwrap();
        assert_eq!(svg.matches("class=\"radius ").count(), 4);
        let short = Partition::empty(2, 3).unwrap();
        assert!(render_svg(&unit_square(), &short, None).is_err());
        let m = Instance::matrix(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert!(render_svg(&m, &Partition::empty(1, 2).unwrap(), None).is_err());
    }

    #[test]
    fn triangle_gadget_plot() {
        let out = coloring_gadget(&fixtures::triangle()).unwrap();
        let p = cover_from_coloring(&out, &[0, 1, 2]).unwrap();
        let svg = render_svg(out.instance(), &p, Some(Radius::new(1.0).unwrap())).unwrap();
        let c = classes(&svg);
        for s in 0..3 {
            assert!(c.contains(&format!("subset-{s}")));
        }
        let markers = svg.matches("class=\"subset-").count();
        assert_eq!(markers, out.points().len());
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn single_point() {
        let inst = Instance::from_xy(&[(2.0, 3.0)]).unwrap();
        let p = Partition::from_subsets(1, &[vec![0]]).unwrap();
        assert!(render_svg(&inst, &p, None).unwrap().contains("subset-0"));
    }
}
