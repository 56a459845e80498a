//! Byte-stable SVG scatter plots for two-dimensional loci.
//!
//! The viewport is a fixed 400x400 canvas; plot bounds come from the data
//! (padded by one unit, so empty and single-point inputs still produce a
//! valid picture) and every coordinate is formatted with two decimals.
//! Identical input therefore yields identical bytes.

use supertropical::rational::{rational_to_f64, Rational};

const SIZE: f64 = 400.0;
const MARGIN: f64 = 40.0;
const RADIUS: f64 = 4.0;

fn padded_bounds(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (0.0, 1.0);
    }
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    (min - 1.0, max + 1.0)
}

/// Renders the points as black circles in a framed plot area, the first
/// coordinate rightward and the second upward.
pub fn render_svg(points: &[(Rational, Rational)]) -> String {
    let xs: Vec<f64> = points.iter().map(|(x, _)| rational_to_f64(x)).collect();
    let ys: Vec<f64> = points.iter().map(|(_, y)| rational_to_f64(y)).collect();
    let (min_x, max_x) = padded_bounds(&xs);
    let (min_y, max_y) = padded_bounds(&ys);
    let span = SIZE - 2.0 * MARGIN;
    let scale_x = span / (max_x - min_x);
    let scale_y = span / (max_y - min_y);

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n"
    ));
    out.push_str(&format!(
        "  <rect x=\"{MARGIN}\" y=\"{MARGIN}\" width=\"{span}\" height=\"{span}\" fill=\"none\" stroke=\"black\"/>\n"
    ));
    for (x, y) in xs.iter().zip(&ys) {
        let cx = MARGIN + (x - min_x) * scale_x;
        let cy = SIZE - MARGIN - (y - min_y) * scale_y;
        out.push_str(&format!(
            "  <circle cx=\"{cx:.2}\" cy=\"{cy:.2}\" r=\"{RADIUS}\" fill=\"black\"/>\n"
        ));
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use supertropical::rational::int;

    #[test]
    fn empty_input_is_a_valid_picture() {
        let svg = render_svg(&[]);
        assert!(svg.starts_with("<svg "));
        assert!(svg.ends_with("</svg>\n"));
        assert!(!svg.contains("<circle"));
        assert!(svg.contains("<rect"));
    }

    #[test]
    fn single_point_lands_in_the_center() {
        let svg = render_svg(&[(int(3), int(-1))]);
        assert_eq!(svg.matches("<circle").count(), 1);
        assert!(svg.contains("cx=\"200.00\""));
        assert!(svg.contains("cy=\"200.00\""));
    }

    #[test]
    fn diagonal_points_march_across_the_canvas() {
        let points: Vec<_> = (0..4).map(|k| (int(k), int(k))).collect();
        let svg = render_svg(&points);
        assert_eq!(svg.matches("<circle").count(), 4);
        let cxs: Vec<&str> = svg
            .lines()
            .filter(|l| l.contains("<circle"))
            .map(|l| l.split("cx=\"").nth(1).unwrap().split('"').next().unwrap())
            .collect();
        let mut sorted = cxs.clone();
        sorted.sort_by(|a, b| a.parse::<f64>().unwrap().partial_cmp(&b.parse::<f64>().unwrap()).unwrap());
        assert_eq!(cxs, sorted);
    }

    #[test]
    fn rendering_is_byte_stable() {
        let points = vec![(int(0), int(2)), (int(1), int(1)), (int(-3), int(4))];
        assert_eq!(render_svg(&points), render_svg(&points));
    }
}
