//! CSV and SVG rendering of B(x) samples.

use std::fmt::Write;

/// `x,B` rows at 17 significant digits.
pub fn csv(samples: &[(f64, f64)]) -> String {
    let mut out = String::from("x,B\n");
    for (x, b) in samples {
        writeln!(out, "{},{}", sig17(*x), sig17(*b)).unwrap();
    }
    out
}

fn sig17(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    format!("{v:.16e}")
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 50.0;

/// A polyline plot with both axes, ticks at the range ends and a title.
pub fn svg(samples: &[(f64, f64)], title: &str) -> String {
    let finite: Vec<&(f64, f64)> = samples.iter().filter(|(_, b)| b.is_finite()).collect();
    let (xlo, xhi) = (samples.first().map_or(0.0, |s| s.0), samples.last().map_or(1.0, |s| s.0));
    let mut ylo = finite.iter().map(|s| s.1).fold(0.0f64, f64::min);
    let mut yhi = finite.iter().map(|s| s.1).fold(0.0f64, f64::max);
    if yhi - ylo < 1e-12 {
        ylo -= 1.0;
        yhi += 1.0;
    }
    let px = |x: f64| MARGIN + (x - xlo) / (xhi - xlo) * (WIDTH - 2.0 * MARGIN);
    let py = |y: f64| HEIGHT - MARGIN - (y - ylo) / (yhi - ylo) * (HEIGHT - 2.0 * MARGIN);

    let mut s = String::new();
    writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    )
    .unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(
        s,
        r#"<text x="{}" y="24" text-anchor="middle" font-family="sans-serif" font-size="16">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    )
    .unwrap();
    let (y0, x0) = (py(0.0), px(0.0_f64.clamp(xlo, xhi)));
    writeln!(s, r#"<line x1="{MARGIN}" y1="{y0:.3}" x2="{:.3}" y2="{y0:.3}" stroke="black"/>"#, WIDTH - MARGIN)
        .unwrap();
    writeln!(s, r#"<line x1="{x0:.3}" y1="{MARGIN}" x2="{x0:.3}" y2="{:.3}" stroke="black"/>"#, HEIGHT - MARGIN)
        .unwrap();
    let label = |s: &mut String, x: f64, y: f64, anchor: &str, text: String| {
        writeln!(s, r#"<text x="{x:.3}" y="{y:.3}" text-anchor="{anchor}" font-family="sans-serif" font-size="11">{text}</text>"#).unwrap();
    };
    label(&mut s, px(xlo), HEIGHT - MARGIN + 16.0, "start", format!("{xlo}"));
    label(&mut s, px(xhi), HEIGHT - MARGIN + 16.0, "end", format!("{xhi}"));
    label(&mut s, MARGIN - 4.0, py(yhi) + 4.0, "end", format!("{yhi:.3}"));
    label(&mut s, MARGIN - 4.0, py(ylo) + 4.0, "end", format!("{ylo:.3}"));
    let points: Vec<String> = finite.iter().map(|(x, y)| format!("{:.3},{:.3}", px(*x), py(*y))).collect();
    writeln!(s, r#"<polyline fill="none" stroke="steelblue" stroke-width="1.5" points="{}"/>"#, points.join(" "))
        .unwrap();
    writeln!(s, "</svg>").unwrap();
    s
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trips() {
        let rows = [(-1.0, 0.1 + 0.2), (0.0, 1.0 / 3.0), (1.0, -2.5e-300)];
        let text = csv(&rows);
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("x,B"));
        for ((x, b), line) in rows.iter().zip(lines) {
            let (a, c) = line.split_once(',').unwrap();
            assert_eq!(a.parse::<f64>().unwrap(), *x);
            assert_eq!(c.parse::<f64>().unwrap(), *b);
        }
    }

    #[test]
    fn svg_has_one_vertex_per_sample() {
        let rows: Vec<(f64, f64)> = (0..11).map(|i| (i as f64, (i as f64).sin())).collect();
        let s = svg(&rows, "m=3 & more");
        assert!(s.contains("version=\"1.1\""));
        assert!(s.contains("m=3 &amp; more"));
        let poly = s.lines().find(|l| l.starts_with("<polyline")).unwrap();
        assert_eq!(poly.matches(',').count(), 11);
    }
}
