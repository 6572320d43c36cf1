//! A bare-bones SVG line chart for curve output.

use std::fmt::Write as _;

use crate::CurveRow;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 50.0;

pub fn line_chart(rows: &[CurveRow]) -> String {
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    )
    .unwrap();
    s.push_str(r#"<rect width="100%" height="100%" fill="white"/>"#);
    s.push('\n');
    if rows.is_empty() {
        s.push_str("</svg>\n");
        return s;
    }

    let (x_lo, x_hi) = bounds(rows.iter().map(|r| r.r));
    let (y_lo, y_hi) = bounds(rows.iter().flat_map(|r| [r.exact, r.simulated]));
    let px = |x: f64| MARGIN + (x - x_lo) / (x_hi - x_lo) * (WIDTH - 2.0 * MARGIN);
    let py = |y: f64| HEIGHT - MARGIN - (y - y_lo) / (y_hi - y_lo) * (HEIGHT - 2.0 * MARGIN);

    writeln!(
        s,
        r#"<polyline fill="none" stroke="black" points="{m},{t} {m},{b} {r},{b}"/>"#,
        m = MARGIN,
        t = MARGIN,
        b = HEIGHT - MARGIN,
        r = WIDTH - MARGIN
    )
    .unwrap();
    for (label, x) in [(x_lo, px(x_lo)), (x_hi, px(x_hi))] {
        writeln!(s, r#"<text x="{x:.1}" y="{:.1}" font-size="12" text-anchor="middle">{label:.2}</text>"#, HEIGHT - MARGIN + 18.0).unwrap();
    }
    for (label, y) in [(y_lo, py(y_lo)), (y_hi, py(y_hi))] {
        writeln!(s, r#"<text x="{:.1}" y="{y:.1}" font-size="12" text-anchor="end">{label:.4}</text>"#, MARGIN - 6.0).unwrap();
    }
    writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" font-size="12" text-anchor="middle">R (bohr)</text>"#,
        WIDTH / 2.0,
        HEIGHT - 10.0
    )
    .unwrap();

    let points: Vec<String> = rows.iter().map(|r| format!("{:.2},{:.2}", px(r.r), py(r.exact))).collect();
    writeln!(s, r#"<polyline fill="none" stroke="steelblue" stroke-width="2" points="{}"/>"#, points.join(" ")).unwrap();
    for r in rows {
        writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="none" stroke="firebrick"/>"#, px(r.r), py(r.simulated)).unwrap();
    }
    s.push_str("</svg>\n");
    s
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if hi > lo {
        (lo, hi)
    } else {
        (lo - 0.5, hi + 0.5)
    }
}
