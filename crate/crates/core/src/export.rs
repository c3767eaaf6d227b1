//! Text renderings of analysis outputs: indicator CSVs, the SVG dynamics
//! polyline, and decimal formatting helpers.
//!
//! Number formatting is pure Rust (no locale, no platform libm), so every
//! artifact is byte-identical across runs.

use crate::indicator::IndicatorResult;

/// Shortest round-trip decimal for data-carrying CSVs; parsing the text back
/// recovers the exact f64. Negative zero is normalized.
pub(crate) fn fmt_f64(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else {
        format!("{v}")
    }
}

/// Plain-decimal rendering at the given number of significant digits
/// (round-half-even, via the standard library's correctly rounded
/// exponential formatting). Trailing fractional zeros are trimmed.
pub fn format_sig(v: f64, digits: usize) -> String {
    let digits = digits.max(1);
    if v == 0.0 {
        return "0".to_string();
    }
    let formatted = format!("{:.*e}", digits - 1, v);
    let (mantissa, exp) = formatted
        .split_once('e')
        .expect("exponential format always contains 'e'");
    let exp: i32 = exp.parse().expect("valid exponent");
    let neg = mantissa.starts_with('-');
    let digit_run: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let point = 1 + exp; // digits before the decimal point

    let mut s = String::new();
    if neg {
        s.push('-');
    }
    if point <= 0 {
        s.push_str("0.");
        for _ in 0..(-point) {
            s.push('0');
        }
        s.push_str(&digit_run);
    } else if point as usize >= digit_run.len() {
        s.push_str(&digit_run);
        for _ in 0..(point as usize - digit_run.len()) {
            s.push('0');
        }
    } else {
        s.push_str(&digit_run[..point as usize]);
        s.push('.');
        s.push_str(&digit_run[point as usize..]);
    }
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

/// G_i surface CSV: header `t,<label1>,...`, one row per analyzed tick.
pub fn gi_surface_csv(result: &IndicatorResult, labels: &[String]) -> String {
    let mut out = String::from("t");
    for l in labels {
        out.push(',');
        out.push_str(l);
    }
    out.push('\n');
    for (p, &tick) in result.analyzed_ticks().iter().enumerate() {
        out.push_str(&tick.to_string());
        for v in result.gi_row(p) {
            out.push(',');
            out.push_str(&fmt_f64(*v));
        }
        out.push('\n');
    }
    out
}

/// G dynamics CSV: header `t,G`, one row per analyzed tick.
pub fn g_dynamics_csv(result: &IndicatorResult) -> String {
    let mut out = String::from("t,G\n");
    for (p, &tick) in result.analyzed_ticks().iter().enumerate() {
        out.push_str(&tick.to_string());
        out.push(',');
        out.push_str(&fmt_f64(result.g_per_tick()[p]));
        out.push('\n');
    }
    out
}

/// Minimal SVG polyline of G(t): fixed 800×400 canvas, two axes, coordinates
/// at 2 decimals. No external renderer involved.
pub fn svg_g_dynamics(result: &IndicatorResult) -> String {
    const W: f64 = 800.0;
    const H: f64 = 400.0;
    const LEFT: f64 = 60.0;
    const RIGHT: f64 = 20.0;
    const TOP: f64 = 20.0;
    const BOTTOM: f64 = 40.0;

    let ticks = result.analyzed_ticks();
    let g = result.g_per_tick();
    let t0 = ticks[0] as f64;
    let t1 = *ticks.last().unwrap() as f64;
    let t_span = if t1 > t0 { t1 - t0 } else { 1.0 };
    let g_max = g.iter().fold(0.0f64, |acc, &v| acc.max(v));
    let g_max = if g_max > 0.0 { g_max } else { 1.0 };

    let x = |t: f64| LEFT + (t - t0) / t_span * (W - LEFT - RIGHT);
    let y = |v: f64| H - BOTTOM - v / g_max * (H - TOP - BOTTOM);

    let mut points = String::new();
    for (p, &tick) in ticks.iter().enumerate() {
        if p > 0 {
            points.push(' ');
        }
        points.push_str(&format!("{:.2},{:.2}", x(tick as f64), y(g[p])));
    }

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">\n"
    ));
    out.push_str(&format!(
        "  <line x1=\"{LEFT}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"black\"/>\n",
        H - BOTTOM,
        W - RIGHT,
        H - BOTTOM
    ));
    out.push_str(&format!(
        "  <line x1=\"{LEFT}\" y1=\"{TOP}\" x2=\"{LEFT}\" y2=\"{:.2}\" stroke=\"black\"/>\n",
        H - BOTTOM
    ));
    out.push_str(&format!(
        "  <polyline fill=\"none\" stroke=\"#1f6fb4\" stroke-width=\"1.5\" points=\"{points}\"/>\n"
    ));
    out.push_str(&format!(
        "  <text x=\"{LEFT}\" y=\"{:.2}\" font-size=\"12\">{}</text>\n",
        H - BOTTOM + 16.0,
        ticks[0]
    ));
    out.push_str(&format!(
        "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"end\">{}</text>\n",
        W - RIGHT,
        H - BOTTOM + 16.0,
        ticks.last().unwrap()
    ));
    out.push_str(&format!(
        "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"end\">0</text>\n",
        LEFT - 6.0,
        H - BOTTOM
    ));
    out.push_str(&format!(
        "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"end\">{}</text>\n",
        LEFT - 6.0,
        TOP + 10.0,
        format_sig(g_max, 6)
    ));
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indicator::indicator_series;
    use crate::panel::load_panel;
    use crate::threshold::ThresholdSpec;

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(format_sig(0.0, 6), "0");
        assert_eq!(format_sig(1.0, 6), "1");
        assert_eq!(format_sig(-0.447_213_595_499_958, 6), "-0.447214");
        assert_eq!(format_sig(123456789.0, 6), "123457000");
        assert_eq!(format_sig(0.000_012_345_678_9, 6), "0.0000123457");
        assert_eq!(format_sig(0.9, 2), "0.9");
        assert_eq!(format_sig(1.0, 1), "1");
        assert_eq!(format_sig(9.999_999, 6), "10");
    }

    fn small_result() -> (crate::indicator::IndicatorResult, Vec<String>) {
        let p =
            load_panel(b"t,a,b\n1,1.0,-1.0\n2,2.5,-2.5\n3,2.0,-2.0\n4,4.0,-4.0\n5,3.0,-3.0")
                .unwrap();
        let res = indicator_series(&p, 3, &ThresholdSpec::fixed(0.5).unwrap()).unwrap();
        (res, p.labels())
    }

    #[test]
    fn csv_layouts() {
        let (res, labels) = small_result();
        let gi = gi_surface_csv(&res, &labels);
        let lines: Vec<&str> = gi.lines().collect();
        assert_eq!(lines[0], "t,a,b");
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("4,"));

        let dyn_csv = g_dynamics_csv(&res);
        let lines: Vec<&str> = dyn_csv.lines().collect();
        assert_eq!(lines[0], "t,G");
        assert_eq!(lines[1], "4,2");
    }

    #[test]
    fn dynamics_csv_column_sums_to_raw_total() {
        let (res, _) = small_result();
        let csv = g_dynamics_csv(&res);
        let sum: f64 = csv
            .lines()
            .skip(1)
            .map(|l| l.split(',').nth(1).unwrap().parse::<f64>().unwrap())
            .sum();
        assert_eq!(sum, res.g_total().raw);
    }

    #[test]
    fn svg_contains_polyline() {
        let (res, _) = small_result();
        let svg = svg_g_dynamics(&res);
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("<polyline"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }
}
