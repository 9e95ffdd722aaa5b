use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bigfloat::format_fixed;
use crate::hrr::{HrrParams, SeriesReport};

/// Digits after the point in the `residual` field.
const RESIDUAL_DECIMALS: u32 = 12;

/// `compute` output. Big integers are decimal strings; field order is fixed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComputeJson {
    pub r: String,
    pub s: String,
    pub n: String,
    pub value: String,
    #[serde(rename = "N_used")]
    pub n_used: u64,
    pub residual: String,
    pub precision_bits: u32,
    pub oracle_checked: bool,
}

impl ComputeJson {
    pub fn new(params: &HrrParams, report: &SeriesReport) -> Self {
        ComputeJson {
            r: params.r.to_string(),
            s: params.s.to_string(),
            n: params.n.to_string(),
            value: report.value.to_string(),
            n_used: report.n_used,
            residual: format_fixed(&report.residual, RESIDUAL_DECIMALS),
            precision_bits: report.precision_bits,
            oracle_checked: report.oracle_checked,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain struct serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        format!(
            "r,s,n,value,N_used,residual,precision_bits,oracle_checked\n{},{},{},{},{},{},{},{}\n",
            self.r,
            self.s,
            self.n,
            self.value,
            self.n_used,
            self.residual,
            self.precision_bits,
            self.oracle_checked
        )
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("p_{{{},{}}}({}) = {}\n", self.r, self.s, self.n, self.value);
        let _ = writeln!(out, "terms used      {}", self.n_used);
        let _ = writeln!(out, "residual        {}", self.residual);
        let _ = writeln!(out, "precision bits  {}", self.precision_bits);
        let _ = writeln!(out, "oracle checked  {}", self.oracle_checked);
        out
    }
}

/// One row `(N, S_N, p - S_N)` of a convergence table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    #[serde(rename = "N")]
    pub n_terms: u64,
    #[serde(rename = "S_N")]
    pub s_n: String,
    pub diff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergenceJson {
    pub r: String,
    pub s: String,
    pub n: String,
    pub value: String,
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceJson {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain struct serializes");
        s.push('\n');
        s
    }
}

/// Header `N,S_N,diff`, one row per `N`, LF line endings.
pub fn convergence_csv(rows: &[ConvergenceRow]) -> String {
    let mut out = String::from("N,S_N,diff\n");
    for row in rows {
        let _ = writeln!(out, "{},{},{}", row.n_terms, row.s_n, row.diff);
    }
    out
}

pub(crate) fn convergence_text(rows: &[ConvergenceRow]) -> String {
    let w_sum = rows.iter().map(|r| r.s_n.len()).max().unwrap_or(3).max(3);
    let w_diff = rows.iter().map(|r| r.diff.len()).max().unwrap_or(7).max(7);
    let mut out = format!("{:>5}  {:>w_sum$}  {:>w_diff$}\n", "N", "S_N", "p - S_N");
    for row in rows {
        let _ = writeln!(
            out,
            "{:>5}  {:>w_sum$}  {:>w_diff$}",
            row.n_terms, row.s_n, row.diff
        );
    }
    out
}

/// A bare SVG line chart of `points`, scaled to fill a 640x400 canvas.
pub fn svg_polyline(points: &[(f64, f64)], title: &str) -> String {
    const W: f64 = 640.0;
    const H: f64 = 400.0;
    const PAD: f64 = 40.0;
    let finite: Vec<(f64, f64)> = points
        .iter()
        .copied()
        .filter(|(x, y)| x.is_finite() && y.is_finite())
        .collect();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in &finite {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if finite.is_empty() {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    let sx = if x1 > x0 {
        (W - 2.0 * PAD) / (x1 - x0)
    } else {
        1.0
    };
    let sy = if y1 > y0 {
        (H - 2.0 * PAD) / (y1 - y0)
    } else {
        1.0
    };
    let mut coords = String::new();
    for (i, &(x, y)) in finite.iter().enumerate() {
        if i > 0 {
            coords.push(' ');
        }
        let _ = write!(
            coords,
            "{:.2},{:.2}",
            PAD + (x - x0) * sx,
            H - PAD - (y - y0) * sy
        );
    }
    let title = title
        .replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;");
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">\n\
         <title>{title}</title>\n\
         <rect width=\"{W}\" height=\"{H}\" fill=\"white\"/>\n\
         <text x=\"{PAD}\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">{title}</text>\n\
         <polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"{coords}\"/>\n\
         </svg>\n"
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let j = ComputeJson {
            r: "14".into(),
            s: "15".into(),
            n: "500".into(),
            value: "310093947025073675623".into(),
            n_used: 420,
            residual: "0.125648455825".into(),
            precision_bits: 279,
            oracle_checked: false,
        };
        let text = j.to_json();
        let back: ComputeJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_json(), text);
        let keys: Vec<&str> = text
            .lines()
            .filter_map(|l| l.trim().split('"').nth(1))
            .collect();
        assert_eq!(
            keys,
            [
                "r",
                "s",
                "n",
                "value",
                "N_used",
                "residual",
                "precision_bits",
                "oracle_checked"
            ]
        );
    }

    #[test]
    fn svg_has_one_polyline() {
        let svg = svg_polyline(&[(1.0, 2.0), (2.0, -1.0), (3.0, f64::NAN)], "a < b");
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert!(svg.contains("a &lt; b"));
        assert!(svg.contains("40.00,40.00 600.00,360.00"));
    }
}
