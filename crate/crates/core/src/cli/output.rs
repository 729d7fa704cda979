//! Output sinks: CSV rows flushed as they are produced, a JSON document, or
//! an SVG line plot. Each carries the run configuration.

use std::fs::File;
use std::io::{self, BufWriter, Write};

use serde::Serialize;
use serde_json::Value;

use super::config::{Format, RunConfig};
use crate::error::Result;

pub struct Sink {
    config: RunConfig,
    out: Box<dyn Write>,
    json_rows: Vec<Value>,
    points: Vec<(f64, f64)>,
    plot_labels: (String, String),
}

impl Sink {
    pub fn open(config: &RunConfig) -> Result<Self> {
        let out: Box<dyn Write> = match &config.output {
            Some(path) => Box::new(BufWriter::new(File::create(path)?)),
            None => Box::new(io::stdout()),
        };
        Ok(Self {
            config: config.clone(),
            out,
            json_rows: Vec::new(),
            points: Vec::new(),
            plot_labels: ("q".into(), "ratio".into()),
        })
    }

    pub fn format(&self) -> Format {
        self.config.format
    }

    /// Writes the config line and, for CSV, the column header.
    pub fn begin(&mut self, csv_header: &str) -> Result<()> {
        if self.config.format == Format::Csv {
            writeln!(self.out, "# config: {}", self.config.to_json())?;
            writeln!(self.out, "{csv_header}")?;
            self.out.flush()?;
        }
        Ok(())
    }

    pub fn set_plot_labels(&mut self, x: &str, y: &str) {
        self.plot_labels = (x.into(), y.into());
    }

    /// Records one row; `point` is its (x, y) for the SVG plot.
    pub fn row<T: Serialize>(&mut self, csv: &str, value: &T, point: Option<(f64, f64)>) -> Result<()> {
        match self.config.format {
            Format::Csv => {
                writeln!(self.out, "{csv}")?;
                self.out.flush()?;
            }
            Format::Json => self
                .json_rows
                .push(serde_json::to_value(value).map_err(|e| crate::Error::Parse(e.to_string()))?),
            Format::Svg => self.points.extend(point),
        }
        Ok(())
    }

    /// Writes a trailing `# key: value` note (CSV) or summary field (JSON).
    pub fn finish(mut self, summary: Option<Value>) -> Result<()> {
        match self.config.format {
            Format::Csv => {
                if let Some(Value::Object(map)) = &summary {
                    for (k, v) in map {
                        writeln!(self.out, "# {k}: {v}")?;
                    }
                }
            }
            Format::Json => {
                let mut doc = serde_json::json!({
                    "config": self.config,
                    "rows": self.json_rows,
                });
                if let Some(s) = summary {
                    doc["summary"] = s;
                }
                let text = serde_json::to_string_pretty(&doc).map_err(|e| crate::Error::Parse(e.to_string()))?;
                writeln!(self.out, "{text}")?;
            }
            Format::Svg => {
                let svg = line_plot(
                    &self.points,
                    &self.plot_labels.0,
                    &self.plot_labels.1,
                    &self.config.to_json(),
                );
                write!(self.out, "{svg}")?;
            }
        }
        self.out.flush()?;
        Ok(())
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace("--", "- -")
}

/// Minimal SVG line plot: axes, tick labels at the data extremes, one polyline.
pub fn line_plot(points: &[(f64, f64)], x_label: &str, y_label: &str, comment: &str) -> String {
    const W: f64 = 640.0;
    const H: f64 = 400.0;
    const M: f64 = 60.0;
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in points {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if points.is_empty() {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    if x1 - x0 < 1e-12 {
        x1 = x0 + 1.0;
    }
    y0 = y0.min(0.0);
    if y1 - y0 < 1e-12 {
        y1 = y0 + 1.0;
    }
    let sx = |x: f64| M + (x - x0) / (x1 - x0) * (W - 2.0 * M);
    let sy = |y: f64| H - M - (y - y0) / (y1 - y0) * (H - 2.0 * M);
    let poly: Vec<String> = points
        .iter()
        .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
        .collect();
    let mut s = String::new();
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">\n"
    ));
    s.push_str(&format!("<!-- config: {} -->\n", escape(comment)));
    s.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    s.push_str(&format!(
        "<line x1=\"{M}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\" stroke=\"black\"/>\n",
        b = H - M,
        r = W - M
    ));
    s.push_str(&format!(
        "<line x1=\"{M}\" y1=\"{M}\" x2=\"{M}\" y2=\"{b}\" stroke=\"black\"/>\n",
        b = H - M
    ));
    for (x, anchor) in [(x0, "start"), (x1, "end")] {
        s.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"{anchor}\">{}</text>\n",
            sx(x),
            H - M + 16.0,
            x
        ));
    }
    for y in [y0, y1] {
        s.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"end\">{:.4}</text>\n",
            M - 6.0,
            sy(y) + 4.0,
            y
        ));
    }
    s.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"14\" text-anchor=\"middle\">{}</text>\n",
        W / 2.0,
        H - 16.0,
        escape(x_label)
    ));
    s.push_str(&format!(
        "<text x=\"16\" y=\"{:.2}\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 16 {:.2})\">{}</text>\n",
        H / 2.0,
        H / 2.0,
        escape(y_label)
    ));
    s.push_str(&format!(
        "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"{}\"/>\n",
        poly.join(" ")
    ));
    for &(x, y) in points {
        s.push_str(&format!(
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"steelblue\"/>\n",
            sx(x),
            sy(y)
        ));
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plot_has_one_polyline_and_a_point_per_row() {
        let svg = line_plot(&[(3.0, 1.0), (5.0, 1.2), (7.0, 0.9)], "q", "ratio", "{\"a\":1}");
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert_eq!(svg.matches("<circle").count(), 3);
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn empty_plot_is_valid() {
        let svg = line_plot(&[], "q", "ratio", "");
        assert!(svg.contains("<polyline"));
    }
}
