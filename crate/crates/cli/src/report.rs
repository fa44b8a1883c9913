//! Report bundles and their text, CSV and JSON renderings.

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub key: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Table {
    pub name: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, headers: &[&str]) -> Table {
        Table {
            name: name.into(),
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Section {
    pub title: String,
    pub entries: Vec<Entry>,
    pub tables: Vec<Table>,
}

impl Section {
    pub fn new(title: impl Into<String>) -> Section {
        Section {
            title: title.into(),
            entries: Vec::new(),
            tables: Vec::new(),
        }
    }

    pub fn kv(&mut self, key: &str, value: impl ToString) {
        self.entries.push(Entry {
            key: key.into(),
            value: value.to_string(),
        });
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub sections: Vec<Section>,
    /// Mathematical disagreements; any entry makes the run exit with 2.
    pub disagreements: Vec<String>,
}

impl Report {
    pub fn disagree(&mut self, what: impl Into<String>) {
        self.disagreements.push(what.into());
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text(),
            Format::Csv => self.csv(),
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
        }
    }

    fn text(&self) -> String {
        let mut out = String::new();
        for s in &self.sections {
            out += &format!("== {} ==\n", s.title);
            let w = s.entries.iter().map(|e| e.key.len()).max().unwrap_or(0);
            for e in &s.entries {
                out += &format!("{:<w$}  {}\n", e.key, e.value);
            }
            for t in &s.tables {
                out += &format!("-- {} --\n", t.name);
                let mut widths: Vec<usize> = t.headers.iter().map(|h| h.len()).collect();
                for r in &t.rows {
                    for (i, c) in r.iter().enumerate() {
                        if i < widths.len() {
                            widths[i] = widths[i].max(c.len());
                        }
                    }
                }
                let line = |cells: &[String]| {
                    let parts: Vec<String> = cells
                        .iter()
                        .enumerate()
                        .map(|(i, c)| format!("{:<w$}", c, w = widths.get(i).copied().unwrap_or(0)))
                        .collect();
                    parts.join("  ").trim_end().to_string() + "\n"
                };
                out += &line(&t.headers);
                for r in &t.rows {
                    out += &line(r);
                }
            }
            out.push('\n');
        }
        if self.disagreements.is_empty() {
            out += "verdict: all computations agree\n";
        } else {
            out += "verdict: DISAGREEMENT\n";
            for d in &self.disagreements {
                out += &format!("  - {d}\n");
            }
        }
        out
    }

    fn csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .flexible(true)
            .from_writer(Vec::new());
        for s in &self.sections {
            for e in &s.entries {
                w.write_record([s.title.as_str(), "entry", &e.key, &e.value])
                    .expect("in-memory write");
            }
            for t in &s.tables {
                let head = [s.title.as_str(), "header", &t.name];
                w.write_record(
                    head.iter()
                        .copied()
                        .chain(t.headers.iter().map(|h| h.as_str())),
                )
                .expect("in-memory write");
                for r in &t.rows {
                    let lead = [s.title.as_str(), "row", &t.name];
                    w.write_record(lead.iter().copied().chain(r.iter().map(|c| c.as_str())))
                        .expect("in-memory write");
                }
            }
        }
        for d in &self.disagreements {
            w.write_record(["verdict", "disagreement", d.as_str()])
                .expect("in-memory write");
        }
        if self.disagreements.is_empty() {
            w.write_record(["verdict", "agree"])
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut s = Section::new("code");
        s.kv("n", 10);
        let mut t = Table::new("weights", &["weight", "count"]);
        t.row(vec!["3".into(), "4".into()]);
        s.tables.push(t);
        Report {
            sections: vec![s],
            disagreements: vec![],
        }
    }

    #[test]
    fn renderings() {
        let r = sample();
        assert!(r
            .render(Format::Text)
            .contains("weight  count\n3       4\n"));
        assert!(r.render(Format::Csv).contains("code,row,weights,3,4\n"));
        let v: serde_json::Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
        assert_eq!(v["sections"][0]["tables"][0]["rows"][0][1], "4");
    }
}
