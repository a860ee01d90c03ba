//! PASS/FAIL/UNKNOWN reports with text and JSON renderings.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Unknown,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Unknown => "UNKNOWN",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportItem {
    pub name: String,
    pub status: Status,
    pub detail: String,
    /// A counterexample or an undecided case, when there is one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub title: String,
    pub items: Vec<ReportItem>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            items: Vec::new(),
        }
    }

    pub fn push(&mut self, name: impl Into<String>, status: Status, detail: impl Into<String>, witness: Option<String>) {
        self.items.push(ReportItem {
            name: name.into(),
            status,
            detail: detail.into(),
            witness,
        });
    }

    /// The worst status among the items; `Pass` for an empty report.
    pub fn status(&self) -> Status {
        self.items.iter().map(|i| i.status).max().unwrap_or(Status::Pass)
    }

    pub fn passed(&self) -> bool {
        self.status() != Status::Fail
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("{}\n", self.title);
        for i in &self.items {
            out.push_str(&format!("{:<7} {}: {}\n", i.status.to_string(), i.name, i.detail));
            if let Some(w) = &i.witness {
                out.push_str(&format!("        witness: {w}\n"));
            }
        }
        out.push_str(&format!("overall: {}\n", self.status()));
        out
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Out<'a> {
            #[serde(flatten)]
            report: &'a Report,
            status: Status,
        }
        serde_json::to_string_pretty(&Out {
            report: self,
            status: self.status(),
        })
        .expect("reports serialize")
    }
}
