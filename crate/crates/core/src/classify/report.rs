//! Classification reports and their text rendering.

use std::fmt;

use crate::minkowski::AxisKind;

use super::solver::Leaf;
use super::{CurveCase, Equation, Theorem};

/// Outcome of comparing one computed value with its reference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Exact agreement, possibly up to sign and the declared normalizer.
    Match,
    /// Checked internally with nothing published to compare against.
    Verified,
    /// The published value is wrong; the computed value equals the recorded
    /// correction.
    Erratum { printed: String, corrected: String },
    Mismatch { expected: String, found: String },
    Unresolved(String),
}

impl Verdict {
    pub fn is_exact(&self) -> bool {
        matches!(self, Verdict::Match | Verdict::Verified)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Match => f.write_str("match"),
            Verdict::Verified => f.write_str("verified"),
            Verdict::Erratum { printed, corrected } => write!(f, "erratum: published {printed}, computed {corrected}"),
            Verdict::Mismatch { expected, found } => write!(f, "MISMATCH: expected {expected}, found {found}"),
            Verdict::Unresolved(s) => write!(f, "UNRESOLVED: {s}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Matches,
    MatchesWithErrata(Vec<String>),
    Mismatch(Vec<String>),
    Unresolved(Vec<String>),
}

impl Status {
    /// Everything agrees, allowing documented errata.
    pub fn is_ok(&self) -> bool {
        matches!(self, Status::Matches | Status::MatchesWithErrata(_))
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Matches => f.write_str("matches reference"),
            Status::MatchesWithErrata(v) => write!(f, "matches reference with {} erratum/errata", v.len()),
            Status::Mismatch(v) => write!(f, "MISMATCH ({})", v.len()),
            Status::Unresolved(v) => write!(f, "UNRESOLVED ({})", v.len()),
        }
    }
}

/// One generating-curve case: its leaves and how they compare.
#[derive(Clone, Debug)]
pub struct CaseReport {
    pub case: CurveCase,
    pub leaves: Vec<Leaf>,
    pub verdict: Verdict,
    /// Names of the surfaces behind the families, in family order.
    pub surfaces: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub case: CurveCase,
    pub label: String,
    pub bindings: Vec<String>,
    pub computed: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug)]
pub struct SectionReport {
    pub axis: AxisKind,
    pub equation: Equation,
    pub cases: Vec<CaseReport>,
    pub probes: Vec<ProbeReport>,
}

#[derive(Clone, Debug)]
pub struct ClassificationReport {
    pub theorem: Theorem,
    pub sections: Vec<SectionReport>,
    pub status: Status,
}

impl ClassificationReport {
    pub fn new(theorem: Theorem, sections: Vec<SectionReport>) -> Self {
        let mut errata = Vec::new();
        let mut mismatches = Vec::new();
        let mut unresolved = Vec::new();
        for sec in &sections {
            let verdicts = sec
                .cases
                .iter()
                .map(|c| (c.case.to_string(), &c.verdict))
                .chain(sec.probes.iter().map(|p| (format!("{} {}", p.case, p.label), &p.verdict)));
            for (what, v) in verdicts {
                let tag = format!("{} axis, {}, {what}: {v}", sec.axis, sec.equation);
                match v {
                    Verdict::Erratum { .. } => errata.push(tag),
                    Verdict::Mismatch { .. } => mismatches.push(tag),
                    Verdict::Unresolved(_) => unresolved.push(tag),
                    _ => {}
                }
            }
        }
        let status = if !mismatches.is_empty() {
            Status::Mismatch(mismatches)
        } else if !unresolved.is_empty() {
            Status::Unresolved(unresolved)
        } else if !errata.is_empty() {
            Status::MatchesWithErrata(errata)
        } else {
            Status::Matches
        };
        Self { theorem, sections, status }
    }

    pub fn axes(&self) -> Vec<AxisKind> {
        let mut v: Vec<AxisKind> = self.sections.iter().map(|s| s.axis).collect();
        v.dedup();
        v
    }

    pub fn errata(&self) -> Vec<String> {
        match &self.status {
            Status::MatchesWithErrata(v) => v.clone(),
            _ => self
                .all_probes()
                .filter(|p| matches!(p.verdict, Verdict::Erratum { .. }))
                .map(|p| format!("{}: {}", p.label, p.verdict))
                .collect(),
        }
    }

    pub fn all_probes(&self) -> impl Iterator<Item = &ProbeReport> {
        self.sections.iter().flat_map(|s| s.probes.iter())
    }

    pub fn all_cases(&self) -> impl Iterator<Item = (&SectionReport, &CaseReport)> {
        self.sections.iter().flat_map(|s| s.cases.iter().map(move |c| (s, c)))
    }
}

impl fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.theorem, self.theorem.title())?;
        for sec in &self.sections {
            writeln!(f, "\n[{} axis | {}]", sec.axis, sec.equation)?;
            for c in &sec.cases {
                writeln!(f, "  {} ({})", c.case, c.verdict)?;
                let mut names = c.surfaces.iter();
                for l in &c.leaves {
                    match l {
                        Leaf::Family(_) => match names.next() {
                            Some(n) => writeln!(f, "    {l} [{n}]")?,
                            None => writeln!(f, "    {l}")?,
                        },
                        _ => writeln!(f, "    {l}")?,
                    }
                }
            }
            for p in &sec.probes {
                let under = if p.bindings.is_empty() { String::new() } else { format!(" under {}", p.bindings.join(", ")) };
                writeln!(f, "  check {} {}{}: {} ({})", p.case, p.label, under, p.computed, p.verdict)?;
            }
        }
        writeln!(f, "\nstatus: {}", self.status)?;
        if let Status::MatchesWithErrata(v) | Status::Mismatch(v) | Status::Unresolved(v) = &self.status {
            for line in v {
                writeln!(f, "  - {line}")?;
            }
        }
        Ok(())
    }
}
