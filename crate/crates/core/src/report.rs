//! Structured check reports shared by every `check_*` operation.
//!
//! One record per case, printed as `suite,case,verdict,depth,detail` with one
//! record per line so shell harnesses can parse the output. The aggregate exit
//! code is 0 when everything passed, 1 on any refutation, 2 when some cases
//! were left undecided.

use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Pass,
    Refuted,
    Undecided,
    /// A case whose preconditions ruled it out; counted but not a failure.
    Skipped,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Pass => "PASS",
            Verdict::Refuted => "REFUTED",
            Verdict::Undecided => "UNDECIDED",
            Verdict::Skipped => "SKIP",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Debug)]
pub struct Record {
    pub suite: String,
    pub case: String,
    pub verdict: Verdict,
    pub depth: Option<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub records: Vec<Record>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn push(
        &mut self,
        suite: &str,
        case: impl Into<String>,
        verdict: Verdict,
        depth: Option<usize>,
        detail: impl Into<String>,
    ) {
        self.records.push(Record {
            suite: suite.to_string(),
            case: case.into(),
            verdict,
            depth,
            detail: detail.into(),
        });
    }

    pub fn merge(&mut self, other: Report) {
        self.records.extend(other.records);
    }

    pub fn passed(&self) -> usize {
        self.count(Verdict::Pass)
    }

    pub fn refuted(&self) -> usize {
        self.count(Verdict::Refuted)
    }

    pub fn undecided(&self) -> usize {
        self.count(Verdict::Undecided)
    }

    pub fn skipped(&self) -> usize {
        self.count(Verdict::Skipped)
    }

    fn count(&self, v: Verdict) -> usize {
        self.records.iter().filter(|r| r.verdict == v).count()
    }

    pub fn all_passed(&self) -> bool {
        self.refuted() == 0 && self.undecided() == 0
    }

    /// 0 = all pass, 1 = refutation, 2 = undecided cases remain.
    pub fn exit_code(&self) -> i32 {
        if self.refuted() > 0 {
            1
        } else if self.undecided() > 0 {
            2
        } else {
            0
        }
    }

    /// Records sorted by (suite, case), one comma-separated line each.
    pub fn lines(&self) -> Vec<String> {
        let mut sorted: Vec<&Record> = self.records.iter().collect();
        sorted.sort_by(|a, b| (&a.suite, &a.case).cmp(&(&b.suite, &b.case)));
        sorted
            .iter()
            .map(|r| {
                let depth = r.depth.map(|d| d.to_string()).unwrap_or_default();
                format!("{},{},{},{},{}", r.suite, r.case, r.verdict, depth, r.detail)
            })
            .collect()
    }

    pub fn summary(&self) -> String {
        format!(
            "pass={} refuted={} undecided={} skipped={}",
            self.passed(),
            self.refuted(),
            self.undecided(),
            self.skipped()
        )
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in self.lines() {
            writeln!(f, "{line}")?;
        }
        write!(f, "# {}", self.summary())
    }
}
