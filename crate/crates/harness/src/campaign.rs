//! Running a property over a graph source, in parallel, with ordered JSONL
//! output and an eagerly flushed counterexample sink.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};
use std::sync::{mpsc, Mutex};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use koptlab_core::io::parse_graph6;
use koptlab_core::Graph;

use crate::error::{HarnessError, Result};
use crate::property::{Outcome, Property, Settings, Verdict};
use crate::source::SourceItem;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub property: String,
    pub graph6: String,
    pub k: usize,
    pub outcome: Outcome,
    pub witness: Value,
    pub ms: f64,
}

impl Report {
    /// The report with its timing zeroed, for comparing runs.
    pub fn untimed(&self) -> Report {
        Report { ms: 0.0, ..self.clone() }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub holds: usize,
    pub violated: usize,
    pub skipped: usize,
}

impl Summary {
    fn add(&mut self, outcome: Outcome) {
        match outcome {
            Outcome::Holds => self.holds += 1,
            Outcome::Violated => self.violated += 1,
            Outcome::Skipped => self.skipped += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.holds + self.violated + self.skipped
    }

    /// 0 when nothing was violated, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.violated > 0)
    }
}

/// Where reports go. `violation` sees each violated report as soon as a
/// worker produces it; `report` sees every report in instance order.
pub trait ReportSink {
    fn violation(&mut self, report: &Report) -> Result<()>;
    fn report(&mut self, report: &Report) -> Result<()>;
}

/// JSON lines to any writer, violations also to a second writer that is
/// flushed after every record.
pub struct JsonlSink<R: Write, C: Write> {
    pub reports: R,
    pub counterexamples: C,
}

fn write_line<W: Write>(w: &mut W, report: &Report) -> std::io::Result<()> {
    serde_json::to_writer(&mut *w, report)?;
    w.write_all(b"\n")
}

impl<R: Write, C: Write> ReportSink for JsonlSink<R, C> {
    fn violation(&mut self, report: &Report) -> Result<()> {
        write_line(&mut self.counterexamples, report)
            .and_then(|_| self.counterexamples.flush())
            .map_err(crate::error::io_error("counterexample sink"))
    }

    fn report(&mut self, report: &Report) -> Result<()> {
        write_line(&mut self.reports, report).map_err(crate::error::io_error("report output"))
    }
}

/// Collects everything in memory.
#[derive(Default)]
pub struct VecSink {
    pub reports: Vec<Report>,
    pub violations: Vec<Report>,
}

impl ReportSink for VecSink {
    fn violation(&mut self, report: &Report) -> Result<()> {
        self.violations.push(report.clone());
        Ok(())
    }

    fn report(&mut self, report: &Report) -> Result<()> {
        self.reports.push(report.clone());
        Ok(())
    }
}

fn evaluate<F>(id: &str, item: &SourceItem, k: usize, check: &F) -> Report
where
    F: Fn(&Graph, usize) -> Verdict,
{
    let start = Instant::now();
    let verdict = match &item.graph {
        Ok(g) => check(g, k),
        Err(e) => Verdict::skipped(format!("unreadable graph: {e}")),
    };
    Report {
        property: id.to_string(),
        graph6: item.label.clone(),
        k,
        outcome: verdict.outcome,
        witness: verdict.witness,
        ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

/// Runs `check` on every `(item, k)` pair with `jobs` workers. Output order
/// is the instance order whatever the job count.
pub fn run_with<I, F, S>(id: &str, items: I, ks: &[usize], jobs: usize, check: F, sink: &mut S) -> Result<Summary>
where
    I: Iterator<Item = SourceItem> + Send,
    F: Fn(&Graph, usize) -> Verdict + Sync,
    S: ReportSink + ?Sized,
{
    if ks.is_empty() {
        return Err(HarnessError::Usage("no k values given".into()));
    }
    let tasks = Mutex::new(
        items
            .flat_map(|item| ks.iter().map(move |&k| (item.clone(), k)))
            .enumerate(),
    );
    let (tx, rx) = mpsc::channel::<(usize, Report)>();
    let mut summary = Summary::default();
    std::thread::scope(|scope| {
        for _ in 0..jobs.max(1) {
            let tx = tx.clone();
            let (tasks, check) = (&tasks, &check);
            scope.spawn(move || loop {
                let next = tasks.lock().expect("task queue poisoned").next();
                let Some((i, (item, k))) = next else { break };
                if tx.send((i, evaluate(id, &item, k, check))).is_err() {
                    break;
                }
            });
        }
        drop(tx);
        let mut pending = BTreeMap::new();
        let mut next = 0;
        for (i, report) in rx {
            if report.outcome == Outcome::Violated {
                sink.violation(&report)?;
            }
            pending.insert(i, report);
            while let Some(report) = pending.remove(&next) {
                sink.report(&report)?;
                summary.add(report.outcome);
                next += 1;
            }
        }
        Ok(summary)
    })
}

/// A property campaign; `k`-free properties run once per graph with `k = 0`.
pub fn run_property<I, S>(
    property: Property,
    items: I,
    ks: &[usize],
    jobs: usize,
    settings: &Settings,
    sink: &mut S,
) -> Result<Summary>
where
    I: Iterator<Item = SourceItem> + Send,
    S: ReportSink + ?Sized,
{
    let ks = if property.uses_k() { ks.to_vec() } else { vec![0] };
    run_with(property.id(), items, &ks, jobs, |g, k| property.check(g, k, settings), sink)
}

/// Reads JSON-lines reports.
pub fn read_reports<R: BufRead>(input: R) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line.map_err(crate::error::io_error("report input"))?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line).map_err(|source| HarnessError::Json { line: i + 1, source })?);
    }
    Ok(out)
}

/// Re-decides a recorded instance. A violated record replays when the
/// fresh verdict is violated again.
pub fn replay(report: &Report, settings: &Settings) -> Result<Verdict> {
    let property = Property::from_id(&report.property)
        .ok_or_else(|| HarnessError::Usage(format!("unknown property `{}`", report.property)))?;
    let g = parse_graph6(&report.graph6)?;
    Ok(property.check(&g, report.k, settings))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::source::GraphSource;

    fn odd_edges_fail(g: &Graph, _k: usize) -> Verdict {
        if g.edge_count() % 2 == 1 {
            Verdict { outcome: Outcome::Violated, witness: Value::Null }
        } else {
            Verdict { outcome: Outcome::Holds, witness: Value::Null }
        }
    }

    #[test]
    fn order_and_summary_do_not_depend_on_jobs() {
        let src = GraphSource::Exhaustive { n: 4, iso: false };
        let mut one = VecSink::default();
        let s1 = run_with("t", src.items().unwrap(), &[1, 2], 1, odd_edges_fail, &mut one).unwrap();
        let mut four = VecSink::default();
        let s4 = run_with("t", src.items().unwrap(), &[1, 2], 4, odd_edges_fail, &mut four).unwrap();
        assert_eq!(s1, s4);
        assert_eq!(s1.total(), 128);
        assert_eq!(s1.violated, 64);
        let strip = |v: &[Report]| v.iter().map(Report::untimed).collect::<Vec<_>>();
        assert_eq!(strip(&one.reports), strip(&four.reports));
        assert_eq!(four.violations.len(), 64);
        assert_eq!(s1.exit_code(), 1);
    }

    #[test]
    fn unreadable_lines_are_skipped() {
        let src = GraphSource::Graph6(vec!["C~".into(), "!!".into()]);
        let mut sink = VecSink::default();
        let s = run_property(Property::Favaron, src.items().unwrap(), &[1], 1, &Settings::default(), &mut sink).unwrap();
        assert_eq!((s.holds, s.skipped), (1, 1));
        assert_eq!(s.exit_code(), 0);
    }

    #[test]
    fn jsonl_round_trip_and_replay() {
        let src = GraphSource::Graph6(vec!["C~".into(), "Dhc".into()]);
        let mut sink = JsonlSink { reports: Vec::new(), counterexamples: Vec::new() };
        run_property(Property::ConjTuzaSpecial, src.items().unwrap(), &[1, 2], 2, &Settings::default(), &mut sink).unwrap();
        let reports = read_reports(&sink.reports[..]).unwrap();
        assert_eq!(reports.len(), 4);
        for r in &reports {
            let fresh = replay(r, &Settings::default()).unwrap();
            assert_eq!(fresh.outcome, r.outcome);
            assert_eq!(fresh.witness, r.witness);
        }
        assert!(sink.counterexamples.is_empty());
    }
}
