//! Per-user and per-run summaries, cross-seed confidence intervals and the
//! result tables written by the CLI.
//!
//! Each run is reduced to one value per (group, metric): the mean over the
//! group's users of their per-user means, plus the spread of user throughput.
//! Those per-seed values are then combined into a normal 90% interval.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::engine::{RunResult, UserRecord};
use crate::scenario::{Scheme, UserType};
use crate::{Error, Result};

/// Two-sided 90% normal quantile.
pub const Z90: f64 = 1.645;

/// Version of the summary table layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    /// Mean user throughput over active seconds.
    Throughput,
    /// Mean user SINR in dB, single-homed users only.
    Sinr,
    /// Mean session score.
    Mos,
    /// Standard deviation of mean user throughput across users.
    ThroughputStd,
}

impl Metric {
    pub const ALL: [Metric; 4] = [Metric::Throughput, Metric::Sinr, Metric::Mos, Metric::ThroughputStd];

    pub fn label(self) -> &'static str {
        match self {
            Metric::Throughput => "throughput",
            Metric::Sinr => "sinr",
            Metric::Mos => "mos",
            Metric::ThroughputStd => "throughput_std",
        }
    }

    pub fn unit(self) -> &'static str {
        match self {
            Metric::Throughput | Metric::ThroughputStd => "Mbps",
            Metric::Sinr => "dB",
            Metric::Mos => "MOS",
        }
    }
}

/// A subset of users summarized together.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Group {
    All,
    Type(UserType),
    /// Users whose home operator is this one.
    Operator(u32),
}

impl Group {
    pub fn kind(self) -> &'static str {
        match self {
            Group::All => "all",
            Group::Type(_) => "type",
            Group::Operator(_) => "operator",
        }
    }

    pub fn label(self) -> String {
        match self {
            Group::All => "all".into(),
            Group::Type(t) => t.label().into(),
            Group::Operator(op) => format!("op{op}"),
        }
    }

    pub fn contains(self, user: &UserRecord) -> bool {
        match self {
            Group::All => true,
            Group::Type(t) => user.user_type == t,
            Group::Operator(op) => user.home_operator == op,
        }
    }
}

fn mean(xs: &[f64]) -> Option<f64> {
    (!xs.is_empty()).then(|| xs.iter().sum::<f64>() / xs.len() as f64)
}

/// Sample standard deviation; zero for fewer than two values.
fn sample_std(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let m = mean(xs).expect("non-empty");
    (xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (xs.len() - 1) as f64).sqrt()
}

/// One run's values for a group of users.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GroupSummary {
    pub users: usize,
    /// Mbps; users without active seconds are left out.
    pub throughput_mean: Option<f64>,
    pub throughput_std: Option<f64>,
    pub sinr_mean: Option<f64>,
    pub sinr_std: Option<f64>,
    /// Users without finished sessions are left out.
    pub mos_mean: Option<f64>,
    pub mos_std: Option<f64>,
}

impl GroupSummary {
    pub fn value(&self, metric: Metric) -> Option<f64> {
        match metric {
            Metric::Throughput => self.throughput_mean,
            Metric::Sinr => self.sinr_mean,
            Metric::Mos => self.mos_mean,
            Metric::ThroughputStd => self.throughput_std,
        }
    }
}

pub fn summarize_group(users: &[UserRecord], group: Group) -> GroupSummary {
    let members: Vec<&UserRecord> = users.iter().filter(|u| group.contains(u)).collect();
    let collect = |f: fn(&UserRecord) -> Option<f64>| -> Vec<f64> {
        members.iter().filter_map(|u| f(u)).collect()
    };
    let thr = collect(|u| u.mean_throughput_bps().map(|t| t / 1e6));
    let sinr = collect(UserRecord::mean_sinr_db);
    let mos = collect(UserRecord::mean_mos);
    let spread = |xs: &[f64]| (!xs.is_empty()).then(|| sample_std(xs));
    GroupSummary {
        users: members.len(),
        throughput_mean: mean(&thr),
        throughput_std: spread(&thr),
        sinr_mean: mean(&sinr),
        sinr_std: spread(&sinr),
        mos_mean: mean(&mos),
        mos_std: spread(&mos),
    }
}

/// Groups present in a population: everyone, each user type, each home
/// operator.
pub fn groups_of(users: &[UserRecord]) -> Vec<Group> {
    let mut groups = vec![Group::All];
    groups.extend(
        UserType::ALL
            .into_iter()
            .filter(|t| users.iter().any(|u| u.user_type == *t))
            .map(Group::Type),
    );
    let mut ops: Vec<u32> = users.iter().map(|u| u.home_operator).collect();
    ops.sort_unstable();
    ops.dedup();
    groups.extend(ops.into_iter().map(Group::Operator));
    groups
}

/// Per-group values of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub seed: u64,
    pub groups: Vec<(Group, GroupSummary)>,
}

impl RunSummary {
    pub fn group(&self, group: Group) -> Option<&GroupSummary> {
        self.groups.iter().find(|(g, _)| *g == group).map(|(_, s)| s)
    }
}

pub fn summarize_run(result: &RunResult) -> RunSummary {
    RunSummary {
        seed: result.seed,
        groups: groups_of(&result.users)
            .into_iter()
            .map(|g| (g, summarize_group(&result.users, g)))
            .collect(),
    }
}

/// Cross-seed normal interval `mean ± 1.645 s / sqrt(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConfidenceInterval {
    pub mean: f64,
    pub low: f64,
    pub high: f64,
    /// Sample standard deviation of the per-seed values.
    pub std: f64,
    pub n: usize,
    /// A single value gives a zero-width interval with no real coverage.
    pub degenerate: bool,
}

impl ConfidenceInterval {
    pub fn half_width(&self) -> f64 {
        (self.high - self.low) / 2.0
    }

    pub fn width(&self) -> f64 {
        self.high - self.low
    }

    /// True when the two intervals share no point.
    pub fn disjoint(&self, other: &ConfidenceInterval) -> bool {
        self.high < other.low || other.high < self.low
    }
}

pub fn confidence_interval(values: &[f64]) -> Result<ConfidenceInterval> {
    let m = mean(values).ok_or(Error::EmptyInput)?;
    let std = sample_std(values);
    let n = values.len();
    let half = Z90 * std / (n as f64).sqrt();
    Ok(ConfidenceInterval {
        mean: m,
        low: m - half,
        high: m + half,
        std,
        n,
        degenerate: n < 2,
    })
}

/// One row of the summary table. Missing values (SINR of multihoming users,
/// empty groups) are `None`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub scenario: u8,
    pub scheme: Scheme,
    pub group_kind: &'static str,
    pub group: String,
    pub users: usize,
    pub metric: Metric,
    pub unit: &'static str,
    pub mean: Option<f64>,
    pub ci_low: Option<f64>,
    pub ci_high: Option<f64>,
    pub std: Option<f64>,
    pub seeds: usize,
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub schema_version: u32,
    pub scenario: u8,
    pub scheme: Scheme,
    pub seeds: Vec<u64>,
    pub rows: Vec<SummaryRow>,
}

impl Summary {
    pub fn row(&self, group: Group, metric: Metric) -> Option<&SummaryRow> {
        let (kind, label) = (group.kind(), group.label());
        self.rows
            .iter()
            .find(|r| r.group_kind == kind && r.group == label && r.metric == metric)
    }

    pub fn interval(&self, group: Group, metric: Metric) -> Option<ConfidenceInterval> {
        let r = self.row(group, metric)?;
        Some(ConfidenceInterval {
            mean: r.mean?,
            low: r.ci_low?,
            high: r.ci_high?,
            std: r.std?,
            n: r.seeds,
            degenerate: r.degenerate,
        })
    }
}

/// Combines replications of one configuration.
pub fn aggregate(results: &[RunResult]) -> Result<Summary> {
    let first = results.first().ok_or(Error::EmptyInput)?;
    let runs: Vec<RunSummary> = results.iter().map(summarize_run).collect();
    let mut rows = Vec::new();
    for group in groups_of(&first.users) {
        for metric in Metric::ALL {
            let per_seed: Vec<f64> = runs
                .iter()
                .filter_map(|r| r.group(group).and_then(|g| g.value(metric)))
                .collect();
            let ci = confidence_interval(&per_seed).ok();
            rows.push(SummaryRow {
                scenario: first.scenario,
                scheme: first.scheme,
                group_kind: group.kind(),
                group: group.label(),
                users: first.users.iter().filter(|u| group.contains(u)).count(),
                metric,
                unit: metric.unit(),
                mean: ci.map(|c| c.mean),
                ci_low: ci.map(|c| c.low),
                ci_high: ci.map(|c| c.high),
                std: ci.map(|c| c.std),
                seeds: per_seed.len(),
                degenerate: ci.is_some_and(|c| c.degenerate),
            });
        }
    }
    Ok(Summary {
        schema_version: SCHEMA_VERSION,
        scenario: first.scenario,
        scheme: first.scheme,
        seeds: results.iter().map(|r| r.seed).collect(),
        rows,
    })
}

pub fn write_summary_csv<W: Write>(summary: &Summary, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in &summary.rows {
        w.serialize(row).map_err(std::io::Error::from)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_summary_json<W: Write>(summary: &Summary, out: W) -> Result<()> {
    serde_json::to_writer_pretty(out, summary).map_err(std::io::Error::from)?;
    Ok(())
}

// csv cannot serialize flattened structs, so the rows spell out every column.
#[derive(Serialize)]
struct SessionRow {
    seed: u64,
    user: usize,
    app: crate::behavior::AppType,
    resolution: Option<u32>,
    start_tick: u64,
    end_tick: u64,
    planned_duration: u64,
    elapsed: u64,
    abandoned: bool,
    score: f64,
}

pub fn write_sessions_csv<W: Write>(results: &[RunResult], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in results {
        for s in &r.sessions {
            w.serialize(SessionRow {
                seed: r.seed,
                user: s.user,
                app: s.app,
                resolution: s.resolution,
                start_tick: s.start_tick,
                end_tick: s.end_tick,
                planned_duration: s.planned_duration,
                elapsed: s.elapsed,
                abandoned: s.abandoned,
                score: s.score,
            })
            .map_err(std::io::Error::from)?;
        }
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct TraceRow {
    seed: u64,
    tick: u64,
    user: usize,
    x: f64,
    y: f64,
    indoor: bool,
    active: bool,
}

pub fn write_trace_csv<W: Write>(results: &[RunResult], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in results {
        for t in &r.trace {
            w.serialize(TraceRow {
                seed: r.seed,
                tick: t.tick,
                user: t.user,
                x: t.x,
                y: t.y,
                indoor: t.indoor,
                active: t.active,
            })
            .map_err(std::io::Error::from)?;
        }
    }
    w.flush()?;
    Ok(())
}

/// What [`write_outputs`] should produce besides the summary tables.
#[derive(Debug, Clone, Copy, Default)]
pub struct OutputOptions {
    pub sessions: bool,
    pub trace: bool,
}

/// Writes `summary.csv`, `summary.json` and, on request, `sessions.csv` and
/// `trace.csv` into `dir`, creating it if needed.
pub fn write_outputs(
    dir: &Path,
    summary: &Summary,
    results: &[RunResult],
    options: OutputOptions,
) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let create = |name: &str| File::create(dir.join(name)).map(BufWriter::new);
    write_summary_csv(summary, create("summary.csv")?)?;
    let mut json = create("summary.json")?;
    write_summary_json(summary, &mut json)?;
    json.write_all(b"\n")?;
    json.flush()?;
    if options.sessions {
        write_sessions_csv(results, create("sessions.csv")?)?;
    }
    if options.trace {
        write_trace_csv(results, create("trace.csv")?)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn user(index: usize, t: UserType, op: u32, thr_mbps: f64, sinr: f64, mos: Option<f64>) -> UserRecord {
        UserRecord {
            index,
            user_type: t,
            home_operator: op,
            active_seconds: 10,
            throughput_sum_bps: thr_mbps * 1e6 * 10.0,
            unattached_seconds: 0,
            sinr_sum_db: (!t.is_multihoming()).then_some(sinr * 10.0),
            sessions_completed: mos.map_or(0, |_| 2),
            sessions_abandoned: 0,
            score_sum: mos.map_or(0.0, |m| 2.0 * m),
        }
    }

    fn result(seed: u64, users: Vec<UserRecord>) -> RunResult {
        RunResult {
            seed,
            scenario: 1,
            scheme: Scheme::Er,
            duration: 10,
            warmup: 0,
            users,
            sessions: Vec::new(),
            trace: Vec::new(),
        }
    }

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn ci_of_one_to_ten() {
        let xs: Vec<f64> = (1..=10).map(f64::from).collect();
        let ci = confidence_interval(&xs).unwrap();
        close(ci.mean, 5.5, 1e-12);
        close(ci.std, 3.0277, 1e-4);
        close(ci.half_width(), 1.575, 0.001);
        assert!(!ci.degenerate);
    }

    #[test]
    fn ci_edge_cases() {
        let ci = confidence_interval(&[4.0; 6]).unwrap();
        assert_eq!(ci.width(), 0.0);
        let single = confidence_interval(&[2.5]).unwrap();
        assert!(single.degenerate);
        assert_eq!((single.low, single.high), (2.5, 2.5));
        assert!(matches!(confidence_interval(&[]), Err(Error::EmptyInput)));
        assert!(matches!(aggregate(&[]), Err(Error::EmptyInput)));
    }

    #[test]
    fn ci_width_shrinks_with_root_n() {
        use rand::SeedableRng;
        use rand_distr::{Distribution, Normal};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let normal = Normal::new(10.0, 2.0).unwrap();
        // average widths over many draws to tame the sampling noise of s
        let mean_width = |n: usize, rng: &mut rand_chacha::ChaCha8Rng| {
            let reps = 4000;
            (0..reps)
                .map(|_| {
                    let xs: Vec<f64> = (0..n).map(|_| normal.sample(rng)).collect();
                    confidence_interval(&xs).unwrap().width()
                })
                .sum::<f64>()
                / reps as f64
        };
        // E[s] carries a small-sample bias factor c4(n)
        let c4 = |n: usize| {
            let n = n as f64;
            1.0 - 1.0 / (4.0 * n) - 7.0 / (32.0 * n * n)
        };
        let base = mean_width(4, &mut rng) / c4(4) * 2.0;
        for n in [9, 16, 25] {
            let w = mean_width(n, &mut rng) / c4(n) * (n as f64).sqrt();
            assert!((w / base - 1.0).abs() <= 0.10, "n={n}: {w} vs {base}");
        }
    }

    #[test]
    fn group_summaries() {
        let users = vec![
            user(0, UserType::OneContract, 1, 2.0, 10.0, Some(3.0)),
            user(1, UserType::OneContract, 2, 4.0, 0.0, None),
            user(2, UserType::ThreeContractsMultihoming, 1, 9.0, 0.0, Some(4.0)),
        ];
        let all = summarize_group(&users, Group::All);
        assert_eq!(all.users, 3);
        close(all.throughput_mean.unwrap(), 5.0, 1e-12);
        close(all.sinr_mean.unwrap(), 5.0, 1e-12);
        close(all.mos_mean.unwrap(), 3.5, 1e-12);
        close(all.throughput_std.unwrap(), sample_std(&[2.0, 4.0, 9.0]), 1e-12);

        let mh = summarize_group(&users, Group::Type(UserType::ThreeContractsMultihoming));
        assert_eq!(mh.sinr_mean, None);
        assert_eq!(mh.throughput_std, Some(0.0));

        let op1 = summarize_group(&users, Group::Operator(1));
        assert_eq!(op1.users, 2);
        close(op1.throughput_mean.unwrap(), 5.5, 1e-12);

        let groups = groups_of(&users);
        assert_eq!(groups.len(), 1 + 2 + 2);
    }

    #[test]
    fn aggregate_rows_and_formats() {
        let results: Vec<RunResult> = (0..3)
            .map(|s| {
                result(
                    s,
                    vec![
                        user(0, UserType::ThreeContracts, 1, 3.0 + s as f64, 8.0, Some(3.5)),
                        user(1, UserType::ThreeContractsMultihoming, 2, 5.0, 0.0, Some(3.0)),
                    ],
                )
            })
            .collect();
        let summary = aggregate(&results).unwrap();
        let thr = summary
            .interval(Group::Type(UserType::ThreeContracts), Metric::Throughput)
            .unwrap();
        close(thr.mean, 4.0, 1e-12);
        close(thr.std, 1.0, 1e-12);
        assert_eq!(thr.n, 3);

        let mh_sinr = summary
            .row(Group::Type(UserType::ThreeContractsMultihoming), Metric::Sinr)
            .unwrap();
        assert_eq!(mh_sinr.mean, None);
        assert_eq!(mh_sinr.seeds, 0);

        let metrics: Vec<Metric> = summary
            .rows
            .iter()
            .filter(|r| r.group_kind == "all")
            .map(|r| r.metric)
            .collect();
        assert_eq!(metrics, Metric::ALL);

        let mut csv_out = Vec::new();
        write_summary_csv(&summary, &mut csv_out).unwrap();
        let mut json_out = Vec::new();
        write_summary_json(&summary, &mut json_out).unwrap();

        // the two formats carry the same values
        let json: serde_json::Value = serde_json::from_slice(&json_out).unwrap();
        let json_rows = json["rows"].as_array().unwrap();
        let mut reader = csv::Reader::from_reader(csv_out.as_slice());
        let headers = reader.headers().unwrap().clone();
        let csv_rows: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();
        assert_eq!(csv_rows.len(), json_rows.len());
        for (c, j) in csv_rows.iter().zip(json_rows) {
            for (h, field) in headers.iter().zip(c.iter()) {
                let v = &j[h];
                match v {
                    serde_json::Value::Null => assert_eq!(field, ""),
                    serde_json::Value::Number(n) => {
                        assert_eq!(field.parse::<f64>().unwrap(), n.as_f64().unwrap())
                    }
                    serde_json::Value::String(s) => assert_eq!(field, s),
                    serde_json::Value::Bool(b) => assert_eq!(field, b.to_string()),
                    other => panic!("unexpected {other}"),
                }
            }
        }
    }

    #[test]
    fn outputs_land_in_directory() {
        let dir = tempfile::tempdir().unwrap();
        let mut r = result(1, vec![user(0, UserType::OneContract, 1, 1.0, 1.0, Some(2.0))]);
        r.sessions.push(crate::engine::SessionRecord {
            user: 0,
            app: crate::behavior::AppType::Video,
            resolution: Some(720),
            start_tick: 3,
            end_tick: 9,
            planned_duration: 6,
            elapsed: 6,
            abandoned: false,
            score: 2.0,
        });
        let results = vec![r];
        let summary = aggregate(&results).unwrap();
        write_outputs(
            dir.path(),
            &summary,
            &results,
            OutputOptions {
                sessions: true,
                trace: false,
            },
        )
        .unwrap();
        for f in ["summary.csv", "summary.json", "sessions.csv"] {
            assert!(dir.path().join(f).exists(), "{f}");
        }
        assert!(!dir.path().join("trace.csv").exists());
        let sessions = std::fs::read_to_string(dir.path().join("sessions.csv")).unwrap();
        assert_eq!(
            sessions,
            "seed,user,app,resolution,start_tick,end_tick,planned_duration,elapsed,abandoned,score\n\
             1,0,video,720,3,9,6,6,false,2.0\n"
        );
        assert!(summary.rows.iter().all(|r| r.degenerate || r.mean.is_none()));
    }

    #[test]
    fn trace_rows() {
        let mut r = result(4, Vec::new());
        r.trace.push(crate::engine::TraceSample {
            tick: 10,
            user: 2,
            x: -1.5,
            y: 3.0,
            indoor: true,
            active: false,
        });
        let mut out = Vec::new();
        write_trace_csv(&[r], &mut out).unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap(),
            "seed,tick,user,x,y,indoor,active\n4,10,2,-1.5,3.0,true,false\n"
        );
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_users() -> impl Strategy<Value = Vec<UserRecord>> {
            prop::collection::vec((0usize..5, 1u32..4, 0.0f64..50.0, -5.0f64..30.0, 1.0f64..5.0), 1..40)
                .prop_map(|rows| {
                    rows.into_iter()
                        .enumerate()
                        .map(|(i, (t, op, thr, sinr, mos))| user(i, UserType::ALL[t], op, thr, sinr, Some(mos)))
                        .collect()
                })
        }

        proptest! {
            #[test]
            fn overall_is_weighted_type_mean(users in arb_users()) {
                let all = summarize_group(&users, Group::All);
                let mut weighted = 0.0;
                for t in UserType::ALL {
                    let g = summarize_group(&users, Group::Type(t));
                    if let Some(m) = g.throughput_mean {
                        weighted += m * g.users as f64;
                    }
                }
                let overall = all.throughput_mean.unwrap();
                prop_assert!((overall - weighted / users.len() as f64).abs() < 1e-9);
            }

            #[test]
            fn permutation_invariant(users in arb_users(), seeds in prop::collection::vec(0u64..100, 1..6), rot in 0usize..40) {
                let results: Vec<RunResult> = seeds
                    .iter()
                    .enumerate()
                    .map(|(k, &s)| {
                        let mut u = users.clone();
                        for x in &mut u {
                            x.throughput_sum_bps *= 1.0 + k as f64 * 0.1;
                        }
                        result(s, u)
                    })
                    .collect();
                let a = aggregate(&results).unwrap();
                let mut shuffled = results.clone();
                shuffled.reverse();
                for r in &mut shuffled {
                    let n = r.users.len();
                    r.users.rotate_left(rot % n);
                }
                let b = aggregate(&shuffled).unwrap();
                for (x, y) in a.rows.iter().zip(&b.rows) {
                    prop_assert_eq!(x.metric, y.metric);
                    prop_assert_eq!(&x.group, &y.group);
                    for (p, q) in [(x.mean, y.mean), (x.ci_low, y.ci_low), (x.std, y.std)] {
                        match (p, q) {
                            (Some(p), Some(q)) => prop_assert!((p - q).abs() <= 1e-9 * p.abs().max(1.0)),
                            (p, q) => prop_assert_eq!(p, q),
                        }
                    }
                }
            }
        }
    }
}
