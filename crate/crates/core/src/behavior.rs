//! User behaviour: activities made of sessions, per-user profiles, session
//! samplers, throughput-to-MOS curves and the abandonment rule.
//!
//! Defaults are loaded from `data/behavior.toml`, which is compiled into the
//! crate and can be overridden from a scenario document.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::distr::weighted::WeightedIndex;
use rand::Rng;
use rand_distr::{Distribution, Exp, LogNormal, Normal, Weibull};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

const DEFAULT_BEHAVIOR: &str = include_str!("../data/behavior.toml");

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AppType {
    Web,
    Video,
    Facebook,
    Messaging,
    Maps,
}

impl AppType {
    pub const ALL: [AppType; 5] = [
        AppType::Web,
        AppType::Video,
        AppType::Facebook,
        AppType::Messaging,
        AppType::Maps,
    ];

    pub fn label(self) -> &'static str {
        match self {
            AppType::Web => "web",
            AppType::Video => "video",
            AppType::Facebook => "facebook",
            AppType::Messaging => "messaging",
            AppType::Maps => "maps",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for AppType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for AppType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AppType::ALL
            .into_iter()
            .find(|a| a.label() == s)
            .ok_or_else(|| Error::invalid("app", format!("unknown application type `{s}`")))
    }
}

/// Mean and standard deviation of a per-user normal draw.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormalSpec {
    pub mean: f64,
    pub sd: f64,
}

impl NormalSpec {
    const MAX_REJECTIONS: usize = 10_000;

    /// Rejection sampling restricted to `accept`; falls back to clamping the
    /// mean if the acceptance region is practically unreachable.
    fn sample_where<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        accept: impl Fn(f64) -> bool,
        fallback: f64,
    ) -> f64 {
        let Ok(normal) = Normal::new(self.mean, self.sd) else {
            return fallback;
        };
        for _ in 0..Self::MAX_REJECTIONS {
            let x = normal.sample(rng);
            if accept(x) {
                return x;
            }
        }
        fallback
    }

    fn validate(&self, field: &str) -> Result<()> {
        if !(self.mean.is_finite() && self.sd.is_finite() && self.sd >= 0.0) {
            return Err(Error::invalid(field, "needs a finite mean and sd >= 0"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActivityParams {
    pub success_rate_per_min: NormalSpec,
    pub failure_rate_per_min: NormalSpec,
    pub continue_after_completed: NormalSpec,
    pub continue_after_abandoned: NormalSpec,
}

/// Generalized Pareto gap between sessions of one activity (location 0).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GapParams {
    pub shape: f64,
    pub scale: f64,
}

impl GapParams {
    pub fn quantile(&self, u: f64) -> f64 {
        if self.shape.abs() < 1e-12 {
            -self.scale * (1.0 - u).ln()
        } else {
            self.scale * ((1.0 - u).powf(-self.shape) - 1.0) / self.shape
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        if self.shape.abs() < 1e-12 {
            1.0 - (-x / self.scale).exp()
        } else {
            1.0 - (1.0 + self.shape * x / self.scale).powf(-1.0 / self.shape)
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.quantile(rng.random::<f64>())
    }
}

/// Inter-session gap in seconds.
pub fn inter_session_gap<R: Rng + ?Sized>(gap: &GapParams, rng: &mut R) -> f64 {
    gap.sample(rng)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbandonmentParams {
    /// Seconds at the start of a session during which users never give up.
    pub grace_period_s: u64,
    pub mos_threshold: f64,
    pub intercept: f64,
    pub slope: f64,
    pub abandoned_mos: f64,
}

impl AbandonmentParams {
    /// Per-second probability of abandoning given the running mean MOS.
    pub fn probability(&self, mean_mos: f64, elapsed_s: u64) -> f64 {
        if elapsed_s <= self.grace_period_s || mean_mos > self.mos_threshold {
            return 0.0;
        }
        (self.intercept - self.slope * mean_mos).clamp(0.0, 1.0)
    }
}

/// Free-function form of [`AbandonmentParams::probability`].
pub fn abandonment_probability(params: &AbandonmentParams, mean_mos: f64, elapsed_s: u64) -> f64 {
    params.probability(mean_mos, elapsed_s)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum DurationModel {
    Weibull { shape: f64, scale: f64 },
    LogNormal { mu: f64, sigma: f64 },
}

impl DurationModel {
    /// Continuous duration in seconds.
    pub fn sample_continuous<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            DurationModel::Weibull { shape, scale } => Weibull::new(scale, shape)
                .expect("validated Weibull parameters")
                .sample(rng),
            DurationModel::LogNormal { mu, sigma } => LogNormal::new(mu, sigma)
                .expect("validated log-normal parameters")
                .sample(rng),
        }
    }

    /// Whole seconds, rounded up, at least one.
    pub fn sample_seconds<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        whole_seconds(self.sample_continuous(rng))
    }

    pub fn median(&self) -> f64 {
        match *self {
            DurationModel::Weibull { shape, scale } => scale * 2f64.ln().powf(1.0 / shape),
            DurationModel::LogNormal { mu, .. } => mu.exp(),
        }
    }

    fn validate(&self, field: &str) -> Result<()> {
        let ok = match *self {
            DurationModel::Weibull { shape, scale } => shape > 0.0 && scale > 0.0,
            DurationModel::LogNormal { mu, sigma } => mu.is_finite() && sigma > 0.0,
        };
        if !ok {
            return Err(Error::invalid(field, "distribution parameters out of range"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AppParams {
    pub weight: NormalSpec,
    pub duration: DurationModel,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResolutionWeight {
    pub resolution: u32,
    pub probability: f64,
}

/// Piecewise-linear throughput-to-MOS curve, knots in Mbps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<[f64; 2]>", into = "Vec<[f64; 2]>")]
pub struct MosCurve {
    knots: Vec<[f64; 2]>,
}

impl MosCurve {
    pub fn new(knots: Vec<[f64; 2]>) -> Result<Self> {
        if knots.is_empty() {
            return Err(Error::invalid("mos_curves", "a curve needs at least one knot"));
        }
        for w in knots.windows(2) {
            if !(w[1][0] > w[0][0]) {
                return Err(Error::invalid(
                    "mos_curves",
                    "knot throughputs must be strictly increasing",
                ));
            }
            if w[1][1] < w[0][1] {
                return Err(Error::invalid("mos_curves", "MOS must not decrease with throughput"));
            }
        }
        if knots
            .iter()
            .any(|&[t, m]| !t.is_finite() || t < 0.0 || !(1.0..=5.0).contains(&m))
        {
            return Err(Error::invalid(
                "mos_curves",
                "knots need throughput >= 0 and MOS within [1, 5]",
            ));
        }
        Ok(MosCurve { knots })
    }

    pub fn knots(&self) -> &[[f64; 2]] {
        &self.knots
    }

    /// Throughput at which the curve stops rising, in bit/s.
    pub fn plateau_bps(&self) -> f64 {
        let top = self.knots.last().expect("non-empty")[1];
        let first = self.knots.iter().find(|k| k[1] >= top).expect("non-empty");
        first[0] * 1e6
    }

    pub fn mos(&self, throughput_bps: f64) -> f64 {
        let x = throughput_bps / 1e6;
        let k = &self.knots;
        if x <= k[0][0] {
            return k[0][1];
        }
        let hi = k.partition_point(|p| p[0] <= x);
        if hi == k.len() {
            return k[k.len() - 1][1];
        }
        let ([x0, y0], [x1, y1]) = (k[hi - 1], k[hi]);
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }
}

impl TryFrom<Vec<[f64; 2]>> for MosCurve {
    type Error = Error;

    fn try_from(knots: Vec<[f64; 2]>) -> Result<Self> {
        MosCurve::new(knots)
    }
}

impl From<MosCurve> for Vec<[f64; 2]> {
    fn from(c: MosCurve) -> Self {
        c.knots
    }
}

/// Curves keyed by application, with video split by resolution
/// (`video-1080`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MosCurveSet {
    pub curves: BTreeMap<String, MosCurve>,
}

pub fn curve_key(app: AppType, resolution: Option<u32>) -> String {
    match (app, resolution) {
        (AppType::Video, Some(r)) => format!("video-{r}"),
        _ => app.label().to_string(),
    }
}

impl MosCurveSet {
    pub fn curve(&self, app: AppType, resolution: Option<u32>) -> Result<&MosCurve> {
        let key = curve_key(app, resolution);
        self.curves.get(&key).ok_or(Error::UnknownCurve(key))
    }

    pub fn mos(&self, app: AppType, resolution: Option<u32>, throughput_bps: f64) -> Result<f64> {
        Ok(self.curve(app, resolution)?.mos(throughput_bps))
    }
}

/// Free-function form of [`MosCurveSet::mos`].
pub fn mos_from_throughput(
    curves: &MosCurveSet,
    app: AppType,
    resolution: Option<u32>,
    throughput_bps: f64,
) -> Result<f64> {
    curves.mos(app, resolution, throughput_bps)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BehaviorParams {
    pub activity: ActivityParams,
    pub gap: GapParams,
    pub abandonment: AbandonmentParams,
    pub apps: BTreeMap<AppType, AppParams>,
    pub video_resolutions: Vec<ResolutionWeight>,
    pub mos_curves: MosCurveSet,
}

impl Default for BehaviorParams {
    fn default() -> Self {
        toml::from_str(DEFAULT_BEHAVIOR).expect("bundled behaviour defaults are valid")
    }
}

impl BehaviorParams {
    pub(crate) fn validate(&self) -> Result<()> {
        let a = &self.activity;
        a.success_rate_per_min.validate("behavior.activity.success_rate_per_min")?;
        a.failure_rate_per_min.validate("behavior.activity.failure_rate_per_min")?;
        a.continue_after_completed.validate("behavior.activity.continue_after_completed")?;
        a.continue_after_abandoned.validate("behavior.activity.continue_after_abandoned")?;
        if !(self.gap.scale > 0.0 && self.gap.shape.is_finite() && self.gap.shape >= 0.0) {
            return Err(Error::invalid("behavior.gap", "needs scale > 0 and shape >= 0"));
        }
        let ab = &self.abandonment;
        if !(1.0..=5.0).contains(&ab.abandoned_mos) {
            return Err(Error::invalid("behavior.abandonment.abandoned_mos", "must lie in [1, 5]"));
        }
        for app in AppType::ALL {
            let field = format!("behavior.apps.{app}");
            let Some(p) = self.apps.get(&app) else {
                return Err(Error::invalid(field, "missing application entry"));
            };
            p.weight.validate(&field)?;
            p.duration.validate(&field)?;
            if app != AppType::Video {
                self.mos_curves.curve(app, None)?;
            }
        }
        if self.video_resolutions.is_empty()
            || self.video_resolutions.iter().any(|r| !(r.probability >= 0.0))
            || self.video_resolutions.iter().map(|r| r.probability).sum::<f64>() <= 0.0
        {
            return Err(Error::invalid(
                "behavior.video_resolutions",
                "needs non-negative probabilities with a positive sum",
            ));
        }
        for r in &self.video_resolutions {
            self.mos_curves.curve(AppType::Video, Some(r.resolution))?;
        }
        Ok(())
    }

    fn resolution_index(&self) -> WeightedIndex<f64> {
        WeightedIndex::new(self.video_resolutions.iter().map(|r| r.probability))
            .expect("validated resolution weights")
    }
}

/// Behavioural parameters drawn once per user.
#[derive(Debug, Clone, PartialEq)]
pub struct UserProfile {
    pub success_rate_per_min: f64,
    pub failure_rate_per_min: f64,
    pub p_continue_completed: f64,
    pub p_continue_abandoned: f64,
    /// Session-type probabilities in [`AppType::ALL`] order, summing to 1.
    pub app_weights: [f64; 5],
}

pub fn sample_user_profile<R: Rng + ?Sized>(params: &BehaviorParams, rng: &mut R) -> UserProfile {
    let a = &params.activity;
    let positive = |spec: &NormalSpec, rng: &mut R| {
        spec.sample_where(rng, |x| x > 0.0, spec.mean.max(f64::MIN_POSITIVE))
    };
    let unit = |spec: &NormalSpec, rng: &mut R| {
        spec.sample_where(rng, |x| (0.0..=1.0).contains(&x), spec.mean.clamp(0.0, 1.0))
    };
    let success_rate_per_min = positive(&a.success_rate_per_min, rng);
    let failure_rate_per_min = positive(&a.failure_rate_per_min, rng);
    let p_continue_completed = unit(&a.continue_after_completed, rng);
    let p_continue_abandoned = unit(&a.continue_after_abandoned, rng);

    let mut app_weights = [0.0; 5];
    for app in AppType::ALL {
        let spec = params.apps[&app].weight;
        app_weights[app.index()] = spec.sample_where(rng, |x| x >= 0.0, spec.mean.max(0.0));
    }
    let total: f64 = app_weights.iter().sum();
    if total > 0.0 {
        app_weights.iter_mut().for_each(|w| *w /= total);
    } else {
        app_weights = [0.2; 5];
    }
    UserProfile {
        success_rate_per_min,
        failure_rate_per_min,
        p_continue_completed,
        p_continue_abandoned,
        app_weights,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ActivityOutcome {
    Success,
    Failure,
}

/// Seconds until the next activity; `None` means no activity has happened yet
/// and uses the success rate.
pub fn next_activity_delay<R: Rng + ?Sized>(
    profile: &UserProfile,
    last: Option<ActivityOutcome>,
    rng: &mut R,
) -> f64 {
    let rate = match last {
        Some(ActivityOutcome::Failure) => profile.failure_rate_per_min,
        _ => profile.success_rate_per_min,
    };
    Exp::new(rate).expect("positive activity rate").sample(rng) * 60.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SessionPlan {
    pub app: AppType,
    pub resolution: Option<u32>,
    pub planned_duration: u64,
}

pub fn sample_session<R: Rng + ?Sized>(
    profile: &UserProfile,
    params: &BehaviorParams,
    rng: &mut R,
) -> SessionPlan {
    let app = AppType::ALL[WeightedIndex::new(profile.app_weights)
        .expect("normalised weights")
        .sample(rng)];
    let resolution = (app == AppType::Video)
        .then(|| params.video_resolutions[params.resolution_index().sample(rng)].resolution);
    let planned_duration = params.apps[&app].duration.sample_seconds(rng);
    SessionPlan {
        app,
        resolution,
        planned_duration,
    }
}

fn whole_seconds(x: f64) -> u64 {
    // `as` saturates for huge draws
    (x.ceil() as u64).max(1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum SessionOutcome {
    Running,
    Completed,
    Abandoned { at: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SessionEvent {
    Continue,
    Completed,
    Abandoned,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Session {
    pub app: AppType,
    pub resolution: Option<u32>,
    pub planned_duration: u64,
    pub elapsed: u64,
    pub mos_samples: Vec<f64>,
    pub cumulative_mean_mos: f64,
    pub outcome: SessionOutcome,
    curve: MosCurve,
}

impl Session {
    pub fn new(plan: SessionPlan, curves: &MosCurveSet) -> Result<Self> {
        if plan.planned_duration == 0 {
            return Err(Error::invalid("planned_duration", "must be at least one second"));
        }
        Ok(Session {
            app: plan.app,
            resolution: plan.resolution,
            planned_duration: plan.planned_duration,
            elapsed: 0,
            mos_samples: Vec::new(),
            cumulative_mean_mos: 1.0,
            outcome: SessionOutcome::Running,
            curve: curves.curve(plan.app, plan.resolution)?.clone(),
        })
    }

    pub fn is_running(&self) -> bool {
        self.outcome == SessionOutcome::Running
    }

    /// One second of service at `throughput_bps`.
    pub fn step<R: Rng + ?Sized>(
        &mut self,
        throughput_bps: f64,
        abandonment: &AbandonmentParams,
        rng: &mut R,
    ) -> Result<SessionEvent> {
        if !self.is_running() {
            return Err(Error::Domain("session has already finished".into()));
        }
        self.elapsed += 1;
        let mos = self.curve.mos(throughput_bps);
        self.mos_samples.push(mos);
        let n = self.mos_samples.len() as f64;
        self.cumulative_mean_mos += (mos - self.cumulative_mean_mos) / n;

        if self.elapsed >= self.planned_duration {
            self.outcome = SessionOutcome::Completed;
            return Ok(SessionEvent::Completed);
        }
        let p = abandonment.probability(self.cumulative_mean_mos, self.elapsed);
        if p > 0.0 && rng.random_bool(p) {
            self.outcome = SessionOutcome::Abandoned { at: self.elapsed };
            return Ok(SessionEvent::Abandoned);
        }
        Ok(SessionEvent::Continue)
    }

    /// Session MOS; the unserved part of an abandoned session counts at
    /// `abandoned_mos`.
    pub fn score(&self, abandoned_mos: f64) -> Result<f64> {
        let sum: f64 = self.mos_samples.iter().sum();
        match self.outcome {
            SessionOutcome::Running => Err(Error::SessionRunning),
            SessionOutcome::Completed => Ok(sum / self.mos_samples.len() as f64),
            SessionOutcome::Abandoned { at } => {
                let d = self.planned_duration as f64;
                Ok((sum + abandoned_mos * (d - at as f64)) / d)
            }
        }
    }
}

/// Session score with the default abandonment penalty of MOS 1.
pub fn session_score(session: &Session) -> Result<f64> {
    session.score(1.0)
}

pub fn continue_activity<R: Rng + ?Sized>(
    profile: &UserProfile,
    last: SessionOutcome,
    rng: &mut R,
) -> bool {
    let p = match last {
        SessionOutcome::Completed => profile.p_continue_completed,
        SessionOutcome::Abandoned { .. } => profile.p_continue_abandoned,
        SessionOutcome::Running => return false,
    };
    rng.random_bool(p)
}

/// Ticks spent waiting for a continuous delay.
fn wait_ticks(seconds: f64) -> u64 {
    whole_seconds(seconds)
}

#[derive(Debug, Clone, PartialEq)]
pub enum BehaviorPhase {
    /// Between activities.
    Idle { remaining: u64 },
    /// Between sessions of one activity.
    Gap { remaining: u64 },
    InSession(Session),
}

/// Summary of a session that just ended.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FinishedSession {
    pub app: AppType,
    pub resolution: Option<u32>,
    pub planned_duration: u64,
    pub elapsed: u64,
    pub abandoned: bool,
    pub active_mean_mos: f64,
    pub score: f64,
    /// Set when this session closed its activity.
    pub activity_outcome: Option<ActivityOutcome>,
}

/// One user's activity/session state machine.
#[derive(Debug, Clone, PartialEq)]
pub struct UserBehavior {
    pub profile: UserProfile,
    pub phase: BehaviorPhase,
    pub last_activity: Option<ActivityOutcome>,
    /// Sessions started in the current activity.
    pub activity_sessions: u32,
}

impl UserBehavior {
    pub fn new<R: Rng + ?Sized>(profile: UserProfile, rng: &mut R) -> Self {
        let remaining = wait_ticks(next_activity_delay(&profile, None, rng));
        UserBehavior {
            profile,
            phase: BehaviorPhase::Idle { remaining },
            last_activity: None,
            activity_sessions: 0,
        }
    }

    /// True while a session is running, i.e. the user wants radio resources.
    pub fn is_active(&self) -> bool {
        matches!(self.phase, BehaviorPhase::InSession(_))
    }

    pub fn session(&self) -> Option<&Session> {
        match &self.phase {
            BehaviorPhase::InSession(s) => Some(s),
            _ => None,
        }
    }

    /// Advances one second. `throughput_bps` is only used while in a session.
    pub fn step<R: Rng + ?Sized>(
        &mut self,
        throughput_bps: f64,
        params: &BehaviorParams,
        rng: &mut R,
    ) -> Result<Option<FinishedSession>> {
        match &mut self.phase {
            BehaviorPhase::Idle { remaining } | BehaviorPhase::Gap { remaining } => {
                *remaining = remaining.saturating_sub(1);
                if *remaining == 0 {
                    if matches!(self.phase, BehaviorPhase::Idle { .. }) {
                        self.activity_sessions = 0;
                    }
                    self.start_session(params, rng)?;
                }
                Ok(None)
            }
            BehaviorPhase::InSession(session) => {
                let event = session.step(throughput_bps, &params.abandonment, rng)?;
                if event == SessionEvent::Continue {
                    return Ok(None);
                }
                let outcome = session.outcome;
                let mut finished = FinishedSession {
                    app: session.app,
                    resolution: session.resolution,
                    planned_duration: session.planned_duration,
                    elapsed: session.elapsed,
                    abandoned: event == SessionEvent::Abandoned,
                    active_mean_mos: session.cumulative_mean_mos,
                    score: session.score(params.abandonment.abandoned_mos)?,
                    activity_outcome: None,
                };
                if continue_activity(&self.profile, outcome, rng) {
                    let remaining = wait_ticks(inter_session_gap(&params.gap, rng));
                    self.phase = BehaviorPhase::Gap { remaining };
                } else {
                    let result = if finished.abandoned {
                        ActivityOutcome::Failure
                    } else {
                        ActivityOutcome::Success
                    };
                    finished.activity_outcome = Some(result);
                    self.last_activity = Some(result);
                    let delay = next_activity_delay(&self.profile, Some(result), rng);
                    self.phase = BehaviorPhase::Idle {
                        remaining: wait_ticks(delay),
                    };
                }
                Ok(Some(finished))
            }
        }
    }

    fn start_session<R: Rng + ?Sized>(&mut self, params: &BehaviorParams, rng: &mut R) -> Result<()> {
        let plan = sample_session(&self.profile, params, rng);
        self.phase = BehaviorPhase::InSession(Session::new(plan, &params.mos_curves)?);
        self.activity_sessions += 1;
        Ok(())
    }
}
