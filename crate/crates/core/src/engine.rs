//! The per-second simulation loop and seed replications.
//!
//! Each tick runs, in order: mobility for every user, radio for the users
//! with a running session, base-station selection and allocation, behaviour
//! for every user, and metric recording. A session that starts during a tick
//! first asks for resources on the following tick.
//!
//! Shadowing is advanced lazily: the distance a user walks while idle is
//! accumulated and applied in one update once the user becomes active again.
//! Because the correlation over `d1 + d2` is the product of the correlations
//! over `d1` and `d2`, this has the same law as updating every tick.

use rayon::prelude::*;
use serde::Serialize;

use crate::access::{select_attachments, AccessRequest, Assignment, Candidate, Cell};
use crate::behavior::{sample_user_profile, AppType, UserBehavior};
use crate::mobility::MobilityState;
use crate::radio::LinkState;
use crate::rng::{stream, SimRng, Subsystem};
use crate::scenario::{BaseStationSpec, Point, ScenarioConfig, Scheme, UserSpec, UserType};
use crate::{Error, Result};

/// Optional extras recorded by a run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Record a position sample for every user each `n` ticks.
    pub trace_interval: Option<u64>,
}

/// Accumulated per-user measurements over the recorded window.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UserRecord {
    pub index: usize,
    pub user_type: UserType,
    pub home_operator: u32,
    /// Seconds with a running session.
    pub active_seconds: u64,
    /// Sum of per-second throughput over active seconds, bit/s.
    pub throughput_sum_bps: f64,
    /// Active seconds spent without any serving cell.
    pub unattached_seconds: u64,
    /// Sum of per-second SINR in dB; `None` for multihoming users.
    pub sinr_sum_db: Option<f64>,
    pub sessions_completed: u64,
    pub sessions_abandoned: u64,
    pub score_sum: f64,
}

impl UserRecord {
    fn new(user: &UserSpec) -> Self {
        UserRecord {
            index: user.index,
            user_type: user.user_type,
            home_operator: user.home_operator,
            active_seconds: 0,
            throughput_sum_bps: 0.0,
            unattached_seconds: 0,
            sinr_sum_db: (!user.user_type.is_multihoming()).then_some(0.0),
            sessions_completed: 0,
            sessions_abandoned: 0,
            score_sum: 0.0,
        }
    }

    pub fn sessions(&self) -> u64 {
        self.sessions_completed + self.sessions_abandoned
    }

    /// Mean throughput over active seconds.
    pub fn mean_throughput_bps(&self) -> Option<f64> {
        (self.active_seconds > 0).then(|| self.throughput_sum_bps / self.active_seconds as f64)
    }

    /// Mean SINR (dB) over active seconds; single-homed users only.
    pub fn mean_sinr_db(&self) -> Option<f64> {
        match self.sinr_sum_db {
            Some(s) if self.active_seconds > 0 => Some(s / self.active_seconds as f64),
            _ => None,
        }
    }

    /// Mean session score over finished sessions.
    pub fn mean_mos(&self) -> Option<f64> {
        let n = self.sessions();
        (n > 0).then(|| self.score_sum / n as f64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SessionRecord {
    pub user: usize,
    pub app: AppType,
    pub resolution: Option<u32>,
    pub start_tick: u64,
    pub end_tick: u64,
    pub planned_duration: u64,
    pub elapsed: u64,
    pub abandoned: bool,
    pub score: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceSample {
    pub tick: u64,
    pub user: usize,
    pub x: f64,
    pub y: f64,
    pub indoor: bool,
    pub active: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunResult {
    pub seed: u64,
    pub scenario: u8,
    pub scheme: Scheme,
    pub duration: u64,
    pub warmup: u64,
    pub users: Vec<UserRecord>,
    pub sessions: Vec<SessionRecord>,
    pub trace: Vec<TraceSample>,
}

struct UserState {
    spec: UserSpec,
    /// Indices of the stations of contracted operators.
    candidates: Vec<usize>,
    mobility: MobilityState,
    behavior: UserBehavior,
    links: Vec<LinkState>,
    /// Distance walked since the last shadowing update.
    pending_move_m: f64,
    mobility_rng: SimRng,
    shadowing_rng: SimRng,
    behavior_rng: SimRng,
}

/// A single replication in progress.
pub struct Simulation {
    config: ScenarioConfig,
    seed: u64,
    tick: u64,
    options: RunOptions,
    stations: Vec<BaseStationSpec>,
    cells: Vec<Cell>,
    users: Vec<UserState>,
    access_rng: SimRng,
    requests: Vec<AccessRequest>,
    assignment: Assignment,
    records: Vec<UserRecord>,
    sessions: Vec<SessionRecord>,
    trace: Vec<TraceSample>,
    rx_dbm: Vec<f64>,
    shadowing: Vec<f64>,
}

impl Simulation {
    pub fn new(config: &ScenarioConfig, seed: u64) -> Result<Self> {
        Self::with_options(config, seed, RunOptions::default())
    }

    pub fn with_options(config: &ScenarioConfig, seed: u64, options: RunOptions) -> Result<Self> {
        config.validate_for_run()?;
        let stations = config.base_stations.clone();
        let cells = stations
            .iter()
            .map(|bs| Cell {
                operator: bs.operator,
                bandwidth_hz: bs.bandwidth_hz,
            })
            .collect();
        let sigma = config.radio.shadowing_sigma_db;
        let users: Vec<UserState> = config
            .users()
            .into_iter()
            .map(|spec| {
                let id = spec.index as u64;
                let mut placement = stream(seed, Subsystem::Placement, id);
                let mobility = MobilityState::initial(&config.geometry, &config.mobility, &mut placement);
                let mut profile_rng = stream(seed, Subsystem::Profile, id);
                let profile = sample_user_profile(&config.behavior, &mut profile_rng);
                let mut behavior_rng = stream(seed, Subsystem::Behavior, id);
                let behavior = UserBehavior::new(profile, &mut behavior_rng);
                let mut shadowing_rng = stream(seed, Subsystem::Shadowing, id);
                let links = stations
                    .iter()
                    .map(|_| LinkState::new(sigma, &mut shadowing_rng))
                    .collect();
                let candidates = stations
                    .iter()
                    .enumerate()
                    .filter(|(_, bs)| spec.has_contract(bs.operator))
                    .map(|(i, _)| i)
                    .collect();
                UserState {
                    spec,
                    candidates,
                    mobility,
                    behavior,
                    links,
                    pending_move_m: 0.0,
                    mobility_rng: stream(seed, Subsystem::Mobility, id),
                    shadowing_rng,
                    behavior_rng,
                }
            })
            .collect();
        let records = users.iter().map(|u| UserRecord::new(&u.spec)).collect();
        Ok(Simulation {
            seed,
            tick: 0,
            options,
            access_rng: stream(seed, Subsystem::Access, 0),
            assignment: Assignment::empty(stations.len()),
            requests: Vec::new(),
            records,
            sessions: Vec::new(),
            trace: Vec::new(),
            rx_dbm: Vec::with_capacity(stations.len()),
            shadowing: Vec::with_capacity(stations.len()),
            cells,
            stations,
            users,
            config: config.clone(),
        })
    }

    /// Ticks completed so far.
    pub fn now(&self) -> u64 {
        self.tick
    }

    /// Requests of the last tick, one per active user.
    pub fn requests(&self) -> &[AccessRequest] {
        &self.requests
    }

    /// Assignment of the last tick; request indices refer to [`Self::requests`].
    pub fn assignment(&self) -> &Assignment {
        &self.assignment
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn position(&self, user: usize) -> Point {
        self.users[user].mobility.position
    }

    pub fn is_active(&self, user: usize) -> bool {
        self.users[user].behavior.is_active()
    }

    /// Advances the simulation by one second.
    pub fn tick(&mut self) -> Result<()> {
        let geometry = &self.config.geometry;
        let indoor_area = geometry.indoor_area();

        for u in &mut self.users {
            let moved = u.mobility.step(geometry, &self.config.mobility, &mut u.mobility_rng);
            u.pending_move_m += moved;
        }

        // radio for active users; SINR per candidate kept for recording
        self.requests.clear();
        let mut sinrs: Vec<Vec<f64>> = Vec::new();
        let radio = &self.config.radio;
        for (i, u) in self.users.iter_mut().enumerate() {
            if !u.behavior.is_active() {
                continue;
            }
            if u.pending_move_m > 0.0 {
                for link in &mut u.links {
                    link.update_shadowing(u.pending_move_m, radio, &mut u.shadowing_rng);
                }
                u.pending_move_m = 0.0;
            }
            let pos = u.mobility.position;
            let indoor = indoor_area.contains(pos);
            self.shadowing.clear();
            self.shadowing.extend(u.links.iter().map(|l| l.shadowing_db));
            radio.received_powers_dbm(pos, indoor, &self.stations, &self.shadowing, &mut self.rx_dbm);
            let mut user_sinrs = Vec::with_capacity(u.candidates.len());
            let candidates = u
                .candidates
                .iter()
                .map(|&cell| {
                    let sinr = radio.sinr_from_powers(cell, &self.stations, &self.rx_dbm);
                    let link = &mut u.links[cell];
                    link.last_path_loss_db = self.stations[cell].tx_power_dbm - self.rx_dbm[cell];
                    link.last_sinr_db = sinr;
                    user_sinrs.push(sinr);
                    Candidate {
                        cell,
                        efficiency: radio.spectral_efficiency(sinr),
                    }
                })
                .collect();
            sinrs.push(user_sinrs);
            self.requests.push(AccessRequest {
                user: i,
                multihoming: u.spec.user_type.is_multihoming(),
                candidates,
            });
        }

        self.assignment = select_attachments(
            &self.requests,
            &self.cells,
            self.config.scheme,
            self.config.distinct_operator_pairs,
            &mut self.access_rng,
        );
        debug_assert!(conservation_holds(&self.assignment, &self.cells));

        let recording = self.tick >= self.config.warmup;
        let mut throughput = vec![0.0; self.users.len()];
        for (r, req) in self.requests.iter().enumerate() {
            let thr = self.assignment.user_throughput(r);
            throughput[req.user] = thr;
            if !recording {
                continue;
            }
            let rec = &mut self.records[req.user];
            rec.active_seconds += 1;
            rec.throughput_sum_bps += thr;
            let serving = &self.assignment.serving[r];
            if serving.is_empty() {
                rec.unattached_seconds += 1;
            }
            if let Some(sum) = rec.sinr_sum_db.as_mut() {
                let user = &self.users[req.user];
                let sinr = match serving.first() {
                    Some(&cell) => {
                        let k = user.candidates.iter().position(|&c| c == cell).expect("candidate");
                        sinrs[r][k]
                    }
                    None => sinrs[r].iter().copied().fold(f64::NEG_INFINITY, f64::max),
                };
                if sinr.is_finite() {
                    *sum += sinr;
                }
            }
        }

        let params = &self.config.behavior;
        for (i, u) in self.users.iter_mut().enumerate() {
            let Some(done) = u.behavior.step(throughput[i], params, &mut u.behavior_rng)? else {
                continue;
            };
            if !recording {
                continue;
            }
            let rec = &mut self.records[i];
            if done.abandoned {
                rec.sessions_abandoned += 1;
            } else {
                rec.sessions_completed += 1;
            }
            rec.score_sum += done.score;
            self.sessions.push(SessionRecord {
                user: i,
                app: done.app,
                resolution: done.resolution,
                start_tick: self.tick + 1 - done.elapsed,
                end_tick: self.tick,
                planned_duration: done.planned_duration,
                elapsed: done.elapsed,
                abandoned: done.abandoned,
                score: done.score,
            });
        }

        if let Some(every) = self.options.trace_interval.filter(|&n| n > 0) {
            if self.tick.is_multiple_of(every) {
                for (i, u) in self.users.iter().enumerate() {
                    let p = u.mobility.position;
                    self.trace.push(TraceSample {
                        tick: self.tick,
                        user: i,
                        x: p.x,
                        y: p.y,
                        indoor: indoor_area.contains(p),
                        active: u.behavior.is_active(),
                    });
                }
            }
        }

        self.tick += 1;
        Ok(())
    }

    pub fn finish(self) -> RunResult {
        RunResult {
            seed: self.seed,
            scenario: self.config.scenario,
            scheme: self.config.scheme,
            duration: self.tick,
            warmup: self.config.warmup,
            users: self.records,
            sessions: self.sessions,
            trace: self.trace,
        }
    }
}

/// Every cell with attached users hands out exactly its whole carrier.
pub fn conservation_holds(assignment: &Assignment, cells: &[Cell]) -> bool {
    assignment.cells.iter().zip(cells).all(|(attached, cell)| {
        attached.is_empty() || {
            let total: f64 = attached.iter().map(|a| a.bandwidth_hz).sum();
            (total - cell.bandwidth_hz).abs() <= 1e-9 * cell.bandwidth_hz
        }
    })
}

/// Runs `config.duration` ticks for one seed.
pub fn run(config: &ScenarioConfig, seed: u64) -> Result<RunResult> {
    run_with_options(config, seed, RunOptions::default())
}

pub fn run_with_options(config: &ScenarioConfig, seed: u64, options: RunOptions) -> Result<RunResult> {
    let mut sim = Simulation::with_options(config, seed, options)?;
    for _ in 0..config.duration {
        sim.tick()?;
    }
    Ok(sim.finish())
}

/// One run per configured seed, in parallel. Results keep the seed order.
pub fn run_replications(config: &ScenarioConfig) -> Result<Vec<RunResult>> {
    run_replications_with(config, RunOptions::default(), |_| {})
}

/// [`run_replications`] with options and a callback invoked as each run
/// finishes (in completion order).
pub fn run_replications_with(
    config: &ScenarioConfig,
    options: RunOptions,
    on_done: impl Fn(&RunResult) + Sync,
) -> Result<Vec<RunResult>> {
    if config.seeds.is_empty() {
        return Err(Error::invalid("seeds", "at least one seed is required"));
    }
    config.validate_for_run()?;
    config
        .seeds
        .par_iter()
        .map(|&seed| {
            let result = run_with_options(config, seed, options).map_err(|e| Error::Replication {
                seed,
                source: Box::new(e),
            })?;
            on_done(&result);
            Ok(result)
        })
        .collect()
}
