//! Bandwidth allocation (ER, TE) and per-second base-station selection.
//!
//! Every tick the active users choose cells one at a time in a fresh random
//! order. Each user sees the choices already made this tick and picks the
//! cell (or, when multihoming, the pair of cells) with the best estimated
//! throughput under the cell's allocation scheme. Once everyone has chosen,
//! every cell splits its carrier among the users actually attached to it.
//!
//! Cells never learn that a user is multihoming: each allocates locally, so a
//! multihoming user gets a full share on both of its links.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::scenario::Scheme;
use crate::{Error, Result};

/// Equal split of `bandwidth_hz` among `users`.
pub fn allocate_er(users: usize, bandwidth_hz: f64) -> Result<Vec<f64>> {
    if users == 0 {
        return Err(Error::Domain("no users to allocate bandwidth to".into()));
    }
    Ok(vec![bandwidth_hz / users as f64; users])
}

/// Throughput-equalizing split: `b_a = B * (1/e_a) / sum_j (1/e_j)`.
///
/// Users with zero spectral efficiency get no bandwidth. Errors when no user
/// can be served.
pub fn allocate_te(efficiencies: &[f64], bandwidth_hz: f64) -> Result<Vec<f64>> {
    let inv_sum: f64 = efficiencies
        .iter()
        .filter(|&&e| e > 0.0)
        .map(|&e| 1.0 / e)
        .sum();
    if inv_sum == 0.0 {
        return Err(Error::Domain(
            "no user with positive spectral efficiency".into(),
        ));
    }
    Ok(efficiencies
        .iter()
        .map(|&e| {
            if e > 0.0 {
                bandwidth_hz / (e * inv_sum)
            } else {
                0.0
            }
        })
        .collect())
}

/// Tentative load of a cell during the selection round.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CellLoad {
    pub users: usize,
    /// Sum of `1/e` over attached users, for TE estimates.
    pub inverse_efficiency_sum: f64,
}

impl CellLoad {
    fn add(&mut self, efficiency: f64) {
        self.users += 1;
        self.inverse_efficiency_sum += 1.0 / efficiency;
    }
}

/// Throughput a user with `efficiency` bps/Hz would get by joining a cell
/// with the given tentative load.
pub fn estimate_throughput(efficiency: f64, load: &CellLoad, bandwidth_hz: f64, scheme: Scheme) -> f64 {
    if efficiency <= 0.0 {
        return 0.0;
    }
    match scheme {
        Scheme::Er => bandwidth_hz / (load.users + 1) as f64 * efficiency,
        Scheme::Te => bandwidth_hz / (load.inverse_efficiency_sum + 1.0 / efficiency),
    }
}

/// A cell as seen by the selection procedure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub operator: u32,
    pub bandwidth_hz: f64,
}

/// A cell a user may use this tick.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Candidate {
    pub cell: usize,
    /// Spectral efficiency in bps/Hz.
    pub efficiency: f64,
}

/// One active user's selection input.
#[derive(Debug, Clone, PartialEq)]
pub struct AccessRequest {
    pub user: usize,
    pub multihoming: bool,
    /// Cells of the user's contracted operators.
    pub candidates: Vec<Candidate>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Attachment {
    /// Index into the request list.
    pub request: usize,
    pub efficiency: f64,
    pub bandwidth_hz: f64,
}

impl Attachment {
    pub fn throughput(&self) -> f64 {
        self.bandwidth_hz * self.efficiency
    }
}

/// Outcome of one selection round.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Assignment {
    /// Attached users per cell, in attachment order.
    pub cells: Vec<Vec<Attachment>>,
    /// Serving cells per request (empty when unattached).
    pub serving: Vec<Vec<usize>>,
}

impl Assignment {
    pub fn empty(cells: usize) -> Self {
        Assignment {
            cells: vec![Vec::new(); cells],
            serving: Vec::new(),
        }
    }

    fn attachment(&self, request: usize, cell: usize) -> &Attachment {
        self.cells[cell]
            .iter()
            .find(|a| a.request == request)
            .expect("serving cell lists the request")
    }

    /// Per-link throughputs of a request, in serving order.
    pub fn link_throughputs(&self, request: usize) -> impl Iterator<Item = f64> + '_ {
        self.serving[request]
            .iter()
            .map(move |&cell| self.attachment(request, cell).throughput())
    }

    /// Aggregate throughput of a request: the sum over its serving links.
    pub fn user_throughput(&self, request: usize) -> f64 {
        self.link_throughputs(request).sum()
    }

    pub fn allocated_bandwidth(&self, cell: usize) -> f64 {
        self.cells[cell].iter().map(|a| a.bandwidth_hz).sum()
    }
}

/// Runs one selection round.
///
/// Users are visited in a uniformly random order. A single-homed user picks
/// the cell with the highest estimate; a multihoming user picks the distinct
/// pair with the highest summed estimate (all pairs are enumerated). Users
/// with no usable cell stay unattached. Final bandwidths are then computed per
/// cell with `scheme`.
pub fn select_attachments<R: Rng + ?Sized>(
    requests: &[AccessRequest],
    cells: &[Cell],
    scheme: Scheme,
    distinct_operator_pairs: bool,
    rng: &mut R,
) -> Assignment {
    let mut order: Vec<usize> = (0..requests.len()).collect();
    order.shuffle(rng);
    select_in_order(requests, cells, scheme, distinct_operator_pairs, &order)
}

/// [`select_attachments`] with an explicit visiting order.
pub fn select_in_order(
    requests: &[AccessRequest],
    cells: &[Cell],
    scheme: Scheme,
    distinct_operator_pairs: bool,
    order: &[usize],
) -> Assignment {
    let mut loads = vec![CellLoad::default(); cells.len()];
    let mut members: Vec<Vec<(usize, f64)>> = vec![Vec::new(); cells.len()];
    let mut serving = vec![Vec::new(); requests.len()];
    let mut estimates: Vec<(Candidate, f64)> = Vec::new();

    for &r in order {
        let req = &requests[r];
        estimates.clear();
        estimates.extend(req.candidates.iter().filter(|c| c.efficiency > 0.0).map(|&c| {
            let est = estimate_throughput(c.efficiency, &loads[c.cell], cells[c.cell].bandwidth_hz, scheme);
            (c, est)
        }));
        let chosen: Vec<Candidate> = if req.multihoming {
            best_pair(&estimates, cells, distinct_operator_pairs)
        } else {
            best_single(&estimates).into_iter().collect()
        };
        for c in chosen {
            loads[c.cell].add(c.efficiency);
            members[c.cell].push((r, c.efficiency));
            serving[r].push(c.cell);
        }
    }

    let cells_out = members
        .into_iter()
        .enumerate()
        .map(|(cell, users)| finalize_cell(&users, cells[cell].bandwidth_hz, scheme))
        .collect();
    Assignment {
        cells: cells_out,
        serving,
    }
}

fn best_single(estimates: &[(Candidate, f64)]) -> Option<Candidate> {
    let mut best: Option<(Candidate, f64)> = None;
    for &(c, est) in estimates {
        // strict comparison keeps the first (lowest-index) cell on ties
        if est > 0.0 && best.is_none_or(|(_, b)| est > b) {
            best = Some((c, est));
        }
    }
    best.map(|(c, _)| c)
}

fn best_pair(estimates: &[(Candidate, f64)], cells: &[Cell], distinct_operators: bool) -> Vec<Candidate> {
    let mut best: Option<(Candidate, Candidate, f64)> = None;
    for (i, &(a, ea)) in estimates.iter().enumerate() {
        for &(b, eb) in &estimates[i + 1..] {
            if a.cell == b.cell
                || (distinct_operators && cells[a.cell].operator == cells[b.cell].operator)
            {
                continue;
            }
            let sum = ea + eb;
            if best.is_none_or(|(_, _, s)| sum > s) {
                best = Some((a, b, sum));
            }
        }
    }
    match best {
        Some((a, b, _)) => vec![a, b],
        // fewer than two usable cells: fall back to the single best one
        None => best_single(estimates).into_iter().collect(),
    }
}

fn finalize_cell(users: &[(usize, f64)], bandwidth_hz: f64, scheme: Scheme) -> Vec<Attachment> {
    if users.is_empty() {
        return Vec::new();
    }
    let shares = match scheme {
        Scheme::Er => allocate_er(users.len(), bandwidth_hz),
        Scheme::Te => {
            let effs: Vec<f64> = users.iter().map(|u| u.1).collect();
            allocate_te(&effs, bandwidth_hz)
        }
    }
    .expect("attached users have positive efficiency");
    users
        .iter()
        .zip(shares)
        .map(|(&(request, efficiency), bandwidth_hz)| Attachment {
            request,
            efficiency,
            bandwidth_hz,
        })
        .collect()
}
