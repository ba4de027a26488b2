//! Levy-walk movement: truncated power-law flights separated by fixed
//! pauses, walking speed set by the environment the user is currently in.

use std::f64::consts::TAU;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::scenario::{Geometry, Point, Rect};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MobilityParams {
    /// Exponent of the flight-length density, `p(l) ∝ l^-exponent`. Assumed value.
    pub flight_exponent: f64,
    pub min_flight_m: f64,
    pub max_flight_m: f64,
    pub pause_s: u32,
    pub outdoor_speed_mps: f64,
    pub indoor_speed_mps: f64,
}

impl Default for MobilityParams {
    fn default() -> Self {
        MobilityParams {
            flight_exponent: 1.6,
            min_flight_m: 1.0,
            max_flight_m: 300.0,
            pause_s: 5,
            outdoor_speed_mps: 2.0,
            indoor_speed_mps: 0.2,
        }
    }
}

impl MobilityParams {
    pub(crate) fn validate(&self) -> Result<()> {
        if !(self.flight_exponent.is_finite() && self.flight_exponent > 0.0) {
            return Err(Error::invalid("mobility.flight_exponent", "must be positive"));
        }
        if !(self.min_flight_m > 0.0 && self.max_flight_m > self.min_flight_m) {
            return Err(Error::invalid(
                "mobility.max_flight_m",
                "flight bounds must satisfy 0 < min < max",
            ));
        }
        for (field, v) in [
            ("mobility.outdoor_speed_mps", self.outdoor_speed_mps),
            ("mobility.indoor_speed_mps", self.indoor_speed_mps),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(field, "must be positive"));
            }
        }
        Ok(())
    }

    /// Complementary CDF of the truncated flight-length distribution.
    pub fn flight_ccdf(&self, length: f64) -> f64 {
        let (lo, hi) = (self.min_flight_m, self.max_flight_m);
        if length <= lo {
            return 1.0;
        }
        if length >= hi {
            return 0.0;
        }
        let s = 1.0 - self.flight_exponent;
        if s.abs() < 1e-12 {
            return (hi / length).ln() / (hi / lo).ln();
        }
        (length.powf(s) - hi.powf(s)) / (lo.powf(s) - hi.powf(s))
    }

    /// Inverse-CDF draw of a flight length.
    pub fn sample_flight_length<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let u: f64 = rng.random();
        let (lo, hi) = (self.min_flight_m, self.max_flight_m);
        let s = 1.0 - self.flight_exponent;
        let l = if s.abs() < 1e-12 {
            lo * (hi / lo).powf(u)
        } else {
            let (a, b) = (lo.powf(s), hi.powf(s));
            (a + u * (b - a)).powf(1.0 / s)
        };
        l.clamp(lo, hi)
    }

    /// Flight length and heading.
    pub fn sample_flight<R: Rng + ?Sized>(&self, rng: &mut R) -> (f64, f64) {
        let length = self.sample_flight_length(rng);
        let direction = rng.random::<f64>() * TAU;
        (length, direction)
    }

    fn speed_at(&self, indoor: bool) -> f64 {
        if indoor {
            self.indoor_speed_mps
        } else {
            self.outdoor_speed_mps
        }
    }
}

/// Folds `p` back into `area` by mirroring at the edges.
pub fn reflect_into(p: Point, area: &Rect) -> Point {
    fn fold(v: f64, lo: f64, hi: f64) -> f64 {
        let w = hi - lo;
        if w <= 0.0 {
            return lo;
        }
        let t = (v - lo).rem_euclid(2.0 * w);
        lo + if t > w { 2.0 * w - t } else { t }
    }
    Point::new(
        fold(p.x, area.min.x, area.max.x),
        fold(p.y, area.min.y, area.max.y),
    )
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Phase {
    Paused { remaining: u32 },
    Flying { target: Point },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobilityState {
    pub position: Point,
    pub phase: Phase,
    /// Walking speed at the current position.
    pub current_speed: f64,
}

impl MobilityState {
    pub fn new(position: Point, phase: Phase, geometry: &Geometry, params: &MobilityParams) -> Self {
        let indoor = geometry.indoor_area().contains(position);
        MobilityState {
            position,
            phase,
            current_speed: params.speed_at(indoor),
        }
    }

    /// Uniform position in the movement area, paused with a uniform residual.
    pub fn initial<R: Rng + ?Sized>(geometry: &Geometry, params: &MobilityParams, rng: &mut R) -> Self {
        let area = geometry.movement_area();
        let position = Point::new(
            rng.random_range(area.min.x..=area.max.x),
            rng.random_range(area.min.y..=area.max.y),
        );
        let remaining = if params.pause_s == 0 {
            0
        } else {
            rng.random_range(1..=params.pause_s)
        };
        Self::new(position, Phase::Paused { remaining }, geometry, params)
    }

    /// Advances one second and returns the distance walked.
    pub fn step<R: Rng + ?Sized>(&mut self, geometry: &Geometry, params: &MobilityParams, rng: &mut R) -> f64 {
        let moved = match self.phase {
            Phase::Paused { remaining } => {
                let remaining = remaining.saturating_sub(1);
                self.phase = if remaining == 0 {
                    let (length, heading) = params.sample_flight(rng);
                    let raw = Point::new(
                        self.position.x + length * heading.cos(),
                        self.position.y + length * heading.sin(),
                    );
                    Phase::Flying {
                        target: reflect_into(raw, &geometry.movement_area()),
                    }
                } else {
                    Phase::Paused { remaining }
                };
                0.0
            }
            Phase::Flying { target } => {
                let dist = self.position.distance(&target);
                if dist <= self.current_speed {
                    self.position = target;
                    self.phase = Phase::Paused {
                        remaining: params.pause_s,
                    };
                    dist
                } else {
                    let f = self.current_speed / dist;
                    self.position = Point::new(
                        self.position.x + (target.x - self.position.x) * f,
                        self.position.y + (target.y - self.position.y) * f,
                    );
                    self.current_speed
                }
            }
        };
        self.current_speed = params.speed_at(geometry.indoor_area().contains(self.position));
        moved
    }

    pub fn is_paused(&self) -> bool {
        matches!(self.phase, Phase::Paused { .. })
    }
}
