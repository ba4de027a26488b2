//! Base-station coordinates of the four builtin layouts.
//!
//! The world is centred on the origin. Outdoor sites sit outside the 300 m
//! movement square, indoor cells inside the 60 m indoor square. Each
//! operator's pair of cells faces each other across the centre.

use super::{BaseStationSpec, Point, Tier};

type Site = (u32, f64, f64);

const OUTDOOR_SYMMETRIC: [Site; 6] = [
    (1, 0.0, 200.0),
    (1, 0.0, -200.0),
    (2, -173.2, -100.0),
    (2, 173.2, 100.0),
    (3, 173.2, -100.0),
    (3, -173.2, 100.0),
];

const INDOOR_SYMMETRIC: [Site; 6] = [
    (1, 0.0, 20.0),
    (1, 0.0, -20.0),
    (2, -17.3, -10.0),
    (2, 17.3, 10.0),
    (3, 17.3, -10.0),
    (3, -17.3, 10.0),
];

/// Operator 1 close in on the north side, operator 2 to the east with one far
/// site, operator 3 far out to the south-west.
const OUTDOOR_ASYMMETRIC: [Site; 6] = [
    (1, -60.0, 190.0),
    (1, 120.0, 170.0),
    (2, 230.0, -40.0),
    (2, 330.0, 120.0),
    (3, -260.0, -200.0),
    (3, -420.0, 60.0),
];

/// Two shared sites, one cell per operator on each.
const OUTDOOR_COLOCATED: [Site; 6] = [
    (1, -200.0, 0.0),
    (2, -200.0, 0.0),
    (3, -200.0, 0.0),
    (1, 200.0, 0.0),
    (2, 200.0, 0.0),
    (3, 200.0, 0.0),
];

const INDOOR_ONLY_OPERATOR: u32 = 3;

fn build(sites: &[Site], tier: Tier) -> impl Iterator<Item = BaseStationSpec> + '_ {
    sites
        .iter()
        .map(move |&(op, x, y)| BaseStationSpec::with_tier_defaults(op, Point::new(x, y), tier))
}

pub(super) fn base_stations(id: u8) -> Option<Vec<BaseStationSpec>> {
    let outdoor: Vec<BaseStationSpec> = match id {
        1 | 4 => build(&OUTDOOR_SYMMETRIC, Tier::OutdoorMacro).collect(),
        2 => build(&OUTDOOR_ASYMMETRIC, Tier::OutdoorMacro).collect(),
        3 => build(&OUTDOOR_COLOCATED, Tier::OutdoorMacro).collect(),
        _ => return None,
    };
    let outdoor = outdoor
        .into_iter()
        .filter(|bs| id != 4 || bs.operator != INDOOR_ONLY_OPERATOR);
    Some(
        outdoor
            .chain(build(&INDOOR_SYMMETRIC, Tier::IndoorSmall))
            .collect(),
    )
}
