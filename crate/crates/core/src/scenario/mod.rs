//! Scenario definition: world geometry, operators, base stations, the user
//! population and run parameters.
//!
//! Scenario documents are TOML. A document only needs to name what differs
//! from a builtin layout: `scenario = 1` alone yields the full baseline, and
//! any other key overrides the corresponding default. Tables merge key by
//! key; arrays (and `population.type_fractions`) replace the default
//! wholesale.

mod layouts;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::behavior::BehaviorParams;
use crate::mobility::MobilityParams;
use crate::radio::RadioParams;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn distance(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Axis-aligned rectangle, boundary inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub min: Point,
    pub max: Point,
}

impl Rect {
    pub fn centered_square(side: f64) -> Self {
        let h = side / 2.0;
        Rect {
            min: Point::new(-h, -h),
            max: Point::new(h, h),
        }
    }

    pub fn contains(&self, p: Point) -> bool {
        p.x >= self.min.x && p.x <= self.max.x && p.y >= self.min.y && p.y <= self.max.y
    }

    pub fn contains_rect(&self, other: &Rect) -> bool {
        self.contains(other.min) && self.contains(other.max)
    }

    pub fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> f64 {
        self.max.y - self.min.y
    }

    pub fn center(&self) -> Point {
        Point::new(
            (self.min.x + self.max.x) / 2.0,
            (self.min.y + self.max.y) / 2.0,
        )
    }
}

/// Three concentric squares centred on the origin: the world holding every
/// base station, the area users move in, and the building inside it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Geometry {
    pub world_side_m: f64,
    pub movement_side_m: f64,
    pub indoor_side_m: f64,
}

impl Default for Geometry {
    fn default() -> Self {
        // 2.56 km², 0.09 km², 3600 m²
        Geometry {
            world_side_m: 1600.0,
            movement_side_m: 300.0,
            indoor_side_m: 60.0,
        }
    }
}

impl Geometry {
    pub fn world(&self) -> Rect {
        Rect::centered_square(self.world_side_m)
    }

    pub fn movement_area(&self) -> Rect {
        Rect::centered_square(self.movement_side_m)
    }

    pub fn indoor_area(&self) -> Rect {
        Rect::centered_square(self.indoor_side_m)
    }

    /// Whether `position` is inside the building. Boundary points are indoor.
    pub fn is_indoor(&self, position: Point) -> Result<bool> {
        if !self.world().contains(position) {
            return Err(Error::OutsideWorld {
                x: position.x,
                y: position.y,
            });
        }
        Ok(self.indoor_area().contains(position))
    }

    fn validate(&self) -> Result<()> {
        for (field, side) in [
            ("geometry.world_side_m", self.world_side_m),
            ("geometry.movement_side_m", self.movement_side_m),
            ("geometry.indoor_side_m", self.indoor_side_m),
        ] {
            if !(side.is_finite() && side > 0.0) {
                return Err(Error::invalid(field, "side length must be positive"));
            }
        }
        if !self.world().contains_rect(&self.movement_area()) {
            return Err(Error::invalid(
                "geometry.movement_side_m",
                "movement area must lie inside the world",
            ));
        }
        if !self.movement_area().contains_rect(&self.indoor_area()) {
            return Err(Error::invalid(
                "geometry.indoor_side_m",
                "indoor area must lie inside the movement area",
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Tier {
    #[serde(rename = "outdoor-macro")]
    OutdoorMacro,
    #[serde(rename = "indoor-small")]
    IndoorSmall,
}

impl Tier {
    pub fn is_indoor(self) -> bool {
        self == Tier::IndoorSmall
    }

    pub fn label(self) -> &'static str {
        match self {
            Tier::OutdoorMacro => "outdoor-macro",
            Tier::IndoorSmall => "indoor-small",
        }
    }

    fn default_tx_power_dbm(self) -> f64 {
        match self {
            Tier::OutdoorMacro => 37.0,
            Tier::IndoorSmall => 21.0,
        }
    }

    fn default_carrier_ghz(self) -> f64 {
        match self {
            Tier::OutdoorMacro => 2.1,
            Tier::IndoorSmall => 3.5,
        }
    }

    fn default_height_m(self) -> f64 {
        match self {
            Tier::OutdoorMacro => 30.0,
            Tier::IndoorSmall => 3.0,
        }
    }
}

const DEFAULT_CARRIER_BANDWIDTH_HZ: f64 = 10e6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseStationSpec {
    pub operator: u32,
    pub position: Point,
    pub tier: Tier,
    pub tx_power_dbm: f64,
    pub carrier_ghz: f64,
    pub bandwidth_hz: f64,
    pub height_m: f64,
}

impl BaseStationSpec {
    pub fn with_tier_defaults(operator: u32, position: Point, tier: Tier) -> Self {
        BaseStationSpec {
            operator,
            position,
            tier,
            tx_power_dbm: tier.default_tx_power_dbm(),
            carrier_ghz: tier.default_carrier_ghz(),
            bandwidth_hz: DEFAULT_CARRIER_BANDWIDTH_HZ,
            height_m: tier.default_height_m(),
        }
    }

    pub fn carrier_mhz(&self) -> f64 {
        self.carrier_ghz * 1e3
    }

    fn validate(&self, index: usize, geometry: &Geometry, operators: u32) -> Result<()> {
        let field = |name: &str| format!("base_stations[{index}].{name}");
        if self.operator == 0 || self.operator > operators {
            return Err(Error::invalid(
                field("operator"),
                format!("must be in 1..={operators}"),
            ));
        }
        let area = match self.tier {
            Tier::OutdoorMacro => geometry.world(),
            Tier::IndoorSmall => geometry.indoor_area(),
        };
        if !area.contains(self.position) {
            return Err(Error::invalid(
                field("position"),
                format!("{} base station outside its area", self.tier.label()),
            ));
        }
        if self.tx_power_dbm != self.tier.default_tx_power_dbm() {
            return Err(Error::invalid(
                field("tx_power_dbm"),
                format!(
                    "{} cells transmit at {} dBm",
                    self.tier.label(),
                    self.tier.default_tx_power_dbm()
                ),
            ));
        }
        if self.carrier_ghz != self.tier.default_carrier_ghz() {
            return Err(Error::invalid(
                field("carrier_ghz"),
                format!(
                    "{} cells use the {} GHz carrier",
                    self.tier.label(),
                    self.tier.default_carrier_ghz()
                ),
            ));
        }
        if !(self.bandwidth_hz.is_finite() && self.bandwidth_hz > 0.0) {
            return Err(Error::invalid(field("bandwidth_hz"), "must be positive"));
        }
        if !(self.height_m.is_finite() && self.height_m > 0.0) {
            return Err(Error::invalid(field("height_m"), "must be positive"));
        }
        Ok(())
    }
}

/// Contract count and multihoming capability of a user.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum UserType {
    #[serde(rename = "1C")]
    OneContract,
    #[serde(rename = "2C-NMH")]
    TwoContracts,
    #[serde(rename = "2C-MH")]
    TwoContractsMultihoming,
    #[serde(rename = "3C-NMH")]
    ThreeContracts,
    #[serde(rename = "3C-MH")]
    ThreeContractsMultihoming,
}

impl UserType {
    pub const ALL: [UserType; 5] = [
        UserType::OneContract,
        UserType::TwoContracts,
        UserType::TwoContractsMultihoming,
        UserType::ThreeContracts,
        UserType::ThreeContractsMultihoming,
    ];

    pub fn contracts(self) -> u32 {
        match self {
            UserType::OneContract => 1,
            UserType::TwoContracts | UserType::TwoContractsMultihoming => 2,
            UserType::ThreeContracts | UserType::ThreeContractsMultihoming => 3,
        }
    }

    pub fn is_multihoming(self) -> bool {
        matches!(
            self,
            UserType::TwoContractsMultihoming | UserType::ThreeContractsMultihoming
        )
    }

    pub fn label(self) -> &'static str {
        match self {
            UserType::OneContract => "1C",
            UserType::TwoContracts => "2C-NMH",
            UserType::TwoContractsMultihoming => "2C-MH",
            UserType::ThreeContracts => "3C-NMH",
            UserType::ThreeContractsMultihoming => "3C-MH",
        }
    }
}

impl fmt::Display for UserType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for UserType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        UserType::ALL
            .into_iter()
            .find(|t| t.label().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::invalid("user_type", format!("unknown user type `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Population {
    pub total_users: usize,
    pub operators: u32,
    pub type_fractions: BTreeMap<UserType, f64>,
}

impl Default for Population {
    fn default() -> Self {
        Population {
            total_users: 300,
            operators: 3,
            type_fractions: BTreeMap::from([(UserType::OneContract, 1.0)]),
        }
    }
}

/// One user of the population with its contract set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UserSpec {
    pub index: usize,
    pub user_type: UserType,
    /// 1-based operator the user is assigned to. The user's contracts are the
    /// home operator and the next `contracts - 1` operators cyclically.
    pub home_operator: u32,
    pub contracts: Vec<u32>,
}

impl UserSpec {
    pub fn has_contract(&self, operator: u32) -> bool {
        self.contracts.contains(&operator)
    }
}

impl Population {
    /// Head counts per type using largest-remainder rounding, in
    /// [`UserType::ALL`] order, omitting absent types.
    pub fn type_counts(&self) -> Vec<(UserType, usize)> {
        let n = self.total_users as f64;
        let mut rows: Vec<(UserType, usize, f64)> = UserType::ALL
            .into_iter()
            .filter_map(|t| self.type_fractions.get(&t).map(|&f| (t, f)))
            .filter(|&(_, f)| f > 0.0)
            .map(|(t, f)| {
                let exact = f * n;
                (t, exact.floor() as usize, exact - exact.floor())
            })
            .collect();
        let assigned: usize = rows.iter().map(|r| r.1).sum();
        let mut order: Vec<usize> = (0..rows.len()).collect();
        order.sort_by(|&a, &b| rows[b].2.total_cmp(&rows[a].2).then(a.cmp(&b)));
        for &i in order
            .iter()
            .cycle()
            .take(self.total_users.saturating_sub(assigned))
        {
            rows[i].1 += 1;
        }
        rows.into_iter().map(|(t, c, _)| (t, c)).collect()
    }

    /// Expands the population into individual users. Users of each type are
    /// spread round-robin over the operators.
    pub fn users(&self) -> Vec<UserSpec> {
        let mut users = Vec::with_capacity(self.total_users);
        for (user_type, count) in self.type_counts() {
            for i in 0..count {
                let home = (i as u32 % self.operators) + 1;
                let contracts = (0..user_type.contracts())
                    .map(|k| (home - 1 + k) % self.operators + 1)
                    .collect();
                users.push(UserSpec {
                    index: users.len(),
                    user_type,
                    home_operator: home,
                    contracts,
                });
            }
        }
        users
    }

    fn validate(&self) -> Result<()> {
        if self.operators == 0 {
            return Err(Error::invalid("population.operators", "must be at least 1"));
        }
        let mut sum = 0.0;
        for (t, &f) in &self.type_fractions {
            if !(f.is_finite() && f >= 0.0) {
                return Err(Error::invalid(
                    "population.type_fractions",
                    format!("fraction for {t} must be nonnegative"),
                ));
            }
            if f > 0.0 && t.contracts() > self.operators {
                return Err(Error::invalid(
                    "population.type_fractions",
                    format!("{t} needs {} operators", t.contracts()),
                ));
            }
            sum += f;
        }
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::invalid(
                "population.type_fractions",
                format!("fractions sum to {sum}, expected 1"),
            ));
        }
        Ok(())
    }
}

/// Per-cell bandwidth allocation scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    /// Equal resource: every user of a cell gets the same bandwidth.
    #[serde(alias = "ER")]
    Er,
    /// Throughput equalization: bandwidth inversely proportional to each
    /// user's spectral efficiency.
    #[serde(alias = "TE")]
    Te,
}

impl Scheme {
    pub fn label(self) -> &'static str {
        match self {
            Scheme::Er => "er",
            Scheme::Te => "te",
        }
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "er" => Ok(Scheme::Er),
            "te" => Ok(Scheme::Te),
            other => Err(Error::invalid("scheme", format!("unknown scheme `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    /// Builtin layout the document started from (1-4).
    pub scenario: u8,
    pub scheme: Scheme,
    /// Simulated seconds.
    pub duration: u64,
    /// Tick length in seconds. Always 1.
    pub tick: u64,
    /// Initial seconds excluded from the metrics.
    pub warmup: u64,
    pub seeds: Vec<u64>,
    /// Restrict multihoming pairs to cells of two different operators.
    pub distinct_operator_pairs: bool,
    pub geometry: Geometry,
    pub population: Population,
    pub base_stations: Vec<BaseStationSpec>,
    pub radio: RadioParams,
    pub mobility: MobilityParams,
    pub behavior: BehaviorParams,
}

pub const DEFAULT_DURATION_S: u64 = 50_000;
pub const DEFAULT_SEED_COUNT: u64 = 10;

/// Canonical layout `id`: (1) symmetric baseline, (2) asymmetric, (3)
/// co-located outdoor sites, (4) operator 3 indoor-only.
pub fn builtin_scenario(id: u8) -> Result<ScenarioConfig> {
    let base_stations = layouts::base_stations(id).ok_or(Error::UnknownScenario(id))?;
    Ok(ScenarioConfig {
        scenario: id,
        scheme: Scheme::Er,
        duration: DEFAULT_DURATION_S,
        tick: 1,
        warmup: 0,
        seeds: (1..=DEFAULT_SEED_COUNT).collect(),
        distinct_operator_pairs: false,
        geometry: Geometry::default(),
        population: Population::default(),
        base_stations,
        radio: RadioParams::default(),
        mobility: MobilityParams::default(),
        behavior: BehaviorParams::default(),
    })
}

/// Keys whose document value replaces the default instead of merging into it.
const REPLACE_PATHS: &[&str] = &["population.type_fractions"];

/// Parses a scenario document, fills defaults from its builtin layout and
/// validates the result.
pub fn load_scenario(text: &str) -> Result<ScenarioConfig> {
    let doc: toml::Table = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let id = match doc.get("scenario") {
        None => 1,
        Some(toml::Value::Integer(i)) => {
            u8::try_from(*i).map_err(|_| Error::UnknownScenario(u8::MAX))?
        }
        Some(_) => return Err(Error::invalid("scenario", "must be an integer")),
    };
    let base = builtin_scenario(id)?;
    let mut merged = toml::Table::try_from(&base).map_err(|e| Error::Parse(e.to_string()))?;
    merge_table(&mut merged, doc, "");
    if let Some(toml::Value::Array(stations)) = merged.get_mut("base_stations") {
        for station in stations.iter_mut() {
            fill_station_defaults(station);
        }
    }
    let config: ScenarioConfig = toml::Value::Table(merged)
        .try_into()
        .map_err(|e: toml::de::Error| Error::Parse(e.to_string()))?;
    config.validate()?;
    Ok(config)
}

fn merge_table(base: &mut toml::Table, overlay: toml::Table, prefix: &str) {
    for (key, value) in overlay {
        let path = if prefix.is_empty() {
            key.clone()
        } else {
            format!("{prefix}.{key}")
        };
        match (base.get_mut(&key), value) {
            (Some(toml::Value::Table(b)), toml::Value::Table(o))
                if !REPLACE_PATHS.contains(&path.as_str()) =>
            {
                merge_table(b, o, &path)
            }
            (_, v) => {
                base.insert(key, v);
            }
        }
    }
}

fn fill_station_defaults(station: &mut toml::Value) {
    let Some(table) = station.as_table_mut() else {
        return;
    };
    let tier = match table.get("tier").and_then(|t| t.as_str()) {
        Some("indoor-small") => Tier::IndoorSmall,
        Some("outdoor-macro") => Tier::OutdoorMacro,
        _ => return,
    };
    let defaults = [
        ("tx_power_dbm", tier.default_tx_power_dbm()),
        ("carrier_ghz", tier.default_carrier_ghz()),
        ("bandwidth_hz", DEFAULT_CARRIER_BANDWIDTH_HZ),
        ("height_m", tier.default_height_m()),
    ];
    for (key, value) in defaults {
        table
            .entry(key.to_string())
            .or_insert(toml::Value::Float(value));
    }
}

impl ScenarioConfig {
    /// Full document form; [`load_scenario`] reparses it to an identical config.
    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn users(&self) -> Vec<UserSpec> {
        self.population.users()
    }

    pub fn validate(&self) -> Result<()> {
        if self.duration < 1 {
            return Err(Error::invalid("duration", "must be at least 1 s"));
        }
        self.validate_for_run()
    }

    /// Everything [`validate`](Self::validate) checks except the duration
    /// floor; a zero-length run is legal and yields an empty result.
    pub fn validate_for_run(&self) -> Result<()> {
        if self.tick != 1 {
            return Err(Error::invalid("tick", "the model advances in 1 s ticks"));
        }
        if self.seeds.is_empty() {
            return Err(Error::invalid("seeds", "at least one seed is required"));
        }
        self.geometry.validate()?;
        self.population.validate()?;
        for (i, bs) in self.base_stations.iter().enumerate() {
            bs.validate(i, &self.geometry, self.population.operators)?;
        }
        if let Some(op) =
            (1..=self.population.operators).find(|&op| !self.base_stations.iter().any(|bs| bs.operator == op))
        {
            return Err(Error::invalid(
                "base_stations",
                format!("operator {op} has no base station"),
            ));
        }
        self.radio.validate()?;
        self.mobility.validate()?;
        self.behavior.validate()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_document_gives_baseline() {
        let cfg = load_scenario("scenario = 1").unwrap();
        assert_eq!(cfg, builtin_scenario(1).unwrap());
        assert_eq!(cfg.population.operators, 3);
        assert_eq!(cfg.population.total_users, 300);
        assert_eq!(cfg.users().len(), 300);
        assert!(cfg
            .users()
            .iter()
            .all(|u| u.user_type == UserType::OneContract));
        assert_eq!(cfg.scheme, Scheme::Er);
        assert_eq!(cfg.duration, 50_000);
        assert_eq!(cfg.seeds.len(), 10);
    }

    #[test]
    fn fractions_not_summing_to_one_are_rejected() {
        let doc = r#"
            scenario = 1
            [population.type_fractions]
            "1C" = 0.5
            "3C-MH" = 0.4
        "#;
        match load_scenario(doc) {
            Err(Error::Invalid { field, .. }) => assert!(field.contains("type_fractions")),
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn overrides_keep_other_defaults() {
        let doc = "scenario = 1\nduration = 5000\nseeds = [1, 2, 3, 4, 5]\n";
        let cfg = load_scenario(doc).unwrap();
        let mut expected = builtin_scenario(1).unwrap();
        expected.duration = 5000;
        expected.seeds = vec![1, 2, 3, 4, 5];
        assert_eq!(cfg, expected);
    }

    #[test]
    fn type_fractions_replace_rather_than_merge() {
        let doc = "[population.type_fractions]\n\"3C-MH\" = 1.0\n";
        let cfg = load_scenario(doc).unwrap();
        assert_eq!(
            cfg.population.type_fractions,
            BTreeMap::from([(UserType::ThreeContractsMultihoming, 1.0)])
        );
    }

    #[test]
    fn malformed_document_is_a_parse_error() {
        assert!(matches!(load_scenario("scenario = "), Err(Error::Parse(_))));
        assert!(matches!(
            load_scenario("no_such_key = 3"),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn station_entries_take_tier_defaults() {
        let doc = r#"
            [[base_stations]]
            operator = 1
            tier = "outdoor-macro"
            position = { x = 0.0, y = 300.0 }
            [[base_stations]]
            operator = 2
            tier = "indoor-small"
            position = { x = 0.0, y = 0.0 }
            [[base_stations]]
            operator = 3
            tier = "indoor-small"
            position = { x = 5.0, y = 0.0 }
        "#;
        let cfg = load_scenario(doc).unwrap();
        assert_eq!(cfg.base_stations.len(), 3);
        assert_eq!(cfg.base_stations[0].tx_power_dbm, 37.0);
        assert_eq!(cfg.base_stations[1].carrier_ghz, 3.5);
        assert_eq!(cfg.base_stations[1].height_m, 3.0);
    }

    #[test]
    fn indoor_station_outside_building_is_rejected() {
        let doc = r#"
            [[base_stations]]
            operator = 1
            tier = "indoor-small"
            position = { x = 100.0, y = 0.0 }
        "#;
        match load_scenario(doc) {
            Err(Error::Invalid { field, .. }) => assert_eq!(field, "base_stations[0].position"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn builtin_layouts() {
        for id in 1..=4 {
            builtin_scenario(id).unwrap().validate().unwrap();
        }
        for id in 1..=3 {
            assert_eq!(builtin_scenario(id).unwrap().base_stations.len(), 12);
        }
        assert!(matches!(builtin_scenario(5), Err(Error::UnknownScenario(5))));

        let s1 = builtin_scenario(1).unwrap();
        for op in 1..=3 {
            for tier in [Tier::OutdoorMacro, Tier::IndoorSmall] {
                let n = s1
                    .base_stations
                    .iter()
                    .filter(|b| b.operator == op && b.tier == tier)
                    .count();
                assert_eq!(n, 2, "operator {op} {tier:?}");
            }
        }

        let s3 = builtin_scenario(3).unwrap();
        let mut sites: Vec<(Point, Vec<u32>)> = Vec::new();
        for bs in s3.base_stations.iter().filter(|b| b.tier == Tier::OutdoorMacro) {
            match sites.iter_mut().find(|(p, _)| *p == bs.position) {
                Some((_, ops)) => ops.push(bs.operator),
                None => sites.push((bs.position, vec![bs.operator])),
            }
        }
        assert_eq!(sites.len(), 2);
        for (_, mut ops) in sites {
            ops.sort();
            assert_eq!(ops, vec![1, 2, 3]);
        }

        let s4 = builtin_scenario(4).unwrap();
        let op3: Vec<_> = s4.base_stations.iter().filter(|b| b.operator == 3).collect();
        assert!(op3.iter().all(|b| b.tier == Tier::IndoorSmall));
        assert!(!op3.is_empty());
        let others = |c: &ScenarioConfig| -> Vec<BaseStationSpec> {
            c.base_stations
                .iter()
                .filter(|b| b.operator != 3)
                .cloned()
                .collect()
        };
        assert_eq!(others(&s4), others(&s1));
    }

    #[test]
    fn indoor_classification() {
        let g = Geometry::default();
        assert!(g.is_indoor(Point::new(0.0, 0.0)).unwrap());
        assert!(!g.is_indoor(Point::new(150.0, 150.0)).unwrap());
        assert!(g.is_indoor(Point::new(30.0, 12.0)).unwrap());
        assert!(g.is_indoor(Point::new(-30.0, -30.0)).unwrap());
        assert!(!g.is_indoor(Point::new(30.000001, 0.0)).unwrap());
        assert!(matches!(
            g.is_indoor(Point::new(900.0, 0.0)),
            Err(Error::OutsideWorld { .. })
        ));
    }

    #[test]
    fn geometry_areas() {
        let g = Geometry::default();
        assert!((g.world().width() * g.world().height() - 2.56e6).abs() < 1e-6);
        assert!((g.movement_area().width() * g.movement_area().height() - 0.09e6).abs() < 1e-6);
        assert!((g.indoor_area().width() * g.indoor_area().height() - 3600.0).abs() < 1e-9);
        assert_eq!(g.indoor_area().center(), g.movement_area().center());
    }

    #[test]
    fn round_robin_operator_split() {
        let pop = Population {
            total_users: 301,
            operators: 3,
            type_fractions: BTreeMap::from([
                (UserType::OneContract, 0.5),
                (UserType::ThreeContractsMultihoming, 0.5),
            ]),
        };
        let users = pop.users();
        assert_eq!(users.len(), 301);
        let u = users
            .iter()
            .find(|u| u.user_type == UserType::TwoContracts);
        assert!(u.is_none());
        let three_c = users
            .iter()
            .find(|u| u.user_type == UserType::ThreeContractsMultihoming)
            .unwrap();
        let mut contracts = three_c.contracts.clone();
        contracts.sort();
        assert_eq!(contracts, vec![1, 2, 3]);
    }

    #[test]
    fn two_contract_sets_are_cyclic() {
        let pop = Population {
            total_users: 3,
            operators: 3,
            type_fractions: BTreeMap::from([(UserType::TwoContracts, 1.0)]),
        };
        let sets: Vec<Vec<u32>> = pop.users().into_iter().map(|u| u.contracts).collect();
        assert_eq!(sets, vec![vec![1, 2], vec![2, 3], vec![3, 1]]);
    }
}
