//! Hourly time-series input and operational scenario sampling.
//!
//! Operational scenarios are built by drawing one contiguous slice of
//! hours from each season of the series and concatenating the slices.
//! Scenario weights are uniform, and every period carries the same
//! annual scaling factor so that the weighted hours of one scenario
//! represent a full year of operation.

use crate::error::StochError;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

pub const HOURS_PER_YEAR: f64 = 8760.0;

/// Columnar hourly data: one value per (region, series name, hour).
#[derive(Clone, Debug, Default)]
pub struct SeriesTable {
    hours: usize,
    columns: BTreeMap<(String, String), Vec<f64>>,
}

impl SeriesTable {
    /// Parse whitespace-separated `hour region series-name value` lines.
    /// `#` starts a comment; hours must form a dense 0-based range per
    /// series, and all series must cover the same range.
    pub fn parse(text: &str) -> Result<Self, StochError> {
        let mut raw: BTreeMap<(String, String), Vec<(usize, f64)>> = BTreeMap::new();
        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 4 {
                return Err(StochError::Parse {
                    line: lineno,
                    message: format!("expected `hour region name value`, found {} fields", fields.len()),
                });
            }
            let hour: usize = fields[0].parse().map_err(|_| StochError::Parse {
                line: lineno,
                message: format!("bad hour `{}`", fields[0]),
            })?;
            let value: f64 = fields[3].parse().map_err(|_| StochError::Parse {
                line: lineno,
                message: format!("bad value `{}`", fields[3]),
            })?;
            raw.entry((fields[1].to_string(), fields[2].to_string()))
                .or_default()
                .push((hour, value));
        }
        if raw.is_empty() {
            return Err(StochError::Data("series table is empty".into()));
        }

        let mut hours = None;
        let mut columns = BTreeMap::new();
        for ((region, name), mut entries) in raw {
            entries.sort_by_key(|&(h, _)| h);
            let n = entries.len();
            for (expect, &(h, _)) in entries.iter().enumerate() {
                if h != expect {
                    return Err(StochError::Data(format!(
                        "series {region}/{name}: hour {expect} missing or duplicated"
                    )));
                }
            }
            match hours {
                None => hours = Some(n),
                Some(m) if m != n => {
                    return Err(StochError::Data(format!(
                        "series {region}/{name} covers {n} hours, others cover {m}"
                    )));
                }
                _ => {}
            }
            columns.insert((region, name), entries.into_iter().map(|(_, v)| v).collect());
        }
        Ok(SeriesTable { hours: hours.unwrap(), columns })
    }

    pub fn hours(&self) -> usize {
        self.hours
    }

    pub fn column(&self, region: &str, name: &str) -> Option<&[f64]> {
        self.columns.get(&(region.to_string(), name.to_string())).map(Vec::as_slice)
    }

    pub fn keys(&self) -> impl Iterator<Item = (&str, &str)> {
        self.columns.keys().map(|(r, n)| (r.as_str(), n.as_str()))
    }

    /// Build a table directly from columns (testing and synthetic data).
    pub fn from_columns(
        columns: impl IntoIterator<Item = ((String, String), Vec<f64>)>,
    ) -> Result<Self, StochError> {
        let columns: BTreeMap<_, _> = columns.into_iter().collect();
        let mut hours = None;
        for ((region, name), col) in &columns {
            match hours {
                None => hours = Some(col.len()),
                Some(m) if m != col.len() => {
                    return Err(StochError::Data(format!(
                        "series {region}/{name} covers {} hours, others cover {m}",
                        col.len()
                    )));
                }
                _ => {}
            }
        }
        match hours {
            Some(h) if h > 0 => Ok(SeriesTable { hours: h, columns }),
            _ => Err(StochError::Data("series table is empty".into())),
        }
    }
}

/// A set of equally weighted operational scenarios over sampled hours.
#[derive(Clone, Debug)]
pub struct OperationalSample {
    /// Per scenario, the concatenated hour indices (seasons x slice length).
    pub hours: Vec<Vec<usize>>,
    /// Uniform scenario weight ω.
    pub weight: f64,
    /// Per-period scaling factor π: weighted hours represent a full year.
    pub period_scale: f64,
}

impl OperationalSample {
    pub fn scenario_count(&self) -> usize {
        self.hours.len()
    }

    pub fn periods_per_scenario(&self) -> usize {
        self.hours.first().map_or(0, Vec::len)
    }

    /// Values of one series along one scenario's sampled hours.
    pub fn extract(
        &self,
        table: &SeriesTable,
        region: &str,
        name: &str,
        scenario: usize,
    ) -> Result<Vec<f64>, StochError> {
        let col = table
            .column(region, name)
            .ok_or_else(|| StochError::Data(format!("series {region}/{name} not found")))?;
        Ok(self.hours[scenario].iter().map(|&h| col[h]).collect())
    }
}

/// Draw `scenario_count` scenarios, each one contiguous `hours_per_season`
/// slice from every season (equal contiguous blocks of the table).
pub fn sample_operational_scenarios(
    table: &SeriesTable,
    seasons: usize,
    hours_per_season: usize,
    scenario_count: usize,
    seed: u64,
) -> Result<OperationalSample, StochError> {
    if seasons == 0 || hours_per_season == 0 || scenario_count == 0 {
        return Err(StochError::Params("seasons, slice length, and count must be positive".into()));
    }
    let block = table.hours() / seasons;
    if block == 0 {
        return Err(StochError::Data(format!(
            "{} hours cannot be split into {seasons} seasons",
            table.hours()
        )));
    }
    if hours_per_season > block {
        return Err(StochError::Data(format!(
            "season block holds {block} hours, requested slices of {hours_per_season}"
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hours = Vec::with_capacity(scenario_count);
    for _ in 0..scenario_count {
        let mut sampled = Vec::with_capacity(seasons * hours_per_season);
        for season in 0..seasons {
            let start = season * block + rng.random_range(0..=block - hours_per_season);
            sampled.extend(start..start + hours_per_season);
        }
        hours.push(sampled);
    }
    let periods = (seasons * hours_per_season) as f64;
    Ok(OperationalSample {
        hours,
        weight: 1.0 / scenario_count as f64,
        period_scale: HOURS_PER_YEAR / periods,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn year_table() -> SeriesTable {
        let hours = 8760;
        let col: Vec<f64> = (0..hours).map(|h| (h % 24) as f64).collect();
        SeriesTable::from_columns([(("r".to_string(), "demand".to_string()), col)]).unwrap()
    }

    #[test]
    fn parser_reads_and_reports_errors_by_line() {
        let table = SeriesTable::parse(
            "# hour region name value\n0 uk demand 1.5\n1 uk demand 2.0\n0 no wind 0.3\n1 no wind 0.4\n",
        )
        .unwrap();
        assert_eq!(table.hours(), 2);
        assert_eq!(table.column("uk", "demand"), Some(&[1.5, 2.0][..]));
        assert_eq!(table.keys().count(), 2);

        let err = SeriesTable::parse("0 uk demand 1.5\n1 uk demand oops\n").unwrap_err();
        match err {
            StochError::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other}"),
        }
        assert!(SeriesTable::parse("0 uk demand 1\n2 uk demand 3\n").is_err());
    }

    #[test]
    fn daily_slices_give_96_periods() {
        let sample = sample_operational_scenarios(&year_table(), 4, 24, 3, 11).unwrap();
        assert_eq!(sample.scenario_count(), 3);
        assert_eq!(sample.periods_per_scenario(), 96);
        assert_relative_eq!(sample.weight, 1.0 / 3.0);
    }

    #[test]
    fn weekly_slices_give_672_periods() {
        let sample = sample_operational_scenarios(&year_table(), 4, 168, 1, 11).unwrap();
        assert_eq!(sample.periods_per_scenario(), 672);
    }

    #[test]
    fn weighted_hours_cover_a_year() {
        for hours in [24, 168] {
            let sample = sample_operational_scenarios(&year_table(), 4, hours, 1, 5).unwrap();
            let total: f64 = (0..sample.periods_per_scenario()).map(|_| sample.period_scale).sum();
            assert_relative_eq!(total, 8760.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn slices_are_contiguous_and_inside_their_season() {
        let table = year_table();
        let sample = sample_operational_scenarios(&table, 4, 24, 20, 17).unwrap();
        let block = table.hours() / 4;
        for hours in &sample.hours {
            for (season, slice) in hours.chunks(24).enumerate() {
                for pair in slice.windows(2) {
                    assert_eq!(pair[1], pair[0] + 1);
                }
                assert!(slice[0] >= season * block);
                assert!(slice[23] < (season + 1) * block);
            }
        }
    }

    #[test]
    fn oversized_slices_are_a_data_error() {
        let err = sample_operational_scenarios(&year_table(), 4, 3000, 1, 0).unwrap_err();
        assert!(matches!(err, StochError::Data(_)));
    }
}
