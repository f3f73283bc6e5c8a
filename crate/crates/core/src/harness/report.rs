//! CSV output, metadata sidecar and the plain-text run summary.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::harness::config::SweepConfig;
use crate::harness::sweep::{RowStatus, SweepRow, CSV_COLUMNS};
use crate::tomography::RNG_ALGORITHM;

/// `printf("%.12g")`, plus `inf`, `-inf` and `nan`.
pub fn format_g12(x: f64) -> String {
    const DIGITS: i32 = 12;
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..DIGITS).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", strip_zeros(mantissa), sign, exp.abs())
    } else {
        let decimals = (DIGITS - 1 - exp).max(0) as usize;
        strip_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn csv_string(rows: &[SweepRow]) -> String {
    let mut out = CSV_COLUMNS.join(",");
    out.push('\n');
    for row in rows {
        for v in row.values() {
            out.push_str(&format_g12(v));
            out.push(',');
        }
        let _ = writeln!(out, "{},{}", row.seed_used, row.status.as_str());
    }
    out
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes one header line and one line per row. Refuses to create a file for
/// an empty table.
pub fn emit_csv(rows: &[SweepRow], path: &Path) -> Result<()> {
    if rows.is_empty() {
        return Err(Error::EmptyRows);
    }
    write_file(path, &csv_string(rows))
}

/// `<out>.meta` next to the CSV.
pub fn metadata_path(csv: &Path) -> PathBuf {
    let mut name = csv.as_os_str().to_owned();
    name.push(".meta");
    PathBuf::from(name)
}

pub fn metadata_string(config: &SweepConfig) -> String {
    let list = |v: &[f64]| v.iter().map(|x| format_g12(*x)).collect::<Vec<_>>().join(", ");
    let units = match config.angle_units {
        crate::harness::config::AngleUnits::Degrees => "alpha_deg",
        crate::harness::config::AngleUnits::Coherence => "coherence",
    };
    format!(
        "scenario = {}\n\
         p_values = {}\n\
         {} = {}\n\
         r_grid = {}\n\
         shots_per_basis = {}\n\
         bootstrap = {}\n\
         seed = {}\n\
         rng = {}\n\
         seeding = row k uses derive_seed(seed, k); runs 0..4 of a row use derive_seed(row_seed, run)\n\
         bootstrap_procedure = each basis redrawn as Binomial(shots, observed frequency) on stream k + 1 of the run seed; replicate states physicality-projected; stderr is the sample std (n - 1) of the paired replicate productions\n\
         units = nats\n",
        config.scenario,
        list(&config.p_values),
        units,
        list(&config.angles),
        list(&config.r_grid),
        config.shots,
        config.n_bootstrap,
        config.seed,
        RNG_ALGORITHM,
    )
}

pub fn emit_metadata(config: &SweepConfig, csv: &Path) -> Result<()> {
    write_file(&metadata_path(csv), &metadata_string(config))
}

/// Aggregate diagnostics over a finished sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub rows: usize,
    pub infinite_rows: usize,
    pub indeterminate_rows: usize,
    /// `max |sigma_total - sigma_pop - sigma_coh_direct|` over finite rows.
    pub max_additivity_violation: f64,
    /// Most negative analytic production (0 when none is negative).
    pub max_negativity: f64,
    /// Largest `|tomography - analytic|` over all three quantities.
    pub max_tomo_deviation: f64,
    /// Largest `|tomography - analytic| / stderr`.
    pub max_tomo_sigmas: f64,
    /// Fraction of comparisons within three standard errors.
    pub fraction_within_3_sigma: f64,
    /// Largest spread of `sigma_coh` across `p` at fixed `(alpha, r)`.
    pub coherence_spread_across_p: f64,
    /// Largest spread of `sigma_pop` across `alpha` at fixed `(p, r)`.
    pub population_spread_across_alpha: f64,
}

fn spread_by<K: Ord>(rows: &[&SweepRow], key: impl Fn(&SweepRow) -> K, value: impl Fn(&SweepRow) -> f64) -> f64 {
    let mut groups: BTreeMap<K, (f64, f64)> = BTreeMap::new();
    for row in rows {
        let v = value(row);
        let e = groups.entry(key(row)).or_insert((v, v));
        e.0 = e.0.min(v);
        e.1 = e.1.max(v);
    }
    groups.values().map(|(lo, hi)| hi - lo).fold(0.0, f64::max)
}

impl Summary {
    pub fn from_rows(rows: &[SweepRow]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptyRows);
        }
        let finite: Vec<&SweepRow> = rows.iter().filter(|r| r.status == RowStatus::Ok).collect();

        let mut additivity: f64 = 0.0;
        let mut negativity: f64 = 0.0;
        let mut deviation: f64 = 0.0;
        let mut sigmas: f64 = 0.0;
        let (mut within, mut compared) = (0usize, 0usize);
        for row in &finite {
            additivity = additivity.max((row.sigma_total - row.sigma_pop - row.sigma_coh_direct).abs());
            for v in [row.sigma_total, row.sigma_pop, row.sigma_coh_direct] {
                if -v > negativity {
                    negativity = -v;
                }
            }
            for (tomo, se, exact) in [
                (row.sigma_total_tomo, row.sigma_total_tomo_stderr, row.sigma_total),
                (row.sigma_pop_tomo, row.sigma_pop_tomo_stderr, row.sigma_pop),
                (row.sigma_coh_tomo, row.sigma_coh_tomo_stderr, row.sigma_coh),
            ] {
                let d = (tomo - exact).abs();
                deviation = deviation.max(d);
                compared += 1;
                let z = if se > 0.0 { d / se } else if d == 0.0 { 0.0 } else { f64::INFINITY };
                sigmas = sigmas.max(z);
                if z <= 3.0 {
                    within += 1;
                }
            }
        }

        // Grid values come from the same config, so bitwise keys group them exactly.
        let coherence_spread = spread_by(&finite, |r| (r.alpha_deg.to_bits(), r.r.to_bits()), |r| r.sigma_coh);
        let population_spread = spread_by(&finite, |r| (r.p.to_bits(), r.r.to_bits()), |r| r.sigma_pop);

        Ok(Self {
            rows: rows.len(),
            infinite_rows: rows.iter().filter(|r| r.status == RowStatus::Infinite).count(),
            indeterminate_rows: rows.iter().filter(|r| r.status == RowStatus::Indeterminate).count(),
            max_additivity_violation: additivity,
            max_negativity: negativity,
            max_tomo_deviation: deviation,
            max_tomo_sigmas: sigmas,
            fraction_within_3_sigma: if compared == 0 { f64::NAN } else { within as f64 / compared as f64 },
            coherence_spread_across_p: coherence_spread,
            population_spread_across_alpha: population_spread,
        })
    }
}

pub fn emit_summary(rows: &[SweepRow]) -> Result<String> {
    let s = Summary::from_rows(rows)?;
    let mut out = String::new();
    let _ = writeln!(out, "rows: {} (infinite: {}, indeterminate: {})", s.rows, s.infinite_rows, s.indeterminate_rows);
    let _ = writeln!(out, "max additivity violation: {:.3e}", s.max_additivity_violation);
    let _ = writeln!(out, "max negativity: {:.3e}", s.max_negativity);
    let _ = writeln!(
        out,
        "tomography vs analytic: max |diff| {:.4e} nats, max {:.2} stderr, {:.1}% within 3 stderr",
        s.max_tomo_deviation,
        s.max_tomo_sigmas,
        100.0 * s.fraction_within_3_sigma
    );
    let _ = writeln!(out, "sigma_coh spread across p: {:.6e} nats", s.coherence_spread_across_p);
    let _ = writeln!(out, "sigma_pop spread across alpha: {:.6e} nats", s.population_spread_across_alpha);
    Ok(out)
}
