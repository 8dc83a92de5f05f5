use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use empirical_stats::io::{write_curve_csv, write_density_csv};
use empirical_stats::{density_histogram, pair_correlation_with, Convention, Normalization};
use exterior_volumes::{a_kl, a_kl_monte_carlo, vol_t_monte_carlo, vol_t_quadrature, VolumeEstimate};
use lattice_enum::enumerate_ball;
use lattice_enum::io::write_lattice_csv;
use reciprocal_geodesics::{g2_zero_arithmetic, geodesic_table, write_geodesics_csv};
use semigroup_series::g2_zero;

use crate::cache::{cached_samples, load_theory, store_theory, theory_path};
use crate::compare::compare;
use crate::config::{Command, RunConfig};
use crate::error::HarnessError;
use crate::theory::{TheoryModel, TheoryPoint};

/// Monte Carlo cross-checks beyond this many standard errors count as a tolerance failure.
const MC_SIGMAS: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    ToleranceFailure,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::ToleranceFailure => 1,
        }
    }
}

/// Runs one command. CSV goes to `--out` or `stdout`; the human-readable report goes to
/// `stdout` when the CSV has its own file and to `report` otherwise.
pub fn run(cfg: &RunConfig, stdout: &mut dyn Write, report: &mut dyn Write) -> Result<Status, HarnessError> {
    cfg.validate()?;
    let mut file;
    let (csv_out, rep): (&mut dyn Write, &mut dyn Write) = match &cfg.out {
        Some(p) => {
            file = create(p)?;
            (&mut file, stdout)
        }
        None => (stdout, report),
    };
    let status = match cfg.command {
        Command::Enumerate => enumerate(cfg, csv_out, rep)?,
        Command::Empirical => empirical(cfg, csv_out, rep)?,
        Command::Theoretical => theoretical(cfg, csv_out, rep)?,
        Command::Geodesics => geodesics(cfg, csv_out, rep)?,
        Command::Compare => run_compare(cfg, csv_out, rep)?,
    };
    csv_out.flush()?;
    Ok(status)
}

fn create(path: &Path) -> Result<BufWriter<File>, HarnessError> {
    Ok(BufWriter::new(File::create(path)?))
}

fn convention_name(c: Convention) -> &'static str {
    match c {
        Convention::Angle => "angle",
        Convention::Tan => "tan",
    }
}

fn model(cfg: &RunConfig) -> TheoryModel {
    TheoryModel {
        convention: cfg.convention(),
        normalization: cfg.normalization(),
        cutoff_norm_sq: cfg.cutoff_norm_sq as i128,
        allow_extrapolation: cfg.allow_extrapolation,
    }
}

fn enumerate(cfg: &RunConfig, out: &mut dyn Write, rep: &mut dyn Write) -> Result<Status, HarnessError> {
    let points = enumerate_ball(cfg.q);
    write_lattice_csv(&mut *out, &points)?;
    writeln!(rep, "Q = {}  B_Q = {}", cfg.q, points.len())?;
    Ok(Status::Ok)
}

fn empirical(cfg: &RunConfig, out: &mut dyn Write, rep: &mut dyn Write) -> Result<Status, HarnessError> {
    let conv = cfg.convention();
    let samples = cached_samples(cfg.cache_dir.as_deref(), cfg.q, conv)?;
    let curve = pair_correlation_with(&samples, &cfg.grid(), cfg.normalization())?;
    write_curve_csv(&mut *out, &curve)?;
    writeln!(rep, "Q = {}  B_Q = {}  convention {}  {}", cfg.q, samples.b(), convention_name(conv), curve.note)?;
    if let Some(p) = &cfg.density_out {
        let hist = density_histogram(&samples, cfg.bins, cfg.xi_max, cfg.normalization())?;
        write_density_csv(create(p)?, &hist)?;
        writeln!(rep, "density: {}", hist.note)?;
    }
    Ok(Status::Ok)
}

fn theory_curve(cfg: &RunConfig, m: &TheoryModel, grid: &[f64]) -> Result<Vec<TheoryPoint>, HarnessError> {
    let norm = match cfg.normalization() {
        Normalization::SampleCount => "bq",
        Normalization::OrderSquared(_) => "q2",
    };
    let key = format!(
        "{}-{norm}-x{}-step{}-max{}",
        convention_name(m.convention),
        cfg.cutoff_norm_sq,
        cfg.grid_step,
        cfg.xi_max
    );
    // the guard runs before the cache so a cached extrapolated curve is not served without the flag
    for &x in grid {
        m.check_range(x)?;
    }
    let path = cfg.cache_dir.as_deref().map(|d| theory_path(d, &key));
    if let Some(pts) = path.as_deref().and_then(|p| load_theory(p, grid)) {
        return Ok(pts);
    }
    let pts = m.curve(grid)?;
    if let Some(p) = &path {
        store_theory(p, &pts)?;
    }
    Ok(pts)
}

fn write_theory_csv(out: &mut dyn Write, pts: &[TheoryPoint], density: bool) -> Result<(), HarnessError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(if density { ["x", "g2", "tail_bound"] } else { ["xi", "R", "tail_bound"] })?;
    for p in pts {
        let (v, t) = if density { (p.density, p.density_tail) } else { (p.cumulative, p.cumulative_tail) };
        w.write_record([p.x.to_string(), format!("{v:.12e}"), format!("{t:.3e}")])?;
    }
    w.flush()?;
    Ok(())
}

fn theoretical(cfg: &RunConfig, out: &mut dyn Write, rep: &mut dyn Write) -> Result<Status, HarnessError> {
    let m = model(cfg);
    let grid = cfg.grid();
    let pts = theory_curve(cfg, &m, &grid)?;
    write_theory_csv(out, &pts, false)?;
    if let Some(p) = &cfg.density_out {
        write_theory_csv(&mut create(p)?, &pts, true)?;
    }
    let conv = convention_name(m.convention);
    writeln!(rep, "theory ({conv}), semigroup cutoff ||M||^2 <= {}", cfg.cutoff_norm_sq)?;
    if let Some(p0) = pts.first().filter(|p| p.x == 0.0) {
        writeln!(rep, "g2(0) = {:.7} +- {:.1e}", p0.density, p0.density_tail)?;
    }
    writeln!(rep, "cusp at x = {:.6}", m.spike_location())?;
    // dual-method check of the exterior bodies at the top of the grid
    let xi = m.xi_of(*grid.last().unwrap());
    let mut status = Status::Ok;
    for (k, ell) in crate::theory::exterior_range(m.convention, xi) {
        let (mc, q) = match m.convention {
            Convention::Angle => (a_kl_monte_carlo(k, ell, xi, cfg.mc_samples, cfg.seed), a_kl(k, ell, xi)?),
            Convention::Tan => (vol_t_monte_carlo(k, ell, xi, cfg.mc_samples, cfg.seed), vol_t_quadrature(k, ell, xi)?),
        };
        let sig = VolumeEstimate { monte_carlo: mc, quadrature: q }.discrepancy_sigmas();
        let flag = if sig <= MC_SIGMAS { "ok" } else { "MISMATCH" };
        writeln!(
            rep,
            "exterior K={k} l={ell} xi={xi:.4}: quadrature {q:.6e}  monte carlo {:.6e} +- {:.1e}  ({sig:.2} sigma) {flag}",
            mc.volume, mc.stderr
        )?;
        if sig > MC_SIGMAS {
            status = Status::ToleranceFailure;
        }
    }
    Ok(status)
}

fn geodesics(cfg: &RunConfig, out: &mut dyn Write, rep: &mut dyn Write) -> Result<Status, HarnessError> {
    let cutoff = cfg.cutoff_norm_sq as i128;
    let rows = geodesic_table(cutoff)?;
    write_geodesics_csv(&mut *out, &rows)?;
    let semi = g2_zero(cutoff)?;
    // α_d ≤ X visits every discriminant whose fundamental trace is at most X
    let arith = g2_zero_arithmetic(cfg.cutoff_norm_sq as f64)?;
    let diff = (semi.value - arith.value).abs();
    let bound = semi.tail_bound + arith.tail_bound;
    writeln!(rep, "{} reciprocal classes from the semigroup, ||M||^2 <= {cutoff}", rows.len())?;
    writeln!(rep, "g2(0) semigroup  = {:.9} +- {:.2e} ({} terms)", semi.value, semi.tail_bound, semi.terms_used)?;
    writeln!(
        rep,
        "g2(0) arithmetic = {:.9} +- {:.2e} ({} discriminants, alpha_d <= {cutoff})",
        arith.value, arith.tail_bound, arith.terms_used
    )?;
    let ok = diff <= bound;
    writeln!(rep, "difference {diff:.2e}, allowed {bound:.2e}: {}", if ok { "agree" } else { "DISAGREE" })?;
    Ok(if ok { Status::Ok } else { Status::ToleranceFailure })
}

fn run_compare(cfg: &RunConfig, out: &mut dyn Write, rep: &mut dyn Write) -> Result<Status, HarnessError> {
    let samples = cached_samples(cfg.cache_dir.as_deref(), cfg.q, cfg.convention())?;
    let c = compare(&samples, cfg.normalization(), &model(cfg), &cfg.compare_settings())?;
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(&mut *out);
    w.write_record(["x", "empirical", "theory", "diff", "theory_tail"])?;
    for b in &c.bins {
        w.write_record([
            format!("{:.6}", b.center),
            format!("{:.12e}", b.empirical),
            format!("{:.12e}", b.theory),
            format!("{:.6e}", b.diff()),
            format!("{:.3e}", b.theory_tail),
        ])?;
    }
    w.flush()?;
    drop(w);
    writeln!(rep, "Q = {}  B_Q = {}  {}", cfg.q, c.b_q, c.note)?;
    writeln!(
        rep,
        "sup |empirical - theory| over [{}, {}] = {:.5} at x = {:.3} (tolerance {})",
        cfg.compare_from, cfg.compare_to, c.sup_diff, c.sup_at, c.tolerance
    )?;
    match c.spike_bin {
        Some(k) => writeln!(
            rep,
            "cusp x = {:.6} in bin {k} (centre {:.3}): {}",
            c.spike,
            k as f64 * cfg.bins,
            if c.spike_is_local_max { "local maximum" } else { "not a local maximum" }
        )?,
        None => writeln!(rep, "cusp x = {:.6} outside the histogram", c.spike)?,
    }
    Ok(if c.passes() { Status::Ok } else { Status::ToleranceFailure })
}
