use std::io::Write;

use crate::correlation::{CorrelationCurve, DensityHistogram};

fn writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out)
}

/// `xi,R`.
pub fn write_curve_csv<W: Write>(out: W, curve: &CorrelationCurve) -> csv::Result<()> {
    let mut w = writer(out);
    w.write_record(["xi", "R"])?;
    for (x, r) in curve.grid.iter().zip(&curve.values) {
        w.write_record([x.to_string(), format!("{r:.12e}")])?;
    }
    w.flush()?;
    Ok(())
}

/// `x,g2` with `x` the bin centre.
pub fn write_density_csv<W: Write>(out: W, hist: &DensityHistogram) -> csv::Result<()> {
    let mut w = writer(out);
    w.write_record(["x", "g2"])?;
    for (x, g) in hist.centers.iter().zip(&hist.values) {
        w.write_record([format!("{x:.6}"), format!("{g:.12e}")])?;
    }
    w.flush()?;
    Ok(())
}

/// `x,g2` for a sampled curve (e.g. a theoretical density).
pub fn write_density_curve_csv<W: Write>(out: W, curve: &CorrelationCurve) -> csv::Result<()> {
    let mut w = writer(out);
    w.write_record(["x", "g2"])?;
    for (x, g) in curve.grid.iter().zip(&curve.values) {
        w.write_record([x.to_string(), format!("{g:.12e}")])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlation::CurveKind;

    #[test]
    fn headers_and_lf() {
        let c = CorrelationCurve {
            grid: vec![0.5, 1.0],
            values: vec![0.0, 0.25],
            kind: CurveKind::Empirical,
            note: String::new(),
        };
        let mut buf = Vec::new();
        write_curve_csv(&mut buf, &c).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert!(s.starts_with("xi,R\n0.5,0.000000000000e0\n"));
        assert!(!s.contains('\r'));
    }
}
