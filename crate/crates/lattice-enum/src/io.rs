use std::io::Write;

use crate::ball::LatticePoint;

/// Writes `p_prime,p,q_prime,q,norm_sq,phi,psi,theta`, one row per point.
pub fn write_lattice_csv<W: Write>(out: W, points: &[LatticePoint]) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(["p_prime", "p", "q_prime", "q", "norm_sq", "phi", "psi", "theta"])?;
    for pt in points {
        let m = pt.matrix;
        w.write_record([
            m.a.to_string(),
            m.b.to_string(),
            m.c.to_string(),
            m.d.to_string(),
            pt.norm_sq.to_string(),
            format!("{:.17e}", pt.phi),
            format!("{:.17e}", pt.psi),
            format!("{:.17e}", pt.theta),
        ])?;
    }
    w.flush()?;
    Ok(())
}
