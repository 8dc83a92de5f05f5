use std::io::Write;

use crate::element::SemigroupElement;
use crate::volumes::b_m;

/// `word,T,Z,theta_M,B_M_xi`, one row per element.
pub fn write_terms_csv<W: Write>(out: W, elements: &[SemigroupElement], xi: f64) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(["word", "T", "Z", "theta_M", "B_M_xi"])?;
    for e in elements {
        let b = b_m(e, xi).unwrap_or(f64::NAN);
        w.write_record([
            e.word(),
            e.t.to_string(),
            e.z.to_string(),
            format!("{:.17e}", e.theta_m),
            format!("{b:.17e}"),
        ])?;
    }
    w.flush()?;
    Ok(())
}
