use std::io::Write;

use semigroup_series::{enumerate_semigroup, SemigroupElement};

use crate::error::GeodesicError;
use crate::reciprocal::{discriminant_of, symmetrize};

/// One symmetrized element of `𝔖`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicRow {
    pub word: String,
    pub trace: i128,
    pub length: f64,
    pub primitive: bool,
    pub d: i128,
    pub nu: u64,
    pub alpha_d: f64,
}

impl GeodesicRow {
    pub fn from_element(e: &SemigroupElement) -> Result<GeodesicRow, GeodesicError> {
        let class = symmetrize(e)?;
        let disc = discriminant_of(&class.a)?;
        Ok(GeodesicRow {
            word: e.word(),
            trace: class.trace,
            length: class.length,
            primitive: class.primitive,
            d: disc.d,
            nu: disc.nu,
            alpha_d: disc.alpha_d,
        })
    }
}

/// Rows for every `M ∈ 𝔖` with `‖M‖² ≤ cutoff`, in enumeration order.
pub fn geodesic_table(cutoff_norm_sq: i128) -> Result<Vec<GeodesicRow>, GeodesicError> {
    enumerate_semigroup(cutoff_norm_sq).iter().map(GeodesicRow::from_element).collect()
}

/// `word,trace,length,primitive,d,nu,alpha_d`.
pub fn write_geodesics_csv<W: Write>(out: W, rows: &[GeodesicRow]) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(["word", "trace", "length", "primitive", "d", "nu", "alpha_d"])?;
    for r in rows {
        w.write_record([
            r.word.clone(),
            r.trace.to_string(),
            format!("{:.17e}", r.length),
            r.primitive.to_string(),
            r.d.to_string(),
            r.nu.to_string(),
            format!("{:.17e}", r.alpha_d),
        ])?;
    }
    w.flush()?;
    Ok(())
}
