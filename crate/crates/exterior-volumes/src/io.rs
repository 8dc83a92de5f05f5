use std::io::Write;

/// One row of the volume table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolumeRow {
    pub k: i64,
    pub ell: usize,
    pub xi: f64,
    pub volume: f64,
    pub stderr: f64,
}

/// CSV with header `K,ell,xi,volume,stderr`.
pub fn write_volumes_csv<W: Write>(out: W, rows: &[VolumeRow]) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(["K", "ell", "xi", "volume", "stderr"])?;
    for r in rows {
        w.write_record(&[
            r.k.to_string(),
            r.ell.to_string(),
            r.xi.to_string(),
            r.volume.to_string(),
            r.stderr.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
