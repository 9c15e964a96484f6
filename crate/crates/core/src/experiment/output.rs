use std::io::{Read, Write};

use super::rate::RateStudy;
use super::sweep::SweepResult;
use super::table::ErrorTable;
use crate::error::{Error, Result};
use crate::illposed::Amplification;
use crate::solver::{BoundaryPair, TimeField};
use crate::spectral::{TimeGrid, TimeSignal};

/// `x,omega_max,alpha,mean_error,std_error,n_reps,seed`, one row per cell.
pub fn write_table_csv<W: Write>(out: W, table: &ErrorTable) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "x",
        "omega_max",
        "alpha",
        "mean_error",
        "std_error",
        "n_reps",
        "seed",
    ])?;
    for (r, &x) in table.x.iter().enumerate() {
        for (c, &om) in table.omega_max.iter().enumerate() {
            let cell = table.cell(r, c);
            w.write_record([
                x.to_string(),
                om.to_string(),
                table.alpha.to_string(),
                cell.mean.to_string(),
                cell.std.to_string(),
                cell.n_valid.to_string(),
                table.seed.to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// `amplitude,score,mean_delta`, one row per swept amplitude.
pub fn write_sweep_csv<W: Write>(out: W, sweep: &SweepResult) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["amplitude", "score", "mean_delta"])?;
    for e in &sweep.entries {
        w.write_record([
            e.amplitude.to_string(),
            e.score.to_string(),
            e.table.mean_delta.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// `x,fitted_slope,expected_slope,residual`.
pub fn write_rate_csv<W: Write>(out: W, study: &RateStudy) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["x", "fitted_slope", "expected_slope", "residual"])?;
    for f in &study.fits {
        w.write_record([
            f.x.to_string(),
            f.fit.slope.to_string(),
            f.expected.to_string(),
            f.fit.residual.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// `n,data_norm,sup_solution_norm,ratio,saturated`.
pub fn write_amplification_csv<W: Write>(out: W, rows: &[Amplification]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "data_norm", "sup_solution_norm", "ratio", "saturated"])?;
    for a in rows {
        w.write_record([
            a.n.to_string(),
            a.data_norm.to_string(),
            a.sup_solution_norm.to_string(),
            a.ratio.to_string(),
            a.saturated.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// `x,t,u` over the whole grid.
pub fn write_solution_csv<W: Write>(out: W, field: &TimeField) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["x", "t", "u"])?;
    let space = field.space();
    let time = field.time();
    for j in 0..space.n_points() {
        let x = space.point(j).to_string();
        for (t, u) in time.points().zip(field.row(j)) {
            w.write_record([x.as_str(), &t.to_string(), &u.to_string()])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Reads boundary data from CSV with header `t,g,h`. The times must start at
/// 0, be uniformly spaced and number a power of two; the grid period is one
/// step past the last time.
pub fn read_boundary_csv<R: Read>(input: R) -> Result<BoundaryPair> {
    let mut r = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(input);
    let header: Vec<String> = r.headers()?.iter().map(str::to_owned).collect();
    if header != ["t", "g", "h"] {
        return Err(Error::Config(format!(
            "expected header t,g,h, got {}",
            header.join(",")
        )));
    }
    let (mut t, mut g, mut h) = (Vec::new(), Vec::new(), Vec::new());
    for (line, rec) in r.records().enumerate() {
        let rec = rec?;
        let field = |i: usize| -> Result<f64> {
            rec[i].parse::<f64>().map_err(|e| {
                Error::Config(format!("row {}: cannot parse {:?}: {e}", line + 2, &rec[i]))
            })
        };
        t.push(field(0)?);
        g.push(field(1)?);
        h.push(field(2)?);
    }
    let n = t.len();
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::Config(format!(
            "need a power of two >= 2 samples, got {n}"
        )));
    }
    let dt = t[1] - t[0];
    if t[0] != 0.0 || !(dt > 0.0) {
        return Err(Error::Config("times must start at 0 and increase".into()));
    }
    if let Some(l) = (0..n).find(|&l| (t[l] - l as f64 * dt).abs() > 1e-9 * dt.max(t[l].abs())) {
        return Err(Error::Config(format!(
            "times are not uniform at row {}",
            l + 2
        )));
    }
    let grid = TimeGrid::new(n, n as f64 * dt)?;
    BoundaryPair::new(
        TimeSignal::from_real(grid, &g)?,
        TimeSignal::from_real(grid, &h)?,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_csv_round_trip() {
        let text = "t,g,h\n0,1,2\n0.5,3,4\n1.0,5,6\n1.5,7,8\n";
        let pair = read_boundary_csv(text.as_bytes()).unwrap();
        assert_eq!(pair.grid().n_samples(), 4);
        assert!((pair.grid().t_max() - 2.0).abs() < 1e-15);
        assert_eq!(pair.g().real_parts(), vec![1.0, 3.0, 5.0, 7.0]);
        assert_eq!(pair.h().real_parts(), vec![2.0, 4.0, 6.0, 8.0]);
    }

    #[test]
    fn boundary_csv_rejects_bad_files() {
        for text in [
            "t,g\n0,1\n1,2\n",
            "t,g,h\n0,1,2\n1,2,3\n2,3,4\n",
            "t,g,h\n0,1,2\n1,2,3\n2,3,4\n4,5,6\n",
            "t,g,h\n0,1,x\n1,2,3\n",
        ] {
            assert!(
                matches!(read_boundary_csv(text.as_bytes()), Err(Error::Config(_))),
                "{text}"
            );
        }
    }
}
