//! CSV output.
//!
//! One row per (sweep point, method, replicate, metric):
//!
//! ```text
//! experiment,method,N,K,M,seed,replicate,metric,value
//! fig-cap-vs-n-k2,optimize,16,2,,1,0,capacity_bits_per_s,9.8756553797754677e3
//! fig-cap-vs-n-k2,optimize,16,2,,1,all,mean_capacity_bits_per_s,9.5767116184435636e3
//! ```
//!
//! `N` is empty for experiments without channel draws and `M` for
//! experiments without a candidate grid. Reals carry 17 significant digits;
//! counts are integers. Sweep axes without a column of their own (`h0_db`,
//! `beta_min`, `kappa`) are appended to `experiment` as `/axis=value` when
//! they take more than one value. Only `elapsed_ns` and `mean_elapsed_ns`
//! rows vary between runs with the same config and seed.

use std::io::Write;

use crate::error::Result;
use crate::experiment::ResultRow;

pub const HEADER: [&str; 9] = [
    "experiment",
    "method",
    "N",
    "K",
    "M",
    "seed",
    "replicate",
    "metric",
    "value",
];

fn opt(x: Option<usize>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

pub fn write_csv<W: Write>(rows: &[ResultRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for r in rows {
        w.write_record([
            r.experiment.clone(),
            r.method.to_string(),
            opt(r.n),
            r.k.to_string(),
            opt(r.m),
            r.seed.to_string(),
            r.replicate.to_string(),
            r.metric.to_string(),
            r.value.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn to_csv_string(rows: &[ResultRow]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf)?;
    Ok(String::from_utf8(buf).expect("CSV output is UTF-8"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Method;
    use crate::experiment::{Metric, Replicate, Value};

    #[test]
    fn header_and_row_layout() {
        let row = ResultRow {
            experiment: "x/h0_db=-130".into(),
            method: Method::ImprovedCpp,
            n: Some(16),
            k: 2,
            m: None,
            seed: 7,
            replicate: Replicate::All,
            metric: Metric::MeanCapacityBitsPerS,
            value: Value::Real(0.5),
        };
        let text = to_csv_string(&[row]).unwrap();
        assert_eq!(
            text,
            "experiment,method,N,K,M,seed,replicate,metric,value\n\
             x/h0_db=-130,improved_cpp,16,2,,7,all,mean_capacity_bits_per_s,5.0000000000000000e-1\n"
        );
    }
}
