use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use super::run::SweepResult;
use crate::beamformers::{flops_max_sr_slnr, flops_mrt_nsp_pa};
use crate::error::{Error, Result};

pub const CSV_HEADER: [&str; 7] = ["axis", "axis_value", "method", "mean_sr", "std_sr", "mean_iters", "flops"];

/// Operation counts of both schemes over a list of IRS sizes, in the sweep
/// CSV layout with the secrecy-rate columns left empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlopsRow {
    pub ns: usize,
    pub method: &'static str,
    pub flops: u128,
}

pub fn flops_table(na: usize, ns_list: &[usize], d1: u64, d2: u64) -> Vec<FlopsRow> {
    ns_list
        .iter()
        .flat_map(|&ns| {
            [
                FlopsRow { ns, method: "max-sr-slnr", flops: flops_max_sr_slnr(na as u64, ns as u64, d1, d2).total() },
                FlopsRow { ns, method: "mrt-nsp-pa", flops: flops_mrt_nsp_pa(na as u64, ns as u64).total() },
            ]
        })
        .collect()
}

/// 17 significant digits: enough to round-trip any f64.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_records<I>(path: &Path, records: I) -> Result<()>
where
    I: IntoIterator<Item = [String; 7]>,
{
    let io = |source| Error::Io { path: path.into(), source };
    let file = File::create(path).map_err(io)?;
    let mut w = csv::Writer::from_writer(BufWriter::new(file));
    let csv_err = |e: csv::Error| match e.into_kind() {
        csv::ErrorKind::Io(source) => Error::Io { path: path.into(), source },
        other => Error::Config(format!("{}: csv error {other:?}", path.display())),
    };
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for r in records {
        w.write_record(&r).map_err(csv_err)?;
    }
    let mut inner = w.into_inner().map_err(|e| io(e.into_error()))?;
    inner.flush().map_err(io)
}

/// Writes `result` with header `axis,axis_value,method,mean_sr,std_sr,mean_iters,flops`.
pub fn emit_csv(result: &SweepResult, path: impl AsRef<Path>) -> Result<()> {
    let axis = result.axis.name();
    write_records(
        path.as_ref(),
        result.rows.iter().map(|r| {
            [
                axis.to_string(),
                r.axis_value.to_string(),
                r.method.clone(),
                num(r.mean_sr),
                num(r.std_sr),
                num(r.mean_iters),
                r.flops.to_string(),
            ]
        }),
    )
}

pub fn emit_flops_csv(rows: &[FlopsRow], path: impl AsRef<Path>) -> Result<()> {
    write_records(
        path.as_ref(),
        rows.iter().map(|r| {
            [
                "ns".to_string(),
                r.ns.to_string(),
                r.method.to_string(),
                String::new(),
                String::new(),
                String::new(),
                r.flops.to_string(),
            ]
        }),
    )
}
