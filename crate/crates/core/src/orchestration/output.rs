//! CSV and JSON-lines writers. Every float is written with 17 significant
//! digits so that files round-trip bit for bit.

use std::io::{self, BufRead, Write};

use crate::diagnostics::{MomentDiagnostics, NormTrace};
use crate::dynamics::State;

pub const TIMESERIES_HEADER: &str = "t,linf_u,min_u,mass_u,mass_v,mass_w,lsigma_u,profile_sup,dt";
pub const AUDIT_HEADER: &str = "t,s0,b,phi,dphi_dt,J1,J2,J3,J4,J5,J6,margin";
pub const REGIME_HEADER: &str = "axis1,axis2,predicted,observed,T_detect,agreement";

pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

fn join(values: &[f64]) -> String {
    values.iter().map(|&x| fmt17(x)).collect::<Vec<_>>().join(",")
}

pub fn write_norm_row(out: &mut impl Write, n: &NormTrace) -> io::Result<()> {
    let row = [n.t, n.linf_u, n.min_u, n.mass_u, n.mass_v, n.mass_w, n.lsigma_u, n.profile_sup, n.dt];
    writeln!(out, "{}", join(&row))
}

/// Writes audit rows; frames without a time derivative are skipped.
pub fn write_audit(out: &mut impl Write, rows: &[MomentDiagnostics]) -> io::Result<()> {
    writeln!(out, "{AUDIT_HEADER}")?;
    for d in rows {
        let (Some(dphi), Some(margin)) = (d.dphi_dt, d.margin()) else { continue };
        let mut row = vec![d.t, d.s0, d.b, d.phi, dphi];
        row.extend_from_slice(&d.j);
        row.push(margin);
        writeln!(out, "{}", join(&row))?;
    }
    Ok(())
}

pub fn write_snapshot(out: &mut impl Write, r: &[f64], state: &State) -> io::Result<()> {
    writeln!(
        out,
        "{{\"t\":{},\"r\":[{}],\"u\":[{}],\"v\":[{}],\"w\":[{}]}}",
        fmt17(state.t),
        join(r),
        join(&state.u),
        join(&state.v),
        join(&state.w)
    )
}

/// One snapshot line read back.
#[derive(Debug, Clone, PartialEq, serde::Deserialize)]
pub struct Snapshot {
    pub t: f64,
    pub r: Vec<f64>,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub w: Vec<f64>,
}

pub fn read_snapshots(input: impl BufRead) -> io::Result<Vec<Snapshot>> {
    let mut out = Vec::new();
    for (k, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let snap: Snapshot = serde_json::from_str(&line).map_err(|e| {
            io::Error::new(io::ErrorKind::InvalidData, format!("snapshot line {}: {e}", k + 1))
        })?;
        out.push(snap);
    }
    Ok(out)
}
