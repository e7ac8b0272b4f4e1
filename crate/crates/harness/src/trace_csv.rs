//! Trace serialization.
//!
//! Header `t,setpoint_rpm,omega_rpm,current_a,u_v,u_eq_v,s,v_lyap,c_r_nm`,
//! one row per control instant, `\n` line endings, numbers with 9 significant
//! digits in `%.9g` style (fixed notation for decimal exponents in [-4, 8], scientific
//! otherwise as `1.5e-6`, trailing zeros dropped).

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use dcmotor_core::{rad_s_to_rpm, SimulationTraceF64};

use crate::error::HarnessError;

pub const HEADER: [&str; 9] = [
    "t",
    "setpoint_rpm",
    "omega_rpm",
    "current_a",
    "u_v",
    "u_eq_v",
    "s",
    "v_lyap",
    "c_r_nm",
];

const SIG_DIGITS: usize = 9;

/// Formats `x` with [`SIG_DIGITS`] significant digits, like C's `%.9g`.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent in {:e} output");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= SIG_DIGITS as i32 {
        format!("{}e{exp}", trim_zeros(mantissa))
    } else {
        let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// One CSV row in file units (RPM for speeds).
pub fn csv_values(trace: &SimulationTraceF64) -> Vec<[f64; 9]> {
    trace
        .rows()
        .iter()
        .map(|r| {
            [
                r.t,
                rad_s_to_rpm(r.setpoint),
                rad_s_to_rpm(r.omega),
                r.current,
                r.u,
                r.u_eq,
                r.s,
                r.v_lyap,
                r.c_r,
            ]
        })
        .collect()
}

pub fn write_csv<W: Write>(trace: &SimulationTraceF64, out: W) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(HEADER)?;
    for row in csv_values(trace) {
        w.write_record(row.iter().map(|&v| format_sig(v)))?;
    }
    w.flush()?;
    Ok(())
}

/// Writes the trace to `path`, creating parent directories.
pub fn emit_csv(trace: &SimulationTraceF64, path: &Path) -> Result<(), HarnessError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
    }
    let file = File::create(path).map_err(|e| HarnessError::io(path, e))?;
    let mut buf = BufWriter::new(file);
    write_csv(trace, &mut buf).map_err(|source| HarnessError::Csv {
        path: path.to_path_buf(),
        source,
    })?;
    buf.flush().map_err(|e| HarnessError::io(path, e))
}

/// Reads rows written by [`write_csv`]. The header must match exactly.
pub fn read_csv<R: Read>(input: R) -> csv::Result<Vec<[f64; 9]>> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers()?.clone();
    if header.iter().ne(HEADER.iter().copied()) {
        return Err(csv::Error::from(std::io::Error::new(
            std::io::ErrorKind::InvalidData,
            format!("unexpected header {header:?}"),
        )));
    }
    r.records()
        .map(|rec| {
            let rec = rec?;
            let mut row = [0.0; 9];
            for (slot, field) in row.iter_mut().zip(rec.iter()) {
                *slot = field.parse().map_err(|e| {
                    csv::Error::from(std::io::Error::new(
                        std::io::ErrorKind::InvalidData,
                        format!("{field}: {e}"),
                    ))
                })?;
            }
            Ok(row)
        })
        .collect()
}
