use super::{BooleanFunction, Codomain};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::io::{Read, Write};

#[derive(Serialize, Deserialize)]
struct JsonTable {
    n: u32,
    codomain: Codomain,
    values: Vec<f64>,
}

/// JSON form `{n, codomain, values: [...]}`.
pub fn to_json(f: &BooleanFunction) -> String {
    serde_json::to_string(&JsonTable {
        n: f.n(),
        codomain: f.codomain(),
        values: f.values().to_vec(),
    })
    .expect("table serializes")
}

pub fn from_json(s: &str) -> Result<BooleanFunction> {
    let t: JsonTable = serde_json::from_str(s)?;
    BooleanFunction::new(t.n, t.codomain, t.values)
}

const MAGIC: &[u8; 4] = b"BFN1";

/// Raw binary form: 8-byte header (magic `BFN1`, little-endian u32 arity)
/// followed by `2^n` little-endian f64 table entries.
pub fn write_bfn(f: &BooleanFunction, mut w: impl Write) -> Result<()> {
    w.write_all(MAGIC)?;
    w.write_all(&f.n().to_le_bytes())?;
    for v in f.values() {
        w.write_all(&v.to_le_bytes())?;
    }
    Ok(())
}

/// Reads the `BFN1` format. The codomain is inferred: exact ±1 tables load as
/// `PlusMinusOne`, exact {0,1} tables as `ZeroOne`, anything else as `Real`.
pub fn read_bfn(mut r: impl Read) -> Result<BooleanFunction> {
    let mut header = [0u8; 8];
    r.read_exact(&mut header)?;
    if &header[0..4] != MAGIC {
        return Err(Error::Malformed("bad magic, expected BFN1".into()));
    }
    let n = u32::from_le_bytes(header[4..8].try_into().expect("4 bytes"));
    if n == 0 || n > super::MAX_DENSE_ARITY {
        return Err(Error::ArityOverflow(n, super::MAX_DENSE_ARITY));
    }
    let mut values = vec![0.0f64; 1 << n];
    let mut buf = [0u8; 8];
    for v in &mut values {
        r.read_exact(&mut buf)?;
        *v = f64::from_le_bytes(buf);
    }
    let codomain = if values.iter().all(|&v| v == 1.0 || v == -1.0) {
        Codomain::PlusMinusOne
    } else if values.iter().all(|&v| v == 0.0 || v == 1.0) {
        Codomain::ZeroOne
    } else {
        Codomain::Real
    };
    BooleanFunction::new(n, codomain, values)
}
