//! graph6 short form (n <= 62).
//!
//! Byte 0 is `n + 63`; the upper triangle is read column by column,
//! `(0,1), (0,2), (1,2), (0,3), ...`, six bits per byte, big-endian within
//! each byte, every payload byte offset by 63.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

pub fn encode(g: &Graph) -> String {
    let n = g.n();
    let nbits = n * n.saturating_sub(1) / 2;
    let mut payload = vec![0u8; nbits.div_ceil(6)];
    let mut idx = 0;
    for v in 1..n {
        for u in 0..v {
            if g.has_edge(u, v) {
                payload[idx / 6] |= 0x20 >> (idx % 6);
            }
            idx += 1;
        }
    }
    let mut out = String::with_capacity(1 + payload.len());
    out.push((n as u8 + 63) as char);
    out.extend(payload.into_iter().map(|b| (b + 63) as char));
    out
}

pub fn decode(line: &str) -> Result<Graph> {
    let bytes = line.trim_end_matches(['\n', '\r']).as_bytes();
    let bad = |why: String| Error::MalformedGraph6(why);
    let (&first, payload) = bytes.split_first().ok_or_else(|| bad("empty line".into()))?;
    if let Some(pos) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(bad(format!("byte {:#04x} at offset {pos} outside 63..=126", bytes[pos])));
    }
    let n = (first - 63) as usize;
    if n > MAX_VERTICES {
        return Err(bad(format!("long form (n > {MAX_VERTICES}) is not supported")));
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let want = nbits.div_ceil(6);
    if payload.len() != want {
        return Err(bad(format!("expected {want} payload bytes for n = {n}, got {}", payload.len())));
    }
    let mut g = Graph::empty(n);
    let mut idx = 0;
    for v in 1..n {
        for u in 0..v {
            if (payload[idx / 6] - 63) & (0x20 >> (idx % 6)) != 0 {
                g.set_edge(u, v);
            }
            idx += 1;
        }
    }
    Ok(g)
}
