//! Binary dump of sorted gains for comparison with external tools.
//!
//! Layout, all little-endian: magic `b"URDV"`, format version `u32`, sample
//! count `u64`, then `count` IEEE-754 `f64` values in ascending order.

use std::io::{Read, Write};

use super::ecdf::EcdfResult;
use crate::error::{Error, Result};

pub const MAGIC: [u8; 4] = *b"URDV";
pub const VERSION: u32 = 1;
pub const HEADER_LEN: usize = 16;

pub fn write_dump<W: Write>(mut out: W, ecdf: &EcdfResult) -> Result<()> {
    let mut header = [0u8; HEADER_LEN];
    header[..4].copy_from_slice(&MAGIC);
    header[4..8].copy_from_slice(&VERSION.to_le_bytes());
    header[8..].copy_from_slice(&(ecdf.r() as u64).to_le_bytes());
    out.write_all(&header)?;
    let mut buf = Vec::with_capacity(8 * 8192);
    for chunk in ecdf.sorted_gains().chunks(8192) {
        buf.clear();
        for g in chunk {
            buf.extend_from_slice(&g.to_le_bytes());
        }
        out.write_all(&buf)?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_dump<R: Read>(mut input: R) -> Result<EcdfResult> {
    let mut header = [0u8; HEADER_LEN];
    input.read_exact(&mut header)?;
    if header[..4] != MAGIC {
        return Err(Error::Parse("not a gain dump (bad magic)".into()));
    }
    let version = u32::from_le_bytes(header[4..8].try_into().unwrap());
    if version != VERSION {
        return Err(Error::Parse(format!("unsupported dump version {version}")));
    }
    let count = u64::from_le_bytes(header[8..].try_into().unwrap()) as usize;
    let mut bytes = Vec::new();
    input.read_to_end(&mut bytes)?;
    if bytes.len() != count * 8 {
        return Err(Error::Parse(format!(
            "dump declares {count} values but holds {} bytes",
            bytes.len()
        )));
    }
    let values: Vec<f64> = bytes
        .chunks_exact(8)
        .map(|b| f64::from_le_bytes(b.try_into().unwrap()))
        .collect();
    if values.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Parse("dump values are not sorted".into()));
    }
    Ok(EcdfResult::from_sorted_unchecked(values))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_layout() {
        let e = EcdfResult::from_samples(vec![2.0, 1.0]);
        let mut buf = Vec::new();
        write_dump(&mut buf, &e).unwrap();
        assert_eq!(buf.len(), HEADER_LEN + 16);
        assert_eq!(&buf[..4], b"URDV");
        assert_eq!(&buf[4..8], &[1, 0, 0, 0]);
        assert_eq!(&buf[8..16], &[2, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(&buf[16..24], &1.0f64.to_le_bytes());
        assert_eq!(read_dump(buf.as_slice()).unwrap(), e);
    }

    #[test]
    fn rejects_corrupt_input() {
        let e = EcdfResult::from_samples(vec![1.0, 2.0, 3.0]);
        let mut buf = Vec::new();
        write_dump(&mut buf, &e).unwrap();
        let mut bad = buf.clone();
        bad[0] = b'X';
        assert!(matches!(read_dump(bad.as_slice()), Err(Error::Parse(_))));
        assert!(matches!(
            read_dump(&buf[..buf.len() - 3]),
            Err(Error::Parse(_))
        ));
        let mut unsorted = buf.clone();
        unsorted[16..24].copy_from_slice(&9.0f64.to_le_bytes());
        assert!(matches!(
            read_dump(unsorted.as_slice()),
            Err(Error::Parse(_))
        ));
        assert!(read_dump(&buf[..10]).is_err());
    }
}
