use std::path::Path;

use crate::counting::Colouring;
use crate::error::{Error, Result};
use crate::linalg::{PrimeField, Space};

pub const MAGIC: &[u8; 4] = b"FPNC";
pub const VERSION: u8 = 1;
const HEADER: usize = 8;

/// Encodes a colouring: magic, version, p, n, r, then one byte per point.
pub fn encode(phi: &Colouring) -> Result<Vec<u8>> {
    let space = phi.space();
    let n = u8::try_from(space.n()).map_err(|_| Error::invalid("n does not fit in one byte"))?;
    let mut out = Vec::with_capacity(HEADER + space.size());
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&[VERSION, space.p(), n, phi.r()]);
    out.extend_from_slice(phi.table());
    Ok(out)
}

pub fn decode(bytes: &[u8]) -> Result<Colouring> {
    if bytes.len() < HEADER {
        return Err(Error::invalid(format!("colouring file is {} bytes, shorter than its header", bytes.len())));
    }
    if &bytes[..4] != MAGIC {
        return Err(Error::invalid("bad magic, expected FPNC"));
    }
    if bytes[4] != VERSION {
        return Err(Error::invalid(format!("unsupported version {}", bytes[4])));
    }
    let field = PrimeField::new(u32::from(bytes[5]))?;
    let space = Space::new(field, usize::from(bytes[6]))?;
    let payload = &bytes[HEADER..];
    if payload.len() != space.size() {
        return Err(Error::invalid(format!(
            "payload has {} bytes, expected {}",
            payload.len(),
            space.size()
        )));
    }
    Colouring::new(space, bytes[7], payload.to_vec())
}

pub fn read(path: impl AsRef<Path>) -> Result<Colouring> {
    decode(&std::fs::read(path)?)
}

pub fn write(path: impl AsRef<Path>, phi: &Colouring) -> Result<()> {
    std::fs::write(path, encode(phi)?)?;
    Ok(())
}
