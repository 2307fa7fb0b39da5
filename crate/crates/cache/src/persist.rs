//! Append-only log of stored entries.
//!
//! Layout: the 4-byte magic `NMC1`, then records of `klen:u8 key[klen]
//! value:u16` (big endian). Each record is flushed before the store is
//! acknowledged. A torn record at the tail is cut off on open.

use std::fs::{File, OpenOptions};
use std::io::{self, BufWriter, Read, Seek, SeekFrom, Write};
use std::path::Path;

use crate::protocol::MAX_KEY_LEN;

pub const MAGIC: [u8; 4] = *b"NMC1";

pub struct Log {
    out: BufWriter<File>,
}

/// Entries recovered from an existing log, in write order.
pub type Replayed = Vec<(Vec<u8>, u16)>;

impl Log {
    /// Opens or creates the log at `path` and replays what it holds.
    pub fn open(path: &Path) -> io::Result<(Log, Replayed)> {
        let mut file = OpenOptions::new().read(true).write(true).create(true).truncate(false).open(path)?;
        let mut bytes = Vec::new();
        file.read_to_end(&mut bytes)?;

        if bytes.len() < MAGIC.len() {
            // new file, or one torn inside the header
            if !MAGIC.starts_with(&bytes) {
                return Err(io::Error::new(io::ErrorKind::InvalidData, "not a cache log"));
            }
            file.set_len(0)?;
            file.seek(SeekFrom::Start(0))?;
            file.write_all(&MAGIC)?;
            file.sync_data()?;
            return Ok((Log { out: BufWriter::new(file) }, Vec::new()));
        }
        if bytes[..4] != MAGIC {
            return Err(io::Error::new(io::ErrorKind::InvalidData, "not a cache log"));
        }
        let (entries, consumed) = parse_records(&bytes[4..]);
        let good = MAGIC.len() + consumed;
        if good < bytes.len() {
            log::warn!("cache log {}: dropping {} trailing bytes", path.display(), bytes.len() - good);
            file.set_len(good as u64)?;
        }
        file.seek(SeekFrom::Start(good as u64))?;
        Ok((Log { out: BufWriter::new(file) }, entries))
    }

    pub fn append(&mut self, key: &[u8], value: u16) -> io::Result<()> {
        debug_assert!(!key.is_empty() && key.len() <= MAX_KEY_LEN);
        self.out.write_all(&[key.len() as u8])?;
        self.out.write_all(key)?;
        self.out.write_all(&value.to_be_bytes())?;
        self.out.flush()
    }
}

/// Complete records and the byte length they span.
fn parse_records(mut body: &[u8]) -> (Replayed, usize) {
    let mut entries = Vec::new();
    let mut consumed = 0;
    while let Some((&klen, rest)) = body.split_first() {
        let klen = klen as usize;
        if klen == 0 || klen > MAX_KEY_LEN || rest.len() < klen + 2 {
            break;
        }
        let value = u16::from_be_bytes([rest[klen], rest[klen + 1]]);
        entries.push((rest[..klen].to_vec(), value));
        consumed += 1 + klen + 2;
        body = &rest[klen + 2..];
    }
    (entries, consumed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn replay_and_torn_tail() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.log");
        {
            let (mut log, replayed) = Log::open(&path).unwrap();
            assert!(replayed.is_empty());
            log.append(&[3, 0xe0], 2).unwrap();
            log.append(&[4, 0xfc], 0).unwrap();
        }
        // half-written third record
        let mut f = OpenOptions::new().append(true).open(&path).unwrap();
        f.write_all(&[2, 9]).unwrap();
        drop(f);

        let (mut log, replayed) = Log::open(&path).unwrap();
        assert_eq!(replayed, vec![(vec![3, 0xe0], 2), (vec![4, 0xfc], 0)]);
        assert_eq!(std::fs::metadata(&path).unwrap().len(), 4 + 5 + 5);
        log.append(&[5], 7).unwrap();
        drop(log);
        let (_, replayed) = Log::open(&path).unwrap();
        assert_eq!(replayed.len(), 3);
        assert_eq!(replayed[2], (vec![5], 7));
    }

    #[test]
    fn foreign_file_is_refused() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("other");
        std::fs::write(&path, b"hello world").unwrap();
        assert!(Log::open(&path).is_err());
        std::fs::write(&path, b"NM").unwrap();
        assert!(Log::open(&path).unwrap().1.is_empty());
    }
}
