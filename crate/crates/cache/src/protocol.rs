//! Wire format.
//!
//! Every frame is a big-endian `u32` payload length followed by the payload.
//!
//! ```text
//! request   'G' klen:u8 key[klen]
//!           'P' klen:u8 key[klen] value:u16
//!           'S'
//! response  'H' value:u16 | 'M' | 'O' | 'E' | 'T' entries:u64 hits:u64 misses:u64 puts:u64
//! ```
//!
//! Keys are 1 to 64 bytes.

use std::io::{self, Read, Write};

use thiserror::Error;

pub const MAX_KEY_LEN: usize = 64;
/// Longest valid request payload (a `P` with a 64-byte key).
pub const MAX_REQUEST_LEN: usize = 1 + 1 + MAX_KEY_LEN + 2;
/// Longest valid response payload (a `T`).
pub const MAX_RESPONSE_LEN: usize = 1 + 4 * 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Request {
    Get(Vec<u8>),
    Put(Vec<u8>, u16),
    Stats,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub entries: u64,
    pub hits: u64,
    pub misses: u64,
    pub puts: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Response {
    Hit(u16),
    Miss,
    Ok,
    Error,
    Stats(Stats),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FrameError {
    #[error("empty frame")]
    Empty,
    #[error("unknown tag {0:#04x}")]
    UnknownTag(u8),
    #[error("key length {0} outside 1..={MAX_KEY_LEN}")]
    KeyLength(usize),
    #[error("frame length {got}, expected {expected}")]
    Length { got: usize, expected: usize },
}

fn check_key(key: &[u8]) -> Result<(), FrameError> {
    if key.is_empty() || key.len() > MAX_KEY_LEN {
        return Err(FrameError::KeyLength(key.len()));
    }
    Ok(())
}

fn expect_len(payload: &[u8], expected: usize) -> Result<(), FrameError> {
    if payload.len() != expected {
        return Err(FrameError::Length { got: payload.len(), expected });
    }
    Ok(())
}

impl Request {
    /// Panics if the key is empty or longer than [`MAX_KEY_LEN`].
    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(MAX_REQUEST_LEN);
        match self {
            Request::Get(key) | Request::Put(key, _) => {
                check_key(key).expect("request key length");
                out.push(if matches!(self, Request::Get(_)) { b'G' } else { b'P' });
                out.push(key.len() as u8);
                out.extend_from_slice(key);
                if let Request::Put(_, value) = self {
                    out.extend_from_slice(&value.to_be_bytes());
                }
            }
            Request::Stats => out.push(b'S'),
        }
        out
    }

    pub fn decode(payload: &[u8]) -> Result<Request, FrameError> {
        let (&tag, rest) = payload.split_first().ok_or(FrameError::Empty)?;
        match tag {
            b'S' => {
                expect_len(rest, 0)?;
                Ok(Request::Stats)
            }
            b'G' | b'P' => {
                let (&klen, rest) = rest.split_first().ok_or(FrameError::KeyLength(0))?;
                let klen = klen as usize;
                if klen == 0 || klen > MAX_KEY_LEN {
                    return Err(FrameError::KeyLength(klen));
                }
                let tail = if tag == b'P' { 2 } else { 0 };
                expect_len(rest, klen + tail)?;
                let key = rest[..klen].to_vec();
                if tag == b'G' {
                    Ok(Request::Get(key))
                } else {
                    Ok(Request::Put(key, u16::from_be_bytes([rest[klen], rest[klen + 1]])))
                }
            }
            other => Err(FrameError::UnknownTag(other)),
        }
    }
}

impl Response {
    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(MAX_RESPONSE_LEN);
        match *self {
            Response::Hit(v) => {
                out.push(b'H');
                out.extend_from_slice(&v.to_be_bytes());
            }
            Response::Miss => out.push(b'M'),
            Response::Ok => out.push(b'O'),
            Response::Error => out.push(b'E'),
            Response::Stats(s) => {
                out.push(b'T');
                for c in [s.entries, s.hits, s.misses, s.puts] {
                    out.extend_from_slice(&c.to_be_bytes());
                }
            }
        }
        out
    }

    pub fn decode(payload: &[u8]) -> Result<Response, FrameError> {
        let (&tag, rest) = payload.split_first().ok_or(FrameError::Empty)?;
        match tag {
            b'H' => {
                expect_len(rest, 2)?;
                Ok(Response::Hit(u16::from_be_bytes([rest[0], rest[1]])))
            }
            b'M' | b'O' | b'E' => {
                expect_len(rest, 0)?;
                Ok(match tag {
                    b'M' => Response::Miss,
                    b'O' => Response::Ok,
                    _ => Response::Error,
                })
            }
            b'T' => {
                expect_len(rest, 32)?;
                let c = |i: usize| u64::from_be_bytes(rest[8 * i..8 * i + 8].try_into().unwrap());
                Ok(Response::Stats(Stats { entries: c(0), hits: c(1), misses: c(2), puts: c(3) }))
            }
            other => Err(FrameError::UnknownTag(other)),
        }
    }
}

pub fn write_frame<W: Write>(w: &mut W, payload: &[u8]) -> io::Result<()> {
    let len = u32::try_from(payload.len()).map_err(|_| io::Error::other("frame too long"))?;
    let mut buf = Vec::with_capacity(4 + payload.len());
    buf.extend_from_slice(&len.to_be_bytes());
    buf.extend_from_slice(payload);
    w.write_all(&buf)?;
    w.flush()
}

/// Outcome of reading one frame header and body.
#[derive(Debug)]
pub enum Frame {
    Payload(Vec<u8>),
    /// Clean end of stream before a header.
    Closed,
    /// Declared length above the limit; the body was not read.
    Oversized(u32),
}

pub fn read_frame<R: Read>(r: &mut R, max_len: usize) -> io::Result<Frame> {
    let mut header = [0u8; 4];
    let mut filled = 0;
    while filled < 4 {
        match r.read(&mut header[filled..]) {
            Ok(0) if filled == 0 => return Ok(Frame::Closed),
            Ok(0) => return Err(io::ErrorKind::UnexpectedEof.into()),
            Ok(k) => filled += k,
            Err(e) if e.kind() == io::ErrorKind::Interrupted => {}
            Err(e) => return Err(e),
        }
    }
    let len = u32::from_be_bytes(header);
    if len as usize > max_len {
        return Ok(Frame::Oversized(len));
    }
    let mut payload = vec![0u8; len as usize];
    r.read_exact(&mut payload)?;
    Ok(Frame::Payload(payload))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn byte_layout() {
        assert_eq!(Request::Get(vec![3, 0xe0]).encode(), [b'G', 2, 3, 0xe0]);
        assert_eq!(Request::Put(vec![3, 0xe0], 2).encode(), [b'P', 2, 3, 0xe0, 0, 2]);
        assert_eq!(Request::Stats.encode(), [b'S']);
        assert_eq!(Response::Hit(0x0102).encode(), [b'H', 1, 2]);
        let mut framed = Vec::new();
        write_frame(&mut framed, &Response::Miss.encode()).unwrap();
        assert_eq!(framed, [0, 0, 0, 1, b'M']);
    }

    #[test]
    fn malformed_requests() {
        assert_eq!(Request::decode(&[]), Err(FrameError::Empty));
        assert_eq!(Request::decode(b"X"), Err(FrameError::UnknownTag(b'X')));
        assert_eq!(Request::decode(&[b'G', 0]), Err(FrameError::KeyLength(0)));
        assert_eq!(Request::decode(&[b'G', 65]), Err(FrameError::KeyLength(65)));
        assert!(Request::decode(&[b'G', 2, 1]).is_err());
        assert!(Request::decode(&[b'P', 1, 1, 0]).is_err());
        assert!(Request::decode(&[b'S', 0]).is_err());
    }

    #[test]
    fn oversized_header_is_not_read() {
        let mut src: &[u8] = &[0xff, 0xff, 0xff, 0xff, 1, 2, 3];
        assert!(matches!(read_frame(&mut src, MAX_REQUEST_LEN).unwrap(), Frame::Oversized(u32::MAX)));
        let mut empty: &[u8] = &[];
        assert!(matches!(read_frame(&mut empty, 8).unwrap(), Frame::Closed));
        let mut short: &[u8] = &[0, 0];
        assert!(read_frame(&mut short, 8).is_err());
    }

    fn request() -> impl Strategy<Value = Request> {
        let key = proptest::collection::vec(any::<u8>(), 1..=MAX_KEY_LEN);
        prop_oneof![
            key.clone().prop_map(Request::Get),
            (key, any::<u16>()).prop_map(|(k, v)| Request::Put(k, v)),
            Just(Request::Stats),
        ]
    }

    proptest! {
        #[test]
        fn request_round_trip(req in request()) {
            prop_assert_eq!(Request::decode(&req.encode()), Ok(req));
        }

        #[test]
        fn response_round_trip(v in any::<u16>(), c in any::<[u64; 4]>()) {
            let stats = Stats { entries: c[0], hits: c[1], misses: c[2], puts: c[3] };
            for resp in [Response::Hit(v), Response::Miss, Response::Ok, Response::Error, Response::Stats(stats)] {
                prop_assert_eq!(Response::decode(&resp.encode()), Ok(resp));
            }
        }

        #[test]
        fn decode_never_panics(bytes in proptest::collection::vec(any::<u8>(), 0..80)) {
            let _ = Request::decode(&bytes);
            let _ = Response::decode(&bytes);
        }
    }
}
