use std::io::{self, BufReader};
use std::net::{TcpStream, ToSocketAddrs};
use std::time::Duration;

use nimors::canon::CanonKey;
use nimors::engine::{NimValue, RemoteCache, RemoteError};
use thiserror::Error;

use crate::protocol::{read_frame, write_frame, Frame, Request, Response, Stats, MAX_KEY_LEN, MAX_RESPONSE_LEN};

const IO_TIMEOUT: Duration = Duration::from_secs(30);

#[derive(Debug, Error)]
pub enum ClientError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("protocol violation: {0}")]
    Protocol(String),
    #[error("server rejected the store")]
    Rejected,
}

impl From<ClientError> for RemoteError {
    fn from(e: ClientError) -> RemoteError {
        match e {
            ClientError::Io(e) => RemoteError::ConnectionLost(e.to_string()),
            ClientError::Protocol(s) => RemoteError::ProtocolViolation(s),
            ClientError::Rejected => RemoteError::Rejected,
        }
    }
}

/// One connection to a cache server.
pub struct CacheClient {
    reader: BufReader<TcpStream>,
    writer: TcpStream,
}

impl CacheClient {
    pub fn connect<A: ToSocketAddrs>(addr: A) -> Result<CacheClient, ClientError> {
        let stream = TcpStream::connect(addr)?;
        stream.set_nodelay(true)?;
        stream.set_read_timeout(Some(IO_TIMEOUT))?;
        stream.set_write_timeout(Some(IO_TIMEOUT))?;
        Ok(CacheClient { reader: BufReader::new(stream.try_clone()?), writer: stream })
    }

    fn call(&mut self, request: &Request) -> Result<Response, ClientError> {
        write_frame(&mut self.writer, &request.encode())?;
        match read_frame(&mut self.reader, MAX_RESPONSE_LEN)? {
            Frame::Payload(p) => Response::decode(&p).map_err(|e| ClientError::Protocol(e.to_string())),
            Frame::Closed => Err(io::Error::from(io::ErrorKind::UnexpectedEof).into()),
            Frame::Oversized(len) => Err(ClientError::Protocol(format!("response of {len} bytes"))),
        }
    }

    pub fn get(&mut self, key: &[u8]) -> Result<Option<u16>, ClientError> {
        match self.call(&Request::Get(key.to_vec()))? {
            Response::Hit(v) => Ok(Some(v)),
            Response::Miss => Ok(None),
            other => Err(ClientError::Protocol(format!("unexpected reply to get: {other:?}"))),
        }
    }

    pub fn put(&mut self, key: &[u8], value: u16) -> Result<(), ClientError> {
        match self.call(&Request::Put(key.to_vec(), value))? {
            Response::Ok => Ok(()),
            Response::Error => Err(ClientError::Rejected),
            other => Err(ClientError::Protocol(format!("unexpected reply to put: {other:?}"))),
        }
    }

    pub fn stats(&mut self) -> Result<Stats, ClientError> {
        match self.call(&Request::Stats)? {
            Response::Stats(s) => Ok(s),
            other => Err(ClientError::Protocol(format!("unexpected reply to stats: {other:?}"))),
        }
    }
}

/// Keys longer than the wire limit (graphs above 32 vertices) are never
/// sent: gets miss and puts are dropped.
impl RemoteCache for CacheClient {
    fn get(&mut self, key: &CanonKey) -> Result<Option<NimValue>, RemoteError> {
        if key.as_bytes().len() > MAX_KEY_LEN {
            return Ok(None);
        }
        Ok(CacheClient::get(self, key.as_bytes())?.map(NimValue))
    }

    fn put(&mut self, key: &CanonKey, value: NimValue) -> Result<(), RemoteError> {
        if key.as_bytes().len() > MAX_KEY_LEN {
            return Ok(());
        }
        Ok(CacheClient::put(self, key.as_bytes(), value.0)?)
    }
}
