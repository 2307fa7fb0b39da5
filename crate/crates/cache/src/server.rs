use std::collections::HashMap;
use std::io::{self, BufReader};
use std::net::{Shutdown, SocketAddr, TcpListener, TcpStream, ToSocketAddrs};
use std::path::Path;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::{Arc, Mutex};
use std::thread::{self, JoinHandle};

use crate::protocol::{read_frame, write_frame, Frame, Request, Response, MAX_REQUEST_LEN};
use crate::store::Store;

type Connection = (TcpStream, Option<JoinHandle<()>>);

struct Shared {
    store: Store,
    stopping: AtomicBool,
    next_id: AtomicU64,
    conns: Mutex<HashMap<u64, Connection>>,
}

/// A running server. Dropping the handle shuts it down.
pub struct ServerHandle {
    addr: SocketAddr,
    shared: Arc<Shared>,
    acceptor: Option<JoinHandle<()>>,
}

/// Binds `addr` and serves on background threads, one per connection.
/// With `persist`, the log there is replayed first and every new entry is
/// appended to it.
pub fn spawn<A: ToSocketAddrs>(addr: A, persist: Option<&Path>) -> io::Result<ServerHandle> {
    let store = match persist {
        Some(path) => Store::open(path)?,
        None => Store::in_memory(),
    };
    let listener = TcpListener::bind(addr)?;
    let addr = listener.local_addr()?;
    let shared = Arc::new(Shared {
        store,
        stopping: AtomicBool::new(false),
        next_id: AtomicU64::new(0),
        conns: Mutex::new(HashMap::new()),
    });
    let acceptor = {
        let shared = Arc::clone(&shared);
        thread::Builder::new().name("cache-accept".into()).spawn(move || accept_loop(listener, shared))?
    };
    log::info!("memo cache listening on {addr}");
    Ok(ServerHandle { addr, shared, acceptor: Some(acceptor) })
}

impl ServerHandle {
    pub fn local_addr(&self) -> SocketAddr {
        self.addr
    }

    pub fn store(&self) -> &Store {
        &self.shared.store
    }

    /// Blocks until the server stops.
    pub fn wait(mut self) {
        if let Some(h) = self.acceptor.take() {
            let _ = h.join();
        }
    }

    /// Stops accepting, closes every connection and joins all threads.
    pub fn shutdown(mut self) {
        self.stop();
    }

    fn stop(&mut self) {
        let Some(acceptor) = self.acceptor.take() else { return };
        self.shared.stopping.store(true, Ordering::SeqCst);
        // wake the blocking accept
        let _ = TcpStream::connect(self.addr);
        let _ = acceptor.join();
        let conns: Vec<_> = self.shared.conns.lock().unwrap_or_else(|p| p.into_inner()).drain().collect();
        for (_, (stream, handle)) in conns {
            let _ = stream.shutdown(Shutdown::Both);
            if let Some(h) = handle {
                let _ = h.join();
            }
        }
    }
}

impl Drop for ServerHandle {
    fn drop(&mut self) {
        self.stop();
    }
}

fn accept_loop(listener: TcpListener, shared: Arc<Shared>) {
    for stream in listener.incoming() {
        if shared.stopping.load(Ordering::SeqCst) {
            break;
        }
        let stream = match stream {
            Ok(s) => s,
            Err(e) => {
                log::warn!("accept failed: {e}");
                continue;
            }
        };
        let id = shared.next_id.fetch_add(1, Ordering::Relaxed);
        let Ok(registered) = stream.try_clone() else { continue };
        let mut conns = shared.conns.lock().unwrap_or_else(|p| p.into_inner());
        let worker = Arc::clone(&shared);
        let handle = thread::Builder::new().name(format!("cache-conn-{id}")).spawn(move || {
            serve_connection(stream, &worker.store);
            // drop our own entry unless shutdown already took it
            let mine = worker.conns.lock().unwrap_or_else(|p| p.into_inner()).remove(&id);
            drop(mine);
        });
        match handle {
            Ok(h) => {
                conns.insert(id, (registered, Some(h)));
            }
            Err(e) => log::error!("cannot spawn connection thread: {e}"),
        }
    }
}

fn serve_connection(stream: TcpStream, store: &Store) {
    let peer = stream.peer_addr().map(|a| a.to_string()).unwrap_or_default();
    let _ = stream.set_nodelay(true);
    let Ok(read_half) = stream.try_clone() else { return };
    let mut reader = BufReader::new(read_half);
    let mut writer = stream;
    loop {
        let response = match read_frame(&mut reader, MAX_REQUEST_LEN) {
            Ok(Frame::Payload(payload)) => match Request::decode(&payload) {
                Ok(req) => store.handle(&req),
                Err(e) => {
                    log::debug!("{peer}: bad request: {e}");
                    Response::Error
                }
            },
            Ok(Frame::Oversized(len)) => {
                // the stream can't be resynchronised past an unread body
                log::debug!("{peer}: frame of {len} bytes; closing");
                let _ = write_frame(&mut writer, &Response::Error.encode());
                break;
            }
            Ok(Frame::Closed) => break,
            Err(e) => {
                log::debug!("{peer}: {e}");
                break;
            }
        };
        if write_frame(&mut writer, &response.encode()).is_err() {
            break;
        }
    }
}
