//! Start the HTTP API on an ephemeral port, send it a few requests and print
//! the responses. Pass `--serve` to keep it running on port 8080 instead.
//!
//!     cargo run --example http_service

use std::io::{Read, Write};
use std::net::{SocketAddr, TcpStream};
use std::sync::Arc;

use mpfiber::{dgvf, fixtures, service, MorseRank, QueryCache};

#[tokio::main]
async fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = fixtures::f3();
    let engine = MorseRank::new(f.clone(), dgvf::build_consistent_dgvf(&f))?;
    let cache = Arc::new(QueryCache::new(Arc::new(engine)));
    cache.precompute_literals(&["base=0,3 dir=7,4", "base=0,6 dir=4,1"]);

    if std::env::args().any(|a| a == "--serve") {
        let addr: SocketAddr = "127.0.0.1:8080".parse()?;
        println!("listening on http://{addr}/api/v1/summary");
        service::serve(cache, addr).await?;
        return Ok(());
    }

    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await?;
    let addr = listener.local_addr()?;
    tokio::spawn(async move { axum::serve(listener, service::router(cache)).await });

    let requests = [
        ("GET", "/api/v1/summary", ""),
        ("GET", "/api/v1/critical-values", ""),
        ("POST", "/api/v1/fiber", r#"{"base":["0","2"],"dir":["1","1"],"degrees":[0]}"#),
        ("POST", "/api/v1/fiber", r#"{"base":["0","0"],"dir":["1","0"]}"#),
        ("GET", "/api/v1/classes", ""),
    ];
    for (method, path, body) in requests {
        let response = tokio::task::spawn_blocking(move || send(addr, method, path, body)).await??;
        println!("{method} {path}\n{response}\n");
    }
    Ok(())
}

fn send(addr: SocketAddr, method: &str, path: &str, body: &str) -> std::io::Result<String> {
    let mut stream = TcpStream::connect(addr)?;
    write!(
        stream,
        "{method} {path} HTTP/1.1\r\nHost: {addr}\r\nContent-Type: application/json\r\n\
         Content-Length: {}\r\nConnection: close\r\n\r\n{body}",
        body.len()
    )?;
    let mut raw = String::new();
    stream.read_to_string(&mut raw)?;
    let status = raw.lines().next().unwrap_or_default().to_string();
    let payload = raw.split("\r\n\r\n").nth(1).unwrap_or_default();
    Ok(format!("  {status}\n  {payload}"))
}
