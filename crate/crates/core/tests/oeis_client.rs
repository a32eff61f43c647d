//! b-file fetching against a local stand-in for oeis.org.

use std::io::{BufRead, BufReader, Write};
use std::net::TcpListener;
use std::thread;
use std::time::Duration;

use seqlat::catalog::SequenceId;
use seqlat::oeis::{self, OeisClient, OeisError, Source};

const A026770_HEAD: &str = "# A026770\n0 1\n1 2\n2 7\n3 28\n4 120\n5 538\n";

/// Serves `responses` in order, one per connection, then stops.
fn serve(responses: Vec<(u16, &'static str)>) -> (String, thread::JoinHandle<Vec<String>>) {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let base = format!("http://{}", listener.local_addr().unwrap());
    let handle = thread::spawn(move || {
        let mut paths = Vec::new();
        for (status, body) in responses {
            let (mut stream, _) = listener.accept().unwrap();
            let mut reader = BufReader::new(stream.try_clone().unwrap());
            let mut request_line = String::new();
            reader.read_line(&mut request_line).unwrap();
            paths.push(request_line.split_whitespace().nth(1).unwrap_or("").to_string());
            let mut line = String::new();
            while reader.read_line(&mut line).unwrap() > 0 && line != "\r\n" {
                line.clear();
            }
            let reason = if status == 200 { "OK" } else { "Not Found" };
            write!(
                stream,
                "HTTP/1.1 {status} {reason}\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
                body.len()
            )
            .unwrap();
        }
        paths
    });
    (base, handle)
}

/// A base URL nothing listens on.
fn dead_base() -> String {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let base = format!("http://{}", listener.local_addr().unwrap());
    drop(listener);
    base
}

#[test]
fn cold_cache_fetch_populates_cache() {
    let cache = tempfile::tempdir().unwrap();
    let (base, server) = serve(vec![(200, A026770_HEAD)]);
    let client = OeisClient::new(base, cache.path()).with_timeout(Duration::from_secs(5));
    let id = SequenceId::new(26770);
    let record = client.fetch_bfile(id).unwrap();
    assert_eq!(record.source, Source::Network);
    assert_eq!(record.entries.len(), 6);
    assert_eq!(server.join().unwrap(), vec!["/A026770/b026770.txt"]);
    let cached = std::fs::read_to_string(cache.path().join("b026770.txt")).unwrap();
    assert_eq!(cached, A026770_HEAD);
    // round trip through the cache
    assert_eq!(oeis::parse_bfile(&cached).unwrap(), record.entries);
}

#[test]
fn warm_cache_serves_when_network_is_down() {
    let cache = tempfile::tempdir().unwrap();
    std::fs::write(cache.path().join("b026770.txt"), A026770_HEAD).unwrap();
    let client = OeisClient::new(dead_base(), cache.path()).with_timeout(Duration::from_secs(2));
    let record = client.fetch_bfile(SequenceId::new(26770)).unwrap();
    assert_eq!(record.source, Source::Cache);
    assert_eq!(record.entries[5].1, 538.into());
}

#[test]
fn not_found_without_cache_fails() {
    let cache = tempfile::tempdir().unwrap();
    let (base, server) = serve(vec![(404, "no such file")]);
    let client = OeisClient::new(base, cache.path()).with_timeout(Duration::from_secs(5));
    let err = client.fetch_bfile(SequenceId::new(999999)).unwrap_err();
    assert!(matches!(err, OeisError::FetchFailed { .. }), "{err}");
    // 404 is not retried
    assert_eq!(server.join().unwrap().len(), 1);
    assert!(!cache.path().join("b999999.txt").exists());
}

#[test]
fn no_network_no_cache_fails() {
    let cache = tempfile::tempdir().unwrap();
    let client = OeisClient::new(dead_base(), cache.path()).with_timeout(Duration::from_secs(2));
    assert!(matches!(
        client.fetch_bfile(SequenceId::new(26770)),
        Err(OeisError::FetchFailed { .. })
    ));
}

#[test]
fn server_error_is_retried_once() {
    let cache = tempfile::tempdir().unwrap();
    let (base, server) = serve(vec![(503, "busy"), (200, A026770_HEAD)]);
    let client = OeisClient::new(base, cache.path()).with_timeout(Duration::from_secs(5));
    let record = client.fetch_bfile(SequenceId::new(26770)).unwrap();
    assert_eq!(record.source, Source::Network);
    assert_eq!(server.join().unwrap().len(), 2);
}

#[test]
fn malformed_body_is_a_parse_error_and_not_cached() {
    let cache = tempfile::tempdir().unwrap();
    let (base, _server) = serve(vec![(200, "<html>not a b-file</html>\n")]);
    let client = OeisClient::new(base, cache.path()).with_timeout(Duration::from_secs(5));
    assert!(matches!(
        client.fetch_bfile(SequenceId::new(26770)),
        Err(OeisError::ParseFailed { .. })
    ));
    assert!(!cache.path().join("b026770.txt").exists());
}

#[test]
fn offline_mode_skips_network() {
    let cache = tempfile::tempdir().unwrap();
    std::fs::write(cache.path().join("b026770.txt"), A026770_HEAD).unwrap();
    // nothing listens here, and offline mode must not even try
    let client = OeisClient::new("http://127.0.0.1:9", cache.path()).offline(true);
    assert_eq!(client.fetch_bfile(SequenceId::new(26770)).unwrap().source, Source::Cache);
}
