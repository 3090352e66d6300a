use std::net::{TcpListener, TcpStream};
use std::path::PathBuf;
use std::process::Command;
use std::thread;
use std::time::{Duration, Instant};

use arinteract::load_scene;
use arinteract::serve::{bind, serve, ServeConfig};
use arinteract_core::tracker::load_pose_trace;
use arinteract_core::EngineConfig;
use tungstenite::stream::MaybeTlsStream;
use tungstenite::{connect, Message, WebSocket};

type Client = WebSocket<MaybeTlsStream<TcpStream>>;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

/// Serves the first orbit pose (φ = 0, housing under the screen centre)
/// in a loop at 60 fps.
fn start_server() -> u16 {
    let scene = load_scene(&fixture("pump.obj"), Some(&fixture("pump.registry"))).unwrap();
    let first = load_pose_trace(fixture("orbit.trace")).unwrap()[0];
    let config = ServeConfig {
        scene,
        samples: vec![first],
        fps: 60.0,
        engine: EngineConfig::default(),
    };
    let listener = bind(0).unwrap();
    let port = listener.local_addr().unwrap().port();
    thread::spawn(move || serve(listener, config));
    port
}

fn next_line(ws: &mut Client) -> String {
    loop {
        match ws.read().expect("server message") {
            Message::Text(t) => return t,
            Message::Close(_) => panic!("server closed"),
            _ => {}
        }
    }
}

/// Reads lines until one satisfies `pred`, within a deadline.
fn wait_for(ws: &mut Client, pred: impl Fn(&str) -> bool) -> Vec<String> {
    let deadline = Instant::now() + Duration::from_secs(5);
    let mut seen = Vec::new();
    while Instant::now() < deadline {
        let line = next_line(ws);
        let done = pred(&line);
        seen.push(line);
        if done {
            return seen;
        }
    }
    panic!(
        "timed out; last lines: {:?}",
        &seen[seen.len().saturating_sub(5)..]
    );
}

fn send(ws: &mut Client, line: &str) {
    ws.send(Message::Text(line.to_string())).unwrap();
}

#[test]
fn preamble_then_frames() {
    let port = start_server();
    let (mut ws, _) = connect(format!("ws://127.0.0.1:{port}")).unwrap();
    assert_eq!(next_line(&mut ws), "MODEL 4");
    let mut parts = Vec::new();
    let mut tris = 0;
    loop {
        let line = next_line(&mut ws);
        let tok: Vec<&str> = line.split(' ').collect();
        match tok[0] {
            "PART" => parts.push((tok[1].to_string(), tok[2].parse::<usize>().unwrap())),
            "TRI" => {
                assert_eq!(tok.len(), 10);
                tris += 1;
            }
            "FRAME" => {
                assert_eq!(tok.len(), 1 + 3 + 16 + 1, "{line}");
                assert_eq!(tok[2], "1");
                assert_eq!(tok[3], "DEG180");
                break;
            }
            other => panic!("unexpected {other}"),
        }
    }
    let names: Vec<&str> = parts.iter().map(|p| p.0.as_str()).collect();
    assert_eq!(names, ["base", "housing", "shaft", "cover"]);
    assert_eq!(tris, parts.iter().map(|p| p.1).sum::<usize>());
}

#[test]
fn tap_selects_and_pinch_rescales() {
    let port = start_server();
    let (mut ws, _) = connect(format!("ws://127.0.0.1:{port}")).unwrap();
    wait_for(&mut ws, |l| l.starts_with("FRAME"));

    send(&mut ws, "TAP 320 240");
    let lines = wait_for(&mut ws, |l| l.starts_with("HIGHLIGHT"));
    let tail: Vec<&str> = lines[lines.len() - 3..]
        .iter()
        .map(String::as_str)
        .collect();
    assert_eq!(
        tail,
        [
            "MSG CANCEL",
            "MSG INFO Pump housing, lifted for inspection",
            "HIGHLIGHT housing 0.0000000000000000e0 5.0000000000000000e1 0.0000000000000000e0"
        ]
    );

    send(&mut ws, "PINCH_SCALE 2.5\nNOT_AN_EVENT\n");
    wait_for(&mut ws, |l| {
        l.starts_with("FRAME") && l.ends_with(" 2.5000000000000000e0")
    });
}

#[test]
fn sessions_are_independent() {
    let port = start_server();
    let (mut a, _) = connect(format!("ws://127.0.0.1:{port}")).unwrap();
    let (mut b, _) = connect(format!("ws://127.0.0.1:{port}")).unwrap();
    wait_for(&mut a, |l| l.starts_with("FRAME"));
    wait_for(&mut b, |l| l.starts_with("FRAME"));
    send(&mut a, "PINCH_SCALE 4");
    wait_for(&mut a, |l| {
        l.starts_with("FRAME") && l.ends_with(" 4.0000000000000000e0")
    });
    let frames = wait_for(&mut b, |l| l.starts_with("FRAME"));
    assert!(frames.last().unwrap().ends_with(" 1.0000000000000000e0"));
}

#[test]
fn busy_port_exits_4() {
    let holder = TcpListener::bind("127.0.0.1:0").unwrap();
    let port = holder.local_addr().unwrap().port().to_string();
    let model = fixture("pump.obj").display().to_string();
    let out = Command::new(env!("CARGO_BIN_EXE_arinteract"))
        .args(["serve", "--model", &model, "--port", &port])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn serve_rejects_empty_source() {
    let model = fixture("pump.obj").display().to_string();
    let out = Command::new(env!("CARGO_BIN_EXE_arinteract"))
        .args(["serve", "--model", &model, "--duration", "0", "--port", "0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
