use std::io::{Read, Write};
use std::net::{TcpListener, TcpStream};
use std::process::{Command, Output, Stdio};
use std::time::{Duration, Instant};

fn nimcash(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nimcash"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn solve_examples() {
    let out = nimcash(&["solve", "-A", "1,6", "-n", "43", "-d", "27", "-e", "28"]);
    assert!(out.status.success());
    assert!(
        stdout(&out).starts_with("P1 (staircase"),
        "{}",
        stdout(&out)
    );

    let out = nimcash(&["solve", "-A", "1,2", "-n", "5", "-d", "0", "-e", "9"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("P2 "));

    let out = nimcash(&[
        "solve", "--moves", "1,3,4", "--stones", "42", "--cash1", "29", "--cash2", "inf",
    ]);
    assert_eq!(stdout(&out), "P2 (upper class, case 2)\n");

    let out = nimcash(&[
        "solve", "-A", "1,6", "-n", "43", "-d", "27", "-e", "28", "--oracle",
    ]);
    assert_eq!(stdout(&out), "P1 (oracle)\n");

    let out = nimcash(&[
        "solve",
        "-A",
        "1,6",
        "-n",
        "43",
        "-d",
        "22",
        "-e",
        "22",
        "--strict-text",
    ]);
    assert!(stdout(&out).starts_with("P2 "));
}

#[test]
fn classic_and_classes() {
    assert_eq!(
        stdout(&nimcash(&["classic", "-A", "1,3,4", "-n", "9"])),
        "P2\n"
    );
    assert_eq!(
        stdout(&nimcash(&["classic", "-A", "2,3", "-n", "2"])),
        "P1\n"
    );
    let text = stdout(&nimcash(&[
        "classes", "-A", "1,6", "-n", "43", "-d", "37", "-e", "21",
    ]));
    assert!(text.contains("U1 = 37  U2 = 34"), "{text}");
    assert!(text.contains("M1 = 22  M2 = 22"));
    assert!(text.contains("Upper") && text.contains("Lower"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["solve", "-A", "", "-n", "4", "-d", "1", "-e", "1"][..],
        &["solve", "-A", "1,2", "-n", "4", "-d", "x", "-e", "1"],
        &["solve", "-A", "1,2", "-n", "4"],
        &["staircase", "-A", "1,2", "-n", "4", "--dlo", "3"],
        &["staircase", "-A", "1,2", "-n", "4", "--format", "png"],
        &["solve", "-A", "2,5", "-n", "5000", "-d", "1", "-e", "1"],
        &["frobnicate"],
    ] {
        assert_eq!(nimcash(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn sweep_exit_status() {
    let out = nimcash(&["sweep", "-A", "1,4,5", "--n-max", "40"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("0 discrepancies"));

    let out = nimcash(&[
        "sweep",
        "-A",
        "1,6",
        "--n-max",
        "50",
        "--strict-text",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(!report["entries"].as_array().unwrap().is_empty());

    let out = nimcash(&["sweep", "-A", "2,3", "--n-max", "20", "--cash-max", "22"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("nothing compared"));
}

#[test]
fn staircase_documents() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("fig.svg");
    let args = [
        "staircase",
        "-A",
        "1,6",
        "-n",
        "43",
        "--dlo",
        "22",
        "--dhi",
        "36",
        "--elo",
        "22",
        "--ehi",
        "33",
        "--format",
        "svg",
        "--out",
    ];
    let out = nimcash(&[&args[..], &[svg.to_str().unwrap()]].concat());
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let doc = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(doc.matches("<rect").count(), 180);

    let csv = stdout(&nimcash(&["staircase", "-A", "1,6", "-n", "43"]));
    assert_eq!(
        csv,
        include_str!("../../core/tests/golden/fig_n43_a1_6.csv")
    );

    let json = stdout(&nimcash(&[
        "staircase",
        "-A",
        "1,4,5",
        "-n",
        "48",
        "--source",
        "fast",
        "--format",
        "json",
    ]));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["source"], "fast");
    assert_eq!(v["cells"].as_array().unwrap().len(), 132);
}

#[test]
fn output_is_deterministic() {
    let args = ["sweep", "-A", "1,6", "--n-max", "40", "--strict-text"];
    assert_eq!(nimcash(&args).stdout, nimcash(&args).stdout);
    let seq = nimcash(&[
        "--sequential",
        "sweep",
        "-A",
        "1,6",
        "--n-max",
        "40",
        "--strict-text",
    ]);
    assert_eq!(seq.stdout, nimcash(&args).stdout);
}

#[test]
fn serve_reads_port_from_env() {
    let port = TcpListener::bind("127.0.0.1:0")
        .unwrap()
        .local_addr()
        .unwrap()
        .port();
    let mut child = Command::new(env!("CARGO_BIN_EXE_nimcash"))
        .arg("serve")
        .env("NIMCASH_PORT", port.to_string())
        .stdout(Stdio::null())
        .stderr(Stdio::null())
        .spawn()
        .unwrap();
    let deadline = Instant::now() + Duration::from_secs(10);
    let mut conn = loop {
        match TcpStream::connect(("127.0.0.1", port)) {
            Ok(c) => break c,
            Err(_) if Instant::now() < deadline => std::thread::sleep(Duration::from_millis(50)),
            Err(e) => panic!("server did not start: {e}"),
        }
    };
    conn.write_all(b"GET /classes?A=1,3,4&n=9 HTTP/1.1\r\nHost: x\r\nConnection: close\r\n\r\n")
        .unwrap();
    let mut response = String::new();
    conn.read_to_string(&mut response).unwrap();
    child.kill().unwrap();
    child.wait().unwrap();
    assert!(response.starts_with("HTTP/1.1 200"), "{response}");
    assert!(response.contains(r#""u1":6"#), "{response}");
}
