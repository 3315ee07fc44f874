use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn approach(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_approach"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap_or(-1)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn decide_two_lines_writes_witness() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("a.perms"), "2 2\n1 2\n2 1\n").unwrap();
    let o = approach(dir.path(), &["decide", "a.perms"]);
    assert_eq!(code(&o), 0);
    let o = approach(dir.path(), &["sweep", "a.arr.json"]);
    assert_eq!(stdout(&o), "2 2\n1 2\n2 1\n");
}

#[test]
fn recrossing_pair_is_a_negative() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("b.perms"), "3 3\n1 2 3\n3 2 1\n2 3 1\n").unwrap();
    let o = approach(dir.path(), &["decide", "b.perms"]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("changes order"));
}

#[test]
fn certificate_round_trip_and_tamper() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("c.perms"), "6 2\n2 3 6 1 4 5\n3 6 5 2 1 4\n").unwrap();
    let o = approach(dir.path(), &["decide", "c.perms", "--mode", "reduced"]);
    assert_eq!(code(&o), 2);
    let o = approach(dir.path(), &["verify", "c.cert.json"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    // zeroing the multipliers breaks the certificate
    let text = fs::read_to_string(dir.path().join("c.cert.json")).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    for z in v["multipliers"].as_array_mut().unwrap() {
        *z = serde_json::Value::String("0".into());
    }
    fs::write(dir.path().join("bad.cert.json"), v.to_string()).unwrap();
    assert_eq!(code(&approach(dir.path(), &["verify", "bad.cert.json"])), 2);
}

#[test]
fn missing_input_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&approach(dir.path(), &["decide", "nope.perms"])), 1);
    fs::write(dir.path().join("x.perms"), "3 1\n1 2 2\n").unwrap();
    assert_eq!(code(&approach(dir.path(), &["validate", "x.perms"])), 1);
}

#[test]
fn formats_round_trip_bit_exact() {
    let dir = tempfile::tempdir().unwrap();
    let o = approach(dir.path(), &["generate", "random", "--n", "5", "--seed", "9", "-o", "r.arr.json"]);
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(dir.path().join("r.arr.json")).unwrap();
    let arr = approaching::arrgeom::PolyArrangement::from_json(&text).unwrap();
    assert_eq!(arr.to_json(), text);
    let perms = stdout(&approach(dir.path(), &["sweep", "r.arr.json"]));
    let parsed = approaching::seq::parse_perms(&perms).unwrap();
    assert_eq!(approaching::seq::format_perms(&parsed), perms);
}

#[test]
fn realize_then_sweep_reproduces_sequence() {
    let dir = tempfile::tempdir().unwrap();
    let o = approach(dir.path(), &["generate", "nonpappus", "-o", "np.perms"]);
    assert_eq!(code(&o), 0);
    fs::write(dir.path().join("s.perms"), "4 7\n1 2 3 4\n2 1 3 4\n2 3 1 4\n3 2 1 4\n3 2 4 1\n3 4 2 1\n4 3 2 1\n").unwrap();
    assert_eq!(code(&approach(dir.path(), &["realize", "s.perms"])), 0);
    let swept = stdout(&approach(dir.path(), &["sweep", "s.arr.json"]));
    assert_eq!(swept, fs::read_to_string(dir.path().join("s.perms")).unwrap());
}

#[test]
fn render_is_well_formed() {
    let dir = tempfile::tempdir().unwrap();
    approach(dir.path(), &["generate", "random", "--n", "6", "--colored", "--seed", "2", "-o", "r.arr.json"]);
    let o = approach(dir.path(), &["render", "r.arr.json", "--crossings", "--triangles"]);
    assert_eq!(code(&o), 0);
    let svg = stdout(&o);
    assert_eq!(svg.matches("<path ").count(), 6);
    assert_eq!(svg.matches("class=\"crossing\"").count(), 15);
    assert!(svg.contains("stroke=\"red\"") && svg.contains("stroke=\"blue\""));
    // one element per line: self-closed, a closed text label, or the root
    for line in svg.lines() {
        let ok = line.ends_with("/>")
            || (line.starts_with("<text") && line.ends_with("</text>"))
            || line.starts_with("<svg ")
            || line == "</svg>";
        assert!(ok, "{line}");
    }
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
}

#[test]
fn bichromatic_highlight_and_pencil() {
    let dir = tempfile::tempdir().unwrap();
    approach(dir.path(), &["generate", "random", "--n", "7", "--colored", "--seed", "4", "-o", "r.arr.json"]);
    let o = approach(dir.path(), &["bichromatic", "r.arr.json", "--svg", "t.svg"]);
    assert_eq!(code(&o), 0);
    let svg = fs::read_to_string(dir.path().join("t.svg")).unwrap();
    assert_eq!(svg.matches("class=\"triangle\"").count(), 1);
    approach(dir.path(), &["generate", "pencil", "--n", "3", "-o", "p.arr.json"]);
    // a pencil is outside both commands' preconditions
    assert_eq!(code(&approach(dir.path(), &["triangles", "p.arr.json"])), 1);
    let o = approach(dir.path(), &["bichromatic", "p.arr.json"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("pencil"));
}

#[test]
fn dual_and_primal_agree() {
    let dir = tempfile::tempdir().unwrap();
    approach(dir.path(), &["generate", "random", "--n", "4", "--seed", "1", "-o", "p.arr.json"]);
    assert_eq!(code(&approach(dir.path(), &["primal", "p.arr.json", "-o", "p.cfg.json"])), 0);
    assert_eq!(code(&approach(dir.path(), &["dual", "p.cfg.json", "-o", "d.arr.json"])), 0);
    let a = stdout(&approach(dir.path(), &["sweep", "p.arr.json"]));
    let b = stdout(&approach(dir.path(), &["sweep", "d.arr.json"]));
    assert_eq!(a, b);
}

#[test]
fn search_and_flipgraph_small() {
    let dir = tempfile::tempdir().unwrap();
    let o = approach(dir.path(), &["search", "triples", "--n", "4"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("# n = 4, examined 104 of 104"));
    let o = approach(dir.path(), &["flipgraph", "--n", "3"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.starts_with("node")).count(), 2);
    assert_eq!(out.lines().filter(|l| l.starts_with("edge")).count(), 1);
}
