use std::fs;
use std::process::{Command, Output};

fn stringasm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stringasm")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn index_reports() {
    let out = stringasm(&["index", "zbzbzc"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().next(), Some("a = 4 (exact)"));
    assert_eq!(stdout(&stringasm(&["index", "z"])).lines().next(), Some("a = 0 (exact)"));
    let out = stringasm(&["index", "zzzbbc", "--oracle-check"]);
    assert_eq!(stdout(&out).lines().next(), Some("a = 5 (exact, oracle agrees)"));
}

#[test]
fn index_witness_lists_every_join() {
    let out = stringasm(&["index", "zbzbczbzbczbzbc", "--witness"]);
    let text = stdout(&out);
    assert!(text.starts_with("a = 5 (exact)"));
    assert_eq!(text.lines().filter(|l| l.contains(" + ")).count(), 5);
    assert!(text.trim_end().ends_with("= zbzbczbzbczbzbc"));
}

#[test]
fn index_errors() {
    assert_eq!(code(&stringasm(&["index", ""])), 2);
    let long = "cbbzcbzzczzzbbbcbbzcbzzczzzbbb";
    let out = stringasm(&["index", long]);
    assert_eq!(code(&out), 3);
    let out = stringasm(&["index", long, "--allow-inexact"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("inexact"));
    assert_eq!(code(&stringasm(&["index"])), 2);
    assert_eq!(code(&stringasm(&["index", "zz", "--cap", "many"])), 2);
}

#[test]
fn byte_mode_splits_multibyte_characters() {
    assert_eq!(stdout(&stringasm(&["index", "é"])).lines().next(), Some("a = 0 (exact)"));
    assert_eq!(stdout(&stringasm(&["index", "--bytes", "é"])).lines().next(), Some("a = 1 (exact)"));
}

#[test]
fn assembly_equation_files() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("one.csv", "object,copies\nzbzbzc,1\n", "A = 0"),
        ("two.json", r#"[{"object": "zz", "copies": 2}]"#, "A = 1.3591409142295225"),
        ("three.csv", "object,copies\nzbzbzc,3\nz,1\n", "A = 27.299075016572118"),
    ];
    for (name, body, want) in cases {
        let path = dir.path().join(name);
        fs::write(&path, body).unwrap();
        let out = stringasm(&["assembly", path.to_str().unwrap()]);
        assert_eq!(code(&out), 0, "{name}");
        assert_eq!(stdout(&out).lines().last(), Some(want), "{name}");
    }

    let bad = dir.path().join("bad.csv");
    fs::write(&bad, "object,copies\nzz,2\nzb,x\n").unwrap();
    let out = stringasm(&["assembly", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    assert_eq!(code(&stringasm(&["assembly", dir.path().join("missing.csv").to_str().unwrap()])), 2);

    let long = dir.path().join("long.csv");
    fs::write(&long, "object,copies\ncbbzcbzzczzzbbbcbbzcbzzczzzbbb,2\n").unwrap();
    assert_eq!(code(&stringasm(&["assembly", long.to_str().unwrap()])), 3);
}

#[test]
fn huffman_encode_and_decode() {
    let out = stringasm(&["huffman", "encode", "zbzbzc", "--show-tree"]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "bits: 101101100");
    assert_eq!(lines[2], r#"codebook: {"b":"01","c":"00","z":"1"}"#);
    let packed = lines[1].strip_prefix("packed: ").unwrap();

    let book = r#"{"b":"01","c":"00","z":"1"}"#;
    assert_eq!(stdout(&stringasm(&["huffman", "decode", "111010100", "--book", book])), "zzzbbc\n");
    assert_eq!(stdout(&stringasm(&["huffman", "decode", packed, "--packed", "--book", book])), "zbzbzc\n");
    assert_eq!(code(&stringasm(&["huffman", "decode", "10110", "--book", book])), 2);
    assert_eq!(code(&stringasm(&["huffman", "decode", "1021", "--book", book])), 2);
}

#[test]
fn lzw_encode_and_decode() {
    let out = stringasm(&["lzw", "encode", &"z".repeat(15), "--show-dict"]);
    let text = stdout(&out);
    assert!(text.starts_with("codes: 0 1 2 3 4\n"));
    assert!(text.contains(r#"dictionary: {"0":"z","1":"zz","2":"zzz","3":"zzzz","4":"zzzzz"}"#));

    for input in ["TOBEORNOTTOBEORTOBEORNOT", "zbzbczbzbczbzbc", "λx.λy.x"] {
        let text = stdout(&stringasm(&["lzw", "encode", input]));
        let stream = text.lines().find_map(|l| l.strip_prefix("stream: ")).unwrap();
        assert_eq!(stdout(&stringasm(&["lzw", "decode", stream])), format!("{input}\n"));
    }
    let bad = r#"{"alphabet":["z"],"codes":[0,7],"final_dict_size":2}"#;
    assert_eq!(code(&stringasm(&["lzw", "decode", bad])), 2);
    assert_eq!(code(&stringasm(&["lzw", "decode", "{not json"])), 2);
}

#[test]
fn entropy_of_counterexample() {
    let text = stdout(&stringasm(&["entropy", "zzzbbc"]));
    assert_eq!(text.lines().next(), Some("H = 1.4591479170272448 bits/symbol"));
}

#[test]
fn experiment_counterexamples_gate() {
    let out = stringasm(&["experiment", "counterexamples"]);
    assert_eq!(code(&out), 0);
    assert!(!stdout(&out).contains("FAIL"));
}

#[test]
fn experiment_scaling_row() {
    let out = stringasm(&["experiment", "scaling", "--steps", "5"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).lines().any(|l| l.starts_with("5\t15\t15\t15\t16\t")));
    assert_eq!(code(&stringasm(&["experiment", "scaling", "--steps", "0"])), 2);
}

#[test]
fn experiment_permutations_reports_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let run = |sub: &str, workers: &str| {
        let out_dir = dir.path().join(sub);
        let out = stringasm(&[
            "experiment", "permutations", "--samples", "300", "--workers", workers, "--out",
            out_dir.to_str().unwrap(), "--svg",
        ]);
        assert_eq!(code(&out), 0);
        let csv = fs::read_to_string(out_dir.join("records.csv")).unwrap();
        let json: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(out_dir.join("summary.json")).unwrap()).unwrap();
        let svg = fs::read_to_string(out_dir.join("histogram.svg")).unwrap();
        (csv, json, svg)
    };
    let (csv_a, mut json_a, svg_a) = run("a", "1");
    let (csv_b, mut json_b, svg_b) = run("b", "3");
    assert_eq!(csv_a.lines().next(), Some("string,assembly_index,lzw_codes,lzw_bytes,huffman_bits,entropy"));
    assert_eq!(csv_a.lines().count(), 301);
    assert_eq!(csv_a, csv_b);
    assert_eq!(svg_a, svg_b);
    assert!(svg_a.starts_with("<svg"));
    assert_eq!(json_a["config"]["seed"], serde_json::json!(stringasm::experiments::DEFAULT_SEED));
    assert!(json_a["generator"].as_str().unwrap().contains("ChaCha8"));
    for j in [&mut json_a, &mut json_b] {
        j["wall_time_secs"] = serde_json::Value::Null;
        j["config"]["workers"] = serde_json::Value::Null;
    }
    assert_eq!(json_a, json_b);
}

#[test]
fn experiment_guards() {
    let out = stringasm(&["experiment", "permutations", "--base", "abcdefghijkl", "--exhaustive"]);
    assert_eq!(code(&out), 3);
    let out = stringasm(&["experiment", "permutations", "--base", "zzb", "--exhaustive"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("records = 3"));
    assert_eq!(code(&stringasm(&["experiment", "permutations", "--workers", "0"])), 2);
    assert_eq!(code(&stringasm(&["experiment", "permutations", "--svg"])), 2);
}
