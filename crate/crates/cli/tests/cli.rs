use std::process::{Command, Output};

fn tai(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tai"))
        .args(args)
        .output()
        .expect("running the tai binary")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// CSV records of the first table in a document.
fn first_table(csv_text: &str) -> Vec<csv::StringRecord> {
    let block = csv_text.split("\n\n").next().unwrap();
    csv::Reader::from_reader(block.as_bytes())
        .records()
        .map(Result::unwrap)
        .collect()
}

#[test]
fn fourth_in_major_scale() {
    let out = tai(&["interpretations", "024579E", "05", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = first_table(&stdout(&out));
    assert_eq!(&rows[0][2], "6");
    assert_eq!(&rows[0][3], "1.00");
    assert_eq!(&rows[0][5], "0 1 3 5 8 10");
}

#[test]
fn absent_combination_is_a_domain_error() {
    let out = tai(&["interpretations", "major", "012", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(3));
    let rows = first_table(&stdout(&out));
    assert_eq!(&rows[0][2], "0");
    assert_eq!(&rows[0][3], "--");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(tai(&["interpretations", "024579X", "05"]).status.code(), Some(2));
    assert_eq!(tai(&["tables", "t9"]).status.code(), Some(2));
    assert_eq!(tai(&["tai", "major", "--edo", "19"]).status.code(), Some(2));
    assert_eq!(tai(&["curve", "major", "--nmax", "8", "--auc-range", "1:32"]).status.code(), Some(2));
    assert_eq!(tai(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn pentatonic_single_notes() {
    let out = tai(&["interpretations", "02479", "0", "--format", "csv"]);
    assert_eq!(&first_table(&stdout(&out))[0][2], "5");
}

#[test]
fn whole_tone_index_and_draws() {
    let out = tai(&["tai", "02468T", "024579E", "--draws", "8", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = first_table(&stdout(&out));
    assert_eq!(&rows[0][2], "6.00");
    assert_eq!(&rows[1][6], "2.95");
}

#[test]
fn other_edos_take_integer_lists() {
    let out = tai(&["interpretations", "0,3,6,8,11,14,16", "0,8", "--edo", "19", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = first_table(&stdout(&out));
    assert_eq!(&rows[0][0], "0,3,6,8,11,14,16");
}

#[test]
fn output_is_deterministic() {
    for format in ["csv", "json", "markdown"] {
        let a = tai(&["tables", "appendix", "--format", format]);
        let b = tai(&["tables", "appendix", "--format", format]);
        assert_eq!(a.stdout, b.stdout, "{format}");
    }
}

#[test]
fn csv_round_trips_through_json() {
    for which in ["t1", "t2", "t3", "t3-scales", "t4", "t5", "t6", "t7", "appendix", "draws"] {
        let csv_text = stdout(&tai(&["tables", which, "--format", "csv"]));
        let json: serde_json::Value =
            serde_json::from_str(&stdout(&tai(&["tables", which, "--format", "json"]))).unwrap();
        let tables = json["tables"].as_array().unwrap();
        let blocks: Vec<&str> = csv_text.split("\n\n").collect();
        assert_eq!(blocks.len(), tables.len(), "{which}");
        for (block, table) in blocks.iter().zip(tables) {
            let mut reader = csv::Reader::from_reader(block.as_bytes());
            let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
            assert_eq!(serde_json::json!(header), table["columns"], "{which}");
            let rows: Vec<Vec<String>> = reader
                .records()
                .map(|r| r.unwrap().iter().map(String::from).collect())
                .collect();
            assert_eq!(serde_json::json!(rows), table["rows"], "{which}");
        }
    }
}

#[test]
fn heptachord_table_under_each_weighting() {
    for weighting in ["distinct-class", "subset", "instance"] {
        let out = tai(&["tables", "t6", "--weighting", weighting, "--format", "csv"]);
        assert_eq!(out.status.code(), Some(0), "{weighting}");
        assert_eq!(first_table(&stdout(&out)).len(), 6);
    }
    assert_eq!(tai(&["tables", "t6", "--weighting", "median"]).status.code(), Some(2));
}

#[test]
fn table_five_ranking() {
    let rows = first_table(&stdout(&tai(&["tables", "t5", "--format", "csv"])));
    assert_eq!(rows.len(), 7);
    assert_eq!(&rows[0][0], "Harmonic Minor");
    assert_eq!(&rows[0][3], "1.87");
    assert_eq!(&rows[6][0], "Whole-Tone");
    assert_eq!(&rows[6][3], "6.00");
}

#[test]
fn common_pool_summary() {
    let rows = first_table(&stdout(&tai(&["tables", "t7", "--format", "csv"])));
    let summary: Vec<&str> = rows.iter().map(|r| r.get(4).unwrap()).collect();
    assert_eq!(summary, ["6", "5.2 (4–6)", "4.1 (3–5)", "2.9 (1–5)", "1.9 (1–4)", "1.3 (1–2)"]);
}

#[test]
fn curves() {
    let rows = first_table(&stdout(&tai(&["curve", "whole-tone", "--nmax", "16", "--format", "csv"])));
    assert_eq!(rows.len(), 16);
    assert!(rows.iter().all(|r| &r[3] == "6.0000"));

    let rows = first_table(&stdout(&tai(&["curve", "0235689E", "--nmax", "32", "--format", "csv"])));
    let last: f64 = rows.last().unwrap()[3].parse().unwrap();
    assert!((last - 4.0).abs() < 0.01);

    let out = stdout(&tai(&[
        "curve", "--all-tnclasses", "5", "--nmax", "32", "--auc-baseline", "asymptote", "--format", "json",
    ]));
    let json: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(json["tables"][0]["rows"].as_array().unwrap().len(), 66 * 32);
    assert_eq!(json["tables"][1]["rows"].as_array().unwrap().len(), 66);
}

#[test]
fn custom_family_file() {
    let dir = std::env::temp_dir().join(format!("tai-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("family.txt");
    std::fs::write(&path, "# two scales\nedo = 12\nMajor = 024579E\nWhole-tone = 02468T\n").unwrap();
    let path = path.to_str().unwrap();

    let out = tai(&["survivors", "024", "--family", path, "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(first_table(&stdout(&out)).len(), 2);

    let out = tai(&["survivors", "0167", "--family", path]);
    assert_eq!(out.status.code(), Some(3));

    let out = tai(&["tables", "appendix", "--family", path, "--format", "csv"]);
    let rows = first_table(&stdout(&out));
    assert_eq!(rows[0].len(), 4);
    std::fs::remove_dir_all(&dir).unwrap();
}
