use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::Command;

use gradwise_cli::{render, run, CliError, Flags, Format, Status, KEYWORDS, OPERATIONS};

fn fixture(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name);
    std::fs::read_to_string(p).unwrap()
}

fn binary(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gradwise"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn xadic_fixture_stabilizes_every_degree_at_z() {
    let out = run(&fixture("zx_xadic.task"), &Flags::default()).unwrap();
    assert_eq!(out.exit_code, 0);
    let rep = &out.reports[0];
    assert_eq!(rep.rows.len(), 9);
    for (d, row) in rep.rows.iter().enumerate() {
        assert_eq!(row[1], d.to_string());
        assert_eq!(row[2], "stabilized");
        assert_eq!(row[3], "Z");
        assert_eq!(row[4], (d + 1).to_string());
    }
}

#[test]
fn not_pointed_signature_exits_2_with_line() {
    let err = run(&fixture("not_pointed.task"), &Flags::default()).unwrap_err();
    match &err {
        CliError::Validation { line, message } => {
            assert_eq!(*line, Some(3));
            assert!(message.contains("not pointed"), "{message}");
        }
        other => panic!("unexpected {other:?}"),
    }
    let (code, _, stderr) = binary(&["tests/fixtures/not_pointed.task"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("line 3"), "{stderr}");
}

#[test]
fn roundtrip_fixture_passes_on_three_modules() {
    let out = run(&fixture("roundtrip.task"), &Flags::default()).unwrap();
    assert_eq!(out.exit_code, 0);
    let rep = &out.reports[0];
    assert_eq!(rep.status, Status::Pass);
    let modules: BTreeSet<&str> = rep.rows.iter().map(|r| r[0].as_str()).collect();
    assert_eq!(modules.len(), 3);
    assert!(rep.rows.iter().all(|r| r[5] == "true"));
}

#[test]
fn every_keyword_is_exercised_without_errors() {
    let src = fixture("all_ops.task");
    let out = run(&src, &Flags::default()).unwrap();
    let used: BTreeSet<&str> = out.reports.iter().map(|r| r.op.as_str()).collect();
    for k in KEYWORDS {
        assert!(used.contains(k), "keyword {k} not covered by all_ops.task");
    }
    for r in &out.reports {
        assert!(
            !matches!(r.status, Status::Error | Status::Fail),
            "{} [{}] -> {:?}: {:?}",
            r.name,
            r.op,
            r.status,
            r.rows
        );
    }
    assert_eq!(out.exit_code, 0);
}

#[test]
fn every_kernel_operation_maps_to_a_keyword() {
    let ks: BTreeSet<&str> = KEYWORDS.iter().copied().collect();
    for (op, k) in OPERATIONS {
        assert!(ks.contains(k), "{op} maps to unknown keyword {k}");
    }
    let reached: BTreeSet<&str> = OPERATIONS.iter().map(|(_, k)| *k).collect();
    assert_eq!(reached, ks, "keywords without a kernel operation");
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let src = fixture("all_ops.task");
    let render_all = |f| {
        let out = run(&src, &Flags::default()).unwrap();
        render(&out.reports, f, out.exit_code)
    };
    assert_eq!(render_all(Format::Machine), render_all(Format::Machine));
    assert_eq!(render_all(Format::Human), render_all(Format::Human));
    let (_, a, _) = binary(&["--format", "machine", "tests/fixtures/all_ops.task"]);
    let (_, b, _) = binary(&["--format", "machine", "tests/fixtures/all_ops.task"]);
    assert_eq!(a, b);
}

#[test]
fn machine_records_contain_the_human_table() {
    let out = run(&fixture("roundtrip.task"), &Flags::default()).unwrap();
    let text = render(&out.reports, Format::Machine, out.exit_code);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    let v: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(v["op"], "roundtrip");
    assert_eq!(v["status"], "pass");
    assert_eq!(
        v["table"]["rows"].as_array().unwrap().len(),
        out.reports[0].rows.len()
    );
    let s: serde_json::Value = serde_json::from_str(lines[1]).unwrap();
    assert_eq!(s["exit"], 0);
}

#[test]
fn undetermined_is_a_failure_only_when_strict() {
    let src = r#"
[[tasks]]
op = "tower_limits"
groups = [[[]], [[]]]
maps = [[[5]]]
"#;
    let lax = run(src, &Flags::default()).unwrap();
    assert_eq!(lax.reports[0].status, Status::Undetermined);
    assert_eq!(lax.exit_code, 0);
    let strict = run(
        src,
        &Flags {
            strict_undetermined: true,
            ..Flags::default()
        },
    )
    .unwrap();
    assert_eq!(strict.exit_code, 1);
}

#[test]
fn failed_checks_and_task_errors_exit_1() {
    let fail = r#"
[rings.Zx]
variables = ["x"]
degrees = [1]

[modules.M]
ring = "Zx"
shifts = [0]

[[tasks]]
op = "completeness"
module = "M"
ideal = ["x"]
expect = "no"
window = "0..2"
"#;
    let out = run(fail, &Flags::default()).unwrap();
    assert_eq!(out.reports[0].status, Status::Fail);
    assert_eq!(out.exit_code, 1);

    let error = r#"
[rings.Zx]
variables = ["x"]
degrees = [1]

[[tasks]]
op = "telescope"
module = "Zx"
element = "1 + x"
"#;
    let out = run(error, &Flags::default()).unwrap();
    assert_eq!(out.reports[0].status, Status::Error);
    assert_eq!(out.exit_code, 1);
}

#[test]
fn syntax_errors_are_line_anchored() {
    let src = "[rings.Zx]\nvariables = [\"x\"]\ndegrees = [1\n";
    match run(src, &Flags::default()).unwrap_err() {
        CliError::Parse { line, .. } => assert!(matches!(line, Some(3) | Some(4)), "{line:?}"),
        other => panic!("unexpected {other:?}"),
    }
    let bad_poly = "[rings.Zx]\nvariables = [\"x\"]\ndegrees = [1]\nideal = [\"x +* 2\"]\n";
    match run(bad_poly, &Flags::default()).unwrap_err() {
        CliError::Parse { line, .. } => assert_eq!(line, Some(1)),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn unknown_names_and_keywords_are_validation_errors() {
    let src = "[[tasks]]\nop = \"frobnicate\"\n";
    assert!(matches!(
        run(src, &Flags::default()),
        Err(CliError::Validation { line: Some(1), .. })
    ));
    let src = "\n[[tasks]]\nop = \"pieces\"\nmodule = \"nothing\"\n";
    assert!(matches!(
        run(src, &Flags::default()),
        Err(CliError::Validation { line: Some(2), .. })
    ));
}

#[test]
fn command_line_window_overrides_the_task() {
    let flags = Flags {
        window: Some(gradwise_cli::parse_window("0..3").unwrap()),
        ..Flags::default()
    };
    let out = run(&fixture("zx_xadic.task"), &flags).unwrap();
    assert_eq!(out.reports[0].rows.len(), 4);
    let (code, stdout, _) = binary(&[
        "--window",
        "0..2",
        "--precision",
        "4",
        "tests/fixtures/zx_xadic.task",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("1 tasks"));
}
