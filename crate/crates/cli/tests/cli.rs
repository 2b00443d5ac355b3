use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_noisy-teleport"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

struct Row {
    p: f64,
    label: String,
    fields: Vec<f64>,
}

fn rows(csv: &str) -> Vec<Row> {
    csv.lines()
        .skip(1)
        .map(|line| {
            let mut cells = line.split(',');
            let p = cells.next().unwrap().parse().unwrap();
            let label = cells.next().unwrap().to_string();
            Row {
                p,
                label,
                fields: cells.map(|c| c.parse().unwrap()).collect(),
            }
        })
        .collect()
}

#[test]
fn default_sweep_layout_and_determinism() {
    let csv = stdout(&["sweep", "--noise", "bitflip"]);
    assert!(csv.starts_with("p,state_label,f_numeric,f_analytic,f_linear,abs_diff\n"));
    assert_eq!(csv.lines().count(), 1 + 3 * 101);
    assert!(!csv.contains('\r'));
    assert_eq!(csv, stdout(&["sweep", "--noise", "bitflip"]));
    for row in rows(&csv).iter().filter(|r| r.p == 0.0) {
        for f in &row.fields[..3] {
            assert!((f - 1.0).abs() <= 1e-14, "{}: {f}", row.label);
        }
    }
}

#[test]
fn depolarizing_equal_superposition_ends_at_one_half() {
    let csv = stdout(&["sweep", "--noise", "depolarizing", "--columns", "numeric"]);
    let last = rows(&csv)
        .into_iter()
        .find(|r| r.p == 1.0 && r.label.starts_with("0.7071067811865476:"))
        .unwrap();
    assert!((last.fields[0] - 0.5).abs() <= 1e-12);
}

#[test]
fn phase_flip_leaves_ground_state_alone() {
    let csv = stdout(&[
        "sweep",
        "--noise",
        "phaseflip",
        "--alpha",
        "1",
        "--beta",
        "0",
        "--steps",
        "21",
    ]);
    for row in rows(&csv) {
        assert!((row.fields[0] - 1.0).abs() <= 1e-12);
    }
}

#[test]
fn explicit_states_and_normalization() {
    let csv = stdout(&[
        "sweep",
        "--states",
        "1:0,0.6:-0.8i",
        "--steps",
        "2",
        "--columns",
        "linear",
    ]);
    assert_eq!(csv.lines().next().unwrap(), "p,state_label,f_linear");
    assert!(csv.contains(",0.6:-0.8i,"));
    let csv = stdout(&[
        "sweep",
        "--alpha",
        "1",
        "--beta",
        "1",
        "--normalize",
        "--steps",
        "2",
    ]);
    assert_eq!(csv.lines().count(), 3);
}

#[test]
fn bad_inputs_name_the_problem() {
    let out = run(&["sweep", "--states", "1:0,0.6:0.8q"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("`0.8q`"), "{}", stderr(&out));

    let out = run(&["sweep", "--alpha", "1", "--beta", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not normalized"));

    let out = run(&["sweep", "--p-start", "0.8", "--p-end", "0.2"]);
    assert_eq!(out.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("out.csv");
    let out = run(&["sweep", "--steps", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains(path.to_str().unwrap()));
}

fn stage_blocks(text: &str) -> Vec<(String, String)> {
    let mut blocks = Vec::new();
    for line in text.lines() {
        if let Some(label) = line
            .split_whitespace()
            .next()
            .filter(|w| w.starts_with("rho"))
        {
            blocks.push((label.to_string(), String::new()));
        } else if let Some((_, body)) = blocks.last_mut() {
            body.push_str(line);
            body.push('\n');
        }
    }
    blocks
}

#[test]
fn trace_prints_all_stages() {
    let text = stdout(&[
        "trace", "--noise", "bitflip", "--alpha", "0.6", "--beta", "0.8i", "--p", "0",
    ]);
    let blocks = stage_blocks(&text);
    assert_eq!(blocks.len(), 10);
    assert_eq!(blocks[8].1, blocks[7].1);
    assert!(blocks
        .iter()
        .all(|(_, b)| b.contains("trace +1.00000000000e0") && b.contains("min eigenvalue")));

    let text = stdout(&[
        "trace",
        "--noise",
        "depolarizing",
        "--alpha",
        "0.6",
        "--beta",
        "0.8",
        "--p",
        "1",
    ]);
    let last = &stage_blocks(&text)[9].1;
    assert!(last.starts_with(
        "  +5.00000000000e-1+0.00000000000e0i  +0.00000000000e0+0.00000000000e0i\n  +0.00000000000e0+0.00000000000e0i  +5.00000000000e-1+0.00000000000e0i\n"
    ));

    let text = stdout(&[
        "trace",
        "--noise",
        "phaseflip",
        "--alpha",
        "0.6",
        "--beta",
        "0.8",
        "--p",
        "0.25",
    ]);
    let last = &stage_blocks(&text)[9].1;
    let cells: Vec<&str> = last.split_whitespace().collect();
    assert!(
        cells[0].starts_with("+3.60000000000e-1") && cells[3].starts_with("+6.40000000000e-1"),
        "{last}"
    );
}

#[test]
fn verify_writes_both_formats_and_flags_mismatches() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("report");
    let out = run(&["verify", "--out", prefix.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "{}", stderr(&out));
    let text = fs::read_to_string(prefix.with_extension("txt")).unwrap();
    let tsv = fs::read_to_string(prefix.with_extension("tsv")).unwrap();
    assert!(tsv
        .lines()
        .any(|l| l.starts_with("bitflip.u3\tNotIdentifiable\t")));
    assert!(tsv.lines().any(|l| l.starts_with("phaseflip.u6\tMatch\t")));
    assert!(tsv.lines().skip(1).all(|l| l.split('\t').count() == 4));
    assert!(text.contains("[Match] phaseflip.u6\n"));
    assert_eq!(text, stdout_ignoring_status(&["verify"]));
}

fn stdout_ignoring_status(args: &[&str]) -> String {
    String::from_utf8(run(args).stdout).unwrap()
}

#[test]
fn perturbed_table_is_pinpointed() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("table.txt");
    fs::write(
        &table,
        "u6: 1, -16, 112, -447, 1120, -1792, 1792, -1024, 256\n",
    )
    .unwrap();
    let out = run(&["verify", "--table", table.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    let block = text
        .split("\n\n")
        .find(|b| b.starts_with("[Mismatch] phaseflip.u6\n"))
        .unwrap();
    assert!(
        block.contains("p^3: expected -447, derived -448"),
        "{block}"
    );
    assert_eq!(block.matches("\n  p^").count(), 1);

    fs::write(&table, "u9: 1\n").unwrap();
    let out = run(&["verify", "--table", table.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 1"));
}

#[test]
fn curves_are_deterministic_svg() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curves.svg");
    let p = path.to_str().unwrap();
    stdout(&[
        "curves",
        "--noise",
        "depolarizing",
        "--steps",
        "51",
        "--out",
        p,
    ]);
    let svg = fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches("<polyline").count(), 3);
    assert!(svg.contains("noise probability p") && svg.contains("fidelity F"));
    stdout(&[
        "curves",
        "--noise",
        "depolarizing",
        "--steps",
        "51",
        "--out",
        p,
    ]);
    assert_eq!(svg, fs::read_to_string(&path).unwrap());
}
