use std::io::Write;
use std::process::{Command, Output, Stdio};

const CIRCLE: &str = "\
0 dim 0 vertices 0 corners (1,1)
1 dim 0 vertices 1 corners (2,2)
2 dim 0 vertices 2 corners (3,3)
3 dim 1 vertices 0 1 corners (4,4)
4 dim 1 vertices 1 2 corners (5,5)
5 dim 1 vertices 0 2 corners (6,6)
";

const DEGENERATE: &str = "\
# two vertices sharing a coordinate, an edge with two corners
0 dim 0 vertices 0 corners (0,0)
1 dim 0 vertices 1 corners (1,0) (0,1)
2 dim 0 vertices 2 corners (1,1)
3 dim 1 vertices 0 1 corners (1,1)
4 dim 1 vertices 0 2 corners (2,1)
5 dim 1 vertices 1 2 corners (1,2.5)
6 dim 2 vertices 0 1 2 corners (3,3)
";

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_bigraded-pd"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn empty_input_gives_empty_output() {
    let o = run(&["compute", "-"], "");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "");
}

#[test]
fn diagonal_circle_reproduces_its_barcode() {
    let o = run(&["compute", "-"], CIRCLE);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "d 0 1 1 1 6 6\nd 0 1 2 2 4 4\nd 0 1 3 3 5 5\nd 1 1 6 6 6 6\n");
}

#[test]
fn degenerate_input_matches_the_oracle() {
    let sweep = run(&["compute", "-"], DEGENERATE);
    let oracle = run(&["oracle", "-"], DEGENERATE);
    assert_eq!(sweep.status.code(), Some(0));
    assert!(!stdout(&sweep).is_empty());
    assert_eq!(stdout(&sweep), stdout(&oracle));
    assert!(stdout(&sweep).contains("2.5"), "original labels are kept");
}

#[test]
fn strict_mode_refuses_degenerate_input() {
    let o = run(&["compute", "--strict", "-"], DEGENERATE);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("degenerate"));
}

#[test]
fn diff_agrees_and_reports_injected_faults() {
    let ok = run(&["diff", "-"], DEGENERATE);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).starts_with("identical"));
    let bad = run(&["diff", "--corrupt", "-"], DEGENERATE);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("first difference: dim 0 [(0, 0), (3, 3)] sweep 2 oracle 1"), "{}", stdout(&bad));
}

#[test]
fn oracle_refuses_grids_over_the_cap() {
    let o = run(&["diff", "--cap", "3", "-"], CIRCLE);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("cap of 3"));
}

#[test]
fn parse_errors_carry_line_numbers() {
    let o = run(&["compute", "-"], "# header\n0 dim 0 vertices 0 corners (1,1)\n1 dim 0 vertices 1\n");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn validation_errors_name_the_simplex() {
    let o = run(&["validate", "-"], "0 dim 0 vertices 0 corners (2,2)\n1 dim 0 vertices 1 corners (1,1)\n9 dim 1 vertices 0 1 corners (1,1)\n");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("simplex 9"), "{}", stderr(&o));
}

#[test]
fn jsonl_mirrors_text() {
    let text = stdout(&run(&["compute", "-"], DEGENERATE));
    let json = stdout(&run(&["compute", "--format", "jsonl", "-"], DEGENERATE));
    let from_json: Vec<String> = json
        .lines()
        .map(|l| {
            let v: serde_json::Value = serde_json::from_str(l).unwrap();
            let s = |k: &str| v[k].as_str().unwrap().to_string();
            format!("d {} {} {} {} {} {}", v["dim"], v["mult"], s("a1"), s("a2"), s("b1"), s("b2"))
        })
        .collect();
    assert_eq!(from_json.join("\n") + "\n", text);
}

#[test]
fn dimension_filter() {
    let o = run(&["compute", "--dim", "1", "-"], CIRCLE);
    assert_eq!(stdout(&o), "d 1 1 6 6 6 6\n");
    let bad = run(&["compute", "--dim", "4", "-"], CIRCLE);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn other_fields_are_accepted() {
    let o = run(&["compute", "--field", "5", "-"], CIRCLE);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 4);
    let bad = run(&["compute", "--field", "6", "-"], CIRCLE);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn outputs_are_deterministic() {
    let a = run(&["compute", "-"], DEGENERATE);
    let b = run(&["compute", "-"], DEGENERATE);
    assert_eq!(a.stdout, b.stdout);
    let args = ["bench", "--m", "15", "--n", "15", "--n", "25", "--seed", "9", "--no-time"];
    let c = run(&args, "");
    let d = run(&args, "");
    assert_eq!(c.status.code(), Some(0));
    assert_eq!(c.stdout, d.stdout);
    assert_eq!(stdout(&c).lines().count(), 3);
}

#[test]
fn nested_bench_support_equals_the_pairing() {
    let o = run(&["bench", "--generator", "nested", "--m", "20", "--n", "30", "--no-time"], "");
    let row = stdout(&o).lines().nth(1).unwrap().to_string();
    let cols: Vec<&str> = row.split(',').collect();
    assert_eq!(cols[2], cols[3], "{row}");
}

#[test]
fn plot_of_empty_diagram_is_valid_svg() {
    let o = run(&["plot", "-"], "");
    let svg = stdout(&o);
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    assert!(!svg.contains("class=\"pos\"") && !svg.contains("class=\"neg\""));
}

#[test]
fn plot_draws_one_primitive_per_interval() {
    let one = "0 dim 0 vertices 0 corners (1,1)\n";
    let svg = stdout(&run(&["plot", "-"], one));
    assert_eq!(svg.matches("class=\"pos\"").count(), 1);
    assert_eq!(svg.matches("class=\"neg\"").count(), 0);
    let circle = stdout(&run(&["plot", "--dim", "0", "--curves", "-"], CIRCLE));
    assert_eq!(circle.matches("class=\"pos\"").count(), 3);
    assert_eq!(circle.matches("class=\"curve\"").count(), 3);
    assert!(!circle.contains("href"), "standalone output");
}
