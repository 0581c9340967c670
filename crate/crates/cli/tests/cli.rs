mod support;

use support::{ainf, csv_column, every_command, parse_csv, parse_table, temp_file};

const SPHERE: &str = "\
ainf-category 1
field q
max-arity 2
object X
hom X X 1 0
hom X X v 2
op m 1 1 -> 1 1
op m 1 v -> v 1
op m v 1 -> v 1
pairing 2
pair 1 v 1
pair v 1 1
end
";

#[test]
fn every_command_succeeds_on_good_input() {
    for args in every_command() {
        let r = ainf(&args);
        assert_eq!(r.status, 0, "{args:?}: {}", r.stderr);
        assert!(!r.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn output_is_deterministic() {
    for args in every_command() {
        for format in ["table", "csv"] {
            let mut a = args.clone();
            a.extend(["--format", format]);
            assert_eq!(ainf(&a).stdout, ainf(&a).stdout, "{a:?}");
        }
    }
}

#[test]
fn csv_and_table_carry_the_same_cells() {
    for args in every_command() {
        let table = ainf(&args).stdout;
        let mut a = args.clone();
        a.extend(["--format", "csv"]);
        let csv = ainf(&a).stdout;
        assert_eq!(parse_table(&table), parse_csv(&csv), "{args:?}");
    }
}

#[test]
fn parse_errors_exit_2() {
    let r = ainf(&["verify", "--input", "no-such-thing"]);
    assert_eq!(r.status, 2);
    assert!(r.stderr.contains("no-such-thing"));
    let truncated = temp_file("truncated.cat", &SPHERE.replace("end\n", ""));
    let r = ainf(&["verify", "--input", truncated.to_str().unwrap()]);
    assert_eq!(r.status, 2, "{}", r.stderr);
    let bad = temp_file("bad-line.cat", &SPHERE.replace("hom X X v 2", "hom X X v two"));
    let r = ainf(&["hh", "--input", bad.to_str().unwrap()]);
    assert_eq!(r.status, 2);
    assert!(r.stderr.contains("line 6"), "{}", r.stderr);
    assert_eq!(ainf(&["ch", "--input", "k", "--field", "fp:4"]).status, 2);
    assert_eq!(ainf(&["bracket", "--input", "s2", "[1|q]", "[v]"]).status, 2);
}

#[test]
fn invariant_violations_exit_3() {
    let r = ainf(&["verify", "--input", "s2-perturbed"]);
    assert_eq!(r.status, 3);
    let failing = csv_column(&ainf(&["verify", "--input", "s2-perturbed", "--format", "csv"]).stdout, "failures");
    assert!(failing.iter().any(|(check, n)| check.starts_with("ainfty") && n != "0"));
    let degree = temp_file("degree.cat", &SPHERE.replace("op m v 1 -> v 1", "op m v v -> v 1"));
    assert_eq!(ainf(&["verify", "--input", degree.to_str().unwrap()]).status, 3);
}

#[test]
fn axiom_failures_exit_4() {
    let lopsided = temp_file("lopsided.cat", &SPHERE.replace("pair v 1 1", "pair v 1 2"));
    let path = lopsided.to_str().unwrap();
    assert_eq!(ainf(&["axioms", "--input", path, "--max-len", "3"]).status, 4);
    assert_eq!(ainf(&["ncsymp-compare", "--input", path, "--max-len", "3"]).status, 4);
    assert_eq!(ainf(&["verify", "--input", path]).status, 3);
}

#[test]
fn unreliable_window_exits_5() {
    let r = ainf(&["hh", "--input", "k", "--max-len", "4", "--degree-min", "0", "--degree-max", "10"]);
    assert_eq!(r.status, 5);
    // Inside the reliable range the same request is fine.
    let r = ainf(&["hh", "--input", "k", "--max-len", "4", "--degree-min", "0", "--degree-max", "1"]);
    assert_eq!(r.status, 0, "{}", r.stdout);
}

#[test]
fn document_and_fixture_agree() {
    let path = temp_file("sphere.cat", SPHERE);
    for cmd in ["verify", "hh", "ch", "bracket", "cobracket", "axioms", "ncsymp-compare"] {
        let a = ainf(&[cmd, "--input", path.to_str().unwrap(), "--max-len", "3"]);
        let b = ainf(&[cmd, "--input", "s2", "--max-len", "3"]);
        assert_eq!(a.status, b.status, "{cmd}");
        assert_eq!(a.stdout, b.stdout, "{cmd}");
    }
}

#[test]
fn cyclic_homology_of_k() {
    let rows = parse_csv(&ainf(&["ch", "--input", "k", "--max-len", "8", "--format", "csv"]).stdout);
    assert_eq!(rows[0], ["degree", "dimension", "reliable", "chains"]);
    let reliable: Vec<(i64, usize)> = rows[1..]
        .iter()
        .filter(|r| r[2] == "yes")
        .map(|r| (r[0].parse().unwrap(), r[1].parse().unwrap()))
        .collect();
    assert_eq!(reliable, (0..7).map(|d| (d, usize::from(d % 2 == 0))).collect::<Vec<_>>());
}

#[test]
fn conventions_mirror_degrees() {
    let chain = csv_column(&ainf(&["ch", "--input", "k", "--max-len", "5", "--format", "csv"]).stdout, "dimension");
    let cochain = csv_column(
        &ainf(&["ch", "--input", "k", "--max-len", "5", "--convention", "cochain", "--format", "csv"]).stdout,
        "dimension",
    );
    let mut flipped: Vec<(String, String)> =
        chain.iter().map(|(d, n)| ((-d.parse::<i64>().unwrap()).to_string(), n.clone())).collect();
    flipped.sort_by_key(|(d, _)| d.parse::<i64>().unwrap());
    assert_eq!(flipped, cochain);
}

#[test]
fn bracket_of_explicit_classes() {
    let r = ainf(&["bracket", "--input", "s2", "[v]", "[1|1|1]", "--format", "csv"]);
    assert_eq!(r.status, 0, "{}", r.stderr);
    let rows = parse_csv(&r.stdout);
    assert_eq!(rows[0], ["lhs", "lhs_degree", "rhs", "rhs_degree", "bracket"]);
    assert_eq!(rows.len(), 2);
    assert_eq!((rows[1][0].as_str(), rows[1][2].as_str()), ("[v]", "[1|1|1]"));
}
