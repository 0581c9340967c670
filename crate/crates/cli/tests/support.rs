//! Running the binary and reading its tables.
#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

pub struct Run {
    pub stdout: String,
    pub stderr: String,
    pub status: i32,
}

pub fn ainf(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_ainf")).args(args).output().expect("binary runs");
    Run {
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
        status: out.status.code().expect("exit code"),
    }
}

pub fn temp_file(name: &str, text: &str) -> PathBuf {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, text).expect("writable tmpdir");
    p
}

/// Cells of an aligned text table, cut at the column starts given by the
/// dashed rule.
pub fn parse_table(text: &str) -> Vec<Vec<String>> {
    let lines: Vec<&str> = text.lines().collect();
    let rule = lines[1];
    let mut starts = Vec::new();
    let mut prev = ' ';
    for (i, c) in rule.chars().enumerate() {
        if c == '-' && prev == ' ' {
            starts.push(i);
        }
        prev = c;
    }
    lines
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != 1)
        .map(|(_, l)| {
            let chars: Vec<char> = l.chars().collect();
            starts
                .iter()
                .enumerate()
                .map(|(k, s)| {
                    let end = starts.get(k + 1).copied().unwrap_or(chars.len()).min(chars.len());
                    let s = (*s).min(chars.len());
                    chars[s..end].iter().collect::<String>().trim().to_string()
                })
                .collect()
        })
        .collect()
}

pub fn parse_csv(text: &str) -> Vec<Vec<String>> {
    let mut r = csv::ReaderBuilder::new().has_headers(false).from_reader(text.as_bytes());
    r.records().map(|rec| rec.expect("valid csv").iter().map(str::to_string).collect()).collect()
}

/// Column `name` of a CSV report, keyed by its first column.
pub fn csv_column(text: &str, name: &str) -> Vec<(String, String)> {
    let rows = parse_csv(text);
    let col = rows[0].iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"));
    rows[1..].iter().map(|r| (r[0].clone(), r[col].clone())).collect()
}

/// Argument lists exercising every command.
pub fn every_command() -> Vec<Vec<&'static str>> {
    vec![
        vec!["verify", "--input", "s2"],
        vec!["verify", "--input", "directed3"],
        vec!["hh", "--input", "s2", "--max-len", "5"],
        vec!["hh", "--input", "lambda1", "--max-len", "5", "--convention", "cochain"],
        vec!["ch", "--input", "k", "--max-len", "8"],
        vec!["ch", "--input", "directed3", "--max-len", "6", "--field", "fp:7"],
        vec!["bracket", "--input", "s2", "--max-len", "3"],
        vec!["bracket", "--input", "lambda1", "[x]", "[x|x|x]"],
        vec!["cobracket", "--input", "cp2", "--max-len", "3"],
        vec!["cobracket", "--input", "s2", "[1|v|1|v]"],
        vec!["axioms", "--input", "lambda1", "--max-len", "3"],
        vec!["ncsymp-compare", "--input", "s2", "--max-len", "3"],
    ]
}
