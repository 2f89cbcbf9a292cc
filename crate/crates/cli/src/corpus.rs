//! Golden corpus: each `case.rem` sits beside `case.expected`, which holds
//! every printed value followed by a newline and, when the program is meant
//! to fail, a final `ERROR <Code>` line.
//!
//! Header comments select the session:
//! `;; dialect: typed`, `;; mode: check`, `;; prelude: off`.

use std::io::Write;
use std::path::{Path, PathBuf};

use remora::eval::Dialect;
use remora::session::{Mode, Options, Session};
use remora::{Error, ErrorKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseResult {
    pub name: String,
    pub expected: Option<String>,
    pub actual: String,
}

impl CaseResult {
    pub fn passed(&self) -> bool {
        self.expected.as_deref() == Some(self.actual.as_str())
    }
}

#[derive(Debug, Default)]
pub struct Report {
    pub cases: Vec<CaseResult>,
}

impl Report {
    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| !c.passed())
    }

    pub fn all_passed(&self) -> bool {
        self.failures().next().is_none()
    }
}

/// Session options named by the header directives of `src`.
pub fn options_for(src: &str, parallel_cells: bool) -> Options {
    let mut options = Options { parallel_cells, ..Options::default() };
    for line in src.lines() {
        let Some(rest) = line.trim().strip_prefix(";;") else { break };
        let Some((key, value)) = rest.split_once(':') else { continue };
        match (key.trim(), value.trim()) {
            ("dialect", "typed") => options.dialect = Dialect::Typed,
            ("dialect", "dynamic") => options.dialect = Dialect::Dynamic,
            ("mode", "check") => options.mode = Mode::Check,
            ("mode", "run") => options.mode = Mode::Run,
            ("prelude", "off") => options.prelude = false,
            _ => {}
        }
    }
    options
}

/// Everything a case prints, in `.expected` format.
pub fn actual_output(src: &str, parallel_cells: bool) -> String {
    let mut text = String::new();
    let result = Session::new(options_for(src, parallel_cells)).and_then(|mut s| {
        s.run(src, |o| {
            if let Some(shown) = o.display() {
                text.push_str(&shown);
                text.push('\n');
            }
        })
    });
    if let Err(e) = result {
        text.push_str(&format!("ERROR {}\n", e.kind.code()));
    }
    text
}

pub fn case_files(dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "rem"))
        .collect();
    files.sort();
    Ok(files)
}

pub fn run_case(path: &Path, parallel_cells: bool) -> std::io::Result<CaseResult> {
    let src = std::fs::read_to_string(path)?;
    let expected = std::fs::read_to_string(path.with_extension("expected")).ok();
    let actual = actual_output(&src, parallel_cells);
    let name = path.file_stem().unwrap_or_default().to_string_lossy().into_owned();
    Ok(CaseResult { name, expected, actual })
}

pub fn run_dir(dir: &Path, parallel_cells: bool) -> std::io::Result<Report> {
    let cases = case_files(dir)?.iter().map(|p| run_case(p, parallel_cells)).collect::<std::io::Result<_>>()?;
    Ok(Report { cases })
}

/// Driver for `remora corpus`; prints one line per case.
pub fn main(dir: &Path, parallel_cells: bool, out: &mut dyn Write) -> i32 {
    let report = match run_dir(dir, parallel_cells) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(out, "error[Io]: {}: {e}", dir.display());
            return 1;
        }
    };
    for case in &report.cases {
        match &case.expected {
            None => {
                let err = Error::new(ErrorKind::MissingExpectation, format!("no .expected file for `{}`", case.name));
                let _ = writeln!(out, "FAIL {}: {err}", case.name);
            }
            Some(exp) if *exp != case.actual => {
                let _ = writeln!(out, "FAIL {}\n--- expected\n{exp}--- actual\n{}", case.name, case.actual);
            }
            Some(_) => {
                let _ = writeln!(out, "ok   {}", case.name);
            }
        }
    }
    let failed = report.failures().count();
    let _ = writeln!(out, "{} passed, {failed} failed", report.cases.len() - failed);
    i32::from(failed > 0)
}
