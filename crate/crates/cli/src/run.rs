use std::io::Write;
use std::path::Path;

use remora::session::{Options, Session};
use remora::Error;

/// Diagnostic text for an error, prefixed with the file it came from.
pub fn diagnostic(path: Option<&Path>, err: &Error) -> String {
    match path {
        Some(p) => format!("{}: {err}", p.display()),
        None => err.to_string(),
    }
}

/// Run files in order in one session, writing values to `out` and
/// diagnostics to `err`. Returns the process exit status.
pub fn run_files(paths: &[impl AsRef<Path>], options: Options, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut session = match Session::new(options) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "{}", diagnostic(None, &e));
            return 1;
        }
    };
    for path in paths {
        let path = path.as_ref();
        let src = match std::fs::read_to_string(path) {
            Ok(s) => s,
            Err(e) => {
                let _ = writeln!(err, "{}: error[Io]: {e}", path.display());
                return 1;
            }
        };
        let result = session.run(&src, |o| {
            if let Some(text) = o.display() {
                let _ = writeln!(out, "{text}");
            }
        });
        if let Err(e) = result {
            let _ = out.flush();
            let _ = writeln!(err, "{}", diagnostic(Some(path), &e));
            return 1;
        }
    }
    0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prints_values_and_stops_at_errors() {
        let dir = std::env::temp_dir().join(format!("remora-run-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let file = dir.join("t.rem");
        std::fs::write(&file, "(+ 3 4)\n(define x 1)\n[[1 2] [3]]\n(+ 1 1)\n").unwrap();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_files(&[&file], Options::default(), &mut out, &mut err);
        assert_eq!(code, 1);
        assert_eq!(String::from_utf8(out).unwrap(), "7\n");
        let err = String::from_utf8(err).unwrap();
        assert!(err.contains("error[RaggedLiteral] at 3:"), "{err}");
        std::fs::remove_dir_all(dir).unwrap();
    }
}
