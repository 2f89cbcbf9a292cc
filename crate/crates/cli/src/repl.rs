use std::io::{BufRead, Write};

use remora::error::ErrorKind;
use remora::reader::{tokenize, TokenKind};
use remora::session::{Options, Session};

/// True when `src` is an unfinished form: an open string or more
/// openers than closers.
fn incomplete(src: &str) -> bool {
    match tokenize(src) {
        Err(e) => e.kind == ErrorKind::UnterminatedString,
        Ok(tokens) => {
            let depth: i64 = tokens
                .iter()
                .map(|t| match t.kind {
                    TokenKind::LParen | TokenKind::LBracket => 1,
                    TokenKind::RParen | TokenKind::RBracket => -1,
                    _ => 0,
                })
                .sum();
            depth > 0
        }
    }
}

fn show(out: &mut dyn Write, text: &str) {
    let _ = writeln!(out, "⇒ {}", text.replace('\n', "\n  "));
}

/// Read-eval-print until end of input. Errors are reported and the loop
/// carries on with the session intact.
pub fn repl(options: Options, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut session = match Session::new(options) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            return 1;
        }
    };
    let mut buffer = String::new();
    loop {
        let _ = write!(out, "{}", if buffer.is_empty() { "remora> " } else { "   ...> " });
        let _ = out.flush();
        let mut line = String::new();
        match input.read_line(&mut line) {
            Ok(0) | Err(_) => break,
            Ok(_) => {}
        }
        if buffer.is_empty() && line.trim().is_empty() {
            continue;
        }
        buffer.push_str(&line);
        if incomplete(&buffer) {
            continue;
        }
        let src = std::mem::take(&mut buffer);
        let result = session.run(&src, |o| {
            if let Some(text) = o.display() {
                show(out, &text);
            }
        });
        if let Err(e) = result {
            let _ = writeln!(err, "{e}");
        }
    }
    let _ = writeln!(out);
    0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn session(input: &str) -> (String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        repl(Options::default(), &mut input.as_bytes(), &mut out, &mut err);
        (String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn definitions_persist_across_prompts() {
        let (out, err) = session("(define v (array [3] 8 1 7))\n\nv\n(vmag [1 2 2])\n");
        assert!(err.is_empty(), "{err}");
        assert!(out.contains("⇒ [8 1 7]"));
        assert!(out.contains("⇒ 3"));
    }

    #[test]
    fn multi_line_forms_and_errors() {
        let (out, err) = session("(+ [1 2]\n   [10 20])\n(+ [1 2 3] [1 2])\n(iota [2 2])\n");
        assert!(out.contains("⇒ [11 22]"));
        assert!(err.contains("error[FrameDisagreement]"));
        assert!(out.contains("⇒ [[0 1]\n   [2 3]]"));
    }

    #[test]
    fn incompleteness() {
        assert!(incomplete("(+ 1"));
        assert!(incomplete("\"abc"));
        assert!(!incomplete("(+ 1 2)"));
        assert!(!incomplete("(+ 1 2))"));
    }
}
