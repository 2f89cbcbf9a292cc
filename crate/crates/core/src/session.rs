//! A persistent interpreter session: the read, desugar, check and
//! evaluate pipeline, with definitions surviving from one input to the
//! next.

use crate::array::ArrayValue;
use crate::builtins::BUILTINS;
use crate::desugar::desugar;
use crate::error::Result;
use crate::eval::{Dialect, Env, Interpreter};
use crate::format::format_value;
use crate::reader::{read, SurfaceForm};
use crate::syntax::{Expr, ExprKind};
use crate::types::{Checker, Type};
use crate::{Atom, Function};
use std::sync::Arc;

pub const PRELUDE: &str = include_str!("prelude.rem");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Run,
    /// Type-check only; report each form's type instead of its value.
    Check,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub dialect: Dialect,
    pub mode: Mode,
    pub parallel_cells: bool,
    pub prelude: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { dialect: Dialect::Dynamic, mode: Mode::Run, parallel_cells: false, prelude: true }
    }
}

#[derive(Debug, Clone)]
pub enum Outcome {
    Value(ArrayValue),
    Type(Type),
    Defined(String),
}

impl Outcome {
    /// What a driver shows for this form; definitions show nothing.
    pub fn display(&self) -> Option<String> {
        match self {
            Outcome::Value(v) => Some(format_value(v)),
            Outcome::Type(t) => Some(t.to_string()),
            Outcome::Defined(_) => None,
        }
    }
}

pub struct Session {
    options: Options,
    interp: Interpreter,
    env: Env,
    checker: Checker,
}

impl Session {
    pub fn new(options: Options) -> Result<Session> {
        let env = Env::new();
        for b in BUILTINS {
            env.define(b.name, ArrayValue::scalar(Atom::Func(Arc::new(Function::Builtin(b)))));
        }
        let mut session = Session {
            options,
            interp: Interpreter::new(options.dialect, options.parallel_cells),
            env,
            checker: Checker::new(),
        };
        // The library is untyped code, so typed sessions start without it.
        if options.prelude && options.dialect == Dialect::Dynamic {
            session.run(PRELUDE, |_| {})?;
        }
        Ok(session)
    }

    pub fn options(&self) -> Options {
        self.options
    }

    pub fn interpreter(&self) -> &Interpreter {
        &self.interp
    }

    /// Value of the last expression form in `src`, if any.
    pub fn value(&mut self, src: &str) -> Result<Option<ArrayValue>> {
        let mut last = None;
        self.run(src, |o| {
            if let Outcome::Value(v) = o {
                last = Some(v);
            }
        })?;
        Ok(last)
    }

    /// Process one surface form.
    pub fn form(&mut self, form: &SurfaceForm) -> Result<Outcome> {
        let expr = desugar(form)?;
        let defined = match &expr.kind {
            ExprKind::Define { name, .. } => Some(name.clone()),
            _ => None,
        };
        let runnable: Expr = match self.options.dialect {
            Dialect::Dynamic => expr,
            Dialect::Typed => {
                let (ty, erased) = self.checker.check_top(&expr)?;
                if self.options.mode == Mode::Check {
                    return Ok(match defined {
                        Some(name) => Outcome::Defined(name),
                        None => Outcome::Type(ty),
                    });
                }
                erased
            }
        };
        let value = self.interp.eval(&runnable, &self.env)?;
        Ok(match defined {
            Some(name) => Outcome::Defined(name),
            None => Outcome::Value(value),
        })
    }

    /// Run every form of `src` in order, handing each outcome to `sink`.
    /// Stops at the first error; outcomes before it have been delivered.
    pub fn run(&mut self, src: &str, mut sink: impl FnMut(Outcome)) -> Result<()> {
        for form in read(src)? {
            sink(self.form(&form)?);
        }
        Ok(())
    }

    /// Run `src` and collect the displayed outcomes.
    pub fn run_to_strings(&mut self, src: &str) -> Result<Vec<String>> {
        let mut out = Vec::new();
        self.run(src, |o| out.extend(o.display()))?;
        Ok(out)
    }
}

const BIG_STACK: usize = 256 << 20;

/// Run `f` on a thread with a large stack, for deeply recursive programs.
pub fn with_large_stack<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    std::thread::scope(|s| {
        std::thread::Builder::new()
            .stack_size(BIG_STACK)
            .spawn_scoped(s, f)
            .expect("failed to spawn evaluation thread")
            .join()
            .unwrap_or_else(|p| std::panic::resume_unwind(p))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::ErrorKind;

    fn dynamic(src: &str) -> Vec<String> {
        Session::new(Options::default()).unwrap().run_to_strings(src).unwrap()
    }

    fn typed(src: &str, mode: Mode) -> Result<Vec<String>> {
        let opts = Options { dialect: Dialect::Typed, mode, ..Options::default() };
        Session::new(opts)?.run_to_strings(src)
    }

    #[test]
    fn prelude_functions_work() {
        assert_eq!(dynamic("(vmag [[3 4] [6 8]])"), ["[5 10]"]);
        assert_eq!(dynamic("(fact [0 3 5 10])"), ["[1 6 120 3628800]"]);
        assert_eq!(dynamic("(vector-convolve [1 2 3 4 5] [1 10 100])"), ["[321 432 543 154 215]"]);
        assert_eq!(dynamic("(collapse-spaces \"a  b   c\")"), ["[#\\a #\\space #\\b #\\space #\\c]"]);
    }

    #[test]
    fn definitions_persist() {
        let mut s = Session::new(Options::default()).unwrap();
        assert!(s.run_to_strings("(define v [8 1 7])").unwrap().is_empty());
        assert_eq!(s.run_to_strings("(+ v 1)").unwrap(), ["[9 2 8]"]);
    }

    #[test]
    fn typed_sessions_check_then_run() {
        let src = "(define (double [i int]) (+ i i)) (double [3 2]) double";
        assert_eq!(typed(src, Mode::Check).unwrap(), ["[int 2]", "(-> (int) int)"]);
        assert_eq!(typed("(define (double [i int]) (+ i i)) (double [3 2])", Mode::Run).unwrap(), ["[6 4]"]);
        assert_eq!(typed("(+ [1 2 3] [[1 2] [3 4]])", Mode::Run).unwrap_err().kind, ErrorKind::FrameDisagreement);
    }

    #[test]
    fn deep_recursion_runs_on_a_big_stack() {
        let out = with_large_stack(|| {
            dynamic("(define (count [n 0]) (if (zero? n) 0 (add1 (count (sub1 n))))) (count 10000)")
        });
        assert_eq!(out, ["10000"]);
    }
}
