//! Scalar arithmetic, comparisons and `select`. Every parameter has rank
//! zero, so each implementation sees scalar cells only.

use super::{bool_atom, Builtin};
use crate::array::{ArrayValue, Atom};
use crate::error::{bail, Result};
use crate::eval::Interpreter;

#[derive(Clone, Copy)]
enum Num {
    I(i64),
    F(f64),
}

impl Num {
    fn float(self) -> f64 {
        match self {
            Num::I(n) => n as f64,
            Num::F(x) => x,
        }
    }

    fn atom(self) -> Atom {
        match self {
            Num::I(n) => Atom::Int(n),
            Num::F(x) => Atom::Float(x),
        }
    }
}

fn num(a: &Atom, op: &str) -> Result<Num> {
    match a {
        Atom::Int(n) => Ok(Num::I(*n)),
        Atom::Float(x) => Ok(Num::F(*x)),
        other => bail!(TypeMismatchAtom, "`{op}` expects numbers, found {}", other.kind_name()),
    }
}

fn arg(args: &[ArrayValue], i: usize) -> &Atom {
    &args[i].atoms()[0]
}

fn out(n: Num) -> Result<ArrayValue> {
    Ok(ArrayValue::scalar(n.atom()))
}

fn overflow(op: &str) -> crate::error::Error {
    crate::error::Error::new(crate::error::ErrorKind::ArithmeticOverflow, format!("integer overflow in `{op}`"))
}

fn arith(
    b: &Builtin,
    args: &[ArrayValue],
    int_op: fn(i64, i64) -> Option<i64>,
    float_op: fn(f64, f64) -> f64,
) -> Result<ArrayValue> {
    match (num(arg(args, 0), b.name)?, num(arg(args, 1), b.name)?) {
        (Num::I(x), Num::I(y)) => out(Num::I(int_op(x, y).ok_or_else(|| overflow(b.name))?)),
        (x, y) => out(Num::F(float_op(x.float(), y.float()))),
    }
}

pub fn add(_: &Interpreter, b: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    arith(b, args, i64::checked_add, |x, y| x + y)
}

pub fn sub(_: &Interpreter, b: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    arith(b, args, i64::checked_sub, |x, y| x - y)
}

pub fn mul(_: &Interpreter, b: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    arith(b, args, i64::checked_mul, |x, y| x * y)
}

/// Exact integer quotients stay integers; anything else is a float.
pub fn div(_: &Interpreter, b: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    let (x, y) = (num(arg(args, 0), b.name)?, num(arg(args, 1), b.name)?);
    if y.float() == 0.0 {
        bail!(DivisionByZero, "division by zero");
    }
    match (x, y) {
        (Num::I(x), Num::I(y)) if x % y == 0 => out(Num::I(x.checked_div(y).ok_or_else(|| overflow(b.name))?)),
        (x, y) => out(Num::F(x.float() / y.float())),
    }
}

pub fn expt(_: &Interpreter, b: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    match (num(arg(args, 0), b.name)?, num(arg(args, 1), b.name)?) {
        (Num::I(x), Num::I(e)) if e >= 0 => {
            let e = u32::try_from(e).map_err(|_| overflow(b.name))?;
            out(Num::I(x.checked_pow(e).ok_or_else(|| overflow(b.name))?))
        }
        (Num::I(0), Num::I(_)) => bail!(DivisionByZero, "zero raised to a negative power"),
        (x, e) => out(Num::F(x.float().powf(e.float()))),
    }
}

pub fn square(_: &Interpreter, b: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    match num(arg(args, 0), b.name)? {
        Num::I(x) => out(Num::I(x.checked_mul(x).ok_or_else(|| overflow(b.name))?)),
        Num::F(x) => out(Num::F(x * x)),
    }
}

/// Perfect squares of integers give integers.
pub fn square_root(_: &Interpreter, b: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    let x = num(arg(args, 0), b.name)?;
    if x.float() < 0.0 {
        bail!(NegativeSqrt, "square root of a negative number");
    }
    if let Num::I(n) = x {
        let r = n.isqrt();
        if r * r == n {
            return out(Num::I(r));
        }
    }
    out(Num::F(x.float().sqrt()))
}

pub fn add1(_: &Interpreter, b: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    match num(arg(args, 0), b.name)? {
        Num::I(x) => out(Num::I(x.checked_add(1).ok_or_else(|| overflow(b.name))?)),
        Num::F(x) => out(Num::F(x + 1.0)),
    }
}

pub fn sub1(_: &Interpreter, b: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    match num(arg(args, 0), b.name)? {
        Num::I(x) => out(Num::I(x.checked_sub(1).ok_or_else(|| overflow(b.name))?)),
        Num::F(x) => out(Num::F(x - 1.0)),
    }
}

pub fn sin(_: &Interpreter, b: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    out(Num::F(num(arg(args, 0), b.name)?.float().sin()))
}

pub fn cos(_: &Interpreter, b: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    out(Num::F(num(arg(args, 0), b.name)?.float().cos()))
}

fn compare(b: &Builtin, args: &[ArrayValue]) -> Result<std::cmp::Ordering> {
    use std::cmp::Ordering;
    let (x, y) = (arg(args, 0), arg(args, 1));
    match (x, y) {
        (Atom::Char(p), Atom::Char(q)) => Ok(p.cmp(q)),
        (Atom::Bool(p), Atom::Bool(q)) if b.name == "=" => Ok(p.cmp(q)),
        _ => match (num(x, b.name)?, num(y, b.name)?) {
            (Num::I(p), Num::I(q)) => Ok(p.cmp(&q)),
            (p, q) => Ok(p.float().partial_cmp(&q.float()).unwrap_or(Ordering::Less)),
        },
    }
}

pub fn num_eq(_: &Interpreter, b: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    Ok(ArrayValue::bool(compare(b, args)?.is_eq()))
}

pub fn lt(_: &Interpreter, b: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    Ok(ArrayValue::bool(compare(b, args)?.is_lt()))
}

pub fn gt(_: &Interpreter, b: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    Ok(ArrayValue::bool(compare(b, args)?.is_gt()))
}

pub fn is_zero(_: &Interpreter, b: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    Ok(ArrayValue::bool(num(arg(args, 0), b.name)?.float() == 0.0))
}

pub fn is_negative(_: &Interpreter, b: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    Ok(ArrayValue::bool(match num(arg(args, 0), b.name)? {
        Num::I(n) => n < 0,
        Num::F(x) => x < 0.0,
    }))
}

pub fn not(_: &Interpreter, _: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    Ok(ArrayValue::bool(!bool_atom(arg(args, 0), "`not` argument")?))
}

pub fn and(_: &Interpreter, _: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    let x = bool_atom(arg(args, 0), "`and` argument")?;
    let y = bool_atom(arg(args, 1), "`and` argument")?;
    Ok(ArrayValue::bool(x && y))
}

pub fn or(_: &Interpreter, _: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    let x = bool_atom(arg(args, 0), "`or` argument")?;
    let y = bool_atom(arg(args, 1), "`or` argument")?;
    Ok(ArrayValue::bool(x || y))
}

pub fn char_eq(_: &Interpreter, _: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    match (arg(args, 0), arg(args, 1)) {
        (Atom::Char(x), Atom::Char(y)) => Ok(ArrayValue::bool(x == y)),
        (x, y) => bail!(TypeMismatchAtom, "`char=?` expects characters, found {} and {}", x.kind_name(), y.kind_name()),
    }
}

pub fn select(_: &Interpreter, _: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    if bool_atom(arg(args, 0), "`select` condition")? {
        Ok(args[1].clone())
    } else {
        Ok(args[2].clone())
    }
}
