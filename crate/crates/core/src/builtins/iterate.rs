//! Reductions, scans, folds and traces over the leading axis.
//!
//! `reduce` and the associative scans combine items with a fixed balanced
//! tree, so the association order (and therefore any floating-point
//! rounding) depends only on the item count, never on scheduling.

use super::Builtin;
use crate::array::{collect_frame, ArrayValue};
use crate::error::{bail, Result};
use crate::eval::Interpreter;

fn items_of(b: &Builtin, a: &ArrayValue) -> Result<Vec<ArrayValue>> {
    if a.rank() == 0 {
        bail!(RankZeroData, "`{}` needs an array of rank at least 1", b.name);
    }
    Ok(a.items())
}

fn tree(interp: &Interpreter, op: &ArrayValue, items: &[ArrayValue]) -> Result<ArrayValue> {
    if items.len() == 1 {
        return Ok(items[0].clone());
    }
    let (l, r) = items.split_at(items.len() / 2);
    let (x, y) = if interp.parallel() && items.len() > 2 {
        rayon::join(|| tree(interp, op, l), || tree(interp, op, r))
    } else {
        (tree(interp, op, l), tree(interp, op, r))
    };
    interp.call(op, vec![x?, y?])
}

fn stack(results: Vec<ArrayValue>, empty_shape: &[usize]) -> Result<ArrayValue> {
    collect_frame(&[results.len()], results, Some(empty_shape))
}

pub fn reduce(interp: &Interpreter, b: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    let items = items_of(b, &args[1])?;
    if items.is_empty() {
        bail!(EmptyReduce, "cannot reduce an empty array without a zero");
    }
    interp.install(|| tree(interp, &args[0], &items))
}

pub fn reduce_zero(interp: &Interpreter, b: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    let items = items_of(b, &args[2])?;
    if items.is_empty() {
        return Ok(args[1].clone());
    }
    let t = interp.install(|| tree(interp, &args[0], &items))?;
    interp.call(&args[0], vec![args[1].clone(), t])
}

pub fn iscan(interp: &Interpreter, b: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    let items = items_of(b, &args[1])?;
    if items.is_empty() {
        bail!(EmptyReduce, "cannot scan an empty array without a zero");
    }
    let mut out = Vec::with_capacity(items.len());
    let mut acc = items[0].clone();
    for item in &items[1..] {
        let next = interp.call(&args[0], vec![acc.clone(), item.clone()])?;
        out.push(std::mem::replace(&mut acc, next));
    }
    out.push(acc);
    stack(out, &[])
}

/// `z` followed by each running combination.
fn scan_from(interp: &Interpreter, b: &Builtin, args: &[ArrayValue]) -> Result<Vec<ArrayValue>> {
    let items = items_of(b, &args[2])?;
    let mut out = Vec::with_capacity(items.len() + 1);
    out.push(args[1].clone());
    for item in items {
        let next = interp.call(&args[0], vec![out.last().unwrap().clone(), item])?;
        out.push(next);
    }
    Ok(out)
}

pub fn scan_zero(interp: &Interpreter, b: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    stack(scan_from(interp, b, args)?, &[])
}

pub fn open_scan_zero(interp: &Interpreter, b: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    let mut all = scan_from(interp, b, args)?;
    all.pop();
    stack(all, args[1].shape())
}

/// Accumulators of a serial fold, `z` first. Each step is `op(item, acc)`.
fn accumulate(interp: &Interpreter, b: &Builtin, args: &[ArrayValue], from_right: bool) -> Result<Vec<ArrayValue>> {
    let mut items = items_of(b, &args[2])?;
    if from_right {
        items.reverse();
    }
    let mut out = Vec::with_capacity(items.len() + 1);
    out.push(args[1].clone());
    for item in items {
        let next = interp.call(&args[0], vec![item, out.last().unwrap().clone()])?;
        out.push(next);
    }
    Ok(out)
}

pub fn fold(interp: &Interpreter, b: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    Ok(accumulate(interp, b, args, false)?.pop().unwrap())
}

pub fn fold_right(interp: &Interpreter, b: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    Ok(accumulate(interp, b, args, true)?.pop().unwrap())
}

pub fn trace(interp: &Interpreter, b: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    stack(accumulate(interp, b, args, false)?, &[])
}

pub fn trace_right(interp: &Interpreter, b: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    stack(accumulate(interp, b, args, true)?, &[])
}
