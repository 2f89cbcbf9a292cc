//! Stable grading by a user comparator.

use super::{bool_atom, Builtin};
use crate::array::ArrayValue;
use crate::error::{bail, Result};
use crate::eval::Interpreter;

fn precedes(interp: &Interpreter, cmp: &ArrayValue, x: &ArrayValue, y: &ArrayValue) -> Result<bool> {
    let r = interp.call(cmp, vec![x.clone(), y.clone()])?;
    match r.scalar_atom() {
        Some(a) => bool_atom(a, "a comparator result"),
        None => bail!(TypeMismatchAtom, "a comparator must return a scalar boolean"),
    }
}

/// Merge sort over item positions. A right-hand item moves ahead only
/// when it strictly precedes, which keeps equal items in order.
fn merge_sort(interp: &Interpreter, cmp: &ArrayValue, items: &[ArrayValue], ix: &mut Vec<usize>) -> Result<()> {
    if ix.len() < 2 {
        return Ok(());
    }
    let mut right = ix.split_off(ix.len() / 2);
    merge_sort(interp, cmp, items, ix)?;
    merge_sort(interp, cmp, items, &mut right)?;
    let left = std::mem::take(ix);
    let (mut i, mut j) = (0, 0);
    while i < left.len() && j < right.len() {
        if precedes(interp, cmp, &items[right[j]], &items[left[i]])? {
            ix.push(right[j]);
            j += 1;
        } else {
            ix.push(left[i]);
            i += 1;
        }
    }
    ix.extend_from_slice(&left[i..]);
    ix.extend_from_slice(&right[j..]);
    Ok(())
}

fn permutation(interp: &Interpreter, b: &Builtin, args: &[ArrayValue]) -> Result<Vec<usize>> {
    let a = &args[1];
    if a.rank() == 0 {
        bail!(RankZeroData, "`{}` needs an array of rank at least 1", b.name);
    }
    let items = a.items();
    let mut ix: Vec<usize> = (0..items.len()).collect();
    merge_sort(interp, &args[0], &items, &mut ix)?;
    Ok(ix)
}

pub fn grade(interp: &Interpreter, b: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    let ix = permutation(interp, b, args)?;
    Ok(ArrayValue::ints(vec![ix.len()], ix.into_iter().map(|i| i as i64)))
}

pub fn sort(interp: &Interpreter, b: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    let ix = permutation(interp, b, args)?;
    let items = ix.into_iter().map(|i| args[1].item(i)).collect();
    ArrayValue::from_items(items, args[1].item_shape())
}

#[cfg(test)]
mod tests {
    use super::super::lookup;
    use super::*;
    use crate::array::{Atom, Function};
    use crate::eval::Dialect;
    use std::sync::Arc;

    fn f(name: &str) -> ArrayValue {
        ArrayValue::scalar(Atom::Func(Arc::new(Function::Builtin(lookup(name).unwrap()))))
    }

    fn run(name: &str, args: Vec<ArrayValue>) -> Result<ArrayValue> {
        let b = lookup(name).unwrap();
        (b.imp)(&Interpreter::new(Dialect::Dynamic, false), b, &args)
    }

    #[test]
    fn grade_is_stable() {
        let v = ArrayValue::ints(vec![4], [3, 1, 4, 1]);
        assert_eq!(run("grade", vec![f("<"), v.clone()]).unwrap(), ArrayValue::ints(vec![4], [1, 3, 0, 2]));
        assert_eq!(run("grade", vec![f(">"), v.clone()]).unwrap(), ArrayValue::ints(vec![4], [2, 0, 1, 3]));
        assert_eq!(run("sort", vec![f("<"), v]).unwrap(), ArrayValue::ints(vec![4], [1, 1, 3, 4]));
    }

    #[test]
    fn non_boolean_comparator_is_rejected() {
        let v = ArrayValue::ints(vec![2], [2, 1]);
        let e = run("grade", vec![f("+"), v]).unwrap_err();
        assert_eq!(e.kind, crate::error::ErrorKind::TypeMismatchAtom);
    }
}
