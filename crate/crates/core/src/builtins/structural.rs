//! Shape-manipulating builtins: construction, reshaping, selection and
//! region extraction.

use super::{bool_atom, int_vec, maybe_boxed, scalar_int, Builtin};
use crate::array::{element_count, ArrayValue, Atom, Witness};
use crate::error::{bail, Result};
use crate::eval::Interpreter;

fn dim(n: usize) -> i64 {
    n as i64
}

pub fn append(_: &Interpreter, _: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    let (a, b) = (&args[0], &args[1]);
    if a.rank() == 0 || b.rank() == 0 {
        bail!(RankZeroAppend, "cannot append scalars");
    }
    if a.item_shape() != b.item_shape() {
        bail!(TrailingShapeMismatch, "cannot append arrays of shapes {:?} and {:?}", a.shape(), b.shape());
    }
    let mut shape = a.shape().to_vec();
    shape[0] += b.shape()[0];
    let mut atoms = a.atoms().to_vec();
    atoms.extend_from_slice(b.atoms());
    Ok(ArrayValue::new(shape, atoms))
}

pub fn length(_: &Interpreter, _: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    match args[0].item_count() {
        Some(n) => Ok(ArrayValue::int(dim(n))),
        None => bail!(RankZeroLength, "a scalar has no length"),
    }
}

fn dims_of(v: &ArrayValue) -> Result<Vec<usize>> {
    int_vec(v, "a dimension")?
        .into_iter()
        .map(|d| match usize::try_from(d) {
            Ok(d) => Ok(d),
            Err(_) => bail!(NegativeDimension, "negative dimension {d}"),
        })
        .collect()
}

fn naturals(shape: Vec<usize>) -> ArrayValue {
    let n = element_count(&shape);
    ArrayValue::ints(shape, 0..dim(n))
}

pub fn iota(interp: &Interpreter, _: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    let shape = dims_of(&args[0])?;
    Ok(maybe_boxed(interp, naturals(shape.clone()), vec![Witness::Shape(shape)]))
}

pub fn iota_k(interp: &Interpreter, b: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    let shape = dims_of(&args[0])?;
    if shape.len() != b.k {
        bail!(ArityMismatch, "`{}` needs {} dimensions, given {}", b.name, b.k, shape.len());
    }
    let ws = shape.iter().map(|&d| Witness::Dim(d)).collect();
    Ok(maybe_boxed(interp, naturals(shape), ws))
}

pub fn iota1(interp: &Interpreter, _: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    let n = scalar_int(&args[0], "`iota1` length")?;
    let Ok(n) = usize::try_from(n) else {
        bail!(NegativeDimension, "negative dimension {n}");
    };
    Ok(maybe_boxed(interp, naturals(vec![n]), vec![Witness::Dim(n)]))
}

fn indices(shape: &[usize]) -> ArrayValue {
    let r = shape.len();
    let mut out_shape = shape.to_vec();
    out_shape.push(r);
    let mut atoms = Vec::with_capacity(element_count(&out_shape));
    for_each_index(shape, |ix| atoms.extend(ix.iter().map(|&i| Atom::Int(dim(i)))));
    ArrayValue::new(out_shape, atoms)
}

pub fn indices_of(interp: &Interpreter, _: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    let r = args[0].rank();
    Ok(maybe_boxed(interp, indices(args[0].shape()), vec![Witness::Dim(r)]))
}

pub fn indices_of_k(_: &Interpreter, b: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    if args[0].rank() != b.k {
        bail!(ArityMismatch, "`{}` needs a rank-{} array, given rank {}", b.name, b.k, args[0].rank());
    }
    Ok(indices(args[0].shape()))
}

/// Visit every multi-index of `shape` in row-major order.
fn for_each_index(shape: &[usize], mut f: impl FnMut(&[usize])) {
    if shape.contains(&0) {
        return;
    }
    let mut ix = vec![0; shape.len()];
    loop {
        f(&ix);
        let mut k = shape.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            ix[k] += 1;
            if ix[k] < shape[k] {
                break;
            }
            ix[k] = 0;
        }
    }
}

fn strides(shape: &[usize]) -> Vec<usize> {
    let mut s = vec![1; shape.len()];
    for k in (0..shape.len().saturating_sub(1)).rev() {
        s[k] = s[k + 1] * shape[k + 1];
    }
    s
}

/// Build an array whose coordinate `i` on axis `k` reads source coordinate
/// `axes[k][i]`, or takes `fill` where that entry is `None`. Axes beyond
/// `axes.len()` are copied whole.
fn remap(a: &ArrayValue, mut axes: Vec<Vec<Option<usize>>>, fill: Option<&Atom>) -> ArrayValue {
    for &d in &a.shape()[axes.len()..] {
        axes.push((0..d).map(Some).collect());
    }
    let out_shape: Vec<usize> = axes.iter().map(Vec::len).collect();
    let st = strides(a.shape());
    let mut atoms = Vec::with_capacity(element_count(&out_shape));
    for_each_index(&out_shape, |ix| {
        let src: Option<usize> =
            ix.iter().zip(&axes).zip(&st).try_fold(0, |acc, ((&i, axis), &s)| axis[i].map(|j| acc + j * s));
        atoms.push(match src {
            Some(p) => a.atoms()[p].clone(),
            None => fill.expect("fill atom for an out-of-range region").clone(),
        });
    });
    ArrayValue::new(out_shape, atoms)
}

fn per_axis(v: &ArrayValue, a: &ArrayValue, what: &str, name: &str) -> Result<Vec<i64>> {
    let ks = int_vec(v, what)?;
    if ks.len() > a.rank() {
        bail!(ArityMismatch, "`{name}` got {} {what}s for an array of rank {}", ks.len(), a.rank());
    }
    Ok(ks)
}

pub fn rotate(_: &Interpreter, _: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    let a = &args[0];
    let amounts = int_vec(&args[1], "a rotation amount")?;
    if amounts.len() != a.rank() {
        bail!(RotationArity, "rotating a rank-{} array needs {} amounts, given {}", a.rank(), a.rank(), amounts.len());
    }
    let axes = a
        .shape()
        .iter()
        .zip(&amounts)
        .map(|(&d, &amt)| {
            let d64 = dim(d);
            (0..d64).map(|i| Some((i + amt.rem_euclid(d64.max(1))).rem_euclid(d64.max(1)) as usize)).collect()
        })
        .collect();
    Ok(remap(a, axes, None))
}

pub fn with_shape(_: &Interpreter, _: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    let shape = args[0].shape().to_vec();
    let n = element_count(&shape);
    let data = args[1].atoms();
    if n > 0 && data.is_empty() {
        bail!(EmptyDataSource, "cannot fill shape {shape:?} from an empty array");
    }
    let atoms = data.iter().cycle().take(n).cloned().collect();
    Ok(ArrayValue::new(shape, atoms))
}

fn count(k: i64, d: usize, name: &str) -> Result<usize> {
    match usize::try_from(k) {
        Ok(k) if k <= d => Ok(k),
        _ => bail!(CountOutOfRange, "`{name}` count {k} is outside an axis of length {d}"),
    }
}

/// Keep the coordinates `lo..hi` on each axis.
fn slice(a: &ArrayValue, bounds: &[(usize, usize)]) -> ArrayValue {
    remap(a, bounds.iter().map(|&(lo, hi)| (lo..hi).map(Some).collect()).collect(), None)
}

fn shape_witness(v: &ArrayValue) -> Vec<Witness> {
    vec![Witness::Shape(v.shape().to_vec())]
}

pub fn drop_right1(interp: &Interpreter, b: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    let a = &args[0];
    let Some(d) = a.item_count() else {
        bail!(RankZeroSource, "`{}` needs an array of rank at least 1", b.name);
    };
    let k = count(scalar_int(&args[1], "a drop count")?, d, b.name)?;
    let out = slice(a, &[(0, d - k)]);
    Ok(maybe_boxed(interp, out, vec![Witness::Dim(d - k)]))
}

fn edge(
    interp: &Interpreter,
    b: &Builtin,
    args: &[ArrayValue],
    region: fn(usize, usize) -> (usize, usize),
) -> Result<ArrayValue> {
    let a = &args[0];
    let ks = per_axis(&args[1], a, "count", b.name)?;
    let bounds =
        ks.iter().zip(a.shape()).map(|(&k, &d)| Ok(region(count(k, d, b.name)?, d))).collect::<Result<Vec<_>>>()?;
    let out = slice(a, &bounds);
    let ws = shape_witness(&out);
    Ok(maybe_boxed(interp, out, ws))
}

pub fn drop_right(interp: &Interpreter, b: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    edge(interp, b, args, |k, d| (0, d - k))
}

pub fn take(interp: &Interpreter, b: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    edge(interp, b, args, |k, _| (0, k))
}

pub fn drop(interp: &Interpreter, b: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    edge(interp, b, args, |k, d| (k, d))
}

pub fn mirror(_: &Interpreter, b: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    let a = &args[0];
    let flags = args[1].atoms().iter().map(|f| bool_atom(f, "a mirror flag")).collect::<Result<Vec<_>>>()?;
    if flags.len() != a.rank() {
        bail!(
            ArityMismatch,
            "`{}` needs {} flags for a rank-{} array, given {}",
            b.name,
            a.rank(),
            a.rank(),
            flags.len()
        );
    }
    let axes = flags
        .iter()
        .zip(a.shape())
        .map(|(&flip, &d)| (0..d).map(|i| Some(if flip { d - 1 - i } else { i })).collect())
        .collect();
    Ok(remap(a, axes, None))
}

pub fn index(_: &Interpreter, _: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    let a = &args[0];
    let ix = int_vec(&args[1], "an index")?;
    if ix.len() > a.rank() {
        bail!(IndexTooLong, "index of length {} into an array of rank {}", ix.len(), a.rank());
    }
    let cell_shape = &a.shape()[ix.len()..];
    let mut pos = 0;
    for (&i, &d) in ix.iter().zip(a.shape()) {
        match usize::try_from(i) {
            Ok(i) if i < d => pos = pos * d + i,
            _ => bail!(IndexOutOfBounds, "index {i} is outside an axis of length {d}"),
        }
    }
    Ok(a.cell(pos, cell_shape))
}

pub fn index_item(_: &Interpreter, _: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    let a = &args[0];
    let Some(d) = a.item_count() else {
        bail!(RankZeroSource, "cannot select an item from a scalar");
    };
    let i = scalar_int(&args[1], "an item index")?;
    match usize::try_from(i) {
        Ok(i) if i < d => Ok(a.item(i)),
        _ => bail!(IndexOutOfBounds, "item {i} is outside an axis of length {d}"),
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Edge {
    Strict,
    Wrap,
    Fill,
}

fn region(interp: &Interpreter, b: &Builtin, args: &[ArrayValue], edge: Edge) -> Result<ArrayValue> {
    let a = &args[0];
    let start = int_vec(&args[1], "a start coordinate")?;
    if start.len() != a.rank() {
        bail!(ArityMismatch, "`{}` needs {} start coordinates, given {}", b.name, a.rank(), start.len());
    }
    let extents = per_axis(&args[2], a, "extent", b.name)?;
    let mut axes = Vec::with_capacity(a.rank());
    for (k, (&s, &d)) in start.iter().zip(a.shape()).enumerate() {
        let len = match extents.get(k) {
            Some(&n) => n,
            None => (dim(d) - s).max(0),
        };
        if len < 0 {
            bail!(NegativeDimension, "negative extent {len}");
        }
        let axis = (s..s + len)
            .map(|i| match edge {
                _ if (0..dim(d)).contains(&i) => Ok(Some(i as usize)),
                Edge::Wrap if d > 0 => Ok(Some(i.rem_euclid(dim(d)) as usize)),
                Edge::Fill => Ok(None),
                _ => bail!(RegionOutOfBounds, "coordinate {i} is outside an axis of length {d}"),
            })
            .collect::<Result<Vec<_>>>()?;
        axes.push(axis);
    }
    let fill = args.get(3).map(|f| &f.atoms()[0]);
    let out = remap(a, axes, fill);
    let ws = shape_witness(&out);
    Ok(maybe_boxed(interp, out, ws))
}

pub fn subarray(interp: &Interpreter, b: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    region(interp, b, args, Edge::Strict)
}

pub fn subarray_wrap(interp: &Interpreter, b: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    region(interp, b, args, Edge::Wrap)
}

pub fn subarray_fill(interp: &Interpreter, b: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    region(interp, b, args, Edge::Fill)
}

/// Copies per item for the selector family, checked against the data.
fn selector_counts(b: &Builtin, sel: &ArrayValue, a: &ArrayValue, booleans: bool) -> Result<Vec<usize>> {
    let Some(d) = a.item_count() else {
        bail!(RankZeroData, "`{}` cannot select from a scalar", b.name);
    };
    let counts = sel
        .atoms()
        .iter()
        .map(|x| {
            if booleans {
                Ok(bool_atom(x, "a selector")? as usize)
            } else {
                let n = super::int_atom(x, "a replication count")?;
                match usize::try_from(n) {
                    Ok(n) => Ok(n),
                    Err(_) => bail!(NegativeCount, "negative replication count {n}"),
                }
            }
        })
        .collect::<Result<Vec<_>>>()?;
    if counts.len() != d {
        bail!(SelectorLengthMismatch, "`{}` selector has {} entries for {} items", b.name, counts.len(), d);
    }
    Ok(counts)
}

fn repeat_items(a: &ArrayValue, counts: &[usize]) -> ArrayValue {
    let axis = counts.iter().enumerate().flat_map(|(i, &n)| std::iter::repeat_n(Some(i), n)).collect();
    remap(a, vec![axis], None)
}

pub fn filter(interp: &Interpreter, b: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    let counts = selector_counts(b, &args[0], &args[1], true)?;
    let out = repeat_items(&args[1], &counts);
    let n = out.shape()[0];
    Ok(maybe_boxed(interp, out, vec![Witness::Dim(n)]))
}

pub fn replicate(interp: &Interpreter, b: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    let counts = selector_counts(b, &args[0], &args[1], false)?;
    let out = repeat_items(&args[1], &counts);
    let n = out.shape()[0];
    Ok(maybe_boxed(interp, out, vec![Witness::Dim(n)]))
}

/// Both halves come back as a 2-vector of boxes, the kept items first.
pub fn partition(interp: &Interpreter, b: &Builtin, args: &[ArrayValue]) -> Result<ArrayValue> {
    let keep = selector_counts(b, &args[0], &args[1], true)?;
    let reject: Vec<usize> = keep.iter().map(|k| 1 - k).collect();
    let halves = [keep, reject].map(|c| {
        let half = repeat_items(&args[1], &c);
        let ws = match interp.dialect() {
            crate::eval::Dialect::Typed => vec![Witness::Dim(half.shape()[0])],
            crate::eval::Dialect::Dynamic => vec![],
        };
        Atom::new_box(half, ws)
    });
    Ok(ArrayValue::vector(halves.into()))
}

#[cfg(test)]
mod tests {
    use super::super::lookup;
    use super::*;
    use crate::eval::Dialect;

    fn run(name: &str, args: Vec<ArrayValue>) -> Result<ArrayValue> {
        let b = lookup(name).unwrap();
        (b.imp)(&Interpreter::new(Dialect::Dynamic, false), b, &args)
    }

    fn v(xs: &[i64]) -> ArrayValue {
        ArrayValue::ints(vec![xs.len()], xs.iter().copied())
    }

    fn cube() -> ArrayValue {
        ArrayValue::ints(
            vec![3, 2, 4],
            [1, 10, 100, 1000, 2, 20, 200, 2000, 0, 2, 4, 6, 1, 3, 5, 7, 30, 31, 32, 33, 40, 41, 42, 43],
        )
    }

    #[test]
    fn rotate_shifts_left() {
        assert_eq!(run("rotate", vec![v(&[2, 3, 4, 5, 11]), v(&[2])]).unwrap(), v(&[4, 5, 11, 2, 3]));
        assert_eq!(run("rotate", vec![v(&[1, 2, 3]), v(&[-1])]).unwrap(), v(&[3, 1, 2]));
        let e = run("rotate", vec![v(&[1, 2]), v(&[1, 1])]).unwrap_err();
        assert_eq!(e.kind, crate::error::ErrorKind::RotationArity);
    }

    #[test]
    fn with_shape_cycles() {
        let pat = ArrayValue::ints(vec![2, 2], [0; 4]);
        assert_eq!(run("with-shape", vec![pat, v(&[1, 2, 3])]).unwrap(), ArrayValue::ints(vec![2, 2], [1, 2, 3, 1]));
        assert_eq!(run("with-shape", vec![ArrayValue::int(5), ArrayValue::int(9)]).unwrap(), ArrayValue::int(9));
    }

    #[test]
    fn take_and_drop_slice_each_axis() {
        let m = ArrayValue::ints(vec![2, 2], [1, 2, 3, 4]);
        assert_eq!(run("take", vec![m.clone(), v(&[1, 2])]).unwrap(), ArrayValue::ints(vec![1, 2], [1, 2]));
        assert_eq!(run("drop", vec![m.clone(), v(&[1])]).unwrap(), ArrayValue::ints(vec![1, 2], [3, 4]));
        assert_eq!(run("drop-right1", vec![v(&[1, 2, 3]), ArrayValue::int(0)]).unwrap(), v(&[1, 2, 3]));
        let e = run("take", vec![m, v(&[3])]).unwrap_err();
        assert_eq!(e.kind, crate::error::ErrorKind::CountOutOfRange);
    }

    #[test]
    fn mirror_reverses_flagged_axes() {
        let m = ArrayValue::ints(vec![2, 2], [1, 2, 3, 4]);
        let flags = ArrayValue::vector(vec![Atom::Bool(false), Atom::Bool(true)]);
        assert_eq!(run("mirror", vec![m, flags]).unwrap(), ArrayValue::ints(vec![2, 2], [2, 1, 4, 3]));
    }

    #[test]
    fn index_selects_cells() {
        assert_eq!(run("index", vec![cube(), v(&[1, 1, 2])]).unwrap(), ArrayValue::int(5));
        assert_eq!(run("index", vec![cube(), v(&[2, 1])]).unwrap(), v(&[40, 41, 42, 43]));
        assert_eq!(run("index-item", vec![v(&[9]), ArrayValue::int(0)]).unwrap(), ArrayValue::int(9));
        assert_eq!(run("index", vec![cube(), v(&[0, 2])]).unwrap_err().kind, crate::error::ErrorKind::IndexOutOfBounds);
    }

    #[test]
    fn subarray_regions() {
        let cube_out = ArrayValue::ints(vec![2, 2, 2], [4, 6, 5, 7, 32, 33, 42, 43]);
        assert_eq!(run("subarray", vec![cube(), v(&[1, 0, 2]), v(&[2, 2, 2])]).unwrap(), cube_out);
        assert_eq!(run("subarray", vec![cube(), v(&[1, 0, 2]), v(&[2])]).unwrap(), cube_out);
        assert_eq!(run("subarray/wrap", vec![v(&[1, 2, 3]), v(&[2]), v(&[3])]).unwrap(), v(&[3, 1, 2]));
        assert_eq!(
            run("subarray/fill", vec![v(&[1, 2, 3]), v(&[2]), v(&[3]), ArrayValue::int(0)]).unwrap(),
            v(&[3, 0, 0])
        );
        assert_eq!(
            run("subarray", vec![v(&[1, 2, 3]), v(&[2]), v(&[3])]).unwrap_err().kind,
            crate::error::ErrorKind::RegionOutOfBounds
        );
    }

    #[test]
    fn selectors() {
        let keep = ArrayValue::vector(vec![Atom::Bool(true), Atom::Bool(false), Atom::Bool(true)]);
        assert_eq!(run("filter", vec![keep.clone(), v(&[1, 2, 3])]).unwrap(), v(&[1, 3]));
        assert_eq!(
            run("replicate", vec![v(&[1, 3, 0, 2]), v(&[20, 73, 99, 14])]).unwrap(),
            v(&[20, 73, 73, 73, 14, 14])
        );
        let halves = run("partition", vec![keep, v(&[1, 2, 3])]).unwrap();
        let Atom::Box(second) = &halves.atoms()[1] else { panic!() };
        assert_eq!(second.contents, v(&[2]));
        assert_eq!(
            run("filter", vec![ArrayValue::vector(vec![Atom::Bool(true)]), v(&[1, 2])]).unwrap_err().kind,
            crate::error::ErrorKind::SelectorLengthMismatch
        );
    }

    #[test]
    fn indices_of_scalar_is_empty() {
        let r = run("indices-of", vec![ArrayValue::int(3)]).unwrap();
        assert_eq!(r.shape(), &[0]);
        let m = ArrayValue::ints(vec![2, 3], [0; 6]);
        assert_eq!(
            run("indices-of", vec![m]).unwrap(),
            ArrayValue::ints(vec![2, 3, 2], [0, 0, 0, 1, 0, 2, 1, 0, 1, 1, 1, 2])
        );
    }
}
