//! The primitive library. Every builtin declares its parameter cell ranks;
//! the application rule hands each implementation cells of exactly those
//! ranks.

mod iterate;
mod scalar;
mod sort;
mod structural;

use crate::array::{ArrayValue, Atom, CellRank, Witness};
use crate::error::{bail, Result};
use crate::eval::{Dialect, Interpreter};

pub type BuiltinFn = fn(&Interpreter, &Builtin, &[ArrayValue]) -> Result<ArrayValue>;

pub struct Builtin {
    pub name: &'static str,
    pub ranks: &'static [CellRank],
    /// Rank parameter for the rank-specialised families (`iota2`,
    /// `indices-of/3`, ...).
    pub k: usize,
    pub imp: BuiltinFn,
}

use CellRank::{All, Nat};

const R0: &[CellRank] = &[Nat(0)];
const R00: &[CellRank] = &[Nat(0), Nat(0)];
const R000: &[CellRank] = &[Nat(0), Nat(0), Nat(0)];
const R1: &[CellRank] = &[Nat(1)];
const RA: &[CellRank] = &[All];
const RAA: &[CellRank] = &[All, All];
const RA0: &[CellRank] = &[All, Nat(0)];
const RA1: &[CellRank] = &[All, Nat(1)];
const RA11: &[CellRank] = &[All, Nat(1), Nat(1)];
const RA110: &[CellRank] = &[All, Nat(1), Nat(1), Nat(0)];
const R1A: &[CellRank] = &[Nat(1), All];
const R0A: &[CellRank] = &[Nat(0), All];
const R0AA: &[CellRank] = &[Nat(0), All, All];

macro_rules! table {
    ($($name:literal $ranks:ident $k:literal $imp:path;)*) => {
        pub static BUILTINS: &[Builtin] = &[
            $(Builtin { name: $name, ranks: $ranks, k: $k, imp: $imp },)*
        ];
    };
}

table! {
    "+" R00 0 scalar::add;
    "-" R00 0 scalar::sub;
    "*" R00 0 scalar::mul;
    "/" R00 0 scalar::div;
    "expt" R00 0 scalar::expt;
    "square" R0 0 scalar::square;
    "square-root" R0 0 scalar::square_root;
    "add1" R0 0 scalar::add1;
    "sub1" R0 0 scalar::sub1;
    "sin" R0 0 scalar::sin;
    "cos" R0 0 scalar::cos;
    "=" R00 0 scalar::num_eq;
    "<" R00 0 scalar::lt;
    ">" R00 0 scalar::gt;
    "zero?" R0 0 scalar::is_zero;
    "negative?" R0 0 scalar::is_negative;
    "not" R0 0 scalar::not;
    "and" R00 0 scalar::and;
    "or" R00 0 scalar::or;
    "char=?" R00 0 scalar::char_eq;
    "select" R000 0 scalar::select;
    "append" RAA 0 structural::append;
    "length" RA 0 structural::length;
    "iota" R1 0 structural::iota;
    "iota0" R1 0 structural::iota_k;
    "iota1" R0 1 structural::iota1;
    "iota2" R1 2 structural::iota_k;
    "iota3" R1 3 structural::iota_k;
    "iota4" R1 4 structural::iota_k;
    "iota5" R1 5 structural::iota_k;
    "iota6" R1 6 structural::iota_k;
    "iota7" R1 7 structural::iota_k;
    "iota8" R1 8 structural::iota_k;
    "iota9" R1 9 structural::iota_k;
    "indices-of" RA 0 structural::indices_of;
    "indices-of/1" RA 1 structural::indices_of_k;
    "indices-of/2" RA 2 structural::indices_of_k;
    "indices-of/3" RA 3 structural::indices_of_k;
    "indices-of/4" RA 4 structural::indices_of_k;
    "indices-of/5" RA 5 structural::indices_of_k;
    "indices-of/6" RA 6 structural::indices_of_k;
    "indices-of/7" RA 7 structural::indices_of_k;
    "indices-of/8" RA 8 structural::indices_of_k;
    "indices-of/9" RA 9 structural::indices_of_k;
    "rotate" RA1 0 structural::rotate;
    "with-shape" RAA 0 structural::with_shape;
    "drop-right1" RA0 0 structural::drop_right1;
    "drop-right" RA1 0 structural::drop_right;
    "take" RA1 0 structural::take;
    "drop" RA1 0 structural::drop;
    "mirror" RA1 0 structural::mirror;
    "index" RA1 0 structural::index;
    "index-item" RA0 0 structural::index_item;
    "subarray" RA11 0 structural::subarray;
    "subarray/wrap" RA11 0 structural::subarray_wrap;
    "subarray/fill" RA110 0 structural::subarray_fill;
    "filter" R1A 0 structural::filter;
    "partition" R1A 0 structural::partition;
    "replicate" R1A 0 structural::replicate;
    "reduce" R0A 0 iterate::reduce;
    "reduce/zero" R0AA 0 iterate::reduce_zero;
    "iscan" R0A 0 iterate::iscan;
    "scan/zero" R0AA 0 iterate::scan_zero;
    "open-scan/zero" R0AA 0 iterate::open_scan_zero;
    "fold" R0AA 0 iterate::fold;
    "fold-right" R0AA 0 iterate::fold_right;
    "trace" R0AA 0 iterate::trace;
    "trace-right" R0AA 0 iterate::trace_right;
    "grade" R0A 0 sort::grade;
    "sort" R0A 0 sort::sort;
}

pub fn lookup(name: &str) -> Option<&'static Builtin> {
    BUILTINS.iter().find(|b| b.name == name)
}

pub(crate) fn int_atom(a: &Atom, what: &str) -> Result<i64> {
    match a {
        Atom::Int(n) => Ok(*n),
        other => bail!(TypeMismatchAtom, "{what} must be an integer, found {}", other.kind_name()),
    }
}

pub(crate) fn bool_atom(a: &Atom, what: &str) -> Result<bool> {
    match a {
        Atom::Bool(b) => Ok(*b),
        other => bail!(TypeMismatchAtom, "{what} must be a boolean, found {}", other.kind_name()),
    }
}

pub(crate) fn int_vec(v: &ArrayValue, what: &str) -> Result<Vec<i64>> {
    v.atoms().iter().map(|a| int_atom(a, what)).collect()
}

pub(crate) fn scalar_int(v: &ArrayValue, what: &str) -> Result<i64> {
    int_atom(&v.atoms()[0], what)
}

/// In the typed dialect results whose shape the type system cannot
/// predict come back as a scalar box.
pub(crate) fn maybe_boxed(interp: &Interpreter, value: ArrayValue, witnesses: Vec<Witness>) -> ArrayValue {
    match interp.dialect() {
        Dialect::Dynamic => value,
        Dialect::Typed => ArrayValue::scalar(Atom::new_box(value, witnesses)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn names_are_unique() {
        let names: HashSet<_> = BUILTINS.iter().map(|b| b.name).collect();
        assert_eq!(names.len(), BUILTINS.len());
    }

    #[test]
    fn lookup_finds_ranks() {
        assert_eq!(lookup("subarray/fill").unwrap().ranks, RA110);
        assert_eq!(lookup("iota1").unwrap().ranks, R0);
        assert!(lookup("reduce1").is_none());
    }
}
