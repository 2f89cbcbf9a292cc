//! Index expressions and their normal forms.
//!
//! A dimension normalises to a constant plus a multiset of dimension
//! variables; a shape normalises to a flat list of segments, each either a
//! single (normalised) dimension or a shape variable. Two indices are equal
//! exactly when their normal forms are.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, ErrorKind, Result};
use crate::reader::{SurfaceForm, TokenKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sort {
    Dim,
    Shape,
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sort::Dim => "dimension",
            Sort::Shape => "shape",
        })
    }
}

/// Index variables are sorted by spelling: a leading `@` marks a shape.
pub fn sort_of_name(name: &str) -> Sort {
    if name.starts_with('@') {
        Sort::Shape
    } else {
        Sort::Dim
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Index {
    Nat(usize),
    DimVar(String),
    Sum(Vec<Index>),
    ShapeLit(Vec<Index>),
    ShapeVar(String),
    Concat(Vec<Index>),
}

impl Index {
    pub fn scalar_shape() -> Index {
        Index::ShapeLit(vec![])
    }

    pub fn dims(dims: &[usize]) -> Index {
        Index::ShapeLit(dims.iter().map(|&d| Index::Nat(d)).collect())
    }

    pub fn var(name: &str) -> Index {
        match sort_of_name(name) {
            Sort::Dim => Index::DimVar(name.to_string()),
            Sort::Shape => Index::ShapeVar(name.to_string()),
        }
    }

    pub fn sort(&self) -> Sort {
        match self {
            Index::Nat(_) | Index::DimVar(_) | Index::Sum(_) => Sort::Dim,
            _ => Sort::Shape,
        }
    }

    pub fn free_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Index::Nat(_) => {}
            Index::DimVar(v) | Index::ShapeVar(v) => {
                out.insert(v.clone());
            }
            Index::Sum(xs) | Index::ShapeLit(xs) | Index::Concat(xs) => xs.iter().for_each(|x| x.free_vars(out)),
        }
    }

    pub fn mentions(&self, name: &str) -> bool {
        let mut vars = BTreeSet::new();
        self.free_vars(&mut vars);
        vars.contains(name)
    }

    pub fn subst(&self, map: &HashMap<String, Index>) -> Index {
        match self {
            Index::Nat(n) => Index::Nat(*n),
            Index::DimVar(v) | Index::ShapeVar(v) => map.get(v).cloned().unwrap_or_else(|| self.clone()),
            Index::Sum(xs) => Index::Sum(xs.iter().map(|x| x.subst(map)).collect()),
            Index::ShapeLit(xs) => Index::ShapeLit(xs.iter().map(|x| x.subst(map)).collect()),
            Index::Concat(xs) => Index::Concat(xs.iter().map(|x| x.subst(map)).collect()),
        }
    }

    pub fn to_surface(&self) -> SurfaceForm {
        match self {
            Index::Nat(n) => SurfaceForm::int(n),
            Index::DimVar(v) | Index::ShapeVar(v) => SurfaceForm::sym(v.clone()),
            Index::Sum(xs) => {
                let mut items = vec![SurfaceForm::sym("+")];
                items.extend(xs.iter().map(Index::to_surface));
                SurfaceForm::paren(items)
            }
            Index::ShapeLit(_) | Index::Concat(_) => {
                let mut items = Vec::new();
                self.splice_items(&mut items);
                SurfaceForm::bracket(items)
            }
        }
    }

    fn splice_items(&self, out: &mut Vec<SurfaceForm>) {
        match self {
            Index::ShapeLit(xs) => out.extend(xs.iter().map(Index::to_surface)),
            Index::Concat(xs) => xs.iter().for_each(|x| x.splice_items(out)),
            other => out.push(other.to_surface()),
        }
    }

    /// Parse an index in sugared or core syntax.
    pub fn parse(form: &SurfaceForm) -> Result<Index> {
        let malformed = |what: &str| Error::at(ErrorKind::MalformedForm, form.pos(), format!("{what}: {form}"));
        match form {
            SurfaceForm::Leaf(tok) => match tok.kind {
                TokenKind::Int => match tok.text.parse::<usize>() {
                    Ok(n) => Ok(Index::Nat(n)),
                    Err(_) => {
                        Err(Error::at(ErrorKind::SortError, tok.pos, format!("`{}` is not a natural number", tok.text)))
                    }
                },
                TokenKind::Symbol => Ok(Index::var(&tok.text)),
                _ => Err(malformed("not an index")),
            },
            SurfaceForm::Bracket { items, .. } => {
                let parts = items.iter().map(Index::parse).collect::<Result<Vec<_>>>()?;
                Ok(splice(parts))
            }
            SurfaceForm::Paren { items, pos } => {
                let head = items.first().and_then(SurfaceForm::symbol).ok_or_else(|| malformed("not an index"))?;
                let args = items[1..].iter().map(Index::parse).collect::<Result<Vec<_>>>()?;
                let want = |sort: Sort, args: &[Index]| -> Result<()> {
                    match args.iter().find(|a| a.sort() != sort) {
                        Some(bad) => Err(Error::at(
                            ErrorKind::SortError,
                            *pos,
                            format!("`{head}` expects {sort} indices, found `{}`", bad.to_surface()),
                        )),
                        None => Ok(()),
                    }
                };
                match head {
                    "+" => {
                        want(Sort::Dim, &args)?;
                        Ok(Index::Sum(args))
                    }
                    "shape" => {
                        want(Sort::Dim, &args)?;
                        Ok(Index::ShapeLit(args))
                    }
                    "++" => {
                        want(Sort::Shape, &args)?;
                        Ok(Index::Concat(args))
                    }
                    _ => Err(malformed("unknown index operator")),
                }
            }
            SurfaceForm::Rerank { .. } => Err(malformed("not an index")),
        }
    }

    /// Parse an index that must have the given sort.
    pub fn parse_sorted(form: &SurfaceForm, sort: Sort) -> Result<Index> {
        let idx = Index::parse(form)?;
        if idx.sort() != sort {
            return Err(Error::at(
                ErrorKind::SortError,
                form.pos(),
                format!("expected a {sort} index, found `{form}`"),
            ));
        }
        Ok(idx)
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_surface())
    }
}

/// The bracket splicing notation: runs of dimensions become `shape`
/// segments, shapes are appended with `++`, and a single segment stands
/// for itself.
pub fn splice(parts: Vec<Index>) -> Index {
    let mut segs: Vec<Index> = Vec::new();
    let mut run: Vec<Index> = Vec::new();
    for p in parts {
        if p.sort() == Sort::Dim {
            run.push(p);
        } else {
            if !run.is_empty() {
                segs.push(Index::ShapeLit(std::mem::take(&mut run)));
            }
            segs.push(p);
        }
    }
    if !run.is_empty() || segs.is_empty() {
        segs.push(Index::ShapeLit(run));
    }
    if segs.len() == 1 {
        segs.pop().unwrap()
    } else {
        Index::Concat(segs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct NDim {
    pub konst: usize,
    pub vars: BTreeMap<String, usize>,
}

impl NDim {
    pub fn constant(&self) -> Option<usize> {
        self.vars.is_empty().then_some(self.konst)
    }

    fn add(&mut self, other: NDim) {
        self.konst += other.konst;
        for (v, n) in other.vars {
            *self.vars.entry(v).or_default() += n;
        }
    }

    pub fn to_index(&self) -> Index {
        let mut terms: Vec<Index> = Vec::new();
        for (v, &n) in &self.vars {
            terms.extend(std::iter::repeat_n(Index::DimVar(v.clone()), n));
        }
        if terms.is_empty() {
            return Index::Nat(self.konst);
        }
        if self.konst > 0 {
            terms.push(Index::Nat(self.konst));
        }
        if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            Index::Sum(terms)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Seg {
    Dim(NDim),
    Var(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct NShape(pub Vec<Seg>);

impl NShape {
    pub fn concrete(&self) -> Option<Vec<usize>> {
        self.0
            .iter()
            .map(|s| match s {
                Seg::Dim(d) => d.constant(),
                Seg::Var(_) => None,
            })
            .collect()
    }

    pub fn has_shape_var(&self) -> bool {
        self.0.iter().any(|s| matches!(s, Seg::Var(_)))
    }

    pub fn concat(&self, other: &NShape) -> NShape {
        NShape(self.0.iter().chain(&other.0).cloned().collect())
    }

    pub fn to_index(&self) -> Index {
        let mut parts = Vec::new();
        for seg in &self.0 {
            match seg {
                Seg::Dim(d) => parts.push(d.to_index()),
                Seg::Var(v) => parts.push(Index::ShapeVar(v.clone())),
            }
        }
        splice(parts)
    }
}

pub fn norm_dim(i: &Index) -> NDim {
    match i {
        Index::Nat(n) => NDim { konst: *n, vars: BTreeMap::new() },
        Index::DimVar(v) => NDim { konst: 0, vars: BTreeMap::from([(v.clone(), 1)]) },
        Index::Sum(xs) => {
            let mut acc = NDim::default();
            for x in xs {
                acc.add(norm_dim(x));
            }
            acc
        }
        _ => NDim::default(),
    }
}

pub fn norm_shape(i: &Index) -> NShape {
    match i {
        Index::ShapeLit(xs) => NShape(xs.iter().map(|x| Seg::Dim(norm_dim(x))).collect()),
        Index::ShapeVar(v) => NShape(vec![Seg::Var(v.clone())]),
        Index::Concat(xs) => NShape(xs.iter().flat_map(|x| norm_shape(x).0).collect()),
        dim => NShape(vec![Seg::Dim(norm_dim(dim))]),
    }
}

/// Rewrite an index into the unique representative of its normal form.
pub fn canonical(i: &Index) -> Index {
    match i.sort() {
        Sort::Dim => norm_dim(i).to_index(),
        Sort::Shape => norm_shape(i).to_index(),
    }
}

pub fn index_equal(a: &Index, b: &Index) -> bool {
    a.sort() == b.sort() && canonical(a) == canonical(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reader::read;
    use proptest::prelude::*;

    fn idx(src: &str) -> Index {
        Index::parse(&read(src).unwrap()[0]).unwrap()
    }

    #[test]
    fn sums_commute() {
        assert!(index_equal(&idx("(+ d1 7)"), &idx("(+ 7 d1)")));
        assert!(!index_equal(&idx("(+ d1 7)"), &idx("(+ d1 8)")));
        assert!(index_equal(&idx("(+ d d)"), &idx("(+ d (+ 0 d))")));
    }

    #[test]
    fn splice_rewrites() {
        assert_eq!(idx("[d1 @s 5 (+ 1 d2)]"), idx("(++ (shape d1) @s (shape 5 (+ 1 d2)))"));
        assert_eq!(idx("[3 4]"), idx("(shape 3 4)"));
        assert_eq!(idx("[@s1 @s2]"), idx("(++ @s1 @s2)"));
        assert_eq!(idx("[@s]"), idx("@s"));
        assert_eq!(idx("[]"), Index::scalar_shape());
    }

    #[test]
    fn empty_shape_is_unit() {
        assert!(index_equal(&idx("(++ (shape) @s)"), &idx("@s")));
        assert!(index_equal(&idx("(++ (shape 2) (shape 3))"), &idx("[2 3]")));
    }

    #[test]
    fn sort_errors() {
        let e = Index::parse(&read("(+ @s 1)").unwrap()[0]).unwrap_err();
        assert_eq!(e.kind, ErrorKind::SortError);
        let e = Index::parse(&read("(++ d [1])").unwrap()[0]).unwrap_err();
        assert_eq!(e.kind, ErrorKind::SortError);
        let e = Index::parse_sorted(&read("@s").unwrap()[0], Sort::Dim).unwrap_err();
        assert_eq!(e.kind, ErrorKind::SortError);
    }

    #[test]
    fn canonical_dims() {
        assert_eq!(canonical(&idx("(+ 2 3)")), Index::Nat(5));
        assert_eq!(canonical(&idx("(+ b a 1)")), idx("(+ a b 1)"));
    }

    fn arb_dim() -> impl Strategy<Value = Index> {
        let leaf = prop_oneof![
            (0usize..5).prop_map(Index::Nat),
            prop::sample::select(vec!["a", "b", "c"]).prop_map(|v| Index::DimVar(v.into())),
        ];
        leaf.prop_recursive(3, 12, 3, |inner| prop::collection::vec(inner, 0..4).prop_map(Index::Sum))
    }

    fn eval_dim(i: &Index, env: &HashMap<&str, usize>) -> usize {
        match i {
            Index::Nat(n) => *n,
            Index::DimVar(v) => env[v.as_str()],
            Index::Sum(xs) => xs.iter().map(|x| eval_dim(x, env)).sum(),
            _ => unreachable!(),
        }
    }

    proptest! {
        #[test]
        fn reordered_sums_are_equal(mut terms in prop::collection::vec(arb_dim(), 0..5), seed in any::<u64>()) {
            let a = Index::Sum(terms.clone());
            let n = terms.len();
            if n > 1 {
                terms.rotate_left((seed as usize) % n);
            }
            prop_assert!(index_equal(&a, &Index::Sum(terms)));
        }

        #[test]
        fn normal_form_preserves_value(d in arb_dim(), x in 0usize..9, y in 0usize..9, z in 0usize..9) {
            let env = HashMap::from([("a", x), ("b", y), ("c", z)]);
            prop_assert_eq!(eval_dim(&d, &env), eval_dim(&canonical(&d), &env));
        }

        #[test]
        fn equal_normal_forms_agree_on_values(d1 in arb_dim(), d2 in arb_dim(), x in 0usize..9, y in 0usize..9, z in 0usize..9) {
            let env = HashMap::from([("a", x), ("b", y), ("c", z)]);
            if index_equal(&d1, &d2) {
                prop_assert_eq!(eval_dim(&d1, &env), eval_dim(&d2, &env));
            }
        }
    }
}
