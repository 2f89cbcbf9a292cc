//! Types of the explicitly typed dialect.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use super::index::{canonical, norm_shape, splice, Index, NShape};
use crate::error::{Error, ErrorKind, Result};
use crate::reader::SurfaceForm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Base {
    Int,
    Float,
    Bool,
    Char,
}

impl Base {
    pub fn name(self) -> &'static str {
        match self {
            Base::Int => "int",
            Base::Float => "float",
            Base::Bool => "bool",
            Base::Char => "char",
        }
    }

    fn from_name(name: &str) -> Option<Base> {
        Some(match name {
            "int" => Base::Int,
            "float" => Base::Float,
            "bool" => Base::Bool,
            "char" => Base::Char,
            _ => return None,
        })
    }
}

/// Binder names carry their flavour in their spelling: `@x` binds an
/// array type (under `Forall`) or a shape (under `Pi`/`Sigma`), a bare name
/// an element type or a dimension.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Type {
    Base(Base),
    ElemVar(String),
    ArrVar(String),
    Arr(Box<Type>, Index),
    Fn(Vec<Type>, Box<Type>),
    Forall(Vec<String>, Box<Type>),
    Pi(Vec<String>, Box<Type>),
    Sigma(Vec<String>, Box<Type>),
}

static FRESH: AtomicUsize = AtomicUsize::new(0);

/// A name no user program can spell, keeping the `@` flavour marker.
pub fn fresh_name(base: &str) -> String {
    let n = FRESH.fetch_add(1, Ordering::Relaxed);
    let stem = base.trim_start_matches('@').trim_start_matches('`');
    let stem: String = stem.chars().take_while(|c| !c.is_ascii_digit()).collect();
    let stem = if stem.is_empty() { "v" } else { &stem };
    if base.starts_with('@') {
        format!("@`{stem}{n}")
    } else {
        format!("`{stem}{n}")
    }
}

impl Type {
    pub fn base(b: Base) -> Type {
        Type::Base(b)
    }

    pub fn var(name: &str) -> Type {
        if name.starts_with('@') {
            Type::ArrVar(name.to_string())
        } else {
            Type::ElemVar(name.to_string())
        }
    }

    pub fn is_array(&self) -> bool {
        matches!(self, Type::Arr(..) | Type::ArrVar(_))
    }

    /// An array of `elem` with the given shape, flattening nested arrays.
    pub fn arr(elem: Type, shape: Index) -> Type {
        match elem {
            Type::Arr(e, inner) => Type::Arr(e, splice(vec![shape, inner])),
            other => Type::Arr(Box::new(other), shape),
        }
    }

    pub fn scalar(elem: Type) -> Type {
        Type::arr(elem, Index::scalar_shape())
    }

    /// Element types in array position stand for scalar arrays.
    pub fn as_array(self) -> Type {
        if self.is_array() {
            self
        } else {
            Type::scalar(self)
        }
    }

    /// Split an array type into its atom (an element type or array
    /// variable) and normalised shape.
    pub fn parts(&self) -> (Type, NShape) {
        match self {
            Type::Arr(e, s) => {
                let (atom, inner) = e.parts();
                (atom, norm_shape(s).concat(&inner))
            }
            other => (other.clone(), NShape::default()),
        }
    }

    pub fn from_parts(atom: Type, shape: &NShape) -> Type {
        if shape.0.is_empty() && matches!(atom, Type::ArrVar(_)) {
            atom
        } else {
            Type::arr(atom, shape.to_index())
        }
    }

    pub fn free_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Type::Base(_) => {}
            Type::ElemVar(v) | Type::ArrVar(v) => {
                out.insert(v.clone());
            }
            Type::Arr(e, s) => {
                e.free_vars(out);
                s.free_vars(out);
            }
            Type::Fn(args, r) => {
                args.iter().for_each(|a| a.free_vars(out));
                r.free_vars(out);
            }
            Type::Forall(vs, b) | Type::Pi(vs, b) | Type::Sigma(vs, b) => {
                let mut inner = BTreeSet::new();
                b.free_vars(&mut inner);
                out.extend(inner.into_iter().filter(|v| !vs.contains(v)));
            }
        }
    }

    pub fn mentions_any(&self, names: &[String]) -> bool {
        let mut vars = BTreeSet::new();
        self.free_vars(&mut vars);
        names.iter().any(|n| vars.contains(n))
    }

    /// Capture-avoiding substitution of types for type variables and
    /// indices for index variables.
    pub fn subst(&self, types: &HashMap<String, Type>, indices: &HashMap<String, Index>) -> Type {
        if types.is_empty() && indices.is_empty() {
            return self.clone();
        }
        match self {
            Type::Base(_) => self.clone(),
            Type::ElemVar(v) | Type::ArrVar(v) => types.get(v).cloned().unwrap_or_else(|| self.clone()),
            Type::Arr(e, s) => Type::arr(e.subst(types, indices), canonical(&s.subst(indices))),
            Type::Fn(args, r) => {
                Type::Fn(args.iter().map(|a| a.subst(types, indices)).collect(), Box::new(r.subst(types, indices)))
            }
            Type::Forall(vs, b) | Type::Pi(vs, b) | Type::Sigma(vs, b) => {
                let mut types = types.clone();
                let mut indices = indices.clone();
                for v in vs {
                    types.remove(v);
                    indices.remove(v);
                }
                let mut incoming = BTreeSet::new();
                types.values().for_each(|t| t.free_vars(&mut incoming));
                indices.values().for_each(|i| i.free_vars(&mut incoming));
                let mut new_vs = Vec::with_capacity(vs.len());
                for v in vs {
                    if incoming.contains(v) {
                        let fresh = fresh_name(v);
                        if matches!(self, Type::Forall(..)) {
                            types.insert(v.clone(), Type::var(&fresh));
                        } else {
                            indices.insert(v.clone(), Index::var(&fresh));
                        }
                        new_vs.push(fresh);
                    } else {
                        new_vs.push(v.clone());
                    }
                }
                let body = Box::new(b.subst(&types, &indices));
                match self {
                    Type::Forall(..) => Type::Forall(new_vs, body),
                    Type::Pi(..) => Type::Pi(new_vs, body),
                    _ => Type::Sigma(new_vs, body),
                }
            }
        }
    }

    /// Representative of the type's equivalence class: binders renamed by
    /// depth, indices normalised, nested arrays flattened.
    pub fn canonical(&self) -> Type {
        self.canon(0, &HashMap::new(), &HashMap::new())
    }

    fn canon(&self, depth: usize, types: &HashMap<String, Type>, indices: &HashMap<String, Index>) -> Type {
        match self {
            Type::Base(_) => self.clone(),
            Type::ElemVar(v) | Type::ArrVar(v) => types.get(v).cloned().unwrap_or_else(|| self.clone()),
            Type::Arr(..) => {
                let (atom, shape) = self.parts();
                let atom = atom.canon(depth, types, indices);
                let shape = norm_shape(&shape.to_index().subst(indices));
                Type::from_parts(atom, &shape)
            }
            Type::Fn(args, r) => Type::Fn(
                args.iter().map(|a| a.clone().as_array().canon(depth, types, indices)).collect(),
                Box::new(r.as_ref().clone().as_array().canon(depth, types, indices)),
            ),
            Type::Forall(vs, b) | Type::Pi(vs, b) | Type::Sigma(vs, b) => {
                let mut types = types.clone();
                let mut indices = indices.clone();
                let mut new_vs = Vec::with_capacity(vs.len());
                for (k, v) in vs.iter().enumerate() {
                    let name = if v.starts_with('@') { format!("@`{}", depth + k) } else { format!("`{}", depth + k) };
                    if matches!(self, Type::Forall(..)) {
                        types.insert(v.clone(), Type::var(&name));
                    } else {
                        indices.insert(v.clone(), Index::var(&name));
                    }
                    new_vs.push(name);
                }
                let body = Box::new(b.as_ref().clone().as_array().canon(depth + vs.len(), &types, &indices));
                match self {
                    Type::Forall(..) => Type::Forall(new_vs, body),
                    Type::Pi(..) => Type::Pi(new_vs, body),
                    _ => Type::Sigma(new_vs, body),
                }
            }
        }
    }

    pub fn to_surface(&self) -> SurfaceForm {
        let binder = |head: &str, vs: &[String], body: &Type| {
            SurfaceForm::paren(vec![
                SurfaceForm::sym(head),
                SurfaceForm::paren(vs.iter().map(|v| SurfaceForm::sym(v.clone())).collect()),
                body.to_surface(),
            ])
        };
        match self {
            Type::Base(b) => SurfaceForm::sym(b.name()),
            Type::ElemVar(v) | Type::ArrVar(v) => SurfaceForm::sym(v.clone()),
            Type::Arr(e, s) => {
                if canonical(s) == Index::scalar_shape() {
                    return e.to_surface();
                }
                let mut items = vec![e.to_surface()];
                match s.to_surface() {
                    SurfaceForm::Bracket { items: inner, .. } => items.extend(inner),
                    other => items.push(other),
                }
                SurfaceForm::bracket(items)
            }
            Type::Fn(args, r) => SurfaceForm::paren(vec![
                SurfaceForm::sym("->"),
                SurfaceForm::paren(args.iter().map(Type::to_surface).collect()),
                r.to_surface(),
            ]),
            Type::Forall(vs, b) => binder("Forall", vs, b),
            Type::Pi(vs, b) => binder("Pi", vs, b),
            Type::Sigma(vs, b) => binder("Sigma", vs, b),
        }
    }

    pub fn parse(form: &SurfaceForm) -> Result<Type> {
        let malformed = |what: &str| Error::at(ErrorKind::MalformedForm, form.pos(), format!("{what}: {form}"));
        match form {
            SurfaceForm::Leaf(tok) => match form.symbol() {
                Some(name) => Ok(Base::from_name(name).map(Type::Base).unwrap_or_else(|| Type::var(name))),
                None => Err(Error::at(ErrorKind::KindError, tok.pos, format!("expected a type, found `{tok}`"))),
            },
            SurfaceForm::Bracket { items, .. } => {
                let (elem, dims) = items.split_first().ok_or_else(|| malformed("empty array type"))?;
                let elem = Type::parse(elem)?;
                let dims = dims.iter().map(Index::parse).collect::<Result<Vec<_>>>()?;
                Ok(Type::arr(elem, splice(dims)))
            }
            SurfaceForm::Paren { items, .. } => {
                let head = items.first().and_then(SurfaceForm::symbol).ok_or_else(|| malformed("bad type"))?;
                let names = |f: &SurfaceForm| -> Result<Vec<String>> {
                    match f {
                        SurfaceForm::Paren { items, .. } => items
                            .iter()
                            .map(|i| i.symbol().map(str::to_string).ok_or_else(|| malformed("binder must be a name")))
                            .collect(),
                        _ => Err(malformed("expected a binder list")),
                    }
                };
                match (head, items.len()) {
                    ("->", 3) => {
                        let args = match &items[1] {
                            SurfaceForm::Paren { items, .. } => {
                                items.iter().map(|a| Type::parse(a).map(Type::as_array)).collect::<Result<Vec<_>>>()?
                            }
                            _ => return Err(malformed("function type needs an argument list")),
                        };
                        Ok(Type::Fn(args, Box::new(Type::parse(&items[2])?.as_array())))
                    }
                    ("Forall", 3) => Ok(Type::Forall(names(&items[1])?, Box::new(Type::parse(&items[2])?.as_array()))),
                    ("Pi", 3) => Ok(Type::Pi(names(&items[1])?, Box::new(Type::parse(&items[2])?.as_array()))),
                    ("Sigma", 3) => Ok(Type::Sigma(names(&items[1])?, Box::new(Type::parse(&items[2])?.as_array()))),
                    ("A", 3) => {
                        let shape = Index::parse_sorted(&items[2], super::index::Sort::Shape)?;
                        Ok(Type::arr(Type::parse(&items[1])?, shape))
                    }
                    _ => Err(malformed("bad type")),
                }
            }
            SurfaceForm::Rerank { .. } => Err(malformed("bad type")),
        }
    }

    pub fn parse_str(src: &str) -> Result<Type> {
        let forms = crate::reader::read(src)?;
        match forms.as_slice() {
            [one] => Type::parse(one),
            _ => Err(Error::new(ErrorKind::MalformedForm, format!("expected one type in `{src}`"))),
        }
    }
}

pub fn type_equal(a: &Type, b: &Type) -> bool {
    a.clone().as_array().canonical() == b.clone().as_array().canonical()
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_surface())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ty(src: &str) -> Type {
        Type::parse_str(src).unwrap()
    }

    #[test]
    fn bracket_sugar_equals_core() {
        assert!(type_equal(&ty("[int 3 4]"), &ty("(A int (shape 3 4))")));
        assert!(type_equal(&ty("[@t 3]"), &ty("(A @t (shape 3))")));
        assert!(type_equal(&ty("int"), &ty("[int]")));
    }

    #[test]
    fn alpha_equivalence() {
        assert!(type_equal(&ty("(Sigma (len) [char len])"), &ty("(Sigma (n) [char n])")));
        assert!(type_equal(&ty("(Forall (@t) (-> (@t) @t))"), &ty("(Forall (@u) (-> (@u) @u))")));
        assert!(!type_equal(&ty("(Pi (a b) [int a b])"), &ty("(Pi (a b) [int b a])")));
    }

    #[test]
    fn sum_order_is_irrelevant() {
        assert!(type_equal(&ty("[int (+ da db)]"), &ty("[int (+ db da)]")));
    }

    #[test]
    fn nested_arrays_flatten() {
        assert!(type_equal(&ty("(A [int 3] (shape 2))"), &ty("[int 2 3]")));
        assert!(type_equal(&ty("[[bool 2 3] 5]"), &ty("[bool 5 2 3]")));
    }

    #[test]
    fn substitution_avoids_capture() {
        let t = ty("(Pi (n) [int m n])");
        let indices = HashMap::from([("m".to_string(), Index::DimVar("n".into()))]);
        let got = t.subst(&HashMap::new(), &indices);
        assert!(type_equal(&got, &ty("(Pi (k) [int n k])")));
        assert!(!type_equal(&got, &ty("(Pi (k) [int k k])")));
    }

    #[test]
    fn instantiating_array_var_flattens() {
        let t = ty("[@t 4]");
        let types = HashMap::from([("@t".to_string(), ty("[int 2]"))]);
        assert!(type_equal(&t.subst(&types, &HashMap::new()), &ty("[int 4 2]")));
    }

    #[test]
    fn printing_uses_sugar() {
        assert_eq!(ty("(A int (shape 3 4))").to_string(), "[int 3 4]");
        assert_eq!(ty("(-> ([int len] [int len]) int)").to_string(), "(-> ([int len] [int len]) int)");
        assert_eq!(ty("[(Sigma (len) [char len]) 5]").to_string(), "[(Sigma (len) [char len]) 5]");
    }

    fn arb_type() -> impl Strategy<Value = Type> {
        let shape = prop::collection::vec(
            prop_oneof![
                (0usize..4).prop_map(Index::Nat),
                prop::sample::select(vec!["a", "b"]).prop_map(|v| Index::DimVar(v.into())),
                prop::sample::select(vec!["@s"]).prop_map(|v| Index::ShapeVar(v.into())),
            ],
            0..3,
        )
        .prop_map(splice);
        let leaf = prop_oneof![
            Just(Type::Base(Base::Int)),
            Just(Type::Base(Base::Bool)),
            Just(Type::ElemVar("t".into())),
            Just(Type::ArrVar("@u".into())),
        ];
        leaf.prop_recursive(3, 16, 3, move |inner| {
            prop_oneof![
                (inner.clone(), shape.clone()).prop_map(|(e, s)| Type::arr(e, s)),
                (prop::collection::vec(inner.clone(), 0..3), inner.clone())
                    .prop_map(|(a, r)| Type::Fn(a.into_iter().map(Type::as_array).collect(), Box::new(r.as_array()))),
                inner.clone().prop_map(|b| Type::Sigma(vec!["a".into()], Box::new(b.as_array()))),
                inner.prop_map(|b| Type::Forall(vec!["t".into()], Box::new(b.as_array()))),
            ]
        })
    }

    proptest! {
        #[test]
        fn equality_is_an_equivalence(a in arb_type(), b in arb_type(), c in arb_type()) {
            prop_assert!(type_equal(&a, &a));
            prop_assert_eq!(type_equal(&a, &b), type_equal(&b, &a));
            if type_equal(&a, &b) && type_equal(&b, &c) {
                prop_assert!(type_equal(&a, &c));
            }
        }

        #[test]
        fn printing_then_parsing_preserves_type(a in arb_type()) {
            let back = Type::parse_str(&a.to_string()).unwrap();
            prop_assert!(type_equal(&a, &back), "{} vs {}", a, back);
        }

        #[test]
        fn canonical_is_idempotent(a in arb_type()) {
            prop_assert_eq!(a.canonical().canonical(), a.canonical());
        }
    }
}
