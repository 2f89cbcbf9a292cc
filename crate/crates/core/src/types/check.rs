//! Type checking for the explicitly typed dialect.
//!
//! Checking and erasure happen in one pass: every rule returns the term's
//! type together with its untyped counterpart. The two are produced
//! together because erasing an instantiated polymorphic function needs
//! the instantiated type, to fix the cell ranks the dynamic evaluator
//! should use for it.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use super::index::{sort_of_name, NShape, Seg};
use super::signatures::signature;
use super::{type_equal, Base, Index, Type};
use crate::array::{Atom, CellRank};
use crate::builtins;
use crate::desugar::desugar_rerank;
use crate::error::{Error, ErrorKind, Pos, Result};
use crate::eval::rank_of_type;
use crate::syntax::{BoxClause, Expr, ExprKind, Param, ParamAnn};

#[derive(Clone, Default)]
struct Scope {
    vals: HashMap<String, Type>,
    tvars: HashSet<String>,
    ivars: HashSet<String>,
}

/// Holds the types of top-level definitions across calls, so a REPL or a
/// multi-form file can refer back to earlier forms.
#[derive(Default)]
pub struct Checker {
    globals: HashMap<String, Type>,
}

fn fail(kind: ErrorKind, pos: Pos, msg: impl Into<String>) -> Error {
    Error::at(kind, pos, msg)
}

enum Resolved {
    Bound(Type),
    Builtin(Type),
}

impl Checker {
    pub fn new() -> Checker {
        Checker::default()
    }

    /// Check a top-level form, returning its type and erased form. A
    /// top-level `define` becomes visible to later forms.
    pub fn check_top(&mut self, e: &Expr) -> Result<(Type, Expr)> {
        let (ty, erased) = self.check(e, &Scope::default())?;
        if let ExprKind::Define { name, .. } = &e.kind {
            self.globals.insert(name.clone(), ty.clone());
        }
        Ok((ty, erased))
    }

    fn resolve(&self, name: &str, sc: &Scope) -> Option<Resolved> {
        if let Some(t) = sc.vals.get(name).or_else(|| self.globals.get(name)) {
            return Some(Resolved::Bound(t.clone()));
        }
        signature(name).map(Resolved::Builtin)
    }

    fn check(&self, e: &Expr, sc: &Scope) -> Result<(Type, Expr)> {
        self.check_inner(e, sc).map_err(|err| err.or_at(e.pos))
    }

    fn check_inner(&self, e: &Expr, sc: &Scope) -> Result<(Type, Expr)> {
        let pos = e.pos;
        let rebuild = |kind| Expr::new(kind, pos);
        match &e.kind {
            ExprKind::Lit(v) => {
                let mut elem: Option<Base> = None;
                for a in v.atoms() {
                    let b = match a {
                        Atom::Int(_) => Base::Int,
                        Atom::Float(_) => Base::Float,
                        Atom::Bool(_) => Base::Bool,
                        Atom::Char(_) => Base::Char,
                        other => {
                            return Err(fail(
                                ErrorKind::KindError,
                                pos,
                                format!("a literal cannot hold a {}", other.kind_name()),
                            ))
                        }
                    };
                    match elem {
                        Some(prev) if prev != b => {
                            return Err(fail(
                                ErrorKind::FrameCellMismatch,
                                pos,
                                format!("literal mixes {} and {} elements", prev.name(), b.name()),
                            ))
                        }
                        _ => elem = Some(b),
                    }
                }
                let Some(elem) = elem else {
                    return Err(fail(ErrorKind::KindError, pos, "the element type of an empty literal is unknown"));
                };
                Ok((Type::arr(Type::Base(elem), Index::dims(v.shape())), e.clone()))
            }
            ExprKind::Frame { dims, items } => {
                let mut first: Option<Type> = None;
                let mut erased = Vec::with_capacity(items.len());
                for item in items {
                    let (t, x) = self.check(item, sc)?;
                    match &first {
                        Some(f) if !type_equal(f, &t) => {
                            return Err(fail(
                                ErrorKind::FrameCellMismatch,
                                item.pos,
                                format!("frame cell has type {t}, expected {f}"),
                            ))
                        }
                        Some(_) => {}
                        None => first = Some(t),
                    }
                    erased.push(x);
                }
                let Some(cell) = first else {
                    return Err(fail(ErrorKind::KindError, pos, "the cell type of an empty frame is unknown"));
                };
                let ty = Type::arr(cell.as_array(), Index::dims(dims));
                Ok((ty, rebuild(ExprKind::Frame { dims: dims.clone(), items: erased })))
            }
            ExprKind::Var(name) => match self.resolve(name, sc) {
                Some(Resolved::Bound(t)) | Some(Resolved::Builtin(t)) => Ok((t, e.clone())),
                None if sc.ivars.contains(name) => Err(fail(
                    ErrorKind::UnboundName,
                    pos,
                    format!("`{name}` is an index variable, not a run-time value"),
                )),
                None => Err(fail(ErrorKind::UnboundName, pos, format!("`{name}` is not bound"))),
            },
            ExprKind::App { func, args } => {
                let (fty, fx) = self.check(func, sc)?;
                let mut arg_tys = Vec::with_capacity(args.len());
                let mut arg_xs = Vec::with_capacity(args.len());
                for a in args {
                    let (t, x) = self.check(a, sc)?;
                    arg_tys.push(t);
                    arg_xs.push(x);
                }
                let ty = apply_type(&fty, &arg_tys, args, pos)?;
                Ok((ty, rebuild(ExprKind::App { func: Box::new(fx), args: arg_xs })))
            }
            ExprKind::Lambda { params, body } => {
                let mut inner = sc.clone();
                let mut tys = Vec::with_capacity(params.len());
                let mut erased = Vec::with_capacity(params.len());
                for p in params {
                    let ParamAnn::Type(t) = &p.ann else {
                        return Err(fail(
                            ErrorKind::KindError,
                            pos,
                            format!("parameter `{}` needs a type in typed code", p.name),
                        ));
                    };
                    well_kinded(t, sc, pos)?;
                    let t = t.clone().as_array();
                    erased.push(Param { name: p.name.clone(), ann: ParamAnn::Rank(rank_of_type(&t)) });
                    inner.vals.insert(p.name.clone(), t.clone());
                    tys.push(t);
                }
                let (bt, bx) = self.check(body, &inner)?;
                let ty = Type::scalar(Type::Fn(tys, Box::new(bt.as_array())));
                Ok((ty, rebuild(ExprKind::Lambda { params: erased, body: Arc::new(bx) })))
            }
            ExprKind::If { test, then, otherwise } => {
                let tx = self.condition(test, sc)?;
                let (a, ax) = self.check(then, sc)?;
                let (b, bx) = self.check(otherwise, sc)?;
                branches_agree(&a, &b, otherwise.pos)?;
                Ok((a, rebuild(ExprKind::If { test: Box::new(tx), then: Box::new(ax), otherwise: Box::new(bx) })))
            }
            ExprKind::Cond { clauses, otherwise } => {
                let (ot, ox) = self.check(otherwise, sc)?;
                let mut erased = Vec::with_capacity(clauses.len());
                for (test, body) in clauses {
                    let tx = self.condition(test, sc)?;
                    let (bt, bx) = self.check(body, sc)?;
                    branches_agree(&ot, &bt, body.pos)?;
                    erased.push((tx, bx));
                }
                Ok((ot, rebuild(ExprKind::Cond { clauses: erased, otherwise: Box::new(ox) })))
            }
            ExprKind::Let { bindings, body } => {
                let mut inner = sc.clone();
                let mut erased = Vec::with_capacity(bindings.len());
                for (n, v) in bindings {
                    let (t, x) = self.check(v, sc)?;
                    inner.vals.insert(n.clone(), t);
                    erased.push((n.clone(), x));
                }
                let (bt, bx) = self.check(body, &inner)?;
                Ok((bt, rebuild(ExprKind::Let { bindings: erased, body: Box::new(bx) })))
            }
            ExprKind::LetStar { bindings, body } => {
                let mut inner = sc.clone();
                let mut erased = Vec::with_capacity(bindings.len());
                for (n, v) in bindings {
                    let (t, x) = self.check(v, &inner)?;
                    inner.vals.insert(n.clone(), t);
                    erased.push((n.clone(), x));
                }
                let (bt, bx) = self.check(body, &inner)?;
                Ok((bt, rebuild(ExprKind::LetStar { bindings: erased, body: Box::new(bx) })))
            }
            ExprKind::Define { name, value } => {
                let (t, x) = self.check(value, sc)?;
                Ok((t, rebuild(ExprKind::Define { name: name.clone(), value: Box::new(x) })))
            }
            ExprKind::TLambda { vars, body } => {
                let mut inner = sc.clone();
                inner.tvars.extend(vars.iter().cloned());
                let (bt, bx) = self.check(body, &inner)?;
                Ok((Type::scalar(Type::Forall(vars.clone(), Box::new(bt.as_array()))), bx))
            }
            ExprKind::ILambda { vars, body } => {
                let mut inner = sc.clone();
                inner.ivars.extend(vars.iter().cloned());
                let (bt, bx) = self.check(body, &inner)?;
                Ok((Type::scalar(Type::Pi(vars.clone(), Box::new(bt.as_array()))), bx))
            }
            ExprKind::TApp { func, types } => {
                let (fty, fx) = self.check(func, sc)?;
                let (atom, frame) = fty.parts();
                let Type::Forall(vars, body) = atom else {
                    return Err(fail(ErrorKind::NotPolymorphic, pos, format!("t-app of a non-polymorphic {fty}")));
                };
                scalar_frame(&frame, ErrorKind::NotPolymorphic, &fty, pos)?;
                if vars.len() != types.len() {
                    return Err(fail(
                        ErrorKind::KindError,
                        pos,
                        format!("{} type arguments given for {} type parameters", types.len(), vars.len()),
                    ));
                }
                let mut map = HashMap::new();
                for (v, t) in vars.iter().zip(types) {
                    well_kinded(t, sc, pos)?;
                    let t = if v.starts_with('@') {
                        t.clone().as_array()
                    } else if t.is_array() {
                        return Err(fail(
                            ErrorKind::KindError,
                            pos,
                            format!("element type variable `{v}` cannot stand for the array type {t}"),
                        ));
                    } else {
                        t.clone()
                    };
                    map.insert(v.clone(), t);
                }
                let ty = body.subst(&map, &HashMap::new());
                Ok((ty.clone(), self.instance(func, fx, &ty, sc)))
            }
            ExprKind::IApp { func, indices } => {
                let (fty, fx) = self.check(func, sc)?;
                let (atom, frame) = fty.parts();
                let Type::Pi(vars, body) = atom else {
                    return Err(fail(ErrorKind::NotIndexed, pos, format!("i-app of a non-indexed {fty}")));
                };
                scalar_frame(&frame, ErrorKind::NotIndexed, &fty, pos)?;
                if vars.len() != indices.len() {
                    return Err(fail(
                        ErrorKind::SortError,
                        pos,
                        format!("{} indices given for {} index parameters", indices.len(), vars.len()),
                    ));
                }
                let mut map = HashMap::new();
                for (v, i) in vars.iter().zip(indices) {
                    index_in_scope(i, sc, pos)?;
                    if i.sort() != sort_of_name(v) {
                        return Err(fail(
                            ErrorKind::SortError,
                            pos,
                            format!("index parameter `{v}` is a {}, given the {} `{i}`", sort_of_name(v), i.sort()),
                        ));
                    }
                    map.insert(v.clone(), i.clone());
                }
                let ty = body.subst(&HashMap::new(), &map);
                Ok((ty.clone(), self.instance(func, fx, &ty, sc)))
            }
            ExprKind::Boxes { ivars, ty, dims, clauses } => {
                let mut inner = sc.clone();
                inner.ivars.extend(ivars.iter().cloned());
                well_kinded(ty, &inner, pos)?;
                let ty = ty.clone().as_array();
                let mut erased = Vec::with_capacity(clauses.len());
                for c in clauses {
                    if c.witnesses.len() != ivars.len() {
                        return Err(fail(
                            ErrorKind::WitnessArity,
                            c.body.pos,
                            format!("{} witnesses given for {} index variables", c.witnesses.len(), ivars.len()),
                        ));
                    }
                    let mut map = HashMap::new();
                    for (v, w) in ivars.iter().zip(&c.witnesses) {
                        index_in_scope(w, sc, c.body.pos)?;
                        if w.sort() != sort_of_name(v) {
                            return Err(fail(
                                ErrorKind::SortError,
                                c.body.pos,
                                format!("witness `{w}` for `{v}` must be a {}", sort_of_name(v)),
                            ));
                        }
                        map.insert(v.clone(), w.clone());
                    }
                    let want = ty.subst(&HashMap::new(), &map);
                    let (got, bx) = self.check(&c.body, sc)?;
                    if !type_equal(&want, &got) {
                        return Err(fail(
                            ErrorKind::ClauseTypeMismatch,
                            c.body.pos,
                            format!("box clause has type {got}, expected {want}"),
                        ));
                    }
                    erased.push(BoxClause { witnesses: c.witnesses.clone(), body: bx });
                }
                let result = Type::arr(Type::Sigma(ivars.clone(), Box::new(ty.clone())), Index::dims(dims));
                Ok((result, rebuild(ExprKind::Boxes { ivars: ivars.clone(), ty, dims: dims.clone(), clauses: erased })))
            }
            ExprKind::Unbox { subject, binder, ivars, body } => {
                let (st, sx) = self.check(subject, sc)?;
                let (atom, frame) = st.parts();
                let Type::Sigma(bound, contents) = atom else {
                    return Err(fail(ErrorKind::NotABox, subject.pos, format!("cannot unbox a value of type {st}")));
                };
                if bound.len() != ivars.len() {
                    return Err(fail(
                        ErrorKind::WitnessArity,
                        pos,
                        format!("box type {st} hides {} indices; unbox binds {}", bound.len(), ivars.len()),
                    ));
                }
                let mut map = HashMap::new();
                for (b, v) in bound.iter().zip(ivars) {
                    if sort_of_name(b) != sort_of_name(v) {
                        return Err(fail(
                            ErrorKind::SortError,
                            pos,
                            format!("`{v}` cannot bind the {} witness `{b}`", sort_of_name(b)),
                        ));
                    }
                    map.insert(b.clone(), Index::var(v));
                }
                let mut inner = sc.clone();
                inner.ivars.extend(ivars.iter().cloned());
                inner.vals.insert(binder.clone(), contents.subst(&HashMap::new(), &map));
                let (bt, bx) = self.check(body, &inner)?;
                if bt.mentions_any(ivars) {
                    return Err(fail(
                        ErrorKind::EscapingIndexVariable,
                        body.pos,
                        format!("unbox body type {bt} mentions an index variable bound by the unbox"),
                    ));
                }
                let ty = Type::from_parts(bt.parts().0, &frame.concat(&bt.parts().1));
                Ok((
                    ty,
                    rebuild(ExprKind::Unbox {
                        subject: Box::new(sx),
                        binder: binder.clone(),
                        ivars: ivars.clone(),
                        body: Box::new(bx),
                    }),
                ))
            }
        }
    }

    fn condition(&self, test: &Expr, sc: &Scope) -> Result<Expr> {
        let (t, x) = self.check(test, sc)?;
        if !type_equal(&t, &Type::Base(Base::Bool)) {
            return Err(fail(
                ErrorKind::NonScalarCondition,
                test.pos,
                format!("condition has type {t}, expected bool"),
            ));
        }
        Ok(x)
    }

    /// Erase an instantiation. Once it yields a function whose parameter
    /// ranks are fixed, the erased function is reranked to those ranks,
    /// since the uninstantiated code may have consumed whole arguments.
    fn instance(&self, func: &Expr, erased: Expr, ty: &Type, sc: &Scope) -> Expr {
        let (atom, frame) = ty.parts();
        let Type::Fn(params, _) = atom else {
            return erased;
        };
        if !frame.0.is_empty() {
            return erased;
        }
        let ranks: Vec<CellRank> = params.iter().map(rank_of_type).collect();
        if let Some(b) = head_builtin(func).filter(|n| !sc.vals.contains_key(*n) && !self.globals.contains_key(*n)) {
            if builtins::lookup(b).is_some_and(|b| b.ranks == ranks.as_slice()) {
                return erased;
            }
        }
        desugar_rerank(&ranks, erased)
    }
}

/// The variable at the bottom of a chain of instantiations, if any.
fn head_builtin(e: &Expr) -> Option<&str> {
    match &e.kind {
        ExprKind::Var(n) => Some(n),
        ExprKind::TApp { func, .. } | ExprKind::IApp { func, .. } => head_builtin(func),
        _ => None,
    }
}

fn scalar_frame(frame: &NShape, kind: ErrorKind, ty: &Type, pos: Pos) -> Result<()> {
    if frame.0.is_empty() {
        Ok(())
    } else {
        Err(fail(kind, pos, format!("cannot instantiate an array of abstractions, {ty}")))
    }
}

fn branches_agree(a: &Type, b: &Type, pos: Pos) -> Result<()> {
    if type_equal(a, b) {
        Ok(())
    } else {
        Err(fail(ErrorKind::BranchTypeMismatch, pos, format!("branches have types {a} and {b}")))
    }
}

fn index_in_scope(i: &Index, sc: &Scope, pos: Pos) -> Result<()> {
    let mut vars = std::collections::BTreeSet::new();
    i.free_vars(&mut vars);
    match vars.into_iter().find(|v| !sc.ivars.contains(v)) {
        Some(v) => Err(fail(ErrorKind::KindError, pos, format!("index variable `{v}` is not bound"))),
        None => Ok(()),
    }
}

fn well_kinded(t: &Type, sc: &Scope, pos: Pos) -> Result<()> {
    match t {
        Type::Base(_) => Ok(()),
        Type::ElemVar(v) | Type::ArrVar(v) => {
            if sc.tvars.contains(v) {
                Ok(())
            } else {
                Err(fail(ErrorKind::KindError, pos, format!("type variable `{v}` is not bound")))
            }
        }
        Type::Arr(e, s) => {
            well_kinded(e, sc, pos)?;
            index_in_scope(s, sc, pos)
        }
        Type::Fn(args, r) => {
            for a in args {
                well_kinded(a, sc, pos)?;
            }
            well_kinded(r, sc, pos)
        }
        Type::Forall(vs, b) => {
            let mut inner = sc.clone();
            inner.tvars.extend(vs.iter().cloned());
            well_kinded(b, &inner, pos)
        }
        Type::Pi(vs, b) | Type::Sigma(vs, b) => {
            let mut inner = sc.clone();
            inner.ivars.extend(vs.iter().cloned());
            well_kinded(b, &inner, pos)
        }
    }
}

/// The frame left after matching `cell` against the end of `arg`.
fn suffix_frame(arg: &NShape, cell: &NShape, pos: Pos) -> Result<NShape> {
    let (a, c) = (&arg.0, &cell.0);
    let involves_var = arg.has_shape_var() || cell.has_shape_var();
    let mismatch = |msg: String| {
        let kind = if involves_var { ErrorKind::UnderdeterminedFactoring } else { ErrorKind::CellSuffixMismatch };
        Err(fail(kind, pos, msg))
    };
    if c.len() > a.len() {
        return mismatch(format!(
            "argument shape {} is too short for cells of shape {}",
            arg.to_index(),
            cell.to_index()
        ));
    }
    let split = a.len() - c.len();
    if a[split..] != c[..] {
        return mismatch(format!(
            "argument shape {} does not end in the cell shape {}",
            arg.to_index(),
            cell.to_index()
        ));
    }
    Ok(NShape(a[..split].to_vec()))
}

fn is_prefix(short: &[Seg], long: &[Seg]) -> bool {
    short.len() <= long.len() && long[..short.len()] == short[..]
}

fn apply_type(fty: &Type, args: &[Type], arg_exprs: &[Expr], pos: Pos) -> Result<Type> {
    let (atom, fframe) = fty.parts();
    let Type::Fn(params, result) = atom else {
        return Err(fail(ErrorKind::NotAFunction, pos, format!("cannot apply a value of type {fty}")));
    };
    if params.len() != args.len() {
        return Err(fail(
            ErrorKind::ArityMismatch,
            pos,
            format!("function of type {fty} takes {} arguments, given {}", params.len(), args.len()),
        ));
    }
    let mut frames = vec![fframe];
    for ((p, a), ae) in params.iter().zip(args).zip(arg_exprs) {
        let (patom, pcell) = p.parts();
        let (aatom, ashape) = a.parts();
        if !type_equal(&patom, &aatom) {
            return Err(fail(
                ErrorKind::ArgumentTypeMismatch,
                ae.pos,
                format!("argument of type {a} where cells of type {p} are expected"),
            ));
        }
        frames.push(suffix_frame(&ashape, &pcell, ae.pos)?);
    }
    let principal = frames.iter().max_by_key(|f| f.0.len()).unwrap().clone();
    if let Some(bad) = frames.iter().find(|f| !is_prefix(&f.0, &principal.0)) {
        return Err(fail(
            ErrorKind::FrameDisagreement,
            pos,
            format!("frame {} is not a prefix of the principal frame {}", bad.to_index(), principal.to_index()),
        ));
    }
    let (ratom, rshape) = result.parts();
    Ok(Type::from_parts(ratom, &principal.concat(&rshape)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::desugar::desugar;
    use crate::reader::read;

    fn check_all(src: &str) -> Result<Vec<Type>> {
        let mut c = Checker::new();
        let mut out = Vec::new();
        for form in read(src)? {
            out.push(c.check_top(&desugar(&form)?)?.0);
        }
        Ok(out)
    }

    fn last(src: &str) -> Type {
        check_all(src).unwrap().pop().unwrap()
    }

    fn ty(src: &str) -> Type {
        Type::parse_str(src).unwrap()
    }

    fn rejects(src: &str) -> ErrorKind {
        check_all(src).unwrap_err().kind
    }

    #[test]
    fn double_is_int_to_int() {
        assert!(type_equal(&last("(fn ([i int]) (+ i i))"), &ty("(-> (int) int)")));
        assert!(type_equal(&last("(define (double [i int]) (+ i i)) (double [3 2])"), &ty("[int 2]")));
    }

    #[test]
    fn identity_instantiates() {
        let t = last("(define identity (t-fn (@t) (fn ([x @t]) x))) (t-app identity [bool 2 3])");
        assert!(type_equal(&t, &ty("(-> ([bool 2 3]) [bool 2 3])")));
    }

    #[test]
    fn append_instantiation() {
        let t = last("(fn ([a1 [bool 2 3 5]] [a2 [bool 7 3 5]]) ((t-app (i-app append 2 7 [3 5]) bool) a1 a2))");
        assert!(type_equal(&t, &ty("(-> ([bool 2 3 5] [bool 7 3 5]) [bool 9 3 5])")));
    }

    #[test]
    fn reduce_planes() {
        let t = last("(fn ([A [int 5 7 4]]) ((t-app (i-app reduce 4 [7 4] []) int) + A))");
        assert!(type_equal(&t, &ty("(-> ([int 5 7 4]) [int 7 4])")));
    }

    #[test]
    fn weekdays_and_filter() {
        let t = last(
            "(boxes (len) [char len] [5] ((6) \"Monday\") ((7) \"Tuesday\") ((9) \"Wednesday\") \
             ((8) \"Thursday\") ((6) \"Friday\"))",
        );
        assert!(type_equal(&t, &ty("[(Sigma (len) [char len]) 5]")));
        let t = last(
            "((t-app (i-app filter 5 [3]) int) [#t #f #f #t #t] \
              [[0 1 2] [16 17 18] [9 10 11] [22 23 24] [96 97 98]])",
        );
        assert!(type_equal(&t, &ty("(Sigma (db) [int db 3])")));
    }

    #[test]
    fn rejections() {
        assert_eq!(rejects("(+ [1 2 3] [[1 2 3] [4 5 6]])"), ErrorKind::FrameDisagreement);
        assert_eq!(rejects("(+ 1 #t)"), ErrorKind::ArgumentTypeMismatch);
        assert_eq!(rejects("(if 1 2 3)"), ErrorKind::NonScalarCondition);
        assert_eq!(rejects("(if #t 2 #f)"), ErrorKind::BranchTypeMismatch);
        assert_eq!(rejects("(t-app + int)"), ErrorKind::NotPolymorphic);
        assert_eq!(rejects("(i-app + 3)"), ErrorKind::NotIndexed);
        assert_eq!(rejects("(i-app length [3] [])"), ErrorKind::SortError);
        assert_eq!(rejects("(box ((len 2)) [int len] [1 2 3])"), ErrorKind::ClauseTypeMismatch);
        assert_eq!(rejects("(unbox 5 (x n) x)"), ErrorKind::NotABox);
        assert_eq!(rejects("(fn ([x [t 3]]) x)"), ErrorKind::KindError);
        assert_eq!(rejects("((fn ([v [int 3]]) v) [1 2])"), ErrorKind::CellSuffixMismatch);
    }

    #[test]
    fn index_variable_is_not_a_value() {
        let src = "(define w (boxes (len) [char len] [2] ((2) \"ab\") ((1) \"c\"))) (unbox w (day len) (= 6 len))";
        assert_eq!(rejects(src), ErrorKind::UnboundName);
    }

    #[test]
    fn escaping_witness_is_rejected() {
        assert_eq!(rejects("(unbox (box ((len 3)) [int len] [8 23 0]) (v len) v)"), ErrorKind::EscapingIndexVariable);
    }
}
