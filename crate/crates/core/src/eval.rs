//! The evaluator and the rank-polymorphic application rule.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use rayon::prelude::*;

use crate::array::{
    cell_frame, collect_frame, element_count, is_prefix, replicated_index, ArrayValue, Atom, CellRank, Closure,
    Function, Witness,
};
use crate::error::{bail, Error, ErrorKind, Result};
use crate::syntax::{Expr, ExprKind, ParamAnn};
use crate::types::{Index, Type};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Dialect {
    #[default]
    Dynamic,
    Typed,
}

struct Scope {
    vars: RwLock<HashMap<String, ArrayValue>>,
    parent: Option<Env>,
}

/// A chain of lexical scopes. Cloning shares the underlying scopes.
#[derive(Clone)]
pub struct Env(Arc<Scope>);

impl Env {
    pub fn new() -> Env {
        Env(Arc::new(Scope { vars: RwLock::new(HashMap::new()), parent: None }))
    }

    pub fn extend(&self, bindings: impl IntoIterator<Item = (String, ArrayValue)>) -> Env {
        Env(Arc::new(Scope { vars: RwLock::new(bindings.into_iter().collect()), parent: Some(self.clone()) }))
    }

    pub fn lookup(&self, name: &str) -> Option<ArrayValue> {
        let mut scope = Some(self);
        while let Some(env) = scope {
            if let Some(v) = env.0.vars.read().unwrap().get(name) {
                return Some(v.clone());
            }
            scope = env.0.parent.as_ref();
        }
        None
    }

    /// Bind in the innermost scope, replacing any earlier binding there.
    pub fn define(&self, name: impl Into<String>, value: ArrayValue) {
        self.0.vars.write().unwrap().insert(name.into(), value);
    }
}

impl Default for Env {
    fn default() -> Self {
        Env::new()
    }
}

pub struct Interpreter {
    dialect: Dialect,
    pool: Option<Arc<rayon::ThreadPool>>,
}

const WORKER_STACK: usize = 64 << 20;

impl Interpreter {
    pub fn new(dialect: Dialect, parallel_cells: bool) -> Interpreter {
        let pool = parallel_cells.then(|| {
            Arc::new(
                rayon::ThreadPoolBuilder::new()
                    .stack_size(WORKER_STACK)
                    .build()
                    .expect("failed to start worker threads"),
            )
        });
        Interpreter { dialect, pool }
    }

    pub fn dialect(&self) -> Dialect {
        self.dialect
    }

    pub fn parallel(&self) -> bool {
        self.pool.is_some()
    }

    /// Run `f` on the worker pool when parallel mode is on, so nested
    /// fan-out stays on threads with large stacks.
    pub fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        match &self.pool {
            Some(pool) => pool.install(f),
            None => f(),
        }
    }

    pub fn eval(&self, e: &Expr, env: &Env) -> Result<ArrayValue> {
        self.eval_inner(e, env).map_err(|err| err.or_at(e.pos))
    }

    fn eval_inner(&self, e: &Expr, env: &Env) -> Result<ArrayValue> {
        match &e.kind {
            ExprKind::Lit(v) => Ok(v.clone()),
            ExprKind::Frame { dims, items } => {
                let cells = items.iter().map(|i| self.eval(i, env)).collect::<Result<Vec<_>>>()?;
                collect_frame(dims, cells, Some(&[]))
            }
            ExprKind::Var(name) => env
                .lookup(name)
                .ok_or_else(|| Error::at(ErrorKind::UnboundVariable, e.pos, format!("`{name}` is not bound"))),
            ExprKind::App { func, args } => {
                let f = self.eval(func, env)?;
                let args = args.iter().map(|a| self.eval(a, env)).collect::<Result<Vec<_>>>()?;
                self.lift_apply(&f, args)
            }
            ExprKind::Lambda { params, body } => {
                let mut names = Vec::with_capacity(params.len());
                let mut ranks = Vec::with_capacity(params.len());
                for p in params {
                    match &p.ann {
                        ParamAnn::Rank(r) => ranks.push(*r),
                        ParamAnn::Type(_) => bail!(
                            TypedFormInDynamicCode,
                            "parameter `{}` has a type annotation; run it with the typed dialect",
                            p.name
                        ),
                    }
                    names.push(p.name.clone());
                }
                Ok(ArrayValue::scalar(Atom::Func(Arc::new(Function::Closure(Closure {
                    name: None,
                    params: names,
                    ranks,
                    body: body.clone(),
                    env: env.clone(),
                })))))
            }
            ExprKind::If { test, then, otherwise } => {
                if self.condition(test, env)? {
                    self.eval(then, env)
                } else {
                    self.eval(otherwise, env)
                }
            }
            ExprKind::Cond { clauses, otherwise } => {
                for (test, body) in clauses {
                    if self.condition(test, env)? {
                        return self.eval(body, env);
                    }
                }
                self.eval(otherwise, env)
            }
            ExprKind::Let { bindings, body } => {
                let values =
                    bindings.iter().map(|(n, v)| Ok((n.clone(), self.eval(v, env)?))).collect::<Result<Vec<_>>>()?;
                self.eval(body, &env.extend(values))
            }
            ExprKind::LetStar { bindings, body } => {
                let mut scope = env.clone();
                for (n, v) in bindings {
                    let value = self.eval(v, &scope)?;
                    scope = scope.extend([(n.clone(), value)]);
                }
                self.eval(body, &scope)
            }
            ExprKind::Define { name, value } => {
                let v = name_function(self.eval(value, env)?, name);
                env.define(name.clone(), v.clone());
                Ok(v)
            }
            ExprKind::Boxes { ivars, ty, dims, clauses } => {
                let mut cells = Vec::with_capacity(clauses.len());
                for c in clauses {
                    if c.witnesses.len() != ivars.len() {
                        bail!(
                            WitnessArity,
                            "box clause gives {} witnesses for {} index variables",
                            c.witnesses.len(),
                            ivars.len()
                        );
                    }
                    let contents = self.eval(&c.body, env)?;
                    let witnesses = solve_witnesses(ivars, ty, &c.witnesses, contents.shape())?;
                    cells.push(ArrayValue::scalar(Atom::new_box(contents, witnesses)));
                }
                collect_frame(dims, cells, Some(&[]))
            }
            ExprKind::Unbox { subject, binder, ivars, body } => {
                let subject = self.eval(subject, env)?;
                let mut results = Vec::with_capacity(subject.atoms().len());
                for atom in subject.atoms() {
                    let Atom::Box(b) = atom else {
                        bail!(NotABox, "unbox expects boxes, found {}", atom.kind_name());
                    };
                    if b.witnesses.len() != ivars.len() {
                        bail!(
                            WitnessArity,
                            "box carries {} witnesses but unbox binds {}",
                            b.witnesses.len(),
                            ivars.len()
                        );
                    }
                    let mut bindings = vec![(binder.clone(), b.contents.clone())];
                    for (iv, w) in ivars.iter().zip(&b.witnesses) {
                        bindings.push((iv.clone(), witness_value(w)));
                    }
                    results.push(self.eval(body, &env.extend(bindings))?);
                }
                collect_frame(subject.shape(), results, Some(&[]))
            }
            ExprKind::TLambda { .. } | ExprKind::ILambda { .. } | ExprKind::TApp { .. } | ExprKind::IApp { .. } => {
                bail!(TypedFormInDynamicCode, "type and index abstraction or application needs the typed dialect")
            }
        }
    }

    fn condition(&self, test: &Expr, env: &Env) -> Result<bool> {
        let v = self.eval(test, env)?;
        match v.scalar_atom() {
            Some(Atom::Bool(b)) => Ok(*b),
            _ => Err(Error::at(
                ErrorKind::NonScalarCondition,
                test.pos,
                format!("condition must be a scalar boolean, got shape {:?}", v.shape()),
            )),
        }
    }

    /// Apply an array of functions to argument arrays, splitting each
    /// argument into cells of its parameter's rank and mapping over the
    /// principal frame.
    pub fn lift_apply(&self, f: &ArrayValue, args: Vec<ArrayValue>) -> Result<ArrayValue> {
        let funcs = f
            .atoms()
            .iter()
            .map(|a| match a {
                Atom::Func(func) => Ok(func),
                other => Err(Error::new(ErrorKind::NotAFunction, format!("cannot apply a {} atom", other.kind_name()))),
            })
            .collect::<Result<Vec<_>>>()?;
        let Some(first) = funcs.first() else {
            return collect_frame(f.shape(), vec![], Some(&[]));
        };
        let ranks = first.ranks();
        if funcs.iter().any(|g| g.ranks() != ranks) {
            bail!(HeterogeneousFunctionArray, "functions in one application must share arity and cell ranks");
        }
        if args.len() != ranks.len() {
            bail!(
                ArityMismatch,
                "function `{}` takes {} arguments, given {}",
                first.name().unwrap_or("anon"),
                ranks.len(),
                args.len()
            );
        }
        let mut frames: Vec<&[usize]> = Vec::with_capacity(args.len() + 1);
        frames.push(f.shape());
        for (a, r) in args.iter().zip(ranks) {
            frames.push(cell_frame(a, *r)?);
        }
        let principal: Vec<usize> = frames.iter().max_by_key(|fr| fr.len()).unwrap().to_vec();
        if let Some(bad) = frames.iter().find(|fr| !is_prefix(fr, &principal)) {
            bail!(FrameDisagreement, "frame {:?} is not a prefix of the principal frame {:?}", bad, principal);
        }
        if principal.is_empty() {
            return self.apply_function(first, args);
        }
        let frame_lens: Vec<usize> = frames.iter().map(|fr| fr.len()).collect();
        let cell_shapes: Vec<Vec<usize>> =
            args.iter().zip(&frame_lens[1..]).map(|(a, &k)| a.shape()[k..].to_vec()).collect();
        let apply_at = |p: usize| -> Result<ArrayValue> {
            let func = funcs[replicated_index(p, frame_lens[0], &principal)];
            let cells = args
                .iter()
                .zip(&cell_shapes)
                .zip(&frame_lens[1..])
                .map(|((a, cs), &k)| a.cell(replicated_index(p, k, &principal), cs))
                .collect();
            self.apply_function(func, cells)
        };
        let n = element_count(&principal);
        let results: Vec<ArrayValue> = if self.parallel() && n > 1 {
            // Collect every outcome, then report the first failure in
            // frame order, so errors are as deterministic as values.
            let outcomes: Vec<Result<ArrayValue>> = self.install(|| (0..n).into_par_iter().map(apply_at).collect());
            outcomes.into_iter().collect::<Result<_>>()?
        } else {
            (0..n).map(apply_at).collect::<Result<_>>()?
        };
        collect_frame(&principal, results, Some(&[]))
    }

    /// Apply one function to cells that already have its parameter ranks.
    pub fn apply_function(&self, f: &Function, args: Vec<ArrayValue>) -> Result<ArrayValue> {
        match f {
            Function::Builtin(b) => (b.imp)(self, b, &args),
            Function::Closure(c) => {
                let env = c.env.extend(c.params.iter().cloned().zip(args));
                self.eval(&c.body, &env)
            }
        }
    }

    /// Apply a scalar function array to arguments; shorthand used by the
    /// iteration builtins.
    pub fn call(&self, f: &ArrayValue, args: Vec<ArrayValue>) -> Result<ArrayValue> {
        self.lift_apply(f, args)
    }
}

/// Give an anonymous closure the name it is defined under.
fn name_function(v: ArrayValue, name: &str) -> ArrayValue {
    if let Some(Atom::Func(f)) = v.scalar_atom() {
        if let Function::Closure(c) = &**f {
            if c.name.is_none() {
                return ArrayValue::scalar(Atom::Func(Arc::new(Function::Closure(Closure {
                    name: Some(name.to_string()),
                    params: c.params.clone(),
                    ranks: c.ranks.clone(),
                    body: c.body.clone(),
                    env: c.env.clone(),
                }))));
            }
        }
    }
    v
}

/// The value-level stand-in for a witness: a scalar for a dimension, a
/// vector for a shape.
pub fn witness_value(w: &Witness) -> ArrayValue {
    match w {
        Witness::Dim(d) => ArrayValue::int(*d as i64),
        Witness::Shape(s) => ArrayValue::ints(vec![s.len()], s.iter().map(|&d| d as i64)),
    }
}

fn closed_witness(i: &Index) -> Option<Witness> {
    use crate::types::index::{norm_dim, norm_shape, Sort};
    match i.sort() {
        Sort::Dim => norm_dim(i).constant().map(Witness::Dim),
        Sort::Shape => norm_shape(i).concrete().map(Witness::Shape),
    }
}

/// Witnesses for a box: literal ones are used as written; ones that
/// mention (erased) index variables are recovered by matching the boxed
/// type's shape against the contents.
fn solve_witnesses(ivars: &[String], ty: &Type, given: &[Index], shape: &[usize]) -> Result<Vec<Witness>> {
    let closed: Vec<Option<Witness>> = given.iter().map(closed_witness).collect();
    if closed.iter().all(Option::is_some) {
        return Ok(closed.into_iter().map(Option::unwrap).collect());
    }
    let solved = match_shape(ty, shape)?;
    ivars
        .iter()
        .zip(closed)
        .map(|(iv, known)| match known {
            Some(w) => Ok(w),
            None => solved.get(iv).cloned().ok_or_else(|| {
                Error::new(
                    ErrorKind::UnderdeterminedFactoring,
                    format!("cannot recover witness for `{iv}` from contents of shape {shape:?}"),
                )
            }),
        })
        .collect()
}

fn match_shape(ty: &Type, shape: &[usize]) -> Result<HashMap<String, Witness>> {
    use crate::types::index::Seg;
    let (_, pattern) = ty.parts();
    let mut out = HashMap::new();
    let dims = pattern.0.iter().filter(|s| matches!(s, Seg::Dim(_))).count();
    let vars = pattern.0.len() - dims;
    if vars > 1 || (vars == 0 && dims != shape.len()) || dims > shape.len() {
        bail!(UnderdeterminedFactoring, "box contents of shape {shape:?} do not determine the witnesses of {ty}");
    }
    let var_len = shape.len() - dims;
    let mut k = 0;
    for seg in &pattern.0 {
        match seg {
            Seg::Var(v) => {
                out.insert(v.clone(), Witness::Shape(shape[k..k + var_len].to_vec()));
                k += var_len;
            }
            Seg::Dim(d) => {
                let actual = shape[k];
                if d.vars.len() == 1 && d.vars.values().all(|&n| n == 1) && actual >= d.konst {
                    let v = d.vars.keys().next().unwrap();
                    out.insert(v.clone(), Witness::Dim(actual - d.konst));
                }
                k += 1;
            }
        }
    }
    Ok(out)
}

/// The rank a typed parameter erases to: the number of shape segments,
/// or `all` when a shape or array variable leaves it open.
pub fn rank_of_type(t: &Type) -> CellRank {
    let (atom, shape) = t.parts();
    if matches!(atom, Type::ArrVar(_)) || shape.has_shape_var() {
        CellRank::All
    } else {
        CellRank::Nat(shape.0.len())
    }
}
