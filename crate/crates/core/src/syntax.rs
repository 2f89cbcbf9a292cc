//! Core expressions produced by the desugarer.

use std::sync::Arc;

use crate::array::{ArrayValue, Atom, CellRank};
use crate::error::Pos;
use crate::format::format_float;
use crate::reader::{SurfaceForm, TokenKind};
use crate::types::{Index, Type};

#[derive(Debug, Clone, PartialEq)]
pub enum ParamAnn {
    Rank(CellRank),
    Type(Type),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Param {
    pub name: String,
    pub ann: ParamAnn,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoxClause {
    pub witnesses: Vec<Index>,
    pub body: Expr,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    Lit(ArrayValue),
    Frame { dims: Vec<usize>, items: Vec<Expr> },
    Var(String),
    App { func: Box<Expr>, args: Vec<Expr> },
    Lambda { params: Vec<Param>, body: Arc<Expr> },
    If { test: Box<Expr>, then: Box<Expr>, otherwise: Box<Expr> },
    Cond { clauses: Vec<(Expr, Expr)>, otherwise: Box<Expr> },
    Let { bindings: Vec<(String, Expr)>, body: Box<Expr> },
    LetStar { bindings: Vec<(String, Expr)>, body: Box<Expr> },
    Define { name: String, value: Box<Expr> },
    TLambda { vars: Vec<String>, body: Box<Expr> },
    ILambda { vars: Vec<String>, body: Box<Expr> },
    TApp { func: Box<Expr>, types: Vec<Type> },
    IApp { func: Box<Expr>, indices: Vec<Index> },
    Boxes { ivars: Vec<String>, ty: Type, dims: Vec<usize>, clauses: Vec<BoxClause> },
    Unbox { subject: Box<Expr>, binder: String, ivars: Vec<String>, body: Box<Expr> },
}

/// Positions are carried for diagnostics only and ignored by equality.
#[derive(Debug, Clone)]
pub struct Expr {
    pub kind: ExprKind,
    pub pos: Pos,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Expr {
    pub fn new(kind: ExprKind, pos: Pos) -> Self {
        Expr { kind, pos }
    }

    pub fn var(name: impl Into<String>, pos: Pos) -> Self {
        Expr::new(ExprKind::Var(name.into()), pos)
    }

    /// Render back to surface syntax that desugars to this expression.
    pub fn to_surface(&self) -> SurfaceForm {
        use SurfaceForm as S;
        let sym = |s: &str| S::sym(s);
        let names = |vs: &[String]| S::paren(vs.iter().map(|v| S::sym(v.clone())).collect());
        let bindings = |bs: &[(String, Expr)]| {
            S::paren(bs.iter().map(|(n, e)| S::paren(vec![S::sym(n.clone()), e.to_surface()])).collect())
        };
        let dims_form = |dims: &[usize]| S::bracket(dims.iter().map(S::int).collect());
        match &self.kind {
            ExprKind::Lit(v) => {
                if let Some(a) = v.scalar_atom() {
                    return atom_surface(a);
                }
                let mut items = vec![sym("array"), dims_form(v.shape())];
                items.extend(v.atoms().iter().map(atom_surface));
                S::paren(items)
            }
            ExprKind::Frame { dims, items } => {
                let mut out = vec![sym("frame"), dims_form(dims)];
                out.extend(items.iter().map(Expr::to_surface));
                S::paren(out)
            }
            ExprKind::Var(v) => S::sym(v.clone()),
            ExprKind::App { func, args } => {
                let mut out = vec![func.to_surface()];
                out.extend(args.iter().map(Expr::to_surface));
                S::paren(out)
            }
            ExprKind::Lambda { params, body } => {
                let ps = params
                    .iter()
                    .map(|p| {
                        let ann = match &p.ann {
                            ParamAnn::Rank(CellRank::Nat(n)) => S::int(n),
                            ParamAnn::Rank(CellRank::All) => sym("all"),
                            ParamAnn::Type(t) => t.to_surface(),
                        };
                        S::bracket(vec![S::sym(p.name.clone()), ann])
                    })
                    .collect();
                S::paren(vec![sym("fn"), S::paren(ps), body.to_surface()])
            }
            ExprKind::If { test, then, otherwise } => {
                S::paren(vec![sym("if"), test.to_surface(), then.to_surface(), otherwise.to_surface()])
            }
            ExprKind::Cond { clauses, otherwise } => {
                let mut out = vec![sym("cond")];
                out.extend(clauses.iter().map(|(t, e)| S::paren(vec![t.to_surface(), e.to_surface()])));
                out.push(S::paren(vec![sym("else"), otherwise.to_surface()]));
                S::paren(out)
            }
            ExprKind::Let { bindings: bs, body } => S::paren(vec![sym("let"), bindings(bs), body.to_surface()]),
            ExprKind::LetStar { bindings: bs, body } => S::paren(vec![sym("let*"), bindings(bs), body.to_surface()]),
            ExprKind::Define { name, value } => S::paren(vec![sym("define"), S::sym(name.clone()), value.to_surface()]),
            ExprKind::TLambda { vars, body } => S::paren(vec![sym("t-fn"), names(vars), body.to_surface()]),
            ExprKind::ILambda { vars, body } => S::paren(vec![sym("i-fn"), names(vars), body.to_surface()]),
            ExprKind::TApp { func, types } => {
                let mut out = vec![sym("t-app"), func.to_surface()];
                out.extend(types.iter().map(Type::to_surface));
                S::paren(out)
            }
            ExprKind::IApp { func, indices } => {
                let mut out = vec![sym("i-app"), func.to_surface()];
                out.extend(indices.iter().map(Index::to_surface));
                S::paren(out)
            }
            ExprKind::Boxes { ivars, ty, dims, clauses } => {
                let mut out = vec![sym("boxes"), names(ivars), ty.to_surface(), dims_form(dims)];
                out.extend(clauses.iter().map(|c| {
                    S::paren(vec![S::paren(c.witnesses.iter().map(Index::to_surface).collect()), c.body.to_surface()])
                }));
                S::paren(out)
            }
            ExprKind::Unbox { subject, binder, ivars, body } => {
                let mut bs = vec![S::sym(binder.clone())];
                bs.extend(ivars.iter().map(|v| S::sym(v.clone())));
                S::paren(vec![sym("unbox"), subject.to_surface(), S::paren(bs), body.to_surface()])
            }
        }
    }
}

fn atom_surface(a: &Atom) -> SurfaceForm {
    match a {
        Atom::Int(n) => SurfaceForm::int(n),
        Atom::Float(x) => SurfaceForm::atom(TokenKind::Float, format_float(*x)),
        Atom::Bool(b) => SurfaceForm::atom(TokenKind::Bool, if *b { "#t" } else { "#f" }),
        Atom::Char(c) => SurfaceForm::atom(TokenKind::Char, c.to_string()),
        // Literals never hold these; print something readable regardless.
        Atom::Func(f) => SurfaceForm::sym(f.name().unwrap_or("anon")),
        Atom::Box(_) => SurfaceForm::sym("box"),
    }
}
