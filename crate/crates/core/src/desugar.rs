//! Rewrites surface forms into core expressions.

use std::collections::HashSet;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use crate::array::{element_count, ArrayValue, Atom, CellRank};
use crate::error::{Error, ErrorKind, Pos, Result};
use crate::reader::{SurfaceForm, Token, TokenKind};
use crate::syntax::{BoxClause, Expr, ExprKind, Param, ParamAnn};
use crate::types::{Index, Type};

static FRESH: AtomicUsize = AtomicUsize::new(0);

// The backtick cannot appear in source symbols, so these never collide.
fn fresh(stem: &str) -> String {
    format!("`{stem}{}", FRESH.fetch_add(1, Ordering::Relaxed))
}

fn err(kind: ErrorKind, pos: Pos, msg: impl Into<String>) -> Error {
    Error::at(kind, pos, msg)
}

fn malformed(form: &SurfaceForm, what: &str) -> Error {
    err(ErrorKind::MalformedForm, form.pos(), format!("{what}: {form}"))
}

/// Desugar every top-level form.
pub fn desugar_program(forms: &[SurfaceForm]) -> Result<Vec<Expr>> {
    forms.iter().map(desugar).collect()
}

pub fn desugar(form: &SurfaceForm) -> Result<Expr> {
    let pos = form.pos();
    match form {
        SurfaceForm::Leaf(tok) => leaf(tok),
        SurfaceForm::Bracket { items, .. } => {
            let items = items.iter().map(desugar).collect::<Result<Vec<_>>>()?;
            frame(vec![items.len()], items, pos)
        }
        SurfaceForm::Rerank { ranks, target, .. } => {
            let ranks = ranks.iter().map(parse_rank).collect::<Result<Vec<_>>>()?;
            Ok(desugar_rerank(&ranks, desugar(target)?))
        }
        SurfaceForm::Paren { items, .. } => {
            let Some(head) = items.first() else {
                return Err(malformed(form, "empty application"));
            };
            match head.symbol() {
                Some(kw) if is_keyword(kw) => special(kw, form, &items[1..]),
                _ => Ok(Expr::new(
                    ExprKind::App {
                        func: Box::new(desugar(head)?),
                        args: items[1..].iter().map(desugar).collect::<Result<_>>()?,
                    },
                    pos,
                )),
            }
        }
    }
}

/// `~(r …)f` as a let-bound η-expansion, so `f` is evaluated once.
pub fn desugar_rerank(ranks: &[CellRank], target: Expr) -> Expr {
    let pos = target.pos;
    let f = fresh("f");
    let vars: Vec<String> = ranks.iter().map(|_| fresh("v")).collect();
    let params = vars.iter().zip(ranks).map(|(v, r)| Param { name: v.clone(), ann: ParamAnn::Rank(*r) }).collect();
    let call = Expr::new(
        ExprKind::App {
            func: Box::new(Expr::var(f.clone(), pos)),
            args: vars.iter().map(|v| Expr::var(v.clone(), pos)).collect(),
        },
        pos,
    );
    let lambda = Expr::new(ExprKind::Lambda { params, body: Arc::new(call) }, pos);
    Expr::new(ExprKind::Let { bindings: vec![(f, target)], body: Box::new(lambda) }, pos)
}

const KEYWORDS: [&str; 15] = [
    "define", "fn", "t-fn", "i-fn", "t-app", "i-app", "if", "cond", "let", "let*", "array", "frame", "box", "boxes",
    "unbox",
];

fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

fn parse_rank(form: &SurfaceForm) -> Result<CellRank> {
    if form.is_symbol("all") {
        return Ok(CellRank::All);
    }
    match form.leaf() {
        Some(tok) if tok.kind == TokenKind::Int => tok
            .text
            .parse::<usize>()
            .map(CellRank::Nat)
            .map_err(|_| malformed(form, "cell rank must be a natural number")),
        _ => Err(malformed(form, "cell rank must be a natural number or `all`")),
    }
}

fn literal_atom(tok: &Token) -> Result<Option<Atom>> {
    let bad = |what: &str| err(ErrorKind::MalformedForm, tok.pos, format!("{what} `{}`", tok.text));
    Ok(Some(match tok.kind {
        TokenKind::Int => Atom::Int(tok.text.parse().map_err(|_| bad("integer literal out of range"))?),
        TokenKind::Float => Atom::Float(tok.text.parse().map_err(|_| bad("bad float literal"))?),
        TokenKind::Bool => Atom::Bool(tok.text == "#t"),
        TokenKind::Char => Atom::Char(tok.text.chars().next().ok_or_else(|| bad("empty character"))?),
        _ => return Ok(None),
    }))
}

fn leaf(tok: &Token) -> Result<Expr> {
    if let Some(atom) = literal_atom(tok)? {
        return Ok(Expr::new(ExprKind::Lit(ArrayValue::scalar(atom)), tok.pos));
    }
    match tok.kind {
        TokenKind::Str => {
            let chars: Vec<Atom> = tok.text.chars().map(Atom::Char).collect();
            Ok(Expr::new(ExprKind::Lit(ArrayValue::vector(chars)), tok.pos))
        }
        TokenKind::Symbol if is_keyword(&tok.text) => {
            Err(err(ErrorKind::MalformedForm, tok.pos, format!("keyword `{}` used as a value", tok.text)))
        }
        TokenKind::Symbol => Ok(Expr::var(tok.text.clone(), tok.pos)),
        _ => Err(err(ErrorKind::MalformedForm, tok.pos, format!("unexpected `{}`", tok.text))),
    }
}

/// A frame of subexpressions, collapsed to a single literal when every
/// child is a literal.
fn frame(dims: Vec<usize>, items: Vec<Expr>, pos: Pos) -> Result<Expr> {
    if element_count(&dims) != items.len() {
        return Err(err(
            ErrorKind::BadFrameArity,
            pos,
            format!("frame {dims:?} needs {} expressions, found {}", element_count(&dims), items.len()),
        ));
    }
    let lits: Option<Vec<&ArrayValue>> = items
        .iter()
        .map(|e| match &e.kind {
            ExprKind::Lit(v) => Some(v),
            _ => None,
        })
        .collect();
    if let Some(lits) = lits {
        if let Some(first) = lits.first() {
            if let Some(odd) = lits.iter().find(|l| l.shape() != first.shape()) {
                return Err(err(
                    ErrorKind::RaggedLiteral,
                    pos,
                    format!("array elements have shapes {:?} and {:?}", first.shape(), odd.shape()),
                ));
            }
        }
        let cell_shape = lits.first().map(|l| l.shape().to_vec()).unwrap_or_default();
        let atoms: Vec<Atom> = lits.iter().flat_map(|l| l.atoms().iter().cloned()).collect();
        let mut shape = dims;
        shape.extend(cell_shape);
        return Ok(Expr::new(ExprKind::Lit(ArrayValue::new(shape, atoms)), pos));
    }
    Ok(Expr::new(ExprKind::Frame { dims, items }, pos))
}

fn dims_of(form: &SurfaceForm) -> Result<Vec<usize>> {
    match form {
        SurfaceForm::Bracket { items, .. } => items
            .iter()
            .map(|d| match d.leaf() {
                Some(tok) if tok.kind == TokenKind::Int => {
                    tok.text.parse::<usize>().map_err(|_| malformed(d, "dimension must be natural"))
                }
                _ => Err(malformed(d, "dimension must be a natural literal")),
            })
            .collect(),
        _ => Err(malformed(form, "expected a bracketed shape")),
    }
}

fn name_of(form: &SurfaceForm) -> Result<String> {
    match form.symbol() {
        Some(s) if !is_keyword(s) => Ok(s.to_string()),
        _ => Err(malformed(form, "expected a name")),
    }
}

fn name_list(form: &SurfaceForm) -> Result<Vec<String>> {
    match form {
        SurfaceForm::Paren { items, .. } => items.iter().map(name_of).collect(),
        _ => Err(malformed(form, "expected a parenthesised name list")),
    }
}

fn list_items(form: &SurfaceForm) -> Option<&[SurfaceForm]> {
    match form {
        SurfaceForm::Paren { items, .. } | SurfaceForm::Bracket { items, .. } => Some(items),
        _ => None,
    }
}

fn param(form: &SurfaceForm) -> Result<Param> {
    if let Some(name) = form.symbol() {
        return Ok(Param { name: name_of(form).map(|_| name.to_string())?, ann: ParamAnn::Rank(CellRank::All) });
    }
    match list_items(form) {
        Some([name, ann]) => {
            let name = name_of(name)?;
            let ann = match ann.leaf() {
                Some(tok) if tok.kind == TokenKind::Int || tok.is_symbol("all") => ParamAnn::Rank(parse_rank(ann)?),
                _ => ParamAnn::Type(Type::parse(ann)?),
            };
            Ok(Param { name, ann })
        }
        _ => Err(malformed(form, "parameter must be `[name rank]` or `[name type]`")),
    }
}

fn params(form: &SurfaceForm) -> Result<Vec<Param>> {
    let items = match form {
        SurfaceForm::Paren { items, .. } => items,
        _ => return Err(malformed(form, "expected a parameter list")),
    };
    let ps = items.iter().map(param).collect::<Result<Vec<_>>>()?;
    let mut seen = HashSet::new();
    for p in &ps {
        if !seen.insert(p.name.as_str()) {
            return Err(malformed(form, &format!("duplicate parameter `{}`", p.name)));
        }
    }
    Ok(ps)
}

fn lambda(ps: &SurfaceForm, body: &SurfaceForm, pos: Pos) -> Result<Expr> {
    Ok(Expr::new(ExprKind::Lambda { params: params(ps)?, body: Arc::new(desugar(body)?) }, pos))
}

fn bindings(form: &SurfaceForm) -> Result<Vec<(String, Option<CellRank>, Expr)>> {
    let items = match form {
        SurfaceForm::Paren { items, .. } => items,
        _ => return Err(malformed(form, "expected a binding list")),
    };
    items
        .iter()
        .map(|b| match list_items(b) {
            Some([name, e]) => Ok((name_of(name)?, None, desugar(e)?)),
            Some([name, rank, e]) => Ok((name_of(name)?, Some(parse_rank(rank)?), desugar(e)?)),
            _ => Err(malformed(b, "binding must be `(name expr)`")),
        })
        .collect()
}

fn special(kw: &str, form: &SurfaceForm, args: &[SurfaceForm]) -> Result<Expr> {
    let pos = form.pos();
    let e = |kind| Ok(Expr::new(kind, pos));
    let bx = |f: &SurfaceForm| desugar(f).map(Box::new);
    match (kw, args) {
        ("define", [SurfaceForm::Paren { items, pos: hpos }, body]) => {
            let (name, ps) = items.split_first().ok_or_else(|| malformed(form, "missing function name"))?;
            let ps = SurfaceForm::Paren { items: ps.to_vec(), pos: *hpos };
            e(ExprKind::Define { name: name_of(name)?, value: Box::new(lambda(&ps, body, pos)?) })
        }
        ("define", [name, value]) => e(ExprKind::Define { name: name_of(name)?, value: bx(value)? }),
        ("fn", [ps, body]) => lambda(ps, body, pos),
        ("t-fn", [vs, body]) => e(ExprKind::TLambda { vars: name_list(vs)?, body: bx(body)? }),
        ("i-fn", [vs, body]) => e(ExprKind::ILambda { vars: name_list(vs)?, body: bx(body)? }),
        ("t-app", [f, tys @ ..]) => {
            e(ExprKind::TApp { func: bx(f)?, types: tys.iter().map(Type::parse).collect::<Result<_>>()? })
        }
        ("i-app", [f, idxs @ ..]) => {
            e(ExprKind::IApp { func: bx(f)?, indices: idxs.iter().map(Index::parse).collect::<Result<_>>()? })
        }
        ("if", [t, a, b]) => e(ExprKind::If { test: bx(t)?, then: bx(a)?, otherwise: bx(b)? }),
        ("cond", clauses) => {
            let (last, init) = clauses.split_last().ok_or_else(|| malformed(form, "cond needs an else clause"))?;
            let otherwise = match list_items(last) {
                Some([k, body]) if k.is_symbol("else") => bx(body)?,
                _ => return Err(malformed(form, "cond must end with an `(else expr)` clause")),
            };
            let clauses = init
                .iter()
                .map(|c| match list_items(c) {
                    Some([t, body]) if !t.is_symbol("else") => Ok((desugar(t)?, desugar(body)?)),
                    _ => Err(malformed(c, "cond clause must be `(test expr)`")),
                })
                .collect::<Result<_>>()?;
            e(ExprKind::Cond { clauses, otherwise })
        }
        ("let", [bs, body]) => {
            let bs = bindings(bs)?;
            let ranked = bs.iter().filter(|(_, r, _)| r.is_some()).count();
            if ranked == 0 {
                return e(ExprKind::Let {
                    bindings: bs.into_iter().map(|(n, _, v)| (n, v)).collect(),
                    body: bx(body)?,
                });
            }
            if ranked != bs.len() {
                return Err(malformed(form, "cannot mix ranked and plain let bindings"));
            }
            // A ranked binding is an application of a ranked lambda.
            let (params, args): (Vec<_>, Vec<_>) =
                bs.into_iter().map(|(name, r, v)| (Param { name, ann: ParamAnn::Rank(r.unwrap()) }, v)).unzip();
            let func = Expr::new(ExprKind::Lambda { params, body: Arc::new(desugar(body)?) }, pos);
            e(ExprKind::App { func: Box::new(func), args })
        }
        ("let*", [bs, body]) => {
            let bs = bindings(bs)?;
            if bs.iter().any(|(_, r, _)| r.is_some()) {
                return Err(malformed(form, "let* bindings cannot carry ranks"));
            }
            e(ExprKind::LetStar { bindings: bs.into_iter().map(|(n, _, v)| (n, v)).collect(), body: bx(body)? })
        }
        ("array", [dims, atoms @ ..]) => {
            let dims = dims_of(dims)?;
            if element_count(&dims) != atoms.len() {
                return Err(err(
                    ErrorKind::BadFrameArity,
                    pos,
                    format!("array {dims:?} needs {} atoms, found {}", element_count(&dims), atoms.len()),
                ));
            }
            let atoms = atoms
                .iter()
                .map(|a| match a.leaf().map(literal_atom) {
                    Some(Ok(Some(atom))) => Ok(atom),
                    Some(Err(e)) => Err(e),
                    _ => Err(malformed(a, "array elements must be literal atoms")),
                })
                .collect::<Result<Vec<_>>>()?;
            e(ExprKind::Lit(ArrayValue::new(dims, atoms)))
        }
        ("frame", [dims, items @ ..]) => {
            let dims = dims_of(dims)?;
            let items = items.iter().map(desugar).collect::<Result<Vec<_>>>()?;
            frame(dims, items, pos)
        }
        ("box", [bs, ty, body]) => {
            let bad = || err(ErrorKind::MalformedBox, pos, format!("box bindings must be `((ivar index) …)`: {form}"));
            let pairs = match bs {
                SurfaceForm::Paren { items, .. } => items,
                _ => return Err(bad()),
            };
            let mut ivars = Vec::new();
            let mut witnesses = Vec::new();
            for p in pairs {
                match list_items(p) {
                    Some([iv, idx]) => {
                        ivars.push(name_of(iv).map_err(|_| bad())?);
                        witnesses.push(Index::parse(idx)?);
                    }
                    _ => return Err(bad()),
                }
            }
            e(ExprKind::Boxes {
                ivars,
                ty: Type::parse(ty)?.as_array(),
                dims: vec![],
                clauses: vec![BoxClause { witnesses, body: desugar(body)? }],
            })
        }
        ("box", _) => Err(err(ErrorKind::MalformedBox, pos, format!("box needs bindings, a type and a body: {form}"))),
        ("boxes", [ivs, ty, dims, clauses @ ..]) => {
            let dims = dims_of(dims)?;
            if element_count(&dims) != clauses.len() {
                return Err(err(
                    ErrorKind::BadFrameArity,
                    pos,
                    format!("boxes {dims:?} needs {} clauses, found {}", element_count(&dims), clauses.len()),
                ));
            }
            let clauses = clauses
                .iter()
                .map(|c| match list_items(c) {
                    Some([SurfaceForm::Paren { items, .. }, body]) => Ok(BoxClause {
                        witnesses: items.iter().map(Index::parse).collect::<Result<_>>()?,
                        body: desugar(body)?,
                    }),
                    _ => Err(err(
                        ErrorKind::MalformedBox,
                        c.pos(),
                        format!("box clause must be `((index …) expr)`: {c}"),
                    )),
                })
                .collect::<Result<_>>()?;
            e(ExprKind::Boxes { ivars: name_list(ivs)?, ty: Type::parse(ty)?.as_array(), dims, clauses })
        }
        ("boxes", _) => Err(err(ErrorKind::MalformedBox, pos, format!("malformed boxes form: {form}"))),
        ("unbox", [subject, SurfaceForm::Paren { items, .. }, body]) if !items.is_empty() => e(ExprKind::Unbox {
            subject: bx(subject)?,
            binder: name_of(&items[0])?,
            ivars: items[1..].iter().map(name_of).collect::<Result<_>>()?,
            body: bx(body)?,
        }),
        _ => Err(malformed(form, &format!("malformed `{kw}` form"))),
    }
}
