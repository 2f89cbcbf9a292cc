//! Canonical text rendering of values.
//!
//! Vectors print as `[a b c]`. Higher ranks nest brackets with one item per
//! line (a blank line between items from rank 3 up), and every last-axis
//! column is right-aligned across the whole array.

use crate::array::{ArrayValue, Atom, Function};
use crate::reader::char_name;

/// Shortest round-trip decimal that still reads back as a float.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        return "+nan.0".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "+inf.0".into() } else { "-inf.0".into() };
    }
    let s = format!("{x}");
    if s.contains('.') {
        s
    } else {
        format!("{s}.0")
    }
}

pub fn format_function(f: &Function) -> String {
    let ranks: Vec<String> = f.ranks().iter().map(|r| r.to_string()).collect();
    format!("#<function {} ({})>", f.name().unwrap_or("anon"), ranks.join(" "))
}

pub fn format_atom(a: &Atom) -> String {
    match a {
        Atom::Int(n) => n.to_string(),
        Atom::Float(x) => format_float(*x),
        Atom::Bool(b) => if *b { "#t" } else { "#f" }.into(),
        Atom::Char(c) => format!("#\\{}", char_name(*c)),
        Atom::Func(f) => format_function(f),
        Atom::Box(b) => {
            let ws: Vec<String> = b.witnesses.iter().map(|w| w.to_string()).collect();
            let prefix = format!("(box ({}) ", ws.join(" "));
            let body = indent_continuations(&format_value(&b.contents), prefix.chars().count());
            format!("{prefix}{body})")
        }
    }
}

fn indent_continuations(text: &str, by: usize) -> String {
    let pad = " ".repeat(by);
    let mut out = String::with_capacity(text.len());
    for (i, line) in text.split('\n').enumerate() {
        if i > 0 {
            out.push('\n');
            if !line.is_empty() {
                out.push_str(&pad);
            }
        }
        out.push_str(line);
    }
    out
}

pub fn format_value(v: &ArrayValue) -> String {
    if let Some(a) = v.scalar_atom() {
        return format_atom(a);
    }
    if v.atoms().is_empty() {
        let dims: Vec<String> = v.shape().iter().map(|d| d.to_string()).collect();
        return format!("#(shape {})[]", dims.join(" "));
    }
    let mut cells: Vec<String> = v.atoms().iter().map(format_atom).collect();
    let last = *v.shape().last().unwrap();
    if v.rank() >= 2 && !cells.iter().any(|c| c.contains('\n')) {
        let mut widths = vec![0; last];
        for (i, c) in cells.iter().enumerate() {
            widths[i % last] = widths[i % last].max(c.chars().count());
        }
        for (i, c) in cells.iter_mut().enumerate() {
            *c = format!("{:>w$}", c, w = widths[i % last]);
        }
    }
    let mut out = String::new();
    nest(&cells, v.shape(), 0, &mut out);
    out
}

fn nest(cells: &[String], shape: &[usize], depth: usize, out: &mut String) {
    out.push('[');
    if shape.len() == 1 {
        for (i, c) in cells.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            // Multi-line atoms continue under their own opening column.
            let col = out.rsplit('\n').next().map_or(0, |l| l.chars().count());
            out.push_str(&indent_continuations(c, col));
        }
    } else {
        let stride = cells.len() / shape[0];
        let indent = " ".repeat(depth + 1);
        for i in 0..shape[0] {
            if i > 0 {
                out.push('\n');
                if shape.len() >= 3 {
                    out.push('\n');
                }
                out.push_str(&indent);
            }
            nest(&cells[i * stride..(i + 1) * stride], &shape[1..], depth + 1, out);
        }
    }
    out.push(']');
}
