//! Types of the builtins in the typed dialect.

use std::collections::HashMap;
use std::sync::OnceLock;

use super::Type;

const FIXED: &[(&str, &str)] = &[
    ("+", "(-> (int int) int)"),
    ("-", "(-> (int int) int)"),
    ("*", "(-> (int int) int)"),
    ("expt", "(-> (int int) int)"),
    ("/", "(-> (float float) float)"),
    ("square", "(-> (int) int)"),
    ("add1", "(-> (int) int)"),
    ("sub1", "(-> (int) int)"),
    ("square-root", "(-> (float) float)"),
    ("sin", "(-> (float) float)"),
    ("cos", "(-> (float) float)"),
    ("=", "(-> (int int) bool)"),
    ("<", "(-> (int int) bool)"),
    (">", "(-> (int int) bool)"),
    ("zero?", "(-> (int) bool)"),
    ("negative?", "(-> (int) bool)"),
    ("not", "(-> (bool) bool)"),
    ("and", "(-> (bool bool) bool)"),
    ("or", "(-> (bool bool) bool)"),
    ("char=?", "(-> (char char) bool)"),
    ("select", "(Forall (t) (-> (bool t t) t))"),
    ("append", "(Pi (da db @rest) (Forall (t) (-> ([t da @rest] [t db @rest]) [t (+ da db) @rest])))"),
    ("length", "(Pi (d1 @s) (Forall (t) (-> ([t d1 @s]) int)))"),
    ("iota", "(Pi (r) (-> ([int r]) (Sigma (@s) [int @s])))"),
    ("iota1", "(-> (int) (Sigma (len) [int len]))"),
    ("indices-of", "(Pi (@s) (Forall (t) (-> ([t @s]) (Sigma (r) [int @s r]))))"),
    ("rotate", "(Pi (@s r) (Forall (t) (-> ([t @s] [int r]) [t @s])))"),
    ("with-shape", "(Pi (@p @d) (Forall (t u) (-> ([u @p] [t @d]) [t @p])))"),
    ("drop-right1", "(Pi (d @s) (Forall (t) (-> ([t d @s] int) (Sigma (db) [t db @s]))))"),
    ("drop-right", "(Pi (@s r) (Forall (t) (-> ([t @s] [int r]) (Sigma (@z) [t @z]))))"),
    ("take", "(Pi (@s r) (Forall (t) (-> ([t @s] [int r]) (Sigma (@z) [t @z]))))"),
    ("drop", "(Pi (@s r) (Forall (t) (-> ([t @s] [int r]) (Sigma (@z) [t @z]))))"),
    ("mirror", "(Pi (@s r) (Forall (t) (-> ([t @s] [bool r]) [t @s])))"),
    ("index", "(Pi (@pre @cell r) (Forall (t) (-> ([t @pre @cell] [int r]) [t @cell])))"),
    ("index-item", "(Pi (d @s) (Forall (t) (-> ([t d @s] int) [t @s])))"),
    ("subarray", "(Pi (@s r k) (Forall (t) (-> ([t @s] [int r] [int k]) (Sigma (@z) [t @z]))))"),
    ("subarray/wrap", "(Pi (@s r k) (Forall (t) (-> ([t @s] [int r] [int k]) (Sigma (@z) [t @z]))))"),
    ("subarray/fill", "(Pi (@s r k) (Forall (t) (-> ([t @s] [int r] [int k] t) (Sigma (@z) [t @z]))))"),
    ("filter", "(Pi (da @s) (Forall (t) (-> ([bool da] [t da @s]) (Sigma (db) [t db @s]))))"),
    ("replicate", "(Pi (da @s) (Forall (t) (-> ([int da] [t da @s]) (Sigma (db) [t db @s]))))"),
    ("partition", "(Pi (da @s) (Forall (t) (-> ([bool da] [t da @s]) [(Sigma (db) [t db @s]) 2])))"),
    (
        "reduce",
        "(Pi (d-1 @item-pad @cell-shape) (Forall (t) \
           (-> ((-> ([t @cell-shape] [t @cell-shape]) [t @cell-shape]) \
                [t (+ d-1 1) @item-pad @cell-shape]) \
               [t @item-pad @cell-shape])))",
    ),
    (
        "reduce/zero",
        "(Pi (d @item-pad @cell-shape) (Forall (t) \
           (-> ((-> ([t @cell-shape] [t @cell-shape]) [t @cell-shape]) \
                [t @item-pad @cell-shape] \
                [t d @item-pad @cell-shape]) \
               [t @item-pad @cell-shape])))",
    ),
    (
        "iscan",
        "(Pi (d-1 @item-pad @cell-shape) (Forall (t) \
           (-> ((-> ([t @cell-shape] [t @cell-shape]) [t @cell-shape]) \
                [t (+ d-1 1) @item-pad @cell-shape]) \
               [t (+ d-1 1) @item-pad @cell-shape])))",
    ),
    (
        "scan/zero",
        "(Pi (d @item-pad @cell-shape) (Forall (t) \
           (-> ((-> ([t @cell-shape] [t @cell-shape]) [t @cell-shape]) \
                [t @item-pad @cell-shape] \
                [t d @item-pad @cell-shape]) \
               [t (+ d 1) @item-pad @cell-shape])))",
    ),
    (
        "open-scan/zero",
        "(Pi (d @item-pad @cell-shape) (Forall (t) \
           (-> ((-> ([t @cell-shape] [t @cell-shape]) [t @cell-shape]) \
                [t @item-pad @cell-shape] \
                [t d @item-pad @cell-shape]) \
               [t d @item-pad @cell-shape])))",
    ),
    ("fold", FOLD),
    ("fold-right", FOLD),
    ("trace", TRACE),
    ("trace-right", TRACE),
    ("grade", "(Pi (d @item) (Forall (t) (-> ((-> ([t @item] [t @item]) bool) [t d @item]) [int d])))"),
    ("sort", "(Pi (d @item) (Forall (t) (-> ((-> ([t @item] [t @item]) bool) [t d @item]) [t d @item])))"),
];

const FOLD: &str = "(Pi (d @item @acc) (Forall (t u) \
    (-> ((-> ([t @item] [u @acc]) [u @acc]) [u @acc] [t d @item]) [u @acc])))";

const TRACE: &str = "(Pi (d @item @acc) (Forall (t u) \
    (-> ((-> ([t @item] [u @acc]) [u @acc]) [u @acc] [t d @item]) [u (+ d 1) @acc])))";

fn dim_names(k: usize) -> String {
    (1..=k).map(|i| format!("d{i}")).collect::<Vec<_>>().join(" ")
}

fn rank_families() -> Vec<(String, String)> {
    let mut out = vec![("iota0".to_string(), "(-> ([int 0]) (Sigma () int))".to_string())];
    for k in 2..=9 {
        let ds = dim_names(k);
        out.push((format!("iota{k}"), format!("(-> ([int {k}]) (Sigma ({ds}) [int {ds}]))")));
    }
    for k in 1..=9 {
        let ds = dim_names(k);
        out.push((format!("indices-of/{k}"), format!("(Pi ({ds}) (Forall (t) (-> ([t {ds}]) [int {ds} {k}])))")));
    }
    out
}

fn table() -> &'static HashMap<String, Type> {
    static TABLE: OnceLock<HashMap<String, Type>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let fixed = FIXED.iter().map(|&(n, t)| (n.to_string(), t.to_string()));
        fixed
            .chain(rank_families())
            .map(|(name, src)| {
                let ty = Type::parse_str(&src).unwrap_or_else(|e| panic!("bad signature for {name}: {e}"));
                (name, ty)
            })
            .collect()
    })
}

/// The declared type of a builtin, as a (scalar) array type.
pub fn signature(name: &str) -> Option<Type> {
    table().get(name).map(|t| t.clone().as_array())
}
