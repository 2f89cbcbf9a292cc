//! Workloads shared by the benchmarks: source text for programs that
//! stress the reader, the application rule and the reductions.

use remora::session::{Options, Session};
use remora::ArrayValue;

/// `rows x cols` matrix literal of small integers.
pub fn matrix_literal(rows: usize, cols: usize) -> String {
    let mut s = String::from("[");
    for r in 0..rows {
        s.push('[');
        let row: Vec<String> = (0..cols).map(|c| ((r * 7 + c * 3) % 17).to_string()).collect();
        s.push_str(&row.join(" "));
        s.push(']');
    }
    s.push(']');
    s
}

/// Adds a vector to every column of a matrix through frame replication.
pub fn lifted_add(rows: usize, cols: usize) -> String {
    let v: Vec<String> = (0..rows).map(|i| i.to_string()).collect();
    format!("(+ [{}] {})", v.join(" "), matrix_literal(rows, cols))
}

/// Row-by-row vector magnitudes from the prelude.
pub fn row_magnitudes(rows: usize, cols: usize) -> String {
    format!("(vmag {})", matrix_literal(rows, cols))
}

pub fn matrix_product(n: usize) -> String {
    let m = matrix_literal(n, n);
    format!("(m*m {m} {m})")
}

pub fn sum_of_iota(n: usize) -> String {
    format!("(reduce + (iota [{n}]))")
}

pub fn sort_workload(n: usize) -> String {
    let xs: Vec<String> = (0..n).map(|i| ((i * 7919) % 1009).to_string()).collect();
    format!("(sort < [{}])", xs.join(" "))
}

pub fn session(parallel_cells: bool) -> Session {
    Session::new(Options { parallel_cells, ..Options::default() }).expect("prelude loads")
}

pub fn run(session: &mut Session, src: &str) -> ArrayValue {
    session.value(src).expect("workload evaluates").expect("workload is an expression")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn workloads_evaluate() {
        let mut s = session(false);
        assert_eq!(run(&mut s, &lifted_add(3, 4)).shape(), [3, 4]);
        assert_eq!(run(&mut s, &row_magnitudes(5, 3)).shape(), [5]);
        assert_eq!(run(&mut s, &matrix_product(4)).shape(), [4, 4]);
        assert_eq!(run(&mut s, &sum_of_iota(100)), ArrayValue::int(4950));
        assert_eq!(run(&mut s, &sort_workload(50)).shape(), [50]);
    }
}
