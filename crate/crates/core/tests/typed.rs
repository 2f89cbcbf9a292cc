use std::collections::HashMap;

use proptest::prelude::*;
use remora::reader::read;
use remora::session::{Mode, Options, Outcome, Session};
use remora::types::index::Index;
use remora::types::Type;
use remora::{ArrayValue, Atom, Dialect, Witness};

const PROGRAMS: &[&str] = &[
    "(define double (fn ([i int]) (+ i i)))
     (double [3 2])
     (double [[1 2] [3 4]])",
    "((t-app (t-fn (@t) (fn ([x @t]) x)) [bool 2 3]) [[#f #t #f] [#t #t #t]])",
    "((t-app (i-app append 2 1 [3]) int) [[1 2 3] [4 5 6]] [[7 8 9]])",
    "((t-app (i-app reduce 2 [2] []) int) + [[1 2] [10 20] [100 200]])",
    "((t-app (i-app filter 5 [3]) int) [#t #f #f #t #t]
        [[0 1 2] [16 17 18] [9 10 11] [22 23 24] [96 97 98]])",
    r#"(boxes (len) [char len] [3] ((6) "Monday") ((7) "Tuesday") ((6) "Friday"))"#,
    "(iota1 4)
     (iota2 [2 3])
     ((t-app (i-app indices-of/2 2 3) int) [[1 2 3] [4 5 6]])",
    "(define (fact [n int])
       (unbox (iota1 n) (factors-1 len)
         (let ((red (t-app (i-app reduce/zero len [] []) int)))
           (red * 1 (+ 1 factors-1)))))
     (fact [0 1 2 3 4 5])",
    "((t-app (i-app rotate [4] 1) int) [1 2 3 4] [[0] [1] [2]])",
    "(unbox (iota1 3) (v n) ((t-app (i-app length n []) int) v))",
];

fn witness_index(w: &Witness) -> Index {
    match w {
        Witness::Dim(d) => Index::Nat(*d),
        Witness::Shape(s) => Index::dims(s),
    }
}

/// Does `v` inhabit the shape structure of `t`? Σ atoms are opened with
/// the witnesses each box carries.
fn inhabits(t: &Type, v: &ArrayValue) -> bool {
    let (atom, shape) = t.parts();
    let Some(dims) = shape.concrete() else { return false };
    if !v.shape().starts_with(&dims) {
        return false;
    }
    match atom {
        Type::Sigma(vars, body) => {
            v.shape() == dims.as_slice()
                && v.atoms().iter().all(|a| match a {
                    Atom::Box(b) if b.witnesses.len() == vars.len() => {
                        let map: HashMap<String, Index> =
                            vars.iter().cloned().zip(b.witnesses.iter().map(witness_index)).collect();
                        inhabits(&body.subst(&HashMap::new(), &map), &b.contents)
                    }
                    _ => false,
                })
        }
        Type::Fn(..) | Type::Forall(..) | Type::Pi(..) => {
            v.shape() == dims.as_slice() && v.atoms().iter().all(|a| matches!(a, Atom::Func(_)))
        }
        _ => v.shape() == dims.as_slice(),
    }
}

fn typed(mode: Mode) -> Session {
    Session::new(Options { dialect: Dialect::Typed, mode, ..Options::default() }).unwrap()
}

#[test]
fn checked_shapes_match_evaluated_shapes() {
    for program in PROGRAMS {
        let (mut check, mut run) = (typed(Mode::Check), typed(Mode::Run));
        for form in read(program).unwrap() {
            let ty = check.form(&form).unwrap_or_else(|e| panic!("{program}: {e}"));
            let value = run.form(&form).unwrap();
            match (ty, value) {
                (Outcome::Type(t), Outcome::Value(v)) => assert!(inhabits(&t, &v), "{t} vs {v:?}"),
                (Outcome::Defined(_), Outcome::Defined(_)) => {}
                other => panic!("outcomes disagree: {other:?}"),
            }
        }
    }
}

#[test]
fn erased_programs_match_dynamic_ones() {
    let mut d = Session::new(Options::default()).unwrap();
    let mut t = typed(Mode::Run);
    let pairs = [
        ("(+ [1 2] [[1 2 3] [4 5 6]])", "(+ [1 2] [[1 2 3] [4 5 6]])"),
        ("((fn ([x int]) (* x x)) [1 2 3])", "((fn ([x 0]) (* x x)) [1 2 3])"),
        (
            "((fn ([v [int 3]] [k int]) ((t-app (i-app reduce 2 [] []) int) + (* k v))) [[1 2 3] [4 5 6]] [1 10])",
            "((fn ([v 1] [k 0]) (reduce + (* k v))) [[1 2 3] [4 5 6]] [1 10])",
        ),
    ];
    for (typed_src, dynamic_src) in pairs {
        let a = d.run_to_strings(dynamic_src).unwrap();
        let b = t.run_to_strings(typed_src).unwrap();
        assert_eq!(a, b, "{typed_src}");
    }
}

fn dims_text(d: &[usize]) -> String {
    d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn literal(shape: &[usize]) -> String {
    let n: usize = shape.iter().product();
    format!("(array [{}] {})", dims_text(shape), (0..n).map(|i| i.to_string()).collect::<Vec<_>>().join(" "))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// For monomorphic functions over literal shapes the static principal
    /// frame is the one evaluation builds.
    #[test]
    fn static_frames_agree_with_dynamic_frames(
        frame in prop::collection::vec(1usize..4, 0..3),
        x_cell in prop::collection::vec(1usize..3, 0..2),
        y_cell in prop::collection::vec(1usize..3, 0..2),
        y_frame_len in 0usize..3,
    ) {
        let y_frame = &frame[..y_frame_len.min(frame.len())];
        let f = format!(
            "(fn ([x [int {}]] [y [int {}]]) x)",
            dims_text(&x_cell),
            dims_text(&y_cell)
        );
        let x = [frame.as_slice(), &x_cell].concat();
        let y = [y_frame, &y_cell].concat();
        let src = format!("({f} {} {})", literal(&x), literal(&y));
        let checked = typed(Mode::Check).run_to_strings(&src).unwrap();
        let value = typed(Mode::Run).value(&src).unwrap().unwrap();
        prop_assert_eq!(value.shape(), x.as_slice());
        prop_assert_eq!(&checked[0], &format!("[int {}]", dims_text(&x)).replace("[int ]", "int"));
    }
}
