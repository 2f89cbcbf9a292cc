use proptest::prelude::*;
use remora::array::{collect_frame, split_cells};
use remora::session::{Options, Session};
use remora::{format_value, ArrayValue, Atom, CellRank};

fn session() -> Session {
    Session::new(Options::default()).unwrap()
}

fn parallel() -> Session {
    Session::new(Options { parallel_cells: true, ..Options::default() }).unwrap()
}

fn eval(s: &mut Session, src: &str) -> ArrayValue {
    s.value(src).unwrap_or_else(|e| panic!("{src}: {e}")).unwrap()
}

fn shape_strategy(max_rank: usize, min_dim: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(min_dim..4usize, 0..=max_rank)
}

fn int_array(max_rank: usize, min_dim: usize) -> impl Strategy<Value = ArrayValue> {
    shape_strategy(max_rank, min_dim).prop_flat_map(|shape| {
        let n = shape.iter().product::<usize>();
        prop::collection::vec(-20i64..20, n).prop_map(move |xs| ArrayValue::ints(shape.clone(), xs))
    })
}

fn atom() -> impl Strategy<Value = Atom> {
    prop_oneof![
        (-1000i64..1000).prop_map(Atom::Int),
        any::<bool>().prop_map(Atom::Bool),
        prop::sample::select(vec!['a', 'Z', ' ', '0', '(', '\n', 'λ']).prop_map(Atom::Char),
        (-1.0e6f64..1.0e6).prop_map(Atom::Float),
    ]
}

/// Nonempty arrays of one atom kind.
fn literal_array() -> impl Strategy<Value = ArrayValue> {
    (shape_strategy(3, 1), atom()).prop_flat_map(|(shape, seed)| {
        let n = shape.iter().product::<usize>();
        let kind = std::mem::discriminant(&seed);
        prop::collection::vec(atom().prop_filter("same kind", move |a| std::mem::discriminant(a) == kind), n)
            .prop_map(move |atoms| ArrayValue::new(shape.clone(), atoms))
    })
}

/// Source text for an array literal.
fn literal(v: &ArrayValue) -> String {
    format_value(v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn every_frame_cell_view_tiles_the_shape(a in int_array(4, 0)) {
        for r in 0..=a.rank() {
            let (frame, cells) = split_cells(&a, CellRank::Nat(r)).unwrap();
            let cell_shape = &a.shape()[a.rank() - r..];
            prop_assert_eq!([frame.as_slice(), cell_shape].concat(), a.shape().to_vec());
            prop_assert!(cells.iter().all(|c| c.shape() == cell_shape));
            prop_assert_eq!(collect_frame(&frame, cells, Some(cell_shape)).unwrap(), a.clone());
        }
    }

    #[test]
    fn formatting_then_reading_round_trips(v in literal_array()) {
        let mut s = session();
        prop_assert_eq!(eval(&mut s, &literal(&v)), v);
    }

    #[test]
    fn scalar_frames_are_plain_application(x in -50i64..50, y in -50i64..50) {
        let mut s = session();
        let f = eval(&mut s, "(fn ([a 0] [b 0]) (- (* a 3) b))");
        let got = s.interpreter().lift_apply(&f, vec![ArrayValue::int(x), ArrayValue::int(y)]).unwrap();
        prop_assert_eq!(got, ArrayValue::int(x * 3 - y));
    }

    #[test]
    fn parallel_cells_do_not_change_results(a in int_array(3, 1), b in int_array(1, 1)) {
        let src = format!("(~(1 all)(fn ([v 1] [w all]) (append v w)) {} {})", literal(&a), literal(&b));
        let (mut s, mut p) = (session(), parallel());
        let (x, y) = (s.value(&src), p.value(&src));
        prop_assert_eq!(x.map_err(|e| e.kind), y.map_err(|e| e.kind));
    }

    #[test]
    fn reranking_to_declared_ranks_changes_nothing(a in int_array(3, 1), k in -3i64..3) {
        let mut s = session();
        for f in ["(fn ([v 1] [k 0]) (* k (reduce + v)))", "vmag", "rotate"] {
            let ranks = match f { "vmag" => "1", "rotate" => "all 1", _ => "1 0" };
            let args = match f {
                "vmag" => literal(&a),
                "rotate" => format!("{} [{k}]", literal(&a)),
                _ => format!("{} {k}", literal(&a)),
            };
            let plain = s.value(&format!("({f} {args})")).map_err(|e| e.kind);
            let reranked = s.value(&format!("(~({ranks}){f} {args})")).map_err(|e| e.kind);
            prop_assert_eq!(plain, reranked);
        }
    }

    #[test]
    fn filter_is_replicate_by_zero_or_one(flags in prop::collection::vec(any::<bool>(), 1..6), extra in 1usize..4) {
        let n = flags.len();
        let data = ArrayValue::ints(vec![n, extra], (0..(n * extra) as i64).collect::<Vec<_>>());
        let fl: Vec<_> = flags.iter().map(|&b| if b { "#t" } else { "#f" }).collect();
        let counts: Vec<_> = flags.iter().map(|&b| if b { "1" } else { "0" }).collect();
        let mut s = session();
        let f = s.value(&format!("(filter [{}] {})", fl.join(" "), literal(&data))).map(|v| v.map(|v| format_value(&v)));
        let r = s.value(&format!("(replicate [{}] {})", counts.join(" "), literal(&data))).map(|v| v.map(|v| format_value(&v)));
        prop_assert_eq!(f.map_err(|e| e.kind), r.map_err(|e| e.kind));
    }

    #[test]
    fn grading_with_a_false_comparator_is_identity(a in int_array(2, 1)) {
        prop_assume!(a.rank() >= 1);
        let mut s = session();
        let g = eval(&mut s, &format!("(grade (fn ([x all] [y all]) #f) {})", literal(&a)));
        let n = a.shape()[0] as i64;
        prop_assert_eq!(g, ArrayValue::ints(vec![n as usize], 0..n));
    }

    #[test]
    fn rotating_back_is_identity(a in int_array(3, 1), amounts in prop::collection::vec(-5i64..5, 3)) {
        prop_assume!(a.rank() >= 1);
        let amt: Vec<_> = amounts[..a.rank()].iter().map(|x| x.to_string()).collect();
        let neg: Vec<_> = amounts[..a.rank()].iter().map(|x| (-x).to_string()).collect();
        let mut s = session();
        let src = format!("(rotate (rotate {} [{}]) [{}])", literal(&a), amt.join(" "), neg.join(" "));
        prop_assert_eq!(eval(&mut s, &src), a);
    }

    #[test]
    fn index_of_all_indices_rebuilds(a in int_array(3, 1)) {
        prop_assume!(a.rank() >= 1);
        let mut s = session();
        let l = literal(&a);
        prop_assert_eq!(eval(&mut s, &format!("(index {l} (indices-of {l}))")), a);
    }

    #[test]
    fn iota_counts_up(shape in shape_strategy(3, 0)) {
        let dims: Vec<_> = shape.iter().map(|d| d.to_string()).collect();
        let mut s = session();
        let v = eval(&mut s, &format!("(iota [{}])", dims.join(" ")));
        let n = shape.iter().product::<usize>() as i64;
        prop_assert_eq!(v.shape(), shape.as_slice());
        prop_assert_eq!(v.into_atoms(), (0..n).map(Atom::Int).collect::<Vec<_>>());
    }

    #[test]
    fn reductions_agree_in_any_direction(xs in prop::collection::vec(-6i64..6, 1..9)) {
        let v = ArrayValue::ints(vec![xs.len()], xs.clone());
        let l = literal(&v);
        let (mut s, mut p) = (session(), parallel());
        for (op, z) in [("+", 0), ("*", 1)] {
            let reduce = eval(&mut p, &format!("(reduce {op} {l})"));
            let left = eval(&mut s, &format!("(fold {op} {z} {l})"));
            let right = eval(&mut s, &format!("(fold-right {op} {z} {l})"));
            prop_assert_eq!(&reduce, &left);
            prop_assert_eq!(&reduce, &right);
        }
    }
}
