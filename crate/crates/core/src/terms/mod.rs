//! The substitutional term language for operators, its evaluator, and the
//! structural constructions (composition, diagonalization, currying,
//! representable lifting, support bounds).

mod base;
mod operator;
mod term;
mod transform;

pub use base::{BaseFunction, Signature};
pub use operator::Operator;
pub use term::{eval_instrumented, eval_term, Node, OperatorTerm, SupportTrace};
pub use transform::{
    binary_composition_term, compose_terms, curry, diagonalize, identity_term, multi_curry,
    projection_term, representable_lift, support_bound, uncurry,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::naming::{Nat, NatFun};

    fn mul() -> BaseFunction {
        BaseFunction::new("mul", 2, |a| &a[0] * &a[1])
    }

    fn succ() -> BaseFunction {
        BaseFunction::new("succ", 1, |a| &a[0] + 1u32)
    }

    fn n(v: u64) -> Nat {
        Nat::from(v)
    }

    fn p(i: usize) -> Node {
        Node::proj(i)
    }

    fn ap(i: usize, s: Node) -> Node {
        Node::apply(i, s)
    }

    fn successor_fn() -> NatFun {
        NatFun::from_fn(|x| x + 1u32)
    }

    #[test]
    fn eval_examples() {
        let t = OperatorTerm::new(0, 1, p(1)).unwrap();
        assert_eq!(eval_term(&t, &[], &[n(42)]).unwrap(), n(42));

        let t = OperatorTerm::new(1, 1, ap(1, p(1))).unwrap();
        assert_eq!(eval_term(&t, &[successor_fn()], &[n(5)]).unwrap(), n(6));

        let t = OperatorTerm::new(0, 1, Node::base(&mul(), vec![p(1), p(1)])).unwrap();
        assert_eq!(eval_term(&t, &[], &[n(7)]).unwrap(), n(49));
    }

    #[test]
    fn eval_rejects_arity_mismatch() {
        let t = OperatorTerm::new(1, 1, ap(1, p(1))).unwrap();
        assert!(matches!(
            eval_term(&t, &[], &[n(1)]),
            Err(Error::ArityMismatch { .. })
        ));
        assert!(eval_term(&t, &[successor_fn()], &[n(1), n(2)]).is_err());
    }

    #[test]
    fn construction_checks_invariants() {
        assert!(OperatorTerm::new(1, 1, p(2)).is_err());
        assert!(OperatorTerm::new(1, 1, p(0)).is_err());
        assert!(OperatorTerm::new(1, 1, ap(2, p(1))).is_err());
        assert!(OperatorTerm::new(1, 1, Node::base(&mul(), vec![p(1)])).is_err());
    }

    #[test]
    fn compose_examples() {
        let outer = OperatorTerm::new(1, 1, ap(1, p(1))).unwrap();
        let c = compose_terms(&outer, &[outer.clone()]).unwrap();
        assert_eq!(c.root(), &ap(1, p(1)));

        let twice = compose_terms(&binary_composition_term(), &[outer.clone(), outer]).unwrap();
        assert_eq!(twice.root(), &ap(1, ap(1, p(1))));
        assert_eq!(eval_term(&twice, &[successor_fn()], &[n(3)]).unwrap(), n(5));

        let outer = OperatorTerm::new(2, 1, p(1)).unwrap();
        let inners = vec![OperatorTerm::new(3, 1, ap(3, p(1))).unwrap(); 2];
        let c = compose_terms(&outer, &inners).unwrap();
        assert_eq!(c.root(), &p(1));
        assert_eq!(c.fn_arity(), 3);
    }

    #[test]
    fn diagonalize_examples() {
        let t = OperatorTerm::new(1, 1, ap(1, Node::base(&mul(), vec![p(1), p(1)]))).unwrap();
        let d = diagonalize(&t).unwrap();
        assert_eq!(d.root(), &p(1));
        assert_eq!(d.fn_arity(), 0);

        let t = OperatorTerm::new(2, 1, p(1)).unwrap();
        assert_eq!(diagonalize(&t).unwrap().root(), &p(1));
    }

    #[test]
    fn curry_examples() {
        let k = 2;
        let sel_s = OperatorTerm::new(k, 2, p(1)).unwrap();
        let c = curry(&sel_s).unwrap();
        assert_eq!(c.root(), &ap(k + 1, p(1)));
        assert_eq!((c.fn_arity(), c.arg_arity()), (k + 1, 1));

        let sel_t = OperatorTerm::new(k, 2, p(2)).unwrap();
        assert_eq!(curry(&sel_t).unwrap().root(), &p(1));

        let unary = OperatorTerm::new(k, 1, p(1)).unwrap();
        assert!(curry(&unary).is_err());
    }

    #[test]
    fn uncurry_examples() {
        let k = 1;
        let t = OperatorTerm::new(k + 1, 1, ap(k + 1, p(1))).unwrap();
        let u = uncurry(&t).unwrap();
        assert_eq!(u.root(), &p(1));
        assert_eq!((u.fn_arity(), u.arg_arity()), (k, 2));

        let t = OperatorTerm::new(k + 1, 1, p(1)).unwrap();
        assert_eq!(uncurry(&t).unwrap().root(), &p(2));

        let t = OperatorTerm::new(k + 1, 0, Node::base(&BaseFunction::new("z", 0, |_| Nat::from(0u8)), vec![])).unwrap();
        assert!(uncurry(&t).is_err());
    }

    #[test]
    fn multi_curry_edge_cases() {
        let t = OperatorTerm::new(1, 1, ap(1, p(1))).unwrap();
        assert_eq!(multi_curry(&t).unwrap(), t);
        let t2 = OperatorTerm::new(1, 2, Node::base(&mul(), vec![p(1), p(2)])).unwrap();
        assert_eq!(multi_curry(&t2).unwrap(), curry(&t2).unwrap());
    }

    #[test]
    fn lift_examples() {
        let first = BaseFunction::new("first", 2, |a| a[0].clone());
        let lifted = representable_lift(&first);
        let f1 = NatFun::from_fn(|x| x * 10u32);
        let f2 = NatFun::from_fn(|x| x + 3u32);
        for v in 0..20 {
            assert_eq!(
                eval_term(&lifted, &[f1.clone(), f2.clone()], &[n(v)]).unwrap(),
                f1.at(v)
            );
        }
        let s = representable_lift(&succ());
        assert_eq!(eval_term(&s, &[f2.clone()], &[n(4)]).unwrap(), n(8));
    }

    #[test]
    fn instrumented_examples() {
        let f = successor_fn();
        let t = OperatorTerm::new(1, 1, p(1)).unwrap();
        let (v, tr) = eval_instrumented(&t, &[f.clone()], &[n(5)]).unwrap();
        assert_eq!(v, n(5));
        assert!(tr.is_empty());

        let t = OperatorTerm::new(1, 1, ap(1, p(1))).unwrap();
        let (_, tr) = eval_instrumented(&t, &[f.clone()], &[n(5)]).unwrap();
        assert_eq!(tr.len(), 1);
        assert!(tr.contains(0, &n(5)));

        let t = OperatorTerm::new(1, 1, Node::base(&mul(), vec![ap(1, p(1)), ap(1, p(1))])).unwrap();
        let (v, tr) = eval_instrumented(&t, &[f], &[n(3)]).unwrap();
        assert_eq!(v, n(16));
        assert_eq!(tr.len(), 1);
        assert!(tr.contains(0, &n(3)));
    }

    #[test]
    fn support_bound_examples() {
        assert_eq!(support_bound(&OperatorTerm::new(1, 1, p(1)).unwrap()), 0);
        assert_eq!(
            support_bound(&OperatorTerm::new(1, 1, ap(1, ap(1, p(1)))).unwrap()),
            2
        );
    }

    #[test]
    fn sexpr_round_trip() {
        let sig = vec![mul(), succ(), BaseFunction::new("const_3", 0, |_| Nat::from(3u8))];
        for src in [
            "(proj 1)",
            "(apply 2 (proj 1))",
            "(base mul (apply 1 (proj 2)) (base succ (proj 1)))",
            "(base const_3)",
        ] {
            let t = OperatorTerm::parse_inferred(src, &sig).unwrap();
            assert_eq!(t.to_string(), src);
        }
        let t = OperatorTerm::parse("(apply 2 (proj 1))", 3, 1, &sig).unwrap();
        assert_eq!(t.fn_arity(), 3);
        assert!(OperatorTerm::parse("(apply 4 (proj 1))", 3, 1, &sig).is_err());
        assert!(matches!(
            OperatorTerm::parse_inferred("(base nope (proj 1))", &sig),
            Err(Error::UnknownFunction(_))
        ));
        assert!(OperatorTerm::parse_inferred("(base mul (proj 1))", &sig).is_err());
        assert!(OperatorTerm::parse_inferred("(proj)", &sig).is_err());
    }

    #[test]
    fn direct_and_term_operators_agree_under_composition() {
        let comp = Operator::binary_composition();
        let twice = Operator::direct(1, "twice", |fs, x| fs[0].eval(&fs[0].eval(x)));
        let sq = Operator::lift(&BaseFunction::new("sq", 1, |a| &a[0] * &a[0]));
        let mixed = comp.compose(&[twice.clone(), sq.clone()]).unwrap();
        assert!(!mixed.is_term());
        let f = successor_fn();
        for v in 0..10 {
            // twice(f)(sq(f)(v)) = (v + 1)² + 2
            let expected = n((v + 1) * (v + 1) + 2);
            assert_eq!(mixed.eval_at(&[f.clone()], &n(v)).unwrap(), expected);
            assert_eq!(mixed.apply(&[f.clone()]).unwrap().at(v), expected);
        }
        let diag = Operator::direct(2, "second_at", |fs, x| fs[1].eval(x) + fs[0].eval(x));
        let d = diag.diagonalize().unwrap();
        assert_eq!(d.eval_at(&[f.clone()], &n(4)).unwrap(), n(9));
    }

    #[test]
    fn traced_direct_operator_reports_queries() {
        let op = Operator::direct(2, "probe", |fs, x| fs[0].eval(x) + fs[1].eval(&(x + 7u32)));
        let f = successor_fn();
        let (v, tr) = op.eval_traced(&[f.clone(), f.clone()], &n(2)).unwrap();
        assert_eq!(v, n(3 + 10));
        assert!(tr.contains(0, &n(2)));
        assert!(tr.contains(1, &n(9)));
        assert_eq!(tr.max_argument(), Some(n(9)));
    }
}
