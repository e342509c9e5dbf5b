//! Seeded invariant suites, runnable from the command line.

use std::fmt;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::computable::{
    check_separation, compose_conditional, dispatch_index, embed_uniform, glue_compact, localize,
    Ball, BallCover, ConditionalFn, UniformFn,
};
use crate::elementary;
use crate::error::{Error, Result};
use crate::gadgets::{
    add_fn, ball_indicator, decency_check, delta_1, delta_fn, delta_k, gamma, gt, left, lt,
    monus, monus_fn, mu, mul_fn, right, successor_fn, GadgetRegistry,
};
use crate::metric::{
    compose_conditional_ms, glue_compact_ms, localize_ms, names_to_ordinary, ordinary_to_names,
    translate_conditional, translate_conditional_back, translate_uniform, translate_uniform_back,
    tuple_conditional, validate_ordinary, MnSpace, MsBall, OrdinaryName,
};
use crate::naming::{quotient, rat, rat_int, rational_name, validate_name, NameTriple, Nat, NatFun, Rational};
use crate::terms::{
    curry, diagonalize, compose_terms, eval_instrumented, support_bound, uncurry, BaseFunction,
    Node, OperatorTerm,
};

pub const SUITES: &[&str] = &["gadgets", "curry", "compose", "localize", "glue", "metric"];

pub const DEFAULT_SEED: u64 = 1;

/// Lines of a suite run and its failure count.
#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    pub name: String,
    pub lines: Vec<String>,
    pub checks: usize,
    pub failures: usize,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport {
            name: name.to_string(),
            ..Default::default()
        }
    }

    fn check(&mut self, ok: bool, line: impl Into<String>) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
        }
        self.lines
            .push(format!("{}: {}", line.into(), if ok { "pass" } else { "FAIL" }));
    }

    fn note(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }

    pub fn pass(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        write!(
            f,
            "suite {}: {} checks, {} failures, overall={}",
            self.name,
            self.checks,
            self.failures,
            if self.pass() { "pass" } else { "fail" }
        )
    }
}

/// Runs a suite by name (`composition`, `localization`, `gluing` and
/// `metric-spaces` are accepted as aliases).
pub fn run_suite(name: &str, seed: u64, t_max: u64) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match name {
        "gadgets" => Ok(gadgets_suite()),
        "curry" => Ok(curry_suite(&mut rng)),
        "compose" | "composition" => compose_suite(t_max),
        "localize" | "localization" => localize_suite(&mut rng, t_max),
        "glue" | "gluing" => glue_suite(&mut rng, t_max),
        "metric" | "metric-spaces" => metric_suite(&mut rng, t_max),
        _ => Err(Error::Parse(format!(
            "unknown suite `{name}` (expected one of {})",
            SUITES.join(", ")
        ))),
    }
}

fn n(v: u64) -> Nat {
    Nat::from(v)
}

fn nats(max: u64, arity: usize) -> Vec<Vec<Nat>> {
    let mut out = vec![vec![]];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=max).map(move |x| {
                    let mut q = p.clone();
                    q.push(n(x));
                    q
                })
            })
            .collect();
    }
    out
}

fn gadgets_suite() -> SuiteReport {
    let mut r = SuiteReport::new("gadgets");
    let decency = decency_check(&GadgetRegistry::default());
    r.check(decency.pass(), "decency of the default registry");

    let mut bad = 0;
    for k in 1..=4usize {
        let f = delta_fn(k);
        for a in nats(2, 2 * k + 1) {
            let expect = (0..k)
                .find(|&i| a[2 * i].is_zero())
                .map_or_else(|| a[2 * k].clone(), |i| a[2 * i + 1].clone());
            bad += usize::from(f.call(&a).ok() != Some(expect));
        }
    }
    r.check(bad == 0, format!("delta_K for K <= 4 ({bad} mismatches)"));

    let mut bad = 0;
    for k in 0..=5u64 {
        for c in 0..=5u64 {
            let f = mu(k, c);
            for a in nats(7, 2) {
                let expect = if a[0] == n(k) { n(c) } else { a[1].clone() };
                let formula = delta_1(
                    &monus(&a[0], &n(k)),
                    &delta_1(&monus(&n(k), &a[0]), &n(c), &a[1]),
                    &a[1],
                );
                bad += usize::from(f.call(&a).ok() != Some(expect.clone()) || formula != expect);
            }
        }
    }
    r.check(bad == 0, format!("mu_k_c for k, c <= 5 ({bad} mismatches)"));

    let mut bad = 0;
    for b in 1..=3usize {
        for c in 1..=3usize {
            let g = gamma(b, c).expect("positive arities");
            for a in nats(6, b + c) {
                let sx: Nat = a[..b].iter().sum();
                let sy: Nat = a[b..].iter().sum();
                bad += usize::from((g.call(&a).expect("arity") > Nat::zero()) != (sx > sy));
            }
        }
    }
    r.check(bad == 0, format!("gamma_b_c for b, c <= 3 ({bad} mismatches)"));

    let mut bad = 0;
    for a in [rat_int(0), rat(1, 2), rat(3, 2), rat(-2, 3), rat_int(-2), rat(7, 3)] {
        let (l, g) = (lt(&a), gt(&a));
        for v in nats(8, 3) {
            let q = quotient(&v[0], &v[1], &v[2]);
            bad += usize::from((l.call(&v).expect("arity") > Nat::zero()) != (q < a));
            bad += usize::from((g.call(&v).expect("arity") > Nat::zero()) != (q > a));
        }
    }
    r.check(bad == 0, format!("lt_a/gt_a over six thresholds ({bad} mismatches)"));

    let mut bad = 0;
    for center in [vec![rat_int(0)], vec![rat(1, 2)], vec![rat_int(0), rat(-1, 3)]] {
        for q in [rat(1, 3), rat_int(1)] {
            let e = ball_indicator(&center, &q).expect("nonempty center");
            let max = if center.len() == 1 { 6 } else { 3 };
            for v in nats(max, 3 * center.len()) {
                let inside = center.iter().enumerate().all(|(j, a)| {
                    (quotient(&v[3 * j], &v[3 * j + 1], &v[3 * j + 2]) - a).abs() < q
                });
                bad += usize::from(e.call(&v).expect("arity").is_zero() != inside);
            }
        }
    }
    r.check(bad == 0, format!("ball indicators for N <= 2 ({bad} mismatches)"));

    let mut bad = 0;
    for k in 1..=4usize {
        for a in nats(2, 2 * k + 1) {
            bad += usize::from(delta_k(k, &a).ok() != delta_fn(k).call(&a).ok());
        }
    }
    r.check(bad == 0, "delta_k function agrees with its base function");
    r
}

/// Base functions used for random terms.
pub fn term_signature() -> Vec<BaseFunction> {
    vec![successor_fn(), monus_fn(), add_fn(), mul_fn(), delta_fn(1)]
}

/// A random term with `k` function and `m` numeric arguments and depth at
/// most `depth`.
pub fn random_term(rng: &mut impl Rng, k: usize, m: usize, depth: usize) -> OperatorTerm {
    fn go(rng: &mut impl Rng, sig: &[BaseFunction], k: usize, m: usize, depth: usize) -> Node {
        let choice = if depth == 0 { 0 } else { rng.gen_range(0..4) };
        match choice {
            1 if k > 0 => Node::apply(rng.gen_range(1..=k), go(rng, sig, k, m, depth - 1)),
            2 | 3 => {
                let f = &sig[rng.gen_range(0..sig.len())];
                let subs = (0..f.arity()).map(|_| go(rng, sig, k, m, depth - 1)).collect();
                Node::base(f, subs)
            }
            _ => Node::proj(rng.gen_range(1..=m)),
        }
    }
    let sig = term_signature();
    let root = go(rng, &sig, k, m, depth);
    OperatorTerm::new(k, m, root).expect("generated within arity")
}

/// A random total function `x ↦ (a·x + b) mod p`.
pub fn random_natfun(rng: &mut impl Rng) -> NatFun {
    let (a, b, p) = (rng.gen_range(0..7u32), rng.gen_range(0..11u32), rng.gen_range(2..23u32));
    NatFun::from_fn(move |x| (x * a + b) % p)
}

fn random_args(rng: &mut impl Rng, m: usize) -> Vec<Nat> {
    (0..m).map(|_| n(rng.gen_range(0..20))).collect()
}

fn curry_suite(rng: &mut ChaCha8Rng) -> SuiteReport {
    let mut r = SuiteReport::new("curry");
    let (terms, samples) = (100, 100);
    let mut bad = [0usize; 5];
    for _ in 0..terms {
        let k = rng.gen_range(1..=2);
        let m = rng.gen_range(2..=3);
        let depth = rng.gen_range(1..=4);
        let term = random_term(rng, k, m, depth);
        let cur = curry(&term).expect("m >= 2");
        let round = uncurry(&cur).expect("k >= 1");
        let diag_src = random_term(rng, k + 1, 1, depth);
        let diag = diagonalize(&diag_src).expect("k >= 1");
        let inners: Vec<OperatorTerm> = (0..k).map(|_| random_term(rng, 1, 1, depth)).collect();
        let comp = compose_terms(&term, &inners).expect("arity");
        for _ in 0..samples {
            let fs: Vec<NatFun> = (0..k).map(|_| random_natfun(rng)).collect();
            let args = random_args(rng, m);
            let v = term.eval(&fs, &args).expect("arity");
            let mut cfs = fs.clone();
            cfs.push(NatFun::constant(args[0].clone()));
            bad[0] += usize::from(cur.eval(&cfs, &args[1..]).expect("arity") != v);
            bad[1] += usize::from(round.eval(&fs, &args).expect("arity") != v);

            let x = args[0].clone();
            let mut dfs = fs.clone();
            dfs.push(NatFun::constant(x.clone()));
            let dv = diag_src.eval(&dfs, std::slice::from_ref(&x)).expect("arity");
            bad[2] += usize::from(diag.eval(&fs, std::slice::from_ref(&x)).expect("arity") != dv);

            let g = random_natfun(rng);
            let mids: Vec<NatFun> = inners
                .iter()
                .map(|i| {
                    let (i, g) = (i.clone(), g.clone());
                    NatFun::from_fn(move |x| {
                        i.eval(std::slice::from_ref(&g), std::slice::from_ref(x)).expect("arity")
                    })
                })
                .collect();
            let two_stage = term.eval(&mids, &args).expect("arity");
            bad[3] += usize::from(comp.eval(std::slice::from_ref(&g), &args).expect("arity") != two_stage);

            let (value, trace) = eval_instrumented(&term, &fs, &args).expect("arity");
            if trace.len() > support_bound(&term) {
                bad[4] += 1;
            }
            let i = rng.gen_range(0..k);
            let point = n(rng.gen_range(0..60));
            if !trace.contains(i, &point) {
                let mut mutated = fs.clone();
                let (old, p, bump) = (fs[i].clone(), point.clone(), rng.gen_range(1..50u32));
                mutated[i] = NatFun::from_fn(move |x| {
                    if *x == p {
                        old.eval(x) + bump
                    } else {
                        old.eval(x)
                    }
                });
                bad[4] += usize::from(term.eval(&mutated, &args).expect("arity") != value);
            }
        }
    }
    let checks = [
        "curry law F(f..)(s,t..) = G(f..,c_s)(t..)",
        "uncurry(curry(F)) pointwise",
        "diagonalize direct definition",
        "compose_terms two-stage evaluation",
        "continuity: trace bound and off-trace mutations",
    ];
    for (label, b) in checks.iter().zip(bad) {
        r.check(b == 0, format!("{label} on {terms} terms x {samples} samples ({b} mismatches)"));
    }
    r
}

/// Unary functions with a rational oracle.
pub(crate) fn unary_catalogue() -> Vec<(&'static str, ConditionalFn, fn(&Rational) -> Option<Rational>)> {
    fn inv(q: &Rational) -> Option<Rational> {
        (!q.is_zero()).then(|| q.recip())
    }
    vec![
        ("recip", elementary::recip(), inv),
        ("neg", embed_uniform(&elementary::negate()), |q| Some(-q)),
        ("abs", embed_uniform(&elementary::abs()), |q| Some(q.abs())),
        ("id", embed_uniform(&UniformFn::identity()), |q| Some(q.clone())),
    ]
}

const SEARCH_BUDGET: u64 = 100_000;

fn compose_suite(t_max: u64) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("compose");
    let cat = unary_catalogue();
    let pairs = [(0, 1), (1, 0), (0, 0), (2, 0), (0, 2), (1, 2), (3, 0)];
    for (o, i) in pairs {
        let (on, outer, of) = &cat[o];
        let (inn, inner, inf) = &cat[i];
        let c = compose_conditional(outer, inner)?;
        for q in [rat(2, 3), rat(-5, 2), rat_int(3)] {
            let Some(expect) = inf(&q).and_then(|v| of(&v)) else { continue };
            let names = [rational_name(&q)];
            let applied = c.apply(&names, SEARCH_BUDGET)?;
            let (s0, s1) = (left(&applied.s), right(&applied.s));
            r.note(format!("{on}∘{inn} at {q}: s={} L(s)={s0} R(s)={s1}", applied.s));
            let e3 = inner.condition_at(&names, &s1)?.is_zero();
            let mid = inner.apply_at(&names, &s1)?;
            let e5 = outer.condition_at(std::slice::from_ref(&mid), &s0)?.is_zero();
            r.check(e3 && e5, format!("{on}∘{inn} at {q}: E1(R(s)) = 0 and E0(L(s)) = 0"));
            let ok = validate_name(&applied.name, &expect, t_max).pass();
            r.check(ok, format!("{on}∘{inn} at {q} names {expect} for t <= {t_max}"));
        }
    }
    Ok(r)
}

fn perturbed(rng: &mut impl Rng) -> NameTriple {
    NameTriple::new(random_natfun(rng), random_natfun(rng), random_natfun(rng))
}

fn localize_suite(rng: &mut ChaCha8Rng, t_max: u64) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("localize");
    let cat = unary_catalogue();
    let recip_neg = compose_conditional(&cat[0].1, &cat[1].1)?;
    let cases: [(&str, &ConditionalFn, Rational, fn(&Rational) -> Option<Rational>); 3] = [
        ("recip", &cat[0].1, rat_int(1), cat[0].2),
        ("recip", &cat[0].1, rat(-1, 3), cat[0].2),
        ("recip∘neg", &recip_neg, rat_int(2), |q| Some(-q.recip())),
    ];
    for (label, fun, at, oracle) in cases {
        let loc = localize(fun, &rational_name(&at), SEARCH_BUDGET)?;
        let (lo, hi) = loc.neighborhood.interval();
        r.note(format!(
            "{label} at {at}: s0={} u={} U=({lo}, {hi})",
            loc.s0, loc.neighborhood.u
        ));
        let mut inside = 0;
        for j in 1..=5i64 {
            let x = &lo + (&hi - &lo) * rat(j, 6);
            if !loc.neighborhood.contains(&x) {
                continue;
            }
            inside += 1;
            let out = loc.uniform.apply(&[rational_name(&x)])?;
            let expect = oracle(&x).expect("in domain");
            r.check(
                validate_name(&out, &expect, t_max).pass(),
                format!("{label} localized at {x} for t <= {t_max}"),
            );
        }
        r.check(inside == 5, format!("{label}: five sample points lie in U"));
        let mut bad = 0;
        for _ in 0..100 {
            let p = perturbed(rng);
            let [pp, qq, rr] = &loc.patches;
            let fs = [
                pp.apply(std::slice::from_ref(&p.f))?,
                qq.apply(std::slice::from_ref(&p.g))?,
                rr.apply(std::slice::from_ref(&p.h))?,
            ];
            bad += usize::from(!fun.condition().eval_at(&fs, &loc.s0)?.is_zero());
        }
        r.check(bad == 0, format!("{label}: E vanishes at s0 under 100 patched perturbations"));
    }
    Ok(r)
}

/// `|ξ|` on `[−7/4, 7/4]` from `−ξ`, `|ξ|` and `ξ` near `−1`, `0` and `1`.
pub fn abs_cover() -> BallCover {
    let balls = vec![
        Ball { center: vec![rat_int(-1)], radius: rat_int(1), local: elementary::negate() },
        Ball { center: vec![rat_int(0)], radius: rat(1, 2), local: elementary::abs() },
        Ball { center: vec![rat_int(1)], radius: rat_int(1), local: UniformFn::identity() },
    ];
    BallCover::new(balls, 7).expect("valid cover")
}

fn random_rational(rng: &mut impl Rng, bound: &Rational) -> Rational {
    loop {
        let den = rng.gen_range(1..=16i64);
        let num = rng.gen_range(-3 * den..=3 * den);
        let q = rat(num, den);
        if &q.abs() <= bound {
            return q;
        }
    }
}

fn glue_suite(rng: &mut ChaCha8Rng, t_max: u64) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("glue");
    let cover = abs_cover();
    let glued = glue_compact(&cover)?;
    let domain = rat(7, 4);
    let samples: Vec<Rational> = (0..20).map(|_| random_rational(rng, &domain)).collect();
    let grid: Vec<Vec<Rational>> = (-28..=28).map(|j| vec![rat(j, 16)]).collect();
    r.check(
        check_separation(&cover, &grid).is_empty(),
        "separation rho >= 2/(k+1) on a grid of [-7/4, 7/4]",
    );
    for q in &samples {
        let names = [rational_name(q)];
        let out = glued.apply(&names)?;
        r.check(
            validate_name(&out, &q.abs(), t_max).pass(),
            format!("glued |x| at {q} for t <= {t_max}"),
        );
        let members: Vec<usize> = cover
            .balls
            .iter()
            .enumerate()
            .filter(|(_, b)| (q - &b.center[0]).abs() < b.radius)
            .map(|(i, _)| i)
            .collect();
        if let [only] = members[..] {
            let local = cover.balls[only].local.apply(&names)?;
            let same = (0..=50).all(|t| out.approx_at(t) == local.approx_at(t));
            r.check(
                dispatch_index(&cover, &names) == Some(only) && same,
                format!("{q} lies only in ball {only}; dispatch follows it"),
            );
        }
    }
    Ok(r)
}

fn m1_code(q: &Rational) -> Nat {
    MnSpace::new(1)
        .expect("N = 1")
        .code(std::slice::from_ref(q))
        .expect("one coordinate")
}

fn m1_name(q: &Rational) -> OrdinaryName {
    names_to_ordinary(&[rational_name(q)]).expect("one name")
}

fn same_triples(a: &NameTriple, b: &NameTriple, ts: &[u64]) -> bool {
    ts.iter()
        .all(|&t| a.f.at(t) == b.f.at(t) && a.g.at(t) == b.g.at(t) && a.h.at(t) == b.h.at(t))
}

fn metric_suite(rng: &mut ChaCha8Rng, t_max: u64) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("metric");
    let small = rat_int(3);
    let ts = |rng: &mut ChaCha8Rng| -> Vec<u64> { (0..5).map(|_| rng.gen_range(0..=t_max)).collect() };

    let fns = [
        ("add", elementary::add()),
        ("mul", elementary::mul()),
        ("neg", elementary::negate()),
    ];
    for (label, f) in &fns {
        let back = translate_uniform_back(&translate_uniform(f)?)?;
        let mut ok = true;
        for _ in 0..20 {
            let names: Vec<NameTriple> = (0..f.arity())
                .map(|_| rational_name(&random_rational(rng, &small)))
                .collect();
            let t = ts(rng);
            ok &= same_triples(&f.apply(&names)?, &back.apply(&names)?, &t);
        }
        r.check(ok, format!("constructions 1-2 round trip on {label} (100 samples)"));
    }

    let recip = elementary::recip();
    let ms_recip = translate_conditional(&recip)?;
    let back = translate_conditional_back(&ms_recip)?;
    let mut ok = true;
    for _ in 0..20 {
        let mut q = random_rational(rng, &small);
        if q.is_zero() {
            q = rat(1, 3);
        }
        let names = [rational_name(&q)];
        let a = recip.apply(&names, SEARCH_BUDGET)?;
        let b = back.apply(&names, SEARCH_BUDGET)?;
        let c = ms_recip.apply(&m1_name(&q), SEARCH_BUDGET)?;
        ok &= a.s == b.s && a.s == c.s && same_triples(&a.name, &b.name, &ts(rng));
    }
    r.check(ok, "constructions 3-4 round trip on recip (100 samples)");

    let neg = embed_uniform(&elementary::negate());
    let real = compose_conditional(&recip, &neg)?;
    let ms = compose_conditional_ms(&ms_recip, &translate_conditional(&neg)?)?;
    for q in [rat(2, 3), rat(-7, 5)] {
        let a = real.apply(&[rational_name(&q)], SEARCH_BUDGET)?;
        let b = ms.apply(&m1_name(&q), SEARCH_BUDGET)?;
        let decoded = ordinary_to_names(&b.name)?;
        let same = a.s == b.s && same_triples(&a.name, &decoded[0], &ts(rng));
        let valid = validate_ordinary(&b.name, &m1_code(&-q.recip()), t_max).pass();
        r.check(same && valid, format!("compose analog on M_1 at {q}"));
    }

    let q = rat(1, 2);
    let a = localize(&recip, &rational_name(&q), SEARCH_BUDGET)?;
    let b = localize_ms(&ms_recip, &m1_name(&q), SEARCH_BUDGET)?;
    let (lo, hi) = a.neighborhood.interval();
    let mut ok = a.s0 == b.s0;
    for j in 1..=5i64 {
        let x = &lo + (&hi - &lo) * rat(j, 6);
        ok &= b.neighborhood.contains(&m1_code(&x));
        let out = b.uniform.apply(&m1_name(&x))?;
        ok &= validate_ordinary(&out, &m1_code(&x.recip()), t_max).pass();
        let direct = a.uniform.apply(&[rational_name(&x)])?;
        ok &= same_triples(&direct, &ordinary_to_names(&out)?[0], &ts(rng));
    }
    r.check(ok, "localize analog on M_1 at 1/2");

    let cover = abs_cover();
    let ms_cover = cover
        .balls
        .iter()
        .map(|b| {
            Ok(MsBall {
                center: m1_code(&b.center[0]),
                radius: b.radius.clone(),
                local: translate_uniform(&b.local)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let ga = glue_compact(&cover)?;
    let gb = glue_compact_ms(&ms_cover, cover.k)?;
    let mut ok = true;
    for _ in 0..10 {
        let x = random_rational(rng, &rat(7, 4));
        let out = gb.apply(&m1_name(&x))?;
        ok &= validate_ordinary(&out, &m1_code(&x.abs()), t_max).pass();
        let direct = ga.apply(&[rational_name(&x)])?;
        ok &= same_triples(&direct, &ordinary_to_names(&out)?[0], &ts(rng));
    }
    r.check(ok, "glue analog on M_1 for |x|");

    let theta = tuple_conditional(&[ms_recip.clone(), translate_conditional(&neg)?])?;
    let add = translate_conditional(&embed_uniform(&elementary::add()))?;
    let sub = compose_conditional_ms(&add, &theta)?;
    for q in [rat(2, 3), rat(-5, 4), rat_int(3)] {
        let out = sub.apply(&m1_name(&q), SEARCH_BUDGET)?;
        let expect = q.recip() - &q;
        r.check(
            validate_ordinary(&out.name, &m1_code(&expect), t_max).pass(),
            format!("add(recip(x), neg(x)) through tupling at {q}"),
        );
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert!(matches!(run_suite("nope", 1, 10), Err(Error::Parse(_))));
    }

    #[test]
    fn random_terms_fit_their_arities() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let t = random_term(&mut rng, 2, 3, 4);
            assert!(t.root().depth() <= 5);
            let fs = [random_natfun(&mut rng), random_natfun(&mut rng)];
            t.eval(&fs, &[n(1), n(2), n(3)]).unwrap();
        }
    }

    #[test]
    fn quick_suites_pass() {
        for name in ["gadgets", "compose", "glue"] {
            let r = run_suite(name, DEFAULT_SEED, 60).unwrap();
            assert!(r.pass(), "{r}");
        }
    }
}
