//! Arithmetic gadgets used by the constructions: `δ₁`/`δ_K`, `μ_{k,c}`,
//! `γ_{b,c}`, the comparisons `lt_a`/`gt_a`, ball indicators, pairing and
//! tupling, plus the registry that serves them as a base signature.

mod arith;
mod pairing;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

pub use arith::{
    add_fn, ball_indicator, constant_fn, delta_1, delta_fn, delta_k, gamma, gamma_eval, gt, lt,
    monus, monus_fn, mu, mul_fn, successor_fn,
};
pub use pairing::{
    conj, conj_fn, left, left_fn, pair, pair_fn, project, project_fn, right, right_fn, tuple,
    tuple_fn, unpair, untuple,
};

use crate::error::Result;
use crate::naming::{parse_rational, Nat, NatFun, Rational};
use crate::terms::{
    binary_composition_term, compose_terms, diagonalize, eval_term, projection_term, BaseFunction,
    Node, OperatorTerm, Signature,
};

/// Named base functions. Explicit entries are listed and checked for
/// decency; parametrized families (`delta_K`, `mu_k_c`, `gamma_b_c`,
/// `const_c`, `J_K`, `P_K_i`, `lt[a]`, `gt[a]`, `ball[a₁,…;q]`) are built on
/// first lookup and cached.
pub struct GadgetRegistry {
    explicit: BTreeMap<String, BaseFunction>,
    families: bool,
    derived: Mutex<HashMap<String, BaseFunction>>,
}

/// Descriptions of the parametrized families, for listings.
pub const FAMILIES: &[(&str, &str)] = &[
    ("delta_K", "δ_K, arity 2K+1: first y_i with x_i = 0, else z"),
    ("mu_k_c", "μ_{k,c}, arity 2: c if x = k, y otherwise"),
    ("gamma_b_c", "γ_{b,c}, arity b+c: positive iff Σx > Σy"),
    ("const_c", "nullary constant c"),
    ("J_K", "K-tupling, arity K"),
    ("P_K_i", "i-th projection of a K-tuple code, arity 1"),
    ("lt[a]", "arity 3: positive iff (x−y)/(z+1) < a"),
    ("gt[a]", "arity 3: positive iff (x−y)/(z+1) > a"),
    ("ball[a1,…,aN;q]", "arity 3N: zero iff the point is in the open max-norm q-ball at a"),
];

impl Default for GadgetRegistry {
    fn default() -> Self {
        let mut reg = GadgetRegistry::empty();
        reg.families = true;
        for f in [
            successor_fn(),
            monus_fn(),
            delta_fn(1),
            add_fn(),
            mul_fn(),
            conj_fn(),
            pair_fn(),
            left_fn(),
            right_fn(),
            constant_fn(0u32),
            constant_fn(1u32),
        ] {
            reg.insert(f);
        }
        reg
    }
}

impl GadgetRegistry {
    /// A registry with no entries and no derived families.
    pub fn empty() -> Self {
        GadgetRegistry {
            explicit: BTreeMap::new(),
            families: false,
            derived: Mutex::new(HashMap::new()),
        }
    }

    pub fn with_families(mut self, on: bool) -> Self {
        self.families = on;
        self
    }

    /// Adds or replaces an explicit entry.
    pub fn insert(&mut self, f: BaseFunction) {
        self.explicit.insert(f.name().to_string(), f);
    }

    pub fn remove(&mut self, name: &str) -> Option<BaseFunction> {
        self.explicit.remove(name)
    }

    /// Explicit entry by name.
    pub fn get(&self, name: &str) -> Option<&BaseFunction> {
        self.explicit.get(name)
    }

    pub fn entries(&self) -> impl Iterator<Item = &BaseFunction> {
        self.explicit.values()
    }

    /// Explicit entry, else a member of a parametrized family.
    pub fn resolve(&self, name: &str) -> Option<BaseFunction> {
        if let Some(f) = self.explicit.get(name) {
            return Some(f.clone());
        }
        if !self.families {
            return None;
        }
        let mut derived = self.derived.lock().expect("registry cache poisoned");
        if let Some(f) = derived.get(name) {
            return Some(f.clone());
        }
        let f = derive_family(name)?;
        derived.insert(name.to_string(), f.clone());
        Some(f)
    }
}

impl Signature for GadgetRegistry {
    fn lookup(&self, name: &str) -> Option<BaseFunction> {
        self.resolve(name)
    }
}

fn parse_indices(rest: &str, count: usize) -> Option<Vec<usize>> {
    let parts: Vec<usize> = rest
        .split('_')
        .map(|p| p.parse().ok())
        .collect::<Option<_>>()?;
    (parts.len() == count).then_some(parts)
}

fn bracketed<'a>(name: &'a str, prefix: &str) -> Option<&'a str> {
    name.strip_prefix(prefix)?.strip_suffix(']')
}

fn derive_family(name: &str) -> Option<BaseFunction> {
    if let Some(rest) = name.strip_prefix("delta_") {
        return parse_indices(rest, 1).map(|v| delta_fn(v[0]));
    }
    if let Some(rest) = name.strip_prefix("mu_") {
        let parts: Vec<Nat> = rest
            .split('_')
            .map(|p| p.parse().ok())
            .collect::<Option<_>>()?;
        return (parts.len() == 2).then(|| mu(parts[0].clone(), parts[1].clone()));
    }
    if let Some(rest) = name.strip_prefix("gamma_") {
        let v = parse_indices(rest, 2)?;
        return gamma(v[0], v[1]).ok();
    }
    if let Some(rest) = name.strip_prefix("const_") {
        return rest.parse::<Nat>().ok().map(constant_fn);
    }
    if let Some(rest) = name.strip_prefix("J_") {
        let v = parse_indices(rest, 1)?;
        return tuple_fn(v[0]).ok();
    }
    if let Some(rest) = name.strip_prefix("P_") {
        let v = parse_indices(rest, 2)?;
        return project_fn(v[0], v[1]).ok();
    }
    if let Some(a) = bracketed(name, "lt[") {
        return parse_rational(a).ok().map(|a| lt(&a));
    }
    if let Some(a) = bracketed(name, "gt[") {
        return parse_rational(a).ok().map(|a| gt(&a));
    }
    if let Some(body) = bracketed(name, "ball[") {
        let (center, q) = body.split_once(';')?;
        let center: Vec<Rational> = center
            .split(',')
            .map(|c| parse_rational(c).ok())
            .collect::<Option<_>>()?;
        let q = parse_rational(q).ok()?;
        return ball_indicator(&center, &q).ok();
    }
    None
}

/// The constant `c` as a unary term over `succ` and `monus`:
/// `succ(…succ(x ∸ x)…)`.
pub fn derived_constant(sig: &dyn Signature, c: usize) -> Result<OperatorTerm> {
    let missing = |n: &str| crate::error::Error::UnknownFunction(n.to_string());
    let succ = sig.lookup("succ").ok_or_else(|| missing("succ"))?;
    let monus = sig.lookup("monus").ok_or_else(|| missing("monus"))?;
    let mut node = Node::base(&monus, vec![Node::proj(1), Node::proj(1)]);
    for _ in 0..c {
        node = Node::base(&succ, vec![node]);
    }
    OperatorTerm::new(0, 1, node)
}

/// Outcome of one decency requirement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Missing,
    Mismatch {
        args: Vec<Nat>,
        expected: Nat,
        found: Nat,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckEntry {
    pub name: String,
    pub status: CheckStatus,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DecencyReport {
    pub entries: Vec<CheckEntry>,
}

impl DecencyReport {
    pub fn pass(&self) -> bool {
        self.entries.iter().all(|e| e.status == CheckStatus::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| e.status != CheckStatus::Pass)
    }
}

impl fmt::Display for DecencyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            match &e.status {
                CheckStatus::Pass => writeln!(f, "{}: pass", e.name)?,
                CheckStatus::Missing => writeln!(f, "{}: missing", e.name)?,
                CheckStatus::Mismatch {
                    args,
                    expected,
                    found,
                } => {
                    let args: Vec<String> = args.iter().map(Nat::to_string).collect();
                    writeln!(
                        f,
                        "{}: mismatch at ({}): expected {expected}, found {found}",
                        e.name,
                        args.join(", ")
                    )?
                }
            }
        }
        write!(f, "overall={}", if self.pass() { "pass" } else { "fail" })
    }
}

fn grid(arity: usize, max: u64) -> Vec<Vec<Nat>> {
    let mut out = vec![vec![]];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=max).map(move |v| {
                    let mut q = p.clone();
                    q.push(Nat::from(v));
                    q
                })
            })
            .collect();
    }
    out
}

fn check_function(
    reg: &GadgetRegistry,
    name: &str,
    arity: usize,
    max: u64,
    reference: impl Fn(&[Nat]) -> Nat,
) -> CheckEntry {
    let status = match reg.get(name) {
        None => CheckStatus::Missing,
        Some(f) if f.arity() != arity => CheckStatus::Missing,
        Some(f) => grid(arity, max)
            .into_iter()
            .find_map(|args| {
                let expected = reference(&args);
                let found = f.call(&args).expect("arity checked");
                (found != expected).then_some(CheckStatus::Mismatch {
                    args,
                    expected,
                    found,
                })
            })
            .unwrap_or(CheckStatus::Pass),
    };
    CheckEntry {
        name: name.to_string(),
        status,
    }
}

fn check_witness(name: &str, ok: bool) -> CheckEntry {
    CheckEntry {
        name: name.to_string(),
        status: if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Mismatch {
                args: vec![],
                expected: Nat::from(1u8),
                found: Nat::from(0u8),
            }
        },
    }
}

/// Pointwise checks that projections, binary composition, substitution and
/// diagonalization are realized by the term constructions.
fn appropriateness_witnesses() -> Vec<CheckEntry> {
    let f1 = NatFun::from_fn(|x| x * 3u32 + 1u32);
    let f2 = NatFun::from_fn(|x| x / 2u32 + 5u32);
    let fns = [f1.clone(), f2.clone()];
    let points: Vec<Nat> = (0..25u32).map(Nat::from).collect();
    let eval = |t: &OperatorTerm, fs: &[NatFun], n: &Nat| {
        eval_term(t, fs, std::slice::from_ref(n)).ok()
    };

    let proj_ok = (1..=2).all(|i| {
        let t = projection_term(2, i).expect("valid index");
        points
            .iter()
            .all(|n| eval(&t, &fns, n) == Some(fns[i - 1].eval(n)))
    });

    let comp = binary_composition_term();
    let comp_ok = points
        .iter()
        .all(|n| eval(&comp, &fns, n) == Some(f1.eval(&f2.eval(n))));

    let swapped = compose_terms(
        &comp,
        &[
            projection_term(2, 2).expect("valid index"),
            projection_term(2, 1).expect("valid index"),
        ],
    );
    let subst_ok = swapped.is_ok_and(|t| {
        points
            .iter()
            .all(|n| eval(&t, &fns, n) == Some(f2.eval(&f1.eval(n))))
    });

    let diag_ok = diagonalize(&comp).is_ok_and(|t| {
        points.iter().all(|n| {
            let with_const = [f1.clone(), NatFun::constant(n.clone())];
            eval(&t, &fns[..1], n) == eval(&comp, &with_const, n)
        })
    });

    vec![
        check_witness("appropriate:projection", proj_ok),
        check_witness("appropriate:binary-composition", comp_ok),
        check_witness("appropriate:substitution", subst_ok),
        check_witness("appropriate:diagonalization", diag_ok),
    ]
}

/// Checks that `succ`, `monus` and `delta_1` are present and correct on a
/// small exhaustive domain, and that the closure witnesses hold.
pub fn decency_check(reg: &GadgetRegistry) -> DecencyReport {
    let mut entries = vec![
        check_function(reg, "succ", 1, 30, |a| &a[0] + 1u32),
        check_function(reg, "monus", 2, 12, |a| {
            if a[0] > a[1] {
                &a[0] - &a[1]
            } else {
                Nat::from(0u8)
            }
        }),
        check_function(reg, "delta_1", 3, 6, |a| {
            if a[0] == Nat::from(0u8) {
                a[1].clone()
            } else {
                a[2].clone()
            }
        }),
    ];
    entries.extend(appropriateness_witnesses());
    DecencyReport { entries }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_registry_is_decent() {
        let report = decency_check(&GadgetRegistry::default());
        assert!(report.pass(), "{report}");
        assert!(report.to_string().ends_with("overall=pass"));
    }

    #[test]
    fn missing_delta_is_reported() {
        let mut reg = GadgetRegistry::default();
        reg.remove("delta_1");
        let report = decency_check(&reg);
        assert!(!report.pass());
        let failed: Vec<_> = report.failures().collect();
        assert_eq!(failed.len(), 1);
        assert_eq!(failed[0].name, "delta_1");
        assert_eq!(failed[0].status, CheckStatus::Missing);
    }

    #[test]
    fn wrapping_subtraction_is_caught() {
        let mut reg = GadgetRegistry::default();
        reg.insert(BaseFunction::new("monus", 2, |a| {
            let x = u64::try_from(&a[0]).unwrap_or(0);
            let y = u64::try_from(&a[1]).unwrap_or(0);
            Nat::from(x.wrapping_sub(y))
        }));
        let report = decency_check(&reg);
        let failed: Vec<_> = report.failures().collect();
        assert_eq!(failed.len(), 1);
        match &failed[0].status {
            CheckStatus::Mismatch { args, expected, .. } => {
                assert_eq!(args, &vec![Nat::from(0u8), Nat::from(1u8)]);
                assert_eq!(expected, &Nat::from(0u8));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn families_resolve_by_name() {
        let reg = GadgetRegistry::default();
        for (name, arity) in [
            ("delta_3", 7),
            ("mu_3_8", 2),
            ("gamma_2_3", 5),
            ("const_42", 0),
            ("J_4", 4),
            ("P_4_2", 1),
            ("lt[1/3]", 3),
            ("gt[-2]", 3),
            ("ball[0,1/2;1]", 6),
        ] {
            let f = reg.resolve(name).unwrap_or_else(|| panic!("{name}"));
            assert_eq!(f.arity(), arity, "{name}");
            assert_eq!(f.name(), name);
        }
        assert!(reg.resolve("gamma_0_1").is_none());
        assert!(reg.resolve("P_2_3").is_none());
        assert!(reg.resolve("nope").is_none());
        assert!(GadgetRegistry::empty().resolve("delta_2").is_none());
    }

    #[test]
    fn constants_from_successor_and_monus() {
        let reg = GadgetRegistry::default();
        for c in 0..=100usize {
            let t = derived_constant(&reg, c).unwrap();
            for x in [0u32, 1, 17, 1000] {
                assert_eq!(
                    t.eval(&[], &[Nat::from(x)]).unwrap(),
                    NatFun::constant(Nat::from(c)).eval(&Nat::from(x))
                );
            }
        }
    }
}
