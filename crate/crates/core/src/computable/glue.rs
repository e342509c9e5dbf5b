use num_traits::Signed;

use super::UniformFn;
use crate::error::{check_arity, Error, Result};
use crate::gadgets::{ball_indicator, constant_fn, delta_fn};
use crate::naming::{bound, NameTriple, Nat, Rational};
use crate::terms::{Node, Operator, OperatorTerm};

/// `U = { ξ̄ : max_j |ξ_j − a_j| < d }` with a uniform function valid there.
#[derive(Clone, Debug)]
pub struct Ball {
    pub center: Vec<Rational>,
    pub radius: Rational,
    pub local: UniformFn,
}

/// Balls covering a compact domain, with the index `k` at which names are
/// inspected to pick a ball. The caller warrants `ρ(ξ̄) ≥ 2/(k + 1)` on the
/// domain.
#[derive(Clone, Debug)]
pub struct BallCover {
    pub balls: Vec<Ball>,
    pub k: u64,
}

impl BallCover {
    pub fn new(balls: Vec<Ball>, k: u64) -> Result<Self> {
        let first = balls.first().ok_or(Error::EmptyCover)?;
        let n = first.center.len();
        for b in &balls {
            check_arity("ball center dimension", n, b.center.len())?;
            check_arity("ball local arity", n, b.local.arity())?;
            if !b.radius.is_positive() {
                return Err(Error::InvalidParameter(format!(
                    "ball radius must be positive, got {}",
                    b.radius
                )));
            }
        }
        Ok(BallCover { balls, k })
    }

    pub fn dimension(&self) -> usize {
        self.balls[0].center.len()
    }

    /// `d_i − 1/(k + 1)` for each ball.
    fn shrunk_radii(&self) -> Vec<Rational> {
        let b = bound(&Nat::from(self.k));
        self.balls.iter().map(|ball| &ball.radius - &b).collect()
    }
}

/// `F(…)(t) = δ_K(S₁(…)(t), F₁(…)(t), …, S_K(…)(t), F_K(…)(t), 0)` where
/// `S_i(…)(t) = e_i(f₁(k), g₁(k), h₁(k), …)` and `e_i` is the indicator of the
/// ball of radius `d_i − 1/(k + 1)`; similarly for `G` and `H`.
pub fn glue_compact(cover: &BallCover) -> Result<UniformFn> {
    if cover.balls.is_empty() {
        return Err(Error::EmptyCover);
    }
    let n = cover.dimension();
    let arity = 3 * n;
    let k = constant_fn(cover.k);
    let selectors = cover
        .balls
        .iter()
        .zip(cover.shrunk_radii())
        .map(|(ball, q)| {
            let e = ball_indicator(&ball.center, &q)?;
            let subs = (1..=arity)
                .map(|j| Node::apply(j, Node::base(&k, vec![])))
                .collect();
            Operator::from_term(OperatorTerm::new(arity, 1, Node::base(&e, subs))?)
        })
        .collect::<Result<Vec<_>>>()?;
    let delta = delta_fn(cover.balls.len());
    let zero = Operator::constant(arity, &constant_fn(0u32))?;
    let component = |c: usize| -> Result<Operator> {
        let mut subs = Vec::with_capacity(2 * selectors.len() + 1);
        for (s, ball) in selectors.iter().zip(&cover.balls) {
            subs.push(s.clone());
            subs.push(ball.local.operators()[c].clone());
        }
        subs.push(zero.clone());
        Operator::base_of(&delta, &subs)
    };
    UniformFn::new(n, component(0)?, component(1)?, component(2)?)
}

/// The least (0-based) ball whose shrunk test passes on the index-`k`
/// approximations of `names`, as the glued function selects it.
pub fn dispatch_index(cover: &BallCover, names: &[NameTriple]) -> Option<usize> {
    let k = Nat::from(cover.k);
    let xs: Vec<Rational> = names.iter().map(|nm| nm.approx(&k)).collect();
    cover
        .balls
        .iter()
        .zip(cover.shrunk_radii())
        .position(|(ball, q)| max_dist(&xs, &ball.center) < q)
}

fn max_dist(xs: &[Rational], center: &[Rational]) -> Rational {
    xs.iter()
        .zip(center)
        .map(|(x, a)| (x - a).abs())
        .max()
        .unwrap_or_default()
}

/// `ρ(ξ̄) = max_i (d_i − max_j |ξ_j − a_ij|)` at a sample and the required
/// `2/(k + 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    pub point: Vec<Rational>,
    pub rho: Rational,
    pub required: Rational,
}

impl Separation {
    pub fn ok(&self) -> bool {
        self.rho >= self.required
    }
}

pub fn separation(cover: &BallCover, point: &[Rational]) -> Separation {
    let rho = cover
        .balls
        .iter()
        .map(|b| &b.radius - max_dist(point, &b.center))
        .max()
        .expect("nonempty cover");
    Separation {
        point: point.to_vec(),
        rho,
        required: bound(&Nat::from(cover.k)) * Rational::from_integer(2.into()),
    }
}

/// Samples where `ρ < 2/(k + 1)` was observed. An empty result is evidence,
/// not proof, that `k` is adequate.
pub fn check_separation(cover: &BallCover, samples: &[Vec<Rational>]) -> Vec<Separation> {
    samples
        .iter()
        .map(|p| separation(cover, p))
        .filter(|s| !s.ok())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::naming::{rat, rat_int, rational_name, validate_name};

    #[test]
    fn single_ball_is_the_local_function() {
        let cover = BallCover::new(
            vec![Ball {
                center: vec![rat_int(0)],
                radius: rat_int(1),
                local: UniformFn::identity(),
            }],
            3,
        )
        .unwrap();
        let glued = glue_compact(&cover).unwrap();
        assert!(glued.is_term());
        let q = rat_int(0);
        let out = glued.apply(&[rational_name(&q)]).unwrap();
        assert!(validate_name(&out, &q, 300).pass());
        assert_eq!(dispatch_index(&cover, &[rational_name(&q)]), Some(0));
        assert!(check_separation(&cover, &[vec![rat_int(0)]]).is_empty());
    }

    #[test]
    fn outside_every_ball_gives_zero() {
        let cover = BallCover::new(
            vec![Ball {
                center: vec![rat_int(0)],
                radius: rat(1, 2),
                local: UniformFn::identity(),
            }],
            3,
        )
        .unwrap();
        let glued = glue_compact(&cover).unwrap();
        let out = glued.apply(&[rational_name(&rat_int(5))]).unwrap();
        for t in 0..10 {
            assert_eq!(out.approx_at(t), rat_int(0));
        }
        assert_eq!(dispatch_index(&cover, &[rational_name(&rat_int(5))]), None);
        assert_eq!(check_separation(&cover, &[vec![rat_int(5)]]).len(), 1);
    }

    #[test]
    fn cover_validation() {
        assert_eq!(BallCover::new(vec![], 1).unwrap_err(), Error::EmptyCover);
        let bad = Ball {
            center: vec![rat_int(0)],
            radius: rat_int(0),
            local: UniformFn::identity(),
        };
        assert!(BallCover::new(vec![bad], 1).is_err());
    }
}
