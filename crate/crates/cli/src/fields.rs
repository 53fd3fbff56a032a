//! Seeded random test data: polynomial fields, points, potentials, gauge maps.

use liepoisson::expr::Expr;
use liepoisson::gauge::{GaugeMap, PotentialSpec};
use liepoisson::group::exp;
use liepoisson::poisson::{expr_field, PhasePoint};
use liepoisson::{GroupElement, LieAlgebra, Result};
use rand::Rng;

pub fn uniform(rng: &mut impl Rng, n: usize, scale: f64) -> Vec<f64> {
    (0..n)
        .map(|_| scale * rng.random_range(-1.0..1.0))
        .collect()
}

/// Constant + linear + two quadratic monomials with coefficients in `[-1, 1]`.
pub fn random_poly(rng: &mut impl Rng, vars: &[String]) -> String {
    let mut terms = vec![format!("{}", rng.random_range(-1.0..1.0))];
    for v in vars {
        terms.push(format!("({})*{v}", rng.random_range(-1.0..1.0)));
    }
    if !vars.is_empty() {
        for _ in 0..2 {
            let a = &vars[rng.random_range(0..vars.len())];
            let b = &vars[rng.random_range(0..vars.len())];
            terms.push(format!("({})*{a}*{b}", rng.random_range(-1.0..1.0)));
        }
    }
    terms.join(" + ")
}

pub fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// Real and imaginary parts of the first row of the group matrix plus the trace.
pub fn group_names(d: usize) -> Vec<String> {
    let mut v: Vec<String> = (1..=d)
        .flat_map(|c| [format!("gre1{c}"), format!("gim1{c}")])
        .collect();
    v.push("retr".into());
    v
}

pub type BoxField = Box<dyn Fn(&PhasePoint) -> f64>;

pub fn field(src: &str) -> Result<BoxField> {
    Ok(Box::new(expr_field(Expr::parse(src)?)))
}

pub fn random_field(rng: &mut impl Rng, vars: &[String]) -> Result<BoxField> {
    field(&random_poly(rng, vars))
}

pub fn random_group(rng: &mut impl Rng, alg: &LieAlgebra) -> Result<GroupElement> {
    exp(alg, &uniform(rng, alg.dim(), 1.5))
}

/// Quadratic polynomial entries `A^j_i(q)` scaled by `scale`.
pub fn random_potential(
    rng: &mut impl Rng,
    dim: usize,
    n_base: usize,
    scale: f64,
) -> PotentialSpec {
    let q = names("q", n_base);
    let mut entries = Vec::new();
    for j in 1..=dim {
        for i in 1..=n_base {
            entries.push((j, i, format!("({scale})*({})", random_poly(rng, &q))));
        }
    }
    PotentialSpec::Expression { entries }
}

/// `s(q) = exp(Σ_a χ_a(q) X_a)` with quadratic `χ_a`.
pub fn random_gauge_map(
    rng: &mut impl Rng,
    dim: usize,
    n_base: usize,
    scale: f64,
) -> Result<GaugeMap> {
    let q = names("q", n_base);
    let chi = (0..dim)
        .map(|_| Expr::parse(&format!("({scale})*({})", random_poly(rng, &q))))
        .collect::<Result<Vec<_>>>()?;
    Ok(GaugeMap::Exp(chi))
}

/// `χ(q) = Σ a_i q_i + Σ b_ij q_i q_j` with its exact gradient.
#[derive(Debug, Clone)]
pub struct QuadraticScalar {
    pub a: Vec<f64>,
    pub b: Vec<Vec<f64>>,
}

impl QuadraticScalar {
    pub fn random(rng: &mut impl Rng, n: usize) -> Self {
        Self {
            a: uniform(rng, n, 1.0),
            b: (0..n).map(|_| uniform(rng, n, 1.0)).collect(),
        }
    }

    pub fn gradient(&self, q: &[f64]) -> Vec<f64> {
        let n = self.a.len();
        (0..n)
            .map(|i| {
                self.a[i]
                    + (0..n)
                        .map(|j| (self.b[i][j] + self.b[j][i]) * q[j])
                        .sum::<f64>()
            })
            .collect()
    }
}
