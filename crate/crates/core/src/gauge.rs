//! Connections on the trivial bundle `Rⁿ × G`.
//!
//! A vector potential is `A = Σ A^j_i dq_i ⊗ X_j`. Its curvature is stored as
//! `F = Σ_jk F^i_jk dq_j ∧ dq_k ⊗ X_i` summed over all ordered pairs, so the
//! stored tensor holds half the two-form coefficient:
//!
//! ```text
//! F^i_jk = ½ (∂_j A^i_k − ∂_k A^i_j + Σ_ab c^i_ab A^a_j A^b_k)
//! F^∧(∂_j, ∂_k) = 2 F_jk
//! ```

use std::fmt;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{CMatrix, LieAlgebra};
use crate::error::{check_dim, finite, Error, Result};
use crate::expr::{Expr, Var};
use crate::group::{adjoint_matrix, exp, mat_vec, GroupElement, DEFAULT_STEP};

/// `a[i][j] = A^j_i(q)`: row `i` is the algebra vector `A_q(∂_i)`.
pub type PotentialValue = Vec<Vec<f64>>;

type PotentialFn = dyn Fn(&[f64]) -> Result<PotentialValue> + Send + Sync;

#[derive(Clone)]
pub enum PotentialKind {
    Zero,
    /// Constant components, indexed like [`PotentialValue`].
    Constant(PotentialValue),
    /// u1 potential `A = ½B(−q₂ dq₁ + q₁ dq₂)`, uniform field `B` in the (1,2) plane.
    UniformB(f64),
    /// `A^j_i = κ Σ_k ε_jik q_k` on `R³` with values in a 3-dimensional algebra.
    Hedgehog(f64),
    /// `exprs[i][j]` gives `A^j_i` as a function of `q`.
    Expression(Vec<Vec<Expr>>),
    Func(Arc<PotentialFn>),
}

impl fmt::Debug for PotentialKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PotentialKind::Zero => write!(f, "Zero"),
            PotentialKind::Constant(a) => write!(f, "Constant({a:?})"),
            PotentialKind::UniformB(b) => write!(f, "UniformB({b})"),
            PotentialKind::Hedgehog(k) => write!(f, "Hedgehog({k})"),
            PotentialKind::Expression(e) => write!(f, "Expression({e:?})"),
            PotentialKind::Func(_) => write!(f, "Func(..)"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct VectorPotential {
    n_base: usize,
    dim: usize,
    kind: PotentialKind,
}

impl VectorPotential {
    pub fn zero(n_base: usize, dim: usize) -> Self {
        Self {
            n_base,
            dim,
            kind: PotentialKind::Zero,
        }
    }

    pub fn constant(values: PotentialValue, dim: usize) -> Result<Self> {
        for row in &values {
            check_dim(dim, row.len())?;
        }
        Ok(Self {
            n_base: values.len(),
            dim,
            kind: PotentialKind::Constant(values),
        })
    }

    pub fn uniform_b(n_base: usize, b: f64) -> Result<Self> {
        if n_base < 2 {
            return Err(Error::InvalidSpec(
                "uniform field needs a base of dimension at least 2".into(),
            ));
        }
        Ok(Self {
            n_base,
            dim: 1,
            kind: PotentialKind::UniformB(b),
        })
    }

    pub fn hedgehog(kappa: f64) -> Self {
        Self {
            n_base: 3,
            dim: 3,
            kind: PotentialKind::Hedgehog(kappa),
        }
    }

    /// Components `A^j_i` as expressions in `q1..qn`; missing entries are zero.
    pub fn expression(n_base: usize, dim: usize, exprs: Vec<Vec<Expr>>) -> Result<Self> {
        check_dim(n_base, exprs.len())?;
        for row in &exprs {
            check_dim(dim, row.len())?;
            for e in row {
                e.check_vars(|v| matches!(v, Var::Q(i) if *i < n_base))?;
            }
        }
        Ok(Self {
            n_base,
            dim,
            kind: PotentialKind::Expression(exprs),
        })
    }

    pub fn from_fn(
        n_base: usize,
        dim: usize,
        f: impl Fn(&[f64]) -> Result<PotentialValue> + Send + Sync + 'static,
    ) -> Self {
        Self {
            n_base,
            dim,
            kind: PotentialKind::Func(Arc::new(f)),
        }
    }

    pub fn n_base(&self) -> usize {
        self.n_base
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> &PotentialKind {
        &self.kind
    }

    pub fn eval(&self, q: &[f64]) -> Result<PotentialValue> {
        check_dim(self.n_base, q.len())?;
        let (n, d) = (self.n_base, self.dim);
        let out = match &self.kind {
            PotentialKind::Zero => vec![vec![0.0; d]; n],
            PotentialKind::Constant(a) => a.clone(),
            PotentialKind::UniformB(b) => {
                let mut a = vec![vec![0.0; d]; n];
                a[0][0] = -0.5 * b * q[1];
                a[1][0] = 0.5 * b * q[0];
                a
            }
            PotentialKind::Hedgehog(kappa) => (0..3)
                .map(|i| {
                    (0..3)
                        .map(|j| kappa * (0..3).map(|k| levi_civita(j, i, k) * q[k]).sum::<f64>())
                        .collect()
                })
                .collect(),
            PotentialKind::Expression(exprs) => {
                let env = |v: Var| match v {
                    Var::Q(i) => q.get(i).copied().unwrap_or(f64::NAN),
                    _ => f64::NAN,
                };
                exprs
                    .iter()
                    .map(|row| row.iter().map(|e| e.eval(&env)).collect())
                    .collect()
            }
            PotentialKind::Func(f) => {
                let a = f(q)?;
                check_dim(n, a.len())?;
                for row in &a {
                    check_dim(d, row.len())?;
                }
                a
            }
        };
        for row in &out {
            for &v in row {
                finite(v, "vector potential")?;
            }
        }
        Ok(out)
    }

    /// `A_q(v) = Σ_i v_i A_q(∂_i)`.
    pub fn along(&self, q: &[f64], v: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.n_base, v.len())?;
        let a = self.eval(q)?;
        Ok((0..self.dim)
            .map(|j| (0..self.n_base).map(|i| v[i] * a[i][j]).sum())
            .collect())
    }

    /// `A + dχ` for an abelian potential, `dχ` given by its components.
    pub fn shifted(&self, dchi: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static) -> Self {
        let base = self.clone();
        Self::from_fn(self.n_base, self.dim, move |q| {
            let mut a = base.eval(q)?;
            for (i, d) in dchi(q).into_iter().enumerate() {
                for v in a[i].iter_mut() {
                    *v += d;
                }
            }
            Ok(a)
        })
    }
}

fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// JSON form of a potential.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PotentialSpec {
    #[default]
    Zero,
    Constant {
        values: PotentialValue,
    },
    UniformB {
        #[serde(rename = "B")]
        b: f64,
    },
    Hedgehog {
        #[serde(default = "unit")]
        kappa: f64,
    },
    /// Entries `[j, i, "expr"]` (one-based) set `A^j_i`.
    Expression {
        entries: Vec<(usize, usize, String)>,
    },
}

fn unit() -> f64 {
    1.0
}

impl PotentialSpec {
    pub fn build(&self, alg: &LieAlgebra, n_base: usize) -> Result<VectorPotential> {
        let d = alg.dim();
        match self {
            PotentialSpec::Zero => Ok(VectorPotential::zero(n_base, d)),
            PotentialSpec::Constant { values } => {
                check_dim(n_base, values.len())?;
                VectorPotential::constant(values.clone(), d)
            }
            PotentialSpec::UniformB { b } => {
                if !alg.is_abelian() || d != 1 {
                    return Err(Error::InvalidSpec(
                        "uniform_b needs a one-dimensional abelian algebra".into(),
                    ));
                }
                VectorPotential::uniform_b(n_base, *b)
            }
            PotentialSpec::Hedgehog { kappa } => {
                if d != 3 || n_base != 3 {
                    return Err(Error::InvalidSpec(
                        "hedgehog needs a 3-dimensional algebra over R³".into(),
                    ));
                }
                Ok(VectorPotential::hedgehog(*kappa))
            }
            PotentialSpec::Expression { entries } => {
                let mut exprs = vec![vec![Expr::constant(0.0); d]; n_base];
                for (j, i, src) in entries {
                    if *j == 0 || *j > d {
                        return Err(Error::DimensionMismatch {
                            expected: d,
                            actual: *j,
                        });
                    }
                    if *i == 0 || *i > n_base {
                        return Err(Error::DimensionMismatch {
                            expected: n_base,
                            actual: *i,
                        });
                    }
                    exprs[i - 1][j - 1] = Expr::parse(src)?;
                }
                VectorPotential::expression(n_base, d, exprs)
            }
        }
    }
}

/// Stored curvature `F^i_jk`, antisymmetric in `(j, k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureField {
    n_base: usize,
    dim: usize,
    /// `f[(i * n + j) * n + k]`
    f: Vec<f64>,
}

impl CurvatureField {
    pub fn zeros(n_base: usize, dim: usize) -> Self {
        Self {
            n_base,
            dim,
            f: vec![0.0; dim * n_base * n_base],
        }
    }

    /// Builds from arbitrary coefficients, keeping only the antisymmetric part.
    pub fn from_fn(n_base: usize, dim: usize, g: impl Fn(usize, usize, usize) -> f64) -> Self {
        let mut out = Self::zeros(n_base, dim);
        for i in 0..dim {
            for j in 0..n_base {
                for k in (j + 1)..n_base {
                    let v = 0.5 * (g(i, j, k) - g(i, k, j));
                    out.set(i, j, k, v);
                }
            }
        }
        out
    }

    fn set(&mut self, i: usize, j: usize, k: usize, v: f64) {
        let n = self.n_base;
        self.f[(i * n + j) * n + k] = v;
        self.f[(i * n + k) * n + j] = -v;
    }

    pub fn n_base(&self) -> usize {
        self.n_base
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        let n = self.n_base;
        self.f[(i * n + j) * n + k]
    }

    /// `F^∧(∂_j, ∂_k)` as an algebra vector.
    pub fn two_form(&self, j: usize, k: usize) -> Vec<f64> {
        (0..self.dim).map(|i| 2.0 * self.get(i, j, k)).collect()
    }

    /// `Σ_i I_i F^i_jk` for every pair `(j, k)`, row-major.
    pub fn contract(&self, charge: &[f64]) -> DMatrix<f64> {
        let n = self.n_base;
        DMatrix::from_fn(n, n, |j, k| {
            (0..self.dim).map(|i| charge[i] * self.get(i, j, k)).sum()
        })
    }

    pub fn max_abs_diff(&self, other: &CurvatureField) -> f64 {
        self.f
            .iter()
            .zip(&other.f)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

/// Curvature with the default finite-difference step.
pub fn curvature(alg: &LieAlgebra, a: &VectorPotential, q: &[f64]) -> Result<CurvatureField> {
    curvature_with_step(alg, a, q, DEFAULT_STEP)
}

/// Central differences of `A` (step `h·max(1, |q_j|)`) plus the bracket term.
pub fn curvature_with_step(
    alg: &LieAlgebra,
    a: &VectorPotential,
    q: &[f64],
    step: f64,
) -> Result<CurvatureField> {
    check_dim(alg.dim(), a.dim())?;
    let n = a.n_base();
    let d = a.dim();
    if matches!(a.kind(), PotentialKind::Zero | PotentialKind::Constant(_)) && alg.is_abelian() {
        return Ok(CurvatureField::zeros(n, d));
    }
    let here = a.eval(q)?;
    // da[j][k][i] = ∂_j A^i_k
    let mut da = vec![vec![vec![0.0; d]; n]; n];
    if !matches!(a.kind(), PotentialKind::Zero | PotentialKind::Constant(_)) {
        for j in 0..n {
            let h = step * q[j].abs().max(1.0);
            let mut qp = q.to_vec();
            qp[j] = q[j] + h;
            let plus = a.eval(&qp)?;
            qp[j] = q[j] - h;
            let minus = a.eval(&qp)?;
            for k in 0..n {
                for i in 0..d {
                    da[j][k][i] = (plus[k][i] - minus[k][i]) / (2.0 * h);
                }
            }
        }
    }
    let mut out = CurvatureField::zeros(n, d);
    for j in 0..n {
        for k in (j + 1)..n {
            let br = alg.bracket_vectors(&here[j], &here[k])?;
            for i in 0..d {
                let v = 0.5 * (da[j][k][i] - da[k][j][i] + br[i]);
                out.set(i, j, k, finite(v, "curvature")?);
            }
        }
    }
    Ok(out)
}

/// `γ(v, w) = w + Ad(g⁻¹) A_q(v)` for a base vector `v` and fiber direction `w`.
pub fn connection_eval(
    alg: &LieAlgebra,
    a: &VectorPotential,
    q: &[f64],
    g: &GroupElement,
    v: &[f64],
    w: &[f64],
) -> Result<Vec<f64>> {
    check_dim(alg.dim(), w.len())?;
    let av = a.along(q, v)?;
    if av.iter().all(|&c| c == 0.0) {
        return Ok(w.to_vec());
    }
    let ad = adjoint_matrix(alg, &g.inverse()?)?;
    Ok(mat_vec(&ad, &av)
        .iter()
        .zip(w)
        .map(|(x, y)| x + y)
        .collect())
}

type GaugeFn = dyn Fn(&[f64]) -> Result<GroupElement> + Send + Sync;

/// A map `s : Rⁿ → G` acting fiberwise by `(q, g) ↦ (q, s(q)·g)`.
#[derive(Clone)]
pub enum GaugeMap {
    Identity,
    Constant(GroupElement),
    /// `s(q) = exp(Σ_a χ_a(q) X_a)`.
    Exp(Vec<Expr>),
    Func(Arc<GaugeFn>),
}

impl fmt::Debug for GaugeMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GaugeMap::Identity => write!(f, "Identity"),
            GaugeMap::Constant(g) => write!(f, "Constant({g:?})"),
            GaugeMap::Exp(e) => write!(f, "Exp({e:?})"),
            GaugeMap::Func(_) => write!(f, "Func(..)"),
        }
    }
}

impl GaugeMap {
    pub fn from_fn(f: impl Fn(&[f64]) -> Result<GroupElement> + Send + Sync + 'static) -> Self {
        GaugeMap::Func(Arc::new(f))
    }

    pub fn eval(&self, alg: &LieAlgebra, q: &[f64]) -> Result<GroupElement> {
        match self {
            GaugeMap::Identity => GroupElement::identity_of(alg),
            GaugeMap::Constant(g) => Ok(g.clone()),
            GaugeMap::Exp(chi) => {
                check_dim(alg.dim(), chi.len())?;
                let env = |v: Var| match v {
                    Var::Q(i) => q.get(i).copied().unwrap_or(f64::NAN),
                    _ => f64::NAN,
                };
                let x = chi
                    .iter()
                    .map(|e| finite(e.eval(&env), "gauge map"))
                    .collect::<Result<Vec<f64>>>()?;
                exp(alg, &x)
            }
            GaugeMap::Func(f) => f(q),
        }
    }
}

/// `(s*κ^l)(∂_j) = s(q)⁻¹ ∂_j s(q)` for every `j`, by central differences.
pub fn pullback_maurer_cartan(
    alg: &LieAlgebra,
    s: &GaugeMap,
    q: &[f64],
    step: f64,
) -> Result<PotentialValue> {
    let basis = alg.require_basis()?;
    let sinv = s.eval(alg, q)?.inverse()?;
    let mut out = Vec::with_capacity(q.len());
    for j in 0..q.len() {
        let h = step * q[j].abs().max(1.0);
        let mut qp = q.to_vec();
        qp[j] = q[j] + h;
        let plus = s.eval(alg, &qp)?;
        qp[j] = q[j] - h;
        let minus = s.eval(alg, &qp)?;
        let ds: CMatrix = (&plus.matrix - &minus.matrix) * Complex64::new(1.0 / (2.0 * h), 0.0);
        let v = basis.project(&(&sinv.matrix * ds));
        for &c in &v {
            finite(c, "gauge pullback")?;
        }
        out.push(v);
    }
    Ok(out)
}

/// Component `j` of `s*κ^l + Ad(s⁻¹) A` at `q`.
pub fn gauge_transform_potential(
    alg: &LieAlgebra,
    a: &VectorPotential,
    s: &GaugeMap,
    q: &[f64],
) -> Result<PotentialValue> {
    gauge_transform_potential_with_step(alg, a, s, q, DEFAULT_STEP)
}

pub fn gauge_transform_potential_with_step(
    alg: &LieAlgebra,
    a: &VectorPotential,
    s: &GaugeMap,
    q: &[f64],
    step: f64,
) -> Result<PotentialValue> {
    check_dim(alg.dim(), a.dim())?;
    let mc = pullback_maurer_cartan(alg, s, q, step)?;
    let ad = adjoint_matrix(alg, &s.eval(alg, q)?.inverse()?)?;
    let av = a.eval(q)?;
    Ok(mc
        .into_iter()
        .zip(av)
        .map(|(m, row)| {
            mat_vec(&ad, &row)
                .iter()
                .zip(m)
                .map(|(x, y)| x + y)
                .collect()
        })
        .collect())
}

/// The transformed potential as a new [`VectorPotential`].
pub fn transformed_potential(
    alg: &LieAlgebra,
    a: &VectorPotential,
    s: &GaugeMap,
    step: f64,
) -> VectorPotential {
    let (alg, a2, s) = (alg.clone(), a.clone(), s.clone());
    VectorPotential::from_fn(a.n_base(), a.dim(), move |q| {
        gauge_transform_potential_with_step(&alg, &a2, &s, q, step)
    })
}

/// `F ↦ Ad(s(q)⁻¹) F` on the algebra index.
pub fn gauge_transform_curvature(
    alg: &LieAlgebra,
    f: &CurvatureField,
    s: &GaugeMap,
    q: &[f64],
) -> Result<CurvatureField> {
    check_dim(alg.dim(), f.dim())?;
    let ad = adjoint_matrix(alg, &s.eval(alg, q)?.inverse()?)?;
    let n = f.n_base();
    let mut out = CurvatureField::zeros(n, f.dim());
    for j in 0..n {
        for k in (j + 1)..n {
            let col: Vec<f64> = (0..f.dim()).map(|i| f.get(i, j, k)).collect();
            for (i, v) in mat_vec(&ad, &col).into_iter().enumerate() {
                out.set(i, j, k, v);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn u1() -> LieAlgebra {
        LieAlgebra::builtin("u1").unwrap()
    }

    #[test]
    fn zero_potential_is_flat() {
        let so3 = LieAlgebra::builtin("so3").unwrap();
        let f = curvature(&so3, &VectorPotential::zero(3, 3), &[0.1, 0.2, 0.3]).unwrap();
        assert_eq!(f, CurvatureField::zeros(3, 3));
    }

    #[test]
    fn uniform_field_stores_half() {
        let a = VectorPotential::uniform_b(2, 1.7).unwrap();
        let f = curvature(&u1(), &a, &[0.4, -2.0]).unwrap();
        assert!((f.get(0, 0, 1) - 0.85).abs() < 1e-9);
        assert!((f.two_form(0, 1)[0] - 1.7).abs() < 1e-9);
        assert_eq!(f.get(0, 1, 0), -f.get(0, 0, 1));
    }

    #[test]
    fn constant_so3_potential_bracket_term() {
        let so3 = LieAlgebra::builtin("so3").unwrap();
        let (a1, a2) = (0.7, -1.3);
        let a = VectorPotential::constant(
            vec![vec![a1, 0.0, 0.0], vec![0.0, a2, 0.0], vec![0.0; 3]],
            3,
        )
        .unwrap();
        let f = curvature(&so3, &a, &[0.0; 3]).unwrap();
        let two = f.two_form(0, 1);
        assert!(two[0].abs() < 1e-12 && two[1].abs() < 1e-12);
        assert!((two[2] - a1 * a2).abs() < 1e-12);
    }

    #[test]
    fn connection_examples() {
        let so3 = LieAlgebra::builtin("so3").unwrap();
        let a = VectorPotential::constant(vec![vec![1.0, 0.0, 0.0], vec![0.0; 3]], 3).unwrap();
        let g = exp(&so3, &[0.0, 0.0, FRAC_PI_2]).unwrap();
        let w = [0.3, 0.1, -0.2];
        assert_eq!(
            connection_eval(&so3, &a, &[0.0, 0.0], &g, &[0.0, 0.0], &w).unwrap(),
            w.to_vec()
        );
        let e = GroupElement::identity(3);
        let v = connection_eval(&so3, &a, &[0.0, 0.0], &e, &[1.0, 0.0], &[0.0; 3]).unwrap();
        assert!((v[0] - 1.0).abs() < 1e-12 && v[1].abs() < 1e-12);
        let v = connection_eval(&so3, &a, &[0.0, 0.0], &g, &[1.0, 0.0], &[0.0; 3]).unwrap();
        assert!(v[0].abs() < 1e-12 && (v[1] + 1.0).abs() < 1e-12 && v[2].abs() < 1e-12);
    }

    #[test]
    fn abelian_gauge_shift() {
        let chi = Expr::parse("q1^2*q2 + sin(q2)").unwrap();
        let s = GaugeMap::Exp(vec![chi]);
        let a = VectorPotential::uniform_b(2, 2.0).unwrap();
        let q = [0.3, -0.8];
        let t = gauge_transform_potential(&u1(), &a, &s, &q).unwrap();
        let base = a.eval(&q).unwrap();
        let dchi = [2.0 * q[0] * q[1], q[0] * q[0] + q[1].cos()];
        for i in 0..2 {
            assert!((t[i][0] - base[i][0] - dchi[i]).abs() < 1e-9);
        }
        let f = curvature(&u1(), &a, &q).unwrap();
        let ft = gauge_transform_curvature(&u1(), &f, &s, &q).unwrap();
        assert!(f.max_abs_diff(&ft) < 1e-12);
    }

    #[test]
    fn constant_gauge_is_adjoint() {
        let so3 = LieAlgebra::builtin("so3").unwrap();
        let g = exp(&so3, &[0.2, 0.4, -0.1]).unwrap();
        let a = VectorPotential::hedgehog(0.5);
        let q = [0.1, 0.7, -0.3];
        let t = gauge_transform_potential(&so3, &a, &GaugeMap::Constant(g.clone()), &q).unwrap();
        let ad = adjoint_matrix(&so3, &g.inverse().unwrap()).unwrap();
        for (row, orig) in t.iter().zip(a.eval(&q).unwrap()) {
            for (x, y) in row.iter().zip(mat_vec(&ad, &orig)) {
                assert!((x - y).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn identity_gauge_leaves_curvature() {
        let so3 = LieAlgebra::builtin("so3").unwrap();
        let q = [0.1, 0.7, -0.3];
        let f = curvature(&so3, &VectorPotential::hedgehog(0.5), &q).unwrap();
        let t = gauge_transform_curvature(&so3, &f, &GaugeMap::Identity, &q).unwrap();
        assert!(f.max_abs_diff(&t) < 1e-15);
    }

    #[test]
    fn spec_parsing() {
        let so3 = LieAlgebra::builtin("so3").unwrap();
        let spec: PotentialSpec =
            serde_json::from_str(r#"{"kind":"expression","entries":[[3,1,"q2"],[1,2,"q1*q3"]]}"#)
                .unwrap();
        let a = spec.build(&so3, 3).unwrap();
        let v = a.eval(&[2.0, 3.0, 5.0]).unwrap();
        assert_eq!(v[0], vec![0.0, 0.0, 3.0]);
        assert_eq!(v[1], vec![10.0, 0.0, 0.0]);
        let ub: PotentialSpec = serde_json::from_str(r#"{"kind":"uniform_b","B":1.0}"#).unwrap();
        assert!(ub.build(&so3, 2).is_err());
        assert!(ub.build(&u1(), 2).is_ok());
        let bad: PotentialSpec =
            serde_json::from_str(r#"{"kind":"expression","entries":[[1,1,"p1"]]}"#).unwrap();
        assert!(bad.build(&so3, 3).is_err());
    }
}
