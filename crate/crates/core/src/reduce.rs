//! Reduced Poisson structures: degeneracy of `ω_f` for left-invariant
//! generalized momenta, coadjoint orbits, the Cartan reduction on `G × h*`,
//! and the gauged brackets on `T*Rⁿ × g*` and `T*Rⁿ × G × h*`.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::algebra::{quadratic, DualVector, LieAlgebra};
use crate::error::{check_dim, finite, Error, Result};
use crate::expr::{Expr, Var};
use crate::gauge::{curvature_with_step, CurvatureField, VectorPotential};
use crate::group::{adjoint_matrix, mat_vec, DEFAULT_STEP};
use crate::poisson::{
    lie_poisson_bracket, BivectorBracket, BivectorSpec, Block, Bracket, Coefficient, Differ, Field,
    FrameField, PhasePoint,
};

/// Default relative tolerance for rank decisions.
pub const RANK_TOL: f64 = 1e-9;
/// Relative threshold of the chamber-wall guard.
pub const WALL_TOL: f64 = 1e-9;
/// Allowed mismatch between a point's Casimir and the orbit level.
pub const ORBIT_TOL: f64 = 1e-8;

/// A point `(q, p, I)` of `T*Rⁿ × g*`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WongState {
    pub q: Vec<f64>,
    pub p: Vec<f64>,
    #[serde(rename = "I")]
    pub charge: Vec<f64>,
}

impl WongState {
    pub fn new(q: Vec<f64>, p: Vec<f64>, charge: Vec<f64>) -> Result<Self> {
        check_dim(q.len(), p.len())?;
        let s = Self { q, p, charge };
        for &v in s.q.iter().chain(&s.p).chain(&s.charge) {
            finite(v, "state")?;
        }
        Ok(s)
    }

    pub fn n_base(&self) -> usize {
        self.q.len()
    }

    pub fn to_point(&self) -> PhasePoint {
        PhasePoint::cotangent(self.q.clone(), self.p.clone(), self.charge.clone())
    }

    pub fn from_point(pt: &PhasePoint) -> Self {
        Self {
            q: pt.q.clone(),
            p: pt.p.clone(),
            charge: pt.x.clone(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.q
            .iter()
            .chain(&self.p)
            .chain(&self.charge)
            .all(|v| v.is_finite())
    }
}

/// A left-invariant generalized momentum `f : g* → g*` written in the
/// coordinates `z1..zn` of `ζ^r`.
#[derive(Debug, Clone)]
pub struct MomentumSpec {
    exprs: Vec<Expr>,
}

impl MomentumSpec {
    pub fn parse(alg: &LieAlgebra, src: &[String]) -> Result<Self> {
        check_dim(alg.dim(), src.len())?;
        let n = alg.dim();
        let exprs = src
            .iter()
            .map(|s| {
                let e = Expr::parse(s)?;
                e.check_vars(|v| matches!(v, Var::X(i) if *i < n))?;
                Ok(e)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { exprs })
    }

    pub fn eval(&self, zr: &[f64]) -> Result<Vec<f64>> {
        let env = |v: Var| match v {
            Var::X(i) => zr.get(i).copied().unwrap_or(f64::NAN),
            _ => f64::NAN,
        };
        self.exprs
            .iter()
            .map(|e| finite(e.eval(&env), "generalized momentum"))
            .collect()
    }
}

/// `ω_f` in the frame `(L_1..L_n, ∂ζ_1..∂ζ_n)`: `[[C, −Jᵀ], [J, 0]]` with
/// `C_jk = Σ_i f_i c^i_jk` and `J_mi = ∂f_i/∂ζ_m`.
pub fn omega_f_matrix(
    alg: &LieAlgebra,
    f: &dyn Fn(&[f64]) -> Result<Vec<f64>>,
    zr: &[f64],
) -> Result<DMatrix<f64>> {
    let n = alg.dim();
    check_dim(n, zr.len())?;
    let fz = f(zr)?;
    check_dim(n, fz.len())?;
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    for j in 0..n {
        for k in 0..n {
            m[(j, k)] = (0..n)
                .map(|i| fz[i] * alg.structure_constant(i, j, k))
                .sum();
        }
    }
    for mm in 0..n {
        let h = DEFAULT_STEP * zr[mm].abs().max(1.0);
        let mut z = zr.to_vec();
        z[mm] = zr[mm] + h;
        let plus = f(&z)?;
        z[mm] = zr[mm] - h;
        let minus = f(&z)?;
        for i in 0..n {
            let jm = finite((plus[i] - minus[i]) / (2.0 * h), "momentum derivative")?;
            m[(n + mm, i)] = jm;
            m[(i, n + mm)] = -jm;
        }
    }
    Ok(m)
}

/// Rank and kernel of an antisymmetric matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankReport {
    pub rank: usize,
    pub kernel_dim: usize,
    pub kernel_basis: Vec<Vec<f64>>,
}

/// Singular values `≤ tol·σ_max` count as zero; the kernel basis is orthonormal.
/// `m` must be square.
pub fn kernel_rank(m: &DMatrix<f64>, tol: f64) -> RankReport {
    let n = m.ncols();
    let svd = m.clone().svd(false, true);
    let smax = svd.singular_values.max();
    let v_t = svd.v_t.expect("requested");
    let mut rank = 0;
    let mut kernel_basis = Vec::new();
    for (r, &s) in svd.singular_values.iter().enumerate() {
        if smax > 0.0 && s > tol * smax {
            rank += 1;
        } else {
            kernel_basis.push(v_t.row(r).iter().copied().collect());
        }
    }
    RankReport {
        rank,
        kernel_dim: n - rank,
        kernel_basis,
    }
}

/// Does `v` lie in the span of an orthonormal family, within `tol`?
pub fn in_span(basis: &[Vec<f64>], v: &[f64], tol: f64) -> bool {
    let mut r = v.to_vec();
    for b in basis {
        let c: f64 = b.iter().zip(v).map(|(x, y)| x * y).sum();
        for (ri, bi) in r.iter_mut().zip(b) {
            *ri -= c * bi;
        }
    }
    r.iter().map(|x| x * x).sum::<f64>().sqrt()
        <= tol * v.iter().map(|x| x * x).sum::<f64>().sqrt().max(1.0)
}

/// Dimension of the coadjoint orbit through `ξ`: `n − dim{X : ad*_X ξ = 0}`.
pub fn orbit_dimension(alg: &LieAlgebra, xi: &[f64], tol: f64) -> Result<usize> {
    let n = alg.dim();
    check_dim(n, xi.len())?;
    let c = DMatrix::from_fn(n, n, |j, k| {
        (0..n)
            .map(|i| xi[i] * alg.structure_constant(i, j, k))
            .sum()
    });
    Ok(kernel_rank(&c, tol).rank)
}

/// Lie–Poisson bracket restricted to the Casimir level set `C(x) = level`.
pub fn coadjoint_orbit_bracket(
    alg: &LieAlgebra,
    f: &Field,
    g: &Field,
    x: &DualVector,
    level: f64,
) -> Result<f64> {
    let c = alg.quadratic_casimir(x)?;
    if (c - level).abs() > ORBIT_TOL {
        return Err(Error::OffOrbit { casimir: c, level });
    }
    lie_poisson_bracket(alg, f, g, &x.0)
}

/// Cartan data of a compact matrix algebra.
#[derive(Debug, Clone)]
pub struct RootSystemData {
    alg: LieAlgebra,
    /// Basis indices spanning the Cartan subalgebra `h`.
    pub cartan_indices: Vec<usize>,
    /// `α(H_j)` for each positive root.
    pub positive_roots: Vec<Vec<f64>>,
    /// Real root vectors `(U_α, V_α)` with `[H, U] = α(H) V`, `[H, V] = −α(H) U`
    /// and `B(U, U) = B(V, V) = 1 / B*(α, α)`.
    pub root_vectors: Vec<(Vec<f64>, Vec<f64>)>,
    /// Killing form restricted to `h`.
    pub cartan_killing: DMatrix<f64>,
    /// Dual form `B*` on `h*`, the inverse of `cartan_killing` (zero when there are no roots).
    pub killing_dual: DMatrix<f64>,
}

fn generic_weights(k: usize) -> Vec<f64> {
    (0..k).map(|j| 0.3_f64.powi(j as i32)).collect()
}

/// Root data for algebras whose matrix basis contains a diagonal Cartan
/// subalgebra (`u1`, `su2`, `su3`); anything else is `UnsupportedAlgebra`.
pub fn root_system(alg: &LieAlgebra) -> Result<RootSystemData> {
    let unsupported = || Error::UnsupportedAlgebra(alg.name().to_string());
    let basis = alg.matrix_basis().ok_or_else(unsupported)?;
    let n = alg.dim();
    let cartan: Vec<usize> = basis
        .matrices()
        .iter()
        .enumerate()
        .filter(|(_, m)| {
            (0..m.nrows()).all(|r| (0..m.ncols()).all(|c| r == c || m[(r, c)].norm() == 0.0))
        })
        .map(|(i, _)| i)
        .collect();
    let k = cartan.len();
    if k == 0 {
        return Err(unsupported());
    }
    let b = alg.killing_form();
    let b_h = DMatrix::from_fn(k, k, |a, c| b[(cartan[a], cartan[c])]);
    if k == n {
        if !alg.is_abelian() {
            return Err(unsupported());
        }
        return Ok(RootSystemData {
            alg: alg.clone(),
            cartan_indices: cartan,
            positive_roots: vec![],
            root_vectors: vec![],
            cartan_killing: b_h,
            killing_dual: DMatrix::zeros(k, k),
        });
    }
    let rest: Vec<usize> = (0..n).filter(|i| !cartan.contains(i)).collect();
    let scale = b.amax();
    if scale == 0.0 {
        return Err(unsupported());
    }
    for &h in &cartan {
        for &r in &rest {
            if b[(h, r)].abs() > 1e-12 * scale {
                return Err(unsupported());
            }
        }
    }
    let kf = -&b;
    let inner = |x: &[f64], y: &[f64]| -> f64 {
        (0..n)
            .map(|a| (0..n).map(|c| x[a] * kf[(a, c)] * y[c]).sum::<f64>())
            .sum()
    };
    // K-orthonormal basis of the complement of h
    let mut w: Vec<Vec<f64>> = Vec::new();
    for &r in &rest {
        let mut v = vec![0.0; n];
        v[r] = 1.0;
        for u in &w {
            let c = inner(u, &v);
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi -= c * ui;
            }
        }
        let norm2 = inner(&v, &v);
        if norm2 <= 1e-12 * scale {
            return Err(unsupported());
        }
        let norm = norm2.sqrt();
        w.push(v.into_iter().map(|x| x / norm).collect());
    }
    let m = w.len();
    let t = generic_weights(k);
    let mut hgen = vec![0.0; n];
    for (j, &c) in cartan.iter().enumerate() {
        hgen[c] = t[j];
    }
    let s = DMatrix::from_fn(m, m, |a, c| {
        inner(&w[a], &alg.bracket_unchecked(&hgen, &w[c]))
    });
    let s2 = &s * &s;
    let s2 = (&s2 + s2.transpose()) * 0.5;
    let eig = SymmetricEigen::new(s2);
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &c| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[c]).unwrap());
    if !m.is_multiple_of(2) {
        return Err(unsupported());
    }
    let bh_inv = b_h
        .clone()
        .try_inverse()
        .ok_or(Error::SingularKillingForm)?;
    let mut positive_roots = Vec::new();
    let mut root_vectors = Vec::new();
    for pair in order.chunks(2) {
        let (l0, l1) = (eig.eigenvalues[pair[0]], eig.eigenvalues[pair[1]]);
        let a = (-l0).max(0.0).sqrt();
        if a <= 1e-9 * scale.sqrt() || (l0 - l1).abs() > 1e-8 * l0.abs() {
            return Err(unsupported());
        }
        let coords = eig.eigenvectors.column(pair[0]);
        let mut u = vec![0.0; n];
        for (ci, wi) in coords.iter().zip(&w) {
            for (ux, wx) in u.iter_mut().zip(wi) {
                *ux += ci * wx;
            }
        }
        let v: Vec<f64> = alg
            .bracket_unchecked(&hgen, &u)
            .into_iter()
            .map(|x| x / a)
            .collect();
        let mut hv = vec![0.0; n];
        let alpha: Vec<f64> = cartan
            .iter()
            .map(|&c| {
                hv.iter_mut().for_each(|x| *x = 0.0);
                hv[c] = 1.0;
                inner(&alg.bracket_unchecked(&hv, &u), &v)
            })
            .collect();
        let norm = quadratic(&bh_inv, &alpha);
        if norm >= 0.0 {
            return Err(unsupported());
        }
        let lambda = (-1.0 / norm).sqrt();
        positive_roots.push(alpha);
        root_vectors.push((
            u.into_iter().map(|x| x * lambda).collect(),
            v.into_iter().map(|x| x * lambda).collect(),
        ));
    }
    let data = RootSystemData {
        alg: alg.clone(),
        cartan_indices: cartan,
        positive_roots,
        root_vectors,
        cartan_killing: b_h,
        killing_dual: bh_inv,
    };
    let defect = data.commutator_defect()?;
    if defect > 1e-9 {
        return Err(Error::InvalidSpec(format!(
            "root decomposition failed (defect {defect:.3e})"
        )));
    }
    Ok(data)
}

impl RootSystemData {
    pub fn algebra(&self) -> &LieAlgebra {
        &self.alg
    }

    pub fn rank(&self) -> usize {
        self.cartan_indices.len()
    }

    /// Cartan element `H_j` as an algebra vector.
    pub fn cartan_vector(&self, j: usize) -> Vec<f64> {
        let mut v = vec![0.0; self.alg.dim()];
        v[self.cartan_indices[j]] = 1.0;
        v
    }

    /// `B*(x, y)` on `h*`.
    pub fn dual_form(&self, x: &[f64], y: &[f64]) -> f64 {
        let k = self.rank();
        (0..k)
            .map(|a| {
                (0..k)
                    .map(|c| x[a] * self.killing_dual[(a, c)] * y[c])
                    .sum::<f64>()
            })
            .sum()
    }

    /// Largest defect of `[H_j, U] = α_j V`, `[H_j, V] = −α_j U` over matrix commutators.
    pub fn commutator_defect(&self) -> Result<f64> {
        let basis = self.alg.require_basis()?;
        let mut worst = 0.0_f64;
        for (alpha, (u, v)) in self.positive_roots.iter().zip(&self.root_vectors) {
            let (mu, mv) = (basis.combine(u), basis.combine(v));
            let scale = mu.norm().max(mv.norm());
            for (j, &c) in self.cartan_indices.iter().enumerate() {
                let h = &basis.matrices()[c];
                let hu = h * &mu - &mu * h;
                let hv = h * &mv - &mv * h;
                let e1 = (hu - &mv * num_complex::Complex64::new(alpha[j], 0.0)).norm();
                let e2 = (hv + &mu * num_complex::Complex64::new(alpha[j], 0.0)).norm();
                worst = worst.max(e1.max(e2) / scale);
            }
        }
        Ok(worst)
    }

    /// `WeylWallSingularity` unless `zh` lies strictly inside a Weyl chamber.
    pub fn check_chamber(&self, zh: &[f64]) -> Result<()> {
        check_dim(self.rank(), zh.len())?;
        let zn = zh.iter().map(|x| x * x).sum::<f64>().sqrt();
        for (r, alpha) in self.positive_roots.iter().enumerate() {
            let value = self.dual_form(zh, alpha);
            let dual_alpha: Vec<f64> = (0..self.rank())
                .map(|a| {
                    (0..self.rank())
                        .map(|c| self.killing_dual[(a, c)] * alpha[c])
                        .sum()
                })
                .collect();
            let an = dual_alpha.iter().map(|x| x * x).sum::<f64>().sqrt();
            if !(value.abs() > WALL_TOL * zn * an) {
                return Err(Error::WeylWallSingularity {
                    root: r,
                    value: value.abs(),
                });
            }
        }
        Ok(())
    }

    /// `min_α |B*(zh, α)| / (‖zh‖ ‖B*α‖)`: 0 on a wall, at most 1.
    pub fn wall_distance(&self, zh: &[f64]) -> f64 {
        let k = self.rank();
        let zn = zh.iter().map(|x| x * x).sum::<f64>().sqrt();
        self.positive_roots
            .iter()
            .map(|alpha| {
                let da: Vec<f64> = (0..k)
                    .map(|a| (0..k).map(|c| self.killing_dual[(a, c)] * alpha[c]).sum())
                    .collect();
                let an = da.iter().map(|x| x * x).sum::<f64>().sqrt();
                self.dual_form(zh, alpha).abs() / (zn * an)
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// `−B*(α, α) / B*(zh, α)` for positive root `r`.
    pub fn root_coefficient(&self, r: usize, zh: &[f64]) -> Result<f64> {
        self.check_chamber(zh)?;
        let alpha = &self.positive_roots[r];
        finite(
            -self.dual_form(alpha, alpha) / self.dual_form(zh, alpha),
            "root coefficient",
        )
    }

    /// `Σ_α (L_α ∧ L_{−α})` part of the reduced bivector.
    fn push_root_terms(&self, spec: &mut BivectorSpec) {
        for (r, (u, v)) in self.root_vectors.iter().enumerate() {
            let this = self.clone();
            spec.push(
                FrameField::LeftAlong(u.clone()),
                FrameField::LeftAlong(v.clone()),
                Coefficient::func(move |pt: &PhasePoint| this.root_coefficient(r, &pt.x)),
            );
        }
    }

    /// `Λ = Σ_j ∂ζ_j ∧ L_{H_j} − Σ_α (B*(α,α)/B*(zh,α)) L_U ∧ L_V` on `G × h*`.
    pub fn cartan_spec(&self) -> BivectorSpec {
        let mut spec = BivectorSpec::new();
        for j in 0..self.rank() {
            spec.push(
                FrameField::Coord(Block::X, j),
                FrameField::LeftAlong(self.cartan_vector(j)),
                Coefficient::Const(1.0),
            );
        }
        self.push_root_terms(&mut spec);
        spec
    }

    /// Component of `y` along the root spaces, expanded as `Σ_α (β_α U_α + γ_α V_α)`.
    pub fn root_components(&self, y: &[f64]) -> Vec<(f64, f64)> {
        let b = self.alg.killing_form();
        let n = self.alg.dim();
        let form = |x: &[f64], z: &[f64]| -> f64 {
            (0..n)
                .map(|a| (0..n).map(|c| x[a] * b[(a, c)] * z[c]).sum::<f64>())
                .sum()
        };
        self.root_vectors
            .iter()
            .map(|(u, v)| (form(u, y) / form(u, u), form(v, y) / form(v, v)))
            .collect()
    }
}

/// The reduced bracket on `G × h*`; points carry `g` and `x = zh`.
#[derive(Debug, Clone)]
pub struct CartanReduced {
    root: RootSystemData,
    inner: BivectorBracket,
}

impl CartanReduced {
    pub fn new(root: &RootSystemData) -> Self {
        let inner = BivectorBracket::new(root.cartan_spec(), Some(root.algebra()));
        Self {
            root: root.clone(),
            inner,
        }
    }

    pub fn with_step(mut self, step: f64) -> Self {
        self.inner = self.inner.with_step(step);
        self
    }

    pub fn spec(&self) -> &BivectorSpec {
        self.inner.spec()
    }
}

impl Bracket for CartanReduced {
    fn bracket(&self, f: &Field, g: &Field, pt: &PhasePoint) -> Result<f64> {
        self.root.check_chamber(&pt.x)?;
        self.inner.bracket(f, g, pt)
    }
}

pub fn cartan_reduced_bracket(
    root: &RootSystemData,
    f: &Field,
    g: &Field,
    pt: &PhasePoint,
) -> Result<f64> {
    CartanReduced::new(root).bracket(f, g, pt)
}

/// The gauged Lie–Poisson bracket on `T*Rⁿ × g*`:
///
/// ```text
/// Λ = −½ Σ I_i c^i_jk ∂I_j ∧ ∂I_k − Σ I_i F^i_jk ∂p_j ∧ ∂p_k
///     − Σ I_i c^i_ks A^s_j ∂p_j ∧ ∂I_k + Σ ∂p_j ∧ ∂q_j
/// ```
#[derive(Debug, Clone)]
pub struct Gauged {
    alg: LieAlgebra,
    potential: VectorPotential,
    differ: Differ,
    curvature_step: f64,
}

impl Gauged {
    pub fn new(alg: &LieAlgebra, potential: &VectorPotential) -> Result<Self> {
        check_dim(alg.dim(), potential.dim())?;
        Ok(Self {
            alg: alg.clone(),
            potential: potential.clone(),
            differ: Differ::default(),
            curvature_step: DEFAULT_STEP,
        })
    }

    pub fn with_step(mut self, step: f64) -> Self {
        self.differ.step = step;
        self
    }

    pub fn curvature_at(&self, q: &[f64]) -> Result<CurvatureField> {
        curvature_with_step(&self.alg, &self.potential, q, self.curvature_step)
    }
}

fn gradient(differ: &Differ, f: &Field, pt: &PhasePoint, block: Block) -> Result<Vec<f64>> {
    (0..pt.block(block).len())
        .map(|i| differ.partial(f, pt, block, i))
        .collect()
}

impl Bracket for Gauged {
    fn bracket(&self, f: &Field, g: &Field, pt: &PhasePoint) -> Result<f64> {
        let n = self.potential.n_base();
        let d = self.alg.dim();
        check_dim(n, pt.q.len())?;
        check_dim(n, pt.p.len())?;
        check_dim(d, pt.x.len())?;
        let (fq, fp, fi) = (
            gradient(&self.differ, f, pt, Block::Q)?,
            gradient(&self.differ, f, pt, Block::P)?,
            gradient(&self.differ, f, pt, Block::X)?,
        );
        let (gq, gp, gi) = (
            gradient(&self.differ, g, pt, Block::Q)?,
            gradient(&self.differ, g, pt, Block::P)?,
            gradient(&self.differ, g, pt, Block::X)?,
        );
        let charge = &pt.x;
        let mut s = 0.0;
        for j in 0..n {
            s += fp[j] * gq[j] - gp[j] * fq[j];
        }
        for j in 0..d {
            for k in (j + 1)..d {
                let w: f64 = (0..d)
                    .map(|i| charge[i] * self.alg.structure_constant(i, j, k))
                    .sum();
                if w != 0.0 {
                    s -= w * (fi[j] * gi[k] - fi[k] * gi[j]);
                }
            }
        }
        let w = self.curvature_at(&pt.q)?.contract(charge);
        for j in 0..n {
            for k in 0..n {
                if w[(j, k)] != 0.0 {
                    s -= w[(j, k)] * (fp[j] * gp[k] - fp[k] * gp[j]);
                }
            }
        }
        let a = self.potential.eval(&pt.q)?;
        for j in 0..n {
            for k in 0..d {
                let mut coeff = 0.0;
                for i in 0..d {
                    for (sidx, &av) in a[j].iter().enumerate() {
                        coeff += charge[i] * self.alg.structure_constant(i, k, sidx) * av;
                    }
                }
                if coeff != 0.0 {
                    s -= coeff * (fp[j] * gi[k] - gp[j] * fi[k]);
                }
            }
        }
        finite(s, "gauged bracket")
    }
}

pub fn gauged_bracket(
    alg: &LieAlgebra,
    a: &VectorPotential,
    f: &Field,
    g: &Field,
    s: &WongState,
) -> Result<f64> {
    Gauged::new(alg, a)?.bracket(f, g, &s.to_point())
}

/// The Cartan-reduced gauged bracket on `T*Rⁿ × G/H × h*`; points carry
/// `q, p, g` and `x = zh`. Group functions should be right-`H`-invariant.
#[derive(Debug, Clone)]
pub struct CartanGauged {
    root: RootSystemData,
    potential: VectorPotential,
    inner: BivectorBracket,
}

impl CartanGauged {
    pub fn new(root: &RootSystemData, potential: &VectorPotential) -> Result<Self> {
        let alg = root.algebra().clone();
        check_dim(alg.dim(), potential.dim())?;
        let n = potential.n_base();
        let mut spec = BivectorSpec::new();
        root.push_root_terms(&mut spec);
        for j in 0..n {
            spec.push(
                FrameField::Coord(Block::P, j),
                FrameField::Coord(Block::Q, j),
                Coefficient::Const(1.0),
            );
        }
        for k in 0..n {
            for j in 0..n {
                if j == k {
                    continue;
                }
                let (alg, a, cartan) =
                    (alg.clone(), potential.clone(), root.cartan_indices.clone());
                spec.push(
                    FrameField::Coord(Block::P, k),
                    FrameField::Coord(Block::P, j),
                    Coefficient::func(move |pt: &PhasePoint| {
                        let g = group_of(pt)?;
                        let f = curvature_with_step(&alg, &a, &pt.q, DEFAULT_STEP)?;
                        let ad = adjoint_matrix(&alg, &g.inverse()?)?;
                        let omega = mat_vec(
                            &ad,
                            &(0..alg.dim()).map(|i| f.get(i, k, j)).collect::<Vec<_>>(),
                        );
                        Ok(-cartan
                            .iter()
                            .zip(&pt.x)
                            .map(|(&c, z)| z * omega[c])
                            .sum::<f64>())
                    }),
                );
            }
        }
        for j in 0..n {
            for (r, (u, v)) in root.root_vectors.iter().enumerate() {
                for (which, dir) in [(0, u), (1, v)] {
                    let (rs, a) = (root.clone(), potential.clone());
                    spec.push(
                        FrameField::Coord(Block::P, j),
                        FrameField::LeftAlong(dir.clone()),
                        Coefficient::func(move |pt: &PhasePoint| {
                            let g = group_of(pt)?;
                            let alg = rs.algebra();
                            let aj = &a.eval(&pt.q)?[j];
                            let y = mat_vec(&adjoint_matrix(alg, &g.inverse()?)?, aj);
                            let (beta, gamma) = rs.root_components(&y)[r];
                            Ok(-if which == 0 { beta } else { gamma })
                        }),
                    );
                }
            }
        }
        let inner = BivectorBracket::new(spec, Some(&alg));
        Ok(Self {
            root: root.clone(),
            potential: potential.clone(),
            inner,
        })
    }

    pub fn with_step(mut self, step: f64) -> Self {
        self.inner = self.inner.with_step(step);
        self
    }

    pub fn potential(&self) -> &VectorPotential {
        &self.potential
    }
}

fn group_of(pt: &PhasePoint) -> Result<&crate::group::GroupElement> {
    pt.g.as_ref()
        .ok_or_else(|| Error::UnresolvableFrameField("point has no group factor".into()))
}

impl Bracket for CartanGauged {
    fn bracket(&self, f: &Field, g: &Field, pt: &PhasePoint) -> Result<f64> {
        self.root.check_chamber(&pt.x)?;
        self.inner.bracket(f, g, pt)
    }
}

pub fn cartan_gauged_bracket(
    root: &RootSystemData,
    a: &VectorPotential,
    f: &Field,
    g: &Field,
    pt: &PhasePoint,
) -> Result<f64> {
    CartanGauged::new(root, a)?.bracket(f, g, pt)
}

/// The `i`-th standard unit vector of length `n`.
pub fn unit(n: usize, i: usize) -> Vec<f64> {
    let mut v = vec![0.0; n];
    v[i] = 1.0;
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::exp;

    fn su2() -> LieAlgebra {
        LieAlgebra::builtin("su2").unwrap()
    }

    #[test]
    fn kernel_rank_basics() {
        assert_eq!(kernel_rank(&DMatrix::zeros(4, 4), RANK_TOL).rank, 0);
        let mut j = DMatrix::zeros(4, 4);
        j[(0, 2)] = 1.0;
        j[(1, 3)] = 1.0;
        j[(2, 0)] = -1.0;
        j[(3, 1)] = -1.0;
        let r = kernel_rank(&j, RANK_TOL);
        assert_eq!((r.rank, r.kernel_dim), (4, 0));
    }

    #[test]
    fn omega_identity_and_zero() {
        let alg = su2();
        let id = |z: &[f64]| Ok(z.to_vec());
        let m = omega_f_matrix(&alg, &id, &[0.3, -0.2, 0.5]).unwrap();
        assert!((&m + m.transpose()).amax() < 1e-12);
        assert_eq!(kernel_rank(&m, RANK_TOL).rank, 6);
        let zero = |_: &[f64]| Ok(vec![0.0; 3]);
        assert_eq!(
            kernel_rank(
                &omega_f_matrix(&alg, &zero, &[0.3, -0.2, 0.5]).unwrap(),
                RANK_TOL
            )
            .rank,
            0
        );
    }

    #[test]
    fn spinning_particle_kernel() {
        let alg = su2();
        let f = |_: &[f64]| Ok(vec![0.0, 0.0, 1.0]);
        let m = omega_f_matrix(&alg, &f, &[0.1, 0.2, 0.3]).unwrap();
        let r = kernel_rank(&m, RANK_TOL);
        assert_eq!(r.rank, 2);
        for v in [2, 3, 4, 5] {
            assert!(in_span(&r.kernel_basis, &unit(6, v), 1e-9));
        }
        assert!(!in_span(&r.kernel_basis, &unit(6, 0), 1e-9));
        assert_eq!(
            orbit_dimension(&alg, &[0.0, 0.0, 1.0], RANK_TOL).unwrap(),
            2
        );
    }

    #[test]
    fn orbit_bracket() {
        let alg = su2();
        let lambda = 1.5;
        let x = DualVector(vec![0.0, 0.0, lambda]);
        let level = alg.quadratic_casimir(&x).unwrap();
        let x1 = |p: &PhasePoint| p.x[0];
        let x2 = |p: &PhasePoint| p.x[1];
        let v = coadjoint_orbit_bracket(&alg, &x1, &x2, &x, level).unwrap();
        assert!((v - lambda).abs() < 1e-9);
        assert!(matches!(
            coadjoint_orbit_bracket(&alg, &x1, &x2, &x, level + 1.0),
            Err(Error::OffOrbit { .. })
        ));
        let zero = DualVector::zeros(3);
        assert_eq!(
            coadjoint_orbit_bracket(&alg, &x1, &x2, &zero, 0.0).unwrap(),
            0.0
        );
    }

    #[test]
    fn root_systems() {
        let r = root_system(&su2()).unwrap();
        assert_eq!((r.rank(), r.positive_roots.len()), (1, 1));
        assert!((r.positive_roots[0][0].abs() - 1.0).abs() < 1e-12);
        let r3 = root_system(&LieAlgebra::builtin("su3").unwrap()).unwrap();
        assert_eq!((r3.rank(), r3.positive_roots.len()), (2, 3));
        assert!(r3.commutator_defect().unwrap() < 1e-12);
        assert!(matches!(
            root_system(&LieAlgebra::builtin("so3").unwrap()),
            Err(Error::UnsupportedAlgebra(_))
        ));
        let u = root_system(&LieAlgebra::builtin("u1").unwrap()).unwrap();
        assert!(u.positive_roots.is_empty());
    }

    #[test]
    fn su3_roots_sum() {
        let r = root_system(&LieAlgebra::builtin("su3").unwrap()).unwrap();
        // some positive root is the sum of the other two
        let a = &r.positive_roots;
        let sums = [(0, 1, 2), (0, 2, 1), (1, 2, 0)];
        assert!(sums
            .iter()
            .any(|&(i, j, k)| (0..2).all(|c| (a[i][c] + a[j][c] - a[k][c]).abs() < 1e-9)));
    }

    #[test]
    fn cartan_wall_and_momentum() {
        let r = root_system(&su2()).unwrap();
        let g = exp(&su2(), &[0.3, 0.1, -0.4]).unwrap();
        let pt = PhasePoint::trivialized(vec![0.0], g.clone());
        let p = |pt: &PhasePoint| pt.x[0];
        let phi = |pt: &PhasePoint| pt.g.as_ref().unwrap().matrix[(0, 1)].re;
        assert!(matches!(
            cartan_reduced_bracket(&r, &p, &phi, &pt),
            Err(Error::WeylWallSingularity { .. })
        ));
        let pt = PhasePoint::trivialized(vec![0.7], g);
        let v = cartan_reduced_bracket(&r, &p, &phi, &pt).unwrap();
        let l3 = Differ::default()
            .apply(Some(&su2()), &FrameField::Left(2), &phi, &pt)
            .unwrap();
        assert!((v - l3).abs() < 1e-9);
    }

    #[test]
    fn gauged_coordinate_brackets() {
        let alg = LieAlgebra::builtin("so3").unwrap();
        let a = VectorPotential::hedgehog(0.8);
        let s = WongState::new(
            vec![0.3, -0.2, 0.5],
            vec![1.0, 0.4, -0.3],
            vec![0.2, 0.9, -0.6],
        )
        .unwrap();
        let eng = Gauged::new(&alg, &a).unwrap();
        let pt = s.to_point();
        let q = |i: usize| move |p: &PhasePoint| p.q[i];
        let pp = |i: usize| move |p: &PhasePoint| p.p[i];
        let ii = |i: usize| move |p: &PhasePoint| p.x[i];
        assert!((eng.bracket(&pp(1), &q(1), &pt).unwrap() - 1.0).abs() < 1e-9);
        assert!(eng.bracket(&q(0), &q(2), &pt).unwrap().abs() < 1e-12);
        let v = eng.bracket(&ii(0), &ii(1), &pt).unwrap();
        let expect = -(0..3)
            .map(|i| s.charge[i] * alg.structure_constant(i, 0, 1))
            .sum::<f64>();
        assert!((v - expect).abs() < 1e-9);
        let f = eng.curvature_at(&s.q).unwrap();
        let v = eng.bracket(&pp(0), &pp(2), &pt).unwrap();
        let expect = -2.0 * (0..3).map(|i| s.charge[i] * f.get(i, 0, 2)).sum::<f64>();
        assert!((v - expect).abs() < 1e-9);
    }
}
