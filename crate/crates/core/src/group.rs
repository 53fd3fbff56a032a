//! Matrix Lie group numerics: exponential, adjoint action, invariant
//! derivatives, and the trivialized group laws on `TG` and `T*G`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{CMatrix, DualVector, GroupKind, LieAlgebra};
use crate::error::{check_dim, finite, Error, Result};

/// Membership tolerance for group elements.
pub const MEMBERSHIP_TOL: f64 = 1e-9;

/// Default step for central finite differences.
pub const DEFAULT_STEP: f64 = 1e-5;

#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement {
    pub matrix: CMatrix,
}

impl GroupElement {
    pub fn identity(d: usize) -> Self {
        Self {
            matrix: CMatrix::identity(d, d),
        }
    }

    pub fn identity_of(alg: &LieAlgebra) -> Result<Self> {
        Ok(Self::identity(alg.require_basis()?.matrix_dim()))
    }

    pub fn from_matrix(matrix: CMatrix) -> Self {
        Self { matrix }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        GroupElement {
            matrix: &self.matrix * &other.matrix,
        }
    }

    pub fn inverse(&self) -> Result<GroupElement> {
        self.matrix
            .clone()
            .try_inverse()
            .map(|matrix| GroupElement { matrix })
            .ok_or_else(|| Error::InvalidArgument("group element is not invertible".into()))
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    /// Deviation from the group the algebra exponentiates into.
    pub fn membership_defect(&self, kind: GroupKind) -> f64 {
        let d = self.dim();
        let unitary = || {
            let gg = self.matrix.adjoint() * &self.matrix - CMatrix::identity(d, d);
            gg.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()))
        };
        let det_gap = || (self.matrix.determinant() - Complex64::new(1.0, 0.0)).norm();
        match kind {
            GroupKind::Unitary => unitary(),
            GroupKind::SpecialUnitary => unitary().max(det_gap()),
            GroupKind::SpecialOrthogonal => {
                let imag = self
                    .matrix
                    .iter()
                    .fold(0.0_f64, |acc, z| acc.max(z.im.abs()));
                unitary().max(det_gap()).max(imag)
            }
            GroupKind::General => {
                if self.matrix.determinant().norm() > 0.0 {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
        }
    }

    /// Projects back onto the group by polar decomposition `g (g*g)^{-1/2}`,
    /// then fixes the determinant for special groups.
    pub fn renormalize(&self, kind: GroupKind) -> GroupElement {
        if kind == GroupKind::General {
            return self.clone();
        }
        let d = self.dim();
        let h = self.matrix.adjoint() * &self.matrix;
        // g*g is Hermitian positive definite: use a real symmetric embedding for the square root
        let eig = hermitian_eigen(&h);
        let mut inv_sqrt = CMatrix::zeros(d, d);
        for (k, lambda) in eig.0.iter().enumerate() {
            let v = eig.1.column(k);
            inv_sqrt += (v * v.adjoint()) * Complex64::new(1.0 / lambda.sqrt(), 0.0);
        }
        let mut m = &self.matrix * inv_sqrt;
        if kind == GroupKind::SpecialOrthogonal {
            m = m.map(|z| Complex64::new(z.re, 0.0));
        }
        if matches!(
            kind,
            GroupKind::SpecialUnitary | GroupKind::SpecialOrthogonal
        ) {
            let det = m.determinant();
            let phase = Complex64::from_polar(1.0, -det.arg() / d as f64);
            m *= phase;
        }
        GroupElement { matrix: m }
    }
}

/// Eigen-decomposition of a Hermitian matrix via its real symmetric embedding.
fn hermitian_eigen(h: &CMatrix) -> (Vec<f64>, CMatrix) {
    let d = h.nrows();
    let big = DMatrix::from_fn(2 * d, 2 * d, |r, c| {
        let (rb, cb) = (r / d, c / d);
        let z = h[(r % d, c % d)];
        match (rb, cb) {
            (0, 0) | (1, 1) => z.re,
            (0, 1) => -z.im,
            _ => z.im,
        }
    });
    let eig = big.symmetric_eigen();
    let mut order: Vec<usize> = (0..2 * d).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    // each eigenvalue appears twice; keep one orthonormal complex vector per pair
    let mut vals = Vec::with_capacity(d);
    let mut vecs: Vec<nalgebra::DVector<Complex64>> = Vec::with_capacity(d);
    for &k in &order {
        if vals.len() == d {
            break;
        }
        let col = eig.eigenvectors.column(k);
        let mut v = nalgebra::DVector::from_fn(d, |r, _| Complex64::new(col[r], col[r + d]));
        for u in &vecs {
            let proj = u.dotc(&v);
            v -= u * proj;
        }
        let norm = v.norm();
        if norm > 1e-8 {
            vals.push(eig.eigenvalues[k]);
            vecs.push(v / Complex64::new(norm, 0.0));
        }
    }
    let mut mat = CMatrix::zeros(d, d);
    for (k, v) in vecs.iter().enumerate() {
        mat.set_column(k, v);
    }
    (vals, mat)
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<[f64; 2]>> = (0..self.matrix.nrows())
            .map(|r| {
                (0..self.matrix.ncols())
                    .map(|c| [self.matrix[(r, c)].re, self.matrix[(r, c)].im])
                    .collect()
            })
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GroupElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<[f64; 2]>> = Vec::deserialize(d)?;
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(serde::de::Error::custom(
                "group element must be a square matrix",
            ));
        }
        Ok(GroupElement {
            matrix: CMatrix::from_fn(n, n, |r, c| Complex64::new(rows[r][c][0], rows[r][c][1])),
        })
    }
}

/// `exp(Σ X^i M_i)`.
pub fn exp(alg: &LieAlgebra, x: &[f64]) -> Result<GroupElement> {
    let basis = alg.require_basis()?;
    check_dim(alg.dim(), x.len())?;
    Ok(GroupElement {
        matrix: basis.combine(x).exp(),
    })
}

/// `[Ad(g)]^j_i` with `Ad(g) X_i = Σ_j [Ad(g)]^j_i X_j`; column `i` holds `Ad(g) X_i`.
pub fn adjoint_matrix(alg: &LieAlgebra, g: &GroupElement) -> Result<DMatrix<f64>> {
    let basis = alg.require_basis()?;
    check_dim(basis.matrix_dim(), g.dim())?;
    let ginv = g.inverse()?;
    let n = alg.dim();
    let mut ad = DMatrix::zeros(n, n);
    for (i, m) in basis.matrices().iter().enumerate() {
        let conj = &g.matrix * m * &ginv.matrix;
        for (j, v) in basis.project(&conj).into_iter().enumerate() {
            ad[(j, i)] = v;
        }
    }
    Ok(ad)
}

/// `Ad(g) X` for an algebra vector `X`.
pub fn adjoint_apply(alg: &LieAlgebra, g: &GroupElement, x: &[f64]) -> Result<Vec<f64>> {
    let ad = adjoint_matrix(alg, g)?;
    check_dim(alg.dim(), x.len())?;
    Ok(mat_vec(&ad, x))
}

/// `Ad*(g) ξ = Ad(g⁻¹)* ξ`, i.e. `(Ad*(g)ξ)(Y) = ξ(Ad(g⁻¹)Y)`.
pub fn coadjoint_apply(alg: &LieAlgebra, g: &GroupElement, xi: &DualVector) -> Result<DualVector> {
    check_dim(alg.dim(), xi.len())?;
    let ad_inv = adjoint_matrix(alg, &g.inverse()?)?;
    Ok(DualVector(mat_t_vec(&ad_inv, &xi.0)))
}

pub(crate) fn mat_vec(m: &DMatrix<f64>, x: &[f64]) -> Vec<f64> {
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| m[(r, c)] * x[c]).sum())
        .collect()
}

pub(crate) fn mat_t_vec(m: &DMatrix<f64>, x: &[f64]) -> Vec<f64> {
    (0..m.ncols())
        .map(|c| (0..m.nrows()).map(|r| m[(r, c)] * x[r]).sum())
        .collect()
}

fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Product in `g* ⋊ G`: `(a, ξ)·(b, η) = (ab, Ad*(b⁻¹)ξ + η)`.
pub fn semidirect_multiply(
    alg: &LieAlgebra,
    a: &GroupElement,
    xi: &DualVector,
    b: &GroupElement,
    eta: &DualVector,
) -> Result<(GroupElement, DualVector)> {
    check_dim(alg.dim(), eta.len())?;
    let moved = coadjoint_apply(alg, &b.inverse()?, xi)?;
    Ok((a.mul(b), DualVector(add(&moved.0, &eta.0))))
}

/// `(a, ξ)⁻¹ = (a⁻¹, −Ad*(a)ξ)`.
pub fn semidirect_inverse(
    alg: &LieAlgebra,
    a: &GroupElement,
    xi: &DualVector,
) -> Result<(GroupElement, DualVector)> {
    let moved = coadjoint_apply(alg, a, xi)?;
    Ok((
        a.inverse()?,
        DualVector(moved.0.iter().map(|v| -v).collect()),
    ))
}

/// Right-trivialized tangent group law `(X, a)·(Y, b) = (X + Ad(a)Y, ab)`.
pub fn tangent_group_multiply(
    alg: &LieAlgebra,
    x: &[f64],
    a: &GroupElement,
    y: &[f64],
    b: &GroupElement,
) -> Result<(Vec<f64>, GroupElement)> {
    check_dim(alg.dim(), x.len())?;
    let moved = adjoint_apply(alg, a, y)?;
    Ok((add(x, &moved), a.mul(b)))
}

/// `(X, a)⁻¹ = (−Ad(a⁻¹)X, a⁻¹)` in the right trivialization.
pub fn tangent_group_inverse(
    alg: &LieAlgebra,
    x: &[f64],
    a: &GroupElement,
) -> Result<(Vec<f64>, GroupElement)> {
    let ainv = a.inverse()?;
    let moved = adjoint_apply(alg, &ainv, x)?;
    Ok((moved.iter().map(|v| -v).collect(), ainv))
}

/// Left-trivialized tangent group law `(a, X)·(b, Y) = (ab, Ad(b⁻¹)X + Y)`.
pub fn tangent_group_multiply_left(
    alg: &LieAlgebra,
    a: &GroupElement,
    x: &[f64],
    b: &GroupElement,
    y: &[f64],
) -> Result<(GroupElement, Vec<f64>)> {
    check_dim(alg.dim(), y.len())?;
    let moved = adjoint_apply(alg, &b.inverse()?, x)?;
    Ok((a.mul(b), add(&moved, y)))
}

/// `ζ^r_i = ⟨x, Ad(g) X_i⟩` at the point `(x, g)` of `g* × G`.
pub fn zeta_r(alg: &LieAlgebra, x: &DualVector, g: &GroupElement, i: usize) -> Result<f64> {
    check_dim(alg.dim(), x.len())?;
    if i >= alg.dim() {
        return Err(Error::DimensionMismatch {
            expected: alg.dim(),
            actual: i + 1,
        });
    }
    let basis = alg.require_basis()?;
    let conj = &g.matrix * &basis.matrices()[i] * &g.inverse()?.matrix;
    Ok(x.pair(&basis.project(&conj)))
}

/// All components of `ζ^r` at `(x, g)`: `Ad(g)ᵀ x`.
pub fn zeta_r_all(alg: &LieAlgebra, x: &DualVector, g: &GroupElement) -> Result<DualVector> {
    check_dim(alg.dim(), x.len())?;
    let ad = adjoint_matrix(alg, g)?;
    Ok(DualVector(mat_t_vec(&ad, &x.0)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// `t ↦ g·exp(tX)`, generated by left-invariant fields.
    Left,
    /// `t ↦ exp(tX)·g`, generated by right-invariant fields.
    Right,
}

/// Moves `g` along the one-parameter curve of the invariant field of `v`.
pub fn flow(
    alg: &LieAlgebra,
    side: Side,
    v: &[f64],
    g: &GroupElement,
    t: f64,
) -> Result<GroupElement> {
    let scaled: Vec<f64> = v.iter().map(|c| c * t).collect();
    let e = exp(alg, &scaled)?;
    Ok(match side {
        Side::Left => g.mul(&e),
        Side::Right => e.mul(g),
    })
}

/// Central difference of `φ` along the invariant field of an arbitrary algebra vector.
pub fn directional_derivative(
    alg: &LieAlgebra,
    side: Side,
    v: &[f64],
    phi: &dyn Fn(&GroupElement) -> f64,
    g: &GroupElement,
    h: f64,
) -> Result<f64> {
    if !(h > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "step must be positive, got {h}"
        )));
    }
    check_dim(alg.dim(), v.len())?;
    let plus = phi(&flow(alg, side, v, g, h)?);
    let minus = phi(&flow(alg, side, v, g, -h)?);
    finite((plus - minus) / (2.0 * h), "invariant derivative")
}

/// `(L_i φ)(g) = d/dt φ(g·exp(tX_i))` or `(R_i φ)(g) = d/dt φ(exp(tX_i)·g)` at `t = 0`.
pub fn invariant_derivative(
    alg: &LieAlgebra,
    side: Side,
    i: usize,
    phi: &dyn Fn(&GroupElement) -> f64,
    g: &GroupElement,
    h: f64,
) -> Result<f64> {
    if i >= alg.dim() {
        return Err(Error::DimensionMismatch {
            expected: alg.dim(),
            actual: i + 1,
        });
    }
    let mut v = vec![0.0; alg.dim()];
    v[i] = 1.0;
    directional_derivative(alg, side, &v, phi, g, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn max_abs(m: &CMatrix) -> f64 {
        m.iter().fold(0.0_f64, |a, z| a.max(z.norm()))
    }

    #[test]
    fn exp_of_zero_is_identity() {
        for name in ["u1", "so3", "su2", "su3"] {
            let alg = LieAlgebra::builtin(name).unwrap();
            let g = exp(&alg, &vec![0.0; alg.dim()]).unwrap();
            assert!(max_abs(&(&g.matrix - CMatrix::identity(g.dim(), g.dim()))) < 1e-15);
        }
    }

    #[test]
    fn so3_quarter_turn_matches_rodrigues() {
        let so3 = LieAlgebra::builtin("so3").unwrap();
        let g = exp(&so3, &[0.0, 0.0, PI / 2.0]).unwrap();
        // Rodrigues: R = I + sinθ K + (1 − cosθ) K² with K the generator of e3
        let k = so3.matrix_basis().unwrap().matrices()[2].clone();
        let (s, c) = (PI / 2.0).sin_cos();
        let expect = CMatrix::identity(3, 3)
            + &k * Complex64::new(s, 0.0)
            + &k * &k * Complex64::new(1.0 - c, 0.0);
        assert!(max_abs(&(&g.matrix - expect)) < 1e-14);
        let ex = nalgebra::DVector::from_vec(vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        ]);
        let image = &g.matrix * ex;
        assert!((image[1].re - 1.0).abs() < 1e-14 && image[0].norm() < 1e-14);
    }

    #[test]
    fn su2_exp_of_pi_x3() {
        let su2 = LieAlgebra::builtin("su2").unwrap();
        let g = exp(&su2, &[0.0, 0.0, PI]).unwrap();
        let i = Complex64::new(0.0, 1.0);
        let expect = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![i, -i]));
        assert!(max_abs(&(g.matrix - expect)) < 1e-14);
    }

    #[test]
    fn no_matrix_basis() {
        let alg =
            LieAlgebra::from_structure_constants("ab", 1, vec![0.0], vec!["a".into()]).unwrap();
        assert!(matches!(exp(&alg, &[1.0]), Err(Error::NoMatrixBasis(_))));
        assert!(matches!(
            adjoint_matrix(&alg, &GroupElement::identity(1)),
            Err(Error::NoMatrixBasis(_))
        ));
    }

    #[test]
    fn adjoint_of_rotation_about_e3() {
        let so3 = LieAlgebra::builtin("so3").unwrap();
        let t = 0.7;
        let ad = adjoint_matrix(&so3, &exp(&so3, &[0.0, 0.0, t]).unwrap()).unwrap();
        let expect = DMatrix::from_row_slice(
            3,
            3,
            &[t.cos(), -t.sin(), 0.0, t.sin(), t.cos(), 0.0, 0.0, 0.0, 1.0],
        );
        assert!((ad - expect).abs().max() < 1e-14);
        let id = adjoint_matrix(&so3, &GroupElement::identity(3)).unwrap();
        assert!((id - DMatrix::identity(3, 3)).abs().max() < 1e-15);
    }

    #[test]
    fn semidirect_examples() {
        let su2 = LieAlgebra::builtin("su2").unwrap();
        let e = GroupElement::identity(2);
        let xi = DualVector(vec![1.0, 2.0, 3.0]);
        let eta = DualVector(vec![-0.5, 0.25, 1.0]);
        let (g, v) = semidirect_multiply(&su2, &e, &xi, &e, &eta).unwrap();
        assert_eq!(g, e);
        assert!(v
            .0
            .iter()
            .zip([0.5, 2.25, 4.0])
            .all(|(a, b)| (a - b).abs() < 1e-15));

        let a = exp(&su2, &[0.0, 0.0, PI / 2.0]).unwrap();
        let xi1 = DualVector::basis(3, 0);
        let (g, v) = semidirect_multiply(&su2, &a, &xi1, &e, &DualVector::zeros(3)).unwrap();
        assert!(max_abs(&(g.matrix - &a.matrix)) < 1e-15);
        assert!(v.0.iter().zip(&xi1.0).all(|(a, b)| (a - b).abs() < 1e-14));

        let (ai, xii) = semidirect_inverse(&su2, &a, &xi).unwrap();
        let (g, v) = semidirect_multiply(&su2, &a, &xi, &ai, &xii).unwrap();
        assert!(max_abs(&(g.matrix - CMatrix::identity(2, 2))) < 1e-14);
        assert!(v.0.iter().all(|c| c.abs() < 1e-14));
    }

    #[test]
    fn tangent_group_examples() {
        let so3 = LieAlgebra::builtin("so3").unwrap();
        let e = GroupElement::identity(3);
        let (v, g) =
            tangent_group_multiply(&so3, &[1.0, 2.0, 3.0], &e, &[0.5, 0.0, -1.0], &e).unwrap();
        assert_eq!(v, vec![1.5, 2.0, 2.0]);
        assert_eq!(g, e);

        let a = exp(&so3, &[0.0, 0.0, PI / 2.0]).unwrap();
        let b = exp(&so3, &[0.3, 0.0, 0.0]).unwrap();
        let (v, g) = tangent_group_multiply(&so3, &[0.0; 3], &a, &[0.0; 3], &b).unwrap();
        assert_eq!(v, vec![0.0; 3]);
        assert!(max_abs(&(g.matrix - &a.matrix * &b.matrix)) < 1e-15);

        let (v, g) =
            tangent_group_multiply(&so3, &[1.0, 0.0, 0.0], &a, &[1.0, 0.0, 0.0], &e).unwrap();
        assert!((v[0] - 1.0).abs() < 1e-14 && (v[1] - 1.0).abs() < 1e-14 && v[2].abs() < 1e-14);
        assert!(max_abs(&(g.matrix - &a.matrix)) < 1e-15);

        let (xi, ai) = tangent_group_inverse(&so3, &[0.2, -0.1, 0.4], &a).unwrap();
        let (v, g) = tangent_group_multiply(&so3, &[0.2, -0.1, 0.4], &a, &xi, &ai).unwrap();
        assert!(v.iter().all(|c| c.abs() < 1e-14));
        assert!(max_abs(&(g.matrix - CMatrix::identity(3, 3))) < 1e-14);

        let (g, v) =
            tangent_group_multiply_left(&so3, &e, &[1.0, 0.0, 0.0], &e, &[0.0, 1.0, 0.0]).unwrap();
        assert_eq!(g, e);
        assert_eq!(v, vec![1.0, 1.0, 0.0]);
    }

    #[test]
    fn zeta_r_examples() {
        let so3 = LieAlgebra::builtin("so3").unwrap();
        let e = GroupElement::identity(3);
        assert_eq!(zeta_r(&so3, &DualVector::basis(3, 1), &e, 1).unwrap(), 1.0);
        let g = exp(&so3, &[0.0, 0.0, PI / 2.0]).unwrap();
        let xi1 = DualVector::basis(3, 0);
        assert!(zeta_r(&so3, &xi1, &g, 0).unwrap().abs() < 1e-14);
        assert!((zeta_r(&so3, &xi1, &g, 1).unwrap() + 1.0).abs() < 1e-14);
    }

    #[test]
    fn invariant_derivative_examples() {
        let su2 = LieAlgebra::builtin("su2").unwrap();
        let e = GroupElement::identity(2);
        let retr = |g: &GroupElement| g.trace().re;
        let constant = |_: &GroupElement| 4.2;
        for i in 0..3 {
            for side in [Side::Left, Side::Right] {
                assert!(
                    invariant_derivative(&su2, side, i, &retr, &e, DEFAULT_STEP)
                        .unwrap()
                        .abs()
                        < 1e-10
                );
                assert_eq!(
                    invariant_derivative(&su2, side, i, &constant, &e, DEFAULT_STEP).unwrap(),
                    0.0
                );
            }
            let imtr = |g: &GroupElement| {
                (g.matrix[(0, 0)] * Complex64::new(0.3, 0.1)).re + g.matrix[(1, 0)].im
            };
            let l = invariant_derivative(&su2, Side::Left, i, &imtr, &e, DEFAULT_STEP).unwrap();
            let r = invariant_derivative(&su2, Side::Right, i, &imtr, &e, DEFAULT_STEP).unwrap();
            assert_eq!(l, r);
        }
        assert!(invariant_derivative(&su2, Side::Left, 0, &retr, &e, 0.0).is_err());
        let nan = |_: &GroupElement| f64::NAN;
        assert!(matches!(
            invariant_derivative(&su2, Side::Left, 0, &nan, &e, DEFAULT_STEP),
            Err(Error::NonFiniteValue(_))
        ));
    }

    #[test]
    fn renormalize_restores_membership() {
        let su2 = LieAlgebra::builtin("su2").unwrap();
        let g = exp(&su2, &[0.4, -1.1, 0.3]).unwrap();
        let drifted = GroupElement {
            matrix: &g.matrix * Complex64::new(1.0 + 1e-6, 1e-7),
        };
        assert!(drifted.membership_defect(GroupKind::SpecialUnitary) > 1e-7);
        let fixed = drifted.renormalize(GroupKind::SpecialUnitary);
        assert!(fixed.membership_defect(GroupKind::SpecialUnitary) < 1e-12);
        assert!(max_abs(&(fixed.matrix - &g.matrix)) < 1e-6);
    }

    #[test]
    fn group_element_json_is_row_major() {
        let g = GroupElement::from_matrix(CMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(1.0, 2.0),
                Complex64::new(3.0, 0.0),
                Complex64::new(0.0, -1.0),
                Complex64::new(0.5, 0.5),
            ],
        ));
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, "[[[1.0,2.0],[3.0,0.0]],[[0.0,-1.0],[0.5,0.5]]]");
        let back: GroupElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
    }
}
