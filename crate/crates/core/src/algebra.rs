//! Finite-dimensional real Lie algebras given by structure constants.
//!
//! The convention throughout is `[X_i, X_j] = Σ_k c^k_ij X_k` with the dual
//! basis `ξ_i` of `g*`. Built-in algebras carry a matrix basis from which the
//! structure constants are recovered by projecting matrix commutators.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};

pub type CMatrix = DMatrix<Complex64>;

/// Tolerance used when validating structure constants.
pub const VALIDATION_TOL: f64 = 1e-10;

/// Which matrix group a matrix basis exponentiates into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupKind {
    Unitary,
    SpecialUnitary,
    SpecialOrthogonal,
    General,
}

/// A basis of matrices together with the inverse of its real Gram matrix,
/// used to expand arbitrary matrices in the basis.
#[derive(Debug, Clone)]
pub struct MatrixBasis {
    mats: Vec<CMatrix>,
    gram_inv: DMatrix<f64>,
}

fn real_inner(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x.conj() * y).re).sum()
}

impl MatrixBasis {
    pub fn new(mats: Vec<CMatrix>) -> Result<Self> {
        let n = mats.len();
        if n == 0 {
            return Err(Error::InvalidSpec("empty matrix basis".into()));
        }
        let d = mats[0].nrows();
        for m in &mats {
            if m.nrows() != d || m.ncols() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    actual: m.nrows().max(m.ncols()),
                });
            }
        }
        let gram = DMatrix::from_fn(n, n, |a, b| real_inner(&mats[a], &mats[b]));
        let scale = gram
            .diagonal()
            .iter()
            .fold(0.0_f64, |acc, v| acc.max(v.abs()));
        let svd = gram.clone().svd(false, false);
        let smin = svd.singular_values.min();
        if scale == 0.0 || smin <= 1e-12 * scale {
            return Err(Error::BasisGramSingular);
        }
        let gram_inv = gram.try_inverse().ok_or(Error::BasisGramSingular)?;
        Ok(Self { mats, gram_inv })
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.mats
    }

    pub fn matrix_dim(&self) -> usize {
        self.mats[0].nrows()
    }

    /// `Σ_i v^i M_i`.
    pub fn combine(&self, v: &[f64]) -> CMatrix {
        let d = self.matrix_dim();
        let mut out = CMatrix::zeros(d, d);
        for (m, &c) in self.mats.iter().zip(v) {
            if c != 0.0 {
                out += m * Complex64::new(c, 0.0);
            }
        }
        out
    }

    /// Least-squares coordinates of `m` in the basis (exact when `m` lies in the span).
    pub fn project(&self, m: &CMatrix) -> Vec<f64> {
        let rhs: Vec<f64> = self.mats.iter().map(|b| real_inner(b, m)).collect();
        let n = self.mats.len();
        (0..n)
            .map(|a| (0..n).map(|b| self.gram_inv[(a, b)] * rhs[b]).sum())
            .collect()
    }
}

/// Coordinates `x^i` of a covector in the dual basis `ξ_i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DualVector(pub Vec<f64>);

impl DualVector {
    pub fn zeros(n: usize) -> Self {
        Self(vec![0.0; n])
    }

    /// The dual basis covector `ξ_i` (zero-based index).
    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = vec![0.0; n];
        v[i] = 1.0;
        Self(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// `⟨ξ, X⟩`.
    pub fn pair(&self, x: &[f64]) -> f64 {
        self.0.iter().zip(x).map(|(a, b)| a * b).sum()
    }
}

impl From<Vec<f64>> for DualVector {
    fn from(v: Vec<f64>) -> Self {
        Self(v)
    }
}

#[derive(Debug, Clone)]
pub struct LieAlgebra {
    name: String,
    dim: usize,
    /// `c[(k * n + i) * n + j] = c^k_ij`
    c: Vec<f64>,
    labels: Vec<String>,
    basis: Option<MatrixBasis>,
    group: GroupKind,
    invariant_form: Option<DMatrix<f64>>,
}

/// Description of an algebra as read from a JSON spec file or config.
///
/// Either the name of a built-in (`"so3"`) or an explicit tensor with
/// one-based `[k, i, j]` index triples for `c^k_ij`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraSpec {
    Builtin(String),
    Custom(CustomAlgebra),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CustomAlgebra {
    pub name: String,
    pub dim: usize,
    pub c: Vec<([usize; 3], f64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    /// Invariant bilinear form used for the Casimir instead of the Killing form.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariant_form: Option<Vec<Vec<f64>>>,
}

/// Builds and validates an algebra from its spec.
pub fn load_algebra(spec: &AlgebraSpec) -> Result<LieAlgebra> {
    match spec {
        AlgebraSpec::Builtin(name) => LieAlgebra::builtin(name),
        AlgebraSpec::Custom(custom) => {
            let n = custom.dim;
            if n == 0 {
                return Err(Error::InvalidSpec(
                    "algebra dimension must be positive".into(),
                ));
            }
            let mut c = vec![0.0; n * n * n];
            for &([k, i, j], value) in &custom.c {
                for idx in [k, i, j] {
                    if idx == 0 || idx > n {
                        return Err(Error::DimensionMismatch {
                            expected: n,
                            actual: idx,
                        });
                    }
                }
                c[((k - 1) * n + (i - 1)) * n + (j - 1)] = value;
            }
            let labels = match &custom.labels {
                Some(l) => {
                    check_dim(n, l.len())?;
                    l.clone()
                }
                None => (1..=n).map(|i| format!("X{i}")).collect(),
            };
            let mut alg = LieAlgebra::from_structure_constants(&custom.name, n, c, labels)?;
            if let Some(rows) = &custom.invariant_form {
                check_dim(n, rows.len())?;
                for r in rows {
                    check_dim(n, r.len())?;
                }
                alg = alg.with_invariant_form(DMatrix::from_fn(n, n, |a, b| rows[a][b]))?;
            }
            Ok(alg)
        }
    }
}

fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

fn cm(d: usize, entries: &[(usize, usize, Complex64)]) -> CMatrix {
    let mut m = CMatrix::zeros(d, d);
    for &(r, c, v) in entries {
        m[(r, c)] = v;
    }
    m
}

fn so3_matrices() -> Vec<CMatrix> {
    (0..3)
        .map(|k| CMatrix::from_fn(3, 3, |i, j| Complex64::new(-levi_civita(k, i, j), 0.0)))
        .collect()
}

fn pauli() -> [CMatrix; 3] {
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    [
        cm(2, &[(0, 1, one), (1, 0, one)]),
        cm(2, &[(0, 1, -i), (1, 0, i)]),
        cm(2, &[(0, 0, one), (1, 1, -one)]),
    ]
}

fn gell_mann() -> Vec<CMatrix> {
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let r3 = 1.0 / 3.0_f64.sqrt();
    vec![
        cm(3, &[(0, 1, one), (1, 0, one)]),
        cm(3, &[(0, 1, -i), (1, 0, i)]),
        cm(3, &[(0, 0, one), (1, 1, -one)]),
        cm(3, &[(0, 2, one), (2, 0, one)]),
        cm(3, &[(0, 2, -i), (2, 0, i)]),
        cm(3, &[(1, 2, one), (2, 1, one)]),
        cm(3, &[(1, 2, -i), (2, 1, i)]),
        cm(
            3,
            &[
                (0, 0, one * r3),
                (1, 1, one * r3),
                (2, 2, Complex64::new(-2.0 * r3, 0.0)),
            ],
        ),
    ]
}

impl LieAlgebra {
    /// One of `u1`, `so3`, `su2`, `su3`.
    pub fn builtin(name: &str) -> Result<Self> {
        let half_i = Complex64::new(0.0, 0.5);
        match name.to_ascii_lowercase().as_str() {
            "u1" => Self::from_matrix_basis(
                "u1",
                vec![cm(1, &[(0, 0, Complex64::new(0.0, 1.0))])],
                vec!["X1".into()],
                GroupKind::Unitary,
            ),
            "so3" => Self::from_matrix_basis(
                "so3",
                so3_matrices(),
                vec!["e1".into(), "e2".into(), "e3".into()],
                GroupKind::SpecialOrthogonal,
            ),
            "su2" => Self::from_matrix_basis(
                "su2",
                pauli().iter().map(|s| s * half_i).collect(),
                (1..=3).map(|k| format!("X{k}")).collect(),
                GroupKind::SpecialUnitary,
            ),
            "su3" => Self::from_matrix_basis(
                "su3",
                gell_mann().iter().map(|l| l * half_i).collect(),
                (1..=8).map(|k| format!("X{k}")).collect(),
                GroupKind::SpecialUnitary,
            ),
            other => Err(Error::UnsupportedAlgebra(other.to_string())),
        }
    }

    /// Validates antisymmetry (exact) and the Jacobi identity (within [`VALIDATION_TOL`]).
    pub fn from_structure_constants(
        name: &str,
        dim: usize,
        c: Vec<f64>,
        labels: Vec<String>,
    ) -> Result<Self> {
        check_dim(dim * dim * dim, c.len())?;
        check_dim(dim, labels.len())?;
        let alg = Self {
            name: name.to_string(),
            dim,
            c,
            labels,
            basis: None,
            group: GroupKind::General,
            invariant_form: None,
        };
        alg.validate()?;
        Ok(alg)
    }

    /// Derives the structure constants from commutators of the given matrices.
    pub fn from_matrix_basis(
        name: &str,
        mats: Vec<CMatrix>,
        labels: Vec<String>,
        group: GroupKind,
    ) -> Result<Self> {
        let n = mats.len();
        check_dim(n, labels.len())?;
        let basis = MatrixBasis::new(mats)?;
        let mut c = vec![0.0; n * n * n];
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (&basis.mats[i], &basis.mats[j]);
                let comm = a * b - b * a;
                let coeffs = basis.project(&comm);
                for (k, v) in coeffs.into_iter().enumerate() {
                    c[(k * n + i) * n + j] = v;
                }
            }
        }
        // enforce exact antisymmetry and flush projection noise
        for k in 0..n {
            for i in 0..n {
                for j in i..n {
                    let a = c[(k * n + i) * n + j];
                    let b = c[(k * n + j) * n + i];
                    let mut v = 0.5 * (a - b);
                    if v.abs() < 1e-14 {
                        v = 0.0;
                    }
                    c[(k * n + i) * n + j] = v;
                    c[(k * n + j) * n + i] = -v;
                }
            }
        }
        let alg = Self {
            name: name.to_string(),
            dim: n,
            c,
            labels,
            basis: Some(basis),
            group,
            invariant_form: None,
        };
        alg.validate()?;
        let defect = alg.matrix_commutator_defect().unwrap_or(0.0);
        if defect > VALIDATION_TOL {
            return Err(Error::InvalidSpec(format!(
                "matrix basis is not closed under commutators (defect {defect:.3e})"
            )));
        }
        Ok(alg)
    }

    /// Replaces the Killing form by a user-supplied invariant form for the Casimir.
    pub fn with_invariant_form(mut self, form: DMatrix<f64>) -> Result<Self> {
        check_dim(self.dim, form.nrows())?;
        check_dim(self.dim, form.ncols())?;
        self.invariant_form = Some(form);
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.dim;
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let s = self.structure_constant(k, i, j) + self.structure_constant(k, j, i);
                    if s != 0.0 {
                        return Err(Error::AntisymmetryViolation { k, i, j, defect: s });
                    }
                }
            }
        }
        let defect = self.jacobi_defect();
        if defect > VALIDATION_TOL {
            return Err(Error::JacobiViolation { defect });
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn group_kind(&self) -> GroupKind {
        self.group
    }

    pub fn matrix_basis(&self) -> Option<&MatrixBasis> {
        self.basis.as_ref()
    }

    pub fn require_basis(&self) -> Result<&MatrixBasis> {
        self.basis
            .as_ref()
            .ok_or_else(|| Error::NoMatrixBasis(self.name.clone()))
    }

    /// `c^k_ij` (zero-based indices).
    #[inline]
    pub fn structure_constant(&self, k: usize, i: usize, j: usize) -> f64 {
        self.c[(k * self.dim + i) * self.dim + j]
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().all(|&v| v == 0.0)
    }

    /// `([X,Y])^k = Σ_ij c^k_ij X^i Y^j`
    pub fn bracket_vectors(&self, x: &[f64], y: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.dim, x.len())?;
        check_dim(self.dim, y.len())?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let n = self.dim;
        let mut out = vec![0.0; n];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0.0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0.0 {
                    continue;
                }
                let w = xi * yj;
                for (k, o) in out.iter_mut().enumerate() {
                    *o += self.structure_constant(k, i, j) * w;
                }
            }
        }
        out
    }

    /// `(ad*_X ξ)_k = Σ_ij ξ_j c^j_ik X^i`, i.e. `(ad*_X ξ)(Y) = ξ([X, Y])`.
    pub fn ad_star(&self, x: &[f64], xi: &DualVector) -> Result<DualVector> {
        check_dim(self.dim, x.len())?;
        check_dim(self.dim, xi.len())?;
        let n = self.dim;
        let out = (0..n)
            .map(|k| {
                let mut s = 0.0;
                for (i, &xv) in x.iter().enumerate() {
                    for (j, &xj) in xi.0.iter().enumerate() {
                        s += xj * self.structure_constant(j, i, k) * xv;
                    }
                }
                s
            })
            .collect();
        Ok(DualVector(out))
    }

    /// `B_ij = Σ_st c^s_it c^t_js`, i.e. `tr(ad X_i ∘ ad X_j)`.
    pub fn killing_form(&self) -> DMatrix<f64> {
        let n = self.dim;
        DMatrix::from_fn(n, n, |i, j| {
            let mut s = 0.0;
            for a in 0..n {
                for t in 0..n {
                    s += self.structure_constant(a, i, t) * self.structure_constant(t, j, a);
                }
            }
            s
        })
    }

    /// The invariant form used for Casimirs: the override if present, otherwise Killing.
    pub fn invariant_form(&self) -> DMatrix<f64> {
        self.invariant_form
            .clone()
            .unwrap_or_else(|| self.killing_form())
    }

    /// Inverse of the invariant form, or `SingularKillingForm`.
    pub fn inverse_form(&self) -> Result<DMatrix<f64>> {
        let b = self.invariant_form();
        let sv = b.clone().svd(false, false).singular_values;
        let smax = sv.max();
        if smax == 0.0 || sv.min() <= 1e-12 * smax {
            return Err(Error::SingularKillingForm);
        }
        b.try_inverse().ok_or(Error::SingularKillingForm)
    }

    /// `C(ξ) = Σ_ij (B⁻¹)^ij ξ_i ξ_j`.
    pub fn quadratic_casimir(&self, xi: &DualVector) -> Result<f64> {
        check_dim(self.dim, xi.len())?;
        let inv = self.inverse_form()?;
        Ok(quadratic(&inv, &xi.0))
    }

    /// Largest absolute Jacobi sum over all index tuples.
    pub fn jacobi_defect(&self) -> f64 {
        let n = self.dim;
        let c = |k, i, j| self.structure_constant(k, i, j);
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut s = 0.0;
                        for m in 0..n {
                            s += c(m, i, j) * c(l, m, k)
                                + c(m, j, k) * c(l, m, i)
                                + c(m, k, i) * c(l, m, j);
                        }
                        worst = worst.max(s.abs());
                    }
                }
            }
        }
        worst
    }

    /// Largest entrywise gap between `c` and the constants recovered from the
    /// matrix commutators; `None` without a matrix basis.
    pub fn matrix_commutator_defect(&self) -> Option<f64> {
        let basis = self.basis.as_ref()?;
        let n = self.dim;
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (&basis.mats[i], &basis.mats[j]);
                let comm = a * b - b * a;
                let expect = basis.combine(
                    &(0..n)
                        .map(|k| self.structure_constant(k, i, j))
                        .collect::<Vec<_>>(),
                );
                let diff = (comm - expect)
                    .iter()
                    .fold(0.0_f64, |acc, z| acc.max(z.norm()));
                worst = worst.max(diff);
            }
        }
        Some(worst)
    }
}

pub(crate) fn quadratic(m: &DMatrix<f64>, v: &[f64]) -> f64 {
    let n = v.len();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            s += m[(i, j)] * v[i] * v[j];
        }
    }
    s
}
