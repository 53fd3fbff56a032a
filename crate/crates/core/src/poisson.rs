//! Bracket engines on `g*`, on `g* × G`, and a generic evaluator for
//! bivectors written as sums of wedges of frame fields.
//!
//! Sign convention: every engine returns `{f, g} = Λ(df, dg)` where a wedge
//! `A ∧ B` contracts as `(Af)(Bg) − (Ag)(Bf)`. For `g* × G` this is
//!
//! ```text
//! {f,g} = −Σ_i (R_i f ∂g/∂x^i − R_i g ∂f/∂x^i) − Σ_ijk x^i c^i_jk ∂f/∂x^j ∂g/∂x^k
//! ```
//!
//! and the Hamiltonian vector field of `H` is `ż = {H, z}`.

use std::fmt;
use std::sync::Arc;

use crate::algebra::LieAlgebra;
use crate::error::{finite, Error, Result};
use crate::expr::{Expr, Var, VarSource};
use crate::group::{flow, GroupElement, Side, DEFAULT_STEP};

/// Step used by nested (second-order) finite differences such as Jacobi tests.
pub const NESTED_STEP: f64 = 1e-4;

/// A point of one of the phase spaces handled here. Unused blocks stay empty:
/// `g*` uses `x`; `g* × G` uses `x, g`; `T*Rⁿ × g*` uses `q, p, x = I`;
/// `G × h*` uses `g, x = ζ^r|h`; `T*Rⁿ × G × h*` uses all four.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PhasePoint {
    pub q: Vec<f64>,
    pub p: Vec<f64>,
    pub x: Vec<f64>,
    pub g: Option<GroupElement>,
}

impl PhasePoint {
    pub fn dual(x: Vec<f64>) -> Self {
        Self {
            x,
            ..Default::default()
        }
    }

    pub fn trivialized(x: Vec<f64>, g: GroupElement) -> Self {
        Self {
            x,
            g: Some(g),
            ..Default::default()
        }
    }

    pub fn with_group(mut self, g: GroupElement) -> Self {
        self.g = Some(g);
        self
    }

    pub fn cotangent(q: Vec<f64>, p: Vec<f64>, x: Vec<f64>) -> Self {
        Self { q, p, x, g: None }
    }

    pub fn block(&self, b: Block) -> &[f64] {
        match b {
            Block::Q => &self.q,
            Block::P => &self.p,
            Block::X => &self.x,
        }
    }

    fn block_mut(&mut self, b: Block) -> &mut Vec<f64> {
        match b {
            Block::Q => &mut self.q,
            Block::P => &mut self.p,
            Block::X => &mut self.x,
        }
    }
}

impl VarSource for PhasePoint {
    fn value(&self, var: Var) -> f64 {
        let get = |v: &[f64], i: usize| v.get(i).copied().unwrap_or(f64::NAN);
        let entry = |r: usize, c: usize| {
            self.g
                .as_ref()
                .filter(|g| r < g.dim() && c < g.dim())
                .map(|g| g.matrix[(r, c)])
        };
        match var {
            Var::Q(i) => get(&self.q, i),
            Var::P(i) => get(&self.p, i),
            Var::X(i) => get(&self.x, i),
            Var::ReTrace => self.g.as_ref().map_or(f64::NAN, |g| g.trace().re),
            Var::ImTrace => self.g.as_ref().map_or(f64::NAN, |g| g.trace().im),
            Var::GroupRe(r, c) => entry(r, c).map_or(f64::NAN, |z| z.re),
            Var::GroupIm(r, c) => entry(r, c).map_or(f64::NAN, |z| z.im),
        }
    }
}

/// A smooth real function on a phase space.
pub type Field<'a> = dyn Fn(&PhasePoint) -> f64 + 'a;

/// Wraps a parsed expression as a field.
pub fn expr_field(e: Expr) -> impl Fn(&PhasePoint) -> f64 {
    move |pt: &PhasePoint| e.eval(pt)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Block {
    Q,
    P,
    X,
}

/// Frame vector fields with a known action on functions.
#[derive(Debug, Clone, PartialEq)]
pub enum FrameField {
    /// Coordinate partial `∂/∂q_j`, `∂/∂p_j` or `∂/∂x^j` (`∂/∂I_j`, `Z_j = ∂/∂ζ^r_j`).
    Coord(Block, usize),
    /// Left-invariant field `L_i` of the basis vector `X_i`.
    Left(usize),
    /// Right-invariant field `R_i` of the basis vector `X_i`.
    Right(usize),
    /// Left-invariant field of an arbitrary algebra vector (root fields `L_α`).
    LeftAlong(Vec<f64>),
}

impl FrameField {
    /// Parses names such as `dq_1`, `dp_2`, `dx_3`, `dI_1`, `Z_1`, `L_2`, `R_3` (one-based).
    pub fn parse(name: &str) -> Result<FrameField> {
        let bad = || Error::UnresolvableFrameField(name.to_string());
        let (head, idx) = name.split_once('_').ok_or_else(bad)?;
        let i: usize = idx.parse().map_err(|_| bad())?;
        if i == 0 {
            return Err(bad());
        }
        let i = i - 1;
        Ok(match head {
            "dq" => FrameField::Coord(Block::Q, i),
            "dp" => FrameField::Coord(Block::P, i),
            "dx" | "dI" | "dz" | "Z" => FrameField::Coord(Block::X, i),
            "L" => FrameField::Left(i),
            "R" => FrameField::Right(i),
            _ => return Err(bad()),
        })
    }

    pub fn name(&self) -> String {
        match self {
            FrameField::Coord(Block::Q, i) => format!("dq_{}", i + 1),
            FrameField::Coord(Block::P, i) => format!("dp_{}", i + 1),
            FrameField::Coord(Block::X, i) => format!("dx_{}", i + 1),
            FrameField::Left(i) => format!("L_{}", i + 1),
            FrameField::Right(i) => format!("R_{}", i + 1),
            FrameField::LeftAlong(v) => format!("L{v:?}"),
        }
    }
}

/// Finite-difference rules for frame actions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Differ {
    pub step: f64,
}

impl Default for Differ {
    fn default() -> Self {
        Self { step: DEFAULT_STEP }
    }
}

impl Differ {
    pub fn new(step: f64) -> Self {
        Self { step }
    }

    /// Central difference along a coordinate, step `h·max(1, |c|)`.
    pub fn partial(&self, f: &Field, pt: &PhasePoint, block: Block, i: usize) -> Result<f64> {
        let c = *pt
            .block(block)
            .get(i)
            .ok_or_else(|| Error::UnresolvableFrameField(FrameField::Coord(block, i).name()))?;
        let h = self.step * c.abs().max(1.0);
        let mut shifted = pt.clone();
        shifted.block_mut(block)[i] = c + h;
        let plus = f(&shifted);
        shifted.block_mut(block)[i] = c - h;
        let minus = f(&shifted);
        finite((plus - minus) / (2.0 * h), "coordinate partial")
    }

    /// Central difference along an invariant field on the group factor.
    pub fn invariant(
        &self,
        alg: &LieAlgebra,
        side: Side,
        v: &[f64],
        f: &Field,
        pt: &PhasePoint,
    ) -> Result<f64> {
        let g =
            pt.g.as_ref()
                .ok_or_else(|| Error::UnresolvableFrameField("point has no group factor".into()))?;
        let h = self.step;
        let mut shifted = pt.clone();
        shifted.g = Some(flow(alg, side, v, g, h)?);
        let plus = f(&shifted);
        shifted.g = Some(flow(alg, side, v, g, -h)?);
        let minus = f(&shifted);
        finite((plus - minus) / (2.0 * h), "invariant derivative")
    }

    pub fn apply(
        &self,
        alg: Option<&LieAlgebra>,
        frame: &FrameField,
        f: &Field,
        pt: &PhasePoint,
    ) -> Result<f64> {
        let need_alg = || alg.ok_or_else(|| Error::UnresolvableFrameField(frame.name()));
        let unit = |alg: &LieAlgebra, i: usize| -> Result<Vec<f64>> {
            if i >= alg.dim() {
                return Err(Error::UnresolvableFrameField(frame.name()));
            }
            let mut v = vec![0.0; alg.dim()];
            v[i] = 1.0;
            Ok(v)
        };
        match frame {
            FrameField::Coord(b, i) => self.partial(f, pt, *b, *i),
            FrameField::Left(i) => {
                let alg = need_alg()?;
                self.invariant(alg, Side::Left, &unit(alg, *i)?, f, pt)
            }
            FrameField::Right(i) => {
                let alg = need_alg()?;
                self.invariant(alg, Side::Right, &unit(alg, *i)?, f, pt)
            }
            FrameField::LeftAlong(v) => {
                let alg = need_alg()?;
                if v.len() != alg.dim() {
                    return Err(Error::UnresolvableFrameField(frame.name()));
                }
                self.invariant(alg, Side::Left, v, f, pt)
            }
        }
    }

    /// Gradient with respect to the `x` block.
    pub fn gradient_x(&self, f: &Field, pt: &PhasePoint) -> Result<Vec<f64>> {
        (0..pt.x.len())
            .map(|j| self.partial(f, pt, Block::X, j))
            .collect()
    }
}

/// Anything evaluating a Poisson bracket `{f, g}` at a point.
pub trait Bracket {
    fn bracket(&self, f: &Field, g: &Field, pt: &PhasePoint) -> Result<f64>;
}

/// `Σ_{j<k} w_jk (a_j b_k − a_k b_j)` with `w_jk = −Σ_i x^i c^i_jk`.
fn lie_poisson_term(alg: &LieAlgebra, x: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let n = alg.dim();
    let mut s = 0.0;
    for j in 0..n {
        for k in (j + 1)..n {
            let w: f64 = (0..n).map(|i| x[i] * alg.structure_constant(i, j, k)).sum();
            if w != 0.0 {
                s -= w * (a[j] * b[k] - a[k] * b[j]);
            }
        }
    }
    s
}

fn require_x(alg: &LieAlgebra, pt: &PhasePoint) -> Result<()> {
    crate::error::check_dim(alg.dim(), pt.x.len())
}

/// Lie–Poisson bracket on `g*`: `{f,g}(x) = −Σ x^i c^i_jk ∂_j f ∂_k g`.
#[derive(Debug, Clone)]
pub struct LiePoisson {
    alg: LieAlgebra,
    differ: Differ,
}

impl LiePoisson {
    pub fn new(alg: &LieAlgebra) -> Self {
        Self {
            alg: alg.clone(),
            differ: Differ::default(),
        }
    }

    pub fn with_step(mut self, step: f64) -> Self {
        self.differ.step = step;
        self
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.alg
    }
}

impl Bracket for LiePoisson {
    fn bracket(&self, f: &Field, g: &Field, pt: &PhasePoint) -> Result<f64> {
        require_x(&self.alg, pt)?;
        let a = self.differ.gradient_x(f, pt)?;
        let b = self.differ.gradient_x(g, pt)?;
        finite(
            lie_poisson_term(&self.alg, &pt.x, &a, &b),
            "Lie-Poisson bracket",
        )
    }
}

pub fn lie_poisson_bracket(alg: &LieAlgebra, f: &Field, g: &Field, x: &[f64]) -> Result<f64> {
    LiePoisson::new(alg).bracket(f, g, &PhasePoint::dual(x.to_vec()))
}

/// Canonical bracket of `T*G` carried to `g* × G` by the left momentum.
#[derive(Debug, Clone)]
pub struct TStarG {
    alg: LieAlgebra,
    differ: Differ,
}

impl TStarG {
    pub fn new(alg: &LieAlgebra) -> Self {
        Self {
            alg: alg.clone(),
            differ: Differ::default(),
        }
    }

    pub fn with_step(mut self, step: f64) -> Self {
        self.differ.step = step;
        self
    }
}

impl Bracket for TStarG {
    fn bracket(&self, f: &Field, g: &Field, pt: &PhasePoint) -> Result<f64> {
        require_x(&self.alg, pt)?;
        let n = self.alg.dim();
        let a = self.differ.gradient_x(f, pt)?;
        let b = self.differ.gradient_x(g, pt)?;
        let mut s = 0.0;
        for i in 0..n {
            let rf = self
                .differ
                .apply(Some(&self.alg), &FrameField::Right(i), f, pt)?;
            let rg = self
                .differ
                .apply(Some(&self.alg), &FrameField::Right(i), g, pt)?;
            s -= rf * b[i] - rg * a[i];
        }
        s += lie_poisson_term(&self.alg, &pt.x, &a, &b);
        finite(s, "T*G bracket")
    }
}

pub fn tstar_g_bracket(
    alg: &LieAlgebra,
    f: &Field,
    g: &Field,
    x: &[f64],
    group: &GroupElement,
) -> Result<f64> {
    TStarG::new(alg).bracket(f, g, &PhasePoint::trivialized(x.to_vec(), group.clone()))
}

type CoeffFn = dyn Fn(&PhasePoint) -> Result<f64> + Send + Sync;

/// Coefficient of a wedge term.
#[derive(Clone)]
pub enum Coefficient {
    Const(f64),
    Expr(Expr),
    Func(Arc<CoeffFn>),
}

impl Coefficient {
    pub fn func(f: impl Fn(&PhasePoint) -> Result<f64> + Send + Sync + 'static) -> Self {
        Coefficient::Func(Arc::new(f))
    }

    pub fn eval(&self, pt: &PhasePoint) -> Result<f64> {
        let v = match self {
            Coefficient::Const(c) => *c,
            Coefficient::Expr(e) => e.eval(pt),
            Coefficient::Func(f) => f(pt)?,
        };
        finite(v, "bivector coefficient")
    }
}

impl fmt::Debug for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Const(c) => write!(f, "Const({c})"),
            Coefficient::Expr(e) => write!(f, "Expr({e:?})"),
            Coefficient::Func(_) => write!(f, "Func(..)"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct WedgeTerm {
    pub a: FrameField,
    pub b: FrameField,
    pub coeff: Coefficient,
}

/// `Λ = Σ coeff · A ∧ B`.
#[derive(Debug, Clone, Default)]
pub struct BivectorSpec {
    pub terms: Vec<WedgeTerm>,
}

/// JSON form of a single wedge: `{"a": "R_1", "b": "dx_1", "coeff": "-1"}`.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct WedgeTermSpec {
    pub a: String,
    pub b: String,
    pub coeff: String,
}

impl BivectorSpec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, a: FrameField, b: FrameField, coeff: Coefficient) {
        self.terms.push(WedgeTerm { a, b, coeff });
    }

    pub fn from_json_terms(terms: &[WedgeTermSpec]) -> Result<Self> {
        let mut spec = Self::new();
        for t in terms {
            let coeff = Expr::parse(&t.coeff)?;
            spec.push(
                FrameField::parse(&t.a)?,
                FrameField::parse(&t.b)?,
                Coefficient::Expr(coeff),
            );
        }
        Ok(spec)
    }

    /// `Σ_j ∂/∂p_j ∧ ∂/∂q_j` on `T*Rⁿ`.
    pub fn canonical(n: usize) -> Self {
        let mut spec = Self::new();
        for j in 0..n {
            spec.push(
                FrameField::Coord(Block::P, j),
                FrameField::Coord(Block::Q, j),
                Coefficient::Const(1.0),
            );
        }
        spec
    }

    /// `Λ = −Σ_i R_i ∧ ∂/∂x^i − ½ Σ_ijk x^i c^i_jk ∂/∂x^j ∧ ∂/∂x^k` on `g* × G`.
    pub fn tstar_g(alg: &LieAlgebra) -> Self {
        let n = alg.dim();
        let mut spec = Self::new();
        for i in 0..n {
            spec.push(
                FrameField::Right(i),
                FrameField::Coord(Block::X, i),
                Coefficient::Const(-1.0),
            );
        }
        spec.extend_lie_poisson(alg, Block::X);
        spec
    }

    /// Adds `−½ Σ x^i c^i_jk ∂_j ∧ ∂_k` acting on the `x` block.
    pub fn extend_lie_poisson(&mut self, alg: &LieAlgebra, block: Block) {
        let n = alg.dim();
        for j in 0..n {
            for k in 0..n {
                let weights: Vec<(usize, f64)> = (0..n)
                    .map(|i| (i, alg.structure_constant(i, j, k)))
                    .filter(|&(_, c)| c != 0.0)
                    .collect();
                if weights.is_empty() {
                    continue;
                }
                let coeff = Coefficient::func(move |pt: &PhasePoint| {
                    Ok(-0.5 * weights.iter().map(|&(i, c)| c * pt.x[i]).sum::<f64>())
                });
                self.push(
                    FrameField::Coord(block, j),
                    FrameField::Coord(block, k),
                    coeff,
                );
            }
        }
    }
}

/// Evaluates a [`BivectorSpec`] on a pair of fields.
#[derive(Debug, Clone)]
pub struct BivectorBracket {
    spec: BivectorSpec,
    alg: Option<LieAlgebra>,
    differ: Differ,
}

impl BivectorBracket {
    pub fn new(spec: BivectorSpec, alg: Option<&LieAlgebra>) -> Self {
        Self {
            spec,
            alg: alg.cloned(),
            differ: Differ::default(),
        }
    }

    pub fn with_step(mut self, step: f64) -> Self {
        self.differ.step = step;
        self
    }

    pub fn spec(&self) -> &BivectorSpec {
        &self.spec
    }
}

impl Bracket for BivectorBracket {
    fn bracket<'s>(&'s self, f: &Field, g: &Field, pt: &PhasePoint) -> Result<f64> {
        let mut cache: Vec<(&FrameField, f64, f64)> = Vec::new();
        let alg = self.alg.as_ref();
        let differ = self.differ;
        let mut act = |frame: &'s FrameField| -> Result<(f64, f64)> {
            if let Some(&(_, af, ag)) = cache.iter().find(|(fr, _, _)| *fr == frame) {
                return Ok((af, ag));
            }
            let af = differ.apply(alg, frame, f, pt)?;
            let ag = differ.apply(alg, frame, g, pt)?;
            cache.push((frame, af, ag));
            Ok((af, ag))
        };
        let mut s = 0.0;
        for term in &self.spec.terms {
            let c = term.coeff.eval(pt)?;
            let (af, ag) = act(&term.a)?;
            let (bf, bg) = act(&term.b)?;
            s += c * (af * bg - ag * bf);
        }
        finite(s, "bivector bracket")
    }
}

pub fn bivector_bracket(
    spec: &BivectorSpec,
    alg: Option<&LieAlgebra>,
    f: &Field,
    g: &Field,
    pt: &PhasePoint,
) -> Result<f64> {
    BivectorBracket::new(spec.clone(), alg).bracket(f, g, pt)
}

/// Components `ż_a = {H, z_a}` of the Hamiltonian vector field of `H`.
pub fn hamiltonian_vector_field(
    bracket: &dyn Bracket,
    hamiltonian: &Field,
    pt: &PhasePoint,
    coords: &[&Field],
) -> Result<Vec<f64>> {
    coords
        .iter()
        .map(|z| bracket.bracket(hamiltonian, *z, pt))
        .collect()
}

/// Coordinate functions `q_1..q_n, p_1..p_n, x_1..x_k` of a point's real blocks.
pub fn coordinate_fields(pt: &PhasePoint) -> Vec<Box<Field<'static>>> {
    let mut out: Vec<Box<Field<'static>>> = Vec::new();
    for i in 0..pt.q.len() {
        out.push(Box::new(move |p: &PhasePoint| p.q[i]));
    }
    for i in 0..pt.p.len() {
        out.push(Box::new(move |p: &PhasePoint| p.p[i]));
    }
    for i in 0..pt.x.len() {
        out.push(Box::new(move |p: &PhasePoint| p.x[i]));
    }
    out
}

/// `{{f,g},h} + {{g,h},f} + {{h,f},g}` with nested finite differences.
///
/// Engines should be built with [`NESTED_STEP`] to keep the second-order
/// differences above rounding noise.
pub fn jacobiator(
    bracket: &dyn Bracket,
    f: &Field,
    g: &Field,
    h: &Field,
    pt: &PhasePoint,
) -> Result<f64> {
    let [a, b, c] = jacobi_terms(bracket, f, g, h, pt)?;
    finite(a + b + c, "jacobiator")
}

/// The three cyclic terms `{{f,g},h}`, `{{g,h},f}`, `{{h,f},g}`.
pub fn jacobi_terms(
    bracket: &dyn Bracket,
    f: &Field,
    g: &Field,
    h: &Field,
    pt: &PhasePoint,
) -> Result<[f64; 3]> {
    let fg = |p: &PhasePoint| bracket.bracket(f, g, p).unwrap_or(f64::NAN);
    let gh = |p: &PhasePoint| bracket.bracket(g, h, p).unwrap_or(f64::NAN);
    let hf = |p: &PhasePoint| bracket.bracket(h, f, p).unwrap_or(f64::NAN);
    Ok([
        finite(bracket.bracket(&fg, h, pt)?, "jacobiator")?,
        finite(bracket.bracket(&gh, f, pt)?, "jacobiator")?,
        finite(bracket.bracket(&hf, g, pt)?, "jacobiator")?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::exp;

    fn x(i: usize) -> impl Fn(&PhasePoint) -> f64 {
        move |p: &PhasePoint| p.x[i]
    }

    #[test]
    fn lie_poisson_coordinate_bracket() {
        let so3 = LieAlgebra::builtin("so3").unwrap();
        let v = lie_poisson_bracket(&so3, &x(0), &x(1), &[0.0, 0.0, 1.0]).unwrap();
        assert!((v + 1.0).abs() < 1e-10);
        let f = |p: &PhasePoint| p.x[0] * p.x[1].sin();
        assert_eq!(
            lie_poisson_bracket(&so3, &f, &f, &[0.3, -0.2, 0.9]).unwrap(),
            0.0
        );
    }

    #[test]
    fn lie_poisson_casimir() {
        let so3 = LieAlgebra::builtin("so3").unwrap();
        let c = |p: &PhasePoint| p.x.iter().map(|v| v * v).sum::<f64>();
        for a in 0..3 {
            let v = lie_poisson_bracket(&so3, &c, &x(a), &[0.4, -1.3, 0.7]).unwrap();
            assert!(v.abs() < 1e-6, "{v}");
        }
    }

    #[test]
    fn tstar_g_reduces_to_lie_poisson_on_x_fields() {
        let su2 = LieAlgebra::builtin("su2").unwrap();
        let g = exp(&su2, &[0.3, -0.4, 1.1]).unwrap();
        let f = |p: &PhasePoint| p.x[0] * p.x[2] + p.x[1];
        let h = |p: &PhasePoint| p.x[1] * p.x[1] - p.x[0];
        let pt = [0.2, 0.5, -0.7];
        let a = tstar_g_bracket(&su2, &f, &h, &pt, &g).unwrap();
        let b = lie_poisson_bracket(&su2, &f, &h, &pt).unwrap();
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn tstar_g_momentum_generates_right_translation() {
        let so3 = LieAlgebra::builtin("so3").unwrap();
        let g = exp(&so3, &[0.3, -0.4, 1.1]).unwrap();
        let phi = |p: &PhasePoint| {
            p.g.as_ref().unwrap().matrix[(0, 1)].re + p.g.as_ref().unwrap().trace().re
        };
        let pt = PhasePoint::trivialized(vec![0.2, 0.5, -0.7], g.clone());
        for a in 0..3 {
            let v = TStarG::new(&so3).bracket(&x(a), &phi, &pt).unwrap();
            let r = Differ::default()
                .apply(Some(&so3), &FrameField::Right(a), &phi, &pt)
                .unwrap();
            assert!((v - r).abs() < 1e-9, "{v} {r}");
        }
    }

    #[test]
    fn canonical_spec() {
        let spec = BivectorSpec::canonical(2);
        let pt = PhasePoint::cotangent(vec![0.1, 0.2], vec![0.3, -0.4], vec![]);
        let p1 = |p: &PhasePoint| p.p[0];
        let q1 = |p: &PhasePoint| p.q[0];
        assert!((bivector_bracket(&spec, None, &p1, &q1, &pt).unwrap() - 1.0).abs() < 1e-10);
        let empty = BivectorSpec::new();
        assert_eq!(bivector_bracket(&empty, None, &p1, &q1, &pt).unwrap(), 0.0);
    }

    #[test]
    fn free_particle_vector_field() {
        let spec = BivectorBracket::new(BivectorSpec::canonical(3), None);
        let pt = PhasePoint::cotangent(vec![0.1, 0.2, 0.3], vec![1.0, -2.0, 0.5], vec![]);
        let h = |p: &PhasePoint| 0.5 * p.p.iter().map(|v| v * v).sum::<f64>();
        let coords = coordinate_fields(&pt);
        let refs: Vec<&Field> = coords.iter().map(|b| b.as_ref()).collect();
        let v = hamiltonian_vector_field(&spec, &h, &pt, &refs).unwrap();
        let expect = [1.0, -2.0, 0.5, 0.0, 0.0, 0.0];
        for (a, b) in v.iter().zip(expect) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn hamiltonian_flow_is_tangent_to_coadjoint_sphere() {
        let so3 = LieAlgebra::builtin("so3").unwrap();
        let engine = LiePoisson::new(&so3);
        let pt = PhasePoint::dual(vec![1.0, 0.0, 0.0]);
        let v = hamiltonian_vector_field(&engine, &x(2), &pt, &[&x(0), &x(1), &x(2)]).unwrap();
        let dot: f64 = v.iter().zip(&pt.x).map(|(a, b)| a * b).sum();
        assert!(dot.abs() < 1e-6);
        assert!(v.iter().any(|c| c.abs() > 0.5));
    }

    #[test]
    fn frame_parsing() {
        assert_eq!(FrameField::parse("R_1").unwrap(), FrameField::Right(0));
        assert_eq!(
            FrameField::parse("dI_3").unwrap(),
            FrameField::Coord(Block::X, 2)
        );
        assert_eq!(
            FrameField::parse("dq_2").unwrap(),
            FrameField::Coord(Block::Q, 1)
        );
        for bad in ["R1", "Y_1", "L_0", "dx_a"] {
            assert!(matches!(
                FrameField::parse(bad),
                Err(Error::UnresolvableFrameField(_))
            ));
        }
        let spec = BivectorSpec::canonical(1);
        let pt = PhasePoint::dual(vec![1.0]);
        let f = |p: &PhasePoint| p.x[0];
        assert!(matches!(
            bivector_bracket(&spec, None, &f, &f, &pt),
            Err(Error::UnresolvableFrameField(_))
        ));
        let mut group_spec = BivectorSpec::new();
        group_spec.push(
            FrameField::Left(0),
            FrameField::Coord(Block::X, 0),
            Coefficient::Const(1.0),
        );
        assert!(matches!(
            bivector_bracket(&group_spec, None, &f, &f, &pt),
            Err(Error::UnresolvableFrameField(_))
        ));
    }

    #[test]
    fn json_terms() {
        let terms: Vec<WedgeTermSpec> =
            serde_json::from_str(r#"[{"a": "dx_2", "b": "dx_3", "coeff": "x1"}]"#).unwrap();
        let spec = BivectorSpec::from_json_terms(&terms).unwrap();
        let pt = PhasePoint::dual(vec![2.0, 0.3, -0.1]);
        let v = bivector_bracket(&spec, None, &x(1), &x(2), &pt).unwrap();
        assert!((v - 2.0).abs() < 1e-9);
    }

    #[test]
    fn jacobiator_separates_poisson_from_non_poisson() {
        // x1 ∂2∧∂3 is Poisson in three dimensions (its dual vector field x1 ∂1 is curl-free)
        let mut spec = BivectorSpec::new();
        spec.push(
            FrameField::Coord(Block::X, 1),
            FrameField::Coord(Block::X, 2),
            Coefficient::Expr(Expr::parse("x1").unwrap()),
        );
        let engine = BivectorBracket::new(spec, None).with_step(NESTED_STEP);
        let pt = PhasePoint::dual(vec![0.7, -0.3, 1.2]);
        assert!(jacobiator(&engine, &x(0), &x(1), &x(2), &pt).unwrap().abs() < 1e-6);

        // −x2 ∂2∧∂3 + x1 ∂3∧∂1 + ∂1∧∂2 has dual field V = (−x2, x1, 1) with V·curl V = 2
        let mut spec = BivectorSpec::new();
        let d = |i| FrameField::Coord(Block::X, i);
        spec.push(d(1), d(2), Coefficient::Expr(Expr::parse("-x2").unwrap()));
        spec.push(d(2), d(0), Coefficient::Expr(Expr::parse("x1").unwrap()));
        spec.push(d(0), d(1), Coefficient::Const(1.0));
        let engine = BivectorBracket::new(spec, None).with_step(NESTED_STEP);
        let j = jacobiator(&engine, &x(0), &x(1), &x(2), &pt).unwrap();
        assert!((j - 2.0).abs() < 1e-6, "{j}");
    }

    #[test]
    fn canonical_jacobi_on_polynomials() {
        let engine = BivectorBracket::new(BivectorSpec::canonical(2), None).with_step(NESTED_STEP);
        let pt = PhasePoint::cotangent(vec![0.3, -0.8], vec![1.1, 0.4], vec![]);
        let f = |p: &PhasePoint| p.q[0] * p.p[1] + p.q[1] * p.q[1];
        let g = |p: &PhasePoint| p.p[0] * p.p[0] * p.q[1];
        let h = |p: &PhasePoint| p.q[0] * p.p[0] - p.p[1];
        assert!(jacobiator(&engine, &f, &g, &h, &pt).unwrap().abs() < 1e-6);
    }
}
