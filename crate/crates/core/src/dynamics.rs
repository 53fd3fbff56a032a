//! Wong's equations for a particle with internal charge `I ∈ g*` moving in a
//! Yang–Mills potential, integrated with fixed-step RK4.
//!
//! ```text
//! q̇_j = p_j
//! ṗ_k = 2 Σ_ij I_i F^i_kj(q) p_j
//! İ_k = −Σ_ijs I_i c^i_ks A^s_j(q) p_j
//! ```

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::algebra::{DualVector, LieAlgebra};
use crate::error::{check_dim, Error, Result};
use crate::gauge::{curvature_with_step, CurvatureField, VectorPotential};
use crate::group::DEFAULT_STEP;
use crate::reduce::WongState;

/// Time derivative of a [`WongState`].
#[derive(Debug, Clone, PartialEq)]
pub struct WongDerivative {
    pub dq: Vec<f64>,
    pub dp: Vec<f64>,
    pub di: Vec<f64>,
}

impl WongDerivative {
    /// Components in the order `q, p, I`.
    pub fn flatten(&self) -> Vec<f64> {
        self.dq
            .iter()
            .chain(&self.dp)
            .chain(&self.di)
            .copied()
            .collect()
    }
}

pub fn wong_vector_field(
    alg: &LieAlgebra,
    a: &VectorPotential,
    s: &WongState,
) -> Result<WongDerivative> {
    let n = s.n_base();
    let d = alg.dim();
    check_dim(a.n_base(), n)?;
    check_dim(d, s.charge.len())?;
    let f = curvature_with_step(alg, a, &s.q, DEFAULT_STEP)?;
    let w = f.contract(&s.charge);
    let dp = (0..n)
        .map(|k| 2.0 * (0..n).map(|j| w[(k, j)] * s.p[j]).sum::<f64>())
        .collect();
    let mut di = vec![0.0; d];
    if !alg.is_abelian() {
        let av = a.along(&s.q, &s.p)?;
        for (k, out) in di.iter_mut().enumerate() {
            let mut acc = 0.0;
            for i in 0..d {
                for (sidx, &v) in av.iter().enumerate() {
                    acc += s.charge[i] * alg.structure_constant(i, k, sidx) * v;
                }
            }
            *out = -acc;
        }
    }
    let out = WongDerivative {
        dq: s.p.clone(),
        dp,
        di,
    };
    if out.flatten().iter().all(|v| v.is_finite()) {
        Ok(out)
    } else {
        Err(Error::NonFiniteValue("Wong vector field".into()))
    }
}

/// The abelian case: `q̇ = p`, `ṗ_k = 2e Σ_j F_kj p_j`, `ė = 0`.
pub fn lorentz_field(
    alg: &LieAlgebra,
    e: f64,
    f: &CurvatureField,
    s: &WongState,
) -> Result<(Vec<f64>, Vec<f64>)> {
    if !alg.is_abelian() || f.dim() != 1 {
        return Err(Error::NotAbelian);
    }
    let n = s.n_base();
    check_dim(f.n_base(), n)?;
    let dp = (0..n)
        .map(|k| 2.0 * e * (0..n).map(|j| f.get(0, k, j) * s.p[j]).sum::<f64>())
        .collect();
    Ok((s.p.clone(), dp))
}

/// `H = ½ Σ p²`.
pub fn kinetic_energy(s: &WongState) -> f64 {
    0.5 * s.p.iter().map(|v| v * v).sum::<f64>()
}

/// Quadratic Casimir of the charge, `NaN` when the invariant form is singular.
pub fn charge_casimir(alg: &LieAlgebra, s: &WongState) -> f64 {
    alg.quadratic_casimir(&DualVector(s.charge.clone()))
        .unwrap_or(f64::NAN)
}

fn axpy(s: &WongState, h: f64, k: &WongDerivative) -> WongState {
    let add = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(a, b)| a + h * b).collect();
    WongState {
        q: add(&s.q, &k.dq),
        p: add(&s.p, &k.dp),
        charge: add(&s.charge, &k.di),
    }
}

/// One classical RK4 step; `dt` may be negative.
pub fn rk4_step(
    alg: &LieAlgebra,
    a: &VectorPotential,
    s: &WongState,
    dt: f64,
) -> Result<WongState> {
    let k1 = wong_vector_field(alg, a, s)?;
    let k2 = wong_vector_field(alg, a, &axpy(s, 0.5 * dt, &k1))?;
    let k3 = wong_vector_field(alg, a, &axpy(s, 0.5 * dt, &k2))?;
    let k4 = wong_vector_field(alg, a, &axpy(s, dt, &k3))?;
    let comb = |x: &[f64], a1: &[f64], a2: &[f64], a3: &[f64], a4: &[f64]| -> Vec<f64> {
        (0..x.len())
            .map(|i| x[i] + dt / 6.0 * (a1[i] + 2.0 * a2[i] + 2.0 * a3[i] + a4[i]))
            .collect()
    };
    let next = WongState {
        q: comb(&s.q, &k1.dq, &k2.dq, &k3.dq, &k4.dq),
        p: comb(&s.p, &k1.dp, &k2.dp, &k3.dp, &k4.dp),
        charge: comb(&s.charge, &k1.di, &k2.di, &k3.di, &k4.di),
    };
    if next.is_finite() {
        Ok(next)
    } else {
        Err(Error::NonFiniteValue("RK4 step".into()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InvariantSample {
    pub energy: f64,
    pub casimir: f64,
}

/// Where integration stopped after a non-finite value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlowUp {
    pub step: usize,
    pub time: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<WongState>,
    pub invariant_log: Vec<InvariantSample>,
    /// Set when integration aborted; the samples before the failure are kept.
    pub blow_up: Option<BlowUp>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// `Err(NonFiniteValue)` if the run blew up.
    pub fn status(&self) -> Result<()> {
        match self.blow_up {
            None => Ok(()),
            Some(b) => Err(Error::NonFiniteValue(format!(
                "trajectory at step {} (t = {})",
                b.step, b.time
            ))),
        }
    }

    fn push(&mut self, alg: &LieAlgebra, t: f64, s: WongState) {
        self.invariant_log.push(InvariantSample {
            energy: kinetic_energy(&s),
            casimir: charge_casimir(alg, &s),
        });
        self.times.push(t);
        self.states.push(s);
    }
}

/// Samples `steps + 1` states of the flow starting at `s0`.
pub fn integrate_wong(
    alg: &LieAlgebra,
    a: &VectorPotential,
    s0: &WongState,
    dt: f64,
    steps: usize,
) -> Result<Trajectory> {
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "dt must be positive and finite, got {dt}"
        )));
    }
    if steps == 0 {
        return Err(Error::InvalidArgument("steps must be at least 1".into()));
    }
    check_dim(a.n_base(), s0.n_base())?;
    check_dim(alg.dim(), s0.charge.len())?;
    if !s0.is_finite() {
        return Err(Error::NonFiniteValue("initial state".into()));
    }
    let mut traj = Trajectory {
        times: vec![],
        states: vec![],
        invariant_log: vec![],
        blow_up: None,
    };
    traj.push(alg, 0.0, s0.clone());
    let mut s = s0.clone();
    for step in 1..=steps {
        let t = step as f64 * dt;
        match rk4_step(alg, a, &s, dt) {
            Ok(next) => {
                traj.push(alg, t, next.clone());
                s = next;
            }
            Err(Error::NonFiniteValue(_)) => {
                traj.blow_up = Some(BlowUp { step, time: t });
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(traj)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DriftThresholds {
    pub energy: f64,
    pub casimir: f64,
}

impl Default for DriftThresholds {
    fn default() -> Self {
        Self {
            energy: 1e-8,
            casimir: 1e-7,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub samples: usize,
    pub energy_max_drift: f64,
    pub energy_mean_drift: f64,
    /// `None` when the algebra has no quadratic Casimir.
    pub casimir_max_drift: Option<f64>,
    pub casimir_mean_drift: Option<f64>,
    pub pass: bool,
}

fn drifts(values: impl Iterator<Item = f64> + Clone) -> Option<(f64, f64)> {
    let mut it = values.clone();
    let v0 = it.next()?;
    if !v0.is_finite() {
        return None;
    }
    let scale = if v0 != 0.0 { v0.abs() } else { 1.0 };
    let (mut max, mut sum, mut count) = (0.0_f64, 0.0, 0usize);
    for v in values {
        let d = (v - v0).abs() / scale;
        max = max.max(d);
        sum += d;
        count += 1;
    }
    Some((max, sum / count as f64))
}

/// Relative drift of `H` and the Casimir against their initial values.
pub fn invariant_report(t: &Trajectory, thresholds: DriftThresholds) -> Result<InvariantReport> {
    if t.is_empty() {
        return Err(Error::EmptyTrajectory);
    }
    let (emax, emean) =
        drifts(t.invariant_log.iter().map(|s| s.energy)).unwrap_or((f64::NAN, f64::NAN));
    let cas = drifts(t.invariant_log.iter().map(|s| s.casimir));
    let pass = emax <= thresholds.energy && cas.is_none_or(|(m, _)| m <= thresholds.casimir);
    Ok(InvariantReport {
        samples: t.len(),
        energy_max_drift: emax,
        energy_mean_drift: emean,
        casimir_max_drift: cas.map(|c| c.0),
        casimir_mean_drift: cas.map(|c| c.1),
        pass,
    })
}

/// Writes `t,q1..qn,p1..pn,I1..Ik,H,Casimir` with shortest round-trip decimals.
pub fn write_csv(t: &Trajectory, mut out: impl Write) -> std::io::Result<()> {
    let (n, k) = t
        .states
        .first()
        .map_or((0, 0), |s| (s.n_base(), s.charge.len()));
    let mut header = vec!["t".to_string()];
    header.extend((1..=n).map(|i| format!("q{i}")));
    header.extend((1..=n).map(|i| format!("p{i}")));
    header.extend((1..=k).map(|i| format!("I{i}")));
    header.push("H".into());
    header.push("Casimir".into());
    writeln!(out, "{}", header.join(","))?;
    for ((time, s), inv) in t.times.iter().zip(&t.states).zip(&t.invariant_log) {
        let row: Vec<String> = std::iter::once(*time)
            .chain(s.q.iter().copied())
            .chain(s.p.iter().copied())
            .chain(s.charge.iter().copied())
            .chain([inv.energy, inv.casimir])
            .map(|v| v.to_string())
            .collect();
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}

/// Reads a file produced by [`write_csv`].
pub fn read_csv(input: impl BufRead) -> Result<Trajectory> {
    let bad = |m: String| Error::InvalidSpec(format!("trajectory CSV: {m}"));
    let mut lines = input.lines();
    let header = lines
        .next()
        .ok_or(Error::EmptyTrajectory)?
        .map_err(|e| bad(e.to_string()))?;
    let cols: Vec<&str> = header.split(',').collect();
    let n = cols.iter().filter(|c| c.starts_with('q')).count();
    let k = cols.iter().filter(|c| c.starts_with('I')).count();
    if cols.len() != 2 * n + k + 3 || cols[0] != "t" {
        return Err(bad(format!("unexpected header `{header}`")));
    }
    let mut traj = Trajectory {
        times: vec![],
        states: vec![],
        invariant_log: vec![],
        blow_up: None,
    };
    for line in lines {
        let line = line.map_err(|e| bad(e.to_string()))?;
        if line.is_empty() {
            continue;
        }
        let v = line
            .split(',')
            .map(|x| x.parse::<f64>().map_err(|e| bad(format!("{e} in `{x}`"))))
            .collect::<Result<Vec<f64>>>()?;
        check_dim(cols.len(), v.len())?;
        traj.times.push(v[0]);
        traj.states.push(WongState {
            q: v[1..1 + n].to_vec(),
            p: v[1 + n..1 + 2 * n].to_vec(),
            charge: v[1 + 2 * n..1 + 2 * n + k].to_vec(),
        });
        traj.invariant_log.push(InvariantSample {
            energy: v[1 + 2 * n + k],
            casimir: v[2 + 2 * n + k],
        });
    }
    Ok(traj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauge::curvature;

    fn u1() -> LieAlgebra {
        LieAlgebra::builtin("u1").unwrap()
    }

    #[test]
    fn free_motion() {
        let so3 = LieAlgebra::builtin("so3").unwrap();
        let s = WongState::new(
            vec![0.1, 0.2, 0.3],
            vec![1.0, -0.5, 0.25],
            vec![0.3, 0.2, 0.1],
        )
        .unwrap();
        let a = VectorPotential::zero(3, 3);
        let v = wong_vector_field(&so3, &a, &s).unwrap();
        assert_eq!(v.dq, s.p);
        assert_eq!(v.dp, vec![0.0; 3]);
        assert_eq!(v.di, vec![0.0; 3]);
        let t = integrate_wong(&so3, &a, &s, 0.01, 100).unwrap();
        let last = t.states.last().unwrap();
        for j in 0..3 {
            assert!((last.q[j] - (s.q[j] + 1.0 * s.p[j])).abs() < 1e-13);
        }
        let r = invariant_report(&t, DriftThresholds::default()).unwrap();
        assert!(r.energy_max_drift < 1e-14 && r.pass);
    }

    #[test]
    fn uniform_field_factor_two() {
        let (e, b) = (0.7, 1.9);
        let a = VectorPotential::uniform_b(2, b).unwrap();
        let s = WongState::new(vec![0.3, 0.4], vec![1.0, 0.0], vec![e]).unwrap();
        let v = wong_vector_field(&u1(), &a, &s).unwrap();
        assert_eq!(v.dq, vec![1.0, 0.0]);
        assert!(v.dp[0].abs() < 1e-12);
        assert!((v.dp[1] + e * b).abs() < 1e-9);
        assert_eq!(v.di, vec![0.0]);
        let f = curvature(&u1(), &a, &s.q).unwrap();
        let (dq, dp) = lorentz_field(&u1(), e, &f, &s).unwrap();
        assert_eq!((dq, dp), (v.dq, v.dp));
    }

    #[test]
    fn lorentz_rejects_nonabelian() {
        let su2 = LieAlgebra::builtin("su2").unwrap();
        let s = WongState::new(vec![0.0; 2], vec![1.0, 0.0], vec![1.0]).unwrap();
        let f = CurvatureField::zeros(2, 1);
        assert_eq!(lorentz_field(&su2, 1.0, &f, &s), Err(Error::NotAbelian));
    }

    #[test]
    fn constant_so3_charge_rotation() {
        let so3 = LieAlgebra::builtin("so3").unwrap();
        let a_val = 0.6;
        let a =
            VectorPotential::constant(vec![vec![a_val, 0.0, 0.0], vec![0.0; 3], vec![0.0; 3]], 3)
                .unwrap();
        let s = WongState::new(vec![0.0; 3], vec![1.0, 0.0, 0.0], vec![0.0, 0.0, 1.0]).unwrap();
        let v = wong_vector_field(&so3, &a, &s).unwrap();
        assert!(v.di[0].abs() < 1e-15 && (v.di[1] - a_val).abs() < 1e-15 && v.di[2].abs() < 1e-15);
        assert!(v.dp.iter().all(|x| x.abs() < 1e-12));
    }

    #[test]
    fn large_step_fails_report() {
        let a = VectorPotential::uniform_b(2, 1.0).unwrap();
        let s = WongState::new(vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0]).unwrap();
        let t = integrate_wong(&u1(), &a, &s, 0.5, 200).unwrap();
        assert!(
            !invariant_report(&t, DriftThresholds::default())
                .unwrap()
                .pass
        );
    }

    #[test]
    fn blow_up_keeps_prefix() {
        let a = VectorPotential::uniform_b(2, 1.0).unwrap();
        let s = WongState::new(vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0]).unwrap();
        let t = integrate_wong(&u1(), &a, &s, 10.0, 1000).unwrap();
        assert!(t.blow_up.is_some());
        assert!(t.len() > 1 && t.len() < 1001);
        assert!(t.status().is_err());
    }

    #[test]
    fn empty_report() {
        let t = Trajectory {
            times: vec![],
            states: vec![],
            invariant_log: vec![],
            blow_up: None,
        };
        assert_eq!(
            invariant_report(&t, DriftThresholds::default()),
            Err(Error::EmptyTrajectory)
        );
    }

    #[test]
    fn csv_round_trip() {
        let so3 = LieAlgebra::builtin("so3").unwrap();
        let s = WongState::new(
            vec![0.1, 0.2, 0.3],
            vec![1.0, -0.5, 0.25],
            vec![0.3, 0.2, 0.1],
        )
        .unwrap();
        let t = integrate_wong(&so3, &VectorPotential::hedgehog(0.3), &s, 0.01, 50).unwrap();
        let mut buf = Vec::new();
        write_csv(&t, &mut buf).unwrap();
        let back = read_csv(buf.as_slice()).unwrap();
        assert_eq!(back, t);
    }
}
