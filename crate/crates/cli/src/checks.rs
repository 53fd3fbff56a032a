//! The `verify` suite: every structural property checked on seeded random data.

use liepoisson::dynamics::wong_vector_field;
use liepoisson::gauge::{
    curvature, curvature_with_step, gauge_transform_curvature, transformed_potential,
    PotentialSpec, VectorPotential,
};
use liepoisson::poisson::{
    coordinate_fields, hamiltonian_vector_field, jacobi_terms, BivectorBracket, BivectorSpec,
    Field, LiePoisson, TStarG, NESTED_STEP,
};
use liepoisson::reduce::{root_system, CartanReduced, Gauged};
use liepoisson::{Bracket, DualVector, LieAlgebra, PhasePoint, WongState};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::RunConfig;
use crate::fields::{
    group_names, names, random_field, random_gauge_map, random_group, random_potential, uniform,
    BoxField, QuadraticScalar,
};

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub defect: f64,
    pub tol: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Default)]
pub struct Suite {
    pub checks: Vec<Check>,
}

impl Suite {
    /// Records the worst defect over the samples, or the first error.
    pub fn record(&mut self, name: &str, tol: f64, run: impl FnOnce() -> liepoisson::Result<f64>) {
        let check = match run() {
            Ok(defect) => Check {
                name: name.into(),
                defect,
                tol,
                pass: defect <= tol,
                error: None,
            },
            Err(e) => Check {
                name: name.into(),
                defect: f64::NAN,
                tol,
                pass: false,
                error: Some(format!("{e:?}")),
            },
        };
        self.checks.push(check);
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn triple(rng: &mut ChaCha8Rng, vars: &[String]) -> liepoisson::Result<[BoxField; 3]> {
    Ok([
        random_field(rng, vars)?,
        random_field(rng, vars)?,
        random_field(rng, vars)?,
    ])
}

/// Worst antisymmetry, Leibniz and Jacobi defects of an engine over sampled points.
fn axioms(
    suite: &mut Suite,
    cfg: &RunConfig,
    prefix: &str,
    plain: &dyn Bracket,
    nested: &dyn Bracket,
    points: &[PhasePoint],
    fields: &[[BoxField; 3]],
) {
    let t = &cfg.tolerances;
    suite.record(
        &format!("{prefix}.antisymmetry"),
        t.antisymmetry_tol,
        || {
            let mut worst = 0.0_f64;
            for (pt, [f, g, _]) in points.iter().zip(fields) {
                worst = worst.max((plain.bracket(f, g, pt)? + plain.bracket(g, f, pt)?).abs());
            }
            Ok(worst)
        },
    );
    suite.record(&format!("{prefix}.leibniz"), t.leibniz_tol, || {
        let mut worst = 0.0_f64;
        for (pt, [f, g, h]) in points.iter().zip(fields) {
            let gh = |p: &PhasePoint| g(p) * h(p);
            let lhs = plain.bracket(f, &gh, pt)?;
            let rhs = g(pt) * plain.bracket(f, h, pt)? + h(pt) * plain.bracket(f, g, pt)?;
            worst = worst.max((lhs - rhs).abs());
        }
        Ok(worst)
    });
    suite.record(&format!("{prefix}.jacobi"), t.jacobi_tol, || {
        let mut worst = 0.0_f64;
        for (pt, [f, g, h]) in points.iter().zip(fields) {
            // Finite-difference noise grows with the size of the nested brackets.
            let terms = jacobi_terms(nested, f, g, h, pt)?;
            let size = terms.iter().map(|v| v.abs()).fold(1.0, f64::max);
            worst = worst.max(terms.iter().sum::<f64>().abs() / size);
        }
        Ok(worst)
    });
}

fn gauged_potential(
    cfg: &RunConfig,
    alg: &LieAlgebra,
    rng: &mut ChaCha8Rng,
) -> liepoisson::Result<VectorPotential> {
    let n = cfg.n_base();
    match &cfg.potential {
        PotentialSpec::Zero => random_potential(rng, alg.dim(), n, 0.5).build(alg, n),
        spec => spec.build(alg, n),
    }
}

fn wong_point(rng: &mut ChaCha8Rng, n: usize, d: usize) -> PhasePoint {
    PhasePoint::cotangent(
        uniform(rng, n, 1.0),
        uniform(rng, n, 1.0),
        uniform(rng, d, 1.0),
    )
}

pub fn run(cfg: &RunConfig, alg: &LieAlgebra, rng: &mut ChaCha8Rng) -> Suite {
    let mut suite = Suite::default();
    let t = cfg.tolerances.clone();
    let d = alg.dim();
    let samples = cfg.samples;

    suite.record("algebra.jacobi", 1e-10, || Ok(alg.jacobi_defect()));
    if let Some(defect) = alg.matrix_commutator_defect() {
        suite.record("algebra.matrix_commutators", 1e-10, || Ok(defect));
    }

    // Lie–Poisson on g*
    let x_vars = names("x", d);
    let mut points = Vec::new();
    let mut fields = Vec::new();
    let mut field_error = None;
    for _ in 0..samples {
        points.push(PhasePoint::dual(uniform(rng, d, 1.0)));
        match triple(rng, &x_vars) {
            Ok(tr) => fields.push(tr),
            Err(e) => field_error = Some(e),
        }
    }
    if let Some(e) = field_error {
        suite.record("fields", 0.0, || Err(e));
        return suite;
    }
    let lp = LiePoisson::new(alg);
    axioms(
        &mut suite,
        cfg,
        "lie_poisson",
        &lp,
        &LiePoisson::new(alg).with_step(NESTED_STEP),
        &points,
        &fields,
    );
    if alg.inverse_form().is_ok() {
        suite.record("lie_poisson.casimir", t.casimir_tol, || {
            let c = |p: &PhasePoint| {
                alg.quadratic_casimir(&DualVector(p.x.clone()))
                    .unwrap_or(f64::NAN)
            };
            let mut worst = 0.0_f64;
            for (pt, [f, _, _]) in points.iter().zip(&fields) {
                worst = worst.max(lp.bracket(&c, f, pt)?.abs());
            }
            Ok(worst)
        });
    }

    // g* × G
    if alg.matrix_basis().is_some() {
        let mut vars = x_vars.clone();
        vars.extend(group_names(
            alg.matrix_basis().map_or(0, |b| b.matrix_dim()),
        ));
        let mut points = Vec::new();
        let mut fields = Vec::new();
        for _ in 0..samples {
            match (random_group(rng, alg), triple(rng, &vars)) {
                (Ok(g), Ok(tr)) => {
                    points.push(PhasePoint::trivialized(uniform(rng, d, 1.0), g));
                    fields.push(tr);
                }
                (Err(e), _) | (_, Err(e)) => {
                    suite.record("tstar_g.sampling", 0.0, || Err(e));
                    return suite;
                }
            }
        }
        let tg = TStarG::new(alg);
        let spec = BivectorBracket::new(BivectorSpec::tstar_g(alg), Some(alg));
        suite.record("tstar_g.bivector_equivalence", t.equivalence_tol, || {
            let mut worst = 0.0_f64;
            for (pt, [f, g, _]) in points.iter().zip(&fields) {
                worst = worst.max((tg.bracket(f, g, pt)? - spec.bracket(f, g, pt)?).abs());
            }
            Ok(worst)
        });
        axioms(
            &mut suite,
            cfg,
            "tstar_g",
            &tg,
            &TStarG::new(alg).with_step(NESTED_STEP),
            &points,
            &fields,
        );
    }

    // T*Rⁿ × g* with a connection
    let n = cfg.n_base();
    match gauged_potential(cfg, alg, rng).and_then(|a| Ok((Gauged::new(alg, &a)?, a))) {
        Err(e) => suite.record("gauged.setup", 0.0, || Err(e)),
        Ok((eng, a)) => {
            let mut vars = names("q", n);
            vars.extend(names("p", n));
            vars.extend(x_vars.clone());
            let mut points = Vec::new();
            let mut fields = Vec::new();
            for _ in 0..samples {
                points.push(wong_point(rng, n, d));
                match triple(rng, &vars) {
                    Ok(tr) => fields.push(tr),
                    Err(e) => {
                        suite.record("gauged.sampling", 0.0, || Err(e));
                        return suite;
                    }
                }
            }
            axioms(
                &mut suite,
                cfg,
                "gauged",
                &eng,
                &eng.clone().with_step(NESTED_STEP),
                &points,
                &fields,
            );
            suite.record(
                "gauged.wong_field_is_hamiltonian",
                t.equivalence_tol,
                || {
                    let h = |p: &PhasePoint| 0.5 * p.p.iter().map(|v| v * v).sum::<f64>();
                    let mut worst = 0.0_f64;
                    for pt in &points {
                        let coords = coordinate_fields(pt);
                        let refs: Vec<&Field> = coords.iter().map(|b| b.as_ref()).collect();
                        let xh = hamiltonian_vector_field(&eng, &h, pt, &refs)?;
                        let gamma =
                            wong_vector_field(alg, &a, &WongState::from_point(pt))?.flatten();
                        for (u, v) in xh.iter().zip(gamma) {
                            worst = worst.max((u - v).abs());
                        }
                    }
                    Ok(worst)
                },
            );
            if alg.matrix_basis().is_some() {
                covariance(&mut suite, cfg, alg, &a, rng);
            }
        }
    }

    // G × h*
    if let Ok(root) = root_system(alg) {
        if !root.positive_roots.is_empty() {
            let k = root.rank();
            let mut vars = names("x", k);
            vars.extend(group_names(
                alg.matrix_basis().map_or(0, |b| b.matrix_dim()),
            ));
            let mut points = Vec::new();
            let mut fields = Vec::new();
            for s in 0..samples {
                let scale = [0.1, 1.0, 10.0][s % 3];
                let mut zh = unit_sample(rng, k);
                while !(root.wall_distance(&zh) > 0.2) {
                    zh = unit_sample(rng, k);
                }
                zh.iter_mut().for_each(|v| *v *= scale);
                match (random_group(rng, alg), triple(rng, &vars)) {
                    (Ok(g), Ok(tr)) => {
                        points.push(PhasePoint::trivialized(zh, g));
                        fields.push(tr);
                    }
                    (Err(e), _) | (_, Err(e)) => {
                        suite.record("cartan.sampling", 0.0, || Err(e));
                        return suite;
                    }
                }
            }
            let cr = CartanReduced::new(&root);
            axioms(
                &mut suite,
                cfg,
                "cartan",
                &cr,
                &CartanReduced::new(&root).with_step(NESTED_STEP),
                &points,
                &fields,
            );
        }
    }
    suite
}

fn covariance(
    suite: &mut Suite,
    cfg: &RunConfig,
    alg: &LieAlgebra,
    a: &VectorPotential,
    rng: &mut ChaCha8Rng,
) {
    let n = a.n_base();
    let samples = cfg.samples;
    if alg.is_abelian() {
        let chi = QuadraticScalar::random(rng, n);
        let shifted = a.shifted(move |q| chi.gradient(q));
        let qs: Vec<Vec<f64>> = (0..samples).map(|_| uniform(rng, n, 1.0)).collect();
        suite.record("gauge.abelian_invariance", 1e-8, || {
            let mut worst = 0.0_f64;
            for q in &qs {
                worst =
                    worst.max(curvature(alg, a, q)?.max_abs_diff(&curvature(alg, &shifted, q)?));
            }
            Ok(worst)
        });
        return;
    }
    let s = match random_gauge_map(rng, alg.dim(), n, 0.5) {
        Ok(s) => s,
        Err(e) => return suite.record("gauge.covariance", 0.0, || Err(e)),
    };
    let qs: Vec<Vec<f64>> = (0..samples).map(|_| uniform(rng, n, 1.0)).collect();
    suite.record("gauge.covariance", cfg.tolerances.covariance_tol, || {
        let moved = transformed_potential(alg, a, &s, 1e-5);
        let mut worst = 0.0_f64;
        for q in &qs {
            let lhs = curvature_with_step(alg, &moved, q, 1e-4)?;
            let rhs =
                gauge_transform_curvature(alg, &curvature_with_step(alg, a, q, 1e-4)?, &s, q)?;
            worst = worst.max(lhs.max_abs_diff(&rhs));
        }
        Ok(worst)
    });
}

fn unit_sample(rng: &mut ChaCha8Rng, k: usize) -> Vec<f64> {
    let v = uniform(rng, k, 1.0);
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.into_iter().map(|x| x / norm).collect()
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}
