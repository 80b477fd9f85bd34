use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::chart::{chart_complex_structure, geom_at, ChartFrame, Geom, Space};
use super::connections::{
    curvature, first_derivatives, kahler_tractor_curvature_formula, killing_curvature_formula,
    riemannian_tractor_curvature_formula, Connection, Parts, SectionJet,
};
use super::jet::{Dual, Jet2, Scalar};
use crate::error::Error;
use crate::exactnum::{rat, Rational};

pub const DEFAULT_TOL: f64 = 1e-8;
pub const DEFAULT_SEED: u64 = 0x5eed;

/// Test sections per sampled point.
const SECTIONS_PER_POINT: usize = 2;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub max_deviation: f64,
    pub tol: f64,
    pub passed: bool,
}

impl CheckOutcome {
    fn new(name: &str, max_deviation: f64, tol: f64) -> Self {
        Self {
            name: name.to_string(),
            max_deviation,
            tol,
            // NaN never passes
            passed: max_deviation <= tol,
        }
    }

    fn exact(name: &str, holds: bool) -> Self {
        Self {
            name: name.to_string(),
            max_deviation: if holds { 0.0 } else { f64::INFINITY },
            tol: 0.0,
            passed: holds,
        }
    }
}

/// `c + Σ c_i x_i + Σ_{i≤j} c_ij x_i x_j`.
#[derive(Clone, Debug)]
struct Quadratic {
    c0: f64,
    c1: Vec<f64>,
    c2: Vec<f64>,
}

impl Quadratic {
    fn random(rng: &mut ChaCha8Rng, m: usize) -> Self {
        let mut coeff = || rng.gen_range(-4i32..=4) as f64 / rng.gen_range(1i32..=3) as f64;
        Self {
            c0: coeff(),
            c1: (0..m).map(|_| coeff()).collect(),
            c2: (0..m * (m + 1) / 2).map(|_| coeff()).collect(),
        }
    }

    fn eval<S: Scalar>(&self, x: &[S]) -> S {
        let mut s = S::from_f64(self.c0);
        let mut k = 0;
        for i in 0..x.len() {
            s = s.add(&x[i].scale(self.c1[i]));
            for j in i..x.len() {
                s = s.add(&x[i].mul(&x[j]).scale(self.c2[k]));
                k += 1;
            }
        }
        s
    }
}

fn random_section(rng: &mut ChaCha8Rng, ranks: &[usize], point: &[f64]) -> SectionJet {
    let m = point.len();
    let vars: Vec<Jet2<f64>> = point
        .iter()
        .enumerate()
        .map(|(i, &p)| Jet2::variable(p, i, m))
        .collect();
    let parts = ranks
        .iter()
        .map(|&r| {
            let size = m.pow(r as u32);
            if r == 2 {
                let mut out = vec![Jet2::from_f64(0.0); size];
                for c in 0..m {
                    for d in c + 1..m {
                        let v = Quadratic::random(rng, m).eval(&vars);
                        out[d * m + c] = v.neg();
                        out[c * m + d] = v;
                    }
                }
                out
            } else {
                (0..size)
                    .map(|_| Quadratic::random(rng, m).eval(&vars))
                    .collect()
            }
        })
        .collect();
    SectionJet { parts }
}

fn sample_point(rng: &mut ChaCha8Rng, m: usize) -> Vec<f64> {
    (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

fn max_diff(a: &[Parts<f64>], b: &[Parts<f64>]) -> f64 {
    let mut worst: f64 = 0.0;
    for (p, q) in a.iter().zip(b) {
        for (u, v) in p.iter().zip(q) {
            for (x, y) in u.iter().zip(v) {
                worst = worst.max((x - y).abs());
            }
        }
    }
    worst
}

fn max_abs(a: &[Parts<f64>]) -> f64 {
    a.iter()
        .flatten()
        .flatten()
        .fold(0.0, |w, x| w.max(x.abs()))
}

fn validate(space: Space) -> Result<(), Error> {
    match space {
        Space::Sphere { m } if m < 2 => Err(Error::InvalidParameter(
            "sphere dimension must be at least 2".into(),
        )),
        Space::Cpn { n } if n < 1 => Err(Error::InvalidParameter("n must be at least 1".into())),
        _ => Ok(()),
    }
}

/// Runs `f` at `samples` seeded points of `space` and keeps the worst value.
fn over_samples(
    space: Space,
    samples: usize,
    seed: u64,
    mut f: impl FnMut(&mut ChaCha8Rng, &[f64], &Geom<Dual<f64>>) -> f64,
) -> Result<f64, Error> {
    validate(space)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let p = sample_point(&mut rng, space.dim());
        let geo = geom_at(space, &p);
        let d = f(&mut rng, &p, &geo);
        // propagate NaN rather than letting max() swallow it
        worst = if d.is_nan() { d } else { worst.max(d) };
    }
    Ok(worst)
}

fn curvature_vs(
    conn: Connection,
    space: Space,
    samples: usize,
    seed: u64,
    expected: impl Fn(&Geom<Dual<f64>>, &[f64], &Parts<f64>) -> Vec<Parts<f64>>,
) -> Result<f64, Error> {
    over_samples(space, samples, seed, |rng, p, geo| {
        let mut worst: f64 = 0.0;
        for _ in 0..SECTIONS_PER_POINT {
            let s = random_section(rng, conn.ranks(), p);
            let k = curvature(conn, geo, &s);
            worst = worst.max(max_diff(&k, &expected(geo, p, &s.values())));
        }
        worst
    })
}

fn flat_on_sphere(conn: Connection, m: usize, samples: usize, seed: u64) -> Result<f64, Error> {
    let space = Space::Sphere { m };
    over_samples(space, samples, seed, |rng, p, geo| {
        (0..SECTIONS_PER_POINT)
            .map(|_| max_abs(&curvature(conn, geo, &random_section(rng, conn.ranks(), p))))
            .fold(0.0, f64::max)
    })
}

/// Largest componentwise gap between the computed curvature and the
/// Fubini–Study model `g_ac g_bd − g_bc g_ad + J_ac J_bd − J_bc J_ad + 2J_ab J_cd`.
pub fn check_cpn_curvature(
    n: usize,
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<CheckOutcome, Error> {
    let space = Space::Cpn { n };
    let d = over_samples(space, samples, seed, |_, p, geo| {
        ChartFrame::from_geom(space, p, geo).model_curvature_defect()
    })?;
    Ok(CheckOutcome::new("fs-curvature", d, tol))
}

/// Same against `g_ac g_bd − g_bc g_ad` on the unit sphere.
pub fn check_sphere_curvature(
    m: usize,
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<CheckOutcome, Error> {
    let space = Space::Sphere { m };
    let d = over_samples(space, samples, seed, |_, p, geo| {
        ChartFrame::from_geom(space, p, geo).model_curvature_defect()
    })?;
    Ok(CheckOutcome::new("sphere-curvature", d, tol))
}

/// Riemann symmetries, `∇g = 0` and (on `CP_n`) `∇J = 0`, `∇R = 0`, and
/// the Hermitian property.
pub fn check_chart_invariants(
    space: Space,
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<Vec<CheckOutcome>, Error> {
    let mut worst = [0.0f64; 5];
    over_samples(space, samples, seed, |_, p, geo| {
        let f = ChartFrame::from_geom(space, p, geo);
        let m = |v: &[f64]| v.iter().fold(0.0f64, |a, x| a.max(x.abs()));
        let now = [
            f.riemann_symmetry_defect(),
            m(&f.nabla_metric),
            m(&f.nabla_riemann),
            m(&f.nabla_kahler),
            f.hermitian_defect().unwrap_or(0.0),
        ];
        for (w, x) in worst.iter_mut().zip(now) {
            *w = w.max(x);
        }
        0.0
    })?;
    let mut out = vec![
        CheckOutcome::new("riemann-symmetries", worst[0], tol),
        CheckOutcome::new("metric-parallel", worst[1], tol),
        CheckOutcome::new("curvature-parallel", worst[2], tol),
    ];
    if matches!(space, Space::Cpn { .. }) {
        out.push(CheckOutcome::new("kahler-parallel", worst[3], tol));
        out.push(CheckOutcome::new("hermitian", worst[4], tol));
    }
    Ok(out)
}

/// Curvature of the Killing connection on `Λ¹ ⊕ Λ²` of the unit sphere,
/// which should vanish identically.
pub fn check_killing_connection_flat_on_sphere(
    m: usize,
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<CheckOutcome, Error> {
    let d = flat_on_sphere(Connection::Killing, m, samples, seed)?;
    Ok(CheckOutcome::new("killing-connection-flat", d, tol))
}

pub fn check_riemannian_tractor_flat_on_sphere(
    m: usize,
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<CheckOutcome, Error> {
    let d = flat_on_sphere(Connection::RiemannianTractor, m, samples, seed)?;
    Ok(CheckOutcome::new("riemannian-tractor-flat", d, tol))
}

pub fn check_wedge_tractor_flat_on_sphere(
    m: usize,
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<CheckOutcome, Error> {
    let d = flat_on_sphere(Connection::WedgeTractor, m, samples, seed)?;
    Ok(CheckOutcome::new("wedge-tractor-flat", d, tol))
}

/// On the unit sphere the connection on `Λ²` of the tractor bundle is the
/// Killing connection; compares `∇Σ` for both.
pub fn check_wedge_matches_killing_on_sphere(
    m: usize,
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<CheckOutcome, Error> {
    let d = over_samples(Space::Sphere { m }, samples, seed, |rng, p, geo| {
        let s = random_section(rng, Connection::Killing.ranks(), p);
        let a = first_derivatives(Connection::Killing, geo, &s);
        let b = first_derivatives(Connection::WedgeTractor, geo, &s);
        let mut worst: f64 = 0.0;
        for (x, y) in a
            .iter()
            .flatten()
            .flatten()
            .zip(b.iter().flatten().flatten())
        {
            worst = worst.max((x.v - y.v).abs());
            for (u, v) in x.g.iter().zip(&y.g) {
                worst = worst.max((u - v).abs());
            }
        }
        worst
    })?;
    Ok(CheckOutcome::new("wedge-equals-killing", d, tol))
}

/// Killing connection curvature on either space against
/// `[0; 2R_ab^e_[c μ_d]e + 2R_cd^e_[a μ_b]e − (∇^e R_abcd) σ_e]`.
pub fn check_killing_curvature(
    space: Space,
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<CheckOutcome, Error> {
    let d = curvature_vs(Connection::Killing, space, samples, seed, |geo, p, x| {
        let frame = ChartFrame::from_geom(space, p, geo);
        killing_curvature_formula(&geo.values(), &frame.nabla_riemann, x)
    })?;
    Ok(CheckOutcome::new("killing-curvature", d, tol))
}

/// Riemannian tractor curvature against `[0; g_bc μ_a − g_ac μ_b − R_ab^d_c μ_d]`.
pub fn check_riemannian_tractor_curvature(
    space: Space,
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<CheckOutcome, Error> {
    let d = curvature_vs(
        Connection::RiemannianTractor,
        space,
        samples,
        seed,
        |geo, _, x| riemannian_tractor_curvature_formula(&geo.values(), x),
    )?;
    Ok(CheckOutcome::new("riemannian-tractor-curvature", d, tol))
}

/// Kähler tractor curvature on `CP_n` against `2J_ab [ρ; J_c^d μ_d; −σ]`.
pub fn check_ktractor_curvature(
    n: usize,
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<CheckOutcome, Error> {
    let d = curvature_vs(
        Connection::KahlerTractor,
        Space::Cpn { n },
        samples,
        seed,
        |geo, _, x| kahler_tractor_curvature_formula(&geo.values(), x),
    )?;
    Ok(CheckOutcome::new("ktractor-curvature", d, tol))
}

/// `σσ̃ + g^bc μ_b μ̃_c + ρρ̃`.
pub(crate) fn metric_pairing<F: Scalar>(geo: &Geom<F>, x: &Parts<F>, y: &Parts<F>) -> F {
    let mut s = x[0][0].mul(&y[0][0]).add(&x[2][0].mul(&y[2][0]));
    for b in 0..geo.m {
        for c in 0..geo.m {
            s = s.add(&geo.ginv[b][c].mul(&x[1][b]).mul(&y[1][c]));
        }
    }
    s
}

/// `σρ̃ + J^bc μ_b μ̃_c − ρσ̃`.
pub(crate) fn skew_pairing<F: Scalar>(geo: &Geom<F>, x: &Parts<F>, y: &Parts<F>) -> F {
    let mut s = x[0][0].mul(&y[2][0]).sub(&x[2][0].mul(&y[0][0]));
    for b in 0..geo.m {
        for c in 0..geo.m {
            s = s.add(&geo.jup[b][c].mul(&x[1][b]).mul(&y[1][c]));
        }
    }
    s
}

type Pairing<F> = fn(&Geom<F>, &Parts<F>, &Parts<F>) -> F;

fn leibniz_defect(
    geo: &Geom<Dual<f64>>,
    s: &SectionJet,
    t: &SectionJet,
    pd: Pairing<Dual<f64>>,
    pf: Pairing<f64>,
) -> f64 {
    let conn = Connection::KahlerTractor;
    let vals = geo.values();
    let as_dual = |sec: &SectionJet| -> Parts<Dual<f64>> {
        sec.parts
            .iter()
            .map(|p| p.iter().map(|j| Dual::new(j.v, j.g.clone())).collect())
            .collect()
    };
    let whole = pd(geo, &as_dual(s), &as_dual(t));
    let (ds, dt) = (
        first_derivatives(conn, geo, s),
        first_derivatives(conn, geo, t),
    );
    let value = |p: &Parts<Dual<f64>>| -> Parts<f64> {
        p.iter().map(|c| c.iter().map(|d| d.v).collect()).collect()
    };
    let (sv, tv) = (s.values(), t.values());
    let mut worst: f64 = 0.0;
    for a in 0..geo.m {
        let rhs = pf(&vals, &value(&ds[a]), &tv) + pf(&vals, &sv, &value(&dt[a]));
        worst = worst.max((whole.partial(a) - rhs).abs());
    }
    worst
}

/// Leibniz rule for both tractor pairings under the Kähler tractor
/// connection; the worst of the two.
pub fn check_tractor_parallelism(
    n: usize,
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<CheckOutcome, Error> {
    let ranks = Connection::KahlerTractor.ranks();
    let d = over_samples(Space::Cpn { n }, samples, seed, |rng, p, geo| {
        let s = random_section(rng, ranks, p);
        let t = random_section(rng, ranks, p);
        leibniz_defect(geo, &s, &t, metric_pairing, metric_pairing).max(leibniz_defect(
            geo,
            &s,
            &t,
            skew_pairing,
            skew_pairing,
        ))
    })?;
    Ok(CheckOutcome::new("tractor-parallelism", d, tol))
}

/// Exact check, in the flat model `g = I` on `R^{2n}` with `R` the
/// Fubini–Study algebraic curvature tensor, that for every basis 2-form
///
/// `R_ab^e_[c μ_d]e + R_cd^e_[a μ_b]e
///   = J_bc ξ_ad − J_ac ξ_bd − J_bd ξ_ac + J_ad ξ_bc − 2J_ab ξ_cd − 2J_cd ξ_ab`
///
/// with `ξ_ab = J_[a^c μ_b]c`.
pub fn check_mu_identity(n: usize) -> Result<bool, Error> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let m = 2 * n;
    let j: Vec<Vec<i64>> = chart_complex_structure(m)
        .into_iter()
        .map(|r| r.into_iter().map(|x| x as i64).collect())
        .collect();
    let delta = |a: usize, b: usize| i64::from(a == b);
    let r = |a: usize, b: usize, c: usize, d: usize| -> i64 {
        delta(a, c) * delta(b, d) - delta(b, c) * delta(a, d) + j[a][c] * j[b][d]
            - j[b][c] * j[a][d]
            + 2 * j[a][b] * j[c][d]
    };
    // nonzero R_abe_ · per (a, b, c): list of (e, R_ab^e_c) with g = I
    let mut r_nz: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); m * m * m];
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                for e in 0..m {
                    let x = r(a, b, e, c);
                    if x != 0 {
                        r_nz[(a * m + b) * m + c].push((e, rat(x)));
                    }
                }
            }
        }
    }
    let jr: Vec<Vec<Rational>> = j
        .iter()
        .map(|row| row.iter().map(|&x| rat(x)).collect())
        .collect();
    let half = Rational::new(1.into(), 2.into());
    for p in 0..m {
        for q in p + 1..m {
            let mut mu = vec![vec![Rational::zero(); m]; m];
            mu[p][q] = Rational::one();
            mu[q][p] = -Rational::one();
            if !mu_identity_holds(m, &r_nz, &jr, &mu, &half) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn mu_identity_holds(
    m: usize,
    r_nz: &[Vec<(usize, Rational)>],
    j: &[Vec<Rational>],
    mu: &[Vec<Rational>],
    half: &Rational,
) -> bool {
    // R_ab^e_c μ_de, summed over e
    let contract = |a: usize, b: usize, c: usize, d: usize| -> Rational {
        r_nz[(a * m + b) * m + c]
            .iter()
            .fold(Rational::zero(), |s, (e, x)| s + x * &mu[d][*e])
    };
    // ξ_ab = ½ (J_a^c μ_bc − J_b^c μ_ac), J_a^c = J_ac when g = I
    let xi: Vec<Vec<Rational>> = (0..m)
        .map(|a| {
            (0..m)
                .map(|b| {
                    let s = (0..m).fold(Rational::zero(), |s, c| {
                        s + &j[a][c] * &mu[b][c] - &j[b][c] * &mu[a][c]
                    });
                    s * half
                })
                .collect()
        })
        .collect();
    let two = rat(2);
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                for d in 0..m {
                    let lhs = (contract(a, b, c, d) - contract(a, b, d, c) + contract(c, d, a, b)
                        - contract(c, d, b, a))
                        * half;
                    let rhs = &j[b][c] * &xi[a][d] - &j[a][c] * &xi[b][d] - &j[b][d] * &xi[a][c]
                        + &j[a][d] * &xi[b][c]
                        - &two * &j[a][b] * &xi[c][d]
                        - &two * &j[c][d] * &xi[a][b];
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Every check that applies to `space`, in a fixed order.
pub fn run_battery(
    space: Space,
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<Vec<CheckOutcome>, Error> {
    validate(space)?;
    let mut out = Vec::new();
    match space {
        Space::Sphere { m } => {
            out.push(check_sphere_curvature(m, samples, tol, seed)?);
            out.extend(check_chart_invariants(space, samples, tol, seed)?);
            out.push(check_killing_connection_flat_on_sphere(
                m, samples, tol, seed,
            )?);
            out.push(check_riemannian_tractor_flat_on_sphere(
                m, samples, tol, seed,
            )?);
            out.push(check_wedge_tractor_flat_on_sphere(m, samples, tol, seed)?);
            out.push(check_wedge_matches_killing_on_sphere(
                m, samples, tol, seed,
            )?);
        }
        Space::Cpn { n } => {
            out.push(check_cpn_curvature(n, samples, tol, seed)?);
            out.extend(check_chart_invariants(space, samples, tol, seed)?);
            out.push(check_killing_curvature(space, samples, tol, seed)?);
            out.push(check_riemannian_tractor_curvature(
                space, samples, tol, seed,
            )?);
            out.push(check_ktractor_curvature(n, samples, tol, seed)?);
            out.push(check_tractor_parallelism(n, samples, tol, seed)?);
            out.push(CheckOutcome::exact("mu-identity", check_mu_identity(n)?));
        }
    }
    Ok(out)
}
