use serde::Serialize;

use super::jet::{Dual, Jet2, Scalar};
use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Space {
    /// Unit sphere `S^m` in stereographic coordinates.
    Sphere { m: usize },
    /// `CP_n` in the affine chart `z_j = x_{2j} + i x_{2j+1}`.
    Cpn { n: usize },
}

impl Space {
    pub fn dim(&self) -> usize {
        match *self {
            Space::Sphere { m } => m,
            Space::Cpn { n } => 2 * n,
        }
    }

    fn metric<S: Scalar>(&self, x: &[S]) -> Vec<Vec<S>> {
        match self {
            Space::Sphere { .. } => sphere_metric(x),
            Space::Cpn { .. } => fs_metric(x),
        }
    }

    fn validate(&self) -> Result<(), Error> {
        match *self {
            Space::Sphere { m } if m < 2 => Err(Error::InvalidParameter(
                "sphere dimension must be at least 2".into(),
            )),
            Space::Cpn { n } if n < 1 => {
                Err(Error::InvalidParameter("n must be at least 1".into()))
            }
            _ => Ok(()),
        }
    }
}

fn radius_sq<S: Scalar>(x: &[S]) -> S {
    x.iter()
        .fold(S::from_f64(1.0), |acc, xi| acc.add(&xi.mul(xi)))
}

/// `4 δ_ab / (1 + |x|²)²`.
pub fn sphere_metric<S: Scalar>(x: &[S]) -> Vec<Vec<S>> {
    let q = radius_sq(x);
    let c = S::from_f64(4.0).div(&q.mul(&q));
    let m = x.len();
    (0..m)
        .map(|a| {
            (0..m)
                .map(|b| if a == b { c.clone() } else { S::zero() })
                .collect()
        })
        .collect()
}

/// Fubini–Study metric, scaled to holomorphic sectional curvature 4:
///
/// `g_ab = δ_ab / (1+|z|²) − (u_a u_b + v_a v_b) / (1+|z|²)²`
///
/// where `Σ z̄_j dz_j = u_a dx^a + i v_a dx^a`, i.e.
/// `(u, v)_{2j} = (x_{2j}, −x_{2j+1})` and `(u, v)_{2j+1} = (x_{2j+1}, x_{2j})`.
pub fn fs_metric<S: Scalar>(x: &[S]) -> Vec<Vec<S>> {
    let m = x.len();
    let q = radius_sq(x);
    let q2 = q.mul(&q);
    let mut u = Vec::with_capacity(m);
    let mut v = Vec::with_capacity(m);
    for j in 0..m / 2 {
        u.push(x[2 * j].clone());
        v.push(x[2 * j + 1].neg());
        u.push(x[2 * j + 1].clone());
        v.push(x[2 * j].clone());
    }
    let diag = S::from_f64(1.0).div(&q);
    (0..m)
        .map(|a| {
            (0..m)
                .map(|b| {
                    let rank_one = u[a].mul(&u[b]).add(&v[a].mul(&v[b])).div(&q2);
                    if a == b {
                        diag.sub(&rank_one)
                    } else {
                        rank_one.neg()
                    }
                })
                .collect()
        })
        .collect()
}

/// The constant complex structure `J_a^b` of the chart: `J ∂_{2j} = ∂_{2j+1}`.
pub fn chart_complex_structure(m: usize) -> Vec<Vec<f64>> {
    let mut j = vec![vec![0.0; m]; m];
    for i in 0..m / 2 {
        j[2 * i][2 * i + 1] = 1.0;
        j[2 * i + 1][2 * i] = -1.0;
    }
    j
}

pub(crate) fn invert<S: Scalar>(a: &[Vec<S>]) -> Vec<Vec<S>> {
    let m = a.len();
    let mut w: Vec<Vec<S>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..m).map(|j| S::from_f64(if i == j { 1.0 } else { 0.0 })));
            r
        })
        .collect();
    for col in 0..m {
        // metric is positive definite, but pivot anyway for accuracy
        let p = (col..m)
            .max_by(|&i, &j| w[i][col].value().abs().total_cmp(&w[j][col].value().abs()))
            .unwrap_or(col);
        w.swap(col, p);
        let piv = w[col][col].clone();
        for x in w[col].iter_mut() {
            *x = x.div(&piv);
        }
        for r in 0..m {
            if r != col {
                // jets can vanish in value yet carry derivatives, so no zero skip
                let f = w[r][col].clone();
                for c in 0..2 * m {
                    let t = w[col][c].mul(&f);
                    w[r][c] = w[r][c].sub(&t);
                }
            }
        }
    }
    w.into_iter().map(|r| r[m..].to_vec()).collect()
}

/// Flat indexing helpers for tensors over `R^m`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Ix(pub usize);

impl Ix {
    pub fn i3(self, a: usize, b: usize, c: usize) -> usize {
        (a * self.0 + b) * self.0 + c
    }
    pub fn i4(self, a: usize, b: usize, c: usize, d: usize) -> usize {
        ((a * self.0 + b) * self.0 + c) * self.0 + d
    }
}

/// Geometry at a point over a scalar type: `f64` for values, `Dual` when
/// first derivatives of every quantity are needed.
#[derive(Clone, Debug)]
pub(crate) struct Geom<F> {
    pub m: usize,
    pub g: Vec<Vec<F>>,
    pub ginv: Vec<Vec<F>>,
    /// `Γ^a_bc` at `[a][b][c]`.
    pub gamma: Vec<F>,
    /// `∂_e Γ^a_bc` at `[e][a][b][c]`.
    pub dgamma: Vec<F>,
    /// `R_ab^c_d` at `[a][b][c][d]`.
    pub riem_up: Vec<F>,
    /// `R_abcd`.
    pub riem: Vec<F>,
    /// `J_a^b`, `J_ab`, `J^ab`; empty on the sphere.
    pub jmix: Vec<Vec<F>>,
    pub j: Vec<Vec<F>>,
    pub jup: Vec<Vec<F>>,
}

impl<F: Scalar> Geom<F> {
    pub fn ix(&self) -> Ix {
        Ix(self.m)
    }

    pub fn has_j(&self) -> bool {
        !self.j.is_empty()
    }
}

impl Geom<Dual<f64>> {
    pub fn values(&self) -> Geom<f64> {
        let v1 = |x: &Vec<Dual<f64>>| x.iter().map(|d| d.v).collect::<Vec<f64>>();
        let v2 = |x: &Vec<Vec<Dual<f64>>>| x.iter().map(v1).collect::<Vec<_>>();
        Geom {
            m: self.m,
            g: v2(&self.g),
            ginv: v2(&self.ginv),
            gamma: v1(&self.gamma),
            dgamma: v1(&self.dgamma),
            riem_up: v1(&self.riem_up),
            riem: v1(&self.riem),
            jmix: v2(&self.jmix),
            j: v2(&self.j),
            jup: v2(&self.jup),
        }
    }
}

/// Everything up to curvature, carried as first-order jets so that `∂R` is
/// available. The metric is differentiated to third order by evaluating it
/// on `Jet2<Dual<f64>>`.
pub(crate) fn geom_at(space: Space, point: &[f64]) -> Geom<Dual<f64>> {
    type D = Dual<f64>;
    let m = point.len();
    let ix = Ix(m);
    let vars: Vec<Jet2<D>> = point
        .iter()
        .enumerate()
        .map(|(i, &p)| Jet2::variable(Dual::variable(p, i, m), i, m))
        .collect();
    let metric = space.metric(&vars);
    let g: Vec<Vec<D>> = metric
        .iter()
        .map(|r| r.iter().map(|x| x.v.clone()).collect())
        .collect();
    // dg[c][a][b] = ∂_c g_ab, ddg[c][d][a][b] = ∂_c ∂_d g_ab
    let dg = |c: usize, a: usize, b: usize| metric[a][b].partial(c);
    let ddg = |c: usize, d: usize, a: usize, b: usize| metric[a][b].second(c, d);
    let ginv = invert(&g);

    // first-kind symbols and their derivatives
    let mut low = vec![D::zero(); m * m * m];
    let mut dlow = vec![D::zero(); m * m * m * m];
    for d in 0..m {
        for b in 0..m {
            for c in 0..m {
                low[ix.i3(d, b, c)] = dg(b, d, c).add(&dg(c, d, b)).sub(&dg(d, b, c)).scale(0.5);
                for e in 0..m {
                    dlow[ix.i4(e, d, b, c)] = ddg(e, b, d, c)
                        .add(&ddg(e, c, d, b))
                        .sub(&ddg(e, d, b, c))
                        .scale(0.5);
                }
            }
        }
    }
    // ∂_e g^ad = −g^ap ∂_e g_pq g^qd
    let mut dginv = vec![D::zero(); m * m * m];
    for e in 0..m {
        for a in 0..m {
            for d in 0..m {
                let mut s = D::zero();
                for p in 0..m {
                    for q in 0..m {
                        s = s.add(&ginv[a][p].mul(&dg(e, p, q)).mul(&ginv[q][d]));
                    }
                }
                dginv[ix.i3(e, a, d)] = s.neg();
            }
        }
    }
    let mut gamma = vec![D::zero(); m * m * m];
    let mut dgamma = vec![D::zero(); m * m * m * m];
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                let mut s = D::zero();
                for d in 0..m {
                    s = s.add(&ginv[a][d].mul(&low[ix.i3(d, b, c)]));
                }
                gamma[ix.i3(a, b, c)] = s;
                for e in 0..m {
                    let mut s = D::zero();
                    for d in 0..m {
                        s = s
                            .add(&dginv[ix.i3(e, a, d)].mul(&low[ix.i3(d, b, c)]))
                            .add(&ginv[a][d].mul(&dlow[ix.i4(e, d, b, c)]));
                    }
                    dgamma[ix.i4(e, a, b, c)] = s;
                }
            }
        }
    }
    // R_ab^c_d = ∂_a Γ^c_bd − ∂_b Γ^c_ad + Γ^c_ae Γ^e_bd − Γ^c_be Γ^e_ad
    let mut riem_up = vec![D::zero(); m * m * m * m];
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                for d in 0..m {
                    let mut s = dgamma[ix.i4(a, c, b, d)].sub(&dgamma[ix.i4(b, c, a, d)]);
                    for e in 0..m {
                        s = s
                            .add(&gamma[ix.i3(c, a, e)].mul(&gamma[ix.i3(e, b, d)]))
                            .sub(&gamma[ix.i3(c, b, e)].mul(&gamma[ix.i3(e, a, d)]));
                    }
                    riem_up[ix.i4(a, b, c, d)] = s;
                }
            }
        }
    }
    let mut riem = vec![D::zero(); m * m * m * m];
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                for d in 0..m {
                    let mut s = D::zero();
                    for e in 0..m {
                        s = s.add(&g[c][e].mul(&riem_up[ix.i4(a, b, e, d)]));
                    }
                    riem[ix.i4(a, b, c, d)] = s;
                }
            }
        }
    }

    let (jmix, j, jup) = match space {
        Space::Sphere { .. } => (Vec::new(), Vec::new(), Vec::new()),
        Space::Cpn { .. } => {
            let jm: Vec<Vec<D>> = chart_complex_structure(m)
                .into_iter()
                .map(|r| r.into_iter().map(D::from_f64).collect())
                .collect();
            // J_ab = J_a^c g_cb
            let j: Vec<Vec<D>> = (0..m)
                .map(|a| {
                    (0..m)
                        .map(|b| (0..m).fold(D::zero(), |s, c| s.add(&jm[a][c].mul(&g[c][b]))))
                        .collect()
                })
                .collect();
            let jup: Vec<Vec<D>> = (0..m)
                .map(|a| {
                    (0..m)
                        .map(|b| {
                            let mut s = D::zero();
                            for c in 0..m {
                                for d in 0..m {
                                    s = s.add(&ginv[a][c].mul(&ginv[b][d]).mul(&j[c][d]));
                                }
                            }
                            s
                        })
                        .collect()
                })
                .collect();
            (jm, j, jup)
        }
    };

    Geom {
        m,
        g,
        ginv,
        gamma,
        dgamma,
        riem_up,
        riem,
        jmix,
        j,
        jup,
    }
}

/// A point of a chart with the metric and everything derived from it.
#[derive(Clone, Debug, Serialize)]
pub struct ChartFrame {
    pub space: Space,
    pub point: Vec<f64>,
    pub metric: Vec<Vec<f64>>,
    pub inverse_metric: Vec<Vec<f64>>,
    /// `Γ^a_bc`, flattened `[a][b][c]`.
    pub christoffel: Vec<f64>,
    /// `∂_e Γ^a_bc`, flattened `[e][a][b][c]`.
    pub christoffel_derivs: Vec<f64>,
    /// `R_abcd`, flattened; `(∇_a∇_b − ∇_b∇_a) X^c = R_ab^c_d X^d`.
    pub riemann: Vec<f64>,
    /// `∇_e R_abcd`, flattened `[e][a][b][c][d]`.
    pub nabla_riemann: Vec<f64>,
    /// `J_ab`; `None` on the sphere.
    pub kahler_form: Option<Vec<Vec<f64>>>,
    /// `J_a^b`; `None` on the sphere.
    pub complex_structure: Option<Vec<Vec<f64>>>,
    /// `∇_a g_bc`, flattened.
    pub nabla_metric: Vec<f64>,
    /// `∇_a J_bc`, flattened; empty on the sphere.
    pub nabla_kahler: Vec<f64>,
}

/// `∇_e` of a covariant tensor whose components are first-order jets.
fn nabla_covariant(geo: &Geom<Dual<f64>>, rank: usize, t: &[Dual<f64>]) -> Vec<f64> {
    let m = geo.m;
    let size = m.pow(rank as u32);
    let mut out = vec![0.0; m * size];
    let mut idx = vec![0usize; rank];
    for e in 0..m {
        for flat in 0..size {
            let mut r = flat;
            for s in (0..rank).rev() {
                idx[s] = r % m;
                r /= m;
            }
            let mut v = t[flat].partial(e);
            for s in 0..rank {
                let orig = idx[s];
                for f in 0..m {
                    idx[s] = f;
                    let other = idx.iter().fold(0, |acc, &i| acc * m + i);
                    v -= geo.gamma[geo.ix().i3(f, e, orig)].v * t[other].v;
                }
                idx[s] = orig;
            }
            out[e * size + flat] = v;
        }
    }
    out
}

impl ChartFrame {
    pub(crate) fn from_geom(space: Space, point: &[f64], geo: &Geom<Dual<f64>>) -> Self {
        let vals = geo.values();
        let flat_g: Vec<Dual<f64>> = geo.g.iter().flatten().cloned().collect();
        let (kahler_form, complex_structure, nabla_kahler) = if geo.has_j() {
            let flat_j: Vec<Dual<f64>> = geo.j.iter().flatten().cloned().collect();
            (
                Some(vals.j.clone()),
                Some(vals.jmix.clone()),
                nabla_covariant(geo, 2, &flat_j),
            )
        } else {
            (None, None, Vec::new())
        };
        Self {
            space,
            point: point.to_vec(),
            metric: vals.g.clone(),
            inverse_metric: vals.ginv.clone(),
            christoffel: vals.gamma.clone(),
            christoffel_derivs: vals.dgamma.clone(),
            riemann: vals.riem.clone(),
            nabla_riemann: nabla_covariant(geo, 4, &geo.riem),
            kahler_form,
            complex_structure,
            nabla_metric: nabla_covariant(geo, 2, &flat_g),
            nabla_kahler,
        }
    }

    pub fn dim(&self) -> usize {
        self.point.len()
    }

    pub fn riemann_at(&self, a: usize, b: usize, c: usize, d: usize) -> f64 {
        self.riemann[Ix(self.dim()).i4(a, b, c, d)]
    }

    /// `Ric_bd = R_ab^a_d = g^ac R_abcd`.
    pub fn ricci(&self) -> Vec<Vec<f64>> {
        let m = self.dim();
        let mut out = vec![vec![0.0; m]; m];
        for (b, row) in out.iter_mut().enumerate() {
            for (d, x) in row.iter_mut().enumerate() {
                for a in 0..m {
                    for c in 0..m {
                        *x += self.inverse_metric[a][c] * self.riemann_at(a, b, c, d);
                    }
                }
            }
        }
        out
    }

    pub fn scalar_curvature(&self) -> f64 {
        let ric = self.ricci();
        let m = self.dim();
        (0..m)
            .flat_map(|b| (0..m).map(move |d| (b, d)))
            .map(|(b, d)| self.inverse_metric[b][d] * ric[b][d])
            .sum()
    }

    /// Largest violation of `R_abcd = −R_bacd = −R_abdc = R_cdab` and of
    /// the first Bianchi identity.
    pub fn riemann_symmetry_defect(&self) -> f64 {
        let m = self.dim();
        let r = |a, b, c, d| self.riemann_at(a, b, c, d);
        let mut worst: f64 = 0.0;
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    for d in 0..m {
                        let x = r(a, b, c, d);
                        worst = worst
                            .max((x + r(b, a, c, d)).abs())
                            .max((x + r(a, b, d, c)).abs())
                            .max((x - r(c, d, a, b)).abs())
                            .max((x + r(b, c, a, d) + r(c, a, b, d)).abs());
                    }
                }
            }
        }
        worst
    }

    /// Largest violation of `g(JX, JY) = g(X, Y)` on coordinate vectors.
    pub fn hermitian_defect(&self) -> Option<f64> {
        let jm = self.complex_structure.as_ref()?;
        let m = self.dim();
        let mut worst: f64 = 0.0;
        for a in 0..m {
            for b in 0..m {
                let mut s = 0.0;
                for c in 0..m {
                    for d in 0..m {
                        s += jm[a][c] * jm[b][d] * self.metric[c][d];
                    }
                }
                worst = worst.max((s - self.metric[a][b]).abs());
            }
        }
        Some(worst)
    }

    /// Largest deviation of `R_abcd` from the model curvature: constant
    /// curvature one on the sphere, the Fubini–Study form on `CP_n`.
    pub fn model_curvature_defect(&self) -> f64 {
        let m = self.dim();
        let g = &self.metric;
        let mut worst: f64 = 0.0;
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    for d in 0..m {
                        let mut model = g[a][c] * g[b][d] - g[b][c] * g[a][d];
                        if let Some(j) = &self.kahler_form {
                            model +=
                                j[a][c] * j[b][d] - j[b][c] * j[a][d] + 2.0 * j[a][b] * j[c][d];
                        }
                        worst = worst.max((self.riemann_at(a, b, c, d) - model).abs());
                    }
                }
            }
        }
        worst
    }
}

fn check_point(space: Space, point: &[f64]) -> Result<(), Error> {
    space.validate()?;
    if point.len() != space.dim() {
        return Err(Error::InvalidParameter(format!(
            "expected {} coordinates, got {}",
            space.dim(),
            point.len()
        )));
    }
    if point.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidParameter("coordinates must be finite".into()));
    }
    Ok(())
}

/// Fubini–Study chart frame on `CP_n` at `point ∈ R^{2n}`.
pub fn fs_chart(n: usize, point: &[f64]) -> Result<ChartFrame, Error> {
    let space = Space::Cpn { n };
    check_point(space, point)?;
    Ok(ChartFrame::from_geom(space, point, &geom_at(space, point)))
}

/// Unit-sphere chart frame on `S^m` at a stereographic `point ∈ R^m`.
pub fn sphere_chart(m: usize, point: &[f64]) -> Result<ChartFrame, Error> {
    let space = Space::Sphere { m };
    check_point(space, point)?;
    Ok(ChartFrame::from_geom(space, point, &geom_at(space, point)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max_abs(v: &[f64]) -> f64 {
        v.iter().fold(0.0, |a, x| a.max(x.abs()))
    }

    #[test]
    fn cp1_is_the_sphere_of_radius_one_half() {
        let f = fs_chart(1, &[0.0, 0.0]).unwrap();
        assert!((f.scalar_curvature() - 8.0).abs() < 1e-10);
        let f = fs_chart(1, &[0.4, -1.3]).unwrap();
        assert!((f.scalar_curvature() - 8.0).abs() < 1e-9);
        // FS on CP_1 is one quarter of the unit-sphere metric
        let s = sphere_chart(2, &[0.4, -1.3]).unwrap();
        assert!((4.0 * f.metric[0][0] - s.metric[0][0]).abs() < 1e-12);
    }

    #[test]
    fn cp2_is_einstein() {
        for p in [[0.0; 4], [0.3, -0.2, 0.7, 0.1]] {
            let f = fs_chart(2, &p).unwrap();
            let ric = f.ricci();
            for a in 0..4 {
                for b in 0..4 {
                    assert!((ric[a][b] - 6.0 * f.metric[a][b]).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn unit_sphere_curvature() {
        let f = sphere_chart(2, &[0.0, 0.0]).unwrap();
        // Gaussian curvature R_0101 / det g
        let k = f.riemann_at(0, 1, 0, 1) / (f.metric[0][0] * f.metric[1][1]);
        assert!((k - 1.0).abs() < 1e-12);
        let f = sphere_chart(3, &[0.2, -0.5, 0.9]).unwrap();
        assert!(f.model_curvature_defect() < 1e-9);
        let a = sphere_chart(2, &[0.1, 0.2]).unwrap().scalar_curvature();
        let b = sphere_chart(2, &[-0.8, 0.6]).unwrap().scalar_curvature();
        assert!((a - 2.0).abs() < 1e-10 && (b - 2.0).abs() < 1e-10);
    }

    #[test]
    fn structural_invariants() {
        for f in [
            fs_chart(1, &[0.5, 0.25]).unwrap(),
            fs_chart(2, &[0.3, -0.6, 0.1, 0.8]).unwrap(),
            fs_chart(3, &[0.1, 0.2, -0.3, 0.4, 0.0, -0.5]).unwrap(),
            sphere_chart(3, &[0.3, 0.3, -0.1]).unwrap(),
        ] {
            assert!(f.riemann_symmetry_defect() < 1e-9);
            assert!(max_abs(&f.nabla_metric) < 1e-9);
            assert!(max_abs(&f.nabla_kahler) < 1e-9);
            assert!(max_abs(&f.nabla_riemann) < 1e-9);
            assert!(f.hermitian_defect().unwrap_or(0.0) < 1e-10);
            assert!(f.model_curvature_defect() < 1e-9);
        }
    }

    #[test]
    fn christoffel_derivatives_match_finite_differences() {
        let p = [0.3, -0.4, 0.2, 0.5];
        let f = fs_chart(2, &p).unwrap();
        let h = 1e-6;
        for e in 0..4 {
            let mut hi = p;
            let mut lo = p;
            hi[e] += h;
            lo[e] -= h;
            let (fh, fl) = (fs_chart(2, &hi).unwrap(), fs_chart(2, &lo).unwrap());
            for i in 0..64 {
                let fd = (fh.christoffel[i] - fl.christoffel[i]) / (2.0 * h);
                assert!((fd - f.christoffel_derivs[e * 64 + i]).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn bad_points_are_rejected() {
        assert!(fs_chart(0, &[]).is_err());
        assert!(fs_chart(1, &[0.0]).is_err());
        assert!(sphere_chart(2, &[f64::NAN, 0.0]).is_err());
    }
}
