//! Connections on bundles built from forms, applied to jets of sections.
//!
//! A section is a list of parts, each a covariant tensor stored flat in
//! `m^rank` components. Every connection here is Levi-Civita on each part
//! plus an algebraic term built from `g`, `J` and `R`.

use serde::Serialize;

use super::chart::{Geom, Ix};
use super::jet::{Dual, Jet2, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Connection {
    /// `[σ_c; μ_cd]` with `∇_b = [∇_b σ_c − μ_bc; ∇_b μ_cd − R_cd^e_b σ_e]`.
    Killing,
    /// `[σ; μ_b]` with `∇_a = [∇_a σ − μ_a; ∇_a μ_b + g_ab σ]`.
    RiemannianTractor,
    /// `[σ_b; μ_bc]` with `∇_a = [∇_a σ_b − μ_ab; ∇_a μ_bc − g_ac σ_b + g_ab σ_c]`.
    WedgeTractor,
    /// `[σ; μ_c; ρ]` with
    /// `∇_b = [∇_b σ − μ_b; ∇_b μ_c + g_bc σ + J_bc ρ; ∇_b ρ − J_b^c μ_c]`.
    KahlerTractor,
}

impl Connection {
    pub fn ranks(self) -> &'static [usize] {
        match self {
            Connection::Killing | Connection::WedgeTractor => &[1, 2],
            Connection::RiemannianTractor => &[0, 1],
            Connection::KahlerTractor => &[0, 1, 0],
        }
    }
}

pub type Parts<F> = Vec<Vec<F>>;

pub(crate) fn zero_parts<F: Scalar>(ranks: &[usize], m: usize) -> Parts<F> {
    ranks
        .iter()
        .map(|&r| vec![F::zero(); m.pow(r as u32)])
        .collect()
}

fn decode(mut flat: usize, m: usize, out: &mut [usize]) {
    for s in (0..out.len()).rev() {
        out[s] = flat % m;
        flat /= m;
    }
}

fn encode(idx: &[usize], m: usize) -> usize {
    idx.iter().fold(0, |acc, &i| acc * m + i)
}

/// `∇_b T = ∂_b T − Σ_slots Γ^e_{b c_s} T_{..e..}`.
fn levi_civita<F: Scalar>(geo: &Geom<F>, b: usize, rank: usize, t: &[F], dt: &[F]) -> Vec<F> {
    let m = geo.m;
    let ix = geo.ix();
    let mut idx = vec![0usize; rank];
    (0..t.len())
        .map(|flat| {
            decode(flat, m, &mut idx);
            let mut v = dt[flat].clone();
            for s in 0..rank {
                let orig = idx[s];
                for e in 0..m {
                    idx[s] = e;
                    v = v.sub(&geo.gamma[ix.i3(e, b, orig)].mul(&t[encode(&idx, m)]));
                }
                idx[s] = orig;
            }
            v
        })
        .collect()
}

/// The algebraic part of `∇_b`.
fn algebraic<F: Scalar>(conn: Connection, geo: &Geom<F>, b: usize, x: &Parts<F>) -> Parts<F> {
    let m = geo.m;
    let ix = geo.ix();
    let g = &geo.g;
    let mut out = zero_parts::<F>(conn.ranks(), m);
    match conn {
        Connection::Killing => {
            for c in 0..m {
                out[0][c] = x[1][b * m + c].neg();
                for d in 0..m {
                    let mut s = F::zero();
                    for e in 0..m {
                        s = s.add(&geo.riem_up[ix.i4(c, d, e, b)].mul(&x[0][e]));
                    }
                    out[1][c * m + d] = s.neg();
                }
            }
        }
        Connection::RiemannianTractor => {
            out[0][0] = x[1][b].neg();
            for c in 0..m {
                out[1][c] = g[b][c].mul(&x[0][0]);
            }
        }
        Connection::WedgeTractor => {
            for c in 0..m {
                out[0][c] = x[1][b * m + c].neg();
                for d in 0..m {
                    out[1][c * m + d] = g[b][c].mul(&x[0][d]).sub(&g[b][d].mul(&x[0][c]));
                }
            }
        }
        Connection::KahlerTractor => {
            out[0][0] = x[1][b].neg();
            let mut s = F::zero();
            for c in 0..m {
                out[1][c] = g[b][c].mul(&x[0][0]).add(&geo.j[b][c].mul(&x[2][0]));
                s = s.add(&geo.jmix[b][c].mul(&x[1][c]));
            }
            out[2][0] = s.neg();
        }
    }
    out
}

/// `∇_b X`, given `X` and `∂_b X`.
pub(crate) fn apply<F: Scalar>(
    conn: Connection,
    geo: &Geom<F>,
    b: usize,
    x: &Parts<F>,
    dx: &Parts<F>,
) -> Parts<F> {
    let alg = algebraic(conn, geo, b, x);
    conn.ranks()
        .iter()
        .enumerate()
        .map(|(p, &r)| {
            let lc = levi_civita(geo, b, r, &x[p], &dx[p]);
            lc.iter().zip(&alg[p]).map(|(u, v)| u.add(v)).collect()
        })
        .collect()
}

/// A section known to second order at a point.
#[derive(Clone, Debug)]
pub struct SectionJet {
    pub parts: Vec<Vec<Jet2<f64>>>,
}

impl SectionJet {
    pub fn values(&self) -> Parts<f64> {
        self.parts
            .iter()
            .map(|p| p.iter().map(|j| j.v).collect())
            .collect()
    }

    /// Values together with their gradients.
    fn duals(&self) -> Parts<Dual<f64>> {
        self.parts
            .iter()
            .map(|p| p.iter().map(|j| Dual::new(j.v, j.g.clone())).collect())
            .collect()
    }

    /// `∂_b` of each component, with its own gradient.
    fn partial_duals(&self, b: usize) -> Parts<Dual<f64>> {
        self.parts
            .iter()
            .map(|p| {
                p.iter()
                    .map(|j| {
                        let dim = j.g.len();
                        Dual::new(j.partial(b), (0..dim).map(|c| j.second(b, c)).collect())
                    })
                    .collect()
            })
            .collect()
    }
}

/// `∇_b Σ` for every `b`, as first-order jets.
pub(crate) fn first_derivatives(
    conn: Connection,
    geo: &Geom<Dual<f64>>,
    s: &SectionJet,
) -> Vec<Parts<Dual<f64>>> {
    let x = s.duals();
    (0..geo.m)
        .map(|b| apply(conn, geo, b, &x, &s.partial_duals(b)))
        .collect()
}

/// `(∇_a∇_b − ∇_b∇_a) Σ`, indexed `[a * m + b]`.
pub(crate) fn curvature(
    conn: Connection,
    geo: &Geom<Dual<f64>>,
    s: &SectionJet,
) -> Vec<Parts<f64>> {
    let m = geo.m;
    let ix = Ix(m);
    let vals = geo.values();
    let first = first_derivatives(conn, geo, s);
    let w: Vec<Parts<f64>> = first
        .iter()
        .map(|p| p.iter().map(|c| c.iter().map(|d| d.v).collect()).collect())
        .collect();
    // ∇_a (∇Σ)_b, including the Levi-Civita term for the slot b
    let second = |a: usize, b: usize| -> Parts<f64> {
        let dw: Parts<f64> = first[b]
            .iter()
            .map(|c| c.iter().map(|d| d.partial(a)).collect())
            .collect();
        let mut out = apply(conn, &vals, a, &w[b], &dw);
        for e in 0..m {
            let gam = vals.gamma[ix.i3(e, a, b)];
            for (o, we) in out.iter_mut().zip(&w[e]) {
                for (x, y) in o.iter_mut().zip(we) {
                    *x -= gam * y;
                }
            }
        }
        out
    };
    let mut result = Vec::with_capacity(m * m);
    for a in 0..m {
        for b in 0..m {
            let (ab, ba) = (second(a, b), second(b, a));
            result.push(
                ab.iter()
                    .zip(&ba)
                    .map(|(p, q)| p.iter().zip(q).map(|(x, y)| x - y).collect())
                    .collect(),
            );
        }
    }
    result
}

/// Curvature of the Killing connection predicted from `R` and `∇R`:
/// `[0; 2R_ab^e_[c μ_d]e + 2R_cd^e_[a μ_b]e − (∇^e R_abcd) σ_e]`.
pub(crate) fn killing_curvature_formula(
    geo: &Geom<f64>,
    nabla_riem: &[f64],
    x: &Parts<f64>,
) -> Vec<Parts<f64>> {
    let m = geo.m;
    let ix = Ix(m);
    let ru = |a, b, c, d| geo.riem_up[ix.i4(a, b, c, d)];
    let mu = |c: usize, d: usize| x[1][c * m + d];
    let mut out = Vec::with_capacity(m * m);
    for a in 0..m {
        for b in 0..m {
            let mut p = zero_parts::<f64>(&[1, 2], m);
            for c in 0..m {
                for d in 0..m {
                    let mut s = 0.0;
                    for e in 0..m {
                        s += ru(a, b, e, c) * mu(d, e) - ru(a, b, e, d) * mu(c, e)
                            + ru(c, d, e, a) * mu(b, e)
                            - ru(c, d, e, b) * mu(a, e);
                        for f in 0..m {
                            s -= geo.ginv[e][f]
                                * nabla_riem[f * m.pow(4) + ix.i4(a, b, c, d)]
                                * x[0][e];
                        }
                    }
                    p[1][c * m + d] = s;
                }
            }
            out.push(p);
        }
    }
    out
}

/// Curvature of the Kähler tractor connection on `CP_n`:
/// `2J_ab [ρ; J_c^d μ_d; −σ]`.
pub(crate) fn kahler_tractor_curvature_formula(geo: &Geom<f64>, x: &Parts<f64>) -> Vec<Parts<f64>> {
    let m = geo.m;
    let mut out = Vec::with_capacity(m * m);
    for a in 0..m {
        for b in 0..m {
            let f = 2.0 * geo.j[a][b];
            let mu: Vec<f64> = (0..m)
                .map(|c| f * (0..m).map(|d| geo.jmix[c][d] * x[1][d]).sum::<f64>())
                .collect();
            out.push(vec![vec![f * x[2][0]], mu, vec![-f * x[0][0]]]);
        }
    }
    out
}

/// Curvature of the Riemannian tractor connection:
/// `[0; g_bc μ_a − g_ac μ_b − R_ab^d_c μ_d]`.
pub(crate) fn riemannian_tractor_curvature_formula(
    geo: &Geom<f64>,
    x: &Parts<f64>,
) -> Vec<Parts<f64>> {
    let m = geo.m;
    let ix = Ix(m);
    let mut out = Vec::with_capacity(m * m);
    for a in 0..m {
        for b in 0..m {
            let mu: Vec<f64> = (0..m)
                .map(|c| {
                    let mut s = geo.g[b][c] * x[1][a] - geo.g[a][c] * x[1][b];
                    for d in 0..m {
                        s -= geo.riem_up[ix.i4(a, b, d, c)] * x[1][d];
                    }
                    s
                })
                .collect();
            out.push(vec![vec![0.0], mu]);
        }
    }
    out
}
