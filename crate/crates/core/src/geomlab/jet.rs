//! Truncated forward-mode jets.
//!
//! Gradients and Hessians are stored densely; an empty vector stands for
//! zero, so constants need no dimension.

use std::fmt::Debug;

pub trait Scalar: Clone + Debug {
    fn from_f64(c: f64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn scale(&self, c: f64) -> Self;
    fn value(&self) -> f64;

    fn neg(&self) -> Self {
        self.scale(-1.0)
    }

    fn zero() -> Self {
        Self::from_f64(0.0)
    }
}

impl Scalar for f64 {
    fn from_f64(c: f64) -> Self {
        c
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn scale(&self, c: f64) -> Self {
        self * c
    }
    fn value(&self) -> f64 {
        *self
    }
}

fn zip_with<S: Scalar>(
    a: &[S],
    b: &[S],
    f: impl Fn(&S, &S) -> S,
    fa: impl Fn(&S) -> S,
    fb: impl Fn(&S) -> S,
) -> Vec<S> {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => Vec::new(),
        (false, true) => a.iter().map(fa).collect(),
        (true, false) => b.iter().map(fb).collect(),
        (false, false) => a.iter().zip(b).map(|(x, y)| f(x, y)).collect(),
    }
}

fn scaled<S: Scalar>(v: &[S], c: &S) -> Vec<S> {
    v.iter().map(|x| x.mul(c)).collect()
}

/// First-order jet: value and gradient.
#[derive(Clone, Debug, PartialEq)]
pub struct Dual<S> {
    pub v: S,
    pub g: Vec<S>,
}

impl<S: Scalar> Dual<S> {
    pub fn new(v: S, g: Vec<S>) -> Self {
        Self { v, g }
    }

    /// The coordinate function `x_i` in `dim` variables at value `v`.
    pub fn variable(v: S, i: usize, dim: usize) -> Self {
        let mut g = vec![S::zero(); dim];
        g[i] = S::from_f64(1.0);
        Self { v, g }
    }

    pub fn partial(&self, i: usize) -> S {
        self.g.get(i).cloned().unwrap_or_else(S::zero)
    }
}

impl<S: Scalar> Scalar for Dual<S> {
    fn from_f64(c: f64) -> Self {
        Self {
            v: S::from_f64(c),
            g: Vec::new(),
        }
    }
    fn add(&self, o: &Self) -> Self {
        Self {
            v: self.v.add(&o.v),
            g: zip_with(&self.g, &o.g, |x, y| x.add(y), |x| x.clone(), |y| y.clone()),
        }
    }
    fn sub(&self, o: &Self) -> Self {
        Self {
            v: self.v.sub(&o.v),
            g: zip_with(&self.g, &o.g, |x, y| x.sub(y), |x| x.clone(), |y| y.neg()),
        }
    }
    fn mul(&self, o: &Self) -> Self {
        let (a, b) = (&self.v, &o.v);
        Self {
            v: a.mul(b),
            g: zip_with(
                &self.g,
                &o.g,
                |x, y| x.mul(b).add(&a.mul(y)),
                |x| x.mul(b),
                |y| a.mul(y),
            ),
        }
    }
    fn div(&self, o: &Self) -> Self {
        let q = self.v.div(&o.v);
        Self {
            g: zip_with(
                &self.g,
                &o.g,
                |x, y| x.sub(&q.mul(y)).div(&o.v),
                |x| x.div(&o.v),
                |y| q.mul(y).div(&o.v).neg(),
            ),
            v: q,
        }
    }
    fn scale(&self, c: f64) -> Self {
        Self {
            v: self.v.scale(c),
            g: self.g.iter().map(|x| x.scale(c)).collect(),
        }
    }
    fn value(&self) -> f64 {
        self.v.value()
    }
}

/// Second-order jet: value, gradient and Hessian (row-major, `dim × dim`).
#[derive(Clone, Debug, PartialEq)]
pub struct Jet2<S> {
    pub v: S,
    pub g: Vec<S>,
    pub h: Vec<S>,
}

impl<S: Scalar> Jet2<S> {
    pub fn variable(v: S, i: usize, dim: usize) -> Self {
        let mut g = vec![S::zero(); dim];
        g[i] = S::from_f64(1.0);
        Self {
            v,
            g,
            h: Vec::new(),
        }
    }

    pub fn partial(&self, i: usize) -> S {
        self.g.get(i).cloned().unwrap_or_else(S::zero)
    }

    pub fn second(&self, i: usize, j: usize) -> S {
        let dim = self.g.len();
        if self.h.is_empty() {
            S::zero()
        } else {
            self.h[i * dim + j].clone()
        }
    }

    fn outer(a: &[S], b: &[S]) -> Vec<S> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = Vec::with_capacity(a.len() * b.len());
        for x in a {
            for y in b {
                out.push(x.mul(y));
            }
        }
        out
    }

    fn add_vec(a: Vec<S>, b: Vec<S>) -> Vec<S> {
        zip_with(&a, &b, |x, y| x.add(y), |x| x.clone(), |y| y.clone())
    }

    fn recip(&self) -> Self {
        let r = S::from_f64(1.0).div(&self.v);
        let r2 = r.mul(&r);
        let g: Vec<S> = self.g.iter().map(|x| x.mul(&r2).neg()).collect();
        let r3 = r2.mul(&r).scale(2.0);
        let h = Self::add_vec(
            self.h.iter().map(|x| x.mul(&r2).neg()).collect(),
            scaled(&Self::outer(&self.g, &self.g), &r3),
        );
        Self { v: r, g, h }
    }
}

impl<S: Scalar> Scalar for Jet2<S> {
    fn from_f64(c: f64) -> Self {
        Self {
            v: S::from_f64(c),
            g: Vec::new(),
            h: Vec::new(),
        }
    }
    fn add(&self, o: &Self) -> Self {
        Self {
            v: self.v.add(&o.v),
            g: Self::add_vec(self.g.clone(), o.g.clone()),
            h: Self::add_vec(self.h.clone(), o.h.clone()),
        }
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        let (a, b) = (&self.v, &o.v);
        let g = Self::add_vec(scaled(&self.g, b), scaled(&o.g, a));
        let mut h = Self::add_vec(scaled(&self.h, b), scaled(&o.h, a));
        h = Self::add_vec(h, Self::outer(&self.g, &o.g));
        h = Self::add_vec(h, Self::outer(&o.g, &self.g));
        Self { v: a.mul(b), g, h }
    }
    fn div(&self, o: &Self) -> Self {
        self.mul(&o.recip())
    }
    fn scale(&self, c: f64) -> Self {
        Self {
            v: self.v.scale(c),
            g: self.g.iter().map(|x| x.scale(c)).collect(),
            h: self.h.iter().map(|x| x.scale(c)).collect(),
        }
    }
    fn value(&self) -> f64 {
        self.v.value()
    }
}
