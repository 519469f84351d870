//! Stored energy of the two-phase Hadamard material.
//!
//! `W(F) = mu/2 |F|^2 + h(det F)` on `det F > 0`, with the equal-depth
//! quartic double well `h(d) = (d - d1)^2 (d - d2)^2`. Everything else in
//! the crate is built from the values, stresses and excess quantities
//! defined here.

use crate::{Error, Result};

/// Shear modulus and the two well positions of the double well.
///
/// `mu = 0` is allowed and plays the role of the liquid limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaterialParams {
    mu: f64,
    d1: f64,
    d2: f64,
}

impl MaterialParams {
    pub fn new(mu: f64, d1: f64, d2: f64) -> Result<Self> {
        if !mu.is_finite() || mu < 0.0 {
            return Err(Error::InvalidParams(format!("mu = {mu} must be finite and >= 0")));
        }
        if !d1.is_finite() || !d2.is_finite() || d1 <= 0.0 || d2 <= d1 {
            return Err(Error::InvalidParams(format!(
                "wells must satisfy 0 < d1 < d2, got d1 = {d1}, d2 = {d2}"
            )));
        }
        Ok(Self { mu, d1, d2 })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn d1(&self) -> f64 {
        self.d1
    }

    pub fn d2(&self) -> f64 {
        self.d2
    }

    /// Same wells, different shear modulus.
    pub fn with_mu(&self, mu: f64) -> Result<Self> {
        Self::new(mu, self.d1, self.d2)
    }

    // The quartic and its derivatives as plain polynomials on all of R.
    // The public operations below restrict the domain to d > 0; the
    // polyconvexity algebra needs the polynomial itself.
    pub(crate) fn well(&self, d: f64) -> f64 {
        let a = d - self.d1;
        let b = d - self.d2;
        a * a * b * b
    }

    pub(crate) fn well_d(&self, d: f64) -> f64 {
        let a = d - self.d1;
        let b = d - self.d2;
        2.0 * a * b * (a + b)
    }

    pub(crate) fn well_dd(&self, d: f64) -> f64 {
        let a = d - self.d1;
        let b = d - self.d2;
        2.0 * (b * (a + b) + a * (a + b) + 2.0 * a * b)
    }
}

/// 2x2 matrix in row-major value form.
///
/// Deformation gradients, test increments, stresses and cofactors are all
/// carried by this one type; diagonal-frame results use [`DiagonalStrain`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2([[f64; 2]; 2]);

impl Matrix2 {
    pub const fn new(rows: [[f64; 2]; 2]) -> Self {
        Self(rows)
    }

    pub const fn diag(a: f64, b: f64) -> Self {
        Self([[a, 0.0], [0.0, b]])
    }

    pub const fn identity() -> Self {
        Self::diag(1.0, 1.0)
    }

    pub const fn zero() -> Self {
        Self([[0.0; 2]; 2])
    }

    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self([[c, -s], [s, c]])
    }

    /// Rank-one product `a (x) n`.
    pub fn outer(a: [f64; 2], n: [f64; 2]) -> Self {
        Self([[a[0] * n[0], a[0] * n[1]], [a[1] * n[0], a[1] * n[1]]])
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.0[i][j]
    }

    pub fn det(&self) -> f64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    /// Cofactor matrix, i.e. `d(det F)/dF`; satisfies `F cof(F)^T = det F * I`.
    pub fn cof(&self) -> Self {
        Self([[self.0[1][1], -self.0[1][0]], [-self.0[0][1], self.0[0][0]]])
    }

    pub fn transpose(&self) -> Self {
        Self([[self.0[0][0], self.0[1][0]], [self.0[0][1], self.0[1][1]]])
    }

    /// Squared Frobenius norm `|F|^2`.
    pub fn norm2(&self) -> f64 {
        self.inner(self)
    }

    /// Frobenius inner product `<A, B> = tr(A B^T)`.
    pub fn inner(&self, other: &Self) -> f64 {
        let mut s = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                s += self.0[i][j] * other.0[i][j];
            }
        }
        s
    }

    pub fn scale(&self, t: f64) -> Self {
        Self([
            [t * self.0[0][0], t * self.0[0][1]],
            [t * self.0[1][0], t * self.0[1][1]],
        ])
    }

    pub fn apply(&self, v: [f64; 2]) -> [f64; 2] {
        [
            self.0[0][0] * v[0] + self.0[0][1] * v[1],
            self.0[1][0] * v[0] + self.0[1][1] * v[1],
        ]
    }
}

impl std::ops::Add for Matrix2 {
    type Output = Matrix2;
    fn add(self, rhs: Matrix2) -> Matrix2 {
        Matrix2([
            [self.0[0][0] + rhs.0[0][0], self.0[0][1] + rhs.0[0][1]],
            [self.0[1][0] + rhs.0[1][0], self.0[1][1] + rhs.0[1][1]],
        ])
    }
}

impl std::ops::Sub for Matrix2 {
    type Output = Matrix2;
    fn sub(self, rhs: Matrix2) -> Matrix2 {
        Matrix2([
            [self.0[0][0] - rhs.0[0][0], self.0[0][1] - rhs.0[0][1]],
            [self.0[1][0] - rhs.0[1][0], self.0[1][1] - rhs.0[1][1]],
        ])
    }
}

impl std::ops::Mul for Matrix2 {
    type Output = Matrix2;
    fn mul(self, rhs: Matrix2) -> Matrix2 {
        let mut out = [[0.0; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.0[i][0] * rhs.0[0][j] + self.0[i][1] * rhs.0[1][j];
            }
        }
        Matrix2(out)
    }
}

/// Principal stretches in the shared diagonal frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagonalStrain {
    pub eps1: f64,
    pub eps2: f64,
}

impl DiagonalStrain {
    pub fn new(eps1: f64, eps2: f64) -> Result<Self> {
        if eps1 > 0.0 && eps2 > 0.0 {
            Ok(Self { eps1, eps2 })
        } else {
            Err(Error::Domain(format!(
                "principal stretches must be positive, got ({eps1}, {eps2})"
            )))
        }
    }

    pub fn swap(&self) -> Self {
        Self { eps1: self.eps2, eps2: self.eps1 }
    }

    pub fn to_matrix(&self) -> Matrix2 {
        Matrix2::diag(self.eps1, self.eps2)
    }
}

fn check_positive(d: f64, what: &str) -> Result<()> {
    if d > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} = {d} must be positive")))
    }
}

/// Double-well value `h(d) = (d - d1)^2 (d - d2)^2`.
pub fn h_value(d: f64, p: &MaterialParams) -> Result<f64> {
    check_positive(d, "d")?;
    Ok(p.well(d))
}

/// First derivative `h'(d) = 2 (d - d1)(d - d2)(2d - d1 - d2)`.
pub fn h_prime(d: f64, p: &MaterialParams) -> Result<f64> {
    check_positive(d, "d")?;
    Ok(p.well_d(d))
}

/// Second derivative of the quartic well.
pub fn h_second(d: f64, p: &MaterialParams) -> Result<f64> {
    check_positive(d, "d")?;
    Ok(p.well_dd(d))
}

/// Stored energy `W(F) = mu/2 |F|^2 + h(det F)`.
pub fn energy(f: &Matrix2, p: &MaterialParams) -> Result<f64> {
    let d = f.det();
    check_positive(d, "det F")?;
    Ok(0.5 * p.mu() * f.norm2() + p.well(d))
}

/// Piola stress `P(F) = W_F(F) = mu F + h'(det F) cof F`.
pub fn piola(f: &Matrix2, p: &MaterialParams) -> Result<Matrix2> {
    let d = f.det();
    check_positive(d, "det F")?;
    Ok(f.scale(p.mu()) + f.cof().scale(p.well_d(d)))
}

/// Eshelby tensor `P*(F) = W(F) I - F^T P(F)`.
pub fn eshelby(f: &Matrix2, p: &MaterialParams) -> Result<Matrix2> {
    let w = energy(f, p)?;
    let pf = piola(f, p)?;
    Ok(Matrix2::identity().scale(w) - f.transpose() * pf)
}

/// Weierstrass excess `W^o(F, H) = W(F + H) - W(F) - <W_F(F), H>`.
pub fn excess(f: &Matrix2, h: &Matrix2, p: &MaterialParams) -> Result<f64> {
    let fh = *f + *h;
    let d = fh.det();
    check_positive(d, "det(F + H)")?;
    let w0 = energy(f, p)?;
    let pf = piola(f, p)?;
    Ok(energy(&fh, p)? - w0 - pf.inner(h))
}

/// Interval on which the quartic differs from its convex hull.
///
/// For the equal-depth well the common-tangent interval is exactly
/// `[d1, d2]`.
pub fn h_convexification_interval(p: &MaterialParams) -> (f64, f64) {
    (p.d1(), p.d2())
}
