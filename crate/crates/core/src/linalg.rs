//! Dense complex linear algebra sized for desk-scale registers.
//!
//! Everything here works on row-major `Vec<Complex64>` buffers. Dimensions
//! stay small (at most a few thousand amplitudes), so simple O(d^3)
//! algorithms are the right tool. The eigenphase routine for unitaries is
//! built on a cyclic Jacobi diagonalization of the commuting Hermitian pair
//! (V + V^dag)/2 and (V - V^dag)/(2i), which keeps the crate free of
//! external LAPACK-style dependencies and behaves deterministically.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat {
    pub dim: usize,
    pub a: Vec<C64>,
}

impl CMat {
    pub fn zeros(dim: usize) -> Self {
        CMat {
            dim,
            a: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = CMat::zeros(dim);
        for i in 0..dim {
            m.a[i * dim + i] = ONE;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let dim = rows.len();
        for r in rows {
            if r.len() != dim {
                return Err(Error::DimensionMismatch {
                    context: "CMat::from_rows",
                    expected: dim,
                    got: r.len(),
                });
            }
        }
        Ok(CMat {
            dim,
            a: rows.iter().flat_map(|r| r.iter().copied()).collect(),
        })
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> C64 {
        self.a[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.a[i * self.dim + j] = v;
    }

    pub fn dagger(&self) -> CMat {
        let d = self.dim;
        let mut out = CMat::zeros(d);
        for i in 0..d {
            for j in 0..d {
                out.a[j * d + i] = self.a[i * d + j].conj();
            }
        }
        out
    }

    pub fn mul(&self, rhs: &CMat) -> CMat {
        assert_eq!(self.dim, rhs.dim, "CMat::mul dimension mismatch");
        let d = self.dim;
        let mut out = CMat::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let aik = self.a[i * d + k];
                if aik == ZERO {
                    continue;
                }
                let row = &rhs.a[k * d..(k + 1) * d];
                let orow = &mut out.a[i * d..(i + 1) * d];
                for j in 0..d {
                    orow[j] += aik * row[j];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.dim, v.len(), "CMat::mul_vec dimension mismatch");
        let d = self.dim;
        let mut out = vec![ZERO; d];
        for i in 0..d {
            let mut acc = ZERO;
            let row = &self.a[i * d..(i + 1) * d];
            for j in 0..d {
                acc += row[j] * v[j];
            }
            out[i] = acc;
        }
        out
    }

    /// Max absolute entry of (self * self^dag - I); 0 for a perfect unitary.
    pub fn unitarity_defect(&self) -> f64 {
        let d = self.dim;
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                let mut acc = ZERO;
                for k in 0..d {
                    acc += self.a[i * d + k] * self.a[j * d + k].conj();
                }
                let target = if i == j { ONE } else { ZERO };
                worst = worst.max((acc - target).norm());
            }
        }
        worst
    }

    pub fn max_abs_diff(&self, other: &CMat) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.a
            .iter()
            .zip(other.a.iter())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.at(i, i)).sum()
    }
}

/// Complex inner product <a|b> with the left argument conjugated.
pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    assert_eq!(a.len(), b.len(), "inner product dimension mismatch");
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm2(v: &[C64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum()
}

pub fn normalize(v: &mut [C64]) -> Result<()> {
    let n = norm2(v).sqrt();
    if n < 1e-300 {
        return Err(Error::ZeroVector);
    }
    for x in v.iter_mut() {
        *x /= n;
    }
    Ok(())
}

/// Eigen-decomposition of a complex Hermitian matrix via cyclic Jacobi
/// rotations. Returns eigenvalues (unsorted) and the unitary whose columns
/// are the matching eigenvectors.
pub fn hermitian_eigen(m: &CMat) -> (Vec<f64>, CMat) {
    let d = m.dim;
    let mut a = m.clone();
    let mut q = CMat::identity(d);
    if d <= 1 {
        let vals = if d == 1 { vec![a.at(0, 0).re] } else { vec![] };
        return (vals, q);
    }
    let scale: f64 = a.a.iter().map(|x| x.norm_sqr()).sum::<f64>().max(1e-300);
    let stop = scale * 1e-28;
    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..d {
            for qq in (p + 1)..d {
                off += a.at(p, qq).norm_sqr();
            }
        }
        if off < stop {
            break;
        }
        for p in 0..d {
            for r in (p + 1)..d {
                let apr = a.at(p, r);
                let beta = apr.norm();
                if beta < 1e-300 {
                    continue;
                }
                let phi = apr.arg();
                let app = a.at(p, p).re;
                let arr = a.at(r, r).re;
                let theta = 0.5 * (2.0 * beta).atan2(app - arr);
                let (s, c) = theta.sin_cos();
                let eip = C64::from_polar(1.0, phi);
                let ein = eip.conj();
                // A <- U^dag A U with U = I except in rows/cols {p, r}:
                // U[p][p]=c, U[p][r]=-s, U[r][p]=s e^{-i phi}, U[r][r]=c e^{-i phi}.
                for k in 0..d {
                    let akp = a.at(k, p);
                    let akr = a.at(k, r);
                    a.set(k, p, c * akp + s * ein * akr);
                    a.set(k, r, -s * akp + c * ein * akr);
                }
                for k in 0..d {
                    let apk = a.at(p, k);
                    let ark = a.at(r, k);
                    a.set(p, k, c * apk + s * eip * ark);
                    a.set(r, k, -s * apk + c * eip * ark);
                }
                for k in 0..d {
                    let qkp = q.at(k, p);
                    let qkr = q.at(k, r);
                    q.set(k, p, c * qkp + s * ein * qkr);
                    q.set(k, r, -s * qkp + c * ein * qkr);
                }
            }
        }
    }
    let vals = (0..d).map(|i| a.at(i, i).re).collect();
    (vals, q)
}

/// Eigenphases (in radians, range (-pi, pi]) of a unitary matrix, with
/// multiplicity. Computed by simultaneously diagonalizing the commuting
/// Hermitian pair H = (V + V^dag)/2 and S = (V - V^dag)/(2i): within each
/// eigenspace of H, the restriction of S is Hermitian and its eigenvalues
/// complete the (cos t, sin t) pairs.
pub fn eigenphases_unitary(v: &CMat) -> Vec<f64> {
    let d = v.dim;
    if d == 0 {
        return vec![];
    }
    let vd = v.dagger();
    let mut h = CMat::zeros(d);
    let mut s = CMat::zeros(d);
    for i in 0..d * d {
        h.a[i] = (v.a[i] + vd.a[i]) * 0.5;
        s.a[i] = (v.a[i] - vd.a[i]) * C64::new(0.0, -0.5);
    }
    let (hvals, q) = hermitian_eigen(&h);
    // Sort indices by H eigenvalue and walk clusters of (numerically) equal ones.
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| hvals[i].partial_cmp(&hvals[j]).unwrap());
    let mut phases = Vec::with_capacity(d);
    let cluster_tol = 1e-8;
    let mut start = 0;
    while start < d {
        let mut end = start + 1;
        while end < d && (hvals[order[end]] - hvals[order[start]]).abs() < cluster_tol {
            end += 1;
        }
        let idxs = &order[start..end];
        let g = idxs.len();
        let hmean =
            idxs.iter().map(|&i| hvals[i]).sum::<f64>() / g as f64;
        if g == 1 {
            let col = column(&q, idxs[0]);
            let sv = s.mul_vec(&col);
            let sval = inner(&col, &sv).re;
            phases.push(sval.atan2(hmean));
        } else {
            // Project S onto the cluster span and diagonalize the small block.
            let cols: Vec<Vec<C64>> = idxs.iter().map(|&i| column(&q, i)).collect();
            let mut block = CMat::zeros(g);
            for (bi, ci) in cols.iter().enumerate() {
                let sci = s.mul_vec(ci);
                for (bj, cj) in cols.iter().enumerate() {
                    block.set(bj, bi, inner(cj, &sci));
                }
            }
            // Hermitize against roundoff.
            let bd = block.dagger();
            for i in 0..g * g {
                block.a[i] = (block.a[i] + bd.a[i]) * 0.5;
            }
            let (svals, _) = hermitian_eigen(&block);
            for sval in svals {
                phases.push(sval.atan2(hmean));
            }
        }
        start = end;
    }
    phases
}

fn column(m: &CMat, j: usize) -> Vec<C64> {
    (0..m.dim).map(|i| m.at(i, j)).collect()
}

/// min over unit states |psi> of |<psi| V |psi>|^2 for a unitary V.
///
/// The attainable values <psi|V|psi> fill the convex hull of the
/// eigenvalues, which all lie on the unit circle. The minimum distance from
/// the origin to that hull is cos(delta/2) when the eigenphases fit in an
/// arc of width delta < pi, and 0 otherwise.
pub fn min_expectation_fidelity(v: &CMat) -> f64 {
    if v.dim == 0 {
        return 1.0;
    }
    let mut phases = eigenphases_unitary(v);
    phases.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let d = phases.len();
    if d == 1 {
        return 1.0;
    }
    let mut max_gap = 0.0f64;
    for i in 1..d {
        max_gap = max_gap.max(phases[i] - phases[i - 1]);
    }
    max_gap = max_gap.max(2.0 * std::f64::consts::PI - (phases[d - 1] - phases[0]));
    let arc = 2.0 * std::f64::consts::PI - max_gap;
    if arc >= std::f64::consts::PI {
        0.0
    } else {
        let c = (arc / 2.0).cos();
        c * c
    }
}

/// Kronecker product (left factor on the most significant qubits).
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    let da = a.dim;
    let db = b.dim;
    let d = da * db;
    let mut out = CMat::zeros(d);
    for i in 0..da {
        for j in 0..da {
            let aij = a.at(i, j);
            if aij == ZERO {
                continue;
            }
            for k in 0..db {
                for l in 0..db {
                    out.set(i * db + k, j * db + l, aij * b.at(k, l));
                }
            }
        }
    }
    out
}
