//! Dense complex vectors and matrices.
//!
//! Everything in this crate works over ℂⁿ for small n (quantum protocols on a
//! handful of qubits), so the representation is a plain `Vec<Complex64>` with
//! tolerance-aware comparisons. Equality of states is entrywise within ε; it is
//! deliberately *not* equality up to a global phase, because states are vectors,
//! not rays.

use num_complex::Complex64;
use std::fmt;

pub type C64 = Complex64;

/// Default tolerance for all numeric decisions (rank, membership, equality).
pub const DEFAULT_EPSILON: f64 = 1e-9;

pub const ONE: C64 = C64::new(1.0, 0.0);
pub const ZERO: C64 = C64::new(0.0, 0.0);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("dimension mismatch: expected {expected}, got {got}")]
pub struct DimensionMismatch {
    pub expected: usize,
    pub got: usize,
}

fn check_dim(expected: usize, got: usize) -> Result<(), DimensionMismatch> {
    if expected == got {
        Ok(())
    } else {
        Err(DimensionMismatch { expected, got })
    }
}

/// A vector in ℂⁿ.
#[derive(Debug, Clone, PartialEq)]
pub struct CVector {
    entries: Vec<C64>,
}

impl CVector {
    pub fn new(entries: Vec<C64>) -> Self {
        assert!(!entries.is_empty(), "vectors have positive dimension");
        CVector { entries }
    }

    pub fn zero(dim: usize) -> Self {
        CVector::new(vec![ZERO; dim])
    }

    /// Standard basis vector e_k.
    pub fn basis(dim: usize, k: usize) -> Self {
        assert!(k < dim);
        let mut entries = vec![ZERO; dim];
        entries[k] = ONE;
        CVector::new(entries)
    }

    /// Computational basis state |bits⟩ in dimension 2^(bits.len()),
    /// e.g. `ket("01")` is e₁ in ℂ⁴.
    pub fn ket(bits: &str) -> Self {
        let n = bits.len();
        assert!(n > 0, "ket needs at least one bit");
        let mut index = 0usize;
        for b in bits.chars() {
            index = index * 2
                + match b {
                    '0' => 0,
                    '1' => 1,
                    _ => panic!("ket takes a bit string, got {bits:?}"),
                };
        }
        CVector::basis(1 << n, index)
    }

    pub fn from_reals(reals: &[f64]) -> Self {
        CVector::new(reals.iter().map(|&r| C64::new(r, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> C64 {
        self.entries[i]
    }

    pub fn add(&self, other: &CVector) -> Result<CVector, DimensionMismatch> {
        check_dim(self.dim(), other.dim())?;
        Ok(CVector::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    pub fn sub(&self, other: &CVector) -> Result<CVector, DimensionMismatch> {
        check_dim(self.dim(), other.dim())?;
        Ok(CVector::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        ))
    }

    pub fn scale(&self, a: C64) -> CVector {
        CVector::new(self.entries.iter().map(|x| a * x).collect())
    }

    /// Inner product ⟨self, other⟩, conjugate-linear in the first argument.
    pub fn inner(&self, other: &CVector) -> Result<C64, DimensionMismatch> {
        check_dim(self.dim(), other.dim())?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.entries.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn normalized(&self) -> Option<CVector> {
        let n = self.norm();
        if n == 0.0 {
            None
        } else {
            Some(self.scale(C64::new(1.0 / n, 0.0)))
        }
    }

    /// Kronecker product, used to assemble multi-qubit states.
    pub fn kron(&self, other: &CVector) -> CVector {
        let mut entries = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.entries {
            for b in &other.entries {
                entries.push(a * b);
            }
        }
        CVector::new(entries)
    }

    /// Entrywise equality within ε.
    pub fn approx_eq(&self, other: &CVector, eps: f64) -> bool {
        self.dim() == other.dim()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| (a - b).norm() <= eps)
    }

    pub fn is_zero(&self, eps: f64) -> bool {
        self.entries.iter().all(|a| a.norm() <= eps)
    }
}

impl fmt::Display for CVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", fmt_complex(*e))?;
        }
        write!(f, ")")
    }
}

/// A square matrix over ℂ, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    entries: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0);
        CMatrix {
            dim,
            entries: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = CMatrix::zeros(dim);
        for i in 0..dim {
            m.set(i, i, ONE);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<C64>>) -> Self {
        let dim = rows.len();
        assert!(dim > 0 && rows.iter().all(|r| r.len() == dim), "matrix must be square");
        CMatrix {
            dim,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_rows_real(rows: &[&[f64]]) -> Self {
        CMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn add(&self, other: &CMatrix) -> Result<CMatrix, DimensionMismatch> {
        check_dim(self.dim, other.dim)?;
        Ok(CMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &CMatrix) -> Result<CMatrix, DimensionMismatch> {
        check_dim(self.dim, other.dim)?;
        Ok(CMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, a: C64) -> CMatrix {
        CMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|x| a * x).collect(),
        }
    }

    pub fn mul(&self, other: &CMatrix) -> Result<CMatrix, DimensionMismatch> {
        check_dim(self.dim, other.dim)?;
        let n = self.dim;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &CVector) -> Result<CVector, DimensionMismatch> {
        check_dim(self.dim, v.dim())?;
        let n = self.dim;
        let mut out = vec![ZERO; n];
        for i in 0..n {
            let mut acc = ZERO;
            for j in 0..n {
                acc += self.get(i, j) * v.get(j);
            }
            out[i] = acc;
        }
        Ok(CVector::new(out))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMatrix {
        let n = self.dim;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Frobenius distance to another matrix.
    pub fn distance(&self, other: &CMatrix) -> Result<f64, DimensionMismatch> {
        Ok(self.sub(other)?.frobenius_norm())
    }

    /// Frobenius-norm equality within ε.
    pub fn approx_eq(&self, other: &CMatrix, eps: f64) -> bool {
        self.dim == other.dim && self.sub(other).unwrap().frobenius_norm() <= eps
    }

    /// Kronecker (tensor) product.
    pub fn kron(&self, other: &CMatrix) -> CMatrix {
        let n = self.dim;
        let m = other.dim;
        let mut out = CMatrix::zeros(n * m);
        for i in 0..n {
            for j in 0..n {
                let a = self.get(i, j);
                if a == ZERO {
                    continue;
                }
                for k in 0..m {
                    for l in 0..m {
                        out.set(i * m + k, j * m + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    pub fn is_hermitian(&self, eps: f64) -> bool {
        self.approx_eq(&self.adjoint(), eps)
    }

    /// True iff U†U and UU† are within ε of the identity (Frobenius norm).
    pub fn is_unitary(&self, eps: f64) -> bool {
        let id = CMatrix::identity(self.dim);
        self.adjoint().mul(self).unwrap().approx_eq(&id, eps)
            && self.mul(&self.adjoint()).unwrap().approx_eq(&id, eps)
    }

    pub fn column(&self, j: usize) -> CVector {
        CVector::new((0..self.dim).map(|i| self.get(i, j)).collect())
    }
}

impl fmt::Display for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.dim {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.dim {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", fmt_complex(self.get(i, j)))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Formats a complex scalar the way the surface syntax writes it, so the
/// printed form parses back to the same value.
pub fn fmt_complex(c: C64) -> String {
    if c.im == 0.0 {
        fmt_f64(c.re)
    } else if c.re == 0.0 {
        format!("{}i", fmt_f64(c.im))
    } else if c.im < 0.0 {
        format!("{} - {}i", fmt_f64(c.re), fmt_f64(-c.im))
    } else {
        format!("{} + {}i", fmt_f64(c.re), fmt_f64(c.im))
    }
}

/// Shortest decimal that round-trips to the same f64.
pub fn fmt_f64(x: f64) -> String {
    let s = format!("{x}");
    // keep negative zero out of canonical output
    if s == "-0" {
        "0".to_string()
    } else {
        s
    }
}

/// Rank-revealing orthonormalization with column pivoting.
///
/// Returns an orthonormal basis of the span of `vectors`. A residual is
/// considered zero when its norm drops below ε·max(1, largest input norm); this
/// is the single rank-decision rule used everywhere in the crate. Each selected
/// vector is orthogonalized against the basis twice, which keeps the basis
/// orthonormal to machine precision even for nearly dependent inputs.
pub fn orthonormalize(vectors: &[CVector], eps: f64) -> Vec<CVector> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let dim = vectors[0].dim();
    debug_assert!(vectors.iter().all(|v| v.dim() == dim));

    let mut work: Vec<CVector> = vectors.to_vec();
    let max_norm = work.iter().map(|v| v.norm()).fold(0.0_f64, f64::max);
    let tol = eps * max_norm.max(1.0);
    let mut basis: Vec<CVector> = Vec::new();

    while basis.len() < dim {
        // pivot: remaining vector with the largest residual norm
        let Some((best, norm)) = work
            .iter()
            .enumerate()
            .map(|(i, v)| (i, v.norm()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
        else {
            break;
        };
        if norm <= tol {
            break;
        }
        let mut q = work.swap_remove(best);
        for _ in 0..2 {
            for b in &basis {
                let c = b.inner(&q).unwrap();
                q = q.sub(&b.scale(c)).unwrap();
            }
            match q.normalized() {
                Some(u) => q = u,
                None => break,
            }
        }
        if q.norm() == 0.0 {
            continue;
        }
        // deflate the remaining vectors
        for w in work.iter_mut() {
            let c = q.inner(w).unwrap();
            *w = w.sub(&q.scale(c)).unwrap();
        }
        basis.push(q);
    }
    basis
}
