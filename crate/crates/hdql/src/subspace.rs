//! Closed subspaces of ℂⁿ and the operations of the subspace lattice.
//!
//! A subspace is represented by an orthonormal basis together with its
//! orthogonal projector P = Σ bᵢbᵢ†. In finite dimension every linear subspace
//! is closed, so the span constructor is the only closure operation needed.
//! Meet, join (⊕), orthocomplement, the Sasaki hook and the projection
//! image/preimage identities are all reduced to `span` and `orthocomplement`.

use crate::linalg::{orthonormalize, C64, CMatrix, CVector, DimensionMismatch};

/// A closed linear subspace of ℂⁿ, held as an orthonormal basis plus the
/// orthogonal projector onto it.
#[derive(Debug, Clone)]
pub struct Subspace {
    dim: usize,
    basis: Vec<CVector>,
    projector: CMatrix,
}

impl Subspace {
    /// Smallest subspace containing all of `vectors`. The rank is decided at
    /// tolerance ε relative to the largest input norm.
    pub fn span(dim: usize, vectors: &[CVector], eps: f64) -> Result<Subspace, DimensionMismatch> {
        for v in vectors {
            if v.dim() != dim {
                return Err(DimensionMismatch {
                    expected: dim,
                    got: v.dim(),
                });
            }
        }
        let basis = orthonormalize(vectors, eps);
        Ok(Subspace::from_orthonormal_basis(dim, basis))
    }

    /// Builds a subspace from vectors already known to be orthonormal.
    pub fn from_orthonormal_basis(dim: usize, basis: Vec<CVector>) -> Subspace {
        debug_assert!(basis.iter().all(|b| b.dim() == dim));
        let mut projector = CMatrix::zeros(dim);
        for b in &basis {
            for i in 0..dim {
                for j in 0..dim {
                    let v = projector.get(i, j) + b.get(i) * b.get(j).conj();
                    projector.set(i, j, v);
                }
            }
        }
        Subspace {
            dim,
            basis,
            projector,
        }
    }

    pub fn zero(dim: usize) -> Subspace {
        Subspace::from_orthonormal_basis(dim, Vec::new())
    }

    pub fn full(dim: usize) -> Subspace {
        let basis = (0..dim).map(|k| CVector::basis(dim, k)).collect();
        Subspace::from_orthonormal_basis(dim, basis)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.dim
    }

    pub fn basis(&self) -> &[CVector] {
        &self.basis
    }

    pub fn projector(&self) -> &CMatrix {
        &self.projector
    }

    /// Orthocomplement: projector I − P.
    pub fn orthocomplement(&self, eps: f64) -> Subspace {
        // columns of I − P span the complement exactly
        let complement = CMatrix::identity(self.dim)
            .sub(&self.projector)
            .expect("same dimension");
        let cols: Vec<CVector> = (0..self.dim).map(|j| complement.column(j)).collect();
        let basis = orthonormalize(&cols, eps);
        debug_assert_eq!(basis.len(), self.dim - self.rank());
        Subspace::from_orthonormal_basis(self.dim, basis)
    }

    /// Intersection of two subspaces, computed as (S⊥ ⊕ T⊥)⊥.
    pub fn meet(&self, other: &Subspace, eps: f64) -> Result<Subspace, DimensionMismatch> {
        if self.dim != other.dim {
            return Err(DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let sc = self.orthocomplement(eps);
        let tc = other.orthocomplement(eps);
        let mut gens: Vec<CVector> = sc.basis.clone();
        gens.extend(tc.basis.iter().cloned());
        Ok(Subspace::span(self.dim, &gens, eps)?.orthocomplement(eps))
    }

    /// Direct sum (join): (S⊥ ∩ T⊥)⊥, which equals the span of both bases.
    pub fn direct_sum(&self, other: &Subspace, eps: f64) -> Result<Subspace, DimensionMismatch> {
        if self.dim != other.dim {
            return Err(DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let sc = self.orthocomplement(eps);
        let tc = other.orthocomplement(eps);
        Ok(sc.meet(&tc, eps)?.orthocomplement(eps))
    }

    /// Sasaki hook S ↝ T = S⊥ ⊕ (S ∩ T).
    pub fn sasaki_hook(&self, other: &Subspace, eps: f64) -> Result<Subspace, DimensionMismatch> {
        let inter = self.meet(other, eps)?;
        self.orthocomplement(eps).direct_sum(&inter, eps)
    }

    /// Orthogonal projection of a single vector onto the subspace.
    pub fn project(&self, w: &CVector) -> Result<CVector, DimensionMismatch> {
        self.projector.mul_vec(w)
    }

    /// Image of T under projection onto S: S ∩ (S⊥ ⊕ T).
    pub fn image_of_projection(
        &self,
        other: &Subspace,
        eps: f64,
    ) -> Result<Subspace, DimensionMismatch> {
        let lifted = self.orthocomplement(eps).direct_sum(other, eps)?;
        self.meet(&lifted, eps)
    }

    /// Preimage of T under projection onto S: S⊥ ⊕ (S ∩ T). Identical to the
    /// Sasaki hook.
    pub fn preimage_of_projection(
        &self,
        other: &Subspace,
        eps: f64,
    ) -> Result<Subspace, DimensionMismatch> {
        self.sasaki_hook(other, eps)
    }

    /// Membership test: ‖P·w − w‖ ≤ ε·max(1, ‖w‖).
    pub fn contains(&self, w: &CVector, eps: f64) -> Result<bool, DimensionMismatch> {
        let projected = self.project(w)?;
        let residual = projected.sub(w)?.norm();
        Ok(residual <= eps * w.norm().max(1.0))
    }

    /// Containment of subspaces: S ⊆ T iff P_T P_S = P_S.
    pub fn subset_of(&self, other: &Subspace, eps: f64) -> Result<bool, DimensionMismatch> {
        let composed = other.projector.mul(&self.projector)?;
        Ok(composed.approx_eq(&self.projector, eps * (self.dim as f64).max(1.0)))
    }

    /// Projector Frobenius equality within ε.
    pub fn approx_eq(&self, other: &Subspace, eps: f64) -> bool {
        self.dim == other.dim && self.projector.approx_eq(&other.projector, eps)
    }

    /// Projective measurement: w ↦ P·w / √⟨w, P·w⟩, undefined where the
    /// probability ⟨w, P·w⟩ falls at or below ε².
    pub fn measure(&self, w: &CVector, eps: f64) -> Result<Option<CVector>, DimensionMismatch> {
        let projected = self.project(w)?;
        let pr = w.inner(&projected)?.re.max(0.0);
        if pr <= eps * eps {
            return Ok(None);
        }
        Ok(Some(projected.scale(C64::new(1.0 / pr.sqrt(), 0.0))))
    }

    /// Measurement probability ⟨w, P·w⟩.
    pub fn probability(&self, w: &CVector) -> Result<f64, DimensionMismatch> {
        Ok(w.inner(&self.project(w)?)?.re.max(0.0))
    }

    /// Structural checks on the cached projector: Hermitian, idempotent, and
    /// trace equal to the rank, each within ε.
    pub fn validate(&self, eps: f64) -> Result<(), String> {
        if !self.projector.is_hermitian(eps) {
            return Err("projector is not Hermitian".into());
        }
        let squared = self.projector.mul(&self.projector).unwrap();
        if !squared.approx_eq(&self.projector, eps) {
            return Err("projector is not idempotent".into());
        }
        let tr = self.projector.trace();
        if (tr.re - self.rank() as f64).abs() > eps || tr.im.abs() > eps {
            return Err(format!(
                "projector trace {} does not match rank {}",
                tr.re,
                self.rank()
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::DEFAULT_EPSILON as EPS;

    fn ket(bits: &str) -> CVector {
        CVector::ket(bits)
    }

    #[test]
    fn empty_span_is_zero_subspace() {
        let s = Subspace::span(2, &[], EPS).unwrap();
        assert_eq!(s.rank(), 0);
        assert!(s.is_zero());
    }

    #[test]
    fn collinear_span_has_rank_one() {
        let s = Subspace::span(2, &[ket("0"), ket("0").scale(C64::new(2.0, 0.0))], EPS).unwrap();
        assert_eq!(s.rank(), 1);
        let expected = CMatrix::from_rows_real(&[&[1.0, 0.0], &[0.0, 0.0]]);
        assert!(s.projector().approx_eq(&expected, 1e-12));
    }

    #[test]
    fn bell_span_projector_matches_outer_product() {
        // |00⟩+|11⟩ normalizes to the Bell state; projector is the outer
        // product ½(|00⟩⟨00| + |00⟩⟨11| + |11⟩⟨00| + |11⟩⟨11|).
        let bell = ket("00").add(&ket("11")).unwrap();
        let s = Subspace::span(4, &[bell], EPS).unwrap();
        assert_eq!(s.rank(), 1);
        let h = 0.5;
        let expected = CMatrix::from_rows_real(&[
            &[h, 0.0, 0.0, h],
            &[0.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 0.0],
            &[h, 0.0, 0.0, h],
        ]);
        assert!(s.projector().approx_eq(&expected, 1e-12));
    }

    #[test]
    fn orthocomplement_of_basis_state() {
        let s = Subspace::span(2, &[ket("0")], EPS).unwrap();
        let c = s.orthocomplement(EPS);
        let expected = Subspace::span(2, &[ket("1")], EPS).unwrap();
        assert!(c.approx_eq(&expected, 1e-12));
        // zero subspace complements to the full space
        assert!(Subspace::zero(2).orthocomplement(EPS).is_full());
    }

    #[test]
    fn meet_examples() {
        let s0 = Subspace::span(2, &[ket("0")], EPS).unwrap();
        let s1 = Subspace::span(2, &[ket("1")], EPS).unwrap();
        assert!(s0.meet(&s1, EPS).unwrap().is_zero());
        assert!(s0.meet(&Subspace::full(2), EPS).unwrap().approx_eq(&s0, 1e-10));
        // span(|0⟩+|1⟩, |0⟩−|1⟩) is all of ℂ², so the meet with span(|0⟩) is span(|0⟩)
        let plus = ket("0").add(&ket("1")).unwrap();
        let minus = ket("0").sub(&ket("1")).unwrap();
        let whole = Subspace::span(2, &[plus, minus], EPS).unwrap();
        assert_eq!(whole.rank(), 2);
        assert!(whole.meet(&s0, EPS).unwrap().approx_eq(&s0, 1e-10));
    }

    #[test]
    fn direct_sum_examples() {
        let s00 = Subspace::span(4, &[ket("00")], EPS).unwrap();
        let s11 = Subspace::span(4, &[ket("11")], EPS).unwrap();
        let sum = s00.direct_sum(&s11, EPS).unwrap();
        assert_eq!(sum.rank(), 2);
        let expected = Subspace::span(4, &[ket("00"), ket("11")], EPS).unwrap();
        assert!(sum.approx_eq(&expected, 1e-10));
        // unit of ⊕
        let t = Subspace::span(4, &[ket("01")], EPS).unwrap();
        assert!(Subspace::zero(4).direct_sum(&t, EPS).unwrap().approx_eq(&t, 1e-10));
    }

    #[test]
    fn sasaki_hook_examples() {
        let s0 = Subspace::span(2, &[ket("0")], EPS).unwrap();
        let s1 = Subspace::span(2, &[ket("1")], EPS).unwrap();
        // X ∩ Y = 0, so the hook collapses to X⊥
        assert!(s0.sasaki_hook(&s1, EPS).unwrap().approx_eq(&s1, 1e-10));
        assert!(s0.sasaki_hook(&Subspace::full(2), EPS).unwrap().is_full());
    }

    #[test]
    fn projection_splits_vectors() {
        let s0 = Subspace::span(2, &[ket("0")], EPS).unwrap();
        let w = ket("0").add(&ket("1")).unwrap().scale(C64::new(1.0 / 2.0_f64.sqrt(), 0.0));
        let p = s0.project(&w).unwrap();
        assert!(p.approx_eq(&ket("0").scale(C64::new(1.0 / 2.0_f64.sqrt(), 0.0)), 1e-12));
        assert!(Subspace::full(2).project(&w).unwrap().approx_eq(&w, 1e-12));
    }

    #[test]
    fn image_of_projection_example() {
        let s0 = Subspace::span(2, &[ket("0")], EPS).unwrap();
        let t = Subspace::span(2, &[ket("0").add(&ket("1")).unwrap()], EPS).unwrap();
        let image = s0.image_of_projection(&t, EPS).unwrap();
        assert!(image.approx_eq(&s0, 1e-10));
        assert!(s0.image_of_projection(&Subspace::zero(2), EPS).unwrap().is_zero());
    }

    #[test]
    fn preimage_of_projection_examples() {
        let s0 = Subspace::span(2, &[ket("0")], EPS).unwrap();
        assert!(s0.preimage_of_projection(&s0, EPS).unwrap().is_full());
        let kernel = s0.preimage_of_projection(&Subspace::zero(2), EPS).unwrap();
        let s1 = Subspace::span(2, &[ket("1")], EPS).unwrap();
        assert!(kernel.approx_eq(&s1, 1e-10));
    }

    #[test]
    fn contains_examples() {
        let s0 = Subspace::span(2, &[ket("0")], EPS).unwrap();
        assert!(s0.contains(&CVector::zero(2), EPS).unwrap());
        assert!(!s0.contains(&ket("1"), EPS).unwrap());
        let bell = ket("00").add(&ket("11")).unwrap();
        let s = Subspace::span(4, &[bell.clone()], EPS).unwrap();
        assert!(s.contains(&bell.scale(C64::new(3.0, 0.0)), EPS).unwrap());
    }

    #[test]
    fn measure_examples() {
        let s0 = Subspace::span(2, &[ket("0")], EPS).unwrap();
        let w = ket("0").add(&ket("1")).unwrap().scale(C64::new(1.0 / 2.0_f64.sqrt(), 0.0));
        assert!((s0.probability(&w).unwrap() - 0.5).abs() < 1e-12);
        let out = s0.measure(&w, EPS).unwrap().unwrap();
        assert!(out.approx_eq(&ket("0"), 1e-12));
        // orthogonal input has probability 0 and no outcome
        assert!(s0.measure(&ket("1"), EPS).unwrap().is_none());
    }

    #[test]
    fn measure_output_is_unit_and_inside() {
        let s = Subspace::span(3, &[CVector::basis(3, 0), CVector::basis(3, 2)], EPS).unwrap();
        let w = CVector::from_reals(&[0.3, 0.2, -0.7]);
        let out = s.measure(&w, EPS).unwrap().unwrap();
        assert!((out.norm() - 1.0).abs() < 1e-12);
        assert!(s.contains(&out, EPS).unwrap());
    }

    #[test]
    fn validate_accepts_constructed_projectors() {
        let s = Subspace::span(4, &[ket("00"), ket("01")], EPS).unwrap();
        assert!(s.validate(1e-10).is_ok());
    }
}
