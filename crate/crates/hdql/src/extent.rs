//! Extents: the finitely representable sets of states.
//!
//! The semantics of a sentence is a set of vectors. The fragment this engine
//! represents exactly is: the whole space, the empty set, a finite set of
//! vectors, a closed subspace, or a finite set together with a subspace. Set
//! operations on this fragment (intersection, membership, orthocomplement of
//! the span) are computed exactly, which is what makes the subspace evaluation
//! path of the checker exact rather than approximate.

use crate::linalg::CVector;
use crate::subspace::Subspace;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtentKind {
    All,
    Empty,
    Finite,
    Subspace,
    Mixed,
}

impl std::fmt::Display for ExtentKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExtentKind::All => write!(f, "ALL"),
            ExtentKind::Empty => write!(f, "EMPTY"),
            ExtentKind::Finite => write!(f, "FINITE"),
            ExtentKind::Subspace => write!(f, "SUBSPACE"),
            ExtentKind::Mixed => write!(f, "MIXED"),
        }
    }
}

/// A finitely representable set of states.
///
/// Invariants: points are deduplicated within ε and none of them lies inside
/// the subspace part. The empty set (no points, no subspace) is distinct from
/// the zero subspace, which contains the origin.
#[derive(Debug, Clone)]
pub enum Extent {
    All(usize),
    Set {
        dim: usize,
        points: Vec<CVector>,
        space: Option<Subspace>,
    },
}

impl Extent {
    pub fn all(dim: usize) -> Extent {
        Extent::All(dim)
    }

    pub fn empty(dim: usize) -> Extent {
        Extent::Set {
            dim,
            points: Vec::new(),
            space: None,
        }
    }

    pub fn finite(dim: usize, points: Vec<CVector>, eps: f64) -> Extent {
        Extent::mixed(dim, points, None, eps)
    }

    pub fn subspace(s: Subspace) -> Extent {
        Extent::Set {
            dim: s.dim(),
            points: Vec::new(),
            space: Some(s),
        }
    }

    /// General constructor; deduplicates points and drops those already inside
    /// the subspace part.
    pub fn mixed(dim: usize, points: Vec<CVector>, space: Option<Subspace>, eps: f64) -> Extent {
        let mut kept: Vec<CVector> = Vec::new();
        for p in points {
            debug_assert_eq!(p.dim(), dim);
            let in_space = match &space {
                Some(s) => s.contains(&p, eps).unwrap_or(false),
                None => false,
            };
            if !in_space && !kept.iter().any(|q| q.approx_eq(&p, eps)) {
                kept.push(p);
            }
        }
        Extent::Set {
            dim,
            points: kept,
            space,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Extent::All(d) => *d,
            Extent::Set { dim, .. } => *dim,
        }
    }

    pub fn kind(&self) -> ExtentKind {
        match self {
            Extent::All(_) => ExtentKind::All,
            Extent::Set { points, space, .. } => match (points.is_empty(), space) {
                (true, None) => ExtentKind::Empty,
                (false, None) => ExtentKind::Finite,
                (true, Some(_)) => ExtentKind::Subspace,
                (false, Some(_)) => ExtentKind::Mixed,
            },
        }
    }

    pub fn is_empty(&self) -> bool {
        self.kind() == ExtentKind::Empty
    }

    /// True iff the extent is the whole space (either literally, or a subspace
    /// of full rank).
    pub fn is_all(&self) -> bool {
        match self {
            Extent::All(_) => true,
            Extent::Set { space, .. } => space.as_ref().is_some_and(|s| s.is_full()),
        }
    }

    pub fn points(&self) -> &[CVector] {
        match self {
            Extent::All(_) => &[],
            Extent::Set { points, .. } => points,
        }
    }

    pub fn space(&self) -> Option<&Subspace> {
        match self {
            Extent::All(_) => None,
            Extent::Set { space, .. } => space.as_ref(),
        }
    }

    pub fn contains(&self, w: &CVector, eps: f64) -> bool {
        match self {
            Extent::All(_) => true,
            Extent::Set { points, space, .. } => {
                points.iter().any(|p| p.approx_eq(w, eps))
                    || space
                        .as_ref()
                        .is_some_and(|s| s.contains(w, eps).unwrap_or(false))
            }
        }
    }

    /// Exact set intersection within the representable fragment.
    pub fn intersect(&self, other: &Extent, eps: f64) -> Extent {
        debug_assert_eq!(self.dim(), other.dim());
        match (self, other) {
            (Extent::All(_), e) => e.clone(),
            (e, Extent::All(_)) => e.clone(),
            (
                Extent::Set {
                    dim,
                    points: p1,
                    space: s1,
                },
                Extent::Set {
                    points: p2,
                    space: s2,
                    ..
                },
            ) => {
                let mut points: Vec<CVector> = Vec::new();
                for p in p1 {
                    if other.contains(p, eps) {
                        points.push(p.clone());
                    }
                }
                for p in p2 {
                    if self.contains(p, eps) {
                        points.push(p.clone());
                    }
                }
                let space = match (s1, s2) {
                    (Some(a), Some(b)) => Some(a.meet(b, eps).expect("same dimension")),
                    _ => None,
                };
                Extent::mixed(*dim, points, space, eps)
            }
        }
    }

    /// The closed span of the extent (smallest subspace containing it).
    pub fn closed_span(&self, eps: f64) -> Subspace {
        match self {
            Extent::All(d) => Subspace::full(*d),
            Extent::Set {
                dim,
                points,
                space,
            } => {
                let mut gens: Vec<CVector> = points.clone();
                if let Some(s) = space {
                    gens.extend(s.basis().iter().cloned());
                }
                Subspace::span(*dim, &gens, eps).expect("dimensions checked on construction")
            }
        }
    }

    /// Orthocomplement of the extent. The complement of any set of vectors
    /// equals the complement of its closed span, so this is always a subspace.
    pub fn ortho(&self, eps: f64) -> Subspace {
        self.closed_span(eps).orthocomplement(eps)
    }

    /// Decides containment of one representable set in another. This is exact:
    /// a subspace of positive rank can never be covered by finitely many
    /// points outside the other subspace part.
    pub fn subset_of(&self, other: &Extent, eps: f64) -> bool {
        match self {
            Extent::All(_) => other.is_all(),
            Extent::Set { points, space, .. } => {
                if !points.iter().all(|p| other.contains(p, eps)) {
                    return false;
                }
                match space {
                    None => true,
                    Some(s1) => {
                        if other.is_all() {
                            return true;
                        }
                        if s1.is_zero() {
                            return other.contains(&CVector::zero(s1.dim()), eps);
                        }
                        match other.space() {
                            Some(s2) => s1.subset_of(s2, eps).unwrap_or(false),
                            None => false,
                        }
                    }
                }
            }
        }
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
    fn empty_differs_from_zero_subspace() {
        let empty = Extent::empty(2);
        let zero = Extent::subspace(Subspace::zero(2));
        assert!(!empty.contains(&CVector::zero(2), EPS));
        assert!(zero.contains(&CVector::zero(2), EPS));
        assert_eq!(empty.kind(), ExtentKind::Empty);
        assert_eq!(zero.kind(), ExtentKind::Subspace);
    }

    #[test]
    fn finite_extents_deduplicate() {
        let e = Extent::finite(2, vec![ket("0"), ket("0"), ket("1")], EPS);
        assert_eq!(e.points().len(), 2);
    }

    #[test]
    fn mixed_drops_points_inside_the_subspace() {
        let s = Subspace::span(2, &[ket("0")], EPS).unwrap();
        let e = Extent::mixed(2, vec![ket("0"), ket("1")], Some(s), EPS);
        assert_eq!(e.kind(), ExtentKind::Mixed);
        assert_eq!(e.points().len(), 1);
        assert!(e.contains(&ket("0"), EPS));
        assert!(e.contains(&ket("1"), EPS));
    }

    #[test]
    fn intersection_is_exact_set_intersection() {
        let s0 = Subspace::span(2, &[ket("0")], EPS).unwrap();
        let a = Extent::mixed(2, vec![ket("1")], Some(s0), EPS);
        let b = Extent::finite(2, vec![ket("1"), ket("0")], EPS);
        let i = a.intersect(&b, EPS);
        // |1⟩ is a shared point; |0⟩ lies in a's subspace part
        assert_eq!(i.kind(), ExtentKind::Finite);
        assert!(i.contains(&ket("1"), EPS));
        assert!(i.contains(&ket("0"), EPS));
        assert_eq!(i.points().len(), 2);
    }

    #[test]
    fn subset_decisions() {
        let s0 = Extent::subspace(Subspace::span(2, &[ket("0")], EPS).unwrap());
        let full = Extent::subspace(Subspace::full(2));
        assert!(s0.subset_of(&full, EPS));
        assert!(!full.subset_of(&s0, EPS));
        assert!(Extent::empty(2).subset_of(&s0, EPS));
        // a rank-1 subspace is never inside a finite set
        let fin = Extent::finite(2, vec![ket("0")], EPS);
        assert!(!s0.subset_of(&fin, EPS));
        // the zero subspace is inside any set containing the origin
        let zero = Extent::subspace(Subspace::zero(2));
        let with_origin = Extent::finite(2, vec![CVector::zero(2)], EPS);
        assert!(zero.subset_of(&with_origin, EPS));
        assert!(!zero.subset_of(&fin, EPS));
    }

    #[test]
    fn ortho_of_finite_set_is_complement_of_span() {
        let plus = ket("0").add(&ket("1")).unwrap();
        let e = Extent::finite(2, vec![plus], EPS);
        let perp = e.ortho(EPS);
        let minus = ket("0").sub(&ket("1")).unwrap();
        let expected = Subspace::span(2, &[minus], EPS).unwrap();
        assert!(perp.approx_eq(&expected, 1e-10));
    }

    #[test]
    fn full_rank_subspace_counts_as_all() {
        assert!(Extent::subspace(Subspace::full(3)).is_all());
        assert!(Extent::all(3).is_all());
        assert!(!Extent::subspace(Subspace::zero(3)).is_all());
    }
}
