//! Shared generators for the randomized suites: seeded vectors, unitaries,
//! subspaces, models and sentences.

#![allow(dead_code)]

use hdql::linalg::{orthonormalize, C64, CMatrix, CVector, DEFAULT_EPSILON};
use hdql::sentence::{Action, Sentence};
use hdql::signature::Signature;
use hdql::subspace::Subspace;
use hdql::{Extent, Model};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub const EPS: f64 = DEFAULT_EPSILON;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_complex(rng: &mut StdRng) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn random_vector(rng: &mut StdRng, dim: usize) -> CVector {
    CVector::new((0..dim).map(|_| random_complex(rng)).collect())
}

/// Random unit vector.
pub fn random_state(rng: &mut StdRng, dim: usize) -> CVector {
    loop {
        let v = random_vector(rng, dim);
        if let Some(u) = v.normalized() {
            return u;
        }
    }
}

/// Haar-ish random unitary: orthonormalized columns of a random matrix.
pub fn random_unitary(rng: &mut StdRng, dim: usize) -> CMatrix {
    loop {
        let cols: Vec<CVector> = (0..dim).map(|_| random_vector(rng, dim)).collect();
        let basis = orthonormalize(&cols, EPS);
        if basis.len() < dim {
            continue;
        }
        let mut m = CMatrix::zeros(dim);
        for (j, b) in basis.iter().enumerate() {
            for i in 0..dim {
                m.set(i, j, b.get(i));
            }
        }
        return m;
    }
}

/// Random subspace of the given rank (or a uniformly chosen rank 0..=dim).
pub fn random_subspace(rng: &mut StdRng, dim: usize, rank: Option<usize>) -> Subspace {
    let k = rank.unwrap_or_else(|| rng.gen_range(0..=dim));
    let gens: Vec<CVector> = (0..k).map(|_| random_vector(rng, dim)).collect();
    let s = Subspace::span(dim, &gens, EPS).unwrap();
    assert_eq!(s.rank(), k, "random generators should be independent");
    s
}

/// A random subspace strictly inside the given one (a span of random
/// combinations of its basis).
pub fn random_subspace_inside(rng: &mut StdRng, outer: &Subspace) -> Subspace {
    if outer.rank() == 0 {
        return Subspace::zero(outer.dim());
    }
    let k = rng.gen_range(0..=outer.rank());
    let gens: Vec<CVector> = (0..k)
        .map(|_| {
            let mut acc = CVector::zero(outer.dim());
            for b in outer.basis() {
                acc = acc.add(&b.scale(random_complex(rng))).unwrap();
            }
            acc
        })
        .collect();
    Subspace::span(outer.dim(), &gens, EPS).unwrap()
}

/// A model with `n_gates` random unitaries g0, g1, … and `n_closed` closed
/// propositions r0, r1, … valued at random subspaces.
pub fn random_closed_model(
    rng: &mut StdRng,
    dim: usize,
    n_gates: usize,
    n_closed: usize,
) -> (Signature, Model) {
    let mut sig = Signature::new();
    let mut model = Model::new(dim);
    for g in 0..n_gates {
        let name = format!("g{g}");
        sig.gates.insert(name.clone());
        model.gates.insert(name, random_unitary(rng, dim));
    }
    for r in 0..n_closed {
        let name = format!("r{r}");
        sig.props.insert(name.clone());
        sig.closed_props.insert(name.clone());
        model
            .valuation
            .insert(name, Extent::subspace(random_subspace(rng, dim, None)));
    }
    (sig, model)
}

/// A random action over the model's gates (unitary only).
pub fn random_unitary_action(rng: &mut StdRng, n_gates: usize, depth: usize) -> Action {
    let gate = |rng: &mut StdRng| Action::Gate(format!("g{}", rng.gen_range(0..n_gates)));
    if depth == 0 || rng.gen_bool(0.4) {
        return gate(rng);
    }
    match rng.gen_range(0..4) {
        0 => Action::seq(
            random_unitary_action(rng, n_gates, depth - 1),
            random_unitary_action(rng, n_gates, depth - 1),
        ),
        1 => Action::union(
            random_unitary_action(rng, n_gates, depth - 1),
            random_unitary_action(rng, n_gates, depth - 1),
        ),
        2 => Action::star(random_unitary_action(rng, n_gates, depth - 1)),
        _ => gate(rng),
    }
}

/// A random closed sentence (closed props, ∼, ∧, necessity over unitary
/// actions) of the given depth.
pub fn random_closed_sentence(rng: &mut StdRng, n_gates: usize, n_closed: usize, depth: usize) -> Sentence {
    let atom = |rng: &mut StdRng| Sentence::prop(format!("r{}", rng.gen_range(0..n_closed)));
    if depth == 0 || rng.gen_bool(0.3) {
        return atom(rng);
    }
    match rng.gen_range(0..4) {
        0 => Sentence::qnot(random_closed_sentence(rng, n_gates, n_closed, depth - 1)),
        1 => Sentence::and(
            random_closed_sentence(rng, n_gates, n_closed, depth - 1),
            random_closed_sentence(rng, n_gates, n_closed, depth - 1),
        ),
        2 => Sentence::nec(
            random_unitary_action(rng, n_gates, depth.min(2)),
            random_closed_sentence(rng, n_gates, n_closed, depth - 1),
        ),
        _ => atom(rng),
    }
}

/// A state drawn from a subspace: a random combination of its basis.
pub fn state_in(rng: &mut StdRng, s: &Subspace) -> CVector {
    let mut acc = CVector::zero(s.dim());
    for b in s.basis() {
        acc = acc.add(&b.scale(random_complex(rng))).unwrap();
    }
    acc
}
