//! Builtin gate matrices and the two bundled protocol models.
//!
//! Both protocols decode with CNOT followed by H on the control qubit. In
//! superdense coding Alice holds the second qubit of the shared Bell pair and
//! applies the phase flip Z^i followed by the bit flip X^j, after which the
//! decoder reads |ij⟩ exactly — these two encodings commute, so no global
//! phase appears on any of the four branches. In teleportation the measurement
//! collapses the first two qubits to |ij⟩ and Bob corrects his qubit with X^j
//! then Z^i.

use crate::extent::Extent;
use crate::linalg::{C64, CMatrix, CVector, DEFAULT_EPSILON};
use crate::model::Model;
use crate::signature::Signature;
use crate::subspace::Subspace;

pub fn hadamard() -> CMatrix {
    let s = 1.0 / 2.0_f64.sqrt();
    CMatrix::from_rows_real(&[&[s, s], &[s, -s]])
}

pub fn pauli_x() -> CMatrix {
    CMatrix::from_rows_real(&[&[0.0, 1.0], &[1.0, 0.0]])
}

pub fn pauli_y() -> CMatrix {
    CMatrix::from_rows(vec![
        vec![C64::new(0.0, 0.0), C64::new(0.0, -1.0)],
        vec![C64::new(0.0, 1.0), C64::new(0.0, 0.0)],
    ])
}

pub fn pauli_z() -> CMatrix {
    CMatrix::from_rows_real(&[&[1.0, 0.0], &[0.0, -1.0]])
}

pub fn cnot() -> CMatrix {
    CMatrix::from_rows_real(&[
        &[1.0, 0.0, 0.0, 0.0],
        &[0.0, 1.0, 0.0, 0.0],
        &[0.0, 0.0, 0.0, 1.0],
        &[0.0, 0.0, 1.0, 0.0],
    ])
}

/// The Bell state (|00⟩ + |11⟩)/√2.
pub fn bell00() -> CVector {
    CVector::ket("00")
        .add(&CVector::ket("11"))
        .unwrap()
        .scale(C64::new(1.0 / 2.0_f64.sqrt(), 0.0))
}

/// The superdense-coding model on ℂ⁴, with the valuation of its initial model:
/// each p_ij holds exactly at |ij⟩.
pub fn superdense() -> (Signature, Model) {
    let mut sig = Signature::new();
    for u in ["u0", "u1", "s0", "s1", "d0", "d1"] {
        sig.gates.insert(u.into());
    }
    sig.vector_consts.insert("bell00".into());
    for p in ["p00", "p01", "p10", "p11"] {
        sig.props.insert(p.into());
    }

    let i2 = CMatrix::identity(2);
    let mut m = Model::new(4);
    m.gates.insert("u0".into(), cnot());
    m.gates.insert("u1".into(), hadamard().kron(&i2));
    m.gates.insert("s0".into(), CMatrix::identity(4));
    m.gates.insert("s1".into(), i2.kron(&pauli_z()));
    m.gates.insert("d0".into(), CMatrix::identity(4));
    m.gates.insert("d1".into(), i2.kron(&pauli_x()));
    m.vector_consts.insert("bell00".into(), bell00());
    for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        m.valuation.insert(
            format!("p{i}{j}"),
            Extent::finite(4, vec![CVector::ket(&format!("{i}{j}"))], DEFAULT_EPSILON),
        );
    }
    (sig, m)
}

/// The teleportation model on ℂ⁸ for a given input qubit α|0⟩ + β|1⟩, with the
/// valuation of its initial model: p holds exactly at the four outputs
/// |ij⟩ ⊗ (α|0⟩ + β|1⟩).
pub fn teleport(alpha: C64, beta: C64) -> (Signature, Model) {
    let mut sig = Signature::new();
    for u in ["u0", "u1", "s0", "s1", "d0", "d1"] {
        sig.gates.insert(u.into());
    }
    for q in ["q00", "q01", "q10", "q11"] {
        sig.measurements.insert(q.into());
    }
    sig.vector_consts.insert("input".into());
    sig.props.insert("p".into());

    let i2 = CMatrix::identity(2);
    let i4 = CMatrix::identity(4);
    let mut m = Model::new(8);
    m.gates.insert("u0".into(), cnot().kron(&i2));
    m.gates.insert("u1".into(), hadamard().kron(&i4));
    m.gates.insert("s0".into(), CMatrix::identity(8));
    m.gates.insert("s1".into(), i4.kron(&pauli_x()));
    m.gates.insert("d0".into(), CMatrix::identity(8));
    m.gates.insert("d1".into(), i4.kron(&pauli_z()));
    for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        let span = Subspace::span(
            8,
            &[
                CVector::ket(&format!("{i}{j}0")),
                CVector::ket(&format!("{i}{j}1")),
            ],
            DEFAULT_EPSILON,
        )
        .unwrap();
        m.measurements.insert(format!("q{i}{j}"), span);
    }

    let w = CVector::ket("0").scale(alpha).add(&CVector::ket("1").scale(beta)).unwrap();
    let input = w.kron(&bell00());
    m.vector_consts.insert("input".into(), input);

    let outputs: Vec<CVector> = [(0, 0), (0, 1), (1, 0), (1, 1)]
        .iter()
        .map(|(i, j)| CVector::ket(&format!("{i}{j}")).kron(&w))
        .collect();
    m.valuation
        .insert("p".into(), Extent::finite(8, outputs, DEFAULT_EPSILON));
    (sig, m)
}
