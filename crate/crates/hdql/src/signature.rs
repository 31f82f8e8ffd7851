//! Signatures and signature morphisms.
//!
//! A signature lists the gate symbols, measurement symbols, vector and scalar
//! constants, and propositional symbols (with a designated closed subset).
//! The five name classes are mutually disjoint. Morphisms rename symbols
//! class-by-class; closed propositions map to closed propositions.

use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymbolKind {
    Gate,
    Measurement,
    VectorConst,
    ScalarConst,
    Prop,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SignatureError {
    #[error("symbol {0:?} is declared in more than one class")]
    DuplicateSymbol(String),
    #[error("symbol name must be a nonempty identifier, got {0:?}")]
    BadName(String),
    #[error("closed proposition {0:?} is not declared as a proposition")]
    UnknownClosedProp(String),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    pub gates: BTreeSet<String>,
    pub measurements: BTreeSet<String>,
    pub vector_consts: BTreeSet<String>,
    pub scalar_consts: BTreeSet<String>,
    pub props: BTreeSet<String>,
    pub closed_props: BTreeSet<String>,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Signature {
    pub fn new() -> Self {
        Signature::default()
    }

    /// Checks disjointness, name validity, and closed_props ⊆ props.
    pub fn validate(&self) -> Result<(), SignatureError> {
        let classes = [
            &self.gates,
            &self.measurements,
            &self.vector_consts,
            &self.scalar_consts,
            &self.props,
        ];
        let mut seen: BTreeSet<&String> = BTreeSet::new();
        for class in classes {
            for name in class {
                if !valid_name(name) {
                    return Err(SignatureError::BadName(name.clone()));
                }
                if !seen.insert(name) {
                    return Err(SignatureError::DuplicateSymbol(name.clone()));
                }
            }
        }
        for r in &self.closed_props {
            if !self.props.contains(r) {
                return Err(SignatureError::UnknownClosedProp(r.clone()));
            }
        }
        Ok(())
    }

    pub fn kind_of(&self, name: &str) -> Option<SymbolKind> {
        if self.gates.contains(name) {
            Some(SymbolKind::Gate)
        } else if self.measurements.contains(name) {
            Some(SymbolKind::Measurement)
        } else if self.vector_consts.contains(name) {
            Some(SymbolKind::VectorConst)
        } else if self.scalar_consts.contains(name) {
            Some(SymbolKind::ScalarConst)
        } else if self.props.contains(name) {
            Some(SymbolKind::Prop)
        } else {
            None
        }
    }

    pub fn is_closed_prop(&self, name: &str) -> bool {
        self.closed_props.contains(name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MorphismError {
    #[error("{kind}: symbol {name:?} is not in the renaming domain")]
    NotInDomain { kind: &'static str, name: String },
    #[error("{kind}: {from:?} maps to {to:?}, which is not declared in the target")]
    NotInTarget {
        kind: &'static str,
        from: String,
        to: String,
    },
    #[error("closed proposition {from:?} maps to non-closed {to:?}")]
    ClosednessBroken { from: String, to: String },
}

/// A signature morphism: per-class renamings from a source to a target
/// signature. Total on the source; sort-preserving by construction.
#[derive(Debug, Clone)]
pub struct Morphism {
    pub source: Signature,
    pub target: Signature,
    pub gate_map: BTreeMap<String, String>,
    pub meas_map: BTreeMap<String, String>,
    pub vec_map: BTreeMap<String, String>,
    pub scalar_map: BTreeMap<String, String>,
    pub prop_map: BTreeMap<String, String>,
}

impl Morphism {
    /// Identity morphism on a signature.
    pub fn identity(sig: &Signature) -> Morphism {
        let id = |set: &BTreeSet<String>| {
            set.iter()
                .map(|s| (s.clone(), s.clone()))
                .collect::<BTreeMap<_, _>>()
        };
        Morphism {
            source: sig.clone(),
            target: sig.clone(),
            gate_map: id(&sig.gates),
            meas_map: id(&sig.measurements),
            vec_map: id(&sig.vector_consts),
            scalar_map: id(&sig.scalar_consts),
            prop_map: id(&sig.props),
        }
    }

    pub fn validate(&self) -> Result<(), MorphismError> {
        let check = |kind: &'static str,
                     map: &BTreeMap<String, String>,
                     dom: &BTreeSet<String>,
                     cod: &BTreeSet<String>| {
            for name in dom {
                let to = map
                    .get(name)
                    .ok_or_else(|| MorphismError::NotInDomain {
                        kind,
                        name: name.clone(),
                    })?;
                if !cod.contains(to) {
                    return Err(MorphismError::NotInTarget {
                        kind,
                        from: name.clone(),
                        to: to.clone(),
                    });
                }
            }
            Ok(())
        };
        check("gate", &self.gate_map, &self.source.gates, &self.target.gates)?;
        check(
            "measurement",
            &self.meas_map,
            &self.source.measurements,
            &self.target.measurements,
        )?;
        check(
            "vector constant",
            &self.vec_map,
            &self.source.vector_consts,
            &self.target.vector_consts,
        )?;
        check(
            "scalar constant",
            &self.scalar_map,
            &self.source.scalar_consts,
            &self.target.scalar_consts,
        )?;
        check("proposition", &self.prop_map, &self.source.props, &self.target.props)?;
        for p in &self.source.props {
            let to = &self.prop_map[p];
            if self.source.is_closed_prop(p) != self.target.is_closed_prop(to) {
                return Err(MorphismError::ClosednessBroken {
                    from: p.clone(),
                    to: to.clone(),
                });
            }
        }
        Ok(())
    }

    /// Composition: apply `self` first, then `other`.
    pub fn compose(&self, other: &Morphism) -> Morphism {
        let comp = |first: &BTreeMap<String, String>, second: &BTreeMap<String, String>| {
            first
                .iter()
                .map(|(k, v)| (k.clone(), second.get(v).cloned().unwrap_or_else(|| v.clone())))
                .collect::<BTreeMap<_, _>>()
        };
        Morphism {
            source: self.source.clone(),
            target: other.target.clone(),
            gate_map: comp(&self.gate_map, &other.gate_map),
            meas_map: comp(&self.meas_map, &other.meas_map),
            vec_map: comp(&self.vec_map, &other.vec_map),
            scalar_map: comp(&self.scalar_map, &other.scalar_map),
            prop_map: comp(&self.prop_map, &other.prop_map),
        }
    }

    pub fn map_symbol(&self, kind: SymbolKind, name: &str) -> Result<String, MorphismError> {
        let (map, label) = match kind {
            SymbolKind::Gate => (&self.gate_map, "gate"),
            SymbolKind::Measurement => (&self.meas_map, "measurement"),
            SymbolKind::VectorConst => (&self.vec_map, "vector constant"),
            SymbolKind::ScalarConst => (&self.scalar_map, "scalar constant"),
            SymbolKind::Prop => (&self.prop_map, "proposition"),
        };
        map.get(name)
            .cloned()
            .ok_or_else(|| MorphismError::NotInDomain {
                kind: label,
                name: name.to_string(),
            })
    }
}
