//! Two modes on the tensor-product space: `O₁ = O ⊗ I`, `O₂ = I ⊗ O`.

use std::collections::BTreeMap;

use super::mode::{ModeRep, MomentumChoice};
use super::ExoticError;
use crate::dsl::BoundGenerator;
use crate::fock::{FockBasis, OperatorMatrix};

#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeRep {
    pub basis: FockBasis,
    pub mode_dims: (usize, usize),
    pub modes: [ModeRep; 2],
}

impl TwoModeRep {
    pub const CONSTRUCTION: &'static str = "tensor_product";

    /// `O ⊗ I` for `mode == 0`, `I ⊗ O` for `mode == 1`.
    pub fn lift(&self, mode: usize, op: &OperatorMatrix) -> Result<OperatorMatrix, ExoticError> {
        let [m1, m2] = &self.modes;
        Ok(match mode {
            0 => op.kron(&OperatorMatrix::identity(&m2.basis))?,
            1 => OperatorMatrix::identity(&m1.basis).kron(op)?,
            _ => {
                return Err(ExoticError::invalid(format!(
                    "mode index {mode} out of range"
                )))
            }
        })
    }

    /// Composite indices whose level in `mode` lies in `levels`.
    pub fn lift_levels(&self, mode: usize, levels: &[usize]) -> Vec<usize> {
        let (d1, d2) = self.mode_dims;
        let mut out = Vec::new();
        for i in 0..d1 {
            for j in 0..d2 {
                let level = if mode == 0 { i } else { j };
                if levels.contains(&level) {
                    out.push(i * d2 + j);
                }
            }
        }
        out
    }

    /// Symbol table with names suffixed `1` and `2`.
    pub fn symbols(
        &self,
        choice: MomentumChoice,
    ) -> Result<BTreeMap<String, BoundGenerator>, ExoticError> {
        self.symbols_where(choice, |_| true)
    }

    /// Like [`symbols`](Self::symbols), lifting only the names `keep`
    /// accepts.
    pub fn symbols_where(
        &self,
        choice: MomentumChoice,
        keep: impl Fn(&str) -> bool,
    ) -> Result<BTreeMap<String, BoundGenerator>, ExoticError> {
        let mut out = BTreeMap::new();
        for (k, mode) in self.modes.iter().enumerate() {
            for (name, op, excluded) in mode.symbols(choice)? {
                let name = format!("{name}{}", k + 1);
                if !keep(&name) {
                    continue;
                }
                let lifted = BoundGenerator {
                    matrix: self.lift(k, &op)?,
                    excluded_columns: self.lift_levels(k, &excluded),
                };
                out.insert(name, lifted);
            }
        }
        Ok(out)
    }
}

pub fn assemble_two_mode(m1: ModeRep, m2: ModeRep) -> Result<TwoModeRep, ExoticError> {
    if m1.basis.lambda() != m2.basis.lambda() {
        return Err(ExoticError::invalid(format!(
            "modes have different lambda ({} vs {})",
            m1.basis.lambda(),
            m2.basis.lambda()
        )));
    }
    let basis = m1.basis.tensor(&m2.basis)?;
    Ok(TwoModeRep {
        basis,
        mode_dims: (m1.basis.dim(), m2.basis.dim()),
        modes: [m1, m2],
    })
}
