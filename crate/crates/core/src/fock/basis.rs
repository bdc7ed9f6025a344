use super::FockError;

/// A truncated Fock space: one or more oscillator modes, each keeping the
/// levels `|0>..|D-1>`, sharing a grading period `lambda`.
///
/// A single-mode basis is what [`make_fock_space`] returns. Multi-mode bases
/// only arise from [`FockBasis::tensor`], with the composite index laid out
/// in row-major (first mode slowest) order, matching `kron(A, B)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FockBasis {
    modes: Vec<usize>,
    lambda: usize,
}

/// Builds a single-mode truncated Fock space with `dim` levels and grading
/// period `lambda`.
pub fn make_fock_space(dim: usize, lambda: usize) -> Result<FockBasis, FockError> {
    FockBasis::new(dim, lambda)
}

impl FockBasis {
    pub fn new(dim: usize, lambda: usize) -> Result<Self, FockError> {
        if dim < 2 {
            return Err(FockError::invalid(format!(
                "dim >= 2 violated (dim = {dim})"
            )));
        }
        if lambda < 1 {
            return Err(FockError::invalid("lambda >= 1 violated (lambda = 0)"));
        }
        if lambda > dim {
            return Err(FockError::invalid(format!(
                "lambda <= dim violated (lambda = {lambda}, dim = {dim})"
            )));
        }
        Ok(Self {
            modes: vec![dim],
            lambda,
        })
    }

    /// Total dimension of the (possibly composite) space.
    pub fn dim(&self) -> usize {
        self.modes.iter().product()
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn mode_dims(&self) -> &[usize] {
        &self.modes
    }

    pub fn mode_count(&self) -> usize {
        self.modes.len()
    }

    pub fn is_single_mode(&self) -> bool {
        self.modes.len() == 1
    }

    /// Composite basis of `self ⊗ other`. Both factors must share `lambda`.
    pub fn tensor(&self, other: &FockBasis) -> Result<FockBasis, FockError> {
        if self.lambda != other.lambda {
            return Err(FockError::invalid(format!(
                "lambda mismatch in tensor product ({} vs {})",
                self.lambda, other.lambda
            )));
        }
        let mut modes = self.modes.clone();
        modes.extend_from_slice(&other.modes);
        Ok(FockBasis {
            modes,
            lambda: self.lambda,
        })
    }

    /// Per-mode occupation levels of composite index `index`.
    pub fn levels(&self, index: usize) -> Vec<usize> {
        let mut rest = index;
        let mut out = vec![0; self.modes.len()];
        for (slot, &d) in out.iter_mut().zip(&self.modes).rev() {
            *slot = rest % d;
            rest /= d;
        }
        out
    }

    /// Composite indices whose every mode level lies below `D_mode - mask`.
    ///
    /// For a single mode this is `0..D-mask`, i.e. the top-left block.
    pub fn retained_indices(&self, mask: usize) -> Vec<usize> {
        (0..self.dim())
            .filter(|&c| {
                self.levels(c)
                    .iter()
                    .zip(&self.modes)
                    .all(|(&n, &d)| n + mask < d)
            })
            .collect()
    }
}
