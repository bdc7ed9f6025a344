use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{FockBasis, FockError};

/// A dense complex operator on a truncated Fock basis.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    basis: FockBasis,
    entries: DMatrix<Complex64>,
}

impl OperatorMatrix {
    pub fn new(basis: FockBasis, entries: DMatrix<Complex64>) -> Result<Self, FockError> {
        let d = basis.dim();
        if entries.nrows() != d || entries.ncols() != d {
            return Err(FockError::invalid(format!(
                "matrix is {}x{} but basis dimension is {d}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        if let Some((i, j)) = first_non_finite(&entries) {
            return Err(FockError::NonFinite { row: i, col: j });
        }
        Ok(Self { basis, entries })
    }

    pub fn zeros(basis: &FockBasis) -> Self {
        let d = basis.dim();
        Self {
            basis: basis.clone(),
            entries: DMatrix::zeros(d, d),
        }
    }

    pub fn identity(basis: &FockBasis) -> Self {
        let d = basis.dim();
        Self {
            basis: basis.clone(),
            entries: DMatrix::identity(d, d),
        }
    }

    pub fn from_diagonal<I>(basis: &FockBasis, diag: I) -> Result<Self, FockError>
    where
        I: IntoIterator<Item = Complex64>,
    {
        let d = basis.dim();
        let mut m = DMatrix::zeros(d, d);
        let mut count = 0;
        for (n, v) in diag.into_iter().enumerate() {
            if n < d {
                m[(n, n)] = v;
            }
            count += 1;
        }
        if count != d {
            return Err(FockError::invalid(format!(
                "diagonal has {count} entries, basis dimension is {d}"
            )));
        }
        Self::new(basis.clone(), m)
    }

    pub fn basis(&self) -> &FockBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn into_entries(self) -> DMatrix<Complex64> {
        self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[(row, col)]
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.dim()).map(|n| self.entries[(n, n)]).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        let d = self.dim();
        (0..d).all(|j| (0..d).all(|i| i == j || self.entries[(i, j)] == Complex64::new(0.0, 0.0)))
    }

    pub fn is_finite(&self) -> bool {
        first_non_finite(&self.entries).is_none()
    }

    fn same_basis(&self, other: &OperatorMatrix) -> Result<(), FockError> {
        if self.basis != other.basis {
            return Err(FockError::BasisMismatch {
                left: format!("{:?}", self.basis),
                right: format!("{:?}", other.basis),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &OperatorMatrix) -> Result<OperatorMatrix, FockError> {
        self.same_basis(other)?;
        Ok(self.with_entries(&self.entries + &other.entries))
    }

    pub fn sub(&self, other: &OperatorMatrix) -> Result<OperatorMatrix, FockError> {
        self.same_basis(other)?;
        Ok(self.with_entries(&self.entries - &other.entries))
    }

    pub fn scale(&self, s: Complex64) -> OperatorMatrix {
        self.with_entries(&self.entries * s)
    }

    pub fn neg(&self) -> OperatorMatrix {
        self.with_entries(-&self.entries)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> OperatorMatrix {
        self.with_entries(self.entries.adjoint())
    }

    /// Matrix product `self · other`.
    ///
    /// The kernel skips structural zeros of both operands, so products of
    /// ladder, diagonal, and tensor-lifted operators stay cheap at large D.
    pub fn mul(&self, other: &OperatorMatrix) -> Result<OperatorMatrix, FockError> {
        self.same_basis(other)?;
        Ok(self.with_entries(sparse_aware_product(&self.entries, &other.entries)))
    }

    pub fn pow(&self, k: u32) -> OperatorMatrix {
        let mut acc = OperatorMatrix::identity(&self.basis);
        for _ in 0..k {
            acc = self.with_entries(sparse_aware_product(&acc.entries, &self.entries));
        }
        acc
    }

    /// Kronecker product on the composite basis `self.basis ⊗ other.basis`.
    pub fn kron(&self, other: &OperatorMatrix) -> Result<OperatorMatrix, FockError> {
        let basis = self.basis.tensor(&other.basis)?;
        Ok(OperatorMatrix {
            basis,
            entries: self.entries.kronecker(&other.entries),
        })
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Frobenius norm of the submatrix on `rows` x `cols`.
    pub fn restricted_norm(&self, rows: &[usize], cols: &[usize]) -> f64 {
        let mut acc = 0.0;
        for &j in cols {
            for &i in rows {
                acc += self.entries[(i, j)].norm_sqr();
            }
        }
        acc.sqrt()
    }

    fn with_entries(&self, entries: DMatrix<Complex64>) -> OperatorMatrix {
        OperatorMatrix {
            basis: self.basis.clone(),
            entries,
        }
    }
}

fn first_non_finite(m: &DMatrix<Complex64>) -> Option<(usize, usize)> {
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            let z = m[(i, j)];
            if !z.re.is_finite() || !z.im.is_finite() {
                return Some((i, j));
            }
        }
    }
    None
}

fn sparse_aware_product(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = a.nrows();
    let zero = Complex64::new(0.0, 0.0);
    // Compressed columns of `a`: entries of column k live in starts[k]..starts[k + 1].
    let mut starts = Vec::with_capacity(a.ncols() + 1);
    let mut entries = Vec::new();
    starts.push(0);
    for col in a.column_iter() {
        for (i, v) in col.iter().enumerate() {
            if *v != zero {
                entries.push((i, *v));
            }
        }
        starts.push(entries.len());
    }
    let mut c = DMatrix::zeros(n, b.ncols());
    for (j, bcol) in b.column_iter().enumerate() {
        let mut out = c.column_mut(j);
        for (k, bkj) in bcol.iter().enumerate() {
            if *bkj == zero || starts[k] == starts[k + 1] {
                continue;
            }
            for &(i, aik) in &entries[starts[k]..starts[k + 1]] {
                out[i] += aik * bkj;
            }
        }
    }
    c
}

/// `[A, B]_q = AB - qBA`.
pub fn q_bracket(
    a: &OperatorMatrix,
    b: &OperatorMatrix,
    q: Complex64,
) -> Result<OperatorMatrix, FockError> {
    let ab = a.mul(b)?;
    let ba = b.mul(a)?;
    ab.sub(&ba.scale(q))
}

/// Residual norms of an operator with and without the top Fock levels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaskedResidual {
    pub raw_norm: f64,
    pub masked_norm: f64,
    pub mask_levels: usize,
}

/// Frobenius norm of `a` in full, and restricted to the levels that survive
/// dropping the top `mask_levels` of every mode.
pub fn masked_residual(
    a: &OperatorMatrix,
    mask_levels: usize,
) -> Result<MaskedResidual, FockError> {
    let min_mode = a.basis().mode_dims().iter().copied().min().unwrap_or(0);
    if mask_levels >= min_mode {
        return Err(FockError::invalid(format!(
            "mask_levels < D violated (mask_levels = {mask_levels}, D = {min_mode})"
        )));
    }
    let keep = a.basis().retained_indices(mask_levels);
    Ok(MaskedResidual {
        raw_norm: a.frobenius_norm(),
        masked_norm: a.restricted_norm(&keep, &keep),
        mask_levels,
    })
}
