use super::{RatMatrix, Rational};
use crate::error::{Error, Result};

/// A linear subspace of `Q^n`, stored by its canonical reduced row-echelon
/// basis. Two subspaces are equal exactly when their bases are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: RatMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: RatMatrix::zeros(0, ambient), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: RatMatrix::identity(ambient), pivots: (0..ambient).collect() }
    }

    /// Row space of `m`.
    pub fn from_matrix(m: &RatMatrix) -> Self {
        let r = m.rref();
        Subspace { ambient: m.cols(), basis: r.matrix.block(0..r.rank, 0..m.cols()), pivots: r.pivots }
    }

    /// Span of the given vectors, each of length `ambient`.
    pub fn from_vectors(ambient: usize, vecs: &[Vec<Rational>]) -> Self {
        Self::from_matrix(&RatMatrix::from_rows(ambient, vecs))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Canonical basis, one vector per row.
    pub fn basis(&self) -> &RatMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coefficients of `v` against the canonical basis, or `None` when `v`
    /// lies outside the subspace.
    pub fn solve_membership(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let coeffs: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let recon = self.basis.vec_mul(&coeffs);
        (recon.as_slice() == v).then_some(coeffs)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.solve_membership(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && (0..self.dim()).all(|i| other.contains(self.basis.row(i)))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of Q^{} and Q^{}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    /// `U + V`.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Self::from_matrix(&self.basis.vstack(&other.basis)))
    }

    /// `U ∩ V`, from the left kernel of the stacked bases.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(Self::zero(self.ambient));
        }
        let stacked = self.basis.vstack(&other.basis);
        let k = stacked.left_kernel();
        let d = self.dim();
        let coeffs = k.basis().block(0..k.dim(), 0..d);
        Ok(Self::from_matrix(&(&coeffs * &self.basis)))
    }

    /// The annihilator `{y : <x, y> = 0 for all x in U}`.
    pub fn annihilator(&self) -> Subspace {
        if self.dim() == 0 {
            return Self::full(self.ambient);
        }
        self.basis.kernel()
    }

    /// Some vectors completing the canonical basis to a basis of `Q^n`:
    /// the standard vectors at the non-pivot positions.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient).filter(|i| !self.pivots.contains(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }
}
