//! Higgs fields as capped polynomial matrices, and finite-dimensional spaces
//! of them.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::{Poly, PolyMatrix, Rational};

/// Which flag condition a field satisfies at the marked points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    /// Residues preserve the flags.
    Parabolic,
    /// Residues strictly lower the flags.
    Strong,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Parabolic => write!(f, "parabolic"),
            Mode::Strong => write!(f, "strong"),
        }
    }
}

/// Per-entry degree bounds of a polynomial matrix; a negative cap forces the
/// entry to vanish.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeCaps {
    rows: usize,
    cols: usize,
    caps: Vec<i64>,
    offsets: Vec<usize>,
}

impl DegreeCaps {
    pub fn new(rows: usize, cols: usize, caps: Vec<i64>) -> Self {
        assert_eq!(caps.len(), rows * cols, "one cap per entry");
        let mut offsets = Vec::with_capacity(caps.len() + 1);
        let mut acc = 0usize;
        for &c in &caps {
            offsets.push(acc);
            acc += (c + 1).max(0) as usize;
        }
        offsets.push(acc);
        Self {
            rows,
            cols,
            caps,
            offsets,
        }
    }

    /// Caps `d_i - d_j + twist` of `Hom(E, E) (x) O(twist)` for `E = sum O(d_i)`.
    pub fn endomorphisms(splitting: &[i64], twist: i64) -> Self {
        let n = splitting.len();
        let caps = (0..n * n)
            .map(|idx| splitting[idx / n] - splitting[idx % n] + twist)
            .collect();
        Self::new(n, n, caps)
    }

    /// Caps `l - d_i - d_j` of a bilinear form `E (x) E -> O(l)`.
    pub fn bilinear(splitting: &[i64], target_degree: i64) -> Self {
        let n = splitting.len();
        let caps = (0..n * n)
            .map(|idx| target_degree - splitting[idx / n] - splitting[idx % n])
            .collect();
        Self::new(n, n, caps)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn cap(&self, i: usize, j: usize) -> i64 {
        self.caps[i * self.cols + j]
    }

    /// Number of free coefficients.
    pub fn unknowns(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    /// Coordinate index of the `z^k` coefficient of entry `(i, j)`.
    pub fn index(&self, i: usize, j: usize, k: usize) -> usize {
        debug_assert!((k as i64) <= self.cap(i, j));
        self.offsets[i * self.cols + j] + k
    }

    /// Entry, degree pairs in coordinate order.
    pub fn slots(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..self.rows * self.cols).flat_map(move |idx| {
            let cap = self.caps[idx];
            (0..(cap + 1).max(0) as usize).map(move |k| (idx / self.cols, idx % self.cols, k))
        })
    }

    pub fn respects(&self, m: &PolyMatrix) -> bool {
        m.rows() == self.rows
            && m.cols() == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = m.get(i, j);
                    e.is_zero() || e.signed_degree() <= self.cap(i, j)
                })
            })
    }

    /// Assembles the polynomial matrix with the given coefficient vector.
    pub fn assemble(&self, coords: &[Rational]) -> PolyMatrix {
        assert_eq!(coords.len(), self.unknowns(), "coordinate vector length");
        PolyMatrix::from_fn(self.rows, self.cols, |i, j| {
            let cap = self.cap(i, j);
            if cap < 0 {
                return Poly::zero();
            }
            let start = self.offsets[i * self.cols + j];
            Poly::new(coords[start..start + cap as usize + 1].to_vec())
        })
    }

    /// Coefficient vector of a matrix that respects the caps.
    pub fn coordinates(&self, m: &PolyMatrix) -> Result<Vec<Rational>> {
        if !self.respects(m) {
            return Err(Error::Precondition("matrix exceeds its degree caps".into()));
        }
        Ok(self.slots().map(|(i, j, k)| m.get(i, j).coeff(k)).collect())
    }

    /// The matrix whose only nonzero coefficient is slot `(i, j, k)`.
    pub fn unit(&self, i: usize, j: usize, k: usize) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(self.rows, self.cols);
        m.set(i, j, Poly::monomial(Rational::from_integer(1.into()), k));
        m
    }
}

/// A twisted endomorphism `E -> E (x) O(twist)` together with its caps and the
/// flag condition it was built to satisfy.
#[derive(Debug, Clone, PartialEq)]
pub struct HiggsField {
    matrix: PolyMatrix,
    caps: DegreeCaps,
    mode: Mode,
}

impl HiggsField {
    pub fn new(matrix: PolyMatrix, caps: DegreeCaps, mode: Mode) -> Result<Self> {
        if !caps.respects(&matrix) {
            return Err(Error::Precondition(
                "higgs field exceeds its degree caps".into(),
            ));
        }
        Ok(Self { matrix, caps, mode })
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    pub fn caps(&self) -> &DegreeCaps {
        &self.caps
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn scale(&self, t: &Rational) -> Self {
        Self {
            matrix: self.matrix.map(|p| p.scale(t)),
            caps: self.caps.clone(),
            mode: self.mode,
        }
    }
}

/// A space of Higgs fields given by an explicit basis.
#[derive(Debug, Clone, PartialEq)]
pub struct SectionSpace {
    basis: Vec<HiggsField>,
    caps: DegreeCaps,
    mode: Mode,
}

impl SectionSpace {
    pub fn new(basis: Vec<HiggsField>, caps: DegreeCaps, mode: Mode) -> Self {
        Self { basis, caps, mode }
    }

    pub fn basis(&self) -> &[HiggsField] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn caps(&self) -> &DegreeCaps {
        &self.caps
    }

    /// `sum c_i Phi_i`.
    pub fn combination(&self, coeffs: &[Rational]) -> HiggsField {
        assert_eq!(
            coeffs.len(),
            self.basis.len(),
            "one coefficient per basis element"
        );
        let n = self.caps.rows();
        let mut m = PolyMatrix::zeros(n, self.caps.cols());
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            m = &m + &b.matrix.map(|p| p.scale(c));
        }
        HiggsField {
            matrix: m,
            caps: self.caps.clone(),
            mode: self.mode,
        }
    }

    /// Whether `phi` lies in the span of the basis.
    pub fn contains(&self, phi: &HiggsField) -> bool {
        let Ok(target) = self.caps.coordinates(phi.matrix()) else {
            return false;
        };
        let mut rows: Vec<Vec<Rational>> = self
            .basis
            .iter()
            .map(|b| self.caps.coordinates(b.matrix()).unwrap())
            .collect();
        let before = crate::QMatrix::from_rows(rows.clone())
            .map(|m| m.rank())
            .unwrap_or(0);
        rows.push(target);
        let after = crate::QMatrix::from_rows(rows).unwrap().rank();
        before == after
    }

    /// Whether every basis element of `self` lies in the span of `other`.
    pub fn is_subspace_of(&self, other: &SectionSpace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn caps_layout() {
        let caps = DegreeCaps::endomorphisms(&[1, -1], 0);
        // caps 0, 2, -2, 0
        assert_eq!(caps.unknowns(), (1 + 3) + 1);
        assert_eq!(caps.index(0, 1, 2), 3);
        assert_eq!(caps.index(1, 1, 0), 4);
        let coords: Vec<Rational> = (1..=5).map(rat).collect();
        let m = caps.assemble(&coords);
        assert!(m.get(1, 0).is_zero());
        assert_eq!(caps.coordinates(&m).unwrap(), coords);
        let mut bad = m.clone();
        bad.set(1, 0, Poly::constant(rat(1)));
        assert!(!caps.respects(&bad));
    }
}
