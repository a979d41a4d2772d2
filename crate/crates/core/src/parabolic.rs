//! Parabolic bundles on the projective line with finitely many marked points.
//!
//! The underlying bundle is split, `E = O(d_1) + ... + O(d_n)`, and is
//! described in the global polynomial frame of the affine chart. A section of
//! `Hom(O(d_j), O(d_i)) (x) O(k)` is then a polynomial of degree at most
//! `d_i - d_j + k`. At each marked point the flag is an invertible matrix
//! whose trailing `n - i + 1` columns span the step `E_{p,i}`.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::higgs::{DegreeCaps, HiggsField, Mode, SectionSpace};
use crate::{Poly, PolyMatrix, QMatrix, Rational};

/// The marked set `D` on the projective line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedCurve {
    points: Vec<Rational>,
}

impl MarkedCurve {
    pub fn new(points: Vec<Rational>) -> Result<Self> {
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(Error::InvalidBundle(format!("marked point {p} repeated")));
            }
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[Rational] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Degree of `K(D)` on the projective line, `r - 2`.
    pub fn log_canonical_degree(&self) -> i64 {
        self.points.len() as i64 - 2
    }

    /// `prod_p (z - p)`.
    pub fn divisor_polynomial(&self) -> Poly {
        self.points
            .iter()
            .fold(Poly::one(), |acc, p| &acc * &Poly::linear_root(p.clone()))
    }
}

/// A violated invariant reported by [`ParabolicBundle::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    PointCount {
        flags: usize,
        weights: usize,
        points: usize,
    },
    SplittingOrder,
    FlagShape {
        point: usize,
    },
    FlagNotInvertible {
        point: usize,
    },
    WeightCount {
        point: usize,
    },
    WeightRange {
        point: usize,
    },
    WeightsNotIncreasing {
        point: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::PointCount {
                flags,
                weights,
                points,
            } => write!(
                f,
                "{points} marked points but {flags} flags and {weights} weight vectors"
            ),
            Violation::SplittingOrder => write!(f, "splitting degrees not non-increasing"),
            Violation::FlagShape { point } => {
                write!(f, "flag at point {point} has the wrong shape")
            }
            Violation::FlagNotInvertible { point } => {
                write!(f, "flag not invertible at point {point}")
            }
            Violation::WeightCount { point } => {
                write!(f, "weight vector at point {point} does not match the rank")
            }
            Violation::WeightRange { point } => write!(f, "weight outside [0, 1) at point {point}"),
            Violation::WeightsNotIncreasing { point } => {
                write!(f, "weights not increasing at point {point}")
            }
        }
    }
}

/// A saturated line subbundle `O(e) -> E`, given by its section.
#[derive(Debug, Clone, PartialEq)]
pub struct SubbundleData {
    pub degree: i64,
    pub section: Vec<Poly>,
    /// Per marked point, the largest `i` (1-based) with `F_p` inside `E_{p,i}`.
    pub incidence: Vec<usize>,
    pub induced_weights: Vec<Rational>,
}

impl SubbundleData {
    pub fn parabolic_degree(&self) -> Rational {
        self.induced_weights
            .iter()
            .fold(Rational::from_integer(self.degree.into()), |acc, w| acc + w)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParabolicBundle {
    curve: MarkedCurve,
    splitting: Vec<i64>,
    flags: Vec<QMatrix>,
    weights: Vec<Vec<Rational>>,
}

impl ParabolicBundle {
    /// Assembles the data without checking it; see [`ParabolicBundle::validate`].
    pub fn new(
        curve: MarkedCurve,
        splitting: Vec<i64>,
        flags: Vec<QMatrix>,
        weights: Vec<Vec<Rational>>,
    ) -> Self {
        Self {
            curve,
            splitting,
            flags,
            weights,
        }
    }

    /// A bundle whose flags are the coordinate flags at every point.
    pub fn with_standard_flags(
        curve: MarkedCurve,
        splitting: Vec<i64>,
        weights: Vec<Vec<Rational>>,
    ) -> Self {
        let n = splitting.len();
        let flags = vec![QMatrix::identity(n); curve.len()];
        Self::new(curve, splitting, flags, weights)
    }

    pub fn curve(&self) -> &MarkedCurve {
        &self.curve
    }

    pub fn splitting(&self) -> &[i64] {
        &self.splitting
    }

    pub fn flags(&self) -> &[QMatrix] {
        &self.flags
    }

    pub fn weights(&self) -> &[Vec<Rational>] {
        &self.weights
    }

    pub fn rank(&self) -> usize {
        self.splitting.len()
    }

    pub fn degree(&self) -> i64 {
        self.splitting.iter().sum()
    }

    pub fn validate(&self) -> Vec<Violation> {
        let n = self.rank();
        let r = self.curve.len();
        let mut out = Vec::new();
        if self.flags.len() != r || self.weights.len() != r {
            out.push(Violation::PointCount {
                flags: self.flags.len(),
                weights: self.weights.len(),
                points: r,
            });
        }
        if self.splitting.windows(2).any(|w| w[0] < w[1]) {
            out.push(Violation::SplittingOrder);
        }
        for (point, flag) in self.flags.iter().enumerate() {
            if flag.rows() != n || flag.cols() != n {
                out.push(Violation::FlagShape { point });
            } else if flag.rank() < n {
                out.push(Violation::FlagNotInvertible { point });
            }
        }
        for (point, w) in self.weights.iter().enumerate() {
            if w.len() != n {
                out.push(Violation::WeightCount { point });
            }
            if w.iter()
                .any(|a| a < &Rational::zero() || a >= &Rational::one())
            {
                out.push(Violation::WeightRange { point });
            }
            if w.windows(2).any(|pair| pair[0] >= pair[1]) {
                out.push(Violation::WeightsNotIncreasing { point });
            }
        }
        out
    }

    pub fn ensure_valid(&self) -> Result<()> {
        match self.validate().first() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidBundle(v.to_string())),
        }
    }

    /// `deg E + sum_p sum_i alpha_i(p)` (full flags: each graded piece is a line).
    pub fn parabolic_degree(&self) -> Rational {
        self.weights
            .iter()
            .flatten()
            .fold(Rational::from_integer(self.degree().into()), |acc, w| {
                acc + w
            })
    }

    pub fn parabolic_slope(&self) -> Rational {
        self.parabolic_degree() / Rational::from_integer((self.rank() as i64).into())
    }

    /// `F_p^{-1} Phi(p) F_p`, the value at the `point`-th marked point in the
    /// flag basis.
    pub fn residue_in_flag_basis(&self, phi: &PolyMatrix, point: usize) -> QMatrix {
        let p = &self.curve.points()[point];
        let value = phi.map(|e| e.eval(p));
        let flag = &self.flags[point];
        let inv = flag.inverse().expect("flag not invertible");
        &(&inv * &value) * flag
    }

    /// Whether `phi` satisfies the flag condition of `mode` at every point.
    pub fn satisfies_flag_conditions(&self, phi: &PolyMatrix, mode: Mode) -> bool {
        (0..self.curve.len()).all(|point| {
            let m = self.residue_in_flag_basis(phi, point);
            hom_zero_pattern(&self.weights[point], &self.weights[point], mode)
                .into_iter()
                .all(|(l, c)| m.get(l, c).is_zero())
        })
    }

    /// Linear conditions (one row per condition, one column per coefficient
    /// slot of `caps`) cutting out the fields that satisfy the flag rule of
    /// `mode` at every marked point.
    pub fn flag_condition_rows(&self, caps: &DegreeCaps, mode: Mode) -> Vec<Vec<Rational>> {
        let slots: Vec<(usize, usize, usize)> = caps.slots().collect();
        let mut rows = Vec::new();
        for (point, p) in self.curve.points().iter().enumerate() {
            let flag = &self.flags[point];
            let inv = flag.inverse().expect("flag not invertible");
            let pattern = hom_zero_pattern(&self.weights[point], &self.weights[point], mode);
            let mut powers = vec![Rational::one()];
            for (l, c) in pattern {
                let row = slots
                    .iter()
                    .map(|&(i, j, k)| {
                        while powers.len() <= k {
                            let next = powers.last().unwrap() * p;
                            powers.push(next);
                        }
                        inv.get(l, i) * flag.get(j, c) * &powers[k]
                    })
                    .collect();
                rows.push(row);
            }
        }
        rows
    }

    /// Global sections of `PEnd(E) (x) O(twist)` (or the strongly parabolic
    /// version), as an explicit basis.
    pub fn hom_section_space(&self, twist: i64, mode: Mode) -> SectionSpace {
        let caps = DegreeCaps::endomorphisms(&self.splitting, twist);
        let rows = self.flag_condition_rows(&caps, mode);
        let basis = solve_section_space(&caps, rows)
            .into_iter()
            .map(|m| HiggsField::new(m, caps.clone(), mode).unwrap())
            .collect();
        SectionSpace::new(basis, caps, mode)
    }

    /// Incidence indices of the line spanned by `section` at each point.
    pub fn line_incidence(&self, section: &[Poly]) -> Result<Vec<usize>> {
        if section.len() != self.rank() {
            return Err(Error::DimensionMismatch(
                "section length differs from rank".into(),
            ));
        }
        self.curve
            .points()
            .iter()
            .enumerate()
            .map(|(point, p)| {
                let v: Vec<Rational> = section.iter().map(|s| s.eval(p)).collect();
                if v.iter().all(Zero::is_zero) {
                    return Err(Error::Precondition(format!(
                        "section vanishes at marked point {p}"
                    )));
                }
                Ok(containment_index(&self.flags[point], &[v]))
            })
            .collect()
    }

    /// Weights `alpha'(p)` that the parabolic structure induces on the line
    /// subbundle spanned by `sub.section`.
    pub fn induced_subbundle_weights(&self, sub: &SubbundleData) -> Result<Vec<Rational>> {
        let incidence = self.line_incidence(&sub.section)?;
        Ok(incidence
            .iter()
            .zip(&self.weights)
            .map(|(&i, w)| w[i - 1].clone())
            .collect())
    }

    /// The parabolic dual.
    ///
    /// Nonzero weights go to `1 - alpha` in reverse order, a zero weight stays
    /// zero, and every nonzero weight lowers the underlying degree by one.
    /// The flag is the annihilator filtration in the dual frame.
    pub fn dual_structure(&self) -> ParabolicBundle {
        let n = self.rank();
        let mut splitting: Vec<i64> = self.splitting.iter().rev().map(|d| -d).collect();
        let mut flags = Vec::with_capacity(self.flags.len());
        let mut weights = Vec::with_capacity(self.weights.len());
        let mut shift = 0i64;
        // dual frame: reversing the summands reverses the coordinates
        let reverse = QMatrix::from_fn(n, n, |i, j| {
            if i + j + 1 == n {
                Rational::one()
            } else {
                Rational::zero()
            }
        });
        for (flag, w) in self.flags.iter().zip(&self.weights) {
            let dual_basis = &reverse * &flag.inverse().expect("flag not invertible").transpose();
            let has_zero = w.first().is_some_and(Zero::is_zero);
            let mut order = Vec::with_capacity(n);
            let mut dw = Vec::with_capacity(n);
            if has_zero {
                order.push(0);
                dw.push(Rational::zero());
            }
            let start = usize::from(has_zero);
            for i in (start..n).rev() {
                order.push(i);
                dw.push(Rational::one() - &w[i]);
                shift -= 1;
            }
            flags.push(QMatrix::from_fn(n, n, |i, j| {
                dual_basis.get(i, order[j]).clone()
            }));
            weights.push(dw);
        }
        shift_splitting(&mut splitting, shift);
        let (splitting, flags) = sort_frame(splitting, flags);
        ParabolicBundle::new(self.curve.clone(), splitting, flags, weights)
    }

    /// The parabolic tensor product with `other` on the same curve.
    ///
    /// Weights add; a sum reaching 1 drops by 1 and raises the underlying
    /// degree by one. Flags are the tensor products of the flag bases, ordered
    /// by the resulting weight. Repeated weights can occur, in which case the
    /// result is a partial flag and [`ParabolicBundle::validate`] says so.
    pub fn tensor_structure(&self, other: &ParabolicBundle) -> Result<ParabolicBundle> {
        if self.curve != other.curve {
            return Err(Error::InvalidBundle(
                "tensor product over different curves".into(),
            ));
        }
        let (n, m) = (self.rank(), other.rank());
        let mut splitting = Vec::with_capacity(n * m);
        for a in &self.splitting {
            for b in &other.splitting {
                splitting.push(a + b);
            }
        }
        let mut flags = Vec::new();
        let mut weights = Vec::new();
        let mut shift = 0i64;
        for point in 0..self.curve.len() {
            let (f, g) = (&self.flags[point], &other.flags[point]);
            let mut cols: Vec<(Rational, usize, usize)> = Vec::with_capacity(n * m);
            for i in 0..n {
                for j in 0..m {
                    let mut w = &self.weights[point][i] + &other.weights[point][j];
                    if w >= Rational::one() {
                        w -= Rational::one();
                        shift += 1;
                    }
                    cols.push((w, i, j));
                }
            }
            cols.sort_by(|x, y| x.0.cmp(&y.0));
            let kron = QMatrix::from_fn(n * m, n * m, |row, col| {
                let (_, i, j) = &cols[col];
                f.get(row / m, *i) * g.get(row % m, *j)
            });
            flags.push(kron);
            weights.push(cols.into_iter().map(|c| c.0).collect());
        }
        shift_splitting(&mut splitting, shift);
        let (splitting, flags) = sort_frame(splitting, flags);
        Ok(ParabolicBundle::new(
            self.curve.clone(),
            splitting,
            flags,
            weights,
        ))
    }
}

/// Entries `(row, col)` of the flag-basis matrix forced to vanish by the rule
/// `alpha_i > alpha'_j  =>  phi(E_{p,i}) in E'_{p,j+1}` (`>=` in strong mode).
pub fn hom_zero_pattern(
    source: &[Rational],
    target: &[Rational],
    mode: Mode,
) -> Vec<(usize, usize)> {
    let mut zero = vec![vec![false; source.len()]; target.len()];
    for (i, a) in source.iter().enumerate() {
        for (j, b) in target.iter().enumerate() {
            let applies = match mode {
                Mode::Parabolic => a > b,
                Mode::Strong => a >= b,
            };
            if applies {
                for row in zero.iter_mut().take(j + 1) {
                    for cell in row.iter_mut().skip(i) {
                        *cell = true;
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    for (l, row) in zero.iter().enumerate() {
        for (c, &z) in row.iter().enumerate() {
            if z {
                out.push((l, c));
            }
        }
    }
    out
}

/// Largest `i` (1-based) with `span(vectors)` inside the `i`-th flag step.
pub fn containment_index(flag: &QMatrix, vectors: &[Vec<Rational>]) -> usize {
    let inv = flag.inverse().expect("flag not invertible");
    let n = flag.rows();
    vectors
        .iter()
        .map(|v| {
            let coords = inv.mul_vec(v);
            coords.iter().position(|c| !c.is_zero()).unwrap_or(n)
        })
        .min()
        .unwrap_or(n)
        + 1
}

/// Induced weights on a subspace: for every step where the intersection with
/// the flag drops in dimension, the weight of the deepest step still
/// containing the corresponding piece. Returned in increasing order.
pub fn induced_subspace_weights(
    flag: &QMatrix,
    weights: &[Rational],
    basis: &[Vec<Rational>],
) -> Vec<Rational> {
    let n = flag.rows();
    let inv = flag.inverse().expect("flag not invertible");
    let coords: Vec<Vec<Rational>> = basis.iter().map(|v| inv.mul_vec(v)).collect();
    // dim(F cap E_{p,i}) for i = 1..n+1
    let dims: Vec<usize> = (0..=n)
        .map(|i| {
            if coords.is_empty() {
                return 0;
            }
            // vectors in F whose first i coordinates vanish
            let constraints =
                QMatrix::from_fn(i, coords.len(), |row, col| coords[col][row].clone());
            let total = QMatrix::from_rows(coords.clone()).unwrap().rank();
            if i == 0 {
                total
            } else {
                let kernel = constraints.kernel_basis();
                let vecs: Vec<Vec<Rational>> = kernel
                    .iter()
                    .map(|k| {
                        (0..n)
                            .map(|c| {
                                k.iter()
                                    .zip(&coords)
                                    .fold(Rational::zero(), |acc, (a, v)| acc + a * &v[c])
                            })
                            .collect()
                    })
                    .collect();
                if vecs.is_empty() {
                    0
                } else {
                    QMatrix::from_rows(vecs).unwrap().rank()
                }
            }
        })
        .collect();
    let mut out = Vec::new();
    for i in 0..n {
        for _ in dims[i + 1]..dims[i] {
            out.push(weights[i].clone());
        }
    }
    out
}

pub(crate) fn solve_section_space(caps: &DegreeCaps, rows: Vec<Vec<Rational>>) -> Vec<PolyMatrix> {
    let unknowns = caps.unknowns();
    let system = QMatrix::from_fn(rows.len(), unknowns, |i, j| rows[i][j].clone());
    system
        .kernel_basis()
        .into_iter()
        .map(|v| caps.assemble(&v))
        .collect()
}

/// Moves the total degree by `delta`, one unit at a time, lowering the
/// largest summand or raising the smallest one (generic elementary
/// modification).
fn shift_splitting(splitting: &mut [i64], delta: i64) {
    if splitting.is_empty() {
        return;
    }
    for _ in 0..delta.unsigned_abs() {
        if delta < 0 {
            let i = (0..splitting.len())
                .max_by_key(|&i| (splitting[i], -(i as i64)))
                .unwrap();
            splitting[i] -= 1;
        } else {
            let i = (0..splitting.len())
                .min_by_key(|&i| (splitting[i], -(i as i64)))
                .unwrap();
            splitting[i] += 1;
        }
    }
}

/// Sorts the summands into non-increasing order, permuting the frame rows
/// of every flag to match.
fn sort_frame(splitting: Vec<i64>, flags: Vec<QMatrix>) -> (Vec<i64>, Vec<QMatrix>) {
    let mut order: Vec<usize> = (0..splitting.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(splitting[i]));
    let sorted = order.iter().map(|&i| splitting[i]).collect();
    let flags = flags
        .into_iter()
        .map(|f| QMatrix::from_fn(f.rows(), f.cols(), |i, j| f.get(order[i], j).clone()))
        .collect();
    (sorted, flags)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};

    fn curve(points: &[i64]) -> MarkedCurve {
        MarkedCurve::new(points.iter().map(|&p| rat(p)).collect()).unwrap()
    }

    fn w(a: (i64, i64), b: (i64, i64)) -> Vec<Rational> {
        vec![ratio(a.0, a.1), ratio(b.0, b.1)]
    }

    #[test]
    fn duplicate_points_rejected() {
        assert!(MarkedCurve::new(vec![rat(1), rat(2), rat(1)]).is_err());
    }

    #[test]
    fn validate_examples() {
        let ok =
            ParabolicBundle::with_standard_flags(curve(&[0]), vec![0, 0], vec![w((1, 4), (3, 4))]);
        assert!(ok.validate().is_empty());
        let swapped =
            ParabolicBundle::with_standard_flags(curve(&[0]), vec![0, 0], vec![w((3, 4), (1, 4))]);
        assert_eq!(
            swapped.validate(),
            vec![Violation::WeightsNotIncreasing { point: 0 }]
        );
        assert!(swapped.validate()[0]
            .to_string()
            .contains("weights not increasing"));
        let singular =
            QMatrix::from_rows(vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)]]).unwrap();
        let bad = ParabolicBundle::new(
            curve(&[0]),
            vec![0, 0],
            vec![singular],
            vec![w((1, 4), (3, 4))],
        );
        assert_eq!(
            bad.validate(),
            vec![Violation::FlagNotInvertible { point: 0 }]
        );
        assert!(bad.validate()[0]
            .to_string()
            .contains("flag not invertible"));
    }

    #[test]
    fn parabolic_degree_examples() {
        let e =
            ParabolicBundle::with_standard_flags(curve(&[0]), vec![0, 0], vec![w((1, 4), (3, 4))]);
        assert_eq!(e.parabolic_degree(), rat(1));
        let e = ParabolicBundle::with_standard_flags(curve(&[]), vec![2, -1], vec![]);
        assert_eq!(e.parabolic_degree(), rat(1));
        let e = ParabolicBundle::with_standard_flags(
            curve(&[0, 1]),
            vec![0, 0],
            vec![w((0, 1), (1, 2)); 2],
        );
        assert_eq!(e.parabolic_degree(), rat(1));
    }

    #[test]
    fn induced_weight_examples() {
        // E_{p,2} = span(e2)
        let e =
            ParabolicBundle::with_standard_flags(curve(&[0]), vec![0, 0], vec![w((1, 4), (3, 4))]);
        let line = |u: i64, v: i64| SubbundleData {
            degree: 0,
            section: vec![Poly::constant(rat(u)), Poly::constant(rat(v))],
            incidence: vec![],
            induced_weights: vec![],
        };
        assert_eq!(
            e.induced_subbundle_weights(&line(0, 1)).unwrap(),
            vec![ratio(3, 4)]
        );
        assert_eq!(
            e.induced_subbundle_weights(&line(1, 0)).unwrap(),
            vec![ratio(1, 4)]
        );
        assert_eq!(
            e.induced_subbundle_weights(&line(1, 1)).unwrap(),
            vec![ratio(1, 4)]
        );
    }

    #[test]
    fn zero_patterns_for_full_flags() {
        let ws = vec![rat(0), ratio(1, 3), ratio(2, 3)];
        let par = hom_zero_pattern(&ws, &ws, Mode::Parabolic);
        assert_eq!(par, vec![(0, 1), (0, 2), (1, 2)]);
        let strong = hom_zero_pattern(&ws, &ws, Mode::Strong);
        assert_eq!(strong, vec![(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]);
    }

    #[test]
    fn constant_endomorphisms_without_points() {
        let e = ParabolicBundle::with_standard_flags(curve(&[]), vec![0, 0], vec![]);
        assert_eq!(e.hom_section_space(0, Mode::Parabolic).dimension(), 4);
        assert_eq!(e.hom_section_space(0, Mode::Strong).dimension(), 4);
    }

    #[test]
    fn dual_examples() {
        let e =
            ParabolicBundle::with_standard_flags(curve(&[0]), vec![0, 0], vec![w((1, 4), (3, 4))]);
        let d = e.dual_structure();
        assert_eq!(d.weights()[0], w((1, 4), (3, 4)));
        assert_eq!(d.degree(), -2);
        assert_eq!(e.parabolic_degree() + d.parabolic_degree(), rat(0));

        let e =
            ParabolicBundle::with_standard_flags(curve(&[0]), vec![0, 0], vec![w((0, 1), (1, 2))]);
        let d = e.dual_structure();
        assert_eq!(d.weights()[0], w((0, 1), (1, 2)));
        assert_eq!(d.degree(), -1);
        assert!(d.validate().is_empty());

        let e = ParabolicBundle::with_standard_flags(curve(&[]), vec![3, -1], vec![]);
        assert_eq!(e.dual_structure().splitting(), &[1, -3]);
    }

    #[test]
    fn tensor_rank_one_examples() {
        let c = curve(&[0]);
        let a = ParabolicBundle::with_standard_flags(c.clone(), vec![0], vec![vec![ratio(1, 4)]]);
        let b = ParabolicBundle::with_standard_flags(c.clone(), vec![0], vec![vec![ratio(1, 2)]]);
        let t = a.tensor_structure(&b).unwrap();
        assert_eq!(t.weights()[0], vec![ratio(3, 4)]);
        assert_eq!(t.splitting(), &[0]);
        let a = ParabolicBundle::with_standard_flags(c, vec![0], vec![vec![ratio(3, 4)]]);
        let t = a.tensor_structure(&b).unwrap();
        assert_eq!(t.weights()[0], vec![ratio(1, 4)]);
        assert_eq!(t.splitting(), &[1]);
    }

    #[test]
    fn subspace_weights() {
        let flag = QMatrix::identity(3);
        let ws = vec![rat(0), ratio(1, 3), ratio(2, 3)];
        let e2 = vec![rat(0), rat(1), rat(0)];
        let e3 = vec![rat(0), rat(0), rat(1)];
        let e1 = vec![rat(1), rat(0), rat(0)];
        assert_eq!(
            induced_subspace_weights(&flag, &ws, std::slice::from_ref(&e3)),
            vec![ratio(2, 3)]
        );
        assert_eq!(
            induced_subspace_weights(&flag, &ws, &[e2.clone(), e3.clone()]),
            vec![ratio(1, 3), ratio(2, 3)]
        );
        assert_eq!(
            induced_subspace_weights(&flag, &ws, &[e1, e3]),
            vec![rat(0), ratio(2, 3)]
        );
    }
}
