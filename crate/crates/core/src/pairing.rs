//! Symplectic and orthogonal structures `E (x) E -> L` and the Higgs fields
//! compatible with them.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::higgs::{DegreeCaps, HiggsField, Mode, SectionSpace};
use crate::parabolic::{solve_section_space, ParabolicBundle, SubbundleData};
use crate::roots::rational_roots;
use crate::scalar::format_rational;
use crate::{Poly, PolyMatrix, QMatrix, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symmetry {
    /// Alternating form: symplectic structure.
    Antisymmetric,
    /// Symmetric form: orthogonal structure.
    Symmetric,
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symmetry::Antisymmetric => write!(f, "antisymmetric"),
            Symmetry::Symmetric => write!(f, "symmetric"),
        }
    }
}

/// A bilinear form `omega(v, w) = v^T Omega w` with values in `O(l)`; the
/// target line bundle carries trivial weights.
#[derive(Debug, Clone, PartialEq)]
pub struct PairingForm {
    omega: PolyMatrix,
    symmetry: Symmetry,
    target_degree: i64,
}

impl PairingForm {
    pub fn new(omega: PolyMatrix, symmetry: Symmetry, target_degree: i64) -> Self {
        Self {
            omega,
            symmetry,
            target_degree,
        }
    }

    /// The constant standard form of rank `n`: `[[0, I], [-I, 0]]` when
    /// alternating, the antidiagonal of ones when symmetric.
    pub fn standard(n: usize, symmetry: Symmetry, target_degree: i64) -> Result<Self> {
        let m = standard_matrix(n, symmetry)?;
        Ok(Self::new(
            m.map(|c| Poly::constant(c.clone())),
            symmetry,
            target_degree,
        ))
    }

    pub fn omega(&self) -> &PolyMatrix {
        &self.omega
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn target_degree(&self) -> i64 {
        self.target_degree
    }

    pub fn rank(&self) -> usize {
        self.omega.rows()
    }

    pub fn value_at(&self, p: &Rational) -> QMatrix {
        self.omega.map(|e| e.eval(p))
    }

    pub fn caps(&self, splitting: &[i64]) -> DegreeCaps {
        DegreeCaps::bilinear(splitting, self.target_degree)
    }

    /// `omega(s, t)` for two sections.
    pub fn evaluate(&self, s: &[Poly], t: &[Poly]) -> Poly {
        let n = self.rank();
        let mut acc = Poly::zero();
        for (i, si) in s.iter().enumerate().take(n) {
            for (j, tj) in t.iter().enumerate().take(n) {
                let w = self.omega.get(i, j);
                if !w.is_zero() {
                    acc = &acc + &(&(si * w) * tj);
                }
            }
        }
        acc
    }
}

pub fn standard_matrix(n: usize, symmetry: Symmetry) -> Result<QMatrix> {
    match symmetry {
        Symmetry::Antisymmetric => {
            if n % 2 == 1 {
                return Err(Error::OddDimension(n));
            }
            let m = n / 2;
            Ok(QMatrix::from_fn(n, n, |i, j| {
                if j == i + m {
                    Rational::one()
                } else if i == j + m {
                    -Rational::one()
                } else {
                    Rational::zero()
                }
            }))
        }
        Symmetry::Symmetric => Ok(QMatrix::from_fn(n, n, |i, j| {
            if i + j + 1 == n {
                Rational::one()
            } else {
                Rational::zero()
            }
        })),
    }
}

/// Outcome of [`check_pairing_iso`]; empty `failures` means the check passed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PairingDiagnostics {
    pub failures: Vec<String>,
}

impl PairingDiagnostics {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that `P` is a nondegenerate form of the declared symmetry whose
/// induced map `E -> L (x) E^dual` is a parabolic isomorphism.
///
/// Over a marked point with flag basis `f_1..f_n`, the map respects the
/// parabolic structures exactly when the dual weight multiset agrees with the
/// original one and `omega(f_a, f_b)(p) = 0` whenever `alpha_a + alpha_b > 1`
/// (for full flags with paired weights this is isotropy of the flag).
pub fn check_pairing_iso(e: &ParabolicBundle, p: &PairingForm) -> PairingDiagnostics {
    let mut failures = Vec::new();
    let n = e.rank();
    if p.rank() != n || p.omega.cols() != n {
        failures.push(format!(
            "pairing has size {}x{} but the bundle has rank {n}",
            p.rank(),
            p.omega.cols()
        ));
        return PairingDiagnostics { failures };
    }
    let ok_symmetry = match p.symmetry {
        Symmetry::Antisymmetric => p.omega.is_antisymmetric(),
        Symmetry::Symmetric => p.omega.is_symmetric(),
    };
    if !ok_symmetry {
        failures.push(format!("omega is not {}", p.symmetry));
    }
    if n as i64 * p.target_degree != 2 * e.degree() {
        failures.push(format!(
            "target degree {} does not match 2 deg(E) / rank = {}/{n}",
            p.target_degree,
            2 * e.degree()
        ));
    }
    let caps = p.caps(e.splitting());
    if !caps.respects(&p.omega) {
        failures.push("omega exceeds the degree caps l - d_i - d_j".into());
    }
    match p.omega.determinant() {
        Ok(det) if det.is_zero() => failures.push("det vanishes identically".into()),
        Ok(det) if !det.is_constant() => match rational_roots(&det).first() {
            Some(root) => failures.push(format!("det vanishes at z = {}", format_rational(root))),
            None => failures.push(format!("det is not constant: {det}")),
        },
        Ok(_) => {}
        Err(err) => failures.push(err.to_string()),
    }
    if !e.validate().is_empty() {
        failures.push("bundle fails validation".into());
        return PairingDiagnostics { failures };
    }
    let dual = e.dual_structure();
    for (point, z) in e.curve().points().iter().enumerate() {
        let mut lhs = e.weights()[point].clone();
        let mut rhs = dual.weights()[point].clone();
        lhs.sort();
        rhs.sort();
        if lhs != rhs {
            failures.push(format!("dual weights differ at point {point}"));
            continue;
        }
        let flag = &e.flags()[point];
        let gram = &(&flag.transpose() * &p.value_at(z)) * flag;
        let w = &e.weights()[point];
        let one = Rational::one();
        let clash =
            (0..n).any(|a| (0..n).any(|b| &w[a] + &w[b] > one && !gram.get(a, b).is_zero()));
        if clash {
            failures.push(format!("flag not isotropic at point {point}"));
        }
    }
    PairingDiagnostics { failures }
}

/// Linear conditions on the coefficient slots of `caps` expressing
/// `Phi^T Omega + Omega Phi = 0`.
pub fn compatibility_rows(caps: &DegreeCaps, p: &PairingForm) -> Vec<Vec<Rational>> {
    let n = p.rank();
    let omega = &p.omega;
    let slots: Vec<(usize, usize, usize)> = caps.slots().collect();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i..n {
            // entry (i, j) as a polynomial per slot (a, b, k)
            let contributions: Vec<Poly> = slots
                .iter()
                .map(|&(a, b, k)| {
                    let mut acc = Poly::zero();
                    if b == i {
                        acc = &acc + &omega.get(a, j).shift(k);
                    }
                    if b == j {
                        acc = &acc + &omega.get(i, a).shift(k);
                    }
                    acc
                })
                .collect();
            let top = contributions.iter().filter_map(Poly::degree).max();
            if let Some(top) = top {
                for d in 0..=top {
                    let row: Vec<Rational> = contributions.iter().map(|c| c.coeff(d)).collect();
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
    }
    rows
}

/// Sections of `E -> E (x) K(D)` that satisfy the flag rule of `mode` and are
/// compatible with `P`.
pub fn compatible_higgs_space(e: &ParabolicBundle, p: &PairingForm, mode: Mode) -> SectionSpace {
    compatible_space_with_twist(e, p, mode, e.curve().log_canonical_degree())
}

pub(crate) fn compatible_space_with_twist(
    e: &ParabolicBundle,
    p: &PairingForm,
    mode: Mode,
    twist: i64,
) -> SectionSpace {
    let caps = DegreeCaps::endomorphisms(e.splitting(), twist);
    let mut rows = e.flag_condition_rows(&caps, mode);
    rows.extend(compatibility_rows(&caps, p));
    let basis = solve_section_space(&caps, rows)
        .into_iter()
        .map(|m| HiggsField::new(m, caps.clone(), mode).unwrap())
        .collect();
    SectionSpace::new(basis, caps, mode)
}

/// Dimension of `{A constant : A^T form + form A = 0}`, optionally also
/// requiring the entries `pattern` of `flag^{-1} A flag` to vanish.
pub fn pairing_lie_algebra_dimension(
    form: &QMatrix,
    constraint: Option<(&QMatrix, &[(usize, usize)])>,
) -> usize {
    let n = form.rows();
    let unknowns = n * n;
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i..n {
            let mut row = vec![Rational::zero(); unknowns];
            // (A^T form)_{ij} = sum_a A_{ai} form_{aj}; (form A)_{ij} = sum_a form_{ia} A_{aj}
            for a in 0..n {
                row[a * n + i] += form.get(a, j);
                row[a * n + j] += form.get(i, a);
            }
            rows.push(row);
        }
    }
    if let Some((flag, pattern)) = constraint {
        let inv = flag.inverse().expect("flag not invertible");
        for &(l, c) in pattern {
            let row = (0..unknowns)
                .map(|idx| inv.get(l, idx / n) * flag.get(idx % n, c))
                .collect();
            rows.push(row);
        }
    }
    QMatrix::from_rows(rows).unwrap().kernel_basis().len()
}

/// Both formulations of compatibility, evaluated independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompatibilityReport {
    /// `(Id (x) Phi^dual) . phi~ = (phi~ (x) Id) . Phi` with `Phi^dual = -Phi^T`.
    pub categorical: bool,
    /// `Phi^T Omega + Omega Phi = 0`.
    pub matrix: bool,
}

impl CompatibilityReport {
    pub fn agree(&self) -> bool {
        self.categorical == self.matrix
    }
}

pub fn compatibility_check(phi: &PolyMatrix, p: &PairingForm) -> CompatibilityReport {
    let omega = &p.omega;
    // phi~(v) = omega(v, -) has coordinates Omega^T v in the dual frame
    let tilde = omega.transpose();
    let dual_higgs = -&phi.transpose();
    let categorical = &dual_higgs * &tilde == &tilde * phi;
    let matrix = (&(&phi.transpose() * omega) + &(omega * phi)).is_zero();
    CompatibilityReport {
        categorical,
        matrix,
    }
}

/// Whether `omega(s, s) = 0` identically for the section spanning `F`.
pub fn isotropic_check(f: &SubbundleData, p: &PairingForm) -> bool {
    p.evaluate(&f.section, &f.section).is_zero()
}

/// Wraps `phi` as a Higgs field of `E` with the `K(D)`-twisted caps.
pub fn higgs_field(e: &ParabolicBundle, phi: PolyMatrix, mode: Mode) -> Result<HiggsField> {
    let caps = DegreeCaps::endomorphisms(e.splitting(), e.curve().log_canonical_degree());
    HiggsField::new(phi, caps, mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parabolic::MarkedCurve;
    use crate::scalar::{rat, ratio};

    fn constant(rows: Vec<Vec<i64>>) -> PolyMatrix {
        PolyMatrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(|c| Poly::constant(rat(c))).collect())
                .collect(),
        )
        .unwrap()
    }

    fn bundle(splitting: Vec<i64>, points: &[i64]) -> ParabolicBundle {
        let curve = MarkedCurve::new(points.iter().map(|&p| rat(p)).collect()).unwrap();
        let weights = vec![vec![ratio(1, 4), ratio(3, 4)]; points.len()];
        ParabolicBundle::with_standard_flags(curve, splitting, weights)
    }

    #[test]
    fn iso_examples() {
        let e = bundle(vec![0, 0], &[]);
        let p = PairingForm::standard(2, Symmetry::Antisymmetric, 0).unwrap();
        assert!(check_pairing_iso(&e, &p).passed());

        let z = Poly::var();
        let mut m = PolyMatrix::zeros(2, 2);
        m.set(0, 1, z.clone());
        m.set(1, 0, -z);
        let degenerate = PairingForm::new(m, Symmetry::Antisymmetric, 0);
        let report = check_pairing_iso(&e, &degenerate);
        assert!(report
            .failures
            .iter()
            .any(|f| f.contains("det vanishes at z = 0/1")));

        let e = bundle(vec![1, -1], &[]);
        assert!(check_pairing_iso(&e, &p).passed());
    }

    #[test]
    fn flag_isotropy_required_for_paired_weights() {
        let curve = MarkedCurve::new(vec![rat(0)]).unwrap();
        let w = vec![vec![rat(0), ratio(1, 3), ratio(2, 3)]];
        let b = PairingForm::standard(3, Symmetry::Symmetric, 0).unwrap();
        let good = ParabolicBundle::with_standard_flags(curve.clone(), vec![0, 0, 0], w.clone());
        assert!(check_pairing_iso(&good, &b).passed());
        // last step spanned by e1 + e3, which is not isotropic
        let flag = constant(vec![vec![1, 0, 1], vec![0, 1, 0], vec![0, 0, 1]]).map(|p| p.coeff(0));
        let bad = ParabolicBundle::new(curve, vec![0, 0, 0], vec![flag], w);
        assert!(!check_pairing_iso(&bad, &b).passed());
    }

    #[test]
    fn compatibility_examples() {
        let p = PairingForm::standard(2, Symmetry::Antisymmetric, 0).unwrap();
        let report = compatibility_check(&constant(vec![vec![2, 5], vec![-3, -2]]), &p);
        assert!(report.categorical && report.matrix);
        let report = compatibility_check(&PolyMatrix::identity(2), &p);
        assert!(!report.categorical && !report.matrix);

        let b = PairingForm::new(PolyMatrix::identity(3), Symmetry::Symmetric, 0);
        let anti = constant(vec![vec![0, 1, 2], vec![-1, 0, 3], vec![-2, -3, 0]]);
        let report = compatibility_check(&anti, &b);
        assert!(report.categorical && report.matrix);
    }

    #[test]
    fn isotropic_examples() {
        let line = |u: i64, v: i64| SubbundleData {
            degree: 0,
            section: vec![Poly::constant(rat(u)), Poly::constant(rat(v))],
            incidence: vec![],
            induced_weights: vec![],
        };
        let j = PairingForm::standard(2, Symmetry::Antisymmetric, 0).unwrap();
        assert!(isotropic_check(&line(2, 7), &j));
        let id = PairingForm::new(PolyMatrix::identity(2), Symmetry::Symmetric, 0);
        assert!(!isotropic_check(&line(3, 4), &id));
        let hyp = PairingForm::standard(2, Symmetry::Symmetric, 0).unwrap();
        assert!(isotropic_check(&line(1, 0), &hyp));
    }

    #[test]
    fn compatible_space_without_points_is_the_lie_algebra() {
        let curve = MarkedCurve::new(vec![rat(0), rat(1)]).unwrap();
        let e = ParabolicBundle::with_standard_flags(
            curve,
            vec![0, 0],
            vec![vec![rat(0), ratio(1, 2)]; 2],
        );
        let p = PairingForm::standard(2, Symmetry::Antisymmetric, 0).unwrap();
        // r = 2: constant traceless matrices preserving the coordinate flag at both points
        assert_eq!(
            compatible_higgs_space(&e, &p, Mode::Parabolic).dimension(),
            2
        );
        assert_eq!(compatible_higgs_space(&e, &p, Mode::Strong).dimension(), 1);
    }
}
