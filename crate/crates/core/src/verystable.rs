//! Deciding whether a space of Higgs fields contains a nonzero nilpotent
//! field, and the verdicts and cross-checks built on that.

use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::higgs::{HiggsField, Mode, SectionSpace};
use crate::hitchin::{nilpotency_check, Group};
use crate::pairing::{compatible_higgs_space, pairing_lie_algebra_dimension, PairingForm};
use crate::parabolic::{hom_zero_pattern, ParabolicBundle};
use crate::poly::{gcd_all, Polynomial};
use crate::roots::rational_roots;
use crate::scalar::rat;
use crate::{Matrix, Poly, PolyMatrix, QMatrix, Rational};

/// Default number of random planes tried by the randomized tier.
pub const DEFAULT_SEARCH_BUDGET: usize = 48;
/// Default seed for every randomized step.
pub const DEFAULT_SEED: u64 = 0x5eed;

const SHEAR_ATTEMPTS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LocusVerdict {
    /// Only the zero field is nilpotent.
    Trivial,
    /// A nonzero nilpotent field with rational coefficients was found.
    Witness,
    /// Nonzero nilpotent fields exist, but only over a proper algebraic
    /// extension of the rationals; the defining polynomial is attached.
    AlgebraicWitness,
    /// The randomized search exhausted its budget.
    Inconclusive,
}

impl LocusVerdict {
    /// `Some(true)` when a nonzero nilpotent field is certified to exist.
    pub fn has_nilpotent(&self) -> Option<bool> {
        match self {
            LocusVerdict::Trivial => Some(false),
            LocusVerdict::Witness | LocusVerdict::AlgebraicWitness => Some(true),
            LocusVerdict::Inconclusive => None,
        }
    }
}

impl fmt::Display for LocusVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LocusVerdict::Trivial => "trivial",
            LocusVerdict::Witness => "witness",
            LocusVerdict::AlgebraicWitness => "algebraic-witness",
            LocusVerdict::Inconclusive => "inconclusive",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LocusMethod {
    ExhaustiveK0,
    UnivariateGcdK1,
    PencilGcdK2,
    ResultantK3,
    RandomizedSearch,
}

impl fmt::Display for LocusMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LocusMethod::ExhaustiveK0 => "exhaustive-k0",
            LocusMethod::UnivariateGcdK1 => "univariate-gcd-k1",
            LocusMethod::PencilGcdK2 => "pencil-gcd-k2",
            LocusMethod::ResultantK3 => "resultant-k3",
            LocusMethod::RandomizedSearch => "randomized-search",
        };
        f.write_str(s)
    }
}

/// A nilpotent direction defined over a number field: the field
/// `sum_a (c_a(theta)) Phi_a` is nilpotent for every root `theta` of
/// `defining_polynomial`, where `directions[a]` lists the coefficients of
/// `c_a` as a polynomial in `theta`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraicDirection {
    pub defining_polynomial: Poly,
    pub directions: Vec<Poly>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NilpotentLocusResult {
    pub verdict: LocusVerdict,
    pub method: LocusMethod,
    pub witness: Option<HiggsField>,
    /// Coordinates of the witness in the basis of the input space.
    pub witness_coordinates: Option<Vec<Rational>>,
    pub algebraic: Option<AlgebraicDirection>,
    /// Number of random planes examined, for the randomized tier.
    pub budget: Option<usize>,
}

impl NilpotentLocusResult {
    fn trivial(method: LocusMethod) -> Self {
        Self {
            verdict: LocusVerdict::Trivial,
            method,
            witness: None,
            witness_coordinates: None,
            algebraic: None,
            budget: None,
        }
    }
}

/// Outcome of searching a small linear family.
enum Found {
    Nothing,
    Rational(Vec<Rational>),
    Algebraic(AlgebraicDirection),
    Unknown,
}

fn combine(basis: &[PolyMatrix], coeffs: &[Rational]) -> PolyMatrix {
    let mut m = PolyMatrix::zeros(basis[0].rows(), basis[0].cols());
    for (c, b) in coeffs.iter().zip(basis) {
        if !c.is_zero() {
            m = &m + &b.map(|p| p.scale(c));
        }
    }
    m
}

/// Decides whether `W` contains a nonzero field whose characteristic
/// coefficients all vanish identically.
pub fn nilpotent_locus_decide(w: &SectionSpace, seed: u64) -> NilpotentLocusResult {
    nilpotent_locus_decide_with_budget(w, seed, DEFAULT_SEARCH_BUDGET)
}

pub fn nilpotent_locus_decide_with_budget(
    w: &SectionSpace,
    seed: u64,
    budget: usize,
) -> NilpotentLocusResult {
    let basis: Vec<PolyMatrix> = w.basis().iter().map(|b| b.matrix().clone()).collect();
    let k = basis.len();
    if k == 0 {
        return NilpotentLocusResult::trivial(LocusMethod::ExhaustiveK0);
    }
    // restrict to the traceless part; coordinates of the new basis in the old
    let frame = traceless_frame(&basis);
    let reduced: Vec<PolyMatrix> = frame.iter().map(|c| combine(&basis, c)).collect();
    let mut method = match reduced.len() {
        0 => LocusMethod::ExhaustiveK0,
        1 => LocusMethod::UnivariateGcdK1,
        2 => LocusMethod::PencilGcdK2,
        3 if w.caps().rows() == 2 => LocusMethod::ResultantK3,
        _ => LocusMethod::RandomizedSearch,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut planes = None;
    let found = match reduced.len() {
        0 => Found::Nothing,
        1 => {
            if nilpotency_check(&reduced[0]) {
                Found::Rational(vec![Rational::one()])
            } else {
                Found::Nothing
            }
        }
        2 => pencil_decide(&reduced[0], &reduced[1]),
        3 if w.caps().rows() == 2 => match conic_system_decide(&reduced, &mut rng) {
            Found::Unknown => {
                planes = Some(budget);
                method = LocusMethod::RandomizedSearch;
                random_planes(&reduced, &mut rng, budget)
            }
            other => other,
        },
        _ => {
            planes = Some(budget);
            random_planes(&reduced, &mut rng, budget)
        }
    };
    let lift = |c: &[Rational]| -> Vec<Rational> {
        (0..k)
            .map(|a| {
                c.iter()
                    .zip(&frame)
                    .fold(Rational::zero(), |acc, (ci, f)| acc + ci * &f[a])
            })
            .collect()
    };
    let mut result = NilpotentLocusResult::trivial(method);
    result.budget = planes;
    match found {
        Found::Nothing => {}
        Found::Unknown => result.verdict = LocusVerdict::Inconclusive,
        Found::Rational(c) => {
            let coords = lift(&c);
            let field = w.combination(&coords);
            if field.is_zero() || !nilpotency_check(field.matrix()) {
                // never report an unverified witness
                result.verdict = LocusVerdict::Inconclusive;
            } else {
                result.verdict = LocusVerdict::Witness;
                result.witness = Some(field);
                result.witness_coordinates = Some(coords);
            }
        }
        Found::Algebraic(dir) => {
            let directions = (0..k)
                .map(|a| {
                    dir.directions
                        .iter()
                        .zip(&frame)
                        .fold(Poly::zero(), |acc, (d, f)| &acc + &d.scale(&f[a]))
                })
                .collect();
            result.verdict = LocusVerdict::AlgebraicWitness;
            result.algebraic = Some(AlgebraicDirection {
                defining_polynomial: dir.defining_polynomial,
                directions,
            });
        }
    }
    result
}

/// Coordinate vectors spanning `{c : trace(sum c_a Phi_a) = 0}`.
fn traceless_frame(basis: &[PolyMatrix]) -> Vec<Vec<Rational>> {
    let traces: Vec<Poly> = basis.iter().map(|b| b.trace()).collect();
    let top = traces.iter().filter_map(Poly::degree).max();
    let Some(top) = top else {
        return QMatrix::identity(basis.len()).to_rows();
    };
    let rows: Vec<Vec<Rational>> = (0..=top)
        .map(|d| traces.iter().map(|t| t.coeff(d)).collect())
        .collect();
    QMatrix::from_rows(rows).unwrap().kernel_basis()
}

/// Nilpotent members of the pencil `c_1 A + c_2 B`.
fn pencil_decide(a: &PolyMatrix, b: &PolyMatrix) -> Found {
    if nilpotency_check(b) {
        return Found::Rational(vec![Rational::zero(), Rational::one()]);
    }
    // entries as polynomials in z whose coefficients are polynomials in lambda
    let m: Matrix<Polynomial<Poly>> = Matrix::from_fn(a.rows(), a.cols(), |i, j| {
        let (x, y) = (a.get(i, j), b.get(i, j));
        let len = x.coeffs().len().max(y.coeffs().len());
        Polynomial::new(
            (0..len)
                .map(|d| Poly::new(vec![x.coeff(d), y.coeff(d)]))
                .collect(),
        )
    });
    let s = m.char_poly().expect("square");
    let conditions: Vec<&Poly> = s.iter().flat_map(|c| c.coeffs().iter()).collect();
    let g = gcd_all(conditions);
    if g.is_zero() {
        return Found::Rational(vec![Rational::one(), Rational::zero()]);
    }
    if g.is_constant() {
        return Found::Nothing;
    }
    if let Some(l) = rational_roots(&g).into_iter().next() {
        return Found::Rational(vec![Rational::one(), l]);
    }
    Found::Algebraic(AlgebraicDirection {
        defining_polynomial: g.squarefree_part(),
        directions: vec![Poly::one(), Poly::var()],
    })
}

/// Nilpotent members of a three-dimensional traceless family of rank-2
/// fields: common zeros in the projective plane of the quadratic forms given
/// by the coefficients of `det`.
fn conic_system_decide(basis: &[PolyMatrix], rng: &mut ChaCha8Rng) -> Found {
    let forms = determinant_forms(basis);
    if forms.is_empty() {
        return Found::Rational(vec![Rational::one(), Rational::zero(), Rational::zero()]);
    }
    if forms.len() == 1 {
        return single_conic(&forms[0], rng);
    }
    for attempt in 0..SHEAR_ATTEMPTS {
        let shear = if attempt == 0 {
            QMatrix::identity(3)
        } else {
            random_invertible(3, rng)
        };
        let sheared: Vec<QMatrix> = forms
            .iter()
            .map(|s| &(&shear.transpose() * s) * &shear)
            .collect();
        let back = |c: Vec<Rational>| shear.mul_vec(&c);
        // the point (0, 0, 1)
        if sheared.iter().all(|s| s.get(2, 2).is_zero()) {
            return Found::Rational(back(vec![rat(0), rat(0), rat(1)]));
        }
        // the line c_1 = 0 through (0, 1, y)
        let line: Vec<Poly> = sheared.iter().map(restrict_to_line).collect();
        let g_line = gcd_all(&line);
        if g_line.is_zero() {
            return Found::Rational(back(vec![rat(0), rat(1), rat(0)]));
        }
        let mut algebraic = None;
        if !g_line.is_constant() {
            if let Some(y) = rational_roots(&g_line).into_iter().next() {
                return Found::Rational(back(vec![rat(0), rat(1), y]));
            }
            algebraic = Some(AlgebraicDirection {
                defining_polynomial: g_line.squarefree_part(),
                directions: (0..3)
                    .map(|a| Poly::new(vec![shear.get(a, 1).clone(), shear.get(a, 2).clone()]))
                    .collect(),
            });
        }
        // the affine chart (1, x, y)
        let weights: Vec<Vec<Rational>> = (0..2)
            .map(|_| (0..sheared.len()).map(|_| small(rng)).collect())
            .collect();
        let pick = |w: &[Rational]| {
            sheared
                .iter()
                .zip(w)
                .fold(QMatrix::zeros(3, 3), |acc, (s, c)| &acc + &s.scale(c))
        };
        let (f, g) = (
            chart_coefficients(&pick(&weights[0])),
            chart_coefficients(&pick(&weights[1])),
        );
        let p1 = &(&f[1] * &g[2]) - &(&f[2] * &g[1]);
        let p0 = &(&f[0] * &g[2]) - &(&f[2] * &g[0]);
        let bad = p1.gcd(&p0);
        if bad.is_zero() || !bad.is_constant() {
            continue;
        }
        // every common zero with p1(x) != 0 has y = -p0(x) / p1(x)
        let numerators: Vec<Poly> = sheared
            .iter()
            .map(|s| {
                let a = chart_coefficients(s);
                &(&(&a[2] * &p0) * &p0) - &(&(&(&a[1] * &p0) * &p1) - &(&(&a[0] * &p1) * &p1))
            })
            .collect();
        let mut t = gcd_all(&numerators);
        let y_at = |x: &Rational| -p0.eval(x) / p1.eval(x);
        if t.is_zero() {
            let x = (0..)
                .map(sample_point)
                .find(|x| !p1.eval(x).is_zero())
                .unwrap();
            let y = y_at(&x);
            return Found::Rational(back(vec![rat(1), x, y]));
        }
        loop {
            let h = t.gcd(&p1);
            if h.is_constant() {
                break;
            }
            t = t.exact_div(&h).unwrap();
        }
        if !t.is_constant() {
            if let Some(x) = rational_roots(&t).into_iter().next() {
                let y = y_at(&x);
                return Found::Rational(back(vec![rat(1), x, y]));
            }
            if algebraic.is_none() {
                // y(theta) = -p0(theta) / p1(theta), written as a polynomial mod t
                let inv = inverse_mod(&p1, &t).expect("p1 coprime to t");
                let y = (&(-&p0) * &inv).div_rem(&t).1;
                let point = [Poly::one(), Poly::var(), y];
                let directions = (0..3)
                    .map(|a| {
                        (0..3).fold(Poly::zero(), |acc, b| {
                            &acc + &point[b].scale(shear.get(a, b))
                        })
                    })
                    .map(|p| p.div_rem(&t).1)
                    .collect();
                algebraic = Some(AlgebraicDirection {
                    defining_polynomial: t.squarefree_part(),
                    directions,
                });
            }
        }
        return match algebraic {
            Some(a) => Found::Algebraic(a),
            None => Found::Nothing,
        };
    }
    Found::Unknown
}

/// A single ternary quadratic form always has complex zeros; look for a
/// rational one on a few lines.
fn single_conic(form: &QMatrix, rng: &mut ChaCha8Rng) -> Found {
    let mut first = None;
    for attempt in 0..SHEAR_ATTEMPTS {
        let shear = if attempt == 0 {
            QMatrix::identity(3)
        } else {
            random_invertible(3, rng)
        };
        let s = &(&shear.transpose() * form) * &shear;
        if s.get(2, 2).is_zero() {
            return Found::Rational(shear.mul_vec(&[rat(0), rat(0), rat(1)]));
        }
        let line = restrict_to_line(&s);
        if let Some(y) = rational_roots(&line).into_iter().next() {
            return Found::Rational(shear.mul_vec(&[rat(0), rat(1), y]));
        }
        if first.is_none() {
            first = Some(AlgebraicDirection {
                defining_polynomial: line.squarefree_part(),
                directions: (0..3)
                    .map(|a| Poly::new(vec![shear.get(a, 1).clone(), shear.get(a, 2).clone()]))
                    .collect(),
            });
        }
    }
    Found::Algebraic(first.expect("at least one attempt"))
}

/// `q(0, 1, y)` for the form `c^T S c`.
fn restrict_to_line(s: &QMatrix) -> Poly {
    Poly::new(vec![
        s.get(1, 1).clone(),
        s.get(1, 2) * rat(2),
        s.get(2, 2).clone(),
    ])
}

/// `q(1, x, y)` as coefficients of `y^0, y^1, y^2` in `Q[x]`.
fn chart_coefficients(s: &QMatrix) -> [Poly; 3] {
    let two = rat(2);
    [
        Poly::new(vec![
            s.get(0, 0).clone(),
            s.get(0, 1) * &two,
            s.get(1, 1).clone(),
        ]),
        Poly::new(vec![s.get(0, 2) * &two, s.get(1, 2) * &two]),
        Poly::constant(s.get(2, 2).clone()),
    ]
}

/// Symmetric Gram matrices spanning the coefficients (in `z`) of
/// `det(sum c_a Phi_a)`, one per independent form.
fn determinant_forms(basis: &[PolyMatrix]) -> Vec<QMatrix> {
    let det = |m: &PolyMatrix| m.determinant().expect("square");
    let diag: Vec<Poly> = basis.iter().map(det).collect();
    let mut entries = vec![vec![Poly::zero(); 3]; 3];
    for a in 0..3 {
        entries[a][a] = diag[a].clone();
        for b in a + 1..3 {
            let sum = &basis[a] + &basis[b];
            let mixed = &(&det(&sum) - &diag[a]) - &diag[b];
            let half = mixed.scale(&Rational::new(1.into(), 2.into()));
            entries[a][b] = half.clone();
            entries[b][a] = half;
        }
    }
    let top = entries.iter().flatten().filter_map(Poly::degree).max();
    let Some(top) = top else {
        return Vec::new();
    };
    let vectors: Vec<Vec<Rational>> = (0..=top)
        .map(|d| entries.iter().flatten().map(|p| p.coeff(d)).collect())
        .collect();
    let (reduced, pivots) = QMatrix::from_rows(vectors).unwrap().rref();
    (0..pivots.len())
        .map(|r| QMatrix::from_fn(3, 3, |i, j| reduced.get(r, 3 * i + j).clone()))
        .collect()
}

fn random_planes(basis: &[PolyMatrix], rng: &mut ChaCha8Rng, budget: usize) -> Found {
    let k = basis.len();
    for _ in 0..budget {
        let u: Vec<Rational> = (0..k).map(|_| small(rng)).collect();
        let v: Vec<Rational> = (0..k).map(|_| small(rng)).collect();
        let (a, b) = (combine(basis, &u), combine(basis, &v));
        if a.is_zero() || b.is_zero() {
            continue;
        }
        match pencil_decide(&a, &b) {
            Found::Rational(c) => {
                let coords = (0..k).map(|i| &c[0] * &u[i] + &c[1] * &v[i]).collect();
                return Found::Rational(coords);
            }
            Found::Algebraic(dir) => {
                let directions = (0..k)
                    .map(|i| &dir.directions[0].scale(&u[i]) + &dir.directions[1].scale(&v[i]))
                    .collect();
                return Found::Algebraic(AlgebraicDirection {
                    defining_polynomial: dir.defining_polynomial,
                    directions,
                });
            }
            _ => {}
        }
    }
    Found::Unknown
}

fn small(rng: &mut ChaCha8Rng) -> Rational {
    Rational::from_integer(rng.gen_range(-5i64..=5).into())
}

fn random_invertible(n: usize, rng: &mut ChaCha8Rng) -> QMatrix {
    loop {
        let rows = (0..n)
            .map(|_| (0..n).map(|_| small(rng)).collect())
            .collect();
        let m = QMatrix::from_rows(rows).unwrap();
        if m.rank() == n {
            return m;
        }
    }
}

/// 0, 1, -1, 2, -2, ...
fn sample_point(i: usize) -> Rational {
    let k = i.div_ceil(2) as i64;
    if i % 2 == 1 {
        rat(k)
    } else {
        rat(-k)
    }
}

/// `a^{-1} mod m` for coprime `a`, `m`.
fn inverse_mod(a: &Poly, m: &Poly) -> Option<Poly> {
    let (mut r0, mut r1) = (m.clone(), a.div_rem(m).1);
    let (mut t0, mut t1) = (Poly::zero(), Poly::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        let t = &t0 - &(&q * &t1);
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t);
    }
    if !r0.is_constant() {
        return None;
    }
    let c = r0.coeff(0);
    Some(t0.scale(&c.recip()).div_rem(m).1)
}

/// The ten scalars used to sample `C* Phi`.
pub fn scaling_parameters() -> Vec<Rational> {
    [
        (1, 1),
        (2, 1),
        (3, 1),
        (-1, 1),
        (-2, 1),
        (1, 2),
        (-1, 2),
        (3, 2),
        (5, 1),
        (-7, 3),
    ]
    .iter()
    .map(|&(n, d)| Rational::new(n.into(), d.into()))
    .collect()
}

/// Ten distinct nonzero points `t Phi` of the nilpotent fibre through a
/// nonzero nilpotent `Phi`.
pub fn scaling_fiber_witness(phi: &HiggsField) -> Result<Vec<HiggsField>> {
    if phi.is_zero() {
        return Err(Error::Precondition("the zero field spans no orbit".into()));
    }
    if !nilpotency_check(phi.matrix()) {
        return Err(Error::Precondition("field is not nilpotent".into()));
    }
    let out: Vec<HiggsField> = scaling_parameters().iter().map(|t| phi.scale(t)).collect();
    for (i, f) in out.iter().enumerate() {
        if f.is_zero() || !nilpotency_check(f.matrix()) || out[..i].contains(f) {
            return Err(Error::Precondition(
                "scaled field failed verification".into(),
            ));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct VeryStabilityReport {
    pub strong_dimension: usize,
    pub strong: NilpotentLocusResult,
    /// `Some(true)`: strongly very stable; `None`: undecided.
    pub strongly_very_stable: Option<bool>,
    /// For full flags with distinct weights a nilpotent parabolic field has
    /// strictly lowering residues, so this agrees with the strong verdict.
    pub very_stable: Option<bool>,
    pub verdict: String,
    pub certificate: String,
    pub fiber: Vec<HiggsField>,
}

pub fn very_stability_verdict(
    e: &ParabolicBundle,
    p: &PairingForm,
    seed: u64,
) -> VeryStabilityReport {
    let w = compatible_higgs_space(e, p, Mode::Strong);
    let strong = nilpotent_locus_decide(&w, seed);
    let status = strong.verdict.has_nilpotent().map(|b| !b);
    let mut fiber = Vec::new();
    let (verdict, certificate) = match strong.verdict {
        LocusVerdict::Trivial => (
            "strongly very stable".to_string(),
            format!(
                "nilpotent locus of W_st is {{0}} ({}); the Hitchin map on W_st is homogeneous with zero fibre {{0}}, hence finite, hence proper and quasi-finite",
                strong.method
            ),
        ),
        LocusVerdict::Witness => {
            let phi = strong.witness.as_ref().expect("witness present");
            fiber = scaling_fiber_witness(phi).expect("verified witness");
            (
                "not strongly very stable".to_string(),
                format!(
                    "nonzero nilpotent field found ({}); its {} multiples lie in the zero fibre, so the Hitchin map on W_st is not quasi-finite",
                    strong.method,
                    fiber.len()
                ),
            )
        }
        LocusVerdict::AlgebraicWitness => {
            let g = &strong.algebraic.as_ref().expect("certificate present").defining_polynomial;
            (
                "not strongly very stable".to_string(),
                format!(
                    "nilpotent fields exist over the field defined by {g} ({}); the zero fibre contains a line, so the Hitchin map on W_st is not quasi-finite",
                    strong.method
                ),
            )
        }
        LocusVerdict::Inconclusive => (
            "undecided".to_string(),
            format!(
                "no nilpotent field found in {} random planes ({}); no finiteness claim is made",
                strong.budget.unwrap_or(0),
                strong.method
            ),
        ),
    };
    VeryStabilityReport {
        strong_dimension: w.dimension(),
        strong,
        strongly_very_stable: status,
        very_stable: status,
        verdict,
        certificate,
        fiber,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SerreReport {
    /// `dim W_{E,st}`, the sections of the strongly parabolic sheaf twisted by `K(D)`.
    pub strong_dimension: usize,
    /// `h^0` of the parabolic endomorphism sheaf compatible with the pairing.
    pub h0: usize,
    /// Rank of that sheaf (dimension of the Lie algebra of the form).
    pub rank: usize,
    /// Its degree: minus the number of flag conditions imposed at the points.
    pub degree: i64,
    pub euler_characteristic: i64,
    pub h1: i64,
    pub passed: bool,
}

/// Compares `dim W_{E,st}` with `h^1` of the parabolic endomorphism sheaf,
/// the latter obtained from Riemann-Roch on the projective line.
pub fn serre_duality_check(e: &ParabolicBundle, p: &PairingForm) -> Result<SerreReport> {
    let strong_dimension = compatible_higgs_space(e, p, Mode::Strong).dimension();
    let h0 = crate::pairing::compatible_space_with_twist(e, p, Mode::Parabolic, 0).dimension();
    let generic = (0..)
        .map(sample_point)
        .find(|x| !e.curve().points().contains(x))
        .unwrap();
    let rank = pairing_lie_algebra_dimension(&p.value_at(&generic), None);
    let mut conditions = 0i64;
    for (point, z) in e.curve().points().iter().enumerate() {
        let pattern = hom_zero_pattern(&e.weights()[point], &e.weights()[point], Mode::Parabolic);
        let full = pairing_lie_algebra_dimension(&p.value_at(z), None);
        let kept =
            pairing_lie_algebra_dimension(&p.value_at(z), Some((&e.flags()[point], &pattern)));
        if full != rank {
            return Err(Error::InvalidPairing(format!(
                "form degenerates at point {point}"
            )));
        }
        conditions += (full - kept) as i64;
    }
    let degree = -conditions;
    let euler_characteristic = degree + rank as i64;
    let h1 = h0 as i64 - euler_characteristic;
    Ok(SerreReport {
        strong_dimension,
        h0,
        rank,
        degree,
        euler_characteristic,
        h1,
        passed: h1 == strong_dimension as i64,
    })
}

/// Dimension of the moduli space of strongly parabolic Higgs bundles with
/// full flags, from the closed forms.
pub fn moduli_dimension(group: Group, g: i64, r: i64) -> Result<i64> {
    match group {
        Group::Symplectic(m) | Group::OddOrthogonal(m) => {
            let m = m as i64;
            Ok(2 * m * (2 * m + 1) * (g - 1) + 2 * m * m * r)
        }
        Group::EvenOrthogonal(m) => {
            let m = m as i64;
            Ok(2 * m * (2 * m - 1) * (g - 1) + 2 * m * r * (m - 1))
        }
        Group::GeneralLinear(_) => Err(Error::Unsupported("dimension formula for GL".into())),
    }
}

/// The same dimension as `2 ((g - 1) dim G + r dim G/B)`, with `dim G` and
/// `dim G/B` counted from roots.
pub fn moduli_dimension_from_roots(group: Group, g: i64, r: i64) -> Result<i64> {
    // (dim G, number of positive roots)
    let (dim, positive) = match group {
        Group::Symplectic(m) | Group::OddOrthogonal(m) => {
            let m = m as i64;
            (m + 2 * m * m, m * m)
        }
        Group::EvenOrthogonal(m) => {
            let m = m as i64;
            (m + 2 * m * (m - 1), m * (m - 1))
        }
        Group::GeneralLinear(_) => {
            return Err(Error::Unsupported("dimension formula for GL".into()))
        }
    };
    Ok(2 * ((g - 1) * dim + r * positive))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::higgs::DegreeCaps;

    fn space(mats: Vec<PolyMatrix>) -> SectionSpace {
        let caps = DegreeCaps::new(2, 2, vec![2; 4]);
        let basis = mats
            .into_iter()
            .map(|m| HiggsField::new(m, caps.clone(), Mode::Strong).unwrap())
            .collect();
        SectionSpace::new(basis, caps, Mode::Strong)
    }

    fn m(rows: [[Poly; 2]; 2]) -> PolyMatrix {
        PolyMatrix::from_rows(rows.into_iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn c(v: i64) -> Poly {
        Poly::constant(rat(v))
    }

    #[test]
    fn small_tiers() {
        let z = Poly::var();
        assert_eq!(
            nilpotent_locus_decide(&space(vec![]), 0).verdict,
            LocusVerdict::Trivial
        );
        let nil = m([[c(0), z.clone()], [c(0), c(0)]]);
        let r = nilpotent_locus_decide(&space(vec![nil.clone()]), 0);
        assert_eq!(r.verdict, LocusVerdict::Witness);
        assert_eq!(r.method, LocusMethod::UnivariateGcdK1);
        assert_eq!(r.witness.unwrap().matrix(), &nil);
        // [[a, b], [c, -a]] with a = x, b = y z, c = 2 y: det = -x^2 - 2 y^2 z
        let d = m([[c(1), c(0)], [c(0), c(-1)]]);
        let off = m([[c(0), z.clone()], [c(2), c(0)]]);
        let r = nilpotent_locus_decide(&space(vec![d.clone(), off.clone()]), 0);
        assert_eq!(r.verdict, LocusVerdict::Trivial);
        assert_eq!(r.method, LocusMethod::PencilGcdK2);
        // x = y, b = 1, c = -1: det = -x^2 + y^2 has rational zeros
        let off = m([[c(0), c(1)], [c(-1), c(0)]]);
        let r = nilpotent_locus_decide(&space(vec![d.clone(), off]), 0);
        assert_eq!(r.verdict, LocusVerdict::Witness);
        // det = -x^2 + 2 y^2: zeros only over Q(sqrt 2)
        let off = m([[c(0), c(1)], [c(-2), c(0)]]);
        let r = nilpotent_locus_decide(&space(vec![d, off]), 0);
        assert_eq!(r.verdict, LocusVerdict::AlgebraicWitness);
        let cert = r.algebraic.unwrap();
        assert_eq!(cert.defining_polynomial.degree(), Some(2));
    }

    #[test]
    fn three_dimensional_families() {
        let z = Poly::var();
        let h = m([[c(1), c(0)], [c(0), c(-1)]]);
        let e = m([[c(0), c(1)], [c(0), c(0)]]);
        let f = m([[c(0), c(0)], [c(1), c(0)]]);
        // all of sl2: plenty of nilpotents
        let r = nilpotent_locus_decide(&space(vec![h.clone(), e.clone(), f.clone()]), 3);
        assert_eq!(r.verdict, LocusVerdict::Witness);
        assert_eq!(r.method, LocusMethod::ResultantK3);
        // det(x h + y z e + w (z^2 + 1) f) = -x^2 - y w z (z^2 + 1): forms x^2, yw
        // common zero (0, 1, 0)
        let ze = e.map(|p| p * &z);
        let zf = f.map(|p| &(p * &(&z * &z)) + p);
        let r = nilpotent_locus_decide(&space(vec![h.clone(), ze.clone(), zf.clone()]), 3);
        assert_eq!(r.verdict, LocusVerdict::Witness);
        // det(x h + y (e + z f) + w (z e + f)) has forms with no common zero
        let g1 = &e + &f.map(|p| p * &z);
        let g2 = &e.map(|p| p * &z) + &f;
        let r = nilpotent_locus_decide(&space(vec![h, g1, g2]), 3);
        assert_eq!(r.verdict, LocusVerdict::Trivial);
    }

    #[test]
    fn scaling_fiber() {
        let caps = DegreeCaps::new(2, 2, vec![1; 4]);
        let phi = HiggsField::new(
            m([[c(0), Poly::var()], [c(0), c(0)]]),
            caps.clone(),
            Mode::Strong,
        )
        .unwrap();
        let fiber = scaling_fiber_witness(&phi).unwrap();
        assert_eq!(fiber.len(), 10);
        let zero = HiggsField::new(PolyMatrix::zeros(2, 2), caps, Mode::Strong).unwrap();
        assert!(scaling_fiber_witness(&zero).is_err());
    }

    #[test]
    fn dimension_formulas() {
        assert_eq!(moduli_dimension(Group::Symplectic(1), 2, 1).unwrap(), 8);
        assert_eq!(
            moduli_dimension(Group::EvenOrthogonal(2), 2, 1).unwrap(),
            16
        );
        assert_eq!(moduli_dimension(Group::OddOrthogonal(1), 2, 0).unwrap(), 6);
        for (grp, g, r) in [
            (Group::Symplectic(3), 4, 2),
            (Group::EvenOrthogonal(3), 0, 5),
            (Group::OddOrthogonal(2), 7, 1),
        ] {
            assert_eq!(
                moduli_dimension(grp, g, r).unwrap(),
                moduli_dimension_from_roots(grp, g, r).unwrap()
            );
        }
    }
}
