//! Stability of rank-2 symplectic parabolic (Higgs) bundles.
//!
//! In rank 2 every line is isotropic for the alternating form, so the test
//! runs over all saturated line subbundles `L = O(e) -> E`. A line is
//! described by its degree `e` and the set `S` of marked points where it lies
//! in the second flag step. Its parabolic degree is
//! `e + sum_{p in S} alpha_2(p) + sum_{p not in S} alpha_1(p)`.
//!
//! For fixed `(e, S)` the sections of `E(-e)` whose values at `p in S` lie in
//! the second step form a linear space `V(e, S)`. Saturating a nonzero member
//! never lowers the parabolic degree (each lost incidence costs less than the
//! degree gained), so the largest parabolic degree of a line subbundle is the
//! largest bound over the pairs with `V(e, S) != 0`.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::pairing::{PairingForm, Symmetry};
use crate::parabolic::{ParabolicBundle, SubbundleData};
use crate::poly::{gcd_all, Polynomial};
use crate::quadratic::Quadratic;
use crate::scalar::rational_sqrt;
use crate::{Poly, PolyMatrix, QMatrix, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Stable,
    StrictlySemistable,
    Unstable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Stable => "stable",
            Verdict::StrictlySemistable => "strictly-semistable",
            Verdict::Unstable => "unstable",
        };
        f.write_str(s)
    }
}

/// A pair `(e, S)` whose bound reaches a threshold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub degree: i64,
    /// Per marked point, whether the line is required to lie in `E_{p,2}`.
    pub in_second_step: Vec<bool>,
    pub bound: Rational,
}

/// An invariant line defined over `Q(sqrt d)`, with section `re + sqrt(d) im`.
/// Its Galois conjugate has the same degree and incidences.
#[derive(Debug, Clone, PartialEq)]
pub struct ConjugateLine {
    pub radicand: Rational,
    pub re: Vec<Poly>,
    pub im: Vec<Poly>,
    pub degree: i64,
    pub incidence: Vec<usize>,
    pub induced_weights: Vec<Rational>,
}

impl ConjugateLine {
    pub fn parabolic_degree(&self) -> Rational {
        self.induced_weights
            .iter()
            .fold(Rational::from_integer(self.degree.into()), |acc, w| acc + w)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityVerdict {
    pub verdict: Verdict,
    /// A line with `mu_par(F) >= mu_par(E)`, present unless stable (or the
    /// destabilizing line is only defined over a quadratic extension).
    pub witness: Option<SubbundleData>,
    pub conjugate_witness: Option<ConjugateLine>,
    pub slope: Rational,
    /// Largest parabolic degree of a (Phi-invariant) line, if any line exists.
    pub max_line_degree: Option<Rational>,
}

fn check_rank_two(e: &ParabolicBundle) -> Result<(i64, i64)> {
    if e.rank() != 2 {
        return Err(Error::Unsupported(format!(
            "stability test needs rank 2, got {}",
            e.rank()
        )));
    }
    e.ensure_valid()?;
    Ok((e.splitting()[0], e.splitting()[1]))
}

fn bound(e: &ParabolicBundle, degree: i64, mask: &[bool]) -> Rational {
    mask.iter()
        .zip(e.weights())
        .fold(Rational::from_integer(degree.into()), |acc, (&s, w)| {
            acc + &w[usize::from(s)]
        })
}

/// All `(e, S)` with bound at least `threshold` and `e` the degree of some
/// line subbundle (`e <= b`, or `e = a`).
pub fn line_subbundle_candidates(
    e: &ParabolicBundle,
    threshold: &Rational,
) -> Result<Vec<Candidate>> {
    let (a, b) = check_rank_two(e)?;
    let r = e.curve().len();
    let top_weights = e
        .weights()
        .iter()
        .fold(Rational::zero(), |acc, w| acc + &w[1]);
    // below this degree even S = D misses the threshold
    let lowest = (threshold - top_weights).ceil().to_integer();
    let lowest: i64 =
        i64::try_from(lowest).map_err(|_| Error::Precondition("threshold out of range".into()))?;
    let mut degrees: Vec<i64> = Vec::new();
    if a > b {
        degrees.push(a);
    }
    let mut d = b;
    while d >= lowest {
        degrees.push(d);
        d -= 1;
    }
    let mut out = Vec::new();
    for degree in degrees {
        for bits in 0..(1usize << r) {
            let mask: Vec<bool> = (0..r).map(|i| bits >> i & 1 == 1).collect();
            let bd = bound(e, degree, &mask);
            if &bd >= threshold {
                out.push(Candidate {
                    degree,
                    in_second_step: mask,
                    bound: bd,
                });
            }
        }
    }
    Ok(out)
}

/// Sections `(u, v)` of `E(-e)` whose value at every `p` in `S` lies in the
/// second flag step, as a basis.
pub fn incidence_sections(e: &ParabolicBundle, degree: i64, mask: &[bool]) -> Vec<[Poly; 2]> {
    let (a, b) = (e.splitting()[0], e.splitting()[1]);
    let nu = (a - degree + 1).max(0) as usize;
    let nv = (b - degree + 1).max(0) as usize;
    let mut rows = Vec::new();
    for (point, p) in e.curve().points().iter().enumerate() {
        if !mask[point] {
            continue;
        }
        let flag = &e.flags()[point];
        let (fx, fy) = (flag.get(0, 1), flag.get(1, 1));
        // u(p) fy - v(p) fx = 0
        let mut row = Vec::with_capacity(nu + nv);
        let mut power = Rational::one();
        for _ in 0..nu {
            row.push(&power * fy);
            power *= p;
        }
        let mut power = Rational::one();
        for _ in 0..nv {
            row.push(-(&power * fx));
            power *= p;
        }
        rows.push(row);
    }
    let system = QMatrix::from_fn(rows.len(), nu + nv, |i, j| rows[i][j].clone());
    system
        .kernel_basis()
        .into_iter()
        .map(|k| [Poly::new(k[..nu].to_vec()), Poly::new(k[nu..].to_vec())])
        .collect()
}

/// Divides out the common factor of the section and records the degree,
/// incidences and induced weights of the line it spans.
pub fn saturate(section: &[Poly], e: &ParabolicBundle) -> Result<SubbundleData> {
    if section.len() != e.rank() {
        return Err(Error::DimensionMismatch(
            "section length differs from rank".into(),
        ));
    }
    if section.iter().all(Zero::is_zero) {
        return Err(Error::Precondition("zero section spans no line".into()));
    }
    let g = gcd_all(section);
    let reduced: Vec<Poly> = section.iter().map(|s| s.exact_div(&g).unwrap()).collect();
    let degree = reduced
        .iter()
        .zip(e.splitting())
        .filter(|(s, _)| !s.is_zero())
        .map(|(s, d)| d - s.signed_degree())
        .min()
        .unwrap();
    let incidence = e.line_incidence(&reduced)?;
    let induced_weights = incidence
        .iter()
        .zip(e.weights())
        .map(|(&i, w)| w[i - 1].clone())
        .collect();
    Ok(SubbundleData {
        degree,
        section: reduced,
        incidence,
        induced_weights,
    })
}

/// `det[Phi s | s] = 0` identically.
pub fn invariance_check(phi: &PolyMatrix, f: &SubbundleData) -> bool {
    let s = &f.section;
    let image = phi.mul_vec(s);
    (&(&image[0] * &s[1]) - &(&image[1] * &s[0])).is_zero()
}

/// Decides (semi)stability of a rank-2 symplectic parabolic bundle, or of the
/// Higgs bundle `(E, Phi)` when a field is given.
pub fn stability_decide_rank2(
    e: &ParabolicBundle,
    pairing: &PairingForm,
    phi: Option<&PolyMatrix>,
) -> Result<StabilityVerdict> {
    check_rank_two(e)?;
    if pairing.symmetry() != Symmetry::Antisymmetric {
        return Err(Error::Unsupported(
            "rank-2 stability is implemented for symplectic forms".into(),
        ));
    }
    let slope = e.parabolic_slope();
    let classify = |best: &Rational| {
        if best > &slope {
            Verdict::Unstable
        } else if best == &slope {
            Verdict::StrictlySemistable
        } else {
            Verdict::Stable
        }
    };
    let traceless = phi.map(|m| {
        let half = m.trace().scale(&Rational::new(1.into(), 2.into()));
        let mut t = m.clone();
        for i in 0..2 {
            t.set(i, i, &t.get(i, i).clone() - &half);
        }
        t
    });
    match traceless {
        Some(t) if !t.is_zero() => decide_with_field(e, &t, &slope, classify),
        _ => decide_plain(e, &slope, classify),
    }
}

fn decide_plain(
    e: &ParabolicBundle,
    slope: &Rational,
    classify: impl Fn(&Rational) -> Verdict,
) -> Result<StabilityVerdict> {
    let mut candidates = line_subbundle_candidates(e, slope)?;
    // largest bound first; ties keep enumeration order
    candidates.sort_by(|x, y| y.bound.cmp(&x.bound));
    for c in candidates {
        if let Some(section) = incidence_sections(e, c.degree, &c.in_second_step)
            .into_iter()
            .next()
        {
            let line = saturate(&section, e)?;
            let best = line.parabolic_degree();
            debug_assert_eq!(best, c.bound);
            return Ok(StabilityVerdict {
                verdict: classify(&best),
                witness: Some(line),
                conjugate_witness: None,
                slope: slope.clone(),
                max_line_degree: Some(best),
            });
        }
    }
    Ok(StabilityVerdict {
        verdict: Verdict::Stable,
        witness: None,
        conjugate_witness: None,
        slope: slope.clone(),
        max_line_degree: None,
    })
}

/// Invariant lines of a nonzero traceless field are its eigenlines: `Phi s =
/// lambda s` with `lambda^2 = -det Phi`.
fn decide_with_field(
    e: &ParabolicBundle,
    phi: &PolyMatrix,
    slope: &Rational,
    classify: impl Fn(&Rational) -> Verdict,
) -> Result<StabilityVerdict> {
    let delta = -phi.determinant()?;
    let mut lines: Vec<SubbundleData> = Vec::new();
    let mut conjugate: Option<ConjugateLine> = None;
    if delta.is_zero() {
        lines.push(saturate(&kernel_vector(phi), e)?);
    } else if let Some((c, q)) = square_decomposition(&delta) {
        match rational_sqrt(&c) {
            Some(root) => {
                let lambda = q.scale(&root);
                for sign in [Rational::one(), -Rational::one()] {
                    let shifted = shift_diagonal(phi, &lambda.scale(&sign));
                    lines.push(saturate(&kernel_vector(&shifted), e)?);
                }
            }
            None => conjugate = Some(conjugate_eigenline(e, phi, &c, &q)?),
        }
    }
    let mut best: Option<(Rational, Option<SubbundleData>)> = None;
    for line in lines {
        debug_assert!(invariance_check(phi, &line));
        let d = line.parabolic_degree();
        if best.as_ref().is_none_or(|(b, _)| &d > b) {
            best = Some((d, Some(line)));
        }
    }
    if let Some(cl) = &conjugate {
        let d = cl.parabolic_degree();
        if best.as_ref().is_none_or(|(b, _)| &d > b) {
            best = Some((d, None));
        }
    }
    let Some((top, line)) = best else {
        return Ok(StabilityVerdict {
            verdict: Verdict::Stable,
            witness: None,
            conjugate_witness: None,
            slope: slope.clone(),
            max_line_degree: None,
        });
    };
    let verdict = classify(&top);
    let unstable_side = verdict != Verdict::Stable;
    Ok(StabilityVerdict {
        verdict,
        conjugate_witness: if unstable_side && line.is_none() {
            conjugate
        } else {
            None
        },
        witness: if unstable_side { line } else { None },
        slope: slope.clone(),
        max_line_degree: Some(top),
    })
}

fn shift_diagonal(phi: &PolyMatrix, lambda: &Poly) -> PolyMatrix {
    let mut m = phi.clone();
    for i in 0..2 {
        m.set(i, i, &m.get(i, i).clone() - lambda);
    }
    m
}

/// A nonzero vector in the kernel of a rank-one 2x2 matrix.
fn kernel_vector(m: &PolyMatrix) -> Vec<Poly> {
    for i in 0..2 {
        let (x, y) = (m.get(i, 0), m.get(i, 1));
        if !x.is_zero() || !y.is_zero() {
            return vec![y.clone(), -x];
        }
    }
    vec![Poly::one(), Poly::zero()]
}

/// `delta = c q^2` with `c` rational and `q` a polynomial, if possible.
fn square_decomposition(delta: &Poly) -> Option<(Rational, Poly)> {
    let lead = delta.leading()?.clone();
    let monic = delta.scale(&lead.recip());
    // monic square root by comparing coefficients from the top
    let n = monic.degree()?;
    if n % 2 == 1 {
        return None;
    }
    let m = n / 2;
    let mut root = vec![Rational::zero(); m + 1];
    root[m] = Rational::one();
    for k in (0..m).rev() {
        // coefficient of z^{m + k} in root^2
        let mut acc = Rational::zero();
        for i in k + 1..=m {
            let j = m + k - i;
            if j > k && j <= m {
                acc += &root[i] * &root[j];
            }
        }
        root[k] = (monic.coeff(m + k) - acc) / Rational::from_integer(2.into());
    }
    let q = Poly::new(root);
    if &q * &q == monic {
        Some((lead, q))
    } else {
        None
    }
}

fn conjugate_eigenline(
    e: &ParabolicBundle,
    phi: &PolyMatrix,
    c: &Rational,
    q: &Poly,
) -> Result<ConjugateLine> {
    let lift = |p: &Poly| -> Polynomial<Quadratic> {
        Polynomial::new(
            p.coeffs()
                .iter()
                .map(|x| Quadratic::new(x.clone(), Rational::zero(), c.clone()))
                .collect(),
        )
    };
    let lambda: Polynomial<Quadratic> = Polynomial::new(
        q.coeffs()
            .iter()
            .map(|x| Quadratic::new(Rational::zero(), x.clone(), c.clone()))
            .collect(),
    );
    let m = |i: usize, j: usize| {
        let v = lift(phi.get(i, j));
        if i == j {
            &v - &lambda
        } else {
            v
        }
    };
    let mut s = None;
    for i in 0..2 {
        let (x, y) = (m(i, 0), m(i, 1));
        if !x.is_zero() || !y.is_zero() {
            s = Some([y, -x]);
            break;
        }
    }
    let [u, v] = s.ok_or_else(|| Error::Precondition("field is scalar".into()))?;
    let g = u.gcd(&v);
    let (u, v) = (u.exact_div(&g).unwrap(), v.exact_div(&g).unwrap());
    let (a, b) = (e.splitting()[0], e.splitting()[1]);
    let degree = [(a, &u), (b, &v)]
        .iter()
        .filter(|(_, s)| !s.is_zero())
        .map(|(d, s)| d - s.degree().unwrap() as i64)
        .min()
        .unwrap();
    let mut incidence = Vec::new();
    for (point, p) in e.curve().points().iter().enumerate() {
        let at = Quadratic::new(p.clone(), Rational::zero(), c.clone());
        let (su, sv) = (u.eval(&at), v.eval(&at));
        let flag = &e.flags()[point];
        let fx = Quadratic::new(flag.get(0, 1).clone(), Rational::zero(), c.clone());
        let fy = Quadratic::new(flag.get(1, 1).clone(), Rational::zero(), c.clone());
        let det = su * fy - sv * fx;
        incidence.push(if det.is_zero() { 2 } else { 1 });
    }
    let induced_weights = incidence
        .iter()
        .zip(e.weights())
        .map(|(&i, w)| w[i - 1].clone())
        .collect();
    let split = |p: &Polynomial<Quadratic>| -> (Poly, Poly) {
        (
            Poly::new(p.coeffs().iter().map(|x| x.re.clone()).collect()),
            Poly::new(p.coeffs().iter().map(|x| x.im.clone()).collect()),
        )
    };
    let (ur, ui) = split(&u);
    let (vr, vi) = split(&v);
    Ok(ConjugateLine {
        radicand: c.clone(),
        re: vec![ur, vr],
        im: vec![ui, vi],
        degree,
        incidence,
        induced_weights,
    })
}
