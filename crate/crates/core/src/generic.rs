//! Seeded "generic" isotropic flags.
//!
//! At each marked point the form `omega(p)` is brought to a basis
//! `x_1..x_m, [u], y_m..y_1` with `omega(x_a, y_a) = 1` and all other pairings
//! among the `x`s and `y`s zero. Coordinate flags in that basis are isotropic.
//! A random isometry from the Cayley transform `(I - A)^{-1}(I + A)`, with `A`
//! in the Lie algebra of the form, then moves the flag to a random position.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::pairing::{PairingForm, Symmetry};
use crate::parabolic::MarkedCurve;
use crate::{QMatrix, Rational};

const ENTRY_RANGE: i64 = 5;
const ISOTROPIC_SEARCH: i64 = 3;
const CAYLEY_ATTEMPTS: usize = 64;

/// One isotropic full flag per marked point, deterministic in `seed`.
pub fn generic_flags(
    curve: &MarkedCurve,
    pairing: &PairingForm,
    seed: u64,
) -> Result<Vec<QMatrix>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    curve
        .points()
        .iter()
        .map(|p| generic_flag(&pairing.value_at(p), pairing.symmetry(), &mut rng))
        .collect()
}

pub fn generic_flag(form: &QMatrix, symmetry: Symmetry, rng: &mut impl Rng) -> Result<QMatrix> {
    let basis = adapted_basis(form, symmetry)?;
    let gram = &(&basis.transpose() * form) * &basis;
    let gram_inv = gram.inverse()?;
    let n = form.rows();
    for _ in 0..CAYLEY_ATTEMPTS {
        let s = random_structured(n, symmetry, rng);
        let a = &gram_inv * &s;
        let id = QMatrix::identity(n);
        let Ok(inv) = (&id - &a).inverse() else {
            continue;
        };
        let g = &inv * &(&id + &a);
        return Ok(&basis * &g);
    }
    Err(Error::Unsupported(
        "no invertible Cayley transform found".into(),
    ))
}

/// Symmetric entries for an alternating form, antisymmetric for a symmetric
/// one, so that `gram^{-1} S` lies in the Lie algebra of `gram`.
fn random_structured(n: usize, symmetry: Symmetry, rng: &mut impl Rng) -> QMatrix {
    let mut s = QMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = Rational::from_integer(rng.gen_range(-ENTRY_RANGE..=ENTRY_RANGE).into());
            match symmetry {
                Symmetry::Antisymmetric => {
                    s.set(i, j, v.clone());
                    s.set(j, i, v);
                }
                Symmetry::Symmetric if i != j => {
                    s.set(i, j, v.clone());
                    s.set(j, i, -v);
                }
                Symmetry::Symmetric => {}
            }
        }
    }
    s
}

fn pair(form: &QMatrix, v: &[Rational], w: &[Rational]) -> Rational {
    let fw = form.mul_vec(w);
    v.iter()
        .zip(&fw)
        .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
}

fn axpy(v: &[Rational], c: &Rational, w: &[Rational]) -> Vec<Rational> {
    v.iter().zip(w).map(|(a, b)| a + c * b).collect()
}

/// Columns `x_1..x_m, [u], y_m..y_1` as described in the module docs.
pub fn adapted_basis(form: &QMatrix, symmetry: Symmetry) -> Result<QMatrix> {
    let n = form.rows();
    if form.rank() < n {
        return Err(Error::Singular);
    }
    let mut rest: Vec<Vec<Rational>> = QMatrix::identity(n).to_rows();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    while rest.len() >= 2 {
        let x = match symmetry {
            Symmetry::Antisymmetric => rest[0].clone(),
            Symmetry::Symmetric => match find_isotropic(form, &rest) {
                Some(x) => x,
                None => break,
            },
        };
        let partner = rest
            .iter()
            .find(|v| !pair(form, &x, v).is_zero())
            .ok_or(Error::Singular)?
            .clone();
        let c = pair(form, &x, &partner);
        let mut y: Vec<Rational> = partner.iter().map(|e| e / &c).collect();
        if symmetry == Symmetry::Symmetric {
            let half = pair(form, &y, &y) / Rational::from_integer(2.into());
            y = axpy(&y, &-half, &x);
        }
        // project the remaining vectors onto the complement of span(x, y)
        let projected: Vec<Vec<Rational>> = rest
            .iter()
            .map(|v| {
                let vx = pair(form, v, &x);
                let vy = pair(form, v, &y);
                match symmetry {
                    Symmetry::Antisymmetric => axpy(&axpy(v, &vx, &y), &-vy, &x),
                    Symmetry::Symmetric => axpy(&axpy(v, &-vy, &x), &-vx, &y),
                }
            })
            .collect();
        let (reduced, pivots) = QMatrix::from_rows(projected)?.rref();
        rest = reduced.to_rows().into_iter().take(pivots.len()).collect();
        xs.push(x);
        ys.push(y);
    }
    if rest.len() > 1 {
        return Err(Error::Unsupported(
            "form has no rational isotropic vectors for an isotropic flag".into(),
        ));
    }
    let mut cols = xs;
    cols.extend(rest);
    cols.extend(ys.into_iter().rev());
    Ok(QMatrix::from_rows(cols)?.transpose())
}

/// A nonzero vector in `span(rest)` on which the quadratic form vanishes,
/// searched over small integer combinations.
fn find_isotropic(form: &QMatrix, rest: &[Vec<Rational>]) -> Option<Vec<Rational>> {
    let k = rest.len();
    let side = (2 * ISOTROPIC_SEARCH + 1) as usize;
    let total = side.checked_pow(k as u32)?;
    for code in 1..total {
        let mut c = code;
        let mut v = vec![Rational::zero(); form.rows()];
        for basis_vec in rest {
            let coeff = Rational::from_integer(((c % side) as i64 - ISOTROPIC_SEARCH).into());
            c /= side;
            if !coeff.is_zero() {
                v = axpy(&v, &coeff, basis_vec);
            }
        }
        if v.iter().any(|e| !e.is_zero()) && pair(form, &v, &v).is_zero() {
            return Some(v);
        }
    }
    None
}

/// True when every pairing `omega(f_a, f_b)` with `a + b > n + 1` (1-based)
/// vanishes: the flag steps `E_i` and `E_{n+2-i}` are orthogonal.
pub fn is_isotropic_flag(form: &QMatrix, flag: &QMatrix) -> bool {
    let n = form.rows();
    let gram = &(&flag.transpose() * form) * flag;
    (0..n).all(|a| (0..n).all(|b| a + b + 2 <= n + 1 || gram.get(a, b).is_zero()))
}
