//! Hitchin maps for the general linear, symplectic and orthogonal groups.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::pairing::{PairingForm, Symmetry};
use crate::parabolic::{MarkedCurve, ParabolicBundle};
use crate::scalar::rational_sqrt;
use crate::{Poly, PolyMatrix, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Group {
    /// `GL(n)`.
    GeneralLinear(usize),
    /// `Sp(2m)`.
    Symplectic(usize),
    /// `SO(2m)`.
    EvenOrthogonal(usize),
    /// `SO(2m+1)`.
    OddOrthogonal(usize),
}

impl Group {
    pub fn rank(&self) -> usize {
        match *self {
            Group::GeneralLinear(n) => n,
            Group::Symplectic(m) | Group::EvenOrthogonal(m) => 2 * m,
            Group::OddOrthogonal(m) => 2 * m + 1,
        }
    }

    /// The group preserving a form of this symmetry on a rank-`n` bundle.
    pub fn for_form(n: usize, symmetry: Symmetry) -> Result<Self> {
        match symmetry {
            Symmetry::Antisymmetric if n.is_multiple_of(2) => Ok(Group::Symplectic(n / 2)),
            Symmetry::Antisymmetric => Err(Error::OddDimension(n)),
            Symmetry::Symmetric if n.is_multiple_of(2) => Ok(Group::EvenOrthogonal(n / 2)),
            Symmetry::Symmetric => Ok(Group::OddOrthogonal(n / 2)),
        }
    }

    /// `C*`-weights of the base coordinates.
    pub fn weights(&self) -> Vec<u32> {
        match *self {
            Group::GeneralLinear(n) => (1..=n as u32).collect(),
            Group::Symplectic(m) | Group::OddOrthogonal(m) => {
                (1..=m as u32).map(|i| 2 * i).collect()
            }
            Group::EvenOrthogonal(m) => {
                let mut w: Vec<u32> = (1..m as u32).map(|i| 2 * i).collect();
                w.push(m as u32);
                w
            }
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Group::GeneralLinear(n) => write!(f, "GL({n})"),
            Group::Symplectic(m) => write!(f, "Sp({})", 2 * m),
            Group::EvenOrthogonal(m) => write!(f, "SO({})", 2 * m),
            Group::OddOrthogonal(m) => write!(f, "SO({})", 2 * m + 1),
        }
    }
}

/// A point of the Hitchin base. For `SO(2m)` the last coordinate is the
/// Pfaffian slot.
#[derive(Debug, Clone, PartialEq)]
pub struct HitchinPoint {
    pub group: Group,
    pub coefficients: Vec<Poly>,
}

impl HitchinPoint {
    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Zero::is_zero)
    }

    /// Whether each coordinate of weight `i` has degree at most `i * twist`.
    pub fn respects_degree_bounds(&self, twist: i64) -> bool {
        self.group
            .weights()
            .iter()
            .zip(&self.coefficients)
            .all(|(&w, c)| c.is_zero() || c.signed_degree() <= i64::from(w) * twist)
    }
}

/// `t . a`: each coordinate multiplied by `t^weight`.
pub fn base_scale(t: &Rational, a: &HitchinPoint) -> Result<HitchinPoint> {
    if t.is_zero() {
        return Err(Error::ZeroScale);
    }
    let coefficients = a
        .group
        .weights()
        .iter()
        .zip(&a.coefficients)
        .map(|(&w, c)| c.scale(&num_traits::pow(t.clone(), w as usize)))
        .collect();
    Ok(HitchinPoint {
        group: a.group,
        coefficients,
    })
}

/// The Hitchin map of a group, together with the form it needs.
#[derive(Debug, Clone)]
pub struct HitchinMap {
    group: Group,
    form: Option<PolyMatrix>,
    pfaffian_scale: Rational,
    pfaffian_normalization: Rational,
}

impl HitchinMap {
    pub fn general_linear(n: usize) -> Self {
        Self {
            group: Group::GeneralLinear(n),
            form: None,
            pfaffian_scale: Rational::one(),
            pfaffian_normalization: Rational::one(),
        }
    }

    /// The map for the group of `pairing`.
    ///
    /// For `SO(2m)` the Pfaffian slot is `pf(B Phi) / sqrt(det B)` when
    /// `det B` is a rational square (so that it squares to `s_{2m}`).
    /// Otherwise it is `pf(B Phi)` and squares to `det B * s_{2m}`; the factor
    /// is reported by [`HitchinMap::pfaffian_normalization`].
    pub fn for_pairing(pairing: &PairingForm) -> Result<Self> {
        let group = Group::for_form(pairing.rank(), pairing.symmetry())?;
        let mut map = Self {
            group,
            form: Some(pairing.omega().clone()),
            pfaffian_scale: Rational::one(),
            pfaffian_normalization: Rational::one(),
        };
        if let Group::EvenOrthogonal(_) = group {
            let det = pairing.omega().determinant()?;
            if !det.is_constant() || det.is_zero() {
                return Err(Error::InvalidPairing(
                    "det B must be a nonzero constant".into(),
                ));
            }
            let d = det.coeff(0);
            match rational_sqrt(&d) {
                Some(root) => map.pfaffian_scale = root.recip(),
                None => map.pfaffian_normalization = d,
            }
        }
        Ok(map)
    }

    pub fn group(&self) -> Group {
        self.group
    }

    /// `delta` with `delta * s_{2m} = (Pfaffian slot)^2`; 1 except for
    /// `SO(2m)` forms whose determinant is not a rational square.
    pub fn pfaffian_normalization(&self) -> &Rational {
        &self.pfaffian_normalization
    }

    pub fn image(&self, phi: &PolyMatrix) -> Result<HitchinPoint> {
        let n = self.group.rank();
        if phi.rows() != n || phi.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} field for {}",
                phi.rows(),
                phi.cols(),
                self.group
            )));
        }
        let s = phi.char_poly()?;
        let odd_vanish = || s.iter().step_by(2).all(Zero::is_zero);
        let evens = || s.iter().skip(1).step_by(2).cloned().collect::<Vec<_>>();
        let coefficients = match self.group {
            Group::GeneralLinear(_) => s,
            Group::Symplectic(_) => {
                if !odd_vanish() {
                    return Err(Error::Incompatible(
                        "odd characteristic coefficient nonzero".into(),
                    ));
                }
                evens()
            }
            Group::OddOrthogonal(_) => {
                if !odd_vanish() {
                    return Err(Error::Incompatible(
                        "characteristic polynomial not of the form x * even".into(),
                    ));
                }
                evens()
            }
            Group::EvenOrthogonal(m) => {
                if !odd_vanish() {
                    return Err(Error::Incompatible(
                        "odd characteristic coefficient nonzero".into(),
                    ));
                }
                let b = self.form.as_ref().expect("orthogonal map has a form");
                let bphi = b * phi;
                let pf = bphi
                    .pfaffian()
                    .map_err(|_| Error::Incompatible("B Phi is not antisymmetric".into()))?
                    .scale(&self.pfaffian_scale);
                let top = &s[2 * m - 1];
                if &pf * &pf != top.scale(&self.pfaffian_normalization) {
                    return Err(Error::Incompatible(
                        "Pfaffian does not square to s_2m".into(),
                    ));
                }
                let mut c = evens();
                c.pop();
                c.push(pf);
                c
            }
        };
        Ok(HitchinPoint {
            group: self.group,
            coefficients,
        })
    }

    /// `h(t Phi) == t . h(Phi)`.
    pub fn equivariance_check(&self, phi: &PolyMatrix, t: &Rational) -> Result<bool> {
        let scaled = phi.map(|e| e.scale(t));
        Ok(self.image(&scaled)? == base_scale(t, &self.image(phi)?)?)
    }
}

/// All characteristic coefficients vanish identically.
pub fn nilpotency_check(phi: &PolyMatrix) -> bool {
    phi.char_poly()
        .map(|s| s.iter().all(Zero::is_zero))
        .unwrap_or(false)
}

/// Per marked point: the value of `phi` in the flag basis is strictly lower
/// triangular, i.e. it maps each flag step into the next one.
pub fn residue_nilpotency_check(e: &ParabolicBundle, phi: &PolyMatrix) -> Vec<bool> {
    (0..e.curve().len())
        .map(|point| {
            let m = e.residue_in_flag_basis(phi, point);
            (0..m.rows()).all(|l| (l..m.cols()).all(|c| m.get(l, c).is_zero()))
        })
        .collect()
}

/// Every coordinate vanishes at every marked point.
pub fn strong_vanishing_check(a: &HitchinPoint, curve: &MarkedCurve) -> bool {
    a.coefficients
        .iter()
        .all(|c| curve.points().iter().all(|p| c.eval(p).is_zero()))
}
