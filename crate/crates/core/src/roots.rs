//! Exact rational roots of rational polynomials.
//!
//! Real roots are isolated by Sturm sequences and bisection. A rational root
//! `u/v` of a primitive integer polynomial has `v` dividing the leading
//! coefficient `a`, and two such fractions are at least `1/a^2` apart, so once
//! an isolating interval is narrower than that the simplest fraction inside it
//! is the only possible rational root.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::rat;
use crate::{Poly, Rational};

/// Distinct rational roots in increasing order.
pub fn rational_roots(p: &Poly) -> Vec<Rational> {
    let mut roots = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return roots;
    }
    let mut q = p.squarefree_part();
    // deflate every rational root we stumble on and restart the isolation
    'restart: loop {
        if q.degree().unwrap_or(0) == 0 {
            break;
        }
        if q.coeff(0).is_zero() {
            roots.push(Rational::zero());
            q = q.exact_div(&Poly::var()).unwrap();
            continue;
        }
        let bound = cauchy_bound(&q);
        let sturm = sturm_sequence(&q);
        let lead = primitive_leading(&q);
        let sep = Rational::new(BigInt::one(), &lead * &lead * BigInt::from(2));
        let mut stack = vec![(-bound.clone(), bound)];
        let mut isolated = Vec::new();
        while let Some((a, b)) = stack.pop() {
            let count = variations(&sturm, &a) - variations(&sturm, &b);
            match count {
                0 => {}
                1 => isolated.push((a, b)),
                _ => {
                    let m = (&a + &b) / rat(2);
                    if q.eval(&m).is_zero() {
                        roots.push(m.clone());
                        q = q.exact_div(&Poly::linear_root(m)).unwrap();
                        continue 'restart;
                    }
                    stack.push((m.clone(), b));
                    stack.push((a, m));
                }
            }
        }
        for (mut a, mut b) in isolated {
            let mut sign_a = q.eval(&a).is_positive();
            loop {
                if &b - &a < sep {
                    let cand = simplest_between(&a, &b);
                    if q.eval(&cand).is_zero() {
                        roots.push(cand);
                    }
                    break;
                }
                let m = (&a + &b) / rat(2);
                let vm = q.eval(&m);
                if vm.is_zero() {
                    roots.push(m);
                    break;
                }
                if vm.is_positive() == sign_a {
                    a = m;
                    sign_a = vm.is_positive();
                } else {
                    b = m;
                }
            }
        }
        break;
    }
    roots.sort();
    roots.dedup();
    roots
}

/// Number of distinct real roots.
pub fn real_root_count(p: &Poly) -> usize {
    if p.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let q = p.squarefree_part();
    let bound = cauchy_bound(&q);
    let sturm = sturm_sequence(&q);
    variations(&sturm, &-bound.clone()) - variations(&sturm, &bound)
}

/// The fraction with the smallest denominator in the closed interval.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    debug_assert!(lo <= hi);
    if !lo.is_positive() && !hi.is_negative() {
        return Rational::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi.clone(), &-lo.clone());
    }
    let fl = lo.floor();
    if &fl == lo {
        return fl;
    }
    let next = &fl + Rational::one();
    if &next <= hi {
        return next;
    }
    let inner = simplest_between(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}

fn cauchy_bound(p: &Poly) -> Rational {
    let lead = p.leading().unwrap().abs();
    let max = p.coeffs()[..p.coeffs().len() - 1]
        .iter()
        .map(|c| c.abs() / &lead)
        .max()
        .unwrap_or_else(Rational::zero);
    max + rat(1)
}

fn primitive_leading(p: &Poly) -> BigInt {
    let den_lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(den_lcm.clone())).to_integer())
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    (ints.last().unwrap() / content).abs()
}

fn sturm_sequence(p: &Poly) -> Vec<Poly> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        let r = seq[n - 2].div_rem(&seq[n - 1]).1;
        if r.is_zero() {
            break;
        }
        seq.push(-r);
    }
    seq
}

fn variations(seq: &[Poly], x: &Rational) -> usize {
    let signs: Vec<bool> = seq
        .iter()
        .map(|p| p.eval(x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}
