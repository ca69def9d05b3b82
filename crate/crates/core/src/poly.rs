//! Characteristic polynomials and rational roots, enough to find eigenvalues
//! for Fitting splits.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::linalg::Matrix;
use crate::rational::Rational;

/// Coefficients `c_0..=c_n` of `det(tI - a)`, lowest degree first.
pub fn charpoly(a: &Matrix) -> Vec<Rational> {
    assert!(a.is_square(), "charpoly of a non-square matrix");
    let n = a.rows();
    let mut c = vec![Rational::zero(); n + 1];
    c[n] = Rational::one();
    let mut m = Matrix::zeros(n, n);
    for k in 1..=n {
        m = &(a * &m) + &Matrix::scalar(n, &c[n - k + 1]);
        let am = a * &m;
        c[n - k] = -am.trace() / Rational::from_integer(BigInt::from(k));
    }
    c
}

pub fn eval(p: &[Rational], x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

fn trim(p: &mut Vec<Rational>) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// Remainder and quotient of `a / b` for `b` nonzero.
fn divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() <= db {
        return (vec![Rational::zero()], r);
    }
    let mut q = vec![Rational::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let coef = &r[i + db] / &lead;
        if !coef.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[i + j] -= &coef * bj;
            }
        }
        q[i] = coef;
    }
    r.truncate(db.max(1));
    trim(&mut r);
    (q, r)
}

fn gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    while !(b.len() == 1 && b[0].is_zero()) {
        let (_, r) = divrem(&a, &b);
        a = b;
        b = r;
    }
    let lead = a.last().cloned().unwrap_or_else(Rational::one);
    a.iter().map(|c| c / &lead).collect()
}

/// `p / gcd(p, p')`: same roots, each simple.
pub fn squarefree(p: &[Rational]) -> Vec<Rational> {
    let mut p = p.to_vec();
    trim(&mut p);
    if p.len() <= 2 {
        return p;
    }
    let dp: Vec<Rational> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
        .collect();
    let g = gcd(&p, &dp);
    divrem(&p, &g).0
}

const TRIAL_LIMIT: u64 = 1_000_000;

/// Positive divisors of `n`; the cofactor left after trial division is treated as prime.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut ds = vec![BigInt::one()];
    let mut p = 2u64;
    while p <= TRIAL_LIMIT && BigInt::from(p) * BigInt::from(p) <= n {
        let bp = BigInt::from(p);
        let mut e = 0;
        while (&n % &bp).is_zero() {
            n /= &bp;
            e += 1;
        }
        if e > 0 {
            let mut next = Vec::new();
            for d in &ds {
                let mut f = d.clone();
                for _ in 0..=e {
                    next.push(f.clone());
                    f *= &bp;
                }
            }
            ds = next;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() {
        let extra: Vec<BigInt> = ds.iter().map(|d| d * &n).collect();
        ds.extend(extra);
    }
    ds
}

/// Distinct rational roots of `p`, ascending. Best effort when a coefficient
/// has a prime factor beyond the trial-division bound.
pub fn rational_roots(p: &[Rational]) -> Vec<Rational> {
    let mut p = squarefree(p);
    trim(&mut p);
    let mut roots = Vec::new();
    if p.len() <= 1 {
        return roots;
    }
    if p[0].is_zero() {
        roots.push(Rational::zero());
        while p.len() > 1 && p[0].is_zero() {
            p.remove(0);
        }
        if p.len() <= 1 {
            return roots;
        }
    }
    let den = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
    let (a0, an) = (&ints[0], &ints[ints.len() - 1]);
    // Bail out rather than spend unbounded time enumerating huge divisor sets.
    if a0.bits() > 128 || an.bits() > 128 {
        return roots;
    }
    let (num_ds, den_ds) = (divisors(a0), divisors(an));
    let mut seen = std::collections::BTreeSet::new();
    for num in &num_ds {
        for d in &den_ds {
            for sign in [1, -1] {
                let cand = Rational::new(num * sign, d.clone());
                if seen.insert(cand.clone()) && eval(&p, &cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots
}

/// Distinct rational eigenvalues of a square matrix.
pub fn rational_eigenvalues(a: &Matrix) -> Vec<Rational> {
    if a.rows() == 0 {
        return Vec::new();
    }
    rational_roots(&charpoly(a))
}

/// Small-integer view of a polynomial for display, when every coefficient is integral and fits.
pub fn to_i64(p: &[Rational]) -> Option<Vec<i64>> {
    p.iter().map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, q_frac};

    #[test]
    fn charpoly_of_companion() {
        // Companion matrix of t^2 - 3t + 2.
        let a = Matrix::from_i64(2, 2, &[0, -2, 1, 3]);
        assert_eq!(to_i64(&charpoly(&a)), Some(vec![2, -3, 1]));
        assert_eq!(rational_eigenvalues(&a), vec![q(1), q(2)]);
    }

    #[test]
    fn repeated_and_irrational_roots() {
        // (t-1)^2 (t^2 - 2)
        let p: Vec<Rational> = [-2, 4, -1, -2, 1].iter().map(|&c| q(c)).collect();
        assert_eq!(rational_roots(&p), vec![q(1)]);
    }

    #[test]
    fn fractional_roots() {
        // (2t - 1)(3t + 2) = 6t^2 + t - 2
        let p = vec![q(-2), q(1), q(6)];
        assert_eq!(rational_roots(&p), vec![q_frac(-2, 3), q_frac(1, 2)]);
    }

    #[test]
    fn nilpotent_has_only_zero() {
        let a = Matrix::from_i64(3, 3, &[0, 1, 0, 0, 0, 1, 0, 0, 0]);
        assert_eq!(rational_eigenvalues(&a), vec![q(0)]);
    }
}
