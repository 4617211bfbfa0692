//! Dense polynomials with exact rational coefficients.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::linalg::Rational;

/// Univariate polynomial, coefficients from the constant term up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly(pub Vec<Rational>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.iter().rposition(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly(out).trimmed()
    }

    /// `(s - root)`
    pub fn linear_factor(root: &Rational) -> Poly {
        Poly(vec![-root.clone(), Rational::one()])
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.0[dd].clone();
        let mut rem = self.clone().trimmed();
        let Some(nd) = rem.degree() else {
            return (Poly::zero(), Poly::zero());
        };
        if nd < dd {
            return (Poly::zero(), rem);
        }
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem.0[k + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.0.iter().enumerate().take(dd + 1) {
                let v = &c * d;
                rem.0[k + i] -= v;
            }
            quot[k] = c;
        }
        (Poly(quot).trimmed(), rem.trimmed())
    }

    /// Newton interpolation through `(xs[i], ys[i])`.
    pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> Poly {
        assert_eq!(xs.len(), ys.len());
        let n = xs.len();
        let mut coef = ys.to_vec();
        for j in 1..n {
            for i in (j..n).rev() {
                coef[i] = (&coef[i] - &coef[i - 1]) / (&xs[i] - &xs[i - j]);
            }
        }
        let mut p = Poly(vec![coef[n - 1].clone()]);
        for i in (0..n - 1).rev() {
            p = p.mul(&Poly::linear_factor(&xs[i]));
            if p.0.is_empty() {
                p.0.push(Rational::zero());
            }
            p.0[0] += &coef[i];
        }
        p.trimmed()
    }
}

/// Homogeneous-or-not polynomial in three variables with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Ternary(pub BTreeMap<[u8; 3], BigInt>);

impl Ternary {
    pub fn linear(coeffs: [BigInt; 3]) -> Ternary {
        let mut m = BTreeMap::new();
        for (k, c) in coeffs.into_iter().enumerate() {
            if !c.is_zero() {
                let mut e = [0u8; 3];
                e[k] = 1;
                m.insert(e, c);
            }
        }
        Ternary(m)
    }

    pub fn constant(c: BigInt) -> Ternary {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert([0, 0, 0], c);
        }
        Ternary(m)
    }

    pub fn mul(&self, other: &Ternary) -> Ternary {
        let mut out: BTreeMap<[u8; 3], BigInt> = BTreeMap::new();
        for (ea, ca) in &self.0 {
            for (eb, cb) in &other.0 {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                *out.entry(e).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ternary(out)
    }

    pub fn add_assign(&mut self, other: &Ternary, negate: bool) {
        for (e, c) in &other.0 {
            let entry = self.0.entry(*e).or_insert_with(BigInt::zero);
            if negate {
                *entry -= c;
            } else {
                *entry += c;
            }
        }
        self.0.retain(|_, c| !c.is_zero());
    }

    pub fn derivative(&self, k: usize) -> Ternary {
        let mut out = BTreeMap::new();
        for (e, c) in &self.0 {
            if e[k] > 0 {
                let mut d = *e;
                d[k] -= 1;
                out.insert(d, c * BigInt::from(e[k]));
            }
        }
        Ternary(out)
    }

    pub fn coefficient(&self, e: [u8; 3]) -> BigInt {
        self.0.get(&e).cloned().unwrap_or_else(BigInt::zero)
    }
}
