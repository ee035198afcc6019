//! Dense univariate polynomials over [`Scalar`] in an abstract variable `u`.
//!
//! The coefficient vector is always trimmed: the zero polynomial is the
//! empty sequence and its degree is `None`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    /// Builds a polynomial from coefficients (index k = coefficient of u^k),
    /// trimming trailing zeros.
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `c * u^k`.
    pub fn monomial(c: Scalar, k: usize) -> Self {
        let mut coeffs = vec![Scalar::zero(); k + 1];
        coeffs[k] = c;
        Poly::new(coeffs)
    }

    /// The identity polynomial `u`.
    pub fn var() -> Self {
        Poly::monomial(Scalar::one(), 1)
    }

    /// `u + c` for an affine factor.
    pub fn linear(constant: Scalar) -> Self {
        Poly::new(vec![constant, Scalar::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` as the "minus infinity" degree of the zero
    /// polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Exact substitution `p(alpha*u + beta)` by Horner evaluation in the
    /// polynomial ring.
    pub fn compose_affine(&self, alpha: &Scalar, beta: &Scalar) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            // acc = acc*(alpha*u + beta) + c
            let mut next = vec![Scalar::zero(); acc.coeffs.len() + 1];
            for (k, a) in acc.coeffs.iter().enumerate() {
                next[k + 1] = &next[k + 1] + &(a * alpha);
                next[k] = &next[k] + &(a * beta);
            }
            next[0] = &next[0] + c;
            acc = Poly::new(next);
        }
        acc
    }

    /// Shift `p(u + beta)`.
    pub fn shift(&self, beta: &Scalar) -> Poly {
        self.compose_affine(&Scalar::one(), beta)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * x + c;
        }
        acc
    }

    /// Exact division: returns the quotient when `divisor` divides `self`
    /// with zero remainder, `None` otherwise. Panics on a zero divisor.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let d_deg = divisor.degree().expect("division by the zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let n_deg = self.degree().unwrap();
        if n_deg < d_deg {
            return None;
        }
        let lead_inv = divisor.coeffs[d_deg].inv().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Scalar::zero(); n_deg - d_deg + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + d_deg] * &lead_inv;
            if !c.is_zero() {
                for (i, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + i] = &rem[k + i] - &(&c * dc);
                }
            }
            quot[k] = c;
        }
        if rem.iter().all(Scalar::is_zero) {
            Some(Poly::new(quot))
        } else {
            None
        }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + rhs.coeff(k));
        }
        Poly::new(out)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) - rhs.coeff(k));
        }
        Poly::new(out)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(out)
    }
}

macro_rules! forward_owned_poly_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $trait<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_poly_binop!(Add, add);
forward_owned_poly_binop!(Sub, sub);
forward_owned_poly_binop!(Mul, mul);

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::parser::format_poly(self))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}
