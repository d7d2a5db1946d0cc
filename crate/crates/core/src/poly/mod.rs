//! Dense univariate polynomials over the rationals.
//!
//! Coefficients are stored lowest degree first and the representation is
//! canonical: the highest stored coefficient is nonzero, and the zero
//! polynomial has no coefficients at all. Every operation is exact.

mod text;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use text::{parse_rat, rat_to_string};

/// Exact rational scalar. Always reduced, with a positive denominator.
pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivByZeroPoly,
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("operation requires a nonzero polynomial")]
    ZeroInput,
    #[error("operation requires degree at least 1")]
    DegreeTooSmall,
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

impl Poly {
    /// Builds a polynomial from coefficients, lowest degree first.
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Poly::new(vec![c])
    }

    /// The identity polynomial `t`.
    pub fn var() -> Self {
        Poly::monomial(Rat::one(), 1)
    }

    /// `c * t^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `t^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        Poly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Divides by the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            None => Poly::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division: `self = quot * divisor + rem` with `deg rem < deg divisor`.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly), PolyError> {
        let dd = divisor.degree().ok_or(PolyError::DivByZeroPoly)?;
        let Some(ds) = self.degree() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if ds < dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let inv_lc = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); ds - dd + 1];
        for k in (0..=ds - dd).rev() {
            let c = &rem[k + dd] * &inv_lc;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Quotient of a division known to be exact. Panics on a nonzero remainder.
    pub fn exact_div(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.divrem(divisor).expect("exact_div by zero polynomial");
        assert!(r.is_zero(), "exact_div left a nonzero remainder");
        q
    }

    pub fn divides(&self, other: &Poly) -> bool {
        match other.divrem(self) {
            Ok((_, r)) => r.is_zero(),
            Err(_) => other.is_zero(),
        }
    }

    /// `self(inner(t))`, by Horner's rule.
    pub fn compose(&self, inner: &Poly) -> Poly {
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| {
            &(&acc * inner) + &Poly::constant(c.clone())
        })
    }

    /// Product of the distinct monic irreducible factors: `p / gcd(p, p')`.
    pub fn squarefree_part(&self) -> Result<Poly, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroInput);
        }
        if self.is_constant() {
            return Ok(Poly::one());
        }
        let g = gcd(self, &self.derivative())?;
        Ok(self.exact_div(&g).monic())
    }

    /// Yun's decomposition into pairwise coprime monic squarefree factors.
    ///
    /// Returns `(factor, multiplicity)` pairs with nonconstant factors only,
    /// ordered by multiplicity. The product of `factor^multiplicity` equals
    /// `self` up to its leading coefficient.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(Poly, usize)>, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroInput);
        }
        let mut out = Vec::new();
        if self.is_constant() {
            return Ok(out);
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = gcd(&f, &df)?;
        let mut b = f.exact_div(&a0);
        let mut c = df.exact_div(&a0);
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while !b.is_constant() {
            let a = gcd(&b, &d)?;
            b = b.exact_div(&a);
            c = d.exact_div(&a);
            d = &c - &b.derivative();
            if !a.is_constant() {
                out.push((a, i));
            }
            i += 1;
        }
        Ok(out)
    }

    /// The polynomial square root with positive leading coefficient, if any.
    pub fn sqrt(&self) -> Option<Poly> {
        let Some(deg) = self.degree() else {
            return Some(Poly::zero());
        };
        if deg % 2 == 1 {
            return None;
        }
        let k = deg / 2;
        let lead = rational_root(&self.coeffs[deg], 2)?;
        let two_lead = &lead * rat(2);
        let mut root = vec![Rat::zero(); k + 1];
        root[k] = lead;
        // Match the coefficients of t^(2k-j) for j = 1..=k from the top down.
        for j in 1..=k {
            let mut acc = self.coeffs[deg - j].clone();
            for i in 1..j {
                acc -= &root[k - i] * &root[k - j + i];
            }
            root[k - j] = acc / &two_lead;
        }
        let root = Poly::new(root);
        (&root * &root == *self).then_some(root)
    }
}

/// Monic greatest common divisor.
pub fn gcd(p: &Poly, q: &Poly) -> Result<Poly, PolyError> {
    if p.is_zero() && q.is_zero() {
        return Err(PolyError::GcdOfZeros);
    }
    let mut a = p.clone();
    let mut b = q.clone();
    while !b.is_zero() {
        let (_, r) = a.divrem(&b)?;
        // Keeping the remainder monic stops coefficient growth.
        a = b;
        b = r.monic();
    }
    Ok(a.monic())
}

/// Resultant via the Euclidean remainder sequence.
///
/// Uses `res(a, b) = (-1)^(deg a * deg b) * lc(b)^(deg a - deg r) * res(b, r)`
/// with `r = a mod b`, and `res(a, c) = c^(deg a)` for a constant `c`.
pub fn resultant(p: &Poly, q: &Poly) -> Rat {
    if p.is_zero() || q.is_zero() {
        return Rat::zero();
    }
    let mut a = p.clone();
    let mut b = q.clone();
    let mut acc = Rat::one();
    loop {
        let m = a.degree().unwrap();
        let n = b.degree().unwrap();
        let lc_b = b.coeffs[n].clone();
        if n == 0 {
            return acc * pow_rat(&lc_b, m);
        }
        let (_, r) = a.divrem(&b).expect("nonzero divisor");
        let Some(dr) = r.degree() else {
            return Rat::zero();
        };
        if m * n % 2 == 1 {
            acc = -acc;
        }
        acc *= pow_rat(&lc_b, m - dr);
        a = b;
        b = r;
    }
}

/// `(-1)^(d(d-1)/2) * res(p, p') / lc(p)` with `d = deg p`.
pub fn discriminant(p: &Poly) -> Result<Rat, PolyError> {
    let d = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(PolyError::DegreeTooSmall),
    };
    let res = resultant(p, &p.derivative());
    let sign = if (d * (d - 1) / 2) % 2 == 1 {
        -Rat::one()
    } else {
        Rat::one()
    };
    Ok(sign * res / p.leading_coeff().unwrap())
}

fn pow_rat(x: &Rat, e: usize) -> Rat {
    num_traits::pow(x.clone(), e)
}

/// The rational `m`-th root of `x` with the sign of `x`, when one exists.
/// Negative `x` only has a root for odd `m`.
pub fn rational_root(x: &Rat, m: u32) -> Option<Rat> {
    assert!(m >= 1);
    if x.is_zero() {
        return Some(Rat::zero());
    }
    if x.is_negative() && m.is_multiple_of(2) {
        return None;
    }
    let root_int = |v: &BigInt| -> Option<BigInt> {
        let r = v.abs().nth_root(m);
        (num_traits::pow(r.clone(), m as usize) == v.abs()).then_some(r)
    };
    let num = root_int(x.numer())?;
    let den = root_int(x.denom())?;
    let r = Rat::new(num, den);
    Some(if x.is_negative() { -r } else { r })
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        Poly::new(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::new(coeffs)
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
