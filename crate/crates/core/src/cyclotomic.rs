//! Exact arithmetic in the cyclotomic field Q(ζ_N).
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{φ(N)-1}` modulo the
//! cyclotomic polynomial Φ_N, which makes equality a plain comparison of
//! coefficient vectors. Arithmetic between different orders is rejected;
//! use [`CycNum::lift_to_order`] to move to a common order explicitly.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::{QPoly, Rational};

/// Integer polynomial, ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// `X^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut c = vec![BigInt::zero(); n + 1];
        c[0] = BigInt::from(-1);
        c[n] = BigInt::one();
        Self::new(c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::new(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Division by a monic divisor; `None` if the divisor is not monic or the
    /// division leaves a remainder.
    pub fn exact_div_monic(&self, divisor: &Self) -> Option<Self> {
        let d = divisor.degree()?;
        if !divisor.coeffs[d].is_one() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return rem.iter().all(Zero::is_zero).then(|| Self::new(Vec::new()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            let q = rem[i].clone();
            if q.is_zero() {
                continue;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[i - d + j] -= &q * c;
            }
            quot[i - d] = q;
        }
        rem[..d].iter().all(Zero::is_zero).then(|| Self::new(quot))
    }
}

pub fn divisors(n: usize) -> Vec<usize> {
    let mut out: Vec<usize> = (1..=n).filter(|d| n % d == 0).collect();
    out.sort_unstable();
    out
}

pub fn euler_phi(n: usize) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

fn phi_cache() -> &'static RwLock<HashMap<usize, Arc<IntPoly>>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<IntPoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn cyclotomic_shared(n: usize) -> Arc<IntPoly> {
    assert!(n >= 1, "cyclotomic order must be positive");
    if let Some(p) = phi_cache().read().expect("cache poisoned").get(&n) {
        return Arc::clone(p);
    }
    let mut p = IntPoly::x_pow_minus_one(n);
    for d in divisors(n).into_iter().filter(|&d| d < n) {
        p = p
            .exact_div_monic(&cyclotomic_shared(d))
            .expect("Φ_d divides X^n - 1 for d | n");
    }
    let p = Arc::new(p);
    phi_cache()
        .write()
        .expect("cache poisoned")
        .entry(n)
        .or_insert_with(|| Arc::clone(&p));
    p
}

/// The `n`-th cyclotomic polynomial Φ_n. Panics for `n == 0`.
pub fn cyclotomic_poly(n: usize) -> IntPoly {
    (*cyclotomic_shared(n)).clone()
}

/// Element of Q(ζ_N) in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycNum {
    order: usize,
    coeffs: Vec<Rational>,
}

fn reduce(order: usize, mut v: Vec<Rational>) -> Vec<Rational> {
    let phi = cyclotomic_shared(order);
    let d = phi.degree().expect("Φ_N is non-zero");
    // fold X^N = 1 before reducing by Φ_N
    if v.len() > order {
        let tail = v.split_off(order);
        for (i, c) in tail.into_iter().enumerate() {
            v[i % order] += c;
        }
    }
    for i in (d..v.len()).rev() {
        if v[i].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut v[i]);
        for (j, p) in phi.coeffs()[..d].iter().enumerate() {
            if !p.is_zero() {
                v[i - d + j] -= &c * p;
            }
        }
    }
    v.resize(d, Rational::zero());
    v
}

impl CycNum {
    /// Builds an element from an arbitrary-length coefficient vector in powers
    /// of ζ_N, reducing it to canonical form.
    pub fn from_power_coeffs(order: usize, coeffs: Vec<Rational>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidInput("cyclotomic order must be positive".into()));
        }
        Ok(CycNum { order, coeffs: reduce(order, coeffs) })
    }

    /// Builds an element from its canonical coefficients, which must have
    /// length φ(N).
    pub fn from_canonical(order: usize, coeffs: Vec<Rational>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidInput("cyclotomic order must be positive".into()));
        }
        let d = euler_phi(order);
        if coeffs.len() != d {
            return Err(Error::InvalidInput(format!(
                "expected {d} coefficients for order {order}, got {}",
                coeffs.len()
            )));
        }
        Ok(CycNum { order, coeffs })
    }

    pub fn zero(order: usize) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        CycNum { order, coeffs: vec![Rational::zero(); euler_phi(order)] }
    }

    pub fn one(order: usize) -> Self {
        Self::from_rational(order, Rational::one())
    }

    pub fn from_int(order: usize, v: i64) -> Self {
        Self::from_rational(order, Rational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(order: usize, v: Rational) -> Self {
        let mut x = Self::zero(order);
        x.coeffs[0] = v;
        x
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| &self.coeffs[0])
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(Error::OrderMismatch { left: self.order, right: other.order })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycNum { order: self.order, coeffs })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CycNum { order: self.order, coeffs })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let d = self.coeffs.len();
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(CycNum { order: self.order, coeffs: reduce(self.order, prod) })
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Φ_N.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(self.order, r.recip()));
        }
        let phi = cyclotomic_shared(self.order);
        let modulus = QPoly::new(phi.coeffs().iter().cloned().map(Rational::from_integer).collect());
        let (g, s) = QPoly::new(self.coeffs.clone()).gcd_inverse(&modulus);
        if g != QPoly::one() {
            // Φ_N is irreducible, so this is unreachable for non-zero input.
            return Err(Error::InvariantFailure("representative not coprime to Φ_N".into()));
        }
        Self::from_power_coeffs(self.order, s.coeffs().to_vec())
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        self.try_mul(&other.inv()?)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        CycNum { order: self.order, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Re-expresses the element in Q(ζ_M) through ζ_N = ζ_M^{M/N}; requires N | M.
    pub fn lift_to_order(&self, target: usize) -> Result<Self> {
        if target == 0 || target % self.order != 0 {
            return Err(Error::InvalidInput(format!(
                "cannot lift order {} to order {target}",
                self.order
            )));
        }
        let step = target / self.order;
        let mut v = vec![Rational::zero(); step * (self.coeffs.len().max(1) - 1) + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * step] = c.clone();
        }
        Self::from_power_coeffs(target, v)
    }

    /// Numerical value under ζ_N ↦ exp(2πi·branch/N).
    pub fn embed(&self, branch: i64) -> Result<Complex64> {
        let n = self.order as i64;
        if branch.gcd(&n) != 1 {
            return Err(Error::InvalidEmbedding { branch, order: self.order });
        }
        let base = 2.0 * std::f64::consts::PI * (branch.rem_euclid(n) as f64) / (n as f64);
        Ok(self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| Complex64::from_polar(rational_to_f64(c), base * i as f64))
            .sum())
    }
}

pub(crate) fn rational_to_f64(r: &Rational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(a), Some(b)) if a.is_finite() && b.is_finite() => a / b,
        _ => r.to_f64().unwrap_or(f64::NAN),
    }
}

/// ζ_N^{k mod N} in canonical form.
pub fn zeta_pow(order: usize, k: i64) -> CycNum {
    assert!(order >= 1, "cyclotomic order must be positive");
    let e = k.rem_euclid(order as i64) as usize;
    let mut v = vec![Rational::zero(); e + 1];
    v[e] = Rational::one();
    CycNum { order, coeffs: reduce(order, v) }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr for &CycNum {
            type Output = CycNum;
            /// Panics on an order mismatch; use the `try_` form to get an error.
            fn $method(self, rhs: &CycNum) -> CycNum {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

fn superscript(n: usize) -> String {
    const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string().chars().map(|c| SUP[c.to_digit(10).unwrap() as usize]).collect()
}

fn subscript(n: usize) -> String {
    const SUB: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    n.to_string().chars().map(|c| SUB[c.to_digit(10).unwrap() as usize]).collect()
}

impl CycNum {
    fn render_with(&self, zeta: &dyn Fn(usize) -> String, frac: &dyn Fn(&Rational) -> String) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if i == 0 {
                out.push_str(&frac(&mag));
            } else if mag.is_one() {
                out.push_str(&zeta(i));
            } else {
                out.push_str(&frac(&mag));
                out.push_str(&zeta(i));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// LaTeX form: an integer when integral, otherwise a polynomial in ζ_N.
    pub fn to_latex(&self) -> String {
        let n = self.order;
        self.render_with(
            &|i| if i == 1 { format!("\\zeta_{{{n}}}") } else { format!("\\zeta_{{{n}}}^{{{i}}}") },
            &|r| {
                if r.is_integer() {
                    r.numer().to_string()
                } else {
                    format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
                }
            },
        )
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sub = subscript(self.order);
        let s = self.render_with(
            &|i| if i == 1 { format!("ζ{sub}") } else { format!("ζ{sub}{}", superscript(i)) },
            &crate::poly::fmt_rational,
        );
        f.write_str(&s)
    }
}

/// Canonical `numerator/denominator` string.
pub fn rational_to_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    let den: BigInt = den.parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

#[derive(Serialize, Deserialize)]
struct CycNumRepr {
    order: usize,
    coeffs: Vec<String>,
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CycNumRepr { order: self.order, coeffs: self.coeffs.iter().map(rational_to_string).collect() }
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = CycNumRepr::deserialize(deserializer)?;
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        CycNum::from_canonical(repr.order, coeffs).map_err(D::Error::custom)
    }
}

/// Polynomial with coefficients in Q(ζ_N), ascending, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycPoly {
    order: usize,
    coeffs: Vec<CycNum>,
}

impl CycPoly {
    pub fn new(order: usize, mut coeffs: Vec<CycNum>) -> Result<Self> {
        if let Some(c) = coeffs.iter().find(|c| c.order != order) {
            return Err(Error::OrderMismatch { left: order, right: c.order });
        }
        while coeffs.last().is_some_and(CycNum::is_zero) {
            coeffs.pop();
        }
        Ok(CycPoly { order, coeffs })
    }

    /// `prod (X - r)`.
    pub fn from_roots(order: usize, roots: &[CycNum]) -> Result<Self> {
        let mut p = CycPoly::new(order, vec![CycNum::one(order)])?;
        for r in roots {
            let lin = CycPoly::new(order, vec![-r, CycNum::one(order)])?;
            p = p.try_mul(&lin)?;
        }
        Ok(p)
    }

    /// Monic polynomial `X^d + c_{d-1} X^{d-1} + … + c_0` from the ascending
    /// lower coefficients.
    pub fn monic_from_lower(order: usize, lower: &[CycNum]) -> Result<Self> {
        let mut c = lower.to_vec();
        c.push(CycNum::one(order));
        Self::new(order, c)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[CycNum] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> CycNum {
        self.coeffs.get(i).cloned().unwrap_or_else(|| CycNum::zero(self.order))
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(CycNum::is_one)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.order != other.order {
            return Err(Error::OrderMismatch { left: self.order, right: other.order });
        }
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::new(self.order, Vec::new());
        }
        let mut out = vec![CycNum::zero(self.order); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(self.order, out)
    }

    pub fn eval(&self, x: &CycNum) -> CycNum {
        self.coeffs.iter().rev().fold(CycNum::zero(self.order), |acc, c| &(&acc * x) + c)
    }
}

impl fmt::Display for CycPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "X".to_string(),
                _ => format!("X^{i}"),
            };
            match (i, c.is_one()) {
                (0, _) => write!(f, "({c})")?,
                (_, true) => f.write_str(&mono)?,
                _ => write!(f, "({c}){mono}")?,
            }
        }
        Ok(())
    }
}

/// Rejects zero inputs and non-coprime pairs.
pub fn check_coprime(n: usize, m: usize) -> Result<()> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidInput("n and m must be positive".into()));
    }
    if n.gcd(&m) != 1 {
        return Err(Error::NotCoprime { n, m });
    }
    Ok(())
}

/// The coefficients λ_1, …, λ_n of `prod_{j=1}^n (X - ζ_{n+m}^{-j})`, in
/// Q(ζ_{n+m}). Every λ_i is checked to be non-zero.
pub fn lambda_coeffs(n: usize, m: usize) -> Result<Vec<CycNum>> {
    check_coprime(n, m)?;
    let order = n + m;
    let roots: Vec<CycNum> = (1..=n as i64).map(|j| zeta_pow(order, -j)).collect();
    let g = CycPoly::from_roots(order, &roots)?;
    debug_assert!(g.is_monic() && g.degree() == Some(n));
    // λ_i is the coefficient of X^{n-i}
    let lambda: Vec<CycNum> = (1..=n).map(|i| g.coeff(n - i)).collect();
    if let Some(i) = lambda.iter().position(CycNum::is_zero) {
        return Err(Error::InvariantFailure(format!(
            "λ_{} vanishes for (n, m) = ({n}, {m})",
            i + 1
        )));
    }
    Ok(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};

    fn cyc(order: usize, c: &[i64]) -> CycNum {
        CycNum::from_power_coeffs(order, c.iter().map(|&v| int(v)).collect()).unwrap()
    }

    #[test]
    fn small_cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic_poly(4), IntPoly::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic_poly(6), IntPoly::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(12), IntPoly::from_i64(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn cyclotomic_product_identity() {
        for n in 1..=60 {
            let prod = divisors(n)
                .into_iter()
                .fold(IntPoly::from_i64(&[1]), |acc, d| acc.mul(&cyclotomic_poly(d)));
            assert_eq!(prod, IntPoly::x_pow_minus_one(n), "N = {n}");
            assert_eq!(cyclotomic_poly(n).degree(), Some(euler_phi(n)));
        }
    }

    #[test]
    fn zeta_powers() {
        assert_eq!(zeta_pow(5, 0), CycNum::one(5));
        assert_eq!(zeta_pow(5, 7), cyc(5, &[0, 0, 1]));
        assert_eq!(zeta_pow(4, 2), CycNum::from_int(4, -1));
        // ζ_5^4 = -1 - ζ - ζ² - ζ³
        assert_eq!(zeta_pow(5, 4), cyc(5, &[-1, -1, -1, -1]));
        assert_eq!(zeta_pow(5, -1), zeta_pow(5, 4));
    }

    #[test]
    fn field_examples() {
        let i = zeta_pow(4, 1);
        assert_eq!(i.inv().unwrap(), -&i);
        let x = cyc(7, &[3, 0, -2, 5]);
        assert_eq!(&x * &CycNum::one(7), x);
        assert_eq!(&zeta_pow(3, 1) + &zeta_pow(3, 2), CycNum::from_int(3, -1));
    }

    #[test]
    fn errors() {
        assert_eq!(CycNum::zero(5).inv(), Err(Error::DivisionByZero));
        assert_eq!(
            CycNum::one(5).try_add(&CycNum::one(7)),
            Err(Error::OrderMismatch { left: 5, right: 7 })
        );
        assert!(matches!(zeta_pow(6, 1).embed(2), Err(Error::InvalidEmbedding { .. })));
        assert_eq!(lambda_coeffs(2, 4), Err(Error::NotCoprime { n: 2, m: 4 }));
    }

    #[test]
    fn embeddings() {
        let one = CycNum::one(1).embed(1).unwrap();
        assert!((one - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let i = zeta_pow(4, 1).embed(1).unwrap();
        assert!((i - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        let g = -&(&zeta_pow(5, 4) + &zeta_pow(5, 3));
        let v = g.embed(1).unwrap();
        let tau = 2.0 * std::f64::consts::PI;
        let expected = -(Complex64::from_polar(1.0, tau * 4.0 / 5.0) + Complex64::from_polar(1.0, tau * 3.0 / 5.0));
        assert!((v - expected).norm() < 1e-14);
        assert!((v - Complex64::new(0.5, 1.538_842)).norm() < 1e-6);
        // ζ_5 + ζ_5^4 = 2cos(2π/5) is the real golden-ratio conjugate
        let real = (&zeta_pow(5, 1) + &zeta_pow(5, 4)).embed(1).unwrap();
        assert!((real - Complex64::new(0.618_034, 0.0)).norm() < 1e-6);
    }

    #[test]
    fn lambda_examples() {
        let l = lambda_coeffs(3, 1).unwrap();
        assert!(l.iter().all(CycNum::is_one));
        assert_eq!(lambda_coeffs(1, 1).unwrap(), vec![CycNum::one(2)]);
        let l = lambda_coeffs(2, 3).unwrap();
        assert_eq!(l[0], -&(&zeta_pow(5, 4) + &zeta_pow(5, 3)));
        assert_eq!(l[1], zeta_pow(5, 2));
    }

    #[test]
    fn lift_preserves_value() {
        let x = cyc(5, &[1, 2, 0, -1]);
        let y = x.lift_to_order(10).unwrap();
        let (a, b) = (x.embed(1).unwrap(), y.embed(1).unwrap());
        assert!((a - b).norm() < 1e-12);
        assert_eq!(zeta_pow(5, 1).lift_to_order(15).unwrap(), zeta_pow(15, 3));
        assert!(x.lift_to_order(12).is_err());
    }

    #[test]
    fn display_and_latex() {
        let x = CycNum::from_power_coeffs(5, vec![int(1), rat(-1, 2), int(0), int(3)]).unwrap();
        assert_eq!(x.to_string(), "1 - 1/2ζ₅ + 3ζ₅³");
        assert_eq!(x.to_latex(), "1 - \\frac{1}{2}\\zeta_{5} + 3\\zeta_{5}^{3}");
        assert_eq!(CycNum::from_int(7, -4).to_latex(), "-4");
        assert_eq!(CycNum::zero(3).to_string(), "0");
    }

    #[test]
    fn json_form() {
        let x = cyc(5, &[1, 0, -2, 0]);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"order":5,"coeffs":["1/1","0/1","-2/1","0/1"]}"#);
        let back: CycNum = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        assert!(serde_json::from_str::<CycNum>(r#"{"order":5,"coeffs":["1"]}"#).is_err());
    }
}
