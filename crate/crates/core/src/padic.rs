//! Exact p-adic scalars.
//!
//! [`PadicInt`] is an element of Z_p known modulo p^N, with a flag
//! distinguishing "residue 0 at precision N" from exact 0. Valuation
//! queries on the former return a lower bound and callers must branch
//! on it. [`Scalar`] unifies exact big integers (word mode) with
//! precision-tracked p-adic integers (p-adic mode).

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Additive valuation of a scalar, as far as the data can resolve it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    /// ord is exactly this value.
    Exact(u64),
    /// ord is at least this value; the data cannot discriminate further.
    AtLeast(u64),
    /// The element is exactly zero.
    Infinite,
}

impl Valuation {
    pub fn is_finite(&self) -> bool {
        matches!(self, Valuation::Exact(_))
    }

    /// The exact value, if resolved.
    pub fn exact(&self) -> Option<u64> {
        match self {
            Valuation::Exact(v) => Some(*v),
            _ => None,
        }
    }
}

/// ord_p of an exact integer; `None` for zero.
pub fn ord_p_bigint(x: &BigInt, p: u64) -> Option<u64> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut v = 0u64;
    let mut cur = x.clone();
    loop {
        let (q, r) = cur.div_rem(&p);
        if r.is_zero() {
            v += 1;
            cur = q;
        } else {
            return Some(v);
        }
    }
}

/// An element of Z_p carried modulo p^N.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicInt {
    p: u64,
    prec: u32,
    residue: BigUint,
    exact_zero: bool,
}

impl PadicInt {
    pub fn from_bigint(p: u64, prec: u32, value: &BigInt) -> Self {
        assert!(prec >= 1, "precision must be positive");
        let modulus = BigInt::from(p).pow(prec);
        let mut r = value.mod_floor(&modulus);
        if r.is_negative() {
            r += &modulus;
        }
        PadicInt {
            p,
            prec,
            residue: r.to_biguint().expect("nonnegative"),
            exact_zero: value.is_zero(),
        }
    }

    pub fn zero(p: u64, prec: u32) -> Self {
        PadicInt {
            p,
            prec,
            residue: BigUint::zero(),
            exact_zero: true,
        }
    }

    pub fn one(p: u64, prec: u32) -> Self {
        Self::from_bigint(p, prec, &BigInt::one())
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// The canonical lift, 0 <= r < p^N.
    pub fn lift(&self) -> BigUint {
        self.residue.clone()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.exact_zero
    }

    /// Zero at the available precision (not necessarily exactly zero).
    pub fn is_zero_at_precision(&self) -> bool {
        self.residue.is_zero()
    }

    fn modulus(&self) -> BigUint {
        BigUint::from(self.p).pow(self.prec)
    }

    fn reduce_to(&self, prec: u32) -> BigUint {
        if prec >= self.prec {
            self.residue.clone()
        } else {
            &self.residue % BigUint::from(self.p).pow(prec)
        }
    }

    pub fn valuation(&self) -> Valuation {
        if self.exact_zero {
            Valuation::Infinite
        } else if self.residue.is_zero() {
            Valuation::AtLeast(self.prec as u64)
        } else {
            let v = ord_p_bigint(&BigInt::from(self.residue.clone()), self.p)
                .expect("nonzero residue");
            Valuation::Exact(v)
        }
    }

    pub fn add(&self, other: &PadicInt) -> PadicInt {
        debug_assert_eq!(self.p, other.p);
        let prec = self.prec.min(other.prec);
        if self.exact_zero {
            return PadicInt {
                p: other.p,
                prec,
                residue: other.reduce_to(prec),
                exact_zero: other.exact_zero,
            };
        }
        if other.exact_zero {
            return PadicInt {
                p: self.p,
                prec,
                residue: self.reduce_to(prec),
                exact_zero: false,
            };
        }
        let m = BigUint::from(self.p).pow(prec);
        let r = (self.reduce_to(prec) + other.reduce_to(prec)) % &m;
        PadicInt {
            p: self.p,
            prec,
            residue: r,
            exact_zero: false,
        }
    }

    pub fn neg(&self) -> PadicInt {
        if self.exact_zero || self.residue.is_zero() {
            return self.clone();
        }
        PadicInt {
            p: self.p,
            prec: self.prec,
            residue: self.modulus() - &self.residue,
            exact_zero: false,
        }
    }

    pub fn sub(&self, other: &PadicInt) -> PadicInt {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &PadicInt) -> PadicInt {
        debug_assert_eq!(self.p, other.p);
        let prec = self.prec.min(other.prec);
        if self.exact_zero || other.exact_zero {
            return PadicInt::zero(self.p, prec);
        }
        let m = BigUint::from(self.p).pow(prec);
        PadicInt {
            p: self.p,
            prec,
            residue: (self.reduce_to(prec) * other.reduce_to(prec)) % &m,
            exact_zero: false,
        }
    }

    /// Inverse of a unit (valuation 0).
    pub fn unit_inverse(&self) -> Result<PadicInt> {
        if self.exact_zero || self.residue.is_zero() {
            return Err(Error::NonUnitConstantTerm);
        }
        if (&self.residue % BigUint::from(self.p)).is_zero() {
            return Err(Error::NonUnitConstantTerm);
        }
        let m = BigInt::from(self.modulus());
        let r = BigInt::from(self.residue.clone());
        let gcd = r.extended_gcd(&m);
        debug_assert!(gcd.gcd.is_one());
        let mut inv = gcd.x.mod_floor(&m);
        if inv.is_negative() {
            inv += &m;
        }
        Ok(PadicInt {
            p: self.p,
            prec: self.prec,
            residue: inv.to_biguint().expect("nonnegative"),
            exact_zero: false,
        })
    }

    /// Exact division by p^k. The residue must vanish mod p^k; the
    /// result loses k digits of precision.
    pub fn divide_by_p_pow(&self, k: u32) -> Result<PadicInt> {
        if k == 0 {
            return Ok(self.clone());
        }
        if self.exact_zero {
            return Ok(self.clone());
        }
        if self.prec <= k {
            return Err(Error::PrecisionExhausted(format!(
                "division by p^{k} at precision {}",
                self.prec
            )));
        }
        let pk = BigUint::from(self.p).pow(k);
        let (q, r) = self.residue.div_rem(&pk);
        if !r.is_zero() {
            return Err(Error::Internal(format!(
                "residue not divisible by p^{k} in exact division"
            )));
        }
        Ok(PadicInt {
            p: self.p,
            prec: self.prec - k,
            residue: q,
            exact_zero: false,
        })
    }
}

impl std::fmt::Display for PadicInt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.exact_zero {
            write!(f, "0")
        } else {
            write!(f, "{} + O({}^{})", self.residue, self.p, self.prec)
        }
    }
}

/// A coefficient: exact integer in word mode, precision-tracked p-adic
/// integer otherwise. Mixed arithmetic promotes the exact side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    Int(BigInt),
    Padic(PadicInt),
}

impl Scalar {
    pub fn int(v: i64) -> Self {
        Scalar::Int(BigInt::from(v))
    }

    pub fn zero() -> Self {
        Scalar::Int(BigInt::zero())
    }

    pub fn one() -> Self {
        Scalar::Int(BigInt::one())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Int(v) => v.is_zero(),
            Scalar::Padic(v) => v.is_zero_at_precision(),
        }
    }

    pub fn is_exact_zero(&self) -> bool {
        match self {
            Scalar::Int(v) => v.is_zero(),
            Scalar::Padic(v) => v.is_exact_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Int(v) => v.is_one(),
            Scalar::Padic(v) => !v.is_exact_zero() && v.lift().is_one(),
        }
    }

    pub fn as_int(&self) -> Option<&BigInt> {
        match self {
            Scalar::Int(v) => Some(v),
            Scalar::Padic(_) => None,
        }
    }

    /// Reinterpret at precision (p, prec) when p-adic arithmetic is needed.
    pub fn to_padic(&self, p: u64, prec: u32) -> PadicInt {
        match self {
            Scalar::Int(v) => PadicInt::from_bigint(p, prec, v),
            Scalar::Padic(v) => {
                debug_assert_eq!(v.prime(), p);
                v.clone()
            }
        }
    }

    pub fn valuation(&self, p: u64) -> Valuation {
        match self {
            Scalar::Int(v) => match ord_p_bigint(v, p) {
                Some(ord) => Valuation::Exact(ord),
                None => Valuation::Infinite,
            },
            Scalar::Padic(v) => {
                debug_assert_eq!(v.prime(), p);
                v.valuation()
            }
        }
    }

    fn promote(a: &Scalar, b: &Scalar) -> Option<(PadicInt, PadicInt)> {
        match (a, b) {
            (Scalar::Int(_), Scalar::Int(_)) => None,
            (Scalar::Padic(x), Scalar::Int(v)) => {
                Some((x.clone(), PadicInt::from_bigint(x.prime(), x.precision(), v)))
            }
            (Scalar::Int(v), Scalar::Padic(y)) => {
                Some((PadicInt::from_bigint(y.prime(), y.precision(), v), y.clone()))
            }
            (Scalar::Padic(x), Scalar::Padic(y)) => Some((x.clone(), y.clone())),
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match Self::promote(self, other) {
            None => match (self, other) {
                (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a + b),
                _ => unreachable!(),
            },
            Some((a, b)) => Scalar::Padic(a.add(&b)),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        match Self::promote(self, other) {
            None => match (self, other) {
                (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a - b),
                _ => unreachable!(),
            },
            Some((a, b)) => Scalar::Padic(a.sub(&b)),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match Self::promote(self, other) {
            None => match (self, other) {
                (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a * b),
                _ => unreachable!(),
            },
            Some((a, b)) => Scalar::Padic(a.mul(&b)),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Int(v) => Scalar::Int(-v),
            Scalar::Padic(v) => Scalar::Padic(v.neg()),
        }
    }

    /// Inverse of a unit: +-1 in integer mode, valuation 0 in p-adic mode.
    pub fn unit_inverse(&self) -> Result<Scalar> {
        match self {
            Scalar::Int(v) => {
                if v.is_one() || (-v).is_one() {
                    Ok(Scalar::Int(v.clone()))
                } else {
                    Err(Error::NonUnitConstantTerm)
                }
            }
            Scalar::Padic(v) => Ok(Scalar::Padic(v.unit_inverse()?)),
        }
    }

    /// Exact division by p^k (the scalar must be divisible).
    pub fn divide_by_p_pow(&self, p: u64, k: u32) -> Result<Scalar> {
        match self {
            Scalar::Int(v) => {
                if v.is_zero() {
                    return Ok(self.clone());
                }
                let pk = BigInt::from(p).pow(k);
                let (q, r) = v.div_rem(&pk);
                if !r.is_zero() {
                    return Err(Error::Internal(format!("integer not divisible by p^{k}")));
                }
                Ok(Scalar::Int(q))
            }
            Scalar::Padic(v) => Ok(Scalar::Padic(v.divide_by_p_pow(k)?)),
        }
    }
}

impl std::fmt::Display for Scalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Scalar::Int(v) => write!(f, "{v}"),
            Scalar::Padic(v) => write!(f, "{v}"),
        }
    }
}

/// Exact integer binomial coefficient C(a, r), valid for any sign of a.
pub fn binom_bigint(a: &BigInt, r: u32) -> BigInt {
    let mut acc = BigInt::one();
    for t in 0..r {
        acc *= a - BigInt::from(t);
        acc = acc.div_exact(&BigInt::from(t + 1));
    }
    acc
}

trait DivExact {
    fn div_exact(&self, d: &BigInt) -> BigInt;
}

impl DivExact for BigInt {
    fn div_exact(&self, d: &BigInt) -> BigInt {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero());
        q
    }
}

/// ord_p(r!) by Legendre's formula.
pub fn ord_p_factorial(r: u32, p: u64) -> u64 {
    let mut total = 0u64;
    let mut pk = p;
    loop {
        let term = (r as u64) / pk;
        if term == 0 {
            return total;
        }
        total += term;
        match pk.checked_mul(p) {
            Some(next) => pk = next,
            None => return total,
        }
    }
}

/// Binomial coefficient C(a, r) with a in Z_p.
///
/// For an exact integer argument this is the exact integer binomial.
/// For a p-adic argument, the binomial of the canonical lift is formed
/// exactly and reduced; dividing by r! costs ord_p(r!) digits.
pub fn binom(a: &Scalar, r: u32) -> Result<Scalar> {
    match a {
        Scalar::Int(v) => Ok(Scalar::Int(binom_bigint(v, r))),
        Scalar::Padic(v) => {
            if r == 0 {
                return Ok(Scalar::Padic(PadicInt::one(v.prime(), v.precision())));
            }
            if v.is_exact_zero() {
                return Ok(Scalar::Padic(PadicInt::zero(v.prime(), v.precision())));
            }
            let k = ord_p_factorial(r, v.prime());
            let n = v.precision() as u64;
            if n <= k {
                return Err(Error::PrecisionExhausted(format!(
                    "binomial C(a, {r}) needs more than {n} digits (ord_p({r}!) = {k})"
                )));
            }
            let lift = BigInt::from(v.lift());
            let exact = binom_bigint(&lift, r);
            Ok(Scalar::Padic(PadicInt::from_bigint(
                v.prime(),
                (n - k) as u32,
                &exact,
            )))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: i64) -> Scalar {
        Scalar::int(v)
    }

    #[test]
    fn bigint_valuation() {
        assert_eq!(ord_p_bigint(&BigInt::from(12), 2), Some(2));
        assert_eq!(ord_p_bigint(&BigInt::from(-27), 3), Some(3));
        assert_eq!(ord_p_bigint(&BigInt::from(5), 3), Some(0));
        assert_eq!(ord_p_bigint(&BigInt::zero(), 3), None);
    }

    #[test]
    fn padic_reduction_and_valuation() {
        let x = PadicInt::from_bigint(3, 4, &BigInt::from(-9));
        // -9 mod 81 = 72 = 8*9, ord_3 = 2
        assert_eq!(x.lift(), BigUint::from(72u32));
        assert_eq!(x.valuation(), Valuation::Exact(2));

        let z = PadicInt::from_bigint(3, 4, &BigInt::from(81));
        assert!(!z.is_exact_zero());
        assert_eq!(z.valuation(), Valuation::AtLeast(4));

        assert_eq!(PadicInt::zero(3, 4).valuation(), Valuation::Infinite);
    }

    #[test]
    fn padic_exact_zero_propagation() {
        let zero = PadicInt::zero(5, 8);
        let x = PadicInt::from_bigint(5, 8, &BigInt::from(7));
        assert!(zero.mul(&x).is_exact_zero());
        assert!(!zero.add(&x).is_exact_zero());
        assert_eq!(zero.add(&x).lift(), x.lift());
        // cancellation of nonzero values is not recognized as exact
        assert!(!x.sub(&x).is_exact_zero());
        assert!(x.sub(&x).is_zero_at_precision());
    }

    #[test]
    fn padic_unit_inverse() {
        let x = PadicInt::from_bigint(5, 6, &BigInt::from(7));
        let inv = x.unit_inverse().unwrap();
        assert!(x.mul(&inv).lift().is_one());
        let bad = PadicInt::from_bigint(5, 6, &BigInt::from(10));
        assert!(bad.unit_inverse().is_err());
    }

    #[test]
    fn padic_divide_by_p() {
        let x = PadicInt::from_bigint(2, 10, &BigInt::from(48));
        let y = x.divide_by_p_pow(4).unwrap();
        assert_eq!(y.precision(), 6);
        assert_eq!(y.lift(), BigUint::from(3u32));
        assert!(x.divide_by_p_pow(10).is_err());
    }

    #[test]
    fn binom_examples() {
        assert_eq!(binom(&s(5), 2).unwrap(), s(10));
        assert_eq!(binom(&s(-1), 2).unwrap(), s(1));
        assert_eq!(binom(&s(7), 0).unwrap(), s(1));
        assert_eq!(binom(&s(3), 5).unwrap(), s(0));
    }

    #[test]
    fn binom_padic_matches_integer() {
        // C(a, r) of a lift agrees with the integer binomial mod p^(N-k)
        let a = PadicInt::from_bigint(3, 8, &BigInt::from(22));
        let b = binom(&Scalar::Padic(a), 4).unwrap();
        let expected = binom_bigint(&BigInt::from(22), 4); // 7315
        match b {
            Scalar::Padic(v) => {
                // ord_3(4!) = 1, so precision drops to 7
                assert_eq!(v.precision(), 7);
                let m = BigInt::from(3).pow(7);
                assert_eq!(BigInt::from(v.lift()), expected.mod_floor(&m));
            }
            _ => panic!("expected p-adic result"),
        }
    }

    #[test]
    fn binom_precision_exhaustion() {
        let a = PadicInt::from_bigint(2, 3, &BigInt::from(5));
        // ord_2(8!) = 7 >= 3
        assert!(matches!(
            binom(&Scalar::Padic(a), 8),
            Err(Error::PrecisionExhausted(_))
        ));
    }

    #[test]
    fn ord_factorial() {
        assert_eq!(ord_p_factorial(8, 2), 7);
        assert_eq!(ord_p_factorial(9, 3), 4);
        assert_eq!(ord_p_factorial(4, 5), 0);
    }

    #[test]
    fn scalar_promotion() {
        let a = Scalar::Padic(PadicInt::from_bigint(5, 4, &BigInt::from(3)));
        let b = s(10);
        let c = a.mul(&b);
        assert_eq!(c.valuation(5), Valuation::Exact(1));
    }
}
