//! Degree-truncated series rings and the Magnus embedding.
//!
//! Three rings share the same conventions: monomial storage is sparse,
//! multiplication silently discards monomials above the degree cap,
//! and every series carries an `exact_through` label recording the
//! largest total degree whose stored coefficients agree with the
//! untruncated object. A complete polynomial is exact everywhere
//! ([`EXACT`]); truncation and arithmetic propagate the label, and
//! consumers that need degree k fail fast when the label is below k.

use std::collections::HashMap;

use num_bigint::{BigInt, Sign};

use crate::padic::{binom, Scalar};
use crate::words::Word;
use crate::{Error, Result};

/// Sentinel exactness label for complete (untruncated) data.
pub const EXACT: u32 = u32::MAX;

#[derive(Clone, Copy)]
struct Meta {
    exact: u32,
    /// Least total degree of a stored nonzero term; `None` when zero.
    min_deg: Option<u32>,
    /// Greatest total degree of a stored nonzero term.
    max_deg: Option<u32>,
}

/// Exactness label for a truncated product.
fn mul_exactness(a: Meta, b: Meta, cap: u32) -> u32 {
    // An exactly-zero factor forces an exactly-zero product.
    if (a.exact == EXACT && a.min_deg.is_none()) || (b.exact == EXACT && b.min_deg.is_none()) {
        return EXACT;
    }
    if a.exact == EXACT && b.exact == EXACT {
        match (a.max_deg, b.max_deg) {
            (Some(da), Some(db)) if da as u64 + db as u64 <= cap as u64 => return EXACT,
            _ => return cap,
        }
    }
    // Errors of one factor enter at degree exact+1, shifted by the
    // other factor's minimal degree.
    let inf = u64::MAX;
    let va = a.min_deg.map(|d| d as u64).unwrap_or(inf);
    let vb = b.min_deg.map(|d| d as u64).unwrap_or(inf);
    let e1 = (a.exact as u64).saturating_add(1).saturating_add(vb);
    let e2 = (b.exact as u64).saturating_add(1).saturating_add(va);
    let bound = e1.min(e2).saturating_sub(1);
    bound.min(cap as u64) as u32
}

// ---------------------------------------------------------------------------
// Noncommutative series
// ---------------------------------------------------------------------------

/// Truncated power series in noncommuting variables X_1..X_n.
///
/// Keys are words in generator indices; the empty word is the constant
/// term. In word mode all coefficients are exact integers.
#[derive(Debug, Clone, PartialEq)]
pub struct NcSeries {
    n: u32,
    cap: u32,
    exact_through: u32,
    terms: HashMap<Vec<u8>, Scalar>,
}

impl NcSeries {
    pub fn zero(n: u32, cap: u32) -> Self {
        NcSeries {
            n,
            cap,
            exact_through: EXACT,
            terms: HashMap::new(),
        }
    }

    pub fn one(n: u32, cap: u32) -> Self {
        Self::from_scalar(n, cap, Scalar::one())
    }

    pub fn from_scalar(n: u32, cap: u32, c: Scalar) -> Self {
        let mut s = Self::zero(n, cap);
        s.set_term(vec![], c);
        s
    }

    pub fn variable(n: u32, cap: u32, i: u32) -> Self {
        assert!(i >= 1 && i <= n);
        let mut s = Self::zero(n, cap);
        s.set_term(vec![i as u8], Scalar::one());
        s
    }

    pub fn vars(&self) -> u32 {
        self.n
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn exactness(&self) -> u32 {
        self.exact_through
    }

    pub fn set_exactness(&mut self, e: u32) {
        self.exact_through = e;
    }

    fn meta(&self) -> Meta {
        let degs: Vec<u32> = self
            .terms
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, _)| k.len() as u32)
            .collect();
        Meta {
            exact: self.exact_through,
            min_deg: degs.iter().min().copied(),
            max_deg: degs.iter().max().copied(),
        }
    }

    pub fn set_term(&mut self, key: Vec<u8>, c: Scalar) {
        if key.len() as u32 > self.cap {
            return;
        }
        if c.is_exact_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, c);
        }
    }

    pub fn coefficient(&self, key: &[u8]) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&[])
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &NcSeries) -> NcSeries {
        debug_assert_eq!(self.n, other.n);
        let cap = self.cap.min(other.cap);
        let mut out = NcSeries::zero(self.n, cap);
        let mut dropped = false;
        for (k, c) in self.terms.iter().chain(other.terms.iter()) {
            if k.len() as u32 > cap {
                dropped = dropped || !c.is_zero();
                continue;
            }
            let cur = out.coefficient(k);
            out.set_term(k.clone(), cur.add(c));
        }
        out.exact_through = self.exact_through.min(other.exact_through);
        if dropped {
            out.exact_through = out.exact_through.min(cap);
        }
        out
    }

    pub fn neg(&self) -> NcSeries {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn sub(&self, other: &NcSeries) -> NcSeries {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> NcSeries {
        let mut out = NcSeries::zero(self.n, self.cap);
        out.exact_through = self.exact_through;
        for (k, v) in &self.terms {
            out.set_term(k.clone(), v.mul(c));
        }
        out
    }

    pub fn mul(&self, other: &NcSeries) -> NcSeries {
        debug_assert_eq!(self.n, other.n);
        let cap = self.cap.min(other.cap);
        let mut out = NcSeries::zero(self.n, cap);
        for (ka, ca) in &self.terms {
            if ca.is_exact_zero() || ka.len() as u32 > cap {
                continue;
            }
            for (kb, cb) in &other.terms {
                if (ka.len() + kb.len()) as u32 > cap || cb.is_exact_zero() {
                    continue;
                }
                let mut key = ka.clone();
                key.extend_from_slice(kb);
                let cur = out.coefficient(&key);
                out.set_term(key, cur.add(&ca.mul(cb)));
            }
        }
        out.exact_through = mul_exactness(self.meta(), other.meta(), cap);
        out
    }

    /// Inverse of a series with unit constant term, up to the cap.
    pub fn invert_unit(&self) -> Result<NcSeries> {
        let c = self.constant_term();
        let c_inv = c.unit_inverse()?;
        let u = self.sub(&NcSeries::from_scalar(self.n, self.cap, c));
        // 1/(c+u) = c^-1 sum_k (-u c^-1)^k; u has positive order, so
        // the sum stabilizes at the cap.
        let factor = u.scale(&c_inv).neg();
        let mut out = NcSeries::from_scalar(self.n, self.cap, c_inv.clone());
        let mut power = NcSeries::one(self.n, self.cap);
        for _ in 1..=self.cap {
            power = power.mul(&factor);
            if power.is_zero() {
                break;
            }
            out = out.add(&power.scale(&c_inv));
        }
        out.exact_through = self.exact_through.min(self.cap);
        Ok(out)
    }

    /// Substitute X_j by `images[j-1]` (an algebra endomorphism when
    /// the images have positive order).
    pub fn substitute(&self, images: &[NcSeries]) -> Result<NcSeries> {
        let cap = self.cap;
        let n = images.first().map(|s| s.n).unwrap_or(self.n);
        let mut out = NcSeries::zero(n, cap);
        for (k, c) in &self.terms {
            let mut term = NcSeries::from_scalar(n, cap, c.clone());
            for &g in k.iter() {
                let img = images
                    .get((g - 1) as usize)
                    .ok_or(Error::GeneratorOutOfRange {
                        index: g as usize,
                        bound: images.len(),
                    })?;
                term = term.mul(img);
            }
            out = out.add(&term);
        }
        out.exact_through = out.exact_through.min(cap);
        Ok(out)
    }

    fn sorted_keys(&self) -> Vec<&Vec<u8>> {
        let mut keys: Vec<_> = self
            .terms
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, _)| k)
            .collect();
        keys.sort_by(|a, b| (a.len(), a.as_slice()).cmp(&(b.len(), b.as_slice())));
        keys
    }
}

fn fmt_coeff_term(
    f: &mut std::fmt::Formatter<'_>,
    first: &mut bool,
    c: &Scalar,
    mono: &str,
) -> std::fmt::Result {
    let (negative, mag) = match c {
        Scalar::Int(v) if v.sign() == Sign::Minus => (true, Scalar::Int(-v)),
        _ => (false, c.clone()),
    };
    if *first {
        if negative {
            write!(f, "-")?;
        }
        *first = false;
    } else if negative {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    if mono.is_empty() {
        write!(f, "{mag}")?;
    } else if mag.is_one() {
        write!(f, "{mono}")?;
    } else {
        write!(f, "{mag}*{mono}")?;
    }
    Ok(())
}

impl std::fmt::Display for NcSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let keys = self.sorted_keys();
        if keys.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in keys {
            let mono = nc_monomial_string(k);
            fmt_coeff_term(f, &mut first, &self.terms[k], &mono)?;
        }
        Ok(())
    }
}

/// Render a noncommutative monomial key, e.g. `X1X2^2X1`.
pub fn nc_monomial_string(key: &[u8]) -> String {
    let mut out = String::new();
    let mut i = 0;
    while i < key.len() {
        let g = key[i];
        let mut run = 1;
        while i + run < key.len() && key[i + run] == g {
            run += 1;
        }
        out.push_str(&format!("X{g}"));
        if run > 1 {
            out.push_str(&format!("^{run}"));
        }
        i += run;
    }
    out
}

// ---------------------------------------------------------------------------
// Commutative multivariate series
// ---------------------------------------------------------------------------

/// Truncated series in commuting variables X_1..X_n; keys are exponent
/// vectors of length n with bounded total degree.
#[derive(Debug, Clone, PartialEq)]
pub struct CommSeries {
    n: u32,
    cap: u32,
    exact_through: u32,
    terms: HashMap<Vec<u32>, Scalar>,
}

impl CommSeries {
    pub fn zero(n: u32, cap: u32) -> Self {
        CommSeries {
            n,
            cap,
            exact_through: EXACT,
            terms: HashMap::new(),
        }
    }

    pub fn one(n: u32, cap: u32) -> Self {
        let mut s = Self::zero(n, cap);
        s.set_term(vec![0; n as usize], Scalar::one());
        s
    }

    pub fn vars(&self) -> u32 {
        self.n
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn exactness(&self) -> u32 {
        self.exact_through
    }

    pub fn set_exactness(&mut self, e: u32) {
        self.exact_through = e;
    }

    fn meta(&self) -> Meta {
        let degs: Vec<u32> = self
            .terms
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, _)| k.iter().sum())
            .collect();
        Meta {
            exact: self.exact_through,
            min_deg: degs.iter().min().copied(),
            max_deg: degs.iter().max().copied(),
        }
    }

    pub fn set_term(&mut self, key: Vec<u32>, c: Scalar) {
        debug_assert_eq!(key.len(), self.n as usize);
        if key.iter().sum::<u32>() > self.cap {
            return;
        }
        if c.is_exact_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, c);
        }
    }

    pub fn add_to_term(&mut self, key: Vec<u32>, c: &Scalar) {
        if key.iter().sum::<u32>() > self.cap {
            return;
        }
        let cur = self.coefficient(&key);
        self.set_term(key, cur.add(c));
    }

    pub fn coefficient(&self, key: &[u32]) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|c| c.is_zero())
    }

    pub fn is_exact_zero(&self) -> bool {
        self.terms.values().all(|c| c.is_exact_zero())
    }

    pub fn add(&self, other: &CommSeries) -> CommSeries {
        debug_assert_eq!(self.n, other.n);
        let cap = self.cap.min(other.cap);
        let mut out = CommSeries::zero(self.n, cap);
        let mut dropped = false;
        for (k, c) in self.terms.iter().chain(other.terms.iter()) {
            if k.iter().sum::<u32>() > cap {
                dropped = dropped || !c.is_zero();
                continue;
            }
            out.add_to_term(k.clone(), c);
        }
        out.exact_through = self.exact_through.min(other.exact_through);
        if dropped {
            out.exact_through = out.exact_through.min(cap);
        }
        out
    }

    pub fn neg(&self) -> CommSeries {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn sub(&self, other: &CommSeries) -> CommSeries {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &CommSeries) -> CommSeries {
        debug_assert_eq!(self.n, other.n);
        let cap = self.cap.min(other.cap);
        let mut out = CommSeries::zero(self.n, cap);
        for (ka, ca) in &self.terms {
            if ca.is_exact_zero() {
                continue;
            }
            let da: u32 = ka.iter().sum();
            for (kb, cb) in &other.terms {
                if cb.is_exact_zero() {
                    continue;
                }
                let db: u32 = kb.iter().sum();
                if da + db > cap {
                    continue;
                }
                let key: Vec<u32> = ka.iter().zip(kb).map(|(a, b)| a + b).collect();
                out.add_to_term(key, &ca.mul(cb));
            }
        }
        out.exact_through = mul_exactness(self.meta(), other.meta(), cap);
        out
    }

    /// Truncate to total degree <= k.
    pub fn truncate(&self, k: u32) -> CommSeries {
        let mut out = CommSeries::zero(self.n, k.min(self.cap));
        out.exact_through = self.exact_through.min(k);
        for (key, c) in &self.terms {
            if key.iter().sum::<u32>() <= k {
                out.set_term(key.clone(), c.clone());
            }
        }
        out
    }

    /// The reducing map X_i -> X (total-degree collapse).
    pub fn reduce_univariate(&self) -> UniSeries {
        let mut out = UniSeries::zero(self.cap);
        out.exact_through = self.exact_through;
        for (key, c) in &self.terms {
            let d: u32 = key.iter().sum();
            out.add_to_coeff(d as usize, c);
        }
        out
    }

    fn sorted_keys(&self) -> Vec<&Vec<u32>> {
        let mut keys: Vec<_> = self
            .terms
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, _)| k)
            .collect();
        keys.sort_by(|a, b| {
            let (da, db) = (a.iter().sum::<u32>(), b.iter().sum::<u32>());
            (da, b.as_slice()).cmp(&(db, a.as_slice()))
        });
        keys
    }
}

impl std::fmt::Display for CommSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let keys = self.sorted_keys();
        if keys.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in keys {
            let m = comm_monomial_string(k);
            let mono = if m == "1" { String::new() } else { m };
            fmt_coeff_term(f, &mut first, &self.terms[k], &mono)?;
        }
        Ok(())
    }
}

/// Render a commutative monomial key, e.g. `X1^2X3`.
pub fn comm_monomial_string(key: &[u32]) -> String {
    let mut out = String::new();
    for (i, e) in key.iter().enumerate() {
        if *e == 0 {
            continue;
        }
        out.push_str(&format!("X{}", i + 1));
        if *e > 1 {
            out.push_str(&format!("^{e}"));
        }
    }
    if out.is_empty() {
        out.push('1');
    }
    out
}

/// Parse a commutative monomial like `X1^2X3` or `1`.
pub fn parse_comm_monomial(text: &str, n: u32) -> Result<Vec<u32>> {
    let mut key = vec![0u32; n as usize];
    let t = text.trim().replace([' ', '*'], "");
    if t == "1" || t.is_empty() {
        return Ok(key);
    }
    let bytes = t.as_bytes();
    let mut pos = 0;
    let err = |pos: usize, msg: &str| Error::Parse {
        pos,
        msg: msg.to_string(),
    };
    while pos < bytes.len() {
        if bytes[pos] != b'X' && bytes[pos] != b'x' {
            return Err(err(pos, "expected 'X'"));
        }
        pos += 1;
        let start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        if pos == start {
            return Err(err(pos, "expected a variable index"));
        }
        let idx: usize = t[start..pos].parse().map_err(|_| err(start, "bad index"))?;
        if idx == 0 || idx > n as usize {
            return Err(Error::GeneratorOutOfRange {
                index: idx,
                bound: n as usize,
            });
        }
        let mut exp = 1u32;
        if pos < bytes.len() && bytes[pos] == b'^' {
            pos += 1;
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if pos == start {
                return Err(err(pos, "expected an exponent"));
            }
            exp = t[start..pos]
                .parse()
                .map_err(|_| err(start, "bad exponent"))?;
        }
        key[idx - 1] += exp;
    }
    Ok(key)
}

// ---------------------------------------------------------------------------
// Univariate series (Iwasawa algebra)
// ---------------------------------------------------------------------------

/// Truncated univariate power series, dense coefficients c_0..c_cap.
#[derive(Debug, Clone, PartialEq)]
pub struct UniSeries {
    cap: u32,
    exact_through: u32,
    coeffs: Vec<Scalar>,
}

impl UniSeries {
    pub fn zero(cap: u32) -> Self {
        UniSeries {
            cap,
            exact_through: EXACT,
            coeffs: vec![Scalar::zero(); cap as usize + 1],
        }
    }

    pub fn one(cap: u32) -> Self {
        let mut s = Self::zero(cap);
        s.coeffs[0] = Scalar::one();
        s
    }

    pub fn monomial(cap: u32, d: u32, c: Scalar) -> Self {
        let mut s = Self::zero(cap);
        if d <= cap {
            s.coeffs[d as usize] = c;
        }
        s
    }

    pub fn from_coeffs(cap: u32, coeffs: Vec<Scalar>) -> Self {
        let mut s = Self::zero(cap);
        for (d, c) in coeffs.into_iter().enumerate() {
            if d <= cap as usize {
                s.coeffs[d] = c;
            }
        }
        s
    }

    pub fn from_int_coeffs(cap: u32, coeffs: &[i64]) -> Self {
        Self::from_coeffs(cap, coeffs.iter().map(|&v| Scalar::int(v)).collect())
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn exactness(&self) -> u32 {
        self.exact_through
    }

    pub fn set_exactness(&mut self, e: u32) {
        self.exact_through = e;
    }

    fn meta(&self) -> Meta {
        Meta {
            exact: self.exact_through,
            min_deg: self.order(),
            max_deg: self.degree(),
        }
    }

    pub fn coeff(&self, d: usize) -> &Scalar {
        &self.coeffs[d]
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, d: usize, c: Scalar) {
        if d <= self.cap as usize {
            self.coeffs[d] = c;
        }
    }

    pub fn add_to_coeff(&mut self, d: usize, c: &Scalar) {
        if d <= self.cap as usize {
            self.coeffs[d] = self.coeffs[d].add(c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_exact_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_exact_zero())
    }

    /// Degree of the highest nonzero stored coefficient.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs
            .iter()
            .rposition(|c| !c.is_zero())
            .map(|d| d as u32)
    }

    /// Least degree with a nonzero stored coefficient.
    pub fn order(&self) -> Option<u32> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|d| d as u32)
    }

    pub fn add(&self, other: &UniSeries) -> UniSeries {
        let cap = self.cap.min(other.cap);
        let mut out = UniSeries::zero(cap);
        out.exact_through = self.exact_through.min(other.exact_through);
        for d in 0..=cap as usize {
            out.coeffs[d] = self.coeffs[d].add(&other.coeffs[d]);
        }
        let dropped = self.degree().unwrap_or(0).max(other.degree().unwrap_or(0)) > cap;
        if dropped {
            out.exact_through = out.exact_through.min(cap);
        }
        out
    }

    pub fn neg(&self) -> UniSeries {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn sub(&self, other: &UniSeries) -> UniSeries {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> UniSeries {
        let mut out = self.clone();
        for v in out.coeffs.iter_mut() {
            *v = v.mul(c);
        }
        out
    }

    pub fn mul(&self, other: &UniSeries) -> UniSeries {
        let cap = self.cap.min(other.cap);
        let mut out = UniSeries::zero(cap);
        for (da, ca) in self.coeffs.iter().enumerate() {
            if ca.is_exact_zero() {
                continue;
            }
            for (db, cb) in other.coeffs.iter().enumerate() {
                if da + db > cap as usize || cb.is_exact_zero() {
                    continue;
                }
                let t = ca.mul(cb);
                out.coeffs[da + db] = out.coeffs[da + db].add(&t);
            }
        }
        out.exact_through = mul_exactness(self.meta(), other.meta(), cap);
        out
    }

    pub fn truncate(&self, k: u32) -> UniSeries {
        let mut out = UniSeries::zero(k.min(self.cap));
        out.exact_through = self.exact_through.min(k);
        for d in 0..=out.cap as usize {
            out.coeffs[d] = self.coeffs[d].clone();
        }
        out
    }

    /// Exact division by X^k; the low-order coefficients must vanish.
    pub fn divide_by_x_pow(&self, k: u32) -> Result<UniSeries> {
        for d in 0..k.min(self.cap + 1) as usize {
            if !self.coeffs[d].is_zero() {
                return Err(Error::Internal(format!(
                    "series not divisible by X^{k} (coefficient of X^{d} is nonzero)"
                )));
            }
        }
        let mut out = UniSeries::zero(self.cap - k.min(self.cap));
        out.exact_through = match self.exact_through {
            EXACT => EXACT,
            e => e.saturating_sub(k),
        };
        for d in 0..=out.cap as usize {
            out.coeffs[d] = self.coeffs[d + k as usize].clone();
        }
        Ok(out)
    }
}

impl std::fmt::Display for UniSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match d {
                0 => String::new(),
                1 => "X".to_string(),
                _ => format!("X^{d}"),
            };
            fmt_coeff_term(f, &mut first, c, &mono)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Magnus expansion
// ---------------------------------------------------------------------------

/// The Magnus image of x_i^e truncated at `cap`: sum_j C(e, j) X_i^j.
pub(crate) fn magnus_power_factor(n: u32, cap: u32, i: u32, e: &BigInt) -> NcSeries {
    let mut out = NcSeries::zero(n, cap);
    for j in 0..=cap {
        let c = crate::padic::binom_bigint(e, j);
        out.set_term(vec![i as u8; j as usize], Scalar::Int(c));
    }
    // A nonnegative exponent <= cap gives a complete polynomial.
    if e.sign() == Sign::Minus || e > &BigInt::from(cap) {
        out.set_exactness(cap);
    }
    out
}

/// Magnus embedding M(w) truncated at total degree `cap`.
///
/// M(x_i) = 1 + X_i and M(x_i^-1) = 1 - X_i + X_i^2 - ...; the image
/// of a word is the truncated product of its letter factors. All
/// coefficients are exact integers.
pub fn magnus(w: &Word, n: u32, cap: u32) -> NcSeries {
    let mut out = NcSeries::one(n, cap);
    for (g, e) in w.letters() {
        out = out.mul(&magnus_power_factor(n, cap, *g, e));
    }
    out
}

/// The Magnus image of the Fox derivative d_i(x_i^e), namely
/// ((1+X_i)^e - 1)/X_i truncated at `cap`.
pub(crate) fn fox_power_factor(n: u32, cap: u32, i: u32, e: &BigInt) -> NcSeries {
    let mut out = NcSeries::zero(n, cap);
    for j in 1..=cap + 1 {
        let c = crate::padic::binom_bigint(e, j);
        out.set_term(vec![i as u8; (j - 1) as usize], Scalar::Int(c));
    }
    if e.sign() == Sign::Minus || e > &BigInt::from(cap + 1) {
        out.set_exactness(cap);
    }
    out
}

/// Raise a series with constant term 1 to a (possibly p-adic) power:
/// (1+u)^a = sum_j C(a, j) u^j, truncated at the cap.
pub fn padic_power(f: &NcSeries, a: &Scalar) -> Result<NcSeries> {
    let c = f.constant_term();
    if !c.is_one() {
        return Err(Error::NonUnitConstantTerm);
    }
    let u = f.sub(&NcSeries::from_scalar(f.n, f.cap, c));
    let mut out = NcSeries::zero(f.n, f.cap);
    let mut u_pow = NcSeries::one(f.n, f.cap);
    for j in 0..=f.cap {
        let b = binom(a, j)?;
        out = out.add(&u_pow.scale(&b));
        if j < f.cap {
            u_pow = u_pow.mul(&u);
            if u_pow.is_zero() {
                break;
            }
        }
    }
    out.set_exactness(f.exactness().min(f.cap));
    Ok(out)
}

/// Collapse a noncommutative series to the commutative ring.
pub fn abelianize(f: &NcSeries) -> CommSeries {
    let mut out = CommSeries::zero(f.n, f.cap);
    for (k, c) in f.terms() {
        let mut key = vec![0u32; f.n as usize];
        for &g in k.iter() {
            key[(g - 1) as usize] += 1;
        }
        out.add_to_term(key, c);
    }
    out.set_exactness(f.exactness());
    out
}

/// Result of a Magnus depth query at a finite cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Depth {
    Finite(u32),
    /// No nonzero term of degree <= cap; the depth is at least this.
    AtLeast(u32),
}

/// Least total degree of a nonzero term of M(w) - 1.
pub fn magnus_depth(w: &Word, cap: u32) -> Depth {
    let m = magnus(w, w.max_generator().max(1), cap);
    let depth = m
        .terms()
        .filter(|(k, c)| !k.is_empty() && !c.is_zero())
        .map(|(k, _)| k.len() as u32)
        .min();
    match depth {
        Some(d) => Depth::Finite(d),
        None => Depth::AtLeast(cap + 1),
    }
}
