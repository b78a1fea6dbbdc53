//! Free-group words and the textual notation parser.
//!
//! A [`Word`] is a freely reduced word in generators x1..xn with
//! arbitrary-precision integer exponents. Words are value-semantic and
//! immutable after construction; all operations return fresh values.
//!
//! Grammar accepted by [`parse_word`]:
//!
//! ```text
//! word := term { term } ;
//! term := atom [ "^" int ] ;
//! atom := gen | "[" word "," word "]" | "(" word ")" ;
//! gen  := "x" digit { digit } ;
//! int  := [ "-" ] digit { digit } ;
//! ```
//!
//! Whitespace between terms is optional. The empty string denotes the
//! identity word, so that printing and parsing are mutually inverse.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Expanding `w^e` for a multi-letter `w` materializes |e| copies;
/// beyond this bound the parser refuses rather than allocate.
const WORD_POWER_LIMIT: i64 = 1 << 16;

/// A freely reduced word: adjacent letters have distinct generators
/// and no exponent is zero. The empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<(u32, BigInt)>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    /// The single-letter word x_i (1-based index).
    pub fn generator(i: u32) -> Self {
        assert!(i >= 1);
        Word {
            letters: vec![(i, BigInt::from(1))],
        }
    }

    pub fn from_letters<I>(letters: I) -> Self
    where
        I: IntoIterator<Item = (u32, BigInt)>,
    {
        let mut w = Word::identity();
        for (g, e) in letters {
            w.push_letter(g, e);
        }
        w
    }

    pub fn letters(&self) -> &[(u32, BigInt)] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Largest generator index appearing; 0 for the identity.
    pub fn max_generator(&self) -> u32 {
        self.letters.iter().map(|(g, _)| *g).max().unwrap_or(0)
    }

    fn push_letter(&mut self, g: u32, e: BigInt) {
        if e.is_zero() {
            return;
        }
        match self.letters.last_mut() {
            Some((top, exp)) if *top == g => {
                *exp += e;
                if exp.is_zero() {
                    self.letters.pop();
                }
            }
            _ => self.letters.push((g, e)),
        }
    }

    pub fn multiply(&self, other: &Word) -> Word {
        let mut out = self.clone();
        for (g, e) in &other.letters {
            out.push_letter(*g, e.clone());
        }
        out
    }

    pub fn invert(&self) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|(g, e)| (*g, -e.clone()))
                .collect(),
        }
    }

    /// [a, b] = a b a^-1 b^-1.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.multiply(b).multiply(&a.invert()).multiply(&b.invert())
    }

    /// w^e. Single letters take the cheap path; general words are
    /// expanded by repeated multiplication, bounded by
    /// [`WORD_POWER_LIMIT`].
    pub fn pow(&self, e: &BigInt) -> Result<Word> {
        if e.is_zero() || self.is_identity() {
            return Ok(Word::identity());
        }
        if self.letters.len() == 1 {
            let (g, k) = &self.letters[0];
            return Ok(Word::from_letters([(*g, k * e)]));
        }
        let base = if e.is_negative() {
            self.invert()
        } else {
            self.clone()
        };
        let reps = e.abs().to_i64().filter(|&r| r <= WORD_POWER_LIMIT).ok_or(
            Error::ExponentOverflow(format!("cannot expand a multi-letter word to the power {e}")),
        )?;
        let mut out = Word::identity();
        for _ in 0..reps {
            out = out.multiply(&base);
        }
        Ok(out)
    }

    /// Apply the substitution homomorphism x_i -> images[i-1].
    pub fn substitute(&self, images: &[Word]) -> Result<Word> {
        let mut out = Word::identity();
        for (g, e) in &self.letters {
            let img = images
                .get((*g - 1) as usize)
                .ok_or(Error::GeneratorOutOfRange {
                    index: *g as usize,
                    bound: images.len(),
                })?;
            out = out.multiply(&img.pow(e)?);
        }
        Ok(out)
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (g, e) in &self.letters {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if e == &BigInt::from(1) {
                write!(f, "x{g}")?;
            } else {
                write!(f, "x{g}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Meridian/longitude input data: n components with longitudes
/// y_1..y_n, each a word over the meridian generators x_1..x_n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkData {
    n: u32,
    longitudes: Vec<Word>,
}

impl LinkData {
    pub fn new(n: u32, longitudes: Vec<Word>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidLink("component count must be >= 1".into()));
        }
        if longitudes.len() != n as usize {
            return Err(Error::InvalidLink(format!(
                "expected {n} longitudes, got {}",
                longitudes.len()
            )));
        }
        for (k, y) in longitudes.iter().enumerate() {
            let max = y.max_generator();
            if max > n {
                return Err(Error::GeneratorOutOfRange {
                    index: max as usize,
                    bound: n as usize,
                });
            }
            let _ = k;
        }
        Ok(LinkData { n, longitudes })
    }

    pub fn components(&self) -> u32 {
        self.n
    }

    pub fn longitude(&self, i: u32) -> &Word {
        &self.longitudes[(i - 1) as usize]
    }

    pub fn longitudes(&self) -> &[Word] {
        &self.longitudes
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    bound: u32,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, bound: u32) -> Self {
        Parser {
            bytes: text.as_bytes(),
            pos: 0,
            bound,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn digits(&mut self) -> Result<&'a str> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected a digit");
        }
        if self.pos - start > 10_000 {
            return Err(Error::ExponentOverflow("more than 10000 digits".into()));
        }
        Ok(std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii"))
    }

    fn integer(&mut self) -> Result<BigInt> {
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let digits = self.digits()?;
        let v: BigInt = digits.parse().expect("digit string");
        Ok(if neg { -v } else { v })
    }

    fn generator(&mut self) -> Result<Word> {
        self.expect(b'x')?;
        let at = self.pos;
        let digits = self.digits()?;
        let idx: usize = digits.parse().map_err(|_| Error::GeneratorOutOfRange {
            index: usize::MAX,
            bound: self.bound as usize,
        })?;
        if idx == 0 || idx > self.bound as usize {
            self.pos = at;
            return Err(Error::GeneratorOutOfRange {
                index: idx,
                bound: self.bound as usize,
            });
        }
        Ok(Word::generator(idx as u32))
    }

    fn atom(&mut self) -> Result<Word> {
        match self.peek() {
            Some(b'x') => self.generator(),
            Some(b'[') => {
                self.pos += 1;
                let a = self.word()?;
                self.skip_ws();
                self.expect(b',')?;
                let b = self.word()?;
                self.skip_ws();
                self.expect(b']')?;
                Ok(Word::commutator(&a, &b))
            }
            Some(b'(') => {
                self.pos += 1;
                let w = self.word()?;
                self.skip_ws();
                self.expect(b')')?;
                Ok(w)
            }
            _ => self.err("expected a generator, '[' or '('"),
        }
    }

    fn term(&mut self) -> Result<Word> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.integer()?;
            base.pow(&e)
        } else {
            Ok(base)
        }
    }

    fn word(&mut self) -> Result<Word> {
        let mut out = Word::identity();
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some(b',') | Some(b')') | Some(b']') => return Ok(out),
                _ => out = out.multiply(&self.term()?),
            }
        }
    }
}

/// Parse the textual notation into a freely reduced word over x1..xn.
pub fn parse_word(text: &str, n: u32) -> Result<Word> {
    let mut p = Parser::new(text, n);
    let w = p.word()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return p.err("unexpected trailing input");
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str, n: u32) -> Word {
        parse_word(text, n).unwrap()
    }

    fn letters(word: &Word) -> Vec<(u32, i64)> {
        word.letters()
            .iter()
            .map(|(g, e)| (*g, e.to_i64().unwrap()))
            .collect()
    }

    #[test]
    fn parse_basic() {
        assert_eq!(letters(&w("x1 x2^-1", 2)), vec![(1, 1), (2, -1)]);
        assert_eq!(
            letters(&w("[x3,x2]", 3)),
            vec![(3, 1), (2, 1), (3, -1), (2, -1)]
        );
        assert_eq!(letters(&w("x1^2 x1^-1", 1)), vec![(1, 1)]);
    }

    #[test]
    fn parse_nested_and_parenthesized() {
        assert_eq!(
            w("[[x1,x2],x1]", 2),
            Word::commutator(
                &Word::commutator(&Word::generator(1), &Word::generator(2)),
                &Word::generator(1)
            )
        );
        assert_eq!(letters(&w("(x1 x2)^2", 2)), vec![(1, 1), (2, 1), (1, 1), (2, 1)]);
        assert_eq!(letters(&w("(x1x2)^-1", 2)), vec![(2, -1), (1, -1)]);
    }

    #[test]
    fn parse_empty_is_identity() {
        assert!(w("", 3).is_identity());
        assert!(w("   ", 3).is_identity());
        assert!(w("x1^0", 1).is_identity());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_word("x4", 3),
            Err(Error::GeneratorOutOfRange { index: 4, bound: 3 })
        ));
        assert!(matches!(parse_word("y1", 2), Err(Error::Parse { .. })));
        assert!(matches!(parse_word("x1^", 2), Err(Error::Parse { .. })));
        assert!(matches!(parse_word("[x1 x2]", 2), Err(Error::Parse { .. })));
        let err = parse_word("x1 )", 2).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }

    #[test]
    fn multiplication_and_reduction() {
        let a = w("x1", 3);
        assert!(a.multiply(&a.invert()).is_identity());
        assert_eq!(w("x1 x2", 3).multiply(&w("x2^-1 x3", 3)), w("x1 x3", 3));
        assert_eq!(w("x1^2", 3).multiply(&w("x1^3", 3)), w("x1^5", 3));
    }

    #[test]
    fn inversion() {
        assert_eq!(w("x1 x2", 2).invert(), w("x2^-1 x1^-1", 2));
        assert!(Word::identity().invert().is_identity());
        assert_eq!(w("x1^-3", 1).invert(), w("x1^3", 1));
        let u = w("x1 x2^2 x1^-1", 2);
        assert_eq!(u.invert().invert(), u);
    }

    #[test]
    fn commutators() {
        assert_eq!(
            Word::commutator(&w("x1", 2), &w("x2", 2)),
            w("x1 x2 x1^-1 x2^-1", 2)
        );
        let v = w("x1 x2^-1", 2);
        assert!(Word::commutator(&v, &v).is_identity());
        assert!(Word::commutator(&v, &Word::identity()).is_identity());
    }

    #[test]
    fn anti_homomorphism() {
        let a = w("x1 x2^2", 3);
        let b = w("x2^-1 x3", 3);
        assert_eq!(
            a.multiply(&b).invert(),
            b.invert().multiply(&a.invert())
        );
    }

    #[test]
    fn substitution() {
        let images = [w("x2", 2), w("x1 x2", 2)];
        let out = w("x1 x2^-1", 2).substitute(&images).unwrap();
        assert_eq!(out, w("x2 x2^-1 x1^-1", 2));
        assert_eq!(out, w("x1^-1", 2));
    }

    #[test]
    fn link_data_validation() {
        let link = LinkData::new(2, vec![w("x2", 2), w("x1", 2)]).unwrap();
        assert_eq!(link.components(), 2);
        assert!(LinkData::new(2, vec![w("x2", 2)]).is_err());
        assert!(LinkData::new(1, vec![w("x2", 2)]).is_err());
    }

    #[test]
    fn display_roundtrip_examples() {
        for text in ["", "x1", "x1^-3 x2", "x1 x2 x1^-1 x2^-1", "x2^5 x1^5"] {
            let word = w(text, 3);
            assert_eq!(parse_word(&word.to_string(), 3).unwrap(), word);
        }
    }
}

#[cfg(test)]
mod prop_tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_word() -> impl Strategy<Value = Word> {
        proptest::collection::vec((1u32..=3, -5i64..=5), 0..12).prop_map(|letters| {
            Word::from_letters(letters.into_iter().map(|(g, e)| (g, BigInt::from(e))))
        })
    }

    proptest! {
        #[test]
        fn print_parse_roundtrip(word in arb_word()) {
            let text = word.to_string();
            prop_assert_eq!(parse_word(&text, 3).unwrap(), word);
        }

        #[test]
        fn reduction_confluence(a in arb_word(), b in arb_word(), c in arb_word()) {
            let left = a.multiply(&b).multiply(&c);
            let right = a.multiply(&b.multiply(&c));
            prop_assert_eq!(left, right);
        }

        #[test]
        fn inverse_laws(a in arb_word(), b in arb_word()) {
            prop_assert!(a.multiply(&a.invert()).is_identity());
            prop_assert_eq!(a.invert().invert(), a.clone());
            prop_assert_eq!(
                a.multiply(&b).invert(),
                b.invert().multiply(&a.invert())
            );
        }
    }
}
