//! Polynomials: `F2[H]` coefficients for Bar-Natan chains, and integer
//! Laurent polynomials in `q` for Jones polynomials and Euler
//! characteristics.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul};

/// A polynomial over `F2` in the variable `H`, stored as packed bits
/// (bit `k` is the coefficient of `H^k`). No trailing zero words are kept, so
/// the zero polynomial has an empty word list.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyH {
    words: Vec<u64>,
}

impl PolyH {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    /// `H^k`.
    pub fn monomial(k: u32) -> Self {
        let mut p = Self::zero();
        p.toggle(k);
        p
    }

    pub fn from_powers(powers: impl IntoIterator<Item = u32>) -> Self {
        let mut p = Self::zero();
        for k in powers {
            p.toggle(k);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn coeff(&self, k: u32) -> bool {
        let (w, b) = ((k / 64) as usize, k % 64);
        self.words.get(w).is_some_and(|x| x >> b & 1 == 1)
    }

    /// Adds `H^k`.
    pub fn toggle(&mut self, k: u32) {
        let (w, b) = ((k / 64) as usize, k % 64);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        self.words[w] ^= 1 << b;
        self.trim();
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn degree(&self) -> Option<u32> {
        let last = *self.words.last()?;
        Some((self.words.len() as u32 - 1) * 64 + 63 - last.leading_zeros())
    }

    /// Exponents with nonzero coefficient, ascending.
    pub fn powers(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            (0..64u32)
                .filter(move |b| word >> b & 1 == 1)
                .map(move |b| w as u32 * 64 + b)
        })
    }

    /// The single exponent of a monomial, `None` for zero or several terms.
    pub fn as_monomial(&self) -> Option<u32> {
        let mut it = self.powers();
        let k = it.next()?;
        it.next().is_none().then_some(k)
    }

    /// Multiplies by `H^k`.
    pub fn shifted(&self, k: u32) -> Self {
        Self::from_powers(self.powers().map(|p| p + k))
    }
}

impl AddAssign<&PolyH> for PolyH {
    fn add_assign(&mut self, rhs: &PolyH) {
        if self.words.len() < rhs.words.len() {
            self.words.resize(rhs.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a ^= b;
        }
        self.trim();
    }
}

impl Add for &PolyH {
    type Output = PolyH;

    fn add(self, rhs: &PolyH) -> PolyH {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Mul for &PolyH {
    type Output = PolyH;

    // Schoolbook product; addition in F2[H] is the xor in `+=`.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &PolyH) -> PolyH {
        let mut out = PolyH::zero();
        for k in self.powers() {
            out += &rhs.shifted(k);
        }
        out
    }
}

impl fmt::Debug for PolyH {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyH({self})")
    }
}

/// Comma-separated exponents, e.g. `0,2` for `1 + H^2`; `-` for zero.
impl fmt::Display for PolyH {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("-");
        }
        let parts: Vec<String> = self.powers().map(|k| k.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// An integer Laurent polynomial in `q`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Laurent {
    terms: BTreeMap<i32, i64>,
}

impl Laurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(coeff: i64, exp: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(coeff, exp);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i32, i64)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(c, e);
        }
        p
    }

    pub fn add_term(&mut self, coeff: i64, exp: i32) {
        let c = self.terms.entry(exp).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(exponent, coefficient)` pairs, ascending exponent.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::term(1, 0), |acc, _| &acc * self)
    }
}

impl AddAssign<&Laurent> for Laurent {
    fn add_assign(&mut self, rhs: &Laurent) {
        for (e, c) in rhs.terms() {
            self.add_term(c, e);
        }
    }
}

impl Mul for &Laurent {
    type Output = Laurent;

    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(c1 * c2, e1 + e2);
            }
        }
        out
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}

/// Sorted term list, e.g. `q^-2 + 2 + q^2` or `-q^-9 + q^-5`.
impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.terms().enumerate() {
            let mag = c.unsigned_abs();
            match (idx, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let var = match e {
                0 => String::new(),
                1 => "q".to_string(),
                e => format!("q^{e}"),
            };
            match (mag, var.is_empty()) {
                (_, true) => write!(f, "{mag}")?,
                (1, false) => f.write_str(&var)?,
                (m, false) => write!(f, "{m}{var}")?,
            }
        }
        Ok(())
    }
}
