//! Laurent polynomials in a single symbol (the generic prime p) with
//! rational coefficients.  These are the coefficient scalars of every
//! symbolic local factor, so terms like p^-1 stay representable verbatim.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    /// exponent -> nonzero coefficient
    terms: BTreeMap<i64, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(0, c);
        }
        LaurentPoly { terms }
    }

    pub fn from_integer(c: i64) -> Self {
        LaurentPoly::constant(BigRational::from_integer(BigInt::from(c)))
    }

    /// The monomial p^e (e may be negative).
    pub fn sym_pow(e: i64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(e, BigRational::one());
        LaurentPoly { terms }
    }

    /// c * p^e
    pub fn term(c: BigRational, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).map_or(false, One::is_one)
    }

    /// Some(coefficient, exponent) when the polynomial is a single term.
    pub fn as_monomial(&self) -> Option<(i64, &BigRational)> {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            Some((*e, c))
        } else {
            None
        }
    }

    pub fn coefficient(&self, e: i64) -> BigRational {
        self.terms.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            let slot = out.terms.entry(*e).or_insert_with(BigRational::zero);
            *slot += c;
            if slot.is_zero() {
                out.terms.remove(e);
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1 + e2;
                let slot = out.terms.entry(e).or_insert_with(BigRational::zero);
                *slot += c1 * c2;
                if slot.is_zero() {
                    out.terms.remove(&e);
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Multiplicative inverse, defined for single-term polynomials only.
    pub fn monomial_inverse(&self) -> Option<Self> {
        let (e, c) = self.as_monomial()?;
        Some(LaurentPoly::term(c.recip(), -e))
    }

    /// Substitutes a concrete prime for the symbol.
    pub fn eval(&self, p: u64) -> BigRational {
        let pb = BigInt::from(p);
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let pw = if *e >= 0 {
                BigRational::from_integer(pb.pow(*e as u32))
            } else {
                BigRational::new(BigInt::one(), pb.pow((-e) as u32))
            };
            acc += c * pw;
        }
        acc
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if first {
                if c.is_negative() {
                    write!(out, "-")?;
                }
                first = false;
            } else {
                out.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            let mag = c.abs();
            match (*e, mag.is_one()) {
                (0, _) => write!(out, "{}", mag)?,
                (1, true) => write!(out, "p")?,
                (1, false) => write!(out, "{}*p", mag)?,
                (_, true) => write!(out, "p^{}", e)?,
                (_, false) => write!(out, "{}*p^{}", mag, e)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "LaurentPoly({})", self)
    }
}
