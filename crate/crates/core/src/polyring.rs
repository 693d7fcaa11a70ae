//! Exact arithmetic in the quotient ring Z_f = Z[t]/(f) for monic f.
//!
//! Elements are written in the ordered basis {t^(n-1), ..., t, 1}: the basis
//! vector e_j (1-indexed) stands for the monomial t^(n-j), so e_1 is the top
//! power and e_n is the ring identity.  This ordering makes the row matrices
//! of `lattice` lower-triangular.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Monic integer polynomial f = t^n + c_{n-1} t^(n-1) + ... + c_1 t + c_0.
///
/// Only the n lower coefficients are stored; monicity is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonicPoly {
    /// c_0, ..., c_{n-1}
    low: Vec<BigInt>,
}

impl MonicPoly {
    /// Builds t^n + c_{n-1} t^(n-1) + ... + c_0 from the lower coefficients
    /// in ascending order. Fails for an empty list (degree zero).
    pub fn new(low: Vec<BigInt>) -> Result<Self> {
        if low.is_empty() {
            return Err(Error::DegreeZero);
        }
        Ok(MonicPoly { low })
    }

    /// The monomial t^n.
    pub fn t_power(n: usize) -> Self {
        assert!(n >= 1, "degree must be positive");
        MonicPoly {
            low: vec![BigInt::zero(); n],
        }
    }

    /// t^2 (t - lambda), the split cubic with a double root at zero.
    pub fn cubic(lambda: &BigInt) -> Self {
        MonicPoly {
            low: vec![BigInt::zero(), BigInt::zero(), -lambda.clone()],
        }
    }

    pub fn degree(&self) -> usize {
        self.low.len()
    }

    /// Lower coefficients c_0, ..., c_{n-1} in ascending order.
    pub fn low_coeffs(&self) -> &[BigInt] {
        &self.low
    }

    pub fn constant_term(&self) -> &BigInt {
        &self.low[0]
    }

    /// True iff f = t^n.
    pub fn is_t_power(&self) -> bool {
        self.low.iter().all(Zero::is_zero)
    }

    /// For f = t^2 (t - lambda) with lambda nonzero, returns lambda.
    pub fn cubic_double_zero_lambda(&self) -> Option<BigInt> {
        if self.degree() == 3
            && self.low[0].is_zero()
            && self.low[1].is_zero()
            && !self.low[2].is_zero()
        {
            Some(-self.low[2].clone())
        } else {
            None
        }
    }

    /// Number of distinct roots of f modulo the prime p.
    pub fn distinct_roots_mod_p(&self, p: u64) -> u64 {
        use num_integer::Integer;
        let pb = BigInt::from(p);
        let reduced: Vec<u64> = self
            .low
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().unwrap())
            .collect();
        let mut roots = 0;
        for r in 0..p {
            // Horner over t^n + c_{n-1} t^(n-1) + ... + c_0, top down.
            let mut acc: u64 = 1;
            for c in reduced.iter().rev() {
                acc = ((acc as u128 * r as u128 + *c as u128) % p as u128) as u64;
            }
            if acc == 0 {
                roots += 1;
            }
        }
        roots
    }
}

/// Element of Z_f in basis coordinates: entry i (0-indexed) is the
/// coefficient of t^(n-1-i).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RingVector(Vec<BigInt>);

impl RingVector {
    pub fn new(entries: Vec<BigInt>) -> Self {
        RingVector(entries)
    }

    pub fn zero(n: usize) -> Self {
        RingVector(vec![BigInt::zero(); n])
    }

    /// The basis vector with a single 1 at position `idx` (0-indexed),
    /// i.e. the monomial t^(n-1-idx).
    pub fn unit(n: usize, idx: usize) -> Self {
        let mut v = vec![BigInt::zero(); n];
        v[idx] = BigInt::one();
        RingVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

fn check_len(v: &RingVector, n: usize) -> Result<()> {
    if v.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: v.len(),
        });
    }
    Ok(())
}

/// Multiplication by t in Z_f.
///
/// In the fixed basis this is a left shift, with the vacated top power t^n
/// folded back in as -(c_{n-1} t^(n-1) + ... + c_0).
pub fn mul_by_t(v: &RingVector, f: &MonicPoly) -> Result<RingVector> {
    let n = f.degree();
    check_len(v, n)?;
    let mut out = vec![BigInt::zero(); n];
    mul_by_t_into(f.low_coeffs(), v.entries(), &mut out);
    Ok(RingVector(out))
}

/// Same as [`mul_by_t`], writing into a caller-provided buffer.
pub(crate) fn mul_by_t_into(low: &[BigInt], v: &[BigInt], out: &mut [BigInt]) {
    let n = low.len();
    debug_assert_eq!(v.len(), n);
    debug_assert_eq!(out.len(), n);
    let lead = &v[0];
    for (idx, slot) in out.iter_mut().enumerate() {
        let mut e = if idx + 1 < n {
            v[idx + 1].clone()
        } else {
            BigInt::zero()
        };
        let c = &low[n - 1 - idx];
        if !lead.is_zero() && !c.is_zero() {
            e -= lead * c;
        }
        *slot = e;
    }
}

/// Full product in Z_f, evaluated by Horner's rule over the coordinates of
/// `v`: acc <- t * acc + v_j * w.
pub fn mul_mod_f(v: &RingVector, w: &RingVector, f: &MonicPoly) -> Result<RingVector> {
    let n = f.degree();
    check_len(v, n)?;
    check_len(w, n)?;
    let mut acc = vec![BigInt::zero(); n];
    let mut shifted = vec![BigInt::zero(); n];
    for c in v.entries() {
        mul_by_t_into(f.low_coeffs(), &acc, &mut shifted);
        std::mem::swap(&mut acc, &mut shifted);
        if !c.is_zero() {
            for (a, b) in acc.iter_mut().zip(w.entries()) {
                *a += c * b;
            }
        }
    }
    Ok(RingVector(acc))
}

/// The matrix of the multiplication-by-t map; every other product in Z_f is
/// a bilinear combination of its columns.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StructureConstants {
    /// Column j is t * e_j in basis coordinates.
    cols: Vec<Vec<BigInt>>,
}

impl StructureConstants {
    pub fn for_poly(f: &MonicPoly) -> Self {
        let n = f.degree();
        let cols = (0..n)
            .map(|j| {
                mul_by_t(&RingVector::unit(n, j), f)
                    .expect("unit vector has matching length")
                    .into_entries()
            })
            .collect();
        StructureConstants { cols }
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    /// t * e_j (0-indexed column).
    pub fn column(&self, j: usize) -> &[BigInt] {
        &self.cols[j]
    }

    /// Applies the map, i.e. multiplies v by t.
    pub fn apply(&self, v: &RingVector) -> Result<RingVector> {
        let n = self.dim();
        check_len(v, n)?;
        let mut out = vec![BigInt::zero(); n];
        for (j, c) in v.entries().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, e) in out.iter_mut().zip(&self.cols[j]) {
                *o += c * e;
            }
        }
        Ok(RingVector(out))
    }
}

// ---------------------------------------------------------------------------
// Parsing and rendering
// ---------------------------------------------------------------------------

/// Largest exponent the parser accepts; guards against pathological inputs
/// like t^(10^9) allocating gigabytes.
const MAX_EXPONENT: u64 = 4096;

/// Parses an integer polynomial expression in the variable `t` and checks
/// that the expanded normal form is monic of positive degree.
///
/// Accepted syntax: integer literals, `t`, `+ - * ^`, parentheses, and
/// implicit multiplication before `t` or `(` (so `t^2(t-3)` works).
pub fn parse_poly(text: &str) -> Result<MonicPoly> {
    let coeffs = Parser::new(text).run()?;
    // coeffs is the dense expansion, ascending; trailing zeros trimmed.
    if coeffs.len() <= 1 {
        return Err(Error::DegreeZero);
    }
    let lead = coeffs.last().unwrap();
    if !lead.is_one() {
        return Err(Error::NotMonic {
            lead: lead.to_string(),
        });
    }
    let mut low = coeffs;
    low.pop();
    MonicPoly::new(low)
}

impl FromStr for MonicPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_poly(s)
    }
}

/// Dense polynomial, ascending coefficients, no trailing zeros ([] is 0).
type Dense = Vec<BigInt>;

fn dense_trim(p: &mut Dense) {
    while p.last().map_or(false, Zero::is_zero) {
        p.pop();
    }
}

fn dense_add(a: &Dense, b: &Dense) -> Dense {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    dense_trim(&mut out);
    out
}

fn dense_neg(a: &Dense) -> Dense {
    a.iter().map(|c| -c).collect()
}

fn dense_mul(a: &Dense, b: &Dense) -> Dense {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    dense_trim(&mut out);
    out
}

fn dense_pow(a: &Dense, mut e: u64) -> Dense {
    let mut base = a.clone();
    let mut acc: Dense = vec![BigInt::one()];
    while e > 0 {
        if e & 1 == 1 {
            acc = dense_mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = dense_mul(&base, &base);
        }
    }
    acc
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    fn run(mut self) -> Result<Dense> {
        let p = self.expr()?;
        self.skip_ws();
        if self.pos < self.src.len() {
            return Err(self.err("unexpected trailing input"));
        }
        Ok(p)
    }

    fn err(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expr(&mut self) -> Result<Dense> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = dense_add(&acc, &t);
                }
                b'-' => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = dense_add(&acc, &dense_neg(&t));
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Dense> {
        let mut negate = false;
        while let Some(c) = self.peek() {
            match c {
                b'-' => {
                    negate = !negate;
                    self.pos += 1;
                }
                b'+' => {
                    self.pos += 1;
                }
                _ => break,
            }
        }
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = dense_mul(&acc, &f);
                }
                // Implicit multiplication: 3t, t(t-1), (t-1)(t-2).
                Some(b't') | Some(b'(') => {
                    let f = self.factor()?;
                    acc = dense_mul(&acc, &f);
                }
                _ => break,
            }
        }
        if negate {
            acc = dense_neg(&acc);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Dense> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.uint()?;
            if e > MAX_EXPONENT {
                return Err(self.err("exponent too large"));
            }
            return Ok(dense_pow(&base, e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Dense> {
        match self.peek() {
            Some(b't') => {
                self.pos += 1;
                Ok(vec![BigInt::zero(), BigInt::one()])
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.bigint()?;
                if v.is_zero() {
                    Ok(Vec::new())
                } else {
                    Ok(vec![v])
                }
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.bump() != Some(b')') {
                    self.pos -= 1;
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(_) => Err(self.err("expected 't', a number, or '('")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn uint(&mut self) -> Result<u64> {
        let start = self.posn_of_digits()?;
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        s.parse::<u64>().map_err(|_| Error::Syntax {
            pos: start,
            msg: "integer too large".to_string(),
        })
    }

    fn bigint(&mut self) -> Result<BigInt> {
        let start = self.posn_of_digits()?;
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse::<BigInt>().unwrap())
    }

    fn posn_of_digits(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an integer"));
        }
        Ok(start)
    }
}

impl fmt::Display for MonicPoly {
    /// Canonical rendering, e.g. "t^3 - 3*t^2"; `parse_poly` round-trips it.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        write_monomial(out, n)?;
        for exp in (0..n).rev() {
            let c = &self.low[exp];
            if c.is_zero() {
                continue;
            }
            write!(out, " {} ", if c.is_negative() { "-" } else { "+" })?;
            let mag = c.abs();
            if exp == 0 {
                write!(out, "{}", mag)?;
            } else {
                if !mag.is_one() {
                    write!(out, "{}*", mag)?;
                }
                write_monomial(out, exp)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MonicPoly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "MonicPoly({})", self)
    }
}

fn write_monomial(out: &mut fmt::Formatter<'_>, exp: usize) -> fmt::Result {
    match exp {
        1 => write!(out, "t"),
        _ => write!(out, "t^{}", exp),
    }
}
