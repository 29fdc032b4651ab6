//! Exact coefficient arithmetic: Gaussian rationals and the two-parameter
//! coefficient ring used by every symbolic module.
//!
//! A [`ParamScalar`] is a polynomial in the deformation parameter `A` with
//! Laurent coefficients in the scale parameter `G`, over the Gaussian
//! rationals.  The physical `ħ` is always the product `A·G` and is never
//! stored as a symbol of its own.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::complex::Complex64;
use num::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    /// Exact division by `iA` requested on a term with no `A` factor.
    #[error("term with A^0 is not divisible by iA")]
    NotDivisible,
    /// Numeric substitution with `G = 0`.
    #[error("substitution requires G != 0")]
    ZeroG,
    #[error("parse error: {0}")]
    Parse(String),
}

/// A Gaussian rational `re + im·i` with exact rational parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussQ {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussQ {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussQ { re, im }
    }

    pub fn zero() -> Self {
        GaussQ::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        GaussQ::new(BigRational::one(), BigRational::zero())
    }

    pub fn i() -> Self {
        GaussQ::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        GaussQ::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        GaussQ::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, rhs: &GaussQ) -> GaussQ {
        GaussQ::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }

    pub fn sub(&self, rhs: &GaussQ) -> GaussQ {
        GaussQ::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }

    pub fn neg(&self) -> GaussQ {
        GaussQ::new(-self.re.clone(), -self.im.clone())
    }

    pub fn mul(&self, rhs: &GaussQ) -> GaussQ {
        GaussQ::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }

    /// Multiplicative inverse; panics on zero (callers check first).
    pub fn inv(&self) -> GaussQ {
        let norm = &self.re * &self.re + &self.im * &self.im;
        assert!(!norm.is_zero(), "inverse of zero Gaussian rational");
        GaussQ::new(&self.re / &norm, -(&self.im / &norm))
    }

    pub fn div(&self, rhs: &GaussQ) -> GaussQ {
        self.mul(&rhs.inv())
    }

    pub fn scale_int(&self, n: i64) -> GaussQ {
        self.mul(&GaussQ::from_int(n))
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// Exact conversion of an `f64` (every finite float is rational).
    pub fn from_f64(x: f64) -> Option<Self> {
        BigRational::from_float(x).map(|r| GaussQ::new(r, BigRational::zero()))
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rational(&self.re));
        }
        if self.re.is_zero() {
            if self.im.is_one() {
                return write!(f, "i");
            }
            if (-self.im.clone()).is_one() {
                return write!(f, "-i");
            }
            return write!(f, "{} i", fmt_rational(&self.im));
        }
        let sign = if self.im.is_negative() { "-" } else { "+" };
        let im_abs = self.im.abs();
        if im_abs.is_one() {
            write!(f, "{} {} i", fmt_rational(&self.re), sign)
        } else {
            write!(f, "{} {} {} i", fmt_rational(&self.re), sign, fmt_rational(&im_abs))
        }
    }
}

/// Exponent key of one term: the power of `A` (non-negative) and of `G`
/// (any integer).
pub type ParamKey = (u32, i32);

/// Element of the coefficient ring `Q(i)[A][G, G^-1]`.
///
/// Zero coefficients are never stored, so structural equality is semantic
/// equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ParamScalar {
    terms: BTreeMap<ParamKey, GaussQ>,
}

impl ParamScalar {
    pub fn zero() -> Self {
        ParamScalar { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        ParamScalar::constant(GaussQ::one())
    }

    pub fn constant(c: GaussQ) -> Self {
        let mut s = ParamScalar::zero();
        s.add_term((0, 0), c);
        s
    }

    pub fn from_int(n: i64) -> Self {
        ParamScalar::constant(GaussQ::from_int(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        ParamScalar::constant(GaussQ::from_ratio(num, den))
    }

    pub fn i() -> Self {
        ParamScalar::constant(GaussQ::i())
    }

    /// The monomial `c · A^a_pow · G^g_pow`.
    pub fn monomial(c: GaussQ, a_pow: u32, g_pow: i32) -> Self {
        let mut s = ParamScalar::zero();
        s.add_term((a_pow, g_pow), c);
        s
    }

    /// `iA`, the combination in which the deformation enters every formula.
    pub fn i_a() -> Self {
        ParamScalar::monomial(GaussQ::i(), 1, 0)
    }

    pub fn a() -> Self {
        ParamScalar::monomial(GaussQ::one(), 1, 0)
    }

    pub fn g_pow(r: i32) -> Self {
        ParamScalar::monomial(GaussQ::one(), 0, r)
    }

    /// `ħ = A·G`.
    pub fn hbar() -> Self {
        ParamScalar::monomial(GaussQ::one(), 1, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ParamKey, &GaussQ)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, key: ParamKey, c: GaussQ) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, rhs: &ParamScalar) -> ParamScalar {
        let mut out = self.clone();
        for (k, c) in rhs.terms.iter() {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &ParamScalar) -> ParamScalar {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> ParamScalar {
        ParamScalar {
            terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect(),
        }
    }

    pub fn mul(&self, rhs: &ParamScalar) -> ParamScalar {
        let mut out = ParamScalar::zero();
        for ((a1, g1), c1) in self.terms.iter() {
            for ((a2, g2), c2) in rhs.terms.iter() {
                out.add_term((a1 + a2, g1 + g2), c1.mul(c2));
            }
        }
        out
    }

    pub fn mul_gauss(&self, c: &GaussQ) -> ParamScalar {
        if c.is_zero() {
            return ParamScalar::zero();
        }
        ParamScalar {
            terms: self.terms.iter().map(|(k, v)| (*k, v.mul(c))).collect(),
        }
    }

    pub fn scale_int(&self, n: i64) -> ParamScalar {
        self.mul_gauss(&GaussQ::from_int(n))
    }

    /// Exact division by `iA`.  Every term must carry at least one factor
    /// of `A`.
    pub fn div_by_i_a(&self) -> Result<ParamScalar, ScalarError> {
        let minus_i = GaussQ::i().neg();
        let mut out = ParamScalar::zero();
        for ((a, g), c) in self.terms.iter() {
            if *a == 0 {
                return Err(ScalarError::NotDivisible);
            }
            out.add_term((a - 1, *g), c.mul(&minus_i));
        }
        Ok(out)
    }

    /// Exact division by `iħ = iAG`.
    pub fn div_by_i_hbar(&self) -> Result<ParamScalar, ScalarError> {
        Ok(self.div_by_i_a()?.mul(&ParamScalar::g_pow(-1)))
    }

    /// Exact specialization `A = 0`: drops every term with an `A` factor.
    pub fn at_a_zero(&self) -> ParamScalar {
        ParamScalar {
            terms: self
                .terms
                .iter()
                .filter(|((a, _), _)| *a == 0)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    /// Numeric evaluation with `A = a_val`, `G = g_val`.
    pub fn substitute(&self, a_val: Complex64, g_val: Complex64) -> Result<Complex64, ScalarError> {
        if g_val == Complex64::new(0.0, 0.0) {
            return Err(ScalarError::ZeroG);
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for ((a, g), c) in self.terms.iter() {
            acc += c.to_complex() * a_val.powi(*a as i32) * g_val.powi(*g);
        }
        Ok(acc)
    }
}

impl fmt::Display for ParamScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((a, g), c) in self.terms.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coeff = if c.is_zero() {
                unreachable!("zero coefficient stored")
            } else if !c.im.is_zero() && !c.re.is_zero() {
                format!("({})", c)
            } else {
                format!("{}", c)
            };
            let mut parts: Vec<String> = Vec::new();
            let trivial_coeff = coeff == "1" && (*a > 0 || *g != 0);
            if !trivial_coeff {
                parts.push(coeff);
            }
            if *a == 1 {
                parts.push("A".to_string());
            } else if *a > 1 {
                parts.push(format!("A^{}", a));
            }
            if *g != 0 {
                if *g == 1 {
                    parts.push("G".to_string());
                } else {
                    parts.push(format!("G^{}", g));
                }
            }
            write!(f, "{}", parts.join(" "))?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Parsing of the textual scalar grammar, e.g. "(3/2 + 1/2 i) A^2 G^-1".
// ---------------------------------------------------------------------------

pub(crate) struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Lexer { src: src.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && (self.src[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
    }

    pub(crate) fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src.get(self.pos).map(|b| *b as char)
    }

    pub(crate) fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn integer(&mut self) -> Result<BigInt, ScalarError> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some('-') {
            self.pos += 1;
        }
        while self.pos < self.src.len() && (self.src[self.pos] as char).is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse::<BigInt>()
            .map_err(|_| ScalarError::Parse(format!("expected integer at byte {}", start)))
    }

    fn rational(&mut self) -> Result<BigRational, ScalarError> {
        let n = self.integer()?;
        if self.eat('/') {
            let d = self.integer()?;
            if d.is_zero() {
                return Err(ScalarError::Parse("zero denominator".into()));
            }
            Ok(BigRational::new(n, d))
        } else {
            Ok(BigRational::from_integer(n))
        }
    }
}

fn parse_gauss_body(lx: &mut Lexer<'_>) -> Result<GaussQ, ScalarError> {
    // rational [i] [ (+|-) rational [i] ]
    let mut re = BigRational::zero();
    let mut im = BigRational::zero();
    let part = |lx: &mut Lexer<'_>, negate: bool| -> Result<(BigRational, bool), ScalarError> {
        if lx.peek() == Some('i') {
            lx.bump();
            let v = BigRational::one();
            return Ok((if negate { -v } else { v }, true));
        }
        let mut v = lx.rational()?;
        if negate {
            v = -v;
        }
        let is_im = if lx.peek() == Some('i') {
            lx.bump();
            true
        } else {
            false
        };
        Ok((v, is_im))
    };
    let (v, is_im) = part(lx, false)?;
    if is_im {
        im = v;
    } else {
        re = v;
    }
    loop {
        match lx.peek() {
            Some('+') => {
                lx.bump();
                let (v, is_im) = part(lx, false)?;
                if is_im {
                    im = im + v;
                } else {
                    re = re + v;
                }
            }
            Some('-') => {
                lx.bump();
                let (v, is_im) = part(lx, true)?;
                if is_im {
                    im = im + v;
                } else {
                    re = re + v;
                }
            }
            _ => break,
        }
    }
    Ok(GaussQ::new(re, im))
}

/// Parse one multiplicative scalar factor group: coefficient and `A`/`G`
/// powers, in any order, e.g. `(3/2 + 1/2 i) A^2 G^-1`, `2iA`, `G^-1`.
pub(crate) fn parse_scalar_factors(lx: &mut Lexer<'_>) -> Result<ParamScalar, ScalarError> {
    let mut coeff = GaussQ::one();
    let mut a_pow: u32 = 0;
    let mut g_pow: i32 = 0;
    let mut saw = false;
    // leading sign(s) belong to this factor group; later '-' separates terms
    while lx.peek() == Some('-') {
        lx.bump();
        coeff = coeff.neg();
    }
    loop {
        match lx.peek() {
            Some('(') => {
                lx.bump();
                let c = parse_gauss_body(lx)?;
                if !lx.eat(')') {
                    return Err(ScalarError::Parse("expected ')'".into()));
                }
                coeff = coeff.mul(&c);
                saw = true;
            }
            Some('A') => {
                lx.bump();
                let e = if lx.eat('^') {
                    let n = lx.integer()?;
                    n.to_u32().ok_or_else(|| ScalarError::Parse("A power must be >= 0".into()))?
                } else {
                    1
                };
                a_pow += e;
                saw = true;
            }
            Some('G') => {
                lx.bump();
                let e = if lx.eat('^') {
                    let n = lx.integer()?;
                    n.to_i32().ok_or_else(|| ScalarError::Parse("G power out of range".into()))?
                } else {
                    1
                };
                g_pow += e;
                saw = true;
            }
            Some('i') => {
                lx.bump();
                coeff = coeff.mul(&GaussQ::i());
                saw = true;
            }
            Some('*') => {
                lx.bump();
            }
            Some(c) if c.is_ascii_digit() => {
                let r = lx.rational()?;
                coeff = coeff.mul(&GaussQ::new(r, BigRational::zero()));
                saw = true;
            }
            _ => break,
        }
    }
    if !saw {
        return Err(ScalarError::Parse("expected scalar factor".into()));
    }
    Ok(ParamScalar::monomial(coeff, a_pow, g_pow))
}

impl std::str::FromStr for ParamScalar {
    type Err = ScalarError;

    /// Parses sums of scalar factor groups, e.g.
    /// `"(3/2 + 1/2 i) A^2 G^-1 + 2 G - iA"`.
    fn from_str(s: &str) -> Result<Self, ScalarError> {
        let mut lx = Lexer::new(s);
        let mut acc = parse_scalar_factors(&mut lx)?;
        loop {
            match lx.peek() {
                Some('+') => {
                    lx.bump();
                    acc = acc.add(&parse_scalar_factors(&mut lx)?);
                }
                Some('-') => {
                    lx.bump();
                    acc = acc.sub(&parse_scalar_factors(&mut lx)?);
                }
                None => break,
                Some(c) => return Err(ScalarError::Parse(format!("unexpected '{}'", c))),
            }
        }
        Ok(acc)
    }
}

pub(crate) use Lexer as ScalarLexer;

#[cfg(test)]
mod tests {
    use super::*;

    fn ia() -> ParamScalar {
        ParamScalar::i_a()
    }

    #[test]
    fn i_a_squared_is_minus_a_squared() {
        let prod = ia().mul(&ia());
        assert_eq!(prod, ParamScalar::monomial(GaussQ::from_int(-1), 2, 0));
    }

    #[test]
    fn laurent_cancellation() {
        let prod = ParamScalar::g_pow(-1).mul(&ParamScalar::g_pow(1));
        assert_eq!(prod, ParamScalar::one());
    }

    #[test]
    fn additive_inverse_empties_term_map() {
        let a = ParamScalar::constant(GaussQ::new(
            BigRational::from_integer(2.into()),
            BigRational::from_integer(3.into()),
        ));
        let sum = a.add(&a.neg());
        assert!(sum.is_zero());
        assert_eq!(sum.num_terms(), 0);
    }

    #[test]
    fn div_by_i_a_examples() {
        let two_ia = ia().scale_int(2);
        assert_eq!(two_ia.div_by_i_a().unwrap(), ParamScalar::from_int(2));
        let ia2 = ia().mul(&ia());
        assert_eq!(ia2.div_by_i_a().unwrap(), ia());
        assert_eq!(ParamScalar::one().div_by_i_a(), Err(ScalarError::NotDivisible));
    }

    #[test]
    fn substitute_examples() {
        let half = Complex64::new(0.5, 0.0);
        let v = ia().substitute(half, Complex64::new(1.0, 0.0)).unwrap();
        assert!((v - Complex64::new(0.0, 0.5)).norm() < 1e-15);

        let v = ParamScalar::g_pow(-1)
            .substitute(Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0))
            .unwrap();
        assert!((v - Complex64::new(0.5, 0.0)).norm() < 1e-15);

        let v = ParamScalar::hbar()
            .substitute(Complex64::new(1.0, 0.0), Complex64::new(3.0, 0.0))
            .unwrap();
        assert!((v - Complex64::new(3.0, 0.0)).norm() < 1e-15);

        assert_eq!(
            ParamScalar::one().substitute(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)),
            Err(ScalarError::ZeroG)
        );
    }

    #[test]
    fn display_round_trip() {
        let s = ParamScalar::monomial(
            GaussQ::new(BigRational::new(3.into(), 2.into()), BigRational::new(1.into(), 2.into())),
            2,
            -1,
        );
        let text = s.to_string();
        assert_eq!(text, "(3/2 + 1/2 i) A^2 G^-1");
        let back: ParamScalar = text.parse().unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn parse_compact_forms() {
        let s: ParamScalar = "iA".parse().unwrap();
        assert_eq!(s, ParamScalar::i_a());
        let s: ParamScalar = "2 G - iA".parse().unwrap();
        assert_eq!(s, ParamScalar::g_pow(1).scale_int(2).sub(&ParamScalar::i_a()));
    }
}
