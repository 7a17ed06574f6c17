//! Exact scalar arithmetic: Q, Laurent polynomials in q, and the field Q(q).
//!
//! [`QRatFun`] is the coefficient field used by every other module.  Values
//! are kept in a canonical form (numerator and denominator coprime, the
//! denominator an ordinary polynomial with lowest exponent 0 and leading
//! coefficient 1), so structural equality is field equality.

use num::{BigInt, BigRational, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use thiserror::Error;

/// Arbitrary-precision rational number.
pub type QRational = BigRational;

/// Convenience constructor for small rationals.
pub fn qr(n: i64) -> QRational {
    QRational::from(BigInt::from(n))
}

/// Rational a/b from machine integers.
pub fn qr_frac(a: i64, b: i64) -> QRational {
    QRational::new(BigInt::from(a), BigInt::from(b))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    /// The q -> 1 limit does not exist: (q - 1) divides the denominator.
    #[error("pole at q = 1")]
    PoleAtOne,
    #[error("parse error: {0}")]
    Parse(String),
}

// ---------------------------------------------------------------------------
// Laurent polynomials in q
// ---------------------------------------------------------------------------

/// Laurent polynomial in q with rational coefficients.
///
/// Invariant: no explicitly stored zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    terms: BTreeMap<i64, QRational>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        QPoly::monomial(0, qr(1))
    }

    pub fn monomial(exp: i64, coeff: QRational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        QPoly { terms }
    }

    pub fn constant(c: QRational) -> Self {
        QPoly::monomial(0, c)
    }

    pub fn from_terms(pairs: impl IntoIterator<Item = (i64, QRational)>) -> Self {
        let mut p = QPoly::zero();
        for (e, c) in pairs {
            p.add_term(e, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(0).map_or(false, |c| c == &qr(1))
    }

    pub fn coeff(&self, exp: i64) -> Option<&QRational> {
        self.terms.get(&exp)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &QRational)> {
        self.terms.iter()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Coefficient of the highest power of q (zero for the zero polynomial).
    pub fn leading_coeff(&self) -> QRational {
        self.terms.values().next_back().cloned().unwrap_or_else(|| qr(0))
    }

    fn add_term(&mut self, exp: i64, c: &QRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(|| qr(0));
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c);
        }
        out
    }

    pub fn neg(&self) -> QPoly {
        QPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        let mut out = QPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &QRational) -> QPoly {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly { terms: self.terms.iter().map(|(e, k)| (*e, k * c)).collect() }
    }

    /// Multiply by q^k.
    pub fn shift(&self, k: i64) -> QPoly {
        QPoly { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    /// Substitute q -> 1/q.
    pub fn bar(&self) -> QPoly {
        QPoly { terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    /// Value at q = 1 (the sum of all coefficients).
    pub fn eval_one(&self) -> QRational {
        let mut s = qr(0);
        for c in self.terms.values() {
            s += c;
        }
        s
    }

    /// Multiplicity of the root q = 1; None for the zero polynomial.
    /// Powers of q are units at 1, so only the ordinary part matters.
    pub fn ord_one(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        let lo = self.min_exp().unwrap();
        let mut p = QPoly { terms: self.terms.iter().map(|(e, c)| (e - lo, c.clone())).collect() };
        let lin = QPoly::from_terms([(1, qr(1)), (0, qr(-1))]);
        let mut k = 0i64;
        while p.eval_one().is_zero() {
            let (quot, rem) = p.div_rem(&lin);
            debug_assert!(rem.is_zero());
            p = quot;
            k += 1;
        }
        Some(k)
    }

    /// Euclidean division for ordinary polynomials (min_exp >= 0 on both
    /// sides, divisor nonzero).  Returns (quotient, remainder).
    fn div_rem(&self, div: &QPoly) -> (QPoly, QPoly) {
        assert!(!div.is_zero(), "division by zero polynomial");
        assert!(self.min_exp().unwrap_or(0) >= 0 && div.min_exp().unwrap_or(0) >= 0);
        let mut rem = self.clone();
        let mut quot = QPoly::zero();
        let dd = div.max_exp().unwrap();
        let dl = div.leading_coeff();
        while !rem.is_zero() && rem.max_exp().unwrap() >= dd {
            let e = rem.max_exp().unwrap() - dd;
            let c = rem.leading_coeff() / &dl;
            let t = QPoly::monomial(e, c);
            rem = rem.sub(&t.mul(div));
            quot = quot.add(&t);
        }
        (quot, rem)
    }

    /// Monic gcd of two ordinary polynomials.
    fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let lc = b.leading_coeff();
            b = b.scale(&(qr(1) / lc));
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            let lc = a.leading_coeff();
            a.scale(&(qr(1) / lc))
        }
    }

    /// Positive rational c with self = c * (primitive integer polynomial).
    fn content(&self) -> QRational {
        if self.is_zero() {
            return qr(1);
        }
        let mut num_gcd = BigInt::from(0);
        let mut den_lcm = BigInt::from(1);
        for c in self.terms.values() {
            num_gcd = num::integer::gcd(num_gcd, c.numer().abs());
            den_lcm = num::integer::lcm(den_lcm, c.denom().clone());
        }
        QRational::new(num_gcd, den_lcm)
    }
}

// ---------------------------------------------------------------------------
// The field Q(q)
// ---------------------------------------------------------------------------

/// Element of Q(q) in canonical form: gcd(num, den) is a unit, den has lowest
/// q-exponent 0 and leading coefficient 1.  Structural equality is field
/// equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QRatFun {
    num: QPoly,
    den: QPoly,
}

impl QRatFun {
    pub fn new(num: QPoly, den: QPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Self::canonical(num, den)
    }

    fn canonical(num: QPoly, den: QPoly) -> Self {
        if num.is_zero() {
            return QRatFun { num, den: QPoly::one() };
        }
        // Monomial denominators fold straight into the numerator, which keeps
        // the ubiquitous Laurent-polynomial case away from the gcd machinery.
        if den.terms.len() == 1 {
            let (e, c) = den.terms.iter().next().map(|(e, c)| (*e, c.clone())).unwrap();
            return QRatFun { num: num.shift(-e).scale(&(qr(1) / c)), den: QPoly::one() };
        }
        // Shift the denominator to an ordinary polynomial; fold the inverse
        // shift into the numerator.
        let dshift = den.min_exp().unwrap();
        let den = den.shift(-dshift);
        let mut num = num.shift(-dshift);
        // Cancel the polynomial gcd, computed on the ordinary part of num.
        let nshift = num.min_exp().unwrap();
        let num0 = num.shift(-nshift);
        let g = QPoly::gcd(&num0, &den);
        let (num0, den) = if g.is_one() {
            (num0, den)
        } else {
            let (nq, nr) = num0.div_rem(&g);
            let (dq, dr) = den.div_rem(&g);
            debug_assert!(nr.is_zero() && dr.is_zero());
            (nq, dq)
        };
        num = num0.shift(nshift);
        // Make the denominator monic.
        let lc = den.leading_coeff();
        let inv = qr(1) / lc;
        QRatFun { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn zero() -> Self {
        QRatFun { num: QPoly::zero(), den: QPoly::one() }
    }

    pub fn one() -> Self {
        QRatFun { num: QPoly::one(), den: QPoly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        QRatFun { num: QPoly::constant(qr(n)), den: QPoly::one() }
    }

    pub fn from_rational(c: QRational) -> Self {
        QRatFun { num: QPoly::constant(c), den: QPoly::one() }
    }

    pub fn from_poly(p: QPoly) -> Self {
        QRatFun { num: p, den: QPoly::one() }
    }

    /// The generator q.
    pub fn q() -> Self {
        QRatFun::qpow(1)
    }

    /// q^k for any integer k.
    pub fn qpow(k: i64) -> Self {
        QRatFun { num: QPoly::monomial(k, qr(1)), den: QPoly::one() }
    }

    /// Monomial c * q^k.
    pub fn qmono(k: i64, c: QRational) -> Self {
        if c.is_zero() {
            return QRatFun::zero();
        }
        QRatFun { num: QPoly::monomial(k, c), den: QPoly::one() }
    }

    /// Quantum integer [k] = (q^k - q^-k)/(q - q^-1) = q^(k-1) + q^(k-3) + ... + q^(1-k).
    pub fn qint(k: i64) -> Self {
        if k == 0 {
            return QRatFun::zero();
        }
        if k < 0 {
            return QRatFun::qint(-k).neg();
        }
        let mut p = QPoly::zero();
        let mut e = k - 1;
        while e >= 1 - k {
            p.add_term(e, &qr(1));
            e -= 2;
        }
        QRatFun::from_poly(p)
    }

    /// q - q^-1.
    pub fn qdiff() -> Self {
        QRatFun::from_poly(QPoly::from_terms([(1, qr(1)), (-1, qr(-1))]))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn numerator(&self) -> &QPoly {
        &self.num
    }

    pub fn denominator(&self) -> &QPoly {
        &self.den
    }

    /// True when the value is a Laurent polynomial in q.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, other: &QRatFun) -> QRatFun {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return QRatFun::canonical(self.num.add(&other.num), self.den.clone());
        }
        QRatFun::canonical(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> QRatFun {
        QRatFun { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &QRatFun) -> QRatFun {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &QRatFun) -> QRatFun {
        if self.is_zero() || other.is_zero() {
            return QRatFun::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        // Cross-cancel before multiplying to keep intermediate sizes down.
        let a = QRatFun::canonical(self.num.clone(), other.den.clone());
        let b = QRatFun::canonical(other.num.clone(), self.den.clone());
        QRatFun::canonical(a.num.mul(&b.num), a.den.mul(&b.den))
    }

    pub fn inv(&self) -> QRatFun {
        assert!(!self.is_zero(), "inverse of zero");
        QRatFun::canonical(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &QRatFun) -> QRatFun {
        self.mul(&other.inv())
    }

    pub fn pow(&self, k: i64) -> QRatFun {
        if k == 0 {
            return QRatFun::one();
        }
        let base = if k < 0 { self.inv() } else { self.clone() };
        let mut out = base.clone();
        for _ in 1..k.abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Substitute q -> 1/q.
    pub fn bar(&self) -> QRatFun {
        QRatFun::canonical(self.num.bar(), self.den.bar())
    }

    /// Value at q = 1, if finite.
    pub fn limit_q1(&self) -> Result<QRational, ScalarError> {
        let d = self.den.eval_one();
        if d.is_zero() {
            return Err(ScalarError::PoleAtOne);
        }
        Ok(self.num.eval_one() / d)
    }

    /// Order of vanishing at q = 1 (negative at a pole); None for zero.
    pub fn ord_one(&self) -> Option<i64> {
        Some(self.num.ord_one()? - self.den.ord_one().expect("nonzero denominator"))
    }

    /// Exact value of self / (q - 1)^k at q = 1.  Zero when the order of
    /// vanishing exceeds k, an error when it falls short.
    pub fn eval_one_shifted(&self, k: i64) -> Result<QRational, ScalarError> {
        let Some(a) = self.num.ord_one() else {
            return Ok(qr(0));
        };
        let b = self.den.ord_one().expect("nonzero denominator");
        let net = a - b - k;
        if net > 0 {
            return Ok(qr(0));
        }
        if net < 0 {
            return Err(ScalarError::PoleAtOne);
        }
        let lin = QPoly::from_terms([(1, qr(1)), (0, qr(-1))]);
        let strip = |p: &QPoly, ord: i64| -> QRational {
            let lo = p.min_exp().unwrap();
            let mut r = QPoly { terms: p.terms.iter().map(|(e, c)| (e - lo, c.clone())).collect() };
            for _ in 0..ord {
                let (quot, rem) = r.div_rem(&lin);
                debug_assert!(rem.is_zero());
                r = quot;
            }
            r.eval_one()
        };
        Ok(strip(&self.num, a) / strip(&self.den, b))
    }

    /// Parse the textual rendering produced by `Display`.
    pub fn parse(s: &str) -> Result<QRatFun, ScalarError> {
        parse_ratfun(s)
    }
}

impl Add for &QRatFun {
    type Output = QRatFun;
    fn add(self, rhs: &QRatFun) -> QRatFun {
        QRatFun::add(self, rhs)
    }
}

impl Sub for &QRatFun {
    type Output = QRatFun;
    fn sub(self, rhs: &QRatFun) -> QRatFun {
        QRatFun::sub(self, rhs)
    }
}

impl Mul for &QRatFun {
    type Output = QRatFun;
    fn mul(self, rhs: &QRatFun) -> QRatFun {
        QRatFun::mul(self, rhs)
    }
}

impl Div for &QRatFun {
    type Output = QRatFun;
    fn div(self, rhs: &QRatFun) -> QRatFun {
        QRatFun::div(self, rhs)
    }
}

impl Neg for &QRatFun {
    type Output = QRatFun;
    fn neg(self) -> QRatFun {
        QRatFun::neg(self)
    }
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

fn render_int_poly(p: &QPoly, out: &mut String) {
    // Caller guarantees integer coefficients; render highest power first.
    let mut first = true;
    for (e, c) in p.terms.iter().rev() {
        let neg = c.is_negative();
        let abs = c.abs();
        if first {
            if neg {
                out.push('-');
            }
            first = false;
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let unit = abs == qr(1);
        if !unit || *e == 0 {
            out.push_str(&abs.numer().to_string());
        }
        if *e != 0 {
            if !unit {
                out.push('*');
            }
            if *e == 1 {
                out.push('q');
            } else {
                out.push_str(&format!("q^{}", e));
            }
        }
    }
    if first {
        out.push('0');
    }
}

impl fmt::Display for QRatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Distribute the rational content so both sides have integer
        // coefficients: num/den = (a/b)(N/D) with N, D primitive.
        let cn = self.num.content();
        let cd = self.den.content();
        let ratio = cn.clone() / cd.clone(); // a/b in lowest terms
        let a = QRational::from(ratio.numer().clone());
        let b = QRational::from(ratio.denom().clone());
        let num = self.num.scale(&(a / cn));
        let den = self.den.scale(&(b / cd));
        let mut s = String::new();
        render_int_poly(&num, &mut s);
        if den.is_one() {
            write!(f, "{}", s)
        } else {
            let mut d = String::new();
            render_int_poly(&den, &mut d);
            write!(f, "({})/({})", s, d)
        }
    }
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    tok: Option<Tok>,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Q,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl<'a> Lexer<'a> {
    fn new(s: &'a str) -> Result<Self, ScalarError> {
        let mut lx = Lexer { chars: s.chars().peekable(), tok: None };
        lx.advance()?;
        Ok(lx)
    }

    fn advance(&mut self) -> Result<(), ScalarError> {
        while matches!(self.chars.peek(), Some(c) if c.is_whitespace()) {
            self.chars.next();
        }
        self.tok = match self.chars.peek() {
            None => None,
            Some('q') => {
                self.chars.next();
                Some(Tok::Q)
            }
            Some('+') => {
                self.chars.next();
                Some(Tok::Plus)
            }
            Some('-') => {
                self.chars.next();
                Some(Tok::Minus)
            }
            Some('*') => {
                self.chars.next();
                Some(Tok::Star)
            }
            Some('/') => {
                self.chars.next();
                Some(Tok::Slash)
            }
            Some('^') => {
                self.chars.next();
                Some(Tok::Caret)
            }
            Some('(') => {
                self.chars.next();
                Some(Tok::LParen)
            }
            Some(')') => {
                self.chars.next();
                Some(Tok::RParen)
            }
            Some(c) if c.is_ascii_digit() => {
                let mut digits = String::new();
                while matches!(self.chars.peek(), Some(c) if c.is_ascii_digit()) {
                    digits.push(self.chars.next().unwrap());
                }
                Some(Tok::Int(digits.parse().unwrap()))
            }
            Some(c) => return Err(ScalarError::Parse(format!("unexpected character {c:?}"))),
        };
        Ok(())
    }
}

fn parse_ratfun(s: &str) -> Result<QRatFun, ScalarError> {
    let mut lx = Lexer::new(s)?;
    let v = parse_sum(&mut lx)?;
    if lx.tok.is_some() {
        return Err(ScalarError::Parse(format!("trailing input near {:?}", lx.tok)));
    }
    Ok(v)
}

fn parse_sum(lx: &mut Lexer) -> Result<QRatFun, ScalarError> {
    let mut acc = parse_product(lx)?;
    loop {
        match lx.tok {
            Some(Tok::Plus) => {
                lx.advance()?;
                acc = acc.add(&parse_product(lx)?);
            }
            Some(Tok::Minus) => {
                lx.advance()?;
                acc = acc.sub(&parse_product(lx)?);
            }
            _ => return Ok(acc),
        }
    }
}

fn parse_product(lx: &mut Lexer) -> Result<QRatFun, ScalarError> {
    let mut acc = parse_signed(lx)?;
    loop {
        match lx.tok {
            Some(Tok::Star) => {
                lx.advance()?;
                acc = acc.mul(&parse_signed(lx)?);
            }
            Some(Tok::Slash) => {
                lx.advance()?;
                let d = parse_signed(lx)?;
                if d.is_zero() {
                    return Err(ScalarError::Parse("division by zero".into()));
                }
                acc = acc.div(&d);
            }
            _ => return Ok(acc),
        }
    }
}

fn parse_signed(lx: &mut Lexer) -> Result<QRatFun, ScalarError> {
    let mut sign = false;
    while lx.tok == Some(Tok::Minus) {
        sign = !sign;
        lx.advance()?;
    }
    let v = parse_power(lx)?;
    Ok(if sign { v.neg() } else { v })
}

fn parse_power(lx: &mut Lexer) -> Result<QRatFun, ScalarError> {
    let base = parse_atom(lx)?;
    if lx.tok == Some(Tok::Caret) {
        lx.advance()?;
        let mut neg = false;
        if lx.tok == Some(Tok::Minus) {
            neg = true;
            lx.advance()?;
        }
        match lx.tok.take() {
            Some(Tok::Int(n)) => {
                lx.advance()?;
                let k: i64 = n.to_string().parse().map_err(|_| {
                    ScalarError::Parse("exponent out of range".into())
                })?;
                return Ok(base.pow(if neg { -k } else { k }));
            }
            t => return Err(ScalarError::Parse(format!("expected exponent, got {t:?}"))),
        }
    }
    Ok(base)
}

fn parse_atom(lx: &mut Lexer) -> Result<QRatFun, ScalarError> {
    match lx.tok.take() {
        Some(Tok::Q) => {
            lx.advance()?;
            Ok(QRatFun::q())
        }
        Some(Tok::Int(n)) => {
            lx.advance()?;
            Ok(QRatFun::from_rational(QRational::from(n)))
        }
        Some(Tok::LParen) => {
            lx.advance()?;
            let v = parse_sum(lx)?;
            if lx.tok != Some(Tok::RParen) {
                return Err(ScalarError::Parse("expected )".into()));
            }
            lx.advance()?;
            Ok(v)
        }
        t => Err(ScalarError::Parse(format!("unexpected token {t:?}"))),
    }
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn qint_small_values() {
        assert!(QRatFun::qint(0).is_zero());
        assert!(QRatFun::qint(1).is_one());
        let expect2 = QRatFun::qpow(1).add(&QRatFun::qpow(-1));
        assert_eq!(QRatFun::qint(2), expect2);
        let expect3 = QRatFun::qpow(2).add(&QRatFun::one()).add(&QRatFun::qpow(-2));
        assert_eq!(QRatFun::qint(3), expect3);
        assert_eq!(QRatFun::qint(-3), expect3.neg());
    }

    #[test]
    fn qint_matches_ratio_definition() {
        for k in -6..=6 {
            let lhs = QRatFun::qint(k);
            let rhs = QRatFun::qpow(k).sub(&QRatFun::qpow(-k)).div(&QRatFun::qdiff());
            assert_eq!(lhs, rhs, "k = {k}");
        }
    }

    #[test]
    fn limit_q1_examples() {
        // (q - q^-1)/(q - 1) -> 2 after cancellation.
        let f = QRatFun::qdiff().div(&QRatFun::q().sub(&QRatFun::one()));
        assert_eq!(f.limit_q1().unwrap(), qr(2));
        for k in 1..6 {
            assert_eq!(QRatFun::qint(k).limit_q1().unwrap(), qr(k));
        }
        let pole = QRatFun::one().div(&QRatFun::q().sub(&QRatFun::one()));
        assert_eq!(pole.limit_q1(), Err(ScalarError::PoleAtOne));
    }

    #[test]
    fn canonical_denominator_is_monic_ordinary() {
        // (q^2 - 1) / (q^3 - q) = q^-1 (q^2-1)/(q^2-1) ... = 1/q after cancellation.
        let num = QPoly::from_terms([(2, qr(1)), (0, qr(-1))]);
        let den = QPoly::from_terms([(3, qr(1)), (1, qr(-1))]);
        let f = QRatFun::new(num, den);
        assert_eq!(f, QRatFun::qpow(-1));
        // 1/(2q - 2) keeps a monic denominator with rational numerator.
        let g = QRatFun::new(QPoly::one(), QPoly::from_terms([(1, qr(2)), (0, qr(-2))]));
        assert!(g.denominator().leading_coeff() == qr(1));
        assert_eq!(g.denominator().min_exp(), Some(0));
    }

    #[test]
    fn bar_is_an_involution_on_qint() {
        for k in 1..6 {
            let v = QRatFun::qint(k);
            assert_eq!(v.bar(), v, "quantum integers are bar-invariant");
        }
        let f = QRatFun::parse("(q^2 - q)/(q^3 + 1)").unwrap();
        assert_eq!(f.bar().bar(), f);
    }

    #[test]
    fn render_parse_roundtrip_examples() {
        let cases = [
            "0",
            "1",
            "q",
            "-q^2 + 3",
            "(q^2 - 1)/(q^4 + q + 1)",
            "q^-3 + 2*q^-1",
            "(2*q - 2)/(3*q^2 + 1)",
        ];
        for s in cases {
            let f = QRatFun::parse(s).unwrap();
            let back = QRatFun::parse(&f.to_string()).unwrap();
            assert_eq!(f, back, "case {s}");
        }
    }

    fn arb_poly() -> impl Strategy<Value = QPoly> {
        proptest::collection::vec((-4i64..5, -9i64..10), 0..5)
            .prop_map(|v| QPoly::from_terms(v.into_iter().map(|(e, c)| (e, qr(c)))))
    }

    fn arb_ratfun() -> impl Strategy<Value = QRatFun> {
        (arb_poly(), arb_poly())
            .prop_filter("nonzero denominator", |(_, d)| !d.is_zero())
            .prop_map(|(n, d)| QRatFun::new(n, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_axioms(a in arb_ratfun(), b in arb_ratfun(), c in arb_ratfun()) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.sub(&a), QRatFun::zero());
            if !a.is_zero() {
                prop_assert_eq!(a.mul(&a.inv()), QRatFun::one());
            }
        }

        #[test]
        fn bar_is_field_automorphism(a in arb_ratfun(), b in arb_ratfun()) {
            prop_assert_eq!(a.bar().bar(), a.clone());
            prop_assert_eq!(a.add(&b).bar(), a.bar().add(&b.bar()));
            prop_assert_eq!(a.mul(&b).bar(), a.bar().mul(&b.bar()));
        }

        #[test]
        fn display_roundtrip(a in arb_ratfun()) {
            let s = a.to_string();
            prop_assert_eq!(QRatFun::parse(&s).unwrap(), a);
        }
    }
}
