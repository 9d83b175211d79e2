use std::collections::BTreeMap;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ring::Rational;

/// Sparse polynomial in `q` and `t` with rational coefficients.
///
/// Terms are keyed by `(e_q, e_t)`; zero coefficients are never stored, so
/// structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QtPoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl QtPoly {
    pub fn zero() -> Self {
        QtPoly::default()
    }

    pub fn one() -> Self {
        QtPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        QtPoly::monomial(c, 0, 0)
    }

    pub fn monomial(c: Rational, e_q: u32, e_t: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((e_q, e_t), c);
        }
        QtPoly { terms }
    }

    /// `q^a t^b` with unit coefficient.
    pub fn qt(e_q: u32, e_t: u32) -> Self {
        QtPoly::monomial(Rational::one(), e_q, e_t)
    }

    pub fn q() -> Self {
        QtPoly::qt(1, 0)
    }

    pub fn t() -> Self {
        QtPoly::qt(0, 1)
    }

    /// Builds `q^a t^b` from signed exponents, rejecting negative ones.
    pub fn try_qt(e_q: i64, e_t: i64) -> Result<Self> {
        match (u32::try_from(e_q), u32::try_from(e_t)) {
            (Ok(a), Ok(b)) => Ok(QtPoly::qt(a, b)),
            _ => Err(Error::NegativeExponent(format!("q^{e_q}*t^{e_t}"))),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The constant value, if the polynomial has no `q` or `t`.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn coeff(&self, e_q: u32, e_t: u32) -> Rational {
        self.terms.get(&(e_q, e_t)).cloned().unwrap_or_default()
    }

    /// Terms in canonical `(e_q, e_t)` ascending order.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &Rational)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, key: (u32, u32), c: &Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return QtPoly::zero();
        }
        QtPoly { terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = QtPoly::one();
        let mut base = self.clone();
        let mut e = exp;
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

    pub fn evaluate(&self, q: &Rational, t: &Rational) -> Rational {
        self.terms.iter().map(|(&(a, b), c)| c * &q.pow(a) * t.pow(b)).sum()
    }

    /// Replaces `q` and `t` by the given polynomials.
    pub fn substitute(&self, q_image: &QtPoly, t_image: &QtPoly) -> QtPoly {
        let mut q_pows = vec![QtPoly::one()];
        let mut t_pows = vec![QtPoly::one()];
        let mut out = QtPoly::zero();
        for (&(a, b), c) in &self.terms {
            while q_pows.len() <= a as usize {
                let next = q_pows.last().unwrap() * q_image;
                q_pows.push(next);
            }
            while t_pows.len() <= b as usize {
                let next = t_pows.last().unwrap() * t_image;
                t_pows.push(next);
            }
            out += (&q_pows[a as usize] * &t_pows[b as usize]).scale(c);
        }
        out
    }
}

impl From<Rational> for QtPoly {
    fn from(c: Rational) -> Self {
        QtPoly::constant(c)
    }
}

impl From<i64> for QtPoly {
    fn from(n: i64) -> Self {
        QtPoly::constant(Rational::from(n))
    }
}

impl Add<&QtPoly> for &QtPoly {
    type Output = QtPoly;
    fn add(self, rhs: &QtPoly) -> QtPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for QtPoly {
    type Output = QtPoly;
    fn add(mut self, rhs: QtPoly) -> QtPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&QtPoly> for QtPoly {
    fn add_assign(&mut self, rhs: &QtPoly) {
        for (k, c) in &rhs.terms {
            self.add_term(*k, c);
        }
    }
}

impl AddAssign for QtPoly {
    fn add_assign(&mut self, rhs: QtPoly) {
        *self += &rhs;
    }
}

impl Sub<&QtPoly> for &QtPoly {
    type Output = QtPoly;
    fn sub(self, rhs: &QtPoly) -> QtPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for QtPoly {
    type Output = QtPoly;
    fn sub(mut self, rhs: QtPoly) -> QtPoly {
        self -= &rhs;
        self
    }
}

impl SubAssign<&QtPoly> for QtPoly {
    fn sub_assign(&mut self, rhs: &QtPoly) {
        for (k, c) in &rhs.terms {
            self.add_term(*k, &-c);
        }
    }
}

impl Mul<&QtPoly> for &QtPoly {
    type Output = QtPoly;
    fn mul(self, rhs: &QtPoly) -> QtPoly {
        let mut out = QtPoly::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2), &(c1 * c2));
            }
        }
        out
    }
}

impl Mul for QtPoly {
    type Output = QtPoly;
    fn mul(self, rhs: QtPoly) -> QtPoly {
        &self * &rhs
    }
}

impl Neg for QtPoly {
    type Output = QtPoly;
    fn neg(self) -> QtPoly {
        QtPoly { terms: self.terms.into_iter().map(|(k, v)| (k, -v)).collect() }
    }
}

impl Neg for &QtPoly {
    type Output = QtPoly;
    fn neg(self) -> QtPoly {
        -self.clone()
    }
}

impl Sum for QtPoly {
    fn sum<I: Iterator<Item = QtPoly>>(iter: I) -> Self {
        iter.fold(QtPoly::zero(), |acc, x| acc + x)
    }
}

impl Product for QtPoly {
    fn product<I: Iterator<Item = QtPoly>>(iter: I) -> Self {
        iter.fold(QtPoly::one(), |acc, x| acc * x)
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, e_q: u32, e_t: u32) -> fmt::Result {
    let mut parts = Vec::new();
    match e_q {
        0 => {}
        1 => parts.push("q".to_string()),
        a => parts.push(format!("q^{a}")),
    }
    match e_t {
        0 => {}
        1 => parts.push("t".to_string()),
        b => parts.push(format!("t^{b}")),
    }
    write!(f, "{}", parts.join("*"))
}

impl fmt::Display for QtPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (&(a, b), c)) in self.terms.iter().enumerate() {
            let sign = c.is_negative();
            match (idx, sign) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            if a == 0 && b == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write_monomial(f, a, b)?;
            } else {
                write!(f, "{mag}*")?;
                write_monomial(f, a, b)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QtPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QtPoly({self})")
    }
}

impl FromStr for QtPoly {
    type Err = Error;

    /// Parses the canonical text form and, more leniently, any sum of
    /// products of rationals, `q`, `t` and parenthesised subexpressions with
    /// nonnegative integer powers, such as `(1 + t)^2 - 3/4*q*t^2`.
    fn from_str(s: &str) -> Result<Self> {
        let mut p = PolyParser { src: s, bytes: s.as_bytes(), pos: 0 };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos != p.bytes.len() {
            return Err(p.error("trailing input"));
        }
        Ok(out)
    }
}

struct PolyParser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl PolyParser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in {:?}", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<QtPoly> {
        let mut negate = false;
        match self.peek() {
            Some(b'-') => {
                negate = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc += self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc -= &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<QtPoly> {
        let mut acc = self.power()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<QtPoly> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        if self.peek() == Some(b'-') {
            return Err(Error::NegativeExponent(self.src.to_string()));
        }
        let digits = self.digits()?;
        let exp: u32 = digits.parse().map_err(|_| self.error("exponent too large"))?;
        Ok(base.pow(exp))
    }

    fn digits(&mut self) -> Result<&str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        Ok(&self.src[start..self.pos])
    }

    fn atom(&mut self) -> Result<QtPoly> {
        match self.peek() {
            Some(b'q') => {
                self.pos += 1;
                Ok(QtPoly::q())
            }
            Some(b't') => {
                self.pos += 1;
                Ok(QtPoly::t())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b) if b.is_ascii_digit() => {
                let numer = self.digits()?.to_string();
                let value = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let denom = self.digits()?;
                    format!("{numer}/{denom}").parse::<Rational>()?
                } else {
                    numer.parse::<Rational>()?
                };
                Ok(QtPoly::constant(value))
            }
            _ => Err(self.error("expected a number, q, t or '('")),
        }
    }
}

/// `[n]_q = 1 + q + ... + q^(n-1)`.
pub fn qint(n: u32) -> QtPoly {
    (0..n).map(|i| QtPoly::qt(i, 0)).sum()
}

/// Gaussian binomial coefficient `[n choose k]_q`, zero unless `0 <= k <= n`.
pub fn qbinomial(n: i64, k: i64) -> QtPoly {
    QBinomials::new().get(n, k)
}

/// Memo table for Gaussian binomials filled by the q-Pascal rule
/// `[n,k] = [n-1,k-1] + q^k [n-1,k]`.
#[derive(Debug, Default, Clone)]
pub struct QBinomials {
    rows: Vec<Vec<QtPoly>>,
}

impl QBinomials {
    pub fn new() -> Self {
        QBinomials { rows: vec![vec![QtPoly::one()]] }
    }

    pub fn get(&mut self, n: i64, k: i64) -> QtPoly {
        if n < 0 || k < 0 || k > n {
            return QtPoly::zero();
        }
        let n = n as usize;
        while self.rows.len() <= n {
            let prev = self.rows.last().unwrap();
            let len = prev.len() + 1;
            let row = (0..len)
                .map(|j| {
                    let left = if j > 0 { prev[j - 1].clone() } else { QtPoly::zero() };
                    let right = match prev.get(j) {
                        Some(p) => &QtPoly::qt(j as u32, 0) * p,
                        None => QtPoly::zero(),
                    };
                    left + right
                })
                .collect();
            self.rows.push(row);
        }
        self.rows[n][k as usize].clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> QtPoly {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_text() {
        let poly = QtPoly::one() + QtPoly::qt(2, 1).scale(&2.into()) - QtPoly::qt(3, 0).scale(&Rational::half());
        assert_eq!(poly.to_string(), "1 + 2*q^2*t - 1/2*q^3");
        assert_eq!(QtPoly::zero().to_string(), "0");
        assert_eq!((-QtPoly::q()).to_string(), "-q");
        assert_eq!(QtPoly::from(-3).to_string(), "-3");
        assert_eq!(p("t*q").to_string(), "q*t");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "1", "-1/2", "1 + 2*q^2*t - 1/2*q^3", "-t + q", "-q*t^3 + 5/3*q^7*t^2", "1 + 2*t + t^2"] {
            assert_eq!(p(s).to_string(), s);
        }
    }

    #[test]
    fn lenient_parse_combines_terms() {
        assert_eq!(p("(1+t)^2"), p("1 + 2*t + t^2"));
        assert_eq!(p("q + q - 2*q"), QtPoly::zero());
        assert_eq!(p(" 3/6 * q ^ 2 "), p("1/2*q^2"));
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(matches!("q^-1".parse::<QtPoly>(), Err(Error::NegativeExponent(_))));
        for s in ["", "x", "1 +", "(q", "q t", "1/0"] {
            assert!(s.parse::<QtPoly>().is_err(), "{s}");
        }
    }

    #[test]
    fn qint_values() {
        assert_eq!(qint(0), QtPoly::zero());
        assert_eq!(qint(1), QtPoly::one());
        // (1 - q^3) = (1 - q)(1 + q + q^2)
        assert_eq!(&qint(3) * &p("1 - q"), p("1 - q^3"));
    }

    #[test]
    fn qbinomial_values() {
        assert_eq!(qbinomial(5, 0), QtPoly::one());
        assert_eq!(qbinomial(2, 3), QtPoly::zero());
        assert_eq!(qbinomial(-1, 0), QtPoly::zero());
        assert_eq!(qbinomial(4, 2), p("1 + q + 2*q^2 + q^3 + q^4"));
    }

    #[test]
    fn qbinomial_counts_partitions_in_a_box() {
        // [a+b choose b]_q = sum over partitions with at most b parts, each at most a.
        fn box_gf(a: u32, b: u32) -> QtPoly {
            fn rec(parts_left: u32, max: u32, size: u32, out: &mut QtPoly) {
                *out += QtPoly::qt(size, 0);
                if parts_left == 0 {
                    return;
                }
                for part in 1..=max {
                    rec(parts_left - 1, part, size + part, out);
                }
            }
            let mut out = QtPoly::zero();
            rec(b, a, 0, &mut out);
            out
        }
        for a in 0..5 {
            for b in 0..5 {
                assert_eq!(qbinomial((a + b) as i64, b as i64), box_gf(a, b), "{a} {b}");
            }
        }
    }

    #[test]
    fn substitution() {
        let sq = QtPoly::qt(2, 0);
        assert_eq!(p("t*q").substitute(&QtPoly::q(), &QtPoly::q()), p("q^2"));
        assert_eq!(p("t").substitute(&sq, &QtPoly::q()), p("q"));
        assert_eq!(p("1 + q*t").substitute(&sq, &QtPoly::q()), p("1 + q^3"));
    }

    #[test]
    fn evaluation() {
        let x = p("1 + 2*q^2*t - 1/2*q^3");
        assert_eq!(x.evaluate(&2.into(), &3.into()), Rational::from(21));
    }
}
