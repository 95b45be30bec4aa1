//! The boundary of the Farey tree as binary turn words.
//!
//! A word records the L/L² turns of an end: bit 0 for L, bit 1 for L².
//! Positive reals are plain words; negatives carry the `S` prefix over the
//! word of `-1/x`. Quotient runs and bits correspond by
//! `[n0, n1, n2, ...] <-> 0^{n0} 1^{n1} 0^{n2} ...`, and for any finite
//! string `a` the two words `a 0 1^ω` and `a 1 0^ω` are the same real
//! number (the relation ~*).

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cf::{
    cf_to_rational, rational_to_cf, split_last, surd_to_periodic_cf, ContinuedFraction,
    PeriodicCf,
};
use crate::rational::BigRational;
use crate::surd::Value;
use crate::{Error, Result};

/// Tail of an eventually periodic binary word. `Zeros`/`Ones` mark the
/// rational-type words.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Tail {
    Zeros,
    Ones,
    Periodic(Vec<bool>),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoundaryWord {
    s_prefix: bool,
    head: Vec<bool>,
    tail: Tail,
}

impl BoundaryWord {
    pub fn new(s_prefix: bool, head: Vec<bool>, tail: Tail) -> Self {
        let mut w = BoundaryWord { s_prefix, head, tail };
        w.canonicalize();
        w
    }

    /// The golden word φ = (01)^ω, the XOR mask of the involution.
    pub fn golden() -> Self {
        BoundaryWord::new(false, vec![], Tail::Periodic(vec![false, true]))
    }

    /// φ* = ¬φ = (10)^ω, the mask used under the S prefix.
    pub fn golden_star() -> Self {
        BoundaryWord::new(false, vec![], Tail::Periodic(vec![true, false]))
    }

    pub fn s_prefix(&self) -> bool {
        self.s_prefix
    }

    pub fn head(&self) -> &[bool] {
        &self.head
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    /// Rational-type words are the eventually constant ones.
    pub fn is_rational_type(&self) -> bool {
        !matches!(self.tail, Tail::Periodic(_))
    }

    /// Words with the golden tail (01)^ω or (10)^ω: the noble numbers.
    pub fn is_noble_type(&self) -> bool {
        match &self.tail {
            Tail::Periodic(p) => p == &[false, true] || p == &[true, false],
            _ => false,
        }
    }

    fn canonicalize(&mut self) {
        match &mut self.tail {
            Tail::Periodic(p) => {
                assert!(!p.is_empty(), "empty word period");
                if p.iter().all(|&b| b) {
                    self.tail = Tail::Ones;
                    return self.canonicalize();
                }
                if p.iter().all(|&b| !b) {
                    self.tail = Tail::Zeros;
                    return self.canonicalize();
                }
                let n = p.len();
                for len in 1..n {
                    if n % len == 0 && (len..n).all(|i| p[i] == p[i % len]) {
                        p.truncate(len);
                        break;
                    }
                }
                while let Some(&last) = self.head.last() {
                    if last == *p.last().unwrap() {
                        self.head.pop();
                        let b = p.pop().unwrap();
                        p.insert(0, b);
                    } else {
                        break;
                    }
                }
            }
            Tail::Zeros => {
                while self.head.last() == Some(&false) {
                    self.head.pop();
                }
            }
            Tail::Ones => {
                while self.head.last() == Some(&true) {
                    self.head.pop();
                }
            }
        }
    }

    /// Bit at position `i` of the unsigned part.
    pub fn bit(&self, i: usize) -> bool {
        if i < self.head.len() {
            return self.head[i];
        }
        match &self.tail {
            Tail::Zeros => false,
            Tail::Ones => true,
            Tail::Periodic(p) => p[(i - self.head.len()) % p.len()],
        }
    }

    fn period_len(&self) -> usize {
        match &self.tail {
            Tail::Periodic(p) => p.len(),
            _ => 1,
        }
    }

    /// Term-wise XOR of the unsigned parts; the sign prefix must be handled
    /// by the caller (the involution XORs with φ or φ* depending on it).
    pub fn xor(&self, other: &Self) -> Self {
        let h = self.head.len().max(other.head.len());
        let p = self.period_len().lcm(&other.period_len());
        let head: Vec<bool> = (0..h).map(|i| self.bit(i) ^ other.bit(i)).collect();
        let period: Vec<bool> = (h..h + p).map(|i| self.bit(i) ^ other.bit(i)).collect();
        BoundaryWord::new(self.s_prefix, head, Tail::Periodic(period))
    }

    /// Term-wise negation of the unsigned part (the operation `U = 1/x`).
    pub fn negate_bits(&self) -> Self {
        let head = self.head.iter().map(|b| !b).collect();
        let tail = match &self.tail {
            Tail::Zeros => Tail::Ones,
            Tail::Ones => Tail::Zeros,
            Tail::Periodic(p) => Tail::Periodic(p.iter().map(|b| !b).collect()),
        };
        BoundaryWord::new(self.s_prefix, head, tail)
    }

    pub fn with_s_prefix(&self, s: bool) -> Self {
        let mut w = self.clone();
        w.s_prefix = s;
        w
    }

    /// Total order of the reals the words denote: positive sector by
    /// lexicographic order with 0 above 1 (an earlier L-turn means larger),
    /// S-words below plain words, and `x -> -1/x` increasing behind S.
    pub fn cmp_real(&self, other: &Self) -> Ordering {
        match (self.s_prefix, other.s_prefix) {
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let lim =
            self.head.len().max(other.head.len()) + self.period_len() * other.period_len() + 2;
        for i in 0..lim {
            let (a, b) = (self.bit(i), other.bit(i));
            if a != b {
                return if a { Ordering::Less } else { Ordering::Greater };
            }
        }
        Ordering::Equal
    }
}

impl fmt::Display for BoundaryWord {
    /// Literal syntax: `0110(01)`, `-` for the S prefix, `0...`/`1...` for
    /// the constant tails.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.s_prefix {
            write!(f, "-")?;
        }
        for &b in &self.head {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        match &self.tail {
            Tail::Zeros => write!(f, "0..."),
            Tail::Ones => write!(f, "1..."),
            Tail::Periodic(p) => {
                write!(f, "(")?;
                for &b in p {
                    write!(f, "{}", if b { '1' } else { '0' })?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Debug for BoundaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for BoundaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || {
            let mut m = String::from("bad word literal: ");
            m.push_str(s);
            Error::Parse(m)
        };
        let (sp, rest) = match t.strip_prefix('-') {
            Some(r) => (true, r),
            None => (false, t.as_str()),
        };
        let parse_bits = |u: &str| -> Result<Vec<bool>> {
            u.chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(bad()),
                })
                .collect()
        };
        if let Some(head) = rest.strip_suffix("0...") {
            return Ok(BoundaryWord::new(sp, parse_bits(head)?, Tail::Zeros));
        }
        if let Some(head) = rest.strip_suffix("1...") {
            return Ok(BoundaryWord::new(sp, parse_bits(head)?, Tail::Ones));
        }
        match rest.find('(') {
            Some(i) => {
                let per = rest[i..].strip_prefix('(').unwrap().strip_suffix(')').ok_or_else(bad)?;
                let period = parse_bits(per)?;
                if period.is_empty() {
                    return Err(bad());
                }
                Ok(BoundaryWord::new(sp, parse_bits(&rest[..i])?, Tail::Periodic(period)))
            }
            None => Err(bad()),
        }
    }
}

/// Farey interval: endpoints `p/q`, `r/s` with `|ps - qr| = 1`
/// (`hi` may be ∞ in the positive sector).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FareyInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl FareyInterval {
    pub fn contains_value(&self, x: &Value) -> bool {
        let lo = Value::Rational(self.lo.clone());
        let hi = Value::Rational(self.hi.clone());
        x.cmp_value(&lo) != Ordering::Less && x.cmp_value(&hi) != Ordering::Greater
    }

    pub fn is_unimodular(&self) -> bool {
        let (p, q) = (self.lo.num(), self.lo.den());
        let (r, s) = (self.hi.num(), self.hi.den());
        (p * s - q * r).abs().is_one()
    }
}

/// The cylinder of all nonnegative reals whose word starts with `prefix`:
/// the image of `[0, ∞]` under the prefix's Möbius map (0-bit acts by
/// `x+1`, 1-bit by `x/(x+1)`).
pub fn interval_of_prefix(prefix: &[bool]) -> FareyInterval {
    // W = product of [[1,1],[0,1]] and [[1,0],[1,1]]
    let (mut a, mut b, mut c, mut d) =
        (BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one());
    for &bit in prefix {
        if bit {
            // W * [[1,0],[1,1]] adds the second column into the first
            a += &b;
            c += &d;
        } else {
            // W * [[1,1],[0,1]] adds the first column into the second
            b += &a;
            d += &c;
        }
    }
    let w_inf = BigRational::new(a, c);
    let w_zero = BigRational::new(b, d);
    if w_zero <= w_inf {
        FareyInterval { lo: w_zero, hi: w_inf }
    } else {
        FareyInterval { lo: w_inf, hi: w_zero }
    }
}

/// Run-length encode a quotient list into bits: digit `i` is a run of
/// `i`-parity bits.
fn runs_to_bits(digits: &[BigInt]) -> Vec<bool> {
    let mut bits = Vec::new();
    for (i, n) in digits.iter().enumerate() {
        let b = i % 2 == 1;
        let len = n.to_usize().expect("quotient too large for an explicit word");
        bits.extend(core::iter::repeat(b).take(len));
    }
    bits
}

/// The continued fraction map `cfm` read backwards: CF to boundary word.
/// Finite CFs produce the `a·0·1^ω` representative.
pub fn cf_to_word(cf: &ContinuedFraction) -> Result<BoundaryWord> {
    match cf {
        ContinuedFraction::Finite(digits) => {
            let v = cf_to_rational(digits);
            Ok(rational_word_default(&v))
        }
        ContinuedFraction::Periodic(p) => Ok(periodic_word(p)),
        ContinuedFraction::Stream(_) => {
            Err(Error::Domain("streams are rewritten digit-wise, not via words".to_string()))
        }
    }
}

/// Word of a periodic CF (an irrational, so the word is unique).
pub fn periodic_word(cf: &PeriodicCf) -> BoundaryWord {
    if cf.first() < &BigInt::zero() {
        // negative value: S prefix over the word of -1/x
        let x = crate::cf::periodic_cf_to_surd(cf).expect("periodic CF is a surd");
        let m = x.recip().neg();
        return periodic_word(&surd_to_periodic_cf(&m)).with_s_prefix(true);
    }
    let head_bits = runs_to_bits(cf.head());
    // one lap of the period flips run parity iff its length is odd
    let odd_lap = cf.period().len() % 2 == 1;
    let mut parity = cf.head().len() % 2 == 1;
    let mut period_bits = Vec::new();
    let laps = if odd_lap { 2 } else { 1 };
    for _ in 0..laps {
        for n in cf.period() {
            let len = n.to_usize().expect("quotient too large for an explicit word");
            period_bits.extend(core::iter::repeat(parity).take(len));
            parity = !parity;
        }
    }
    BoundaryWord::new(false, head_bits, Tail::Periodic(period_bits))
}

/// Default rational-type word (the `a·0·1^ω` pick) of a finite value.
pub fn rational_word_default(v: &BigRational) -> BoundaryWord {
    if v.is_infinite() {
        return BoundaryWord::new(false, vec![], Tail::Zeros);
    }
    if v.is_zero() {
        return BoundaryWord::new(false, vec![], Tail::Ones);
    }
    if v.is_negative() {
        let m = -&v.recip();
        return rational_word_default(&m).with_s_prefix(true);
    }
    let mut cf = rational_to_cf(v).expect("finite");
    // pick the representative whose trailing infinite run is the 1-run:
    // after runs n0..n_{l-1} the constant tail has the parity of l
    if cf.len() % 2 == 0 {
        cf = split_last(&cf);
    }
    BoundaryWord::new(false, runs_to_bits(&cf), Tail::Ones)
}

/// Run-length decode; both ~*-equivalent rational-type words give the same
/// canonical finite CF.
pub fn word_to_cf(w: &BoundaryWord) -> Result<ContinuedFraction> {
    if w.s_prefix {
        let unsigned = w.with_s_prefix(false);
        return match word_to_cf(&unsigned)? {
            ContinuedFraction::Finite(digits) => {
                let v = cf_to_rational(&digits);
                if v.is_zero() {
                    // S 1^ω is the other word of ∞
                    return Ok(ContinuedFraction::Finite(vec![]));
                }
                let m = -&v.recip();
                Ok(ContinuedFraction::Finite(rational_to_cf(&m)?))
            }
            ContinuedFraction::Periodic(p) => {
                let x = crate::cf::periodic_cf_to_surd(&p)?;
                Ok(ContinuedFraction::Periodic(surd_to_periodic_cf(&x.recip().neg())))
            }
            ContinuedFraction::Stream(_) => unreachable!(),
        };
    }
    match &w.tail {
        Tail::Zeros | Tail::Ones => {
            // only the complete runs of the head count; the infinite
            // constant run is the [..., ∞] cut
            let mut digits = complete_runs(&w.head);
            if w.head.is_empty() && matches!(w.tail, Tail::Ones) {
                // 1^ω has a leading zero-length 0-run: the value 0
                digits.push(BigInt::zero());
            }
            let v = cf_to_rational(&digits);
            if v.is_infinite() {
                return Ok(ContinuedFraction::Finite(vec![]));
            }
            Ok(ContinuedFraction::Finite(rational_to_cf(&v)?))
        }
        Tail::Periodic(p) => {
            // scan runs; cycle on (offset within the word period, run bit)
            // at run starts past the head
            let mut digits: Vec<BigInt> = Vec::new();
            let mut seen: Vec<(usize, bool, usize)> = Vec::new();
            let mut pos = 0usize;
            let mut bit = false; // runs alternate starting with the 0-run
            loop {
                if pos >= w.head.len() {
                    let off = (pos - w.head.len()) % p.len();
                    if let Some(&(_, _, j)) = seen.iter().find(|&&(o, b, _)| o == off && b == bit)
                    {
                        let head = digits[..j].to_vec();
                        let period = digits[j..].to_vec();
                        return Ok(ContinuedFraction::Periodic(PeriodicCf::new(head, period)?));
                    }
                    seen.push((off, bit, digits.len()));
                }
                let mut len = 0usize;
                while w.bit(pos) == bit {
                    len += 1;
                    pos += 1;
                }
                digits.push(BigInt::from(len));
                bit = !bit;
            }
        }
    }
}

/// Exact value of the real a word denotes.
pub fn word_value(w: &BoundaryWord) -> Result<Value> {
    crate::cf::cf_value(&word_to_cf(w)?)
}

fn complete_runs(head: &[bool]) -> Vec<BigInt> {
    let mut digits = Vec::new();
    let mut bit = false;
    let mut i = 0;
    while i < head.len() {
        let mut len = 0usize;
        while i < head.len() && head[i] == bit {
            len += 1;
            i += 1;
        }
        digits.push(BigInt::from(len));
        bit = !bit;
    }
    // a canonical head never ends with the tail's constant bit, so every
    // counted run is complete
    digits
}

/// The two ~*-equivalent words of a rational, ordered
/// (approach-from-below, approach-from-above). Classification is exact: a
/// prefix reaching into the constant tail has `q` as one endpoint of its
/// Farey cylinder, and `q = sup` means the cylinder approximates from below.
pub fn rational_two_words(q: &BigRational) -> Result<(BoundaryWord, BoundaryWord)> {
    if q.is_infinite() {
        // footnote convention: 0^ω and S 1^ω
        return Ok((
            BoundaryWord::new(false, vec![], Tail::Zeros),
            BoundaryWord::new(true, vec![], Tail::Ones),
        ));
    }
    if q.is_zero() {
        // footnote convention: S 0^ω from below, 1^ω from above
        return Ok((
            BoundaryWord::new(true, vec![], Tail::Zeros),
            BoundaryWord::new(false, vec![], Tail::Ones),
        ));
    }
    if q.is_negative() {
        // x -> -1/x is increasing, so the pair maps componentwise
        let m = -&q.recip();
        let (below, above) = rational_two_words(&m)?;
        return Ok((below.with_s_prefix(true), above.with_s_prefix(true)));
    }
    let w1 = rational_word_default(q);
    // ~* twin: a·0·1^ω <-> a·1·0^ω (the canonical Ones-head ends in 0)
    debug_assert_eq!(w1.head.last(), Some(&false));
    let mut head2 = w1.head[..w1.head.len() - 1].to_vec();
    head2.push(true);
    let w2 = BoundaryWord::new(false, head2, Tail::Zeros);
    let from_below = |w: &BoundaryWord| -> bool {
        let tb = matches!(w.tail, Tail::Ones);
        let mut p = w.head.clone();
        p.push(tb);
        p.push(tb);
        let iv = interval_of_prefix(&p);
        if &iv.hi == q {
            true
        } else {
            assert_eq!(&iv.lo, q, "q must be a cylinder endpoint");
            false
        }
    };
    let (b1, b2) = (from_below(&w1), from_below(&w2));
    assert!(b1 != b2, "the two words must bracket q");
    if b1 {
        Ok((w1, w2))
    } else {
        Ok((w2, w1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::periodic_cf_to_surd;
    use crate::QuadSurd;

    fn w(s: &str) -> BoundaryWord {
        s.parse().unwrap()
    }

    #[test]
    fn golden_words() {
        assert_eq!(BoundaryWord::golden().negate_bits(), BoundaryWord::golden_star());
        assert_eq!(BoundaryWord::golden().to_string(), "(01)");
    }

    #[test]
    fn sqrt2_word_matches_table() {
        // sqrt2 = [1;(2)] -> 0 1 1 0 0 1 1 0 ...
        let cf = ContinuedFraction::Periodic(PeriodicCf::from_i64(&[1], &[2]).unwrap());
        let word = cf_to_word(&cf).unwrap();
        for (i, b) in [0, 1, 1, 0, 0, 1, 1, 0].iter().enumerate() {
            assert_eq!(word.bit(i), *b == 1, "bit {i}");
        }
        // phi = [(1)] -> 0 1 0 1 ...
        let phi = ContinuedFraction::Periodic(PeriodicCf::from_i64(&[], &[1]).unwrap());
        assert_eq!(cf_to_word(&phi).unwrap(), BoundaryWord::golden());
    }

    #[test]
    fn finite_word_default_pick() {
        // [2] -> 0 0 1^ω, equivalently 0 1 0^ω; both decode to [2]
        let two = ContinuedFraction::finite_i64(&[2]);
        let word = cf_to_word(&two).unwrap();
        assert_eq!(word, w("001..."));
        for cand in ["001...", "010..."] {
            match word_to_cf(&w(cand)).unwrap() {
                ContinuedFraction::Finite(d) => {
                    assert_eq!(cf_to_rational(&d), "2".parse().unwrap())
                }
                other => panic!("expected finite, got {other}"),
            }
        }
    }

    #[test]
    fn zero_and_infinity_words() {
        assert!(matches!(
            word_value(&w("0...")).unwrap(),
            Value::Rational(v) if v.is_infinite()
        ));
        assert!(matches!(
            word_value(&w("1...")).unwrap(),
            Value::Rational(v) if v.is_zero()
        ));
    }

    #[test]
    fn periodic_word_roundtrip() {
        // 0 0 1 1 0 0 1 1 ... = [2;(2)] = [(2)] = 1 + sqrt 2
        match word_to_cf(&w("(0011)")).unwrap() {
            ContinuedFraction::Periodic(p) => {
                assert_eq!(periodic_cf_to_surd(&p).unwrap(), QuadSurd::new(1, 1, 2, 1).unwrap());
            }
            other => panic!("expected periodic, got {other}"),
        }
    }

    #[test]
    fn xor_paper_example() {
        // (0011)^ω xor (01)^ω = 011(0011)^ω, which canonicalizes to (0110)^ω
        let out = w("(0011)").xor(&BoundaryWord::golden());
        assert_eq!(out, w("011(0011)"));
        assert_eq!(out, w("(0110)"));
    }

    #[test]
    fn xor_identity_and_involution() {
        let zero = BoundaryWord::new(false, vec![], Tail::Zeros);
        for s in ["(0011)", "01(001)", "0110(01)", "1..."] {
            let a = w(s);
            assert_eq!(a.xor(&zero), a, "xor with 0^ω");
            let twice = a.xor(&BoundaryWord::golden()).xor(&BoundaryWord::golden());
            assert_eq!(twice, a, "xor with φ twice");
            assert_eq!(a.xor(&a), zero, "w xor w");
        }
    }

    #[test]
    fn negative_word_has_s_prefix() {
        let v: BigRational = "-2".parse().unwrap();
        let word = rational_word_default(&v);
        assert!(word.s_prefix());
        // -1/(-2) = 1/2 = [0;2]: odd length, split to [0;1,1]: bits 101^ω
        assert_eq!(word, w("-101..."));
        match word_to_cf(&word).unwrap() {
            ContinuedFraction::Finite(d) => assert_eq!(cf_to_rational(&d), v),
            other => panic!("expected finite, got {other}"),
        }
    }

    #[test]
    fn interval_of_prefixes() {
        let empty = interval_of_prefix(&[]);
        assert_eq!(empty.lo, BigRational::zero());
        assert!(empty.hi.is_infinite());
        let p0 = interval_of_prefix(&[false]);
        assert_eq!(p0.lo, BigRational::one());
        assert!(p0.hi.is_infinite());
        let p01 = interval_of_prefix(&[false, true]);
        assert_eq!(p01.lo, BigRational::one());
        assert_eq!(p01.hi, "2".parse().unwrap());
        for bits in [&[true, true, false][..], &[false, true, true, false]] {
            assert!(interval_of_prefix(bits).is_unimodular());
        }
    }

    #[test]
    fn two_words_of_small_rationals() {
        let (below, above) = rational_two_words(&"2".parse().unwrap()).unwrap();
        assert_eq!(below, w("010..."));
        assert_eq!(above, w("001..."));
        let (below, above) = rational_two_words(&"1".parse().unwrap()).unwrap();
        assert_eq!(below, w("10..."));
        assert_eq!(above, w("01..."));
        // both members evaluate to the same rational
        for q in ["5/3", "22/7", "-3/8", "1/2"] {
            let v: BigRational = q.parse().unwrap();
            let (b, a) = rational_two_words(&v).unwrap();
            for word in [b, a] {
                match word_to_cf(&word).unwrap() {
                    ContinuedFraction::Finite(d) => assert_eq!(cf_to_rational(&d), v, "{q}"),
                    other => panic!("expected finite, got {other}"),
                }
            }
        }
    }

    #[test]
    fn word_order_matches_real_order() {
        let r2 = periodic_word(&PeriodicCf::from_i64(&[1], &[2]).unwrap());
        let phi = BoundaryWord::golden();
        assert_eq!(r2.cmp_real(&phi), Ordering::Less); // 1.41 < 1.61
        let r11 = periodic_word(&PeriodicCf::from_i64(&[3], &[3, 6]).unwrap());
        assert_eq!(r11.cmp_real(&r2), Ordering::Greater);
        let neg = r2.with_s_prefix(true);
        assert_eq!(neg.cmp_real(&r2), Ordering::Less);
    }
}
