//! Regular continued fractions: finite, eventually periodic, and lazy
//! quotient streams.
//!
//! Conventions: the first partial quotient may be any integer, all later
//! quotients are >= 1. A canonical finite CF never ends in 1 unless it is the
//! single term `[n]`; the alternate representation ending in 1 is produced by
//! [`split_last`]. `Finite(vec![])` is the point at infinity.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::BigRational;
use crate::surd::{QuadSurd, Value};
use crate::{Error, Result};

/// Eventually periodic continued fraction `[head; (period)]`, canonical:
/// the period is nonempty, minimal under cyclic shift, and not absorbable
/// into the head.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PeriodicCf {
    head: Vec<BigInt>,
    period: Vec<BigInt>,
}

impl PeriodicCf {
    pub fn new(head: Vec<BigInt>, period: Vec<BigInt>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::Domain("empty period".to_string()));
        }
        for (i, a) in head.iter().enumerate() {
            if i > 0 && a < &BigInt::one() {
                return Err(Error::Domain("head quotient < 1 after the first".to_string()));
            }
        }
        if period.iter().any(|a| a < &BigInt::one()) {
            return Err(Error::Domain("period quotient < 1".to_string()));
        }
        let mut cf = PeriodicCf { head, period };
        cf.canonicalize();
        Ok(cf)
    }

    pub fn from_i64(head: &[i64], period: &[i64]) -> Result<Self> {
        Self::new(
            head.iter().map(|&a| BigInt::from(a)).collect(),
            period.iter().map(|&a| BigInt::from(a)).collect(),
        )
    }

    pub fn head(&self) -> &[BigInt] {
        &self.head
    }

    pub fn period(&self) -> &[BigInt] {
        &self.period
    }

    fn canonicalize(&mut self) {
        // absorb: [.. h; (p1 .. pk)] with h == pk equals [..; (pk p1 .. p_{k-1})]
        while let Some(last) = self.head.last() {
            if last == self.period.last().unwrap() {
                self.head.pop();
                let p = self.period.pop().unwrap();
                self.period.insert(0, p);
            } else {
                break;
            }
        }
        // minimal period under repetition
        let n = self.period.len();
        for len in 1..n {
            if n % len == 0 && (len..n).all(|i| self.period[i] == self.period[i % len]) {
                self.period.truncate(len);
                break;
            }
        }
    }

    /// Infinite quotient iterator.
    pub fn digits(&self) -> impl Iterator<Item = BigInt> + '_ {
        self.head.iter().cloned().chain(self.period.iter().cycle().cloned())
    }

    /// Noble numbers are exactly the CF with all-ones tail.
    pub fn is_noble(&self) -> bool {
        self.period == [BigInt::one()]
    }

    /// Drop the first quotient (Gauss shift on `[0; ...]` style values is
    /// built from this). Requires a value with at least one head digit or
    /// rolls the period.
    pub fn shift(&self) -> PeriodicCf {
        if self.head.is_empty() {
            let mut period = self.period.clone();
            let first = period.remove(0);
            period.push(first);
            PeriodicCf::new(vec![], period).unwrap()
        } else {
            PeriodicCf::new(self.head[1..].to_vec(), self.period.clone()).unwrap()
        }
    }

    pub fn first(&self) -> &BigInt {
        self.head.first().unwrap_or(&self.period[0])
    }
}

impl fmt::Display for PeriodicCf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.head.iter().enumerate() {
            if i == 0 {
                write!(f, "{a};")?;
            } else {
                write!(f, "{a},")?;
            }
        }
        write!(f, "(")?;
        for (i, a) in self.period.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")]")
    }
}

impl fmt::Debug for PeriodicCf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// One value in any of the three representations. `Finite(vec![])` is ∞.
pub enum ContinuedFraction {
    Finite(Vec<BigInt>),
    Periodic(PeriodicCf),
    Stream(Box<dyn Iterator<Item = BigInt>>),
}

impl ContinuedFraction {
    pub fn finite_i64(digits: &[i64]) -> Self {
        ContinuedFraction::Finite(digits.iter().map(|&a| BigInt::from(a)).collect())
    }

    pub fn stream_of(it: impl Iterator<Item = BigInt> + 'static) -> Self {
        ContinuedFraction::Stream(Box::new(it))
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ContinuedFraction::Finite(v) if v.is_empty() => write!(f, "inf"),
            ContinuedFraction::Finite(v) => {
                write!(f, "[")?;
                for (i, a) in v.iter().enumerate() {
                    match i {
                        0 => write!(f, "{a}")?,
                        1 => write!(f, ";{a}")?,
                        _ => write!(f, ",{a}")?,
                    }
                }
                write!(f, "]")
            }
            ContinuedFraction::Periodic(p) => write!(f, "{p}"),
            ContinuedFraction::Stream(_) => write!(f, "[stream...]"),
        }
    }
}

impl fmt::Debug for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ContinuedFraction {
    type Err = Error;

    /// `[a0;a1,a2,...]` with the periodic part in parentheses: `[3;(3,6)]`,
    /// `[(2)]`, `[2]`, `inf`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t == "inf" {
            return Ok(ContinuedFraction::Finite(vec![]));
        }
        let bad = || {
            let mut m = String::from("bad continued-fraction literal: ");
            m.push_str(s);
            Error::Parse(m)
        };
        let inner = t.strip_prefix('[').and_then(|u| u.strip_suffix(']')).ok_or_else(bad)?;
        let (head_str, per_str) = match inner.find('(') {
            Some(i) => {
                let per = inner[i..].strip_prefix('(').unwrap().strip_suffix(')').ok_or_else(bad)?;
                (inner[..i].trim_end_matches([';', ',']), Some(per))
            }
            None => (inner, None),
        };
        let parse_list = |u: &str| -> Result<Vec<BigInt>> {
            if u.is_empty() {
                return Ok(vec![]);
            }
            u.replace(';', ",")
                .split(',')
                .map(|x| BigInt::from_str(x).map_err(|_| bad()))
                .collect()
        };
        let head = parse_list(head_str)?;
        match per_str {
            None => Ok(ContinuedFraction::Finite(head)),
            Some(p) => {
                let period = parse_list(p)?;
                Ok(ContinuedFraction::Periodic(PeriodicCf::new(head, period)?))
            }
        }
    }
}

/// Euclidean expansion; canonical form (last quotient >= 2 unless `[n]`).
pub fn rational_to_cf(q: &BigRational) -> Result<Vec<BigInt>> {
    if q.is_infinite() {
        return Err(Error::InfiniteInput);
    }
    let mut out = Vec::new();
    let mut cur = q.clone();
    loop {
        let a = cur.floor();
        out.push(a.clone());
        let frac = &cur - &BigRational::from_int(a);
        if frac.is_zero() {
            break;
        }
        cur = frac.recip();
    }
    // floor-based expansion only ends in 1 for the value 1 itself at the tail
    if out.len() > 1 && out.last().unwrap().is_one() {
        out.pop();
        let last = out.last_mut().unwrap();
        *last += 1;
    }
    Ok(out)
}

/// Exact value of a finite CF; `[]` is ∞.
pub fn cf_to_rational(digits: &[BigInt]) -> BigRational {
    let mut v = BigRational::infinity();
    for a in digits.iter().rev() {
        // a + 1/v, projectively
        v = &BigRational::from_int(a.clone()) + &v.recip();
    }
    v
}

/// The non-canonical twin `[..., n] -> [..., n-1, 1]`.
pub fn split_last(digits: &[BigInt]) -> Vec<BigInt> {
    assert!(!digits.is_empty(), "cannot split the empty CF");
    let mut out = digits.to_vec();
    let last = out.last_mut().unwrap();
    *last -= 1;
    out.push(BigInt::one());
    out
}

/// Exact partial-quotient stream of a quadratic surd
/// (state `(P + sqrt(D))/Q` with `Q | D - P^2`).
pub struct SurdDigits {
    p: BigInt,
    q: BigInt,
    d: BigInt,
}

impl SurdDigits {
    pub fn new(x: &QuadSurd) -> Self {
        let (mut p, mut q, mut d) = if x.q().is_positive() {
            (x.p().clone(), x.r().clone(), x.q() * x.q() * x.d())
        } else {
            (-x.p(), -x.r(), x.q() * x.q() * x.d())
        };
        let rem = (&d - &p * &p) % &q;
        if !rem.is_zero() {
            let f = q.abs();
            p *= &f;
            d *= &f * &f;
            q *= f;
        }
        SurdDigits { p, q, d }
    }

    fn state(&self) -> (BigInt, BigInt) {
        (self.p.clone(), self.q.clone())
    }
}

impl Iterator for SurdDigits {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        let a = floor_pqd(&self.p, &self.q, &self.d);
        let p1 = &a * &self.q - &self.p;
        let q1 = (&self.d - &p1 * &p1) / &self.q;
        self.p = p1;
        self.q = q1;
        Some(a)
    }
}

/// Exact floor of `(P + sqrt(D))/Q`, `D` positive non-square, `Q != 0`.
fn floor_pqd(p: &BigInt, q: &BigInt, d: &BigInt) -> BigInt {
    let s = d.sqrt(); // floor(sqrt(D)), strict since D non-square
    let mut n = if q.is_positive() {
        (p + &s).div_floor(q)
    } else {
        (p + &s + 1u8).div_floor(q)
    };
    // verify n <= v < n+1 exactly: sign(v - t) = sign(P - tQ + sqrt(D)) * sign(Q)
    let ge = |t: &BigInt| {
        let a = p - t * q;
        let sgn = crate::surd::sign_of_a_plus_sqrt(&a, d);
        if q.is_positive() {
            sgn != Ordering::Less
        } else {
            sgn != Ordering::Greater
        }
    };
    while !ge(&n) {
        n -= 1;
    }
    while ge(&(&n + 1u8)) {
        n += 1;
    }
    n
}

/// Lagrange: the expansion of a quadratic surd is eventually periodic.
/// Detects the cycle on the `(P, Q)` digit state.
pub fn surd_to_periodic_cf(x: &QuadSurd) -> PeriodicCf {
    let mut gen = SurdDigits::new(x);
    let mut seen: BTreeMap<(BigInt, BigInt), usize> = BTreeMap::new();
    let mut digits: Vec<BigInt> = Vec::new();
    // Lagrange bound: states satisfy |P| <= sqrt(D), 0 < |Q| <= 2 sqrt(D)
    // once reduced, so the cycle closes within O(D) steps; the reduction
    // prefix is logarithmic in the starting coefficients.
    let bound = 10_000_000usize;
    for i in 0..bound {
        let key = gen.state();
        if let Some(&j) = seen.get(&key) {
            let head = digits[..j].to_vec();
            let period = digits[j..].to_vec();
            return PeriodicCf::new(head, period).unwrap();
        }
        seen.insert(key, i);
        digits.push(gen.next().unwrap());
    }
    unreachable!("period not detected within the discriminant bound");
}

/// Value of `[head; (period)]`: the attracting fixed point of the period's
/// Möbius matrix, pushed through the head.
pub fn periodic_cf_to_surd(cf: &PeriodicCf) -> Result<QuadSurd> {
    // period matrix [[p1,1],[1,0]] [[p2,1],[1,0]] ... in digit order
    let (mut a, mut b, mut c, mut d) =
        (BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one());
    for n in cf.period() {
        let na = &a * n + &b;
        let nc = &c * n + &d;
        b = a;
        d = c;
        a = na;
        c = nc;
    }
    // fixed point: C z^2 + (D - A) z - B = 0
    let det: BigInt = &a * &d - &b * &c;
    let tr: BigInt = &a + &d;
    let disc: BigInt = &tr * &tr - (det << 2);
    if disc <= BigInt::zero() || {
        let s = disc.sqrt();
        &s * &s == disc
    } {
        return Err(Error::NotHyperbolic("period matrix is elliptic or parabolic".to_string()));
    }
    let two_c: BigInt = &c << 1;
    let root = |sign: i8| QuadSurd::new(&a - &d, sign, disc.clone(), two_c.clone()).unwrap();
    let attracting = |z: &QuadSurd| {
        // |C z + D| > 1  <=>  |period-map derivative| < 1 at z
        let w = z.mul_rational(&BigRational::from_int(c.clone())).unwrap();
        let w = w.add_rational(&BigRational::from_int(d.clone()));
        w.cmp_rational(&BigRational::one()) == Ordering::Greater
            || w.cmp_rational(&BigRational::from_int(-1)) == Ordering::Less
    };
    let plus = root(1);
    let z = if attracting(&plus) { plus } else { root(-1) };
    debug_assert!(attracting(&z));
    // push through the head: v = h + 1/v, right to left
    let mut v = z;
    for h in cf.head().iter().rev() {
        v = v.recip().add_rational(&BigRational::from_int(h.clone()));
    }
    Ok(v)
}

/// Exact value of any non-stream CF.
pub fn cf_value(cf: &ContinuedFraction) -> Result<Value> {
    match cf {
        ContinuedFraction::Finite(v) => Ok(Value::Rational(cf_to_rational(v))),
        ContinuedFraction::Periodic(p) => Ok(Value::Surd(periodic_cf_to_surd(p)?)),
        ContinuedFraction::Stream(_) => {
            Err(Error::Domain("streams have no exact closed value".to_string()))
        }
    }
}

/// Enclosing interval of all reals `[digits..., t]` with tail `t ∈ (1, ∞)`;
/// this is how certified stream prefixes turn into decimal digits.
pub fn cf_prefix_interval(digits: &[BigInt]) -> (BigRational, BigRational) {
    assert!(!digits.is_empty());
    let (mut pk1, mut qk1) = (BigInt::one(), BigInt::zero());
    let (mut pk, mut qk) = (digits[0].clone(), BigInt::one());
    for a in &digits[1..] {
        let (np, nq) = (a * &pk + &pk1, a * &qk + &qk1);
        pk1 = pk;
        qk1 = qk;
        pk = np;
        qk = nq;
    }
    let end1 = BigRational::new(&pk + &pk1, &qk + &qk1);
    let end2 = BigRational::new(pk, qk);
    if end1 <= end2 {
        (end1, end2)
    } else {
        (end2, end1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> BigRational {
        s.parse().unwrap()
    }

    #[test]
    fn rational_expansion_goldens() {
        assert_eq!(rational_to_cf(&q("22/7")).unwrap(), vec![3.into(), 7.into()]);
        assert_eq!(rational_to_cf(&q("5/2")).unwrap(), vec![2.into(), 2.into()]);
        assert_eq!(rational_to_cf(&q("2")).unwrap(), vec![2.into()]);
        assert!(rational_to_cf(&BigRational::infinity()).is_err());
    }

    #[test]
    fn negative_expansion_reevaluates() {
        // all tail quotients >= 1, value recovered exactly
        let v = q("-3/8");
        let cf = rational_to_cf(&v).unwrap();
        assert!(cf[1..].iter().all(|a| a >= &BigInt::one()));
        assert!(*cf.last().unwrap() >= 2.into());
        assert_eq!(cf_to_rational(&cf), v);
    }

    #[test]
    fn finite_value_goldens() {
        let cf: Vec<BigInt> = vec![3.into(), 7.into(), 15.into(), 1.into()];
        assert_eq!(cf_to_rational(&cf), q("355/113"));
        assert_eq!(cf_to_rational(&[2.into()]), q("2"));
        // Fibonacci convergents of [1,1,1,1,1] = F_6/F_5
        let ones: Vec<BigInt> = vec![BigInt::one(); 5];
        assert_eq!(cf_to_rational(&ones), q("8/5"));
        assert!(cf_to_rational(&[]).is_infinite());
    }

    #[test]
    fn split_last_twin() {
        let cf = rational_to_cf(&q("2")).unwrap();
        let twin = split_last(&cf);
        assert_eq!(twin, vec![BigInt::from(1), BigInt::from(1)]);
        assert_eq!(cf_to_rational(&twin), q("2"));
    }

    #[test]
    fn surd_expansion_goldens() {
        let sqrt11 = QuadSurd::sqrt_of(11).unwrap();
        assert_eq!(surd_to_periodic_cf(&sqrt11), PeriodicCf::from_i64(&[3], &[3, 6]).unwrap());
        let phi = QuadSurd::phi();
        assert_eq!(surd_to_periodic_cf(&phi), PeriodicCf::from_i64(&[], &[1]).unwrap());
        // (3+5 sqrt 2)/7 = [1;(2,3,1,1,2,1,1,1)]
        let x = QuadSurd::new(3, 5, 2, 7).unwrap();
        assert_eq!(
            surd_to_periodic_cf(&x),
            PeriodicCf::from_i64(&[1], &[2, 3, 1, 1, 2, 1, 1, 1]).unwrap()
        );
    }

    #[test]
    fn periodic_value_goldens() {
        // [(2)] = 1 + sqrt 2
        let v = periodic_cf_to_surd(&PeriodicCf::from_i64(&[], &[2]).unwrap()).unwrap();
        assert_eq!(v, QuadSurd::new(1, 1, 2, 1).unwrap());
        // [2;(2,1,4,5)] = (-3 + 2 sqrt 95)/7... the paper's example is the
        // image of (3+5sqrt2)/7, whose CF is [2,(2,1,4,5)]
        let v = periodic_cf_to_surd(&PeriodicCf::from_i64(&[2], &[2, 1, 4, 5]).unwrap()).unwrap();
        assert_eq!(v, QuadSurd::new(-3, 2, 95, 7).unwrap());
        // [0;(1)] = 1/phi
        let v = periodic_cf_to_surd(&PeriodicCf::from_i64(&[0], &[1]).unwrap()).unwrap();
        assert_eq!(v, QuadSurd::new(-1, 1, 5, 2).unwrap());
    }

    #[test]
    fn canonical_period_rules() {
        // [2;(2)] rolls into [(2)]
        let a = PeriodicCf::from_i64(&[2], &[2]).unwrap();
        assert_eq!(a, PeriodicCf::from_i64(&[], &[2]).unwrap());
        // period (2,1,2,1) minimizes to (2,1)
        let b = PeriodicCf::from_i64(&[3], &[2, 1, 2, 1]).unwrap();
        assert_eq!(b.period().len(), 2);
        // [1;(2,3)] vs [1,2;(3,2)] are equal after absorption
        let c = PeriodicCf::from_i64(&[1, 2], &[3, 2]).unwrap();
        assert_eq!(c, PeriodicCf::from_i64(&[1], &[2, 3]).unwrap());
    }

    #[test]
    fn parse_display() {
        for s in ["[3;(3,6)]", "[(1)]", "[2;(2,1,4,5)]", "[3;7,15,1]", "[2]", "inf"] {
            let cf: ContinuedFraction = s.parse().unwrap();
            assert_eq!(cf.to_string(), s, "roundtrip {s}");
        }
    }

    #[test]
    fn stream_digits_match_periodic() {
        let x = QuadSurd::new(3, 5, 2, 7).unwrap();
        let per = surd_to_periodic_cf(&x);
        let direct: Vec<BigInt> = SurdDigits::new(&x).take(30).collect();
        let unrolled: Vec<BigInt> = per.digits().take(30).collect();
        assert_eq!(direct, unrolled);
    }

    #[test]
    fn prefix_interval_brackets() {
        let digits: Vec<BigInt> = vec![1.into(), 2.into(), 2.into()];
        let (lo, hi) = cf_prefix_interval(&digits);
        // sqrt(2) = [1;2,2,2...] lies strictly inside
        let r2 = QuadSurd::sqrt_of(2).unwrap();
        assert_eq!(r2.cmp_rational(&lo), Ordering::Greater);
        assert_eq!(r2.cmp_rational(&hi), Ordering::Less);
    }

    use core::cmp::Ordering;
}
