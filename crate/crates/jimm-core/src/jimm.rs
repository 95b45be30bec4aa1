//! The involution itself, on every representation.
//!
//! Two independent computation routes exist and every surd evaluation runs
//! both and asserts agreement:
//!
//! * the quotient rewrite `[n0, n1, ...] -> [1_{n0-1}, 2, 1_{n1-2}, 2, ...]`
//!   with the eliminations `[..., m, 1_{-1}, n, ...] = [..., m+n-1, ...]` and
//!   `[..., m, 1_0, n, ...] = [..., m, n, ...]`, implemented as a streaming
//!   machine whose emitted digits are final;
//! * XOR of the boundary word with the golden word φ (φ* under the S
//!   prefix).
//!
//! Rationals are two-valued: `jump` exposes both one-sided limits. The
//! separate tree bijection on positive rationals (which is *not* the
//! restriction of the real involution) is `jimm_q_rational`.

use alloc::boxed::Box;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cf::{
    cf_to_rational, periodic_cf_to_surd, rational_to_cf, surd_to_periodic_cf, ContinuedFraction,
    PeriodicCf, SurdDigits,
};
use crate::fib::fib;
use crate::pgl2::{jimm_matrix, PGL2Mat};
use crate::rational::BigRational;
use crate::surd::{QuadSurd, Value};
use crate::word::{periodic_word, rational_two_words, word_value, BoundaryWord};
use crate::{Error, Result};

/// Result of applying the involution to an irrational: noble inputs
/// collapse to rationals (or ∞), everything else stays a surd.
pub type JimmValue = Value;

/// The streaming quotient rewrite. Digits are emitted only once final;
/// the trailing `pending` digit grows while the input runs through 1s.
pub struct RewriteMachine {
    pending: Option<BigInt>,
    started: bool,
}

impl Default for RewriteMachine {
    fn default() -> Self {
        Self::new()
    }
}

impl RewriteMachine {
    pub fn new() -> Self {
        RewriteMachine { pending: None, started: false }
    }

    /// Feed one quotient, collect the digits it finalizes.
    /// The first quotient must be >= 1, later ones >= 1.
    pub fn feed(&mut self, n: &BigInt) -> Vec<BigInt> {
        let mut out = Vec::new();
        if !self.started {
            assert!(n >= &BigInt::one(), "rewrite machine needs a value > 1");
            self.started = true;
            // head block 1_{n0 - 1}
            let reps = (n - 1u8).to_usize().expect("head quotient too large");
            out.extend(core::iter::repeat(BigInt::one()).take(reps));
            self.pending = Some(BigInt::from(2));
            return out;
        }
        assert!(n >= &BigInt::one(), "partial quotients after the first must be >= 1");
        let pending = self.pending.take().expect("machine started");
        if n.is_one() {
            // 1_{-1}: the two surrounding 2-blocks merge
            self.pending = Some(pending + 1u8);
        } else {
            out.push(pending);
            let reps = (n - 2u8).to_usize().expect("quotient too large");
            out.extend(core::iter::repeat(BigInt::one()).take(reps));
            self.pending = Some(BigInt::from(2));
        }
        out
    }

    pub fn pending(&self) -> Option<&BigInt> {
        self.pending.as_ref()
    }
}

/// The XOR form of the involution on boundary words:
/// `a -> a ⊕ φ` and `S a -> S (a ⊕ φ*)`.
pub fn jimm_word_image(w: &BoundaryWord) -> BoundaryWord {
    if w.s_prefix() {
        w.with_s_prefix(false).xor(&BoundaryWord::golden_star()).with_s_prefix(true)
    } else {
        w.xor(&BoundaryWord::golden())
    }
}

/// Rewrite route on an eventually periodic CF. Detects the output cycle on
/// the machine state `(position in period, pending)`.
fn jimm_periodic_rewrite(cf: &PeriodicCf) -> Result<Value> {
    let first = cf.first().clone();
    if first.is_negative() {
        // FE:II at value level: jimm(-x) = -1/jimm(x)
        let x = periodic_cf_to_surd(cf)?;
        let inner = jimm_periodic_rewrite(&surd_to_periodic_cf(&x.neg()))?;
        return Ok(inner.recip().neg());
    }
    if first.is_zero() {
        // FE:I: jimm([0; rest]) = [0; jimm(rest)] = 1/jimm([rest])
        let inner = jimm_periodic_rewrite(&cf.shift())?;
        return Ok(inner.recip());
    }
    if cf.is_noble() {
        // pending absorbs the all-ones tail: the value is [emitted..., ∞]
        let mut machine = RewriteMachine::new();
        let mut emitted = Vec::new();
        for d in cf.head() {
            emitted.extend(machine.feed(d));
        }
        return Ok(Value::Rational(cf_to_rational(&emitted)));
    }
    let mut machine = RewriteMachine::new();
    let mut emitted: Vec<BigInt> = Vec::new();
    for d in cf.head() {
        emitted.extend(machine.feed(d));
    }
    // unroll the period until (position, pending) repeats
    let mut seen: Vec<(usize, BigInt, usize)> = Vec::new();
    loop {
        for pos in 0..cf.period().len() {
            let pend = machine.pending().cloned().unwrap_or_default();
            if machine.pending().is_some() {
                if let Some(&(_, _, at)) =
                    seen.iter().find(|(p, q, _)| *p == pos && *q == pend)
                {
                    let head = emitted[..at].to_vec();
                    let period = emitted[at..].to_vec();
                    let out = PeriodicCf::new(head, period)?;
                    return Ok(Value::Surd(periodic_cf_to_surd(&out)?));
                }
                seen.push((pos, pend, emitted.len()));
            }
            emitted.extend(machine.feed(&cf.period()[pos]));
        }
    }
}

/// The involution on real quadratic irrationals, computed by the rewrite
/// AND by the word XOR, asserted equal. Nobles come back rational.
pub fn jimm_surd(x: &QuadSurd) -> Value {
    let cf = surd_to_periodic_cf(x);
    let via_rewrite = jimm_periodic_rewrite(&cf).expect("surd CF is well-formed");
    let via_xor = word_value(&jimm_word_image(&periodic_word(&cf)))
        .expect("image word is well-formed");
    assert_eq!(
        via_rewrite, via_xor,
        "representation disagreement at {x}: rewrite {via_rewrite} vs xor {via_xor}"
    );
    via_rewrite
}

/// Apply the involution to any irrational CF representation.
/// Finite (rational) input is refused:`jump` has both one-sided values and
/// `jimm_q_rational` the tree bijection.
pub fn jimm_cf(cf: &ContinuedFraction) -> Result<ContinuedFraction> {
    match cf {
        ContinuedFraction::Finite(_) => Err(Error::RationalInput(
            "the involution is two-valued at rationals; use jump (limits) or jimm-q (tree bijection)"
                .to_string(),
        )),
        ContinuedFraction::Periodic(p) => match jimm_periodic_rewrite(p)? {
            Value::Surd(s) => Ok(ContinuedFraction::Periodic(surd_to_periodic_cf(&s))),
            Value::Rational(r) => {
                if r.is_infinite() {
                    Ok(ContinuedFraction::Finite(vec![]))
                } else {
                    Ok(ContinuedFraction::Finite(rational_to_cf(&r)?))
                }
            }
        },
        ContinuedFraction::Stream(_) => Err(Error::Domain(
            "pass streams to jimm_stream, which certifies digits incrementally".to_string(),
        )),
    }
}

/// Lazy rewrite of a quotient stream. Emitted digits are certified final;
/// if the source ends first, `exhausted` reports how far we got.
pub struct JimmStream {
    src: Box<dyn Iterator<Item = BigInt>>,
    machine: RewriteMachine,
    queue: Vec<BigInt>,
    emitted: usize,
    exhausted: bool,
    leading_zero: bool,
}

impl JimmStream {
    /// The first source quotient may be 0 (values in (0,1)); negatives are
    /// rejected (negate at the value level first, per FE:II).
    pub fn new(mut src: Box<dyn Iterator<Item = BigInt>>) -> Result<Self> {
        let first = src.next().ok_or(Error::InsufficientPrecision(0))?;
        if first.is_negative() {
            return Err(Error::Domain(
                "negative stream: apply jimm(-x) = -1/jimm(x) at the value level".to_string(),
            ));
        }
        let mut s = JimmStream {
            src,
            machine: RewriteMachine::new(),
            queue: Vec::new(),
            emitted: 0,
            exhausted: false,
            leading_zero: first.is_zero(),
        };
        if s.leading_zero {
            // jimm([0; rest]) = [0; jimm(rest)]
            s.queue.push(BigInt::zero());
        } else {
            s.queue.extend(s.machine.feed(&first));
        }
        Ok(s)
    }

    pub fn from_surd(x: &QuadSurd) -> Result<Self> {
        Self::new(Box::new(SurdDigits::new(x)))
    }

    pub fn is_exhausted(&self) -> bool {
        self.exhausted
    }

    pub fn digits_emitted(&self) -> usize {
        self.emitted
    }

    /// Pull up to `n` certified digits.
    pub fn take_digits(&mut self, n: usize) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            match self.next() {
                Some(d) => out.push(d),
                None => break,
            }
        }
        out
    }
}

impl Iterator for JimmStream {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        loop {
            if !self.queue.is_empty() {
                self.emitted += 1;
                return Some(self.queue.remove(0));
            }
            if self.exhausted {
                return None;
            }
            match self.src.next() {
                Some(d) => {
                    if self.leading_zero && !self.machine_started() {
                        // the digit after the leading zero is the head
                        self.queue.extend(self.machine.feed(&d));
                    } else {
                        self.queue.extend(self.machine.feed(&d));
                    }
                }
                None => self.exhausted = true,
            }
        }
    }
}

impl JimmStream {
    fn machine_started(&self) -> bool {
        self.machine.pending().is_some()
    }
}

/// The tree bijection on positive rationals:
/// `jQ(1) = 1`, `jQ(1+x) = 1 + 1/jQ(x)`, `jQ(1/x) = 1/jQ(x)`.
/// Via the CF `[n0; n1, ..., nk]` it is
/// `T~^{n0} U T~^{n1} U ... U T~^{nk} (∞)` with Fibonacci matrices for the
/// `T~` powers, so deep recursion never happens.
pub fn jimm_q_rational(q: &BigRational) -> Result<BigRational> {
    if q.is_infinite() {
        return Err(Error::InfiniteInput);
    }
    if q.is_zero() || q.is_negative() {
        return Err(Error::Domain("the tree bijection lives on positive rationals".to_string()));
    }
    let digits = rational_to_cf(q)?;
    let ttilde_pow = |n: &BigInt| -> PGL2Mat {
        let n = n.to_i64().expect("quotient fits i64");
        PGL2Mat::new(fib(n + 1), fib(n), fib(n), fib(n - 1))
    };
    let u = crate::pgl2::Generator::U.matrix();
    let mut v = BigRational::infinity();
    for (i, n) in digits.iter().rev().enumerate() {
        if i > 0 {
            v = u.apply_rational(&v);
        }
        v = ttilde_pow(n).apply_rational(&v);
    }
    Ok(v)
}

/// The two one-sided limits at a rational and their difference, exactly.
/// Everything lands in Q(√5): the limits are noble numbers.
#[derive(Clone, Debug)]
pub struct JumpData {
    pub at: BigRational,
    pub left: QuadSurd,
    pub right: QuadSurd,
    pub delta: QuadSurd,
}

pub fn jump(q: &BigRational) -> Result<JumpData> {
    if q.is_infinite() {
        return Err(Error::InfiniteInput);
    }
    if q.is_zero() {
        return Err(Error::Domain("0 and ∞ are the endpoint exceptions".to_string()));
    }
    let (below, above) = rational_two_words(q)?;
    let lim = |w: &BoundaryWord| -> Result<QuadSurd> {
        match word_value(&jimm_word_image(w))? {
            Value::Surd(s) => Ok(s),
            Value::Rational(r) => Err(Error::Domain({
                let mut m = alloc::string::String::from("one-sided limit came out rational: ");
                m.push_str(&r.to_string());
                m
            })),
        }
    };
    let left = lim(&below)?;
    let right = lim(&above)?;
    let delta = match right.sub(&left)? {
        Value::Surd(s) => s,
        Value::Rational(_) => {
            return Err(Error::Domain("jump collapsed to a rational".to_string()))
        }
    };
    Ok(JumpData { at: q.clone(), left, right, delta })
}

/// Closed form `δ(n) = (-1)^{n+1} √5 / (F_n² + F_{n-1} F_{n-2})`.
pub fn delta_integer_formula(n: i64) -> Result<QuadSurd> {
    if n < 1 {
        return Err(Error::Domain("defined for n >= 1".to_string()));
    }
    let den = fib(n) * fib(n) + fib(n - 1) * fib(n - 2);
    let sign: i8 = if n % 2 == 1 { 1 } else { -1 };
    QuadSurd::new(0, sign, 5, den)
}

/// A point whose involution image is a PGL(2,Z) translate of itself:
/// the attracting fixed point of `jimm(M)·M`.
#[derive(Clone, Debug)]
pub struct OrbitFixedPoint {
    pub m: PGL2Mat,
    pub x: QuadSurd,
}

pub fn orbit_fixed_point(m: &PGL2Mat) -> Result<OrbitFixedPoint> {
    let n = jimm_matrix(m)?.mul(m);
    let (x, _) = n.fixed_points()?;
    // defining property, asserted exactly
    let image = jimm_surd(&x);
    let moved = m.apply(&Value::Surd(x.clone()));
    assert_eq!(image, moved, "fixed-point postcondition failed for {m}");
    Ok(OrbitFixedPoint { m: m.clone(), x })
}

/// Whether the involution commutes with Galois conjugation at `x`;
/// `None` when `x` is noble (the image is rational, nothing to conjugate).
pub fn galois_commute_check(x: &QuadSurd) -> Option<bool> {
    if is_noble(x) {
        return None;
    }
    let lhs = jimm_surd(&x.conjugate());
    let rhs = match jimm_surd(x) {
        Value::Surd(s) => Value::Surd(s.conjugate()),
        Value::Rational(_) => unreachable!("non-noble image is a surd"),
    };
    Some(lhs == rhs)
}

/// Noble = PGL(2,Z)-orbit of the golden section = all-ones CF tail.
pub fn is_noble(x: &QuadSurd) -> bool {
    surd_to_periodic_cf(x).is_noble()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surd(p: i64, q: i64, d: i64, r: i64) -> QuadSurd {
        QuadSurd::new(p, q, d, r).unwrap()
    }

    fn rat(s: &str) -> BigRational {
        s.parse().unwrap()
    }

    #[test]
    fn surd_goldens() {
        let r2 = QuadSurd::sqrt_of(2).unwrap();
        assert_eq!(jimm_surd(&r2), Value::Surd(surd(1, 1, 2, 1)));
        let x = surd(3, 5, 2, 7);
        assert_eq!(jimm_surd(&x), Value::Surd(surd(-3, 2, 95, 7)));
        let r11 = QuadSurd::sqrt_of(11).unwrap();
        assert_eq!(jimm_surd(&r11), Value::Surd(surd(15, 1, 901, 26)));
        assert_eq!(jimm_surd(&r11.neg()), Value::Surd(surd(15, -1, 901, 26)));
    }

    #[test]
    fn noble_collapse() {
        let phi = QuadSurd::phi();
        assert!(is_noble(&phi));
        assert_eq!(jimm_surd(&phi), Value::infinity());
        // jimm(1/phi) = 0, jimm(-phi) = 0's partner... jimm(-1/phi) = ∞
        assert_eq!(jimm_surd(&phi.recip()), Value::Rational(BigRational::zero()));
        assert_eq!(jimm_surd(&phi.recip().neg()), Value::infinity());
        assert_eq!(jimm_surd(&phi.neg()), Value::Rational(BigRational::zero()));
        // jimm(n + phi) = F_{n+1}/F_n
        for n in 1i64..8 {
            let x = phi.add_rational(&BigRational::from_int(n));
            let expect = BigRational::new(fib(n + 1), fib(n));
            assert_eq!(jimm_surd(&x), Value::Rational(expect), "n = {n}");
        }
    }

    #[test]
    fn jimm_cf_forms() {
        // [1;(2)] -> [(2)]
        let cf = ContinuedFraction::Periodic(PeriodicCf::from_i64(&[1], &[2]).unwrap());
        match jimm_cf(&cf).unwrap() {
            ContinuedFraction::Periodic(p) => {
                assert_eq!(p, PeriodicCf::from_i64(&[], &[2]).unwrap())
            }
            other => panic!("expected periodic, got {other}"),
        }
        // [(1)] -> inf
        let phi = ContinuedFraction::Periodic(PeriodicCf::from_i64(&[], &[1]).unwrap());
        match jimm_cf(&phi).unwrap() {
            ContinuedFraction::Finite(v) => assert!(v.is_empty()),
            other => panic!("expected inf, got {other}"),
        }
        // finite input refused
        assert!(matches!(
            jimm_cf(&ContinuedFraction::finite_i64(&[2])),
            Err(Error::RationalInput(_))
        ));
    }

    #[test]
    fn stream_of_e_pattern() {
        // e = [2; 1, 2, 1, 1, 4, 1, 1, 6, ...] -> [1, 3, 4, 1, 1, 4, ...]
        let e_digits = (0u64..).map(|i| {
            BigInt::from(match (i, i % 3) {
                (0, _) => 2,
                (_, 2) => 2 * (i / 3 + 1),
                _ => 1,
            })
        });
        let mut js = JimmStream::new(Box::new(e_digits)).unwrap();
        let got = js.take_digits(10);
        let expect: Vec<BigInt> =
            [1, 3, 4, 1, 1, 4, 1, 1, 1, 1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(got, expect);
        assert!(!js.is_exhausted());
    }

    #[test]
    fn stream_of_pi_prefix() {
        let pi_prefix = [3i64, 7, 15, 1, 292, 1, 1, 1, 2, 1, 3, 1];
        let mut js =
            JimmStream::new(Box::new(pi_prefix.into_iter().map(BigInt::from))).unwrap();
        let got: Vec<BigInt> = js.by_ref().collect();
        // [1_2, 2, 1_5, 2, 1_13, 3, 1_290, 5, 3, ...] truncated to certainty
        let mut expect: Vec<i64> = vec![1, 1, 2, 1, 1, 1, 1, 1, 2];
        expect.extend(core::iter::repeat(1).take(13));
        expect.push(3);
        expect.extend(core::iter::repeat(1).take(290));
        expect.push(5);
        // of the final pending block only what is certified appears
        let got_i: Vec<i64> = got.iter().map(|b| b.to_i64().unwrap()).collect();
        assert!(got_i.len() >= expect.len(), "{} < {}", got_i.len(), expect.len());
        assert_eq!(&got_i[..expect.len()], &expect[..]);
        assert!(js.is_exhausted());
    }

    #[test]
    fn constant_stream_matches_surd_route() {
        // [5; 5, 5, ...] = [(5)]
        let five = periodic_cf_to_surd(&PeriodicCf::from_i64(&[], &[5]).unwrap()).unwrap();
        let direct = match jimm_surd(&five) {
            Value::Surd(s) => s,
            _ => unreachable!(),
        };
        let expect: Vec<BigInt> = surd_to_periodic_cf(&direct).digits().take(40).collect();
        let mut js = JimmStream::new(Box::new(
            core::iter::repeat(BigInt::from(5)),
        ))
        .unwrap();
        let got = js.take_digits(40);
        assert_eq!(got, expect);
        // and the image is [1_4, (2, 1_3)]
        assert_eq!(
            surd_to_periodic_cf(&direct),
            PeriodicCf::from_i64(&[1, 1, 1, 1], &[2, 1, 1, 1]).unwrap()
        );
    }

    #[test]
    fn tree_bijection_on_rationals() {
        assert_eq!(jimm_q_rational(&rat("1")).unwrap(), rat("1"));
        for n in 1i64..12 {
            assert_eq!(
                jimm_q_rational(&BigRational::from_int(n)).unwrap(),
                BigRational::new(fib(n + 1), fib(n)),
                "integer {n}"
            );
        }
        assert_eq!(jimm_q_rational(&rat("5/2")).unwrap(), rat("4/3"));
        assert_eq!(jimm_q_rational(&rat("4/3")).unwrap(), rat("5/2"));
        assert!(jimm_q_rational(&rat("-2")).is_err());
        assert!(jimm_q_rational(&rat("0")).is_err());
    }

    #[test]
    fn jump_at_small_integers() {
        let j = jump(&rat("2")).unwrap();
        // right = [1;2,(1)] = (5-√5)/2 ... left = [3;(1)] = (5+√5)/2
        assert_eq!(j.left, surd(5, 1, 5, 2));
        assert_eq!(j.right, surd(5, -1, 5, 2));
        assert_eq!(j.delta, surd(0, -1, 5, 1));
        // q = 1: the two values are 1+Φ and 1/(1+Φ)
        let j1 = jump(&rat("1")).unwrap();
        assert_eq!(j1.right, surd(3, 1, 5, 2)); // 1 + Φ
        assert_eq!(j1.left, surd(3, -1, 5, 2)); // 1/(1+Φ) = (3-√5)/2
        // q = 3: δ = +√5/5
        assert_eq!(jump(&rat("3")).unwrap().delta, surd(0, 1, 5, 5));
        assert!(jump(&rat("0")).is_err());
        assert!(jump(&BigRational::infinity()).is_err());
    }

    #[test]
    fn delta_formula_values() {
        assert_eq!(delta_integer_formula(2).unwrap(), surd(0, -1, 5, 1));
        assert_eq!(delta_integer_formula(3).unwrap(), surd(0, 1, 5, 5));
        // n = 10: -√5/(55² + 34·21)
        assert_eq!(delta_integer_formula(10).unwrap(), surd(0, -1, 5, 55 * 55 + 34 * 21));
        assert!(delta_integer_formula(0).is_err());
    }

    #[test]
    fn jump_matches_formula() {
        for n in 1i64..=30 {
            let j = jump(&BigRational::from_int(n)).unwrap();
            assert_eq!(j.delta, delta_integer_formula(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn orbit_fixed_points() {
        use crate::pgl2::Generator;
        // m = T: x = sqrt 2, jimm(sqrt 2) = T(sqrt 2) = 1 + sqrt 2
        let fp = orbit_fixed_point(&Generator::T.matrix()).unwrap();
        assert_eq!(fp.x, QuadSurd::sqrt_of(2).unwrap());
        // identity is not hyperbolic
        assert!(orbit_fixed_point(&PGL2Mat::identity()).is_err());
        // m = T^2: jimm(x) = x + 2, and x has the CF tail (1,3)
        let fp2 = orbit_fixed_point(&PGL2Mat::new(1, 2, 0, 1)).unwrap();
        assert_eq!(fp2.x, surd(-1, 1, 21, 2));
        let tail = surd_to_periodic_cf(&fp2.x);
        assert_eq!(tail.period(), PeriodicCf::from_i64(&[], &[1, 3]).unwrap().period());
    }

    #[test]
    fn galois_commutation() {
        assert_eq!(galois_commute_check(&QuadSurd::sqrt_of(11).unwrap()), Some(true));
        assert_eq!(galois_commute_check(&surd(3, 5, 2, 7)), Some(true));
        assert_eq!(galois_commute_check(&QuadSurd::phi()), None);
    }

    #[test]
    fn quadratic_families() {
        // [0; (1_{n-1}, a)] -> [0; n, (a-2, n+1)] for n = 2..5, a = 3..6
        for n in 2i64..=5 {
            for a in 3i64..=6 {
                let mut per = vec![1i64; (n - 1) as usize];
                per.push(a);
                let x = periodic_cf_to_surd(&PeriodicCf::from_i64(&[0], &per).unwrap()).unwrap();
                let expect = periodic_cf_to_surd(
                    &PeriodicCf::from_i64(&[0, n], &[a - 2, n + 1]).unwrap(),
                )
                .unwrap();
                assert_eq!(jimm_surd(&x), Value::Surd(expect), "n={n} a={a}");
            }
        }
        // McMullen family, k = 1: [(1_2, 4, 5, 1, 3)] -> [3, (2,2,3,3,1,4)]
        let x = periodic_cf_to_surd(&PeriodicCf::from_i64(&[], &[1, 1, 4, 5, 1, 3]).unwrap())
            .unwrap();
        let expect =
            periodic_cf_to_surd(&PeriodicCf::from_i64(&[3], &[2, 2, 3, 3, 1, 4]).unwrap())
                .unwrap();
        assert_eq!(jimm_surd(&x), Value::Surd(expect));
    }

    #[test]
    fn norm_forms() {
        // jimm(sqrt q) has norm -1 (the x + sqrt(1+x²) shape)
        for q in [2i64, 3, 5, 6, 7, 11, 13] {
            let img = match jimm_surd(&QuadSurd::sqrt_of(q).unwrap()) {
                Value::Surd(s) => s,
                _ => unreachable!(),
            };
            assert_eq!(img.norm(), BigRational::from_int(-1), "sqrt {q}");
        }
        // x = p + sqrt(p²-1) has norm 1 and so does its image
        for p in [2i64, 3, 4, 5] {
            let x = QuadSurd::sqrt_of(p * p - 1).unwrap().add_rational(&BigRational::from_int(p));
            assert_eq!(x.norm(), BigRational::one());
            let img = match jimm_surd(&x) {
                Value::Surd(s) => s,
                _ => unreachable!(),
            };
            assert_eq!(img.norm(), BigRational::one(), "p = {p}");
        }
    }

    #[test]
    fn moduli_fixed_family() {
        // [overline{1_k, k+2}] is fixed at orbit level: image has the same
        // periodic tail up to cyclic shift
        for k in 0i64..5 {
            let mut per = vec![1i64; k as usize];
            per.push(k + 2);
            let cf = PeriodicCf::from_i64(&[], &per).unwrap();
            let x = periodic_cf_to_surd(&cf).unwrap();
            let img = match jimm_surd(&x) {
                Value::Surd(s) => s,
                _ => unreachable!(),
            };
            let img_cf = surd_to_periodic_cf(&img);
            // same tail up to rotation
            let a = cf.period();
            let b = img_cf.period();
            assert_eq!(a.len(), b.len(), "k = {k}");
            let rotated = (0..a.len()).any(|r| (0..a.len()).all(|i| a[(i + r) % a.len()] == b[i]));
            assert!(rotated, "k = {k}: {cf} vs {img_cf}");
        }
    }
}
