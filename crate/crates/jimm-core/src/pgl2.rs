//! PGL(2,Z) as integer matrices and as words in the standard generators.
//!
//! Generator dictionary (Möbius map / matrix):
//! `S = -1/x`, `L = 1 - 1/x`, `V = -x`, `T = x+1`, `T~ = 1 + 1/x`,
//! `U = 1/x`, `K = 1 - x`. The outer automorphism acts on generators by
//! `S <-> V`, `T <-> T~`, and fixes `U`, `K`, `L`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::BigRational;
use crate::surd::{QuadSurd, Value};
use crate::{Error, Result};

/// Integer 2x2 matrix with canonical projective sign (the first nonzero of
/// `a, b, c, d` is positive), so `M == -M` holds structurally.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PGL2Mat {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl PGL2Mat {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Self {
        let mut m = PGL2Mat { a: a.into(), b: b.into(), c: c.into(), d: d.into() };
        m.normalize_sign();
        m
    }

    pub fn identity() -> Self {
        Self::new(1, 0, 0, 1)
    }

    fn normalize_sign(&mut self) {
        for v in [&self.a, &self.b, &self.c, &self.d] {
            if v.is_positive() {
                return;
            }
            if v.is_negative() {
                break;
            }
        }
        self.a = -&self.a;
        self.b = -&self.b;
        self.c = -&self.c;
        self.d = -&self.d;
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    pub fn trace(&self) -> BigInt {
        // projective trace, reported at the canonical sign
        &self.a + &self.d
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::new(
            &self.a * &rhs.a + &self.b * &rhs.c,
            &self.a * &rhs.b + &self.b * &rhs.d,
            &self.c * &rhs.a + &self.d * &rhs.c,
            &self.c * &rhs.b + &self.d * &rhs.d,
        )
    }

    /// Inverse of a unimodular matrix (projectively, so the determinant sign
    /// is immaterial).
    pub fn inv(&self) -> Result<Self> {
        if !self.is_unimodular() {
            return Err(Error::NotUnimodular);
        }
        Ok(Self::new(self.d.clone(), -&self.b, -&self.c, self.a.clone()))
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::identity();
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Exact Möbius action `(ax+b)/(cx+d)` on the projective line.
    pub fn apply(&self, x: &Value) -> Value {
        match x {
            Value::Rational(q) => Value::Rational(BigRational::new(
                &self.a * q.num() + &self.b * q.den(),
                &self.c * q.num() + &self.d * q.den(),
            )),
            Value::Surd(s) => {
                let lin = |u: &BigInt, v: &BigInt| -> Value {
                    if u.is_zero() {
                        Value::Rational(BigRational::from_int(v.clone()))
                    } else {
                        Value::Surd(
                            s.mul_rational(&BigRational::from_int(u.clone()))
                                .unwrap()
                                .add_rational(&BigRational::from_int(v.clone())),
                        )
                    }
                };
                let num = lin(&self.a, &self.b);
                let den = lin(&self.c, &self.d);
                match (num, den) {
                    (n, Value::Rational(r)) => {
                        // c = 0, so a != 0 and the numerator is a surd
                        n.as_surd().unwrap().mul_rational(&r.recip()).unwrap().into()
                    }
                    (Value::Rational(n), Value::Surd(s2)) => {
                        // a = 0, so b != 0
                        s2.recip().mul_rational(&n).unwrap().into()
                    }
                    (Value::Surd(n), Value::Surd(s2)) => n.mul(&s2.recip()).unwrap(),
                }
            }
        }
    }

    pub fn apply_rational(&self, q: &BigRational) -> BigRational {
        match self.apply(&Value::Rational(q.clone())) {
            Value::Rational(r) => r,
            Value::Surd(_) => unreachable!(),
        }
    }

    /// Both fixed points `(attracting, repelling)` of a hyperbolic element,
    /// as exact surds. Errors on elliptic/parabolic/identity elements and on
    /// reflections whose fixed points are rational.
    pub fn fixed_points(&self) -> Result<(QuadSurd, QuadSurd)> {
        if !self.is_unimodular() {
            return Err(Error::NotUnimodular);
        }
        // c x^2 + (d - a) x - b = 0
        if self.c.is_zero() {
            return Err(Error::NotHyperbolic("fixed point at infinity".to_string()));
        }
        let tr = self.trace();
        let disc: BigInt = &tr * &tr - (self.det() << 2);
        let sq = disc.sqrt();
        if !disc.is_positive() || &sq * &sq == disc {
            return Err(Error::NotHyperbolic(
                "fixed points are not quadratic irrationals".to_string(),
            ));
        }
        let two_c: BigInt = &self.c << 1;
        let root = |sign: i8| QuadSurd::new(&self.a - &self.d, sign, disc.clone(), two_c.clone());
        let plus = root(1)?;
        let minus = root(-1)?;
        // attracting root: |derivative| = |det| / (c x + d)^2 < 1
        let attracting = |z: &QuadSurd| {
            let w = z
                .mul_rational(&BigRational::from_int(self.c.clone()))
                .unwrap()
                .add_rational(&BigRational::from_int(self.d.clone()));
            w.cmp_rational(&BigRational::one()) == core::cmp::Ordering::Greater
                || w.cmp_rational(&BigRational::from_int(-1)) == core::cmp::Ordering::Less
        };
        if attracting(&plus) {
            Ok((plus, minus))
        } else if attracting(&minus) {
            Ok((minus, plus))
        } else {
            Err(Error::NotHyperbolic("no attracting fixed point".to_string()))
        }
    }
}

impl fmt::Display for PGL2Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for PGL2Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for PGL2Mat {
    type Err = Error;

    /// Matrix literal `[[a,b],[c,d]]`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || {
            let mut m = String::from("bad matrix literal: ");
            m.push_str(s);
            Error::Parse(m)
        };
        let inner = t.strip_prefix("[[").and_then(|u| u.strip_suffix("]]")).ok_or_else(bad)?;
        let rows: Vec<&str> = inner.split("],[").collect();
        if rows.len() != 2 {
            return Err(bad());
        }
        let mut vals = Vec::with_capacity(4);
        for row in rows {
            for entry in row.split(',') {
                vals.push(BigInt::from_str(entry).map_err(|_| bad())?);
            }
        }
        if vals.len() != 4 {
            return Err(bad());
        }
        let d = vals.pop().unwrap();
        let c = vals.pop().unwrap();
        let b = vals.pop().unwrap();
        let a = vals.pop().unwrap();
        Ok(PGL2Mat::new(a, b, c, d))
    }
}

/// The named generators.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Generator {
    S,
    L,
    L2,
    U,
    V,
    K,
    T,
    Ttilde,
}

impl Generator {
    pub fn matrix(self) -> PGL2Mat {
        match self {
            Generator::S => PGL2Mat::new(0, 1, -1, 0),
            Generator::L => PGL2Mat::new(1, -1, 1, 0),
            Generator::L2 => PGL2Mat::new(0, -1, 1, -1),
            Generator::U => PGL2Mat::new(0, 1, 1, 0),
            Generator::V => PGL2Mat::new(-1, 0, 0, 1),
            Generator::K => PGL2Mat::new(-1, 1, 0, 1),
            Generator::T => PGL2Mat::new(1, 1, 0, 1),
            Generator::Ttilde => PGL2Mat::new(1, 1, 1, 0),
        }
    }

    /// Image under the outer automorphism.
    pub fn jimm(self) -> Generator {
        match self {
            Generator::S => Generator::V,
            Generator::V => Generator::S,
            Generator::T => Generator::Ttilde,
            Generator::Ttilde => Generator::T,
            Generator::U => Generator::U,
            Generator::K => Generator::K,
            Generator::L => Generator::L,
            Generator::L2 => Generator::L2,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            Generator::S => "S",
            Generator::L => "L",
            Generator::L2 => "L2",
            Generator::U => "U",
            Generator::V => "V",
            Generator::K => "K",
            Generator::T => "T",
            Generator::Ttilde => "T~",
        }
    }
}

/// One factor `gen^pow` of a word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Atom {
    pub gen: Generator,
    pub pow: i64,
}

/// Word over the generators; the empty word is the identity.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GL2Word(pub Vec<Atom>);

impl GL2Word {
    pub fn identity() -> Self {
        GL2Word(Vec::new())
    }

    pub fn of(gens: &[Generator]) -> Self {
        GL2Word(gens.iter().map(|&gen| Atom { gen, pow: 1 }).collect())
    }

    pub fn push(&mut self, gen: Generator, pow: i64) {
        if pow != 0 {
            self.0.push(Atom { gen, pow });
        }
    }

    /// Generator-wise substitution `S <-> V`, `T <-> T~`; `U`, `K`, `L`
    /// fixed. This is the outer automorphism at the word level.
    pub fn jimm(&self) -> GL2Word {
        GL2Word(self.0.iter().map(|a| Atom { gen: a.gen.jimm(), pow: a.pow }).collect())
    }

    /// Canonical representative: decompose the word's matrix again.
    pub fn reduced(&self) -> GL2Word {
        matrix_to_word(&word_to_matrix(self)).expect("generator words are unimodular")
    }
}

impl fmt::Display for GL2Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if a.pow == 1 {
                write!(f, "{}", a.gen.token())?;
            } else {
                write!(f, "{}^{}", a.gen.token(), a.pow)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GL2Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GL2Word {
    type Err = Error;

    /// Whitespace-separated tokens `T U S V K L L2 T~`, optional `^n`.
    fn from_str(s: &str) -> Result<Self> {
        let mut out = GL2Word::identity();
        for tok in s.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (g, p) = match tok.split_once('^') {
                Some((g, p)) => (g, p.parse::<i64>().map_err(|_| Error::Parse(tok.to_string()))?),
                None => (tok, 1),
            };
            let gen = match g {
                "S" => Generator::S,
                "L" => Generator::L,
                "L2" => Generator::L2,
                "U" => Generator::U,
                "V" => Generator::V,
                "K" => Generator::K,
                "T" => Generator::T,
                "T~" | "Ttilde" => Generator::Ttilde,
                _ => {
                    let mut m = String::from("unknown generator: ");
                    m.push_str(tok);
                    return Err(Error::Parse(m));
                }
            };
            out.push(gen, p);
        }
        Ok(out)
    }
}

/// Product of the generator matrices, projectively normalized.
pub fn word_to_matrix(w: &GL2Word) -> PGL2Mat {
    let mut acc = PGL2Mat::identity();
    for atom in &w.0 {
        let m = atom.gen.matrix().pow(atom.pow).expect("generators are unimodular");
        acc = acc.mul(&m);
    }
    acc
}

/// Euclidean peel direction; two variants exist so tests can check that the
/// matrix automorphism does not depend on the chosen word.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PeelStrategy {
    Floor,
    Ceil,
}

/// Express a unimodular matrix as a word in `T`, `S` and (for determinant
/// -1) a trailing `V`: peel `T^k` by Euclid on the first column, interleave
/// `S`. There is no shortcut around actually expressing the matrix.
pub fn matrix_to_word_with(m: &PGL2Mat, strategy: PeelStrategy) -> Result<GL2Word> {
    if !m.is_unimodular() {
        return Err(Error::NotUnimodular);
    }
    let orig = m.clone();
    let mut w = GL2Word::identity();
    let mut m = m.clone();
    let flip = m.det() == BigInt::from(-1);
    if flip {
        // M = M' V with det M' = +1
        m = m.mul(&Generator::V.matrix());
    }
    while !m.c.is_zero() {
        let k = match strategy {
            PeelStrategy::Floor => m.a.div_floor(&m.c),
            PeelStrategy::Ceil => m.a.div_ceil(&m.c),
        };
        let kk = i64::try_from(&k).map_err(|_| Error::Domain("entry overflow".to_string()))?;
        w.push(Generator::T, kk);
        // S^{-1} T^{-k} M; |new c| = |a - k c| < |c| ensures termination
        let r = &m.a - &k * &m.c;
        let e = &m.b - &k * &m.d;
        m = PGL2Mat::new(-&m.c, -&m.d, r, e);
        w.push(Generator::S, 1);
    }
    // now M = [[a, b], [0, d]] with a = d = ±1 projectively
    let shift: BigInt = &m.a * &m.b;
    w.push(
        Generator::T,
        i64::try_from(&shift).map_err(|_| Error::Domain("entry overflow".to_string()))?,
    );
    if flip {
        w.push(Generator::V, 1);
    }
    debug_assert_eq!(word_to_matrix(&w), orig);
    Ok(w)
}

pub fn matrix_to_word(m: &PGL2Mat) -> Result<GL2Word> {
    matrix_to_word_with(m, PeelStrategy::Floor)
}

/// The outer automorphism on matrices: decompose, substitute, multiply out.
pub fn jimm_matrix(m: &PGL2Mat) -> Result<PGL2Mat> {
    let w = matrix_to_word(m)?;
    Ok(word_to_matrix(&w.jimm()))
}

/// `(tr M, tr jimm M)`: exposed because the pair is a class invariant of
/// unknown strength; nothing more is claimed about it.
pub fn trace_pair(m: &PGL2Mat) -> Result<(BigInt, BigInt)> {
    Ok((m.trace(), jimm_matrix(m)?.trace()))
}
