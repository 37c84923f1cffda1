//! Ground fields: the rationals, the Eisenstein field Q(w) and prime fields
//! F_p with p = 1 mod 3 (which already contain a primitive cube root of unity).
//!
//! Computation is generic over [`Field`]; [`CoeffElement`] is the mode-tagged
//! value used at the boundary (CLI parameters, coercions, reports).

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Default modulus for modular certification.
pub const DEFAULT_PRIME: u64 = 10009;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoeffError {
    DivisionByZero,
    ModeMismatch,
    ZeroInput,
    WrongMode,
    /// Modulus rejected: not prime, not 1 mod 3, or too large.
    BadModulus(u64),
    /// Rational with a denominator divisible by p.
    NotReducible,
    NoOmega,
}

impl fmt::Display for CoeffError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffError::DivisionByZero => f.write_str("division by zero"),
            CoeffError::ModeMismatch => f.write_str("coefficient mode mismatch"),
            CoeffError::ZeroInput => f.write_str("zero input"),
            CoeffError::WrongMode => f.write_str("operation not available in this mode"),
            CoeffError::BadModulus(p) => write!(f, "{p} is not a prime congruent to 1 mod 3 below 2^31"),
            CoeffError::NotReducible => f.write_str("denominator not invertible mod p"),
            CoeffError::NoOmega => f.write_str("field has no primitive cube root of unity"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldMode {
    Q,
    Qomega,
    Fp(u64),
}

impl fmt::Display for FieldMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldMode::Q => f.write_str("q"),
            FieldMode::Qomega => f.write_str("qw"),
            FieldMode::Fp(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for FieldMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "q" => Ok(FieldMode::Q),
            "qw" => Ok(FieldMode::Qomega),
            "fp" => Ok(FieldMode::Fp(DEFAULT_PRIME)),
            other => {
                let p = other
                    .strip_prefix("fp:")
                    .ok_or_else(|| alloc::format!("unknown field `{other}` (expected q, qw or fp:<p>)"))?;
                let p: u64 = p.parse().map_err(|_| alloc::format!("bad prime `{p}`"))?;
                Ok(FieldMode::Fp(p))
            }
        }
    }
}

/// A field whose elements are plain values; the field object carries any
/// shared parameters (the modulus, the chosen cube root of unity).
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static;

    fn mode(&self) -> FieldMode;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, CoeffError>;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    /// The designated primitive cube root of unity, if the field has one.
    fn omega(&self) -> Option<Self::Elem>;
    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;
    fn to_coeff(&self, a: &Self::Elem) -> CoeffElement;
    /// Coerce a mode-tagged value into this field (Q -> Q(w) -> F_p only).
    fn from_coeff(&self, c: &CoeffElement) -> Result<Self::Elem, CoeffError>;
    fn fmt_elem(&self, a: &Self::Elem, f: &mut fmt::Formatter<'_>) -> fmt::Result;

    /// Used only for pretty printing ("a - b" instead of "a + -b").
    fn is_negative(&self, _a: &Self::Elem) -> bool {
        false
    }
    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(n))
    }
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, CoeffError> {
        Ok(self.mul(a, &self.inv(b)?))
    }
    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
    /// Display helper for a single element.
    fn show(&self, a: &Self::Elem) -> String {
        struct D<'a, F: Field>(&'a F, &'a F::Elem);
        impl<F: Field> fmt::Display for D<'_, F> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_elem(self.1, f)
            }
        }
        D(self, a).to_string()
    }
}

// ---------------------------------------------------------------- rationals

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn mode(&self) -> FieldMode {
        FieldMode::Q
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Result<BigRational, CoeffError> {
        if a.is_zero() {
            Err(CoeffError::DivisionByZero)
        } else {
            Ok(a.recip())
        }
    }
    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn omega(&self) -> Option<BigRational> {
        None
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn to_coeff(&self, a: &BigRational) -> CoeffElement {
        CoeffElement::Q(a.clone())
    }
    fn from_coeff(&self, c: &CoeffElement) -> Result<BigRational, CoeffError> {
        match c {
            CoeffElement::Q(r) => Ok(r.clone()),
            CoeffElement::Qomega(q) if q.b.is_zero() => Ok(q.a.clone()),
            _ => Err(CoeffError::ModeMismatch),
        }
    }
    fn fmt_elem(&self, a: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_rational(a, f)
    }
    fn is_negative(&self, a: &BigRational) -> bool {
        a.is_negative()
    }
}

fn fmt_rational(a: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if a.denom().is_one() {
        write!(f, "{}", a.numer())
    } else {
        write!(f, "{}/{}", a.numer(), a.denom())
    }
}

// ---------------------------------------------------------------- Q(w)

/// a + b*w with w^2 + w + 1 = 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QOmega {
    pub a: BigRational,
    pub b: BigRational,
}

impl QOmega {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QOmega { a, b }
    }
    pub fn from_ints(a: i64, b: i64) -> Self {
        QOmega {
            a: BigRational::from_integer(a.into()),
            b: BigRational::from_integer(b.into()),
        }
    }
    pub fn omega() -> Self {
        Self::from_ints(0, 1)
    }
    /// N(a+bw) = a^2 - ab + b^2.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    pub fn add(&self, o: &Self) -> Self {
        QOmega { a: &self.a + &o.a, b: &self.b + &o.b }
    }
    pub fn sub(&self, o: &Self) -> Self {
        QOmega { a: &self.a - &o.a, b: &self.b - &o.b }
    }
    pub fn neg(&self) -> Self {
        QOmega { a: -&self.a, b: -&self.b }
    }
    pub fn mul(&self, o: &Self) -> Self {
        // (a+bw)(c+dw) = ac + (ad+bc)w + bd w^2, and w^2 = -1-w.
        let ac = &self.a * &o.a;
        let bd = &self.b * &o.b;
        let ad_bc = &self.a * &o.b + &self.b * &o.a;
        QOmega { a: &ac - &bd, b: ad_bc - bd }
    }
    pub fn inv(&self) -> Result<Self, CoeffError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        // conjugate of a+bw is a+bw^2 = (a-b) - bw
        Ok(QOmega { a: (&self.a - &self.b) / &n, b: -&self.b / &n })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Eisenstein;

impl Field for Eisenstein {
    type Elem = QOmega;

    fn mode(&self) -> FieldMode {
        FieldMode::Qomega
    }
    fn zero(&self) -> QOmega {
        QOmega::from_ints(0, 0)
    }
    fn one(&self) -> QOmega {
        QOmega::from_ints(1, 0)
    }
    fn is_zero(&self, a: &QOmega) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &QOmega, b: &QOmega) -> QOmega {
        a.add(b)
    }
    fn sub(&self, a: &QOmega, b: &QOmega) -> QOmega {
        a.sub(b)
    }
    fn mul(&self, a: &QOmega, b: &QOmega) -> QOmega {
        a.mul(b)
    }
    fn neg(&self, a: &QOmega) -> QOmega {
        a.neg()
    }
    fn inv(&self, a: &QOmega) -> Result<QOmega, CoeffError> {
        a.inv()
    }
    fn from_bigint(&self, n: &BigInt) -> QOmega {
        QOmega::new(BigRational::from_integer(n.clone()), BigRational::zero())
    }
    fn omega(&self) -> Option<QOmega> {
        Some(QOmega::omega())
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn to_coeff(&self, a: &QOmega) -> CoeffElement {
        CoeffElement::Qomega(a.clone())
    }
    fn from_coeff(&self, c: &CoeffElement) -> Result<QOmega, CoeffError> {
        match c {
            CoeffElement::Q(r) => Ok(QOmega::new(r.clone(), BigRational::zero())),
            CoeffElement::Qomega(q) => Ok(q.clone()),
            CoeffElement::Fp(_) => Err(CoeffError::ModeMismatch),
        }
    }
    fn is_negative(&self, q: &QOmega) -> bool {
        if q.b.is_zero() {
            q.a.is_negative()
        } else {
            q.a.is_zero() && q.b.is_negative()
        }
    }
    fn fmt_elem(&self, q: &QOmega, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (q.a.is_zero(), q.b.is_zero()) {
            (_, true) => fmt_rational(&q.a, f),
            (true, false) => {
                if q.b.is_one() {
                    f.write_str("w")
                } else if (-&q.b).is_one() {
                    f.write_str("-w")
                } else {
                    fmt_rational(&q.b, f)?;
                    f.write_str("*w")
                }
            }
            (false, false) => {
                f.write_str("(")?;
                fmt_rational(&q.a, f)?;
                if q.b.is_positive() {
                    f.write_str("+")?;
                }
                if q.b.is_one() {
                    f.write_str("w")?;
                } else if (-&q.b).is_one() {
                    f.write_str("-w")?;
                } else {
                    fmt_rational(&q.b, f)?;
                    f.write_str("*w")?;
                }
                f.write_str(")")
            }
        }
    }
}

// ---------------------------------------------------------------- F_p

/// F_p with p prime, p = 1 mod 3, p < 2^31. Elements are residues in [0, p).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    omega: u64,
}

pub fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, CoeffError> {
        if p >= (1 << 31) || p % 3 != 1 || !is_prime(p) {
            return Err(CoeffError::BadModulus(p));
        }
        // scan c = 2, 3, ... for c^((p-1)/3) != 1; that power has order 3
        let e = (p - 1) / 3;
        let mut c = 2;
        let omega = loop {
            let w = mod_pow(c, e, p);
            if w != 1 {
                break w;
            }
            c += 1;
        };
        Ok(PrimeField { p, omega })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    /// Smallest generator of the multiplicative group.
    pub fn generator(&self) -> u64 {
        let qs = prime_factors(self.p - 1);
        (2..self.p)
            .find(|&g| qs.iter().all(|&q| mod_pow(g, (self.p - 1) / q, self.p) != 1))
            .expect("cyclic group has a generator")
    }

    /// c is a nonzero cube iff c^((p-1)/3) = 1.
    pub fn is_cube(&self, c: u64) -> Result<bool, CoeffError> {
        if c % self.p == 0 {
            return Err(CoeffError::ZeroInput);
        }
        Ok(mod_pow(c, (self.p - 1) / 3, self.p) == 1)
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn mode(&self) -> FieldMode {
        FieldMode::Fp(self.p)
    }
    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Result<u64, CoeffError> {
        if *a == 0 {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(mod_pow(*a, self.p - 2, self.p))
    }
    fn from_bigint(&self, n: &BigInt) -> u64 {
        let r = n.mod_floor(&BigInt::from(self.p));
        r.to_u64().expect("residue fits")
    }
    fn omega(&self) -> Option<u64> {
        Some(self.omega)
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn to_coeff(&self, a: &u64) -> CoeffElement {
        CoeffElement::Fp(FpValue { value: *a, p: self.p })
    }
    fn from_coeff(&self, c: &CoeffElement) -> Result<u64, CoeffError> {
        match c {
            CoeffElement::Q(r) => self.reduce_rational(r),
            CoeffElement::Qomega(q) => {
                let a = self.reduce_rational(&q.a)?;
                let b = self.reduce_rational(&q.b)?;
                Ok(self.add(&a, &self.mul(&b, &self.omega)))
            }
            CoeffElement::Fp(v) if v.p == self.p => Ok(v.value % self.p),
            CoeffElement::Fp(_) => Err(CoeffError::ModeMismatch),
        }
    }
    /// Symmetric representatives: values above p/2 print as negatives.
    fn is_negative(&self, a: &u64) -> bool {
        *a > self.p / 2
    }
    fn fmt_elem(&self, a: &u64, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_negative(a) {
            write!(f, "-{}", self.p - a)
        } else {
            write!(f, "{a}")
        }
    }
}

impl PrimeField {
    fn reduce_rational(&self, r: &BigRational) -> Result<u64, CoeffError> {
        let d = self.from_bigint(r.denom());
        if d == 0 {
            return Err(CoeffError::NotReducible);
        }
        Ok(self.mul(&self.from_bigint(r.numer()), &self.inv(&d)?))
    }
}

// ---------------------------------------------------------------- tagged values

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpValue {
    pub value: u64,
    pub p: u64,
}

/// A scalar tagged with its field mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoeffElement {
    Q(BigRational),
    Qomega(QOmega),
    Fp(FpValue),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl CoeffElement {
    pub fn int(n: i64) -> Self {
        CoeffElement::Q(BigRational::from_integer(n.into()))
    }

    pub fn mode(&self) -> FieldMode {
        match self {
            CoeffElement::Q(_) => FieldMode::Q,
            CoeffElement::Qomega(_) => FieldMode::Qomega,
            CoeffElement::Fp(v) => FieldMode::Fp(v.p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            CoeffElement::Q(r) => r.is_zero(),
            CoeffElement::Qomega(q) => q.is_zero(),
            CoeffElement::Fp(v) => v.value == 0,
        }
    }
}

impl fmt::Display for CoeffElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffElement::Q(r) => fmt_rational(r, f),
            CoeffElement::Qomega(q) => Eisenstein.fmt_elem(q, f),
            CoeffElement::Fp(v) => write!(f, "{} (mod {})", v.value, v.p),
        }
    }
}

fn apply<F: Field>(field: &F, a: &F::Elem, b: &F::Elem, op: ArithOp) -> Result<F::Elem, CoeffError> {
    Ok(match op {
        ArithOp::Add => field.add(a, b),
        ArithOp::Sub => field.sub(a, b),
        ArithOp::Mul => field.mul(a, b),
        ArithOp::Div => field.div(a, b)?,
    })
}

/// Exact arithmetic on two values of the same mode.
pub fn field_arith(x: &CoeffElement, y: &CoeffElement, op: ArithOp) -> Result<CoeffElement, CoeffError> {
    match (x, y) {
        (CoeffElement::Q(a), CoeffElement::Q(b)) => apply(&Rationals, a, b, op).map(CoeffElement::Q),
        (CoeffElement::Qomega(a), CoeffElement::Qomega(b)) => {
            apply(&Eisenstein, a, b, op).map(CoeffElement::Qomega)
        }
        (CoeffElement::Fp(a), CoeffElement::Fp(b)) if a.p == b.p => {
            let k = PrimeField::new(a.p)?;
            apply(&k, &a.value, &b.value, op).map(|v| k.to_coeff(&v))
        }
        _ => Err(CoeffError::ModeMismatch),
    }
}

/// True iff c is a cube in F_p^x.
pub fn cube_test_scalar(c: &CoeffElement) -> Result<bool, CoeffError> {
    match c {
        CoeffElement::Fp(v) => PrimeField::new(v.p)?.is_cube(v.value),
        _ => Err(CoeffError::WrongMode),
    }
}
