//! Exact sparse multivariate polynomials over the integers.
//!
//! Variables are positional: a [`Polynomial`] in `nvars` variables stores a map
//! from exponent vectors of length `nvars` to nonzero [`BigInt`] coefficients.
//! Terms are kept in graded lexicographic order (`x1 > x2 > ...`), so equal
//! polynomials serialize to identical bytes.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lie::LieType;

/// Exponent vector, ordered by total degree and then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c.into());
        p
    }

    /// The variable with 0-based index `i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(Monomial(exps), BigInt::one());
        p
    }

    /// The linear form `sum coeffs[i] * x_{i+1}`.
    pub fn linear(coeffs: &[i64]) -> Self {
        let nvars = coeffs.len();
        let mut p = Self::zero(nvars);
        for (i, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                let mut exps = vec![0; nvars];
                exps[i] = 1;
                p.add_term(Monomial(exps), BigInt::from(c));
            }
        }
        p
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs, combining
    /// repeated monomials and dropping zeros.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BigInt, Vec<u32>)>,
    {
        let mut p = Self::zero(nvars);
        for (c, exps) in terms {
            if exps.len() != nvars {
                return Err(Error::input(format!(
                    "exponent vector of length {} in a polynomial with {} variables",
                    exps.len(),
                    nvars
                )));
            }
            p.add_term(Monomial(exps), c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> BigInt {
        self.terms
            .get(&Monomial(exponents.to_vec()))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::input(format!(
                "polynomials in {} and {} variables cannot be combined",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        let mut out = Polynomial::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn scale_i64(&self, c: i64) -> Polynomial {
        self.scale(&BigInt::from(c))
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Applies the ring homomorphism sending variable `i` to `images[i]`.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.nvars {
            return Err(Error::input(format!(
                "substitution needs {} images, got {}",
                self.nvars,
                images.len()
            )));
        }
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        if images.iter().any(|p| p.nvars != target) {
            return Err(Error::input("substitution images live in different rings"));
        }
        // powers[i][e] = images[i]^e, filled on demand
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|_| vec![Polynomial::one(target)])
            .collect();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            for (m2, c2) in term.terms {
                out.add_term(m2, c2);
            }
        }
        Ok(out)
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        if self.nvars != divisor.nvars || divisor.is_zero() {
            return None;
        }
        let (lead_m, lead_c) = divisor.leading_term()?;
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(self.nvars);
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.checked_div(lead_m)?;
            let (qc, r) = c.div_rem(lead_c);
            if !r.is_zero() {
                return None;
            }
            let mut step = Polynomial::zero(self.nvars);
            step.add_term(qm, qc);
            rem = &rem - &(&step * divisor);
            quot = &quot + &step;
        }
        Some(quot)
    }

    /// Divides every coefficient by `c`; `None` unless all are multiples of `c`.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Option<Polynomial> {
        if c.is_zero() {
            return None;
        }
        let mut terms = BTreeMap::new();
        for (m, a) in &self.terms {
            let (q, r) = a.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            terms.insert(m.clone(), q);
        }
        Some(Polynomial {
            nvars: self.nvars,
            terms,
        })
    }

    pub fn evaluate(&self, point: &[BigInt]) -> Result<BigInt> {
        if point.len() != self.nvars {
            return Err(Error::input(format!(
                "evaluation point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.nvars
            )));
        }
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    v *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += v;
        }
        Ok(total)
    }

    /// Value at the origin.
    pub fn constant_term(&self) -> BigInt {
        self.coefficient(&vec![0; self.nvars])
    }

    /// Renders with variables named `{prefix}1 .. {prefix}nvars`.
    pub fn display_with<'a>(&'a self, prefix: &'a str) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, prefix }
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial ring mismatch")
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial ring mismatch")
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial ring mismatch")
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale_i64(-1)
    }
}

impl std::ops::AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        assert_eq!(self.nvars, rhs.nvars, "polynomial ring mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    prefix: &'a str,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.poly.terms().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let factors: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("{}{}", self.prefix, i + 1)
                    } else {
                        format!("{}{}^{}", self.prefix, i + 1, e)
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with("t").fmt(f)
    }
}

// JSON: {"nvars": k, "terms": [{"coeff": c, "exp": [..]}, ...]}, descending grlex.
// Coefficients outside the i64 range are written as decimal strings.

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CoeffRepr {
    Small(i64),
    Big(String),
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    coeff: CoeffRepr,
    exp: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    nvars: usize,
    terms: Vec<TermRepr>,
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = PolyRepr {
            nvars: self.nvars,
            terms: self
                .terms()
                .map(|(m, c)| TermRepr {
                    coeff: match c.to_i64() {
                        Some(v) => CoeffRepr::Small(v),
                        None => CoeffRepr::Big(c.to_string()),
                    },
                    exp: m.0.clone(),
                })
                .collect(),
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = PolyRepr::deserialize(deserializer)?;
        let mut p = Polynomial::zero(repr.nvars);
        for t in repr.terms {
            let c = match t.coeff {
                CoeffRepr::Small(v) => BigInt::from(v),
                CoeffRepr::Big(s) => s.parse::<BigInt>().map_err(D::Error::custom)?,
            };
            if c.is_zero() {
                return Err(D::Error::custom("zero coefficient in serialized polynomial"));
            }
            if t.exp.len() != repr.nvars {
                return Err(D::Error::custom("exponent vector length differs from nvars"));
            }
            let m = Monomial(t.exp);
            if p.terms.contains_key(&m) {
                return Err(D::Error::custom("repeated monomial in serialized polynomial"));
            }
            p.terms.insert(m, c);
        }
        Ok(p)
    }
}

fn serialize_bigint<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&x.to_string()),
    }
}

/// Simple-root data for rewriting weights `t_i` in the negative simple roots
/// `v_i := -alpha_i` (Bourbaki numbering).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootBasis {
    pub lie_type: LieType,
    /// Number of weight variables `t_1..t_n`.
    pub n: usize,
}

impl RootBasis {
    pub fn new(lie_type: LieType, n: usize) -> Result<Self> {
        let min = if lie_type == LieType::D { 2 } else { 1 };
        if n < min {
            return Err(Error::input(format!("type {lie_type} root basis needs n >= {min}")));
        }
        Ok(RootBasis { lie_type, n })
    }

    /// 1 for types A and B, 2 for types C and D.
    pub fn denominator_scale(&self) -> u32 {
        match self.lie_type {
            LieType::A | LieType::B => 1,
            LieType::C | LieType::D => 2,
        }
    }

    pub fn num_roots(&self) -> usize {
        match self.lie_type {
            LieType::A => self.n - 1,
            _ => self.n,
        }
    }

    /// The simple root `alpha_i` (1-based) as a linear form in `t_1..t_n`.
    pub fn simple_root(&self, i: usize) -> Polynomial {
        let n = self.n;
        assert!(i >= 1 && i <= self.num_roots());
        let mut c = vec![0i64; n];
        if i < n {
            c[i - 1] = 1;
            c[i] = -1;
        } else {
            match self.lie_type {
                LieType::B => c[n - 1] = 1,
                LieType::C => c[n - 1] = 2,
                LieType::D => {
                    c[n - 2] = 1;
                    c[n - 1] = 1;
                }
                LieType::A => unreachable!(),
            }
        }
        Polynomial::linear(&c)
    }

    /// Images of `scale * t_i` as integer linear forms in `v_1..v_r`; type A
    /// carries one extra trailing variable `u = t_1` for the direction
    /// outside the root span.
    fn scaled_weight_images(&self) -> Vec<Polynomial> {
        let n = self.n;
        let r = self.num_roots();
        let nv = if self.lie_type == LieType::A { r + 1 } else { r };
        (1..=n)
            .map(|i| {
                let mut c = vec![0i64; nv];
                match self.lie_type {
                    // t_i = u + v_1 + ... + v_{i-1}
                    LieType::A => {
                        c[r] = 1;
                        for k in 1..i {
                            c[k - 1] = 1;
                        }
                    }
                    // t_i = -(v_i + ... + v_n)
                    LieType::B => {
                        for k in i..=n {
                            c[k - 1] = -1;
                        }
                    }
                    // 2 t_i = -(2 v_i + ... + 2 v_{n-1} + v_n)
                    LieType::C => {
                        for k in i..n {
                            c[k - 1] = -2;
                        }
                        c[n - 1] = -1;
                    }
                    // 2 t_i = -(2 v_i + ... + 2 v_{n-2} + v_{n-1} + v_n) for i < n,
                    // 2 t_n = v_{n-1} - v_n
                    LieType::D => {
                        if i < n {
                            for k in i..n - 1 {
                                c[k - 1] = -2;
                            }
                            c[n - 2] = -1;
                            c[n - 1] = -1;
                        } else {
                            c[n - 2] = 1;
                            c[n - 1] = -1;
                        }
                    }
                }
                Polynomial::linear(&c)
            })
            .collect()
    }
}

/// Expansion of a polynomial in the negative simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootCertificate {
    pub basis: RootBasis,
    /// Degree of the certified polynomial (0 for the zero polynomial).
    pub degree: u32,
    /// `denominator_scale^degree`.
    #[serde(serialize_with = "serialize_bigint")]
    pub scale: BigInt,
    /// Expansion of `scale * p` in `v_1..v_r`.
    pub scaled_expansion: Polynomial,
    /// Expansion of `p` itself in `v_1..v_r`; all coefficients are nonnegative.
    pub expansion: Polynomial,
}

impl RootCertificate {
    /// Rewrites the expansion back in the weight variables `t_1..t_n`.
    pub fn expand_to_weights(&self) -> Polynomial {
        let images: Vec<Polynomial> = (1..=self.basis.num_roots())
            .map(|i| -&self.basis.simple_root(i))
            .collect();
        if images.is_empty() {
            // rank zero: only constants can be certified
            return Polynomial::constant(self.basis.n, self.expansion.constant_term());
        }
        self.expansion
            .substitute(&images)
            .expect("certificate expansion has one variable per simple root")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PositivityFailure {
    /// The polynomial is not a polynomial in the roots (type A only).
    OutsideRootSpan { monomial: Vec<u32> },
    NegativeCoefficient { monomial: Vec<u32>, coeff: BigInt },
    /// A coefficient of the expansion is not an integer.
    NonIntegral { monomial: Vec<u32>, scaled_coeff: BigInt },
}

impl fmt::Display for PositivityFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PositivityFailure::OutsideRootSpan { monomial } => {
                write!(f, "monomial {monomial:?} involves a direction outside the root span")
            }
            PositivityFailure::NegativeCoefficient { monomial, coeff } => {
                write!(f, "coefficient {coeff} of v-monomial {monomial:?} is negative")
            }
            PositivityFailure::NonIntegral {
                monomial,
                scaled_coeff,
            } => write!(
                f,
                "scaled coefficient {scaled_coeff} of v-monomial {monomial:?} is not divisible by the scale"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Positivity {
    Certified(RootCertificate),
    Failed(PositivityFailure),
}

impl Positivity {
    pub fn is_certified(&self) -> bool {
        matches!(self, Positivity::Certified(_))
    }

    pub fn certificate(&self) -> Option<&RootCertificate> {
        match self {
            Positivity::Certified(c) => Some(c),
            Positivity::Failed(_) => None,
        }
    }
}

/// Decides whether `p` lies in `Z>=0[-alpha_1, ..., -alpha_r]`.
pub fn root_positivity_certificate(p: &Polynomial, basis: &RootBasis) -> Result<Positivity> {
    if p.nvars() != basis.n {
        return Err(Error::input(format!(
            "polynomial has {} variables, root basis expects {}",
            p.nvars(),
            basis.n
        )));
    }
    if !p.is_homogeneous() {
        return Err(Error::input("positivity certificate requires a homogeneous polynomial"));
    }
    let r = basis.num_roots();
    let degree = p.degree().unwrap_or(0);
    let scale = num_traits::pow(BigInt::from(basis.denominator_scale()), degree as usize);
    let images = basis.scaled_weight_images();
    let mut scaled = if p.is_zero() {
        Polynomial::zero(images.first().map(|q| q.nvars()).unwrap_or(r))
    } else {
        p.substitute(&images)?
    };

    if basis.lie_type == LieType::A {
        if let Some((m, _)) = scaled.terms().find(|(m, _)| m.exponents()[r] > 0) {
            return Ok(Positivity::Failed(PositivityFailure::OutsideRootSpan {
                monomial: m.exponents().to_vec(),
            }));
        }
        let dropped = scaled
            .terms()
            .map(|(m, c)| (c.clone(), m.exponents()[..r].to_vec()))
            .collect::<Vec<_>>();
        scaled = Polynomial::from_terms(r, dropped)?;
    }

    for (m, c) in scaled.terms() {
        if c.is_negative() {
            return Ok(Positivity::Failed(PositivityFailure::NegativeCoefficient {
                monomial: m.exponents().to_vec(),
                coeff: c.clone(),
            }));
        }
        if !c.is_multiple_of(&scale) {
            return Ok(Positivity::Failed(PositivityFailure::NonIntegral {
                monomial: m.exponents().to_vec(),
                scaled_coeff: c.clone(),
            }));
        }
    }
    let expansion = scaled
        .div_scalar_exact(&scale)
        .expect("divisibility checked termwise");
    Ok(Positivity::Certified(RootCertificate {
        basis: *basis,
        degree,
        scale,
        scaled_expansion: scaled,
        expansion,
    }))
}
