//! Restrictions of special Schubert classes of `Gr(m,N)` to fixed points.
//!
//! For a fixed point `ν` and degree `p` put `I_1 = [1, N-m-p+1]`,
//! `a = I_1 ∩ ν` (length `r`) and `b = I_2 ∖ ν` (length `p+r-1`), where `I_2`
//! is the rest of `[1,N]`. The restriction is the sum over
//! `1 ≤ c_1 < ... < c_p ≤ p+r-1` of `Π_i (t_{b[c_i]} - t_{a[c_i-i+1]})`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyring::Polynomial;
use crate::schubert::SchubertSymbol;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RestrictionInstance {
    pub big_n: usize,
    pub nu: SchubertSymbol,
    pub p: usize,
    /// `I_1 = [1, i1_end]`; meaningless when the instance vanishes.
    i1_end: usize,
    a: Vec<usize>,
    b: Vec<usize>,
    vanishes: bool,
}

impl RestrictionInstance {
    pub fn new(big_n: usize, nu: SchubertSymbol, p: usize) -> Result<Self> {
        let e = nu.entries();
        if e.windows(2).any(|w| w[0] >= w[1]) || e.iter().any(|&c| c < 1 || c > big_n) {
            return Err(Error::input(format!("{nu} is not a Schubert symbol for Gr({},{big_n})", e.len())));
        }
        let m = e.len();
        // ν ≤ 𝔰_p iff the first entry fits below n_p = N+1-m-p
        let vanishes = p > 0 && (m == 0 || m + p > big_n || e[0] > big_n + 1 - m - p);
        let (i1_end, a, b) = if vanishes || p == 0 {
            (0, Vec::new(), Vec::new())
        } else {
            let i1_end = big_n + 1 - m - p;
            let a: Vec<usize> = e.iter().copied().filter(|&c| c <= i1_end).collect();
            let b: Vec<usize> = (i1_end + 1..=big_n).filter(|c| !nu.contains(*c)).collect();
            if a.is_empty() || b.len() != p + a.len() - 1 {
                return Err(Error::internal(format!(
                    "restriction data for {nu}, p = {p}: r = {}, #b = {}",
                    a.len(),
                    b.len()
                )));
            }
            (i1_end, a, b)
        };
        Ok(RestrictionInstance {
            big_n,
            nu,
            p,
            i1_end,
            a,
            b,
            vanishes,
        })
    }

    pub fn vanishes(&self) -> bool {
        self.vanishes
    }

    pub fn a(&self) -> &[usize] {
        &self.a
    }

    pub fn b(&self) -> &[usize] {
        &self.b
    }

    pub fn r(&self) -> usize {
        self.a.len()
    }

    fn hat(&self, c: usize) -> Polynomial {
        Polynomial::var(self.big_n, c - 1)
    }
}

/// `Σ_{c_1<…<c_p ≤ p+r-1} Π_i factor(i, c_i)` with 1-based `i` and `c`,
/// computed row by row with prefix sums.
fn sequence_sum<F>(nvars: usize, p: usize, r: usize, factor: F) -> Polynomial
where
    F: Fn(usize, usize) -> Polynomial,
{
    if p == 0 {
        return Polynomial::one(nvars);
    }
    // row[c] for c in i..=i+r-1 holds the sum over sequences with c_i = c
    let mut row: Vec<Polynomial> = (1..=r).map(|c| factor(1, c)).collect();
    for i in 2..=p {
        let mut next = Vec::with_capacity(r);
        let mut prefix = Polynomial::zero(nvars);
        for (k, prev) in row.iter().enumerate() {
            // c_i = i + k needs c_{i-1} ≤ i - 1 + k
            prefix += prev;
            next.push(&prefix * &factor(i, i + k));
        }
        row = next;
    }
    row.iter().fold(Polynomial::zero(nvars), |acc, x| &acc + x)
}

/// The restriction coefficient as a polynomial in `t̂_1..t̂_N`.
pub fn restriction_coefficient(inst: &RestrictionInstance) -> Polynomial {
    if inst.vanishes {
        return Polynomial::zero(inst.big_n);
    }
    sequence_sum(inst.big_n, inst.p, inst.r(), |i, c| {
        &inst.hat(inst.b[c - 1]) - &inst.hat(inst.a[c - i])
    })
}

/// `e_0..e_k` of the given linear forms.
fn elementary(vars: &[Polynomial], k: usize, nvars: usize) -> Vec<Polynomial> {
    let mut e = vec![Polynomial::zero(nvars); k + 1];
    e[0] = Polynomial::one(nvars);
    for v in vars {
        for j in (1..=k).rev() {
            let add = &e[j - 1] * v;
            e[j] += &add;
        }
    }
    e
}

/// `h_0..h_k` of the given linear forms.
fn complete(vars: &[Polynomial], k: usize, nvars: usize) -> Vec<Polynomial> {
    let mut h = vec![Polynomial::zero(nvars); k + 1];
    h[0] = Polynomial::one(nvars);
    for v in vars {
        for j in 1..=k {
            let add = &h[j - 1] * v;
            h[j] += &add;
        }
    }
    h
}

/// `Σ_k e_k(t̂_b) h_{p-k}(-t̂_a)`.
pub fn restriction_coefficient_symfn(inst: &RestrictionInstance) -> Polynomial {
    let nv = inst.big_n;
    if inst.vanishes {
        return Polynomial::zero(nv);
    }
    let p = inst.p;
    let ys: Vec<Polynomial> = inst.b.iter().map(|&c| inst.hat(c)).collect();
    let xs: Vec<Polynomial> = inst.a.iter().map(|&c| -&inst.hat(c)).collect();
    let e = elementary(&ys, p, nv);
    let h = complete(&xs, p, nv);
    (0..=p).fold(Polynomial::zero(nv), |acc, k| &acc + &(&e[k] * &h[p - k]))
}

/// Checks the identity
/// `Σ_j Π_i (y_i - x_j) / Π_{i≠j} (x_i - x_j) = Σ_{c} Π_i (y_{c_i} - x_{c_i-i+1})`
/// at integer points, the left side in exact rationals.
pub fn schur_identity_check(x: &[i64], y: &[i64]) -> Result<bool> {
    let r = x.len();
    if r == 0 {
        return Err(Error::input("schur identity needs at least one x value"));
    }
    if y.len() + 1 < r {
        return Err(Error::input(format!("need at least r-1 = {} y values, got {}", r - 1, y.len())));
    }
    for i in 0..r {
        for j in 0..i {
            if x[i] == x[j] {
                return Err(Error::input(format!("x values must be distinct; x_{} = x_{} = {}", j + 1, i + 1, x[i])));
            }
        }
    }
    let p = y.len() + 1 - r;

    let mut lhs = BigRational::zero();
    for j in 0..r {
        let num: BigInt = y.iter().map(|&yi| BigInt::from(yi - x[j])).product();
        let den: BigInt = (0..r)
            .filter(|&i| i != j)
            .map(|i| BigInt::from(x[i] - x[j]))
            .product();
        lhs += BigRational::new(num, den);
    }

    // right side: the sequence sum as a polynomial in x and y, then evaluated
    let nv = r + y.len();
    let xv = |j: usize| Polynomial::var(nv, j - 1);
    let yv = |i: usize| Polynomial::var(nv, r + i - 1);
    let rhs_poly = sequence_sum(nv, p, r, |i, c| &yv(c) - &xv(c - i + 1));
    let point: Vec<BigInt> = x.iter().chain(y).map(|&v| BigInt::from(v)).collect();
    let rhs = rhs_poly.evaluate(&point)?;
    Ok(lhs == BigRational::from_integer(rhs))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GuardOutcome {
    /// No factor equals `t̂_{n+1} - t̂_n`.
    Clean,
    /// The factor occurs, in the exceptional case `I_1 = [1,n]`, `I_1 ∩ ν = {n}`.
    Flagged,
    /// The factor occurs outside the exceptional case.
    Violated,
}

/// Scans every factor that occurs in some summand for `t̂_{n+1} - t̂_n`,
/// where `N = 2n`.
pub fn bad_term_guard(inst: &RestrictionInstance) -> Result<GuardOutcome> {
    if !inst.big_n.is_multiple_of(2) {
        return Err(Error::input(format!("bad-term guard needs even N, got {}", inst.big_n)));
    }
    let n = inst.big_n / 2;
    if inst.vanishes || inst.p == 0 {
        return Ok(GuardOutcome::Clean);
    }
    let r = inst.r();
    let hit = (1..=inst.p).any(|i| (i..i + r).any(|c| inst.b[c - 1] == n + 1 && inst.a[c - i] == n));
    if !hit {
        Ok(GuardOutcome::Clean)
    } else if inst.i1_end == n && inst.a == [n] {
        Ok(GuardOutcome::Flagged)
    } else {
        Ok(GuardOutcome::Violated)
    }
}
