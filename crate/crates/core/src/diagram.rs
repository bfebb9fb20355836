//! Richardson diagrams `D(λ,μ)` and the index sets read off from them.
//!
//! Nothing here materializes the star matrix except [`render`]; every set is
//! computed from the entries of `λ` and `μ` directly.

use std::fmt::Write as _;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::LieType;
use crate::schubert::{self, GrassmannianSpace, SchubertSymbol};

/// Mirror offset used in condition (3) of the arrow relation: a doubled
/// column `c` must be matched by a single star in column `offset - c`.
fn arrow_mirror(space: &GrassmannianSpace) -> usize {
    space.N() + 1
}

/// The relation `λ → μ`.
pub fn arrow(space: &GrassmannianSpace, lambda: &SchubertSymbol, mu: &SchubertSymbol) -> Result<bool> {
    space.validate(lambda)?;
    space.validate(mu)?;
    let m = space.m;
    let n = space.n;
    let l = lambda.entries();
    let u = mu.entries();
    let base = match space.lie_type {
        LieType::D => schubert::preceq(space, mu, lambda)?,
        _ => schubert::leq(mu, lambda)?,
    };
    if !base {
        return Ok(false);
    }
    for i in 0..m.saturating_sub(1) {
        let (li, ui1) = (l[i], u[i + 1]);
        match space.lie_type {
            LieType::A => {
                if li >= ui1 {
                    return Ok(false);
                }
            }
            LieType::B | LieType::C | LieType::D => {
                let exempt = space.lie_type == LieType::D && li == n + 1 && ui1 == n;
                if li > ui1 && !exempt {
                    return Ok(false);
                }
                if li == ui1 {
                    if space.lie_type == LieType::D && (li == n || li == n + 1) {
                        return Ok(false);
                    }
                    let target = arrow_mirror(space) - li;
                    if !(0..m).any(|j| u[j] < target && target < l[j]) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RichardsonData {
    pub space: GrassmannianSpace,
    pub lambda: SchubertSymbol,
    pub mu: SchubertSymbol,
    pub p: usize,
    pub zero_columns: Vec<usize>,
    /// Cuts in `[0,N]`; empty in type A.
    pub cuts: Vec<usize>,
    pub l: Vec<usize>,
    pub q: Vec<usize>,
    pub q_prime: Vec<usize>,
    /// The element removed from `Q` to form `Q′`, if any.
    pub c_hat: Option<usize>,
    pub nu: Vec<usize>,
    pub m_prime: usize,
}

/// Builds the diagram data with `ĉ = min Q`.
pub fn build(
    space: &GrassmannianSpace,
    lambda: &SchubertSymbol,
    mu: &SchubertSymbol,
    p: usize,
) -> Result<RichardsonData> {
    build_with_chat(space, lambda, mu, p, None)
}

/// Builds the diagram data, removing `chat` (which must lie in `Q`) when
/// `Q′` is a proper subset of `Q`.
pub fn build_with_chat(
    space: &GrassmannianSpace,
    lambda: &SchubertSymbol,
    mu: &SchubertSymbol,
    p: usize,
    chat: Option<usize>,
) -> Result<RichardsonData> {
    space.check_p(p)?;
    space.validate(lambda)?;
    space.validate(mu)?;
    if space.lie_type == LieType::A {
        if !schubert::leq(mu, lambda)? {
            return Err(Error::precondition(format!("{mu} ≤ {lambda} fails")));
        }
    } else if !arrow(space, lambda, mu)? {
        return Err(Error::precondition(format!("{lambda} → {mu} fails in {space}")));
    }

    let (m, n, big_n) = (space.m, space.n, space.N());
    let lam = |j: usize| lambda.padded(j, big_n);
    let mu_ = |j: usize| mu.padded(j, big_n);

    let zero_columns: Vec<usize> = (1..=big_n)
        .filter(|&c| (0..=m).any(|j| lam(j) < c && c < mu_(j + 1)))
        .collect();

    let is_cut = |c: usize| {
        (0..=m).any(|j| {
            let (a, b) = (lam(j), mu_(j + 1));
            (a <= c && c < b) || (a <= big_n - c && big_n - c < b)
        })
    };
    let cuts: Vec<usize> = if space.lie_type == LieType::A {
        Vec::new()
    } else {
        (0..=big_n).filter(|&c| is_cut(c)).collect()
    };

    let mut l = zero_columns.clone();
    match space.lie_type {
        LieType::A => {}
        LieType::B | LieType::C => {
            for j in 1..=m {
                if lam(j) == mu_(j) {
                    l.push(big_n + 1 - lam(j));
                }
            }
        }
        LieType::D => {
            for j in 1..=m {
                if lam(j) == mu_(j) {
                    l.push(big_n + 1 - lam(j));
                }
                if lam(j) == n + 1 && n + 1 < mu_(j + 1) {
                    l.push(n);
                }
                if mu_(j) == n && n > lam(j - 1) {
                    l.push(n + 1);
                }
            }
        }
    }
    let l: Vec<usize> = l.into_iter().sorted().dedup().collect();

    let q: Vec<usize> = match space.lie_type {
        LieType::A => Vec::new(),
        LieType::C => (2..=n).filter(|&c| is_cut(c) && !is_cut(c - 1)).collect(),
        LieType::B => (2..=n + 1)
            .filter(|&c| !is_cut(c - 1) && (is_cut(c) || c == n + 1))
            .collect(),
        LieType::D => (2..=n)
            .filter(|&c| !is_cut(c - 1) && (is_cut(c) || c == n))
            .collect(),
    };

    let drops = !q.is_empty()
        && match space.lie_type {
            LieType::B => p + m > n,
            LieType::D => p + m >= n,
            _ => false,
        };
    let (q_prime, c_hat) = if drops {
        let c = match chat {
            Some(c) if q.contains(&c) => c,
            Some(c) => {
                return Err(Error::input(format!("ĉ = {c} is not an element of Q = {q:?}")));
            }
            None => q[0],
        };
        (q.iter().copied().filter(|&x| x != c).collect(), Some(c))
    } else {
        (q.clone(), None)
    };

    let nu: Vec<usize> = (1..=big_n).filter(|c| l.binary_search(c).is_err()).collect();
    let m_prime = big_n
        .checked_sub(l.len() + q_prime.len())
        .ok_or_else(|| Error::internal("negative m′"))?;

    Ok(RichardsonData {
        space: *space,
        lambda: lambda.clone(),
        mu: mu.clone(),
        p,
        zero_columns,
        cuts,
        l,
        q,
        q_prime,
        c_hat,
        nu,
        m_prime,
    })
}

impl RichardsonData {
    pub fn is_cut(&self, c: usize) -> bool {
        self.cuts.binary_search(&c).is_ok()
    }

    /// `ν` as a symbol for `Gr(#ν, N)`.
    pub fn nu_symbol(&self) -> SchubertSymbol {
        SchubertSymbol::from_set(self.nu.iter().copied())
    }

    /// `ν_I = ν ∖ (I ∪ {N+1-c : c ∈ Q′ ∖ I})`.
    pub fn nu_i(&self, subset: &[usize]) -> Result<SchubertSymbol> {
        self.nu_for_pivot(&self.q_prime, subset)
    }

    /// As [`nu_i`](Self::nu_i) with `pivot` in place of `Q′`.
    pub fn nu_for_pivot(&self, pivot: &[usize], subset: &[usize]) -> Result<SchubertSymbol> {
        if let Some(c) = subset.iter().find(|c| !pivot.contains(c)) {
            return Err(Error::input(format!("{c} is not in the quadric set {pivot:?}")));
        }
        let big_n = self.space.N();
        let removed: Vec<usize> = subset
            .iter()
            .copied()
            .chain(pivot.iter().filter(|c| !subset.contains(c)).map(|c| big_n + 1 - c))
            .collect();
        Ok(SchubertSymbol::from_set(
            self.nu.iter().copied().filter(|c| !removed.contains(c)),
        ))
    }

    /// `ν⁺ = ν ∪ {n+1}` (type B).
    pub fn nu_plus(&self) -> SchubertSymbol {
        SchubertSymbol::from_set(self.nu.iter().copied().chain([self.space.n + 1]))
    }

    /// Subsets of `Q′` in a fixed order (by size, then lexicographic).
    pub fn q_prime_subsets(&self) -> Vec<Vec<usize>> {
        subsets(&self.q_prime)
    }

    /// Legal alternatives to `Q` in type C: subsets of
    /// `{c ≤ n : c, N+1-c ∈ ν}` of size `#Q`.
    pub fn pivot_candidates(&self) -> Vec<Vec<usize>> {
        let big_n = self.space.N();
        let pool: Vec<usize> = (1..=self.space.n)
            .filter(|&c| self.nu.contains(&c) && self.nu.contains(&(big_n + 1 - c)))
            .collect();
        pool.into_iter().combinations(self.q.len()).collect()
    }
}

pub fn subsets(items: &[usize]) -> Vec<Vec<usize>> {
    (0..=items.len())
        .flat_map(|k| items.iter().copied().combinations(k))
        .collect()
}

/// Star/zero picture of `D(λ,μ)` with `|` after every interior cut column.
pub fn render(data: &RichardsonData) -> String {
    let big_n = data.space.N();
    let mut out = String::new();
    for (&lo, &hi) in data.mu.entries().iter().zip(data.lambda.entries()) {
        for c in 1..=big_n {
            out.push(if lo <= c && c <= hi { '*' } else { '0' });
            if c < big_n {
                out.push_str(if data.is_cut(c) { " | " } else { " " });
            }
        }
        out.push('\n');
    }
    let _ = writeln!(
        out,
        "cuts {:?}  L {:?}  Q {:?}  Q' {:?}  nu {:?}  m' {}",
        data.cuts, data.l, data.q, data.q_prime, data.nu, data.m_prime
    );
    out
}
