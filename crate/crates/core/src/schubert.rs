//! Schubert symbols for Grassmannians of classical type.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::LieType;

/// `Gr(m,n)`, `OG(m,2n+1)`, `SG(m,2n)` or `OG(m,2n)` according to `lie_type`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GrassmannianSpace {
    pub lie_type: LieType,
    pub m: usize,
    pub n: usize,
}

impl GrassmannianSpace {
    /// `m = 0` is accepted (a point); the command line rejects it.
    pub fn new(lie_type: LieType, m: usize, n: usize) -> Result<Self> {
        let min_n = if lie_type == LieType::D { 2 } else { 1 };
        if n < min_n {
            return Err(Error::input(format!("type {lie_type} needs n >= {min_n}, got n = {n}")));
        }
        if m > n {
            return Err(Error::input(format!("subspace dimension m = {m} exceeds n = {n}")));
        }
        Ok(GrassmannianSpace { lie_type, m, n })
    }

    pub fn type_a(m: usize, n: usize) -> Result<Self> {
        Self::new(LieType::A, m, n)
    }

    /// Dimension of the ambient vector space.
    #[allow(non_snake_case)]
    pub fn N(&self) -> usize {
        self.lie_type.ambient_dim(self.n)
    }

    pub fn dim(&self) -> usize {
        let (m, n) = (self.m, self.n);
        match self.lie_type {
            LieType::A => m * (n - m),
            LieType::B | LieType::C => 2 * m * (n - m) + m * (m + 1) / 2,
            LieType::D => 2 * m * (n - m) + m * m.saturating_sub(1) / 2,
        }
    }

    /// Largest legal degree of a special class.
    pub fn p_max(&self) -> usize {
        let free = self.N() - self.m;
        match self.lie_type {
            LieType::A | LieType::C => free,
            LieType::B | LieType::D => free.saturating_sub(1),
        }
    }

    pub fn check_p(&self, p: usize) -> Result<()> {
        if p > self.p_max() {
            return Err(Error::input(format!(
                "p = {p} out of range: {self} admits special classes of degree at most {}",
                self.p_max()
            )));
        }
        Ok(())
    }

    /// Validates and wraps `entries` as a symbol for this space.
    pub fn symbol(&self, entries: Vec<usize>) -> Result<SchubertSymbol> {
        let s = SchubertSymbol(entries);
        self.validate(&s)?;
        Ok(s)
    }

    pub fn validate(&self, s: &SchubertSymbol) -> Result<()> {
        let big_n = self.N();
        if s.len() != self.m {
            return Err(Error::input(format!(
                "symbol {s} has {} entries, {self} needs {}",
                s.len(),
                self.m
            )));
        }
        for (j, &x) in s.0.iter().enumerate() {
            if x < 1 || x > big_n {
                return Err(Error::input(format!("entry {x} of {s} is outside [1,{big_n}]")));
            }
            if j > 0 && s.0[j - 1] >= x {
                return Err(Error::input(format!("symbol {s} is not strictly increasing")));
            }
        }
        if self.lie_type.is_isotropic() {
            for (i, &a) in s.0.iter().enumerate() {
                for (j, &b) in s.0.iter().enumerate().skip(i) {
                    if a + b == big_n + 1 {
                        return Err(Error::input(format!(
                            "λ_{}+λ_{} = {} = N+1 violates isotropy in {s}",
                            i + 1,
                            j + 1,
                            big_n + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(&self, s: &SchubertSymbol) -> bool {
        self.validate(s).is_ok()
    }

    /// The symbol of the whole space (codimension 0); for `OG(n,2n)` the
    /// top cell of the component containing `{1..n}`.
    pub fn top_symbol(&self) -> SchubertSymbol {
        let big_n = self.N();
        let m = self.m;
        match self.lie_type {
            LieType::D if m == self.n => {
                // [n+1,2n] lies in the component of {1..n} iff n is even
                let mut v: Vec<usize> = (big_n + 1 - m..=big_n).collect();
                if m % 2 == 1 {
                    v[0] = self.n;
                }
                SchubertSymbol(v)
            }
            _ => SchubertSymbol((big_n + 1 - m..=big_n).collect()),
        }
    }
}

impl fmt::Display for GrassmannianSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.lie_type {
            LieType::A => write!(f, "Gr({},{})", self.m, self.n),
            LieType::B => write!(f, "OG({},{})", self.m, 2 * self.n + 1),
            LieType::C => write!(f, "SG({},{})", self.m, 2 * self.n),
            LieType::D => write!(f, "OG({},{})", self.m, 2 * self.n),
        }
    }
}

/// Strictly increasing 1-based subset of `[1,N]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SchubertSymbol(Vec<usize>);

impl SchubertSymbol {
    /// Sorts and deduplicates; validity against a space is checked separately.
    pub fn from_set<I: IntoIterator<Item = usize>>(items: I) -> Self {
        SchubertSymbol(items.into_iter().sorted().dedup().collect())
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, c: usize) -> bool {
        self.0.binary_search(&c).is_ok()
    }

    /// 1-based access; `get(0)` is 0 and `get(m+1)` is `big_n + 1`, the
    /// sentinels used by diagram definitions.
    pub fn padded(&self, j: usize, big_n: usize) -> usize {
        if j == 0 {
            0
        } else if j > self.0.len() {
            big_n + 1
        } else {
            self.0[j - 1]
        }
    }
}

impl fmt::Display for SchubertSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().join(","))
    }
}

impl FromStr for SchubertSymbol {
    type Err = Error;

    /// Parses `"2,4,8"` (braces and spaces tolerated); does not sort.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('{').trim_end_matches('}').trim();
        if body.is_empty() {
            return Ok(SchubertSymbol(Vec::new()));
        }
        body.split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::input(format!("malformed symbol entry '{}' in '{s}'", tok.trim())))
            })
            .collect::<Result<Vec<_>>>()
            .map(SchubertSymbol)
    }
}

pub fn codim(space: &GrassmannianSpace, lambda: &SchubertSymbol) -> Result<usize> {
    space.validate(lambda)?;
    let big_n = space.N();
    let e = lambda.entries();
    let mut sum: i64 = 0;
    for (j, &lj) in e.iter().enumerate() {
        let mut term = lj as i64 - (j as i64 + 1);
        let upto = match space.lie_type {
            LieType::A => 0,
            LieType::C => j,
            LieType::B | LieType::D => j + 1,
        };
        term -= e[..upto].iter().filter(|&&li| li + lj > big_n + 1).count() as i64;
        sum += term;
    }
    let c = space.dim() as i64 - sum;
    if c < 0 {
        return Err(Error::internal(format!("negative codimension for {lambda} in {space}")));
    }
    Ok(c as usize)
}

/// Componentwise order `λ ≤ μ`.
pub fn leq(lambda: &SchubertSymbol, mu: &SchubertSymbol) -> Result<bool> {
    if lambda.len() != mu.len() {
        return Err(Error::input(format!("cannot compare {lambda} and {mu}: sizes differ")));
    }
    Ok(lambda.entries().iter().zip(mu.entries()).all(|(a, b)| a <= b))
}

/// `[λ]`: λ together with the mirror images `N+1-c`.
pub fn closure(space: &GrassmannianSpace, lambda: &SchubertSymbol) -> Vec<usize> {
    let big_n = space.N();
    lambda
        .entries()
        .iter()
        .flat_map(|&c| [c, big_n + 1 - c])
        .sorted()
        .dedup()
        .collect()
}

/// Type of a type-D symbol: 0, 1 or 2.
pub fn type_of(space: &GrassmannianSpace, lambda: &SchubertSymbol) -> Result<u8> {
    if space.lie_type != LieType::D {
        return Err(Error::input(format!("type(λ) is only defined in type D, not for {space}")));
    }
    space.validate(lambda)?;
    let n = space.n;
    if !closure(space, lambda).contains(&n) {
        return Ok(0);
    }
    let missing = (1..=n).filter(|&c| !lambda.contains(c)).count();
    Ok(if missing % 2 == 0 { 1 } else { 2 })
}

/// Bruhat order `μ ⪯ λ`; coincides with [`leq`] outside type D.
pub fn preceq(space: &GrassmannianSpace, mu: &SchubertSymbol, lambda: &SchubertSymbol) -> Result<bool> {
    space.validate(mu)?;
    space.validate(lambda)?;
    if !leq(mu, lambda)? {
        return Ok(false);
    }
    if space.lie_type != LieType::D {
        return Ok(true);
    }
    let n = space.n;
    if space.m == n {
        // the two families of maximal isotropic subspaces are never comparable
        return Ok(type_of(space, lambda)? == type_of(space, mu)?);
    }
    let cl = closure(space, lambda);
    let cm = closure(space, mu);
    let pivot = (1..n).any(|c| {
        (c + 1..=n).all(|d| cl.contains(&d) && cm.contains(&d))
            && lambda.entries().iter().filter(|&&x| x <= c).count()
                == mu.entries().iter().filter(|&&x| x <= c).count()
    });
    if pivot {
        Ok(type_of(space, lambda)? == type_of(space, mu)?)
    } else {
        Ok(true)
    }
}

/// The order used for supports and vanishing: `⪯` in type D, `≤` otherwise.
pub fn bruhat_leq(space: &GrassmannianSpace, mu: &SchubertSymbol, lambda: &SchubertSymbol) -> Result<bool> {
    preceq(space, mu, lambda)
}

/// The special symbol `𝔰_p` and the integer `n_p`; `p = 0` gives a top cell.
pub fn special_symbol(space: &GrassmannianSpace, p: usize) -> Result<(SchubertSymbol, usize)> {
    space.check_p(p)?;
    let (m, n) = (space.m, space.n);
    let big_n = space.N();
    if m == 0 {
        return Ok((SchubertSymbol(Vec::new()), big_n + 1 - p));
    }
    let (n_p, tail_start, mirror) = match space.lie_type {
        LieType::A => {
            let n_p = n + 1 - m - p;
            let mut v = vec![n_p];
            v.extend(n + 2 - m..=n);
            return Ok((SchubertSymbol(v), n_p));
        }
        LieType::C => (2 * n + 1 - m - p, 2 * n + 2 - m, 2 * n + 1),
        LieType::B => {
            let n_p = if p + m <= n { 2 * n + 2 - m - p } else { 2 * n + 1 - m - p };
            (n_p, 2 * n + 3 - m, 2 * n + 2)
        }
        LieType::D => {
            let n_p = if p + m < n { 2 * n + 1 - m - p } else { 2 * n - m - p };
            // the second branch removes the mirror N+1-n_p of n_p
            (n_p, 2 * n + 2 - m, 2 * n + 1)
        }
    };
    let entries: Vec<usize> = if n_p > m - 1 {
        std::iter::once(n_p).chain(tail_start..=big_n).collect()
    } else {
        std::iter::once(n_p)
            .chain(tail_start - 1..=big_n)
            .filter(|&c| c != mirror - n_p)
            .collect()
    };
    let s = SchubertSymbol::from_set(entries);
    space.validate(&s).map_err(|e| Error::internal(format!("special symbol for p = {p}: {e}")))?;
    Ok((s, n_p))
}

/// All symbols of the space, ordered by codimension and then lexicographically.
pub fn enumerate_symbols(space: &GrassmannianSpace) -> Vec<SchubertSymbol> {
    (1..=space.N())
        .combinations(space.m)
        .map(SchubertSymbol)
        .filter(|s| space.is_valid(s))
        .map(|s| (codim(space, &s).expect("validated"), s))
        .sorted()
        .map(|(_, s)| s)
        .collect()
}

/// The diagram automorphism of type D: swaps the indices `n` and `n+1`.
pub fn involution(space: &GrassmannianSpace, lambda: &SchubertSymbol) -> SchubertSymbol {
    let n = space.n;
    SchubertSymbol::from_set(lambda.entries().iter().map(|&c| {
        if c == n {
            n + 1
        } else if c == n + 1 {
            n
        } else {
            c
        }
    }))
}
