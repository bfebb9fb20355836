//! Equivariant Pieri coefficients `N^μ_{λ,p}`.
//!
//! Every type reduces to type-A restriction coefficients on `Gr(m′, N)`
//! pushed through a specialization map, except the type D branch with
//! `Q = ∅` and `p ≥ n-m`, which is a type D restriction coefficient taken
//! from the localization engine.

use std::collections::BTreeMap;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::diagram::{self, RichardsonData};
use crate::error::{Error, Result};
use crate::gkm;
use crate::lie::LieType;
use crate::polyring::{root_positivity_certificate, Polynomial, Positivity, RootBasis, RootCertificate};
use crate::restrict_a::{bad_term_guard, restriction_coefficient, GuardOutcome, RestrictionInstance};
use crate::schubert::{self, GrassmannianSpace, SchubertSymbol};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SpecializationKind {
    /// Identity on `Gr(m,n)`.
    Identity,
    F,
    FB,
    FD,
    FDTilde,
}

/// Ring map `Z[t̂_1..t̂_N] → Z[t_1..t_n]` induced by the torus embedding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecializationMap {
    pub kind: SpecializationKind,
    pub n: usize,
}

impl SpecializationMap {
    pub fn new(kind: SpecializationKind, n: usize) -> Self {
        SpecializationMap { kind, n }
    }

    /// The map used for the plain special classes of `space`.
    pub fn for_space(space: &GrassmannianSpace) -> Self {
        let kind = match space.lie_type {
            LieType::A => SpecializationKind::Identity,
            LieType::B => SpecializationKind::FB,
            LieType::C => SpecializationKind::F,
            LieType::D => SpecializationKind::FD,
        };
        SpecializationMap::new(kind, space.n)
    }

    pub fn source_nvars(&self) -> usize {
        match self.kind {
            SpecializationKind::Identity => self.n,
            SpecializationKind::FB => 2 * self.n + 1,
            _ => 2 * self.n,
        }
    }

    /// Image of `t̂_i`, 1-based.
    pub fn image(&self, i: usize) -> Polynomial {
        let n = self.n;
        let t = |j: usize| Polynomial::var(n, j - 1);
        match self.kind {
            SpecializationKind::Identity => t(i),
            SpecializationKind::F | SpecializationKind::FD => {
                if i <= n {
                    t(i)
                } else {
                    -&t(2 * n + 1 - i)
                }
            }
            SpecializationKind::FB => match i.cmp(&(n + 1)) {
                std::cmp::Ordering::Less => t(i),
                std::cmp::Ordering::Equal => Polynomial::zero(n),
                std::cmp::Ordering::Greater => -&t(2 * n + 2 - i),
            },
            SpecializationKind::FDTilde => {
                let j = if i == n || i == n + 1 { 2 * n + 1 - i } else { i };
                SpecializationMap::new(SpecializationKind::FD, n).image(j)
            }
        }
    }

    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        if p.nvars() != self.source_nvars() {
            return Err(Error::internal(format!(
                "specialization expects {} variables, got {}",
                self.source_nvars(),
                p.nvars()
            )));
        }
        let images: Vec<Polynomial> = (1..=self.source_nvars()).map(|i| self.image(i)).collect();
        p.substitute(&images)
    }
}

/// `t_n ↦ -t_n`, the map relating plain and tilde coefficients.
pub fn flip_last(p: &Polynomial) -> Result<Polynomial> {
    let n = p.nvars();
    let images: Vec<Polynomial> = (0..n)
        .map(|i| {
            let v = Polynomial::var(n, i);
            if i + 1 == n {
                -&v
            } else {
                v
            }
        })
        .collect();
    p.substitute(&images)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// `λ → μ` fails or the degree is negative.
    Vanishing,
    /// Type A: a single restriction coefficient.
    Restriction,
    /// Sum over subsets of the quadric set.
    QuadricSum,
    /// Type B, `Q = ∅` and `p > n-m`: half of a specialized coefficient at `ν⁺`.
    Halving,
    /// Type D, `Q = ∅` and `p ≥ n-m`: a type D restriction coefficient.
    TypeDRestriction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProvenanceTerm {
    #[serde(rename = "I")]
    pub subset: Vec<usize>,
    pub nu: SchubertSymbol,
    pub unspecialized: Polynomial,
    pub specialized: Polynomial,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub guard: Option<GuardOutcome>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PieriCoefficient {
    pub space: GrassmannianSpace,
    pub lambda: SchubertSymbol,
    pub mu: SchubertSymbol,
    pub p: usize,
    pub tilde: bool,
    #[serde(rename = "coefficient")]
    pub value: Polynomial,
    pub route: Route,
    pub p_prime: Option<usize>,
    pub m_prime: Option<usize>,
    pub terms: Vec<ProvenanceTerm>,
    pub certificate: Option<RootCertificate>,
}

/// Optional overrides for the choices the formulas leave open.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PieriOptions {
    /// Element of `Q` dropped to form `Q′` (types B, D).
    pub chat: Option<usize>,
    /// Replacement for `Q` (type C).
    pub pivot: Option<Vec<usize>>,
}

pub fn pieri_coefficient(
    space: &GrassmannianSpace,
    lambda: &SchubertSymbol,
    mu: &SchubertSymbol,
    p: usize,
) -> Result<PieriCoefficient> {
    pieri_coefficient_with(space, lambda, mu, p, &PieriOptions::default())
}

pub fn pieri_coefficient_with_chat(
    space: &GrassmannianSpace,
    lambda: &SchubertSymbol,
    mu: &SchubertSymbol,
    p: usize,
    chat: usize,
) -> Result<PieriCoefficient> {
    let opts = PieriOptions { chat: Some(chat), pivot: None };
    pieri_coefficient_with(space, lambda, mu, p, &opts)
}

pub fn pieri_coefficient_with_pivot(
    space: &GrassmannianSpace,
    lambda: &SchubertSymbol,
    mu: &SchubertSymbol,
    p: usize,
    pivot: &[usize],
) -> Result<PieriCoefficient> {
    let opts = PieriOptions { chat: None, pivot: Some(pivot.to_vec()) };
    pieri_coefficient_with(space, lambda, mu, p, &opts)
}

fn check_degree(space: &GrassmannianSpace, p: usize) -> Result<()> {
    if p == 0 {
        return Err(Error::input("p = 0 out of range: special classes have degree at least 1"));
    }
    space.check_p(p)
}

/// `codim(μ) - codim(λ)` when `λ → μ` and `codim(μ) ≤ codim(λ) + p`.
fn admissible(
    space: &GrassmannianSpace,
    lambda: &SchubertSymbol,
    mu: &SchubertSymbol,
    p: usize,
) -> Result<Option<usize>> {
    if !diagram::arrow(space, lambda, mu)? {
        return Ok(None);
    }
    let (cl, cm) = (schubert::codim(space, lambda)?, schubert::codim(space, mu)?);
    if cm < cl || cm > cl + p {
        return Ok(None);
    }
    Ok(Some(cl + p - cm))
}

/// The stated condition for a nonzero coefficient,
/// together with admissibility.
pub fn expected_nonzero(
    space: &GrassmannianSpace,
    lambda: &SchubertSymbol,
    mu: &SchubertSymbol,
    p: usize,
) -> Result<bool> {
    check_degree(space, p)?;
    if admissible(space, lambda, mu, p)?.is_none() {
        return Ok(false);
    }
    let s = gkm::special_class_for(space, mu, p)?;
    schubert::bruhat_leq(space, mu, &s)
}

fn vanishing(space: &GrassmannianSpace, lambda: &SchubertSymbol, mu: &SchubertSymbol, p: usize, tilde: bool) -> PieriCoefficient {
    PieriCoefficient {
        space: *space,
        lambda: lambda.clone(),
        mu: mu.clone(),
        p,
        tilde,
        value: Polynomial::zero(space.n),
        route: Route::Vanishing,
        p_prime: None,
        m_prime: None,
        terms: Vec::new(),
        certificate: None,
    }
}

/// One specialized restriction coefficient on `Gr(#ν, N̂)`.
fn specialized_term(
    map: &SpecializationMap,
    subset: Vec<usize>,
    nu: SchubertSymbol,
    p_prime: usize,
) -> Result<ProvenanceTerm> {
    let inst = RestrictionInstance::new(map.source_nvars(), nu.clone(), p_prime)?;
    let guard = match map.kind {
        SpecializationKind::FD | SpecializationKind::FDTilde => {
            let g = bad_term_guard(&inst)?;
            if g == GuardOutcome::Violated {
                return Err(Error::internal(format!(
                    "restriction at {nu} (p′ = {p_prime}) contains the factor that specializes to ±2t_n"
                )));
            }
            Some(g)
        }
        _ => None,
    };
    let unspecialized = restriction_coefficient(&inst);
    let specialized = map.apply(&unspecialized)?;
    Ok(ProvenanceTerm { subset, nu, unspecialized, specialized, guard })
}

fn quadric_sum(
    data: &RichardsonData,
    map: &SpecializationMap,
    pivot: &[usize],
    p_prime: usize,
) -> Result<Vec<ProvenanceTerm>> {
    diagram::subsets(pivot)
        .into_par_iter()
        .map(|subset| {
            let nu = data.nu_for_pivot(pivot, &subset)?;
            if nu.len() != data.m_prime {
                return Err(Error::internal(format!("#ν_I = {} but m′ = {}", nu.len(), data.m_prime)));
            }
            specialized_term(map, subset, nu, p_prime)
        })
        .collect()
}

fn sum_terms(n: usize, terms: &[ProvenanceTerm]) -> Polynomial {
    terms.iter().fold(Polynomial::zero(n), |acc, t| &acc + &t.specialized)
}

fn validate_pivot(data: &RichardsonData, pivot: &[usize]) -> Result<Vec<usize>> {
    let sorted: Vec<usize> = pivot.iter().copied().sorted().dedup().collect();
    if sorted.len() != pivot.len() {
        return Err(Error::input(format!("pivot set {pivot:?} has repeated entries")));
    }
    if sorted.len() != data.q.len() {
        return Err(Error::input(format!(
            "pivot set {pivot:?} must have #Q = {} elements",
            data.q.len()
        )));
    }
    let big_n = data.space.N();
    if let Some(c) = sorted
        .iter()
        .find(|&&c| c < 1 || c > data.space.n || !data.nu.contains(&c) || !data.nu.contains(&(big_n + 1 - c)))
    {
        return Err(Error::input(format!(
            "pivot {c} needs c ≤ n and both c and N+1-c in ν = {:?}",
            data.nu
        )));
    }
    Ok(sorted)
}

/// `N^μ_{λ,p}` with explicit choices for `ĉ` or the pivot set.
pub fn pieri_coefficient_with(
    space: &GrassmannianSpace,
    lambda: &SchubertSymbol,
    mu: &SchubertSymbol,
    p: usize,
    opts: &PieriOptions,
) -> Result<PieriCoefficient> {
    check_degree(space, p)?;
    space.validate(lambda)?;
    space.validate(mu)?;
    if opts.pivot.is_some() && space.lie_type != LieType::C {
        return Err(Error::input("a pivot set is only meaningful in type C"));
    }
    if opts.chat.is_some() && !matches!(space.lie_type, LieType::B | LieType::D) {
        return Err(Error::input("ĉ is only meaningful in types B and D"));
    }
    let Some(p_prime) = admissible(space, lambda, mu, p)? else {
        return Ok(vanishing(space, lambda, mu, p, false));
    };
    let data = diagram::build_with_chat(space, lambda, mu, p, opts.chat)?;
    let map = SpecializationMap::for_space(space);
    let n = space.n;
    let (route, terms, value) = match space.lie_type {
        LieType::A => {
            let t = specialized_term(&map, Vec::new(), data.nu_symbol(), p_prime)?;
            let v = t.specialized.clone();
            (Route::Restriction, vec![t], v)
        }
        LieType::C => {
            let pivot = match &opts.pivot {
                Some(pv) => validate_pivot(&data, pv)?,
                None => data.q.clone(),
            };
            let terms = quadric_sum(&data, &map, &pivot, p_prime)?;
            let v = sum_terms(n, &terms);
            (Route::QuadricSum, terms, v)
        }
        LieType::B if data.q.is_empty() && p + space.m > n => {
            let nu_plus = data.nu_plus();
            if nu_plus.len() != data.m_prime + 1 {
                return Err(Error::internal(format!("#ν⁺ = {} but m′ + 1 = {}", nu_plus.len(), data.m_prime + 1)));
            }
            let t = specialized_term(&map, Vec::new(), nu_plus, p_prime)?;
            let v = t
                .specialized
                .div_scalar_exact(&2.into())
                .ok_or_else(|| Error::internal(format!("halving failed: {} is not divisible by 2", t.specialized)))?;
            (Route::Halving, vec![t], v)
        }
        LieType::D if data.q.is_empty() && p + space.m >= n => {
            let v = d_restriction(space, &data.nu_symbol(), p_prime, false)?;
            (Route::TypeDRestriction, Vec::new(), v)
        }
        LieType::B | LieType::D => {
            let terms = quadric_sum(&data, &map, &data.q_prime, p_prime)?;
            let v = sum_terms(n, &terms);
            (Route::QuadricSum, terms, v)
        }
    };
    finish(space, lambda, mu, p, false, p_prime, Some(data.m_prime), route, terms, value)
}

/// `N^ν_{ν,p′}(OG(#ν, 2n))`, or its tilde analogue at `ν` of `ι(𝔰_{p′})`.
fn d_restriction(space: &GrassmannianSpace, nu: &SchubertSymbol, p_prime: usize, tilde: bool) -> Result<Polynomial> {
    let sub = GrassmannianSpace::new(LieType::D, nu.len(), space.n)?;
    if !tilde {
        return gkm::type_d_restriction(&sub, nu, p_prime);
    }
    if p_prime == 0 {
        let reference = schubert::involution(&sub, &SchubertSymbol::from_set(1..=space.n));
        return gkm::degree_zero_restriction(&sub, nu, &reference);
    }
    let (s, _) = schubert::special_symbol(&sub, p_prime)?;
    gkm::billey_restriction(&sub, &schubert::involution(&sub, &s), nu)
}

#[allow(clippy::too_many_arguments)]
fn finish(
    space: &GrassmannianSpace,
    lambda: &SchubertSymbol,
    mu: &SchubertSymbol,
    p: usize,
    tilde: bool,
    p_prime: usize,
    m_prime: Option<usize>,
    route: Route,
    terms: Vec<ProvenanceTerm>,
    value: Polynomial,
) -> Result<PieriCoefficient> {
    let certificate = if value.is_zero() {
        None
    } else {
        if value.degree() != Some(p_prime as u32) || !value.is_homogeneous() {
            return Err(Error::internal(format!(
                "N^{mu}_{{{lambda},{p}}} = {value} is not homogeneous of degree {p_prime}"
            )));
        }
        let basis = RootBasis::new(space.lie_type, space.n)?;
        match root_positivity_certificate(&value, &basis)? {
            Positivity::Certified(c) => Some(c),
            Positivity::Failed(why) => {
                return Err(Error::internal(format!(
                    "N^{mu}_{{{lambda},{p}}} = {value} fails the positivity certificate: {why}"
                )));
            }
        }
    };
    Ok(PieriCoefficient {
        space: *space,
        lambda: lambda.clone(),
        mu: mu.clone(),
        p,
        tilde,
        value,
        route,
        p_prime: Some(p_prime),
        m_prime,
        terms,
        certificate,
    })
}

/// Coefficient of `[X_μ]` in `[X_λ]·[X̃_{n-m}]` on `OG(m,2n)`.
pub fn pieri_coefficient_tilde(
    space: &GrassmannianSpace,
    lambda: &SchubertSymbol,
    mu: &SchubertSymbol,
) -> Result<PieriCoefficient> {
    if space.lie_type != LieType::D {
        return Err(Error::input(format!("the tilde special class exists only in type D, not on {space}")));
    }
    if space.m >= space.n {
        return Err(Error::input(format!("the tilde special class needs m < n, got {space}")));
    }
    space.validate(lambda)?;
    space.validate(mu)?;
    let p = space.n - space.m;
    let lt = schubert::involution(space, lambda);
    let mt = schubert::involution(space, mu);
    let Some(p_prime) = admissible(space, &lt, &mt, p)? else {
        return Ok(vanishing(space, lambda, mu, p, true));
    };
    let data = diagram::build(space, &lt, &mt, p)?;
    let (route, terms, value) = if data.q.is_empty() {
        let nu = schubert::involution(&GrassmannianSpace::new(LieType::D, data.nu.len(), space.n)?, &data.nu_symbol());
        let v = d_restriction(space, &nu, p_prime, true)?;
        (Route::TypeDRestriction, Vec::new(), v)
    } else {
        let map = SpecializationMap::new(SpecializationKind::FDTilde, space.n);
        let terms = quadric_sum(&data, &map, &data.q_prime, p_prime)?;
        let v = sum_terms(space.n, &terms);
        (Route::QuadricSum, terms, v)
    };
    finish(space, lambda, mu, p, true, p_prime, Some(data.m_prime), route, terms, value)
}

/// Candidate `μ` for `λ → μ`: `λ_{j-1} ≤ μ_j ≤ λ_j`, so each entry ranges
/// over a window between consecutive entries of `λ`. Type D also allows
/// `μ_j = n` below `λ_{j-1} = n+1`.
fn arrow_candidates(space: &GrassmannianSpace, lambda: &SchubertSymbol) -> Vec<SchubertSymbol> {
    let l = lambda.entries();
    if l.is_empty() {
        return vec![lambda.clone()];
    }
    let n = space.n;
    (0..l.len())
        .map(|j| {
            let lo = match j {
                0 => 1,
                _ if space.lie_type == LieType::D && l[j - 1] == n + 1 => n,
                _ => l[j - 1],
            };
            lo..=l[j]
        })
        .multi_cartesian_product()
        .filter(|v| v.windows(2).all(|w| w[0] < w[1]))
        .map(SchubertSymbol::from_set)
        .filter(|s| space.is_valid(s))
        .collect()
}

/// All nonzero `N^μ_{λ,p}` in the expansion of `[X_λ]·[X_p]`.
pub fn pieri_product(
    space: &GrassmannianSpace,
    lambda: &SchubertSymbol,
    p: usize,
) -> Result<BTreeMap<SchubertSymbol, PieriCoefficient>> {
    pieri_product_with(space, lambda, p, false)
}

/// As [`pieri_product`], multiplying by `[X̃_{n-m}]` when `tilde` is set.
pub fn pieri_product_with(
    space: &GrassmannianSpace,
    lambda: &SchubertSymbol,
    p: usize,
    tilde: bool,
) -> Result<BTreeMap<SchubertSymbol, PieriCoefficient>> {
    space.validate(lambda)?;
    if tilde {
        if space.lie_type != LieType::D || space.m >= space.n {
            return Err(Error::input(format!("the tilde special class is not defined on {space}")));
        }
        if p != space.n - space.m {
            return Err(Error::input(format!("the tilde special class has degree n-m = {}", space.n - space.m)));
        }
    } else {
        check_degree(space, p)?;
    }
    let candidates = if tilde {
        arrow_candidates(space, &schubert::involution(space, lambda))
            .into_iter()
            .map(|m| schubert::involution(space, &m))
            .collect()
    } else {
        arrow_candidates(space, lambda)
    };
    let results: Vec<PieriCoefficient> = candidates
        .into_par_iter()
        .map(|mu| {
            if tilde {
                pieri_coefficient_tilde(space, lambda, &mu)
            } else {
                pieri_coefficient(space, lambda, &mu, p)
            }
        })
        .collect::<Result<_>>()?;
    Ok(results
        .into_iter()
        .filter(|c| !c.value.is_zero())
        .map(|c| (c.mu.clone(), c))
        .collect())
}

#[cfg(test)]
mod tests;
