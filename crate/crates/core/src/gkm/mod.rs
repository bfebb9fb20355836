//! Fixed-point localization for Grassmannians of classical type.
//!
//! A Schubert symbol `λ` is identified with the signed set of weights of the
//! fixed point `Σ_λ`: index `c ≤ n` carries `+c` and index `c` in the upper
//! half carries `-(N+1-c)`. The class of `X_λ` restricted to `Σ_ν` is
//! `w_0 · ξ^u(v)`, where `u` and `v` are the minimal coset representatives
//! of `w_0 λ` and `w_0 ν` and `ξ` is evaluated by [`WeylGroup::billey`]. The
//! twist by `w_0` converts the opposite Schubert classes computed by the
//! subword formula into classes of the `B`-stable varieties `X_λ`.

pub mod weyl;

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::LieType;
use crate::polyring::Polynomial;
use crate::schubert::{self, GrassmannianSpace, SchubertSymbol};

pub use weyl::{WeylElement, WeylGroup};

pub fn weyl_group(space: &GrassmannianSpace) -> WeylGroup {
    WeylGroup::new(space.lie_type, space.n)
}

fn index_to_signed(space: &GrassmannianSpace, c: usize) -> i32 {
    let n = space.n;
    match space.lie_type {
        LieType::A => c as i32,
        _ if c <= n => c as i32,
        _ => -((space.N() + 1 - c) as i32),
    }
}

fn signed_to_index(space: &GrassmannianSpace, v: i32) -> usize {
    if v > 0 {
        v as usize
    } else {
        space.N() + 1 - v.unsigned_abs() as usize
    }
}

/// Connected component of a symbol: 1 or 2 for `OG(n,2n)`, 0 otherwise.
pub fn component(space: &GrassmannianSpace, lambda: &SchubertSymbol) -> Result<u8> {
    if space.lie_type == LieType::D && space.m == space.n {
        schubert::type_of(space, lambda)
    } else {
        space.validate(lambda)?;
        Ok(0)
    }
}

/// Signed weights of the base point of the given component.
fn base_point(space: &GrassmannianSpace, comp: u8) -> Vec<i32> {
    let m = space.m as i32;
    let mut base: Vec<i32> = (1..=m).collect();
    if comp == 2 {
        base[space.m - 1] = -m;
    }
    base
}

fn stabilizer_generators(group: &WeylGroup, base: &[i32]) -> Vec<usize> {
    let mut sorted = base.to_vec();
    sorted.sort_unstable();
    (1..=group.num_simple())
        .filter(|&i| {
            let s = group.simple_reflection(i);
            let mut img: Vec<i32> = base.iter().map(|&x| s.apply_signed(x)).collect();
            img.sort_unstable();
            img == sorted
        })
        .collect()
}

/// Minimal-length element sending the base point of its component onto the
/// signed set `target`.
fn min_rep_signed(space: &GrassmannianSpace, group: &WeylGroup, target: &[i32]) -> WeylElement {
    let n = space.n;
    let negatives = target.iter().filter(|&&x| x < 0).count();
    let comp = if space.lie_type == LieType::D && space.m == n {
        if negatives % 2 == 0 {
            1
        } else {
            2
        }
    } else {
        0
    };
    let base = base_point(space, comp);
    let mut perm = vec![0i32; n];
    let mut used = vec![false; n + 1];
    for (&b, &t) in base.iter().zip(target) {
        perm[b.unsigned_abs() as usize - 1] = if b > 0 { t } else { -t };
        used[t.unsigned_abs() as usize] = true;
    }
    let mut free = (1..=n).filter(|&a| !used[a]);
    for slot in perm.iter_mut().filter(|s| **s == 0) {
        *slot = free.next().expect("enough free values") as i32;
    }
    if space.lie_type == LieType::D && perm.iter().filter(|&&x| x < 0).count() % 2 == 1 {
        let pos = perm
            .iter()
            .position(|&x| x > 0 && !target.contains(&x))
            .expect("a free slot fixes the sign parity");
        perm[pos] = -perm[pos];
    }
    let mut w = group.element(perm).expect("valid signed permutation");
    let gens = stabilizer_generators(group, &base);
    while let Some(&i) = gens.iter().find(|&&i| group.has_right_descent(&w, i)) {
        w = group.right_mul_simple(&w, i);
    }
    w
}

fn signed_set(space: &GrassmannianSpace, lambda: &SchubertSymbol) -> Vec<i32> {
    lambda.entries().iter().map(|&c| index_to_signed(space, c)).collect()
}

/// Minimal coset representative `w` with `w(Σ_base) = Σ_λ`.
pub fn symbol_to_weyl(space: &GrassmannianSpace, lambda: &SchubertSymbol) -> Result<WeylElement> {
    space.validate(lambda)?;
    let group = weyl_group(space);
    Ok(min_rep_signed(space, &group, &signed_set(space, lambda)))
}

/// Image of a symbol under a Weyl group element.
fn act_on_symbol(space: &GrassmannianSpace, w: &WeylElement, lambda: &SchubertSymbol) -> SchubertSymbol {
    SchubertSymbol::from_set(
        lambda
            .entries()
            .iter()
            .map(|&c| signed_to_index(space, w.apply_signed(index_to_signed(space, c)))),
    )
}

/// Per-space data shared by all restrictions.
struct Twist {
    group: WeylGroup,
    w0: WeylElement,
}

impl Twist {
    fn new(space: &GrassmannianSpace) -> Self {
        let group = weyl_group(space);
        let w0 = group.longest();
        Twist { group, w0 }
    }

    fn rep(&self, space: &GrassmannianSpace, lambda: &SchubertSymbol) -> WeylElement {
        let twisted = act_on_symbol(space, &self.w0, lambda);
        min_rep_signed(space, &self.group, &signed_set(space, &twisted))
    }

    fn restrict(&self, class_rep: &WeylElement, point_rep: &WeylElement) -> Polynomial {
        let xi = self.group.billey(class_rep, point_rep);
        self.group.act_polynomial(&self.w0, &xi)
    }
}

/// `[X_class]|_{Σ_point}` as a polynomial in `t_1..t_n`.
pub fn billey_restriction(
    space: &GrassmannianSpace,
    class: &SchubertSymbol,
    point: &SchubertSymbol,
) -> Result<Polynomial> {
    space.validate(class)?;
    space.validate(point)?;
    if component(space, class)? != component(space, point)? {
        return Ok(Polynomial::zero(space.n));
    }
    let tw = Twist::new(space);
    Ok(tw.restrict(&tw.rep(space, class), &tw.rep(space, point)))
}

/// The special symbol of degree `p` used as a class for points of `λ`'s
/// component; on `OG(n,2n)` the involution supplies the other component.
pub fn special_class_for(space: &GrassmannianSpace, lambda: &SchubertSymbol, p: usize) -> Result<SchubertSymbol> {
    let (s, _) = schubert::special_symbol(space, p)?;
    if component(space, &s)? == component(space, lambda)? {
        Ok(s)
    } else {
        Ok(schubert::involution(space, &s))
    }
}

/// `N^ν_{ν,p}(OG(m,2n))`: the special class of degree `p` restricted to `ν`.
pub fn type_d_restriction(space: &GrassmannianSpace, nu: &SchubertSymbol, p: usize) -> Result<Polynomial> {
    if space.lie_type != LieType::D {
        return Err(Error::input(format!("type D restriction requested on {space}")));
    }
    space.validate(nu)?;
    if p == 0 {
        let reference = SchubertSymbol::from_set(1..=space.n);
        return degree_zero_restriction(space, nu, &reference);
    }
    let class = special_class_for(space, nu, p)?;
    billey_restriction(space, &class, nu)
}

/// Degree-zero restriction at `ν` for the locus of `m`-planes meeting the
/// maximal isotropic space spanned by `reference`.
///
/// For `m < n` this is the fundamental class. On `OG(n,2n)` it is the
/// intersection number of the two maximal isotropic spaces in the quadric
/// `OG(1,2n)`: 1 exactly when they generically meet in a line, which happens
/// for equal components when `n` is odd and for opposite ones when `n` is even.
pub fn degree_zero_restriction(
    space: &GrassmannianSpace,
    nu: &SchubertSymbol,
    reference: &SchubertSymbol,
) -> Result<Polynomial> {
    if space.lie_type != LieType::D || space.m < space.n {
        return Ok(Polynomial::one(space.n));
    }
    let same = component(space, nu)? == component(space, reference)?;
    Ok(if same == (space.n % 2 == 1) {
        Polynomial::one(space.n)
    } else {
        Polynomial::zero(space.n)
    })
}

/// Tuple of fixed-point restrictions, indexed like [`Localization::symbols`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GkmVector(pub Vec<Polynomial>);

impl GkmVector {
    pub fn pointwise_mul(&self, other: &GkmVector) -> GkmVector {
        GkmVector(self.0.iter().zip(&other.0).map(|(a, b)| a * b).collect())
    }
}

/// Localization data for one space. Class vectors are computed on demand
/// and cached for the lifetime of the value.
pub struct Localization {
    space: GrassmannianSpace,
    twist: Twist,
    symbols: Vec<SchubertSymbol>,
    index: HashMap<SchubertSymbol, usize>,
    codims: Vec<usize>,
    reps: Vec<WeylElement>,
    components: Vec<u8>,
    classes: Vec<OnceLock<GkmVector>>,
}

impl Localization {
    pub fn new(space: &GrassmannianSpace) -> Self {
        let symbols = schubert::enumerate_symbols(space);
        let twist = Twist::new(space);
        let index = symbols.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let codims = symbols.iter().map(|s| schubert::codim(space, s).expect("enumerated")).collect();
        let reps = symbols.iter().map(|s| twist.rep(space, s)).collect();
        let components = symbols.iter().map(|s| component(space, s).expect("enumerated")).collect();
        let classes = symbols.iter().map(|_| OnceLock::new()).collect();
        Localization {
            space: *space,
            twist,
            symbols,
            index,
            codims,
            reps,
            components,
            classes,
        }
    }

    pub fn space(&self) -> &GrassmannianSpace {
        &self.space
    }

    /// Fixed points ordered by codimension, then lexicographically.
    pub fn symbols(&self) -> &[SchubertSymbol] {
        &self.symbols
    }

    pub fn codims(&self) -> &[usize] {
        &self.codims
    }

    pub fn index_of(&self, s: &SchubertSymbol) -> Result<usize> {
        self.index
            .get(s)
            .copied()
            .ok_or_else(|| Error::input(format!("{s} is not a Schubert symbol of {}", self.space)))
    }

    fn restriction_at(&self, class: usize, point: usize) -> Polynomial {
        if self.components[class] != self.components[point] {
            return Polynomial::zero(self.space.n);
        }
        self.twist.restrict(&self.reps[class], &self.reps[point])
    }

    fn class_by_index(&self, k: usize) -> &GkmVector {
        self.classes[k].get_or_init(|| {
            GkmVector(
                (0..self.symbols.len())
                    .into_par_iter()
                    .map(|j| self.restriction_at(k, j))
                    .collect(),
            )
        })
    }

    pub fn class_vector(&self, class: &SchubertSymbol) -> Result<GkmVector> {
        Ok(self.class_by_index(self.index_of(class)?).clone())
    }

    pub fn restriction(&self, class: &SchubertSymbol, point: &SchubertSymbol) -> Result<Polynomial> {
        let k = self.index_of(class)?;
        let j = self.index_of(point)?;
        Ok(self.class_by_index(k).0[j].clone())
    }

    /// Schubert-basis coefficients of `v` at the symbols in `targets`
    /// (all symbols when `None`), by triangular elimination in increasing
    /// codimension.
    pub fn expand(
        &self,
        v: &GkmVector,
        targets: Option<&[SchubertSymbol]>,
    ) -> Result<BTreeMap<SchubertSymbol, Polynomial>> {
        let n_pts = self.symbols.len();
        // points whose coefficient can influence a target: the up-sets
        let relevant: Vec<bool> = match targets {
            None => vec![true; n_pts],
            Some(ts) => {
                let idx: Vec<usize> = ts.iter().map(|t| self.index_of(t)).collect::<Result<_>>()?;
                (0..n_pts)
                    .map(|j| {
                        idx.iter().any(|&t| {
                            schubert::bruhat_leq(&self.space, &self.symbols[t], &self.symbols[j]).unwrap_or(false)
                        })
                    })
                    .collect()
            }
        };
        let order: Vec<usize> = (0..n_pts).filter(|&j| relevant[j]).collect();
        order.par_iter().for_each(|&k| {
            self.class_by_index(k);
        });
        let mut coeffs: Vec<(usize, Polynomial)> = Vec::new();
        for &j in &order {
            let mut g = v.0[j].clone();
            for (k, c) in &coeffs {
                let r = &self.class_by_index(*k).0[j];
                if !r.is_zero() {
                    g = &g - &(c * r);
                }
            }
            if g.is_zero() {
                continue;
            }
            let diag = &self.class_by_index(j).0[j];
            let c = g.div_exact(diag).ok_or_else(|| {
                Error::internal(format!(
                    "localization expansion: entry at {} is not divisible by the diagonal {}",
                    self.symbols[j], diag
                ))
            })?;
            coeffs.push((j, c));
        }
        let mut out = BTreeMap::new();
        for (j, c) in coeffs {
            let keep = targets.is_none_or(|ts| ts.contains(&self.symbols[j]));
            if keep {
                out.insert(self.symbols[j].clone(), c);
            }
        }
        Ok(out)
    }

    /// Coefficient of `[X_μ]` in `[X_λ]·[X_κ]`.
    pub fn structure_constant(
        &self,
        lambda: &SchubertSymbol,
        kappa: &SchubertSymbol,
        mu: &SchubertSymbol,
    ) -> Result<Polynomial> {
        let f = self.class_vector(lambda)?.pointwise_mul(&self.class_vector(kappa)?);
        let mut coeffs = self.expand(&f, Some(std::slice::from_ref(mu)))?;
        Ok(coeffs.remove(mu).unwrap_or_else(|| Polynomial::zero(self.space.n)))
    }

    /// Oracle value of the equivariant Pieri coefficient `N^μ_{λ,p}`.
    pub fn pieri_oracle(&self, lambda: &SchubertSymbol, mu: &SchubertSymbol, p: usize) -> Result<Polynomial> {
        let kappa = special_class_for(&self.space, lambda, p)?;
        self.structure_constant(lambda, &kappa, mu)
    }

    /// Full Schubert expansion of `[X_λ]·[X_κ]`.
    pub fn product(&self, lambda: &SchubertSymbol, kappa: &SchubertSymbol) -> Result<BTreeMap<SchubertSymbol, Polynomial>> {
        let f = self.class_vector(lambda)?.pointwise_mul(&self.class_vector(kappa)?);
        self.expand(&f, None)
    }

    /// Checks that `v_j - v_k` is divisible by `β` whenever the fixed points
    /// `j` and `k` differ by the reflection in the positive root `β`.
    pub fn gkm_edges_hold(&self, v: &GkmVector) -> bool {
        let group = &self.twist.group;
        for beta in group.positive_roots() {
            let refl = reflection(group, &beta);
            let root = Polynomial::linear(&beta);
            for (j, s) in self.symbols.iter().enumerate() {
                let image = act_on_symbol(&self.space, &refl, s);
                let Some(&k) = self.index.get(&image) else { continue };
                if k <= j {
                    continue;
                }
                let diff = &v.0[j] - &v.0[k];
                if !diff.is_zero() && diff.div_exact(&root).is_none() {
                    return false;
                }
            }
        }
        true
    }
}

/// The reflection `s_β` as a signed permutation.
fn reflection(group: &WeylGroup, beta: &[i64]) -> WeylElement {
    let norm: i64 = beta.iter().map(|x| x * x).sum();
    let perm: Vec<i32> = (0..group.n)
        .map(|i| {
            // s_β(e_i) = e_i - (2 β_i / |β|²) β, again a signed unit vector
            let k = 2 * beta[i];
            let mut img: Vec<i64> = vec![0; group.n];
            img[i] = 1;
            for (t, &b) in beta.iter().enumerate() {
                img[t] -= k * b / norm;
            }
            let pos = img.iter().position(|&x| x != 0).expect("unit vector");
            if img[pos] > 0 {
                pos as i32 + 1
            } else {
                -(pos as i32 + 1)
            }
        })
        .collect();
    group.element(perm).expect("reflections lie in the Weyl group")
}

/// Number of fixed points, counted as `|W| / |W_P|` summed over components.
pub fn coset_count(space: &GrassmannianSpace) -> u64 {
    let group = weyl_group(space);
    let comps: &[u8] = if space.lie_type == LieType::D && space.m == space.n { &[1, 2] } else { &[0] };
    comps
        .iter()
        .map(|&c| {
            let gens = stabilizer_generators(&group, &base_point(space, c));
            group.order() / group.subgroup(&gens).len() as u64
        })
        .sum()
}

/// Oracle value of `N^μ_{λ,p}` on a fresh localization.
pub fn oracle_structure_constant(
    space: &GrassmannianSpace,
    lambda: &SchubertSymbol,
    mu: &SchubertSymbol,
    p: usize,
) -> Result<Polynomial> {
    space.check_p(p)?;
    Localization::new(space).pieri_oracle(lambda, mu, p)
}
