//! Classical Weyl groups as (signed) permutations of `{1..n}`.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::lie::LieType;
use crate::polyring::Polynomial;

/// Weyl group of type `lie_type` and rank `n`. In type A this is `S_n`,
/// acting on `t_1..t_n`; its rank as a root system is `n-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct WeylGroup {
    pub lie_type: LieType,
    pub n: usize,
}

/// Signed one-line notation: `w(i) = perm[i-1]`, with `w(-i) = -w(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WeylElement {
    perm: Vec<i32>,
    length: usize,
}

type Root = Vec<i64>;

impl WeylGroup {
    pub fn new(lie_type: LieType, n: usize) -> Self {
        WeylGroup { lie_type, n }
    }

    pub fn num_simple(&self) -> usize {
        match self.lie_type {
            LieType::A => self.n.saturating_sub(1),
            _ => self.n,
        }
    }

    pub fn order(&self) -> u64 {
        let fact: u64 = (1..=self.n as u64).product();
        match self.lie_type {
            LieType::A => fact,
            LieType::B | LieType::C => fact << self.n,
            LieType::D => fact << (self.n - 1),
        }
    }

    fn unit(&self, i: usize) -> Root {
        let mut v = vec![0; self.n];
        v[i - 1] = 1;
        v
    }

    /// Simple root `α_i` as a coordinate vector in `t_1..t_n`.
    pub fn simple_root(&self, i: usize) -> Root {
        let n = self.n;
        let mut v = vec![0; n];
        if i < n {
            v[i - 1] = 1;
            v[i] = -1;
        } else {
            match self.lie_type {
                LieType::A => panic!("type A of rank {n} has no simple root {i}"),
                LieType::B => v[n - 1] = 1,
                LieType::C => v[n - 1] = 2,
                LieType::D => {
                    v[n - 2] = 1;
                    v[n - 1] = 1;
                }
            }
        }
        v
    }

    pub fn positive_roots(&self) -> Vec<Root> {
        let n = self.n;
        let mut roots = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                let (ei, ej) = (self.unit(i), self.unit(j));
                roots.push(ei.iter().zip(&ej).map(|(a, b)| a - b).collect());
                if self.lie_type != LieType::A {
                    roots.push(ei.iter().zip(&ej).map(|(a, b)| a + b).collect());
                }
            }
            match self.lie_type {
                LieType::B => roots.push(self.unit(i)),
                LieType::C => roots.push(self.unit(i).iter().map(|x| 2 * x).collect()),
                _ => {}
            }
        }
        roots
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement {
            perm: (1..=self.n as i32).collect(),
            length: 0,
        }
    }

    /// Builds an element from signed one-line notation, checking membership.
    pub fn element(&self, perm: Vec<i32>) -> Option<WeylElement> {
        let n = self.n;
        if perm.len() != n {
            return None;
        }
        let mut seen = vec![false; n + 1];
        for &x in &perm {
            let a = x.unsigned_abs() as usize;
            if a == 0 || a > n || seen[a] {
                return None;
            }
            seen[a] = true;
        }
        let negatives = perm.iter().filter(|&&x| x < 0).count();
        match self.lie_type {
            LieType::A if negatives > 0 => return None,
            LieType::D if negatives % 2 == 1 => return None,
            _ => {}
        }
        let mut w = WeylElement { perm, length: 0 };
        w.length = self
            .positive_roots()
            .iter()
            .filter(|b| is_negative(&w.act(b)))
            .count();
        Some(w)
    }

    pub fn simple_reflection(&self, i: usize) -> WeylElement {
        let n = self.n;
        let mut perm: Vec<i32> = (1..=n as i32).collect();
        if i < n {
            perm.swap(i - 1, i);
        } else {
            match self.lie_type {
                LieType::A => panic!("type A of rank {n} has no simple reflection {i}"),
                LieType::B | LieType::C => perm[n - 1] = -(n as i32),
                LieType::D => {
                    perm[n - 2] = -(n as i32);
                    perm[n - 1] = -(n as i32 - 1);
                }
            }
        }
        WeylElement { perm, length: 1 }
    }

    /// `u v`, acting first by `v`.
    pub fn compose(&self, u: &WeylElement, v: &WeylElement) -> WeylElement {
        let perm = v.perm.iter().map(|&x| u.apply_signed(x)).collect();
        self.element(perm).expect("closed under composition")
    }

    /// `w s_i`, with the length updated incrementally.
    pub fn right_mul_simple(&self, w: &WeylElement, i: usize) -> WeylElement {
        let descent = self.has_right_descent(w, i);
        let s = self.simple_reflection(i);
        let perm: Vec<i32> = s.perm.iter().map(|&x| w.apply_signed(x)).collect();
        WeylElement {
            perm,
            length: if descent { w.length - 1 } else { w.length + 1 },
        }
    }

    /// `ℓ(w s_i) < ℓ(w)`, i.e. `w(α_i)` is negative.
    pub fn has_right_descent(&self, w: &WeylElement, i: usize) -> bool {
        is_negative(&w.act(&self.simple_root(i)))
    }

    /// A reduced word `[a_1, ..., a_l]` with `w = s_{a_1} ... s_{a_l}`.
    pub fn reduced_word(&self, w: &WeylElement) -> Vec<usize> {
        let mut word = Vec::with_capacity(w.length);
        let mut cur = w.clone();
        while cur.length > 0 {
            let i = (1..=self.num_simple())
                .find(|&i| self.has_right_descent(&cur, i))
                .expect("nonidentity elements have a right descent");
            word.push(i);
            cur = self.right_mul_simple(&cur, i);
        }
        word.reverse();
        word
    }

    pub fn inverse(&self, w: &WeylElement) -> WeylElement {
        let mut perm = vec![0i32; self.n];
        for (i, &x) in w.perm.iter().enumerate() {
            let a = x.unsigned_abs() as usize;
            perm[a - 1] = if x > 0 { i as i32 + 1 } else { -(i as i32 + 1) };
        }
        WeylElement {
            perm,
            length: w.length,
        }
    }

    pub fn longest(&self) -> WeylElement {
        let n = self.n as i32;
        let perm: Vec<i32> = match self.lie_type {
            LieType::A => (1..=n).rev().collect(),
            LieType::B | LieType::C => (1..=n).map(|i| -i).collect(),
            LieType::D => (1..=n)
                .map(|i| if i == n && n % 2 == 1 { i } else { -i })
                .collect(),
        };
        self.element(perm).expect("longest element")
    }

    /// Enumerates the subgroup generated by the given simple reflections.
    pub fn subgroup(&self, generators: &[usize]) -> Vec<WeylElement> {
        let id = self.identity();
        let mut seen: HashSet<Vec<i32>> = HashSet::from([id.perm.clone()]);
        let mut out = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(w) = queue.pop_front() {
            for &i in generators {
                let x = self.right_mul_simple(&w, i);
                if seen.insert(x.perm.clone()) {
                    out.push(x.clone());
                    queue.push_back(x);
                }
            }
        }
        out
    }

    /// Image of a linear form in `t_1..t_n` under `w`.
    pub fn act_polynomial(&self, w: &WeylElement, p: &Polynomial) -> Polynomial {
        let images: Vec<Polynomial> = w
            .perm
            .iter()
            .map(|&x| {
                let v = Polynomial::var(self.n, x.unsigned_abs() as usize - 1);
                if x < 0 {
                    -&v
                } else {
                    v
                }
            })
            .collect();
        p.substitute(&images).expect("polynomial in the group's variables")
    }

    pub fn root_polynomial(&self, root: &[i64]) -> Polynomial {
        Polynomial::linear(root)
    }

    /// `ξ^w(v)`: the restriction to the fixed point `v` of the class of the
    /// opposite Schubert variety indexed by `w`, via subwords of a reduced
    /// word of `v`. Values are products of positive roots.
    pub fn billey(&self, w: &WeylElement, v: &WeylElement) -> Polynomial {
        let nvars = self.n;
        if w.length > v.length {
            return Polynomial::zero(nvars);
        }
        let word = self.reduced_word(v);
        // roots r_j = s_{a_1} ... s_{a_{j-1}} (α_{a_j})
        let mut prefix = self.identity();
        let roots: Vec<Polynomial> = word
            .iter()
            .map(|&a| {
                let r = self.root_polynomial(&prefix.act(&self.simple_root(a)));
                prefix = self.right_mul_simple(&prefix, a);
                r
            })
            .collect();

        // u is a prefix of some reduced word of w iff ℓ(u^{-1} w) = ℓ(w) - ℓ(u)
        let prefix_of_w = |u: &WeylElement| {
            self.compose(&self.inverse(u), w).length + u.length == w.length
        };

        let mut states: HashMap<WeylElement, Polynomial> = HashMap::from([(self.identity(), Polynomial::one(nvars))]);
        for (j, &a) in word.iter().enumerate() {
            let remaining = word.len() - j;
            let mut next: HashMap<WeylElement, Polynomial> = HashMap::new();
            for (u, f) in states {
                if w.length - u.length > remaining {
                    continue;
                }
                if !self.has_right_descent(&u, a) && u.length < w.length {
                    let u2 = self.right_mul_simple(&u, a);
                    if prefix_of_w(&u2) {
                        let g = &f * &roots[j];
                        next.entry(u2)
                            .and_modify(|acc| *acc += &g)
                            .or_insert(g);
                    }
                }
                if w.length - u.length < remaining {
                    next.entry(u).and_modify(|acc| *acc += &f).or_insert(f);
                }
            }
            states = next;
        }
        states.remove(w).unwrap_or_else(|| Polynomial::zero(nvars))
    }
}

impl WeylElement {
    pub fn length(&self) -> usize {
        self.length
    }

    pub fn one_line(&self) -> &[i32] {
        &self.perm
    }

    /// `w(x)` for a signed value `x ≠ 0`.
    pub fn apply_signed(&self, x: i32) -> i32 {
        let y = self.perm[x.unsigned_abs() as usize - 1];
        if x < 0 {
            -y
        } else {
            y
        }
    }

    /// Action on coordinate vectors: `w(e_i) = sign(w(i)) e_{|w(i)|}`.
    pub fn act(&self, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0; v.len()];
        for (i, &c) in v.iter().enumerate() {
            if c != 0 {
                let x = self.perm[i];
                let target = x.unsigned_abs() as usize - 1;
                out[target] += if x < 0 { -c } else { c };
            }
        }
        out
    }
}

/// A root is negative when its first nonzero coordinate is.
fn is_negative(v: &[i64]) -> bool {
    v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0)
}
