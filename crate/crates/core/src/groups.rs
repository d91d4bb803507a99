//! Finite groups as multiplication tables, with subgroups, cosets and
//! quotients. Element 0 is always the identity; tables are capped at order
//! 64, which keeps every structural check exhaustive.

use crate::error::{Error, Result};
use crate::intlin::FinAbGroup;
use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

pub const MAX_ORDER: usize = 64;

#[derive(Clone)]
pub struct FiniteGroup {
    inner: Arc<GroupData>,
}

struct GroupData {
    order: usize,
    /// flat order x order table, mul[a * order + b] = a*b
    mul: Vec<usize>,
    inv: Vec<usize>,
    label: String,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.order == other.inner.order && self.inner.mul == other.inner.mul)
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.inner.label, self.inner.order)
    }
}

impl FiniteGroup {
    /// Builds a group from an explicit table, checking the group axioms.
    pub fn from_table(label: impl Into<String>, mul: Vec<Vec<usize>>) -> Result<Self> {
        let order = mul.len();
        if order == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if order > MAX_ORDER {
            return Err(Error::InvalidGroup(format!(
                "order {order} exceeds the supported maximum {MAX_ORDER}"
            )));
        }
        let mut flat = Vec::with_capacity(order * order);
        for row in &mul {
            if row.len() != order {
                return Err(Error::InvalidGroup("table is not square".into()));
            }
            for &x in row {
                if x >= order {
                    return Err(Error::InvalidGroup(format!("entry {x} out of range")));
                }
                flat.push(x);
            }
        }
        // identity must sit at index 0
        for x in 0..order {
            if flat[x] != x || flat[x * order] != x {
                return Err(Error::InvalidGroup("element 0 is not the identity".into()));
            }
        }
        // associativity, exhaustively
        for a in 0..order {
            for b in 0..order {
                let ab = flat[a * order + b];
                for c in 0..order {
                    let bc = flat[b * order + c];
                    if flat[ab * order + c] != flat[a * order + bc] {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let mut inv = vec![usize::MAX; order];
        for a in 0..order {
            match (0..order).find(|&b| flat[a * order + b] == 0) {
                Some(b) if flat[b * order + a] == 0 => inv[a] = b,
                _ => return Err(Error::InvalidGroup(format!("no inverse for {a}"))),
            }
        }
        Ok(FiniteGroup {
            inner: Arc::new(GroupData {
                order,
                mul: flat,
                inv,
                label: label.into(),
            }),
        })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1 && n <= MAX_ORDER, "cyclic order out of range");
        let mul = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Self::from_table(format!("C{n}"), mul).expect("cyclic table is a group")
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<Self> {
        let (na, nb) = (a.order(), b.order());
        if na * nb > MAX_ORDER {
            return Err(Error::InvalidGroup(format!(
                "product order {} exceeds {MAX_ORDER}",
                na * nb
            )));
        }
        let mul = (0..na * nb)
            .map(|x| {
                let (xa, xb) = (x / nb, x % nb);
                (0..na * nb)
                    .map(|y| {
                        let (ya, yb) = (y / nb, y % nb);
                        a.mul(xa, ya) * nb + b.mul(xb, yb)
                    })
                    .collect()
            })
            .collect();
        Self::from_table(format!("{}x{}", a.label(), b.label()), mul)
    }

    pub fn elementary_abelian(p: usize, k: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p as u64));
        }
        assert!(k >= 1);
        let mut g = Self::cyclic(p);
        for _ in 1..k {
            g = Self::direct_product(&g, &Self::cyclic(p))?;
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.inner.order
    }

    pub fn label(&self) -> &str {
        &self.inner.label
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.inner.mul[a * self.inner.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inner.inv[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.inner.order
    }

    pub fn pow(&self, g: usize, k: usize) -> usize {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, g);
        }
        acc
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut acc = g;
        let mut k = 1;
        while acc != 0 {
            acc = self.mul(acc, g);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.inner.order;
        (0..n).all(|a| (a..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn exponent(&self) -> usize {
        self.elements()
            .map(|g| self.element_order(g))
            .fold(1, |acc, o| acc.lcm(&o))
    }

    /// Invariant factors of an abelian group; `None` when non-abelian.
    ///
    /// Prime by prime, the count of solutions of `g^(p^j) = e` determines the
    /// partition of exponents; the partitions recombine into the chain.
    pub fn abelian_invariants(&self) -> Option<FinAbGroup> {
        if !self.is_abelian() {
            return None;
        }
        let primes = prime_factors(self.order());
        let mut per_prime: Vec<Vec<u32>> = Vec::new();
        for &p in &primes {
            let mut s: Vec<u32> = vec![0];
            let mut pj = 1usize;
            loop {
                pj *= p;
                let count = self.elements().filter(|&g| self.pow(g, pj) == 0).count();
                let log = p_adic_log(count, p);
                if log == *s.last().expect("nonempty") {
                    break;
                }
                s.push(log);
            }
            // m_j = s_j - s_{j-1} counts exponent parts of size >= j
            let m: Vec<u32> = s.windows(2).map(|w| w[1] - w[0]).collect();
            let nparts = *m.first().unwrap_or(&0) as usize;
            let mut parts = vec![0u32; nparts]; // descending exponents
            for &mj in &m {
                for part in parts.iter_mut().take(mj as usize) {
                    *part += 1;
                }
            }
            per_prime.push(parts);
        }
        let width = per_prime.iter().map(Vec::len).max().unwrap_or(0);
        let mut factors = Vec::new();
        for i in 0..width {
            let mut f = BigInt::from(1);
            for (parts, &p) in per_prime.iter().zip(&primes) {
                if let Some(e) = parts.get(i) {
                    f *= BigInt::from(p).pow(*e);
                }
            }
            factors.push(f);
        }
        factors.reverse();
        FinAbGroup::from_invariants(factors, 0).ok()
    }
}

fn p_adic_log(mut n: usize, p: usize) -> u32 {
    let mut k = 0;
    while n > 1 && n % p == 0 {
        n /= p;
        k += 1;
    }
    k
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while n > 1 {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    out
}

/// Subgroup as a sorted set of element indices of its parent.
#[derive(Clone, PartialEq, Eq)]
pub struct Subgroup {
    parent: FiniteGroup,
    elements: Vec<usize>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?} of {}", self.elements, self.parent.label())
    }
}

impl Subgroup {
    pub fn from_generators(parent: &FiniteGroup, gens: &[usize]) -> Result<Self> {
        for &g in gens {
            if g >= parent.order() {
                return Err(Error::InvalidGroup(format!("generator {g} out of range")));
            }
        }
        let mut in_set = vec![false; parent.order()];
        in_set[0] = true;
        let mut members: Vec<usize> = vec![0];
        for &g in gens {
            if !in_set[g] {
                in_set[g] = true;
                members.push(g);
            }
        }
        // close under multiplication; inverses follow in a finite group
        let mut i = 0;
        while i < members.len() {
            for j in 0..members.len() {
                for prod in [
                    parent.mul(members[i], members[j]),
                    parent.mul(members[j], members[i]),
                ] {
                    if !in_set[prod] {
                        in_set[prod] = true;
                        members.push(prod);
                    }
                }
            }
            i += 1;
        }
        members.sort_unstable();
        debug_assert!(parent.order() % members.len() == 0, "Lagrange");
        Ok(Subgroup {
            parent: parent.clone(),
            elements: members,
        })
    }

    pub fn whole(parent: &FiniteGroup) -> Self {
        Subgroup {
            parent: parent.clone(),
            elements: parent.elements().collect(),
        }
    }

    pub fn trivial(parent: &FiniteGroup) -> Self {
        Subgroup {
            parent: parent.clone(),
            elements: vec![0],
        }
    }

    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_whole(&self) -> bool {
        self.order() == self.parent.order()
    }

    pub fn is_normal(&self) -> bool {
        self.parent.elements().all(|g| {
            self.elements.iter().all(|&h| {
                self.contains(self.parent.mul(self.parent.mul(g, h), self.parent.inv(g)))
            })
        })
    }

    /// Smallest generator when the subgroup is cyclic.
    pub fn cyclic_generator(&self) -> Option<usize> {
        self.elements
            .iter()
            .copied()
            .find(|&g| self.parent.element_order(g) == self.order())
    }

    pub fn conjugate(&self, g: usize) -> Subgroup {
        let gi = self.parent.inv(g);
        let mut elements: Vec<usize> = self
            .elements
            .iter()
            .map(|&h| self.parent.mul(self.parent.mul(g, h), gi))
            .collect();
        elements.sort_unstable();
        Subgroup {
            parent: self.parent.clone(),
            elements,
        }
    }

    /// The subgroup as a standalone group plus the embedding of its element
    /// indices back into the parent.
    pub fn as_group(&self) -> (FiniteGroup, Vec<usize>) {
        let embed = self.elements.clone();
        let pos = |g: usize| embed.binary_search(&g).expect("closed subgroup");
        let mul = embed
            .iter()
            .map(|&a| embed.iter().map(|&b| pos(self.parent.mul(a, b))).collect())
            .collect();
        let label = format!(
            "{}[{}]",
            self.parent.label(),
            self.elements
                .iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(",")
        );
        let g = FiniteGroup::from_table(label, mul).expect("subgroup table is a group");
        (g, embed)
    }
}

/// All subgroups, by closure growth from the trivial subgroup.
pub fn all_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut seen: Vec<Vec<usize>> = vec![vec![0]];
    let mut frontier: Vec<Subgroup> = vec![Subgroup::trivial(g)];
    let mut out = frontier.clone();
    while let Some(h) = frontier.pop() {
        for x in g.elements() {
            if h.contains(x) {
                continue;
            }
            let mut gens: Vec<usize> = h.elements.clone();
            gens.push(x);
            let bigger = Subgroup::from_generators(g, &gens).expect("valid generators");
            if !seen.contains(&bigger.elements) {
                seen.push(bigger.elements.clone());
                out.push(bigger.clone());
                frontier.push(bigger);
            }
        }
    }
    out.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
    out
}

/// Every cyclic subgroup `<g>`, each exactly once, the trivial one included.
pub fn all_cyclic_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut out: Vec<Subgroup> = Vec::new();
    for x in g.elements() {
        let h = Subgroup::from_generators(g, &[x]).expect("element index is valid");
        if !out.iter().any(|k| k.elements == h.elements) {
            out.push(h);
        }
    }
    out.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
    out
}

/// Cyclic subgroups not properly contained in a larger cyclic subgroup.
pub fn maximal_cyclic_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let all = all_cyclic_subgroups(g);
    all.iter()
        .filter(|h| {
            !all.iter()
                .any(|k| k.order() > h.order() && h.elements.iter().all(|&x| k.contains(x)))
        })
        .cloned()
        .collect()
}

/// One representative per conjugacy class of the given subgroups.
pub fn conjugacy_reps(subgroups: &[Subgroup]) -> Vec<Subgroup> {
    let mut reps: Vec<Subgroup> = Vec::new();
    for h in subgroups {
        let class_seen = reps.iter().any(|r| {
            h.parent == r.parent
                && h.parent
                    .elements()
                    .any(|g| h.conjugate(g).elements == r.elements)
        });
        if !class_seen {
            reps.push(h.clone());
        }
    }
    reps
}

/// Quotient group by a normal subgroup, with the projection on elements.
pub fn quotient(g: &FiniteGroup, n: &Subgroup) -> Result<(FiniteGroup, Vec<usize>)> {
    if !n.is_normal() {
        return Err(Error::QuotientUndefined);
    }
    let cs = cosets(g, n);
    let reps = &cs.reps;
    let mut coset_of = vec![usize::MAX; g.order()];
    for (i, &r) in reps.iter().enumerate() {
        for &h in n.elements() {
            coset_of[g.mul(r, h)] = i;
        }
    }
    let mul = reps
        .iter()
        .map(|&a| reps.iter().map(|&b| coset_of[g.mul(a, b)]).collect())
        .collect();
    let q = FiniteGroup::from_table(format!("{}/{}", g.label(), n.order()), mul)?;
    Ok((q, coset_of))
}

/// Left cosets of `h` with the permutation action of the parent group.
#[derive(Clone)]
pub struct CosetSpace {
    pub subgroup: Subgroup,
    pub reps: Vec<usize>,
    /// action[g][i] = index of the coset g * reps[i] * H
    pub action: Vec<Vec<usize>>,
}

pub fn cosets(g: &FiniteGroup, h: &Subgroup) -> CosetSpace {
    assert_eq!(g, h.parent(), "subgroup of a different group");
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if coset_of[x] == usize::MAX {
            let idx = reps.len();
            reps.push(x);
            for &k in h.elements() {
                coset_of[g.mul(x, k)] = idx;
            }
        }
    }
    let action = g
        .elements()
        .map(|x| reps.iter().map(|&r| coset_of[g.mul(x, r)]).collect())
        .collect();
    CosetSpace {
        subgroup: h.clone(),
        reps,
        action,
    }
}

pub fn intersect(h1: &Subgroup, h2: &Subgroup) -> Subgroup {
    assert_eq!(h1.parent(), h2.parent());
    let elements: Vec<usize> = h1
        .elements
        .iter()
        .copied()
        .filter(|&x| h2.contains(x))
        .collect();
    Subgroup {
        parent: h1.parent.clone(),
        elements,
    }
}

/// Whether `h1 * h2 = G` as sets, by the product cardinality formula.
pub fn product_is_whole(h1: &Subgroup, h2: &Subgroup) -> bool {
    assert_eq!(h1.parent(), h2.parent());
    let meet = intersect(h1, h2).order();
    h1.order() * h2.order() / meet == h1.parent.order()
}

#[derive(Serialize, Deserialize)]
struct GroupFile {
    #[serde(default)]
    label: Option<String>,
    order: usize,
    mul: Vec<Vec<usize>>,
}

/// Group spec grammar: `C<n>`, `x`-separated products (`C2xC2`), or
/// `@file.json` with an explicit table.
pub fn parse_group_spec(spec: &str) -> Result<FiniteGroup> {
    if let Some(path) = spec.strip_prefix('@') {
        let text = std::fs::read_to_string(path)?;
        let file: GroupFile = serde_json::from_str(&text)?;
        if file.mul.len() != file.order {
            return Err(Error::InvalidGroup("order does not match table".into()));
        }
        let label = file.label.unwrap_or_else(|| format!("@{path}"));
        return FiniteGroup::from_table(label, file.mul);
    }
    let mut parts = spec.split('x');
    let mut g = parse_cyclic_token(parts.next().unwrap_or_default())?;
    for tok in parts {
        g = FiniteGroup::direct_product(&g, &parse_cyclic_token(tok)?)?;
    }
    Ok(g)
}

fn parse_cyclic_token(tok: &str) -> Result<FiniteGroup> {
    let n: usize = tok
        .strip_prefix('C')
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Parse(format!("bad group token `{tok}`")))?;
    if n == 0 || n > MAX_ORDER {
        return Err(Error::Parse(format!("bad group token `{tok}`")));
    }
    Ok(FiniteGroup::cyclic(n))
}

/// Subgroup spec grammar: `gens:<i,j,...>` with element indices.
pub fn parse_subgroup_spec(g: &FiniteGroup, spec: &str) -> Result<Subgroup> {
    let list = spec
        .strip_prefix("gens:")
        .ok_or_else(|| Error::Parse(format!("bad subgroup token `{spec}`")))?;
    let gens = if list.is_empty() {
        Vec::new()
    } else {
        list.split(',')
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad generator index `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?
    };
    Subgroup::from_generators(g, &gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors() {
        let c1 = FiniteGroup::cyclic(1);
        assert_eq!(c1.order(), 1);
        let klein =
            FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)).unwrap();
        assert_eq!(klein.order(), 4);
        assert_eq!(klein.exponent(), 2);
        let e9 = FiniteGroup::elementary_abelian(3, 2).unwrap();
        assert_eq!(e9.order(), 9);
        let order3 = all_cyclic_subgroups(&e9)
            .into_iter()
            .filter(|h| h.order() == 3)
            .count();
        assert_eq!(order3, 4, "lines of F_3^2");
        assert!(matches!(
            FiniteGroup::elementary_abelian(4, 1),
            Err(Error::NotPrime(4))
        ));
    }

    #[test]
    fn subgroup_generation() {
        let c4 = FiniteGroup::cyclic(4);
        let h = Subgroup::from_generators(&c4, &[2]).unwrap();
        assert_eq!(h.elements(), &[0, 2]);

        let klein = FiniteGroup::elementary_abelian(2, 2).unwrap();
        let t = Subgroup::from_generators(&klein, &[]).unwrap();
        assert_eq!(t.elements(), &[0]);
        let whole = Subgroup::from_generators(&klein, &[1, 2]).unwrap();
        assert_eq!(whole.order(), 4);
    }

    #[test]
    fn cyclic_subgroup_enumeration() {
        let klein = FiniteGroup::elementary_abelian(2, 2).unwrap();
        let maximal = maximal_cyclic_subgroups(&klein);
        assert_eq!(maximal.len(), 3);
        assert!(maximal.iter().all(|h| h.order() == 2));

        let e9 = FiniteGroup::elementary_abelian(3, 2).unwrap();
        assert_eq!(all_cyclic_subgroups(&e9).len(), 5, "trivial + 4 lines");

        let c4 = FiniteGroup::cyclic(4);
        let maximal = maximal_cyclic_subgroups(&c4);
        assert_eq!(maximal.len(), 1);
        assert_eq!(maximal[0].order(), 4);
    }

    #[test]
    fn all_cyclic_covers_every_element() {
        for g in [
            FiniteGroup::cyclic(6),
            FiniteGroup::elementary_abelian(2, 3).unwrap(),
        ] {
            let cyc = all_cyclic_subgroups(&g);
            for x in g.elements() {
                assert!(cyc.iter().any(|h| h.contains(x)));
            }
        }
    }

    #[test]
    fn quotients() {
        let c4 = FiniteGroup::cyclic(4);
        let n = Subgroup::from_generators(&c4, &[2]).unwrap();
        let (q, proj) = quotient(&c4, &n).unwrap();
        assert_eq!(q.order(), 2);
        // projection is a homomorphism
        for a in c4.elements() {
            for b in c4.elements() {
                assert_eq!(q.mul(proj[a], proj[b]), proj[c4.mul(a, b)]);
            }
        }

        let e9 = FiniteGroup::elementary_abelian(3, 2).unwrap();
        let n = Subgroup::from_generators(&e9, &[1]).unwrap();
        let (q, _) = quotient(&e9, &n).unwrap();
        assert_eq!(q.order(), 3);
        assert_eq!(q.exponent(), 3);
    }

    #[test]
    fn coset_action_is_a_homomorphism() {
        let klein = FiniteGroup::elementary_abelian(2, 2).unwrap();
        // <(1,0)> = {0, 2} under lexicographic pair indexing
        let h = Subgroup::from_generators(&klein, &[2]).unwrap();
        let cs = cosets(&klein, &h);
        assert_eq!(cs.reps.len(), 2);
        // (0,1) = element 1 swaps the two cosets
        assert_eq!(cs.action[1], vec![1, 0]);
        for a in klein.elements() {
            for b in klein.elements() {
                let ab = klein.mul(a, b);
                for i in 0..cs.reps.len() {
                    assert_eq!(cs.action[a][cs.action[b][i]], cs.action[ab][i]);
                }
            }
        }
        // extremes
        assert_eq!(cosets(&klein, &Subgroup::whole(&klein)).reps.len(), 1);
        assert_eq!(cosets(&klein, &Subgroup::trivial(&klein)).reps.len(), 4);
    }

    #[test]
    fn products_and_intersections() {
        let klein = FiniteGroup::elementary_abelian(2, 2).unwrap();
        let h1 = Subgroup::from_generators(&klein, &[1]).unwrap();
        let h2 = Subgroup::from_generators(&klein, &[2]).unwrap();
        assert!(product_is_whole(&h1, &h2));
        assert!(!product_is_whole(&h1, &h1));
        assert_eq!(intersect(&h1, &h2).order(), 1);

        let c8 = FiniteGroup::elementary_abelian(2, 3).unwrap();
        let hyp1 = Subgroup::from_generators(&c8, &[1, 2]).unwrap();
        let hyp2 = Subgroup::from_generators(&c8, &[1, 4]).unwrap();
        assert!(product_is_whole(&hyp1, &hyp2));
    }

    #[test]
    fn lagrange_holds_for_all_subgroups() {
        let g = FiniteGroup::elementary_abelian(2, 3).unwrap();
        let subs = all_subgroups(&g);
        assert_eq!(subs.len(), 16, "subgroup count of C2^3");
        for h in subs {
            assert_eq!(g.order() % h.order(), 0);
        }
    }

    #[test]
    fn abelian_invariants_match() {
        assert_eq!(
            FiniteGroup::cyclic(12).abelian_invariants().unwrap(),
            FinAbGroup::cyclic(12)
        );
        assert_eq!(
            FiniteGroup::elementary_abelian(2, 3)
                .unwrap()
                .abelian_invariants()
                .unwrap(),
            FinAbGroup::elementary(2, 3)
        );
        let g =
            FiniteGroup::direct_product(&FiniteGroup::cyclic(4), &FiniteGroup::cyclic(2)).unwrap();
        let inv = g.abelian_invariants().unwrap();
        assert_eq!(inv.torsion(), &[BigInt::from(2), BigInt::from(4)]);
        let g6 =
            FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(3)).unwrap();
        assert_eq!(g6.abelian_invariants().unwrap(), FinAbGroup::cyclic(6));
    }

    #[test]
    fn spec_parsing() {
        assert_eq!(parse_group_spec("C4").unwrap().order(), 4);
        assert_eq!(parse_group_spec("C2xC2xC2").unwrap().order(), 8);
        assert!(parse_group_spec("C0").is_err());
        assert!(parse_group_spec("D4").is_err());

        let g = parse_group_spec("C2xC2").unwrap();
        let h = parse_subgroup_spec(&g, "gens:1").unwrap();
        assert_eq!(h.elements(), &[0, 1]);
        assert!(parse_subgroup_spec(&g, "1,2").is_err());
    }

    #[test]
    fn subgroup_as_group_round_trip() {
        let c6 = FiniteGroup::cyclic(6);
        let h = Subgroup::from_generators(&c6, &[2]).unwrap();
        let (hg, embed) = h.as_group();
        assert_eq!(hg.order(), 3);
        assert_eq!(embed, vec![0, 2, 4]);
        for a in hg.elements() {
            for b in hg.elements() {
                assert_eq!(embed[hg.mul(a, b)], c6.mul(embed[a], embed[b]));
            }
        }
    }

    #[test]
    fn conjugacy_classes_in_a_nonabelian_group() {
        // S3 via an explicit table: elements e, r, r2, s, sr, sr2
        let s3 = symmetric_3();
        assert!(!s3.is_abelian());
        let cyc = all_cyclic_subgroups(&s3);
        // trivial, <r> (order 3), three reflections
        assert_eq!(cyc.len(), 5);
        let maximal = maximal_cyclic_subgroups(&s3);
        assert_eq!(maximal.len(), 4);
        let reps = conjugacy_reps(&maximal);
        // the three reflections are conjugate
        assert_eq!(reps.len(), 2);
    }

    pub(crate) fn symmetric_3() -> FiniteGroup {
        // permutations of {0,1,2}: index by (image tuple)
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [1, 2, 0],
            [2, 0, 1],
            [0, 2, 1],
            [2, 1, 0],
            [1, 0, 2],
        ];
        let compose = |a: &[usize; 3], b: &[usize; 3]| [a[b[0]], a[b[1]], a[b[2]]];
        let mul = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| perms.iter().position(|c| *c == compose(a, b)).unwrap())
                    .collect()
            })
            .collect();
        FiniteGroup::from_table("S3", mul).unwrap()
    }
}
