//! Cayley tables for small groups.
//!
//! Elements are indexed `0..n` with `0` the identity. When a table comes from
//! a permutation group the index of an element is recoverable from its base
//! images.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// Largest order for which a multiplication table is built.
pub const TABLE_LIMIT: u64 = 4096;

#[derive(Clone, Debug)]
pub struct Table {
    n: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    source: Option<Source>,
    gens: OnceLock<Vec<usize>>,
}

#[derive(Clone, Debug)]
struct Source {
    base: Vec<u32>,
    elements: Vec<Permutation>,
    index: HashMap<Vec<u32>, u32>,
}

impl Table {
    /// Builds the table of a permutation group of order at most [`TABLE_LIMIT`].
    pub fn from_group(g: &PermGroup) -> Result<Table> {
        let order = g.order_u64();
        if order > TABLE_LIMIT {
            return Err(Error::GateExceeded {
                what: "multiplication table order",
                size: order,
                gate: TABLE_LIMIT,
            });
        }
        let base = g.base();
        let elements = g.elements()?;
        let n = elements.len();
        let key = |p: &Permutation| -> Vec<u32> { base.iter().map(|&b| p.apply(b)).collect() };
        let mut index = HashMap::with_capacity(n);
        for (i, e) in elements.iter().enumerate() {
            index.insert(key(e), i as u32);
        }
        let mut mul = vec![0u32; n * n];
        let mut buf = vec![0u32; base.len()];
        for i in 0..n {
            for j in 0..n {
                for (k, &b) in base.iter().enumerate() {
                    buf[k] = elements[i].apply(elements[j].apply(b));
                }
                mul[i * n + j] = index[&buf];
            }
        }
        let mut t = Table::from_mul(n, mul);
        t.source = Some(Source {
            base,
            elements,
            index,
        });
        Ok(t)
    }

    /// Wraps a raw product table whose row and column 0 are the identity.
    pub fn from_mul(n: usize, mul: Vec<u32>) -> Table {
        debug_assert_eq!(mul.len(), n * n);
        let mut inv = vec![0u32; n];
        for a in 0..n {
            for b in 0..n {
                if mul[a * n + b] == 0 {
                    inv[a] = b as u32;
                    break;
                }
            }
        }
        Table {
            n,
            mul,
            inv,
            source: None,
            gens: OnceLock::new(),
        }
    }

    /// Checks identity, inverses and associativity. Quadratic-cubic cost; for tests.
    pub fn is_group(&self) -> bool {
        let n = self.n;
        for a in 0..n {
            if self.m(0, a) != a || self.m(a, 0) != a {
                return false;
            }
            if self.m(a, self.inv(a)) != 0 {
                return false;
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.m(a, b);
                for c in 0..n {
                    if self.m(ab, c) != self.m(a, self.m(b, c)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn pow(&self, a: usize, e: u64) -> usize {
        let mut acc = 0;
        for _ in 0..e {
            acc = self.m(acc, a);
        }
        acc
    }

    /// `a^-1 b^-1 a b`.
    pub fn comm(&self, a: usize, b: usize) -> usize {
        self.m(self.m(self.inv(a), self.inv(b)), self.m(a, b))
    }

    /// `b^-1 a b`.
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.m(self.m(self.inv(b), a), b)
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.m(x, a);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<u64> {
        (0..self.n).map(|a| self.element_order(a)).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.m(a, b) == self.m(b, a)))
    }

    /// Membership mask of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut inside = vec![false; self.n];
        inside[0] = true;
        let mut queue = vec![0usize];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            for &g in gens {
                let y = self.m(x, g);
                if !inside[y] {
                    inside[y] = true;
                    queue.push(y);
                }
            }
            i += 1;
        }
        inside
    }

    /// Sorted element list of the subgroup generated by `gens`.
    pub fn subgroup(&self, gens: &[usize]) -> Vec<usize> {
        mask_to_list(&self.closure(gens))
    }

    /// Normal closure of `gens`.
    pub fn normal_closure(&self, gens: &[usize]) -> Vec<bool> {
        let all = self.generators();
        let mut cur: Vec<usize> = gens.to_vec();
        loop {
            let mask = self.closure(&cur);
            let mut grew = false;
            for x in mask_to_list(&mask) {
                for &g in &all {
                    let y = self.conj(x, g);
                    if !mask[y] && !cur.contains(&y) {
                        cur.push(y);
                        grew = true;
                    }
                }
                if grew {
                    break;
                }
            }
            if !grew {
                return mask;
            }
        }
    }

    pub fn derived(&self) -> Vec<bool> {
        let gens = self.generators();
        let mut comms = Vec::new();
        for (i, &a) in gens.iter().enumerate() {
            for &b in &gens[i + 1..] {
                let c = self.comm(a, b);
                if c != 0 && !comms.contains(&c) {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms)
    }

    pub fn centre(&self) -> Vec<bool> {
        let gens = self.generators();
        (0..self.n)
            .map(|z| gens.iter().all(|&g| self.m(z, g) == self.m(g, z)))
            .collect()
    }

    pub fn centralizer_size(&self, a: usize) -> usize {
        (0..self.n).filter(|&b| self.m(a, b) == self.m(b, a)).count()
    }

    /// Conjugacy classes as sorted index lists, ordered by least element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let gens = self.generators();
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for a in 0..self.n {
            if seen[a] {
                continue;
            }
            seen[a] = true;
            let mut class = vec![a];
            let mut i = 0;
            while i < class.len() {
                let x = class[i];
                for &g in &gens {
                    let y = self.conj(x, g);
                    if !seen[y] {
                        seen[y] = true;
                        class.push(y);
                    }
                }
                i += 1;
            }
            class.sort_unstable();
            out.push(class);
        }
        out
    }

    /// A small generating set, chosen greedily and deterministically.
    pub fn generators(&self) -> Vec<usize> {
        self.gens.get_or_init(|| self.compute_generators()).clone()
    }

    fn compute_generators(&self) -> Vec<usize> {
        let n = self.n;
        if n == 1 {
            return Vec::new();
        }
        let orders = self.element_orders();
        let mut gens = Vec::new();
        let mut mask = vec![false; n];
        mask[0] = true;
        let mut size = 1;
        let greedy = n <= 512;
        while size < n {
            let mut best: Option<(usize, u64, usize)> = None;
            for x in 0..n {
                if mask[x] {
                    continue;
                }
                let score = if greedy {
                    let mut g = gens.clone();
                    g.push(x);
                    self.closure(&g).iter().filter(|&&b| b).count()
                } else {
                    0
                };
                let cand = (score, orders[x], usize::MAX - x);
                if best.map_or(true, |b| cand > b) {
                    best = Some(cand);
                }
            }
            let x = usize::MAX - best.expect("element outside subgroup").2;
            gens.push(x);
            mask = self.closure(&gens);
            size = mask.iter().filter(|&&b| b).count();
        }
        gens
    }

    /// Left-regular permutation `h -> a h`.
    pub fn left_regular(&self, a: usize) -> Permutation {
        Permutation::from_images_unchecked((0..self.n).map(|h| self.m(a, h) as u32).collect())
    }

    /// The left-regular representation generated by [`Table::generators`].
    pub fn regular_group(&self) -> PermGroup {
        let gens: Vec<Permutation> = self.generators().iter().map(|&a| self.left_regular(a)).collect();
        if gens.is_empty() {
            return PermGroup::trivial(self.n);
        }
        PermGroup::new(gens).expect("nonempty generators")
    }

    /// Table of the subgroup given by a sorted element list, reindexed in list order.
    pub fn restrict(&self, elems: &[usize]) -> Table {
        let k = elems.len();
        let mut pos = vec![u32::MAX; self.n];
        for (i, &e) in elems.iter().enumerate() {
            pos[e] = i as u32;
        }
        let mut mul = vec![0u32; k * k];
        for i in 0..k {
            for j in 0..k {
                mul[i * k + j] = pos[self.m(elems[i], elems[j])];
            }
        }
        Table::from_mul(k, mul)
    }

    /// Index of a permutation of the source group, if the table has one.
    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        let s = self.source.as_ref()?;
        let key: Vec<u32> = s.base.iter().map(|&b| p.apply(b)).collect();
        let i = *s.index.get(&key)? as usize;
        if &s.elements[i] == p {
            Some(i)
        } else {
            None
        }
    }

    /// The permutation with index `i` in the source group.
    pub fn element(&self, i: usize) -> Option<&Permutation> {
        self.source.as_ref().map(|s| &s.elements[i])
    }
}

pub fn mask_to_list(mask: &[bool]) -> Vec<usize> {
    mask.iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| i)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(deg: usize, gens: &[&str]) -> Table {
        let g = PermGroup::new(
            gens.iter()
                .map(|s| Permutation::parse_cycles(s, deg).unwrap())
                .collect(),
        )
        .unwrap();
        Table::from_group(&g).unwrap()
    }

    #[test]
    fn d8_order_histogram() {
        let t = table(4, &["(1 2 3 4)", "(1 3)"]);
        assert!(t.is_group());
        let mut hist = std::collections::BTreeMap::new();
        for o in t.element_orders() {
            *hist.entry(o).or_insert(0) += 1;
        }
        assert_eq!(hist.into_iter().collect::<Vec<_>>(), vec![(1, 1), (2, 5), (4, 2)]);
    }

    #[test]
    fn s4_derived_and_classes() {
        let t = table(4, &["(1 2)", "(1 2 3 4)"]);
        assert_eq!(mask_to_list(&t.derived()).len(), 12);
        assert_eq!(t.conjugacy_classes().len(), 5);
        assert_eq!(mask_to_list(&t.centre()).len(), 1);
    }

    #[test]
    fn regular_rep_has_same_order() {
        let t = table(5, &["(1 2 3 4 5)", "(2 5)(3 4)"]);
        assert_eq!(t.regular_group().order_u64(), 10);
    }

    #[test]
    fn index_lookup() {
        let t = table(3, &["(1 2)", "(1 2 3)"]);
        let p = Permutation::parse_cycles("(1 3)", 3).unwrap();
        let i = t.index_of(&p).unwrap();
        assert_eq!(t.element(i).unwrap(), &p);
        assert_eq!(t.index_of(&Permutation::identity(3)), Some(0));
    }
}
