//! Independent enumeration of small groups on bare multiplication tables.
//!
//! Every group of order <= 16 is solvable, so it has a normal subgroup N of
//! prime index p and is N<t> with t x = a(x) t, t^p = z for some automorphism
//! a of N fixing z with a^p = conjugation by z. All such tables are built,
//! checked for associativity, and deduplicated by brute-force isomorphism.

use std::collections::HashMap;

use integrals_core::PermGroup;

#[derive(Clone, Debug)]
pub struct T {
    n: usize,
    m: Vec<Vec<usize>>,
}

impl T {
    fn mul(&self, a: usize, b: usize) -> usize {
        self.m[a][b]
    }

    fn identity(&self) -> usize {
        (0..self.n).find(|&e| (0..self.n).all(|x| self.m[e][x] == x)).unwrap()
    }

    fn inv(&self, a: usize) -> usize {
        let e = self.identity();
        (0..self.n).find(|&b| self.m[a][b] == e).unwrap()
    }

    fn order(&self, a: usize) -> usize {
        let e = self.identity();
        let (mut x, mut k) = (a, 1);
        while x != e {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    fn is_associative(&self) -> bool {
        (0..self.n).all(|a| {
            (0..self.n).all(|b| (0..self.n).all(|c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))))
        })
    }

    fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        let e = self.identity();
        seen[e] = true;
        let mut stack = vec![e];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }

    fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        // prefer large element orders so fewer generators are needed
        let mut by_order: Vec<usize> = (0..self.n).collect();
        by_order.sort_by_key(|&a| std::cmp::Reverse(self.order(a)));
        let mut seen = self.closure(&gens);
        for a in by_order {
            if !seen[a] {
                gens.push(a);
                seen = self.closure(&gens);
            }
        }
        gens
    }

    /// Extends gens -> images to a map on all of self, if it is a homomorphism into `to`.
    fn extend(&self, to: &T, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
        let mut phi = vec![usize::MAX; self.n];
        let e = self.identity();
        phi[e] = to.identity();
        let mut queue = vec![e];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for (g, im) in gens.iter().zip(images) {
                let y = self.mul(x, *g);
                let v = to.mul(phi[x], *im);
                if phi[y] == usize::MAX {
                    phi[y] = v;
                    queue.push(y);
                } else if phi[y] != v {
                    return None;
                }
            }
        }
        Some(phi)
    }

    fn bijections_to(&self, to: &T, mut visit: impl FnMut(&[usize]) -> bool) {
        let gens = self.generators();
        let orders: Vec<usize> = gens.iter().map(|&g| self.order(g)).collect();
        let cands: Vec<Vec<usize>> = orders
            .iter()
            .map(|&o| (0..to.n).filter(|&y| to.order(y) == o).collect())
            .collect();
        let mut idx = vec![0usize; gens.len()];
        if cands.iter().any(|c| c.is_empty()) {
            return;
        }
        loop {
            let images: Vec<usize> = idx.iter().zip(&cands).map(|(&i, c)| c[i]).collect();
            if let Some(phi) = self.extend(to, &gens, &images) {
                let mut hit = vec![false; to.n];
                phi.iter().for_each(|&y| hit[y] = true);
                if hit.iter().all(|&h| h) && !visit(&phi) {
                    return;
                }
            }
            let mut k = 0;
            loop {
                if k == idx.len() {
                    return;
                }
                idx[k] += 1;
                if idx[k] < cands[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }

    fn automorphisms(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.bijections_to(self, |phi| {
            out.push(phi.to_vec());
            true
        });
        out
    }

    pub fn isomorphic(&self, other: &T) -> bool {
        if self.n != other.n || self.invariant() != other.invariant() {
            return false;
        }
        let mut found = false;
        self.bijections_to(other, |_| {
            found = true;
            false
        });
        found
    }

    fn invariant(&self) -> (Vec<usize>, usize, Vec<usize>) {
        let mut orders = vec![0; self.n + 1];
        (0..self.n).for_each(|a| orders[self.order(a)] += 1);
        let commuting = (0..self.n)
            .flat_map(|a| (0..self.n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.mul(a, b) == self.mul(b, a))
            .count();
        let mut squares = vec![0; self.n];
        (0..self.n).for_each(|a| squares[self.mul(a, a)] += 1);
        squares.sort();
        (orders, commuting, squares)
    }

    pub fn from_perm_group(g: &PermGroup) -> T {
        let els = g.elements().unwrap();
        let index: HashMap<_, _> = els.iter().enumerate().map(|(i, x)| (x.clone(), i)).collect();
        let m = els.iter().map(|a| els.iter().map(|b| index[&a.mul(b)]).collect()).collect();
        T { n: els.len(), m }
    }
}

pub fn oracle(limit: usize) -> Vec<Vec<T>> {
    let mut all: Vec<Vec<T>> = vec![Vec::new(); limit + 1];
    all[1] = vec![T { n: 1, m: vec![vec![0]] }];
    for n in 2..=limit {
        let mut found: Vec<T> = Vec::new();
        let primes: Vec<usize> = (2..=n).filter(|&p| n % p == 0 && (2..p).all(|d| p % d != 0)).collect();
        for p in primes {
            let k = n / p;
            for base in &all[k] {
                let e = base.identity();
                let auts = base.automorphisms();
                for z in 0..k {
                    let zi = base.inv(z);
                    for a in &auts {
                        if a[z] != z {
                            continue;
                        }
                        let mut ap: Vec<usize> = (0..k).collect();
                        for _ in 0..p {
                            ap = ap.iter().map(|&x| a[x]).collect();
                        }
                        if (0..k).any(|x| ap[x] != base.mul(base.mul(z, x), zi)) {
                            continue;
                        }
                        // powers a^i
                        let mut pow = vec![(0..k).collect::<Vec<usize>>()];
                        for i in 1..p {
                            pow.push(pow[i - 1].iter().map(|&x| a[x]).collect());
                        }
                        let code = |x: usize, i: usize| i * k + x;
                        let mut m = vec![vec![0; n]; n];
                        for i in 0..p {
                            for x in 0..k {
                                for j in 0..p {
                                    for y in 0..k {
                                        let mut c = base.mul(x, pow[i][y]);
                                        let mut s = i + j;
                                        if s >= p {
                                            c = base.mul(c, z);
                                            s -= p;
                                        }
                                        m[code(x, i)][code(y, j)] = code(c, s);
                                    }
                                }
                            }
                        }
                        let t = T { n, m };
                        assert_eq!(t.identity(), code(e, 0));
                        assert!(t.is_associative());
                        if !found.iter().any(|f| f.isomorphic(&t)) {
                            found.push(t);
                        }
                    }
                }
            }
        }
        all[n] = found;
    }
    all
}

