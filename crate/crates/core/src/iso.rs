//! Isomorphism invariants and isomorphism search on multiplication tables.

use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::hom::Homomorphism;
use crate::structure::{abelian_invariants, factorize, AbelianType};
use crate::table::{mask_to_list, Table};

/// Invariants that isomorphic groups share. Equality never proves isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    pub order: u64,
    /// `(element order, count)`, ascending.
    pub order_histogram: Vec<(u64, u64)>,
    /// `(class size, number of classes)`, ascending.
    pub class_sizes: Vec<(u64, u64)>,
    pub centre_order: u64,
    pub derived_order: u64,
    /// Orders along the derived series, starting with the group.
    pub derived_series: Vec<u64>,
    pub exponent: u64,
    pub abelianization: AbelianType,
}

fn histogram<I: IntoIterator<Item = u64>>(it: I) -> Vec<(u64, u64)> {
    let mut m = BTreeMap::new();
    for x in it {
        *m.entry(x).or_insert(0u64) += 1;
    }
    m.into_iter().collect()
}

fn pairs(v: &[(u64, u64)]) -> String {
    v.iter()
        .map(|(a, b)| format!("{}:{}", a, b))
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "order={};orders={};classes={};centre={};derived={};series={};exponent={};abelianization={}",
            self.order,
            pairs(&self.order_histogram),
            pairs(&self.class_sizes),
            self.centre_order,
            self.derived_order,
            self.derived_series
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(","),
            self.exponent,
            self.abelianization
        )
    }
}

/// Abelian invariants of an abelian table, from the sizes of `A_p^{p^i}`.
pub(crate) fn abelian_type_of_table(t: &Table) -> AbelianType {
    let n = t.n() as u64;
    let orders = t.element_orders();
    let mut cyclic = Vec::new();
    for (p, _) in factorize(n) {
        let sylow: Vec<usize> = (0..t.n())
            .filter(|&x| factorize(orders[x]).iter().all(|&(q, _)| q == p))
            .collect();
        let mut layer = sylow;
        let mut sizes = vec![layer.len() as u64];
        while layer.len() > 1 {
            let mut next: Vec<usize> = layer.iter().map(|&x| t.pow(x, p)).collect();
            next.sort_unstable();
            next.dedup();
            layer = next;
            sizes.push(layer.len() as u64);
        }
        let log = |mut x: u64| {
            let mut k = 0;
            while x > 1 {
                x /= p;
                k += 1;
            }
            k
        };
        for i in 0..sizes.len() - 1 {
            let count = log(sizes[i] / sizes[i + 1]);
            let next = if i + 2 < sizes.len() {
                log(sizes[i + 1] / sizes[i + 2])
            } else {
                0
            };
            for _ in 0..count - next {
                cyclic.push(p.pow(i as u32 + 1));
            }
        }
    }
    AbelianType::new(&cyclic).expect("positive orders")
}

/// Table of `G/N` for a normal subgroup given as a mask; cosets are numbered
/// in order of their least element.
pub(crate) fn quotient_table(t: &Table, normal: &[bool]) -> Table {
    let n = t.n();
    let members = mask_to_list(normal);
    let mut coset = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if coset[x] == usize::MAX {
            let id = reps.len();
            reps.push(x);
            for &h in &members {
                coset[t.m(x, h)] = id;
            }
        }
    }
    let k = reps.len();
    let mut mul = vec![0u32; k * k];
    for i in 0..k {
        for j in 0..k {
            mul[i * k + j] = coset[t.m(reps[i], reps[j])] as u32;
        }
    }
    Table::from_mul(k, mul)
}

pub fn fingerprint_of_table(t: &Table) -> Fingerprint {
    let orders = t.element_orders();
    let exponent = orders.iter().fold(1, |a, &b| crate::perm::lcm(a, b));
    let classes = t.conjugacy_classes();
    let centre_order = mask_to_list(&t.centre()).len() as u64;
    let derived_mask = t.derived();
    let derived = mask_to_list(&derived_mask);
    let mut series = vec![t.n() as u64];
    let mut cur = t.restrict(&derived);
    series.push(cur.n() as u64);
    while cur.n() > 1 {
        let d = mask_to_list(&cur.derived());
        if d.len() == cur.n() {
            break;
        }
        cur = cur.restrict(&d);
        series.push(cur.n() as u64);
    }
    if series.len() >= 2 && series[0] == series[1] {
        series.pop();
    }
    let abelianization = abelian_type_of_table(&quotient_table(t, &derived_mask));
    Fingerprint {
        order: t.n() as u64,
        order_histogram: histogram(orders.iter().copied()),
        class_sizes: histogram(classes.iter().map(|c| c.len() as u64)),
        centre_order,
        derived_order: derived.len() as u64,
        derived_series: series,
        exponent,
        abelianization,
    }
}

pub fn fingerprint(g: &PermGroup) -> Result<Fingerprint> {
    Ok(fingerprint_of_table(&*g.table()?))
}

fn hash_of<T: Hash>(x: &T) -> u64 {
    let mut h = DefaultHasher::new();
    x.hash(&mut h);
    h.finish()
}

/// Isomorphism-invariant colour of every element.
pub(crate) fn element_colors(t: &Table) -> Vec<u64> {
    let n = t.n();
    let orders = t.element_orders();
    let centre = t.centre();
    let derived = t.derived();
    let mut roots = vec![0u32; n];
    for y in 0..n {
        roots[t.m(y, y)] += 1;
    }
    let base: Vec<u64> = (0..n)
        .map(|x| {
            hash_of(&(
                orders[x],
                t.centralizer_size(x),
                roots[x],
                centre[x],
                derived[x],
            ))
        })
        .collect();
    (0..n)
        .map(|x| {
            let sq = t.m(x, x);
            hash_of(&(base[x], base[sq], base[t.m(sq, x)]))
        })
        .collect()
}

/// Element colours together with the colour histogram.
pub(crate) struct Profile {
    pub colors: Vec<u64>,
    pub histogram: Vec<(u64, u64)>,
}

impl Profile {
    pub fn new(t: &Table) -> Profile {
        let colors = element_colors(t);
        let histogram = histogram(colors.iter().copied());
        Profile { colors, histogram }
    }
}

enum Op {
    Define { y: usize, x: usize, k: usize },
    Check { y: usize, x: usize, k: usize },
}

/// Backtracking over images of a fixed generating sequence of the source.
/// Each stage extends the map from `<g_1..g_{j-1}>` to `<g_1..g_j>` along
/// precomputed Cayley-graph edges and checks every edge it closes.
pub(crate) struct Search<'a> {
    src: &'a Table,
    dst: &'a Table,
    src_colors: &'a [u64],
    dst_colors: &'a [u64],
    pub gens: Vec<usize>,
    stages: Vec<Vec<Op>>,
}

impl<'a> Search<'a> {
    pub fn new(src: &'a Table, dst: &'a Table, src_colors: &'a [u64], dst_colors: &'a [u64]) -> Search<'a> {
        let gens = src.generators();
        let n = src.n();
        let mut reached = vec![false; n];
        reached[0] = true;
        let mut members = vec![0usize];
        let mut stages = Vec::new();
        for j in 0..gens.len() {
            let mut ops = Vec::new();
            let mut fresh = Vec::new();
            let visit = |x: usize, k: usize, ops: &mut Vec<Op>, fresh: &mut Vec<usize>, reached: &mut Vec<bool>| {
                let y = src.m(x, gens[k]);
                if reached[y] {
                    ops.push(Op::Check { y, x, k });
                } else {
                    reached[y] = true;
                    ops.push(Op::Define { y, x, k });
                    fresh.push(y);
                }
            };
            for &x in &members {
                visit(x, j, &mut ops, &mut fresh, &mut reached);
            }
            let mut i = 0;
            while i < fresh.len() {
                let x = fresh[i];
                for k in 0..=j {
                    visit(x, k, &mut ops, &mut fresh, &mut reached);
                }
                i += 1;
            }
            members.extend(fresh);
            stages.push(ops);
        }
        Search {
            src,
            dst,
            src_colors,
            dst_colors,
            gens,
            stages,
        }
    }

    fn candidates(&self, j: usize) -> Vec<usize> {
        let c = self.src_colors[self.gens[j]];
        (0..self.dst.n()).filter(|&y| self.dst_colors[y] == c).collect()
    }

    /// Runs stage `j` with generator image `img[j]` already set. Returns the
    /// elements it defined, or `None` (with everything undone) on conflict.
    fn run_stage(&self, j: usize, img: &[usize], map: &mut [usize], used: &mut [bool]) -> Option<Vec<usize>> {
        let mut defined = Vec::new();
        for op in &self.stages[j] {
            let ok = match *op {
                Op::Define { y, x, k } => {
                    let v = self.dst.m(map[x], img[k]);
                    if used[v] || self.dst_colors[v] != self.src_colors[y] {
                        false
                    } else {
                        map[y] = v;
                        used[v] = true;
                        defined.push(y);
                        true
                    }
                }
                Op::Check { y, x, k } => self.dst.m(map[x], img[k]) == map[y],
            };
            if !ok {
                for &y in &defined {
                    used[map[y]] = false;
                    map[y] = usize::MAX;
                }
                return None;
            }
        }
        Some(defined)
    }

    /// First isomorphism (in lexicographic order of generator images) whose
    /// first `forced.len()` generator images are `forced`.
    pub fn first(&self, forced: &[usize]) -> Option<Vec<usize>> {
        let n = self.src.n();
        if n != self.dst.n() {
            return None;
        }
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        map[0] = 0;
        used[0] = true;
        let mut img = vec![usize::MAX; self.gens.len()];
        if self.rec(0, forced, &mut img, &mut map, &mut used) {
            Some(map)
        } else {
            None
        }
    }

    fn rec(&self, j: usize, forced: &[usize], img: &mut [usize], map: &mut [usize], used: &mut [bool]) -> bool {
        if j == self.gens.len() {
            return true;
        }
        let cands = if j < forced.len() {
            vec![forced[j]]
        } else {
            self.candidates(j)
        };
        for c in cands {
            if self.dst_colors[c] != self.src_colors[self.gens[j]] {
                continue;
            }
            img[j] = c;
            if let Some(defined) = self.run_stage(j, img, map, used) {
                if self.rec(j + 1, forced, img, map, used) {
                    return true;
                }
                for &y in &defined {
                    used[map[y]] = false;
                    map[y] = usize::MAX;
                }
            }
        }
        false
    }

    pub fn candidates_for(&self, j: usize) -> Vec<usize> {
        self.candidates(j)
    }
}

/// An isomorphism between two tables as an index map, if one exists.
pub fn table_isomorphism(a: &Table, b: &Table) -> Option<Vec<usize>> {
    if a.n() != b.n() {
        return None;
    }
    let pa = Profile::new(a);
    let pb = Profile::new(b);
    if pa.histogram != pb.histogram {
        return None;
    }
    Search::new(a, b, &pa.colors, &pb.colors).first(&[])
}

/// Whether two tables are isomorphic, using precomputed profiles.
pub(crate) fn tables_isomorphic(a: &Table, pa: &Profile, b: &Table, pb: &Profile) -> bool {
    a.n() == b.n() && pa.histogram == pb.histogram && Search::new(a, b, &pa.colors, &pb.colors).first(&[]).is_some()
}

/// An isomorphism `g -> h` as a verified homomorphism, if one exists.
pub fn find_isomorphism(g: &PermGroup, h: &PermGroup) -> Result<Option<Homomorphism>> {
    if g.order() != h.order() {
        return Ok(None);
    }
    let tg = g.table()?;
    let th = h.table()?;
    let map = match table_isomorphism(&tg, &th) {
        Some(m) => m,
        None => return Ok(None),
    };
    let images = g
        .generators()
        .iter()
        .map(|x| {
            let i = tg.index_of(x).expect("generator is an element");
            th.element(map[i]).expect("table from group").clone()
        })
        .collect();
    let hom = Homomorphism::new(g, h, images)?;
    if !hom.is_injective() {
        return Err(Error::Precondition("isomorphism witness failed to verify".into()));
    }
    Ok(Some(hom))
}

/// Exact isomorphism test. Abelian groups are compared by invariants, which
/// needs no table; otherwise both groups must be within the table limit.
pub fn is_isomorphic(g: &PermGroup, h: &PermGroup) -> Result<bool> {
    if g.order() != h.order() {
        return Ok(false);
    }
    let (ga, ha) = (g.is_abelian(), h.is_abelian());
    if ga != ha {
        return Ok(false);
    }
    if ga {
        return Ok(abelian_invariants(g)? == abelian_invariants(h)?);
    }
    Ok(find_isomorphism(g, h)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn grp(deg: usize, gens: &[&str]) -> PermGroup {
        PermGroup::new(
            gens.iter()
                .map(|s| Permutation::parse_cycles(s, deg).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn q8_is_not_d8() {
        let q8 = grp(8, &["(1 2 4 7)(3 6 8 5)", "(1 3 4 8)(2 5 7 6)"]);
        let d8 = grp(4, &["(1 2 3 4)", "(1 3)"]);
        assert!(!is_isomorphic(&q8, &d8).unwrap());
        assert_ne!(fingerprint(&q8).unwrap(), fingerprint(&d8).unwrap());
    }

    #[test]
    fn two_cyclic_six() {
        let a = grp(6, &["(1 2 3 4 5 6)"]);
        let b = grp(5, &["(1 2 3)", "(4 5)"]);
        assert!(is_isomorphic(&a, &b).unwrap());
        let w = find_isomorphism(&a, &b).unwrap().unwrap();
        assert!(w.is_injective() && w.is_surjective());
    }

    #[test]
    fn s3_regular_vs_natural() {
        let s3 = grp(3, &["(1 2)", "(1 2 3)"]);
        let reg = s3.table().unwrap().regular_group();
        assert!(find_isomorphism(&s3, &reg).unwrap().is_some());
        let fp = fingerprint(&s3).unwrap();
        assert_eq!(fp.derived_series, vec![6, 3, 1]);
        assert_eq!(fp.abelianization.factors(), &[2]);
        assert_eq!(fp.class_sizes, vec![(1, 1), (2, 1), (3, 1)]);
    }

    #[test]
    fn abelianization_of_c2_c4() {
        let g = grp(6, &["(1 2)", "(3 4 5 6)"]);
        assert_eq!(fingerprint(&g).unwrap().abelianization.factors(), &[2, 4]);
    }
}
