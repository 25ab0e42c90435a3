//! Structural invariants: derived and central series, centre, quotients,
//! abelian invariants, Frattini subgroup and coinvariants.

use std::collections::HashMap;
use std::fmt;

use num_traits::ToPrimitive;

use crate::config::gates;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::hom::Homomorphism;
use crate::perm::{lcm, Permutation};
use crate::table::Table;

/// Invariant factors `d_1 | d_2 | ... | d_r`, each at least 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AbelianType {
    factors: Vec<u64>,
}

impl AbelianType {
    /// Normalizes any list of cyclic orders into invariant-factor form.
    pub fn new(orders: &[u64]) -> Result<AbelianType> {
        if orders.iter().any(|&d| d == 0) {
            return Err(Error::InvalidParameters("cyclic factor of order 0".into()));
        }
        let mut primary: HashMap<u64, Vec<u64>> = HashMap::new();
        for &d in orders {
            for (p, e) in factorize(d) {
                primary.entry(p).or_default().push(p.pow(e));
            }
        }
        Ok(Self::from_primary(primary))
    }

    fn from_primary(mut primary: HashMap<u64, Vec<u64>>) -> AbelianType {
        let r = primary.values().map(|v| v.len()).max().unwrap_or(0);
        let mut factors = vec![1u64; r];
        for v in primary.values_mut() {
            v.sort_unstable_by(|a, b| b.cmp(a));
            for (i, &q) in v.iter().enumerate() {
                factors[r - 1 - i] *= q;
            }
        }
        AbelianType { factors }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    /// Minimal number of generators.
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Number of cyclic factors of order divisible by `p`.
    pub fn p_rank(&self, p: u64) -> usize {
        self.factors.iter().filter(|&&d| d % p == 0).count()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    /// Prime-power cyclic factors, ascending.
    pub fn primary_factors(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self
            .factors
            .iter()
            .flat_map(|&d| factorize(d).into_iter().map(|(p, e)| p.pow(e)))
            .collect();
        out.sort_unstable();
        out
    }
}

impl fmt::Display for AbelianType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", d)?;
        }
        write!(f, ")")
    }
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == vec![(n, 1)]
}

fn group_or_trivial(degree: usize, gens: Vec<Permutation>) -> PermGroup {
    let gens: Vec<Permutation> = gens.into_iter().filter(|g| !g.is_identity()).collect();
    if gens.is_empty() {
        PermGroup::trivial(degree)
    } else {
        PermGroup::new(gens).expect("generators share a degree")
    }
}

/// Adds `x` to the generators of `h` when it is not already a member.
fn extend(h: &PermGroup, x: &Permutation) -> Option<PermGroup> {
    if h.has(x) {
        return None;
    }
    let mut gens = h.reduced_generators();
    gens.retain(|g| !g.is_identity());
    gens.push(x.clone());
    Some(PermGroup::new(gens).expect("generators share a degree"))
}

/// Normal closure of `gens` in `g`.
pub fn normal_closure(g: &PermGroup, gens: &[Permutation]) -> PermGroup {
    let mut current: Vec<Permutation> = gens.iter().filter(|x| !x.is_identity()).cloned().collect();
    let mut n = group_or_trivial(g.degree(), current.clone());
    loop {
        let mut added = false;
        let snapshot = current.clone();
        for x in &snapshot {
            for y in g.generators() {
                let c = x.conjugate_by(y);
                if !n.has(&c) {
                    current.push(c);
                    n = group_or_trivial(g.degree(), current.clone());
                    added = true;
                }
            }
        }
        if !added {
            return n;
        }
    }
}

pub fn is_normal(g: &PermGroup, n: &PermGroup) -> bool {
    n.is_subgroup_of(g)
        && n
            .generators()
            .iter()
            .all(|x| g.generators().iter().all(|y| n.has(&x.conjugate_by(y))))
}

/// `[N, K]` for subgroups normalized by `g`; the result is the normal closure in `g`.
pub fn commutator_subgroup(g: &PermGroup, n: &PermGroup, k: &PermGroup) -> PermGroup {
    let mut comms = Vec::new();
    for a in n.generators() {
        for b in k.generators() {
            let c = Permutation::commutator(a, b);
            if !c.is_identity() && !comms.contains(&c) {
                comms.push(c);
            }
        }
    }
    normal_closure(g, &comms)
}

pub fn derived_subgroup(g: &PermGroup) -> PermGroup {
    commutator_subgroup(g, g, g)
}

/// `G, G', G'', ...` ending with the first repeated term.
pub fn derived_series(g: &PermGroup) -> Vec<PermGroup> {
    let mut out = vec![g.clone()];
    loop {
        let last = out.last().expect("nonempty");
        let d = derived_subgroup(last);
        if d.order() == last.order() {
            return out;
        }
        let done = d.is_trivial();
        out.push(d);
        if done {
            return out;
        }
    }
}

/// `G = γ_1 > γ_2 > ...` ending when the series stabilizes.
pub fn lower_central_series(g: &PermGroup) -> Vec<PermGroup> {
    let mut out = vec![g.clone()];
    loop {
        let last = out.last().expect("nonempty");
        let next = commutator_subgroup(g, last, g);
        if next.order() == last.order() {
            return out;
        }
        let done = next.is_trivial();
        out.push(next);
        if done {
            return out;
        }
    }
}

/// Nilpotency class, or `None` when the group is not nilpotent.
pub fn nilpotency_class(g: &PermGroup) -> Option<usize> {
    let series = lower_central_series(g);
    if series.last().expect("nonempty").is_trivial() {
        Some(series.len() - 1)
    } else {
        None
    }
}

pub fn is_solvable(g: &PermGroup) -> bool {
    derived_series(g).last().expect("nonempty").is_trivial()
}

pub fn exponent(g: &PermGroup) -> Result<u64> {
    check_enumerable(g)?;
    let mut e = 1;
    g.for_each_element(|x| e = lcm(e, x.order()));
    Ok(e)
}

fn check_enumerable(g: &PermGroup) -> Result<()> {
    let limit = gates().enumeration;
    if g.order_u64() > limit {
        return Err(Error::TooLarge {
            order: g.order().to_string(),
            limit,
        });
    }
    Ok(())
}

/// Centre by filtering the elements that commute with every generator.
pub fn centre_by_filtering(g: &PermGroup) -> Result<PermGroup> {
    check_enumerable(g)?;
    let mut z = PermGroup::trivial(g.degree());
    let gens = g.reduced_generators();
    let mut central = Vec::new();
    g.for_each_element(|x| {
        if gens.iter().all(|y| x.mul(y) == y.mul(x)) {
            central.push(x.clone());
        }
    });
    for x in central {
        if let Some(bigger) = extend(&z, &x) {
            z = bigger;
        }
    }
    Ok(z)
}

/// Centralizer of one element, as the stabilizer in the conjugation action
/// on its class. The class size is bounded by the coset gate.
pub fn centralizer_of_element(g: &PermGroup, x: &Permutation) -> Result<PermGroup> {
    let budget = gates().cosets;
    let gens = g.reduced_generators();
    let mut orbit: Vec<Permutation> = vec![x.clone()];
    let mut trans: Vec<Permutation> = vec![g.identity()];
    let mut index: HashMap<Permutation, usize> = HashMap::new();
    index.insert(x.clone(), 0);
    let mut i = 0;
    while i < orbit.len() {
        for s in &gens {
            let y = orbit[i].conjugate_by(s);
            if !index.contains_key(&y) {
                if orbit.len() as u64 >= budget {
                    return Err(Error::GateExceeded {
                        what: "conjugacy class size",
                        size: orbit.len() as u64 + 1,
                        gate: budget,
                    });
                }
                index.insert(y.clone(), orbit.len());
                orbit.push(y);
                trans.push(trans[i].mul(s));
            }
        }
        i += 1;
    }
    let target = g.order() / num_bigint::BigUint::from(orbit.len());
    let mut c = PermGroup::trivial(g.degree());
    'outer: for (i, y) in orbit.iter().enumerate() {
        for s in &gens {
            if *c.order() == target {
                break 'outer;
            }
            let j = index[&y.conjugate_by(s)];
            let h = trans[i].mul(s).mul(&trans[j].inverse());
            if let Some(bigger) = extend(&c, &h) {
                c = bigger;
            }
        }
    }
    Ok(c)
}

/// `C_G(K)` for a subgroup `K` of the same degree.
pub fn centralizer(g: &PermGroup, k: &PermGroup) -> Result<PermGroup> {
    let mut c = g.clone();
    for x in k.reduced_generators() {
        c = centralizer_of_element(&c, &x)?;
    }
    Ok(c)
}

/// Centre by successive centralizers of the generators.
pub fn centre_by_centralizers(g: &PermGroup) -> Result<PermGroup> {
    centralizer(g, g)
}

/// Element filtering below the enumeration gate, centralizers above it.
pub fn centre(g: &PermGroup) -> Result<PermGroup> {
    if g.order_u64() <= gates().enumeration.min(100_000) {
        centre_by_filtering(g)
    } else {
        centre_by_centralizers(g)
    }
}

/// `G ∩ K`, by filtering the smaller group. Gated by enumeration.
pub fn intersection(g: &PermGroup, k: &PermGroup) -> Result<PermGroup> {
    let (small, big) = if g.order() <= k.order() { (g, k) } else { (k, g) };
    check_enumerable(small)?;
    let mut out = PermGroup::trivial(g.degree());
    let mut members = Vec::new();
    small.for_each_element(|x| {
        if big.has(x) {
            members.push(x.clone());
        }
    });
    for x in members {
        if let Some(bigger) = extend(&out, &x) {
            out = bigger;
        }
    }
    Ok(out)
}

/// Canonical representative of the left coset `xN`: the element with the
/// lexicographically least images of the base points of `N`.
fn coset_key(n: &PermGroup, x: &Permutation) -> Permutation {
    let mut h = x.clone();
    for level in &n.chain().levels {
        let best = level
            .orbit
            .iter()
            .min_by_key(|&&y| h.apply(y))
            .copied()
            .expect("orbit nonempty");
        h = h.mul(level.rep(best).expect("orbit point"));
    }
    h
}

/// `G/N` realized on the left cosets of `N`, with the projection.
pub fn quotient(g: &PermGroup, n: &PermGroup) -> Result<(PermGroup, Homomorphism)> {
    if !is_normal(g, n) {
        return Err(Error::NotNormal);
    }
    let index = (g.order() / n.order()).to_u64().unwrap_or(u64::MAX);
    let budget = gates().cosets;
    if index > budget {
        return Err(Error::GateExceeded {
            what: "quotient index",
            size: index,
            gate: budget,
        });
    }
    let gens = g.generators();
    let mut reps = vec![coset_key(n, &g.identity())];
    let mut lookup: HashMap<Permutation, usize> = HashMap::new();
    lookup.insert(reps[0].clone(), 0);
    let mut images: Vec<Vec<u32>> = vec![Vec::new(); gens.len()];
    let mut i = 0;
    while i < reps.len() {
        for (k, s) in gens.iter().enumerate() {
            let key = coset_key(n, &s.mul(&reps[i]));
            let j = match lookup.get(&key) {
                Some(&j) => j,
                None => {
                    reps.push(key.clone());
                    lookup.insert(key, reps.len() - 1);
                    reps.len() - 1
                }
            };
            images[k].push(j as u32);
        }
        i += 1;
    }
    let perms: Vec<Permutation> = images
        .into_iter()
        .map(Permutation::from_images_unchecked)
        .collect();
    let q = PermGroup::new(perms.clone())?;
    let hom = Homomorphism::new(g, &q, perms)?;
    Ok((q, hom))
}

/// Invariant factors of an abelian group, from the orders of the subgroups
/// `A_p^{p^i}` of each Sylow subgroup.
pub fn abelian_invariants(a: &PermGroup) -> Result<AbelianType> {
    if !a.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let order = a.order_u64();
    let gens = a.reduced_generators();
    let mut primary: HashMap<u64, Vec<u64>> = HashMap::new();
    for (p, e) in factorize(order) {
        let cofactor = order / p.pow(e);
        let mut layer: Vec<Permutation> = gens.iter().map(|g| g.pow(cofactor as i64)).collect();
        let mut sizes = vec![group_or_trivial(a.degree(), layer.clone()).order_u64()];
        while *sizes.last().expect("nonempty") > 1 {
            layer = layer.iter().map(|g| g.pow(p as i64)).collect();
            sizes.push(group_or_trivial(a.degree(), layer.clone()).order_u64());
        }
        let mut exps = Vec::new();
        for i in 0..sizes.len() - 1 {
            let count = log_p(sizes[i] / sizes[i + 1], p);
            let next = if i + 2 < sizes.len() {
                log_p(sizes[i + 1] / sizes[i + 2], p)
            } else {
                0
            };
            for _ in 0..count - next {
                exps.push(p.pow(i as u32 + 1));
            }
        }
        primary.insert(p, exps);
    }
    Ok(AbelianType::from_primary(primary))
}

fn log_p(mut x: u64, p: u64) -> u64 {
    let mut k = 0;
    while x > 1 {
        x /= p;
        k += 1;
    }
    k
}

/// Conjugacy classes, each listed with its elements. Gated by enumeration.
pub fn conjugacy_classes(g: &PermGroup) -> Result<Vec<Vec<Permutation>>> {
    check_enumerable(g)?;
    let gens = g.reduced_generators();
    let mut seen: HashMap<Permutation, ()> = HashMap::new();
    let mut out = Vec::new();
    let mut all = Vec::new();
    g.for_each_element(|x| all.push(x.clone()));
    all.sort();
    for x in all {
        if seen.contains_key(&x) {
            continue;
        }
        seen.insert(x.clone(), ());
        let mut class = vec![x];
        let mut i = 0;
        while i < class.len() {
            for s in &gens {
                let y = class[i].conjugate_by(s);
                if !seen.contains_key(&y) {
                    seen.insert(y.clone(), ());
                    class.push(y);
                }
            }
            i += 1;
        }
        class.sort();
        out.push(class);
    }
    Ok(out)
}

/// Intersection of all maximal subgroups, from the full subgroup lattice.
pub fn frattini(g: &PermGroup) -> Result<PermGroup> {
    let gate = gates().lattice;
    if g.order_u64() > gate {
        return Err(Error::GateExceeded {
            what: "subgroup lattice order",
            size: g.order_u64(),
            gate,
        });
    }
    if g.is_trivial() {
        return Ok(g.clone());
    }
    let table = g.table()?;
    let lattice = crate::lattice::Lattice::new(&table)?;
    let phi = lattice.frattini();
    let elems: Vec<Permutation> = phi
        .iter()
        .map(|&i| table.element(i).expect("table from group").clone())
        .collect();
    let mut out = PermGroup::trivial(g.degree());
    for x in elems {
        if let Some(bigger) = extend(&out, &x) {
            out = bigger;
        }
    }
    Ok(out)
}

/// `[A, H]` for an action of `H` on the abelian group `A`. The action maps
/// into permutations of the element indices of `A`'s table; every image is
/// checked to be an automorphism.
pub fn coinvariants(a: &PermGroup, action: &Homomorphism) -> Result<PermGroup> {
    if !a.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let table = a.table()?;
    if action.codomain().degree() != table.n() {
        return Err(Error::DegreeMismatch(table.n(), action.codomain().degree()));
    }
    let mut gens = Vec::new();
    for h in action.images() {
        if !is_automorphism(&table, h) {
            return Err(Error::Precondition(format!("{} is not an automorphism", h)));
        }
        for x in a.reduced_generators() {
            let i = table.index_of(&x).expect("generator is an element");
            let j = h.apply(i as u32) as usize;
            let y = table.m(table.inv(i), j);
            if y != 0 {
                gens.push(table.element(y).expect("table from group").clone());
            }
        }
    }
    Ok(group_or_trivial(a.degree(), gens))
}

pub(crate) fn is_automorphism(t: &Table, h: &Permutation) -> bool {
    let n = t.n();
    h.degree() == n
        && (0..n).all(|x| {
            (0..n).all(|y| h.apply(t.m(x, y) as u32) as usize == t.m(h.apply(x as u32) as usize, h.apply(y as u32) as usize))
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    fn grp(deg: usize, gens: &[&str]) -> PermGroup {
        PermGroup::new(gens.iter().map(|s| p(s, deg)).collect()).unwrap()
    }

    fn q8() -> PermGroup {
        grp(8, &["(1 2 4 7)(3 6 8 5)", "(1 3 4 8)(2 5 7 6)"])
    }

    #[test]
    fn s4_derived_series() {
        let s4 = grp(4, &["(1 2)", "(1 2 3 4)"]);
        let orders: Vec<u64> = derived_series(&s4).iter().map(|h| h.order_u64()).collect();
        assert_eq!(orders, vec![24, 12, 4, 1]);
        assert_eq!(nilpotency_class(&s4), None);
    }

    #[test]
    fn quaternion_centre_and_quotient() {
        let q = q8();
        assert_eq!(q.order_u64(), 8);
        let z = centre(&q).unwrap();
        assert_eq!(z.order_u64(), 2);
        assert_eq!(centre_by_centralizers(&q).unwrap().order_u64(), 2);
        let (quo, hom) = quotient(&q, &z).unwrap();
        assert_eq!(quo.order_u64(), 4);
        assert_eq!(abelian_invariants(&quo).unwrap().factors(), &[2, 2]);
        assert_eq!(hom.kernel().order_u64(), 2);
        assert_eq!(frattini(&q).unwrap().order_u64(), 2);
    }

    #[test]
    fn quotient_by_whole_group_is_trivial() {
        let s3 = grp(3, &["(1 2)", "(1 2 3)"]);
        let (quo, _) = quotient(&s3, &s3).unwrap();
        assert!(quo.is_trivial());
        let c2 = grp(3, &["(1 2)"]);
        assert!(matches!(quotient(&s3, &c2), Err(Error::NotNormal)));
    }

    #[test]
    fn invariants_of_c2_c4_c4() {
        let a = grp(10, &["(1 2)", "(3 4 5 6)", "(7 8 9 10)"]);
        let t = abelian_invariants(&a).unwrap();
        assert_eq!(t.factors(), &[2, 4, 4]);
        assert_eq!(t.rank(), 3);
        let trivial = abelian_invariants(&PermGroup::trivial(3)).unwrap();
        assert_eq!(trivial.rank(), 0);
        assert_eq!(AbelianType::new(&[6, 4]).unwrap().factors(), &[2, 12]);
    }

    #[test]
    fn frattini_of_small_groups() {
        let v4 = grp(4, &["(1 2)", "(3 4)"]);
        assert!(frattini(&v4).unwrap().is_trivial());
        let c8 = grp(8, &["(1 2 3 4 5 6 7 8)"]);
        assert_eq!(frattini(&c8).unwrap().order_u64(), 4);
    }

    #[test]
    fn s3_exponent_and_classes() {
        let s3 = grp(3, &["(1 2)", "(1 2 3)"]);
        assert_eq!(exponent(&s3).unwrap(), 6);
        assert_eq!(conjugacy_classes(&s3).unwrap().len(), 3);
    }

    #[test]
    fn centre_paths_agree() {
        for g in [
            grp(4, &["(1 2 3 4)", "(1 3)"]),
            grp(6, &["(1 2 3)", "(4 5)"]),
            grp(5, &["(1 2 3 4 5)", "(1 2)"]),
            q8(),
        ] {
            let a = centre_by_filtering(&g).unwrap();
            let b = centre_by_centralizers(&g).unwrap();
            assert_eq!(a.order(), b.order());
            assert!(a.is_subgroup_of(&b) && b.is_subgroup_of(&a));
        }
    }
}
