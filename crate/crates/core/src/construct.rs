//! Compiling descriptors into permutation groups, plus the explicit integral
//! constructions.
//!
//! Everything is built on concrete point sets. Groups given by presentations
//! are realized as regular representations of an explicit multiplication rule.

use num_bigint::BigUint;
use num_traits::One;

use crate::descriptor::GroupDescriptor;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::{gcd, Permutation};
use crate::structure::{abelian_invariants, factorize, is_prime, AbelianType};
use crate::table::{Table, TABLE_LIMIT};

fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidParameters(msg.into()))
}

/// `<gens>`, or the trivial group of the degree when every generator is the identity.
pub(crate) fn group_from(degree: usize, gens: Vec<Permutation>) -> PermGroup {
    let gens: Vec<Permutation> = gens.into_iter().filter(|g| !g.is_identity()).collect();
    if gens.is_empty() {
        PermGroup::trivial(degree.max(1))
    } else {
        PermGroup::new(gens).expect("generators share a degree")
    }
}

fn perm(images: Vec<u32>) -> Permutation {
    Permutation::from_images_unchecked(images)
}

/// Translations `x -> x + 1` on each block `Z/m_i`, then the map `x -> k x` on
/// all blocks at once. `k` must be a unit modulo every `m_i`.
fn affine_blocks(moduli: &[u64], k: i64) -> PermGroup {
    let degree: usize = moduli.iter().map(|&m| m as usize).sum();
    let mut gens = Vec::new();
    let mut offset = 0usize;
    let mut mult: Vec<u32> = (0..degree as u32).collect();
    for &m in moduli {
        let mut t: Vec<u32> = (0..degree as u32).collect();
        for x in 0..m {
            t[offset + x as usize] = (offset as u64 + (x + 1) % m) as u32;
            let kx = (k.rem_euclid(m as i64) as u64 * x) % m;
            mult[offset + x as usize] = (offset as u64 + kx) as u32;
        }
        gens.push(perm(t));
        offset += m as usize;
    }
    gens.push(perm(mult));
    group_from(degree, gens)
}

/// Linear map of `(Z/d)^2` given as `(a, b; c, d)`: `(x, y) -> (a x + b y, c x + d y)`.
type Mat2 = [i64; 4];

/// Pair blocks `(Z/d_i)^2` with both translations per block, and one linear
/// map applied blockwise. The map must be invertible modulo every `d_i`.
fn pair_blocks(moduli: &[u64], alpha: Mat2) -> PermGroup {
    let degree: usize = moduli.iter().map(|&m| (m * m) as usize).sum();
    let mut gens = Vec::new();
    let mut a: Vec<u32> = (0..degree as u32).collect();
    let mut offset = 0u64;
    for &d in moduli {
        let idx = |x: i64, y: i64| -> u32 {
            (offset + x.rem_euclid(d as i64) as u64 + d * y.rem_euclid(d as i64) as u64) as u32
        };
        let mut tx: Vec<u32> = (0..degree as u32).collect();
        let mut ty = tx.clone();
        for y in 0..d as i64 {
            for x in 0..d as i64 {
                let i = idx(x, y) as usize;
                tx[i] = idx(x + 1, y);
                ty[i] = idx(x, y + 1);
                a[i] = idx(alpha[0] * x + alpha[1] * y, alpha[2] * x + alpha[3] * y);
            }
        }
        gens.push(perm(tx));
        gens.push(perm(ty));
        offset += d * d;
    }
    gens.push(perm(a));
    group_from(degree, gens)
}

/// Disjoint union action of the factors.
pub fn direct_product(groups: &[PermGroup]) -> PermGroup {
    let degree: usize = groups.iter().map(|g| g.degree()).sum();
    let mut gens = Vec::new();
    let mut offset = 0;
    for g in groups {
        for x in g.generators() {
            gens.push(x.shifted(offset, degree));
        }
        offset += g.degree();
    }
    group_from(degree, gens)
}

/// Left-regular representation of `g`, generated by the images of its generators.
pub fn regular(g: &PermGroup) -> Result<PermGroup> {
    let t = g.table()?;
    let gens = g
        .generators()
        .iter()
        .map(|x| t.left_regular(t.index_of(x).expect("generator in group")))
        .collect();
    Ok(group_from(t.n(), gens))
}

/// Imprimitive wreath product: copies of `bottom` on the blocks permuted by `top`.
pub fn wreath(bottom: &PermGroup, top: &PermGroup) -> PermGroup {
    let m = bottom.degree();
    let k = top.degree();
    let degree = m * k;
    let mut gens = Vec::new();
    for orbit in top.orbits() {
        let block = orbit[0] as usize;
        for b in bottom.generators() {
            gens.push(b.shifted(block * m, degree));
        }
    }
    for t in top.generators() {
        let images: Vec<u32> = (0..degree)
            .map(|x| (t.apply((x / m) as u32) as usize * m + x % m) as u32)
            .collect();
        gens.push(perm(images));
    }
    group_from(degree, gens)
}

/// Extends `g` by automorphisms given as index maps on its table: the result
/// acts on the elements of `g`, with `g` acting by left multiplication.
/// Returns the extension and the copy of `g` inside it.
pub fn extend_by_automorphisms(g: &PermGroup, autos: &[Vec<usize>]) -> Result<(PermGroup, PermGroup)> {
    let t = g.table()?;
    for a in autos {
        if !crate::structure::is_automorphism(&t, &perm(a.iter().map(|&x| x as u32).collect())) {
            return Err(Error::NotHomomorphism("map is not an automorphism".into()));
        }
    }
    let lam: Vec<Permutation> = g
        .generators()
        .iter()
        .map(|x| t.left_regular(t.index_of(x).expect("generator in group")))
        .collect();
    let copy = group_from(t.n(), lam.clone());
    let mut gens = lam;
    gens.extend(autos.iter().map(|a| perm(a.iter().map(|&x| x as u32).collect())));
    Ok((group_from(t.n(), gens), copy))
}

fn quaternion(order: u64) -> PermGroup {
    let m = (order / 2) as usize;
    let n = order as usize;
    // Element a^i b^j has index i + m j.
    let mul = |x: usize, y: usize| -> usize {
        let (i, j) = (x % m, x / m);
        let (k, l) = (y % m, y / m);
        let mut e = if j == 1 { i + m - k } else { i + k };
        if j == 1 && l == 1 {
            e += m / 2;
        }
        e % m + m * (j ^ l)
    };
    let gens = [1, m]
        .iter()
        .map(|&g| perm((0..n).map(|h| mul(g, h) as u32).collect()))
        .collect();
    group_from(n, gens)
}

/// `SL(2, q)` for a prime `q`, acting on the nonzero vectors of `F_q^2`.
pub(crate) fn sl2_prime(q: u64) -> PermGroup {
    let vecs: Vec<(u64, u64)> = (0..q * q).map(|i| (i % q, i / q)).filter(|&v| v != (0, 0)).collect();
    let pos = |v: (u64, u64)| vecs.iter().position(|&w| w == v).unwrap() as u32;
    let act = |m: [u64; 4]| {
        perm(
            vecs.iter()
                .map(|&(x, y)| pos(((m[0] * x + m[1] * y) % q, (m[2] * x + m[3] * y) % q)))
                .collect(),
        )
    };
    group_from(vecs.len(), vec![act([1, 1, 0, 1]), act([1, 0, 1, 1])])
}

fn heisenberg(m: u64) -> PermGroup {
    let n = (m * m) as usize;
    let idx = |x: u64, y: u64| ((x % m) + m * (y % m)) as u32;
    let mut a = vec![0u32; n];
    let mut b = vec![0u32; n];
    for y in 0..m {
        for x in 0..m {
            a[idx(x, y) as usize] = idx(x + y, y);
            b[idx(x, y) as usize] = idx(x, y + 1);
        }
    }
    group_from(n, vec![perm(a), perm(b)])
}

fn symmetric(n: usize) -> PermGroup {
    if n < 2 {
        return PermGroup::trivial(n.max(1));
    }
    let t = Permutation::from_cycles(n, &[vec![0, 1]]).unwrap();
    let c = Permutation::from_cycles(n, &[(0..n as u32).collect()]).unwrap();
    group_from(n, vec![t, c])
}

fn alternating(n: usize) -> PermGroup {
    if n < 3 {
        return PermGroup::trivial(n.max(1));
    }
    let t = Permutation::from_cycles(n, &[vec![0, 1, 2]]).unwrap();
    let start = if n % 2 == 1 { 0 } else { 1 };
    let c = Permutation::from_cycles(n, &[(start..n as u32).collect()]).unwrap();
    group_from(n, vec![t, c])
}

fn is_power_of(n: u64, p: u64) -> bool {
    let mut n = n;
    while n > 1 && n % p == 0 {
        n /= p;
    }
    n == 1
}

fn semidirect(bottom: &PermGroup, top: &PermGroup, action: &[Vec<crate::word::Word>]) -> Result<PermGroup> {
    let bgens = bottom.generators();
    let tgens = top.generators();
    if action.len() != tgens.len() {
        return invalid(format!(
            "action lists {} maps for {} top generators",
            action.len(),
            tgens.len()
        ));
    }
    let nb = bottom.order_u64();
    let nt = top.order_u64();
    if nb.saturating_mul(nt) > TABLE_LIMIT {
        return Err(Error::TooLarge {
            order: nb.saturating_mul(nt).to_string(),
            limit: TABLE_LIMIT,
        });
    }
    let tb = bottom.table()?;
    let tt = top.table()?;
    let (nb, nt) = (nb as usize, nt as usize);
    let bidx: Vec<usize> = bgens.iter().map(|g| tb.index_of(g).unwrap()).collect();
    let tidx: Vec<usize> = tgens.iter().map(|g| tt.index_of(g).unwrap()).collect();

    let mut phis: Vec<Vec<usize>> = Vec::new();
    for (i, words) in action.iter().enumerate() {
        if words.len() != bgens.len() {
            return invalid(format!(
                "action for top generator {} has {} images for {} bottom generators",
                i + 1,
                words.len(),
                bgens.len()
            ));
        }
        let images: Vec<usize> = words
            .iter()
            .map(|w| w.eval_table(&tb, &bidx))
            .collect::<Result<_>>()?;
        phis.push(extend_map(&tb, &bidx, &images).ok_or_else(|| {
            Error::NotHomomorphism(format!("action of top generator {} is not an automorphism", i + 1))
        })?);
    }
    // phi_t for every t, as a map on bottom indices.
    let mut phi_t: Vec<Option<Vec<usize>>> = vec![None; nt];
    phi_t[0] = Some((0..nb).collect());
    let mut queue = vec![0usize];
    let mut q = 0;
    while q < queue.len() {
        let t = queue[q];
        q += 1;
        for (i, &s) in tidx.iter().enumerate() {
            let cur = phi_t[t].as_ref().unwrap();
            let next: Vec<usize> = (0..nb).map(|b| cur[phis[i][b]]).collect();
            let ts = tt.m(t, s);
            match &phi_t[ts] {
                None => {
                    phi_t[ts] = Some(next);
                    queue.push(ts);
                }
                Some(existing) if *existing != next => {
                    return Err(Error::NotHomomorphism(
                        "action does not respect the relations of the top group".into(),
                    ))
                }
                _ => {}
            }
        }
    }
    let phi_t: Vec<Vec<usize>> = phi_t.into_iter().map(|p| p.unwrap()).collect();
    let n = nb * nt;
    // (b, t) has index t nb + b; (b1,t1)(b2,t2) = (b1 phi_t1(b2), t1 t2).
    let left = |b1: usize, t1: usize| -> Permutation {
        perm(
            (0..n)
                .map(|e| {
                    let (b2, t2) = (e % nb, e / nb);
                    (tt.m(t1, t2) * nb + tb.m(b1, phi_t[t1][b2])) as u32
                })
                .collect(),
        )
    };
    let mut gens: Vec<Permutation> = bidx.iter().map(|&b| left(b, 0)).collect();
    gens.extend(tidx.iter().map(|&t| left(0, t)));
    Ok(group_from(n, gens))
}

/// Extends generator images to a full automorphism of the table, if possible.
pub(crate) fn extend_map(t: &Table, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let n = t.n();
    let mut map = vec![usize::MAX; n];
    map[0] = 0;
    let mut queue = vec![0usize];
    let mut q = 0;
    while q < queue.len() {
        let x = queue[q];
        q += 1;
        for (g, &im) in gens.iter().zip(images) {
            let y = t.m(x, *g);
            let v = t.m(map[x], im);
            if map[y] == usize::MAX {
                map[y] = v;
                queue.push(y);
            } else if map[y] != v {
                return None;
            }
        }
    }
    let mut hit = vec![false; n];
    for &v in &map {
        if v == usize::MAX || hit[v] {
            return None;
        }
        hit[v] = true;
    }
    Some(map)
}

/// Compiles a descriptor. The generator list is a deterministic function of the descriptor.
pub fn construct(d: &GroupDescriptor) -> Result<PermGroup> {
    use GroupDescriptor::*;
    match d {
        Cyclic(n) => {
            if *n == 0 {
                return invalid("cyclic order must be positive");
            }
            Ok(affine_blocks(&[*n], 1))
        }
        Abelian(v) => {
            if v.iter().any(|&x| x == 0) {
                return invalid("abelian factors must be positive");
            }
            let v: Vec<u64> = v.iter().copied().filter(|&x| x > 1).collect();
            Ok(affine_blocks(&v, 1))
        }
        Elementary(p, k) => {
            if !is_prime(*p) {
                return invalid(format!("{} is not prime", p));
            }
            Ok(affine_blocks(&vec![*p; *k as usize], 1))
        }
        Dihedral(n) => {
            if *n < 2 || n % 2 == 1 {
                return invalid("dihedral order must be even and at least 2");
            }
            let h = n / 2;
            Ok(match h {
                1 => affine_blocks(&[2], 1),
                2 => affine_blocks(&[2, 2], 1),
                _ => affine_blocks(&[h], -1),
            })
        }
        Quaternion(n) => {
            if *n < 8 || !n.is_power_of_two() {
                return invalid("quaternion order must be a power of 2, at least 8");
            }
            if *n > TABLE_LIMIT {
                return Err(Error::TooLarge {
                    order: n.to_string(),
                    limit: TABLE_LIMIT,
                });
            }
            Ok(quaternion(*n))
        }
        Symmetric(n) => Ok(symmetric(*n)),
        Alternating(n) => Ok(alternating(*n)),
        Sl23 => Ok(sl2_prime(3)),
        Heisenberg(m) => {
            if *m < 2 {
                return invalid("heisenberg modulus must be at least 2");
            }
            Ok(heisenberg(*m))
        }
        Modular(n) => {
            if *n < 3 || *n > 40 {
                return invalid("modular group needs 3 <= n <= 40");
            }
            let m = 1u64 << (n - 1);
            Ok(affine_blocks(&[m], (1i64 << (n - 2)) + 1))
        }
        Extraspecial(p, e) => {
            if *p == 2 || !is_prime(*p) {
                return invalid("extraspecial groups here need an odd prime");
            }
            if e == p {
                Ok(heisenberg(*p))
            } else if *e == p * p {
                Ok(affine_blocks(&[p * p], *p as i64 + 1))
            } else {
                invalid(format!("exponent must be {} or {}", p, p * p))
            }
        }
        Direct(v) => {
            if v.is_empty() {
                return invalid("direct product of nothing");
            }
            let gs = v.iter().map(construct).collect::<Result<Vec<_>>>()?;
            Ok(direct_product(&gs))
        }
        Semidirect { bottom, top, action } => semidirect(&construct(bottom)?, &construct(top)?, action),
        Wreath(b, t) => Ok(wreath(&construct(b)?, &construct(t)?)),
        Regular(inner) => regular(&construct(inner)?),
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

/// Order predicted by the recipe alone.
pub fn expected_order(d: &GroupDescriptor) -> Result<BigUint> {
    use GroupDescriptor::*;
    Ok(match d {
        Cyclic(n) | Dihedral(n) | Quaternion(n) => BigUint::from(*n),
        Abelian(v) => v.iter().fold(BigUint::one(), |acc, &x| acc * x),
        Elementary(p, k) => BigUint::from(*p).pow(*k),
        Symmetric(n) => factorial(*n),
        Alternating(n) => {
            if *n < 2 {
                BigUint::one()
            } else {
                factorial(*n) / 2u32
            }
        }
        Sl23 => BigUint::from(24u32),
        Heisenberg(m) => BigUint::from(*m).pow(3),
        Modular(n) => BigUint::one() << *n as usize,
        Extraspecial(p, _) => BigUint::from(*p).pow(3),
        Direct(v) => {
            let mut acc = BigUint::one();
            for x in v {
                acc *= expected_order(x)?;
            }
            acc
        }
        Semidirect { bottom, top, .. } => expected_order(bottom)? * expected_order(top)?,
        Wreath(b, t) => {
            let k = construct(t)?.degree() as u32;
            expected_order(b)?.pow(k) * expected_order(t)?
        }
        Regular(inner) => expected_order(inner)?,
    })
}

/// `N ⋊ <α>` with `N = ∏ C_{p d_i}` and `α` raising each generator to the
/// power `p + 1` (inversion when `p = 2`). Its derived subgroup is `A`.
pub fn lemma00_integral(a: &AbelianType, p: u64) -> Result<PermGroup> {
    if !is_prime(p) {
        return invalid(format!("{} is not prime", p));
    }
    if a.factors().iter().any(|&d| !is_power_of(d, p)) {
        return invalid(format!("{} is not a {}-group", a, p));
    }
    let moduli: Vec<u64> = a.factors().iter().map(|&d| d * p).collect();
    if moduli.is_empty() {
        return Ok(PermGroup::trivial(1));
    }
    let k = if p == 2 { -1 } else { p as i64 + 1 };
    Ok(affine_blocks(&moduli, k))
}

/// `(A × A) ⋊ <α>` with `α: (x, y) -> (y, y - x)`, or `(y, -x - y)` of order 3
/// when `use_order3` is set (needs no 3-torsion in `A`).
pub fn double_integral(a: &PermGroup, use_order3: bool) -> Result<PermGroup> {
    let ty = abelian_invariants(a)?;
    if use_order3 && ty.order() % 3 == 0 {
        return invalid("order-3 variant needs A without elements of order 3");
    }
    let alpha = if use_order3 { [0, 1, -1, -1] } else { [0, 1, -1, 1] };
    if ty.factors().is_empty() {
        return Ok(PermGroup::trivial(1));
    }
    Ok(pair_blocks(ty.factors(), alpha))
}

/// The homocyclic group of type `n^k` (`k` even) extended by an automorphism of order 3.
pub fn homocyclic_integral(n: u64, k: u32) -> Result<PermGroup> {
    if k == 0 || k % 2 == 1 {
        return invalid("rank must be even and positive");
    }
    if n < 2 {
        return invalid("exponent must be at least 2");
    }
    if n % 3 == 0 {
        return invalid("the order-3 automorphism needs 3 not dividing n");
    }
    Ok(pair_blocks(&vec![n; (k / 2) as usize], [0, 1, -1, -1]))
}

/// The group `H_n = A_n ⋊ X_n` together with its parts.
#[derive(Clone, Debug)]
pub struct HnIntegral {
    pub group: PermGroup,
    /// The cyclic normal subgroup `A_n`.
    pub a: PermGroup,
    /// Generators of the complement `X_n ≅ C_2^n`, one per basis vector.
    pub x: Vec<Permutation>,
}

/// `A_n = ∏ C_{p_v}` indexed by the nonzero vectors `v` of `F_2^n`, with
/// `X_n = F_2^n` inverting `C_{p_v}` exactly when `v·x = 1`.
pub fn hn_parts(n: u32, primes: &[u64]) -> Result<HnIntegral> {
    if n < 1 || n > 6 {
        return invalid("n must be between 1 and 6");
    }
    let count = (1usize << n) - 1;
    if primes.len() != count {
        return invalid(format!("need {} primes, got {}", count, primes.len()));
    }
    for (i, &p) in primes.iter().enumerate() {
        if p == 2 || !is_prime(p) {
            return invalid(format!("{} is not an odd prime", p));
        }
        if primes[..i].contains(&p) {
            return invalid(format!("prime {} repeated", p));
        }
    }
    let degree: usize = primes.iter().map(|&p| p as usize).sum();
    let mut rot: Vec<u32> = (0..degree as u32).collect();
    let mut refl: Vec<Vec<u32>> = vec![(0..degree as u32).collect(); n as usize];
    let mut offset = 0usize;
    for (i, &p) in primes.iter().enumerate() {
        let v = i + 1;
        let p = p as usize;
        for x in 0..p {
            rot[offset + x] = (offset + (x + 1) % p) as u32;
            for (j, r) in refl.iter_mut().enumerate() {
                if v >> j & 1 == 1 {
                    r[offset + x] = (offset + (p - x) % p) as u32;
                }
            }
        }
        offset += p;
    }
    let a = perm(rot);
    let x: Vec<Permutation> = refl.into_iter().map(perm).collect();
    let mut gens = vec![a.clone()];
    gens.extend(x.iter().cloned());
    Ok(HnIntegral {
        group: group_from(degree, gens),
        a: group_from(degree, vec![a]),
        x,
    })
}

pub fn hn_minimal_integral(n: u32, primes: &[u64]) -> Result<PermGroup> {
    Ok(hn_parts(n, primes)?.group)
}

/// Multiplicative order of `a` modulo `m`, if `a` is a unit.
pub fn multiplicative_order(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(1);
    }
    if gcd(a % m, m) != 1 {
        return None;
    }
    let mut x = a % m;
    let mut k = 1;
    while x != 1 {
        x = x * (a % m) % m;
        k += 1;
    }
    Some(k)
}

/// Prime divisors of `n`, ascending.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}
