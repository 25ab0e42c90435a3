//! Finite towers of groups with connecting epimorphisms, the truncated form
//! of an inverse system.
//!
//! Text format (levels and maps are 1-based, a map goes from level `i` down
//! to level `j < i` and lists the images of the generators of level `i`):
//!
//! ```text
//! tower levels=2
//! level 1
//! permgroup degree=3
//! (1 2 3)
//! ---
//! level 2
//! permgroup degree=6
//! (1 2 3)
//! (4 5 6)
//! ---
//! map 2 1
//! (1 2 3)
//! ()
//! ---
//! ```

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::aut::automorphism_group;
use crate::construct::{construct, direct_product, group_from, wreath, HnIntegral};
use crate::descriptor::GroupDescriptor;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::hom::Homomorphism;
use crate::integral::{search_integral, IntegralReport};
use crate::iso::{find_isomorphism, is_isomorphic};
use crate::perm::Permutation;
use crate::structure::{abelian_invariants, derived_subgroup, intersection, is_normal};

/// Largest number of levels a tower may have.
pub const MAX_LEVELS: usize = 4;

/// Levels `0..L` (written `1..=L` in text) and epimorphisms between them.
/// Every map `i -> i-1` is present; longer maps are compositions unless
/// given explicitly, in which case they are checked against the composition.
#[derive(Clone, Debug)]
pub struct InverseSystem {
    levels: Vec<PermGroup>,
    maps: BTreeMap<(usize, usize), Homomorphism>,
}

fn same_subgroup(a: &PermGroup, b: &PermGroup) -> bool {
    a.order() == b.order() && a.is_subgroup_of(b)
}

fn same_map(f: &Homomorphism, g: &Homomorphism) -> bool {
    f.images() == g.images()
}

impl InverseSystem {
    /// Builds a tower from 0-based maps `(i, j) -> hom`, `i > j`.
    pub fn new(levels: Vec<PermGroup>, maps: BTreeMap<(usize, usize), Homomorphism>) -> Result<InverseSystem> {
        if levels.is_empty() || levels.len() > MAX_LEVELS {
            return Err(Error::InvalidParameters(format!(
                "a tower needs between 1 and {} levels",
                MAX_LEVELS
            )));
        }
        for (&(i, j), f) in &maps {
            if i <= j || i >= levels.len() {
                return Err(Error::Incoherent(format!("map {} -> {} has bad indices", i + 1, j + 1)));
            }
            if f.domain().generators() != levels[i].generators() || f.codomain().generators() != levels[j].generators() {
                return Err(Error::Incoherent(format!("map {} -> {} does not join its levels", i + 1, j + 1)));
            }
            if !f.is_surjective() {
                return Err(Error::Incoherent(format!("map {} -> {} is not surjective", i + 1, j + 1)));
            }
        }
        for i in 1..levels.len() {
            if !maps.contains_key(&(i, i - 1)) {
                return Err(Error::Incoherent(format!("missing map {} -> {}", i + 1, i)));
            }
        }
        let sys = InverseSystem { levels, maps };
        sys.check_coherence()?;
        Ok(sys)
    }

    /// `φ_{j,k} ∘ φ_{i,j} = φ_{i,k}` on generators for every stored long map.
    pub fn check_coherence(&self) -> Result<()> {
        for (&(i, k), f) in &self.maps {
            if i == k + 1 {
                continue;
            }
            let composed = self.chain_map(i, k)?;
            if !same_map(f, &composed) {
                return Err(Error::Incoherent(format!("map {} -> {} disagrees with the composition", i + 1, k + 1)));
            }
        }
        Ok(())
    }

    fn chain_map(&self, i: usize, j: usize) -> Result<Homomorphism> {
        let mut f = self.maps[&(i, i - 1)].clone();
        for l in (j + 1..i).rev() {
            f = f.then(&self.maps[&(l, l - 1)])?;
        }
        Ok(f)
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// Level `i`, 0-based.
    pub fn level(&self, i: usize) -> &PermGroup {
        &self.levels[i]
    }

    pub fn levels(&self) -> &[PermGroup] {
        &self.levels
    }

    /// `φ_{i,j}` for `i > j`, 0-based; the identity when `i == j`.
    pub fn map(&self, i: usize, j: usize) -> Result<Homomorphism> {
        if i < j || i >= self.len() {
            return Err(Error::InvalidParameters(format!("no map {} -> {}", i + 1, j + 1)));
        }
        if i == j {
            let g = &self.levels[i];
            return Homomorphism::new(g, g, g.generators().to_vec());
        }
        match self.maps.get(&(i, j)) {
            Some(f) => Ok(f.clone()),
            None => self.chain_map(i, j),
        }
    }

    /// `G, G^2, ..., G^L` with the projections forgetting the last factor.
    pub fn powers(g: &PermGroup, levels: usize) -> Result<InverseSystem> {
        let gens = g.reduced_generators();
        let factor = group_from(g.degree(), gens.clone());
        let groups: Vec<PermGroup> = (1..=levels).map(|k| direct_product(&vec![factor.clone(); k])).collect();
        let mut maps = BTreeMap::new();
        for i in 1..levels {
            let (src, dst) = (&groups[i], &groups[i - 1]);
            let mut images: Vec<Permutation> = dst.generators().to_vec();
            images.extend(std::iter::repeat(dst.identity()).take(gens.len()));
            maps.insert((i, i - 1), Homomorphism::new(src, dst, images)?);
        }
        InverseSystem::new(groups, maps)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("tower levels={}\n", self.len());
        for (i, g) in self.levels.iter().enumerate() {
            s.push_str(&format!("level {}\n", i + 1));
            s.push_str(&g.to_text());
            s.push_str("---\n");
        }
        for (&(i, j), f) in &self.maps {
            s.push_str(&format!("map {} {}\n", i + 1, j + 1));
            for x in f.images() {
                s.push_str(&x.to_cycle_string());
                s.push('\n');
            }
            s.push_str("---\n");
        }
        s
    }

    pub fn from_text(text: &str) -> Result<InverseSystem> {
        let lines: Vec<&str> = text.lines().collect();
        let err = |line: usize, m: &str| Error::Parse {
            line: line + 1,
            column: 1,
            message: m.to_string(),
        };
        let count: usize = lines
            .first()
            .and_then(|l| l.trim_end().strip_prefix("tower levels="))
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| err(0, "expected `tower levels=<L>`"))?;
        let mut pos = 1;
        let mut levels = Vec::new();
        let mut maps = BTreeMap::new();
        while pos < lines.len() {
            let l = lines[pos].trim_end();
            if l.trim().is_empty() {
                pos += 1;
                continue;
            }
            let words: Vec<&str> = l.split_whitespace().collect();
            match words.as_slice() {
                ["level", k] => {
                    if k.parse::<usize>().ok() != Some(levels.len() + 1) {
                        return Err(err(pos, "levels must be numbered 1, 2, ... in order"));
                    }
                    let (g, next) = PermGroup::parse_block(&lines, pos + 1)?;
                    levels.push(g);
                    pos = next;
                    if lines.get(pos).map(|l| l.trim_end()) == Some("---") {
                        pos += 1;
                    }
                }
                ["map", i, j] => {
                    let (i, j) = match (i.parse::<usize>(), j.parse::<usize>()) {
                        (Ok(i), Ok(j)) if i > j && j >= 1 && i <= levels.len() => (i - 1, j - 1),
                        _ => return Err(err(pos, "bad map indices")),
                    };
                    let (src, dst) = (&levels[i], &levels[j]);
                    let mut images = Vec::new();
                    pos += 1;
                    while pos < lines.len() && lines[pos].trim_end() != "---" {
                        images.push(crate::perm::parse_cycles_at(lines[pos].trim_end(), dst.degree(), pos + 1)?);
                        pos += 1;
                    }
                    pos += 1;
                    maps.insert((i, j), Homomorphism::new(src, dst, images)?);
                }
                _ => return Err(err(pos, "expected `level <k>` or `map <i> <j>`")),
            }
        }
        if levels.len() != count {
            return Err(err(0, &format!("header says {} levels, found {}", count, levels.len())));
        }
        InverseSystem::new(levels, maps)
    }
}

fn is_cyclic(g: &PermGroup) -> Result<bool> {
    Ok(g.is_abelian() && abelian_invariants(g)?.rank() <= 1)
}

/// For every level `G_i ≅ K_i'`, with isomorphisms that commute with the
/// connecting maps. A compatible family is determined by its top member, so
/// the search runs over `Aut(G_L)` at the top level only.
pub fn levelwise_integral_check(gsys: &InverseSystem, ksys: &InverseSystem) -> Result<bool> {
    if gsys.len() != ksys.len() {
        return Err(Error::Incoherent("towers have different lengths".into()));
    }
    gsys.check_coherence()?;
    ksys.check_coherence()?;
    let derived: Vec<PermGroup> = ksys.levels().par_iter().map(derived_subgroup).collect();
    let iso: Vec<Result<bool>> = gsys
        .levels()
        .par_iter()
        .zip(derived.par_iter())
        .map(|(g, d)| is_isomorphic(g, d))
        .collect();
    for r in iso {
        if !r? {
            return Ok(false);
        }
    }
    let top = gsys.len() - 1;
    let g_top = gsys.level(top);
    // Subgroups of a cyclic group are characteristic, so any top isomorphism works.
    if is_cyclic(g_top)? {
        return Ok(true);
    }
    let d_top = &derived[top];
    let d_sys_top = group_from(d_top.degree(), d_top.reduced_generators());
    let tau0 = match find_isomorphism(g_top, &d_sys_top)? {
        Some(t) => t,
        None => return Ok(false),
    };
    let k_top = ksys.level(top);
    let g_kernels: Vec<PermGroup> = (0..top).map(|i| gsys.map(top, i).map(|f| f.kernel())).collect::<Result<_>>()?;
    let k_maps: Vec<Homomorphism> = (0..top).map(|i| ksys.map(top, i)).collect::<Result<_>>()?;
    let aut = automorphism_group(g_top)?;
    let mut autos = aut.carrier().elements()?;
    autos.sort();
    let found = autos.par_iter().find_map_first(|a| {
        let attempt = || -> Result<bool> {
            let tau = aut.as_homomorphism(a)?.then(&tau0)?;
            for i in 0..top {
                let into_k = Homomorphism::new(g_top, k_top, tau.images().to_vec())?;
                let sigma = into_k.then(&k_maps[i])?;
                if !same_subgroup(&sigma.kernel(), &g_kernels[i]) {
                    return Ok(false);
                }
            }
            Ok(true)
        };
        match attempt() {
            Ok(true) => Some(Ok(())),
            Ok(false) => None,
            Err(e) => Some(Err(e)),
        }
    });
    match found {
        Some(Ok(())) => Ok(true),
        Some(Err(e)) => Err(e),
        None => Ok(false),
    }
}

fn dihedral(n: u64) -> Result<PermGroup> {
    construct(&GroupDescriptor::Dihedral(2 * n))
}

/// Whether `G ∩ H' < G` for a normal subgroup `G ≅ (D_{2n})^m` of `H`. The
/// answer is always true; `false` indicates a bug.
pub fn dihedral_power_obstruction(n: u64, m: usize, h: &PermGroup, g: &PermGroup) -> Result<bool> {
    if n < 3 || m < 1 {
        return Err(Error::InvalidParameters("need n >= 3 and m >= 1".into()));
    }
    if !is_normal(h, g) {
        return Err(Error::NotNormal);
    }
    let model = direct_product(&vec![dihedral(n)?; m]);
    if !is_isomorphic(g, &model)? {
        return Err(Error::Precondition(format!("subgroup is not isomorphic to (D_{})^{}", 2 * n, m)));
    }
    let hd = derived_subgroup(h);
    let meet = intersection(g, &hd)?;
    Ok(meet.order() < g.order())
}

/// `D_{2n} ≀ C_m` and its base group `(D_{2n})^m`.
pub fn dihedral_wreath(n: u64, m: usize) -> Result<(PermGroup, PermGroup)> {
    let d = dihedral(n)?;
    let top = construct(&GroupDescriptor::Cyclic(m as u64))?;
    let top = if top.degree() == m { top } else { PermGroup::trivial(m) };
    let h = wreath(&d, &top);
    let base = direct_product(&vec![d; m]);
    Ok((h, base))
}

/// Catalog search for an integral of `(D_{2n})^m`, limited to catalog orders.
pub fn search_no_integral_of_dihedral_power(n: u64, m: usize, bound: u64) -> Result<IntegralReport> {
    let g = direct_product(&vec![dihedral(n)?; m]);
    let cap = crate::config::gates().catalog_order;
    let effective = bound.min(cap);
    let mut report = search_integral(&g, effective, None)?;
    report.bound = bound;
    if effective < bound {
        report
            .notes
            .push(format!("orders above {} were not searched: no catalog", effective));
    }
    if report.findings.is_empty() {
        report.notes.push(format!(
            "(D_{})^{} has no integral by the dihedral-power obstruction; that argument is not machine-checked here",
            2 * n,
            m
        ));
    }
    Ok(report)
}

/// For `H_n = A ⋊ X`, every proper `R` with `A ≤ R < H`, paired with whether `R' < A`.
pub fn hn_intermediate(hn: &HnIntegral) -> Result<Vec<(PermGroup, bool)>> {
    let k = hn.x.len();
    let a_order = hn.a.order_u64();
    // Proper subspaces of F_2^k, each as the bitmask set of its vectors.
    let mut spaces: Vec<Vec<usize>> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for gens in 0u64..(1 << ((1usize << k) - 1)) {
        let mut span = vec![0usize];
        for v in 1..(1usize << k) {
            if gens >> (v - 1) & 1 == 1 {
                let add: Vec<usize> = span.iter().map(|&u| u ^ v).collect();
                for u in add {
                    if !span.contains(&u) {
                        span.push(u);
                    }
                }
            }
        }
        span.sort_unstable();
        if span.len() < 1 << k && seen.insert(span.clone()) {
            spaces.push(span);
        }
    }
    spaces.sort_by_key(|s| (s.len(), s.clone()));
    let degree = hn.group.degree();
    let mut out = Vec::new();
    for space in spaces {
        let mut gens = hn.a.reduced_generators();
        for &v in &space {
            let mut x = Permutation::identity(degree);
            for (j, xj) in hn.x.iter().enumerate() {
                if v >> j & 1 == 1 {
                    x = x.mul(xj);
                }
            }
            gens.push(x);
        }
        let r = group_from(degree, gens);
        let smaller = derived_subgroup(&r).order_u64() < a_order;
        out.push((r, smaller));
    }
    Ok(out)
}
