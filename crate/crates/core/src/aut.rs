//! Automorphism groups as permutation groups on element indices, and the
//! integrability tests that only look at `G`.

use std::sync::Arc;

use crate::config::gates;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::iso::{is_isomorphic, Profile, Search};
use crate::perm::Permutation;
use crate::structure::{centralizer, derived_subgroup, frattini, quotient};
use crate::table::Table;

/// `Aut(G)` acting on the element indices of `G`'s table.
#[derive(Clone, Debug)]
pub struct AutGroup {
    group: PermGroup,
    table: Arc<Table>,
    carrier: PermGroup,
    inner: PermGroup,
}

fn check_gate(g: &PermGroup) -> Result<()> {
    let gate = gates().aut;
    if g.order_u64() > gate {
        return Err(Error::GateExceeded {
            what: "automorphism group input order",
            size: g.order_u64(),
            gate,
        });
    }
    Ok(())
}

fn perm_or_identity(n: usize, maps: Vec<Vec<usize>>) -> PermGroup {
    let gens: Vec<Permutation> = maps
        .into_iter()
        .map(|m| Permutation::from_images_unchecked(m.into_iter().map(|x| x as u32).collect()))
        .filter(|p| !p.is_identity())
        .collect();
    if gens.is_empty() {
        PermGroup::trivial(n)
    } else {
        PermGroup::new(gens).expect("same degree")
    }
}

/// Generators of `Aut` of a table, as index maps. Images of the table's
/// generating sequence are searched level by level; a candidate image is only
/// tried when it lies outside the orbit already generated at that level.
pub(crate) fn automorphism_generators(t: &Table) -> Vec<Vec<usize>> {
    let prof = Profile::new(t);
    let search = Search::new(t, t, &prof.colors, &prof.colors);
    let gens = search.gens.clone();
    let mut found: Vec<Vec<usize>> = Vec::new();
    for j in (0..gens.len()).rev() {
        let prefix: Vec<usize> = gens[..j].to_vec();
        let level: Vec<&Vec<usize>> = found
            .iter()
            .filter(|m| prefix.iter().all(|&g| m[g] == g))
            .collect();
        let mut orbit = orbit_of(gens[j], &level, t.n());
        for c in search.candidates_for(j) {
            if orbit[c] {
                continue;
            }
            let mut forced = prefix.clone();
            forced.push(c);
            if let Some(map) = search.first(&forced) {
                found.push(map);
                let level: Vec<&Vec<usize>> = found
                    .iter()
                    .filter(|m| prefix.iter().all(|&g| m[g] == g))
                    .collect();
                orbit = orbit_of(gens[j], &level, t.n());
            }
        }
    }
    found
}

fn orbit_of(x: usize, maps: &[&Vec<usize>], n: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[x] = true;
    let mut queue = vec![x];
    let mut i = 0;
    while i < queue.len() {
        for m in maps {
            let y = m[queue[i]];
            if !seen[y] {
                seen[y] = true;
                queue.push(y);
            }
        }
        i += 1;
    }
    seen
}

pub fn automorphism_group(g: &PermGroup) -> Result<AutGroup> {
    check_gate(g)?;
    let table = g.table()?;
    let n = table.n();
    let carrier = perm_or_identity(n, automorphism_generators(&table));
    let inner_maps: Vec<Vec<usize>> = table
        .generators()
        .iter()
        .map(|&s| (0..n).map(|x| table.conj(x, s)).collect())
        .collect();
    let inner = perm_or_identity(n, inner_maps);
    Ok(AutGroup {
        group: g.clone(),
        table,
        carrier,
        inner,
    })
}

impl AutGroup {
    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn table(&self) -> &Table {
        &self.table
    }

    /// `Aut(G)` as permutations of element indices.
    pub fn carrier(&self) -> &PermGroup {
        &self.carrier
    }

    /// `Inn(G)`, a normal subgroup of the carrier.
    pub fn inner(&self) -> &PermGroup {
        &self.inner
    }

    pub fn order(&self) -> u64 {
        self.carrier.order_u64()
    }

    /// Image of an element of `G` under an automorphism of the carrier.
    pub fn apply(&self, aut: &Permutation, x: &Permutation) -> Result<Permutation> {
        let i = self
            .table
            .index_of(x)
            .ok_or_else(|| Error::Precondition(format!("{} is not in the group", x)))?;
        Ok(self
            .table
            .element(aut.apply(i as u32) as usize)
            .expect("table from group")
            .clone())
    }

    /// The automorphism `aut` as an endomorphism of `G`.
    pub fn as_homomorphism(&self, aut: &Permutation) -> Result<crate::hom::Homomorphism> {
        let images = self
            .group
            .generators()
            .iter()
            .map(|x| self.apply(aut, x))
            .collect::<Result<Vec<_>>>()?;
        crate::hom::Homomorphism::new(&self.group, &self.group, images)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Condition {
    /// `Inn(G)` is not inside `Aut(G)'`: `G` has no integral.
    Fails,
    /// `Inn(G) ≤ Aut(G)'`: no conclusion.
    Holds,
}

/// Whether `Inn(G) ≤ Aut(G)'`, which every integrable group satisfies.
pub fn necessary_condition(g: &PermGroup) -> Result<Condition> {
    let aut = automorphism_group(g)?;
    necessary_condition_of(&aut)
}

pub fn necessary_condition_of(aut: &AutGroup) -> Result<Condition> {
    let d = derived_subgroup(aut.carrier());
    if aut.inner().is_subgroup_of(&d) {
        Ok(Condition::Holds)
    } else {
        Ok(Condition::Fails)
    }
}

/// Whether `Inn(G) ≤ Φ(Aut(G))`, i.e. whether `G` is the Frattini subgroup of some group.
pub fn eick_test(g: &PermGroup) -> Result<bool> {
    let aut = automorphism_group(g)?;
    let phi = frattini(aut.carrier())?;
    Ok(aut.inner().is_subgroup_of(&phi))
}

/// For an integral `H` of `G`, the quotient `H / C_H(H')`, an integral of `Inn(G)`.
pub fn inn_integral(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    let d = derived_subgroup(h);
    if !is_isomorphic(&d, g)? {
        return Err(Error::Precondition("H is not an integral of G".into()));
    }
    let c = centralizer(h, &d)?;
    Ok(quotient(h, &c)?.0)
}
