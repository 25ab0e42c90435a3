//! Full subgroup lattices of small groups by cyclic extension: every
//! subgroup is a join of cyclic subgroups, so joining known subgroups with
//! cyclic ones, starting from the trivial subgroup, reaches all of them.

use std::collections::HashMap;

use crate::config::gates;
use crate::error::{Error, Result};
use crate::table::{mask_to_list, Table};

type Bits = Vec<u64>;

fn to_bits(mask: &[bool]) -> Bits {
    let mut b = vec![0u64; (mask.len() + 63) / 64];
    for (i, &m) in mask.iter().enumerate() {
        if m {
            b[i / 64] |= 1 << (i % 64);
        }
    }
    b
}

fn has(b: &Bits, i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

pub struct Lattice {
    n: usize,
    subgroups: Vec<Bits>,
    maximal: Vec<bool>,
}

impl Lattice {
    pub fn new(t: &Table) -> Result<Lattice> {
        let n = t.n();
        let cap = gates().lattice_subgroups;
        let mut cyclic: Vec<(usize, Bits)> = Vec::new();
        let mut seen_cyclic: HashMap<Bits, ()> = HashMap::new();
        for x in 1..n {
            let b = to_bits(&t.closure(&[x]));
            if seen_cyclic.insert(b.clone(), ()).is_none() {
                cyclic.push((x, b));
            }
        }
        let mut subgroups: Vec<Bits> = vec![to_bits(&t.closure(&[]))];
        let mut gens: Vec<Vec<usize>> = vec![Vec::new()];
        let mut index: HashMap<Bits, usize> = HashMap::new();
        index.insert(subgroups[0].clone(), 0);
        let mut maximal = vec![n > 1];
        let full = to_bits(&vec![true; n]);
        let mut i = 0;
        while i < subgroups.len() {
            let mut is_max = subgroups[i] != full;
            for (x, _) in &cyclic {
                if has(&subgroups[i], *x) {
                    continue;
                }
                let mut g = gens[i].clone();
                g.push(*x);
                let join = to_bits(&t.closure(&g));
                if join != full {
                    is_max = false;
                }
                if !index.contains_key(&join) {
                    if subgroups.len() as u64 >= cap {
                        return Err(Error::GateExceeded {
                            what: "subgroup count",
                            size: subgroups.len() as u64 + 1,
                            gate: cap,
                        });
                    }
                    index.insert(join.clone(), subgroups.len());
                    subgroups.push(join);
                    gens.push(g);
                    maximal.push(false);
                }
            }
            maximal[i] = is_max;
            i += 1;
        }
        Ok(Lattice {
            n,
            subgroups,
            maximal,
        })
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    /// Element lists of every subgroup.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        self.subgroups.iter().map(|b| self.elements(b)).collect()
    }

    pub fn maximal_subgroups(&self) -> Vec<Vec<usize>> {
        self.subgroups
            .iter()
            .zip(&self.maximal)
            .filter(|(_, &m)| m)
            .map(|(b, _)| self.elements(b))
            .collect()
    }

    /// Intersection of the maximal subgroups (the whole group when there are none).
    pub fn frattini(&self) -> Vec<usize> {
        let mut acc = to_bits(&vec![true; self.n]);
        for (b, &m) in self.subgroups.iter().zip(&self.maximal) {
            if m {
                for (w, x) in acc.iter_mut().zip(b) {
                    *w &= x;
                }
            }
        }
        self.elements(&acc)
    }

    fn elements(&self, b: &Bits) -> Vec<usize> {
        mask_to_list(&(0..self.n).map(|i| has(b, i)).collect::<Vec<_>>())
    }
}
