//! Deterministic Schreier–Sims stabilizer chains.

use num_bigint::BigUint;

use crate::perm::Permutation;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub base_point: u32,
    /// Strong generators of the stabilizer of the earlier base points.
    pub gens: Vec<Permutation>,
    /// Points of the basic orbit, in discovery order.
    pub orbit: Vec<u32>,
    /// `slot[x]` indexes `transversal` for orbit points, `u32::MAX` otherwise.
    slot: Vec<u32>,
    /// `transversal[i]` maps `base_point` to `orbit[i]`.
    transversal: Vec<Permutation>,
}

impl Level {
    fn new(base_point: u32, degree: usize) -> Self {
        let mut slot = vec![u32::MAX; degree];
        slot[base_point as usize] = 0;
        Level {
            base_point,
            gens: Vec::new(),
            orbit: vec![base_point],
            slot,
            transversal: vec![Permutation::identity(degree)],
        }
    }

    fn extend_orbit(&mut self) {
        let mut i = 0;
        while i < self.orbit.len() {
            let x = self.orbit[i];
            let ux = self.transversal[i].clone();
            for g in &self.gens {
                let y = g.apply(x);
                if self.slot[y as usize] == u32::MAX {
                    self.slot[y as usize] = self.orbit.len() as u32;
                    self.orbit.push(y);
                    self.transversal.push(g.mul(&ux));
                }
            }
            i += 1;
        }
    }

    #[inline]
    pub fn rep(&self, x: u32) -> Option<&Permutation> {
        match self.slot[x as usize] {
            u32::MAX => None,
            i => Some(&self.transversal[i as usize]),
        }
    }

    pub fn transversal(&self) -> &[Permutation] {
        &self.transversal
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Chain {
    pub degree: usize,
    pub levels: Vec<Level>,
}

impl Chain {
    /// Builds a chain for `<gens>`. Base points are taken from `base_prefix`
    /// first and then as the lowest point moved by a generator that fixes
    /// all earlier base points.
    pub fn build(degree: usize, gens: &[Permutation], base_prefix: &[u32]) -> Chain {
        let mut chain = Chain {
            degree,
            levels: base_prefix
                .iter()
                .map(|&b| Level::new(b, degree))
                .collect(),
        };
        let gens: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        loop {
            let next = gens
                .iter()
                .filter(|g| chain.levels.iter().all(|l| g.apply(l.base_point) == l.base_point))
                .filter_map(|g| g.moved_points().next())
                .min();
            match next {
                Some(p) => chain.levels.push(Level::new(p, degree)),
                None => break,
            }
        }
        if !gens.is_empty() {
            let mut first = gens.clone();
            first.dedup();
            chain.levels[0].gens = first;
            for i in 1..chain.levels.len() {
                let fixed: Vec<Permutation> = chain.levels[i - 1]
                    .gens
                    .iter()
                    .filter(|g| g.apply(chain.levels[i - 1].base_point) == chain.levels[i - 1].base_point)
                    .cloned()
                    .collect();
                chain.levels[i].gens = fixed;
            }
        }
        for level in chain.levels.iter_mut() {
            level.extend_orbit();
        }
        chain.complete();
        chain.trim();
        chain
    }

    /// Sifts `g` starting at level `from`; returns the residue and the level
    /// at which sifting stopped (`levels.len()` when it passed every level).
    pub fn strip(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let b = h.apply(level.base_point);
            match level.rep(b) {
                Some(u) => h = u.inverse().mul(&h),
                None => return (h, i),
            }
        }
        (h, self.levels.len())
    }

    fn complete(&mut self) {
        if self.levels.is_empty() {
            return;
        }
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let lvl = i as usize;
            let mut restart_at: Option<usize> = None;
            'outer: for oi in 0..self.levels[lvl].orbit.len() {
                let x = self.levels[lvl].orbit[oi];
                let ux = self.levels[lvl].transversal[oi].clone();
                let ngens = self.levels[lvl].gens.len();
                for gi in 0..ngens {
                    let s = &self.levels[lvl].gens[gi];
                    let y = s.apply(x);
                    let uy = self.levels[lvl].rep(y).expect("orbit closed");
                    // Schreier generator u_y^-1 s u_x fixes the base point.
                    let sg = uy.inverse().mul(s).mul(&ux);
                    if sg.is_identity() {
                        continue;
                    }
                    let (h, j) = self.strip(&sg, lvl + 1);
                    if j < self.levels.len() || !h.is_identity() {
                        if j == self.levels.len() {
                            if let Some(p) = h.moved_points().next() {
                                self.levels.push(Level::new(p, self.degree));
                            }
                        }
                        for l in (lvl + 1)..=j.min(self.levels.len() - 1) {
                            self.levels[l].gens.push(h.clone());
                            self.levels[l].extend_orbit();
                        }
                        restart_at = Some(j.min(self.levels.len() - 1));
                        break 'outer;
                    }
                }
            }
            match restart_at {
                Some(j) => i = j as isize,
                None => i -= 1,
            }
        }
    }

    /// Drops trailing levels with trivial orbit that came from a base prefix.
    fn trim(&mut self) {
        while let Some(l) = self.levels.last() {
            if l.orbit.len() == 1 && l.gens.is_empty() {
                self.levels.pop();
            } else {
                break;
            }
        }
    }

    pub fn sift(&self, g: &Permutation) -> bool {
        let (h, j) = self.strip(g, 0);
        j == self.levels.len() && h.is_identity()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        match self.levels.first() {
            Some(l) => l.gens.clone(),
            None => Vec::new(),
        }
    }

    /// Every strong generator sifts to the identity.
    pub fn verify(&self) -> bool {
        self.levels
            .iter()
            .all(|l| l.gens.iter().all(|g| self.sift(g)))
    }
}
