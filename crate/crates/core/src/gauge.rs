//! Identities on balls of Cayley graphs.
//!
//! `B_k(S)` is the set of products of at most `k` elements of a symmetric
//! generating set `S`. The checks here evaluate laws on such balls and compare
//! the outcome with what holds in the whole group.

use std::collections::HashSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::gates;
use crate::construct::group_from;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::{lcm, Permutation};
use crate::structure::{exponent, nilpotency_class, normal_closure};
use crate::word::Word;

/// A finite list of laws `w = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentitySet {
    pub name: String,
    pub words: Vec<Word>,
}

fn w(s: &str) -> Word {
    s.parse().expect("preset word")
}

impl IdentitySet {
    pub fn new(name: impl Into<String>, words: Vec<Word>) -> IdentitySet {
        IdentitySet {
            name: name.into(),
            words,
        }
    }

    /// Presets: `abelian`, `A<m>` (abelian of exponent dividing `m`), `N<c>`
    /// (nilpotent of class at most `c`), `exponent-2`, `metabelian`, `s3`
    /// (a basis for the variety generated by `S3`).
    pub fn preset(name: &str) -> Result<IdentitySet> {
        let words = match name {
            "abelian" => vec![w("[x,y]")],
            "exponent-2" => vec![w("x^2")],
            "metabelian" => vec![w("[[x,y],[z,w]]")],
            "s3" => vec![w("x^6"), w("[x^2,y^2]"), w("[x,y]^3"), w("[x^2,[y,z]]"), w("[[x,y],[z,w]]")],
            _ => {
                let num = |s: &str| s.parse::<u64>().ok().filter(|&v| v > 0);
                if let Some(m) = name.strip_prefix('A').and_then(num) {
                    vec![w("[x,y]"), Word::var(0).pow(m as i64)]
                } else if let Some(c) = name.strip_prefix('N').and_then(num) {
                    vec![Word::left_normed_vars(c as usize)]
                } else {
                    return Err(Error::InvalidParameters(format!("unknown identity preset '{}'", name)));
                }
            }
        };
        Ok(IdentitySet::new(name, words))
    }

    pub fn rank(&self) -> usize {
        self.words.iter().map(Word::rank).max().unwrap_or(0)
    }
}

/// The ball `B_k(S)`; elements are listed by distance from the identity, and
/// within one distance by image array.
#[derive(Clone, Debug)]
pub struct Ball {
    generators: Vec<Permutation>,
    radius: usize,
    /// `|B_0|, |B_1|, ..., |B_k|`.
    sizes: Vec<usize>,
    elements: Vec<Permutation>,
}

impl Ball {
    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `|B_i|` for `i = 0..=k`.
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Elements of `B_i` for `i <= k`.
    pub fn within(&self, i: usize) -> &[Permutation] {
        &self.elements[..self.sizes[i.min(self.radius)]]
    }
}

fn check_symmetric(g: &PermGroup, s: &[Permutation]) -> Result<()> {
    for x in s {
        if x.degree() != g.degree() {
            return Err(Error::DegreeMismatch(g.degree(), x.degree()));
        }
        if !g.has(x) {
            return Err(Error::InvalidParameters(format!("{} is not in the group", x)));
        }
        if !s.contains(&x.inverse()) {
            return Err(Error::InvalidParameters(format!("set is not symmetric: {} has no inverse in it", x)));
        }
    }
    Ok(())
}

/// `B_k(S)` by breadth-first search, bounded by the ball gate.
pub fn ball(g: &PermGroup, s: &[Permutation], k: usize) -> Result<Ball> {
    check_symmetric(g, s)?;
    let cap = gates().ball;
    let id = g.identity();
    let mut seen: HashSet<Permutation> = HashSet::new();
    seen.insert(id.clone());
    let mut elements = vec![id];
    let mut sizes = vec![1];
    let mut frontier = 0;
    for _ in 0..k {
        let mut layer: Vec<Permutation> = Vec::new();
        for x in &elements[frontier..] {
            for y in s {
                let z = x.mul(y);
                if seen.insert(z.clone()) {
                    layer.push(z);
                }
            }
        }
        if (elements.len() + layer.len()) as u64 > cap {
            return Err(Error::GateExceeded {
                what: "ball size",
                size: (elements.len() + layer.len()) as u64,
                gate: cap,
            });
        }
        layer.sort();
        frontier = elements.len();
        elements.extend(layer);
        sizes.push(elements.len());
    }
    let mut generators = s.to_vec();
    generators.sort();
    generators.dedup();
    Ok(Ball {
        generators,
        radius: k,
        sizes,
        elements,
    })
}

/// A failing substitution: `words[identity]` evaluated at `assignment` is `value`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub identity: usize,
    pub word: Word,
    pub assignment: Vec<Permutation>,
    pub value: Permutation,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} != 1 at", self.word)?;
        for (i, x) in self.assignment.iter().enumerate() {
            write!(f, " x{}={}", i + 1, x.to_cycle_string())?;
        }
        Ok(())
    }
}

fn assignment_count(len: usize, rank: usize) -> u64 {
    (len as u64).saturating_pow(rank as u32)
}

/// The lexicographically least violation over all substitutions from
/// `elements`, identities taken in order. Work is split on the first variable.
pub fn find_violation(ids: &IdentitySet, elements: &[Permutation]) -> Result<Option<Violation>> {
    let budget = gates().assignments;
    let total: u64 = ids.words.iter().map(|w| assignment_count(elements.len(), w.rank())).sum();
    if total > budget {
        return Err(Error::GateExceeded {
            what: "identity assignments",
            size: total,
            gate: budget,
        });
    }
    if elements.is_empty() {
        return Ok(None);
    }
    for (i, word) in ids.words.iter().enumerate() {
        let r = word.rank();
        if r == 0 {
            continue;
        }
        let n = elements.len();
        let hit = (0..n).into_par_iter().find_map_first(|first| {
            let mut idx = vec![0usize; r];
            idx[0] = first;
            let mut vals: Vec<Permutation> = idx.iter().map(|&j| elements[j].clone()).collect();
            loop {
                let v = word.eval(&vals).expect("rank checked");
                if !v.is_identity() {
                    return Some((vals, v));
                }
                // Odometer over positions 1..r, last position fastest.
                let mut pos = r;
                loop {
                    if pos == 1 {
                        return None;
                    }
                    pos -= 1;
                    idx[pos] += 1;
                    if idx[pos] < n {
                        vals[pos] = elements[idx[pos]].clone();
                        break;
                    }
                    idx[pos] = 0;
                    vals[pos] = elements[0].clone();
                }
            }
        });
        if let Some((assignment, value)) = hit {
            return Ok(Some(Violation {
                identity: i,
                word: word.clone(),
                assignment,
                value,
            }));
        }
    }
    Ok(None)
}

/// Whether every identity holds under every substitution from `B_k(S)`.
pub fn holds_on_ball(ids: &IdentitySet, g: &PermGroup, s: &[Permutation], k: usize) -> Result<bool> {
    let b = ball(g, s, k)?;
    Ok(find_violation(ids, b.elements())?.is_none())
}

/// Whether the identities hold in the whole group.
pub fn holds_in_group(ids: &IdentitySet, g: &PermGroup) -> Result<bool> {
    let mut elems = g.elements_with_limit(gates().ball)?;
    elems.sort();
    Ok(find_violation(ids, &elems)?.is_none())
}

/// `S ∪ S^-1`, sorted and without the identity.
pub fn symmetric_closure(s: &[Permutation]) -> Vec<Permutation> {
    let mut out: Vec<Permutation> = s
        .iter()
        .flat_map(|x| [x.clone(), x.inverse()])
        .filter(|x| !x.is_identity())
        .collect();
    out.sort();
    out.dedup();
    out
}

/// What laws checked on `B_1(S)` say about `G`, next to the true values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gauge1Report {
    pub generators_commute: bool,
    pub abelian: bool,
    /// Least common multiple of the orders of the elements of `S`.
    pub generator_exponent: u64,
    pub exponent: u64,
    /// Least `c` (up to the search limit) with `[x1, ..., x_{c+1}] = 1` on `B_1(S)`.
    pub class_on_generators: Option<usize>,
    pub class: Option<usize>,
}

impl Gauge1Report {
    /// The gauge-1 implications all hold.
    pub fn consistent(&self) -> bool {
        let ab = !self.generators_commute || (self.abelian && self.generator_exponent % self.exponent == 0);
        let nil = match self.class_on_generators {
            Some(c) => self.class.map_or(false, |k| k <= c),
            None => true,
        };
        ab && nil
    }
}

/// Largest class tried when looking for a left-normed law on the generators.
pub const CLASS_SEARCH_LIMIT: usize = 8;

pub fn gauge1_checks(g: &PermGroup, s: &[Permutation]) -> Result<Gauge1Report> {
    let b = ball(g, s, 1)?;
    let commute = IdentitySet::preset("abelian")?;
    let generators_commute = find_violation(&commute, b.elements())?.is_none();
    let generator_exponent = s.iter().fold(1, |e, x| lcm(e, x.order()));
    let mut class_on_generators = None;
    for c in 1..=CLASS_SEARCH_LIMIT {
        if assignment_count(b.len(), c + 1) > gates().assignments {
            break;
        }
        let law = IdentitySet::new(format!("N{}", c), vec![Word::left_normed_vars(c)]);
        if find_violation(&law, b.elements())?.is_none() {
            class_on_generators = Some(c);
            break;
        }
    }
    Ok(Gauge1Report {
        generators_commute,
        abelian: g.is_abelian(),
        generator_exponent,
        exponent: exponent(g)?,
        class_on_generators,
        class: nilpotency_class(g),
    })
}

/// The `S3` basis checked on `B_1(S)`, and membership of `G` in `A3 A2`
/// decided structurally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct S3Membership {
    pub basis_on_generators: bool,
    pub in_a3a2: bool,
}

impl S3Membership {
    pub fn agree(&self) -> bool {
        self.basis_on_generators == self.in_a3a2
    }
}

/// `G ∈ A_m A_2`: the subgroup generated by squares and commutators is
/// abelian of exponent dividing `m`.
pub fn in_product_with_a2(g: &PermGroup, m: u64) -> bool {
    let gens = g.reduced_generators();
    let mut vs: Vec<Permutation> = gens.iter().map(|x| x.mul(x)).collect();
    for a in &gens {
        for b in &gens {
            vs.push(Permutation::commutator(a, b));
        }
    }
    let k = normal_closure(g, &vs);
    k.is_abelian() && k.generators().iter().all(|x| m % x.order() == 0)
}

pub fn s3_variety_membership(g: &PermGroup, s: &[Permutation]) -> Result<S3Membership> {
    let b = ball(g, s, 1)?;
    let basis = IdentitySet::preset("s3")?;
    Ok(S3Membership {
        basis_on_generators: find_violation(&basis, b.elements())?.is_none(),
        in_a3a2: in_product_with_a2(g, 3),
    })
}

/// Outcome of the truncated wreath experiment for the metabelian law.
#[derive(Clone, Debug)]
pub struct MetabelianReport {
    pub n: usize,
    pub m: usize,
    pub shift: usize,
    pub group: PermGroup,
    pub generators: Vec<Permutation>,
    pub ball_size: usize,
    /// `None` when `[[x,y],[z,w]] = 1` on all of `B_n(S)`.
    pub violation: Option<Violation>,
    /// Four elements of `G` at which the metabelian law fails.
    pub non_metabelian_witness: Vec<Permutation>,
    /// Elements of `B_t ∩ E` tested against `W_{t/2}`, and how many were outside it.
    pub claim_checked: usize,
    pub claim_failures: usize,
}

impl MetabelianReport {
    pub fn holds_on_ball(&self) -> bool {
        self.violation.is_none()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "metabelian-experiment n={} M={} N={}\nball {}\nholds-on-ball {}\n",
            self.n,
            self.m,
            self.shift,
            self.ball_size,
            self.holds_on_ball()
        );
        if let Some(v) = &self.violation {
            s.push_str(&format!("violation {}\n", v));
        }
        let wit: Vec<String> = self.non_metabelian_witness.iter().map(|x| x.to_cycle_string()).collect();
        s.push_str(&format!("not-metabelian-witness {}\n", wit.join(" ")));
        s.push_str(&format!(
            "claim checked={} failures={}\n",
            self.claim_checked, self.claim_failures
        ));
        s
    }
}

const A5_A: &str = "(1 2)(3 4)";
const A5_B: &str = "(1 3 5)";

/// Points `5 z + i` for block `z` in `Z/M` and `i` in `0..5`.
struct Wreath {
    m: usize,
}

impl Wreath {
    fn degree(&self) -> usize {
        5 * self.m
    }

    fn on_block(&self, p: &Permutation, z: i64) -> Permutation {
        let z = z.rem_euclid(self.m as i64) as usize;
        p.shifted(5 * z, self.degree())
    }

    fn shift(&self) -> Permutation {
        let m = self.m;
        Permutation::from_images((0..5 * m).map(|x| ((x + 5) % (5 * m)) as u32).collect()).expect("rotation")
    }

    fn in_base(&self, x: &Permutation) -> bool {
        (0..self.degree()).all(|p| x.apply(p as u32) as usize / 5 == p / 5)
    }
}

/// `A5 ≀ C_M` with `S = {a^±1, c^±1, x^±1}`, `c = b^(x^N)`; checks the
/// metabelian law on `B_n(S)`. `shift` overrides `N = 4n + 1`.
pub fn metabelian_wreath_experiment(n: usize, m: usize, shift: Option<usize>, seed: u64) -> Result<MetabelianReport> {
    if n == 0 {
        return Err(Error::InvalidParameters("n must be positive".into()));
    }
    if m < 4 * n + 2 {
        return Err(Error::InvalidParameters(format!("M must be at least 4n+2 = {}", 4 * n + 2)));
    }
    let shift = shift.unwrap_or(4 * n + 1);
    let wr = Wreath { m };
    let a0 = Permutation::parse_cycles(A5_A, 5)?;
    let b0 = Permutation::parse_cycles(A5_B, 5)?;
    let x = wr.shift();
    let xpow = |z: i64| x.pow(z);
    let a = wr.on_block(&a0, 0);
    let b = wr.on_block(&b0, 0);
    let c = b.conjugate_by(&xpow(shift as i64));
    let group = PermGroup::new(vec![a.clone(), c.clone(), x.clone()])?;
    let s = symmetric_closure(&[a.clone(), c.clone(), x.clone()]);
    let bn = ball(&group, &s, n)?;
    let law = IdentitySet::preset("metabelian")?;
    let violation = find_violation(&law, bn.elements())?;

    // G contains a copy of A5, which is not metabelian.
    let pool = [a.clone(), b.clone(), a.inverse(), b.inverse(), a.mul(&b), b.mul(&a)];
    let mut non_metabelian_witness = Vec::new();
    'search: for g1 in &pool {
        for g2 in &pool {
            for g3 in &pool {
                for g4 in &pool {
                    let v = law.words[0].eval(&[g1.clone(), g2.clone(), g3.clone(), g4.clone()])?;
                    if !v.is_identity() {
                        non_metabelian_witness = vec![g1.clone(), g2.clone(), g3.clone(), g4.clone()];
                        break 'search;
                    }
                }
            }
        }
    }

    // B_t ∩ E ⊆ W_{t/2}: exhaustive on B_n, random words of length t up to 4n.
    let window = |t: usize| -> PermGroup {
        let mut gens = Vec::new();
        for z in -(t as i64)..=(t as i64) {
            gens.push(a.conjugate_by(&xpow(z)));
            gens.push(c.conjugate_by(&xpow(z)));
        }
        group_from(wr.degree(), gens)
    };
    let windows: Vec<PermGroup> = (0..=2 * n).map(window).collect();
    let mut claim_checked = 0;
    let mut claim_failures = 0;
    for t in 1..=n {
        for e in &bn.elements()[bn.sizes()[t - 1]..bn.sizes()[t]] {
            if wr.in_base(e) {
                claim_checked += 1;
                if !windows[t / 2].has(e) {
                    claim_failures += 1;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in n + 1..=4 * n {
        for _ in 0..200 {
            let mut e = group.identity();
            for _ in 0..t {
                e = e.mul(s.choose(&mut rng).expect("nonempty"));
            }
            if wr.in_base(&e) {
                claim_checked += 1;
                if !windows[t / 2].has(&e) {
                    claim_failures += 1;
                }
            }
        }
    }
    Ok(MetabelianReport {
        n,
        m,
        shift,
        group,
        generators: s,
        ball_size: bn.len(),
        violation,
        non_metabelian_witness,
        claim_checked,
        claim_failures,
    })
}
