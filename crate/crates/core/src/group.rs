//! Permutation groups backed by a stabilizer chain.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::Rng;

use crate::chain::Chain;
use crate::config::gates;
use crate::error::{Error, Result};
use crate::perm::{parse_cycles_at, Permutation};
use crate::table::Table;

#[derive(Default)]
struct Memo {
    table: OnceLock<Arc<Table>>,
}

/// A finite group given by generating permutations. Immutable once built;
/// clones share the chain and the memoized data.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Permutation>,
    chain: Arc<Chain>,
    order: BigUint,
    memo: Arc<Memo>,
}

impl PermGroup {
    /// Builds `<gens>`; all generators must share one degree.
    pub fn new(gens: Vec<Permutation>) -> Result<PermGroup> {
        let degree = match gens.first() {
            Some(g) => g.degree(),
            None => return Err(Error::EmptyGenerators),
        };
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        let chain = Chain::build(degree, &gens, &[]);
        Ok(Self::from_chain(degree, gens, chain))
    }

    /// The trivial group of the given degree.
    pub fn trivial(degree: usize) -> PermGroup {
        Self::new(vec![Permutation::identity(degree)]).expect("identity generator")
    }

    fn from_chain(degree: usize, gens: Vec<Permutation>, chain: Chain) -> PermGroup {
        let order = chain.order();
        PermGroup {
            degree,
            gens,
            chain: Arc::new(chain),
            order,
            memo: Arc::new(Memo::default()),
        }
    }

    /// Generators with identities and duplicates removed (at least one kept).
    pub fn reduced_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for g in &self.gens {
            if !g.is_identity() && !out.contains(g) {
                out.push(g.clone());
            }
        }
        if out.is_empty() {
            out.push(Permutation::identity(self.degree));
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// Order as `u64`; panics only for orders beyond 2^64, which no
    /// enumeration-gated caller can reach.
    pub fn order_u64(&self) -> u64 {
        self.order.to_u64().unwrap_or(u64::MAX)
    }

    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn base(&self) -> Vec<u32> {
        self.chain.base()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.chain.strong_generators()
    }

    /// Every strong generator sifts to the identity and the generators are members.
    pub fn verify_chain(&self) -> bool {
        self.chain.verify() && self.gens.iter().all(|g| self.chain.sift(g))
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch(self.degree, p.degree()));
        }
        Ok(self.chain.sift(p))
    }

    /// Membership for callers that already know the degrees agree.
    pub(crate) fn has(&self, p: &Permutation) -> bool {
        self.chain.sift(p)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.gens.iter().all(|g| other.has(g))
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.gens;
        for i in 0..g.len() {
            for j in (i + 1)..g.len() {
                if g[i].mul(&g[j]) != g[j].mul(&g[i]) {
                    return false;
                }
            }
        }
        true
    }

    /// All elements, identity first. Fails above the enumeration gate.
    pub fn elements(&self) -> Result<Vec<Permutation>> {
        self.elements_with_limit(gates().enumeration)
    }

    pub fn elements_with_limit(&self, limit: u64) -> Result<Vec<Permutation>> {
        if self.order > BigUint::from(limit) {
            return Err(Error::TooLarge {
                order: self.order.to_string(),
                limit,
            });
        }
        let mut out = Vec::with_capacity(self.order_u64() as usize);
        self.for_each_element(|p| out.push(p.clone()));
        Ok(out)
    }

    /// Visits every element exactly once without collecting them. No gate.
    pub fn for_each_element<F: FnMut(&Permutation)>(&self, mut f: F) {
        fn rec<F: FnMut(&Permutation)>(chain: &Chain, depth: usize, acc: &Permutation, f: &mut F) {
            if depth == chain.levels.len() {
                f(acc);
                return;
            }
            for u in chain.levels[depth].transversal() {
                rec(chain, depth + 1, &acc.mul(u), f);
            }
        }
        rec(&self.chain, 0, &self.identity(), &mut f);
    }

    /// A uniformly random element.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Permutation {
        let mut acc = self.identity();
        for level in &self.chain.levels {
            let t = level.transversal();
            acc = acc.mul(&t[rng.gen_range(0..t.len())]);
        }
        acc
    }

    /// Subgroup generated by `gens` (which must lie in this group's degree).
    pub fn subgroup(&self, gens: Vec<Permutation>) -> Result<PermGroup> {
        if gens.is_empty() {
            return Ok(PermGroup::trivial(self.degree));
        }
        PermGroup::new(gens)
    }

    /// Cached Cayley table, subject to the enumeration gate.
    pub fn table(&self) -> Result<Arc<Table>> {
        if let Some(t) = self.memo.table.get() {
            return Ok(t.clone());
        }
        let t = Arc::new(Table::from_group(self)?);
        Ok(self.memo.table.get_or_init(|| t).clone())
    }

    pub(crate) fn chain(&self) -> &Chain {
        &self.chain
    }

    /// Orbits of the group on points, each sorted, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start as u32];
            seen[start] = true;
            let mut i = 0;
            while i < orbit.len() {
                let x = orbit[i];
                for g in &self.gens {
                    let y = g.apply(x) as usize;
                    if !seen[y] {
                        seen[y] = true;
                        orbit.push(y as u32);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    /// Writes the group text format.
    pub fn to_text(&self) -> String {
        let mut s = format!("permgroup degree={}\n", self.degree);
        for g in &self.gens {
            s.push_str(&g.to_cycle_string());
            s.push('\n');
        }
        s
    }

    /// Parses the group text format. Stops at the first blank line.
    pub fn from_text(text: &str) -> Result<PermGroup> {
        let lines: Vec<&str> = text.lines().collect();
        let (g, _) = Self::parse_block(&lines, 0)?;
        Ok(g)
    }

    /// Parses one group block starting at `start` and returns the index of
    /// the first unconsumed line.
    pub(crate) fn parse_block(lines: &[&str], start: usize) -> Result<(PermGroup, usize)> {
        let header = lines.get(start).ok_or(Error::Parse {
            line: start + 1,
            column: 1,
            message: "missing permgroup header".into(),
        })?;
        let degree = parse_header(header, start + 1)?;
        let mut gens = Vec::new();
        let mut i = start + 1;
        while i < lines.len() {
            let l = lines[i].trim_end();
            if l.trim().is_empty() || l == "---" {
                break;
            }
            gens.push(parse_cycles_at(l, degree, i + 1)?);
            i += 1;
        }
        if gens.is_empty() {
            return Err(Error::Parse {
                line: i + 1,
                column: 1,
                message: "group block has no generators".into(),
            });
        }
        Ok((PermGroup::new(gens)?, i))
    }
}

fn parse_header(line: &str, lineno: usize) -> Result<usize> {
    let err = |m: &str| Error::Parse {
        line: lineno,
        column: 1,
        message: m.to_string(),
    };
    let rest = line
        .trim_end()
        .strip_prefix("permgroup degree=")
        .ok_or_else(|| err("expected `permgroup degree=<n>`"))?;
    let degree: usize = rest.parse().map_err(|_| err("bad degree"))?;
    if degree == 0 {
        return Err(err("degree must be positive"));
    }
    Ok(degree)
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup(degree={}, order={}, gens=[", self.degree, self.order)?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", g)?;
        }
        write!(f, "])")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(deg: usize, gens: &[&str]) -> PermGroup {
        PermGroup::new(
            gens.iter()
                .map(|s| Permutation::parse_cycles(s, deg).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn s3_order_six() {
        assert_eq!(grp(3, &["(1 2)", "(1 2 3)"]).order_u64(), 6);
    }

    #[test]
    fn d8_order_eight() {
        let d8 = grp(4, &["(1 2 3 4)", "(1 3)"]);
        assert_eq!(d8.order_u64(), 8);
        assert!(d8.contains(&Permutation::parse_cycles("(1 3)", 4).unwrap()).unwrap());
        assert!(!d8.contains(&Permutation::parse_cycles("(1 2)", 4).unwrap()).unwrap());
    }

    #[test]
    fn trivial_group() {
        let t = grp(3, &["()"]);
        assert_eq!(t.order_u64(), 1);
        assert!(t.contains(&Permutation::identity(3)).unwrap());
        assert_eq!(t.elements().unwrap().len(), 1);
    }

    #[test]
    fn empty_generators_rejected() {
        assert!(matches!(PermGroup::new(vec![]), Err(Error::EmptyGenerators)));
    }

    #[test]
    fn a4_excludes_transpositions() {
        let a4 = grp(4, &["(1 2 3)", "(2 3 4)"]);
        assert_eq!(a4.order_u64(), 12);
        assert!(!a4.contains(&Permutation::parse_cycles("(1 2)", 4).unwrap()).unwrap());
    }

    #[test]
    fn symmetric_groups() {
        let s5 = grp(5, &["(1 2)", "(1 2 3 4 5)"]);
        assert_eq!(s5.order_u64(), 120);
        let s8 = grp(8, &["(1 2)", "(1 2 3 4 5 6 7 8)"]);
        assert_eq!(s8.order_u64(), 40320);
        assert!(s8.verify_chain());
    }

    #[test]
    fn enumeration_gate() {
        let s8 = grp(8, &["(1 2)", "(1 2 3 4 5 6 7 8)"]);
        assert!(matches!(s8.elements_with_limit(1000), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn text_format_round_trip() {
        let g = grp(5, &["(1 2 3)(4 5)", "()"]);
        let text = g.to_text();
        assert_eq!(text, "permgroup degree=5\n(1 2 3)(4 5)\n()\n");
        let h = PermGroup::from_text(&text).unwrap();
        assert_eq!(h.generators(), g.generators());
        assert!(PermGroup::from_text("permgroup degree=3\n(1 2\n").is_err());
    }
}
