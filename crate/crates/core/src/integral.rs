//! Deciding, constructing and shrinking integrals.
//!
//! `H` is an integral of `G` when the derived subgroup `H'` is isomorphic to
//! `G`. Searches scan the small-group catalogs; the constructions here build
//! integrals directly for special classes of groups.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;

use crate::aut::{automorphism_group, necessary_condition, Condition};
use crate::construct::{direct_product, lemma00_integral, extend_by_automorphisms, group_from, multiplicative_order};
use crate::enumerate::enumerate_order;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::hom::Homomorphism;
use crate::iso::{find_isomorphism, fingerprint, is_isomorphic, Fingerprint};
use crate::perm::Permutation;
use crate::structure::{
    abelian_invariants, centralizer, centre, derived_subgroup, exponent, factorize, is_normal, is_prime,
    nilpotency_class, normal_closure, quotient,
};
use crate::table::{mask_to_list, Table};

/// `H' ≅ G`.
pub fn check_is_integral(h: &PermGroup, g: &PermGroup) -> Result<bool> {
    let d = derived_subgroup(h);
    is_isomorphic(&d, g)
}

/// One integral found by a catalog search.
#[derive(Clone, Debug)]
pub struct Finding {
    pub order: u64,
    /// Position in the catalog of its order.
    pub index: usize,
    /// The first finding of its order in catalog order.
    pub canonical: bool,
    pub group: PermGroup,
    /// An isomorphism from `group'` onto the target.
    pub witness: Homomorphism,
}

impl Finding {
    /// Rechecks that the witness is an isomorphism from the derived subgroup onto `target`.
    pub fn verify(&self, target: &PermGroup) -> bool {
        let d = derived_subgroup(&self.group);
        let w = &self.witness;
        w.domain().order() == d.order()
            && w.domain().is_subgroup_of(&d)
            && w.codomain().order() == target.order()
            && w.codomain().is_subgroup_of(target)
            && w.is_injective()
            && w.is_surjective()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// At least one integral exists within the bound; `smallest` is the least order.
    Found { smallest: u64 },
    /// Nothing found. Inconclusive: no general bound on the order of a smallest integral is known.
    NoneWithinBound,
    CertifiedNonIntegrable(String),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Found { smallest } => write!(f, "found-smallest {}", smallest),
            Verdict::NoneWithinBound => write!(f, "none-within-bound"),
            Verdict::CertifiedNonIntegrable(r) => write!(f, "certified-non-integrable {}", r),
        }
    }
}

#[derive(Clone, Debug)]
pub struct IntegralReport {
    pub target: PermGroup,
    pub fingerprint: Fingerprint,
    pub bound: u64,
    pub prime: Option<u64>,
    pub searched: Vec<u64>,
    /// Sorted by order, then catalog index.
    pub findings: Vec<Finding>,
    pub verdict: Verdict,
    /// Free-form remarks, one line each.
    pub notes: Vec<String>,
}

pub const REPORT_HEADER: &str = "integral-report v1";

fn is_power_of(mut n: u64, p: u64) -> bool {
    if n == 0 || p < 2 {
        return false;
    }
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

/// Orders a search scans: multiples of `|G|` up to `bound`, restricted to
/// powers of `p` when given.
pub fn search_orders(target_order: u64, bound: u64, prime: Option<u64>) -> Vec<u64> {
    (1..=bound / target_order.max(1))
        .map(|k| k * target_order)
        .filter(|&n| prime.map_or(true, |p| is_power_of(n, p)))
        .collect()
}

/// Scans the catalogs for integrals of `g` of order at most `bound`.
pub fn search_integral(g: &PermGroup, bound: u64, prime: Option<u64>) -> Result<IntegralReport> {
    if let Some(p) = prime {
        if !is_prime(p) {
            return Err(Error::InvalidParameters(format!("{} is not prime", p)));
        }
    }
    let target_fp = fingerprint(g)?;
    let order = g.order_u64();
    let searched = search_orders(order, bound, prime);
    let mut findings = Vec::new();
    for &n in &searched {
        let cat = enumerate_order(n)?;
        let hits: Vec<Result<Option<Finding>>> = cat
            .entries
            .par_iter()
            .enumerate()
            .filter(|(_, e)| e.fingerprint.derived_order == order)
            .map(|(i, e)| {
                let d = derived_subgroup(&e.group);
                Ok(find_isomorphism(&d, g)?.map(|witness| Finding {
                    order: n,
                    index: i,
                    canonical: false,
                    group: e.group.clone(),
                    witness,
                }))
            })
            .collect();
        let mut first = true;
        for h in hits {
            if let Some(mut f) = h? {
                f.canonical = first;
                first = false;
                findings.push(f);
            }
        }
    }
    let verdict = match findings.first() {
        Some(f) => Verdict::Found { smallest: f.order },
        None => match certify_non_integrable(g, prime) {
            Ok(Some(reason)) => Verdict::CertifiedNonIntegrable(reason),
            Ok(None) | Err(Error::GateExceeded { .. }) | Err(Error::TooLarge { .. }) => Verdict::NoneWithinBound,
            Err(e) => return Err(e),
        },
    };
    Ok(IntegralReport {
        target: g.clone(),
        fingerprint: target_fp,
        bound,
        prime,
        searched,
        findings,
        verdict,
        notes: Vec::new(),
    })
}

/// A reason why `g` has no integral, or no `p`-integral when `prime` is set.
/// `None` means no certificate applies, not that an integral exists.
pub fn certify_non_integrable(g: &PermGroup, prime: Option<u64>) -> Result<Option<String>> {
    if necessary_condition(g)? == Condition::Fails {
        return Ok(Some("Inn(G) is not contained in Aut(G)'".into()));
    }
    let p = match prime {
        Some(p) => p,
        None => return Ok(None),
    };
    let n = g.order_u64();
    if !is_power_of(n, p) {
        return Ok(Some(format!("G is not a {}-group", p)));
    }
    if g.is_abelian() {
        return Ok(None);
    }
    let z = centre(g)?;
    if abelian_invariants(&z)?.rank() <= 1 {
        return Ok(Some(format!("non-abelian {}-group with cyclic centre", p)));
    }
    let d = derived_subgroup(g);
    if n / d.order_u64() == p * p {
        return Ok(Some(format!("non-abelian {}-group whose derived subgroup has index {}", p, p * p)));
    }
    Ok(None)
}

fn primary_rank(ty: &crate::structure::AbelianType, p: u64) -> usize {
    ty.p_rank(p)
}

/// Shrinks an integral of `g` by factoring out central subgroups that meet
/// `H'` trivially, until no prime has larger rank in `Z(H)` than in `Z(G)`.
pub fn reduce_integral(h: &PermGroup, g: &PermGroup) -> Result<PermGroup> {
    if !check_is_integral(h, g)? {
        return Err(Error::Precondition("H is not an integral of G".into()));
    }
    let zg = abelian_invariants(&centre(g)?)?;
    let mut h = h.clone();
    loop {
        let z = centre(&h)?;
        let zh = abelian_invariants(&z)?;
        let excess: Vec<u64> = factorize(zh.order())
            .into_iter()
            .map(|(p, _)| p)
            .filter(|&p| primary_rank(&zh, p) > primary_rank(&zg, p))
            .collect();
        let p = match excess.first() {
            Some(&p) => p,
            None => return Ok(h),
        };
        let d = derived_subgroup(&h);
        let mut elems = z.elements()?;
        elems.sort();
        let x = elems
            .into_iter()
            .find(|x| x.order() == p && !d.has(x))
            .ok_or_else(|| Error::Precondition("no central element outside H' of excess prime order".into()))?;
        let n = group_from(h.degree(), vec![x]);
        let (q, _) = quotient(&h, &n)?;
        h = q;
    }
}

/// `H / (N C_H(H'))`, where `N` is transported into `H'` by an isomorphism
/// `G -> H'`. Its derived subgroup is `G/N`.
pub fn quotient_integral(h: &PermGroup, g: &PermGroup, n: &PermGroup) -> Result<PermGroup> {
    if !is_normal(g, n) {
        return Err(Error::NotNormal);
    }
    let aut = automorphism_group(g)?;
    for a in aut.carrier().generators() {
        for x in n.generators() {
            if !n.has(&aut.apply(a, x)?) {
                return Err(Error::Precondition("N is not characteristic in G".into()));
            }
        }
    }
    if !centre(g)?.is_subgroup_of(n) {
        return Err(Error::Precondition("Z(G) is not contained in N".into()));
    }
    let d = derived_subgroup(h);
    let iso = find_isomorphism(g, &d)?.ok_or_else(|| Error::Precondition("H is not an integral of G".into()))?;
    let mut gens: Vec<Permutation> = n.generators().iter().map(|x| iso.apply(x)).collect::<Result<_>>()?;
    gens.extend(centralizer(h, &d)?.generators().iter().cloned());
    let m = normal_closure(h, &gens);
    Ok(quotient(h, &m)?.0)
}

/// Minimal generating set of a table modulo a normal subgroup given as a mask.
fn basis_mod(t: &Table, normal: &[bool]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let base: Vec<usize> = mask_to_list(normal);
    let mut span = t.closure(&base);
    for x in 0..t.n() {
        if span[x] {
            continue;
        }
        chosen.push(x);
        let mut gens = base.clone();
        gens.extend(&chosen);
        span = t.closure(&gens);
        if span.iter().all(|&b| b) {
            break;
        }
    }
    chosen
}


/// `G ⋊ <α>` for `G` of odd prime exponent and class at most 2. In the Lie
/// ring of `G` (sum `x + y = x y [y,x]^(1/2)`), `α` negates the span `L1` of a
/// minimal generating set and fixes `L2 = [L, L]`.
pub fn malcev_integral(g: &PermGroup) -> Result<PermGroup> {
    let p = exponent(g)?;
    if p == 1 {
        return Ok(g.clone());
    }
    if p == 2 || !is_prime(p) {
        return Err(Error::InvalidParameters(format!("exponent {} is not an odd prime", p)));
    }
    if nilpotency_class(g).map_or(true, |c| c > 2) {
        return Err(Error::InvalidParameters("nilpotency class exceeds 2".into()));
    }
    let t = g.table()?;
    let derived = t.derived();
    let half = (p + 1) / 2;
    let sqrt = |c: usize| t.pow(c, half);
    let add = |a: usize, b: usize| t.m(t.m(a, b), sqrt(t.comm(b, a)));
    let basis = basis_mod(&t, &derived);
    // Enumerate L1 = { sum e_i x_i } by Lie addition.
    let mut l1 = vec![0usize];
    for &x in &basis {
        let mut next = Vec::with_capacity(l1.len() * p as usize);
        for &u in &l1 {
            for e in 0..p {
                next.push(add(u, t.pow(x, e)));
            }
        }
        l1 = next;
    }
    let l2 = mask_to_list(&derived);
    let mut alpha = vec![usize::MAX; t.n()];
    // L2 is central, so u + z = u z and -u = u^-1.
    for &u in &l1 {
        for &z in &l2 {
            let gz = t.m(u, z);
            if alpha[gz] != usize::MAX {
                return Err(Error::Precondition("L1 and L2 do not span G directly".into()));
            }
            alpha[gz] = t.m(t.inv(u), z);
        }
    }
    if alpha.iter().any(|&x| x == usize::MAX) {
        return Err(Error::Precondition("L1 + L2 does not cover G".into()));
    }
    let (h, _) = extend_by_automorphisms(g, &[alpha])?;
    Ok(h)
}

fn p_subgroup_of_elements(g: &PermGroup, p: u64) -> Result<PermGroup> {
    let mut elems = g.elements()?;
    elems.sort();
    let mut s = PermGroup::trivial(g.degree());
    loop {
        let mut grew = false;
        for x in &elems {
            if s.has(x) || !is_power_of(x.order(), p) {
                continue;
            }
            let mut gens = s.reduced_generators();
            gens.push(x.clone());
            let cand = group_from(g.degree(), gens);
            if is_power_of(cand.order_u64(), p) {
                s = cand;
                grew = true;
            }
        }
        if !grew {
            return Ok(s);
        }
    }
}

/// An integral of `G ∈ A_q A_p` with `p ∤ q - 1`. `G = C_Q(P) × [Q,P]P`; the
/// abelian factor is integrated by `lemma00_integral`, the other by an
/// automorphism of order `ord_p(q)` that normalizes `P` and acts on `G/Q` as a
/// non-trivial power, found by searching `Aut`.
pub fn aqap_integral(g: &PermGroup, q: u64, p: u64) -> Result<PermGroup> {
    if !is_prime(q) || !is_prime(p) || p == q {
        return Err(Error::InvalidParameters("p and q must be distinct primes".into()));
    }
    if (q - 1) % p == 0 {
        return Err(Error::InvalidParameters(format!("{} divides {} - 1", p, q)));
    }
    let elems = g.elements()?;
    let qs: Vec<Permutation> = elems.iter().filter(|x| is_power_of(x.order(), q)).cloned().collect();
    let qsub = normal_closure(g, &qs);
    let qo = qsub.order_u64();
    let ok = is_power_of(qo, q)
        && is_power_of(g.order_u64() / qo, p)
        && qsub.is_abelian()
        && qsub.generators().iter().all(|x| x.order() <= q)
        && derived_subgroup(g).is_subgroup_of(&qsub)
        && g.generators().iter().all(|x| qsub.has(&x.pow(p as i64)));
    if !ok {
        return Err(Error::Precondition(format!("G is not in A_{}A_{}", q, p)));
    }
    let psub = p_subgroup_of_elements(g, p)?;
    let cq = centralizer(&qsub, &psub)?;
    let qp = crate::structure::commutator_subgroup(g, &qsub, &psub);
    let mut g1_gens = qp.reduced_generators();
    g1_gens.extend(psub.reduced_generators());
    let g1 = group_from(g.degree(), g1_gens);
    let mut parts = Vec::new();
    if !cq.is_trivial() {
        parts.push(lemma00_integral(&abelian_invariants(&cq)?, q)?);
    }
    if !g1.is_trivial() {
        parts.push(power_extension(&g1, &qp, &psub, q, p)?);
    }
    if parts.is_empty() {
        return Ok(g.clone());
    }
    Ok(direct_product(&parts))
}

fn power_extension(g1: &PermGroup, q1: &PermGroup, psub: &PermGroup, q: u64, p: u64) -> Result<PermGroup> {
    let m = multiplicative_order(q, p).expect("q is a unit mod p");
    let aut = automorphism_group(g1)?;
    let t = aut.table();
    let idx = |x: &Permutation| t.index_of(x).expect("element of G1");
    let q_mask = {
        let mut v = vec![false; t.n()];
        for x in q1.elements()? {
            v[idx(&x)] = true;
        }
        v
    };
    let p_mask = {
        let mut v = vec![false; t.n()];
        for x in psub.elements()? {
            v[idx(&x)] = true;
        }
        v
    };
    let gens: Vec<usize> = g1.generators().iter().map(idx).collect();
    let pgens: Vec<usize> = psub.reduced_generators().iter().map(idx).collect();
    let mut found: Option<Permutation> = None;
    let mut candidates = aut.carrier().elements()?;
    candidates.sort();
    for a in candidates {
        if a.order() != m || !pgens.iter().all(|&x| p_mask[a.apply(x as u32) as usize]) {
            continue;
        }
        let power = (2..p).find(|&r| {
            gens.iter()
                .all(|&x| q_mask[t.m(a.apply(x as u32) as usize, t.inv(t.pow(x, r)))])
        });
        if power.is_some() {
            found = Some(a);
            break;
        }
    }
    let a = found.ok_or_else(|| {
        Error::SearchExhausted(format!("no automorphism of order {} acting as a power on G/Q and fixing P", m))
    })?;
    let map: Vec<usize> = (0..t.n()).map(|x| a.apply(x as u32) as usize).collect();
    // The carrier acts on G1's own table; rebuild the extension on that table.
    let (h, _) = extend_by_automorphisms(aut.group(), &[map])?;
    Ok(h)
}

/// Every finding re-verifies and the verdict agrees with the findings.
pub fn verify_report(r: &IntegralReport) -> bool {
    let orders_sorted = r.findings.windows(2).all(|w| (w[0].order, w[0].index) < (w[1].order, w[1].index));
    let verdict_ok = match (&r.verdict, r.findings.first()) {
        (Verdict::Found { smallest }, Some(f)) => *smallest == f.order,
        (_, None) => !matches!(r.verdict, Verdict::Found { .. }),
        _ => false,
    };
    let mut seen = HashSet::new();
    let canon_ok = r
        .findings
        .iter()
        .all(|f| f.canonical == seen.insert(f.order));
    orders_sorted && verdict_ok && canon_ok && r.findings.iter().all(|f| f.verify(&r.target))
}

fn group_block(g: &PermGroup) -> String {
    let mut s = g.to_text();
    s.push_str("---\n");
    s
}

impl IntegralReport {
    /// Machine-readable text; see the README for the schema.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s.push_str(REPORT_HEADER);
        s.push('\n');
        s.push_str(&format!("bound {}\n", self.bound));
        match self.prime {
            Some(p) => s.push_str(&format!("prime {}\n", p)),
            None => s.push_str("prime none\n"),
        }
        let searched: Vec<String> = self.searched.iter().map(|n| n.to_string()).collect();
        s.push_str(&format!("searched {}\n", searched.join(" ")));
        s.push_str(&format!("fingerprint {}\n", self.fingerprint));
        s.push_str(&format!("verdict {}\n", self.verdict));
        for n in &self.notes {
            s.push_str(&format!("note {}\n", n.replace('\n', " ")));
        }
        s.push_str(&format!("findings {}\n", self.findings.len()));
        s.push_str("target\n");
        s.push_str(&group_block(&self.target));
        for f in &self.findings {
            s.push_str(&format!("finding order={} index={} canonical={}\n", f.order, f.index, f.canonical));
            s.push_str(&group_block(&f.group));
            s.push_str("witness\n");
            for (x, y) in f.witness.domain().generators().iter().zip(f.witness.images()) {
                s.push_str(&format!("{} -> {}\n", x.to_cycle_string(), y.to_cycle_string()));
            }
            s.push_str("---\n");
        }
        s
    }

    /// Parses [`IntegralReport::to_text`] output. Witnesses are rebuilt as
    /// homomorphisms, so a successful parse already checks well-definedness.
    pub fn from_text(text: &str) -> Result<IntegralReport> {
        let lines: Vec<&str> = text.lines().collect();
        let mut r = Reader { lines: &lines, pos: 0 };
        r.expect_exact(REPORT_HEADER)?;
        let bound = r.field("bound")?.parse().map_err(|_| r.err("bad bound"))?;
        let prime = match r.field("prime")? {
            "none" => None,
            v => Some(v.parse().map_err(|_| r.err("bad prime"))?),
        };
        let searched = r
            .field("searched")?
            .split_whitespace()
            .map(|x| x.parse::<u64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| r.err("bad order list"))?;
        let fp_text = r.field("fingerprint")?.to_string();
        let verdict_text = r.field("verdict")?.to_string();
        let mut notes = Vec::new();
        while r.peek().map_or(false, |l| l.starts_with("note ")) {
            notes.push(r.field("note")?.to_string());
        }
        let count: usize = r.field("findings")?.parse().map_err(|_| r.err("bad count"))?;
        r.expect_exact("target")?;
        let target = r.group()?;
        let fingerprint = fingerprint(&target)?;
        if fingerprint.to_string() != fp_text {
            return Err(r.err("fingerprint does not match the target group"));
        }
        let mut findings = Vec::new();
        for _ in 0..count {
            let head = r.line()?;
            let rest = head
                .strip_prefix("finding ")
                .ok_or_else(|| r.err("expected a finding"))?;
            let mut order = None;
            let mut index = None;
            let mut canonical = None;
            for kv in rest.split_whitespace() {
                match kv.split_once('=') {
                    Some(("order", v)) => order = v.parse().ok(),
                    Some(("index", v)) => index = v.parse().ok(),
                    Some(("canonical", v)) => canonical = v.parse().ok(),
                    _ => return Err(r.err("unknown finding field")),
                }
            }
            let (order, index, canonical) = match (order, index, canonical) {
                (Some(o), Some(i), Some(c)) => (o, i, c),
                _ => return Err(r.err("incomplete finding header")),
            };
            let group = r.group()?;
            r.expect_exact("witness")?;
            let mut dom = Vec::new();
            let mut img = Vec::new();
            loop {
                let l = r.line()?;
                if l == "---" {
                    break;
                }
                let (a, b) = l.split_once(" -> ").ok_or_else(|| r.err("expected `x -> y`"))?;
                dom.push(Permutation::parse_cycles(a, group.degree()).map_err(|e| r.relocate(e))?);
                img.push(Permutation::parse_cycles(b, target.degree()).map_err(|e| r.relocate(e))?);
            }
            let domain = PermGroup::new(dom)?;
            let witness = Homomorphism::new(&domain, &target, img)?;
            findings.push(Finding {
                order,
                index,
                canonical,
                group,
                witness,
            });
        }
        let verdict = parse_verdict(&verdict_text).ok_or_else(|| r.err("bad verdict"))?;
        Ok(IntegralReport {
            target,
            fingerprint,
            bound,
            prime,
            searched,
            findings,
            verdict,
            notes,
        })
    }

    /// Short human-readable summary.
    pub fn summary(&self) -> String {
        let mut s = format!(
            "target of order {} | searched orders {:?}{}\n",
            self.target.order(),
            self.searched,
            self.prime.map(|p| format!(" ({}-groups only)", p)).unwrap_or_default()
        );
        for f in &self.findings {
            s.push_str(&format!(
                "  integral of order {} (catalog index {}){}\n",
                f.order,
                f.index,
                if f.canonical { ", canonical" } else { "" }
            ));
        }
        s.push_str(&match &self.verdict {
            Verdict::Found { smallest } => format!("smallest integral within bound {}: order {}\n", self.bound, smallest),
            Verdict::NoneWithinBound => format!(
                "no integral of order <= {}; inconclusive, this is not a proof of non-integrability\n",
                self.bound
            ),
            Verdict::CertifiedNonIntegrable(r) => format!("certified non-integrable: {}\n", r),
        });
        for n in &self.notes {
            s.push_str(&format!("note: {}\n", n));
        }
        s
    }
}

fn parse_verdict(s: &str) -> Option<Verdict> {
    if s == "none-within-bound" {
        return Some(Verdict::NoneWithinBound);
    }
    if let Some(n) = s.strip_prefix("found-smallest ") {
        return n.parse().ok().map(|smallest| Verdict::Found { smallest });
    }
    s.strip_prefix("certified-non-integrable ")
        .map(|r| Verdict::CertifiedNonIntegrable(r.to_string()))
}

struct Reader<'a> {
    lines: &'a [&'a str],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            line: self.pos.max(1),
            column: 1,
            message: msg.to_string(),
        }
    }

    fn relocate(&self, e: Error) -> Error {
        match e {
            Error::Parse { column, message, .. } => Error::Parse {
                line: self.pos,
                column,
                message,
            },
            other => other,
        }
    }

    fn peek(&self) -> Option<&'a str> {
        self.lines.get(self.pos).copied()
    }

    fn line(&mut self) -> Result<&'a str> {
        let l = self.lines.get(self.pos).ok_or_else(|| self.err("unexpected end of report"))?;
        self.pos += 1;
        Ok(l.trim_end())
    }

    fn expect_exact(&mut self, s: &str) -> Result<()> {
        if self.line()? != s {
            return Err(self.err(&format!("expected `{}`", s)));
        }
        Ok(())
    }

    fn field(&mut self, key: &str) -> Result<&'a str> {
        let l = self.line()?;
        if l == key {
            return Ok("");
        }
        l.strip_prefix(key)
            .and_then(|r| r.strip_prefix(' '))
            .ok_or_else(|| self.err(&format!("expected `{}`", key)))
    }

    fn group(&mut self) -> Result<PermGroup> {
        let (g, next) = PermGroup::parse_block(self.lines, self.pos)?;
        self.pos = next;
        if self.line()? != "---" {
            return Err(self.err("expected `---` after group"));
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::construct;

    fn c(s: &str) -> PermGroup {
        construct(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn small_integrals() {
        assert!(check_is_integral(&c("sl23"), &c("quaternion(8)")).unwrap());
        assert!(check_is_integral(&c("symmetric(4)"), &c("alternating(4)")).unwrap());
        assert!(!check_is_integral(&c("dihedral(8)"), &c("abelian(2,2)")).unwrap());
    }

    #[test]
    fn certificates() {
        assert!(certify_non_integrable(&c("dihedral(8)"), None).unwrap().is_some());
        assert!(certify_non_integrable(&c("quaternion(8)"), None).unwrap().is_none());
        let r = certify_non_integrable(&c("quaternion(8)"), Some(2)).unwrap().unwrap();
        assert!(r.contains("cyclic centre"));
        assert!(certify_non_integrable(&c("extraspecial(3,9)"), None).unwrap().is_none());
        assert!(certify_non_integrable(&c("cyclic(8)"), Some(2)).unwrap().is_none());
    }

    #[test]
    fn reduction_is_a_fixed_point_when_ranks_agree() {
        let h = c("sl23");
        let r = reduce_integral(&h, &c("quaternion(8)")).unwrap();
        assert_eq!(r.order_u64(), 24);
        let r = reduce_integral(&c("direct(symmetric(4),cyclic(3))"), &c("alternating(4)")).unwrap();
        assert_eq!(r.order_u64(), 24);
        assert!(check_is_integral(&r, &c("alternating(4)")).unwrap());
    }

    #[test]
    fn quotient_integrals() {
        let q8 = c("quaternion(8)");
        let h = c("sl23");
        let z = centre(&q8).unwrap();
        let r = quotient_integral(&h, &q8, &z).unwrap();
        assert!(is_isomorphic(&derived_subgroup(&r), &c("abelian(2,2)")).unwrap());
        let r = quotient_integral(&h, &q8, &q8).unwrap();
        assert!(derived_subgroup(&r).is_trivial());
        let a4 = c("alternating(4)");
        let v4 = derived_subgroup(&a4);
        let r = quotient_integral(&c("symmetric(4)"), &a4, &v4).unwrap();
        assert!(is_isomorphic(&derived_subgroup(&r), &c("cyclic(3)")).unwrap());
    }

    #[test]
    fn malcev_on_small_groups() {
        let g = c("heisenberg(3)");
        let h = malcev_integral(&g).unwrap();
        assert_eq!(h.order_u64(), 54);
        assert!(check_is_integral(&h, &g).unwrap());
        let e = c("elementary(3,2)");
        assert!(check_is_integral(&malcev_integral(&e).unwrap(), &e).unwrap());
        assert!(malcev_integral(&c("cyclic(9)")).is_err());
        assert!(malcev_integral(&c("abelian(2,2)")).is_err());
    }

    #[test]
    fn aqap_on_a4() {
        let a4 = c("alternating(4)");
        let h = aqap_integral(&a4, 2, 3).unwrap();
        assert_eq!(h.order_u64(), 24);
        assert!(check_is_integral(&h, &a4).unwrap());
        let q = c("elementary(2,2)");
        assert!(check_is_integral(&aqap_integral(&q, 2, 3).unwrap(), &q).unwrap());
        assert!(aqap_integral(&a4, 3, 2).is_err());
    }

    #[test]
    fn search_orders_respect_prime() {
        assert_eq!(search_orders(8, 64, Some(2)), vec![8, 16, 32, 64]);
        assert_eq!(search_orders(8, 24, None), vec![8, 16, 24]);
        assert_eq!(search_orders(3, 27, Some(3)), vec![3, 9, 27]);
    }
}
