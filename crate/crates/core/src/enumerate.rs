//! Catalogs of all groups of a given order up to isomorphism.
//!
//! Prime-power orders `p^k` are built as central extensions of the groups of
//! order `p^(k-1)` by `C_p`: cocycle classes are found by linear algebra over
//! `F_p` and reduced to orbits of `Aut(Q)`. Other orders are built as cyclic
//! extensions `E = <N, t>` with `N` normal of prime index. Nonsolvable groups
//! that no such extension reaches are injected from a fixed list. Candidates
//! are deduplicated by fingerprint buckets and table isomorphism.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::aut::{automorphism_generators, automorphism_group};
use crate::config::gates;
use crate::construct::sl2_prime;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::iso::{fingerprint, fingerprint_of_table, tables_isomorphic, Fingerprint, Profile};
use crate::structure::factorize;
use crate::table::{mask_to_list, Table};

pub const METHOD: &str = "cyclic-ext";
pub const VERSION: &str = "v1";

/// Largest order the built-in list of nonsolvable groups covers.
pub const EXCEPTIONAL_LIMIT: u64 = 120;

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub group: PermGroup,
    pub fingerprint: Fingerprint,
}

#[derive(Clone, Debug)]
pub struct Catalog {
    pub order: u64,
    pub method: String,
    pub version: String,
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn groups(&self) -> impl Iterator<Item = &PermGroup> {
        self.entries.iter().map(|e| &e.group)
    }
}

struct Candidate {
    table: Table,
    fp: Fingerprint,
    profile: Profile,
}

impl Candidate {
    fn new(table: Table) -> Candidate {
        Candidate {
            fp: fingerprint_of_table(&table),
            profile: Profile::new(&table),
            table,
        }
    }
}

#[derive(Default)]
struct Dedupe {
    buckets: HashMap<(Fingerprint, Vec<(u64, u64)>), Vec<usize>>,
    reps: Vec<Candidate>,
}

impl Dedupe {
    fn add(&mut self, c: Candidate) {
        let key = (c.fp.clone(), c.profile.histogram.clone());
        let bucket = self.buckets.entry(key).or_default();
        for &i in bucket.iter() {
            let r = &self.reps[i];
            if tables_isomorphic(&r.table, &r.profile, &c.table, &c.profile) {
                return;
            }
        }
        bucket.push(self.reps.len());
        self.reps.push(c);
    }
}

/// Row-reduced echelon form over `F_p`, with a tag vector carried along each row.
struct Rref {
    p: u8,
    rows: Vec<(usize, Vec<u8>, Vec<u8>)>,
}

fn inv_mod(a: u8, p: u8) -> u8 {
    (1..p).find(|&b| (a as u32 * b as u32) % p as u32 == 1).expect("unit")
}

fn axpy(y: &mut [u8], c: u8, x: &[u8], p: u8) {
    if c == 0 {
        return;
    }
    for (a, &b) in y.iter_mut().zip(x) {
        if b != 0 {
            *a = ((*a as u32 + c as u32 * b as u32) % p as u32) as u8;
        }
    }
}

impl Rref {
    fn new(p: u8) -> Rref {
        Rref { p, rows: Vec::new() }
    }

    /// Reduces `v` and `tag` in place against the stored rows.
    fn reduce(&self, v: &mut [u8], tag: &mut [u8]) {
        let p = self.p;
        for (pivot, row, rtag) in &self.rows {
            let c = v[*pivot];
            if c != 0 {
                let neg = p - c;
                axpy(v, neg, row, p);
                axpy(tag, neg, rtag, p);
            }
        }
    }

    /// Inserts a vector; returns false if it was dependent.
    fn insert(&mut self, mut v: Vec<u8>, mut tag: Vec<u8>) -> bool {
        let p = self.p;
        self.reduce(&mut v, &mut tag);
        let pivot = match v.iter().position(|&x| x != 0) {
            Some(i) => i,
            None => return false,
        };
        let s = inv_mod(v[pivot], p);
        for x in v.iter_mut().chain(tag.iter_mut()) {
            *x = ((*x as u32 * s as u32) % p as u32) as u8;
        }
        for (_, row, rtag) in self.rows.iter_mut() {
            let c = row[pivot];
            if c != 0 {
                axpy(row, p - c, &v, p);
                axpy(rtag, p - c, &tag, p);
            }
        }
        self.rows.push((pivot, v, tag));
        true
    }

    fn nullspace(&self, width: usize) -> Vec<Vec<u8>> {
        let p = self.p;
        let mut is_pivot = vec![false; width];
        for (c, _, _) in &self.rows {
            is_pivot[*c] = true;
        }
        (0..width)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![0u8; width];
                v[f] = 1;
                for (c, row, _) in &self.rows {
                    v[*c] = (p - row[f]) % p;
                }
                v
            })
            .collect()
    }
}

/// Rank of `t / Φ(t)` for a `p`-group table.
fn frattini_rank(t: &Table, p: u64) -> u32 {
    let mut gens: Vec<usize> = (0..t.n()).map(|x| t.pow(x, p)).collect();
    let g = t.generators();
    for (i, &a) in g.iter().enumerate() {
        for &b in &g[i + 1..] {
            gens.push(t.comm(a, b));
        }
    }
    gens.sort_unstable();
    gens.dedup();
    let phi = mask_to_list(&t.normal_closure(&gens)).len();
    let mut q = t.n() / phi;
    let mut d = 0;
    while q > 1 {
        q /= p as usize;
        d += 1;
    }
    d
}

/// Central extensions of `q` by `C_p`, one per orbit of `Aut(q) x F_p^*` on
/// `H^2(q, F_p)`, keeping those whose rank equals the rank of `q` plus the
/// elementary abelian one.
fn central_extensions(q: &Table, p: u64, aut_gens: &[Vec<usize>]) -> Result<Vec<Table>> {
    let m = q.n();
    let pb = p as u8;
    let w = (m - 1) * (m - 1);
    let var = |g: usize, h: usize| (g - 1) * (m - 1) + (h - 1);
    let sub = |x: u8| (pb - x) % pb;

    // Associativity against a generating set of q suffices.
    let mut eqs = Rref::new(pb);
    for g in 1..m {
        for h in 1..m {
            for &k in &q.generators() {
                let mut row = vec![0u8; w];
                let mut add = |i: usize, c: u8| row[i] = (row[i] + c) % pb;
                add(var(g, h), 1);
                let gh = q.m(g, h);
                if gh != 0 {
                    add(var(gh, k), 1);
                }
                add(var(h, k), sub(1));
                let hk = q.m(h, k);
                if hk != 0 {
                    add(var(g, hk), sub(1));
                }
                eqs.insert(row, Vec::new());
            }
        }
    }
    let z2 = eqs.nullspace(w);

    let mut quot = Rref::new(pb);
    for g in 1..m {
        let mut v = vec![0u8; w];
        for a in 1..m {
            for b in 1..m {
                let mut c = (a == g) as u8 + (b == g) as u8;
                if q.m(a, b) == g {
                    c += sub(1);
                }
                v[var(a, b)] = c % pb;
            }
        }
        quot.insert(v, vec![0u8; z2.len()]);
    }
    let mut reps: Vec<Vec<u8>> = Vec::new();
    for z in &z2 {
        let mut tag = vec![0u8; z2.len()];
        tag[reps.len()] = 1;
        if quot.insert(z.clone(), tag) {
            reps.push(z.clone());
        }
    }
    let h = reps.len();
    let coords = |f: &[u8]| -> Vec<u8> {
        let mut v = f.to_vec();
        let mut tag = vec![0u8; z2.len()];
        quot.reduce(&mut v, &mut tag);
        debug_assert!(v.iter().all(|&x| x == 0));
        tag[..h].iter().map(|&x| sub(x)).collect()
    };
    // Action of each automorphism on coordinates, as images of basis vectors.
    let mats: Vec<Vec<Vec<u8>>> = aut_gens
        .iter()
        .map(|beta| {
            reps.iter()
                .map(|z| {
                    let mut f = vec![0u8; w];
                    for a in 1..m {
                        for b in 1..m {
                            f[var(a, b)] = z[var(beta[a], beta[b])];
                        }
                    }
                    coords(&f)
                })
                .collect()
        })
        .collect();

    let size = (p as usize).checked_pow(h as u32).filter(|&s| s <= 1 << 24).ok_or(Error::GateExceeded {
        what: "second cohomology size",
        size: p.saturating_pow(h as u32),
        gate: 1 << 24,
    })?;
    let decode = |mut i: usize| -> Vec<u8> {
        (0..h)
            .map(|_| {
                let d = (i % p as usize) as u8;
                i /= p as usize;
                d
            })
            .collect()
    };
    let encode = |v: &[u8]| -> usize { v.iter().rev().fold(0, |acc, &d| acc * p as usize + d as usize) };
    let mut seen = vec![false; size];
    let mut classes = Vec::new();
    for start in 0..size {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        classes.push(decode(start));
        let mut queue = vec![start];
        while let Some(i) = queue.pop() {
            let v = decode(i);
            let mut next = Vec::new();
            for mat in &mats {
                let mut u = vec![0u8; h];
                for (j, &c) in v.iter().enumerate() {
                    axpy(&mut u, c, &mat[j], pb);
                }
                next.push(encode(&u));
            }
            for s in 2..pb {
                next.push(encode(&v.iter().map(|&x| ((x as u32 * s as u32) % p as u32) as u8).collect::<Vec<_>>()));
            }
            for j in next {
                if !seen[j] {
                    seen[j] = true;
                    queue.push(j);
                }
            }
        }
    }

    let qrank = frattini_rank(q, p);
    let n = m * p as usize;
    let mut out = Vec::new();
    for c in classes {
        let mut f = vec![0u8; w];
        for (i, &ci) in c.iter().enumerate() {
            axpy(&mut f, ci, &reps[i], pb);
        }
        let mut mul = vec![0u32; n * n];
        for x in 0..n {
            let (c1, q1) = (x / m, x % m);
            for y in 0..n {
                let (c2, q2) = (y / m, y % m);
                let fv = if q1 == 0 || q2 == 0 { 0 } else { f[var(q1, q2)] as usize };
                let cc = (c1 + c2 + fv) % p as usize;
                mul[x * n + y] = (cc * m + q.m(q1, q2)) as u32;
            }
        }
        let e = Table::from_mul(n, mul);
        let r = frattini_rank(&e, p);
        if r == qrank || e.n() == (p as usize).pow(r) {
            out.push(e);
        }
    }
    Ok(out)
}

/// Cyclic extensions `<N, t>` with `t x t^-1 = α(x)` and `t^p = z`, for `α`
/// running over `Aut(N)` modulo `Inn(N)`, conjugacy and coprime powers.
fn cyclic_extensions(nt: &Table, carrier: &PermGroup, p: u64) -> Vec<Table> {
    let m = nt.n();
    let pu = p as usize;
    let mut inner: HashMap<Vec<u32>, usize> = HashMap::new();
    for z in 0..m {
        let map: Vec<u32> = (0..m).map(|x| nt.conj(x, nt.inv(z)) as u32).collect();
        inner.entry(map).or_insert(z);
    }
    let inner_maps: Vec<Vec<u32>> = {
        let mut v: Vec<Vec<u32>> = inner.keys().cloned().collect();
        v.sort();
        v
    };
    let centre = mask_to_list(&nt.centre());
    let gens: Vec<Vec<u32>> = carrier.generators().iter().map(|g| g.images().to_vec()).collect();
    let compose = |a: &[u32], b: &[u32]| -> Vec<u32> { b.iter().map(|&x| a[x as usize]).collect() };
    let invert = |a: &[u32]| -> Vec<u32> {
        let mut r = vec![0u32; a.len()];
        for (i, &x) in a.iter().enumerate() {
            r[x as usize] = i as u32;
        }
        r
    };
    let key = |a: &[u32]| -> Vec<u32> { inner_maps.iter().map(|i| compose(a, i)).min().expect("identity is inner") };
    let gen_invs: Vec<Vec<u32>> = gens.iter().map(|g| invert(g)).collect();

    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut out = Vec::new();
    carrier.for_each_element(|alpha| {
        let alpha = alpha.images().to_vec();
        if seen.contains(&key(&alpha)) {
            return;
        }
        let mut powers = vec![(0..m as u32).collect::<Vec<u32>>()];
        for i in 1..=pu {
            powers.push(compose(&alpha, &powers[i - 1]));
        }
        let z0 = inner.get(&powers[pu]).copied();
        // Coprime powers give the same extensions only when alpha has order p modulo Inn(N).
        let mut queue: Vec<Vec<u32>> = if z0.is_some() {
            powers[1..pu].to_vec()
        } else {
            vec![alpha.clone()]
        };
        while let Some(a) = queue.pop() {
            if seen.insert(key(&a)) {
                for (g, gi) in gens.iter().zip(&gen_invs) {
                    queue.push(compose(g, &compose(&a, gi)));
                }
            }
        }
        let z0 = match z0 {
            Some(z) => z,
            None => return,
        };
        for &c in &centre {
            let z = nt.m(z0, c);
            if alpha[z] as usize != z {
                continue;
            }
            let n = m * pu;
            let mut mul = vec![0u32; n * n];
            for a in 0..n {
                let (i, x) = (a / m, a % m);
                for b in 0..n {
                    let (j, y) = (b / m, b % m);
                    let mut w = nt.m(x, powers[i][y] as usize);
                    let mut k = i + j;
                    if k >= pu {
                        w = nt.m(w, z);
                        k -= pu;
                    }
                    mul[a * n + b] = (k * m + w) as u32;
                }
            }
            out.push(Table::from_mul(n, mul));
        }
    });
    out
}

fn exceptional(n: u64) -> Vec<PermGroup> {
    match n {
        60 => vec![crate::construct::construct(&crate::descriptor::GroupDescriptor::Alternating(5))
            .expect("A5")],
        // S5 and C2 x A5 arise as extensions of A5; SL(2,5) is perfect.
        120 => vec![sl2_prime(5)],
        _ => Vec::new(),
    }
}

fn dedupe_local(tables: Vec<Table>) -> Vec<Candidate> {
    let mut d = Dedupe::default();
    for t in tables {
        d.add(Candidate::new(t));
    }
    d.reps
}

fn compute(n: u64) -> Result<Catalog> {
    let mut batches: Vec<Vec<Candidate>> = Vec::new();
    let fac = factorize(n);
    if n == 1 {
        batches.push(vec![Candidate::new(Table::from_mul(1, vec![0]))]);
    } else if fac.len() == 1 {
        let p = fac[0].0;
        let sub = enumerate_order(n / p)?;
        let work: Vec<Result<Vec<Candidate>>> = sub
            .entries
            .par_iter()
            .map(|e| {
                let q = e.group.table()?;
                let auts = automorphism_generators(&q);
                Ok(dedupe_local(central_extensions(&q, p, &auts)?))
            })
            .collect();
        for w in work {
            batches.push(w?);
        }
    } else {
        let mut items = Vec::new();
        for &(p, _) in &fac {
            let sub = enumerate_order(n / p)?;
            for e in &sub.entries {
                items.push((p, e.group.clone()));
            }
        }
        let work: Vec<Result<Vec<Candidate>>> = items
            .par_iter()
            .map(|(p, g)| {
                let aut = automorphism_group(g)?;
                Ok(dedupe_local(cyclic_extensions(aut.table(), aut.carrier(), *p)))
            })
            .collect();
        for w in work {
            batches.push(w?);
        }
    }
    let extra: Vec<Candidate> = exceptional(n)
        .iter()
        .map(|g| Ok(Candidate::new((*g.table()?).clone())))
        .collect::<Result<_>>()?;
    batches.push(extra);

    let mut all = Dedupe::default();
    for b in batches {
        for c in b {
            all.add(c);
        }
    }
    let mut reps = all.reps;
    reps.sort_by(|a, b| a.fp.cmp(&b.fp));
    let entries = reps
        .into_iter()
        .map(|c| CatalogEntry {
            group: c.table.regular_group(),
            fingerprint: c.fp,
        })
        .collect();
    Ok(Catalog {
        order: n,
        method: METHOD.to_string(),
        version: VERSION.to_string(),
        entries,
    })
}

type Slot = Arc<Mutex<Option<Arc<Catalog>>>>;

fn memo() -> &'static Mutex<HashMap<u64, Slot>> {
    static MEMO: OnceLock<Mutex<HashMap<u64, Slot>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

static CACHE_DIR: RwLock<Option<PathBuf>> = RwLock::new(None);

/// Directory for on-disk catalogs; `None` disables the disk cache.
pub fn set_cache_dir(dir: Option<PathBuf>) {
    *CACHE_DIR.write().expect("cache lock poisoned") = dir;
}

pub fn cache_dir() -> Option<PathBuf> {
    CACHE_DIR.read().expect("cache lock poisoned").clone()
}

fn cache_path(dir: &Path, n: u64) -> PathBuf {
    dir.join(format!("catalog-{}.txt", n))
}

/// All groups of order `n`, memoized in-process and on disk when a cache
/// directory is set. Smaller catalogs are computed on demand.
pub fn enumerate_order(n: u64) -> Result<Arc<Catalog>> {
    if n == 0 {
        return Err(Error::InvalidParameters("order must be positive".into()));
    }
    let gate = gates().catalog_order;
    if n > gate {
        return Err(Error::GateExceeded {
            what: "catalog order",
            size: n,
            gate,
        });
    }
    if n > EXCEPTIONAL_LIMIT {
        return Err(Error::GateExceeded {
            what: "catalog order (nonsolvable list)",
            size: n,
            gate: EXCEPTIONAL_LIMIT,
        });
    }
    let slot = memo().lock().expect("memo poisoned").entry(n).or_default().clone();
    let mut guard = slot.lock().expect("memo slot poisoned");
    if let Some(c) = guard.as_ref() {
        return Ok(c.clone());
    }
    let dir = cache_dir();
    let cached = dir.as_ref().and_then(|d| {
        let path = cache_path(d, n);
        if !path.exists() {
            return None;
        }
        match load_catalog(&path) {
            Ok(c) if c.order == n => Some(c),
            Ok(_) => None,
            Err(e) => {
                log::warn!("ignoring cached catalog {}: {}", path.display(), e);
                None
            }
        }
    });
    let cat = match cached {
        Some(c) => c,
        None => {
            log::info!("enumerating groups of order {}", n);
            let c = compute(n)?;
            if let Some(d) = &dir {
                if let Err(e) = std::fs::create_dir_all(d).and_then(|_| {
                    std::fs::write(cache_path(d, n), serialize(&c))
                }) {
                    log::warn!("could not write catalog cache: {}", e);
                }
            }
            c
        }
    };
    let cat = Arc::new(cat);
    *guard = Some(cat.clone());
    Ok(cat)
}

fn checksum(body: &str) -> String {
    hex::encode(Sha256::digest(body.as_bytes()))
}

/// Canonical text of a catalog, checksum line included.
pub fn serialize(c: &Catalog) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "catalog order={} count={} method={} {}",
        c.order,
        c.entries.len(),
        c.method,
        c.version
    );
    for (i, e) in c.entries.iter().enumerate() {
        if i > 0 {
            s.push_str("---\n");
        }
        s.push_str(&e.group.to_text());
    }
    let sum = checksum(&s);
    let _ = writeln!(s, "sha256 {}", sum);
    s
}

pub fn save_catalog(c: &Catalog, path: &Path) -> Result<()> {
    std::fs::write(path, serialize(c))?;
    Ok(())
}

pub fn load_catalog(path: &Path) -> Result<Catalog> {
    let text = std::fs::read_to_string(path)?;
    let (c, warnings) = parse_catalog(&text)?;
    for w in warnings {
        log::warn!("{}: {}", path.display(), w);
    }
    Ok(c)
}

/// Parses and verifies catalog text; returns the catalog and any warnings.
pub fn parse_catalog(text: &str) -> Result<(Catalog, Vec<String>)> {
    let corrupt = |m: &str| Error::CorruptCatalog(m.to_string());
    let body_end = text
        .trim_end_matches('\n')
        .rfind('\n')
        .map(|i| i + 1)
        .ok_or_else(|| corrupt("missing checksum line"))?;
    let (body, last) = text.split_at(body_end);
    let sum = last
        .trim_end()
        .strip_prefix("sha256 ")
        .ok_or_else(|| corrupt("missing checksum line"))?;
    if sum != checksum(body) {
        return Err(corrupt("checksum mismatch"));
    }
    let lines: Vec<&str> = body.lines().collect();
    let header = lines.first().ok_or_else(|| corrupt("empty file"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 5 || fields[0] != "catalog" {
        return Err(corrupt("bad header"));
    }
    let field = |i: usize, name: &str| -> Result<&str> {
        fields[i]
            .strip_prefix(name)
            .ok_or_else(|| corrupt(&format!("expected {}", name)))
    };
    let order: u64 = field(1, "order=")?.parse().map_err(|_| corrupt("bad order"))?;
    let count: usize = field(2, "count=")?.parse().map_err(|_| corrupt("bad count"))?;
    let method = field(3, "method=")?.to_string();
    let version = fields[4].to_string();
    if method != METHOD || version != VERSION {
        return Err(Error::VersionMismatch(format!(
            "found method={} {}, expected method={} {}",
            method, version, METHOD, VERSION
        )));
    }
    let mut warnings = Vec::new();
    if order > gates().catalog_order {
        warnings.push(format!(
            "catalog order {} exceeds the current gate {}",
            order,
            gates().catalog_order
        ));
    }
    let mut groups = Vec::new();
    let mut i = 1;
    while i < lines.len() {
        let (g, next) = PermGroup::parse_block(&lines, i)?;
        groups.push(g);
        i = next;
        if i < lines.len() {
            if lines[i] != "---" {
                return Err(corrupt(&format!("unexpected line {}", i + 1)));
            }
            i += 1;
        }
    }
    if groups.len() != count {
        return Err(corrupt(&format!("{} entries, header says {}", groups.len(), count)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(order);
    let idx: Vec<usize> = (0..groups.len()).collect();
    for &k in idx.choose_multiple(&mut rng, 5) {
        let g = &groups[k];
        if g.order_u64() != order || !g.verify_chain() {
            return Err(corrupt(&format!("entry {} fails verification", k + 1)));
        }
    }
    let entries = groups
        .into_iter()
        .map(|g| {
            if g.order_u64() != order {
                return Err(corrupt("entry of wrong order"));
            }
            Ok(CatalogEntry {
                fingerprint: fingerprint(&g)?,
                group: g,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((
        Catalog {
            order,
            method,
            version,
            entries,
        },
        warnings,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        for (n, k) in [(1, 1), (2, 1), (4, 2), (6, 2), (8, 5), (9, 2), (12, 5), (18, 5)] {
            assert_eq!(enumerate_order(n).unwrap().len(), k, "order {}", n);
        }
    }

    #[test]
    fn round_trip_text() {
        let c = enumerate_order(8).unwrap();
        let s = serialize(&c);
        let (d, w) = parse_catalog(&s).unwrap();
        assert!(w.is_empty());
        assert_eq!(serialize(&d), s);
        let cut = &s[..s.len() / 2];
        assert!(matches!(parse_catalog(cut), Err(Error::CorruptCatalog(_))));
    }

    #[test]
    fn version_checked() {
        let c = enumerate_order(4).unwrap();
        let s = serialize(&c).replace(" v1\n", " v2\n");
        let body_end = s.trim_end().rfind('\n').unwrap() + 1;
        let body = &s[..body_end];
        let s = format!("{}sha256 {}\n", body, checksum(body));
        assert!(matches!(parse_catalog(&s), Err(Error::VersionMismatch(_))));
    }
}
