use std::sync::Arc;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use integrals_core::aut::{automorphism_group, necessary_condition, Condition};
use integrals_core::construct::{construct, regular, wreath};
use integrals_core::enumerate::{enumerate_order, Catalog};
use integrals_core::gauge::{ball, holds_in_group, holds_on_ball, in_product_with_a2, symmetric_closure, IdentitySet};
use integrals_core::hom::Homomorphism;
use integrals_core::integral::{check_is_integral, reduce_integral, search_integral};
use integrals_core::iso::is_isomorphic;
use integrals_core::structure::{abelian_invariants, coinvariants, derived_subgroup, exponent, is_normal, quotient};
use integrals_core::word::Word;
use integrals_core::{GroupDescriptor, PermGroup, Permutation};

fn catalog(n: u64) -> Arc<Catalog> {
    enumerate_order(n).unwrap()
}

fn pick(n: u64, i: usize) -> PermGroup {
    let c = catalog(n);
    c.entries[i % c.len()].group.clone()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_perm(degree: usize, r: &mut ChaCha8Rng) -> Permutation {
    let mut images: Vec<u32> = (0..degree as u32).collect();
    images.shuffle(r);
    Permutation::from_images(images).unwrap()
}

fn small_order() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![4u64, 6, 8, 9, 10, 12, 16, 18, 20, 21, 24])
}

fn mid_order() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![8u64, 12, 16, 24, 27, 32])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closed_under_products_and_inverses(n in small_order(), i in any::<usize>(), seed in any::<u64>()) {
        let g = pick(n, i);
        let mut r = rng(seed);
        for _ in 0..20 {
            let a = g.random_element(&mut r);
            let b = g.random_element(&mut r);
            prop_assert!(g.contains(&a.mul(&b)).unwrap());
            prop_assert!(g.contains(&a.inverse()).unwrap());
        }
    }

    #[test]
    fn order_of_group_built_from_elements(n in small_order(), i in any::<usize>()) {
        let g = pick(n, i);
        let all = PermGroup::new(g.elements().unwrap()).unwrap();
        prop_assert_eq!(all.order(), g.order());
    }

    #[test]
    fn chain_independent_of_generator_order(n in mid_order(), i in any::<usize>(), seed in any::<u64>()) {
        let g = pick(n, i);
        let mut gens = g.generators().to_vec();
        gens.reverse();
        let h = PermGroup::new(gens).unwrap();
        prop_assert_eq!(h.order(), g.order());
        let mut r = rng(seed);
        for k in 0..100 {
            let x = if k % 2 == 0 { g.random_element(&mut r) } else { random_perm(g.degree(), &mut r) };
            prop_assert_eq!(h.contains(&x).unwrap(), g.contains(&x).unwrap());
        }
    }

    #[test]
    fn kernel_times_image(n in mid_order(), i in any::<usize>()) {
        let g = pick(n, i);
        let d = derived_subgroup(&g);
        let (q, pi) = quotient(&g, &d).unwrap();
        prop_assert_eq!(pi.kernel().order_u64() * pi.image().order_u64(), g.order_u64());
        prop_assert_eq!(pi.kernel().order_u64(), d.order_u64());
        prop_assert!(q.is_abelian());
        prop_assert!(is_normal(&g, &d));
    }

    #[test]
    fn abelian_invariants_reconstruct(fs in prop::collection::vec(prop::sample::select(vec![2u64, 3, 4, 5, 6, 8, 9]), 1..4)) {
        prop_assume!(fs.iter().product::<u64>() <= 256);
        let a = construct(&GroupDescriptor::Abelian(fs.clone())).unwrap();
        let t = abelian_invariants(&a).unwrap();
        prop_assert_eq!(t.order(), fs.iter().product::<u64>());
        let b = construct(&GroupDescriptor::Abelian(t.factors().to_vec())).unwrap();
        prop_assert!(is_isomorphic(&a, &b).unwrap());
    }

    #[test]
    fn wreath_with_c2_is_an_integral(fs in prop::collection::vec(prop::sample::select(vec![2u64, 3, 4]), 1..3)) {
        let n: u64 = fs.iter().product();
        prop_assume!(n <= 16);
        let a = construct(&GroupDescriptor::Abelian(fs)).unwrap();
        let w = wreath(&a, &construct(&GroupDescriptor::Cyclic(2)).unwrap());
        prop_assert_eq!(w.order_u64(), 2 * n * n);
        prop_assert!(is_isomorphic(&derived_subgroup(&w), &a).unwrap());
    }

    #[test]
    fn isomorphism_is_an_equivalence(n in prop::sample::select(vec![16u64, 24, 32]), i in any::<usize>(), j in any::<usize>(), seed in any::<u64>()) {
        let c = catalog(n);
        let (i, j) = (i % c.len(), j % c.len());
        let g = &c.entries[i].group;
        let mut r = rng(seed);
        let p = random_perm(g.degree(), &mut r);
        let conj = PermGroup::new(g.generators().iter().map(|x| x.conjugate_by(&p)).collect()).unwrap();
        let reg = regular(g).unwrap();
        prop_assert!(is_isomorphic(g, g).unwrap());
        prop_assert!(is_isomorphic(g, &conj).unwrap());
        prop_assert!(is_isomorphic(&conj, g).unwrap());
        // g ~ conj and g ~ reg, so conj ~ reg
        prop_assert!(is_isomorphic(&conj, &reg).unwrap());
        let other = &c.entries[j].group;
        prop_assert_eq!(is_isomorphic(g, other).unwrap(), i == j);
        prop_assert_eq!(is_isomorphic(other, g).unwrap(), i == j);
    }

    #[test]
    fn inner_automorphisms_are_normal(n in prop::sample::select(vec![6u64, 8, 12, 16, 18, 24]), i in any::<usize>()) {
        let g = pick(n, i);
        let aut = automorphism_group(&g).unwrap();
        prop_assert!(aut.inner().is_subgroup_of(aut.carrier()));
        prop_assert!(is_normal(aut.carrier(), aut.inner()));
    }

    #[test]
    fn enlarging_the_bound_keeps_findings(n in prop::sample::select(vec![2u64, 3, 4, 6, 8]), i in any::<usize>(), b1 in 8u64..40, extra in 0u64..24) {
        let g = pick(n, i);
        let b2 = b1 + extra;
        let small = search_integral(&g, b1, None).unwrap();
        let large = search_integral(&g, b2, None).unwrap();
        let key = |r: &integrals_core::integral::IntegralReport| -> Vec<(u64, usize)> {
            r.findings.iter().map(|f| (f.order, f.index)).collect()
        };
        let kl = key(&large);
        for k in key(&small) {
            prop_assert!(kl.contains(&k));
        }
        for f in &large.findings {
            prop_assert!(check_is_integral(&f.group, &g).unwrap());
            prop_assert!(f.verify(&g));
        }
        if !large.findings.is_empty() {
            prop_assert_eq!(necessary_condition(&g).unwrap(), Condition::Holds);
        }
    }

    #[test]
    fn reduction_keeps_the_derived_subgroup(n in prop::sample::select(vec![12u64, 16, 24, 32, 36, 40, 48]), i in any::<usize>()) {
        let h = pick(n, i);
        let g = derived_subgroup(&h);
        let r = reduce_integral(&h, &g).unwrap();
        prop_assert!(r.order_u64() <= h.order_u64());
        prop_assert_eq!(h.order_u64() % r.order_u64(), 0);
        prop_assert!(check_is_integral(&r, &g).unwrap());
    }

    #[test]
    fn balls_grow_monotonically(n in small_order(), i in any::<usize>(), k in 1usize..5) {
        let g = pick(n, i);
        let s = symmetric_closure(&g.reduced_generators());
        let b = ball(&g, &s, k).unwrap();
        let sizes = b.sizes();
        for t in 1..sizes.len() {
            prop_assert!(sizes[t - 1] <= sizes[t]);
            prop_assert!(sizes[t] <= s.len() * sizes[t - 1] + sizes[t - 1]);
            for x in b.within(t - 1) {
                prop_assert!(b.within(t).contains(x));
            }
        }
    }

    #[test]
    fn full_ball_decides_the_group(n in small_order(), i in any::<usize>(), preset in prop::sample::select(vec!["abelian", "exponent-2", "metabelian", "N2", "A6"])) {
        let g = pick(n, i);
        let ids = IdentitySet::preset(preset).unwrap();
        let s = symmetric_closure(&g.reduced_generators());
        // radius |G| is at least the diameter
        let k = g.order_u64() as usize;
        prop_assert_eq!(holds_on_ball(&ids, &g, &s, k).unwrap(), holds_in_group(&ids, &g).unwrap());
    }
}

fn comm_word() -> Word {
    Word::commutator(&Word::var(0), &Word::var(1))
}

fn metabelian_word() -> Word {
    Word::commutator(&comm_word(), &Word::commutator(&Word::var(2), &Word::var(3)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn integral_of_a_variety(n in prop::sample::select(vec![6u64, 8, 12, 16, 18, 24]), i in any::<usize>()) {
        let h = pick(n, i);
        let d = derived_subgroup(&h);
        // V = abelian: H in VA iff H' abelian
        let va = IdentitySet::new("abelian-by-abelian", vec![metabelian_word()]);
        prop_assert_eq!(holds_in_group(&va, &h).unwrap(), d.is_abelian());
        // V = A3
        let a3a = IdentitySet::new("A3-by-abelian", vec![metabelian_word(), comm_word().pow(3)]);
        let d_in_a3 = d.is_abelian() && 3 % exponent(&d).unwrap() == 0;
        prop_assert_eq!(holds_in_group(&a3a, &h).unwrap(), d_in_a3);
        // the five-law basis against the structural A3 A2 test
        let s3 = IdentitySet::preset("s3").unwrap();
        prop_assert_eq!(holds_in_group(&s3, &h).unwrap(), in_product_with_a2(&h, 3));
    }
}

/// Rank over F2 of column vectors stored as bit masks.
fn rank_f2(mut vs: Vec<u32>) -> u32 {
    let mut rank = 0;
    for bit in 0..32 {
        if let Some(p) = vs.iter().position(|&v| v >> bit & 1 == 1) {
            let pivot = vs.swap_remove(p);
            for v in vs.iter_mut() {
                if *v >> bit & 1 == 1 {
                    *v ^= pivot;
                }
            }
            rank += 1;
        }
    }
    rank
}

fn apply(cols: &[u32], v: u32) -> u32 {
    cols.iter().enumerate().filter(|(i, _)| v >> i & 1 == 1).fold(0, |acc, (_, c)| acc ^ c)
}

/// Columns of a random unipotent matrix: unitriangular, then conjugated by a coordinate permutation.
fn random_unipotent(k: usize, r: &mut ChaCha8Rng, sigma: &[usize]) -> Vec<u32> {
    let mut cols = vec![0u32; k];
    for (j, col) in cols.iter_mut().enumerate() {
        *col = 1 << j;
        for i in 0..j {
            if r.gen_bool(0.5) {
                *col |= 1 << i;
            }
        }
    }
    let permute = |v: u32| (0..k).filter(|&i| v >> i & 1 == 1).fold(0u32, |acc, i| acc | 1 << sigma[i]);
    let mut out = vec![0u32; k];
    for j in 0..k {
        out[sigma[j]] = permute(cols[j]);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn coinvariants_of_two_groups(k in 1usize..=10, ngens in 1usize..=3, seed in any::<u64>()) {
        let mut r = rng(seed);
        let mut sigma: Vec<usize> = (0..k).collect();
        sigma.shuffle(&mut r);
        let mats: Vec<Vec<u32>> = (0..ngens).map(|_| random_unipotent(k, &mut r, &sigma)).collect();

        let deg = 2 * k;
        let to_perm = |v: u32| {
            let mut images: Vec<u32> = (0..deg as u32).collect();
            for i in 0..k {
                if v >> i & 1 == 1 {
                    images.swap(2 * i, 2 * i + 1);
                }
            }
            Permutation::from_images(images).unwrap()
        };
        let a = PermGroup::new((0..k).map(|i| to_perm(1 << i)).collect()).unwrap();
        let table = a.table().unwrap();
        let vec_of = |i: usize| {
            let p = table.element(i).unwrap();
            (0..k).filter(|&b| p.apply(2 * b as u32) != 2 * b as u32).fold(0u32, |acc, b| acc | 1 << b)
        };
        let acting: Vec<Permutation> = mats
            .iter()
            .map(|m| {
                let images = (0..table.n()).map(|i| table.index_of(&to_perm(apply(m, vec_of(i)))).unwrap() as u32).collect();
                Permutation::from_images(images).unwrap()
            })
            .collect();
        let h = PermGroup::new(acting.clone()).unwrap();
        let action = Homomorphism::new(&h, &h, h.generators().to_vec()).unwrap();
        let c = coinvariants(&a, &action).unwrap();

        let diffs: Vec<u32> = mats.iter().flat_map(|m| (0..k).map(move |j| m[j] ^ (1 << j))).collect();
        let rank = rank_f2(diffs);
        prop_assert_eq!(c.order_u64(), 1u64 << rank);
        let order_h = h.order_u64();
        prop_assert!(order_h.is_power_of_two());
        // |A/[A,H]| >= |A|^(1/|H|), in base-2 logarithms
        prop_assert!((k as u64 - rank as u64) * order_h >= k as u64);
    }
}

#[test]
fn construct_is_deterministic() {
    for d in ["sl23", "dihedral(12)", "wreath(cyclic(3),cyclic(2))", "heisenberg(5)", "direct(quaternion(8),cyclic(3))"] {
        let d: GroupDescriptor = d.parse().unwrap();
        assert_eq!(construct(&d).unwrap().to_text(), construct(&d).unwrap().to_text(), "{}", d);
    }
}
