//! The catalogs of order <= 16 against the multiplication-table oracle.

mod common;

use common::{oracle, T};
use integrals_core::enumerate::enumerate_order;

#[test]
fn catalogs_match_table_oracle_up_to_16() {
    let all = oracle(16);
    // documented counts of groups of each order
    let known = [0, 1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14];
    for n in 1..=16 {
        let cat = enumerate_order(n as u64).unwrap();
        assert_eq!(all[n].len(), known[n], "oracle count at order {}", n);
        assert_eq!(cat.len(), all[n].len(), "catalog count at order {}", n);
        // each catalog entry matches exactly one oracle group
        let mut used = vec![false; all[n].len()];
        for g in cat.groups() {
            let t = T::from_perm_group(g);
            let hits: Vec<usize> = (0..all[n].len()).filter(|&i| all[n][i].isomorphic(&t)).collect();
            assert_eq!(hits.len(), 1, "order {}", n);
            assert!(!used[hits[0]], "two catalog entries of order {} are isomorphic", n);
            used[hits[0]] = true;
        }
    }
}
