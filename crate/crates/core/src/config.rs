//! Size gates shared by every module.
//!
//! Gates are process-wide. The CLI installs its configured values once at
//! start-up; library callers and tests get the defaults.

use std::sync::RwLock;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gates {
    /// Largest group order whose elements may be listed.
    pub enumeration: u64,
    /// Largest group order for automorphism-group computations.
    pub aut: u64,
    /// Largest group order for subgroup-lattice computations.
    pub lattice: u64,
    /// Largest number of subgroups a lattice may hold.
    pub lattice_subgroups: u64,
    /// Largest ball size for identity checks.
    pub ball: u64,
    /// Largest number of variable assignments an identity check may try.
    pub assignments: u64,
    /// Largest number of cosets in a quotient action.
    pub cosets: u64,
    /// Largest catalog order.
    pub catalog_order: u64,
}

impl Default for Gates {
    fn default() -> Self {
        Gates {
            enumeration: 1_000_000,
            aut: 512,
            lattice: 2000,
            lattice_subgroups: 200_000,
            ball: 100_000,
            assignments: 200_000_000,
            cosets: 100_000,
            catalog_order: 64,
        }
    }
}

static GATES: RwLock<Option<Gates>> = RwLock::new(None);

pub fn gates() -> Gates {
    GATES
        .read()
        .expect("gate lock poisoned")
        .clone()
        .unwrap_or_default()
}

pub fn set_gates(g: Gates) {
    *GATES.write().expect("gate lock poisoned") = Some(g);
}
