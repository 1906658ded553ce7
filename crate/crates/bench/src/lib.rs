//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use groupdet_core::group::{parse_catalog_spec, subgroup_generated};
use groupdet_core::{FiniteGroup, Subgroup};

pub fn group(spec: &str) -> Arc<FiniteGroup> {
    Arc::new(parse_catalog_spec(spec).expect("catalog spec"))
}

/// The cyclic subgroup generated by the first element of order `n`.
pub fn cyclic_subgroup(g: &FiniteGroup, n: usize) -> Subgroup {
    let x = g
        .elements()
        .find(|&x| g.element_order(x) == n)
        .expect("element of the requested order");
    subgroup_generated(g, &[x])
}
