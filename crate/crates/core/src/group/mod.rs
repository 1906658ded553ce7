//! Finite groups given by Cayley tables, their subgroups, and left coset
//! transversals.
//!
//! Elements are always the indices `0..n`. Every other part of the crate
//! works with these indices and looks products up in the table, so a group
//! is cheap to share and trivially `Send + Sync`.

mod catalog;
mod io;
mod perm;
mod subgroup;

pub use catalog::{
    alternating, cyclic, dihedral, direct_product, parse_catalog_spec, quaternion8, standard_catalog,
    symmetric,
};
pub use io::GroupFile;
pub use perm::{from_permutations, from_permutations_capped, Permutation};
pub use subgroup::{
    all_subgroups, all_subgroups_capped, commutator_subgroup, is_normal, is_normal_in,
    left_transversal, left_transversal_in, subgroup_generated, Subgroup, Transversal,
};

use std::fmt;

use thiserror::Error;

/// Orders above which associativity is not checked eagerly unless asked for.
pub const DEFAULT_ASSOCIATIVITY_CAP: usize = 128;
/// Largest group `from_permutations` will enumerate by default.
pub const DEFAULT_PERMUTATION_CAP: usize = 1024;
/// Largest group `all_subgroups` will sweep by default.
pub const DEFAULT_SUBGROUP_LATTICE_CAP: usize = 48;

/// The group axiom that a candidate Cayley table violated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    Identity,
    Inverse,
    Associativity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Identity => "identity",
            Axiom::Inverse => "inverses",
            Axiom::Associativity => "associativity",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("malformed Cayley table: {0}")]
    MalformedTable(String),
    /// `witness` is `(a, b, c)` for associativity, `(e, a, e·a)` for the
    /// best identity candidate, and `(a, e, a)` for an element with no inverse.
    #[error("not a group: {axiom} fails, witness ({}, {}, {})", witness.0, witness.1, witness.2)]
    NotAGroup {
        axiom: Axiom,
        witness: (usize, usize, usize),
    },
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("group of order {order} exceeds the cap of {cap}")]
    GroupTooLarge { order: usize, cap: usize },
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("not a subgroup chain: {0}")]
    NotASubgroupChain(String),
    #[error("not a normal subgroup: {0}")]
    NotNormal(String),
    #[error("invalid transversal: {0}")]
    InvalidTransversal(String),
}

/// Validation knobs for [`FiniteGroup::from_cayley_table_with`].
#[derive(Clone, Copy, Debug)]
pub struct ValidationOptions {
    /// Associativity is checked for orders up to this value.
    pub associativity_cap: usize,
    /// Skip the associativity check for orders above the cap. Without this
    /// flag larger tables are still checked, just more slowly.
    pub trust_large_tables: bool,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        Self {
            associativity_cap: DEFAULT_ASSOCIATIVITY_CAP,
            trust_large_tables: false,
        }
    }
}

/// A finite group on the element indices `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    names: Vec<String>,
}

impl FiniteGroup {
    /// Builds a group from its Cayley table, `table[a][b] = a·b`.
    pub fn from_cayley_table(
        table: &[Vec<usize>],
        names: Option<Vec<String>>,
    ) -> Result<Self, GroupError> {
        Self::from_cayley_table_with(table, names, ValidationOptions::default())
    }

    pub fn from_cayley_table_with(
        table: &[Vec<usize>],
        names: Option<Vec<String>>,
        options: ValidationOptions,
    ) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::MalformedTable("empty table".into()));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::MalformedTable(format!(
                    "row {i} has length {}, expected {n}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(GroupError::MalformedTable(format!(
                        "entry ({i}, {j}) = {v} is outside 0..{n}"
                    )));
                }
                flat.push(v);
            }
        }
        let names = match names {
            Some(names) if names.len() != n => {
                return Err(GroupError::MalformedTable(format!(
                    "{} names given for {n} elements",
                    names.len()
                )))
            }
            Some(names) => names,
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        Self::from_flat(n, flat, names, options)
    }

    /// Builds a group from a row-major table without re-checking shape.
    pub(crate) fn from_flat(
        n: usize,
        table: Vec<usize>,
        names: Vec<String>,
        options: ValidationOptions,
    ) -> Result<Self, GroupError> {
        let at = |a: usize, b: usize| table[a * n + b];

        let identity = (0..n)
            .find(|&e| (0..n).all(|a| at(e, a) == a && at(a, e) == a))
            .ok_or_else(|| {
                // Report the first failure of the most plausible candidate.
                let e = (0..n)
                    .max_by_key(|&e| (0..n).filter(|&a| at(e, a) == a).count())
                    .unwrap_or(0);
                let a = (0..n)
                    .find(|&a| at(e, a) != a || at(a, e) != a)
                    .unwrap_or(0);
                GroupError::NotAGroup {
                    axiom: Axiom::Identity,
                    witness: (e, a, at(e, a)),
                }
            })?;

        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| at(a, b) == identity && at(b, a) == identity)
                .ok_or(GroupError::NotAGroup {
                    axiom: Axiom::Inverse,
                    witness: (a, identity, a),
                })?;
            inverse.push(inv);
        }

        if n <= options.associativity_cap || !options.trust_large_tables {
            for a in 0..n {
                for b in 0..n {
                    let ab = at(a, b);
                    for c in 0..n {
                        if at(ab, c) != at(a, at(b, c)) {
                            return Err(GroupError::NotAGroup {
                                axiom: Axiom::Associativity,
                                witness: (a, b, c),
                            });
                        }
                    }
                }
            }
        }

        Ok(Self {
            order: n,
            table,
            identity,
            inverse,
            names,
        })
    }

    /// The trivial group.
    pub fn trivial() -> Self {
        Self {
            order: 1,
            table: vec![0],
            identity: 0,
            inverse: vec![0],
            names: vec!["e".into()],
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `g·h⁻¹`.
    #[inline]
    pub fn div(&self, g: usize, h: usize) -> usize {
        self.mul(g, self.inverse[h])
    }

    /// `g·h·g⁻¹`.
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inverse[g])
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// The Cayley table as nested rows.
    pub fn table(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn inverse_table(&self) -> &[usize] {
        &self.inverse
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Elements commuting with everything.
    pub fn center(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
            .collect()
    }

    /// Conjugacy classes, each sorted, ordered by their smallest element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for a in 0..self.order {
            if seen[a] {
                continue;
            }
            let mut class: Vec<usize> = (0..self.order).map(|g| self.conjugate(g, a)).collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                seen[c] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// Sorted multiset of element orders; a cheap isomorphism invariant.
    pub fn order_census(&self) -> Vec<usize> {
        let mut census: Vec<usize> = (0..self.order).map(|a| self.element_order(a)).collect();
        census.sort_unstable();
        census
    }

    /// Replaces the display names.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, GroupError> {
        if names.len() != self.order {
            return Err(GroupError::MalformedTable(format!(
                "{} names given for {} elements",
                names.len(),
                self.order
            )));
        }
        self.names = names;
        Ok(self)
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "group of order {}", self.order)
    }
}
