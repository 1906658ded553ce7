use std::collections::{BTreeSet, VecDeque};

use super::{FiniteGroup, GroupError, ValidationOptions, DEFAULT_SUBGROUP_LATTICE_CAP};

/// A subgroup of some ambient [`FiniteGroup`], stored as a sorted element list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    /// Validates `elements` as a subgroup of `group`.
    pub fn new(group: &FiniteGroup, mut elements: Vec<usize>) -> Result<Self, GroupError> {
        elements.sort_unstable();
        elements.dedup();
        if let Some(&bad) = elements.iter().find(|&&x| x >= group.order()) {
            return Err(GroupError::NotASubgroup(format!("{bad} is not an element")));
        }
        let sub = Self { elements };
        if !sub.contains(group.identity()) {
            return Err(GroupError::NotASubgroup("identity missing".into()));
        }
        for &a in &sub.elements {
            if !sub.contains(group.inv(a)) {
                return Err(GroupError::NotASubgroup(format!("inverse of {a} missing")));
            }
            for &b in &sub.elements {
                if !sub.contains(group.mul(a, b)) {
                    return Err(GroupError::NotASubgroup(format!(
                        "{a}·{b} = {} is missing",
                        group.mul(a, b)
                    )));
                }
            }
        }
        debug_assert_eq!(group.order() % sub.order(), 0);
        Ok(sub)
    }

    pub fn whole(group: &FiniteGroup) -> Self {
        Self {
            elements: group.elements().collect(),
        }
    }

    pub fn trivial(group: &FiniteGroup) -> Self {
        Self {
            elements: vec![group.identity()],
        }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    /// Position of `g` in the sorted element list.
    pub fn position(&self, g: usize) -> Option<usize> {
        self.elements.binary_search(&g).ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&g| other.contains(g))
    }

    /// The subgroup as a group in its own right. Local index `i` is the
    /// ambient element `self.elements()[i]`; names are carried over.
    pub fn to_group(&self, group: &FiniteGroup) -> FiniteGroup {
        let n = self.order();
        let mut table = Vec::with_capacity(n * n);
        for &a in &self.elements {
            for &b in &self.elements {
                table.push(self.position(group.mul(a, b)).expect("closed"));
            }
        }
        let names = self
            .elements
            .iter()
            .map(|&g| group.name(g).to_string())
            .collect();
        FiniteGroup::from_flat(n, table, names, ValidationOptions::default())
            .expect("a subgroup is a group")
    }

    /// Lists the elements with ambient names, e.g. `{e, a^2}`.
    pub fn describe(&self, group: &FiniteGroup) -> String {
        let names: Vec<&str> = self.elements.iter().map(|&g| group.name(g)).collect();
        format!("{{{}}}", names.join(", "))
    }
}

/// Smallest subgroup containing `seeds`.
pub fn subgroup_generated(group: &FiniteGroup, seeds: &[usize]) -> Subgroup {
    let mut member = vec![false; group.order()];
    let e = group.identity();
    member[e] = true;
    let gens: Vec<usize> = seeds.iter().copied().filter(|&s| s != e).collect();
    let mut queue = VecDeque::from([e]);
    while let Some(x) = queue.pop_front() {
        for &s in &gens {
            let y = group.mul(x, s);
            if !member[y] {
                member[y] = true;
                queue.push_back(y);
            }
        }
    }
    Subgroup {
        elements: (0..group.order()).filter(|&g| member[g]).collect(),
    }
}

/// Every subgroup of `group`, ascending by order (ties by element list).
pub fn all_subgroups(group: &FiniteGroup) -> Result<Vec<Subgroup>, GroupError> {
    all_subgroups_capped(group, DEFAULT_SUBGROUP_LATTICE_CAP)
}

pub fn all_subgroups_capped(group: &FiniteGroup, cap: usize) -> Result<Vec<Subgroup>, GroupError> {
    if group.order() > cap {
        return Err(GroupError::GroupTooLarge {
            order: group.order(),
            cap,
        });
    }
    let mut found: BTreeSet<Subgroup> = group
        .elements()
        .map(|g| subgroup_generated(group, &[g]))
        .collect();
    let cyclic: Vec<Subgroup> = found.iter().cloned().collect();
    // Joining with cyclic subgroups suffices: every subgroup is a join of
    // cyclic ones, and joins are computed by closing the union.
    let mut frontier: Vec<Subgroup> = cyclic.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for c in &cyclic {
                if c.is_subgroup_of(a) {
                    continue;
                }
                let mut seeds = a.elements.clone();
                seeds.extend_from_slice(&c.elements);
                let joined = subgroup_generated(group, &seeds);
                if found.insert(joined.clone()) {
                    next.push(joined);
                }
            }
        }
        frontier = next;
    }
    let mut all: Vec<Subgroup> = found.into_iter().collect();
    all.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
    Ok(all)
}

/// The subgroup generated by all commutators `a b a⁻¹ b⁻¹`.
pub fn commutator_subgroup(group: &FiniteGroup) -> Subgroup {
    let mut seeds = BTreeSet::new();
    for a in group.elements() {
        for b in group.elements() {
            seeds.insert(group.mul(group.mul(a, b), group.mul(group.inv(a), group.inv(b))));
        }
    }
    subgroup_generated(group, &seeds.into_iter().collect::<Vec<_>>())
}

/// Whether `sub` is normal in the whole group.
pub fn is_normal(group: &FiniteGroup, sub: &Subgroup) -> bool {
    is_normal_in(group, &Subgroup::whole(group), sub)
}

/// Whether `sub` is normal in `over` (conjugating only by elements of `over`).
pub fn is_normal_in(group: &FiniteGroup, over: &Subgroup, sub: &Subgroup) -> bool {
    over.elements()
        .iter()
        .all(|&g| sub.elements().iter().all(|&h| sub.contains(group.conjugate(g, h))))
}

/// A complete set of left coset representatives of `sub` inside `over`.
///
/// `decompose(g)` returns the unique `(i, h)` with `g = reps[i]·h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transversal {
    over: Subgroup,
    sub: Subgroup,
    reps: Vec<usize>,
    lookup: Vec<Option<(usize, usize)>>,
}

impl Transversal {
    /// Validates an explicit list of representatives. `reps[0]` must be the
    /// identity.
    pub fn new(
        group: &FiniteGroup,
        over: &Subgroup,
        sub: &Subgroup,
        reps: Vec<usize>,
    ) -> Result<Self, GroupError> {
        if !sub.is_subgroup_of(over) {
            return Err(GroupError::NotASubgroupChain(
                "transversal subgroup is not contained in the covering group".into(),
            ));
        }
        if reps.first() != Some(&group.identity()) {
            return Err(GroupError::InvalidTransversal(
                "first representative must be the identity".into(),
            ));
        }
        if reps.len() * sub.order() != over.order() {
            return Err(GroupError::InvalidTransversal(format!(
                "{} representatives for index {}",
                reps.len(),
                over.order() / sub.order()
            )));
        }
        let mut lookup = vec![None; group.order()];
        for (i, &t) in reps.iter().enumerate() {
            if !over.contains(t) {
                return Err(GroupError::InvalidTransversal(format!(
                    "representative {t} lies outside the covering group"
                )));
            }
            for &h in sub.elements() {
                let g = group.mul(t, h);
                if lookup[g].is_some() {
                    return Err(GroupError::InvalidTransversal(format!(
                        "cosets of {t} and an earlier representative overlap at {g}"
                    )));
                }
                lookup[g] = Some((i, h));
            }
        }
        Ok(Self {
            over: over.clone(),
            sub: sub.clone(),
            reps,
            lookup,
        })
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn index(&self) -> usize {
        self.reps.len()
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.sub
    }

    pub fn over(&self) -> &Subgroup {
        &self.over
    }

    /// `(i, h)` with `g = reps[i]·h`, or `None` when `g` lies outside the
    /// covering group.
    pub fn try_decompose(&self, g: usize) -> Option<(usize, usize)> {
        self.lookup.get(g).copied().flatten()
    }

    /// Like [`Self::try_decompose`] but panics outside the covering group.
    pub fn decompose(&self, g: usize) -> (usize, usize) {
        self.try_decompose(g)
            .unwrap_or_else(|| panic!("element {g} is not covered by this transversal"))
    }

    /// Index of the coset containing `g`.
    pub fn coset_of(&self, g: usize) -> usize {
        self.decompose(g).0
    }
}

/// Canonical left transversal of `sub` in the whole group.
pub fn left_transversal(group: &FiniteGroup, sub: &Subgroup) -> Transversal {
    left_transversal_in(group, &Subgroup::whole(group), sub)
        .expect("every subgroup has a transversal in the whole group")
}

/// Canonical left transversal of `sub` in `over`: the identity first, then
/// repeatedly the smallest element index not yet covered.
pub fn left_transversal_in(
    group: &FiniteGroup,
    over: &Subgroup,
    sub: &Subgroup,
) -> Result<Transversal, GroupError> {
    if !sub.is_subgroup_of(over) {
        return Err(GroupError::NotASubgroupChain(
            "subgroup is not contained in the covering group".into(),
        ));
    }
    let mut covered = vec![false; group.order()];
    let mut reps = Vec::new();
    let e = group.identity();
    for g in std::iter::once(e).chain(over.elements().iter().copied()) {
        if covered[g] {
            continue;
        }
        reps.push(g);
        for &h in sub.elements() {
            covered[group.mul(g, h)] = true;
        }
    }
    Transversal::new(group, over, sub, reps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, dihedral, quaternion8, standard_catalog, symmetric};

    #[test]
    fn generated_subgroups() {
        let s3 = symmetric(3).unwrap();
        assert_eq!(subgroup_generated(&s3, &[]).elements(), &[0]);
        assert_eq!(subgroup_generated(&s3, &[0, 1, 2, 3, 4, 5]).order(), 6);
        assert_eq!(subgroup_generated(&s3, &[3]).elements(), &[0, 3, 4]);
    }

    #[test]
    fn lattice_sizes() {
        assert_eq!(all_subgroups(&cyclic(1).unwrap()).unwrap().len(), 1);
        let c6 = all_subgroups(&cyclic(6).unwrap()).unwrap();
        let orders: Vec<usize> = c6.iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![1, 2, 3, 6]);
        let s3 = all_subgroups(&symmetric(3).unwrap()).unwrap();
        let orders: Vec<usize> = s3.iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 6]);
        assert_eq!(all_subgroups(&symmetric(4).unwrap()).unwrap().len(), 30);
        assert_eq!(all_subgroups(&dihedral(4).unwrap()).unwrap().len(), 10);
        assert_eq!(all_subgroups(&quaternion8()).unwrap().len(), 6);
    }

    #[test]
    fn lattice_cap() {
        let s5 = symmetric(5).unwrap();
        assert!(matches!(
            all_subgroups(&s5),
            Err(GroupError::GroupTooLarge { order: 120, cap: 48 })
        ));
    }

    /// Brute force over all subsets, for small groups.
    fn brute_force_subgroups(group: &FiniteGroup) -> usize {
        let n = group.order();
        (0u32..1 << n)
            .filter(|mask| {
                let elems: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
                Subgroup::new(group, elems).is_ok()
            })
            .count()
    }

    #[test]
    fn lattice_matches_brute_force() {
        for (name, g) in standard_catalog() {
            if g.order() > 12 {
                continue;
            }
            let lattice = all_subgroups(&g).unwrap();
            for s in &lattice {
                Subgroup::new(&g, s.elements().to_vec()).unwrap();
            }
            assert_eq!(lattice.len(), brute_force_subgroups(&g), "{name}");
        }
    }

    #[test]
    fn transversal_edges() {
        let s3 = symmetric(3).unwrap();
        let whole = Subgroup::whole(&s3);
        assert_eq!(left_transversal(&s3, &whole).reps(), &[0]);
        let trivial = Subgroup::trivial(&s3);
        assert_eq!(left_transversal(&s3, &trivial).reps(), &[0, 1, 2, 3, 4, 5]);
        let c3 = subgroup_generated(&s3, &[4]);
        assert_eq!(left_transversal(&s3, &c3).reps(), &[0, 1]);
    }

    #[test]
    fn decompose_in_c4() {
        let c4 = cyclic(4).unwrap();
        let h = Subgroup::new(&c4, vec![0, 2]).unwrap();
        let t = left_transversal(&c4, &h);
        assert_eq!(t.reps(), &[0, 1]);
        assert_eq!(t.decompose(0), (0, 0));
        assert_eq!(t.decompose(1), (1, 0));
        assert_eq!(t.decompose(3), (1, 2));
    }

    #[test]
    fn decomposition_is_a_bijection() {
        for (name, g) in standard_catalog() {
            for h in all_subgroups(&g).unwrap() {
                let t = left_transversal(&g, &h);
                let mut seen = BTreeSet::new();
                for x in g.elements() {
                    let (i, k) = t.decompose(x);
                    assert!(h.contains(k));
                    assert_eq!(g.mul(t.reps()[i], k), x, "{name}");
                    assert!(seen.insert((i, k)));
                }
                assert_eq!(seen.len(), t.index() * h.order());
                assert_eq!(t, left_transversal(&g, &h));
            }
        }
    }

    #[test]
    fn normality() {
        let s3 = symmetric(3).unwrap();
        assert!(is_normal(&s3, &Subgroup::trivial(&s3)));
        assert!(!is_normal(&s3, &subgroup_generated(&s3, &[1])));
        for (_, g) in standard_catalog() {
            for h in all_subgroups(&g).unwrap() {
                if 2 * h.order() == g.order() {
                    assert!(is_normal(&g, &h));
                }
            }
        }
    }

    #[test]
    fn invalid_transversals() {
        let c4 = cyclic(4).unwrap();
        let whole = Subgroup::whole(&c4);
        let h = Subgroup::new(&c4, vec![0, 2]).unwrap();
        assert!(Transversal::new(&c4, &whole, &h, vec![1, 0]).is_err());
        assert!(Transversal::new(&c4, &whole, &h, vec![0, 2]).is_err());
        assert!(Transversal::new(&c4, &whole, &h, vec![0, 3]).is_ok());
        assert!(matches!(
            Subgroup::new(&c4, vec![0, 1]),
            Err(GroupError::NotASubgroup(_))
        ));
    }

    #[test]
    fn commutators() {
        let s3 = symmetric(3).unwrap();
        assert_eq!(commutator_subgroup(&s3).order(), 3);
        assert_eq!(commutator_subgroup(&quaternion8()).order(), 2);
        assert_eq!(commutator_subgroup(&cyclic(6).unwrap()).order(), 1);
    }
}
