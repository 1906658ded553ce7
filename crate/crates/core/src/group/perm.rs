use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use super::{FiniteGroup, GroupError, ValidationOptions, DEFAULT_PERMUTATION_CAP};

/// A permutation of `0..degree`, stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self((0..degree).collect())
    }

    /// Parses cycle notation with 1-based points, e.g. `(1 2)(3 4 5)`.
    /// Commas are accepted as separators, and `()` is the identity.
    pub fn parse_cycles(s: &str, degree: usize) -> Result<Self, GroupError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut seen = vec![false; degree];
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| GroupError::Parse(format!("expected '(' in {s:?}")))?;
            let close = body
                .find(')')
                .ok_or_else(|| GroupError::Parse(format!("unclosed cycle in {s:?}")))?;
            let points = body[..close]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    let p: usize = t
                        .parse()
                        .map_err(|_| GroupError::Parse(format!("bad point {t:?} in {s:?}")))?;
                    if p == 0 || p > degree {
                        return Err(GroupError::Parse(format!(
                            "point {p} outside 1..={degree} in {s:?}"
                        )));
                    }
                    Ok(p - 1)
                })
                .collect::<Result<Vec<_>, _>>()?;
            for (k, &p) in points.iter().enumerate() {
                if std::mem::replace(&mut seen[p], true) {
                    return Err(GroupError::Parse(format!(
                        "point {} repeated in {s:?}",
                        p + 1
                    )));
                }
                images[p] = points[(k + 1) % points.len()];
            }
            rest = body[close + 1..].trim_start();
        }
        Ok(Self(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Self(other.0.iter().map(|&i| self.0[i]).collect())
    }

    /// Cycle notation with 1-based points; `()` for the identity.
    pub fn to_cycle_string(&self) -> String {
        let mut out = String::new();
        let mut seen = vec![false; self.degree()];
        for start in 0..self.degree() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push((x + 1).to_string());
                x = self.0[x];
            }
            out.push('(');
            out.push_str(&cycle.join(" "));
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

impl FromStr for Permutation {
    type Err = GroupError;

    /// Parses with the degree implied by the largest point mentioned.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let degree = s
            .split(|c: char| !c.is_ascii_digit())
            .filter_map(|t| t.parse::<usize>().ok())
            .max()
            .unwrap_or(0);
        Self::parse_cycles(s, degree)
    }
}

/// Closure of the generators under composition, with elements numbered in
/// breadth-first discovery order from the identity.
pub fn from_permutations(generators: &[&str], degree: usize) -> Result<FiniteGroup, GroupError> {
    from_permutations_capped(generators, degree, DEFAULT_PERMUTATION_CAP)
}

pub fn from_permutations_capped(
    generators: &[&str],
    degree: usize,
    cap: usize,
) -> Result<FiniteGroup, GroupError> {
    let gens = generators
        .iter()
        .map(|s| Permutation::parse_cycles(s, degree))
        .collect::<Result<Vec<_>, _>>()?;
    let id = Permutation::identity(degree);
    let mut elements = vec![id.clone()];
    let mut index = HashMap::from([(id, 0usize)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for s in &gens {
            let y = elements[x].compose(s);
            if !index.contains_key(&y) {
                if elements.len() == cap {
                    return Err(GroupError::GroupTooLarge {
                        order: cap + 1,
                        cap,
                    });
                }
                index.insert(y.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(y);
            }
        }
    }
    let n = elements.len();
    let mut table = Vec::with_capacity(n * n);
    for a in &elements {
        for b in &elements {
            table.push(index[&a.compose(b)]);
        }
    }
    let names = elements.iter().map(Permutation::to_cycle_string).collect();
    FiniteGroup::from_flat(
        n,
        table,
        names,
        ValidationOptions {
            trust_large_tables: true,
            ..ValidationOptions::default()
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_closures() {
        assert_eq!(from_permutations(&["(1 2)"], 2).unwrap().order(), 2);
        let s3 = from_permutations(&["(1 2)", "(1 2 3)"], 3).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        let d4 = from_permutations(&["(1 2 3 4)", "(1 3)"], 4).unwrap();
        assert_eq!(d4.order(), 8);
        assert_eq!(d4.order_census(), crate::group::dihedral(4).unwrap().order_census());
    }

    #[test]
    fn bfs_numbering() {
        let g = from_permutations(&["(1 2 3)"], 3).unwrap();
        assert_eq!(g.names(), ["()", "(1 2 3)", "(1 3 2)"]);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            from_permutations(&["(1 4)"], 3),
            Err(GroupError::Parse(_))
        ));
        assert!(matches!(
            from_permutations(&["(1 2"], 3),
            Err(GroupError::Parse(_))
        ));
        assert!(matches!(
            from_permutations(&["(1 1)"], 3),
            Err(GroupError::Parse(_))
        ));
        assert!(matches!(
            from_permutations(&["1 2"], 3),
            Err(GroupError::Parse(_))
        ));
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            from_permutations_capped(&["(1 2)", "(1 2 3 4 5)"], 5, 100),
            Err(GroupError::GroupTooLarge { cap: 100, .. })
        ));
    }

    fn arb_perm(degree: usize) -> impl Strategy<Value = Permutation> {
        Just((0..degree).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(Permutation)
    }

    proptest! {
        #[test]
        fn cycle_string_round_trips(p in arb_perm(7)) {
            let s = p.to_cycle_string();
            prop_assert_eq!(Permutation::parse_cycles(&s, 7).unwrap(), p);
        }
    }
}
