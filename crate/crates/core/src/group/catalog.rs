//! Named groups with fixed element orderings.
//!
//! * `cyclic(n)`: residues `0..n`, named `e, a, a^2, …`.
//! * `dihedral(n)`: order `2n`; index `k` is the rotation `r^k` and index
//!   `n + k` is the reflection `s r^k`, with `r^k s = s r^{-k}`.
//! * `symmetric(n)`: permutations of `1..=n` in lexicographic order of their
//!   one-line notation, composed as functions (`(σ·τ)(i) = σ(τ(i))`).
//! * `alternating(n)`: the even permutations, in the same order.
//! * `quaternion8()`: `1, -1, i, -i, j, -j, k, -k`.
//! * `direct_product(g, h)`: pairs `(a, b)` at index `a·|h| + b`.

use super::{FiniteGroup, GroupError, ValidationOptions};

fn build(n: usize, names: Vec<String>, mul: impl Fn(usize, usize) -> usize) -> FiniteGroup {
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            table.push(mul(a, b));
        }
    }
    FiniteGroup::from_flat(n, table, names, ValidationOptions::default())
        .expect("catalog constructions satisfy the group axioms")
}

fn power_name(base: &str, k: usize) -> String {
    match k {
        0 => "e".to_string(),
        1 => base.to_string(),
        _ => format!("{base}^{k}"),
    }
}

pub fn cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 || n > super::DEFAULT_PERMUTATION_CAP {
        return Err(GroupError::ParameterOutOfRange(format!(
            "cyclic order must be in 1..={}, got {n}",
            super::DEFAULT_PERMUTATION_CAP
        )));
    }
    let names = (0..n).map(|k| power_name("a", k)).collect();
    Ok(build(n, names, |a, b| (a + b) % n))
}

pub fn dihedral(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 || 2 * n > super::DEFAULT_PERMUTATION_CAP {
        return Err(GroupError::ParameterOutOfRange(format!(
            "dihedral parameter must be in 1..={}, got {n}",
            super::DEFAULT_PERMUTATION_CAP / 2
        )));
    }
    let mut names: Vec<String> = (0..n).map(|k| power_name("r", k)).collect();
    names.extend((0..n).map(|k| match k {
        0 => "s".to_string(),
        1 => "sr".to_string(),
        _ => format!("sr^{k}"),
    }));
    Ok(build(2 * n, names, |a, b| {
        let (f1, k1) = (a / n, a % n);
        let (f2, k2) = (b / n, b % n);
        // s^f1 r^k1 s^f2 r^k2 = s^(f1+f2) r^(±k1 + k2)
        let k = (if f2 == 0 { k1 + k2 } else { n - k1 + k2 }) % n;
        ((f1 + f2) % 2) * n + k
    }))
}

/// All permutations of `0..n` in lexicographic order.
fn lex_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        // next_permutation
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
    out
}

fn is_even(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    let mut transpositions = 0;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        transpositions += len - 1;
    }
    transpositions % 2 == 0
}

fn permutation_group(perms: Vec<Vec<usize>>) -> FiniteGroup {
    use std::collections::HashMap;
    let index: HashMap<Vec<usize>, usize> = perms
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    let names = perms
        .iter()
        .map(|p| p.iter().map(|&x| (x + 1).to_string()).collect::<Vec<_>>().join(""))
        .collect();
    build(perms.len(), names, |a, b| {
        let (s, t) = (&perms[a], &perms[b]);
        let st: Vec<usize> = t.iter().map(|&i| s[i]).collect();
        index[&st]
    })
}

pub fn symmetric(n: usize) -> Result<FiniteGroup, GroupError> {
    if !(1..=5).contains(&n) {
        return Err(GroupError::ParameterOutOfRange(format!(
            "symmetric degree must be in 1..=5, got {n}"
        )));
    }
    Ok(permutation_group(lex_permutations(n)))
}

pub fn alternating(n: usize) -> Result<FiniteGroup, GroupError> {
    if !(1..=5).contains(&n) {
        return Err(GroupError::ParameterOutOfRange(format!(
            "alternating degree must be in 1..=5, got {n}"
        )));
    }
    Ok(permutation_group(
        lex_permutations(n).into_iter().filter(|p| is_even(p)).collect(),
    ))
}

pub fn quaternion8() -> FiniteGroup {
    // Index 2u + s encodes (-1)^s · unit[u] with units 1, i, j, k.
    const UNIT_PRODUCT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (1, 0), (2, 0), (3, 0)],
        [(1, 0), (0, 1), (3, 0), (2, 1)],
        [(2, 0), (3, 1), (0, 1), (1, 0)],
        [(3, 0), (2, 0), (1, 1), (0, 1)],
    ];
    let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    build(8, names, |a, b| {
        let (ua, sa) = (a / 2, a % 2);
        let (ub, sb) = (b / 2, b % 2);
        let (u, s) = UNIT_PRODUCT[ua][ub];
        2 * u + (sa + sb + s) % 2
    })
}

pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
    let (n1, n2) = (g.order(), h.order());
    let n = n1 * n2;
    if n > super::DEFAULT_PERMUTATION_CAP {
        return Err(GroupError::ParameterOutOfRange(format!(
            "direct product of order {n} exceeds {}",
            super::DEFAULT_PERMUTATION_CAP
        )));
    }
    let names = (0..n)
        .map(|x| format!("({},{})", g.name(x / n2), h.name(x % n2)))
        .collect();
    Ok(build(n, names, |a, b| {
        g.mul(a / n2, b / n2) * n2 + h.mul(a % n2, b % n2)
    }))
}

/// Parses `cyclic:N`, `dihedral:N`, `symmetric:N`, `alternating:N`,
/// `quaternion8`, `trivial`, or a `*`-separated direct product of these.
pub fn parse_catalog_spec(spec: &str) -> Result<FiniteGroup, GroupError> {
    let spec = spec.trim();
    if spec.contains('*') {
        let mut parts = spec.split('*');
        let mut acc = parse_catalog_spec(parts.next().unwrap_or(""))?;
        for part in parts {
            acc = direct_product(&acc, &parse_catalog_spec(part)?)?;
        }
        return Ok(acc);
    }
    let (name, param) = match spec.split_once(':') {
        Some((name, param)) => {
            let n: usize = param
                .trim()
                .parse()
                .map_err(|_| GroupError::Parse(format!("bad catalog parameter in {spec:?}")))?;
            (name.trim(), Some(n))
        }
        None => (spec, None),
    };
    match (name, param) {
        ("cyclic", Some(n)) => cyclic(n),
        ("dihedral", Some(n)) => dihedral(n),
        ("symmetric", Some(n)) => symmetric(n),
        ("alternating", Some(n)) => alternating(n),
        ("quaternion8", None) | ("quaternion", Some(8)) => Ok(quaternion8()),
        ("trivial", None) => Ok(FiniteGroup::trivial()),
        _ => Err(GroupError::Parse(format!("unknown catalog group {spec:?}"))),
    }
}

/// The named groups used for sweeps, with their catalog specs.
pub fn standard_catalog() -> Vec<(&'static str, FiniteGroup)> {
    [
        "trivial",
        "cyclic:2",
        "cyclic:3",
        "cyclic:4",
        "cyclic:2*cyclic:2",
        "cyclic:5",
        "cyclic:6",
        "symmetric:3",
        "cyclic:7",
        "cyclic:8",
        "cyclic:2*cyclic:4",
        "cyclic:2*cyclic:2*cyclic:2",
        "dihedral:4",
        "quaternion8",
        "cyclic:3*cyclic:3",
        "dihedral:5",
        "cyclic:12",
        "alternating:4",
        "dihedral:6",
        "cyclic:3*symmetric:3",
        "symmetric:4",
    ]
    .into_iter()
    .map(|s| (s, parse_catalog_spec(s).expect("catalog spec parses")))
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(cyclic(1).unwrap().order(), 1);
        assert_eq!(dihedral(4).unwrap().order(), 8);
        assert_eq!(symmetric(4).unwrap().order(), 24);
        assert_eq!(symmetric(5).unwrap().order(), 120);
        assert_eq!(alternating(4).unwrap().order(), 12);
        assert_eq!(alternating(5).unwrap().order(), 60);
        assert_eq!(quaternion8().order(), 8);
    }

    #[test]
    fn parameter_bounds() {
        assert!(matches!(cyclic(0), Err(GroupError::ParameterOutOfRange(_))));
        assert!(matches!(symmetric(6), Err(GroupError::ParameterOutOfRange(_))));
        assert!(matches!(alternating(0), Err(GroupError::ParameterOutOfRange(_))));
        assert!(matches!(dihedral(0), Err(GroupError::ParameterOutOfRange(_))));
    }

    #[test]
    fn quaternion_has_one_involution() {
        let q = quaternion8();
        let involutions: Vec<usize> = q.elements().filter(|&a| q.element_order(a) == 2).collect();
        assert_eq!(involutions, vec![1]);
        assert_eq!(q.order_census(), vec![1, 2, 4, 4, 4, 4, 4, 4]);
    }

    #[test]
    fn c2_times_c3_looks_like_c6() {
        let p = direct_product(&cyclic(2).unwrap(), &cyclic(3).unwrap()).unwrap();
        assert_eq!(p.order_census(), cyclic(6).unwrap().order_census());
    }

    #[test]
    fn dihedral_relations() {
        let d = dihedral(4).unwrap();
        let (r, s) = (1, 4);
        assert_eq!(d.element_order(r), 4);
        assert_eq!(d.element_order(s), 2);
        // s r s = r^{-1}
        assert_eq!(d.mul(d.mul(s, r), s), d.inv(r));
        assert_eq!(d.name(5), "sr");
        assert_eq!(d.mul(s, r), 5);
    }

    #[test]
    fn symmetric_ordering_is_lexicographic() {
        let s3 = symmetric(3).unwrap();
        let names: Vec<&str> = s3.names().iter().map(String::as_str).collect();
        assert_eq!(names, ["123", "132", "213", "231", "312", "321"]);
        assert_eq!(s3.identity(), 0);
        assert_eq!(s3.element_order(4), 3);
    }

    #[test]
    fn catalog_axioms_hold() {
        for (_, g) in standard_catalog() {
            let n = g.order();
            for a in 0..n {
                assert_eq!(g.inv(g.inv(a)), a);
                for b in 0..n {
                    for c in 0..n {
                        assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn parse_specs() {
        assert_eq!(parse_catalog_spec("cyclic:3").unwrap().order(), 3);
        assert_eq!(parse_catalog_spec("quaternion8").unwrap().order(), 8);
        assert_eq!(parse_catalog_spec("cyclic:2*symmetric:3").unwrap().order(), 12);
        assert!(matches!(parse_catalog_spec("nope:3"), Err(GroupError::Parse(_))));
        assert!(matches!(parse_catalog_spec("cyclic:x"), Err(GroupError::Parse(_))));
    }
}
