use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use groupdet_core::group::{
    all_subgroups_capped, from_permutations, parse_catalog_spec, subgroup_generated,
};
use groupdet_core::{FiniteGroup, Subgroup};

/// Largest group whose full subgroup lattice `--subgroup all` will enumerate.
pub const SWEEP_CAP: usize = 256;

pub struct LoadedGroup {
    pub group: Arc<FiniteGroup>,
    pub label: String,
}

pub fn load_group(
    catalog: Option<&str>,
    cayley: Option<&Path>,
    perms: Option<&str>,
    degree: Option<usize>,
) -> Result<LoadedGroup> {
    let (group, label) = match (catalog, cayley, perms) {
        (Some(spec), None, None) => (parse_catalog_spec(spec)?, spec.trim().to_string()),
        (None, Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            let g = FiniteGroup::from_json(&text)
                .with_context(|| format!("loading Cayley table from {}", path.display()))?;
            (g, path.display().to_string())
        }
        (None, None, Some(gens)) => {
            let Some(degree) = degree else {
                bail!("--perms needs --degree");
            };
            let gens: Vec<&str> = gens.split(';').map(str::trim).filter(|s| !s.is_empty()).collect();
            let g = from_permutations(&gens, degree)?;
            (g, format!("<{}> on {degree} points", gens.join(", ")))
        }
        (None, None, None) => bail!("no group given (use --catalog, --cayley or --perms)"),
        _ => bail!("give exactly one of --catalog, --cayley, --perms"),
    };
    Ok(LoadedGroup {
        group: Arc::new(group),
        label,
    })
}

pub enum SubgroupSpec {
    All,
    One(Subgroup),
}

/// Parses `all` or a single subgroup term.
pub fn parse_subgroup_spec(group: &FiniteGroup, spec: &str) -> Result<SubgroupSpec> {
    if spec.trim() == "all" {
        return Ok(SubgroupSpec::All);
    }
    Ok(SubgroupSpec::One(parse_subgroup(group, spec)?))
}

/// One subgroup term:
/// - a comma-separated list of generator indices or element names;
/// - `{e}` or `e` for the trivial subgroup, `G` for the whole group;
/// - `Cn` or `Cn-generated`: the subgroup generated by the first element of order `n`.
pub fn parse_subgroup(group: &FiniteGroup, spec: &str) -> Result<Subgroup> {
    let spec = spec.trim();
    let inner = spec
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .unwrap_or(spec)
        .trim();
    if inner.is_empty() || inner == "e" {
        return Ok(Subgroup::trivial(group));
    }
    if inner == "G" {
        return Ok(Subgroup::whole(group));
    }
    let cyclic = inner.strip_suffix("-generated").unwrap_or(inner);
    if let Some(n) = cyclic.strip_prefix('C').and_then(|n| n.parse::<usize>().ok()) {
        let Some(x) = group.elements().find(|&x| group.element_order(x) == n) else {
            bail!("no element of order {n} in a group of order {}", group.order());
        };
        return Ok(subgroup_generated(group, &[x]));
    }
    let gens = inner
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| resolve_element(group, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(subgroup_generated(group, &gens))
}

fn resolve_element(group: &FiniteGroup, token: &str) -> Result<usize> {
    if let Ok(i) = token.parse::<usize>() {
        if i >= group.order() {
            bail!("element index {i} out of range for a group of order {}", group.order());
        }
        return Ok(i);
    }
    match group.names().iter().position(|n| n == token) {
        Some(i) => Ok(i),
        None => bail!("unknown element {token:?}"),
    }
}

/// A chain `H,K` or `H;K`. Use `;` when a member itself lists several generators.
pub fn parse_chain(group: &FiniteGroup, spec: &str) -> Result<(Subgroup, Subgroup)> {
    let parts: Vec<&str> = if spec.contains(';') {
        spec.split(';').collect()
    } else {
        split_outside_braces(spec)
    };
    let [middle, bottom] = parts.as_slice() else {
        bail!("--chain expects two members H,K with K ≤ H, got {spec:?}");
    };
    Ok((parse_subgroup(group, middle)?, parse_subgroup(group, bottom)?))
}

fn split_outside_braces(spec: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, c) in spec.char_indices() {
        match c {
            '{' => depth += 1,
            '}' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                parts.push(&spec[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&spec[start..]);
    parts
}

pub fn all_subgroups(group: &FiniteGroup) -> Result<Vec<Subgroup>> {
    Ok(all_subgroups_capped(group, SWEEP_CAP)?)
}
