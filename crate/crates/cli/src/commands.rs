use std::fmt::Write as _;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use groupdet_core::frobenius::{
    classical_factorization_check, degree_bound_check, flatten_det_check,
    generalized_factorization_check, generalized_sweep, quotient_factorization_check,
    random_points, regular_rep_determinant_check, sample_matrix, theta_at, theta_symbolic,
    tower_factorization_check, CheckConfig,
};
use groupdet_core::group::{is_normal, left_transversal};
use groupdet_core::regrep::{normal_form_check, tower_check};
use groupdet_core::{irreducible_decomposition, CheckMode, FiniteGroup, VerificationReport};
use serde_json::{json, Value};

use crate::spec::{self, LoadedGroup, SubgroupSpec};
use crate::{Command, Format, LemmaArg, Options};

/// Largest order for which `theta` expands symbolically unless told otherwise.
const THETA_SYMBOLIC_DEFAULT: usize = 12;

pub struct Output {
    pub text: String,
    pub passed: bool,
}

pub fn run(command: &Command, opts: &Options) -> Result<Output> {
    if opts.points == 0 {
        bail!("--points must be at least 1");
    }
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        bail!("--tol must be positive");
    }
    if opts.m == 0 {
        bail!("--m must be at least 1");
    }
    let loaded = spec::load_group(
        opts.catalog.as_deref(),
        opts.cayley.as_deref(),
        opts.perms.as_deref(),
        opts.degree,
    )?;
    let (value, text, passed) = match command {
        Command::Group => group_info(&loaded, opts)?,
        Command::Theta => theta(&loaded, opts)?,
        Command::Irreps => irreps(&loaded, opts)?,
        Command::Verify => reports("verify", &loaded, verify(&loaded, opts)?, opts),
        Command::Lemma { which } => reports("lemma", &loaded, vec![lemma(*which, &loaded, opts)?], opts),
        Command::Bound => bound(&loaded, opts)?,
    };
    let text = match opts.format {
        Format::Text => text,
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&value)?),
    };
    Ok(Output { text, passed })
}

type Rendered = (Value, String, bool);

fn check_config(opts: &Options, default_mode: CheckMode) -> CheckConfig {
    CheckConfig {
        mode: opts.mode.map(CheckMode::from).unwrap_or(default_mode),
        n_points: opts.points,
        tolerance: opts.tol,
        seed: opts.seed,
        irrep_seed: opts.irrep_seed.unwrap_or(opts.seed),
        ..CheckConfig::default()
    }
}

fn group_info(loaded: &LoadedGroup, opts: &Options) -> Result<Rendered> {
    let g = &loaded.group;
    let subgroups = match opts.subgroup.as_deref() {
        None => Vec::new(),
        Some(s) => match spec::parse_subgroup_spec(g, s)? {
            SubgroupSpec::All => spec::all_subgroups(g)?,
            SubgroupSpec::One(h) => vec![h],
        },
    };
    let orders: Vec<usize> = g.elements().map(|x| g.element_order(x)).collect();
    let center = g.center().len();
    let classes = g.conjugacy_classes().len();
    let rows: Vec<Value> = subgroups
        .iter()
        .map(|h| {
            json!({
                "elements": h.elements().iter().map(|&x| g.name(x)).collect::<Vec<_>>(),
                "order": h.order(),
                "index": g.order() / h.order(),
                "normal": is_normal(g, h),
            })
        })
        .collect();

    let mut text = String::new();
    writeln!(text, "group {}", loaded.label)?;
    writeln!(
        text,
        "order {}, {}",
        g.order(),
        if g.is_abelian() { "abelian" } else { "non-abelian" }
    )?;
    writeln!(text, "elements: {}", g.names().join(", "))?;
    writeln!(text, "element orders: {orders:?}")?;
    writeln!(text, "center size {center}, {classes} conjugacy classes")?;
    for h in &subgroups {
        writeln!(
            text,
            "subgroup {} order {} index {} {}",
            h.describe(g),
            h.order(),
            g.order() / h.order(),
            if is_normal(g, h) { "normal" } else { "not normal" }
        )?;
    }
    let value = json!({
        "command": "group",
        "group": loaded.label,
        "order": g.order(),
        "abelian": g.is_abelian(),
        "elements": g.names(),
        "element_orders": orders,
        "center_size": center,
        "n_classes": classes,
        "subgroups": rows,
    });
    Ok((value, text, true))
}

fn theta(loaded: &LoadedGroup, opts: &Options) -> Result<Rendered> {
    let g = &loaded.group;
    let default_mode = if g.order() <= THETA_SYMBOLIC_DEFAULT {
        CheckMode::Symbolic
    } else {
        CheckMode::Pit
    };
    let mode = opts.mode.map(CheckMode::from).unwrap_or(default_mode);
    match mode {
        CheckMode::Symbolic => {
            let det = theta_symbolic(g)?;
            let poly = det.polynomial().context("group determinant was not expanded")?;
            let rendered = poly.display_with(g.names()).to_string();
            let text = format!(
                "theta of {} (order {}, {} terms)\n{rendered}\n",
                loaded.label,
                g.order(),
                poly.num_terms()
            );
            let value = json!({
                "command": "theta",
                "group": loaded.label,
                "order": g.order(),
                "mode": "symbolic",
                "n_terms": poly.num_terms(),
                "polynomial": rendered,
            });
            Ok((value, text, true))
        }
        CheckMode::Pit => {
            let points = random_points(g.order(), opts.points, opts.seed);
            let values: Vec<_> = points.iter().map(|p| theta_at(g, &p.values)).collect();
            let mut text = format!(
                "theta of {} (order {}) at {} points, seed {}\n",
                loaded.label,
                g.order(),
                points.len(),
                opts.seed
            );
            for (i, v) in values.iter().enumerate() {
                writeln!(text, "point {i}: {:.6e} {:+.6e}i", v.re, v.im)?;
            }
            let evaluations: Vec<Value> = values
                .iter()
                .enumerate()
                .map(|(i, v)| json!({ "index": i, "value": [v.re, v.im] }))
                .collect();
            let value = json!({
                "command": "theta",
                "group": loaded.label,
                "order": g.order(),
                "mode": "pit",
                "seed": opts.seed,
                "evaluations": evaluations,
            });
            Ok((value, text, true))
        }
    }
}

fn irreps(loaded: &LoadedGroup, opts: &Options) -> Result<Rendered> {
    let g = &loaded.group;
    let seed = opts.irrep_seed.unwrap_or(opts.seed);
    let set = irreducible_decomposition(g, seed)?;
    if let Some(path) = &opts.export {
        std::fs::write(path, set.to_json()).with_context(|| format!("writing {}", path.display()))?;
    }
    let degrees = set.degrees();
    let sum = set.sum_of_squared_degrees();
    let complete = set.is_complete();
    let text = format!(
        "irreducible representations of {} (seed {seed})\ndegrees {degrees:?}\nsum of squares {sum} {} order {}\n",
        loaded.label,
        if complete { "=" } else { "!=" },
        g.order()
    );
    let mut value = json!({
        "command": "irreps",
        "group": loaded.label,
        "order": g.order(),
        "seed": seed,
        "degrees": degrees,
        "sum_of_squares": sum,
        "complete": complete,
    });
    if let Some(path) = &opts.export {
        value["export"] = json!(path.display().to_string());
    }
    Ok((value, text, complete))
}

fn verify(loaded: &LoadedGroup, opts: &Options) -> Result<Vec<VerificationReport>> {
    let g = &loaded.group;
    let cfg = check_config(opts, CheckMode::Pit);
    Ok(match opts.subgroup.as_deref() {
        None => {
            let set = irreducible_decomposition(g, cfg.irrep_seed)?;
            vec![classical_factorization_check(g, &set, &loaded.label, &cfg)?]
        }
        Some(s) => match spec::parse_subgroup_spec(g, s)? {
            SubgroupSpec::All => generalized_sweep(g, &loaded.label, &cfg)?,
            SubgroupSpec::One(h) => vec![generalized_factorization_check(g, &h, &loaded.label, &cfg)?],
        },
    })
}

fn required_subgroup(g: &FiniteGroup, opts: &Options) -> Result<groupdet_core::Subgroup> {
    let Some(s) = opts.subgroup.as_deref() else {
        bail!("this check needs --subgroup");
    };
    match spec::parse_subgroup_spec(g, s)? {
        SubgroupSpec::All => bail!("this check takes a single subgroup, not `all`"),
        SubgroupSpec::One(h) => Ok(h),
    }
}

fn required_chain(g: &FiniteGroup, opts: &Options) -> Result<(groupdet_core::Subgroup, groupdet_core::Subgroup)> {
    let Some(s) = opts.chain.as_deref() else {
        bail!("this check needs --chain H,K");
    };
    spec::parse_chain(g, s)
}

fn lemma(which: LemmaArg, loaded: &LoadedGroup, opts: &Options) -> Result<VerificationReport> {
    let g: &Arc<FiniteGroup> = &loaded.group;
    let label = loaded.label.as_str();
    let cfg = check_config(opts, CheckMode::Pit);
    let a = || sample_matrix(g, opts.m, opts.seed);
    Ok(match which {
        LemmaArg::Regnormal => {
            let h = required_subgroup(g, opts)?;
            normal_form_check(g, &left_transversal(g, &h), &a(), label)?
        }
        LemmaArg::Tower => {
            let (middle, bottom) = required_chain(g, opts)?;
            tower_check(g, &middle, &bottom, &a(), label)?
        }
        LemmaArg::FlattenDet => flatten_det_check(&a(), label)?,
        LemmaArg::Regdet => regular_rep_determinant_check(g, label)?,
        LemmaArg::Quotient => {
            let h = required_subgroup(g, opts)?;
            quotient_factorization_check(g, &h, &a(), None, label, &cfg)?
        }
        LemmaArg::TowerFactor => {
            let (middle, bottom) = required_chain(g, opts)?;
            tower_factorization_check(g, &middle, &bottom, &a(), label, &cfg)?
        }
    })
}

fn reports(command: &str, loaded: &LoadedGroup, reports: Vec<VerificationReport>, opts: &Options) -> Rendered {
    let reports: Vec<VerificationReport> = if opts.timings {
        reports
    } else {
        reports.into_iter().map(VerificationReport::without_timing).collect()
    };
    let passed = reports.iter().all(|r| r.passed);
    let mut text = String::new();
    for r in &reports {
        let _ = write!(text, "{r}");
        if let Some(ms) = r.elapsed_ms {
            let _ = write!(text, " ({ms} ms)");
        }
        text.push('\n');
    }
    let n_passed = reports.iter().filter(|r| r.passed).count();
    let _ = writeln!(text, "{n_passed} of {} checks passed", reports.len());
    let value = json!({
        "command": command,
        "group": loaded.label,
        "passed": passed,
        "reports": reports,
    });
    (value, text, passed)
}

fn bound(loaded: &LoadedGroup, opts: &Options) -> Result<Rendered> {
    let g = &loaded.group;
    let report = degree_bound_check(g, &loaded.label, opts.irrep_seed.unwrap_or(opts.seed))?;
    let mut text = format!("degree bound on {} (max degree {})\n", loaded.label, report.max_degree);
    writeln!(text, "order index  max deg  bound  holds  tight  subgroup")?;
    for row in &report.rows {
        writeln!(
            text,
            "{:>5} {:>5} {:>8} {:>6} {:>6} {:>6}  {}",
            row.order,
            row.index,
            row.max_subgroup_degree,
            row.bound,
            if row.holds { "yes" } else { "NO" },
            if row.tight { "yes" } else { "no" },
            row.subgroup
        )?;
    }
    writeln!(text, "{}", if report.passed { "PASS" } else { "FAIL" })?;
    let mut value = serde_json::to_value(&report)?;
    value["command"] = json!("bound");
    Ok((value, text, report.passed))
}
