//! The invariant suite behind `comin selftest`.

use std::panic::{self, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Instant;

use comin_core::chains::fibre_dimension;
use comin_core::root_data::build_root_system;
use comin_core::{
    all_spaces, char_bound, char_bound_with, cone_class, degree, delta_i, delta_i_naive, describe,
    describe_str, incidence_matrix, lr_coefficients, multiply, space, space_named, BoundOptions,
    ChowElement, SchubertClass, Space, SpaceSpec, TypeLabel,
};
use num_bigint::{BigInt, BigUint};

use crate::cache::{cached, Cache, CacheKey};

type Check = Result<String, String>;
type Group<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn small_spaces() -> Result<Vec<Arc<Space>>, String> {
    all_spaces(10)
        .iter()
        .map(|d| space(&SpaceSpec::Named(d.family)).map_err(|e| e.to_string()))
        .collect()
}

fn catalog() -> Check {
    let mut checked = 0;
    let systems = (1..=8)
        .map(|n| (TypeLabel::A, n))
        .chain((2..=8).flat_map(|n| [(TypeLabel::B, n), (TypeLabel::C, n)]))
        .chain((3..=8).map(|n| (TypeLabel::D, n)))
        .chain([(TypeLabel::E6, 6), (TypeLabel::E7, 7)]);
    for (label, n) in systems {
        let rs = build_root_system(label, n).map_err(|e| e.to_string())?;
        for node in 1..=n {
            let cominuscule = rs.highest_root_coefficient(node) == 1;
            let described = describe(&SpaceSpec::root(label, n, node));
            ensure(cominuscule == described.is_ok(), || {
                format!("{label}{n} node {node}: coefficient and catalog disagree")
            })?;
            if let Ok(d) = described {
                ensure(d.dim == rs.quotient_dim(&[node]), || {
                    format!("{label}{n}/{node}: dim")
                })?;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} marked diagrams"))
}

fn poset(spaces: &[Arc<Space>]) -> Check {
    for s in spaces {
        let mut betti = vec![0usize; s.dim() + 1];
        for &c in s.basis() {
            betti[c.dim()] += 1;
            ensure(s.dual(s.dual(c)) == c, || {
                format!("{}: dual is not an involution", s.name())
            })?;
        }
        let rev: Vec<usize> = betti.iter().rev().copied().collect();
        ensure(betti == rev, || {
            format!("{}: Betti numbers not palindromic", s.name())
        })?;
    }
    Ok(format!("{} spaces", spaces.len()))
}

fn degrees(spaces: &[Arc<Space>]) -> Check {
    let mut classes = 0;
    for s in spaces {
        for &c in s.basis() {
            let chevalley = degree(s, c).map_err(|e| e.to_string())?;
            ensure(
                chevalley == s.poset().weighted_linear_extensions_count(c),
                || format!("{} {c}: degree mismatch", s.name()),
            )?;
            classes += 1;
        }
    }
    Ok(format!("{classes} classes"))
}

fn basis_elements(s: &Space) -> Vec<ChowElement> {
    s.basis()
        .iter()
        .map(|&c| ChowElement::basis(s, c).expect("basis class"))
        .collect()
}

/// Associativity and commutativity on every basis triple.
fn ring_on(s: &Space) -> Result<usize, String> {
    let e = basis_elements(s);
    let n = e.len();
    let mut count = 0;
    for t in 0..n * n * n {
        let (a, b, c) = (&e[t / (n * n)], &e[(t / n) % n], &e[t % n]);
        let m = |x: &ChowElement, y: &ChowElement| multiply(s, x, y).map_err(|e| e.to_string());
        let ab = m(a, b)?;
        ensure(ab == m(b, a)?, || format!("{}: not commutative", s.name()))?;
        ensure(m(&ab, c)? == m(a, &m(b, c)?)?, || {
            format!("{}: not associative", s.name())
        })?;
        count += 1;
    }
    Ok(count)
}

fn ring(spaces: &[Arc<Space>]) -> Check {
    let mut triples = 0;
    for s in spaces {
        triples += ring_on(s)?;
    }
    Ok(format!("{triples} triples"))
}

fn duality(spaces: &[Arc<Space>]) -> Check {
    for s in spaces {
        for &a in s.basis() {
            for &b in s.basis().iter().filter(|b| a.dim() + b.dim() == s.dim()) {
                let pairing = lr_coefficients(s, a, b)
                    .map_err(|e| e.to_string())?
                    .get(&SchubertClass::EMPTY)
                    .cloned()
                    .unwrap_or_default();
                let want = BigUint::from(u32::from(b == s.dual(a)));
                ensure(pairing == want, || {
                    format!("{}: pairing of {a} and {b}", s.name())
                })?;
            }
        }
    }
    Ok(format!("{} spaces", spaces.len()))
}

fn incidence(spaces: &[Arc<Space>]) -> Check {
    let mut entries = 0;
    for s in spaces {
        let m = incidence_matrix(s).map_err(|e| e.to_string())?;
        let c = cone_class(s).map_err(|e| e.to_string())?;
        ensure(c.dim() == s.descriptor().vmrt.dim_v + 1, || {
            format!("{}: cone", s.name())
        })?;
        entries += m.nonzero_count();
    }
    Ok(format!("{entries} nonzero entries"))
}

fn chains(spaces: &[Arc<Space>]) -> Check {
    let mut values = 0;
    for s in spaces {
        let r = s.descriptor().r;
        for i in 1..=s.dim().max(r) {
            let d = fibre_dimension(s, i);
            if d < 0 {
                continue;
            }
            let fast = delta_i(s, i).map_err(|e| e.to_string())?;
            if s.dim() <= 6 && d <= 12 {
                let slow = delta_i_naive(s, i).map_err(|e| e.to_string())?;
                ensure(fast == slow, || {
                    format!("{} i={i}: transfer {fast} vs naive {slow}", s.name())
                })?;
            }
            if i >= r {
                ensure(fast >= BigUint::from(1u32), || {
                    format!("{} i={i}: delta is 0", s.name())
                })?;
            }
            values += 1;
        }
    }
    Ok(format!("{values} chain numbers"))
}

fn bounds() -> Check {
    let g = char_bound(&describe_str("Gr(2,4)").map_err(|e| e.to_string())?, 1)
        .map_err(|e| e.to_string())?;
    ensure(
        g.components.smoothness_term == BigUint::from(2u32)
            && g.components.index_term == BigUint::from(4u32),
        || "Gr(2,4) components".into(),
    )?;
    let opts = BoundOptions {
        skip_delta: true,
        chain_length: None,
    };
    for name in ["Gr(2,4)", "Q(5)", "Q(6)", "LG(2)", "OG(4)", "E6", "E7"] {
        let s = describe_str(name).map_err(|e| e.to_string())?;
        let mut prev = BigUint::default();
        for d in 1..=5 {
            let b = char_bound_with(&s, d, opts)
                .map_err(|e| e.to_string())?
                .overall_bound();
            ensure(b >= prev, || format!("{name}: bound drops at d={d}"))?;
            prev = b;
        }
    }
    Ok("monotone for d = 1..5".into())
}

fn e6() -> Check {
    let s = space_named("E6").map_err(|e| e.to_string())?;
    ensure(
        s.degrees()[s.fundamental_index()] == BigUint::from(78u32),
        || "degree".into(),
    )?;
    let triples = ring_on(&s)?;
    let c = ChowElement::basis(&s, cone_class(&s).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let cc = multiply(&s, &c, &c).map_err(|e| e.to_string())?;
    let mut want = BigInt::default();
    for (r, x) in cc.terms() {
        want += x * BigInt::from(degree(&s, *r).map_err(|e| e.to_string())?);
    }
    let two = delta_i(&s, 2).map_err(|e| e.to_string())?;
    ensure(BigInt::from(two) == want, || {
        "delta(2) differs from deg(C_x^2)".into()
    })?;
    let report = char_bound(s.descriptor(), 1).map_err(|e| e.to_string())?;
    ensure(!report.delta_pending(), || "bound report incomplete".into())?;
    Ok(format!("{triples} triples, full bound report at d = 1"))
}

fn e7() -> Check {
    let s = space_named("E7").map_err(|e| e.to_string())?;
    let deg = &s.degrees()[s.fundamental_index()];
    ensure(*deg == BigUint::from(13110u32), || format!("degree {deg}"))?;
    ensure(
        s.poset().linear_extensions_count(s.fundamental_class()) == *deg,
        || "linear extensions".into(),
    )?;
    Ok("degree 13110".into())
}

fn cache_roundtrip(cache: Option<&Cache>) -> Check {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let local = Cache::new(tmp.path()).map_err(|e| e.to_string())?;
    let key = CacheKey::new("Gr(2,4)", "selftest", &[]);
    local
        .put(&key, &"2".to_string())
        .map_err(|e| e.to_string())?;
    let path = local.path_for(&key);
    let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
    std::fs::write(&path, text.replace("\"2\"", "\"5\"")).map_err(|e| e.to_string())?;
    ensure(local.get::<String>(&key).is_err(), || {
        "corruption not detected".into()
    })?;
    let v: Result<String, String> = cached(Some(&local), &key, || Ok("2".into()));
    ensure(v.as_deref() == Ok("2"), || "recompute".into())?;
    ensure(local.get::<String>(&key) == Ok(Some("2".into())), || {
        "rewrite".into()
    })?;
    Ok(match cache {
        Some(c) => format!("checksums verified; cache at {}", c.dir().display()),
        None => "checksums verified; no persistent cache configured".into(),
    })
}

/// Runs every group and prints one line per group. Returns true if all pass.
pub fn run(include_e7: bool, cache: Option<&Cache>) -> bool {
    let spaces = match small_spaces() {
        Ok(s) => s,
        Err(e) => {
            println!("FAIL spaces: {e}");
            return false;
        }
    };
    let mut groups: Vec<Group<'_>> = vec![
        ("catalog", Box::new(catalog)),
        ("poset", Box::new(|| poset(&spaces))),
        ("degrees", Box::new(|| degrees(&spaces))),
        ("ring", Box::new(|| ring(&spaces))),
        ("duality", Box::new(|| duality(&spaces))),
        ("incidence", Box::new(|| incidence(&spaces))),
        ("chains", Box::new(|| chains(&spaces))),
        ("bounds", Box::new(bounds)),
        ("e6", Box::new(e6)),
        ("cache", Box::new(move || cache_roundtrip(cache))),
    ];
    if include_e7 {
        groups.push(("e7", Box::new(e7)));
    }
    let mut all = true;
    for (name, check) in groups {
        let t = Instant::now();
        let outcome =
            panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {name:<10} {detail}"),
            Err(msg) => {
                all = false;
                println!("FAIL {name:<10} {msg}");
            }
        }
        eprintln!("  {name}: {secs:.2} s");
    }
    all
}
