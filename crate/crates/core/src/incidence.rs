//! The class `[C] = sum a^{sigma tau} [X_sigma] (x) [X_tau]` of pairs of points
//! joined by a line.
//!
//! `a^{sigma tau}` counts lines meeting general translates of `X_{dual sigma}`
//! and `X_{dual tau}`, which is the two-point degree-one Gromov-Witten
//! invariant. By the divisor axiom it is the coefficient of `[X_tau]` in the
//! `q`-linear part of `H * [X_{dual sigma}]`, read off from the quantum
//! Chevalley formula of Fulton and Woodward.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::catalog::SpaceDescriptor;
use crate::chow::ChowElement;
use crate::error::{Error, Result};
use crate::poset::SchubertClass;
use crate::space::Space;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix {
    pub space: SpaceDescriptor,
    /// Nonzero entries, both `(sigma, tau)` and `(tau, sigma)` present.
    pub entries: BTreeMap<(SchubertClass, SchubertClass), BigUint>,
    /// Row `k` lists `(tau index, a^{k tau})`, by basis index.
    pub(crate) rows: Vec<Vec<(usize, BigInt)>>,
}

impl IncidenceMatrix {
    pub fn get(&self, sigma: SchubertClass, tau: SchubertClass) -> BigUint {
        self.entries.get(&(sigma, tau)).cloned().unwrap_or_default()
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.len()
    }

    /// Row of `sigma` by basis index.
    pub fn row(&self, k: usize) -> &[(usize, BigInt)] {
        &self.rows[k]
    }
}

/// Basis indices `k'` with multiplicity, such that the `q`-term of
/// `H * xi^{u_k}` is `q sum xi^{u_k'}` (opposite classes, codimension `l(u)`).
fn q_terms(space: &Space, k: usize) -> Vec<usize> {
    let rs = space.root_system();
    let alpha = space.alpha();
    let index = space.descriptor().index;
    let point = space.orbit_point(k);
    let target_len = (point.word.len() + 1).checked_sub(index);
    let Some(target_len) = target_len else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for beta in rs.positive_roots.iter().filter(|r| r.coroot[alpha] == 1) {
        // gamma = w beta for u = w omega, w = s_jk .. s_j1.
        let mut gamma = beta.coeffs.clone();
        for &j in &point.word {
            rs.reflect_root(&mut gamma, j);
        }
        let shift = rs.root_labels(&gamma);
        let v: Vec<i64> = point
            .labels
            .iter()
            .zip(&shift)
            .map(|(a, b)| a - b)
            .collect();
        let target = space
            .index_of_labels(&v)
            .expect("reflections preserve the orbit");
        if space.class_dim(target) == target_len {
            out.push(target);
        }
    }
    out
}

/// `Q(sigma)`: the `q`-linear part of `H * [X_sigma]`, as a Chow element.
pub fn quantum_chevalley_q_part(space: &Space, sigma: SchubertClass) -> Result<ChowElement> {
    let m = space.idx(sigma)?;
    let mut terms: BTreeMap<SchubertClass, BigInt> = BTreeMap::new();
    for t in q_terms(space, space.dual_index(m)) {
        *terms.entry(space.class(space.dual_index(t))).or_default() += 1;
    }
    ChowElement::from_terms(space, terms)
}

fn build(space: &Space) -> Result<IncidenceMatrix> {
    let n = space.len();
    let desc = space.descriptor();
    let expected_sum = desc.dim + desc.vmrt.dim_v + 1;
    let internal = |msg: String| Error::Internal(format!("{}: {msg}", space.name()));

    let mut rows: Vec<Vec<(usize, BigInt)>> = Vec::with_capacity(n);
    for s in 0..n {
        let q = quantum_chevalley_q_part(space, space.class(space.dual_index(s)))?;
        let row: Vec<(usize, BigInt)> = q
            .terms()
            .map(|(c, x)| (space.index_of(*c).expect("basis class"), x.clone()))
            .collect();
        for (t, x) in &row {
            if x.is_negative() {
                return Err(internal("negative incidence entry".into()));
            }
            if space.class_dim(s) + space.class_dim(*t) != expected_sum {
                return Err(internal(format!(
                    "entry ({}, {}) off the dimension {expected_sum} support",
                    space.class(s),
                    space.class(*t)
                )));
            }
        }
        rows.push(row);
    }

    let mut entries = BTreeMap::new();
    for (s, row) in rows.iter().enumerate() {
        for (t, x) in row {
            entries.insert((space.class(s), space.class(*t)), x.magnitude().clone());
        }
    }
    for ((a, b), x) in &entries {
        if entries.get(&(*b, *a)) != Some(x) {
            return Err(internal(format!("asymmetric entry at ({a}, {b})")));
        }
    }
    let xi_row = &rows[space.fundamental_index()];
    if xi_row.len() != 1 || !xi_row[0].1.is_one() {
        return Err(internal(
            "row of the fundamental class is not a single 1".into(),
        ));
    }
    Ok(IncidenceMatrix {
        space: desc.clone(),
        entries,
        rows,
    })
}

/// The full symmetric matrix `a^{sigma tau}`, memoised per space.
pub fn incidence_matrix(space: &Space) -> Result<&IncidenceMatrix> {
    if let Some(m) = space.incidence.get() {
        return Ok(m);
    }
    let built = build(space)?;
    Ok(space.incidence.get_or_init(|| built))
}

/// `[C_x]`, the cone swept by lines through a point: the unique class in the
/// row of the fundamental class. For projective space this is `[X]` itself.
pub fn cone_class(space: &Space) -> Result<SchubertClass> {
    let m = incidence_matrix(space)?;
    let (t, _) = m.rows[space.fundamental_index()][0];
    let c = space.class(t);
    if c.dim() != space.descriptor().vmrt.dim_v + 1 {
        return Err(Error::Internal(format!(
            "{}: cone class has dimension {}",
            space.name(),
            c.dim()
        )));
    }
    Ok(c)
}

/// Sum of all entries; a cheap fingerprint used in reports.
pub fn total_weight(m: &IncidenceMatrix) -> BigUint {
    m.entries.values().fold(BigUint::zero(), |acc, x| acc + x)
}
