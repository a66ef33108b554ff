//! Chain intersection numbers `delta_X(i)`.
//!
//! `[C^i] = sum a^{rho_0..rho_i} [X_rho_0] (x) .. (x) [X_rho_i]` is built by
//! appending one incidence factor at a time and contracting the junction with
//! the structure constants:
//!
//! ```text
//! b^{rho_0..rho_{i+1}} = sum_{tau, sigma} t^{rho_0..rho_{i-1} tau} mu_{tau sigma}^{rho_i} a^{sigma rho_{i+1}}
//! ```
//!
//! and `delta_X(i) = sum N(d_i; dim rho_1, ..) a^{xi rho_1 .. rho_{i-1} xi} prod deg X_rho_j`.
//!
//! The transfer evaluator never materialises the tensor. It keeps one integer
//! per open slot `tau`: the partial sum with `rho_0 = xi`, weighted by the
//! degrees of the closed interior slots and by the partial multinomial
//! `B! / prod b_j!`, where `B` is the total interior dimension so far. `B` is
//! forced by the dimension count (`B = j (dim V + 1) - dim tau` at level `j`),
//! so closing a slot of dimension `b` multiplies by `binom(B + b, b)`, and
//! anything with `B > d_i` can be dropped.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::chow::lr_indexed;
use crate::error::{Error, Result};
use crate::incidence::{incidence_matrix, IncidenceMatrix};
use crate::poset::SchubertClass;
use crate::space::Space;

/// `d!/prod(parts!)`.
pub fn multinomial(d: usize, parts: &[usize]) -> Result<BigUint> {
    let sum: usize = parts.iter().sum();
    if sum != d {
        return Err(Error::SumMismatch { sum, expected: d });
    }
    let mut out = BigUint::one();
    let mut running = 0usize;
    for &p in parts {
        for k in 1..=p {
            out *= running + k;
            out /= k;
        }
        running += p;
    }
    Ok(out)
}

/// `d_i = i (dim V + 1) - dim X`, the fibre dimension of `i`-chains over `X x X`.
pub fn fibre_dimension(space: &Space, i: usize) -> i64 {
    let d = space.descriptor();
    i as i64 * (d.vmrt.dim_v as i64 + 1) - d.dim as i64
}

fn check_level(space: &Space, i: usize) -> Result<usize> {
    if i == 0 {
        return Err(Error::ZeroChainLength);
    }
    let d = fibre_dimension(space, i);
    if d < 0 {
        let desc = space.descriptor();
        return Err(Error::ChainsNotDominant {
            i,
            vmrt_dim_plus_one: desc.vmrt.dim_v + 1,
            dim: desc.dim,
            d,
        });
    }
    Ok(d as usize)
}

/// The sparse coefficients of `[C^level]`, or of its slice `rho_0 = xi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainTensor {
    pub level: usize,
    space: String,
    pub coefficients: BTreeMap<Vec<SchubertClass>, BigInt>,
}

impl ChainTensor {
    /// The level-one tensor, equal to the incidence matrix.
    pub fn from_incidence(a: &IncidenceMatrix) -> Self {
        ChainTensor {
            level: 1,
            space: a.space.name(),
            coefficients: a
                .entries
                .iter()
                .map(|((s, t), x)| (vec![*s, *t], BigInt::from(x.clone())))
                .collect(),
        }
    }

    /// The level-one tensor restricted to `rho_0 = [X]`.
    pub fn from_fundamental_row(space: &Space, a: &IncidenceMatrix) -> Self {
        let xi = space.fundamental_class();
        let mut t = Self::from_incidence(a);
        t.coefficients.retain(|k, _| k[0] == xi);
        t
    }

    pub fn space_name(&self) -> &str {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn get(&self, tuple: &[SchubertClass]) -> BigInt {
        self.coefficients.get(tuple).cloned().unwrap_or_default()
    }

    /// Every tuple has total dimension `level (dim V + 1) + dim X`.
    pub fn check_dimensions(&self, space: &Space) -> Result<()> {
        let d = space.descriptor();
        let want = self.level * (d.vmrt.dim_v + 1) + d.dim;
        for tuple in self.coefficients.keys() {
            let got: usize = tuple.iter().map(|c| c.dim()).sum();
            if got != want || tuple.len() != self.level + 1 {
                return Err(Error::Internal(format!(
                    "{}: chain tuple of dimension {got}, expected {want}",
                    space.name()
                )));
            }
        }
        Ok(())
    }
}

/// Appends one incidence factor to `t`.
pub fn extend_chain(space: &Space, t: &ChainTensor, a: &IncidenceMatrix) -> Result<ChainTensor> {
    for other in [t.space.as_str(), a.space.name().as_str()] {
        if other != space.name() {
            return Err(Error::MixedSpaces {
                left: other.to_string(),
                right: space.name(),
            });
        }
    }
    let mut out: BTreeMap<Vec<SchubertClass>, BigInt> = BTreeMap::new();
    for (tuple, x) in &t.coefficients {
        let tau = space.idx(*tuple.last().expect("tuples are non-empty"))?;
        for (sigma, row) in a.rows.iter().enumerate() {
            if row.is_empty() {
                continue;
            }
            for (rho_i, mu) in lr_indexed(space, tau, sigma)?.iter() {
                let base = x * mu;
                for (rho_next, entry) in row {
                    let mut key = tuple[..tuple.len() - 1].to_vec();
                    key.push(space.class(*rho_i));
                    key.push(space.class(*rho_next));
                    *out.entry(key).or_default() += &base * entry;
                }
            }
        }
    }
    out.retain(|_, x| !x.is_zero());
    let next = ChainTensor {
        level: t.level + 1,
        space: t.space.clone(),
        coefficients: out,
    };
    next.check_dimensions(space)?;
    Ok(next)
}

/// `delta_X(i)` by materialising the `rho_0 = xi` slice of `[C^i]`.
pub fn delta_i_naive(space: &Space, i: usize) -> Result<BigUint> {
    let d = check_level(space, i)?;
    let a = incidence_matrix(space)?;
    let mut t = ChainTensor::from_fundamental_row(space, a);
    for _ in 1..i {
        t = extend_chain(space, &t, a)?;
    }
    let xi = space.fundamental_class();
    let degrees = space.degrees();
    let mut total = BigInt::zero();
    for (tuple, x) in &t.coefficients {
        if *tuple.last().unwrap() != xi {
            continue;
        }
        let interior = &tuple[1..tuple.len() - 1];
        let dims: Vec<usize> = interior.iter().map(|c| c.dim()).collect();
        let mut term = x * BigInt::from(multinomial(d, &dims)?);
        for c in interior {
            term *= BigInt::from(degrees[space.idx(*c)?].clone());
        }
        total += term;
    }
    to_natural(space, total)
}

fn to_natural(space: &Space, x: BigInt) -> Result<BigUint> {
    if x.is_negative() {
        return Err(Error::Internal(format!(
            "{}: negative chain number",
            space.name()
        )));
    }
    Ok(x.magnitude().clone())
}

/// Sizes that govern the cost of the transfer evaluator, known before running it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferCostModel {
    pub space: String,
    pub i: usize,
    pub truncation_degree: usize,
    pub basis_size: usize,
    pub incidence_nonzeros: usize,
    /// Upper bound on structure-constant lookups: `(i - 1) * |basis| * |rows|`.
    pub lr_lookups_bound: u64,
}

impl fmt::Display for TransferCostModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "transfer cost model for {} at i = {}: steps {}, basis {}, incidence nonzeros {}, \
             truncation degree d_i = {}, at most {} structure-constant lookups",
            self.space,
            self.i,
            self.i.saturating_sub(1),
            self.basis_size,
            self.incidence_nonzeros,
            self.truncation_degree,
            self.lr_lookups_bound
        )
    }
}

pub fn transfer_cost_model(space: &Space, i: usize) -> Result<TransferCostModel> {
    let d = check_level(space, i)?;
    let a = incidence_matrix(space)?;
    let rows = a.rows.iter().filter(|r| !r.is_empty()).count() as u64;
    Ok(TransferCostModel {
        space: space.name(),
        i,
        truncation_degree: d,
        basis_size: space.len(),
        incidence_nonzeros: a.nonzero_count(),
        lr_lookups_bound: (i as u64).saturating_sub(1) * space.len() as u64 * rows,
    })
}

/// State of the transfer evaluator after a level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferLevel {
    pub level: usize,
    /// Open slot index to weighted partial sum.
    pub vector: BTreeMap<usize, BigInt>,
    /// Interior dimension `B` carried by each open slot.
    pub interior_dims: BTreeMap<usize, usize>,
    /// Entries dropped because their interior dimension exceeded the truncation degree.
    pub pruned: usize,
}

struct Pascal {
    rows: Vec<Vec<BigInt>>,
}

impl Pascal {
    fn new(n: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
        for m in 0..=n {
            let mut row = vec![BigInt::one(); m + 1];
            for k in 1..m {
                row[k] = &rows[m - 1][k - 1] + &rows[m - 1][k];
            }
            rows.push(row);
        }
        Pascal { rows }
    }

    fn binom(&self, n: usize, k: usize) -> &BigInt {
        &self.rows[n][k]
    }
}

/// Runs the transfer evaluator for `delta_X(i)` and returns the state after
/// every level `1..=levels` (truncating at `d_i`), without reading off the answer.
pub fn transfer_levels(space: &Space, i: usize, levels: usize) -> Result<Vec<TransferLevel>> {
    let d = check_level(space, i)?;
    let a = incidence_matrix(space)?;
    let step = space.descriptor().vmrt.dim_v + 1;
    let pascal = Pascal::new(d);
    let degrees: Vec<BigInt> = space
        .degrees()
        .iter()
        .map(|x| BigInt::from(x.clone()))
        .collect();
    let sigmas: Vec<usize> = (0..space.len())
        .filter(|&s| !a.rows[s].is_empty())
        .collect();
    let interior = |level: usize, tau: usize| -> Option<usize> {
        (level * step).checked_sub(space.class_dim(tau))
    };

    let mut out = Vec::new();
    let mut vector: BTreeMap<usize, BigInt> = a.rows[space.fundamental_index()]
        .iter()
        .map(|(t, x)| (*t, x.clone()))
        .collect();
    let mut pruned = 0;
    vector.retain(|&t, _| match interior(1, t) {
        Some(b) if b <= d => true,
        _ => {
            pruned += 1;
            false
        }
    });
    out.push(summarise(1, &vector, pruned, &interior));

    for level in 2..=levels {
        let entries: Vec<(usize, BigInt)> = vector.into_iter().collect();
        let partials: Vec<Result<BTreeMap<usize, BigInt>>> = entries
            .par_iter()
            .map(|(tau, x)| {
                let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
                let b = interior(level - 1, *tau).expect("kept entries have B >= 0");
                for &sigma in &sigmas {
                    for (rho, mu) in lr_indexed(space, *tau, sigma)?.iter() {
                        let closed = space.class_dim(*rho);
                        if b + closed > d {
                            continue;
                        }
                        let weight = x * mu * &degrees[*rho] * pascal.binom(b + closed, closed);
                        for (next, entry) in &a.rows[sigma] {
                            *acc.entry(*next).or_default() += &weight * entry;
                        }
                    }
                }
                Ok(acc)
            })
            .collect();
        let mut next: BTreeMap<usize, BigInt> = BTreeMap::new();
        for partial in partials {
            for (k, x) in partial? {
                *next.entry(k).or_default() += x;
            }
        }
        pruned = 0;
        next.retain(|&t, x| {
            if x.is_zero() {
                return false;
            }
            match interior(level, t) {
                Some(b) if b <= d => true,
                _ => {
                    pruned += 1;
                    false
                }
            }
        });
        vector = next;
        out.push(summarise(level, &vector, pruned, &interior));
    }
    Ok(out)
}

fn summarise(
    level: usize,
    vector: &BTreeMap<usize, BigInt>,
    pruned: usize,
    interior: &impl Fn(usize, usize) -> Option<usize>,
) -> TransferLevel {
    TransferLevel {
        level,
        vector: vector.clone(),
        interior_dims: vector
            .keys()
            .map(|&t| (t, interior(level, t).expect("kept entries have B >= 0")))
            .collect(),
        pruned,
    }
}

/// `delta_X(i)` by the transfer evaluator.
pub fn delta_i(space: &Space, i: usize) -> Result<BigUint> {
    check_level(space, i)?;
    let levels = transfer_levels(space, i, i)?;
    let last = levels.last().expect("at least one level");
    let x = last
        .vector
        .get(&space.fundamental_index())
        .cloned()
        .unwrap_or_default();
    to_natural(space, x)
}
