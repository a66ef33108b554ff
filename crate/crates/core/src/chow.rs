//! Exact Chow-ring arithmetic over the Schubert basis.
//!
//! Structure constants come from torus-fixed-point localization, specialised at
//! the regular coweight `rho^vee` so every root becomes its height. For the
//! opposite class `xi^v` of codimension `l(v)`, the restrictions `xi^v|_w` are
//! integers satisfying the equivariant Chevalley recursion
//!
//! ```text
//! (D(w) - D(v)) xi^v|_w = sum_{v -> v'} c(v, v') xi^{v'}|_w,   D(u) = ht(omega - u),
//! ```
//!
//! with `xi^v|_v` the product of the heights of the inversions of `v`. A product
//! `xi^a xi^b` is then recovered by a triangular solve over the fixed points;
//! the coefficients in the top codimension are the Littlewood-Richardson
//! numbers, the lower ones are the specialised equivariant corrections and are
//! discarded. Every division is checked to be exact.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poset::SchubertClass;
use crate::root_data::RootSystem;
use crate::space::{Expansion, Space};

/// `xi[v][w] = xi^{u_v}|_w`, zero unless the ideal of `v` is contained in that of `w`.
pub(crate) struct Localization {
    xi: Vec<Vec<BigInt>>,
}

impl Localization {
    fn build(space: &Space) -> Result<Self> {
        let n = space.len();
        let rs = space.root_system();
        let depth: Vec<i64> = (0..n).map(|k| space.orbit_point(k).depth).collect();
        let mut xi: Vec<Vec<BigInt>> = vec![Vec::new(); n];
        for k in (0..n).rev() {
            let mut row = vec![BigInt::zero(); n];
            let labels = &space.orbit_point(k).labels;
            let diag: BigInt = rs
                .positive_roots
                .iter()
                .filter(|r| RootSystem::coroot_pairing(labels, r) < 0)
                .map(|r| BigInt::from(r.height()))
                .product();
            row[k] = diag;
            let ck = space.class(k);
            for w in k + 1..n {
                let cw = space.class(w);
                if !ck.is_subset(cw) || ck == cw {
                    continue;
                }
                let mut num = BigInt::zero();
                for &(up, c) in space.chevalley_up(k) {
                    num += &xi[up][w] * c;
                }
                if num.is_zero() {
                    continue;
                }
                let den = depth[w] - depth[k];
                if den == 0 {
                    return Err(Error::Internal(format!(
                        "{}: vanishing localization denominator",
                        space.name()
                    )));
                }
                let (q, r) = num.div_rem(&BigInt::from(den));
                if !r.is_zero() {
                    return Err(Error::Internal(format!(
                        "{}: inexact localization division",
                        space.name()
                    )));
                }
                row[w] = q;
            }
            xi[k] = row;
        }
        Ok(Localization { xi })
    }
}

fn localization(space: &Space) -> Result<&Localization> {
    if let Some(l) = space.localization.get() {
        return Ok(l);
    }
    let built = Localization::build(space)?;
    Ok(space.localization.get_or_init(|| built))
}

/// `[X_a] [X_b] = sum mu [X_rho]` on basis indices, memoised per space.
pub(crate) fn lr_indexed(space: &Space, a: usize, b: usize) -> Result<Expansion> {
    let key = (a.min(b), a.max(b));
    if let Some(hit) = space.lr_memo.read().get(&key) {
        return Ok(hit.clone());
    }
    let computed = Arc::new(solve_product(space, a, b)?);
    Ok(space.lr_memo.write().entry(key).or_insert(computed).clone())
}

fn solve_product(space: &Space, a: usize, b: usize) -> Result<Vec<(usize, BigInt)>> {
    let n_dim = space.dim();
    let (da, db) = (space.class_dim(a), space.class_dim(b));
    if da + db < n_dim {
        return Ok(Vec::new());
    }
    let target = 2 * n_dim - da - db;
    let loc = localization(space)?;
    let (ka, kb) = (space.dual_index(a), space.dual_index(b));
    let floor = SchubertClass::from_bits_unchecked(space.class(ka).bits() | space.class(kb).bits());

    let mut solved: Vec<(usize, BigInt)> = Vec::new();
    let mut out = Vec::new();
    for v in 0..space.len() {
        let cv = space.class(v);
        if cv.dim() > target {
            break;
        }
        if !floor.is_subset(cv) {
            continue;
        }
        let mut rhs = &loc.xi[ka][v] * &loc.xi[kb][v];
        for (x, c) in &solved {
            let px = &loc.xi[*x][v];
            if !px.is_zero() {
                rhs -= c * px;
            }
        }
        if rhs.is_zero() {
            continue;
        }
        let (q, r) = rhs.div_rem(&loc.xi[v][v]);
        if !r.is_zero() {
            return Err(Error::Internal(format!(
                "{}: inexact product solve",
                space.name()
            )));
        }
        if cv.dim() == target {
            if q.sign() == Sign::Minus {
                return Err(Error::Internal(format!(
                    "{}: negative structure constant",
                    space.name()
                )));
            }
            out.push((space.dual_index(v), q.clone()));
        }
        solved.push((v, q));
    }
    out.sort_by_key(|x| x.0);
    Ok(out)
}

/// An element of the Chow ring: a finitely supported integer combination of
/// Schubert classes `[X_c]` of one space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChowElement {
    space: String,
    coefficients: BTreeMap<SchubertClass, BigInt>,
}

impl ChowElement {
    pub fn zero(space: &Space) -> Self {
        ChowElement {
            space: space.name(),
            coefficients: BTreeMap::new(),
        }
    }

    pub fn basis(space: &Space, c: SchubertClass) -> Result<Self> {
        space.idx(c)?;
        let mut e = Self::zero(space);
        e.coefficients.insert(c, BigInt::one());
        Ok(e)
    }

    /// The unit `[X]`.
    pub fn one(space: &Space) -> Self {
        Self::basis(space, space.fundamental_class()).expect("the full ideal is a basis class")
    }

    pub fn hyperplane(space: &Space) -> Self {
        chevalley_h(space, &Self::one(space)).expect("same space")
    }

    pub fn point(space: &Space) -> Self {
        Self::basis(space, space.point_class()).expect("the empty ideal is a basis class")
    }

    pub fn from_terms<I>(space: &Space, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (SchubertClass, BigInt)>,
    {
        let mut e = Self::zero(space);
        for (c, x) in terms {
            space.idx(c)?;
            e.add_term(c, x);
        }
        Ok(e)
    }

    pub fn space_name(&self) -> &str {
        &self.space
    }

    pub fn coefficient(&self, c: SchubertClass) -> BigInt {
        self.coefficients.get(&c).cloned().unwrap_or_default()
    }

    /// Terms in basis order; zero coefficients are never stored.
    pub fn terms(&self) -> impl Iterator<Item = (&SchubertClass, &BigInt)> {
        self.coefficients.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub(crate) fn add_term(&mut self, c: SchubertClass, x: BigInt) {
        if x.is_zero() {
            return;
        }
        let slot = self.coefficients.entry(c).or_default();
        *slot += x;
        if slot.is_zero() {
            self.coefficients.remove(&c);
        }
    }

    pub fn add(&self, other: &ChowElement) -> Result<ChowElement> {
        self.same_space(other)?;
        let mut out = self.clone();
        for (c, x) in &other.coefficients {
            out.add_term(*c, x.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigInt) -> ChowElement {
        let mut out = ChowElement {
            space: self.space.clone(),
            coefficients: BTreeMap::new(),
        };
        for (c, x) in &self.coefficients {
            out.add_term(*c, x * k);
        }
        out
    }

    /// The point-class coefficient, i.e. the degree of the zero-cycle part.
    pub fn integral(&self) -> BigInt {
        self.coefficient(SchubertClass::EMPTY)
    }

    fn same_space(&self, other: &ChowElement) -> Result<()> {
        if self.space != other.space {
            return Err(Error::MixedSpaces {
                left: self.space.clone(),
                right: other.space.clone(),
            });
        }
        Ok(())
    }

    fn check_space(&self, space: &Space) -> Result<()> {
        if self.space != space.name() {
            return Err(Error::MixedSpaces {
                left: self.space.clone(),
                right: space.name(),
            });
        }
        Ok(())
    }
}

/// `H . e` by the Chevalley formula.
pub fn chevalley_h(space: &Space, e: &ChowElement) -> Result<ChowElement> {
    e.check_space(space)?;
    let mut out = ChowElement::zero(space);
    for (c, x) in e.terms() {
        let k = space.idx(*c)?;
        for &(j, w) in space.chevalley_down(k) {
            out.add_term(space.class(j), x * w);
        }
    }
    Ok(out)
}

/// `H^k . e`.
pub fn h_power(space: &Space, e: &ChowElement, k: usize) -> Result<ChowElement> {
    let mut out = e.clone();
    for _ in 0..k {
        out = chevalley_h(space, &out)?;
    }
    Ok(out)
}

/// `deg X_c`: the point coefficient of `H^{dim c} [X_c]`.
pub fn degree(space: &Space, c: SchubertClass) -> Result<BigUint> {
    Ok(space.degrees()[space.idx(c)?].clone())
}

/// The structure constants `mu_{sigma tau}^rho` of `[X_sigma] [X_tau]`.
pub fn lr_coefficients(
    space: &Space,
    sigma: SchubertClass,
    tau: SchubertClass,
) -> Result<BTreeMap<SchubertClass, BigUint>> {
    let (a, b) = (space.idx(sigma)?, space.idx(tau)?);
    Ok(lr_indexed(space, a, b)?
        .iter()
        .map(|(k, x)| (space.class(*k), x.magnitude().clone()))
        .collect())
}

/// Bilinear extension of [`lr_coefficients`].
pub fn multiply(space: &Space, a: &ChowElement, b: &ChowElement) -> Result<ChowElement> {
    a.same_space(b)?;
    a.check_space(space)?;
    let mut out = ChowElement::zero(space);
    for (ca, xa) in a.terms() {
        let ia = space.idx(*ca)?;
        for (cb, xb) in b.terms() {
            let ib = space.idx(*cb)?;
            let coeff = xa * xb;
            for (k, mu) in lr_indexed(space, ia, ib)?.iter() {
                out.add_term(space.class(*k), &coeff * mu);
            }
        }
    }
    Ok(out)
}

/// True if every coefficient is non-negative.
pub fn is_effective(e: &ChowElement) -> bool {
    e.terms().all(|(_, x)| !x.is_negative())
}
