//! A cominuscule space together with its Schubert basis.
//!
//! Besides the poset model, every basis class is also realised as a point
//! `u = w omega_alpha` of the Weyl orbit of the fundamental weight, carried in
//! Dynkin labels. The two models are built independently and matched: the
//! ideal of `u` is the inversion set `N(w)`, and each construction checks the
//! other (sizes, duality, lengths).

use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use parking_lot::{Mutex, RwLock};

use crate::catalog::{describe, SpaceDescriptor, SpaceSpec};
use crate::error::{Error, Result};
use crate::poset::{MinusculePoset, SchubertClass};
use crate::root_data::{build_root_system, RootSystem, TypeLabel};

/// A basis class seen as a point of the orbit `W omega_alpha`.
#[derive(Debug, Clone)]
pub struct OrbitPoint {
    /// Dynkin labels of `u`.
    pub labels: Vec<i64>,
    /// `[j1, .., jk]` (0-based) with `u = s_jk .. s_j1 omega_alpha`, reduced.
    pub word: Vec<usize>,
    /// Height of `omega_alpha - u`.
    pub depth: i64,
}

pub(crate) type Expansion = Arc<Vec<(usize, BigInt)>>;

pub struct Space {
    descriptor: SpaceDescriptor,
    rs: RootSystem,
    alpha: usize,
    poset: MinusculePoset,
    basis: Vec<SchubertClass>,
    index: HashMap<SchubertClass, usize>,
    orbit: Vec<OrbitPoint>,
    by_labels: HashMap<Vec<i64>, usize>,
    dual: Vec<usize>,
    chevalley_down: Vec<Vec<(usize, u32)>>,
    chevalley_up: Vec<Vec<(usize, u32)>>,
    degrees: OnceLock<Vec<BigUint>>,
    pub(crate) localization: OnceLock<crate::chow::Localization>,
    pub(crate) lr_memo: RwLock<HashMap<(usize, usize), Expansion>>,
    pub(crate) incidence: OnceLock<crate::incidence::IncidenceMatrix>,
}

impl std::fmt::Debug for Space {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Space")
            .field("name", &self.name())
            .field("basis", &self.basis.len())
            .finish()
    }
}

impl Space {
    pub fn new(descriptor: SpaceDescriptor) -> Result<Self> {
        let rs = build_root_system(descriptor.root_type.type_label, descriptor.root_type.rank)?;
        let alpha = descriptor.root_type.marked_node - 1;
        let poset = MinusculePoset::new(&rs, alpha)?;
        let internal = |msg: String| Error::Internal(format!("{}: {msg}", descriptor.name()));
        if poset.len() != descriptor.dim {
            return Err(internal(format!("poset has {} elements", poset.len())));
        }

        let basis = poset.order_ideals();
        let index: HashMap<SchubertClass, usize> =
            basis.iter().enumerate().map(|(k, &c)| (c, k)).collect();

        let element_of: HashMap<&[i64], usize> = poset
            .root_labels
            .iter()
            .enumerate()
            .map(|(i, c)| (c.as_slice(), i))
            .collect();

        // Breadth-first search down the orbit, one simple reflection at a time.
        let mut start = vec![0i64; rs.rank];
        start[alpha] = 1;
        let mut found: HashMap<Vec<i64>, (Vec<usize>, i64)> = HashMap::new();
        found.insert(start.clone(), (Vec::new(), 0));
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let (word, depth) = found[&u].clone();
            for j in 0..rs.rank {
                if u[j] > 0 {
                    let mut v = u.clone();
                    rs.reflect_labels(&mut v, j);
                    if !found.contains_key(&v) {
                        let mut w = word.clone();
                        w.push(j);
                        found.insert(v.clone(), (w, depth + u[j]));
                        queue.push_back(v);
                    }
                }
            }
        }
        if found.len() != basis.len() {
            return Err(internal(format!(
                "orbit has {} points but the poset has {} ideals",
                found.len(),
                basis.len()
            )));
        }

        let mut orbit: Vec<Option<OrbitPoint>> = vec![None; basis.len()];
        for (labels, (word, depth)) in found {
            let mut bits = 0u128;
            for t in 0..word.len() {
                // w_{t}^{-1} alpha_{j_{t+1}} for w_t = s_{j_t} .. s_{j_1}.
                let mut beta = vec![0i64; rs.rank];
                beta[word[t]] = 1;
                for &j in word[..t].iter().rev() {
                    rs.reflect_root(&mut beta, j);
                }
                let x = *element_of.get(beta.as_slice()).ok_or_else(|| {
                    internal(format!("inversion {beta:?} is not a poset element"))
                })?;
                bits |= 1 << x;
            }
            let class = poset
                .class(bits)
                .map_err(|_| internal(format!("inversion set of {labels:?} is not an ideal")))?;
            if class.dim() != word.len() || rs.inversion_count(&labels) != word.len() {
                return Err(internal(format!("length mismatch at {labels:?}")));
            }
            let k = index[&class];
            if orbit[k].is_some() {
                return Err(internal(format!(
                    "two orbit points share the ideal {class}"
                )));
            }
            orbit[k] = Some(OrbitPoint {
                labels,
                word,
                depth,
            });
        }
        let orbit: Vec<OrbitPoint> = orbit.into_iter().map(Option::unwrap).collect();
        let by_labels: HashMap<Vec<i64>, usize> = orbit
            .iter()
            .enumerate()
            .map(|(k, p)| (p.labels.clone(), k))
            .collect();

        // Poincare duality twice: the poset involution, and u -> w_0 u.
        let all: Vec<usize> = (0..rs.rank).collect();
        let w0 = rs.longest_word(&all);
        let mut dual = Vec::with_capacity(basis.len());
        for (k, &c) in basis.iter().enumerate() {
            let by_poset = index[&poset.dual(c)];
            let mut v = orbit[k].labels.clone();
            for &j in &w0 {
                rs.reflect_labels(&mut v, j);
            }
            if by_labels.get(&v) != Some(&by_poset) {
                return Err(internal(format!("the two duality maps disagree at {c}")));
            }
            dual.push(by_poset);
        }

        // Chevalley: H [X_u] = sum |<u, gamma^vee>| [X_{s_gamma u}] over length-one drops.
        let mut chevalley_down = vec![Vec::new(); basis.len()];
        let mut chevalley_up = vec![Vec::new(); basis.len()];
        for (k, p) in orbit.iter().enumerate() {
            for root in &rs.positive_roots {
                let c = RootSystem::coroot_pairing(&p.labels, root);
                if c == 0 {
                    continue;
                }
                let shift = rs.root_labels(&root.coeffs);
                let v: Vec<i64> = p
                    .labels
                    .iter()
                    .zip(&shift)
                    .map(|(a, b)| a - c * b)
                    .collect();
                let target = by_labels[&v];
                if basis[target].dim() + 1 == basis[k].dim() {
                    chevalley_down[k].push((target, c.unsigned_abs() as u32));
                    chevalley_up[target].push((k, c.unsigned_abs() as u32));
                }
            }
            chevalley_down[k].sort();
        }
        for row in &mut chevalley_up {
            row.sort();
        }

        Ok(Space {
            descriptor,
            rs,
            alpha,
            poset,
            basis,
            index,
            orbit,
            by_labels,
            dual,
            chevalley_down,
            chevalley_up,
            degrees: OnceLock::new(),
            localization: OnceLock::new(),
            lr_memo: RwLock::new(HashMap::new()),
            incidence: OnceLock::new(),
        })
    }

    pub fn descriptor(&self) -> &SpaceDescriptor {
        &self.descriptor
    }

    pub fn name(&self) -> String {
        self.descriptor.name()
    }

    pub fn dim(&self) -> usize {
        self.descriptor.dim
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    /// The marked node, 0-based.
    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn poset(&self) -> &MinusculePoset {
        &self.poset
    }

    pub fn basis(&self) -> &[SchubertClass] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn index_of(&self, c: SchubertClass) -> Option<usize> {
        self.index.get(&c).copied()
    }

    pub(crate) fn idx(&self, c: SchubertClass) -> Result<usize> {
        self.index_of(c)
            .ok_or_else(|| Error::NotAnIdeal(c.to_bitstring(self.dim())))
    }

    pub fn class(&self, k: usize) -> SchubertClass {
        self.basis[k]
    }

    pub fn class_dim(&self, k: usize) -> usize {
        self.basis[k].dim()
    }

    pub fn orbit_point(&self, k: usize) -> &OrbitPoint {
        &self.orbit[k]
    }

    pub(crate) fn index_of_labels(&self, labels: &[i64]) -> Option<usize> {
        self.by_labels.get(labels).copied()
    }

    pub fn dual_index(&self, k: usize) -> usize {
        self.dual[k]
    }

    pub fn dual(&self, c: SchubertClass) -> SchubertClass {
        self.poset.dual(c)
    }

    /// `[X]`, the unit of the Chow ring.
    pub fn fundamental_class(&self) -> SchubertClass {
        self.poset.full()
    }

    pub fn point_class(&self) -> SchubertClass {
        SchubertClass::EMPTY
    }

    /// Index of `[X]` in the basis.
    pub fn fundamental_index(&self) -> usize {
        self.basis.len() - 1
    }

    /// `H [X_k] = sum c [X_k']` with `dim k' = dim k - 1`.
    pub fn chevalley_down(&self, k: usize) -> &[(usize, u32)] {
        &self.chevalley_down[k]
    }

    /// Transpose of [`Space::chevalley_down`].
    pub fn chevalley_up(&self, k: usize) -> &[(usize, u32)] {
        &self.chevalley_up[k]
    }

    /// `deg X_k`, the point coefficient of `H^{dim k} [X_k]`, for every basis index.
    pub fn degrees(&self) -> &[BigUint] {
        self.degrees.get_or_init(|| {
            let mut deg = vec![BigUint::zero(); self.basis.len()];
            deg[0] = BigUint::one();
            for k in 1..self.basis.len() {
                let mut d = BigUint::zero();
                for &(j, c) in &self.chevalley_down[k] {
                    d += &deg[j] * c;
                }
                deg[k] = d;
            }
            deg
        })
    }

    pub fn is_grassmannian(&self) -> bool {
        self.descriptor.root_type.type_label == TypeLabel::A
    }

    /// Box coordinates `(row, col)`, 0-based, of each poset element for
    /// `Gr(k, N)`: root `e_a - e_b` sits in row `k - a`, column `b - k - 1`.
    fn grassmannian_boxes(&self) -> Option<Vec<(usize, usize)>> {
        if !self.is_grassmannian() {
            return None;
        }
        let k = self.alpha + 1;
        Some(
            self.poset
                .root_labels
                .iter()
                .map(|c| {
                    let first = c.iter().position(|&x| x != 0).unwrap();
                    let last = c.iter().rposition(|&x| x != 0).unwrap();
                    (k - (first + 1), last + 2 - k - 1)
                })
                .collect(),
        )
    }

    /// For Grassmannians, the partition (in the `k x (N-k)` box) of the
    /// codimension-indexed Schubert class `sigma_lambda` equal to `[X_c]`.
    pub fn codim_partition(&self, c: SchubertClass) -> Option<Vec<usize>> {
        let boxes = self.grassmannian_boxes()?;
        let k = self.alpha + 1;
        let cols = self.rs.rank + 1 - k;
        let mut shape = vec![0usize; k];
        for x in c.elements() {
            shape[boxes[x].0] += 1;
        }
        let mut lambda: Vec<usize> = (0..k).map(|r| cols - shape[k - 1 - r]).collect();
        while lambda.last() == Some(&0) {
            lambda.pop();
        }
        Some(lambda)
    }

    /// Inverse of [`Space::codim_partition`].
    pub fn class_from_codim_partition(&self, lambda: &[usize]) -> Result<SchubertClass> {
        let boxes = self.grassmannian_boxes().ok_or_else(|| {
            Error::Parse(format!(
                "partition notation needs a Grassmannian, not {}",
                self.name()
            ))
        })?;
        let k = self.alpha + 1;
        let cols = self.rs.rank + 1 - k;
        let fits = lambda.len() <= k
            && lambda.iter().all(|&p| p <= cols)
            && lambda.windows(2).all(|w| w[0] >= w[1]);
        if !fits {
            return Err(Error::Parse(format!(
                "{lambda:?} is not a partition inside the {k} x {cols} box"
            )));
        }
        let part = |r: usize| lambda.get(r).copied().unwrap_or(0);
        let mut bits = 0u128;
        for (x, &(row, col)) in boxes.iter().enumerate() {
            if col < cols - part(k - 1 - row) {
                bits |= 1 << x;
            }
        }
        self.poset.class(bits)
    }
}

static REGISTRY: OnceLock<Mutex<HashMap<String, Arc<Space>>>> = OnceLock::new();

/// The shared, lazily built space for `spec`. Caches inside are per process.
pub fn space(spec: &SpaceSpec) -> Result<Arc<Space>> {
    let descriptor = describe(spec)?;
    let registry = REGISTRY.get_or_init(|| Mutex::new(HashMap::new()));
    let name = descriptor.name();
    if let Some(s) = registry.lock().get(&name) {
        return Ok(s.clone());
    }
    let built = Arc::new(Space::new(descriptor)?);
    Ok(registry.lock().entry(name).or_insert(built).clone())
}

/// [`space`] for a name such as `Gr(2,4)` or `E7`.
pub fn space_named(name: &str) -> Result<Arc<Space>> {
    space(&name.parse()?)
}
