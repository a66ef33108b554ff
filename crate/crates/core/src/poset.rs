//! The minuscule poset on `Phi+ \ Phi+_P` and its order ideals.
//!
//! Elements are the positive roots with coefficient 1 on the marked simple
//! root, numbered by (height, simple-root coefficients); this numbering is a
//! linear extension, and it is the bit order of every [`SchubertClass`].

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::catalog::SpaceDescriptor;
use crate::error::{Error, Result};
use crate::root_data::{build_root_system, RootSystem};

/// Largest poset the bitset representation can hold.
pub const MAX_POSET_SIZE: usize = 128;

/// A Schubert class, stored as the order ideal of its Schubert variety.
///
/// `dim X_c = |ideal|`. Classes sort by dimension first, then by bitset value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SchubertClass(u128);

impl SchubertClass {
    pub const EMPTY: SchubertClass = SchubertClass(0);

    /// Wraps raw bits without checking down-closure; see [`MinusculePoset::class`].
    pub fn from_bits_unchecked(bits: u128) -> Self {
        SchubertClass(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn dim(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, element: usize) -> bool {
        self.0 >> element & 1 == 1
    }

    pub fn is_subset(self, other: SchubertClass) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn elements(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..128).filter(move |&i| bits >> i & 1 == 1)
    }

    /// `n` characters, element 0 first: `1` for members of the ideal.
    pub fn to_bitstring(self, n: usize) -> String {
        (0..n)
            .map(|i| if self.contains(i) { '1' } else { '0' })
            .collect()
    }

    /// Inverse of [`SchubertClass::to_bitstring`]; down-closure is not checked.
    pub fn parse_bitstring(s: &str) -> Result<Self> {
        if s.len() > MAX_POSET_SIZE {
            return Err(Error::Parse(format!(
                "bitstring longer than {MAX_POSET_SIZE}"
            )));
        }
        let mut bits = 0u128;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '1' => bits |= 1 << i,
                '0' => {}
                _ => return Err(Error::Parse(format!("`{s}` is not a bitstring"))),
            }
        }
        Ok(SchubertClass(bits))
    }
}

impl Ord for SchubertClass {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.dim(), self.0).cmp(&(other.dim(), other.0))
    }
}

impl PartialOrd for SchubertClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SchubertClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, e) in self.elements().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Debug, Clone)]
pub struct MinusculePoset {
    /// Simple-root coefficients of each element.
    pub root_labels: Vec<Vec<i64>>,
    /// `<omega_alpha, beta^vee>` for each element: the Chevalley weight.
    pub weights: Vec<u32>,
    pub heights: Vec<i64>,
    lower_covers: Vec<u128>,
    upper_covers: Vec<u128>,
    /// Strict down-set of each element.
    below: Vec<u128>,
    /// The order-reversing involution induced by the longest element of `W_P`.
    involution: Vec<usize>,
}

fn mask(n: usize) -> u128 {
    if n == 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

impl MinusculePoset {
    /// Builds the poset of the cominuscule node `alpha` (0-based) of `rs`.
    pub fn new(rs: &RootSystem, alpha: usize) -> Result<Self> {
        let roots: Vec<_> = rs
            .positive_roots
            .iter()
            .filter(|r| r.coeffs[alpha] > 0)
            .collect();
        let n = roots.len();
        if n > MAX_POSET_SIZE {
            return Err(Error::TooLarge {
                dim: n,
                max: MAX_POSET_SIZE,
            });
        }
        let root_labels: Vec<Vec<i64>> = roots.iter().map(|r| r.coeffs.clone()).collect();
        let weights = roots.iter().map(|r| r.coroot[alpha] as u32).collect();
        let heights = roots.iter().map(|r| r.height()).collect();

        let leq = |a: &[i64], b: &[i64]| a.iter().zip(b).all(|(x, y)| x <= y);
        let mut below = vec![0u128; n];
        let mut lower_covers = vec![0u128; n];
        let mut upper_covers = vec![0u128; n];
        for j in 0..n {
            for i in 0..n {
                if i != j && leq(&root_labels[i], &root_labels[j]) {
                    below[j] |= 1 << i;
                }
            }
        }
        for j in 0..n {
            let strictly_below: Vec<usize> = (0..n).filter(|&i| below[j] >> i & 1 == 1).collect();
            for &i in &strictly_below {
                let interposed = strictly_below.iter().any(|&k| below[k] >> i & 1 == 1);
                if !interposed {
                    lower_covers[j] |= 1 << i;
                    upper_covers[i] |= 1 << j;
                }
            }
        }

        let index: HashMap<&[i64], usize> = root_labels
            .iter()
            .enumerate()
            .map(|(i, c)| (c.as_slice(), i))
            .collect();
        let levi: Vec<usize> = (0..rs.rank).filter(|&j| j != alpha).collect();
        let word = rs.longest_word(&levi);
        let involution = root_labels
            .iter()
            .map(|c| {
                let mut c = c.clone();
                for &j in &word {
                    rs.reflect_root(&mut c, j);
                }
                index.get(c.as_slice()).copied().ok_or_else(|| {
                    Error::Internal("w_0,P does not preserve the minuscule poset".into())
                })
            })
            .collect::<Result<Vec<_>>>()?;

        Ok(MinusculePoset {
            root_labels,
            weights,
            heights,
            lower_covers,
            upper_covers,
            below,
            involution,
        })
    }

    pub fn len(&self) -> usize {
        self.root_labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.root_labels.is_empty()
    }

    pub fn full(&self) -> SchubertClass {
        SchubertClass(mask(self.len()))
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        a == b || self.below[b] >> a & 1 == 1
    }

    pub fn lower_covers(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        SchubertClass(self.lower_covers[x]).elements()
    }

    pub fn upper_covers(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        SchubertClass(self.upper_covers[x]).elements()
    }

    pub fn is_ideal(&self, bits: u128) -> bool {
        if bits & !mask(self.len()) != 0 {
            return false;
        }
        SchubertClass(bits)
            .elements()
            .all(|x| self.below[x] & !bits == 0)
    }

    /// Checked constructor.
    pub fn class(&self, bits: u128) -> Result<SchubertClass> {
        if self.is_ideal(bits) {
            Ok(SchubertClass(bits))
        } else {
            Err(Error::NotAnIdeal(
                SchubertClass(bits).to_bitstring(self.len()),
            ))
        }
    }

    /// Elements that can be added to the ideal `c`.
    pub fn addable(&self, c: SchubertClass) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&x| !c.contains(x) && self.below[x] & !c.0 == 0)
    }

    /// Maximal elements of `c`.
    pub fn removable(&self, c: SchubertClass) -> impl Iterator<Item = usize> + '_ {
        c.elements()
            .filter(move |&x| self.upper_covers[x] & c.0 == 0)
    }

    pub fn involution(&self, x: usize) -> usize {
        self.involution[x]
    }

    /// Poincare dual: the complement of the image of `c` under the involution.
    pub fn dual(&self, c: SchubertClass) -> SchubertClass {
        let image = c
            .elements()
            .fold(0u128, |acc, x| acc | 1 << self.involution[x]);
        SchubertClass(mask(self.len()) & !image)
    }

    /// All order ideals, sorted by (size, bitset).
    pub fn order_ideals(&self) -> Vec<SchubertClass> {
        let mut seen: HashSet<u128> = HashSet::new();
        let mut layer = vec![SchubertClass::EMPTY];
        seen.insert(0);
        let mut out = Vec::new();
        while !layer.is_empty() {
            let mut next = Vec::new();
            for &c in &layer {
                for x in self.addable(c) {
                    let bigger = c.0 | 1 << x;
                    if seen.insert(bigger) {
                        next.push(SchubertClass(bigger));
                    }
                }
            }
            out.append(&mut layer);
            layer = next;
        }
        out.sort();
        out
    }

    /// Number of linear extensions of `c` as an induced subposet.
    pub fn linear_extensions_count(&self, c: SchubertClass) -> BigUint {
        self.weighted_extensions(c, |_| 1)
    }

    /// Linear extensions of `c`, each weighted by the product of the
    /// Chevalley weights of its elements.
    pub fn weighted_linear_extensions_count(&self, c: SchubertClass) -> BigUint {
        self.weighted_extensions(c, |x| self.weights[x])
    }

    fn weighted_extensions(&self, c: SchubertClass, weight: impl Fn(usize) -> u32) -> BigUint {
        let mut memo: HashMap<u128, BigUint> = HashMap::new();
        memo.insert(0, BigUint::one());
        // Ideals of c in increasing size; each is reached by adding one element.
        let mut layer = vec![0u128];
        for _ in 0..c.dim() {
            let mut next = Vec::new();
            for &i in &layer {
                let value = memo[&i].clone();
                for x in self.addable(SchubertClass(i)).filter(|&x| c.contains(x)) {
                    let j = i | 1 << x;
                    let slot = memo.entry(j).or_insert_with(|| {
                        next.push(j);
                        BigUint::zero()
                    });
                    *slot += &value * weight(x);
                }
            }
            layer = next;
        }
        memo.remove(&c.0).unwrap_or_else(BigUint::zero)
    }
}

/// The minuscule poset of a catalog entry.
pub fn minuscule_poset(s: &SpaceDescriptor) -> Result<MinusculePoset> {
    let rs = build_root_system(s.root_type.type_label, s.root_type.rank)?;
    MinusculePoset::new(&rs, s.root_type.marked_node - 1)
}
