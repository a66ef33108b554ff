//! Root systems of the simple types carrying cominuscule nodes.
//!
//! Each type is realised in its standard orthonormal ambient lattice
//! (Bourbaki conventions). For `E6`/`E7` the coordinates are doubled so that
//! every simple root is an integer vector; Cartan pairings are scale invariant.
//!
//! Nodes are numbered from 1 in the public API, following Bourbaki.

use std::collections::HashSet;
use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TypeLabel {
    A,
    B,
    C,
    D,
    E6,
    E7,
}

impl TypeLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            TypeLabel::A => "A",
            TypeLabel::B => "B",
            TypeLabel::C => "C",
            TypeLabel::D => "D",
            TypeLabel::E6 => "E6",
            TypeLabel::E7 => "E7",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(TypeLabel::A),
            "B" => Ok(TypeLabel::B),
            "C" => Ok(TypeLabel::C),
            "D" => Ok(TypeLabel::D),
            "E6" => Ok(TypeLabel::E6),
            "E7" => Ok(TypeLabel::E7),
            other => Err(Error::Parse(format!("unknown root system type `{other}`"))),
        }
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A positive root, kept in three coordinate systems at once.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Root {
    /// Coefficients on the simple roots.
    pub coeffs: Vec<i64>,
    /// Coefficients of the coroot on the simple coroots.
    pub coroot: Vec<i64>,
    /// Ambient lattice coordinates.
    pub ambient: Vec<i64>,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }
}

/// A weight in the ambient vector space, with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Weight {
    pub coordinates: Vec<Rational64>,
}

impl Weight {
    pub fn zero(dim: usize) -> Self {
        Weight {
            coordinates: vec![Rational64::zero(); dim],
        }
    }

    pub fn from_integers(v: &[i64]) -> Self {
        Weight {
            coordinates: v.iter().map(|&x| Rational64::from_integer(x)).collect(),
        }
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight {
            coordinates: self
                .coordinates
                .iter()
                .zip(&other.coordinates)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Weight {
        let k = Rational64::from_integer(k);
        Weight {
            coordinates: self.coordinates.iter().map(|a| a * k).collect(),
        }
    }

    fn dot(&self, v: &[i64]) -> Rational64 {
        self.coordinates
            .iter()
            .zip(v)
            .map(|(a, &b)| a * Rational64::from_integer(b))
            .fold(Rational64::zero(), |acc, x| acc + x)
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    pub type_label: TypeLabel,
    pub rank: usize,
    /// Simple roots in ambient coordinates.
    pub simple_roots: Vec<Vec<i64>>,
    /// `cartan_matrix[i][j] = <alpha_i, alpha_j^vee>`.
    pub cartan_matrix: Vec<Vec<i64>>,
    /// Sorted by height, then by simple-root coefficients.
    pub positive_roots: Vec<Root>,
    pub fundamental_weights: Vec<Weight>,
    /// Squared lengths of the simple roots in the ambient form.
    simple_norms: Vec<i64>,
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn unit(n: usize, i: usize, scale: i64) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = scale;
    v
}

fn diff(n: usize, i: usize, j: usize, scale: i64) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = scale;
    v[j] = -scale;
    v
}

fn ambient_simple_roots(label: TypeLabel, rank: usize) -> Result<Vec<Vec<i64>>> {
    let reject = |reason: &str| Error::UnsupportedRootSystem {
        label: label.to_string(),
        rank,
        reason: reason.to_string(),
    };
    let n = rank;
    let roots = match label {
        TypeLabel::A => {
            if n < 1 {
                return Err(reject("type A needs rank >= 1"));
            }
            (0..n).map(|i| diff(n + 1, i, i + 1, 1)).collect()
        }
        TypeLabel::B | TypeLabel::C => {
            if n < 2 {
                return Err(reject("types B and C need rank >= 2"));
            }
            let mut v: Vec<Vec<i64>> = (0..n - 1).map(|i| diff(n, i, i + 1, 1)).collect();
            v.push(unit(n, n - 1, if label == TypeLabel::B { 1 } else { 2 }));
            v
        }
        TypeLabel::D => {
            if n < 3 {
                return Err(reject("type D needs rank >= 3 (D2 is not simple)"));
            }
            let mut v: Vec<Vec<i64>> = (0..n - 1).map(|i| diff(n, i, i + 1, 1)).collect();
            let mut last = vec![0; n];
            last[n - 2] = 1;
            last[n - 1] = 1;
            v.push(last);
            v
        }
        TypeLabel::E6 | TypeLabel::E7 => {
            let expected = if label == TypeLabel::E6 { 6 } else { 7 };
            if n != expected {
                return Err(reject(&format!("{label} has rank {expected}")));
            }
            // Bourbaki's E8 frame, doubled; E6 and E7 use the first simple roots.
            let mut v = vec![vec![1, -1, -1, -1, -1, -1, -1, 1]];
            let mut a2 = vec![0; 8];
            a2[0] = 2;
            a2[1] = 2;
            v.push(a2);
            for i in 0..n - 2 {
                v.push(diff(8, i + 1, i, 2));
            }
            v
        }
    };
    Ok(roots)
}

/// Builds the root system of type `label` and the given rank.
pub fn build_root_system(label: TypeLabel, rank: usize) -> Result<RootSystem> {
    let simple_roots = ambient_simple_roots(label, rank)?;
    let n = simple_roots.len();
    let simple_norms: Vec<i64> = simple_roots.iter().map(|a| dot(a, a)).collect();
    let cartan_matrix: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| 2 * dot(&simple_roots[i], &simple_roots[j]) / simple_norms[j])
                .collect()
        })
        .collect();

    let coeffs = positive_root_closure(&cartan_matrix);
    let mut positive_roots: Vec<Root> = coeffs
        .into_iter()
        .map(|c| {
            let dim = simple_roots[0].len();
            let mut ambient = vec![0; dim];
            for (k, &ck) in c.iter().enumerate() {
                for (x, &s) in ambient.iter_mut().zip(&simple_roots[k]) {
                    *x += ck * s;
                }
            }
            let norm = dot(&ambient, &ambient);
            let coroot = c
                .iter()
                .zip(&simple_norms)
                .map(|(&ck, &nk)| {
                    debug_assert_eq!((ck * nk) % norm, 0);
                    ck * nk / norm
                })
                .collect();
            Root {
                coeffs: c,
                coroot,
                ambient,
            }
        })
        .collect();
    positive_roots.sort_by(|a, b| (a.height(), &a.coeffs).cmp(&(b.height(), &b.coeffs)));

    let inverse = invert(&cartan_matrix);
    let ambient_dim = simple_roots[0].len();
    let fundamental_weights = (0..n)
        .map(|i| {
            let mut w = Weight::zero(ambient_dim);
            for k in 0..n {
                for (x, &s) in w.coordinates.iter_mut().zip(&simple_roots[k]) {
                    *x += inverse[i][k] * Rational64::from_integer(s);
                }
            }
            w
        })
        .collect();

    Ok(RootSystem {
        type_label: label,
        rank: n,
        simple_roots,
        cartan_matrix,
        positive_roots,
        fundamental_weights,
        simple_norms,
    })
}

/// Positive roots (as simple-root coefficient vectors) generated from the simple
/// roots by the root-string rule.
fn positive_root_closure(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let mut all: HashSet<Vec<i64>> = HashSet::new();
    let mut out = Vec::new();
    let mut layer: Vec<Vec<i64>> = (0..n).map(|i| unit(n, i, 1)).collect();
    for r in &layer {
        all.insert(r.clone());
        out.push(r.clone());
    }
    while !layer.is_empty() {
        let mut next = Vec::new();
        for beta in &layer {
            for j in 0..n {
                let pair: i64 = (0..n).map(|k| beta[k] * cartan[k][j]).sum();
                let mut p = 0;
                let mut probe = beta.clone();
                loop {
                    probe[j] -= 1;
                    if all.contains(&probe) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - pair > 0 {
                    let mut gamma = beta.clone();
                    gamma[j] += 1;
                    if all.insert(gamma.clone()) {
                        out.push(gamma.clone());
                        next.push(gamma);
                    }
                }
            }
        }
        layer = next;
    }
    out
}

fn invert(m: &[Vec<i64>]) -> Vec<Vec<Rational64>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational64> = row.iter().map(|&x| Rational64::from_integer(x)).collect();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational64::one()
                } else {
                    Rational64::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("Cartan matrices are invertible");
        a.swap(col, pivot);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                let pivot = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot) {
                    *x -= f * y;
                }
            }
        }
    }
    a.into_iter().map(|row| row[n..].to_vec()).collect()
}

/// Integer pairing `<w, alpha_j^vee>` with the simple coroot of node `coroot_index` (1-based).
///
/// Panics if `w` is not in the weight lattice, which is a caller bug.
pub fn pairing(w: &Weight, coroot_index: usize, rs: &RootSystem) -> i64 {
    rs.pairing(w, coroot_index)
}

/// Fano index of `G/P` for the cominuscule node `marked_node` (1-based):
/// the sum of `<beta, alpha^vee>` over roots of the unipotent radical.
pub fn index_of(rs: &RootSystem, marked_node: usize) -> Result<usize> {
    rs.check_cominuscule(marked_node)?;
    let a = marked_node - 1;
    let total: i64 = rs
        .positive_roots
        .iter()
        .filter(|r| r.coeffs[a] > 0)
        .map(|r| rs.root_pairing(&r.coeffs, a))
        .sum();
    Ok(total as usize)
}

impl RootSystem {
    pub fn pairing(&self, w: &Weight, coroot_index: usize) -> i64 {
        let j = coroot_index - 1;
        let v = w.dot(&self.simple_roots[j]) * Rational64::from_integer(2)
            / Rational64::from_integer(self.simple_norms[j]);
        assert!(v.is_integer(), "weight is not in the weight lattice");
        v.to_integer()
    }

    /// `<beta, alpha_j^vee>` for `beta` given on the simple roots; `j` is 0-based.
    pub(crate) fn root_pairing(&self, coeffs: &[i64], j: usize) -> i64 {
        coeffs
            .iter()
            .zip(&self.cartan_matrix)
            .map(|(c, row)| c * row[j])
            .sum()
    }

    pub fn fundamental_weight(&self, node: usize) -> &Weight {
        &self.fundamental_weights[node - 1]
    }

    pub fn root_weight(&self, root: &Root) -> Weight {
        Weight::from_integers(&root.ambient)
    }

    pub fn highest_root(&self) -> &Root {
        self.positive_roots
            .last()
            .expect("root systems are non-empty")
    }

    pub fn highest_root_coefficient(&self, node: usize) -> i64 {
        self.highest_root().coeffs[node - 1]
    }

    pub fn check_cominuscule(&self, node: usize) -> Result<()> {
        if node == 0 || node > self.rank {
            return Err(Error::UnsupportedRootSystem {
                label: self.type_label.to_string(),
                rank: self.rank,
                reason: format!("node {node} out of range 1..={}", self.rank),
            });
        }
        let c = self.highest_root_coefficient(node);
        if c != 1 {
            return Err(Error::NotCominuscule {
                label: self.type_label.to_string(),
                rank: self.rank,
                node,
                coefficient: c,
            });
        }
        Ok(())
    }

    /// `dim G/P` where the Levi of `P` has simple roots all nodes except `marked` (1-based).
    pub fn quotient_dim(&self, marked: &[usize]) -> usize {
        self.positive_roots
            .iter()
            .filter(|r| marked.iter().any(|&m| r.coeffs[m - 1] > 0))
            .count()
    }

    /// Nodes adjacent to `node` in the Dynkin diagram (1-based).
    pub fn neighbours(&self, node: usize) -> Vec<usize> {
        let i = node - 1;
        (0..self.rank)
            .filter(|&j| j != i && self.cartan_matrix[i][j] != 0)
            .map(|j| j + 1)
            .collect()
    }

    /// Fundamental-weight coordinates of a root given on the simple roots.
    pub(crate) fn root_labels(&self, coeffs: &[i64]) -> Vec<i64> {
        (0..self.rank)
            .map(|j| self.root_pairing(coeffs, j))
            .collect()
    }

    /// Applies the simple reflection `s_j` (0-based) to a root given on the simple roots.
    pub(crate) fn reflect_root(&self, coeffs: &mut [i64], j: usize) {
        let p = self.root_pairing(coeffs, j);
        coeffs[j] -= p;
    }

    /// Applies `s_j` (0-based) to a weight given by its Dynkin labels.
    pub(crate) fn reflect_labels(&self, labels: &mut [i64], j: usize) {
        let c = labels[j];
        if c != 0 {
            for (x, a) in labels.iter_mut().zip(&self.cartan_matrix[j]) {
                *x -= c * a;
            }
        }
    }

    /// `<u, beta^vee>` for a weight in Dynkin labels and a positive root.
    pub(crate) fn coroot_pairing(labels: &[i64], root: &Root) -> i64 {
        labels.iter().zip(&root.coroot).map(|(a, b)| a * b).sum()
    }

    /// Number of positive roots whose coroot pairs negatively with `labels`.
    pub(crate) fn inversion_count(&self, labels: &[i64]) -> usize {
        self.positive_roots
            .iter()
            .filter(|r| Self::coroot_pairing(labels, r) < 0)
            .count()
    }

    /// A reduced word `[j1, .., jk]` (0-based) for the longest element of the
    /// parabolic subgroup generated by `allowed`, found by reflecting `rho` of
    /// that subgroup until no label is positive.
    pub(crate) fn longest_word(&self, allowed: &[usize]) -> Vec<usize> {
        let mut labels = vec![0i64; self.rank];
        for &j in allowed {
            labels[j] = 1;
        }
        let mut word = Vec::new();
        while let Some(&j) = allowed.iter().find(|&&j| labels[j] > 0) {
            self.reflect_labels(&mut labels, j);
            word.push(j);
        }
        word
    }

    pub fn find_root(&self, coeffs: &[i64]) -> Option<&Root> {
        self.positive_roots.iter().find(|r| r.coeffs == coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn classical_count(label: TypeLabel, n: usize) -> usize {
        match label {
            TypeLabel::A => n * (n + 1) / 2,
            TypeLabel::B | TypeLabel::C => n * n,
            TypeLabel::D => n * (n - 1),
            TypeLabel::E6 => 36,
            TypeLabel::E7 => 63,
        }
    }

    #[test]
    fn root_counts() {
        assert_eq!(
            build_root_system(TypeLabel::A, 3)
                .unwrap()
                .positive_roots
                .len(),
            6
        );
        assert_eq!(
            build_root_system(TypeLabel::E7, 7)
                .unwrap()
                .positive_roots
                .len(),
            63
        );
        for n in 1..=8 {
            for label in [TypeLabel::A, TypeLabel::B, TypeLabel::C, TypeLabel::D] {
                if let Ok(rs) = build_root_system(label, n) {
                    assert_eq!(
                        rs.positive_roots.len(),
                        classical_count(label, n),
                        "{label}{n}"
                    );
                }
            }
        }
        assert_eq!(
            build_root_system(TypeLabel::E6, 6)
                .unwrap()
                .positive_roots
                .len(),
            36
        );
    }

    #[test]
    fn d2_and_other_bad_pairs_rejected() {
        assert!(build_root_system(TypeLabel::D, 2).is_err());
        assert!(build_root_system(TypeLabel::B, 1).is_err());
        assert!(build_root_system(TypeLabel::A, 0).is_err());
        assert!(build_root_system(TypeLabel::E6, 7).is_err());
    }

    #[test]
    fn cartan_shape_and_fundamental_weights() {
        for (label, n) in [
            (TypeLabel::A, 4),
            (TypeLabel::B, 4),
            (TypeLabel::C, 4),
            (TypeLabel::D, 5),
            (TypeLabel::E6, 6),
            (TypeLabel::E7, 7),
        ] {
            let rs = build_root_system(label, n).unwrap();
            for i in 0..n {
                assert_eq!(rs.cartan_matrix[i][i], 2);
                for j in 0..n {
                    if i != j {
                        assert!(rs.cartan_matrix[i][j] <= 0);
                    }
                    let p = rs.pairing(&rs.fundamental_weights[i], j + 1);
                    assert_eq!(p, i64::from(i == j));
                }
            }
        }
    }

    #[test]
    fn pairing_examples() {
        let rs = build_root_system(TypeLabel::A, 3).unwrap();
        assert_eq!(pairing(rs.fundamental_weight(1), 1, &rs), 1);
        assert_eq!(pairing(rs.fundamental_weight(1), 2, &rs), 0);
        let theta = rs.root_weight(rs.highest_root());
        assert_eq!(rs.highest_root().coeffs, vec![1, 1, 1]);
        assert_eq!(pairing(&theta, 2, &rs), 0);
        // theta pairs to 1 with the coroots of the end nodes of A3.
        assert_eq!(pairing(&theta, 1, &rs), 1);
        assert_eq!(pairing(&theta, 3, &rs), 1);
    }

    #[test]
    fn highest_root_pairing_on_middle_node_of_a2() {
        let rs = build_root_system(TypeLabel::A, 2).unwrap();
        let theta = rs.root_weight(rs.highest_root());
        assert_eq!(pairing(&theta, 1, &rs), 1);
        assert_eq!(pairing(&theta, 2, &rs), 1);
    }

    #[test]
    fn index_examples() {
        for n in 1..=6 {
            let rs = build_root_system(TypeLabel::A, n).unwrap();
            for i in 1..=n {
                assert_eq!(index_of(&rs, i).unwrap(), n + 1);
            }
        }
        let e7 = build_root_system(TypeLabel::E7, 7).unwrap();
        assert_eq!(index_of(&e7, 7).unwrap(), 18);
        for n in 3..=7 {
            let d = build_root_system(TypeLabel::D, n).unwrap();
            assert_eq!(index_of(&d, 1).unwrap(), 2 * n - 2);
        }
        let b = build_root_system(TypeLabel::B, 4).unwrap();
        assert!(matches!(index_of(&b, 4), Err(Error::NotCominuscule { .. })));
    }

    #[test]
    fn pairing_is_additive() {
        let rs = build_root_system(TypeLabel::D, 5).unwrap();
        for a in &rs.positive_roots {
            for b in rs.positive_roots.iter().take(7) {
                let wa = rs.root_weight(a);
                let wb = rs.root_weight(b);
                let sum = wa.add(&wb.scale(3));
                for j in 1..=5 {
                    assert_eq!(
                        rs.pairing(&sum, j),
                        rs.pairing(&wa, j) + 3 * rs.pairing(&wb, j)
                    );
                }
            }
        }
    }
}
