//! The classification of cominuscule varieties, their varieties of line
//! tangents, and the chain-connectivity length `r`.
//!
//! Low-rank coincidences are normalised here, so that every descriptor handed
//! out names a space through exactly one presentation:
//! `Q(3) = LG(2)`, `Q(4) = Gr(2,4)`, `OG(3) = Gr(1,4)`, and the root spellings
//! `B2`, `D3` resolve accordingly.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::root_data::{build_root_system, index_of, TypeLabel};

/// Geometric name of a cominuscule space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Family {
    /// `Gr(k, n)`: `k`-planes in an `n`-dimensional space.
    Grassmannian {
        k: usize,
        n: usize,
    },
    /// Quadric `Q^dim`, `dim = 2n - 1` (type `B_n`).
    OddQuadric {
        dim: usize,
    },
    /// `LG(n, 2n)` (type `C_n`).
    LagrangianGrass {
        n: usize,
    },
    /// One component of `OG(n, 2n)` (type `D_n`).
    OrthogonalGrass {
        n: usize,
    },
    /// Quadric `Q^dim`, `dim = 2n - 2` (type `D_n`).
    EvenQuadric {
        dim: usize,
    },
    CayleyPlane,
    Freudenthal,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Grassmannian { k, n } => write!(f, "Gr({k},{n})"),
            Family::OddQuadric { dim } | Family::EvenQuadric { dim } => write!(f, "Q({dim})"),
            Family::LagrangianGrass { n } => write!(f, "LG({n})"),
            Family::OrthogonalGrass { n } => write!(f, "OG({n})"),
            Family::CayleyPlane => f.write_str("E6"),
            Family::Freudenthal => f.write_str("E7"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootType {
    pub type_label: TypeLabel,
    pub rank: usize,
    /// Bourbaki numbering, starting at 1.
    pub marked_node: usize,
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.type_label {
            TypeLabel::E6 | TypeLabel::E7 => write!(f, "{}/a{}", self.type_label, self.marked_node),
            _ => write!(f, "{}{}/a{}", self.type_label, self.rank, self.marked_node),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum VmrtKind {
    /// `P^a x P^b` in `|O(1,1)|`.
    Segre { a: usize, b: usize },
    /// `P^projective_dim` in `|O(degree)|`; the degree is always 2 here.
    Veronese {
        projective_dim: usize,
        degree: usize,
    },
    /// A minimally embedded cominuscule variety.
    Cominuscule(Box<SpaceDescriptor>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VmrtDescriptor {
    pub kind: VmrtKind,
    pub dim_v: usize,
    pub embedding_weight: String,
}

impl VmrtDescriptor {
    pub fn is_terminal(&self) -> bool {
        !matches!(self.kind, VmrtKind::Cominuscule(_))
    }
}

impl fmt::Display for VmrtDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            VmrtKind::Segre { a, b } => write!(f, "Segre(P{a} x P{b})"),
            VmrtKind::Veronese {
                projective_dim,
                degree,
            } => write!(f, "Veronese(P{projective_dim}, {degree})"),
            VmrtKind::Cominuscule(s) => write!(f, "{}", s.family),
        }?;
        write!(f, " in |{}|", self.embedding_weight)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceDescriptor {
    pub family: Family,
    pub root_type: RootType,
    pub dim: usize,
    pub index: usize,
    /// Minimal length of chains of lines joining two general points.
    pub r: usize,
    pub vmrt: VmrtDescriptor,
}

impl SpaceDescriptor {
    /// Canonical name, also used as the cache identifier.
    pub fn name(&self) -> String {
        self.family.to_string()
    }

    pub fn is_projective_space(&self) -> bool {
        matches!(self.family, Family::Grassmannian { k, n } if k == 1 || k + 1 == n)
    }
}

impl fmt::Display for SpaceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// How a caller names a space: geometrically, or by a marked Dynkin diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceSpec {
    Named(Family),
    Root(RootType),
}

impl SpaceSpec {
    pub fn grassmannian(k: usize, n: usize) -> Self {
        SpaceSpec::Named(Family::Grassmannian { k, n })
    }

    pub fn quadric(dim: usize) -> Self {
        if dim % 2 == 1 {
            SpaceSpec::Named(Family::OddQuadric { dim })
        } else {
            SpaceSpec::Named(Family::EvenQuadric { dim })
        }
    }

    pub fn lagrangian(n: usize) -> Self {
        SpaceSpec::Named(Family::LagrangianGrass { n })
    }

    pub fn orthogonal(n: usize) -> Self {
        SpaceSpec::Named(Family::OrthogonalGrass { n })
    }

    pub fn cayley_plane() -> Self {
        SpaceSpec::Named(Family::CayleyPlane)
    }

    pub fn freudenthal() -> Self {
        SpaceSpec::Named(Family::Freudenthal)
    }

    pub fn root(type_label: TypeLabel, rank: usize, marked_node: usize) -> Self {
        SpaceSpec::Root(RootType {
            type_label,
            rank,
            marked_node,
        })
    }

    /// Parses the root spelling `A,3,2` (type, rank, marked node).
    pub fn parse_root(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let bad = || Error::Parse(format!("expected `TYPE,RANK,NODE`, got `{s}`"));
        match parts.as_slice() {
            [t, rank, node] => {
                let label = TypeLabel::parse(t)?;
                let rank = rank.parse().map_err(|_| bad())?;
                let node = node.parse().map_err(|_| bad())?;
                Ok(SpaceSpec::root(label, rank, node))
            }
            [t, node] if t.eq_ignore_ascii_case("E6") || t.eq_ignore_ascii_case("E7") => {
                let label = TypeLabel::parse(t)?;
                let rank = if label == TypeLabel::E6 { 6 } else { 7 };
                Ok(SpaceSpec::root(
                    label,
                    rank,
                    node.parse().map_err(|_| bad())?,
                ))
            }
            _ => Err(bad()),
        }
    }
}

impl FromStr for SpaceSpec {
    type Err = Error;

    /// Accepts `Gr(i,N)`, `P(n)`, `Q(m)`, `LG(n)`, `OG(n)`, `E6`, `E7`,
    /// `CayleyPlane` and `Freudenthal`.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let unknown = |reason: &str| Error::UnknownSpace {
            name: s.to_string(),
            reason: reason.to_string(),
        };
        let lower = compact.to_ascii_lowercase();
        match lower.as_str() {
            "e6" | "cayleyplane" => return Ok(SpaceSpec::cayley_plane()),
            "e7" | "freudenthal" => return Ok(SpaceSpec::freudenthal()),
            _ => {}
        }
        let open = compact
            .find('(')
            .ok_or_else(|| unknown("unrecognised name"))?;
        if !compact.ends_with(')') {
            return Err(unknown("missing closing parenthesis"));
        }
        let head = compact[..open].to_ascii_lowercase();
        let args: Vec<usize> = compact[open + 1..compact.len() - 1]
            .split(',')
            .map(|a| a.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| unknown("arguments must be non-negative integers"))?;
        match (head.as_str(), args.as_slice()) {
            ("gr", &[k, n]) => Ok(SpaceSpec::grassmannian(k, n)),
            ("p", &[n]) => Ok(SpaceSpec::grassmannian(1, n + 1)),
            ("q", &[m]) => Ok(SpaceSpec::quadric(m)),
            ("lg", &[n]) | ("lg", &[n, _]) => Ok(SpaceSpec::lagrangian(n)),
            ("og", &[n]) | ("og", &[n, _]) => Ok(SpaceSpec::orthogonal(n)),
            _ => Err(unknown("unrecognised family or wrong number of arguments")),
        }
    }
}

/// Resolves a spec to the normalised root presentation `(type, rank, node)`.
fn normalise(spec: &SpaceSpec) -> Result<RootType> {
    let rt = |type_label, rank, marked_node| RootType {
        type_label,
        rank,
        marked_node,
    };
    let reject = |reason: String| Error::UnknownSpace {
        name: match spec {
            SpaceSpec::Named(f) => f.to_string(),
            SpaceSpec::Root(r) => r.to_string(),
        },
        reason,
    };
    match *spec {
        SpaceSpec::Named(family) => match family {
            Family::Grassmannian { k, n } => {
                if n < 2 || k < 1 || k >= n {
                    return Err(reject(format!(
                        "Gr(k,n) needs 1 <= k < n, got k={k}, n={n}"
                    )));
                }
                Ok(rt(TypeLabel::A, n - 1, k))
            }
            Family::OddQuadric { dim } | Family::EvenQuadric { dim } => match dim {
                0 => Err(reject("Q(0) is two points".into())),
                1 => Err(reject(
                    "Q(1) is a conic, not minimally embedded; use Gr(1,2)".into(),
                )),
                2 => Err(reject(
                    "Q(2) = P1 x P1 is not homogeneous under a simple group".into(),
                )),
                3 => Ok(rt(TypeLabel::C, 2, 2)),
                4 => Ok(rt(TypeLabel::A, 3, 2)),
                m if m % 2 == 1 => Ok(rt(TypeLabel::B, m.div_ceil(2), 1)),
                m => Ok(rt(TypeLabel::D, (m + 2) / 2, 1)),
            },
            Family::LagrangianGrass { n } => {
                if n < 2 {
                    return Err(reject("LG(n) needs n >= 2 (C1 is not admissible)".into()));
                }
                Ok(rt(TypeLabel::C, n, n))
            }
            Family::OrthogonalGrass { n } => match n {
                0..=2 => Err(reject("OG(n) needs n >= 3 (D2 is not simple)".into())),
                3 => Ok(rt(TypeLabel::A, 3, 1)),
                n => Ok(rt(TypeLabel::D, n, n)),
            },
            Family::CayleyPlane => Ok(rt(TypeLabel::E6, 6, 6)),
            Family::Freudenthal => Ok(rt(TypeLabel::E7, 7, 7)),
        },
        SpaceSpec::Root(r) => {
            let rs = build_root_system(r.type_label, r.rank)?;
            rs.check_cominuscule(r.marked_node)?;
            let n = r.rank;
            Ok(match (r.type_label, r.marked_node) {
                (TypeLabel::B, _) if n == 2 => rt(TypeLabel::C, 2, 2),
                (TypeLabel::D, 1) if n == 3 => rt(TypeLabel::A, 3, 2),
                (TypeLabel::D, _) if n == 3 => rt(TypeLabel::A, 3, 1),
                (TypeLabel::D, m) if m == n - 1 => rt(TypeLabel::D, n, n),
                (TypeLabel::E6, 1) => rt(TypeLabel::E6, 6, 6),
                _ => r,
            })
        }
    }
}

struct TableRow {
    family: Family,
    dim: usize,
    index: usize,
    r: usize,
}

/// Table formulas for a normalised root presentation.
fn table_row(rt: &RootType) -> TableRow {
    let n = rt.rank;
    let i = rt.marked_node;
    match rt.type_label {
        TypeLabel::A => TableRow {
            family: Family::Grassmannian { k: i, n: n + 1 },
            dim: i * (n + 1 - i),
            index: n + 1,
            r: i.min(n + 1 - i),
        },
        TypeLabel::B => TableRow {
            family: Family::OddQuadric { dim: 2 * n - 1 },
            dim: 2 * n - 1,
            index: 2 * n - 1,
            r: 2,
        },
        TypeLabel::C => TableRow {
            family: Family::LagrangianGrass { n },
            dim: n * (n + 1) / 2,
            index: n + 1,
            r: n,
        },
        TypeLabel::D if i == 1 => TableRow {
            family: Family::EvenQuadric { dim: 2 * n - 2 },
            dim: 2 * n - 2,
            index: 2 * n - 2,
            r: 2,
        },
        TypeLabel::D => TableRow {
            family: Family::OrthogonalGrass { n },
            dim: n * (n - 1) / 2,
            index: 2 * n - 2,
            r: n / 2,
        },
        TypeLabel::E6 => TableRow {
            family: Family::CayleyPlane,
            dim: 16,
            index: 12,
            r: 2,
        },
        TypeLabel::E7 => TableRow {
            family: Family::Freudenthal,
            dim: 27,
            index: 18,
            r: 3,
        },
    }
}

fn vmrt_of(rt: &RootType) -> Result<VmrtDescriptor> {
    let n = rt.rank;
    let o1 = "O(1)".to_string();
    let cominuscule = |spec: SpaceSpec| -> Result<VmrtDescriptor> {
        let inner = describe(&spec)?;
        Ok(VmrtDescriptor {
            dim_v: inner.dim,
            kind: VmrtKind::Cominuscule(Box::new(inner)),
            embedding_weight: "O(1)".to_string(),
        })
    };
    match rt.type_label {
        TypeLabel::A => {
            let i = rt.marked_node;
            Ok(VmrtDescriptor {
                kind: VmrtKind::Segre { a: i - 1, b: n - i },
                dim_v: n - 1,
                embedding_weight: "O(1,1)".to_string(),
            })
        }
        TypeLabel::B => cominuscule(SpaceSpec::quadric(2 * n - 3)),
        TypeLabel::C => Ok(VmrtDescriptor {
            kind: VmrtKind::Veronese {
                projective_dim: n - 1,
                degree: 2,
            },
            dim_v: n - 1,
            embedding_weight: "O(2)".to_string(),
        }),
        TypeLabel::D if rt.marked_node == 1 => {
            let m = 2 * n - 4;
            if m == 2 {
                // Only reachable from D3, which is normalised away.
                return Ok(VmrtDescriptor {
                    kind: VmrtKind::Segre { a: 1, b: 1 },
                    dim_v: 2,
                    embedding_weight: "O(1,1)".to_string(),
                });
            }
            cominuscule(SpaceSpec::quadric(m))
        }
        TypeLabel::D => cominuscule(SpaceSpec::grassmannian(2, n)),
        TypeLabel::E6 => {
            let mut v = cominuscule(SpaceSpec::orthogonal(5))?;
            v.embedding_weight = o1;
            Ok(v)
        }
        TypeLabel::E7 => cominuscule(SpaceSpec::cayley_plane()),
    }
}

/// Fully populated descriptor for a space of the classification.
///
/// Dimension and index are recomputed from the root system and checked against
/// the table formulas; the variety of line tangents is checked against
/// `dim M_1 = dim X + dim V` with `M_1 = G/P_{I(alpha)}`.
pub fn describe(spec: &SpaceSpec) -> Result<SpaceDescriptor> {
    let root_type = normalise(spec)?;
    let rs = build_root_system(root_type.type_label, root_type.rank)?;
    let node = root_type.marked_node;
    let row = table_row(&root_type);
    let dim = rs.quotient_dim(&[node]);
    let index = index_of(&rs, node)?;
    if dim != row.dim || index != row.index {
        return Err(Error::Internal(format!(
            "{root_type}: root data gives (dim {dim}, index {index}), table gives ({}, {})",
            row.dim, row.index
        )));
    }
    let vmrt = vmrt_of(&root_type)?;
    let mut marked = rs.neighbours(node);
    marked.push(node);
    let lines_dim = rs.quotient_dim(&marked);
    if lines_dim != dim + vmrt.dim_v {
        return Err(Error::Internal(format!(
            "{root_type}: dim M_1 = {lines_dim} but dim X + dim V = {}",
            dim + vmrt.dim_v
        )));
    }
    if vmrt.dim_v + 2 != index {
        return Err(Error::Internal(format!(
            "{root_type}: dim V = {} is not index - 2",
            vmrt.dim_v
        )));
    }
    Ok(SpaceDescriptor {
        family: row.family,
        root_type,
        dim,
        index,
        r: row.r,
        vmrt,
    })
}

/// Parses a space name and describes it.
pub fn describe_str(name: &str) -> Result<SpaceDescriptor> {
    describe(&name.parse()?)
}

/// The chain `V(s), V(V(s)), ...`, ending at the first Segre or Veronese kind.
pub fn vmrt_tower(s: &SpaceDescriptor) -> Vec<VmrtDescriptor> {
    let mut out = Vec::new();
    let mut current = s.vmrt.clone();
    loop {
        out.push(current.clone());
        match current.kind {
            VmrtKind::Cominuscule(inner) => current = inner.vmrt.clone(),
            _ => break,
        }
    }
    out
}

/// Every space of the classification with `dim <= max_dim`, each under its
/// canonical name (Grassmannians with `2k <= n`, quadrics from `Q(5)`).
pub fn all_spaces(max_dim: usize) -> Vec<SpaceDescriptor> {
    let mut specs = Vec::new();
    for n in 2..=max_dim + 1 {
        for k in 1..=n / 2 {
            if k * (n - k) <= max_dim {
                specs.push(SpaceSpec::grassmannian(k, n));
            }
        }
    }
    for m in 5..=max_dim {
        specs.push(SpaceSpec::quadric(m));
    }
    let mut n = 2;
    while n * (n + 1) / 2 <= max_dim {
        specs.push(SpaceSpec::lagrangian(n));
        n += 1;
    }
    let mut n = 4;
    while n * (n - 1) / 2 <= max_dim {
        specs.push(SpaceSpec::orthogonal(n));
        n += 1;
    }
    if max_dim >= 16 {
        specs.push(SpaceSpec::cayley_plane());
    }
    if max_dim >= 27 {
        specs.push(SpaceSpec::freudenthal());
    }
    specs
        .iter()
        .map(|s| describe(s).expect("canonical catalog entries are valid"))
        .collect()
}
