//! Characteristic lower bounds for `d`-rigidity.
//!
//! Types `A` and `C` are closed cases. Every other type needs, besides its own
//! three conditions, the `d(d+1)/2`-rigidity of its variety of line tangents,
//! so its report carries a child report for `V` at the twisted degree.

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::{One, Pow};

use crate::catalog::{SpaceDescriptor, SpaceSpec, VmrtDescriptor, VmrtKind};
use crate::chains::delta_i;
use crate::error::{Error, Result};
use crate::root_data::TypeLabel;
use crate::space::space;

/// `d(d+1)/2`, the twist that becomes very ample on the lines through a point.
pub fn very_ample_twist(d: u64) -> u64 {
    d * (d + 1) / 2
}

/// `e (e-1)^m`, bounding the length of the singular locus of a degree-`e`
/// hypersurface section in `m` variables.
pub fn smoothness_bound(e: &BigUint, m: usize) -> BigUint {
    if *e == BigUint::from(0u32) {
        return BigUint::from(0u32);
    }
    e * Pow::pow(e - BigUint::one(), m)
}

/// Degree of `V` in its embedding by the tangent-cone line bundle.
pub fn vmrt_degree(v: &VmrtDescriptor) -> Result<BigUint> {
    match &v.kind {
        VmrtKind::Segre { a, b } => Ok(binomial(BigUint::from(a + b), BigUint::from(*a))),
        VmrtKind::Veronese {
            projective_dim,
            degree,
        } => Ok(Pow::pow(BigUint::from(*degree), *projective_dim)),
        VmrtKind::Cominuscule(inner) => {
            let s = space(&SpaceSpec::Named(inner.family))?;
            Ok(s.degrees()[s.fundamental_index()].clone())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundComponents {
    pub smoothness_term: BigUint,
    pub index_term: BigUint,
    /// `None` when the chain number was not evaluated.
    pub delta_term: Option<BigUint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub space: SpaceDescriptor,
    pub d: u64,
    /// Which formula for `e` applies: 1 (type A), 2 (type C), 3 (the rest).
    pub case: u8,
    /// The `e` and `m` of the smoothness term `e (e-1)^m`.
    pub e: BigUint,
    pub m: usize,
    /// Degree of `V`, used in case 3 only.
    pub delta_v: Option<BigUint>,
    pub chain_length: usize,
    pub components: BoundComponents,
    /// Maximum of the evaluated components.
    pub bound: BigUint,
    pub child: Option<Box<BoundReport>>,
}

impl BoundReport {
    /// The characteristic above which the whole tower of conditions holds:
    /// the maximum of this bound and every descendant's.
    pub fn overall_bound(&self) -> BigUint {
        let own = self.bound.clone();
        match &self.child {
            Some(c) => own.max(c.overall_bound()),
            None => own,
        }
    }

    /// True if some delta term in the tower was skipped.
    pub fn delta_pending(&self) -> bool {
        self.components.delta_term.is_none()
            || self.child.as_ref().is_some_and(|c| c.delta_pending())
    }

    pub fn depth(&self) -> usize {
        1 + self.child.as_ref().map_or(0, |c| c.depth())
    }

    /// Name of the component attaining the bound.
    pub fn binding_component(&self) -> &'static str {
        let c = &self.components;
        if c.delta_term.as_ref() == Some(&self.bound) {
            "delta_term"
        } else if c.smoothness_term == self.bound {
            "smoothness_term"
        } else {
            "index_term"
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BoundOptions {
    /// Leave every delta term unevaluated.
    pub skip_delta: bool,
    /// Replaces the chain length of the top-level delta term; descendants keep theirs.
    pub chain_length: Option<usize>,
}

/// The report for `s` at degree `d` with default options.
pub fn char_bound(s: &SpaceDescriptor, d: u64) -> Result<BoundReport> {
    char_bound_with(s, d, BoundOptions::default())
}

pub fn char_bound_with(s: &SpaceDescriptor, d: u64, options: BoundOptions) -> Result<BoundReport> {
    if d == 0 {
        return Err(Error::Parse("the degree d must be at least 1".into()));
    }
    let n = s.root_type.rank;
    let i = s.root_type.marked_node;
    let twist = BigUint::from(very_ample_twist(d));
    let (case, e, m, delta_v, child) = match s.root_type.type_label {
        TypeLabel::A => {
            let e = Pow::pow(&twist, n - 1) * binomial(BigUint::from(n - 1), BigUint::from(i - 1));
            (1u8, e, n - 1, None, None)
        }
        TypeLabel::C => {
            let e = Pow::pow(BigUint::from(d) * BigUint::from(d + 1), n - 1);
            (2u8, e, n - 1, None, None)
        }
        _ => {
            let m = s.vmrt.dim_v;
            let dv = vmrt_degree(&s.vmrt)?;
            let e = Pow::pow(&twist, m) * &dv;
            let VmrtKind::Cominuscule(inner) = &s.vmrt.kind else {
                return Err(Error::Internal(format!(
                    "{}: terminal VMRT in case 3",
                    s.name()
                )));
            };
            let child = char_bound_with(
                inner,
                very_ample_twist(d),
                BoundOptions {
                    skip_delta: options.skip_delta,
                    chain_length: None,
                },
            )?;
            (3u8, e, m, Some(dv), Some(Box::new(child)))
        }
    };
    let chain_length = options.chain_length.unwrap_or(s.dim);
    let delta_term = if options.skip_delta {
        None
    } else {
        let sp = space(&SpaceSpec::Named(s.family))?;
        Some(delta_i(&sp, chain_length)?)
    };
    let components = BoundComponents {
        smoothness_term: smoothness_bound(&e, m),
        index_term: BigUint::from(s.index),
        delta_term,
    };
    let mut bound = components
        .smoothness_term
        .clone()
        .max(components.index_term.clone());
    if let Some(x) = &components.delta_term {
        bound = bound.max(x.clone());
    }
    Ok(BoundReport {
        space: s.clone(),
        d,
        case,
        e,
        m,
        delta_v,
        chain_length,
        components,
        bound,
        child,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::describe_str;

    #[test]
    fn twist_and_smoothness() {
        assert_eq!(very_ample_twist(1), 1);
        assert_eq!(very_ample_twist(2), 3);
        assert_eq!(very_ample_twist(6), 21);
        let b = |x: u32| BigUint::from(x);
        assert_eq!(smoothness_bound(&b(2), 1), b(2));
        assert_eq!(smoothness_bound(&b(2), 3), b(2));
        assert_eq!(smoothness_bound(&b(6), 2), b(150));
    }

    #[test]
    fn gr24_case_one() {
        let r = char_bound(&describe_str("Gr(2,4)").unwrap(), 1).unwrap();
        assert_eq!(r.case, 1);
        assert_eq!(r.e, BigUint::from(2u32));
        assert_eq!(r.components.smoothness_term, BigUint::from(2u32));
        assert_eq!(r.components.index_term, BigUint::from(4u32));
        assert!(r.child.is_none());
    }

    #[test]
    fn lagrangian_case_two() {
        let r = char_bound(&describe_str("LG(3)").unwrap(), 2).unwrap();
        assert_eq!(r.case, 2);
        assert_eq!(r.e, BigUint::from(36u32));
    }

    #[test]
    fn e7_tower_shape() {
        let opts = BoundOptions {
            skip_delta: true,
            chain_length: None,
        };
        let r = char_bound_with(&describe_str("E7").unwrap(), 1, opts).unwrap();
        let mut names = Vec::new();
        let mut cur = Some(&r);
        while let Some(x) = cur {
            names.push((x.space.name(), x.case, x.d));
            cur = x.child.as_deref();
        }
        assert_eq!(
            names,
            [
                ("E7".to_string(), 3, 1),
                ("E6".to_string(), 3, 1),
                ("OG(5)".to_string(), 3, 1),
                ("Gr(2,5)".to_string(), 1, 1)
            ]
        );
        assert!(r.delta_pending());
    }

    #[test]
    fn vmrt_degrees() {
        assert_eq!(
            vmrt_degree(&describe_str("Gr(3,7)").unwrap().vmrt).unwrap(),
            BigUint::from(10u32)
        );
        assert_eq!(
            vmrt_degree(&describe_str("LG(4)").unwrap().vmrt).unwrap(),
            BigUint::from(8u32)
        );
        assert_eq!(
            vmrt_degree(&describe_str("E7").unwrap().vmrt).unwrap(),
            BigUint::from(78u32)
        );
    }
}
