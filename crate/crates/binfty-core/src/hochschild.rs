//! The deformation complex of a strictly associative (dg) algebra,
//! carrying its brace-operation structure.
//!
//! The carrier is the enumerated operator space `Hom(⊕_{m=1}^{N}
//! (sA)^⊗m, sA)` over the suspension `sA` (same basis, degrees lowered by
//! one). The product and differential transport to the suspension as
//! `μ̃(sa, sb) = (-1)^{|a|} s(a·b)` and `d̃(sa) = s(da)`, both of operator
//! degree +1, and assemble into the structure operator `m = μ̃ + d̃`.
//!
//! The algebra axioms — associativity, the derivation rule, `d² = 0` —
//! hold exactly when `m` satisfies the Maurer–Cartan equation of the bare
//! brace structure, which here reads `m{m} = 0`. Twisting by `m` then
//! gives the deformation complex: the brace family is unchanged and the
//! one-sided family becomes
//!
//! ```text
//! d^m_1(f)    = m{f} - (-1)^{|f|} f{m}
//! d^m_2(f, g) = m{f, g}
//! ```
//!
//! with all higher one-sided components vanishing identically.

use std::collections::BTreeMap;

use crate::algebra::AlgebraPresentation;
use crate::binfty::{mc_check, twisted_d_basis, BInftyOps};
use crate::check::ProbeOutcome;
use crate::error::{Error, Result};
use crate::graded::{EvalCtx, GradedSpace, Vector};
use crate::homspace::{HomSpace, OperatorBInfty};
use crate::linalg::neg_one_pow;
use crate::multimap::MultiMap;

/// Suspended copy of a graded space: identical basis indexing, names
/// prefixed with `s`, every degree lowered by one.
pub fn suspend(space: &GradedSpace) -> GradedSpace {
    GradedSpace::new(
        space
            .basis_indices()
            .map(|i| (format!("s{}", space.name(i)), space.degree(i) - 1))
            .collect(),
    )
    .expect("prefixing keeps names distinct")
}

/// The product transported to the suspension: `μ̃(sa, sb) = (-1)^{|a|}
/// s(a·b)`, an arity-2 map of degree +1 on the suspended space.
pub fn suspended_product(alg: &AlgebraPresentation) -> MultiMap {
    let space = alg.space();
    let mut map = MultiMap::new(2, 1);
    for a in space.basis_indices() {
        let sign = neg_one_pow(space.degree(a));
        for b in space.basis_indices() {
            let val = alg.mul_basis(a, b).scale(&sign);
            if !val.is_zero() {
                map.set_entry(vec![a, b], val);
            }
        }
    }
    map
}

/// The differential transported to the suspension: `d̃(sa) = s(da)`, an
/// arity-1 map of degree +1 on the suspended space; `None` when the
/// presentation has no differential.
pub fn suspended_differential(alg: &AlgebraPresentation) -> Option<MultiMap> {
    let diff = alg.differential()?;
    let mut map = MultiMap::new(1, 1);
    for a in alg.space().basis_indices() {
        let val = diff.apply_basis(&[a]);
        if !val.is_zero() {
            map.set_entry(vec![a], val);
        }
    }
    if map.is_zero() {
        None
    } else {
        Some(map)
    }
}

/// The structure operator `m = μ̃ + d̃` as a degree-1 vector in an
/// operator space whose letters are the suspension of the algebra.
pub fn structure_operator(alg: &AlgebraPresentation, hom: &HomSpace) -> Result<Vector> {
    let mut fams: BTreeMap<usize, MultiMap> = BTreeMap::new();
    fams.insert(2, suspended_product(alg));
    if let Some(d) = suspended_differential(alg) {
        fams.insert(1, d);
    }
    hom.from_families(&fams)
}

/// The deformation complex of an associative (dg) algebra: the operator
/// space over its suspension, twisted by the structure operator.
#[derive(Debug, Clone)]
pub struct HochschildBInfty {
    base: OperatorBInfty,
    mc: Vector,
    algebra: AlgebraPresentation,
}

impl HochschildBInfty {
    /// Build the complex with operator arities up to `max_arity` (at
    /// least 3, so the square of the structure operator is fully visible
    /// at this truncation). The axioms of the presentation are re-derived
    /// here rather than assumed: construction fails with
    /// [`Error::NotMaurerCartan`] unless the structure operator squares
    /// to zero under braces, which is equivalent to associativity, the
    /// derivation rule, and the differential squaring to zero.
    pub fn new(alg: &AlgebraPresentation, max_arity: usize) -> Result<Self> {
        let hs = Self::new_unchecked(alg, max_arity)?;
        match mc_check(&hs.base, &hs.mc)? {
            ProbeOutcome::Pass => Ok(hs),
            ProbeOutcome::Fail { .. } => Err(Error::NotMaurerCartan(format!(
                "structure operator of `{}` does not square to zero; the \
                 presentation violates an algebra axiom",
                hs.algebra.name()
            ))),
            ProbeOutcome::Skipped { .. } => Err(Error::TruncationUnsound(format!(
                "arity bound {max_arity} cannot certify the structure \
                 operator of `{}`",
                hs.algebra.name()
            ))),
        }
    }

    /// As [`HochschildBInfty::new`] but without the square-zero
    /// validation, for inspecting the defect of an invalid presentation.
    pub fn new_unchecked(alg: &AlgebraPresentation, max_arity: usize) -> Result<Self> {
        if max_arity < 3 {
            return Err(Error::InvalidData(format!(
                "operator arity bound must be at least 3, got {max_arity}"
            )));
        }
        let base = OperatorBInfty::new(suspend(alg.space()), max_arity);
        let mc = structure_operator(alg, base.hom())?;
        Ok(HochschildBInfty {
            base,
            mc,
            algebra: alg.clone(),
        })
    }

    /// The underlying enumerated operator space.
    pub fn hom(&self) -> &HomSpace {
        self.base.hom()
    }

    /// The untwisted brace structure.
    pub fn base(&self) -> &OperatorBInfty {
        &self.base
    }

    /// The structure operator `m = μ̃ + d̃`.
    pub fn structure(&self) -> &Vector {
        &self.mc
    }

    /// The presentation this complex was built from.
    pub fn algebra(&self) -> &AlgebraPresentation {
        &self.algebra
    }

    /// Square of the structure operator under braces (zero for a valid
    /// presentation); exposed for reporting on invalid input.
    pub fn structure_defect(&self, ctx: &mut EvalCtx) -> Vector {
        crate::binfty::mc_defect(&self.base, &self.mc, ctx)
    }
}

impl BInftyOps for HochschildBInfty {
    fn carrier(&self) -> &GradedSpace {
        self.base.carrier()
    }

    fn b_basis(&self, us: &[u32], vs: &[u32], ctx: &mut EvalCtx) -> Vector {
        self.base.b_basis(us, vs, ctx)
    }

    fn d_basis(&self, vs: &[u32], ctx: &mut EvalCtx) -> Vector {
        twisted_d_basis(&self.base, &self.mc, vs, ctx)
    }
}
