//! A small catalog of concrete algebras and morphisms used by the test
//! suites and the command-line interface. All instances validate against
//! the pointwise axiom checks.

use crate::algebra::{AlgebraMorphism, AlgebraPresentation};
use crate::error::{Error, Result};
use crate::graded::{GradedSpace, Vector};
use crate::multimap::MultiMap;

/// The ground field as a one-dimensional algebra.
pub fn ground_field() -> AlgebraPresentation {
    let sp = GradedSpace::from_pairs(&[("1", 0)]);
    let mut prod = MultiMap::new(2, 0);
    prod.set_entry(vec![0, 0], Vector::basis(0));
    AlgebraPresentation::new("ground-field", sp, prod, None, Some(Vector::basis(0)))
        .expect("ground field is well-formed")
}

/// Dual numbers: 1 and e with e² = 0, all in degree 0.
pub fn dual_numbers() -> AlgebraPresentation {
    let sp = GradedSpace::from_pairs(&[("1", 0), ("e", 0)]);
    let mut prod = MultiMap::new(2, 0);
    prod.set_entry(vec![0, 0], Vector::basis(0));
    prod.set_entry(vec![0, 1], Vector::basis(1));
    prod.set_entry(vec![1, 0], Vector::basis(1));
    AlgebraPresentation::new("dual-numbers", sp, prod, None, Some(Vector::basis(0)))
        .expect("dual numbers are well-formed")
}

/// Truncated polynomials 1, x, x² with x³ = 0.
pub fn truncated_polynomials() -> AlgebraPresentation {
    let sp = GradedSpace::from_pairs(&[("1", 0), ("x", 0), ("x2", 0)]);
    let mut prod = MultiMap::new(2, 0);
    for i in 0..3u32 {
        for j in 0..3u32 {
            if i + j < 3 {
                prod.set_entry(vec![i, j], Vector::basis(i + j));
            }
        }
    }
    AlgebraPresentation::new(
        "truncated-polynomials",
        sp,
        prod,
        None,
        Some(Vector::basis(0)),
    )
    .expect("truncated polynomials are well-formed")
}

/// Upper-triangular 2×2 matrices: e11, e12, e22 (noncommutative).
pub fn upper_triangular() -> AlgebraPresentation {
    let sp = GradedSpace::from_pairs(&[("e11", 0), ("e12", 0), ("e22", 0)]);
    let mut prod = MultiMap::new(2, 0);
    prod.set_entry(vec![0, 0], Vector::basis(0)); // e11 e11 = e11
    prod.set_entry(vec![0, 1], Vector::basis(1)); // e11 e12 = e12
    prod.set_entry(vec![1, 2], Vector::basis(1)); // e12 e22 = e12
    prod.set_entry(vec![2, 2], Vector::basis(2)); // e22 e22 = e22
    let unit = Vector::basis(0).add(&Vector::basis(2));
    AlgebraPresentation::new("upper-triangular", sp, prod, None, Some(unit))
        .expect("upper-triangular matrices are well-formed")
}

/// Group algebra of the two-element group: 1 and g with g² = 1.
pub fn group_algebra_c2() -> AlgebraPresentation {
    let sp = GradedSpace::from_pairs(&[("1", 0), ("g", 0)]);
    let mut prod = MultiMap::new(2, 0);
    prod.set_entry(vec![0, 0], Vector::basis(0));
    prod.set_entry(vec![0, 1], Vector::basis(1));
    prod.set_entry(vec![1, 0], Vector::basis(1));
    prod.set_entry(vec![1, 1], Vector::basis(0));
    AlgebraPresentation::new("group-algebra-c2", sp, prod, None, Some(Vector::basis(0)))
        .expect("group algebra is well-formed")
}

/// Exterior line with a differential: 1 and th, |th| = −1, th² = 0,
/// d(th) = 1. A contractible dg algebra.
pub fn exterior_line_dg() -> AlgebraPresentation {
    let sp = GradedSpace::from_pairs(&[("1", 0), ("th", -1)]);
    let mut prod = MultiMap::new(2, 0);
    prod.set_entry(vec![0, 0], Vector::basis(0));
    prod.set_entry(vec![0, 1], Vector::basis(1));
    prod.set_entry(vec![1, 0], Vector::basis(1));
    let mut d = MultiMap::new(1, 1);
    d.set_entry(vec![1], Vector::basis(0));
    AlgebraPresentation::new("exterior-line-dg", sp, prod, Some(d), Some(Vector::basis(0)))
        .expect("exterior line is well-formed")
}

/// One-dimensional non-unital algebra spanned by an idempotent t² = t.
pub fn idempotent_line() -> AlgebraPresentation {
    let sp = GradedSpace::from_pairs(&[("t", 0)]);
    let mut prod = MultiMap::new(2, 0);
    prod.set_entry(vec![0, 0], Vector::basis(0));
    AlgebraPresentation::new("idempotent-line", sp, prod, None, None)
        .expect("idempotent line is well-formed")
}

/// Identity morphism of any presentation.
pub fn identity_morphism(alg: &AlgebraPresentation) -> AlgebraMorphism {
    AlgebraMorphism::new(
        format!("id-{}", alg.name()),
        alg.clone(),
        alg.clone(),
        MultiMap::identity(alg.space()),
    )
    .expect("identity is a morphism")
}

/// Unit inclusion of the ground field into a unital algebra.
pub fn unit_inclusion(cod: &AlgebraPresentation) -> Result<AlgebraMorphism> {
    let unit = cod
        .unit()
        .ok_or_else(|| Error::InvalidData(format!("{} has no unit", cod.name())))?
        .clone();
    let mut map = MultiMap::new(1, 0);
    map.set_entry(vec![0], unit);
    AlgebraMorphism::new(
        format!("unit-into-{}", cod.name()),
        ground_field(),
        cod.clone(),
        map,
    )
}

/// Surjection from truncated polynomials onto dual numbers: x ↦ e,
/// x² ↦ 0. Not injective.
pub fn truncation_surjection() -> AlgebraMorphism {
    let dom = truncated_polynomials();
    let cod = dual_numbers();
    let mut map = MultiMap::new(1, 0);
    map.set_entry(vec![0], Vector::basis(0));
    map.set_entry(vec![1], Vector::basis(1));
    // x² ↦ 0.
    AlgebraMorphism::new("truncation-onto-dual", dom, cod, map)
        .expect("truncation surjection is well-formed")
}

/// Unit inclusion of the ground field into the exterior dg line. (The
/// augmentation in the other direction is *not* a chain map here, since
/// d th = 1 would have to map to a nonzero differential on the ground
/// field; the contractible line admits no dg map onto the field.)
pub fn exterior_unit_inclusion() -> AlgebraMorphism {
    unit_inclusion(&exterior_line_dg()).expect("exterior dg line is unital")
}

/// All catalog algebras, for iteration in tests and the CLI.
pub fn all_algebras() -> Vec<AlgebraPresentation> {
    vec![
        ground_field(),
        dual_numbers(),
        truncated_polynomials(),
        upper_triangular(),
        group_algebra_c2(),
        exterior_line_dg(),
        idempotent_line(),
    ]
}

/// Look up a catalog algebra by name.
pub fn algebra_by_name(name: &str) -> Result<AlgebraPresentation> {
    all_algebras()
        .into_iter()
        .find(|a| a.name() == name)
        .ok_or_else(|| Error::InvalidData(format!("unknown catalog algebra `{name}`")))
}

/// All catalog morphisms.
pub fn all_morphisms() -> Vec<AlgebraMorphism> {
    let mut out = vec![
        identity_morphism(&dual_numbers()),
        identity_morphism(&upper_triangular()),
        truncation_surjection(),
        exterior_unit_inclusion(),
    ];
    for alg in [dual_numbers(), truncated_polynomials(), group_algebra_c2()] {
        out.push(unit_inclusion(&alg).expect("catalog algebras are unital"));
    }
    out
}

pub fn morphism_by_name(name: &str) -> Result<AlgebraMorphism> {
    all_morphisms()
        .into_iter()
        .find(|m| m.name() == name)
        .ok_or_else(|| Error::InvalidData(format!("unknown catalog morphism `{name}`")))
}
