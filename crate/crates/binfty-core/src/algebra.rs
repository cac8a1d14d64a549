//! Presentations of differential graded associative algebras by finite
//! multiplication tables, and morphisms between them. Everything is
//! validated pointwise on basis probes: associativity, the derivation
//! property of the differential, its square vanishing, unitality, and for
//! morphisms multiplicativity and chain-map compatibility.

use crate::check::{conclude, describe_probe, IdentityCheck};
use crate::error::{Error, Result};
use crate::graded::{EvalCtx, GradedSpace, Vector};
use crate::linalg::neg_one_pow;
use crate::multimap::{matrix_of_map, MultiMap};

/// A dg associative algebra given by tables: product (arity 2, degree 0),
/// optional differential (arity 1, degree +1), optional unit element.
#[derive(Debug, Clone)]
pub struct AlgebraPresentation {
    name: String,
    space: GradedSpace,
    product: MultiMap,
    differential: Option<MultiMap>,
    unit: Option<Vector>,
}

impl AlgebraPresentation {
    pub fn new(
        name: impl Into<String>,
        space: GradedSpace,
        product: MultiMap,
        differential: Option<MultiMap>,
        unit: Option<Vector>,
    ) -> Result<Self> {
        if product.arity() != 2 || product.degree() != 0 {
            return Err(Error::InvalidData(
                "product must have arity 2 and degree 0".into(),
            ));
        }
        product.check_degree(&space)?;
        if let Some(d) = &differential {
            if d.arity() != 1 || d.degree() != 1 {
                return Err(Error::InvalidData(
                    "differential must have arity 1 and degree 1".into(),
                ));
            }
            d.check_degree(&space)?;
        }
        Ok(AlgebraPresentation {
            name: name.into(),
            space,
            product,
            differential,
            unit,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn product(&self) -> &MultiMap {
        &self.product
    }

    pub fn differential(&self) -> Option<&MultiMap> {
        self.differential.as_ref()
    }

    pub fn unit(&self) -> Option<&Vector> {
        self.unit.as_ref()
    }

    pub fn mul(&self, a: &Vector, b: &Vector) -> Vector {
        self.product.apply(&[a.clone(), b.clone()])
    }

    pub fn mul_basis(&self, a: u32, b: u32) -> Vector {
        self.product.apply_basis(&[a, b])
    }

    pub fn d(&self, a: &Vector) -> Vector {
        match &self.differential {
            Some(d) => d.apply(std::slice::from_ref(a)),
            None => Vector::zero(),
        }
    }

    pub fn d_basis(&self, a: u32) -> Vector {
        match &self.differential {
            Some(d) => d.apply_basis(&[a]),
            None => Vector::zero(),
        }
    }
}

/// Pointwise validation of the algebra axioms on all basis probes.
pub fn validate_algebra(alg: &AlgebraPresentation) -> Vec<IdentityCheck> {
    let sp = alg.space();
    let ctx = EvalCtx::new();
    let mut checks = Vec::new();
    let dim = sp.dim() as u32;
    for a in 0..dim {
        for b in 0..dim {
            for c in 0..dim {
                let lhs = alg.mul(&alg.mul_basis(a, b), &Vector::basis(c));
                let rhs = alg.mul(&Vector::basis(a), &alg.mul_basis(b, c));
                checks.push(IdentityCheck {
                    identity: "algebra-associativity",
                    probe: describe_probe(sp, &[&[a], &[b], &[c]]),
                    outcome: conclude(lhs, rhs, &ctx),
                });
            }
        }
    }
    if alg.differential().is_some() {
        for a in 0..dim {
            let lhs = alg.d(&alg.d_basis(a));
            checks.push(IdentityCheck {
                identity: "differential-squares-to-zero",
                probe: describe_probe(sp, &[&[a]]),
                outcome: conclude(lhs, Vector::zero(), &ctx),
            });
        }
        for a in 0..dim {
            for b in 0..dim {
                let lhs = alg.d(&alg.mul_basis(a, b));
                let mut rhs = alg.mul(&alg.d_basis(a), &Vector::basis(b));
                let sign = neg_one_pow(sp.degree(a));
                rhs.add_scaled(&alg.mul(&Vector::basis(a), &alg.d_basis(b)), &sign);
                checks.push(IdentityCheck {
                    identity: "differential-derivation",
                    probe: describe_probe(sp, &[&[a], &[b]]),
                    outcome: conclude(lhs, rhs, &ctx),
                });
            }
        }
    }
    if let Some(u) = alg.unit() {
        for a in 0..dim {
            let left = alg.mul(u, &Vector::basis(a));
            checks.push(IdentityCheck {
                identity: "unit-left",
                probe: describe_probe(sp, &[&[a]]),
                outcome: conclude(left, Vector::basis(a), &ctx),
            });
            let right = alg.mul(&Vector::basis(a), u);
            checks.push(IdentityCheck {
                identity: "unit-right",
                probe: describe_probe(sp, &[&[a]]),
                outcome: conclude(right, Vector::basis(a), &ctx),
            });
        }
    }
    checks
}

/// Validate and return an error naming the first broken axiom, if any.
pub fn require_valid_algebra(alg: &AlgebraPresentation) -> Result<()> {
    for check in validate_algebra(alg) {
        if check.outcome.is_fail() {
            return Err(match check.identity {
                "algebra-associativity" => Error::NotAssociative(format!(
                    "{} fails associativity at {}",
                    alg.name(),
                    check.probe
                )),
                other => Error::InvalidData(format!(
                    "{} fails {} at {}",
                    alg.name(),
                    other,
                    check.probe
                )),
            });
        }
    }
    Ok(())
}

/// A degree-0 linear map between algebra presentations.
#[derive(Debug, Clone)]
pub struct AlgebraMorphism {
    name: String,
    dom: AlgebraPresentation,
    cod: AlgebraPresentation,
    map: MultiMap,
}

impl AlgebraMorphism {
    pub fn new(
        name: impl Into<String>,
        dom: AlgebraPresentation,
        cod: AlgebraPresentation,
        map: MultiMap,
    ) -> Result<Self> {
        if map.arity() != 1 || map.degree() != 0 {
            return Err(Error::NotAMorphismDatum(
                "a morphism is a single arity-1 degree-0 map".into(),
            ));
        }
        map.check_degree_with(
            |_, i| dom.space().degree(i),
            |i| cod.space().degree(i),
        )
        .map_err(|_| {
            Error::NotAMorphismDatum("morphism does not respect the grading".into())
        })?;
        Ok(AlgebraMorphism { name: name.into(), dom, cod, map })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dom(&self) -> &AlgebraPresentation {
        &self.dom
    }

    pub fn cod(&self) -> &AlgebraPresentation {
        &self.cod
    }

    pub fn map(&self) -> &MultiMap {
        &self.map
    }

    pub fn apply(&self, a: &Vector) -> Vector {
        self.map.apply(std::slice::from_ref(a))
    }

    pub fn apply_basis(&self, a: u32) -> Vector {
        self.map.apply_basis(&[a])
    }

    /// Matrix in the two bases (columns: domain basis order).
    pub fn matrix(&self) -> crate::linalg::SparseMatrix {
        matrix_of_map(self.dom.space().dim(), self.cod.space().dim(), |j| {
            self.map.apply_basis(&[j])
        })
    }

    pub fn is_injective(&self) -> bool {
        self.matrix().rank() == self.dom.space().dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.matrix().rank() == self.cod.space().dim()
    }
}

/// Pointwise validation of the morphism axioms.
pub fn validate_morphism(f: &AlgebraMorphism) -> Vec<IdentityCheck> {
    let ctx = EvalCtx::new();
    let dom = f.dom().space();
    let mut checks = Vec::new();
    let dim = dom.dim() as u32;
    for a in 0..dim {
        for b in 0..dim {
            let lhs = f.apply(&f.dom().mul_basis(a, b));
            let rhs = f.cod().mul(&f.apply_basis(a), &f.apply_basis(b));
            checks.push(IdentityCheck {
                identity: "morphism-multiplicative",
                probe: describe_probe(dom, &[&[a], &[b]]),
                outcome: conclude(lhs, rhs, &ctx),
            });
        }
    }
    for a in 0..dim {
        let lhs = f.apply(&f.dom().d_basis(a));
        let rhs = f.cod().d(&f.apply_basis(a));
        checks.push(IdentityCheck {
            identity: "morphism-chain-map",
            probe: describe_probe(dom, &[&[a]]),
            outcome: conclude(lhs, rhs, &ctx),
        });
    }
    if let (Some(du), Some(cu)) = (f.dom().unit(), f.cod().unit()) {
        checks.push(IdentityCheck {
            identity: "morphism-unital",
            probe: "(unit)".into(),
            outcome: conclude(f.apply(du), cu.clone(), &ctx),
        });
    }
    checks
}

pub fn require_valid_morphism(f: &AlgebraMorphism) -> Result<()> {
    require_valid_algebra(f.dom())?;
    require_valid_algebra(f.cod())?;
    for check in validate_morphism(f) {
        if check.outcome.is_fail() {
            return Err(Error::NotAMorphismDatum(format!(
                "{} fails {} at {}",
                f.name(),
                check.identity,
                check.probe
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::CheckSummary;
    use crate::linalg::rat_int;

    fn dual_numbers() -> AlgebraPresentation {
        let sp = GradedSpace::from_pairs(&[("1", 0), ("e", 0)]);
        let mut prod = MultiMap::new(2, 0);
        prod.set_entry(vec![0, 0], Vector::basis(0));
        prod.set_entry(vec![0, 1], Vector::basis(1));
        prod.set_entry(vec![1, 0], Vector::basis(1));
        AlgebraPresentation::new("dual-numbers", sp, prod, None, Some(Vector::basis(0)))
            .unwrap()
    }

    fn exterior_dg() -> AlgebraPresentation {
        let sp = GradedSpace::from_pairs(&[("1", 0), ("th", -1)]);
        let mut prod = MultiMap::new(2, 0);
        prod.set_entry(vec![0, 0], Vector::basis(0));
        prod.set_entry(vec![0, 1], Vector::basis(1));
        prod.set_entry(vec![1, 0], Vector::basis(1));
        let mut d = MultiMap::new(1, 1);
        d.set_entry(vec![1], Vector::basis(0));
        AlgebraPresentation::new("exterior-dg", sp, prod, Some(d), Some(Vector::basis(0)))
            .unwrap()
    }

    #[test]
    fn valid_algebras_validate() {
        let s = CheckSummary::of(&validate_algebra(&dual_numbers()));
        assert!(s.all_passed());
        let s = CheckSummary::of(&validate_algebra(&exterior_dg()));
        assert!(s.all_passed());
        require_valid_algebra(&exterior_dg()).unwrap();
    }

    #[test]
    fn derivation_identity_sign_matters() {
        // d(th·th) = 0 must equal d(th)·th + (-1)^{|th|} th·d(th)
        //          = th - th = 0 only thanks to the sign.
        let alg = exterior_dg();
        let theta = Vector::basis(1);
        let lhs = alg.d(&alg.mul(&theta, &theta));
        assert!(lhs.is_zero());
        let mut rhs = alg.mul(&alg.d(&theta), &theta);
        rhs.add_scaled(&alg.mul(&theta, &alg.d(&theta)), &neg_one_pow(-1));
        assert!(rhs.is_zero());
    }

    #[test]
    fn invalid_algebra_is_reported() {
        let sp = GradedSpace::from_pairs(&[("1", 0), ("e", 0)]);
        let mut prod = MultiMap::new(2, 0);
        prod.set_entry(vec![0, 0], Vector::basis(0));
        prod.set_entry(vec![0, 1], Vector::basis(1));
        prod.set_entry(vec![1, 1], Vector::basis(0)); // e·1 = 0 but e·e = 1
        let alg =
            AlgebraPresentation::new("broken", sp, prod, None, None).unwrap();
        assert!(matches!(
            require_valid_algebra(&alg),
            Err(Error::NotAssociative(_))
        ));
    }

    #[test]
    fn morphism_validation_and_rank() {
        // Unit inclusion k -> dual numbers.
        let ground = {
            let sp = GradedSpace::from_pairs(&[("1", 0)]);
            let mut prod = MultiMap::new(2, 0);
            prod.set_entry(vec![0, 0], Vector::basis(0));
            AlgebraPresentation::new("ground", sp, prod, None, Some(Vector::basis(0)))
                .unwrap()
        };
        let mut map = MultiMap::new(1, 0);
        map.set_entry(vec![0], Vector::basis(0));
        let f = AlgebraMorphism::new("unit-inclusion", ground, dual_numbers(), map)
            .unwrap();
        require_valid_morphism(&f).unwrap();
        assert!(f.is_injective());
        assert!(!f.is_surjective());
    }

    #[test]
    fn non_multiplicative_map_fails() {
        let alg = dual_numbers();
        let mut map = MultiMap::new(1, 0);
        map.set_entry(vec![0], Vector::basis(0));
        map.set_entry(vec![1], Vector::basis(0)); // e -> 1 is not multiplicative
        let f = AlgebraMorphism::new("bad", alg.clone(), alg, map).unwrap();
        let failed = validate_morphism(&f)
            .into_iter()
            .filter(|c| c.outcome.is_fail())
            .count();
        assert!(failed > 0); // f(e·e) = f(0) = 0 but f(e)f(e) = 1
        assert!(require_valid_morphism(&f).is_err());
    }

    #[test]
    fn constructor_rejects_bad_data() {
        let sp = GradedSpace::from_pairs(&[("1", 0)]);
        assert!(AlgebraPresentation::new(
            "bad",
            sp.clone(),
            MultiMap::new(1, 0),
            None,
            None
        )
        .is_err());
        let mut degree_violating = MultiMap::new(2, 0);
        degree_violating.set_entry(vec![0, 0], Vector::basis(0).scale(&rat_int(1)));
        let sp2 = GradedSpace::from_pairs(&[("x", 1)]);
        assert!(AlgebraPresentation::new(
            "bad2",
            sp2,
            degree_violating,
            None,
            None
        )
        .is_err());
    }
}
