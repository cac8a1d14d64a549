//! The diagram algebra of an algebra morphism, the subcomplex of
//! compatible cochain pairs, and the comparison map between their
//! deformation complexes.
//!
//! For a morphism `f: A → B` the diagram algebra `D` has carrier
//! `A ⊕ B ⊕ B′` (`B′` a second graded copy of `B`) with product
//!
//! ```text
//! (a1+b1+b′1)·(a2+b2+b′2) = a1a2 + b1b2 + (b1·b′2 + b′1·f(a2))′ ,
//! ```
//!
//! differential acting componentwise (the `B′` copy repeats `B`'s), and
//! unit `1_A + 1_B` when both algebras are unital. Associativity and the
//! Leibniz rule for `D` follow from the axioms of `A` and `B` together
//! with the morphism laws for `f`; the constructor revalidates all of
//! them pointwise rather than assuming them.
//!
//! A pair of operator cochains `(α, β)` over the suspensions `sA`, `sB`
//! is *compatible* when `f̃ ∘ α_n = β_n ∘ f̃^⊗n` for every arity `n`,
//! where `f̃` is the (degree-0) suspension of `f`. The compatibility
//! constraint is linear and arity-diagonal, so membership is decided
//! exactly and a canonical basis of the solution space is computed per
//! arity. Compatible pairs sit inside the product structure on the two
//! deformation complexes, which acts factorwise with all mixed
//! components equal to zero.
//!
//! The comparison map sends a pair `(α, β)` to the cochain on `sD` that
//! restricts to `α` on pure-`A` tuples, to `β` on pure-`B` tuples, takes
//! the value
//!
//! ```text
//! (b_1, …, b_p, b′, a_1, …, a_q) ↦ (β(b_1, …, b_p, b, f̃a_1, …, f̃a_q))′
//! ```
//!
//! on tuples with exactly one primed letter followed only by `A`-letters,
//! and vanishes on every other tuple shape. On compatible pairs it
//! intertwines the brace family and the one-sided family strictly;
//! [`DiagramComparison::verify`] checks this pointwise on sampled
//! compatible probes. The construction is exposed only for injective
//! `f`, the hypothesis under which the comparison identifies the pair
//! complex with its image.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::{
    require_valid_algebra, require_valid_morphism, AlgebraMorphism, AlgebraPresentation,
};
use crate::binfty::{b_apply, d_apply, BInftyOps};
use crate::check::{conclude, IdentityCheck};
use crate::error::{Error, Result};
use crate::graded::{EvalCtx, GradedSpace, Vector};
use crate::hochschild::HochschildBInfty;
use crate::linalg::{Rational, SparseMatrix};
use crate::multimap::MultiMap;
use crate::probe::{exhaustive_tuples, ProbeGen};

/// Which summand of the diagram algebra a basis index lies in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagramPart {
    A(u32),
    B(u32),
    BPrime(u32),
}

/// The diagram algebra `A ⊕ B ⊕ B′` of a morphism `f: A → B`.
#[derive(Debug, Clone)]
pub struct DiagramAlgebra {
    present: AlgebraPresentation,
    f: AlgebraMorphism,
    a_dim: u32,
    b_dim: u32,
}

impl DiagramAlgebra {
    /// Build the diagram algebra. The domain, the codomain, and the
    /// morphism laws are validated first; the axioms of the result are
    /// then revalidated pointwise (they are implied, and this checks the
    /// implication on every basis probe).
    pub fn new(f: &AlgebraMorphism) -> Result<Self> {
        require_valid_algebra(f.dom())?;
        require_valid_algebra(f.cod())?;
        require_valid_morphism(f)?;
        let dom = f.dom().space();
        let cod = f.cod().space();
        let a_dim = dom.dim() as u32;
        let b_dim = cod.dim() as u32;

        let mut names: Vec<(String, i64)> = Vec::new();
        for i in dom.basis_indices() {
            names.push((format!("A:{}", dom.name(i)), dom.degree(i)));
        }
        for i in cod.basis_indices() {
            names.push((format!("B:{}", cod.name(i)), cod.degree(i)));
        }
        for i in cod.basis_indices() {
            names.push((format!("B':{}", cod.name(i)), cod.degree(i)));
        }
        let space = GradedSpace::new(names)?;

        let a_index = |i: u32| i;
        let b_index = |i: u32| a_dim + i;
        let bp_index = |i: u32| a_dim + b_dim + i;
        let embed = |v: &Vector, off: fn(u32, u32, u32) -> u32, a: u32, b: u32| {
            Vector::from_coords(v.iter().map(|(i, c)| (off(i, a, b), c.clone())))
        };
        fn off_a(i: u32, _a: u32, _b: u32) -> u32 {
            i
        }
        fn off_b(i: u32, a: u32, _b: u32) -> u32 {
            a + i
        }
        fn off_bp(i: u32, a: u32, b: u32) -> u32 {
            a + b + i
        }

        let mut product = MultiMap::new(2, 0);
        for x in dom.basis_indices() {
            for y in dom.basis_indices() {
                let val = embed(&f.dom().mul_basis(x, y), off_a, a_dim, b_dim);
                if !val.is_zero() {
                    product.set_entry(vec![a_index(x), a_index(y)], val);
                }
            }
        }
        for x in cod.basis_indices() {
            for y in cod.basis_indices() {
                let prod = f.cod().mul_basis(x, y);
                let val = embed(&prod, off_b, a_dim, b_dim);
                if !val.is_zero() {
                    product.set_entry(vec![b_index(x), b_index(y)], val);
                }
                let val = embed(&prod, off_bp, a_dim, b_dim);
                if !val.is_zero() {
                    product.set_entry(vec![b_index(x), bp_index(y)], val);
                }
            }
        }
        for x in cod.basis_indices() {
            for y in dom.basis_indices() {
                let prod = f
                    .cod()
                    .product()
                    .apply(&[Vector::basis(x), f.apply_basis(y)]);
                let val = embed(&prod, off_bp, a_dim, b_dim);
                if !val.is_zero() {
                    product.set_entry(vec![bp_index(x), a_index(y)], val);
                }
            }
        }

        let mut differential = MultiMap::new(1, 1);
        for x in dom.basis_indices() {
            let val = embed(&f.dom().d_basis(x), off_a, a_dim, b_dim);
            if !val.is_zero() {
                differential.set_entry(vec![a_index(x)], val);
            }
        }
        for x in cod.basis_indices() {
            let dx = f.cod().d_basis(x);
            let val = embed(&dx, off_b, a_dim, b_dim);
            if !val.is_zero() {
                differential.set_entry(vec![b_index(x)], val);
            }
            let val = embed(&dx, off_bp, a_dim, b_dim);
            if !val.is_zero() {
                differential.set_entry(vec![bp_index(x)], val);
            }
        }
        let differential = if differential.is_zero() {
            None
        } else {
            Some(differential)
        };

        let unit = match (f.dom().unit(), f.cod().unit()) {
            (Some(ua), Some(ub)) => {
                let mut u = embed(ua, off_a, a_dim, b_dim);
                u = u.add(&embed(ub, off_b, a_dim, b_dim));
                Some(u)
            }
            _ => None,
        };

        let present = AlgebraPresentation::new(
            format!("diagram-of-{}", f.name()),
            space,
            product,
            differential,
            unit,
        )?;
        require_valid_algebra(&present)?;
        Ok(DiagramAlgebra {
            present,
            f: f.clone(),
            a_dim,
            b_dim,
        })
    }

    pub fn presentation(&self) -> &AlgebraPresentation {
        &self.present
    }

    pub fn morphism(&self) -> &AlgebraMorphism {
        &self.f
    }

    pub fn a_index(&self, i: u32) -> u32 {
        i
    }

    pub fn b_index(&self, i: u32) -> u32 {
        self.a_dim + i
    }

    pub fn bp_index(&self, i: u32) -> u32 {
        self.a_dim + self.b_dim + i
    }

    pub fn part(&self, idx: u32) -> DiagramPart {
        if idx < self.a_dim {
            DiagramPart::A(idx)
        } else if idx < self.a_dim + self.b_dim {
            DiagramPart::B(idx - self.a_dim)
        } else {
            DiagramPart::BPrime(idx - self.a_dim - self.b_dim)
        }
    }
}

/// The product of the deformation complexes of two algebras: braces and
/// the one-sided family act factor by factor, and every component with
/// inputs from both factors is zero (exactly, not by truncation).
#[derive(Debug, Clone)]
pub struct PairComplex {
    a: HochschildBInfty,
    b: HochschildBInfty,
    space: GradedSpace,
    a_dim: u32,
}

impl PairComplex {
    pub fn new(
        dom: &AlgebraPresentation,
        cod: &AlgebraPresentation,
        max_arity: usize,
    ) -> Result<Self> {
        let a = HochschildBInfty::new(dom, max_arity)?;
        let b = HochschildBInfty::new(cod, max_arity)?;
        let mut names: Vec<(String, i64)> = Vec::new();
        for i in a.carrier().basis_indices() {
            names.push((format!("A|{}", a.carrier().name(i)), a.carrier().degree(i)));
        }
        for i in b.carrier().basis_indices() {
            names.push((format!("B|{}", b.carrier().name(i)), b.carrier().degree(i)));
        }
        let space = GradedSpace::new(names)?;
        let a_dim = a.carrier().dim() as u32;
        Ok(PairComplex { a, b, space, a_dim })
    }

    pub fn factor_a(&self) -> &HochschildBInfty {
        &self.a
    }

    pub fn factor_b(&self) -> &HochschildBInfty {
        &self.b
    }

    /// Dimension of the first factor's carrier (offset of the second).
    pub fn a_dim(&self) -> u32 {
        self.a_dim
    }

    /// Embed a first-factor vector (indices are unchanged).
    pub fn lift_a(&self, v: &Vector) -> Vector {
        v.clone()
    }

    /// Embed a second-factor vector (indices shift by the offset).
    pub fn lift_b(&self, v: &Vector) -> Vector {
        Vector::from_coords(v.iter().map(|(i, c)| (self.a_dim + i, c.clone())))
    }

    /// Split a pair vector into its factor components, in factor
    /// coordinates.
    pub fn split(&self, v: &Vector) -> (Vector, Vector) {
        let mut va = Vector::zero();
        let mut vb = Vector::zero();
        for (i, c) in v.iter() {
            if i < self.a_dim {
                va.add_term(i, c);
            } else {
                vb.add_term(i - self.a_dim, c);
            }
        }
        (va, vb)
    }

    fn same_part(&self, indices: impl Iterator<Item = u32> + Clone) -> Option<bool> {
        let mut iter = indices;
        let first = iter.next()?;
        let in_a = first < self.a_dim;
        if iter.all(|i| (i < self.a_dim) == in_a) {
            Some(in_a)
        } else {
            None
        }
    }
}

impl BInftyOps for PairComplex {
    fn carrier(&self) -> &GradedSpace {
        &self.space
    }

    fn b_basis(&self, us: &[u32], vs: &[u32], ctx: &mut EvalCtx) -> Vector {
        let all = us.iter().chain(vs.iter()).copied();
        match self.same_part(all) {
            Some(true) => self.a.b_basis(us, vs, ctx),
            Some(false) => {
                let us: Vec<u32> = us.iter().map(|&i| i - self.a_dim).collect();
                let vs: Vec<u32> = vs.iter().map(|&i| i - self.a_dim).collect();
                self.lift_b(&self.b.b_basis(&us, &vs, ctx))
            }
            None => Vector::zero(),
        }
    }

    fn d_basis(&self, vs: &[u32], ctx: &mut EvalCtx) -> Vector {
        match self.same_part(vs.iter().copied()) {
            Some(true) => self.a.d_basis(vs, ctx),
            Some(false) => {
                let vs: Vec<u32> = vs.iter().map(|&i| i - self.a_dim).collect();
                self.lift_b(&self.b.d_basis(&vs, ctx))
            }
            None => Vector::zero(),
        }
    }
}

fn sparse_is_zero(v: &BTreeMap<usize, Rational>) -> bool {
    v.values().all(|c| c.is_zero())
}

/// The comparison between the pair complex of `f: A → B` and the
/// deformation complex of the diagram algebra of `f`.
#[derive(Debug, Clone)]
pub struct DiagramComparison {
    diagram: DiagramAlgebra,
    pair: PairComplex,
    target: HochschildBInfty,
    /// Full compatibility matrix over pair coordinates.
    constraint: SparseMatrix,
    /// Canonical basis of the compatible pairs, per operator arity.
    h_basis: BTreeMap<usize, Vec<Vector>>,
    max_arity: usize,
}

impl DiagramComparison {
    /// Build the comparison at the given operator arity bound. Requires
    /// `f` injective; fails with [`Error::InjectivityRequired`]
    /// otherwise, since the identification of the pair complex with its
    /// image inside the diagram complex is asserted under that
    /// hypothesis.
    pub fn new(f: &AlgebraMorphism, max_arity: usize) -> Result<Self> {
        let diagram = DiagramAlgebra::new(f)?;
        if !f.is_injective() {
            return Err(Error::InjectivityRequired(format!(
                "`{}` has a kernel; the comparison with the diagram \
                 complex is only asserted for embeddings",
                f.name()
            )));
        }
        let pair = PairComplex::new(f.dom(), f.cod(), max_arity)?;
        let target = HochschildBInfty::new(diagram.presentation(), max_arity)?;

        let hom_a = pair.factor_a().hom();
        let hom_b = pair.factor_b().hom();
        let sa = hom_a.letters();
        let sb = hom_b.letters();
        let ea_dim = hom_a.dim() as u32;

        // Compatibility rows, arity by arity: for every domain tuple T
        // and codomain letter w, the coefficient of w in f̃(α(T)) minus
        // the coefficient of w in β(f̃ T) must vanish.
        let mut h_basis = BTreeMap::new();
        let mut full_rows: Vec<BTreeMap<usize, Rational>> = Vec::new();
        for arity in 1..=max_arity {
            let a_elems: Vec<u32> = (0..hom_a.dim() as u32)
                .filter(|&i| hom_a.arity_of(i) == arity)
                .collect();
            let b_elems: Vec<u32> = (0..hom_b.dim() as u32)
                .filter(|&i| hom_b.arity_of(i) == arity)
                .collect();
            let col_of_a: BTreeMap<u32, usize> =
                a_elems.iter().enumerate().map(|(k, &i)| (i, k)).collect();
            let col_of_b: BTreeMap<u32, usize> = b_elems
                .iter()
                .enumerate()
                .map(|(k, &i)| (i, a_elems.len() + k))
                .collect();
            let n_cols = a_elems.len() + b_elems.len();

            let mut rows: Vec<BTreeMap<usize, Rational>> = Vec::new();
            for tuple in exhaustive_tuples(sa, arity) {
                for w in sb.basis_indices() {
                    let mut row: BTreeMap<usize, Rational> = BTreeMap::new();
                    for &ai in &a_elems {
                        let (t, out) = hom_a.elem(ai);
                        if t == tuple.as_slice() {
                            let c = f.apply_basis(out).coord(w);
                            if !c.is_zero() {
                                row.insert(col_of_a[&ai], c);
                            }
                        }
                    }
                    for &bi in &b_elems {
                        let (t, out) = hom_b.elem(bi);
                        if out != w {
                            continue;
                        }
                        let mut c = crate::linalg::rat_int(1);
                        for (pos, &a_letter) in tuple.iter().enumerate() {
                            c *= f.apply_basis(a_letter).coord(t[pos]);
                            if c.is_zero() {
                                break;
                            }
                        }
                        if !c.is_zero() {
                            let entry = row.entry(col_of_b[&bi]).or_insert_with(Rational::zero);
                            *entry -= c;
                            if entry.is_zero() {
                                row.remove(&col_of_b[&bi]);
                            }
                        }
                    }
                    if !row.is_empty() {
                        rows.push(row);
                    }
                }
            }

            let mut mat = SparseMatrix::new(rows.len(), n_cols);
            for (r, row) in rows.iter().enumerate() {
                for (&c, val) in row {
                    mat.set(r, c, val.clone());
                }
            }
            let (_, kernel) = mat.rank_kernel();
            let basis: Vec<Vector> = kernel
                .into_iter()
                .map(|k| {
                    Vector::from_coords(k.into_iter().map(|(col, c)| {
                        let idx = if col < a_elems.len() {
                            a_elems[col]
                        } else {
                            ea_dim + b_elems[col - a_elems.len()]
                        };
                        (idx, c)
                    }))
                })
                .collect();
            h_basis.insert(arity, basis);

            // Re-express the same rows in full pair coordinates.
            for row in rows {
                full_rows.push(
                    row.into_iter()
                        .map(|(col, c)| {
                            let idx = if col < a_elems.len() {
                                a_elems[col] as usize
                            } else {
                                (ea_dim + b_elems[col - a_elems.len()]) as usize
                            };
                            (idx, c)
                        })
                        .collect(),
                );
            }
        }
        let mut constraint =
            SparseMatrix::new(full_rows.len(), (hom_a.dim() + hom_b.dim()) as usize);
        for (r, row) in full_rows.into_iter().enumerate() {
            for (c, val) in row {
                constraint.set(r, c, val);
            }
        }

        Ok(DiagramComparison {
            diagram,
            pair,
            target,
            constraint,
            h_basis,
            max_arity,
        })
    }

    pub fn diagram(&self) -> &DiagramAlgebra {
        &self.diagram
    }

    pub fn pair(&self) -> &PairComplex {
        &self.pair
    }

    /// The deformation complex of the diagram algebra.
    pub fn target(&self) -> &HochschildBInfty {
        &self.target
    }

    pub fn max_arity(&self) -> usize {
        self.max_arity
    }

    /// Canonical basis of the compatible pairs of the given arity.
    pub fn compatible_basis(&self, arity: usize) -> &[Vector] {
        self.h_basis.get(&arity).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Exact membership test for the compatibility constraint.
    pub fn is_compatible(&self, pair_vec: &Vector) -> bool {
        sparse_is_zero(&self.constraint.apply(&pair_vec.to_sparse()))
    }

    /// The comparison map on a pair vector, landing in the diagram
    /// complex. Defined for arbitrary pairs; its structure-compatibility
    /// is only asserted on compatible ones.
    pub fn apply(&self, pair_vec: &Vector) -> Vector {
        let hom_a = self.pair.factor_a().hom();
        let hom_b = self.pair.factor_b().hom();
        let sa = hom_a.letters();
        let hom_d = self.target.hom();
        let f = self.diagram.morphism();
        let mut out = Vector::zero();
        for (idx, coeff) in pair_vec.iter() {
            if idx < self.pair.a_dim() {
                let (tuple, o) = hom_a.elem(idx);
                let d_tuple: Vec<u32> =
                    tuple.iter().map(|&i| self.diagram.a_index(i)).collect();
                let d_idx = hom_d
                    .index_of(&d_tuple, self.diagram.a_index(o))
                    .expect("pure-A tuple within bound");
                out.add_term(d_idx, coeff);
            } else {
                let (tuple, o) = hom_b.elem(idx - self.pair.a_dim());
                let n = tuple.len();
                let d_tuple: Vec<u32> =
                    tuple.iter().map(|&i| self.diagram.b_index(i)).collect();
                let d_idx = hom_d
                    .index_of(&d_tuple, self.diagram.b_index(o))
                    .expect("pure-B tuple within bound");
                out.add_term(d_idx, coeff);
                // Mixed components: the j-th slot primed, every later
                // slot pulled back along f̃.
                for j in 0..n {
                    let q = n - 1 - j;
                    for a_tail in exhaustive_tuples(sa, q) {
                        let mut weight = coeff.clone();
                        for (pos, &a_letter) in a_tail.iter().enumerate() {
                            weight *= f.apply_basis(a_letter).coord(tuple[j + 1 + pos]);
                            if weight.is_zero() {
                                break;
                            }
                        }
                        if weight.is_zero() {
                            continue;
                        }
                        let mut mixed: Vec<u32> = Vec::with_capacity(n);
                        mixed.extend(tuple[..j].iter().map(|&i| self.diagram.b_index(i)));
                        mixed.push(self.diagram.bp_index(tuple[j]));
                        mixed.extend(a_tail.iter().map(|&i| self.diagram.a_index(i)));
                        let d_idx = hom_d
                            .index_of(&mixed, self.diagram.bp_index(o))
                            .expect("mixed tuple within bound");
                        out.add_term(d_idx, &weight);
                    }
                }
            }
        }
        out
    }

    /// Pointwise verification that the comparison intertwines the
    /// operations on compatible probes, and that compatibility is closed
    /// under the operations. Probes are seeded random combinations of
    /// the canonical compatible basis, stratified by arity.
    pub fn verify(&self, samples: usize, seed: u64) -> Vec<IdentityCheck> {
        let mut out = Vec::new();
        let mut gen = ProbeGen::new(seed);
        let arities: Vec<usize> = self
            .h_basis
            .iter()
            .filter(|(_, b)| !b.is_empty())
            .map(|(&n, _)| n)
            .filter(|&n| n <= self.max_arity.saturating_sub(1).max(1))
            .collect();
        if arities.is_empty() {
            return out;
        }
        let sample_h = |gen: &mut ProbeGen, label: &mut String| -> Vector {
            let arity = arities[gen.sample_index(arities.len())];
            let basis = &self.h_basis[&arity];
            let k = gen.sample_index(basis.len());
            let mut v = basis[k].clone();
            let mut desc = format!("H{arity}#{k}");
            if basis.len() > 1 && gen.sample_bool() {
                let k2 = gen.sample_index(basis.len());
                let c = gen.sample_coeff();
                v = v.add(&basis[k2].scale(&c));
                desc = format!("{desc}+{}·H{arity}#{k2}", crate::linalg::rat_to_string(&c));
            }
            label.push_str(&desc);
            v
        };

        for probe in 0..samples {
            // Brace compatibility, one and two inner inputs.
            for inner in 1..=2usize {
                let mut label = format!("probe {probe}: x=");
                let x = sample_h(&mut gen, &mut label);
                let mut ys = Vec::new();
                for t in 0..inner {
                    label.push_str(if t == 0 { "; ys=" } else { "," });
                    ys.push(sample_h(&mut gen, &mut label));
                }
                let mut ctx = EvalCtx::new();
                let lhs = self.apply(&b_apply(
                    &self.pair,
                    std::slice::from_ref(&x),
                    &ys,
                    &mut ctx,
                ));
                let tx = self.apply(&x);
                let tys: Vec<Vector> = ys.iter().map(|y| self.apply(y)).collect();
                let rhs = b_apply(
                    &self.target,
                    std::slice::from_ref(&tx),
                    &tys,
                    &mut ctx,
                );
                out.push(IdentityCheck {
                    identity: "comparison-brace-compat",
                    probe: label,
                    outcome: conclude(lhs, rhs, &ctx),
                });
            }

            // One-sided family compatibility, one to three inputs.
            for inputs in 1..=3usize {
                let mut label = format!("probe {probe}: xs=");
                let mut xs = Vec::new();
                for t in 0..inputs {
                    if t > 0 {
                        label.push(',');
                    }
                    xs.push(sample_h(&mut gen, &mut label));
                }
                let mut ctx = EvalCtx::new();
                let lhs = self.apply(&d_apply(&self.pair, &xs, &mut ctx));
                let txs: Vec<Vector> = xs.iter().map(|x| self.apply(x)).collect();
                let rhs = d_apply(&self.target, &txs, &mut ctx);
                out.push(IdentityCheck {
                    identity: "comparison-one-sided-compat",
                    probe: label,
                    outcome: conclude(lhs, rhs, &ctx),
                });
            }

            // Closure of compatibility under the operations.
            {
                let mut label = format!("probe {probe}: x=");
                let x = sample_h(&mut gen, &mut label);
                let mut label2 = String::from("; y=");
                let y = sample_h(&mut gen, &mut label2);
                label.push_str(&label2);
                let mut ctx = EvalCtx::new();
                let braced = b_apply(
                    &self.pair,
                    std::slice::from_ref(&x),
                    std::slice::from_ref(&y),
                    &mut ctx,
                );
                let dx = d_apply(&self.pair, std::slice::from_ref(&x), &mut ctx);
                let residue_b = Vector::from_sparse(&self.constraint.apply(&braced.to_sparse()));
                let residue_d = Vector::from_sparse(&self.constraint.apply(&dx.to_sparse()));
                out.push(IdentityCheck {
                    identity: "compatible-pairs-closed",
                    probe: label,
                    outcome: conclude(residue_b.add(&residue_d), Vector::zero(), &ctx),
                });
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binfty::{verify_binfty, VerifyPlan};
    use crate::catalog;
    use crate::linalg::rat_int;

    #[test]
    fn diagram_algebra_validates_for_catalog_morphisms() {
        for f in catalog::all_morphisms() {
            let d = DiagramAlgebra::new(&f)
                .unwrap_or_else(|e| panic!("{} rejected: {e}", f.name()));
            let dim = d.presentation().space().dim();
            assert_eq!(
                dim,
                f.dom().space().dim() + 2 * f.cod().space().dim()
            );
        }
    }

    #[test]
    fn diagram_product_follows_the_mixed_rules() {
        let f = catalog::unit_inclusion(&catalog::dual_numbers()).unwrap();
        let d = DiagramAlgebra::new(&f).unwrap();
        let alg = d.presentation();
        // B:e · B':1 = B':e
        let p = alg.mul_basis(d.b_index(1), d.bp_index(0));
        assert_eq!(p, Vector::basis(d.bp_index(1)));
        // B':e · A:1 = B':(e · f(1)) = B':e
        let p = alg.mul_basis(d.bp_index(1), d.a_index(0));
        assert_eq!(p, Vector::basis(d.bp_index(1)));
        // A · B' and B' · B vanish.
        assert!(alg.mul_basis(d.a_index(0), d.bp_index(0)).is_zero());
        assert!(alg.mul_basis(d.bp_index(0), d.b_index(0)).is_zero());
        // The unit is A:1 + B:1 and is two-sided (validated already).
        let u = alg.unit().unwrap();
        assert_eq!(u.coord(d.a_index(0)), rat_int(1));
        assert_eq!(u.coord(d.b_index(0)), rat_int(1));
    }

    #[test]
    fn diagram_rejects_non_multiplicative_map() {
        let b = catalog::dual_numbers();
        let mut map = MultiMap::new(1, 0);
        map.set_entry(vec![0], Vector::basis(0));
        map.set_entry(
            vec![1],
            Vector::from_coords([(0, rat_int(1)), (1, rat_int(1))]),
        );
        let f = AlgebraMorphism::new("shift", b.clone(), b, map).unwrap();
        assert!(matches!(
            DiagramAlgebra::new(&f),
            Err(Error::NotAMorphismDatum(_))
        ));
    }

    #[test]
    fn pair_complex_satisfies_structure_identities() {
        let pair = PairComplex::new(
            &catalog::ground_field(),
            &catalog::dual_numbers(),
            3,
        )
        .unwrap();
        let plan = VerifyPlan {
            max_total_arity: 4,
            max_slot_arity: 2,
            tuple_limit: 140,
            seed: 11,
        };
        for c in verify_binfty(&pair, &plan) {
            assert!(!c.outcome.is_fail(), "{} failed at {}", c.identity, c.probe);
        }
    }

    #[test]
    fn compatibility_kernel_is_diagonal_for_identity() {
        let f = catalog::identity_morphism(&catalog::dual_numbers());
        let cmp = DiagramComparison::new(&f, 3).unwrap();
        let hom = cmp.pair().factor_a().hom();
        for arity in 1..=3 {
            let expect = (0..hom.dim() as u32)
                .filter(|&i| hom.arity_of(i) == arity)
                .count();
            assert_eq!(cmp.compatible_basis(arity).len(), expect);
        }
        for arity in 1..=3 {
            for v in cmp.compatible_basis(arity) {
                assert!(cmp.is_compatible(v));
                let (va, vb) = cmp.pair().split(v);
                // Along the identity the two components agree.
                assert_eq!(va.to_sparse(), vb.to_sparse());
            }
        }
    }

    #[test]
    fn lone_cochain_on_the_source_is_not_compatible() {
        let f = catalog::unit_inclusion(&catalog::dual_numbers()).unwrap();
        let cmp = DiagramComparison::new(&f, 3).unwrap();
        let hom = cmp.pair().factor_a().hom();
        let alpha = hom.elementary(&[0], 0).unwrap();
        assert!(!cmp.is_compatible(&cmp.pair().lift_a(&alpha)));
    }

    #[test]
    fn comparison_requires_injectivity() {
        let f = catalog::truncation_surjection();
        assert!(matches!(
            DiagramComparison::new(&f, 3),
            Err(Error::InjectivityRequired(_))
        ));
    }

    #[test]
    fn comparison_restricts_to_the_stated_families() {
        let f = catalog::unit_inclusion(&catalog::dual_numbers()).unwrap();
        let cmp = DiagramComparison::new(&f, 3).unwrap();
        let hom_b = cmp.pair().factor_b().hom();
        let hom_d = cmp.target().hom();
        let d = cmp.diagram();
        // A single codomain cochain β (not compatible on its own; the
        // comparison map is defined on all pairs).
        let beta = hom_b.elementary(&[0, 1], 1).unwrap();
        let image = cmp.apply(&cmp.pair().lift_b(&beta));
        // Pure-B value: β itself.
        let pure = hom_d.apply_op(&image, &[d.b_index(0), d.b_index(1)]);
        assert_eq!(pure, Vector::basis(d.b_index(1)));
        // Mixed value with the prime in slot 0 and an A-letter behind it:
        // (β(b, f̃a))′ — here f̃(A:1) = B:1, so only tails matching the
        // second β-input survive; β inputs are (1, e) so the a-tail must
        // hit e, impossible for f̃(1) = 1. Expect zero.
        let v = hom_d.apply_op(&image, &[d.bp_index(0), d.a_index(0)]);
        assert!(v.is_zero());
        // Prime in slot 1: (β(b_0, b_1))′ with b_1 primed.
        let v = hom_d.apply_op(&image, &[d.b_index(0), d.bp_index(1)]);
        assert_eq!(v, Vector::basis(d.bp_index(1)));
        // Tuples of any other shape vanish.
        assert!(hom_d
            .apply_op(&image, &[d.a_index(0), d.b_index(1)])
            .is_zero());
        assert!(hom_d
            .apply_op(&image, &[d.bp_index(0), d.bp_index(1)])
            .is_zero());
    }

    #[test]
    fn comparison_mixed_values_match_direct_evaluation() {
        // Independent cross-check of the mixed family: evaluate the image
        // cochain on mixed tuples and compare with priming β applied to
        // the unprimed translation with f̃ on the tail.
        let f = catalog::identity_morphism(&catalog::upper_triangular());
        let cmp = DiagramComparison::new(&f, 3).unwrap();
        let hom_b = cmp.pair().factor_b().hom();
        let hom_d = cmp.target().hom();
        let d = cmp.diagram();
        let sb = hom_b.letters();
        let mut gen = ProbeGen::new(23);
        for basis in cmp.compatible_basis(2).iter().take(6) {
            let (_, beta) = cmp.pair().split(basis);
            let image = cmp.apply(basis);
            for _ in 0..12 {
                let b_front = gen.sample_tuple(sb, 1);
                let prime = gen.sample_tuple(sb, 1)[0];
                // Tuple (b, b′): expected (β(b, b))′.
                let tuple = vec![d.b_index(b_front[0]), d.bp_index(prime)];
                let got = hom_d.apply_op(&image, &tuple);
                let expected = hom_b.apply_op(&beta, &[b_front[0], prime]);
                let expected = Vector::from_coords(
                    expected.iter().map(|(i, c)| (d.bp_index(i), c.clone())),
                );
                assert_eq!(got.to_sparse(), expected.to_sparse());
            }
        }
    }

    #[test]
    fn comparison_intertwines_operations_on_compatible_probes() {
        let cases = vec![
            catalog::unit_inclusion(&catalog::dual_numbers()).unwrap(),
            catalog::exterior_unit_inclusion(),
            catalog::identity_morphism(&catalog::upper_triangular()),
        ];
        for f in cases {
            let cmp = DiagramComparison::new(&f, 3).unwrap();
            let checks = cmp.verify(8, 2026);
            let mut passed = 0;
            for c in &checks {
                assert!(
                    !c.outcome.is_fail(),
                    "{}: {} failed at {}",
                    f.name(),
                    c.identity,
                    c.probe
                );
                if c.outcome.is_pass() {
                    passed += 1;
                }
            }
            assert!(passed > 20, "{}: only {passed} conclusive probes", f.name());
        }
    }
}
