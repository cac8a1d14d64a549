//! Extensions of brace structures along actions.
//!
//! Given a structure acting on an associative algebra (or on another
//! structure), these constructions assemble a structure on the direct sum
//! whose components either restrict to the summands or route through the
//! action; every input tuple not matching one of the listed membership
//! patterns evaluates to zero. The carrier ordering is fixed and
//! significant: the acted summand comes first, then (for the two-sided
//! case) the right-acting summand, then the left-acting summand.
//!
//! Each constructor re-verifies the supplied action on the given probe
//! plan and returns the assembled structure together with the strict
//! inclusion of the acted summand and the strict projection onto the
//! acting summand(s); the three carriers are exact by construction
//! (dimension bookkeeping via [`degree_dimensions`]).

use crate::actions::{
    act_or_id, act_words, conclude_words, distribute_blocks, reject_failures, sample_word,
    verify_action, verify_action_over, ActionKind, ActionOps, ActionPlan, ActionSide,
    MorphismData,
};
use crate::algebra::AlgebraPresentation;
use crate::binfty::{BInftyOps, TableBInfty};
use crate::check::{describe_probe, IdentityCheck};
use crate::error::{Error, Result};
use crate::graded::{EvalCtx, GradedSpace, Vector};
use crate::linalg::neg_one_pow;
use crate::probe::ProbeGen;
use crate::words::{word_degree, WordSpace, WordVec};

use std::collections::BTreeMap;

/// Concatenated basis layout of a direct sum: consecutive index blocks,
/// one per summand, names prefixed with a per-summand tag.
struct SumLayout {
    space: GradedSpace,
    bounds: Vec<u32>,
}

impl SumLayout {
    fn new(parts: &[(&str, &GradedSpace)]) -> Result<SumLayout> {
        let mut basis = Vec::new();
        let mut bounds = vec![0u32];
        for (tag, sp) in parts {
            for i in 0..sp.dim() as u32 {
                basis.push((format!("{tag}.{}", sp.name(i)), sp.degree(i)));
            }
            bounds.push(basis.len() as u32);
        }
        Ok(SumLayout { space: GradedSpace::new(basis)?, bounds })
    }

    fn space(&self) -> &GradedSpace {
        &self.space
    }

    fn part_of(&self, idx: u32) -> usize {
        self.bounds[1..].partition_point(|&b| b <= idx)
    }

    fn offset(&self, part: usize) -> u32 {
        self.bounds[part]
    }

    fn all_in(&self, part: usize, idxs: &[u32]) -> bool {
        idxs.iter().all(|&i| self.part_of(i) == part)
    }

    fn strip(&self, part: usize, idxs: &[u32]) -> Vec<u32> {
        idxs.iter().map(|&i| i - self.bounds[part]).collect()
    }

    fn embed(&self, part: usize, v: &Vector) -> Vector {
        let off = self.bounds[part];
        Vector::from_coords(v.iter().map(|(i, c)| (i + off, c.clone())))
    }
}

/// An assembled extension: the structure on the direct-sum carrier plus
/// the strict morphisms exhibiting it as an extension. The inclusion maps
/// the acted summand (the first index block) into the total; the
/// projection collapses it and retains the acting summand(s).
pub struct ExtensionResult<T: BInftyOps> {
    pub total: T,
    pub include: MorphismData,
    pub project: MorphismData,
}

fn strict_inclusion(dim: usize, offset: u32) -> MorphismData {
    let mut mu = MorphismData::new(1, true);
    for i in 0..dim as u32 {
        mu.set(1, &[i], Vector::basis(offset + i)).expect("arity-1 component");
    }
    mu
}

fn strict_projection(total_dim: usize, from: u32) -> MorphismData {
    let mut mu = MorphismData::new(1, true);
    for i in from..total_dim as u32 {
        mu.set(1, &[i], Vector::basis(i - from)).expect("arity-1 component");
    }
    mu
}

/// A (desuspended) associative algebra as a brace structure: the only
/// nonzero components are the two-sided `(1,1)` product and, when
/// present, the arity-1 differential; everything else vanishes within the
/// stated horizon.
pub fn associative_binfty(alg: &AlgebraPresentation, horizon: usize) -> Result<TableBInfty> {
    let mut table = TableBInfty::new(alg.space().clone(), horizon.max(2), horizon.max(1));
    table.set_b(1, 1, alg.product().clone())?;
    if let Some(d) = alg.differential() {
        table.set_d(1, d.clone())?;
    }
    Ok(table)
}

/// The direct product of two structures on the direct sum of their
/// carriers: components restrict to each summand and vanish on mixed
/// tuples.
pub struct ProductBInfty<'x, B1: BInftyOps, B2: BInftyOps> {
    first: &'x B1,
    second: &'x B2,
    layout: SumLayout,
}

pub fn direct_product<'x, B1: BInftyOps, B2: BInftyOps>(
    first: &'x B1,
    tag1: &str,
    second: &'x B2,
    tag2: &str,
) -> Result<ProductBInfty<'x, B1, B2>> {
    let layout = SumLayout::new(&[(tag1, first.carrier()), (tag2, second.carrier())])?;
    Ok(ProductBInfty { first, second, layout })
}

impl<'x, B1: BInftyOps, B2: BInftyOps> BInftyOps for ProductBInfty<'x, B1, B2> {
    fn carrier(&self) -> &GradedSpace {
        self.layout.space()
    }

    fn b_basis(&self, us: &[u32], vs: &[u32], ctx: &mut EvalCtx) -> Vector {
        let lay = &self.layout;
        if lay.all_in(0, us) && lay.all_in(0, vs) {
            return lay.embed(0, &self.first.b_basis(&lay.strip(0, us), &lay.strip(0, vs), ctx));
        }
        if lay.all_in(1, us) && lay.all_in(1, vs) {
            return lay.embed(1, &self.second.b_basis(&lay.strip(1, us), &lay.strip(1, vs), ctx));
        }
        Vector::zero()
    }

    fn d_basis(&self, vs: &[u32], ctx: &mut EvalCtx) -> Vector {
        let lay = &self.layout;
        if lay.all_in(0, vs) {
            return lay.embed(0, &self.first.d_basis(&lay.strip(0, vs), ctx));
        }
        if lay.all_in(1, vs) {
            return lay.embed(1, &self.second.d_basis(&lay.strip(1, vs), ctx));
        }
        Vector::zero()
    }
}

fn spaces_match(x: &GradedSpace, y: &GradedSpace) -> bool {
    x.dim() == y.dim() && (0..x.dim() as u32).all(|i| x.degree(i) == y.degree(i))
}

/// Weight-1 part of a word vector as a letter vector; anything longer
/// marks the context (the acted value left the letter span).
fn single_letters(wv: &WordVec, ctx: &mut EvalCtx) -> Vector {
    let mut out = Vector::zero();
    for (w, c) in wv.iter() {
        if w.len() == 1 {
            out.add_term(w[0], c);
        } else {
            ctx.mark_truncated("acted value leaves the algebra letters");
        }
    }
    out
}

/// Letter-level value of an action on one basis letter, with the identity
/// convention for an empty acting tuple.
fn action_letter(
    action: &impl ActionOps,
    tuple: &[u32],
    letter: u32,
    ctx: &mut EvalCtx,
) -> Vector {
    let wv = act_or_id(action, tuple, &[letter], ctx);
    single_letters(&wv, ctx)
}

/// Bilinear extension of the algebra product.
fn mul_vectors(alg: &AlgebraPresentation, x: &Vector, y: &Vector) -> Vector {
    let mut out = Vector::zero();
    for (i, ci) in x.iter() {
        for (j, cj) in y.iter() {
            let c = ci * cj;
            for (k, pk) in alg.mul_basis(i, j).iter() {
                out.add_term(k, &(pk * &c));
            }
        }
    }
    out
}

/// The action must target exactly the given algebra: algebra kind, letter
/// span matching the algebra basis, and product/differential tables that
/// agree with the presentation on letters.
fn require_algebra_target(alg: &AlgebraPresentation, action: &impl ActionOps) -> Result<()> {
    if action.kind() != ActionKind::Algebra {
        return Err(Error::InvalidData(
            "extension by an algebra needs an algebra-type action".into(),
        ));
    }
    let letters = action.words().letters();
    if !spaces_match(letters, alg.space()) {
        return Err(Error::InvalidData(
            "the action target does not match the algebra".into(),
        ));
    }
    for i in 0..letters.dim() as u32 {
        for j in 0..letters.dim() as u32 {
            let mut ctx = EvalCtx::new();
            let Some(wv) = action.product_basis(&[i], &[j], &mut ctx) else {
                return Err(Error::InvalidData(
                    "the action does not expose the target product".into(),
                ));
            };
            let got = single_letters(&wv, &mut ctx);
            if ctx.is_truncated() || got != alg.mul_basis(i, j) {
                return Err(Error::InvalidData(format!(
                    "the action product disagrees with the algebra product at ({}, {})",
                    letters.name(i),
                    letters.name(j)
                )));
            }
        }
        let mut ctx = EvalCtx::new();
        let got = single_letters(&action.differential_basis(&[i], &mut ctx), &mut ctx);
        if ctx.is_truncated() || got != alg.d_basis(i) {
            return Err(Error::InvalidData(format!(
                "the action differential disagrees with the algebra differential at {}",
                letters.name(i)
            )));
        }
    }
    Ok(())
}

/// Extension of a structure by an algebra it acts on, on the direct sum
/// with the algebra in the first index block.
///
/// Nonzero components: the inherited family on all-structure tuples; the
/// product and differential on the algebra; the action of a whole
/// structure tuple on one algebra input (written on the action's side);
/// and the same with one extra algebra input on the outer position, which
/// multiplies the acted value. All other membership patterns vanish.
pub struct AlgebraExtension<'x, B: BInftyOps, X: ActionOps> {
    structure: &'x B,
    action: &'x X,
    algebra: AlgebraPresentation,
    layout: SumLayout,
    side: ActionSide,
}

impl<'x, B: BInftyOps, X: ActionOps> BInftyOps for AlgebraExtension<'x, B, X> {
    fn carrier(&self) -> &GradedSpace {
        self.layout.space()
    }

    fn b_basis(&self, us: &[u32], vs: &[u32], ctx: &mut EvalCtx) -> Vector {
        let lay = &self.layout;
        if lay.all_in(1, us) && lay.all_in(1, vs) {
            return lay.embed(1, &self.structure.b_basis(&lay.strip(1, us), &lay.strip(1, vs), ctx));
        }
        match self.side {
            ActionSide::Left => {
                if vs.len() == 1 && lay.part_of(vs[0]) == 0 {
                    let a = vs[0] - lay.offset(0);
                    if lay.all_in(1, us) {
                        let acted = action_letter(self.action, &lay.strip(1, us), a, ctx);
                        return lay.embed(0, &acted);
                    }
                    if lay.part_of(us[0]) == 0 && lay.all_in(1, &us[1..]) {
                        let acted = action_letter(self.action, &lay.strip(1, &us[1..]), a, ctx);
                        let outer = Vector::basis(us[0] - lay.offset(0));
                        return lay.embed(0, &mul_vectors(&self.algebra, &outer, &acted));
                    }
                }
            }
            ActionSide::Right => {
                if us.len() == 1 && lay.part_of(us[0]) == 0 {
                    let a = us[0] - lay.offset(0);
                    if lay.all_in(1, vs) {
                        let acted = action_letter(self.action, &lay.strip(1, vs), a, ctx);
                        return lay.embed(0, &acted);
                    }
                    let last = *vs.last().expect("n >= 1");
                    if lay.part_of(last) == 0 && lay.all_in(1, &vs[..vs.len() - 1]) {
                        let acted =
                            action_letter(self.action, &lay.strip(1, &vs[..vs.len() - 1]), a, ctx);
                        let outer = Vector::basis(last - lay.offset(0));
                        return lay.embed(0, &mul_vectors(&self.algebra, &acted, &outer));
                    }
                }
            }
        }
        Vector::zero()
    }

    fn d_basis(&self, vs: &[u32], ctx: &mut EvalCtx) -> Vector {
        let lay = &self.layout;
        if lay.all_in(1, vs) {
            return lay.embed(1, &self.structure.d_basis(&lay.strip(1, vs), ctx));
        }
        if vs.len() == 1 && lay.part_of(vs[0]) == 0 {
            return lay.embed(0, &self.algebra.d_basis(vs[0] - lay.offset(0)));
        }
        Vector::zero()
    }
}

/// Assemble the extension of `structure` by `algebra` along `action`
/// (algebra kind, either side). The action is re-verified on the plan
/// first; an outright failure aborts with
/// [`Error::ActionAxiomViolation`].
pub fn extend_by_algebra<'x, B: BInftyOps, X: ActionOps>(
    structure: &'x B,
    algebra: &AlgebraPresentation,
    action: &'x X,
    plan: &ActionPlan,
) -> Result<ExtensionResult<AlgebraExtension<'x, B, X>>> {
    require_algebra_target(algebra, action)?;
    if !spaces_match(action.actor_space(), structure.carrier()) {
        return Err(Error::InvalidData(
            "the action's acting space does not match the structure carrier".into(),
        ));
    }
    reject_failures(&verify_action(structure, action, plan)?)?;
    let tag = match action.side() {
        ActionSide::Left => "b",
        ActionSide::Right => "p",
    };
    let layout = SumLayout::new(&[("a", algebra.space()), (tag, structure.carrier())])?;
    let dim_a = algebra.space().dim();
    let total_dim = layout.space().dim();
    Ok(ExtensionResult {
        total: AlgebraExtension {
            structure,
            action,
            algebra: algebra.clone(),
            layout,
            side: action.side(),
        },
        include: strict_inclusion(dim_a, 0),
        project: strict_projection(total_dim, dim_a as u32),
    })
}

/// Extension of a structure by another structure it acts on (full
/// structure-kind action, left side), acted summand first.
///
/// Nonzero components: the two inherited families; and, for a tuple made
/// of an acted-summand prefix followed by an acting-summand block on the
/// left with an all-acted right side, the acted word is pushed through
/// the action and its length-`p` pieces feed the inner `(l, p)`
/// components — with an empty prefix only single letters survive (the
/// corestriction), recovering the plain action family.
pub struct BBExtension<'x, B: BInftyOps, P: BInftyOps, X: ActionOps> {
    outer: &'x B,
    inner: &'x P,
    action: &'x X,
    layout: SumLayout,
}

impl<'x, B: BInftyOps, P: BInftyOps, X: ActionOps> BInftyOps for BBExtension<'x, B, P, X> {
    fn carrier(&self) -> &GradedSpace {
        self.layout.space()
    }

    fn b_basis(&self, us: &[u32], vs: &[u32], ctx: &mut EvalCtx) -> Vector {
        let lay = &self.layout;
        if lay.all_in(1, us) && lay.all_in(1, vs) {
            return lay.embed(1, &self.outer.b_basis(&lay.strip(1, us), &lay.strip(1, vs), ctx));
        }
        if lay.all_in(0, us) && lay.all_in(0, vs) {
            return lay.embed(0, &self.inner.b_basis(&lay.strip(0, us), &lay.strip(0, vs), ctx));
        }
        let l = us.iter().take_while(|&&i| lay.part_of(i) == 0).count();
        if l < us.len() && lay.all_in(1, &us[l..]) && lay.all_in(0, vs) {
            let left = lay.strip(0, &us[..l]);
            let bs = lay.strip(1, &us[l..]);
            let word = lay.strip(0, vs);
            let acted = self.action.act_basis(&bs, &word, ctx);
            let mut out = Vector::zero();
            for (w, c) in acted.iter() {
                if l == 0 {
                    if w.len() == 1 {
                        out.add_term(lay.offset(0) + w[0], c);
                    }
                } else if !w.is_empty() {
                    for (k, ck) in self.inner.b_basis(&left, w, ctx).iter() {
                        out.add_term(lay.offset(0) + k, &(ck * c));
                    }
                }
            }
            return out;
        }
        Vector::zero()
    }

    fn d_basis(&self, vs: &[u32], ctx: &mut EvalCtx) -> Vector {
        let lay = &self.layout;
        if lay.all_in(1, vs) {
            return lay.embed(1, &self.outer.d_basis(&lay.strip(1, vs), ctx));
        }
        if lay.all_in(0, vs) {
            return lay.embed(0, &self.inner.d_basis(&lay.strip(0, vs), ctx));
        }
        Vector::zero()
    }
}

/// Assemble the extension of the acting structure `outer` by the acted
/// structure `inner` along a full structure-kind left action.
pub fn extend_by_binfty<'x, B: BInftyOps, P: BInftyOps, X: ActionOps>(
    outer: &'x B,
    inner: &'x P,
    action: &'x X,
    plan: &ActionPlan,
) -> Result<ExtensionResult<BBExtension<'x, B, P, X>>> {
    if action.kind() != ActionKind::BBAlgebra {
        return Err(Error::InvalidData(
            "extension by a full structure needs a full-structure action".into(),
        ));
    }
    if action.side() != ActionSide::Left {
        return Err(Error::InvalidData(
            "extension by a full structure expects a left action".into(),
        ));
    }
    if !spaces_match(action.words().letters(), inner.carrier()) {
        return Err(Error::InvalidData(
            "the action target does not match the acted structure".into(),
        ));
    }
    if !spaces_match(action.actor_space(), outer.carrier()) {
        return Err(Error::InvalidData(
            "the action's acting space does not match the structure carrier".into(),
        ));
    }
    reject_failures(&verify_action_over(outer, inner, action, plan)?)?;
    let layout = SumLayout::new(&[("p", inner.carrier()), ("b", outer.carrier())])?;
    let dim_p = inner.carrier().dim();
    let total_dim = layout.space().dim();
    Ok(ExtensionResult {
        total: BBExtension { outer, inner, action, layout },
        include: strict_inclusion(dim_p, 0),
        project: strict_projection(total_dim, dim_p as u32),
    })
}

/// Pointwise probes of the compatibility of a left and a right action on
/// the same target: acting in either order must agree, with no sign —
/// the written argument order is identical on both sides of the
/// equation.
pub fn commutation_checks(
    left: &impl ActionOps,
    right: &impl ActionOps,
    plan: &ActionPlan,
) -> Result<Vec<IdentityCheck>> {
    let lw = left.words();
    let rw = right.words();
    if !spaces_match(lw.letters(), rw.letters()) {
        return Err(Error::InvalidData("the two actions target different carriers".into()));
    }
    let show = if lw.max_weight() >= rw.max_weight() { lw } else { rw };
    let max_w = lw.max_weight().min(rw.max_weight()).min(plan.max_weight).max(1);
    let mut gen = ProbeGen::new(plan.seed);
    let mut checks = Vec::new();
    for m in 1..=plan.max_actor_arity {
        for n in 1..=plan.max_actor_arity {
            for w in 1..=max_w {
                for _ in 0..plan.reps {
                    let bs = gen.sample_tuple(left.actor_space(), m);
                    let cs = gen.sample_tuple(right.actor_space(), n);
                    let Some(word) = sample_word(&mut gen, lw, w) else {
                        continue;
                    };
                    let mut ctx = EvalCtx::new();
                    let first_right = right.act_basis(&cs, &word, &mut ctx);
                    let lhs = act_words(left, &bs, &first_right, &mut ctx);
                    let first_left = left.act_basis(&bs, &word, &mut ctx);
                    let rhs = act_words(right, &cs, &first_left, &mut ctx);
                    checks.push(IdentityCheck {
                        identity: "action-commutation",
                        probe: format!(
                            "{} and {} on {}",
                            describe_probe(left.actor_space(), &[&bs]),
                            describe_probe(right.actor_space(), &[&cs]),
                            describe_probe(lw.letters(), &[&word]),
                        ),
                        outcome: conclude_words(show, &lhs, &rhs, &ctx),
                    });
                }
            }
        }
    }
    Ok(checks)
}

/// `true` iff no commutation probe fails outright; probes skipped for
/// honest truncation are tolerated.
pub fn check_commutation(
    left: &impl ActionOps,
    right: &impl ActionOps,
    plan: &ActionPlan,
) -> Result<bool> {
    Ok(commutation_checks(left, right, plan)?.iter().all(|c| !c.outcome.is_fail()))
}

/// The two-sided extension along a commuting pair of actions on the same
/// algebra, on the direct sum ordered algebra, right-acting structure,
/// left-acting structure.
///
/// Nonzero components: the two inherited families; the product and
/// differential on the algebra; the left action of an all-left tuple on
/// one algebra input; the right action mirror; and the combined family —
/// an algebra input followed by a left-acting block against a
/// right-acting block followed by an algebra input, valued at the product
/// of the two acted values with the Koszul sign of the two blocks passing
/// each other.
pub struct TwoSidedExtension<'x, B: BInftyOps, P: BInftyOps, L: ActionOps, R: ActionOps> {
    left_structure: &'x B,
    right_structure: &'x P,
    left: &'x L,
    right: &'x R,
    algebra: AlgebraPresentation,
    layout: SumLayout,
}

impl<'x, B: BInftyOps, P: BInftyOps, L: ActionOps, R: ActionOps> BInftyOps
    for TwoSidedExtension<'x, B, P, L, R>
{
    fn carrier(&self) -> &GradedSpace {
        self.layout.space()
    }

    fn b_basis(&self, us: &[u32], vs: &[u32], ctx: &mut EvalCtx) -> Vector {
        let lay = &self.layout;
        if lay.all_in(2, us) && lay.all_in(2, vs) {
            return lay
                .embed(2, &self.left_structure.b_basis(&lay.strip(2, us), &lay.strip(2, vs), ctx));
        }
        if lay.all_in(1, us) && lay.all_in(1, vs) {
            return lay.embed(
                1,
                &self.right_structure.b_basis(&lay.strip(1, us), &lay.strip(1, vs), ctx),
            );
        }
        if lay.all_in(2, us) && vs.len() == 1 && lay.part_of(vs[0]) == 0 {
            let acted = action_letter(self.left, &lay.strip(2, us), vs[0] - lay.offset(0), ctx);
            return lay.embed(0, &acted);
        }
        if us.len() == 1 && lay.part_of(us[0]) == 0 && lay.all_in(1, vs) {
            let acted = action_letter(self.right, &lay.strip(1, vs), us[0] - lay.offset(0), ctx);
            return lay.embed(0, &acted);
        }
        if lay.part_of(us[0]) == 0 && lay.all_in(2, &us[1..]) {
            let last = *vs.last().expect("n >= 1");
            if lay.part_of(last) == 0 && lay.all_in(1, &vs[..vs.len() - 1]) {
                let bs = lay.strip(2, &us[1..]);
                let cs = lay.strip(1, &vs[..vs.len() - 1]);
                let u = action_letter(self.right, &cs, us[0] - lay.offset(0), ctx);
                let v = action_letter(self.left, &bs, last - lay.offset(0), ctx);
                let sigma = word_degree(lay.space(), &us[1..])
                    * word_degree(lay.space(), &vs[..vs.len() - 1]);
                let prod = mul_vectors(&self.algebra, &u, &v);
                return lay.embed(0, &prod.scale(&neg_one_pow(sigma)));
            }
        }
        Vector::zero()
    }

    fn d_basis(&self, vs: &[u32], ctx: &mut EvalCtx) -> Vector {
        let lay = &self.layout;
        if lay.all_in(2, vs) {
            return lay.embed(2, &self.left_structure.d_basis(&lay.strip(2, vs), ctx));
        }
        if lay.all_in(1, vs) {
            return lay.embed(1, &self.right_structure.d_basis(&lay.strip(1, vs), ctx));
        }
        if vs.len() == 1 && lay.part_of(vs[0]) == 0 {
            return lay.embed(0, &self.algebra.d_basis(vs[0] - lay.offset(0)));
        }
        Vector::zero()
    }
}

/// Assemble the two-sided extension. Both actions are re-verified, then
/// probed for commutation; a failing commutation probe aborts with
/// [`Error::ActionsDoNotCommute`] carrying the witness.
pub fn extend_two_sided<'x, B: BInftyOps, P: BInftyOps, L: ActionOps, R: ActionOps>(
    left_structure: &'x B,
    right_structure: &'x P,
    algebra: &AlgebraPresentation,
    left: &'x L,
    right: &'x R,
    plan: &ActionPlan,
) -> Result<ExtensionResult<TwoSidedExtension<'x, B, P, L, R>>> {
    if left.side() != ActionSide::Left || right.side() != ActionSide::Right {
        return Err(Error::InvalidData(
            "the two-sided extension needs a left action and a right action".into(),
        ));
    }
    require_algebra_target(algebra, left)?;
    require_algebra_target(algebra, right)?;
    if !spaces_match(left.actor_space(), left_structure.carrier())
        || !spaces_match(right.actor_space(), right_structure.carrier())
    {
        return Err(Error::InvalidData(
            "an action's acting space does not match its structure carrier".into(),
        ));
    }
    reject_failures(&verify_action(left_structure, left, plan)?)?;
    reject_failures(&verify_action(right_structure, right, plan)?)?;
    let comm = commutation_checks(left, right, plan)?;
    if let Some(c) = comm.iter().find(|c| c.outcome.is_fail()) {
        return Err(Error::ActionsDoNotCommute(format!("`{}` fails on {}", c.identity, c.probe)));
    }
    let layout = SumLayout::new(&[
        ("a", algebra.space()),
        ("p", right_structure.carrier()),
        ("b", left_structure.carrier()),
    ])?;
    let dim_a = algebra.space().dim();
    let total_dim = layout.space().dim();
    Ok(ExtensionResult {
        total: TwoSidedExtension {
            left_structure,
            right_structure,
            left,
            right,
            algebra: algebra.clone(),
            layout,
        },
        include: strict_inclusion(dim_a, 0),
        project: strict_projection(total_dim, dim_a as u32),
    })
}

/// A letter-level algebra action extended by zero to the extra letters of
/// a larger carrier: the base action applies on an embedded index range
/// and a nonempty acting tuple annihilates every other letter.  The
/// extension over words is the usual blockwise one, which makes the
/// result usable as a full structure-kind action on an extension carrier
/// — this is the induced action of the two-step construction.
pub struct PaddedAction<'x, X: ActionOps> {
    base: &'x X,
    actor_space: GradedSpace,
    words: WordSpace,
    offset: u32,
    dim: u32,
}

pub fn pad_action<'x, X: ActionOps>(
    base: &'x X,
    letters: GradedSpace,
    offset: u32,
    max_weight: usize,
) -> Result<PaddedAction<'x, X>> {
    if base.kind() != ActionKind::Algebra {
        return Err(Error::InvalidData(
            "only an algebra-type action can be padded to a larger carrier".into(),
        ));
    }
    let inner = base.words().letters();
    let dim = inner.dim() as u32;
    if (offset + dim) as usize > letters.dim() {
        return Err(Error::InvalidData("the embedded range exceeds the carrier".into()));
    }
    for i in 0..dim {
        if letters.degree(offset + i) != inner.degree(i) {
            return Err(Error::InvalidData(
                "the embedded letters disagree in degree with the action target".into(),
            ));
        }
    }
    let actor_space = base.actor_space().clone();
    let words = WordSpace::reduced(letters, max_weight);
    Ok(PaddedAction { base, actor_space, words, offset, dim })
}

impl<'x, X: ActionOps> ActionOps for PaddedAction<'x, X> {
    fn side(&self) -> ActionSide {
        self.base.side()
    }

    fn kind(&self) -> ActionKind {
        ActionKind::BBAlgebra
    }

    fn actor_space(&self) -> &GradedSpace {
        &self.actor_space
    }

    fn words(&self) -> &WordSpace {
        &self.words
    }

    fn act_basis(&self, vs: &[u32], word: &[u32], ctx: &mut EvalCtx) -> WordVec {
        let mut apply = |block: &[u32], letter: u32, ctx: &mut EvalCtx| -> Vector {
            if letter < self.offset || letter >= self.offset + self.dim {
                return Vector::zero();
            }
            let value = self.base.act_basis(block, &[letter - self.offset], ctx);
            let mut out = Vector::zero();
            for (w, c) in value.iter() {
                if w.len() == 1 {
                    out.add_term(self.offset + w[0], c);
                } else {
                    ctx.mark_truncated("acted letter leaves the embedded range");
                }
            }
            out
        };
        distribute_blocks(
            &self.actor_space,
            self.words.letters(),
            self.base.side(),
            vs,
            word,
            &mut apply,
            ctx,
        )
    }
}

/// Outcome of a componentwise comparison of two structures on carriers of
/// the same shape: all basis tuples up to a total arity are enumerated
/// and both component families evaluated on each.
#[derive(Debug, Clone)]
pub struct StructureComparison {
    /// Tuples on which both sides evaluated cleanly and agreed.
    pub agreements: usize,
    /// Tuples dropped because either side hit its knowledge horizon.
    pub skipped: usize,
    /// First disagreement, if any.
    pub mismatch: Option<String>,
}

impl StructureComparison {
    pub fn agree(&self) -> bool {
        self.mismatch.is_none() && self.agreements > 0
    }
}

fn all_tuples(dim: u32, len: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * dim as usize);
        for t in &out {
            for i in 0..dim {
                let mut grown = t.clone();
                grown.push(i);
                next.push(grown);
            }
        }
        out = next;
    }
    out
}

pub fn compare_structures(
    x: &impl BInftyOps,
    y: &impl BInftyOps,
    max_total_arity: usize,
) -> StructureComparison {
    let mut out = StructureComparison { agreements: 0, skipped: 0, mismatch: None };
    let space = x.carrier();
    if !spaces_match(space, y.carrier()) {
        out.mismatch = Some("the carriers disagree in dimension or degrees".into());
        return out;
    }
    let dim = space.dim() as u32;
    for m in 1..max_total_arity {
        for n in 1..=(max_total_arity - m) {
            for tuple in all_tuples(dim, m + n) {
                let (us, vs) = tuple.split_at(m);
                let mut cx = EvalCtx::new();
                let mut cy = EvalCtx::new();
                let bx = x.b_basis(us, vs, &mut cx);
                let by = y.b_basis(us, vs, &mut cy);
                record(&mut out, space, "two-sided family", &[us, vs], &bx, &by, &cx, &cy);
                if out.mismatch.is_some() {
                    return out;
                }
            }
        }
    }
    for m in 1..=max_total_arity {
        for tuple in all_tuples(dim, m) {
            let mut cx = EvalCtx::new();
            let mut cy = EvalCtx::new();
            let dx = x.d_basis(&tuple, &mut cx);
            let dy = y.d_basis(&tuple, &mut cy);
            record(&mut out, space, "one-sided family", &[&tuple], &dx, &dy, &cx, &cy);
            if out.mismatch.is_some() {
                return out;
            }
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn record(
    out: &mut StructureComparison,
    space: &GradedSpace,
    family: &str,
    groups: &[&[u32]],
    bx: &Vector,
    by: &Vector,
    cx: &EvalCtx,
    cy: &EvalCtx,
) {
    if cx.is_truncated() || cy.is_truncated() {
        out.skipped += 1;
    } else if bx == by {
        out.agreements += 1;
    } else {
        out.mismatch = Some(format!(
            "{family} disagrees on {}: {} vs {}",
            describe_probe(space, groups),
            space.show(bx),
            space.show(by),
        ));
    }
}

/// Basis count per degree, for the exactness bookkeeping of extensions.
pub fn degree_dimensions(space: &GradedSpace) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for i in 0..space.dim() as u32 {
        *out.entry(space.degree(i)).or_insert(0) += 1;
    }
    out
}
