//! Actions of brace-structure algebras on truncated tensor carriers.
//!
//! An action is a family of degree-0 operations `β_{k+1}` taking `k ≥ 1`
//! algebra inputs and one target element. Depending on the target kind the
//! action must satisfy, pointwise on basis probes:
//!
//! - the associativity equation against the word product of the acting
//!   algebra (every kind),
//! - the Leibniz equation against the acting differential family and the
//!   target differential (every kind),
//! - the product rule (targets that are algebras),
//! - the coproduct rule (targets that are tensor coalgebras),
//! - the brace rule (targets that carry a full structure themselves).
//!
//! Right-side actions satisfy the mirrored equations: the tensor order of
//! the defining identities is reversed and every Koszul sign is taken for
//! the reversed order. The normalization used throughout: `act_basis(vs,
//! word)` always lists the algebra inputs first; for a right action the
//! same data is read as the operation with the target written on the left.

use crate::binfty::{composite_brace, d_hat, BInftyOps};
use crate::check::{describe_probe, IdentityCheck, ProbeOutcome};
use crate::error::{Error, Result};
use crate::graded::{EvalCtx, GradedSpace, Vector};
use crate::homspace::{CoHomSpace, HomSpace};
use crate::linalg::{neg_one_pow, Rational};
use crate::multimap::MultiMap;
use crate::probe::{compositions, exhaustive_tuples, ProbeGen};
use crate::words::{
    concat_checked, deconcat, lift_coderivation, lift_derivation, multi_insert_word,
    word_degree, MapFamily, WordMap, WordSpace, WordVec,
};

use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Which side of the target the algebra inputs are written on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActionSide {
    Left,
    Right,
}

/// What structure on the target the action must respect.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActionKind {
    /// A graded space with a differential.
    Module,
    /// An algebra; adds the product rule.
    Algebra,
    /// A truncated tensor coalgebra; adds the coproduct rule.
    Coalgebra,
    /// A carrier with a full structure of its own; adds the brace rule.
    BBAlgebra,
}

/// Uniform evaluation interface for actions. Targets are represented as
/// truncated word spaces; plain module and algebra targets use weight-1
/// words only.
pub trait ActionOps {
    fn side(&self) -> ActionSide;
    fn kind(&self) -> ActionKind;

    /// The carrier of the acting structure.
    fn actor_space(&self) -> &GradedSpace;

    /// The target carrier.
    fn words(&self) -> &WordSpace;

    /// `β_{k+1}` on a basis word, `k = vs.len() ≥ 1` algebra basis inputs.
    /// Implementations must mark the context when a requested component
    /// lies beyond their knowledge horizon.
    fn act_basis(&self, vs: &[u32], word: &[u32], ctx: &mut EvalCtx) -> WordVec;

    /// Target differential (degree +1) on basis words.
    fn differential_basis(&self, _word: &[u32], _ctx: &mut EvalCtx) -> WordVec {
        WordVec::zero()
    }

    /// Target product on basis words, when the target is an algebra.
    fn product_basis(&self, _x: &[u32], _y: &[u32], _ctx: &mut EvalCtx) -> Option<WordVec> {
        None
    }
}

/// `β` with the convention `β_1 = Id` for an empty input tuple.
pub fn act_or_id(
    action: &impl ActionOps,
    vs: &[u32],
    word: &[u32],
    ctx: &mut EvalCtx,
) -> WordVec {
    if vs.is_empty() {
        WordVec::single(word.to_vec())
    } else {
        action.act_basis(vs, word, ctx)
    }
}

/// Linear extension of `act_basis` over a word vector.
pub fn act_words(
    action: &impl ActionOps,
    vs: &[u32],
    w: &WordVec,
    ctx: &mut EvalCtx,
) -> WordVec {
    let mut out = WordVec::zero();
    for (word, c) in w.iter() {
        out.add_scaled(&act_or_id(action, vs, word, ctx), c);
    }
    out
}

/// Linear extension of the target differential over a word vector.
pub fn diff_words(action: &impl ActionOps, w: &WordVec, ctx: &mut EvalCtx) -> WordVec {
    let mut out = WordVec::zero();
    for (word, c) in w.iter() {
        out.add_scaled(&action.differential_basis(word, ctx), c);
    }
    out
}

/// Bilinear extension of the target product; `None` when the target has
/// no product.
pub fn product_words(
    action: &impl ActionOps,
    x: &WordVec,
    y: &WordVec,
    ctx: &mut EvalCtx,
) -> Option<WordVec> {
    let mut out = WordVec::zero();
    for (xw, xc) in x.iter() {
        for (yw, yc) in y.iter() {
            let p = action.product_basis(xw, yw, ctx)?;
            out.add_scaled(&p, &(xc * yc));
        }
    }
    Some(out)
}

/// Decide an outcome from two word vectors over an enumerated word space.
pub fn conclude_words(
    ws: &WordSpace,
    lhs: &WordVec,
    rhs: &WordVec,
    ctx: &EvalCtx,
) -> ProbeOutcome {
    let to_vec = |wv: &WordVec| -> Vector {
        ws.to_sparse(wv).map(|s| Vector::from_sparse(&s)).unwrap_or_else(|_| Vector::zero())
    };
    if ctx.is_truncated() {
        ProbeOutcome::Skipped { reasons: ctx.reasons().to_vec() }
    } else if lhs.sub(rhs).is_zero() {
        ProbeOutcome::Pass
    } else {
        ProbeOutcome::Fail { lhs: to_vec(lhs), rhs: to_vec(rhs) }
    }
}

/// Formal sums of word pairs, used for coproduct comparisons.
type PairVec = BTreeMap<(Vec<u32>, Vec<u32>), Rational>;

fn pair_add(map: &mut PairVec, key: (Vec<u32>, Vec<u32>), c: &Rational) {
    use std::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(e) => {
            if !c.is_zero() {
                e.insert(c.clone());
            }
        }
        Entry::Occupied(mut e) => {
            let v = e.get() + c;
            if v.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = v;
            }
        }
    }
}

fn pair_product(out: &mut PairVec, left: &WordVec, right: &WordVec, scale: &Rational) {
    for (lw, lc) in left.iter() {
        for (rw, rc) in right.iter() {
            pair_add(out, (lw.clone(), rw.clone()), &(lc * rc * scale));
        }
    }
}

fn conclude_pairs(lhs: &PairVec, rhs: &PairVec, ctx: &EvalCtx) -> ProbeOutcome {
    if ctx.is_truncated() {
        return ProbeOutcome::Skipped { reasons: ctx.reasons().to_vec() };
    }
    if lhs == rhs {
        return ProbeOutcome::Pass;
    }
    // Index the union of keys to report the disagreement as vectors.
    let mut keys: Vec<&(Vec<u32>, Vec<u32>)> = lhs.keys().chain(rhs.keys()).collect();
    keys.sort();
    keys.dedup();
    let index: BTreeMap<_, usize> = keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let to_vec = |m: &PairVec| {
        let sparse: BTreeMap<usize, Rational> =
            m.iter().map(|(k, c)| (index[k], c.clone())).collect();
        Vector::from_sparse(&sparse)
    };
    ProbeOutcome::Fail { lhs: to_vec(lhs), rhs: to_vec(rhs) }
}

/// Probe budget for the action checkers.
#[derive(Debug, Clone)]
pub struct ActionPlan {
    /// Total arity budget for acting tuples per equation.
    pub max_actor_arity: usize,
    /// Largest target word weight probed.
    pub max_weight: usize,
    /// Probe count per (shape, weight) cell.
    pub reps: usize,
    pub seed: u64,
}

pub(crate) fn sample_word(gen: &mut ProbeGen, ws: &WordSpace, weight: usize) -> Option<Vec<u32>> {
    let of_weight: Vec<&Vec<u32>> =
        ws.words().iter().filter(|w| w.len() == weight).collect();
    if of_weight.is_empty() {
        return None;
    }
    Some(of_weight[gen.sample_index(of_weight.len())].clone())
}

pub(crate) fn describe_action_probe(
    aspace: &GradedSpace,
    letters: &GradedSpace,
    tuples: &[&[u32]],
    words: &[&[u32]],
) -> String {
    let left = describe_probe(aspace, tuples);
    let right = describe_probe(letters, words);
    format!("{left} on {right}")
}

/// Abort with [`Error::ActionAxiomViolation`] on the first outright
/// failure in a batch of checks; skipped probes are tolerated.
pub(crate) fn reject_failures(checks: &[IdentityCheck]) -> Result<()> {
    if let Some(c) = checks.iter().find(|c| c.outcome.is_fail()) {
        return Err(Error::ActionAxiomViolation(format!(
            "input action fails `{}` on {}",
            c.identity, c.probe
        )));
    }
    Ok(())
}

/// Both sides of the associativity equation on one probe.
fn associativity_outcome(
    actor: &impl BInftyOps,
    action: &impl ActionOps,
    us: &[u32],
    vs: &[u32],
    word: &[u32],
) -> ProbeOutcome {
    let mut ctx = EvalCtx::new();
    let mut lhs = WordVec::zero();
    for p in 1..=(us.len() + vs.len()) {
        for (t, c) in composite_brace(actor, us, vs, p, &mut ctx).iter() {
            lhs.add_scaled(&action.act_basis(t, word, &mut ctx), c);
        }
    }
    let rhs = match action.side() {
        ActionSide::Left => {
            let inner = action.act_basis(vs, word, &mut ctx);
            act_words(action, us, &inner, &mut ctx)
        }
        ActionSide::Right => {
            let inner = action.act_basis(us, word, &mut ctx);
            act_words(action, vs, &inner, &mut ctx)
        }
    };
    conclude_words(action.words(), &lhs, &rhs, &ctx)
}

/// Both sides of the Leibniz equation on one probe, with the target
/// differential supplied by a closure (so callers can substitute the
/// coderivation of a full target structure).
fn leibniz_outcome(
    actor: &impl BInftyOps,
    action: &impl ActionOps,
    vs: &[u32],
    word: &[u32],
    target_diff: &mut impl FnMut(&[u32], &mut EvalCtx) -> WordVec,
) -> ProbeOutcome {
    let aspace = actor.carrier();
    let mut ctx = EvalCtx::new();
    let acted = action.act_basis(vs, word, &mut ctx);
    let mut lhs = WordVec::zero();
    for (w, c) in acted.iter() {
        lhs.add_scaled(&target_diff(w, &mut ctx), c);
    }
    let mut acted_d = WordVec::zero();
    for (t, c) in d_hat(actor, vs, &mut ctx).iter() {
        acted_d.add_scaled(&action.act_basis(t, word, &mut ctx), c);
    }
    let dw = target_diff(word, &mut ctx);
    let mut dw_acted = WordVec::zero();
    for (w, c) in dw.iter() {
        dw_acted.add_scaled(&act_or_id(action, vs, w, &mut ctx), c);
    }
    let rhs = match action.side() {
        ActionSide::Left => {
            let sign = neg_one_pow(word_degree(aspace, vs));
            acted_d.add(&dw_acted.scale(&sign))
        }
        ActionSide::Right => {
            let letters = action.words().letters();
            let sign = neg_one_pow(word_degree(letters, word));
            dw_acted.add(&acted_d.scale(&sign))
        }
    };
    conclude_words(action.words(), &lhs, &rhs, &ctx)
}

/// Both sides of the product rule on one probe.
fn product_rule_outcome(
    actor_space: &GradedSpace,
    action: &impl ActionOps,
    vs: &[u32],
    x: &[u32],
    y: &[u32],
) -> Result<ProbeOutcome> {
    let letters = action.words().letters();
    let k = vs.len();
    let mut ctx = EvalCtx::new();
    let product = action.product_basis(x, y, &mut ctx).ok_or_else(|| {
        Error::InvalidData("product rule requested for a target without a product".into())
    })?;
    let mut lhs = WordVec::zero();
    for (w, c) in product.iter() {
        lhs.add_scaled(&action.act_basis(vs, w, &mut ctx), c);
    }
    let mut rhs = WordVec::zero();
    for i in 0..=k {
        let first = act_or_id(action, &vs[..i], x, &mut ctx);
        let second = act_or_id(action, &vs[i..], y, &mut ctx);
        let sign = match action.side() {
            ActionSide::Left => neg_one_pow(
                word_degree(letters, x) * word_degree(actor_space, &vs[i..]),
            ),
            ActionSide::Right => neg_one_pow(
                word_degree(letters, y) * word_degree(actor_space, &vs[..i]),
            ),
        };
        let p = product_words(action, &first, &second, &mut ctx).ok_or_else(|| {
            Error::InvalidData("product rule requested for a target without a product".into())
        })?;
        rhs.add_scaled(&p, &sign);
    }
    Ok(conclude_words(action.words(), &lhs, &rhs, &ctx))
}

/// Both sides of the coproduct rule on one probe.
fn coproduct_rule_outcome(
    actor_space: &GradedSpace,
    action: &impl ActionOps,
    vs: &[u32],
    word: &[u32],
) -> ProbeOutcome {
    let letters = action.words().letters();
    let k = vs.len();
    let mut ctx = EvalCtx::new();
    let mut lhs: PairVec = PairVec::new();
    for (w, c) in action.act_basis(vs, word, &mut ctx).iter() {
        for (a, b) in deconcat(w) {
            pair_add(&mut lhs, (a, b), c);
        }
    }
    let mut rhs: PairVec = PairVec::new();
    for (x, y) in deconcat(word) {
        for i in 0..=k {
            let sign = match action.side() {
                ActionSide::Left => neg_one_pow(
                    word_degree(letters, &x) * word_degree(actor_space, &vs[i..]),
                ),
                ActionSide::Right => neg_one_pow(
                    word_degree(letters, &y) * word_degree(actor_space, &vs[..i]),
                ),
            };
            let first = act_or_id(action, &vs[..i], &x, &mut ctx);
            let second = act_or_id(action, &vs[i..], &y, &mut ctx);
            pair_product(&mut rhs, &first, &second, &sign);
        }
    }
    conclude_pairs(&lhs, &rhs, &ctx)
}

/// Run the axiom checks appropriate for the action's kind: associativity
/// and Leibniz always; the product rule for algebra targets; the coproduct
/// rule for coalgebra targets. Actions on a full structure are checked by
/// [`verify_action_over`].
pub fn verify_action(
    actor: &impl BInftyOps,
    action: &impl ActionOps,
    plan: &ActionPlan,
) -> Result<Vec<IdentityCheck>> {
    if action.kind() == ActionKind::BBAlgebra {
        return Err(Error::InvalidData(
            "actions on a full structure are checked by verify_action_over".into(),
        ));
    }
    let aspace = actor.carrier();
    let ws = action.words();
    let letters = ws.letters().clone();
    let mut gen = ProbeGen::new(plan.seed);
    let mut checks = Vec::new();
    let max_w = ws.max_weight().min(plan.max_weight).max(1);

    // Associativity: acting tuples (us | vs), one target word.
    for m in 1..plan.max_actor_arity.max(2) {
        for n in 1..=(plan.max_actor_arity.saturating_sub(m)).max(1) {
            for weight in 1..=max_w {
                for _ in 0..plan.reps {
                    let us = gen.sample_tuple(aspace, m);
                    let vs = gen.sample_tuple(aspace, n);
                    let Some(word) = sample_word(&mut gen, ws, weight) else { continue };
                    checks.push(IdentityCheck {
                        identity: "action-associativity",
                        probe: describe_action_probe(aspace, &letters, &[&us, &vs], &[&word]),
                        outcome: associativity_outcome(actor, action, &us, &vs, &word),
                    });
                }
            }
        }
    }

    // Leibniz: one acting tuple, one target word.
    for m in 1..=plan.max_actor_arity {
        for weight in 1..=max_w {
            for _ in 0..plan.reps {
                let vs = gen.sample_tuple(aspace, m);
                let Some(word) = sample_word(&mut gen, ws, weight) else { continue };
                let mut diff = |w: &[u32], ctx: &mut EvalCtx| action.differential_basis(w, ctx);
                checks.push(IdentityCheck {
                    identity: "action-leibniz",
                    probe: describe_action_probe(aspace, &letters, &[&vs], &[&word]),
                    outcome: leibniz_outcome(actor, action, &vs, &word, &mut diff),
                });
            }
        }
    }

    match action.kind() {
        ActionKind::Algebra => {
            for m in 1..=plan.max_actor_arity {
                for wx in 1..=max_w {
                    for wy in 1..=(ws.max_weight().saturating_sub(wx)).min(plan.max_weight).max(
                        if ws.max_weight() > wx { 1 } else { 0 },
                    ) {
                        for _ in 0..plan.reps {
                            let vs = gen.sample_tuple(aspace, m);
                            let Some(x) = sample_word(&mut gen, ws, wx) else { continue };
                            let Some(y) = sample_word(&mut gen, ws, wy) else { continue };
                            checks.push(IdentityCheck {
                                identity: "action-product-rule",
                                probe: describe_action_probe(
                                    aspace,
                                    &letters,
                                    &[&vs],
                                    &[&x, &y],
                                ),
                                outcome: product_rule_outcome(aspace, action, &vs, &x, &y)?,
                            });
                        }
                    }
                }
            }
        }
        ActionKind::Coalgebra => {
            for m in 1..=plan.max_actor_arity {
                for weight in 2..=max_w {
                    for _ in 0..plan.reps {
                        let vs = gen.sample_tuple(aspace, m);
                        let Some(word) = sample_word(&mut gen, ws, weight) else { continue };
                        checks.push(IdentityCheck {
                            identity: "action-coproduct-rule",
                            probe: describe_action_probe(aspace, &letters, &[&vs], &[&word]),
                            outcome: coproduct_rule_outcome(aspace, action, &vs, &word),
                        });
                    }
                }
            }
        }
        ActionKind::Module | ActionKind::BBAlgebra => {}
    }
    Ok(checks)
}

/// Axiom checks for an action on a carrier with a full structure of its
/// own: the base module equations with the target coderivation as the
/// differential, plus the brace rule relating the action to the target's
/// word product.
pub fn verify_action_over(
    actor: &impl BInftyOps,
    target: &impl BInftyOps,
    action: &impl ActionOps,
    plan: &ActionPlan,
) -> Result<Vec<IdentityCheck>> {
    if action.kind() != ActionKind::BBAlgebra {
        return Err(Error::InvalidData(
            "verify_action_over expects an action on a full structure".into(),
        ));
    }
    let aspace = actor.carrier();
    let ws = action.words();
    let letters = ws.letters().clone();
    if letters.dim() != target.carrier().dim() {
        return Err(Error::InvalidData(
            "target carrier does not match the action's letter space".into(),
        ));
    }
    let mut gen = ProbeGen::new(plan.seed);
    let mut checks = Vec::new();
    let max_w = ws.max_weight().min(plan.max_weight).max(1);

    for m in 1..plan.max_actor_arity.max(2) {
        for n in 1..=(plan.max_actor_arity.saturating_sub(m)).max(1) {
            for weight in 1..=max_w {
                for _ in 0..plan.reps {
                    let us = gen.sample_tuple(aspace, m);
                    let vs = gen.sample_tuple(aspace, n);
                    let Some(word) = sample_word(&mut gen, ws, weight) else { continue };
                    checks.push(IdentityCheck {
                        identity: "action-associativity",
                        probe: describe_action_probe(aspace, &letters, &[&us, &vs], &[&word]),
                        outcome: associativity_outcome(actor, action, &us, &vs, &word),
                    });
                }
            }
        }
    }
    for m in 1..=plan.max_actor_arity {
        for weight in 1..=max_w {
            for _ in 0..plan.reps {
                let vs = gen.sample_tuple(aspace, m);
                let Some(word) = sample_word(&mut gen, ws, weight) else { continue };
                let mut diff = |w: &[u32], ctx: &mut EvalCtx| d_hat(target, w, ctx);
                checks.push(IdentityCheck {
                    identity: "action-leibniz",
                    probe: describe_action_probe(aspace, &letters, &[&vs], &[&word]),
                    outcome: leibniz_outcome(actor, action, &vs, &word, &mut diff),
                });
            }
        }
    }

    // Brace rule: the action against the target's word product.
    for m in 1..=plan.max_actor_arity {
        for wu in 1..=max_w {
            for wv in 1..=max_w.min(ws.max_weight().saturating_sub(wu)).max(
                if ws.max_weight() > wu { 1 } else { 0 },
            ) {
                for _ in 0..plan.reps {
                    let bs = gen.sample_tuple(aspace, m);
                    let Some(us) = sample_word(&mut gen, ws, wu) else { continue };
                    let Some(vs) = sample_word(&mut gen, ws, wv) else { continue };
                    let outcome =
                        brace_rule_outcome(aspace, target, action, &bs, &us, &vs);
                    checks.push(IdentityCheck {
                        identity: "action-brace-rule",
                        probe: describe_action_probe(aspace, &letters, &[&bs], &[&us, &vs]),
                        outcome,
                    });
                }
            }
        }
    }
    Ok(checks)
}

/// Both sides of the brace rule on one probe: acting on the target's word
/// product equals the two-block distribution of the acting tuple over the
/// product's factors.
fn brace_rule_outcome(
    actor_space: &GradedSpace,
    target: &impl BInftyOps,
    action: &impl ActionOps,
    bs: &[u32],
    us: &[u32],
    vs: &[u32],
) -> ProbeOutcome {
    let letters = action.words().letters();
    let k = bs.len();
    let mut ctx = EvalCtx::new();
    let mut lhs = WordVec::zero();
    for p in 1..=(us.len() + vs.len()) {
        for (t, c) in composite_brace(target, us, vs, p, &mut ctx).iter() {
            lhs.add_scaled(&action.act_basis(bs, t, &mut ctx), c);
        }
    }
    let mut rhs = WordVec::zero();
    for i in 0..=k {
        let sign = match action.side() {
            ActionSide::Left => neg_one_pow(
                word_degree(letters, us) * word_degree(actor_space, &bs[i..]),
            ),
            ActionSide::Right => neg_one_pow(
                word_degree(letters, vs) * word_degree(actor_space, &bs[..i]),
            ),
        };
        let first = act_or_id(action, &bs[..i], us, &mut ctx);
        let second = act_or_id(action, &bs[i..], vs, &mut ctx);
        for (uw, uc) in first.iter() {
            for (vw, vc) in second.iter() {
                for p in 1..=(uw.len() + vw.len()) {
                    let braced = composite_brace(target, uw, vw, p, &mut ctx);
                    rhs.add_scaled(&braced, &(uc * vc * &sign));
                }
            }
        }
    }
    conclude_words(action.words(), &lhs, &rhs, &ctx)
}

/// Split the acting tuple into consecutive (possibly empty) blocks, one
/// per letter of the word in order, apply each nonempty block to its
/// letter, and tensor the letter outputs. The Koszul sign per nonempty
/// block counts the original letters strictly before (left actions) or
/// strictly after (right actions) its letter. This recursion is the
/// letterwise extension shared by the coproduct rule (on tensor
/// coalgebras) and the product rule (on free algebras with letter-valued
/// generators).
pub(crate) fn distribute_blocks(
    actor_space: &GradedSpace,
    letters: &GradedSpace,
    side: ActionSide,
    vs: &[u32],
    word: &[u32],
    apply: &mut dyn FnMut(&[u32], u32, &mut EvalCtx) -> Vector,
    ctx: &mut EvalCtx,
) -> WordVec {
    #[allow(clippy::too_many_arguments)]
    fn rec(
        actor_space: &GradedSpace,
        letters: &GradedSpace,
        side: ActionSide,
        total_deg: i64,
        vs: &[u32],
        word: &[u32],
        i: usize,
        j: usize,
        deg_before: i64,
        prefix: &[u32],
        coeff: &Rational,
        apply: &mut dyn FnMut(&[u32], u32, &mut EvalCtx) -> Vector,
        ctx: &mut EvalCtx,
        out: &mut WordVec,
    ) {
        if i == word.len() {
            if j == vs.len() {
                out.add_term(prefix.to_vec(), coeff);
            }
            return;
        }
        let letter = word[i];
        let ldeg = letters.degree(letter);
        for take in 0..=(vs.len() - j) {
            let (val, sign) = if take == 0 {
                (Vector::basis(letter), Rational::one())
            } else {
                let block = &vs[j..j + take];
                let block_deg = word_degree(actor_space, block);
                let moved = match side {
                    ActionSide::Left => deg_before,
                    ActionSide::Right => total_deg - deg_before - ldeg,
                };
                (apply(block, letter, ctx), neg_one_pow(block_deg * moved))
            };
            for (l, c) in val.iter() {
                let mut p = prefix.to_vec();
                p.push(l);
                rec(
                    actor_space,
                    letters,
                    side,
                    total_deg,
                    vs,
                    word,
                    i + 1,
                    j + take,
                    deg_before + ldeg,
                    &p,
                    &(coeff * c * &sign),
                    apply,
                    ctx,
                    out,
                );
            }
        }
    }
    let total = word_degree(letters, word);
    let mut out = WordVec::zero();
    rec(
        actor_space,
        letters,
        side,
        total,
        vs,
        word,
        0,
        0,
        0,
        &[],
        &Rational::one(),
        apply,
        ctx,
        &mut out,
    );
    out
}

/// Finite table of `β`-values on letters, extended to longer words by the
/// coproduct-rule recursion when the kind calls for it. Values absent from
/// the table are zero; tuple arities beyond the declared horizon mark the
/// context.
#[derive(Debug, Clone)]
pub struct TableAction {
    side: ActionSide,
    kind: ActionKind,
    actor_space: GradedSpace,
    words: WordSpace,
    max_m: usize,
    betas: BTreeMap<usize, BTreeMap<(Vec<u32>, u32), Vector>>,
    differential: Option<MapFamily>,
    product: Option<MultiMap>,
}

impl TableAction {
    pub fn new(
        side: ActionSide,
        kind: ActionKind,
        actor_space: GradedSpace,
        target_letters: GradedSpace,
        max_weight: usize,
        max_m: usize,
    ) -> Self {
        let weight = match kind {
            ActionKind::Module | ActionKind::Algebra => 1,
            ActionKind::Coalgebra | ActionKind::BBAlgebra => max_weight,
        };
        TableAction {
            side,
            kind,
            actor_space,
            words: WordSpace::reduced(target_letters, weight),
            max_m,
            betas: BTreeMap::new(),
            differential: None,
            product: None,
        }
    }

    /// Install `β_m(tuple, letter) = value`; the value must be homogeneous
    /// of the input degree (the operation has degree 0).
    pub fn set_beta(&mut self, m: usize, tuple: &[u32], letter: u32, value: Vector) -> Result<()> {
        if m < 2 || m > self.max_m {
            return Err(Error::InvalidData(format!(
                "component β_{m} outside the declared range 2..={}",
                self.max_m
            )));
        }
        if tuple.len() != m - 1 {
            return Err(Error::InvalidData(format!(
                "β_{m} takes {} algebra inputs, found {}",
                m - 1,
                tuple.len()
            )));
        }
        let letters = self.words.letters();
        let want = word_degree(&self.actor_space, tuple) + letters.degree(letter);
        if !value.is_zero() {
            let got = letters.homogeneous_degree(&value)?;
            if got != want {
                return Err(Error::NotHomogeneous(format!(
                    "β_{m} value has degree {got}, expected {want}"
                )));
            }
        }
        self.betas.entry(m).or_default().insert((tuple.to_vec(), letter), value);
        Ok(())
    }

    pub fn set_differential(&mut self, d: MultiMap) -> Result<()> {
        if d.arity() != 1 || d.degree() != 1 {
            return Err(Error::InvalidData(
                "target differential must be an arity-1 degree-+1 map".into(),
            ));
        }
        d.check_degree(self.words.letters())?;
        let mut fam = MapFamily::total(1);
        fam.insert(d)?;
        self.differential = Some(fam);
        Ok(())
    }

    /// Install a coderivation-generating family as the word differential
    /// (for targets whose differential has components of several arities,
    /// such as bar constructions).
    pub fn set_differential_family(&mut self, fam: MapFamily) -> Result<()> {
        if fam.degree() != 1 {
            return Err(Error::InvalidData(format!(
                "word differential family must have degree +1, found {}",
                fam.degree()
            )));
        }
        self.differential = Some(fam);
        Ok(())
    }

    pub fn set_product(&mut self, p: MultiMap) -> Result<()> {
        if p.arity() != 2 || p.degree() != 0 {
            return Err(Error::InvalidData(
                "target product must be an arity-2 degree-0 map".into(),
            ));
        }
        p.check_degree(self.words.letters())?;
        self.product = Some(p);
        Ok(())
    }

    fn beta_letter(&self, vs: &[u32], letter: u32, ctx: &mut EvalCtx) -> Vector {
        let m = vs.len() + 1;
        if m > self.max_m {
            ctx.mark_truncated(format!(
                "action component β_{m} beyond the declared horizon {}",
                self.max_m
            ));
            return Vector::zero();
        }
        self.betas
            .get(&m)
            .and_then(|t| t.get(&(vs.to_vec(), letter)))
            .cloned()
            .unwrap_or_else(Vector::zero)
    }

}

impl ActionOps for TableAction {
    fn side(&self) -> ActionSide {
        self.side
    }

    fn kind(&self) -> ActionKind {
        self.kind
    }

    fn actor_space(&self) -> &GradedSpace {
        &self.actor_space
    }

    fn words(&self) -> &WordSpace {
        &self.words
    }

    fn act_basis(&self, vs: &[u32], word: &[u32], ctx: &mut EvalCtx) -> WordVec {
        match self.kind {
            ActionKind::Module | ActionKind::Algebra => {
                if word.len() == 1 {
                    WordVec::from_letters(&self.beta_letter(vs, word[0], ctx))
                } else {
                    WordVec::zero()
                }
            }
            ActionKind::Coalgebra | ActionKind::BBAlgebra => {
                if vs.is_empty() {
                    return WordVec::single(word.to_vec());
                }
                distribute_blocks(
                    &self.actor_space,
                    self.words.letters(),
                    self.side,
                    vs,
                    word,
                    &mut |block, letter, ctx| self.beta_letter(block, letter, ctx),
                    ctx,
                )
            }
        }
    }

    fn differential_basis(&self, word: &[u32], ctx: &mut EvalCtx) -> WordVec {
        match &self.differential {
            Some(fam) => lift_coderivation(fam, word, self.words.letters(), ctx),
            None => WordVec::zero(),
        }
    }

    fn product_basis(&self, x: &[u32], y: &[u32], _ctx: &mut EvalCtx) -> Option<WordVec> {
        let p = self.product.as_ref()?;
        if x.len() == 1 && y.len() == 1 {
            Some(WordVec::from_letters(&p.apply_basis(&[x[0], y[0]])))
        } else {
            None
        }
    }
}

/// The canonical left action of the operator algebra on the truncated
/// tensor coalgebra of its letters: a single operator acts as the
/// coderivation insertion, several operators insert at disjoint
/// consecutive blocks in order, and an optional degree-+1 letter family
/// supplies the word differential.
#[derive(Debug, Clone)]
pub struct EndoAction {
    hom: HomSpace,
    words: WordSpace,
    letter_ops: Vec<MultiMap>,
    diff: Option<MapFamily>,
}

impl EndoAction {
    pub fn new(letters: GradedSpace, max_arity: usize, max_weight: usize) -> Self {
        let hom = HomSpace::new(letters.clone(), max_arity);
        let words = WordSpace::reduced(letters, max_weight);
        let letter_ops = cache_letter_ops(&hom);
        EndoAction { hom, words, letter_ops, diff: None }
    }

    /// Install the word differential generated by a degree-+1 family on
    /// letters.
    pub fn with_differential(mut self, fam: MapFamily) -> Result<Self> {
        if fam.degree() != 1 {
            return Err(Error::InvalidData(format!(
                "word differential family must have degree +1, found {}",
                fam.degree()
            )));
        }
        self.diff = Some(fam);
        Ok(self)
    }

    pub fn hom(&self) -> &HomSpace {
        &self.hom
    }

    /// Action of operator vectors (expanded multilinearly).
    pub fn act_elements(&self, ops: &[Vector], word: &[u32], ctx: &mut EvalCtx) -> WordVec {
        let mut out = WordVec::zero();
        let mut chosen: Vec<u32> = Vec::with_capacity(ops.len());
        expand_supports(ops, &mut chosen, &Rational::one(), &mut |idxs, coeff| {
            out.add_scaled(&self.act_basis(idxs, word, ctx), coeff);
        });
        out
    }
}

/// One single-entry multilinear map per elementary operator index.
fn cache_letter_ops(hom: &HomSpace) -> Vec<MultiMap> {
    (0..hom.dim() as u32)
        .map(|i| {
            let (tuple, out) = hom.elem(i);
            let mut m = MultiMap::new(tuple.len(), hom.space().degree(i));
            m.set_entry(tuple.to_vec(), Vector::basis(out));
            m
        })
        .collect()
}

/// Depth-first expansion over the supports of a list of vectors.
fn expand_supports(
    vecs: &[Vector],
    chosen: &mut Vec<u32>,
    coeff: &Rational,
    f: &mut impl FnMut(&[u32], &Rational),
) {
    if chosen.len() == vecs.len() {
        f(chosen, coeff);
        return;
    }
    let next = &vecs[chosen.len()];
    for (idx, c) in next.iter() {
        chosen.push(idx);
        expand_supports(vecs, chosen, &(coeff * c), f);
        chosen.pop();
    }
}

impl ActionOps for EndoAction {
    fn side(&self) -> ActionSide {
        ActionSide::Left
    }

    fn kind(&self) -> ActionKind {
        ActionKind::Coalgebra
    }

    fn actor_space(&self) -> &GradedSpace {
        self.hom.space()
    }

    fn words(&self) -> &WordSpace {
        &self.words
    }

    fn act_basis(&self, vs: &[u32], word: &[u32], _ctx: &mut EvalCtx) -> WordVec {
        let ops: Vec<&MultiMap> = vs.iter().map(|&i| &self.letter_ops[i as usize]).collect();
        multi_insert_word(&ops, word, self.words.letters())
    }

    fn differential_basis(&self, word: &[u32], ctx: &mut EvalCtx) -> WordVec {
        match &self.diff {
            Some(fam) => lift_coderivation(fam, word, self.words.letters(), ctx),
            None => WordVec::zero(),
        }
    }
}

/// The canonical action of the co-operator algebra on the truncated free
/// algebra of its letters: a single co-operator acts as the derivation
/// replacing one letter by its image word, several act at distinct letters
/// in order; the product is concatenation. The co-operator brace composes
/// inner-to-outer, so this is a right action: later inputs are applied
/// after earlier ones, and each operator's Koszul sign counts the original
/// letters after its landing site.
#[derive(Debug, Clone)]
pub struct CoendoAction {
    cohom: CoHomSpace,
    words: WordSpace,
    diff: Option<WordMap>,
}

impl CoendoAction {
    pub fn new(letters: GradedSpace, max_arity: usize, max_weight: usize) -> Self {
        let cohom = CoHomSpace::new(letters.clone(), max_arity);
        let words = WordSpace::reduced(letters, max_weight);
        CoendoAction { cohom, words, diff: None }
    }

    /// Install the word differential generated by a degree-+1 letter map.
    pub fn with_differential(mut self, gen: WordMap) -> Result<Self> {
        if gen.degree() != 1 {
            return Err(Error::InvalidData(format!(
                "derivation generator must have degree +1, found {}",
                gen.degree()
            )));
        }
        self.diff = Some(gen);
        Ok(self)
    }

    pub fn cohom(&self) -> &CoHomSpace {
        &self.cohom
    }

    fn splice(
        &self,
        vs: &[u32],
        word: &[u32],
        total_deg: i64,
        from: usize,
        deg_before: i64,
        prefix: &[u32],
        coeff: &Rational,
        out: &mut WordVec,
        ctx: &mut EvalCtx,
    ) {
        let letters = self.words.letters();
        let Some((&op, rest)) = vs.split_first() else {
            let mut w = prefix.to_vec();
            w.extend_from_slice(&word[from..]);
            if w.len() > self.words.max_weight() {
                ctx.mark_truncated(format!(
                    "spliced word weight {} beyond cutoff {}",
                    w.len(),
                    self.words.max_weight()
                ));
            } else {
                out.add_term(w, coeff);
            }
            return;
        };
        let (input, image) = self.cohom.elem(op);
        let op_degree = self.cohom.space().degree(op);
        let mut deg = deg_before;
        for pos in from..word.len() {
            if word[pos] == input {
                let suffix_deg = total_deg - deg - letters.degree(word[pos]);
                let sign = neg_one_pow(op_degree * suffix_deg);
                let mut new_prefix = prefix.to_vec();
                new_prefix.extend_from_slice(&word[from..pos]);
                new_prefix.extend_from_slice(image);
                self.splice(
                    rest,
                    word,
                    total_deg,
                    pos + 1,
                    deg + letters.degree(word[pos]),
                    &new_prefix,
                    &(coeff * &sign),
                    out,
                    ctx,
                );
            }
            deg += letters.degree(word[pos]);
        }
    }
}

impl ActionOps for CoendoAction {
    fn side(&self) -> ActionSide {
        ActionSide::Right
    }

    fn kind(&self) -> ActionKind {
        ActionKind::Algebra
    }

    fn actor_space(&self) -> &GradedSpace {
        self.cohom.space()
    }

    fn words(&self) -> &WordSpace {
        &self.words
    }

    fn act_basis(&self, vs: &[u32], word: &[u32], ctx: &mut EvalCtx) -> WordVec {
        let total = word_degree(self.words.letters(), word);
        let mut out = WordVec::zero();
        self.splice(vs, word, total, 0, 0, &[], &Rational::one(), &mut out, ctx);
        out
    }

    fn differential_basis(&self, word: &[u32], ctx: &mut EvalCtx) -> WordVec {
        match &self.diff {
            Some(gen) => lift_derivation(
                gen,
                word,
                self.words.letters(),
                self.words.max_weight(),
                ctx,
            ),
            None => WordVec::zero(),
        }
    }

    fn product_basis(&self, x: &[u32], y: &[u32], ctx: &mut EvalCtx) -> Option<WordVec> {
        match concat_checked(x, y, self.words.max_weight(), ctx) {
            Some(w) => Some(WordVec::single(w)),
            None => Some(WordVec::zero()),
        }
    }
}

/// Left action of an operator algebra on tensor words over its own
/// operator letters: a single operator consumes a block of consecutive
/// letters through the tensor composition, several act at disjoint blocks
/// in order, with prefix Koszul signs.
#[derive(Debug, Clone)]
pub struct LeftCompositionAction {
    hom: HomSpace,
    words: WordSpace,
}

impl LeftCompositionAction {
    pub fn new(hom: HomSpace, max_weight: usize) -> Self {
        let words = WordSpace::reduced(hom.space().clone(), max_weight);
        LeftCompositionAction { hom, words }
    }

    pub fn hom(&self) -> &HomSpace {
        &self.hom
    }
}

impl ActionOps for LeftCompositionAction {
    fn side(&self) -> ActionSide {
        ActionSide::Left
    }

    fn kind(&self) -> ActionKind {
        ActionKind::Coalgebra
    }

    fn actor_space(&self) -> &GradedSpace {
        self.hom.space()
    }

    fn words(&self) -> &WordSpace {
        &self.words
    }

    fn act_basis(&self, vs: &[u32], word: &[u32], ctx: &mut EvalCtx) -> WordVec {
        let specs: Vec<(u32, usize, i64)> = vs
            .iter()
            .map(|&v| (v, self.hom.arity_of(v), self.hom.space().degree(v)))
            .collect();
        let mut out = WordVec::zero();
        block_insert(
            &specs,
            word,
            self.words.letters(),
            false,
            &mut |op, block, ctx| self.hom.compose_tensor(op, block, ctx),
            ctx,
            &mut out,
        );
        out
    }
}

/// Right action of an operator algebra on tensor words over its own
/// operator letters: the acting tuple is split into consecutive (possibly
/// empty) blocks, one per letter in order, and each nonempty block is
/// brace-inserted into its letter. Each block's Koszul sign counts the
/// original letters strictly after its letter.
#[derive(Debug, Clone)]
pub struct RightCompositionAction {
    hom: HomSpace,
    words: WordSpace,
}

impl RightCompositionAction {
    pub fn new(hom: HomSpace, max_weight: usize) -> Self {
        let words = WordSpace::reduced(hom.space().clone(), max_weight);
        RightCompositionAction { hom, words }
    }

    pub fn hom(&self) -> &HomSpace {
        &self.hom
    }
}

impl ActionOps for RightCompositionAction {
    fn side(&self) -> ActionSide {
        ActionSide::Right
    }

    fn kind(&self) -> ActionKind {
        ActionKind::Coalgebra
    }

    fn actor_space(&self) -> &GradedSpace {
        self.hom.space()
    }

    fn words(&self) -> &WordSpace {
        &self.words
    }

    fn act_basis(&self, vs: &[u32], word: &[u32], ctx: &mut EvalCtx) -> WordVec {
        distribute_blocks(
            self.hom.space(),
            self.words.letters(),
            ActionSide::Right,
            vs,
            word,
            &mut |block, letter, ctx| self.hom.brace_elementary(letter, block, ctx),
            ctx,
        )
    }
}

/// Shared placement recursion for block-consuming letter operations:
/// assign the ordered operator list to disjoint consecutive blocks of the
/// word, replace each block by the (letter-vector valued) application, and
/// sign each operator against the original letters strictly before
/// (prefix) or after (suffix) its block.
fn block_insert(
    specs: &[(u32, usize, i64)],
    word: &[u32],
    letters: &GradedSpace,
    suffix_signs: bool,
    apply: &mut impl FnMut(u32, &[u32], &mut EvalCtx) -> Vector,
    ctx: &mut EvalCtx,
    out: &mut WordVec,
) {
    let total: i64 = word.iter().map(|&l| letters.degree(l)).sum();
    fn rec(
        specs: &[(u32, usize, i64)],
        word: &[u32],
        from: usize,
        deg_before: i64,
        total: i64,
        letters: &GradedSpace,
        suffix_signs: bool,
        apply: &mut impl FnMut(u32, &[u32], &mut EvalCtx) -> Vector,
        prefix: &[u32],
        coeff: &Rational,
        ctx: &mut EvalCtx,
        out: &mut WordVec,
    ) {
        let Some(((op, arity, op_deg), rest)) = specs.split_first() else {
            let mut w = prefix.to_vec();
            w.extend_from_slice(&word[from..]);
            out.add_term(w, coeff);
            return;
        };
        let a = *arity;
        let mut deg = deg_before;
        for start in from..=word.len().saturating_sub(a) {
            if start + a > word.len() {
                break;
            }
            let block = &word[start..start + a];
            let val = apply(*op, block, ctx);
            if !val.is_zero() {
                let block_deg: i64 = block.iter().map(|&l| letters.degree(l)).sum();
                let moved = if suffix_signs { total - deg - block_deg } else { deg };
                let sign = neg_one_pow(op_deg * moved);
                let mut new_prefix = prefix.to_vec();
                new_prefix.extend_from_slice(&word[from..start]);
                for (letter, c) in val.iter() {
                    let mut p = new_prefix.clone();
                    p.push(letter);
                    rec(
                        rest,
                        word,
                        start + a,
                        deg + block_deg,
                        total,
                        letters,
                        suffix_signs,
                        apply,
                        &p,
                        &(coeff * c * &sign),
                        ctx,
                        out,
                    );
                }
            }
            deg += letters.degree(word[start]);
        }
    }
    rec(
        specs,
        word,
        0,
        0,
        total,
        letters,
        suffix_signs,
        apply,
        &[],
        &Rational::one(),
        ctx,
        out,
    );
}

/// Components of a structure-preserving morphism out of a finite carrier:
/// one degree-0 table per input arity. When `total` is set, components
/// beyond the stored horizon are exactly zero; otherwise they are unknown
/// and mark the context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismData {
    max_m: usize,
    total: bool,
    comps: BTreeMap<usize, BTreeMap<Vec<u32>, Vector>>,
}

impl MorphismData {
    pub fn new(max_m: usize, total: bool) -> Self {
        MorphismData { max_m, total, comps: BTreeMap::new() }
    }

    pub fn max_m(&self) -> usize {
        self.max_m
    }

    pub fn set(&mut self, m: usize, tuple: &[u32], value: Vector) -> Result<()> {
        if m == 0 || m > self.max_m {
            return Err(Error::InvalidData(format!(
                "component {m} outside the declared range 1..={}",
                self.max_m
            )));
        }
        if tuple.len() != m {
            return Err(Error::InvalidData(format!(
                "component {m} takes {m} inputs, found {}",
                tuple.len()
            )));
        }
        if !value.is_zero() {
            self.comps.entry(m).or_default().insert(tuple.to_vec(), value);
        }
        Ok(())
    }

    /// Component value on a basis tuple; arities beyond the horizon are
    /// zero for total data and mark the context otherwise.
    pub fn component(&self, tuple: &[u32], ctx: &mut EvalCtx) -> Vector {
        let m = tuple.len();
        if m > self.max_m {
            if !self.total {
                ctx.mark_truncated(format!(
                    "morphism component of arity {m} beyond horizon {}",
                    self.max_m
                ));
            }
            return Vector::zero();
        }
        self.comps
            .get(&m)
            .and_then(|t| t.get(tuple))
            .cloned()
            .unwrap_or_else(Vector::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(|t| t.values().all(Vector::is_zero))
    }
}

/// Coalgebra-morphism lift of degree-0 components: sum over compositions
/// of the word into consecutive blocks, tensoring the per-block values.
/// No Koszul signs arise for degree-0 components.
pub fn morphism_lift(mu: &MorphismData, word: &[u32], ctx: &mut EvalCtx) -> WordVec {
    let n = word.len();
    let mut result: Vec<WordVec> = vec![WordVec::zero(); n + 1];
    result[n] = WordVec::single(vec![]);
    for i in (0..n).rev() {
        let mut acc = WordVec::zero();
        for m in 1..=(n - i) {
            let head = mu.component(&word[i..i + m], ctx);
            if head.is_zero() {
                continue;
            }
            let tail = result[i + m].clone();
            for (letter, hc) in head.iter() {
                for (restw, rc) in tail.iter() {
                    let mut w = Vec::with_capacity(1 + restw.len());
                    w.push(letter);
                    w.extend_from_slice(restw);
                    acc.add_term(w, &(hc * rc));
                }
            }
        }
        result[i] = acc;
    }
    result[0].clone()
}

/// Probe budget for the morphism checker.
#[derive(Debug, Clone)]
pub struct MorphismPlan {
    /// Largest word length probed on the domain.
    pub max_word: usize,
    /// Probe count per shape.
    pub reps: usize,
    pub seed: u64,
}

/// Check that the components generate a map of the word structures:
/// multiplicative for the word products and a chain map for the lifted
/// differentials, pointwise on sampled basis words.
pub fn check_binfty_morphism(
    dom: &impl BInftyOps,
    cod: &impl BInftyOps,
    mu: &MorphismData,
    plan: &MorphismPlan,
) -> Vec<IdentityCheck> {
    let dspace = dom.carrier();
    let scratch = WordSpace::reduced(cod.carrier().clone(), 2 * plan.max_word.max(1));
    let mut gen = ProbeGen::new(plan.seed);
    let mut checks = Vec::new();

    for wu in 1..=plan.max_word {
        for wv in 1..=plan.max_word {
            for _ in 0..plan.reps {
                let us = gen.sample_tuple(dspace, wu);
                let vs = gen.sample_tuple(dspace, wv);
                let mut ctx = EvalCtx::new();
                let mut lhs = WordVec::zero();
                for p in 1..=(wu + wv) {
                    for (t, c) in composite_brace(dom, &us, &vs, p, &mut ctx).iter() {
                        lhs.add_scaled(&morphism_lift(mu, t, &mut ctx), c);
                    }
                }
                let mu_us = morphism_lift(mu, &us, &mut ctx);
                let mu_vs = morphism_lift(mu, &vs, &mut ctx);
                let mut rhs = WordVec::zero();
                for (uw, uc) in mu_us.iter() {
                    for (vw, vc) in mu_vs.iter() {
                        for p in 1..=(uw.len() + vw.len()) {
                            let braced = composite_brace(cod, uw, vw, p, &mut ctx);
                            rhs.add_scaled(&braced, &(uc * vc));
                        }
                    }
                }
                checks.push(IdentityCheck {
                    identity: "morphism-product",
                    probe: describe_probe(dspace, &[&us, &vs]),
                    outcome: conclude_words(&scratch, &lhs, &rhs, &ctx),
                });
            }
        }
    }

    for w in 1..=plan.max_word {
        for _ in 0..plan.reps {
            let word = gen.sample_tuple(dspace, w);
            let mut ctx = EvalCtx::new();
            let mut lhs = WordVec::zero();
            for (t, c) in d_hat(dom, &word, &mut ctx).iter() {
                lhs.add_scaled(&morphism_lift(mu, t, &mut ctx), c);
            }
            let lifted = morphism_lift(mu, &word, &mut ctx);
            let mut rhs = WordVec::zero();
            for (t, c) in lifted.iter() {
                rhs.add_scaled(&d_hat(cod, t, &mut ctx), c);
            }
            checks.push(IdentityCheck {
                identity: "morphism-differential",
                probe: describe_probe(dspace, &[&word]),
                outcome: conclude_words(&scratch, &lhs, &rhs, &ctx),
            });
        }
    }
    checks
}

/// Extract the morphism components of a left action on an almost-cofree
/// target: the arity-`m` component on a tuple is the cogenerator of the
/// action of that tuple minus all insertions of lower components. The
/// target letter space must coincide with the operator space's letters.
pub fn action_to_morphism(
    actor_space: &GradedSpace,
    action: &impl ActionOps,
    hom: &HomSpace,
    max_m: usize,
) -> Result<MorphismData> {
    if action.kind() != ActionKind::Coalgebra || action.side() != ActionSide::Left {
        return Err(Error::NotRepresentable(
            "only left actions on an almost-cofree tensor target are representable".into(),
        ));
    }
    let letters = action.words().letters();
    if letters.dim() != hom.letters().dim() {
        return Err(Error::NotRepresentable(
            "operator space letters do not match the action target".into(),
        ));
    }
    for i in 0..letters.dim() as u32 {
        if letters.degree(i) != hom.letters().degree(i) {
            return Err(Error::NotRepresentable(
                "operator space letter degrees do not match the action target".into(),
            ));
        }
    }
    let letter_ops = cache_letter_ops(hom);
    let mut mu = MorphismData::new(max_m, false);
    let mut ctx = EvalCtx::new();
    for m in 1..=max_m {
        for tuple in exhaustive_tuples(actor_space, m) {
            let mut element = Vector::zero();
            for arity in 1..=hom.max_arity() {
                for input in exhaustive_tuples(hom.letters(), arity) {
                    let mut value = action.act_basis(&tuple, &input, &mut ctx);
                    if m >= 2 {
                        let lower =
                            induced_act(&mu, hom, &letter_ops, &tuple, &input, 2, &mut ctx);
                        value = value.sub(&lower);
                    }
                    let coresidue = value.corestrict();
                    for (out, c) in coresidue.iter() {
                        let idx = hom
                            .index_of(&input, out)
                            .expect("enumerated input tuple");
                        element.add_term(idx, c);
                    }
                }
            }
            mu.set(m, &tuple, element)?;
        }
    }
    if ctx.is_truncated() {
        return Err(Error::TruncationUnsound(format!(
            "component extraction touched data beyond the horizon: {}",
            ctx.reasons().join("; ")
        )));
    }
    Ok(mu)
}

/// Evaluate the action induced by morphism components: sum over
/// compositions of the acting tuple into at least `min_parts` consecutive
/// blocks, inserting the per-block operator images at disjoint blocks of
/// the word.
fn induced_act(
    mu: &MorphismData,
    hom: &HomSpace,
    letter_ops: &[MultiMap],
    bs: &[u32],
    word: &[u32],
    min_parts: usize,
    ctx: &mut EvalCtx,
) -> WordVec {
    let k = bs.len();
    let mut out = WordVec::zero();
    for parts in min_parts..=k {
        for comp in compositions(k, parts) {
            let mut images: Vec<Vector> = Vec::with_capacity(parts);
            let mut start = 0usize;
            let mut zero = false;
            for &len in &comp {
                let img = mu.component(&bs[start..start + len], ctx);
                if img.is_zero() {
                    zero = true;
                    break;
                }
                images.push(img);
                start += len;
            }
            if zero {
                continue;
            }
            let mut chosen: Vec<u32> = Vec::with_capacity(parts);
            expand_supports(&images, &mut chosen, &Rational::one(), &mut |idxs, coeff| {
                let ops: Vec<&MultiMap> =
                    idxs.iter().map(|&i| &letter_ops[i as usize]).collect();
                out.add_scaled(
                    &multi_insert_word(&ops, word, hom.letters()),
                    coeff,
                );
            });
        }
    }
    out
}

/// The left action on the truncated tensor coalgebra induced by morphism
/// components into an operator algebra.
#[derive(Debug, Clone)]
pub struct InducedAction {
    mu: MorphismData,
    hom: HomSpace,
    words: WordSpace,
    letter_ops: Vec<MultiMap>,
    diff: Option<MapFamily>,
}

/// Package morphism components as the action they induce.
pub fn morphism_to_action(
    mu: MorphismData,
    hom: HomSpace,
    max_weight: usize,
    diff: Option<MapFamily>,
) -> InducedAction {
    let words = WordSpace::reduced(hom.letters().clone(), max_weight);
    let letter_ops = cache_letter_ops(&hom);
    InducedAction { mu, hom, words, letter_ops, diff }
}

impl InducedAction {
    pub fn components(&self) -> &MorphismData {
        &self.mu
    }
}

impl ActionOps for InducedAction {
    fn side(&self) -> ActionSide {
        ActionSide::Left
    }

    fn kind(&self) -> ActionKind {
        ActionKind::Coalgebra
    }

    fn actor_space(&self) -> &GradedSpace {
        self.hom.space()
    }

    fn words(&self) -> &WordSpace {
        &self.words
    }

    fn act_basis(&self, vs: &[u32], word: &[u32], ctx: &mut EvalCtx) -> WordVec {
        induced_act(&self.mu, &self.hom, &self.letter_ops, vs, word, 1, ctx)
    }

    fn differential_basis(&self, word: &[u32], ctx: &mut EvalCtx) -> WordVec {
        match &self.diff {
            Some(fam) => lift_coderivation(fam, word, self.words.letters(), ctx),
            None => WordVec::zero(),
        }
    }
}
