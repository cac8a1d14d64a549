//! Brace-style homotopy algebra structures: a graded carrier with a
//! two-parameter family of degree-0 operations and a one-parameter family
//! of degree-1 operations, subject to three pointwise identities.
//!
//! The two-parameter family `b_{m,n}` (m inputs on the left, n on the
//! right) assembles into a product of words on the reduced tensor
//! coalgebra of the carrier; the one-parameter family `d_m` assembles into
//! a coderivation. The identities are:
//!
//! * `associativity` — the assembled word product is associative;
//! * `leibniz` — the coderivation is a derivation of the word product;
//! * `a-infinity` — the coderivation squares to zero.
//!
//! Conventions: `b_{0,1}` and `b_{1,0}` are the identity; all other
//! components with an empty side vanish. All checks evaluate both sides on
//! explicit basis probes and track truncation via [`EvalCtx`].

use crate::check::{conclude, describe_probe, IdentityCheck, ProbeOutcome};
use crate::error::{Error, Result};
use crate::graded::{EvalCtx, GradedSpace, Vector};
use crate::linalg::neg_one_pow;
use crate::multimap::{expand_multilinear, MultiMap};
use crate::probe::{arity_splits, ProbeGen};
use crate::words::WordVec;

use std::collections::BTreeMap;

/// A structure of the above kind, evaluated on basis tuples. Implementors
/// must mark the context whenever a requested component lies beyond their
/// declared knowledge horizon (and contribute zero for it).
pub trait BInftyOps {
    fn carrier(&self) -> &GradedSpace;

    /// `b_{m,n}` on basis tuples, `m = us.len() ≥ 1`, `n = vs.len() ≥ 1`.
    fn b_basis(&self, us: &[u32], vs: &[u32], ctx: &mut EvalCtx) -> Vector;

    /// `d_m` on a basis tuple, `m = vs.len() ≥ 1`.
    fn d_basis(&self, vs: &[u32], ctx: &mut EvalCtx) -> Vector;
}

/// `b_{m,n}` including the empty-side conventions: `b_{0,1} = b_{1,0} =
/// Id`, all other components with `m = 0` or `n = 0` vanish.
pub fn b_conv(ops: &impl BInftyOps, us: &[u32], vs: &[u32], ctx: &mut EvalCtx) -> Vector {
    match (us.len(), vs.len()) {
        (0, 1) => Vector::basis(vs[0]),
        (1, 0) => Vector::basis(us[0]),
        (0, _) | (_, 0) => Vector::zero(),
        _ => ops.b_basis(us, vs, ctx),
    }
}

/// Multilinear `b_{m,n}` on general vectors.
pub fn b_apply(
    ops: &impl BInftyOps,
    us: &[Vector],
    vs: &[Vector],
    ctx: &mut EvalCtx,
) -> Vector {
    let m = us.len();
    let all: Vec<Vector> = us.iter().chain(vs.iter()).cloned().collect();
    let mut scratch = EvalCtx::new();
    let out = expand_multilinear(&all, |tuple| {
        Ok(b_conv(ops, &tuple[..m], &tuple[m..], &mut scratch))
    })
    .expect("infallible expansion");
    ctx.absorb(&scratch);
    out
}

/// Multilinear `d_m` on general vectors.
pub fn d_apply(ops: &impl BInftyOps, vs: &[Vector], ctx: &mut EvalCtx) -> Vector {
    let mut scratch = EvalCtx::new();
    let out = expand_multilinear(vs, |tuple| Ok(ops.d_basis(tuple, &mut scratch)))
        .expect("infallible expansion");
    ctx.absorb(&scratch);
    out
}

/// Length-`p` component of the word product `U · V`: sum over splittings
/// of `us` and `vs` into `p` consecutive (possibly empty) blocks, each
/// block pair nonempty, of the tensor of `b`-values. The Koszul sign moves
/// every right-side block past the left-side letters of all later blocks.
///
/// With `us` empty this returns the word `vs` exactly when `p = vs.len()`
/// (and dually), so words embed in the product as expected.
pub fn composite_brace(
    ops: &impl BInftyOps,
    us: &[u32],
    vs: &[u32],
    p: usize,
    ctx: &mut EvalCtx,
) -> WordVec {
    fn rec(
        ops: &impl BInftyOps,
        us: &[u32],
        vs: &[u32],
        blocks: usize,
        ctx: &mut EvalCtx,
    ) -> WordVec {
        if blocks == 0 {
            return if us.is_empty() && vs.is_empty() {
                WordVec::single(vec![])
            } else {
                WordVec::zero()
            };
        }
        let space = ops.carrier();
        let mut out = WordVec::zero();
        for i in 0..=us.len() {
            for j in 0..=vs.len() {
                if i + j == 0 {
                    continue;
                }
                let head = b_conv(ops, &us[..i], &vs[..j], ctx);
                if head.is_zero() {
                    continue;
                }
                let v_deg: i64 = vs[..j].iter().map(|&l| space.degree(l)).sum();
                let u_rest_deg: i64 = us[i..].iter().map(|&l| space.degree(l)).sum();
                let sign = neg_one_pow(v_deg * u_rest_deg);
                let tail = rec(ops, &us[i..], &vs[j..], blocks - 1, ctx);
                for (letter, c) in head.iter() {
                    for (w, tc) in tail.iter() {
                        let mut word = Vec::with_capacity(1 + w.len());
                        word.push(letter);
                        word.extend_from_slice(w);
                        out.add_term(word, &(c * tc * &sign));
                    }
                }
            }
        }
        out
    }
    rec(ops, us, vs, p, ctx)
}

/// Coderivation assembled from the `d`-family, on a basis word: sum over
/// consecutive blocks, applying `d` to the block in place, with the sign
/// of moving the degree-1 family past the prefix.
pub fn d_hat(ops: &impl BInftyOps, word: &[u32], ctx: &mut EvalCtx) -> WordVec {
    let space = ops.carrier();
    let n = word.len();
    let mut out = WordVec::zero();
    let mut prefix_degree: i64 = 0;
    for start in 0..n {
        for len in 1..=(n - start) {
            let block = &word[start..start + len];
            let val = ops.d_basis(block, ctx);
            if val.is_zero() {
                continue;
            }
            let sign = neg_one_pow(prefix_degree);
            for (letter, c) in val.iter() {
                let mut w = Vec::with_capacity(n - len + 1);
                w.extend_from_slice(&word[..start]);
                w.push(letter);
                w.extend_from_slice(&word[start + len..]);
                out.add_term(w, &(c * &sign));
            }
        }
        prefix_degree += space.degree(word[start]);
    }
    out
}

/// Both sides of the associativity identity on a basis probe
/// `(us | vs | ws)`:
/// `Σ_p b_{m,p}(us ; b_p(vs; ws)) = Σ_p b_{p,k}(b_p(us; vs) ; ws)`.
pub fn associativity_sides(
    ops: &impl BInftyOps,
    us: &[u32],
    vs: &[u32],
    ws: &[u32],
    ctx: &mut EvalCtx,
) -> (Vector, Vector) {
    let mut lhs = Vector::zero();
    for p in 1..=(vs.len() + ws.len()) {
        let inner = composite_brace(ops, vs, ws, p, ctx);
        for (w, c) in inner.iter() {
            lhs.add_scaled(&b_conv(ops, us, w, ctx), c);
        }
    }
    let mut rhs = Vector::zero();
    for p in 1..=(us.len() + vs.len()) {
        let inner = composite_brace(ops, us, vs, p, ctx);
        for (w, c) in inner.iter() {
            rhs.add_scaled(&b_conv(ops, w, ws, ctx), c);
        }
    }
    (lhs, rhs)
}

/// Both sides of the derivation identity on a basis probe `(us | vs)`:
/// `Σ_p d_p(b_p(us; vs)) = Σ b(d̂ us; vs) + (-1)^{Σ|u|} Σ b(us; d̂ vs)`,
/// where `d̂` inserts the `d`-family into the word.
pub fn leibniz_sides(
    ops: &impl BInftyOps,
    us: &[u32],
    vs: &[u32],
    ctx: &mut EvalCtx,
) -> (Vector, Vector) {
    let space = ops.carrier();
    let mut lhs = Vector::zero();
    for p in 1..=(us.len() + vs.len()) {
        let prod = composite_brace(ops, us, vs, p, ctx);
        for (w, c) in prod.iter() {
            lhs.add_scaled(&ops.d_basis(w, ctx), c);
        }
    }
    let mut rhs = Vector::zero();
    for (w, c) in d_hat(ops, us, ctx).iter() {
        rhs.add_scaled(&b_conv(ops, w, vs, ctx), c);
    }
    let u_deg: i64 = us.iter().map(|&l| space.degree(l)).sum();
    let sign = neg_one_pow(u_deg);
    for (w, c) in d_hat(ops, vs, ctx).iter() {
        rhs.add_scaled(&b_conv(ops, us, w, ctx), &(c * &sign));
    }
    (lhs, rhs)
}

/// The square of the coderivation, corestricted, on a basis probe: the sum
/// `Σ d(d̂ vs)` over all insertions. Must vanish.
pub fn ainfty_defect(ops: &impl BInftyOps, vs: &[u32], ctx: &mut EvalCtx) -> Vector {
    let mut out = Vector::zero();
    for (w, c) in d_hat(ops, vs, ctx).iter() {
        out.add_scaled(&ops.d_basis(w, ctx), c);
    }
    out
}

/// The square-zero condition for a degree-1 carrier element:
/// `d_1(e) + b_{1,1}(e, e) = 0`.
pub fn mc_defect(ops: &impl BInftyOps, e: &Vector, ctx: &mut EvalCtx) -> Vector {
    let d = d_apply(ops, std::slice::from_ref(e), ctx);
    let sq = b_apply(ops, std::slice::from_ref(e), std::slice::from_ref(e), ctx);
    d.add(&sq)
}

/// Check the square-zero condition, requiring the element to be
/// homogeneous of degree 1.
pub fn mc_check(ops: &impl BInftyOps, e: &Vector) -> Result<ProbeOutcome> {
    let deg = ops.carrier().homogeneous_degree(e)?;
    if deg != 1 {
        return Err(Error::NotMaurerCartan(format!(
            "square-zero elements must have degree 1, found {deg}"
        )));
    }
    let mut ctx = EvalCtx::new();
    let defect = mc_defect(ops, e, &mut ctx);
    Ok(conclude(defect, Vector::zero(), &ctx))
}

/// The twisted one-sided family: for a degree-1 element `e`,
/// `d^e_m(vs) = d_m(vs) + b_{1,m}(e; vs) + (-1)^{Σ|v| + 1} b_{m,1}(vs; e)`.
pub fn twisted_d_basis(
    base: &impl BInftyOps,
    element: &Vector,
    vs: &[u32],
    ctx: &mut EvalCtx,
) -> Vector {
    let space = base.carrier();
    let mut out = base.d_basis(vs, ctx);
    for (i, c) in element.iter() {
        out.add_scaled(&base.b_basis(&[i], vs, ctx), c);
    }
    let v_deg: i64 = vs.iter().map(|&l| space.degree(l)).sum();
    let sign = neg_one_pow(v_deg + 1);
    for (i, c) in element.iter() {
        out.add_scaled(&base.b_basis(vs, &[i], ctx), &(c * &sign));
    }
    out
}

/// A structure with its `d`-family twisted by a degree-1 square-zero
/// element `e`: the `b`-family is unchanged and the one-sided family is
/// [`twisted_d_basis`].
pub struct Deformed<'a, B: BInftyOps> {
    base: &'a B,
    element: Vector,
}

impl<'a, B: BInftyOps> Deformed<'a, B> {
    /// Build the twist; the element must be homogeneous of degree 1 and
    /// satisfy the square-zero condition exactly.
    pub fn new(base: &'a B, element: Vector) -> Result<Self> {
        match mc_check(base, &element)? {
            ProbeOutcome::Pass => Ok(Deformed { base, element }),
            ProbeOutcome::Fail { lhs, .. } => Err(Error::NotMaurerCartan(format!(
                "square-zero defect {}",
                base.carrier().show(&lhs)
            ))),
            ProbeOutcome::Skipped { reasons } => Err(Error::TruncationUnsound(format!(
                "square-zero condition undecidable: {}",
                reasons.join("; ")
            ))),
        }
    }

    pub fn element(&self) -> &Vector {
        &self.element
    }

    pub fn base(&self) -> &B {
        self.base
    }
}

impl<'a, B: BInftyOps> BInftyOps for Deformed<'a, B> {
    fn carrier(&self) -> &GradedSpace {
        self.base.carrier()
    }

    fn b_basis(&self, us: &[u32], vs: &[u32], ctx: &mut EvalCtx) -> Vector {
        self.base.b_basis(us, vs, ctx)
    }

    fn d_basis(&self, vs: &[u32], ctx: &mut EvalCtx) -> Vector {
        twisted_d_basis(self.base, &self.element, vs, ctx)
    }
}

/// Table-backed structure with explicit truncation horizons: `b_{m,n}` is
/// specified for `m + n ≤ b_horizon` (absent components are zero there and
/// unknown beyond), `d_m` likewise for `m ≤ d_horizon`.
#[derive(Debug, Clone)]
pub struct TableBInfty {
    carrier: GradedSpace,
    b: BTreeMap<(usize, usize), MultiMap>,
    d: BTreeMap<usize, MultiMap>,
    b_horizon: usize,
    d_horizon: usize,
}

impl TableBInfty {
    pub fn new(carrier: GradedSpace, b_horizon: usize, d_horizon: usize) -> Self {
        TableBInfty { carrier, b: BTreeMap::new(), d: BTreeMap::new(), b_horizon, d_horizon }
    }

    pub fn b_horizon(&self) -> usize {
        self.b_horizon
    }

    pub fn d_horizon(&self) -> usize {
        self.d_horizon
    }

    pub fn carrier_ref(&self) -> &GradedSpace {
        &self.carrier
    }

    /// Install a `b_{m,n}` component; must have degree 0, arity `m + n`
    /// within the horizon, and respect the grading.
    pub fn set_b(&mut self, m: usize, n: usize, map: MultiMap) -> Result<()> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidData(
                "components with an empty side are fixed by convention".into(),
            ));
        }
        if map.arity() != m + n {
            return Err(Error::InvalidData(format!(
                "component ({m},{n}) must have arity {}, found {}",
                m + n,
                map.arity()
            )));
        }
        if map.degree() != 0 {
            return Err(Error::InvalidData(format!(
                "two-sided components must have degree 0, found {}",
                map.degree()
            )));
        }
        if m + n > self.b_horizon {
            return Err(Error::InvalidData(format!(
                "component ({m},{n}) lies beyond the declared horizon {}",
                self.b_horizon
            )));
        }
        map.check_degree(&self.carrier)?;
        self.b.insert((m, n), map);
        Ok(())
    }

    /// Install a `d_m` component; must have degree 1 and respect grading.
    pub fn set_d(&mut self, m: usize, map: MultiMap) -> Result<()> {
        if m == 0 {
            return Err(Error::InvalidData("the one-sided family starts at arity 1".into()));
        }
        if map.arity() != m {
            return Err(Error::InvalidData(format!(
                "component {m} must have arity {m}, found {}",
                map.arity()
            )));
        }
        if map.degree() != 1 {
            return Err(Error::InvalidData(format!(
                "one-sided components must have degree 1, found {}",
                map.degree()
            )));
        }
        if m > self.d_horizon {
            return Err(Error::InvalidData(format!(
                "component {m} lies beyond the declared horizon {}",
                self.d_horizon
            )));
        }
        map.check_degree(&self.carrier)?;
        self.d.insert(m, map);
        Ok(())
    }

    pub fn b_component(&self, m: usize, n: usize) -> Option<&MultiMap> {
        self.b.get(&(m, n))
    }

    pub fn d_component(&self, m: usize) -> Option<&MultiMap> {
        self.d.get(&m)
    }
}

impl BInftyOps for TableBInfty {
    fn carrier(&self) -> &GradedSpace {
        &self.carrier
    }

    fn b_basis(&self, us: &[u32], vs: &[u32], ctx: &mut EvalCtx) -> Vector {
        let (m, n) = (us.len(), vs.len());
        if m + n > self.b_horizon {
            ctx.mark_truncated(format!(
                "component ({m},{n}) beyond declared horizon {}",
                self.b_horizon
            ));
            return Vector::zero();
        }
        match self.b.get(&(m, n)) {
            Some(map) => {
                let tuple: Vec<u32> = us.iter().chain(vs.iter()).copied().collect();
                map.apply_basis(&tuple)
            }
            None => Vector::zero(),
        }
    }

    fn d_basis(&self, vs: &[u32], ctx: &mut EvalCtx) -> Vector {
        let m = vs.len();
        if m > self.d_horizon {
            ctx.mark_truncated(format!(
                "component {m} beyond declared horizon {}",
                self.d_horizon
            ));
            return Vector::zero();
        }
        match self.d.get(&m) {
            Some(map) => map.apply_basis(vs),
            None => Vector::zero(),
        }
    }
}

/// Probe budget for structure verification.
#[derive(Debug, Clone)]
pub struct VerifyPlan {
    /// Maximum total arity of a probe (sum over all tuple slots).
    pub max_total_arity: usize,
    /// Maximum arity of any single slot.
    pub max_slot_arity: usize,
    /// Per-split cap on basis tuples (exhaustive when within the cap).
    pub tuple_limit: usize,
    pub seed: u64,
}

impl Default for VerifyPlan {
    fn default() -> Self {
        VerifyPlan { max_total_arity: 4, max_slot_arity: 3, tuple_limit: 200, seed: 1 }
    }
}

/// Evaluate the three defining identities on a stratified probe set.
pub fn verify_binfty(ops: &impl BInftyOps, plan: &VerifyPlan) -> Vec<IdentityCheck> {
    let space = ops.carrier();
    let mut gen = ProbeGen::new(plan.seed);
    let mut checks = Vec::new();

    // Associativity: probes (us | vs | ws).
    for split in arity_splits(3, plan.max_slot_arity, plan.max_total_arity) {
        let per_slot = (plan.tuple_limit as f64).powf(1.0 / 3.0).ceil() as usize;
        let per_slot = per_slot.max(2);
        let us_list = gen.tuples(space, split[0], per_slot);
        let vs_list = gen.tuples(space, split[1], per_slot);
        let ws_list = gen.tuples(space, split[2], per_slot);
        for us in &us_list {
            for vs in &vs_list {
                for ws in &ws_list {
                    let mut ctx = EvalCtx::new();
                    let (lhs, rhs) = associativity_sides(ops, us, vs, ws, &mut ctx);
                    checks.push(IdentityCheck {
                        identity: "associativity",
                        probe: describe_probe(space, &[us, vs, ws]),
                        outcome: conclude(lhs, rhs, &ctx),
                    });
                }
            }
        }
    }

    // Derivation identity: probes (us | vs).
    for split in arity_splits(2, plan.max_slot_arity, plan.max_total_arity) {
        let per_slot = (plan.tuple_limit as f64).sqrt().ceil() as usize;
        let per_slot = per_slot.max(2);
        let us_list = gen.tuples(space, split[0], per_slot);
        let vs_list = gen.tuples(space, split[1], per_slot);
        for us in &us_list {
            for vs in &vs_list {
                let mut ctx = EvalCtx::new();
                let (lhs, rhs) = leibniz_sides(ops, us, vs, &mut ctx);
                checks.push(IdentityCheck {
                    identity: "leibniz",
                    probe: describe_probe(space, &[us, vs]),
                    outcome: conclude(lhs, rhs, &ctx),
                });
            }
        }
    }

    // Square-zero identity: probes (vs).
    for n in 1..=plan.max_total_arity {
        for vs in gen.tuples(space, n, plan.tuple_limit) {
            let mut ctx = EvalCtx::new();
            let defect = ainfty_defect(ops, &vs, &mut ctx);
            checks.push(IdentityCheck {
                identity: "a-infinity",
                probe: describe_probe(space, &[&vs]),
                outcome: conclude(defect, Vector::zero(), &ctx),
            });
        }
    }

    checks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::CheckSummary;
    use crate::linalg::rat_int;

    /// Dual numbers: 1 and e in degree 0, e·e = 0, no differential.
    fn dual_numbers() -> TableBInfty {
        let sp = GradedSpace::from_pairs(&[("1", 0), ("e", 0)]);
        let mut t = TableBInfty::new(sp, 6, 6);
        let mut prod = MultiMap::new(2, 0);
        prod.set_entry(vec![0, 0], Vector::basis(0));
        prod.set_entry(vec![0, 1], Vector::basis(1));
        prod.set_entry(vec![1, 0], Vector::basis(1));
        t.set_b(1, 1, prod).unwrap();
        t
    }

    #[test]
    fn shuffle_component_signs() {
        // With only b_{1,1} the p = 2 component of the product of two
        // single letters is the signed shuffle.
        let sp = GradedSpace::from_pairs(&[("s", -1), ("x", 0)]);
        let t = TableBInfty::new(sp, 4, 4);
        let mut ctx = EvalCtx::new();
        let wv = composite_brace(&t, &[0], &[0], 2, &mut ctx);
        // s ⊗ s + (-1)^{|s||s|} s ⊗ s = 0 on equal odd letters...
        // coefficients: identity blocks only.
        assert_eq!(wv.coeff(&[0, 0]), rat_int(1) + rat_int(-1));
        let wv = composite_brace(&t, &[0], &[1], 2, &mut ctx);
        assert_eq!(wv.coeff(&[0, 1]), rat_int(1)); // u before v
        assert_eq!(wv.coeff(&[1, 0]), rat_int(1)); // v crosses u: (-1)^{0·(-1)}
        assert!(!ctx.is_truncated());
    }

    #[test]
    fn words_embed_in_the_product() {
        let t = dual_numbers();
        let mut ctx = EvalCtx::new();
        // b_p(; v1 v2) is the word exactly at p = 2.
        let wv = composite_brace(&t, &[], &[0, 1], 2, &mut ctx);
        assert_eq!(wv.coeff(&[0, 1]), rat_int(1));
        assert_eq!(wv.iter().count(), 1);
        assert!(composite_brace(&t, &[], &[0, 1], 1, &mut ctx).is_zero());
    }

    #[test]
    fn dual_numbers_pass_all_identities() {
        let t = dual_numbers();
        let checks = verify_binfty(&t, &VerifyPlan::default());
        let s = CheckSummary::of(&checks);
        assert!(s.all_passed(), "failures: {:?}", s);
        assert_eq!(s.failed, 0);
        assert_eq!(s.skipped, 0);
    }

    #[test]
    fn nonassociative_product_fails_with_witness() {
        // 1·e = e, e·e = 1, e·1 = 0: then (e·e)·e = 1·e = e while
        // e·(e·e) = e·1 = 0.
        let sp = GradedSpace::from_pairs(&[("1", 0), ("e", 0)]);
        let mut t = TableBInfty::new(sp, 6, 6);
        let mut prod = MultiMap::new(2, 0);
        prod.set_entry(vec![0, 0], Vector::basis(0));
        prod.set_entry(vec![0, 1], Vector::basis(1));
        prod.set_entry(vec![1, 1], Vector::basis(0));
        t.set_b(1, 1, prod).unwrap();
        let mut ctx = EvalCtx::new();
        let (lhs, rhs) = associativity_sides(&t, &[1], &[1], &[1], &mut ctx);
        assert_ne!(lhs, rhs);
        let checks = verify_binfty(&t, &VerifyPlan::default());
        let s = CheckSummary::of(&checks);
        assert!(s.failed > 0);
    }

    #[test]
    fn beyond_horizon_probes_are_skipped() {
        let sp = GradedSpace::from_pairs(&[("1", 0), ("e", 0)]);
        let mut t = TableBInfty::new(sp, 2, 1); // only b_{1,1}, d_1 known
        let mut prod = MultiMap::new(2, 0);
        prod.set_entry(vec![0, 0], Vector::basis(0));
        t.set_b(1, 1, prod).unwrap();
        let mut ctx = EvalCtx::new();
        let (lhs, rhs) = associativity_sides(&t, &[0, 0], &[0], &[0], &mut ctx);
        assert!(ctx.is_truncated());
        let out = conclude(lhs, rhs, &ctx);
        assert!(out.is_skipped());
    }

    /// One odd generator with a differential hitting the unit.
    fn contractible_line() -> TableBInfty {
        let sp = GradedSpace::from_pairs(&[("1", 0), ("h", -1)]);
        let mut t = TableBInfty::new(sp, 6, 6);
        let mut prod = MultiMap::new(2, 0);
        prod.set_entry(vec![0, 0], Vector::basis(0));
        prod.set_entry(vec![0, 1], Vector::basis(1));
        prod.set_entry(vec![1, 0], Vector::basis(1));
        // h·h = 0 (odd square).
        t.set_b(1, 1, prod).unwrap();
        let mut d1 = MultiMap::new(1, 1);
        d1.set_entry(vec![1], Vector::basis(0)); // d h = 1
        t.set_d(1, d1).unwrap();
        t
    }

    #[test]
    fn structure_with_differential_passes() {
        let t = contractible_line();
        let checks = verify_binfty(&t, &VerifyPlan::default());
        let s = CheckSummary::of(&checks);
        assert!(s.all_passed(), "summary: {:?}", s);
        assert_eq!(s.failed, 0);
    }

    #[test]
    fn broken_derivation_identity_fails() {
        // Same differential but a product that is associative yet not
        // compatible with d: h·1 = 0 while 1·h = h.
        let sp = GradedSpace::from_pairs(&[("1", 0), ("h", -1)]);
        let mut t = TableBInfty::new(sp, 6, 6);
        let mut prod = MultiMap::new(2, 0);
        prod.set_entry(vec![0, 0], Vector::basis(0));
        prod.set_entry(vec![0, 1], Vector::basis(1)); // 1·h = h
        t.set_b(1, 1, prod).unwrap();
        let mut d1 = MultiMap::new(1, 1);
        d1.set_entry(vec![1], Vector::basis(0));
        t.set_d(1, d1).unwrap();
        // Associativity still holds on all triples (checked by the suite),
        // but d(h·1) = 0 ≠ d(h)·1 - h·d(1) = 1.
        let mut ctx = EvalCtx::new();
        let (lhs, rhs) = leibniz_sides(&t, &[1], &[0], &mut ctx);
        assert_ne!(lhs, rhs);
        let assoc_ok = verify_binfty(&t, &VerifyPlan::default())
            .into_iter()
            .filter(|c| c.identity == "associativity")
            .all(|c| !c.outcome.is_fail());
        assert!(assoc_ok);
    }

    #[test]
    fn dsquare_failure_has_witness() {
        let sp = GradedSpace::from_pairs(&[("a", 0), ("b", 1), ("c", 2)]);
        let mut t = TableBInfty::new(sp, 6, 6);
        let mut d1 = MultiMap::new(1, 1);
        d1.set_entry(vec![0], Vector::basis(1));
        d1.set_entry(vec![1], Vector::basis(2)); // d² a = c ≠ 0
        t.set_d(1, d1).unwrap();
        let mut ctx = EvalCtx::new();
        let defect = ainfty_defect(&t, &[0], &mut ctx);
        assert_eq!(defect, Vector::basis(2));
    }

    #[test]
    fn mc_check_validates_degree_and_equation() {
        // t·t = u with |t| = 1: t is degree 1 but squares to u ≠ 0.
        let sp = GradedSpace::from_pairs(&[("t", 1), ("u", 2)]);
        let mut t = TableBInfty::new(sp, 6, 6);
        let mut prod = MultiMap::new(2, 0);
        prod.set_entry(vec![0, 0], Vector::basis(1));
        t.set_b(1, 1, prod).unwrap();
        let out = mc_check(&t, &Vector::basis(0)).unwrap();
        assert!(out.is_fail());
        // Degree-0 elements are rejected outright.
        assert!(mc_check(&t, &Vector::basis(1)).is_err());
        assert!(Deformed::new(&t, Vector::basis(0)).is_err());
    }

    /// e (degree 1) with e·y = z; twisting by e turns d into y ↦ z.
    fn twistable() -> TableBInfty {
        let sp = GradedSpace::from_pairs(&[("e", 1), ("y", 0), ("z", 1)]);
        let mut t = TableBInfty::new(sp, 6, 6);
        let mut prod = MultiMap::new(2, 0);
        prod.set_entry(vec![0, 1], Vector::basis(2)); // e·y = z
        prod.set_entry(vec![1, 1], Vector::basis(1)); // y·y = y
        prod.set_entry(vec![2, 1], Vector::basis(2)); // z·y = z
        t.set_b(1, 1, prod).unwrap();
        t
    }

    #[test]
    fn twisting_by_square_zero_element() {
        let t = twistable();
        // Base structure is valid.
        let s = CheckSummary::of(&verify_binfty(&t, &VerifyPlan::default()));
        assert!(s.all_passed(), "base summary: {:?}", s);
        // e·e = 0 so e satisfies the square-zero condition.
        let tw = Deformed::new(&t, Vector::basis(0)).unwrap();
        let mut ctx = EvalCtx::new();
        // d^e(y) = e·y + (-1)^{0+1} y·e = z.
        assert_eq!(tw.d_basis(&[1], &mut ctx), Vector::basis(2));
        // d^e(z) = e·z + (-1)^{1+1} z·e = 0.
        assert!(tw.d_basis(&[2], &mut ctx).is_zero());
        assert!(!ctx.is_truncated());
        // The twisted structure satisfies all three identities.
        let s = CheckSummary::of(&verify_binfty(&tw, &VerifyPlan::default()));
        assert!(s.all_passed(), "twisted summary: {:?}", s);
    }

    #[test]
    fn table_validation_rejects_bad_components() {
        let sp = GradedSpace::from_pairs(&[("x", 0)]);
        let mut t = TableBInfty::new(sp, 3, 2);
        assert!(t.set_b(0, 1, MultiMap::new(1, 0)).is_err()); // convention side
        assert!(t.set_b(1, 1, MultiMap::new(3, 0)).is_err()); // arity mismatch
        assert!(t.set_b(1, 1, MultiMap::new(2, 1)).is_err()); // wrong degree
        assert!(t.set_b(2, 2, MultiMap::new(4, 0)).is_err()); // beyond horizon
        assert!(t.set_d(1, MultiMap::new(1, 0)).is_err()); // wrong degree
        let mut bad = MultiMap::new(2, 0);
        bad.set_entry(vec![0, 0], Vector::basis(0));
        assert!(t.set_b(1, 1, bad).is_ok());
    }
}
