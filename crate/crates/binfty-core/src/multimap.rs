//! Multilinear maps given by sparse tables on basis tuples.
//!
//! A `MultiMap` of arity `m` is a multilinear map on `m` inputs, recorded by
//! its values on basis tuples; tuples absent from the table map to zero, so
//! a table always describes a *total* map. Truncation of structure data is
//! expressed one level up (a whole arity component may be unknown), never
//! by partial tables.
//!
//! Arity 0 is allowed: such a map is a single vector (its value on the
//! empty tuple), used for constant/augmentation components.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graded::{GradedSpace, Vector};
use crate::linalg::{neg_one_pow, Rational, SparseMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiMap {
    arity: usize,
    degree: i64,
    table: BTreeMap<Vec<u32>, Vector>,
}

impl MultiMap {
    pub fn new(arity: usize, degree: i64) -> Self {
        MultiMap { arity, degree, table: BTreeMap::new() }
    }

    /// The identity map of a space: arity 1, degree 0.
    pub fn identity(space: &GradedSpace) -> Self {
        let mut m = MultiMap::new(1, 0);
        for i in space.basis_indices() {
            m.set_entry(vec![i], Vector::basis(i));
        }
        m
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<u32>, &Vector)> {
        self.table.iter()
    }

    pub fn set_entry(&mut self, tuple: Vec<u32>, value: Vector) {
        assert_eq!(tuple.len(), self.arity, "MultiMap::set_entry: tuple arity mismatch");
        if value.is_zero() {
            self.table.remove(&tuple);
        } else {
            self.table.insert(tuple, value);
        }
    }

    pub fn add_entry(&mut self, tuple: &[u32], value: &Vector, coeff: &Rational) {
        assert_eq!(tuple.len(), self.arity, "MultiMap::add_entry: tuple arity mismatch");
        if value.is_zero() || coeff.is_zero() {
            return;
        }
        let cur = self.table.remove(tuple).unwrap_or_else(Vector::zero);
        let mut next = cur;
        next.add_scaled(value, coeff);
        if next.is_zero() {
            self.table.remove(tuple);
        } else {
            self.table.insert(tuple.to_vec(), next);
        }
    }

    /// Value on a basis tuple (zero if absent).
    pub fn apply_basis(&self, tuple: &[u32]) -> Vector {
        assert_eq!(tuple.len(), self.arity, "MultiMap::apply_basis: tuple arity mismatch");
        self.table.get(tuple).cloned().unwrap_or_else(Vector::zero)
    }

    /// Multilinear evaluation on general vectors.
    pub fn apply(&self, args: &[Vector]) -> Vector {
        assert_eq!(args.len(), self.arity, "MultiMap::apply: argument count mismatch");
        expand_multilinear(args, |tuple| Ok(self.apply_basis(tuple)))
            .expect("infallible expansion")
    }

    /// Pointwise sum of two maps of equal arity and degree.
    pub fn add(&self, other: &MultiMap) -> MultiMap {
        assert_eq!(self.arity, other.arity, "MultiMap::add: arity mismatch");
        let mut out = self.clone();
        for (t, v) in other.entries() {
            out.add_entry(t, v, &Rational::one());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> MultiMap {
        let mut out = MultiMap::new(self.arity, self.degree);
        if c.is_zero() {
            return out;
        }
        for (t, v) in self.entries() {
            out.set_entry(t.clone(), v.scale(c));
        }
        out
    }

    /// Verify every table entry respects the declared degree, with
    /// per-position input degrees and an output degree function.
    pub fn check_degree_with(
        &self,
        input_degree: impl Fn(usize, u32) -> i64,
        output_degree: impl Fn(u32) -> i64,
    ) -> Result<()> {
        for (tuple, value) in &self.table {
            let in_deg: i64 = tuple.iter().enumerate().map(|(p, &i)| input_degree(p, i)).sum();
            for (out_idx, _) in value.iter() {
                let got = output_degree(out_idx);
                if got != in_deg + self.degree {
                    return Err(Error::InvalidData(format!(
                        "map of degree {} sends a tuple of total degree {in_deg} to degree {got}",
                        self.degree
                    )));
                }
            }
        }
        Ok(())
    }

    /// Degree check when all inputs and outputs live in one space.
    pub fn check_degree(&self, space: &GradedSpace) -> Result<()> {
        self.check_degree_with(|_, i| space.degree(i), |i| space.degree(i))
    }
}

/// Expand a multilinear expression over the supports of its arguments.
/// `f` is evaluated on each basis tuple in the product of supports, scaled
/// by the product of coordinates, and summed.
pub fn expand_multilinear(
    args: &[Vector],
    mut f: impl FnMut(&[u32]) -> Result<Vector>,
) -> Result<Vector> {
    let supports: Vec<Vec<(u32, Rational)>> = args
        .iter()
        .map(|v| v.iter().map(|(i, c)| (i, c.clone())).collect())
        .collect();
    if supports.iter().any(|s| s.is_empty()) {
        return Ok(Vector::zero());
    }
    let mut out = Vector::zero();
    let mut tuple = vec![0u32; args.len()];
    let mut coeffs = vec![Rational::one(); args.len() + 1];
    // Odometer over the product of supports.
    let mut cursor = vec![0usize; args.len()];
    loop {
        for (k, &c) in cursor.iter().enumerate() {
            let (idx, ref coef) = supports[k][c];
            tuple[k] = idx;
            coeffs[k + 1] = &coeffs[k] * coef;
        }
        let total = coeffs[args.len()].clone();
        let val = f(&tuple)?;
        out.add_scaled(&val, &total);
        // Advance odometer.
        let mut k = args.len();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            cursor[k] += 1;
            if cursor[k] < supports[k].len() {
                break;
            }
            cursor[k] = 0;
        }
    }
}

/// One placement of simultaneous insertion: evaluate
/// `outer ∘ (1 ⊗ … ⊗ g_1 ⊗ … ⊗ g_j ⊗ … ⊗ 1)` on a basis tuple.
///
/// `inserts` lists `(slot, map)` with strictly increasing slots in
/// `0..outer_arity`; every other slot of `outer` is the identity. The
/// Koszul sign moves each inserted map past the original inputs strictly
/// before its block: exponent `Σ_t deg(g_t) · (Σ degrees of tuple entries
/// before block t)`.
pub fn multi_insert_basis(
    outer: &impl Fn(&[u32]) -> Vector,
    outer_arity: usize,
    inserts: &[(usize, &MultiMap)],
    tuple: &[u32],
    space: &GradedSpace,
) -> Vector {
    // Validate slots and compute the expected composite arity.
    let mut expected = outer_arity;
    let mut prev: Option<usize> = None;
    for &(slot, g) in inserts {
        assert!(slot < outer_arity, "multi_insert_basis: slot out of range");
        if let Some(p) = prev {
            assert!(slot > p, "multi_insert_basis: slots must strictly increase");
        }
        prev = Some(slot);
        expected = expected - 1 + g.arity();
    }
    assert_eq!(tuple.len(), expected, "multi_insert_basis: tuple length mismatch");

    // Walk the outer slots, carving blocks out of the tuple.
    let mut sign_exp: i64 = 0;
    let mut consumed = 0usize; // position in `tuple`
    let mut insert_ix = 0usize;
    // Each outer slot yields either a fixed letter or a Vector (insert output).
    enum Slot {
        Letter(u32),
        Block(Vector),
    }
    let mut slots: Vec<Slot> = Vec::with_capacity(outer_arity);
    let mut degree_before: i64 = 0; // total degree of tuple entries already passed
    for outer_slot in 0..outer_arity {
        if insert_ix < inserts.len() && inserts[insert_ix].0 == outer_slot {
            let g = inserts[insert_ix].1;
            let block = &tuple[consumed..consumed + g.arity()];
            sign_exp += g.degree() * degree_before;
            let val = g.apply_basis(block);
            for &letter in block {
                degree_before += space.degree(letter);
            }
            consumed += g.arity();
            slots.push(Slot::Block(val));
            insert_ix += 1;
        } else {
            let letter = tuple[consumed];
            degree_before += space.degree(letter);
            consumed += 1;
            slots.push(Slot::Letter(letter));
        }
    }

    // Expand the block outputs multilinearly and feed the outer map.
    let args: Vec<Vector> = slots
        .iter()
        .map(|s| match s {
            Slot::Letter(l) => Vector::basis(*l),
            Slot::Block(v) => v.clone(),
        })
        .collect();
    let inner = expand_multilinear(&args, |outer_tuple| Ok(outer(outer_tuple)))
        .expect("infallible expansion");
    inner.scale(&neg_one_pow(sign_exp))
}

/// Sum of `multi_insert_basis` over *all* strictly increasing placements of
/// the ordered inner maps into the outer map's slots. This is the
/// brace-style composition evaluated on a basis tuple; quadratic-time and
/// intended as a reference oracle.
pub fn compose_all_placements(
    outer: &MultiMap,
    inners: &[&MultiMap],
    tuple: &[u32],
    space: &GradedSpace,
) -> Vector {
    let k = outer.arity();
    let j = inners.len();
    let mut out = Vector::zero();
    if j > k {
        return out;
    }
    // Enumerate strictly increasing slot choices p_1 < … < p_j in 0..k.
    let mut choice: Vec<usize> = (0..j).collect();
    loop {
        let inserts: Vec<(usize, &MultiMap)> =
            choice.iter().copied().zip(inners.iter().copied()).collect();
        let expected: usize =
            k - j + inners.iter().map(|g| g.arity()).sum::<usize>();
        if expected == tuple.len() {
            let f = |t: &[u32]| outer.apply_basis(t);
            out = out.add(&multi_insert_basis(&f, k, &inserts, tuple, space));
        }
        // Next strictly increasing combination.
        if j == 0 {
            break;
        }
        let mut i = j;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if choice[i] + 1 <= k - (j - i) {
                choice[i] += 1;
                for t in (i + 1)..j {
                    choice[t] = choice[t - 1] + 1;
                }
                if choice[j - 1] < k {
                    break;
                }
            }
        }
    }
    out
}

/// Matrix of a linear map between indexed spaces, columns in domain-basis
/// order. `f(j)` returns the image of domain basis vector `j`.
pub fn matrix_of_map(
    domain_dim: usize,
    codomain_dim: usize,
    mut f: impl FnMut(u32) -> Vector,
) -> SparseMatrix {
    SparseMatrix::from_columns(codomain_dim, domain_dim, |j| {
        f(j as u32)
            .iter()
            .map(|(i, c)| (i as usize, c.clone()))
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, rat_int};

    fn space() -> GradedSpace {
        // x even, t odd (degree 1), s odd (degree -1).
        GradedSpace::from_pairs(&[("x", 0), ("t", 1), ("s", -1)])
    }

    #[test]
    fn apply_is_multilinear() {
        let sp = space();
        let mut f = MultiMap::new(2, 0);
        f.set_entry(vec![0, 0], Vector::basis(0));
        f.set_entry(vec![1, 0], Vector::basis(1).scale(&rat_int(3)));
        let a = Vector::from_coords([(0, rat_int(2)), (1, rat_int(5))]);
        let b = Vector::basis(0);
        let got = f.apply(&[a.clone(), b.clone()]);
        let expect = f
            .apply(&[Vector::basis(0), b.clone()])
            .scale(&rat_int(2))
            .add(&f.apply(&[Vector::basis(1), b]).scale(&rat_int(5)));
        assert_eq!(got, expect);
        let _ = sp;
    }

    #[test]
    fn identity_map_is_identity() {
        let sp = space();
        let id = MultiMap::identity(&sp);
        let v = Vector::from_coords([(0, rat(1, 2)), (2, rat_int(-3))]);
        assert_eq!(id.apply(&[v.clone()]), v);
    }

    #[test]
    fn arity_zero_map_is_a_constant() {
        let c = {
            let mut m = MultiMap::new(0, 0);
            m.set_entry(vec![], Vector::basis(1).scale(&rat_int(4)));
            m
        };
        assert_eq!(c.apply(&[]), Vector::basis(1).scale(&rat_int(4)));
        assert_eq!(c.apply_basis(&[]), Vector::basis(1).scale(&rat_int(4)));
    }

    #[test]
    fn degree_check_flags_bad_entries() {
        let sp = space();
        let mut ok = MultiMap::new(2, -1);
        // t ⊗ x (total degree 1) -> x would be wrong; -> t is wrong too;
        // degree -1 forces output degree 0 on t⊗x: x works.
        ok.set_entry(vec![1, 0], Vector::basis(0));
        assert!(ok.check_degree(&sp).is_ok());
        let mut bad = MultiMap::new(2, -1);
        bad.set_entry(vec![1, 0], Vector::basis(1));
        assert!(bad.check_degree(&sp).is_err());
    }

    #[test]
    fn single_insert_sign_is_koszul() {
        let sp = space();
        // outer f arity 2: f(x, x) = x.
        let mut f = MultiMap::new(2, 0);
        f.set_entry(vec![0, 0], Vector::basis(0));
        // g arity 1, degree 1: g(s) = x  (|s| = -1, so degree checks out).
        let mut g = MultiMap::new(1, 1);
        g.set_entry(vec![2], Vector::basis(0));
        let outer = |t: &[u32]| f.apply_basis(t);

        // Insert g at slot 0 on tuple (s, x): nothing precedes, sign +1.
        let got = multi_insert_basis(&outer, 2, &[(0, &g)], &[2, 0], &sp);
        assert_eq!(got, Vector::basis(0));

        // Insert g at slot 1 on tuple (t, s): g (degree 1) moves past t
        // (degree 1): sign (-1)^{1*1} = -1. f(t, g(s)) needs f(t,x): add it.
        let mut f2 = MultiMap::new(2, 0);
        f2.set_entry(vec![1, 0], Vector::basis(1));
        let outer2 = |t: &[u32]| f2.apply_basis(t);
        let got = multi_insert_basis(&outer2, 2, &[(1, &g)], &[1, 2], &sp);
        assert_eq!(got, Vector::basis(1).negate());

        // Same but degree of preceding letter is -1 (s): exponent 1*(-1),
        // still odd: sign -1.
        let mut f3 = MultiMap::new(2, 0);
        f3.set_entry(vec![2, 0], Vector::basis(2));
        let outer3 = |t: &[u32]| f3.apply_basis(t);
        let got = multi_insert_basis(&outer3, 2, &[(1, &g)], &[2, 2], &sp);
        assert_eq!(got, Vector::basis(2).negate());
    }

    #[test]
    fn simultaneous_insert_signs_use_original_inputs() {
        let sp = space();
        // outer arity 3, g1 at slot 0 (arity 1), g2 at slot 2 (arity 1):
        // signs: g1 passes nothing; g2 passes original inputs in blocks
        // 0..=1, i.e. tuple[0] and tuple[1].
        let mut f = MultiMap::new(3, 0);
        f.set_entry(vec![0, 1, 0], Vector::basis(0));
        let mut g = MultiMap::new(1, 1);
        g.set_entry(vec![2], Vector::basis(0));
        let outer = |t: &[u32]| f.apply_basis(t);
        // tuple (s, t, s): g1 on s -> x (sign +), then g2 on s -> x with
        // exponent 1*(|s| + |t|) = 1*0 = 0: total +1. Outer f(x,t,x)... but
        // f table has (x,t,x)? We set (0,1,0) -> x. So result x.
        let got = multi_insert_basis(&outer, 3, &[(0, &g), (2, &g)], &[2, 1, 2], &sp);
        assert_eq!(got, Vector::basis(0));
    }

    #[test]
    fn all_placements_matches_hand_enumeration() {
        let sp = space();
        // outer f arity 2 symmetric-ish table; inner g arity 1 degree 0.
        let mut f = MultiMap::new(2, 0);
        f.set_entry(vec![0, 0], Vector::basis(0));
        f.set_entry(vec![0, 1], Vector::basis(1));
        f.set_entry(vec![1, 0], Vector::basis(1).scale(&rat_int(2)));
        let mut g = MultiMap::new(1, 0);
        g.set_entry(vec![0], Vector::basis(1)); // g(x) = t
        // Placements of g into f on tuple (x, x):
        //  slot 0: f(g x, x) = f(t, x) = 2t
        //  slot 1: f(x, g x) = f(x, t) = t
        let got = compose_all_placements(&f, &[&g], &[0, 0], &sp);
        assert_eq!(got, Vector::basis(1).scale(&rat_int(3)));
    }

    #[test]
    fn too_many_inners_give_zero() {
        let sp = space();
        let mut f = MultiMap::new(1, 0);
        f.set_entry(vec![0], Vector::basis(0));
        let g = MultiMap::identity(&sp);
        let got = compose_all_placements(&f, &[&g, &g], &[0, 0], &sp);
        assert!(got.is_zero());
    }

    #[test]
    fn matrix_of_identity() {
        let sp = space();
        let id = MultiMap::identity(&sp);
        let m = matrix_of_map(sp.dim(), sp.dim(), |j| id.apply_basis(&[j]));
        assert_eq!(m.rank(), 3);
    }
}
