//! Rate-matrix generators `L_i = -I + A_i`, their exact span, and the
//! structural classification of the resulting Markov model.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::cayley::CayleyTable;
use crate::closure;
use crate::error::{Error, Result};
use crate::exact::Rref;
use crate::matrix::{IntMatrix, QMatrix};
use crate::perm::Perm;
use crate::representation::{regular_rep, RegularRep};
use crate::symmetry::{symmetry_group, SymmetryGroup};

/// A linear space of rate matrices, stored through integer generators and
/// the exact RREF of their row-major vectorizations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModelSubspace {
    order: usize,
    basis: Vec<IntMatrix>,
    rref: Rref,
}

impl ModelSubspace {
    /// Zero generators are dropped and duplicates keep their first position.
    pub fn from_generators(order: usize, generators: impl IntoIterator<Item = IntMatrix>) -> Result<Self> {
        let mut basis: Vec<IntMatrix> = Vec::new();
        for g in generators {
            if g.n() != order {
                return Err(Error::OrderMismatch {
                    expected: order,
                    found: g.n(),
                });
            }
            if let Some(column) = g.column_sums().iter().position(|&s| s != 0) {
                return Err(Error::NonZeroColumnSum { column });
            }
            if !g.is_zero() && !basis.contains(&g) {
                basis.push(g);
            }
        }
        let rref = Rref::from_i64_rows(order * order, basis.iter().map(IntMatrix::as_slice));
        Ok(ModelSubspace { order, basis, rref })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Distinct non-zero generators, in construction order.
    pub fn basis(&self) -> &[IntMatrix] {
        &self.basis
    }

    pub fn rref(&self) -> &Rref {
        &self.rref
    }

    pub fn dim(&self) -> usize {
        self.rref.rank()
    }

    /// Coefficients of `x` over the RREF rows when `x` lies in the span.
    pub fn contains(&self, x: &QMatrix) -> Option<Vec<BigRational>> {
        if x.n() != self.order {
            return None;
        }
        self.rref.coordinates(x.as_slice())
    }

    pub fn contains_int(&self, x: &IntMatrix) -> Option<Vec<BigRational>> {
        self.contains(&x.to_rational())
    }

    pub fn same_span(&self, other: &ModelSubspace) -> bool {
        self.order == other.order && self.rref == other.rref
    }

    /// Every generator of `other` lies in this span.
    pub fn contains_span(&self, other: &ModelSubspace) -> bool {
        self.order == other.order && other.basis.iter().all(|b| self.contains_int(b).is_some())
    }

    /// Indices of a maximal linearly independent prefix-greedy subset of `basis`.
    pub fn independent_generators(&self) -> Vec<usize> {
        let mut chosen = Vec::new();
        let mut rows: Vec<&[i64]> = Vec::new();
        for (i, g) in self.basis.iter().enumerate() {
            rows.push(g.as_slice());
            if Rref::from_i64_rows(self.order * self.order, rows.iter().copied()).rank() > chosen.len() {
                chosen.push(i);
            } else {
                rows.pop();
            }
        }
        chosen
    }

    /// Coefficients of `x` over `basis`, supported on [`Self::independent_generators`].
    pub fn generator_coefficients(&self, x: &QMatrix) -> Option<Vec<BigRational>> {
        if x.n() != self.order {
            return None;
        }
        let idx = self.independent_generators();
        let gens: Vec<QMatrix> = idx.iter().map(|&i| self.basis[i].to_rational()).collect();
        let coeffs = solve_exact(&gens, x)?;
        let mut full = vec![BigRational::zero(); self.basis.len()];
        for (c, &i) in coeffs.into_iter().zip(&idx) {
            full[i] = c;
        }
        Some(full)
    }

    /// True when every generator has non-negative off-diagonal entries.
    pub fn in_stochastic_cone(&self) -> bool {
        self.basis.iter().all(IntMatrix::offdiagonal_nonnegative)
    }

    /// Off-diagonal support of a generic member of the cone: the union of the
    /// positive off-diagonal entries of the generators.
    pub fn generic_support(&self) -> Support {
        let k = self.order;
        let mut cells = vec![false; k * k];
        for g in &self.basis {
            for i in 0..k {
                for j in 0..k {
                    if i != j && *g.get(i, j) > 0 {
                        cells[i * k + j] = true;
                    }
                }
            }
        }
        Support { order: k, cells }
    }

    /// States with no exit rate (columns index source states).
    pub fn absorbing_states(&self) -> Vec<usize> {
        self.generic_support().absorbing_states()
    }

    pub fn is_reducible(&self) -> bool {
        !self.generic_support().strongly_connected()
    }

    /// `K_σ B K_σᵀ` applied to every generator.
    pub fn conjugate(&self, p: &Perm) -> ModelSubspace {
        assert_eq!(p.degree(), self.order, "permutation degree mismatch");
        let basis: Vec<IntMatrix> = self.basis.iter().map(|b| conjugate_matrix(b, p)).collect();
        let rref = Rref::from_i64_rows(self.order * self.order, basis.iter().map(IntMatrix::as_slice));
        ModelSubspace {
            order: self.order,
            basis,
            rref,
        }
    }

    /// The RREF of the conjugated span, computed from the RREF rows alone.
    fn conjugated_rref(&self, p: &Perm) -> Rref {
        let k = self.order;
        let rows: Vec<Vec<BigRational>> = self
            .rref
            .rows()
            .iter()
            .map(|row| {
                let mut out = vec![BigRational::zero(); k * k];
                for i in 0..k {
                    for j in 0..k {
                        out[p.apply(i) * k + p.apply(j)] = row[i * k + j].clone();
                    }
                }
                out
            })
            .collect();
        Rref::from_rational_rows(k * k, &rows)
    }

    /// Smallest RREF over all simultaneous row/column relabelings; equal keys
    /// mean isomorphic models.
    pub fn canonical_key(&self) -> CanonicalKey {
        let rref = Perm::all(self.order)
            .iter()
            .map(|p| self.conjugated_rref(p))
            .min()
            .expect("at least the identity permutation");
        CanonicalKey {
            order: self.order,
            rref,
        }
    }

    /// Sorted generator list, minimized over relabelings. Two models with equal
    /// keys have the same *set* of generators up to relabeling, which is finer
    /// than having the same span.
    pub fn generator_set_key(&self) -> Vec<IntMatrix> {
        Perm::all(self.order)
            .iter()
            .map(|p| {
                let mut g: Vec<IntMatrix> = self.basis.iter().map(|b| conjugate_matrix(b, p)).collect();
                g.sort();
                g
            })
            .min()
            .unwrap_or_default()
    }
}

/// Solves `Σ c_i gens[i] = x` exactly for linearly independent `gens`.
fn solve_exact(gens: &[QMatrix], x: &QMatrix) -> Option<Vec<BigRational>> {
    let n = gens.len();
    // one equation per matrix entry, augmented with the right-hand side
    let mut a: Vec<Vec<BigRational>> = (0..x.as_slice().len())
        .map(|e| {
            let mut row: Vec<BigRational> = gens.iter().map(|g| g.as_slice()[e].clone()).collect();
            row.push(x.as_slice()[e].clone());
            row
        })
        .collect();
    let mut rank = 0;
    for col in 0..n {
        let piv = (rank..a.len()).find(|&r| !a[r][col].is_zero())?;
        a.swap(rank, piv);
        let pv = a[rank][col].clone();
        for v in a[rank].iter_mut() {
            *v = &*v / &pv;
        }
        let prow = a[rank].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let f = row[col].clone();
                for (v, p) in row.iter_mut().zip(&prow) {
                    *v -= &f * p;
                }
            }
        }
        rank += 1;
    }
    if a[rank..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    Some(a[..n].iter().map(|row| row[n].clone()).collect())
}

/// `K_σ B K_σᵀ`, i.e. entry `(σ(i), σ(j))` of the result is `B[i][j]`.
pub fn conjugate_matrix(b: &IntMatrix, p: &Perm) -> IntMatrix {
    let k = b.n();
    let mut out = IntMatrix::zeros(k);
    for i in 0..k {
        for j in 0..k {
            out.set(p.apply(i), p.apply(j), *b.get(i, j));
        }
    }
    out
}

/// Generators `-I + A_i` of the semigroup-based model.
pub fn rate_basis(r: &RegularRep) -> ModelSubspace {
    let k = r.order();
    let minus_identity = -&IntMatrix::identity(k);
    ModelSubspace::from_generators(k, r.matrices().iter().map(|a| &minus_identity + a))
        .expect("regular representation columns each sum to one")
}

/// Off-diagonal support pattern of a model.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Support {
    order: usize,
    cells: Vec<bool>,
}

impl Support {
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.cells[i * self.order + j]
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn absorbing_states(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&j| (0..self.order).all(|i| !self.get(i, j)))
            .collect()
    }

    /// The digraph with an edge `j -> i` for each supported `(i, j)` is strongly connected.
    pub fn strongly_connected(&self) -> bool {
        self.order <= 1 || (self.reach(false) && self.reach(true))
    }

    fn reach(&self, reversed: bool) -> bool {
        let k = self.order;
        let mut seen = vec![false; k];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            let edge = |v: usize| if reversed { self.get(u, v) } else { self.get(v, u) };
            let fresh: Vec<usize> = (0..k).filter(|&v| edge(v) && !seen[v]).collect();
            for v in fresh {
                seen[v] = true;
                stack.push(v);
            }
        }
        seen.into_iter().all(|s| s)
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.order {
            if i > 0 {
                writeln!(f)?;
            }
            for j in 0..self.order {
                let c = if i == j { '*' } else if self.get(i, j) { '+' } else { '.' };
                write!(f, "{c}")?;
            }
        }
        Ok(())
    }
}

/// Canonical isomorphism-class key of a model.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CanonicalKey {
    order: usize,
    rref: Rref,
}

impl CanonicalKey {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.rref.rank()
    }

    pub fn rref(&self) -> &Rref {
        &self.rref
    }

    /// Exact serialization: `k=<k>;d=<dim>;` followed by the RREF rows,
    /// entries comma-separated and rows `|`-separated.
    pub fn serialize(&self) -> String {
        let rows: Vec<String> = self
            .rref
            .rows()
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
            .collect();
        format!("k={};d={};{}", self.order, self.dim(), rows.join("|"))
    }
}

pub fn canonical_subspace(m: &ModelSubspace) -> CanonicalKey {
    m.canonical_key()
}

/// A semigroup together with the model it produces.
#[derive(Clone, Debug)]
pub struct DerivedModel {
    pub source: CayleyTable,
    pub subspace: ModelSubspace,
}

pub fn derive_model(t: &CayleyTable) -> Result<DerivedModel> {
    let rep = regular_rep(t)?;
    Ok(DerivedModel {
        source: t.clone(),
        subspace: rate_basis(&rep),
    })
}

/// Models grouped by [`CanonicalKey`].
#[derive(Clone, Debug)]
pub struct ModelClass {
    pub key: CanonicalKey,
    /// The model of the smallest source table.
    pub representative: ModelSubspace,
    /// Sorted source tables.
    pub sources: Vec<CayleyTable>,
}

/// Groups models into isomorphism classes, ordered by key.
pub fn dedup_models(models: Vec<DerivedModel>) -> Vec<ModelClass> {
    use rayon::prelude::*;
    let keyed: Vec<(CanonicalKey, DerivedModel)> = models
        .into_par_iter()
        .map(|m| (m.subspace.canonical_key(), m))
        .collect();
    let mut groups: BTreeMap<CanonicalKey, Vec<DerivedModel>> = BTreeMap::new();
    for (key, m) in keyed {
        groups.entry(key).or_default().push(m);
    }
    groups
        .into_iter()
        .map(|(key, mut members)| {
            members.sort_by(|a, b| a.source.cmp(&b.source));
            let representative = members[0].subspace.clone();
            ModelClass {
                key,
                representative,
                sources: members.into_iter().map(|m| m.source).collect(),
            }
        })
        .collect()
}

/// Number of classes under "same generator set up to relabeling" (see
/// [`ModelSubspace::generator_set_key`]).
pub fn generator_set_classes(models: &[DerivedModel]) -> usize {
    let mut keys: Vec<Vec<IntMatrix>> = models.iter().map(|m| m.subspace.generator_set_key()).collect();
    keys.sort();
    keys.dedup();
    keys.len()
}

/// Full classification of one model class.
#[derive(Clone, Debug)]
pub struct ModelReport {
    pub subspace: ModelSubspace,
    pub dimension: usize,
    pub absorbing_states: Vec<usize>,
    pub reducible: bool,
    pub symmetry_group: SymmetryGroup,
    pub variant_count: usize,
    pub lie_closed: bool,
    pub matrix_algebra_closed: bool,
    pub known_label: Option<String>,
    pub provenance: Vec<CayleyTable>,
}

impl ModelReport {
    pub fn classify(subspace: ModelSubspace, provenance: Vec<CayleyTable>) -> ModelReport {
        let symmetry = symmetry_group(&subspace);
        let variant_count = symmetry.variant_count();
        let lie = closure::check_lie_closed(&subspace);
        let alg = closure::check_algebra_closed(&subspace);
        ModelReport {
            dimension: subspace.dim(),
            absorbing_states: subspace.absorbing_states(),
            reducible: subspace.is_reducible(),
            symmetry_group: symmetry,
            variant_count,
            lie_closed: lie.closed,
            matrix_algebra_closed: alg.closed,
            known_label: None,
            provenance,
            subspace,
        }
    }

    /// Non-reducible with no absorbing state.
    pub fn is_interesting(&self) -> bool {
        !self.reducible && self.absorbing_states.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::enumerate_semigroups;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn model(rows: &[Vec<usize>]) -> ModelSubspace {
        derive_model(&CayleyTable::from_one_based(rows).unwrap()).unwrap().subspace
    }

    fn f81() -> ModelSubspace {
        derive_model(&CayleyTable::from_fn(4, |i, _| i).unwrap()).unwrap().subspace
    }

    fn example3() -> ModelSubspace {
        model(&[vec![1, 1, 3], vec![2, 2, 3], vec![3, 3, 3]])
    }

    fn im(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect())
    }

    #[test]
    fn equal_input_generators() {
        let m = f81();
        assert_eq!(m.basis().len(), 4);
        assert_eq!(m.dim(), 4);
        assert_eq!(
            m.basis()[0],
            im(&[&[0, 1, 1, 1], &[0, -1, 0, 0], &[0, 0, -1, 0], &[0, 0, 0, -1]])
        );
        assert!(m.in_stochastic_cone());
    }

    #[test]
    fn right_zero_band_is_trivial() {
        let m = derive_model(&CayleyTable::from_fn(4, |_, j| j).unwrap()).unwrap().subspace;
        assert!(m.basis().is_empty());
        assert_eq!(m.dim(), 0);
    }

    #[test]
    fn cyclic_three_drops_identity() {
        let m = model(&[vec![1, 2, 3], vec![2, 3, 1], vec![3, 1, 2]]);
        assert_eq!(m.dim(), 2);
        assert_eq!(m.basis().len(), 2);
    }

    #[test]
    fn membership_of_commutators() {
        let m = f81();
        let (r1, r2) = (&m.basis()[0], &m.basis()[1]);
        let bracket = &(r1 * r2) - &(r2 * r1);
        assert_eq!(bracket, r1 - r2);
        assert!(m.contains_int(&bracket).is_some());
        let zero = m.contains_int(&IntMatrix::zeros(4)).unwrap();
        assert!(zero.iter().all(Zero::is_zero));
        assert_eq!(zero.len(), 4);
    }

    #[test]
    fn jj3_product_is_not_a_member() {
        let l1 = im(&[&[-2, 0, 0], &[2, -1, 0], &[0, 1, 0]]);
        let l2 = im(&[&[0, 1, 0], &[0, -1, 2], &[0, 0, -2]]);
        let m = ModelSubspace::from_generators(3, [l1.clone(), l2.clone()]).unwrap();
        let prod = &l1 * &l2;
        assert_eq!(prod, im(&[&[0, -2, 0], &[0, 3, -2], &[0, -1, 2]]));
        assert!(m.contains_int(&prod).is_none());
    }

    #[test]
    fn rejects_non_rate_generators() {
        let bad = im(&[&[1, 0], &[0, 0]]);
        assert_eq!(
            ModelSubspace::from_generators(2, [bad]),
            Err(Error::NonZeroColumnSum { column: 0 })
        );
        assert!(matches!(
            ModelSubspace::from_generators(3, [IntMatrix::zeros(2)]),
            Err(Error::OrderMismatch { .. })
        ));
    }

    #[test]
    fn support_and_absorption() {
        let f = f81();
        let s = f.generic_support();
        assert!((0..4).all(|i| (0..4).all(|j| s.get(i, j) == (i != j))));
        assert!(f.absorbing_states().is_empty());
        assert!(!f.is_reducible());

        let e3 = example3();
        let s = e3.generic_support();
        assert!(!s.get(0, 2) && !s.get(1, 2));
        assert_eq!(e3.absorbing_states(), vec![2]);
        assert!(e3.is_reducible());

        let zero = ModelSubspace::from_generators(3, []).unwrap();
        assert!((0..3).all(|i| (0..3).all(|j| !zero.generic_support().get(i, j))));
        assert!(zero.is_reducible());
        assert_eq!(zero.absorbing_states(), vec![0, 1, 2]);
    }

    #[test]
    fn null_semigroup_absorbs_first_state() {
        let m = model(&[vec![1, 1], vec![1, 1]]);
        assert_eq!(m.basis(), &[im(&[&[0, 1], &[0, -1]])]);
        assert_eq!(m.absorbing_states(), vec![0]);
    }

    #[test]
    fn canonical_key_is_relabeling_invariant() {
        let f = f81();
        let key = f.canonical_key();
        for p in Perm::all(4) {
            assert_eq!(f.conjugate(&p).canonical_key(), key);
        }
        let e3 = example3();
        let k3 = e3.canonical_key();
        for p in Perm::all(3) {
            let c = e3.conjugate(&p);
            assert_eq!(c.canonical_key(), k3);
            assert_eq!(c.canonical_key().canonical_key_again(), k3);
        }
    }

    impl CanonicalKey {
        fn canonical_key_again(&self) -> CanonicalKey {
            let gens: Vec<IntMatrix> = self
                .rref
                .rows()
                .iter()
                .map(|r| {
                    let l = r.iter().fold(BigInt::from(1), |acc, x| num_integer::lcm(acc, x.denom().clone()));
                    let ints: Vec<i64> = r
                        .iter()
                        .map(|x| (x * BigRational::from_integer(l.clone())).to_integer().try_into().unwrap())
                        .collect();
                    IntMatrix::from_row_major(self.order, ints)
                })
                .collect();
            ModelSubspace::from_generators(self.order, gens).unwrap().canonical_key()
        }
    }

    #[test]
    fn two_state_dedup() {
        let models: Vec<DerivedModel> = enumerate_semigroups(2)
            .unwrap()
            .iter()
            .map(|t| derive_model(t).unwrap())
            .collect();
        let classes = dedup_models(models.clone());
        assert_eq!(classes.len(), 4);
        let s1s2 = classes.iter().find(|c| c.sources.len() == 2).unwrap();
        assert_eq!(s1s2.sources[0].rows_one_based(), vec![vec![1, 1], vec![1, 1]]);
        assert_eq!(s1s2.sources[1].rows_one_based(), vec![vec![1, 1], vec![1, 2]]);
        assert!(classes.iter().any(|c| c.key.dim() == 0));

        let mut reversed = models;
        reversed.reverse();
        let again = dedup_models(reversed);
        let keys = |cs: &[ModelClass]| cs.iter().map(|c| (c.key.clone(), c.sources.clone())).collect::<Vec<_>>();
        assert_eq!(keys(&classes), keys(&again));
    }

    #[test]
    fn three_state_class_counts() {
        let models: Vec<DerivedModel> = enumerate_semigroups(3)
            .unwrap()
            .iter()
            .map(|t| derive_model(t).unwrap())
            .collect();
        assert_eq!(dedup_models(models.clone()).len(), 15);
        assert_eq!(generator_set_classes(&models), 16);
    }

    #[test]
    fn every_derived_generator_is_a_rate_matrix() {
        for k in 1..=4 {
            for t in enumerate_semigroups(k).unwrap() {
                let m = derive_model(&t).unwrap().subspace;
                assert!(m.dim() <= k);
                for g in m.basis() {
                    assert!(g.has_zero_column_sums());
                    assert!(g.offdiagonal_nonnegative());
                }
            }
        }
    }

    #[test]
    fn generator_coefficients_over_independent_prefix() {
        let f = f81();
        let (r1, r3) = (&f.basis()[0], &f.basis()[2]);
        let x = (&r1.scale(&3) - &r3.scale(&2)).to_rational();
        let c = f.generator_coefficients(&x).unwrap();
        let expect: Vec<BigRational> = [3, 0, -2, 0].iter().map(|&v| BigRational::from_integer(v.into())).collect();
        assert_eq!(c, expect);
    }

    proptest! {
        #[test]
        fn contains_is_exact(
            table in prop::sample::select(enumerate_semigroups(3).unwrap()),
            coeffs in proptest::collection::vec((-20i64..20, 1i64..7), 3),
        ) {
            let m = derive_model(&table).unwrap().subspace;
            let mut x = QMatrix::zeros(3);
            for (b, &(n, d)) in m.basis().iter().zip(&coeffs) {
                let c = BigRational::new(n.into(), d.into());
                x = &x + &b.to_rational().scale(&c);
            }
            let over_rref = m.contains(&x).expect("combination must be a member");
            let mut rebuilt = vec![BigRational::zero(); 9];
            for (c, row) in over_rref.iter().zip(m.rref().rows()) {
                for (acc, v) in rebuilt.iter_mut().zip(row) {
                    *acc += c * v;
                }
            }
            prop_assert_eq!(rebuilt.as_slice(), x.as_slice());
            let over_gens = m.generator_coefficients(&x).unwrap();
            let mut again = QMatrix::zeros(3);
            for (b, c) in m.basis().iter().zip(&over_gens) {
                again = &again + &b.to_rational().scale(c);
            }
            prop_assert_eq!(again, x);
        }

        #[test]
        fn canonical_key_ignores_relabeling(
            table in prop::sample::select(enumerate_semigroups(4).unwrap()),
            p in prop::sample::select(Perm::all(4)),
            q in prop::sample::select(Perm::all(4)),
        ) {
            let m = derive_model(&table).unwrap().subspace;
            prop_assert_eq!(m.conjugate(&p).canonical_key(), m.conjugate(&q).canonical_key());
        }
    }
}
