//! Representation theory of H_S(q): the labels (I, lambda) of the simple
//! modules, dimensions of simples and projective indecomposables, the
//! regular-representation decomposition, the Cartan matrix, the quiver,
//! and the finite-representation-type criterion.
//!
//! Representation-theoretic operations require every one block to be of
//! type A, so that its group characters are indexed by partitions.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::rc::Rc;

use crate::combinat::{hook_dim, Partition};
use crate::coxeter::{
    enumerate_group, group_order_by_type, CartanType, CoxeterDiagram, GroupTable, Node,
};
use crate::error::{Error, Result};
use crate::heckealg::{block_partition, dimension, restricted_zero_block, BlockPartition};
use crate::zerohecke::{zero_hecke_quiver, Quiver};

/// Index of a simple or projective indecomposable H_S(q)-module: a subset
/// I of S^{0,lambda} plus one partition of |S_j| + 1 per one block.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IrrLabel {
    pub i_set: BTreeSet<Node>,
    pub lambdas: Vec<Partition>,
}

impl std::fmt::Display for IrrLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "I={{")?;
        for (k, s) in self.i_set.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "}}")?;
        for l in &self.lambdas {
            write!(f, ",{l}")?;
        }
        Ok(())
    }
}

/// Representation-theoretic context for a normalized diagram with type-A
/// one blocks.
pub struct ReprAlgebra {
    diagram: CoxeterDiagram,
    partition: BlockPartition,
    /// size of each one block, in one_blocks order
    one_sizes: Vec<usize>,
    tables: RefCell<HashMap<Vec<Node>, Rc<GroupTable>>>,
}

impl ReprAlgebra {
    pub fn new(diagram: &CoxeterDiagram) -> Result<Self> {
        let partition = block_partition(diagram)?;
        let mut one_sizes = Vec::new();
        for &j in &partition.one_blocks {
            let block = &partition.blocks[j];
            match diagram.classify_component(block)? {
                CartanType::A(n) => one_sizes.push(n),
                t => {
                    return Err(Error::Unsupported(format!(
                        "one block {:?} has type {t}; representation-theoretic \
                         operations need type A one blocks",
                        block.iter().collect::<Vec<_>>()
                    )))
                }
            }
        }
        Ok(ReprAlgebra {
            diagram: diagram.clone(),
            partition,
            one_sizes,
            tables: RefCell::new(HashMap::new()),
        })
    }

    pub fn diagram(&self) -> &CoxeterDiagram {
        &self.diagram
    }

    pub fn partition(&self) -> &BlockPartition {
        &self.partition
    }

    pub fn one_sizes(&self) -> &[usize] {
        &self.one_sizes
    }

    /// Positions (into one_blocks) where lambda is not a single row.
    pub fn active_positions(lambdas: &[Partition]) -> Vec<usize> {
        lambdas
            .iter()
            .enumerate()
            .filter(|(_, l)| !l.is_single_row())
            .map(|(p, _)| p)
            .collect()
    }

    /// S^{0,lambda}: zero nodes with no edge into any active one block.
    pub fn s0_lambda(&self, lambdas: &[Partition]) -> BTreeSet<Node> {
        let active: Vec<usize> = Self::active_positions(lambdas)
            .into_iter()
            .map(|p| self.partition.one_blocks[p])
            .collect();
        let mut out = BTreeSet::new();
        for &i in &self.partition.zero_blocks {
            out.extend(restricted_zero_block(&self.diagram, &self.partition, i, &active));
        }
        out
    }

    pub fn is_valid(&self, label: &IrrLabel) -> bool {
        label.lambdas.len() == self.one_sizes.len()
            && label
                .lambdas
                .iter()
                .zip(&self.one_sizes)
                .all(|(l, &n)| l.size() == n + 1)
            && label.i_set.is_subset(&self.s0_lambda(&label.lambdas))
    }

    /// All valid labels in canonical order (lambda tuple, then I).
    pub fn irr_labels(&self) -> Vec<IrrLabel> {
        let mut tuples: Vec<Vec<Partition>> = vec![Vec::new()];
        for &n in &self.one_sizes {
            let parts = Partition::all_of(n + 1);
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    parts.iter().map(move |p| {
                        let mut t2 = t.clone();
                        t2.push(p.clone());
                        t2
                    })
                })
                .collect();
        }
        let mut out = Vec::new();
        for lambdas in tuples {
            let s0l: Vec<Node> = self.s0_lambda(&lambdas).into_iter().collect();
            for i_set in crate::zerohecke::subsets_of(&s0l) {
                out.push(IrrLabel {
                    i_set,
                    lambdas: lambdas.clone(),
                });
            }
        }
        out.sort();
        out
    }

    fn table_for(&self, set: &BTreeSet<Node>, guard: u128) -> Result<Rc<GroupTable>> {
        let key: Vec<Node> = set.iter().copied().collect();
        if let Some(t) = self.tables.borrow().get(&key) {
            return Ok(Rc::clone(t));
        }
        let t = Rc::new(enumerate_group(&self.diagram, set, guard)?);
        self.tables.borrow_mut().insert(key, Rc::clone(&t));
        Ok(t)
    }

    pub fn simple_dim(&self, label: &IrrLabel) -> Result<u128> {
        if !self.is_valid(label) {
            return Err(Error::InvalidLabel(format!("{label}")));
        }
        Ok(label.lambdas.iter().map(hook_dim).product())
    }

    pub fn pim_dim(&self, label: &IrrLabel, guard: u128) -> Result<u128> {
        if !self.is_valid(label) {
            return Err(Error::InvalidLabel(format!("{label}")));
        }
        let s0l = self.s0_lambda(&label.lambdas);
        let table = self.table_for(&s0l, guard)?;
        let class = table.descent_class_mask(table.mask_of(&label.i_set));
        let d: u128 = label.lambdas.iter().map(hook_dim).product();
        Ok(class.len() as u128 * d)
    }

    /// Verifies sum over labels of (simple dim) x (PIM dim) = dim H_S(q),
    /// grouped by the set of active one blocks.
    pub fn regular_decomposition_check(&self, guard: u128) -> Result<RegularReport> {
        let dim = dimension(&self.diagram)?;
        let mut per_active: BTreeMap<Vec<usize>, u128> = BTreeMap::new();
        for label in self.irr_labels() {
            let term = self.simple_dim(&label)? * self.pim_dim(&label, guard)?;
            *per_active
                .entry(Self::active_positions(&label.lambdas))
                .or_default() += term;
        }
        let mut rows = Vec::new();
        let mut total = 0u128;
        for (active, lhs) in per_active {
            let j_sel: Vec<usize> = active
                .iter()
                .map(|&p| self.partition.one_blocks[p])
                .collect();
            let mut rhs: u128 = active
                .iter()
                .map(|&p| {
                    group_order_by_type(
                        &self.diagram,
                        &self.partition.blocks[self.partition.one_blocks[p]],
                    )
                    .map(|o| o - 1)
                })
                .product::<Result<u128>>()?;
            for &i in &self.partition.zero_blocks {
                let rest = restricted_zero_block(&self.diagram, &self.partition, i, &j_sel);
                rhs *= group_order_by_type(&self.diagram, &rest)?;
            }
            total += lhs;
            rows.push((active, lhs, rhs));
        }
        let ok = total == dim && rows.iter().all(|(_, l, r)| l == r);
        if !ok {
            return Err(Error::Internal(format!(
                "regular decomposition mismatch: total {total}, dimension {dim}"
            )));
        }
        Ok(RegularReport {
            dimension: dim,
            total,
            per_active_set: rows,
        })
    }

    /// Cartan matrix over the labels: block diagonal in lambda; the lambda
    /// block is the 0-Hecke Cartan matrix of S^{0,lambda}.
    pub fn cartan_matrix(&self, guard: u128) -> Result<(Vec<IrrLabel>, Vec<Vec<u64>>)> {
        let labels = self.irr_labels();
        let n = labels.len();
        let mut m = vec![vec![0u64; n]; n];
        for (a, la) in labels.iter().enumerate() {
            for (b, lb) in labels.iter().enumerate() {
                if la.lambdas != lb.lambdas {
                    continue;
                }
                let s0l = self.s0_lambda(&la.lambdas);
                let table = self.table_for(&s0l, guard)?;
                let im = table.mask_of(&la.i_set);
                let jm = table.mask_of(&lb.i_set);
                m[a][b] = (0..table.len())
                    .filter(|&w| table.ldesc_mask(w) == im && table.rdesc_mask(w) == jm)
                    .count() as u64;
            }
        }
        Ok((labels, m))
    }

    /// Quiver of H_S(q): disjoint union over lambda tuples of the 0-Hecke
    /// quiver of S^{0,lambda}, vertices relabeled (I, lambda).
    pub fn quiver(&self, guard: u128) -> Result<Quiver<IrrLabel>> {
        let mut tuples: Vec<Vec<Partition>> = self
            .irr_labels()
            .into_iter()
            .map(|l| l.lambdas)
            .collect();
        tuples.dedup();
        tuples.sort();
        tuples.dedup();
        let mut acc: Option<Quiver<IrrLabel>> = None;
        for lambdas in tuples {
            let s0l = self.s0_lambda(&lambdas);
            let q = zero_hecke_quiver(&self.diagram, &s0l, guard)?.map(|i_set| IrrLabel {
                i_set: i_set.clone(),
                lambdas: lambdas.clone(),
            });
            acc = Some(match acc {
                None => q,
                Some(prev) => prev.disjoint_union(&q),
            });
        }
        Ok(acc.unwrap_or(Quiver {
            vertices: vec![IrrLabel {
                i_set: BTreeSet::new(),
                lambdas: Vec::new(),
            }],
            arrows: vec![],
        }))
    }
}

/// Per-active-set breakdown of the regular decomposition.
#[derive(Debug, Clone)]
pub struct RegularReport {
    pub dimension: u128,
    pub total: u128,
    /// (active one-block positions, label-sum, closed-form product)
    pub per_active_set: Vec<(Vec<usize>, u128, u128)>,
}

/// Finite representation type iff every zero block has at most 2 nodes and
/// at most one has exactly 2.
pub fn finite_rep_type(diagram: &CoxeterDiagram) -> Result<bool> {
    let partition = block_partition(diagram)?;
    let sizes: Vec<usize> = partition
        .zero_blocks
        .iter()
        .map(|&i| partition.blocks[i].len())
        .collect();
    Ok(sizes.iter().all(|&n| n <= 2) && sizes.iter().filter(|&&n| n == 2).count() <= 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heckealg::type_a_with_qstring;

    #[test]
    fn label_counts() {
        // all zeros: 2^n labels
        let d = type_a_with_qstring(&[0, 0, 0]).unwrap();
        let alg = ReprAlgebra::new(&d).unwrap();
        assert_eq!(alg.irr_labels().len(), 8);
        // all ones: partitions of n+1, I empty forced
        let d = type_a_with_qstring(&[1, 1, 1]).unwrap();
        let alg = ReprAlgebra::new(&d).unwrap();
        let labels = alg.irr_labels();
        assert_eq!(labels.len(), Partition::all_of(4).len());
        assert!(labels.iter().all(|l| l.i_set.is_empty()));
    }

    #[test]
    fn zero_one_string_label_shape() {
        // q = 0^m 1^n: either alpha of m+1 with single-row lambda, or alpha
        // of m with lambda any other partition of n+1
        let d = type_a_with_qstring(&[0, 0, 1, 1]).unwrap();
        let alg = ReprAlgebra::new(&d).unwrap();
        for label in alg.irr_labels() {
            let lam = &label.lambdas[0];
            assert_eq!(lam.size(), 3);
            if lam.is_single_row() {
                assert!(label.i_set.is_subset(&[0, 1].into()));
            } else {
                assert!(label.i_set.is_subset(&[0].into()));
            }
        }
    }

    #[test]
    fn dims_and_regular_decomposition() {
        let d = type_a_with_qstring(&[0, 0, 1]).unwrap();
        let alg = ReprAlgebra::new(&d).unwrap();
        let report = alg.regular_decomposition_check(60000).unwrap();
        assert_eq!(report.dimension, 8);
        assert_eq!(report.total, 8);
        // specific label: alpha = (3) (I empty), lambda = [2]
        let label = IrrLabel {
            i_set: BTreeSet::new(),
            lambdas: vec![Partition::new(vec![2]).unwrap()],
        };
        assert_eq!(alg.pim_dim(&label, 60000).unwrap(), 1);
        assert_eq!(alg.simple_dim(&label).unwrap(), 1);
    }

    #[test]
    fn pim_dim_zero_hecke_case() {
        // all-zero A3: P indexed by descents {0} has dimension 3
        let d = type_a_with_qstring(&[0, 0, 0]).unwrap();
        let alg = ReprAlgebra::new(&d).unwrap();
        let label = IrrLabel {
            i_set: [0].into(),
            lambdas: vec![],
        };
        assert_eq!(alg.pim_dim(&label, 60000).unwrap(), 3);
        assert_eq!(alg.simple_dim(&label).unwrap(), 1);
    }

    #[test]
    fn regular_decomposition_exhaustive_small() {
        for n in 1..=5usize {
            for mask in 0u64..(1 << n) {
                let q: Vec<u8> = (0..n).map(|i| ((mask >> i) & 1) as u8).collect();
                let d = type_a_with_qstring(&q).unwrap();
                let alg = ReprAlgebra::new(&d).unwrap();
                alg.regular_decomposition_check(60000).unwrap();
            }
        }
    }

    #[test]
    fn cartan_matrices() {
        // all ones: identity
        let d = type_a_with_qstring(&[1, 1]).unwrap();
        let alg = ReprAlgebra::new(&d).unwrap();
        let (labels, m) = alg.cartan_matrix(60000).unwrap();
        for a in 0..labels.len() {
            for b in 0..labels.len() {
                assert_eq!(m[a][b], u64::from(a == b));
            }
        }
        // all zeros A2: ones at the diagonal corners plus an all-ones
        // 2x2 block on the singleton subsets
        let d = type_a_with_qstring(&[0, 0]).unwrap();
        let alg = ReprAlgebra::new(&d).unwrap();
        let (labels, m) = alg.cartan_matrix(60000).unwrap();
        assert_eq!(labels.len(), 4);
        let idx = |s: &[Node]| {
            labels
                .iter()
                .position(|l| l.i_set == s.iter().copied().collect())
                .unwrap()
        };
        let (e, s1, s2, f) = (idx(&[]), idx(&[0]), idx(&[1]), idx(&[0, 1]));
        assert_eq!(m[e][e], 1);
        assert_eq!(m[f][f], 1);
        for &a in &[s1, s2] {
            for &b in &[s1, s2] {
                assert_eq!(m[a][b], 1);
            }
        }
        assert_eq!(m[e][s1], 0);
        // symmetry and positive diagonal in a mixed case
        let d = type_a_with_qstring(&[0, 1, 0]).unwrap();
        let alg = ReprAlgebra::new(&d).unwrap();
        let (labels, m) = alg.cartan_matrix(60000).unwrap();
        for a in 0..labels.len() {
            assert!(m[a][a] >= 1);
            for b in 0..labels.len() {
                assert_eq!(m[a][b], m[b][a]);
            }
        }
    }

    #[test]
    fn quiver_examples() {
        // all ones: isolated vertices
        let d = type_a_with_qstring(&[1, 1, 1]).unwrap();
        let alg = ReprAlgebra::new(&d).unwrap();
        let q = alg.quiver(60000).unwrap();
        assert!(q.arrows.is_empty());
        // mixed: loopless, no arrows between distinct lambda tuples
        let d = type_a_with_qstring(&[0, 1, 0]).unwrap();
        let alg = ReprAlgebra::new(&d).unwrap();
        let q = alg.quiver(60000).unwrap();
        assert!(q.is_loopless());
        for &(a, b, _) in &q.arrows {
            assert_eq!(q.vertices[a].lambdas, q.vertices[b].lambdas);
        }
    }

    #[test]
    fn rep_type_criterion() {
        let d = type_a_with_qstring(&[1, 1, 1]).unwrap();
        assert!(finite_rep_type(&d).unwrap());
        let d = type_a_with_qstring(&[0, 0, 1, 1, 1, 0, 0]).unwrap();
        assert!(!finite_rep_type(&d).unwrap());
        let d = type_a_with_qstring(&[0, 0, 1, 0]).unwrap();
        assert!(finite_rep_type(&d).unwrap());
    }
}
