//! Induction and restriction of simple and projective modules between
//! H_R(q) and H_S(q) for R = S minus one node, in both parameter cases of
//! the removed node, together with the two-sided duality pairing.

use std::collections::{BTreeMap, BTreeSet};

use crate::combinat::{lr_coefficient, Partition};
use crate::coxeter::{enumerate_group, CoxeterDiagram, Node};
use crate::error::{Error, Result};
use crate::repthy::{IrrLabel, ReprAlgebra};
use crate::zerohecke::{induce_c0, restrict_p0};

/// Which family of modules an operation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModuleKind {
    Projective,
    Simple,
}

/// A quotient-of-projective module over H_R(q): the projective module of
/// i_set over the 0-Hecke algebra of `inner`, with all generators of
/// `ambient` outside `inner` acting by zero, tensored with the character
/// data in `mu`. Its top is the simple module (i_set, mu).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct QModuleDescriptor {
    pub i_set: BTreeSet<Node>,
    pub inner: BTreeSet<Node>,
    pub ambient: BTreeSet<Node>,
    pub mu: Vec<Partition>,
    pub projective: bool,
}

/// One summand of an induction or restriction answer.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Term {
    Label(IrrLabel),
    Quotient(QModuleDescriptor),
}

/// Formal sum with nonnegative integer multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalSum<T: Ord>(BTreeMap<T, u128>);

impl<T: Ord> FormalSum<T> {
    pub fn new() -> Self {
        FormalSum(BTreeMap::new())
    }

    pub fn add(&mut self, t: T, mult: u128) {
        if mult > 0 {
            *self.0.entry(t).or_default() += mult;
        }
    }

    pub fn multiplicity(&self, t: &T) -> u128 {
        self.0.get(t).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&T, u128)> {
        self.0.iter().map(|(t, &m)| (t, m))
    }

    pub fn term_count(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> u128 {
        self.0.values().sum()
    }
}

impl<T: Ord> Default for FormalSum<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Ord> FromIterator<(T, u128)> for FormalSum<T> {
    fn from_iter<I: IntoIterator<Item = (T, u128)>>(iter: I) -> Self {
        let mut s = Self::new();
        for (t, m) in iter {
            s.add(t, m);
        }
        s
    }
}

/// What kind of direct sum (or Grothendieck-group sum) the terms form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumKind {
    Projectives,
    Simples,
    Indecomposables,
}

/// Outcome of a single induction or restriction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndResResult {
    pub kind: SumKind,
    pub terms: FormalSum<Term>,
}

impl IndResResult {
    /// Multiplicity of a plain label among the terms.
    pub fn label_multiplicity(&self, label: &IrrLabel) -> u128 {
        self.terms.multiplicity(&Term::Label(label.clone()))
    }

    /// Multiplicity of the simple module `label` in the top of the sum:
    /// quotient terms contribute through their top (i_set, mu).
    pub fn top_multiplicity(&self, label: &IrrLabel) -> u128 {
        self.terms
            .iter()
            .filter(|(t, _)| match t {
                Term::Label(l) => l == label,
                Term::Quotient(q) => q.i_set == label.i_set && q.mu == label.lambdas,
            })
            .map(|(_, m)| m)
            .sum()
    }

    /// The plain-label terms with multiplicities.
    pub fn labels(&self) -> Vec<(IrrLabel, u128)> {
        self.terms
            .iter()
            .filter_map(|(t, m)| match t {
                Term::Label(l) => Some((l.clone(), m)),
                Term::Quotient(_) => None,
            })
            .collect()
    }
}

/// Both sides of the two adjunction identities for one pair of labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityReport {
    /// (<P_r induced, C_s>, <P_r, C_s restricted>)
    pub up_pair: (u128, u128),
    /// (<P_s restricted, C_r>, <P_s, C_r induced>)
    pub down_pair: (u128, u128),
}

impl DualityReport {
    pub fn ok(&self) -> bool {
        self.up_pair.0 == self.up_pair.1 && self.down_pair.0 == self.down_pair.1
    }
}

/// How the one block containing a removed one-parameter node splits, with
/// the index bookkeeping between the one blocks of S and of R.
struct SplitData {
    /// position (in one-block order of S) of the block being cut
    p_star: usize,
    /// node count of that block
    block_size: usize,
    /// R one-block positions of the split parts, ascending by min node
    part_positions: Vec<usize>,
    /// node counts of the split parts, same order
    part_sizes: Vec<usize>,
    /// per S one-block position, the R position carrying the same block
    r_pos_for_s: Vec<Option<usize>>,
    /// per R one-block position, the S position it came from (None: a part)
    s_pos_for_r: Vec<Option<usize>>,
}

/// Induction/restriction context for removing one node from a diagram.
pub struct NodeRemoval {
    s_alg: ReprAlgebra,
    r_alg: ReprAlgebra,
    removed: Node,
    removed_zero: bool,
    guard: u128,
}

impl NodeRemoval {
    pub fn new(diagram: &CoxeterDiagram, removed: Node, guard: u128) -> Result<Self> {
        if !diagram.node_set().contains(&removed) {
            return Err(Error::InvalidDiagram(format!(
                "node {removed} is not in the diagram"
            )));
        }
        let s_alg = ReprAlgebra::new(diagram)?;
        let keep: BTreeSet<Node> = diagram
            .node_set()
            .into_iter()
            .filter(|&s| s != removed)
            .collect();
        let r_alg = ReprAlgebra::new(&diagram.induced(&keep))?;
        let removed_zero = diagram.param(removed).is_zero();
        Ok(NodeRemoval {
            s_alg,
            r_alg,
            removed,
            removed_zero,
            guard,
        })
    }

    pub fn s_algebra(&self) -> &ReprAlgebra {
        &self.s_alg
    }

    pub fn r_algebra(&self) -> &ReprAlgebra {
        &self.r_alg
    }

    pub fn removed(&self) -> Node {
        self.removed
    }

    pub fn removed_is_zero(&self) -> bool {
        self.removed_zero
    }

    pub fn induce(&self, kind: ModuleKind, label: &IrrLabel) -> Result<IndResResult> {
        if self.removed_zero {
            self.induce_zero(kind, label)
        } else {
            self.induce_one(kind, label)
        }
    }

    pub fn restrict(&self, kind: ModuleKind, label: &IrrLabel) -> Result<IndResResult> {
        if self.removed_zero {
            self.restrict_zero(kind, label)
        } else {
            self.restrict_one(kind, label)
        }
    }

    fn one_block_sets(alg: &ReprAlgebra) -> Vec<BTreeSet<Node>> {
        let p = alg.partition();
        p.one_blocks.iter().map(|&j| p.blocks[j].clone()).collect()
    }

    fn split_data(&self) -> Result<SplitData> {
        let s_blocks = Self::one_block_sets(&self.s_alg);
        let r_blocks = Self::one_block_sets(&self.r_alg);
        let p_star = s_blocks
            .iter()
            .position(|b| b.contains(&self.removed))
            .ok_or_else(|| Error::Internal("removed one node lies in no one block".into()))?;
        let mut r_pos_for_s = vec![None; s_blocks.len()];
        let mut s_pos_for_r = vec![None; r_blocks.len()];
        for (p, b) in s_blocks.iter().enumerate() {
            if p == p_star {
                continue;
            }
            let rp = r_blocks
                .iter()
                .position(|rb| rb == b)
                .ok_or_else(|| Error::Internal("one block lost under node removal".into()))?;
            r_pos_for_s[p] = Some(rp);
            s_pos_for_r[rp] = Some(p);
        }
        let part_positions: Vec<usize> = (0..r_blocks.len())
            .filter(|&rp| s_pos_for_r[rp].is_none())
            .collect();
        for &rp in &part_positions {
            if !r_blocks[rp].is_subset(&s_blocks[p_star]) {
                return Err(Error::Internal("split part escapes its block".into()));
            }
        }
        let part_sizes = part_positions.iter().map(|&rp| r_blocks[rp].len()).collect();
        Ok(SplitData {
            p_star,
            block_size: s_blocks[p_star].len(),
            part_positions,
            part_sizes,
            r_pos_for_s,
            s_pos_for_r,
        })
    }

    /// Partitions assigned to the two cut sides: real parts take their
    /// entry of mu, a missing side contributes the one-box partition.
    fn side_partitions(sd: &SplitData, mu: &[Partition]) -> (Partition, Partition) {
        let one_box = Partition::single_row(1);
        let left = sd
            .part_positions
            .first()
            .map(|&rp| mu[rp].clone())
            .unwrap_or_else(|| one_box.clone());
        let right = sd
            .part_positions
            .get(1)
            .map(|&rp| mu[rp].clone())
            .unwrap_or(one_box);
        (left, right)
    }

    fn induce_zero(&self, kind: ModuleKind, label: &IrrLabel) -> Result<IndResResult> {
        if !self.r_alg.is_valid(label) {
            return Err(Error::InvalidLabel(format!("{label}")));
        }
        let s0l = self.s_alg.s0_lambda(&label.lambdas);
        let mut terms = FormalSum::new();
        let kind = match kind {
            ModuleKind::Projective => {
                terms.add(Term::Label(label.clone()), 1);
                if s0l.contains(&self.removed) {
                    let mut bigger = label.i_set.clone();
                    bigger.insert(self.removed);
                    terms.add(
                        Term::Label(IrrLabel {
                            i_set: bigger,
                            lambdas: label.lambdas.clone(),
                        }),
                        1,
                    );
                }
                SumKind::Projectives
            }
            ModuleKind::Simple => {
                let r0l: BTreeSet<Node> =
                    s0l.iter().copied().filter(|&s| s != self.removed).collect();
                for k_set in induce_c0(
                    self.s_alg.diagram(),
                    &s0l,
                    &r0l,
                    &label.i_set,
                    self.guard,
                )? {
                    terms.add(
                        Term::Label(IrrLabel {
                            i_set: k_set,
                            lambdas: label.lambdas.clone(),
                        }),
                        1,
                    );
                }
                SumKind::Simples
            }
        };
        Ok(IndResResult { kind, terms })
    }

    fn restrict_zero(&self, kind: ModuleKind, label: &IrrLabel) -> Result<IndResResult> {
        if !self.s_alg.is_valid(label) {
            return Err(Error::InvalidLabel(format!("{label}")));
        }
        let s0l = self.s_alg.s0_lambda(&label.lambdas);
        let r0l: BTreeSet<Node> = s0l.iter().copied().filter(|&s| s != self.removed).collect();
        let mut terms = FormalSum::new();
        let kind = match kind {
            ModuleKind::Projective => {
                for k_set in restrict_p0(
                    self.s_alg.diagram(),
                    &s0l,
                    &r0l,
                    &label.i_set,
                    self.guard,
                )? {
                    let out = IrrLabel {
                        i_set: k_set,
                        lambdas: label.lambdas.clone(),
                    };
                    debug_assert!(self.r_alg.is_valid(&out));
                    terms.add(Term::Label(out), 1);
                }
                SumKind::Projectives
            }
            ModuleKind::Simple => {
                terms.add(
                    Term::Label(IrrLabel {
                        i_set: label.i_set.intersection(&r0l).copied().collect(),
                        lambdas: label.lambdas.clone(),
                    }),
                    1,
                );
                SumKind::Simples
            }
        };
        Ok(IndResResult { kind, terms })
    }

    fn induce_one(&self, kind: ModuleKind, label: &IrrLabel) -> Result<IndResResult> {
        if !self.r_alg.is_valid(label) {
            return Err(Error::InvalidLabel(format!("{label}")));
        }
        let sd = self.split_data()?;
        let (left, right) = Self::side_partitions(&sd, &label.lambdas);
        let mut terms = FormalSum::new();
        for lam_b in Partition::all_of(sd.block_size + 1) {
            let c = lr_coefficient(&left, &right, &lam_b);
            if c == 0 {
                continue;
            }
            let lambdas: Vec<Partition> = (0..sd.r_pos_for_s.len())
                .map(|p| {
                    if p == sd.p_star {
                        lam_b.clone()
                    } else {
                        label.lambdas[sd.r_pos_for_s[p].expect("mapped position")].clone()
                    }
                })
                .collect();
            let out = IrrLabel {
                i_set: label.i_set.clone(),
                lambdas,
            };
            // terms with the subset not fitting the new support vanish
            if self.s_alg.is_valid(&out) {
                terms.add(Term::Label(out), c);
            }
        }
        Ok(IndResResult {
            kind: match kind {
                ModuleKind::Projective => SumKind::Projectives,
                ModuleKind::Simple => SumKind::Simples,
            },
            terms,
        })
    }

    fn restrict_one(&self, kind: ModuleKind, label: &IrrLabel) -> Result<IndResResult> {
        if !self.s_alg.is_valid(label) {
            return Err(Error::InvalidLabel(format!("{label}")));
        }
        let sd = self.split_data()?;
        let lam_b = &label.lambdas[sd.p_star];
        let s0l = self.s_alg.s0_lambda(&label.lambdas);
        let sides: Vec<Vec<Partition>> = (0..2)
            .map(|i| Partition::all_of(sd.part_sizes.get(i).copied().unwrap_or(0) + 1))
            .collect();
        let mut terms = FormalSum::new();
        for left in &sides[0] {
            for right in &sides[1] {
                let c = lr_coefficient(left, right, lam_b);
                if c == 0 {
                    continue;
                }
                let mu: Vec<Partition> = (0..sd.s_pos_for_r.len())
                    .map(|rp| match sd.s_pos_for_r[rp] {
                        Some(p) => label.lambdas[p].clone(),
                        None => {
                            if rp == sd.part_positions[0] {
                                left.clone()
                            } else {
                                right.clone()
                            }
                        }
                    })
                    .collect();
                let r0mu = self.r_alg.s0_lambda(&mu);
                debug_assert!(s0l.is_subset(&r0mu));
                match kind {
                    ModuleKind::Simple => {
                        let out = IrrLabel {
                            i_set: label.i_set.clone(),
                            lambdas: mu,
                        };
                        debug_assert!(self.r_alg.is_valid(&out));
                        terms.add(Term::Label(out), c);
                    }
                    ModuleKind::Projective => {
                        let projective =
                            self.class_fits(&label.i_set, &s0l, &r0mu)?;
                        terms.add(
                            Term::Quotient(QModuleDescriptor {
                                i_set: label.i_set.clone(),
                                inner: s0l.clone(),
                                ambient: r0mu,
                                mu,
                                projective,
                            }),
                            c,
                        );
                    }
                }
            }
        }
        Ok(IndResResult {
            kind: match kind {
                ModuleKind::Simple => SumKind::Simples,
                ModuleKind::Projective => SumKind::Indecomposables,
            },
            terms,
        })
    }

    /// Whether the descent class of i_set inside the group on `ambient`
    /// stays within the parabolic on `inner`; exactly then the quotient
    /// module with this data is the full (projective) descent-class module.
    fn class_fits(
        &self,
        i_set: &BTreeSet<Node>,
        inner: &BTreeSet<Node>,
        ambient: &BTreeSet<Node>,
    ) -> Result<bool> {
        if inner == ambient {
            return Ok(true);
        }
        let table = enumerate_group(self.s_alg.diagram(), ambient, self.guard)?;
        let class = table.descent_class_mask(table.mask_of(i_set));
        Ok(class
            .iter()
            .all(|&w| table.support_set(w).is_subset(inner)))
    }

    /// Checks both adjunction identities for an R-label and an S-label,
    /// using <P_a, C_b> = delta extended bilinearly; quotient terms pair
    /// through their top.
    pub fn duality_check(
        &self,
        r_label: &IrrLabel,
        s_label: &IrrLabel,
    ) -> Result<DualityReport> {
        let p_up = self.induce(ModuleKind::Projective, r_label)?;
        let c_down = self.restrict(ModuleKind::Simple, s_label)?;
        let p_down = self.restrict(ModuleKind::Projective, s_label)?;
        let c_up = self.induce(ModuleKind::Simple, r_label)?;
        Ok(DualityReport {
            up_pair: (
                p_up.label_multiplicity(s_label),
                c_down.label_multiplicity(r_label),
            ),
            down_pair: (
                p_down.top_multiplicity(r_label),
                c_up.label_multiplicity(s_label),
            ),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::{hook_dim, specht_matrices};
    use crate::heckealg::{type_a_with_qstring, HeckeAlgebra, HeckeMonoidElement};
    use crate::linalg::{QMat, Q, RowSpace};
    use crate::zerohecke::projective_module;
    use num_traits::{One, Zero};

    const G: u128 = 1 << 20;

    fn set(xs: &[Node]) -> BTreeSet<Node> {
        xs.iter().copied().collect()
    }

    fn lams(xs: &[&[usize]]) -> Vec<Partition> {
        xs.iter()
            .map(|p| Partition::new(p.to_vec()).unwrap())
            .collect()
    }

    fn label(i: &[Node], ls: &[&[usize]]) -> IrrLabel {
        IrrLabel {
            i_set: set(i),
            lambdas: lams(ls),
        }
    }

    fn removal(q: &[u8], removed: Node) -> NodeRemoval {
        NodeRemoval::new(&type_a_with_qstring(q).unwrap(), removed, G).unwrap()
    }

    fn all_qstrings(n: usize) -> Vec<Vec<u8>> {
        (0u32..(1 << n))
            .map(|m| (0..n).map(|i| ((m >> i) & 1) as u8).collect())
            .collect()
    }

    #[test]
    fn zero_node_induction_of_projectives() {
        let nr = removal(&[0, 0, 1, 0, 0, 0, 1, 1], 5);
        // removed node excluded from the support of the lambda part: one term
        let a = nr
            .induce(ModuleKind::Projective, &label(&[3], &[&[2], &[2, 1]]))
            .unwrap();
        assert_eq!(a.kind, SumKind::Projectives);
        assert_eq!(a.labels(), vec![(label(&[3], &[&[2], &[2, 1]]), 1)]);
        // removed node inside the support: the subset may grow by it
        let b = nr
            .induce(ModuleKind::Projective, &label(&[3], &[&[2], &[3]]))
            .unwrap();
        assert_eq!(
            b.labels(),
            vec![
                (label(&[3], &[&[2], &[3]]), 1),
                (label(&[3, 5], &[&[2], &[3]]), 1),
            ]
        );
    }

    #[test]
    fn zero_node_induction_of_simples() {
        let nr = removal(&[0, 0, 1, 0, 0, 0, 1, 1], 4);
        let r = nr
            .induce(ModuleKind::Simple, &label(&[3], &[&[2], &[2, 1]]))
            .unwrap();
        assert_eq!(r.kind, SumKind::Simples);
        assert_eq!(
            r.labels(),
            vec![
                (label(&[3], &[&[2], &[2, 1]]), 1),
                (label(&[3, 4], &[&[2], &[2, 1]]), 1),
                (label(&[4], &[&[2], &[2, 1]]), 1),
            ]
        );
    }

    #[test]
    fn zero_node_restriction() {
        let nr = removal(&[0, 0, 1, 1, 0, 0, 0, 0, 1, 1, 1], 6);
        let lab = label(&[5], &[&[2, 1], &[2, 1, 1]]);
        let p = nr.restrict(ModuleKind::Projective, &lab).unwrap();
        assert_eq!(p.kind, SumKind::Projectives);
        assert_eq!(
            p.labels(),
            vec![
                (label(&[], &[&[2, 1], &[2, 1, 1]]), 1),
                (label(&[5], &[&[2, 1], &[2, 1, 1]]), 1),
            ]
        );
        let c = nr.restrict(ModuleKind::Simple, &lab).unwrap();
        assert_eq!(c.labels(), vec![(lab.clone(), 1)]);
    }

    #[test]
    fn zero_node_restriction_outside_support_is_identity() {
        // removed zero node not in the support of the label: nothing moves
        let nr = removal(&[0, 1], 0);
        let lab = label(&[], &[&[1, 1]]);
        let p = nr.restrict(ModuleKind::Projective, &lab).unwrap();
        assert_eq!(p.labels(), vec![(lab.clone(), 1)]);
        let c = nr.restrict(ModuleKind::Simple, &lab).unwrap();
        assert_eq!(c.labels(), vec![(lab, 1)]);
    }

    #[test]
    fn one_node_induction() {
        let nr = removal(&[0, 0, 0, 1, 1, 0], 4);
        // the two-row shape is dropped: its support loses the subset
        let a = nr
            .induce(ModuleKind::Projective, &label(&[2], &[&[2]]))
            .unwrap();
        assert_eq!(a.labels(), vec![(label(&[2], &[&[3]]), 1)]);
        let b = nr
            .induce(ModuleKind::Projective, &label(&[0], &[&[2]]))
            .unwrap();
        assert_eq!(
            b.labels(),
            vec![
                (label(&[0], &[&[2, 1]]), 1),
                (label(&[0], &[&[3]]), 1),
            ]
        );
        let c = nr.induce(ModuleKind::Simple, &label(&[0], &[&[2]])).unwrap();
        assert_eq!(c.kind, SumKind::Simples);
        assert_eq!(
            c.labels(),
            vec![
                (label(&[0], &[&[2, 1]]), 1),
                (label(&[0], &[&[3]]), 1),
            ]
        );
    }

    #[test]
    fn one_node_restriction_of_simples() {
        let nr = removal(&[0, 0, 0, 1, 1, 0], 4);
        let c = nr
            .restrict(ModuleKind::Simple, &label(&[0], &[&[2, 1]]))
            .unwrap();
        assert_eq!(
            c.labels(),
            vec![
                (label(&[0], &[&[1, 1]]), 1),
                (label(&[0], &[&[2]]), 1),
            ]
        );
    }

    #[test]
    fn one_node_restriction_of_projectives() {
        let nr = removal(&[0, 0, 0, 1, 1, 0], 4);
        let p = nr
            .restrict(ModuleKind::Projective, &label(&[0], &[&[2, 1]]))
            .unwrap();
        assert_eq!(p.kind, SumKind::Indecomposables);
        let q1 = QModuleDescriptor {
            i_set: set(&[0]),
            inner: set(&[0, 1]),
            ambient: set(&[0, 1, 2, 5]),
            mu: lams(&[&[2]]),
            projective: false,
        };
        let q2 = QModuleDescriptor {
            i_set: set(&[0]),
            inner: set(&[0, 1]),
            ambient: set(&[0, 1, 5]),
            mu: lams(&[&[1, 1]]),
            projective: true,
        };
        assert_eq!(p.terms.multiplicity(&Term::Quotient(q1)), 1);
        assert_eq!(p.terms.multiplicity(&Term::Quotient(q2)), 1);
        assert_eq!(p.terms.term_count(), 2);
    }

    /// Dimension of one quotient term: descent class of i_set inside the
    /// group on `inner`, times the character dimensions.
    fn quotient_dim(nr: &NodeRemoval, q: &QModuleDescriptor) -> u128 {
        let table = enumerate_group(nr.r_algebra().diagram(), &q.inner, G).unwrap();
        let class = table.descent_class_mask(table.mask_of(&q.i_set));
        class.len() as u128 * q.mu.iter().map(hook_dim).product::<u128>()
    }

    #[test]
    fn restriction_preserves_dimension() {
        for n in 2..=4 {
            for q in all_qstrings(n) {
                for removed in 0..n {
                    let nr = removal(&q, removed);
                    for lab in nr.s_algebra().irr_labels() {
                        let sdim = nr.s_algebra().simple_dim(&lab).unwrap();
                        let c = nr.restrict(ModuleKind::Simple, &lab).unwrap();
                        let csum: u128 = c
                            .labels()
                            .iter()
                            .map(|(l, m)| m * nr.r_algebra().simple_dim(l).unwrap())
                            .sum();
                        assert_eq!(csum, sdim, "{q:?} minus {removed}, {lab}");

                        let pdim = nr.s_algebra().pim_dim(&lab, G).unwrap();
                        let p = nr.restrict(ModuleKind::Projective, &lab).unwrap();
                        let psum: u128 = p
                            .terms
                            .iter()
                            .map(|(t, m)| {
                                m * match t {
                                    Term::Label(l) => {
                                        nr.r_algebra().pim_dim(l, G).unwrap()
                                    }
                                    Term::Quotient(qd) => {
                                        if qd.projective {
                                            let top = IrrLabel {
                                                i_set: qd.i_set.clone(),
                                                lambdas: qd.mu.clone(),
                                            };
                                            assert_eq!(
                                                quotient_dim(&nr, qd),
                                                nr.r_algebra().pim_dim(&top, G).unwrap()
                                            );
                                        }
                                        quotient_dim(&nr, qd)
                                    }
                                }
                            })
                            .sum();
                        assert_eq!(psum, pdim, "{q:?} minus {removed}, {lab}");
                    }
                }
            }
        }
    }

    #[test]
    fn duality_holds_on_small_paths() {
        let mut nonzero = 0u32;
        for q in all_qstrings(3) {
            for removed in 0..3 {
                let nr = removal(&q, removed);
                for r_label in nr.r_algebra().irr_labels() {
                    for s_label in nr.s_algebra().irr_labels() {
                        let rep = nr.duality_check(&r_label, &s_label).unwrap();
                        assert!(
                            rep.ok(),
                            "{q:?} minus {removed}: {r_label} vs {s_label}: {rep:?}"
                        );
                        if rep.up_pair.0 > 0 {
                            nonzero += 1;
                        }
                    }
                }
            }
        }
        assert!(nonzero > 10);
    }

    fn kron(a: &QMat, b: &QMat) -> QMat {
        let mut m = QMat::zeros(a.rows * b.rows, a.cols * b.cols);
        for i1 in 0..a.rows {
            for j1 in 0..a.cols {
                if a[(i1, j1)].is_zero() {
                    continue;
                }
                for i2 in 0..b.rows {
                    for j2 in 0..b.cols {
                        m[(i1 * b.rows + i2, j1 * b.cols + j2)] =
                            a[(i1, j1)].clone() * b[(i2, j2)].clone();
                    }
                }
            }
        }
        m
    }

    /// Explicit matrices for the action of every generator of `alg` on the
    /// projective or simple module of `lab`, over the product basis
    /// (descent class or point) x (tableau bases of the one blocks).
    fn module_matrices(
        alg: &ReprAlgebra,
        lab: &IrrLabel,
        kind: ModuleKind,
    ) -> (usize, BTreeMap<Node, QMat>) {
        let s0l = alg.s0_lambda(&lab.lambdas);
        let part = alg.partition();
        let blocks: Vec<Vec<Node>> = part
            .one_blocks
            .iter()
            .map(|&j| part.blocks[j].iter().copied().collect())
            .collect();
        let zero_dense = match kind {
            ModuleKind::Projective => Some(
                projective_module(alg.diagram(), &s0l, &lab.i_set, G)
                    .unwrap()
                    .to_dense(),
            ),
            ModuleKind::Simple => None,
        };
        let d0 = zero_dense.as_ref().map_or(1, |m| m.dim());
        let block_mats: Vec<Vec<QMat>> = lab
            .lambdas
            .iter()
            .map(|l| specht_matrices(l))
            .collect();
        let block_dims: Vec<usize> = lab
            .lambdas
            .iter()
            .map(|l| hook_dim(l) as usize)
            .collect();
        let total = d0 * block_dims.iter().product::<usize>();
        let mut acts = BTreeMap::new();
        for g in alg.diagram().node_set() {
            let zero_factor = if let Some(bpos) =
                blocks.iter().position(|b| b.contains(&g))
            {
                let _ = bpos;
                QMat::identity(d0)
            } else {
                match (&zero_dense, s0l.contains(&g), lab.i_set.contains(&g)) {
                    (Some(dm), true, _) => dm.actions[&g].clone(),
                    (Some(_), false, _) => QMat::zeros(d0, d0),
                    (None, _, true) => QMat::identity(1),
                    (None, _, false) => QMat::zeros(1, 1),
                }
            };
            let mut m = zero_factor;
            for (j, b) in blocks.iter().enumerate() {
                let f = match b.iter().position(|&x| x == g) {
                    // nodes of a path block are consecutive, so position p
                    // is the p-th adjacent transposition
                    Some(p) => block_mats[j][p].clone(),
                    None => QMat::identity(block_dims[j]),
                };
                m = kron(&m, &f);
            }
            acts.insert(g, m);
        }
        (total, acts)
    }

    /// Defining relations (T - 1)(T + q) = 0 plus braid and commutation:
    /// a zero-parameter generator acts idempotently, a one-parameter
    /// generator acts as an involution.
    fn check_relations(alg: &ReprAlgebra, acts: &BTreeMap<Node, QMat>, dim: usize) {
        let d = alg.diagram();
        let id = QMat::identity(dim);
        let nodes = d.node_set();
        for &g in &nodes {
            let t = &acts[&g];
            if d.param(g).is_zero() {
                assert_eq!(t.mul(t), *t, "quadratic at {g}");
            } else {
                assert_eq!(t.mul(t), id, "quadratic at {g}");
            }
            for &h in &nodes {
                if h <= g {
                    continue;
                }
                let u = &acts[&h];
                if d.adjacent(g, h) {
                    assert_eq!(
                        t.mul(u).mul(t),
                        u.mul(t).mul(u),
                        "braid {g},{h}"
                    );
                } else {
                    assert_eq!(t.mul(u), u.mul(t), "commute {g},{h}");
                }
            }
        }
    }

    fn gen_element(h: &HeckeAlgebra, g: Node) -> HeckeMonoidElement {
        let p = h.partition();
        let mut v = vec![0; h.one_tables().len()];
        if let Some(jp) = p
            .one_blocks
            .iter()
            .position(|&j| p.blocks[j].contains(&g))
        {
            v[jp] = h.one_tables()[jp].right_mul(0, g);
            HeckeMonoidElement { u: 0, v }
        } else {
            HeckeMonoidElement {
                u: h.s0_table().right_mul(0, g),
                v,
            }
        }
    }

    /// dim H_S tensor_{H_R} M, computed from the defining bilinear
    /// relations x h (x) m = x (x) h m over the generators h of H_R.
    fn tensor_dim(
        h: &HeckeAlgebra,
        r_nodes: &[Node],
        dim_m: usize,
        acts: &BTreeMap<Node, QMat>,
    ) -> usize {
        let basis = h.basis();
        let idx: BTreeMap<&HeckeMonoidElement, usize> =
            basis.iter().enumerate().map(|(i, b)| (b, i)).collect();
        let n = basis.len() * dim_m;
        let mut space = RowSpace::new();
        for (bi, x) in basis.iter().enumerate() {
            for &g in r_nodes {
                let xg = idx[&h.multiply(x, &gen_element(h, g))];
                let a = &acts[&g];
                for k in 0..dim_m {
                    let mut v = vec![Q::zero(); n];
                    v[xg * dim_m + k] += Q::one();
                    for r in 0..dim_m {
                        v[bi * dim_m + r] -= a[(r, k)].clone();
                    }
                    if v.iter().any(|q| !q.is_zero()) {
                        space.insert(&v);
                    }
                }
            }
        }
        n - space.dim()
    }

    fn oracle_case(q: &[u8], removed: Node, cap: usize) {
        let diagram = type_a_with_qstring(q).unwrap();
        let h = HeckeAlgebra::new(&diagram, G).unwrap();
        let nb = h.basis().len();
        let nr = removal(q, removed);
        let r_nodes: Vec<Node> = nr.r_algebra().diagram().node_set().into_iter().collect();
        for lab in nr.r_algebra().irr_labels() {
            for kind in [ModuleKind::Projective, ModuleKind::Simple] {
                let (dim_m, acts) = module_matrices(nr.r_algebra(), &lab, kind);
                if nb * dim_m > cap {
                    continue;
                }
                check_relations(nr.r_algebra(), &acts, dim_m);
                let got = tensor_dim(&h, &r_nodes, dim_m, &acts) as u128;
                let res = nr.induce(kind, &lab).unwrap();
                let want: u128 = res
                    .labels()
                    .iter()
                    .map(|(l, m)| {
                        m * match kind {
                            ModuleKind::Projective => {
                                nr.s_algebra().pim_dim(l, G).unwrap()
                            }
                            ModuleKind::Simple => {
                                nr.s_algebra().simple_dim(l).unwrap()
                            }
                        }
                    })
                    .sum();
                assert_eq!(got, want, "{q:?} minus {removed}, {lab}, {kind:?}");
            }
        }
    }

    #[test]
    fn induction_matches_tensor_product_dimension() {
        for n in 2..=3 {
            for q in all_qstrings(n) {
                for removed in 0..n {
                    oracle_case(&q, removed, 130);
                }
            }
        }
        // a longer mixed case where absorption enters the products
        oracle_case(&[0, 1, 1, 0], 0, 300);
        oracle_case(&[1, 0, 0, 1], 1, 300);
    }
}
