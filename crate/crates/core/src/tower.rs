//! Grothendieck groups of the tower of type-A Hecke algebras with
//! independent {0,1} parameters: graded product by induction over an
//! inserted zero node, coproduct by restriction at zero nodes, and the
//! pairing between projectives and simples.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::combinat::{Composition, Partition};
use crate::coxeter::Node;
use crate::error::{Error, Result};
use crate::heckealg::type_a_with_qstring;
use crate::indres::{FormalSum, ModuleKind, NodeRemoval, Term};
use crate::repthy::{IrrLabel, ReprAlgebra};

/// Runs (zero count, one count) of a parameter string; the first run may
/// have no zeros and the last may have no ones. The empty string is a
/// single (0, 0) run.
fn runs_of(qs: &[u8]) -> Vec<(usize, usize)> {
    if qs.is_empty() {
        return vec![(0, 0)];
    }
    let mut out = Vec::new();
    let mut i = 0;
    while i < qs.len() {
        let mut m = 0;
        while i < qs.len() && qs[i] == 0 {
            m += 1;
            i += 1;
        }
        let mut n = 0;
        while i < qs.len() && qs[i] == 1 {
            n += 1;
            i += 1;
        }
        out.push((m, n));
    }
    out
}

/// Graded basis label of the tower: a parameter string together with an
/// alternating tuple of compositions (zero runs) and partitions (one
/// runs). The empty label is the unit in grade zero.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TowerLabel {
    qs: Vec<u8>,
    alphas: Vec<Composition>,
    lambdas: Vec<Partition>,
}

impl TowerLabel {
    pub fn unit() -> Self {
        TowerLabel {
            qs: Vec::new(),
            alphas: Vec::new(),
            lambdas: Vec::new(),
        }
    }

    /// Validates the alternating tuple against the runs of the string:
    /// the i-th partition has size n_i + 1 and the i-th composition has
    /// size m_i^lambda + 1, where m_i^lambda deducts one for each
    /// neighboring one run carrying a non-trivial partition.
    pub fn new(
        qs: Vec<u8>,
        alphas: Vec<Composition>,
        lambdas: Vec<Partition>,
    ) -> Result<Self> {
        if alphas.is_empty() {
            if !qs.is_empty() || !lambdas.is_empty() {
                return Err(Error::InvalidLabel(
                    "empty label with leftover data".into(),
                ));
            }
            return Ok(Self::unit());
        }
        let runs = runs_of(&qs);
        if alphas.len() != runs.len() || lambdas.len() != runs.len() {
            return Err(Error::InvalidLabel(format!(
                "expected {} run labels, got {} compositions and {} partitions",
                runs.len(),
                alphas.len(),
                lambdas.len()
            )));
        }
        for (p, &(_, n)) in runs.iter().enumerate() {
            if lambdas[p].size() != n + 1 {
                return Err(Error::InvalidLabel(format!(
                    "partition {} should have size {}",
                    lambdas[p],
                    n + 1
                )));
            }
        }
        let active: Vec<bool> = lambdas.iter().map(|l| !l.is_single_row()).collect();
        for (p, &(m, _)) in runs.iter().enumerate() {
            let adj = (p > 0 && active[p - 1]) as usize + active[p] as usize;
            let want = m.saturating_sub(adj) + 1;
            if alphas[p].size() != want {
                return Err(Error::InvalidLabel(format!(
                    "composition {} should have size {want}",
                    alphas[p]
                )));
            }
        }
        Ok(TowerLabel { qs, alphas, lambdas })
    }

    pub fn grade(&self) -> usize {
        if self.alphas.is_empty() {
            0
        } else {
            self.qs.len() + 1
        }
    }

    pub fn qstring(&self) -> &[u8] {
        &self.qs
    }

    pub fn alphas(&self) -> &[Composition] {
        &self.alphas
    }

    pub fn lambdas(&self) -> &[Partition] {
        &self.lambdas
    }

    /// Nodes of the p-th zero run that remain after dropping the end
    /// touching an active neighboring one run on either side.
    fn surviving_nodes(runs: &[(usize, usize)], active: &[bool], p: usize, z: usize) -> Vec<Node> {
        let (m, _) = runs[p];
        let start = z + ((p > 0 && active[p - 1]) as usize);
        let end = (z + m).saturating_sub(active[p] as usize);
        if start >= end {
            Vec::new()
        } else {
            (start..end).collect()
        }
    }

    /// The subset-and-partitions label over the path algebra of the
    /// parameter string. Compositions turn into descents placed on the
    /// surviving nodes of their zero runs.
    pub fn irr_label(&self) -> IrrLabel {
        let runs = runs_of(&self.qs);
        let active: Vec<bool> = self.lambdas.iter().map(|l| !l.is_single_row()).collect();
        let mut i_set = BTreeSet::new();
        let mut lams = Vec::new();
        let mut z = 0;
        for (p, &(m, n)) in runs.iter().enumerate() {
            let nodes = Self::surviving_nodes(&runs, &active, p, z);
            for d in self.alphas[p].descent_values() {
                i_set.insert(nodes[d - 1]);
            }
            if n > 0 {
                lams.push(self.lambdas[p].clone());
            }
            z += m + n;
        }
        IrrLabel {
            i_set,
            lambdas: lams,
        }
    }

    /// Inverse of `irr_label` for a given parameter string.
    pub fn from_irr(qs: &[u8], label: &IrrLabel) -> Result<TowerLabel> {
        let runs = runs_of(qs);
        let mut lams = Vec::with_capacity(runs.len());
        let mut li = 0;
        for &(_, n) in &runs {
            if n > 0 {
                let l = label.lambdas.get(li).ok_or_else(|| {
                    Error::InvalidLabel("too few partitions for the string".into())
                })?;
                lams.push(l.clone());
                li += 1;
            } else {
                lams.push(Partition::single_row(1));
            }
        }
        if li != label.lambdas.len() {
            return Err(Error::InvalidLabel(
                "too many partitions for the string".into(),
            ));
        }
        let active: Vec<bool> = lams.iter().map(|l| !l.is_single_row()).collect();
        let mut alphas = Vec::with_capacity(runs.len());
        let mut covered = BTreeSet::new();
        let mut z = 0;
        for (p, &(m, n)) in runs.iter().enumerate() {
            let nodes = Self::surviving_nodes(&runs, &active, p, z);
            let dset: BTreeSet<Node> = nodes
                .iter()
                .enumerate()
                .filter(|(_, nd)| label.i_set.contains(nd))
                .map(|(j, _)| j)
                .collect();
            alphas.push(Composition::from_descent_nodes(&dset, nodes.len() + 1)?);
            covered.extend(nodes);
            z += m + n;
        }
        if !label.i_set.is_subset(&covered) {
            return Err(Error::InvalidLabel(format!(
                "subset {:?} escapes the surviving zero nodes",
                label.i_set
            )));
        }
        TowerLabel::new(qs.to_vec(), alphas, lams)
    }

    /// Parses the display form back into a label over a given parameter
    /// string: alternating `(composition)` and `[partition]` groups, one
    /// pair per run, with the trailing trivial partition optional. `-` is
    /// the unit over the empty string.
    pub fn parse(qs: &[u8], text: &str) -> Result<TowerLabel> {
        let text = text.trim();
        if text == "-" {
            if !qs.is_empty() {
                return Err(Error::InvalidLabel(
                    "the unit label lives over the empty string".into(),
                ));
            }
            return Ok(Self::unit());
        }
        let mut groups: Vec<&str> = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let close = match rest.as_bytes()[0] {
                b'(' => ')',
                b'[' => ']',
                _ => {
                    return Err(Error::InvalidLabel(format!(
                        "expected '(' or '[' at {rest:?}"
                    )))
                }
            };
            let end = rest
                .find(close)
                .ok_or_else(|| Error::InvalidLabel(format!("unclosed group in {text:?}")))?;
            groups.push(&rest[..=end]);
            rest = rest[end + 1..].trim_start();
            if let Some(r) = rest.strip_prefix(',') {
                rest = r.trim_start();
            } else if !rest.is_empty() {
                return Err(Error::InvalidLabel(format!(
                    "expected ',' between groups at {rest:?}"
                )));
            }
        }
        fn parts_of(group: &str) -> Result<Vec<usize>> {
            let inner = &group[1..group.len() - 1];
            inner
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::InvalidLabel(format!("bad part {t:?}")))
                })
                .collect()
        }
        let runs = runs_of(qs);
        let mut alphas = Vec::with_capacity(runs.len());
        let mut lambdas = Vec::with_capacity(runs.len());
        let mut it = groups.into_iter().peekable();
        for p in 0..runs.len() {
            let a = it.next().ok_or_else(|| {
                Error::InvalidLabel(format!("expected {} run labels", runs.len()))
            })?;
            if !a.starts_with('(') {
                return Err(Error::InvalidLabel(format!(
                    "expected a composition, found {a}"
                )));
            }
            alphas.push(Composition::new(parts_of(a)?)?);
            match it.peek() {
                Some(g) if g.starts_with('[') => {
                    lambdas.push(Partition::new(parts_of(it.next().unwrap())?)?);
                }
                // the implicit trivial partition of a final pure-zero run
                None if p + 1 == runs.len() => lambdas.push(Partition::single_row(1)),
                _ => {
                    return Err(Error::InvalidLabel(
                        "expected a partition after the composition".into(),
                    ))
                }
            }
        }
        if it.next().is_some() {
            return Err(Error::InvalidLabel("too many groups for the string".into()));
        }
        TowerLabel::new(qs.to_vec(), alphas, lambdas)
    }
}

impl fmt::Display for TowerLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.grade() == 0 {
            return write!(f, "-");
        }
        let runs = runs_of(&self.qs);
        for (p, &(_, n)) in runs.iter().enumerate() {
            if p > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.alphas[p])?;
            // the trailing trivial partition of a string ending in zeros
            // stays implicit, as in P_{(2)} over the string 0
            if !(p + 1 == runs.len() && n == 0) {
                write!(f, ",{}", self.lambdas[p])?;
            }
        }
        Ok(())
    }
}

/// Kind-uniform formal sum of labels, graded by label grade.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerElement {
    pub kind: ModuleKind,
    pub terms: FormalSum<TowerLabel>,
}

impl TowerElement {
    pub fn zero(kind: ModuleKind) -> Self {
        TowerElement {
            kind,
            terms: FormalSum::new(),
        }
    }

    pub fn monomial(kind: ModuleKind, label: TowerLabel) -> Self {
        let mut terms = FormalSum::new();
        terms.add(label, 1);
        TowerElement { kind, terms }
    }
}

/// Formal sum of ordered label pairs, as produced by the coproduct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerPairElement {
    pub kind: ModuleKind,
    pub terms: FormalSum<(TowerLabel, TowerLabel)>,
}

/// Induction context joining two parameter strings with a fresh zero node.
pub struct Join {
    qs: Vec<u8>,
    left_grade: usize,
    nr: NodeRemoval,
}

impl Join {
    pub fn new(q1: &[u8], q2: &[u8], guard: u128) -> Result<Self> {
        let mut qs = q1.to_vec();
        qs.push(0);
        qs.extend_from_slice(q2);
        let diagram = type_a_with_qstring(&qs)?;
        let nr = NodeRemoval::new(&diagram, q1.len(), guard)?;
        Ok(Join {
            qs,
            left_grade: q1.len() + 1,
            nr,
        })
    }

    pub fn qstring(&self) -> &[u8] {
        &self.qs
    }

    /// One monomial product: labels over the two substrings induce over
    /// the joined string through the inserted zero node.
    pub fn product(
        &self,
        kind: ModuleKind,
        a: &TowerLabel,
        b: &TowerLabel,
    ) -> Result<FormalSum<TowerLabel>> {
        if a.qs != self.qs[..self.left_grade - 1] || b.qs != self.qs[self.left_grade..] {
            return Err(Error::InvalidLabel(
                "labels do not match the joined strings".into(),
            ));
        }
        let ia = a.irr_label();
        let ib = b.irr_label();
        let mut i_set = ia.i_set;
        i_set.extend(ib.i_set.iter().map(|&x| x + self.left_grade));
        let mut lambdas = ia.lambdas;
        lambdas.extend(ib.lambdas.iter().cloned());
        let res = self.nr.induce(kind, &IrrLabel { i_set, lambdas })?;
        let mut out = FormalSum::new();
        for (t, mult) in res.terms.iter() {
            match t {
                Term::Label(l) => out.add(TowerLabel::from_irr(&self.qs, l)?, mult),
                Term::Quotient(_) => {
                    return Err(Error::Internal(
                        "zero-node induction produced a quotient term".into(),
                    ))
                }
            }
        }
        Ok(out)
    }
}

fn label_product(
    kind: ModuleKind,
    a: &TowerLabel,
    b: &TowerLabel,
    guard: u128,
) -> Result<FormalSum<TowerLabel>> {
    let mut out = FormalSum::new();
    if a.grade() == 0 {
        out.add(b.clone(), 1);
        return Ok(out);
    }
    if b.grade() == 0 {
        out.add(a.clone(), 1);
        return Ok(out);
    }
    Join::new(&a.qs, &b.qs, guard)?.product(kind, a, b)
}

/// Graded product: bilinear extension of induction over an inserted zero
/// node; the empty label is a two-sided unit.
pub fn hat_tensor(x: &TowerElement, y: &TowerElement, guard: u128) -> Result<TowerElement> {
    if x.kind != y.kind {
        return Err(Error::InvalidLabel(
            "cannot multiply projective and simple sums".into(),
        ));
    }
    let mut joins: BTreeMap<(Vec<u8>, Vec<u8>), Join> = BTreeMap::new();
    let mut out = FormalSum::new();
    for (a, ma) in x.terms.iter() {
        for (b, mb) in y.terms.iter() {
            if a.grade() == 0 {
                out.add(b.clone(), ma * mb);
                continue;
            }
            if b.grade() == 0 {
                out.add(a.clone(), ma * mb);
                continue;
            }
            let key = (a.qs.clone(), b.qs.clone());
            if !joins.contains_key(&key) {
                joins.insert(key.clone(), Join::new(&a.qs, &b.qs, guard)?);
            }
            for (t, mt) in joins[&key].product(x.kind, a, b)?.iter() {
                out.add(t.clone(), ma * mb * mt);
            }
        }
    }
    Ok(TowerElement {
        kind: x.kind,
        terms: out,
    })
}

/// Coproduct: boundary terms with the unit plus restriction at every
/// zero position of the string, splitting it in two.
pub fn coproduct(x: &TowerElement, guard: u128) -> Result<TowerPairElement> {
    let mut out = FormalSum::new();
    for (a, ma) in x.terms.iter() {
        if a.grade() == 0 {
            out.add((TowerLabel::unit(), TowerLabel::unit()), ma);
            continue;
        }
        out.add((TowerLabel::unit(), a.clone()), ma);
        out.add((a.clone(), TowerLabel::unit()), ma);
        let diagram = type_a_with_qstring(&a.qs)?;
        let lab = a.irr_label();
        for i in 0..a.qs.len() {
            if a.qs[i] != 0 {
                continue;
            }
            let nr = NodeRemoval::new(&diagram, i, guard)?;
            let res = nr.restrict(x.kind, &lab)?;
            let lq = &a.qs[..i];
            let rq = &a.qs[i + 1..];
            let left_blocks: usize = runs_of(lq).iter().map(|r| (r.1 > 0) as usize).sum();
            for (t, mt) in res.terms.iter() {
                let l = match t {
                    Term::Label(l) => l,
                    Term::Quotient(_) => {
                        return Err(Error::Internal(
                            "zero-node restriction produced a quotient term".into(),
                        ))
                    }
                };
                let left = IrrLabel {
                    i_set: l.i_set.iter().copied().filter(|&s| s < i).collect(),
                    lambdas: l.lambdas[..left_blocks].to_vec(),
                };
                let right = IrrLabel {
                    i_set: l
                        .i_set
                        .iter()
                        .copied()
                        .filter(|&s| s > i)
                        .map(|s| s - i - 1)
                        .collect(),
                    lambdas: l.lambdas[left_blocks..].to_vec(),
                };
                out.add(
                    (
                        TowerLabel::from_irr(lq, &left)?,
                        TowerLabel::from_irr(rq, &right)?,
                    ),
                    ma * mt,
                );
            }
        }
    }
    Ok(TowerPairElement {
        kind: x.kind,
        terms: out,
    })
}

/// Componentwise product of pair sums, used for the bialgebra check.
pub fn hat_tensor_pairs(
    x: &TowerPairElement,
    y: &TowerPairElement,
    guard: u128,
) -> Result<TowerPairElement> {
    if x.kind != y.kind {
        return Err(Error::InvalidLabel(
            "cannot multiply projective and simple sums".into(),
        ));
    }
    let mut out = FormalSum::new();
    for ((a, b), m1) in x.terms.iter() {
        for ((c, d), m2) in y.terms.iter() {
            let left = label_product(x.kind, a, c, guard)?;
            let right = label_product(x.kind, b, d, guard)?;
            for (u, mu) in left.iter() {
                for (v, mv) in right.iter() {
                    out.add((u.clone(), v.clone()), m1 * m2 * mu * mv);
                }
            }
        }
    }
    Ok(TowerPairElement {
        kind: x.kind,
        terms: out,
    })
}

/// Pairing of a projective sum against a simple sum: matching labels in
/// matching grades count once.
pub fn pairing(p: &TowerElement, c: &TowerElement) -> Result<u128> {
    if p.kind != ModuleKind::Projective || c.kind != ModuleKind::Simple {
        return Err(Error::InvalidLabel(
            "pairing takes a projective sum and a simple sum".into(),
        ));
    }
    Ok(p.terms.iter().map(|(l, m)| m * c.terms.multiplicity(l)).sum())
}

/// Pairing of pair sums, componentwise on both factors.
pub fn pair_pairing(p: &TowerPairElement, c: &TowerPairElement) -> Result<u128> {
    if p.kind != ModuleKind::Projective || c.kind != ModuleKind::Simple {
        return Err(Error::InvalidLabel(
            "pairing takes a projective sum and a simple sum".into(),
        ));
    }
    Ok(p.terms.iter().map(|(l, m)| m * c.terms.multiplicity(l)).sum())
}

/// Every label over one parameter string.
pub fn all_labels(qs: &[u8]) -> Result<Vec<TowerLabel>> {
    let alg = ReprAlgebra::new(&type_a_with_qstring(qs)?)?;
    alg.irr_labels()
        .iter()
        .map(|l| TowerLabel::from_irr(qs, l))
        .collect()
}

/// Multiplicities of the witness pair, the simple over string 0 tensor
/// the simple over string 1, in the coproduct of a product versus the
/// pair product of coproducts, for the two-factor element whose product
/// mixes run data across the inserted node. The first number is zero and
/// the second is positive, so the product and coproduct are not
/// compatible as a bialgebra.
pub fn bialgebra_counterexample(guard: u128) -> Result<(u128, u128)> {
    let c = |parts: &[usize]| Composition::new(parts.to_vec()).unwrap();
    let p = |parts: &[usize]| Partition::new(parts.to_vec()).unwrap();
    let x = TowerElement::monomial(
        ModuleKind::Simple,
        TowerLabel::new(vec![1], vec![c(&[1])], vec![p(&[2])])?,
    );
    let y = TowerElement::monomial(
        ModuleKind::Simple,
        TowerLabel::new(vec![0], vec![c(&[2])], vec![p(&[1])])?,
    );
    let witness = (
        TowerLabel::new(vec![0], vec![c(&[2])], vec![p(&[1])])?,
        TowerLabel::new(vec![1], vec![c(&[1])], vec![p(&[2])])?,
    );
    let of_product = coproduct(&hat_tensor(&x, &y, guard)?, guard)?;
    let of_factors = hat_tensor_pairs(&coproduct(&x, guard)?, &coproduct(&y, guard)?, guard)?;
    Ok((
        of_product.terms.multiplicity(&witness),
        of_factors.terms.multiplicity(&witness),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    const G: u128 = 1 << 20;

    fn c(parts: &[usize]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn all_qstrings(n: usize) -> Vec<Vec<u8>> {
        (0u32..(1 << n))
            .map(|m| (0..n).map(|i| ((m >> i) & 1) as u8).collect())
            .collect()
    }

    /// P or C label of a plain composition over an all-zero string.
    fn comp_label(alpha: &Composition) -> TowerLabel {
        let k = alpha.size();
        TowerLabel::new(
            vec![0; k - 1],
            vec![alpha.clone()],
            vec![Partition::single_row(1)],
        )
        .unwrap()
    }

    #[test]
    fn labels_round_trip_through_subset_form() {
        for n in 1..=5 {
            for qs in all_qstrings(n - 1) {
                let alg = ReprAlgebra::new(&type_a_with_qstring(&qs).unwrap()).unwrap();
                let irr = alg.irr_labels();
                let labels = all_labels(&qs).unwrap();
                assert_eq!(labels.len(), irr.len());
                for (t, l) in labels.iter().zip(&irr) {
                    assert_eq!(t.grade(), n);
                    assert_eq!(&t.irr_label(), l, "{qs:?}");
                }
            }
        }
    }

    #[test]
    fn display_follows_run_notation() {
        let l = TowerLabel::new(vec![1], vec![c(&[1])], vec![p(&[2])]).unwrap();
        assert_eq!(l.to_string(), "(1),[2]");
        let l = TowerLabel::new(vec![0], vec![c(&[2])], vec![p(&[1])]).unwrap();
        assert_eq!(l.to_string(), "(2)");
        let l = TowerLabel::new(
            vec![1, 0, 0],
            vec![c(&[1]), c(&[2, 1])],
            vec![p(&[2]), p(&[1])],
        )
        .unwrap();
        assert_eq!(l.to_string(), "(1),[2],(2,1)");
        assert_eq!(TowerLabel::unit().to_string(), "-");
    }

    #[test]
    fn unit_is_neutral() {
        for kind in [ModuleKind::Projective, ModuleKind::Simple] {
            let one = TowerElement::monomial(kind, TowerLabel::unit());
            for qs in all_qstrings(2) {
                for l in all_labels(&qs).unwrap() {
                    let m = TowerElement::monomial(kind, l);
                    assert_eq!(hat_tensor(&one, &m, G).unwrap(), m);
                    assert_eq!(hat_tensor(&m, &one, G).unwrap(), m);
                }
            }
        }
    }

    #[test]
    fn zero_string_product_concatenates_compositions() {
        for na in 1..=3 {
            for nb in 1..=3 {
                for alpha in Composition::all_of(na) {
                    for beta in Composition::all_of(nb) {
                        let x = TowerElement::monomial(
                            ModuleKind::Projective,
                            comp_label(&alpha),
                        );
                        let y = TowerElement::monomial(
                            ModuleKind::Projective,
                            comp_label(&beta),
                        );
                        let got = hat_tensor(&x, &y, G).unwrap();
                        let mut want = FormalSum::new();
                        want.add(comp_label(&alpha.concat(&beta)), 1);
                        want.add(comp_label(&alpha.near_concat(&beta)), 1);
                        assert_eq!(got.terms, want, "{alpha} x {beta}");
                    }
                }
            }
        }
    }

    #[test]
    fn mixed_product_example() {
        let x = TowerElement::monomial(
            ModuleKind::Simple,
            TowerLabel::new(vec![1], vec![c(&[1])], vec![p(&[2])]).unwrap(),
        );
        let y = TowerElement::monomial(
            ModuleKind::Simple,
            TowerLabel::new(vec![0], vec![c(&[2])], vec![p(&[1])]).unwrap(),
        );
        let got = hat_tensor(&x, &y, G).unwrap();
        let mk = |alpha: &[usize]| {
            TowerLabel::new(
                vec![1, 0, 0],
                vec![c(&[1]), c(alpha)],
                vec![p(&[2]), p(&[1])],
            )
            .unwrap()
        };
        let mut want = FormalSum::new();
        want.add(mk(&[3]), 1);
        want.add(mk(&[2, 1]), 1);
        want.add(mk(&[1, 2]), 1);
        assert_eq!(got.terms, want);
    }

    #[test]
    fn coproduct_of_a_single_zero_node() {
        let l = TowerLabel::new(vec![0], vec![c(&[2])], vec![p(&[1])]).unwrap();
        let x = TowerElement::monomial(ModuleKind::Simple, l.clone());
        let got = coproduct(&x, G).unwrap();
        let one = TowerLabel::new(vec![], vec![c(&[1])], vec![p(&[1])]).unwrap();
        let mut want = FormalSum::new();
        want.add((TowerLabel::unit(), l.clone()), 1);
        want.add((l, TowerLabel::unit()), 1);
        want.add((one.clone(), one), 1);
        assert_eq!(got.terms, want);
    }

    #[test]
    fn product_is_associative_and_graded() {
        for kind in [ModuleKind::Projective, ModuleKind::Simple] {
            for qa in all_qstrings(1) {
                for qb in all_qstrings(0) {
                    for qc in all_qstrings(1) {
                        for a in all_labels(&qa).unwrap() {
                            for b in all_labels(&qb).unwrap() {
                                for cl in all_labels(&qc).unwrap() {
                                    let (ga, gb, gc) =
                                        (a.grade(), b.grade(), cl.grade());
                                    let x = TowerElement::monomial(kind, a.clone());
                                    let y = TowerElement::monomial(kind, b.clone());
                                    let z = TowerElement::monomial(kind, cl.clone());
                                    let l =
                                        hat_tensor(&hat_tensor(&x, &y, G).unwrap(), &z, G)
                                            .unwrap();
                                    let r =
                                        hat_tensor(&x, &hat_tensor(&y, &z, G).unwrap(), G)
                                            .unwrap();
                                    assert_eq!(l, r, "{a} {b} {cl}");
                                    for (t, _) in l.terms.iter() {
                                        assert_eq!(t.grade(), ga + gb + gc);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    /// Triple coproduct maps for the coassociativity check.
    fn triples(
        x: &TowerElement,
        left_first: bool,
    ) -> BTreeMap<(TowerLabel, TowerLabel, TowerLabel), u128> {
        let mut out = BTreeMap::new();
        let d = coproduct(x, G).unwrap();
        for ((a, b), m) in d.terms.iter() {
            let inner = TowerElement::monomial(x.kind, if left_first { a.clone() } else { b.clone() });
            for ((u, v), m2) in coproduct(&inner, G).unwrap().terms.iter() {
                let key = if left_first {
                    (u.clone(), v.clone(), b.clone())
                } else {
                    (a.clone(), u.clone(), v.clone())
                };
                *out.entry(key).or_default() += m * m2;
            }
        }
        out
    }

    #[test]
    fn coproduct_is_coassociative() {
        for kind in [ModuleKind::Projective, ModuleKind::Simple] {
            for n in 1..=4 {
                for qs in all_qstrings(n - 1) {
                    for l in all_labels(&qs).unwrap() {
                        let x = TowerElement::monomial(kind, l.clone());
                        assert_eq!(triples(&x, true), triples(&x, false), "{qs:?} {l}");
                    }
                }
            }
        }
    }

    #[test]
    fn product_and_coproduct_are_dual() {
        for total in 2..=5 {
            for m in 1..total {
                let n = total - m;
                for q1 in all_qstrings(m - 1) {
                    for q2 in all_qstrings(n - 1) {
                        let join = Join::new(&q1, &q2, G).unwrap();
                        let qs = join.qstring().to_vec();
                        let deltas: Vec<(TowerLabel, TowerPairElement)> = all_labels(&qs)
                            .unwrap()
                            .into_iter()
                            .map(|y| {
                                let e = TowerElement::monomial(ModuleKind::Simple, y.clone());
                                (y, coproduct(&e, G).unwrap())
                            })
                            .collect();
                        for a in all_labels(&q1).unwrap() {
                            for b in all_labels(&q2).unwrap() {
                                let prod =
                                    join.product(ModuleKind::Projective, &a, &b).unwrap();
                                for (y, dy) in &deltas {
                                    let lhs = prod.multiplicity(y);
                                    let rhs =
                                        dy.terms.multiplicity(&(a.clone(), b.clone()));
                                    assert_eq!(lhs, rhs, "{a} x {b} vs {y}");
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn product_coproduct_compatibility_fails() {
        let (in_product, in_factors) = bialgebra_counterexample(G).unwrap();
        assert_eq!(in_product, 0);
        assert!(in_factors > 0);
    }
}
