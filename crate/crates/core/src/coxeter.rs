//! Finite simply-laced Coxeter groups through their geometric representation.
//!
//! Elements are integer matrices on the simple-root basis. Column s of the
//! matrix of w holds the coordinates of w(alpha_s); since every root is
//! positive or negative, s is a right descent of w exactly when that column
//! is nonpositive. Everything else (length, words, orders) is built on that
//! one test, so no explicit root enumeration is needed.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Node = usize;

/// Scalar parameter attached to a node. `Symbolic` stands for an unspecified
/// nonzero scalar that is not a root of unity; it compares equal only to
/// itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Param {
    Val(Rational64),
    Symbolic,
}

impl Param {
    pub fn zero() -> Self {
        Param::Val(Rational64::zero())
    }
    pub fn one() -> Self {
        Param::Val(Rational64::one())
    }
    pub fn is_zero(&self) -> bool {
        matches!(self, Param::Val(v) if v.is_zero())
    }
    pub fn is_one(&self) -> bool {
        matches!(self, Param::Val(v) if v.is_one())
    }
}

impl std::fmt::Display for Param {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Param::Val(v) if v.is_integer() => write!(f, "{}", v.numer()),
            Param::Val(v) => write!(f, "{}/{}", v.numer(), v.denom()),
            Param::Symbolic => write!(f, "x"),
        }
    }
}

/// Simply-laced Coxeter diagram: simple graph plus one parameter per node.
/// An edge means m_st = 3; a non-edge means m_st = 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterDiagram {
    nodes: Vec<Node>,
    edges: BTreeSet<(Node, Node)>,
    params: BTreeMap<Node, Param>,
}

/// Finite irreducible types of simply-laced diagrams.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CartanType {
    A(usize),
    D(usize),
    E(usize),
}

impl CartanType {
    pub fn order(self) -> u128 {
        fn fact(n: u128) -> u128 {
            (1..=n).product()
        }
        match self {
            CartanType::A(n) => fact(n as u128 + 1),
            CartanType::D(n) => (1u128 << (n - 1)) * fact(n as u128),
            CartanType::E(6) => 51840,
            CartanType::E(7) => 2903040,
            CartanType::E(8) => 696729600,
            CartanType::E(_) => unreachable!(),
        }
    }
}

impl std::fmt::Display for CartanType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CartanType::A(n) => write!(f, "A{n}"),
            CartanType::D(n) => write!(f, "D{n}"),
            CartanType::E(n) => write!(f, "E{n}"),
        }
    }
}

impl CoxeterDiagram {
    pub fn new(
        nodes: Vec<Node>,
        edges: Vec<(Node, Node)>,
        params: BTreeMap<Node, Param>,
    ) -> Result<Self> {
        let mut sorted = nodes.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != nodes.len() {
            return Err(Error::InvalidDiagram("duplicate node ids".into()));
        }
        if sorted.len() > 64 {
            return Err(Error::InvalidDiagram("more than 64 nodes".into()));
        }
        let node_set: BTreeSet<Node> = sorted.iter().copied().collect();
        let mut edge_set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidDiagram(format!("self-loop at node {a}")));
            }
            if !node_set.contains(&a) || !node_set.contains(&b) {
                return Err(Error::InvalidDiagram(format!(
                    "edge ({a},{b}) uses an unknown node"
                )));
            }
            let e = (a.min(b), a.max(b));
            if !edge_set.insert(e) {
                return Err(Error::InvalidDiagram(format!(
                    "multi-edge between {} and {}",
                    e.0, e.1
                )));
            }
        }
        for s in &sorted {
            if !params.contains_key(s) {
                return Err(Error::InvalidDiagram(format!("node {s} has no parameter")));
            }
        }
        if params.len() != sorted.len() {
            return Err(Error::InvalidDiagram("parameter for unknown node".into()));
        }
        Ok(CoxeterDiagram {
            nodes: sorted,
            edges: edge_set,
            params,
        })
    }

    pub fn n(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node_set(&self) -> BTreeSet<Node> {
        self.nodes.iter().copied().collect()
    }

    pub fn edges(&self) -> impl Iterator<Item = (Node, Node)> + '_ {
        self.edges.iter().copied()
    }

    pub fn param(&self, s: Node) -> Param {
        self.params[&s]
    }

    pub fn params(&self) -> &BTreeMap<Node, Param> {
        &self.params
    }

    pub fn with_params(&self, params: BTreeMap<Node, Param>) -> Result<Self> {
        CoxeterDiagram::new(
            self.nodes.clone(),
            self.edges.iter().copied().collect(),
            params,
        )
    }

    /// Position of a node in the sorted node list (the matrix row index).
    pub fn pos(&self, s: Node) -> usize {
        self.nodes.binary_search(&s).expect("node not in diagram")
    }

    pub fn adjacent(&self, s: Node, t: Node) -> bool {
        s != t && self.edges.contains(&(s.min(t), s.max(t)))
    }

    pub fn neighbors(&self, s: Node) -> Vec<Node> {
        self.nodes
            .iter()
            .copied()
            .filter(|&t| self.adjacent(s, t))
            .collect()
    }

    /// Diagram induced on a node subset, parameters carried along.
    pub fn induced(&self, keep: &BTreeSet<Node>) -> Self {
        let nodes: Vec<Node> = self.nodes.iter().copied().filter(|s| keep.contains(s)).collect();
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|(a, b)| keep.contains(a) && keep.contains(b))
            .collect();
        let params = self
            .params
            .iter()
            .filter(|(s, _)| keep.contains(s))
            .map(|(&s, &p)| (s, p))
            .collect();
        CoxeterDiagram {
            nodes,
            edges,
            params,
        }
    }

    /// Connected components of the subgraph induced on I, each sorted.
    pub fn components(&self, i_set: &BTreeSet<Node>) -> Vec<BTreeSet<Node>> {
        let mut seen = BTreeSet::new();
        let mut comps = Vec::new();
        for &start in i_set {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::from([start]);
            seen.insert(start);
            while let Some(s) = queue.pop_front() {
                comp.insert(s);
                for &t in i_set {
                    if !seen.contains(&t) && self.adjacent(s, t) {
                        seen.insert(t);
                        queue.push_back(t);
                    }
                }
            }
            comps.push(comp);
        }
        comps
    }

    /// Classifies a connected node subset as a finite A/D/E type.
    pub fn classify_component(&self, comp: &BTreeSet<Node>) -> Result<CartanType> {
        let n = comp.len();
        let err = || Error::NotFiniteType {
            nodes: comp.iter().copied().collect(),
        };
        let edge_count = self
            .edges
            .iter()
            .filter(|(a, b)| comp.contains(a) && comp.contains(b))
            .count();
        if edge_count != n - 1 {
            return Err(err()); // cycle: not a tree, never finite here
        }
        let deg: BTreeMap<Node, usize> = comp
            .iter()
            .map(|&s| {
                (
                    s,
                    comp.iter().filter(|&&t| self.adjacent(s, t)).count(),
                )
            })
            .collect();
        if deg.values().any(|&d| d > 3) {
            return Err(err());
        }
        let branches: Vec<Node> = deg
            .iter()
            .filter(|(_, &d)| d == 3)
            .map(|(&s, _)| s)
            .collect();
        match branches.len() {
            0 => Ok(CartanType::A(n)),
            1 => {
                let b = branches[0];
                // Walk each arm from the branch node out to its leaf.
                let mut arms: Vec<usize> = comp
                    .iter()
                    .copied()
                    .filter(|&t| self.adjacent(b, t))
                    .map(|first| {
                        let mut prev = b;
                        let mut cur = first;
                        let mut len = 1;
                        while let Some(next) = comp
                            .iter()
                            .copied()
                            .find(|&t| self.adjacent(cur, t) && t != prev)
                        {
                            prev = cur;
                            cur = next;
                            len += 1;
                        }
                        len
                    })
                    .collect();
                arms.sort_unstable();
                if arms.len() != 3 || arms.iter().sum::<usize>() != n - 1 {
                    return Err(err());
                }
                match (arms[0], arms[1], arms[2]) {
                    (1, 1, c) => Ok(CartanType::D(c + 3)),
                    (1, 2, 2) => Ok(CartanType::E(6)),
                    (1, 2, 3) => Ok(CartanType::E(7)),
                    (1, 2, 4) => Ok(CartanType::E(8)),
                    _ => Err(err()),
                }
            }
            _ => Err(err()),
        }
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::identity(self.n())
    }

    pub fn generator(&self, s: Node) -> GroupElement {
        let n = self.n();
        let sp = self.pos(s);
        let mut mat = GroupElement::identity(n).mat;
        for (jp, &t) in self.nodes.iter().enumerate() {
            mat[sp * n + jp] = if t == s {
                -1
            } else if self.adjacent(s, t) {
                1
            } else {
                0
            };
        }
        GroupElement { n, mat }
    }
}

/// Product over the A/D/E components of I of the component group orders.
pub fn group_order_by_type(diagram: &CoxeterDiagram, i_set: &BTreeSet<Node>) -> Result<u128> {
    let mut order: u128 = 1;
    for comp in diagram.components(i_set) {
        order *= diagram.classify_component(&comp)?.order();
    }
    Ok(order)
}

/// Group element in the geometric representation, row-major n x n matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    n: usize,
    mat: Vec<i64>,
}

impl GroupElement {
    pub fn identity(n: usize) -> Self {
        let mut mat = vec![0i64; n * n];
        for i in 0..n {
            mat[i * n + i] = 1;
        }
        GroupElement { n, mat }
    }

    pub fn is_identity(&self) -> bool {
        *self == GroupElement::identity(self.n)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn key(&self) -> &[i64] {
        &self.mat
    }

    fn entry(&self, i: usize, j: usize) -> i64 {
        self.mat[i * self.n + j]
    }
}

fn check_same(u: &GroupElement, v: &GroupElement) -> Result<()> {
    if u.n != v.n {
        return Err(Error::DiagramMismatch);
    }
    Ok(())
}

pub fn multiply(u: &GroupElement, v: &GroupElement) -> Result<GroupElement> {
    check_same(u, v)?;
    let n = u.n;
    let mut mat = vec![0i64; n * n];
    for i in 0..n {
        for k in 0..n {
            let a = u.entry(i, k);
            if a == 0 {
                continue;
            }
            for j in 0..n {
                mat[i * n + j] += a * v.entry(k, j);
            }
        }
    }
    Ok(GroupElement { n, mat })
}

fn mul_unchecked(u: &GroupElement, v: &GroupElement) -> GroupElement {
    multiply(u, v).expect("dimension checked by caller")
}

/// True when w(alpha_s) is a negative root, i.e. ell(ws) < ell(w).
pub fn is_right_descent(diagram: &CoxeterDiagram, w: &GroupElement, s: Node) -> bool {
    let n = w.n;
    let sp = diagram.pos(s);
    let col_nonpos = (0..n).all(|i| w.entry(i, sp) <= 0);
    col_nonpos
}

pub fn right_descents(diagram: &CoxeterDiagram, w: &GroupElement) -> BTreeSet<Node> {
    diagram
        .nodes()
        .iter()
        .copied()
        .filter(|&s| is_right_descent(diagram, w, s))
        .collect()
}

pub fn left_descents(diagram: &CoxeterDiagram, w: &GroupElement) -> BTreeSet<Node> {
    right_descents(diagram, &inverse(diagram, w))
}

/// Reduced word obtained by stripping the smallest right descent at each
/// step; letters come out in word order.
fn reduced_word_right_strip(diagram: &CoxeterDiagram, w: &GroupElement) -> Vec<Node> {
    let mut letters_rev = Vec::new();
    let mut cur = w.clone();
    loop {
        let Some(s) = diagram
            .nodes()
            .iter()
            .copied()
            .find(|&s| is_right_descent(diagram, &cur, s))
        else {
            break;
        };
        letters_rev.push(s);
        cur = mul_unchecked(&cur, &diagram.generator(s));
    }
    debug_assert!(cur.is_identity());
    letters_rev.reverse();
    letters_rev
}

pub fn length(diagram: &CoxeterDiagram, w: &GroupElement) -> usize {
    reduced_word_right_strip(diagram, w).len()
}

pub fn inverse(diagram: &CoxeterDiagram, w: &GroupElement) -> GroupElement {
    let word = reduced_word_right_strip(diagram, w);
    let mut out = diagram.identity();
    for &s in word.iter().rev() {
        out = mul_unchecked(&out, &diagram.generator(s));
    }
    out
}

pub fn evaluate_word(diagram: &CoxeterDiagram, word: &[Node]) -> GroupElement {
    let mut out = diagram.identity();
    for &s in word {
        out = mul_unchecked(&out, &diagram.generator(s));
    }
    out
}

/// ShortLex reduced word: at each step the smallest left descent.
pub fn reduced_word(diagram: &CoxeterDiagram, w: &GroupElement) -> Vec<Node> {
    let mut word = Vec::new();
    let mut cur = w.clone();
    let mut cur_inv = inverse(diagram, w);
    loop {
        // left descents of cur are right descents of its inverse
        let Some(s) = diagram
            .nodes()
            .iter()
            .copied()
            .find(|&s| is_right_descent(diagram, &cur_inv, s))
        else {
            break;
        };
        word.push(s);
        let g = diagram.generator(s);
        cur = mul_unchecked(&g, &cur);
        cur_inv = mul_unchecked(&cur_inv, &g);
    }
    debug_assert!(cur.is_identity());
    word
}

/// Bruhat order via the greedy subword scan along a reduced word of w:
/// at each letter s with s a left descent of the residue, absorb it.
pub fn bruhat_leq_with_word(
    diagram: &CoxeterDiagram,
    u: &GroupElement,
    word_of_w: &[Node],
) -> bool {
    let mut res = u.clone();
    let mut res_inv = inverse(diagram, u);
    for &s in word_of_w {
        if is_right_descent(diagram, &res_inv, s) {
            let g = diagram.generator(s);
            res = mul_unchecked(&g, &res);
            res_inv = mul_unchecked(&res_inv, &g);
        }
    }
    res.is_identity()
}

pub fn bruhat_leq(diagram: &CoxeterDiagram, u: &GroupElement, w: &GroupElement) -> Result<bool> {
    check_same(u, w)?;
    Ok(bruhat_leq_with_word(diagram, u, &reduced_word(diagram, w)))
}

/// u <=_L w iff ell(w) = ell(u) + ell(w u^{-1}).
pub fn weak_leq_left(diagram: &CoxeterDiagram, u: &GroupElement, w: &GroupElement) -> Result<bool> {
    check_same(u, w)?;
    let wu_inv = mul_unchecked(w, &inverse(diagram, u));
    Ok(length(diagram, w) == length(diagram, u) + length(diagram, &wu_inv))
}

/// Longest element of W_I by greedy ascent; I must be finite type.
pub fn longest_element(diagram: &CoxeterDiagram, i_set: &BTreeSet<Node>) -> GroupElement {
    let mut w = diagram.identity();
    loop {
        let Some(&s) = i_set.iter().find(|&&s| !is_right_descent(diagram, &w, s)) else {
            return w;
        };
        w = mul_unchecked(&w, &diagram.generator(s));
    }
}

/// Letters appearing in any reduced word of w (well defined by the Word
/// Property).
pub fn support(diagram: &CoxeterDiagram, w: &GroupElement) -> BTreeSet<Node> {
    reduced_word_right_strip(diagram, w).into_iter().collect()
}

/// w = w^J . jw with w^J having no right descents in J and jw in W_J;
/// lengths add.
pub fn parabolic_decompose(
    diagram: &CoxeterDiagram,
    w: &GroupElement,
    j_set: &BTreeSet<Node>,
) -> (GroupElement, GroupElement) {
    let mut left = w.clone();
    let mut right = diagram.identity();
    loop {
        let Some(&s) = j_set
            .iter()
            .find(|&&s| is_right_descent(diagram, &left, s))
        else {
            return (left, right);
        };
        let g = diagram.generator(s);
        left = mul_unchecked(&left, &g);
        right = mul_unchecked(&g, &right);
    }
}

/// Fully tabulated finite parabolic subgroup W_I.
///
/// Elements are indexed 0..order in canonical order: by length, then by
/// ShortLex reduced word. Index 0 is the identity. Descent sets and supports
/// are bitmasks over positions in `gens`.
#[derive(Debug, Clone)]
pub struct GroupTable {
    diagram: CoxeterDiagram,
    gens: Vec<Node>,
    elems: Vec<GroupElement>,
    index: HashMap<Vec<i64>, usize>,
    right: Vec<Vec<usize>>,
    left: Vec<Vec<usize>>,
    lengths: Vec<usize>,
    words: Vec<Vec<Node>>,
    rdesc: Vec<u64>,
    ldesc: Vec<u64>,
    inv: Vec<usize>,
    supp: Vec<u64>,
}

impl GroupTable {
    pub fn diagram(&self) -> &CoxeterDiagram {
        &self.diagram
    }

    pub fn gens(&self) -> &[Node] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elem(&self, i: usize) -> &GroupElement {
        &self.elems[i]
    }

    pub fn index_of(&self, w: &GroupElement) -> Option<usize> {
        self.index.get(w.key()).copied()
    }

    pub fn gen_pos(&self, s: Node) -> usize {
        self.gens.binary_search(&s).expect("not a generator of this table")
    }

    pub fn right_mul(&self, i: usize, s: Node) -> usize {
        self.right[i][self.gen_pos(s)]
    }

    pub fn left_mul(&self, i: usize, s: Node) -> usize {
        self.left[i][self.gen_pos(s)]
    }

    pub fn length(&self, i: usize) -> usize {
        self.lengths[i]
    }

    pub fn word(&self, i: usize) -> &[Node] {
        &self.words[i]
    }

    pub fn inv(&self, i: usize) -> usize {
        self.inv[i]
    }

    pub fn rdesc_mask(&self, i: usize) -> u64 {
        self.rdesc[i]
    }

    pub fn ldesc_mask(&self, i: usize) -> u64 {
        self.ldesc[i]
    }

    pub fn supp_mask(&self, i: usize) -> u64 {
        self.supp[i]
    }

    pub fn mask_of(&self, set: &BTreeSet<Node>) -> u64 {
        set.iter().map(|&s| 1u64 << self.gen_pos(s)).sum()
    }

    pub fn set_of(&self, mask: u64) -> BTreeSet<Node> {
        self.gens
            .iter()
            .enumerate()
            .filter(|(p, _)| mask & (1 << p) != 0)
            .map(|(_, &s)| s)
            .collect()
    }

    pub fn rdesc_set(&self, i: usize) -> BTreeSet<Node> {
        self.set_of(self.rdesc[i])
    }

    pub fn ldesc_set(&self, i: usize) -> BTreeSet<Node> {
        self.set_of(self.ldesc[i])
    }

    pub fn support_set(&self, i: usize) -> BTreeSet<Node> {
        self.set_of(self.supp[i])
    }

    /// Group product by walking the word of j on the right of i.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        let mut cur = i;
        for &s in self.word(j) {
            cur = self.right_mul(cur, s);
        }
        cur
    }

    /// pi_i . pi_j under pi_s pi_w = pi_{sw} if longer, else pi_w.
    pub fn pi_mul(&self, i: usize, j: usize) -> usize {
        let mut cur = j;
        for &s in self.word(i).iter().rev() {
            let cand = self.left_mul(cur, s);
            if self.lengths[cand] > self.lengths[cur] {
                cur = cand;
            }
        }
        cur
    }

    /// Indices of all w with D(w) equal to the given mask.
    pub fn descent_class_mask(&self, mask: u64) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.rdesc[i] == mask).collect()
    }

    pub fn index_of_longest(&self) -> usize {
        let full = (1u64 << self.gens.len()) - 1;
        let cls = self.descent_class_mask(full);
        debug_assert_eq!(cls.len(), 1);
        cls[0]
    }
}

/// Enumerates W_I by breadth-first closure under right multiplication,
/// then reorders canonically (length, ShortLex word).
pub fn enumerate_group(
    diagram: &CoxeterDiagram,
    i_set: &BTreeSet<Node>,
    guard: u128,
) -> Result<GroupTable> {
    let order = group_order_by_type(diagram, i_set)?;
    if order > guard {
        return Err(Error::GuardExceeded {
            what: format!("enumerating W_{:?}", i_set.iter().collect::<Vec<_>>()),
            required: order,
            guard,
        });
    }
    let gens: Vec<Node> = i_set.iter().copied().collect();
    let gen_elems: Vec<GroupElement> = gens.iter().map(|&s| diagram.generator(s)).collect();
    let id = diagram.identity();

    let mut elems = vec![id.clone()];
    let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
    index.insert(id.key().to_vec(), 0);
    let mut right: Vec<Vec<usize>> = Vec::new();
    let mut head = 0;
    while head < elems.len() {
        let cur = elems[head].clone();
        let mut row = Vec::with_capacity(gens.len());
        for g in &gen_elems {
            let prod = mul_unchecked(&cur, g);
            let k = prod.key().to_vec();
            let idx = match index.get(&k) {
                Some(&i) => i,
                None => {
                    let i = elems.len();
                    index.insert(k, i);
                    elems.push(prod);
                    i
                }
            };
            row.push(idx);
        }
        right.push(row);
        head += 1;
    }
    debug_assert_eq!(elems.len() as u128, order);

    let m = elems.len();
    // Lengths: BFS distance from the identity in the right-multiplication graph.
    let mut lengths = vec![usize::MAX; m];
    lengths[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for &j in &right[i] {
            if lengths[j] == usize::MAX {
                lengths[j] = lengths[i] + 1;
                queue.push_back(j);
            }
        }
    }
    // Left multiplication table.
    let mut left = vec![vec![0usize; gens.len()]; m];
    for (i, w) in elems.iter().enumerate() {
        for (p, g) in gen_elems.iter().enumerate() {
            let prod = mul_unchecked(g, w);
            left[i][p] = index[prod.key()];
        }
    }
    // Descent masks.
    let mut rdesc = vec![0u64; m];
    let mut ldesc = vec![0u64; m];
    for i in 0..m {
        for p in 0..gens.len() {
            if lengths[right[i][p]] < lengths[i] {
                rdesc[i] |= 1 << p;
            }
            if lengths[left[i][p]] < lengths[i] {
                ldesc[i] |= 1 << p;
            }
        }
    }
    // ShortLex words and supports, by increasing length.
    let mut by_len: Vec<usize> = (0..m).collect();
    by_len.sort_by_key(|&i| lengths[i]);
    let mut words: Vec<Vec<Node>> = vec![Vec::new(); m];
    let mut supp = vec![0u64; m];
    for &i in &by_len {
        if lengths[i] == 0 {
            continue;
        }
        let p = (0..gens.len())
            .find(|&p| ldesc[i] & (1 << p) != 0)
            .expect("non-identity element has a left descent");
        let shorter = left[i][p];
        let mut w = Vec::with_capacity(lengths[i]);
        w.push(gens[p]);
        w.extend_from_slice(&words[shorter]);
        words[i] = w;
        supp[i] = supp[shorter] | (1 << p);
    }
    // Inverses: walk the reversed word.
    let mut inv = vec![0usize; m];
    for i in 0..m {
        let mut cur = 0usize;
        for (p, _) in words[i]
            .iter()
            .rev()
            .map(|&s| (gens.binary_search(&s).unwrap(), s))
        {
            cur = right[cur][p];
        }
        inv[i] = cur;
    }

    // Canonical order: (length, word); remap every table through it.
    let mut perm: Vec<usize> = (0..m).collect();
    perm.sort_by(|&a, &b| {
        lengths[a]
            .cmp(&lengths[b])
            .then_with(|| words[a].cmp(&words[b]))
    });
    let mut rank = vec![0usize; m];
    for (new, &old) in perm.iter().enumerate() {
        rank[old] = new;
    }
    let remap_vec = |v: &[usize]| -> Vec<usize> { perm.iter().map(|&old| rank[v[old]]).collect() };
    let elems_new: Vec<GroupElement> = perm.iter().map(|&old| elems[old].clone()).collect();
    let mut index_new = HashMap::new();
    for (i, e) in elems_new.iter().enumerate() {
        index_new.insert(e.key().to_vec(), i);
    }
    let right_new: Vec<Vec<usize>> = perm
        .iter()
        .map(|&old| right[old].iter().map(|&j| rank[j]).collect())
        .collect();
    let left_new: Vec<Vec<usize>> = perm
        .iter()
        .map(|&old| left[old].iter().map(|&j| rank[j]).collect())
        .collect();

    Ok(GroupTable {
        diagram: diagram.clone(),
        gens,
        elems: elems_new,
        index: index_new,
        right: right_new,
        left: left_new,
        lengths: perm.iter().map(|&old| lengths[old]).collect(),
        words: perm.iter().map(|&old| words[old].clone()).collect(),
        rdesc: perm.iter().map(|&old| rdesc[old]).collect(),
        ldesc: perm.iter().map(|&old| ldesc[old]).collect(),
        inv: remap_vec(&inv),
        supp: perm.iter().map(|&old| supp[old]).collect(),
    })
}

/// All w in W_I with D(w) = J, plus the left-weak interval endpoints
/// w0(J) and w1(J). Every member is checked to lie in the interval.
pub fn descent_class(
    diagram: &CoxeterDiagram,
    i_set: &BTreeSet<Node>,
    j_set: &BTreeSet<Node>,
    guard: u128,
) -> Result<(Vec<GroupElement>, GroupElement, GroupElement)> {
    let table = enumerate_group(diagram, i_set, guard)?;
    let mask = table.mask_of(j_set);
    let members: Vec<GroupElement> = table
        .descent_class_mask(mask)
        .into_iter()
        .map(|i| table.elem(i).clone())
        .collect();
    let w0 = longest_element(diagram, j_set);
    // w1(J): the longest element whose descent set is contained in J.
    let w1_idx = (0..table.len())
        .filter(|&i| table.rdesc_mask(i) & !mask == 0)
        .max_by_key(|&i| table.length(i))
        .expect("identity always qualifies");
    let w1 = table.elem(w1_idx).clone();
    for w in &members {
        let lo = weak_leq_left(diagram, &w0, w)?;
        let hi = weak_leq_left(diagram, w, &w1)?;
        if !(lo && hi) {
            return Err(Error::Internal(
                "descent class member outside its weak-order interval".into(),
            ));
        }
    }
    Ok((members, w0, w1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CosetSide {
    Left,
    Right,
}

/// Minimal coset representatives inside W_I: for the right side the set
/// W^J = {w : D(w) subset of I minus J}; the left side inverts.
pub fn min_coset_reps(
    diagram: &CoxeterDiagram,
    i_set: &BTreeSet<Node>,
    j_set: &BTreeSet<Node>,
    side: CosetSide,
    guard: u128,
) -> Result<Vec<GroupElement>> {
    let table = enumerate_group(diagram, i_set, guard)?;
    let jmask = table.mask_of(j_set);
    let out = (0..table.len())
        .filter(|&i| {
            let mask = match side {
                CosetSide::Right => table.rdesc_mask(i),
                CosetSide::Left => table.ldesc_mask(i),
            };
            mask & jmask == 0
        })
        .map(|i| table.elem(i).clone())
        .collect();
    Ok(out)
}

/// Convenience: path diagram of type A_n with all parameters zero.
pub fn type_a_diagram(n: usize) -> CoxeterDiagram {
    let nodes: Vec<Node> = (0..n).collect();
    let edges: Vec<(Node, Node)> = (1..n).map(|i| (i - 1, i)).collect();
    let params = nodes.iter().map(|&s| (s, Param::zero())).collect();
    CoxeterDiagram::new(nodes, edges, params).expect("valid path diagram")
}

/// Star diagram of type D_n (n >= 4): path 0..n-2 plus node n-1 joined to
/// node n-3. All parameters zero.
pub fn type_d_diagram(n: usize) -> CoxeterDiagram {
    assert!(n >= 4);
    let nodes: Vec<Node> = (0..n).collect();
    let mut edges: Vec<(Node, Node)> = (1..n - 1).map(|i| (i - 1, i)).collect();
    edges.push((n - 3, n - 1));
    let params = nodes.iter().map(|&s| (s, Param::zero())).collect();
    CoxeterDiagram::new(nodes, edges, params).expect("valid D diagram")
}

/// E_n (n in 6..=8): path 0..n-2 plus node n-1 joined to node 2.
pub fn type_e_diagram(n: usize) -> CoxeterDiagram {
    assert!((6..=8).contains(&n));
    let nodes: Vec<Node> = (0..n).collect();
    let mut edges: Vec<(Node, Node)> = (1..n - 1).map(|i| (i - 1, i)).collect();
    edges.push((2, n - 1));
    let params = nodes.iter().map(|&s| (s, Param::zero())).collect();
    CoxeterDiagram::new(nodes, edges, params).expect("valid E diagram")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn full(d: &CoxeterDiagram) -> BTreeSet<Node> {
        d.node_set()
    }

    #[test]
    fn classification_and_orders() {
        let a3 = type_a_diagram(3);
        assert_eq!(group_order_by_type(&a3, &full(&a3)).unwrap(), 24);
        let d4 = type_d_diagram(4);
        assert_eq!(group_order_by_type(&d4, &full(&d4)).unwrap(), 192);
        let e6 = type_e_diagram(6);
        assert_eq!(group_order_by_type(&e6, &full(&e6)).unwrap(), 51840);
        let e7 = type_e_diagram(7);
        assert_eq!(group_order_by_type(&e7, &full(&e7)).unwrap(), 2903040);
        let e8 = type_e_diagram(8);
        assert_eq!(group_order_by_type(&e8, &full(&e8)).unwrap(), 696729600);
        let a2 = type_a_diagram(2);
        assert_eq!(group_order_by_type(&a2, &full(&a2)).unwrap(), 6);
        let d5 = type_d_diagram(5);
        assert_eq!(group_order_by_type(&d5, &full(&d5)).unwrap(), 1920);
    }

    #[test]
    fn cycle_is_rejected() {
        let nodes = vec![0, 1, 2];
        let edges = vec![(0, 1), (1, 2), (0, 2)];
        let params = nodes.iter().map(|&s| (s, Param::zero())).collect();
        let d = CoxeterDiagram::new(nodes, edges, params).unwrap();
        assert!(group_order_by_type(&d, &full(&d)).is_err());
    }

    #[test]
    fn enumeration_counts() {
        let a3 = type_a_diagram(3);
        assert_eq!(enumerate_group(&a3, &full(&a3), 60000).unwrap().len(), 24);
        let d4 = type_d_diagram(4);
        assert_eq!(enumerate_group(&d4, &full(&d4), 60000).unwrap().len(), 192);
        // two commuting generators
        let nodes = vec![0, 1];
        let params: BTreeMap<Node, Param> =
            nodes.iter().map(|&s| (s, Param::zero())).collect();
        let a1a1 = CoxeterDiagram::new(nodes, vec![], params).unwrap();
        assert_eq!(
            enumerate_group(&a1a1, &full(&a1a1), 60000).unwrap().len(),
            4
        );
    }

    #[test]
    fn guard_reports_refused_order() {
        let e7 = type_e_diagram(7);
        match enumerate_group(&e7, &full(&e7), 60000) {
            Err(Error::GuardExceeded { required, .. }) => assert_eq!(required, 2903040),
            other => panic!("expected guard refusal, got {other:?}"),
        }
    }

    #[test]
    fn basic_arithmetic() {
        let a2 = type_a_diagram(2);
        let s = a2.generator(0);
        assert!(multiply(&s, &s).unwrap().is_identity());
        let w0 = longest_element(&a2, &full(&a2));
        assert_eq!(length(&a2, &w0), 3);
        let a3 = type_a_diagram(3);
        let table = enumerate_group(&a3, &full(&a3), 60000).unwrap();
        let len1 = (0..table.len()).filter(|&i| table.length(i) == 1).count();
        assert_eq!(len1, 3);
    }

    #[test]
    fn descent_examples() {
        let a2 = type_a_diagram(2);
        assert!(right_descents(&a2, &a2.identity()).is_empty());
        let w0 = longest_element(&a2, &full(&a2));
        assert_eq!(right_descents(&a2, &w0), full(&a2));
        let table = enumerate_group(&a2, &full(&a2), 60000).unwrap();
        let j: BTreeSet<Node> = [0].into();
        let mask = table.mask_of(&j);
        assert_eq!(table.descent_class_mask(mask).len(), 2);
    }

    #[test]
    fn bruhat_and_weak() {
        let a2 = type_a_diagram(2);
        let s1 = a2.generator(0);
        let s2 = a2.generator(1);
        let s2s1 = multiply(&s2, &s1).unwrap();
        let s1s2 = multiply(&s1, &s2).unwrap();
        assert!(weak_leq_left(&a2, &s1, &s2s1).unwrap());
        assert!(!weak_leq_left(&a2, &s1, &s1s2).unwrap());
        let w0 = longest_element(&a2, &full(&a2));
        let table = enumerate_group(&a2, &full(&a2), 60000).unwrap();
        for i in 0..table.len() {
            assert!(bruhat_leq(&a2, &a2.identity(), table.elem(i)).unwrap());
            assert!(bruhat_leq(&a2, table.elem(i), &w0).unwrap());
        }
    }

    #[test]
    fn bruhat_is_partial_order_on_s4() {
        let a3 = type_a_diagram(3);
        let t = enumerate_group(&a3, &full(&a3), 60000).unwrap();
        let n = t.len();
        let mut leq = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                leq[i][j] = bruhat_leq(&a3, t.elem(i), t.elem(j)).unwrap();
            }
        }
        for i in 0..n {
            assert!(leq[i][i]);
            for j in 0..n {
                if i != j {
                    assert!(!(leq[i][j] && leq[j][i]));
                }
                for k in 0..n {
                    if leq[i][j] && leq[j][k] {
                        assert!(leq[i][k]);
                    }
                }
            }
        }
    }

    #[test]
    fn bruhat_independent_of_reduced_word() {
        let a3 = type_a_diagram(3);
        let t = enumerate_group(&a3, &full(&a3), 60000).unwrap();
        for j in 0..t.len() {
            let w = t.elem(j);
            let word1 = reduced_word(&a3, w);
            // a second reduced word: strip right descents instead
            let word2 = super::reduced_word_right_strip(&a3, w);
            assert_eq!(word1.len(), word2.len());
            assert_eq!(&evaluate_word(&a3, &word2), w);
            for i in 0..t.len() {
                assert_eq!(
                    bruhat_leq_with_word(&a3, t.elem(i), &word1),
                    bruhat_leq_with_word(&a3, t.elem(i), &word2),
                );
            }
        }
    }

    #[test]
    fn words_and_inverses() {
        let d4 = type_d_diagram(4);
        let t = enumerate_group(&d4, &full(&d4), 60000).unwrap();
        for i in 0..t.len() {
            let w = t.elem(i);
            let word = t.word(i);
            assert_eq!(word.len(), t.length(i));
            assert_eq!(&evaluate_word(&d4, word), w);
            assert_eq!(length(&d4, &inverse(&d4, w)), t.length(i));
            assert_eq!(t.elem(t.inv(i)), &inverse(&d4, w));
            assert_eq!(t.ldesc_set(i), left_descents(&d4, w));
            assert_eq!(t.rdesc_set(i), right_descents(&d4, w));
        }
    }

    #[test]
    fn descent_classes_partition() {
        let a3 = type_a_diagram(3);
        let t = enumerate_group(&a3, &full(&a3), 60000).unwrap();
        let mut total = 0;
        for mask in 0u64..(1 << 3) {
            let cls = t.descent_class_mask(mask);
            assert!(!cls.is_empty());
            total += cls.len();
        }
        assert_eq!(total, t.len());
    }

    #[test]
    fn descent_class_interval() {
        let a3 = type_a_diagram(3);
        let j: BTreeSet<Node> = [0, 2].into();
        let (members, w0j, w1j) = descent_class(&a3, &full(&a3), &j, 60000).unwrap();
        assert!(members.contains(&w0j));
        assert!(members.contains(&w1j));
        let empty: BTreeSet<Node> = BTreeSet::new();
        let (only_id, _, _) = descent_class(&a3, &full(&a3), &empty, 60000).unwrap();
        assert_eq!(only_id, vec![a3.identity()]);
        let (only_w0, _, _) = descent_class(&a3, &full(&a3), &full(&a3), 60000).unwrap();
        assert_eq!(only_w0, vec![longest_element(&a3, &full(&a3))]);
    }

    #[test]
    fn coset_reps() {
        let a2 = type_a_diagram(2);
        let j: BTreeSet<Node> = [0].into();
        let reps =
            min_coset_reps(&a2, &full(&a2), &j, CosetSide::Right, 60000).unwrap();
        assert_eq!(reps.len(), 3);
        let all = min_coset_reps(
            &a2,
            &full(&a2),
            &BTreeSet::new(),
            CosetSide::Right,
            60000,
        )
        .unwrap();
        assert_eq!(all.len(), 6);
        let id_only =
            min_coset_reps(&a2, &full(&a2), &full(&a2), CosetSide::Right, 60000).unwrap();
        assert_eq!(id_only, vec![a2.identity()]);
    }

    #[test]
    fn parabolic_decomposition_property() {
        let a3 = type_a_diagram(3);
        let t = enumerate_group(&a3, &full(&a3), 60000).unwrap();
        let j: BTreeSet<Node> = [0, 1].into();
        for i in 0..t.len() {
            let w = t.elem(i);
            let (wj, jw) = parabolic_decompose(&a3, w, &j);
            assert_eq!(&multiply(&wj, &jw).unwrap(), w);
            assert_eq!(
                length(&a3, w),
                length(&a3, &wj) + length(&a3, &jw)
            );
            // wj minimal in its coset, jw inside W_J
            assert!(right_descents(&a3, &wj).is_disjoint(&j));
            assert!(support(&a3, &jw).is_subset(&j));
        }
    }

    #[test]
    fn pi_mul_on_table() {
        let a2 = type_a_diagram(2);
        let t = enumerate_group(&a2, &full(&a2), 60000).unwrap();
        let s1 = t.index_of(&a2.generator(0)).unwrap();
        assert_eq!(t.pi_mul(s1, s1), s1);
        let w0 = t.index_of_longest();
        for i in 0..t.len() {
            assert_eq!(t.pi_mul(w0, i), w0);
        }
        let s2s1 = t.mul(t.index_of(&a2.generator(1)).unwrap(), s1);
        assert_eq!(t.pi_mul(s1, s2s1), w0);
    }
}
