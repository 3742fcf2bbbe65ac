//! Module theory of the 0-Hecke algebra H_S(0) of a finite simply-laced
//! diagram: pi products, projective modules P_I, quotients Q_{I,J}, Cartan
//! numbers, radicals, socles, quivers, and induction/restriction.
//!
//! Projective and Q realizations are partial-map modules: every generator
//! sends each basis vector to a basis vector or to zero. Hom spaces into
//! one-dimensional simples then reduce to union-find over the basis, which
//! keeps top computations cheap even for large descent classes.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::coxeter::{
    self, enumerate_group, CoxeterDiagram, GroupElement, GroupTable, Node,
};
use crate::error::{Error, Result};
use crate::linalg::{QMat, RowSpace, Q};

/// pi_u . pi_v via the letterwise rule pi_s pi_w = pi_{sw} when longer.
pub fn pi_product(
    diagram: &CoxeterDiagram,
    u: &GroupElement,
    v: &GroupElement,
) -> GroupElement {
    let word = coxeter::reduced_word(diagram, u);
    let mut cur = v.clone();
    let mut cur_inv = coxeter::inverse(diagram, v);
    for &s in word.iter().rev() {
        // s is a left ascent of cur exactly when s is not a right descent
        // of its inverse
        if !coxeter::is_right_descent(diagram, &cur_inv, s) {
            let g = diagram.generator(s);
            cur = coxeter::multiply(&g, &cur).expect("same diagram");
            cur_inv = coxeter::multiply(&cur_inv, &g).expect("same diagram");
        }
    }
    cur
}

/// pibar_w = sum over u <= w of (-1)^{l(w)-l(u)} pi_u, in canonical order.
pub fn pibar_expand(
    diagram: &CoxeterDiagram,
    s_set: &BTreeSet<Node>,
    w: &GroupElement,
    guard: u128,
) -> Result<Vec<(i64, GroupElement)>> {
    let table = enumerate_group(diagram, s_set, guard)?;
    let lw = coxeter::length(diagram, w);
    let word = coxeter::reduced_word(diagram, w);
    let mut out = Vec::new();
    for i in 0..table.len() {
        let u = table.elem(i);
        if coxeter::bruhat_leq_with_word(diagram, u, &word) {
            let sign = if (lw - table.length(i)) % 2 == 0 { 1 } else { -1 };
            out.push((sign, u.clone()));
        }
    }
    Ok(out)
}

/// The 0-Hecke algebra of W_I, backed by a full group table.
pub struct ZeroHeckeAlgebra {
    table: GroupTable,
}

impl ZeroHeckeAlgebra {
    pub fn new(diagram: &CoxeterDiagram, i_set: &BTreeSet<Node>, guard: u128) -> Result<Self> {
        Ok(ZeroHeckeAlgebra {
            table: enumerate_group(diagram, i_set, guard)?,
        })
    }

    pub fn table(&self) -> &GroupTable {
        &self.table
    }

    pub fn dim(&self) -> usize {
        self.table.len()
    }

    pub fn gens(&self) -> &[Node] {
        self.table.gens()
    }

    /// c_{I,J} = #{w : D(w^{-1}) = I, D(w) = J}.
    pub fn cartan_number(&self, i_set: &BTreeSet<Node>, j_set: &BTreeSet<Node>) -> u64 {
        let im = self.table.mask_of(i_set);
        let jm = self.table.mask_of(j_set);
        (0..self.table.len())
            .filter(|&w| self.table.ldesc_mask(w) == im && self.table.rdesc_mask(w) == jm)
            .count() as u64
    }

    /// Full Cartan matrix over all subsets in mask order.
    pub fn cartan_matrix(&self) -> Vec<Vec<u64>> {
        let k = self.gens().len();
        let mut m = vec![vec![0u64; 1 << k]; 1 << k];
        for w in 0..self.table.len() {
            let i = self.table.ldesc_mask(w) as usize;
            let j = self.table.rdesc_mask(w) as usize;
            m[i][j] += 1;
        }
        m
    }

    /// Basis of rad H(0) as coefficient vectors over the canonical element
    /// order: null space of the trace Gram matrix G[u][v] = tr L_{pi_u pi_v}
    /// (valid in characteristic zero).
    pub fn radical_basis(&self, guard: u128) -> Result<Vec<Vec<Q>>> {
        let n = self.table.len();
        if n as u128 > guard {
            return Err(Error::GuardExceeded {
                what: "radical of the 0-Hecke algebra".into(),
                required: n as u128,
                guard,
            });
        }
        // trace of left pi-multiplication by each basis element
        let mut fix = vec![0i64; n];
        for p in 0..n {
            fix[p] = (0..n).filter(|&w| self.table.pi_mul(p, w) == w).count() as i64;
        }
        let mut gram = QMat::zeros(n, n);
        for u in 0..n {
            for v in 0..n {
                gram[(u, v)] = crate::linalg::q_from_i64(fix[self.table.pi_mul(u, v)]);
            }
        }
        Ok(gram.null_space())
    }
}

/// Module whose generators act by partial maps on a labeled basis.
#[derive(Debug, Clone)]
pub struct MapModule {
    pub diagram: CoxeterDiagram,
    pub gens: Vec<Node>,
    pub labels: Vec<String>,
    pub maps: BTreeMap<Node, Vec<Option<usize>>>,
}

impl MapModule {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Checks idempotency and the braid/commutation relations.
    pub fn validate(&self) -> Result<()> {
        let comp = |a: &[Option<usize>], b: &[Option<usize>]| -> Vec<Option<usize>> {
            (0..self.dim()).map(|i| b[i].and_then(|j| a[j])).collect()
        };
        for (&s, ms) in &self.maps {
            if comp(ms, ms) != *ms {
                return Err(Error::Internal(format!("pi_{s} is not idempotent")));
            }
            for (&t, mt) in &self.maps {
                if t <= s {
                    continue;
                }
                let (st, ts) = (comp(ms, mt), comp(mt, ms));
                if self.diagram.adjacent(s, t) {
                    let sts = comp(ms, &ts);
                    let tst = comp(mt, &st);
                    if sts != tst {
                        return Err(Error::Internal(format!(
                            "braid relation fails for {s},{t}"
                        )));
                    }
                } else if st != ts {
                    return Err(Error::Internal(format!(
                        "commutation fails for {s},{t}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Forget the action of generators outside j_set.
    pub fn restrict(&self, j_set: &BTreeSet<Node>) -> MapModule {
        MapModule {
            diagram: self.diagram.clone(),
            gens: self.gens.iter().copied().filter(|s| j_set.contains(s)).collect(),
            labels: self.labels.clone(),
            maps: self
                .maps
                .iter()
                .filter(|(s, _)| j_set.contains(s))
                .map(|(&s, m)| (s, m.clone()))
                .collect(),
        }
    }

    /// dim Hom(M, C_K) over the algebra on the module's generator set:
    /// functionals f with f(pi_s m) = [s in K] f(m). Equality and
    /// zero-forcing constraints are solved by union-find.
    pub fn hom_to_simple(&self, k_set: &BTreeSet<Node>) -> usize {
        let n = self.dim();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        let mut zero = vec![false; n];
        let mut zero_hits = Vec::new();
        for &s in &self.gens {
            let chi = k_set.contains(&s);
            let map = &self.maps[&s];
            for b in 0..n {
                match (map[b], chi) {
                    (None, true) => zero_hits.push(b),
                    (None, false) => {}
                    (Some(c), true) => {
                        if c != b {
                            let (rb, rc) = (find(&mut parent, b), find(&mut parent, c));
                            parent[rb] = rc;
                        }
                    }
                    (Some(c), false) => zero_hits.push(c),
                }
            }
        }
        for b in zero_hits {
            let r = find(&mut parent, b);
            zero[r] = true;
        }
        // a zero flag anywhere in a class kills the class
        let mut killed = vec![false; n];
        for i in 0..n {
            let r = find(&mut parent, i);
            if zero[r] {
                killed[r] = true;
            }
        }
        (0..n)
            .filter(|&i| find(&mut parent, i) == i && !killed[i])
            .count()
    }

    /// Multiset of simples in the top, as (K, multiplicity), K in mask order
    /// over the module's generator set.
    pub fn top_multiset(&self) -> Vec<(BTreeSet<Node>, usize)> {
        subsets_of(&self.gens)
            .into_iter()
            .filter_map(|k| {
                let m = self.hom_to_simple(&k);
                (m > 0).then_some((k, m))
            })
            .collect()
    }

    pub fn to_dense(&self) -> DenseModule {
        let n = self.dim();
        let actions = self
            .maps
            .iter()
            .map(|(&s, map)| {
                let mut a = QMat::zeros(n, n);
                for (src, &img) in map.iter().enumerate() {
                    if let Some(dst) = img {
                        a[(dst, src)] = Q::one();
                    }
                }
                (s, a)
            })
            .collect();
        DenseModule {
            diagram: self.diagram.clone(),
            gens: self.gens.clone(),
            labels: self.labels.clone(),
            actions,
        }
    }
}

pub fn subsets_of(gens: &[Node]) -> Vec<BTreeSet<Node>> {
    (0u64..(1 << gens.len()))
        .map(|mask| {
            gens.iter()
                .enumerate()
                .filter(|(p, _)| mask & (1 << p) != 0)
                .map(|(_, &s)| s)
                .collect()
        })
        .collect()
}

/// P_J over H_I(0): basis is the descent class of J inside W_I, with
/// pi_s b_w = b_w if s is a left descent of w, b_{sw} if D(sw) = J,
/// and 0 otherwise.
pub fn projective_module(
    diagram: &CoxeterDiagram,
    i_set: &BTreeSet<Node>,
    j_set: &BTreeSet<Node>,
    guard: u128,
) -> Result<MapModule> {
    let table = enumerate_group(diagram, i_set, guard)?;
    projective_module_from_table(&table, j_set)
}

pub fn projective_module_from_table(
    table: &GroupTable,
    j_set: &BTreeSet<Node>,
) -> Result<MapModule> {
    let jmask = table.mask_of(j_set);
    let class = table.descent_class_mask(jmask);
    let pos: BTreeMap<usize, usize> = class.iter().enumerate().map(|(p, &w)| (w, p)).collect();
    let mut maps = BTreeMap::new();
    for &s in table.gens() {
        let p = table.gen_pos(s);
        let map = class
            .iter()
            .map(|&w| {
                if table.ldesc_mask(w) & (1 << p) != 0 {
                    Some(pos[&w])
                } else {
                    let sw = table.left_mul(w, s);
                    pos.get(&sw).copied()
                }
            })
            .collect();
        maps.insert(s, map);
    }
    let module = MapModule {
        diagram: table.diagram().clone(),
        gens: table.gens().to_vec(),
        labels: class
            .iter()
            .map(|&w| format!("{:?}", table.word(w)))
            .collect(),
        maps,
    };
    module.validate()?;
    Ok(module)
}

/// Q_{I,J}^S = P_I^S / N_{I,J}^S for I subset J subset S: basis
/// {w in W_J : D(w) = I}; generators outside J act by zero, generators in J
/// act as in P_I^J.
pub fn q_module(
    diagram: &CoxeterDiagram,
    s_set: &BTreeSet<Node>,
    i_set: &BTreeSet<Node>,
    j_set: &BTreeSet<Node>,
    guard: u128,
) -> Result<MapModule> {
    if !i_set.is_subset(j_set) || !j_set.is_subset(s_set) {
        return Err(Error::InvalidLabel(
            "q_module needs I subset of J subset of S".into(),
        ));
    }
    let inner = projective_module(diagram, j_set, i_set, guard)?;
    let mut maps = inner.maps;
    let n = inner.labels.len();
    for &s in s_set {
        maps.entry(s).or_insert_with(|| vec![None; n]);
    }
    let module = MapModule {
        diagram: diagram.clone(),
        gens: s_set.iter().copied().collect(),
        labels: inner.labels,
        maps,
    };
    module.validate()?;
    Ok(module)
}

/// Module with exact-rational generator actions; columns are source basis
/// vectors.
#[derive(Debug, Clone)]
pub struct DenseModule {
    pub diagram: CoxeterDiagram,
    pub gens: Vec<Node>,
    pub labels: Vec<String>,
    pub actions: BTreeMap<Node, QMat>,
}

impl DenseModule {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn validate(&self) -> Result<()> {
        for (&s, a) in &self.actions {
            if a.mul(a) != *a {
                return Err(Error::Internal(format!("pi_{s} is not idempotent")));
            }
            for (&t, b) in &self.actions {
                if t <= s {
                    continue;
                }
                if self.diagram.adjacent(s, t) {
                    let aba = a.mul(&b.mul(a));
                    let bab = b.mul(&a.mul(b));
                    if aba != bab {
                        return Err(Error::Internal(format!(
                            "braid relation fails for {s},{t}"
                        )));
                    }
                } else if a.mul(b) != b.mul(a) {
                    return Err(Error::Internal(format!(
                        "commutation fails for {s},{t}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Matrix of pi_w on this module, multiplying generator actions along a
    /// reduced word.
    pub fn act_word(&self, word: &[Node]) -> QMat {
        let mut m = QMat::identity(self.dim());
        for &s in word {
            m = self.actions[&s].mul(&m);
        }
        m
    }

    /// dim Hom(M, C_K): solutions of f(pi_s m) = [s in K] f(m), i.e. the
    /// null space of the stacked (A_s^T - chi I).
    pub fn hom_to_simple(&self, k_set: &BTreeSet<Node>) -> usize {
        let n = self.dim();
        if n == 0 {
            return 0;
        }
        let mut rows = Vec::new();
        for &s in &self.gens {
            let a = &self.actions[&s];
            let chi = k_set.contains(&s);
            for j in 0..n {
                // row j of A^T - chi I is column j of A minus chi e_j
                let mut row: Vec<Q> = (0..n).map(|i| a[(i, j)].clone()).collect();
                if chi {
                    row[j] -= Q::one();
                }
                rows.push(row);
            }
        }
        let stacked = QMat::from_rows(rows);
        n - stacked.rank()
    }

    pub fn top_multiset(&self) -> Vec<(BTreeSet<Node>, usize)> {
        subsets_of(&self.gens)
            .into_iter()
            .filter_map(|k| {
                let m = self.hom_to_simple(&k);
                (m > 0).then_some((k, m))
            })
            .collect()
    }

    /// rad(M) = rad(A) M, as an echelon subspace.
    pub fn radical_subspace(&self, alg: &ZeroHeckeAlgebra, guard: u128) -> Result<RowSpace> {
        let rad = alg.radical_basis(guard)?;
        let table = alg.table();
        // matrices of pi_w for every w, built along table words
        let mut acts: Vec<QMat> = Vec::with_capacity(table.len());
        for w in 0..table.len() {
            acts.push(self.act_word(table.word(w)));
        }
        let n = self.dim();
        let mut span = RowSpace::new();
        for x in &rad {
            let mut mat = QMat::zeros(n, n);
            for (w, c) in x.iter().enumerate() {
                if !c.is_zero() {
                    for i in 0..n {
                        for j in 0..n {
                            let add = c * &acts[w][(i, j)];
                            mat[(i, j)] += add;
                        }
                    }
                }
            }
            for j in 0..n {
                let col: Vec<Q> = (0..n).map(|i| mat[(i, j)].clone()).collect();
                span.insert(&col);
            }
        }
        Ok(span)
    }

    /// Induced module on an invariant subspace.
    pub fn submodule(&self, space: &RowSpace) -> Result<DenseModule> {
        let k = space.dim();
        let mut actions = BTreeMap::new();
        for (&s, a) in &self.actions {
            let mut m = QMat::zeros(k, k);
            for (j, b) in space.basis().iter().enumerate() {
                let img = a.apply(b);
                let coords = coordinates(space, &img).ok_or_else(|| {
                    Error::Internal("subspace is not invariant".into())
                })?;
                for (i, c) in coords.into_iter().enumerate() {
                    m[(i, j)] = c;
                }
            }
            actions.insert(s, m);
        }
        Ok(DenseModule {
            diagram: self.diagram.clone(),
            gens: self.gens.clone(),
            labels: (0..k).map(|i| format!("u{i}")).collect(),
            actions,
        })
    }

    /// Induced module on the quotient by an invariant subspace; coordinates
    /// are the non-lead positions of the echelon subspace.
    pub fn quotient(&self, space: &RowSpace) -> DenseModule {
        let n = self.dim();
        let leads: BTreeSet<usize> = space
            .basis()
            .iter()
            .map(|r| r.iter().position(|x| !x.is_zero()).unwrap())
            .collect();
        let free: Vec<usize> = (0..n).filter(|i| !leads.contains(i)).collect();
        let k = free.len();
        let mut actions = BTreeMap::new();
        for (&s, a) in &self.actions {
            let mut m = QMat::zeros(k, k);
            for (jq, &j) in free.iter().enumerate() {
                let mut v = vec![Q::zero(); n];
                v[j] = Q::one();
                let img = space.reduce(&a.apply(&v));
                for (iq, &i) in free.iter().enumerate() {
                    m[(iq, jq)] = img[i].clone();
                }
            }
            actions.insert(s, m);
        }
        DenseModule {
            diagram: self.diagram.clone(),
            gens: self.gens.clone(),
            labels: free.iter().map(|&i| format!("q{i}")).collect(),
            actions,
        }
    }

    /// soc(M) = {m : x m = 0 for every x in rad A}, as a submodule.
    pub fn socle_subspace(&self, alg: &ZeroHeckeAlgebra, guard: u128) -> Result<RowSpace> {
        let rad = alg.radical_basis(guard)?;
        let table = alg.table();
        let mut acts: Vec<QMat> = Vec::with_capacity(table.len());
        for w in 0..table.len() {
            acts.push(self.act_word(table.word(w)));
        }
        let n = self.dim();
        let mut rows = Vec::new();
        for x in &rad {
            let mut mat = QMat::zeros(n, n);
            for (w, c) in x.iter().enumerate() {
                if !c.is_zero() {
                    for i in 0..n {
                        for j in 0..n {
                            let add = c * &acts[w][(i, j)];
                            mat[(i, j)] += add;
                        }
                    }
                }
            }
            for i in 0..n {
                rows.push(mat.row(i).to_vec());
            }
        }
        let mut out = RowSpace::new();
        if rows.is_empty() {
            for i in 0..n {
                let mut v = vec![Q::zero(); n];
                v[i] = Q::one();
                out.insert(&v);
            }
            return Ok(out);
        }
        for v in QMat::from_rows(rows).null_space() {
            out.insert(&v);
        }
        Ok(out)
    }

    /// Multiset of all composition factors via iterated radicals.
    pub fn composition_factors(
        &self,
        alg: &ZeroHeckeAlgebra,
        guard: u128,
    ) -> Result<BTreeMap<BTreeSet<Node>, usize>> {
        let mut out: BTreeMap<BTreeSet<Node>, usize> = BTreeMap::new();
        let mut cur = self.clone();
        while cur.dim() > 0 {
            for (k, m) in cur.top_multiset() {
                *out.entry(k).or_default() += m;
            }
            let rad = cur.radical_subspace(alg, guard)?;
            if rad.dim() == cur.dim() {
                return Err(Error::Internal("radical equals the module".into()));
            }
            cur = cur.submodule(&rad)?;
        }
        Ok(out)
    }
}

fn coordinates(space: &RowSpace, v: &[Q]) -> Option<Vec<Q>> {
    // echelon basis rows have pairwise distinct unit leads, and each row is
    // reduced against the others, so coordinates read off at the leads
    let mut v = v.to_vec();
    let mut coords = Vec::with_capacity(space.dim());
    for row in space.basis() {
        let lead = row.iter().position(|x| !x.is_zero()).unwrap();
        let c = v[lead].clone();
        if !c.is_zero() {
            for (x, r) in v.iter_mut().zip(row) {
                *x -= &c * r;
            }
        }
        coords.push(c);
    }
    v.iter().all(|x| x.is_zero()).then_some(coords)
}

/// Directed multigraph on labeled vertices; arrows carry multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver<V> {
    pub vertices: Vec<V>,
    pub arrows: Vec<(usize, usize, usize)>,
}

impl<V: Clone + Ord> Quiver<V> {
    pub fn is_loopless(&self) -> bool {
        self.arrows.iter().all(|&(a, b, _)| a != b)
    }

    /// Loopless tensor product: vertices are pairs; an arrow moves exactly
    /// one coordinate along an arrow of its factor.
    pub fn tensor<W: Clone + Ord>(&self, other: &Quiver<W>) -> Quiver<(V, W)> {
        let mut vertices = Vec::new();
        let mut pos = BTreeMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            for (j, w) in other.vertices.iter().enumerate() {
                pos.insert((i, j), vertices.len());
                vertices.push((v.clone(), w.clone()));
            }
        }
        let mut arrows = Vec::new();
        for &(a, b, m) in &self.arrows {
            for j in 0..other.vertices.len() {
                arrows.push((pos[&(a, j)], pos[&(b, j)], m));
            }
        }
        for &(a, b, m) in &other.arrows {
            for i in 0..self.vertices.len() {
                arrows.push((pos[&(i, a)], pos[&(i, b)], m));
            }
        }
        arrows.sort();
        Quiver { vertices, arrows }
    }

    pub fn map<W: Clone + Ord>(&self, f: impl Fn(&V) -> W) -> Quiver<W> {
        Quiver {
            vertices: self.vertices.iter().map(&f).collect(),
            arrows: self.arrows.clone(),
        }
    }

    /// Disjoint union with another quiver.
    pub fn disjoint_union(&self, other: &Quiver<V>) -> Quiver<V> {
        let off = self.vertices.len();
        let mut vertices = self.vertices.clone();
        vertices.extend(other.vertices.iter().cloned());
        let mut arrows = self.arrows.clone();
        arrows.extend(other.arrows.iter().map(|&(a, b, m)| (a + off, b + off, m)));
        Quiver { vertices, arrows }
    }

    /// Undirected connected components, as sorted vertex index lists.
    pub fn undirected_components(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut adj = vec![Vec::new(); n];
        for &(a, b, _) in &self.arrows {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut head = 0;
            while head < comp.len() {
                let v = comp[head];
                head += 1;
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

/// Quiver of H_S(0): per connected component, arrows I -> J count C_J in
/// rad(P_I)/rad^2(P_I); the full quiver is the loopless tensor product over
/// components.
pub fn zero_hecke_quiver(
    diagram: &CoxeterDiagram,
    s_set: &BTreeSet<Node>,
    guard: u128,
) -> Result<Quiver<BTreeSet<Node>>> {
    let comps = diagram.components(s_set);
    let mut acc: Option<Quiver<BTreeSet<Node>>> = None;
    for comp in &comps {
        let q = component_quiver(diagram, comp, guard)?;
        acc = Some(match acc {
            None => q,
            Some(prev) => prev
                .tensor(&q)
                .map(|(a, b)| a.union(b).copied().collect()),
        });
    }
    Ok(acc.unwrap_or(Quiver {
        vertices: vec![BTreeSet::new()],
        arrows: vec![],
    }))
}

fn component_quiver(
    diagram: &CoxeterDiagram,
    comp: &BTreeSet<Node>,
    guard: u128,
) -> Result<Quiver<BTreeSet<Node>>> {
    let alg = ZeroHeckeAlgebra::new(diagram, comp, guard)?;
    let vertices = subsets_of(alg.gens());
    let index: BTreeMap<&BTreeSet<Node>, usize> =
        vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut arrows = Vec::new();
    for (i, iset) in vertices.iter().enumerate() {
        let p = projective_module_from_table(alg.table(), iset)?.to_dense();
        let rad1 = p.radical_subspace(&alg, guard)?;
        let m1 = p.submodule(&rad1)?;
        let rad2 = m1.radical_subspace(&alg, guard)?;
        let layer = m1.quotient(&rad2);
        for (j_set, mult) in layer.top_multiset() {
            arrows.push((i, index[&j_set], mult));
        }
    }
    arrows.sort();
    let q = Quiver { vertices, arrows };
    if !q.is_loopless() {
        return Err(Error::Internal("0-Hecke quiver has a loop".into()));
    }
    Ok(q)
}

/// P_I^J induced to H_S(0): sum over K subset of S minus J of P_{I union K}.
pub fn induce_p0(
    s_set: &BTreeSet<Node>,
    j_set: &BTreeSet<Node>,
    i_set: &BTreeSet<Node>,
) -> Result<Vec<BTreeSet<Node>>> {
    if !i_set.is_subset(j_set) || !j_set.is_subset(s_set) {
        return Err(Error::InvalidLabel("need I subset J subset S".into()));
    }
    let rest: Vec<Node> = s_set.difference(j_set).copied().collect();
    let mut out: Vec<BTreeSet<Node>> = subsets_of(&rest)
        .into_iter()
        .map(|k| i_set.union(&k).copied().collect())
        .collect();
    out.sort();
    Ok(out)
}

/// C_I^J induced to H_S(0): sum over z with D(z^{-1}) subset of S minus J of
/// C_{D(wz)}, where w is the longest element of W_I.
pub fn induce_c0(
    diagram: &CoxeterDiagram,
    s_set: &BTreeSet<Node>,
    j_set: &BTreeSet<Node>,
    i_set: &BTreeSet<Node>,
    guard: u128,
) -> Result<Vec<BTreeSet<Node>>> {
    if !i_set.is_subset(j_set) || !j_set.is_subset(s_set) {
        return Err(Error::InvalidLabel("need I subset J subset S".into()));
    }
    let table = enumerate_group(diagram, s_set, guard)?;
    let jmask = table.mask_of(j_set);
    let w = table
        .index_of(&coxeter::longest_element(diagram, i_set))
        .expect("w0(I) lies in W_S");
    let mut out = Vec::new();
    for z in 0..table.len() {
        if table.ldesc_mask(z) & jmask == 0 {
            let wz = table.mul(w, z);
            out.push(table.rdesc_set(wz));
        }
    }
    out.sort();
    Ok(out)
}

/// C_K^S restricted to H_J(0): exactly C_{J intersect K}.
pub fn restrict_c0(j_set: &BTreeSet<Node>, k_set: &BTreeSet<Node>) -> BTreeSet<Node> {
    j_set.intersection(k_set).copied().collect()
}

/// P_K^S restricted to H_J(0): build the realization, forget generators
/// outside J, and read the projective summands off the top. The dimension
/// bookkeeping against the summand list is asserted.
pub fn restrict_p0(
    diagram: &CoxeterDiagram,
    s_set: &BTreeSet<Node>,
    j_set: &BTreeSet<Node>,
    k_set: &BTreeSet<Node>,
    guard: u128,
) -> Result<Vec<BTreeSet<Node>>> {
    if !j_set.is_subset(s_set) || !k_set.is_subset(s_set) {
        return Err(Error::InvalidLabel("need J, K subsets of S".into()));
    }
    let table = enumerate_group(diagram, s_set, guard)?;
    let p = projective_module_from_table(&table, k_set)?;
    let res = p.restrict(j_set);
    let mut out = Vec::new();
    let mut dim_sum = 0usize;
    let sub = diagram.induced(j_set);
    for (k_prime, mult) in res.top_multiset() {
        let class = descent_class_size(&sub, &k_prime, guard)?;
        dim_sum += class * mult;
        for _ in 0..mult {
            out.push(k_prime.clone());
        }
    }
    if dim_sum != p.dim() {
        return Err(Error::Internal(
            "restricted projective does not decompose into projectives".into(),
        ));
    }
    out.sort();
    Ok(out)
}

fn descent_class_size(
    diagram: &CoxeterDiagram,
    j_set: &BTreeSet<Node>,
    guard: u128,
) -> Result<usize> {
    let table = enumerate_group(diagram, &diagram.node_set(), guard)?;
    Ok(table.descent_class_mask(table.mask_of(j_set)).len())
}
