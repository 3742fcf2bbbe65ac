//! Partitions, compositions, the descent-set bijection, hook-length counts,
//! Littlewood-Richardson coefficients, and shuffle/split combinatorics for
//! the symmetric-group (type A) side of the theory.

use std::collections::BTreeSet;

use num_traits::One;

use crate::coxeter::{self, Node};
use crate::error::{Error, Result};
use crate::linalg::{QMat, Q};
use crate::zerohecke;

/// Weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidLabel("partition with a zero part".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidLabel(
                "partition parts must be weakly decreasing".into(),
            ));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn single_row(n: usize) -> Self {
        if n == 0 {
            Partition::empty()
        } else {
            Partition(vec![n])
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_single_row(&self) -> bool {
        self.0.len() <= 1
    }

    /// Does self contain mu cellwise?
    pub fn contains(&self, mu: &Partition) -> bool {
        mu.0.len() <= self.0.len() && mu.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    pub fn all_of(n: usize) -> Vec<Partition> {
        fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=n.min(max)).rev() {
                cur.push(p);
                go(n - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n.max(1), &mut Vec::new(), &mut out);
        out
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// Positive parts in any order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidLabel("composition with a zero part".into()));
        }
        Ok(Composition(parts))
    }

    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Descent set {a1, a1+a2, ...} as 1-based values inside [n-1].
    pub fn descent_values(&self) -> BTreeSet<usize> {
        let n = self.size();
        let mut out = BTreeSet::new();
        let mut acc = 0;
        for &p in &self.0 {
            acc += p;
            if acc < n {
                out.insert(acc);
            }
        }
        out
    }

    /// Descent set as 0-based node ids of the A_{n-1} path diagram
    /// (value d corresponds to node d-1).
    pub fn descent_nodes(&self) -> BTreeSet<Node> {
        self.descent_values().into_iter().map(|d| d - 1).collect()
    }

    /// Inverse of the descent bijection: composition of n with the given
    /// 0-based descent node set.
    pub fn from_descent_nodes(set: &BTreeSet<Node>, n: usize) -> Result<Self> {
        if n == 0 {
            if set.is_empty() {
                return Ok(Composition::empty());
            }
            return Err(Error::InvalidLabel("descents of the empty word".into()));
        }
        if set.iter().any(|&d| d + 1 >= n) {
            return Err(Error::InvalidLabel(format!(
                "descent node out of range for size {n}"
            )));
        }
        let mut parts = Vec::new();
        let mut prev = 0;
        for &d in set {
            parts.push(d + 1 - prev);
            prev = d + 1;
        }
        parts.push(n - prev);
        Composition::new(parts)
    }

    /// Concatenation (a1..ak, b1..bl).
    pub fn concat(&self, other: &Composition) -> Composition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Composition(parts)
    }

    /// Near concatenation (a1..a_{k-1}, a_k + b_1, b2..bl).
    pub fn near_concat(&self, other: &Composition) -> Composition {
        if self.is_empty() {
            return other.clone();
        }
        if other.is_empty() {
            return self.clone();
        }
        let mut parts = self.0.clone();
        *parts.last_mut().unwrap() += other.0[0];
        parts.extend_from_slice(&other.0[1..]);
        Composition(parts)
    }

    pub fn all_of(n: usize) -> Vec<Composition> {
        if n == 0 {
            return vec![Composition::empty()];
        }
        let mut out = Vec::new();
        for mask in 0u64..(1 << (n - 1)) {
            let set: BTreeSet<Node> =
                (0..n - 1).filter(|&d| mask & (1 << d) != 0).collect();
            out.push(Composition::from_descent_nodes(&set, n).unwrap());
        }
        out.sort();
        out
    }
}

impl std::fmt::Display for Composition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Number of standard Young tableaux of shape lambda, by hook lengths.
pub fn hook_dim(lambda: &Partition) -> u128 {
    let n = lambda.size();
    if n == 0 {
        return 1;
    }
    let parts = lambda.parts();
    let col_len = |c: usize| parts.iter().filter(|&&p| p > c).count();
    let mut num: u128 = (1..=n as u128).product();
    for (r, &row) in parts.iter().enumerate() {
        for c in 0..row {
            let hook = (row - c) + (col_len(c) - r) - 1;
            num /= hook as u128;
        }
    }
    num
}

/// Littlewood-Richardson coefficient c^lambda_{mu,nu}: LR skew tableaux of
/// shape lambda/mu and content nu, counted by backtracking over cells in
/// reverse reading order with the lattice condition maintained.
pub fn lr_coefficient(mu: &Partition, nu: &Partition, lambda: &Partition) -> u128 {
    if mu.size() + nu.size() != lambda.size() || !lambda.contains(mu) {
        return 0;
    }
    if nu.is_empty() {
        return 1;
    }
    let rows = lambda.len();
    let lam = lambda.parts();
    let m: Vec<usize> = (0..rows)
        .map(|r| mu.parts().get(r).copied().unwrap_or(0))
        .collect();
    // cells in reading order: top to bottom, right to left within a row
    let cells: Vec<(usize, usize)> = (0..rows)
        .flat_map(|r| (m[r]..lam[r]).rev().map(move |c| (r, c)))
        .collect();
    let k = nu.len();
    let target = nu.parts();
    let mut fill = vec![vec![0usize; lam[0]]; rows]; // 0 = empty, else entry
    let mut count = vec![0usize; k + 1];
    fn go(
        idx: usize,
        cells: &[(usize, usize)],
        fill: &mut Vec<Vec<usize>>,
        count: &mut Vec<usize>,
        target: &[usize],
        m: &[usize],
        lam: &[usize],
        k: usize,
    ) -> u128 {
        if idx == cells.len() {
            return 1;
        }
        let (r, c) = cells[idx];
        let mut total = 0;
        for e in 1..=k {
            if count[e] == target[e - 1] {
                continue;
            }
            // lattice: after placing e, #e must not exceed #(e-1)
            if e > 1 && count[e] + 1 > count[e - 1] {
                continue;
            }
            // row weakly increasing: neighbor to the right already filled
            if c + 1 < lam[r] && fill[r][c + 1] != 0 && e > fill[r][c + 1] {
                continue;
            }
            // column strictly increasing: cell above (if in the skew shape)
            if r > 0 && c >= m[r - 1] {
                if fill[r - 1][c] == 0 || e <= fill[r - 1][c] {
                    continue;
                }
            }
            fill[r][c] = e;
            count[e] += 1;
            total += go(idx + 1, cells, fill, count, target, m, lam, k);
            count[e] -= 1;
            fill[r][c] = 0;
        }
        total
    }
    go(0, &cells, &mut fill, &mut count, target, &m, lam, k)
}

/// Minimal-length permutation (one line, 1-based values) with the given
/// descent composition: reverse each block of positions spanned by a
/// maximal run of consecutive descents.
pub fn min_descent_permutation(alpha: &Composition) -> Vec<usize> {
    let n = alpha.size();
    let mut word: Vec<usize> = (1..=n).collect();
    let desc = alpha.descent_values();
    let mut d = 1;
    while d < n {
        if desc.contains(&d) {
            let start = d;
            let mut end = d;
            while desc.contains(&(end + 1)) {
                end += 1;
            }
            word[start - 1..=end].reverse();
            d = end + 2;
        } else {
            d += 1;
        }
    }
    word
}

fn descent_composition(word: &[usize]) -> Composition {
    let n = word.len();
    let set: BTreeSet<Node> = (0..n.saturating_sub(1))
        .filter(|&i| word[i] > word[i + 1])
        .collect();
    Composition::from_descent_nodes(&set, n).unwrap()
}

/// Shuffle product of compositions via representative permutations:
/// interleave the minimal word of alpha with the shifted minimal word of
/// beta and read off descent compositions. Returns a sorted multiset.
pub fn shuffle_product(alpha: &Composition, beta: &Composition) -> Vec<Composition> {
    shuffle_product_with(&min_descent_permutation(alpha), &min_descent_permutation(beta))
}

/// Same, from explicit representative permutations with D(u) = D(alpha),
/// D(v) = D(beta).
pub fn shuffle_product_with(u: &[usize], v: &[usize]) -> Vec<Composition> {
    let m = u.len();
    let n = v.len();
    let shifted: Vec<usize> = v.iter().map(|&x| x + m).collect();
    let mut out = Vec::new();
    // choose the positions of u's letters among m+n slots
    for mask in 0u64..(1 << (m + n)) {
        if (mask.count_ones() as usize) != m {
            continue;
        }
        let mut iu = 0;
        let mut iv = 0;
        let mut word = Vec::with_capacity(m + n);
        for i in 0..m + n {
            if mask & (1 << i) != 0 {
                word.push(u[iu]);
                iu += 1;
            } else {
                word.push(shifted[iv]);
                iv += 1;
            }
        }
        out.push(descent_composition(&word));
    }
    out.sort();
    out
}

/// (alpha_{<=m}, alpha_{>m}): cut the composition after total size m,
/// splitting the part the cut lands in.
pub fn split_composition(alpha: &Composition, m: usize) -> Result<(Composition, Composition)> {
    let n = alpha.size();
    if m > n {
        return Err(Error::InvalidLabel(format!(
            "cannot split a composition of {n} at {m}"
        )));
    }
    let mut left = Vec::new();
    let mut right = Vec::new();
    let mut acc = 0;
    for &p in alpha.parts() {
        if acc + p <= m {
            left.push(p);
        } else if acc >= m {
            right.push(p);
        } else {
            left.push(m - acc);
            right.push(acc + p - m);
        }
        acc += p;
    }
    Ok((Composition(left), Composition(right)))
}

/// The multiset alpha-down-m of pairs (beta |= m, gamma |= n-m), computed
/// from the restriction of the corresponding projective module of the
/// type A path, so no separate combinatorial rule is assumed.
pub fn restrict_composition(
    alpha: &Composition,
    m: usize,
) -> Result<Vec<(Composition, Composition)>> {
    let n = alpha.size();
    if m > n {
        return Err(Error::InvalidLabel(format!(
            "cannot restrict a composition of {n} at {m}"
        )));
    }
    if m == 0 {
        return Ok(vec![(Composition::empty(), alpha.clone())]);
    }
    if m == n {
        return Ok(vec![(alpha.clone(), Composition::empty())]);
    }
    let diagram = coxeter::type_a_diagram(n - 1);
    let s_set = diagram.node_set();
    let cut = m - 1; // node removed to leave S_m x S_{n-m}
    let j_set: BTreeSet<Node> = s_set.iter().copied().filter(|&t| t != cut).collect();
    let k_set = alpha.descent_nodes();
    let terms = zerohecke::restrict_p0(&diagram, &s_set, &j_set, &k_set, u128::MAX)?;
    let mut out = Vec::new();
    for term in terms {
        let left: BTreeSet<Node> = term.iter().copied().filter(|&d| d < cut).collect();
        let right: BTreeSet<Node> = term
            .iter()
            .copied()
            .filter(|&d| d > cut)
            .map(|d| d - m)
            .collect();
        out.push((
            Composition::from_descent_nodes(&left, m)?,
            Composition::from_descent_nodes(&right, n - m)?,
        ));
    }
    out.sort();
    Ok(out)
}

/// Standard Young tableaux of shape lambda, each as row-wise fillings with
/// values 1..n, in a fixed order (recursion over the cell holding n).
pub fn standard_tableaux(lambda: &Partition) -> Vec<Vec<Vec<usize>>> {
    fn go(parts: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<(usize, usize)>>) {
        if n == 0 {
            out.push(Vec::new());
            return;
        }
        for r in 0..parts.len() {
            let is_corner = parts[r] > 0 && (r + 1 == parts.len() || parts[r + 1] < parts[r]);
            if !is_corner {
                continue;
            }
            parts[r] -= 1;
            let c = parts[r];
            let start = out.len();
            go(parts, n - 1, out);
            for placement in &mut out[start..] {
                placement.push((r, c));
            }
            parts[r] += 1;
        }
    }
    let mut placements = Vec::new();
    go(&mut lambda.parts().to_vec(), lambda.size(), &mut placements);
    placements
        .into_iter()
        .map(|cells| {
            let mut t: Vec<Vec<usize>> = lambda.parts().iter().map(|&p| vec![0; p]).collect();
            // cells were pushed while unwinding, so entry v-1 holds value v
            for (v0, &(r, c)) in cells.iter().enumerate() {
                t[r][c] = v0 + 1;
            }
            t
        })
        .collect()
}

/// Exact matrices of the adjacent transpositions s_1, ..., s_{n-1} on the
/// irreducible S_n-module of shape lambda (n = |lambda|), in Young's
/// seminormal form over the standard tableau basis. Entry (r, c) maps basis
/// vector c into row r.
pub fn specht_matrices(lambda: &Partition) -> Vec<QMat> {
    let n = lambda.size();
    let tabs = standard_tableaux(lambda);
    let d = tabs.len();
    let index: std::collections::BTreeMap<Vec<Vec<usize>>, usize> = tabs
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, t)| (t, i))
        .collect();
    let pos_of = |t: &Vec<Vec<usize>>, v: usize| -> (usize, usize) {
        for (r, row) in t.iter().enumerate() {
            for (c, &x) in row.iter().enumerate() {
                if x == v {
                    return (r, c);
                }
            }
        }
        unreachable!("value present in a standard tableau")
    };
    let mut out = Vec::new();
    for k in 1..n {
        let mut m = QMat::zeros(d, d);
        for (i, t) in tabs.iter().enumerate() {
            let (ra, ca) = pos_of(t, k);
            let (rb, cb) = pos_of(t, k + 1);
            // axial distance from k to k+1
            let r = (cb as i64 - rb as i64) - (ca as i64 - ra as i64);
            if r == 1 {
                m[(i, i)] = Q::one();
            } else if r == -1 {
                m[(i, i)] = -Q::one();
            } else {
                let rho = Q::one() / crate::linalg::q_from_i64(r);
                let mut t2 = t.clone();
                t2[ra][ca] = k + 1;
                t2[rb][cb] = k;
                let j = index[&t2];
                m[(i, i)] = rho.clone();
                if i < j {
                    m[(j, i)] = Q::one();
                } else {
                    m[(j, i)] = Q::one() - rho.clone() * rho;
                }
            }
        }
        out.push(m);
    }
    out
}
