//! Weyl group elements and finite Coxeter groups realized by integer
//! matrices on weight coordinates.
//!
//! [`WeylElem`] is a standalone value (action matrix plus a reduced word) for
//! the full Weyl group of a [`RootSystem`]. [`CoxeterGroup`] enumerates a
//! finite reflection group from a list of generating reflections; it is used
//! both for `W` itself and for the integral Weyl groups of blocks, whose
//! generators are the reflections in the integral simple roots.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::roots::RootSystem;

/// Enumeration cap: the order of F4's Weyl group.
pub const GROUP_ORDER_CAP: usize = 1152;

/// Square integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    n: usize,
    data: Vec<i64>,
}

impl Mat {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        Mat { n, data }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        Mat { n, data: rows.iter().flatten().copied().collect() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        let n = self.n;
        let mut data = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        Mat { n, data }
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    pub fn apply_q(&self, v: &[crate::roots::Q]) -> Vec<crate::roots::Q> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| v[j] * self.get(i, j)).sum())
            .collect()
    }
}

/// Formats a word of 0-based generator indices as space-separated 1-based indices.
pub fn format_word(word: &[usize]) -> String {
    word.iter().map(|s| (s + 1).to_string()).collect::<Vec<_>>().join(" ")
}

/// Like [`format_word`], but the identity is written `e`.
pub fn display_word(word: &[usize]) -> String {
    if word.is_empty() {
        "e".to_string()
    } else {
        format_word(word)
    }
}

/// Parses space-separated 1-based generator indices; the empty string and `e`
/// are the identity.
pub fn parse_word(s: &str, generators: usize) -> Result<Vec<usize>> {
    if s.trim() == "e" {
        return Ok(vec![]);
    }
    s.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|p| !p.is_empty())
        .map(|p| {
            let i: usize = p.parse().map_err(|_| Error::MalformedWord(s.to_string()))?;
            if i == 0 || i > generators {
                return Err(Error::IndexOutOfRange { index: i, count: generators });
            }
            Ok(i - 1)
        })
        .collect()
}

fn simple_root_action(rs: &RootSystem, i: usize) -> Mat {
    // β ↦ β − <β, α_i^∨> α_i on simple-root coordinates
    let n = rs.rank();
    let mut m = Mat::identity(n);
    for j in 0..n {
        m.data[i * n + j] -= rs.cartan()[i][j];
    }
    m
}

/// An element of the Weyl group of a root system.
#[derive(Debug, Clone)]
pub struct WeylElem {
    action: Mat,
    root_action: Mat,
    word: Vec<usize>,
}

impl PartialEq for WeylElem {
    fn eq(&self, other: &Self) -> bool {
        self.action == other.action
    }
}

impl Eq for WeylElem {}

impl WeylElem {
    pub fn identity(rs: &RootSystem) -> Self {
        let n = rs.rank();
        WeylElem { action: Mat::identity(n), root_action: Mat::identity(n), word: vec![] }
    }

    /// The product `s_{word[0]} s_{word[1]} ...`; the stored word is reduced.
    pub fn from_word(rs: &RootSystem, word: &[usize]) -> Result<Self> {
        let n = rs.rank();
        let mut action = Mat::identity(n);
        let mut root_action = Mat::identity(n);
        for &s in word {
            if s >= n {
                return Err(Error::IndexOutOfRange { index: s + 1, count: n });
            }
            action = action.mul(&Mat::from_rows(&rs.reflection_matrix(s)));
            root_action = root_action.mul(&simple_root_action(rs, s));
        }
        let mut e = WeylElem { action, root_action, word: vec![] };
        e.word = e.strip_descents(rs);
        Ok(e)
    }

    fn strip_descents(&self, rs: &RootSystem) -> Vec<usize> {
        let mut cur = self.clone();
        let mut stripped = vec![];
        while let Some(s) = cur.first_right_descent() {
            stripped.push(s);
            cur = cur.times_simple(rs, s);
        }
        stripped.reverse();
        stripped
    }

    fn first_right_descent(&self) -> Option<usize> {
        // w s < w iff w(α_s) < 0
        (0..self.root_action.dim()).find(|&s| self.has_right_descent(s))
    }

    fn times_simple(&self, rs: &RootSystem, s: usize) -> WeylElem {
        WeylElem {
            action: self.action.mul(&Mat::from_rows(&rs.reflection_matrix(s))),
            root_action: self.root_action.mul(&simple_root_action(rs, s)),
            word: vec![],
        }
    }

    pub fn action(&self) -> &Mat {
        &self.action
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn mul(&self, rs: &RootSystem, other: &WeylElem) -> WeylElem {
        let mut w: Vec<usize> = self.word.clone();
        w.extend_from_slice(&other.word);
        WeylElem::from_word(rs, &w).expect("indices already validated")
    }

    /// Number of positive roots sent to negative roots.
    pub fn inversions(&self, rs: &RootSystem) -> usize {
        rs.positive_roots()
            .iter()
            .filter(|r| self.root_action.apply(r).iter().any(|&c| c < 0))
            .count()
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    /// Bruhat order by the lifting property of reduced subwords: with `ws < w`,
    /// `x ≤ w` iff `xs ≤ ws` (when `xs < x`) or `x ≤ ws` (otherwise).
    pub fn bruhat_leq(&self, rs: &RootSystem, w: &WeylElem) -> bool {
        let mut x = self.clone();
        let mut w = w.clone();
        while let Some(s) = w.first_right_descent() {
            if x.has_right_descent(s) {
                x = x.times_simple(rs, s);
            }
            w = w.times_simple(rs, s);
        }
        x.action == w.action
    }

    fn has_right_descent(&self, s: usize) -> bool {
        (0..self.root_action.dim()).any(|i| self.root_action.get(i, s) < 0)
    }
}

/// Index of an element inside a [`CoxeterGroup`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemId(u32);

impl ElemId {
    pub const IDENTITY: ElemId = ElemId(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(i: usize) -> Self {
        ElemId(i as u32)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(n: usize) -> Self {
        BitSet(vec![0; n.div_ceil(64)])
    }
    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(k, &word)| {
            (0..64).filter(move |b| word >> b & 1 == 1).map(move |b| k * 64 + b)
        })
    }
}

/// Minimal-length coset representatives `W^J` for a subset `J` of generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetData {
    pub j: Vec<usize>,
    pub reps: Vec<ElemId>,
}

/// A finite Coxeter group, enumerated. Elements are ordered by BFS over right
/// multiplication by generators, so the order depends only on the Coxeter
/// system and the generator order.
#[derive(Debug, Clone)]
pub struct CoxeterGroup {
    gens: Vec<Mat>,
    elems: Vec<Mat>,
    index: HashMap<Mat, ElemId>,
    lengths: Vec<u32>,
    right: Vec<ElemId>,
    left: Vec<ElemId>,
    inverse: Vec<ElemId>,
    words: Vec<Vec<usize>>,
    coxeter: Vec<Vec<u32>>,
    below: Vec<BitSet>,
}

impl CoxeterGroup {
    /// The Weyl group of `rs`, generated by the simple reflections.
    pub fn weyl(rs: &RootSystem) -> Result<Self> {
        let gens = (0..rs.rank()).map(|i| Mat::from_rows(&rs.reflection_matrix(i))).collect();
        Self::from_generators(gens, rs.rank())
    }

    /// Enumerates the group generated by the given involutive matrices, which
    /// must be the simple reflections of a finite reflection group.
    pub fn from_generators(gens: Vec<Mat>, dim: usize) -> Result<Self> {
        let r = gens.len();
        let mut elems = vec![Mat::identity(dim)];
        let mut index = HashMap::new();
        index.insert(Mat::identity(dim), ElemId(0));
        let mut lengths = vec![0u32];
        let mut right: Vec<Option<ElemId>> = vec![None; r];
        let mut queue = VecDeque::from([0usize]);
        while let Some(w) = queue.pop_front() {
            for (s, g) in gens.iter().enumerate() {
                let p = elems[w].mul(g);
                let id = match index.get(&p) {
                    Some(&id) => id,
                    None => {
                        if elems.len() >= GROUP_ORDER_CAP {
                            return Err(Error::CapExceeded { cap: GROUP_ORDER_CAP });
                        }
                        let id = ElemId(elems.len() as u32);
                        index.insert(p.clone(), id);
                        elems.push(p);
                        lengths.push(lengths[w] + 1);
                        right.extend(std::iter::repeat_n(None, r));
                        queue.push_back(id.index());
                        id
                    }
                };
                right[w * r + s] = Some(id);
            }
        }
        let right: Vec<ElemId> = right.into_iter().map(|x| x.expect("closed")).collect();
        let n = elems.len();
        let mut left = Vec::with_capacity(n * r);
        let mut inverse = Vec::with_capacity(n);
        for m in &elems {
            for g in &gens {
                left.push(index[&g.mul(m)]);
            }
        }
        let mut group = CoxeterGroup {
            gens,
            elems,
            index,
            lengths,
            right,
            left,
            inverse: vec![],
            words: vec![],
            coxeter: vec![],
            below: vec![],
        };
        group.words = (0..n).map(|w| group.strip_word(ElemId(w as u32))).collect();
        for w in 0..n {
            let mut x = ElemId::IDENTITY;
            for &s in group.words[w].iter().rev() {
                x = group.rmul(x, s);
            }
            inverse.push(x);
        }
        group.inverse = inverse;
        group.coxeter = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let mut x = ElemId::IDENTITY;
                        let mut k = 0;
                        loop {
                            x = group.rmul(group.rmul(x, i), j);
                            k += 1;
                            if x == ElemId::IDENTITY {
                                break k;
                            }
                        }
                    })
                    .collect()
            })
            .collect();
        group.below = group.compute_bruhat();
        Ok(group)
    }

    fn strip_word(&self, w: ElemId) -> Vec<usize> {
        let mut cur = w;
        let mut out = vec![];
        while let Some(s) = (0..self.rank()).find(|&s| self.is_right_descent(cur, s)) {
            out.push(s);
            cur = self.rmul(cur, s);
        }
        out.reverse();
        out
    }

    fn compute_bruhat(&self) -> Vec<BitSet> {
        let n = self.order();
        let mut below: Vec<BitSet> = Vec::with_capacity(n);
        // BFS order is length-nondecreasing, so ws is already done
        for w in 0..n {
            let w = ElemId(w as u32);
            let mut set = BitSet::new(n);
            set.insert(w.index());
            if let Some(s) = (0..self.rank()).find(|&s| self.is_right_descent(w, s)) {
                let ws = self.rmul(w, s);
                for x in below[ws.index()].iter() {
                    set.insert(x);
                    set.insert(self.rmul(ElemId(x as u32), s).index());
                }
            }
            below.push(set);
        }
        below
    }

    /// Number of generators.
    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = ElemId> + '_ {
        (0..self.order()).map(|i| ElemId(i as u32))
    }

    pub fn generator_matrix(&self, s: usize) -> &Mat {
        &self.gens[s]
    }

    pub fn matrix(&self, w: ElemId) -> &Mat {
        &self.elems[w.index()]
    }

    pub fn find(&self, m: &Mat) -> Option<ElemId> {
        self.index.get(m).copied()
    }

    pub fn coxeter_matrix(&self) -> &[Vec<u32>] {
        &self.coxeter
    }

    pub fn length(&self, w: ElemId) -> usize {
        self.lengths[w.index()] as usize
    }

    pub fn word(&self, w: ElemId) -> &[usize] {
        &self.words[w.index()]
    }

    pub fn inverse(&self, w: ElemId) -> ElemId {
        self.inverse[w.index()]
    }

    /// `w s`
    pub fn rmul(&self, w: ElemId, s: usize) -> ElemId {
        self.right[w.index() * self.rank() + s]
    }

    /// `s w`
    pub fn lmul(&self, s: usize, w: ElemId) -> ElemId {
        self.left[w.index() * self.rank() + s]
    }

    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        self.word(b).iter().fold(a, |x, &s| self.rmul(x, s))
    }

    pub fn is_right_descent(&self, w: ElemId, s: usize) -> bool {
        self.lengths[self.rmul(w, s).index()] < self.lengths[w.index()]
    }

    pub fn is_left_descent(&self, s: usize, w: ElemId) -> bool {
        self.lengths[self.lmul(s, w).index()] < self.lengths[w.index()]
    }

    pub fn from_word(&self, word: &[usize]) -> Result<ElemId> {
        let mut x = ElemId::IDENTITY;
        for &s in word {
            if s >= self.rank() {
                return Err(Error::IndexOutOfRange { index: s + 1, count: self.rank() });
            }
            x = self.rmul(x, s);
        }
        Ok(x)
    }

    pub fn word_string(&self, w: ElemId) -> String {
        format_word(self.word(w))
    }

    pub fn bruhat_leq(&self, x: ElemId, w: ElemId) -> bool {
        self.below[w.index()].contains(x.index())
    }

    /// All `x ≤ w`, in enumeration order.
    pub fn bruhat_interval(&self, w: ElemId) -> impl Iterator<Item = ElemId> + '_ {
        self.below[w.index()].iter().map(|i| ElemId(i as u32))
    }

    /// Elements of the standard parabolic subgroup generated by `subset`.
    pub fn parabolic_subgroup(&self, subset: &[usize]) -> Vec<ElemId> {
        let mut seen = vec![false; self.order()];
        let mut out = vec![ElemId::IDENTITY];
        seen[0] = true;
        let mut k = 0;
        while k < out.len() {
            let w = out[k];
            for &s in subset {
                let ws = self.rmul(w, s);
                if !seen[ws.index()] {
                    seen[ws.index()] = true;
                    out.push(ws);
                }
            }
            k += 1;
        }
        out.sort();
        out
    }

    /// Whether `w` is the shortest element of `w W_J`.
    pub fn is_min_rep(&self, w: ElemId, j: &[usize]) -> bool {
        j.iter().all(|&s| !self.is_right_descent(w, s))
    }

    pub fn min_coset_reps(&self, j: &[usize]) -> CosetData {
        CosetData {
            j: j.to_vec(),
            reps: self.elements().filter(|&w| self.is_min_rep(w, j)).collect(),
        }
    }

    /// `w = y x` with `y ∈ W^J`, `x ∈ W_J` and `ℓ(w) = ℓ(y) + ℓ(x)`.
    pub fn decompose_yx(&self, w: ElemId, j: &[usize]) -> (ElemId, ElemId) {
        let mut y = w;
        while let Some(&s) = j.iter().find(|&&s| self.is_right_descent(y, s)) {
            y = self.rmul(y, s);
        }
        let x = self.mul(self.inverse(y), w);
        (y, x)
    }

    /// Longest element of the parabolic subgroup `W_I`.
    /// The longest element of the whole group, last in the enumeration order.
    pub fn w0(&self) -> ElemId {
        ElemId::from_index(self.order() - 1)
    }

    pub fn longest_element(&self, subset: &[usize]) -> ElemId {
        let mut w = ElemId::IDENTITY;
        while let Some(&s) = subset.iter().find(|&&s| !self.is_right_descent(w, s)) {
            w = self.rmul(w, s);
        }
        w
    }

    /// Membership in `{}^I W^J`: `w ∈ W^J` and for every `s ∈ I`,
    /// `ℓ(s w) = ℓ(w) + 1` and `s w ∈ W^J`.
    pub fn upper_coset_membership(&self, w: ElemId, i: &[usize], j: &[usize]) -> bool {
        self.is_min_rep(w, j)
            && i.iter().all(|&s| {
                let sw = self.lmul(s, w);
                self.length(sw) == self.length(w) + 1 && self.is_min_rep(sw, j)
            })
    }
}

impl fmt::Display for ElemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}
