//! Search over formulas up to observational equivalence.
//!
//! A candidate is a pair `(r, S)`: a root signature `r` and the set `S` of
//! signatures of all its sub-formulae (with `r ∈ S`). Its cost is `|S|`.
//! Any formula `f` whose distinct sub-formulae have pairwise distinct
//! signatures has exactly `|S|` distinct sub-formulae, and every formula can
//! be compacted into such a formula without growing, so searching over the
//! pairs is exact for the DAG-size measure. A candidate is dropped when an
//! already known candidate has the same root and a subset of its signature
//! set: whatever the dropped one could be used for, the kept one can be
//! used for at no greater cost.

use std::collections::HashMap;

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::structural::union_into;
use super::syntax::{Connective, Evaluator, Signatures, Syntax};
use crate::formulas::Proposition;
use crate::semantics::SatisfactionVector;

const NONE: u32 = u32::MAX;
const CHUNK: usize = 256;

#[derive(Debug, Clone, Copy)]
struct Node {
    conn: Option<Connective>,
    args: [u32; 2],
    set_start: u32,
    set_len: u32,
    root: u32,
}

/// A surviving candidate that was not stored (the last layer).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Survivor {
    pub conn: Option<Connective>,
    pub args: [u32; 2],
    pub root: u32,
}

enum Work {
    Unary(u32),
    Binary(u32),
}

type Raw = (Connective, [u32; 2], SatisfactionVector);

/// Candidates whose signature set minus a removed subset equals the key.
type RemovalIndex = FxHashMap<Box<[u32]>, Vec<(u32, Box<[u32]>)>>;

/// Layered search over `(root, signature set)` candidates.
pub struct SemanticSearch<'e, E: Evaluator> {
    eval: &'e E,
    props: Vec<Proposition>,
    unary: Vec<Connective>,
    binary: Vec<Connective>,
    bound: usize,
    nodes: Vec<Node>,
    sets: Vec<u32>,
    by_size: Vec<Vec<u32>>,
    keys: FxHashMap<Box<[u32]>, u32>,
    /// `index[e]` maps `S_y \ D` to `(y, D)` for every `e`-subset `D` of `S_y`.
    index: Vec<RemovalIndex>,
    signatures: Signatures,
    completed: usize,
    generated: u64,
}

/// Calls `f` on every subset of `items` (as a sorted vector) whose size lies
/// in `sizes`.
fn subsets(items: &[u32], sizes: std::ops::RangeInclusive<usize>, mut f: impl FnMut(&[u32])) {
    let n = items.len();
    let mut buf = Vec::with_capacity(n);
    for mask in 0u32..(1 << n) {
        let c = mask.count_ones() as usize;
        if !sizes.contains(&c) {
            continue;
        }
        buf.clear();
        buf.extend((0..n).filter(|i| mask >> i & 1 == 1).map(|i| items[i]));
        f(&buf);
    }
}

impl<'e, E: Evaluator> SemanticSearch<'e, E> {
    /// `bound` is the largest cost that will be requested; it limits which
    /// layers need to be indexed for pair lookups.
    pub fn new(eval: &'e E, props: Vec<Proposition>, conns: &[Connective], bound: usize) -> Self {
        SemanticSearch {
            eval,
            props,
            unary: conns.iter().copied().filter(|c| c.arity() == 1).collect(),
            binary: conns.iter().copied().filter(|c| c.arity() == 2).collect(),
            bound,
            nodes: Vec::new(),
            sets: Vec::new(),
            by_size: vec![Vec::new()],
            keys: FxHashMap::default(),
            index: (0..=bound.saturating_sub(1) / 2).map(|_| FxHashMap::default()).collect(),
            signatures: Signatures::default(),
            completed: 0,
            generated: 0,
        }
    }

    pub fn completed_layers(&self) -> usize {
        self.completed
    }

    pub fn signatures(&self) -> &Signatures {
        &self.signatures
    }

    pub fn generated(&self) -> u64 {
        self.generated
    }

    pub fn stored(&self) -> usize {
        self.nodes.len()
    }

    fn set(&self, id: u32) -> &[u32] {
        let n = &self.nodes[id as usize];
        &self.sets[n.set_start as usize..(n.set_start + n.set_len) as usize]
    }

    fn size(&self, id: u32) -> usize {
        self.nodes[id as usize].set_len as usize
    }

    fn vector(&self, id: u32) -> &SatisfactionVector {
        self.signatures.get(self.nodes[id as usize].root)
    }

    /// Every `y` with `|S_x ∪ S_y| = u`, `|S_y| ≤ |S_x|`, from one side only
    /// when both are equally large.
    fn partners(&self, x: u32, u: usize) -> Vec<u32> {
        let sx = self.set(x);
        let a = sx.len();
        let e = u - a;
        let mut ys = Vec::new();
        let Some(index) = self.index.get(e) else {
            return ys;
        };
        subsets(sx, 0..=a - e, |t| {
            if let Some(list) = index.get(t) {
                for (y, d) in list {
                    let b = self.size(*y);
                    if (b < a || *y >= x) && d.iter().all(|s| sx.binary_search(s).is_err()) {
                        ys.push(*y);
                    }
                }
            }
        });
        ys
    }

    fn expand(&self, work: &Work, u: usize) -> Vec<Raw> {
        let mut out = Vec::new();
        match *work {
            Work::Unary(x) => {
                for &c in &self.unary {
                    out.push((c, [x, NONE], self.eval.apply(c, &[self.vector(x)])));
                }
            }
            Work::Binary(x) => {
                for y in self.partners(x, u) {
                    for &c in &self.binary {
                        out.push((c, [x, y], self.eval.apply(c, &[self.vector(x), self.vector(y)])));
                        if y != x && !c.is_commutative() {
                            out.push((c, [y, x], self.eval.apply(c, &[self.vector(y), self.vector(x)])));
                        }
                    }
                }
            }
        }
        out
    }

    /// The candidate's signature set and key, or `None` when it is
    /// redundant.
    fn admit(&self, root: u32, children: &[u32]) -> Option<Vec<u32>> {
        let mut set = Vec::new();
        match children {
            [] => {}
            [x] => set.extend_from_slice(self.set(*x)),
            [x, y] => union_into(self.set(*x), self.set(*y), &mut set),
            _ => unreachable!(),
        }
        let pos = match set.binary_search(&root) {
            // The root is already a sub-formula signature: the sub-formula
            // is a cheaper candidate with the same root.
            Ok(_) => return None,
            Err(pos) => pos,
        };
        set.insert(pos, root);
        // Dominance by a known candidate with the same root and a subset
        // (including the same set) of signatures.
        let others: Vec<u32> = set.iter().copied().filter(|&s| s != root).collect();
        let mut key = Vec::with_capacity(set.len() + 1);
        let mut dominated = false;
        subsets(&others, 0..=others.len(), |sub| {
            if dominated {
                return;
            }
            key.clear();
            key.push(root);
            let p = sub.partition_point(|&s| s < root);
            key.extend_from_slice(&sub[..p]);
            key.push(root);
            key.extend_from_slice(&sub[p..]);
            dominated = self.keys.contains_key(key.as_slice());
        });
        (!dominated).then_some(set)
    }

    fn push_node(&mut self, conn: Option<Connective>, args: [u32; 2], root: u32, set: Vec<u32>) -> u32 {
        let id = self.nodes.len() as u32;
        let mut key = Vec::with_capacity(set.len() + 1);
        key.push(root);
        key.extend_from_slice(&set);
        self.keys.insert(key.into_boxed_slice(), id);
        self.nodes.push(Node {
            conn,
            args,
            set_start: self.sets.len() as u32,
            set_len: set.len() as u32,
            root,
        });
        self.sets.extend_from_slice(&set);
        let k = set.len();
        self.by_size[k].push(id);
        id
    }

    fn index_layer(&mut self, k: usize) {
        for e in 0..self.index.len() {
            // Partners of size k are only looked up with e new signatures
            // when k + e ≤ bound - 1.
            if e > k || k + e + 1 > self.bound {
                continue;
            }
            for &y in &self.by_size[k] {
                let n = self.nodes[y as usize];
                let sy = &self.sets[n.set_start as usize..(n.set_start + n.set_len) as usize];
                let index = &mut self.index[e];
                subsets(sy, e..=e, |d| {
                    let rest: Vec<u32> = sy.iter().copied().filter(|s| d.binary_search(s).is_err()).collect();
                    index
                        .entry(rest.into_boxed_slice())
                        .or_default()
                        .push((y, d.to_vec().into_boxed_slice()));
                });
            }
        }
    }

    /// Expands the next cost layer and returns the candidates whose
    /// signature satisfies `target`. Survivors of pruning are stored unless
    /// this is the last layer of the search; the last layer is not pruned
    /// at all, since nothing is built on top of it.
    pub fn next_layer(
        &mut self,
        last: bool,
        target: impl Fn(&SatisfactionVector) -> bool + Sync,
    ) -> Vec<Survivor> {
        let k = self.completed + 1;
        assert!(k <= self.bound, "layer {k} exceeds the bound {}", self.bound);
        self.by_size.push(Vec::new());
        let mut survivors = Vec::new();
        let mut accept = |this: &mut Self, conn: Option<Connective>, args: [u32; 2], v: SatisfactionVector| {
            let hit = target(&v);
            let root = this.signatures.intern(v);
            if last {
                if hit {
                    survivors.push(Survivor { conn, args, root });
                }
                return;
            }
            let children: &[u32] = match conn {
                None => &[],
                Some(c) => &args[..c.arity()],
            };
            if let Some(set) = this.admit(root, children) {
                this.push_node(conn, args, root, set);
                if hit {
                    survivors.push(Survivor { conn, args, root });
                }
            }
        };
        if k == 1 {
            for (i, p) in self.props.clone().iter().enumerate() {
                self.generated += 1;
                let v = self.eval.prop(p);
                accept(self, None, [i as u32, NONE], v);
            }
        } else {
            let u = k - 1;
            let mut work: Vec<Work> = self.by_size[u].iter().map(|&x| Work::Unary(x)).collect();
            for a in u.div_ceil(2)..=u {
                work.extend(self.by_size[a].iter().map(|&x| Work::Binary(x)));
            }
            let batch = CHUNK * rayon::current_num_threads().max(1);
            for chunk in work.chunks(batch) {
                let results: Vec<(usize, Vec<Raw>)> = chunk
                    .par_iter()
                    .map(|w| {
                        let mut raw = self.expand(w, u);
                        let n = raw.len();
                        if last {
                            raw.retain(|r| target(&r.2));
                        }
                        (n, raw)
                    })
                    .collect();
                for (n, raw) in results {
                    self.generated += n as u64;
                    for (conn, args, v) in raw {
                        accept(self, Some(conn), args, v);
                    }
                }
            }
        }
        if !last {
            self.index_layer(k);
        }
        self.completed = k;
        survivors
    }

    /// Builds a formula for a stored node or a last-layer survivor.
    pub fn build<F: Syntax>(&self, s: &Survivor, memo: &mut HashMap<u32, F>) -> F {
        match s.conn {
            None => F::leaf(self.props[s.args[0] as usize].clone()),
            Some(c) => {
                let children = s.args[..c.arity()]
                    .iter()
                    .map(|&a| self.build_node(a, memo))
                    .collect();
                F::build(c, children)
            }
        }
    }

    fn build_node<F: Syntax>(&self, id: u32, memo: &mut HashMap<u32, F>) -> F {
        if let Some(f) = memo.get(&id) {
            return f.clone();
        }
        let n = self.nodes[id as usize];
        let f = self.build(
            &Survivor {
                conn: n.conn,
                args: n.args,
                root: n.root,
            },
            memo,
        );
        memo.insert(id, f.clone());
        f
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_by_size() {
        let mut seen = Vec::new();
        subsets(&[1, 5, 7], 1..=2, |s| seen.push(s.to_vec()));
        seen.sort();
        assert_eq!(
            seen,
            vec![vec![1], vec![1, 5], vec![1, 7], vec![5], vec![5, 7], vec![7]]
        );
    }
}
