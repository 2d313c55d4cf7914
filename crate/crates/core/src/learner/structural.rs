//! Exhaustive enumeration of all formulas by DAG size, without any semantic
//! pruning. Every formula of size `k` is produced exactly once, in layer
//! `k`, together with its satisfaction vector over the evaluator's frame.

use std::collections::HashMap;

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::syntax::{Connective, Evaluator, Signatures, Syntax};
use crate::formulas::Proposition;
use crate::semantics::SatisfactionVector;

const NONE: u32 = u32::MAX;
const CHUNK: usize = 256;

/// A freshly enumerated formula: its root connective (none for a leaf) and
/// the node ids of its operands (for a leaf, `args[0]` is the proposition
/// index).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Candidate {
    pub conn: Option<Connective>,
    pub args: [u32; 2],
    pub size: usize,
    pub sig: u32,
    /// Node id when the layer is being stored.
    pub id: Option<u32>,
}

#[derive(Debug, Clone, Copy)]
struct Node {
    conn: Option<Connective>,
    args: [u32; 2],
    set_start: u32,
    set_len: u32,
    sig: u32,
}

/// Size of the union of two sorted, duplicate-free slices.
pub fn union_len(a: &[u32], b: &[u32]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
        n += 1;
    }
    n + (a.len() - i) + (b.len() - j)
}

/// Merges two sorted, duplicate-free slices into `out`.
pub fn union_into(a: &[u32], b: &[u32], out: &mut Vec<u32>) {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
}

enum Work {
    Unary(u32),
    Binary(u32),
}

type Raw = (Connective, [u32; 2], SatisfactionVector);

/// Layer-by-layer enumerator of all formulas over `props` built with
/// `conns`.
pub struct StructuralEnumerator<'e, E: Evaluator> {
    eval: &'e E,
    props: Vec<Proposition>,
    unary: Vec<Connective>,
    binary: Vec<Connective>,
    nodes: Vec<Node>,
    sets: Vec<u32>,
    by_size: Vec<Vec<u32>>,
    table: FxHashMap<(Connective, u32, u32), u32>,
    signatures: Signatures,
    completed: usize,
    open: bool,
    generated: u64,
}

impl<'e, E: Evaluator> StructuralEnumerator<'e, E> {
    pub fn new(eval: &'e E, props: Vec<Proposition>, conns: &[Connective]) -> Self {
        StructuralEnumerator {
            eval,
            props,
            unary: conns.iter().copied().filter(|c| c.arity() == 1).collect(),
            binary: conns.iter().copied().filter(|c| c.arity() == 2).collect(),
            nodes: Vec::new(),
            sets: Vec::new(),
            by_size: vec![Vec::new()],
            table: FxHashMap::default(),
            signatures: Signatures::default(),
            completed: 0,
            open: true,
            generated: 0,
        }
    }

    /// Number of layers enumerated so far.
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

    pub fn propositions(&self) -> &[Proposition] {
        &self.props
    }

    /// Sorted node ids of the sub-formula closure of a stored node.
    pub fn set(&self, id: u32) -> &[u32] {
        let n = &self.nodes[id as usize];
        &self.sets[n.set_start as usize..(n.set_start + n.set_len) as usize]
    }

    pub fn size(&self, id: u32) -> usize {
        self.nodes[id as usize].set_len as usize
    }

    pub fn sig(&self, id: u32) -> u32 {
        self.nodes[id as usize].sig
    }

    pub fn node(&self, id: u32) -> (Option<Connective>, [u32; 2]) {
        let n = &self.nodes[id as usize];
        (n.conn, n.args)
    }

    /// Stored node ids of the given size.
    pub fn layer(&self, size: usize) -> &[u32] {
        self.by_size.get(size).map_or(&[], Vec::as_slice)
    }

    fn vector(&self, id: u32) -> &SatisfactionVector {
        self.signatures.get(self.nodes[id as usize].sig)
    }

    /// Accepts `y` as the smaller partner of `x` (size `a`) when `y` is
    /// strictly smaller, or equally large with a larger id (each unordered
    /// pair is produced from one side only).
    fn accept(&self, x: u32, a: usize, y: u32, allow_equal: bool) -> bool {
        let b = self.size(y);
        b < a || (b == a && (y > x || (allow_equal && y == x)))
    }

    /// Every `y` with `|S_x ∪ S_y| = u`, for `x` the larger partner.
    fn partners(&self, x: u32, u: usize) -> Vec<u32> {
        let sx = self.set(x);
        let a = sx.len();
        let e = u - a;
        let mut ys = Vec::new();
        match e {
            // S_y ⊆ S_x means y is a sub-formula of x.
            0 => ys.extend(sx.iter().copied().filter(|&y| self.accept(x, a, y, true))),
            // Exactly one new node: y itself, all of whose operands are in S_x.
            1 => {
                let fresh = |y: u32| sx.binary_search(&y).is_err();
                for &leaf in self.layer(1) {
                    if fresh(leaf) && self.accept(x, a, leaf, false) {
                        ys.push(leaf);
                    }
                }
                for &c in &self.unary {
                    for &c1 in sx {
                        if let Some(&y) = self.table.get(&(c, c1, NONE)) {
                            if fresh(y) && self.accept(x, a, y, false) {
                                ys.push(y);
                            }
                        }
                    }
                }
                for &c in &self.binary {
                    for &c1 in sx {
                        for &c2 in sx {
                            if let Some(&y) = self.table.get(&(c, c1, c2)) {
                                if fresh(y) && self.accept(x, a, y, false) {
                                    ys.push(y);
                                }
                            }
                        }
                    }
                }
            }
            _ => {
                for b in e..=a {
                    for &y in self.layer(b) {
                        if self.accept(x, a, y, false) && union_len(sx, self.set(y)) == u {
                            ys.push(y);
                        }
                    }
                }
            }
        }
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
                        if y != x {
                            out.push((c, [y, x], self.eval.apply(c, &[self.vector(y), self.vector(x)])));
                        }
                    }
                }
            }
        }
        out
    }

    fn push_node(&mut self, conn: Option<Connective>, args: [u32; 2], sig: u32, size: usize) -> u32 {
        let id = self.nodes.len() as u32;
        let start = self.sets.len();
        match conn {
            None => self.sets.push(id),
            Some(c) if c.arity() == 1 => {
                let n = &self.nodes[args[0] as usize];
                self.sets
                    .extend_from_within(n.set_start as usize..(n.set_start + n.set_len) as usize);
                self.sets.push(id);
            }
            Some(_) => {
                let mut merged = Vec::with_capacity(size);
                union_into(self.set(args[0]), self.set(args[1]), &mut merged);
                self.sets.extend_from_slice(&merged);
                self.sets.push(id);
            }
        }
        debug_assert_eq!(self.sets.len() - start, size);
        self.nodes.push(Node {
            conn,
            args,
            set_start: start as u32,
            set_len: size as u32,
            sig,
        });
        match conn {
            None => {}
            Some(c) if c.arity() == 1 => {
                self.table.insert((c, args[0], NONE), id);
            }
            Some(c) => {
                self.table.insert((c, args[0], args[1]), id);
            }
        }
        id
    }

    /// Enumerates the next layer, calling `visit` on each formula in a
    /// deterministic order. Unless `store` is set the layer is not kept and
    /// no further layer can be enumerated.
    pub fn next_layer(
        &mut self,
        store: bool,
        mut visit: impl FnMut(&Self, &Candidate, &SatisfactionVector),
    ) {
        assert!(self.open, "cannot extend past an unstored layer");
        let k = self.completed + 1;
        self.by_size.push(Vec::new());
        if k == 1 {
            for (i, p) in self.props.clone().iter().enumerate() {
                self.generated += 1;
                let sig = self.signatures.intern(self.eval.prop(p));
                let args = [i as u32, NONE];
                let id = store.then(|| self.push_node(None, args, sig, 1));
                if let Some(id) = id {
                    self.by_size[1].push(id);
                }
                let c = Candidate {
                    conn: None,
                    args,
                    size: 1,
                    sig,
                    id,
                };
                visit(&*self, &c, self.signatures.get(sig));
            }
        } else {
            let u = k - 1;
            let mut work: Vec<Work> = self.layer(u).iter().map(|&x| Work::Unary(x)).collect();
            for a in u.div_ceil(2)..=u {
                work.extend(self.layer(a).iter().map(|&x| Work::Binary(x)));
            }
            let batch = CHUNK * rayon::current_num_threads().max(1);
            for chunk in work.chunks(batch) {
                let results: Vec<Vec<Raw>> =
                    chunk.par_iter().map(|w| self.expand(w, u)).collect();
                for (conn, args, vector) in results.into_iter().flatten() {
                    self.generated += 1;
                    let sig = self.signatures.intern(vector);
                    let id = store.then(|| self.push_node(Some(conn), args, sig, k));
                    if let Some(id) = id {
                        self.by_size[k].push(id);
                    }
                    let c = Candidate {
                        conn: Some(conn),
                        args,
                        size: k,
                        sig,
                        id,
                    };
                    visit(&*self, &c, self.signatures.get(sig));
                }
            }
        }
        self.completed = k;
        self.open = store;
    }

    /// The formula of a stored node.
    pub fn build<F: Syntax>(&self, id: u32, memo: &mut HashMap<u32, F>) -> F {
        if let Some(f) = memo.get(&id) {
            return f.clone();
        }
        let (conn, args) = self.node(id);
        let f = self.assemble(conn, args, memo);
        memo.insert(id, f.clone());
        f
    }

    /// The formula of a candidate (stored or not).
    pub fn build_candidate<F: Syntax>(&self, c: &Candidate, memo: &mut HashMap<u32, F>) -> F {
        self.assemble(c.conn, c.args, memo)
    }

    fn assemble<F: Syntax>(
        &self,
        conn: Option<Connective>,
        args: [u32; 2],
        memo: &mut HashMap<u32, F>,
    ) -> F {
        match conn {
            None => F::leaf(self.props[args[0] as usize].clone()),
            Some(c) => {
                let children = args[..c.arity()]
                    .iter()
                    .map(|&a| self.build(a, memo))
                    .collect();
                F::build(c, children)
            }
        }
    }
}
