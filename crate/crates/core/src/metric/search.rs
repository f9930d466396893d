//! Exhaustive search for optimal codes at tiny block lengths.
//!
//! A code corrects `t` transpositions exactly when it is an independent set
//! in the conflict graph whose edges join strings with intersecting radius-`t`
//! balls. Swaps preserve the symbol multiset, so the graph splits into
//! composition classes and each component is solved separately with a
//! branch-and-bound maximum independent set search.

use std::collections::HashMap;

use super::{ball, space_size, Code};
use crate::error::{Error, Result};
use crate::qstring::{all_strings, ChannelModel, QaryString};

/// Largest `q^n` accepted by [`optimal_code_search`].
pub const OPTIMAL_SEARCH_LIMIT: u128 = 1 << 10;

/// Exact `M*_q(n; t)` together with a code attaining it.
pub fn optimal_code_search(q: usize, n: usize, t: usize, model: ChannelModel) -> Result<(usize, Code)> {
    let size = space_size(q, n)?;
    if size > OPTIMAL_SEARCH_LIMIT {
        return Err(Error::TooLarge {
            what: "optimal code search (conflict graph vertices)",
            size,
            limit: OPTIMAL_SEARCH_LIMIT,
        });
    }
    let vertices: Vec<QaryString> = all_strings(q, n).collect();

    let mut owners: HashMap<QaryString, Vec<usize>> = HashMap::new();
    for (i, v) in vertices.iter().enumerate() {
        for y in ball(v, t, model)? {
            owners.entry(y).or_default().push(i);
        }
    }
    let mut graph = Graph::new(vertices.len());
    for group in owners.values() {
        for (a, &u) in group.iter().enumerate() {
            for &w in &group[a + 1..] {
                graph.add_edge(u, w);
            }
        }
    }

    let mut chosen = Vec::new();
    for component in graph.components() {
        chosen.extend(graph.subgraph(&component).max_independent_set().into_iter().map(|i| component[i]));
    }
    chosen.sort_unstable();
    let words = chosen.into_iter().map(|i| vertices[i].clone()).collect();
    let code = Code::from_sorted(q, n, words);
    Ok((code.len(), code))
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn empty(n: usize) -> Self {
        Self { words: vec![0; n.div_ceil(64)] }
    }

    fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for i in 0..n {
            s.insert(i);
        }
        s
    }

    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    #[cfg(test)]
    fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn intersection_count(&self, other: &Self) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    fn intersect_with(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    fn subtract(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    fn first(&self) -> Option<usize> {
        self.words.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }
}

struct Graph {
    adj: Vec<BitSet>,
}

impl Graph {
    fn new(n: usize) -> Self {
        Self { adj: vec![BitSet::empty(n); n] }
    }

    fn len(&self) -> usize {
        self.adj.len()
    }

    fn add_edge(&mut self, u: usize, v: usize) {
        if u != v {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
        }
    }

    fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut comp = Vec::new();
            while let Some(u) = stack.pop() {
                comp.push(u);
                for v in self.adj[u].iter() {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    fn subgraph(&self, vertices: &[usize]) -> Graph {
        let local: HashMap<usize, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut g = Graph::new(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            for w in self.adj[v].iter() {
                g.add_edge(i, local[&w]);
            }
        }
        g
    }

    fn max_independent_set(&self) -> Vec<usize> {
        let mut best = Vec::new();
        let mut chosen = Vec::new();
        self.branch(BitSet::full(self.len()), &mut chosen, &mut best);
        best.sort_unstable();
        best
    }

    fn branch(&self, mut cand: BitSet, chosen: &mut Vec<usize>, best: &mut Vec<usize>) {
        let mark = chosen.len();
        // Vertices of degree 0 or 1 belong to some maximum independent set.
        'reduce: loop {
            for v in cand.iter().collect::<Vec<_>>() {
                let deg = self.adj[v].intersection_count(&cand);
                if deg <= 1 {
                    chosen.push(v);
                    cand.remove(v);
                    cand.subtract(&self.adj[v]);
                    continue 'reduce;
                }
            }
            break;
        }
        if cand.is_empty() {
            if chosen.len() > best.len() {
                *best = chosen.clone();
            }
            chosen.truncate(mark);
            return;
        }
        if chosen.len() + self.clique_cover_bound(&cand) <= best.len() {
            chosen.truncate(mark);
            return;
        }
        let pivot = cand
            .iter()
            .max_by_key(|&v| (self.adj[v].intersection_count(&cand), std::cmp::Reverse(v)))
            .expect("nonempty candidate set");

        let mut with = cand.clone();
        with.remove(pivot);
        with.subtract(&self.adj[pivot]);
        chosen.push(pivot);
        self.branch(with, chosen, best);
        chosen.pop();

        cand.remove(pivot);
        self.branch(cand, chosen, best);
        chosen.truncate(mark);
    }

    /// Greedy partition into cliques; an independent set uses at most one
    /// vertex per clique.
    fn clique_cover_bound(&self, cand: &BitSet) -> usize {
        let mut rest = cand.clone();
        let mut cliques = 0;
        while let Some(u) = rest.first() {
            rest.remove(u);
            let mut extend = rest.clone();
            extend.intersect_with(&self.adj[u]);
            while let Some(w) = extend.first() {
                rest.remove(w);
                extend.remove(w);
                extend.intersect_with(&self.adj[w]);
            }
            cliques += 1;
        }
        cliques
    }
}
