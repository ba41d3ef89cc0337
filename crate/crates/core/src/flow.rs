//! Edmonds–Karp maximum flow with exact rational capacities.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::rational::Rational;

#[derive(Clone, Debug)]
struct Edge {
    to: usize,
    cap: Rational,
    flow: Rational,
}

#[derive(Clone, Debug, Default)]
pub struct FlowNetwork {
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> FlowNetwork {
        FlowNetwork { edges: Vec::new(), adj: alloc::vec![Vec::new(); nodes] }
    }

    pub fn nodes(&self) -> usize {
        self.adj.len()
    }

    /// Adds `u -> v` and its residual twin; returns the forward edge id.
    pub fn add_edge(&mut self, u: usize, v: usize, cap: Rational) -> usize {
        let id = self.edges.len();
        self.edges.push(Edge { to: v, cap, flow: Rational::zero() });
        self.edges.push(Edge { to: u, cap: Rational::zero(), flow: Rational::zero() });
        self.adj[u].push(id);
        self.adj[v].push(id + 1);
        id
    }

    pub fn flow(&self, edge: usize) -> &Rational {
        &self.edges[edge].flow
    }

    fn residual(&self, e: usize) -> Rational {
        &self.edges[e].cap - &self.edges[e].flow
    }

    /// Shortest augmenting paths until none is left; returns the flow value.
    pub fn max_flow(&mut self, s: usize, t: usize) -> Rational {
        let mut total = Rational::zero();
        loop {
            let mut pred: Vec<Option<usize>> = alloc::vec![None; self.nodes()];
            let mut seen = alloc::vec![false; self.nodes()];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                if u == t {
                    break;
                }
                for &e in &self.adj[u] {
                    let v = self.edges[e].to;
                    if !seen[v] && self.residual(e).is_positive() {
                        seen[v] = true;
                        pred[v] = Some(e);
                        queue.push_back(v);
                    }
                }
            }
            if !seen[t] {
                return total;
            }
            let mut bottleneck: Option<Rational> = None;
            let mut v = t;
            while let Some(e) = pred[v] {
                let r = self.residual(e);
                bottleneck = Some(match bottleneck {
                    Some(b) if b <= r => b,
                    _ => r,
                });
                v = self.edges[e ^ 1].to;
            }
            let b = bottleneck.expect("path from source");
            let mut v = t;
            while let Some(e) = pred[v] {
                self.edges[e].flow += &b;
                self.edges[e ^ 1].flow -= &b;
                v = self.edges[e ^ 1].to;
            }
            total += b;
        }
    }

    /// Nodes reachable from `s` in the residual graph (the source side of a minimum cut).
    pub fn source_side(&self, s: usize) -> Vec<bool> {
        let mut seen = alloc::vec![false; self.nodes()];
        seen[s] = true;
        let mut stack = alloc::vec![s];
        while let Some(u) = stack.pop() {
            for &e in &self.adj[u] {
                let v = self.edges[e].to;
                if !seen[v] && self.residual(e).is_positive() {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }

    /// Nodes that cannot reach `t` in the residual graph; the largest minimum-cut source side.
    pub fn maximal_source_side(&self, t: usize) -> Vec<bool> {
        let mut reaches = alloc::vec![false; self.nodes()];
        reaches[t] = true;
        let mut stack = alloc::vec![t];
        while let Some(v) = stack.pop() {
            // u reaches v if some edge u -> v has residual capacity; edge e^1 is stored at v
            for &back in &self.adj[v] {
                let e = back ^ 1;
                let u = self.edges[back].to;
                if !reaches[u] && self.residual(e).is_positive() {
                    reaches[u] = true;
                    stack.push(u);
                }
            }
        }
        reaches.iter().map(|r| !r).collect()
    }
}
