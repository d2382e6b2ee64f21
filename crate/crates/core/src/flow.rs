//! Integral max-flow (Dinic) and min-cost max-flow (successive shortest
//! paths with Johnson potentials).

use alloc::collections::{BinaryHeap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

/// Index of a forward arc as returned by [`Network::add_arc`].
pub type ArcId = usize;

#[derive(Clone, Debug)]
struct Arc {
    to: usize,
    residual: i64,
    cost: i64,
}

/// A directed network with integral capacities. Arc `2e` is the forward arc,
/// `2e + 1` its residual twin.
#[derive(Clone, Debug)]
pub struct Network {
    adjacency: Vec<Vec<usize>>,
    arcs: Vec<Arc>,
    capacity: Vec<i64>,
}

const INF: i64 = i64::MAX / 4;

impl Network {
    pub fn new(nodes: usize) -> Self {
        Network {
            adjacency: vec![Vec::new(); nodes],
            arcs: Vec::new(),
            capacity: Vec::new(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn add_arc(&mut self, from: usize, to: usize, capacity: i64, cost: i64) -> ArcId {
        debug_assert!(capacity >= 0);
        let id = self.arcs.len();
        self.adjacency[from].push(id);
        self.adjacency[to].push(id + 1);
        self.arcs.push(Arc {
            to,
            residual: capacity,
            cost,
        });
        self.arcs.push(Arc {
            to: from,
            residual: 0,
            cost: -cost,
        });
        self.capacity.push(capacity);
        id / 2
    }

    /// Flow currently routed through the forward arc `arc`.
    pub fn flow(&self, arc: ArcId) -> i64 {
        self.arcs[2 * arc + 1].residual
    }

    /// Maximum flow from `source` to `sink`, augmenting the current flow.
    pub fn max_flow(&mut self, source: usize, sink: usize) -> i64 {
        let n = self.node_count();
        let mut total = 0;
        let mut level = vec![-1i32; n];
        let mut cursor = vec![0usize; n];
        loop {
            level.fill(-1);
            level[source] = 0;
            let mut queue = VecDeque::from([source]);
            while let Some(u) = queue.pop_front() {
                for &e in &self.adjacency[u] {
                    let arc = &self.arcs[e];
                    if arc.residual > 0 && level[arc.to] < 0 {
                        level[arc.to] = level[u] + 1;
                        queue.push_back(arc.to);
                    }
                }
            }
            if level[sink] < 0 {
                return total;
            }
            cursor.fill(0);
            loop {
                let pushed = self.blocking_dfs(source, sink, INF, &level, &mut cursor);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
    }

    fn blocking_dfs(
        &mut self,
        u: usize,
        sink: usize,
        limit: i64,
        level: &[i32],
        cursor: &mut [usize],
    ) -> i64 {
        if u == sink {
            return limit;
        }
        while cursor[u] < self.adjacency[u].len() {
            let e = self.adjacency[u][cursor[u]];
            let (to, residual) = (self.arcs[e].to, self.arcs[e].residual);
            if residual > 0 && level[to] == level[u] + 1 {
                let pushed = self.blocking_dfs(to, sink, limit.min(residual), level, cursor);
                if pushed > 0 {
                    self.arcs[e].residual -= pushed;
                    self.arcs[e ^ 1].residual += pushed;
                    return pushed;
                }
            }
            cursor[u] += 1;
        }
        0
    }

    /// Routes a maximum flow of minimum total cost; returns `(flow, cost)`.
    /// Arc costs must be non-negative and the network must start empty.
    pub fn min_cost_max_flow(&mut self, source: usize, sink: usize) -> (i64, i64) {
        let n = self.node_count();
        let mut potential = vec![0i64; n];
        let mut dist = vec![INF; n];
        let mut parent = vec![usize::MAX; n];
        let (mut flow, mut cost) = (0, 0);
        loop {
            dist.fill(INF);
            parent.fill(usize::MAX);
            dist[source] = 0;
            let mut heap = BinaryHeap::from([Reverse((0i64, source))]);
            while let Some(Reverse((d, u))) = heap.pop() {
                if d > dist[u] {
                    continue;
                }
                for &e in &self.adjacency[u] {
                    let arc = &self.arcs[e];
                    if arc.residual <= 0 {
                        continue;
                    }
                    let nd = d + arc.cost + potential[u] - potential[arc.to];
                    if nd < dist[arc.to] {
                        dist[arc.to] = nd;
                        parent[arc.to] = e;
                        heap.push(Reverse((nd, arc.to)));
                    }
                }
            }
            if dist[sink] >= INF {
                return (flow, cost);
            }
            for v in 0..n {
                if dist[v] < INF {
                    potential[v] += dist[v];
                }
            }
            let mut push = INF;
            let mut v = sink;
            while v != source {
                let e = parent[v];
                push = push.min(self.arcs[e].residual);
                v = self.arcs[e ^ 1].to;
            }
            let mut v = sink;
            while v != source {
                let e = parent[v];
                self.arcs[e].residual -= push;
                self.arcs[e ^ 1].residual += push;
                cost += push * self.arcs[e].cost;
                v = self.arcs[e ^ 1].to;
            }
            flow += push;
        }
    }

    /// Capacity the forward arc was created with.
    pub fn capacity(&self, arc: ArcId) -> i64 {
        self.capacity[arc]
    }
}
