//! Snapshot-level shortest paths and delivery cycles.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::{DeliveryGraph, EdgeId};

/// Which way edges are traversed during a search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    /// Walk edges head-to-tail; distances then read "cost from v to source".
    Reverse,
}

/// Min-heap entry ordered by (score, vertex index).
///
/// The vertex tie-break makes pop order, and therefore every returned path,
/// deterministic: vertices are stored sorted by id, so index order is id
/// order.
#[derive(Debug, Clone, Copy, PartialEq)]
struct MinScored(f64, usize);

impl Eq for MinScored {}

impl Ord for MinScored {
    fn cmp(&self, other: &Self) -> Ordering {
        // Reversed for BinaryHeap's max-heap; smaller score pops first,
        // smaller vertex breaks ties.
        other
            .0
            .partial_cmp(&self.0)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.1.cmp(&self.1))
    }
}

impl PartialOrd for MinScored {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Dijkstra over one fixed cost vector.
///
/// Returns per-vertex distances (`INFINITY` when unreachable) and the
/// predecessor edge of each settled vertex.
fn dijkstra(
    graph: &DeliveryGraph,
    edge_costs: &[f64],
    source: usize,
    target: Option<usize>,
    forbidden: Option<&[bool]>,
    direction: Direction,
) -> (Vec<f64>, Vec<Option<usize>>) {
    let n = graph.vertex_count();
    let mut dist = vec![f64::INFINITY; n];
    let mut pred = vec![None; n];
    let mut settled = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[source] = 0.0;
    heap.push(MinScored(0.0, source));

    while let Some(MinScored(score, v)) = heap.pop() {
        if settled[v] {
            continue;
        }
        settled[v] = true;
        if target == Some(v) {
            break;
        }
        let edges = match direction {
            Direction::Forward => graph.out_edges(v),
            Direction::Reverse => graph.in_edges(v),
        };
        for &eidx in edges {
            let next = match direction {
                Direction::Forward => graph.head_idx(eidx),
                Direction::Reverse => graph.tail_idx(eidx),
            };
            if settled[next] || forbidden.is_some_and(|f| f[next]) {
                continue;
            }
            let candidate = score + edge_costs[eidx];
            if candidate < dist[next] {
                dist[next] = candidate;
                pred[next] = Some(eidx);
                heap.push(MinScored(candidate, next));
            }
        }
    }
    (dist, pred)
}

/// Minimum-cost distances from `source` to every vertex (`Forward`) or from
/// every vertex to `source` (`Reverse`).
pub fn single_source_costs(
    graph: &DeliveryGraph,
    edge_costs: &[f64],
    source: usize,
    direction: Direction,
) -> Vec<f64> {
    dijkstra(graph, edge_costs, source, None, None, direction).0
}

/// Minimum-cost simple path between two vertices under fixed edge costs,
/// avoiding `forbidden` vertices. `None` when unreachable; an empty path
/// when `src == dst`.
pub fn shortest_path(
    graph: &DeliveryGraph,
    edge_costs: &[f64],
    src: usize,
    dst: usize,
    forbidden: Option<&[bool]>,
) -> Option<Vec<EdgeId>> {
    debug_assert!(!forbidden.is_some_and(|f| f[src]));
    if src == dst {
        return Some(Vec::new());
    }
    let (dist, pred) = dijkstra(
        graph,
        edge_costs,
        src,
        Some(dst),
        forbidden,
        Direction::Forward,
    );
    if dist[dst].is_infinite() {
        return None;
    }
    let mut path = Vec::new();
    let mut v = dst;
    while v != src {
        let eidx = pred[v].expect("finite distance implies a predecessor");
        path.push(graph.edge(eidx).id);
        v = graph.tail_idx(eidx);
    }
    path.reverse();
    Some(path)
}

/// A depot -> destination -> depot cycle built from two simple paths.
#[derive(Debug, Clone, PartialEq)]
pub struct Cycle {
    pub outbound: Vec<EdgeId>,
    pub inbound: Vec<EdgeId>,
    pub outbound_cost: f64,
    pub inbound_cost: f64,
}

impl Cycle {
    pub fn total_cost(&self) -> f64 {
        self.outbound_cost + self.inbound_cost
    }

    /// All edges in flight order.
    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.outbound.iter().chain(self.inbound.iter()).copied()
    }
}

/// Cheapest delivery cycle: the loaded shortest path out plus the empty
/// shortest path back. `None` when either leg is unreachable.
pub fn shortest_cycle(
    graph: &DeliveryGraph,
    loaded_costs: &[f64],
    empty_costs: &[f64],
    depot: usize,
    destination: usize,
) -> Option<Cycle> {
    debug_assert_ne!(depot, destination);
    let outbound = shortest_path(graph, loaded_costs, depot, destination, None)?;
    let inbound = shortest_path(graph, empty_costs, destination, depot, None)?;
    let cost_of = |path: &[EdgeId], costs: &[f64]| {
        path.iter()
            .map(|&id| costs[graph.edge_idx(id).unwrap()])
            .sum::<f64>()
    };
    let outbound_cost = cost_of(&outbound, loaded_costs);
    let inbound_cost = cost_of(&inbound, empty_costs);
    Some(Cycle {
        outbound,
        inbound,
        outbound_cost,
        inbound_cost,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::testutil::symmetric_graph;
    use crate::graph::{DeliveryGraph, Edge, Vertex, WindKey};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Independent oracle: Bellman-Ford edge relaxation.
    fn bellman_ford(graph: &DeliveryGraph, costs: &[f64], source: usize) -> Vec<f64> {
        let n = graph.vertex_count();
        let mut dist = vec![f64::INFINITY; n];
        dist[source] = 0.0;
        for _ in 0..n {
            let mut changed = false;
            for (eidx, e) in graph.edges().iter().enumerate() {
                let t = graph.vertex_idx(e.tail).unwrap();
                let h = graph.vertex_idx(e.head).unwrap();
                if dist[t].is_finite() && dist[t] + costs[eidx] < dist[h] {
                    dist[h] = dist[t] + costs[eidx];
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        dist
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, extra: usize) -> (DeliveryGraph, Vec<f64>) {
        // Random connected symmetric graph: a random tree plus extra chords.
        let points: Vec<(f64, f64)> = (0..n)
            .map(|_| (rng.gen_range(0.0..1000.0), rng.gen_range(0.0..1000.0)))
            .collect();
        let mut segments = Vec::new();
        for v in 1..n {
            segments.push((rng.gen_range(0..v) as u32, v as u32));
        }
        for _ in 0..extra {
            let a = rng.gen_range(0..n) as u32;
            let b = rng.gen_range(0..n) as u32;
            if a != b && !segments.contains(&(a, b)) && !segments.contains(&(b, a)) {
                segments.push((a, b));
            }
        }
        let g = symmetric_graph(&points, &segments, 0);
        let costs: Vec<f64> = g
            .edges()
            .iter()
            .map(|e| e.length_m * rng.gen_range(0.5..2.0))
            .collect();
        (g, costs)
    }

    #[test]
    fn trivial_and_unreachable_cases() {
        let g = symmetric_graph(&[(0.0, 0.0), (10.0, 0.0)], &[(0, 1)], 0);
        let costs = vec![1.0, 1.0];
        assert_eq!(shortest_path(&g, &costs, 0, 0, None), Some(vec![]));
        let mut forbidden = vec![false, false];
        forbidden[1] = true;
        assert_eq!(shortest_path(&g, &costs, 0, 1, Some(&forbidden)), None);
    }

    #[test]
    fn matches_bellman_ford_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let n = rng.gen_range(3..12);
            let (g, costs) = random_graph(&mut rng, n, n);
            let oracle = bellman_ford(&g, &costs, 0);
            for (dst, &expected) in oracle.iter().enumerate().skip(1) {
                match shortest_path(&g, &costs, 0, dst, None) {
                    Some(path) => {
                        let cost: f64 = path.iter().map(|&id| costs[g.edge_idx(id).unwrap()]).sum();
                        assert_eq!(cost, expected, "n={n} dst={dst}");
                    }
                    None => assert!(expected.is_infinite()),
                }
            }
        }
    }

    #[test]
    fn removing_off_path_vertex_preserves_cost() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..30 {
            let n = rng.gen_range(4..10);
            let (g, costs) = random_graph(&mut rng, n, 2 * n);
            let dst = n - 1;
            let Some(path) = shortest_path(&g, &costs, 0, dst, None) else {
                continue;
            };
            let on_path: std::collections::HashSet<usize> = path
                .iter()
                .flat_map(|&id| {
                    let eidx = g.edge_idx(id).unwrap();
                    [g.tail_idx(eidx), g.head_idx(eidx)]
                })
                .collect();
            let Some(off) = (0..n).find(|v| !on_path.contains(v)) else {
                continue;
            };
            let mut forbidden = vec![false; n];
            forbidden[off] = true;
            let cost: f64 = path.iter().map(|&id| costs[g.edge_idx(id).unwrap()]).sum();
            let with_removed = shortest_path(&g, &costs, 0, dst, Some(&forbidden)).unwrap();
            let cost2: f64 = with_removed
                .iter()
                .map(|&id| costs[g.edge_idx(id).unwrap()])
                .sum();
            assert_eq!(cost, cost2);
        }
    }

    #[test]
    fn reverse_direction_matches_forward_on_transposed_costs() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let (g, costs) = random_graph(&mut rng, 8, 10);
        let to_depot = single_source_costs(&g, &costs, 0, Direction::Reverse);
        for (v, &cost_back) in to_depot.iter().enumerate() {
            let direct = match shortest_path(&g, &costs, v, 0, None) {
                Some(p) => p.iter().map(|&id| costs[g.edge_idx(id).unwrap()]).sum(),
                None => f64::INFINITY,
            };
            assert_eq!(cost_back, direct);
        }
    }

    #[test]
    fn cycle_on_symmetric_costs_mirrors_outbound() {
        let g = symmetric_graph(
            &[(0.0, 0.0), (300.0, 0.0), (600.0, 0.0), (300.0, 400.0)],
            &[(0, 1), (1, 2), (0, 3), (3, 2)],
            0,
        );
        let costs: Vec<f64> = g.edges().iter().map(|e| e.length_m).collect();
        let cycle = shortest_cycle(&g, &costs, &costs, 0, 2).unwrap();
        assert_eq!(cycle.outbound_cost, cycle.inbound_cost);
        assert_eq!(cycle.outbound.len(), cycle.inbound.len());
        // Lower bound: twice the metric distance times the unit cost (1 here).
        assert!(cycle.total_cost() >= 2.0 * 600.0 - 1e-9);
    }

    /// Exhaustive oracle: enumerate all simple paths by DFS.
    fn all_simple_path_costs(
        graph: &DeliveryGraph,
        costs: &[f64],
        src: usize,
        dst: usize,
    ) -> Vec<f64> {
        fn dfs(
            graph: &DeliveryGraph,
            costs: &[f64],
            v: usize,
            dst: usize,
            visited: &mut Vec<bool>,
            acc: f64,
            out: &mut Vec<f64>,
        ) {
            if v == dst {
                out.push(acc);
                return;
            }
            for &eidx in graph.out_edges(v) {
                let h = graph.head_idx(eidx);
                if !visited[h] {
                    visited[h] = true;
                    dfs(graph, costs, h, dst, visited, acc + costs[eidx], out);
                    visited[h] = false;
                }
            }
        }
        let mut visited = vec![false; graph.vertex_count()];
        visited[src] = true;
        let mut out = Vec::new();
        dfs(graph, costs, src, dst, &mut visited, 0.0, &mut out);
        out
    }

    #[test]
    fn cycle_matches_exhaustive_enumeration_on_small_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..25 {
            let n = rng.gen_range(3..=7);
            let (g, loaded) = random_graph(&mut rng, n, n);
            let empty: Vec<f64> = loaded.iter().map(|c| c * 0.7).collect();
            let dst = n - 1;
            let best_out = all_simple_path_costs(&g, &loaded, 0, dst)
                .into_iter()
                .fold(f64::INFINITY, f64::min);
            let best_back = all_simple_path_costs(&g, &empty, dst, 0)
                .into_iter()
                .fold(f64::INFINITY, f64::min);
            match shortest_cycle(&g, &loaded, &empty, 0, dst) {
                Some(cycle) => {
                    assert_eq!(cycle.outbound_cost, best_out);
                    assert_eq!(cycle.inbound_cost, best_back);
                }
                None => assert!(best_out.is_infinite() || best_back.is_infinite()),
            }
        }
    }

    #[test]
    fn deterministic_tie_break_prefers_smaller_vertex_id() {
        // Two equal-cost routes 0->1->3 and 0->2->3; the 1-route must win.
        let vertices = (0..4)
            .map(|id| Vertex {
                id,
                x: id as f64,
                y: 0.0,
            })
            .collect::<Vec<_>>();
        let mut edges = Vec::new();
        let mut add = |id, tail, head| {
            edges.push(Edge {
                id,
                tail,
                head,
                length_m: 10.0,
                wind_key: WindKey::Single("global".into()),
            })
        };
        add(0, 0, 1);
        add(1, 1, 0);
        add(2, 0, 2);
        add(3, 2, 0);
        add(4, 1, 3);
        add(5, 3, 1);
        add(6, 2, 3);
        add(7, 3, 2);
        let g = DeliveryGraph::new(vertices, edges, 0).unwrap();
        let costs = vec![1.0; 8];
        let path = shortest_path(&g, &costs, 0, 3, None).unwrap();
        assert_eq!(path, vec![0, 4]);
    }
}
