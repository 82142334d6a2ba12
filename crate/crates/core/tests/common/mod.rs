//! Synthetic routes and independent reference computations shared by the
//! integration tests.
#![allow(dead_code)]

use hoboroute::{CandidateGraph, Edge, Polyline};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn collinear(n: usize) -> Polyline {
    (0..n).map(|i| (i as f64, 0.0)).collect()
}

pub fn sine(n: usize, step: f64, amplitude: f64) -> Polyline {
    (0..n)
        .map(|i| {
            let x = i as f64 * step;
            (x, amplitude * x.sin())
        })
        .collect()
}

/// Square-wave switchbacks: `run` points along +x, then `run` along +y or -y.
pub fn square_zigzag(legs: usize, run: usize) -> Polyline {
    let mut pts = vec![(0.0, 0.0)];
    let (mut x, mut y) = (0.0, 0.0);
    for leg in 0..legs {
        for _ in 0..run {
            if leg % 2 == 0 {
                x += 1.0;
            } else if leg % 4 == 1 {
                y += 1.0;
            } else {
                y -= 1.0;
            }
            pts.push((x, y));
        }
    }
    pts.into_iter().collect()
}

/// Alternating up/down steps with a slowly varying slope, so no three
/// consecutive points are collinear.
pub fn triangular_zigzag(n: usize) -> Polyline {
    (0..n)
        .map(|i| {
            let x = i as f64 + 0.01 * (i * i) as f64;
            let y = if i % 2 == 0 { 0.0 } else { 1.0 + 0.05 * i as f64 };
            (x, y)
        })
        .collect()
}

/// Random walk whose heading turns by at most `max_turn` radians per step.
pub fn random_walk(seed: u64, n: usize, max_turn: f64) -> Polyline {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut x, mut y, mut heading) = (0.0f64, 0.0f64, 0.0f64);
    let mut pts = vec![(x, y)];
    for _ in 1..n {
        heading += rng.gen_range(-max_turn..=max_turn);
        let step = rng.gen_range(0.5..1.5);
        x += step * heading.cos();
        y += step * heading.sin();
        pts.push((x, y));
    }
    pts.into_iter().collect()
}

/// The named corpus the acceptance checks iterate over.
pub fn corpus() -> Vec<(String, Polyline)> {
    let mut routes = vec![
        ("collinear-12".to_string(), collinear(12)),
        ("sine-60".to_string(), sine(60, 0.2, 1.0)),
        ("sine-100".to_string(), sine(100, 0.1, 1.0)),
        ("square-zigzag".to_string(), square_zigzag(8, 4)),
        ("triangular-zigzag".to_string(), triangular_zigzag(40)),
    ];
    for seed in 0..5 {
        routes.push((format!("walk-{seed}"), random_walk(seed, 50, 0.6)));
    }
    routes
}

/// Distance from `p` to the infinite line through `a` and `b`, via the
/// orthogonal projection.
pub fn line_distance(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    if len2 == 0.0 {
        return ((p.0 - a.0).powi(2) + (p.1 - a.1).powi(2)).sqrt();
    }
    let t = ((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2;
    let (fx, fy) = (a.0 + t * dx, a.1 + t * dy);
    ((p.0 - fx).powi(2) + (p.1 - fy).powi(2)).sqrt()
}

pub fn xy(route: &Polyline, i: usize) -> (f64, f64) {
    (route.points[i].x, route.points[i].y)
}

/// Largest deviation of the points strictly between `i` and `j` from their chord.
pub fn chord_deviation(route: &Polyline, i: usize, j: usize) -> f64 {
    (i + 1..j)
        .map(|k| line_distance(xy(route, k), xy(route, i), xy(route, j)))
        .fold(0.0, f64::max)
}

/// Out-degree of every vertex after thinning, recomputed from scratch.
pub fn reference_out_degrees(route: &Polyline, epsilon: f64) -> Vec<usize> {
    let n = route.len();
    (0..n)
        .map(|i| (i + 1..n).filter(|&j| j == i + 1 || chord_deviation(route, i, j) <= epsilon).count())
        .collect()
}

/// Fewest edges on any start-to-end path, by breadth-first search.
pub fn bfs_hops(g: &CandidateGraph) -> usize {
    let n = g.num_vertices();
    let mut dist = vec![usize::MAX; n];
    dist[0] = 0;
    let mut queue = std::collections::VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        for e in g.forward(v) {
            if dist[e.to] == usize::MAX {
                dist[e.to] = dist[v] + 1;
                queue.push_back(e.to);
            }
        }
    }
    dist[n - 1]
}

/// Every start-to-end path, by depth-first enumeration.
pub fn all_paths(g: &CandidateGraph) -> Vec<Vec<usize>> {
    fn walk(g: &CandidateGraph, v: usize, stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if v + 1 == g.num_vertices() {
            out.push(stack.clone());
            return;
        }
        for e in g.forward(v) {
            stack.push(e.to);
            walk(g, e.to, stack, out);
            stack.pop();
        }
    }
    let mut out = Vec::new();
    walk(g, 0, &mut vec![0], &mut out);
    out
}

pub fn graph(n: usize, edges: &[(usize, usize)]) -> CandidateGraph {
    CandidateGraph::from_edges(n, edges.iter().map(|&(a, b)| Edge::unit(a, b))).unwrap()
}

pub fn toy_graph() -> CandidateGraph {
    graph(5, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (2, 4), (3, 4)])
}

/// `(i, i + 1)` and `(i, i + 2)` for every `i`.
pub fn skip_one_chain(n: usize) -> CandidateGraph {
    let edges: Vec<(usize, usize)> = (0..n - 1)
        .flat_map(|i| std::iter::once((i, i + 1)).chain((i + 2 < n).then_some((i, i + 2))))
        .collect();
    graph(n, &edges)
}
