//! Ramer–Douglas–Peucker simplification, the classical baseline.

use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{perpendicular_distance, Polyline, Segment};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RdpResult {
    /// Retained indices into the original polyline, strictly increasing.
    pub kept_indices: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RdpStats {
    pub total: usize,
    pub selected: usize,
    pub dropped: usize,
    pub ratio: f64,
}

/// Simplifies `route`, keeping the farthest point of every range whose
/// maximum deviation exceeds `epsilon`.
///
/// Runs on an explicit stack; the output matches the textbook recursion
/// (split at the first maximizer, join the halves without duplicating the
/// pivot).
pub fn rdp_simplify<T: Float>(route: &Polyline<T>, epsilon: T) -> Result<RdpResult> {
    let n = route.len();
    if n < 2 {
        return Err(Error::RouteTooShort(n));
    }
    if epsilon < T::zero() || epsilon.is_nan() {
        return Err(Error::NegativeThreshold(epsilon.to_f64().unwrap_or(f64::NAN)));
    }
    let pts = &route.points;
    let mut keep = vec![false; n];
    keep[0] = true;
    keep[n - 1] = true;

    let mut stack = vec![(0usize, n - 1)];
    while let Some((first, last)) = stack.pop() {
        if last <= first + 1 {
            continue;
        }
        let chord = Segment::new(pts[first], pts[last]);
        let mut d_max = T::zero();
        let mut index = None;
        for (k, p) in pts.iter().enumerate().take(last).skip(first + 1) {
            let d = perpendicular_distance(p, &chord);
            if d > d_max {
                d_max = d;
                index = Some(k);
            }
        }
        if let Some(k) = index {
            if d_max > epsilon {
                keep[k] = true;
                stack.push((k, last));
                stack.push((first, k));
            }
        }
    }

    Ok(RdpResult {
        kept_indices: keep
            .iter()
            .enumerate()
            .filter_map(|(i, &k)| k.then_some(i))
            .collect(),
    })
}

pub fn rdp_compression_stats<T: Float>(route: &Polyline<T>, epsilon: T) -> Result<RdpStats> {
    let result = rdp_simplify(route, epsilon)?;
    let total = route.len();
    let selected = result.kept_indices.len();
    Ok(RdpStats {
        total,
        selected,
        dropped: total - selected,
        ratio: selected as f64 / total as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn route(pts: &[(f64, f64)]) -> Polyline<f64> {
        pts.iter().copied().collect()
    }

    /// Direct transcription of the recursive formulation, returning indices.
    fn rdp_recursive(pts: &[(f64, f64)], offset: usize, eps: f64) -> Vec<usize> {
        let n = pts.len();
        let line = Segment::new(pts[0].into(), pts[n - 1].into());
        let mut d_max = 0.0;
        let mut index = 0;
        for (i, q) in pts.iter().enumerate().take(n).skip(1) {
            let d = perpendicular_distance(&(*q).into(), &line);
            if d > d_max {
                d_max = d;
                index = i;
            }
        }
        if d_max > eps {
            let mut first = rdp_recursive(&pts[..=index], offset, eps);
            let second = rdp_recursive(&pts[index..], offset + index, eps);
            first.pop();
            first.extend(second);
            first
        } else {
            vec![offset, offset + n - 1]
        }
    }

    #[test]
    fn three_point_cases() {
        let flat = route(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)]);
        assert_eq!(rdp_simplify(&flat, 0.1).unwrap().kept_indices, vec![0, 2]);
        let peak = route(&[(0.0, 0.0), (1.0, 1.0), (2.0, 0.0)]);
        assert_eq!(rdp_simplify(&peak, 0.5).unwrap().kept_indices, vec![0, 1, 2]);
        assert_eq!(rdp_simplify(&peak, 1.5).unwrap().kept_indices, vec![0, 2]);
    }

    #[test]
    fn stats_examples() {
        let flat = route(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)]);
        let s = rdp_compression_stats(&flat, 0.1).unwrap();
        assert_eq!((s.selected, s.dropped), (2, 1));
        assert!((s.ratio - 2.0 / 3.0).abs() < 1e-12);

        let pair = route(&[(3.0, 1.0), (-2.0, 7.0)]);
        let s = rdp_compression_stats(&pair, 100.0).unwrap();
        assert_eq!((s.selected, s.dropped, s.ratio), (2, 0, 1.0));
    }

    #[test]
    fn errors() {
        assert_eq!(rdp_simplify(&route(&[(0.0, 0.0)]), 1.0), Err(Error::RouteTooShort(1)));
        assert_eq!(
            rdp_simplify(&route(&[(0.0, 0.0), (1.0, 1.0)]), -1.0),
            Err(Error::NegativeThreshold(-1.0))
        );
    }

    #[test]
    fn ties_pick_lowest_index() {
        // Points 1 and 3 are equally far from the chord; the split is at 1.
        let r = route(&[(0.0, 0.0), (1.0, 1.0), (2.0, 0.0), (3.0, 1.0), (4.0, 0.0)]);
        let kept = rdp_simplify(&r, 0.9).unwrap().kept_indices;
        let expected: Vec<usize> = rdp_recursive(
            &[(0.0, 0.0), (1.0, 1.0), (2.0, 0.0), (3.0, 1.0), (4.0, 0.0)],
            0,
            0.9,
        );
        assert_eq!(kept, expected);
    }

    #[test]
    fn zero_epsilon_keeps_non_collinear_points() {
        let pts: Vec<(f64, f64)> = (0..30).map(|i| (i as f64, ((i * i) % 7) as f64 + 0.1 * i as f64)).collect();
        let kept = rdp_simplify(&route(&pts), 0.0).unwrap().kept_indices;
        let collinear_free = pts.windows(3).all(|w| {
            perpendicular_distance(&w[1].into(), &Segment::new(w[0].into(), w[2].into())) > 0.0
        });
        assert!(collinear_free);
        assert_eq!(kept.len(), pts.len());
    }

    #[test]
    fn sine_golden() {
        let pts: Vec<(f64, f64)> = (0..100)
            .map(|i| {
                let x = i as f64 * 0.1;
                (x, x.sin())
            })
            .collect();
        let stats = rdp_compression_stats(&route(&pts), 0.05).unwrap();
        assert_eq!(stats.selected, 16);
        assert_eq!(stats.dropped, 84);
        assert_eq!(
            rdp_simplify(&route(&pts), 0.05).unwrap().kept_indices,
            vec![0, 10, 14, 18, 25, 40, 44, 48, 52, 56, 72, 76, 79, 83, 87, 99]
        );
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn iterative_matches_recursion(
                pts in prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 2..60),
                eps in 0.0f64..2.0
            ) {
                let kept = rdp_simplify(&route(&pts), eps).unwrap().kept_indices;
                prop_assert_eq!(kept, rdp_recursive(&pts, 0, eps));
            }

            #[test]
            fn endpoints_and_span_bound(
                pts in prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 2..60),
                eps in 0.0f64..2.0
            ) {
                let r = route(&pts);
                let kept = rdp_simplify(&r, eps).unwrap().kept_indices;
                prop_assert_eq!(kept[0], 0);
                prop_assert_eq!(*kept.last().unwrap(), pts.len() - 1);
                prop_assert!(kept.windows(2).all(|w| w[0] < w[1]));
                for w in kept.windows(2) {
                    let chord = Segment::new(r.points[w[0]], r.points[w[1]]);
                    for k in w[0] + 1..w[1] {
                        prop_assert!(perpendicular_distance(&r.points[k], &chord) <= eps);
                    }
                }
            }
        }
    }
}
