//! Machine checks of the power-composition equivalences and tools for
//! comparing membership maps.
//!
//! The orbit of `z' = (z^m + c)^n` is, term by term, the `n`-th power of
//! the orbit of `z' = z^(mn) + c`; [`power_relation_check`] measures how
//! far floating-point iteration drifts from that identity. At the map
//! level the corresponding sets are equal, so [`compare_maps`] reports
//! pixel agreement and whether any disagreement sits away from the
//! membership boundary.

use std::fmt;

use crate::complex::{int_pow, is_overflowed, Complex};
use crate::grid::MembershipMap;

/// Max over the orbit prefix of `|b_k - a_k^n| / (1 + |a_k|^n)`, where
/// `a` runs `z^(mn) + c` and `b` runs `(z^m + c)^n`, both from 0.
///
/// The comparison stops once `|a_k|` passes `prefix_bound` (divergent
/// orbits grow too fast for a meaningful relative measure) or either
/// orbit overflows; the deviation over the finite prefix is returned.
pub fn power_relation_check(c: Complex, m: u32, n: u32, k_max: u32, prefix_bound: f64) -> f64 {
    debug_assert!(m >= 1 && n >= 1);
    let mut a = Complex::new(0.0, 0.0);
    let mut b = Complex::new(0.0, 0.0);
    let mut worst: f64 = 0.0;
    for _ in 0..k_max {
        a = int_pow(a, m * n) + c;
        b = int_pow(int_pow(b, m) + c, n);
        if is_overflowed(a) || is_overflowed(b) || a.norm() > prefix_bound {
            break;
        }
        let a_n = int_pow(a, n);
        let deviation = (b - a_n).norm() / (1.0 + a_n.norm());
        worst = worst.max(deviation);
    }
    worst
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridMismatch;

impl fmt::Display for GridMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "membership maps were scanned on different grids")
    }
}

impl std::error::Error for GridMismatch {}

/// Pixel-level agreement between two membership maps.
#[derive(Debug, Clone)]
pub struct MapComparison {
    pub total: usize,
    pub disagree_count: usize,
    /// Disagreeing pixels that touch a membership boundary in either map
    /// (8-neighborhood).
    pub boundary_adjacent_count: usize,
    /// Disagreement mask, row-major like the map cells.
    pub mask: Vec<bool>,
}

impl MapComparison {
    pub fn agree_fraction(&self) -> f64 {
        1.0 - self.disagree_count as f64 / self.total as f64
    }

    /// Fraction of disagreements that are boundary-adjacent; 1 when there
    /// are none at all.
    pub fn boundary_adjacent_fraction(&self) -> f64 {
        if self.disagree_count == 0 {
            1.0
        } else {
            self.boundary_adjacent_count as f64 / self.disagree_count as f64
        }
    }

    pub fn all_disagreements_boundary_adjacent(&self) -> bool {
        self.boundary_adjacent_count == self.disagree_count
    }
}

/// Compares set membership pixel by pixel. Invalid orbits count as
/// escaped: only bounded-vs-not matters here, because equivalent maps
/// carry power-related iterate sequences whose escape timing differs.
pub fn compare_maps(a: &MembershipMap, b: &MembershipMap) -> Result<MapComparison, GridMismatch> {
    if a.grid != b.grid {
        return Err(GridMismatch);
    }
    let width = a.grid.width as usize;
    let height = a.grid.height as usize;
    let in_a: Vec<bool> = a.cells.iter().map(|s| s.is_bounded()).collect();
    let in_b: Vec<bool> = b.cells.iter().map(|s| s.is_bounded()).collect();

    let mask: Vec<bool> = in_a.iter().zip(&in_b).map(|(x, y)| x != y).collect();
    let disagree_count = mask.iter().filter(|&&d| d).count();

    let on_boundary = |member: &[bool], i: usize, j: usize| -> bool {
        let own = member[j * width + i];
        for dj in -1i64..=1 {
            for di in -1i64..=1 {
                if di == 0 && dj == 0 {
                    continue;
                }
                let (ni, nj) = (i as i64 + di, j as i64 + dj);
                if ni < 0 || nj < 0 || ni >= width as i64 || nj >= height as i64 {
                    continue;
                }
                if member[nj as usize * width + ni as usize] != own {
                    return true;
                }
            }
        }
        false
    };

    let mut boundary_adjacent_count = 0;
    for j in 0..height {
        for i in 0..width {
            if mask[j * width + i] && (on_boundary(&in_a, i, j) || on_boundary(&in_b, i, j)) {
                boundary_adjacent_count += 1;
            }
        }
    }

    Ok(MapComparison {
        total: mask.len(),
        disagree_count,
        boundary_adjacent_count,
        mask,
    })
}

/// Sizes of the 4-connected components of the bounded region, largest
/// first. The component count is the vector's length.
pub fn bounded_component_sizes(map: &MembershipMap) -> Vec<usize> {
    let width = map.grid.width as usize;
    let height = map.grid.height as usize;
    let bounded: Vec<bool> = map.cells.iter().map(|s| s.is_bounded()).collect();
    let mut visited = vec![false; bounded.len()];
    let mut sizes = Vec::new();
    let mut stack = Vec::new();

    for start in 0..bounded.len() {
        if !bounded[start] || visited[start] {
            continue;
        }
        let mut size = 0usize;
        visited[start] = true;
        stack.push(start);
        while let Some(idx) = stack.pop() {
            size += 1;
            let (i, j) = (idx % width, idx / width);
            let mut push = |ni: usize, nj: usize| {
                let n = nj * width + ni;
                if bounded[n] && !visited[n] {
                    visited[n] = true;
                    stack.push(n);
                }
            };
            if i > 0 {
                push(i - 1, j);
            }
            if i + 1 < width {
                push(i + 1, j);
            }
            if j > 0 {
                push(i, j - 1);
            }
            if j + 1 < height {
                push(i, j + 1);
            }
        }
        sizes.push(size);
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

/// Number of 4-connected components of the bounded region.
pub fn connected_components(map: &MembershipMap) -> usize {
    bounded_component_sizes(map).len()
}
