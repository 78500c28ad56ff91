use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashSet};

#[derive(Debug, PartialEq)]
struct Node {
    energy: f64,
    index: Vec<usize>,
}

impl Eq for Node {}

impl Ord for Node {
    // Reversed so that `BinaryHeap` pops the smallest energy first; ties
    // break on the multi-index for deterministic output.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .energy
            .total_cmp(&self.energy)
            .then_with(|| other.index.cmp(&self.index))
    }
}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The `k` smallest values of `Σ_i level(i, m_i)` over multi-indices
/// `m ∈ ℕⁿ`, each ladder `m ↦ level(i, m)` non-decreasing.
///
/// Best-first search over the multi-index lattice: the frontier holds
/// candidates whose predecessors have all been emitted or queued, so every
/// pop is the next smallest sum.
pub fn k_smallest_sums<F>(modes: usize, level: F, k: usize) -> Vec<(f64, Vec<usize>)>
where
    F: Fn(usize, usize) -> f64,
{
    let mut out = Vec::with_capacity(k);
    if k == 0 {
        return out;
    }
    let start = vec![0; modes];
    let energy_of = |idx: &[usize]| {
        idx.iter()
            .enumerate()
            .map(|(i, &m)| level(i, m))
            .sum::<f64>()
    };

    let mut heap = BinaryHeap::new();
    let mut seen = HashSet::new();
    heap.push(Node {
        energy: energy_of(&start),
        index: start.clone(),
    });
    seen.insert(start);

    while let Some(Node { energy, index }) = heap.pop() {
        for i in 0..modes {
            let mut next = index.clone();
            next[i] += 1;
            if seen.insert(next.clone()) {
                heap.push(Node {
                    energy: energy_of(&next),
                    index: next,
                });
            }
        }
        out.push((energy, index));
        if out.len() == k {
            break;
        }
    }
    out
}
