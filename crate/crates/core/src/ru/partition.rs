use std::collections::BTreeMap;

use super::{RuLayout, RuNode};

/// Tilings of the SRU line by valid RU nodes.
///
/// Depth-first over positions, preferring the widest node at each step, so
/// the first partition is the whole channel and the last is the finest one.
/// Enumeration stops after `max_count` partitions.
pub fn enumerate_valid_partitions(layout: &RuLayout, max_count: usize) -> Vec<Vec<RuNode>> {
    // Distinct spans keyed by start, widest first; for a span present on
    // several rows the topmost node represents it.
    let mut by_start: BTreeMap<usize, Vec<RuNode>> = BTreeMap::new();
    for row in layout.rows() {
        for n in row {
            let v = by_start.entry(n.start).or_default();
            if !v.iter().any(|m| m.len == n.len) {
                v.push(*n);
            }
        }
    }
    for v in by_start.values_mut() {
        v.sort_by_key(|n| std::cmp::Reverse(n.len));
    }

    let mut out = Vec::new();
    let mut current = Vec::new();
    walk(0, layout.line_len(), &by_start, &mut current, &mut out, max_count);
    out
}

fn walk(
    pos: usize,
    end: usize,
    by_start: &BTreeMap<usize, Vec<RuNode>>,
    current: &mut Vec<RuNode>,
    out: &mut Vec<Vec<RuNode>>,
    max_count: usize,
) {
    if out.len() >= max_count {
        return;
    }
    if pos == end {
        out.push(current.clone());
        return;
    }
    let Some(cands) = by_start.get(&pos) else {
        return;
    };
    for n in cands {
        current.push(*n);
        walk(pos + n.len, end, by_start, current, out, max_count);
        current.pop();
        if out.len() >= max_count {
            return;
        }
    }
}

impl RuLayout {
    /// All nodes of one row, which is itself a valid partition.
    pub fn partition_at_level(&self, level: usize) -> Vec<RuNode> {
        self.row(level).to_vec()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ru::{Bandwidth, LayoutKind};

    /// Hand-written RU tree: a node is either a leaf or a list of children.
    enum Tree {
        Leaf,
        Node(Vec<Tree>),
    }

    fn count(t: &Tree) -> u64 {
        match t {
            Tree::Leaf => 1,
            Tree::Node(ch) => 1 + ch.iter().map(count).product::<u64>(),
        }
    }

    fn ru52() -> Tree {
        Tree::Node(vec![Tree::Leaf, Tree::Leaf])
    }
    fn ru106() -> Tree {
        Tree::Node(vec![ru52(), ru52()])
    }
    fn ru242() -> Tree {
        Tree::Node(vec![ru106(), Tree::Leaf, ru106()])
    }
    fn ru484() -> Tree {
        Tree::Node(vec![ru242(), ru242()])
    }
    fn binary(depth: usize) -> Tree {
        if depth == 1 {
            Tree::Leaf
        } else {
            Tree::Node(vec![binary(depth - 1), binary(depth - 1)])
        }
    }

    #[test]
    fn counts_match_tree_recursion() {
        let cases = [
            (RuLayout::standard(Bandwidth::Mhz20), count(&ru242())),
            (RuLayout::standard(Bandwidth::Mhz40), count(&ru484())),
            (RuLayout::binary(Bandwidth::Mhz20), count(&binary(4))),
            (RuLayout::binary(Bandwidth::Mhz40), count(&binary(5))),
        ];
        for (layout, expect) in cases {
            let parts = enumerate_valid_partitions(&layout, usize::MAX);
            assert_eq!(parts.len() as u64, expect, "{}", layout.dump());
        }
        assert_eq!(count(&ru484()), 677);
    }

    #[test]
    fn every_partition_tiles_the_line() {
        for kind in [LayoutKind::Standard, LayoutKind::Binary] {
            let layout = RuLayout::new(kind, Bandwidth::Mhz40);
            for p in enumerate_valid_partitions(&layout, usize::MAX) {
                let mut pos = 0;
                for n in &p {
                    assert_eq!(n.start, pos);
                    pos += n.len;
                }
                assert_eq!(pos, layout.line_len());
            }
        }
    }

    #[test]
    fn first_is_whole_channel_and_last_is_finest() {
        let layout = RuLayout::binary(Bandwidth::Mhz20);
        let parts = enumerate_valid_partitions(&layout, usize::MAX);
        assert_eq!(parts[0], vec![*layout.root()]);
        let last = parts.last().unwrap();
        assert_eq!(last.len(), 8);
        assert!(last.iter().all(|n| n.level == 3));
        assert_eq!(layout.partition_at_level(3), *last);
    }

    #[test]
    fn cap_is_respected_and_deterministic() {
        let layout = RuLayout::standard(Bandwidth::Mhz160);
        let a = enumerate_valid_partitions(&layout, 50);
        let b = enumerate_valid_partitions(&layout, 50);
        assert_eq!(a.len(), 50);
        assert_eq!(a, b);
    }
}
