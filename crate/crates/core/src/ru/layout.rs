use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::{level_count, sru_count, Bandwidth, LayoutKind, RuNode, SRU_TONES};
use crate::error::RuError;

/// A complete RU tree for one bandwidth, stored row by row.
#[derive(Debug, Clone, PartialEq)]
pub struct RuLayout {
    kind: LayoutKind,
    bandwidth: Bandwidth,
    rows: Vec<Vec<RuNode>>,
    line_len: usize,
}

/// (start, len, tones) triples for one row.
type Row = Vec<(usize, usize, u32)>;

fn standard_rows(bw: Bandwidth, offset: usize) -> Vec<Row> {
    match bw {
        Bandwidth::Mhz20 => {
            let o = offset;
            vec![
                vec![(o, 9, 242)],
                vec![(o, 4, 106), (o + 4, 1, 26), (o + 5, 4, 106)],
                vec![
                    (o, 2, 52),
                    (o + 2, 2, 52),
                    (o + 4, 1, 26),
                    (o + 5, 2, 52),
                    (o + 7, 2, 52),
                ],
                (0..9).map(|k| (o + k, 1, 26)).collect(),
            ]
        }
        Bandwidth::Mhz40 => {
            let lo = standard_rows(Bandwidth::Mhz20, offset);
            let hi = standard_rows(Bandwidth::Mhz20, offset + 9);
            let mut rows = vec![vec![(offset, 18, 484)]];
            rows.extend(lo.into_iter().zip(hi).map(|(mut a, b)| {
                a.extend(b);
                a
            }));
            rows
        }
        Bandwidth::Mhz80 => {
            // Two 40 MHz halves around a centre 26-tone unit that exists on
            // every row below the root.
            let lo = standard_rows(Bandwidth::Mhz40, offset);
            let hi = standard_rows(Bandwidth::Mhz40, offset + 19);
            let mut rows = vec![vec![(offset, 37, 996)]];
            rows.extend(lo.into_iter().zip(hi).map(|(mut a, b)| {
                a.push((offset + 18, 1, SRU_TONES));
                a.extend(b);
                a
            }));
            rows
        }
        Bandwidth::Mhz160 => {
            let lo = standard_rows(Bandwidth::Mhz80, offset);
            let hi = standard_rows(Bandwidth::Mhz80, offset + 37);
            let mut rows = vec![vec![(offset, 74, 1992)]];
            rows.extend(lo.into_iter().zip(hi).map(|(mut a, b)| {
                a.extend(b);
                a
            }));
            rows
        }
    }
}

fn binary_rows(levels: usize) -> Vec<Row> {
    let leaves = 1usize << (levels - 1);
    (0..levels)
        .map(|l| {
            let width = leaves >> l;
            let tones = SRU_TONES << (levels - 1 - l);
            (0..(1usize << l)).map(|i| (i * width, width, tones)).collect()
        })
        .collect()
}

impl RuLayout {
    pub fn new(kind: LayoutKind, bandwidth: Bandwidth) -> Self {
        let raw = match kind {
            LayoutKind::Standard => standard_rows(bandwidth, 0),
            LayoutKind::Binary => binary_rows(level_count(bandwidth, kind)),
        };
        let rows: Vec<Vec<RuNode>> = raw
            .into_iter()
            .enumerate()
            .map(|(level, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(index, (start, len, tones))| RuNode {
                        level,
                        index,
                        tones,
                        start,
                        len,
                    })
                    .collect()
            })
            .collect();
        let line_len = rows[0][0].len;
        RuLayout {
            kind,
            bandwidth,
            rows,
            line_len,
        }
    }

    pub fn standard(bandwidth: Bandwidth) -> Self {
        Self::new(LayoutKind::Standard, bandwidth)
    }

    pub fn binary(bandwidth: Bandwidth) -> Self {
        Self::new(LayoutKind::Binary, bandwidth)
    }

    pub fn kind(&self) -> LayoutKind {
        self.kind
    }

    pub fn bandwidth(&self) -> Bandwidth {
        self.bandwidth
    }

    pub fn levels(&self) -> usize {
        self.rows.len()
    }

    /// Length of the SRU line. Equals `sru_count` for the Standard layout
    /// and the leaf count `2^(L-1)` for the Binary layout.
    pub fn line_len(&self) -> usize {
        self.line_len
    }

    pub fn root(&self) -> &RuNode {
        &self.rows[0][0]
    }

    pub fn row(&self, level: usize) -> &[RuNode] {
        self.rows.get(level).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn rows(&self) -> &[Vec<RuNode>] {
        &self.rows
    }

    pub fn node(&self, level: usize, index: usize) -> Result<RuNode, RuError> {
        self.rows
            .get(level)
            .and_then(|r| r.get(index))
            .copied()
            .ok_or(RuError::NoSuchNode { level, index })
    }

    /// The topmost node covering exactly `[start, start + len)`.
    pub fn find_span(&self, start: usize, len: usize) -> Option<RuNode> {
        self.rows
            .iter()
            .flat_map(|r| r.iter())
            .find(|n| n.start == start && n.len == len)
            .copied()
    }

    /// Nodes in the next row that lie inside `ru`.
    pub fn children(&self, ru: &RuNode) -> Vec<RuNode> {
        self.row(ru.level + 1)
            .iter()
            .filter(|n| ru.contains_span(n.start, n.len))
            .copied()
            .collect()
    }

    pub fn split(&self, ru: &RuNode) -> Result<(RuNode, RuNode), RuError> {
        let refuse = RuError::SplitNotAllowed {
            level: ru.level,
            index: ru.index,
        };
        if self.node(ru.level, ru.index)? != *ru {
            return Err(RuError::NoSuchNode {
                level: ru.level,
                index: ru.index,
            });
        }
        match self.kind {
            LayoutKind::Binary => {
                if ru.level + 1 >= self.levels() {
                    return Err(refuse);
                }
                Ok((
                    self.node(ru.level + 1, 2 * ru.index)?,
                    self.node(ru.level + 1, 2 * ru.index + 1)?,
                ))
            }
            LayoutKind::Standard => match self.children(ru).as_slice() {
                [a, b] => Ok((*a, *b)),
                _ => Err(refuse),
            },
        }
    }

    /// The node covering exactly the union of two adjacent nodes, if any.
    pub fn merge(&self, a: &RuNode, b: &RuNode) -> Option<RuNode> {
        let (l, r) = if a.start <= b.start { (a, b) } else { (b, a) };
        if l.start + l.len != r.start {
            return None;
        }
        self.find_span(l.start, l.len + r.len)
    }

    /// True iff the set of 1-based SRU indices is exactly the span of one node.
    pub fn can_merge(&self, srus: &[usize]) -> Result<bool, RuError> {
        let max = self.line_len;
        if let Some(&bad) = srus.iter().find(|&&k| k == 0 || k > max) {
            return Err(RuError::InvalidIndex { index: bad, max });
        }
        let set: BTreeSet<usize> = srus.iter().copied().collect();
        let (Some(&lo), Some(&hi)) = (set.first(), set.last()) else {
            return Ok(false);
        };
        if hi - lo + 1 != set.len() {
            return Ok(false);
        }
        Ok(self.find_span(lo - 1, set.len()).is_some())
    }

    /// One line per level listing every node as `tones[first-last]`.
    pub fn dump(&self) -> String {
        let mut out = format!(
            "layout {} {}MHz levels={} line={} srus={}\n",
            self.kind.name(),
            self.bandwidth.mhz(),
            self.levels(),
            self.line_len,
            sru_count(self.bandwidth)
        );
        for (level, row) in self.rows.iter().enumerate() {
            let _ = write!(out, "L{level}:");
            for n in row {
                let _ = write!(out, " {}[{}-{}]", n.tones, n.first_sru(), n.last_sru());
            }
            out.push('\n');
        }
        out
    }
}

/// Free-function form of [`RuLayout::split`].
pub fn split(ru: &RuNode, layout: &RuLayout) -> Result<(RuNode, RuNode), RuError> {
    layout.split(ru)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn std40() -> RuLayout {
        RuLayout::standard(Bandwidth::Mhz40)
    }

    #[test]
    fn standard_line_matches_sru_count() {
        for bw in Bandwidth::ALL {
            let l = RuLayout::standard(bw);
            assert_eq!(l.line_len(), sru_count(bw));
            assert_eq!(l.levels(), level_count(bw, LayoutKind::Standard));
            for row in l.rows() {
                // each row tiles the whole line exactly once
                let mut covered = vec![0u8; l.line_len()];
                for n in row {
                    for c in &mut covered[n.start..n.start + n.len] {
                        *c += 1;
                    }
                }
                assert!(covered.iter().all(|&c| c == 1), "{bw}");
            }
        }
    }

    #[test]
    fn forty_mhz_pairs_and_orphans() {
        let l = std40();
        let pairs: Vec<(usize, usize)> = l.row(3)
            .iter()
            .filter(|n| n.tones == 52)
            .map(|n| (n.first_sru(), n.last_sru()))
            .collect();
        assert_eq!(
            pairs,
            vec![(1, 2), (3, 4), (6, 7), (8, 9), (10, 11), (12, 13), (15, 16), (17, 18)]
        );
        let orphans: Vec<usize> = l.row(3)
            .iter()
            .filter(|n| n.tones == 26)
            .map(|n| n.first_sru())
            .collect();
        assert_eq!(orphans, vec![5, 14]);
    }

    #[test]
    fn merge_examples_forty_mhz() {
        let l = std40();
        assert!(l.can_merge(&[15, 16]).unwrap());
        assert!(!l.can_merge(&[14, 15]).unwrap());
        assert!(!l.can_merge(&[16, 17]).unwrap());
        assert!(l.can_merge(&(1..=18).collect::<Vec<_>>()).unwrap());
        assert!(l.can_merge(&(10..=18).collect::<Vec<_>>()).unwrap());
        assert!(!l.can_merge(&[]).unwrap());
        assert_eq!(
            l.can_merge(&[0, 1]),
            Err(RuError::InvalidIndex { index: 0, max: 18 })
        );
        assert_eq!(
            l.can_merge(&[19]),
            Err(RuError::InvalidIndex { index: 19, max: 18 })
        );
    }

    #[test]
    fn no_merge_across_the_half_boundary() {
        let l = std40();
        for lo in 1..=9 {
            for hi in 10..=18 {
                let set: Vec<usize> = (lo..=hi).collect();
                let expect = lo == 1 && hi == 18;
                assert_eq!(l.can_merge(&set).unwrap(), expect, "{lo}..{hi}");
            }
        }
    }

    #[test]
    fn binary_split_examples() {
        let l = RuLayout::binary(Bandwidth::Mhz20);
        let (a, b) = split(&l.node(1, 0).unwrap(), &l).unwrap();
        assert_eq!((a.level, a.index, b.level, b.index), (2, 0, 2, 1));
        let (a, b) = split(&l.node(2, 2).unwrap(), &l).unwrap();
        assert_eq!((a.level, a.index, b.level, b.index), (3, 4, 3, 5));
        assert_eq!(
            split(&l.node(3, 0).unwrap(), &l),
            Err(RuError::SplitNotAllowed { level: 3, index: 0 })
        );
    }

    #[test]
    fn binary_split_then_merge_round_trips() {
        for bw in Bandwidth::ALL {
            let l = RuLayout::binary(bw);
            for row in &l.rows()[..l.levels() - 1] {
                for n in row {
                    let (a, b) = l.split(n).unwrap();
                    assert_eq!(a.tones + b.tones, n.tones);
                    assert_eq!(l.merge(&a, &b), Some(*n));
                    assert_eq!(l.merge(&b, &a), Some(*n));
                }
            }
        }
    }

    #[test]
    fn binary_tones_follow_depth() {
        let l = RuLayout::binary(Bandwidth::Mhz40);
        let tones: Vec<u32> = l.rows().iter().map(|r| r[0].tones).collect();
        assert_eq!(tones, vec![416, 208, 104, 52, 26]);
        assert_eq!(l.line_len(), 16);
    }

    #[test]
    fn standard_split_rules() {
        let l = std40();
        // 484 splits into the two 242 halves
        let (a, b) = l.split(l.root()).unwrap();
        assert_eq!((a.tones, b.tones), (242, 242));
        // 242 has three children (106, 26, 106)
        let half = l.node(1, 0).unwrap();
        assert!(matches!(l.split(&half), Err(RuError::SplitNotAllowed { .. })));
        // 106 splits into two 52s
        let n106 = l.node(2, 0).unwrap();
        let (a, b) = l.split(&n106).unwrap();
        assert_eq!((a.first_sru(), b.last_sru(), a.tones), (1, 4, 52));
        // the centre orphan never splits
        let orphan = l.node(2, 1).unwrap();
        assert_eq!((orphan.first_sru(), orphan.tones), (5, 26));
        assert!(l.split(&orphan).is_err());
        let leaf = l.node(4, 0).unwrap();
        assert!(l.split(&leaf).is_err());
    }

    #[test]
    fn eighty_mhz_centre_unit() {
        let l = RuLayout::standard(Bandwidth::Mhz80);
        assert!(l.can_merge(&[19]).unwrap());
        assert!(!l.can_merge(&[18, 19]).unwrap());
        assert!(l.can_merge(&(1..=18).collect::<Vec<_>>()).unwrap());
        assert!(l.can_merge(&(20..=37).collect::<Vec<_>>()).unwrap());
        assert!(l.split(l.root()).is_err());
    }
}
