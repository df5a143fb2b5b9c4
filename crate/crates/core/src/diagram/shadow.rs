//! Unoriented diagrams for the four-term skein recursion. A shadow keeps
//! the cyclic slot order of each crossing fixed and records which diagonal
//! goes under, so switching a crossing is a flag flip and never disturbs
//! traversal order.

use super::{Crossing, LinkDiagram};
use crate::error::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShadowCrossing {
    pub edges: [u32; 4],
    /// True when the under-strand occupies slots 0 and 2.
    pub under02: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SmoothKind {
    /// Join slots 0-1 and 2-3.
    Zero,
    /// Join slots 0-3 and 1-2.
    Infinity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shadow {
    crossings: Vec<ShadowCrossing>,
    marked_unknots: u32,
}

impl Shadow {
    pub fn from_diagram(d: &LinkDiagram) -> Shadow {
        Shadow {
            crossings: d
                .crossings()
                .iter()
                .map(|c| ShadowCrossing {
                    edges: c.edges,
                    under02: true,
                })
                .collect(),
            marked_unknots: d.marked_unknots(),
        }
    }

    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn marked_unknots(&self) -> u32 {
        self.marked_unknots
    }

    pub fn crossings(&self) -> &[ShadowCrossing] {
        &self.crossings
    }

    fn check_index(&self, idx: usize) -> Result<()> {
        if idx >= self.crossings.len() {
            return Err(Error::IndexOutOfRange {
                index: idx,
                len: self.crossings.len(),
            });
        }
        Ok(())
    }

    pub fn switch(&self, idx: usize) -> Result<Shadow> {
        self.check_index(idx)?;
        let mut out = self.clone();
        out.crossings[idx].under02 = !out.crossings[idx].under02;
        Ok(out)
    }

    pub fn smooth(&self, idx: usize, kind: SmoothKind) -> Result<Shadow> {
        self.check_index(idx)?;
        let e = self.crossings[idx].edges;
        let pairs = match kind {
            SmoothKind::Zero => vec![(e[0], e[1]), (e[2], e[3])],
            SmoothKind::Infinity => vec![(e[0], e[3]), (e[1], e[2])],
        };
        let mut crossings = self.crossings.clone();
        crossings.remove(idx);
        let mut marked = self.marked_unknots;
        splice_unoriented(&mut crossings, &mut marked, pairs);
        Ok(Shadow {
            crossings,
            marked_unknots: marked,
        })
    }

    fn edge_labels(&self) -> BTreeSet<u32> {
        let mut set = BTreeSet::new();
        for c in &self.crossings {
            set.extend(c.edges);
        }
        set
    }

    fn occurrences(&self) -> BTreeMap<u32, Vec<(usize, usize)>> {
        let mut occ: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
        for (ci, c) in self.crossings.iter().enumerate() {
            for (si, &e) in c.edges.iter().enumerate() {
                occ.entry(e).or_default().push((ci, si));
            }
        }
        occ
    }

    pub fn component_count(&self) -> u32 {
        let occ = self.occurrences();
        let mut unvisited: BTreeSet<u32> = self.edge_labels();
        let mut cycles = 0;
        while let Some(&start) = unvisited.iter().next() {
            cycles += 1;
            let mut at = occ[&start][0];
            let mut e = start;
            loop {
                unvisited.remove(&e);
                let exit = (at.1 + 2) % 4;
                e = self.crossings[at.0].edges[exit];
                if e == start {
                    break;
                }
                at = other_occurrence(&occ, e, (at.0, exit));
            }
        }
        cycles + self.marked_unknots
    }

    /// Writhe sign of a Reidemeister I curl whose loop edge occupies slots
    /// `i` and `i + 1`. Self-crossing signs do not depend on the strand
    /// direction, so the shadow determines them.
    fn curl_sign(&self, idx: usize, slot: usize) -> i64 {
        if (slot % 2 == 0) == self.crossings[idx].under02 {
            1
        } else {
            -1
        }
    }

    /// Remove Reidemeister I curls and II bigons until none remain,
    /// lowest crossing index first. Curl removals change the writhe, so the
    /// accumulated curl exponent is returned alongside: the original shadow
    /// and the reduced one satisfy trace(original) = a^exp * trace(reduced)
    /// for regular-isotopy traces with curl factors a^{±1}.
    pub fn simplify(&self) -> (Shadow, i64) {
        let mut cur = self.clone();
        let mut exp = 0;
        loop {
            match cur.reduce_once() {
                Some((next, e)) => {
                    cur = next;
                    exp += e;
                }
                None => return (cur, exp),
            }
        }
    }

    fn reduce_once(&self) -> Option<(Shadow, i64)> {
        for (ci, c) in self.crossings.iter().enumerate() {
            for s in 0..4 {
                if c.edges[s] == c.edges[(s + 1) % 4] {
                    let sign = self.curl_sign(ci, s);
                    let pair = (c.edges[(s + 2) % 4], c.edges[(s + 3) % 4]);
                    let mut crossings = self.crossings.clone();
                    crossings.remove(ci);
                    let mut marked = self.marked_unknots;
                    splice_unoriented(&mut crossings, &mut marked, vec![pair]);
                    return Some((
                        Shadow {
                            crossings,
                            marked_unknots: marked,
                        },
                        sign,
                    ));
                }
            }
        }
        let occ = self.occurrences();
        for ci in 0..self.crossings.len() {
            for di in (ci + 1)..self.crossings.len() {
                if let Some(next) = self.try_r2(ci, di, &occ) {
                    return Some((next, 0));
                }
            }
        }
        None
    }

    fn level_under(&self, ci: usize, slot: usize) -> bool {
        (slot % 2 == 0) == self.crossings[ci].under02
    }

    fn try_r2(
        &self,
        ci: usize,
        di: usize,
        occ: &BTreeMap<u32, Vec<(usize, usize)>>,
    ) -> Option<Shadow> {
        let c = &self.crossings[ci];
        let d = &self.crossings[di];
        let mut between: Vec<(u32, usize, usize)> = Vec::new();
        for (si, &e) in c.edges.iter().enumerate() {
            for &(oc, os) in &occ[&e] {
                if oc == di {
                    between.push((e, si, os));
                }
            }
        }
        for i in 0..between.len() {
            for j in 0..between.len() {
                if i == j {
                    continue;
                }
                let (u, cu, du) = between[i];
                let (v, cv, dv) = between[j];
                if u == v {
                    continue;
                }
                // Bigon corners must reverse sense between the two ends;
                // same-sense adjacency is a clasp, not a removable bigon.
                if (cu + 1) % 4 != cv || (dv + 1) % 4 != du {
                    continue;
                }
                if self.level_under(ci, cu) != self.level_under(di, du) {
                    continue;
                }
                let pairs = vec![
                    (c.edges[(cu + 2) % 4], d.edges[(du + 2) % 4]),
                    (c.edges[(cv + 2) % 4], d.edges[(dv + 2) % 4]),
                ];
                let mut crossings = self.crossings.clone();
                crossings.remove(di);
                crossings.remove(ci);
                let mut marked = self.marked_unknots;
                splice_unoriented(&mut crossings, &mut marked, pairs);
                return Some(Shadow {
                    crossings,
                    marked_unknots: marked,
                });
            }
        }
        None
    }

    /// Deterministically orient every component (smallest edge label first,
    /// entering at its first occurrence) and rebuild the quadruples with the
    /// incoming under-strand at slot 0.
    pub fn orient(&self) -> LinkDiagram {
        let occ = self.occurrences();
        let mut inbound: BTreeMap<(usize, usize), bool> = BTreeMap::new();
        let mut unvisited: BTreeSet<u32> = self.edge_labels();
        while let Some(&start) = unvisited.iter().next() {
            let mut at = occ[&start][0];
            let mut e = start;
            loop {
                unvisited.remove(&e);
                inbound.insert(at, true);
                let exit = (at.1 + 2) % 4;
                inbound.insert((at.0, exit), false);
                e = self.crossings[at.0].edges[exit];
                if e == start {
                    break;
                }
                at = other_occurrence(&occ, e, (at.0, exit));
            }
        }
        let crossings = self
            .crossings
            .iter()
            .enumerate()
            .map(|(ci, c)| {
                let (u1, u2) = if c.under02 { (0, 2) } else { (1, 3) };
                let under_in = if inbound[&(ci, u1)] { u1 } else { u2 };
                let edges = [
                    c.edges[under_in],
                    c.edges[(under_in + 1) % 4],
                    c.edges[(under_in + 2) % 4],
                    c.edges[(under_in + 3) % 4],
                ];
                let over_in = if inbound[&(ci, (under_in + 3) % 4)] {
                    3
                } else {
                    1
                };
                Crossing { edges, over_in }
            })
            .collect();
        LinkDiagram {
            crossings,
            marked_unknots: self.marked_unknots,
        }
    }

    /// Label- and rotation-independent code, minimized over traversal
    /// starts and directions.
    pub(crate) fn canonical_key(&self) -> Vec<u32> {
        let labels: Vec<u32> = self.edge_labels().into_iter().collect();
        if labels.is_empty() {
            return vec![0, self.marked_unknots];
        }
        let occ = self.occurrences();
        let mut best: Option<Vec<u32>> = None;
        for &primary in &labels {
            for dir in 0..2 {
                let mut rename: BTreeMap<u32, u32> = BTreeMap::new();
                let mut next_label = 1u32;
                let mut unvisited: BTreeSet<u32> = labels.iter().copied().collect();
                let mut entry = occ[&primary][dir];
                let mut start = primary;
                loop {
                    let mut e = start;
                    let mut at = entry;
                    loop {
                        unvisited.remove(&e);
                        rename.entry(e).or_insert_with(|| {
                            let l = next_label;
                            next_label += 1;
                            l
                        });
                        let exit = (at.1 + 2) % 4;
                        e = self.crossings[at.0].edges[exit];
                        if e == start {
                            break;
                        }
                        at = other_occurrence(&occ, e, (at.0, exit));
                    }
                    match unvisited.iter().next() {
                        Some(&n) => {
                            start = n;
                            entry = occ[&n][0];
                        }
                        None => break,
                    }
                }
                let mut quads: Vec<[u32; 5]> = self
                    .crossings
                    .iter()
                    .map(|c| {
                        (0..4)
                            .map(|r| {
                                [
                                    rename[&c.edges[r]],
                                    rename[&c.edges[(r + 1) % 4]],
                                    rename[&c.edges[(r + 2) % 4]],
                                    rename[&c.edges[(r + 3) % 4]],
                                    (c.under02 == (r % 2 == 0)) as u32,
                                ]
                            })
                            .min()
                            .unwrap()
                    })
                    .collect();
                quads.sort_unstable();
                let mut flat: Vec<u32> = quads.into_iter().flatten().collect();
                flat.push(self.marked_unknots);
                if best.as_ref().map_or(true, |b| flat < *b) {
                    best = Some(flat);
                }
            }
        }
        best.unwrap()
    }
}

fn other_occurrence(
    occ: &BTreeMap<u32, Vec<(usize, usize)>>,
    edge: u32,
    not: (usize, usize),
) -> (usize, usize) {
    let places = &occ[&edge];
    if places[0] == not {
        places[1]
    } else {
        places[0]
    }
}

fn splice_unoriented(crossings: &mut [ShadowCrossing], marked: &mut u32, mut pairs: Vec<(u32, u32)>) {
    for i in 0..pairs.len() {
        let (a, b) = pairs[i];
        if a == b {
            *marked += 1;
            continue;
        }
        for c in crossings.iter_mut() {
            for e in c.edges.iter_mut() {
                if *e == b {
                    *e = a;
                }
            }
        }
        for p in pairs.iter_mut().skip(i + 1) {
            if p.0 == b {
                p.0 = a;
            }
            if p.1 == b {
                p.1 = a;
            }
        }
    }
}
