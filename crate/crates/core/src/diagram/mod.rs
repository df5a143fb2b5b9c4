//! Planar diagram codes for oriented links.
//!
//! A crossing is a quadruple of edge labels read counterclockwise starting
//! at the incoming under-strand. Orientation is implicit: slot 0 always
//! takes the under-strand in and slot 2 carries it out, and the over-strand
//! direction is recovered by constraint propagation (each edge label must
//! enter a crossing exactly once and leave one exactly once). Crossing-free
//! circle components are tracked by a counter instead of fake quadruples.

mod braid;
mod shadow;
mod singular;

pub use braid::braid_closure;
pub use shadow::{Shadow, SmoothKind};
pub use singular::SingularDiagram;

use crate::error::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// One crossing. `over_in` is the slot (1 or 3) where the over-strand
/// enters; it is derived from the quadruples at construction and kept in
/// sync by every surgery.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    pub edges: [u32; 4],
    over_in: u8,
}

impl Crossing {
    /// +1 when the over-strand enters at slot 3, -1 at slot 1.
    pub fn sign(&self) -> i64 {
        if self.over_in == 3 {
            1
        } else {
            -1
        }
    }

    /// True when the strand entering at `slot` points into the crossing.
    fn slot_is_in(&self, slot: usize) -> bool {
        match slot {
            0 => true,
            2 => false,
            1 => self.over_in == 1,
            _ => self.over_in == 3,
        }
    }
}

/// How to replace a crossing by a crossing-free tangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SmoothMode {
    /// Reconnect respecting strand orientations.
    Oriented,
    /// Join slots 0-1 and 2-3, reorienting the result.
    Unoriented0,
    /// Join slots 0-3 and 1-2, reorienting the result.
    UnorientedInf,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    marked_unknots: u32,
}

/// First-visit data of the deterministic diagram traversal: components are
/// walked in order of their smallest edge label, each starting at that
/// label. Used for skein branch selection and canonical relabeling.
pub(crate) struct Traversal {
    /// (crossing index, entered on the under-strand) in encounter order.
    pub first_visits: Vec<(usize, bool)>,
}

impl LinkDiagram {
    pub fn unknot() -> Self {
        LinkDiagram {
            crossings: Vec::new(),
            marked_unknots: 1,
        }
    }

    /// Validates the quadruples and resolves the over-strand directions.
    pub fn from_quadruples(quads: Vec<[u32; 4]>, marked_unknots: u32) -> Result<Self> {
        for q in &quads {
            for &e in q {
                if e == 0 {
                    return Err(Error::InvalidPd("edge labels must be positive".into()));
                }
            }
        }
        let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
        for q in &quads {
            for &e in q {
                *counts.entry(e).or_insert(0) += 1;
            }
        }
        if let Some((&label, _)) = counts.iter().find(|(_, &c)| c != 2) {
            return Err(Error::InvalidPd(format!(
                "edge label {label} is used {} time(s), expected exactly 2",
                counts[&label]
            )));
        }
        if quads.is_empty() && marked_unknots == 0 {
            return Err(Error::InvalidPd(
                "a diagram needs at least one crossing or circle".into(),
            ));
        }
        check_planarity(&quads)?;
        let flags = resolve_over_direction(&quads)?;
        let crossings = quads
            .into_iter()
            .zip(flags)
            .map(|(edges, b)| Crossing {
                edges,
                over_in: if b { 3 } else { 1 },
            })
            .collect();
        Ok(LinkDiagram {
            crossings,
            marked_unknots,
        })
    }

    pub fn parse_pd(text: &str) -> Result<Self> {
        let quads = parse_pd_tokens(text)?;
        let unknots = if quads.is_empty() { 1 } else { 0 };
        Self::from_quadruples(quads, unknots)
    }

    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn marked_unknots(&self) -> u32 {
        self.marked_unknots
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn sign(&self, idx: usize) -> Result<i64> {
        self.check_index(idx)?;
        Ok(self.crossings[idx].sign())
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(Crossing::sign).sum()
    }

    pub fn edge_labels(&self) -> BTreeSet<u32> {
        let mut set = BTreeSet::new();
        for c in &self.crossings {
            set.extend(c.edges);
        }
        set
    }

    fn max_label(&self) -> u32 {
        self.edge_labels().into_iter().next_back().unwrap_or(0)
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

    /// (crossing, slot) where each edge enters and leaves a crossing.
    fn occurrence_maps(&self) -> (BTreeMap<u32, (usize, usize)>, BTreeMap<u32, (usize, usize)>) {
        let mut ins = BTreeMap::new();
        let mut outs = BTreeMap::new();
        for (ci, c) in self.crossings.iter().enumerate() {
            for (si, &e) in c.edges.iter().enumerate() {
                if c.slot_is_in(si) {
                    ins.insert(e, (ci, si));
                } else {
                    outs.insert(e, (ci, si));
                }
            }
        }
        (ins, outs)
    }

    pub fn component_count(&self) -> u32 {
        self.trace_cycles() + self.marked_unknots
    }

    fn trace_cycles(&self) -> u32 {
        let (ins, _) = self.occurrence_maps();
        let mut unvisited: BTreeSet<u32> = self.edge_labels();
        let mut cycles = 0;
        while let Some(&start) = unvisited.iter().next() {
            cycles += 1;
            let mut e = start;
            loop {
                unvisited.remove(&e);
                let (c, s) = ins[&e];
                let exit = match s {
                    0 => 2,
                    1 => 3,
                    _ => 1,
                };
                e = self.crossings[c].edges[exit];
                if e == start {
                    break;
                }
            }
        }
        cycles
    }

    pub fn is_knot(&self) -> bool {
        self.component_count() == 1
    }

    pub(crate) fn traverse(&self) -> Traversal {
        let (ins, _) = self.occurrence_maps();
        let mut unvisited: BTreeSet<u32> = self.edge_labels();
        let mut seen = vec![false; self.crossings.len()];
        let mut first_visits = Vec::new();
        while let Some(&start) = unvisited.iter().next() {
            let mut e = start;
            loop {
                unvisited.remove(&e);
                let (c, s) = ins[&e];
                if !seen[c] {
                    seen[c] = true;
                    first_visits.push((c, s == 0));
                }
                let exit = match s {
                    0 => 2,
                    1 => 3,
                    _ => 1,
                };
                e = self.crossings[c].edges[exit];
                if e == start {
                    break;
                }
            }
        }
        Traversal { first_visits }
    }

    /// Index of the first crossing met on its under-strand during the
    /// traversal, or None when the diagram is descending.
    pub(crate) fn first_ascending(&self) -> Option<usize> {
        self.traverse()
            .first_visits
            .iter()
            .find(|(_, under)| *under)
            .map(|(c, _)| *c)
    }

    pub fn switch_crossing(&self, idx: usize) -> Result<LinkDiagram> {
        self.check_index(idx)?;
        let mut out = self.clone();
        let c = &mut out.crossings[idx];
        let e = c.edges;
        if c.over_in == 3 {
            c.edges = [e[3], e[0], e[1], e[2]];
            c.over_in = 1;
        } else {
            c.edges = [e[1], e[2], e[3], e[0]];
            c.over_in = 3;
        }
        Ok(out)
    }

    pub fn smooth_crossing(&self, idx: usize, mode: SmoothMode) -> Result<LinkDiagram> {
        self.check_index(idx)?;
        match mode {
            SmoothMode::Oriented => {
                let c = self.crossings[idx];
                let e = c.edges;
                // Incoming under joins outgoing over; incoming over joins
                // outgoing under.
                let pairs = if c.over_in == 3 {
                    vec![(e[0], e[1]), (e[3], e[2])]
                } else {
                    vec![(e[0], e[3]), (e[1], e[2])]
                };
                let mut crossings = self.crossings.clone();
                crossings.remove(idx);
                let mut marked = self.marked_unknots;
                splice_pairs(&mut crossings, &mut marked, pairs);
                Ok(LinkDiagram {
                    crossings,
                    marked_unknots: marked,
                })
            }
            SmoothMode::Unoriented0 => {
                Ok(self.shadow().smooth(idx, SmoothKind::Zero)?.orient())
            }
            SmoothMode::UnorientedInf => {
                Ok(self.shadow().smooth(idx, SmoothKind::Infinity)?.orient())
            }
        }
    }

    /// Joins two knot diagrams along their lowest-labeled edges. The second
    /// operand is relabeled above the first; invariant values do not depend
    /// on the cut choice.
    pub fn connected_sum(&self, other: &LinkDiagram) -> Result<LinkDiagram> {
        for (d, side) in [(self, "left"), (other, "right")] {
            let c = d.component_count();
            if c != 1 {
                return Err(Error::NotAKnot(format!(
                    "{side} operand has {c} components"
                )));
            }
        }
        if self.crossings.is_empty() {
            return Ok(other.clone());
        }
        if other.crossings.is_empty() {
            return Ok(self.clone());
        }
        let offset = self.max_label();
        let mut crossings = self.crossings.clone();
        let base = crossings.len();
        for c in &other.crossings {
            let mut shifted = *c;
            for e in shifted.edges.iter_mut() {
                *e += offset;
            }
            crossings.push(shifted);
        }
        let cut_a = *self.edge_labels().iter().next().unwrap();
        let cut_b = *other.edge_labels().iter().next().unwrap() + offset;
        let (ins_a, _) = self.occurrence_maps();
        let (ins_b, _) = other.occurrence_maps();
        let (ca, sa) = ins_a[&cut_a];
        let (cb, sb) = ins_b[&(cut_b - offset)];
        crossings[ca].edges[sa] = cut_b;
        crossings[base + cb].edges[sb] = cut_a;
        Ok(LinkDiagram {
            crossings,
            marked_unknots: 0,
        })
    }

    /// The i-fold self-connected sum; zero copies give the unknot.
    pub fn self_sum(&self, i: u32) -> Result<LinkDiagram> {
        if !self.is_knot() {
            return Err(Error::NotAKnot(format!(
                "self sum needs a knot, got {} components",
                self.component_count()
            )));
        }
        let mut acc = LinkDiagram::unknot();
        for _ in 0..i {
            acc = acc.connected_sum(self)?;
        }
        Ok(acc)
    }

    /// Reidemeister I and II reduction to a fixed point, scanning lowest
    /// crossing index first. Preserves all skein invariants and the
    /// component count.
    pub fn simplify(&self) -> LinkDiagram {
        let mut cur = self.clone();
        loop {
            if let Some(next) = cur.reduce_once() {
                cur = next;
            } else {
                return cur;
            }
        }
    }

    fn reduce_once(&self) -> Option<LinkDiagram> {
        // Reidemeister I: a loop edge on two adjacent slots.
        for (ci, c) in self.crossings.iter().enumerate() {
            for s in 0..4 {
                if c.edges[s] == c.edges[(s + 1) % 4] {
                    let r1 = (s + 2) % 4;
                    let r2 = (s + 3) % 4;
                    let (a, b) = if c.slot_is_in(r1) {
                        (c.edges[r1], c.edges[r2])
                    } else {
                        (c.edges[r2], c.edges[r1])
                    };
                    let mut crossings = self.crossings.clone();
                    crossings.remove(ci);
                    let mut marked = self.marked_unknots;
                    splice_pairs(&mut crossings, &mut marked, vec![(a, b)]);
                    return Some(LinkDiagram {
                        crossings,
                        marked_unknots: marked,
                    });
                }
            }
        }
        // Reidemeister II: two edges joining the same pair of crossings on
        // adjacent slots at both ends, one edge over at both, one under at
        // both.
        let occ = self.all_occurrences();
        for ci in 0..self.crossings.len() {
            for di in (ci + 1)..self.crossings.len() {
                if let Some(d) = self.try_r2(ci, di, &occ) {
                    return Some(d);
                }
            }
        }
        None
    }

    fn all_occurrences(&self) -> BTreeMap<u32, Vec<(usize, usize)>> {
        let mut occ: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
        for (ci, c) in self.crossings.iter().enumerate() {
            for (si, &e) in c.edges.iter().enumerate() {
                occ.entry(e).or_default().push((ci, si));
            }
        }
        occ
    }

    fn try_r2(
        &self,
        ci: usize,
        di: usize,
        occ: &BTreeMap<u32, Vec<(usize, usize)>>,
    ) -> Option<LinkDiagram> {
        let c = &self.crossings[ci];
        // Candidate bigon edges: run between ci and di.
        let mut between: Vec<(u32, usize, usize)> = Vec::new(); // (edge, slot at ci, slot at di)
        for (si, &e) in c.edges.iter().enumerate() {
            let places = &occ[&e];
            for &(oc, os) in places {
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
                // The two edges must bound a face: adjacent slots at both
                // crossings, with the corner orientation reversing between
                // the ends (walking u with the bigon on one side, v sits
                // counterclockwise-next at one crossing and previous at the
                // other). The same-sense configuration is a clasp, which
                // Reidemeister II does not remove.
                if (cu + 1) % 4 != cv || (dv + 1) % 4 != du {
                    continue;
                }
                let under = |s: usize| s % 2 == 0;
                // The same edge must sit at the same level at both ends.
                if under(cu) != under(du) || under(cv) != under(dv) {
                    continue;
                }
                // Strand continuations at the four outer slots.
                let d = &self.crossings[di];
                let a_c = ((cu + 2) % 4, c.edges[(cu + 2) % 4]);
                let a_d = ((du + 2) % 4, d.edges[(du + 2) % 4]);
                let b_c = ((cv + 2) % 4, c.edges[(cv + 2) % 4]);
                let b_d = ((dv + 2) % 4, d.edges[(dv + 2) % 4]);
                let orient_pair = |x: (usize, u32), at_c: bool, y: (usize, u32)| {
                    let x_in = if at_c {
                        c.slot_is_in(x.0)
                    } else {
                        d.slot_is_in(x.0)
                    };
                    // Exactly one endpoint of the merged strand enters the
                    // removed pair; splice incoming onto outgoing.
                    if x_in {
                        (x.1, y.1)
                    } else {
                        (y.1, x.1)
                    }
                };
                let p1 = orient_pair(a_c, true, a_d);
                let p2 = orient_pair(b_c, true, b_d);
                let mut crossings = self.crossings.clone();
                crossings.remove(di);
                crossings.remove(ci);
                let mut marked = self.marked_unknots;
                splice_pairs(&mut crossings, &mut marked, vec![p1, p2]);
                return Some(LinkDiagram {
                    crossings,
                    marked_unknots: marked,
                });
            }
        }
        None
    }

    pub fn shadow(&self) -> Shadow {
        Shadow::from_diagram(self)
    }

    /// Label-independent code: minimum over traversal bases of the
    /// relabeled, sorted quadruple list. Diagrams differing only by edge
    /// relabeling share keys; distinct diagrams never collide because the
    /// key is a faithful relabeling.
    pub(crate) fn canonical_key(&self) -> Vec<u32> {
        let labels: Vec<u32> = self.edge_labels().into_iter().collect();
        if labels.is_empty() {
            return vec![0, self.marked_unknots];
        }
        let (ins, _) = self.occurrence_maps();
        let mut best: Option<Vec<u32>> = None;
        for &primary in &labels {
            let mut rename: BTreeMap<u32, u32> = BTreeMap::new();
            let mut next_label = 1u32;
            let mut unvisited: BTreeSet<u32> = labels.iter().copied().collect();
            let mut start = primary;
            loop {
                let mut e = start;
                loop {
                    unvisited.remove(&e);
                    rename.insert(e, next_label);
                    next_label += 1;
                    let (c, s) = ins[&e];
                    let exit = match s {
                        0 => 2,
                        1 => 3,
                        _ => 1,
                    };
                    e = self.crossings[c].edges[exit];
                    if e == start {
                        break;
                    }
                }
                match unvisited.iter().next() {
                    Some(&n) => start = n,
                    None => break,
                }
            }
            let mut quads: Vec<[u32; 5]> = self
                .crossings
                .iter()
                .map(|c| {
                    [
                        rename[&c.edges[0]],
                        rename[&c.edges[1]],
                        rename[&c.edges[2]],
                        rename[&c.edges[3]],
                        c.over_in as u32,
                    ]
                })
                .collect();
            quads.sort_unstable();
            let mut flat: Vec<u32> = quads.into_iter().flatten().collect();
            flat.push(self.marked_unknots);
            if best.as_ref().map_or(true, |b| flat < *b) {
                best = Some(flat);
            }
        }
        best.unwrap()
    }

    pub fn to_pd(&self) -> String {
        self.crossings
            .iter()
            .map(|c| {
                format!(
                    "X[{},{},{},{}]",
                    c.edges[0], c.edges[1], c.edges[2], c.edges[3]
                )
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_pd())
    }
}

/// Concatenate arcs after a crossing removal. Each pair is
/// (incoming label, outgoing label); equal labels close a circle.
fn splice_pairs(crossings: &mut [Crossing], marked: &mut u32, mut pairs: Vec<(u32, u32)>) {
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

fn parse_pd_tokens(text: &str) -> Result<Vec<[u32; 4]>> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut quads = Vec::new();
    let skip_sep = |pos: &mut usize| {
        while *pos < bytes.len() && (bytes[*pos].is_ascii_whitespace() || bytes[*pos] == b',') {
            *pos += 1;
        }
    };
    skip_sep(&mut pos);
    while pos < bytes.len() {
        if bytes[pos] != b'X' && bytes[pos] != b'x' {
            return Err(Error::MalformedPd {
                pos,
                msg: format!("expected 'X', found {:?}", bytes[pos] as char),
            });
        }
        pos += 1;
        if pos >= bytes.len() || (bytes[pos] != b'[' && bytes[pos] != b'(') {
            return Err(Error::MalformedPd {
                pos,
                msg: "expected '[' after 'X'".into(),
            });
        }
        let close = if bytes[pos] == b'[' { b']' } else { b')' };
        pos += 1;
        let mut quad = [0u32; 4];
        for (slot, q) in quad.iter_mut().enumerate() {
            while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if start == pos {
                return Err(Error::MalformedPd {
                    pos,
                    msg: "expected an edge label".into(),
                });
            }
            *q = text[start..pos].parse().map_err(|_| Error::MalformedPd {
                pos: start,
                msg: "edge label out of range".into(),
            })?;
            while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            if slot < 3 {
                if pos >= bytes.len() || bytes[pos] != b',' {
                    return Err(Error::MalformedPd {
                        pos,
                        msg: "expected ',' between edge labels".into(),
                    });
                }
                pos += 1;
            }
        }
        if pos >= bytes.len() || bytes[pos] != close {
            return Err(Error::MalformedPd {
                pos,
                msg: format!("expected '{}'", close as char),
            });
        }
        pos += 1;
        quads.push(quad);
        skip_sep(&mut pos);
    }
    Ok(quads)
}

/// Verify that the quadruples describe a plane diagram. The slot order is a
/// rotation system; tracing its faces and comparing against the Euler count
/// detects codes that are only realizable with virtual crossings. Each
/// connected piece with n crossings has 2n edges, so it is planar exactly
/// when it has n + 2 faces.
fn check_planarity(quads: &[[u32; 4]]) -> Result<()> {
    let n = quads.len();
    if n == 0 {
        return Ok(());
    }
    let mut occ: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
    for (ci, q) in quads.iter().enumerate() {
        for (si, &e) in q.iter().enumerate() {
            occ.entry(e).or_default().push((ci, si));
        }
    }
    // Connected pieces of the crossing graph.
    let mut piece = vec![usize::MAX; n];
    let mut pieces = 0;
    for start in 0..n {
        if piece[start] != usize::MAX {
            continue;
        }
        let id = pieces;
        pieces += 1;
        let mut stack = vec![start];
        piece[start] = id;
        while let Some(c) = stack.pop() {
            for &e in &quads[c] {
                for &(oc, _) in &occ[&e] {
                    if piece[oc] == usize::MAX {
                        piece[oc] = id;
                        stack.push(oc);
                    }
                }
            }
        }
    }
    // Faces: orbits of dart -> rotate(other end of dart's edge).
    let mut seen = vec![[false; 4]; n];
    let mut faces = 0;
    for c0 in 0..n {
        for s0 in 0..4 {
            if seen[c0][s0] {
                continue;
            }
            faces += 1;
            let (mut c, mut s) = (c0, s0);
            while !seen[c][s] {
                seen[c][s] = true;
                let places = &occ[&quads[c][s]];
                let (oc, os) = if places[0] == (c, s) {
                    places[1]
                } else {
                    places[0]
                };
                c = oc;
                s = (os + 1) % 4;
            }
        }
    }
    if faces != n + 2 * pieces {
        return Err(Error::InvalidPd(format!(
            "the code is not a plane diagram ({faces} faces where a planar \
             embedding needs {})",
            n + 2 * pieces
        )));
    }
    Ok(())
}

/// Determine, for every crossing, whether the over-strand enters at slot 3.
/// Slots 0 and 2 are fixed in/out; the flags must give every edge exactly
/// one inbound and one outbound endpoint. Free circles (never forced) get
/// the slot-3 choice.
fn resolve_over_direction(quads: &[[u32; 4]]) -> Result<Vec<bool>> {
    let n = quads.len();
    let mut occ: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
    for (ci, q) in quads.iter().enumerate() {
        for (si, &e) in q.iter().enumerate() {
            occ.entry(e).or_default().push((ci, si));
        }
    }
    let mut forced: Vec<Option<bool>> = vec![None; n];
    // (crossing, crossing, must_differ)
    let mut relations: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
    let mut seeds: Vec<(usize, bool)> = Vec::new();
    for places in occ.values() {
        let (c1, s1) = places[0];
        let (c2, s2) = places[1];
        let fixed = |s: usize| s == 0 || s == 2;
        match (fixed(s1), fixed(s2)) {
            (true, true) => {
                if (s1 == 0) == (s2 == 0) {
                    return Err(Error::InvalidPd(format!(
                        "edge {} cannot be oriented consistently",
                        quads[c1][s1]
                    )));
                }
            }
            (true, false) | (false, true) => {
                let (sf, cv, sv) = if fixed(s1) {
                    (s1, c2, s2)
                } else {
                    (s2, c1, s1)
                };
                let need_in = sf != 0; // the variable end must balance the fixed end
                // slot 1 is inbound when the flag is false, slot 3 when true
                let flag = if sv == 1 { !need_in } else { need_in };
                seeds.push((cv, flag));
            }
            (false, false) => {
                if c1 == c2 {
                    continue; // slots 1 and 3 of one crossing always balance
                }
                let differ = s1 == s2;
                relations[c1].push((c2, differ));
                relations[c2].push((c1, differ));
            }
        }
    }
    let mut queue: Vec<usize> = Vec::new();
    for (c, flag) in seeds {
        match forced[c] {
            None => {
                forced[c] = Some(flag);
                queue.push(c);
            }
            Some(f) if f != flag => {
                return Err(Error::InvalidPd(format!(
                    "crossing {c} receives conflicting orientations"
                )));
            }
            _ => {}
        }
    }
    loop {
        while let Some(c) = queue.pop() {
            let fc = forced[c].unwrap();
            for &(d, differ) in &relations[c] {
                let want = fc != differ;
                match forced[d] {
                    None => {
                        forced[d] = Some(want);
                        queue.push(d);
                    }
                    Some(f) if f != want => {
                        return Err(Error::InvalidPd(format!(
                            "crossings {c} and {d} receive conflicting orientations"
                        )));
                    }
                    _ => {}
                }
            }
        }
        match forced.iter().position(|f| f.is_none()) {
            Some(c) => {
                forced[c] = Some(true);
                queue.push(c);
            }
            None => break,
        }
    }
    Ok(forced.into_iter().map(|f| f.unwrap()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn right_trefoil() -> LinkDiagram {
        LinkDiagram::parse_pd("X[4,2,5,1] X[6,4,1,3] X[2,6,3,5]").unwrap()
    }

    fn left_trefoil() -> LinkDiagram {
        LinkDiagram::parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap()
    }

    #[test]
    fn parse_and_orient_trefoils() {
        let r = right_trefoil();
        assert_eq!(r.num_crossings(), 3);
        assert_eq!(r.component_count(), 1);
        assert!(r.is_knot());
        assert_eq!(r.writhe(), 3);
        let l = left_trefoil();
        assert_eq!(l.writhe(), -3);
        for i in 0..3 {
            assert_eq!(l.sign(i).unwrap(), -1);
        }
    }

    #[test]
    fn parse_rejects_bad_codes() {
        assert!(matches!(
            LinkDiagram::parse_pd("X[1,2,3,4]"),
            Err(Error::InvalidPd(_))
        ));
        assert!(matches!(
            LinkDiagram::parse_pd("X[1,1,1,1]"),
            Err(Error::InvalidPd(_))
        ));
        assert!(matches!(
            LinkDiagram::parse_pd("Y[1,2,3,4]"),
            Err(Error::MalformedPd { .. })
        ));
        assert!(matches!(
            LinkDiagram::parse_pd("X[1,2"),
            Err(Error::MalformedPd { .. })
        ));
        assert!(matches!(
            LinkDiagram::parse_pd("X[0,1,0,1]"),
            Err(Error::InvalidPd(_))
        ));
    }

    #[test]
    fn empty_code_parses_to_unknot() {
        let u = LinkDiagram::parse_pd("").unwrap();
        assert_eq!(u.num_crossings(), 0);
        assert_eq!(u.component_count(), 1);
        assert_eq!(u, LinkDiagram::unknot());
    }

    #[test]
    fn parse_accepts_mathematica_style() {
        let d = LinkDiagram::parse_pd("X(4, 2, 5, 1), X(6, 4, 1, 3), X(2, 6, 3, 5)").unwrap();
        assert_eq!(d, right_trefoil());
    }

    #[test]
    fn hopf_link_has_two_components() {
        let h = LinkDiagram::parse_pd("X[1,3,4,2] X[3,1,2,4]").unwrap();
        assert_eq!(h.component_count(), 2);
        assert!(!h.is_knot());
        assert_eq!(h.writhe(), 2);
    }

    #[test]
    fn non_planar_codes_are_rejected() {
        // Interleaving the two circles of a clasp so each stays on one
        // level everywhere has no plane realization.
        assert!(matches!(
            LinkDiagram::parse_pd("X[1,3,2,4] X[2,4,1,3]"),
            Err(Error::InvalidPd(_))
        ));
    }

    #[test]
    fn switch_is_an_involution_and_flips_sign() {
        let r = right_trefoil();
        let s = r.switch_crossing(1).unwrap();
        assert_eq!(s.sign(1).unwrap(), -1);
        assert_eq!(s.writhe(), r.writhe() - 2);
        assert_eq!(s.switch_crossing(1).unwrap(), r);
    }

    #[test]
    fn oriented_smoothing_of_a_knot_gives_two_components() {
        let r = right_trefoil();
        let s = r.smooth_crossing(0, SmoothMode::Oriented).unwrap();
        assert_eq!(s.num_crossings(), 2);
        assert_eq!(s.component_count(), 2);
    }

    #[test]
    fn unoriented_smoothings_of_a_kink() {
        let k = LinkDiagram::parse_pd("X[1,1,2,2]").unwrap();
        assert_eq!(k.sign(0).unwrap(), 1);
        let zero = k.smooth_crossing(0, SmoothMode::Unoriented0).unwrap();
        assert_eq!(zero.component_count(), 2);
        let inf = k.smooth_crossing(0, SmoothMode::UnorientedInf).unwrap();
        assert_eq!(inf.component_count(), 1);
    }

    #[test]
    fn simplify_removes_kinks() {
        let pos = LinkDiagram::parse_pd("X[1,1,2,2]").unwrap();
        assert_eq!(pos.simplify(), LinkDiagram::unknot());
        let neg = LinkDiagram::parse_pd("X[2,1,1,2]").unwrap();
        assert_eq!(neg.sign(0).unwrap(), -1);
        assert_eq!(neg.simplify(), LinkDiagram::unknot());
    }

    #[test]
    fn simplify_removes_a_poke() {
        let poke = LinkDiagram::parse_pd("X[4,1,1,2] X[3,3,4,2]").unwrap();
        assert_eq!(poke.component_count(), 1);
        assert_eq!(poke.writhe(), 0);
        assert_eq!(poke.simplify(), LinkDiagram::unknot());
    }

    #[test]
    fn simplify_leaves_the_trefoil_alone() {
        let r = right_trefoil();
        assert_eq!(r.simplify(), r);
    }

    #[test]
    fn connected_sum_concatenates_knots() {
        let r = right_trefoil();
        let sum = r.connected_sum(&r).unwrap();
        assert_eq!(sum.num_crossings(), 6);
        assert_eq!(sum.component_count(), 1);
        assert_eq!(sum.writhe(), 6);
        let u = LinkDiagram::unknot();
        assert_eq!(u.connected_sum(&r).unwrap(), r);
        assert_eq!(r.connected_sum(&u).unwrap(), r);
        let hopf = LinkDiagram::parse_pd("X[1,3,4,2] X[3,1,2,4]").unwrap();
        assert!(matches!(
            r.connected_sum(&hopf),
            Err(Error::NotAKnot(_))
        ));
    }

    #[test]
    fn self_sum_counts_copies() {
        let r = right_trefoil();
        assert_eq!(r.self_sum(0).unwrap(), LinkDiagram::unknot());
        assert_eq!(r.self_sum(1).unwrap(), r);
        let triple = r.self_sum(3).unwrap();
        assert_eq!(triple.num_crossings(), 9);
        assert!(triple.is_knot());
    }

    #[test]
    fn canonical_key_ignores_labels_but_not_crossings() {
        let r = right_trefoil();
        let shifted =
            LinkDiagram::parse_pd("X[14,12,15,11] X[16,14,11,13] X[12,16,13,15]").unwrap();
        assert_eq!(r.canonical_key(), shifted.canonical_key());
        assert_ne!(r.canonical_key(), left_trefoil().canonical_key());
        assert_ne!(
            r.canonical_key(),
            r.switch_crossing(0).unwrap().canonical_key()
        );
    }

    #[test]
    fn traversal_spots_the_first_ascending_crossing() {
        let r = right_trefoil();
        assert!(r.first_ascending().is_some());
        assert!(LinkDiagram::unknot().first_ascending().is_none());
    }

    #[test]
    fn pd_text_round_trips() {
        let r = right_trefoil();
        assert_eq!(LinkDiagram::parse_pd(&r.to_pd()).unwrap(), r);
        assert_eq!(r.to_pd(), "X[4,2,5,1] X[6,4,1,3] X[2,6,3,5]");
    }

    #[test]
    fn shadow_curl_factors_match_crossing_signs() {
        let pos = LinkDiagram::parse_pd("X[1,1,2,2]").unwrap();
        let (reduced, exp) = pos.shadow().simplify();
        assert_eq!(reduced.num_crossings(), 0);
        assert_eq!(reduced.marked_unknots(), 1);
        assert_eq!(exp, 1);
        let neg = LinkDiagram::parse_pd("X[2,1,1,2]").unwrap();
        let (_, exp) = neg.shadow().simplify();
        assert_eq!(exp, -1);
    }

    #[test]
    fn shadow_simplify_removes_a_poke_without_curl_factors() {
        let poke = LinkDiagram::parse_pd("X[4,1,1,2] X[3,3,4,2]").unwrap();
        let (reduced, exp) = poke.shadow().simplify();
        assert_eq!(reduced.num_crossings(), 0);
        assert_eq!(reduced.component_count(), 1);
        assert_eq!(exp, 0);
    }

    #[test]
    fn shadow_switch_then_orient_flips_one_sign() {
        let r = right_trefoil();
        let d = r.shadow().switch(0).unwrap().orient();
        assert_eq!(d.num_crossings(), 3);
        assert!(d.is_knot());
        assert_eq!(d.writhe(), 1);
    }

    #[test]
    fn orient_preserves_knot_writhe() {
        for d in [right_trefoil(), left_trefoil()] {
            let oriented = d.shadow().orient();
            assert_eq!(oriented.writhe(), d.writhe());
            assert_eq!(oriented.component_count(), d.component_count());
        }
    }

    #[test]
    fn shadow_keys_normalize_rotation_and_labels() {
        let r = right_trefoil();
        let oriented = r.shadow().orient();
        assert_eq!(r.shadow().canonical_key(), oriented.shadow().canonical_key());
        // Switching every crossing of the left trefoil mirrors it into the
        // right trefoil's shadow.
        let mut mirrored = left_trefoil().shadow();
        for i in 0..3 {
            mirrored = mirrored.switch(i).unwrap();
        }
        assert_eq!(mirrored.canonical_key(), r.shadow().canonical_key());
        assert_ne!(
            left_trefoil().shadow().canonical_key(),
            r.shadow().canonical_key()
        );
    }

    #[test]
    fn shadow_smoothings_count_components() {
        let k = LinkDiagram::parse_pd("X[1,1,2,2]").unwrap().shadow();
        let zero = k.smooth(0, SmoothKind::Zero).unwrap();
        assert_eq!(zero.component_count(), 2);
        let inf = k.smooth(0, SmoothKind::Infinity).unwrap();
        assert_eq!(inf.component_count(), 1);
    }
}
