//! Diagrams from braid words. Strands run downward; the closure joins each
//! bottom endpoint back to the top endpoint at the same position. Letter
//! `+i` crosses the strand at position i+1 over the strand at position i,
//! which makes a crossing of sign +1; `-i` is its mirror.

use super::LinkDiagram;
use crate::error::{Error, Result};

/// Close the braid on `strands` strands described by `word`.
pub fn braid_closure(strands: u32, word: &[i32]) -> Result<LinkDiagram> {
    if strands == 0 {
        return Err(Error::InvalidPd("a braid needs at least one strand".into()));
    }
    for &k in word {
        if k == 0 || k.unsigned_abs() >= strands {
            return Err(Error::InvalidPd(format!(
                "braid letter {k} out of range for {strands} strands"
            )));
        }
    }
    let n = strands as usize;
    let mut labels: Vec<u32> = (1..=strands).collect();
    let mut next = strands + 1;
    let mut quads: Vec<[u32; 4]> = Vec::with_capacity(word.len());
    for &k in word {
        let i = (k.unsigned_abs() - 1) as usize;
        let a = labels[i];
        let b = labels[i + 1];
        let c = next;
        let d = next + 1;
        next += 2;
        if k > 0 {
            // Right strand over; the under-strand enters top-left.
            quads.push([a, c, d, b]);
        } else {
            // Left strand over; the under-strand enters top-right.
            quads.push([b, a, c, d]);
        }
        labels[i] = c;
        labels[i + 1] = d;
    }
    let mut marked = 0;
    for pos in 0..n {
        let final_label = labels[pos];
        let initial = pos as u32 + 1;
        if final_label == initial {
            marked += 1;
            continue;
        }
        for q in quads.iter_mut() {
            for e in q.iter_mut() {
                if *e == final_label {
                    *e = initial;
                }
            }
        }
    }
    LinkDiagram::from_quadruples(quads, marked)
}
