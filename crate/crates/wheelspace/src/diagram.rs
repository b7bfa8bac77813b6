//! Wiring diagrams: the working representation behind every wheel operation.
//!
//! A diagram is a set of strands (input slot -> arrows -> output slot) and
//! loops. Every arrow occurrence carries a rank recording its position in the
//! "original" tensor order. Operations cut and reconnect strands; [`Diagram::finish`]
//! then sorts everything into canonical order and returns the Koszul sign of
//! the resulting permutation of occurrences.

use std::collections::HashMap;

use ncw_core::{canonical_rotation, koszul_reorder_sign, ArrowId, CyclicWord, Path, Permutation, Quiver, VertexId};

use crate::term::WheelTerm;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Occ {
    pub arrow: ArrowId,
    pub rank: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strand {
    pub input: u32,
    pub output: u32,
    pub occs: Vec<Occ>,
    pub tail: VertexId,
    pub head: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Loop {
    pub occs: Vec<Occ>,
    pub vertex: VertexId,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Diagram {
    pub strands: Vec<Strand>,
    pub loops: Vec<Loop>,
}

/// Where an occurrence sits inside a diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Site {
    Strand(usize, usize),
    Loop(usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum End {
    Input(u32),
    Output(u32),
    Before(u32),
    After(u32),
}

struct Piece {
    start: End,
    end: End,
    occs: Vec<Occ>,
    start_v: VertexId,
    end_v: VertexId,
}

fn occs_of(arrows: &[ArrowId], next: &mut u32) -> Vec<Occ> {
    arrows
        .iter()
        .map(|&arrow| {
            let o = Occ { arrow, rank: *next };
            *next += 1;
            o
        })
        .collect()
}

impl Diagram {
    /// Diagram of a canonical term, ranks assigned from `first` in canonical order.
    pub fn from_term(term: &WheelTerm, first: u32) -> (Diagram, u32) {
        let mut next = first;
        let strands = term
            .strands
            .iter()
            .enumerate()
            .map(|(k, p)| Strand {
                input: term.perm.apply(k) as u32,
                output: k as u32,
                occs: occs_of(&p.arrows, &mut next),
                tail: p.tail,
                head: p.head,
            })
            .collect();
        let loops = term.loops.iter().map(|c| Loop { occs: occs_of(&c.arrows, &mut next), vertex: c.vertex }).collect();
        (Diagram { strands, loops }, next)
    }

    pub fn degree(&self) -> usize {
        self.strands.len()
    }

    /// Disjoint union; `other`'s slots are shifted past ours.
    pub fn juxtapose(mut self, other: Diagram) -> Diagram {
        let m = self.degree() as u32;
        self.strands.extend(other.strands.into_iter().map(|mut s| {
            s.input += m;
            s.output += m;
            s
        }));
        self.loops.extend(other.loops);
        self
    }

    /// All occurrences with their sites, in rank order.
    pub fn occurrences(&self) -> Vec<(Occ, Site)> {
        let mut out = Vec::new();
        for (k, s) in self.strands.iter().enumerate() {
            out.extend(s.occs.iter().enumerate().map(|(i, &o)| (o, Site::Strand(k, i))));
        }
        for (l, c) in self.loops.iter().enumerate() {
            out.extend(c.occs.iter().enumerate().map(|(i, &o)| (o, Site::Loop(l, i))));
        }
        out.sort_by_key(|(o, _)| o.rank);
        out
    }

    /// Replaces the occurrence of rank `rank` by the nonempty word `arrows`,
    /// which must have the same endpoints. The new occurrences take the
    /// place of the old one in rank order.
    pub fn splice(&self, rank: u32, arrows: &[ArrowId]) -> Diagram {
        assert!(!arrows.is_empty(), "splice needs a nonempty word");
        let extra = arrows.len() as u32 - 1;
        let shift = |occs: &[Occ]| -> Vec<Occ> {
            let mut out = Vec::with_capacity(occs.len() + extra as usize);
            for o in occs {
                if o.rank == rank {
                    out.extend(arrows.iter().enumerate().map(|(i, &arrow)| Occ { arrow, rank: rank + i as u32 }));
                } else if o.rank > rank {
                    out.push(Occ { arrow: o.arrow, rank: o.rank + extra });
                } else {
                    out.push(*o);
                }
            }
            out
        };
        Diagram {
            strands: self.strands.iter().map(|s| Strand { occs: shift(&s.occs), ..s.clone() }).collect(),
            loops: self.loops.iter().map(|c| Loop { occs: shift(&c.occs), ..c.clone() }).collect(),
        }
    }

    /// Relabels input slots by `inputs` and output slots by `outputs`.
    pub fn relabel(&mut self, inputs: &Permutation, outputs: &Permutation) {
        for s in &mut self.strands {
            s.input = inputs.apply(s.input as usize) as u32;
            s.output = outputs.apply(s.output as usize) as u32;
        }
    }

    /// Deletes each pair `(p, q)` of occurrences (by rank), wiring the arrow
    /// before `p` to the arrow after `q` and the arrow before `q` to the arrow
    /// after `p`. Each `(i, j)` in `joins` plugs output slot `i` into input
    /// slot `j`. Slots are renumbered densely afterwards. Returns `None` when
    /// a junction joins different vertices.
    pub fn rewire(&self, q: &Quiver, pairs: &[(u32, u32)], joins: &[(u32, u32)]) -> Option<Diagram> {
        let mut partner: HashMap<u32, u32> = HashMap::new();
        for &(a, b) in pairs {
            partner.insert(a, b);
            partner.insert(b, a);
        }
        let mut pieces: Vec<Piece> = Vec::new();
        let mut out = Diagram::default();

        for s in &self.strands {
            let mut start = End::Input(s.input);
            let mut start_v = s.tail;
            let mut occs = Vec::new();
            for &o in &s.occs {
                if partner.contains_key(&o.rank) {
                    pieces.push(Piece { start, end: End::Before(o.rank), occs, start_v, end_v: q.tail(o.arrow) });
                    occs = Vec::new();
                    start = End::After(o.rank);
                    start_v = q.head(o.arrow);
                } else {
                    occs.push(o);
                }
            }
            pieces.push(Piece { start, end: End::Output(s.output), occs, start_v, end_v: s.head });
        }
        for c in &self.loops {
            let Some(first) = c.occs.iter().position(|o| partner.contains_key(&o.rank)) else {
                out.loops.push(c.clone());
                continue;
            };
            let n = c.occs.len();
            let f = c.occs[first];
            let mut start = End::After(f.rank);
            let mut start_v = q.head(f.arrow);
            let mut occs = Vec::new();
            for step in 1..=n {
                let o = c.occs[(first + step) % n];
                if partner.contains_key(&o.rank) {
                    pieces.push(Piece { start, end: End::Before(o.rank), occs, start_v, end_v: q.tail(o.arrow) });
                    occs = Vec::new();
                    start = End::After(o.rank);
                    start_v = q.head(o.arrow);
                } else {
                    occs.push(o);
                }
            }
        }

        let mut link: HashMap<End, End> = HashMap::new();
        for (&a, &b) in &partner {
            link.insert(End::Before(a), End::After(b));
        }
        for &(i, j) in joins {
            link.insert(End::Output(i), End::Input(j));
        }
        let targets: std::collections::HashSet<End> = link.values().copied().collect();
        let by_start: HashMap<End, usize> = pieces.iter().enumerate().map(|(k, p)| (p.start, k)).collect();
        let mut used = vec![false; pieces.len()];

        let follow = |k: usize| -> Option<usize> {
            let next = *by_start.get(link.get(&pieces[k].end)?)?;
            Some(next)
        };

        for k in 0..pieces.len() {
            let End::Input(slot) = pieces[k].start else { continue };
            if targets.contains(&pieces[k].start) {
                continue;
            }
            let mut occs = Vec::new();
            let mut cur = k;
            loop {
                used[cur] = true;
                occs.extend_from_slice(&pieces[cur].occs);
                match follow(cur) {
                    Some(next) => {
                        if pieces[cur].end_v != pieces[next].start_v {
                            return None;
                        }
                        cur = next;
                    }
                    None => break,
                }
            }
            let End::Output(o) = pieces[cur].end else {
                panic!("dangling strand end");
            };
            out.strands.push(Strand { input: slot, output: o, occs, tail: pieces[k].start_v, head: pieces[cur].end_v });
        }
        for k in 0..pieces.len() {
            if used[k] {
                continue;
            }
            let mut occs = Vec::new();
            let mut cur = k;
            loop {
                used[cur] = true;
                occs.extend_from_slice(&pieces[cur].occs);
                let next = follow(cur).expect("open piece inside a loop");
                if pieces[cur].end_v != pieces[next].start_v {
                    return None;
                }
                if next == k {
                    break;
                }
                cur = next;
            }
            out.loops.push(Loop { occs, vertex: pieces[k].start_v });
        }

        let mut ins: Vec<u32> = out.strands.iter().map(|s| s.input).collect();
        let mut outs: Vec<u32> = out.strands.iter().map(|s| s.output).collect();
        ins.sort_unstable();
        outs.sort_unstable();
        for s in &mut out.strands {
            s.input = ins.binary_search(&s.input).unwrap() as u32;
            s.output = outs.binary_search(&s.output).unwrap() as u32;
        }
        Some(out)
    }

    /// Canonical form. Returns `(negative, term)`, or `None` when the term
    /// vanishes (an odd self-antisymmetric loop, or a repeated odd loop).
    pub fn finish(&self, q: &Quiver) -> Option<(bool, WheelTerm)> {
        let mut strands: Vec<&Strand> = self.strands.iter().collect();
        strands.sort_by_key(|s| s.output);
        debug_assert!(strands.iter().enumerate().all(|(k, s)| s.output as usize == k));
        let perm = Permutation::from_images(strands.iter().map(|s| s.input).collect()).expect("inputs form a permutation");

        let mut loops: Vec<(CyclicWord, Vec<Occ>)> = Vec::with_capacity(self.loops.len());
        for c in &self.loops {
            let arrows: Vec<ArrowId> = c.occs.iter().map(|o| o.arrow).collect();
            let (k, _) = canonical_rotation(&arrows, &|a| q.grade(a))?;
            let n = arrows.len();
            let occs: Vec<Occ> = (0..n).map(|i| c.occs[(k + i) % n]).collect();
            let word =
                CyclicWord { arrows: occs.iter().map(|o| o.arrow).collect(), vertex: occs.first().map_or(c.vertex, |o| q.tail(o.arrow)) };
            loops.push((word, occs));
        }
        loops.sort_by(|a, b| a.0.cmp(&b.0));
        for w in loops.windows(2) {
            if w[0].0 == w[1].0 && w[0].0.is_odd(q) {
                return None;
            }
        }

        let mut ranks = Vec::new();
        let mut grades = Vec::new();
        for o in strands.iter().flat_map(|s| s.occs.iter()).chain(loops.iter().flat_map(|l| l.1.iter())) {
            ranks.push(o.rank);
            grades.push(q.grade(o.arrow));
        }
        let neg = koszul_reorder_sign(&ranks, &grades);
        let term = WheelTerm {
            perm,
            strands: strands
                .iter()
                .map(|s| Path { arrows: s.occs.iter().map(|o| o.arrow).collect(), tail: s.tail, head: s.head })
                .collect(),
            loops: loops.into_iter().map(|l| l.0).collect(),
        };
        Some((neg, term))
    }
}
