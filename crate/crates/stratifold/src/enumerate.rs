//! Exhaustive enumeration of small stratifold graphs, duplicate-free up to
//! isomorphism (canonical keys), streaming through a visitor.
//!
//! Growth moves: a new black vertex with a complete label multiset attaches
//! either by one edge to an existing white (tree growth) or by two edges to
//! existing whites (closing the unique cycle); remaining labels get fresh
//! terminal whites. Every connected graph with first Betti number ≤ 1,
//! genus-0 whites, and black sockets within the bounds arises this way.
//! Cycle-carrying graphs are emitted in both gluing orientations.

use std::collections::HashSet;

use thiserror::Error;

use crate::graph::{GraphBuilder, LabelledGraph, Sign};
use crate::io::canonical_key;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumBounds {
    pub max_blacks: usize,
    pub max_label: u32,
    /// Per-black degree cap keeping the census finite (label sums alone are
    /// unbounded). Default 3, the trivalent ceiling.
    pub max_black_degree: usize,
    pub trivalent_only: bool,
    /// Restrict to this first Betti number (0 or 1); `None` emits both.
    pub betti1: Option<usize>,
}

impl EnumBounds {
    pub fn new(max_blacks: usize, max_label: u32) -> Self {
        EnumBounds {
            max_blacks,
            max_label,
            max_black_degree: 3,
            trivalent_only: false,
            betti1: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("enumeration bounds too large: {reason}")]
pub struct BoundsTooLarge {
    pub reason: String,
}

const HARD_MAX_BLACKS: usize = 6;
const HARD_MAX_LABEL: u32 = 9;
const HARD_MAX_DEGREE: usize = 5;
const HARD_MAX_STATES: usize = 20_000_000;

/// Label multisets a black vertex may carry, sorted ascending.
fn sockets(bounds: &EnumBounds) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = Vec::new();
    fn rec(bounds: &EnumBounds, min: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let sum: u32 = cur.iter().sum();
        if !cur.is_empty() && sum >= 3 {
            out.push(cur.clone());
        }
        if cur.len() == bounds.max_black_degree {
            return;
        }
        for label in min..=bounds.max_label {
            cur.push(label);
            rec(bounds, label, cur, out);
            cur.pop();
        }
    }
    rec(bounds, 1, &mut cur, &mut out);
    if bounds.trivalent_only {
        out.retain(|s| s == &[1, 1, 1] || s == &[1, 2] || s == &[3]);
    }
    out
}

struct State {
    graph: LabelledGraph,
    has_cycle: bool,
}

fn add_black(
    g: &LabelledGraph,
    attachments: &[(String, u32)],
    fresh: &[u32],
) -> LabelledGraph {
    let mut b = GraphBuilder::new();
    for w in g.whites() {
        b.white(g.white_name(w), g.genus(w));
    }
    for bl in g.blacks() {
        b.black(g.black_name(bl));
    }
    for e in g.edge_ids() {
        let edge = g.edge(e);
        b.edge_signed(g.white_name(edge.white), g.black_name(edge.black), edge.label, edge.sign);
    }
    let new_black = format!("v{}", g.black_count());
    b.black(&new_black);
    for (white, label) in attachments {
        b.edge(white.clone(), &new_black, *label);
    }
    for (i, label) in fresh.iter().enumerate() {
        let name = format!("w{}", g.white_count() + i);
        b.white(&name, 0);
        b.edge(&name, &new_black, *label);
    }
    b.build().expect("growth moves preserve validity")
}

/// Remove one element at `index` from a sorted multiset.
fn without_index(socket: &[u32], index: usize) -> Vec<u32> {
    let mut rest = socket.to_vec();
    rest.remove(index);
    rest
}

/// Enumerate the census, calling `visit` for each graph; returns the count.
pub fn enumerate_graphs(
    bounds: &EnumBounds,
    mut visit: impl FnMut(&LabelledGraph),
) -> Result<usize, BoundsTooLarge> {
    if bounds.max_blacks > HARD_MAX_BLACKS {
        return Err(BoundsTooLarge { reason: format!("max_blacks {} > {HARD_MAX_BLACKS}", bounds.max_blacks) });
    }
    if bounds.max_label > HARD_MAX_LABEL {
        return Err(BoundsTooLarge { reason: format!("max_label {} > {HARD_MAX_LABEL}", bounds.max_label) });
    }
    if bounds.max_black_degree > HARD_MAX_DEGREE {
        return Err(BoundsTooLarge {
            reason: format!("max_black_degree {} > {HARD_MAX_DEGREE}", bounds.max_black_degree),
        });
    }
    let socket_list = sockets(bounds);
    let mut visit_count: usize = 0;
    let mut total_states: usize = 0;

    let emit = |state: &State, visit: &mut dyn FnMut(&LabelledGraph), count: &mut usize| {
        let betti = if state.has_cycle { 1 } else { 0 };
        if let Some(want) = bounds.betti1 {
            if want != betti {
                return;
            }
        }
        if bounds.trivalent_only && !state.graph.is_trivalent() {
            return;
        }
        visit(&state.graph);
        *count += 1;
        if state.has_cycle {
            // The other gluing orientation: negate one cycle edge.
            let g = &state.graph;
            let chord = g.chords()[0];
            let mut b = GraphBuilder::new();
            for w in g.whites() {
                b.white(g.white_name(w), g.genus(w));
            }
            for bl in g.blacks() {
                b.black(g.black_name(bl));
            }
            for e in g.edge_ids() {
                let edge = g.edge(e);
                let sign = if e == chord { Sign::Minus } else { Sign::Plus };
                b.edge_signed(g.white_name(edge.white), g.black_name(edge.black), edge.label, sign);
            }
            visit(&b.build().expect("sign flip preserves validity"));
            *count += 1;
        }
    };

    let seed = State { graph: LabelledGraph::single_white("w0", 0), has_cycle: false };
    emit(&seed, &mut visit, &mut visit_count);
    let mut layer = vec![seed];
    let mut seen: HashSet<String> = HashSet::new();

    for _ in 0..bounds.max_blacks {
        let mut next: Vec<State> = Vec::new();
        seen.clear();
        for state in &layer {
            let g = &state.graph;
            let whites: Vec<String> = g.whites().map(|w| g.white_name(w).to_string()).collect();
            for socket in &socket_list {
                // Tree growth: one label to an existing white, rest fresh.
                let mut tried: HashSet<u32> = HashSet::new();
                for i in 0..socket.len() {
                    if !tried.insert(socket[i]) {
                        continue;
                    }
                    let rest = without_index(socket, i);
                    for w in &whites {
                        let candidate = add_black(g, &[(w.clone(), socket[i])], &rest);
                        total_states += 1;
                        if total_states > HARD_MAX_STATES {
                            return Err(BoundsTooLarge { reason: "state cap exceeded".into() });
                        }
                        if seen.insert(canonical_key(&candidate)) {
                            next.push(State { graph: candidate, has_cycle: state.has_cycle });
                        }
                    }
                }
                // Cycle closing: two labels to existing whites.
                if !state.has_cycle && socket.len() >= 2 {
                    let mut tried_pairs: HashSet<(u32, u32)> = HashSet::new();
                    for i in 0..socket.len() {
                        for j in i + 1..socket.len() {
                            let pair = (socket[i], socket[j]);
                            if !tried_pairs.insert(pair) {
                                continue;
                            }
                            let mut rest = socket.to_vec();
                            rest.remove(j);
                            rest.remove(i);
                            for (wi, w1) in whites.iter().enumerate() {
                                for (wj, w2) in whites.iter().enumerate() {
                                    // For equal labels the pair is unordered.
                                    if pair.0 == pair.1 && wj < wi {
                                        continue;
                                    }
                                    let candidate = add_black(
                                        g,
                                        &[(w1.clone(), pair.0), (w2.clone(), pair.1)],
                                        &rest,
                                    );
                                    total_states += 1;
                                    if total_states > HARD_MAX_STATES {
                                        return Err(BoundsTooLarge {
                                            reason: "state cap exceeded".into(),
                                        });
                                    }
                                    if seen.insert(canonical_key(&candidate)) {
                                        next.push(State { graph: candidate, has_cycle: true });
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        for state in &next {
            emit(state, &mut visit, &mut visit_count);
        }
        layer = next;
    }
    Ok(visit_count)
}

/// Collect the census into a vector (small bounds only).
pub fn enumerate_to_vec(bounds: &EnumBounds) -> Result<Vec<LabelledGraph>, BoundsTooLarge> {
    let mut out = Vec::new();
    enumerate_graphs(bounds, |g| out.push(g.clone()))?;
    Ok(out)
}
