//! Fundamental-group presentations and the abelianized relation matrix.
//!
//! Generators are one `b` per black vertex (the class of its singular
//! circle) plus one `t` per edge outside a maximal tree. Every white vertex
//! of genus 0 contributes one relator: the product of its boundary-circle
//! words in the deterministic cyclic order, where a tree edge with label `m`
//! contributes `b^m` and a chord contributes `t · b^{σm} · t⁻¹`.
//!
//! The chord exponent sign σ is the gluing holonomy of the chord's
//! fundamental cycle corrected by the parity of the number of white vertices
//! on that cycle. With this convention a one-white/one-black cycle with
//! labels 1, 2 and positive holonomy presents the Baumslag–Solitar group
//! BS(2,1), and a pure cycle with labels m₁,n₁,…,m_k,n_k has first homology
//! ℤ ⊕ G_d with |G_d| = |n₁…n_k − ε·m₁…m_k|.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::graph::{BlackId, EdgeId, LabelledGraph, VertexRef};
use crate::homology::IntMatrix;

/// A word in the presentation's generators: (generator index, exponent).
pub type Word = Vec<(usize, i64)>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    /// Class of a singular circle.
    Black(BlackId),
    /// Traversal generator of an edge outside the maximal tree.
    Traversal(EdgeId),
}

#[derive(Debug, Clone)]
pub struct GroupPresentation {
    pub generators: Vec<GeneratorKind>,
    pub names: Vec<String>,
    pub relators: Vec<Word>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("white vertex `{id}` has genus {genus}; presentations are generated for genus 0 only")]
pub struct NonzeroGenus {
    pub id: String,
    pub genus: i64,
}

impl GroupPresentation {
    pub fn traversal_count(&self) -> usize {
        self.generators
            .iter()
            .filter(|g| matches!(g, GeneratorKind::Traversal(_)))
            .count()
    }
}

fn push_factor(word: &mut Word, gen: usize, exp: i64) {
    if exp == 0 {
        return;
    }
    if let Some(last) = word.last_mut() {
        if last.0 == gen {
            last.1 += exp;
            if last.1 == 0 {
                word.pop();
            }
            return;
        }
    }
    word.push((gen, exp));
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "generators:")?;
        for name in &self.names {
            write!(f, " {name}")?;
        }
        writeln!(f)?;
        for rel in &self.relators {
            if rel.is_empty() {
                writeln!(f, "1")?;
                continue;
            }
            let mut first = true;
            for (gen, exp) in rel {
                if !first {
                    write!(f, " ")?;
                }
                first = false;
                if *exp == 1 {
                    write!(f, "{}", self.names[*gen])?;
                } else {
                    write!(f, "{}^{}", self.names[*gen], exp)?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Effective exponent sign of each edge: +1 on tree edges; on a chord, the
/// holonomy of its fundamental cycle times (−1)^(number of white vertices on
/// that cycle).
fn edge_signs(g: &LabelledGraph, tree: &[bool]) -> Vec<i64> {
    let mut signs = vec![1i64; g.edge_count()];
    for e in g.edge_ids() {
        if tree[e.0] {
            continue;
        }
        let (w, b) = g.endpoints(e);
        let path = g.tree_path(b, w, tree);
        let mut holonomy = g.edge(e).sign;
        for pe in &path {
            holonomy = holonomy.product(g.edge(*pe).sign);
        }
        // Vertices on the cycle: endpoints of the chord plus path interior.
        let mut cycle_vertices: HashSet<VertexRef> = HashSet::new();
        cycle_vertices.insert(w);
        cycle_vertices.insert(b);
        let mut cur = b;
        for pe in &path {
            cur = g.other_endpoint(*pe, cur);
            cycle_vertices.insert(cur);
        }
        let whites_on_cycle = cycle_vertices.iter().filter(|v| v.is_white()).count();
        let parity = if whites_on_cycle % 2 == 0 { 1 } else { -1 };
        signs[e.0] = holonomy.value() * parity;
    }
    signs
}

/// Presentation of the fundamental group of the stratifold of `g`.
///
/// Requires every white genus to be 0; the traversal generator count equals
/// the first Betti number of the graph.
pub fn pi1_presentation(g: &LabelledGraph) -> Result<GroupPresentation, NonzeroGenus> {
    pi1_presentation_for_tree(g, &g.spanning_tree())
}

pub(crate) fn pi1_presentation_for_tree(
    g: &LabelledGraph,
    tree: &[bool],
) -> Result<GroupPresentation, NonzeroGenus> {
    for w in g.whites() {
        if g.genus(w) != 0 {
            return Err(NonzeroGenus { id: g.white_name(w).to_string(), genus: g.genus(w) });
        }
    }

    let mut generators = Vec::new();
    let mut names = Vec::new();
    for b in g.blacks() {
        generators.push(GeneratorKind::Black(b));
        names.push(format!("b{}", g.black_name(b)));
    }
    let mut traversal_gen = vec![usize::MAX; g.edge_count()];
    for e in g.edge_ids() {
        if !tree[e.0] {
            traversal_gen[e.0] = generators.len();
            generators.push(GeneratorKind::Traversal(e));
            names.push(format!("t{}", e.0));
        }
    }

    let signs = edge_signs(g, tree);
    let mut relators = Vec::new();
    for w in g.whites() {
        let mut word: Word = Vec::new();
        for &e in g.white_edges(w) {
            let edge = g.edge(e);
            let exp = signs[e.0] * edge.label as i64;
            if tree[e.0] {
                push_factor(&mut word, edge.black.0, exp);
            } else {
                let t = traversal_gen[e.0];
                push_factor(&mut word, t, 1);
                push_factor(&mut word, edge.black.0, exp);
                push_factor(&mut word, t, -1);
            }
        }
        relators.push(word);
    }
    Ok(GroupPresentation { generators, names, relators })
}

/// Abelianized relation matrix for first homology.
///
/// One row per white vertex over one column per black vertex, followed by
/// |genus| columns per non-orientable white (each entered with coefficient 2
/// in its own row). Orientable positive genus and traversal generators
/// relate to nothing and are counted in `free_rank_extra`.
#[derive(Debug, Clone)]
pub struct H1Matrix {
    pub matrix: IntMatrix,
    pub free_rank_extra: usize,
    /// The first `black_columns` columns correspond to black vertices in id order.
    pub black_columns: usize,
}

pub fn h1_matrix(g: &LabelledGraph) -> H1Matrix {
    h1_matrix_for_tree(g, &g.spanning_tree())
}

pub(crate) fn h1_matrix_for_tree(g: &LabelledGraph, tree: &[bool]) -> H1Matrix {
    let signs = edge_signs(g, tree);
    let black_columns = g.black_count();
    let mut nonorientable_cols = 0usize;
    let mut free_rank_extra = g.betti1();
    for w in g.whites() {
        let genus = g.genus(w);
        if genus > 0 {
            free_rank_extra += 2 * genus as usize;
        } else if genus < 0 {
            nonorientable_cols += (-genus) as usize;
        }
    }

    let cols = black_columns + nonorientable_cols;
    let mut matrix = IntMatrix::zeros(g.white_count(), cols);
    let mut next_nonorientable = black_columns;
    for w in g.whites() {
        for &e in g.white_edges(w) {
            let edge = g.edge(e);
            let coeff = BigInt::from(signs[e.0] * edge.label as i64);
            matrix.add_assign_entry(w.0, edge.black.0, &coeff);
        }
        let genus = g.genus(w);
        if genus < 0 {
            for _ in 0..(-genus) {
                matrix.set(w.0, next_nonorientable, BigInt::from(2));
                next_nonorientable += 1;
            }
        }
    }
    H1Matrix { matrix, free_rank_extra, black_columns }
}
