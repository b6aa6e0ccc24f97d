//! Bounded, deterministic group-triviality search: Tietze simplification of
//! finite presentations followed by coset enumeration of the trivial
//! subgroup. Both halves are exact; when the limits run out the caller gets
//! an honest "unknown" instead of a guess.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::homology::IntMatrix;
use crate::presentation::{GroupPresentation, Word};

/// Limits for the bounded search. `STRATIFOLD_ORACLE_LIMITS=cosets,steps`
/// overrides the defaults process-wide.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_cosets: usize,
    pub max_tietze_steps: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits { max_cosets: 100_000, max_tietze_steps: 10_000 }
    }
}

impl OracleLimits {
    /// Parse `"cosets,steps"`.
    pub fn parse(s: &str) -> Option<Self> {
        let (a, b) = s.split_once(',')?;
        Some(OracleLimits {
            max_cosets: a.trim().parse().ok()?,
            max_tietze_steps: b.trim().parse().ok()?,
        })
    }

    pub fn from_env() -> Self {
        std::env::var("STRATIFOLD_ORACLE_LIMITS")
            .ok()
            .and_then(|s| Self::parse(&s))
            .unwrap_or_default()
    }
}

/// A bare finite presentation: generator names and relator words.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub names: Vec<String>,
    pub relators: Vec<Word>,
}

impl From<&GroupPresentation> for Presentation {
    fn from(p: &GroupPresentation) -> Self {
        Presentation { names: p.names.clone(), relators: p.relators.clone() }
    }
}

/// Net-exponent matrix of the relators: one row per relator over one column
/// per generator. Its cokernel is the abelianization.
pub fn abelianization_matrix(p: &Presentation) -> IntMatrix {
    let mut m = IntMatrix::zeros(p.relators.len(), p.names.len());
    for (i, rel) in p.relators.iter().enumerate() {
        for (g, e) in rel {
            m.add_assign_entry(i, *g, &BigInt::from(*e));
        }
    }
    m
}

fn free_reduce(word: &mut Word) {
    let mut out: Word = Vec::with_capacity(word.len());
    for &(g, e) in word.iter() {
        if e == 0 {
            continue;
        }
        if let Some(last) = out.last_mut() {
            if last.0 == g {
                last.1 += e;
                if last.1 == 0 {
                    out.pop();
                }
                continue;
            }
        }
        out.push((g, e));
    }
    *word = out;
}

fn cyclic_reduce(word: &mut Word) {
    free_reduce(word);
    while word.len() >= 2 && word.first().unwrap().0 == word.last().unwrap().0 {
        let (g, e_last) = word.pop().unwrap();
        word[0].1 += e_last;
        if word[0].1 == 0 {
            word.remove(0);
        }
        let _ = g;
        free_reduce(word);
    }
}

fn invert(word: &[(usize, i64)]) -> Word {
    word.iter().rev().map(|&(g, e)| (g, -e)).collect()
}

/// Largest exponent magnitude the rewriting tracks; beyond it the search
/// gives up rather than risk arithmetic overflow.
const EXPONENT_CAP: i64 = 1 << 40;

/// Substitute gen -> value inside `word`; None if the expansion would
/// exceed `cap` letters' worth of factors or the exponent cap.
fn substitute(word: &Word, gen: usize, value: &Word, cap: usize) -> Option<Word> {
    let mut out: Word = Vec::new();
    for &(g, e) in word {
        if g != gen {
            out.push((g, e));
            continue;
        }
        let reps = e.unsigned_abs() as usize;
        if reps.checked_mul(value.len().max(1))? > cap {
            return None;
        }
        let piece = if e > 0 { value.clone() } else { invert(value) };
        for _ in 0..reps {
            out.extend_from_slice(&piece);
        }
        if out.len() > cap {
            return None;
        }
    }
    free_reduce(&mut out);
    if out.iter().any(|(_, e)| e.abs() > EXPONENT_CAP) {
        return None;
    }
    Some(out)
}

const SUBSTITUTION_CAP: usize = 4096;

/// Result of the simplification pass.
pub struct Simplified {
    pub pres: Presentation,
    /// Original generator -> word in the simplified generators, when the
    /// rewriting stayed within the expansion cap.
    pub images: Option<Vec<Word>>,
}

/// Bounded Tietze simplification. Applies, deterministically and at most
/// `max_tietze_steps` times: free/cyclic reduction, gcd-merging of pure
/// power relators, and elimination of a generator that occurs exactly once
/// with exponent ±1 in some relator.
pub fn simplify(input: &Presentation, limits: &OracleLimits) -> Simplified {
    let n = input.names.len();
    let mut relators: Vec<Word> = input.relators.clone();
    let mut alive = vec![true; n];
    let mut images: Option<Vec<Word>> = Some((0..n).map(|g| vec![(g, 1)]).collect());

    let mut steps = 0usize;
    loop {
        for rel in relators.iter_mut() {
            cyclic_reduce(rel);
        }
        relators.retain(|r| !r.is_empty());
        relators.sort();
        relators.dedup();

        if steps >= limits.max_tietze_steps {
            break;
        }

        // Merge pure powers of the same generator: x^a = x^b = 1 <=> x^gcd = 1.
        let mut merged = false;
        for g in 0..n {
            let mut exps: Vec<i64> = Vec::new();
            for rel in &relators {
                if rel.len() == 1 && rel[0].0 == g {
                    exps.push(rel[0].1.abs());
                }
            }
            if exps.len() >= 2 {
                let gcd = exps.iter().fold(0i64, |a, b| a.gcd(b));
                relators.retain(|r| !(r.len() == 1 && r[0].0 == g));
                relators.push(vec![(g, gcd)]);
                merged = true;
            }
        }
        if merged {
            steps += 1;
            continue;
        }

        // Eliminate a generator occurring once with exponent ±1 in a relator.
        // Candidate cost: substitution size × occurrences elsewhere.
        let mut best: Option<(usize, usize, usize, usize)> = None; // (cost, rel, pos, gen)
        for (ri, rel) in relators.iter().enumerate() {
            for (pos, &(g, e)) in rel.iter().enumerate() {
                if e.abs() != 1 {
                    continue;
                }
                if rel.iter().enumerate().any(|(p2, &(g2, _))| p2 != pos && g2 == g) {
                    continue;
                }
                let occurrences: usize = relators
                    .iter()
                    .enumerate()
                    .filter(|(rj, _)| *rj != ri)
                    .map(|(_, r)| r.iter().filter(|(g2, _)| *g2 == g).count())
                    .sum();
                let cost = (rel.len().saturating_sub(1)) * (occurrences + 1);
                let key = (cost, ri, pos, g);
                if best.map_or(true, |b| key < b) {
                    best = Some(key);
                }
            }
        }
        let Some((_, ri, pos, gen)) = best else { break };

        // Rotate the relator so the chosen factor leads: x^e · w = 1, so
        // x = w^{-e}.
        let rel = relators[ri].clone();
        let mut rotated = rel[pos..].to_vec();
        rotated.extend_from_slice(&rel[..pos]);
        let e = rotated[0].1;
        let mut value = invert(&rotated[1..]);
        if e < 0 {
            value = invert(&value);
        }
        free_reduce(&mut value);

        relators.remove(ri);
        let mut ok = true;
        for rel in relators.iter_mut() {
            match substitute(rel, gen, &value, SUBSTITUTION_CAP) {
                Some(w) => *rel = w,
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            // Growth cap hit: put the relator back and stop eliminating.
            relators.push(rel);
            break;
        }
        if let Some(imgs) = &mut images {
            let mut lost = false;
            for img in imgs.iter_mut() {
                match substitute(img, gen, &value, SUBSTITUTION_CAP) {
                    Some(w) => *img = w,
                    None => {
                        lost = true;
                        break;
                    }
                }
            }
            if lost {
                images = None;
            }
        }
        alive[gen] = false;
        steps += 1;
    }

    // Re-index live generators.
    let mut remap = vec![usize::MAX; n];
    let mut names = Vec::new();
    for g in 0..n {
        if alive[g] {
            remap[g] = names.len();
            names.push(input.names[g].clone());
        }
    }
    let remap_word = |w: &Word| -> Word { w.iter().map(|&(g, e)| (remap[g], e)).collect() };
    let relators = relators.iter().map(|r| remap_word(r)).collect();
    let images = images.map(|imgs| imgs.iter().map(|w| remap_word(w)).collect());
    Simplified { pres: Presentation { names, relators }, images }
}

/// Completed coset table over the trivial subgroup: cosets are exactly the
/// group elements.
pub struct CosetTable {
    n_gens: usize,
    table: Vec<Vec<Option<usize>>>,
}

enum EnumState {
    Complete(CosetTable),
    Overflow,
}

struct Enumerator {
    n_letters: usize,
    relators: Vec<Vec<usize>>,
    table: Vec<Vec<Option<usize>>>,
    equivalence: Vec<usize>,
    dead_queue: VecDeque<usize>,
    max_cosets: usize,
    overflow: bool,
}

fn letters_of(word: &Word, cap: usize) -> Option<Vec<usize>> {
    let total = word
        .iter()
        .fold(0usize, |acc, (_, e)| acc.saturating_add(e.unsigned_abs().min(usize::MAX as u64) as usize));
    if total > cap {
        return None;
    }
    let mut out = Vec::with_capacity(total);
    for &(g, e) in word {
        let letter = if e > 0 { 2 * g } else { 2 * g + 1 };
        for _ in 0..e.unsigned_abs() {
            out.push(letter);
        }
    }
    Some(out)
}

impl Enumerator {
    fn inv(letter: usize) -> usize {
        letter ^ 1
    }

    fn rep(&mut self, mut coset: usize) -> usize {
        let mut root = coset;
        while self.equivalence[root] != root {
            root = self.equivalence[root];
        }
        while self.equivalence[coset] != coset {
            let next = self.equivalence[coset];
            self.equivalence[coset] = root;
            coset = next;
        }
        root
    }

    fn is_alive(&self, coset: usize) -> bool {
        self.equivalence[coset] == coset
    }

    fn deduction(&mut self, a: usize, b: usize, letter: usize) {
        self.table[a][letter] = Some(b);
        self.table[b][Self::inv(letter)] = Some(a);
    }

    fn define(&mut self, coset: usize, letter: usize) -> Option<usize> {
        if self.table.len() >= self.max_cosets {
            self.overflow = true;
            return None;
        }
        let fresh = self.table.len();
        self.table.push(vec![None; self.n_letters]);
        self.equivalence.push(fresh);
        self.deduction(coset, fresh, letter);
        Some(fresh)
    }

    fn merge(&mut self, a: usize, b: usize) {
        let ra = self.rep(a);
        let rb = self.rep(b);
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.equivalence[hi] = lo;
            self.dead_queue.push_back(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.merge(a, b);
        while let Some(dead) = self.dead_queue.pop_front() {
            for letter in 0..self.n_letters {
                let Some(next) = self.table[dead][letter] else { continue };
                // Every inbound reference to `dead` is the mirror of an entry
                // in its own row, so clearing the mirrors scrubs them all.
                self.table[next][Self::inv(letter)] = None;
                let dead_rep = self.rep(dead);
                let next_rep = self.rep(next);
                if let Some(f) = self.table[dead_rep][letter] {
                    self.merge(next_rep, f);
                } else if let Some(bk) = self.table[next_rep][Self::inv(letter)] {
                    self.merge(dead_rep, bk);
                } else {
                    self.deduction(dead_rep, next_rep, letter);
                }
            }
        }
    }

    fn scan_and_fill(&mut self, coset: usize, word: &[usize]) {
        if word.is_empty() {
            return;
        }
        let mut lv = coset;
        let mut rv = coset;
        let mut lp: isize = 0;
        let mut rp: isize = word.len() as isize - 1;
        loop {
            while lp <= rp {
                match self.table[lv][word[lp as usize]] {
                    Some(next) => {
                        lv = next;
                        lp += 1;
                    }
                    None => break,
                }
            }
            if lp > rp {
                if lv != rv {
                    self.coincidence(lv, rv);
                }
                return;
            }
            while rp >= lp {
                match self.table[rv][Self::inv(word[rp as usize])] {
                    Some(next) => {
                        rv = next;
                        rp -= 1;
                    }
                    None => break,
                }
            }
            if rp < lp {
                self.coincidence(lv, rv);
                return;
            }
            if rp == lp {
                self.deduction(lv, rv, word[lp as usize]);
                return;
            }
            if self.define(lv, word[lp as usize]).is_none() {
                return; // overflow
            }
        }
    }

    fn run(mut self) -> EnumState {
        let mut current = 0usize;
        while current < self.table.len() {
            if self.overflow {
                return EnumState::Overflow;
            }
            if self.is_alive(current) {
                for ri in 0..self.relators.len() {
                    let word = self.relators[ri].clone();
                    self.scan_and_fill(current, &word);
                    if self.overflow {
                        return EnumState::Overflow;
                    }
                    if !self.is_alive(current) {
                        break;
                    }
                }
                if self.is_alive(current) {
                    for letter in 0..self.n_letters {
                        if self.table[current][letter].is_none() && self.define(current, letter).is_none() {
                            return EnumState::Overflow;
                        }
                    }
                }
            }
            current += 1;
        }
        // Compress to live cosets.
        let live: Vec<usize> =
            (0..self.table.len()).filter(|&c| self.equivalence[c] == c).collect();
        let mut renumber = vec![usize::MAX; self.table.len()];
        for (i, &c) in live.iter().enumerate() {
            renumber[c] = i;
        }
        let mut compact = vec![vec![None; self.n_letters]; live.len()];
        for (i, &c) in live.iter().enumerate() {
            for letter in 0..self.n_letters {
                let target = self.table[c][letter].expect("completed table is total");
                let mut t = target;
                while self.equivalence[t] != t {
                    t = self.equivalence[t];
                }
                compact[i][letter] = Some(renumber[t]);
            }
        }
        EnumState::Complete(CosetTable { n_gens: self.n_letters / 2, table: compact })
    }
}

impl CosetTable {
    /// Enumerate the elements of the presented group; `None` when the coset
    /// limit is exceeded (the group may still be finite or infinite).
    pub fn enumerate(pres: &Presentation, max_cosets: usize) -> Option<CosetTable> {
        let n_letters = 2 * pres.names.len();
        let mut relators = Vec::with_capacity(pres.relators.len());
        for rel in &pres.relators {
            relators.push(letters_of(rel, max_cosets.saturating_mul(4))?);
        }
        let e = Enumerator {
            n_letters,
            relators,
            table: vec![vec![None; n_letters]],
            equivalence: vec![0],
            dead_queue: VecDeque::new(),
            max_cosets: max_cosets.max(1),
            overflow: false,
        };
        match e.run() {
            EnumState::Complete(t) => Some(t),
            EnumState::Overflow => None,
        }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn word_is_identity(&self, word: &Word) -> bool {
        let mut coset = 0usize;
        for &(g, e) in word {
            debug_assert!(g < self.n_gens);
            let letter = if e > 0 { 2 * g } else { 2 * g + 1 };
            for _ in 0..e.unsigned_abs() {
                coset = self.table[coset][letter].expect("completed table is total");
            }
        }
        coset == 0
    }
}

/// Outcome of the bounded triviality search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Triviality {
    Trivial,
    /// The group completed enumeration with this many elements (> 1).
    FiniteNontrivial(usize),
    /// The abelianization has positive free rank, so the group is infinite.
    Infinite,
    Unknown,
}

/// Free rank of the abelianization: positive rank certifies an infinite
/// group, on which coset enumeration over the trivial subgroup can never
/// complete.
fn abelian_rank_positive(pres: &Presentation) -> bool {
    let m = abelianization_matrix(pres);
    let divisors = crate::homology::snf_divisors(&m);
    m.cols() > divisors.len()
}

/// Decide whether the presented group is trivial, within the limits.
pub fn group_triviality(pres: &Presentation, limits: &OracleLimits) -> Triviality {
    let simplified = simplify(pres, limits);
    if simplified.pres.names.is_empty() {
        return Triviality::Trivial;
    }
    if abelian_rank_positive(&simplified.pres) {
        return Triviality::Infinite;
    }
    match CosetTable::enumerate(&simplified.pres, limits.max_cosets) {
        Some(table) if table.order() == 1 => Triviality::Trivial,
        Some(table) => Triviality::FiniteNontrivial(table.order()),
        None => Triviality::Unknown,
    }
}

/// Certify that a single generator is trivial in the presented group.
/// `Some(true)`/`Some(false)` are proofs within the limits; `None` means the
/// search was inconclusive.
pub fn generator_is_trivial(pres: &Presentation, gen: usize, limits: &OracleLimits) -> Option<bool> {
    let simplified = simplify(pres, limits);
    if simplified.pres.names.is_empty() {
        return Some(true);
    }
    if let Some(images) = &simplified.images {
        if images[gen].is_empty() {
            return Some(true);
        }
        if abelian_rank_positive(&simplified.pres) {
            // Enumeration cannot complete on an infinite group; the bounded
            // search has no further leverage.
            return None;
        }
        if let Some(table) = CosetTable::enumerate(&simplified.pres, limits.max_cosets) {
            return Some(table.word_is_identity(&images[gen]));
        }
        return None;
    }
    None
}
