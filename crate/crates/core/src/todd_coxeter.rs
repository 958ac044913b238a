//! Coset enumeration (Hazelgrove–Leech–Trotter strategy).
//!
//! Cosets are rows of a flat table with one column per generator and one per
//! inverse; column `2k` is the `k`-th generator and `2k+1` its inverse.
//! Coincidences are merged immediately through a union-find whose
//! representative is always the lowest coset id. When the table fills up,
//! dead rows are compacted away (renumbering preserves discovery order).

use std::collections::VecDeque;
use std::fmt;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::words::{Letter, Word};

const UNDEF: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of simultaneously live cosets.
    pub max_cosets: usize,
    pub max_time: Duration,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_cosets: 1_000_000, max_time: Duration::from_secs(60) }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumStats {
    /// Total cosets ever defined.
    pub defined: usize,
    pub max_alive: usize,
    /// Cosets killed by coincidences.
    pub collapses: usize,
    pub compactions: usize,
    pub millis: u64,
}

impl fmt::Display for EnumStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "defined={} max-alive={} collapses={}",
            self.defined, self.max_alive, self.collapses
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OverflowReason {
    Cosets,
    Time,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Enumeration {
    Finished { index: usize, table: CosetTable, stats: EnumStats },
    /// Limits were hit; this says nothing about whether the index is finite.
    Overflow { reason: OverflowReason, stats: EnumStats },
}

impl Enumeration {
    pub fn index(&self) -> Option<usize> {
        match self {
            Enumeration::Finished { index, .. } => Some(*index),
            Enumeration::Overflow { .. } => None,
        }
    }

    pub fn stats(&self) -> &EnumStats {
        match self {
            Enumeration::Finished { stats, .. } | Enumeration::Overflow { stats, .. } => stats,
        }
    }
}

/// Complete, standardized coset table: coset 0 is the subgroup and the
/// remaining cosets are numbered in breadth-first order over the columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CosetTable {
    n: u32,
    generators: Vec<Letter>,
    rows: Vec<u32>,
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.rows.len() / self.ncols()
    }

    fn ncols(&self) -> usize {
        2 * self.generators.len()
    }

    fn column(&self, letter: Letter) -> Option<usize> {
        let pos = self.generators.iter().position(|g| g.index() == letter.index())?;
        Some(2 * pos + letter.is_inverse() as usize)
    }

    /// Coset reached from `coset` by the letter.
    pub fn act(&self, coset: usize, letter: Letter) -> Option<usize> {
        let col = self.column(letter)?;
        Some(self.rows[coset * self.ncols() + col] as usize)
    }

    pub fn trace(&self, coset: usize, word: &Word) -> Option<usize> {
        word.letters().iter().try_fold(coset, |c, &l| self.act(c, l))
    }

    /// Independent check of the final table: inverse columns agree, every
    /// relator closes at every coset, and every subgroup generator fixes 0.
    pub fn verify(&self, p: &Presentation, subgens: &[Word]) -> bool {
        if p.n() != self.n {
            return false;
        }
        let ncols = self.ncols();
        let index = self.index();
        for c in 0..index {
            for col in 0..ncols {
                let d = self.rows[c * ncols + col] as usize;
                if d >= index || self.rows[d * ncols + (col ^ 1)] as usize != c {
                    return false;
                }
            }
        }
        let closes = |c: usize, w: &Word| self.trace(c, w) == Some(c);
        (0..index).all(|c| p.relators().iter().all(|r| closes(c, &r.word)))
            && subgens.iter().all(|w| closes(0, w))
    }
}

struct Enumerator {
    ncols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    queue: Vec<u32>,
    alive: usize,
    max_cosets: usize,
    stats: EnumStats,
    deadline: Instant,
    ticks: u32,
}

enum Halt {
    Overflow(OverflowReason),
}

impl Enumerator {
    fn rows(&self) -> usize {
        self.parent.len()
    }

    #[inline]
    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.ncols + x]
    }

    #[inline]
    fn set(&mut self, c: u32, x: usize, v: u32) {
        self.table[c as usize * self.ncols + x] = v;
    }

    fn is_alive(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = c;
        while self.parent[cur as usize] != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    fn new_coset(&mut self) -> u32 {
        let c = self.rows() as u32;
        self.parent.push(c);
        self.table.extend(std::iter::repeat_n(UNDEF, self.ncols));
        self.alive += 1;
        self.stats.defined += 1;
        self.stats.max_alive = self.stats.max_alive.max(self.alive);
        c
    }

    fn define(&mut self, c: u32, x: usize) {
        let d = self.new_coset();
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra == rb {
            return;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi as usize] = lo;
        self.queue.push(hi);
        self.alive -= 1;
        self.stats.collapses += 1;
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for x in 0..self.ncols {
                let d = self.get(g, x);
                if d == UNDEF {
                    continue;
                }
                self.set(d, x ^ 1, UNDEF);
                let mu = self.rep(g);
                let nu = self.rep(d);
                let mu_x = self.get(mu, x);
                if mu_x != UNDEF {
                    self.merge(nu, mu_x);
                    continue;
                }
                let nu_inv = self.get(nu, x ^ 1);
                if nu_inv != UNDEF {
                    self.merge(mu, nu_inv);
                } else {
                    self.set(mu, x, nu);
                    self.set(nu, x ^ 1, mu);
                }
            }
        }
        self.queue.clear();
    }

    /// Traces `word` from `start` forwards and backwards, filling the gap with
    /// new cosets, a deduction, or a coincidence.
    fn scan_and_fill(&mut self, start: u32, word: &[usize]) {
        let (mut f, mut b) = (start, start);
        let (mut i, mut j) = (0, word.len());
        loop {
            while i < j {
                let next = self.get(f, word[i]);
                if next == UNDEF {
                    break;
                }
                f = next;
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return;
            }
            while j > i {
                let prev = self.get(b, word[j - 1] ^ 1);
                if prev == UNDEF {
                    break;
                }
                b = prev;
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return;
            }
            if j == i + 1 {
                self.set(f, word[i], b);
                self.set(b, word[i] ^ 1, f);
                return;
            }
            self.define(f, word[i]);
        }
    }

    fn check_time(&mut self) -> std::result::Result<(), Halt> {
        self.ticks += 1;
        if self.ticks.is_multiple_of(256) && Instant::now() > self.deadline {
            return Err(Halt::Overflow(OverflowReason::Time));
        }
        Ok(())
    }

    /// Makes room for `needed` new cosets, compacting if that helps.
    /// `current` is a live coset whose new id is returned.
    fn reserve(&mut self, needed: usize, current: u32) -> std::result::Result<u32, Halt> {
        if self.rows() + needed <= self.max_cosets {
            return Ok(current);
        }
        if self.alive + needed > self.max_cosets {
            return Err(Halt::Overflow(OverflowReason::Cosets));
        }
        Ok(self.compact(current))
    }

    /// Renumbers live cosets in increasing order. Requires an empty
    /// coincidence queue, so live rows only reference live cosets.
    fn compact(&mut self, current: u32) -> u32 {
        let rows = self.rows();
        let mut map = vec![UNDEF; rows];
        let mut next = 0u32;
        for (c, slot) in map.iter_mut().enumerate() {
            if self.parent[c] == c as u32 {
                *slot = next;
                next += 1;
            }
        }
        let mut table = Vec::with_capacity(next as usize * self.ncols);
        for c in 0..rows {
            if map[c] == UNDEF {
                continue;
            }
            for x in 0..self.ncols {
                let v = self.table[c * self.ncols + x];
                table.push(if v == UNDEF { UNDEF } else { map[v as usize] });
            }
        }
        self.table = table;
        self.parent = (0..next).collect();
        self.stats.compactions += 1;
        map[current as usize]
    }

    fn run(&mut self, relators: &[Vec<usize>], subgens: &[Vec<usize>]) -> std::result::Result<(), Halt> {
        let max_len = relators.iter().chain(subgens).map(Vec::len).max().unwrap_or(0);
        for sg in subgens {
            self.reserve(sg.len(), 0)?;
            self.scan_and_fill(0, sg);
            self.check_time()?;
        }
        let mut alpha: u32 = 0;
        while (alpha as usize) < self.rows() {
            if self.is_alive(alpha) {
                for r in relators {
                    if !self.is_alive(alpha) {
                        break;
                    }
                    alpha = self.reserve(r.len(), alpha)?;
                    self.scan_and_fill(alpha, r);
                    self.check_time()?;
                }
                for x in 0..self.ncols {
                    if !self.is_alive(alpha) {
                        break;
                    }
                    if self.get(alpha, x) == UNDEF {
                        alpha = self.reserve(max_len.max(1), alpha)?;
                        self.define(alpha, x);
                    }
                }
            }
            alpha += 1;
        }
        Ok(())
    }

    fn standardize(&self, n: u32, generators: Vec<Letter>) -> CosetTable {
        let rows = self.rows();
        let mut map = vec![UNDEF; rows];
        let mut order = Vec::with_capacity(self.alive);
        let mut queue = VecDeque::new();
        map[0] = 0;
        order.push(0u32);
        queue.push_back(0u32);
        while let Some(c) = queue.pop_front() {
            for x in 0..self.ncols {
                let d = self.get(c, x);
                if map[d as usize] == UNDEF {
                    map[d as usize] = order.len() as u32;
                    order.push(d);
                    queue.push_back(d);
                }
            }
        }
        let mut out = Vec::with_capacity(order.len() * self.ncols);
        for &c in &order {
            for x in 0..self.ncols {
                out.push(map[self.get(c, x) as usize]);
            }
        }
        CosetTable { n, generators, rows: out }
    }
}

fn to_columns(word: &Word, generators: &[Letter]) -> Result<Vec<usize>> {
    word.letters()
        .iter()
        .map(|l| {
            generators
                .iter()
                .position(|g| g.index() == l.index())
                .map(|pos| 2 * pos + l.is_inverse() as usize)
                .ok_or(Error::InvalidLetter { index: l.index(), alphabet: word.alphabet() })
        })
        .collect()
}

/// Enumerates the cosets of `⟨subgens⟩` in the group presented by `p`.
/// Deterministic for fixed input and limits (up to the time limit).
pub fn enumerate(p: &Presentation, subgens: &[Word], limits: &Limits) -> Result<Enumeration> {
    let start = Instant::now();
    let generators = p.generators();
    for w in subgens {
        if w.alphabet() != p.alphabet() {
            return Err(Error::AlphabetMismatch { left: p.alphabet(), right: w.alphabet() });
        }
    }
    let relators = p
        .relators()
        .iter()
        .map(|r| to_columns(&r.word, &generators))
        .collect::<Result<Vec<_>>>()?;
    let subs = subgens.iter().map(|w| to_columns(w, &generators)).collect::<Result<Vec<_>>>()?;
    let mut e = Enumerator {
        ncols: 2 * generators.len(),
        table: Vec::new(),
        parent: Vec::new(),
        queue: Vec::new(),
        alive: 0,
        max_cosets: limits.max_cosets.max(1),
        stats: EnumStats::default(),
        deadline: start + limits.max_time,
        ticks: 0,
    };
    e.new_coset();
    let outcome = e.run(&relators, &subs);
    e.stats.millis = start.elapsed().as_millis() as u64;
    Ok(match outcome {
        Ok(()) => {
            let table = e.standardize(p.n(), generators);
            Enumeration::Finished { index: table.index(), table, stats: e.stats }
        }
        Err(Halt::Overflow(reason)) => Enumeration::Overflow { reason, stats: e.stats },
    })
}
