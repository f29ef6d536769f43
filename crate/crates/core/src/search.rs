//! Exhaustive backtracking over colorings.
//!
//! Positions are colored left to right. Before the search starts, every
//! solution whose largest entry is `p` is compiled into a clause attached to
//! position `p`: the set of other positions that, together with `p`, would
//! form a monochromatic solution if they all shared a color. Coloring `p` then
//! only needs to check the clauses of `p`, since all earlier positions are
//! already fixed.
//!
//! Only canonical colorings are explored (the first use of color `c` precedes
//! the first use of `c + 1`). Relabeling colors maps good colorings to good
//! colorings, so this loses no witnesses.
//!
//! A single depth-first walk records the first coloring that reaches each new
//! depth. Since prefixes of good colorings are good, the deepest depth reached
//! is the longest good length, and the first coloring to reach it is the
//! lexicographically least one of that length.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coloring::{excellence_equations, is_excellent_coloring, is_good_coloring, Color, Coloring};
use crate::equation::Equation;

/// How often (in nodes) a walker polls the clock and the shared flags.
const POLL_INTERVAL: u64 = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    /// Worker threads; 1 runs the single-threaded reference search.
    pub threads: usize,
    /// Depth at which the tree is cut into independently explored subtrees.
    pub split_depth: usize,
    /// Wall-clock budget; `None` means unlimited.
    pub budget: Option<Duration>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            threads: 1,
            split_depth: 12,
            budget: None,
        }
    }
}

impl SearchOptions {
    pub fn with_threads(threads: usize) -> Self {
        SearchOptions {
            threads: threads.max(1),
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum RadoStatus {
    /// The Rado number is exactly this value.
    Exact(usize),
    /// A good coloring of length `cap` exists, so the Rado number (if any) exceeds `cap`.
    ExceedsCap(usize),
    /// The budget ran out; a good coloring of length `best_len` is known.
    Timeout { best_len: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadoResult {
    pub equation: Equation,
    pub num_colors: usize,
    pub status: RadoStatus,
    pub witness: Coloring,
    pub elapsed: Duration,
    pub nodes: u64,
}

impl RadoResult {
    pub fn exact(&self) -> Option<usize> {
        match self.status {
            RadoStatus::Exact(r) => Some(r),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum ExcellenceStatus {
    /// The longest excellent coloring has exactly this length.
    Exact(usize),
    /// An excellent coloring of length `cap` exists.
    ExceedsCap(usize),
    Timeout {
        best_len: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExcellenceResult {
    pub coeffs: Vec<i64>,
    pub num_colors: usize,
    pub status: ExcellenceStatus,
    pub witness: Coloring,
    pub elapsed: Duration,
    pub nodes: u64,
}

impl ExcellenceResult {
    pub fn exact(&self) -> Option<usize> {
        match self.status {
            ExcellenceStatus::Exact(n) => Some(n),
            _ => None,
        }
    }
}

/// Returns a good `t`-coloring of `[1, n]`, or `None` if none exists. The
/// result is the lexicographically least canonical one.
pub fn find_good_coloring(eq: &Equation, t: usize, n: usize) -> Option<Coloring> {
    check_colors(t);
    let table = ClauseTable::build(std::slice::from_ref(eq), n);
    let run = explore(&table, t, n, &SearchOptions::default());
    (run.best.len() == n).then(|| {
        let col = Coloring::new(t, run.best).expect("engine emits colors in range");
        assert!(is_good_coloring(eq, &col), "engine returned a bad coloring for {eq}");
        col
    })
}

/// Computes `r(eq; t)` if it is at most `cap`.
pub fn rado_number(eq: &Equation, t: usize, cap: usize, opts: &SearchOptions) -> RadoResult {
    check_colors(t);
    assert!(cap >= 1, "cap must be positive");
    let start = Instant::now();
    let table = ClauseTable::build(std::slice::from_ref(eq), cap);
    let run = explore(&table, t, cap, opts);
    let len = run.best.len();
    let status = if run.timed_out {
        RadoStatus::Timeout { best_len: len }
    } else if len == cap {
        RadoStatus::ExceedsCap(cap)
    } else {
        RadoStatus::Exact(len + 1)
    };
    let witness = Coloring::new(t, run.best).expect("engine emits colors in range");
    assert!(
        is_good_coloring(eq, &witness),
        "engine returned a bad coloring for {eq}"
    );
    RadoResult {
        equation: eq.clone(),
        num_colors: t,
        status,
        witness,
        elapsed: start.elapsed(),
        nodes: run.nodes,
    }
}

/// Finds the longest excellent `t`-coloring for `coeffs`, up to length `cap`.
pub fn max_excellent_length(coeffs: &[i64], t: usize, cap: usize, opts: &SearchOptions) -> ExcellenceResult {
    check_colors(t);
    assert!(cap >= 1, "cap must be positive");
    let start = Instant::now();
    let table = ClauseTable::build(&excellence_equations(coeffs), cap);
    let run = explore(&table, t, cap, opts);
    let len = run.best.len();
    let status = if run.timed_out {
        ExcellenceStatus::Timeout { best_len: len }
    } else if len == cap {
        ExcellenceStatus::ExceedsCap(cap)
    } else {
        ExcellenceStatus::Exact(len)
    };
    let witness = Coloring::new(t, run.best).expect("engine emits colors in range");
    assert!(
        is_excellent_coloring(coeffs, &witness),
        "engine returned a non-excellent coloring"
    );
    ExcellenceResult {
        coeffs: coeffs.to_vec(),
        num_colors: t,
        status,
        witness,
        elapsed: start.elapsed(),
        nodes: run.nodes,
    }
}

fn check_colors(t: usize) {
    assert!(
        (1..=usize::from(Color::MAX)).contains(&t),
        "number of colors must be in 1..=255, got {t}"
    );
}

/// Per-position clause lists, flattened.
#[derive(Debug)]
pub(crate) struct ClauseTable {
    /// Clauses of position `p` are `clauses[offsets[p - 1]..offsets[p]]`.
    offsets: Vec<usize>,
    /// `(start, len)` into `members`.
    clauses: Vec<(u32, u32)>,
    /// 0-based positions.
    members: Vec<u32>,
    /// Position admits no color at all (a solution made only of `p`).
    blocked: Vec<bool>,
}

impl ClauseTable {
    pub(crate) fn build(equations: &[Equation], len: usize) -> ClauseTable {
        let mut table = ClauseTable {
            offsets: vec![0],
            clauses: Vec::new(),
            members: Vec::new(),
            blocked: Vec::new(),
        };
        let mut sets: Vec<Vec<u32>> = Vec::new();
        for p in 1..=len {
            sets.clear();
            let mut blocked = false;
            for eq in equations {
                eq.for_each_solution_with_max(p as i64, |xs| {
                    let mut others: Vec<u32> = xs.iter().filter(|&&x| x != p as i64).map(|&x| (x - 1) as u32).collect();
                    if others.is_empty() {
                        blocked = true;
                    }
                    others.sort_unstable();
                    others.dedup();
                    sets.push(others);
                });
            }
            sets.sort_unstable();
            sets.dedup();
            // Smaller clauses first: they fail fastest.
            sets.sort_by_key(Vec::len);
            for set in &sets {
                table.clauses.push((table.members.len() as u32, set.len() as u32));
                table.members.extend_from_slice(set);
            }
            table.offsets.push(table.clauses.len());
            table.blocked.push(blocked);
        }
        table
    }

    #[inline]
    fn conflicts(&self, colors: &[Color], p: usize, c: Color) -> bool {
        self.clauses[self.offsets[p - 1]..self.offsets[p]]
            .iter()
            .any(|&(start, len)| {
                self.members[start as usize..(start + len) as usize]
                    .iter()
                    .all(|&q| colors[q as usize] == c)
            })
    }
}

/// Result of one exploration, possibly combined from several subtrees.
#[derive(Debug, Default)]
struct Exploration {
    best: Vec<Color>,
    timed_out: bool,
    nodes: u64,
}

/// Shared stop signals for a search.
struct Control {
    deadline: Option<Instant>,
    timed_out: AtomicBool,
    /// Lowest subtree index that reached the cap; higher subtrees may stop.
    cap_hit: AtomicUsize,
}

impl Control {
    fn new(budget: Option<Duration>) -> Self {
        Control {
            deadline: budget.map(|b| Instant::now() + b),
            timed_out: AtomicBool::new(false),
            cap_hit: AtomicUsize::new(usize::MAX),
        }
    }
}

enum Mode {
    /// Walk the whole subtree, stopping early only at the cap.
    Deepest,
    /// Collect every good prefix of exactly this length.
    Prefixes(usize),
}

struct Walker<'a> {
    table: &'a ClauseTable,
    t: Color,
    cap: usize,
    mode: Mode,
    control: &'a Control,
    /// Index of the subtree being explored, for cap-hit ordering.
    index: usize,
    colors: Vec<Color>,
    best: Vec<Color>,
    prefixes: Vec<Vec<Color>>,
    nodes: u64,
    halted: bool,
}

impl<'a> Walker<'a> {
    fn new(table: &'a ClauseTable, t: usize, cap: usize, mode: Mode, control: &'a Control, index: usize) -> Self {
        Walker {
            table,
            t: t as Color,
            cap,
            mode,
            control,
            index,
            colors: Vec::with_capacity(cap),
            best: Vec::new(),
            prefixes: Vec::new(),
            nodes: 0,
            halted: false,
        }
    }

    fn run_from(&mut self, prefix: &[Color]) {
        self.colors.clear();
        self.colors.extend_from_slice(prefix);
        self.best = prefix.to_vec();
        let max_used = prefix.iter().copied().max().unwrap_or(0);
        self.descend(max_used);
    }

    fn poll(&mut self) {
        if let Some(deadline) = self.control.deadline {
            if self.control.timed_out.load(Ordering::Relaxed) || Instant::now() >= deadline {
                self.control.timed_out.store(true, Ordering::Relaxed);
                self.halted = true;
            }
        }
        if self.control.cap_hit.load(Ordering::Relaxed) < self.index {
            self.halted = true;
        }
    }

    fn descend(&mut self, max_used: Color) {
        let depth = self.colors.len();
        if depth > self.best.len() {
            self.best.clone_from(&self.colors);
        }
        if let Mode::Prefixes(target) = self.mode {
            if depth == target {
                self.prefixes.push(self.colors.clone());
                return;
            }
        }
        if depth == self.cap {
            self.control.cap_hit.fetch_min(self.index, Ordering::Relaxed);
            self.halted = true;
            return;
        }
        self.nodes += 1;
        if self.nodes % POLL_INTERVAL == 0 {
            self.poll();
            if self.halted {
                return;
            }
        }
        let p = depth + 1;
        if self.table.blocked[depth] {
            return;
        }
        let top = self.t.min(max_used + 1);
        for c in 1..=top {
            if self.table.conflicts(&self.colors, p, c) {
                continue;
            }
            self.colors.push(c);
            self.descend(max_used.max(c));
            self.colors.pop();
            if self.halted {
                return;
            }
        }
    }
}

fn explore(table: &ClauseTable, t: usize, cap: usize, opts: &SearchOptions) -> Exploration {
    let control = Control::new(opts.budget);
    let split = opts.split_depth.max(1);
    if opts.threads <= 1 || cap <= split {
        let mut walker = Walker::new(table, t, cap, Mode::Deepest, &control, 0);
        walker.run_from(&[]);
        return Exploration {
            best: walker.best,
            timed_out: control.timed_out.load(Ordering::Relaxed),
            nodes: walker.nodes,
        };
    }

    let mut head = Walker::new(table, t, cap, Mode::Prefixes(split), &control, 0);
    head.run_from(&[]);
    let prefixes = std::mem::take(&mut head.prefixes);
    let mut combined = Exploration {
        best: head.best,
        timed_out: false,
        nodes: head.nodes,
    };
    if prefixes.is_empty() || head.halted {
        combined.timed_out = control.timed_out.load(Ordering::Relaxed);
        return combined;
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads)
        .build()
        .expect("failed to start search worker pool");
    let parts: Vec<(Vec<Color>, u64)> = pool.install(|| {
        prefixes
            .par_iter()
            .enumerate()
            .map(|(index, prefix)| {
                if control.cap_hit.load(Ordering::Relaxed) < index {
                    return (Vec::new(), 0);
                }
                let mut walker = Walker::new(table, t, cap, Mode::Deepest, &control, index);
                walker.run_from(prefix);
                (walker.best, walker.nodes)
            })
            .collect()
    });
    // Subtrees are in lexicographic order, so the first one reaching the
    // maximum holds the lexicographically least deepest coloring.
    for (best, nodes) in parts {
        combined.nodes += nodes;
        if best.len() > combined.best.len() {
            combined.best = best;
        }
    }
    combined.timed_out = control.timed_out.load(Ordering::Relaxed);
    combined
}
