//! Counting admissible mesa sets.
//!
//! Four engines compute `|AMS_n|`:
//!
//! * **brute force** exhausts `Q_n` and deduplicates mesa sets;
//! * **subset** counts subsets of `[n]` passing the admissibility test;
//! * **recurrence** doubles from `|AMS_1| = 1`, subtracting the number of
//!   maximal sets at orders divisible by three;
//! * **closed form** evaluates `2^{n-1} - Σ 2^{3i+r} C_{2(k-i)-1, k-i}`.
//!
//! [`full_report`] runs a selection of them and records whether they agree.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{count_serde, pow2};
use crate::dyck::rational_catalan;
use crate::mesa::{max_mesa_count, MesaSet};
use crate::stirling::{generate_all, mesa_mask, partitions, GenerateError, ResourceGuard};

/// Mesa sets are hashed as `u64` bitmasks, which caps brute force at order 63.
pub const BRUTE_FORCE_MAX_ORDER: usize = 63;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    BruteForce,
    Subset,
    Recurrence,
    ClosedForm,
}

impl Engine {
    pub const ALL: [Engine; 4] = [
        Engine::BruteForce,
        Engine::Subset,
        Engine::Recurrence,
        Engine::ClosedForm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Engine::BruteForce => "brute",
            Engine::Subset => "subset",
            Engine::Recurrence => "recurrence",
            Engine::ClosedForm => "closed",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown engine {0:?} (expected brute, subset, recurrence or closed)")]
pub struct UnknownEngine(pub String);

impl FromStr for Engine {
    type Err = UnknownEngine;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "brute" | "brute-force" | "brute_force" => Ok(Engine::BruteForce),
            "subset" | "subsets" => Ok(Engine::Subset),
            "recurrence" => Ok(Engine::Recurrence),
            "closed" | "closed-form" | "closed_form" => Ok(Engine::ClosedForm),
            other => Err(UnknownEngine(other.to_string())),
        }
    }
}

/// Which engines [`full_report`] runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineSet {
    pub brute_force: bool,
    pub subset: bool,
    pub recurrence: bool,
    pub closed_form: bool,
}

impl EngineSet {
    pub fn all() -> Self {
        Self {
            brute_force: true,
            subset: true,
            recurrence: true,
            closed_form: true,
        }
    }

    pub fn without_brute_force() -> Self {
        Self {
            brute_force: false,
            ..Self::all()
        }
    }

    pub fn none() -> Self {
        Self {
            brute_force: false,
            subset: false,
            recurrence: false,
            closed_form: false,
        }
    }

    pub fn only(engines: &[Engine]) -> Self {
        let mut set = Self::none();
        for &e in engines {
            set.insert(e);
        }
        set
    }

    pub fn insert(&mut self, e: Engine) {
        *self.slot(e) = true;
    }

    pub fn contains(&self, e: Engine) -> bool {
        match e {
            Engine::BruteForce => self.brute_force,
            Engine::Subset => self.subset,
            Engine::Recurrence => self.recurrence,
            Engine::ClosedForm => self.closed_form,
        }
    }

    fn slot(&mut self, e: Engine) -> &mut bool {
        match e {
            Engine::BruteForce => &mut self.brute_force,
            Engine::Subset => &mut self.subset,
            Engine::Recurrence => &mut self.recurrence,
            Engine::ClosedForm => &mut self.closed_form,
        }
    }
}

/// Parses a comma-separated engine list such as `subset,closed`; `all`
/// selects every engine.
impl FromStr for EngineSet {
    type Err = UnknownEngine;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim().eq_ignore_ascii_case("all") {
            return Ok(Self::all());
        }
        let engines = s
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(str::parse)
            .collect::<Result<Vec<Engine>, _>>()?;
        Ok(Self::only(&engines))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BruteForceOptions {
    pub guard: ResourceGuard,
    /// Worker threads; `1` runs on the calling thread.
    pub workers: usize,
}

impl Default for BruteForceOptions {
    fn default() -> Self {
        Self {
            guard: ResourceGuard::default(),
            workers: 1,
        }
    }
}

/// Distinct mesa sets of `Q_n`, as bitmasks.
///
/// With several workers, `Q_n` is split by its first gap choices and each
/// worker folds its partitions into a local set; the sets are merged by
/// union, so the result does not depend on scheduling.
pub fn brute_force_masks(
    n: usize,
    opts: &BruteForceOptions,
) -> Result<HashSet<u64>, GenerateError> {
    opts.guard.check(n)?;
    if n > BRUTE_FORCE_MAX_ORDER {
        return Err(GenerateError::AboveCeiling {
            order: n,
            ceiling: BRUTE_FORCE_MAX_ORDER,
        });
    }
    if opts.workers <= 1 {
        let mut seen = HashSet::new();
        generate_all(n, &opts.guard)?.into_walker().for_each(|w| {
            seen.insert(mesa_mask(w));
        });
        return Ok(seen);
    }

    let parts = partitions(n, 4, &opts.guard)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers)
        .build()
        .expect("failed to build worker pool");
    Ok(pool.install(|| {
        parts
            .par_iter()
            .fold(HashSet::new, |mut seen, part| {
                part.walker().for_each(|w| {
                    seen.insert(mesa_mask(w));
                });
                seen
            })
            .reduce(HashSet::new, |a, b| {
                let (mut big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
                big.extend(small);
                big
            })
    }))
}

/// `{ Mesa(w) : w ∈ Q_n }`, sorted.
pub fn brute_force_mesa_sets(
    n: usize,
    opts: &BruteForceOptions,
) -> Result<Vec<MesaSet>, GenerateError> {
    let mut sets: Vec<MesaSet> = brute_force_masks(n, opts)?
        .into_iter()
        .map(|m| MesaSet::from_mask(m, n as u32).expect("mesas lie in [2, n]"))
        .collect();
    sets.sort();
    Ok(sets)
}

pub fn count_brute_force(n: usize, opts: &BruteForceOptions) -> Result<BigUint, GenerateError> {
    Ok(BigUint::from(brute_force_masks(n, opts)?.len()))
}

/// Depth-first search over subsets of `[n]`, pruning any branch whose newest
/// element violates `3 * |M_x| <= 2x - 1`.
///
/// At each `x` the branch without `x` is explored before the branch with it,
/// so sets come out in lexicographic order of their membership vectors
/// `(1 ∈ M, 2 ∈ M, ..., n ∈ M)`.
#[derive(Clone, Debug)]
pub struct AmsIter {
    n: u32,
    size: Option<usize>,
    // (next value to decide, elements chosen so far)
    stack: Vec<(u32, Vec<u32>)>,
}

impl AmsIter {
    fn new(n: u32, size: Option<usize>) -> Self {
        Self {
            n,
            size,
            stack: vec![(1, Vec::new())],
        }
    }
}

impl Iterator for AmsIter {
    type Item = MesaSet;

    fn next(&mut self) -> Option<MesaSet> {
        while let Some((x, chosen)) = self.stack.pop() {
            if x > self.n {
                if self.size.is_none_or(|s| s == chosen.len()) {
                    return Some(MesaSet::new(chosen, self.n).expect("valid by construction"));
                }
                continue;
            }
            let remaining = (self.n - x) as usize;
            let can_take = 3 * (chosen.len() as u64 + 1) <= 2 * x as u64 - 1
                && self.size.is_none_or(|s| chosen.len() < s);
            let can_skip = self.size.is_none_or(|s| chosen.len() + remaining >= s);
            if can_take {
                let mut with = chosen.clone();
                with.push(x);
                self.stack.push((x + 1, with));
            }
            if can_skip {
                self.stack.push((x + 1, chosen));
            }
        }
        None
    }
}

/// Every admissible `M ⊆ [n]`, each once, in context `n`.
pub fn enumerate_ams(n: u32) -> AmsIter {
    assert!(n >= 1, "order must be at least 1");
    AmsIter::new(n, None)
}

/// Every admissible `M ⊆ [3k - 1]` with `|M| = 2k - 1`.
pub fn enumerate_maximal(k: u32) -> AmsIter {
    assert!(k >= 1, "k must be at least 1");
    AmsIter::new(3 * k - 1, Some(2 * k as usize - 1))
}

/// Number of admissible `M ⊆ [n]` of each size, by dynamic programming over
/// `(x, |M_x|)`. Index `c` holds the count of sets of size `c`.
fn admissible_counts_by_size(n: u32) -> Vec<BigUint> {
    let mut ways = vec![BigUint::one()];
    for x in 1..=n as u64 {
        let mut next = vec![BigUint::zero(); ways.len() + 1];
        for (c, w) in ways.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            next[c] += w;
            if 3 * (c as u64 + 1) <= 2 * x - 1 {
                next[c + 1] += w;
            }
        }
        while next.last().is_some_and(Zero::is_zero) {
            next.pop();
        }
        ways = next;
    }
    ways
}

/// `|AMS_n|` by counting the pruned subset search of [`enumerate_ams`],
/// memoized on `(x, |M_x|)`.
pub fn count_subsets(n: u32) -> BigUint {
    assert!(n >= 1, "order must be at least 1");
    admissible_counts_by_size(n).into_iter().sum()
}

/// Number of admissible `M ⊆ [n]` of the largest possible size
/// `floor((2n - 1) / 3)`.
pub fn count_maximal(n: u32) -> BigUint {
    let by_size = admissible_counts_by_size(n);
    by_size
        .get(max_mesa_count(n) as usize)
        .cloned()
        .unwrap_or_default()
}

/// `C_{2k-1,k}`, the number of maximal sets in order `3k - 1`.
pub fn maximal_catalan(k: u32) -> BigUint {
    rational_catalan(2 * k - 1, k).expect("gcd(2k - 1, k) = 1")
}

/// `|AMS_n|` from `|AMS_1| = 1`, doubling at every step except orders `3k`,
/// where the `C_{2k-1,k}` maximal sets of order `3k - 1` cannot be extended.
pub fn count_recurrence(n: u32) -> BigUint {
    assert!(n >= 1, "order must be at least 1");
    let mut count = BigUint::one();
    for j in 2..=n {
        count <<= 1;
        if j % 3 == 0 {
            count -= maximal_catalan(j / 3);
        }
    }
    count
}

/// `2^{n-1} - Σ_{i=0}^{k-1} 2^{3i+r} C_{2(k-i)-1, k-i}` with `n = 3k + r`.
pub fn count_closed_form(n: u32) -> BigUint {
    assert!(n >= 1, "order must be at least 1");
    let (k, r) = (n / 3, n % 3);
    let correction: BigUint = (0..k)
        .map(|i| pow2((3 * i + r) as u64) * maximal_catalan(k - i))
        .sum();
    pow2(n as u64 - 1) - correction
}

/// Exact counts for one order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub order: u32,
    #[serde(serialize_with = "count_serde::option::serialize")]
    pub brute_force_count: Option<BigUint>,
    #[serde(serialize_with = "count_serde::option::serialize")]
    pub subset_count: Option<BigUint>,
    #[serde(serialize_with = "count_serde::option::serialize")]
    pub recurrence_count: Option<BigUint>,
    #[serde(serialize_with = "count_serde::option::serialize")]
    pub closed_form_count: Option<BigUint>,
    /// Maximal sets, reported for orders `3k - 1`.
    #[serde(serialize_with = "count_serde::option::serialize")]
    pub maximal_count: Option<BigUint>,
    pub agree: bool,
}

impl CountReport {
    pub const CSV_HEADER: &'static str =
        "order,brute_force_count,subset_count,recurrence_count,closed_form_count,maximal_count,agree";

    pub fn count(&self, e: Engine) -> Option<&BigUint> {
        match e {
            Engine::BruteForce => self.brute_force_count.as_ref(),
            Engine::Subset => self.subset_count.as_ref(),
            Engine::Recurrence => self.recurrence_count.as_ref(),
            Engine::ClosedForm => self.closed_form_count.as_ref(),
        }
    }

    fn count_mut(&mut self, e: Engine) -> &mut Option<BigUint> {
        match e {
            Engine::BruteForce => &mut self.brute_force_count,
            Engine::Subset => &mut self.subset_count,
            Engine::Recurrence => &mut self.recurrence_count,
            Engine::ClosedForm => &mut self.closed_form_count,
        }
    }

    /// The common count, when at least one engine ran and all agree.
    pub fn value(&self) -> Option<&BigUint> {
        if self.agree {
            Engine::ALL.iter().find_map(|&e| self.count(e))
        } else {
            None
        }
    }

    fn recompute_agreement(&mut self) {
        let mut present = Engine::ALL.iter().filter_map(|&e| self.count(e));
        self.agree = match present.next() {
            None => false,
            Some(first) => present.all(|c| c == first),
        };
    }

    pub fn csv_row(&self) -> String {
        let cell = |c: &Option<BigUint>| c.as_ref().map(ToString::to_string).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{}",
            self.order,
            cell(&self.brute_force_count),
            cell(&self.subset_count),
            cell(&self.recurrence_count),
            cell(&self.closed_form_count),
            cell(&self.maximal_count),
            self.agree
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReportOptions {
    pub engines: EngineSet,
    pub brute_force: BruteForceOptions,
    /// Fault injection: adds one to this engine's count. Used to exercise the
    /// disagreement path end to end.
    pub corrupt: Option<Engine>,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self {
            engines: EngineSet::all(),
            brute_force: BruteForceOptions::default(),
            corrupt: None,
        }
    }
}

/// Runs the selected engines for order `n`. Brute force is skipped, not
/// failed, when the guard refuses `n`.
pub fn full_report(n: u32, opts: &ReportOptions) -> Result<CountReport, GenerateError> {
    if n == 0 {
        return Err(GenerateError::ZeroOrder);
    }
    let engines = &opts.engines;
    let brute_force_count = if engines.brute_force
        && opts.brute_force.guard.permits(n as usize)
        && n as usize <= BRUTE_FORCE_MAX_ORDER
    {
        Some(count_brute_force(n as usize, &opts.brute_force)?)
    } else {
        None
    };
    let mut report = CountReport {
        order: n,
        brute_force_count,
        subset_count: engines.subset.then(|| count_subsets(n)),
        recurrence_count: engines.recurrence.then(|| count_recurrence(n)),
        closed_form_count: engines.closed_form.then(|| count_closed_form(n)),
        maximal_count: (n % 3 == 2).then(|| count_maximal(n)),
        agree: false,
    };
    if let Some(e) = opts.corrupt {
        if let Some(c) = report.count_mut(e) {
            *c += 1u32;
        }
    }
    report.recompute_agreement();
    Ok(report)
}

/// Reports for orders `1..=n_max`.
pub fn table(n_max: u32, opts: &ReportOptions) -> Result<Vec<CountReport>, GenerateError> {
    (1..=n_max).map(|n| full_report(n, opts)).collect()
}
