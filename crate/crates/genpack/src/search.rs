//! Exhaustive search for maximum generalized packings.
//!
//! The searcher is the library's independent oracle: it computes packing
//! numbers on small instances by branch and bound, trusting nothing but
//! integer counting and the upper bounds from [`crate::bounds`].  Two
//! engines sit behind one interface.  For `t = 2`, `λ = 1` the search is
//! pair-oriented: the universe is the set of coupled pairs (pairs of
//! points that some block can cover together), each node picks the lowest
//! coupled pair still undecided and branches over the candidate blocks
//! covering it, plus one branch that leaves the pair uncovered for good.
//! Every block consumes a fixed number of pairs from each coupling class,
//! so dividing what remains by that consumption bounds the completion.
//! All other parameters run a plainer depth-first search over candidate
//! blocks in lexicographic order with a capacity of `λ` per admissible
//! tuple.
//!
//! With symmetry breaking on, the first block is pinned to the
//! lexicographically least candidate (any nonempty packing can be
//! relabelled within parts to contain it), and sibling branches that
//! differ only in which still-undistinguished points they grab are
//! explored once.
//!
//! Budgets are honoured to within a bookkeeping quantum: running out of
//! time or nodes downgrades the result instead of raising an error.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use itertools::Itertools;

use crate::bounds::generalized_upper_bound;
use crate::model::{Block, GeneralizedPacking, PackingInstance};

/// Knobs for [`max_packing_search`] and [`decide_size`].
#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Wall-clock budget.  Must be positive.
    pub time_budget: Duration,
    /// Optional cap on explored nodes, counted across all workers.
    pub node_limit: Option<u64>,
    /// Skip branches equivalent to an already-explored sibling under a
    /// relabeling of points within parts.
    pub symmetry_breaking: bool,
    /// Start the incumbent at this size without holding a certificate.
    /// Branches that cannot beat it are pruned.  A run that exhausts the
    /// tree without finding anything larger has proved only that nothing
    /// larger exists; it reports best-found with an empty certificate,
    /// because claiming this size as optimal is the caller's step.
    pub initial_lower_bound: Option<usize>,
    /// Worker threads for the pairwise engine.  Values above 1 split the
    /// tree below the root; the proven size is unchanged, but node counts
    /// and the certificate may vary between runs.
    pub threads: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            time_budget: Duration::from_secs(60),
            node_limit: None,
            symmetry_breaking: true,
            initial_lower_bound: None,
            threads: 1,
        }
    }
}

/// How a [`SearchResult`] should be read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStatus {
    /// The tree was exhausted, or the incumbent met the upper bound, so
    /// `size` is the packing number.
    ProvenOptimal,
    /// The budget ran out first; `size` is only a lower bound.
    BestFound,
    /// `initial_lower_bound` exceeds the upper bound, so nothing could
    /// beat it and the search never started.
    InfeasibleTarget,
}

impl SearchStatus {
    /// Stable lowercase name, for reports and machine-readable output.
    pub fn as_str(self) -> &'static str {
        match self {
            SearchStatus::ProvenOptimal => "proven-optimal",
            SearchStatus::BestFound => "best-found",
            SearchStatus::InfeasibleTarget => "infeasible-target",
        }
    }
}

/// Outcome of a maximisation run.
#[derive(Debug, Clone)]
pub struct SearchResult {
    /// The best packing found.  Always verifies.  Empty when nothing beat
    /// `initial_lower_bound`.
    pub best: GeneralizedPacking,
    /// Number of blocks in `best`.
    pub size: usize,
    /// Whether `size` is the packing number or just the best seen.
    pub status: SearchStatus,
    /// Nodes explored.  Reproducible for single-threaded runs.
    pub nodes: u64,
    /// Wall-clock time spent.
    pub elapsed: Duration,
}

/// Outcome of [`decide_size`].
#[derive(Debug, Clone)]
pub enum Decision {
    /// A verified packing of exactly the requested size.
    Yes(GeneralizedPacking),
    /// The exhausted tree, or the upper bound alone, rules the size out.
    No,
    /// The budget ran out before either answer.
    Unknown,
}

/// Finds a maximum packing of `inst` by exhaustive branch and bound.
///
/// The status is [`SearchStatus::ProvenOptimal`] only when the search
/// tree was exhausted within budget or the incumbent met the upper bound
/// from [`generalized_upper_bound`]; otherwise the best packing seen is
/// returned as [`SearchStatus::BestFound`].  The certificate always
/// verifies.
///
/// ```
/// use genpack::model::PackingInstance;
/// use genpack::search::{max_packing_search, SearchConfig, SearchStatus};
///
/// let inst = PackingInstance::pairwise(vec![4, 4], vec![2, 2]).unwrap();
/// let result = max_packing_search(&inst, &SearchConfig::default());
/// assert_eq!(result.size, 2);
/// assert_eq!(result.status, SearchStatus::ProvenOptimal);
/// assert!(result.best.is_valid());
/// ```
pub fn max_packing_search(inst: &PackingInstance, cfg: &SearchConfig) -> SearchResult {
    assert!(cfg.time_budget > Duration::ZERO, "time budget must be positive");
    let start = Instant::now();
    let gub = generalized_upper_bound(inst).value;
    let lb = cfg.initial_lower_bound.unwrap_or(0);
    if lb > gub {
        return SearchResult {
            best: GeneralizedPacking::new(inst.clone(), Vec::new()),
            size: 0,
            status: SearchStatus::InfeasibleTarget,
            nodes: 0,
            elapsed: start.elapsed(),
        };
    }
    let run = run_engine(inst, cfg, gub, None, lb, start);
    let blocks: Vec<Block> = run
        .best
        .unwrap_or_default()
        .into_iter()
        .map(Block::new)
        .collect();
    let size = blocks.len();
    let status = if size == gub || (!run.aborted && size > lb) {
        SearchStatus::ProvenOptimal
    } else {
        SearchStatus::BestFound
    };
    SearchResult {
        best: GeneralizedPacking::new(inst.clone(), blocks),
        size,
        status,
        nodes: run.nodes,
        elapsed: start.elapsed(),
    }
}

/// Decides whether a packing of exactly `target` blocks exists.
///
/// Since any subset of a packing is a packing, this question is monotone
/// in `target`; the search looks for any packing of that size and prunes
/// branches that cannot reach it.  [`Decision::No`] is returned only on a
/// completed proof: either `target` exceeds the upper bound, or the tree
/// was exhausted within budget.
///
/// ```
/// use genpack::model::PackingInstance;
/// use genpack::search::{decide_size, Decision, SearchConfig};
///
/// let inst = PackingInstance::pairwise(vec![4, 4], vec![2, 2]).unwrap();
/// assert!(matches!(
///     decide_size(&inst, 3, &SearchConfig::default()),
///     Decision::No
/// ));
/// ```
pub fn decide_size(inst: &PackingInstance, target: usize, cfg: &SearchConfig) -> Decision {
    assert!(cfg.time_budget > Duration::ZERO, "time budget must be positive");
    if target == 0 {
        return Decision::Yes(GeneralizedPacking::new(inst.clone(), Vec::new()));
    }
    let start = Instant::now();
    let gub = generalized_upper_bound(inst).value;
    if target > gub {
        return Decision::No;
    }
    let run = run_engine(inst, cfg, gub, Some(target), 0, start);
    match run.best {
        Some(parts) => {
            let blocks: Vec<Block> = parts.into_iter().take(target).map(Block::new).collect();
            Decision::Yes(GeneralizedPacking::new(inst.clone(), blocks))
        }
        None if !run.aborted => Decision::No,
        None => Decision::Unknown,
    }
}

/// What an engine run produced, independent of which engine ran.
struct EngineRun {
    /// Parts of the best blocks found, in inclusion order.
    best: Option<Vec<Vec<Vec<usize>>>>,
    nodes: u64,
    aborted: bool,
}

/// Dispatches to the pairwise or the general engine and collects the run.
///
/// In decision mode (`target` set) the incumbent starts at `target - 1`
/// and the run stops the moment the target is reached; otherwise the
/// incumbent starts at `lb` and the run stops early only when it meets
/// the upper bound `gub`.
fn run_engine(
    inst: &PackingInstance,
    cfg: &SearchConfig,
    gub: usize,
    target: Option<usize>,
    lb: usize,
    start: Instant,
) -> EngineRun {
    let shared = Shared {
        deadline: start + cfg.time_budget,
        node_limit: cfg.node_limit.unwrap_or(u64::MAX),
        stop_at: target.unwrap_or(gub),
        nodes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
        aborted: AtomicBool::new(false),
        incumbent: AtomicUsize::new(match target {
            Some(t) => t - 1,
            None => lb,
        }),
        best: Mutex::new(None),
    };
    let best_ids;
    let parts_of: Vec<Vec<Vec<usize>>>;
    if inst.t() == 2 && inst.lambda() == 1 {
        let core = PairCore::build(inst, gub, cfg.symmetry_breaking);
        run_pair(&core, cfg, &shared);
        best_ids = shared.best.into_inner().unwrap();
        parts_of = core.cands.into_iter().map(|c| c.parts).collect();
    } else {
        let core = GenCore::build(inst, gub, cfg.symmetry_breaking);
        run_general(&core, &shared);
        best_ids = shared.best.into_inner().unwrap();
        parts_of = core.cands.into_iter().map(|c| c.parts).collect();
    }
    EngineRun {
        best: best_ids
            .map(|ids| ids.iter().map(|&i| parts_of[i as usize].clone()).collect()),
        nodes: shared.nodes.into_inner(),
        aborted: shared.aborted.into_inner(),
    }
}

/// All candidate blocks of an instance as per-part point lists with
/// 1-based entries, in lexicographic order.
fn enumerate_candidates(inst: &PackingInstance) -> Vec<Vec<Vec<usize>>> {
    inst.k()
        .iter()
        .zip(inst.v())
        .map(|(&k, &v)| (1..=v).combinations(k).collect::<Vec<_>>())
        .multi_cartesian_product()
        .collect()
}

/// State shared between workers: budget, stop flags, and the monotone
/// incumbent.  The incumbent size is mirrored in an atomic for cheap
/// reads; it only changes under the `best` lock, so the certificate can
/// never lag behind the size.
struct Shared {
    deadline: Instant,
    node_limit: u64,
    /// Reaching this size ends the run: the decision target, or the
    /// upper bound when maximising.
    stop_at: usize,
    nodes: AtomicU64,
    stop: AtomicBool,
    aborted: AtomicBool,
    incumbent: AtomicUsize,
    best: Mutex<Option<Vec<u32>>>,
}

impl Shared {
    fn stopped(&self) -> bool {
        self.stop.load(Ordering::Relaxed)
    }

    fn incumbent(&self) -> usize {
        self.incumbent.load(Ordering::Relaxed)
    }

    /// Records `chosen` if it beats the incumbent, raising the stop flag
    /// when the run's goal size is reached.
    fn offer(&self, chosen: &[u32]) {
        if chosen.len() <= self.incumbent() {
            return;
        }
        let mut best = self.best.lock().unwrap();
        if chosen.len() > self.incumbent() {
            self.incumbent.store(chosen.len(), Ordering::SeqCst);
            *best = Some(chosen.to_vec());
            if chosen.len() >= self.stop_at {
                self.stop.store(true, Ordering::SeqCst);
            }
        }
    }
}

/// Per-worker node accounting.  Nodes are flushed to the shared counter
/// in batches, and the budget is checked at each flush, so limits can be
/// overshot by at most one batch.
#[derive(Default)]
struct Ctx {
    since_check: u32,
}

const CHECK_EVERY: u32 = 2048;

impl Ctx {
    /// Counts one node and reports whether the search should continue.
    fn tick(&mut self, shared: &Shared) -> bool {
        self.since_check += 1;
        if self.since_check >= CHECK_EVERY {
            let total = shared
                .nodes
                .fetch_add(u64::from(self.since_check), Ordering::Relaxed)
                + u64::from(self.since_check);
            self.since_check = 0;
            if Instant::now() >= shared.deadline || total >= shared.node_limit {
                shared.aborted.store(true, Ordering::SeqCst);
                shared.stop.store(true, Ordering::SeqCst);
            }
        }
        !shared.stopped()
    }

    fn flush(&mut self, shared: &Shared) {
        shared
            .nodes
            .fetch_add(u64::from(self.since_check), Ordering::Relaxed);
        self.since_check = 0;
    }
}

/// One candidate block of the pairwise engine.
struct PairCand {
    /// Per-part point lists, 1-based, as they appear in a [`Block`].
    parts: Vec<Vec<usize>>,
    /// The same points as global 0-based ids, ascending.
    points: Vec<u32>,
    /// Ids of the coupled pairs this block covers, one per point pair.
    pairs: Vec<u32>,
}

/// Immutable instance data for the pairwise engine.
struct PairCore {
    cands: Vec<PairCand>,
    /// Pair id to the candidates covering it, ascending.
    cover: Vec<Vec<u32>>,
    /// Pair id to its coupling class, or `u32::MAX` when uncoupled.
    class_of: Vec<u32>,
    /// Pairs a block consumes from each class.
    class_use: Vec<usize>,
    /// Coupled pairs per class in the empty state.
    class_count: Vec<usize>,
    /// Pair id to its endpoints as global point ids.
    endpoints: Vec<(u32, u32)>,
    /// Bitset with a 1 on every coupled pair id.
    coupled_mask: Vec<u64>,
    words: usize,
    coupled_total: usize,
    /// Coupled pairs one block consumes in total.
    per_block: usize,
    /// Global point id of the first point of each part.
    offset: Vec<usize>,
    num_points: usize,
    gub: usize,
    symmetry: bool,
    /// Whether fresh-point signatures fit the compact encoding.
    sig_ok: bool,
}

impl PairCore {
    fn build(inst: &PackingInstance, gub: usize, symmetry: bool) -> Self {
        let m = inst.num_parts();
        let v = inst.v();
        let k = inst.k();
        let mut offset = vec![0usize; m];
        let mut vp = 0usize;
        for i in 0..m {
            offset[i] = vp;
            vp += v[i];
        }
        let pair_count = vp * (vp - 1) / 2;
        let pair_id = |a: usize, b: usize| a * vp - a * (a + 1) / 2 + b - a - 1;
        let mut part_of = vec![0usize; vp];
        for (i, &off) in offset.iter().enumerate() {
            for g in off..off + v[i] {
                part_of[g] = i;
            }
        }
        // Classes: one per part for within-part pairs, one per unordered
        // pair of parts for cross pairs.  Pairs inside a part that blocks
        // meet in a single point stay uncoupled.
        let cross_index = |i: usize, j: usize| m + i * m - i * (i + 1) / 2 + j - i - 1;
        let classes = m + m * (m - 1) / 2;
        let mut class_use = vec![0usize; classes];
        for i in 0..m {
            class_use[i] = k[i] * (k[i] - 1) / 2;
            for j in i + 1..m {
                class_use[cross_index(i, j)] = k[i] * k[j];
            }
        }
        let words = pair_count.div_ceil(64);
        let mut class_of = vec![u32::MAX; pair_count];
        let mut class_count = vec![0usize; classes];
        let mut endpoints = vec![(0u32, 0u32); pair_count];
        let mut coupled_mask = vec![0u64; words];
        let mut coupled_total = 0usize;
        for a in 0..vp {
            for b in a + 1..vp {
                let p = pair_id(a, b);
                endpoints[p] = (a as u32, b as u32);
                let (i, j) = (part_of[a], part_of[b]);
                let class = if i == j {
                    if k[i] < 2 {
                        continue;
                    }
                    i
                } else {
                    cross_index(i, j)
                };
                class_of[p] = class as u32;
                class_count[class] += 1;
                coupled_mask[p / 64] |= 1u64 << (p % 64);
                coupled_total += 1;
            }
        }
        let kk: usize = k.iter().sum();
        let cands: Vec<PairCand> = enumerate_candidates(inst)
            .into_iter()
            .map(|parts| {
                let mut points: Vec<u32> = Vec::with_capacity(kk);
                for (i, ps) in parts.iter().enumerate() {
                    for &x in ps {
                        points.push((offset[i] + x - 1) as u32);
                    }
                }
                points.sort_unstable();
                let mut pairs = Vec::with_capacity(kk * (kk - 1) / 2);
                for ai in 0..points.len() {
                    for bi in ai + 1..points.len() {
                        pairs.push(pair_id(points[ai] as usize, points[bi] as usize) as u32);
                    }
                }
                debug_assert!(pairs
                    .iter()
                    .all(|&p| class_of[p as usize] != u32::MAX));
                PairCand { parts, points, pairs }
            })
            .collect();
        let mut cover = vec![Vec::new(); pair_count];
        for (ci, c) in cands.iter().enumerate() {
            for &p in &c.pairs {
                cover[p as usize].push(ci as u32);
            }
        }
        Self {
            cands,
            cover,
            class_of,
            class_use,
            class_count,
            endpoints,
            coupled_mask,
            words,
            coupled_total,
            per_block: kk * (kk - 1) / 2,
            offset,
            num_points: vp,
            gub,
            symmetry,
            sig_ok: vp < 250 && kk + 2 * m <= 16,
        }
    }
}

/// Mutable search state of the pairwise engine.  A pair is unavailable
/// once a chosen block covers it or a branch decided to leave it
/// uncovered; the two cases constrain future blocks identically.
#[derive(Clone)]
struct PairState {
    unavailable: Vec<u64>,
    avail_total: usize,
    avail_class: Vec<usize>,
    /// How many decisions mention each point; zero means the point is
    /// still interchangeable with its part's other untouched points.
    touched: Vec<u32>,
    chosen: Vec<u32>,
}

impl PairState {
    fn new(core: &PairCore) -> Self {
        Self {
            unavailable: vec![0u64; core.words],
            avail_total: core.coupled_total,
            avail_class: core.class_count.clone(),
            touched: vec![0u32; core.num_points],
            chosen: Vec::new(),
        }
    }

    fn usable(&self, core: &PairCore, ci: u32) -> bool {
        core.cands[ci as usize]
            .pairs
            .iter()
            .all(|&p| self.unavailable[p as usize / 64] & (1u64 << (p % 64)) == 0)
    }

    fn include(&mut self, core: &PairCore, ci: u32) {
        let c = &core.cands[ci as usize];
        for &p in &c.pairs {
            self.unavailable[p as usize / 64] |= 1u64 << (p % 64);
            self.avail_total -= 1;
            self.avail_class[core.class_of[p as usize] as usize] -= 1;
        }
        for &g in &c.points {
            self.touched[g as usize] += 1;
        }
        self.chosen.push(ci);
    }

    fn exclude(&mut self, core: &PairCore, ci: u32) {
        let c = &core.cands[ci as usize];
        for &p in &c.pairs {
            self.unavailable[p as usize / 64] &= !(1u64 << (p % 64));
            self.avail_total += 1;
            self.avail_class[core.class_of[p as usize] as usize] += 1;
        }
        for &g in &c.points {
            self.touched[g as usize] -= 1;
        }
        self.chosen.pop();
    }

    /// Decides that pair `p` stays uncovered in this branch.
    fn kill(&mut self, core: &PairCore, p: u32) {
        self.unavailable[p as usize / 64] |= 1u64 << (p % 64);
        self.avail_total -= 1;
        self.avail_class[core.class_of[p as usize] as usize] -= 1;
        let (a, b) = core.endpoints[p as usize];
        self.touched[a as usize] += 1;
        self.touched[b as usize] += 1;
    }

    fn revive(&mut self, core: &PairCore, p: u32) {
        self.unavailable[p as usize / 64] &= !(1u64 << (p % 64));
        self.avail_total += 1;
        self.avail_class[core.class_of[p as usize] as usize] += 1;
        let (a, b) = core.endpoints[p as usize];
        self.touched[a as usize] -= 1;
        self.touched[b as usize] -= 1;
    }

    /// The lowest coupled pair still available, if any.
    fn first_open(&self, core: &PairCore) -> Option<u32> {
        for w in 0..core.words {
            let open = core.coupled_mask[w] & !self.unavailable[w];
            if open != 0 {
                return Some(w as u32 * 64 + open.trailing_zeros());
            }
        }
        None
    }

    /// How many more blocks could possibly fit: available pairs divided
    /// by consumption, per class and in total, capped by the global
    /// upper bound.  Every block consumes exactly `class_use[c]` pairs
    /// of class `c`, so each quotient is a valid cap on its own.
    fn optimistic(&self, core: &PairCore) -> usize {
        let mut rem = core.gub.saturating_sub(self.chosen.len());
        rem = rem.min(self.avail_total / core.per_block);
        for (avail, &used) in self.avail_class.iter().zip(&core.class_use) {
            if used > 0 {
                rem = rem.min(avail / used);
            }
        }
        rem
    }

    /// Compact signature of candidate `ci` at the branch on pair `p`:
    /// per part, the points already distinguished by some decision (or
    /// serving as an endpoint of `p`), plus a count of the rest.  Two
    /// siblings with equal signatures differ only by a relabeling of
    /// untouched points, which fixes every prior decision, so exploring
    /// one of them suffices.
    fn signature(&self, core: &PairCore, ci: u32, p: u32) -> u128 {
        let (pa, pb) = core.endpoints[p as usize];
        let c = &core.cands[ci as usize];
        let mut sig: u128 = 0;
        for (i, ps) in c.parts.iter().enumerate() {
            let mut fresh = 0u8;
            let mut fixed = 0u8;
            let mut fixed_bytes: u128 = 0;
            for &x in ps {
                let g = (core.offset[i] + x - 1) as u32;
                if self.touched[g as usize] > 0 || g == pa || g == pb {
                    fixed_bytes = (fixed_bytes << 8) | u128::from(g + 1);
                    fixed += 1;
                } else {
                    fresh += 1;
                }
            }
            sig = (sig << 8) | u128::from(fixed);
            sig = (sig << (8 * u32::from(fixed))) | fixed_bytes;
            sig = (sig << 8) | u128::from(fresh);
        }
        sig
    }
}

/// Usable candidates covering `p`, deduplicated by fresh-point signature
/// when symmetry breaking is on and the encoding fits.
fn covering_branches(core: &PairCore, st: &PairState, p: u32) -> Vec<u32> {
    let dedup = core.symmetry && core.sig_ok;
    let mut seen: HashSet<u128> = HashSet::new();
    let mut out = Vec::new();
    for &ci in &core.cover[p as usize] {
        if !st.usable(core, ci) {
            continue;
        }
        if dedup && !seen.insert(st.signature(core, ci, p)) {
            continue;
        }
        out.push(ci);
    }
    out
}

fn pair_dfs(core: &PairCore, shared: &Shared, ctx: &mut Ctx, st: &mut PairState) {
    if !ctx.tick(shared) {
        return;
    }
    if st.chosen.len() + st.optimistic(core) <= shared.incumbent() {
        return;
    }
    let Some(p) = st.first_open(core) else {
        return;
    };
    for ci in covering_branches(core, st, p) {
        if shared.stopped() {
            return;
        }
        st.include(core, ci);
        shared.offer(&st.chosen);
        pair_dfs(core, shared, ctx, st);
        st.exclude(core, ci);
    }
    if shared.stopped() {
        return;
    }
    st.kill(core, p);
    pair_dfs(core, shared, ctx, st);
    st.revive(core, p);
}

fn run_pair(core: &PairCore, cfg: &SearchConfig, shared: &Shared) {
    let mut st = PairState::new(core);
    let mut ctx = Ctx::default();
    if core.symmetry {
        // Any nonempty packing relabels within parts onto one containing
        // the least candidate, so it can be pinned as the first block.
        st.include(core, 0);
        shared.offer(&st.chosen);
        if shared.stopped() {
            ctx.flush(shared);
            return;
        }
    }
    if cfg.threads <= 1 {
        pair_dfs(core, shared, &mut ctx, &mut st);
        ctx.flush(shared);
        return;
    }
    // Split one level below the root and let workers drain the branches;
    // the shared incumbent keeps pruning monotone across them.
    let Some(p) = st.first_open(core) else {
        pair_dfs(core, shared, &mut ctx, &mut st);
        ctx.flush(shared);
        return;
    };
    let mut jobs: VecDeque<PairState> = VecDeque::new();
    for ci in covering_branches(core, &st, p) {
        st.include(core, ci);
        shared.offer(&st.chosen);
        jobs.push_back(st.clone());
        st.exclude(core, ci);
    }
    st.kill(core, p);
    jobs.push_back(st.clone());
    st.revive(core, p);
    ctx.flush(shared);
    let queue = Mutex::new(jobs);
    let workers = cfg.threads.min(queue.lock().unwrap().len()).max(1);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| {
                let mut ctx = Ctx::default();
                loop {
                    if shared.stopped() {
                        break;
                    }
                    let job = queue.lock().unwrap().pop_front();
                    let Some(mut job) = job else { break };
                    pair_dfs(core, shared, &mut ctx, &mut job);
                }
                ctx.flush(shared);
            });
        }
    });
}

/// One candidate block of the general engine.
struct GenCand {
    parts: Vec<Vec<usize>>,
    /// Ids of the admissible tuples this block covers, one each.
    units: Vec<u32>,
}

/// Immutable instance data for the general engine: every admissible
/// tuple becomes a unit with capacity `λ`.
struct GenCore {
    cands: Vec<GenCand>,
    /// Unit id to the index of its t-vector.
    unit_profile: Vec<u32>,
    /// Units one block covers per t-vector.
    profile_use: Vec<usize>,
    unit_count: usize,
    lambda: u32,
    gub: usize,
    symmetry: bool,
}

impl GenCore {
    fn build(inst: &PackingInstance, gub: usize, symmetry: bool) -> Self {
        let tts = inst.admissible_vectors();
        let v = inst.v();
        let choose = |n: usize, r: usize| -> usize {
            let r = r.min(n - r);
            let mut acc = 1usize;
            for i in 0..r {
                acc = acc * (n - i) / (i + 1);
            }
            acc
        };
        let profile_use: Vec<usize> = tts
            .iter()
            .map(|tt| {
                tt.iter()
                    .zip(inst.k())
                    .map(|(&ti, &ki)| choose(ki, ti))
                    .product()
            })
            .collect();
        // A unit's key lists each involved part followed by its points;
        // the same encoding serves enumeration and candidate lookup.
        let key_of = |sets: &[(usize, &[usize])]| -> Vec<u16> {
            let mut key = Vec::new();
            for &(i, ps) in sets {
                key.push(0x8000 | i as u16);
                key.extend(ps.iter().map(|&x| x as u16));
            }
            key
        };
        let mut unit_id: HashMap<Vec<u16>, u32> = HashMap::new();
        let mut unit_profile: Vec<u32> = Vec::new();
        for (pi, tt) in tts.iter().enumerate() {
            let involved: Vec<usize> = (0..tt.len()).filter(|&i| tt[i] > 0).collect();
            let choices: Vec<Vec<Vec<usize>>> = involved
                .iter()
                .map(|&i| (1..=v[i]).combinations(tt[i]).collect())
                .collect();
            for combo in choices.into_iter().multi_cartesian_product() {
                let sets: Vec<(usize, &[usize])> = involved
                    .iter()
                    .copied()
                    .zip(combo.iter().map(|c| c.as_slice()))
                    .collect();
                unit_id.insert(key_of(&sets), unit_profile.len() as u32);
                unit_profile.push(pi as u32);
            }
        }
        let cands: Vec<GenCand> = enumerate_candidates(inst)
            .into_iter()
            .map(|parts| {
                let mut units = Vec::new();
                for tt in &tts {
                    let involved: Vec<usize> =
                        (0..tt.len()).filter(|&i| tt[i] > 0).collect();
                    let choices: Vec<Vec<Vec<usize>>> = involved
                        .iter()
                        .map(|&i| {
                            parts[i]
                                .iter()
                                .copied()
                                .combinations(tt[i])
                                .collect()
                        })
                        .collect();
                    for combo in choices.into_iter().multi_cartesian_product() {
                        let sets: Vec<(usize, &[usize])> = involved
                            .iter()
                            .copied()
                            .zip(combo.iter().map(|c| c.as_slice()))
                            .collect();
                        units.push(unit_id[&key_of(&sets)]);
                    }
                }
                GenCand { parts, units }
            })
            .collect();
        Self {
            cands,
            unit_count: unit_profile.len(),
            unit_profile,
            profile_use,
            lambda: inst.lambda() as u32,
            gub,
            symmetry,
        }
    }
}

/// Mutable state of the general engine: remaining capacity per unit and
/// per t-vector.
struct GenState {
    remaining: Vec<u32>,
    profile_avail: Vec<usize>,
    chosen: Vec<u32>,
}

impl GenState {
    fn new(core: &GenCore) -> Self {
        let mut profile_avail = vec![0usize; core.profile_use.len()];
        for &pi in &core.unit_profile {
            profile_avail[pi as usize] += core.lambda as usize;
        }
        Self {
            remaining: vec![core.lambda; core.unit_count],
            profile_avail,
            chosen: Vec::new(),
        }
    }

    fn usable(&self, core: &GenCore, ci: usize) -> bool {
        core.cands[ci].units.iter().all(|&u| self.remaining[u as usize] > 0)
    }

    fn include(&mut self, core: &GenCore, ci: usize) {
        for &u in &core.cands[ci].units {
            self.remaining[u as usize] -= 1;
            self.profile_avail[core.unit_profile[u as usize] as usize] -= 1;
        }
        self.chosen.push(ci as u32);
    }

    fn exclude(&mut self, core: &GenCore, ci: usize) {
        for &u in &core.cands[ci].units {
            self.remaining[u as usize] += 1;
            self.profile_avail[core.unit_profile[u as usize] as usize] += 1;
        }
        self.chosen.pop();
    }

    /// Remaining capacity divided by per-block consumption, per
    /// t-vector, capped by the global upper bound.
    fn optimistic(&self, core: &GenCore) -> usize {
        let mut rem = core.gub.saturating_sub(self.chosen.len());
        for (avail, &used) in self.profile_avail.iter().zip(&core.profile_use) {
            rem = rem.min(avail / used);
        }
        rem
    }
}

/// Depth-first search over candidates from index `from` upward.  Starting
/// each level at the current index rather than the next one admits
/// repeated blocks, which `λ > 1` allows.
fn gen_dfs(core: &GenCore, shared: &Shared, ctx: &mut Ctx, st: &mut GenState, from: usize) {
    if !ctx.tick(shared) {
        return;
    }
    if st.chosen.len() + st.optimistic(core) <= shared.incumbent() {
        return;
    }
    for ci in from..core.cands.len() {
        if shared.stopped() {
            return;
        }
        if !st.usable(core, ci) {
            continue;
        }
        st.include(core, ci);
        shared.offer(&st.chosen);
        gen_dfs(core, shared, ctx, st, ci);
        st.exclude(core, ci);
    }
}

fn run_general(core: &GenCore, shared: &Shared) {
    let mut st = GenState::new(core);
    let mut ctx = Ctx::default();
    if core.symmetry {
        st.include(core, 0);
        shared.offer(&st.chosen);
        if !shared.stopped() {
            gen_dfs(core, shared, &mut ctx, &mut st, 0);
        }
    } else {
        gen_dfs(core, shared, &mut ctx, &mut st, 0);
    }
    ctx.flush(shared);
}
