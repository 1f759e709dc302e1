//! Building blocks behind the constructors: one-factorizations, Latin
//! rectangles, orthogonal rectangle pairs, Howell designs and Room squares,
//! strong starters, maximum triple packings, and coloured triple packings.
//!
//! Each provider follows the same discipline.  When a closed-form or stored
//! construction is known, it is built and validated; when the object is known
//! not to exist, that is reported as a fact; when the object exists but this
//! crate has no constructor for it, the outcome says so rather than guessing.
//! Small objects with no closed form are produced by the exact search engine
//! and, where they are fixed data, frozen here as constants.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::model::{Block, GeneralizedPacking, PackingInstance};
use crate::search::{decide_size, max_packing_search, Decision, SearchConfig, SearchStatus};

/// Time allowance for the bounded searches some providers fall back on.
const PROVIDER_SEARCH_BUDGET: Duration = Duration::from_secs(30);

/// How a provider resolved a request.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProviderStatus {
    /// The object was built and is attached as the payload.
    Constructed,
    /// The object is known not to exist.
    Nonexistent,
    /// The object is known to exist, but this crate cannot build it.
    ExistsNoProvider,
    /// Existence is unresolved within the allotted effort.
    Unknown,
}

impl ProviderStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            ProviderStatus::Constructed => "constructed",
            ProviderStatus::Nonexistent => "nonexistent",
            ProviderStatus::ExistsNoProvider => "exists-no-provider",
            ProviderStatus::Unknown => "unknown",
        }
    }
}

/// Result of asking a provider for an object.
///
/// `method` is a short machine-readable tag naming the construction that
/// produced the payload, or the reason no payload is attached.
#[derive(Debug, Clone)]
pub struct ProviderOutcome<T> {
    pub payload: Option<T>,
    pub status: ProviderStatus,
    pub method: &'static str,
}

impl<T> ProviderOutcome<T> {
    fn built(payload: T, method: &'static str) -> Self {
        ProviderOutcome {
            payload: Some(payload),
            status: ProviderStatus::Constructed,
            method,
        }
    }

    fn nonexistent(method: &'static str) -> Self {
        ProviderOutcome {
            payload: None,
            status: ProviderStatus::Nonexistent,
            method,
        }
    }

    fn no_provider() -> Self {
        ProviderOutcome {
            payload: None,
            status: ProviderStatus::ExistsNoProvider,
            method: "no-constructor",
        }
    }

    fn unknown(method: &'static str) -> Self {
        ProviderOutcome {
            payload: None,
            status: ProviderStatus::Unknown,
            method,
        }
    }

    /// The payload of a constructed outcome.  Panics if there is none.
    pub fn into_payload(self) -> T {
        match self.payload {
            Some(p) => p,
            None => panic!(
                "provider outcome carries no payload (status {})",
                self.status.as_str()
            ),
        }
    }
}

/// A defect found while validating a building block.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DesignDefect {
    #[error("wrong shape: {0}")]
    Shape(String),
    #[error("entry out of range: {0}")]
    Range(String),
    #[error("repeated symbol: {0}")]
    RepeatedSymbol(String),
    #[error("repeated pair: {0}")]
    RepeatedPair(String),
    #[error("coverage violation: {0}")]
    Coverage(String),
}

// ---------------------------------------------------------------------------
// Factorizations of complete graphs
// ---------------------------------------------------------------------------

/// Whether a [`FactorList`] partitions all of `K_v` into perfect matchings,
/// or into near-perfect matchings each missing one point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorKind {
    Perfect,
    Near,
}

/// An edge decomposition of the complete graph on points `1..=v` into
/// matchings.
///
/// For even `v` this is a one-factorization: `v - 1` classes of `v/2`
/// disjoint edges each.  For odd `v` it is a near-one-factorization: `v`
/// classes of `(v - 1)/2` disjoint edges, class `j` covering every point
/// except `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorList {
    v: usize,
    kind: FactorKind,
    classes: Vec<Vec<(usize, usize)>>,
}

impl FactorList {
    pub fn v(&self) -> usize {
        self.v
    }

    pub fn kind(&self) -> FactorKind {
        self.kind
    }

    pub fn classes(&self) -> &[Vec<(usize, usize)>] {
        &self.classes
    }

    /// Checks that the classes are matchings partitioning `E(K_v)`, with the
    /// class count and missing-point pattern demanded by the kind.
    pub fn check(&self) -> Result<(), DesignDefect> {
        let v = self.v;
        let expected_classes = match self.kind {
            FactorKind::Perfect => v - 1,
            FactorKind::Near => v,
        };
        if self.classes.len() != expected_classes {
            return Err(DesignDefect::Shape(format!(
                "{} classes, expected {expected_classes}",
                self.classes.len()
            )));
        }
        let mut seen = vec![false; (v + 1) * (v + 1)];
        for (ci, class) in self.classes.iter().enumerate() {
            let mut touched = vec![false; v + 1];
            for &(a, b) in class {
                if a == b || a < 1 || b < 1 || a > v || b > v {
                    return Err(DesignDefect::Range(format!("edge ({a},{b})")));
                }
                let (lo, hi) = (a.min(b), a.max(b));
                if seen[lo * (v + 1) + hi] {
                    return Err(DesignDefect::RepeatedPair(format!("edge ({lo},{hi})")));
                }
                seen[lo * (v + 1) + hi] = true;
                for p in [a, b] {
                    if touched[p] {
                        return Err(DesignDefect::RepeatedSymbol(format!(
                            "point {p} twice in class {ci}"
                        )));
                    }
                    touched[p] = true;
                }
            }
            let missed: Vec<usize> = (1..=v).filter(|&p| !touched[p]).collect();
            let ok = match self.kind {
                FactorKind::Perfect => missed.is_empty(),
                FactorKind::Near => missed == [ci + 1],
            };
            if !ok {
                return Err(DesignDefect::Coverage(format!(
                    "class {ci} misses points {missed:?}"
                )));
            }
        }
        let total: usize = self.classes.iter().map(|c| c.len()).sum();
        if total != v * (v - 1) / 2 {
            return Err(DesignDefect::Coverage(format!(
                "{total} edges in total, expected {}",
                v * (v - 1) / 2
            )));
        }
        Ok(())
    }
}

/// A one-factorization of `K_v` for even `v`, by the circle method: point
/// `v` stays fixed while the others rotate, so class `d` pairs `v` with
/// `d + 1` and wraps `{d + i, d - i}` around the circle `1..v`.
pub fn one_factorization(v: usize) -> FactorList {
    assert!(v >= 2 && v % 2 == 0, "needs an even number of points");
    let n = v - 1;
    let classes = (0..n)
        .map(|d| {
            let mut class = vec![(v, d + 1)];
            for i in 1..v / 2 {
                let a = (d + i) % n + 1;
                let b = (d + n - i) % n + 1;
                class.push((a, b));
            }
            class
        })
        .collect();
    FactorList {
        v,
        kind: FactorKind::Perfect,
        classes,
    }
}

/// A near-one-factorization of `K_v` for odd `v`: class `j` consists of the
/// pairs `{j + i, j - i}` modulo `v`, which cover every point except `j`.
pub fn near_one_factorization(v: usize) -> FactorList {
    assert!(v % 2 == 1, "needs an odd number of points");
    let classes = (1..=v)
        .map(|j| {
            (1..=(v - 1) / 2)
                .map(|i| {
                    let a = (j - 1 + i) % v + 1;
                    let b = (j + v - 1 - i) % v + 1;
                    (a, b)
                })
                .collect()
        })
        .collect();
    FactorList {
        v,
        kind: FactorKind::Near,
        classes,
    }
}

// ---------------------------------------------------------------------------
// Latin rectangles and orthogonal pairs
// ---------------------------------------------------------------------------

/// An `r x c` array with entries in `1..=c`, each symbol appearing exactly
/// once per row and at most once per column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatinRectangle {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<usize>>,
}

impl LatinRectangle {
    pub fn new(entries: Vec<Vec<usize>>) -> Self {
        let rows = entries.len();
        let cols = entries.first().map_or(0, |r| r.len());
        LatinRectangle {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Vec<usize>] {
        &self.entries
    }

    /// Entry in 1-based position `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries[i - 1][j - 1]
    }

    /// Keeps the first `r` rows.
    pub fn truncated(&self, r: usize) -> Self {
        assert!(r <= self.rows);
        LatinRectangle::new(self.entries[..r].to_vec())
    }

    pub fn check(&self) -> Result<(), DesignDefect> {
        if self.rows == 0 || self.rows > self.cols {
            return Err(DesignDefect::Shape(format!(
                "{} x {} is not a valid rectangle",
                self.rows, self.cols
            )));
        }
        for row in &self.entries {
            if row.len() != self.cols {
                return Err(DesignDefect::Shape("ragged rows".into()));
            }
        }
        for (i, row) in self.entries.iter().enumerate() {
            let mut seen = vec![false; self.cols + 1];
            for &x in row {
                if x < 1 || x > self.cols {
                    return Err(DesignDefect::Range(format!("entry {x} in row {i}")));
                }
                if seen[x] {
                    return Err(DesignDefect::RepeatedSymbol(format!(
                        "symbol {x} twice in row {i}"
                    )));
                }
                seen[x] = true;
            }
        }
        for j in 0..self.cols {
            let mut seen = vec![false; self.cols + 1];
            for i in 0..self.rows {
                let x = self.entries[i][j];
                if seen[x] {
                    return Err(DesignDefect::RepeatedSymbol(format!(
                        "symbol {x} twice in column {j}"
                    )));
                }
                seen[x] = true;
            }
        }
        Ok(())
    }
}

/// Whether two rectangles of equal shape are orthogonal: superimposing them
/// repeats no ordered pair of entries.
pub fn orthogonal(a: &LatinRectangle, b: &LatinRectangle) -> bool {
    if a.rows != b.rows || a.cols != b.cols {
        return false;
    }
    let span = a.cols.max(
        b.entries
            .iter()
            .flatten()
            .copied()
            .max()
            .unwrap_or(0),
    ) + 1;
    let mut seen = vec![false; span * span];
    for i in 0..a.rows {
        for j in 0..a.cols {
            let key = a.entries[i][j] * span + b.entries[i][j];
            if seen[key] {
                return false;
            }
            seen[key] = true;
        }
    }
    true
}

/// The cyclic `r x c` Latin rectangle with `L(i, j) = ((i + j - 2) mod c) + 1`.
pub fn latin_rectangle(rows: usize, cols: usize) -> LatinRectangle {
    assert!(rows >= 1 && rows <= cols, "needs 1 <= rows <= cols");
    let entries = (1..=rows)
        .map(|i| (1..=cols).map(|j| (i + j - 2) % cols + 1).collect())
        .collect();
    LatinRectangle::new(entries)
}

/// Arithmetic tables of a finite field with `q` elements, used to build
/// orthogonal Latin square pairs for prime-power orders.
struct FieldTables {
    q: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
}

impl FieldTables {
    fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b]
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b]
    }
}

fn prime_power(n: usize) -> Option<(usize, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut m = n;
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            return if m == 1 { Some((p, e)) } else { None };
        }
        p += 1;
    }
    Some((n, 1))
}

/// Remainder of `a` divided by `b` in `Z_p[x]`, coefficients little-endian.
fn poly_rem(mut a: Vec<usize>, b: &[usize], p: usize) -> Vec<usize> {
    let db = b.len() - 1;
    while a.len() > db {
        let lead = *a.last().unwrap();
        if lead != 0 {
            // b is monic, so subtract lead * x^(deg a - deg b) * b.
            let shift = a.len() - 1 - db;
            for (i, &bc) in b.iter().enumerate() {
                let idx = shift + i;
                a[idx] = (a[idx] + p - lead * bc % p) % p;
            }
        }
        a.pop();
    }
    a
}

fn poly_mul(a: &[usize], b: &[usize], p: usize) -> Vec<usize> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &ac) in a.iter().enumerate() {
        for (j, &bc) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ac * bc) % p;
        }
    }
    out
}

fn is_zero(a: &[usize]) -> bool {
    a.iter().all(|&c| c == 0)
}

/// The lexicographically least monic irreducible polynomial of degree `k`
/// over `Z_p`, compared on the coefficient tuple from `x^{k-1}` down to the
/// constant term.  Returned little-endian with the leading coefficient last.
fn least_irreducible(p: usize, k: u32) -> Vec<usize> {
    let k = k as usize;
    let count = p.pow(k as u32);
    'cand: for code in 0..count {
        // Decode so that low digits of `code` are low-order coefficients,
        // then candidates come out in lexicographic order of
        // (c_{k-1}, ..., c_0) by iterating the mirrored code.
        let mut coeffs = vec![0usize; k + 1];
        coeffs[k] = 1;
        let mut c = code;
        for i in (0..k).rev() {
            coeffs[i] = c % p;
            c /= p;
        }
        // Trial division by every monic polynomial of degree 1..=k/2.
        for d in 1..=k / 2 {
            for dc in 0..p.pow(d as u32) {
                let mut div = vec![0usize; d + 1];
                div[d] = 1;
                let mut c = dc;
                for coeff in div.iter_mut().take(d) {
                    *coeff = c % p;
                    c /= p;
                }
                if is_zero(&poly_rem(coeffs.clone(), &div, p)) {
                    continue 'cand;
                }
            }
        }
        return coeffs;
    }
    unreachable!("an irreducible polynomial of every degree exists");
}

/// Field tables for a prime power `q`; `None` when `q` is not a prime power
/// or needs a polynomial extension beyond order 64.
fn field_tables(q: usize) -> Option<FieldTables> {
    let (p, e) = prime_power(q)?;
    if e == 1 {
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            for b in 0..q {
                add[a * q + b] = (a + b) % q;
                mul[a * q + b] = a * b % q;
            }
        }
        return Some(FieldTables { q, add, mul });
    }
    if q > 64 {
        return None;
    }
    let modulus = least_irreducible(p, e);
    let digits = |mut x: usize| -> Vec<usize> {
        let mut d = vec![0; e as usize];
        for coeff in d.iter_mut() {
            *coeff = x % p;
            x /= p;
        }
        d
    };
    let pack = |d: &[usize]| -> usize {
        d.iter()
            .rev()
            .fold(0, |acc, &c| acc * p + c)
    };
    let mut add = vec![0; q * q];
    let mut mul = vec![0; q * q];
    for a in 0..q {
        for b in 0..q {
            let (da, db) = (digits(a), digits(b));
            let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            add[a * q + b] = pack(&sum);
            let mut prod = poly_rem(poly_mul(&da, &db, p), &modulus, p);
            prod.resize(e as usize, 0);
            mul[a * q + b] = pack(&prod);
        }
    }
    Some(FieldTables { q, add, mul })
}

/// Two orthogonal Latin squares of prime-power order `q >= 3` over the field:
/// `L_a(x, y) = a*x + y` for `a = 1` and one other nonzero multiplier.
fn field_square_pair(q: usize) -> Option<(Vec<Vec<usize>>, Vec<Vec<usize>>)> {
    if q < 3 {
        return None;
    }
    let f = field_tables(q)?;
    let g = if prime_power(q).unwrap().1 == 1 { 2 } else { prime_power(q).unwrap().0 };
    let mut l1 = vec![vec![0; q]; q];
    let mut l2 = vec![vec![0; q]; q];
    for x in 0..q {
        for y in 0..q {
            l1[x][y] = f.add(x, y);
            l2[x][y] = f.add(f.mul(g, x), y);
        }
    }
    Some((l1, l2))
}

/// Superimposes per-factor square pairs into a pair of order `q1 * q2`
/// squares; orthogonality is preserved coordinatewise.
fn product_pair(
    a: (Vec<Vec<usize>>, Vec<Vec<usize>>),
    b: (Vec<Vec<usize>>, Vec<Vec<usize>>),
) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let (q1, q2) = (a.0.len(), b.0.len());
    let n = q1 * q2;
    let mut l1 = vec![vec![0; n]; n];
    let mut l2 = vec![vec![0; n]; n];
    for x1 in 0..q1 {
        for x2 in 0..q2 {
            for y1 in 0..q1 {
                for y2 in 0..q2 {
                    let (x, y) = (x1 * q2 + x2, y1 * q2 + y2);
                    l1[x][y] = a.0[x1][y1] * q2 + b.0[x2][y2];
                    l2[x][y] = a.1[x1][y1] * q2 + b.1[x2][y2];
                }
            }
        }
    }
    (l1, l2)
}

fn zero_based_pair_to_rectangles(
    pair: (Vec<Vec<usize>>, Vec<Vec<usize>>),
    rows: usize,
) -> (LatinRectangle, LatinRectangle) {
    let lift = |m: Vec<Vec<usize>>| {
        LatinRectangle::new(
            m[..rows]
                .iter()
                .map(|r| r.iter().map(|&x| x + 1).collect())
                .collect(),
        )
    };
    (lift(pair.0), lift(pair.1))
}

const MOLR_4_6_A: [[usize; 6]; 4] = [
    [1, 2, 3, 4, 5, 6],
    [2, 1, 4, 5, 6, 3],
    [3, 4, 1, 6, 2, 5],
    [4, 6, 5, 1, 3, 2],
];

const MOLR_4_6_B: [[usize; 6]; 4] = [
    [1, 2, 3, 4, 5, 6],
    [3, 4, 1, 6, 2, 5],
    [2, 3, 5, 1, 6, 4],
    [6, 5, 2, 3, 4, 1],
];

const MOLR_5_6_A: [[usize; 6]; 5] = [
    [1, 2, 3, 4, 5, 6],
    [2, 1, 4, 5, 6, 3],
    [3, 4, 5, 6, 2, 1],
    [4, 5, 6, 1, 3, 2],
    [6, 3, 1, 2, 4, 5],
];

const MOLR_5_6_B: [[usize; 6]; 5] = [
    [1, 2, 3, 4, 5, 6],
    [3, 4, 1, 6, 2, 5],
    [2, 5, 4, 1, 6, 3],
    [6, 3, 5, 2, 4, 1],
    [4, 1, 6, 5, 3, 2],
];

pub(crate) fn stored_rectangle_pair(rows: usize, cols: usize) -> (LatinRectangle, LatinRectangle) {
    assert_eq!(cols, 6);
    let from = |m: &[[usize; 6]]| {
        LatinRectangle::new(m.iter().map(|r| r.to_vec()).collect())
    };
    match rows {
        5 => (from(&MOLR_5_6_A), from(&MOLR_5_6_B)),
        r if r <= 4 => (
            from(&MOLR_4_6_A).truncated(r),
            from(&MOLR_4_6_B).truncated(r),
        ),
        _ => panic!("no stored pair with {rows} rows"),
    }
}

/// A pair of orthogonal `rows x cols` Latin rectangles on `cols` symbols.
///
/// Resolution order: a single row is trivially orthogonal to itself; odd
/// `cols` uses the cyclic pair `a*i + j` for `a = 1, 2`; `cols` divisible by
/// four uses a product of finite-field pairs over the prime-power factors;
/// `cols = 6` uses stored rectangles below six rows and is impossible at six;
/// `cols = 2` is impossible beyond one row; the remaining even orders are
/// known to exist for `cols >= 10` but have no constructor here.
pub fn molr_pair(rows: usize, cols: usize) -> ProviderOutcome<(LatinRectangle, LatinRectangle)> {
    assert!(
        rows >= 1 && rows <= cols,
        "needs 1 <= rows <= cols, got {rows} x {cols}"
    );
    if rows == 1 {
        let row = latin_rectangle(1, cols);
        return ProviderOutcome::built((row.clone(), row), "single-row");
    }
    if cols % 2 == 1 {
        let make = |a: usize| {
            LatinRectangle::new(
                (0..rows)
                    .map(|i| (0..cols).map(|j| (a * i + j) % cols + 1).collect())
                    .collect(),
            )
        };
        return ProviderOutcome::built((make(1), make(2)), "cyclic");
    }
    if cols % 4 == 0 {
        let mut factors: Vec<usize> = Vec::new();
        let mut m = cols;
        let mut p = 2;
        while p * p <= m {
            if m % p == 0 {
                let mut q = 1;
                while m % p == 0 {
                    q *= p;
                    m /= p;
                }
                factors.push(q);
            }
            p += 1;
        }
        if m > 1 {
            factors.push(m);
        }
        factors.sort_unstable();
        let mut acc: Option<(Vec<Vec<usize>>, Vec<Vec<usize>>)> = None;
        for q in factors {
            match field_square_pair(q) {
                Some(pair) => {
                    acc = Some(match acc {
                        None => pair,
                        Some(prev) => product_pair(prev, pair),
                    });
                }
                None => return ProviderOutcome::no_provider(),
            }
        }
        let pair = zero_based_pair_to_rectangles(acc.unwrap(), rows);
        return ProviderOutcome::built(pair, "field-product");
    }
    match cols {
        2 => ProviderOutcome::nonexistent("order-two"),
        6 => {
            if rows == 6 {
                ProviderOutcome::nonexistent("euler-order-six")
            } else {
                ProviderOutcome::built(stored_rectangle_pair(rows, 6), "fixture")
            }
        }
        _ => ProviderOutcome::no_provider(),
    }
}

// ---------------------------------------------------------------------------
// Howell designs
// ---------------------------------------------------------------------------

/// An `s x s` array over an even alphabet in which every symbol appears
/// exactly once per row and column, every filled cell holds an unordered
/// pair, and no pair repeats.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HowellArray {
    side: usize,
    symbols: usize,
    grid: Vec<Vec<Option<(usize, usize)>>>,
}

impl HowellArray {
    pub fn new(symbols: usize, grid: Vec<Vec<Option<(usize, usize)>>>) -> Self {
        let side = grid.len();
        HowellArray {
            side,
            symbols,
            grid,
        }
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn symbols(&self) -> usize {
        self.symbols
    }

    pub fn grid(&self) -> &[Vec<Option<(usize, usize)>>] {
        &self.grid
    }

    pub fn check(&self) -> Result<(), DesignDefect> {
        let (s, n2) = (self.side, self.symbols);
        if s == 0 || n2 % 2 != 0 || n2 < s + 1 || n2 > 2 * s {
            return Err(DesignDefect::Shape(format!("side {s} on {n2} symbols")));
        }
        if self.grid.iter().any(|row| row.len() != s) {
            return Err(DesignDefect::Shape("grid is not square".into()));
        }
        let mut pair_seen = vec![false; (n2 + 1) * (n2 + 1)];
        let mut col_seen = vec![vec![false; n2 + 1]; s];
        for (i, row) in self.grid.iter().enumerate() {
            let mut row_seen = vec![false; n2 + 1];
            for (j, cell) in row.iter().enumerate() {
                let Some((a, b)) = *cell else { continue };
                if a == b || a < 1 || b < 1 || a > n2 || b > n2 {
                    return Err(DesignDefect::Range(format!("cell ({i},{j}) = ({a},{b})")));
                }
                let (lo, hi) = (a.min(b), a.max(b));
                if pair_seen[lo * (n2 + 1) + hi] {
                    return Err(DesignDefect::RepeatedPair(format!("pair ({lo},{hi})")));
                }
                pair_seen[lo * (n2 + 1) + hi] = true;
                for x in [a, b] {
                    if row_seen[x] {
                        return Err(DesignDefect::RepeatedSymbol(format!(
                            "symbol {x} twice in row {i}"
                        )));
                    }
                    row_seen[x] = true;
                    if col_seen[j][x] {
                        return Err(DesignDefect::RepeatedSymbol(format!(
                            "symbol {x} twice in column {j}"
                        )));
                    }
                    col_seen[j][x] = true;
                }
            }
            if let Some(x) = (1..=n2).find(|&x| !row_seen[x]) {
                return Err(DesignDefect::Coverage(format!(
                    "symbol {x} missing from row {i}"
                )));
            }
        }
        Ok(())
    }
}

/// The existence criterion for an `s x s` Howell design on `2n` symbols:
/// `s + 1 <= 2n <= 2s`, minus four sporadic impossible parameter pairs.
pub fn howell_exists(side: usize, symbols: usize) -> bool {
    if side == 0 || symbols % 2 != 0 {
        return false;
    }
    symbols >= side + 1
        && symbols <= 2 * side
        && !matches!((side, symbols), (2, 4) | (3, 4) | (5, 6) | (5, 8))
}

const SOMA_2_6: [[(usize, usize); 6]; 6] = [
    [(1, 2), (8, 10), (6, 12), (7, 9), (5, 11), (3, 4)],
    [(9, 11), (1, 3), (5, 7), (6, 8), (2, 4), (10, 12)],
    [(6, 10), (7, 11), (1, 4), (2, 3), (8, 12), (5, 9)],
    [(4, 8), (9, 12), (10, 11), (1, 5), (3, 7), (2, 6)],
    [(7, 12), (2, 5), (3, 9), (4, 10), (1, 6), (8, 11)],
    [(3, 5), (4, 6), (2, 8), (11, 12), (9, 10), (1, 7)],
];

/// Cells marked `(0, 0)` are empty.
const HOWELL_4_6: [[(usize, usize); 4]; 4] = [
    [(1, 2), (3, 4), (5, 6), (0, 0)],
    [(0, 0), (1, 6), (2, 3), (4, 5)],
    [(3, 5), (0, 0), (1, 4), (2, 6)],
    [(4, 6), (2, 5), (0, 0), (1, 3)],
];

fn grid_from_fixture(symbols: usize, cells: &[&[(usize, usize)]]) -> HowellArray {
    let grid = cells
        .iter()
        .map(|row| {
            row.iter()
                .map(|&(a, b)| if a == 0 { None } else { Some((a, b)) })
                .collect()
        })
        .collect();
    HowellArray::new(symbols, grid)
}

pub(crate) fn stored_soma_2_6() -> HowellArray {
    let rows: Vec<&[(usize, usize)]> = SOMA_2_6.iter().map(|r| r.as_slice()).collect();
    grid_from_fixture(12, &rows)
}

pub(crate) fn stored_howell_4_6() -> HowellArray {
    let rows: Vec<&[(usize, usize)]> = HOWELL_4_6.iter().map(|r| r.as_slice()).collect();
    grid_from_fixture(6, &rows)
}

/// Superimposes an orthogonal square pair on disjoint alphabets, giving the
/// fully filled Howell design `H(n, 2n)`.
fn trojan_superposition(a: &LatinRectangle, b: &LatinRectangle) -> HowellArray {
    let n = a.cols();
    let grid = (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| Some((a.get(i, j), b.get(i, j) + n)))
                .collect()
        })
        .collect();
    HowellArray::new(2 * n, grid)
}

/// Reads a Howell design out of a full-size packing found by the search
/// engine: block `({a, b}, {r}, {c})` fills cell `(r, c)` with `{a, b}`.
fn howell_from_packing(side: usize, symbols: usize, packing: &GeneralizedPacking) -> HowellArray {
    let mut grid = vec![vec![None; side]; side];
    for block in packing.blocks() {
        let pair = (block.part(0)[0], block.part(0)[1]);
        grid[block.part(1)[0] - 1][block.part(2)[0] - 1] = Some(pair);
    }
    HowellArray::new(symbols, grid)
}

/// A Howell design `H(side, symbols)`.
///
/// The two extremes have direct constructions: a fully filled design comes
/// from superimposing an orthogonal square pair (stored data at side six),
/// and `symbols = side + 1` is a Room square built from a strong starter.
/// Intermediate parameters use stored data where available and otherwise a
/// bounded exact search, admitting defeat rather than exceeding `budget`.
pub fn howell_design(
    side: usize,
    symbols: usize,
    budget: Duration,
) -> ProviderOutcome<HowellArray> {
    if !howell_exists(side, symbols) {
        return ProviderOutcome::nonexistent("existence-theorem");
    }
    if symbols == 2 * side {
        if side == 6 {
            return ProviderOutcome::built(stored_soma_2_6(), "fixture");
        }
        let pair = molr_pair(side, side);
        return match pair.payload {
            Some((a, b)) => {
                ProviderOutcome::built(trojan_superposition(&a, &b), "trojan-superposition")
            }
            None => ProviderOutcome {
                payload: None,
                status: pair.status,
                method: pair.method,
            },
        };
    }
    if symbols == side + 1 {
        let starter = strong_starter_adder(side);
        return match starter.payload {
            Some(sa) => ProviderOutcome::built(sa.room_square(), "room-square"),
            None => ProviderOutcome {
                payload: None,
                status: starter.status,
                method: starter.method,
            },
        };
    }
    if (side, symbols) == (4, 6) {
        return ProviderOutcome::built(stored_howell_4_6(), "fixture");
    }
    let inst = PackingInstance::new(vec![symbols, side, side], vec![2, 1, 1], 2, 1)
        .expect("howell parameters form a valid instance");
    let cfg = SearchConfig {
        time_budget: budget,
        ..SearchConfig::default()
    };
    match decide_size(&inst, side * symbols / 2, &cfg) {
        Decision::Yes(p) => {
            ProviderOutcome::built(howell_from_packing(side, symbols, &p), "search")
        }
        Decision::No => unreachable!("contradicts the existence theorem"),
        Decision::Unknown => ProviderOutcome {
            payload: None,
            status: ProviderStatus::ExistsNoProvider,
            method: "search-budget",
        },
    }
}

// ---------------------------------------------------------------------------
// Strong starters and Room squares
// ---------------------------------------------------------------------------

/// A starter-adder pair in `Z_n`: the starter pairs partition the nonzero
/// elements and realize every difference once; translating pair `k` through
/// all rows at column offset `-adder[k]` fills a Room square of side `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarterAdder {
    n: usize,
    pairs: Vec<(usize, usize)>,
    adder: Vec<usize>,
}

impl StarterAdder {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn adder(&self) -> &[usize] {
        &self.adder
    }

    pub fn check(&self) -> Result<(), DesignDefect> {
        let n = self.n;
        if self.pairs.len() != (n - 1) / 2 || self.adder.len() != self.pairs.len() {
            return Err(DesignDefect::Shape("wrong number of pairs".into()));
        }
        let mut elem_used = vec![false; n];
        let mut diff_used = vec![false; n / 2 + 1];
        for &(x, y) in &self.pairs {
            if x == 0 || y == 0 || x >= n || y >= n {
                return Err(DesignDefect::Range(format!("element in ({x},{y})")));
            }
            for e in [x, y] {
                if elem_used[e] {
                    return Err(DesignDefect::RepeatedSymbol(format!("element {e}")));
                }
                elem_used[e] = true;
            }
            let d = (x + n - y) % n;
            let d = d.min(n - d);
            if diff_used[d] {
                return Err(DesignDefect::RepeatedPair(format!("difference {d}")));
            }
            diff_used[d] = true;
        }
        let mut shifted = vec![false; n];
        for (&(x, y), &a) in self.pairs.iter().zip(&self.adder) {
            if a == 0 || a >= n {
                return Err(DesignDefect::Range(format!("adder {a}")));
            }
            for e in [(x + a) % n, (y + a) % n] {
                if e == 0 || shifted[e] {
                    return Err(DesignDefect::Coverage(format!(
                        "shifted element {e} collides"
                    )));
                }
                shifted[e] = true;
            }
        }
        let mut adders = self.adder.clone();
        adders.sort_unstable();
        adders.dedup();
        if adders.len() != self.adder.len() {
            return Err(DesignDefect::RepeatedSymbol("adder entries repeat".into()));
        }
        Ok(())
    }

    /// Expands into the Room square of side `n`: symbols are `1..=n` for the
    /// residues and `n + 1` for the fixed point paired with `i` on the
    /// diagonal of row `i`.
    pub fn room_square(&self) -> HowellArray {
        let n = self.n;
        let mut grid = vec![vec![None; n]; n];
        for i in 0..n {
            grid[i][i] = Some((i + 1, n + 1));
            for (&(x, y), &a) in self.pairs.iter().zip(&self.adder) {
                let col = (i + n - a) % n;
                grid[i][col] = Some(((x + i) % n + 1, (y + i) % n + 1));
            }
        }
        HowellArray::new(n + 1, grid)
    }
}

/// Searches `Z_n` (odd `n`) for a starter and adder by backtracking: pairs
/// are chosen to partition the nonzero residues with all differences
/// distinct, then adder entries are assigned so the translates stay distinct.
/// Exhausting the space proves nonexistence, which happens for `n = 3, 5`.
pub fn strong_starter_adder(n: usize) -> ProviderOutcome<StarterAdder> {
    assert!(n % 2 == 1, "needs odd n");
    if n == 1 {
        return ProviderOutcome::built(
            StarterAdder {
                n,
                pairs: Vec::new(),
                adder: Vec::new(),
            },
            "trivial",
        );
    }
    let deadline = Instant::now() + PROVIDER_SEARCH_BUDGET;

    fn find_adder(
        n: usize,
        pairs: &[(usize, usize)],
        idx: usize,
        used: &mut Vec<bool>,
        hit: &mut Vec<bool>,
        adder: &mut Vec<usize>,
    ) -> bool {
        if idx == pairs.len() {
            return true;
        }
        let (x, y) = pairs[idx];
        for a in 1..n {
            if used[a] {
                continue;
            }
            let (u, w) = ((x + a) % n, (y + a) % n);
            if u == 0 || w == 0 || hit[u] || hit[w] {
                continue;
            }
            used[a] = true;
            hit[u] = true;
            hit[w] = true;
            adder.push(a);
            if find_adder(n, pairs, idx + 1, used, hit, adder) {
                return true;
            }
            adder.pop();
            used[a] = false;
            hit[u] = false;
            hit[w] = false;
        }
        false
    }

    fn find_starter(
        n: usize,
        elem_used: &mut Vec<bool>,
        diff_used: &mut Vec<bool>,
        pairs: &mut Vec<(usize, usize)>,
        deadline: Instant,
        timed_out: &mut bool,
    ) -> Option<StarterAdder> {
        if pairs.len() == (n - 1) / 2 {
            let mut used = vec![false; n];
            let mut hit = vec![false; n];
            let mut adder = Vec::new();
            if find_adder(n, pairs, 0, &mut used, &mut hit, &mut adder) {
                return Some(StarterAdder {
                    n,
                    pairs: pairs.clone(),
                    adder,
                });
            }
            return None;
        }
        if Instant::now() > deadline {
            *timed_out = true;
            return None;
        }
        let x = (1..n).find(|&e| !elem_used[e]).unwrap();
        elem_used[x] = true;
        for y in 1..n {
            if elem_used[y] {
                continue;
            }
            let d = (x + n - y) % n;
            let d = d.min(n - d);
            if diff_used[d] {
                continue;
            }
            elem_used[y] = true;
            diff_used[d] = true;
            pairs.push((x, y));
            let found = find_starter(n, elem_used, diff_used, pairs, deadline, timed_out);
            if found.is_some() {
                return found;
            }
            pairs.pop();
            diff_used[d] = false;
            elem_used[y] = false;
            if *timed_out {
                break;
            }
        }
        elem_used[x] = false;
        None
    }

    let mut timed_out = false;
    let result = find_starter(
        n,
        &mut vec![false; n],
        &mut vec![false; n / 2 + 1],
        &mut Vec::new(),
        deadline,
        &mut timed_out,
    );
    match result {
        Some(sa) => ProviderOutcome::built(sa, "backtracking"),
        None if timed_out => ProviderOutcome::unknown("search-budget"),
        None => ProviderOutcome::nonexistent("exhausted-search"),
    }
}

// ---------------------------------------------------------------------------
// Maximum packings of triples
// ---------------------------------------------------------------------------

/// Triple system on `3(2n + 1)` points from three rotated copies of
/// `Z_{2n+1}`: the three copies of each residue form a block, and two points
/// in one copy close up with their half-sum on the next copy.
fn triple_system_bose(v: usize) -> Vec<[usize; 3]> {
    let q = v / 3;
    let half = (q + 1) / 2;
    let point = |x: usize, a: usize| a * q + x + 1;
    let mut triples = Vec::with_capacity(v * (v - 1) / 6);
    for x in 0..q {
        triples.push([point(x, 0), point(x, 1), point(x, 2)]);
    }
    for a in 0..3 {
        for x in 0..q {
            for y in (x + 1)..q {
                let z = (x + y) * half % q;
                triples.push([point(x, a), point(y, a), point(z, (a + 1) % 3)]);
            }
        }
    }
    triples
}

/// Triple system on `6n + 1` points from a half-idempotent symmetric
/// quasigroup on `Z_{2n}` plus one extra point: the quasigroup is
/// `x * y = h(x + y)` where `h` halves even sums and offsets odd ones.
fn triple_system_skolem(v: usize) -> Vec<[usize; 3]> {
    let m = (v - 1) / 3;
    let n = m / 2;
    let h = |s: usize| -> usize {
        let s = s % m;
        if s % 2 == 0 {
            s / 2
        } else {
            (s - 1) / 2 + n
        }
    };
    let point = |x: usize, a: usize| a * m + x + 1;
    let extra = v;
    let mut triples = Vec::with_capacity(v * (v - 1) / 6);
    for x in 0..n {
        triples.push([point(x, 0), point(x, 1), point(x, 2)]);
    }
    for a in 0..3 {
        for x in 0..n {
            triples.push([extra, point(n + x, a), point(x, (a + 1) % 3)]);
        }
        for x in 0..m {
            for y in (x + 1)..m {
                triples.push([point(x, a), point(y, a), point(h(x + y), (a + 1) % 3)]);
            }
        }
    }
    triples
}

fn packing_from_triples(v: usize, triples: Vec<[usize; 3]>) -> GeneralizedPacking {
    let inst = PackingInstance::new(vec![v], vec![3], 2, 1).expect("valid triple instance");
    let blocks = triples
        .into_iter()
        .map(|mut t| {
            t.sort_unstable();
            Block::new(vec![t.to_vec()])
        })
        .collect();
    GeneralizedPacking::new(inst, blocks)
}

/// A maximum packing of triples on `v >= 3` points.
///
/// Residues `1, 3 mod 6` are Steiner triple systems built directly; residues
/// `0, 2 mod 6` delete the last point from the system one larger.  The two
/// remaining residues have no closed construction here: up to 14 points the
/// exact search settles them, and beyond that the outcome reports a known
/// maximum with no constructor.
pub fn max_triple_packing(v: usize) -> ProviderOutcome<GeneralizedPacking> {
    assert!(v >= 3, "needs at least three points");
    match v % 6 {
        3 | 9 => ProviderOutcome::built(packing_from_triples(v, triple_system_bose(v)), "bose"),
        1 | 7 => {
            ProviderOutcome::built(packing_from_triples(v, triple_system_skolem(v)), "skolem")
        }
        0 | 2 => {
            let sts = if (v + 1) % 6 == 3 {
                triple_system_bose(v + 1)
            } else {
                triple_system_skolem(v + 1)
            };
            let kept = sts.into_iter().filter(|t| !t.contains(&(v + 1))).collect();
            ProviderOutcome::built(packing_from_triples(v, kept), "point-deletion")
        }
        _ if v <= 14 => {
            let inst = PackingInstance::new(vec![v], vec![3], 2, 1).unwrap();
            let cfg = SearchConfig {
                time_budget: PROVIDER_SEARCH_BUDGET,
                ..SearchConfig::default()
            };
            let run = max_packing_search(&inst, &cfg);
            assert_eq!(run.status, SearchStatus::ProvenOptimal);
            ProviderOutcome::built(run.best, "search")
        }
        _ => ProviderOutcome::no_provider(),
    }
}

// ---------------------------------------------------------------------------
// Coloured triple packings
// ---------------------------------------------------------------------------

/// A packing of triples whose blocks are partitioned into colour classes of
/// pairwise disjoint triples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColouredTriplePacking {
    v: usize,
    classes: Vec<Vec<[usize; 3]>>,
}

impl ColouredTriplePacking {
    pub fn new(v: usize, classes: Vec<Vec<[usize; 3]>>) -> Self {
        ColouredTriplePacking { v, classes }
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn classes(&self) -> &[Vec<[usize; 3]>] {
        &self.classes
    }

    pub fn size(&self) -> usize {
        self.classes.iter().map(|c| c.len()).sum()
    }

    /// Class sizes in exponential notation, largest first, e.g. `3^5 1^2`.
    pub fn colour_type(&self) -> String {
        let mut sizes: Vec<usize> = self.classes.iter().map(|c| c.len()).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < sizes.len() {
            let j = sizes[i..].iter().take_while(|&&s| s == sizes[i]).count();
            parts.push(format!("{}^{}", sizes[i], j));
            i += j;
        }
        parts.join(" ")
    }

    /// The underlying uncoloured packing on a single part.
    pub fn to_packing(&self) -> GeneralizedPacking {
        let triples: Vec<[usize; 3]> = self.classes.iter().flatten().copied().collect();
        packing_from_triples(self.v, triples)
    }

    pub fn check(&self) -> Result<(), DesignDefect> {
        for (ci, class) in self.classes.iter().enumerate() {
            let mut touched = vec![false; self.v + 1];
            for t in class {
                for &p in t {
                    if p < 1 || p > self.v {
                        return Err(DesignDefect::Range(format!("point {p}")));
                    }
                    if touched[p] {
                        return Err(DesignDefect::RepeatedSymbol(format!(
                            "point {p} twice in class {ci}"
                        )));
                    }
                    touched[p] = true;
                }
            }
        }
        if !self.to_packing().is_valid() {
            return Err(DesignDefect::RepeatedPair(
                "the union is not a packing".into(),
            ));
        }
        Ok(())
    }
}

const COLOURING_11: &[&[[usize; 3]]] = &[
    &[[1, 2, 3], [4, 5, 6], [7, 8, 9]],
    &[[1, 4, 7], [2, 5, 8], [3, 6, 10]],
    &[[1, 5, 9], [2, 6, 7], [3, 8, 11]],
    &[[1, 6, 8], [3, 4, 9], [5, 10, 11]],
    &[[3, 5, 7], [4, 8, 10], [6, 9, 11]],
    &[[2, 4, 11]],
    &[[2, 9, 10]],
];

const COLOURING_12_SEVEN: &[&[[usize; 3]]] = &[
    &[[1, 2, 3], [5, 9, 12]],
    &[[1, 4, 5], [2, 11, 12], [3, 9, 10]],
    &[[1, 6, 7], [4, 10, 12], [5, 8, 11]],
    &[[1, 8, 9], [3, 7, 11], [5, 6, 10]],
    &[[1, 10, 11], [2, 4, 6], [7, 8, 12]],
    &[[2, 5, 7], [3, 4, 8], [6, 9, 11]],
    &[[2, 8, 10], [3, 6, 12], [4, 7, 9]],
];

const COLOURING_12_FIVE: &[&[[usize; 3]]] = &[
    &[[1, 2, 3], [4, 5, 6], [7, 8, 9]],
    &[[1, 4, 7], [2, 6, 10], [3, 8, 11], [5, 9, 12]],
    &[[1, 5, 8], [2, 9, 11], [3, 6, 7], [4, 10, 12]],
    &[[1, 6, 9], [2, 4, 8], [3, 5, 10], [7, 11, 12]],
    &[[1, 10, 11], [2, 5, 7], [3, 4, 9], [6, 8, 12]],
];

const COLOURING_13_EIGHT: &[&[[usize; 3]]] = &[
    &[[1, 2, 3], [4, 11, 12], [5, 9, 13]],
    &[[1, 4, 5], [2, 11, 13], [3, 9, 10], [6, 8, 12]],
    &[[1, 6, 7], [2, 9, 12], [4, 10, 13], [5, 8, 11]],
    &[[1, 8, 9], [3, 7, 11], [5, 6, 10]],
    &[[1, 10, 11], [2, 4, 6], [3, 5, 12], [7, 8, 13]],
    &[[1, 12, 13], [2, 5, 7], [3, 4, 8], [6, 9, 11]],
    &[[2, 8, 10], [3, 6, 13], [4, 7, 9]],
    &[[7, 10, 12]],
];

const COLOURING_13_SIX: &[&[[usize; 3]]] = &[
    &[[1, 2, 3], [4, 5, 6], [7, 8, 9], [10, 11, 12]],
    &[[1, 4, 7], [2, 5, 8], [3, 6, 10], [9, 11, 13]],
    &[[1, 5, 9], [2, 10, 13], [3, 7, 11], [6, 8, 12]],
    &[[1, 6, 11], [2, 7, 12], [3, 5, 13], [4, 9, 10]],
    &[[1, 8, 10], [2, 4, 11], [3, 9, 12], [6, 7, 13]],
    &[[1, 12, 13], [2, 6, 9], [3, 4, 8], [5, 7, 10]],
];

const SCHOOLGIRL_15: &[&[[usize; 3]]] = &[
    &[[1, 2, 3], [4, 8, 12], [5, 10, 15], [6, 11, 13], [7, 9, 14]],
    &[[1, 4, 5], [2, 8, 10], [3, 13, 14], [6, 9, 15], [7, 11, 12]],
    &[[1, 6, 7], [2, 9, 11], [3, 12, 15], [4, 10, 14], [5, 8, 13]],
    &[[1, 8, 9], [2, 12, 14], [3, 5, 6], [4, 11, 15], [7, 10, 13]],
    &[[1, 10, 11], [2, 13, 15], [3, 4, 7], [5, 9, 12], [6, 8, 14]],
    &[[1, 12, 13], [2, 4, 6], [3, 9, 10], [5, 11, 14], [7, 8, 15]],
    &[[1, 14, 15], [2, 5, 7], [3, 8, 11], [4, 9, 13], [6, 10, 12]],
];

/// Maximum packing of triples on six points whose triples pairwise meet, so
/// every colour class is a singleton.
const SMALL_SIX: &[&[[usize; 3]]] = &[
    &[[1, 2, 3]],
    &[[1, 4, 5]],
    &[[2, 4, 6]],
    &[[3, 5, 6]],
];

/// The seven lines on seven points; any two meet, so the chromatic index is
/// seven.
const FANO_SEVEN: &[&[[usize; 3]]] = &[
    &[[1, 2, 3]],
    &[[1, 4, 5]],
    &[[1, 6, 7]],
    &[[2, 4, 6]],
    &[[2, 5, 7]],
    &[[3, 4, 7]],
    &[[3, 5, 6]],
];

fn colouring_from(v: usize, classes: &[&[[usize; 3]]]) -> ColouredTriplePacking {
    ColouredTriplePacking::new(v, classes.iter().map(|c| c.to_vec()).collect())
}

pub(crate) fn stored_colouring(v: usize, classes: usize) -> ColouredTriplePacking {
    match (v, classes) {
        (11, 7) => colouring_from(11, COLOURING_11),
        (12, 7) => colouring_from(12, COLOURING_12_SEVEN),
        (12, 5) => colouring_from(12, COLOURING_12_FIVE),
        (13, 8) => colouring_from(13, COLOURING_13_EIGHT),
        (13, 6) => colouring_from(13, COLOURING_13_SIX),
        (15, 7) => colouring_from(15, SCHOOLGIRL_15),
        _ => panic!("no stored colouring for {v} points in {classes} classes"),
    }
}

/// Resolvable triple system on nine points: the four pencils of parallel
/// lines of the affine plane of order three.
fn kirkman_nine() -> ColouredTriplePacking {
    let point = |x: usize, y: usize| 3 * x + y + 1;
    let mut classes = Vec::with_capacity(4);
    classes.push((0..3).map(|x| [point(x, 0), point(x, 1), point(x, 2)]).collect());
    for slope in 0..3 {
        classes.push(
            (0..3)
                .map(|b| {
                    let mut t = [0; 3];
                    for (x, slot) in t.iter_mut().enumerate() {
                        *slot = point(x, (slope * x + b) % 3);
                    }
                    t.sort_unstable();
                    t
                })
                .collect(),
        );
    }
    ColouredTriplePacking::new(9, classes)
}

fn kirkman_system(v: usize) -> ProviderOutcome<ColouredTriplePacking> {
    match v {
        3 => ProviderOutcome::built(
            ColouredTriplePacking::new(3, vec![vec![[1, 2, 3]]]),
            "trivial",
        ),
        9 => ProviderOutcome::built(kirkman_nine(), "affine-plane"),
        15 => ProviderOutcome::built(stored_colouring(15, 7), "fixture"),
        _ => ProviderOutcome::no_provider(),
    }
}

/// A block colouring of a packing of triples on `v` points with every class
/// as large as possible, the shape behind the strong Kirkman signal sets.
///
/// Residue `3 mod 6` asks for a resolvable triple system, available here at
/// 3, 9, and 15 points; residue `2 mod 6` deletes a point from one.  The five
/// orders with no such set (6, 7, 11, 12, 13) return the best colouring that
/// does exist, from small tables or stored data.  Everything else is known to
/// exist but has no constructor in this crate.
pub fn skss(v: usize) -> ProviderOutcome<ColouredTriplePacking> {
    assert!(v >= 3, "needs at least three points");
    match v {
        3 | 9 | 15 => kirkman_system(v),
        4 => ProviderOutcome::built(
            ColouredTriplePacking::new(4, vec![vec![[1, 2, 3]]]),
            "small-table",
        ),
        5 => ProviderOutcome::built(
            ColouredTriplePacking::new(5, vec![vec![[1, 2, 3]], vec![[1, 4, 5]]]),
            "small-table",
        ),
        6 => ProviderOutcome::built(colouring_from(6, SMALL_SIX), "small-table"),
        7 => ProviderOutcome::built(colouring_from(7, FANO_SEVEN), "small-table"),
        11 => ProviderOutcome::built(stored_colouring(11, 7), "fixture"),
        12 => ProviderOutcome::built(stored_colouring(12, 5), "fixture"),
        13 => ProviderOutcome::built(stored_colouring(13, 6), "fixture"),
        _ if v % 6 == 2 => {
            let base = kirkman_system(v + 1);
            match base.payload {
                Some(kts) => {
                    let classes = kts
                        .classes()
                        .iter()
                        .map(|c| {
                            c.iter()
                                .filter(|t| !t.contains(&(v + 1)))
                                .copied()
                                .collect()
                        })
                        .collect();
                    ProviderOutcome::built(
                        ColouredTriplePacking::new(v, classes),
                        "point-deletion",
                    )
                }
                None => ProviderOutcome::no_provider(),
            }
        }
        _ => ProviderOutcome::no_provider(),
    }
}
