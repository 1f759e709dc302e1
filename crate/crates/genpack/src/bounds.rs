//! Upper bounds and known packing numbers.
//!
//! Three layers live here.  The bottom layer is the classical nested-floor
//! bound for ordinary packings, [`johnson_schonheim`].  On top of that sit
//! the closed forms for ordinary packings with blocks of three or four
//! points, [`ordinary_triple_number`] and [`ordinary_quadruple_number`],
//! which are exact.  The top layer works on arbitrary instances:
//! [`generalized_upper_bound`] combines every counting argument available
//! into one minimum, and [`known_packing_number`] returns the exact packing
//! number whenever the case analysis for `t = 2`, `λ = 1` and block size 3
//! or 4 pins it down.
//!
//! Every report carries its contributing terms, so a caller can see which
//! argument was decisive and how close the runners-up were.

use itertools::Itertools;

use crate::model::{InstanceError, PackingInstance};

/// How much trust a [`BoundReport`] deserves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    /// The true packing number is at most this value.
    UpperBound,
    /// The true packing number equals this value.
    Exact,
}

/// Shape of the pairs left uncovered by a maximum packing of triples.
///
/// Which class occurs is a function of `v mod 6` alone; the structure is a
/// classical companion to the values of [`ordinary_triple_number`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeaveClass {
    /// Every pair is covered (the packing is a Steiner triple system).
    Empty,
    /// A perfect matching on the point set.
    OneFactor,
    /// A star with three leaves, `K_{1,3}`, together with a disjoint matching.
    StarPlusMatching,
    /// A cycle through four points.
    FourCycle,
}

/// The leave of a maximum packing of triples: its class, plus the matching
/// size when the class includes a matching.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LeaveDescriptor {
    pub class: LeaveClass,
    /// For [`LeaveClass::StarPlusMatching`], the number of matching edges
    /// beside the star, namely `(v - 4) / 2`.  `None` for other classes.
    pub matching_size: Option<usize>,
}

/// A bound or exact value together with the arguments that produced it.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub value: usize,
    pub kind: BoundKind,
    /// Short machine-readable tag naming the decisive argument.
    pub provenance: &'static str,
    /// Every candidate term that was considered, as (description, value).
    /// Descriptions starting with "guaranteed" are lower-end annotations,
    /// not upper-bound candidates.
    pub contributing_terms: Vec<(String, usize)>,
}

/// The nested-floor upper bound `U_λ(v, k, t)` on the size of an ordinary
/// packing: `⌊v/k ⌊(v-1)/(k-1) ⌊ … ⌊λ(v-t+1)/(k-t+1)⌋ … ⌋⌋⌋`.
///
/// The value is computed exactly in integer arithmetic.  Parameters must
/// satisfy `v ≥ k ≥ t ≥ 1` and `λ ≥ 1`.
///
/// ```
/// use genpack::bounds::johnson_schonheim;
/// assert_eq!(johnson_schonheim(7, 3, 2, 1).unwrap(), 7);
/// assert_eq!(johnson_schonheim(19, 4, 2, 1).unwrap(), 28);
/// ```
pub fn johnson_schonheim(
    v: usize,
    k: usize,
    t: usize,
    lambda: usize,
) -> Result<usize, InstanceError> {
    if t < 1 {
        return Err(InstanceError("strength t must be at least 1".into()));
    }
    if k < t {
        return Err(InstanceError(format!("block size {k} is below strength {t}")));
    }
    if v < k {
        return Err(InstanceError(format!("point count {v} is below block size {k}")));
    }
    if lambda < 1 {
        return Err(InstanceError("lambda must be at least 1".into()));
    }

    let mut acc = lambda as u128 * (v - t + 1) as u128 / (k - t + 1) as u128;
    for j in (1..t).rev() {
        acc = (v - j + 1) as u128 * acc / (k - j + 1) as u128;
    }
    usize::try_from(acc)
        .map_err(|_| InstanceError("nested-floor value exceeds the machine word".into()))
}

/// The exact maximum size of a packing of triples on `v ≥ 3` points, with
/// the shape of its leave.
///
/// The value depends on `v mod 6`: it meets the nested-floor bound for
/// `v ≡ 0, 1, 3 (mod 6)` and falls one short otherwise.
///
/// ```
/// use genpack::bounds::{ordinary_triple_number, LeaveClass};
/// let (size, leave) = ordinary_triple_number(9);
/// assert_eq!(size, 12);
/// assert_eq!(leave.class, LeaveClass::Empty);
/// ```
pub fn ordinary_triple_number(v: usize) -> (usize, LeaveDescriptor) {
    assert!(v >= 3, "a packing of triples needs at least 3 points");
    match v % 6 {
        1 | 3 => (
            v * (v - 1) / 6,
            LeaveDescriptor { class: LeaveClass::Empty, matching_size: None },
        ),
        0 | 2 => (
            v * (v - 2) / 6,
            LeaveDescriptor { class: LeaveClass::OneFactor, matching_size: None },
        ),
        4 => (
            (v * v - 2 * v - 2) / 6,
            LeaveDescriptor {
                class: LeaveClass::StarPlusMatching,
                matching_size: Some((v - 4) / 2),
            },
        ),
        5 => (
            (v * v - v - 8) / 6,
            LeaveDescriptor { class: LeaveClass::FourCycle, matching_size: None },
        ),
        _ => unreachable!(),
    }
}

/// The deficit of the maximum packing of quadruples below the nested-floor
/// bound `U(v, 4, 2)`.
///
/// The two residue families are genuine: for `v ≡ 7, 10 (mod 12)` the bound
/// overcounts by one (except at the sporadic points 10 and 19, which lose
/// more).  The values 9 and 17 are isolated exceptions, not residue classes.
/// At `v = 9` this is forced by counting: four blocks would give 16 point
/// slots among 9 points with each point in at most 2 blocks, so at least 7
/// points would lie in two blocks, yet the 6 unordered pairs of blocks can
/// share at most 6 points.
fn quadruple_deficit(v: usize) -> usize {
    match v {
        19 => 3,
        8 | 10 | 11 => 2,
        9 | 17 => 1,
        _ if v % 12 == 7 || v % 12 == 10 => 1,
        _ => 0,
    }
}

/// The exact maximum size of a packing of quadruples on `v ≥ 4` points:
/// the nested-floor bound minus a small, completely classified deficit.
///
/// ```
/// use genpack::bounds::ordinary_quadruple_number;
/// assert_eq!(ordinary_quadruple_number(13), 13);
/// assert_eq!(ordinary_quadruple_number(19), 25);
/// ```
pub fn ordinary_quadruple_number(v: usize) -> usize {
    assert!(v >= 4, "a packing of quadruples needs at least 4 points");
    let u = johnson_schonheim(v, 4, 2, 1).expect("parameters are in range");
    u - quadruple_deficit(v)
}

/// Binomial coefficient in wide arithmetic, for the counting terms.
fn binom(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// The best ordinary bound for one part standing alone: exact for triples
/// and quadruples at `t = 2`, `λ = 1`, the nested floor otherwise.
fn part_alone_bound(v: usize, k: usize, t: usize, lambda: usize) -> (usize, &'static str) {
    if t == 2 && lambda == 1 {
        match k {
            3 => return (ordinary_triple_number(v).0, "exact triple number"),
            4 => return (ordinary_quadruple_number(v), "exact quadruple number"),
            _ => {}
        }
    }
    let u = johnson_schonheim(v, k, t, lambda).expect("instance guarantees v >= k >= t");
    (u, "nested floor")
}

/// Combines every available counting argument into a single upper bound on
/// the packing number of `inst`.
///
/// Three families of terms enter the minimum:
///
/// * for each part with `k_i ≥ t`, the blocks restricted to that part form
///   an ordinary packing, so its packing number (exact for block size 3 and
///   4 when `t = 2` and `λ = 1`, the nested floor otherwise) applies;
/// * for `λ = 1` and `t ≤ m`, each ordered selection of `t` distinct parts
///   gives the nested floor `⌊v_{i_1}/k_{i_1} ⌊ … ⌊v_{i_t}/k_{i_t}⌋…⌋⌋`,
///   because the chosen coordinates of a block are distinct and no
///   `t`-tuple across those parts repeats;
/// * each admissible profile `tt` contributes the plain quotient
///   `⌊λ·∏C(v_i, t_i) / ∏C(k_i, t_i)⌋`, since every block uses
///   `∏C(k_i, t_i)` of the available tuples and each tuple admits `λ` uses.
///
/// The report lists every term; `value` is their minimum, which is at
/// least 1 for any valid instance.
pub fn generalized_upper_bound(inst: &PackingInstance) -> BoundReport {
    let (v, k) = (inst.v(), inst.k());
    let (t, lambda) = (inst.t(), inst.lambda());
    let m = inst.num_parts();
    let mut terms: Vec<(String, usize)> = Vec::new();

    for i in 0..m {
        if k[i] >= t {
            let (value, how) = part_alone_bound(v[i], k[i], t, lambda);
            terms.push((format!("part {} alone ({how})", i + 1), value));
        }
    }

    if lambda == 1 && t <= m {
        // All ordered arrangements when that stays small, otherwise one
        // canonical order per subset (still a valid bound, possibly looser).
        let arrangements: Vec<Vec<usize>> = if falling_factorial(m, t) <= 5_000 {
            (0..m).permutations(t).collect()
        } else {
            (0..m).combinations(t).collect()
        };
        for sel in arrangements {
            let mut acc: u128 = 1;
            for &i in sel.iter().rev() {
                acc = acc * v[i] as u128 / k[i] as u128;
            }
            let order = sel.iter().map(|i| (i + 1).to_string()).join(", ");
            terms.push((
                format!("nested floor over parts ({order})"),
                usize::try_from(acc).unwrap_or(usize::MAX),
            ));
        }
    }

    for tt in inst.admissible_vectors() {
        let mut avail: u128 = lambda as u128;
        let mut per_block: u128 = 1;
        for i in 0..m {
            avail = avail.saturating_mul(binom(v[i], tt[i]));
            per_block *= binom(k[i], tt[i]);
        }
        let profile = tt.iter().map(|x| x.to_string()).join(",");
        terms.push((
            format!("profile ({profile}) tuple count"),
            usize::try_from(avail / per_block).unwrap_or(usize::MAX),
        ));
    }

    let value = terms
        .iter()
        .map(|(_, n)| *n)
        .min()
        .expect("every valid instance has at least one admissible profile");

    // For two parts of two with both sizes odd and the larger part below
    // twice the smaller, the exact number is undecided in general.  Record
    // the size that merging constructions always achieve, so the report
    // shows the whole bracket.
    if t == 2 && lambda == 1 && k == [2, 2] {
        let (a, b) = (v[0].min(v[1]), v[0].max(v[1]));
        if a % 2 == 1 && b % 2 == 1 && b < 2 * a {
            terms.push((
                "guaranteed by merged constructions (lower end of the undecided range)"
                    .to_string(),
                (a - 1) * (b - 1) / 4,
            ));
        }
    }

    BoundReport { value, kind: BoundKind::UpperBound, provenance: "floor-min", contributing_terms: terms }
}

fn falling_factorial(n: usize, r: usize) -> usize {
    let mut acc: usize = 1;
    for i in 0..r {
        acc = acc.saturating_mul(n - i);
    }
    acc
}

/// Parts reordered for table lookup: block sizes descending, and sizes
/// ascending within runs of equal block size.  Matches the orderings under
/// which the exact values below are stated.
fn canonical_parts(inst: &PackingInstance) -> (Vec<usize>, Vec<usize>) {
    let mut idx: Vec<usize> = (0..inst.num_parts()).collect();
    idx.sort_by_key(|&i| (std::cmp::Reverse(inst.k()[i]), inst.v()[i]));
    let k = idx.iter().map(|&i| inst.k()[i]).collect();
    let v = idx.iter().map(|&i| inst.v()[i]).collect();
    (k, v)
}

fn exact(value: usize, provenance: &'static str, terms: Vec<(String, usize)>) -> BoundReport {
    BoundReport { value, kind: BoundKind::Exact, provenance, contributing_terms: terms }
}

/// The exact packing number, when the case analysis for `t = 2`, `λ = 1`
/// and total block size 3 or 4 settles it.  Returns `None` when the value
/// is genuinely open (two parts of two, both sizes odd, the larger below
/// twice the smaller, outside the few pinned cases) or out of scope.
///
/// Part order does not matter; parts are reordered internally before the
/// lookup.
///
/// ```
/// use genpack::{bounds::known_packing_number, PackingInstance};
/// let inst = PackingInstance::pairwise(vec![12, 5], vec![3, 1]).unwrap();
/// assert_eq!(known_packing_number(&inst).unwrap().value, 19);
/// ```
pub fn known_packing_number(inst: &PackingInstance) -> Option<BoundReport> {
    if inst.t() != 2 || inst.lambda() != 1 {
        return None;
    }
    let total: usize = inst.k().iter().sum();
    if total != 3 && total != 4 {
        return None;
    }
    let (k, v) = canonical_parts(inst);

    match k.as_slice() {
        [3] => {
            let (n, _) = ordinary_triple_number(v[0]);
            let uncovered = v[0] * (v[0] - 1) / 2 - 3 * n;
            Some(exact(
                n,
                "triple-formula",
                vec![
                    ("maximum packing of triples".into(), n),
                    ("uncovered pairs".into(), uncovered),
                ],
            ))
        }
        [4] => {
            let u = johnson_schonheim(v[0], 4, 2, 1).expect("valid parameters");
            let eps = quadruple_deficit(v[0]);
            Some(exact(
                u - eps,
                "brouwer-formula",
                vec![("nested floor".into(), u), ("deficit".into(), eps)],
            ))
        }
        [2, 1] => {
            let all_pairs = v[0] * (v[0] - 1) / 2;
            let classes = v[1] * (v[0] / 2);
            Some(exact(
                all_pairs.min(classes),
                "factorization",
                vec![
                    ("all pairs of the first part".into(), all_pairs),
                    ("matchings times matching size".into(), classes),
                ],
            ))
        }
        [1, 1, 1] => {
            let n = v[0] * v[1];
            Some(exact(n, "latin-rectangle", vec![("cells of a Latin rectangle".into(), n)]))
        }
        [3, 1] => Some(exact_31(v[0], v[1])),
        [2, 1, 1] => Some(exact_211(v[0], v[1], v[2])),
        [2, 2] => exact_22(v[0], v[1]),
        [1, 1, 1, 1] => Some(exact_1111(&v)),
        _ => None,
    }
}

/// Blocks of three plus a colour coordinate.  The signal-set bound
/// `min{D(v1,3,2), v2·⌊v1/3⌋}` is met except for five small first parts,
/// whose colour-type case analyses give the values spelled out here.
fn exact_31(v1: usize, v2: usize) -> BoundReport {
    let small = match v1 {
        6 => Some(match v2 {
            1 | 2 => 2,
            3 => 3,
            _ => 4,
        }),
        7 => Some(match v2 {
            1 => 2,
            2 => 3,
            3 => 4,
            4 | 5 => 5,
            6 => 6,
            _ => 7,
        }),
        11 => Some(match v2 {
            0..=5 => 3 * v2,
            6 => 16,
            _ => 17,
        }),
        12 => Some(match v2 {
            0..=4 => 4 * v2,
            5 | 6 => 19,
            _ => 20,
        }),
        13 => Some(match v2 {
            0..=6 => 4 * v2,
            7 => 25,
            _ => 26,
        }),
        _ => None,
    };
    if let Some(n) = small {
        return exact(n, "small-colouring", vec![("colour-type case analysis".into(), n)]);
    }
    let triples = ordinary_triple_number(v1).0;
    let classes = v2 * (v1 / 3);
    exact(
        triples.min(classes),
        "kirkman-signal-set",
        vec![
            ("maximum packing of triples".into(), triples),
            ("colour classes times class size".into(), classes),
        ],
    )
}

/// One part of two and two single-point parts, sizes `v2 ≤ v3`.  Away from
/// ten small exceptions the bound `min{C(v1,2), v2⌊v1/2⌋, v2·v3}` is met by
/// array constructions built from Room squares, Howell designs, and
/// row-truncated self-orthogonal squares.
fn exact_211(v1: usize, v2: usize, v3: usize) -> BoundReport {
    debug_assert!(v2 <= v3);
    let small = match (v1, v2, v3) {
        (4, 2, 2) => Some(2),
        (4, 2, 3) => Some(3),
        (4, 3, 3) | (4, 3, 4) => Some(4),
        (4, 3, 5) => Some(5),
        (4, 4, 4) => Some(5),
        (5, 2, 2) => Some(3),
        (5, 5, 5) => Some(9),
        (6, 5, 5) => Some(13),
        (8, 5, 5) => Some(19),
        _ => None,
    };
    if let Some(n) = small {
        return exact(
            n,
            "howell-family-exception",
            vec![("small-case array analysis".into(), n)],
        );
    }
    let (value, how) = if v1 <= v2 {
        (v1 * (v1 - 1) / 2, "all pairs of the first part")
    } else if v1 <= 2 * v3 {
        (v2 * (v1 / 2), "filled cells of a Howell-type array")
    } else {
        (v2 * v3, "cells of a row-truncated array")
    };
    exact(value, "howell-family", vec![(how.into(), value)])
}

/// Two parts of two, sizes `v1 ≤ v2`.  Merging the two single-point parts
/// of a maximum instance with one part of two settles everything except
/// five small pairs and the undecided both-odd range, where only the three
/// pinned cases return a value.
fn exact_22(v1: usize, v2: usize) -> Option<BoundReport> {
    debug_assert!(v1 <= v2);
    let small = match (v1, v2) {
        (4, 4) => Some(2),
        (4, 5) => Some(3),
        (4, 6) => Some(4),
        (4, 7) => Some(4),
        (4, 8) => Some(5),
        _ => None,
    };
    if let Some(n) = small {
        return Some(exact(
            n,
            "monogamous-merge-exception",
            vec![("small bipartite case analysis".into(), n)],
        ));
    }
    if v2 >= 2 * v1 {
        let n = v1 * (v1 - 1) / 2;
        return Some(exact(
            n,
            "monogamous-merge",
            vec![("all pairs of the first part".into(), n)],
        ));
    }
    if v1 % 2 == 0 || v2 % 2 == 0 {
        let n = (v1 / 2) * (v2 / 2);
        return Some(exact(
            n,
            "monogamous-merge",
            vec![("half-size pair grid".into(), n)],
        ));
    }
    // Both odd, v1 <= v2 < 2*v1.  The guaranteed size (v1-1)(v2-1)/4 and
    // the bound ⌊v2(v1-1)/4⌋ coincide for v1 = 3, and an explicit packing
    // meets the bound at (5,5); everything else in this range is open.
    let lower = (v1 - 1) * (v2 - 1) / 4;
    let upper = v2 * (v1 - 1) / 4;
    if lower == upper {
        return Some(exact(
            lower,
            "odd-pair-pinned",
            vec![("matching lower and upper ends".into(), lower)],
        ));
    }
    if (v1, v2) == (5, 5) {
        return Some(exact(
            5,
            "odd-pair-pinned",
            vec![("explicit five-block packing".into(), 5)],
        ));
    }
    None
}

/// Four single-point parts, sizes ascending.  A pair of orthogonal
/// rectangles on the two smallest parts gives `v1·v2` everywhere except
/// three sporadic vectors where no such pair exists.
fn exact_1111(v: &[usize]) -> BoundReport {
    let mut v = v.to_vec();
    v.sort_unstable();
    let small = match v.as_slice() {
        [2, 2, 2, 2] => Some(2),
        [2, 2, 2, 3] => Some(3),
        [6, 6, 6, 6] => Some(34),
        _ => None,
    };
    if let Some(n) = small {
        return exact(
            n,
            "orthogonal-rectangles-exception",
            vec![("largest orthogonal partial squares".into(), n)],
        );
    }
    let n = v[0] * v[1];
    exact(
        n,
        "orthogonal-rectangles",
        vec![("cells of an orthogonal rectangle pair".into(), n)],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(v: Vec<usize>, k: Vec<usize>) -> PackingInstance {
        PackingInstance::pairwise(v, k).unwrap()
    }

    #[test]
    fn nested_floor_spot_values() {
        assert_eq!(johnson_schonheim(7, 3, 2, 1).unwrap(), 7);
        assert_eq!(johnson_schonheim(6, 3, 2, 1).unwrap(), 4);
        assert_eq!(johnson_schonheim(8, 4, 2, 1).unwrap(), 4);
        assert_eq!(johnson_schonheim(19, 4, 2, 1).unwrap(), 28);
        assert_eq!(johnson_schonheim(17, 4, 2, 1).unwrap(), 21);
        // Strength above 2 and multiplicity above 1 both flow through the
        // same recursion; 14 is met by the Steiner quadruple system on 8
        // points.
        assert_eq!(johnson_schonheim(8, 4, 3, 1).unwrap(), 14);
        assert_eq!(johnson_schonheim(6, 3, 2, 2).unwrap(), 10);
    }

    #[test]
    fn nested_floor_rejects_bad_parameter_order() {
        assert!(johnson_schonheim(3, 4, 2, 1).is_err());
        assert!(johnson_schonheim(7, 2, 3, 1).is_err());
        assert!(johnson_schonheim(7, 3, 0, 1).is_err());
        assert!(johnson_schonheim(7, 3, 2, 0).is_err());
    }

    #[test]
    fn nested_floor_is_monotone_in_v_and_lambda() {
        for k in 2..=5 {
            for t in 1..=k {
                for v in k..k + 40 {
                    let a = johnson_schonheim(v, k, t, 1).unwrap();
                    let b = johnson_schonheim(v + 1, k, t, 1).unwrap();
                    assert!(a <= b, "v step broke at v={v} k={k} t={t}");
                    let c = johnson_schonheim(v, k, t, 2).unwrap();
                    assert!(a <= c, "lambda step broke at v={v} k={k} t={t}");
                }
            }
        }
    }

    #[test]
    fn triple_numbers_small_range() {
        let expected = [1, 1, 2, 4, 7, 8, 12, 13, 17, 20, 26, 28];
        for (v, want) in (3..=14).zip(expected) {
            assert_eq!(ordinary_triple_number(v).0, want, "v={v}");
        }
    }

    #[test]
    fn triple_leave_classes_follow_residue() {
        use LeaveClass::*;
        assert_eq!(ordinary_triple_number(9).1.class, Empty);
        assert_eq!(ordinary_triple_number(13).1.class, Empty);
        assert_eq!(ordinary_triple_number(6).1.class, OneFactor);
        assert_eq!(ordinary_triple_number(8).1.class, OneFactor);
        let l10 = ordinary_triple_number(10).1;
        assert_eq!(l10.class, StarPlusMatching);
        assert_eq!(l10.matching_size, Some(3));
        assert_eq!(ordinary_triple_number(4).1.matching_size, Some(0));
        assert_eq!(ordinary_triple_number(11).1.class, FourCycle);
    }

    #[test]
    fn triple_number_tracks_nested_floor() {
        // The closed forms and the nested floor agree except at
        // v = 5 (mod 6), where the packing falls exactly one short: the
        // floor would demand every point in (v-1)/2 triples with one pair
        // left over, which a four-cycle leave cannot do better than.
        for v in 3..=300 {
            let (n, _) = ordinary_triple_number(v);
            let u = johnson_schonheim(v, 3, 2, 1).unwrap();
            if v % 6 == 5 {
                assert_eq!(n + 1, u, "v={v}");
            } else {
                assert_eq!(n, u, "v={v}");
            }
        }
    }

    #[test]
    fn quadruple_numbers_small_range() {
        let expected = [1, 1, 1, 2, 2, 3, 5, 6, 9, 13, 14];
        for (v, want) in (4..=14).zip(expected) {
            assert_eq!(ordinary_quadruple_number(v), want, "v={v}");
        }
        assert_eq!(ordinary_quadruple_number(17), 20);
        assert_eq!(ordinary_quadruple_number(19), 25);
        assert_eq!(ordinary_quadruple_number(22), 37);
        // 21 and 33 share a residue with 9 but carry no deficit.
        assert_eq!(ordinary_quadruple_number(21), 31);
        assert_eq!(ordinary_quadruple_number(33), 82);
    }

    #[test]
    fn quadruple_number_never_drops_below_one_block() {
        for v in 4..=60 {
            assert!(ordinary_quadruple_number(v) >= 1, "v={v}");
        }
    }

    fn candidate_min(report: &BoundReport) -> usize {
        report
            .contributing_terms
            .iter()
            .filter(|(d, _)| !d.starts_with("guaranteed"))
            .map(|(_, n)| *n)
            .min()
            .unwrap()
    }

    #[test]
    fn upper_bound_examples() {
        assert_eq!(generalized_upper_bound(&inst(vec![11, 6], vec![3, 1])).value, 17);
        assert_eq!(generalized_upper_bound(&inst(vec![4, 4, 4], vec![2, 1, 1])).value, 6);
        assert_eq!(generalized_upper_bound(&inst(vec![5, 5], vec![2, 2])).value, 5);
        assert_eq!(generalized_upper_bound(&inst(vec![5, 4], vec![2, 1])).value, 8);
    }

    #[test]
    fn upper_bound_collapses_when_v_equals_k() {
        for (v, k) in [
            (vec![3], vec![3]),
            (vec![2, 1], vec![2, 1]),
            (vec![2, 2], vec![2, 2]),
            (vec![2, 1, 1], vec![2, 1, 1]),
            (vec![1, 1, 1, 1], vec![1, 1, 1, 1]),
        ] {
            assert_eq!(generalized_upper_bound(&inst(v, k)).value, 1);
        }
    }

    #[test]
    fn upper_bound_is_minimum_of_its_candidates() {
        for v2 in 4..=12 {
            let report = generalized_upper_bound(&inst(vec![7, v2], vec![3, 1]));
            assert_eq!(report.value, candidate_min(&report));
            assert!(report.value >= 1);
        }
        for v1 in 2..=9 {
            for v2 in v1..=12 {
                let report = generalized_upper_bound(&inst(vec![v1, v2], vec![2, 2]));
                assert_eq!(report.value, candidate_min(&report));
            }
        }
    }

    #[test]
    fn upper_bound_reports_bracket_for_undecided_odd_pairs() {
        let report = generalized_upper_bound(&inst(vec![7, 9], vec![2, 2]));
        assert_eq!(report.value, 13);
        let guarantee = report
            .contributing_terms
            .iter()
            .find(|(d, _)| d.starts_with("guaranteed"))
            .expect("bracket annotation present");
        assert_eq!(guarantee.1, 12);
        // Outside the undecided range no annotation is added.
        let closed = generalized_upper_bound(&inst(vec![6, 8], vec![2, 2]));
        assert!(closed.contributing_terms.iter().all(|(d, _)| !d.starts_with("guaranteed")));
    }

    #[test]
    fn upper_bound_pair_floor_respects_order_of_parts() {
        // Both orders of the two-part nested floor must be present, since
        // they can differ: for sizes (5,10) with blocks (2,2) the floors
        // are 12 and 10.
        let report = generalized_upper_bound(&inst(vec![5, 10], vec![2, 2]));
        let values: Vec<usize> = report
            .contributing_terms
            .iter()
            .filter(|(d, _)| d.starts_with("nested floor"))
            .map(|(_, n)| *n)
            .collect();
        assert!(values.contains(&12) && values.contains(&10));
        assert_eq!(report.value, 10);
    }

    #[test]
    fn known_values_match_case_analyses() {
        assert_eq!(known_packing_number(&inst(vec![9], vec![3])).unwrap().value, 12);
        assert_eq!(known_packing_number(&inst(vec![19], vec![4])).unwrap().value, 25);
        assert_eq!(known_packing_number(&inst(vec![5, 4], vec![2, 1])).unwrap().value, 8);
        assert_eq!(known_packing_number(&inst(vec![4, 5, 6], vec![1, 1, 1])).unwrap().value, 20);
        assert_eq!(known_packing_number(&inst(vec![12, 5], vec![3, 1])).unwrap().value, 19);
        assert_eq!(known_packing_number(&inst(vec![6, 5, 5], vec![2, 1, 1])).unwrap().value, 13);
        assert_eq!(known_packing_number(&inst(vec![4, 8], vec![2, 2])).unwrap().value, 5);
        assert_eq!(known_packing_number(&inst(vec![5, 5], vec![2, 2])).unwrap().value, 5);
        assert_eq!(known_packing_number(&inst(vec![3, 5], vec![2, 2])).unwrap().value, 2);
        assert_eq!(known_packing_number(&inst(vec![6, 10], vec![2, 2])).unwrap().value, 15);
        assert_eq!(known_packing_number(&inst(vec![5, 10], vec![2, 2])).unwrap().value, 10);
        assert_eq!(
            known_packing_number(&inst(vec![2, 2, 2, 3], vec![1, 1, 1, 1])).unwrap().value,
            3
        );
        assert_eq!(
            known_packing_number(&inst(vec![6, 6, 6, 6], vec![1, 1, 1, 1])).unwrap().value,
            34
        );
        assert_eq!(
            known_packing_number(&inst(vec![6, 6, 6, 7], vec![1, 1, 1, 1])).unwrap().value,
            36
        );
    }

    #[test]
    fn known_value_is_absent_exactly_on_the_open_range() {
        assert!(known_packing_number(&inst(vec![7, 9], vec![2, 2])).is_none());
        assert!(known_packing_number(&inst(vec![5, 7], vec![2, 2])).is_none());
        assert!(known_packing_number(&inst(vec![9, 9], vec![2, 2])).is_none());
        // Out-of-scope parameters are also absent rather than errors.
        let mut wide = PackingInstance::new(vec![9, 9], vec![3, 2], 2, 1).unwrap();
        assert!(known_packing_number(&wide).is_none());
        wide = PackingInstance::new(vec![9], vec![3], 2, 2).unwrap();
        assert!(known_packing_number(&wide).is_none());
        wide = PackingInstance::new(vec![9, 4], vec![3, 1], 3, 1).unwrap();
        assert!(known_packing_number(&wide).is_none());
    }

    #[test]
    fn known_value_ignores_part_order() {
        let a = known_packing_number(&inst(vec![5, 6, 5], vec![1, 2, 1])).unwrap();
        let b = known_packing_number(&inst(vec![6, 5, 5], vec![2, 1, 1])).unwrap();
        assert_eq!(a.value, b.value);
        let c = known_packing_number(&inst(vec![8, 4], vec![2, 2])).unwrap();
        let d = known_packing_number(&inst(vec![4, 8], vec![2, 2])).unwrap();
        assert_eq!(c.value, d.value);
    }

    #[test]
    fn every_exception_sits_strictly_below_the_bound() {
        let rows: Vec<(Vec<usize>, Vec<usize>, usize)> = vec![
            (vec![6, 2], vec![3, 1], 2),
            (vec![6, 3], vec![3, 1], 3),
            (vec![7, 2], vec![3, 1], 3),
            (vec![7, 3], vec![3, 1], 4),
            (vec![7, 4], vec![3, 1], 5),
            (vec![7, 5], vec![3, 1], 5),
            (vec![7, 6], vec![3, 1], 6),
            (vec![11, 6], vec![3, 1], 16),
            (vec![12, 5], vec![3, 1], 19),
            (vec![12, 6], vec![3, 1], 19),
            (vec![13, 7], vec![3, 1], 25),
            (vec![4, 2, 2], vec![2, 1, 1], 2),
            (vec![4, 2, 3], vec![2, 1, 1], 3),
            (vec![4, 3, 3], vec![2, 1, 1], 4),
            (vec![4, 3, 4], vec![2, 1, 1], 4),
            (vec![4, 3, 5], vec![2, 1, 1], 5),
            (vec![4, 4, 4], vec![2, 1, 1], 5),
            (vec![5, 2, 2], vec![2, 1, 1], 3),
            (vec![5, 5, 5], vec![2, 1, 1], 9),
            (vec![6, 5, 5], vec![2, 1, 1], 13),
            (vec![8, 5, 5], vec![2, 1, 1], 19),
            (vec![4, 4], vec![2, 2], 2),
            (vec![4, 5], vec![2, 2], 3),
            (vec![4, 6], vec![2, 2], 4),
            (vec![4, 7], vec![2, 2], 4),
            (vec![4, 8], vec![2, 2], 5),
            (vec![2, 2, 2, 2], vec![1, 1, 1, 1], 2),
            (vec![2, 2, 2, 3], vec![1, 1, 1, 1], 3),
            (vec![6, 6, 6, 6], vec![1, 1, 1, 1], 34),
        ];
        for (v, k, want) in rows {
            let i = inst(v.clone(), k.clone());
            let exact = known_packing_number(&i).expect("exception rows are pinned");
            let bound = generalized_upper_bound(&i);
            assert_eq!(exact.value, want, "v={v:?} k={k:?}");
            assert!(
                exact.value < bound.value,
                "v={v:?} k={k:?}: {} !< {}",
                exact.value,
                bound.value
            );
        }
    }

    #[test]
    fn known_values_meet_the_bound_off_the_exception_sets() {
        let exceptions_31 = [
            (6, 2),
            (6, 3),
            (7, 2),
            (7, 3),
            (7, 4),
            (7, 5),
            (7, 6),
            (11, 6),
            (12, 5),
            (12, 6),
            (13, 7),
        ];
        for v1 in 3..=15 {
            for v2 in 1..=10 {
                let i = inst(vec![v1, v2], vec![3, 1]);
                let exact = known_packing_number(&i).unwrap().value;
                let bound = generalized_upper_bound(&i).value;
                assert!(exact <= bound, "({v1},{v2})");
                if exceptions_31.contains(&(v1, v2)) {
                    assert!(exact < bound, "({v1},{v2}) should fall short");
                } else {
                    assert_eq!(exact, bound, "({v1},{v2}) should meet the bound");
                }
            }
        }
    }

    #[test]
    fn known_never_exceeds_generalized_bound() {
        for v1 in 2..=10 {
            for v2 in 1..=10 {
                for v3 in v2..=10 {
                    let i = inst(vec![v1, v2, v3], vec![2, 1, 1]);
                    let exact = known_packing_number(&i).unwrap().value;
                    assert!(exact <= generalized_upper_bound(&i).value, "({v1},{v2},{v3})");
                }
            }
        }
        for v1 in 2..=12 {
            for v2 in v1..=24 {
                let i = inst(vec![v1, v2], vec![2, 2]);
                if let Some(exact) = known_packing_number(&i) {
                    assert!(exact.value <= generalized_upper_bound(&i).value, "({v1},{v2})");
                }
            }
        }
    }

    #[test]
    fn pair_bound_matches_parity_closed_forms() {
        // The parity/range split of the two-parts-of-two bound is derivable
        // from the generic minimum; check the agreement instead of encoding
        // the split anywhere.
        for v1 in 2..=30usize {
            for v2 in v1..=30usize {
                let bound = generalized_upper_bound(&inst(vec![v1, v2], vec![2, 2])).value;
                let pairs = v1 * (v1 - 1) / 2;
                let expected = match (v1 % 2, v2 % 2) {
                    (0, 0) => {
                        if v2 >= 2 * v1 {
                            pairs
                        } else {
                            v1 * v2 / 4
                        }
                    }
                    (0, 1) => {
                        if v2 > 2 * v1 {
                            pairs
                        } else {
                            v1 * (v2 - 1) / 4
                        }
                    }
                    (1, 0) => {
                        if v2 >= 2 * v1 {
                            pairs
                        } else {
                            v2 * (v1 - 1) / 4
                        }
                    }
                    _ => {
                        if v2 > 2 * v1 {
                            pairs
                        } else {
                            v2 * (v1 - 1) / 4
                        }
                    }
                };
                assert_eq!(bound, expected, "({v1},{v2})");
            }
        }
    }

    #[test]
    fn four_single_parts_full_profile() {
        for v in [
            vec![2, 3, 4, 5],
            vec![3, 3, 3, 3],
            vec![4, 6, 6, 6],
            vec![5, 6, 7, 8],
            vec![2, 2, 3, 3],
            vec![1, 2, 2, 9],
        ] {
            let i = inst(v.clone(), vec![1, 1, 1, 1]);
            let exact = known_packing_number(&i).unwrap().value;
            let mut sorted = v.clone();
            sorted.sort_unstable();
            assert_eq!(exact, sorted[0] * sorted[1], "{v:?}");
            assert_eq!(exact, generalized_upper_bound(&i).value, "{v:?}");
        }
    }
}
