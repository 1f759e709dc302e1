//! Instances, blocks, packings, admissibility, verification, and the
//! canonical text format.
//!
//! Points of part i are the integers `1..=v[i]`. A [`Block`] holds one
//! sorted k_i-subset per part, a [`GeneralizedPacking`] is an instance
//! together with a block multiset, and [`GeneralizedPacking::verify`]
//! checks the defining condition: every admissible t-tuple is contained
//! in at most lambda blocks. Verification counts by enumerating the
//! sub-tuples of each block into a keyed counter, so its cost scales
//! with the number of blocks rather than with the full point set.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use itertools::Itertools;
use thiserror::Error;

/// Rejected parameters: part count mismatch, k exceeding v, t out of
/// range, and similar precondition failures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid instance: {0}")]
pub struct InstanceError(pub String);

/// A text-format failure, addressed by 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// A structurally malformed block: wrong part count, wrong subset size,
/// out-of-range or non-increasing entries. Kept distinct from a packing
/// violation, which concerns well-formed blocks that cover some tuple
/// too often.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("block {index}: {reason}")]
pub struct StructuralError {
    /// Position of the offending block in the packing's block list.
    pub index: usize,
    pub reason: String,
}

/// The parameter tuple (v, k, t, lambda) of a generalized packing.
///
/// `v` lists the part sizes, `k` the block profile; both have length m.
/// Valid instances satisfy `k[i] >= 1`, `k[i] <= v[i]`, and
/// `1 <= t <= sum(k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PackingInstance {
    v: Vec<usize>,
    k: Vec<usize>,
    t: usize,
    lambda: usize,
}

impl PackingInstance {
    /// Builds an instance, rejecting parameter tuples that violate the
    /// invariants above.
    pub fn new(v: Vec<usize>, k: Vec<usize>, t: usize, lambda: usize) -> Result<Self, InstanceError> {
        if v.is_empty() {
            return Err(InstanceError("v must have at least one part".into()));
        }
        if v.len() != k.len() {
            return Err(InstanceError(format!(
                "v has {} parts but k has {}",
                v.len(),
                k.len()
            )));
        }
        for i in 0..v.len() {
            if k[i] == 0 {
                return Err(InstanceError(format!("k[{}] must be positive", i + 1)));
            }
            if k[i] > v[i] {
                return Err(InstanceError(format!(
                    "k[{}] = {} exceeds v[{}] = {}",
                    i + 1,
                    k[i],
                    i + 1,
                    v[i]
                )));
            }
        }
        let total: usize = k.iter().sum();
        if t == 0 || t > total {
            return Err(InstanceError(format!(
                "t = {} must satisfy 1 <= t <= sum(k) = {}",
                t, total
            )));
        }
        if lambda == 0 {
            return Err(InstanceError("lambda must be positive".into()));
        }
        Ok(Self { v, k, t, lambda })
    }

    /// Shorthand for the common t=2, lambda=1 setting.
    pub fn pairwise(v: Vec<usize>, k: Vec<usize>) -> Result<Self, InstanceError> {
        Self::new(v, k, 2, 1)
    }

    /// Part sizes.
    pub fn v(&self) -> &[usize] {
        &self.v
    }

    /// Block profile.
    pub fn k(&self) -> &[usize] {
        &self.k
    }

    /// Strength.
    pub fn t(&self) -> usize {
        self.t
    }

    /// Index (maximum multiplicity of an admissible tuple).
    pub fn lambda(&self) -> usize {
        self.lambda
    }

    /// Number of parts, written m throughout.
    pub fn num_parts(&self) -> usize {
        self.v.len()
    }

    /// Sum of the block profile, the number of points in one block.
    pub fn block_size(&self) -> usize {
        self.k.iter().sum()
    }

    /// The admissible t-vectors of this instance. Infallible because the
    /// instance invariants already guarantee the preconditions.
    pub fn admissible_vectors(&self) -> Vec<Vec<usize>> {
        admissible_t_vectors(&self.k, self.t).expect("instance invariants imply admissibility preconditions")
    }
}

/// Enumerates the admissible t-vectors: all tt with `0 <= tt[i] <= k[i]`
/// and `sum(tt) = t`, in descending lexicographic order.
///
/// # Examples
///
/// ```
/// use genpack::model::admissible_t_vectors;
///
/// let tts = admissible_t_vectors(&[2, 1], 2).unwrap();
/// assert_eq!(tts, vec![vec![2, 0], vec![1, 1]]);
/// ```
pub fn admissible_t_vectors(k: &[usize], t: usize) -> Result<Vec<Vec<usize>>, InstanceError> {
    if k.is_empty() {
        return Err(InstanceError("k must have at least one part".into()));
    }
    if k.iter().any(|&ki| ki == 0) {
        return Err(InstanceError("k entries must be positive".into()));
    }
    let total: usize = k.iter().sum();
    if t == 0 || t > total {
        return Err(InstanceError(format!(
            "t = {} must satisfy 1 <= t <= sum(k) = {}",
            t, total
        )));
    }
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(k.len());
    fill_t_vectors(k, t, &mut prefix, &mut out);
    Ok(out)
}

fn fill_t_vectors(k: &[usize], remaining: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k.is_empty() {
        if remaining == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    let hi = remaining.min(k[0]);
    // Counting down yields descending lexicographic order overall.
    for ti in (0..=hi).rev() {
        // The rest of the parts must be able to absorb the remainder.
        let rest_capacity: usize = k[1..].iter().sum();
        if remaining - ti > rest_capacity {
            continue;
        }
        prefix.push(ti);
        fill_t_vectors(&k[1..], remaining - ti, prefix, out);
        prefix.pop();
    }
}

/// One block: an m-tuple of point subsets, the i-th drawn from part i.
///
/// Well-formed blocks store each subset strictly increasing; whether a
/// block conforms to a particular instance is checked by
/// [`GeneralizedPacking::verify`], which reports any malformation as a
/// [`StructuralError`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    parts: Vec<Vec<usize>>,
}

impl Block {
    /// Wraps the given subsets as a block. No validation happens here, so
    /// that malformed blocks can be represented and then diagnosed.
    pub fn new(parts: Vec<Vec<usize>>) -> Self {
        Self { parts }
    }

    /// All subsets of the block.
    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    /// The subset drawn from part `i` (0-based).
    pub fn part(&self, i: usize) -> &[usize] {
        &self.parts[i]
    }

    /// Sorts the entries of every subset ascending, in place.
    pub fn sort_entries(&mut self) {
        for part in &mut self.parts {
            part.sort_unstable();
        }
    }

    /// Checks this block against an instance profile.
    fn structural_reason(&self, inst: &PackingInstance) -> Option<String> {
        if self.parts.len() != inst.num_parts() {
            return Some(format!(
                "has {} parts, instance has {}",
                self.parts.len(),
                inst.num_parts()
            ));
        }
        for (i, part) in self.parts.iter().enumerate() {
            if part.len() != inst.k[i] {
                return Some(format!(
                    "part {} has {} entries, expected k[{}] = {}",
                    i + 1,
                    part.len(),
                    i + 1,
                    inst.k[i]
                ));
            }
            for &p in part {
                if p == 0 || p > inst.v[i] {
                    return Some(format!(
                        "point {} out of range 1..={} in part {}",
                        p,
                        inst.v[i],
                        i + 1
                    ));
                }
            }
            if !part.windows(2).all(|w| w[0] < w[1]) {
                return Some(format!("part {} is not strictly increasing", i + 1));
            }
        }
        None
    }
}

/// One admissible tuple covered more often than lambda allows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// The admissible t-vector under which the overcount happened.
    pub t_vector: Vec<usize>,
    /// The witness tuple T: one t_vector[i]-subset per part.
    pub witness: Vec<Vec<usize>>,
    /// How many blocks contain the witness.
    pub count: usize,
    /// The lambda that was exceeded.
    pub lambda: usize,
}

/// The outcome of verification: valid exactly when no violations exist.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
    pub blocks_checked: usize,
}

/// An instance together with a block multiset, the central object of the
/// crate. Duplicate blocks are representable (and will be flagged by
/// verification whenever they overshoot lambda).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralizedPacking {
    instance: PackingInstance,
    blocks: Vec<Block>,
}

impl GeneralizedPacking {
    /// Wraps an instance and blocks. Conformance is checked by
    /// [`verify`](Self::verify), not here, so that diagnosable inputs
    /// are never rejected on construction.
    pub fn new(instance: PackingInstance, blocks: Vec<Block>) -> Self {
        Self { instance, blocks }
    }

    pub fn instance(&self) -> &PackingInstance {
        &self.instance
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Number of blocks.
    pub fn size(&self) -> usize {
        self.blocks.len()
    }

    /// Consumes the packing, returning its blocks.
    pub fn into_blocks(self) -> Vec<Block> {
        self.blocks
    }

    /// Checks every block against the profile, then counts how often
    /// each admissible tuple is covered.
    ///
    /// Structural problems (wrong sizes, out-of-range points, unsorted
    /// entries) surface as an `Err`; packing violations make the report
    /// invalid and are listed with witnesses. Violations are ordered by
    /// t-vector and then witness, so reports are deterministic.
    ///
    /// # Examples
    ///
    /// ```
    /// use genpack::model::{Block, GeneralizedPacking, PackingInstance};
    ///
    /// let inst = PackingInstance::pairwise(vec![5, 4], vec![2, 1]).unwrap();
    /// let p = GeneralizedPacking::new(
    ///     inst,
    ///     vec![
    ///         Block::new(vec![vec![1, 2], vec![1]]),
    ///         Block::new(vec![vec![1, 3], vec![2]]),
    ///     ],
    /// );
    /// assert!(p.verify().unwrap().valid);
    /// ```
    pub fn verify(&self) -> Result<VerificationReport, StructuralError> {
        for (index, block) in self.blocks.iter().enumerate() {
            if let Some(reason) = block.structural_reason(&self.instance) {
                return Err(StructuralError { index, reason });
            }
        }
        let lambda = self.instance.lambda;
        let mut violations = Vec::new();
        for tt in self.instance.admissible_vectors() {
            // Keyed by witness tuple; a BTreeMap keeps the report order
            // independent of hashing.
            let mut counts: BTreeMap<Vec<Vec<usize>>, usize> = BTreeMap::new();
            for block in &self.blocks {
                for witness in block_subtuples(block, &tt) {
                    *counts.entry(witness).or_default() += 1;
                }
            }
            for (witness, count) in counts {
                if count > lambda {
                    violations.push(Violation {
                        t_vector: tt.clone(),
                        witness,
                        count,
                        lambda,
                    });
                }
            }
        }
        Ok(VerificationReport {
            valid: violations.is_empty(),
            violations,
            blocks_checked: self.blocks.len(),
        })
    }

    /// Convenience: verification succeeded and found no violations.
    pub fn is_valid(&self) -> bool {
        self.verify().map(|r| r.valid).unwrap_or(false)
    }

    /// Sorts entries within each part and then the blocks themselves,
    /// lexicographically. Idempotent. This is canonical ordering, not
    /// canonical labeling: relabel-equal packings stay distinct.
    pub fn normalize(&self) -> Self {
        let mut blocks = self.blocks.clone();
        for b in &mut blocks {
            b.sort_entries();
        }
        blocks.sort();
        Self {
            instance: self.instance.clone(),
            blocks,
        }
    }

    /// Reads the canonical text format:
    ///
    /// ```text
    /// genpack t=2 lambda=1 v=5,4 k=2,1
    /// 1,2 ; 1
    /// 1,4 ; 2
    /// ```
    ///
    /// The header names t, lambda, v, and k in that order; every other
    /// significant line is one block, parts separated by ` ; `, points
    /// within a part by `,`. Lines starting with `#` and blank lines are
    /// ignored. Diagnostics carry line and column.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut instance: Option<PackingInstance> = None;
        let mut blocks = Vec::new();
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            last_line = line_no;
            let line = raw.strip_suffix('\r').unwrap_or(raw);
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            match &instance {
                None => instance = Some(parse_header(line, line_no)?),
                Some(inst) => blocks.push(parse_block_line(line, line_no, inst)?),
            }
        }
        let instance = instance.ok_or(ParseError {
            line: last_line.max(1),
            column: 1,
            message: "missing header line".into(),
        })?;
        Ok(Self { instance, blocks })
    }

    /// Writes the canonical text format; the exact inverse of
    /// [`parse`](Self::parse) on its own output. Blocks are emitted in
    /// stored order, so `parse(serialize(p)) == p` holds whether or not
    /// `p` is normalized.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "genpack t={} lambda={} v={} k={}",
            self.instance.t,
            self.instance.lambda,
            self.instance.v.iter().join(","),
            self.instance.k.iter().join(",")
        );
        for block in &self.blocks {
            let line = block.parts.iter().map(|part| part.iter().join(",")).join(" ; ");
            let _ = writeln!(out, "{}", line);
        }
        out
    }
}

/// Enumerates the sub-tuples of one block under the admissible vector
/// `tt`: all ways of choosing a tt[i]-subset from each part of the block.
fn block_subtuples(block: &Block, tt: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let per_part: Vec<Vec<Vec<usize>>> = block
        .parts
        .iter()
        .zip(tt)
        .map(|(part, &ti)| part.iter().copied().combinations(ti).collect())
        .collect();
    per_part
        .into_iter()
        .multi_cartesian_product()
        .collect()
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

fn parse_header(line: &str, line_no: usize) -> Result<PackingInstance, ParseError> {
    let mut fields = Vec::new();
    let mut col = 1;
    for tok in line.split(' ') {
        fields.push((col, tok));
        col += tok.len() + 1;
    }
    if fields[0].1 != "genpack" {
        return Err(err(line_no, 1, "header must start with `genpack`"));
    }
    if fields.len() != 5 {
        return Err(err(
            line_no,
            1,
            format!("header needs the 4 fields t=, lambda=, v=, k=; found {}", fields.len() - 1),
        ));
    }
    let t = parse_scalar_field(fields[1], "t", line_no)?;
    let lambda = parse_scalar_field(fields[2], "lambda", line_no)?;
    let v = parse_vector_field(fields[3], "v", line_no)?;
    let k = parse_vector_field(fields[4], "k", line_no)?;
    PackingInstance::new(v, k, t, lambda).map_err(|e| err(line_no, 1, e.to_string()))
}

fn parse_scalar_field((col, tok): (usize, &str), name: &str, line_no: usize) -> Result<usize, ParseError> {
    let value = tok
        .strip_prefix(name)
        .and_then(|rest| rest.strip_prefix('='))
        .ok_or_else(|| err(line_no, col, format!("expected `{}=<int>`", name)))?;
    value
        .parse()
        .map_err(|_| err(line_no, col + name.len() + 1, format!("`{}` is not an integer", value)))
}

fn parse_vector_field((col, tok): (usize, &str), name: &str, line_no: usize) -> Result<Vec<usize>, ParseError> {
    let value = tok
        .strip_prefix(name)
        .and_then(|rest| rest.strip_prefix('='))
        .ok_or_else(|| err(line_no, col, format!("expected `{}=<int>,<int>,...`", name)))?;
    parse_int_list(value, line_no, col + name.len() + 1)
}

/// Parses `a,b,c`, reporting the column of the offending entry.
fn parse_int_list(value: &str, line_no: usize, col: usize) -> Result<Vec<usize>, ParseError> {
    let mut out = Vec::new();
    let mut entry_col = col;
    for piece in value.split(',') {
        let parsed = piece
            .parse()
            .map_err(|_| err(line_no, entry_col, format!("`{}` is not an integer", piece)))?;
        out.push(parsed);
        entry_col += piece.len() + 1;
    }
    Ok(out)
}

fn parse_block_line(line: &str, line_no: usize, inst: &PackingInstance) -> Result<Block, ParseError> {
    let mut parts = Vec::new();
    let mut col = 1;
    let pieces: Vec<&str> = line.split(" ; ").collect();
    if pieces.len() != inst.num_parts() {
        return Err(err(
            line_no,
            1,
            format!("block has {} parts, instance has {}", pieces.len(), inst.num_parts()),
        ));
    }
    for (i, piece) in pieces.iter().enumerate() {
        let entries = parse_int_list(piece, line_no, col)?;
        if entries.len() != inst.k()[i] {
            return Err(err(
                line_no,
                col,
                format!("part {} has {} points, expected k[{}] = {}", i + 1, entries.len(), i + 1, inst.k()[i]),
            ));
        }
        let mut entry_col = col;
        for (&p, raw) in entries.iter().zip(piece.split(',')) {
            if p == 0 || p > inst.v()[i] {
                return Err(err(
                    line_no,
                    entry_col,
                    format!("point {} out of range 1..={} for part {}", p, inst.v()[i], i + 1),
                ));
            }
            entry_col += raw.len() + 1;
        }
        parts.push(entries);
        col += piece.len() + 3;
    }
    Ok(Block::new(parts))
}

/// The running 2-((5,4),(2,1),1) example: seven blocks, one pair of the
/// first part and one point of the second each.  Shared by tests across
/// the crate.
#[cfg(test)]
pub(crate) fn figure1() -> GeneralizedPacking {
    let inst = PackingInstance::pairwise(vec![5, 4], vec![2, 1]).unwrap();
    let blocks = [
        (vec![1, 2], 1),
        (vec![1, 4], 2),
        (vec![1, 5], 3),
        (vec![2, 3], 2),
        (vec![2, 4], 3),
        (vec![3, 4], 4),
        (vec![4, 5], 1),
    ]
    .into_iter()
    .map(|(pair, x)| Block::new(vec![pair, vec![x]]))
    .collect();
    GeneralizedPacking::new(inst, blocks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissible_vectors_match_hand_enumeration() {
        assert_eq!(
            admissible_t_vectors(&[2, 1], 2).unwrap(),
            vec![vec![2, 0], vec![1, 1]]
        );
        assert_eq!(admissible_t_vectors(&[3], 2).unwrap(), vec![vec![2]]);
        assert_eq!(
            admissible_t_vectors(&[2, 1, 1], 2).unwrap(),
            vec![vec![2, 0, 0], vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 1]]
        );
    }

    #[test]
    fn admissible_vectors_reject_bad_parameters() {
        assert!(admissible_t_vectors(&[], 1).is_err());
        assert!(admissible_t_vectors(&[2, 1], 4).is_err());
        assert!(admissible_t_vectors(&[2, 1], 0).is_err());
        assert!(admissible_t_vectors(&[2, 0], 1).is_err());
    }

    #[test]
    fn admissible_count_matches_brute_force() {
        // Every k with sum(k) <= 8 over at most 4 parts, every t.
        let profiles: Vec<Vec<usize>> = (1..=4)
            .flat_map(|m| (0..m).map(|_| 1..=7).multi_cartesian_product())
            .filter(|k: &Vec<usize>| k.iter().sum::<usize>() <= 8)
            .collect();
        for k in profiles {
            let total: usize = k.iter().sum();
            for t in 1..=total {
                let got = admissible_t_vectors(&k, t).unwrap().len();
                let brute = k
                    .iter()
                    .map(|&ki| 0..=ki)
                    .multi_cartesian_product()
                    .filter(|tt| tt.iter().sum::<usize>() == t)
                    .count();
                assert_eq!(got, brute, "k={:?} t={}", k, t);
            }
        }
    }

    #[test]
    fn instance_invariants_are_enforced() {
        assert!(PackingInstance::new(vec![], vec![], 1, 1).is_err());
        assert!(PackingInstance::new(vec![3, 3], vec![2], 2, 1).is_err());
        assert!(PackingInstance::new(vec![3], vec![4], 2, 1).is_err());
        assert!(PackingInstance::new(vec![3], vec![0], 1, 1).is_err());
        assert!(PackingInstance::new(vec![3], vec![3], 4, 1).is_err());
        assert!(PackingInstance::new(vec![3], vec![3], 0, 1).is_err());
        assert!(PackingInstance::new(vec![3], vec![3], 2, 0).is_err());
        assert!(PackingInstance::new(vec![3, 1], vec![3, 1], 4, 1).is_ok());
    }

    #[test]
    fn figure1_verifies() {
        let report = figure1().verify().unwrap();
        assert!(report.valid);
        assert_eq!(report.blocks_checked, 7);
    }

    #[test]
    fn single_block_is_always_valid() {
        let inst = PackingInstance::pairwise(vec![4, 4], vec![2, 2]).unwrap();
        let p = GeneralizedPacking::new(inst, vec![Block::new(vec![vec![1, 3], vec![2, 4]])]);
        assert!(p.verify().unwrap().valid);
    }

    #[test]
    fn duplicate_block_is_reported_with_witness() {
        let mut p = figure1();
        p.blocks.push(Block::new(vec![vec![1, 2], vec![1]]));
        let report = p.verify().unwrap();
        assert!(!report.valid);
        // The duplicated pair {1,2} of part 1 shows up under tt=(2,0).
        let pair = report
            .violations
            .iter()
            .find(|viol| viol.t_vector == vec![2, 0])
            .expect("missing pair violation");
        assert_eq!(pair.witness, vec![vec![1, 2], vec![]]);
        assert_eq!(pair.count, 2);
        assert_eq!(pair.lambda, 1);
    }

    #[test]
    fn lambda_two_tolerates_a_repeat() {
        let inst = PackingInstance::new(vec![5, 4], vec![2, 1], 2, 2).unwrap();
        let blocks = vec![
            Block::new(vec![vec![1, 2], vec![1]]),
            Block::new(vec![vec![1, 2], vec![2]]),
        ];
        let p = GeneralizedPacking::new(inst, blocks);
        assert!(p.verify().unwrap().valid);
    }

    #[test]
    fn structural_errors_are_distinct_from_violations() {
        let inst = PackingInstance::pairwise(vec![5, 4], vec![2, 1]).unwrap();
        let wrong_size = GeneralizedPacking::new(
            inst.clone(),
            vec![Block::new(vec![vec![1, 2, 3], vec![1]])],
        );
        let e = wrong_size.verify().unwrap_err();
        assert_eq!(e.index, 0);
        assert!(e.reason.contains("expected k[1]"));

        let out_of_range =
            GeneralizedPacking::new(inst.clone(), vec![Block::new(vec![vec![1, 6], vec![1]])]);
        assert!(out_of_range.verify().unwrap_err().reason.contains("out of range"));

        let unsorted =
            GeneralizedPacking::new(inst.clone(), vec![Block::new(vec![vec![2, 1], vec![1]])]);
        assert!(unsorted.verify().unwrap_err().reason.contains("strictly increasing"));

        let duplicate_point =
            GeneralizedPacking::new(inst, vec![Block::new(vec![vec![2, 2], vec![1]])]);
        assert!(duplicate_point.verify().unwrap_err().reason.contains("strictly increasing"));
    }

    #[test]
    fn higher_strength_verification_works() {
        // k=(3,1), t=3: sub-tuples split as (3,0) and (2,1).
        let inst = PackingInstance::new(vec![6, 2], vec![3, 1], 3, 1).unwrap();
        let good = GeneralizedPacking::new(
            inst.clone(),
            vec![
                Block::new(vec![vec![1, 2, 3], vec![1]]),
                Block::new(vec![vec![1, 2, 4], vec![2]]),
            ],
        );
        assert!(good.verify().unwrap().valid);
        let bad = GeneralizedPacking::new(
            inst,
            vec![
                Block::new(vec![vec![1, 2, 3], vec![1]]),
                Block::new(vec![vec![1, 2, 4], vec![1]]),
            ],
        );
        let report = bad.verify().unwrap();
        assert!(!report.valid);
        assert_eq!(report.violations[0].t_vector, vec![2, 1]);
        assert_eq!(report.violations[0].witness, vec![vec![1, 2], vec![1]]);
    }

    #[test]
    fn parse_and_serialize_round_trip() {
        let text = "genpack t=2 lambda=1 v=5,4 k=2,1\n1,2 ; 1\n1,4 ; 2\n1,5 ; 3\n2,3 ; 2\n2,4 ; 3\n3,4 ; 4\n4,5 ; 1\n";
        let p = GeneralizedPacking::parse(text).unwrap();
        assert_eq!(p, figure1());
        assert_eq!(p.serialize(), text);

        let q = GeneralizedPacking::parse(&figure1().serialize()).unwrap();
        assert_eq!(q, figure1());
    }

    #[test]
    fn parse_skips_comments_and_blank_lines() {
        let text = "# a comment\n\ngenpack t=2 lambda=1 v=3,1 k=3,1\n# another\n1,2,3 ; 1\n";
        let p = GeneralizedPacking::parse(text).unwrap();
        assert_eq!(p.size(), 1);
        assert_eq!(p.serialize(), "genpack t=2 lambda=1 v=3,1 k=3,1\n1,2,3 ; 1\n");
    }

    #[test]
    fn parse_diagnostics_carry_line_and_column() {
        let missing = GeneralizedPacking::parse("# nothing\n").unwrap_err();
        assert!(missing.message.contains("missing header"));

        let bad_head = GeneralizedPacking::parse("genpck t=2 lambda=1 v=3 k=3\n").unwrap_err();
        assert_eq!((bad_head.line, bad_head.column), (1, 1));

        let bad_t = GeneralizedPacking::parse("genpack t=x lambda=1 v=3 k=3\n").unwrap_err();
        assert_eq!((bad_t.line, bad_t.column), (1, 11));

        let bad_v = GeneralizedPacking::parse("genpack t=2 lambda=1 v=3,a k=3,1\n").unwrap_err();
        assert_eq!(bad_v.line, 1);
        assert_eq!(bad_v.column, 26);

        let bad_point = GeneralizedPacking::parse("genpack t=2 lambda=1 v=3,1 k=3,1\n1,2,9 ; 1\n").unwrap_err();
        assert_eq!((bad_point.line, bad_point.column), (2, 5));

        let bad_arity = GeneralizedPacking::parse("genpack t=2 lambda=1 v=3,1 k=3,1\n1,2,3\n").unwrap_err();
        assert_eq!(bad_arity.line, 2);
        assert!(bad_arity.message.contains("parts"));

        let bad_size = GeneralizedPacking::parse("genpack t=2 lambda=1 v=3,1 k=3,1\n1,2 ; 1\n").unwrap_err();
        assert_eq!(bad_size.line, 2);
        assert!(bad_size.message.contains("expected k[1]"));
    }

    #[test]
    fn normalize_sorts_and_is_idempotent() {
        let inst = PackingInstance::pairwise(vec![5, 4], vec![2, 1]).unwrap();
        let messy = GeneralizedPacking::new(
            inst,
            vec![
                Block::new(vec![vec![4, 2], vec![3]]),
                Block::new(vec![vec![2, 1], vec![1]]),
            ],
        );
        let once = messy.normalize();
        assert_eq!(
            once.blocks(),
            &[
                Block::new(vec![vec![1, 2], vec![1]]),
                Block::new(vec![vec![2, 4], vec![3]]),
            ]
        );
        assert_eq!(once.normalize(), once);
    }

    #[test]
    fn normalize_preserves_the_verdict() {
        let valid = figure1();
        assert!(valid.normalize().verify().unwrap().valid);

        let mut invalid = figure1();
        invalid.blocks.push(Block::new(vec![vec![1, 2], vec![4]]));
        assert!(!invalid.verify().unwrap().valid);
        assert!(!invalid.normalize().verify().unwrap().valid);
    }

    #[test]
    fn removing_any_block_keeps_validity() {
        let p = figure1();
        for skip in 0..p.size() {
            let blocks: Vec<Block> = p
                .blocks()
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, b)| b.clone())
                .collect();
            let smaller = GeneralizedPacking::new(p.instance().clone(), blocks);
            assert!(smaller.verify().unwrap().valid);
        }
    }
}
