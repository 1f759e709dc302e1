//! Equivalent representations of a packing: join and leave graphs, Howell
//! style pair arrays, colour classes, orthogonal colouring arrays, and
//! packing arrays.
//!
//! Every conversion here is a change of notation, not of content.  A t=2,
//! lambda=1 packing is the same thing as an edge-disjoint family of complete
//! subgraphs of the join graph, and specific block profiles flatten further:
//! profile (2,1,1) is a Howell style array, (K-1,1) is a block colouring,
//! (K-2,1,1) is a pair of orthogonal block colourings written as an array,
//! and the all-ones profile is a packing array with one row per block.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::model::{
    Block, GeneralizedPacking, InstanceError, PackingInstance, ParseError,
};

// ---------------------------------------------------------------------------
// Graphs
// ---------------------------------------------------------------------------

/// A vertex is a (part, index) pair, both 1-based; flattening would lose the
/// part structure that rendering and leave analysis rely on.
pub type Vertex = (usize, usize);

/// An undirected graph on part-aware vertices, without loops or duplicate
/// edges.  Edges are stored with endpoints in increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    vertices: Vec<Vertex>,
    edges: BTreeSet<(Vertex, Vertex)>,
}

impl SimpleGraph {
    fn new(vertices: Vec<Vertex>) -> Self {
        SimpleGraph {
            vertices,
            edges: BTreeSet::new(),
        }
    }

    fn add_edge(&mut self, a: Vertex, b: Vertex) {
        assert_ne!(a, b, "loops are not representable");
        self.edges.insert((a.min(b), a.max(b)));
    }

    fn remove_edge(&mut self, a: Vertex, b: Vertex) {
        self.edges.remove(&(a.min(b), a.max(b)));
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.edges.iter().copied()
    }

    /// Degree of a vertex.
    pub fn degree(&self, v: Vertex) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    /// Graphviz source with vertices grouped and coloured by part.
    pub fn to_dot(&self) -> String {
        render_dot(self, None)
    }
}

fn dot_vertex(v: Vertex) -> String {
    format!("\"{}:{}\"", v.0, v.1)
}

const PART_COLOURS: [&str; 6] = [
    "lightblue",
    "palegreen",
    "lightyellow",
    "lightpink",
    "lightgrey",
    "white",
];

fn render_dot(graph: &SimpleGraph, dashed: Option<&BTreeSet<(Vertex, Vertex)>>) -> String {
    let mut out = String::from("graph packing {\n  node [shape=circle, style=filled];\n");
    for &v in &graph.vertices {
        let colour = PART_COLOURS[(v.0 - 1) % PART_COLOURS.len()];
        let _ = writeln!(
            out,
            "  {} [fillcolor={colour}, label=\"{}.{}\"];",
            dot_vertex(v),
            v.0,
            v.1
        );
    }
    for (a, b) in graph.edges() {
        let style = match dashed {
            Some(set) if set.contains(&(a, b)) => " [style=dashed]",
            _ => "",
        };
        let _ = writeln!(out, "  {} -- {}{style};", dot_vertex(a), dot_vertex(b));
    }
    out.push_str("}\n");
    out
}

/// The graph whose complete-subgraph packings are exactly the t=2 packings
/// of the instance: a clique on each part that admits two points of a block,
/// an independent set on each part that admits one, all joined completely.
pub fn join_graph(inst: &PackingInstance) -> SimpleGraph {
    assert_eq!(inst.t(), 2, "the join graph describes pair coverage");
    let mut vertices = Vec::new();
    for (i, &vi) in inst.v().iter().enumerate() {
        for x in 1..=vi {
            vertices.push((i + 1, x));
        }
    }
    let mut g = SimpleGraph::new(vertices);
    for (i, (&vi, &ki)) in inst.v().iter().zip(inst.k()).enumerate() {
        if ki >= 2 {
            for x in 1..=vi {
                for y in (x + 1)..=vi {
                    g.add_edge((i + 1, x), (i + 1, y));
                }
            }
        }
    }
    for i in 0..inst.num_parts() {
        for j in (i + 1)..inst.num_parts() {
            for x in 1..=inst.v()[i] {
                for y in 1..=inst.v()[j] {
                    g.add_edge((i + 1, x), (j + 1, y));
                }
            }
        }
    }
    g
}

/// All vertex pairs inside one block, i.e. the edge set of the complete
/// subgraph the block spans in the join graph.
fn block_edges(block: &Block) -> Vec<(Vertex, Vertex)> {
    let mut verts: Vec<Vertex> = Vec::new();
    for (i, part) in block.parts().iter().enumerate() {
        for &x in part {
            verts.push((i + 1, x));
        }
    }
    let mut edges = Vec::with_capacity(verts.len() * (verts.len() - 1) / 2);
    for a in 0..verts.len() {
        for b in (a + 1)..verts.len() {
            let (x, y) = (verts[a], verts[b]);
            edges.push((x.min(y), x.max(y)));
        }
    }
    edges
}

/// Whether the blocks span pairwise edge-disjoint complete subgraphs of the
/// join graph.  For t=2, lambda=1 this is equivalent to validity, and the
/// pair gives an independent cross-check of the verifier.
pub fn blocks_edge_disjoint(p: &GeneralizedPacking) -> bool {
    let mut seen = BTreeSet::new();
    for block in p.blocks() {
        for e in block_edges(block) {
            if !seen.insert(e) {
                return false;
            }
        }
    }
    true
}

fn require_valid(p: &GeneralizedPacking) -> Result<(), InstanceError> {
    if p.instance().t() != 2 || p.instance().lambda() != 1 {
        return Err(InstanceError(
            "leave graphs are defined for t=2, lambda=1".into(),
        ));
    }
    let valid = p.verify().map(|r| r.valid).unwrap_or(false);
    if !valid {
        return Err(InstanceError("the packing does not verify".into()));
    }
    Ok(())
}

/// The join graph minus the edges spanned by blocks.  Blocks of a valid
/// lambda=1 packing are edge-disjoint, so the leave has exactly
/// `|E(G)| - N * C(sum k, 2)` edges.
pub fn leave_graph(p: &GeneralizedPacking) -> Result<SimpleGraph, InstanceError> {
    require_valid(p)?;
    let mut g = join_graph(p.instance());
    for block in p.blocks() {
        for (a, b) in block_edges(block) {
            g.remove_edge(a, b);
        }
    }
    Ok(g)
}

/// Graphviz source for the join graph of the packing with the leave edges
/// dashed, so coverage and leave are visible in one picture.
pub fn dot_with_leave(p: &GeneralizedPacking) -> Result<String, InstanceError> {
    let leave = leave_graph(p)?;
    let join = join_graph(p.instance());
    let dashed: BTreeSet<(Vertex, Vertex)> = leave.edges().collect();
    Ok(render_dot(&join, Some(&dashed)))
}

// ---------------------------------------------------------------------------
// Arrays
// ---------------------------------------------------------------------------

/// What an [`ArrayForm`] depicts, which decides the invariants it must obey.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArrayRole {
    /// Cells hold pairs (more generally fixed-size subsets) of part-1
    /// points; rows are part-2 points, columns part-3 points.  No symbol
    /// repeats in a row or column, no subset repeats anywhere.
    HowellLike,
    /// Same geometry with the part-1 subset of any size; the row and column
    /// coordinates form two orthogonal block colourings.
    OrthogonalColouring,
    /// One fully filled row per block of an all-ones profile, one column
    /// per part.
    PackingArrayRows,
}

impl ArrayRole {
    pub fn as_str(&self) -> &'static str {
        match self {
            ArrayRole::HowellLike => "howell-like",
            ArrayRole::OrthogonalColouring => "orthogonal-colouring",
            ArrayRole::PackingArrayRows => "packing-array-rows",
        }
    }
}

/// A rows x cols grid of optional cells, each a sorted set of symbols.
///
/// The text form writes one line per row with cells separated by `|`, a
/// cell either `.` for empty or its symbols joined by `,`; lowercase letter
/// runs like `ab` are accepted on input as shorthand for `1,2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrayForm {
    role: ArrayRole,
    rows: usize,
    cols: usize,
    symbols: usize,
    cells: Vec<Vec<Option<Vec<usize>>>>,
}

impl ArrayForm {
    pub fn role(&self) -> ArrayRole {
        self.role
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// The size of the alphabet the cell symbols come from.
    pub fn symbols(&self) -> usize {
        self.symbols
    }

    pub fn cells(&self) -> &[Vec<Option<Vec<usize>>>] {
        &self.cells
    }

    /// Cell content at 1-based position (i, j).
    pub fn cell(&self, i: usize, j: usize) -> Option<&[usize]> {
        self.cells[i - 1][j - 1].as_deref()
    }

    pub fn filled_count(&self) -> usize {
        self.cells
            .iter()
            .flatten()
            .filter(|c| c.is_some())
            .count()
    }

    /// Validates the role-specific invariants; error messages carry cell
    /// coordinates.
    pub fn check(&self) -> Result<(), InstanceError> {
        let fail = |msg: String| Err(InstanceError(msg));
        if self.cells.len() != self.rows
            || self.cells.iter().any(|r| r.len() != self.cols)
        {
            return fail("the grid is ragged".into());
        }
        match self.role {
            ArrayRole::PackingArrayRows => {
                for (i, row) in self.cells.iter().enumerate() {
                    for (j, cell) in row.iter().enumerate() {
                        match cell {
                            Some(c) if c.len() == 1 && c[0] >= 1 => {}
                            _ => {
                                return fail(format!(
                                    "cell ({},{}) must hold one symbol",
                                    i + 1,
                                    j + 1
                                ))
                            }
                        }
                    }
                }
                Ok(())
            }
            ArrayRole::HowellLike | ArrayRole::OrthogonalColouring => {
                let mut cell_size = None;
                let mut row_seen = vec![vec![false; self.symbols + 1]; self.rows];
                let mut col_seen = vec![vec![false; self.symbols + 1]; self.cols];
                let mut subsets = BTreeSet::new();
                for (i, row) in self.cells.iter().enumerate() {
                    for (j, cell) in row.iter().enumerate() {
                        let Some(content) = cell else { continue };
                        let at = |msg: &str| format!("cell ({},{}): {msg}", i + 1, j + 1);
                        if content.is_empty() {
                            return fail(at("empty content"));
                        }
                        match cell_size {
                            None => cell_size = Some(content.len()),
                            Some(s) if s != content.len() => {
                                return fail(at("cell sizes differ"))
                            }
                            _ => {}
                        }
                        if content.windows(2).any(|w| w[0] >= w[1]) {
                            return fail(at("symbols repeat or are unsorted"));
                        }
                        for &x in content {
                            if x < 1 || x > self.symbols {
                                return fail(at(&format!("symbol {x} out of range")));
                            }
                            if row_seen[i][x] {
                                return fail(at(&format!("symbol {x} repeats in the row")));
                            }
                            row_seen[i][x] = true;
                            if col_seen[j][x] {
                                return fail(at(&format!(
                                    "symbol {x} repeats in the column"
                                )));
                            }
                            col_seen[j][x] = true;
                        }
                        if content.len() >= 2 && !subsets.insert(content.clone()) {
                            return fail(at("the subset appears twice"));
                        }
                    }
                }
                Ok(())
            }
        }
    }

    /// An informational classification of fully structured Howell style
    /// arrays: completely filled square arrays on twice the side are SOMAs,
    /// and side-plus-one alphabets with every pair present are Room squares.
    pub fn classify(&self) -> Option<&'static str> {
        if self.role != ArrayRole::HowellLike || self.rows != self.cols {
            return None;
        }
        let filled = self.filled_count();
        if self.symbols == 2 * self.rows && filled == self.rows * self.cols {
            return Some("soma");
        }
        if self.symbols == self.rows + 1 && filled == self.symbols * (self.symbols - 1) / 2 {
            return Some("room-square");
        }
        None
    }

    /// The text form: one line per row, `|` between cells, `.` for empty.
    pub fn text(&self) -> String {
        let mut out = String::new();
        for row in &self.cells {
            let line: Vec<String> = row
                .iter()
                .map(|cell| match cell {
                    None => ".".to_string(),
                    Some(content) => content
                        .iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                })
                .collect();
            out.push_str(&line.join("|"));
            out.push('\n');
        }
        out
    }

    /// Parses the text form.  Blank lines and `#` comments are skipped; the
    /// alphabet size is the largest symbol that occurs.  Error positions
    /// count cells, not characters, within the offending line.
    pub fn parse(text: &str, role: ArrayRole) -> Result<ArrayForm, ParseError> {
        let err = |line: usize, column: usize, message: String| ParseError {
            line,
            column,
            message,
        };
        let mut cells: Vec<Vec<Option<Vec<usize>>>> = Vec::new();
        let mut symbols = 0;
        for (li, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut row = Vec::new();
            for (ci, token) in line.split('|').enumerate() {
                let token = token.trim();
                if token.is_empty() || token == "." {
                    row.push(None);
                    continue;
                }
                let mut content: Vec<usize> = Vec::new();
                if token.chars().all(|c| c.is_ascii_lowercase()) {
                    content.extend(token.chars().map(|c| c as usize - 'a' as usize + 1));
                } else {
                    for piece in token.split(',') {
                        let x: usize = piece.trim().parse().map_err(|_| {
                            err(
                                li + 1,
                                ci + 1,
                                format!("cannot read symbol {piece:?}"),
                            )
                        })?;
                        content.push(x);
                    }
                }
                if content.iter().any(|&x| x == 0) {
                    return Err(err(li + 1, ci + 1, "symbols are 1-based".into()));
                }
                content.sort_unstable();
                content.dedup();
                symbols = symbols.max(*content.last().unwrap());
                row.push(Some(content));
            }
            cells.push(row);
        }
        let rows = cells.len();
        let cols = cells.first().map_or(0, |r| r.len());
        if cells.iter().any(|r| r.len() != cols) {
            return Err(err(1, 1, "rows have differing cell counts".into()));
        }
        Ok(ArrayForm {
            role,
            rows,
            cols,
            symbols,
            cells,
        })
    }
}

impl From<&crate::blocks::HowellArray> for ArrayForm {
    fn from(h: &crate::blocks::HowellArray) -> Self {
        let cells = h
            .grid()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|cell| cell.map(|(a, b)| vec![a.min(b), a.max(b)]))
                    .collect()
            })
            .collect();
        ArrayForm {
            role: ArrayRole::HowellLike,
            rows: h.side(),
            cols: h.side(),
            symbols: h.symbols(),
            cells,
        }
    }
}

fn require_profile(p: &GeneralizedPacking, k: &[usize], what: &str) -> Result<(), InstanceError> {
    if p.instance().k() != k {
        return Err(InstanceError(format!(
            "{what} requires the block profile {k:?}, found {:?}",
            p.instance().k()
        )));
    }
    require_valid(p)
}

/// Flattens a valid (2,1,1) packing into a Howell style array: the block
/// holding part-2 point i and part-3 point j writes its pair into cell
/// (i, j).
pub fn to_array_form(p: &GeneralizedPacking) -> Result<ArrayForm, InstanceError> {
    require_profile(p, &[2, 1, 1], "the array form")?;
    let (v1, v2, v3) = (
        p.instance().v()[0],
        p.instance().v()[1],
        p.instance().v()[2],
    );
    let mut cells = vec![vec![None; v3]; v2];
    for block in p.blocks() {
        let (r, c) = (block.part(1)[0], block.part(2)[0]);
        let mut pair = block.part(0).to_vec();
        pair.sort_unstable();
        cells[r - 1][c - 1] = Some(pair);
    }
    Ok(ArrayForm {
        role: ArrayRole::HowellLike,
        rows: v2,
        cols: v3,
        symbols: v1,
        cells,
    })
}

/// Rebuilds the packing an array depicts and verifies it.
///
/// Howell style and orthogonal-colouring arrays become (s,1,1) profiles on
/// parts (symbols, rows, cols) with s the cell size; packing array rows
/// become one all-ones block per row, the part sizes read off the columns.
pub fn from_array_form(a: &ArrayForm) -> Result<GeneralizedPacking, InstanceError> {
    a.check()?;
    let packing = match a.role {
        ArrayRole::HowellLike | ArrayRole::OrthogonalColouring => {
            let cell_size = a
                .cells
                .iter()
                .flatten()
                .flatten()
                .map(|c| c.len())
                .next()
                .unwrap_or(if a.role == ArrayRole::HowellLike { 2 } else { 1 });
            let inst = PackingInstance::new(
                vec![a.symbols.max(cell_size), a.rows, a.cols],
                vec![cell_size, 1, 1],
                2,
                1,
            )
            .map_err(|e| InstanceError(format!("array does not define an instance: {e}")))?;
            let mut blocks = Vec::new();
            for (i, row) in a.cells.iter().enumerate() {
                for (j, cell) in row.iter().enumerate() {
                    if let Some(content) = cell {
                        blocks.push(Block::new(vec![
                            content.clone(),
                            vec![i + 1],
                            vec![j + 1],
                        ]));
                    }
                }
            }
            GeneralizedPacking::new(inst, blocks)
        }
        ArrayRole::PackingArrayRows => {
            let m = a.cols;
            let v: Vec<usize> = (0..m)
                .map(|j| {
                    a.cells
                        .iter()
                        .map(|row| row[j].as_ref().map_or(0, |c| c[0]))
                        .max()
                        .unwrap_or(1)
                        .max(1)
                })
                .collect();
            let inst = PackingInstance::new(v, vec![1; m], 2, 1)
                .map_err(|e| InstanceError(format!("array does not define an instance: {e}")))?;
            let blocks = a
                .cells
                .iter()
                .map(|row| {
                    Block::new(row.iter().map(|c| c.clone().unwrap()).collect())
                })
                .collect();
            GeneralizedPacking::new(inst, blocks)
        }
    };
    let report = packing
        .verify()
        .map_err(|e| InstanceError(format!("malformed block: {e}")))?;
    if !report.valid {
        return Err(InstanceError(format!(
            "the array's packing does not verify ({} violations)",
            report.violations.len()
        )));
    }
    Ok(packing)
}

/// Writes a valid (K-2,1,1) packing as an array of part-1 subsets, the
/// superposition of its two orthogonal block colourings.
pub fn to_orthogonal_array_form(p: &GeneralizedPacking) -> Result<ArrayForm, InstanceError> {
    let k = p.instance().k();
    if k.len() != 3 || k[1] != 1 || k[2] != 1 {
        return Err(InstanceError(format!(
            "the orthogonal colouring array requires a (s,1,1) profile, found {k:?}"
        )));
    }
    require_valid(p)?;
    let (v1, v2, v3) = (
        p.instance().v()[0],
        p.instance().v()[1],
        p.instance().v()[2],
    );
    let mut cells = vec![vec![None; v3]; v2];
    for block in p.blocks() {
        let (r, c) = (block.part(1)[0], block.part(2)[0]);
        let mut content = block.part(0).to_vec();
        content.sort_unstable();
        cells[r - 1][c - 1] = Some(content);
    }
    Ok(ArrayForm {
        role: ArrayRole::OrthogonalColouring,
        rows: v2,
        cols: v3,
        symbols: v1,
        cells,
    })
}

/// Writes a valid all-ones packing as a packing array: one row per block,
/// one column per part, any two columns repeating no ordered pair.
pub fn to_packing_array(p: &GeneralizedPacking) -> Result<ArrayForm, InstanceError> {
    if p.instance().k().iter().any(|&ki| ki != 1) {
        return Err(InstanceError(format!(
            "the packing array requires an all-ones profile, found {:?}",
            p.instance().k()
        )));
    }
    require_valid(p)?;
    let cells = p
        .blocks()
        .iter()
        .map(|b| b.parts().iter().map(|part| Some(part.clone())).collect())
        .collect();
    Ok(ArrayForm {
        role: ArrayRole::PackingArrayRows,
        rows: p.size(),
        cols: p.instance().num_parts(),
        symbols: p.instance().v().iter().copied().max().unwrap_or(1),
        cells,
    })
}

// ---------------------------------------------------------------------------
// Colour classes
// ---------------------------------------------------------------------------

/// The colour classes of a (K-1,1) packing: class i collects the part-1
/// subsets of the blocks whose part-2 point is i.  Validity makes each
/// class a partial parallel class, i.e. pairwise disjoint subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColourClasses {
    instance: PackingInstance,
    classes: Vec<Vec<Vec<usize>>>,
}

impl ColourClasses {
    pub fn instance(&self) -> &PackingInstance {
        &self.instance
    }

    /// All classes, empty ones included; index = part-2 point - 1.
    pub fn classes(&self) -> &[Vec<Vec<usize>>] {
        &self.classes
    }

    pub fn num_nonempty(&self) -> usize {
        self.classes.iter().filter(|c| !c.is_empty()).count()
    }

    /// Class sizes in exponential notation, largest first, empty classes
    /// skipped; e.g. `3^5 1^2`.
    pub fn colour_type(&self) -> String {
        let mut sizes: Vec<usize> = self
            .classes
            .iter()
            .map(|c| c.len())
            .filter(|&s| s > 0)
            .collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        let mut parts = Vec::new();
        let mut i = 0;
        while i < sizes.len() {
            let run = sizes[i..].iter().take_while(|&&s| s == sizes[i]).count();
            parts.push(format!("{}^{}", sizes[i], run));
            i += run;
        }
        parts.join(" ")
    }

    /// Checks that every class consists of pairwise disjoint subsets.
    pub fn check(&self) -> Result<(), InstanceError> {
        for (i, class) in self.classes.iter().enumerate() {
            let mut touched = BTreeSet::new();
            for subset in class {
                for &x in subset {
                    if !touched.insert(x) {
                        return Err(InstanceError(format!(
                            "class {}: point {x} appears twice",
                            i + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Reassembles the packing the classes came from.
    pub fn to_packing(&self) -> GeneralizedPacking {
        let mut blocks = Vec::new();
        for (i, class) in self.classes.iter().enumerate() {
            for subset in class {
                blocks.push(Block::new(vec![subset.clone(), vec![i + 1]]));
            }
        }
        GeneralizedPacking::new(self.instance.clone(), blocks)
    }
}

/// Splits a valid (K-1,1) packing into its colour classes.
pub fn to_colour_classes(p: &GeneralizedPacking) -> Result<ColourClasses, InstanceError> {
    let k = p.instance().k();
    if k.len() != 2 || k[1] != 1 {
        return Err(InstanceError(format!(
            "colour classes require a (s,1) profile, found {k:?}"
        )));
    }
    require_valid(p)?;
    let v2 = p.instance().v()[1];
    let mut classes = vec![Vec::new(); v2];
    for block in p.blocks() {
        let colour = block.part(1)[0];
        let mut subset = block.part(0).to_vec();
        subset.sort_unstable();
        classes[colour - 1].push(subset);
    }
    for class in &mut classes {
        class.sort();
    }
    Ok(ColourClasses {
        instance: p.instance().clone(),
        classes,
    })
}
