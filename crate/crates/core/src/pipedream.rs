//! Reduced pipe dreams: tracing, exit permutations, flips and move posets, transposition,
//! and contact graphs.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permutation::Permutation;

/// Largest supported size; columns are packed into `u32` words.
pub const MAX_SIZE: usize = 31;

/// Triangular filling of size n. Cell (i, j) with i + j ≤ n − 1 may hold a cross; (0, 0) and
/// the anti-diagonal half cells are always elbows.
///
/// Column j is stored as a bit word with row i at bit 31 − i, so the derived order compares
/// column reading words lexicographically with elbow < cross.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PipeDream {
    n: usize,
    cols: Vec<u32>,
}

/// Which pipes pass through each cell.
#[derive(Clone, Debug)]
pub struct Trace {
    /// `west[r][c]`: pipe entering cell (r, c) from the left.
    west: Vec<Vec<usize>>,
    /// `south[r][c]`: pipe entering cell (r, c) from below, absent on half cells.
    south: Vec<Vec<Option<usize>>>,
    /// `exits[c]`: pipe leaving through the top of column c.
    exits: Vec<usize>,
}

impl Trace {
    pub fn west(&self, row: usize, col: usize) -> usize {
        self.west[row][col]
    }

    pub fn south(&self, row: usize, col: usize) -> Option<usize> {
        self.south[row][col]
    }

    pub fn exits(&self) -> &[usize] {
        &self.exits
    }
}

/// An elbow and the crossing of its two pipes; applying it swaps the two cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flip {
    pub elbow: (usize, usize),
    pub cross: (usize, usize),
}

impl Flip {
    /// The crossing lies north-east of the elbow, so the move pushes a cross downwards.
    pub fn is_down(&self) -> bool {
        self.cross.0 < self.elbow.0 && self.cross.1 > self.elbow.1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MoveKind {
    /// Every elbow/cross exchange of a crossing pair (oriented downwards).
    Flip,
    /// Down flips within two consecutive rows.
    Chute,
    /// Down flips whose rectangle is filled with crosses apart from its corners.
    GeneralChute,
    /// Up flips within two consecutive columns (transposed chute moves).
    Ladder,
}

/// Elements of 𝒫(ω) in reading-word order with the moves of one kind between them.
#[derive(Clone, Debug, Serialize)]
pub struct MoveGraph {
    pub elements: Vec<PipeDream>,
    /// (from, to) index pairs.
    pub edges: Vec<(usize, usize)>,
}

/// One vertex per pipe 0..=n and one arc per elbow, from its south-east pipe to its north-west pipe.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContactGraph {
    pub vertices: usize,
    pub arcs: Vec<(usize, usize)>,
}

impl ContactGraph {
    pub fn is_acyclic(&self) -> bool {
        let mut indegree = vec![0usize; self.vertices];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); self.vertices];
        for &(from, to) in &self.arcs {
            indegree[to] += 1;
            out[from].push(to);
        }
        let mut queue: VecDeque<usize> = (0..self.vertices).filter(|&v| indegree[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop_front() {
            seen += 1;
            for &w in &out[v] {
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        seen == self.vertices
    }
}

impl PipeDream {
    /// The all-elbow pipe dream, whose exit permutation is the identity.
    pub fn elbows(n: usize) -> Self {
        assert!(n <= MAX_SIZE, "pipe dreams are limited to size {MAX_SIZE}");
        PipeDream { n, cols: vec![0; n] }
    }

    pub fn empty() -> Self {
        PipeDream::elbows(0)
    }

    /// Validates the shape and reducedness.
    pub fn from_crosses(n: usize, crosses: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let dream = PipeDream::filling(n, crosses)?;
        if !dream.is_reduced() {
            return Err(Error::invalid("pipe dream", "two pipes cross more than once"));
        }
        Ok(dream)
    }

    /// Validates the shape only; the result may be non-reduced.
    pub fn filling(n: usize, crosses: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n > MAX_SIZE {
            return Err(Error::ResourceBound(format!("pipe dream size {n} exceeds {MAX_SIZE}")));
        }
        let mut dream = PipeDream::elbows(n);
        for (i, j) in crosses {
            if (i, j) == (0, 0) || i + j + 1 > n {
                return Err(Error::invalid("pipe dream", format!("cell ({i},{j}) cannot hold a cross in size {n}")));
            }
            dream.set(i, j, true);
        }
        Ok(dream)
    }

    pub(crate) fn from_cells_unchecked(n: usize, crosses: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut dream = PipeDream::elbows(n);
        for (i, j) in crosses {
            debug_assert!((i, j) != (0, 0) && i + j < n, "cell ({i},{j}) outside size {n}");
            dream.set(i, j, true);
        }
        dream
    }

    fn set(&mut self, row: usize, col: usize, cross: bool) {
        let bit = 1u32 << (31 - row);
        if cross {
            self.cols[col] |= bit;
        } else {
            self.cols[col] &= !bit;
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn is_cross(&self, row: usize, col: usize) -> bool {
        col < self.n && row < 32 && (self.cols[col] >> (31 - row)) & 1 == 1
    }

    /// Cross cells in lexicographic order.
    pub fn crosses(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = (0..self.n)
            .flat_map(|j| (0..self.n - j).filter(move |&i| self.is_cross(i, j)).map(move |i| (i, j)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn cross_count(&self) -> usize {
        self.cols.iter().map(|c| c.count_ones() as usize).sum()
    }

    /// Full elbows (cells i + j ≤ n − 1 without a cross).
    pub fn elbow_count(&self) -> usize {
        self.n * (self.n + 1) / 2 - self.cross_count()
    }

    pub fn trace(&self) -> Trace {
        let n = self.n;
        let mut west: Vec<Vec<usize>> = (0..=n).map(|r| vec![0; n + 1 - r]).collect();
        let mut south: Vec<Vec<Option<usize>>> = (0..=n).map(|r| vec![None; n + 1 - r]).collect();
        // Pipe leaving each cell upwards, filled row by row from the bottom.
        let mut north_out: Vec<Vec<usize>> = (0..=n).map(|r| vec![0; n + 1 - r]).collect();
        for r in (0..=n).rev() {
            let mut from_left = r;
            for c in 0..=n - r {
                let from_below = (r + c < n).then(|| north_out[r + 1][c]);
                west[r][c] = from_left;
                south[r][c] = from_below;
                match from_below {
                    Some(below) if self.is_cross(r, c) => {
                        north_out[r][c] = below;
                    }
                    Some(below) => {
                        north_out[r][c] = from_left;
                        from_left = below;
                    }
                    None => north_out[r][c] = from_left,
                }
            }
        }
        let exits = north_out[0].clone();
        Trace { west, south, exits }
    }

    /// Pairs of pipes crossing at each cross cell.
    fn crossing_pairs(&self, trace: &Trace) -> Vec<((usize, usize), (usize, usize))> {
        self.crosses()
            .into_iter()
            .map(|(i, j)| {
                let a = trace.west[i][j];
                let b = trace.south[i][j].expect("crosses are full cells");
                ((a.min(b), a.max(b)), (i, j))
            })
            .collect()
    }

    /// Any two pipes cross at most once.
    pub fn is_reduced(&self) -> bool {
        let trace = self.trace();
        let mut seen = BTreeSet::new();
        self.crossing_pairs(&trace).into_iter().all(|(pair, _)| seen.insert(pair))
    }

    /// ω with ω(j) the pipe exiting column j.
    pub fn exit_permutation(&self) -> Permutation {
        let exits = self.trace().exits;
        Permutation::from_word_unchecked(exits[1..].to_vec())
    }

    /// Crosses in the top i_k rows of column k, where (i_k) is the Lehmer code.
    pub fn p_top(omega: &Permutation) -> PipeDream {
        let code = omega.lehmer_code();
        let crosses = code
            .iter()
            .enumerate()
            .flat_map(|(k, &height)| (0..height).map(move |i| (i, k + 1)));
        PipeDream::from_cells_unchecked(omega.size(), crosses)
    }

    /// Columns left to right, each read top to bottom including the half cell; true = cross.
    pub fn reading_word(&self) -> Vec<bool> {
        (0..=self.n)
            .flat_map(|j| (0..=self.n - j).map(move |i| (i, j)))
            .map(|(i, j)| self.is_cross(i, j))
            .collect()
    }

    pub fn reading_string(&self) -> String {
        self.reading_word().iter().map(|&x| if x { '+' } else { '.' }).collect()
    }

    pub fn transpose(&self) -> PipeDream {
        PipeDream::from_cells_unchecked(self.n, self.crosses().into_iter().map(|(i, j)| (j, i)))
    }

    /// All flips at full elbows whose two pipes cross somewhere.
    pub fn flips(&self) -> Vec<Flip> {
        let trace = self.trace();
        let crossing: HashMap<(usize, usize), (usize, usize)> = self.crossing_pairs(&trace).into_iter().collect();
        let mut out = Vec::new();
        for r in 0..self.n {
            for c in 0..self.n - r {
                if self.is_cross(r, c) {
                    continue;
                }
                let a = trace.west[r][c];
                let b = trace.south[r][c].expect("full cell");
                if let Some(&cross) = crossing.get(&(a.min(b), a.max(b))) {
                    out.push(Flip { elbow: (r, c), cross });
                }
            }
        }
        out
    }

    pub fn apply(&self, flip: &Flip) -> PipeDream {
        let mut out = self.clone();
        out.set(flip.elbow.0, flip.elbow.1, true);
        out.set(flip.cross.0, flip.cross.1, false);
        out
    }

    /// All cells of the flip's rectangle except its four corners are crosses.
    fn rectangle_filled(&self, flip: &Flip) -> bool {
        let (r0, r1) = (flip.elbow.0.min(flip.cross.0), flip.elbow.0.max(flip.cross.0));
        let (c0, c1) = (flip.elbow.1.min(flip.cross.1), flip.elbow.1.max(flip.cross.1));
        (r0..=r1).all(|r| {
            (c0..=c1).all(|c| ((r == r0 || r == r1) && (c == c0 || c == c1)) || self.is_cross(r, c))
        })
    }

    pub fn is_move(&self, flip: &Flip, kind: MoveKind) -> bool {
        match kind {
            MoveKind::Flip => true,
            MoveKind::Chute => flip.is_down() && flip.cross.0 + 1 == flip.elbow.0 && self.rectangle_filled(flip),
            MoveKind::GeneralChute => flip.is_down() && self.rectangle_filled(flip),
            MoveKind::Ladder => {
                !flip.is_down() && flip.cross.1 + 1 == flip.elbow.1 && self.rectangle_filled(flip)
            }
        }
    }

    /// Results of one move of the given kind.
    pub fn moves(&self, kind: MoveKind) -> Vec<PipeDream> {
        let mut out: Vec<PipeDream> = self
            .flips()
            .into_iter()
            .filter(|f| self.is_move(f, kind))
            .map(|f| self.apply(&f))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn chute_covers_down(&self) -> Vec<PipeDream> {
        self.moves(MoveKind::Chute)
    }

    pub fn ladder_covers_up(&self) -> Vec<PipeDream> {
        self.moves(MoveKind::Ladder)
    }

    pub fn general_chute_covers_down(&self) -> Vec<PipeDream> {
        self.moves(MoveKind::GeneralChute)
    }

    /// Everything reachable from `start` by moves of the given kind, sorted.
    pub fn closure(start: &PipeDream, kind: MoveKind) -> Vec<PipeDream> {
        let mut seen: BTreeSet<PipeDream> = BTreeSet::from([start.clone()]);
        let mut queue = VecDeque::from([start.clone()]);
        while let Some(current) = queue.pop_front() {
            for next in current.moves(kind) {
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// 𝒫(ω) in reading-word order, generated by flips from P_top.
    pub fn enumerate(omega: &Permutation) -> Vec<PipeDream> {
        let all = PipeDream::closure(&PipeDream::p_top(omega), MoveKind::Flip);
        debug_assert!(all.iter().all(|p| p.is_reduced() && &p.exit_permutation() == omega));
        all
    }

    pub fn move_graph(omega: &Permutation, kind: MoveKind) -> MoveGraph {
        let elements = PipeDream::enumerate(omega);
        let index: HashMap<&PipeDream, usize> = elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut edges = Vec::new();
        for (from, dream) in elements.iter().enumerate() {
            for flip in dream.flips() {
                let oriented = kind != MoveKind::Flip || flip.is_down();
                if oriented && dream.is_move(&flip, kind) {
                    edges.push((from, index[&dream.apply(&flip)]));
                }
            }
        }
        edges.sort_unstable();
        edges.dedup();
        MoveGraph { elements, edges }
    }

    /// All reduced pipe dreams of size n, grouped by exit permutation.
    pub fn all_by_permutation(n: usize) -> BTreeMap<Permutation, Vec<PipeDream>> {
        Permutation::all(n)
            .into_iter()
            .map(|omega| {
                let dreams = PipeDream::enumerate(&omega);
                (omega, dreams)
            })
            .collect()
    }

    pub fn all(n: usize) -> Vec<PipeDream> {
        let mut out: Vec<PipeDream> = PipeDream::all_by_permutation(n).into_values().flatten().collect();
        out.sort();
        out
    }

    /// Exhaustive search over every filling of the free cells.
    pub fn brute_force_by_permutation(n: usize) -> BTreeMap<Permutation, Vec<PipeDream>> {
        let cells: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n - i).map(move |j| (i, j)))
            .filter(|&c| c != (0, 0))
            .collect();
        assert!(cells.len() < 32, "brute force limited to n ≤ 7");
        let mut out: BTreeMap<Permutation, Vec<PipeDream>> = BTreeMap::new();
        for mask in 0u64..(1u64 << cells.len()) {
            let crosses = cells.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &c)| c);
            let dream = PipeDream::from_cells_unchecked(n, crosses);
            if dream.is_reduced() {
                out.entry(dream.exit_permutation()).or_default().push(dream);
            }
        }
        for dreams in out.values_mut() {
            dreams.sort();
        }
        out
    }

    pub fn contact_graph(&self) -> ContactGraph {
        let trace = self.trace();
        let mut arcs = Vec::new();
        for r in 0..self.n {
            for c in 0..self.n - r {
                if !self.is_cross(r, c) {
                    let south_east = trace.south[r][c].expect("full cell");
                    arcs.push((south_east, trace.west[r][c]));
                }
            }
        }
        ContactGraph {
            vertices: self.n + 1,
            arcs,
        }
    }

    pub fn is_acyclic(&self) -> bool {
        self.contact_graph().is_acyclic()
    }

    /// One line per row, '+' for a cross and '.' for an elbow.
    pub fn to_ascii(&self) -> String {
        (0..=self.n)
            .map(|i| (0..=self.n - i).map(|j| if self.is_cross(i, j) { '+' } else { '.' }).collect::<String>())
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl fmt::Display for PipeDream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ascii())
    }
}

/// Rows separated by newlines or '/', as produced by `to_ascii`.
impl FromStr for PipeDream {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let rows: Vec<&str> = text
            .split(|c| c == '\n' || c == '/')
            .map(str::trim)
            .filter(|r| !r.is_empty())
            .collect();
        if rows.is_empty() {
            return Err(Error::parse("pipe dream", 0, "no rows"));
        }
        let n = rows.len() - 1;
        let mut crosses = Vec::new();
        let mut offset = 0;
        for (i, row) in rows.iter().enumerate() {
            if row.chars().count() != n + 1 - i {
                return Err(Error::parse("pipe dream", offset, format!("row {i} must have {} cells", n + 1 - i)));
            }
            for (j, ch) in row.chars().enumerate() {
                match ch {
                    '+' => crosses.push((i, j)),
                    '.' => {}
                    other => {
                        return Err(Error::parse("pipe dream", offset + j, format!("unexpected character {other:?}")))
                    }
                }
            }
            offset += row.len() + 1;
        }
        PipeDream::from_crosses(n, crosses)
    }
}

#[derive(Serialize, Deserialize)]
struct PipeDreamJson {
    n: usize,
    crosses: Vec<(usize, usize)>,
}

impl Serialize for PipeDream {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PipeDreamJson {
            n: self.n,
            crosses: self.crosses(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PipeDream {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = PipeDreamJson::deserialize(deserializer)?;
        PipeDream::from_crosses(raw.n, raw.crosses).map_err(serde::de::Error::custom)
    }
}
