//! Square-tiled surfaces from filling bipartite curve systems: genus,
//! stratum, turning numbers of grid paths and the flat spin parity.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intlin::alternating_normal_form;
use crate::spin::Parity;
use crate::systems::{AdmissibleSystem, CurveDiagram};

pub const ORIGAMI_SCHEMA: &str = "spincalc-origami/1";

/// A connected square-tiled translation surface: `h` sends a square to its
/// right neighbour and `v` to its upper neighbour.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Origami {
    h: Vec<usize>,
    v: Vec<usize>,
    h_inv: Vec<usize>,
    v_inv: Vec<usize>,
}

/// A vertex of the square tiling, given by the squares having it as lower
/// left corner; a cycle of `k` squares is a zero of order `k − 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConePoint {
    pub corners: Vec<usize>,
    pub order: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stratum {
    pub genus: usize,
    /// Orders of the zeros, descending; regular vertices are omitted.
    pub zeros: Vec<u32>,
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let z: Vec<String> = self.zeros.iter().map(u32::to_string).collect();
        write!(f, "H({}) genus {}", z.join(","), self.genus)
    }
}

fn invert(p: &[usize]) -> Result<Vec<usize>> {
    let mut inv = vec![usize::MAX; p.len()];
    for (i, &x) in p.iter().enumerate() {
        if x >= p.len() || inv[x] != usize::MAX {
            return Err(Error::InvalidOrigami(format!("not a permutation: {p:?}")));
        }
        inv[x] = i;
    }
    Ok(inv)
}

impl Origami {
    pub fn new(h: Vec<usize>, v: Vec<usize>) -> Result<Self> {
        if h.is_empty() {
            return Err(Error::InvalidOrigami("no squares".into()));
        }
        if h.len() != v.len() {
            return Err(Error::InvalidOrigami(format!(
                "h acts on {} squares, v on {}",
                h.len(),
                v.len()
            )));
        }
        let h_inv = invert(&h)?;
        let v_inv = invert(&v)?;
        let o = Origami { h, v, h_inv, v_inv };
        let reached = o.component_of(0);
        if let Some(missing) = reached.iter().position(|&x| !x) {
            return Err(Error::InvalidOrigami(format!(
                "not connected: square {missing} is not reachable from square 0"
            )));
        }
        Ok(o)
    }

    fn component_of(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.h.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for y in [self.h[x], self.v[x], self.h_inv[x], self.v_inv[x]] {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    pub fn squares(&self) -> usize {
        self.h.len()
    }

    pub fn h(&self) -> &[usize] {
        &self.h
    }

    pub fn v(&self) -> &[usize] {
        &self.v
    }

    fn step(&self, s: usize, m: Move) -> usize {
        match m {
            Move::R => self.h[s],
            Move::L => self.h_inv[s],
            Move::U => self.v[s],
            Move::D => self.v_inv[s],
        }
    }

    /// Cycles of `v h v⁻¹ h⁻¹` on lower-left corners.
    pub fn cone_points(&self) -> Vec<ConePoint> {
        let n = self.squares();
        let comm = |s: usize| self.v[self.h[self.v_inv[self.h_inv[s]]]];
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut corners = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                corners.push(x);
                x = comm(x);
            }
            out.push(ConePoint {
                order: corners.len() as u32 - 1,
                corners,
            });
        }
        out
    }

    pub fn genus(&self) -> usize {
        // χ = vertices − edges + faces = #cone − 2n + n
        (2 + self.squares() - self.cone_points().len()) / 2
    }

    pub fn stratum(&self) -> Stratum {
        let mut zeros: Vec<u32> = self
            .cone_points()
            .into_iter()
            .map(|c| c.order)
            .filter(|&k| k > 0)
            .collect();
        zeros.sort_unstable_by(|a, b| b.cmp(a));
        Stratum {
            genus: self.genus(),
            zeros,
        }
    }

    /// Turning number of a closed grid path.
    pub fn winding(&self, p: &GridPath) -> Result<i64> {
        self.check_path(p)?;
        Ok(p.turning())
    }

    fn check_path(&self, p: &GridPath) -> Result<()> {
        if p.start >= self.squares() {
            return Err(Error::InvalidPath(format!(
                "square {} does not exist",
                p.start
            )));
        }
        let end = p.moves.iter().fold(p.start, |s, &m| self.step(s, m));
        if end != p.start {
            return Err(Error::OpenPath {
                start: p.start,
                end,
            });
        }
        Ok(())
    }

    /// Squares visited by a path, with the move entering and the move
    /// leaving each square.
    fn visits(&self, p: &GridPath) -> Vec<(usize, Move, Move)> {
        let k = p.moves.len();
        let mut s = p.start;
        let mut out = Vec::with_capacity(k);
        for i in 0..k {
            out.push((s, p.moves[(i + k - 1) % k], p.moves[i]));
            s = self.step(s, p.moves[i]);
        }
        out
    }

    fn check_divisibility(&self, r: u32) -> Result<()> {
        if let Some(c) = self.cone_points().iter().find(|c| c.order % r != 0) {
            return Err(Error::ZeroOrderNotDivisible { r, order: c.order });
        }
        Ok(())
    }

    /// Value of the flat `ℤ/r` spin structure on a path: its turning number
    /// mod `r`. Needs `r` to divide every zero order.
    pub fn spin_value(&self, p: &GridPath, r: u32) -> Result<u32> {
        if r < 2 {
            return Err(Error::InvalidModulus(r));
        }
        self.check_divisibility(r)?;
        Ok(self.winding(p)?.rem_euclid(r as i64) as u32)
    }

    /// Algebraic intersection of two closed paths, after pushing `q`
    /// diagonally off the midlines; `ι(horizontal core, vertical core) = +1`.
    pub fn intersection(&self, p: &GridPath, q: &GridPath) -> Result<i64> {
        self.check_path(p)?;
        self.check_path(q)?;
        let n = self.squares();
        // per square: signed traversal of the right, up, left and down halves
        let halves = |path: &GridPath| {
            let mut right = vec![Vec::new(); n];
            let mut up = vec![Vec::new(); n];
            let mut left = vec![Vec::new(); n];
            let mut down = vec![Vec::new(); n];
            for (s, inc, out) in self.visits(path) {
                match inc {
                    Move::R => left[s].push(1),
                    Move::L => right[s].push(-1),
                    Move::U => down[s].push(1),
                    Move::D => up[s].push(-1),
                }
                match out {
                    Move::R => right[s].push(1),
                    Move::L => left[s].push(-1),
                    Move::U => up[s].push(1),
                    Move::D => down[s].push(-1),
                }
            }
            (right, up, left, down)
        };
        let (p_right, p_up, _, _) = halves(p);
        let (_, _, q_left, q_down) = halves(q);
        let mut total = 0i64;
        for s in 0..n {
            for &x in &p_right[s] {
                for &y in &q_down[s] {
                    total += x * y;
                }
            }
            for &y in &p_up[s] {
                for &x in &q_left[s] {
                    total -= y * x;
                }
            }
        }
        Ok(total)
    }

    /// Horizontal core through square `s`.
    pub fn horizontal_core(&self, s: usize) -> GridPath {
        let mut moves = vec![Move::R];
        let mut x = self.h[s];
        while x != s {
            moves.push(Move::R);
            x = self.h[x];
        }
        GridPath { start: s, moves }
    }

    /// Vertical core through square `s`.
    pub fn vertical_core(&self, s: usize) -> GridPath {
        let mut moves = vec![Move::U];
        let mut x = self.v[s];
        while x != s {
            moves.push(Move::U);
            x = self.v[x];
        }
        GridPath { start: s, moves }
    }

    /// Embedded closed paths generating `H₁`: the fundamental cycles of a
    /// breadth-first spanning tree of the square adjacency graph.
    pub fn fundamental_cycles(&self) -> Vec<GridPath> {
        let n = self.squares();
        // parent move from the root
        let mut route: Vec<Option<Vec<Move>>> = vec![None; n];
        route[0] = Some(Vec::new());
        let mut tree_edge = vec![[false; 2]; n];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for m in [Move::R, Move::U, Move::L, Move::D] {
                let y = self.step(x, m);
                if route[y].is_none() {
                    let mut r = route[x].clone().expect("visited");
                    r.push(m);
                    route[y] = Some(r);
                    match m {
                        Move::R => tree_edge[x][0] = true,
                        Move::U => tree_edge[x][1] = true,
                        Move::L => tree_edge[y][0] = true,
                        Move::D => tree_edge[y][1] = true,
                    }
                    queue.push_back(y);
                }
            }
        }
        let mut out = Vec::new();
        for s in 0..n {
            for (dir, m) in [(0, Move::R), (1, Move::U)] {
                if tree_edge[s][dir] {
                    continue;
                }
                let t = self.step(s, m);
                let to_s = route[s].as_ref().expect("connected");
                let to_t = route[t].as_ref().expect("connected");
                // root → s, edge, t → root; strip the common prefix
                let common = to_s.iter().zip(to_t).take_while(|(a, b)| a == b).count();
                let mut moves: Vec<Move> = to_s[common..].to_vec();
                moves.push(m);
                moves.extend(to_t[common..].iter().rev().map(|m| m.reverse()));
                let mut start = 0;
                for &mv in &to_s[..common] {
                    start = self.step(start, mv);
                }
                out.push(GridPath::reduced(start, &moves, self));
            }
        }
        out
    }

    /// Arf invariant of the flat spin structure, computed from the turning
    /// numbers of embedded generators. Needs every zero order to be even.
    pub fn spin_parity(&self) -> Result<Parity> {
        if self.genus() == 0 {
            return Err(Error::InvalidOrigami("genus 0".into()));
        }
        if self.cone_points().iter().all(|c| c.order == 0) {
            return Err(Error::InvalidOrigami(
                "no zeros: the flat structure is a torus without parity data".into(),
            ));
        }
        self.check_divisibility(2)?;
        let cycles = self.fundamental_cycles();
        let k = cycles.len();
        let q: Vec<i64> = cycles
            .iter()
            .map(|c| (c.turning() + 1).rem_euclid(2))
            .collect();
        let mut gram = vec![vec![0i64; k]; k];
        for i in 0..k {
            for j in i + 1..k {
                let x = self.intersection(&cycles[i], &cycles[j])?;
                gram[i][j] = x;
                gram[j][i] = -x;
            }
        }
        let red = alternating_normal_form(&gram);
        if red.divisors.iter().any(|&d| d != 1) || red.divisors.len() != self.genus() {
            return Err(Error::InvalidOrigami(
                "generators do not reduce to a symplectic basis".into(),
            ));
        }
        let q_of = |f: &[i64]| {
            let mut acc = 0i64;
            for i in 0..k {
                acc += f[i] * q[i];
                for j in i + 1..k {
                    acc += f[i] * f[j] * gram[i][j];
                }
            }
            acc.rem_euclid(2)
        };
        let mut arf = 0i64;
        for s in 0..red.divisors.len() {
            arf += q_of(&red.basis[2 * s]) * q_of(&red.basis[2 * s + 1]);
        }
        for f in &red.basis[2 * red.divisors.len()..] {
            if q_of(f) != 0 {
                return Err(Error::InvalidOrigami(
                    "turning numbers do not descend to homology".into(),
                ));
            }
        }
        Ok(Parity::from_bit(arf as u32))
    }

    pub fn to_document(&self) -> OrigamiDocument {
        OrigamiDocument {
            schema: Some(ORIGAMI_SCHEMA.to_string()),
            squares: self.squares(),
            h: self.h.clone(),
            v: self.v.clone(),
            report: None,
        }
    }

    /// Genus, stratum and (when defined) spin parity.
    pub fn report(&self) -> OrigamiReport {
        let stratum = self.stratum();
        OrigamiReport {
            genus: stratum.genus,
            stratum: stratum.zeros,
            cone_points: self.cone_points().len(),
            parity: self.spin_parity().ok(),
        }
    }

    /// The document with the report attached.
    pub fn to_report_json(&self) -> String {
        let doc = OrigamiDocument {
            report: Some(self.report()),
            ..self.to_document()
        };
        serde_json::to_string_pretty(&doc).expect("serializable")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: OrigamiDocument =
            serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        if let Some(s) = &doc.schema {
            if s != ORIGAMI_SCHEMA {
                return Err(Error::Schema(format!(
                    "expected `{ORIGAMI_SCHEMA}`, got `{s}`"
                )));
            }
        }
        if doc.squares != doc.h.len() {
            return Err(Error::Schema(format!(
                "`squares` is {} but `h` has {} entries",
                doc.squares,
                doc.h.len()
            )));
        }
        Origami::new(doc.h, doc.v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrigamiDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub squares: usize,
    pub h: Vec<usize>,
    pub v: Vec<usize>,
    /// Derived data; ignored on input.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<OrigamiReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrigamiReport {
    pub genus: usize,
    /// Zero orders, descending.
    pub stratum: Vec<u32>,
    pub cone_points: usize,
    /// Absent when undefined (torus, or a zero of odd order).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parity: Option<Parity>,
}

/// Squares are the edges of the diagram; `h` runs along horizontal curves
/// and `v` along vertical ones, each in its cyclic order.
pub fn build_from_diagram(d: &CurveDiagram, horizontal: &[bool]) -> Result<Origami> {
    let edges = d.edges();
    if edges.is_empty() {
        return Err(Error::InvalidOrigami("diagram has no intersections".into()));
    }
    let ends = |k: usize| {
        let e = edges[k];
        if horizontal[e.a] {
            (e.a, e.b)
        } else {
            (e.b, e.a)
        }
    };
    let next = |curve: usize, after: usize| -> Result<usize> {
        let order = d.neighbors(curve);
        let pos = order
            .iter()
            .position(|&x| x == after)
            .ok_or_else(|| Error::CyclicOrder {
                curve: d.name(curve).to_string(),
                reason: format!("`{}` missing", d.name(after)),
            })?;
        let succ = order[(pos + 1) % order.len()];
        d.edge_between(curve, succ)
            .ok_or_else(|| Error::CyclicOrder {
                curve: d.name(curve).to_string(),
                reason: format!("`{}` is not a neighbour", d.name(succ)),
            })
    };
    let mut h = Vec::with_capacity(edges.len());
    let mut v = Vec::with_capacity(edges.len());
    for k in 0..edges.len() {
        let (a, b) = ends(k);
        if horizontal[a] == horizontal[b] {
            return Err(Error::InvalidOrigami(format!(
                "`{}` and `{}` intersect but lie in the same multicurve",
                d.name(a),
                d.name(b)
            )));
        }
        h.push(next(a, b)?);
        v.push(next(b, a)?);
    }
    Origami::new(h, v).map_err(|e| match e {
        Error::InvalidOrigami(msg) => Error::CyclicOrder {
            curve: d.name(ends(0).0).to_string(),
            reason: msg,
        },
        other => other,
    })
}

pub fn build_origami(s: &AdmissibleSystem) -> Origami {
    s.origami()
}

/// Core path of a system curve on its origami.
pub fn core_path(s: &AdmissibleSystem, curve: &str) -> Result<GridPath> {
    let d = s.diagram();
    let i = d.index_of(curve)?;
    let first = d.neighbors(i)[0];
    let square = d.edge_between(i, first).expect("neighbour");
    let o = s.origami();
    Ok(if s.is_horizontal(i) {
        o.horizontal_core(square)
    } else {
        o.vertical_core(square)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Move {
    R,
    U,
    L,
    D,
}

impl Move {
    fn angle(self) -> i64 {
        match self {
            Move::R => 0,
            Move::U => 1,
            Move::L => 2,
            Move::D => 3,
        }
    }

    pub fn reverse(self) -> Move {
        match self {
            Move::R => Move::L,
            Move::L => Move::R,
            Move::U => Move::D,
            Move::D => Move::U,
        }
    }

    pub fn parse(c: char) -> Result<Move> {
        match c {
            'R' => Ok(Move::R),
            'L' => Ok(Move::L),
            'U' => Ok(Move::U),
            'D' => Ok(Move::D),
            other => Err(Error::InvalidPath(format!("unknown move `{other}`"))),
        }
    }
}

/// A closed path through square centres, given by a start square and a
/// cyclic word of unit moves. Immediate reversals are not allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GridPath {
    start: usize,
    moves: Vec<Move>,
}

impl GridPath {
    pub fn new(start: usize, moves: &[Move]) -> Result<Self> {
        if moves.is_empty() {
            return Err(Error::InvalidPath("empty path".into()));
        }
        let k = moves.len();
        for i in 0..k {
            if moves[(i + 1) % k] == moves[i].reverse() {
                return Err(Error::InvalidPath(format!(
                    "reversal at move {}",
                    (i + 1) % k
                )));
            }
        }
        Ok(GridPath {
            start,
            moves: moves.to_vec(),
        })
    }

    /// Parses a word such as `"RRUL"`.
    pub fn parse(start: usize, word: &str) -> Result<Self> {
        let moves: Vec<Move> = word.chars().map(Move::parse).collect::<Result<_>>()?;
        GridPath::new(start, &moves)
    }

    /// Cancels backtracks (also across the cyclic seam, moving the start).
    pub fn reduced(start: usize, moves: &[Move], o: &Origami) -> GridPath {
        let mut stack: Vec<Move> = Vec::new();
        for &m in moves {
            if stack.last() == Some(&m.reverse()) {
                stack.pop();
            } else {
                stack.push(m);
            }
        }
        let mut start = start;
        let mut lo = 0;
        let mut hi = stack.len();
        while hi - lo >= 2 && stack[hi - 1] == stack[lo].reverse() {
            start = o.step(start, stack[lo]);
            lo += 1;
            hi -= 1;
        }
        GridPath {
            start,
            moves: stack[lo..hi].to_vec(),
        }
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn reverse(&self) -> GridPath {
        GridPath {
            start: self.start,
            moves: self.moves.iter().rev().map(|m| m.reverse()).collect(),
        }
    }

    /// `(left turns − right turns) / 4` around the cyclic word.
    fn turning(&self) -> i64 {
        let k = self.moves.len();
        let mut quarter = 0i64;
        for i in 0..k {
            let d = (self.moves[(i + 1) % k].angle() - self.moves[i].angle()).rem_euclid(4);
            quarter += match d {
                1 => 1,
                3 => -1,
                _ => 0,
            };
        }
        quarter / 4
    }
}

impl fmt::Display for GridPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.start)?;
        for m in &self.moves {
            write!(f, "{m:?}")?;
        }
        Ok(())
    }
}
