//! Curve diagrams, admissible curve systems and the named presets.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intlin::alternating_normal_form;
use crate::modring::{BaseClass, Modulus};
use crate::tangent_lift::{curve_lift, LiftedClass};
use crate::veech::{build_from_diagram, Origami};

pub const SYSTEM_SCHEMA: &str = "spincalc-system/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DiagramEdge {
    pub a: usize,
    pub b: usize,
    /// Algebraic intersection `ι(a, b)`.
    pub sign: i8,
}

/// Intersection graph of a family of simple closed curves, with a cyclic
/// order of the neighbours of each curve (the order in which the curve meets
/// them).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveDiagram {
    names: Vec<String>,
    index: BTreeMap<String, usize>,
    edges: Vec<DiagramEdge>,
    cyclic: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramReport {
    pub vertices: usize,
    pub edges: usize,
    pub is_connected: bool,
    pub is_tree: bool,
    /// Color classes, the first containing the first curve.
    pub bipartition: Option<(Vec<String>, Vec<String>)>,
}

impl CurveDiagram {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let mut index = BTreeMap::new();
        for (i, n) in names.iter().enumerate() {
            let n = n.as_ref();
            if n.is_empty() {
                return Err(Error::InvalidDiagram("empty curve name".into()));
            }
            if index.insert(n.to_string(), i).is_some() {
                return Err(Error::InvalidDiagram(format!("duplicate curve `{n}`")));
            }
        }
        Ok(CurveDiagram {
            names: names.iter().map(|n| n.as_ref().to_string()).collect(),
            index,
            edges: Vec::new(),
            cyclic: vec![Vec::new(); names.len()],
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn edges(&self) -> &[DiagramEdge] {
        &self.edges
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownCurve(name.to_string()))
    }

    /// Neighbours of curve `i` in cyclic order.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.cyclic[i]
    }

    pub fn edge_between(&self, i: usize, j: usize) -> Option<usize> {
        self.edges
            .iter()
            .position(|e| (e.a == i && e.b == j) || (e.a == j && e.b == i))
    }

    /// `ι(i, j)` as recorded by the diagram (0 for non-adjacent curves).
    pub fn intersection(&self, i: usize, j: usize) -> i64 {
        match self.edge_between(i, j) {
            Some(k) => {
                let e = self.edges[k];
                if e.a == i {
                    e.sign as i64
                } else {
                    -(e.sign as i64)
                }
            }
            None => 0,
        }
    }

    pub fn add_edge(&mut self, a: &str, b: &str, sign: i8) -> Result<()> {
        let (i, j) = (self.index_of(a)?, self.index_of(b)?);
        if i == j {
            return Err(Error::InvalidDiagram(format!("self-intersection at `{a}`")));
        }
        if sign != 1 && sign != -1 {
            return Err(Error::InvalidDiagram(format!(
                "edge sign must be ±1, got {sign}"
            )));
        }
        if self.edge_between(i, j).is_some() {
            return Err(Error::InvalidDiagram(format!("duplicate edge `{a}`–`{b}`")));
        }
        self.edges.push(DiagramEdge { a: i, b: j, sign });
        self.cyclic[i].push(j);
        self.cyclic[j].push(i);
        Ok(())
    }

    /// Replaces the cyclic order at `curve`; `order` must list its neighbours.
    pub fn set_cyclic_order<S: AsRef<str>>(&mut self, curve: &str, order: &[S]) -> Result<()> {
        let i = self.index_of(curve)?;
        let new: Vec<usize> = order
            .iter()
            .map(|n| self.index_of(n.as_ref()))
            .collect::<Result<_>>()?;
        let mut sorted_new = new.clone();
        sorted_new.sort_unstable();
        let mut sorted_old = self.cyclic[i].clone();
        sorted_old.sort_unstable();
        if sorted_new != sorted_old {
            return Err(Error::CyclicOrder {
                curve: curve.to_string(),
                reason: format!(
                    "expected a permutation of its {} neighbours, got {} entries",
                    sorted_old.len(),
                    new.len()
                ),
            });
        }
        self.cyclic[i] = new;
        Ok(())
    }

    /// Flips the sign of the edge between two curves.
    pub fn flip_sign(&mut self, a: &str, b: &str) -> Result<()> {
        let (i, j) = (self.index_of(a)?, self.index_of(b)?);
        let k = self
            .edge_between(i, j)
            .ok_or_else(|| Error::InvalidDiagram(format!("no edge `{a}`–`{b}`")))?;
        self.edges[k].sign = -self.edges[k].sign;
        Ok(())
    }

    /// The induced diagram on the remaining curves; cyclic orders are
    /// restricted.
    pub fn without<S: AsRef<str>>(&self, removed: &[S]) -> Result<CurveDiagram> {
        let drop: BTreeSet<usize> = removed
            .iter()
            .map(|n| self.index_of(n.as_ref()))
            .collect::<Result<_>>()?;
        let keep: Vec<usize> = (0..self.len()).filter(|i| !drop.contains(i)).collect();
        let mut out = CurveDiagram::new(
            &keep
                .iter()
                .map(|&i| self.names[i].as_str())
                .collect::<Vec<_>>(),
        )?;
        for e in &self.edges {
            if !drop.contains(&e.a) && !drop.contains(&e.b) {
                out.add_edge(&self.names[e.a], &self.names[e.b], e.sign)?;
            }
        }
        for &i in &keep {
            let order: Vec<&str> = self.cyclic[i]
                .iter()
                .filter(|j| !drop.contains(j))
                .map(|&j| self.names[j].as_str())
                .collect();
            out.set_cyclic_order(&self.names[i], &order)?;
        }
        Ok(out)
    }

    pub fn validate(&self) -> DiagramReport {
        let n = self.len();
        let mut color = vec![u8::MAX; n];
        let mut bipartite = true;
        let mut reached = 0;
        if n > 0 {
            color[0] = 0;
            reached = 1;
            let mut queue = VecDeque::from([0usize]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.cyclic[u] {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[u];
                        reached += 1;
                        queue.push_back(w);
                    } else if color[w] == color[u] {
                        bipartite = false;
                    }
                }
            }
        }
        let is_connected = reached == n;
        let bipartition = (bipartite && is_connected).then(|| {
            let side = |c: u8| {
                (0..n)
                    .filter(|&i| color[i] == c)
                    .map(|i| self.names[i].clone())
                    .collect()
            };
            (side(0), side(1))
        });
        DiagramReport {
            vertices: n,
            edges: self.edges.len(),
            is_connected,
            is_tree: is_connected && self.edges.len() + 1 == n,
            bipartition,
        }
    }
}

/// A curve system whose diagram is a tree and which fills a closed surface of
/// the recorded genus, with the bipartition into horizontal and vertical
/// multicurves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleSystem {
    name: String,
    genus: usize,
    diagram: CurveDiagram,
    horizontal: Vec<bool>,
}

impl AdmissibleSystem {
    /// Validates the diagram, colors it with the first curve horizontal and
    /// checks the genus of the square-tiled surface against `genus` if given.
    pub fn new(name: &str, diagram: CurveDiagram, genus: Option<usize>) -> Result<Self> {
        let report = diagram.validate();
        let Some((a, _)) = report.bipartition.as_ref().filter(|_| report.is_tree) else {
            return Err(Error::InvalidDiagram(format!(
                "`{name}` is not a tree ({} curves, {} edges, connected: {})",
                report.vertices, report.edges, report.is_connected
            )));
        };
        if diagram.edges.is_empty() {
            return Err(Error::InvalidDiagram(format!(
                "`{name}` has no intersections and does not fill a surface"
            )));
        }
        let a: BTreeSet<&String> = a.iter().collect();
        let horizontal = diagram.names.iter().map(|n| a.contains(n)).collect();
        Self::with_bipartition(name, diagram, horizontal, genus)
    }

    fn with_bipartition(
        name: &str,
        diagram: CurveDiagram,
        horizontal: Vec<bool>,
        genus: Option<usize>,
    ) -> Result<Self> {
        let origami = build_from_diagram(&diagram, &horizontal)?;
        let computed = origami.genus();
        if let Some(declared) = genus {
            if declared != computed {
                return Err(Error::DeclaredGenus { declared, computed });
            }
        }
        Ok(AdmissibleSystem {
            name: name.to_string(),
            genus: computed,
            diagram,
            horizontal,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn diagram(&self) -> &CurveDiagram {
        &self.diagram
    }

    pub fn len(&self) -> usize {
        self.diagram.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagram.is_empty()
    }

    pub fn is_horizontal(&self, i: usize) -> bool {
        self.horizontal[i]
    }

    pub fn horizontal_flags(&self) -> &[bool] {
        &self.horizontal
    }

    pub fn multicurves(&self) -> (Vec<&str>, Vec<&str>) {
        let pick = |h: bool| {
            (0..self.len())
                .filter(|&i| self.horizontal[i] == h)
                .map(|i| self.diagram.name(i))
                .collect()
        };
        (pick(true), pick(false))
    }

    pub fn origami(&self) -> Origami {
        build_from_diagram(&self.diagram, &self.horizontal).expect("validated at construction")
    }

    pub fn homology(&self) -> Result<SystemHomology> {
        SystemHomology::new(&self.diagram)
    }

    /// The same system with one edge sign flipped (curve orientation change).
    pub fn with_flipped_sign(&self, a: &str, b: &str) -> Result<Self> {
        let mut out = self.clone();
        out.diagram.flip_sign(a, b)?;
        Ok(out)
    }

    pub fn to_document(&self) -> SystemDocument {
        let d = &self.diagram;
        let (a, b) = self.multicurves();
        SystemDocument {
            schema: Some(SYSTEM_SCHEMA.to_string()),
            name: self.name.clone(),
            genus: self.genus,
            curves: d.names.clone(),
            edges: d
                .edges
                .iter()
                .map(|e| EdgeDocument {
                    a: d.names[e.a].clone(),
                    b: d.names[e.b].clone(),
                    sign: e.sign,
                })
                .collect(),
            cyclic_orders: (0..d.len())
                .map(|i| {
                    (
                        d.names[i].clone(),
                        d.cyclic[i].iter().map(|&j| d.names[j].clone()).collect(),
                    )
                })
                .collect(),
            bipartition: Bipartition {
                a: a.into_iter().map(String::from).collect(),
                b: b.into_iter().map(String::from).collect(),
            },
        }
    }

    pub fn from_document(doc: &SystemDocument) -> Result<Self> {
        if let Some(s) = &doc.schema {
            if s != SYSTEM_SCHEMA {
                return Err(Error::Schema(format!(
                    "expected `{SYSTEM_SCHEMA}`, got `{s}`"
                )));
            }
        }
        let mut d = CurveDiagram::new(&doc.curves)?;
        for e in &doc.edges {
            d.add_edge(&e.a, &e.b, e.sign)?;
        }
        for (curve, order) in &doc.cyclic_orders {
            d.set_cyclic_order(curve, order)?;
        }
        let report = d.validate();
        if !report.is_tree {
            return Err(Error::InvalidDiagram(format!(
                "`{}` is not a tree",
                doc.name
            )));
        }
        let a: BTreeSet<&str> = doc.bipartition.a.iter().map(String::as_str).collect();
        let b: BTreeSet<&str> = doc.bipartition.b.iter().map(String::as_str).collect();
        if a.len() + b.len() != d.len() || !a.is_disjoint(&b) {
            return Err(Error::Schema(
                "bipartition must partition the curves".into(),
            ));
        }
        let horizontal: Vec<bool> = d.names.iter().map(|n| a.contains(n.as_str())).collect();
        for e in &d.edges {
            if horizontal[e.a] == horizontal[e.b] {
                return Err(Error::Schema(format!(
                    "`{}` and `{}` intersect but lie in the same multicurve",
                    d.names[e.a], d.names[e.b]
                )));
            }
        }
        Self::with_bipartition(&doc.name, d, horizontal, Some(doc.genus))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SystemDocument =
            serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        Self::from_document(&doc)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDocument {
    pub a: String,
    pub b: String,
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bipartition {
    #[serde(rename = "A")]
    pub a: Vec<String>,
    #[serde(rename = "B")]
    pub b: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub name: String,
    pub genus: usize,
    pub curves: Vec<String>,
    pub edges: Vec<EdgeDocument>,
    #[serde(default)]
    pub cyclic_orders: BTreeMap<String, Vec<String>>,
    pub bipartition: Bipartition,
}

/// The named curve systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    /// Chain of `n` curves.
    Chain(usize),
    C(usize),
    V(usize),
    S(usize),
    U(usize),
    E6,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresetInfo {
    pub family: &'static str,
    pub size: &'static str,
    pub genus: &'static str,
    pub valid: &'static str,
    pub shape: &'static str,
}

pub fn preset_table() -> Vec<PresetInfo> {
    vec![
        PresetInfo {
            family: "A_n",
            size: "n",
            genus: "floor(n/2)",
            valid: "n >= 2",
            shape: "chain",
        },
        PresetInfo {
            family: "C_g",
            size: "2g+1",
            genus: "g",
            valid: "g >= 3",
            shape: "S_g without d3..d(g-1)",
        },
        PresetInfo {
            family: "V_g",
            size: "2g+1",
            genus: "g",
            valid: "g >= 3",
            shape: "U_g without d2..d(g-2)",
        },
        PresetInfo {
            family: "S_g",
            size: "3g-2",
            genus: "g",
            valid: "g >= 2",
            shape: "star: arms c(2k)-c(2k-1) and leaves dk on c0",
        },
        PresetInfo {
            family: "U_g",
            size: "3g-2",
            genus: "g",
            valid: "g >= 3",
            shape: "c0 with arm c5-c4-c3-c2-c1, arms c(2k)-c(2k+1), leaves dk",
        },
        PresetInfo {
            family: "E6",
            size: "6",
            genus: "3",
            valid: "g = 3",
            shape: "S_3 without d2",
        },
    ]
}

impl Preset {
    /// Parses a family name (`C`, `V`, `S`, `U`, `E6`, `A<n>` or `A_<n>`)
    /// together with the genus where the family needs one.
    pub fn parse(name: &str, genus: Option<usize>) -> Result<Preset> {
        let trimmed = name.trim();
        let need = |g: Option<usize>| {
            g.ok_or_else(|| Error::UnknownPreset(format!("{trimmed} (genus required)")))
        };
        let p = match trimmed {
            "C" | "C_g" => Preset::C(need(genus)?),
            "V" | "V_g" => Preset::V(need(genus)?),
            "S" | "S_g" => Preset::S(need(genus)?),
            "U" | "U_g" => Preset::U(need(genus)?),
            "E6" | "E_6" => {
                if let Some(g) = genus.filter(|&g| g != 3) {
                    return Err(Error::GenusOutOfRange {
                        name: "E6".into(),
                        genus: g,
                        range: "g = 3",
                    });
                }
                Preset::E6
            }
            s if s.starts_with('A') => {
                let n: usize = s[1..]
                    .trim_start_matches('_')
                    .parse()
                    .map_err(|_| Error::UnknownPreset(s.to_string()))?;
                Preset::Chain(n)
            }
            other => return Err(Error::UnknownPreset(other.to_string())),
        };
        p.check_range()?;
        Ok(p)
    }

    fn check_range(self) -> Result<()> {
        let (name, g, ok, range) = match self {
            Preset::Chain(n) => ("A_n", n, n >= 2, "n >= 2"),
            Preset::C(g) => ("C_g", g, g >= 3, "g >= 3"),
            Preset::V(g) => ("V_g", g, g >= 3, "g >= 3"),
            Preset::S(g) => ("S_g", g, g >= 2, "g >= 2"),
            Preset::U(g) => ("U_g", g, g >= 3, "g >= 3"),
            Preset::E6 => return Ok(()),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::GenusOutOfRange {
                name: name.into(),
                genus: g,
                range,
            })
        }
    }

    pub fn name(self) -> String {
        match self {
            Preset::Chain(n) => format!("A{n}"),
            Preset::C(g) => format!("C{g}"),
            Preset::V(g) => format!("V{g}"),
            Preset::S(g) => format!("S{g}"),
            Preset::U(g) => format!("U{g}"),
            Preset::E6 => "E6".into(),
        }
    }

    pub fn expected_genus(self) -> usize {
        match self {
            Preset::Chain(n) => n / 2,
            Preset::C(g) | Preset::V(g) | Preset::S(g) | Preset::U(g) => g,
            Preset::E6 => 3,
        }
    }

    pub fn expected_size(self) -> usize {
        match self {
            Preset::Chain(n) => n,
            Preset::C(g) | Preset::V(g) => 2 * g + 1,
            Preset::S(g) | Preset::U(g) => 3 * g - 2,
            Preset::E6 => 6,
        }
    }

    pub fn diagram(self) -> Result<CurveDiagram> {
        self.check_range()?;
        match self {
            Preset::Chain(n) => chain_diagram(n),
            Preset::S(g) => star_diagram(g),
            Preset::C(g) => {
                let drop: Vec<String> = (3..g).map(|k| format!("d{k}")).collect();
                star_diagram(g)?.without(&drop)
            }
            Preset::E6 => star_diagram(3)?.without(&["d2"]),
            Preset::U(g) => long_arm_diagram(g),
            Preset::V(g) => {
                let drop: Vec<String> = (2..g - 1).map(|k| format!("d{k}")).collect();
                long_arm_diagram(g)?.without(&drop)
            }
        }
    }

    pub fn build(self) -> Result<AdmissibleSystem> {
        let system =
            AdmissibleSystem::new(&self.name(), self.diagram()?, Some(self.expected_genus()))?;
        debug_assert_eq!(system.len(), self.expected_size());
        Ok(system)
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    /// Accepts `C4`, `V5`, `S3`, `U4`, `E6`, `A4` and the underscored forms.
    fn from_str(s: &str) -> Result<Preset> {
        let s = s.trim();
        if matches!(s, "E6" | "E_6") || s.starts_with('A') {
            return Preset::parse(s, None);
        }
        let (head, tail) = s.split_at(s.chars().next().map_or(0, char::len_utf8));
        let g: usize = tail
            .trim_start_matches('_')
            .parse()
            .map_err(|_| Error::UnknownPreset(s.to_string()))?;
        Preset::parse(head, Some(g))
    }
}

/// Builds a named system.
pub fn preset(name: &str, genus: Option<usize>) -> Result<AdmissibleSystem> {
    Preset::parse(name, genus)?.build()
}

fn chain_diagram(n: usize) -> Result<CurveDiagram> {
    let names: Vec<String> = (1..=n).map(|i| format!("c{i}")).collect();
    let mut d = CurveDiagram::new(&names)?;
    for w in names.windows(2) {
        d.add_edge(&w[0], &w[1], 1)?;
    }
    Ok(d)
}

/// `c0` with arms `c(2k)–c(2k−1)` and leaves `dk`, `k = 1..g−1`; the cyclic
/// order at `c0` alternates arms and leaves.
fn star_diagram(g: usize) -> Result<CurveDiagram> {
    let mut names = vec!["c0".to_string()];
    names.extend((1..=2 * g - 2).map(|i| format!("c{i}")));
    names.extend((1..g).map(|k| format!("d{k}")));
    let mut d = CurveDiagram::new(&names)?;
    let mut order = Vec::new();
    for k in 1..g {
        d.add_edge("c0", &format!("c{}", 2 * k), 1)?;
        d.add_edge(&format!("c{}", 2 * k), &format!("c{}", 2 * k - 1), 1)?;
        d.add_edge("c0", &format!("d{k}"), 1)?;
        order.push(format!("c{}", 2 * k));
        order.push(format!("d{k}"));
    }
    d.set_cyclic_order("c0", &order)?;
    Ok(d)
}

/// `c0` with the arm `c5–c4–c3–c2–c1`, arms `c(2k)–c(2k+1)` for `k = 3..g−1`
/// and leaves `d1..d(g−2)`; the order at `c0` alternates arms and leaves.
fn long_arm_diagram(g: usize) -> Result<CurveDiagram> {
    let mut names: Vec<String> = (0..2 * g).map(|i| format!("c{i}")).collect();
    names.extend((1..g - 1).map(|k| format!("d{k}")));
    let mut d = CurveDiagram::new(&names)?;
    d.add_edge("c0", "c5", 1)?;
    for i in (1..5).rev() {
        d.add_edge(&format!("c{}", i + 1), &format!("c{i}"), 1)?;
    }
    let mut arms = vec!["c5".to_string()];
    for k in 3..g {
        d.add_edge("c0", &format!("c{}", 2 * k), 1)?;
        d.add_edge(&format!("c{}", 2 * k), &format!("c{}", 2 * k + 1), 1)?;
        arms.push(format!("c{}", 2 * k));
    }
    let mut order = Vec::new();
    for (k, arm) in arms.into_iter().enumerate() {
        d.add_edge("c0", &format!("d{}", k + 1), 1)?;
        order.push(arm);
        order.push(format!("d{}", k + 1));
    }
    d.set_cyclic_order("c0", &order)?;
    Ok(d)
}

/// Integral homology classes of the curves of a filling tree system, in a
/// symplectic basis of the closed surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemHomology {
    genus: usize,
    names: Vec<String>,
    gram: Vec<Vec<i64>>,
    /// `basis[j]`: the basis vector `f_j` as a combination of curves.
    basis: Vec<Vec<i64>>,
    classes: Vec<Vec<i64>>,
}

impl SystemHomology {
    pub fn new(d: &CurveDiagram) -> Result<Self> {
        let n = d.len();
        let gram: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| d.intersection(i, j)).collect())
            .collect();
        let red = alternating_normal_form(&gram);
        if let Some(&bad) = red.divisors.iter().find(|&&x| x != 1) {
            return Err(Error::InvalidDiagram(format!(
                "intersection form has elementary divisor {bad}; the curves do not fill a closed surface"
            )));
        }
        let genus = red.divisors.len();
        let classes = red.coords.iter().map(|c| c[..2 * genus].to_vec()).collect();
        Ok(SystemHomology {
            genus,
            names: d.names().to_vec(),
            gram,
            basis: red.basis,
            classes,
        })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn integral(&self, name: &str) -> Result<&[i64]> {
        let i = self
            .names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownCurve(name.to_string()))?;
        Ok(&self.classes[i])
    }

    pub fn classes(&self, modulus: Modulus) -> Vec<BaseClass> {
        self.classes
            .iter()
            .map(|c| BaseClass::new(modulus, c).expect("even length"))
            .collect()
    }

    pub fn class(&self, name: &str, modulus: Modulus) -> Result<BaseClass> {
        BaseClass::new(modulus, self.integral(name)?)
    }

    /// The class `x` with `ι(x, cᵢ) = tᵢ` for the listed curves and
    /// `ι(x, c) = 0` for every other curve of the system.
    pub fn solve_pairings(&self, prescribed: &[(&str, i64)]) -> Result<Vec<i64>> {
        let n = self.names.len();
        let mut t = vec![0i64; n];
        for &(name, value) in prescribed {
            let i = self
                .names
                .iter()
                .position(|x| x == name)
                .ok_or_else(|| Error::UnknownCurve(name.to_string()))?;
            t[i] = value;
        }
        let pair_f: Vec<i64> = self
            .basis
            .iter()
            .map(|f| f.iter().zip(&t).map(|(a, b)| a * b).sum())
            .collect();
        if pair_f[2 * self.genus..].iter().any(|&x| x != 0) {
            return Err(Error::NoSuchClass);
        }
        let mut x = vec![0i64; 2 * self.genus];
        for s in 0..self.genus {
            x[2 * s] = pair_f[2 * s + 1];
            x[2 * s + 1] = -pair_f[2 * s];
        }
        for (c, &ti) in self.classes.iter().zip(&t) {
            if integral_form(&x, c) != ti {
                return Err(Error::NoSuchClass);
            }
        }
        Ok(x)
    }

    /// Named classes over `ℤ/r`: all curves of the system plus extras.
    pub fn table(&self, modulus: Modulus) -> ClassTable {
        let mut t = ClassTable::new(self.genus, modulus);
        for (n, c) in self.names.iter().zip(&self.classes) {
            t.insert(n, c).expect("same genus");
        }
        t
    }
}

/// `ι(x, y)` over ℤ.
pub fn integral_form(x: &[i64], y: &[i64]) -> i64 {
    (0..x.len() / 2)
        .map(|i| x[2 * i] * y[2 * i + 1] - x[2 * i + 1] * y[2 * i])
        .sum()
}

/// Named base classes, used to evaluate words in twists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassTable {
    genus: usize,
    modulus: Modulus,
    entries: BTreeMap<String, BaseClass>,
}

impl ClassTable {
    pub fn new(genus: usize, modulus: Modulus) -> Self {
        ClassTable {
            genus,
            modulus,
            entries: BTreeMap::new(),
        }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn insert(&mut self, name: &str, coords: &[i64]) -> Result<()> {
        if coords.len() != 2 * self.genus {
            return Err(Error::GenusMismatch {
                left: self.genus,
                right: coords.len() / 2,
            });
        }
        self.entries
            .insert(name.to_string(), BaseClass::new(self.modulus, coords)?);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Result<&BaseClass> {
        self.entries
            .get(name)
            .ok_or_else(|| Error::UnknownCurve(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }
}

/// Lifted classes of the system curves.
///
/// Each curve is a flat cylinder core on the square-tiled surface, so its
/// tangent lift is the horizontal or vertical straight lift; expressed in the
/// reference splitting of the computed symplectic basis its offset has parity
/// `1 + q₀(v)` (see [`curve_lift`]). Requires even `r`.
pub fn system_lifts(s: &AdmissibleSystem, modulus: Modulus) -> Result<Vec<LiftedClass>> {
    if !modulus.is_even() {
        return Err(Error::OddModulus(modulus.get()));
    }
    let h = s.homology()?;
    Ok(h.classes(modulus).iter().map(curve_lift).collect())
}
