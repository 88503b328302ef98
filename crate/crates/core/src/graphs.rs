//! Mod-2 homological shadows of curve graphs and BFS connectivity.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use petgraph::dot::{Config, Dot};
use petgraph::graph::UnGraph;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::packed_form;
use crate::error::{Error, Result};
use crate::modring::{intersection_unchecked, BaseClass, Modulus};
use crate::spin::{Parity, SpinStructure};
use crate::tangent_lift::curve_offset_parity;

pub const GRAPH_SCHEMA: &str = "spincalc-graph/1";

/// Default cap on the number of vertices of a shadow.
pub const DEFAULT_VERTEX_BOUND: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ShadowKind {
    CG0,
    CG1,
    CG1plus,
    CG2plus,
}

impl fmt::Display for ShadowKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ShadowKind::CG0 => "CG0",
            ShadowKind::CG1 => "CG1",
            ShadowKind::CG1plus => "CG1plus",
            ShadowKind::CG2plus => "CG2plus",
        })
    }
}

impl FromStr for ShadowKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "CG0" | "cg0" => Ok(ShadowKind::CG0),
            "CG1" | "cg1" => Ok(ShadowKind::CG1),
            "CG1plus" | "cg1plus" | "CG1+" => Ok(ShadowKind::CG1plus),
            "CG2plus" | "cg2plus" | "CG2+" => Ok(ShadowKind::CG2plus),
            other => Err(Error::UnsupportedShadow(format!("unknown graph `{other}`"))),
        }
    }
}

impl ShadowKind {
    pub fn modulus(self) -> u32 {
        match self {
            ShadowKind::CG2plus => 4,
            _ => 2,
        }
    }

    fn statement(self) -> &'static str {
        match self {
            ShadowKind::CG0 => "connectivity of the graph of nonseparating curves with spin value 0",
            ShadowKind::CG1 => "connectivity of the graph of nonseparating curves with spin value ±1",
            ShadowKind::CG1plus => {
                "connectivity of the graph of disjoint pairs of spin value ±1 curves with connected complement"
            }
            ShadowKind::CG2plus => {
                "connectivity of the graph of pairs (x, y) with spin values 2 and 0 meeting once"
            }
        }
    }

    fn caveats(self) -> Vec<String> {
        let mut c = vec![
            "a quotient of a graph can be connected while the graph is not; connectivity of the shadow is a necessary condition only".to_string(),
        ];
        match self {
            ShadowKind::CG1 | ShadowKind::CG1plus => c.push(
                "distinct disjoint curves in one class are invisible: the CG1 and CG1plus shadows coincide".into(),
            ),
            ShadowKind::CG2plus => c.push(
                "vertices are pairs of lifted classes with mod-2 consistent offsets; realizability by embedded curves is not checked for r = 4".into(),
            ),
            ShadowKind::CG0 => {}
        }
        c
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShadowVertex {
    /// A class in `F₂^{2g}`, bit-packed.
    Class(u64),
    /// A pair of classes mod 4 meeting once.
    Pair(BaseClass, BaseClass),
}

impl fmt::Display for ShadowVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShadowVertex::Class(v) => write!(f, "{v:b}"),
            ShadowVertex::Pair(x, y) => write!(f, "{x}|{y}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ShadowGraph {
    kind: ShadowKind,
    structure: SpinStructure,
    vertices: Vec<ShadowVertex>,
    adjacency: Vec<Vec<usize>>,
}

fn class_from_index(genus: usize, modulus: Modulus, mut idx: usize) -> BaseClass {
    let r = modulus.get() as usize;
    let mut c = vec![0i64; 2 * genus];
    for x in c.iter_mut().rev() {
        *x = (idx % r) as i64;
        idx /= r;
    }
    BaseClass::new(modulus, &c).expect("even length")
}

/// `φ` of the curve-like lift of a class mod 4.
fn lifted_value(phi: &SpinStructure, v: &BaseClass) -> u32 {
    let m = phi.modulus();
    v.coords()
        .iter()
        .zip(phi.values())
        .fold(curve_offset_parity(v), |acc, (&a, &b)| {
            m.add(acc, m.mul(a, b))
        })
}

pub fn build_shadow(kind: ShadowKind, phi: &SpinStructure, bound: usize) -> Result<ShadowGraph> {
    let g = phi.genus();
    if phi.modulus().get() != kind.modulus() {
        return Err(Error::UnsupportedShadow(format!(
            "{kind} needs r = {}, got r = {}",
            kind.modulus(),
            phi.modulus()
        )));
    }
    if 2 * g > 24 {
        return Err(Error::BoundExceeded {
            what: "shadow ambient space",
            size: 1u128 << (2 * g),
            bound: 1 << 24,
        });
    }
    let vertices: Vec<ShadowVertex> = match kind {
        ShadowKind::CG0 | ShadowKind::CG1 | ShadowKind::CG1plus => {
            // curve value φ(c) = q(v) + 1
            let q = phi.quadratic_form()?;
            let want = if kind == ShadowKind::CG0 { 1 } else { 0 };
            (1..1u64 << (2 * g))
                .filter(|&v| q.value_packed(v) == want)
                .map(ShadowVertex::Class)
                .collect()
        }
        ShadowKind::CG2plus => {
            let m = phi.modulus();
            let total = 1usize << (4 * g);
            let classes: Vec<BaseClass> = (0..total)
                .map(|i| class_from_index(g, m, i))
                .filter(BaseClass::is_primitive)
                .collect();
            let xs: Vec<&BaseClass> = classes
                .iter()
                .filter(|c| lifted_value(phi, c) == 2)
                .collect();
            let ys: Vec<&BaseClass> = classes
                .iter()
                .filter(|c| lifted_value(phi, c) == 0)
                .collect();
            let mut out = Vec::new();
            for x in &xs {
                for y in &ys {
                    if intersection_unchecked(x, y) == 1 {
                        out.push(ShadowVertex::Pair((*x).clone(), (*y).clone()));
                        if out.len() > bound {
                            return Err(Error::BoundExceeded {
                                what: "shadow vertices",
                                size: out.len() as u128,
                                bound: bound as u128,
                            });
                        }
                    }
                }
            }
            out
        }
    };
    if vertices.len() > bound {
        return Err(Error::BoundExceeded {
            what: "shadow vertices",
            size: vertices.len() as u128,
            bound: bound as u128,
        });
    }
    let adjacent = |a: &ShadowVertex, b: &ShadowVertex| match (a, b) {
        (ShadowVertex::Class(v), ShadowVertex::Class(w)) => v != w && packed_form(*v, *w) == 0,
        (ShadowVertex::Pair(x, y), ShadowVertex::Pair(u, w)) => [x, y]
            .iter()
            .all(|p| [u, w].iter().all(|q| intersection_unchecked(p, q) == 0)),
        _ => false,
    };
    let adjacency: Vec<Vec<usize>> = (0..vertices.len())
        .into_par_iter()
        .map(|i| {
            (0..vertices.len())
                .filter(|&j| j != i && adjacent(&vertices[i], &vertices[j]))
                .collect()
        })
        .collect();
    Ok(ShadowGraph {
        kind,
        structure: phi.clone(),
        vertices,
        adjacency,
    })
}

impl ShadowGraph {
    pub fn kind(&self) -> ShadowKind {
        self.kind
    }

    pub fn genus(&self) -> usize {
        self.structure.genus()
    }

    pub fn structure(&self) -> &SpinStructure {
        &self.structure
    }

    pub fn vertices(&self) -> &[ShadowVertex] {
        &self.vertices
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Builds a graph from explicit adjacency, for tests and small examples.
    pub fn from_adjacency(
        kind: ShadowKind,
        structure: SpinStructure,
        adjacency: Vec<Vec<usize>>,
    ) -> Self {
        let vertices = (0..adjacency.len() as u64)
            .map(ShadowVertex::Class)
            .collect();
        ShadowGraph {
            kind,
            structure,
            vertices,
            adjacency,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSummary {
    pub count: usize,
    /// Sizes in descending order.
    pub sizes: Vec<usize>,
    pub largest_diameter: usize,
    #[serde(skip)]
    pub partition: Vec<Vec<usize>>,
}

fn bfs_depths(graph: &ShadowGraph, s: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; graph.vertices.len()];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(x) = queue.pop_front() {
        for &y in &graph.adjacency[x] {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    dist
}

pub fn components(graph: &ShadowGraph) -> ComponentSummary {
    let n = graph.vertices.len();
    let mut seen = vec![false; n];
    let mut partition = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let d = bfs_depths(graph, s);
        let comp: Vec<usize> = (0..n).filter(|&x| d[x] != usize::MAX).collect();
        for &x in &comp {
            seen[x] = true;
        }
        partition.push(comp);
    }
    partition.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    let largest_diameter = partition.first().map_or(0, |comp| {
        comp.par_iter()
            .map(|&s| {
                bfs_depths(graph, s)
                    .into_iter()
                    .filter(|&d| d != usize::MAX)
                    .max()
                    .unwrap_or(0)
            })
            .max()
            .unwrap_or(0)
    });
    ComponentSummary {
        count: partition.len(),
        sizes: partition.iter().map(Vec::len).collect(),
        largest_diameter,
        partition,
    }
}

pub fn export_dot(graph: &ShadowGraph, bound: usize) -> Result<String> {
    if graph.vertices.len() > bound {
        return Err(Error::BoundExceeded {
            what: "DOT export vertices",
            size: graph.vertices.len() as u128,
            bound: bound as u128,
        });
    }
    let mut pg = UnGraph::<String, &str>::with_capacity(graph.vertices.len(), graph.edge_count());
    let nodes: Vec<_> = graph
        .vertices
        .iter()
        .map(|v| pg.add_node(v.to_string()))
        .collect();
    for (i, adj) in graph.adjacency.iter().enumerate() {
        for &j in adj.iter().filter(|&&j| j > i) {
            pg.add_edge(nodes[i], nodes[j], "");
        }
    }
    Ok(format!("{}", Dot::with_config(&pg, &[Config::EdgeNoLabel])))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphReport {
    pub schema: String,
    pub kind: ShadowKind,
    pub genus: usize,
    pub modulus: u32,
    pub structure: Vec<u32>,
    pub parity: Parity,
    pub vertices: usize,
    pub edges: usize,
    pub components: ComponentSummary,
    pub connected: bool,
    pub statement: String,
    pub caveats: Vec<String>,
}

impl GraphReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

pub fn graph_report(graph: &ShadowGraph) -> Result<GraphReport> {
    let comps = components(graph);
    let connected = comps.count == 1;
    let statement = format!(
        "{} {}",
        if connected {
            "consistent with"
        } else {
            "shadow is disconnected; no conclusion about"
        },
        graph.kind.statement()
    );
    Ok(GraphReport {
        schema: GRAPH_SCHEMA.into(),
        kind: graph.kind,
        genus: graph.genus(),
        modulus: graph.structure.modulus().get(),
        structure: graph.structure.values().to_vec(),
        parity: graph.structure.reduce(2)?.arf()?,
        vertices: graph.vertices.len(),
        edges: graph.edge_count(),
        components: comps,
        connected,
        statement,
        caveats: graph.kind.caveats(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::transvection_perm;

    fn structure(g: usize, p: Parity) -> SpinStructure {
        SpinStructure::standard(g, p)
    }

    #[test]
    fn genus_two_odd_cg1_has_no_edges() {
        let s = build_shadow(ShadowKind::CG1, &structure(2, Parity::Odd), 1000).unwrap();
        assert_eq!(s.vertices().len(), 5);
        assert_eq!(s.edge_count(), 0);
    }

    #[test]
    fn genus_three_shadows_connected() {
        for kind in [ShadowKind::CG0, ShadowKind::CG1plus] {
            let s = build_shadow(kind, &structure(3, Parity::Odd), 1000).unwrap();
            assert_eq!(components(&s).count, 1, "{kind}");
        }
    }

    #[test]
    fn cg1_and_cg1plus_coincide() {
        let phi = structure(3, Parity::Even);
        let a = build_shadow(ShadowKind::CG1, &phi, 1000).unwrap();
        let b = build_shadow(ShadowKind::CG1plus, &phi, 1000).unwrap();
        assert_eq!(a.adjacency, b.adjacency);
    }

    #[test]
    fn modulus_checked() {
        assert!(matches!(
            build_shadow(ShadowKind::CG2plus, &structure(2, Parity::Odd), 10),
            Err(Error::UnsupportedShadow(_))
        ));
        let four = SpinStructure::new(Modulus::new(4).unwrap(), &[1, 1, 1, 1]).unwrap();
        assert!(matches!(
            build_shadow(ShadowKind::CG0, &four, 10),
            Err(Error::UnsupportedShadow(_))
        ));
    }

    #[test]
    fn cg2plus_small() {
        let phi = SpinStructure::new(Modulus::new(4).unwrap(), &[0, 1, 1, 1]).unwrap();
        let s = build_shadow(ShadowKind::CG2plus, &phi, DEFAULT_VERTEX_BOUND).unwrap();
        assert!(!s.vertices().is_empty());
        for v in s.vertices() {
            let ShadowVertex::Pair(x, y) = v else {
                panic!()
            };
            assert_eq!(lifted_value(&phi, x), 2);
            assert_eq!(lifted_value(&phi, y), 0);
            assert_eq!(intersection_unchecked(x, y), 1);
        }
        assert!(matches!(
            build_shadow(ShadowKind::CG2plus, &phi, 10),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn component_examples() {
        let phi = structure(1, Parity::Even);
        let complete = ShadowGraph::from_adjacency(
            ShadowKind::CG0,
            phi.clone(),
            vec![vec![1, 2], vec![0, 2], vec![0, 1]],
        );
        let c = components(&complete);
        assert_eq!((c.count, c.largest_diameter), (1, 1));
        let edgeless = ShadowGraph::from_adjacency(ShadowKind::CG0, phi, vec![vec![]; 4]);
        assert_eq!(components(&edgeless).count, 4);
    }

    #[test]
    fn dot_export() {
        let phi = structure(1, Parity::Even);
        let empty = ShadowGraph::from_adjacency(ShadowKind::CG0, phi.clone(), vec![]);
        assert_eq!(export_dot(&empty, 10).unwrap().trim(), "graph {\n}");
        let one = ShadowGraph::from_adjacency(ShadowKind::CG0, phi, vec![vec![1], vec![0]]);
        let text = export_dot(&one, 10).unwrap();
        assert_eq!(text.lines().filter(|l| l.contains("--")).count(), 1);
        assert_eq!(text.lines().filter(|l| l.contains("label")).count(), 2);
        assert!(export_dot(&one, 1).is_err());
    }

    #[test]
    fn form_preserving_transvections_are_automorphisms() {
        let phi = structure(3, Parity::Odd);
        let s = build_shadow(ShadowKind::CG0, &phi, 1000).unwrap();
        let index: std::collections::HashMap<u64, usize> = s
            .vertices()
            .iter()
            .enumerate()
            .map(|(i, v)| match v {
                ShadowVertex::Class(c) => (*c, i),
                _ => unreachable!(),
            })
            .collect();
        // T_c fixes the form exactly when φ(c) = 0
        for &c in index.keys() {
            let t = transvection_perm(3, c);
            for (i, v) in s.vertices().iter().enumerate() {
                let ShadowVertex::Class(x) = v else {
                    unreachable!()
                };
                let img = index[&(t.apply(*x as usize - 1) as u64 + 1)];
                let mut expected: Vec<usize> = s
                    .neighbors(i)
                    .iter()
                    .map(|&j| match &s.vertices()[j] {
                        ShadowVertex::Class(y) => index[&(t.apply(*y as usize - 1) as u64 + 1)],
                        _ => unreachable!(),
                    })
                    .collect();
                expected.sort_unstable();
                assert_eq!(s.neighbors(img), expected.as_slice());
            }
        }
    }

    #[test]
    fn report_wording() {
        let s = build_shadow(ShadowKind::CG0, &structure(3, Parity::Even), 1000).unwrap();
        let r = graph_report(&s).unwrap();
        assert!(r.connected);
        assert!(r.statement.starts_with("consistent with"));
        assert!(!r.to_json().contains("proves"));
    }
}
