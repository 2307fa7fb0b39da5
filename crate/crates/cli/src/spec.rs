//! Graph descriptions accepted on the command line and over HTTP.

use anyhow::{bail, ensure, Context};
use nimors::graph::{families, MAX_VERTICES};
use nimors::{graph6, Graph};
use serde::{Deserialize, Serialize};

/// JSON forms: `{"graph6": "C~"}`, `{"edge_list": {"n": 3, "edges": [[0, 1], [1, 2]]}}`,
/// `{"family": {"name": "cycle", "args": [5]}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum GraphSpec {
    Graph6(String),
    EdgeList(EdgeList),
    Family(Family),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeList {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Family {
    pub name: String,
    #[serde(default)]
    pub args: Vec<usize>,
}

pub const FAMILIES: &str = "cycle K, path N, star LEAVES, complete N, complete_bipartite P Q, \
fused_cycle P Q, petersen, prism, triangle_pendant";

impl GraphSpec {
    pub fn resolve(&self) -> anyhow::Result<Graph> {
        match self {
            GraphSpec::Graph6(text) => Ok(graph6::decode(text.trim())?),
            GraphSpec::EdgeList(list) => {
                ensure!(list.n <= MAX_VERTICES, "at most {MAX_VERTICES} vertices");
                Ok(Graph::from_edges(list.n, list.edges.iter().copied())?)
            }
            GraphSpec::Family(f) => family(&f.name, &f.args),
        }
    }
}

fn family(name: &str, args: &[usize]) -> anyhow::Result<Graph> {
    let want = |k: usize| -> anyhow::Result<()> {
        ensure!(args.len() == k, "family {name} takes {k} argument(s), got {}", args.len());
        Ok(())
    };
    let fits = |n: usize| -> anyhow::Result<()> {
        ensure!(n <= MAX_VERTICES, "{name}: {n} vertices, at most {MAX_VERTICES} supported");
        Ok(())
    };
    let g = match name {
        "cycle" => {
            want(1)?;
            ensure!(args[0] >= 3, "cycle needs at least 3 vertices");
            fits(args[0])?;
            families::cycle(args[0])
        }
        "path" => {
            want(1)?;
            fits(args[0])?;
            families::path(args[0])
        }
        "star" => {
            want(1)?;
            fits(args[0].saturating_add(1))?;
            families::star(args[0])
        }
        "complete" => {
            want(1)?;
            fits(args[0])?;
            families::complete(args[0])
        }
        "complete_bipartite" => {
            want(2)?;
            fits(args[0].saturating_add(args[1]))?;
            families::complete_bipartite(args[0], args[1])
        }
        "fused_cycle" => {
            want(2)?;
            ensure!(args[0] >= 3 && args[1] >= 3, "fused_cycle needs p, q >= 3");
            fits(args[0].saturating_add(args[1]) - 2)?;
            families::fused_cycle(args[0], args[1])
        }
        "petersen" => {
            want(0)?;
            families::petersen()
        }
        "prism" => {
            want(0)?;
            families::triangular_prism()
        }
        "triangle_pendant" => {
            want(0)?;
            families::triangle_pendant()
        }
        other => bail!("unknown family {other:?}; known: {FAMILIES}"),
    };
    Ok(g)
}

/// Parses `0-1,1-2,2-0` (whitespace or commas between edges). Without
/// `n`, the vertex count is one more than the largest endpoint.
pub fn parse_edges(text: &str, n: Option<usize>) -> anyhow::Result<GraphSpec> {
    let mut edges = Vec::new();
    for tok in text.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
        let (a, b) = tok.split_once('-').with_context(|| format!("edge {tok:?} is not of the form u-v"))?;
        let a: usize = a.parse().with_context(|| format!("bad vertex in {tok:?}"))?;
        let b: usize = b.parse().with_context(|| format!("bad vertex in {tok:?}"))?;
        edges.push((a, b));
    }
    let n = n.unwrap_or_else(|| edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0));
    Ok(GraphSpec::EdgeList(EdgeList { n, edges }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_forms() {
        let g6: GraphSpec = serde_json::from_str(r#"{"graph6": "C~"}"#).unwrap();
        assert_eq!(g6.resolve().unwrap(), families::complete(4));
        let el: GraphSpec = serde_json::from_str(r#"{"edge_list": {"n": 3, "edges": [[0,1],[1,2],[2,0]]}}"#).unwrap();
        assert_eq!(el.resolve().unwrap(), families::cycle(3));
        let fam: GraphSpec = serde_json::from_str(r#"{"family": {"name": "petersen"}}"#).unwrap();
        assert_eq!(fam.resolve().unwrap().m(), 15);
        assert!(serde_json::from_str::<GraphSpec>(r#"{"nope": 1}"#).is_err());
    }

    #[test]
    fn bad_specs() {
        let fam = |name: &str, args: Vec<usize>| GraphSpec::Family(Family { name: name.into(), args }).resolve();
        assert!(fam("cycle", vec![2]).is_err());
        assert!(fam("cycle", vec![]).is_err());
        assert!(fam("complete", vec![63]).is_err());
        assert!(fam("fused_cycle", vec![3, 2]).is_err());
        assert!(fam("dodecahedron", vec![]).is_err());
        assert_eq!(fam("fused_cycle", vec![3, 4]).unwrap().m(), 6);
        assert!(parse_edges("0-0", None).unwrap().resolve().is_err());
        assert!(parse_edges("0-1,1-x", None).is_err());
        assert!(parse_edges("0-1", Some(1)).unwrap().resolve().is_err());
    }

    #[test]
    fn edge_text() {
        let spec = parse_edges("0-1, 1-2 2-0", None).unwrap();
        assert_eq!(spec.resolve().unwrap(), families::cycle(3));
        assert_eq!(parse_edges("", None).unwrap().resolve().unwrap().n(), 0);
        assert_eq!(parse_edges("0-1", Some(4)).unwrap().resolve().unwrap().n(), 4);
    }
}
