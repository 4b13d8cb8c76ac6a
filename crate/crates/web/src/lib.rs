//! Browser bindings: generate a graph, inspect it, and draw a collection.
//! Everything takes and returns plain strings so the functions also run
//! natively.

use unbent::collections::{collection_from_forests, schnyder_collection, two_forest_partition, UnbentCollection};
use unbent::{approx, cubic, format, generators, oracle, ortho, PlaneGraph};
use wasm_bindgen::prelude::*;

fn parse(text: &str) -> Result<PlaneGraph, String> {
    format::parse(text).map_err(|e| e.to_string())
}

/// A random plane 4-graph in the text format; `cubic` asks for a
/// triconnected cubic graph with about `n` vertices instead.
#[wasm_bindgen]
pub fn random_graph(seed: u32, n: u32, cubic: bool) -> Result<String, String> {
    let g = if cubic {
        generators::random_triconnected_cubic(seed as u64, (n as usize).max(4) / 2 + 2)
    } else {
        generators::random_plane_4graph(seed as u64, (n as usize).max(3))
    };
    g.map(|g| format::serialize(&g)).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn fixture(name: &str) -> Result<String, String> {
    generators::fixtures()
        .into_iter()
        .find(|(n, _)| n == name)
        .map(|(_, g)| format::serialize(&g))
        .ok_or_else(|| format!("unknown fixture `{name}`"))
}

#[wasm_bindgen]
pub fn fixture_names() -> String {
    generators::fixtures().into_iter().map(|(n, _)| n).collect::<Vec<_>>().join(" ")
}

/// Counts, the single-drawing minimum and the cubic bound when it applies.
#[wasm_bindgen]
pub fn graph_stats(text: &str) -> Result<String, String> {
    let g = parse(text)?;
    let mut out = format!(
        "vertices {}\nedges {}\nfaces {}\nmin_bends_one_drawing {}\n",
        g.vertex_count(),
        g.edge_count(),
        g.face_count(),
        ortho::min_bend_representation(&g).bend_count()
    );
    if cubic::check_cubic_triconnected(&g).is_ok() {
        out.push_str(&cubic::analyze(&g).map_err(|e| e.to_string())?.accounting());
    }
    Ok(out)
}

fn build(g: &PlaneGraph, strategy: &str) -> Result<UnbentCollection, String> {
    let c = match strategy {
        "schnyder" => schnyder_collection(g),
        "forests" => {
            let forests = two_forest_partition(g).ok_or("no partition into two forests")?;
            collection_from_forests(g, &forests).map_err(|e| e.to_string())?
        }
        "approx3" => approx::approx3_collection(g).map_err(|e| e.to_string())?,
        "cubic" => cubic::cubic_collection(g).map_err(|e| e.to_string())?,
        "oracle" => oracle::exact_tbn(g, 3).map_err(|e| e.to_string())?.collection.ok_or("no witness")?,
        other => return Err(format!("unknown strategy `{other}`")),
    };
    c.verify(g)?;
    Ok(c)
}

/// One SVG per drawing, separated by blank lines, after a one-line summary.
#[wasm_bindgen]
pub fn collection_svgs(text: &str, strategy: &str) -> Result<String, String> {
    let g = parse(text)?;
    let c = build(&g, strategy)?;
    let per: Vec<String> = c.per_drawing_bends().iter().map(|b| b.to_string()).collect();
    let mut out = format!("size {} total_bends {} per_drawing {}\n", c.size(), c.total_bends(), per.join(" "));
    for d in &c.drawings {
        out.push('\n');
        out.push_str(&ortho::render_svg(&d.drawing, &d.straight));
        out.push('\n');
    }
    Ok(out)
}
