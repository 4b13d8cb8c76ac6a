//! Unbent collections and the strategies that build them from edge
//! partitions: forests, Schnyder woods, two-forest partitions, dense-part
//! decomposition and balanced 2-edge-colorings.

mod balanced;
mod decompose;
mod forests;
mod schnyder;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, PlaneGraph};
use crate::ortho::{self, Drawing, OrthogonalRepresentation};

pub use balanced::{
    counterexample_conditions, face_demands, find_balanced_coloring, free_angle_regions, is_balanced,
    unbent_number_small, AngleAssignment, BalanceWitness, Counterexample, UN_GUARD,
};
pub use decompose::{decompose_dense, gadget_h, small_cut_edges, DenseMember};
pub use forests::two_forest_partition;
pub use schnyder::{schnyder_forests, schnyder_collection};

/// One drawing of a collection together with the edges it is asked to keep
/// straight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollectionDrawing {
    pub representation: OrthogonalRepresentation,
    pub drawing: Drawing,
    pub straight: Vec<EdgeId>,
}

impl CollectionDrawing {
    pub fn new(g: &PlaneGraph, representation: OrthogonalRepresentation, straight: Vec<EdgeId>) -> Self {
        let drawing = ortho::compact(g, &representation);
        CollectionDrawing { representation, drawing, straight }
    }

    pub fn bends(&self) -> usize {
        self.representation.bend_count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnbentCollection {
    pub drawings: Vec<CollectionDrawing>,
    /// Per edge, a drawing in which it has no bend.
    pub coverage: Vec<usize>,
}

impl UnbentCollection {
    /// Draws each class straight at minimum cost; `None` if some class
    /// cannot be kept straight. Empty classes are dropped.
    pub fn from_classes(g: &PlaneGraph, classes: &[Vec<EdgeId>]) -> Option<UnbentCollection> {
        let mut drawings = Vec::new();
        let mut coverage = vec![usize::MAX; g.edge_count()];
        for class in classes.iter().filter(|c| !c.is_empty()) {
            let rep = ortho::representation_with_straight(g, class)?;
            for &e in class {
                coverage[e] = drawings.len();
            }
            drawings.push(CollectionDrawing::new(g, rep, class.clone()));
        }
        if drawings.is_empty() {
            drawings.push(CollectionDrawing::new(g, ortho::min_bend_representation(g), Vec::new()));
        }
        Some(UnbentCollection { drawings, coverage })
    }

    pub fn size(&self) -> usize {
        self.drawings.len()
    }

    pub fn total_bends(&self) -> usize {
        self.drawings.iter().map(CollectionDrawing::bends).sum()
    }

    pub fn per_drawing_bends(&self) -> Vec<usize> {
        self.drawings.iter().map(CollectionDrawing::bends).collect()
    }

    /// Re-checks coverage, every representation and every drawing.
    pub fn verify(&self, g: &PlaneGraph) -> std::result::Result<(), String> {
        if self.coverage.len() != g.edge_count() {
            return Err("coverage does not list every edge".into());
        }
        for (e, &i) in self.coverage.iter().enumerate() {
            let Some(d) = self.drawings.get(i) else {
                return Err(format!("edge {e} is not covered"));
            };
            if !d.representation.is_straight(e) {
                return Err(format!("edge {e} is bent in its covering drawing {i}"));
            }
        }
        for (i, d) in self.drawings.iter().enumerate() {
            d.representation.validate(g).map_err(|m| format!("drawing {i}: {m}"))?;
            if let Some(&e) = d.straight.iter().find(|&&e| !d.representation.is_straight(e)) {
                return Err(format!("drawing {i}: edge {e} should be straight"));
            }
            ortho::validate_drawing(g, &d.representation, &d.drawing).map_err(|m| format!("drawing {i}: {m}"))?;
        }
        Ok(())
    }

    /// Line-oriented manifest: per drawing its bend count and straight
    /// edges, its angles (one per dart) and the bend string of every bent
    /// edge along dart `2e`; then the covering drawing of every edge.
    pub fn manifest(&self) -> String {
        let mut out = String::new();
        for (i, d) in self.drawings.iter().enumerate() {
            let edges: Vec<String> = d.straight.iter().map(|e| e.to_string()).collect();
            out.push_str(&format!("drawing {i} bends {} straight {}\n", d.bends(), edges.join(" ")));
            let angles: Vec<String> = d.representation.angles.iter().map(|a| a.to_string()).collect();
            out.push_str(&format!("angles {i} {}\n", angles.join(" ")));
            for (e, turns) in d.representation.bends.iter().enumerate().filter(|(_, t)| !t.is_empty()) {
                let s: String = turns.iter().map(|t| t.as_char()).collect();
                out.push_str(&format!("bend {i} {e} {s}\n"));
            }
        }
        for (e, i) in self.coverage.iter().enumerate() {
            out.push_str(&format!("cover {e} {i}\n"));
        }
        out
    }

    /// Reads a manifest back, recomputing the drawings from the listed
    /// representations, which must be valid. Coverage is left to `verify`.
    pub fn parse_manifest(g: &PlaneGraph, text: &str) -> Result<UnbentCollection> {
        let m = g.edge_count();
        let mut straight: Vec<Vec<EdgeId>> = Vec::new();
        let mut reps: Vec<OrthogonalRepresentation> = Vec::new();
        let mut coverage = vec![usize::MAX; m];
        let bad = |line: usize, message: &str| Error::Parse { line, message: message.to_string() };
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let toks: Vec<&str> = raw.split_whitespace().collect();
            let Some(&keyword) = toks.first() else { continue };
            let nums = |from: usize| -> Result<Vec<usize>> {
                toks[from..].iter().map(|t| t.parse().map_err(|_| bad(line, &format!("expected a number, got `{t}`")))).collect()
            };
            let index = |at: usize| -> Result<usize> {
                toks.get(at).and_then(|t| t.parse().ok()).ok_or_else(|| bad(line, "missing index"))
            };
            match keyword {
                "drawing" => {
                    if index(1)? != reps.len() || toks.get(4) != Some(&"straight") {
                        return Err(bad(line, "drawings must be listed in order as `drawing <i> bends <b> straight ...`"));
                    }
                    straight.push(nums(5)?.into_iter().filter(|&e| e < m).collect());
                    reps.push(OrthogonalRepresentation { angles: vec![0; 2 * m], bends: vec![Vec::new(); m] });
                }
                "angles" => {
                    let i = index(1)?;
                    let angles = nums(2)?;
                    let rep = reps.get_mut(i).ok_or_else(|| bad(line, "angles for an unknown drawing"))?;
                    if angles.len() != 2 * m || angles.iter().any(|&a| a > 4) {
                        return Err(bad(line, "expected one angle in 0..=4 per dart"));
                    }
                    rep.angles = angles.into_iter().map(|a| a as u8).collect();
                }
                "bend" => {
                    let (i, e) = (index(1)?, index(2)?);
                    let turns = toks.get(3).ok_or_else(|| bad(line, "missing bend string"))?;
                    let rep = reps.get_mut(i).ok_or_else(|| bad(line, "bends for an unknown drawing"))?;
                    let slot = rep.bends.get_mut(e).ok_or_else(|| bad(line, "unknown edge"))?;
                    *slot = turns
                        .chars()
                        .map(|c| match c {
                            'L' => Ok(ortho::Turn::L),
                            'R' => Ok(ortho::Turn::R),
                            _ => Err(bad(line, "bend strings use L and R")),
                        })
                        .collect::<Result<_>>()?;
                }
                "cover" => {
                    let (e, i) = (index(1)?, index(2)?);
                    *coverage.get_mut(e).ok_or_else(|| bad(line, "unknown edge"))? = i;
                }
                _ => return Err(bad(line, &format!("unknown keyword `{keyword}`"))),
            }
        }
        let mut drawings = Vec::with_capacity(reps.len());
        for (i, (rep, s)) in reps.into_iter().zip(straight).enumerate() {
            rep.validate(g).map_err(|m| Error::Infeasible(format!("drawing {i}: {m}")))?;
            drawings.push(CollectionDrawing::new(g, rep, s));
        }
        Ok(UnbentCollection { drawings, coverage })
    }
}

/// One drawing per forest, each keeping its forest straight.
pub fn collection_from_forests(g: &PlaneGraph, forests: &[Vec<EdgeId>]) -> Result<UnbentCollection> {
    let mut seen = vec![false; g.edge_count()];
    for (i, f) in forests.iter().enumerate() {
        for &e in f {
            if e >= g.edge_count() {
                return Err(Error::NotAPartition(format!("edge {e} does not exist")));
            }
            if std::mem::replace(&mut seen[e], true) {
                return Err(Error::NotAPartition(format!("edge {e} appears twice")));
            }
        }
        if !g.is_forest(f) {
            return Err(Error::NotAForest(format!("class {i} contains a cycle")));
        }
    }
    if let Some(e) = seen.iter().position(|&s| !s) {
        return Err(Error::NotAPartition(format!("edge {e} is in no class")));
    }
    // a forest can always be drawn straight
    Ok(UnbentCollection::from_classes(g, forests).expect("forests are always drawable straight"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn manifest_round_trip() {
        let g = generators::k4();
        let c = schnyder_collection(&g);
        let back = UnbentCollection::parse_manifest(&g, &c.manifest()).unwrap();
        assert_eq!(back, c);
        let broken = c.manifest().replace("angles 0 ", "angles 0 4 ");
        assert!(UnbentCollection::parse_manifest(&g, &broken).is_err());
        let uncovered = c.manifest().replace("cover 0 ", "cover 0 9");
        assert!(UnbentCollection::parse_manifest(&g, &uncovered).unwrap().verify(&g).is_err());
    }

    #[test]
    fn c4_halves() {
        let g = generators::cycle(4).unwrap();
        let c = collection_from_forests(&g, &[vec![0, 1], vec![2, 3]]).unwrap();
        c.verify(&g).unwrap();
        assert_eq!((c.size(), c.total_bends()), (2, 0));
    }

    #[test]
    fn tree_is_one_drawing() {
        let g = generators::path(5).unwrap();
        let c = collection_from_forests(&g, &[(0..4).collect()]).unwrap();
        c.verify(&g).unwrap();
        assert_eq!((c.size(), c.total_bends()), (1, 0));
    }

    #[test]
    fn rejects_bad_partitions() {
        let g = generators::cycle(4).unwrap();
        assert!(matches!(collection_from_forests(&g, &[vec![0, 1, 2, 3]]), Err(Error::NotAForest(_))));
        assert!(matches!(collection_from_forests(&g, &[vec![0, 1], vec![1, 2]]), Err(Error::NotAPartition(_))));
        assert!(matches!(collection_from_forests(&g, &[vec![0, 1]]), Err(Error::NotAPartition(_))));
    }
}
