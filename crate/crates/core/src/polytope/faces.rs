use std::collections::{BTreeSet, HashMap};

use num_rational::BigRational;

use super::RationalPolytope;
use crate::linalg::RatVector;

/// All faces of a full-dimensional polytope, each as a sorted list of vertex indices.
///
/// Faces are grouped by dimension from `-1` (the empty face) to `dim` (the polytope).
/// When the origin is interior, each face also knows its dual face on the polar,
/// given by indices into the polar's sorted vertex list.
#[derive(Clone, Debug)]
pub struct FaceLattice {
    dim: usize,
    levels: Vec<Vec<Vec<usize>>>,
    containing: Vec<Vec<Vec<usize>>>,
    index: HashMap<Vec<usize>, (usize, usize)>,
    dual: Option<Vec<Vec<Vec<usize>>>>,
}

impl FaceLattice {
    pub(super) fn build(p: &RationalPolytope) -> Self {
        let dim = p.dim();
        let nv = p.vertices().len();
        let facet_sets: Vec<Vec<usize>> = (0..p.facets().len())
            .map(|f| p.facet_vertices(f).to_vec())
            .collect();
        let mut by_dim: Vec<Vec<Vec<usize>>> = vec![Vec::new(); dim + 2];
        by_dim[dim + 1] = vec![(0..nv).collect()];
        if dim > 0 {
            let mut top: Vec<Vec<usize>> = facet_sets.clone();
            top.sort();
            top.dedup();
            by_dim[dim] = top;
            for d in (0..dim - 1).rev() {
                let mut next: BTreeSet<Vec<usize>> = BTreeSet::new();
                for face in &by_dim[d + 2] {
                    let candidates: Vec<Vec<usize>> = facet_sets
                        .iter()
                        .map(|g| face.iter().copied().filter(|v| g.contains(v)).collect::<Vec<_>>())
                        .filter(|c: &Vec<usize>| !c.is_empty() && c.len() < face.len())
                        .collect();
                    for c in &candidates {
                        let maximal = !candidates
                            .iter()
                            .any(|o| o.len() > c.len() && c.iter().all(|v| o.contains(v)));
                        if maximal {
                            next.insert(c.clone());
                        }
                    }
                }
                by_dim[d + 1] = next.into_iter().collect();
            }
        }
        by_dim[0] = vec![Vec::new()];

        let containing: Vec<Vec<Vec<usize>>> = by_dim
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|face| {
                        (0..facet_sets.len())
                            .filter(|&f| face.iter().all(|v| facet_sets[f].contains(v)))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let mut index = HashMap::new();
        for (l, level) in by_dim.iter().enumerate() {
            for (i, face) in level.iter().enumerate() {
                index.insert(face.clone(), (l, i));
            }
        }
        let dual = p.has_origin_interior().then(|| {
            let polar_vertex = |f: usize| {
                let facet = &p.facets()[f];
                let s = -facet.offset.recip();
                RatVector(
                    facet
                        .normal
                        .iter()
                        .map(|c| BigRational::from_integer(c.clone()) * &s)
                        .collect(),
                )
            };
            let images: Vec<RatVector> = (0..facet_sets.len()).map(polar_vertex).collect();
            let mut sorted = images.clone();
            sorted.sort();
            let position: Vec<usize> = images
                .iter()
                .map(|v| sorted.binary_search(v).expect("present"))
                .collect();
            containing
                .iter()
                .map(|level| {
                    level
                        .iter()
                        .map(|fs| {
                            let mut d: Vec<usize> = fs.iter().map(|&f| position[f]).collect();
                            d.sort_unstable();
                            d
                        })
                        .collect()
                })
                .collect()
        });
        Self {
            dim,
            levels: by_dim,
            containing,
            index,
            dual,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of levels, `dim + 2`; level `l` holds faces of dimension `l - 1`.
    pub fn levels(&self) -> usize {
        self.levels.len()
    }

    pub fn faces_at_level(&self, level: usize) -> &[Vec<usize>] {
        &self.levels[level]
    }

    /// Faces of dimension `d` (`-1 ≤ d ≤ dim`).
    pub fn faces(&self, d: isize) -> &[Vec<usize>] {
        usize::try_from(d + 1)
            .ok()
            .and_then(|l| self.levels.get(l))
            .map_or(&[], Vec::as_slice)
    }

    /// Face counts for dimensions `0..dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        (1..=self.dim).map(|l| self.levels[l].len()).collect()
    }

    /// Dimension of a face, or `None` if the vertex set is not a face.
    pub fn dimension_of(&self, face: &[usize]) -> Option<isize> {
        let mut key = face.to_vec();
        key.sort_unstable();
        self.index.get(&key).map(|&(l, _)| l as isize - 1)
    }

    /// Indices of facets containing face `i` of dimension `d`.
    pub fn facets_containing(&self, d: isize, i: usize) -> &[usize] {
        &self.containing[(d + 1) as usize][i]
    }

    /// Vertex set (in the polar's sorted vertex order) of the dual face.
    pub fn dual_face(&self, d: isize, i: usize) -> Option<&[usize]> {
        self.dual
            .as_ref()
            .map(|dual| dual[(d + 1) as usize][i].as_slice())
    }

    pub fn has_duality(&self) -> bool {
        self.dual.is_some()
    }
}
