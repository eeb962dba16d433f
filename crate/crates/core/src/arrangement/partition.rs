use crate::arrangement::{Arrangement, EdgeId, EdgeSupport, FaceId};
use crate::union_find::UnionFind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    /// Inside the open segment between the line's two defining points.
    SegmentInterior,
    /// On one of the two rays beyond the defining points.
    HalfLine,
    BoxBoundary,
}

impl EdgeKind {
    pub fn name(self) -> &'static str {
        match self {
            EdgeKind::SegmentInterior => "segment",
            EdgeKind::HalfLine => "half-line",
            EdgeKind::BoxBoundary => "box",
        }
    }
}

/// Kind of every edge, indexed by edge id.
pub fn classify_edges(arr: &Arrangement) -> Vec<EdgeKind> {
    arr.edges()
        .iter()
        .map(|e| match &e.support {
            EdgeSupport::Box(_) => EdgeKind::BoxBoundary,
            EdgeSupport::Line { from, to, .. } => {
                if from.midpoint(to).in_open_unit() {
                    EdgeKind::SegmentInterior
                } else {
                    EdgeKind::HalfLine
                }
            }
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct OrderPartition {
    face_to_cell: Vec<Option<usize>>,
    cell_count: usize,
}

impl OrderPartition {
    /// Cell of an inner face; `None` for the outer face.
    pub fn cell_of(&self, f: FaceId) -> Option<usize> {
        self.face_to_cell[f]
    }

    pub fn face_to_cell(&self) -> &[Option<usize>] {
        &self.face_to_cell
    }

    pub fn cell_count(&self) -> usize {
        self.cell_count
    }

    /// Faces grouped by cell.
    pub fn cells(&self) -> Vec<Vec<FaceId>> {
        let mut out = vec![Vec::new(); self.cell_count];
        for (f, c) in self.face_to_cell.iter().enumerate() {
            if let Some(c) = c {
                out[*c].push(f);
            }
        }
        out
    }
}

/// Merges inner faces across every segment-interior edge.
///
/// Box edges always separate an inner face from the outer face, so no pair
/// of inner faces is ever split by the box alone and no merge across the
/// box is needed.
pub fn build_order_partition(arr: &Arrangement, kinds: &[EdgeKind]) -> OrderPartition {
    let nf = arr.face_count();
    let mut uf = UnionFind::new(nf);
    for (e, kind) in kinds.iter().enumerate() {
        if *kind == EdgeKind::SegmentInterior {
            let (a, b) = arr.edge_faces(e as EdgeId);
            uf.union(a, b);
        }
    }
    let outer = arr.outer_face();
    let mut face_to_cell = vec![None; nf];
    let mut label = vec![usize::MAX; nf];
    let mut next = 0;
    for f in 0..nf {
        if f == outer {
            continue;
        }
        let r = uf.find(f);
        if label[r] == usize::MAX {
            label[r] = next;
            next += 1;
        }
        face_to_cell[f] = Some(label[r]);
    }
    OrderPartition { face_to_cell, cell_count: next }
}
