//! Exact convex hulls in dimension two and three.

use crate::exact::{cross, det2, primitive, LatticePoint, Point2, Point3};

use super::Facet;

/// Counter-clockwise hull vertices of a planar point set, without collinear points.
pub(crate) fn monotone_chain(points: &[Point2]) -> Vec<Point2> {
    let mut pts: Vec<Point2> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let turn = |o: &Point2, a: &Point2, b: &Point2| det2(&(*a - *o), &(*b - *o));
    let mut lower: Vec<Point2> = Vec::with_capacity(pts.len());
    for p in &pts {
        while lower.len() >= 2 && turn(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(*p);
    }
    let mut upper: Vec<Point2> = Vec::with_capacity(pts.len());
    for p in pts.iter().rev() {
        while upper.len() >= 2 && turn(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(*p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Edge inequalities of a counter-clockwise polygon.
pub(crate) fn polygon_facets(ccw: &[Point2]) -> Vec<Facet<2>> {
    let n = ccw.len();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let a = ccw[i];
        let b = ccw[(i + 1) % n];
        let e = b - a;
        let normal = primitive(&LatticePoint([e[1], -e[0]])).expect("distinct hull vertices");
        out.push(Facet {
            normal,
            offset: normal.dot(&a),
        });
    }
    out
}

fn rank_of_normals(normals: &[Point3]) -> usize {
    let Some(&n1) = normals.iter().find(|n| !n.is_zero()) else {
        return 0;
    };
    let Some(n2) = normals.iter().find(|n| !cross(&n1, n).is_zero()) else {
        return 1;
    };
    let c = cross(&n1, n2);
    if normals.iter().any(|n| c.dot(n) != 0) {
        3
    } else {
        2
    }
}

fn is_vertex(p: &Point3, facets: &[Facet<3>]) -> bool {
    let tight: Vec<Point3> = facets
        .iter()
        .filter(|f| f.normal.dot(p) == f.offset)
        .map(|f| f.normal)
        .collect();
    rank_of_normals(&tight) == 3
}

/// Supporting planes through `p` and two of `verts`, oriented so that every
/// point of `verts ∪ {p}` lies on the non-positive side.
fn planes_through(p: &Point3, verts: &[Point3], out: &mut Vec<Facet<3>>) {
    for i in 0..verts.len() {
        let a = verts[i] - *p;
        for b in &verts[i + 1..] {
            let c = cross(&a, &(*b - *p));
            if c.is_zero() {
                continue;
            }
            let normal = primitive(&c).expect("non-zero normal");
            let offset = normal.dot(p);
            let mut pos = false;
            let mut neg = false;
            for v in verts {
                let s = normal.dot(v) - offset;
                pos |= s > 0;
                neg |= s < 0;
                if pos && neg {
                    break;
                }
            }
            if pos && neg {
                continue;
            }
            if pos {
                out.push(Facet {
                    normal: -normal,
                    offset: -offset,
                });
            } else {
                out.push(Facet { normal, offset });
            }
        }
    }
}

/// Adds `p` to a full-dimensional hull given by its vertices and facets.
///
/// Returns `false` when `p` already lies in the hull.
pub(crate) fn insert_point(verts: &mut Vec<Point3>, facets: &mut Vec<Facet<3>>, p: Point3) -> bool {
    if facets.iter().all(|f| f.normal.dot(&p) <= f.offset) {
        return false;
    }
    let mut next: Vec<Facet<3>> = facets
        .iter()
        .filter(|f| f.normal.dot(&p) <= f.offset)
        .copied()
        .collect();
    let mut cand = verts.clone();
    cand.push(p);
    planes_through(&p, &cand, &mut next);
    next.sort();
    next.dedup();
    cand.retain(|v| is_vertex(v, &next));
    *verts = cand;
    *facets = next;
    true
}

/// Vertices and facets of the hull of a full-dimensional point set in `Z^3`.
pub(crate) fn hull3(points: &[Point3]) -> (Vec<Point3>, Vec<Facet<3>>) {
    let p0 = points[0];
    let p1 = *points
        .iter()
        .find(|p| **p != p0)
        .expect("full-dimensional input");
    let p2 = *points
        .iter()
        .find(|p| !cross(&(p1 - p0), &(**p - p0)).is_zero())
        .expect("full-dimensional input");
    let n = cross(&(p1 - p0), &(p2 - p0));
    let p3 = *points
        .iter()
        .find(|p| n.dot(&(**p - p0)) != 0)
        .expect("full-dimensional input");
    let mut verts = vec![p0, p1, p2, p3];
    let mut facets = Vec::with_capacity(4);
    for skip in 0..4 {
        let tri: Vec<Point3> = (0..4).filter(|&i| i != skip).map(|i| verts[i]).collect();
        let normal = primitive(&cross(&(tri[1] - tri[0]), &(tri[2] - tri[0]))).expect("simplex");
        let offset = normal.dot(&tri[0]);
        if normal.dot(&verts[skip]) > offset {
            facets.push(Facet {
                normal: -normal,
                offset: -offset,
            });
        } else {
            facets.push(Facet { normal, offset });
        }
    }
    for p in points {
        insert_point(&mut verts, &mut facets, *p);
    }
    verts.sort();
    facets.sort();
    (verts, facets)
}
