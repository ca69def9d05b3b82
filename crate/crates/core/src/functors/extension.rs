use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::morphism::{is_covering, lift_path, Covering, QuiverMorphism};
use crate::error::{domain, Result};
use crate::linalg::Matrix;
use crate::quiver::{check_common_ends, default_family, relation_instances, ArrowId, PathSum, QuiverSchema, RelationSet, VertexId, Window};
use crate::rep::{RepMorphism, Representation};

/// `phi^*(V')`, evaluated on demand. Materialize it over a finite vertex set
/// to get an ordinary representation.
#[derive(Clone, Debug)]
pub struct LazyRep {
    phi: QuiverMorphism,
    base: Arc<Representation>,
}

/// `phi^*`: the restriction functor.
pub fn restrict(phi: &QuiverMorphism, v: &Arc<Representation>) -> Result<LazyRep> {
    if v.schema() != phi.target() {
        return domain(format!("restriction along a morphism into {} of a representation on {}", phi.target(), v.schema()));
    }
    Ok(LazyRep { phi: phi.clone(), base: v.clone() })
}

impl LazyRep {
    pub fn schema(&self) -> &QuiverSchema {
        self.phi.source()
    }

    pub fn dim(&self, x: VertexId) -> Result<usize> {
        Ok(self.base.dim(self.phi.map_vertex(x)?))
    }

    pub fn mat(&self, a: ArrowId) -> Result<Matrix> {
        self.base.mat(self.phi.map_arrow(a)?)
    }

    /// The restriction to `vertices`, keeping arrows with both ends there.
    pub fn materialize(&self, vertices: &[VertexId]) -> Result<Representation> {
        let set: BTreeSet<VertexId> = vertices.iter().copied().collect();
        let schema = self.schema();
        let mut dims = Vec::new();
        let mut mats = Vec::new();
        for x in &set {
            dims.push((*x, self.dim(*x)?));
            for a in schema.arrows_from(*x)? {
                if set.contains(&schema.head(a)?) {
                    mats.push((a, self.mat(a)?));
                }
            }
        }
        Representation::new(schema, dims, mats)
    }

    pub fn materialize_window(&self, window: &Window) -> Result<Representation> {
        self.materialize(&window.vertices(self.schema())?)
    }

    /// Materialization over the support of `u` and its one-arrow neighbours,
    /// which is all that Hom spaces to or from `u` can see.
    pub fn materialize_around(&self, u: &Representation) -> Result<Representation> {
        self.materialize(&u.support_neighborhood()?)
    }
}

/// Support vertices of `v` grouped by image, each fiber in ascending order.
fn fibers(phi: &QuiverMorphism, v: &Representation) -> Result<BTreeMap<VertexId, Vec<(VertexId, usize)>>> {
    let mut out: BTreeMap<VertexId, Vec<(VertexId, usize)>> = BTreeMap::new();
    for (x, d) in v.dims() {
        out.entry(phi.map_vertex(*x)?).or_default().push((*x, *d));
    }
    Ok(out)
}

fn offset_of(fiber: &[(VertexId, usize)], x: VertexId) -> Option<usize> {
    let mut off = 0;
    for (y, d) in fiber {
        if *y == x {
            return Some(off);
        }
        off += d;
    }
    None
}

fn require_covering(phi: &QuiverMorphism, v: &Representation) -> Result<()> {
    if v.schema() != phi.source() {
        return domain(format!("pushforward along a morphism from {} of a representation on {}", phi.source(), v.schema()));
    }
    if let Covering::No { vertex, reason } = is_covering(phi, &v.support())? {
        return domain(format!("not a covering at {vertex}: {reason}"));
    }
    Ok(())
}

/// `phi_!`: `phi_!(V)(x') = (+)_{phi(x) = x'} V(x)`, blocks in ascending source order.
pub fn pushforward_left(phi: &QuiverMorphism, v: &Representation) -> Result<Representation> {
    require_covering(phi, v)?;
    let fib = fibers(phi, v)?;
    let target = phi.target();
    let dims: Vec<(VertexId, usize)> = fib.iter().map(|(x, f)| (*x, f.iter().map(|p| p.1).sum())).collect();
    let dim_of: BTreeMap<VertexId, usize> = dims.iter().copied().collect();
    let mut mats = Vec::new();
    for (x2, fx) in &fib {
        for b in target.arrows_from(*x2)? {
            let y2 = target.head(b)?;
            let Some(fy) = fib.get(&y2) else { continue };
            let mut m = Matrix::zeros(dim_of[&y2], dim_of[x2]);
            let mut row = 0;
            for (y, dy) in fy {
                let a = phi.lift_arrow(b, *y)?;
                if let Some(col) = offset_of(fx, a.tail) {
                    m.paste(row, col, &v.mat(a)?);
                }
                row += dy;
            }
            mats.push((b, m));
        }
    }
    Representation::new(target, dims, mats)
}

/// `phi_*`. Fibers meet a finite support in finitely many vertices, so the
/// product agrees with the coproduct and the same matrices are returned.
pub fn pushforward_right(phi: &QuiverMorphism, v: &Representation) -> Result<Representation> {
    pushforward_left(phi, v)
}

/// `phi_!(sigma)`, block diagonal along fibers.
pub fn pushforward_morphism(phi: &QuiverMorphism, sigma: &RepMorphism) -> Result<RepMorphism> {
    let (v, u) = (sigma.source(), sigma.target());
    let pv = Arc::new(pushforward_left(phi, v)?);
    let pu = Arc::new(pushforward_left(phi, u)?);
    let (fv, fu) = (fibers(phi, v)?, fibers(phi, u)?);
    let mut comps = Vec::new();
    for (x2, cols) in &fv {
        let Some(rows) = fu.get(x2) else { continue };
        let mut m = Matrix::zeros(pu.dim(*x2), pv.dim(*x2));
        let mut r = 0;
        for (y, dy) in rows {
            if let Some(c) = offset_of(cols, *y) {
                m.paste(r, c, &sigma.comp(*y));
            }
            r += dy;
        }
        comps.push((*x2, m));
    }
    RepMorphism::new_unchecked(pv, pu, comps)
}

/// Lifts of every generator of `rels` ending in the window; a lift is kept
/// only when all its terms start in the window too.
pub fn preimage_relations(phi: &QuiverMorphism, rels: &RelationSet, window: &[VertexId]) -> Result<RelationSet> {
    if rels.schema() != phi.target() {
        return domain("relations live on a different schema than the morphism's target");
    }
    let inside: BTreeSet<VertexId> = window.iter().copied().collect();
    let mut gens = Vec::new();
    for g in rels.generators() {
        let Some((_, h)) = check_common_ends(g)? else { continue };
        'vertex: for x in &inside {
            if phi.map_vertex(*x)? != h {
                continue;
            }
            let mut terms = Vec::new();
            for (p, c) in g.terms() {
                let l = lift_path(phi, p, *x)?;
                if !inside.contains(&l.tail()) {
                    continue 'vertex;
                }
                terms.push((l, c.clone()));
            }
            gens.push(PathSum::from_terms(phi.source(), terms)?);
        }
    }
    RelationSet::new(phi.source(), None, gens)
}

/// Preimage of the target's standard relations over `window`.
pub fn pullback_default_relations(phi: &QuiverMorphism, window: &[VertexId]) -> Result<RelationSet> {
    let target = phi.target();
    let Some(family) = default_family(target) else {
        return domain(format!("{target} has no standard relations"));
    };
    let images: Vec<i64> = window
        .iter()
        .map(|x| phi.map_vertex(*x).map(|y| y.int().unwrap_or(0)))
        .collect::<Result<_>>()?;
    let (lo, hi) = match (images.iter().min(), images.iter().max()) {
        (Some(lo), Some(hi)) => (*lo, *hi),
        _ => return RelationSet::new(phi.source(), None, Vec::new()),
    };
    let r = relation_instances(target, family, &Window::Interval(lo, hi))?;
    preimage_relations(phi, &r, window)
}

fn require_grid(v: &Representation) -> Result<()> {
    if *v.schema() != QuiverSchema::QinfXinf {
        return domain(format!("translation acts on the grid quiver, not {}", v.schema()));
    }
    Ok(())
}

/// `V^(z)(i,j) = V(i+z, j+z)`.
pub fn translate(v: &Representation, z: i64) -> Result<Representation> {
    require_grid(v)?;
    v.relabel(v.schema(), |x| match x {
        VertexId::Pair(i, j) => VertexId::Pair(i - z, j - z),
        other => other,
    })
}

/// A fixed representative of the translation orbit of `v`.
///
/// The anchor is the support vertex minimizing `(i+j, i)`; it is moved so its
/// `i+j` becomes 0, or 1 when `i-j` is odd and 0 is unreachable.
pub fn orbit_canonical(v: &Representation) -> Result<Representation> {
    require_grid(v)?;
    let Some((i, j)) = v
        .dims()
        .keys()
        .filter_map(|x| x.pair())
        .min_by_key(|(i, j)| (i + j, *i))
    else {
        return domain("the zero representation has no canonical translate");
    };
    translate(v, (i + j).div_euclid(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functors::{morphism_f, morphism_g};
    use crate::rep::{check_relations, direct_sum};

    fn int(k: i64) -> VertexId {
        VertexId::Int(k)
    }

    #[test]
    fn restriction_values() {
        let g = morphism_g(3, 2).unwrap();
        let s0 = Arc::new(Representation::simple(g.target(), int(0)).unwrap());
        let l = restrict(&g, &s0).unwrap();
        assert_eq!(l.dim(int(5)).unwrap(), 1);
        assert_eq!(l.dim(int(1)).unwrap(), 0);
        let m = l.materialize_window(&Window::Interval(-5, 10)).unwrap();
        assert_eq!(m.support(), vec![int(-5), int(0), int(5), int(10)]);
    }

    #[test]
    fn g_pushforward_of_two_points() {
        let g = morphism_g(3, 2).unwrap();
        let v = Representation::new(g.source(), [(int(0), 1), (int(5), 1)], []).unwrap();
        let p = pushforward_left(&g, &v).unwrap();
        assert_eq!(p.dims().iter().map(|(x, d)| (*x, *d)).collect::<Vec<_>>(), vec![(int(0), 2)]);
        assert_eq!(pushforward_right(&g, &v).unwrap(), p);
    }

    #[test]
    fn pushforward_is_additive() {
        let g = morphism_g(3, 2).unwrap();
        let s = g.source();
        let a = Representation::new(s, [(int(0), 1), (int(3), 1)], [(ArrowId::new(1, int(0)), Matrix::identity(1))]).unwrap();
        let b = Representation::new(s, [(int(1), 1), (int(3), 1)], [(ArrowId::new(2, int(1)), Matrix::identity(1))]).unwrap();
        let lhs = pushforward_left(&g, &direct_sum(&a, &b).unwrap()).unwrap();
        let rhs = direct_sum(&pushforward_left(&g, &a).unwrap(), &pushforward_left(&g, &b).unwrap()).unwrap();
        assert_eq!(lhs.dims(), rhs.dims());
    }

    #[test]
    fn preimage_of_cyclic_relations() {
        let g = morphism_g(3, 2).unwrap();
        let window = Window::Interval(0, 5).vertices(g.source()).unwrap();
        let rhat = relation_instances(g.target(), crate::quiver::RelationFamily::Rhat, &Window::Full).unwrap();
        let pre = preimage_relations(&g, &rhat, &window).unwrap();
        let rmn = relation_instances(g.source(), crate::quiver::RelationFamily::Rmn, &Window::Interval(0, 5)).unwrap();
        assert_eq!(pre.normalized(), rmn.normalized());
        assert!(preimage_relations(&g, &rhat, &[]).unwrap().is_empty());
    }

    #[test]
    fn preimage_of_line_relations() {
        let f = morphism_f();
        let window = Window::Interval(0, 1).vertices(f.source()).unwrap();
        let pre = pullback_default_relations(&f, &window).unwrap();
        let grid = relation_instances(f.source(), crate::quiver::RelationFamily::RinfXinf, &Window::Interval(0, 1)).unwrap();
        assert_eq!(pre.normalized(), grid.normalized());
        assert_eq!(pre.len(), 1);
    }

    #[test]
    fn translation() {
        let s = QuiverSchema::grid();
        let v = Representation::new(
            &s,
            [(VertexId::Pair(1, 1), 1), (VertexId::Pair(2, 1), 1)],
            [(ArrowId::new(1, VertexId::Pair(1, 1)), Matrix::identity(1))],
        )
        .unwrap();
        let t = translate(&v, 1).unwrap();
        assert_eq!(t.dim(VertexId::Pair(0, 0)), 1);
        assert_eq!(translate(&t, -1).unwrap(), v);
        assert_eq!(translate(&v, 0).unwrap(), v);
        let c = orbit_canonical(&v).unwrap();
        assert_eq!(orbit_canonical(&translate(&v, 7).unwrap()).unwrap(), c);
        assert_eq!(orbit_canonical(&c).unwrap(), c);
        let f = morphism_f();
        assert_eq!(pushforward_left(&f, &t).unwrap(), pushforward_left(&f, &v).unwrap());
        let simple = Representation::simple(&s, VertexId::Pair(3, 3)).unwrap();
        assert_eq!(orbit_canonical(&simple).unwrap().support(), vec![VertexId::Pair(0, 0)]);
        assert!(orbit_canonical(&Representation::zero(&s)).is_err());
        assert!(translate(&Representation::zero(&QuiverSchema::qinf()), 1).is_err());
    }

    #[test]
    fn relation_preservation_simple_case() {
        let g = morphism_g(3, 2).unwrap();
        let s = g.source();
        // Commuting square from 0 to 5 satisfies R_{3,2}.
        let v = Representation::new(
            s,
            [(int(0), 1), (int(2), 1), (int(3), 1), (int(5), 1)],
            [
                (ArrowId::new(1, int(0)), Matrix::identity(1)),
                (ArrowId::new(2, int(0)), Matrix::identity(1)),
                (ArrowId::new(2, int(3)), Matrix::identity(1)),
                (ArrowId::new(1, int(2)), Matrix::identity(1)),
            ],
        )
        .unwrap();
        let window = Window::Interval(-2, 7).vertices(s).unwrap();
        let pre = pullback_default_relations(&g, &window).unwrap();
        assert!(check_relations(&v, &pre).unwrap().is_empty());
        let p = pushforward_left(&g, &v).unwrap();
        let rhat = relation_instances(g.target(), crate::quiver::RelationFamily::Rhat, &Window::Full).unwrap();
        assert!(check_relations(&p, &rhat).unwrap().is_empty());
    }
}
